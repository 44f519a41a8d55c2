//! Construction of the orthogonal polynomial families over the monomial
//! bases, by two independent routes: Gram-Schmidt on the monomial Gram
//! matrix, and the coefficient-vector recurrence driven by the Green
//! operator shift. Route disagreement is surfaced, never hidden.

use crate::error::{Error, Result};
use crate::inner::{gram, GramBasis, GramMatrix};
use crate::jets::JetTable;
use crate::numeric::{scalars_agree, Num};

/// Basis a coefficient vector is written over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpBasis {
    /// antisymmetric monomials P_{j3} based at q_0 (or a rotated base point)
    P3,
    /// fully symmetric monomials rho_j = P_{j1}^{(0)} + P_{j1}^{(1)} + P_{j1}^{(2)}
    Rho,
}

impl OpBasis {
    pub fn gram_basis(self) -> GramBasis {
        match self {
            OpBasis::P3 => GramBasis::P3,
            OpBasis::Rho => GramBasis::Rho,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OpBasis::P3 => "antisymmetric",
            OpBasis::Rho => "symmetric",
        }
    }
}

/// A polynomial as coefficients over a monomial family basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialVector<T: Num> {
    pub basis: OpBasis,
    pub coeffs: Vec<T>,
}

impl<T: Num> MonomialVector<T> {
    pub fn new(basis: OpBasis, coeffs: Vec<T>) -> Self {
        MonomialVector { basis, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Boundary values (at q_0, q_1, q_2) from jet data.
    pub fn boundary_values(&self, jt: &JetTable<T>) -> [T; 3] {
        let ctx = jt.ctx();
        match self.basis {
            OpBasis::P3 => {
                let mut v1 = T::zero(ctx);
                for (l, c) in self.coeffs.iter().enumerate() {
                    v1 = v1 + &(c.clone() * &jt.gamma[l]);
                }
                [T::zero(ctx), v1.clone(), -v1]
            }
            OpBasis::Rho => {
                // rho_0 is the constant 3; rho_l has constant boundary value
                // 2 alpha_l for l >= 1
                let mut v = T::zero(ctx);
                for (l, c) in self.coeffs.iter().enumerate() {
                    let bv = if l == 0 {
                        T::from_i64(ctx, 3)
                    } else {
                        T::from_i64(ctx, 2) * &jt.alpha[l]
                    };
                    v = v + &(c.clone() * &bv);
                }
                [v.clone(), v.clone(), v]
            }
        }
    }
}

/// Negated Green operator on a polynomial: degree goes up by one and a
/// harmonic correction imposes zero boundary values.
///
/// P3: -G P_{l3} = P_{(l+1)3} - (gamma_{l+1}/gamma_0) P_{03}.
/// Rho: -G rho_l = rho_{l+1} - (2 alpha_{l+1}/3) rho_0.
pub fn green_apply<T: Num>(v: &MonomialVector<T>, jt: &JetTable<T>) -> MonomialVector<T> {
    let ctx = jt.ctx();
    let mut out = vec![T::zero(ctx); v.coeffs.len() + 1];
    for (l, c) in v.coeffs.iter().enumerate() {
        out[l + 1] = out[l + 1].clone() + c;
    }
    let mut z = T::zero(ctx);
    match v.basis {
        OpBasis::P3 => {
            for (l, c) in v.coeffs.iter().enumerate() {
                z = z - &(c.clone() * &jt.gamma[l + 1]);
            }
            z = z / &jt.gamma[0];
        }
        OpBasis::Rho => {
            let coef = T::from_ratio(ctx, 2, 3);
            for (l, c) in v.coeffs.iter().enumerate() {
                z = z - &(coef.clone() * &(c.clone() * &jt.alpha[l + 1]));
            }
        }
    }
    out[0] = out[0].clone() + &z;
    MonomialVector::new(v.basis, out)
}

/// Monic shift used by the three-term recurrence.
///
/// For the antisymmetric family this is exactly the negated Green operator.
/// For the symmetric family the recurrence runs over the tabulated bilinear
/// form `6 <P_{j1}, P_{k1}>`, for which the Green operator is not
/// self-adjoint; the unique degree-shift that is self-adjoint for that form
/// (up to adding multiples of eta_{l+1} rho_0) carries the correction
/// -alpha_{l+1} rho_0 instead, and with it the recurrence reproduces
/// Gram-Schmidt exactly.
pub fn recurrence_shift<T: Num>(v: &MonomialVector<T>, jt: &JetTable<T>) -> MonomialVector<T> {
    match v.basis {
        OpBasis::P3 => green_apply(v, jt),
        OpBasis::Rho => {
            let ctx = jt.ctx();
            let mut out = vec![T::zero(ctx); v.coeffs.len() + 1];
            for (l, c) in v.coeffs.iter().enumerate() {
                out[l + 1] = out[l + 1].clone() + c;
            }
            let mut z = T::zero(ctx);
            for (l, c) in v.coeffs.iter().enumerate() {
                z = z - &(c.clone() * &jt.alpha[l + 1]);
            }
            out[0] = out[0].clone() + &z;
            MonomialVector::new(v.basis, out)
        }
    }
}

/// Construction route recorded in an [`OpFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildRoute {
    GramSchmidt,
    ThreeTerm,
}

/// An orthogonal family over a monomial basis: triangular monic coefficients
/// omega[j][l] (omega[j][j] = 1), squared norms d_inv_sq[j] = ||p_j||^2, and
/// the recursion coefficients b_k (k = 0..n-1) and c_k (stored at c[k-1],
/// k = 1..n).
#[derive(Debug, Clone)]
pub struct OpFamily<T: Num> {
    pub basis: OpBasis,
    pub route: BuildRoute,
    pub n: usize,
    pub omega: Vec<Vec<T>>,
    pub d_inv_sq: Vec<T>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

impl<T: Num> OpFamily<T> {
    pub fn monic(&self, j: usize) -> MonomialVector<T> {
        MonomialVector::new(self.basis, self.omega[j].clone())
    }

    /// c_k (1-based, k = 1..=n).
    pub fn c_k(&self, k: usize) -> &T {
        &self.c[k - 1]
    }

    /// Orthonormal Q_j = d_j p_j as a monomial vector (float mode: needs a
    /// square root).
    pub fn orthonormal(&self, j: usize) -> Result<MonomialVector<T>> {
        let d = self.d(j)?;
        let coeffs = self.omega[j].iter().map(|w| d.clone() * w).collect();
        Ok(MonomialVector::new(self.basis, coeffs))
    }

    /// d_j = ||p_j||^{-1}.
    pub fn d(&self, j: usize) -> Result<T> {
        let ctx = self.d_inv_sq[j].ctx();
        Ok(T::one(&ctx) / &self.d_inv_sq[j].sqrt()?)
    }

    /// Form product of two coefficient vectors under the family Gram.
    pub fn form(&self, g: &GramMatrix<T>, u: &[T], v: &[T]) -> T {
        form(g, u, v)
    }
}

fn form<T: Num>(g: &GramMatrix<T>, u: &[T], v: &[T]) -> T {
    let ctx = g.entries[0][0].ctx();
    let mut s = T::zero(&ctx);
    for (a, cu) in u.iter().enumerate() {
        if cu.is_zero() {
            continue;
        }
        let mut row = T::zero(&ctx);
        for (b, cv) in v.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            row = row + &(cv.clone() * &g.entries[a][b]);
        }
        s = s + &(cu.clone() * &row);
    }
    s
}

/// Monic Gram-Schmidt over the monomial Gram. Errors with the offending
/// degree when a pivot stops being positive (float precision exhausted).
pub fn gram_schmidt<T: Num>(
    basis: OpBasis,
    n: usize,
    g: &GramMatrix<T>,
    jt: &JetTable<T>,
) -> Result<OpFamily<T>> {
    assert!(g.size() > n);
    let ctx = jt.ctx();
    let zero = T::zero(ctx);
    let mut omega: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    let mut d_inv_sq: Vec<T> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut w = vec![zero.clone(); j + 1];
        w[j] = T::one(ctx);
        for l in 0..j {
            // <P_j, p_l> / <p_l, p_l>
            let mut num = T::zero(ctx);
            for (m, wl) in omega[l].iter().enumerate() {
                num = num + &(wl.clone() * &g.entries[j][m]);
            }
            let coef = num / &d_inv_sq[l];
            for (m, wl) in omega[l].iter().enumerate() {
                w[m] = w[m].clone() - &(coef.clone() * wl);
            }
        }
        let norm_sq = form(g, &w, &w);
        if !(norm_sq > zero) {
            return Err(Error::PrecisionLoss {
                degree: j,
                pivot: norm_sq.canonical_string(),
            });
        }
        omega.push(w);
        d_inv_sq.push(norm_sq);
    }
    let (b, c) = coefficients_from(basis, &omega, &d_inv_sq, g, jt);
    Ok(OpFamily {
        basis,
        route: BuildRoute::GramSchmidt,
        n,
        omega,
        d_inv_sq,
        b,
        c,
    })
}

/// b_k = d_k^2 <f_{k+1}, p_k> and c_k = d_k^{-2} / d_{k-1}^{-2}, from the
/// shift and the Gram data.
fn coefficients_from<T: Num>(
    basis: OpBasis,
    omega: &[Vec<T>],
    d_inv_sq: &[T],
    g: &GramMatrix<T>,
    jt: &JetTable<T>,
) -> (Vec<T>, Vec<T>) {
    let n = omega.len() - 1;
    let mut b = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for k in 0..n {
        let f = recurrence_shift(&MonomialVector::new(basis, omega[k].clone()), jt);
        b.push(form(g, &f.coeffs, &omega[k]) / &d_inv_sq[k]);
    }
    for k in 1..=n {
        c.push(d_inv_sq[k].clone() / &d_inv_sq[k - 1]);
    }
    (b, c)
}

/// Three-term recurrence route: Omega_{k+1} = shift(Omega_k) - b_k Omega_k
/// - c_k Omega_{k-1}, coefficients from exact inner products.
pub fn three_term<T: Num>(
    basis: OpBasis,
    n: usize,
    g: &GramMatrix<T>,
    jt: &JetTable<T>,
) -> Result<OpFamily<T>> {
    assert!(g.size() > n);
    let ctx = jt.ctx();
    let zero = T::zero(ctx);
    let mut omega: Vec<Vec<T>> = vec![vec![T::one(ctx)]];
    let mut d_inv_sq = vec![form(g, &omega[0], &omega[0])];
    if !(d_inv_sq[0] > zero) {
        return Err(Error::PrecisionLoss {
            degree: 0,
            pivot: d_inv_sq[0].canonical_string(),
        });
    }
    let mut b = Vec::new();
    let mut c = Vec::new();
    for k in 0..n {
        let f = recurrence_shift(&MonomialVector::new(basis, omega[k].clone()), jt);
        let bk = form(g, &f.coeffs, &omega[k]) / &d_inv_sq[k];
        let mut w = f.coeffs;
        for (m, om) in omega[k].iter().enumerate() {
            w[m] = w[m].clone() - &(bk.clone() * om);
        }
        if k >= 1 {
            let ck = d_inv_sq[k].clone() / &d_inv_sq[k - 1];
            for (m, om) in omega[k - 1].iter().enumerate() {
                w[m] = w[m].clone() - &(ck.clone() * om);
            }
            c.push(ck);
        }
        b.push(bk);
        let norm_sq = form(g, &w, &w);
        if !(norm_sq > zero) {
            return Err(Error::PrecisionLoss {
                degree: k + 1,
                pivot: norm_sq.canonical_string(),
            });
        }
        omega.push(w);
        d_inv_sq.push(norm_sq);
    }
    // the trailing c_n completes the spec'd range c_1..c_n
    c.push(d_inv_sq[n].clone() / &d_inv_sq[n - 1]);
    Ok(OpFamily {
        basis,
        route: BuildRoute::ThreeTerm,
        n,
        omega,
        d_inv_sq,
        b,
        c,
    })
}

/// Build by both routes and check they agree (exactly in rational mode, to
/// half precision in float mode). Returns the Gram-Schmidt family.
pub fn build_checked<T: Num>(
    basis: OpBasis,
    n: usize,
    jt: &JetTable<T>,
) -> Result<(OpFamily<T>, OpFamily<T>)> {
    let g = gram(basis.gram_basis(), n, jt);
    let gs = gram_schmidt(basis, n, &g, jt)?;
    let tt = three_term(basis, n, &g, jt)?;
    for j in 0..=n {
        for l in 0..=j {
            if !scalars_agree(&gs.omega[j][l], &tt.omega[j][l]) {
                return Err(Error::RouteMismatch {
                    what: format!("omega[{j}][{l}] ({})", basis.label()),
                    a: gs.omega[j][l].canonical_string(),
                    b: tt.omega[j][l].canonical_string(),
                });
            }
        }
    }
    Ok((gs, tt))
}
