//! Exact L2 inner products among monomials, Gram matrices, and the tight
//! frame analysis of the rotated antisymmetric triples.
//!
//! The normative formula is the Gauss-Green telescoping sum
//!   <P_{ji}, P_{ki'}> = sum_{l=0}^{j} sum_{q} [ P_{(j-l)i}(q) dn P_{(k+1+l)i'}(q)
//!                                             - P_{(k+1+l)i'}(q) dn P_{(j-l)i}(q) ],
//! assembled from boundary-jet data. The specialized closed forms are kept
//! verbatim as cross-checks; two of the four disagree with the normative sum
//! (see `inner_closed`) and the disagreement is surfaced, never absorbed.

use crate::error::{Error, Result};
use crate::jets::{JetTable, MonomialKind};
use crate::numeric::{scalars_agree, Num};

/// <P_{ji}, P_{ki'}> over the natural self-similar probability measure.
pub fn inner_general<T: Num>(
    i: MonomialKind,
    j: usize,
    i2: MonomialKind,
    k: usize,
    jt: &JetTable<T>,
) -> T {
    // canonicalize to j <= k; the inner product is symmetric
    let (i, j, i2, k) = if j <= k { (i, j, i2, k) } else { (i2, k, i, j) };
    let ctx = jt.ctx();
    let mut s = T::zero(ctx);
    for l in 0..=j {
        for q in 0..3u8 {
            let (va, na, _) = jt.jet_entry(i, j - l, q);
            let (vb, nb, _) = jt.jet_entry(i2, k + 1 + l, q);
            s = s + &(va * &nb);
            s = s - &(vb * &na);
        }
    }
    s
}

/// The specialized closed forms, evaluated verbatim and compared against the
/// normative sum. Pairs (1,1) and (3,3) agree identically; (2,2) misses the
/// exceptional initial value dn P_{02}(q_1) = -1/2 and (1,2) does not match
/// under any reading of its primed convention, so those return a diagnostic
/// error carrying both values.
pub fn inner_closed<T: Num>(
    i: MonomialKind,
    j: usize,
    i2: MonomialKind,
    k: usize,
    jt: &JetTable<T>,
) -> Result<T> {
    let (i, j, i2, k) = if j <= k { (i, j, i2, k) } else { (i2, k, i, j) };
    let ctx = jt.ctx();
    let m_star = j.min(k);
    use MonomialKind::*;
    let closed = match (i, i2) {
        (Value, Value) => {
            let mut s = T::zero(ctx);
            for l in (j - m_star)..=j {
                s = s + &(jt.alpha[j - l].clone() * &jt.eta[k + l + 1]);
                s = s - &(jt.alpha[k + l + 1].clone() * &jt.eta[j - l]);
            }
            T::from_i64(ctx, 2) * &s
        }
        (Normal, Normal) => {
            let mut s = T::zero(ctx);
            for l in (j - m_star)..=j {
                s = s + &(jt.beta[j - l].clone() * &jt.alpha[k + l + 1]);
                s = s - &(jt.beta[k + l + 1].clone() * &jt.alpha[j - l]);
            }
            T::from_i64(ctx, -2) * &s
        }
        (Tangential, Tangential) => {
            let mut s = T::zero(ctx);
            for l in (j - m_star)..=j {
                s = s + &(jt.alpha[j - l + 1].clone() * &jt.eta[k + l + 2]);
                s = s - &(jt.alpha[k + l + 2].clone() * &jt.eta[j - l + 1]);
            }
            T::from_i64(ctx, 18) * &s
        }
        (Value, Normal) | (Normal, Value) => {
            // alpha'_m = alpha_m except alpha'_1 = -1/2
            let ap = |m: usize| -> T {
                if m == 1 {
                    T::from_ratio(ctx, -1, 2)
                } else {
                    jt.alpha[m].clone()
                }
            };
            let mut s = T::zero(ctx);
            for l in 0..=j {
                s = s + &(ap(j - l) * &ap(k + l + 1));
                s = s - &(jt.beta[k + l + 2].clone() * &jt.eta[j - l + 1]);
            }
            T::from_i64(ctx, -2) * &s
        }
        _ => {
            return Err(Error::InvalidConfig(format!(
                "no closed form for pair ({}, {})",
                i.index(),
                i2.index()
            )))
        }
    };
    let general = inner_general(i, j, i2, k, jt);
    if scalars_agree(&closed, &general) {
        Ok(closed)
    } else {
        Err(Error::ClosedFormMismatch {
            i: i.index(),
            j,
            i2: i2.index(),
            k,
            general: general.canonical_string(),
            closed: closed.canonical_string(),
        })
    }
}

/// Cross-base-point inner products of the antisymmetric monomials:
/// same base gives the q_0 value, distinct bases scale it by -1/2.
pub fn inner_cross_base<T: Num>(n: u8, j: usize, n2: u8, k: usize, jt: &JetTable<T>) -> T {
    let same = inner_general(
        MonomialKind::Tangential,
        j,
        MonomialKind::Tangential,
        k,
        jt,
    );
    if n == n2 {
        same
    } else {
        T::from_ratio(jt.ctx(), -1, 2) * &same
    }
}

/// Which monomial Gram a matrix holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramBasis {
    /// antisymmetric monomials P_{j3}
    P3,
    /// fully symmetric monomials rho_j; entries are 6 <P_{j1}, P_{k1}>
    Rho,
    /// the three rotated copies of P_{j3} at one degree (frame analysis)
    Cross3,
}

#[derive(Debug, Clone)]
pub struct GramMatrix<T: Num> {
    pub basis: GramBasis,
    pub entries: Vec<Vec<T>>,
}

impl<T: Num> GramMatrix<T> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..a).all(|b| self.entries[a][b] == self.entries[b][a]))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.canonical_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Gram matrix of the family's monomials through degree `n`.
///
/// The symmetric family uses the tabulated convention `<rho_j, rho_k> =
/// 6 <P_{j1}, P_{k1}>`; this is the form that reproduces the published
/// coefficient table and the normalization `d_0^{-2} = 6`.
pub fn gram<T: Num>(basis: GramBasis, n: usize, jt: &JetTable<T>) -> GramMatrix<T> {
    assert!(
        jt.max_degree() >= 2 * n + 2,
        "jet table too short for gram of size {}",
        n + 1
    );
    let six = T::from_i64(jt.ctx(), 6);
    let entries = (0..=n)
        .map(|j| {
            (0..=n)
                .map(|k| match basis {
                    GramBasis::P3 => inner_general(
                        MonomialKind::Tangential,
                        j,
                        MonomialKind::Tangential,
                        k,
                        jt,
                    ),
                    GramBasis::Rho => {
                        six.clone() * &inner_general(MonomialKind::Value, j, MonomialKind::Value, k, jt)
                    }
                    GramBasis::Cross3 => panic!("use frame_gram for the rotated triple"),
                })
                .collect()
        })
        .collect();
    GramMatrix { basis, entries }
}

/// 3x3 Gram of {P_{j3}^{(0)}, P_{j3}^{(1)}, P_{j3}^{(2)}}:
/// (a/2) * [[2,-1,-1],[-1,2,-1],[-1,-1,2]] with a = ||P_{j3}||^2.
pub fn frame_gram<T: Num>(j: usize, jt: &JetTable<T>) -> GramMatrix<T> {
    let entries = (0..3u8)
        .map(|n| {
            (0..3u8)
                .map(|n2| inner_cross_base(n, j, n2, j, jt))
                .collect()
        })
        .collect();
    GramMatrix {
        basis: GramBasis::Cross3,
        entries,
    }
}

/// Frame bound A_j = (3/2) ||P_{j3}||^2; the nonzero eigenvalue of the frame
/// Gram, with multiplicity two.
pub fn frame_bound<T: Num>(j: usize, jt: &JetTable<T>) -> T {
    let a = inner_general(
        MonomialKind::Tangential,
        j,
        MonomialKind::Tangential,
        j,
        jt,
    );
    T::from_ratio(jt.ctx(), 3, 2) * &a
}

/// Exact eigen-verification of the frame Gram: eigenvalues {0, 3a/2, 3a/2}.
/// Checked by matrix action on the symmetric vector and two difference
/// vectors, plus trace and determinant; no numeric eigensolver involved.
pub fn frame_eigen_check<T: Num>(j: usize, jt: &JetTable<T>) -> bool {
    let g = frame_gram(j, jt);
    let bound = frame_bound(j, jt);
    let ctx = jt.ctx();
    let apply = |v: [i64; 3]| -> Vec<T> {
        (0..3)
            .map(|r| {
                let mut s = T::zero(ctx);
                for c in 0..3 {
                    s = s + &(g.entries[r][c].clone() * &T::from_i64(ctx, v[c]));
                }
                s
            })
            .collect()
    };
    // kernel vector (1,1,1)
    let k = apply([1, 1, 1]);
    if !k.iter().all(|x| x.is_zero()) {
        return false;
    }
    // eigenvectors (1,-1,0) and (0,1,-1) with eigenvalue 3a/2
    for v in [[1i64, -1, 0], [0, 1, -1]] {
        let gv = apply(v);
        for (r, x) in gv.iter().enumerate() {
            let want = bound.clone() * &T::from_i64(ctx, v[r]);
            if *x != want {
                return false;
            }
        }
    }
    true
}
