//! Jacobi matrices of the recursion coefficients, their determinant
//! sequences by two routes, the expansion of Delta Q_k over lower-order
//! orthonormal polynomials, and the combined orthonormal system check.

use crate::error::{Error, Result};
use crate::inner::GramMatrix;
use crate::jets::JetTable;
use crate::numeric::{scalars_agree, Num};
use crate::ortho::{gram_schmidt, OpBasis, OpFamily};

/// Symmetric tridiagonal matrix J_n with diagonal b_0..b_{n-1} and
/// off-diagonal sqrt(c_1)..sqrt(c_{n-1}), plus its determinant sequence
/// det(J_1)..det(J_n) computed both by elimination pivots and by the
/// classical three-term determinant recursion.
#[derive(Debug, Clone)]
pub struct JacobiMatrix<T: Num> {
    pub n: usize,
    pub diag: Vec<T>,
    pub offdiag: Vec<T>,
    pub det_direct: Vec<T>,
    pub det_recursion: Vec<T>,
}

pub fn jacobi<T: Num>(opf: &OpFamily<T>, n: usize) -> Result<JacobiMatrix<T>> {
    assert!(n >= 1 && n <= opf.n);
    let ctx = opf.d_inv_sq[0].ctx();
    let diag: Vec<T> = opf.b[..n].to_vec();
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        offdiag.push(opf.c_k(k).sqrt()?);
    }

    // direct tridiagonal elimination: det = product of pivots
    let mut det_direct = Vec::with_capacity(n);
    let mut pivot = diag[0].clone();
    let mut det = pivot.clone();
    det_direct.push(det.clone());
    for k in 1..n {
        if pivot.is_zero() {
            return Err(Error::RouteMismatch {
                what: format!("jacobi elimination pivot vanished at order {k}"),
                a: "0".into(),
                b: "0".into(),
            });
        }
        let off_sq = offdiag[k - 1].clone() * &offdiag[k - 1];
        pivot = diag[k].clone() - &(off_sq / &pivot);
        det = det * &pivot;
        det_direct.push(det.clone());
    }

    // det_k = b_{k-1} det_{k-1} - c_{k-1} det_{k-2}, det_0 = 1, det_1 = b_0
    let mut det_recursion = Vec::with_capacity(n);
    let mut prev2 = T::one(&ctx);
    let mut prev = diag[0].clone();
    det_recursion.push(prev.clone());
    for k in 2..=n {
        let next = diag[k - 1].clone() * &prev - &(opf.c_k(k - 1).clone() * &prev2);
        det_recursion.push(next.clone());
        prev2 = prev;
        prev = next;
    }

    for k in 0..n {
        if !scalars_agree(&det_direct[k], &det_recursion[k]) {
            return Err(Error::RouteMismatch {
                what: format!("jacobi determinant at order {}", k + 1),
                a: det_direct[k].canonical_string(),
                b: det_recursion[k].canonical_string(),
            });
        }
    }

    Ok(JacobiMatrix {
        n,
        diag,
        offdiag,
        det_direct,
        det_recursion,
    })
}

/// Coefficients of Delta Q_k = sum_{l<k} A^{(k)}_l Q_l.
#[derive(Debug, Clone)]
pub struct CdExpansion<T: Num> {
    pub k: usize,
    pub a: Vec<T>,
}

/// Expansion coefficients by the recursion derived from the orthonormal
/// three-term recurrence (apply tDelta and use Delta f~_{k+1} = Q_k):
///   A^{(k+1)}_l = (delta_{lk} - b_k A^{(k)}_l - sqrt(c_k) A^{(k-1)}_l) / sqrt(c_{k+1}).
/// Verified against the independent route (Laplacian shift of the monomial
/// coefficients, re-expanded by triangular solve); disagreement is an error.
pub fn cd_coefficients<T: Num>(opf: &OpFamily<T>, k: usize) -> Result<CdExpansion<T>> {
    assert!(k >= 1 && k <= opf.n);
    let ctx = opf.d_inv_sq[0].ctx();
    let zero = T::zero(&ctx);

    let mut prev: Vec<T> = Vec::new(); // A^{(m-1)}
    let mut cur: Vec<T> = vec![T::one(&ctx) / &opf.c_k(1).sqrt()?]; // A^{(1)}
    for m in 1..k {
        let sq_next = opf.c_k(m + 1).sqrt()?;
        let sq_cur = opf.c_k(m).sqrt()?;
        let mut next = vec![zero.clone(); m + 1];
        next[m] = T::one(&ctx) / &sq_next;
        for l in 0..m {
            let mut num = -(opf.b[m].clone() * &cur[l]);
            if l < prev.len() {
                num = num - &(sq_cur.clone() * &prev[l]);
            }
            next[l] = num / &sq_next;
        }
        prev = cur;
        cur = next;
    }

    // independent route: Delta Q_k in monomial coordinates is the shift-down
    // of d_k omega_k; solve over Q_0..Q_{k-1} back to front
    let dk = opf.d(k)?;
    let mut target: Vec<T> = (1..=k).map(|l| dk.clone() * &opf.omega[k][l]).collect();
    let mut solved = vec![zero.clone(); k];
    for j in (0..k).rev() {
        let dj = opf.d(j)?;
        let xj = target[j].clone() / &dj;
        for m in 0..=j {
            target[m] = target[m].clone() - &(xj.clone() * &(dj.clone() * &opf.omega[j][m]));
        }
        solved[j] = xj;
    }
    for l in 0..k {
        if !scalars_agree(&cur[l], &solved[l]) {
            return Err(Error::RouteMismatch {
                what: format!("cd coefficient A^({k})_{l}"),
                a: cur[l].canonical_string(),
                b: solved[l].canonical_string(),
            });
        }
    }
    Ok(CdExpansion { k, a: cur })
}

/// Report of the pointwise kernel identity
///   K_N(x,x) = sqrt(c_{N+1})[Q_N dQ_{N+1} - Q_{N+1} dQ_N](x) + sum f~_{k+1} dQ_k (x)
/// evaluated at every vertex of the level-m mesh, plus the mesh integral of
/// K_N(x,x) (close to N+1 by orthonormality).
#[derive(Debug, Clone)]
pub struct CdKernelReport {
    pub n: usize,
    pub level: usize,
    pub max_rel_discrepancy: f64,
    pub kernel_integral: f64,
}

pub fn cd_kernel_check<T: Num>(
    opf: &OpFamily<T>,
    n: usize,
    level: usize,
    jt: &JetTable<T>,
) -> Result<CdKernelReport> {
    assert!(n + 1 <= opf.n);
    let ctx = opf.d_inv_sq[0].ctx();
    let zero = T::zero(&ctx);

    // mesh values of Q_k for k <= n+1, their Laplacians, and f~_{k+1}
    let mut q_vals = Vec::new();
    let mut dq_vals = Vec::new();
    let mut f_vals = Vec::new();
    for k in 0..=n + 1 {
        let qk = opf.orthonormal(k)?;
        q_vals.push(crate::mesh::evaluate_exact(&qk, 0, level, jt)?);
        let dq = if k == 0 {
            None
        } else {
            let coeffs: Vec<T> = (1..=k).map(|l| qk.coeffs[l].clone()).collect();
            Some(crate::mesh::evaluate_exact(
                &crate::ortho::MonomialVector::new(opf.basis, coeffs),
                0,
                level,
                jt,
            )?)
        };
        dq_vals.push(dq);
        if k <= n {
            let dk = opf.d(k)?;
            let mut f = crate::ortho::green_apply(&opf.monic(k), jt);
            for c in f.coeffs.iter_mut() {
                *c = c.clone() * &dk;
            }
            f_vals.push(crate::mesh::evaluate_exact(&f, 0, level, jt)?);
        }
    }

    let sq = opf.c_k(n + 1).sqrt()?;
    let vertex_count = q_vals[0].values.len();
    let mut max_rel: f64 = 0.0;
    let mut lhs_all = Vec::with_capacity(vertex_count);
    let mut scale = zero.clone();
    for x in 0..vertex_count {
        let mut lhs = T::zero(&ctx);
        for k in 0..=n {
            let qv = &q_vals[k].values[x];
            lhs = lhs + &(qv.clone() * qv);
        }
        if lhs > scale {
            scale = lhs.clone();
        }
        lhs_all.push(lhs);
    }
    for x in 0..vertex_count {
        let dq_np1 = dq_vals[n + 1].as_ref().expect("n+1 >= 1").values[x].clone();
        let mut rhs = q_vals[n].values[x].clone() * &dq_np1;
        if let Some(dqn) = &dq_vals[n] {
            rhs = rhs - &(q_vals[n + 1].values[x].clone() * &dqn.values[x]);
        }
        rhs = sq.clone() * &rhs;
        for k in 0..=n {
            if let Some(dqk) = &dq_vals[k] {
                rhs = rhs + &(f_vals[k].values[x].clone() * &dqk.values[x]);
            }
        }
        let diff = (lhs_all[x].clone() - &rhs).abs();
        let rel = diff.to_f64() / scale.to_f64();
        if rel > max_rel {
            max_rel = rel;
        }
    }

    // integral of K_N(x,x) over the mesh
    let topo = q_vals[0].topology.clone();
    let mut integral = T::zero(&ctx);
    let third = T::from_ratio(&ctx, 1, 3);
    let weight = {
        let mut w = T::one(&ctx);
        for _ in 0..level {
            w = w * &third;
        }
        w * &third
    };
    for cell in topo.cells.iter() {
        let mut s = T::zero(&ctx);
        for &v in cell {
            s = s + &lhs_all[v as usize];
        }
        integral = integral + &(weight.clone() * &s);
    }

    Ok(CdKernelReport {
        n,
        level,
        max_rel_discrepancy: max_rel,
        kernel_integral: integral.to_f64(),
    })
}

/// Exact verification that the combined system

/// phi_j^(i) = sqrt(2/3) Q_j^(i) + sqrt(1/3) S_j is orthonormal:
/// <phi_j^(i), phi_k^(l)> = (2/3) <Q_j^(i), Q_k^(l)> + (1/3) <S_j, S_k>,
/// with the symmetric/antisymmetric cross terms vanishing by symmetry.
/// The antisymmetric cross-base Gram is (-1/2)^{[i != l]} delta_{jk}; the
/// -1/2 exactly cancels against the symmetric share, so the assembled Gram
/// is the identity. Everything here is rational-exact (the square roots
/// cancel in the normalized Gram entries).
#[derive(Debug, Clone)]
pub struct CombinedCheck<T: Num> {
    pub n: usize,
    /// <Q_j^(i), Q_j^(l)> for i != l; equals -1/2 exactly
    pub cross_base_diagonal: T,
    pub identity_ok: bool,
    pub failures: Vec<String>,
}

pub fn combined_onb<T: Num>(n: usize, jt: &JetTable<T>) -> Result<CombinedCheck<T>> {
    let ctx = jt.ctx();
    let g3 = crate::inner::gram(crate::inner::GramBasis::P3, n, jt);
    let gr = crate::inner::gram(crate::inner::GramBasis::Rho, n, jt);
    let anti = gram_schmidt(OpBasis::P3, n, &g3, jt)?;
    let sym = gram_schmidt(OpBasis::Rho, n, &gr, jt)?;

    let mut failures = Vec::new();
    // normalized p-gram entries: s_{jk} = <p_j, p_k> must be delta d_inv_sq
    let check_family = |fam: &OpFamily<T>, g: &GramMatrix<T>, failures: &mut Vec<String>| {
        for j in 0..=n {
            for k in 0..=j {
                let s = fam.form(g, &fam.omega[j], &fam.omega[k]);
                let want = if j == k {
                    fam.d_inv_sq[j].clone()
                } else {
                    T::zero(ctx)
                };
                if s != want {
                    failures.push(format!("<p_{j}, p_{k}> ({:?}) = {}", fam.basis, s.canonical_string()));
                }
            }
        }
    };
    check_family(&anti, &g3, &mut failures);
    check_family(&sym, &gr, &mut failures);

    // assembled phi-gram: (2/3) * qgram + (1/3) * delta_{jk}; q cross-base
    // factor is 1 (same base) or -1/2 (distinct bases)
    let half = T::from_ratio(ctx, -1, 2);
    let two_thirds = T::from_ratio(ctx, 2, 3);
    let third = T::from_ratio(ctx, 1, 3);
    let mut identity_ok = failures.is_empty();
    for j in 0..=n {
        for k in 0..=n {
            // exact normalized q-gram: delta_{jk} from orthogonality; scaled by
            // the cross-base factor when bases differ
            let qg_same = if j == k { T::one(ctx) } else { T::zero(ctx) };
            let qg_cross = half.clone() * &qg_same;
            let sym_part = third.clone() * &(if j == k { T::one(ctx) } else { T::zero(ctx) });
            for i in 0..3u8 {
                for l in 0..3u8 {
                    let qpart = if i == l { &qg_same } else { &qg_cross };
                    let entry = two_thirds.clone() * qpart + &sym_part;
                    let want = if j == k && i == l {
                        T::one(ctx)
                    } else {
                        T::zero(ctx)
                    };
                    if entry != want {
                        identity_ok = false;
                        failures.push(format!(
                            "<phi_{j}^({i}), phi_{k}^({l})> = {}",
                            entry.canonical_string()
                        ));
                    }
                }
            }
        }
    }

    Ok(CombinedCheck {
        n,
        cross_base_diagonal: half,
        identity_ok,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::gram;
    use crate::jets::JetTable;
    use crate::ortho::three_term;
    use rug::{Float, Rational};

    fn float_family(n: usize, bits: u32) -> (JetTable<Float>, OpFamily<Float>) {
        let jt: JetTable<Float> = JetTable::compute(2 * n + 2, &bits);
        let g = gram(crate::inner::GramBasis::P3, n, &jt);
        let fam = three_term(OpBasis::P3, n, &g, &jt).unwrap();
        (jt, fam)
    }

    #[test]
    fn determinant_examples() {
        let (_, fam) = float_family(12, 256);
        let j = jacobi(&fam, 12).unwrap();
        // det(J_1) = b_0
        assert_eq!(j.det_direct[0], fam.b[0]);
        // det(J_2) = b_0 b_1 - c_1, matching the direct 2x2 determinant
        let want = Float::with_val(256, &fam.b[0] * &fam.b[1]) - fam.c_k(1);
        let diff = Float::with_val(256, &j.det_recursion[1] - &want).abs();
        assert!(diff <= Float::abs(want) >> 200u32);
    }

    #[test]
    fn determinant_magnitude_decreases() {
        let (_, fam) = float_family(24, 320);
        let j = jacobi(&fam, 24).unwrap();
        for k in 4..23 {
            assert!(
                Float::abs(j.det_direct[k + 1].clone()) < Float::abs(j.det_direct[k].clone()),
                "|det| must decrease at order {}",
                k + 1
            );
        }
    }

    #[test]
    fn cd_first_expansions() {
        let (_, fam) = float_family(8, 256);
        let cd1 = cd_coefficients(&fam, 1).unwrap();
        let want = Float::with_val(256, 1) / fam.c_k(1).clone().sqrt();
        assert_eq!(cd1.a.len(), 1);
        let diff = Float::with_val(256, &cd1.a[0] - &want).abs();
        assert!(diff <= want >> 200u32);
        // A^{(2)}_0 = -(1/sqrt(c1)) b_1/sqrt(c2)
        let cd2 = cd_coefficients(&fam, 2).unwrap();
        let want0 = -(Float::with_val(256, 1) / fam.c_k(1).clone().sqrt())
            * (Float::with_val(256, &fam.b[1]) / fam.c_k(2).clone().sqrt());
        let diff = Float::with_val(256, &cd2.a[0] - &want0).abs();
        assert!(diff <= Float::abs(want0) >> 180u32);
    }

    #[test]
    fn cd_all_positive() {
        let (_, fam) = float_family(16, 320);
        for k in 1..=16 {
            let cd = cd_coefficients(&fam, k).unwrap();
            assert!(cd.a.iter().all(|x| *x > 0), "positivity at k={k}");
        }
    }

    /// The published expansion recursion omits the -sqrt(c_k) A^{(k-1)}_l
    /// term; with it dropped, the k = 3 coefficient of Q_0 disagrees with
    /// the definitional triangular-solve expansion.
    #[test]
    fn truncated_recursion_is_wrong_at_k3() {
        let (_, fam) = float_family(8, 256);
        let cd2 = cd_coefficients(&fam, 2).unwrap();
        let cd3 = cd_coefficients(&fam, 3).unwrap();
        let sq3 = fam.c_k(3).clone().sqrt();
        let truncated = -(Float::with_val(256, &fam.b[2]) * &cd2.a[0]) / sq3;
        let rel = (Float::with_val(256, &truncated - &cd3.a[0]) / &cd3.a[0]).abs();
        assert!(rel > 0.2, "dropped term is material: rel={rel}");
    }

    #[test]
    fn combined_system_is_orthonormal() {
        let jt: JetTable<Rational> = JetTable::compute(20, &());
        let check = combined_onb(8, &jt).unwrap();
        assert!(check.identity_ok, "failures: {:?}", check.failures);
        assert_eq!(check.cross_base_diagonal, Rational::from((-1, 2)));
    }

    /// The cross-base Gram of the orthonormal antisymmetric families is
    /// -1/2 on the diagonal, not zero: <Q_0^(0), Q_0^(1)> = 30 * (-1/60).
    #[test]
    fn cross_base_q_gram_value() {
        let jt: JetTable<Rational> = JetTable::compute(20, &());
        let same = crate::inner::inner_cross_base(0, 0, 0, 0, &jt);
        let cross = crate::inner::inner_cross_base(0, 0, 1, 0, &jt);
        // d_0^2 = 30 normalizes the same-base entry to 1
        let d0_sq = Rational::from(1) / same;
        assert_eq!(Rational::from(&d0_sq * &cross), Rational::from((-1, 2)));
    }
}
