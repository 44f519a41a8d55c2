//! Mesh evaluation by two routes: exact recursive jet transfer (primary) and
//! the discrete renormalized Dirichlet solve (independent oracle).

use crate::error::{Error, Result};
use crate::jets::JetTable;
use crate::mesh::address::{MeshHierarchy, MeshTopology};
use crate::mesh::transfer::{root_jet, transfer, value_at};
use crate::numeric::{scalars_agree, Num};
use crate::ortho::MonomialVector;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ExactJet,
    DiscreteSolve,
}

/// Values at every canonical vertex of the level-m graph.
#[derive(Debug, Clone)]
pub struct MeshValues<T: Num> {
    pub level: usize,
    pub provenance: Provenance,
    pub topology: Arc<MeshTopology>,
    pub values: Vec<T>,
}

impl<T: Num> MeshValues<T> {
    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64()).collect()
    }

    /// Vertex signs with exact zeros honored; float mode treats entries
    /// below 2^{-prec/4} of the maximum magnitude as zero, so symmetry-forced
    /// zeros classify deterministically.
    pub fn signs(&self) -> Vec<i8> {
        let ctx = self.values[0].ctx();
        let zero = T::zero(&ctx);
        match self.values[0].precision_bits() {
            None => self
                .values
                .iter()
                .map(|v| {
                    if v.is_zero() {
                        0
                    } else if *v > zero {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
            Some(bits) => {
                let mut scale = zero.clone();
                for v in &self.values {
                    let a = v.abs();
                    if a > scale {
                        scale = a;
                    }
                }
                if scale.is_zero() {
                    return vec![0; self.values.len()];
                }
                let tol = {
                    // scale * 2^{-bits/4}
                    let mut t = scale;
                    let half = T::from_ratio(&ctx, 1, 2);
                    for _ in 0..bits / 4 {
                        t = t * &half;
                    }
                    t
                };
                self.values
                    .iter()
                    .map(|v| {
                        let a = v.abs();
                        if a <= tol {
                            0
                        } else if *v > zero {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Exact evaluation at every vertex of V_m by recursive jet transfer from
/// the root cell. Junction vertices receive values from both adjacent
/// cells; disagreement (beyond mode tolerance) is an error, making every
/// evaluation a sibling-consistency check of the transfer data.
pub fn evaluate_exact<T: Num>(
    v: &MonomialVector<T>,
    base: u8,
    level: usize,
    jt: &JetTable<T>,
) -> Result<MeshValues<T>> {
    let d = v.degree();
    assert!(
        jt.max_degree() >= d,
        "jet table filled to degree {} but polynomial has degree {d}",
        jt.max_degree()
    );
    let topo = MeshTopology::new(level);
    let mut values: Vec<Option<T>> = vec![None; topo.vertex_count()];
    let root = root_jet(v, base, jt);
    walk(&topo, &mut values, jt, d, 0, level, 0, &root)?;
    let values = values
        .into_iter()
        .map(|v| v.expect("every vertex visited"))
        .collect();
    Ok(MeshValues {
        level,
        provenance: Provenance::ExactJet,
        topology: topo,
        values,
    })
}

#[allow(clippy::too_many_arguments)]
fn walk<T: Num>(
    topo: &MeshTopology,
    values: &mut [Option<T>],
    jt: &JetTable<T>,
    degree: usize,
    anchor: u8,
    remaining: usize,
    cell_prefix: usize,
    jet: &[T],
) -> Result<()> {
    if remaining == 0 {
        let tri = topo.cells[cell_prefix];
        for c in 0..3u8 {
            let val = value_at(jet, degree, anchor, c, jt);
            let slot = &mut values[tri[c as usize] as usize];
            match slot {
                None => *slot = Some(val),
                Some(prev) => {
                    if !scalars_agree(prev, &val) {
                        return Err(Error::RouteMismatch {
                            what: format!(
                                "sibling consistency at vertex {}",
                                topo.vertices[tri[c as usize] as usize]
                            ),
                            a: prev.canonical_string(),
                            b: val.canonical_string(),
                        });
                    }
                }
            }
        }
        return Ok(());
    }
    for c in 0..3u8 {
        let child = transfer(jet, degree, anchor, c, jt);
        walk(
            topo,
            values,
            jt,
            degree,
            c,
            remaining - 1,
            3 * cell_prefix + c as usize,
            &child,
        )?;
    }
    Ok(())
}

/// Independent route: solve the discrete Dirichlet problem
/// (3/2) 5^m Delta_m u = (Lap u)|_{V_m} with exact boundary values,
/// recursively in the polynomial degree (the Laplacian shifts the monomial
/// coefficients down). Exact for harmonic and degree-one polynomials,
/// convergent in m otherwise.
///
/// The solver eliminates level by level: the three midpoints interior to a
/// coarse cell satisfy a local 3x3 system whose elimination renormalizes
/// the graph Laplacian by 3/5 and pushes the midpoint loads onto the coarse
/// corners. O(3^m) exact operations.
pub fn evaluate_discrete<T: Num>(
    v: &MonomialVector<T>,
    level: usize,
    jt: &JetTable<T>,
) -> Result<MeshValues<T>> {
    assert!(level >= 1);
    let hierarchy = MeshHierarchy::new(level);
    let values = solve_recursive(&v.coeffs, v, level, jt, &hierarchy)?;
    Ok(MeshValues {
        level,
        provenance: Provenance::DiscreteSolve,
        topology: hierarchy.levels[level].clone(),
        values,
    })
}

fn solve_recursive<T: Num>(
    coeffs: &[T],
    proto: &MonomialVector<T>,
    level: usize,
    jt: &JetTable<T>,
    hierarchy: &MeshHierarchy,
) -> Result<Vec<T>> {
    let ctx = jt.ctx();
    let topo = &hierarchy.levels[level];
    let nv = topo.vertex_count();

    let effective_degree = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let mut f = vec![T::zero(ctx); nv];
    if effective_degree > 0 {
        // Delta u has the shifted-down coefficients; its mesh values load
        // the right-hand side (2/3) 5^{-m} (Lap u)
        let lap_coeffs: Vec<T> = coeffs[1..].to_vec();
        let lap_vals = solve_recursive(&lap_coeffs, proto, level, jt, hierarchy)?;
        let mut scale = T::from_ratio(ctx, 2, 3);
        let fifth = T::from_ratio(ctx, 1, 5);
        for _ in 0..level {
            scale = scale * &fifth;
        }
        for (slot, lv) in f.iter_mut().zip(&lap_vals) {
            *slot = scale.clone() * lv;
        }
    }

    let boundary = MonomialVector::new(proto.basis, coeffs.to_vec()).boundary_values(jt);

    // forward elimination: reduce the level-k problem to level k-1,
    // remembering each level's midpoint loads for back-substitution
    let mut rhs_per_level: Vec<Vec<T>> = Vec::with_capacity(level + 1);
    let mut rhs = f;
    for k in (1..=level).rev() {
        let coarse = &hierarchy.levels[k - 1];
        let lift = &hierarchy.lift[k - 1];
        let mids = &hierarchy.midpoints[k - 1];
        let mut new_rhs = vec![T::zero(ctx); coarse.vertex_count()];
        let third = T::from_ratio(ctx, 1, 3);
        let five_third = T::from_ratio(ctx, 5, 3);
        let two = T::from_i64(ctx, 2);
        for (ci, tri) in coarse.cells.iter().enumerate() {
            let loads_src = &mids[ci];
            let loads: [T; 3] = [
                rhs[loads_src[0] as usize].clone(),
                rhs[loads_src[1] as usize].clone(),
                rhs[loads_src[2] as usize].clone(),
            ];
            for i in 0..3 {
                let sum = loads[i].clone()
                    + &(two.clone() * &loads[(i + 1) % 3])
                    + &(two.clone() * &loads[(i + 2) % 3]);
                let slot = tri[i] as usize;
                new_rhs[slot] = new_rhs[slot].clone() + &(third.clone() * &sum);
            }
        }
        for (cv, fv) in lift.iter().enumerate() {
            new_rhs[cv] = new_rhs[cv].clone() + &(five_third.clone() * &rhs[*fv as usize]);
        }
        rhs_per_level.push(rhs);
        rhs = new_rhs;
    }
    rhs_per_level.push(rhs);
    rhs_per_level.reverse(); // index k holds the level-k loads

    // level 0 is all boundary
    let mut vals = vec![T::zero(ctx); 3];
    let b0 = hierarchy.levels[0].boundary();
    for c in 0..3 {
        vals[b0[c] as usize] = boundary[c].clone();
    }

    // back-substitution: lift coarse values, then solve each cell's 3x3
    // midpoint system x_i = (y_i + (y_0+y_1+y_2)/2) / 5, y_i = u_j + u_k - f_i
    for k in 1..=level {
        let coarse = &hierarchy.levels[k - 1];
        let fine = &hierarchy.levels[k];
        let lift = &hierarchy.lift[k - 1];
        let mids = &hierarchy.midpoints[k - 1];
        let f_here = &rhs_per_level[k];
        let mut next = vec![T::zero(ctx); fine.vertex_count()];
        for (cv, fv) in lift.iter().enumerate() {
            next[*fv as usize] = vals[cv].clone();
        }
        let fifth = T::from_ratio(ctx, 1, 5);
        let half = T::from_ratio(ctx, 1, 2);
        for (ci, tri) in coarse.cells.iter().enumerate() {
            let u: [T; 3] = [
                vals[tri[0] as usize].clone(),
                vals[tri[1] as usize].clone(),
                vals[tri[2] as usize].clone(),
            ];
            let y: Vec<T> = (0..3)
                .map(|i| {
                    u[(i + 1) % 3].clone() + &u[(i + 2) % 3]
                        - &f_here[mids[ci][i] as usize]
                })
                .collect();
            let total = y[0].clone() + &y[1] + &y[2];
            for i in 0..3 {
                let xi = fifth.clone() * &(y[i].clone() + &(half.clone() * &total));
                next[mids[ci][i] as usize] = xi;
            }
        }
        vals = next;
    }
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::JetTable;
    use crate::ortho::OpBasis;
    use rug::Rational;

    fn jt(n: usize) -> JetTable<Rational> {
        JetTable::compute(n, &())
    }

    fn p3(coeffs: &[(i64, i64)]) -> MonomialVector<Rational> {
        MonomialVector::new(
            OpBasis::P3,
            coeffs.iter().map(|&(n, d)| Rational::from((n, d))).collect(),
        )
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn constant_is_one_everywhere() {
        let jt = jt(4);
        let one = MonomialVector::new(OpBasis::Rho, vec![q(1, 3)]);
        for m in 0..=4 {
            let mv = evaluate_exact(&one, 0, m, &jt).unwrap();
            assert!(mv.values.iter().all(|v| *v == 1));
        }
    }

    #[test]
    fn antisymmetric_harmonic_level_one_values() {
        let jt = jt(4);
        let mv = evaluate_exact(&p3(&[(1, 1)]), 0, 1, &jt).unwrap();
        use crate::mesh::address::VertexAddress;
        let get = |word: &[u8], c: u8| {
            let idx = mv
                .topology
                .index_of(&VertexAddress::new(word.to_vec(), c))
                .unwrap();
            mv.values[idx as usize].clone()
        };
        assert_eq!(get(&[0], 0), 0);
        assert_eq!(get(&[1], 1), q(1, 2));
        assert_eq!(get(&[2], 2), q(-1, 2));
        // midpoints: on the axis 0, off-axis +-1/10
        assert_eq!(get(&[1], 2), 0);
        assert_eq!(get(&[0], 1), q(1, 10));
        assert_eq!(get(&[0], 2), q(-1, 10));
    }

    #[test]
    fn discrete_is_exact_for_harmonic_and_degree_one() {
        let jt = jt(6);
        for coeffs in [vec![(1i64, 1i64)], vec![(0, 1), (1, 1)]] {
            let v = p3(&coeffs);
            for m in 1..=4 {
                let a = evaluate_exact(&v, 0, m, &jt).unwrap();
                let b = evaluate_discrete(&v, m, &jt).unwrap();
                assert_eq!(a.values, b.values, "degree {} level {m}", coeffs.len() - 1);
            }
        }
        let rho1 = MonomialVector::new(OpBasis::Rho, vec![q(0, 1), q(1, 1)]);
        let a = evaluate_exact(&rho1, 0, 3, &jt).unwrap();
        let b = evaluate_discrete(&rho1, 3, &jt).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn discrete_converges_for_higher_degree() {
        let jt = jt(6);
        let v = p3(&[(0, 1), (0, 1), (1, 1)]); // P_{23}
        let mut prev: Option<f64> = None;
        for m in 2..=5 {
            let a = evaluate_exact(&v, 0, m, &jt).unwrap();
            let b = evaluate_discrete(&v, m, &jt).unwrap();
            let err = a
                .values
                .iter()
                .zip(&b.values)
                .map(|(x, y)| Rational::from(x - y).abs().to_f64())
                .fold(0.0f64, f64::max);
            if let Some(p) = prev {
                assert!(err < p, "monotone decrease at level {m}: {err} vs {p}");
            }
            prev = Some(err);
        }
        // rate is ~1/5 per level
        assert!(prev.unwrap() < 1e-7);
    }

    #[test]
    fn discrete_boundary_rows_are_exact() {
        let jt = jt(6);
        let v = p3(&[(0, 1), (0, 1), (1, 1)]);
        let mv = evaluate_discrete(&v, 3, &jt).unwrap();
        let b = mv.topology.boundary();
        assert_eq!(mv.values[b[0] as usize], 0);
        let v1 = v.boundary_values(&jt);
        assert_eq!(mv.values[b[1] as usize], v1[1]);
        assert_eq!(mv.values[b[2] as usize], v1[2]);
    }

    #[test]
    fn harmonic_values_are_discretely_harmonic() {
        let jt = jt(4);
        let mv = evaluate_exact(&p3(&[(1, 1)]), 0, 4, &jt).unwrap();
        // Delta_m annihilates the values at every interior vertex
        let mut acc = vec![Rational::new(); mv.topology.vertex_count()];
        let mut deg = vec![0u32; mv.topology.vertex_count()];
        for tri in &mv.topology.cells {
            for a in 0..3 {
                for b in 0..3 {
                    if a != b {
                        acc[tri[a] as usize] += &mv.values[tri[b] as usize];
                        deg[tri[a] as usize] += 1;
                    }
                }
            }
        }
        for i in 0..acc.len() {
            if !mv.topology.is_boundary_index(i as u32) {
                let lap = acc[i].clone() - Rational::from(deg[i]) * &mv.values[i];
                assert_eq!(lap, 0);
            }
        }
    }

    #[test]
    fn rotation_equivariance_of_rotated_bases() {
        // evaluating the base-1 family equals permuting vertices of the
        // base-0 evaluation by the rotation map
        let jt = jt(6);
        let v = p3(&[(0, 1), (1, 1)]);
        let m = 3;
        let base0 = evaluate_exact(&v, 0, m, &jt).unwrap();
        let base1 = evaluate_exact(&v, 1, m, &jt).unwrap();
        for (i, addr) in base0.topology.vertices.iter().enumerate() {
            let rotated = addr.rotate();
            let j = base0.topology.index_of(&rotated).unwrap() as usize;
            assert_eq!(base1.values[j], base0.values[i], "at {addr}");
        }
    }
}
