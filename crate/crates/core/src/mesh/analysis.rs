//! Edge restrictions, quadrature, zero crossings, and nodal domains on mesh
//! values.

use crate::error::{Error, Result};
use crate::mesh::eval::MeshValues;
use crate::numeric::Num;

/// A boundary edge of the gasket. `Bottom` runs q_1 -> q_2 (across from
/// q_0); the side edges run from the apex, q_0 -> q_1 and q_0 -> q_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Bottom,
    Side0,
    Side1,
}

impl Edge {
    fn corners(self) -> (u8, u8) {
        match self {
            Edge::Bottom => (1, 2),
            Edge::Side0 => (0, 1),
            Edge::Side1 => (0, 2),
        }
    }
}

impl std::str::FromStr for Edge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bottom" => Ok(Edge::Bottom),
            "side0" => Ok(Edge::Side0),
            "side1" => Ok(Edge::Side1),
            other => Err(Error::Parse(format!("unknown edge `{other}`"))),
        }
    }
}

/// The 2^m + 1 vertices on a boundary edge as (dyadic parameter, value),
/// ordered by the parameter. t = 0 at the edge's first corner; the binary
/// digits of t follow the address word along the edge.
pub fn edge_restriction<T: Num>(mv: &MeshValues<T>, edge: Edge) -> Vec<(f64, T)> {
    let (a, b) = edge.corners();
    let m = mv.level;
    let mut out = Vec::with_capacity((1usize << m) + 1);
    for (i, addr) in mv.topology.vertices.iter().enumerate() {
        // canonicalization preserves the letter set, so the canonical form
        // of an edge vertex stays within the edge's two letters
        let on_edge = addr.word.iter().all(|&l| l == a || l == b)
            && (addr.corner == a || addr.corner == b);
        if on_edge {
            let t = edge_parameter(&addr.word, addr.corner, b, m);
            out.push((t, mv.values[i].clone()));
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out
}

fn edge_parameter(word: &[u8], corner: u8, far: u8, m: usize) -> f64 {
    let mut t = 0.0f64;
    let mut scale = 0.5;
    for &l in word {
        if l == far {
            t += scale;
        }
        scale /= 2.0;
    }
    if corner == far {
        t += 2f64.powi(-(m as i32));
    }
    t
}

/// Graph edges whose endpoint values have strictly opposite signs.
pub fn zero_crossings<T: Num>(mv: &MeshValues<T>) -> Vec<(u32, u32)> {
    let signs = mv.signs();
    mv.topology
        .edges()
        .into_iter()
        .filter(|&(x, y)| signs[x as usize] * signs[y as usize] < 0)
        .collect()
}

/// Nodal decomposition: connected components of the subgraphs induced on
/// strictly positive and strictly negative vertices. Vertices with exact
/// zero value belong to no component.
#[derive(Debug, Clone)]
pub struct NodalDomains {
    pub count: usize,
    /// component id per vertex; -1 for zero vertices
    pub labels: Vec<i32>,
}

pub fn nodal_domains<T: Num>(mv: &MeshValues<T>) -> NodalDomains {
    let signs = mv.signs();
    let n = signs.len();
    let mut dsu = Dsu::new(n);
    for (x, y) in mv.topology.edges() {
        let (sx, sy) = (signs[x as usize], signs[y as usize]);
        if sx != 0 && sx == sy {
            dsu.union(x as usize, y as usize);
        }
    }
    // deterministic labels in order of first appearance
    let mut labels = vec![-1i32; n];
    let mut next = 0i32;
    let mut assigned = std::collections::HashMap::new();
    for v in 0..n {
        if signs[v] == 0 {
            continue;
        }
        let root = dsu.find(v);
        let id = *assigned.entry(root).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
        labels[v] = id;
    }
    NodalDomains {
        count: next as usize,
        labels,
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Self-similar quadrature: sum over level-m cells of 3^{-m} times the mean
/// of the product over the cell's corners. Exact for products of harmonic
/// functions' means in the limit; used as an oracle against exact inner
/// products.
pub fn quadrature<T: Num>(a: &MeshValues<T>, b: &MeshValues<T>) -> Result<T> {
    if a.level != b.level {
        return Err(Error::LevelMismatch(a.level, b.level));
    }
    let ctx = a.values[0].ctx();
    let mut total = T::zero(&ctx);
    for tri in &a.topology.cells {
        let mut s = T::zero(&ctx);
        for &v in tri {
            s = s + &(a.values[v as usize].clone() * &b.values[v as usize]);
        }
        total = total + &s;
    }
    let third = T::from_ratio(&ctx, 1, 3);
    let mut weight = third.clone();
    for _ in 0..a.level {
        weight = weight * &third;
    }
    Ok(total * &weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::JetTable;
    use crate::mesh::eval::evaluate_exact;
    use crate::ortho::{MonomialVector, OpBasis};
    use rug::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn p03(jt: &JetTable<Rational>, m: usize) -> crate::mesh::eval::MeshValues<Rational> {
        let v = MonomialVector::new(OpBasis::P3, vec![q(1, 1)]);
        evaluate_exact(&v, 0, m, jt).unwrap()
    }

    #[test]
    fn edge_series_shapes() {
        let jt = JetTable::compute(4, &());
        let one = MonomialVector::new(OpBasis::Rho, vec![q(1, 3)]);
        let mv = evaluate_exact(&one, 0, 4, &jt).unwrap();
        let series = edge_restriction(&mv, Edge::Bottom);
        assert_eq!(series.len(), 17);
        assert!(series.iter().all(|(_, v)| *v == 1));
        assert_eq!(series[0].0, 0.0);
        assert_eq!(series.last().unwrap().0, 1.0);

        // P_{03} on the bottom edge: antisymmetric about t = 1/2, zero there
        let mv = p03(&jt, 5);
        let series = edge_restriction(&mv, Edge::Bottom);
        assert_eq!(series.len(), 33);
        let n = series.len();
        for i in 0..n {
            let (t, v) = &series[i];
            let (t2, v2) = &series[n - 1 - i];
            assert!((t + t2 - 1.0).abs() < 1e-12);
            assert_eq!(v.clone() + v2, 0, "antisymmetry at t={t}");
        }
        assert_eq!(series[n / 2].1, 0);
    }

    #[test]
    fn symmetric_bottom_matches_side_edges() {
        let jt = JetTable::compute(8, &());
        let rho2 = MonomialVector::new(OpBasis::Rho, vec![q(0, 1), q(0, 1), q(1, 1)]);
        let mv = evaluate_exact(&rho2, 0, 4, &jt).unwrap();
        let bottom = edge_restriction(&mv, Edge::Bottom);
        for side in [Edge::Side0, Edge::Side1] {
            let s = edge_restriction(&mv, side);
            assert_eq!(bottom.len(), s.len());
            for ((t1, v1), (t2, v2)) in bottom.iter().zip(&s) {
                assert!((t1 - t2).abs() < 1e-12);
                assert_eq!(v1, v2);
            }
        }
    }

    #[test]
    fn constant_has_one_domain_no_crossings() {
        let jt = JetTable::compute(2, &());
        let one = MonomialVector::new(OpBasis::Rho, vec![q(1, 3)]);
        let mv = evaluate_exact(&one, 0, 3, &jt).unwrap();
        assert!(zero_crossings(&mv).is_empty());
        let nd = nodal_domains(&mv);
        assert_eq!(nd.count, 1);
    }

    #[test]
    fn antisymmetric_harmonic_has_two_domains() {
        let jt = JetTable::compute(2, &());
        let mv = p03(&jt, 6);
        let nd = nodal_domains(&mv);
        assert_eq!(nd.count, 2);
        // scaling invariance
        let mut scaled = mv.clone();
        for v in scaled.values.iter_mut() {
            *v = v.clone() * &q(7, 3);
        }
        assert_eq!(nodal_domains(&scaled).count, 2);
    }

    #[test]
    fn quadrature_examples() {
        let jt = JetTable::compute(4, &());
        let one = MonomialVector::new(OpBasis::Rho, vec![q(1, 3)]);
        for m in 0..=5 {
            let mv = evaluate_exact(&one, 0, m, &jt).unwrap();
            assert_eq!(quadrature(&mv, &mv).unwrap(), 1);
        }
        let a = p03(&jt, 8);
        let val = quadrature(&a, &a).unwrap();
        let rel = Rational::from(&val - &q(1, 30)).abs() / q(1, 30);
        assert!(rel.to_f64() < 0.01, "within 1% of 1/30: {}", rel.to_f64());
        // mixed symmetric/antisymmetric integrates to zero exactly
        let b = evaluate_exact(&one, 0, 8, &jt).unwrap();
        assert_eq!(quadrature(&a, &b).unwrap(), 0);
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let jt = JetTable::compute(2, &());
        let one = MonomialVector::new(OpBasis::Rho, vec![q(1, 3)]);
        let a = evaluate_exact(&one, 0, 2, &jt).unwrap();
        let b = evaluate_exact(&one, 0, 3, &jt).unwrap();
        assert!(matches!(
            quadrature(&a, &b),
            Err(Error::LevelMismatch(2, 3))
        ));
    }
}
