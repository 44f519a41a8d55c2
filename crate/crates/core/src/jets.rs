//! Boundary-jet data of the monomials: the sequences alpha, beta, gamma, eta,
//! the normal-derivative identities, and the tangential sequences at q_1.
//!
//! Conventions (fixed once, used everywhere):
//!   - the tangential derivative at q_i is oriented cyclically,
//!     dT u(q_i) = lim 5^m (u(F_i^m q_{i+1}) - u(F_i^m q_{i-1}));
//!   - under the reflection fixing the base point, value/normal entries of the
//!     symmetric monomials are even and the tangential entry is odd; for the
//!     antisymmetric monomial value/normal are odd and tangential is even.

use crate::error::Result;
use crate::numeric::Num;
use rug::ops::Pow;
use rug::{Integer, Rational};

/// Which jet slot a monomial family normalizes: P_{j1} (value), P_{j2}
/// (normal derivative), P_{j3} (tangential derivative).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialKind {
    Value,
    Normal,
    Tangential,
}

impl MonomialKind {
    pub const ALL: [MonomialKind; 3] = [
        MonomialKind::Value,
        MonomialKind::Normal,
        MonomialKind::Tangential,
    ];

    /// Paper-style index 1, 2, 3.
    pub fn index(self) -> u8 {
        match self {
            MonomialKind::Value => 1,
            MonomialKind::Normal => 2,
            MonomialKind::Tangential => 3,
        }
    }
}

/// Jet sequences of all three monomial families at the boundary, through a
/// fixed maximum degree. Immutable after construction.
#[derive(Debug, Clone)]
pub struct JetTable<T: Num> {
    ctx: T::Ctx,
    max_degree: usize,
    /// alpha_j = P_{j1}(q_1); filled through max_degree + 1 so gamma closes.
    pub alpha: Vec<T>,
    /// beta_j = P_{j2}(q_1)
    pub beta: Vec<T>,
    /// eta_j = dn P_{j1}(q_1); filled through max_degree + 1 so dn3 closes.
    pub eta: Vec<T>,
    /// gamma_j = P_{j3}(q_1) = 3 alpha_{j+1}
    pub gamma: Vec<T>,
    /// dn P_{j2}(q_1): -1/2 at j = 0, else -alpha_j
    pub dn2: Vec<T>,
    /// dn P_{j3}(q_1) = 3 eta_{j+1}
    pub dn3: Vec<T>,
    /// dT P_{j1}(q_1)
    pub t1: Vec<T>,
    /// dT P_{j2}(q_1)
    pub t2: Vec<T>,
    /// dT P_{j3}(q_1)
    pub t3: Vec<T>,
}

impl<T: Num> JetTable<T> {
    /// Fill every sequence through `max_degree`. Coefficients of the
    /// recursions are assembled exactly and converted once, so float mode is
    /// correctly rounded term by term.
    pub fn compute(max_degree: usize, ctx: &T::Ctx) -> Self {
        let n = max_degree + 1; // alpha/beta/eta run one further
        let mut alpha = Vec::with_capacity(n + 1);
        let mut beta = Vec::with_capacity(n + 1);
        let mut eta = Vec::with_capacity(n + 1);

        alpha.push(T::one(ctx));
        alpha.push(T::from_ratio(ctx, 1, 6));
        for j in 2..=n {
            let mut s = T::zero(ctx);
            for l in 1..j {
                s = s + &(alpha[j - l].clone() * &alpha[l]);
            }
            let coef = T::from_rational(ctx, &Rational::from((Integer::from(4), pow5(j) - 5)));
            alpha.push(coef * &s);
        }

        beta.push(T::from_ratio(ctx, -1, 2));
        for j in 1..=n {
            let mut s = T::zero(ctx);
            for l in 0..j {
                let w = Integer::from(3) * pow5(j - l) - pow5(l + 1) + 6;
                let w = T::from_rational(ctx, &Rational::from(w));
                s = s + &(w * &(alpha[j - l].clone() * &beta[l]));
            }
            let coef = T::from_rational(ctx, &Rational::from((Integer::from(2), Integer::from(15) * (pow5(j) - 1))));
            beta.push(coef * &s);
        }

        eta.push(T::zero(ctx));
        for j in 1..=n {
            let lead = T::from_rational(ctx, &Rational::from((pow5(j) + 1, Integer::from(2))));
            let mut s = lead * &alpha[j];
            for l in 0..j {
                let two = T::from_i64(ctx, 2);
                s = s + &(two * &(eta[l].clone() * &beta[j - l]));
            }
            eta.push(s);
        }

        let three = T::from_i64(ctx, 3);
        let gamma: Vec<T> = (0..=max_degree).map(|j| three.clone() * &alpha[j + 1]).collect();
        let mut dn2: Vec<T> = vec![T::from_ratio(ctx, -1, 2)];
        dn2.extend((1..=max_degree).map(|j| -alpha[j].clone()));
        let dn3: Vec<T> = (0..=max_degree).map(|j| three.clone() * &eta[j + 1]).collect();

        let mut jt = JetTable {
            ctx: ctx.clone(),
            max_degree,
            alpha,
            beta,
            eta,
            gamma,
            dn2,
            dn3,
            t1: Vec::new(),
            t2: Vec::new(),
            t3: Vec::new(),
        };
        jt.solve_tangential();
        jt
    }

    /// Tangential sequences from the midpoint-matching identity: the two jet
    /// expansions of u restricted to the child cells F_0(SG) and F_1(SG) must
    /// give the same value at the shared point F_0 q_1 = F_1 q_0. Solved
    /// degree by degree; the newest unknown's coefficient is -gamma_0/5.
    fn solve_tangential(&mut self) {
        let ctx = self.ctx.clone();
        let fifth = T::from_ratio(&ctx, 1, 5);
        let three_fifth = T::from_ratio(&ctx, 3, 5);
        // u o F_0 = 5^{-j} * s_k * P_{jk}: the base jet is a delta, so only
        // the top term survives, scaled per slot.
        let rhs_scale = [T::one(&ctx), three_fifth.clone(), fifth.clone()];

        for (ki, kind) in MonomialKind::ALL.iter().enumerate() {
            let mut t: Vec<T> = Vec::with_capacity(self.max_degree + 1);
            for j in 0..=self.max_degree {
                let mut acc = T::zero(&ctx);
                let mut pow = T::one(&ctx); // 5^{-m}
                for m in 0..=j {
                    let mut term = self.val(*kind, j - m).clone() * &self.alpha[m];
                    term = term + &(three_fifth.clone() * &(self.nrm(*kind, j - m).clone() * &self.beta[m]));
                    if m > 0 {
                        term = term - &(fifth.clone() * &(t[j - m].clone() * &self.gamma[m]));
                    }
                    acc = acc + &(pow.clone() * &term);
                    pow = pow * &fifth;
                }
                // pow is now 5^{-(j+1)}; rebuild 5^{-j}
                let pow_j = {
                    let mut p = T::one(&ctx);
                    for _ in 0..j {
                        p = p * &fifth;
                    }
                    p
                };
                let rhs = pow_j * &(rhs_scale[ki].clone() * self.val(*kind, j));
                // remaining unknown: -(1/5) gamma_0 t_j
                let denom = fifth.clone() * &self.gamma[0];
                debug_assert!(!denom.is_zero());
                t.push((acc - &rhs) / &denom);
            }
            match kind {
                MonomialKind::Value => self.t1 = t,
                MonomialKind::Normal => self.t2 = t,
                MonomialKind::Tangential => self.t3 = t,
            }
        }
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// P_{mk}(q_1)
    pub fn val(&self, kind: MonomialKind, m: usize) -> &T {
        match kind {
            MonomialKind::Value => &self.alpha[m],
            MonomialKind::Normal => &self.beta[m],
            MonomialKind::Tangential => &self.gamma[m],
        }
    }

    /// dn P_{mk}(q_1)
    pub fn nrm(&self, kind: MonomialKind, m: usize) -> &T {
        match kind {
            MonomialKind::Value => &self.eta[m],
            MonomialKind::Normal => &self.dn2[m],
            MonomialKind::Tangential => &self.dn3[m],
        }
    }

    /// dT P_{mk}(q_1)
    pub fn tan(&self, kind: MonomialKind, m: usize) -> &T {
        match kind {
            MonomialKind::Value => &self.t1[m],
            MonomialKind::Normal => &self.t2[m],
            MonomialKind::Tangential => &self.t3[m],
        }
    }

    /// Full (value, normal, tangential) entry of P_{mk} at q_0, q_1 or q_2.
    /// Mirror rule at q_2: symmetric kinds flip the tangential sign, the
    /// antisymmetric kind flips value and normal and keeps tangential.
    pub fn jet_entry(&self, kind: MonomialKind, m: usize, point: u8) -> (T, T, T) {
        let ctx = &self.ctx;
        match point {
            0 => {
                let one_if = |cond: bool| if cond { T::one(ctx) } else { T::zero(ctx) };
                (
                    one_if(m == 0 && kind == MonomialKind::Value),
                    one_if(m == 0 && kind == MonomialKind::Normal),
                    one_if(m == 0 && kind == MonomialKind::Tangential),
                )
            }
            1 => (
                self.val(kind, m).clone(),
                self.nrm(kind, m).clone(),
                self.tan(kind, m).clone(),
            ),
            2 => match kind {
                MonomialKind::Tangential => (
                    -self.val(kind, m).clone(),
                    -self.nrm(kind, m).clone(),
                    self.tan(kind, m).clone(),
                ),
                _ => (
                    self.val(kind, m).clone(),
                    self.nrm(kind, m).clone(),
                    -self.tan(kind, m).clone(),
                ),
            },
            _ => panic!("boundary point index out of range"),
        }
    }

    /// Assemble the jet of Delta^m P_{jk} at all three boundary points for
    /// m = 0..=j, using Delta P_{jk} = P_{(j-1)k}.
    pub fn boundary_jet(&self, kind: MonomialKind, degree: usize) -> BoundaryJet<T> {
        assert!(degree <= self.max_degree);
        let mut points = Vec::with_capacity(3);
        for q in 0..3u8 {
            let entries = (0..=degree)
                .map(|m| self.jet_entry(kind, degree - m, q))
                .collect();
            points.push(entries);
        }
        BoundaryJet {
            kind,
            degree,
            points,
        }
    }

    /// CSV with one row per degree, canonical scalar text.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,alpha,beta,gamma,eta,dn2,dn3,t1,t2,t3\n");
        for j in 0..=self.max_degree {
            let row = [
                &self.alpha[j],
                &self.beta[j],
                &self.gamma[j],
                &self.eta[j],
                &self.dn2[j],
                &self.dn3[j],
                &self.t1[j],
                &self.t2[j],
                &self.t3[j],
            ];
            out.push_str(&j.to_string());
            for v in row {
                out.push(',');
                out.push_str(&v.canonical_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str, ctx: &T::Ctx) -> Result<Vec<Vec<T>>> {
        let mut rows = Vec::new();
        for line in text.lines().skip(1) {
            if line.is_empty() {
                continue;
            }
            let mut cols = Vec::new();
            for field in line.split(',').skip(1) {
                let s = crate::numeric::Scalar::parse_canonical(field)?;
                cols.push(T::from_rational(ctx, &s.to_rational()));
            }
            rows.push(cols);
        }
        Ok(rows)
    }
}

/// Values/normal/tangential of Delta^m P_{jk} at the three boundary points,
/// m = 0..=degree.
#[derive(Debug, Clone)]
pub struct BoundaryJet<T: Num> {
    pub kind: MonomialKind,
    pub degree: usize,
    /// points[q][m] = (value, normal, tangential) of Delta^m P at q_q
    pub points: Vec<Vec<(T, T, T)>>,
}

fn pow5(e: usize) -> Integer {
    Integer::from(5).pow(e as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::{Float, Rational};

    fn table(n: usize) -> JetTable<Rational> {
        JetTable::compute(n, &())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn initial_values() {
        let jt = table(8);
        assert_eq!(jt.alpha[0], 1);
        assert_eq!(jt.alpha[1], q(1, 6));
        assert_eq!(jt.beta[0], q(-1, 2));
        assert_eq!(jt.eta[0], 0);
        assert_eq!(jt.dn2[0], q(-1, 2));
    }

    #[test]
    fn recursion_examples() {
        let jt = table(8);
        assert_eq!(jt.alpha[2], q(1, 180));
        assert_eq!(jt.alpha[3], q(1, 16200));
        assert_eq!(jt.beta[1], q(-2, 45));
        assert_eq!(jt.beta[2], q(-49, 48600));
        assert_eq!(jt.eta[1], q(1, 2));
        assert_eq!(jt.eta[2], q(1, 36));
        assert_eq!(jt.eta[3], q(1, 2430));
    }

    #[test]
    fn gamma_matches_three_alpha_even_at_zero() {
        let jt = table(10);
        for j in 0..=10 {
            assert_eq!(jt.gamma[j], q(3, 1) * &jt.alpha[j + 1]);
        }
        assert_eq!(jt.gamma[0], q(1, 2));
    }

    #[test]
    fn normal_derivative_identities() {
        let jt = table(10);
        for j in 1..=10 {
            assert_eq!(jt.dn2[j], -jt.alpha[j].clone());
        }
        for j in 0..=10 {
            assert_eq!(jt.dn3[j], q(3, 1) * &jt.eta[j + 1]);
        }
    }

    #[test]
    fn alpha_positive_strictly_decreasing() {
        let jt = table(24);
        for j in 0..=24 {
            assert!(jt.alpha[j] > 0);
        }
        for j in 1..24 {
            assert!(jt.alpha[j + 1] < jt.alpha[j]);
        }
    }

    #[test]
    fn tangential_anchors() {
        let jt = table(8);
        assert_eq!(jt.t1[0], 0);
        assert_eq!(jt.t2[0], q(-1, 2));
        assert_eq!(jt.t3[0], q(-1, 2));
        // degree-1 matching solution; confirmed against the discrete-limit
        // oracle in the mesh tests
        assert_eq!(jt.t1[1], q(1, 6));
        assert_eq!(jt.t2[1], q(-1, 36));
        assert_eq!(jt.t3[1], 0);
    }

    #[test]
    fn harmonic_tangential_closed_form() {
        // dT h(q_1) = h(q_2) - h(q_0) for harmonic h
        let jt = table(4);
        // P_{01}: constant one
        assert_eq!(jt.t1[0], q(1, 1) - q(1, 1));
        // P_{02}: boundary (0, -1/2, -1/2)
        assert_eq!(jt.t2[0], q(-1, 2) - q(0, 1));
        // P_{03}: boundary (0, 1/2, -1/2)
        assert_eq!(jt.t3[0], q(-1, 2) - q(0, 1));
    }

    #[test]
    fn boundary_jet_examples() {
        let jt = table(6);
        // constant: value 1 at all points, derivatives 0
        let bj = jt.boundary_jet(MonomialKind::Value, 0);
        for p in 0..3 {
            assert_eq!(bj.points[p][0].0, 1);
            assert_eq!(bj.points[p][0].1, 0);
            assert_eq!(bj.points[p][0].2, 0);
        }
        // antisymmetric harmonic: values (0, 1/2, -1/2)
        let bj = jt.boundary_jet(MonomialKind::Tangential, 0);
        assert_eq!(bj.points[0][0].0, 0);
        assert_eq!(bj.points[1][0].0, q(1, 2));
        assert_eq!(bj.points[2][0].0, q(-1, 2));
        // dn P_{12}(q_1) = -alpha_1 = -1/6
        let bj = jt.boundary_jet(MonomialKind::Normal, 1);
        assert_eq!(bj.points[1][0].1, q(-1, 6));
    }

    #[test]
    fn float_matches_rational_within_tolerance() {
        let n = 40;
        let exact = table(n);
        let ctx = 512u32;
        let approx: JetTable<Float> = JetTable::compute(n, &ctx);
        for j in 0..=n {
            let want = Float::with_val(512, &exact.alpha[j]);
            let diff = Float::with_val(512, &approx.alpha[j] - &want).abs();
            let tol = Float::abs(want) >> 480u32;
            assert!(diff <= tol, "alpha[{j}] drifted");
        }
    }

    #[test]
    fn csv_roundtrip_and_rows() {
        let jt = table(4);
        let csv = jt.to_csv();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("degree,alpha"));
        let row1: Vec<&str> = csv.lines().nth(2).unwrap().split(',').collect();
        assert_eq!(row1[1], "1/6");
        let row2: Vec<&str> = csv.lines().nth(3).unwrap().split(',').collect();
        assert_eq!(row2[1], "1/180");
        let parsed: Vec<Vec<Rational>> = JetTable::<Rational>::parse_csv(&csv, &()).unwrap();
        for (j, row) in parsed.iter().enumerate() {
            assert_eq!(row[0], jt.alpha[j]);
            assert_eq!(row[8], jt.t3[j]);
        }
    }
}
