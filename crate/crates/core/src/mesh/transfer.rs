//! Jet transfer: moving the full jet of a polynomial between corners of a
//! cell and down to child cells, exactly.
//!
//! A jet at corner a is the coefficient vector of the local function over
//! the monomial basis based at q_a, laid out as
//! [v_0..v_d, n_0..n_d, t_0..t_d]. Changing base to the cyclically next
//! corner uses the tabulated boundary data; the cyclically previous corner
//! is its mirror image. Descending into the child cell at q_a scales the
//! degree-m slots by 5^{-m} and the normal/tangential slots by 3/5 and 1/5.

use crate::jets::JetTable;
use crate::numeric::Num;
use crate::ortho::{MonomialVector, OpBasis};

pub fn jet_len(degree: usize) -> usize {
    3 * (degree + 1)
}

/// Jet at q_{a+1} (sign = +1) or q_{a-1} (sign = -1) from the jet at q_a.
pub fn change_base<T: Num>(jet: &[T], degree: usize, sign: i8, jt: &JetTable<T>) -> Vec<T> {
    let d = degree;
    let ctx = jt.ctx();
    let (v, rest) = jet.split_at(d + 1);
    let (n, t) = rest.split_at(d + 1);
    let mut out = vec![T::zero(ctx); jet_len(d)];
    for l in 0..=d {
        let mut ov = T::zero(ctx);
        let mut on = T::zero(ctx);
        let mut ot = T::zero(ctx);
        for m in l..=d {
            let i = m - l;
            ov = ov + &(v[m].clone() * &jt.alpha[i]);
            ov = ov + &(n[m].clone() * &jt.beta[i]);
            on = on + &(v[m].clone() * &jt.eta[i]);
            on = on + &(n[m].clone() * &jt.dn2[i]);
            ot = ot + &(t[m].clone() * &jt.t3[i]);
            let tang_sym = v[m].clone() * &jt.t1[i] + &(n[m].clone() * &jt.t2[i]);
            let anti_val = t[m].clone() * &jt.gamma[i];
            let anti_nrm = t[m].clone() * &jt.dn3[i];
            if sign >= 0 {
                ov = ov + &anti_val;
                on = on + &anti_nrm;
                ot = ot + &tang_sym;
            } else {
                ov = ov - &anti_val;
                on = on - &anti_nrm;
                ot = ot - &tang_sym;
            }
        }
        out[l] = ov;
        out[d + 1 + l] = on;
        out[2 * (d + 1) + l] = ot;
    }
    out
}

/// Jet of u o F_a at q_a from the jet of u at q_a.
pub fn scale_child<T: Num>(jet: &[T], degree: usize, jt: &JetTable<T>) -> Vec<T> {
    let d = degree;
    let ctx = jt.ctx();
    let fifth = T::from_ratio(ctx, 1, 5);
    let three_fifth = T::from_ratio(ctx, 3, 5);
    let mut out = Vec::with_capacity(jet_len(d));
    let mut pow = T::one(ctx);
    for m in 0..=d {
        out.push(jet[m].clone() * &pow);
        pow = pow * &fifth;
    }
    let mut pow = three_fifth;
    for m in 0..=d {
        out.push(jet[d + 1 + m].clone() * &pow);
        pow = pow * &fifth;
    }
    let mut pow = fifth.clone();
    for m in 0..=d {
        out.push(jet[2 * (d + 1) + m].clone() * &pow);
        pow = pow * &fifth;
    }
    out
}

/// Jet of u o F_c at q_c from the jet of u at q_a.
pub fn transfer<T: Num>(jet: &[T], degree: usize, a: u8, c: u8, jt: &JetTable<T>) -> Vec<T> {
    if a == c {
        return scale_child(jet, degree, jt);
    }
    let sign = if (3 + c - a) % 3 == 1 { 1 } else { -1 };
    let moved = change_base(jet, degree, sign, jt);
    scale_child(&moved, degree, jt)
}

/// u(q_c) from the jet of u at q_a.
pub fn value_at<T: Num>(jet: &[T], degree: usize, a: u8, c: u8, jt: &JetTable<T>) -> T {
    let d = degree;
    if a == c {
        return jet[0].clone();
    }
    let sign = if (3 + c - a) % 3 == 1 { 1 } else { -1 };
    let ctx = jt.ctx();
    let mut out = T::zero(ctx);
    for m in 0..=d {
        out = out + &(jet[m].clone() * &jt.alpha[m]);
        out = out + &(jet[d + 1 + m].clone() * &jt.beta[m]);
        let anti = jet[2 * (d + 1) + m].clone() * &jt.gamma[m];
        if sign >= 0 {
            out = out + &anti;
        } else {
            out = out - &anti;
        }
    }
    out
}

/// Jet at q_0 of a polynomial over the P3 basis rotated to `base`, or the
/// rho basis (base-independent).
pub fn root_jet<T: Num>(v: &MonomialVector<T>, base: u8, jt: &JetTable<T>) -> Vec<T> {
    let d = v.degree();
    let ctx = jt.ctx();
    let mut out = vec![T::zero(ctx); jet_len(d)];
    match v.basis {
        OpBasis::P3 => {
            for (l, c) in v.coeffs.iter().enumerate() {
                match base {
                    0 => {
                        out[2 * (d + 1) + l] = out[2 * (d + 1) + l].clone() + c;
                    }
                    b => {
                        // q_0 is the cyclic successor of q_2 and predecessor of q_1
                        let sign = if b == 2 { 1 } else { -1 };
                        for m in 0..=l {
                            let i = l - m;
                            let val = c.clone() * &jt.gamma[i];
                            let nrm = c.clone() * &jt.dn3[i];
                            let tan = c.clone() * &jt.t3[i];
                            if sign >= 0 {
                                out[m] = out[m].clone() + &val;
                                out[d + 1 + m] = out[d + 1 + m].clone() + &nrm;
                            } else {
                                out[m] = out[m].clone() - &val;
                                out[d + 1 + m] = out[d + 1 + m].clone() - &nrm;
                            }
                            out[2 * (d + 1) + m] = out[2 * (d + 1) + m].clone() + &tan;
                        }
                    }
                }
            }
        }
        OpBasis::Rho => {
            // rho_l = P_{l1}^{(0)} + P_{l1}^{(1)} + P_{l1}^{(2)}; the two
            // rotated copies form a mirror pair at q_0, so their tangential
            // parts cancel
            let two = T::from_i64(ctx, 2);
            for (l, c) in v.coeffs.iter().enumerate() {
                out[l] = out[l].clone() + c;
                for m in 0..=l {
                    let i = l - m;
                    out[m] = out[m].clone() + &(two.clone() * &(c.clone() * &jt.alpha[i]));
                    out[d + 1 + m] =
                        out[d + 1 + m].clone() + &(two.clone() * &(c.clone() * &jt.eta[i]));
                }
            }
        }
    }
    out
}

/// The three child-cell transfer maps at a fixed degree, materialized as
/// matrices acting on jets anchored at q_0 (columns are images of basis
/// jets). Map c sends the jet of u at q_0 to the jet of u o F_c at q_c.
pub fn jet_transfer_matrices<T: Num>(jt: &JetTable<T>, degree: usize) -> [Vec<Vec<T>>; 3] {
    let len = jet_len(degree);
    let ctx = jt.ctx();
    let mut maps: [Vec<Vec<T>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (c, map) in maps.iter_mut().enumerate() {
        let mut cols = Vec::with_capacity(len);
        for basis_idx in 0..len {
            let mut e = vec![T::zero(ctx); len];
            e[basis_idx] = T::one(ctx);
            cols.push(transfer(&e, degree, 0, c as u8, jt));
        }
        // store row-major for matrix-vector products
        let rows = (0..len)
            .map(|r| (0..len).map(|col| cols[col][r].clone()).collect())
            .collect();
        *map = rows;
    }
    maps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::JetTable;
    use rug::Rational;

    fn jt(n: usize) -> JetTable<Rational> {
        JetTable::compute(n, &())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn constant_jet_is_fixed_by_every_transfer() {
        let jt = jt(6);
        let d = 3usize;
        let mut jet = vec![Rational::new(); jet_len(d)];
        jet[0] = Rational::from(1);
        for c in 0..3u8 {
            let out = transfer(&jet, d, 0, c, &jt);
            assert_eq!(out, jet, "child {c}");
        }
    }

    #[test]
    fn value_monomial_contracts_by_five_per_degree() {
        // P_{j1} o F_0 = 5^{-j} P_{j1}: the q_0 jet is a delta at slot j
        let jt = jt(8);
        let d = 5usize;
        for j in 0..=d {
            let mut jet = vec![Rational::new(); jet_len(d)];
            jet[j] = Rational::from(1);
            let out = scale_child(&jet, d, &jt);
            let mut want = vec![Rational::new(); jet_len(d)];
            want[j] = q(1, 5i64.pow(j as u32));
            assert_eq!(out, want);
        }
    }

    #[test]
    fn change_base_reproduces_boundary_data() {
        let jt = jt(8);
        let d = 4usize;
        // jet of P_{d3} at q_0: tangential delta at slot d
        let mut jet = vec![Rational::new(); jet_len(d)];
        jet[2 * (d + 1) + d] = Rational::from(1);
        let at_q1 = change_base(&jet, d, 1, &jt);
        // value slots should read gamma_{d-m}
        for m in 0..=d {
            assert_eq!(at_q1[m], jt.gamma[d - m]);
            assert_eq!(at_q1[d + 1 + m], jt.dn3[d - m]);
            assert_eq!(at_q1[2 * (d + 1) + m], jt.t3[d - m]);
        }
        let at_q2 = change_base(&jet, d, -1, &jt);
        for m in 0..=d {
            assert_eq!(at_q2[m], -jt.gamma[d - m].clone());
            assert_eq!(at_q2[2 * (d + 1) + m], jt.t3[d - m]);
        }
    }

    #[test]
    fn matrices_match_functional_form() {
        let jt = jt(6);
        let d = 2usize;
        let maps = jet_transfer_matrices(&jt, d);
        let jet: Vec<Rational> = (0..jet_len(d)).map(|i| q(i as i64 + 1, 7)).collect();
        for c in 0..3u8 {
            let want = transfer(&jet, d, 0, c, &jt);
            let got: Vec<Rational> = maps[c as usize]
                .iter()
                .map(|row| {
                    let mut s = Rational::new();
                    for (x, r) in jet.iter().zip(row) {
                        s += Rational::from(x * r);
                    }
                    s
                })
                .collect();
            assert_eq!(got, want, "child {c}");
        }
    }
}
