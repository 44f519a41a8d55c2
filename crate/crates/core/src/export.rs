//! Serialization of family builds, trace comparisons, frame analyses, and
//! table reproductions (CSV in the published 3-significant-digit layout,
//! JSON with canonical scalar text).

use crate::decimation::GreenComparison;
use crate::inner::{frame_bound, frame_gram};
use crate::jets::JetTable;
use crate::numeric::{sci_string, Num};
use crate::ortho::OpFamily;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct FamilyJson {
    pub family: String,
    pub mode: String,
    pub bits: Option<u32>,
    pub n: usize,
    pub omega: Vec<Vec<String>>,
    pub d_inv_sq: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub omega_decimal: Vec<Vec<String>>,
}

pub fn family_json<T: Num>(fam: &OpFamily<T>, emit_digits: usize) -> FamilyJson {
    let canon = |v: &T| v.canonical_string();
    let bits = fam.d_inv_sq[0].precision_bits();
    FamilyJson {
        family: fam.basis.label().to_string(),
        mode: if bits.is_none() { "rational" } else { "float" }.to_string(),
        bits,
        n: fam.n,
        omega: fam.omega.iter().map(|row| row.iter().map(canon).collect()).collect(),
        d_inv_sq: fam.d_inv_sq.iter().map(canon).collect(),
        b: fam.b.iter().map(canon).collect(),
        c: fam.c.iter().map(canon).collect(),
        omega_decimal: fam
            .omega
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| sci_string(&v.to_rational(), emit_digits))
                    .collect()
            })
            .collect(),
    }
}

/// Coefficient table in the published layout: one row per polynomial, one
/// column per monomial, three significant digits.
pub fn coefficient_table_csv<T: Num>(fam: &OpFamily<T>) -> String {
    let head = match fam.basis {
        crate::ortho::OpBasis::P3 => "P",
        crate::ortho::OpBasis::Rho => "rho",
    };
    let mut out = String::from("poly");
    for l in 0..=fam.n {
        out.push_str(&format!(",{head}{l}"));
    }
    out.push('\n');
    for (j, row) in fam.omega.iter().enumerate() {
        out.push_str(&format!("p{j}"));
        for l in 0..=fam.n {
            out.push(',');
            if l < row.len() {
                out.push_str(&sci_string(&row[l].to_rational(), 3));
            } else {
                out.push('0');
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
pub struct GreenEntryJson {
    pub target: String,
    pub recursion_partial: String,
    pub recursion_estimate: String,
    pub enumeration_partial: String,
    pub enumeration_estimate: String,
    pub abs_error: String,
    pub routes_agree: bool,
}

#[derive(Debug, Serialize)]
pub struct GreenJson {
    pub generation: u32,
    pub trace: GreenEntryJson,
    pub hs_norm_sq: GreenEntryJson,
    pub sup_norm_constant: String,
}

pub fn green_json(trace: &GreenComparison, hs: &GreenComparison, tol: &rug::Rational) -> GreenJson {
    let entry = |c: &GreenComparison| GreenEntryJson {
        target: c.target.to_string(),
        recursion_partial: c.recursion_partial.to_string(),
        recursion_estimate: c.recursion_estimate.to_string(),
        enumeration_partial: c.enumeration_partial.to_string(),
        enumeration_estimate: c.enumeration_estimate.to_string(),
        abs_error: format!("{:.3e}", c.max_abs_error().to_f64()),
        routes_agree: c.routes_agree(tol),
    };
    GreenJson {
        generation: trace.generation,
        trace: entry(trace),
        hs_norm_sq: entry(hs),
        sup_norm_constant: crate::decimation::green_sup_norm().to_string(),
    }
}

#[derive(Debug, Serialize)]
pub struct FrameJson {
    pub degree: usize,
    pub a: String,
    pub eigenvalues: [String; 3],
    pub bound: String,
}

pub fn frame_json<T: Num>(j: usize, jt: &JetTable<T>) -> FrameJson {
    let g = frame_gram(j, jt);
    let a = g.entries[0][0].canonical_string();
    let bound = frame_bound(j, jt);
    FrameJson {
        degree: j,
        a,
        eigenvalues: [
            "0".to_string(),
            bound.canonical_string(),
            bound.canonical_string(),
        ],
        bound: bound.canonical_string(),
    }
}

/// Per-generation accumulator CSV.
pub fn trace_csv(accs: &[crate::decimation::TraceAccumulators]) -> String {
    let mut out = String::from("m,a,b,c\n");
    for t in accs {
        out.push_str(&format!("{},{},{},{}\n", t.m, t.a, t.b, t.c));
    }
    out
}

/// Edge series CSV: parameter, value.
pub fn edge_csv<T: Num>(series: &[(f64, T)]) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in series {
        out.push_str(&format!("{t},{}\n", v.canonical_string()));
    }
    out
}

/// Mesh CSV: canonical address word, corner, planar coordinates, value.
pub fn mesh_csv<T: Num>(mv: &crate::mesh::MeshValues<T>) -> String {
    let mut out = String::from("word,corner,x,y,value\n");
    for (i, addr) in mv.topology.vertices.iter().enumerate() {
        let (x, y) = addr.coords();
        let word: String = addr.word.iter().map(|l| char::from(b'0' + l)).collect();
        out.push_str(&format!(
            "{},{},{x:.12},{y:.12},{}\n",
            if word.is_empty() { "-".to_string() } else { word },
            addr.corner,
            mv.values[i].canonical_string()
        ));
    }
    out
}

/// Nodal counts CSV: degree, domain count per family label.
pub fn nodal_counts_csv(rows: &[(String, usize, usize)]) -> String {
    let mut out = String::from("family,degree,domains\n");
    for (family, degree, nu) in rows {
        out.push_str(&format!("{family},{degree},{nu}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::gram;
    use crate::jets::JetTable;
    use crate::ortho::{gram_schmidt, OpBasis};
    use rug::Rational;

    #[test]
    fn table_layout_matches_published_rows() {
        let jt: JetTable<Rational> = JetTable::compute(16, &());
        let g = gram(crate::inner::GramBasis::P3, 6, &jt);
        let fam = gram_schmidt(OpBasis::P3, 6, &g, &jt).unwrap();
        let csv = coefficient_table_csv(&fam);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "poly,P0,P1,P2,P3,P4,P5,P6");
        assert_eq!(lines[1], "p0,1,0,0,0,0,0,0");
        assert!(lines[2].starts_with("p1,-2.04E-02,1,0"));
    }

    #[test]
    fn family_json_roundtrips_scalars() {
        let jt: JetTable<Rational> = JetTable::compute(10, &());
        let g = gram(crate::inner::GramBasis::P3, 3, &jt);
        let fam = gram_schmidt(OpBasis::P3, 3, &g, &jt).unwrap();
        let dto = family_json(&fam, 6);
        assert_eq!(dto.mode, "rational");
        assert_eq!(dto.omega[1][0], "-11/540");
        let text = serde_json::to_string_pretty(&dto).unwrap();
        assert!(text.contains("-11/540"));
    }

    #[test]
    fn green_json_fields() {
        let tr = crate::decimation::green_trace(12);
        let hs = crate::decimation::green_l2_norm_sq(12);
        let dto = green_json(&tr, &hs, &Rational::from((1, 1_000_000_000)));
        assert_eq!(dto.trace.target, "1/6");
        assert_eq!(dto.hs_norm_sq.target, "45389/3564000");
        assert!(dto.trace.routes_agree);
        assert!(dto.hs_norm_sq.routes_agree);
        let text = serde_json::to_string(&dto).unwrap();
        assert!(text.contains("45389/3564000"));
    }
}
