//! Command-line front end: sequence tables, Green's-operator trace reports,
//! family builds with dual-route verification, plots, and nodal analysis.
//! Exit status 0 means every internal cross-check passed.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use sgop::rug::{Float, Rational};
use sgop::decimation;
use sgop::export;
use sgop::inner::gram;
use sgop::jacobi;
use sgop::jets::JetTable;
use sgop::mesh::{self, Edge};
use sgop::numeric::{Num, NumericMode, PrecisionConfig};
use sgop::ortho::{self, MonomialVector, OpBasis, OpFamily};
use sgop::plot::{self, PlotKind, PlotSpec};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "sgop", version, about = "orthogonal polynomials on the Sierpinski gasket")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct NumArgs {
    /// arithmetic mode: rational | float
    #[arg(long, default_value = "rational")]
    mode: String,
    /// float precision in bits (float mode)
    #[arg(long, default_value_t = 512)]
    bits: u32,
    /// significant digits for decimal serialization
    #[arg(long, default_value_t = 17)]
    digits: usize,
}

impl NumArgs {
    fn config(&self) -> anyhow::Result<PrecisionConfig> {
        let mode = NumericMode::from_str(&self.mode)?;
        let cfg = PrecisionConfig {
            mode,
            bits: self.bits,
            emit_digits: self.digits,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the boundary-jet sequence table as CSV
    Sequences {
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        #[command(flatten)]
        num: NumArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the Green's-operator trace constants across routes (JSON)
    Green {
        #[arg(long, default_value_t = 40)]
        max_generation: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build an orthogonal family by both routes and emit tables + JSON
    Build {
        /// a3 | sym | combined
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[command(flatten)]
        num: NumArgs,
        /// output prefix; writes <prefix>.json and <prefix>.table.csv
        #[arg(long)]
        out: PathBuf,
    },
    /// Render SVG plots
    Plot {
        /// surface | edge | nodal | coeff-series | jacobi-det
        #[arg(long)]
        kind: String,
        /// a3 | sym | combined
        #[arg(long, default_value = "a3")]
        family: String,
        /// polynomial degree for surface/edge/nodal plots
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// series length for coeff-series/jacobi-det
        #[arg(long, default_value_t = 50)]
        max_degree: usize,
        /// mesh level
        #[arg(long, default_value_t = 7)]
        level: usize,
        /// bottom | side0 | side1 (edge plots)
        #[arg(long, default_value = "bottom")]
        edge: String,
        /// base point for rotated antisymmetric/combined plots
        #[arg(long, default_value_t = 0)]
        base: u8,
        #[command(flatten)]
        num: NumArgs,
        #[arg(long)]
        out: PathBuf,
        /// also write the plotted data next to the SVG
        #[arg(long)]
        emit_csv: bool,
    },
    /// Nodal-domain counts and labeling
    Nodal {
        /// a3 | sym
        #[arg(long, default_value = "a3")]
        family: String,
        #[arg(long, default_value_t = 19)]
        max_degree: usize,
        #[arg(long, default_value_t = 7)]
        level: usize,
        #[command(flatten)]
        num: NumArgs,
        /// output prefix; writes <prefix>.counts.csv, <prefix>.labels.csv, <prefix>.svg
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_basis(family: &str) -> anyhow::Result<OpBasis> {
    match family {
        "a3" => Ok(OpBasis::P3),
        "sym" => Ok(OpBasis::Rho),
        other => bail!("unknown family `{other}` (expected a3 | sym | combined)"),
    }
}

fn write(path: &Path, content: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().cmd {
        Cmd::Sequences {
            max_degree,
            num,
            out,
        } => {
            let cfg = num.config()?;
            let csv = match cfg.mode {
                NumericMode::Rational => JetTable::<Rational>::compute(max_degree, &()).to_csv(),
                NumericMode::Float => JetTable::<Float>::compute(max_degree, &cfg.bits).to_csv(),
            };
            write(&out, &csv)?;
            eprintln!("sequences: wrote {}", out.display());
        }
        Cmd::Green {
            max_generation,
            out,
        } => {
            let trace = decimation::green_trace(max_generation);
            let hs = decimation::green_l2_norm_sq(max_generation);
            let tol = Rational::from((1, 10_000_000_000i64));
            let dto = export::green_json(&trace, &hs, &tol);
            write(&out, &serde_json::to_string_pretty(&dto)?)?;
            eprintln!("green: wrote {}", out.display());
            if !trace.routes_agree(&tol) || !hs.routes_agree(&tol) {
                bail!("green operator routes disagree");
            }
            trace
                .verify(&tol)
                .context("trace identity failed against its target")?;
            if hs.verify(&tol).is_err() {
                eprintln!(
                    "note: hs_norm_sq routes agree at {} but the published target {} differs; see abs_error in the report",
                    hs.recursion_estimate, hs.target
                );
            }
        }
        Cmd::Build {
            family,
            max_degree,
            num,
            out,
        } => {
            let cfg = num.config()?;
            let families: Vec<OpBasis> = match family.as_str() {
                "combined" => vec![OpBasis::P3, OpBasis::Rho],
                other => vec![parse_basis(other)?],
            };
            match cfg.mode {
                NumericMode::Rational => {
                    build_cmd::<Rational>(&(), &families, &family, max_degree, &cfg, &out)?
                }
                NumericMode::Float => {
                    build_cmd::<Float>(&cfg.bits, &families, &family, max_degree, &cfg, &out)?
                }
            }
        }
        Cmd::Plot {
            kind,
            family,
            degree,
            max_degree,
            level,
            edge,
            base,
            num,
            out,
            emit_csv,
        } => {
            let cfg = num.config()?;
            let kind = PlotKind::from_str(&kind)?;
            match kind {
                PlotKind::CoeffSeries | PlotKind::JacobiDet => {
                    // coefficient series always run in float mode
                    plot_series(&family, max_degree, cfg.bits.max(512), kind, &out)?;
                }
                _ => match cfg.mode {
                    NumericMode::Rational => plot_mesh::<Rational>(
                        &(),
                        kind,
                        &family,
                        degree,
                        level,
                        &edge,
                        base,
                        &out,
                        emit_csv,
                        false,
                    )?,
                    NumericMode::Float => plot_mesh::<Float>(
                        &cfg.bits,
                        kind,
                        &family,
                        degree,
                        level,
                        &edge,
                        base,
                        &out,
                        emit_csv,
                        true,
                    )?,
                },
            }
            eprintln!("plot: wrote {}", out.display());
        }
        Cmd::Nodal {
            family,
            max_degree,
            level,
            num,
            out,
        } => {
            let cfg = num.config()?;
            let basis = parse_basis(&family)?;
            // nodal classification runs in float with the dead-zone rule so
            // symmetry-forced zeros are honored deterministically
            let bits = if cfg.mode == NumericMode::Float { cfg.bits } else { 512 };
            nodal_cmd(basis, &family, max_degree, level, bits, &out)?;
        }
    }
    Ok(())
}

fn build_cmd<T: Num>(
    ctx: &T::Ctx,
    families: &[OpBasis],
    label: &str,
    n: usize,
    cfg: &PrecisionConfig,
    out: &Path,
) -> anyhow::Result<()> {
    let jt: JetTable<T> = JetTable::compute(2 * n + 2, ctx);
    for basis in families {
        let (gs, _tt) = ortho::build_checked(*basis, n, &jt)?;
        let suffix = match basis {
            OpBasis::P3 => "a3",
            OpBasis::Rho => "sym",
        };
        let stem = if families.len() == 1 {
            out.to_path_buf()
        } else {
            out.with_file_name(format!(
                "{}_{suffix}",
                out.file_name().unwrap_or_default().to_string_lossy()
            ))
        };
        let json = export::family_json(&gs, cfg.emit_digits);
        write(&stem.with_extension("json"), &serde_json::to_string_pretty(&json)?)?;
        write(&stem.with_extension("table.csv"), &export::coefficient_table_csv(&gs))?;
        eprintln!(
            "build[{suffix}]: dual-route agreement verified to degree {n}; wrote {}.json and {}.table.csv",
            stem.display(),
            stem.display()
        );
    }
    if label == "combined" {
        let check = jacobi::combined_onb(n.min(8), &jt)?;
        if !check.identity_ok {
            bail!("combined system failed orthonormality: {:?}", check.failures);
        }
        eprintln!(
            "build[combined]: orthonormal system verified to degree {}",
            n.min(8)
        );
    }
    Ok(())
}

fn family_label(basis: OpBasis) -> &'static str {
    match basis {
        OpBasis::P3 => "Q",
        OpBasis::Rho => "S",
    }
}

/// Orthonormal element in float mode, monic element in rational mode (the
/// normalization is irrational; sign structure and symmetry are unchanged).
fn plot_vector<T: Num>(
    fam: &OpFamily<T>,
    j: usize,
    normalized: bool,
) -> anyhow::Result<MonomialVector<T>> {
    if normalized {
        Ok(fam.orthonormal(j)?)
    } else {
        Ok(fam.monic(j))
    }
}

#[allow(clippy::too_many_arguments)]
fn plot_mesh<T: Num>(
    ctx: &T::Ctx,
    kind: PlotKind,
    family: &str,
    degree: usize,
    level: usize,
    edge: &str,
    base: u8,
    out: &Path,
    emit_csv: bool,
    normalized: bool,
) -> anyhow::Result<()> {
    let jt: JetTable<T> = JetTable::compute(2 * degree + 2, ctx);
    let (values, label) = if family == "combined" {
        if !normalized {
            bail!("combined plots need float mode (irrational normalization)");
        }
        let (anti, _) = ortho::build_checked(OpBasis::P3, degree, &jt)?;
        let (sym, _) = ortho::build_checked(OpBasis::Rho, degree, &jt)?;
        let q = anti.orthonormal(degree)?;
        let s = sym.orthonormal(degree)?;
        let mq = mesh::evaluate_exact(&q, base, level, &jt)?;
        let ms = mesh::evaluate_exact(&s, 0, level, &jt)?;
        let w_anti = T::from_ratio(ctx, 2, 3).sqrt()?;
        let w_sym = T::from_ratio(ctx, 1, 3).sqrt()?;
        let vals: Vec<T> = mq
            .values
            .iter()
            .zip(&ms.values)
            .map(|(a, b)| w_anti.clone() * a + &(w_sym.clone() * b))
            .collect();
        (
            mesh::MeshValues {
                level,
                provenance: mesh::Provenance::ExactJet,
                topology: mq.topology.clone(),
                values: vals,
            },
            format!("phi_{degree}({base})"),
        )
    } else {
        let basis = parse_basis(family)?;
        let (fam, _) = ortho::build_checked(basis, degree, &jt)?;
        let v = plot_vector(&fam, degree, normalized)?;
        let b = if basis == OpBasis::P3 { base } else { 0 };
        (
            mesh::evaluate_exact(&v, b, level, &jt)?,
            format!("{}_{degree}", family_label(basis)),
        )
    };

    match kind {
        PlotKind::Surface => {
            let spec = PlotSpec::new(kind, format!("{label} on level-{level} mesh"));
            let svg = plot::surface_svg(&spec, &values.topology, &values.to_f64())?;
            write(out, &svg)?;
            if emit_csv {
                write(&out.with_extension("csv"), &export::mesh_csv(&values))?;
            }
        }
        PlotKind::Edge => {
            let e = Edge::from_str(edge)?;
            let series = mesh::edge_restriction(&values, e);
            let pts: Vec<(f64, f64)> = series.iter().map(|(t, v)| (*t, v.to_f64())).collect();
            let spec = PlotSpec::new(kind, format!("{label} on {edge} edge"));
            let svg = plot::line_svg(&spec, &pts, "value")?;
            write(out, &svg)?;
            if emit_csv {
                write(&out.with_extension("csv"), &export::edge_csv(&series))?;
            }
        }
        PlotKind::Nodal => {
            let signs = values.signs();
            let domains = mesh::nodal_domains(&values);
            let spec = PlotSpec::new(kind, format!("nodal domains of {label}"));
            let svg = plot::nodal_svg(&spec, &values.topology, &signs, &domains)?;
            write(out, &svg)?;
        }
        _ => unreachable!(),
    }
    Ok(())
}

fn plot_series(
    family: &str,
    n: usize,
    bits: u32,
    kind: PlotKind,
    out: &Path,
) -> anyhow::Result<()> {
    let basis = parse_basis(if family == "combined" { "a3" } else { family })?;
    let jt: JetTable<Float> = JetTable::compute(2 * n + 2, &bits);
    let g = gram(basis.gram_basis(), n, &jt);
    let fam = ortho::three_term(basis, n, &g, &jt)?;
    match kind {
        PlotKind::CoeffSeries => {
            let dk2: Vec<(f64, f64)> = (0..=n)
                .map(|k| (k as f64, -fam.d_inv_sq[k].log10_abs()))
                .collect();
            let bk: Vec<(f64, f64)> = (0..n).map(|k| (k as f64, fam.b[k].log10_abs())).collect();
            let ck: Vec<(f64, f64)> = (1..=n)
                .map(|k| (k as f64, fam.c_k(k).log10_abs()))
                .collect();
            let spec = PlotSpec::new(
                kind,
                format!("{family}: log10 d_k^2, log10(-b_k), log10 c_k"),
            );
            let svg = plot::multi_line_svg(
                &spec,
                &[
                    ("log10 d_k^2", &dk2),
                    ("log10 -b_k", &bk),
                    ("log10 c_k", &ck),
                ],
            )?;
            write(out, &svg)?;
        }
        PlotKind::JacobiDet => {
            let j = jacobi::jacobi(&fam, n)?;
            let series: Vec<(f64, f64)> = j
                .det_direct
                .iter()
                .enumerate()
                .map(|(i, d)| ((i + 1) as f64, d.log10_abs()))
                .collect();
            let spec = PlotSpec::new(kind, format!("{family}: log10 |det J_k|"));
            let svg = plot::line_svg(&spec, &series, "log10 |D_k|")?;
            write(out, &svg)?;
        }
        _ => unreachable!(),
    }
    Ok(())
}

fn nodal_cmd(
    basis: OpBasis,
    family: &str,
    max_degree: usize,
    level: usize,
    bits: u32,
    out: &Path,
) -> anyhow::Result<()> {
    let jt: JetTable<Float> = JetTable::compute(2 * max_degree + 2, &bits);
    let (fam, _) = ortho::build_checked(basis, max_degree, &jt)?;
    let mut rows = Vec::new();
    let mut last = None;
    for k in 0..=max_degree {
        let qk = fam.orthonormal(k)?;
        let mv = mesh::evaluate_exact(&qk, 0, level, &jt)?;
        let nd = mesh::nodal_domains(&mv);
        rows.push((family.to_string(), k, nd.count));
        last = Some((mv, nd));
    }
    write(
        &out.with_extension("counts.csv"),
        &export::nodal_counts_csv(&rows),
    )?;
    let (mv, nd) = last.expect("at least one degree");
    let mut labels_csv = String::from("word,corner,label\n");
    for (i, addr) in mv.topology.vertices.iter().enumerate() {
        let word: String = addr.word.iter().map(|l| char::from(b'0' + l)).collect();
        labels_csv.push_str(&format!(
            "{},{},{}\n",
            if word.is_empty() { "-".to_string() } else { word },
            addr.corner,
            nd.labels[i]
        ));
    }
    write(&out.with_extension("labels.csv"), &labels_csv)?;
    let spec = PlotSpec::new(
        PlotKind::Nodal,
        format!("nodal domains of {}_{max_degree}", family_label(basis)),
    );
    let svg = plot::nodal_svg(&spec, &mv.topology, &mv.signs(), &nd)?;
    write(&out.with_extension("svg"), &svg)?;
    eprintln!(
        "nodal: wrote {0}.counts.csv, {0}.labels.csv, {0}.svg",
        out.display()
    );
    Ok(())
}
