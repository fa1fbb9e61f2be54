//! Command-line surface: every subcommand reads a system document,
//! runs one computation, and prints stable JSON (12 significant
//! digits). Exit codes: 0 success, 1 domain error, 2 usage error.

use crate::classify::classify;
use crate::cone;
use crate::doc::{build, parse_system};
use crate::dominance;
use crate::error::{Error, Result};
use crate::limits;
use crate::projective::{normalize, TransverseForm};
use crate::render::{render_svg, Layers, RenderSpec};
use crate::scalar::{grid_key, round_sig, Scalar, Vector};
use crate::system::{enumerate_roots, validate_simple_system, RootSystem};
use crate::universal;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "limit-roots", version, about = "Limit roots of infinite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the simple-system axioms and report diagnostics.
    Validate { file: PathBuf },
    /// Type classification (finite/affine/indefinite, hyperbolicity).
    Classify { file: PathBuf },
    /// Enumerate positive roots with the root-poset edges.
    Roots {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
    /// Limit roots of dihedral reflection subgroups.
    Limits {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
    /// The elementary (dominance-minimal) roots.
    Elementary { file: PathBuf },
    /// Does the first root dominate the second?
    Dominance {
        file: PathBuf,
        /// Candidate dominated root, comma-separated coordinates.
        rho: String,
        /// Candidate dominating root, comma-separated coordinates.
        gamma: String,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
    },
    /// Vertices and half-spaces of the imaginary cone slice K.
    Cone {
        file: PathBuf,
        /// Also assign this normalized point to Z or a horn region.
        #[arg(long)]
        point: Option<String>,
    },
    /// Facial index subsets of conv of the normalized simples.
    Faces { file: PathBuf },
    /// Facial subsets generating limit roots (affine or hyperbolic).
    Gen { file: PathBuf },
    /// Sample of the fractal base set, spread by short words.
    Fractal {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        word_length: usize,
        #[arg(long = "N", default_value_t = 24)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Condense a generic universal subsystem below a product bound.
    Condense {
        file: PathBuf,
        #[arg(long = "N", default_value_t = 2.0)]
        n: f64,
    },
    /// Approximation ladder toward the limit-root set.
    Approx {
        file: PathBuf,
        /// Number of rungs (bounds 1, 100, 10^4, ...).
        #[arg(long = "N", default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long, default_value_t = 4)]
        word_length: usize,
    },
    /// Orbit of K under words up to a given length.
    Orbit {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        word_length: usize,
    },
    /// Faithfulness and facial-restriction checks.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        word_length: usize,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        /// Minimal displacement that counts as a faithfulness witness.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Render the normalized picture to SVG.
    Render {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        /// Also draw the K-orbit polygons up to this word length.
        #[arg(long)]
        word_length: Option<usize>,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(file: &PathBuf) -> Result<(RootSystem, TransverseForm)> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(e.to_string()))?;
    build(&parse_system(&text)?)
}

fn parse_coords(s: &str, n: usize) -> Result<Vector> {
    let coords: Vec<Scalar> = s
        .split(',')
        .map(|c| {
            let c = c.trim();
            Scalar::parse_ratio(c)
                .or_else(|| c.parse::<f64>().ok().map(Scalar::Float))
                .ok_or_else(|| Error::Parse(format!("bad coordinate {c:?}")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} coordinates, got {}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn jnum(x: f64) -> Value {
    json!(round_sig(x))
}

fn jvec(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| jnum(x.to_f64())).collect())
}

fn run(cli: Cli) -> Result<Option<String>> {
    let out = match cli.cmd {
        Cmd::Validate { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Parse(e.to_string()))?;
            let doc = parse_system(&text)?;
            let gram = crate::gram::GramMatrix::new(doc.gram.clone())?;
            let diag = validate_simple_system(&gram, &doc.relations);
            let mut v = serde_json::to_value(&diag).expect("serializable");
            if diag.ok {
                let (sys, _) = build(&doc)?;
                v["rank"] = json!(sys.rank());
                v["ambient_dim"] = json!(sys.ambient_dim());
                v["exact"] = json!(sys.is_exact());
            }
            v
        }
        Cmd::Classify { file } => {
            let (sys, _) = load(&file)?;
            serde_json::to_value(classify(&sys)).expect("serializable")
        }
        Cmd::Roots { file, max_depth } => {
            let (sys, _) = load(&file)?;
            let (roots, edges) = enumerate_roots(&sys, max_depth);
            json!({
                "max_depth": max_depth,
                "count": roots.len(),
                "roots": roots.iter().map(|r| json!({
                    "coords": jvec(&r.coords),
                    "depth": r.depth,
                    "witness": r.witness,
                })).collect::<Vec<_>>(),
                "edges": edges.iter().map(|e| json!({
                    "from": e.from,
                    "to": e.to,
                    "simple": e.simple,
                    "kind": e.kind,
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Limits { file, max_depth } => {
            let (sys, form) = load(&file)?;
            limits::dihedral_limit_roots(&sys, &form, max_depth)?.to_json()
        }
        Cmd::Elementary { file } => {
            let (sys, _) = load(&file)?;
            let sigma = dominance::elementary_roots(&sys, 64)?;
            json!({
                "count": sigma.len(),
                "roots": sigma.iter().map(|r| jvec(r)).collect::<Vec<_>>(),
            })
        }
        Cmd::Dominance {
            file,
            rho,
            gamma,
            max_depth,
        } => {
            let (sys, _) = load(&file)?;
            let rho = parse_coords(&rho, sys.rank())?;
            let gamma = parse_coords(&gamma, sys.rank())?;
            let all = dominance::signed_roots(&sys, max_depth);
            let find = |v: &Vector| {
                all.iter()
                    .find(|r| grid_key(&r.coords) == grid_key(v))
                    .cloned()
                    .ok_or_else(|| {
                        Error::Axiom(format!(
                            "not a root of depth <= {max_depth}: {:?}",
                            v.iter().map(Scalar::to_f64).collect::<Vec<_>>()
                        ))
                    })
            };
            let r = find(&rho)?;
            let g = find(&gamma)?;
            json!({
                "rho": jvec(&r.coords),
                "gamma": jvec(&g.coords),
                "dominates": dominance::dominates(&sys, &r, &g),
            })
        }
        Cmd::Cone { file, point } => {
            let (sys, form) = load(&file)?;
            let k = cone::cone_k_vertices(&sys, &form)?;
            let mut v = json!({
                "vertices": k.vertices.iter().map(|p| jvec(p)).collect::<Vec<_>>(),
                "halfspaces": k.halfspaces.iter().map(|(n, b)| json!({
                    "normal": n.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
                    "offset": jnum(*b),
                })).collect::<Vec<_>>(),
            });
            if let Some(p) = point {
                let p = parse_coords(&p, sys.ambient_dim())?;
                let p = normalize(&form, &p)?;
                let region = cone::decomposition_assign(&sys, &form, &p)?;
                v["region"] = json!(region.tag(&sys));
            }
            v
        }
        Cmd::Faces { file } => {
            let (sys, _) = load(&file)?;
            json!({ "facial_subsets": cone::facial_subsets(&sys) })
        }
        Cmd::Gen { file } => {
            let (sys, _) = load(&file)?;
            json!({ "generating_subsets": cone::generating_subsets(&sys) })
        }
        Cmd::Fractal {
            file,
            word_length,
            n,
            seed,
        } => {
            let (sys, form) = load(&file)?;
            cone::fractal_base_sample_seeded(&sys, &form, n, word_length, seed)?.to_json()
        }
        Cmd::Condense { file, n } => {
            let (sys, _) = load(&file)?;
            let roots = universal::generic_universal_subsystem(&sys, n, sys.ambient_dim())?;
            let products: Vec<Vec<Value>> = roots
                .iter()
                .map(|a| {
                    roots
                        .iter()
                        .map(|b| jnum(sys.pairing(a, b).to_f64()))
                        .collect()
                })
                .collect();
            json!({
                "n_bound": jnum(n),
                "size": roots.len(),
                "roots": roots.iter().map(|r| jvec(r)).collect::<Vec<_>>(),
                "products": products,
            })
        }
        Cmd::Approx {
            file,
            n,
            max_depth,
            word_length,
        } => {
            let (sys, form) = load(&file)?;
            let ladder: Vec<f64> = (0..n as u32).map(|k| 100f64.powi(k as i32)).collect();
            let rungs = universal::approximation_report(&sys, &form, &ladder, max_depth, word_length)?;
            json!({
                "rungs": rungs.iter().map(|r| json!({
                    "n_bound": jnum(r.n_bound),
                    "size": r.size,
                    "directed": jnum(r.directed),
                    "hull_hausdorff": jnum(r.hull_hausdorff),
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Orbit { file, word_length } => {
            let (sys, form) = load(&file)?;
            let orbit = cone::imaginary_orbit(&sys, &form, word_length)?;
            json!({
                "cloud": orbit.cloud.to_json(),
                "polytopes": orbit.polytopes.iter().map(|(w, verts)| json!({
                    "word": w,
                    "vertices": verts.iter().map(|v| jvec(v)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Check {
            file,
            word_length,
            max_depth,
            tolerance,
        } => {
            let (sys, form) = load(&file)?;
            let report = limits::faithfulness_check(&sys, &form, word_length, max_depth)?;
            let mut witnessed = Vec::new();
            let mut unfalsified: Vec<Vec<usize>> = report.unfalsified.clone();
            for w in &report.witnessed {
                if w.displacement > tolerance {
                    witnessed.push(json!({
                        "word": w.word,
                        "witness": w.witness.iter().map(|&x| jnum(x)).collect::<Vec<_>>(),
                        "displacement": jnum(w.displacement),
                    }));
                } else {
                    unfalsified.push(w.word.clone());
                }
            }
            unfalsified.sort();
            let mut facial = Vec::new();
            for f in cone::facial_subsets(&sys) {
                if f.indices.is_empty() || f.indices.len() >= sys.rank() {
                    continue;
                }
                let r = dominance::facial_restriction_check(&sys, &form, &f.indices, max_depth)?;
                facial.push(json!({
                    "indices": f.indices,
                    "sigma_ok": r.sigma_ok,
                    "e2_ok": r.e2_ok,
                    "violations": r.violations,
                }));
            }
            json!({
                "faithfulness": {
                    "checked": report.checked,
                    "witnessed": witnessed,
                    "unfalsified": unfalsified,
                },
                "facial_restriction": facial,
            })
        }
        Cmd::Render {
            file,
            max_depth,
            word_length,
            out,
        } => {
            let (sys, form) = load(&file)?;
            let (roots, _) = enumerate_roots(&sys, max_depth);
            let mut layers = Layers {
                qhat: true,
                delta_edges: true,
                ..Default::default()
            };
            for r in &roots {
                layers
                    .roots
                    .push((normalize(&form, &sys.ambient_of(&r.coords))?, r.depth));
            }
            match word_length {
                Some(l) => {
                    layers.polygons = cone::imaginary_orbit(&sys, &form, l)?.polytopes;
                }
                None => {
                    if let Ok(k) = cone::cone_k_vertices(&sys, &form) {
                        layers.polygons = vec![(vec![], k.vertices)];
                    }
                }
            }
            let svg = render_svg(&sys, &form, &layers, &RenderSpec::default())?;
            return match out {
                Some(path) => {
                    std::fs::write(&path, &svg).map_err(|e| Error::Parse(e.to_string()))?;
                    Ok(None)
                }
                None => Ok(Some(svg)),
            };
        }
    };
    Ok(Some(
        serde_json::to_string_pretty(&out).expect("serializable"),
    ))
}

/// Entry point; returns the process exit code.
pub fn main_from_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(Some(text)) => {
            use std::io::Write as _;
            // tolerate a closed pipe (e.g. piping into head)
            let _ = writeln!(std::io::stdout(), "{text}");
            0
        }
        Ok(None) => 0,
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": e.code(), "message": e.to_string() })
            );
            1
        }
    }
}
