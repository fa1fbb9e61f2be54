//! Deterministic SVG rendering of the normalized picture: Q-hat, roots
//! colored by depth, conv of the normalized simples, K and its
//! translates, and limit-point clouds. Rank 3 projects barycentrically
//! onto a fixed triangle; rank 4 through a fixed orthographic camera.

use crate::error::{Error, Result};
use crate::projective::TransverseForm;
use crate::scalar::{vec_to_f64, Scalar, Vector};
use crate::system::RootSystem;
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 600,
            height: 600,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Layers {
    /// Sample and draw the normalized isotropic cone.
    pub qhat: bool,
    /// Normalized roots (ambient coordinates) with their depths.
    pub roots: Vec<(Vector, usize)>,
    /// Edges of conv of the normalized simple roots.
    pub delta_edges: bool,
    /// Filled polygons (w, vertices of w.K), ambient coordinates.
    pub polygons: Vec<(Vec<usize>, Vec<Vector>)>,
    /// Limit-point clouds (ambient coordinates).
    pub clouds: Vec<Vector>,
}

/// Points on the normalized isotropic cone, in cyclic order, by ray
/// shooting from an interior point. Ambient dimension 3 only; the
/// caller decides how many segments.
pub fn qhat_samples(system: &RootSystem, form: &TransverseForm, n: usize) -> Result<Vec<Vector>> {
    let d = system.ambient_dim();
    if d != 3 {
        return Err(Error::UnsupportedRank(system.rank()));
    }
    let b: Vec<Vec<f64>> = system
        .form()
        .iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    let pair = |u: &[f64], v: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += u[i] * b[i][j] * v[j];
            }
        }
        acc
    };
    let z = crate::gram::perron_weight(system.gram())?;
    let z_amb = vec_to_f64(&system.ambient_of(
        &z.iter().map(|&x| Scalar::Float(x)).collect::<Vec<_>>(),
    ));
    let phi: Vec<f64> = form.coefficients.iter().map(Scalar::to_f64).collect();
    let pz: f64 = phi.iter().zip(&z_amb).map(|(a, b)| a * b).sum();
    if pz.abs() < 1e-12 {
        return Err(Error::OnDirectionHyperplane);
    }
    let center: Vec<f64> = z_amb.iter().map(|x| x / pz).collect();
    if pair(&center, &center) >= 0.0 {
        return Err(Error::NotWeaklyHyperbolic);
    }
    // Euclidean-orthonormal basis of the direction plane {phi = 0}.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let phi_norm2: f64 = phi.iter().map(|x| x * x).sum();
    for i in 0..d {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        let dot: f64 = phi[i] / phi_norm2;
        for k in 0..d {
            v[k] -= dot * phi[k];
        }
        for bv in &basis {
            let p: f64 = v.iter().zip(bv).map(|(a, b)| a * b).sum();
            for k in 0..d {
                v[k] -= p * bv[k];
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            basis.push(v.iter().map(|x| x / norm).collect());
        }
        if basis.len() == 2 {
            break;
        }
    }
    let c0 = pair(&center, &center);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let dir: Vec<f64> = (0..d)
            .map(|i| theta.cos() * basis[0][i] + theta.sin() * basis[1][i])
            .collect();
        let a = pair(&dir, &dir);
        let bq = 2.0 * pair(&center, &dir);
        let t = if a.abs() < 1e-14 {
            if bq.abs() < 1e-14 {
                continue;
            }
            -c0 / bq
        } else {
            let disc = bq * bq - 4.0 * a * c0;
            if disc < 0.0 {
                continue;
            }
            let r1 = (-bq + disc.sqrt()) / (2.0 * a);
            let r2 = (-bq - disc.sqrt()) / (2.0 * a);
            match (r1 > 0.0, r2 > 0.0) {
                (true, true) => r1.min(r2),
                (true, false) => r1,
                (false, true) => r2,
                (false, false) => continue,
            }
        };
        if !(t.is_finite() && t > 0.0) {
            continue;
        }
        out.push(
            (0..d)
                .map(|i| Scalar::Float(center[i] + t * dir[i]))
                .collect(),
        );
    }
    Ok(out)
}

/// Screen projection of a normalized ambient point: barycentric over
/// the simple coefficients, then a fixed triangle (rank 3) or a fixed
/// orthographic view of a regular tetrahedron (rank 4).
fn project(system: &RootSystem, spec: &RenderSpec, p: &[Scalar]) -> Option<(f64, f64)> {
    let coeffs = vec_to_f64(&system.coefficients_of(p));
    let s: f64 = coeffs.iter().sum();
    if !s.is_finite() || s.abs() < 1e-12 {
        return None;
    }
    let bc: Vec<f64> = coeffs.iter().map(|c| c / s).collect();
    let w = spec.width as f64;
    let h = spec.height as f64;
    match system.rank() {
        3 => {
            let corners = [
                (0.50 * w, 0.12 * h),
                (0.10 * w, 0.86 * h),
                (0.90 * w, 0.86 * h),
            ];
            let mut x = 0.0;
            let mut y = 0.0;
            for (b, (cx, cy)) in bc.iter().zip(corners) {
                x += b * cx;
                y += b * cy;
            }
            Some((x, y))
        }
        4 => {
            let corners = [
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ];
            let mut q = [0.0; 3];
            for (b, c) in bc.iter().zip(corners) {
                for k in 0..3 {
                    q[k] += b * c[k];
                }
            }
            // Fixed camera: rotate 0.6 rad about y, then 0.4 rad about x.
            let (sy, cy) = (0.6f64.sin(), 0.6f64.cos());
            let (sx, cx) = (0.4f64.sin(), 0.4f64.cos());
            let r1 = [cy * q[0] + sy * q[2], q[1], -sy * q[0] + cy * q[2]];
            let px = r1[0];
            let py = cx * r1[1] - sx * r1[2];
            let scale = 0.30 * w.min(h);
            Some((w / 2.0 + scale * px, h / 2.0 - scale * py))
        }
        _ => None,
    }
}

fn px(x: f64) -> String {
    format!("{:.2}", x)
}

fn depth_color(depth: usize) -> String {
    let c = 220usize.saturating_sub(24 * depth.min(8));
    format!("rgb({c},{c},255)")
}

pub fn render_svg(
    system: &RootSystem,
    form: &TransverseForm,
    layers: &Layers,
    spec: &RenderSpec,
) -> Result<String> {
    if !matches!(system.rank(), 3 | 4) {
        return Err(Error::UnsupportedRank(system.rank()));
    }
    let w = spec.width;
    let h = spec.height;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>"
    );
    // axes
    let _ = writeln!(
        svg,
        "<line x1=\"0\" y1=\"{my}\" x2=\"{w}\" y2=\"{my}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
        my = px(h as f64 / 2.0)
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{mx}\" y1=\"0\" x2=\"{mx}\" y2=\"{h}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
        mx = px(w as f64 / 2.0)
    );

    // K and its translates, earliest words first
    let mut polygons = layers.polygons.clone();
    polygons.sort_by(|a, b| a.0.cmp(&b.0));
    for (word, verts) in &polygons {
        let pts: Vec<String> = verts
            .iter()
            .filter_map(|v| project(system, spec, v))
            .map(|(x, y)| format!("{},{}", px(x), px(y)))
            .collect();
        if pts.len() < 2 {
            continue;
        }
        let id: Vec<String> = word.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(
            svg,
            "<polygon points=\"{}\" fill=\"#8fbc8f\" fill-opacity=\"0.35\" stroke=\"#2e8b57\" stroke-width=\"0.8\" data-word=\"{}\"/>",
            pts.join(" "),
            id.join("")
        );
    }

    if layers.delta_edges {
        let hat: Vec<Vector> = system
            .simple_vectors()
            .iter()
            .map(|v| crate::projective::normalize(form, v))
            .collect::<Result<_>>()?;
        for i in 0..hat.len() {
            for j in (i + 1)..hat.len() {
                if let (Some((x1, y1)), Some((x2, y2))) = (
                    project(system, spec, &hat[i]),
                    project(system, spec, &hat[j]),
                ) {
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"1\"/>",
                        px(x1), px(y1), px(x2), px(y2)
                    );
                }
            }
        }
    }

    if layers.qhat {
        if system.ambient_dim() == 3 {
            let samples = qhat_samples(system, form, 128)?;
            let pts: Vec<String> = samples
                .iter()
                .filter_map(|v| project(system, spec, v))
                .map(|(x, y)| format!("{},{}", px(x), px(y)))
                .collect();
            if pts.len() > 1 {
                let _ = writeln!(
                    svg,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"#cc2222\" stroke-width=\"1.5\"/>",
                    pts.join(" ")
                );
            }
        } else {
            // rank-4 surface: sampled dots instead of a curve
            for v in crate::cone::sample_isotropic(system, form, 256)? {
                if let Some((x, y)) = project(system, spec, &v) {
                    let _ = writeln!(
                        svg,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"1.2\" fill=\"#cc2222\"/>",
                        px(x),
                        px(y)
                    );
                }
            }
        }
    }

    let mut clouds: Vec<(f64, f64)> = layers
        .clouds
        .iter()
        .filter_map(|v| project(system, spec, v))
        .collect();
    clouds.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    for (x, y) in clouds {
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"1.6\" fill=\"#7722aa\"/>",
            px(x),
            px(y)
        );
    }

    let mut roots: Vec<(usize, f64, f64)> = layers
        .roots
        .iter()
        .filter_map(|(v, d)| project(system, spec, v).map(|(x, y)| (*d, x, y)))
        .collect();
    roots.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    });
    for (d, x, y) in roots {
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{}\" stroke=\"#223388\" stroke-width=\"0.4\"/>",
            px(x),
            px(y),
            depth_color(d)
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::projective::{normalize, transverse_form, TransverseMode};
    use crate::scalar::euclid_dist;
    use crate::system::enumerate_roots;

    #[test]
    fn empty_layers_valid_svg() {
        let sys = fixtures::u3();
        let form = transverse_form(&sys, TransverseMode::Sum).unwrap();
        let svg = render_svg(&sys, &form, &Layers::default(), &RenderSpec::default()).unwrap();
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("circle"));
    }

    #[test]
    fn unsupported_rank() {
        let sys = fixtures::d15();
        let form = transverse_form(&sys, TransverseMode::Sum).unwrap();
        let err = render_svg(&sys, &form, &Layers::default(), &RenderSpec::default());
        assert!(matches!(err, Err(Error::UnsupportedRank(2))));
    }

    #[test]
    fn deterministic_bytes() {
        let sys = fixtures::u3();
        let form = transverse_form(&sys, TransverseMode::Sum).unwrap();
        let (roots, _) = enumerate_roots(&sys, 4);
        let layers = Layers {
            qhat: true,
            delta_edges: true,
            roots: roots
                .iter()
                .map(|r| {
                    (
                        normalize(&form, &sys.ambient_of(&r.coords)).unwrap(),
                        r.depth,
                    )
                })
                .collect(),
            ..Default::default()
        };
        let a = render_svg(&sys, &form, &layers, &RenderSpec::default()).unwrap();
        let b = render_svg(&sys, &form, &layers, &RenderSpec::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("polyline"));
    }

    // Deep roots hug the isotropic circle when E is all of Q-hat.
    #[test]
    fn h334_depth8_near_qhat() {
        let sys = fixtures::h334();
        let form = transverse_form(&sys, TransverseMode::Sum).unwrap();
        let samples = qhat_samples(&sys, &form, 512).unwrap();
        assert!(samples.len() > 500);
        let (roots, _) = enumerate_roots(&sys, 8);
        let deep: Vec<_> = roots.iter().filter(|r| r.depth == 8).collect();
        assert!(!deep.is_empty());
        for r in deep {
            let p = normalize(&form, &sys.ambient_of(&r.coords)).unwrap();
            let d = samples
                .iter()
                .map(|s| euclid_dist(&p, s))
                .fold(f64::INFINITY, f64::min);
            assert!(d < 0.15, "depth-8 root {:?} at distance {d}", r.coords);
        }
    }

    #[test]
    fn u3_orbit_polygons_render() {
        let sys = fixtures::u3();
        let form = transverse_form(&sys, TransverseMode::Sum).unwrap();
        let orbit = crate::cone::imaginary_orbit(&sys, &form, 3).unwrap();
        let layers = Layers {
            qhat: true,
            polygons: orbit.polytopes.clone(),
            ..Default::default()
        };
        let svg = render_svg(&sys, &form, &layers, &RenderSpec::default()).unwrap();
        assert!(svg.matches("<polygon").count() >= 10);
    }
}
