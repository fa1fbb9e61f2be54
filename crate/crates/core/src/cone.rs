//! The fundamental slice K of the imaginary cone, its orbit Z = W.K,
//! hull extreme points, facial subsets, the generating family of
//! affine/hyperbolic faces, the fractal base sample, and the region
//! decomposition for generic universal systems.

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::limits::PointCloud;
use crate::lp;
use crate::projective::{act_word, normalize, transverse_form, TransverseForm, TransverseMode};
use crate::quadric::u_q;
use crate::scalar::{grid_key, vec_to_f64, Scalar, Vector, TAU_EQ, TAU_HULL};
use crate::system::{cmp_coords, RootSystem};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct Polytope {
    pub vertices: Vec<Vector>,
    /// Supporting constraints normal . v <= offset, in ambient coords.
    pub halfspaces: Vec<(Vec<f64>, f64)>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct FacialSubset {
    pub indices: Vec<usize>,
    /// Affine dimension of the face; -1 for the empty face.
    pub dimension: i64,
}

/// Vertices of K = {v in cone(Delta) : <v, delta> <= 0 for all delta,
/// phi(v) = 1} by active-set enumeration in coefficient space.
pub fn cone_k_vertices(system: &RootSystem, form: &TransverseForm) -> Result<Polytope> {
    let n = system.rank();
    if n > 6 {
        return Err(Error::UnsupportedRank(n));
    }
    let gram = system.gram();
    // Inequality constraints in lambda-space: lambda_i >= 0 (rows 0..n)
    // and (A lambda)_j <= 0 (rows n..2n).
    let constraint_row = |k: usize| -> Vector {
        if k < n {
            (0..n)
                .map(|j| if j == k { Scalar::one() } else { Scalar::zero() })
                .collect()
        } else {
            (0..n).map(|j| gram.entry(k - n, j).clone()).collect()
        }
    };
    let phi_row: Vector = system
        .simple_vectors()
        .iter()
        .map(|v| form.eval(v))
        .collect();
    let feasible = |lambda: &[Scalar]| -> bool {
        lambda.iter().all(|x| x.to_f64() >= -TAU_EQ)
            && (0..n).all(|j| {
                let mut acc = Scalar::zero();
                for (i, x) in lambda.iter().enumerate() {
                    acc = acc + gram.entry(j, i) * x;
                }
                acc.to_f64() <= TAU_EQ
            })
    };
    let mut vertices: Vec<Vector> = Vec::new();
    let mut seen = BTreeSet::new();
    for choice in combinations(2 * n, n.saturating_sub(1)) {
        let mut rows: Vec<Vector> = Vec::with_capacity(n);
        for &k in &choice {
            let mut r = constraint_row(k);
            r.push(Scalar::zero());
            rows.push(r);
        }
        let mut pr = phi_row.clone();
        pr.push(Scalar::one());
        rows.push(pr);
        if let Some(lambda) = crate::projective::solve_linear_system(&mut rows, n) {
            if feasible(&lambda) {
                let amb = system.ambient_of(&lambda);
                if seen.insert(grid_key(&amb)) {
                    vertices.push(amb);
                }
            }
        }
    }
    if vertices.is_empty() {
        return Err(Error::EmptyK);
    }
    // Hull-minimal vertex set in ambient coordinates.
    if vertices.len() > 2 {
        let f: Vec<Vec<f64>> = vertices.iter().map(|v| vec_to_f64(v)).collect();
        let keep = lp::extreme_points(&f, TAU_HULL);
        vertices = keep.iter().map(|&i| vertices[i].clone()).collect();
    }
    vertices.sort_by(|a, b| cmp_coords(a, b));
    let mut halfspaces: Vec<(Vec<f64>, f64)> = Vec::new();
    for j in 0..n {
        let normal: Vec<f64> = (0..system.ambient_dim())
            .map(|c| {
                crate::scalar::form_pairing(
                    system.form(),
                    &unit(system.ambient_dim(), c),
                    &system.simple_vectors()[j],
                )
                .to_f64()
            })
            .collect();
        halfspaces.push((normal, 0.0));
    }
    Ok(Polytope {
        vertices,
        halfspaces,
    })
}

fn combinations(total: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, total: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..total {
            cur.push(k);
            rec(k + 1, total, size, cur, out);
            cur.pop();
        }
    }
    rec(0, total, size, &mut cur, &mut out);
    out
}

fn unit(n: usize, i: usize) -> Vector {
    (0..n)
        .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
        .collect()
}

/// All words of length 1..=l without immediate letter repetition.
pub fn words_up_to(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..l {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..n {
                if w.last() == Some(&i) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug)]
pub struct ImaginaryOrbit {
    pub cloud: PointCloud,
    /// One polygon (vertex list) per word w: the translate w.K.
    pub polytopes: Vec<(Vec<usize>, Vec<Vector>)>,
}

pub fn imaginary_orbit(
    system: &RootSystem,
    form: &TransverseForm,
    l: usize,
) -> Result<ImaginaryOrbit> {
    let k = cone_k_vertices(system, form)?;
    let mut cloud = PointCloud::new();
    cloud.length = Some(l);
    let mut seen = BTreeSet::new();
    let mut polytopes = Vec::new();
    for w in words_up_to(system.rank(), l) {
        let mut verts = Vec::with_capacity(k.vertices.len());
        for v in &k.vertices {
            let img = act_word(system, form, &w, v)?;
            cloud.push_dedup(&mut seen, img.clone(), "orbit");
            verts.push(img);
        }
        polytopes.push((w, verts));
    }
    cloud.sort();
    Ok(ImaginaryOrbit { cloud, polytopes })
}

/// Hull-minimal subset of a point cloud.
pub fn extreme_points(cloud: &PointCloud) -> PointCloud {
    let f: Vec<Vec<f64>> = cloud.points.iter().map(|p| vec_to_f64(p)).collect();
    let keep = lp::extreme_points(&f, TAU_HULL);
    let mut out = PointCloud::new();
    out.depth = cloud.depth;
    out.length = cloud.length;
    for &i in &keep {
        out.points.push(cloud.points[i].clone());
        out.tags.push(cloud.tags[i].clone());
    }
    out.sort();
    out
}

fn affine_dimension(points: &[Vec<f64>]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    let diffs: Vec<Vec<f64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut m = diffs;
    let mut rank = 0usize;
    let cols = points[0].len();
    for col in 0..cols {
        if let Some(r) = (rank..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
        {
            if m[r][col].abs() <= 1e-9 {
                continue;
            }
            m.swap(rank, r);
            let p = m[rank][col];
            for rr in 0..m.len() {
                if rr != rank {
                    let f = m[rr][col] / p;
                    for c in 0..cols {
                        m[rr][c] -= f * m[rank][c];
                    }
                }
            }
            rank += 1;
        }
    }
    rank as i64
}

/// All I with conv(Delta^_I) a face of conv(Delta^), in (size, lex) order.
pub fn facial_subsets(system: &RootSystem) -> Vec<FacialSubset> {
    let n = system.rank();
    let form = match transverse_form(system, TransverseMode::Sum) {
        Ok(f) => f,
        Err(_) => return Vec::new(),
    };
    let hat: Vec<Vec<f64>> = system
        .simple_vectors()
        .iter()
        .map(|v| {
            normalize(&form, v)
                .map(|p| vec_to_f64(&p))
                .unwrap_or_else(|_| vec_to_f64(v))
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if lp::is_face(&hat, &subset) {
            let pts: Vec<Vec<f64>> = subset.iter().map(|&i| hat[i].clone()).collect();
            out.push(FacialSubset {
                dimension: affine_dimension(&pts),
                indices: subset,
            });
        }
    }
    out.sort_by(|a, b| {
        a.indices
            .len()
            .cmp(&b.indices.len())
            .then(a.indices.cmp(&b.indices))
    });
    out
}

/// Facial subsets whose subsystem is irreducible, infinite, and affine
/// or hyperbolic.
pub fn generating_subsets(system: &RootSystem) -> Vec<FacialSubset> {
    facial_subsets(system)
        .into_iter()
        .filter(|f| {
            if f.indices.len() < 2 {
                return false;
            }
            let Ok(sub) = system.subsystem(&f.indices) else {
                return false;
            };
            let report = classify(&sub);
            if !report.irreducible {
                return false;
            }
            let affine = report.component_types.iter().all(|t| t == "affine");
            affine || report.hyperbolic
        })
        .collect()
}

/// Kernel direction of an affine irreducible Gram matrix.
fn gram_kernel(gram: &crate::gram::GramMatrix) -> Option<Vector> {
    let n = gram.rank();
    let (pivots, reduced) = crate::system::rref(gram.rows(), n);
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut x = vec![Scalar::zero(); n];
    x[f] = Scalar::one();
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = -&row[f];
    }
    Some(x)
}

/// Sample of the fractal base set: kernel points of affine generating
/// faces and isotropic samples of hyperbolic ones, pushed around by
/// words of length <= l.
pub fn fractal_base_sample(
    system: &RootSystem,
    form: &TransverseForm,
    samples_per_face: usize,
    l: usize,
) -> Result<PointCloud> {
    fractal_base_sample_seeded(system, form, samples_per_face, l, 0)
}

/// As [`fractal_base_sample`], with a seed offsetting the sampling
/// directions on hyperbolic faces.
pub fn fractal_base_sample_seeded(
    system: &RootSystem,
    form: &TransverseForm,
    samples_per_face: usize,
    l: usize,
    seed: u64,
) -> Result<PointCloud> {
    let mut cloud = PointCloud::new();
    cloud.length = Some(l);
    let mut seen = BTreeSet::new();
    let embed = |subset: &[usize], coeffs: &[Scalar]| -> Vector {
        let mut full = vec![Scalar::zero(); system.rank()];
        for (slot, &i) in subset.iter().enumerate() {
            full[i] = coeffs[slot].clone();
        }
        full
    };
    for face in generating_subsets(system) {
        let sub = system.subsystem(&face.indices)?;
        let report = classify(&sub);
        if report.component_types.iter().all(|t| t == "affine") {
            if let Some(kernel) = gram_kernel(sub.gram()) {
                let full = system.ambient_of(&embed(&face.indices, &kernel));
                let p = normalize(form, &full)?;
                cloud.push_dedup(&mut seen, p, "facial-sphere-sample");
            }
            continue;
        }
        // hyperbolic face
        if sub.rank() == 2 {
            let sform = transverse_form(&sub, TransverseMode::Sum)?;
            let e2 = crate::limits::dihedral_limit_roots(&sub, &sform, 2)?;
            for p in &e2.points {
                let coeffs = sub.coefficients_of(p);
                let full = system.ambient_of(&embed(&face.indices, &coeffs));
                cloud.push_dedup(&mut seen, normalize(form, &full)?, "facial-sphere-sample");
            }
            continue;
        }
        let sform = transverse_form(&sub, TransverseMode::Sphere)?;
        for p in sample_isotropic_seeded(&sub, &sform, samples_per_face, seed)? {
            let coeffs = sub.coefficients_of(&p);
            let full = system.ambient_of(&embed(&face.indices, &coeffs));
            cloud.push_dedup(&mut seen, normalize(form, &full)?, "facial-sphere-sample");
        }
    }
    if l > 0 && !cloud.is_empty() {
        let base: Vec<Vector> = cloud.points.clone();
        for w in words_up_to(system.rank(), l) {
            if w.is_empty() {
                continue;
            }
            for p in &base {
                if let Ok(img) = act_word(system, form, &w, p) {
                    cloud.push_dedup(&mut seen, img, "facial-sphere-sample");
                }
            }
        }
    }
    cloud.sort();
    Ok(cloud)
}

/// Deterministic sample of the normalized isotropic set of a weakly
/// hyperbolic system, by ray shooting from an interior point.
pub fn sample_isotropic(
    system: &RootSystem,
    form: &TransverseForm,
    samples: usize,
) -> Result<Vec<Vector>> {
    sample_isotropic_seeded(system, form, samples, 0)
}

/// As [`sample_isotropic`], with a seed-derived phase rotating the
/// sampled directions.
pub fn sample_isotropic_seeded(
    system: &RootSystem,
    form: &TransverseForm,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vector>> {
    let phase = (seed % 1_000_000) as f64 * 0.618033988749895 * 2.0 * std::f64::consts::PI;
    let d = system.ambient_dim();
    let b: Vec<Vec<f64>> = system
        .form()
        .iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    let z = crate::gram::perron_weight(system.gram())?;
    let z_amb = vec_to_f64(&system.ambient_of(&z.iter().map(|&x| Scalar::Float(x)).collect::<Vec<_>>()));
    let phi: Vec<f64> = form.coefficients.iter().map(Scalar::to_f64).collect();
    let pz: f64 = phi.iter().zip(&z_amb).map(|(a, b)| a * b).sum();
    let z1: Vec<f64> = z_amb.iter().map(|x| x / pz).collect();
    // Orthonormal basis of the direction space {phi = 0}.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let norm2: f64 = phi.iter().map(|x| x * x).sum();
    for i in 0..d {
        let mut v: Vec<f64> = (0..d)
            .map(|j| if i == j { 1.0 } else { 0.0 } - phi[i] * phi[j] / norm2)
            .collect();
        for bvec in &basis {
            let dot: f64 = v.iter().zip(bvec).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(bvec) {
                *x -= dot * y;
            }
        }
        let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-9 {
            basis.push(v.iter().map(|x| x / n).collect());
        }
    }
    let directions: Vec<Vec<f64>> = match basis.len() {
        0 => return Err(Error::UnsupportedRank(d)),
        1 => vec![basis[0].clone(), basis[0].iter().map(|x| -x).collect()],
        2 => (0..samples)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (samples as f64) + phase;
                (0..d)
                    .map(|c| t.cos() * basis[0][c] + t.sin() * basis[1][c])
                    .collect()
            })
            .collect(),
        _ => (0..samples)
            .map(|k| {
                // Fibonacci sphere on the first three basis directions.
                let golden = (1.0 + 5f64.sqrt()) / 2.0;
                let i = k as f64 + 0.5;
                let theta = 2.0 * std::f64::consts::PI * i / golden + phase;
                let cphi = 1.0 - 2.0 * i / (samples as f64);
                let sphi = (1.0 - cphi * cphi).sqrt();
                let (x, y, zc) = (sphi * theta.cos(), sphi * theta.sin(), cphi);
                (0..d)
                    .map(|c| x * basis[0][c] + y * basis[1][c] + zc * basis[2][c])
                    .collect()
            })
            .collect(),
    };
    let quad = |u: &[f64], v: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += u[i] * b[i][j] * v[j];
            }
        }
        acc
    };
    let c0 = quad(&z1, &z1);
    let mut out = Vec::with_capacity(directions.len());
    for dir in &directions {
        let a = quad(dir, dir);
        let bb = quad(&z1, dir);
        let t = if a.abs() <= 1e-12 {
            if bb.abs() <= 1e-12 {
                continue;
            }
            -c0 / (2.0 * bb)
        } else {
            let disc = bb * bb - a * c0;
            if disc < 0.0 {
                continue;
            }
            (-bb + disc.sqrt()) / a
        };
        if t <= 0.0 {
            continue;
        }
        let p: Vector = (0..d)
            .map(|c| Scalar::Float(z1[c] + t * dir[c]))
            .collect();
        out.push(p);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Z,
    D(usize),
}

impl Region {
    pub fn tag(&self, system: &RootSystem) -> String {
        match self {
            Region::Z => "Z".into(),
            Region::D(i) => format!("D_{}", system.labels()[*i]),
        }
    }
}

/// Which region of conv(Delta^) = Z u (disjoint D_alpha's) a point
/// falls in, for a generic universal system.
pub fn decomposition_assign(
    system: &RootSystem,
    form: &TransverseForm,
    point: &[Scalar],
) -> Result<Region> {
    let n = system.rank();
    for i in 0..n {
        for j in (i + 1)..n {
            if system.gram().entry(i, j).to_f64() >= -1.0 - TAU_EQ {
                return Err(Error::NotGenericUniversal(format!(
                    "Gram entry ({i},{j}) = {} is not < -1",
                    system.gram().entry(i, j)
                )));
            }
        }
    }
    let hat: Vec<Vector> = system
        .simple_vectors()
        .iter()
        .map(|v| normalize(form, v))
        .collect::<Result<_>>()?;
    let hat_f: Vec<Vec<f64>> = hat.iter().map(|v| vec_to_f64(v)).collect();
    let pf = vec_to_f64(point);
    if !lp::in_hull(&hat_f, &pf, TAU_HULL) {
        return Err(Error::Axiom("point outside conv of normalized simples".into()));
    }
    let mut matches = Vec::new();
    for i in 0..n {
        let mut verts: Vec<Vec<f64>> = vec![hat_f[i].clone()];
        for j in 0..n {
            if j != i {
                verts.push(vec_to_f64(&u_q(system.form(), &hat[i], &hat[j])?));
            }
        }
        if lp::in_hull(&verts, &pf, TAU_HULL) {
            matches.push(i);
        }
    }
    match matches.len() {
        0 => Ok(Region::Z),
        1 => Ok(Region::D(matches[0])),
        _ => Err(Error::Axiom(format!(
            "point assigned to {} regions",
            matches.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::form_pairing;

    fn sum(sys: &RootSystem) -> TransverseForm {
        transverse_form(sys, TransverseMode::Sum).unwrap()
    }

    #[test]
    fn k_vertices_dihedral() {
        let sys = fixtures::d15();
        let k = cone_k_vertices(&sys, &sum(&sys)).unwrap();
        assert_eq!(k.vertices.len(), 2);
        assert_eq!(vec_to_f64(&k.vertices[0]), vec![0.4, 0.6]);
        assert_eq!(vec_to_f64(&k.vertices[1]), vec![0.6, 0.4]);

        let sys = fixtures::aff2();
        let k = cone_k_vertices(&sys, &sum(&sys)).unwrap();
        assert_eq!(k.vertices.len(), 1);
        assert_eq!(vec_to_f64(&k.vertices[0]), vec![0.5, 0.5]);

        assert!(matches!(
            cone_k_vertices(&fixtures::fin3(), &sum(&fixtures::fin3())),
            Err(Error::EmptyK)
        ));
    }

    #[test]
    fn k_vertex_invariants() {
        for sys in [fixtures::d15(), fixtures::u3(), fixtures::h334()] {
            let k = cone_k_vertices(&sys, &sum(&sys)).unwrap();
            for v in &k.vertices {
                let coeffs = sys.coefficients_of(v);
                assert!(coeffs.iter().all(|c| c.to_f64() >= -TAU_EQ));
                for sv in sys.simple_vectors() {
                    assert!(form_pairing(sys.form(), v, sv).to_f64() <= TAU_EQ);
                }
            }
        }
    }

    #[test]
    fn orbit_of_k() {
        let sys = fixtures::d15();
        let orbit = imaginary_orbit(&sys, &sum(&sys), 2).unwrap();
        assert_eq!(orbit.cloud.len(), 6);
        let lo = (5.0 - 5f64.sqrt()) / 10.0;
        let hi = (5.0 + 5f64.sqrt()) / 10.0;
        for p in &orbit.cloud.points {
            assert!(p[0].to_f64() > lo + 1e-9 && p[0].to_f64() < hi - 1e-9);
        }
        let sys = fixtures::aff2();
        let orbit = imaginary_orbit(&sys, &sum(&sys), 3).unwrap();
        assert_eq!(orbit.cloud.len(), 1);
    }

    #[test]
    fn extremes_drop_interior() {
        let mut cloud = PointCloud::new();
        let mut seen = BTreeSet::new();
        for x in [0.0, 0.5, 1.0] {
            cloud.push_dedup(
                &mut seen,
                vec![Scalar::Float(x), Scalar::Float(0.0)],
                "orbit",
            );
        }
        let ext = extreme_points(&cloud);
        assert_eq!(ext.len(), 2);
    }

    #[test]
    fn faces() {
        assert_eq!(facial_subsets(&fixtures::u3()).len(), 8);
        assert_eq!(facial_subsets(&fixtures::d15()).len(), 4);
        let quad = facial_subsets(&fixtures::quad());
        let sets: Vec<Vec<usize>> = quad.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(quad.len(), 10);
        assert!(sets.contains(&vec![0, 1]));
        assert!(sets.contains(&vec![2, 3]));
        assert!(!sets.contains(&vec![0, 2]));
        assert!(!sets.contains(&vec![1, 3]));
    }

    #[test]
    fn generating_families() {
        let g = generating_subsets(&fixtures::u3());
        let sets: Vec<Vec<usize>> = g.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);

        let g = generating_subsets(&fixtures::h334());
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].indices, vec![0, 1, 2]);

        let g = generating_subsets(&fixtures::a2aff());
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].indices, vec![0, 1, 2]);

        assert!(generating_subsets(&fixtures::fin3()).is_empty());
    }

    #[test]
    fn fractal_base() {
        let sys = fixtures::a2aff();
        let cloud = fractal_base_sample(&sys, &sum(&sys), 8, 0).unwrap();
        assert_eq!(cloud.len(), 1);
        let p = vec_to_f64(&cloud.points[0]);
        for c in p {
            assert!((c - 1.0 / 3.0).abs() < 1e-9);
        }

        let sys = fixtures::h334();
        let form = sum(&sys);
        let cloud = fractal_base_sample(&sys, &form, 16, 0).unwrap();
        assert_eq!(cloud.len(), 16);
        let hat: Vec<Vec<f64>> = sys
            .simple_vectors()
            .iter()
            .map(|v| vec_to_f64(&normalize(&form, v).unwrap()))
            .collect();
        for p in &cloud.points {
            let q = form_pairing(sys.form(), p, p).to_f64();
            assert!(q.abs() < 1e-7, "not isotropic: {q}");
            assert!(lp::in_hull(&hat, &vec_to_f64(p), 1e-6));
        }

        let cloud = fractal_base_sample(&fixtures::fin3(), &sum(&fixtures::fin3()), 8, 2).unwrap();
        assert!(cloud.is_empty());
    }

    #[test]
    fn decomposition() {
        let sys = fixtures::u3();
        let form = sum(&sys);
        let a1 = normalize(&form, &sys.simple_vectors()[0]).unwrap();
        assert_eq!(
            decomposition_assign(&sys, &form, &a1).unwrap(),
            Region::D(0)
        );
        let third = Scalar::from_ratio(1, 3);
        let bary: Vector = vec![third.clone(), third.clone(), third];
        assert_eq!(decomposition_assign(&sys, &form, &bary).unwrap(), Region::Z);
        assert!(matches!(
            decomposition_assign(&fixtures::a2aff(), &sum(&fixtures::a2aff()), &bary),
            Err(Error::NotGenericUniversal(_))
        ));
    }

    #[test]
    fn roots_land_in_d_regions() {
        let sys = fixtures::u3();
        let form = sum(&sys);
        let (roots, _) = crate::system::enumerate_roots(&sys, 4);
        for r in &roots {
            let p = normalize(&form, &sys.ambient_of(&r.coords)).unwrap();
            match decomposition_assign(&sys, &form, &p).unwrap() {
                Region::D(_) => {}
                Region::Z => panic!("root assigned to Z"),
            }
        }
    }
}
