//! Finite approximations of the limit-root set: dihedral limit points
//! from root pairs, orbit accumulation, Hausdorff distances, and the
//! empirical minimality / contraction / faithfulness checks.

use crate::error::{Error, Result};
use crate::gram::{irreducible_components, signature_of};
use crate::projective::{act_word, normalize, TransverseForm};
use crate::quadric::{line_quadric, point_at, QuadricHit};
use crate::scalar::{euclid_dist, grid_key, Scalar, Vector, TAU_EQ};
use crate::system::{cmp_coords, enumerate_roots, RootSystem};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct PointCloud {
    pub points: Vec<Vector>,
    pub tags: Vec<String>,
    pub depth: Option<usize>,
    pub length: Option<usize>,
}

impl PointCloud {
    pub fn new() -> Self {
        PointCloud {
            points: Vec::new(),
            tags: Vec::new(),
            depth: None,
            length: None,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Insert unless an existing point matches on the dedup grid.
    pub fn push_dedup(&mut self, seen: &mut BTreeSet<Vec<i128>>, p: Vector, tag: &str) -> bool {
        if seen.insert(grid_key(&p)) {
            self.points.push(p);
            self.tags.push(tag.to_string());
            true
        } else {
            false
        }
    }

    /// Deterministic order: lexicographic on coordinates.
    pub fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&a, &b| cmp_coords(&self.points[a], &self.points[b]));
        self.points = idx.iter().map(|&i| self.points[i].clone()).collect();
        self.tags = idx.iter().map(|&i| self.tags[i].clone()).collect();
    }

    pub fn to_json(&self) -> serde_json::Value {
        let params = {
            let mut m = serde_json::Map::new();
            if let Some(d) = self.depth {
                m.insert("depth".into(), d.into());
            }
            if let Some(l) = self.length {
                m.insert("length".into(), l.into());
            }
            serde_json::Value::Object(m)
        };
        serde_json::Value::Array(
            self.points
                .iter()
                .zip(&self.tags)
                .map(|(p, t)| {
                    serde_json::json!({
                        "coords": p.iter().map(|x| crate::scalar::round_sig(x.to_f64())).collect::<Vec<_>>(),
                        "tag": t,
                        "params": params,
                    })
                })
                .collect(),
        )
    }
}

impl Default for PointCloud {
    fn default() -> Self {
        Self::new()
    }
}

/// Both intersection points of L(a^, b^) with the isotropic cone, over
/// all positive-root pairs of depth <= max_depth with |<a,b>| >= 1.
pub fn dihedral_limit_roots(
    system: &RootSystem,
    form: &TransverseForm,
    max_depth: usize,
) -> Result<PointCloud> {
    let (roots, _) = enumerate_roots(system, max_depth);
    let normalized: Vec<Vector> = roots
        .iter()
        .map(|r| normalize(form, &system.ambient_of(&r.coords)))
        .collect::<Result<_>>()?;
    let mut cloud = PointCloud::new();
    cloud.depth = Some(max_depth);
    let mut seen = BTreeSet::new();
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let c = system.pairing(&roots[i].coords, &roots[j].coords);
            if c.abs().to_f64() < 1.0 - TAU_EQ {
                continue;
            }
            let hit = line_quadric(system.form(), &normalized[i], &normalized[j])?;
            match hit {
                QuadricHit::None => {}
                QuadricHit::Tangent(t) => {
                    let p = point_at(&normalized[i], &normalized[j], &t);
                    cloud.push_dedup(&mut seen, p, "dihedral-pair");
                }
                QuadricHit::Pair { t_min, t_max } => {
                    for t in [t_min, t_max] {
                        let p = point_at(&normalized[i], &normalized[j], &t);
                        cloud.push_dedup(&mut seen, p, "dihedral-pair");
                    }
                }
            }
        }
    }
    cloud.sort();
    Ok(cloud)
}

/// {w . x : l(w) <= max_length}, with the number of word applications
/// refused by the domain check.
pub fn orbit_points(
    system: &RootSystem,
    form: &TransverseForm,
    x: &[Scalar],
    max_length: usize,
) -> (PointCloud, usize) {
    let n = system.rank();
    let mut cloud = PointCloud::new();
    cloud.length = Some(max_length);
    let mut seen = BTreeSet::new();
    let mut skipped = 0usize;
    cloud.push_dedup(&mut seen, x.to_vec(), "orbit");
    let mut frontier: Vec<Vector> = vec![x.to_vec()];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for p in &frontier {
            for i in 0..n {
                match act_word(system, form, &[i], p) {
                    Ok(q) => {
                        if cloud.push_dedup(&mut seen, q.clone(), "orbit") {
                            next.push(q);
                        }
                    }
                    Err(Error::LeavesDomain { .. }) => skipped += 1,
                    Err(_) => skipped += 1,
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    cloud.sort();
    (cloud, skipped)
}

/// sup over a of the distance to the nearest point of b.
pub fn directed_distance(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let mut sup: f64 = 0.0;
    for p in &a.points {
        let d = b
            .points
            .iter()
            .map(|q| euclid_dist(p, q))
            .fold(f64::INFINITY, f64::min);
        sup = sup.max(d);
    }
    Ok(sup)
}

pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    Ok(directed_distance(a, b)?.max(directed_distance(b, a)?))
}

/// Roots (s_i s_j)^n (alpha_i) for n = 1..count, in simple coordinates.
pub fn dihedral_sequence(system: &RootSystem, i: usize, j: usize, count: usize) -> Vec<Vector> {
    let n = system.rank();
    let mut alpha: Vector = (0..n)
        .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
        .collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        alpha = system.reflect(i, &system.reflect(j, &alpha));
        out.push(alpha.clone());
    }
    out
}

/// Distances ||s_{alpha_n} . z - x|| for a root sequence alpha_n -> x.
pub fn contraction_check(
    system: &RootSystem,
    form: &TransverseForm,
    x: &[Scalar],
    z: &[Scalar],
    sequence: &[Vector],
) -> Result<Vec<f64>> {
    let pairing = crate::scalar::form_pairing(system.form(), x, z);
    if pairing.is_zero_within(TAU_EQ) {
        return Err(Error::OnFace);
    }
    let mut out = Vec::with_capacity(sequence.len());
    for root in sequence {
        let amb = system.ambient_of(root);
        let image = system.reflect_ambient(&amb, z);
        let image = normalize(form, &image)?;
        out.push(euclid_dist(&image, x));
    }
    Ok(out)
}

/// How far the orbit of x (length <= l) is from covering the dihedral
/// limit-root sample at depth <= d.
pub fn minimality_gap(
    system: &RootSystem,
    form: &TransverseForm,
    x: &[Scalar],
    l: usize,
    d: usize,
) -> Result<f64> {
    let e2 = dihedral_limit_roots(system, form, d)?;
    let (orbit, _) = orbit_points(system, form, x, l);
    directed_distance(&e2, &orbit)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct WordWitness {
    pub word: Vec<usize>,
    pub witness: Vec<f64>,
    pub displacement: f64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct FaithfulnessReport {
    pub checked: usize,
    pub witnessed: Vec<WordWitness>,
    pub unfalsified: Vec<Vec<usize>>,
}

const TAU_MOVE: f64 = 1e-6;

/// For every nontrivial word of length <= l (no immediate repeats), a
/// limit point it displaces by more than TAU_MOVE.
pub fn faithfulness_check(
    system: &RootSystem,
    form: &TransverseForm,
    l: usize,
    d: usize,
) -> Result<FaithfulnessReport> {
    if system.rank() < 3 {
        return Err(Error::Axiom(
            "faithfulness check requires rank >= 3".into(),
        ));
    }
    if irreducible_components(system.gram()).len() != 1 || signature_of(system.gram()).negative == 0
    {
        return Err(Error::NotIndefinite(
            "faithfulness check requires an irreducible indefinite system".into(),
        ));
    }
    let e2 = dihedral_limit_roots(system, form, d)?;
    if e2.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let n = system.rank();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut report = FaithfulnessReport {
        checked: 0,
        witnessed: Vec::new(),
        unfalsified: Vec::new(),
    };
    for _ in 0..l {
        let mut next = Vec::new();
        for w in &words {
            for i in 0..n {
                if w.last() == Some(&i) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        for w in &next {
            report.checked += 1;
            let mut found = false;
            for e in &e2.points {
                if let Ok(img) = act_word(system, form, w, e) {
                    let disp = euclid_dist(&img, e);
                    if disp > TAU_MOVE {
                        report.witnessed.push(WordWitness {
                            word: w.clone(),
                            witness: crate::scalar::vec_to_f64(e),
                            displacement: disp,
                        });
                        found = true;
                        break;
                    }
                }
            }
            if !found {
                report.unfalsified.push(w.clone());
            }
        }
        words = next;
    }
    Ok(report)
}
