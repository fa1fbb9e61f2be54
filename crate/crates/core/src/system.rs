//! Validation of simple systems, ambient realization (including
//! linearly dependent simple systems), reflections and breadth-first
//! enumeration of positive roots with depth and root-poset edges.

use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::lp;
use crate::scalar::{grid_key, Scalar, Vector, TAU_EQ};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct RootSystem {
    gram: GramMatrix,
    relations: Vec<Vec<Scalar>>,
    ambient_dim: usize,
    simple_vectors: Vec<Vector>,
    form: Vec<Vec<Scalar>>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Diagnostic {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Diagnostics {
    pub ok: bool,
    pub issues: Vec<Diagnostic>,
}

/// Checks the simple-system axioms: unit diagonal, admissible
/// off-diagonal entries and positive independence given the declared
/// relations. Returns diagnostics instead of failing.
pub fn validate_simple_system(gram: &GramMatrix, relations: &[Vec<Scalar>]) -> Diagnostics {
    let n = gram.rank();
    let mut issues = Vec::new();
    for i in 0..n {
        let d = gram.entry(i, i) - &Scalar::one();
        if !d.is_zero_within(TAU_EQ) {
            issues.push(Diagnostic {
                kind: "diagonal".into(),
                detail: format!("entry ({i},{i}) = {} is not 1", gram.entry(i, i)),
            });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let e = gram.entry(i, j).to_f64();
            if !off_diagonal_admissible(e) {
                issues.push(Diagnostic {
                    kind: "bond".into(),
                    detail: format!(
                        "entry ({i},{j}) = {e} is neither <= -1 nor -cos(pi/k) for integer k >= 2"
                    ),
                });
            }
        }
    }
    for (r, rel) in relations.iter().enumerate() {
        if rel.len() != n {
            issues.push(Diagnostic {
                kind: "relation".into(),
                detail: format!("relation {r} has length {}, expected {n}", rel.len()),
            });
            continue;
        }
        // A true linear dependence lies in the kernel of the Gram matrix.
        for j in 0..n {
            let mut acc = Scalar::zero();
            for i in 0..n {
                acc = acc + &rel[i] * gram.entry(i, j);
            }
            if !acc.is_zero_within(TAU_EQ) {
                issues.push(Diagnostic {
                    kind: "relation".into(),
                    detail: format!("relation {r} is not in the kernel of the Gram matrix"),
                });
                break;
            }
        }
    }
    if !relations.is_empty() && issues.is_empty() {
        // Positive independence: no nonzero nonnegative vector in the
        // span of the declared relations.
        let rel_f: Vec<Vec<f64>> = relations
            .iter()
            .map(|r| r.iter().map(Scalar::to_f64).collect())
            .collect();
        if lp::span_contains_nonneg(&rel_f) {
            issues.push(Diagnostic {
                kind: "positive_independence".into(),
                detail: "the relation span contains a nonzero nonnegative vector".into(),
            });
        }
    }
    Diagnostics {
        ok: issues.is_empty(),
        issues,
    }
}

fn off_diagonal_admissible(e: f64) -> bool {
    if e <= -1.0 + TAU_EQ {
        return true;
    }
    if e > TAU_EQ {
        return false;
    }
    let e = e.min(0.0);
    // e in (-1, 0]: must match -cos(pi/k) for an integer k >= 2.
    let k = (std::f64::consts::PI / (-e).acos()).round();
    k >= 2.0 && (e + (std::f64::consts::PI / k).cos()).abs() <= TAU_EQ
}

impl RootSystem {
    /// Builds an ambient realization. Without relations the simple
    /// roots are the standard basis and the ambient form is the Gram
    /// form; declared relations cut the ambient dimension down.
    pub fn realize(gram: GramMatrix, relations: Vec<Vec<Scalar>>) -> Result<RootSystem> {
        let diag = validate_simple_system(&gram, &relations);
        if !diag.ok {
            return Err(Error::Axiom(
                diag.issues
                    .iter()
                    .map(|d| d.detail.clone())
                    .collect::<Vec<_>>()
                    .join("; "),
            ));
        }
        let n = gram.rank();
        let labels = (0..n).map(default_label).collect();
        if relations.is_empty() {
            let simple_vectors = (0..n).map(|i| basis_vector(n, i)).collect();
            let form = gram.rows().to_vec();
            return Ok(RootSystem {
                gram,
                relations,
                ambient_dim: n,
                simple_vectors,
                form,
                labels,
            });
        }
        let (pivots, reduced) = rref(&relations, n);
        let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let dim = free.len();
        let mut simple_vectors: Vec<Vector> = vec![Vec::new(); n];
        for (slot, &f) in free.iter().enumerate() {
            simple_vectors[f] = basis_vector(dim, slot);
        }
        for (row, &p) in reduced.iter().zip(&pivots) {
            // row says: alpha_p + sum_{free f} row[f] alpha_f = 0.
            let mut v = vec![Scalar::zero(); dim];
            for (slot, &f) in free.iter().enumerate() {
                v[slot] = -&row[f];
            }
            simple_vectors[p] = v;
        }
        let form: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&i| free.iter().map(|&j| gram.entry(i, j).clone()).collect())
            .collect();
        // The realization must reproduce the Gram matrix.
        for i in 0..n {
            for j in i..n {
                let got = crate::scalar::form_pairing(&form, &simple_vectors[i], &simple_vectors[j]);
                let d = &got - gram.entry(i, j);
                if !d.is_zero_within(TAU_EQ) {
                    return Err(Error::InconsistentRelations(format!(
                        "pairing ({i},{j}) realizes to {got}, Gram says {}",
                        gram.entry(i, j)
                    )));
                }
            }
        }
        Ok(RootSystem {
            gram,
            relations,
            ambient_dim: dim,
            simple_vectors,
            form,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.rank() {
            self.labels = labels;
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn relations(&self) -> &[Vec<Scalar>] {
        &self.relations
    }

    pub fn form(&self) -> &[Vec<Scalar>] {
        &self.form
    }

    pub fn simple_vectors(&self) -> &[Vector] {
        &self.simple_vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_exact(&self) -> bool {
        self.gram.is_exact()
    }

    /// Maps simple-basis coordinates to the ambient realization.
    pub fn ambient_of(&self, coords: &[Scalar]) -> Vector {
        let mut v = vec![Scalar::zero(); self.ambient_dim];
        for (c, sv) in coords.iter().zip(&self.simple_vectors) {
            for (x, y) in v.iter_mut().zip(sv) {
                *x = &*x + &(c * y);
            }
        }
        v
    }

    /// Pairing of two simple-basis coordinate vectors through the Gram
    /// matrix. Exact whenever the inputs and the Gram matrix are.
    pub fn pairing(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.gram.pairing(u, v)
    }

    /// Ambient pairing.
    pub fn ambient_pairing(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        crate::scalar::form_pairing(&self.form, u, v)
    }

    /// s_i(v) in simple-basis coordinates.
    pub fn reflect(&self, simple: usize, coords: &[Scalar]) -> Vector {
        let mut c = Scalar::zero();
        for (j, x) in coords.iter().enumerate() {
            c = c + self.gram.entry(simple, j) * x;
        }
        let mut out = coords.to_vec();
        out[simple] = &out[simple] - &(Scalar::from_int(2) * &c);
        out
    }

    /// Reflection in an arbitrary root (unit norm assumed), ambient side.
    pub fn reflect_ambient(&self, root_ambient: &[Scalar], v: &[Scalar]) -> Vector {
        let c = self.ambient_pairing(root_ambient, v);
        let shift = crate::scalar::vec_scale(&(Scalar::from_int(2) * &c), root_ambient);
        crate::scalar::vec_sub(v, &shift)
    }

    /// Coefficients over the simple roots for an ambient point (free
    /// coordinates of the realization; exact where the data is).
    pub fn coefficients_of(&self, ambient: &[Scalar]) -> Vector {
        let n = self.rank();
        let mut rows: Vec<Vector> = Vec::with_capacity(self.ambient_dim);
        for c in 0..self.ambient_dim {
            let mut r: Vector = self.simple_vectors.iter().map(|v| v[c].clone()).collect();
            r.push(ambient[c].clone());
            rows.push(r);
        }
        crate::projective::solve_linear_system(&mut rows, n)
            .unwrap_or_else(|| vec![Scalar::zero(); n])
    }

    /// Facial/standard subsystem on an index subset, realized on its own.
    pub fn subsystem(&self, idx: &[usize]) -> Result<RootSystem> {
        let sub = self.gram.restrict(idx);
        let rels: Vec<Vec<Scalar>> = self
            .relations
            .iter()
            .filter(|r| {
                r.iter()
                    .enumerate()
                    .all(|(i, c)| idx.contains(&i) || c.is_zero_within(TAU_EQ))
            })
            .map(|r| idx.iter().map(|&i| r[i].clone()).collect())
            .collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(RootSystem::realize(sub, rels)?.with_labels(labels))
    }
}

fn default_label(i: usize) -> String {
    const NAMES: [&str; 8] = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"];
    NAMES
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("alpha{}", i + 1))
}

fn basis_vector(n: usize, i: usize) -> Vector {
    (0..n)
        .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
        .collect()
}

/// Row-reduces the relation matrix; returns pivot columns and reduced rows
/// (one per pivot, pivot entry scaled to 1).
pub(crate) fn rref(rows: &[Vec<Scalar>], n: usize) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut out = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(best) = (row..m.len())
            .filter(|&r| m[r][col].to_f64().abs() > 1e-9)
            .max_by(|&a, &b| {
                m[a][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&m[b][col].to_f64().abs())
            })
        else {
            continue;
        };
        m.swap(row, best);
        let inv = Scalar::one() / &m[row][col];
        m[row] = m[row].iter().map(|x| x * &inv).collect();
        for r in 0..m.len() {
            if r != row && m[r][col].to_f64().abs() > 1e-12 {
                let f = m[r][col].clone();
                m[r] = m[r]
                    .iter()
                    .zip(&m[row])
                    .map(|(x, y)| x - &(&f * y))
                    .collect();
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    for (i, _) in pivots.iter().enumerate() {
        out.push(m[i].clone());
    }
    (pivots, out)
}

#[derive(Clone, Debug)]
pub struct Root {
    pub coords: Vector,
    pub depth: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum EdgeKind {
    Short,
    Long,
}

#[derive(Clone, Debug)]
pub struct PosetEdge {
    pub from: usize,
    pub to: usize,
    pub simple: usize,
    pub kind: EdgeKind,
}

/// All positive roots of depth <= max_depth, deduplicated, in
/// deterministic (depth, lexicographic) order, plus the root-poset
/// edges among them.
pub fn enumerate_roots(system: &RootSystem, max_depth: usize) -> (Vec<Root>, Vec<PosetEdge>) {
    let n = system.rank();
    let mut roots: Vec<Root> = Vec::new();
    let mut index: BTreeMap<Vec<i128>, usize> = BTreeMap::new();
    let mut level: Vec<usize> = Vec::new();
    for i in 0..n {
        let coords = basis_vector(n, i);
        index.insert(grid_key(&coords), roots.len());
        level.push(roots.len());
        roots.push(Root {
            coords,
            depth: 1,
            witness: Vec::new(),
        });
    }
    for depth in 1..max_depth {
        let mut next: Vec<usize> = Vec::new();
        let mut fresh: BTreeMap<Vec<i128>, Root> = BTreeMap::new();
        let mut order: Vec<Vec<i128>> = Vec::new();
        for &r in &level {
            let parent = roots[r].clone();
            for i in 0..n {
                let c = system.pairing(&basis_vector(n, i), &parent.coords);
                if c.to_f64() >= -TAU_EQ {
                    continue; // depth does not increase
                }
                let coords = system.reflect(i, &parent.coords);
                let key = grid_key(&coords);
                if index.contains_key(&key) || fresh.contains_key(&key) {
                    continue;
                }
                let mut witness = vec![i];
                witness.extend_from_slice(&parent.witness);
                order.push(key.clone());
                fresh.insert(
                    key,
                    Root {
                        coords,
                        depth: depth + 1,
                        witness,
                    },
                );
            }
        }
        if fresh.is_empty() {
            break;
        }
        let mut batch: Vec<Root> = fresh.into_values().collect();
        batch.sort_by(|a, b| cmp_coords(&a.coords, &b.coords));
        for root in batch {
            let key = grid_key(&root.coords);
            index.insert(key, roots.len());
            next.push(roots.len());
            roots.push(root);
        }
        level = next;
    }
    let mut edges = Vec::new();
    for (r, root) in roots.iter().enumerate() {
        for i in 0..n {
            let c = system.pairing(&basis_vector(n, i), &root.coords);
            if c.to_f64() >= -TAU_EQ {
                continue;
            }
            let target = system.reflect(i, &root.coords);
            if let Some(&t) = index.get(&grid_key(&target)) {
                debug_assert_eq!(roots[t].depth, root.depth + 1);
                let kind = if is_short(&c) {
                    EdgeKind::Short
                } else {
                    EdgeKind::Long
                };
                edges.push(PosetEdge {
                    from: r,
                    to: t,
                    simple: i,
                    kind,
                });
            }
        }
    }
    (roots, edges)
}

fn is_short(c: &Scalar) -> bool {
    match c {
        Scalar::Exact(_) => c.abs() < Scalar::one(),
        Scalar::Float(f) => f.abs() < 1.0 - TAU_EQ,
    }
}

pub fn cmp_coords(a: &[Scalar], b: &[Scalar]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.total_cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validate_fixtures() {
        assert!(validate_simple_system(fixtures::u3().gram(), &[]).ok);
        let bad = GramMatrix::new(vec![
            vec![Scalar::one(), Scalar::Float(-0.7)],
            vec![Scalar::Float(-0.7), Scalar::one()],
        ])
        .unwrap();
        let diag = validate_simple_system(&bad, &[]);
        assert!(!diag.ok);
        assert_eq!(diag.issues[0].kind, "bond");
    }

    #[test]
    fn quad_relation_accepted_and_realized() {
        let sys = fixtures::quad();
        assert_eq!(sys.ambient_dim(), 3);
        // alpha = beta - gamma + delta over the free basis (beta, gamma, delta)
        let alpha = &sys.simple_vectors()[0];
        let want = [Scalar::one(), -Scalar::one(), Scalar::one()];
        for (a, b) in alpha.iter().zip(want.iter()) {
            assert_eq!(a, b);
        }
        let norm = sys.ambient_pairing(alpha, alpha);
        assert_eq!(norm, Scalar::one());
    }

    #[test]
    fn inconsistent_relation_rejected() {
        // A2 with a bogus relation alpha = beta.
        let gram = fixtures::fin3().gram().clone();
        let rel = vec![vec![Scalar::one(), -Scalar::one()]];
        match RootSystem::realize(gram, rel) {
            Err(Error::Axiom(_)) | Err(Error::InconsistentRelations(_)) => {}
            other => panic!("expected rejection, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn reflections() {
        let aff2 = fixtures::aff2();
        let beta = basis_vector(2, 1);
        let r = aff2.reflect(0, &beta);
        assert_eq!(r, vec![Scalar::from_int(2), Scalar::one()]);
        let d15 = fixtures::d15();
        let r = d15.reflect(0, &basis_vector(2, 1));
        assert_eq!(r, vec![Scalar::from_int(3), Scalar::one()]);
        let alpha = basis_vector(2, 0);
        assert_eq!(d15.reflect(0, &alpha), vec![-Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn enumerate_fin3() {
        let (roots, _) = enumerate_roots(&fixtures::fin3(), 3);
        assert_eq!(roots.len(), 3);
        let coords: Vec<Vec<f64>> = roots
            .iter()
            .map(|r| crate::scalar::vec_to_f64(&r.coords))
            .collect();
        assert!(coords.contains(&vec![1.0, 1.0]));
    }

    #[test]
    fn enumerate_aff2_depth3() {
        let (roots, edges) = enumerate_roots(&fixtures::aff2(), 3);
        let got: Vec<Vec<f64>> = roots
            .iter()
            .map(|r| crate::scalar::vec_to_f64(&r.coords))
            .collect();
        let want = [
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 2.0],
            vec![2.0, 1.0],
            vec![2.0, 3.0],
            vec![3.0, 2.0],
        ];
        assert_eq!(got.len(), 6);
        for w in &want {
            assert!(got.contains(w), "missing {:?}", w);
        }
        for e in &edges {
            assert_eq!(roots[e.to].depth, roots[e.from].depth + 1);
            assert_eq!(e.kind, EdgeKind::Long);
        }
    }

    #[test]
    fn enumerate_d15_depth3() {
        let (roots, _) = enumerate_roots(&fixtures::d15(), 3);
        let got: Vec<Vec<f64>> = roots
            .iter()
            .map(|r| crate::scalar::vec_to_f64(&r.coords))
            .collect();
        for w in [
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![3.0, 1.0],
            vec![1.0, 3.0],
            vec![8.0, 3.0],
            vec![3.0, 8.0],
        ] {
            assert!(got.contains(&w), "missing {:?}", w);
        }
        assert_eq!(got.len(), 6);
        // dihedral growth: exactly 2 new roots per depth
        for depth in 1..=3 {
            assert_eq!(roots.iter().filter(|r| r.depth == depth).count(), 2);
        }
    }

    #[test]
    fn roots_have_unit_norm_and_nonneg_coords() {
        for sys in [fixtures::u3(), fixtures::h334(), fixtures::quad()] {
            let (roots, _) = enumerate_roots(&sys, 5);
            for r in &roots {
                let norm = sys.pairing(&r.coords, &r.coords);
                assert!((norm.to_f64() - 1.0).abs() < TAU_EQ);
                assert!(r.coords.iter().all(|c| c.to_f64() > -TAU_EQ));
                assert_eq!(r.witness.len() + 1, r.depth);
            }
        }
    }

    #[test]
    fn reflection_closure_within_bound() {
        let sys = fixtures::u3();
        let (roots, _) = enumerate_roots(&sys, 5);
        let keys: std::collections::BTreeSet<Vec<i128>> =
            roots.iter().map(|r| grid_key(&r.coords)).collect();
        for r in &roots {
            for i in 0..3 {
                let img = sys.reflect(i, &r.coords);
                if img.iter().all(|c| c.to_f64() > -TAU_EQ) {
                    let c = sys.pairing(&basis_vector(3, i), &r.coords);
                    let expected_depth = if c.to_f64() < -TAU_EQ {
                        r.depth + 1
                    } else if c.to_f64() > TAU_EQ {
                        r.depth - 1
                    } else {
                        continue;
                    };
                    if expected_depth <= 5 {
                        assert!(keys.contains(&grid_key(&img)));
                    }
                }
            }
        }
    }
}
