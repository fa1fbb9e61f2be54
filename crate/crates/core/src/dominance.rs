//! Dominance order on roots (algebraic and geometric forms), the
//! elementary-root fixpoint, fundamental dominances with cover flags,
//! and the limit-point sets they generate.

use crate::error::{Error, Result};
use crate::limits::PointCloud;
use crate::lp;
use crate::projective::{normalize, TransverseForm};
use crate::quadric::{line_quadric, point_at, QuadricHit};
use crate::scalar::{grid_key, vec_neg, vec_to_f64, Scalar, Vector, TAU_EQ, TAU_HULL};
use crate::system::{cmp_coords, enumerate_roots, RootSystem};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct SignedRoot {
    /// Simple-basis coordinates carrying the sign.
    pub coords: Vector,
    /// Depth of the underlying positive root.
    pub depth: usize,
    pub positive: bool,
}

impl SignedRoot {
    pub fn positive_coords(&self) -> Vector {
        if self.positive {
            self.coords.clone()
        } else {
            vec_neg(&self.coords)
        }
    }
}

/// All signed roots of depth <= max_depth, positives first, each block
/// in enumeration order.
pub fn signed_roots(system: &RootSystem, max_depth: usize) -> Vec<SignedRoot> {
    let (roots, _) = enumerate_roots(system, max_depth);
    let mut out: Vec<SignedRoot> = roots
        .iter()
        .map(|r| SignedRoot {
            coords: r.coords.clone(),
            depth: r.depth,
            positive: true,
        })
        .collect();
    for r in &roots {
        out.push(SignedRoot {
            coords: vec_neg(&r.coords),
            depth: r.depth,
            positive: false,
        });
    }
    out
}

fn at_least_one(c: &Scalar) -> bool {
    c.to_f64() >= 1.0 - TAU_EQ
}

/// rho dominates gamma (rho "below" gamma in the dominance order:
/// every group element sending gamma negative sends rho negative).
pub fn dominates(system: &RootSystem, rho: &SignedRoot, gamma: &SignedRoot) -> bool {
    match (rho.positive, gamma.positive) {
        (true, true) => {
            at_least_one(&system.pairing(&rho.coords, &gamma.coords)) && rho.depth <= gamma.depth
        }
        (false, true) => at_least_one(&system.pairing(&rho.coords, &gamma.coords)),
        (true, false) => false,
        (false, false) => {
            let nr = SignedRoot {
                coords: vec_neg(&gamma.coords),
                depth: gamma.depth,
                positive: true,
            };
            let ng = SignedRoot {
                coords: vec_neg(&rho.coords),
                depth: rho.depth,
                positive: true,
            };
            dominates(system, &nr, &ng)
        }
    }
}

/// Geometric form for positive roots: gamma^ is visible from rho^
/// looking at the isotropic cone, i.e. every intersection of the line
/// with Q lies at parameter >= 1 on the rho^ -> gamma^ segment.
/// Near-tangency is settled by the algebraic criterion, which is exact
/// there.
pub fn dominates_geometric(
    system: &RootSystem,
    form: &TransverseForm,
    rho: &SignedRoot,
    gamma: &SignedRoot,
) -> Result<bool> {
    let c = system.pairing(&rho.coords, &gamma.coords).to_f64();
    if (c.abs() - 1.0).abs() <= TAU_EQ {
        return Ok(dominates(system, rho, gamma));
    }
    let r = normalize(form, &system.ambient_of(&rho.coords))?;
    let g = normalize(form, &system.ambient_of(&gamma.coords))?;
    match line_quadric(system.form(), &r, &g)? {
        QuadricHit::None => Ok(false),
        hit => Ok(hit.params().iter().all(|t| t.to_f64() >= 1.0 - TAU_EQ)
            && rho.depth <= gamma.depth),
    }
}

/// Brink-Howlett fixpoint: start from the simple roots and close under
/// reflections along short edges (|<alpha, beta>| < 1).
pub fn elementary_roots(system: &RootSystem, max_iter: usize) -> Result<Vec<Vector>> {
    let n = system.rank();
    let basis = |i: usize| -> Vector {
        (0..n)
            .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
            .collect()
    };
    let mut sigma: Vec<Vector> = (0..n).map(basis).collect();
    let mut seen: BTreeSet<Vec<i128>> = sigma.iter().map(|v| grid_key(v)).collect();
    for _ in 0..max_iter {
        let mut grew = false;
        let current = sigma.clone();
        for beta in &current {
            for i in 0..n {
                let c = system.pairing(&basis(i), beta);
                if c.abs().to_f64() >= 1.0 - TAU_EQ {
                    continue;
                }
                let img = system.reflect(i, beta);
                if img.iter().any(|x| x.to_f64() < -TAU_EQ) {
                    continue; // reflected to a negative root (beta simple)
                }
                if seen.insert(grid_key(&img)) {
                    sigma.push(img);
                    grew = true;
                }
            }
        }
        if !grew {
            sigma.sort_by(|a, b| cmp_coords(a, b));
            return Ok(sigma);
        }
    }
    Err(Error::NoConvergence { max_iter })
}

#[derive(Clone, Debug)]
pub struct DominancePair {
    pub lower: SignedRoot,
    pub upper: SignedRoot,
    pub fundamental: bool,
    /// Cover verified against intermediates up to the search depth only.
    pub cover: bool,
}

/// Is upper - lower in the closed cone K (nonnegative over the simple
/// roots, nonpositive pairing with each of them)?
fn in_k_cone(system: &RootSystem, diff: &[Scalar]) -> bool {
    let n = system.rank();
    let in_cone = if system.relations().is_empty() {
        diff.iter().all(|x| x.to_f64() >= -TAU_EQ)
    } else {
        let gens: Vec<Vec<f64>> = system
            .simple_vectors()
            .iter()
            .map(|v| vec_to_f64(v))
            .collect();
        lp::in_cone(&gens, &vec_to_f64(&system.ambient_of(diff)), TAU_HULL).is_some()
    };
    if !in_cone {
        return false;
    }
    (0..n).all(|i| {
        let delta: Vector = (0..n)
            .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
            .collect();
        system.pairing(diff, &delta).to_f64() <= TAU_EQ
    })
}

/// Dominance adjacency over a signed-root list.
fn dominance_matrix(system: &RootSystem, roots: &[SignedRoot]) -> Vec<Vec<bool>> {
    let n = roots.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates(system, &roots[i], &roots[j]) {
                m[i][j] = true;
            }
        }
    }
    m
}

fn is_cover(dom: &[Vec<bool>], lo: usize, hi: usize) -> bool {
    dom[lo][hi] && (0..dom.len()).all(|k| k == lo || k == hi || !(dom[lo][k] && dom[k][hi]))
}

/// All fundamental dominance pairs (negative lower, positive upper,
/// difference in the K cone) among signed roots of depth <= max_depth,
/// with depth-truncated cover flags.
pub fn fundamental_dominances(system: &RootSystem, max_depth: usize) -> Vec<DominancePair> {
    let roots = signed_roots(system, max_depth);
    let dom = dominance_matrix(system, &roots);
    let sigma_keys: BTreeSet<Vec<i128>> = elementary_roots(system, 1000)
        .map(|s| s.iter().map(|v| grid_key(v)).collect())
        .unwrap_or_default();
    let mut out = Vec::new();
    for lo in 0..roots.len() {
        if roots[lo].positive {
            continue;
        }
        for hi in 0..roots.len() {
            if !roots[hi].positive || !dom[lo][hi] {
                continue;
            }
            let diff = crate::scalar::vec_sub(&roots[hi].coords, &roots[lo].coords);
            if !in_k_cone(system, &diff) {
                continue;
            }
            // Fundamental covers have both endpoints elementary.
            let endpoints_elementary = sigma_keys.contains(&grid_key(&roots[lo].positive_coords()))
                && sigma_keys.contains(&grid_key(&roots[hi].coords));
            let cover = endpoints_elementary && is_cover(&dom, lo, hi);
            out.push(DominancePair {
                lower: roots[lo].clone(),
                upper: roots[hi].clone(),
                fundamental: true,
                cover,
            });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct LimitPointSets {
    pub e_elem: PointCloud,
    pub e_f: PointCloud,
    pub e_cov: PointCloud,
    pub e_fcov: PointCloud,
}

fn add_line_points(
    system: &RootSystem,
    form: &TransverseForm,
    cloud: &mut PointCloud,
    seen: &mut BTreeSet<Vec<i128>>,
    a: &[Scalar],
    b: &[Scalar],
    tag: &str,
) -> Result<()> {
    let ah = normalize(form, &system.ambient_of(a))?;
    let bh = normalize(form, &system.ambient_of(b))?;
    match line_quadric(system.form(), &ah, &bh)? {
        QuadricHit::None => {}
        QuadricHit::Tangent(t) => {
            cloud.push_dedup(seen, point_at(&ah, &bh, &t), tag);
        }
        QuadricHit::Pair { t_min, t_max } => {
            for t in [t_min, t_max] {
                cloud.push_dedup(seen, point_at(&ah, &bh, &t), tag);
            }
        }
    }
    Ok(())
}

/// E_elem from elementary-root pairs; E_f / E_cov / E_fcov from the
/// fundamental / cover / fundamental-cover dominance pairs at depth <=
/// max_depth.
pub fn limit_point_sets(
    system: &RootSystem,
    form: &TransverseForm,
    max_depth: usize,
) -> Result<LimitPointSets> {
    let sigma = elementary_roots(system, 1000)?;
    let mut e_elem = PointCloud::new();
    let mut seen = BTreeSet::new();
    for i in 0..sigma.len() {
        for j in (i + 1)..sigma.len() {
            add_line_points(
                system, form, &mut e_elem, &mut seen, &sigma[i], &sigma[j], "dihedral-pair",
            )?;
        }
    }
    e_elem.sort();

    let roots = signed_roots(system, max_depth);
    let dom = dominance_matrix(system, &roots);
    let fund = fundamental_dominances(system, max_depth);

    let mut e_f = PointCloud::new();
    let mut seen_f = BTreeSet::new();
    let mut e_fcov = PointCloud::new();
    let mut seen_fc = BTreeSet::new();
    for p in &fund {
        add_line_points(
            system,
            form,
            &mut e_f,
            &mut seen_f,
            &p.lower.positive_coords(),
            &p.upper.coords,
            "dihedral-pair",
        )?;
        if p.cover {
            add_line_points(
                system,
                form,
                &mut e_fcov,
                &mut seen_fc,
                &p.lower.positive_coords(),
                &p.upper.coords,
                "dihedral-pair",
            )?;
        }
    }
    e_f.sort();
    e_fcov.sort();

    let mut e_cov = PointCloud::new();
    let mut seen_c = BTreeSet::new();
    for lo in 0..roots.len() {
        for hi in 0..roots.len() {
            if lo != hi && is_cover(&dom, lo, hi) {
                add_line_points(
                    system,
                    form,
                    &mut e_cov,
                    &mut seen_c,
                    &roots[lo].positive_coords(),
                    &roots[hi].positive_coords(),
                    "dihedral-pair",
                )?;
            }
        }
    }
    e_cov.sort();

    Ok(LimitPointSets {
        e_elem,
        e_f,
        e_cov,
        e_fcov,
    })
}

#[derive(Clone, Debug)]
pub struct FacialRestrictionReport {
    pub sigma_ok: bool,
    pub e2_ok: bool,
    pub e2_subsystem: PointCloud,
    pub e2_restricted: PointCloud,
    pub violations: Vec<String>,
}

/// Checks that elementary roots and dihedral limit points restrict to
/// the facial subsystem on I exactly.
pub fn facial_restriction_check(
    system: &RootSystem,
    form: &TransverseForm,
    subset: &[usize],
    max_depth: usize,
) -> Result<FacialRestrictionReport> {
    let mut subset: Vec<usize> = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    let hat: Vec<Vec<f64>> = system
        .simple_vectors()
        .iter()
        .map(|v| {
            normalize(form, v)
                .map(|p| vec_to_f64(&p))
                .unwrap_or_else(|_| vec_to_f64(v))
        })
        .collect();
    if !lp::is_face(&hat, &subset) {
        return Err(Error::NotFacial(subset));
    }
    let sub = system.subsystem(&subset)?;
    let sub_form = crate::projective::transverse_form(&sub, crate::projective::TransverseMode::Sum)?;
    let mut violations = Vec::new();

    // Sigma identity: Sigma_I = Sigma(Phi) restricted to support in I.
    let embed = |v: &[Scalar]| -> Vector {
        let mut full = vec![Scalar::zero(); system.rank()];
        for (slot, &i) in subset.iter().enumerate() {
            full[i] = v[slot].clone();
        }
        full
    };
    let sigma_sub: BTreeSet<Vec<i128>> = elementary_roots(&sub, 1000)?
        .iter()
        .map(|v| grid_key(&embed(v)))
        .collect();
    let sigma_full_restricted: BTreeSet<Vec<i128>> = elementary_roots(system, 1000)?
        .iter()
        .filter(|v| {
            v.iter()
                .enumerate()
                .all(|(i, c)| subset.contains(&i) || c.is_zero_within(TAU_EQ))
        })
        .map(|v| grid_key(v))
        .collect();
    let sigma_ok = sigma_sub == sigma_full_restricted;
    if !sigma_ok {
        violations.push("elementary-root restriction identity fails".into());
    }

    // E2 identity on the face.
    let e2_sub_local = crate::limits::dihedral_limit_roots(&sub, &sub_form, max_depth)?;
    let mut e2_subsystem = PointCloud::new();
    let mut seen = BTreeSet::new();
    for p in &e2_sub_local.points {
        // Subsystem ambient coords -> coefficients over Delta_I -> full ambient.
        let coeffs = sub_coeffs(&sub, p);
        let full = system.ambient_of(&embed(&coeffs));
        let full = normalize(form, &full)?;
        e2_subsystem.push_dedup(&mut seen, full, "dihedral-pair");
    }
    e2_subsystem.sort();

    let e2_full = crate::limits::dihedral_limit_roots(system, form, max_depth)?;
    let face_pts: Vec<Vec<f64>> = subset.iter().map(|&i| hat[i].clone()).collect();
    let mut e2_restricted = PointCloud::new();
    let mut seen_r = BTreeSet::new();
    // Strict membership: E is Cantor-like near face boundaries, so a
    // loose tolerance scoops up genuine off-face limit points.
    for p in &e2_full.points {
        if lp::in_hull(&face_pts, &vec_to_f64(p), 1e-9) {
            e2_restricted.push_dedup(&mut seen_r, p.clone(), "dihedral-pair");
        }
    }
    e2_restricted.sort();

    let e2_ok = clouds_match(&e2_subsystem, &e2_restricted, 1e-9);
    if !e2_ok {
        violations.push("dihedral limit-point restriction identity fails".into());
    }

    Ok(FacialRestrictionReport {
        sigma_ok,
        e2_ok,
        e2_subsystem,
        e2_restricted,
        violations,
    })
}

fn sub_coeffs(sub: &RootSystem, ambient: &[Scalar]) -> Vector {
    sub.coefficients_of(ambient)
}

/// Two-sided match: every point of each cloud within tol of the other.
/// Finite-depth clouds pick up distinct limit points converging to the
/// same accumulation point, so cardinality comparison is meaningless.
fn clouds_match(a: &PointCloud, b: &PointCloud, tol: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() == b.is_empty();
    }
    let one_way = |x: &PointCloud, y: &PointCloud| {
        x.points.iter().all(|p| {
            y.points
                .iter()
                .map(|q| crate::scalar::euclid_dist(p, q))
                .fold(f64::INFINITY, f64::min)
                <= tol
        })
    };
    one_way(a, b) && one_way(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::projective::{transverse_form, TransverseMode};

    fn sum(sys: &RootSystem) -> TransverseForm {
        transverse_form(sys, TransverseMode::Sum).unwrap()
    }

    fn pos(coords: Vec<Scalar>, depth: usize) -> SignedRoot {
        SignedRoot {
            coords,
            depth,
            positive: true,
        }
    }

    #[test]
    fn dominates_examples() {
        let aff = fixtures::aff2();
        let alpha = pos(vec![Scalar::one(), Scalar::zero()], 1);
        let top = pos(vec![Scalar::from_int(2), Scalar::one()], 2);
        assert!(dominates(&aff, &alpha, &top));
        assert!(!dominates(&aff, &top, &alpha));

        let d15 = fixtures::d15();
        let alpha = pos(vec![Scalar::one(), Scalar::zero()], 1);
        let top = pos(vec![Scalar::from_int(3), Scalar::one()], 2);
        assert!(dominates(&d15, &alpha, &top));

        let fin = fixtures::fin3();
        let a = pos(vec![Scalar::one(), Scalar::zero()], 1);
        let b = pos(vec![Scalar::zero(), Scalar::one()], 1);
        assert!(!dominates(&fin, &a, &b));
        // reflexivity
        assert!(dominates(&fin, &a, &a));
    }

    #[test]
    fn geometric_matches_algebraic() {
        for sys in [
            fixtures::fin3(),
            fixtures::aff2(),
            fixtures::d15(),
            fixtures::u3(),
        ] {
            let form = sum(&sys);
            let (roots, _) = enumerate_roots(&sys, 4);
            let signed: Vec<SignedRoot> = roots
                .iter()
                .map(|r| pos(r.coords.clone(), r.depth))
                .collect();
            for i in 0..signed.len() {
                for j in 0..signed.len() {
                    if i == j {
                        continue;
                    }
                    let alg = dominates(&sys, &signed[i], &signed[j]);
                    let geo = dominates_geometric(&sys, &form, &signed[i], &signed[j]).unwrap();
                    assert_eq!(alg, geo, "mismatch at pair ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn elementary_sets() {
        let sigma = elementary_roots(&fixtures::aff2(), 100).unwrap();
        assert_eq!(sigma.len(), 2);
        let sigma = elementary_roots(&fixtures::d15(), 100).unwrap();
        assert_eq!(sigma.len(), 2);
        let sigma = elementary_roots(&fixtures::fin3(), 100).unwrap();
        assert_eq!(sigma.len(), 3);
    }

    #[test]
    fn elementary_brute_force_cross_check() {
        // Elementary = dominates no other positive root.
        for sys in [fixtures::aff2(), fixtures::d15()] {
            let sigma = elementary_roots(&sys, 100).unwrap();
            let keys: BTreeSet<Vec<i128>> = sigma.iter().map(|v| grid_key(v)).collect();
            let (roots, _) = enumerate_roots(&sys, 20);
            for r in &roots {
                let a = pos(r.coords.clone(), r.depth);
                let dominates_other = roots.iter().any(|o| {
                    grid_key(&o.coords) != grid_key(&r.coords)
                        && dominates(&sys, &pos(o.coords.clone(), o.depth), &a)
                });
                assert_eq!(!dominates_other, keys.contains(&grid_key(&r.coords)));
            }
        }
    }

    #[test]
    fn fundamental_pairs() {
        let pairs = fundamental_dominances(&fixtures::aff2(), 2);
        assert!(pairs.iter().any(|p| {
            vec_to_f64(&p.lower.coords) == vec![-1.0, 0.0]
                && vec_to_f64(&p.upper.coords) == vec![0.0, 1.0]
        }));
        let pairs = fundamental_dominances(&fixtures::d15(), 2);
        assert!(pairs.iter().any(|p| {
            vec_to_f64(&p.lower.coords) == vec![-1.0, 0.0]
                && vec_to_f64(&p.upper.coords) == vec![0.0, 1.0]
        }));
        assert!(fundamental_dominances(&fixtures::fin3(), 3).is_empty());
    }

    #[test]
    fn limit_sets_dihedral() {
        let sys = fixtures::d15();
        let sets = limit_point_sets(&sys, &sum(&sys), 2).unwrap();
        assert_eq!(sets.e_elem.len(), 2);
        assert_eq!(sets.e_f.len(), 2);
        let sys = fixtures::aff2();
        let sets = limit_point_sets(&sys, &sum(&sys), 2).unwrap();
        for c in [&sets.e_elem, &sets.e_f, &sets.e_cov, &sets.e_fcov] {
            assert_eq!(c.len(), 1, "expected singleton");
            assert_eq!(vec_to_f64(&c.points[0]), vec![0.5, 0.5]);
        }
        let sys = fixtures::fin3();
        let sets = limit_point_sets(&sys, &sum(&sys), 2).unwrap();
        assert!(sets.e_elem.is_empty() && sets.e_cov.is_empty());
    }

    #[test]
    fn e_fcov_subset_of_e_elem() {
        for sys in [fixtures::d15(), fixtures::u3()] {
            let sets = limit_point_sets(&sys, &sum(&sys), 3).unwrap();
            let elem_keys: BTreeSet<Vec<i128>> =
                sets.e_elem.points.iter().map(|p| grid_key(p)).collect();
            for p in &sets.e_fcov.points {
                assert!(elem_keys.contains(&grid_key(p)));
            }
        }
    }

    #[test]
    fn facial_restriction() {
        let sys = fixtures::u3();
        let form = sum(&sys);
        let report = facial_restriction_check(&sys, &form, &[0, 1], 3).unwrap();
        assert!(report.sigma_ok && report.e2_ok);
        assert_eq!(report.e2_subsystem.len(), 2);

        let quad = fixtures::quad();
        let qform = sum(&quad);
        let report = facial_restriction_check(&quad, &qform, &[0, 1], 3).unwrap();
        assert!(report.sigma_ok && report.e2_ok);
        assert_eq!(report.e2_subsystem.len(), 1);

        assert!(matches!(
            facial_restriction_check(&quad, &qform, &[0, 2], 3),
            Err(Error::NotFacial(_))
        ));
    }
}
