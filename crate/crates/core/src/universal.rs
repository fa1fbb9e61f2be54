//! Condensation of root pairs along their dihedral line, construction
//! of generic universal reflection subsystems (all pairwise products
//! strictly below -1), and the ladder experiment measuring how well
//! their limit points approximate the limit-root set.

use crate::error::{Error, Result};
use crate::gram::{irreducible_components, signature_of};
use crate::limits::{dihedral_limit_roots, directed_distance, hausdorff, PointCloud};
use crate::projective::{normalize, TransverseForm};
use crate::quadric::{line_quadric, point_at, QuadricHit};
use crate::scalar::{vec_add, vec_scale, Scalar, Vector, TAU_EQ};
use crate::system::{enumerate_roots, RootSystem};
use std::collections::BTreeSet;

/// p_n from p_{k+1} = 2 cosh(lambda) p_k - p_{k-1}, p_0 = 0, p_1 = 1.
/// Exact whenever cosh(lambda) is.
pub fn chebyshev_weight(n: usize, cosh_lambda: &Scalar) -> Scalar {
    let two_c = Scalar::from_int(2) * cosh_lambda;
    let (mut prev, mut cur) = (Scalar::zero(), Scalar::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &two_c * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Clone, Debug)]
pub struct CondensationStep {
    pub n: usize,
    pub lambda: f64,
    pub beta_i: Vector,
    pub beta_j: Vector,
    pub product: Scalar,
}

const MAX_CONDENSATION_N: usize = 64;

/// Replaces a pair of positive roots with <a,b> <= -1 by the conjugate
/// pair (s_a s_b)^n a, (s_b s_a)^n b on the same line, with the
/// smallest n >= 1 pushing all products against the pair and the
/// context roots strictly below -N.
pub fn condense_pair(
    system: &RootSystem,
    a: &Vector,
    b: &Vector,
    context: &[Vector],
    n_bound: f64,
) -> Result<CondensationStep> {
    let c = system.pairing(a, b);
    if c.to_f64() > -1.0 + TAU_EQ {
        return Err(Error::NotDominantPair(c.to_f64()));
    }
    let cosh_lambda = -&c;
    let lambda = cosh_lambda.to_f64().max(1.0).acosh();
    for n in 1..=MAX_CONDENSATION_N {
        let p_hi = chebyshev_weight(2 * n + 1, &cosh_lambda);
        let p_lo = chebyshev_weight(2 * n, &cosh_lambda);
        let beta_i = vec_add(&vec_scale(&p_hi, a), &vec_scale(&p_lo, b));
        let beta_j = vec_add(&vec_scale(&p_lo, a), &vec_scale(&p_hi, b));
        let product = system.pairing(&beta_i, &beta_j);
        let ok = product.to_f64() < -n_bound
            && context.iter().all(|g| {
                system.pairing(&beta_i, g).to_f64() < -n_bound
                    && system.pairing(&beta_j, g).to_f64() < -n_bound
            });
        if ok {
            return Ok(CondensationStep {
                n,
                lambda,
                beta_i,
                beta_j,
                product,
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no condensation index up to {MAX_CONDENSATION_N} reaches -{n_bound}"
    )))
}

fn require_indefinite(system: &RootSystem) -> Result<()> {
    if system.rank() < 2
        || irreducible_components(system.gram()).len() != 1
        || signature_of(system.gram()).negative == 0
    {
        return Err(Error::NotIndefinite(
            "requires an irreducible indefinite system of rank >= 2".into(),
        ));
    }
    Ok(())
}

const SEED_MARGIN: f64 = 1e-3;

/// Greedy spanning seed: roots in enumeration order with pairwise
/// products <= -1 - margin, until the span is full and the size bound
/// is met.
fn greedy_seed(system: &RootSystem, min_size: usize) -> Result<Vec<Vector>> {
    let target = min_size.max(system.ambient_dim());
    for depth in 2..=16 {
        let (roots, _) = enumerate_roots(system, depth);
        let mut seed: Vec<Vector> = Vec::new();
        for r in &roots {
            if seed.len() >= target && span_dim(system, &seed) == system.ambient_dim() {
                break;
            }
            if seed
                .iter()
                .all(|s| system.pairing(&r.coords, s).to_f64() <= -1.0 - SEED_MARGIN)
            {
                seed.push(r.coords.clone());
            }
        }
        if seed.len() >= target && span_dim(system, &seed) == system.ambient_dim() {
            return Ok(seed);
        }
    }
    Err(Error::SearchExhausted(
        "no spanning seed with pairwise products below -1 found up to depth 16".into(),
    ))
}

fn span_dim(system: &RootSystem, roots: &[Vector]) -> usize {
    let rows: Vec<Vec<Scalar>> = roots.iter().map(|r| system.ambient_of(r)).collect();
    let (pivots, _) = crate::system::rref(&rows, system.ambient_dim());
    pivots.len()
}

/// One condensation sweep: every pair is condensed once (n >= 1),
/// sequentially in lexicographic order.
fn condensation_sweep(system: &RootSystem, seed: &mut [Vector], n_bound: f64) -> Result<()> {
    let k = seed.len();
    for i in 0..k {
        for j in (i + 1)..k {
            let context: Vec<Vector> = (0..k)
                .filter(|&t| t != i && t != j)
                .map(|t| seed[t].clone())
                .collect();
            let step = condense_pair(system, &seed[i], &seed[j], &context, n_bound)?;
            seed[i] = step.beta_i;
            seed[j] = step.beta_j;
        }
    }
    Ok(())
}

/// A set of at least max(m, span dim) positive roots spanning the
/// ambient space with all pairwise products < -N.
pub fn generic_universal_subsystem(
    system: &RootSystem,
    n_bound: f64,
    m: usize,
) -> Result<Vec<Vector>> {
    require_indefinite(system)?;
    let mut seed = greedy_seed(system, m)?;
    for _ in 0..MAX_CONDENSATION_N {
        let satisfied = all_pairs_below(system, &seed, n_bound);
        if satisfied {
            return Ok(seed);
        }
        condensation_sweep(system, &mut seed, n_bound)?;
    }
    Err(Error::SearchExhausted(
        "condensation did not reach the product bound".into(),
    ))
}

fn all_pairs_below(system: &RootSystem, seed: &[Vector], n_bound: f64) -> bool {
    for i in 0..seed.len() {
        for j in (i + 1)..seed.len() {
            if system.pairing(&seed[i], &seed[j]).to_f64() >= -n_bound {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LadderRung {
    pub n_bound: f64,
    pub size: usize,
    /// sup over the normalized subsystem roots of the distance to the
    /// dihedral limit-root sample.
    pub directed: f64,
    /// Hausdorff distance between hull vertices of the subsystem's
    /// limit points and of the imaginary-cone orbit sample.
    pub hull_hausdorff: f64,
}

/// The approximation ladder: one condensation sweep per rung at
/// increasing product bounds, measured against E2(depth) and a Z
/// sample.
pub fn approximation_report(
    system: &RootSystem,
    form: &TransverseForm,
    ladder: &[f64],
    depth: usize,
    orbit_length: usize,
) -> Result<Vec<LadderRung>> {
    require_indefinite(system)?;
    let e2 = dihedral_limit_roots(system, form, depth)?;
    let z_sample = crate::cone::imaginary_orbit(system, form, orbit_length)?.cloud;
    let z_hull = crate::cone::extreme_points(&z_sample);
    let seed0 = greedy_seed(system, system.ambient_dim())?;
    let mut rungs = Vec::with_capacity(ladder.len());
    for &n_bound in ladder {
        let mut seed = seed0.clone();
        condensation_sweep(system, &mut seed, n_bound)?;
        let mut psi_hat = PointCloud::new();
        let mut seen = BTreeSet::new();
        for r in &seed {
            psi_hat.push_dedup(&mut seen, normalize(form, &system.ambient_of(r))?, "orbit");
        }
        psi_hat.sort();
        let directed = directed_distance(&psi_hat, &e2)?;
        // limit points of the condensed pairs
        let mut limits = PointCloud::new();
        let mut seen_l = BTreeSet::new();
        for i in 0..psi_hat.len() {
            for j in (i + 1)..psi_hat.len() {
                if let QuadricHit::Pair { t_min, t_max } =
                    line_quadric(system.form(), &psi_hat.points[i], &psi_hat.points[j])?
                {
                    for t in [t_min, t_max] {
                        limits.push_dedup(
                            &mut seen_l,
                            point_at(&psi_hat.points[i], &psi_hat.points[j], &t),
                            "dihedral-pair",
                        );
                    }
                }
            }
        }
        limits.sort();
        let limits_hull = crate::cone::extreme_points(&limits);
        let hull_hausdorff = hausdorff(&limits_hull, &z_hull)?;
        rungs.push(LadderRung {
            n_bound,
            size: seed.len(),
            directed,
            hull_hausdorff,
        });
    }
    Ok(rungs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gram::GramMatrix;
    use crate::projective::{transverse_form, TransverseMode};
    use crate::system::validate_simple_system;

    fn sum(sys: &RootSystem) -> TransverseForm {
        transverse_form(sys, TransverseMode::Sum).unwrap()
    }

    #[test]
    fn chebyshev_values() {
        let c = Scalar::from_ratio(3, 2);
        assert_eq!(chebyshev_weight(1, &c), Scalar::one());
        assert_eq!(chebyshev_weight(2, &c), Scalar::from_int(3));
        assert_eq!(chebyshev_weight(3, &c), Scalar::from_int(8));
        let one = Scalar::one();
        assert_eq!(chebyshev_weight(5, &one), Scalar::from_int(5));
        assert_eq!(chebyshev_weight(0, &one), Scalar::zero());
    }

    #[test]
    fn condense_d15_exact() {
        let sys = fixtures::d15();
        let a: Vector = vec![Scalar::one(), Scalar::zero()];
        let b: Vector = vec![Scalar::zero(), Scalar::one()];
        let step = condense_pair(&sys, &a, &b, &[], 10.0).unwrap();
        assert_eq!(step.n, 1);
        assert_eq!(step.beta_i, vec![Scalar::from_int(8), Scalar::from_int(3)]);
        assert_eq!(step.beta_j, vec![Scalar::from_int(3), Scalar::from_int(8)]);
        assert_eq!(step.product, Scalar::from_ratio(-123, 2));
        assert!(step.product.is_exact());
    }

    #[test]
    fn condense_d15_float_matches_cosh() {
        let g = GramMatrix::new(vec![
            vec![Scalar::Float(1.0), Scalar::Float(-1.5)],
            vec![Scalar::Float(-1.5), Scalar::Float(1.0)],
        ])
        .unwrap();
        let sys = RootSystem::realize(g, vec![]).unwrap();
        let a: Vector = vec![Scalar::one(), Scalar::zero()];
        let b: Vector = vec![Scalar::zero(), Scalar::one()];
        let step = condense_pair(&sys, &a, &b, &[], 10.0).unwrap();
        let expected = -(5.0 * 1.5f64.acosh()).cosh();
        assert!((step.product.to_f64() - expected).abs() < 1e-9);
    }

    #[test]
    fn condense_monotone_and_rejections() {
        let sys = fixtures::d15();
        let a: Vector = vec![Scalar::one(), Scalar::zero()];
        let b: Vector = vec![Scalar::zero(), Scalar::one()];
        let s1 = condense_pair(&sys, &a, &b, &[], 1.0).unwrap();
        let s2 = condense_pair(&sys, &a, &b, &[], 100.0).unwrap();
        assert!(s2.product.to_f64() < s1.product.to_f64());

        let fin = fixtures::fin3();
        assert!(matches!(
            condense_pair(&fin, &a, &b, &[], 2.0),
            Err(Error::NotDominantPair(_))
        ));
    }

    #[test]
    fn cosh_identity() {
        let sys = fixtures::h334();
        // any pair with product <= -1 after conjugation; use the d15
        // line instead for a clean scan over products in [-5, -1]
        for k in 0..20 {
            let c = -1.0 - 4.0 * (k as f64) / 19.0;
            let g = GramMatrix::new(vec![
                vec![Scalar::Float(1.0), Scalar::Float(c)],
                vec![Scalar::Float(c), Scalar::Float(1.0)],
            ])
            .unwrap();
            let dih = RootSystem::realize(g, vec![]).unwrap();
            let a: Vector = vec![Scalar::one(), Scalar::zero()];
            let b: Vector = vec![Scalar::zero(), Scalar::one()];
            // at c = -1 the product is pinned at -1, so aim just above
            let step = condense_pair(&dih, &a, &b, &[], 0.99).unwrap();
            let lam = (-c).acosh();
            let expected = -((4.0 * step.n as f64 + 1.0) * lam).cosh();
            assert!((step.product.to_f64() - expected).abs() < 1e-6);
        }
        drop(sys);
    }

    #[test]
    fn universal_subsystems() {
        let sys = fixtures::u3();
        let psi = generic_universal_subsystem(&sys, 1.0, 3).unwrap();
        assert_eq!(psi.len(), 3);
        // Delta itself qualifies
        for (i, p) in psi.iter().enumerate() {
            assert_eq!(p[i], Scalar::one());
        }

        let sys = fixtures::d15();
        let psi = generic_universal_subsystem(&sys, 10.0, 2).unwrap();
        assert_eq!(psi.len(), 2);
        assert!(sys.pairing(&psi[0], &psi[1]).to_f64() <= -61.5 + 1e-9);

        let sys = fixtures::h334();
        let psi = generic_universal_subsystem(&sys, 1.0, 3).unwrap();
        assert!(psi.len() >= 3);
        for i in 0..psi.len() {
            assert!((sys.pairing(&psi[i], &psi[i]).to_f64() - 1.0).abs() < 1e-9);
            for j in (i + 1)..psi.len() {
                assert!(sys.pairing(&psi[i], &psi[j]).to_f64() < -1.0);
            }
        }
        let rows: Vec<Vec<Scalar>> = psi.iter().map(|r| sys.ambient_of(r)).collect();
        let (pivots, _) = crate::system::rref(&rows, 3);
        assert_eq!(pivots.len(), 3);
        // the pairwise Gram of the output is a valid simple system
        let gram_rows: Vec<Vec<Scalar>> = psi
            .iter()
            .map(|a| psi.iter().map(|b| sys.pairing(a, b)).collect())
            .collect();
        let g = GramMatrix::new(gram_rows).unwrap();
        assert!(validate_simple_system(&g, &[]).ok);

        assert!(matches!(
            generic_universal_subsystem(&fixtures::fin3(), 1.0, 2),
            Err(Error::NotIndefinite(_))
        ));
    }

    #[test]
    fn ladder_d15() {
        let sys = fixtures::d15();
        let form = sum(&sys);
        let rungs =
            approximation_report(&sys, &form, &[1.0, 100.0, 1e4, 1e6], 2, 3).unwrap();
        assert_eq!(rungs.len(), 4);
        assert!((rungs[0].directed - 0.00518).abs() < 1e-4);
        for w in rungs.windows(2) {
            assert!(w[1].directed < w[0].directed);
        }
    }

    #[test]
    fn ladder_u3_monotone() {
        let sys = fixtures::u3();
        let form = sum(&sys);
        let rungs =
            approximation_report(&sys, &form, &[1.0, 100.0, 1e4, 1e6], 5, 3).unwrap();
        for w in rungs.windows(2) {
            assert!(w[1].directed <= w[0].directed + 1e-12);
        }
    }
}
