//! Intersection of the line through two points with the isotropic cone
//! Q = {v : <v,v> = 0}, and the nearest intersection point u_Q.

use crate::error::{Error, Result};
use crate::scalar::{form_pairing, vec_add, vec_scale, vec_sub, Scalar, Vector, TAU_EQ};

/// Parameters t with (1-t)u + tv isotropic, ordered along the line.
#[derive(Clone, Debug)]
pub enum QuadricHit {
    None,
    Tangent(Scalar),
    Pair { t_min: Scalar, t_max: Scalar },
}

impl QuadricHit {
    pub fn kind(&self) -> &'static str {
        match self {
            QuadricHit::None => "none",
            QuadricHit::Tangent(_) => "tangent",
            QuadricHit::Pair { .. } => "pair",
        }
    }

    pub fn params(&self) -> Vec<&Scalar> {
        match self {
            QuadricHit::None => vec![],
            QuadricHit::Tangent(t) => vec![t],
            QuadricHit::Pair { t_min, t_max } => vec![t_min, t_max],
        }
    }
}

fn sign_within(x: &Scalar, tol: f64) -> i8 {
    match x {
        Scalar::Exact(r) => {
            use num_traits::Signed;
            if num_traits::Zero::is_zero(r) {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        }
        Scalar::Float(f) => {
            if f.abs() <= tol {
                0
            } else if *f > 0.0 {
                1
            } else {
                -1
            }
        }
    }
}

/// Solves t^2<v-u,v-u> + 2t<u,v-u> + <u,u> = 0.
pub fn line_quadric(form: &[Vec<Scalar>], u: &[Scalar], v: &[Scalar]) -> Result<QuadricHit> {
    let d = vec_sub(v, u);
    let a = form_pairing(form, &d, &d);
    let b = &form_pairing(form, u, &d) * &Scalar::from_int(2);
    let c = form_pairing(form, u, u);
    let (sa, sb, sc) = (
        sign_within(&a, TAU_EQ),
        sign_within(&b, TAU_EQ),
        sign_within(&c, TAU_EQ),
    );
    if sa == 0 {
        if sb == 0 {
            return if sc == 0 {
                Err(Error::Degenerate)
            } else {
                Ok(QuadricHit::None)
            };
        }
        // Degenerate linear equation: single crossing.
        return Ok(QuadricHit::Tangent(-&c / b));
    }
    let disc = &b * &b - Scalar::from_int(4) * &a * &c;
    match sign_within(&disc, TAU_EQ) {
        0 => Ok(QuadricHit::Tangent(-&b / (Scalar::from_int(2) * &a))),
        -1 => Ok(QuadricHit::None),
        _ => {
            let root = disc.sqrt();
            let two_a = Scalar::from_int(2) * &a;
            let t1 = (-&b - &root) / &two_a;
            let t2 = (-&b + &root) / &two_a;
            let (t_min, t_max) = if t1.total_cmp(&t2) == std::cmp::Ordering::Less {
                (t1, t2)
            } else {
                (t2, t1)
            };
            Ok(QuadricHit::Pair { t_min, t_max })
        }
    }
}

/// Point of the segment parametrization at t.
pub fn point_at(u: &[Scalar], v: &[Scalar], t: &Scalar) -> Vector {
    let one_minus = Scalar::one() - t;
    vec_add(&vec_scale(&one_minus, u), &vec_scale(t, v))
}

/// The intersection point of L(u,v) with Q nearest to u in line order.
pub fn u_q(form: &[Vec<Scalar>], u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
    match line_quadric(form, u, v)? {
        QuadricHit::None => Err(Error::NoIntersection),
        QuadricHit::Tangent(t) => Ok(point_at(u, v, &t)),
        QuadricHit::Pair { t_min, .. } => Ok(point_at(u, v, &t_min)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::vec_to_f64;

    fn basis(n: usize, i: usize) -> Vector {
        (0..n)
            .map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    }

    #[test]
    fn d15_pair() {
        let sys = fixtures::d15();
        let (u, v) = (basis(2, 0), basis(2, 1));
        let hit = line_quadric(sys.form(), &u, &v).unwrap();
        match hit {
            QuadricHit::Pair { t_min, t_max } => {
                let s5 = 5f64.sqrt();
                assert!((t_min.to_f64() - (5.0 - s5) / 10.0).abs() < 1e-12);
                assert!((t_max.to_f64() - (5.0 + s5) / 10.0).abs() < 1e-12);
            }
            other => panic!("expected pair, got {:?}", other),
        }
        let p = u_q(sys.form(), &u, &v).unwrap();
        let pf = vec_to_f64(&p);
        let s5 = 5f64.sqrt();
        assert!((pf[0] - (5.0 + s5) / 10.0).abs() < 1e-12);
        assert!((pf[1] - (5.0 - s5) / 10.0).abs() < 1e-12);
        // symmetry: u_Q(v,u) is the other intersection
        let q = u_q(sys.form(), &v, &u).unwrap();
        assert!((q[0].to_f64() - (5.0 - s5) / 10.0).abs() < 1e-12);
    }

    #[test]
    fn aff2_tangent_midpoint() {
        let sys = fixtures::aff2();
        let (u, v) = (basis(2, 0), basis(2, 1));
        match line_quadric(sys.form(), &u, &v).unwrap() {
            QuadricHit::Tangent(t) => assert_eq!(t, Scalar::from_ratio(1, 2)),
            other => panic!("expected tangent, got {:?}", other),
        }
        let p = u_q(sys.form(), &u, &v).unwrap();
        assert_eq!(p[0], Scalar::from_ratio(1, 2));
        assert_eq!(p[1], Scalar::from_ratio(1, 2));
    }

    #[test]
    fn fin3_misses() {
        let sys = fixtures::fin3();
        let (u, v) = (basis(2, 0), basis(2, 1));
        assert!(matches!(
            line_quadric(sys.form(), &u, &v).unwrap(),
            QuadricHit::None
        ));
        assert!(matches!(
            u_q(sys.form(), &u, &v),
            Err(Error::NoIntersection)
        ));
    }

    #[test]
    fn degenerate_rejected() {
        let sys = fixtures::aff2();
        // u on Q, v = 2u: the whole line lies on Q.
        let u: Vector = vec![Scalar::from_ratio(1, 2), Scalar::from_ratio(1, 2)];
        let v: Vector = vec![Scalar::one(), Scalar::one()];
        assert!(matches!(
            line_quadric(sys.form(), &u, &v),
            Err(Error::Degenerate)
        ));
    }
}
