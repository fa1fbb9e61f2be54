//! Dual-mode scalar: exact rationals where the input data is rational,
//! binary64 everywhere else. Mixed operations degrade to float.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value comparison tolerance used throughout the crate.
pub const TAU_EQ: f64 = 1e-9;
/// Eigenvalue zero threshold for signatures.
pub const TAU_SIG: f64 = 1e-7;
/// Convex-hull membership tolerance.
pub const TAU_HULL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Parses "p/q" or a plain integer into an exact rational.
    pub fn parse_ratio(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((p, q)) = text.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Scalar::Exact(BigRational::new(p, q)))
        } else {
            let p: BigInt = text.parse().ok()?;
            Some(Scalar::Exact(BigRational::from_integer(p)))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => *f,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero() || r.to_f64().map_or(false, |f| f.abs() <= tol),
            Scalar::Float(f) => f.abs() <= tol,
        }
    }

    /// Square root; stays exact only when the reduced rational is a
    /// perfect square.
    pub fn sqrt(&self) -> Scalar {
        if let Scalar::Exact(r) = self {
            if r.is_zero() {
                return Scalar::zero();
            }
            if !r.is_negative() {
                let num = r.numer();
                let den = r.denom();
                let sn = num.sqrt();
                let sd = den.sqrt();
                if &(&sn * &sn) == num && &(&sd * &sd) == den {
                    return Scalar::Exact(BigRational::new(sn, sd));
                }
            }
        }
        Scalar::Float(self.to_f64().sqrt())
    }

    /// Total order for deterministic sorting; exact pairs compare
    /// exactly, everything else through f64.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    fn binop(
        &self,
        rhs: &Scalar,
        fe: impl Fn(&BigRational, &BigRational) -> BigRational,
        ff: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(fe(a, b)),
            _ => Scalar::Float(ff(self.to_f64(), rhs.to_f64())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{}", r),
            Scalar::Float(x) => write!(f, "{}", x),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binop(rhs, |a, b| a $op b, |a, b| a $op b)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);
impl_binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Coordinate vector over either the simple basis or the ambient basis.
pub type Vector = Vec<Scalar>;

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_to_f64(a: &[Scalar]) -> Vec<f64> {
    a.iter().map(Scalar::to_f64).collect()
}

/// Evaluates the symmetric bilinear form given by `form` on (u, v).
pub fn form_pairing(form: &[Vec<Scalar>], u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            acc = acc + ui * &form[i][j] * vj;
        }
    }
    acc
}

/// Euclidean distance between the f64 images of two vectors.
pub fn euclid_dist(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x.to_f64() - y.to_f64();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Rounds to 12 significant digits (the numeric output precision).
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", 11, x).parse().unwrap_or(x)
}

/// Dedup key: coordinates snapped to a 1e-8 grid.
pub fn grid_key(v: &[Scalar]) -> Vec<i128> {
    v.iter()
        .map(|x| (x.to_f64() * 1e8).round() as i128)
        .collect()
}
