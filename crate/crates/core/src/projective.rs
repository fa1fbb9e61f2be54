//! Transverse hyperplanes, the normalization map v -> v/phi(v) onto the
//! affine slice V1 = {phi = 1}, the projective action of the group on
//! V1, and the visibility predicate.

use crate::error::{Error, Result};
use crate::gram::{irreducible_components, perron_weight, signature_of_matrix};
use crate::quadric::{line_quadric, QuadricHit};
use crate::scalar::{form_pairing, vec_scale, Scalar, Vector, TAU_EQ};
use crate::system::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransverseMode {
    Sum,
    Sphere,
    Custom,
}

/// A linear form phi over ambient coordinates with phi > 0 on the
/// simple roots; its level set phi = 1 is the normalization slice.
#[derive(Clone, Debug)]
pub struct TransverseForm {
    pub coefficients: Vector,
    pub mode: TransverseMode,
}

impl TransverseForm {
    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (c, x) in self.coefficients.iter().zip(v) {
            acc = acc + c * x;
        }
        acc
    }
}

/// phi(alpha) = 1 for all simple roots: the coordinate-sum form when
/// the simple roots are a basis, and its consistent extension otherwise.
fn sum_form(system: &RootSystem) -> Result<TransverseForm> {
    let n = system.rank();
    let d = system.ambient_dim();
    // Solve V c = 1 where the rows of V are the ambient simple roots.
    let mut rows: Vec<Vector> = Vec::with_capacity(n);
    for sv in system.simple_vectors() {
        let mut r = sv.clone();
        r.push(Scalar::one());
        rows.push(r);
    }
    let coeffs = solve_linear_system(&mut rows, d)
        .ok_or_else(|| Error::Axiom("no transverse form with phi = 1 on all simple roots".into()))?;
    Ok(TransverseForm {
        coefficients: coeffs,
        mode: TransverseMode::Sum,
    })
}

/// Gaussian elimination on an augmented system (last column = rhs).
/// Returns None when inconsistent; free variables are set to 0.
pub fn solve_linear_system(rows: &mut [Vector], unknowns: usize) -> Option<Vector> {
    let m = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let best = (row..m)
            .filter(|&r| rows[r][col].to_f64().abs() > 1e-9)
            .max_by(|&a, &b| {
                rows[a][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&rows[b][col].to_f64().abs())
            });
        let Some(best) = best else { continue };
        rows.swap(row, best);
        let inv = Scalar::one() / &rows[row][col];
        rows[row] = rows[row].iter().map(|x| x * &inv).collect();
        for r in 0..m {
            if r != row && rows[r][col].to_f64().abs() > 1e-12 {
                let f = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                rows[r] = rows[r]
                    .iter()
                    .zip(&pivot_row)
                    .map(|(x, y)| x - &(&f * y))
                    .collect();
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    for r in row..m {
        if rows[r][unknowns].to_f64().abs() > TAU_EQ {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); unknowns];
    for &(r, c) in &pivots {
        x[c] = rows[r][unknowns].clone();
    }
    Some(x)
}

pub fn transverse_form(system: &RootSystem, mode: TransverseMode) -> Result<TransverseForm> {
    match mode {
        TransverseMode::Sum => sum_form(system),
        TransverseMode::Custom => Err(Error::Axiom(
            "custom mode requires explicit coefficients".into(),
        )),
        TransverseMode::Sphere => {
            if irreducible_components(system.gram()).len() != 1 {
                return Err(Error::NotWeaklyHyperbolic);
            }
            let form_f: Vec<Vec<f64>> = system
                .form()
                .iter()
                .map(|r| r.iter().map(Scalar::to_f64).collect())
                .collect();
            let sig = signature_of_matrix(&form_f);
            if sig.negative != 1 || sig.zero != 0 {
                return Err(Error::NotWeaklyHyperbolic);
            }
            let z = perron_weight(system.gram())?;
            let z_scalar: Vector = z.iter().map(|&x| Scalar::Float(x)).collect();
            let z_amb = system.ambient_of(&z_scalar);
            let norm = form_pairing(system.form(), &z_amb, &z_amb).to_f64();
            if norm >= -TAU_EQ {
                return Err(Error::NotWeaklyHyperbolic);
            }
            let scale = (-norm).sqrt();
            let d = system.ambient_dim();
            let mut coeffs = Vec::with_capacity(d);
            for j in 0..d {
                let mut c = 0.0;
                for k in 0..d {
                    c -= form_f[j][k] * z_amb[k].to_f64() / scale;
                }
                coeffs.push(Scalar::Float(c));
            }
            Ok(TransverseForm {
                coefficients: coeffs,
                mode: TransverseMode::Sphere,
            })
        }
    }
}

pub fn custom_form(system: &RootSystem, coefficients: Vector) -> Result<TransverseForm> {
    let tf = TransverseForm {
        coefficients,
        mode: TransverseMode::Custom,
    };
    for (i, sv) in system.simple_vectors().iter().enumerate() {
        if tf.eval(sv).to_f64() <= TAU_EQ {
            return Err(Error::Axiom(format!(
                "transverse form is not positive on simple root {i}"
            )));
        }
    }
    Ok(tf)
}

/// v / phi(v).
pub fn normalize(form: &TransverseForm, v: &[Scalar]) -> Result<Vector> {
    let t = form.eval(v);
    if t.is_zero_within(TAU_EQ) {
        return Err(Error::OnDirectionHyperplane);
    }
    let inv = Scalar::one() / &t;
    Ok(vec_scale(&inv, v))
}

/// w . x for w given as a word in simple reflections (leftmost letter
/// outermost: the word is applied right to left), staying in the part
/// of V1 where the action is defined.
pub fn act_word(
    system: &RootSystem,
    form: &TransverseForm,
    word: &[usize],
    x: &[Scalar],
) -> Result<Vector> {
    let mut v = x.to_vec();
    for (k, &i) in word.iter().rev().enumerate() {
        v = system.reflect_ambient(&system.simple_vectors()[i], &v);
        if form.eval(&v).to_f64() <= TAU_EQ {
            return Err(Error::LeavesDomain { step: k });
        }
    }
    normalize(form, &v)
}

/// Is the isotropic point x visible from v, i.e. does the segment
/// [v, x] meet the isotropic cone only at x?
pub fn visible(system: &RootSystem, x: &[Scalar], v: &[Scalar]) -> bool {
    match line_quadric(system.form(), v, x) {
        Ok(QuadricHit::None) | Err(_) => false,
        Ok(hit) => hit
            .params()
            .iter()
            .all(|t| t.to_f64() >= 1.0 - TAU_EQ || t.to_f64() < -TAU_EQ),
    }
}
