//! The Gram matrix of a simple system, signatures via Jacobi rotations,
//! graph components and the Perron weight vector.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, TAU_EQ, TAU_SIG};

#[derive(Clone, Debug)]
pub struct GramMatrix {
    entries: Vec<Vec<Scalar>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Axiom("empty matrix".into()));
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::Axiom(format!(
                    "matrix is {}x{}, expected square",
                    n,
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = &entries[i][j] - &entries[j][i];
                if !d.is_zero_within(TAU_EQ) {
                    return Err(Error::Axiom(format!("entry ({i},{j}) is not symmetric")));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_exact)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(Scalar::to_f64).collect())
            .collect()
    }

    /// Restriction to an index subset (order preserved).
    pub fn restrict(&self, idx: &[usize]) -> GramMatrix {
        let entries = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        GramMatrix { entries }
    }

    /// Inner product of two coefficient vectors over the simple basis.
    pub fn pairing(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        crate::scalar::form_pairing(&self.entries, u, v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(mat: &[Vec<f64>]) -> Vec<f64> {
    let n = mat.len();
    let mut a: Vec<Vec<f64>> = mat.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off <= 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn signature_of_matrix(mat: &[Vec<f64>]) -> Signature {
    let ev = symmetric_eigenvalues(mat);
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for e in ev {
        if e.abs() <= TAU_SIG {
            sig.zero += 1;
        } else if e > 0.0 {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
    }
    sig
}

pub fn signature_of(gram: &GramMatrix) -> Signature {
    signature_of_matrix(&gram.to_f64())
}

/// Connected components of the Coxeter graph (edge iff the Gram entry
/// is nonzero), as sorted index lists in sorted order.
pub fn irreducible_components(gram: &GramMatrix) -> Vec<Vec<usize>> {
    let n = gram.rank();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && !gram.entry(i, j).is_zero_within(TAU_EQ) {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Perron eigenvector of M = I - A for an irreducible indefinite Gram
/// matrix A, scaled so the largest entry is 1. All entries of the
/// result are positive and A z is entrywise negative.
pub fn perron_weight(gram: &GramMatrix) -> Result<Vec<f64>> {
    let n = gram.rank();
    if irreducible_components(gram).len() != 1 {
        return Err(Error::NotIndefinite("matrix is reducible".into()));
    }
    let sig = signature_of(gram);
    if sig.negative == 0 {
        return Err(Error::NotIndefinite(format!(
            "signature ({},{},{}) has no negative eigenvalue",
            sig.positive, sig.negative, sig.zero
        )));
    }
    let a = gram.to_f64();
    // Power iteration on 2I - A: nonnegative, irreducible, positive
    // diagonal, so the dominant eigenvector is the Perron vector of M.
    let mut z = vec![1.0; n];
    for _ in 0..100_000 {
        let mut next = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let m = if i == j { 2.0 - a[i][j] } else { -a[i][j] };
                next[i] += m * z[j];
            }
        }
        let max = next.iter().cloned().fold(f64::MIN, f64::max);
        for x in &mut next {
            *x /= max;
        }
        let delta: f64 = next
            .iter()
            .zip(&z)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        z = next;
        if delta < 1e-15 {
            break;
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn signatures_of_fixtures() {
        let fin3 = fixtures::fin3().gram().clone();
        assert_eq!(
            signature_of(&fin3),
            Signature {
                positive: 2,
                negative: 0,
                zero: 0
            }
        );
        let aff2 = fixtures::aff2().gram().clone();
        assert_eq!(
            signature_of(&aff2),
            Signature {
                positive: 1,
                negative: 0,
                zero: 1
            }
        );
        // 3I - 2J has eigenvalues 3 - 2*3 = -3 and 3 (twice).
        let u3 = fixtures::u3().gram().clone();
        assert_eq!(
            signature_of(&u3),
            Signature {
                positive: 2,
                negative: 1,
                zero: 0
            }
        );
    }

    #[test]
    fn signature_invariant_under_permutation() {
        let g = fixtures::h334().gram().clone();
        let perm = [2usize, 0, 1];
        let rows: Vec<Vec<Scalar>> = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| g.entry(i, j).clone()).collect())
            .collect();
        let gp = GramMatrix::new(rows).unwrap();
        assert_eq!(signature_of(&g), signature_of(&gp));
    }

    #[test]
    fn components() {
        let u3 = fixtures::u3().gram().clone();
        assert_eq!(irreducible_components(&u3), vec![vec![0, 1, 2]]);
        let quad = fixtures::quad().gram().clone();
        assert_eq!(irreducible_components(&quad).len(), 1);
        // block-diag(AFF2, AFF2)
        let z = Scalar::zero;
        let m1 = Scalar::from_int(-1);
        let one = Scalar::one;
        let g = GramMatrix::new(vec![
            vec![one(), m1.clone(), z(), z()],
            vec![m1.clone(), one(), z(), z()],
            vec![z(), z(), one(), m1.clone()],
            vec![z(), z(), m1.clone(), one()],
        ])
        .unwrap();
        assert_eq!(irreducible_components(&g).len(), 2);
    }

    #[test]
    fn perron_weights() {
        let z = perron_weight(fixtures::u3().gram()).unwrap();
        for x in &z {
            assert!((x - 1.0).abs() < 1e-12);
        }
        let a = fixtures::u3().gram().to_f64();
        for i in 0..3 {
            let az: f64 = (0..3).map(|j| a[i][j] * z[j]).sum();
            assert!((az + 3.0).abs() < 1e-10);
        }

        let z = perron_weight(fixtures::d15().gram()).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-12 && (z[1] - 1.0).abs() < 1e-12);

        assert!(matches!(
            perron_weight(fixtures::a2aff().gram()),
            Err(Error::NotIndefinite(_))
        ));
    }
}
