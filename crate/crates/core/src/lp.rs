//! Small dense two-phase simplex (Bland's rule) plus the handful of
//! feasibility queries the geometry needs: convex-hull and cone
//! membership, face tests and extreme points.

const EPS: f64 = 1e-9;
const MAX_ITER: usize = 20_000;

pub enum Lp {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
    Unbounded,
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col];
    for x in t[row].iter_mut() {
        *x /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && r[col].abs() > 1e-300 {
            let f = r[col];
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
    }
    basis[row] = col;
}

/// Runs simplex on the tableau minimizing `obj` over columns < ncols.
/// Returns the objective value, or None if unbounded / cycling cap hit.
fn run_simplex(t: &mut [Vec<f64>], basis: &mut [usize], obj: &[f64], ncols: usize) -> Option<f64> {
    let m = t.len();
    let last = t[0].len() - 1;
    for _ in 0..MAX_ITER {
        let mut entering = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let rc: f64 =
                obj[j] - basis.iter().enumerate().map(|(i, &b)| obj[b] * t[i][j]).sum::<f64>();
            if rc < -EPS {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Some(
                basis
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| obj[b] * t[i][last])
                    .sum(),
            );
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][j] > EPS {
                let r = t[i][last] / t[i][j];
                if r < best - 1e-12 || (r < best + 1e-12 && leave.map_or(true, |l| basis[i] < basis[l]))
                {
                    best = r;
                    leave = Some(i);
                }
            }
        }
        let i = leave?;
        pivot(t, basis, i, j);
    }
    None
}

/// Minimizes c.x subject to Ax = b, x >= 0.
pub fn solve(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Lp {
    solve_with_tol(a, b, c, 1e-7)
}

pub fn solve_with_tol(a: &[Vec<f64>], b: &[f64], c: &[f64], feas_tol: f64) -> Lp {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { c.len() };
    let total = n + m;
    let mut t: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut r = vec![0.0; total + 1];
            if b[i] < 0.0 {
                for j in 0..n {
                    r[j] = -a[i][j];
                }
                r[total] = -b[i];
            } else {
                r[..n].copy_from_slice(&a[i]);
                r[total] = b[i];
            }
            r[n + i] = 1.0;
            r
        })
        .collect();
    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();
    let obj1: Vec<f64> = (0..total).map(|j| if j >= n { 1.0 } else { 0.0 }).collect();
    match run_simplex(&mut t, &mut basis, &obj1, total) {
        Some(v) if v <= feas_tol => {}
        _ => return Lp::Infeasible,
    }
    // Drive remaining artificials out of the basis where possible.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t[i][j].abs() > EPS) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }
    for row in t.iter_mut() {
        for j in n..total {
            row[j] = 0.0;
        }
    }
    let mut obj2 = vec![0.0; total];
    obj2[..n].copy_from_slice(c);
    match run_simplex(&mut t, &mut basis, &obj2, n) {
        None => Lp::Unbounded,
        Some(_) => {
            let last = total;
            let mut x = vec![0.0; n];
            for (i, &bi) in basis.iter().enumerate() {
                if bi < n {
                    x[bi] = t[i][last];
                }
            }
            let objective = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
            Lp::Optimal { x, objective }
        }
    }
}

/// Is there x >= 0 with Ax = b? Returns a witness.
pub fn feasible(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    match solve_with_tol(a, b, &vec![0.0; n], tol) {
        Lp::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Does the row span of `rows` contain a nonzero nonnegative vector?
pub fn span_contains_nonneg(rows: &[Vec<f64>]) -> bool {
    if rows.is_empty() {
        return false;
    }
    let r = rows.len();
    let n = rows[0].len();
    let nv = 2 * r + n;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    // v_j - sum_i (lam+_i - lam-_i) rows[i][j] = 0, v >= 0, sum v = 1.
    for j in 0..n {
        let mut row = vec![0.0; nv];
        for i in 0..r {
            row[i] = -rows[i][j];
            row[r + i] = rows[i][j];
        }
        row[2 * r + j] = 1.0;
        a.push(row);
        b.push(0.0);
    }
    let mut row = vec![0.0; nv];
    for j in 0..n {
        row[2 * r + j] = 1.0;
    }
    a.push(row);
    b.push(1.0);
    feasible(&a, &b, 1e-7).is_some()
}

/// x in conv(points)?
pub fn in_hull(points: &[Vec<f64>], x: &[f64], tol: f64) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = x.len();
    let k = points.len();
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for c in 0..d {
        a.push(points.iter().map(|p| p[c]).collect());
        b.push(x[c]);
    }
    a.push(vec![1.0; k]);
    b.push(1.0);
    feasible(&a, &b, tol).is_some()
}

/// x in cone(generators)? Returns the coefficient witness.
pub fn in_cone(generators: &[Vec<f64>], x: &[f64], tol: f64) -> Option<Vec<f64>> {
    if generators.is_empty() {
        return None;
    }
    let d = x.len();
    let mut a = Vec::with_capacity(d);
    let mut b = Vec::with_capacity(d);
    for c in 0..d {
        a.push(generators.iter().map(|g| g[c]).collect());
        b.push(x[c]);
    }
    feasible(&a, &b, tol)
}

/// Is `subset` the vertex set of a face of conv(points)? True iff some
/// affine functional is constant on the subset and strictly smaller on
/// the rest.
pub fn is_face(points: &[Vec<f64>], subset: &[usize]) -> bool {
    let d = if points.is_empty() { return false } else { points[0].len() };
    let inside: Vec<bool> = {
        let mut v = vec![false; points.len()];
        for &i in subset {
            v[i] = true;
        }
        v
    };
    // Variables: c (split), b (split), slack s_j per outside point.
    let outside: Vec<usize> = (0..points.len()).filter(|&i| !inside[i]).collect();
    let nv = 2 * d + 2 + outside.len();
    let mut a = Vec::new();
    let mut rhs = Vec::new();
    for &i in subset {
        let mut row = vec![0.0; nv];
        for c in 0..d {
            row[c] = points[i][c];
            row[d + c] = -points[i][c];
        }
        row[2 * d] = -1.0;
        row[2 * d + 1] = 1.0;
        a.push(row);
        rhs.push(0.0);
    }
    for (s, &j) in outside.iter().enumerate() {
        let mut row = vec![0.0; nv];
        for c in 0..d {
            row[c] = points[j][c];
            row[d + c] = -points[j][c];
        }
        row[2 * d] = -1.0;
        row[2 * d + 1] = 1.0;
        row[2 * d + 2 + s] = 1.0;
        a.push(row);
        rhs.push(-1.0);
    }
    feasible(&a, &rhs, 1e-7).is_some()
}

/// Indices of the points that are vertices of the convex hull.
pub fn extreme_points(points: &[Vec<f64>], tol: f64) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        let others: Vec<Vec<f64>> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if !in_hull(&others, &points[i], tol) {
            out.push(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vec<f64>> {
        vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ]
    }

    #[test]
    fn hull_membership() {
        let sq = square();
        assert!(in_hull(&sq, &[0.5, 0.5], 1e-7));
        assert!(in_hull(&sq, &[1.0, 1.0], 1e-7));
        assert!(!in_hull(&sq, &[1.2, 0.5], 1e-7));
        assert!(!in_hull(&sq, &[0.5, -0.01], 1e-7));
    }

    #[test]
    fn cone_membership() {
        let gens = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        assert!(in_cone(&gens, &[3.0, 1.0], 1e-7).is_some());
        assert!(in_cone(&gens, &[0.5, 1.0], 1e-7).is_none());
        assert!(in_cone(&gens, &[0.0, 0.0], 1e-7).is_some());
    }

    #[test]
    fn faces_of_square() {
        let sq = square();
        assert!(is_face(&sq, &[0, 1]));
        assert!(is_face(&sq, &[3]));
        assert!(!is_face(&sq, &[0, 3])); // diagonal
        assert!(!is_face(&sq, &[0, 1, 2]));
        assert!(is_face(&sq, &[0, 1, 2, 3]));
    }

    #[test]
    fn extremes() {
        let mut pts = square();
        pts.push(vec![0.5, 0.5]);
        pts.push(vec![0.25, 0.0]);
        assert_eq!(extreme_points(&pts, 1e-7), vec![0, 1, 2, 3]);
    }

    #[test]
    fn nonneg_span() {
        // span of (1,-1) contains no nonneg nonzero vector
        assert!(!span_contains_nonneg(&[vec![1.0, -1.0]]));
        // span of (1,-1,1,-1) neither
        assert!(!span_contains_nonneg(&[vec![1.0, -1.0, 1.0, -1.0]]));
        // but (1, -1) and (0, 1) together span everything
        assert!(span_contains_nonneg(&[vec![1.0, -1.0], vec![0.0, 1.0]]));
    }
}
