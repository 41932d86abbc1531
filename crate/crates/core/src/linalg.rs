//! Gaussian elimination over ℚ(t).

use crate::basefield::RatFunc;

pub type Matrix = Vec<Vec<RatFunc>>;

/// Solution set of `A x = b`: `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<RatFunc>,
    pub kernel: Vec<Vec<RatFunc>>,
    pub rank: usize,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..m[row].len() {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..m[r].len() {
                let sub = f.mul(&m[row][c]);
                m[r][c] = m[r][c].sub(&sub);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(a: &Matrix, ncols: usize) -> usize {
    let mut m = a.clone();
    rref(&mut m, ncols).len()
}

/// Solves `A x = b` with `A` of size `rows × ncols`; `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[RatFunc], ncols: usize) -> Option<LinearSolution> {
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols);
    if aug.iter().skip(pivots.len()).any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut particular = vec![RatFunc::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[f] = RatFunc::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = aug[r][f].neg();
            }
            v
        })
        .collect();
    Some(LinearSolution { particular, kernel, rank: pivots.len() })
}

pub fn mat_vec(a: &Matrix, x: &[RatFunc]) -> Vec<RatFunc> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(RatFunc::zero(), |acc, (m, v)| acc.add(&m.mul(v))))
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(RatFunc::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix, rows: usize, cols: usize) -> Matrix {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
        .collect()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn solves_with_kernel() {
        // 2a·u + 2b·v = 1 with a = t, b = 1
        let a = vec![vec![r("2*t"), r("2")]];
        let sol = solve(&a, &[r("1")], 2).unwrap();
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.kernel.len(), 1);
        assert_eq!(mat_vec(&a, &sol.particular), vec![r("1")]);
        assert!(mat_vec(&a, &sol.kernel[0])[0].is_zero());
    }

    #[test]
    fn inconsistent_and_inverse() {
        let a = vec![vec![r("0")]];
        assert!(solve(&a, &[r("1")], 1).is_none());
        let m = vec![vec![r("t"), r("1")], vec![r("0"), r("t")]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv, 2, 2), identity(2));
        assert!(inverse(&vec![vec![r("1"), r("2")], vec![r("2"), r("4")]]).is_none());
    }
}
