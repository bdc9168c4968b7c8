//! Tiny dense solvers for the (d+1)x(d+1) systems used by the simplicial
//! and covariance-based depths. Matrices are row-major `n*n` slices.

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// Returns the solution together with the smallest absolute pivot met during
/// elimination. A zero pivot stops elimination and yields `None`; callers
/// apply their own relative threshold to the returned pivot.
pub(crate) fn solve(a: &[f64], b: &[f64], n: usize) -> Option<(Vec<f64>, f64)> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    let mut min_pivot = f64::INFINITY;
    for col in 0..n {
        let (pivot_row, pivot_abs) =
            (col..n)
                .map(|r| (r, m[r * n + col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs == 0.0 || !pivot_abs.is_finite() {
            return None;
        }
        min_pivot = min_pivot.min(pivot_abs);
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            rhs.swap(col, pivot_row);
        }
        let p = m[col * n + col];
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                m[r * n + k] -= factor * m[col * n + k];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for k in r + 1..n {
            acc -= m[r * n + k] * x[k];
        }
        x[r] = acc / m[r * n + r];
    }
    Some((x, min_pivot))
}

/// Determinant via partial-pivoted elimination.
pub(crate) fn determinant(a: &[f64], n: usize) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| m[r * n + col].abs().total_cmp(&m[s * n + col].abs()))
            .unwrap_or(col);
        let p = m[pivot_row * n + col];
        if p == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        det *= p;
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            for k in col..n {
                m[r * n + k] -= factor * m[col * n + k];
            }
        }
    }
    det
}

/// Numerical rank of the rows of an `rows x cols` matrix, using a pivot
/// threshold relative to the largest entry.
pub(crate) fn rank(a: &[f64], rows: usize, cols: usize) -> usize {
    let mut m = a.to_vec();
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let eps = 1e-12 * scale;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot_row = (rank..rows)
            .max_by(|&r, &s| m[r * cols + col].abs().total_cmp(&m[s * cols + col].abs()))
            .unwrap();
        if m[pivot_row * cols + col].abs() <= eps {
            continue;
        }
        for k in 0..cols {
            m.swap(rank * cols + k, pivot_row * cols + k);
        }
        let p = m[rank * cols + col];
        for r in rank + 1..rows {
            let factor = m[r * cols + col] / p;
            for k in col..cols {
                m[r * cols + k] -= factor * m[rank * cols + k];
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // 2x + y = 5, x + 3y = 10
        let (x, pivot) = solve(&[2.0, 1.0, 1.0, 3.0], &[5.0, 10.0], 2).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
        assert!(pivot > 0.0);
    }

    #[test]
    fn singular_system_has_no_solution() {
        assert!(solve(&[1.0, 2.0, 2.0, 4.0], &[1.0, 2.0], 2).is_none());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[4.0, 0.0, 0.0, 4.0], 2), 16.0);
        assert_eq!(determinant(&[0.0, 1.0, 1.0, 0.0], 2), -1.0);
        assert_eq!(determinant(&[1.0, 2.0, 2.0, 4.0], 2), 0.0);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[1.0, 2.0, 2.0, 4.0, 3.0, 6.0], 3, 2), 1);
        assert_eq!(rank(&[1.0, 0.0, 0.0, 1.0], 2, 2), 2);
        assert_eq!(rank(&[0.0; 4], 2, 2), 0);
    }
}
