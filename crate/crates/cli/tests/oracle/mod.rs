//! Brute-force reference implementations. They share no code with the
//! library: subsets come from plain recursion, containment from
//! determinant signs.

#![allow(dead_code)]

/// Every subset of `0..n` with exactly `k` members, as index lists.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn grow(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            grow(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn choose(n: usize, k: usize) -> f64 {
    subsets(n, k).len() as f64
}

/// Band depth (or modified band depth) of every curve. `curves[i][t]`.
pub fn band_depth(curves: &[Vec<f64>], j_max: usize, relax: bool) -> Vec<f64> {
    let n = curves.len();
    let t_len = curves[0].len();
    (0..n)
        .map(|x| {
            let mut total = 0.0;
            for j in 2..=j_max {
                let mut hits = 0.0;
                for s in subsets(n, j).iter().filter(|s| !s.contains(&x)) {
                    let inside = (0..t_len)
                        .filter(|&t| {
                            let lo = s
                                .iter()
                                .map(|&i| curves[i][t])
                                .fold(f64::INFINITY, f64::min);
                            let hi = s
                                .iter()
                                .map(|&i| curves[i][t])
                                .fold(f64::NEG_INFINITY, f64::max);
                            lo <= curves[x][t] && curves[x][t] <= hi
                        })
                        .count();
                    hits += if relax {
                        inside as f64 / t_len as f64
                    } else if inside == t_len {
                        1.0
                    } else {
                        0.0
                    };
                }
                total += hits / choose(n, j);
            }
            total
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != c)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

/// Orientation matrix of d+1 points in `R^d`: rows `[1, p_1, ..., p_d]`.
fn orientation(points: &[&[f64]]) -> f64 {
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|p| std::iter::once(1.0).chain(p.iter().copied()).collect())
        .collect();
    det(&rows)
}

/// Closed containment: replacing any vertex by `p` never flips the sign of
/// the orientation. A zero-volume simplex contains only its vertices.
pub fn in_simplex(p: &[f64], vertices: &[&[f64]]) -> bool {
    let whole = orientation(vertices);
    if whole == 0.0 {
        return vertices.contains(&p);
    }
    (0..vertices.len()).all(|k| {
        let mut swapped = vertices.to_vec();
        swapped[k] = p;
        orientation(&swapped) * whole >= 0.0
    })
}

/// Simplicial depth of every point of a cloud.
pub fn simplicial_depth(points: &[Vec<f64>]) -> Vec<f64> {
    let m = points.len();
    let d = points[0].len();
    (0..m)
        .map(|x| {
            let hits = subsets(m, d + 1)
                .iter()
                .filter(|s| !s.contains(&x))
                .filter(|s| {
                    let v: Vec<&[f64]> = s.iter().map(|&i| points[i].as_slice()).collect();
                    in_simplex(&points[x], &v)
                })
                .count();
            hits as f64 / choose(m, d + 1)
        })
        .collect()
}

/// Simplicial band depth of multivariate curves, `curves[i][t][k]`.
pub fn simplicial_band_depth(curves: &[Vec<Vec<f64>>], relax: bool) -> Vec<f64> {
    let n = curves.len();
    let t_len = curves[0].len();
    let d = curves[0][0].len();
    (0..n)
        .map(|x| {
            let mut hits = 0.0;
            for s in subsets(n, d + 1).iter().filter(|s| !s.contains(&x)) {
                let inside = (0..t_len)
                    .filter(|&t| {
                        let v: Vec<&[f64]> = s.iter().map(|&i| curves[i][t].as_slice()).collect();
                        in_simplex(&curves[x][t], &v)
                    })
                    .count();
                hits += if relax {
                    inside as f64 / t_len as f64
                } else if inside == t_len {
                    1.0
                } else {
                    0.0
                };
            }
            hits / choose(n, d + 1)
        })
        .collect()
}

/// Average ranks (1-based), ties sharing the mean of their positions.
pub fn ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}
