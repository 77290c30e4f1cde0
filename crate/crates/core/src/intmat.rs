//! Integer matrices: Smith and Hermite normal forms with unimodular transforms.
//!
//! Entries are `i128`; desk-scale inputs stay far from overflow, and every
//! arithmetic step is checked so an overflow surfaces as a panic rather than
//! a silently wrong lattice.

pub type IMat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

pub fn to_i64(rows: &IMat) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).expect("integer entry exceeds i64")).collect())
        .collect()
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        assert_eq!(a[i].len(), k, "integer product shape mismatch");
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].checked_add(x.checked_mul(b[t][j]).expect("overflow")).expect("overflow");
            }
        }
    }
    out
}

pub fn transpose(a: &IMat, cols: usize) -> IMat {
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Result of `U * A * V = D` with `D` diagonal, `d[i] | d[i+1]`, nonnegative.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IMat,
    pub v: IMat,
    pub rank: usize,
}

fn row_combine(m: &mut IMat, target: usize, src: usize, f: i128) {
    if f == 0 {
        return;
    }
    for j in 0..m[target].len() {
        let delta = m[src][j].checked_mul(f).expect("overflow");
        m[target][j] = m[target][j].checked_add(delta).expect("overflow");
    }
}

fn col_combine(m: &mut IMat, target: usize, src: usize, f: i128) {
    if f == 0 {
        return;
    }
    for row in m.iter_mut() {
        let delta = row[src].checked_mul(f).expect("overflow");
        row[target] = row[target].checked_add(delta).expect("overflow");
    }
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith(a: &IMat, ncols: usize) -> Smith {
    let rows = a.len();
    let cols = ncols;
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t] != 0 {
                    let f = d[i][t].div_euclid(d[t][t]);
                    row_combine(&mut d, i, t, -f);
                    row_combine(&mut u, i, t, -f);
                    if d[i][t] != 0 {
                        d.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if d[t][j] != 0 {
                    let f = d[t][j].div_euclid(d[t][t]);
                    col_combine(&mut d, j, t, -f);
                    col_combine(&mut v, j, t, -f);
                    if d[t][j] != 0 {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let p = d[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % p != 0));
            match offender {
                Some(i) => {
                    row_combine(&mut d, t, i, 1);
                    row_combine(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diag: Vec<i128> = (0..rows.min(cols)).map(|i| d[i][i]).collect();
    let rank = diag.iter().filter(|&&x| x != 0).count();
    Smith { diag, u, v, rank }
}

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_rows(a: &IMat, ncols: usize) -> IMat {
    let mut m = a.clone();
    let rows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| m[i][c] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c] != 0 {
                    let f = m[i][c].div_euclid(m[r][c]);
                    row_combine(&mut m, i, r, -f);
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[r][c];
        for i in 0..r {
            let f = m[i][c].div_euclid(p);
            row_combine(&mut m, i, r, -f);
        }
        r += 1;
    }
    m.truncate(r);
    m
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Determinant of a square integer matrix via Bareiss elimination.
pub fn det(a: &IMat) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m = a.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IMat, cols: usize) -> Smith {
        let s = smith(a, cols);
        let uav = mul(&mul(&s.u, a), &s.v);
        for (i, row) in uav.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expect = if i == j { s.diag[i] } else { 0 };
                assert_eq!(x, expect, "U A V not diagonal at ({i},{j})");
            }
        }
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(det(&s.v).abs(), 1);
        for w in s.diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn smith_of_small_examples() {
        let s = check_smith(&vec![vec![2], vec![3]], 1);
        assert_eq!(s.diag, vec![1]);
        let s = check_smith(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let s = check_smith(&vec![vec![2, 0], vec![0, 2]], 2);
        assert_eq!(s.diag, vec![2, 2]);
    }

    #[test]
    fn hermite_is_canonical() {
        let h1 = hnf_rows(&vec![vec![-3, 2]], 2);
        assert_eq!(h1, vec![vec![3, -2]]);
        let a = vec![vec![1, -2, 1, 0], vec![1, -1, -1, 1]];
        let b = vec![vec![0, 1, -2, 1], vec![1, -2, 1, 0]];
        assert_eq!(hnf_rows(&a, 4), hnf_rows(&b, 4));
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&vec![vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(det(&vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
    }
}
