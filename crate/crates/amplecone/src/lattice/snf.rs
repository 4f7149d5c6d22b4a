//! Integer matrix algorithms: Smith normal form with transforms, kernels,
//! particular solutions, and basis completion.

use num::{BigInt, Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type IMat = Vec<Vec<Int>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Int::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IMat, x: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

/// `p * a * q = d` with `p`, `q` unimodular and `d` diagonal,
/// each diagonal entry non-negative and dividing the next.
pub struct SmithNormalForm {
    pub p: IMat,
    pub d: IMat,
    pub q: IMat,
    pub rank: usize,
}

fn swap_rows(m: &mut IMat, i: usize, j: usize) {
    m.swap(i, j);
}

fn swap_cols(m: &mut IMat, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn add_row(m: &mut IMat, target: usize, source: usize, factor: &Int) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t += factor * s;
    }
}

fn add_col(m: &mut IMat, target: usize, source: usize, factor: &Int) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] += factor * s;
    }
}

fn negate_row(m: &mut IMat, i: usize) {
    for v in m[i].iter_mut() {
        *v = -v.clone();
    }
}

/// Position of the nonzero entry of least absolute value in the trailing
/// submatrix starting at (k,k), row-major on ties.
fn min_pivot(m: &IMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.len() {
        for j in k..m[i].len() {
            if m[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if m[i][j].abs() < m[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IMat) -> SmithNormalForm {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut p = identity(rows);
    let mut q = identity(cols);
    let mut rank = 0;

    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&d, k) else {
            break;
        };
        if pi != k {
            swap_rows(&mut d, k, pi);
            swap_rows(&mut p, k, pi);
        }
        if pj != k {
            swap_cols(&mut d, k, pj);
            swap_cols(&mut q, k, pj);
        }
        loop {
            // clear column k below the pivot
            let mut dirty = false;
            for i in k + 1..rows {
                if !d[i][k].is_zero() {
                    let f = -d[i][k].div_floor(&d[k][k]);
                    add_row(&mut d, i, k, &f);
                    add_row(&mut p, i, k, &f);
                    if !d[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            // clear row k right of the pivot
            for j in k + 1..cols {
                if !d[k][j].is_zero() {
                    let f = -d[k][j].div_floor(&d[k][k]);
                    add_col(&mut d, j, k, &f);
                    add_col(&mut q, j, k, &f);
                    if !d[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a remainder became the new smallest entry; re-pivot
                let (pi, pj) = min_pivot(&d, k).expect("dirty step leaves a nonzero entry");
                if pi != k {
                    swap_rows(&mut d, k, pi);
                    swap_rows(&mut p, k, pi);
                }
                if pj != k {
                    swap_cols(&mut d, k, pj);
                    swap_cols(&mut q, k, pj);
                }
                continue;
            }
            // divisibility: every trailing entry must be a multiple of the pivot
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[i][j] % &d[k][k]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = Int::one();
                    add_row(&mut d, k, i, &one);
                    add_row(&mut p, k, i, &one);
                }
                None => break,
            }
        }
        if d[k][k].is_negative() {
            negate_row(&mut d, k);
            negate_row(&mut p, k);
        }
        rank += 1;
    }

    SmithNormalForm { p, d, q, rank }
}

/// Basis of `{x : a x = 0}` as columns, canonicalized by a column-style
/// Hermite reduction so the result does not depend on pivot choices.
pub fn kernel_basis(a: &IMat) -> Vec<Vec<Int>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let snf = smith_normal_form(a);
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for j in snf.rank..cols {
        basis.push((0..cols).map(|i| snf.q[i][j].clone()).collect());
    }
    hnf_columns(&mut basis);
    basis
}

/// One integral solution of `a x = b`, if any.
pub fn solve_integer(a: &IMat, b: &[Int]) -> Option<Vec<Int>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let snf = smith_normal_form(a);
    let pb = mat_vec(&snf.p, b);
    let mut y = vec![Int::zero(); cols];
    for i in 0..rows {
        if i < snf.rank {
            let (quo, rem) = pb[i].div_rem(&snf.d[i][i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = quo;
        } else if !pb[i].is_zero() {
            return None;
        }
    }
    Some(mat_vec(&snf.q, &y))
}

/// Unimodular matrix whose first column is the given primitive vector.
pub fn complete_to_basis(y: &[Int]) -> Option<IMat> {
    let n = y.len();
    let col: IMat = y.iter().map(|v| vec![v.clone()]).collect();
    let snf = smith_normal_form(&col);
    if snf.rank != 1 || snf.d[0][0] != Int::one() {
        return None; // zero or non-primitive
    }
    // p y q = e1, q = (+-1); so y = p^{-1} e1 * q^{-1} and q^{-1} = q.
    let mut u = unimodular_inverse(&snf.p)?;
    if snf.q[0][0].is_negative() {
        for row in u.iter_mut() {
            row[0] = -row[0].clone();
        }
    }
    debug_assert!((0..n).all(|i| u[i][0] == y[i]));
    Some(u)
}

/// Exact inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IMat) -> Option<IMat> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for k in 0..n {
        // gcd phase confined to rows at or below k, so the columns already
        // cleaned stay cleaned
        loop {
            let mut piv = None;
            for i in k..n {
                if !a[i][k].is_zero() {
                    match piv {
                        None => piv = Some(i),
                        Some(p) => {
                            if a[i][k].abs() < a[p][k].abs() {
                                piv = Some(i);
                            }
                        }
                    }
                }
            }
            let piv = piv?;
            if piv != k {
                a.swap(k, piv);
                inv.swap(k, piv);
            }
            let mut clean = true;
            for i in k + 1..n {
                if !a[i][k].is_zero() {
                    let f = -a[i][k].div_floor(&a[k][k]);
                    add_row(&mut a, i, k, &f);
                    add_row(&mut inv, i, k, &f);
                    if !a[i][k].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if a[k][k].is_negative() {
            negate_row(&mut a, k);
            negate_row(&mut inv, k);
        }
        if !a[k][k].is_one() {
            return None; // not unimodular
        }
        // Jordan phase: the pivot is 1, so rows above clear exactly
        for i in 0..k {
            if !a[i][k].is_zero() {
                let f = -a[i][k].clone();
                add_row(&mut a, i, k, &f);
                add_row(&mut inv, i, k, &f);
            }
        }
    }
    Some(inv)
}

/// In-place column Hermite reduction of a full-column-rank set of vectors.
fn hnf_columns(basis: &mut Vec<Vec<Int>>) {
    let k = basis.len();
    if k == 0 {
        return;
    }
    let n = basis[0].len();
    let mut c = 0;
    for row in 0..n {
        if c >= k {
            break;
        }
        loop {
            let mut piv = None;
            for j in c..k {
                if !basis[j][row].is_zero() {
                    match piv {
                        None => piv = Some(j),
                        Some(p) => {
                            if basis[j][row].abs() < basis[p][row].abs() {
                                piv = Some(j);
                            }
                        }
                    }
                }
            }
            let Some(piv) = piv else {
                break;
            };
            basis.swap(c, piv);
            let mut clean = true;
            for j in c + 1..k {
                if !basis[j][row].is_zero() {
                    let f = basis[j][row].div_floor(&basis[c][row]);
                    for i in 0..n {
                        let s = basis[c][i].clone();
                        basis[j][i] -= &f * s;
                    }
                    if !basis[j][row].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if basis[c][row].is_zero() {
            continue;
        }
        if basis[c][row].is_negative() {
            for v in basis[c].iter_mut() {
                *v = -v.clone();
            }
        }
        for j in 0..c {
            let f = basis[j][row].div_floor(&basis[c][row]);
            for i in 0..n {
                let s = basis[c][i].clone();
                basis[j][i] -= &f * s;
            }
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IMat {
        rows.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect()
    }

    fn is_unimodular(a: &IMat) -> bool {
        unimodular_inverse(a).is_some()
    }

    #[test]
    fn snf_reproduces_matrix() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(mat_mul(&mat_mul(&snf.p, &a), &snf.q), snf.d);
        assert!(is_unimodular(&snf.p));
        assert!(is_unimodular(&snf.q));
        // determinantal divisors: gcd of entries 2, gcd of 2x2 minors 4, det 624
        let diag: Vec<Int> = (0..3).map(|i| snf.d[i][i].clone()).collect();
        assert_eq!(diag, vec![Int::from(2), Int::from(2), Int::from(156)]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = m(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let snf = smith_normal_form(&a);
        assert_eq!(mat_mul(&mat_mul(&snf.p, &a), &snf.q), snf.d);
        let diag: Vec<Int> = (0..4).map(|i| snf.d[i][i].clone()).collect();
        assert_eq!(
            diag,
            vec![Int::from(1), Int::from(3), Int::from(21), Int::from(0)]
        );
    }

    #[test]
    fn kernel_of_functional() {
        let a = m(&[&[4, 4, 0, 0]]);
        let basis = kernel_basis(&a);
        assert_eq!(basis.len(), 3);
        for v in &basis {
            let s: Int = v.iter().zip(&a[0]).map(|(x, c)| x * c).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_linear_system() {
        let a = m(&[&[6, 10, 4]]);
        let b = vec![Int::from(8)];
        let x = solve_integer(&a, &b).unwrap();
        let s: Int = x.iter().zip(&a[0]).map(|(x, c)| x * c).sum();
        assert_eq!(s, Int::from(8));
        assert!(solve_integer(&a, &[Int::from(3)]).is_none());
    }

    #[test]
    fn complete_primitive_vector() {
        let y = vec![Int::from(3), Int::from(5), Int::from(7)];
        let u = complete_to_basis(&y).unwrap();
        assert!(is_unimodular(&u));
        for (i, v) in y.iter().enumerate() {
            assert_eq!(&u[i][0], v);
        }
        assert!(complete_to_basis(&[Int::from(2), Int::from(4)]).is_none());
    }
}
