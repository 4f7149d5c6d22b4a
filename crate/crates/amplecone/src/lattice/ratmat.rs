//! Dense rational matrices for the exact parts of the pipeline: congruence
//! diagonalization, inversion, and LDL factorization of definite forms.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type RMat = Vec<Vec<Rat>>;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn int_matrix_to_rational(m: &[Vec<Int>]) -> RMat {
    m.iter().map(|r| r.iter().map(from_int).collect()).collect()
}

pub fn identity(n: usize) -> RMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &RMat, b: &RMat) -> RMat {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rat::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn mul_vec(a: &RMat, x: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

pub fn transpose(a: &RMat) -> RMat {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn to_f64(a: &RMat) -> Vec<Vec<f64>> {
    a.iter()
        .map(|r| r.iter().map(rat_to_f64).collect())
        .collect()
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of approximations for huge operands
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Exact inverse by Gauss-Jordan elimination; `None` for singular input.
pub fn inverse(a: &RMat) -> Option<RMat> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, piv);
        inv.swap(k, piv);
        let d = m[k][k].clone();
        for j in 0..n {
            m[k][j] /= &d;
            inv[k][j] /= &d;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in 0..n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                    let t = &f * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Exact determinant by fraction-free elimination on a rational copy.
pub fn determinant(a: &RMat) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rat::zero();
        };
        if piv != k {
            m.swap(k, piv);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Congruence diagonalization of a symmetric matrix: returns `(c, d)` with
/// `c^T g c = diag(d)` over the rationals.
///
/// Pivots on the leftmost nonzero diagonal entry; when the whole active
/// diagonal vanishes, adds one basis vector to another to expose a pivot
/// (the 2x2 block case). Ties always break toward the smallest index, so
/// the output is deterministic.
pub fn congruence_diagonalize(g: &RMat) -> (RMat, Vec<Rat>) {
    let n = g.len();
    let mut a = g.clone();
    let mut c = identity(n);

    // basis operation v_t += f * v_s, updating a = basis^T g basis
    fn col_op(a: &mut RMat, c: &mut RMat, t: usize, s: usize, f: &Rat) {
        let n = a.len();
        for i in 0..n {
            let v = &a[i][s] * f;
            a[i][t] += v;
        }
        for j in 0..n {
            let v = &a[s][j] * f;
            a[t][j] += v;
        }
        for i in 0..n {
            let v = &c[i][s] * f;
            c[i][t] += v;
        }
    }

    fn swap_basis(a: &mut RMat, c: &mut RMat, i: usize, j: usize) {
        let n = a.len();
        a.swap(i, j);
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in c.iter_mut().take(n) {
            row.swap(i, j);
        }
    }

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_basis(&mut a, &mut c, k, j);
            } else {
                // all active diagonal entries vanish; find an off-diagonal one
                let mut found = None;
                'outer: for i in k..n {
                    for j in i + 1..n {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    break; // active block is zero; degenerate tail
                };
                let one = Rat::one();
                col_op(&mut a, &mut c, i, j, &one);
                if i != k {
                    swap_basis(&mut a, &mut c, k, i);
                }
            }
        }
        let d = a[k][k].clone();
        for j in k + 1..n {
            if !a[k][j].is_zero() {
                let f = -(&a[k][j] / &d);
                col_op(&mut a, &mut c, j, k, &f);
            }
        }
    }

    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    (c, diag)
}

/// Counts of (positive, negative, zero) entries after diagonalization.
pub fn inertia(g: &RMat) -> (usize, usize, usize) {
    let (_, diag) = congruence_diagonalize(g);
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for d in &diag {
        if d.is_zero() {
            zero += 1;
        } else if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos, neg, zero)
}

/// LDL data for a positive definite form: `x^T p x = sum_i d_i (x_i + sum_{j>i} l_ij x_j)^2`.
pub struct Ldl {
    pub d: Vec<Rat>,
    pub l: Vec<Vec<Rat>>, // l[i][j] stored for j > i, full square for simplicity
}

pub fn ldl_positive_definite(p: &RMat) -> Result<Ldl> {
    let n = p.len();
    let mut a = p.clone();
    let mut d = Vec::with_capacity(n);
    let mut l = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let di = a[i][i].clone();
        if !di.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            l[i][j] = &a[i][j] / &di;
        }
        for j in i + 1..n {
            for k in j..n {
                let t = &di * &l[i][j] * &l[i][k];
                a[j][k] -= &t;
                if j != k {
                    let lower = a[j][k].clone();
                    a[k][j] = lower;
                }
            }
        }
        d.push(di);
    }
    Ok(Ldl { d, l })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(rows: &[&[i64]]) -> RMat {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
            .collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = rm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(3));
        let singular = rm(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn congruence_reproduces_diagonal() {
        let g = rm(&[&[0, 1], &[1, 0]]);
        let (c, diag) = congruence_diagonalize(&g);
        let lhs = mul(&mul(&transpose(&c), &g), &c);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(lhs[i][j], diag[i]);
                } else {
                    assert!(lhs[i][j].is_zero());
                }
            }
        }
        let (pos, neg, zero) = inertia(&g);
        assert_eq!((pos, neg, zero), (1, 1, 0));
    }

    #[test]
    fn inertia_of_definite_blocks() {
        assert_eq!(inertia(&rm(&[&[2]])), (1, 0, 0));
        assert_eq!(inertia(&rm(&[&[-2, 1], &[1, -2]])), (0, 2, 0));
        assert_eq!(inertia(&rm(&[&[1, 1], &[1, 1]])), (1, 0, 1));
    }

    #[test]
    fn ldl_evaluates_form() {
        let p = rm(&[&[2, 1], &[1, 2]]);
        let ldl = ldl_positive_definite(&p).unwrap();
        // evaluate at x = (1, -3) both ways
        let x = [
            Rat::from_integer(Int::from(1)),
            Rat::from_integer(Int::from(-3)),
        ];
        let direct = {
            let px = mul_vec(&p, &x);
            x.iter().zip(&px).map(|(a, b)| a * b).sum::<Rat>()
        };
        let mut via = Rat::zero();
        for i in 0..2 {
            let mut inner = x[i].clone();
            for j in i + 1..2 {
                inner += &ldl.l[i][j] * &x[j];
            }
            via += &ldl.d[i] * &inner * &inner;
        }
        assert_eq!(direct, via);
        assert!(ldl_positive_definite(&rm(&[&[-1]])).is_err());
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = rm(&[&[2, 4, 1], &[4, 2, 0], &[1, 0, -2]]);
        // cofactor expansion by hand: 2*(-4) - 4*(-8) + 1*(-2) = 22
        assert_eq!(determinant(&a), Rat::from_integer(Int::from(22)));
    }
}
