//! Bounded enumeration of lattice vectors by exact arithmetic.
//!
//! The hyperbolic enumerators slice the target set by height against a fixed
//! interior class. Each slice is an affine section on which the form is
//! negative definite, so it reduces to an ellipsoid search that terminates.
//! All pruning decisions are exact rational comparisons; floating point is
//! used only to seed integer interval endpoints, which are then corrected
//! against the exact predicate.

use num::{Signed, Zero};

use super::ratmat::{self, Ldl, RMat, Rat};
use super::snf;
use super::{GramLattice, Int, IsotropicClass, LatticeVector};
use crate::error::{Error, Result};

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Largest integer n with n <= c + sqrt(q), for q >= 0.
fn floor_plus_sqrt(c: &Rat, q: &Rat) -> Int {
    debug_assert!(!q.is_negative());
    let holds = |n: &Int| {
        let diff = Rat::from_integer(n.clone()) - c;
        !diff.is_positive() || &diff * &diff <= *q
    };
    let guess = ratmat::rat_to_f64(c) + ratmat::rat_to_f64(q).max(0.0).sqrt();
    let mut n = Int::from(guess.floor() as i64);
    while holds(&(&n + 1)) {
        n += 1;
    }
    while !holds(&n) {
        n -= 1;
    }
    n
}

/// Smallest integer n with n >= c - sqrt(q), for q >= 0.
fn ceil_minus_sqrt(c: &Rat, q: &Rat) -> Int {
    -floor_plus_sqrt(&-c.clone(), q)
}

/// All integer points y with (y - center)^T p (y - center) <= radius2,
/// for positive definite rational p. Results are sorted lexicographically.
pub fn enumerate_ellipsoid(p: &RMat, center: &[Rat], radius2: &Rat) -> Result<Vec<Vec<Int>>> {
    let n = p.len();
    if n == 0 {
        return Ok(if radius2.is_negative() {
            vec![]
        } else {
            vec![vec![]]
        });
    }
    if radius2.is_negative() {
        return Ok(vec![]);
    }
    let ldl = ratmat::ldl_positive_definite(p)?;
    let mut out = Vec::new();
    let mut y = vec![Int::zero(); n];
    descend(&ldl, center, radius2, n - 1, &mut y, &mut out);
    out.sort();
    Ok(out)
}

fn descend(
    ldl: &Ldl,
    center: &[Rat],
    budget: &Rat,
    level: usize,
    y: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    // inner offset: center_i - sum_{j>i} l_ij (y_j - center_j)
    let n = center.len();
    let mut c = center[level].clone();
    for j in level + 1..n {
        let diff = Rat::from_integer(y[j].clone()) - &center[j];
        c -= &ldl.l[level][j] * diff;
    }
    let q = budget / &ldl.d[level];
    let lo = ceil_minus_sqrt(&c, &q);
    let hi = floor_plus_sqrt(&c, &q);
    let mut v = lo;
    while v <= hi {
        let diff = Rat::from_integer(v.clone()) - &c;
        let spent = &ldl.d[level] * &diff * &diff;
        let rest = budget - &spent;
        if !rest.is_negative() {
            y[level] = v.clone();
            if level == 0 {
                out.push(y.clone());
            } else {
                descend(ldl, center, &rest, level - 1, y, out);
            }
        }
        v += 1;
    }
}

/// Shared setup for the height-sliced searches: an integral basis of the
/// orthogonal complement of `a` and the (positive definite) form on it.
struct SliceProblem {
    kernel: Vec<LatticeVector>,
    /// -B^T G B, positive definite
    p: RMat,
    p_inv: RMat,
    functional: Vec<Int>,
}

impl SliceProblem {
    fn new(lattice: &GramLattice, interior: &LatticeVector) -> Result<Self> {
        lattice.is_hyperbolic()?;
        let norm = lattice.norm(interior)?;
        if !norm.is_positive() {
            return Err(Error::NotInPositiveCone {
                norm: norm.to_string(),
            });
        }
        let kernel = lattice.orthogonal_complement(interior);
        let gram_k = lattice.restrict(&kernel);
        let p: RMat = gram_k
            .iter()
            .map(|row| row.iter().map(|v| Rat::from_integer(-v.clone())).collect())
            .collect();
        let p_inv = ratmat::inverse(&p).ok_or(Error::Degenerate)?;
        let functional = lattice.functional(interior);
        Ok(SliceProblem {
            kernel,
            p,
            p_inv,
            functional,
        })
    }

    /// Vectors x with <x, a> = height and <x, x> = target_norm.
    fn solve_slice(
        &self,
        lattice: &GramLattice,
        height: &Int,
        target_norm: &Int,
    ) -> Result<Vec<LatticeVector>> {
        let dim = lattice.dim();
        let rows = vec![self.functional.clone()];
        let Some(x0) = snf::solve_integer(&rows, std::slice::from_ref(height)) else {
            return Ok(vec![]);
        };
        let x0 = LatticeVector(x0);
        // <x0 + B y, x0 + B y> = k0 + 2 u.y - y^T P y with u_i = <x0, b_i>
        let k0 = lattice.norm(&x0)?;
        let u: Vec<Rat> = self
            .kernel
            .iter()
            .map(|b| Rat::from_integer(lattice.inner_unchecked(&x0, b)))
            .collect();
        // (y - P^{-1}u)^T P (y - P^{-1}u) <= k0 - target + u^T P^{-1} u
        let center = ratmat::mul_vec(&self.p_inv, &u);
        let mut radius2 = Rat::from_integer(k0 - target_norm);
        for (ci, ui) in center.iter().zip(&u) {
            radius2 += ci * ui;
        }
        let mut found = Vec::new();
        for y in enumerate_ellipsoid(&self.p, &center, &radius2)? {
            let mut x = x0.clone();
            for (coeff, basis_vec) in y.iter().zip(&self.kernel) {
                if !coeff.is_zero() {
                    x = x.add(&basis_vec.scale(coeff));
                }
            }
            debug_assert_eq!(x.dim(), dim);
            if &lattice.norm(&x)? == target_norm {
                found.push(x);
            }
        }
        found.sort();
        Ok(found)
    }
}

/// The set {d : <d,d> = -2, 0 < <d,a> <= height_bound}, each vector once,
/// ordered by (height, lexicographic).
pub fn enumerate_roots(
    lattice: &GramLattice,
    interior: &LatticeVector,
    height_bound: u64,
) -> Result<Vec<LatticeVector>> {
    let problem = SliceProblem::new(lattice, interior)?;
    let target = Int::from(-2);
    let mut out = Vec::new();
    for h in 1..=height_bound {
        out.extend(problem.solve_slice(lattice, &Int::from(h), &target)?);
    }
    Ok(out)
}

/// All primitive vectors e with <e,e> = 0 and 0 < <e,a> <= height_bound,
/// ordered by (height, lexicographic).
pub fn enumerate_isotropic(
    lattice: &GramLattice,
    interior: &LatticeVector,
    height_bound: u64,
) -> Result<Vec<IsotropicClass>> {
    let problem = SliceProblem::new(lattice, interior)?;
    let target = Int::zero();
    let mut out = Vec::new();
    for h in 1..=height_bound {
        let height = Int::from(h);
        for x in problem.solve_slice(lattice, &height, &target)? {
            if !x.is_zero() && x.is_primitive() {
                out.push(IsotropicClass {
                    height: height.clone(),
                    vec: x,
                });
            }
        }
    }
    Ok(out)
}

/// Vectors of self-pairing -2 in a negative definite lattice, up to sign.
pub fn definite_roots(lattice: &GramLattice) -> Result<Vec<LatticeVector>> {
    if lattice.dim() == 0 {
        return Ok(vec![]);
    }
    if !lattice.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let p: RMat = lattice
        .gram()
        .iter()
        .map(|row| row.iter().map(|v| Rat::from_integer(-v.clone())).collect())
        .collect();
    let center = vec![Rat::zero(); lattice.dim()];
    let two = rat_int(2);
    let minus_two = Int::from(-2);
    let mut roots = Vec::new();
    for v in enumerate_ellipsoid(&p, &center, &two)? {
        let x = LatticeVector(v);
        if x.is_zero() {
            continue;
        }
        if lattice.norm(&x)? == minus_two {
            // keep one representative per +-pair: first nonzero coordinate positive
            let keep =
                x.0.iter()
                    .find(|c| !c.is_zero())
                    .map(|c| c.is_positive())
                    .unwrap_or(false);
            if keep {
                roots.push(x);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Rank of the sublattice spanned by the norm -2 vectors of a negative
/// definite form.
pub fn definite_root_rank(lattice: &GramLattice) -> Result<usize> {
    let roots = definite_roots(lattice)?;
    Ok(integer_rank(&roots))
}

/// Rank of the span of a set of integer vectors.
pub fn integer_rank(vectors: &[LatticeVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| v.0.iter().map(|c| Rat::from_integer(c.clone())).collect())
        .collect();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in rank + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for j in col..cols {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
