//! Elliptic-fibration data of isotropic classes: fiber lattices e^perp/<e>,
//! fiber root ranks, and Mordell-Weil ranks.
//!
//! For a primitive isotropic class e the quotient of its orthogonal
//! complement by e itself carries a negative definite form. The rank of the
//! sublattice spanned by its (-2)-vectors counts the reducible-fiber
//! contribution, and the Mordell-Weil rank is the complementary summand of
//! rho - 2.

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    definite_root_rank, enumerate_isotropic, serialize_int, snf, GramLattice, Int, IsotropicClass,
    LatticeVector,
};

/// Rank bookkeeping for one isotropic class.
#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub class: IsotropicClass,
    pub fiber_root_rank: usize,
    pub mw_rank: usize,
}

fn check_primitive_isotropic(lattice: &GramLattice, e: &LatticeVector) -> Result<()> {
    if e.is_zero() || !e.is_primitive() {
        return Err(Error::NotPrimitiveIsotropic);
    }
    if !lattice.norm(e)?.is_zero() {
        return Err(Error::NotPrimitiveIsotropic);
    }
    Ok(())
}

/// The induced Gram matrix on e^perp / <e>, negative definite of rank
/// dim - 2. The basis completion runs through a canonical Hermite-reduced
/// kernel basis, so the output is deterministic.
pub fn quotient_lattice(lattice: &GramLattice, e: &LatticeVector) -> Result<GramLattice> {
    check_primitive_isotropic(lattice, e)?;
    let kernel = lattice.orthogonal_complement(e);
    // e is primitive in the saturated sublattice e^perp, so it extends to a
    // basis; express e in kernel coordinates first
    let cols = kernel.len();
    let rows = lattice.dim();
    let kernel_matrix: Vec<Vec<Int>> = (0..rows)
        .map(|i| (0..cols).map(|j| kernel[j].0[i].clone()).collect())
        .collect();
    let coords = snf::solve_integer(&kernel_matrix, &e.0)
        .ok_or_else(|| Error::Internal("isotropic class missing from its complement".into()))?;
    let completion = snf::complete_to_basis(&coords)
        .ok_or_else(|| Error::Internal("basis completion failed for a primitive class".into()))?;
    // new kernel basis with e in the first slot
    let mut new_basis: Vec<LatticeVector> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = LatticeVector::zero(rows);
        for (k, kernel_vec) in kernel.iter().enumerate() {
            if !completion[k][j].is_zero() {
                v = v.add(&kernel_vec.scale(&completion[k][j]));
            }
        }
        new_basis.push(v);
    }
    debug_assert_eq!(new_basis[0], *e);
    // e pairs to zero with everything here, so dropping it is the quotient
    let quotient_basis = &new_basis[1..];
    let gram = lattice.restrict(quotient_basis);
    let quotient = GramLattice::new(gram)
        .map_err(|_| Error::Internal("quotient form is degenerate".into()))?;
    if !quotient.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    Ok(quotient)
}

/// Fiber root rank and Mordell-Weil rank of the fibration attached to e.
pub fn mw_rank(lattice: &GramLattice, e: &IsotropicClass) -> Result<FibrationReport> {
    let quotient = quotient_lattice(lattice, &e.vec)?;
    let fiber_root_rank = definite_root_rank(&quotient)?;
    let rho_minus_2 = lattice.dim() - 2;
    debug_assert!(fiber_root_rank <= rho_minus_2);
    Ok(FibrationReport {
        class: e.clone(),
        fiber_root_rank,
        mw_rank: rho_minus_2 - fiber_root_rank,
    })
}

/// (l, m) with l the reflection-group part and m the Mordell-Weil part of
/// the parabolic stabilizer rank; l + m = rho - 2 by construction.
pub fn parabolic_rank_decomposition(
    lattice: &GramLattice,
    e: &IsotropicClass,
) -> Result<(usize, usize)> {
    let report = mw_rank(lattice, e)?;
    Ok((report.fiber_root_rank, report.mw_rank))
}

/// Maximum Mordell-Weil rank over every isotropic class up to the height
/// bound, with a witness class of lowest height.
pub fn max_mw_rank(
    lattice: &GramLattice,
    interior: &LatticeVector,
    height_bound: u64,
) -> Result<(usize, IsotropicClass)> {
    let classes = enumerate_isotropic(lattice, interior, height_bound)?;
    if classes.is_empty() {
        return Err(Error::NoEllipticFibration {
            height: height_bound,
        });
    }
    let mut best: Option<(usize, IsotropicClass)> = None;
    for class in classes {
        let report = mw_rank(lattice, &class)?;
        let better = match &best {
            None => true,
            Some((rank, _)) => report.mw_rank > *rank,
        };
        if better {
            best = Some((report.mw_rank, class));
        }
    }
    Ok(best.expect("nonempty class list"))
}

/// Reports for every isotropic class up to the bound, in (height, lex) order.
pub fn fibration_table(
    lattice: &GramLattice,
    interior: &LatticeVector,
    height_bound: u64,
) -> Result<Vec<FibrationReport>> {
    enumerate_isotropic(lattice, interior, height_bound)?
        .into_iter()
        .map(|class| mw_rank(lattice, &class))
        .collect()
}

/// Serialization row used by the command-line table.
#[derive(Serialize)]
pub struct FibrationRow {
    pub class: LatticeVector,
    #[serde(serialize_with = "serialize_int")]
    pub height: Int,
    pub fiber_root_rank: usize,
    pub mw_rank: usize,
}

impl From<&FibrationReport> for FibrationRow {
    fn from(r: &FibrationReport) -> Self {
        FibrationRow {
            class: r.class.vec.clone(),
            height: r.class.height.clone(),
            fiber_root_rank: r.fiber_root_rank,
            mw_rank: r.mw_rank,
        }
    }
}
