use num_bigint::BigInt;

use super::{hermite_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// A sublattice of `Z^n` given by a basis of independent rows.
#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient_rank: usize, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient_rank {
            return Err(Error::DimensionMismatch { expected: ambient_rank, got: basis.cols() });
        }
        if basis.rank() != basis.rows() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Sublattice { ambient_rank, basis })
    }

    pub fn from_rows<R: AsRef<[i64]>>(ambient_rank: usize, rows: &[R]) -> Result<Self> {
        Self::new(ambient_rank, IntMatrix::from_rows(ambient_rank, rows)?)
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::zeros(0, ambient_rank) }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn hermite_basis(&self) -> IntMatrix {
        hermite_normal_form(&self.basis)
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.rank() == 0 {
            return v.iter().all(|x| x == &BigInt::from(0)).then(Vec::new);
        }
        self.basis.solve_left(v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Image of the lattice under `v -> v * a`.
    pub fn image(&self, a: &IntMatrix) -> Result<Sublattice> {
        if a.rows() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, got: a.rows() });
        }
        Sublattice::new(a.cols(), &self.basis * a)
    }

    /// Same lattice in a new basis: rows of `g * basis` for unimodular `g`.
    pub fn rebased(&self, g: &IntMatrix) -> Result<Sublattice> {
        if !g.is_unimodular() || g.rows() != self.rank() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Sublattice { ambient_rank: self.ambient_rank, basis: g * &self.basis })
    }
}

/// Hermite basis of a sublattice.
pub fn hermite_basis(s: &Sublattice) -> IntMatrix {
    s.hermite_basis()
}

/// True iff the two sublattices are the same subgroup of `Z^n`.
pub fn sublattices_equal(a: &Sublattice, b: &Sublattice) -> Result<bool> {
    if a.ambient_rank != b.ambient_rank {
        return Err(Error::DimensionMismatch { expected: a.ambient_rank, got: b.ambient_rank });
    }
    Ok(a.rank() == b.rank() && a.hermite_basis() == b.hermite_basis())
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        sublattices_equal(self, other).unwrap_or(false)
    }
}

impl Eq for Sublattice {}

/// Matrix of the involution `a` restricted to `s`, in the basis of `s`.
pub fn restrict_involution(a: &IntMatrix, s: &Sublattice) -> Result<IntMatrix> {
    if !a.is_square() || a.rows() != s.ambient_rank {
        return Err(Error::DimensionMismatch { expected: s.ambient_rank, got: a.rows() });
    }
    if !a.is_involution() {
        return Err(Error::NotInvolution);
    }
    let mut rows = Vec::with_capacity(s.rank());
    for i in 0..s.rank() {
        let img = a.apply_row(s.basis.row(i));
        rows.push(s.coordinates(&img).ok_or(Error::NotStable)?);
    }
    IntMatrix::from_big_rows(s.rank(), rows)
}
