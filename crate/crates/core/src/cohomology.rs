//! Tate cohomology of real tori and of centers, and the invariant `Delta_H`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{involution_invariants, restrict_involution, GammaLatticeInvariants, IntMatrix, Sublattice};
use crate::realform::{gamma_action_matrix, tits_representative, RealStructureSpec};
use crate::rootsys::{center_elements, CenterElement, GroupSpec};

/// A torus with an involution on its character lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTorus {
    action: IntMatrix,
}

impl GammaTorus {
    pub fn new(action: IntMatrix) -> Result<Self> {
        if !action.is_square() || !action.is_involution() {
            return Err(Error::NotInvolution);
        }
        Ok(GammaTorus { action })
    }

    pub fn character_lattice_rank(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn invariants(&self) -> GammaLatticeInvariants {
        involution_invariants(&self.action).expect("validated involution")
    }
}

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// `|H^1(Gamma, T)| = 2^n1`.
pub fn torus_h1_order(t: &GammaTorus) -> BigUint {
    pow2(t.invariants().n1)
}

/// `|H^2(Gamma, T)| = 2^n0`.
pub fn torus_h2_order(t: &GammaTorus) -> BigUint {
    pow2(t.invariants().n0)
}

/// Whether the Galois-fixed center element `z` is a norm `a + sigma(a)`,
/// where `sigma(q) = -theta q`.
pub fn center_class_trivial(g: &GroupSpec, theta: &IntMatrix, z: &CenterElement) -> Result<bool> {
    let cartan = g.cartan_matrix()?;
    let n = cartan.rows();
    if z.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.len() });
    }
    if theta.rows() != n || theta.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: theta.rows() });
    }
    if !z.satisfies_root_relations(&cartan) {
        return Err(Error::NotCentral);
    }
    if !z.is_galois_fixed(theta) {
        return Err(Error::NotFixed);
    }
    if z.is_zero() {
        return Ok(true);
    }
    Ok(center_elements(g)?.iter().any(|a| &a.add(&a.galois_image(theta)) == z))
}

/// Outcome of evaluating `Delta_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterClassReport {
    pub is_trivial: bool,
    /// A fixed character of `M` (ambient weight coordinates) taking the
    /// value `-1` on the Tits class.
    pub witness: Option<Vec<BigInt>>,
}

/// Evaluates `Delta_H(sigma)` for the character lattice `m` of
/// `N(H)/H`: the Tits class paired with the trivial summands of `m`.
pub fn delta_trivial(g: &GroupSpec, sigma: &RealStructureSpec, m: &Sublattice) -> Result<CenterClassReport> {
    if sigma.group() != g {
        return Err(Error::GroupMismatch);
    }
    let z = match sigma {
        RealStructureSpec::Torus { .. } => None,
        RealStructureSpec::Semisimple { .. } => Some(tits_representative(sigma)?),
    };
    delta_for_representative(sigma, m, z.as_ref())
}

/// As [`delta_trivial`], with an explicit representative `z` of the Tits
/// class (`None` for the trivial class).
pub fn delta_for_representative(
    sigma: &RealStructureSpec,
    m: &Sublattice,
    z: Option<&CenterElement>,
) -> Result<CenterClassReport> {
    let p = gamma_action_matrix(sigma)?;
    if m.ambient_rank() != p.rows() {
        return Err(Error::DimensionMismatch { expected: p.rows(), got: m.ambient_rank() });
    }
    let r = restrict_involution(&p, m)?;
    let Some(z) = z else {
        return Ok(CenterClassReport { is_trivial: true, witness: None });
    };
    if z.len() != p.rows() {
        return Err(Error::DimensionMismatch { expected: p.rows(), got: z.len() });
    }
    let inv = involution_invariants(&r)?;
    for coords in inv.fixed_rows() {
        let e = m.basis().apply_row(coords);
        let v = z.pair(&e);
        if !v.is_zero() {
            if v != BigRational::new(1.into(), 2.into()) {
                return Err(Error::NotFixed);
            }
            return Ok(CenterClassReport { is_trivial: false, witness: Some(e) });
        }
    }
    Ok(CenterClassReport { is_trivial: true, witness: None })
}
