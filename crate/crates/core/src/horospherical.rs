//! Horospherical data `(I, M)` and existence of equivariant real structures
//! on the homogeneous space `G / H_(I,M)`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cohomology::{delta_trivial, CenterClassReport};
use crate::error::{Error, Result};
use crate::lattice::{involution_invariants, restrict_involution, IntMatrix, Sublattice};
use crate::realform::{gamma_action_matrix, RealStructureSpec};
use crate::rootsys::GroupSpec;

/// A subset `I` of simple roots and a sublattice `M` of the weight lattice
/// orthogonal to the coroots of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorosphericalDatum {
    group: GroupSpec,
    nodes: BTreeSet<usize>,
    m: Sublattice,
}

impl HorosphericalDatum {
    pub fn new(group: GroupSpec, nodes: impl IntoIterator<Item = usize>, m: Sublattice) -> Result<Self> {
        let d = HorosphericalDatum { group, nodes: nodes.into_iter().collect(), m };
        validate_datum(&d)?;
        Ok(d)
    }

    pub fn from_rows<R: AsRef<[i64]>>(group: GroupSpec, nodes: impl IntoIterator<Item = usize>, rows: &[R]) -> Result<Self> {
        let m = Sublattice::from_rows(group.total_rank(), rows)?;
        Self::new(group, nodes, m)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn nodes(&self) -> &BTreeSet<usize> {
        &self.nodes
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.m
    }

    /// Simple roots outside `I`; these index the colors.
    pub fn colors(&self) -> Vec<usize> {
        (0..self.group.total_rank()).filter(|a| !self.nodes.contains(a)).collect()
    }
}

impl fmt::Display for HorosphericalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{{}}}, {})", self.nodes.iter().join(","), self.m.hermite_basis())
    }
}

/// Checks that every basis vector of `M` vanishes on the coroots of `I`.
pub fn validate_datum(d: &HorosphericalDatum) -> Result<()> {
    let n = d.group.total_rank();
    if d.m.ambient_rank() != n {
        return Err(Error::DimensionMismatch { expected: n, got: d.m.ambient_rank() });
    }
    if !d.group.is_semisimple() && !d.nodes.is_empty() {
        return Err(Error::NotSemisimple);
    }
    if let Some(&bad) = d.nodes.iter().find(|&&a| a >= n) {
        return Err(Error::IndexError { index: bad, len: n });
    }
    let b = d.m.basis();
    for &node in &d.nodes {
        if let Some(row) = (0..b.rows()).find(|&r| !b[(r, node)].is_zero()) {
            return Err(Error::OrthogonalityViolated { node, row });
        }
    }
    Ok(())
}

fn check_group(sigma: &RealStructureSpec, d: &HorosphericalDatum) -> Result<()> {
    if sigma.group() != &d.group {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// The datum `^gamma (I, M)` of the conjugate subgroup.
pub fn apply_gamma_to_datum(sigma: &RealStructureSpec, d: &HorosphericalDatum) -> Result<HorosphericalDatum> {
    check_group(sigma, d)?;
    let p = gamma_action_matrix(sigma)?;
    let nodes: BTreeSet<usize> = match sigma {
        RealStructureSpec::Torus { .. } => BTreeSet::new(),
        RealStructureSpec::Semisimple { .. } => {
            let inv = sigma.node_involution()?;
            d.nodes.iter().map(|&a| inv.apply(a)).collect()
        }
    };
    Ok(HorosphericalDatum { group: d.group.clone(), nodes, m: d.m.image(&p)? })
}

pub fn datum_is_stable(sigma: &RealStructureSpec, d: &HorosphericalDatum) -> Result<bool> {
    let image = apply_gamma_to_datum(sigma, d)?;
    Ok(image.nodes == d.nodes && image.m == d.m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    pub datum_stable: bool,
    /// Whether the quasi-split structure of the same inner class admits an
    /// equivariant real structure.
    pub exists_quasi_split: bool,
    pub delta: Option<CenterClassReport>,
    pub exists: bool,
    pub num_classes: Option<BigUint>,
    pub torus_invariants: Option<(usize, usize, usize)>,
}

/// Decides existence of a `sigma`-equivariant real structure on
/// `G / H_(I,M)` and counts the classes when one exists.
pub fn existence_report(sigma: &RealStructureSpec, d: &HorosphericalDatum) -> Result<ExistenceReport> {
    validate_datum(d)?;
    if !datum_is_stable(sigma, d)? {
        return Ok(ExistenceReport {
            datum_stable: false,
            exists_quasi_split: false,
            delta: None,
            exists: false,
            num_classes: None,
            torus_invariants: None,
        });
    }
    let p = gamma_action_matrix(sigma)?;
    let inv = involution_invariants(&restrict_involution(&p, &d.m)?)?;
    let delta = delta_trivial(&d.group, sigma, &d.m)?;
    let exists = delta.is_trivial;
    Ok(ExistenceReport {
        datum_stable: true,
        exists_quasi_split: true,
        exists,
        num_classes: exists.then(|| BigUint::one() << inv.n1),
        torus_invariants: Some(inv.triple()),
        delta: Some(delta),
    })
}

/// Number of equivariant real structures on a torus whose character
/// lattice carries the involution `a`.
pub fn count_classes_torus(a: &IntMatrix) -> Result<BigUint> {
    Ok(BigUint::one() << involution_invariants(a)?.n1)
}

/// Datum `(I, {0})` of the parabolic subgroup `P_I`.
pub fn datum_of_flag(g: &GroupSpec, nodes: impl IntoIterator<Item = usize>) -> Result<HorosphericalDatum> {
    HorosphericalDatum::new(g.clone(), nodes, Sublattice::zero(g.total_rank()))
}

/// Datum `(∅, X)` of a maximal unipotent subgroup.
pub fn datum_of_maximal_unipotent(g: &GroupSpec) -> Result<HorosphericalDatum> {
    HorosphericalDatum::new(g.clone(), [], Sublattice::full(g.total_rank()))
}
