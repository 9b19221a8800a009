//! Smooth projective horospherical varieties of Picard rank one, given by a
//! Dynkin type and two fundamental weights.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::horospherical::{existence_report, HorosphericalDatum};
use crate::realform::{catalog, display_label, RealStructureSpec};
use crate::rootsys::{canonical_node_map, DynkinType, Family, GroupSpec};

/// `(type, w_y, w_z)` with 0-based nodes in the numbering of the type as
/// written (so `C2` keeps its symplectic numbering).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Picard1Triple {
    pub family: Family,
    pub rank: usize,
    pub y_node: usize,
    pub z_node: usize,
}

impl Picard1Triple {
    pub fn new(family: Family, rank: usize, y_node: usize, z_node: usize) -> Result<Self> {
        let t = Picard1Triple { family, rank, y_node, z_node };
        let n = rank;
        let ok = match family {
            Family::B => n >= 3 && ((y_node, z_node) == (n - 2, n - 1) || (n == 3 && (y_node, z_node) == (0, 2))),
            Family::C => n >= 2 && (2..=n).any(|m| (y_node, z_node) == (m - 1, m - 2)),
            Family::F => n == 4 && (y_node, z_node) == (1, 2),
            Family::G => n == 2 && (y_node, z_node) == (0, 1),
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidTriple(t.to_string()));
        }
        Ok(t)
    }

    pub fn dynkin(&self) -> DynkinType {
        DynkinType::new(self.family, self.rank).expect("validated triple")
    }

    /// `(y, z)` in the numbering of the canonical type.
    pub fn canonical_nodes(&self) -> (usize, usize) {
        let map = canonical_node_map(self.family, self.rank);
        (map[self.y_node], map[self.z_node])
    }
}

impl fmt::Display for Picard1Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{}, w{}, w{})", self.family.letter(), self.rank, self.y_node + 1, self.z_node + 1)
    }
}

/// All triples of rank at most `max_rank`, sorted by rank, then family.
pub fn triples(max_rank: usize) -> Vec<Picard1Triple> {
    let mut out = Vec::new();
    for n in 2..=max_rank {
        if n >= 3 {
            out.push(Picard1Triple { family: Family::B, rank: n, y_node: n - 2, z_node: n - 1 });
        }
        if n == 3 {
            out.push(Picard1Triple { family: Family::B, rank: 3, y_node: 0, z_node: 2 });
        }
        for m in 2..=n {
            out.push(Picard1Triple { family: Family::C, rank: n, y_node: m - 1, z_node: m - 2 });
        }
        if n == 4 {
            out.push(Picard1Triple { family: Family::F, rank: 4, y_node: 1, z_node: 2 });
        }
        if n == 2 {
            out.push(Picard1Triple { family: Family::G, rank: 2, y_node: 0, z_node: 1 });
        }
    }
    out.sort_by_key(|t| (t.rank, t.family, t.y_node, t.z_node));
    out
}

/// `(S \ {y, z}, Z (w_y - w_z))`, in canonical node numbering.
pub fn datum_of_triple(t: &Picard1Triple) -> Result<HorosphericalDatum> {
    let ty = t.dynkin();
    let n = ty.rank();
    let (y, z) = t.canonical_nodes();
    let mut row = vec![0i64; n];
    row[y] = 1;
    row[z] = -1;
    HorosphericalDatum::from_rows(GroupSpec::semisimple(vec![ty])?, (0..n).filter(|&a| a != y && a != z), &[row])
}

/// A real form admitting an equivariant real structure on the variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Picard1Form {
    /// Label in the naming of the type as written.
    pub label: String,
    pub num_classes: BigUint,
}

pub fn classify_triple(t: &Picard1Triple) -> Result<Vec<Picard1Form>> {
    let ty = t.dynkin();
    let d = datum_of_triple(t)?;
    let mut out = Vec::new();
    for r in catalog(ty).iter() {
        let spec = RealStructureSpec::semisimple(d.group().clone(), vec![0], [(0, r.label.clone())].into())?;
        let rep = existence_report(&spec, &d)?;
        if let Some(num_classes) = rep.num_classes {
            out.push(Picard1Form { label: display_label(t.family, t.rank, &r.label), num_classes });
        }
    }
    Ok(out)
}
