//! Colored fans of horospherical embeddings and their stability under the
//! Galois action.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::horospherical::{datum_is_stable, existence_report, ExistenceReport, HorosphericalDatum};
use crate::lattice::{restrict_involution, smith_normal_form, IntMatrix};
use crate::realform::{gamma_action_matrix, RealStructureSpec};

type Vector = Vec<BigInt>;

fn primitive(v: &[BigInt]) -> Option<Vector> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

/// Whether `p` is a nonnegative combination of `rays`.
fn in_cone(rays: &[Vector], p: &[BigInt]) -> bool {
    if p.iter().all(Zero::is_zero) {
        return true;
    }
    let d = p.len();
    (1..=rays.len().min(d)).any(|k| {
        rays.iter().combinations(k).any(|sub| {
            let Ok(m) = IntMatrix::from_big_rows(d, sub.into_iter().cloned().collect()) else {
                return false;
            };
            m.rank() == k
                && m.solve_left_rational(p).is_some_and(|x| x.iter().all(|c| !c.is_negative()))
        })
    })
}

/// A strictly convex cone contains no line: no minimal dependent subset of
/// rays has a kernel vector of constant sign.
fn strictly_convex(rays: &[Vector], d: usize) -> bool {
    (2..=rays.len().min(d + 1)).all(|k| {
        rays.iter().combinations(k).all(|sub| {
            let m = IntMatrix::from_big_rows(d, sub.into_iter().cloned().collect()).expect("ray dimensions");
            let s = smith_normal_form(&m);
            if k - s.rank() != 1 {
                return true;
            }
            let c = s.u.row(k - 1);
            !(c.iter().all(|x| x.is_positive()) || c.iter().all(|x| x.is_negative()))
        })
    })
}

/// A cone generated by primitive rays in `N`, with a set of colors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredCone {
    rays: Vec<Vector>,
    colors: BTreeSet<usize>,
}

impl ColoredCone {
    /// Normalizes rays to primitive vectors, drops duplicates and rays that
    /// lie in the cone of the others.
    pub fn new(dim: usize, rays: Vec<Vector>, colors: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut prim = BTreeSet::new();
        for r in &rays {
            if r.len() != dim {
                return Err(Error::InvalidFan(format!("ray of length {} in N of rank {dim}", r.len())));
            }
            prim.insert(primitive(r).ok_or_else(|| Error::InvalidFan("zero ray".into()))?);
        }
        let mut rays: Vec<Vector> = prim.into_iter().collect();
        if !strictly_convex(&rays, dim) {
            return Err(Error::InvalidFan("cone is not strictly convex".into()));
        }
        let mut i = 0;
        while i < rays.len() {
            let others: Vec<Vector> = rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
            if in_cone(&others, &rays[i]) {
                rays.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(ColoredCone { rays, colors: colors.into_iter().collect() })
    }

    pub fn from_i64<R: AsRef<[i64]>>(dim: usize, rays: &[R], colors: impl IntoIterator<Item = usize>) -> Result<Self> {
        let rays = rays.iter().map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(dim, rays, colors)
    }

    /// The cone `({0}, {})`.
    pub fn trivial() -> Self {
        ColoredCone { rays: Vec::new(), colors: BTreeSet::new() }
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn colors(&self) -> &BTreeSet<usize> {
        &self.colors
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFan {
    cones: BTreeSet<ColoredCone>,
}

impl ColoredFan {
    pub fn new(cones: impl IntoIterator<Item = ColoredCone>) -> Self {
        ColoredFan { cones: cones.into_iter().collect() }
    }

    pub fn cones(&self) -> impl Iterator<Item = &ColoredCone> {
        self.cones.iter()
    }

    pub fn contains(&self, c: &ColoredCone) -> bool {
        self.cones.contains(c)
    }
}

/// Image of each color in `N`: coordinates `<b_k, alpha^vee>` over the
/// basis rows `b_k` of `M`.
pub fn color_points(d: &HorosphericalDatum) -> BTreeMap<usize, Vector> {
    let b = d.lattice().basis();
    d.colors().into_iter().map(|a| (a, (0..b.rows()).map(|k| b[(k, a)].clone()).collect())).collect()
}

pub fn color_point(d: &HorosphericalDatum, node: usize) -> Result<Vector> {
    let n = d.group().total_rank();
    if node >= n {
        return Err(Error::IndexError { index: node, len: n });
    }
    color_points(d).remove(&node).ok_or(Error::NotAColor(node))
}

/// Checks dimensions, colors and the colored-cone condition for every cone.
/// Intersections of cones are not checked.
pub fn validate_fan(d: &HorosphericalDatum, f: &ColoredFan) -> Result<()> {
    let dim = d.lattice().rank();
    let points = color_points(d);
    for c in f.cones() {
        if c.rays.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidFan(format!("ray dimension differs from rank of M ({dim})")));
        }
        for &a in &c.colors {
            let p = points.get(&a).ok_or_else(|| Error::InvalidFan(format!("node {a} is not a color")))?;
            if p.iter().all(Zero::is_zero) {
                return Err(Error::InvalidFan(format!("color {a} maps to 0")));
            }
            if !in_cone(&c.rays, p) {
                return Err(Error::InvalidFan(format!("color {a} does not lie in its cone")));
            }
        }
    }
    Ok(())
}

/// The Galois action on `N`, as a matrix acting on row vectors.
pub fn gamma_on_n(sigma: &RealStructureSpec, d: &HorosphericalDatum) -> Result<IntMatrix> {
    if !datum_is_stable(sigma, d)? {
        return Err(Error::NotStable);
    }
    let p = gamma_action_matrix(sigma)?;
    Ok(restrict_involution(&p, d.lattice())?.transpose())
}

pub fn fan_is_stable(sigma: &RealStructureSpec, d: &HorosphericalDatum, f: &ColoredFan) -> Result<bool> {
    validate_fan(d, f)?;
    let g = gamma_on_n(sigma, d)?;
    let dim = d.lattice().rank();
    let node_map = match sigma {
        RealStructureSpec::Semisimple { .. } => Some(sigma.node_involution()?),
        RealStructureSpec::Torus { .. } => None,
    };
    for c in f.cones() {
        let rays = c.rays.iter().map(|r| g.apply_row(r)).collect();
        let colors = c.colors.iter().map(|&a| node_map.as_ref().map_or(a, |m| m.apply(a)));
        if !f.contains(&ColoredCone::new(dim, rays, colors)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendabilityReport {
    pub open_orbit: ExistenceReport,
    /// Absent when the datum is not stable.
    pub fan_stable: Option<bool>,
    /// The structure extends, and the real form is then a variety.
    pub extendable: bool,
}

pub fn extendability_report(
    sigma: &RealStructureSpec,
    d: &HorosphericalDatum,
    f: &ColoredFan,
) -> Result<ExtendabilityReport> {
    validate_fan(d, f)?;
    let open_orbit = existence_report(sigma, d)?;
    let fan_stable = if open_orbit.datum_stable { Some(fan_is_stable(sigma, d, f)?) } else { None };
    let extendable = open_orbit.exists && fan_stable == Some(true);
    Ok(ExtendabilityReport { open_orbit, fan_stable, extendable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horospherical::datum_of_maximal_unipotent;
    use crate::realform::enumerate_real_structures;
    use crate::rootsys::GroupSpec;

    fn g(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    fn spec1(ty: &str, label: &str) -> RealStructureSpec {
        RealStructureSpec::semisimple(g(ty), vec![0], [(0, label.to_string())].into()).unwrap()
    }

    fn sl4_datum() -> HorosphericalDatum {
        HorosphericalDatum::from_rows(g("A3"), [1], &[[1, 0, -1]]).unwrap()
    }

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn colors_of_sl4_datum() {
        let d = sl4_datum();
        assert_eq!(color_point(&d, 0).unwrap(), v(&[1]));
        assert_eq!(color_point(&d, 2).unwrap(), v(&[-1]));
        assert_eq!(color_point(&d, 1).unwrap_err(), Error::NotAColor(1));
        let flag = crate::horospherical::datum_of_flag(&g("A3"), [0]).unwrap();
        assert!(color_points(&flag).values().all(|p| p.is_empty()));
    }

    #[test]
    fn action_on_n() {
        let d = sl4_datum();
        assert_eq!(gamma_on_n(&spec1("A3", "SL(4,R)"), &d).unwrap(), IntMatrix::identity(1));
        assert_eq!(gamma_on_n(&spec1("A3", "SU(2,2)"), &d).unwrap(), IntMatrix::square(&[[-1]]));
        let d2 = HorosphericalDatum::from_rows(g("A3"), [1], &[[1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(gamma_on_n(&spec1("A3", "SU(4)"), &d2).unwrap(), IntMatrix::square(&[[0, 1], [1, 0]]));
        let flag = crate::horospherical::datum_of_flag(&g("A3"), [0]).unwrap();
        assert_eq!(gamma_on_n(&spec1("A3", "SU(4)"), &flag).unwrap_err(), Error::NotStable);
    }

    #[test]
    fn sl4_fans() {
        let d = sl4_datum();
        let s = spec1("A3", "SU(4)");
        let trivial = ColoredFan::new([ColoredCone::trivial()]);
        let half = ColoredFan::new([ColoredCone::from_i64(1, &[[1]], []).unwrap()]);
        let both = ColoredFan::new([
            ColoredCone::from_i64(1, &[[1]], []).unwrap(),
            ColoredCone::from_i64(1, &[[-1]], []).unwrap(),
        ]);
        assert!(fan_is_stable(&s, &d, &trivial).unwrap());
        assert!(!fan_is_stable(&s, &d, &half).unwrap());
        assert!(fan_is_stable(&s, &d, &both).unwrap());
        assert!(extendability_report(&s, &d, &both).unwrap().extendable);
        let colored = ColoredFan::new([
            ColoredCone::from_i64(1, &[[1]], [0]).unwrap(),
            ColoredCone::from_i64(1, &[[-1]], [2]).unwrap(),
        ]);
        assert!(fan_is_stable(&s, &d, &colored).unwrap());
        let lopsided = ColoredFan::new([
            ColoredCone::from_i64(1, &[[1]], [0]).unwrap(),
            ColoredCone::from_i64(1, &[[-1]], []).unwrap(),
        ]);
        assert!(!fan_is_stable(&s, &d, &lopsided).unwrap());
    }

    #[test]
    fn sl2_affine_plane() {
        let d = datum_of_maximal_unipotent(&g("A1")).unwrap();
        let fan = ColoredFan::new([ColoredCone::from_i64(1, &[[1]], [0]).unwrap()]);
        assert!(extendability_report(&spec1("A1", "SL(2,R)"), &d, &fan).unwrap().extendable);
        let r = extendability_report(&spec1("A1", "SU(2)"), &d, &fan).unwrap();
        assert!(!r.extendable && r.fan_stable == Some(true) && !r.open_orbit.exists);
    }

    #[test]
    fn invalid_cones() {
        assert!(ColoredCone::from_i64(1, &[[1], [-1]], []).is_err());
        assert!(ColoredCone::from_i64(2, &[[1, 0], [0, 1], [-1, -1]], []).is_err());
        assert!(ColoredCone::from_i64(2, &[[0, 0]], []).is_err());
        assert!(ColoredCone::from_i64(2, &[[1, 0, 0]], []).is_err());
        let c = ColoredCone::from_i64(2, &[[2, 0], [1, 1], [0, 3], [1, 0]], []).unwrap();
        assert_eq!(c.rays(), [v(&[0, 1]), v(&[1, 0])]);
        let d = sl4_datum();
        let f = ColoredFan::new([ColoredCone::from_i64(1, &[[1]], [2]).unwrap()]);
        assert!(matches!(validate_fan(&d, &f), Err(Error::InvalidFan(_))));
        let f = ColoredFan::new([ColoredCone::from_i64(1, &[[1]], [1]).unwrap()]);
        assert!(matches!(validate_fan(&d, &f), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn split_fixes_every_fan() {
        let gs = g("A2");
        let d = HorosphericalDatum::from_rows(gs.clone(), [], &[[1, 0], [0, 1]]).unwrap();
        let fan = ColoredFan::new([
            ColoredCone::from_i64(2, &[[1, 0], [0, 1]], [0, 1]).unwrap(),
            ColoredCone::from_i64(2, &[[-1, 0], [0, 1]], [1]).unwrap(),
        ]);
        for s in enumerate_real_structures(&gs).unwrap() {
            let stable = fan_is_stable(&s, &d, &fan).unwrap();
            if s.node_involution().unwrap().is_identity() {
                assert!(stable, "{s}");
            } else {
                assert!(!stable, "{s}");
            }
        }
    }
}
