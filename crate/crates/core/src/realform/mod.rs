//! Real group structures: the catalog of real forms of simple groups,
//! structures on products and tori, and Tits-class representatives.

mod expr;
mod table;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{involution_invariants, IntMatrix};
use crate::rootsys::{
    canonical_representative, center_elements, diagram_involutions, CenterElement, DynkinType, Family, GroupSpec,
    NodeInvolution, WeightVector,
};

pub use table::{canonical_label, TableEntry, TitsTable};

/// One real form of a simple simply-connected group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFormRecord {
    pub dynkin: DynkinType,
    pub label: String,
    pub inner_class: NodeInvolution,
    pub tits_q: CenterElement,
    pub is_quasi_split: bool,
    pub is_split: bool,
    pub is_compact: bool,
    /// Signs of the Tits class on detecting minuscule weights, as tabulated.
    pub table_t: Vec<(usize, i8)>,
}

const COMPACT_EXCEPTIONAL: [&str; 5] = ["E6(-78)", "E7(-133)", "E8(-248)", "F4(-52)", "G2(-14)"];

fn is_compact_label(label: &str) -> bool {
    if label == "SU(2)" || COMPACT_EXCEPTIONAL.contains(&label) {
        return true;
    }
    let Some(args) = label.split_once('(').and_then(|(_, r)| r.strip_suffix(')')) else {
        return false;
    };
    args.parse::<u64>().is_ok()
}

/// Solves for a Galois-fixed center element with the tabulated values on
/// the detecting weights (`-1` is the value `1/2`).
fn solve_tits(t: DynkinType, theta: &IntMatrix, signs: &[(usize, i8)]) -> Option<CenterElement> {
    if signs.is_empty() {
        return Some(CenterElement::zero(t.rank()));
    }
    let half = BigRational::new(1.into(), 2.into());
    let g = GroupSpec::Semisimple(vec![t]);
    center_elements(&g).ok()?.into_iter().find(|z| {
        z.is_galois_fixed(theta)
            && signs.iter().all(|&(k, s)| {
                let v = &z.values()[k];
                if s < 0 {
                    *v == half
                } else {
                    v.is_zero()
                }
            })
    })
}

fn build_catalog(t: DynkinType) -> Result<Vec<RealFormRecord>> {
    let entries = TitsTable::embedded().entries(t)?;
    let cartan = t.cartan_matrix();
    entries
        .into_iter()
        .map(|e| {
            let inner_class = if e.flip {
                let perm = t.standard_involution().ok_or_else(|| Error::TableFormat {
                    line: 0,
                    msg: format!("{}: no diagram involution for {t}", e.label),
                })?;
                NodeInvolution::new(perm)?
            } else {
                NodeInvolution::identity(t.rank())
            };
            let theta = inner_class.matrix();
            let tits_q = solve_tits(t, &theta, &e.t).ok_or_else(|| Error::TableFormat {
                line: 0,
                msg: format!("{}: no center element matches {:?}", e.label, e.t),
            })?;
            debug_assert!(tits_q.satisfies_root_relations(&cartan));
            Ok(RealFormRecord {
                dynkin: t,
                is_compact: is_compact_label(&e.label),
                label: e.label,
                inner_class,
                tits_q,
                is_quasi_split: e.quasi_split,
                is_split: e.split,
                table_t: e.t,
            })
        })
        .collect()
}

/// All real forms of `t`, in table order. Results are cached.
pub fn catalog(t: DynkinType) -> Arc<Vec<RealFormRecord>> {
    static CACHE: OnceLock<Mutex<HashMap<DynkinType, Arc<Vec<RealFormRecord>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("catalog cache").get(&t) {
        return c.clone();
    }
    let built = Arc::new(build_catalog(t).unwrap_or_else(|e| panic!("embedded table invalid for {t}: {e}")));
    cache.lock().expect("catalog cache").entry(t).or_insert(built).clone()
}

fn aliases(t: DynkinType) -> &'static [(&'static str, &'static str)] {
    match (t.family(), t.rank()) {
        (Family::A, 1) => &[
            ("SU(1,1)", "SL(2,R)"),
            ("Sp(2,R)", "SL(2,R)"),
            ("Spin(2,1)", "SL(2,R)"),
            ("Sp(1)", "SU(2)"),
            ("Spin(3)", "SU(2)"),
        ],
        (Family::B, 2) => &[("Sp(4,R)", "Spin(3,2)"), ("Sp(1,1)", "Spin(4,1)"), ("Sp(2)", "Spin(5)")],
        (Family::A, 3) => &[
            ("Spin(3,3)", "SL(4,R)"),
            ("Spin(5,1)", "SL(2,H)"),
            ("Spin(4,2)", "SU(2,2)"),
            ("Spin*(6)", "SU(3,1)"),
            ("Spin(6)", "SU(4)"),
        ],
        (Family::D, 4) => &[("Spin*(8)", "Spin(6,2)")],
        _ => &[],
    }
}

/// Looks up a label (canonical name or accepted alias) for type `t`.
pub fn find_record(t: DynkinType, label: &str) -> Result<RealFormRecord> {
    let c = canonical_label(label);
    let c = aliases(t).iter().find(|(a, _)| *a == c).map_or(c.as_str(), |(_, b)| b).to_string();
    catalog(t)
        .iter()
        .find(|r| r.label == c)
        .cloned()
        .ok_or_else(|| Error::UnknownLabel { label: label.to_string(), dynkin: t.to_string() })
}

/// Name of a form as written for the type `(family, rank)` before
/// canonicalization: `C2` forms use symplectic names, `D3` forms spin names.
pub fn display_label(family: Family, rank: usize, label: &str) -> String {
    let map: &[(&str, &str)] = match (family, rank) {
        (Family::C, 2) => &[("Spin(3,2)", "Sp(4,R)"), ("Spin(4,1)", "Sp(1,1)"), ("Spin(5)", "Sp(2)")],
        (Family::D, 3) => &[
            ("SL(4,R)", "Spin(3,3)"),
            ("SL(2,H)", "Spin(5,1)"),
            ("SU(2,2)", "Spin(4,2)"),
            ("SU(3,1)", "Spin*(6)"),
            ("SU(4)", "Spin(6)"),
        ],
        _ => &[],
    };
    map.iter().find(|(a, _)| *a == label).map_or(label, |(_, b)| b).to_string()
}

/// A real group structure up to equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealStructureSpec {
    Semisimple {
        group: GroupSpec,
        /// Involutive, type-preserving permutation of factor indices.
        factor_perm: Vec<usize>,
        /// Canonical label for every factor fixed by `factor_perm`.
        forms: BTreeMap<usize, String>,
    },
    Torus {
        group: GroupSpec,
        /// Involution of the cocharacter lattice.
        torus_matrix: IntMatrix,
    },
}

impl RealStructureSpec {
    pub fn semisimple(group: GroupSpec, factor_perm: Vec<usize>, forms: BTreeMap<usize, String>) -> Result<Self> {
        let factors = group.require_semisimple()?.to_vec();
        let k = factors.len();
        if factor_perm.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: factor_perm.len() });
        }
        for (i, &j) in factor_perm.iter().enumerate() {
            if j >= k {
                return Err(Error::IndexError { index: j, len: k });
            }
            if factor_perm[j] != i {
                return Err(Error::InvalidStructure("factor permutation is not an involution".into()));
            }
            if factors[i] != factors[j] {
                return Err(Error::InvalidStructure(format!("factors {i} and {j} have different types")));
            }
        }
        let mut canon = BTreeMap::new();
        for (&i, label) in &forms {
            if i >= k {
                return Err(Error::IndexError { index: i, len: k });
            }
            if factor_perm[i] != i {
                return Err(Error::InvalidStructure(format!("swapped factor {i} carries a label")));
            }
            canon.insert(i, find_record(factors[i], label)?.label);
        }
        if let Some(i) = (0..k).find(|&i| factor_perm[i] == i && !canon.contains_key(&i)) {
            return Err(Error::InvalidStructure(format!("fixed factor {i} has no real form label")));
        }
        Ok(RealStructureSpec::Semisimple { group, factor_perm, forms: canon })
    }

    pub fn torus(rank: usize, torus_matrix: IntMatrix) -> Result<Self> {
        let group = GroupSpec::torus(rank)?;
        if torus_matrix.rows() != rank || torus_matrix.cols() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: torus_matrix.rows() });
        }
        if !torus_matrix.is_involution() {
            return Err(Error::NotInvolution);
        }
        Ok(RealStructureSpec::Torus { group, torus_matrix })
    }

    /// The split structure: identity permutation, split form everywhere.
    pub fn split(group: &GroupSpec) -> Result<Self> {
        match group {
            GroupSpec::Torus(r) => Self::torus(*r, IntMatrix::identity(*r)),
            GroupSpec::Semisimple(f) => {
                let forms = f
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (i, catalog(*t).iter().find(|r| r.is_split).expect("split form").label.clone()))
                    .collect();
                Self::semisimple(group.clone(), (0..f.len()).collect(), forms)
            }
        }
    }

    pub fn group(&self) -> &GroupSpec {
        match self {
            RealStructureSpec::Semisimple { group, .. } | RealStructureSpec::Torus { group, .. } => group,
        }
    }

    /// Catalog records of the fixed factors.
    pub fn records(&self) -> Result<BTreeMap<usize, RealFormRecord>> {
        match self {
            RealStructureSpec::Semisimple { group, forms, .. } => {
                let f = group.factors();
                forms.iter().map(|(&i, l)| Ok((i, find_record(f[i], l)?))).collect()
            }
            RealStructureSpec::Torus { .. } => Err(Error::NotSemisimple),
        }
    }

    /// Permutation of global nodes induced by the quasi-split form.
    pub fn node_involution(&self) -> Result<NodeInvolution> {
        let RealStructureSpec::Semisimple { group, factor_perm, .. } = self else {
            return Err(Error::NotSemisimple);
        };
        let offs = group.factor_offsets();
        let mut perm: Vec<usize> = (0..group.total_rank()).collect();
        let records = self.records()?;
        for (i, t) in group.factors().iter().enumerate() {
            let j = factor_perm[i];
            for node in 0..t.rank() {
                perm[offs[i] + node] =
                    if i == j { offs[i] + records[&i].inner_class.apply(node) } else { offs[j] + node };
            }
        }
        NodeInvolution::new(perm)
    }

    /// Invariant of the equivalence class: per factor type, the number of
    /// swapped pairs and the sorted labels of the fixed factors.
    pub fn equivalence_key(&self) -> Option<BTreeMap<DynkinType, (usize, Vec<String>)>> {
        let RealStructureSpec::Semisimple { group, factor_perm, forms } = self else {
            return None;
        };
        let mut key: BTreeMap<DynkinType, (usize, Vec<String>)> = BTreeMap::new();
        for (i, t) in group.factors().iter().enumerate() {
            let e = key.entry(*t).or_default();
            match forms.get(&i) {
                Some(l) => e.1.push(l.clone()),
                None if factor_perm[i] > i => e.0 += 1,
                None => {}
            }
        }
        key.values_mut().for_each(|(_, l)| l.sort());
        Some(key)
    }

    pub fn is_quasi_split(&self) -> bool {
        match self {
            RealStructureSpec::Torus { .. } => true,
            RealStructureSpec::Semisimple { .. } => {
                self.records().map(|r| r.values().all(|x| x.is_quasi_split)).unwrap_or(false)
            }
        }
    }
}

impl fmt::Display for RealStructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealStructureSpec::Torus { torus_matrix, .. } => write!(f, "torus {torus_matrix}"),
            RealStructureSpec::Semisimple { factor_perm, forms, .. } => {
                let parts = factor_perm.iter().enumerate().filter_map(|(i, &j)| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => Some(forms[&i].clone()),
                    std::cmp::Ordering::Less => Some(format!("swap({i},{j})")),
                    std::cmp::Ordering::Greater => None,
                });
                write!(f, "{}", parts.format(" x "))
            }
        }
    }
}

fn factor_indices_by_type(g: &GroupSpec) -> BTreeMap<DynkinType, Vec<usize>> {
    let mut by_type: BTreeMap<DynkinType, Vec<usize>> = BTreeMap::new();
    for (k, t) in g.factors().iter().enumerate() {
        by_type.entry(*t).or_default().push(k);
    }
    by_type
}

/// Builds a spec from per-type choices: the first `2 * pairs` factors of a
/// type are swapped consecutively, the remaining ones get `labels` in order.
fn assemble(g: &GroupSpec, choices: &[(DynkinType, usize, Vec<String>)]) -> Result<RealStructureSpec> {
    let by_type = factor_indices_by_type(g);
    let mut perm: Vec<usize> = (0..g.factors().len()).collect();
    let mut forms = BTreeMap::new();
    for (t, pairs, labels) in choices {
        let idxs = &by_type[t];
        for p in 0..*pairs {
            perm[idxs[2 * p]] = idxs[2 * p + 1];
            perm[idxs[2 * p + 1]] = idxs[2 * p];
        }
        for (&k, l) in idxs[2 * pairs..].iter().zip(labels) {
            forms.insert(k, l.clone());
        }
    }
    RealStructureSpec::semisimple(g.clone(), perm, forms)
}

/// One quasi-split structure per conjugacy class of involutive diagram
/// automorphisms.
pub fn quasi_split_classes(g: &GroupSpec) -> Result<Vec<RealStructureSpec>> {
    diagram_involutions(g)?
        .into_iter()
        .map(|class| {
            let choices: Vec<_> = class
                .signature
                .iter()
                .map(|(t, &(pairs, nontrivial))| {
                    let count = g.factors().iter().filter(|f| *f == t).count() - 2 * pairs;
                    let cat = catalog(*t);
                    let qs = |flip: bool| {
                        cat.iter()
                            .find(|r| r.is_quasi_split && r.inner_class.is_identity() != flip)
                            .expect("quasi-split form in each inner class")
                            .label
                            .clone()
                    };
                    let labels =
                        (0..count).map(|i| qs(i < nontrivial)).collect::<Vec<_>>();
                    (*t, pairs, labels)
                })
                .collect();
            let spec = assemble(g, &choices)?;
            debug_assert_eq!(spec.node_involution()?, canonical_representative(g, &class.signature));
            Ok(spec)
        })
        .collect()
}

/// All real group structures on `g` up to equivalence.
pub fn enumerate_real_structures(g: &GroupSpec) -> Result<Vec<RealStructureSpec>> {
    g.require_semisimple()?;
    let by_type = factor_indices_by_type(g);
    let mut per_type: Vec<Vec<(DynkinType, usize, Vec<String>)>> = Vec::new();
    for (t, idxs) in &by_type {
        let labels: Vec<String> = catalog(*t).iter().map(|r| r.label.clone()).collect();
        let mut opts = Vec::new();
        for pairs in 0..=idxs.len() / 2 {
            let fixed = idxs.len() - 2 * pairs;
            for combo in (0..labels.len()).combinations_with_replacement(fixed) {
                opts.push((*t, pairs, combo.into_iter().map(|i| labels[i].clone()).collect()));
            }
        }
        per_type.push(opts);
    }
    per_type.into_iter().multi_cartesian_product().map(|choices| assemble(g, &choices)).collect()
}

/// Action of the real structure on the character lattice, in
/// fundamental-weight coordinates (or, for a torus, the transpose of the
/// cocharacter action).
pub fn gamma_action_matrix(s: &RealStructureSpec) -> Result<IntMatrix> {
    match s {
        RealStructureSpec::Torus { torus_matrix, .. } => Ok(torus_matrix.transpose()),
        RealStructureSpec::Semisimple { .. } => Ok(s.node_involution()?.matrix()),
    }
}

/// Representative of the Tits class: the tabulated element on each fixed
/// factor, zero on swapped pairs.
pub fn tits_representative(s: &RealStructureSpec) -> Result<CenterElement> {
    let RealStructureSpec::Semisimple { group, factor_perm, .. } = s else {
        return Ok(CenterElement::zero(0));
    };
    let records = s.records()?;
    let parts: Vec<CenterElement> = group
        .factors()
        .iter()
        .enumerate()
        .map(|(i, t)| if factor_perm[i] == i { records[&i].tits_q.clone() } else { CenterElement::zero(t.rank()) })
        .collect();
    Ok(CenterElement::concat(&parts))
}

/// Value `chi(t)` in `{+1, -1}` for a Galois-fixed weight `chi`.
pub fn tits_value_on_weight(s: &RealStructureSpec, chi: &WeightVector) -> Result<i8> {
    let p = gamma_action_matrix(s)?;
    if chi.len() != p.rows() {
        return Err(Error::DimensionMismatch { expected: p.rows(), got: chi.len() });
    }
    if p.apply_row(&chi.0) != chi.0 {
        return Err(Error::NotFixed);
    }
    if matches!(s, RealStructureSpec::Torus { .. }) {
        return Ok(1);
    }
    let v = tits_representative(s)?.pair(&chi.0);
    if v.is_zero() {
        Ok(1)
    } else if v == BigRational::new(BigInt::from(1), BigInt::from(2)) {
        Ok(-1)
    } else {
        Err(Error::NotFixed)
    }
}

/// `(n0, n1, n2)` for an involution of a cocharacter lattice.
pub fn torus_structure_normal_form(a: &IntMatrix) -> Result<(usize, usize, usize)> {
    Ok(involution_invariants(a)?.triple())
}
