//! Job documents: parsing, validation and the mapping between the node
//! numbering of the factors as written and the canonical numbering.

use std::collections::BTreeMap;

use hororeal::fans::{ColoredCone, ColoredFan};
use hororeal::horospherical::HorosphericalDatum;
use hororeal::lattice::{IntMatrix, Sublattice};
use hororeal::realform::{display_label, RealStructureSpec};
use hororeal::rootsys::{canonical_node_map, DynkinType, Family, GroupSpec};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobInput {
    pub group: GroupInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanInput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<FactorInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorInput {
    pub family: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_perm: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumInput {
    #[serde(rename = "I", default)]
    pub nodes: Vec<usize>,
    #[serde(rename = "M_basis", default)]
    pub m_basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanInput {
    pub cones: Vec<ConeInput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeInput {
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub colors: Vec<usize>,
}

/// One simple factor: how it was written and where its nodes live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorInfo {
    pub family: Family,
    pub rank: usize,
    pub canonical: DynkinType,
    pub offset: usize,
    /// `node_map[k]` is the canonical local node of written node `k`.
    pub node_map: Vec<usize>,
}

impl FactorInfo {
    pub fn written(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

/// A validated job in canonical numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub group: GroupSpec,
    pub factors: Vec<FactorInfo>,
    pub sigma: Option<RealStructureSpec>,
    pub datum: Option<HorosphericalDatum>,
    pub fan: Option<ColoredFan>,
}

pub type JobResult<T> = std::result::Result<T, String>;

fn field<T, E: std::fmt::Display>(path: &str, r: std::result::Result<T, E>) -> JobResult<T> {
    r.map_err(|e| format!("{path}: {e}"))
}

pub fn parse_group_string(s: &str) -> JobResult<GroupInput> {
    let s = s.trim();
    if let Some(r) = s.strip_prefix('T') {
        let r = r.parse().map_err(|_| format!("group: bad torus {s:?}"))?;
        return Ok(GroupInput { factors: vec![], torus: Some(r) });
    }
    let mut factors = Vec::new();
    for part in s.split(['x', '*', '×']) {
        let part = part.trim();
        let mut chars = part.chars();
        let family = chars.next().map(String::from).ok_or_else(|| format!("group: empty factor in {s:?}"))?;
        let rank = chars.as_str().parse().map_err(|_| format!("group: bad factor {part:?}"))?;
        factors.push(FactorInput { family, rank });
    }
    Ok(GroupInput { factors, torus: None })
}

pub fn build_group(g: &GroupInput) -> JobResult<(GroupSpec, Vec<FactorInfo>)> {
    match (g.factors.is_empty(), g.torus) {
        (true, Some(r)) => Ok((field("group.torus", GroupSpec::torus(r))?, vec![])),
        (false, None) => {
            let mut infos = Vec::new();
            let mut offset = 0;
            for (i, f) in g.factors.iter().enumerate() {
                let path = format!("group.factors[{i}]");
                let family = f
                    .family
                    .chars()
                    .next()
                    .filter(|_| f.family.len() == 1)
                    .and_then(Family::from_letter)
                    .ok_or_else(|| format!("{path}.family: unknown family {:?}", f.family))?;
                if family == Family::D && f.rank == 2 {
                    return Err(format!("{path}: write D2 as two A1 factors"));
                }
                let canonical = field(&path, DynkinType::new(family, f.rank))?;
                infos.push(FactorInfo { family, rank: f.rank, canonical, offset, node_map: canonical_node_map(family, f.rank) });
                offset += f.rank;
            }
            let group = field("group", GroupSpec::semisimple(infos.iter().map(|f| f.canonical).collect()))?;
            Ok((group, infos))
        }
        _ => Err("group: give either factors or torus".into()),
    }
}

/// Converts between written and canonical global node numbering.
#[derive(Clone, Debug)]
pub struct NodeMap {
    to_canon: Vec<usize>,
}

impl NodeMap {
    pub fn new(rank: usize, factors: &[FactorInfo]) -> Self {
        let mut to_canon: Vec<usize> = (0..rank).collect();
        for f in factors {
            for (k, &c) in f.node_map.iter().enumerate() {
                to_canon[f.offset + k] = f.offset + c;
            }
        }
        NodeMap { to_canon }
    }

    pub fn node(&self, path: &str, n: usize) -> JobResult<usize> {
        self.to_canon.get(n).copied().ok_or_else(|| format!("{path}: node {n} out of range (rank {})", self.to_canon.len()))
    }

    pub fn canon_vector<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.to_canon[i]] = x.clone();
        }
        out
    }

    pub fn written_vector<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.to_canon.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn written_node(&self, c: usize) -> usize {
        self.to_canon.iter().position(|&x| x == c).expect("permutation")
    }
}

fn build_sigma(s: &SigmaInput, group: &GroupSpec, factors: &[FactorInfo]) -> JobResult<RealStructureSpec> {
    match (group, &s.torus_matrix) {
        (GroupSpec::Torus(r), Some(m)) => {
            if s.factor_perm.is_some() || s.forms.is_some() {
                return Err("sigma: a torus takes only torus_matrix".into());
            }
            let m = field("sigma.torus_matrix", IntMatrix::from_rows(*r, m))?;
            field("sigma.torus_matrix", RealStructureSpec::torus(*r, m))
        }
        (GroupSpec::Torus(_), None) => Err("sigma: torus_matrix is required for a torus".into()),
        (GroupSpec::Semisimple(_), Some(_)) => Err("sigma.torus_matrix: group is not a torus".into()),
        (GroupSpec::Semisimple(f), None) => {
            let perm = s.factor_perm.clone().unwrap_or_else(|| (0..f.len()).collect());
            let mut forms = BTreeMap::new();
            for (k, label) in s.forms.iter().flatten() {
                let i: usize = k.parse().map_err(|_| format!("sigma.forms: key {k:?} is not a factor index"))?;
                if i >= factors.len() {
                    return Err(format!("sigma.forms.{k}: no factor {i}"));
                }
                forms.insert(i, label.clone());
            }
            field("sigma", RealStructureSpec::semisimple(group.clone(), perm, forms))
        }
    }
}

fn to_bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn build_job(input: &JobInput) -> JobResult<Job> {
    let (group, factors) = build_group(&input.group)?;
    let n = group.total_rank();
    let map = NodeMap::new(n, &factors);
    let sigma = input.sigma.as_ref().map(|s| build_sigma(s, &group, &factors)).transpose()?;
    let datum = match &input.datum {
        None => None,
        Some(d) => {
            let nodes = d.nodes.iter().enumerate().map(|(i, &a)| map.node(&format!("datum.I[{i}]"), a)).collect::<JobResult<Vec<_>>>()?;
            let mut rows = Vec::new();
            for (i, r) in d.m_basis.iter().enumerate() {
                if r.len() != n {
                    return Err(format!("datum.M_basis[{i}]: expected {n} entries, got {}", r.len()));
                }
                rows.push(map.canon_vector(r));
            }
            let m = field("datum.M_basis", Sublattice::from_rows(n, &rows))?;
            Some(field("datum", HorosphericalDatum::new(group.clone(), nodes, m))?)
        }
    };
    let fan = match &input.fan {
        None => None,
        Some(f) => {
            let dim = datum.as_ref().ok_or("fan: a fan needs a datum")?.lattice().rank();
            let mut cones = Vec::new();
            for (i, c) in f.cones.iter().enumerate() {
                let path = format!("fan.cones[{i}]");
                let colors = c.colors.iter().map(|&a| map.node(&format!("{path}.colors"), a)).collect::<JobResult<Vec<_>>>()?;
                cones.push(field(&path, ColoredCone::new(dim, c.rays.iter().map(|r| to_bigs(r)).collect(), colors))?);
            }
            Some(ColoredFan::new(cones))
        }
    };
    Ok(Job { group, factors, sigma, datum, fan })
}

fn small(x: &BigInt) -> JobResult<i64> {
    x.to_i64().ok_or_else(|| format!("entry {x} does not fit in 64 bits"))
}

/// The job in written numbering with canonical labels; parsing it again
/// gives the same [`Job`].
pub fn echo_job(job: &Job, original: &JobInput) -> JobResult<JobInput> {
    let map = NodeMap::new(job.group.total_rank(), &job.factors);
    let sigma = job.sigma.as_ref().map(|s| match s {
        RealStructureSpec::Torus { torus_matrix, .. } => Ok::<_, String>(SigmaInput {
            factor_perm: None,
            forms: None,
            torus_matrix: Some(torus_matrix.to_rows().iter().map(|r| r.iter().map(small).collect()).collect::<JobResult<_>>()?),
        }),
        RealStructureSpec::Semisimple { factor_perm, forms, .. } => Ok(SigmaInput {
            factor_perm: Some(factor_perm.clone()),
            forms: Some(
                forms
                    .iter()
                    .map(|(&i, l)| (i.to_string(), display_label(job.factors[i].family, job.factors[i].rank, l)))
                    .collect(),
            ),
            torus_matrix: None,
        }),
    });
    let datum = job.datum.as_ref().map(|d| {
        let m_basis = d
            .lattice()
            .basis()
            .to_rows()
            .iter()
            .map(|r| map.written_vector(r).iter().map(small).collect())
            .collect::<JobResult<_>>()?;
        let mut nodes: Vec<usize> = d.nodes().iter().map(|&c| map.written_node(c)).collect();
        nodes.sort_unstable();
        Ok::<_, String>(DatumInput { nodes, m_basis })
    });
    let fan = job.fan.as_ref().map(|f| {
        let cones = f
            .cones()
            .map(|c| {
                let rays = c.rays().iter().map(|r| r.iter().map(small).collect()).collect::<JobResult<_>>()?;
                let mut colors: Vec<usize> = c.colors().iter().map(|&a| map.written_node(a)).collect();
                colors.sort_unstable();
                Ok(ConeInput { rays, colors })
            })
            .collect::<JobResult<_>>()?;
        Ok::<_, String>(FanInput { cones })
    });
    Ok(JobInput {
        group: original.group.clone(),
        sigma: sigma.transpose()?,
        datum: datum.transpose()?,
        fan: fan.transpose()?,
    })
}
