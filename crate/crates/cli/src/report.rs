//! Report objects. Every report carries `schema_version` and, where a
//! group is involved, the factor-offset table used for global node indices.

use std::collections::BTreeMap;

use hororeal::cohomology::center_class_trivial;
use hororeal::fans::extendability_report;
use hororeal::horospherical::{apply_gamma_to_datum, existence_report, ExistenceReport};
use hororeal::picard1::{classify_triple, triples};
use hororeal::realform::{
    catalog, display_label, enumerate_real_structures, gamma_action_matrix, tits_representative, RealStructureSpec,
    TitsTable,
};
use hororeal::rootsys::{DynkinType, Family, GroupSpec, WeightVector};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::job::{echo_job, FactorInfo, Job, JobInput, JobResult, NodeMap};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Yes = 0,
    No = 1,
    Invalid = 2,
}

#[derive(Serialize)]
pub struct FactorRow {
    factor: usize,
    written: String,
    canonical: String,
    offset: usize,
    /// Global nodes in written numbering, then their canonical images.
    nodes: Vec<usize>,
    canonical_nodes: Vec<usize>,
}

pub fn factor_table(factors: &[FactorInfo]) -> Vec<FactorRow> {
    factors
        .iter()
        .enumerate()
        .map(|(i, f)| FactorRow {
            factor: i,
            written: f.written(),
            canonical: f.canonical.to_string(),
            offset: f.offset,
            nodes: (0..f.rank).map(|k| f.offset + k).collect(),
            canonical_nodes: f.node_map.iter().map(|&c| f.offset + c).collect(),
        })
        .collect()
}

fn group_name(g: &GroupSpec, factors: &[FactorInfo]) -> String {
    match g {
        GroupSpec::Torus(r) => format!("T{r}"),
        GroupSpec::Semisimple(_) => factors.iter().map(|f| f.written()).join("x"),
    }
}

fn big(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

#[derive(Serialize)]
pub struct DeltaOut {
    is_trivial: bool,
    /// Fixed character of `M` in written numbering with Tits value `-1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Value>>,
}

#[derive(Serialize)]
pub struct TorusOut {
    n0: usize,
    n1: usize,
    n2: usize,
}

#[derive(Serialize)]
pub struct CheckReport {
    schema_version: u32,
    verb: &'static str,
    group: String,
    factor_offsets: Vec<FactorRow>,
    structure: String,
    job: JobInput,
    datum_stable: bool,
    exists_quasi_split: bool,
    delta: Option<DeltaOut>,
    exists: bool,
    num_classes: Option<String>,
    torus_invariants: Option<TorusOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fan_stable: Option<Option<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extendable: Option<bool>,
    reasons: Vec<String>,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub verb: String,
    pub error: String,
}

fn existence_reasons(sigma: &RealStructureSpec, job: &Job, r: &ExistenceReport, map: &NodeMap) -> Vec<String> {
    let d = job.datum.as_ref().expect("datum present");
    let mut out = Vec::new();
    if !r.datum_stable {
        let image = apply_gamma_to_datum(sigma, d).expect("validated job");
        let written = |s: &std::collections::BTreeSet<usize>| {
            s.iter().map(|&c| map.written_node(c)).sorted().join(",")
        };
        if image.nodes() != d.nodes() {
            out.push(format!("gamma(I) = {{{}}} differs from I = {{{}}}", written(image.nodes()), written(d.nodes())));
        } else {
            out.push("gamma(M) differs from M".into());
        }
        out.push("the datum is not Galois-stable, so no equivariant real structure exists".into());
        return out;
    }
    out.push("the datum is Galois-stable, so the quasi-split inner form admits a structure".into());
    match &r.delta {
        Some(dl) if !dl.is_trivial => {
            let w = dl.witness.as_ref().map(|w| map.written_vector(w).iter().join(",")).unwrap_or_default();
            out.push(format!("Delta_H is nontrivial: the Tits class takes the value -1 on the fixed character ({w})"));
        }
        _ => out.push("Delta_H is trivial".into()),
    }
    if let (Some(k), Some((n0, n1, n2))) = (&r.num_classes, r.torus_invariants) {
        out.push(format!("{k} classes = 2^n1 with (n0, n1, n2) = ({n0}, {n1}, {n2}) for the involution on M"));
    }
    out
}

/// `check` and `fan` share one report shape; `with_fan` adds the fan part.
pub fn check_job(input: &JobInput, job: &Job, with_fan: bool) -> JobResult<(CheckReport, Status)> {
    let verb = if with_fan { "fan" } else { "check" };
    let sigma = job.sigma.as_ref().ok_or_else(|| format!("{verb}: sigma is required"))?;
    let d = job.datum.as_ref().ok_or_else(|| format!("{verb}: datum is required"))?;
    let map = NodeMap::new(job.group.total_rank(), &job.factors);
    let (r, fan_part) = if with_fan {
        let f = job.fan.as_ref().ok_or("fan: fan is required")?;
        let e = extendability_report(sigma, d, f).map_err(|e| format!("fan: {e}"))?;
        (e.open_orbit.clone(), Some(e))
    } else {
        (existence_report(sigma, d).map_err(|e| format!("check: {e}"))?, None)
    };
    let mut reasons = existence_reasons(sigma, job, &r, &map);
    if let Some(e) = &fan_part {
        match e.fan_stable {
            None => {}
            Some(true) => reasons.push("the colored fan is stable under the action on N".into()),
            Some(false) => reasons.push("the colored fan is not stable under the action on N".into()),
        }
        reasons.push(if e.extendable {
            "the structure extends to the embedding".into()
        } else {
            "the structure does not extend to the embedding".into()
        });
    }
    let status = match &fan_part {
        Some(e) if e.extendable => Status::Yes,
        Some(_) => Status::No,
        None if r.exists => Status::Yes,
        None => Status::No,
    };
    let report = CheckReport {
        schema_version: SCHEMA_VERSION,
        verb,
        group: group_name(&job.group, &job.factors),
        factor_offsets: factor_table(&job.factors),
        structure: sigma.to_string(),
        job: echo_job(job, input)?,
        datum_stable: r.datum_stable,
        exists_quasi_split: r.exists_quasi_split,
        delta: r.delta.as_ref().map(|dl| DeltaOut {
            is_trivial: dl.is_trivial,
            witness: dl.witness.as_ref().map(|w| map.written_vector(w).iter().map(big).collect()),
        }),
        exists: r.exists,
        num_classes: r.num_classes.as_ref().map(|k| k.to_string()),
        torus_invariants: r.torus_invariants.map(|(n0, n1, n2)| TorusOut { n0, n1, n2 }),
        fan_stable: fan_part.as_ref().map(|e| e.fan_stable),
        extendable: fan_part.as_ref().map(|e| e.extendable),
        reasons,
    };
    Ok((report, status))
}

#[derive(Serialize)]
pub struct StructureRow {
    structure: String,
    factor_perm: Vec<usize>,
    forms: BTreeMap<usize, String>,
    quasi_split: bool,
    tits_trivial: bool,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    schema_version: u32,
    verb: &'static str,
    group: String,
    factor_offsets: Vec<FactorRow>,
    count: usize,
    quasi_split_count: usize,
    structures: Vec<StructureRow>,
}

pub fn classify_group(g: &GroupSpec, factors: &[FactorInfo]) -> JobResult<ClassifyReport> {
    let err = |e: hororeal::Error| format!("classify-group: {e}");
    let mut rows = Vec::new();
    for s in enumerate_real_structures(g).map_err(err)? {
        let RealStructureSpec::Semisimple { factor_perm, forms, .. } = &s else {
            return Err("classify-group: a torus has infinitely many structures; use check".into());
        };
        let theta = gamma_action_matrix(&s).map_err(err)?;
        let z = tits_representative(&s).map_err(err)?;
        let forms: BTreeMap<usize, String> =
            forms.iter().map(|(&i, l)| (i, display_label(factors[i].family, factors[i].rank, l))).collect();
        let structure = (0..factor_perm.len())
            .filter_map(|i| match factor_perm[i] {
                j if j == i => Some(forms[&i].clone()),
                j if j > i => Some(format!("swap({i},{j})")),
                _ => None,
            })
            .join(" x ");
        rows.push(StructureRow {
            structure,
            factor_perm: factor_perm.clone(),
            forms,
            quasi_split: s.is_quasi_split(),
            tits_trivial: center_class_trivial(g, &theta, &z).map_err(err)?,
        });
    }
    rows.sort_by(|a, b| (&a.factor_perm, &a.structure).cmp(&(&b.factor_perm, &b.structure)));
    Ok(ClassifyReport {
        schema_version: SCHEMA_VERSION,
        verb: "classify-group",
        group: group_name(g, factors),
        factor_offsets: factor_table(factors),
        count: rows.len(),
        quasi_split_count: rows.iter().filter(|r| r.quasi_split).count(),
        structures: rows,
    })
}

#[derive(Serialize)]
pub struct Picard1Row {
    triple: String,
    family: String,
    rank: usize,
    y: usize,
    z: usize,
    forms: Vec<Picard1FormOut>,
}

#[derive(Serialize)]
pub struct Picard1FormOut {
    label: String,
    num_classes: String,
}

#[derive(Serialize)]
pub struct Picard1Report {
    schema_version: u32,
    verb: &'static str,
    max_rank: usize,
    triples: Vec<Picard1Row>,
}

pub fn picard1(max_rank: usize) -> JobResult<Picard1Report> {
    let mut rows = Vec::new();
    for t in triples(max_rank) {
        let forms = classify_triple(&t).map_err(|e| format!("picard1: {e}"))?;
        rows.push(Picard1Row {
            triple: t.to_string(),
            family: t.family.letter().to_string(),
            rank: t.rank,
            y: t.y_node + 1,
            z: t.z_node + 1,
            forms: forms
                .into_iter()
                .sorted_by(|a, b| a.label.cmp(&b.label))
                .map(|f| Picard1FormOut { label: f.label, num_classes: f.num_classes.to_string() })
                .collect(),
        });
    }
    Ok(Picard1Report { schema_version: SCHEMA_VERSION, verb: "picard1", max_rank, triples: rows })
}

#[derive(Serialize)]
pub struct TableForm {
    label: String,
    inner_class: &'static str,
    split: bool,
    quasi_split: bool,
    tits_trivial: bool,
}

#[derive(Serialize)]
pub struct TableChecks {
    root_relations: bool,
    galois_fixed: bool,
    minuscule_signs: bool,
    table_signs: bool,
}

#[derive(Serialize)]
pub struct TableType {
    #[serde(rename = "type")]
    dynkin: String,
    rows: usize,
    checks: TableChecks,
    forms: Vec<TableForm>,
}

#[derive(Serialize)]
pub struct TablesReport {
    schema_version: u32,
    verb: &'static str,
    table_version: u32,
    table_rows: usize,
    max_rank: usize,
    all_valid: bool,
    types: Vec<TableType>,
}

fn simple_types(max_rank: usize) -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        for n in 1..=max_rank {
            let renamed = matches!((family, n), (Family::C, 2) | (Family::D, 3));
            if let (false, Ok(t)) = (renamed, DynkinType::new(family, n)) {
                out.push(t);
            }
        }
    }
    out
}

pub fn tables(max_rank: usize) -> JobResult<(TablesReport, Status)> {
    let err = |e: hororeal::Error| format!("tables: {e}");
    let table = TitsTable::embedded();
    let mut types = Vec::new();
    for t in simple_types(max_rank) {
        let g = GroupSpec::Semisimple(vec![t]);
        let cartan = t.cartan_matrix();
        let mut checks = TableChecks { root_relations: true, galois_fixed: true, minuscule_signs: true, table_signs: true };
        let mut forms = Vec::new();
        for r in catalog(t).iter() {
            let theta = r.inner_class.matrix();
            let q = &r.tits_q;
            checks.root_relations &= q.satisfies_root_relations(&cartan);
            checks.galois_fixed &= q.is_galois_fixed(&theta);
            let trivial = center_class_trivial(&g, &theta, q).map_err(err)?;
            let s = RealStructureSpec::semisimple(g.clone(), vec![0], [(0, r.label.clone())].into()).map_err(err)?;
            let mut signs_plus = true;
            for k in t.minuscule_nodes().into_iter().filter(|&k| r.inner_class.apply(k) == k) {
                let v = hororeal::realform::tits_value_on_weight(&s, &WeightVector::fundamental(t.rank(), k)).map_err(err)?;
                signs_plus &= v == 1;
            }
            checks.minuscule_signs &= signs_plus == trivial;
            for &(k, sign) in &r.table_t {
                let v = &q.values()[k];
                checks.table_signs &= if sign < 0 { (v * BigInt::from(2)).is_one() } else { v.is_zero() };
            }
            forms.push(TableForm {
                label: r.label.clone(),
                inner_class: if r.inner_class.is_identity() { "id" } else { "flip" },
                split: r.is_split,
                quasi_split: r.is_quasi_split,
                tits_trivial: trivial,
            });
        }
        types.push(TableType { dynkin: t.to_string(), rows: forms.len(), checks, forms });
    }
    let all_valid = types.iter().all(|t| {
        let c = &t.checks;
        c.root_relations && c.galois_fixed && c.minuscule_signs && c.table_signs
    });
    let report = TablesReport {
        schema_version: SCHEMA_VERSION,
        verb: "tables",
        table_version: table.version,
        table_rows: table.row_count(),
        max_rank,
        all_valid,
        types,
    };
    Ok((report, if all_valid { Status::Yes } else { Status::No }))
}

pub fn render_text_check(r: &CheckReport) -> String {
    let mut out = vec![
        format!("group      {}", r.group),
        format!("structure  {}", r.structure),
        format!("offsets    {}", r.factor_offsets.iter().map(|f| format!("{}@{}", f.written, f.offset)).join(" ")),
        format!("stable     {}", r.datum_stable),
    ];
    if let Some(d) = &r.delta {
        out.push(format!("delta      {}", if d.is_trivial { "trivial" } else { "nontrivial" }));
    }
    out.push(format!("exists     {}", r.exists));
    if let Some(k) = &r.num_classes {
        out.push(format!("classes    {k}"));
    }
    if let Some(t) = &r.torus_invariants {
        out.push(format!("torus      ({}, {}, {})", t.n0, t.n1, t.n2));
    }
    if let Some(e) = r.extendable {
        if let Some(Some(s)) = r.fan_stable {
            out.push(format!("fan stable {s}"));
        }
        out.push(format!("extendable {e}"));
    }
    out.extend(r.reasons.iter().map(|s| format!("reason     {s}")));
    out.join("\n")
}

pub fn render_text_classify(r: &ClassifyReport) -> String {
    let mut out = vec![format!("{}: {} structures, {} quasi-split", r.group, r.count, r.quasi_split_count)];
    for s in &r.structures {
        let mut flags = Vec::new();
        if s.quasi_split {
            flags.push("quasi-split");
        }
        flags.push(if s.tits_trivial { "tits-trivial" } else { "tits-nontrivial" });
        out.push(format!("  {}  [{}]", s.structure, flags.join(", ")));
    }
    out.join("\n")
}

pub fn render_text_picard1(r: &Picard1Report) -> String {
    r.triples
        .iter()
        .map(|t| format!("{}: {}", t.triple, t.forms.iter().map(|f| format!("{} ({})", f.label, f.num_classes)).join(", ")))
        .join("\n")
}

pub fn render_text_tables(r: &TablesReport) -> String {
    let mut out = vec![format!("table version {}, {} rows, valid: {}", r.table_version, r.table_rows, r.all_valid)];
    for t in &r.types {
        let c = &t.checks;
        let ok = c.root_relations && c.galois_fixed && c.minuscule_signs && c.table_signs;
        out.push(format!(
            "  {:<3} {} forms  {}  {}",
            t.dynkin,
            t.rows,
            if ok { "ok" } else { "FAILED" },
            t.forms.iter().map(|f| f.label.as_str()).join(", ")
        ));
    }
    out.join("\n")
}
