//! Self-contained JSON documents for the structures the tool checks —
//! multicategories, enriched categories, graphs, functors, equivalence
//! data, and simplicial sets — plus deterministic seeded generation of
//! test instances and a manifest-driven corpus validator.

use crate::enrich::base::{base_boolean, base_finset, base_terminal, Base, Mor};
use crate::enrich::{EnrichedCategory, VFunctor};
use crate::enrich::{tensor_interval, tensor_object_name};
use crate::fincat::FinCat;
use crate::multicat::{Multicategory, OpRef, TableMulticat};
use crate::segal::TruncatedSSet;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad document {0}: {1}")]
    BadDocument(String, String),
}

// ---------------------------------------------------------------------------
// Bases

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum BaseDoc {
    Terminal,
    Boolean,
    Finset { cap: usize },
}

impl BaseDoc {
    pub fn to_base(&self) -> Base {
        match self {
            BaseDoc::Terminal => base_terminal(),
            BaseDoc::Boolean => base_boolean(),
            BaseDoc::Finset { cap } => base_finset(*cap),
        }
    }

    pub fn of_base(base: &Base) -> Option<BaseDoc> {
        match base {
            Base::Terminal => Some(BaseDoc::Terminal),
            Base::Boolean => Some(BaseDoc::Boolean),
            Base::FinSet { cap } => Some(BaseDoc::Finset { cap: *cap }),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Multicategories

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultihomEntry {
    pub inputs: Vec<String>,
    pub output: String,
    pub ops: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub outer: OpRef,
    pub inners: Vec<OpRef>,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub colors: Vec<String>,
    pub arity_cap: usize,
    pub multihom: Vec<MultihomEntry>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<ComposeEntry>,
}

/// A multicategory document: either a named builtin (`assoc`, `bm`,
/// `lm`, `rm`, or `os:` followed by comma-separated elements) or an
/// explicit table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticatDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDoc>,
}

impl MulticatDoc {
    pub fn to_multicat(&self) -> Result<Multicategory, CorpusError> {
        if let Some(b) = &self.builtin {
            return match b.as_str() {
                "assoc" => Ok(crate::multicat::builtin_assoc()),
                "bm" => Ok(crate::multicat::builtin_bm()),
                "lm" => Ok(crate::multicat::builtin_lm()),
                "rm" => Ok(crate::multicat::builtin_rm()),
                other => {
                    if let Some(rest) = other.strip_prefix("os:") {
                        let elems: Vec<String> =
                            rest.split(',').map(|s| s.trim().to_string()).collect();
                        Ok(crate::multicat::builtin_os_owned(elems))
                    } else {
                        Err(CorpusError::BadDocument(
                            self.name.clone(),
                            format!("unknown builtin {other:?}"),
                        ))
                    }
                }
            };
        }
        let Some(t) = &self.table else {
            return Err(CorpusError::BadDocument(
                self.name.clone(),
                "neither builtin nor table given".into(),
            ));
        };
        let mut multihom = BTreeMap::new();
        for e in &t.multihom {
            multihom.insert((e.inputs.clone(), e.output.clone()), e.ops.clone());
        }
        let mut compose = BTreeMap::new();
        for e in &t.compose {
            compose.insert((e.outer.clone(), e.inners.clone()), e.result.clone());
        }
        Ok(Multicategory::Table(TableMulticat {
            colors: t.colors.clone(),
            arity_cap: t.arity_cap,
            multihom,
            identities: t.identities.clone(),
            compose,
        }))
    }

    pub fn of_table(name: &str, t: &TableMulticat) -> MulticatDoc {
        MulticatDoc {
            name: name.to_string(),
            builtin: None,
            table: Some(TableDoc {
                colors: t.colors.clone(),
                arity_cap: t.arity_cap,
                multihom: t
                    .multihom
                    .iter()
                    .map(|((inputs, output), ops)| MultihomEntry {
                        inputs: inputs.clone(),
                        output: output.clone(),
                        ops: ops.clone(),
                    })
                    .collect(),
                identities: t.identities.clone(),
                compose: t
                    .compose
                    .iter()
                    .map(|((outer, inners), result)| ComposeEntry {
                        outer: outer.clone(),
                        inners: inners.clone(),
                        result: result.clone(),
                    })
                    .collect(),
            }),
        }
    }

    pub fn of_builtin(name: &str, builtin: &str) -> MulticatDoc {
        MulticatDoc {
            name: name.to_string(),
            builtin: Some(builtin.to_string()),
            table: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Enriched categories

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub src: String,
    pub tgt: String,
    pub ob: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompEntry {
    pub x: String,
    pub y: String,
    pub z: String,
    pub mor: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEntry {
    pub x: String,
    pub mor: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrichedDoc {
    pub name: String,
    pub base: BaseDoc,
    pub objects: Vec<String>,
    pub hom: Vec<HomEntry>,
    pub comp: Vec<CompEntry>,
    pub unit: Vec<UnitEntry>,
}

impl EnrichedDoc {
    pub fn to_enriched(&self) -> EnrichedCategory {
        EnrichedCategory {
            base: Arc::new(self.base.to_base()),
            objects: self.objects.clone(),
            hom_ob: self
                .hom
                .iter()
                .map(|e| ((e.src.clone(), e.tgt.clone()), e.ob))
                .collect(),
            comp: self
                .comp
                .iter()
                .map(|e| ((e.x.clone(), e.y.clone(), e.z.clone()), e.mor))
                .collect(),
            unit: self.unit.iter().map(|e| (e.x.clone(), e.mor)).collect(),
        }
    }

    pub fn of_enriched(name: &str, c: &EnrichedCategory) -> Option<EnrichedDoc> {
        Some(EnrichedDoc {
            name: name.to_string(),
            base: BaseDoc::of_base(&c.base)?,
            objects: c.objects.clone(),
            hom: c
                .hom_ob
                .iter()
                .map(|((src, tgt), ob)| HomEntry {
                    src: src.clone(),
                    tgt: tgt.clone(),
                    ob: *ob,
                })
                .collect(),
            comp: c
                .comp
                .iter()
                .map(|((x, y, z), mor)| CompEntry {
                    x: x.clone(),
                    y: y.clone(),
                    z: z.clone(),
                    mor: *mor,
                })
                .collect(),
            unit: c
                .unit
                .iter()
                .map(|(x, mor)| UnitEntry { x: x.clone(), mor: *mor })
                .collect(),
        })
    }
}

// ---------------------------------------------------------------------------
// Graphs, functors, equivalence data, simplicial sets

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub src: String,
    pub tgt: String,
    pub ob: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub name: String,
    pub base: BaseDoc,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
}

impl GraphDoc {
    pub fn to_graph(&self) -> crate::enrich::VGraph {
        crate::enrich::VGraph {
            base: Arc::new(self.base.to_base()),
            vertices: self.vertices.clone(),
            edge_ob: self
                .edges
                .iter()
                .map(|e| ((e.src.clone(), e.tgt.clone()), e.ob))
                .collect(),
        }
    }

    pub fn of_graph(name: &str, g: &crate::enrich::VGraph) -> Option<GraphDoc> {
        Some(GraphDoc {
            name: name.to_string(),
            base: BaseDoc::of_base(&g.base)?,
            vertices: g.vertices.clone(),
            edges: g
                .edge_ob
                .iter()
                .map(|((src, tgt), ob)| EdgeEntry {
                    src: src.clone(),
                    tgt: tgt.clone(),
                    ob: *ob,
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObMapEntry {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorMapEntry {
    pub src: String,
    pub tgt: String,
    pub mor: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub name: String,
    pub source: EnrichedDoc,
    pub target: EnrichedDoc,
    pub ob_map: Vec<ObMapEntry>,
    pub mor_map: Vec<MorMapEntry>,
}

impl FunctorDoc {
    pub fn to_vfunctor(&self) -> VFunctor {
        VFunctor {
            source: self.source.to_enriched(),
            target: self.target.to_enriched(),
            ob_map: self
                .ob_map
                .iter()
                .map(|e| (e.from.clone(), e.to.clone()))
                .collect(),
            mor_map: self
                .mor_map
                .iter()
                .map(|e| ((e.src.clone(), e.tgt.clone()), e.mor))
                .collect(),
        }
    }

    pub fn of_vfunctor(name: &str, f: &VFunctor) -> Option<FunctorDoc> {
        Some(FunctorDoc {
            name: name.to_string(),
            source: EnrichedDoc::of_enriched(&format!("{name}.source"), &f.source)?,
            target: EnrichedDoc::of_enriched(&format!("{name}.target"), &f.target)?,
            ob_map: f
                .ob_map
                .iter()
                .map(|(from, to)| ObMapEntry { from: from.clone(), to: to.clone() })
                .collect(),
            mor_map: f
                .mor_map
                .iter()
                .map(|((src, tgt), mor)| MorMapEntry {
                    src: src.clone(),
                    tgt: tgt.clone(),
                    mor: *mor,
                })
                .collect(),
        })
    }
}

/// A categorical equivalence datum: functors both ways plus the two
/// homotopies, each a functor out of the cylinder on its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceDoc {
    pub name: String,
    pub f: FunctorDoc,
    pub g: FunctorDoc,
    pub phi: FunctorDoc,
    pub psi: FunctorDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsetMapEntry {
    pub n: usize,
    pub i: usize,
    pub table: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsetDoc {
    pub name: String,
    pub dim_cap: usize,
    pub levels: Vec<Vec<String>>,
    pub faces: Vec<SsetMapEntry>,
    pub degens: Vec<SsetMapEntry>,
}

impl SsetDoc {
    pub fn to_sset(&self) -> TruncatedSSet {
        let pack = |entries: &[SsetMapEntry]| {
            entries
                .iter()
                .map(|e| ((e.n, e.i), e.table.iter().cloned().collect()))
                .collect()
        };
        TruncatedSSet {
            dim_cap: self.dim_cap,
            levels: self.levels.clone(),
            faces: pack(&self.faces),
            degens: pack(&self.degens),
        }
    }

    pub fn of_sset(name: &str, x: &TruncatedSSet) -> SsetDoc {
        let unpack = |maps: &BTreeMap<(usize, usize), BTreeMap<String, String>>| {
            maps.iter()
                .map(|(&(n, i), table)| SsetMapEntry {
                    n,
                    i,
                    table: table.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
                })
                .collect()
        };
        SsetDoc {
            name: name.to_string(),
            dim_cap: x.dim_cap,
            levels: x.levels.clone(),
            faces: unpack(&x.faces),
            degens: unpack(&x.degens),
        }
    }
}

// ---------------------------------------------------------------------------
// Documents and manifests

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Multicategory(MulticatDoc),
    Enriched(EnrichedDoc),
    Graph(GraphDoc),
    Functor(FunctorDoc),
    EquivalenceDatum(EquivalenceDoc),
    SimplicialSet(SsetDoc),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Multicategory(d) => &d.name,
            Document::Enriched(d) => &d.name,
            Document::Graph(d) => &d.name,
            Document::Functor(d) => &d.name,
            Document::EquivalenceDatum(d) => &d.name,
            Document::SimplicialSet(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Multicategory(_) => "multicategory",
            Document::Enriched(_) => "enriched",
            Document::Graph(_) => "graph",
            Document::Functor(_) => "functor",
            Document::EquivalenceDatum(_) => "equivalence-datum",
            Document::SimplicialSet(_) => "simplicial-set",
        }
    }

    pub fn parse(text: &str) -> Result<Document, CorpusError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Run the owning module's check on a document. Returns findings;
/// an empty list means the document is valid.
pub fn validate_document(doc: &Document) -> Vec<String> {
    let mut findings = Vec::new();
    match doc {
        Document::Multicategory(d) => match d.to_multicat() {
            Err(e) => findings.push(format!("{}: {e}", d.name)),
            Ok(m) => {
                // Arity 3 is the first level with nontrivial regroupings and
                // keeps a whole-corpus sweep fast; the check-multicat command
                // exposes deeper caps on demand.
                let cap = m.table_arity_cap().unwrap_or(3).min(3);
                let report = crate::multicat::check_multicategory(&m, cap);
                for v in report.violations {
                    findings.push(format!("{}: {v:?}", d.name));
                }
            }
        },
        Document::Enriched(d) => {
            let c = d.to_enriched();
            for v in crate::enrich::check_enriched(&c).violations {
                findings.push(format!("{}: {v:?}", d.name));
            }
        }
        Document::Graph(d) => {
            let g = d.to_graph();
            if let Err(e) = crate::enrich::free_enriched(&g) {
                findings.push(format!("{}: {e}", d.name));
            }
        }
        Document::Functor(d) => {
            let f = d.to_vfunctor();
            for v in crate::enrich::check_vfunctor(&f).violations {
                findings.push(format!("{}: {v:?}", d.name));
            }
        }
        Document::EquivalenceDatum(d) => {
            let (f, g, phi, psi) = (
                d.f.to_vfunctor(),
                d.g.to_vfunctor(),
                d.phi.to_vfunctor(),
                d.psi.to_vfunctor(),
            );
            match crate::enrich::is_categorical_equivalence_datum(&f, &g, &phi, &psi) {
                Ok(true) => {}
                Ok(false) => findings.push(format!(
                    "{}: the two homotopies do not exhibit an equivalence",
                    d.name
                )),
                Err(e) => findings.push(format!("{}: {e}", d.name)),
            }
        }
        Document::SimplicialSet(d) => {
            let x = d.to_sset();
            for v in crate::segal::check_sset(&x).violations {
                findings.push(format!("{}: {v:?}", d.name));
            }
        }
    }
    findings
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub kind: String,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub seed: u64,
    pub documents: Vec<ManifestEntry>,
}

// ---------------------------------------------------------------------------
// Conversions between ordinary and enriched finite categories

/// Present an ordinary finite category as a category enriched in finite
/// sets; hom elements are numbered by the sorted order of morphism names.
pub fn enriched_of_fincat(c: &FinCat, cap: usize) -> EnrichedCategory {
    let base = Arc::new(base_finset(cap));
    let mut hom_ob = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut unit = BTreeMap::new();
    for x in &c.objects {
        let id = c.id(x);
        let own = c.hom(x, x);
        let idx = own.iter().position(|f| f == id).unwrap();
        unit.insert(x.clone(), crate::enrich::base::finset_mor(1, own.len(), &[idx]));
        for y in &c.objects {
            hom_ob.insert((x.clone(), y.clone()), c.hom(x, y).len());
        }
    }
    for x in &c.objects {
        for y in &c.objects {
            for z in &c.objects {
                let fs = c.hom(x, y);
                let gs = c.hom(y, z);
                let hs = c.hom(x, z);
                let mut values = Vec::with_capacity(fs.len() * gs.len());
                for f in &fs {
                    for g in &gs {
                        let fg = c.comp(f, g).expect("composable by typing");
                        values.push(hs.iter().position(|h| h == fg).unwrap());
                    }
                }
                comp.insert(
                    (x.clone(), y.clone(), z.clone()),
                    crate::enrich::base::finset_mor(fs.len() * gs.len(), hs.len(), &values),
                );
            }
        }
    }
    EnrichedCategory { base, objects: c.objects.clone(), hom_ob, comp, unit }
}

// ---------------------------------------------------------------------------
// Seeded generation

/// The seed used for the shipped corpus and the acceptance runs.
pub const DEFAULT_SEED: u64 = 20;

fn monoid_multicat(table: &[Vec<usize>], identity: usize) -> TableMulticat {
    let n = table.len();
    let color = "x".to_string();
    let elem = |i: usize| format!("e{i}");
    let mut multihom = BTreeMap::new();
    for arity in 0..=3usize {
        multihom.insert(
            (vec![color.clone(); arity], color.clone()),
            (0..n).map(elem).collect(),
        );
    }
    let identities = BTreeMap::from([(color.clone(), elem(identity))]);
    let mut compose = BTreeMap::new();
    let ops_of = |arity: usize| -> Vec<OpRef> {
        (0..n)
            .map(|i| OpRef {
                inputs: vec![color.clone(); arity],
                output: color.clone(),
                op: elem(i),
            })
            .collect()
    };
    // γ(g; f_1, …, f_k) multiplies out; this is well defined exactly
    // because the monoid is commutative
    for outer_arity in 0..=3usize {
        for outer in ops_of(outer_arity) {
            for split in arity_splits(outer_arity, 3) {
                let inner_choices: Vec<Vec<OpRef>> =
                    split.iter().map(|&a| ops_of(a)).collect();
                for combo in cartesian(&inner_choices) {
                    let mut acc = op_index(&outer.op);
                    for inner in &combo {
                        acc = table[acc][op_index(&inner.op)];
                    }
                    compose.insert((outer.clone(), combo), elem(acc));
                }
            }
        }
    }
    TableMulticat {
        colors: vec![color],
        arity_cap: 3,
        multihom,
        identities,
        compose,
    }
}

fn op_index(op: &str) -> usize {
    op[1..].parse().unwrap()
}

/// All ways to assign arities to `k` inner slots with total at most `cap`.
fn arity_splits(k: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for prefix in &out {
            let used: usize = prefix.iter().sum();
            for a in 0..=cap.saturating_sub(used) {
                let mut p = prefix.clone();
                p.push(a);
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|s| s.iter().sum::<usize>() <= cap);
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &out {
            for item in c {
                let mut p = prefix.clone();
                p.push(item.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// A small category as a multicategory with operations in arity one only.
fn linear_multicat(c: &FinCat) -> TableMulticat {
    let mut multihom = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for x in &c.objects {
        for y in &c.objects {
            let ops: Vec<String> = c.hom(x, y);
            if !ops.is_empty() {
                multihom.insert((vec![x.clone()], y.clone()), ops);
            }
        }
    }
    for (f, (fx, fy)) in &c.morphisms {
        for (g, (gx, gy)) in &c.morphisms {
            if fy == gx {
                let outer = OpRef {
                    inputs: vec![gx.clone()],
                    output: gy.clone(),
                    op: g.clone(),
                };
                let inner = OpRef {
                    inputs: vec![fx.clone()],
                    output: fy.clone(),
                    op: f.clone(),
                };
                compose.insert(
                    (outer, vec![inner]),
                    c.comp(f, g).unwrap().to_string(),
                );
            }
        }
    }
    TableMulticat {
        colors: c.objects.clone(),
        arity_cap: 3,
        multihom,
        identities: c.identities.clone(),
        compose,
    }
}

/// The terminal multicategory on a color set: every multihom within the
/// arity cap is a singleton.
fn terminal_multicat(colors: &[&str]) -> TableMulticat {
    let colors: Vec<String> = colors.iter().map(|s| s.to_string()).collect();
    let mut multihom = BTreeMap::new();
    let mut compose = BTreeMap::new();
    let mut typings: Vec<(Vec<String>, String)> = Vec::new();
    for arity in 0..=3usize {
        for inputs in cartesian(&vec![colors.clone(); arity]) {
            for out in &colors {
                typings.push((inputs.clone(), out.clone()));
            }
        }
    }
    for (inputs, out) in &typings {
        multihom.insert((inputs.clone(), out.clone()), vec!["u".to_string()]);
    }
    for (inputs, out) in &typings {
        let outer = OpRef { inputs: inputs.clone(), output: out.clone(), op: "u".into() };
        let slot_choices: Vec<Vec<(Vec<String>, String)>> = inputs
            .iter()
            .map(|slot| {
                typings
                    .iter()
                    .filter(|(_, o)| o == slot)
                    .cloned()
                    .collect()
            })
            .collect();
        for combo in cartesian(&slot_choices) {
            let total: usize = combo.iter().map(|(i, _)| i.len()).sum();
            if total > 3 {
                continue;
            }
            let inners: Vec<OpRef> = combo
                .into_iter()
                .map(|(i, o)| OpRef { inputs: i, output: o, op: "u".into() })
                .collect();
            compose.insert((outer.clone(), inners), "u".to_string());
        }
    }
    TableMulticat {
        colors: colors.clone(),
        arity_cap: 3,
        multihom,
        identities: colors.iter().map(|c| (c.clone(), "u".to_string())).collect(),
        compose,
    }
}

/// Multihoms are singletons exactly when all inputs equal the output.
fn diagonal_multicat(colors: &[&str]) -> TableMulticat {
    let colors: Vec<String> = colors.iter().map(|s| s.to_string()).collect();
    let mut multihom = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for c in &colors {
        for arity in 0..=3usize {
            multihom.insert((vec![c.clone(); arity], c.clone()), vec!["d".to_string()]);
        }
        for outer_arity in 0..=3usize {
            let outer = OpRef {
                inputs: vec![c.clone(); outer_arity],
                output: c.clone(),
                op: "d".into(),
            };
            for split in arity_splits(outer_arity, 3) {
                let inners: Vec<OpRef> = split
                    .iter()
                    .map(|&a| OpRef {
                        inputs: vec![c.clone(); a],
                        output: c.clone(),
                        op: "d".into(),
                    })
                    .collect();
                compose.insert((outer.clone(), inners), "d".to_string());
            }
        }
    }
    TableMulticat {
        colors: colors.clone(),
        arity_cap: 3,
        multihom,
        identities: colors.iter().map(|c| (c.clone(), "d".to_string())).collect(),
        compose,
    }
}

/// A deterministic family of valid table multicategories with at most
/// three colors and arity at most three. The family is fixed; the seed
/// is accepted for uniformity with the other generators.
pub fn seeded_multicats(_seed: u64) -> Vec<(String, Multicategory)> {
    let mut out: Vec<(String, Multicategory)> = Vec::new();

    // commutative monoids
    let cyclic = |k: usize| -> Vec<Vec<usize>> {
        (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect()
    };
    let and_table = vec![vec![0, 0], vec![0, 1]];
    let or_table = vec![vec![0, 1], vec![1, 1]];
    let monoids: Vec<(String, Vec<Vec<usize>>, usize)> = vec![
        ("mc-trivial-monoid".into(), cyclic(1), 0),
        ("mc-cyclic-2".into(), cyclic(2), 0),
        ("mc-cyclic-3".into(), cyclic(3), 0),
        ("mc-meet".into(), and_table, 1),
        ("mc-join".into(), or_table, 0),
    ];
    for (name, table, id) in &monoids {
        out.push((
            name.clone(),
            Multicategory::Table(monoid_multicat(table, *id)),
        ));
    }

    // small categories viewed as arity-one multicategories
    let cats: Vec<(String, FinCat)> = vec![
        ("mc-linear-arrow".into(), crate::fincat::walking_arrow_cat()),
        ("mc-linear-chaotic".into(), crate::fincat::chaotic_cat(&["a", "b"])),
        ("mc-linear-cyclic3".into(), crate::fincat::cyclic_group_cat(3)),
        ("mc-linear-chain".into(), {
            // three objects in a row with a single composite
            let mut c = crate::fincat::chaotic_cat(&["a", "b", "c"]);
            let keep: Vec<String> = c
                .morphisms
                .iter()
                .filter(|(name, (x, y))| x <= y || name.as_str() == c.id(x))
                .map(|(name, _)| name.clone())
                .collect();
            c.morphisms.retain(|name, _| keep.contains(name));
            c.compose.retain(|(f, g), h| {
                keep.contains(f) && keep.contains(g) && keep.contains(h)
            });
            c
        }),
    ];
    for (name, c) in &cats {
        assert!(crate::fincat::check_fincat(c).is_valid(), "{name}");
        out.push((name.clone(), Multicategory::Table(linear_multicat(c))));
    }

    out.push((
        "mc-terminal-2".into(),
        Multicategory::Table(terminal_multicat(&["a", "b"])),
    ));
    out.push((
        "mc-diagonal-2".into(),
        Multicategory::Table(diagonal_multicat(&["a", "b"])),
    ));
    out.push((
        "mc-diagonal-3".into(),
        Multicategory::Table(diagonal_multicat(&["a", "b", "c"])),
    ));
    out
}

/// A random preorder on the given objects: reflexive-transitive closure
/// of a random relation, enriched in truth values.
fn seeded_preorder(rng: &mut ChaCha8Rng, objects: &[&str]) -> EnrichedCategory {
    let n = objects.len();
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen::<u64>() % 3 == 0 {
                rel[i][j] = true;
            }
        }
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let base = Arc::new(base_boolean());
    let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let mut hom_ob = BTreeMap::new();
    let mut comp = BTreeMap::new();
    let mut unit = BTreeMap::new();
    for (i, x) in objects.iter().enumerate() {
        unit.insert(x.clone(), Mor::new(1, 1, 0));
        for (j, y) in objects.iter().enumerate() {
            hom_ob.insert((x.clone(), y.clone()), usize::from(rel[i][j]));
        }
    }
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            for (k, z) in objects.iter().enumerate() {
                let s = usize::from(rel[i][j]) * usize::from(rel[j][k]);
                let t = usize::from(rel[i][k]);
                comp.insert((x.clone(), y.clone(), z.clone()), Mor::new(s, t, 0));
            }
        }
    }
    EnrichedCategory { base, objects, hom_ob, comp, unit }
}

/// A deterministic family of valid enriched categories over the Boolean
/// and finite-set bases.
pub fn seeded_enriched(seed: u64) -> Vec<(String, EnrichedCategory)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut out = Vec::new();
    for i in 0..4u32 {
        let objects: Vec<&str> = match i % 2 {
            0 => vec!["p", "q", "r"],
            _ => vec!["p", "q"],
        };
        out.push((
            format!("en-preorder-{i}"),
            seeded_preorder(&mut rng, &objects),
        ));
    }
    let fincats: Vec<(String, FinCat)> = vec![
        ("en-terminal".into(), crate::fincat::terminal_cat()),
        ("en-arrow".into(), crate::fincat::walking_arrow_cat()),
        ("en-chaotic-2".into(), crate::fincat::chaotic_cat(&["a", "b"])),
        ("en-chaotic-3".into(), crate::fincat::chaotic_cat(&["a", "b", "c"])),
        ("en-discrete-2".into(), {
            let mut c = crate::fincat::chaotic_cat(&["a", "b"]);
            c.morphisms.retain(|name, _| name == "a>a" || name == "b>b");
            c.compose.retain(|(f, g), _| {
                (f == "a>a" && g == "a>a") || (f == "b>b" && g == "b>b")
            });
            c
        }),
    ];
    for (name, c) in &fincats {
        assert!(crate::fincat::check_fincat(c).is_valid(), "{name}");
        out.push((name.clone(), enriched_of_fincat(c, 8)));
    }
    // the free-living equivalence: two objects, every hom a singleton
    out.push((
        "en-e1".into(),
        crate::enrich::trivial_category(Arc::new(base_finset(8)), &["0", "1"]),
    ));
    out
}

/// Equivalences from maps of object sets between trivial categories: the
/// functor, a quasi-inverse, and the two constant-component homotopies.
pub fn e_map_datum(
    base: Arc<Base>,
    src_objects: &[&str],
    tgt_objects: &[&str],
    f_map: &[usize],
    g_map: &[usize],
) -> (VFunctor, VFunctor, VFunctor, VFunctor) {
    let a = crate::enrich::trivial_category(base.clone(), src_objects);
    let b = crate::enrich::trivial_category(base.clone(), tgt_objects);
    let id_unit = base.id(base.unit_ob());
    let functor = |src: &EnrichedCategory, tgt: &EnrichedCategory, map: &[usize], names: &[&str]| {
        VFunctor {
            source: src.clone(),
            target: tgt.clone(),
            ob_map: src
                .objects
                .iter()
                .enumerate()
                .map(|(i, x)| (x.clone(), names[map[i]].to_string()))
                .collect(),
            mor_map: src
                .objects
                .iter()
                .flat_map(|x| {
                    src.objects
                        .iter()
                        .map(move |y| ((x.clone(), y.clone()), id_unit))
                })
                .collect(),
        }
    };
    let f = functor(&a, &b, f_map, tgt_objects);
    let g = functor(&b, &a, g_map, src_objects);
    let homotopy = |cat: &EnrichedCategory, left: &VFunctor| -> VFunctor {
        let cyl = tensor_interval(cat, 1);
        VFunctor {
            source: cyl.clone(),
            target: cat.clone(),
            ob_map: cat
                .objects
                .iter()
                .flat_map(|x| {
                    let at0 = (tensor_object_name(x, 0), left.ob(x).to_string());
                    let at1 = (tensor_object_name(x, 1), x.clone());
                    [at0, at1]
                })
                .collect(),
            mor_map: cyl
                .objects
                .iter()
                .flat_map(|x| {
                    cyl.objects
                        .iter()
                        .map(move |y| ((x.clone(), y.clone()), id_unit))
                })
                .collect(),
        }
    };
    let fg = crate::enrich::compose_vfunctors(&g, &f).unwrap();
    let gf = crate::enrich::compose_vfunctors(&f, &g).unwrap();
    let phi = homotopy(&b, &fg);
    let psi = homotopy(&a, &gf);
    (f, g, phi, psi)
}

/// A deterministic family of categorical equivalence data, including the
/// functors induced by surjective and injective maps of object sets.
pub fn seeded_equivalence_data(
    seed: u64,
) -> Vec<(String, (VFunctor, VFunctor, VFunctor, VFunctor))> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let base: Arc<Base> = Arc::new(base_finset(8));
    let mut out = Vec::new();
    let named = |tag: &str| format!("eq-{tag}");
    out.push((
        named("collapse-2-1"),
        e_map_datum(base.clone(), &["0", "1"], &["0"], &[0, 0], &[0]),
    ));
    out.push((
        named("collapse-3-1"),
        e_map_datum(base.clone(), &["0", "1", "2"], &["0"], &[0, 0, 0], &[0]),
    ));
    out.push((
        named("collapse-3-2"),
        e_map_datum(base.clone(), &["0", "1", "2"], &["0", "1"], &[0, 1, 1], &[0, 1]),
    ));
    out.push((
        named("include-1-2"),
        e_map_datum(base.clone(), &["0"], &["0", "1"], &[0], &[0, 0]),
    ));
    out.push((
        named("include-2-3"),
        e_map_datum(base.clone(), &["0", "1"], &["0", "1", "2"], &[0, 1], &[0, 1, 1]),
    ));
    out.push((
        named("swap-2"),
        e_map_datum(base.clone(), &["0", "1"], &["0", "1"], &[1, 0], &[1, 0]),
    ));
    let shuffle = {
        let k = 3;
        let mut perm: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            let j = (rng.gen::<u64>() % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        perm
    };
    let inverse: Vec<usize> = {
        let mut inv = vec![0; shuffle.len()];
        for (i, &p) in shuffle.iter().enumerate() {
            inv[p] = i;
        }
        inv
    };
    out.push((
        named("seeded-perm-3"),
        e_map_datum(base.clone(), &["0", "1", "2"], &["0", "1", "2"], &shuffle, &inverse),
    ));

    // identity data on categories with non-trivial homs: the homotopies
    // have unit components
    let identity_datum = |c: &EnrichedCategory| {
        let f = crate::enrich::identity_vfunctor(c);
        let g = f.clone();
        let cyl = tensor_interval(c, 1);
        // the cylinder homs equal the original homs, so the identity
        // homotopy sends each to itself
        let mut mor_map = BTreeMap::new();
        for x in &c.objects {
            for y in &c.objects {
                let target_hom = c.hom(x, y);
                for i in 0..2usize {
                    for j in 0..2usize {
                        mor_map.insert(
                            (tensor_object_name(x, i), tensor_object_name(y, j)),
                            c.base.id(target_hom),
                        );
                    }
                }
            }
        }
        let h = VFunctor {
            source: cyl,
            target: c.clone(),
            ob_map: c
                .objects
                .iter()
                .flat_map(|x| {
                    [
                        (tensor_object_name(x, 0), x.clone()),
                        (tensor_object_name(x, 1), x.clone()),
                    ]
                })
                .collect(),
            mor_map,
        };
        (f, g.clone(), h.clone(), h)
    };
    let pick = |wanted: &str| {
        seeded_enriched(seed)
            .into_iter()
            .find(|(n, _)| n == wanted)
            .unwrap()
            .1
    };
    let arrow = pick("en-arrow");
    let preorder = pick("en-preorder-0");
    let chaotic3 = pick("en-chaotic-3");
    out.push((named("identity-arrow"), identity_datum(&arrow)));
    out.push((named("identity-preorder"), identity_datum(&preorder)));
    // a rotation and its square compose to the identity on the nose, so
    // the identity homotopies witness the equivalence
    let (_, _, h, _) = identity_datum(&chaotic3);
    let rot = rotation_functor(&chaotic3, 1);
    let rot2 = rotation_functor(&chaotic3, 2);
    out.push((named("rotation-chaotic-3"), (rot, rot2, h.clone(), h)));
    out
}

/// The automorphism of a chaotic category on listed objects that rotates
/// them forward by `shift`; every hom is a singleton, so the morphism
/// components are identities.
fn rotation_functor(c: &EnrichedCategory, shift: usize) -> VFunctor {
    let n = c.objects.len();
    VFunctor {
        source: c.clone(),
        target: c.clone(),
        ob_map: (0..n)
            .map(|i| (c.objects[i].clone(), c.objects[(i + shift) % n].clone()))
            .collect(),
        mor_map: c
            .objects
            .iter()
            .flat_map(|x| {
                c.objects
                    .iter()
                    .map(move |y| ((x.clone(), y.clone()), c.base.id(c.hom(x, y))))
            })
            .collect(),
    }
}

/// A deterministic family of fully faithful and essentially surjective
/// functors: identities, collapses and sections of trivial categories,
/// seeded permutations, and rotations of chaotic categories.
pub fn seeded_ffes_functors(seed: u64) -> Vec<(String, VFunctor)> {
    let mut out: Vec<(String, VFunctor)> = Vec::new();
    for (name, c) in seeded_enriched(seed) {
        out.push((format!("ff-id-{name}"), crate::enrich::identity_vfunctor(&c)));
    }
    for (name, (f, g, _, _)) in seeded_equivalence_data(seed) {
        out.push((format!("ff-fwd-{name}"), f));
        out.push((format!("ff-back-{name}"), g));
    }
    // non-identity automorphisms
    let chaotic3 = seeded_enriched(seed)
        .into_iter()
        .find(|(n, _)| n == "en-chaotic-3")
        .unwrap()
        .1;
    out.push(("ff-rotate-chaotic-3".into(), rotation_functor(&chaotic3, 1)));
    let chaotic2 = seeded_enriched(seed)
        .into_iter()
        .find(|(n, _)| n == "en-chaotic-2")
        .unwrap()
        .1;
    out.push(("ff-swap-chaotic-2".into(), rotation_functor(&chaotic2, 1)));
    out
}

/// A deterministic family of acyclic graphs paired with target
/// categories over the same finite-set base.
pub fn seeded_graph_pairs(
    seed: u64,
) -> Vec<(String, crate::enrich::VGraph, EnrichedCategory)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let base: Arc<Base> = Arc::new(base_finset(8));
    let enriched = seeded_enriched(seed);
    let target_pool: Vec<(String, EnrichedCategory)> = enriched
        .into_iter()
        .filter(|(n, _)| {
            matches!(n.as_str(), "en-arrow" | "en-chaotic-2" | "en-e1" | "en-terminal")
        })
        .collect();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < 10 && attempts < 200 {
        attempts += 1;
        let n_vertices = 2 + (rng.gen::<u64>() % 2) as usize;
        let vertices: Vec<String> = ["a", "b", "c"][..n_vertices]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut edge_ob = BTreeMap::new();
        let mut edges = 0;
        for i in 0..n_vertices {
            for j in (i + 1)..n_vertices {
                if edges < 3 && rng.gen::<u64>() % 2 == 0 {
                    let size = 1 + (rng.gen::<u64>() % 2) as usize;
                    edge_ob.insert((vertices[i].clone(), vertices[j].clone()), size);
                    edges += 1;
                }
            }
        }
        let g = crate::enrich::VGraph {
            base: base.clone(),
            vertices,
            edge_ob,
        };
        if crate::enrich::free_enriched(&g).is_err() {
            continue;
        }
        let (tname, target) =
            &target_pool[(rng.gen::<u64>() % target_pool.len() as u64) as usize];
        out.push((
            format!("gr-{}-{}", out.len(), tname),
            g,
            target.clone(),
        ));
    }
    out
}

/// Render the seeded corpus as (relative path, file contents) pairs.
///
/// The first entry is always `manifest.json`; the rest are the
/// self-contained document files it references. Writing the pairs into a
/// directory yields a corpus the manifest validator accepts, and the
/// output is byte-identical for a fixed seed.
pub fn render_corpus(seed: u64) -> Vec<(String, String)> {
    let mut docs: Vec<(String, Document)> = Vec::new();

    for (name, builtin) in [
        ("assoc", "assoc"),
        ("bm", "bm"),
        ("lm", "lm"),
        ("rm", "rm"),
        ("os-abc", "os:a,b,c"),
    ] {
        docs.push((
            format!("{name}.json"),
            Document::Multicategory(MulticatDoc::of_builtin(name, builtin)),
        ));
    }
    for (name, m) in seeded_multicats(seed) {
        if let Multicategory::Table(t) = &m {
            docs.push((
                format!("{name}.json"),
                Document::Multicategory(MulticatDoc::of_table(&name, t)),
            ));
        }
    }
    for (name, c) in seeded_enriched(seed) {
        let path = if name == "en-e1" { "e1.json".into() } else { format!("{name}.json") };
        let doc = EnrichedDoc::of_enriched(&name, &c).expect("seeded base kinds serialize");
        docs.push((path, Document::Enriched(doc)));
    }
    for (name, g, _target) in seeded_graph_pairs(seed) {
        let doc = GraphDoc::of_graph(&name, &g).expect("seeded base kinds serialize");
        docs.push((format!("{name}.json"), Document::Graph(doc)));
    }
    for (name, f) in seeded_ffes_functors(seed) {
        let doc = FunctorDoc::of_vfunctor(&name, &f).expect("seeded base kinds serialize");
        docs.push((format!("{name}.json"), Document::Functor(doc)));
    }
    for (name, (f, g, phi, psi)) in seeded_equivalence_data(seed) {
        let doc = EquivalenceDoc {
            name: name.clone(),
            f: FunctorDoc::of_vfunctor(&format!("{name}.f"), &f).expect("seeded base kinds serialize"),
            g: FunctorDoc::of_vfunctor(&format!("{name}.g"), &g).expect("seeded base kinds serialize"),
            phi: FunctorDoc::of_vfunctor(&format!("{name}.phi"), &phi)
                .expect("seeded base kinds serialize"),
            psi: FunctorDoc::of_vfunctor(&format!("{name}.psi"), &psi)
                .expect("seeded base kinds serialize"),
        };
        docs.push((format!("{name}.json"), Document::EquivalenceDatum(doc)));
    }
    let nerve_arrow = crate::segal::nerve(&crate::fincat::walking_arrow_cat(), 3)
        .expect("nerve of the walking arrow fits in the cap");
    docs.push((
        "ss-nerve-arrow.json".into(),
        Document::SimplicialSet(SsetDoc::of_sset("ss-nerve-arrow", &nerve_arrow)),
    ));
    let chaotic = crate::anodyne::chaotic_nerve(1, 3).expect("chaotic nerve on two vertices");
    docs.push((
        "ss-chaotic-2.json".into(),
        Document::SimplicialSet(SsetDoc::of_sset("ss-chaotic-2", &chaotic)),
    ));

    let manifest = Manifest {
        seed,
        documents: docs
            .iter()
            .map(|(path, doc)| ManifestEntry {
                name: doc.name().to_string(),
                kind: doc.kind().to_string(),
                path: path.clone(),
            })
            .collect(),
    };
    let mut out = vec![("manifest.json".to_string(), render_json(&manifest))];
    for (path, doc) in &docs {
        out.push((path.clone(), render_json(doc)));
    }
    out
}

fn render_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("corpus values serialize");
    text.push('\n');
    text
}
