//! Finite non-symmetric multicategories (colored operads).
//!
//! A multicategory has a set of colors and, for each finite list of input
//! colors and one output color, a set of multimorphisms, together with
//! identities and an associative, unital composition
//! `γ(g; f_1, …, f_k)`.
//!
//! Two representations coexist:
//! - [`TableMulticat`]: explicit finite tables with an arity cap, loaded
//!   from user documents;
//! - built-ins with operations at every arity, computed from their defining
//!   formulas on demand: the associative operad, the enrichment
//!   multicategories `O_S`, and the bimodule family `BM`/`LM`/`RM`.

mod delta_s;
mod operators;
mod sym;

pub use delta_s::{delta_op_s, DeltaOpS};
pub use operators::{
    check_operator_conditions, multicat_of_operators, operators, OpMorphism,
    OperatorCategory, OperatorReport, OperatorViolation,
};
pub use sym::{symmetrize, SymMulticategory, SymOp};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Color = String;
pub type OpLabel = String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MulticatError {
    #[error("unknown color {0:?}")]
    UnknownColor(Color),
    #[error("outer operation expects {expected} inputs, got {got} inner operations")]
    InnerCountMismatch { expected: usize, got: usize },
    #[error("inner operation {at} outputs {got:?}, outer slot expects {want:?}")]
    SlotMismatch { at: usize, got: Color, want: Color },
    #[error("no composite recorded for {outer} with inners {inners:?}")]
    MissingComposite { outer: String, inners: Vec<String> },
    #[error("arity {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("operator category fails its structural conditions: {0}")]
    InvalidOperatorCategory(String),
}

/// A multimorphism reference: the multihom set it belongs to plus its label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpRef {
    pub inputs: Vec<Color>,
    pub output: Color,
    pub op: OpLabel,
}

impl fmt::Debug for OpRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:({}→{})", self.op, self.inputs.join(","), self.output)
    }
}

impl OpRef {
    pub fn new(inputs: &[&str], output: &str, op: &str) -> Self {
        OpRef {
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            output: output.to_string(),
            op: op.to_string(),
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    fn display(&self) -> String {
        format!("{self:?}")
    }
}

/// Explicit finite multicategory data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMulticat {
    pub colors: Vec<Color>,
    pub arity_cap: usize,
    pub multihom: BTreeMap<(Vec<Color>, Color), Vec<OpLabel>>,
    pub identities: BTreeMap<Color, OpLabel>,
    pub compose: BTreeMap<(OpRef, Vec<OpRef>), OpLabel>,
}

/// Data backing the enrichment multicategory `O_S` on colors `S × S`.
///
/// `O_S((x_0,x_1), (x_1,x_2), …, (x_{n-1},x_n); (x_0,x_n))` is a singleton
/// whenever the inputs form a composable chain and the output matches its
/// endpoints; every other multihom set is empty. Algebras for `O_S` in a
/// monoidal category are categories enriched in it with object set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OsData {
    pub elements: Vec<String>,
    color_names: Vec<String>,
    pairs: BTreeMap<String, (usize, usize)>,
}

impl OsData {
    fn new(elements: Vec<String>) -> Self {
        let mut color_names = Vec::new();
        let mut pairs = BTreeMap::new();
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let name = format!("({a},{b})");
                pairs.insert(name.clone(), (i, j));
                color_names.push(name);
            }
        }
        OsData { elements, color_names, pairs }
    }

    fn pair(&self, color: &str) -> Option<(usize, usize)> {
        self.pairs.get(color).copied()
    }

    pub fn color(&self, i: usize, j: usize) -> String {
        format!("({},{})", self.elements[i], self.elements[j])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multicategory {
    Table(TableMulticat),
    Assoc,
    Os(OsData),
    Bm,
    Lm,
    Rm,
}

/// The associative operad: one color, one operation in every arity.
pub fn builtin_assoc() -> Multicategory {
    Multicategory::Assoc
}

/// The enrichment multicategory `O_S` for a finite set `S`.
pub fn builtin_os(elements: &[&str]) -> Multicategory {
    Multicategory::Os(OsData::new(elements.iter().map(|s| s.to_string()).collect()))
}

pub fn builtin_os_owned(elements: Vec<String>) -> Multicategory {
    Multicategory::Os(OsData::new(elements))
}

/// The bimodule multicategory on colors `{l, m, r}`: `(l, …, l; l)` and
/// `(r, …, r; r)` are singletons, `(l, …, l, m, r, …, r; m)` is a singleton,
/// and all other multihom sets are empty.
pub fn builtin_bm() -> Multicategory {
    Multicategory::Bm
}

/// Left-module restriction of `BM` to colors `{l, m}`.
pub fn builtin_lm() -> Multicategory {
    Multicategory::Lm
}

/// Right-module restriction of `BM` to colors `{m, r}`.
pub fn builtin_rm() -> Multicategory {
    Multicategory::Rm
}

const BM_OP: &str = "act";

impl Multicategory {
    pub fn colors(&self) -> Vec<Color> {
        match self {
            Multicategory::Table(t) => t.colors.clone(),
            Multicategory::Assoc => vec!["x".into()],
            Multicategory::Os(os) => os.color_names.clone(),
            Multicategory::Bm => vec!["l".into(), "m".into(), "r".into()],
            Multicategory::Lm => vec!["l".into(), "m".into()],
            Multicategory::Rm => vec!["m".into(), "r".into()],
        }
    }

    pub fn is_color(&self, c: &str) -> bool {
        match self {
            Multicategory::Table(t) => t.colors.iter().any(|x| x == c),
            Multicategory::Assoc => c == "x",
            Multicategory::Os(os) => os.pairs.contains_key(c),
            Multicategory::Bm => matches!(c, "l" | "m" | "r"),
            Multicategory::Lm => matches!(c, "l" | "m"),
            Multicategory::Rm => matches!(c, "m" | "r"),
        }
    }

    /// The operation labels of the multihom set `M(inputs; output)`.
    pub fn multihom(&self, inputs: &[Color], output: &Color) -> Vec<OpLabel> {
        match self {
            Multicategory::Table(t) => t
                .multihom
                .get(&(inputs.to_vec(), output.clone()))
                .cloned()
                .unwrap_or_default(),
            Multicategory::Assoc => {
                if output == "x" && inputs.iter().all(|c| c == "x") {
                    vec!["mu".into()]
                } else {
                    vec![]
                }
            }
            Multicategory::Os(os) => {
                let Some((y0, y1)) = os.pair(output) else { return vec![] };
                let mut prev = y0;
                for c in inputs {
                    let Some((a, b)) = os.pair(c) else { return vec![] };
                    if a != prev {
                        return vec![];
                    }
                    prev = b;
                }
                if prev == y1 {
                    vec!["chain".into()]
                } else {
                    vec![]
                }
            }
            Multicategory::Bm => bm_multihom(inputs, output, true, true),
            Multicategory::Lm => bm_multihom(inputs, output, true, false),
            Multicategory::Rm => bm_multihom(inputs, output, false, true),
        }
    }

    pub fn has_op(&self, op: &OpRef) -> bool {
        self.multihom(&op.inputs, &op.output).contains(&op.op)
    }

    /// The identity operation on a color.
    pub fn identity(&self, color: &Color) -> Result<OpRef, MulticatError> {
        if !self.is_color(color) {
            return Err(MulticatError::UnknownColor(color.clone()));
        }
        let op = match self {
            Multicategory::Table(t) => t
                .identities
                .get(color)
                .cloned()
                .ok_or_else(|| MulticatError::UnknownColor(color.clone()))?,
            _ => {
                let ops = self.multihom(std::slice::from_ref(color), color);
                debug_assert_eq!(ops.len(), 1);
                ops[0].clone()
            }
        };
        Ok(OpRef { inputs: vec![color.clone()], output: color.clone(), op })
    }

    fn is_identity_op(&self, op: &OpRef) -> bool {
        op.arity() == 1
            && op.inputs[0] == op.output
            && matches!(self.identity(&op.output), Ok(id) if id.op == op.op)
    }

    /// Multicategory composition `γ(outer; inners)`. The `i`-th inner
    /// operation must output the `i`-th input color of `outer`; the result
    /// takes the concatenated inputs of the inners to the output of `outer`.
    pub fn compose(&self, outer: &OpRef, inners: &[OpRef]) -> Result<OpRef, MulticatError> {
        if inners.len() != outer.arity() {
            return Err(MulticatError::InnerCountMismatch {
                expected: outer.arity(),
                got: inners.len(),
            });
        }
        for (i, f) in inners.iter().enumerate() {
            if f.output != outer.inputs[i] {
                return Err(MulticatError::SlotMismatch {
                    at: i,
                    got: f.output.clone(),
                    want: outer.inputs[i].clone(),
                });
            }
        }
        let inputs: Vec<Color> = inners.iter().flat_map(|f| f.inputs.clone()).collect();
        let output = outer.output.clone();
        let op = match self {
            Multicategory::Table(t) => {
                let key = (outer.clone(), inners.to_vec());
                if let Some(label) = t.compose.get(&key) {
                    label.clone()
                } else if self.is_identity_op(outer) {
                    return Ok(inners[0].clone());
                } else if inners.iter().all(|f| self.is_identity_op(f)) {
                    return Ok(outer.clone());
                } else {
                    return Err(MulticatError::MissingComposite {
                        outer: outer.display(),
                        inners: inners.iter().map(|f| f.display()).collect(),
                    });
                }
            }
            _ => {
                let ops = self.multihom(&inputs, &output);
                debug_assert_eq!(ops.len(), 1, "builtin composite must be the unique operation");
                ops[0].clone()
            }
        };
        Ok(OpRef { inputs, output, op })
    }

    /// The multihom typings that carry at least one operation at the given
    /// arity. For built-ins these are generated from the defining formulas.
    pub fn typings_with_ops(&self, arity: usize) -> Vec<(Vec<Color>, Color)> {
        match self {
            Multicategory::Table(t) => t
                .multihom
                .iter()
                .filter(|((ins, _), ops)| ins.len() == arity && !ops.is_empty())
                .map(|(k, _)| k.clone())
                .collect(),
            Multicategory::Assoc => vec![(vec!["x".into(); arity], "x".into())],
            Multicategory::Os(os) => {
                let k = os.elements.len();
                let mut out = Vec::new();
                let mut chain = vec![0usize; arity + 1];
                loop {
                    let inputs: Vec<Color> =
                        (0..arity).map(|i| os.color(chain[i], chain[i + 1])).collect();
                    out.push((inputs, os.color(chain[0], chain[arity])));
                    let mut i = arity + 1;
                    loop {
                        if i == 0 {
                            out.sort();
                            return out;
                        }
                        i -= 1;
                        if chain[i] + 1 < k {
                            chain[i] += 1;
                            for item in chain.iter_mut().skip(i + 1) {
                                *item = 0;
                            }
                            break;
                        }
                        chain[i] = 0;
                    }
                }
            }
            Multicategory::Bm | Multicategory::Lm | Multicategory::Rm => {
                let (has_l, has_r) = match self {
                    Multicategory::Bm => (true, true),
                    Multicategory::Lm => (true, false),
                    _ => (false, true),
                };
                let mut out = Vec::new();
                if has_l {
                    out.push((vec!["l".into(); arity], "l".into()));
                }
                if has_r {
                    out.push((vec!["r".into(); arity], "r".into()));
                }
                if arity >= 1 {
                    for a in 0..arity {
                        let b = arity - 1 - a;
                        if (a == 0 || has_l) && (b == 0 || has_r) {
                            let mut inputs = vec!["l".into(); a];
                            inputs.push("m".into());
                            inputs.extend(vec!["r".into(); b]);
                            out.push((inputs, "m".into()));
                        }
                    }
                }
                out.sort();
                out.dedup();
                out
            }
        }
    }

    /// All operations of the given arity.
    pub fn ops_of_arity(&self, arity: usize) -> Vec<OpRef> {
        let mut out = Vec::new();
        for (inputs, output) in self.typings_with_ops(arity) {
            for op in self.multihom(&inputs, &output) {
                out.push(OpRef { inputs: inputs.clone(), output: output.clone(), op });
            }
        }
        out
    }

    pub fn table_arity_cap(&self) -> Option<usize> {
        match self {
            Multicategory::Table(t) => Some(t.arity_cap),
            _ => None,
        }
    }
}

fn bm_multihom(inputs: &[Color], output: &Color, has_l: bool, has_r: bool) -> Vec<OpLabel> {
    let ok = |c: &str| match c {
        "l" => has_l,
        "r" => has_r,
        "m" => true,
        _ => false,
    };
    if !ok(output) || !inputs.iter().all(|c| ok(c)) {
        return vec![];
    }
    let hit = match output.as_str() {
        "l" => inputs.iter().all(|c| c == "l"),
        "r" => inputs.iter().all(|c| c == "r"),
        "m" => {
            let ms = inputs.iter().filter(|c| *c == "m").count();
            ms == 1 && {
                let pos = inputs.iter().position(|c| c == "m").unwrap();
                inputs[..pos].iter().all(|c| c == "l") && inputs[pos + 1..].iter().all(|c| c == "r")
            }
        }
        _ => false,
    };
    if hit {
        vec![BM_OP.into()]
    } else {
        vec![]
    }
}

// ---------------------------------------------------------------------------
// Law checking

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MulticatViolation {
    IdentityMissing { color: Color },
    IdentityNotInHom { color: Color, op: OpLabel },
    MultihomBadColor { inputs: Vec<Color>, output: Color },
    ComposeEntryIllTyped { outer: String, inners: Vec<String>, reason: String },
    ComposeMissing { outer: String, inners: Vec<String> },
    LeftUnitFails { f: String, got: String },
    RightUnitFails { g: String, got: String },
    AssocFails { outer: String, mids: Vec<String>, inners: Vec<String>, left: String, right: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MulticatReport {
    pub violations: Vec<MulticatViolation>,
}

impl MulticatReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerate all tuples of operations whose outputs match the given slot
/// colors and whose total arity is at most `budget`.
fn inner_tuples(m: &Multicategory, slots: &[Color], budget: usize) -> Vec<Vec<OpRef>> {
    if slots.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let rest = &slots[1..];
    // remaining slots each need arity ≥ 0, so the head may use the whole budget
    for head_arity in 0..=budget {
        for f in m.ops_of_arity(head_arity) {
            if f.output != slots[0] {
                continue;
            }
            for mut tail in inner_tuples(m, rest, budget - head_arity) {
                let mut tuple = vec![f.clone()];
                tuple.append(&mut tail);
                out.push(tuple);
            }
        }
    }
    out
}

/// Check unitality and associativity of composition on every instance
/// representable within the arity cap, and (for tables) totality and
/// well-typedness of the stored tables.
pub fn check_multicategory(m: &Multicategory, arity_cap: usize) -> MulticatReport {
    let cap = m.table_arity_cap().map_or(arity_cap, |t| t.min(arity_cap));
    let mut violations = Vec::new();

    if let Multicategory::Table(t) = m {
        for color in &t.colors {
            match t.identities.get(color) {
                None => violations.push(MulticatViolation::IdentityMissing { color: color.clone() }),
                Some(op) => {
                    if !t
                        .multihom
                        .get(&(vec![color.clone()], color.clone()))
                        .is_some_and(|ops| ops.contains(op))
                    {
                        violations.push(MulticatViolation::IdentityNotInHom {
                            color: color.clone(),
                            op: op.clone(),
                        });
                    }
                }
            }
        }
        for (inputs, output) in t.multihom.keys() {
            if !inputs.iter().all(|c| m.is_color(c)) || !m.is_color(output) {
                violations.push(MulticatViolation::MultihomBadColor {
                    inputs: inputs.clone(),
                    output: output.clone(),
                });
            }
        }
        for ((outer, inners), result) in &t.compose {
            let ill = if !m.has_op(outer) {
                Some("outer operation not in its multihom set".to_string())
            } else if inners.iter().any(|f| !m.has_op(f)) {
                Some("inner operation not in its multihom set".to_string())
            } else if inners.len() != outer.arity()
                || inners.iter().zip(&outer.inputs).any(|(f, c)| f.output != *c)
            {
                Some("inner outputs do not match outer inputs".to_string())
            } else {
                let inputs: Vec<Color> = inners.iter().flat_map(|f| f.inputs.clone()).collect();
                if !m.multihom(&inputs, &outer.output).contains(result) {
                    Some(format!("result {result:?} not in the composite multihom set"))
                } else {
                    None
                }
            };
            if let Some(reason) = ill {
                violations.push(MulticatViolation::ComposeEntryIllTyped {
                    outer: outer.display(),
                    inners: inners.iter().map(|f| f.display()).collect(),
                    reason,
                });
            }
        }
    } else {
        for color in m.colors() {
            if m.identity(&color).is_err() {
                violations.push(MulticatViolation::IdentityMissing { color });
            }
        }
    }

    // Unit laws.
    for arity in 0..=cap {
        for f in m.ops_of_arity(arity) {
            let id = match m.identity(&f.output) {
                Ok(id) => id,
                Err(_) => continue,
            };
            match m.compose(&id, std::slice::from_ref(&f)) {
                Ok(got) if got == f => {}
                Ok(got) => violations.push(MulticatViolation::LeftUnitFails {
                    f: f.display(),
                    got: got.display(),
                }),
                Err(_) => violations.push(MulticatViolation::ComposeMissing {
                    outer: id.display(),
                    inners: vec![f.display()],
                }),
            }
            if arity >= 1 {
                let ids: Result<Vec<OpRef>, _> =
                    f.inputs.iter().map(|c| m.identity(c)).collect();
                if let Ok(ids) = ids {
                    match m.compose(&f, &ids) {
                        Ok(got) if got == f => {}
                        Ok(got) => violations.push(MulticatViolation::RightUnitFails {
                            g: f.display(),
                            got: got.display(),
                        }),
                        Err(_) => violations.push(MulticatViolation::ComposeMissing {
                            outer: f.display(),
                            inners: ids.iter().map(|x| x.display()).collect(),
                        }),
                    }
                }
            }
        }
    }

    // Totality within the cap, and associativity on every composable triple
    // representable within it.
    for outer_arity in 0..=cap {
        for outer in m.ops_of_arity(outer_arity) {
            for mids in inner_tuples(m, &outer.inputs, cap) {
                let mid = match m.compose(&outer, &mids) {
                    Ok(op) => op,
                    Err(MulticatError::MissingComposite { .. }) => {
                        violations.push(MulticatViolation::ComposeMissing {
                            outer: outer.display(),
                            inners: mids.iter().map(|f| f.display()).collect(),
                        });
                        continue;
                    }
                    Err(_) => continue,
                };
                for inners in inner_tuples(m, &mid.inputs, cap) {
                    let left = match m.compose(&mid, &inners) {
                        Ok(op) => op,
                        Err(MulticatError::MissingComposite { .. }) => {
                            violations.push(MulticatViolation::ComposeMissing {
                                outer: mid.display(),
                                inners: inners.iter().map(|f| f.display()).collect(),
                            });
                            continue;
                        }
                        Err(_) => continue,
                    };
                    // regroup: inner tuple split along the arities of `mids`
                    let mut grouped = Vec::new();
                    let mut at = 0;
                    let mut ok = true;
                    for g in &mids {
                        let part = &inners[at..at + g.arity()];
                        at += g.arity();
                        match m.compose(g, part) {
                            Ok(op) => grouped.push(op),
                            Err(_) => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    match m.compose(&outer, &grouped) {
                        Ok(right) if right == left => {}
                        Ok(right) => violations.push(MulticatViolation::AssocFails {
                            outer: outer.display(),
                            mids: mids.iter().map(|f| f.display()).collect(),
                            inners: inners.iter().map(|f| f.display()).collect(),
                            left: left.display(),
                            right: right.display(),
                        }),
                        Err(_) => violations.push(MulticatViolation::ComposeMissing {
                            outer: outer.display(),
                            inners: grouped.iter().map(|f| f.display()).collect(),
                        }),
                    }
                }
            }
        }
    }

    violations.sort_by_key(|v| format!("{v:?}"));
    violations.dedup();
    MulticatReport { violations }
}

// ---------------------------------------------------------------------------
// Isomorphism search

/// An isomorphism of multicategories: a color bijection together with
/// compatible bijections of multihom sets.
#[derive(Debug, Clone, Serialize)]
pub struct MulticatIso {
    pub color_map: BTreeMap<Color, Color>,
    pub op_map: BTreeMap<String, String>,
}

/// Search for an isomorphism identifying `a` with `b` on all data of arity
/// at most `arity_cap`: a color bijection and op bijections that send
/// identities to identities and commute with composition.
pub fn find_isomorphism(
    a: &Multicategory,
    b: &Multicategory,
    arity_cap: usize,
) -> Option<MulticatIso> {
    let colors_a = a.colors();
    let colors_b = b.colors();
    if colors_a.len() != colors_b.len() {
        return None;
    }
    let cap = match (a.table_arity_cap(), b.table_arity_cap()) {
        (Some(x), Some(y)) => arity_cap.min(x).min(y),
        (Some(x), None) | (None, Some(x)) => arity_cap.min(x),
        (None, None) => arity_cap,
    };
    for perm in permutations(colors_b.len()) {
        let color_map: BTreeMap<Color, Color> = colors_a
            .iter()
            .cloned()
            .zip(perm.iter().map(|&i| colors_b[i].clone()))
            .collect();
        if let Some(op_map) = try_color_map(a, b, &color_map, cap) {
            return Some(MulticatIso { color_map, op_map });
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

fn try_color_map(
    a: &Multicategory,
    b: &Multicategory,
    color_map: &BTreeMap<Color, Color>,
    cap: usize,
) -> Option<BTreeMap<String, String>> {
    let translate = |inputs: &[Color], output: &Color| -> (Vec<Color>, Color) {
        (inputs.iter().map(|c| color_map[c].clone()).collect(), color_map[output].clone())
    };
    // Cardinalities must agree on every typing present on either side.
    let mut typings: Vec<(Vec<Color>, Color)> = Vec::new();
    for arity in 0..=cap {
        typings.extend(a.typings_with_ops(arity));
        for (ins, out) in b.typings_with_ops(arity) {
            let back_ins: Option<Vec<Color>> = ins
                .iter()
                .map(|c| color_map.iter().find(|(_, v)| *v == c).map(|(k, _)| k.clone()))
                .collect();
            let back_out =
                color_map.iter().find(|(_, v)| *v == &out).map(|(k, _)| k.clone());
            match (back_ins, back_out) {
                (Some(ins), Some(out)) => typings.push((ins, out)),
                _ => return None,
            }
        }
    }
    typings.sort();
    typings.dedup();
    for (ins, out) in &typings {
        let (t_ins, t_out) = translate(ins, out);
        if a.multihom(ins, out).len() != b.multihom(&t_ins, &t_out).len() {
            return None;
        }
    }

    // Assign per-multihom op bijections by backtracking over the typings
    // with at least one operation.
    let mut slots: Vec<((Vec<Color>, Color), Vec<OpLabel>, Vec<OpLabel>)> = Vec::new();
    for (ins, out) in &typings {
        let ops_a = a.multihom(ins, out);
        if ops_a.is_empty() {
            continue;
        }
        let (t_ins, t_out) = translate(ins, out);
        let ops_b = b.multihom(&t_ins, &t_out);
        slots.push(((ins.clone(), out.clone()), ops_a, ops_b));
    }
    let mut assignment: BTreeMap<(Vec<Color>, Color, OpLabel), OpLabel> = BTreeMap::new();
    if backtrack(a, b, color_map, cap, &slots, 0, &mut assignment) {
        let op_map = assignment
            .into_iter()
            .map(|((ins, out, op), img)| (format!("{op}:({}→{out})", ins.join(",")), img))
            .collect();
        Some(op_map)
    } else {
        None
    }
}

fn backtrack(
    a: &Multicategory,
    b: &Multicategory,
    color_map: &BTreeMap<Color, Color>,
    cap: usize,
    slots: &[((Vec<Color>, Color), Vec<OpLabel>, Vec<OpLabel>)],
    at: usize,
    assignment: &mut BTreeMap<(Vec<Color>, Color, OpLabel), OpLabel>,
) -> bool {
    if at == slots.len() {
        return iso_constraints_hold(a, b, color_map, cap, assignment);
    }
    let ((ins, out), ops_a, ops_b) = &slots[at];
    use itertools::Itertools;
    for perm in (0..ops_b.len()).permutations(ops_b.len()) {
        for (i, &j) in perm.iter().enumerate() {
            assignment.insert((ins.clone(), out.clone(), ops_a[i].clone()), ops_b[j].clone());
        }
        // identities must correspond as soon as their typing is assigned
        let ok_ids = ins.len() == 1 && ins[0] == *out;
        let id_ok = if ok_ids {
            match (a.identity(out), b.identity(&color_map[out])) {
                (Ok(id_a), Ok(id_b)) => {
                    assignment.get(&(ins.clone(), out.clone(), id_a.op)) == Some(&id_b.op)
                }
                _ => false,
            }
        } else {
            true
        };
        if id_ok && backtrack(a, b, color_map, cap, slots, at + 1, assignment) {
            return true;
        }
        for (i, _) in perm.iter().enumerate() {
            assignment.remove(&(ins.clone(), out.clone(), ops_a[i].clone()));
        }
    }
    false
}

fn iso_constraints_hold(
    a: &Multicategory,
    b: &Multicategory,
    color_map: &BTreeMap<Color, Color>,
    cap: usize,
    assignment: &BTreeMap<(Vec<Color>, Color, OpLabel), OpLabel>,
) -> bool {
    let image = |op: &OpRef| -> Option<OpRef> {
        let label = assignment.get(&(op.inputs.clone(), op.output.clone(), op.op.clone()))?;
        Some(OpRef {
            inputs: op.inputs.iter().map(|c| color_map[c].clone()).collect(),
            output: color_map[&op.output].clone(),
            op: label.clone(),
        })
    };
    for arity in 0..=cap {
        for outer in a.ops_of_arity(arity) {
            for inners in inner_tuples(a, &outer.inputs, cap) {
                let Ok(left) = a.compose(&outer, &inners) else { continue };
                let (Some(b_outer), Some(b_left)) = (image(&outer), image(&left)) else {
                    return false;
                };
                let b_inners: Option<Vec<OpRef>> = inners.iter().map(&image).collect();
                let Some(b_inners) = b_inners else { return false };
                match b.compose(&b_outer, &b_inners) {
                    Ok(got) if got == b_left => {}
                    _ => return false,
                }
            }
        }
    }
    true
}
