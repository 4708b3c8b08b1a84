//! Strict monoidal bases for enrichment.
//!
//! A base is a finite category with a strictly associative, strictly unital
//! tensor product, optionally equipped with designated finite coproducts
//! over which the tensor distributes. Objects are indices into a name
//! table; a morphism is `(src, tgt, code)` with `code` indexing into the
//! hom set.
//!
//! Built-ins:
//! - the terminal base (one object, one morphism);
//! - the Boolean poset `0 ≤ 1` with `⊗ = ∧` — its enriched categories are
//!   preorders;
//! - a cardinality-capped skeleton of finite sets with cartesian tensor;
//! - any finite monoid as a one-object-tensor base: objects are elements,
//!   only identity morphisms, tensor is multiplication;
//! - explicit tables.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaseError {
    #[error("object {0} does not exist in this base")]
    UnknownObject(usize),
    #[error("morphism {0} is not well-formed for this base")]
    BadMorphism(String),
    #[error("cannot compose {f} with {g}: target and source differ")]
    NotComposable { f: String, g: String },
    #[error("tensor of sizes {a} and {b} exceeds the cardinality cap {cap}")]
    CapExceeded { a: usize, b: usize, cap: usize },
    #[error("no designated coproduct for the family {0:?}")]
    MissingCoproduct(Vec<usize>),
    #[error("no morphism satisfies the copairing equations for {0:?}")]
    NoCopairing(Vec<String>),
    #[error("morphism {0} has no inverse")]
    NotInvertible(String),
}

/// A morphism of a base: source and target object indices plus a code
/// enumerating the hom set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mor {
    pub src: usize,
    pub tgt: usize,
    pub code: u64,
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}#{}", self.src, self.tgt, self.code)
    }
}

impl Mor {
    pub fn new(src: usize, tgt: usize, code: u64) -> Self {
        Mor { src, tgt, code }
    }
}

/// A designated finite coproduct: the target object together with one
/// injection per summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coproduct {
    pub summands: Vec<usize>,
    pub target: usize,
    pub injections: Vec<Mor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidBase {
    pub name: String,
    pub elements: Vec<String>,
    pub unit: usize,
    /// Multiplication table: `mul[a][b]` is the product index.
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBase {
    pub name: String,
    pub objects: Vec<String>,
    pub hom_sizes: BTreeMap<(usize, usize), u64>,
    pub identities: BTreeMap<usize, u64>,
    /// `(f, g) → code of the composite g ∘ f` (diagrammatic order).
    pub compose: BTreeMap<(Mor, Mor), u64>,
    pub tensor_ob: BTreeMap<(usize, usize), usize>,
    pub unit_ob: usize,
    pub tensor_mor: BTreeMap<(Mor, Mor), u64>,
    pub coproducts: BTreeMap<Vec<usize>, Coproduct>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Terminal,
    Boolean,
    /// Skeleton of finite sets: object `n` is an `n`-element set; sizes are
    /// capped so tensor (cartesian product) stays finite.
    FinSet { cap: usize },
    Monoid(MonoidBase),
    Table(TableBase),
}

pub fn base_terminal() -> Base {
    Base::Terminal
}

pub fn base_boolean() -> Base {
    Base::Boolean
}

pub fn base_finset(cap: usize) -> Base {
    Base::FinSet { cap }
}

pub fn base_monoid(name: &str, elements: &[&str], unit: usize, mul: Vec<Vec<usize>>) -> Base {
    Base::Monoid(MonoidBase {
        name: name.to_string(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        unit,
        mul,
    })
}

// --- finite-set morphism coding: code = Σ f(i) · n^i for f: m → n --------

pub fn finset_values(m: &Mor) -> Vec<usize> {
    let n = m.tgt as u64;
    let mut code = m.code;
    let mut out = Vec::with_capacity(m.src);
    for _ in 0..m.src {
        out.push((code % n) as usize);
        code /= n;
    }
    out
}

pub fn finset_mor(src: usize, tgt: usize, values: &[usize]) -> Mor {
    assert_eq!(values.len(), src);
    let mut code = 0u64;
    for &v in values.iter().rev() {
        assert!(v < tgt);
        code = code * tgt as u64 + v as u64;
    }
    Mor { src, tgt, code }
}

impl Base {
    pub fn name(&self) -> String {
        match self {
            Base::Terminal => "terminal".into(),
            Base::Boolean => "boolean".into(),
            Base::FinSet { cap } => format!("finset(cap {cap})"),
            Base::Monoid(m) => format!("monoid {}", m.name),
            Base::Table(t) => t.name.clone(),
        }
    }

    pub fn object_count(&self) -> usize {
        match self {
            Base::Terminal => 1,
            Base::Boolean => 2,
            Base::FinSet { cap } => cap + 1,
            Base::Monoid(m) => m.elements.len(),
            Base::Table(t) => t.objects.len(),
        }
    }

    pub fn object_name(&self, i: usize) -> String {
        match self {
            Base::Terminal => "*".into(),
            Base::Boolean => i.to_string(),
            Base::FinSet { .. } => i.to_string(),
            Base::Monoid(m) => m.elements[i].clone(),
            Base::Table(t) => t.objects[i].clone(),
        }
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        (0..self.object_count()).find(|&i| self.object_name(i) == name)
    }

    pub fn unit_ob(&self) -> usize {
        match self {
            Base::Terminal => 0,
            Base::Boolean => 1,
            Base::FinSet { .. } => 1,
            Base::Monoid(m) => m.unit,
            Base::Table(t) => t.unit_ob,
        }
    }

    pub fn hom_size(&self, a: usize, b: usize) -> u64 {
        match self {
            Base::Terminal => 1,
            Base::Boolean => u64::from(a <= b),
            Base::FinSet { .. } => (b as u64).pow(a as u32),
            Base::Monoid(_) => u64::from(a == b),
            Base::Table(t) => t.hom_sizes.get(&(a, b)).copied().unwrap_or(0),
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<Mor> {
        (0..self.hom_size(a, b)).map(|code| Mor { src: a, tgt: b, code }).collect()
    }

    pub fn is_object(&self, i: usize) -> bool {
        i < self.object_count()
    }

    pub fn is_mor(&self, m: &Mor) -> bool {
        self.is_object(m.src) && self.is_object(m.tgt) && m.code < self.hom_size(m.src, m.tgt)
    }

    pub fn id(&self, i: usize) -> Mor {
        match self {
            Base::FinSet { .. } => {
                let values: Vec<usize> = (0..i).collect();
                finset_mor(i, i, &values)
            }
            Base::Table(t) => Mor { src: i, tgt: i, code: *t.identities.get(&i).unwrap_or(&0) },
            _ => Mor { src: i, tgt: i, code: 0 },
        }
    }

    /// Diagrammatic composition: `compose(f, g)` is `g ∘ f`, defined when
    /// `f.tgt == g.src`.
    pub fn compose(&self, f: &Mor, g: &Mor) -> Result<Mor, BaseError> {
        if f.tgt != g.src {
            return Err(BaseError::NotComposable {
                f: format!("{f:?}"),
                g: format!("{g:?}"),
            });
        }
        match self {
            Base::Terminal => Ok(Mor { src: f.src, tgt: g.tgt, code: 0 }),
            Base::Boolean | Base::Monoid(_) => Ok(Mor { src: f.src, tgt: g.tgt, code: 0 }),
            Base::FinSet { .. } => {
                let fv = finset_values(f);
                let gv = finset_values(g);
                let values: Vec<usize> = fv.iter().map(|&i| gv[i]).collect();
                Ok(finset_mor(f.src, g.tgt, &values))
            }
            Base::Table(t) => {
                let code = t
                    .compose
                    .get(&(*f, *g))
                    .copied()
                    .ok_or_else(|| BaseError::BadMorphism(format!("{f:?};{g:?}")))?;
                Ok(Mor { src: f.src, tgt: g.tgt, code })
            }
        }
    }

    pub fn tensor_ob(&self, a: usize, b: usize) -> Result<usize, BaseError> {
        match self {
            Base::Terminal => Ok(0),
            Base::Boolean => Ok(a.min(b)),
            Base::FinSet { cap } => {
                let p = a * b;
                if p > *cap {
                    Err(BaseError::CapExceeded { a, b, cap: *cap })
                } else {
                    Ok(p)
                }
            }
            Base::Monoid(m) => Ok(m.mul[a][b]),
            Base::Table(t) => t
                .tensor_ob
                .get(&(a, b))
                .copied()
                .ok_or(BaseError::UnknownObject(a.max(b))),
        }
    }

    pub fn tensor_ob_list(&self, objs: &[usize]) -> Result<usize, BaseError> {
        let mut acc = self.unit_ob();
        for &o in objs {
            acc = self.tensor_ob(acc, o)?;
        }
        Ok(acc)
    }

    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Result<Mor, BaseError> {
        let src = self.tensor_ob(f.src, g.src)?;
        let tgt = self.tensor_ob(f.tgt, g.tgt)?;
        match self {
            Base::Terminal | Base::Boolean | Base::Monoid(_) => {
                Ok(Mor { src, tgt, code: 0 })
            }
            Base::FinSet { .. } => {
                // row-major pairing: element x·|g.src| + y maps to
                // f(x)·|g.tgt| + g(y)
                let fv = finset_values(f);
                let gv = finset_values(g);
                let mut values = Vec::with_capacity(src);
                for x in 0..f.src {
                    for y in 0..g.src {
                        values.push(fv[x] * g.tgt + gv[y]);
                    }
                }
                Ok(finset_mor(src, tgt, &values))
            }
            Base::Table(t) => {
                let code = t
                    .tensor_mor
                    .get(&(*f, *g))
                    .copied()
                    .ok_or_else(|| BaseError::BadMorphism(format!("{f:?}⊗{g:?}")))?;
                Ok(Mor { src, tgt, code })
            }
        }
    }

    pub fn tensor_mor_list(&self, mors: &[Mor]) -> Result<Mor, BaseError> {
        let mut acc = self.id(self.unit_ob());
        for m in mors {
            acc = self.tensor_mor(&acc, m)?;
        }
        Ok(acc)
    }

    /// The designated coproduct of a family of objects. Singleton families
    /// always have the trivial coproduct unless a table designates another.
    pub fn coproduct(&self, summands: &[usize]) -> Result<Coproduct, BaseError> {
        if let Base::Table(t) = self {
            if let Some(c) = t.coproducts.get(summands) {
                return Ok(c.clone());
            }
        }
        if summands.len() == 1 {
            let a = summands[0];
            return Ok(Coproduct {
                summands: summands.to_vec(),
                target: a,
                injections: vec![self.id(a)],
            });
        }
        match self {
            Base::Terminal => Ok(Coproduct {
                summands: summands.to_vec(),
                target: 0,
                injections: summands.iter().map(|_| self.id(0)).collect(),
            }),
            Base::Boolean => {
                let target = summands.iter().copied().max().unwrap_or(0);
                Ok(Coproduct {
                    summands: summands.to_vec(),
                    target,
                    injections: summands
                        .iter()
                        .map(|&s| Mor { src: s, tgt: target, code: 0 })
                        .collect(),
                })
            }
            Base::FinSet { cap } => {
                let total: usize = summands.iter().sum();
                if total > *cap {
                    return Err(BaseError::CapExceeded {
                        a: total,
                        b: 0,
                        cap: *cap,
                    });
                }
                let mut injections = Vec::new();
                let mut offset = 0;
                for &s in summands {
                    let values: Vec<usize> = (offset..offset + s).collect();
                    injections.push(finset_mor(s, total, &values));
                    offset += s;
                }
                Ok(Coproduct { summands: summands.to_vec(), target: total, injections })
            }
            Base::Monoid(m) => {
                // a discrete category only has coproducts of constant
                // families (and an initial object when there is exactly one
                // element)
                if summands.is_empty() {
                    if m.elements.len() == 1 {
                        return Ok(Coproduct { summands: vec![], target: 0, injections: vec![] });
                    }
                    return Err(BaseError::MissingCoproduct(vec![]));
                }
                let first = summands[0];
                if summands.iter().all(|&s| s == first) {
                    Ok(Coproduct {
                        summands: summands.to_vec(),
                        target: first,
                        injections: summands.iter().map(|_| self.id(first)).collect(),
                    })
                } else {
                    Err(BaseError::MissingCoproduct(summands.to_vec()))
                }
            }
            Base::Table(_) => Err(BaseError::MissingCoproduct(summands.to_vec())),
        }
    }

    /// The unique morphism out of a coproduct with the given legs.
    pub fn copair(&self, cop: &Coproduct, legs: &[Mor], target: usize) -> Result<Mor, BaseError> {
        assert_eq!(legs.len(), cop.summands.len());
        match self {
            Base::FinSet { .. } => {
                let mut values = Vec::with_capacity(cop.target);
                for leg in legs {
                    values.extend(finset_values(leg));
                }
                // the designated injections are consecutive windows, so the
                // concatenated value table is the copairing
                Ok(finset_mor(cop.target, target, &values))
            }
            Base::Terminal => Ok(Mor { src: cop.target, tgt: target, code: 0 }),
            Base::Boolean => {
                if legs.iter().all(|l| l.tgt == target) && cop.target <= target {
                    Ok(Mor { src: cop.target, tgt: target, code: 0 })
                } else {
                    Err(BaseError::NoCopairing(
                        legs.iter().map(|l| format!("{l:?}")).collect(),
                    ))
                }
            }
            Base::Monoid(_) | Base::Table(_) => {
                // search the hom set for the unique morphism restricting to
                // every leg
                let mut found = None;
                for h in self.hom(cop.target, target) {
                    let ok = cop
                        .injections
                        .iter()
                        .zip(legs)
                        .all(|(inj, leg)| self.compose(inj, &h).ok().as_ref() == Some(leg));
                    if ok {
                        if found.is_some() {
                            return Err(BaseError::NoCopairing(
                                legs.iter().map(|l| format!("{l:?}")).collect(),
                            ));
                        }
                        found = Some(h);
                    }
                }
                found.ok_or_else(|| {
                    BaseError::NoCopairing(legs.iter().map(|l| format!("{l:?}")).collect())
                })
            }
        }
    }

    pub fn find_inverse(&self, m: &Mor) -> Option<Mor> {
        match self {
            Base::FinSet { .. } => {
                if m.src != m.tgt {
                    return None;
                }
                let values = finset_values(m);
                let mut inv = vec![usize::MAX; m.tgt];
                for (i, &v) in values.iter().enumerate() {
                    if inv[v] != usize::MAX {
                        return None;
                    }
                    inv[v] = i;
                }
                if inv.iter().any(|&v| v == usize::MAX) {
                    return None;
                }
                Some(finset_mor(m.tgt, m.src, &inv))
            }
            _ => {
                let id_src = self.id(m.src);
                let id_tgt = self.id(m.tgt);
                self.hom(m.tgt, m.src).into_iter().find(|w| {
                    self.compose(m, w).ok() == Some(id_src)
                        && self.compose(w, m).ok() == Some(id_tgt)
                })
            }
        }
    }

    pub fn is_invertible(&self, m: &Mor) -> bool {
        self.find_inverse(m).is_some()
    }
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseViolation {
    IdentityNotNeutral { object: usize, mor: String },
    CompositionNotAssociative { f: String, g: String, h: String },
    CompositionMissing { f: String, g: String },
    TensorObNotAssociative { a: usize, b: usize, c: usize },
    TensorObUnitFails { a: usize },
    TensorMorMissing { f: String, g: String },
    TensorIdNotId { a: usize, b: usize },
    InterchangeFails { f: String, g: String, fp: String, gp: String },
    TensorMorNotAssociative { f: String, g: String, h: String },
    TensorMorUnitFails { f: String },
    CoproductInjectionIllTyped { summands: Vec<usize>, at: usize },
    CoproductNotUniversal { summands: Vec<usize>, target: usize, reason: String },
    DistributivityNotInvertible { factor: usize, summands: Vec<usize> },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BaseReport {
    pub violations: Vec<BaseViolation>,
}

impl BaseReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify category axioms, strict monoidality, designated coproducts, and
/// distributivity of the tensor over them. For the capped finite-set base
/// the morphism-level laws are exhaustively checked on objects of size at
/// most 3 (they hold for all sizes by the arithmetic of value tables).
pub fn validate_base(base: &Base) -> BaseReport {
    let mut violations = Vec::new();
    let mor_bound = match base {
        Base::FinSet { cap } => (*cap).min(2),
        _ => base.object_count() - 1,
    };
    let objects: Vec<usize> = (0..base.object_count()).collect();
    let small: Vec<usize> = (0..=mor_bound).collect();

    // identities and associativity
    for &a in &small {
        for &b in &small {
            for f in base.hom(a, b) {
                let left = base.compose(&base.id(a), &f);
                let right = base.compose(&f, &base.id(b));
                if left.ok() != Some(f) || right.ok() != Some(f) {
                    violations.push(BaseViolation::IdentityNotNeutral {
                        object: a,
                        mor: format!("{f:?}"),
                    });
                }
            }
        }
    }
    for &a in &small {
        for &b in &small {
            for &c in &small {
                for f in base.hom(a, b) {
                    for g in base.hom(b, c) {
                        let fg = match base.compose(&f, &g) {
                            Ok(m) => m,
                            Err(_) => {
                                violations.push(BaseViolation::CompositionMissing {
                                    f: format!("{f:?}"),
                                    g: format!("{g:?}"),
                                });
                                continue;
                            }
                        };
                        if !base.is_mor(&fg) {
                            violations.push(BaseViolation::CompositionMissing {
                                f: format!("{f:?}"),
                                g: format!("{g:?}"),
                            });
                        }
                        for &d in &small {
                            for h in base.hom(c, d) {
                                let left = base
                                    .compose(&fg, &h)
                                    .ok();
                                let right = base
                                    .compose(&g, &h)
                                    .ok()
                                    .and_then(|gh| base.compose(&f, &gh).ok());
                                if left != right || left.is_none() {
                                    violations.push(BaseViolation::CompositionNotAssociative {
                                        f: format!("{f:?}"),
                                        g: format!("{g:?}"),
                                        h: format!("{h:?}"),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // strict monoidality on objects
    let unit = base.unit_ob();
    for &a in &objects {
        let lu = base.tensor_ob(unit, a);
        let ru = base.tensor_ob(a, unit);
        if lu.ok() != Some(a) || ru.ok() != Some(a) {
            violations.push(BaseViolation::TensorObUnitFails { a });
        }
    }
    for &a in &objects {
        for &b in &objects {
            for &c in &objects {
                let left = base.tensor_ob(a, b).and_then(|ab| base.tensor_ob(ab, c));
                let right = base.tensor_ob(b, c).and_then(|bc| base.tensor_ob(a, bc));
                match (left, right) {
                    (Ok(l), Ok(r)) if l != r => {
                        violations.push(BaseViolation::TensorObNotAssociative { a, b, c });
                    }
                    // cap errors on one side only are fine for the capped base
                    _ => {}
                }
            }
        }
    }

    // tensor on morphisms: identity, interchange, strict associativity/unit
    for &a in &small {
        for &b in &small {
            if base.tensor_ob(a, b).is_err() {
                continue;
            }
            let t = base.tensor_mor(&base.id(a), &base.id(b));
            let ab = base.tensor_ob(a, b).unwrap();
            if t.ok() != Some(base.id(ab)) {
                violations.push(BaseViolation::TensorIdNotId { a, b });
            }
        }
    }
    let unit_id = base.id(unit);
    let small_homs: Vec<Mor> = {
        let mut out = Vec::new();
        for &a in &small {
            for &b in &small {
                out.extend(base.hom(a, b));
            }
        }
        out
    };
    for f in &small_homs {
        for g in &small_homs {
            if base.tensor_ob(f.src, g.src).is_err() || base.tensor_ob(f.tgt, g.tgt).is_err() {
                continue;
            }
            let fg = match base.tensor_mor(f, g) {
                Ok(m) if base.is_mor(&m) => m,
                _ => {
                    violations.push(BaseViolation::TensorMorMissing {
                        f: format!("{f:?}"),
                        g: format!("{g:?}"),
                    });
                    continue;
                }
            };
            // strict unit on morphisms
            if base.tensor_mor(&unit_id, f).ok() != Some(*f)
                || base.tensor_mor(f, &unit_id).ok() != Some(*f)
            {
                violations.push(BaseViolation::TensorMorUnitFails { f: format!("{f:?}") });
            }
            // interchange: (f⊗g);(f′⊗g′) = (f;f′)⊗(g;g′)
            for fp in &small_homs {
                if fp.src != f.tgt {
                    continue;
                }
                for gp in &small_homs {
                    if gp.src != g.tgt || base.tensor_ob(fp.tgt, gp.tgt).is_err() {
                        continue;
                    }
                    let lhs = base
                        .tensor_mor(fp, gp)
                        .ok()
                        .and_then(|t2| base.compose(&fg, &t2).ok());
                    let rhs = match (base.compose(f, fp), base.compose(g, gp)) {
                        (Ok(x), Ok(y)) => base.tensor_mor(&x, &y).ok(),
                        _ => None,
                    };
                    if lhs != rhs || lhs.is_none() {
                        violations.push(BaseViolation::InterchangeFails {
                            f: format!("{f:?}"),
                            g: format!("{g:?}"),
                            fp: format!("{fp:?}"),
                            gp: format!("{gp:?}"),
                        });
                    }
                }
            }
            // strict associativity of ⊗ on morphisms
            for h in &small_homs {
                if base.tensor_ob_list(&[f.src, g.src, h.src]).is_err()
                    || base.tensor_ob_list(&[f.tgt, g.tgt, h.tgt]).is_err()
                {
                    continue;
                }
                let left = base.tensor_mor(&fg, h).ok();
                let right = base
                    .tensor_mor(g, h)
                    .ok()
                    .and_then(|gh| base.tensor_mor(f, &gh).ok());
                if left != right || left.is_none() {
                    violations.push(BaseViolation::TensorMorNotAssociative {
                        f: format!("{f:?}"),
                        g: format!("{g:?}"),
                        h: format!("{h:?}"),
                    });
                }
            }
        }
    }

    // designated coproducts: typing and the universal property by
    // exhaustion; distributivity of ⊗ over each designated family
    let designated: Vec<Vec<usize>> = match base {
        Base::Table(t) => t.coproducts.keys().cloned().collect(),
        Base::FinSet { cap } => {
            // exercise the computed coproducts on small families
            let mut fams = vec![vec![]];
            for a in 0..=(*cap).min(2) {
                for b in 0..=(*cap).min(2) {
                    if a + b <= *cap {
                        fams.push(vec![a, b]);
                    }
                }
            }
            fams
        }
        Base::Boolean => vec![vec![], vec![0, 1], vec![1, 1], vec![0, 0], vec![0, 1, 1]],
        Base::Terminal => vec![vec![], vec![0, 0]],
        Base::Monoid(_) => vec![],
    };
    for summands in &designated {
        let cop = match base.coproduct(summands) {
            Ok(c) => c,
            Err(_) => continue,
        };
        for (i, inj) in cop.injections.iter().enumerate() {
            if inj.src != cop.summands[i] || inj.tgt != cop.target || !base.is_mor(inj) {
                violations.push(BaseViolation::CoproductInjectionIllTyped {
                    summands: summands.clone(),
                    at: i,
                });
            }
        }
        // universal property: for every target and tuple of legs there is
        // exactly one mediating morphism
        for &z in &small {
            let leg_sets: Vec<Vec<Mor>> =
                cop.summands.iter().map(|&s| base.hom(s, z)).collect();
            let mut tuples = vec![Vec::new()];
            for set in &leg_sets {
                let mut next = Vec::new();
                for t in &tuples {
                    for leg in set {
                        let mut ext: Vec<Mor> = t.clone();
                        ext.push(*leg);
                        next.push(ext);
                    }
                }
                tuples = next;
            }
            for legs in tuples {
                let mediating: Vec<Mor> = base
                    .hom(cop.target, z)
                    .into_iter()
                    .filter(|h| {
                        cop.injections
                            .iter()
                            .zip(&legs)
                            .all(|(inj, leg)| base.compose(inj, h).ok().as_ref() == Some(leg))
                    })
                    .collect();
                if mediating.len() != 1 {
                    violations.push(BaseViolation::CoproductNotUniversal {
                        summands: summands.clone(),
                        target: z,
                        reason: format!("{} mediating morphisms", mediating.len()),
                    });
                }
            }
        }
        // distributivity: z ⊗ − sends the family to a family whose
        // designated coproduct exists with invertible comparison
        for &z in &small {
            let tensored: Result<Vec<usize>, _> =
                cop.summands.iter().map(|&s| base.tensor_ob(z, s)).collect();
            let Ok(tensored) = tensored else { continue };
            let tcop = match base.coproduct(&tensored) {
                Ok(t) => t,
                // families that outgrow a size cap are simply out of range
                Err(BaseError::CapExceeded { .. }) => continue,
                Err(_) => {
                    violations.push(BaseViolation::DistributivityNotInvertible {
                        factor: z,
                        summands: summands.clone(),
                    });
                    continue;
                }
            };
            let Ok(z_total) = base.tensor_ob(z, cop.target) else { continue };
            let legs: Result<Vec<Mor>, _> = cop
                .injections
                .iter()
                .map(|inj| base.tensor_mor(&base.id(z), inj))
                .collect();
            let Ok(legs) = legs else { continue };
            let kappa = match base.copair(&tcop, &legs, z_total) {
                Ok(k) => k,
                Err(_) => {
                    violations.push(BaseViolation::DistributivityNotInvertible {
                        factor: z,
                        summands: summands.clone(),
                    });
                    continue;
                }
            };
            if !base.is_invertible(&kappa) {
                violations.push(BaseViolation::DistributivityNotInvertible {
                    factor: z,
                    summands: summands.clone(),
                });
            }
        }
    }

    violations.sort_by_key(|v| format!("{v:?}"));
    violations.dedup();
    BaseReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_bases_validate() {
        for base in [
            base_terminal(),
            base_boolean(),
            base_finset(4),
            base_monoid("c2", &["1", "g"], 0, vec![vec![0, 1], vec![1, 0]]),
        ] {
            let report = validate_base(&base);
            assert!(report.is_valid(), "{}: {:?}", base.name(), report.violations);
        }
    }

    #[test]
    fn finset_coding_round_trips() {
        let m = finset_mor(3, 4, &[2, 0, 3]);
        assert_eq!(finset_values(&m), vec![2, 0, 3]);
        assert_eq!(m.code, 2 + 0 * 4 + 3 * 16);
    }

    #[test]
    fn finset_tensor_is_strictly_associative_on_morphisms() {
        let base = base_finset(8);
        let f = finset_mor(2, 2, &[1, 0]);
        let g = finset_mor(2, 1, &[0, 0]);
        let h = finset_mor(2, 2, &[0, 0]);
        let fg = base.tensor_mor(&f, &g).unwrap();
        let left = base.tensor_mor(&fg, &h).unwrap();
        let gh = base.tensor_mor(&g, &h).unwrap();
        let right = base.tensor_mor(&f, &gh).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn finset_cap_is_enforced() {
        let base = base_finset(4);
        assert!(base.tensor_ob(2, 3).is_err());
        assert!(base.tensor_ob(2, 2).is_ok());
        assert!(base.coproduct(&[3, 2]).is_err());
    }

    #[test]
    fn finset_coproduct_universal_property() {
        let base = base_finset(6);
        let cop = base.coproduct(&[2, 3]).unwrap();
        assert_eq!(cop.target, 5);
        let f = finset_mor(2, 2, &[1, 1]);
        let g = finset_mor(3, 2, &[0, 1, 0]);
        let h = base.copair(&cop, &[f, g], 2).unwrap();
        assert_eq!(base.compose(&cop.injections[0], &h).unwrap(), f);
        assert_eq!(base.compose(&cop.injections[1], &h).unwrap(), g);
        assert_eq!(finset_values(&h), vec![1, 1, 0, 1, 0]);
    }

    #[test]
    fn boolean_tensor_is_meet_and_coproduct_is_join() {
        let base = base_boolean();
        assert_eq!(base.tensor_ob(0, 1).unwrap(), 0);
        assert_eq!(base.tensor_ob(1, 1).unwrap(), 1);
        assert_eq!(base.unit_ob(), 1);
        let cop = base.coproduct(&[0, 1]).unwrap();
        assert_eq!(cop.target, 1);
        // empty coproduct is the bottom element
        assert_eq!(base.coproduct(&[]).unwrap().target, 0);
    }

    #[test]
    fn monoid_base_has_only_identities_and_partial_coproducts() {
        let base = base_monoid("c2", &["1", "g"], 0, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(base.hom_size(0, 1), 0);
        assert_eq!(base.hom_size(1, 1), 1);
        assert_eq!(base.tensor_ob(1, 1).unwrap(), 0);
        assert!(base.coproduct(&[0, 0]).is_ok());
        assert!(base.coproduct(&[0, 1]).is_err());
        assert!(base.coproduct(&[]).is_err());
    }

    #[test]
    fn invertibility_detection() {
        let base = base_finset(4);
        let swap = finset_mor(2, 2, &[1, 0]);
        let collapse = finset_mor(2, 2, &[0, 0]);
        assert!(base.is_invertible(&swap));
        assert_eq!(base.find_inverse(&swap), Some(swap));
        assert!(!base.is_invertible(&collapse));
        let bool_base = base_boolean();
        assert!(!bool_base.is_invertible(&Mor::new(0, 1, 0)));
        assert!(bool_base.is_invertible(&Mor::new(1, 1, 0)));
    }

    fn c2_table_base() -> TableBase {
        // the group ℤ/2 as a one-object base, tensor = composition
        let i = Mor::new(0, 0, 0);
        let e = Mor::new(0, 0, 1);
        let mut compose = BTreeMap::new();
        let mut tensor_mor = BTreeMap::new();
        for f in [i, e] {
            for g in [i, e] {
                let prod = u64::from(f.code != g.code);
                compose.insert((f, g), prod);
                tensor_mor.insert((f, g), prod);
            }
        }
        TableBase {
            name: "c2-table".into(),
            objects: vec!["*".into()],
            hom_sizes: BTreeMap::from([((0, 0), 2)]),
            identities: BTreeMap::from([(0, 0)]),
            compose,
            tensor_ob: BTreeMap::from([((0, 0), 0)]),
            unit_ob: 0,
            tensor_mor,
            coproducts: BTreeMap::new(),
        }
    }

    #[test]
    fn table_base_validates_and_doctoring_is_reported() {
        let good = Base::Table(c2_table_base());
        assert!(validate_base(&good).is_valid());

        // misrecord id ∘ e as id: the identity is no longer neutral
        let mut t = c2_table_base();
        t.compose.insert((Mor::new(0, 0, 0), Mor::new(0, 0, 1)), 0);
        let report = validate_base(&Base::Table(t));
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            BaseViolation::IdentityNotNeutral { .. }
                | BaseViolation::CompositionNotAssociative { .. }
        )));
    }
}
