//! The category of operators of a multicategory, fibred over finite
//! ordinals, and the inverse construction recovering the multicategory.
//!
//! For a multicategory `M` the category of operators `M^⊗` has as objects
//! finite lists of colors, graded by length ("degree"), and as morphisms
//! `(X_1, …, X_n) → (Y_1, …, Y_m)` pairs of an order-preserving
//! `φ: [m] → [n]` and a multimorphism
//! `f_j ∈ M(X_{φ(j−1)+1}, …, X_{φ(j)}; Y_j)` for each `j`. Composition
//! pushes windows through `γ`. Three conditions characterise the categories
//! arising this way: designated lifts of inert maps satisfying a
//! cocartesian universal property, a Segal condition on objects and
//! fibrewise homs, and inert projections decomposing every hom set over a
//! fixed base map.

use super::{Color, Multicategory, MulticatError, OpRef};
use crate::simplex::{enumerate_maps, SimplexMap};
use serde::Serialize;
use std::collections::BTreeMap;

/// A morphism of a category of operators: source and target color lists,
/// the base map in Δ (from the target's ordinal to the source's), and one
/// multimorphism per target slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OpMorphism {
    pub src: Vec<Color>,
    pub tgt: Vec<Color>,
    pub phi: SimplexMap,
    pub ops: Vec<OpRef>,
}

#[derive(Debug, Clone)]
pub struct OperatorCategory {
    pub degree_cap: usize,
    pub multicat: Multicategory,
    colors: Vec<Color>,
    /// Doctored designated lifts, for fault-injection; every other inert
    /// lift is the default projection.
    overrides: BTreeMap<(Vec<Color>, SimplexMap), OpMorphism>,
}

/// Build the category of operators of `M` truncated to lists of length at
/// most `degree_cap`.
pub fn operators(m: &Multicategory, degree_cap: usize) -> OperatorCategory {
    let mut colors = m.colors();
    colors.sort();
    OperatorCategory {
        degree_cap,
        multicat: m.clone(),
        colors,
        overrides: BTreeMap::new(),
    }
}

impl OperatorCategory {
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// All objects of the given degree, in lexicographic order.
    pub fn objects_of_degree(&self, degree: usize) -> Vec<Vec<Color>> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == degree {
                out.push(cur);
                continue;
            }
            for c in self.colors.iter().rev() {
                let mut next = cur.clone();
                next.push(c.clone());
                stack.push(next);
            }
        }
        out
    }

    pub fn objects(&self) -> Vec<Vec<Color>> {
        (0..=self.degree_cap).flat_map(|d| self.objects_of_degree(d)).collect()
    }

    /// The hom set over a fixed base map `phi: [m] → [n]`, where `src` has
    /// degree `n` and `tgt` degree `m`: the product over target slots of the
    /// multihom sets on the corresponding source windows.
    pub fn hom_over(&self, src: &[Color], tgt: &[Color], phi: &SimplexMap) -> Vec<OpMorphism> {
        assert_eq!(phi.tgt_degree(), src.len(), "base map must land in the source ordinal");
        assert_eq!(phi.src_degree(), tgt.len(), "base map must start at the target ordinal");
        let mut slot_ops: Vec<Vec<OpRef>> = Vec::with_capacity(tgt.len());
        for j in 0..tgt.len() {
            let window = &src[phi.value(j)..phi.value(j + 1)];
            let ops = self.multicat.multihom(window, &tgt[j]);
            if ops.is_empty() {
                return vec![];
            }
            slot_ops.push(
                ops.into_iter()
                    .map(|op| OpRef { inputs: window.to_vec(), output: tgt[j].clone(), op })
                    .collect(),
            );
        }
        let mut out = vec![Vec::new()];
        for slot in &slot_ops {
            let mut next = Vec::with_capacity(out.len() * slot.len());
            for partial in &out {
                for op in slot {
                    let mut ext: Vec<OpRef> = partial.clone();
                    ext.push(op.clone());
                    next.push(ext);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|ops| OpMorphism {
                src: src.to_vec(),
                tgt: tgt.to_vec(),
                phi: phi.clone(),
                ops,
            })
            .collect()
    }

    /// The full hom set: union of `hom_over` across all base maps.
    pub fn hom(&self, src: &[Color], tgt: &[Color]) -> Vec<OpMorphism> {
        let mut out = Vec::new();
        for phi in enumerate_maps(tgt.len(), src.len(), usize::MAX).unwrap() {
            out.extend(self.hom_over(src, tgt, &phi));
        }
        out
    }

    pub fn identity_morphism(&self, obj: &[Color]) -> OpMorphism {
        let ops = obj
            .iter()
            .map(|c| self.multicat.identity(c).expect("object colors must be colors of M"))
            .collect();
        OpMorphism {
            src: obj.to_vec(),
            tgt: obj.to_vec(),
            phi: SimplexMap::identity(obj.len()),
            ops,
        }
    }

    /// Compose `first: X → Y` with `second: Y → Z`. The base maps compose in
    /// Δ and each slot of `second` consumes a window of `first`'s slots
    /// through `γ`.
    pub fn compose_morphisms(
        &self,
        first: &OpMorphism,
        second: &OpMorphism,
    ) -> Result<OpMorphism, MulticatError> {
        assert_eq!(first.tgt, second.src, "morphisms must be composable");
        let phi = second.phi.compose(&first.phi).expect("base maps compose");
        let mut ops = Vec::with_capacity(second.ops.len());
        for j in 0..second.ops.len() {
            let lo = second.phi.value(j);
            let hi = second.phi.value(j + 1);
            ops.push(self.multicat.compose(&second.ops[j], &first.ops[lo..hi])?);
        }
        Ok(OpMorphism { src: first.src.clone(), tgt: second.tgt.clone(), phi, ops })
    }

    /// The designated lift of an inert map at an object: by default the
    /// projection onto the sub-window, with identity components.
    pub fn designated_lift(&self, obj: &[Color], phi: &SimplexMap) -> OpMorphism {
        assert!(phi.is_inert(), "designated lifts exist along inert maps only");
        assert_eq!(phi.tgt_degree(), obj.len());
        if let Some(lift) = self.overrides.get(&(obj.to_vec(), phi.clone())) {
            return lift.clone();
        }
        let start = phi.value(0);
        let m = phi.src_degree();
        let window: Vec<Color> = obj[start..start + m].to_vec();
        let ops = window
            .iter()
            .map(|c| self.multicat.identity(c).expect("object colors must be colors of M"))
            .collect();
        OpMorphism { src: obj.to_vec(), tgt: window, phi: phi.clone(), ops }
    }

    /// Replace one designated lift (fault injection for the checker).
    pub fn set_inert_lift(&mut self, obj: Vec<Color>, phi: SimplexMap, lift: OpMorphism) {
        self.overrides.insert((obj, phi), lift);
    }

    fn is_morphism(&self, f: &OpMorphism) -> bool {
        f.phi.tgt_degree() == f.src.len()
            && f.phi.src_degree() == f.tgt.len()
            && f.ops.len() == f.tgt.len()
            && (0..f.tgt.len()).all(|j| {
                let window = &f.src[f.phi.value(j)..f.phi.value(j + 1)];
                f.ops[j].inputs == window
                    && f.ops[j].output == f.tgt[j]
                    && self.multicat.has_op(&f.ops[j])
            })
    }
}

// ---------------------------------------------------------------------------
// Structural conditions

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorViolation {
    /// The designated lift of an inert map is not a well-formed morphism
    /// over that map.
    LiftIllFormed { object: Vec<Color>, phi: String },
    /// Composition with a designated lift fails the cocartesian universal
    /// property for some continuation map and target.
    LiftNotCocartesian {
        object: Vec<Color>,
        phi: String,
        psi: String,
        target: Vec<Color>,
        reason: String,
    },
    /// The fibre over some degree does not consist of exactly the tuples of
    /// degree-1 objects.
    ObjectsNotSegal { degree: usize, count: usize, expected: usize },
    /// Composition with the inert projections fails to decompose a hom set
    /// over a fixed base map as the product of its slot homs.
    InertDecompositionFails {
        src: Vec<Color>,
        tgt: Vec<Color>,
        phi: String,
        reason: String,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OperatorReport {
    pub violations: Vec<OperatorViolation>,
    pub objects_checked: usize,
    pub lifts_checked: usize,
}

impl OperatorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-slot candidate targets that could receive a nonempty hom from the
/// given source along the given base map.
fn candidate_targets(
    e: &OperatorCategory,
    src: &[Color],
    phi: &SimplexMap,
) -> Vec<Vec<Color>> {
    let m = phi.src_degree();
    let mut slot_candidates: Vec<Vec<Color>> = Vec::with_capacity(m);
    for j in 0..m {
        let window = &src[phi.value(j)..phi.value(j + 1)];
        let mut cands: Vec<Color> = e
            .colors()
            .iter()
            .filter(|y| !e.multicat.multihom(window, y).is_empty())
            .cloned()
            .collect();
        cands.dedup();
        if cands.is_empty() {
            return vec![];
        }
        slot_candidates.push(cands);
    }
    let mut out = vec![Vec::new()];
    for slot in &slot_candidates {
        let mut next = Vec::with_capacity(out.len() * slot.len());
        for partial in &out {
            for c in slot {
                let mut ext: Vec<Color> = partial.clone();
                ext.push(c.clone());
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

/// Verify the three structural conditions of a category of operators:
/// (i) designated inert lifts are cocartesian, (ii) the fibre over each
/// degree is the power of the degree-1 fibre, and (iii) composition with
/// inert projections decomposes each hom set over a base map into the
/// product of its slot homs.
pub fn check_operator_conditions(e: &OperatorCategory) -> OperatorReport {
    let mut report = OperatorReport::default();
    let d = e.degree_cap;

    // (ii) object-level Segal condition.
    let base = e.objects_of_degree(1).len();
    for n in 0..=d {
        let count = e.objects_of_degree(n).len();
        let expected = base.pow(n as u32);
        if count != expected {
            report.violations.push(OperatorViolation::ObjectsNotSegal {
                degree: n,
                count,
                expected,
            });
        }
    }

    for n in 0..=d {
        for x in e.objects_of_degree(n) {
            report.objects_checked += 1;
            // (i) every inert map out of [n] has a cocartesian designated lift.
            for m in 0..=n {
                for start in 0..=(n - m) {
                    let phi = SimplexMap::subinterval(m, n, start);
                    let lift = e.designated_lift(&x, &phi);
                    report.lifts_checked += 1;
                    if !(e.is_morphism(&lift) && lift.phi == phi && lift.src == x) {
                        report.violations.push(OperatorViolation::LiftIllFormed {
                            object: x.clone(),
                            phi: format!("{phi:?}"),
                        });
                        continue;
                    }
                    let w = &lift.tgt;
                    for k in 0..=d {
                        for psi in enumerate_maps(k, m, usize::MAX).unwrap() {
                            let chi = psi.compose(&phi).unwrap();
                            let mut targets = candidate_targets(e, w, &psi);
                            targets.extend(candidate_targets(e, &x, &chi));
                            targets.sort();
                            targets.dedup();
                            for z in targets {
                                let upstairs = e.hom_over(w, &z, &psi);
                                let downstairs = e.hom_over(&x, &z, &chi);
                                let mut images = Vec::new();
                                let mut broken = None;
                                for g in &upstairs {
                                    match e.compose_morphisms(&lift, g) {
                                        Ok(h) => images.push(h),
                                        Err(err) => {
                                            broken = Some(format!(
                                                "composite with the lift undefined: {err}"
                                            ));
                                            break;
                                        }
                                    }
                                }
                                let reason = if let Some(r) = broken {
                                    Some(r)
                                } else {
                                    let mut sorted = images.clone();
                                    sorted.sort();
                                    sorted.dedup();
                                    if sorted.len() != images.len() {
                                        Some("two morphisms out of the lift target collapse".into())
                                    } else if images.iter().any(|h| !downstairs.contains(h)) {
                                        Some("composite with the lift leaves the hom set".into())
                                    } else if images.len() != downstairs.len() {
                                        Some(format!(
                                            "{} morphisms factor through the lift, {} exist downstairs",
                                            images.len(),
                                            downstairs.len()
                                        ))
                                    } else {
                                        None
                                    }
                                };
                                if let Some(reason) = reason {
                                    report.violations.push(
                                        OperatorViolation::LiftNotCocartesian {
                                            object: x.clone(),
                                            phi: format!("{phi:?}"),
                                            psi: format!("{psi:?}"),
                                            target: z.clone(),
                                            reason,
                                        },
                                    );
                                }
                            }
                        }
                    }
                }
            }

            // (iii) inert projections decompose homs over every base map.
            for m in 0..=d {
                for phi in enumerate_maps(m, n, usize::MAX).unwrap() {
                    let targets = candidate_targets(e, &x, &phi);
                    for y in targets {
                        let total = e.hom_over(&x, &y, &phi);
                        // product of slot homs over the composites phi ∘ ρ_j
                        let mut product_size = 1usize;
                        let mut slot_homs = Vec::new();
                        for j in 1..=m {
                            let rho = SimplexMap::rho(m, j);
                            let composite = rho.compose(&phi).unwrap();
                            let slot = e.hom_over(&x, &y[j - 1..j], &composite);
                            product_size *= slot.len();
                            slot_homs.push(slot);
                        }
                        if m == 0 {
                            // empty product: the unique tuple; hom over the
                            // unique map must be a singleton exactly when …
                            // it always is: both sides are empty products.
                            continue;
                        }
                        let mut tuples = Vec::new();
                        let mut ok = true;
                        for f in &total {
                            let mut tuple = Vec::new();
                            for j in 1..=m {
                                let rho = SimplexMap::rho(m, j);
                                let lift = e.designated_lift(&y, &rho);
                                match e.compose_morphisms(f, &lift) {
                                    Ok(c) => tuple.push(c),
                                    Err(_) => {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                            if !ok {
                                break;
                            }
                            for (j, c) in tuple.iter().enumerate() {
                                if !slot_homs[j].contains(c) {
                                    ok = false;
                                }
                            }
                            tuples.push(tuple);
                        }
                        let reason = if !ok {
                            Some("projection of a morphism is not a slot morphism".to_string())
                        } else {
                            let mut sorted = tuples.clone();
                            sorted.sort();
                            sorted.dedup();
                            if sorted.len() != tuples.len() {
                                Some("two morphisms project to the same slot tuple".into())
                            } else if tuples.len() != product_size {
                                Some(format!(
                                    "hom has {} morphisms, slot product has {}",
                                    tuples.len(),
                                    product_size
                                ))
                            } else {
                                None
                            }
                        };
                        if let Some(reason) = reason {
                            report.violations.push(OperatorViolation::InertDecompositionFails {
                                src: x.clone(),
                                tgt: y.clone(),
                                phi: format!("{phi:?}"),
                                reason,
                            });
                        }
                    }
                }
            }
        }
    }

    report.violations.sort_by_key(|v| format!("{v:?}"));
    report.violations.dedup();
    report
}

// ---------------------------------------------------------------------------
// Recovering the multicategory

/// Extract the multicategory of a category of operators: colors are the
/// degree-1 objects, multimorphisms are the morphisms to a degree-1 object
/// over the active map, and composition is computed by factoring through
/// the inert decomposition of the middle hom set.
pub fn multicat_of_operators(e: &OperatorCategory) -> Result<Multicategory, MulticatError> {
    if e.degree_cap < 1 {
        return Err(MulticatError::CapExceeded { requested: 1, cap: e.degree_cap });
    }
    let arity_cap = e.degree_cap - 1;
    let colors: Vec<Color> = e.objects_of_degree(1).into_iter().map(|mut v| v.pop().unwrap()).collect();

    let mut multihom: BTreeMap<(Vec<Color>, Color), Vec<String>> = BTreeMap::new();
    let mut ops_by_typing: BTreeMap<(Vec<Color>, Color), Vec<OpMorphism>> = BTreeMap::new();
    for n in 0..=arity_cap {
        let alpha = SimplexMap::alpha(n);
        for x in e.objects_of_degree(n) {
            for y in &colors {
                let tgt = vec![y.clone()];
                let morphisms = e.hom_over(&x, &tgt, &alpha);
                if morphisms.is_empty() {
                    continue;
                }
                let labels: Vec<String> = morphisms.iter().map(|f| f.ops[0].op.clone()).collect();
                multihom.insert((x.clone(), y.clone()), labels);
                ops_by_typing.insert((x.clone(), y.clone()), morphisms);
            }
        }
    }

    let mut identities = BTreeMap::new();
    for c in &colors {
        let id = e.identity_morphism(std::slice::from_ref(c));
        identities.insert(c.clone(), id.ops[0].op.clone());
    }

    // Composition: lift the inners along the inert windows, find the unique
    // morphism into the middle object with those projections, and follow it
    // with the outer morphism.
    let mut compose = BTreeMap::new();
    let typings: Vec<((Vec<Color>, Color), Vec<OpMorphism>)> =
        ops_by_typing.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for ((y_list, z), outers) in &typings {
        let k = y_list.len();
        // all tuples of inner morphisms with matching outputs and total
        // arity within the cap
        let mut inner_choices: Vec<Vec<(Vec<Color>, OpMorphism)>> = vec![vec![]];
        for slot_color in y_list {
            let mut next = Vec::new();
            for partial in &inner_choices {
                let used: usize = partial.iter().map(|(ins, _)| ins.len()).sum();
                for ((ins, out), fs) in &typings {
                    if out != slot_color || used + ins.len() > arity_cap {
                        continue;
                    }
                    for f in fs {
                        let mut ext = partial.clone();
                        ext.push((ins.clone(), f.clone()));
                        next.push(ext);
                    }
                }
            }
            inner_choices = next;
        }
        for inners in &inner_choices {
            let arities: Vec<usize> = inners.iter().map(|(ins, _)| ins.len()).collect();
            let n: usize = arities.iter().sum();
            let x_full: Vec<Color> =
                inners.iter().flat_map(|(ins, _)| ins.iter().cloned()).collect();
            // block map [k] → [n] with jumps the inner arities
            let mut values = Vec::with_capacity(k + 1);
            let mut acc = 0;
            values.push(0);
            for a in &arities {
                acc += a;
                values.push(acc);
            }
            let block = SimplexMap::new(k, n, values).unwrap();
            // lift each inner to a morphism out of the concatenated source
            let mut lifted = Vec::with_capacity(k);
            let mut offset = 0;
            for (ins, f) in inners {
                let iota = SimplexMap::subinterval(ins.len(), n, offset);
                let window_lift = e.designated_lift(&x_full, &iota);
                lifted.push(e.compose_morphisms(&window_lift, f)?);
                offset += ins.len();
            }
            // unique morphism over the block map with these projections
            let candidates = e.hom_over(&x_full, y_list, &block);
            let mut found: Option<OpMorphism> = None;
            for u in candidates {
                let mut matches = true;
                for (j, h) in lifted.iter().enumerate() {
                    let rho = SimplexMap::rho(k, j + 1);
                    let proj = e.designated_lift(y_list, &rho);
                    if e.compose_morphisms(&u, &proj)? != *h {
                        matches = false;
                        break;
                    }
                }
                if matches {
                    found = Some(u);
                    break;
                }
            }
            let u = found.ok_or_else(|| {
                MulticatError::InvalidOperatorCategory(format!(
                    "no morphism over the block map projects to the lifted inners at {x_full:?} → {y_list:?}"
                ))
            })?;
            for outer in outers {
                let composite = e.compose_morphisms(&u, outer)?;
                let outer_ref = OpRef {
                    inputs: y_list.clone(),
                    output: z.clone(),
                    op: outer.ops[0].op.clone(),
                };
                let inner_refs: Vec<OpRef> = inners
                    .iter()
                    .map(|(ins, f)| OpRef {
                        inputs: ins.clone(),
                        output: f.tgt[0].clone(),
                        op: f.ops[0].op.clone(),
                    })
                    .collect();
                compose.insert((outer_ref, inner_refs), composite.ops[0].op.clone());
            }
        }
    }

    Ok(Multicategory::Table(super::TableMulticat {
        colors,
        arity_cap,
        multihom,
        identities,
        compose,
    }))
}
