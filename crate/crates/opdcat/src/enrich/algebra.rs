//! The algebra presentation of an enriched category: a contravariant
//! assignment on the simplex-shaped diagrams of its objects.
//!
//! For an object tuple `X = (x_0, …, x_n)` and a weakly monotone map
//! `φ: [m] → [n]`, the structure morphism acts slotwise: slot `j` takes
//! the tensor of the hom objects over the window `(φ(j−1), φ(j)]` of `X`
//! to `C(x_{φ(j−1)}, x_{φ(j)})` — the unit on an empty window, the
//! identity on a singleton window, and iterated composition otherwise.
//! The data of all these slot lists is equivalent to the category itself,
//! and the equivalence is implemented in both directions.

use super::base::Mor;
use super::{fold_comp, key2, key3, EnrichError, EnrichedCategory};
use crate::simplex::SimplexMap;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The materialized action: for each object tuple (indexed by its degree)
/// and each simplex map into that degree, the list of per-slot structure
/// morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatAlgebra {
    pub base: Arc<super::base::Base>,
    pub objects: Vec<String>,
    pub degree_cap: usize,
    pub action: BTreeMap<(Vec<String>, SimplexMap), Vec<Mor>>,
}

fn tuples(objects: &[String], len: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for x in objects {
                let mut ext = t.clone();
                ext.push(x.clone());
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

/// The slot morphism of `φ` at slot `j` (1-based) for the tuple `X`.
fn slot_morphism(c: &EnrichedCategory, xs: &[String], phi: &SimplexMap, j: usize) -> Mor {
    let lo = phi.value(j - 1);
    let hi = phi.value(j);
    if lo == hi {
        c.unit_mor(&xs[lo])
    } else {
        fold_comp(c, &xs[lo..=hi])
    }
}

/// Materialize the algebra of a category up to a degree cap: every object
/// tuple of length at most `degree_cap + 1`, acted on by every simplex map
/// between degrees within the cap.
pub fn algebra_of_enriched(c: &EnrichedCategory, degree_cap: usize) -> CatAlgebra {
    let mut action = BTreeMap::new();
    for n in 0..=degree_cap {
        for xs in tuples(&c.objects, n + 1) {
            for m in 0..=degree_cap {
                for phi in crate::simplex::enumerate_maps(m, n, usize::MAX)
                    .expect("degrees are within the enumeration cap")
                {
                    let slots: Vec<Mor> =
                        (1..=m).map(|j| slot_morphism(c, &xs, &phi, j)).collect();
                    action.insert((xs.clone(), phi), slots);
                }
            }
        }
    }
    CatAlgebra { base: c.base.clone(), objects: c.objects.clone(), degree_cap, action }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraViolation {
    MissingEntry { tuple: Vec<String>, phi: SimplexMap },
    SlotCountMismatch { tuple: Vec<String>, phi: SimplexMap },
    SlotIllTyped { tuple: Vec<String>, phi: SimplexMap, slot: usize },
    IdentityActionFails { tuple: Vec<String> },
    NotInertPreserving { tuple: Vec<String>, phi: SimplexMap, slot: usize },
    FunctorialityFails { tuple: Vec<String>, phi: SimplexMap, psi: SimplexMap, slot: usize },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AlgebraReport {
    pub violations: Vec<AlgebraViolation>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the algebra laws on the stored data: entries present and
/// well-typed against the hom objects read off the degree-1 identities,
/// identities acting as identities, singleton windows acting as
/// identities, and the slotwise functoriality equation for every
/// composable pair of simplex maps within the cap.
pub fn check_algebra(a: &CatAlgebra) -> AlgebraReport {
    let mut violations = Vec::new();
    let base = &*a.base;
    let cap = a.degree_cap;

    // hom objects from the degree-1 identity entries
    let mut hom_ob: BTreeMap<(String, String), usize> = BTreeMap::new();
    let id1 = SimplexMap::identity(1);
    for xs in tuples(&a.objects, 2) {
        match a.action.get(&(xs.clone(), id1.clone())) {
            Some(slots) if slots.len() == 1 => {
                hom_ob.insert(key2(&xs[0], &xs[1]), slots[0].src);
            }
            Some(_) => violations.push(AlgebraViolation::SlotCountMismatch {
                tuple: xs.clone(),
                phi: id1.clone(),
            }),
            None => violations.push(AlgebraViolation::MissingEntry {
                tuple: xs.clone(),
                phi: id1.clone(),
            }),
        }
    }
    if !violations.is_empty() {
        return AlgebraReport { violations };
    }
    let window_ob = |xs: &[String], lo: usize, hi: usize| -> Result<usize, EnrichError> {
        let homs: Vec<usize> = (lo + 1..=hi)
            .map(|i| hom_ob[&key2(&xs[i - 1], &xs[i])])
            .collect();
        Ok(base.tensor_ob_list(&homs)?)
    };

    for n in 0..=cap {
        for xs in tuples(&a.objects, n + 1) {
            for m in 0..=cap {
                for phi in crate::simplex::enumerate_maps(m, n, usize::MAX).unwrap() {
                    let Some(slots) = a.action.get(&(xs.clone(), phi.clone())) else {
                        violations.push(AlgebraViolation::MissingEntry {
                            tuple: xs.clone(),
                            phi,
                        });
                        continue;
                    };
                    if slots.len() != m {
                        violations.push(AlgebraViolation::SlotCountMismatch {
                            tuple: xs.clone(),
                            phi,
                        });
                        continue;
                    }
                    for j in 1..=m {
                        let lo = phi.value(j - 1);
                        let hi = phi.value(j);
                        let src = window_ob(&xs, lo, hi);
                        let tgt = hom_ob[&key2(&xs[lo], &xs[hi])];
                        let well_typed = src
                            .is_ok_and(|s| slots[j - 1].src == s && slots[j - 1].tgt == tgt);
                        if !well_typed || !base.is_mor(&slots[j - 1]) {
                            violations.push(AlgebraViolation::SlotIllTyped {
                                tuple: xs.clone(),
                                phi: phi.clone(),
                                slot: j,
                            });
                        } else if hi == lo + 1 && slots[j - 1] != base.id(tgt) {
                            // singleton windows are exactly the inert slots
                            violations.push(AlgebraViolation::NotInertPreserving {
                                tuple: xs.clone(),
                                phi: phi.clone(),
                                slot: j,
                            });
                        }
                    }
                }
            }
            let idn = SimplexMap::identity(n);
            if let Some(slots) = a.action.get(&(xs.clone(), idn)) {
                let all_id = (1..=n).all(|j| {
                    slots[j - 1] == base.id(hom_ob[&key2(&xs[j - 1], &xs[j])])
                });
                if slots.len() == n && !all_id {
                    violations.push(AlgebraViolation::IdentityActionFails { tuple: xs });
                }
            }
        }
    }
    if !violations.is_empty() {
        violations.sort_by_key(|v| format!("{v:?}"));
        violations.dedup();
        return AlgebraReport { violations };
    }

    // functoriality: acting by φ and then by ψ agrees with acting by φ∘ψ
    for n in 0..=cap {
        for xs in tuples(&a.objects, n + 1) {
            for m in 0..=cap {
                for phi in crate::simplex::enumerate_maps(m, n, usize::MAX).unwrap() {
                    let phi_slots = &a.action[&(xs.clone(), phi.clone())];
                    let reindexed: Vec<String> =
                        (0..=m).map(|i| xs[phi.value(i)].clone()).collect();
                    for l in 0..=cap {
                        for psi in crate::simplex::enumerate_maps(l, m, usize::MAX).unwrap() {
                            let psi_slots = &a.action[&(reindexed.clone(), psi.clone())];
                            let composite = psi.compose(&phi).expect("degrees match");
                            let both = &a.action[&(xs.clone(), composite.clone())];
                            for j in 1..=l {
                                let window: Vec<Mor> = (psi.value(j - 1) + 1
                                    ..=psi.value(j))
                                    .map(|i| phi_slots[i - 1])
                                    .collect();
                                let lhs = base
                                    .tensor_mor_list(&window)
                                    .and_then(|t| base.compose(&t, &psi_slots[j - 1]));
                                if lhs.ok() != Some(both[j - 1]) {
                                    violations.push(AlgebraViolation::FunctorialityFails {
                                        tuple: xs.clone(),
                                        phi: phi.clone(),
                                        psi: psi.clone(),
                                        slot: j,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    violations.sort_by_key(|v| format!("{v:?}"));
    violations.dedup();
    AlgebraReport { violations }
}

/// Rebuild the category from its algebra: hom objects from the degree-1
/// identities, composition from the active map `[1] → [2]`, units from
/// the unique map `[1] → [0]`.
pub fn enriched_of_algebra(a: &CatAlgebra) -> Result<EnrichedCategory, EnrichError> {
    if a.degree_cap < 2 {
        return Err(EnrichError::CapExceeded { requested: 2, cap: a.degree_cap });
    }
    let base = &*a.base;
    let mut hom_ob = BTreeMap::new();
    let id1 = SimplexMap::identity(1);
    for xs in tuples(&a.objects, 2) {
        let slots = a
            .action
            .get(&(xs.clone(), id1.clone()))
            .filter(|s| s.len() == 1)
            .ok_or_else(|| EnrichError::ShapeMismatch(format!("no entry for {xs:?}")))?;
        let m = slots[0];
        if m != base.id(m.src) {
            return Err(EnrichError::NotInertPreserving(format!(
                "identity action on {xs:?}"
            )));
        }
        hom_ob.insert(key2(&xs[0], &xs[1]), m.src);
    }
    let mut comp = BTreeMap::new();
    let alpha2 = SimplexMap::alpha(2);
    for xs in tuples(&a.objects, 3) {
        let slots = a
            .action
            .get(&(xs.clone(), alpha2.clone()))
            .filter(|s| s.len() == 1)
            .ok_or_else(|| EnrichError::ShapeMismatch(format!("no entry for {xs:?}")))?;
        comp.insert(key3(&xs[0], &xs[1], &xs[2]), slots[0]);
    }
    let mut unit = BTreeMap::new();
    let to_point = SimplexMap::alpha(0);
    for x in &a.objects {
        let slots = a
            .action
            .get(&(vec![x.clone()], to_point.clone()))
            .filter(|s| s.len() == 1)
            .ok_or_else(|| EnrichError::ShapeMismatch(format!("no entry for ({x},)")))?;
        unit.insert(x.clone(), slots[0]);
    }
    Ok(EnrichedCategory {
        base: a.base.clone(),
        objects: a.objects.clone(),
        hom_ob,
        comp,
        unit,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{finset_base, walking_arrow, z2_one_object};
    use super::super::{check_enriched, e_n};
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let base = finset_base();
        for c in [
            e_n(base.clone(), 1),
            walking_arrow(base.clone()),
            z2_one_object(base),
        ] {
            assert!(check_enriched(&c).is_valid());
            let a = algebra_of_enriched(&c, 3);
            let report = check_algebra(&a);
            assert!(report.is_valid(), "{:?}", report.violations);
            let back = enriched_of_algebra(&a).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn action_entry_counts() {
        let base = finset_base();
        let c = e_n(base, 0);
        let a = algebra_of_enriched(&c, 2);
        // single object: one tuple per degree; maps [m] → [n] for m, n ≤ 2
        let per_pair: usize = (0..=2)
            .map(|m| {
                (0..=2)
                    .map(|n| crate::simplex::enumerate_maps(m, n, usize::MAX).unwrap().len())
                    .sum::<usize>()
            })
            .sum();
        assert_eq!(a.action.len(), per_pair);
    }

    #[test]
    fn doctored_composition_breaks_functoriality() {
        let base = finset_base();
        let c = z2_one_object(base);
        let mut a = algebra_of_enriched(&c, 3);
        // overwrite the binary composition slot with the constant map at σ
        let alpha2 = SimplexMap::alpha(2);
        let xs = vec!["x".to_string(), "x".to_string(), "x".to_string()];
        a.action.insert(
            (xs, alpha2),
            vec![super::super::base::finset_mor(4, 2, &[1, 1, 1, 1])],
        );
        let report = check_algebra(&a);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AlgebraViolation::FunctorialityFails { .. })));
    }

    #[test]
    fn doctored_inert_slot_is_reported() {
        let base = finset_base();
        let c = z2_one_object(base);
        let mut a = algebra_of_enriched(&c, 2);
        // replace a singleton-window slot with the swap instead of the identity
        let rho = SimplexMap::rho(2, 1);
        let xs = vec!["x".to_string(), "x".to_string(), "x".to_string()];
        a.action.insert(
            (xs, rho),
            vec![super::super::base::finset_mor(2, 2, &[1, 0])],
        );
        let report = check_algebra(&a);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AlgebraViolation::NotInertPreserving { .. })));
    }

    #[test]
    fn reconstruction_needs_enough_degrees() {
        let base = finset_base();
        let c = e_n(base, 0);
        let a = algebra_of_enriched(&c, 1);
        assert!(matches!(
            enriched_of_algebra(&a),
            Err(EnrichError::CapExceeded { .. })
        ));
    }
}
