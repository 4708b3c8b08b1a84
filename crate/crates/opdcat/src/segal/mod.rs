//! Truncated simplicial sets and the checks built on them: nerves of
//! finite categories, the Segal condition, the groupoid-object condition,
//! the core `ι_•` of an enriched category as a simplicial set, completion
//! invariants (isomorphism classes and automorphism groups), and
//! completeness read off at the simplicial level.

pub mod presheaf;

use crate::enrich::base::finset_values;
use crate::enrich::{EnrichedCategory, EnrichError, IotaElement};
use crate::fincat::FinCat;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SegalError {
    #[error("dimension {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("the simplicial set does not satisfy the Segal condition")]
    NotSegal,
    #[error("the category is not enriched in finite sets: {0}")]
    NotSetEnriched(String),
    #[error(transparent)]
    Enrich(#[from] EnrichError),
}

/// A simplicial set truncated at `dim_cap`: finite levels of named
/// elements, with all face and degeneracy maps stored explicitly.
/// `faces[(n, i)]` is `d_i: X_n → X_{n-1}` and `degens[(n, i)]` is
/// `s_i: X_n → X_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSSet {
    pub dim_cap: usize,
    pub levels: Vec<Vec<String>>,
    pub faces: BTreeMap<(usize, usize), BTreeMap<String, String>>,
    pub degens: BTreeMap<(usize, usize), BTreeMap<String, String>>,
}

impl TruncatedSSet {
    pub fn level(&self, n: usize) -> &[String] {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize, elem: &str) -> &str {
        self.faces[&(n, i)]
            .get(elem)
            .unwrap_or_else(|| panic!("face d_{i} at level {n} undefined on {elem}"))
    }

    pub fn degen(&self, n: usize, i: usize, elem: &str) -> &str {
        self.degens[&(n, i)]
            .get(elem)
            .unwrap_or_else(|| panic!("degeneracy s_{i} at level {n} undefined on {elem}"))
    }

    /// Restrict an `n`-simplex to a subset of its vertices by applying
    /// face maps from the top vertex down. Returns the level of the
    /// result (one less than the number of kept vertices) and the element.
    pub fn restrict(&self, n: usize, elem: &str, keep: &[usize]) -> (usize, String) {
        let mut retained: Vec<usize> = (0..=n).collect();
        let mut level = n;
        let mut current = elem.to_string();
        for v in (0..=n).rev() {
            if keep.contains(&v) {
                continue;
            }
            let pos = retained.iter().position(|&u| u == v).unwrap();
            current = self.face(level, pos, &current).to_string();
            retained.remove(pos);
            level -= 1;
        }
        (level, current)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SSetViolation {
    LevelCountMismatch,
    MapMissing { map: String, n: usize, i: usize },
    MapNotTotal { map: String, n: usize, i: usize, element: String },
    FaceFaceFails { n: usize, i: usize, j: usize, element: String },
    DegenDegenFails { n: usize, i: usize, j: usize, element: String },
    FaceDegenFails { n: usize, i: usize, j: usize, element: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SSetReport {
    pub violations: Vec<SSetViolation>,
}

impl SSetReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check totality and all simplicial identities among the stored maps.
pub fn check_sset(x: &TruncatedSSet) -> SSetReport {
    let mut violations = Vec::new();
    let d = x.dim_cap;
    if x.levels.len() != d + 1 {
        return SSetReport { violations: vec![SSetViolation::LevelCountMismatch] };
    }
    let check_total = |map: &str, n: usize, i: usize, table: Option<&BTreeMap<String, String>>, dom: &[String], cod: &[String], violations: &mut Vec<SSetViolation>| {
        let Some(table) = table else {
            violations.push(SSetViolation::MapMissing { map: map.into(), n, i });
            return;
        };
        for e in dom {
            let ok = table.get(e).is_some_and(|v| cod.contains(v));
            if !ok {
                violations.push(SSetViolation::MapNotTotal {
                    map: map.into(),
                    n,
                    i,
                    element: e.clone(),
                });
            }
        }
    };
    for n in 1..=d {
        for i in 0..=n {
            check_total(
                "face",
                n,
                i,
                x.faces.get(&(n, i)),
                &x.levels[n],
                &x.levels[n - 1],
                &mut violations,
            );
        }
    }
    for n in 0..d {
        for i in 0..=n {
            check_total(
                "degen",
                n,
                i,
                x.degens.get(&(n, i)),
                &x.levels[n],
                &x.levels[n + 1],
                &mut violations,
            );
        }
    }
    if !violations.is_empty() {
        return SSetReport { violations };
    }

    // d_i d_j = d_{j-1} d_i for i < j (the left map applies d_j first)
    for n in 2..=d {
        for j in 1..=n {
            for i in 0..j {
                for e in &x.levels[n] {
                    let left = x.face(n - 1, i, x.face(n, j, e));
                    let right = x.face(n - 1, j - 1, x.face(n, i, e));
                    if left != right {
                        violations.push(SSetViolation::FaceFaceFails {
                            n,
                            i,
                            j,
                            element: e.clone(),
                        });
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i ≤ j
    for n in 0..d {
        if n + 2 > d {
            continue;
        }
        for j in 0..=n {
            for i in 0..=j {
                for e in &x.levels[n] {
                    let left = x.degen(n + 1, i, x.degen(n, j, e));
                    let right = x.degen(n + 1, j + 1, x.degen(n, i, e));
                    if left != right {
                        violations.push(SSetViolation::DegenDegenFails {
                            n,
                            i,
                            j,
                            element: e.clone(),
                        });
                    }
                }
            }
        }
    }
    // d_i s_j: below the diagonal shifts, on it collapses to the identity
    for n in 0..d {
        for j in 0..=n {
            for i in 0..=n + 1 {
                for e in &x.levels[n] {
                    let via = x.face(n + 1, i, x.degen(n, j, e));
                    let expected: String = if i == j || i == j + 1 {
                        e.clone()
                    } else if i < j {
                        x.degen(n - 1, j - 1, x.face(n, i, e)).to_string()
                    } else {
                        x.degen(n - 1, j, x.face(n, i - 1, e)).to_string()
                    };
                    if via != expected {
                        violations.push(SSetViolation::FaceDegenFails {
                            n,
                            i,
                            j,
                            element: e.clone(),
                        });
                    }
                }
            }
        }
    }
    SSetReport { violations }
}

// ---------------------------------------------------------------------------
// Nerve

fn chain_name(ms: &[String]) -> String {
    ms.join("|")
}

/// The nerve of a finite category, truncated at dimension `d`: level `n`
/// is the set of composable `n`-chains of morphisms (level 0 the
/// objects), inner faces compose adjacent morphisms, outer faces drop an
/// end, and degeneracies insert identities.
pub fn nerve(c: &FinCat, d: usize) -> Result<TruncatedSSet, SegalError> {
    if d > crate::caps::DIM {
        return Err(SegalError::CapExceeded { requested: d, cap: crate::caps::DIM });
    }
    let morphisms: Vec<String> = c.morphisms.keys().cloned().collect();
    let mut current: Vec<Vec<String>> = vec![Vec::new()];
    let mut levels: Vec<Vec<String>> = Vec::new();
    levels.push(c.objects.clone());
    for _ in 1..=d {
        let mut next = Vec::new();
        for chain in &current {
            for m in &morphisms {
                let composable = match chain.last() {
                    None => true,
                    Some(prev) => c.tgt(prev) == c.src(m),
                };
                if composable {
                    let mut ext = chain.clone();
                    ext.push(m.clone());
                    next.push(ext);
                }
            }
        }
        next.sort();
        levels.push(next.iter().map(|ms| chain_name(ms)).collect());
        current = next;
    }

    let parse = |name: &str| -> Vec<String> {
        name.split('|').map(|s| s.to_string()).collect()
    };
    let mut faces = BTreeMap::new();
    for n in 1..=d {
        for i in 0..=n {
            let mut table = BTreeMap::new();
            for e in &levels[n] {
                let ms = parse(e);
                let image = if n == 1 {
                    if i == 0 {
                        c.tgt(&ms[0]).to_string()
                    } else {
                        c.src(&ms[0]).to_string()
                    }
                } else if i == 0 {
                    chain_name(&ms[1..])
                } else if i == n {
                    chain_name(&ms[..n - 1])
                } else {
                    let mut out = ms[..i - 1].to_vec();
                    let glued = c
                        .comp(&ms[i - 1], &ms[i])
                        .expect("adjacent chain morphisms compose")
                        .to_string();
                    out.push(glued);
                    out.extend_from_slice(&ms[i + 1..]);
                    chain_name(&out)
                };
                table.insert(e.clone(), image);
            }
            faces.insert((n, i), table);
        }
    }
    let mut degens = BTreeMap::new();
    for n in 0..d {
        for i in 0..=n {
            let mut table = BTreeMap::new();
            for e in &levels[n] {
                let image = if n == 0 {
                    c.id(e).to_string()
                } else {
                    let ms = parse(e);
                    // the object at vertex i of the chain
                    let at = if i == 0 {
                        c.src(&ms[0]).to_string()
                    } else {
                        c.tgt(&ms[i - 1]).to_string()
                    };
                    let mut out = ms[..i].to_vec();
                    out.push(c.id(&at).to_string());
                    out.extend_from_slice(&ms[i..]);
                    chain_name(&out)
                };
                table.insert(e.clone(), image);
            }
            degens.insert((n, i), table);
        }
    }
    Ok(TruncatedSSet { dim_cap: d, levels, faces, degens })
}

// ---------------------------------------------------------------------------
// Segal and groupoid-object conditions

/// The spine of an `n`-simplex: its `n` consecutive edges.
fn spine(x: &TruncatedSSet, n: usize, elem: &str) -> Vec<String> {
    (1..=n)
        .map(|j| x.restrict(n, elem, &[j - 1, j]).1)
        .collect()
}

/// Does the simplicial set satisfy the Segal condition? For each
/// `2 ≤ n ≤ dim_cap` the spine map into the set of matching edge tuples
/// must be a bijection.
pub fn is_segal(x: &TruncatedSSet) -> bool {
    assert!(x.dim_cap >= 2, "the Segal condition needs dimension at least 2");
    for n in 2..=x.dim_cap {
        let mut images = std::collections::BTreeSet::new();
        for e in &x.levels[n] {
            if !images.insert(spine(x, n, e)) {
                return false; // not injective
            }
        }
        // all compatible tuples: consecutive edges share a vertex
        let mut tuples: Vec<Vec<String>> =
            x.levels[1].iter().map(|e| vec![e.clone()]).collect();
        for _ in 2..=n {
            let mut next = Vec::new();
            for t in &tuples {
                let glue = x.face(1, 0, t.last().unwrap()).to_string();
                for e in &x.levels[1] {
                    if x.face(1, 1, e) == glue {
                        let mut ext = t.clone();
                        ext.push(e.clone());
                        next.push(ext);
                    }
                }
            }
            tuples = next;
        }
        if images.len() != tuples.len() || !tuples.iter().all(|t| images.contains(t)) {
            return false;
        }
    }
    true
}

/// Does the simplicial set satisfy the groupoid-object condition? For
/// every `n ≤ dim_cap` and every decomposition of the vertex set
/// `{0, …, n}` into two subsets overlapping in exactly one vertex, the
/// restriction map into the fiber product must be a bijection. Subsets
/// range over arbitrary vertex sets, not just intervals; the non-interval
/// decompositions are the ones that force invertibility.
pub fn is_groupoid_object(x: &TruncatedSSet) -> bool {
    assert!(x.dim_cap >= 2, "the groupoid condition needs dimension at least 2");
    for n in 1..=x.dim_cap {
        // choose the shared vertex v, then distribute the rest
        for v in 0..=n {
            let others: Vec<usize> = (0..=n).filter(|&u| u != v).collect();
            for mask in 0u32..(1 << others.len()) {
                let mut s: Vec<usize> = vec![v];
                let mut s_prime: Vec<usize> = vec![v];
                for (b, &u) in others.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        s.push(u);
                    } else {
                        s_prime.push(u);
                    }
                }
                s.sort_unstable();
                s_prime.sort_unstable();
                let pos_s = s.iter().position(|&u| u == v).unwrap();
                let pos_sp = s_prime.iter().position(|&u| u == v).unwrap();
                let level_s = s.len() - 1;
                let level_sp = s_prime.len() - 1;

                let mut images = std::collections::BTreeSet::new();
                for e in &x.levels[n] {
                    let a = x.restrict(n, e, &s).1;
                    let b = x.restrict(n, e, &s_prime).1;
                    if !images.insert((a, b)) {
                        return false;
                    }
                }
                let mut expected = 0usize;
                for a in &x.levels[level_s] {
                    let va = x.restrict(level_s, a, &[pos_s]).1;
                    for b in &x.levels[level_sp] {
                        if x.restrict(level_sp, b, &[pos_sp]).1 == va {
                            expected += 1;
                            if !images.contains(&(a.clone(), b.clone())) {
                                return false;
                            }
                        }
                    }
                }
                if images.len() != expected {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// ι_• as a simplicial set

fn iota_elem_name(e: &IotaElement) -> String {
    let maps: Vec<String> = e
        .maps
        .iter()
        .map(|((i, j), m)| format!("{i},{j}:{}", m.code))
        .collect();
    format!("{};{}", e.objects.join(","), maps.join(";"))
}

/// The simplicial set `ι_• C`: level `n` enumerates the functors out of
/// the trivial category on `n + 1` objects, faces delete an index, and
/// degeneracies repeat one (inserting units on the new diagonal pairs).
pub fn iota_sset(c: &EnrichedCategory, d: usize) -> Result<TruncatedSSet, SegalError> {
    let mut level_elems: Vec<Vec<IotaElement>> = Vec::new();
    for n in 0..=d {
        level_elems.push(crate::enrich::iota(c, n)?);
    }
    let levels: Vec<Vec<String>> = level_elems
        .iter()
        .map(|es| es.iter().map(iota_elem_name).collect())
        .collect();
    let reindex = |e: &IotaElement, f: &dyn Fn(usize) -> usize, new_top: usize| -> IotaElement {
        let objects: Vec<String> = (0..=new_top).map(|j| e.objects[f(j)].clone()).collect();
        let mut maps = BTreeMap::new();
        for j in 0..=new_top {
            for k in 0..=new_top {
                if j == k {
                    continue;
                }
                let (a, b) = (f(j), f(k));
                let m = if a == b {
                    c.unit_mor(&e.objects[a])
                } else {
                    e.maps[&(a, b)]
                };
                maps.insert((j, k), m);
            }
        }
        IotaElement { objects, maps }
    };

    let mut faces = BTreeMap::new();
    for n in 1..=d {
        for i in 0..=n {
            let mut table = BTreeMap::new();
            for e in &level_elems[n] {
                // precompose with the inclusion skipping index i
                let delta = |j: usize| if j < i { j } else { j + 1 };
                let image = reindex(e, &delta, n - 1);
                table.insert(iota_elem_name(e), iota_elem_name(&image));
            }
            faces.insert((n, i), table);
        }
    }
    let mut degens = BTreeMap::new();
    for n in 0..d {
        for i in 0..=n {
            let mut table = BTreeMap::new();
            for e in &level_elems[n] {
                // precompose with the surjection repeating index i
                let sigma = |j: usize| if j <= i { j } else { j - 1 };
                let image = reindex(e, &sigma, n + 1);
                table.insert(iota_elem_name(e), iota_elem_name(&image));
            }
            degens.insert((n, i), table);
        }
    }
    Ok(TruncatedSSet { dim_cap: d, levels, faces, degens })
}

// ---------------------------------------------------------------------------
// Completion invariants

/// Isomorphism classes of objects with, per class representative, the
/// multiplication table of the group of self-equivalence elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidReport {
    pub iso_classes: Vec<Vec<String>>,
    pub aut_groups: BTreeMap<String, Vec<Vec<usize>>>,
}

/// An equivalence element from `from` to `to` obtained by composing
/// single steps along a breadth-first search, if the two objects are
/// connected by equivalences.
pub fn find_connecting_equivalence(
    c: &EnrichedCategory,
    from: &str,
    to: &str,
) -> Option<crate::enrich::base::Mor> {
    let base = &*c.base;
    let unit_ob = base.unit_ob();
    let mut reached: BTreeMap<String, crate::enrich::base::Mor> =
        BTreeMap::from([(from.to_string(), c.unit_mor(from))]);
    let mut frontier = vec![from.to_string()];
    while let Some(u) = frontier.pop() {
        let via = reached[&u];
        for v in &c.objects {
            if reached.contains_key(v) {
                continue;
            }
            let step = base
                .hom(unit_ob, c.hom(&u, v))
                .into_iter()
                .find(|a| crate::enrich::is_equivalence(c, &u, v, a));
            if let Some(a) = step {
                reached.insert(v.clone(), c.elem_compose(from, &u, v, &via, &a));
                frontier.push(v.clone());
            }
        }
    }
    reached.get(to).copied()
}

fn equivalence_elements(c: &EnrichedCategory, x: &str) -> Vec<crate::enrich::base::Mor> {
    let base = &*c.base;
    base.hom(base.unit_ob(), c.hom(x, x))
        .into_iter()
        .filter(|a| crate::enrich::is_equivalence(c, x, x, a))
        .collect()
}

/// Compute π₀ of the core (objects up to equivalence) and the
/// automorphism group of each class representative.
pub fn core_invariants(c: &EnrichedCategory) -> GroupoidReport {
    let mut unassigned: Vec<String> = c.objects.clone();
    let mut iso_classes: Vec<Vec<String>> = Vec::new();
    while let Some(seed) = unassigned.first().cloned() {
        let class: Vec<String> = unassigned
            .iter()
            .filter(|y| find_connecting_equivalence(c, &seed, y).is_some())
            .cloned()
            .collect();
        unassigned.retain(|y| !class.contains(y));
        iso_classes.push(class);
    }
    iso_classes.sort();
    let mut aut_groups = BTreeMap::new();
    for class in &iso_classes {
        let rep = &class[0];
        let elems = equivalence_elements(c, rep);
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let ab = c.elem_compose(rep, rep, rep, a, b);
                        elems
                            .iter()
                            .position(|e| *e == ab)
                            .expect("equivalences are closed under composition")
                    })
                    .collect()
            })
            .collect();
        aut_groups.insert(rep.clone(), table);
    }
    GroupoidReport { iso_classes, aut_groups }
}

/// Does the functor induce an equivalence of cores? True when it gives a
/// bijection on isomorphism classes and, conjugated through a connecting
/// equivalence, a group isomorphism on each representative's
/// automorphisms.
pub fn iota_equivalent(f: &crate::enrich::VFunctor) -> bool {
    let src = core_invariants(&f.source);
    let tgt = core_invariants(&f.target);
    let target_class_of = |o: &str| -> usize {
        tgt.iso_classes
            .iter()
            .position(|cl| cl.contains(&o.to_string()))
            .expect("functor images are objects of the target")
    };
    // bijection on classes
    let mut hit: Vec<usize> = src
        .iso_classes
        .iter()
        .map(|cl| target_class_of(f.ob(&cl[0])))
        .collect();
    hit.sort_unstable();
    hit.dedup();
    if hit.len() != src.iso_classes.len() || hit.len() != tgt.iso_classes.len() {
        return false;
    }
    // group isomorphism per representative
    let d = &f.target;
    let base = &*d.base;
    for class in &src.iso_classes {
        let x = &class[0];
        let fx = f.ob(x);
        let y = tgt.iso_classes[target_class_of(fx)][0].clone();
        let Some(e) = find_connecting_equivalence(d, &y, fx) else {
            return false;
        };
        let Some(e_inv) = crate::enrich::find_equivalence_inverse(d, &y, fx, &e) else {
            return false;
        };
        let src_elems = equivalence_elements(&f.source, x);
        let tgt_elems = equivalence_elements(d, &y);
        let transport = |a: &crate::enrich::base::Mor| -> Option<usize> {
            let fa = base.compose(a, &f.mor(x, x)).ok()?;
            let step = d.elem_compose(&y, fx, fx, &e, &fa);
            let conj = d.elem_compose(&y, fx, &y, &step, &e_inv);
            tgt_elems.iter().position(|t| *t == conj)
        };
        let images: Vec<Option<usize>> = src_elems.iter().map(&transport).collect();
        if images.iter().any(|i| i.is_none()) {
            return false;
        }
        let images: Vec<usize> = images.into_iter().map(Option::unwrap).collect();
        let mut seen = images.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != src_elems.len() || src_elems.len() != tgt_elems.len() {
            return false;
        }
        // homomorphism: transport of a·b equals transport a · transport b
        for (i, a) in src_elems.iter().enumerate() {
            for (j, b) in src_elems.iter().enumerate() {
                let ab = f.source.elem_compose(x, x, x, a, b);
                let k = src_elems.iter().position(|e2| *e2 == ab).unwrap();
                let lhs = images[k];
                let rhs_elem = d.elem_compose(
                    &y,
                    &y,
                    &y,
                    &tgt_elems[images[i]],
                    &tgt_elems[images[j]],
                );
                let rhs = tgt_elems.iter().position(|t| *t == rhs_elem).unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Completeness at the simplicial level

/// Is the Segal set complete? The sub-simplicial set of simplices all of
/// whose edges are invertible (in the homotopy category read off through
/// unique Segal fillers) must be constant: every such simplex is an
/// iterated degeneracy of a vertex.
pub fn is_complete_segal(x: &TruncatedSSet) -> Result<bool, SegalError> {
    if !is_segal(x) {
        return Err(SegalError::NotSegal);
    }
    // composition of edges via the unique 2-simplex with the given spine
    let mut comp: BTreeMap<(String, String), String> = BTreeMap::new();
    for t in &x.levels[2] {
        let e = x.restrict(2, t, &[0, 1]).1;
        let f = x.restrict(2, t, &[1, 2]).1;
        let g = x.restrict(2, t, &[0, 2]).1;
        comp.insert((e, f), g);
    }
    let degenerate_at = |v: &str| -> String { x.degen(0, 0, v).to_string() };
    let invertible = |e: &str| -> bool {
        let src = x.face(1, 1, e).to_string();
        let tgt = x.face(1, 0, e).to_string();
        x.levels[1].iter().any(|f| {
            x.face(1, 1, f) == tgt
                && x.face(1, 0, f) == src
                && comp.get(&(e.to_string(), f.to_string())) == Some(&degenerate_at(&src))
                && comp.get(&(f.to_string(), e.to_string())) == Some(&degenerate_at(&tgt))
        })
    };
    let mut invertible_edges = std::collections::BTreeSet::new();
    for e in &x.levels[1] {
        if invertible(e) {
            invertible_edges.insert(e.clone());
        }
    }
    for n in 1..=x.dim_cap {
        // simplices all of whose edges are invertible
        let core_level: Vec<&String> = x.levels[n]
            .iter()
            .filter(|e| {
                (0..n).all(|i| {
                    (i + 1..=n).all(|j| {
                        invertible_edges.contains(&x.restrict(n, e, &[i, j]).1)
                    })
                })
            })
            .collect();
        let mut expected = std::collections::BTreeSet::new();
        for v in &x.levels[0] {
            let mut e = v.clone();
            for k in 0..n {
                e = x.degen(k, 0, &e).to_string();
            }
            expected.insert(e);
        }
        if core_level.len() != expected.len()
            || !core_level.iter().all(|e| expected.contains(*e))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Present a category enriched in finite sets as an ordinary finite
/// category, with hom elements as named morphisms.
pub fn fincat_of_enriched(c: &EnrichedCategory) -> Result<FinCat, SegalError> {
    if !matches!(&*c.base, crate::enrich::base::Base::FinSet { .. }) {
        return Err(SegalError::NotSetEnriched(c.base.name()));
    }
    let name = |x: &str, y: &str, k: usize| format!("{x}>{y}#{k}");
    let mut morphisms = BTreeMap::new();
    let mut identities = BTreeMap::new();
    for x in &c.objects {
        let unit_values = finset_values(&c.unit_mor(x));
        identities.insert(x.clone(), name(x, x, unit_values[0]));
        for y in &c.objects {
            for k in 0..c.hom(x, y) {
                morphisms.insert(name(x, y, k), (x.clone(), y.clone()));
            }
        }
    }
    let mut compose = BTreeMap::new();
    for x in &c.objects {
        for y in &c.objects {
            for z in &c.objects {
                let table = finset_values(&c.comp_mor(x, y, z));
                let h_yz = c.hom(y, z);
                for k1 in 0..c.hom(x, y) {
                    for k2 in 0..h_yz {
                        compose.insert(
                            (name(x, y, k1), name(y, z, k2)),
                            name(x, z, table[k1 * h_yz + k2]),
                        );
                    }
                }
            }
        }
    }
    Ok(FinCat { objects: c.objects.clone(), morphisms, identities, compose })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::base::base_finset;
    use crate::enrich::{e_n, is_complete, is_gaunt};
    use crate::fincat::{
        chaotic_cat, check_fincat, cyclic_group_cat, terminal_cat, walking_arrow_cat,
    };
    use std::sync::Arc;

    fn finset_base() -> Arc<crate::enrich::base::Base> {
        Arc::new(base_finset(8))
    }

    /// The walking arrow enriched in finite sets (matches the fincat
    /// version under `fincat_of_enriched` up to morphism naming).
    fn arrow_enriched() -> EnrichedCategory {
        let base = finset_base();
        let objects = vec!["0".to_string(), "1".to_string()];
        let mut hom_ob = BTreeMap::new();
        let mut comp = BTreeMap::new();
        let mut unit = BTreeMap::new();
        for x in &objects {
            unit.insert(x.clone(), crate::enrich::base::Mor::new(1, 1, 0));
            for y in &objects {
                let h = usize::from(x <= y);
                hom_ob.insert((x.clone(), y.clone()), h);
            }
        }
        for x in &objects {
            for y in &objects {
                for z in &objects {
                    let src_a = hom_ob[&(x.clone(), y.clone())];
                    let src_b = hom_ob[&(y.clone(), z.clone())];
                    let tgt = hom_ob[&(x.clone(), z.clone())];
                    comp.insert(
                        (x.clone(), y.clone(), z.clone()),
                        crate::enrich::base::Mor::new(src_a * src_b, tgt, 0),
                    );
                }
            }
        }
        EnrichedCategory { base, objects, hom_ob, comp, unit }
    }

    fn z2_enriched() -> EnrichedCategory {
        let base = finset_base();
        EnrichedCategory {
            base,
            objects: vec!["x".to_string()],
            hom_ob: BTreeMap::from([(("x".to_string(), "x".to_string()), 2)]),
            comp: BTreeMap::from([(
                ("x".to_string(), "x".to_string(), "x".to_string()),
                crate::enrich::base::finset_mor(4, 2, &[0, 1, 1, 0]),
            )]),
            unit: BTreeMap::from([(
                "x".to_string(),
                crate::enrich::base::finset_mor(1, 2, &[0]),
            )]),
        }
    }

    #[test]
    fn nerve_levels_and_validity() {
        let t = nerve(&terminal_cat(), 3).unwrap();
        assert!(t.levels.iter().all(|l| l.len() == 1));
        assert!(check_sset(&t).is_valid());

        let a = nerve(&walking_arrow_cat(), 3).unwrap();
        assert_eq!(a.levels[1].len(), 3);
        let report = check_sset(&a);
        assert!(report.is_valid(), "{:?}", report.violations);

        let ch = nerve(&chaotic_cat(&["a", "b", "c"]), 3).unwrap();
        assert!(check_sset(&ch).is_valid());
        // nondegenerate chains avoid identities: 3·2^n of them
        for n in 1..=3usize {
            let nondegen = ch.levels[n]
                .iter()
                .filter(|e| !e.split('|').any(|m| m.starts_with("a>a") || m.starts_with("b>b") || m.starts_with("c>c")))
                .count();
            assert_eq!(nondegen, 3 * (1 << n));
        }
        assert!(nerve(&terminal_cat(), crate::caps::DIM + 1).is_err());
    }

    #[test]
    fn nerves_are_segal_and_deletion_breaks_it() {
        for c in [
            terminal_cat(),
            walking_arrow_cat(),
            chaotic_cat(&["a", "b"]),
            cyclic_group_cat(3),
        ] {
            let x = nerve(&c, 3).unwrap();
            assert!(is_segal(&x));
        }
        let mut x = nerve(&walking_arrow_cat(), 3).unwrap();
        let victim = x.levels[2][0].clone();
        x.levels[2].retain(|e| *e != victim);
        assert!(!is_segal(&x));
    }

    #[test]
    fn groupoid_condition_matches_invertibility() {
        for (c, expect) in [
            (terminal_cat(), true),
            (walking_arrow_cat(), false),
            (chaotic_cat(&["a", "b"]), true),
            (cyclic_group_cat(2), true),
            (cyclic_group_cat(3), true),
        ] {
            assert!(check_fincat(&c).is_valid());
            let x = nerve(&c, 3).unwrap();
            assert_eq!(is_groupoid_object(&x), expect);
            assert_eq!(c.is_groupoid(), expect);
        }
    }

    #[test]
    fn iota_sset_levels_and_conditions() {
        let base = finset_base();
        let e1 = e_n(base.clone(), 1);
        let x = iota_sset(&e1, 3).unwrap();
        assert_eq!(
            x.levels.iter().map(|l| l.len()).collect::<Vec<_>>(),
            vec![2, 4, 8, 16]
        );
        let report = check_sset(&x);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(is_segal(&x));
        assert!(is_groupoid_object(&x));

        let arrow = arrow_enriched();
        let xa = iota_sset(&arrow, 3).unwrap();
        assert_eq!(
            xa.levels.iter().map(|l| l.len()).collect::<Vec<_>>(),
            vec![2, 2, 2, 2]
        );
        assert!(check_sset(&xa).is_valid());
        assert!(is_segal(&xa));
        assert!(is_groupoid_object(&xa));

        let z2 = z2_enriched();
        let xz = iota_sset(&z2, 3).unwrap();
        assert_eq!(xz.levels[0].len(), 1);
        assert_eq!(xz.levels[1].len(), 2);
        assert!(check_sset(&xz).is_valid());
        assert!(is_segal(&xz));
        assert!(is_groupoid_object(&xz));
    }

    #[test]
    fn core_invariants_examples() {
        let base = finset_base();
        let e1 = e_n(base.clone(), 1);
        let r = core_invariants(&e1);
        assert_eq!(r.iso_classes, vec![vec!["0".to_string(), "1".to_string()]]);
        assert_eq!(r.aut_groups[&"0".to_string()], vec![vec![0]]);

        let z2 = z2_enriched();
        let rz = core_invariants(&z2);
        assert_eq!(rz.iso_classes.len(), 1);
        assert_eq!(rz.aut_groups[&"x".to_string()], vec![vec![0, 1], vec![1, 0]]);

        let arrow = arrow_enriched();
        let ra = core_invariants(&arrow);
        assert_eq!(ra.iso_classes.len(), 2);
        assert!(ra.aut_groups.values().all(|t| t.len() == 1));
    }

    #[test]
    fn iota_equivalence_of_functors() {
        let base = finset_base();
        let e1 = e_n(base.clone(), 1);
        let e0 = e_n(base.clone(), 0);
        let id_unit = base.id(base.unit_ob());
        let collapse = crate::enrich::VFunctor {
            source: e1.clone(),
            target: e0.clone(),
            ob_map: e1.objects.iter().map(|x| (x.clone(), "0".to_string())).collect(),
            mor_map: e1
                .objects
                .iter()
                .flat_map(|x| {
                    e1.objects
                        .iter()
                        .map(move |y| ((x.clone(), y.clone()), id_unit))
                })
                .collect(),
        };
        assert!(crate::enrich::check_vfunctor(&collapse).is_valid());
        assert!(iota_equivalent(&collapse));
        assert!(iota_equivalent(&crate::enrich::identity_vfunctor(&e1)));
    }

    #[test]
    fn completeness_at_the_simplicial_level() {
        // gaunt: the walking arrow
        let xa = nerve(&walking_arrow_cat(), 3).unwrap();
        assert_eq!(is_complete_segal(&xa), Ok(true));
        // the chaotic pair has a non-identity invertible edge
        let xc = nerve(&chaotic_cat(&["a", "b"]), 3).unwrap();
        assert_eq!(is_complete_segal(&xc), Ok(false));
        let xt = nerve(&terminal_cat(), 3).unwrap();
        assert_eq!(is_complete_segal(&xt), Ok(true));
        // a non-Segal input is rejected
        let mut broken = nerve(&walking_arrow_cat(), 3).unwrap();
        let victim = broken.levels[2][0].clone();
        broken.levels[2].retain(|e| *e != victim);
        assert_eq!(is_complete_segal(&broken), Err(SegalError::NotSegal));
    }

    #[test]
    fn three_way_completeness_agreement() {
        let base = finset_base();
        for c in [
            e_n(base.clone(), 0),
            e_n(base.clone(), 1),
            arrow_enriched(),
            z2_enriched(),
        ] {
            let fc = fincat_of_enriched(&c).unwrap();
            let report = check_fincat(&fc);
            assert!(report.is_valid(), "{:?}", report.violations);
            let x = nerve(&fc, 3).unwrap();
            let simplicial = is_complete_segal(&x).unwrap();
            assert_eq!(is_complete(&c), simplicial);
            assert_eq!(is_gaunt(&c), simplicial);
        }
    }

    #[test]
    fn non_finset_bases_cannot_become_ordinary_categories() {
        let base = Arc::new(crate::enrich::base::base_boolean());
        let c = crate::enrich::trivial_category(base, &["p"]);
        assert!(matches!(
            fincat_of_enriched(&c),
            Err(SegalError::NotSetEnriched(_))
        ));
    }
}
