//! Free enriched categories on a base-valued graph, and the universal
//! property relating them to the forgetful passage from categories to
//! graphs.
//!
//! A graph assigns a base object to some ordered pairs of vertices; a
//! missing pair means "no edge" and contributes no paths. The free
//! category has hom objects the designated coproducts, over all directed
//! paths, of the tensors of edge objects along the path; composition
//! concatenates paths through the distributivity isomorphism, and units
//! are the injections of the length-zero paths. This is finite exactly
//! when the edge support is acyclic.

use super::base::{Coproduct, Mor};
use super::{
    check_vfunctor, fold_comp, key2, key3, EnrichError, EnrichedCategory, VFunctor,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A graph with base-object edge labels. Pairs absent from `edge_ob` have
/// no edge at all (not even an empty-object one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VGraph {
    pub base: Arc<super::base::Base>,
    pub vertices: Vec<String>,
    pub edge_ob: BTreeMap<(String, String), usize>,
}

/// The bookkeeping that exhibits each free hom object as a designated
/// coproduct over paths. Paths are recorded as vertex chains (so a path of
/// length `k` is a chain of `k + 1` vertices) and are ordered by length,
/// then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeStructure {
    pub paths: BTreeMap<(String, String), Vec<Vec<String>>>,
    pub coproducts: BTreeMap<(String, String), Coproduct>,
}

/// The graph underlying a category: every ordered pair becomes an edge
/// labelled by its hom object.
pub fn underlying_graph(d: &EnrichedCategory) -> VGraph {
    let mut edge_ob = BTreeMap::new();
    for x in &d.objects {
        for y in &d.objects {
            edge_ob.insert(key2(x, y), d.hom(x, y));
        }
    }
    VGraph { base: d.base.clone(), vertices: d.objects.clone(), edge_ob }
}

fn find_cycle_vertex(g: &VGraph) -> Option<String> {
    // 0 = unvisited, 1 = on the current stack, 2 = done
    let mut state: BTreeMap<&str, u8> = g.vertices.iter().map(|v| (v.as_str(), 0)).collect();
    let succ = |v: &str| -> Vec<&str> {
        g.edge_ob
            .keys()
            .filter(|(a, _)| a == v)
            .map(|(_, b)| b.as_str())
            .collect()
    };
    fn visit<'a>(
        v: &'a str,
        succ: &dyn Fn(&str) -> Vec<&'a str>,
        state: &mut BTreeMap<&'a str, u8>,
    ) -> Option<String> {
        state.insert(v, 1);
        for w in succ(v) {
            match state.get(w) {
                Some(1) => return Some(w.to_string()),
                Some(0) => {
                    if let Some(c) = visit(w, succ, state) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        state.insert(v, 2);
        None
    }
    for v in &g.vertices {
        if state[v.as_str()] == 0 {
            if let Some(c) = visit(v, &succ, &mut state) {
                return Some(c);
            }
        }
    }
    None
}

fn paths_between(g: &VGraph, from: &str, to: &str) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![from.to_string()]];
    while let Some(chain) = stack.pop() {
        let last = chain.last().unwrap().clone();
        if last == to {
            out.push(chain.clone());
            // an acyclic graph cannot revisit `to`, but keep exploring in
            // case `from == to` is the start (no outgoing path returns)
            if from == to {
                continue;
            }
        }
        for (a, b) in g.edge_ob.keys() {
            if *a == last {
                let mut ext = chain.clone();
                ext.push(b.clone());
                stack.push(ext);
            }
        }
    }
    out.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    out
}

fn path_tensor(g: &VGraph, chain: &[String]) -> Result<usize, EnrichError> {
    let edges: Vec<usize> = chain
        .windows(2)
        .map(|w| g.edge_ob[&key2(&w[0], &w[1])])
        .collect();
    Ok(g.base.tensor_ob_list(&edges)?)
}

/// Build the free category on a graph, together with the path/coproduct
/// structure that witnesses it. Fails with `NonPathFinite` when the edge
/// support has a directed cycle, and propagates base errors when a needed
/// coproduct is not available (for example over a monoid base with no
/// initial object).
pub fn free_enriched(g: &VGraph) -> Result<(EnrichedCategory, FreeStructure), EnrichError> {
    for (a, b) in g.edge_ob.keys() {
        if !g.vertices.contains(a) || !g.vertices.contains(b) {
            return Err(EnrichError::UnknownObject(format!("{a}→{b}")));
        }
    }
    if let Some(v) = find_cycle_vertex(g) {
        return Err(EnrichError::NonPathFinite(v));
    }
    let base = &*g.base;
    let mut paths = BTreeMap::new();
    let mut coproducts = BTreeMap::new();
    let mut hom_ob = BTreeMap::new();
    let mut unit = BTreeMap::new();
    for x in &g.vertices {
        for y in &g.vertices {
            let ps = paths_between(g, x, y);
            let summands = ps
                .iter()
                .map(|p| path_tensor(g, p))
                .collect::<Result<Vec<_>, _>>()?;
            let cop = base.coproduct(&summands)?;
            hom_ob.insert(key2(x, y), cop.target);
            if x == y {
                // the trivial path sorts first; its injection is the unit
                debug_assert_eq!(ps[0], vec![x.clone()]);
                unit.insert(x.clone(), cop.injections[0]);
            }
            paths.insert(key2(x, y), ps);
            coproducts.insert(key2(x, y), cop);
        }
    }

    let mut comp = BTreeMap::new();
    for x in &g.vertices {
        for y in &g.vertices {
            for z in &g.vertices {
                let pa = &paths[&key2(x, y)];
                let pb = &paths[&key2(y, z)];
                let pc = &paths[&key2(x, z)];
                let cop_a = &coproducts[&key2(x, y)];
                let cop_b = &coproducts[&key2(y, z)];
                let cop_c = &coproducts[&key2(x, z)];
                let tensor_xy_yz = base.tensor_ob(cop_a.target, cop_b.target)?;
                // the distributivity comparison ∐_{p,q} A_p⊗B_q → X ⊗ Y,
                // with pairs ordered to match the row-major tensor pairing
                let mut summands = Vec::new();
                let mut kappa_legs = Vec::new();
                let mut concat_legs = Vec::new();
                for (p, chain_a) in pa.iter().enumerate() {
                    for (q, chain_b) in pb.iter().enumerate() {
                        let s = base.tensor_ob(cop_a.summands[p], cop_b.summands[q])?;
                        summands.push(s);
                        kappa_legs
                            .push(base.tensor_mor(&cop_a.injections[p], &cop_b.injections[q])?);
                        let mut joined = chain_a.clone();
                        joined.extend_from_slice(&chain_b[1..]);
                        let r = pc
                            .iter()
                            .position(|c| *c == joined)
                            .expect("concatenated path must be a path");
                        let leg = cop_c.injections[r];
                        if leg.src != s {
                            return Err(EnrichError::ShapeMismatch(format!(
                                "path tensor for {joined:?} is not strictly associative"
                            )));
                        }
                        concat_legs.push(leg);
                    }
                }
                let cop_all = base.coproduct(&summands)?;
                let kappa = base.copair(&cop_all, &kappa_legs, tensor_xy_yz)?;
                let kappa_inv = base.find_inverse(&kappa).ok_or_else(|| {
                    EnrichError::ShapeMismatch(
                        "tensoring does not distribute over the path coproduct".into(),
                    )
                })?;
                let glue = base.copair(&cop_all, &concat_legs, cop_c.target)?;
                comp.insert(key3(x, y, z), base.compose(&kappa_inv, &glue)?);
            }
        }
    }

    let cat = EnrichedCategory {
        base: g.base.clone(),
        objects: g.vertices.clone(),
        hom_ob,
        comp,
        unit,
    };
    Ok((cat, FreeStructure { paths, coproducts }))
}

// ---------------------------------------------------------------------------
// The universal property

/// A map of graphs into the graph underlying a category: vertices to
/// objects, and each edge object to a base morphism into the matching hom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphMap {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<(String, String), Mor>,
}

/// Enumerate all graph maps from `g` into the graph underlying `d`.
pub fn graph_maps(g: &VGraph, d: &EnrichedCategory) -> Vec<GraphMap> {
    let base = &*g.base;
    let mut vertex_maps: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
    for v in &g.vertices {
        let mut next = Vec::new();
        for partial in &vertex_maps {
            for o in &d.objects {
                let mut ext = partial.clone();
                ext.insert(v.clone(), o.clone());
                next.push(ext);
            }
        }
        vertex_maps = next;
    }
    let mut out = Vec::new();
    for vm in vertex_maps {
        let mut assignments: Vec<BTreeMap<(String, String), Mor>> = vec![BTreeMap::new()];
        for ((a, b), &e) in &g.edge_ob {
            let candidates = base.hom(e, d.hom(&vm[a], &vm[b]));
            let mut next = Vec::new();
            for partial in &assignments {
                for m in &candidates {
                    let mut ext = partial.clone();
                    ext.insert(key2(a, b), *m);
                    next.push(ext);
                }
            }
            assignments = next;
        }
        for em in assignments {
            out.push(GraphMap { vertex_map: vm.clone(), edge_map: em });
        }
    }
    out
}

/// Extend a graph map to a functor out of the free category: on each hom
/// coproduct, the path `u_0 → … → u_k` is sent to the tensor of its edge
/// images followed by iterated composition in the target (the empty path
/// goes to the unit).
pub fn functor_from_graph_map(
    free_cat: &EnrichedCategory,
    fs: &FreeStructure,
    gm: &GraphMap,
    d: &EnrichedCategory,
) -> Result<VFunctor, EnrichError> {
    let base = &*d.base;
    let mut mor_map = BTreeMap::new();
    for x in &free_cat.objects {
        for y in &free_cat.objects {
            let cop = &fs.coproducts[&key2(x, y)];
            let target = d.hom(&gm.vertex_map[x], &gm.vertex_map[y]);
            let mut legs = Vec::new();
            for chain in &fs.paths[&key2(x, y)] {
                if chain.len() == 1 {
                    legs.push(d.unit_mor(&gm.vertex_map[x]));
                    continue;
                }
                let edge_images: Vec<Mor> = chain
                    .windows(2)
                    .map(|w| gm.edge_map[&key2(&w[0], &w[1])])
                    .collect();
                let tensored = base.tensor_mor_list(&edge_images)?;
                let image_chain: Vec<String> =
                    chain.iter().map(|v| gm.vertex_map[v].clone()).collect();
                legs.push(base.compose(&tensored, &fold_comp(d, &image_chain))?);
            }
            mor_map.insert(key2(x, y), base.copair(cop, &legs, target)?);
        }
    }
    Ok(VFunctor {
        source: free_cat.clone(),
        target: d.clone(),
        ob_map: gm.vertex_map.clone(),
        mor_map,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct UniversalPropertyReport {
    pub graph_map_count: usize,
    pub functor_count: usize,
    pub mismatches: Vec<String>,
}

impl UniversalPropertyReport {
    pub fn is_bijective(&self) -> bool {
        self.mismatches.is_empty() && self.graph_map_count == self.functor_count
    }
}

/// Enumerate every functor `src → d` by exhausting object maps and hom
/// components, pruning with the unit and composition constraints as soon
/// as they become checkable. The total candidate count per object map is
/// bounded by `budget`.
fn all_vfunctors_into(
    src: &EnrichedCategory,
    d: &EnrichedCategory,
    budget: u64,
) -> Result<Vec<VFunctor>, EnrichError> {
    let base = &*src.base;
    let mut out = Vec::new();
    let mut ob_maps: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
    for x in &src.objects {
        let mut next = Vec::new();
        for partial in &ob_maps {
            for o in &d.objects {
                let mut ext = partial.clone();
                ext.insert(x.clone(), o.clone());
                next.push(ext);
            }
        }
        ob_maps = next;
    }
    let pairs: Vec<(String, String)> = src
        .objects
        .iter()
        .flat_map(|x| src.objects.iter().map(move |y| key2(x, y)))
        .collect();
    // triples become checkable once the last of their three pairs is set
    let pair_index: BTreeMap<&(String, String), usize> =
        pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut ready_at: Vec<Vec<(String, String, String)>> = vec![Vec::new(); pairs.len()];
    for a in &src.objects {
        for b in &src.objects {
            for c in &src.objects {
                let last = *[key2(a, b), key2(b, c), key2(a, c)]
                    .iter()
                    .map(|p| &pair_index[p])
                    .max()
                    .unwrap();
                ready_at[last].push(key3(a, b, c));
            }
        }
    }

    for ob_map in ob_maps {
        let candidates: Vec<Vec<Mor>> = pairs
            .iter()
            .map(|(x, y)| base.hom(src.hom(x, y), d.hom(&ob_map[x], &ob_map[y])))
            .collect();
        let mut size: u64 = 1;
        for c in &candidates {
            size = size.saturating_mul(c.len() as u64);
        }
        if size > budget {
            return Err(EnrichError::CapExceeded {
                requested: size as usize,
                cap: budget as usize,
            });
        }

        let mut assigned: Vec<Mor> = Vec::new();
        let mut stack: Vec<usize> = vec![0];
        while let Some(next_choice) = stack.pop() {
            let depth = assigned.len();
            if depth == pairs.len() {
                let mor_map: BTreeMap<(String, String), Mor> = pairs
                    .iter()
                    .cloned()
                    .zip(assigned.iter().copied())
                    .collect();
                out.push(VFunctor {
                    source: src.clone(),
                    target: d.clone(),
                    ob_map: ob_map.clone(),
                    mor_map,
                });
                assigned.pop();
                continue;
            }
            if next_choice >= candidates[depth].len() {
                if depth > 0 {
                    assigned.pop();
                }
                continue;
            }
            stack.push(next_choice + 1);
            let m = candidates[depth][next_choice];
            assigned.push(m);
            let mut ok = true;
            let (x, y) = &pairs[depth];
            if x == y {
                let lhs = base.compose(&src.unit_mor(x), &m).ok();
                if lhs != Some(d.unit_mor(&ob_map[x])) {
                    ok = false;
                }
            }
            if ok {
                let get = |p: &(String, String)| assigned[pair_index[p]];
                for (a, b, c) in &ready_at[depth] {
                    let m_ab = get(&key2(a, b));
                    let m_bc = get(&key2(b, c));
                    let m_ac = get(&key2(a, c));
                    let lhs = base.compose(&src.comp_mor(a, b, c), &m_ac).ok();
                    let rhs = base
                        .tensor_mor(&m_ab, &m_bc)
                        .and_then(|t| {
                            base.compose(
                                &t,
                                &d.comp_mor(&ob_map[a], &ob_map[b], &ob_map[c]),
                            )
                        })
                        .ok();
                    if lhs != rhs || lhs.is_none() {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                stack.push(0);
            } else {
                assigned.pop();
            }
        }
    }
    Ok(out)
}

/// Verify that extension along the free category is a bijection between
/// graph maps `g → U(d)` and functors `Free(g) → d`: every graph map
/// extends to a valid functor restricting back to it, distinct graph maps
/// extend to distinct functors, and every functor arises this way.
pub fn check_free_universal_property(
    g: &VGraph,
    d: &EnrichedCategory,
    budget: u64,
) -> Result<UniversalPropertyReport, EnrichError> {
    let (free_cat, fs) = free_enriched(g)?;
    let base = &*g.base;
    let gms = graph_maps(g, d);
    let mut mismatches = Vec::new();
    let mut extended: Vec<(BTreeMap<String, String>, BTreeMap<(String, String), Mor>)> =
        Vec::new();
    for gm in &gms {
        let f = functor_from_graph_map(&free_cat, &fs, gm, d)?;
        if !check_vfunctor(&f).is_valid() {
            mismatches.push(format!(
                "extension of a graph map with vertices {:?} is not a functor",
                gm.vertex_map
            ));
        }
        // restricting along single-edge paths must recover the graph map
        for ((a, b), &e_mor) in &gm.edge_map {
            let single = vec![a.clone(), b.clone()];
            let r = fs.paths[&key2(a, b)]
                .iter()
                .position(|p| *p == single)
                .expect("single edges are paths");
            let inj = fs.coproducts[&key2(a, b)].injections[r];
            let restricted = base.compose(&inj, &f.mor(a, b))?;
            if restricted != e_mor {
                mismatches.push(format!(
                    "restriction along the edge {a}→{b} does not recover the graph map"
                ));
            }
        }
        let datum = (f.ob_map, f.mor_map);
        if extended.contains(&datum) {
            mismatches.push("two graph maps extend to the same functor".into());
        }
        extended.push(datum);
    }

    let functors: Vec<VFunctor> = all_vfunctors_into(&free_cat, d, budget)?
        .into_iter()
        .filter(|f| check_vfunctor(f).is_valid())
        .collect();
    for f in &functors {
        let datum = (f.ob_map.clone(), f.mor_map.clone());
        if !extended.contains(&datum) {
            mismatches.push(format!(
                "a functor with object map {:?} does not extend any graph map",
                f.ob_map
            ));
        }
    }
    Ok(UniversalPropertyReport {
        graph_map_count: gms.len(),
        functor_count: functors.len(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::super::base::{base_boolean, base_finset, base_monoid};
    use super::super::tests::{finset_base, walking_arrow, z2_one_object};
    use super::super::{check_enriched, trivial_category};
    use super::*;

    fn graph(
        base: Arc<super::super::base::Base>,
        vertices: &[&str],
        edges: &[(&str, &str, usize)],
    ) -> VGraph {
        VGraph {
            base,
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edge_ob: edges
                .iter()
                .map(|(a, b, e)| (key2(a, b), *e))
                .collect(),
        }
    }

    #[test]
    fn chain_quiver_hom_counts() {
        let base = finset_base();
        let g = graph(base, &["a", "b", "c"], &[("a", "b", 2), ("b", "c", 3)]);
        let (cat, fs) = free_enriched(&g).unwrap();
        assert_eq!(cat.hom("a", "a"), 1);
        assert_eq!(cat.hom("a", "b"), 2);
        assert_eq!(cat.hom("b", "c"), 3);
        assert_eq!(cat.hom("a", "c"), 6);
        assert_eq!(cat.hom("c", "a"), 0);
        assert_eq!(fs.paths[&key2("a", "c")], vec![vec!["a", "b", "c"]]);
        assert!(check_enriched(&cat).is_valid());
    }

    #[test]
    fn empty_graph_gives_the_discrete_category() {
        let base = finset_base();
        let g = graph(base, &["a", "b"], &[]);
        let (cat, _) = free_enriched(&g).unwrap();
        assert_eq!(cat.hom("a", "a"), 1);
        assert_eq!(cat.hom("a", "b"), 0);
        assert_eq!(cat.hom("b", "a"), 0);
        assert!(check_enriched(&cat).is_valid());
        // an edge carrying the empty object still has no maps but is a path
        let g2 = graph(finset_base(), &["a", "b"], &[("a", "b", 0)]);
        let (cat2, fs2) = free_enriched(&g2).unwrap();
        assert_eq!(cat2.hom("a", "b"), 0);
        assert_eq!(fs2.paths[&key2("a", "b")].len(), 1);
    }

    #[test]
    fn cycles_are_rejected() {
        let base = finset_base();
        let loop_graph = graph(base.clone(), &["a"], &[("a", "a", 1)]);
        assert!(matches!(
            free_enriched(&loop_graph),
            Err(EnrichError::NonPathFinite(_))
        ));
        let two_cycle = graph(base, &["a", "b"], &[("a", "b", 1), ("b", "a", 1)]);
        assert!(matches!(
            free_enriched(&two_cycle),
            Err(EnrichError::NonPathFinite(_))
        ));
    }

    #[test]
    fn diamond_counts_both_paths() {
        let base = finset_base();
        let g = graph(
            base,
            &["a", "b", "c", "d"],
            &[("a", "b", 1), ("b", "d", 1), ("a", "c", 1), ("c", "d", 1)],
        );
        let (cat, fs) = free_enriched(&g).unwrap();
        assert_eq!(cat.hom("a", "d"), 2);
        assert_eq!(fs.paths[&key2("a", "d")].len(), 2);
        assert!(check_enriched(&cat).is_valid());
    }

    #[test]
    fn monoid_bases_without_coproducts_are_reported() {
        let base = Arc::new(base_monoid("c2", &["1", "g"], 0, vec![vec![0, 1], vec![1, 0]]));
        let g = graph(base, &["a", "b"], &[("a", "b", 1)]);
        // hom(b, a) needs an empty coproduct, which this base lacks
        assert!(matches!(
            free_enriched(&g),
            Err(EnrichError::Base(super::super::base::BaseError::MissingCoproduct(_)))
        ));
    }

    #[test]
    fn universal_property_into_the_walking_arrow() {
        let base = finset_base();
        let g = graph(base.clone(), &["a", "b", "c"], &[("a", "b", 2), ("b", "c", 3)]);
        let d = walking_arrow(base);
        let report = check_free_universal_property(&g, &d, 100_000).unwrap();
        // vertex maps must be monotone for the edge homs to be nonempty
        assert_eq!(report.graph_map_count, 4);
        assert_eq!(report.functor_count, 4);
        assert!(report.is_bijective(), "{:?}", report.mismatches);
    }

    #[test]
    fn universal_property_forces_long_components() {
        let base = finset_base();
        let g = graph(base.clone(), &["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]);
        let d = z2_one_object(base);
        let report = check_free_universal_property(&g, &d, 100_000).unwrap();
        // two independent edge images in ℤ/2; the long composite is forced
        assert_eq!(report.graph_map_count, 4);
        assert_eq!(report.functor_count, 4);
        assert!(report.is_bijective(), "{:?}", report.mismatches);
    }

    #[test]
    fn universal_property_over_the_boolean_base() {
        let base = Arc::new(base_boolean());
        let g = graph(base.clone(), &["a", "b"], &[("a", "b", 1)]);
        let d = trivial_category(base, &["x", "y"]);
        let report = check_free_universal_property(&g, &d, 100_000).unwrap();
        assert_eq!(report.graph_map_count, 4);
        assert!(report.is_bijective(), "{:?}", report.mismatches);
    }

    #[test]
    fn underlying_graph_is_total() {
        let base = finset_base();
        let d = walking_arrow(base);
        let u = underlying_graph(&d);
        assert_eq!(u.edge_ob.len(), 4);
        assert_eq!(u.edge_ob[&key2("1", "0")], 0);
    }

    #[test]
    fn budget_overrun_is_an_error() {
        let base = Arc::new(base_finset(8));
        let g = graph(base.clone(), &["a", "b"], &[("a", "b", 3)]);
        let d = z2_one_object(base);
        assert!(matches!(
            check_free_universal_property(&g, &d, 1),
            Err(EnrichError::CapExceeded { .. })
        ));
    }
}
