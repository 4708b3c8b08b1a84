//! The acceptance gate: one test per release criterion, each printing a
//! single pass line (visible with `--nocapture`; a failure prints the
//! witness). Every criterion is checked against an independent oracle —
//! brute-force enumeration, a closed-form count, or a second construction
//! of the same invariant — never against the code under test alone.

use opdcat::corpus::{
    enriched_of_fincat, seeded_enriched, seeded_equivalence_data, seeded_ffes_functors,
    seeded_graph_pairs, seeded_multicats, DEFAULT_SEED,
};
use opdcat::enrich::{
    check_enriched, check_free_universal_property, check_vfunctor, is_categorical_equivalence_datum,
    is_complete, is_essentially_surjective, is_fully_faithful, trivial_category, VFunctor,
};
use opdcat::multicat::{
    builtin_assoc, builtin_bm, builtin_lm, builtin_os, builtin_rm, check_multicategory,
    find_isomorphism, multicat_of_operators, operators, symmetrize, Multicategory,
};
use opdcat::segal::{
    is_complete_segal, is_groupoid_object, is_segal, iota_equivalent, iota_sset, nerve,
};
use opdcat::simplex::{enumerate_maps, factor_inert_active, SimplexMap};
use std::collections::{BTreeMap, BTreeSet};

#[test]
fn criterion_01_inert_active_factorization_is_unique() {
    let cap = 6;
    let mut checked = 0usize;
    for m in 0..=cap {
        for n in 0..=cap {
            let all = enumerate_maps(m, n, cap).unwrap();
            // oracle: compose every (active, inert) pair through every
            // middle degree and count how often each map arises
            let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for k in 0..=cap {
                let actives: Vec<SimplexMap> = enumerate_maps(m, k, cap)
                    .unwrap()
                    .into_iter()
                    .filter(|a| a.is_active())
                    .collect();
                let inerts: Vec<SimplexMap> = enumerate_maps(k, n, cap)
                    .unwrap()
                    .into_iter()
                    .filter(|i| i.is_inert())
                    .collect();
                for a in &actives {
                    for i in &inerts {
                        let g = a.compose(i).unwrap();
                        *counts.entry(g.values().to_vec()).or_insert(0) += 1;
                    }
                }
            }
            assert_eq!(
                counts.values().sum::<usize>(),
                all.len(),
                "[{m}]→[{n}]: pair count differs from map count"
            );
            for g in &all {
                assert_eq!(
                    counts.get(g.values()),
                    Some(&1),
                    "factorization of {g:?} is not unique"
                );
                let f = factor_inert_active(g);
                assert!(f.inert.is_inert() && f.active.is_active());
                assert_eq!(&f.active.compose(&f.inert).unwrap(), g);
                checked += 1;
            }
        }
    }
    println!("PASS criterion 1: unique inert-active factorization on {checked} maps up to degree 6");
}

#[test]
fn criterion_02_assoc_operators_is_the_truncated_simplex_dual() {
    let cap = 5;
    let e = operators(&builtin_assoc(), cap);
    let obj = |k: usize| vec!["x".to_string(); k];

    // the object map k ↦ [k] is a bijection on objects per degree
    for k in 0..=cap {
        assert_eq!(e.objects_of_degree(k), vec![obj(k)]);
    }

    // hom(x^m, x^n) → Δ([n], [m]), f ↦ φ_f, is a bijection for all m, n
    for m in 0..=cap {
        for n in 0..=cap {
            let hom = e.hom(&obj(m), &obj(n));
            let expected: BTreeSet<Vec<usize>> = enumerate_maps(n, m, cap)
                .unwrap()
                .iter()
                .map(|p| p.values().to_vec())
                .collect();
            let got: BTreeSet<Vec<usize>> =
                hom.iter().map(|f| f.phi.values().to_vec()).collect();
            assert_eq!(hom.len(), expected.len(), "hom(x^{m}, x^{n}) has the wrong size");
            assert_eq!(got, expected, "hom(x^{m}, x^{n}) does not match Δ([{n}],[{m}])");
        }
    }

    // identities sit over identities
    for k in 0..=cap {
        assert!(e.identity_morphism(&obj(k)).phi.is_identity());
    }

    // the bijection respects composition: exhaustively through degree 4,
    // where both sides stay small enough to enumerate completely
    let mut composed = 0usize;
    for m in 0..=4 {
        for n in 0..=4 {
            for p in 0..=4 {
                for f in e.hom(&obj(m), &obj(n)) {
                    for g in e.hom(&obj(n), &obj(p)) {
                        let fg = e.compose_morphisms(&f, &g).unwrap();
                        let phi = g.phi.compose(&f.phi).unwrap();
                        assert_eq!(fg.phi, phi, "composite does not sit over the composed map");
                        composed += 1;
                    }
                }
            }
        }
    }
    assert_eq!(composed, 73_085, "exhaustive composite count through degree 4");
    println!("PASS criterion 2: operators of the associative pattern match the simplex dual up to degree 5 ({composed} composites checked)");
}

#[test]
fn criterion_03_operator_round_trip_recovers_every_multicategory() {
    let mut families: Vec<(String, Multicategory)> = seeded_multicats(DEFAULT_SEED);
    let corpus_count = families.len();
    assert!(corpus_count >= 10, "need at least ten corpus multicategories");
    for (name, m) in &families {
        assert!(
            m.colors().len() <= 3,
            "{name}: corpus multicategories stay at three colors or fewer"
        );
        assert!(check_multicategory(m, 3).violations.is_empty(), "{name} is not valid");
    }
    families.push(("os-a".into(), builtin_os(&["a"])));
    families.push(("os-ab".into(), builtin_os(&["a", "b"])));
    families.push(("os-abc".into(), builtin_os(&["a", "b", "c"])));
    families.push(("bm".into(), builtin_bm()));
    families.push(("lm".into(), builtin_lm()));
    families.push(("rm".into(), builtin_rm()));

    let mut failures = Vec::new();
    for (name, m) in &families {
        let e = operators(m, 4);
        match multicat_of_operators(&e) {
            Err(err) => failures.push(format!("{name}: extraction failed: {err}")),
            Ok(back) => {
                if find_isomorphism(m, &back, 4).is_none() {
                    failures.push(format!("{name}: no isomorphism with the extracted multicategory"));
                }
            }
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
    println!(
        "PASS criterion 3: operator round trip recovers all {} families ({corpus_count} corpus + 6 named)",
        families.len()
    );
}

#[test]
fn criterion_04_algebra_round_trip_is_the_identity() {
    let cats = seeded_enriched(DEFAULT_SEED);
    assert!(cats.len() >= 10);
    let mut bases = BTreeSet::new();
    for (name, c) in &cats {
        bases.insert(match &*c.base {
            opdcat::enrich::base::Base::Boolean => "boolean",
            opdcat::enrich::base::Base::FinSet { .. } => "finset",
            other => panic!("{name}: unexpected base {other:?}"),
        });
        let a = opdcat::enrich::algebra_of_enriched(c, 3);
        let report = opdcat::enrich::check_algebra(&a);
        assert!(report.is_valid(), "{name}: algebra laws fail: {:?}", report.violations);
        let back = opdcat::enrich::enriched_of_algebra(&a)
            .unwrap_or_else(|e| panic!("{name}: rebuild failed: {e}"));
        // the round trip is the identity on the nose, which is the
        // strongest form of "identity up to isomorphism"
        assert_eq!(&back, c, "{name}: round trip changed the category");
    }
    assert!(bases.len() >= 2, "corpus must span Boolean and finite-set bases: {bases:?}");
    println!(
        "PASS criterion 4: algebra round trip is the identity on {} categories over {} base kinds",
        cats.len(),
        bases.len()
    );
}

#[test]
fn criterion_05_completeness_agrees_with_two_independent_oracles() {
    let cats = opdcat::fincat::enumerate_fincats(3, 6, 2);
    assert!(cats.len() > 300, "exhaustive enumeration looks truncated: {}", cats.len());
    let mut complete_count = 0usize;
    for c in &cats {
        let e = enriched_of_fincat(c, 8);
        assert!(check_enriched(&e).is_valid());
        let got = is_complete(&e);

        // oracle 1: directly, every invertible morphism is an identity
        let gaunt = c
            .morphisms
            .keys()
            .all(|f| !c.is_invertible(f) || c.identities.values().any(|id| id == f));

        // oracle 2: completeness of the Segal nerve
        let nerve_complete = is_complete_segal(&nerve(c, 3).unwrap()).unwrap();

        assert_eq!(got, gaunt, "completeness disagrees with the invertibility oracle on {c:?}");
        assert_eq!(got, nerve_complete, "completeness disagrees with the nerve on {c:?}");
        complete_count += usize::from(got);
    }
    println!(
        "PASS criterion 5: completeness agrees with both oracles on all {} categories ({} complete)",
        cats.len(),
        complete_count
    );
}

#[test]
fn criterion_06_equivalences_are_detected_level_by_level() {
    let functors = seeded_ffes_functors(DEFAULT_SEED);
    let mut ffes_count = 0usize;
    for (name, f) in &functors {
        assert!(check_vfunctor(f).is_valid(), "{name} is not a functor");
        let ff = is_fully_faithful(f);
        let es = is_essentially_surjective(f);
        let level_eq = iota_equivalent(f);
        if ff && es {
            assert!(level_eq, "{name}: fully faithful + essentially surjective but the equivalence levels disagree");
            ffes_count += 1;
        }
        if ff && level_eq {
            assert!(es, "{name}: fully faithful + level equivalence must be essentially surjective");
        }
    }
    assert!(ffes_count >= 20, "only {ffes_count} equivalences in the family");

    // converse witness: a fully faithful non-surjective inclusion is not a
    // level equivalence
    let arrow = seeded_enriched(DEFAULT_SEED)
        .into_iter()
        .find(|(n, _)| n == "en-arrow")
        .unwrap()
        .1;
    let point = trivial_category(arrow.base.clone(), &["0"]);
    let incl = VFunctor {
        source: point.clone(),
        target: arrow.clone(),
        ob_map: BTreeMap::from([("0".to_string(), "0".to_string())]),
        mor_map: BTreeMap::from([(
            ("0".to_string(), "0".to_string()),
            arrow.base.id(arrow.hom("0", "0")),
        )]),
    };
    assert!(check_vfunctor(&incl).is_valid());
    assert!(is_fully_faithful(&incl));
    assert!(!is_essentially_surjective(&incl));
    assert!(!iota_equivalent(&incl), "a proper inclusion must fail the level comparison");

    println!("PASS criterion 6: {ffes_count} equivalences detected level by level, converse witness holds");
}

#[test]
fn criterion_07_equivalence_data_give_equivalences_both_ways() {
    let data = seeded_equivalence_data(DEFAULT_SEED);
    assert!(data.len() >= 10);
    let names: Vec<&str> = data.iter().map(|(n, _)| n.as_str()).collect();
    assert!(
        names.iter().any(|n| n.contains("collapse")),
        "family must include a surjective interval collapse"
    );
    assert!(
        names.iter().any(|n| n.contains("include")),
        "family must include an injective interval inclusion"
    );
    for (name, (f, g, phi, psi)) in &data {
        let holds = is_categorical_equivalence_datum(f, g, phi, psi)
            .unwrap_or_else(|e| panic!("{name}: datum ill-formed: {e}"));
        assert!(holds, "{name}: homotopies do not exhibit an equivalence");
        for (dir, h) in [("forward", f), ("backward", g)] {
            assert!(is_fully_faithful(h), "{name}: {dir} functor is not fully faithful");
            assert!(is_essentially_surjective(h), "{name}: {dir} functor is not essentially surjective");
        }
    }
    println!(
        "PASS criterion 7: all {} equivalence data yield fully faithful, essentially surjective functors both ways",
        data.len()
    );
}

#[test]
fn criterion_08_free_categories_satisfy_the_universal_property() {
    let pairs = seeded_graph_pairs(DEFAULT_SEED);
    assert!(pairs.len() >= 10);
    for (name, g, target) in &pairs {
        let (free, _) = opdcat::enrich::free_enriched(g).unwrap();
        assert!(check_enriched(&free).is_valid(), "{name}: free category invalid");

        // oracle: hom sizes are path sums over the acyclic graph — the
        // product of the edge sizes, summed over all paths
        for x in &g.vertices {
            for y in &g.vertices {
                let expected = path_sum(g, x, y);
                assert_eq!(
                    free.hom(x, y),
                    expected,
                    "{name}: hom({x},{y}) does not match the path sum"
                );
            }
        }

        let report = check_free_universal_property(g, target, 1_000_000)
            .unwrap_or_else(|e| panic!("{name}: universal property check failed to run: {e}"));
        assert!(
            report.is_bijective(),
            "{name}: extension is not a bijection: {} graph maps vs {} functors, mismatches {:?}",
            report.graph_map_count,
            report.functor_count,
            report.mismatches
        );
    }
    println!(
        "PASS criterion 8: free-forgetful bijection and path-sum homs on {} graph/target pairs",
        pairs.len()
    );
}

/// Sum over all paths x → y in an acyclic graph of the product of edge
/// sizes; the empty path contributes exactly when x = y.
fn path_sum(g: &opdcat::enrich::VGraph, x: &str, y: &str) -> usize {
    let mut total = usize::from(x == y);
    for ((a, b), size) in &g.edge_ob {
        if a == x {
            total += size * path_sum(g, b, y);
        }
    }
    total
}

#[test]
fn criterion_09_equivalence_levels_form_a_segal_groupoid() {
    let cats = seeded_enriched(DEFAULT_SEED);
    for (name, c) in &cats {
        let x = iota_sset(c, 3).unwrap_or_else(|e| panic!("{name}: levels failed: {e}"));
        assert!(is_segal(&x), "{name}: equivalence levels fail the Segal condition");
        assert!(is_groupoid_object(&x), "{name}: equivalence levels fail the groupoid condition");
    }

    // the nerve of the walking arrow is Segal but not a groupoid object
    let n1 = nerve(&opdcat::fincat::walking_arrow_cat(), 3).unwrap();
    assert!(is_segal(&n1));
    assert!(!is_groupoid_object(&n1), "the walking arrow must fail the groupoid condition");
    println!(
        "PASS criterion 9: equivalence levels of all {} corpus categories are Segal groupoids; the walking arrow is not",
        cats.len()
    );
}

#[test]
fn criterion_10_filtrations_cover_the_chaotic_nerve_with_inner_horns() {
    let frozen_totals = [(1usize, 114usize), (2, 960), (3, 4362)];
    for (n, expected_stages) in frozen_totals {
        let cert = opdcat::anodyne::build_filtration(n, 5).unwrap();
        let report = opdcat::anodyne::verify_certificate(&cert);
        assert!(report.is_valid(), "N={n}: {:?}", report.violations);
        assert_eq!(report.attached, cert.stages.len());
        assert_eq!(cert.stages.len(), expected_stages, "N={n}: stage count drifted");

        // every horn is inner and every attached cell is attached once
        let mut seen: BTreeSet<Vec<usize>> = cert.base.iter().map(|w| w.0.clone()).collect();
        assert_eq!(seen.len(), cert.base.len(), "N={n}: duplicate base simplex");
        for stage in &cert.stages {
            let dim = stage.simplex.0.len() - 1;
            assert!(
                stage.t >= 1 && stage.t <= dim - 1,
                "N={n}: horn {} of {:?} is not inner",
                stage.t,
                stage.simplex
            );
            assert!(seen.insert(stage.face.0.clone()), "N={n}: {:?} attached twice", stage.face);
            assert!(
                seen.insert(stage.simplex.0.clone()),
                "N={n}: {:?} attached twice",
                stage.simplex
            );
        }

        // full coverage: base, faces, and fillers together hit every
        // alternating word — (N+2)(N+1)^d of them in dimension d ≤ 5
        for d in 1..=5usize {
            let words = alternating_words(n + 1, d + 1);
            assert_eq!(words.len(), (n + 2) * (n + 1).pow(d as u32));
            for w in &words {
                assert!(seen.contains(w), "N={n}: word {w:?} never attached");
            }
        }
    }
    println!("PASS criterion 10: filtrations for N=1,2,3 verify with inner horns, unique fillers, and full coverage (114/960/4362 stages)");
}

/// All words of the given length over `0..=top` whose adjacent letters
/// differ — the nondegenerate simplices of the chaotic nerve.
fn alternating_words(top: usize, len: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = (0..=top).map(|a| vec![a]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &acc {
            for a in 0..=top {
                if *w.last().unwrap() != a {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn criterion_11_presheaf_squares_commute_and_detect_missing_sections() {
    use opdcat::segal::presheaf::{compare_square, sections, segal_presheaf_check};

    let cats = seeded_enriched(DEFAULT_SEED);
    let mut total_squares = 0usize;
    for (name, c) in &cats {
        let report = segal_presheaf_check(c, 3, 2_000_000)
            .unwrap_or_else(|e| panic!("{name}: presheaf sweep failed: {e}"));
        assert!(!report.squares.is_empty());
        for square in &report.squares {
            assert!(
                square.bijective,
                "{name}: square over word {:?} does not commute",
                square.word
            );
        }
        total_squares += report.squares.len();
    }

    // doctored direction: removing one section over a word must fail
    // exactly that square, and the report names it
    let chaotic = cats.iter().find(|(n, _)| n == "en-chaotic-2").unwrap().1.clone();
    let word = vec![1usize, 1];
    let mut whole = sections(&chaotic, &word);
    let prefix = sections(&chaotic, &word[..1]);
    let last = sections(&chaotic, &word[1..]);
    let intact = compare_square(&word, &whole, &prefix, &last);
    assert!(intact.bijective);
    assert!(intact.sections >= 2);
    whole.pop();
    let doctored = compare_square(&word, &whole, &prefix, &last);
    assert!(!doctored.bijective, "removing a section must break the square");
    assert_eq!(doctored.word, word, "the failing square names its word");
    assert_eq!(doctored.sections + 1, doctored.fiber_pairs);

    println!("PASS criterion 11: all {total_squares} decomposition squares commute; a removed section fails its named square");
}

#[test]
fn criterion_12_symmetrization_counts_permutations() {
    let s = symmetrize(&builtin_assoc());
    let color = "x".to_string();
    for n in 0..=5usize {
        let inputs = vec![color.clone(); n];
        let ops = s.sym_multihom(&inputs, &color).unwrap();
        let factorial: usize = (1..=n).product();
        assert_eq!(ops.len(), factorial, "Sym(Ass)(x^{n}; x) must have {n}! elements");
        // the permutations are pairwise distinct
        let perms: BTreeSet<&Vec<usize>> = ops.iter().map(|op| &op.perm).collect();
        assert_eq!(perms.len(), factorial);
    }
    println!("PASS criterion 12: symmetrized associative pattern counts n! operations for n ≤ 5");
}

#[test]
fn groupoid_invariants_survive_equivalences() {
    // not one of the numbered criteria, but the same gate: the iso-class
    // count and automorphism orders computed from the equivalence levels
    // agree across source and target of every corpus equivalence
    let data = seeded_equivalence_data(DEFAULT_SEED);
    for (name, (f, _, _, _)) in &data {
        let src = opdcat::segal::core_invariants(&f.source);
        let tgt = opdcat::segal::core_invariants(&f.target);
        assert_eq!(
            src.iso_classes.len(),
            tgt.iso_classes.len(),
            "{name}: iso class count changed"
        );
        let orders = |r: &opdcat::segal::GroupoidReport| -> Vec<usize> {
            let mut v: Vec<usize> = r.aut_groups.values().map(|g| g.len()).collect();
            v.sort();
            v
        };
        assert_eq!(orders(&src), orders(&tgt), "{name}: automorphism orders changed");
    }
    println!("PASS: groupoid invariants survive all corpus equivalences");
}
