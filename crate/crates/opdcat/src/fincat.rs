//! Ordinary finite categories presented by explicit tables: named objects,
//! named morphisms with recorded endpoints, identity assignments, and a
//! composition table. These feed the nerve construction and provide
//! oracle categories (posets, groups, chaotic categories) for the
//! simplicial checks.

use serde::Serialize;
use std::collections::BTreeMap;

/// A finite category. `compose` is keyed diagrammatically: the entry at
/// `(f, g)` is the name of "f then g" and must be present whenever
/// `tgt(f) = src(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    pub objects: Vec<String>,
    /// morphism name → (source object, target object)
    pub morphisms: BTreeMap<String, (String, String)>,
    pub identities: BTreeMap<String, String>,
    pub compose: BTreeMap<(String, String), String>,
}

impl FinCat {
    pub fn src(&self, f: &str) -> &str {
        &self.morphisms[f].0
    }

    pub fn tgt(&self, f: &str) -> &str {
        &self.morphisms[f].1
    }

    pub fn id(&self, x: &str) -> &str {
        &self.identities[x]
    }

    pub fn hom(&self, x: &str, y: &str) -> Vec<String> {
        self.morphisms
            .iter()
            .filter(|(_, (s, t))| s == x && t == y)
            .map(|(name, _)| name.clone())
            .collect()
    }

    /// The composite "f then g", if the pair is composable.
    pub fn comp(&self, f: &str, g: &str) -> Option<&str> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        self.compose.get(&(f.to_string(), g.to_string())).map(|s| s.as_str())
    }

    pub fn is_invertible(&self, f: &str) -> bool {
        let (x, y) = (self.src(f).to_string(), self.tgt(f).to_string());
        self.hom(&y, &x).iter().any(|g| {
            self.comp(f, g) == Some(self.id(&x)) && self.comp(g, f) == Some(self.id(&y))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms.keys().all(|f| self.is_invertible(f))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FinCatViolation {
    MorphismEndpointsUnknown { f: String },
    IdentityMissing { x: String },
    CompositeMissing { f: String, g: String },
    CompositeIllTyped { f: String, g: String },
    IdentityNotNeutral { f: String },
    NotAssociative { f: String, g: String, h: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FinCatReport {
    pub violations: Vec<FinCatViolation>,
}

impl FinCatReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_fincat(c: &FinCat) -> FinCatReport {
    let mut violations = Vec::new();
    for (f, (s, t)) in &c.morphisms {
        if !c.objects.contains(s) || !c.objects.contains(t) {
            violations.push(FinCatViolation::MorphismEndpointsUnknown { f: f.clone() });
        }
    }
    for x in &c.objects {
        let ok = c.identities.get(x).is_some_and(|i| {
            c.morphisms.get(i).is_some_and(|(s, t)| s == x && t == x)
        });
        if !ok {
            violations.push(FinCatViolation::IdentityMissing { x: x.clone() });
        }
    }
    if !violations.is_empty() {
        return FinCatReport { violations };
    }
    let names: Vec<&String> = c.morphisms.keys().collect();
    for &f in &names {
        for &g in &names {
            if c.tgt(f) != c.src(g) {
                continue;
            }
            match c.compose.get(&(f.clone(), g.clone())) {
                None => {
                    violations.push(FinCatViolation::CompositeMissing {
                        f: f.clone(),
                        g: g.clone(),
                    });
                }
                Some(fg) => {
                    let well_typed = c.morphisms.get(fg).is_some_and(|(s, t)| {
                        s == c.src(f) && t == c.tgt(g)
                    });
                    if !well_typed {
                        violations.push(FinCatViolation::CompositeIllTyped {
                            f: f.clone(),
                            g: g.clone(),
                        });
                    }
                }
            }
        }
    }
    if !violations.is_empty() {
        return FinCatReport { violations };
    }
    for &f in &names {
        let x = c.src(f).to_string();
        let y = c.tgt(f).to_string();
        if c.comp(c.id(&x), f) != Some(f) || c.comp(f, c.id(&y)) != Some(f) {
            violations.push(FinCatViolation::IdentityNotNeutral { f: f.clone() });
        }
    }
    for &f in &names {
        for &g in &names {
            if c.tgt(f) != c.src(g) {
                continue;
            }
            for &h in &names {
                if c.tgt(g) != c.src(h) {
                    continue;
                }
                let left = c.comp(f, g).and_then(|fg| c.comp(fg, h));
                let right = c.comp(g, h).and_then(|gh| c.comp(f, gh));
                if left != right || left.is_none() {
                    violations.push(FinCatViolation::NotAssociative {
                        f: f.clone(),
                        g: g.clone(),
                        h: h.clone(),
                    });
                }
            }
        }
    }
    FinCatReport { violations }
}

// ---------------------------------------------------------------------------
// Stock categories

pub fn terminal_cat() -> FinCat {
    FinCat {
        objects: vec!["*".to_string()],
        morphisms: BTreeMap::from([(
            "id*".to_string(),
            ("*".to_string(), "*".to_string()),
        )]),
        identities: BTreeMap::from([("*".to_string(), "id*".to_string())]),
        compose: BTreeMap::from([(
            ("id*".to_string(), "id*".to_string()),
            "id*".to_string(),
        )]),
    }
}

/// The walking arrow: objects `0 → 1` with a single non-identity morphism.
pub fn walking_arrow_cat() -> FinCat {
    let mut morphisms = BTreeMap::new();
    morphisms.insert("id0".to_string(), ("0".to_string(), "0".to_string()));
    morphisms.insert("id1".to_string(), ("1".to_string(), "1".to_string()));
    morphisms.insert("a".to_string(), ("0".to_string(), "1".to_string()));
    let mut compose = BTreeMap::new();
    for (f, g, fg) in [
        ("id0", "id0", "id0"),
        ("id1", "id1", "id1"),
        ("id0", "a", "a"),
        ("a", "id1", "a"),
    ] {
        compose.insert((f.to_string(), g.to_string()), fg.to_string());
    }
    FinCat {
        objects: vec!["0".to_string(), "1".to_string()],
        morphisms,
        identities: BTreeMap::from([
            ("0".to_string(), "id0".to_string()),
            ("1".to_string(), "id1".to_string()),
        ]),
        compose,
    }
}

/// The chaotic category on a list of objects: exactly one morphism
/// between every ordered pair.
pub fn chaotic_cat(objects: &[&str]) -> FinCat {
    let name = |x: &str, y: &str| format!("{x}>{y}");
    let mut morphisms = BTreeMap::new();
    let mut identities = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for &x in objects {
        identities.insert(x.to_string(), name(x, x));
        for &y in objects {
            morphisms.insert(name(x, y), (x.to_string(), y.to_string()));
            for &z in objects {
                compose.insert((name(x, y), name(y, z)), name(x, z));
            }
        }
    }
    FinCat {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms,
        identities,
        compose,
    }
}

/// The cyclic group of order `n` as a one-object category.
pub fn cyclic_group_cat(n: usize) -> FinCat {
    assert!(n >= 1);
    let name = |k: usize| format!("g{k}");
    let mut morphisms = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for k in 0..n {
        morphisms.insert(name(k), ("*".to_string(), "*".to_string()));
        for l in 0..n {
            compose.insert((name(k), name(l)), name((k + l) % n));
        }
    }
    FinCat {
        objects: vec!["*".to_string()],
        morphisms,
        identities: BTreeMap::from([("*".to_string(), name(0))]),
        compose,
    }
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

/// Every finite category with at most `max_objects` objects, at most
/// `max_hom_size` morphisms between any ordered pair of objects, and at
/// most `max_morphisms` morphisms in total. Objects are named `o0, o1, …`
/// and the morphisms from `ox` to `oy` are `f{x}>{y}.0, f{x}>{y}.1, …`,
/// with `f{x}>{x}.0` always the identity. Distinct composition tables are
/// listed even when the categories are isomorphic.
pub fn enumerate_fincats(
    max_objects: usize,
    max_morphisms: usize,
    max_hom_size: usize,
) -> Vec<FinCat> {
    let mut out = Vec::new();
    for n in 1..=max_objects {
        if n > max_morphisms {
            continue;
        }
        for profile in hom_profiles(n, max_morphisms, max_hom_size) {
            enumerate_tables(n, &profile, &mut out);
        }
    }
    out
}

/// All hom-size matrices: diagonal at least one (identities), bounded
/// entries, bounded total, and closed under composability — a composable
/// pair of non-empty homs needs a non-empty hom to land in.
fn hom_profiles(n: usize, max_total: usize, max_hom: usize) -> Vec<Vec<Vec<usize>>> {
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    let mut profile = vec![vec![0usize; n]; n];
    fn rec(
        slots: &[(usize, usize)],
        i: usize,
        used: usize,
        max_total: usize,
        max_hom: usize,
        profile: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == slots.len() {
            let n = profile.len();
            let closed = (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        profile[x][y] == 0 || profile[y][z] == 0 || profile[x][z] > 0
                    })
                })
            });
            if closed {
                out.push(profile.clone());
            }
            return;
        }
        let (x, y) = slots[i];
        let lo = usize::from(x == y);
        for size in lo..=max_hom {
            if used + size > max_total {
                break;
            }
            profile[x][y] = size;
            rec(slots, i + 1, used + size, max_total, max_hom, profile, out);
        }
        profile[x][y] = 0;
    }
    rec(&slots, 0, 0, max_total, max_hom, &mut profile, &mut out);
    out
}

fn enumerate_tables(n: usize, profile: &[Vec<usize>], out: &mut Vec<FinCat>) {
    // index morphisms globally
    let mut mors: Vec<(usize, usize)> = Vec::new();
    let mut hom_ids = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            for _ in 0..profile[x][y] {
                hom_ids[x][y].push(mors.len());
                mors.push((x, y));
            }
        }
    }
    let m = mors.len();
    let ids: Vec<usize> = (0..n).map(|x| hom_ids[x][x][0]).collect();
    let mut comp: Vec<Vec<Option<usize>>> = vec![vec![None; m]; m];
    for f in 0..m {
        let (s, t) = mors[f];
        comp[ids[s]][f] = Some(f);
        comp[f][ids[t]] = Some(f);
    }
    let free: Vec<(usize, usize)> = (0..m)
        .flat_map(|f| (0..m).map(move |g| (f, g)))
        .filter(|&(f, g)| {
            mors[f].1 == mors[g].0 && comp[f][g].is_none()
        })
        .collect();
    let composable: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|u| (0..m).flat_map(move |v| (0..m).map(move |w| (u, v, w))))
        .filter(|&(u, v, w)| mors[u].1 == mors[v].0 && mors[v].1 == mors[w].0)
        .collect();
    fn assoc_holds(
        comp: &[Vec<Option<usize>>],
        composable: &[(usize, usize, usize)],
    ) -> bool {
        composable.iter().all(|&(u, v, w)| {
            let left = comp[u][v].and_then(|uv| comp[uv][w]);
            let right = comp[v][w].and_then(|vw| comp[u][vw]);
            left.is_none() || right.is_none() || left == right
        })
    }
    fn rec(
        i: usize,
        free: &[(usize, usize)],
        mors: &[(usize, usize)],
        hom_ids: &[Vec<Vec<usize>>],
        composable: &[(usize, usize, usize)],
        comp: &mut Vec<Vec<Option<usize>>>,
        results: &mut Vec<Vec<Vec<Option<usize>>>>,
    ) {
        if i == free.len() {
            results.push(comp.clone());
            return;
        }
        let (f, g) = free[i];
        let (s, _) = mors[f];
        let (_, t) = mors[g];
        for &candidate in &hom_ids[s][t] {
            comp[f][g] = Some(candidate);
            if assoc_holds(comp, composable) {
                rec(i + 1, free, mors, hom_ids, composable, comp, results);
            }
            comp[f][g] = None;
        }
    }
    let mut results = Vec::new();
    rec(0, &free, &mors, &hom_ids, &composable, &mut comp, &mut results);

    let mor_name = |id: usize, mors: &[(usize, usize)], hom_ids: &[Vec<Vec<usize>>]| {
        let (x, y) = mors[id];
        let k = hom_ids[x][y].iter().position(|&j| j == id).unwrap();
        format!("f{x}>{y}.{k}")
    };
    for table in results {
        let objects: Vec<String> = (0..n).map(|x| format!("o{x}")).collect();
        let mut morphisms = BTreeMap::new();
        for (id, &(x, y)) in mors.iter().enumerate() {
            morphisms.insert(
                mor_name(id, &mors, &hom_ids),
                (objects[x].clone(), objects[y].clone()),
            );
        }
        let identities = (0..n)
            .map(|x| (objects[x].clone(), mor_name(ids[x], &mors, &hom_ids)))
            .collect();
        let mut compose = BTreeMap::new();
        for f in 0..m {
            for g in 0..m {
                if let Some(fg) = table[f][g] {
                    compose.insert(
                        (
                            mor_name(f, &mors, &hom_ids),
                            mor_name(g, &mors, &hom_ids),
                        ),
                        mor_name(fg, &mors, &hom_ids),
                    );
                }
            }
        }
        out.push(FinCat { objects, morphisms, identities, compose });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stock_categories_validate() {
        for c in [
            terminal_cat(),
            walking_arrow_cat(),
            chaotic_cat(&["a", "b", "c"]),
            cyclic_group_cat(1),
            cyclic_group_cat(3),
        ] {
            let report = check_fincat(&c);
            assert!(report.is_valid(), "{:?}", report.violations);
        }
    }

    #[test]
    fn enumeration_is_exhaustive_on_tiny_shapes() {
        // one object, up to two endomorphisms: the trivial monoid, the
        // group of order two, and the idempotent multiplication
        let monoids = enumerate_fincats(1, 2, 2);
        assert_eq!(monoids.len(), 3);
        assert_eq!(monoids.iter().filter(|c| c.is_groupoid()).count(), 2);

        // two objects with singleton homs at most: the discrete pair and
        // the walking arrow in both orientations
        let thin = enumerate_fincats(2, 3, 1);
        assert_eq!(
            thin.iter().filter(|c| c.objects.len() == 2).count(),
            3
        );

        for c in enumerate_fincats(3, 5, 2) {
            let report = check_fincat(&c);
            assert!(report.is_valid(), "{:?}", report.violations);
        }
    }

    #[test]
    fn groupoid_detection() {
        assert!(terminal_cat().is_groupoid());
        assert!(cyclic_group_cat(4).is_groupoid());
        assert!(chaotic_cat(&["x", "y"]).is_groupoid());
        assert!(!walking_arrow_cat().is_groupoid());
        assert!(!walking_arrow_cat().is_invertible("a"));
        assert!(walking_arrow_cat().is_invertible("id0"));
    }

    #[test]
    fn hom_and_composition_read_off() {
        let c = chaotic_cat(&["a", "b"]);
        assert_eq!(c.hom("a", "b"), vec!["a>b".to_string()]);
        assert_eq!(c.comp("a>b", "b>a"), Some("a>a"));
        assert_eq!(c.comp("a>b", "a>b"), None);
    }

    #[test]
    fn doctored_composition_table_is_reported() {
        // setting g1·g1 = g0 in ℤ/3 breaks associativity on (g1, g1, g2):
        // (g1 g1) g2 = g2 while g1 (g1 g2) = g1
        let mut c = cyclic_group_cat(3);
        c.compose.insert(("g1".to_string(), "g1".to_string()), "g0".to_string());
        let report = check_fincat(&c);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, FinCatViolation::NotAssociative { .. })));
    }
}
