//! The presheaf-of-sections view of an enriched category: for a word
//! `V_1, …, V_n` of base objects, `φ(V_1, …, V_n)` is the set of tuples
//! of objects `x_0, …, x_n` together with elements `f_i: V_i → C(x_{i-1},
//! x_i)`. The decomposition condition says each such set is the fiber
//! product of its length-`(n-1)` prefix and its last letter over `φ()`,
//! the bare object set. `segal_presheaf_check` verifies every such
//! square by independent enumeration on both sides.

use super::SegalError;
use crate::enrich::base::Mor;
use crate::enrich::EnrichedCategory;
use serde::Serialize;
use std::collections::BTreeSet;

/// One section: the object tuple and one hom element per letter.
pub type Section = (Vec<String>, Vec<Mor>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresheafSquare {
    /// the word of base objects `V_1, …, V_n`
    pub word: Vec<usize>,
    /// the number of sections over the whole word
    pub sections: usize,
    /// the size of the fiber product of prefix and last letter
    pub fiber_pairs: usize,
    pub bijective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresheafReport {
    pub level_cap: usize,
    pub squares: Vec<PresheafSquare>,
}

impl PresheafReport {
    pub fn all_squares_commute(&self) -> bool {
        self.squares.iter().all(|s| s.bijective)
    }
}

/// Enumerate the sections over a word directly.
pub fn sections(c: &EnrichedCategory, word: &[usize]) -> Vec<Section> {
    let base = &*c.base;
    let mut acc: Vec<Section> = c
        .objects
        .iter()
        .map(|x| (vec![x.clone()], Vec::new()))
        .collect();
    for v in word {
        let mut next = Vec::new();
        for (objs, fs) in &acc {
            let tail = objs.last().unwrap();
            for y in &c.objects {
                for f in base.hom(*v, c.hom(tail, y)) {
                    let mut objs2 = objs.clone();
                    objs2.push(y.clone());
                    let mut fs2 = fs.clone();
                    fs2.push(f);
                    next.push((objs2, fs2));
                }
            }
        }
        acc = next;
    }
    acc
}

/// Check the decomposition squares for every word of length at most
/// `level_cap` over the base's objects. `budget` bounds the total number
/// of sections enumerated across all words; exceeding it is an error
/// rather than a silent truncation.
pub fn segal_presheaf_check(
    c: &EnrichedCategory,
    level_cap: usize,
    budget: usize,
) -> Result<PresheafReport, SegalError> {
    let base = &*c.base;
    let base_obs: Vec<usize> = (0..base.object_count()).collect();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..level_cap {
        let mut next = Vec::new();
        for w in &frontier {
            for &v in &base_obs {
                let mut w2 = w.clone();
                w2.push(v);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }

    let mut spent = 0usize;
    let mut enumerate = |word: &[usize]| -> Result<Vec<Section>, SegalError> {
        let ss = sections(c, word);
        spent += ss.len();
        if spent > budget {
            return Err(SegalError::CapExceeded { requested: spent, cap: budget });
        }
        Ok(ss)
    };

    let mut squares = Vec::new();
    for word in &words {
        let n = word.len();
        if n == 0 {
            continue;
        }
        let whole = enumerate(word)?;
        let prefix = enumerate(&word[..n - 1])?;
        let last = enumerate(&word[n - 1..])?;
        squares.push(compare_square(word, &whole, &prefix, &last));
    }
    Ok(PresheafReport { level_cap, squares })
}

/// Compare one decomposition square given the three section sets: the
/// restriction of whole-word sections to (prefix, last letter) must hit
/// the fiber product over the shared object bijectively.
pub fn compare_square(
    word: &[usize],
    whole: &[Section],
    prefix: &[Section],
    last: &[Section],
) -> PresheafSquare {
    let n = word.len();
    // the fiber product pairs sections agreeing on the shared object
    let prefix_set: BTreeSet<&Section> = prefix.iter().collect();
    let mut pairs: BTreeSet<(&Section, &Section)> = BTreeSet::new();
    for a in prefix {
        for b in last {
            if a.0.last() == b.0.first() {
                pairs.insert((a, b));
            }
        }
    }
    // restrict each section to the prefix and, along the inclusion of
    // the last letter, to its final edge; the two must recombine the
    // fiber product exactly
    let mut images: BTreeSet<(Section, Section)> = BTreeSet::new();
    let mut ok = true;
    for (objs, fs) in whole {
        let a: Section = (objs[..n].to_vec(), fs[..n - 1].to_vec());
        let b: Section = (objs[n - 1..].to_vec(), fs[n - 1..].to_vec());
        if !prefix_set.contains(&a) || !pairs.contains(&(&a, &b)) {
            ok = false;
        }
        if !images.insert((a, b)) {
            ok = false; // not injective
        }
    }
    let bijective = ok && images.len() == pairs.len();
    PresheafSquare {
        word: word.to_vec(),
        sections: whole.len(),
        fiber_pairs: pairs.len(),
        bijective,
    }
}
