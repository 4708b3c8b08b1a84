//! A certified filtration witnessing that the pushout inclusion of
//! chaotic nerves `G_N ∐_{G_{N}} G_{N,N+1} ↪ G_{N+1}` is built from
//! inner horn fillings. `build_filtration` emits a replayable
//! certificate listing every attached simplex with its horn index;
//! `verify_certificate` replays it independently and audits coverage,
//! uniqueness, horn innerness, and stage monotonicity.
//!
//! Simplices of `G_{N+1}` are words over `{0, …, N+1}`; a word is
//! nondegenerate when no two consecutive entries are equal. The two
//! blocks are `{0, …, N}` and `{N, N+1}` (sharing `N`). Scanning a word
//! left to right into maximal runs that stay inside a single block, the
//! classification looks at the first boundary between runs:
//!
//! - last element before the boundary equal to `N` → the word is a
//!   filler (`T`) whose horn index is that position; deleting the `N`
//!   gives its free face;
//! - otherwise → the word is a free face (`S`); its filler inserts `N`
//!   just after the boundary.
//!
//! The tag records `b` (total boundary count) and the horn index `t`;
//! words with no downward boundary form the `(1,∞,t)` families. The
//! convention is deliberately falsifiable: the audits in
//! `verify_certificate` fail loudly if it were wrong.

use crate::segal::TruncatedSSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnodyneError {
    #[error("dimension {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("entry {entry} is outside the alphabet 0..={max}")]
    OutOfAlphabet { entry: usize, max: usize },
}

/// A word describing a simplex of a chaotic nerve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StringSimplex(pub Vec<usize>);

impl StringSimplex {
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Delete the entry at position `i`.
    pub fn face(&self, i: usize) -> StringSimplex {
        let mut v = self.0.clone();
        v.remove(i);
        StringSimplex(v)
    }

    pub fn insert(&self, i: usize, value: usize) -> StringSimplex {
        let mut v = self.0.clone();
        v.insert(i, value);
        StringSimplex(v)
    }

    /// The nondegenerate word underlying this one: collapse runs of
    /// equal consecutive entries.
    pub fn core(&self) -> StringSimplex {
        let mut v: Vec<usize> = Vec::with_capacity(self.0.len());
        for &a in &self.0 {
            if v.last() != Some(&a) {
                v.push(a);
            }
        }
        StringSimplex(v)
    }
}

impl fmt::Display for StringSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The nerve of the chaotic category on `{0, …, n_top}` as an explicit
/// truncated simplicial set: level `k` holds every word of length
/// `k + 1`, faces delete an entry, degeneracies repeat one.
pub fn chaotic_nerve(n_top: usize, d: usize) -> Result<TruncatedSSet, AnodyneError> {
    if d > crate::caps::DIM {
        return Err(AnodyneError::CapExceeded { requested: d, cap: crate::caps::DIM });
    }
    let name = |w: &[usize]| -> String {
        w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    };
    let mut words: Vec<Vec<Vec<usize>>> = vec![(0..=n_top).map(|a| vec![a]).collect()];
    for k in 1..=d {
        let mut next = Vec::new();
        for w in &words[k - 1] {
            for a in 0..=n_top {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        words.push(next);
    }
    let levels: Vec<Vec<String>> = words
        .iter()
        .map(|ws| {
            let mut ls: Vec<String> = ws.iter().map(|w| name(w)).collect();
            ls.sort();
            ls
        })
        .collect();
    let mut faces = BTreeMap::new();
    for k in 1..=d {
        for i in 0..=k {
            let mut table = BTreeMap::new();
            for w in &words[k] {
                let mut v = w.clone();
                v.remove(i);
                table.insert(name(w), name(&v));
            }
            faces.insert((k, i), table);
        }
    }
    let mut degens = BTreeMap::new();
    for k in 0..d {
        for i in 0..=k {
            let mut table = BTreeMap::new();
            for w in &words[k] {
                let mut v = w.clone();
                v.insert(i, w[i]);
                table.insert(name(w), name(&v));
            }
            degens.insert((k, i), table);
        }
    }
    Ok(TruncatedSSet { dim_cap: d, levels, faces, degens })
}

/// The tag of a nondegenerate word in the filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassTag {
    /// contained in one of the two blocks
    Base,
    /// a free face, attached as the missing horn face of its filler
    S { b: usize, t: usize, inf: bool },
    /// a filler, attached by filling the inner horn at index `t`
    T { b: usize, t: usize, inf: bool },
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Base => write!(f, "base"),
            ClassTag::S { b, t, inf: false } => write!(f, "S^{{{b},{t}}}"),
            ClassTag::S { t, inf: true, .. } => write!(f, "S^{{1,∞,{t}}}"),
            ClassTag::T { b, t, inf: false } => write!(f, "T^{{{b},{t}}}"),
            ClassTag::T { t, inf: true, .. } => write!(f, "T^{{1,∞,{t}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// number of run boundaries
    pub beta: usize,
    /// position before the first downward boundary, if any
    pub tau: Option<usize>,
    /// position after the first upward boundary, when no downward one exists
    pub tau_prime: Option<usize>,
    pub tag: ClassTag,
}

/// Classify a nondegenerate word over `{0, …, n+1}` by the run
/// convention described in the module docs.
pub fn classify_simplex(s: &StringSimplex, n: usize) -> Result<Classification, AnodyneError> {
    assert!(s.is_nondegenerate(), "classification requires a nondegenerate word");
    if let Some(&entry) = s.0.iter().find(|&&a| a > n + 1) {
        return Err(AnodyneError::OutOfAlphabet { entry, max: n + 1 });
    }
    let in_low = |a: usize| a <= n;
    let in_high = |a: usize| a >= n;
    if s.0.iter().all(|&a| in_low(a)) || s.0.iter().all(|&a| in_high(a)) {
        return Ok(Classification { beta: 0, tau: None, tau_prime: None, tag: ClassTag::Base });
    }
    // greedy maximal runs: track which blocks can still contain the run
    let mut boundaries: Vec<(usize, bool)> = Vec::new(); // (position before, is upward)
    let (mut low_ok, mut high_ok) = (in_low(s.0[0]), in_high(s.0[0]));
    for (i, &a) in s.0.iter().enumerate().skip(1) {
        let (l, h) = (low_ok && in_low(a), high_ok && in_high(a));
        if !l && !h {
            boundaries.push((i - 1, low_ok));
            low_ok = in_low(a);
            high_ok = in_high(a);
        } else {
            low_ok = l;
            high_ok = h;
        }
    }
    let beta = boundaries.len();
    let (e, _) = boundaries[0];
    let tau = boundaries.iter().find(|&&(_, up)| !up).map(|&(p, _)| p);
    let tau_prime = if tau.is_none() {
        boundaries.iter().find(|&&(_, up)| up).map(|&(p, _)| p + 1)
    } else {
        None
    };
    let inf = tau.is_none();
    let tag = if s.0[e] == n {
        ClassTag::T { b: beta, t: e, inf }
    } else {
        ClassTag::S { b: beta, t: e + 1, inf }
    };
    Ok(Classification { beta, tau, tau_prime, tag })
}

/// One attachment: fill the inner horn `Λ^{dim}_t` of `simplex`, whose
/// missing face is `face`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStage {
    pub simplex: StringSimplex,
    pub class: String,
    pub t: usize,
    pub face: StringSimplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationCertificate {
    #[serde(rename = "N")]
    pub n: usize,
    pub dim: usize,
    pub base: Vec<StringSimplex>,
    pub stages: Vec<FiltrationStage>,
}

fn nondegenerate_words(n_top: usize, max_len: usize) -> Vec<StringSimplex> {
    let mut all = Vec::new();
    let mut current: Vec<Vec<usize>> = (0..=n_top).map(|a| vec![a]).collect();
    for len in 1..=max_len {
        all.extend(current.iter().cloned().map(StringSimplex));
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &current {
            for a in 0..=n_top {
                if a != *w.last().unwrap() {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
        }
        current = next;
    }
    all
}

fn base_words(n: usize, d: usize) -> Vec<StringSimplex> {
    let mut base: Vec<StringSimplex> = nondegenerate_words(n + 1, d + 1)
        .into_iter()
        .filter(|s| s.0.iter().all(|&a| a <= n) || s.0.iter().all(|&a| a >= n))
        .collect();
    base.sort_by_key(|s| (s.0.len(), s.0.clone()));
    base
}

/// Stage ordering: dimension of the free face ascending, then boundary
/// count ascending, then horn index descending, with the `(1,∞,t)`
/// families folded in after the plain ones of the same index.
fn stage_key(face_dim: usize, b: usize, t: usize, inf: bool, word: &StringSimplex) -> (usize, usize, std::cmp::Reverse<usize>, bool, Vec<usize>) {
    (face_dim, b, std::cmp::Reverse(t), inf, word.0.clone())
}

/// Build the filtration certificate for `G_N ∐_{G_{N}} G_{N,N+1} ↪
/// G_{N+1}` up to dimension `d`: every nondegenerate word of dimension
/// at most `d` outside the base is attached exactly once, free faces as
/// the missing face of their filler.
pub fn build_filtration(n: usize, d: usize) -> Result<FiltrationCertificate, AnodyneError> {
    assert!(n >= 1, "the pushout inclusion needs at least two retained colors");
    if d > crate::caps::DIM {
        return Err(AnodyneError::CapExceeded { requested: d, cap: crate::caps::DIM });
    }
    let mut records: Vec<((usize, usize, std::cmp::Reverse<usize>, bool, Vec<usize>), FiltrationStage)> = Vec::new();
    for word in nondegenerate_words(n + 1, d + 2) {
        let cls = classify_simplex(&word, n)?;
        if let ClassTag::T { b, t, inf } = cls.tag {
            let face = word.face(t);
            // the free face must be within the dimension cap
            if face.dim() > d {
                continue;
            }
            records.push((
                stage_key(face.dim(), b, t, inf, &word),
                FiltrationStage {
                    class: cls.tag.to_string(),
                    t,
                    face,
                    simplex: word,
                },
            ));
        }
    }
    records.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FiltrationCertificate {
        n,
        dim: d,
        base: base_words(n, d),
        stages: records.into_iter().map(|(_, s)| s).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnodyneViolation {
    /// the recorded base differs from the nerve pushout's simplices
    BaseMismatch,
    /// a horn index touches the ends of the simplex
    NonInnerHorn { stage: usize, t: usize, dim: usize },
    /// the recorded class or horn index disagrees with the classification
    ClassMismatch { stage: usize, expected: String, recorded: String },
    /// the recorded face is not the stated face of the simplex
    WrongFace { stage: usize },
    /// two fillers in one class share a free face
    NonUniqueFiller { class: String, face: StringSimplex },
    /// a simplex or its free face was already present before its stage
    AlreadyAttached { stage: usize },
    /// a non-horn face is not available at attachment time
    FaceMissing { stage: usize, face_index: usize },
    /// stages are not in filtration order
    StageOrderViolation { stage: usize },
    /// a nondegenerate simplex within the cap was never attached
    CoverageGap { missing: StringSimplex },
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub attached: usize,
    pub violations: Vec<AnodyneViolation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Replay a certificate from scratch and audit every invariant: the
/// base, each attachment's class, horn innerness, face availability,
/// uniqueness of fillers, stage ordering, and final coverage.
pub fn verify_certificate(cert: &FiltrationCertificate) -> VerifyReport {
    let mut violations = Vec::new();
    let n = cert.n;
    let d = cert.dim;

    let expected_base: BTreeSet<&StringSimplex> = cert.base.iter().collect();
    let computed_base = base_words(n, d);
    if expected_base != computed_base.iter().collect::<BTreeSet<_>>() {
        violations.push(AnodyneViolation::BaseMismatch);
    }

    let mut attached: BTreeSet<Vec<usize>> =
        computed_base.iter().map(|s| s.0.clone()).collect();
    let mut class_faces: BTreeMap<String, BTreeSet<Vec<usize>>> = BTreeMap::new();
    let mut prev_key: Option<(usize, usize, std::cmp::Reverse<usize>, bool, Vec<usize>)> = None;

    for (idx, st) in cert.stages.iter().enumerate() {
        let m = st.simplex.dim();
        if !(0 < st.t && st.t < m) {
            violations.push(AnodyneViolation::NonInnerHorn { stage: idx, t: st.t, dim: m });
            continue;
        }
        let cls = match classify_simplex(&st.simplex, n) {
            Ok(c) => c,
            Err(_) => {
                violations.push(AnodyneViolation::ClassMismatch {
                    stage: idx,
                    expected: "a word over the alphabet".into(),
                    recorded: st.class.clone(),
                });
                continue;
            }
        };
        let (b, inf) = match cls.tag {
            ClassTag::T { b, t, inf } if t == st.t => (b, inf),
            other => {
                violations.push(AnodyneViolation::ClassMismatch {
                    stage: idx,
                    expected: other.to_string(),
                    recorded: format!("{} at t={}", st.class, st.t),
                });
                continue;
            }
        };
        if cls.tag.to_string() != st.class {
            violations.push(AnodyneViolation::ClassMismatch {
                stage: idx,
                expected: cls.tag.to_string(),
                recorded: st.class.clone(),
            });
            continue;
        }
        if st.simplex.face(st.t) != st.face {
            violations.push(AnodyneViolation::WrongFace { stage: idx });
            continue;
        }
        // the free face must carry the matching S-tag
        match classify_simplex(&st.face, n).map(|c| c.tag) {
            Ok(ClassTag::S { b: sb, t: stt, inf: sinf })
                if sb == b && stt == st.t && sinf == inf => {}
            _ => {
                violations.push(AnodyneViolation::ClassMismatch {
                    stage: idx,
                    expected: format!("free face in the paired S class of {}", st.class),
                    recorded: st.face.to_string(),
                });
                continue;
            }
        }
        let key = stage_key(st.face.dim(), b, st.t, inf, &st.simplex);
        if let Some(prev) = &prev_key {
            if key < *prev {
                violations.push(AnodyneViolation::StageOrderViolation { stage: idx });
            }
        }
        prev_key = Some(key);
        if !class_faces
            .entry(st.class.clone())
            .or_default()
            .insert(st.face.0.clone())
        {
            violations.push(AnodyneViolation::NonUniqueFiller {
                class: st.class.clone(),
                face: st.face.clone(),
            });
            continue;
        }
        if attached.contains(&st.face.0) || attached.contains(&st.simplex.0) {
            violations.push(AnodyneViolation::AlreadyAttached { stage: idx });
            continue;
        }
        for i in 0..=m {
            if i == st.t {
                continue;
            }
            let core = st.simplex.face(i).core();
            if !attached.contains(&core.0) {
                violations.push(AnodyneViolation::FaceMissing { stage: idx, face_index: i });
            }
        }
        attached.insert(st.face.0.clone());
        attached.insert(st.simplex.0.clone());
    }

    for word in nondegenerate_words(n + 1, d + 1) {
        if !attached.contains(&word.0) {
            violations.push(AnodyneViolation::CoverageGap { missing: word });
        }
    }

    VerifyReport { attached: cert.stages.len(), violations }
}
