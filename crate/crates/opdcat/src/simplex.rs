//! The simplicial indexing category Δ and its inert/active factorization.
//!
//! Objects of Δ are the finite nonempty ordinals `[n] = {0 < 1 < … < n}`;
//! morphisms are weakly monotone maps. A [`SimplexMap`] stores the value
//! sequence of such a map. Morphisms of Δ^op are represented by their
//! underlying Δ maps and read contravariantly; every operation documents
//! which reading it uses.
//!
//! A map is *inert* if it is the inclusion of a subinterval, and *active*
//! if it preserves both endpoints. Read in Δ^op these two classes form a
//! factorization system: every map factors uniquely as an inert followed
//! by an active morphism ([`factor_inert_active`]).

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplexError {
    #[error("value sequence has length {got}, expected src_degree + 1 = {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("value sequence is not weakly monotone at position {at}")]
    NotMonotone { at: usize },
    #[error("value {value} at position {at} exceeds target degree {tgt}")]
    ValueOutOfRange { at: usize, value: usize, tgt: usize },
    #[error("cannot compose [{a}]→[{b}] with [{c}]→[{d}]: inner degrees differ")]
    DegreeMismatch { a: usize, b: usize, c: usize, d: usize },
    #[error("degree {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// A morphism `[src] → [tgt]` of Δ: a weakly monotone map, stored as its
/// `src + 1` values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimplexMap {
    src: usize,
    tgt: usize,
    values: Vec<usize>,
}

impl fmt::Debug for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}]{:?}", self.src, self.tgt, self.values)
    }
}

impl SimplexMap {
    pub fn new(src: usize, tgt: usize, values: Vec<usize>) -> Result<Self, SimplexError> {
        if values.len() != src + 1 {
            return Err(SimplexError::LengthMismatch { got: values.len(), want: src + 1 });
        }
        for (i, &v) in values.iter().enumerate() {
            if v > tgt {
                return Err(SimplexError::ValueOutOfRange { at: i, value: v, tgt });
            }
            if i > 0 && values[i - 1] > v {
                return Err(SimplexError::NotMonotone { at: i });
            }
        }
        Ok(SimplexMap { src, tgt, values })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap { src: n, tgt: n, values: (0..=n).collect() }
    }

    /// The coface `d_i : [n-1] → [n]` (injective, omits `i`). Requires `n ≥ 1`, `i ≤ n`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        SimplexMap { src: n - 1, tgt: n, values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect() }
    }

    /// The codegeneracy `s_i : [n+1] → [n]` (surjective, repeats `i`). Requires `i ≤ n`.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        SimplexMap { src: n + 1, tgt: n, values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect() }
    }

    /// The inert map `ρ_i : [1] → [n]` with values `(i-1, i)`, for `1 ≤ i ≤ n`.
    pub fn rho(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        SimplexMap { src: 1, tgt: n, values: vec![i - 1, i] }
    }

    /// The active map `α_n : [1] → [n]` with values `(0, n)`. For `n = 0` this
    /// is the codegeneracy `(0, 0)`.
    pub fn alpha(n: usize) -> Self {
        SimplexMap { src: 1, tgt: n, values: vec![0, n] }
    }

    /// Inclusion of the subinterval `{start, …, start + m}` into `[n]`.
    pub fn subinterval(m: usize, n: usize, start: usize) -> Self {
        assert!(start + m <= n);
        SimplexMap { src: m, tgt: n, values: (start..=start + m).collect() }
    }

    pub fn src_degree(&self) -> usize {
        self.src
    }

    pub fn tgt_degree(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Composition in Δ: for `self : [a] → [b]` and `g : [b] → [c]` the
    /// composite `g ∘ self : [a] → [c]`, pointwise `i ↦ g(self(i))`.
    pub fn compose(&self, g: &SimplexMap) -> Result<SimplexMap, SimplexError> {
        if self.tgt != g.src {
            return Err(SimplexError::DegreeMismatch { a: self.src, b: self.tgt, c: g.src, d: g.tgt });
        }
        Ok(SimplexMap {
            src: self.src,
            tgt: g.tgt,
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Inert: an inclusion of a subinterval, i.e. `f(i) = f(0) + i` for all `i`.
    pub fn is_inert(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == self.values[0] + i)
    }

    /// Active: preserves the extremal elements, i.e. `f(0) = 0` and `f(a) = b`.
    pub fn is_active(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.tgt
    }
}

/// The unique inert-then-active factorization of a Δ^op morphism.
///
/// Reading `g : [m] → [n]` contravariantly as a morphism `[n] ⇝ [m]` of Δ^op,
/// the Δ^op composite runs `inert` first and `active` second. As maps of Δ
/// this means `g = inert ∘ active`, where `active : [m] → [k]` with
/// `k = g(m) − g(0)` and `inert : [k] ↪ [n]` is the subinterval inclusion
/// starting at `g(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub inert: SimplexMap,
    pub active: SimplexMap,
}

pub fn factor_inert_active(g: &SimplexMap) -> Factorization {
    let lo = g.values[0];
    let hi = *g.values.last().unwrap();
    let k = hi - lo;
    let active = SimplexMap {
        src: g.src,
        tgt: k,
        values: g.values.iter().map(|&v| v - lo).collect(),
    };
    let inert = SimplexMap::subinterval(k, g.tgt, lo);
    Factorization { inert, active }
}

/// All monotone maps `[a] → [b]`, in lexicographic order of value sequences.
/// There are `C(a + b + 1, a + 1)` of them.
pub fn enumerate_maps(a: usize, b: usize, degree_cap: usize) -> Result<Vec<SimplexMap>, SimplexError> {
    for requested in [a, b] {
        if requested > degree_cap {
            return Err(SimplexError::CapExceeded { requested, cap: degree_cap });
        }
    }
    let mut out = Vec::new();
    let mut values = vec![0usize; a + 1];
    loop {
        out.push(SimplexMap { src: a, tgt: b, values: values.clone() });
        // advance to the next weakly monotone sequence over [0, b]
        let mut i = a + 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if values[i] < b {
                values[i] += 1;
                let v = values[i];
                for item in values.iter_mut().skip(i + 1) {
                    *item = v;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient, exact in `u64` at the sizes used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
