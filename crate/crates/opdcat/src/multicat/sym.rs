//! Symmetrization of a non-symmetric multicategory.
//!
//! `Sym(M)(c_1, …, c_n; d)` is the disjoint union over permutations
//! `σ ∈ Σ_n` of `M(c_{σ(1)}, …, c_{σ(n)}; d)`; the symmetric groups act by
//! composing the permutation coordinate, and composition reshuffles blocks.

use super::{Color, Multicategory, MulticatError, OpRef};
use serde::Serialize;

/// Largest arity whose symmetric group is enumerated.
pub const SYM_ARITY_CAP: usize = 6;

/// An element of a symmetrized multihom set: an underlying operation of `M`
/// whose inputs are the ambient input list read through `perm` — slot `i`
/// of `op` consumes input position `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SymOp {
    pub perm: Vec<usize>,
    pub op: OpRef,
}

#[derive(Debug, Clone)]
pub struct SymMulticategory {
    pub base: Multicategory,
}

/// Symmetrize a multicategory.
pub fn symmetrize(m: &Multicategory) -> SymMulticategory {
    SymMulticategory { base: m.clone() }
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

impl SymMulticategory {
    /// The symmetrized multihom set on an input list and output color.
    pub fn sym_multihom(
        &self,
        inputs: &[Color],
        output: &Color,
    ) -> Result<Vec<SymOp>, MulticatError> {
        let n = inputs.len();
        if n > SYM_ARITY_CAP {
            return Err(MulticatError::CapExceeded { requested: n, cap: SYM_ARITY_CAP });
        }
        use itertools::Itertools;
        let mut out = Vec::new();
        for perm in (0..n).permutations(n) {
            let permuted: Vec<Color> = perm.iter().map(|&i| inputs[i].clone()).collect();
            for op in self.base.multihom(&permuted, output) {
                out.push(SymOp {
                    perm: perm.clone(),
                    op: OpRef { inputs: permuted.clone(), output: output.clone(), op },
                });
            }
        }
        Ok(out)
    }

    /// Relabel the input list by `pi` (new position `j` holds old position
    /// `pi[j]`) and transport an element along the relabelling.
    pub fn act(&self, pi: &[usize], inputs: &[Color], elem: &SymOp) -> (Vec<Color>, SymOp) {
        assert_eq!(pi.len(), inputs.len());
        let relabelled: Vec<Color> = pi.iter().map(|&i| inputs[i].clone()).collect();
        let inv = invert(pi);
        let perm = elem.perm.iter().map(|&p| inv[p]).collect();
        (relabelled, SymOp { perm, op: elem.op.clone() })
    }

    /// Composition in the symmetrized multicategory. `outer` sits on the
    /// typing `(slot_colors; output)`; `inners[i]` sits on
    /// `(inner_inputs[i]; slot_colors[i])`. The result sits on the
    /// concatenation of the inner input lists in ambient order.
    pub fn compose(
        &self,
        outer: &SymOp,
        inners: &[(Vec<Color>, SymOp)],
    ) -> Result<(Vec<Color>, SymOp), MulticatError> {
        let k = outer.perm.len();
        if inners.len() != k {
            return Err(MulticatError::InnerCountMismatch { expected: k, got: inners.len() });
        }
        // feed slot j of the underlying outer op with the underlying op of
        // the inner it draws from
        let fed: Vec<&SymOp> = outer.perm.iter().map(|&i| &inners[i].1).collect();
        let underlying = self
            .base
            .compose(&outer.op, &fed.iter().map(|f| f.op.clone()).collect::<Vec<_>>())?;
        // global permutation: walk the underlying composite's inputs and
        // record which ambient position each one came from
        let offsets: Vec<usize> = {
            let mut acc = 0;
            inners
                .iter()
                .map(|(ins, _)| {
                    let o = acc;
                    acc += ins.len();
                    o
                })
                .collect()
        };
        let mut perm = Vec::new();
        for &i in &outer.perm {
            let inner = &inners[i].1;
            for &p in &inner.perm {
                perm.push(offsets[i] + p);
            }
        }
        let ambient: Vec<Color> = inners.iter().flat_map(|(ins, _)| ins.clone()).collect();
        if ambient.len() > SYM_ARITY_CAP {
            return Err(MulticatError::CapExceeded {
                requested: ambient.len(),
                cap: SYM_ARITY_CAP,
            });
        }
        Ok((ambient, SymOp { perm, op: underlying }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::{builtin_assoc, builtin_os};
    use itertools::Itertools;

    fn x(n: usize) -> Vec<Color> {
        vec!["x".to_string(); n]
    }

    #[test]
    fn assoc_counts_are_factorials() {
        let sym = symmetrize(&builtin_assoc());
        let mut fact = 1usize;
        for n in 1..=5 {
            fact *= n;
            let hom = sym.sym_multihom(&x(n), &"x".to_string()).unwrap();
            assert_eq!(hom.len(), fact, "arity {n}");
        }
    }

    #[test]
    fn arity_one_matches_base() {
        let sym = symmetrize(&builtin_os(&["a", "b"]));
        let ab = "(a,b)".to_string();
        let hom = sym.sym_multihom(std::slice::from_ref(&ab), &ab).unwrap();
        assert_eq!(hom.len(), 1);
        assert_eq!(hom[0].perm, vec![0]);
    }

    #[test]
    fn os_arity_two_counts_match_permutation_condition() {
        // over inputs ((a,b), (b,a)) with output (a,a): the identity order
        // chains a→b→a, the swap chains b→a→b; only the identity matches.
        let sym = symmetrize(&builtin_os(&["a", "b"]));
        let inputs = vec!["(a,b)".to_string(), "(b,a)".to_string()];
        let hom = sym.sym_multihom(&inputs, &"(a,a)".to_string()).unwrap();
        assert_eq!(hom.len(), 1);
        assert_eq!(hom[0].perm, vec![0, 1]);
        // with output (b,b) only the swapped order matches
        let hom = sym.sym_multihom(&inputs, &"(b,b)".to_string()).unwrap();
        assert_eq!(hom.len(), 1);
        assert_eq!(hom[0].perm, vec![1, 0]);
        // both orders of ((a,b),(b,b))… chain a→b→b vs b→b,a→b: swap gives
        // (b,b),(a,b): b→b then b→a? no — mismatch; exactly one survives
        let inputs = vec!["(a,b)".to_string(), "(b,b)".to_string()];
        let hom = sym.sym_multihom(&inputs, &"(a,b)".to_string()).unwrap();
        assert_eq!(hom.len(), 1);
    }

    #[test]
    fn action_is_a_right_action() {
        let sym = symmetrize(&builtin_assoc());
        let inputs = x(4);
        let hom = sym.sym_multihom(&inputs, &"x".to_string()).unwrap();
        for pi in (0..4).permutations(4) {
            for tau in (0..4).permutations(4) {
                let composite: Vec<usize> = tau.iter().map(|&j| pi[j]).collect();
                for elem in &hom {
                    let (l1, e1) = sym.act(&pi, &inputs, elem);
                    let (l2, e2) = sym.act(&tau, &l1, &e1);
                    let (l3, e3) = sym.act(&composite, &inputs, elem);
                    assert_eq!(l2, l3);
                    assert_eq!(e2, e3);
                }
            }
        }
    }

    #[test]
    fn action_permutes_the_hom_set_bijectively() {
        let sym = symmetrize(&builtin_assoc());
        let inputs = x(3);
        let hom = sym.sym_multihom(&inputs, &"x".to_string()).unwrap();
        for pi in (0..3).permutations(3) {
            let mut images: Vec<SymOp> = hom
                .iter()
                .map(|e| sym.act(&pi, &inputs, e).1)
                .collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), hom.len());
        }
    }

    #[test]
    fn composition_blocks_land_correctly() {
        // compose a binary outer with a binary and a unary inner, outer
        // permutation the swap: the composite permutation must send the
        // underlying input walk to ambient positions block-by-block.
        let sym = symmetrize(&builtin_assoc());
        let outer = SymOp {
            perm: vec![1, 0],
            op: OpRef::new(&["x", "x"], "x", "mu"),
        };
        let inner0 = (
            x(2),
            SymOp { perm: vec![1, 0], op: OpRef::new(&["x", "x"], "x", "mu") },
        );
        let inner1 = (x(1), SymOp { perm: vec![0], op: OpRef::new(&["x"], "x", "mu") });
        let (ambient, composite) = sym.compose(&outer, &[inner0, inner1]).unwrap();
        assert_eq!(ambient, x(3));
        // outer draws slot 0 from inner 1 (offset 2), slot 1 from inner 0
        // (offset 0, internally swapped)
        assert_eq!(composite.perm, vec![2, 1, 0]);
    }

    #[test]
    fn composition_is_equivariant_under_inner_relabelling() {
        // relabelling the inputs of one inner before composing equals
        // composing first and relabelling the matching block after.
        let sym = symmetrize(&builtin_assoc());
        let hom2 = sym.sym_multihom(&x(2), &"x".to_string()).unwrap();
        for outer in &hom2 {
            for f0 in &hom2 {
                for f1 in &hom2 {
                    for pi in (0..2).permutations(2) {
                        // relabel inner 0 by pi, then compose
                        let (l0, f0p) = sym.act(&pi, &x(2), f0);
                        let lhs = sym
                            .compose(outer, &[(l0, f0p), (x(2), f1.clone())])
                            .unwrap();
                        // compose, then relabel ambient positions 0..2 by pi
                        let (_, composed) = sym
                            .compose(outer, &[(x(2), f0.clone()), (x(2), f1.clone())])
                            .unwrap();
                        let mut block: Vec<usize> = pi.clone();
                        block.extend(2..4);
                        let rhs = sym.act(&block, &x(4), &composed);
                        assert_eq!(lhs.1, rhs.1);
                    }
                }
            }
        }
    }
}
