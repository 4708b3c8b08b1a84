//! The category `Δ^op_S` of ordinals decorated by a finite set.
//!
//! For a set `S` its objects over `[n]` are sequences `(X_0, …, X_n)` of
//! elements of `S`, and over each order-preserving `φ: [m] → [n]` there is
//! exactly one morphism `(X_0, …, X_n) → (X_{φ(0)}, …, X_{φ(m)})`. This is
//! the shape category for enriched categories with object set `S`: algebras
//! over it valued in a monoidal category are exactly `S`-object enriched
//! categories.

use crate::simplex::SimplexMap;

#[derive(Debug, Clone)]
pub struct DeltaOpS {
    pub elements: Vec<String>,
    pub degree_cap: usize,
}

/// Build `Δ^op_S` truncated to ordinals `[n]` with `n ≤ degree_cap`.
pub fn delta_op_s(elements: &[&str], degree_cap: usize) -> DeltaOpS {
    DeltaOpS {
        elements: elements.iter().map(|s| s.to_string()).collect(),
        degree_cap,
    }
}

impl DeltaOpS {
    /// All objects over `[n]`: sequences of length `n + 1`.
    pub fn objects_over(&self, n: usize) -> Vec<Vec<String>> {
        assert!(n <= self.degree_cap);
        let mut out: Vec<Vec<String>> = vec![vec![]];
        for _ in 0..=n {
            let mut next = Vec::with_capacity(out.len() * self.elements.len());
            for seq in &out {
                for e in &self.elements {
                    let mut ext = seq.clone();
                    ext.push(e.clone());
                    next.push(ext);
                }
            }
            out = next;
        }
        out
    }

    /// The unique morphism out of `src` over `φ: [m] → [n]` lands at the
    /// reindexed sequence.
    pub fn target_along(&self, src: &[String], phi: &SimplexMap) -> Vec<String> {
        assert_eq!(phi.tgt_degree() + 1, src.len());
        (0..=phi.src_degree()).map(|j| src[phi.value(j)].clone()).collect()
    }

    /// There is a morphism `src → tgt` over `φ` exactly when `tgt` is the
    /// reindexing of `src`; its hom set is then a singleton.
    pub fn hom_size(&self, src: &[String], tgt: &[String], phi: &SimplexMap) -> usize {
        usize::from(
            tgt.len() == phi.src_degree() + 1 && self.target_along(src, phi) == tgt,
        )
    }

    /// Set-level Segal condition: objects over `[n]` are in bijection with
    /// chains of objects over `[1]` glued along objects over `[0]`.
    pub fn segal_condition_holds(&self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        let singles = self.objects_over(1);
        // chains (P_1, …, P_n) of pairs with matching endpoints
        let mut chains: Vec<Vec<Vec<String>>> = singles.iter().map(|p| vec![p.clone()]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for chain in &chains {
                let last = &chain[chain.len() - 1][1];
                for p in &singles {
                    if &p[0] == last {
                        let mut ext = chain.clone();
                        ext.push(p.clone());
                        next.push(ext);
                    }
                }
            }
            chains = next;
        }
        // glue each chain and compare against the object list
        let mut glued: Vec<Vec<String>> = chains
            .iter()
            .map(|chain| {
                let mut seq = vec![chain[0][0].clone()];
                for p in chain {
                    seq.push(p[1].clone());
                }
                seq
            })
            .collect();
        glued.sort();
        glued.dedup();
        let mut objects = self.objects_over(n);
        objects.sort();
        glued == objects
    }
}
