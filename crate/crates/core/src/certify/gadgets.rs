use num_traits::Signed;
use rayon::prelude::*;

use super::{CertifyError, SignVector};
use crate::exactla::{symbolic_determinant, Monomial};
use crate::graphs::{Edge, Graph};
use crate::independence::independence_number;

/// Largest gadget order the subset scan accepts (`2α + 1 ≤ 9`).
pub const MAX_GADGET_ORDER: usize = 9;

/// Cap on the number of vertex subsets a single scan may visit.
pub const MAX_SUBSETS: u128 = 20_000_000;

/// An induced subgraph on `2α + 1` vertices with independence number `α`
/// whose generic determinant is a single monomial `c · Π w_e^{k_e}`.
///
/// With every edge weight nonzero the submatrix is then nonsingular, and the
/// inertia bound on the subgraph leaves only `(α+1, α, 0)` or `(α, α+1, 0)`;
/// which one is fixed by `sign(c)` and the signs on the odd-exponent edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCopy {
    /// Host vertices, ascending; pattern vertex `i` maps to `vertices[i]`.
    pub vertices: Vec<usize>,
    /// Host edges with odd exponent in the monomial, sorted.
    pub odd_support: Vec<Edge>,
    /// `true` iff the monomial's integer coefficient is negative.
    pub const_negative: bool,
    /// Independence number of the host (and of the gadget).
    pub alpha: usize,
    /// The determinant monomial over the induced subgraph's edges.
    pub monomial: Monomial,
}

impl GadgetCopy {
    /// The pattern→host injection.
    pub fn mapping(&self) -> &[usize] {
        &self.vertices
    }

    /// Tests `vertices` (ascending) as a gadget of `host` with independence
    /// number `alpha`.
    pub fn try_from_subset(host: &Graph, vertices: &[usize], alpha: usize) -> Option<GadgetCopy> {
        if vertices.len() != 2 * alpha + 1 {
            return None;
        }
        let sub = host.induced_subgraph(vertices).ok()?;
        if independence_number(&sub.graph).ok()?.alpha != alpha {
            return None;
        }
        let monomial = symbolic_determinant(&sub.graph).is_monomial()?;
        let odd_support: Vec<Edge> = {
            let pattern_edges: Vec<Edge> = sub.graph.edges().collect();
            let mut v: Vec<Edge> = monomial
                .odd_variables()
                .into_iter()
                .map(|i| sub.host_edge(pattern_edges[i]))
                .collect();
            v.sort_unstable();
            v
        };
        let g = GadgetCopy {
            vertices: vertices.to_vec(),
            odd_support,
            const_negative: monomial.coefficient.is_negative(),
            alpha,
            monomial,
        };
        assert!(
            g.odd_support_is_even(),
            "odd support of {:?} is not an even subgraph",
            g.vertices
        );
        Some(g)
    }

    /// Every vertex meets an even number of odd-support edges. The monomial
    /// is invariant under ±1 switching, so this always holds.
    pub fn odd_support_is_even(&self) -> bool {
        self.vertices
            .iter()
            .all(|&v| self.odd_support.iter().filter(|e| e.contains(v)).count() % 2 == 0)
    }

    /// Parity of negative signs on the odd support.
    pub fn odd_parity(&self, s: &SignVector) -> bool {
        self.odd_support
            .iter()
            .fold(false, |acc, &e| acc ^ s.is_negative(e))
    }

    /// `true` when the determinant is negative under sign pattern `s`.
    pub fn determinant_negative(&self, s: &SignVector) -> bool {
        self.const_negative ^ self.odd_parity(s)
    }
}

/// Which way a gadget's submatrix is forced under a sign pattern: `true`
/// means `α + 1` positive eigenvalues, `false` means `α + 1` negative ones.
///
/// A nonsingular `(2α+1)`-matrix has determinant sign `(−1)^{n₋}`, so for odd
/// `α` a negative determinant means `n₋ = α`, and for even `α` it means
/// `n₋ = α + 1`.
pub fn direction_of(g: &GadgetCopy, s: &SignVector) -> bool {
    g.determinant_negative(s) ^ (g.alpha % 2 == 0)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Scans all `(2α + 1)`-subsets of `g` and keeps the gadgets, ordered by
/// vertex set. Subsets are split by smallest vertex across the rayon pool
/// and merged back in order.
pub fn enumerate_gadgets(g: &Graph, alpha: usize) -> Result<Vec<GadgetCopy>, CertifyError> {
    let k = 2 * alpha + 1;
    if k > MAX_GADGET_ORDER {
        return Err(CertifyError::GadgetTooLarge(k));
    }
    let n = g.order();
    let subsets = binomial(n, k);
    if subsets > MAX_SUBSETS {
        return Err(CertifyError::ScanTooLarge(subsets));
    }
    if k > n {
        return Ok(Vec::new());
    }
    let per_first: Vec<Vec<GadgetCopy>> = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut combo = Vec::with_capacity(k);
            combo.push(first);
            scan(g, alpha, k, first + 1, &mut combo, &mut out);
            out
        })
        .collect();
    Ok(per_first.into_iter().flatten().collect())
}

fn scan(g: &Graph, alpha: usize, k: usize, next: usize, combo: &mut Vec<usize>, out: &mut Vec<GadgetCopy>) {
    if combo.len() == k {
        if let Some(gadget) = GadgetCopy::try_from_subset(g, combo, alpha) {
            out.push(gadget);
        }
        return;
    }
    let need = k - combo.len();
    for v in next..=g.order() - need {
        combo.push(v);
        scan(g, alpha, k, v + 1, combo, out);
        combo.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::paley;

    #[test]
    fn c5_is_its_own_gadget() {
        let gadgets = enumerate_gadgets(&Graph::cycle(5), 2).unwrap();
        assert_eq!(gadgets.len(), 1);
        assert_eq!(gadgets[0].odd_support.len(), 5);
        assert!(!gadgets[0].const_negative);
        // C5 adjacency has inertia (3, 2, 0): α + 1 positive eigenvalues
        assert!(direction_of(&gadgets[0], &SignVector::all_positive(&Graph::cycle(5))));
    }

    #[test]
    fn rejects_oversized_gadgets() {
        assert_eq!(
            enumerate_gadgets(&Graph::empty(12), 5),
            Err(CertifyError::GadgetTooLarge(11))
        );
    }

    #[test]
    fn g1_and_g2_copies_in_p17() {
        let p = paley(17).unwrap();
        let g1 = GadgetCopy::try_from_subset(&p, &[0, 1, 2, 6, 7, 12, 14], 3).unwrap();
        assert_eq!(g1.odd_support, vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert!(!g1.const_negative);

        let g2 = GadgetCopy::try_from_subset(&p, &[0, 1, 2, 3, 6, 12, 13], 3).unwrap();
        let cycle = vec![
            Edge::new(0, 1),
            Edge::new(0, 13),
            Edge::new(1, 3),
            Edge::new(3, 12),
            Edge::new(12, 13),
        ];
        assert_eq!(g2.odd_support, cycle);
        assert!(g2.const_negative);

        let mut s = SignVector::all_positive(&p);
        assert!(!direction_of(&g1, &s));
        assert!(direction_of(&g2, &s));
        s.set(Edge::new(1, 3), true);
        assert!(!direction_of(&g2, &s));
    }

    #[test]
    fn census_counts() {
        let p = paley(17).unwrap();
        let gadgets = enumerate_gadgets(&p, 3).unwrap();
        assert_eq!(gadgets.len(), 4352);
        assert!(gadgets.windows(2).all(|w| w[0].vertices < w[1].vertices));
        assert!(gadgets.iter().any(|g| g.vertices == [0, 1, 2, 6, 7, 12, 14]));
    }
}
