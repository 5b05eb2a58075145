use std::collections::BTreeSet;

use super::{Edge, Graph, GraphError, Triangle};

pub fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The nonzero squares modulo a prime `q >= 3`.
pub fn quadratic_residues(q: usize) -> Result<BTreeSet<usize>, GraphError> {
    if q < 3 || !is_prime(q) {
        return Err(GraphError::NotPrime(q));
    }
    Ok((1..q).map(|x| x * x % q).collect())
}

/// The Paley graph on `GF(q)` for a prime `q ≡ 1 (mod 4)`.
pub fn paley(q: usize) -> Result<Graph, GraphError> {
    Ok(PaleyParams::new(q)?.graph())
}

/// Label of an edge class: the canonical representative `k` of `±k`, taken
/// from the residues in `1..=(q-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeClassLabel(pub usize);

/// One Hamiltonian cycle of a 2-factorization, given by its vertex sequence
/// starting at 0 (the closing edge back to 0 is implicit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCycle {
    pub class: EdgeClassLabel,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaleyParams {
    q: usize,
    squares: BTreeSet<usize>,
}

impl PaleyParams {
    pub fn new(q: usize) -> Result<Self, GraphError> {
        let squares = quadratic_residues(q)?;
        if q % 4 != 1 {
            return Err(GraphError::NotOneModFour(q));
        }
        debug_assert_eq!(squares.len(), (q - 1) / 2);
        debug_assert!(squares.iter().all(|&s| squares.contains(&(q - s))));
        Ok(PaleyParams { q, squares })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn squares(&self) -> &BTreeSet<usize> {
        &self.squares
    }

    pub fn is_square(&self, x: usize) -> bool {
        self.squares.contains(&(x % self.q))
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(self.q);
        for u in 0..self.q {
            for v in u + 1..self.q {
                if self.is_square(v - u) {
                    g.insert(Edge(u, v));
                }
            }
        }
        g
    }

    /// Canonical class labels in ascending order; `{1, 2, 4, 8}` for q = 17.
    pub fn classes(&self) -> Vec<EdgeClassLabel> {
        self.squares
            .iter()
            .copied()
            .filter(|&r| r <= (self.q - 1) / 2)
            .map(EdgeClassLabel)
            .collect()
    }

    fn class_of_difference(&self, d: usize) -> EdgeClassLabel {
        let d = d % self.q;
        EdgeClassLabel(d.min(self.q - d))
    }

    pub fn edge_class(&self, e: Edge) -> Result<EdgeClassLabel, GraphError> {
        if e.v() >= self.q || !self.is_square(e.v() - e.u()) {
            return Err(GraphError::NotAnEdge(e.u(), e.v()));
        }
        Ok(self.class_of_difference(e.v() - e.u()))
    }

    /// One cycle per edge class; for prime `q` every class is a single
    /// Hamiltonian cycle `0, k, 2k, …`.
    pub fn two_factorization(&self) -> Result<Vec<ClassCycle>, GraphError> {
        self.classes()
            .into_iter()
            .map(|k| {
                let mut vertices = vec![0];
                let mut v = k.0;
                while v != 0 {
                    vertices.push(v);
                    v = (v + k.0) % self.q;
                }
                if vertices.len() != self.q {
                    return Err(GraphError::ClassSplits {
                        k: k.0,
                        cycles: self.q / vertices.len(),
                    });
                }
                Ok(ClassCycle { class: k, vertices })
            })
            .collect()
    }

    /// Sorted multiset of the class labels on a triangle's edges.
    pub fn triangle_pattern(&self, t: Triangle) -> Result<[usize; 3], GraphError> {
        let mut out = [0; 3];
        for (slot, e) in out.iter_mut().zip(t.edges()) {
            *slot = self.edge_class(e)?.0;
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// The affine map `v ↦ a·v + b (mod q)` with `a` a nonzero square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Automorphism {
    a: usize,
    b: usize,
    q: usize,
}

impl Automorphism {
    pub fn new(params: &PaleyParams, a: usize, b: usize) -> Result<Self, GraphError> {
        let q = params.q();
        if !params.is_square(a) {
            return Err(GraphError::NotAResidue { a, q });
        }
        Ok(Automorphism { a: a % q, b: b % q, q })
    }

    pub fn apply(&self, v: usize) -> usize {
        (self.a * v + self.b) % self.q
    }

    pub fn permutation(&self) -> Vec<usize> {
        (0..self.q).map(|v| self.apply(v)).collect()
    }

    pub fn map_triangle(&self, t: Triangle) -> Triangle {
        let [a, b, c] = t.0;
        Triangle::new(self.apply(a), self.apply(b), self.apply(c))
    }

    /// Every `σ_ab` of `P(q)`.
    pub fn all(params: &PaleyParams) -> Vec<Automorphism> {
        let q = params.q();
        params
            .squares()
            .iter()
            .flat_map(|&a| (0..q).map(move |b| Automorphism { a, b, q }))
            .collect()
    }

    /// The maps `σ_ab` with `a` an edge-class label (a square up to sign),
    /// one per class and translate. Every triangle of `P(17)` is the image
    /// of `Δ(0,1,2)` under exactly one of them.
    pub fn class_representatives(params: &PaleyParams) -> Vec<Automorphism> {
        let q = params.q();
        params
            .classes()
            .into_iter()
            .flat_map(|EdgeClassLabel(a)| (0..q).map(move |b| Automorphism { a, b, q }))
            .collect()
    }

    /// Image of a vertex set, sorted.
    pub fn map_set(&self, vertices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vertices.iter().map(|&v| self.apply(v)).collect();
        out.sort_unstable();
        out
    }
}

/// Returns the vertex permutation of `σ` after checking, pair by pair, that
/// it preserves both adjacency and non-adjacency of `g`.
pub fn apply_automorphism(
    params: &PaleyParams,
    sigma: &Automorphism,
    g: &Graph,
) -> Result<Vec<usize>, GraphError> {
    let q = params.q();
    if g.order() != q || sigma.q != q {
        return Err(GraphError::VertexOutOfRange { vertex: q, n: g.order() });
    }
    let perm = sigma.permutation();
    for u in 0..q {
        for v in u + 1..q {
            if g.has_edge(u, v) != g.has_edge(perm[u], perm[v]) {
                return Err(GraphError::NotAnAutomorphism(u, v));
            }
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        let r17: Vec<_> = quadratic_residues(17).unwrap().into_iter().collect();
        assert_eq!(r17, vec![1, 2, 4, 8, 9, 13, 15, 16]);
        let r5: Vec<_> = quadratic_residues(5).unwrap().into_iter().collect();
        assert_eq!(r5, vec![1, 4]);
        assert_eq!(quadratic_residues(15), Err(GraphError::NotPrime(15)));
    }

    #[test]
    fn residues_13_match_direct_squaring() {
        // direct squaring of 1..12 mod 13
        let mut expected = BTreeSet::new();
        for x in 1..13usize {
            expected.insert((x * x) % 13);
        }
        assert_eq!(quadratic_residues(13).unwrap(), expected);
        assert_eq!(expected.into_iter().collect::<Vec<_>>(), vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn paley_shapes() {
        let p17 = paley(17).unwrap();
        assert_eq!((p17.order(), p17.edge_count()), (17, 68));
        assert!(p17.is_regular(8));
        assert!(p17.has_edge(0, 1));
        assert!(!p17.has_edge(0, 3));

        assert_eq!(paley(5).unwrap(), Graph::cycle(5));

        let p13 = paley(13).unwrap();
        assert_eq!((p13.order(), p13.edge_count()), (13, 39));
        assert!(p13.is_regular(6));

        assert_eq!(paley(7), Err(GraphError::NotOneModFour(7)));
        assert_eq!(paley(21), Err(GraphError::NotPrime(21)));
    }

    #[test]
    fn edge_classes() {
        let p = PaleyParams::new(17).unwrap();
        let labels: Vec<_> = p.classes().into_iter().map(|k| k.0).collect();
        assert_eq!(labels, vec![1, 2, 4, 8]);
        assert_eq!(p.edge_class(Edge::new(0, 16)).unwrap().0, 1);
        assert_eq!(p.edge_class(Edge::new(0, 9)).unwrap().0, 8);
        assert_eq!(p.edge_class(Edge::new(2, 15)).unwrap().0, 4);
        assert_eq!(p.edge_class(Edge::new(0, 3)), Err(GraphError::NotAnEdge(0, 3)));
    }

    #[test]
    fn two_factorization_of_p17() {
        let p = PaleyParams::new(17).unwrap();
        let cycles = p.two_factorization().unwrap();
        assert_eq!(cycles.len(), 4);
        assert_eq!(cycles[0].vertices, (0..17).collect::<Vec<_>>());
        assert_eq!(
            cycles[2].vertices,
            vec![0, 4, 8, 12, 16, 3, 7, 11, 15, 2, 6, 10, 14, 1, 5, 9, 13]
        );
        assert_eq!(
            cycles[3].vertices,
            vec![0, 8, 16, 7, 15, 6, 14, 5, 13, 4, 12, 3, 11, 2, 10, 1, 9]
        );

        let mut seen = BTreeSet::new();
        for c in &cycles {
            let n = c.vertices.len();
            for i in 0..n {
                let e = Edge::new(c.vertices[i], c.vertices[(i + 1) % n]);
                assert_eq!(p.edge_class(e).unwrap(), c.class);
                assert!(seen.insert(e), "edge {e} repeated");
            }
        }
        assert_eq!(&seen, p.graph().edge_set());
    }

    #[test]
    fn triangle_patterns() {
        let p = PaleyParams::new(17).unwrap();
        assert_eq!(p.triangle_pattern(Triangle::new(0, 1, 2)).unwrap(), [1, 1, 2]);
        assert_eq!(p.triangle_pattern(Triangle::new(0, 8, 9)).unwrap(), [1, 8, 8]);

        let mut census = std::collections::BTreeMap::new();
        for t in p.graph().triangles() {
            *census.entry(p.triangle_pattern(t).unwrap()).or_insert(0) += 1;
        }
        let expected: std::collections::BTreeMap<_, _> =
            [([1, 1, 2], 17), ([2, 2, 4], 17), ([4, 4, 8], 17), ([1, 8, 8], 17)]
                .into_iter()
                .collect();
        assert_eq!(census, expected);
    }

    #[test]
    fn automorphisms() {
        let p = PaleyParams::new(17).unwrap();
        let g = p.graph();
        let shift = Automorphism::new(&p, 1, 3).unwrap();
        assert_eq!(shift.map_triangle(Triangle::new(0, 1, 2)), Triangle::new(3, 4, 5));
        let dbl = Automorphism::new(&p, 2, 0).unwrap();
        let t = dbl.map_triangle(Triangle::new(0, 1, 2));
        assert_eq!(t, Triangle::new(0, 2, 4));
        assert_eq!(p.triangle_pattern(t).unwrap(), [2, 2, 4]);

        assert_eq!(
            Automorphism::new(&p, 3, 0),
            Err(GraphError::NotAResidue { a: 3, q: 17 })
        );
        assert!(Automorphism::new(&p, 0, 1).is_err());

        let orbit: BTreeSet<_> = Automorphism::all(&p)
            .iter()
            .map(|s| s.map_triangle(Triangle::new(0, 1, 2)))
            .collect();
        let all: BTreeSet<_> = g.triangles().into_iter().collect();
        assert_eq!(orbit, all);

        let reps: Vec<Triangle> = Automorphism::class_representatives(&p)
            .iter()
            .map(|s| s.map_triangle(Triangle::new(0, 1, 2)))
            .collect();
        assert_eq!(reps.len(), 68);
        assert_eq!(reps.iter().copied().collect::<BTreeSet<_>>(), all);
    }

    #[test]
    fn every_sigma_preserves_adjacency() {
        for q in [13, 17] {
            let p = PaleyParams::new(q).unwrap();
            let g = p.graph();
            for s in Automorphism::all(&p) {
                apply_automorphism(&p, &s, &g).unwrap();
            }
        }
    }

    #[test]
    fn non_residue_multiplier_is_rejected_by_the_check() {
        // forge a map with a = 3 to exercise the adjacency check itself
        let p = PaleyParams::new(17).unwrap();
        let forged = Automorphism { a: 3, b: 0, q: 17 };
        assert!(matches!(
            apply_automorphism(&p, &forged, &p.graph()),
            Err(GraphError::NotAnAutomorphism(_, _))
        ));
    }
}
