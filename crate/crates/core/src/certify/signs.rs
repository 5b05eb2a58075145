use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::gadgets::{direction_of, GadgetCopy};
use super::CertifyError;
use crate::exactla::{inertia, Inertia, Rational, WeightMatrix};
use crate::graphs::{Edge, Graph, Triangle};

/// Edge signs, `true` meaning a negative weight. May be partial while
/// propagating; gadget directions need every odd-support edge present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignVector {
    signs: BTreeMap<Edge, bool>,
}

impl SignVector {
    pub fn new() -> Self {
        SignVector::default()
    }

    pub fn all_positive(g: &Graph) -> Self {
        g.edges().map(|e| (e, false)).collect()
    }

    /// Signs read off a weight matrix; zero weights are left undetermined.
    pub fn of_weights(w: &WeightMatrix) -> Self {
        w.entries()
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(&e, x)| (e, x.is_negative()))
            .collect()
    }

    pub fn get(&self, e: Edge) -> Option<bool> {
        self.signs.get(&e).copied()
    }

    /// Panics on an undetermined edge.
    pub fn is_negative(&self, e: Edge) -> bool {
        self.get(e)
            .unwrap_or_else(|| panic!("sign of edge {e} is undetermined"))
    }

    pub fn set(&mut self, e: Edge, negative: bool) {
        self.signs.insert(e, negative);
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, bool)> + '_ {
        self.signs.iter().map(|(&e, &s)| (e, s))
    }

    pub fn negative_edges(&self) -> Vec<Edge> {
        self.iter().filter(|&(_, s)| s).map(|(e, _)| e).collect()
    }

    /// `true` when every edge of `g` has a sign.
    pub fn is_total_on(&self, g: &Graph) -> bool {
        g.edges().all(|e| self.signs.contains_key(&e))
    }

    /// Applies the ±1 diagonal similarity `flips` (true = −1).
    pub fn switched(&self, flips: &[bool]) -> SignVector {
        self.iter()
            .map(|(e, s)| (e, s ^ flips[e.u()] ^ flips[e.v()]))
            .collect()
    }

    /// Sign of a triangle: `Some(true)` if the product of its weights is
    /// negative, `None` if an edge is undetermined.
    pub fn triangle_negative(&self, t: Triangle) -> Option<bool> {
        t.edges()
            .iter()
            .try_fold(false, |acc, &e| Some(acc ^ self.get(e)?))
    }

    /// The ±1 weight matrix with these signs.
    pub fn unit_weights(&self, g: &Graph) -> Result<WeightMatrix, CertifyError> {
        let one = Rational::from_integer(1.into());
        let entries = g.edges().map(|e| {
            let w = if self.get(e).unwrap_or(false) { -one.clone() } else { one.clone() };
            (e, w)
        });
        WeightMatrix::new(g, entries).map_err(|e| CertifyError::Matrix(e.to_string()))
    }
}

impl FromIterator<(Edge, bool)> for SignVector {
    fn from_iter<I: IntoIterator<Item = (Edge, bool)>>(iter: I) -> Self {
        SignVector {
            signs: iter.into_iter().collect(),
        }
    }
}

impl Serialize for SignVector {
    /// `{"u-v": 0|1, ...}` in edge order.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.signs.len()))?;
        for (e, &neg) in &self.signs {
            map.serialize_entry(&format!("{}-{}", e.u(), e.v()), &u8::from(neg))?;
        }
        map.end()
    }
}

/// Switches `s` so that every edge of the spanning tree `tree` is positive.
///
/// Returns the switched signs and the diagonal `d` (entries ±1) with
/// `s'_{uv} = s_{uv} · d_u · d_v`. The tree is rooted at vertex 0 and
/// `d_0 = 1`, so a tree-positive `s` comes back unchanged with `d = 1`.
pub fn normalize_signs(
    g: &Graph,
    s: &SignVector,
    tree: &[Edge],
) -> Result<(SignVector, Vec<i8>), CertifyError> {
    let n = g.order();
    let bad = |msg: String| Err(CertifyError::InvalidTree(msg));
    if n == 0 {
        return Ok((s.clone(), Vec::new()));
    }
    if tree.len() != n - 1 {
        return bad(format!("{} edges given, a spanning tree needs {}", tree.len(), n - 1));
    }
    let mut nbrs: Vec<Vec<(usize, Edge)>> = vec![Vec::new(); n];
    for &e in tree {
        if !g.contains_edge(e) {
            return bad(format!("{e} is not an edge of the graph"));
        }
        nbrs[e.u()].push((e.v(), e));
        nbrs[e.v()].push((e.u(), e));
    }
    let mut flip: Vec<Option<bool>> = vec![None; n];
    flip[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &nbrs[u] {
            if flip[v].is_none() {
                let se = s
                    .get(e)
                    .ok_or_else(|| CertifyError::InvalidTree(format!("tree edge {e} has no sign")))?;
                flip[v] = Some(se ^ flip[u].unwrap());
                queue.push_back(v);
            }
        }
    }
    let Some(flips) = flip.into_iter().collect::<Option<Vec<bool>>>() else {
        return bad("tree does not span the graph".into());
    };
    let d = flips.iter().map(|&f| if f { -1 } else { 1 }).collect();
    Ok((s.switched(&flips), d))
}

/// Outcome of triangle sign propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    /// Every edge of the graph received a sign.
    Complete(SignVector),
    /// A fixed point with edges still undetermined.
    Partial {
        signs: SignVector,
        undetermined: Vec<Edge>,
    },
    /// Some covered triangles ended with the wrong sign.
    Contradiction {
        signs: SignVector,
        violated: Vec<Triangle>,
    },
}

/// Unit propagation over the constraint "every covered triangle has sign
/// `global_negative`": a triangle with two determined edges forces the
/// third. Runs in synchronous rounds; all triangles that are fully
/// determined with the wrong sign when the first violation appears are
/// reported.
pub fn propagate_triangle_signs(
    g: &Graph,
    fixed: &SignVector,
    global_negative: bool,
    covered: &[Triangle],
) -> Propagation {
    let mut signs = fixed.clone();
    let violated = |signs: &SignVector| -> Vec<Triangle> {
        covered
            .iter()
            .copied()
            .filter(|&t| signs.triangle_negative(t).is_some_and(|neg| neg != global_negative))
            .collect()
    };
    loop {
        let bad = violated(&signs);
        if !bad.is_empty() {
            return Propagation::Contradiction { signs, violated: bad };
        }
        let mut forced: BTreeMap<Edge, bool> = BTreeMap::new();
        for t in covered {
            let edges = t.edges();
            let open: Vec<Edge> = edges.iter().copied().filter(|&e| signs.get(e).is_none()).collect();
            if let [e] = open[..] {
                let rest = edges
                    .iter()
                    .filter(|&&x| x != e)
                    .fold(false, |acc, &x| acc ^ signs.is_negative(x));
                forced.entry(e).or_insert(rest ^ global_negative);
            }
        }
        if forced.is_empty() {
            break;
        }
        for (e, neg) in forced {
            signs.set(e, neg);
        }
    }
    let undetermined: Vec<Edge> = g.edges().filter(|&e| signs.get(e).is_none()).collect();
    if undetermined.is_empty() {
        Propagation::Complete(signs)
    } else {
        Propagation::Partial { signs, undetermined }
    }
}

/// Two gadgets forced in opposite directions, confirmed numerically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictWitness {
    /// Index into the gadget list of a gadget with `α + 1` positive eigenvalues.
    pub positive: usize,
    /// Index of a gadget with `α + 1` negative eigenvalues.
    pub negative: usize,
    pub positive_inertia: Inertia,
    pub negative_inertia: Inertia,
    /// Inertia bound of the whole weight matrix; exceeds α whenever a
    /// witness exists.
    pub bound: usize,
}

/// Looks for a conflicting gadget pair under the ±1 weights with signs `s`.
pub fn conflict_witness(
    g: &Graph,
    s: &SignVector,
    gadgets: &[GadgetCopy],
) -> Result<Option<ConflictWitness>, CertifyError> {
    conflict_witness_for(&s.unit_weights(g)?, gadgets)
}

/// Same as [`conflict_witness`] for a concrete nowhere-zero weight matrix.
pub fn conflict_witness_for(
    w: &WeightMatrix,
    gadgets: &[GadgetCopy],
) -> Result<Option<ConflictWitness>, CertifyError> {
    let s = SignVector::of_weights(w);
    if !s.is_total_on(w.graph()) {
        return Err(CertifyError::Matrix("weight matrix vanishes on an edge".into()));
    }
    let pos = gadgets.iter().position(|x| direction_of(x, &s));
    let neg = gadgets.iter().position(|x| !direction_of(x, &s));
    let (Some(positive), Some(negative)) = (pos, neg) else {
        return Ok(None);
    };
    let m = w.to_sym_matrix();
    let sub_inertia = |i: usize| -> Result<Inertia, CertifyError> {
        let sub = m
            .principal_submatrix(&gadgets[i].vertices)
            .map_err(|e| CertifyError::Matrix(e.to_string()))?;
        Ok(inertia(&sub))
    };
    Ok(Some(ConflictWitness {
        positive,
        negative,
        positive_inertia: sub_inertia(positive)?,
        negative_inertia: sub_inertia(negative)?,
        bound: inertia(&m).bound(),
    }))
}

/// Triangles of `g` that are exactly the odd support of some gadget.
pub fn covered_triangles(g: &Graph, gadgets: &[GadgetCopy]) -> Vec<Triangle> {
    let supports: BTreeSet<Vec<Edge>> = gadgets
        .iter()
        .filter(|x| x.odd_support.len() == 3)
        .map(|x| x.odd_support.clone())
        .collect();
    g.triangles()
        .into_iter()
        .filter(|t| {
            let mut e = t.edges().to_vec();
            e.sort_unstable();
            supports.contains(&e)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::paley;

    #[test]
    fn path_with_alternating_signs_normalizes() {
        let g = Graph::path(5);
        let s: SignVector = g.edges().enumerate().map(|(i, e)| (e, i % 2 == 1)).collect();
        let tree: Vec<Edge> = g.edges().collect();
        let (t, d) = normalize_signs(&g, &s, &tree).unwrap();
        assert_eq!(t, SignVector::all_positive(&g));
        assert_eq!(d, vec![1, 1, -1, -1, 1]);
    }

    #[test]
    fn tree_positive_is_a_fixed_point() {
        let g = paley(17).unwrap();
        let mut s = SignVector::all_positive(&g);
        s.set(Edge::new(0, 16), true);
        s.set(Edge::new(0, 8), true);
        let tree: Vec<Edge> = (0..16).map(|i| Edge::new(i, i + 1)).collect();
        let (t, d) = normalize_signs(&g, &s, &tree).unwrap();
        assert_eq!(t, s);
        assert!(d.iter().all(|&x| x == 1));
    }

    #[test]
    fn rejects_non_trees() {
        let g = Graph::cycle(4);
        let s = SignVector::all_positive(&g);
        let short = [Edge::new(0, 1), Edge::new(1, 2)];
        assert!(normalize_signs(&g, &s, &short).is_err());
        let chord = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
        assert!(normalize_signs(&g, &s, &chord).is_err());
        let cyc = [Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)];
        assert!(normalize_signs(&g, &s, &cyc).is_ok());
    }

    #[test]
    fn propagation_on_a_triangle() {
        let g = Graph::complete(3);
        let t = g.triangles();
        let mut s = SignVector::new();
        s.set(Edge::new(0, 1), true);
        s.set(Edge::new(0, 2), false);
        match propagate_triangle_signs(&g, &s, false, &t) {
            Propagation::Complete(out) => assert_eq!(out.get(Edge::new(1, 2)), Some(true)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            propagate_triangle_signs(&g, &SignVector::new(), false, &t),
            Propagation::Partial { .. }
        ));
        let mut all = s.clone();
        all.set(Edge::new(1, 2), false);
        assert!(matches!(
            propagate_triangle_signs(&g, &all, false, &t),
            Propagation::Contradiction { .. }
        ));
    }
}
