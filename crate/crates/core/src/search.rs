//! Searching for weight matrices with a small inertia bound: per-class
//! circulant weightings of Paley graphs, and seeded random edge weights.
//!
//! Every reported inertia is exact. Only integer weights are searched;
//! rescaling a rational weighting changes neither the inertia nor the bound.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactla::{integer_rows_inertia, Inertia, MatrixJson, Rational, WeightMatrix};
use crate::graphs::{EdgeClassLabel, Graph, GraphError, PaleyParams};
use crate::independence::{independence_number, IndependenceError};

/// Default grid radius.
pub const DEFAULT_RADIUS: i64 = 32;

/// Default cap on grid points evaluated after symmetry reduction.
pub const DEFAULT_GRID_BUDGET: u64 = 20_000_000;

/// Largest edge weight magnitude drawn by the random search.
pub const MAX_MAGNITUDE: i64 = 64;

/// How many argmin weightings a grid report lists.
pub const ARGMIN_CAP: usize = 64;

const CHUNK: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Independence(#[from] IndependenceError),
    #[error("empty weight range")]
    EmptyRange,
    #[error("expected {expected} class weights, got {got}")]
    WrongClassCount { expected: usize, got: usize },
    #[error("a class weighting needs at least one nonzero weight")]
    AllZero,
}

/// One integer weight per edge class of a Paley graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassWeighting {
    weights: BTreeMap<EdgeClassLabel, i64>,
}

impl ClassWeighting {
    /// Weights listed in ascending class order (`1, 2, 4, 8` for q = 17).
    pub fn new(params: &PaleyParams, weights: &[i64]) -> Result<Self, SearchError> {
        let classes = params.classes();
        if classes.len() != weights.len() {
            return Err(SearchError::WrongClassCount {
                expected: classes.len(),
                got: weights.len(),
            });
        }
        if weights.iter().all(|&w| w == 0) {
            return Err(SearchError::AllZero);
        }
        Ok(ClassWeighting {
            weights: classes.into_iter().zip(weights.iter().copied()).collect(),
        })
    }

    pub fn weight(&self, c: EdgeClassLabel) -> i64 {
        self.weights.get(&c).copied().unwrap_or(0)
    }

    /// Weights in ascending class order.
    pub fn values(&self) -> Vec<i64> {
        self.weights.values().copied().collect()
    }
}

impl Serialize for ClassWeighting {
    /// `{"1": 30, "2": -22, ...}`
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.weights.len()))?;
        for (EdgeClassLabel(c), w) in &self.weights {
            map.serialize_entry(&c.to_string(), w)?;
        }
        map.end()
    }
}

/// The circulant matrix with entry `w[class(v − u)]` on every edge.
pub fn circulant_weight_matrix(params: &PaleyParams, w: &ClassWeighting) -> WeightMatrix {
    let g = params.graph();
    let entries = g.edges().map(|e| {
        let c = params.edge_class(e).expect("Paley edge");
        (e, Rational::from_integer(w.weight(c).into()))
    });
    WeightMatrix::new(&g, entries).expect("supported on the edges")
}

/// Class index of each difference `0..q`, `None` for non-edges.
fn difference_classes(params: &PaleyParams) -> Vec<Option<usize>> {
    let q = params.q();
    let classes = params.classes();
    (0..q)
        .map(|d| {
            if d == 0 || !params.is_square(d) {
                return None;
            }
            classes.iter().position(|x| x.0 == d.min(q - d))
        })
        .collect()
}

fn circulant_rows_with(classes: &[Option<usize>], w: &[i64]) -> Vec<Vec<i64>> {
    let q = classes.len();
    (0..q)
        .map(|u| {
            (0..q)
                .map(|v| classes[(v + q - u) % q].map_or(0, |k| w[k]))
                .collect()
        })
        .collect()
}

fn circulant_rows(params: &PaleyParams, w: &[i64]) -> Vec<Vec<i64>> {
    circulant_rows_with(&difference_classes(params), w)
}

/// The best weighting or matrix found by a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Best {
    Weights(ClassWeighting),
    Matrix(WeightMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub alpha: usize,
    pub bound: usize,
    pub inertia: Inertia,
    pub best: Best,
    pub seed: Option<u64>,
    /// Points evaluated.
    pub iterations: u64,
    /// Set when the budget ran out before the search domain did.
    pub partial: bool,
    /// Minimizers (grid search only), up to [`ARGMIN_CAP`], in grid order.
    pub argmin: Vec<ClassWeighting>,
    pub argmin_total: u64,
}

impl SearchReport {
    pub fn best_gap(&self) -> i64 {
        self.bound as i64 - self.alpha as i64
    }
}

impl Serialize for SearchReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("best_gap", &self.best_gap())?;
        map.serialize_entry("bound", &self.bound)?;
        map.serialize_entry("alpha", &self.alpha)?;
        match &self.best {
            Best::Weights(w) => map.serialize_entry("weights", w)?,
            Best::Matrix(m) => map.serialize_entry("matrix", &m.to_json())?,
        }
        map.serialize_entry("seed", &self.seed)?;
        map.serialize_entry("iterations", &self.iterations)?;
        map.serialize_entry("inertia", &self.inertia)?;
        map.serialize_entry("partial", &self.partial)?;
        if !self.argmin.is_empty() {
            map.serialize_entry("argmin_total", &self.argmin_total)?;
            map.serialize_entry("argmin", &self.argmin)?;
        }
        map.end()
    }
}

/// Permutations of the class list induced by `v ↦ a·v` for each square `a`.
fn class_permutations(params: &PaleyParams) -> Vec<Vec<usize>> {
    let q = params.q();
    let classes = params.classes();
    let index = |d: usize| {
        let c = d.min(q - d);
        classes.iter().position(|x| x.0 == c).unwrap()
    };
    let mut perms: Vec<Vec<usize>> = params
        .squares()
        .iter()
        .map(|&a| classes.iter().map(|c| index(a * c.0 % q)).collect())
        .collect();
    perms.sort();
    perms.dedup();
    perms
}

/// `w` is visited only if it is the lexicographic maximum of its orbit
/// under class permutations and negation, and its entries are coprime.
fn is_canonical(w: &[i64], perms: &[Vec<usize>]) -> bool {
    if w.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
        return false;
    }
    let mut img = vec![0; w.len()];
    for p in perms {
        for sign in [1, -1] {
            for (i, &pi) in p.iter().enumerate() {
                img[pi] = sign * w[i];
            }
            if img.as_slice() > w {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search over class weightings with entries in `range`.
///
/// For a symmetric range, weightings related by a class permutation coming
/// from a multiplier automorphism, by negation, or by a common factor give
/// the same bound, and only one representative of each is evaluated.
/// Otherwise every nonzero point is evaluated.
pub fn grid_search_circulant(
    params: &PaleyParams,
    range: RangeInclusive<i64>,
) -> Result<SearchReport, SearchError> {
    grid_search_circulant_with_budget(params, range, DEFAULT_GRID_BUDGET)
}

pub fn grid_search_circulant_with_budget(
    params: &PaleyParams,
    range: RangeInclusive<i64>,
    budget: u64,
) -> Result<SearchReport, SearchError> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo > hi {
        return Err(SearchError::EmptyRange);
    }
    let alpha = independence_number(&params.graph())?.alpha;
    let k = params.classes().len();
    let reduce = lo == -hi;
    let perms = class_permutations(params);
    let diff = difference_classes(params);
    let side = (hi - lo + 1) as u64;
    let rest = side.pow(k as u32 - 1);

    let mut iterations = 0u64;
    let mut partial = false;
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut argmin = Vec::new();
    let mut argmin_total = 0u64;
    // one slice per value of the first class weight, evaluated in parallel
    // and merged in grid order
    'outer: for first in lo..=hi {
        let mut points = Vec::new();
        let mut w = vec![lo; k];
        w[0] = first;
        for idx in 0..rest {
            let mut r = idx;
            for slot in w.iter_mut().skip(1).rev() {
                *slot = lo + (r % side) as i64;
                r /= side;
            }
            let keep = if reduce {
                is_canonical(&w, &perms)
            } else {
                w.iter().any(|&x| x != 0)
            };
            if keep {
                if iterations + points.len() as u64 == budget {
                    partial = true;
                    break;
                }
                points.push(w.clone());
            }
        }
        let bounds: Vec<usize> = points
            .par_iter()
            .map(|w| integer_rows_inertia(&circulant_rows_with(&diff, w)).bound())
            .collect();
        iterations += points.len() as u64;
        for (bound, w) in bounds.into_iter().zip(points) {
            match &best {
                Some((b, _)) if bound > *b => {}
                Some((b, _)) if bound == *b => {
                    argmin_total += 1;
                    if argmin.len() < ARGMIN_CAP {
                        argmin.push(w);
                    }
                }
                _ => {
                    best = Some((bound, w.clone()));
                    argmin = vec![w];
                    argmin_total = 1;
                }
            }
        }
        if partial {
            break 'outer;
        }
    }
    let Some((bound, w)) = best else {
        return Err(SearchError::EmptyRange);
    };
    let inertia = integer_rows_inertia(&circulant_rows(params, &w));
    debug_assert_eq!(inertia.bound(), bound);
    let to_weighting = |w: Vec<i64>| ClassWeighting::new(params, &w).expect("nonzero");
    Ok(SearchReport {
        alpha,
        bound,
        inertia,
        best: Best::Weights(to_weighting(w)),
        seed: None,
        iterations,
        partial,
        argmin: argmin.into_iter().map(to_weighting).collect(),
        argmin_total,
    })
}

/// Options for [`random_edge_search_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSearchConfig {
    pub iterations: u64,
    pub seed: u64,
    /// Replace all but the first draw of each chunk by a single-edge
    /// perturbation of the chunk's current point, kept when the bound does
    /// not grow.
    pub hill_climb: bool,
    /// Draw only positive weights.
    pub nonnegative: bool,
}

/// Seeded random search over nonzero integer weights `|w| ≤ 64` on the edges.
pub fn random_edge_search(g: &Graph, alpha: usize, iterations: u64, seed: u64) -> SearchReport {
    random_edge_search_with(
        g,
        alpha,
        RandomSearchConfig {
            iterations,
            seed,
            hill_climb: false,
            nonnegative: false,
        },
    )
}

fn draw(rng: &mut ChaCha8Rng, nonnegative: bool) -> i64 {
    let m = rng.gen_range(1..=MAX_MAGNITUDE);
    if nonnegative || rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

fn edge_rows(n: usize, edges: &[(usize, usize)], w: &[i64]) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0; n]; n];
    for (&(u, v), &x) in edges.iter().zip(w) {
        rows[u][v] = x;
        rows[v][u] = x;
    }
    rows
}

/// The iteration stream is cut into fixed chunks, each with its own
/// ChaCha8 stream of `seed`, so the report does not depend on the number
/// of threads.
pub fn random_edge_search_with(g: &Graph, alpha: usize, cfg: RandomSearchConfig) -> SearchReport {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u(), e.v())).collect();
    let chunks = cfg.iterations.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(c);
            let len = CHUNK.min(cfg.iterations - c * CHUNK);
            let mut best: Option<(usize, Vec<i64>)> = None;
            let mut current: Option<(usize, Vec<i64>)> = None;
            for _ in 0..len {
                let w: Vec<i64> = match (&current, cfg.hill_climb && !edges.is_empty()) {
                    (Some((_, cur)), true) => {
                        let mut w = cur.clone();
                        let i = rng.gen_range(0..w.len());
                        w[i] = draw(&mut rng, cfg.nonnegative);
                        w
                    }
                    _ => edges.iter().map(|_| draw(&mut rng, cfg.nonnegative)).collect(),
                };
                let bound = integer_rows_inertia(&edge_rows(n, &edges, &w)).bound();
                if current.as_ref().map_or(true, |(b, _)| bound <= *b) {
                    current = Some((bound, w.clone()));
                }
                if best.as_ref().map_or(true, |(b, _)| bound < *b) {
                    best = Some((bound, w));
                }
            }
            (best, c)
        })
        .filter_map(|(b, c)| b.map(|(bound, w)| (bound, c, w)))
        .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    let w = match best {
        Some((_, _, w)) => w,
        None => vec![1; edges.len()],
    };
    let rows = edge_rows(n, &edges, &w);
    let inertia = integer_rows_inertia(&rows);
    let matrix = WeightMatrix::new(
        g,
        g.edges()
            .zip(&w)
            .map(|(e, &x)| (e, Rational::from_integer(x.into()))),
    )
    .expect("supported on the edges");
    SearchReport {
        alpha,
        bound: inertia.bound(),
        inertia,
        best: Best::Matrix(matrix),
        seed: Some(cfg.seed),
        iterations: cfg.iterations,
        partial: false,
        argmin: Vec::new(),
        argmin_total: 0,
    }
}

/// JSON form of a report's best matrix, when it has one.
pub fn best_matrix_json(r: &SearchReport) -> Option<MatrixJson> {
    match &r.best {
        Best::Matrix(m) => Some(m.to_json()),
        Best::Weights(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{inertia, SymMatrix};
    use crate::graphs::paley;

    #[test]
    fn class_weighting_has_gap_one() {
        let p = PaleyParams::new(17).unwrap();
        let w = ClassWeighting::new(&p, &[30, -22, -12, 7]).unwrap();
        let m = circulant_weight_matrix(&p, &w).to_sym_matrix();
        assert_eq!(inertia(&m), Inertia::new(13, 4, 0));
        assert_eq!(integer_rows_inertia(&circulant_rows(&p, &w.values())), Inertia::new(13, 4, 0));
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"1":30,"2":-22,"4":-12,"8":7}"#
        );
    }

    #[test]
    fn unit_weights_give_the_adjacency_matrix() {
        let p = PaleyParams::new(17).unwrap();
        let w = ClassWeighting::new(&p, &[1, 1, 1, 1]).unwrap();
        let m = circulant_weight_matrix(&p, &w).to_sym_matrix();
        assert_eq!(m, SymMatrix::adjacency(&paley(17).unwrap()));
        assert_eq!(inertia(&m), Inertia::new(9, 8, 0));

        let p5 = PaleyParams::new(5).unwrap();
        let c5 = circulant_weight_matrix(&p5, &ClassWeighting::new(&p5, &[1]).unwrap());
        assert_eq!(inertia(&c5.to_sym_matrix()), Inertia::new(3, 2, 0));
    }

    #[test]
    fn rejects_bad_weightings() {
        let p = PaleyParams::new(17).unwrap();
        assert_eq!(ClassWeighting::new(&p, &[0, 0, 0, 0]), Err(SearchError::AllZero));
        assert!(matches!(
            ClassWeighting::new(&p, &[1, 2]),
            Err(SearchError::WrongClassCount { expected: 4, got: 2 })
        ));
    }

    #[test]
    fn circulant_commutes_with_the_shift() {
        for q in [13, 17] {
            let p = PaleyParams::new(q).unwrap();
            let vals: Vec<i64> = (0..p.classes().len() as i64).map(|i| 3 * i - 4).collect();
            let w = ClassWeighting::new(&p, &vals).unwrap();
            let m = circulant_weight_matrix(&p, &w).to_sym_matrix();
            let shift: Vec<usize> = (0..q).map(|v| (v + 1) % q).collect();
            assert_eq!(m.permute(&shift), m);
        }
    }

    #[test]
    fn class_permutations_for_17_are_rotations() {
        let p = PaleyParams::new(17).unwrap();
        let perms = class_permutations(&p);
        assert_eq!(perms.len(), 4);
        assert!(perms.contains(&vec![1, 2, 3, 0]));
    }

    #[test]
    fn canonical_points_cover_every_orbit() {
        // each nonzero primitive point of a small grid is an image of
        // exactly one canonical point
        let p = PaleyParams::new(17).unwrap();
        let perms = class_permutations(&p);
        let mut covered = std::collections::BTreeSet::new();
        let r = -2..=2i64;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let w = [a, b, c, d];
                        if is_canonical(&w, &perms) {
                            for perm in &perms {
                                for sign in [1, -1] {
                                    let mut img = [0; 4];
                                    for (i, &pi) in perm.iter().enumerate() {
                                        img[pi] = sign * w[i];
                                    }
                                    covered.insert(img);
                                }
                            }
                        }
                    }
                }
            }
        }
        let primitive = (0..625)
            .map(|i: i64| [i / 125 - 2, i / 25 % 5 - 2, i / 5 % 5 - 2, i % 5 - 2])
            .filter(|w| w.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1)
            .count();
        assert_eq!(covered.len(), primitive);
    }

    #[test]
    fn c5_grid_is_tight() {
        let p = PaleyParams::new(5).unwrap();
        let r = grid_search_circulant(&p, -2..=2).unwrap();
        assert_eq!(r.best_gap(), 0);
        assert_eq!(r.bound, 2);
        assert!(!r.partial);
    }

    #[test]
    fn budget_marks_partial() {
        let p = PaleyParams::new(13).unwrap();
        let r = grid_search_circulant_with_budget(&p, -3..=3, 5).unwrap();
        assert!(r.partial);
        assert_eq!(r.iterations, 5);
    }

    #[test]
    fn random_search_is_deterministic_and_finds_k3() {
        let k3 = Graph::complete(3);
        let r = random_edge_search(&k3, 1, 50, 7);
        assert_eq!(r.best_gap(), 0);

        let p = paley(13).unwrap();
        let cfg = RandomSearchConfig {
            iterations: 600,
            seed: 11,
            hill_climb: true,
            nonnegative: false,
        };
        let a = serde_json::to_string(&random_edge_search_with(&p, 3, cfg)).unwrap();
        let b = serde_json::to_string(&random_edge_search_with(&p, 3, cfg)).unwrap();
        assert_eq!(a, b);
    }
}
