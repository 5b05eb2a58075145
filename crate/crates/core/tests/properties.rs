use num_traits::{Signed, Zero};
use proptest::prelude::*;

use inertia_core::certify::{direction_of, enumerate_gadgets, SignVector};
use inertia_core::exactla::{
    bareiss_determinant, congruence_inertia, determinant, inertia, inertia_bound, leibniz_determinant,
    symbolic_determinant, Rational, SymMatrix, WeightMatrix,
};
use inertia_core::graphs::{paley, Edge, Graph};
use inertia_core::independence::independence_number;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn sym_matrix(max_n: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(rational(), n * (n + 1) / 2).prop_map(move |vals| {
            let mut m = SymMatrix::zeros(n);
            let mut it = vals.into_iter();
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, it.next().unwrap());
                }
            }
            m
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

/// Weight matrix with the given values on the edges in sorted order.
fn weighted(g: &Graph, vals: &[Rational]) -> WeightMatrix {
    WeightMatrix::new(g, g.edges().zip(vals.iter().cloned())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sylvester_invariance(m in sym_matrix(8), seed in prop::collection::vec(rational(), 64)) {
        // S = L·D with L unit lower triangular and D a nonzero diagonal
        let n = m.order();
        let mut s = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..i {
                s[i][j] = seed[(i * 7 + j) % 64].clone();
            }
            let d = &seed[(i * 5 + 3) % 64];
            s[i][i] = if d.is_zero() { Rational::from_integer(2.into()) } else { d.clone() };
        }
        let dense = m.to_dense();
        let congruent = mat_mul(&transpose(&s), &mat_mul(&dense, &s));
        let c = SymMatrix::from_rows(&congruent).unwrap();
        prop_assert_eq!(inertia(&c), inertia(&m));
    }

    #[test]
    fn interlacing(m in sym_matrix(9), mask in any::<u16>()) {
        let idx: Vec<usize> = (0..m.order()).filter(|i| mask >> i & 1 == 1).collect();
        let sub = m.principal_submatrix(&idx).unwrap();
        let (a, b) = (inertia(&sub), inertia(&m));
        prop_assert!(a.n_plus <= b.n_plus && a.n_minus <= b.n_minus);
    }

    #[test]
    fn determinant_sign_matches_inertia(m in sym_matrix(8)) {
        let i = inertia(&m);
        let d = determinant(&m);
        prop_assert_eq!(d.is_zero(), i.n_zero > 0);
        if !d.is_zero() {
            prop_assert_eq!(d.is_negative(), i.n_minus % 2 == 1);
        }
    }

    #[test]
    fn integer_kernel_agrees_with_congruence(g in graph(10), vals in prop::collection::vec(-9i64..=9, 45)) {
        let w = weighted(&g, &vals.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>());
        let m = w.to_sym_matrix();
        prop_assert_eq!(inertia(&m), congruence_inertia(&m));
    }

    #[test]
    fn symbolic_determinant_evaluates_to_numeric(g in graph(8), vals in prop::collection::vec(rational(), 28)) {
        let vals = &vals[..g.edge_count()];
        let poly = symbolic_determinant(&g);
        prop_assert_eq!(poly.evaluate(vals), determinant(&weighted(&g, vals).to_sym_matrix()));
    }

    #[test]
    fn leibniz_and_bareiss_agree(g in graph(7)) {
        prop_assert_eq!(leibniz_determinant(&g), bareiss_determinant(&g));
    }

    #[test]
    fn branch_and_bound_matches_brute_force(g in graph(12)) {
        let n = g.order();
        let brute = (0u32..1 << n)
            .filter(|s| {
                let vs: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
                g.is_independent(&vs)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap();
        let r = independence_number(&g).unwrap();
        prop_assert_eq!(r.alpha, brute);
        prop_assert!(g.is_independent(&r.witness));
    }

    #[test]
    fn inertia_bound_is_valid(g in graph(10), vals in prop::collection::vec(rational(), 45)) {
        let w = weighted(&g, &vals[..g.edge_count()]);
        prop_assert!(inertia_bound(&w) >= independence_number(&g).unwrap().alpha);
    }

    #[test]
    fn bound_is_scale_invariant(g in graph(9), vals in prop::collection::vec(rational(), 36), c in rational()) {
        prop_assume!(!c.is_zero());
        let vals = &vals[..g.edge_count()];
        let scaled: Vec<Rational> = vals.iter().map(|x| x * &c).collect();
        prop_assert_eq!(inertia_bound(&weighted(&g, vals)), inertia_bound(&weighted(&g, &scaled)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direction_is_switching_invariant(signs in prop::collection::vec(any::<bool>(), 68), flips in prop::collection::vec(any::<bool>(), 17)) {
        let g = paley(17).unwrap();
        let gadgets = enumerate_gadgets(&g, 3).unwrap();
        let s: SignVector = g.edges().zip(signs).collect();
        let t = s.switched(&flips);
        for x in gadgets.iter().step_by(17) {
            prop_assert_eq!(direction_of(x, &s), direction_of(x, &t));
        }
    }
}

#[test]
fn switching_preserves_inertia() {
    let g = paley(17).unwrap();
    let s: SignVector = g.edges().map(|e: Edge| (e, (e.u() * 3 + e.v()) % 5 == 0)).collect();
    let m = s.unit_weights(&g).unwrap().to_sym_matrix();
    let flips: Vec<bool> = (0..17).map(|v| v % 3 == 1).collect();
    let switched = s.switched(&flips).unit_weights(&g).unwrap().to_sym_matrix();
    assert_eq!(m.switch(&flips), switched);
    assert_eq!(inertia(&m), inertia(&switched));
}
