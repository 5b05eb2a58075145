use num_bigint::BigInt;

use super::EdgePolynomial;
use crate::graphs::Graph;

/// Patterns up to this order use the Leibniz expansion; larger ones use
/// fraction-free elimination over the polynomial ring.
pub const LEIBNIZ_MAX_ORDER: usize = 8;

/// Determinant of the generic weight matrix of `pattern`: zero diagonal,
/// one variable per edge (variable `i` = `i`-th edge in sorted order).
pub fn symbolic_determinant(pattern: &Graph) -> EdgePolynomial {
    if pattern.order() <= LEIBNIZ_MAX_ORDER {
        leibniz_determinant(pattern)
    } else {
        bareiss_determinant(pattern)
    }
}

fn edge_variable_table(pattern: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = pattern.order();
    let mut table = vec![vec![None; n]; n];
    for (k, e) in pattern.edges().enumerate() {
        table[e.u()][e.v()] = Some(k);
        table[e.v()][e.u()] = Some(k);
    }
    table
}

/// Leibniz expansion restricted to permutations with `σ(i) ~ i` for every
/// `i`: with a zero diagonal these are the only nonzero terms.
pub fn leibniz_determinant(pattern: &Graph) -> EdgePolynomial {
    let n = pattern.order();
    let nvars = pattern.edge_count();
    let vars = edge_variable_table(pattern);
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| pattern.neighbors(v).collect()).collect();

    let mut out = EdgePolynomial::zero(nvars);
    if n == 0 {
        return EdgePolynomial::constant(nvars, 1);
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut exps = vec![0u32; nvars];

    fn rec(
        row: usize,
        nbrs: &[Vec<usize>],
        vars: &[Vec<Option<usize>>],
        sigma: &mut [usize],
        used: &mut [bool],
        exps: &mut [u32],
        out: &mut EdgePolynomial,
    ) {
        let n = sigma.len();
        if row == n {
            out.add_term(exps.to_vec(), BigInt::from(permutation_sign(sigma)));
            return;
        }
        for &c in &nbrs[row] {
            if used[c] {
                continue;
            }
            let k = vars[row][c].unwrap();
            used[c] = true;
            sigma[row] = c;
            exps[k] += 1;
            rec(row + 1, nbrs, vars, sigma, used, exps, out);
            exps[k] -= 1;
            used[c] = false;
        }
    }
    rec(0, &nbrs, &vars, &mut sigma, &mut used, &mut exps, &mut out);
    out
}

fn permutation_sign(sigma: &[usize]) -> i64 {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = sigma[x];
        }
    }
    if (n - cycles) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Bareiss elimination over ℤ[edge variables]; every division is exact.
pub fn bareiss_determinant(pattern: &Graph) -> EdgePolynomial {
    let n = pattern.order();
    let nvars = pattern.edge_count();
    let vars = edge_variable_table(pattern);
    let mut a: Vec<Vec<EdgePolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match vars[i][j] {
                    Some(k) => EdgePolynomial::var(nvars, k),
                    None => EdgePolynomial::zero(nvars),
                })
                .collect()
        })
        .collect();
    if n == 0 {
        return EdgePolynomial::constant(nvars, 1);
    }

    let mut prev = EdgePolynomial::constant(nvars, 1);
    let mut negate = false;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return EdgePolynomial::zero(nvars);
        };
        if r != k {
            a.swap(r, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(nvars: usize, c: i64, e: &[u32]) -> EdgePolynomial {
        EdgePolynomial::from_terms(nvars, [(c, e.to_vec())])
    }

    #[test]
    fn k2_and_k3() {
        assert_eq!(symbolic_determinant(&Graph::complete(2)), mono(1, -1, &[2]));
        assert_eq!(symbolic_determinant(&Graph::complete(3)), mono(3, 2, &[1, 1, 1]));
    }

    #[test]
    fn c5_is_the_doubled_cycle_product() {
        // only the two directed 5-cycles survive: no triangles, odd order
        let p = symbolic_determinant(&Graph::cycle(5));
        assert_eq!(p, mono(5, 2, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn c4_is_not_a_monomial() {
        // a²c² + b²d² − 2abcd
        let p = symbolic_determinant(&Graph::cycle(4));
        assert!(p.is_monomial().is_none());
        assert_eq!(p.term_count(), 3);
    }

    #[test]
    fn empty_pattern() {
        assert_eq!(symbolic_determinant(&Graph::empty(0)), EdgePolynomial::constant(0, 1));
        assert!(symbolic_determinant(&Graph::empty(2)).is_zero());
    }

    #[test]
    fn both_routes_agree_on_small_patterns() {
        for g in [Graph::complete(4), Graph::cycle(6), Graph::path(5), Graph::complete(5)] {
            assert_eq!(leibniz_determinant(&g), bareiss_determinant(&g), "{g:?}");
        }
    }
}
