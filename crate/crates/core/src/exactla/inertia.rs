use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, SymMatrix, WeightMatrix};

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Inertia { n_plus, n_minus, n_zero }
    }

    pub fn order(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    /// `min(n − n₊, n − n₋)`.
    pub fn bound(&self) -> usize {
        let n = self.order();
        (n - self.n_plus).min(n - self.n_minus)
    }

    /// `n₀ + min(n₊, n₋)`; always equal to [`Inertia::bound`].
    pub fn bound_alt(&self) -> usize {
        self.n_zero + self.n_plus.min(self.n_minus)
    }

    /// Inertia of the negated matrix.
    pub fn negated(&self) -> Self {
        Inertia::new(self.n_minus, self.n_plus, self.n_zero)
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Exact inertia. Integer-scalable matrices whose entries fit in `i128` go
/// through the fraction-free kernel; everything else (and any input whose
/// minors overflow there) uses [`congruence_inertia`].
pub fn inertia(m: &SymMatrix) -> Inertia {
    m.to_scaled_i128()
        .and_then(integer_inertia)
        .unwrap_or_else(|| congruence_inertia(m))
}

/// Exact inertia of an integer symmetric matrix given by rows.
pub(crate) fn integer_rows_inertia(rows: &[Vec<i64>]) -> Inertia {
    let a = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    integer_inertia(a).unwrap_or_else(|| {
        congruence_inertia(&SymMatrix::from_integer_rows(rows).expect("square symmetric rows"))
    })
}

/// Symmetric congruence elimination over the rationals.
///
/// Pivots on the first nonzero diagonal entry of the live block. When the
/// live diagonal is entirely zero but some off-diagonal entry `b` survives,
/// the 2×2 block `[[0, b], [b, 0]]` is eliminated instead and contributes one
/// positive and one negative sign.
pub fn congruence_inertia(m: &SymMatrix) -> Inertia {
    let n = m.order();
    let mut a = m.to_dense();
    let mut live: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);

    while !live.is_empty() {
        if let Some(k) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let p = live.remove(k);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let col: Vec<Rational> = live.iter().map(|&i| &a[i][p] / &pivot).collect();
            for (x, &i) in live.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                for &j in &live[x..] {
                    let upd = &a[i][j] - &col[x] * &a[p][j];
                    a[j][i] = upd.clone();
                    a[i][j] = upd;
                }
            }
            continue;
        }

        let pair = live.iter().enumerate().find_map(|(x, &i)| {
            live[x + 1..]
                .iter()
                .position(|&j| !a[i][j].is_zero())
                .map(|y| (x, x + 1 + y))
        });
        let Some((x, y)) = pair else { break };
        let (i, j) = (live[x], live[y]);
        let b = a[i][j].clone();
        live.remove(y);
        live.remove(x);
        pos += 1;
        neg += 1;
        // Schur complement of [[0, b], [b, 0]]: a_kl -= (a_ki a_jl + a_kj a_il) / b
        let ci: Vec<Rational> = live.iter().map(|&k| &a[k][i] / &b).collect();
        let cj: Vec<Rational> = live.iter().map(|&k| &a[k][j] / &b).collect();
        for (s, &k) in live.iter().enumerate() {
            for &l in &live[s..] {
                let upd = &a[k][l] - (&ci[s] * &a[j][l] + &cj[s] * &a[i][l]);
                a[l][k] = upd.clone();
                a[k][l] = upd;
            }
        }
    }
    Inertia::new(pos, neg, live.len())
}

/// Fraction-free symmetric elimination (Bareiss with diagonal pivots).
///
/// After each step the live entries are bordered minors of the already
/// eliminated block, so the division by the previous pivot is exact and the
/// sign of the true pivot is `sign(pivot) · sign(previous pivot)`. A live
/// block with zero diagonal is first transformed by the unimodular
/// congruence "add row and column `j` to row and column `i`", which leaves
/// the eliminated block alone and keeps the entries exact minors of the
/// transformed matrix. Returns `None` if a minor leaves `i128`.
pub(crate) fn integer_inertia(mut a: Vec<Vec<i128>>) -> Option<Inertia> {
    let mut live: Vec<usize> = (0..a.len()).collect();
    let mut prev: i128 = 1;
    let (mut pos, mut neg) = (0, 0);

    while !live.is_empty() {
        if live.iter().all(|&i| a[i][i] == 0) {
            let pair = live.iter().enumerate().find_map(|(x, &i)| {
                live[x + 1..].iter().find(|&&j| a[i][j] != 0).map(|&j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            add_congruence(&mut a, &live, i, j)?;
        }
        let k = live.iter().position(|&i| a[i][i] != 0).expect("nonzero diagonal");
        let p = live.remove(k);
        let pivot = a[p][p];
        if (pivot > 0) == (prev > 0) {
            pos += 1;
        } else {
            neg += 1;
        }
        for x in 0..live.len() {
            let i = live[x];
            for &j in &live[x..] {
                let v = bareiss_step(pivot, a[i][j], a[i][p], a[p][j], prev)?;
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        prev = pivot;
    }
    Some(Inertia::new(pos, neg, live.len()))
}

/// Row and column `j` added to row and column `i` over the live indices;
/// with a zero diagonal the new `a[i][i]` is `2·a[i][j]`.
fn add_congruence(a: &mut [Vec<i128>], live: &[usize], i: usize, j: usize) -> Option<()> {
    let aii = a[i][i]
        .checked_add(a[i][j].checked_mul(2)?)?
        .checked_add(a[j][j])?;
    for &l in live {
        if l != i {
            let v = a[i][l].checked_add(a[j][l])?;
            a[i][l] = v;
            a[l][i] = v;
        }
    }
    a[i][i] = aii;
    Some(())
}

/// `(p·x − u·v) / d`, exact, falling back to big integers on overflow.
#[inline]
fn bareiss_step(p: i128, x: i128, u: i128, v: i128, d: i128) -> Option<i128> {
    let fast = p
        .checked_mul(x)
        .zip(u.checked_mul(v))
        .and_then(|(a, b)| a.checked_sub(b));
    match fast {
        Some(num) => {
            debug_assert_eq!(num % d, 0);
            Some(num / d)
        }
        None => {
            let num = BigInt::from(p) * x - BigInt::from(u) * v;
            i128::try_from(num / d).ok()
        }
    }
}

/// Exact determinant by Bareiss elimination with row pivoting on the
/// integer-scaled matrix.
pub fn determinant(m: &SymMatrix) -> Rational {
    let n = m.order();
    let (mut a, scale) = m.to_scaled_bigint();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if r != k {
            a.swap(r, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    let det = if negate { -det } else { det };
    Rational::new(det, num_traits::pow(scale, n))
}

/// The inertia bound `min(n − n₊(W), n − n₋(W))` of a weight matrix.
pub fn inertia_bound(w: &WeightMatrix) -> usize {
    let i = inertia(&w.to_sym_matrix());
    debug_assert_eq!(i.bound(), i.bound_alt());
    i.bound()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rational;
    use crate::graphs::{paley, Graph};

    fn int_matrix(rows: &[Vec<i64>]) -> SymMatrix {
        SymMatrix::from_integer_rows(rows).unwrap()
    }

    #[test]
    fn small_inertias() {
        assert_eq!(inertia(&SymMatrix::zeros(1)), Inertia::new(0, 0, 1));
        let swap = int_matrix(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(inertia(&swap), Inertia::new(1, 1, 0));
        assert_eq!(congruence_inertia(&swap), Inertia::new(1, 1, 0));
        assert_eq!(inertia(&SymMatrix::zeros(0)), Inertia::new(0, 0, 0));
    }

    #[test]
    fn paley17_adjacency() {
        // spectrum 8, (−1 ± √17)/2 each with multiplicity 8
        let a = SymMatrix::adjacency(&paley(17).unwrap());
        assert_eq!(inertia(&a), Inertia::new(9, 8, 0));
        assert_eq!(congruence_inertia(&a), Inertia::new(9, 8, 0));
    }

    #[test]
    fn k3_submatrix() {
        let a = SymMatrix::adjacency(&Graph::complete(3));
        assert_eq!(inertia(&a), Inertia::new(1, 2, 0));
    }

    #[test]
    fn integer_kernel_handles_zero_diagonals() {
        assert_eq!(
            integer_inertia(vec![vec![0, 1], vec![1, 0]]),
            Some(Inertia::new(1, 1, 0))
        );
        let c5 = SymMatrix::adjacency(&Graph::cycle(5)).to_scaled_i128().unwrap();
        assert_eq!(integer_inertia(c5), Some(Inertia::new(3, 2, 0)));
        assert_eq!(
            integer_inertia(vec![vec![0, 0], vec![0, 0]]),
            Some(Inertia::new(0, 0, 2))
        );
        assert_eq!(
            integer_inertia(vec![vec![2, 1], vec![1, 0]]),
            Some(Inertia::new(1, 1, 0))
        );
    }

    #[test]
    fn big_entries_fall_back_exactly() {
        let big = Rational::from_integer(BigInt::from(10).pow(40));
        let mut m = SymMatrix::zeros(2);
        m.set(0, 0, big.clone());
        m.set(1, 1, -big);
        assert!(m.to_scaled_i128().is_none());
        assert_eq!(inertia(&m), Inertia::new(1, 1, 0));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&SymMatrix::identity(3)), Rational::one());
        let swap = int_matrix(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&swap), -Rational::one());
        let half = SymMatrix::identity(2).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(determinant(&half), Rational::new(1.into(), 4.into()));
        assert_eq!(determinant(&SymMatrix::zeros(3)), Rational::zero());
    }

    #[test]
    fn bound_forms() {
        let i = Inertia::new(13, 4, 0);
        assert_eq!((i.bound(), i.bound_alt()), (4, 4));
        let k2 = WeightMatrix::adjacency(&Graph::complete(2));
        assert_eq!(inertia_bound(&k2), 1);
        let p = paley(17).unwrap();
        assert_eq!(inertia_bound(&WeightMatrix::adjacency(&p)), 8);
    }
}
