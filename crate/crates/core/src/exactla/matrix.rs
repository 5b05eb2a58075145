use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{MatrixError, Rational};
use crate::graphs::{Edge, Graph};

/// A symmetric matrix over the rationals, stored as its packed upper
/// triangle (row-major, `i <= j`).
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            upper: vec![Rational::zero(); n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from a dense row-major array; fails if it is not symmetric.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare);
            }
            for j in i..n {
                if rows[j][i] != row[j] {
                    return Err(MatrixError::NotSymmetric(i, j));
                }
                m.set(i, j, row[j].clone());
            }
        }
        Ok(m)
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        SymMatrix::from_rows(&rows)
    }

    pub fn adjacency(g: &Graph) -> Self {
        let mut m = SymMatrix::zeros(g.order());
        for e in g.edges() {
            m.set(e.u(), e.v(), Rational::one());
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(j < self.n, "index ({i}, {j}) out of range for order {}", self.n);
        i * (2 * self.n - i + 1) / 2 + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.upper[self.index(i, j)]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let k = self.index(i, j);
        self.upper[k] = value;
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            n: self.n,
            upper: self.upper.iter().map(|x| x * c).collect(),
        }
    }

    /// `D·M·D` for a ±1 diagonal `D` given as sign flips (`true` = −1).
    pub fn switch(&self, flips: &[bool]) -> SymMatrix {
        assert_eq!(flips.len(), self.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in i..self.n {
                if flips[i] != flips[j] {
                    let v = -self.get(i, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `P·M·Pᵀ` where row `i` of `M` becomes row `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> SymMatrix {
        assert_eq!(perm.len(), self.n);
        let mut out = SymMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in i..self.n {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    /// Rows and columns restricted to `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<SymMatrix, MatrixError> {
        let mut seen = vec![false; self.n];
        for &i in indices {
            if i >= self.n {
                return Err(MatrixError::IndexOutOfRange { index: i, n: self.n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(MatrixError::DuplicateIndex(i));
            }
        }
        let k = indices.len();
        let mut out = SymMatrix::zeros(k);
        for a in 0..k {
            for b in a..k {
                out.set(a, b, self.get(indices[a], indices[b]).clone());
            }
        }
        Ok(out)
    }

    /// The matrix scaled by the positive lcm of its denominators, as
    /// integers. `None` if some entry does not fit an `i128`.
    pub(crate) fn to_scaled_i128(&self) -> Option<Vec<Vec<i128>>> {
        let lcm = self
            .upper
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<i128> = self
            .upper
            .iter()
            .map(|x| i128::try_from(x.numer() * (&lcm / x.denom())).ok())
            .collect::<Option<_>>()?;
        let n = self.n;
        let mut dense = vec![vec![0i128; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                dense[i][j] = scaled[k];
                dense[j][i] = scaled[k];
                k += 1;
            }
        }
        Some(dense)
    }

    /// The matrix scaled to integers (positive lcm of denominators) and the
    /// scale factor.
    pub(crate) fn to_scaled_bigint(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let lcm = self
            .upper
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let dense = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let x = self.get(i, j);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();
        (dense, lcm)
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A weight matrix of a graph: a symmetric matrix with zero diagonal whose
/// nonzero entries lie on edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    graph: Graph,
    entries: BTreeMap<Edge, Rational>,
}

impl WeightMatrix {
    /// Zero weights are dropped; a weight on a non-edge is an error.
    pub fn new<I>(graph: &Graph, entries: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (Edge, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (e, w) in entries {
            if !graph.contains_edge(e) {
                return Err(MatrixError::SupportViolation(e.u(), e.v()));
            }
            if map.insert(e, w.clone()).is_some() {
                return Err(MatrixError::DuplicateEntry(e.u(), e.v()));
            }
            if w.is_zero() {
                map.remove(&e);
            }
        }
        Ok(WeightMatrix {
            graph: graph.clone(),
            entries: map,
        })
    }

    /// Validates that `m` is supported on `graph` (zero diagonal, zero off
    /// the edge set).
    pub fn from_sym_matrix(graph: &Graph, m: &SymMatrix) -> Result<Self, MatrixError> {
        if m.order() != graph.order() {
            return Err(MatrixError::OrderMismatch {
                matrix: m.order(),
                graph: graph.order(),
            });
        }
        let mut entries = Vec::new();
        for i in 0..m.order() {
            if !m.get(i, i).is_zero() {
                return Err(MatrixError::DiagonalEntry(i));
            }
            for j in i + 1..m.order() {
                let w = m.get(i, j);
                if !w.is_zero() {
                    entries.push((Edge::new(i, j), w.clone()));
                }
            }
        }
        WeightMatrix::new(graph, entries)
    }

    /// The adjacency matrix.
    pub fn adjacency(graph: &Graph) -> Self {
        WeightMatrix {
            graph: graph.clone(),
            entries: graph.edges().map(|e| (e, Rational::one())).collect(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn entries(&self) -> &BTreeMap<Edge, Rational> {
        &self.entries
    }

    pub fn weight(&self, e: Edge) -> Rational {
        self.entries.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.entries.len() == self.graph.edge_count()
    }

    pub fn to_sym_matrix(&self) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.graph.order());
        for (e, w) in &self.entries {
            m.set(e.u(), e.v(), w.clone());
        }
        m
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from(&self.to_sym_matrix())
    }
}

/// Wire form of a zero-diagonal symmetric matrix:
/// `{"n": 3, "entries": [[0, 1, "3/2"], ...]}` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixJson {
    pub fn parse(s: &str) -> Result<Self, MatrixError> {
        serde_json::from_str(s).map_err(|e| MatrixError::Json(e.to_string()))
    }

    pub fn to_sym_matrix(&self) -> Result<SymMatrix, MatrixError> {
        let mut m = SymMatrix::zeros(self.n);
        let mut seen = std::collections::BTreeSet::new();
        for (pos, (i, j, w)) in self.entries.iter().enumerate() {
            let (i, j) = (*i, *j);
            if i == j {
                return Err(MatrixError::DiagonalEntry(i));
            }
            if i > j {
                return Err(MatrixError::Json(format!("entry {pos}: expected i < j, got ({i}, {j})")));
            }
            if j >= self.n {
                return Err(MatrixError::IndexOutOfRange { index: j, n: self.n });
            }
            if !seen.insert((i, j)) {
                return Err(MatrixError::DuplicateEntry(i, j));
            }
            let value = parse_rational(w).map_err(|msg| MatrixError::Json(format!("entry {pos}: {msg}")))?;
            m.set(i, j, value);
        }
        Ok(m)
    }
}

impl From<&SymMatrix> for MatrixJson {
    /// Off-diagonal nonzero entries only; the diagonal is assumed zero.
    fn from(m: &SymMatrix) -> Self {
        let mut entries = Vec::new();
        for i in 0..m.order() {
            for j in i + 1..m.order() {
                let w = m.get(i, j);
                if !w.is_zero() {
                    entries.push((i, j, w.to_string()));
                }
            }
        }
        MatrixJson { n: m.order(), entries }
    }
}

/// Parses `"p"` or `"p/q"`; decimals and zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| format!("bad rational {s:?}"))?;
    let den = BigInt::from_str(den.trim()).map_err(|_| format!("bad rational {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    if den.is_negative() {
        return Ok(Rational::new(-num, -den));
    }
    Ok(Rational::new(num, den))
}
