use super::gadgets::GadgetCopy;
use super::signs::SignVector;
use super::CertifyError;
use crate::graphs::{Edge, Graph};

/// A linear system over GF(2). Variables are the host edges in sorted order
/// followed by the direction bit `d`; each row is a bitset over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySystem {
    edges: Vec<Edge>,
    nvars: usize,
    rows: Vec<Vec<u64>>,
    rhs: Vec<bool>,
}

fn words(nvars: usize) -> usize {
    nvars.div_ceil(64)
}

fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] ^= 1 << (i % 64);
}

fn bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (a, b) in dst.iter_mut().zip(src) {
        *a ^= b;
    }
}

impl ParitySystem {
    /// A system over `nvars` anonymous variables; each row lists the
    /// variables it contains (repeats cancel) and its right-hand side.
    pub fn from_rows(nvars: usize, rows: &[(Vec<usize>, bool)]) -> Self {
        let mut sys = ParitySystem {
            edges: Vec::new(),
            nvars,
            rows: Vec::new(),
            rhs: Vec::new(),
        };
        for (support, b) in rows {
            sys.push_row(support, *b);
        }
        sys
    }

    fn push_row(&mut self, support: &[usize], rhs: bool) {
        let mut row = vec![0u64; words(self.nvars)];
        for &i in support {
            assert!(i < self.nvars, "variable {i} out of range");
            set_bit(&mut row, i);
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn variable_count(&self) -> usize {
        self.nvars
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Host edges backing the first `edges().len()` variables.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Index of the direction variable, when the system came from gadgets.
    pub fn direction_variable(&self) -> Option<usize> {
        (!self.edges.is_empty()).then_some(self.edges.len())
    }

    /// Variables of row `i`, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.nvars).filter(|&v| bit(&self.rows[i], v)).collect()
    }

    pub fn rhs(&self, i: usize) -> bool {
        self.rhs[i]
    }

    /// `true` when `x` satisfies every row.
    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
            (0..self.nvars).filter(|&v| bit(row, v) && x[v]).count() % 2 == usize::from(b)
        })
    }
}

/// Row offset making `d` mean the direction literally: a gadget of even α
/// with negative determinant has `α + 1` negative eigenvalues.
pub fn direction_shift(alpha: usize) -> bool {
    alpha % 2 == 0
}

/// One row per gadget: `Σ_{e ∈ odd support} x_e + d = const_negative`,
/// shifted by [`direction_shift`] so that a solution's `d` is the common
/// direction. The shift cancels in every Farkas combination, since those
/// use each `d` an even number of times.
pub fn build_parity_system(g: &Graph, gadgets: &[GadgetCopy]) -> Result<ParitySystem, CertifyError> {
    if gadgets.is_empty() {
        return Err(CertifyError::NoGadgets);
    }
    let edges: Vec<Edge> = g.edges().collect();
    let d = edges.len();
    let mut sys = ParitySystem {
        edges,
        nvars: d + 1,
        rows: Vec::with_capacity(gadgets.len()),
        rhs: Vec::with_capacity(gadgets.len()),
    };
    for x in gadgets {
        let mut support: Vec<usize> = x
            .odd_support
            .iter()
            .map(|&e| g.edge_index(e).ok_or(CertifyError::ForeignEdge(e)))
            .collect::<Result<_, _>>()?;
        support.push(d);
        sys.push_row(&support, x.const_negative ^ direction_shift(x.alpha));
    }
    Ok(sys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    Feasible {
        /// Canonical solution: free variables are 0.
        solution: Vec<bool>,
        rank: usize,
        /// Dimension of the solution space.
        nullity: usize,
    },
    Infeasible {
        /// Rows whose sum is `0 = 1`, ascending.
        farkas_rows: Vec<usize>,
    },
}

impl Gf2Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Gf2Solution::Feasible { .. })
    }

    /// Reads the edge variables of a feasible solution as signs, plus `d`.
    pub fn sign_class(&self, sys: &ParitySystem) -> Option<(SignVector, bool)> {
        let Gf2Solution::Feasible { solution, .. } = self else {
            return None;
        };
        let d = sys.direction_variable()?;
        let s = sys.edges.iter().copied().zip(solution.iter().copied()).collect();
        Some((s, solution[d]))
    }
}

struct Pivot {
    col: usize,
    row: Vec<u64>,
    rhs: bool,
    combo: Vec<u64>,
}

/// Gaussian elimination over GF(2) with row-combination tracking.
///
/// Rows are inserted in order and reduced against earlier pivots; the first
/// row that reduces to `0 = 1` yields the Farkas rows.
pub fn solve_gf2(sys: &ParitySystem) -> Gf2Solution {
    let m = sys.rows.len();
    let mut pivots: Vec<Pivot> = Vec::new();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; sys.nvars];
    for (i, (row0, &rhs0)) in sys.rows.iter().zip(&sys.rhs).enumerate() {
        let mut row = row0.clone();
        let mut rhs = rhs0;
        let mut combo = vec![0u64; words(m)];
        set_bit(&mut combo, i);
        loop {
            match lowest_bit(&row) {
                None => {
                    if rhs {
                        let farkas_rows = (0..m).filter(|&r| bit(&combo, r)).collect();
                        return Gf2Solution::Infeasible { farkas_rows };
                    }
                    break;
                }
                Some(col) => match pivot_of_col[col] {
                    Some(p) => {
                        let p = &pivots[p];
                        xor_into(&mut row, &p.row);
                        xor_into(&mut combo, &p.combo);
                        rhs ^= p.rhs;
                    }
                    None => {
                        pivot_of_col[col] = Some(pivots.len());
                        pivots.push(Pivot { col, row, rhs, combo });
                        break;
                    }
                },
            }
        }
    }
    let mut solution = vec![false; sys.nvars];
    let mut order: Vec<&Pivot> = pivots.iter().collect();
    order.sort_by_key(|p| std::cmp::Reverse(p.col));
    for p in order {
        let mut v = p.rhs;
        for j in p.col + 1..sys.nvars {
            if bit(&p.row, j) && solution[j] {
                v = !v;
            }
        }
        solution[p.col] = v;
    }
    debug_assert!(sys.is_satisfied_by(&solution));
    Gf2Solution::Feasible {
        solution,
        rank: pivots.len(),
        nullity: sys.nvars - pivots.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_pair() {
        let sys = ParitySystem::from_rows(1, &[(vec![0], false), (vec![0], true)]);
        assert_eq!(
            solve_gf2(&sys),
            Gf2Solution::Infeasible {
                farkas_rows: vec![0, 1]
            }
        );
    }

    #[test]
    fn single_row_takes_the_pivot() {
        let sys = ParitySystem::from_rows(2, &[(vec![0, 1], true)]);
        assert_eq!(
            solve_gf2(&sys),
            Gf2Solution::Feasible {
                solution: vec![true, false],
                rank: 1,
                nullity: 1
            }
        );
    }

    #[test]
    fn farkas_rows_sum_to_contradiction() {
        // x+y=1, y+z=1, x+z=1 is inconsistent; the fourth row is irrelevant
        let rows = [
            (vec![3], true),
            (vec![0, 1], true),
            (vec![1, 2], true),
            (vec![0, 2], true),
        ];
        let sys = ParitySystem::from_rows(4, &rows);
        let Gf2Solution::Infeasible { farkas_rows } = solve_gf2(&sys) else {
            panic!("expected infeasible");
        };
        assert_eq!(farkas_rows, vec![1, 2, 3]);
    }

    #[test]
    fn back_substitution_satisfies_all_rows() {
        let rows = [
            (vec![0, 2, 4], true),
            (vec![1, 2], false),
            (vec![2, 3, 4], true),
            (vec![0, 1, 2, 3], false),
        ];
        let sys = ParitySystem::from_rows(5, &rows);
        let Gf2Solution::Feasible { solution, rank, .. } = solve_gf2(&sys) else {
            panic!("expected feasible");
        };
        assert!(sys.is_satisfied_by(&solution));
        assert_eq!(rank, 3);
    }
}
