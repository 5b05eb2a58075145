//! The two 7-vertex gadget graphs found inside `P(17)`.
//!
//! Edge variables follow sorted edge order, so for `g1` the letters
//! `a..h` are `(0,1) (0,2) (1,2) (1,3) (2,4) (3,4) (3,5) (4,6)` and for `g2`
//! the letters `a..i` are `(0,1) (1,2) (1,3) (1,4) (2,3) (2,5) (3,4) (4,6) (5,6)`.

use crate::graphs::Graph;

/// A triangle with two pendant paths; determinant `2abc·g²h²`.
pub fn g1() -> Graph {
    Graph::new(
        7,
        [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6)],
    )
    .expect("valid pattern")
}

/// A 5-cycle with a pendant vertex and chords; determinant `−2a²·efghi`.
pub fn g2() -> Graph {
    Graph::new(
        7,
        [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 4), (4, 6), (5, 6)],
    )
    .expect("valid pattern")
}
