//! Non-tightness certificates.
//!
//! A *gadget* is an induced subgraph on `2α + 1` vertices, with the same
//! independence number as the host, whose generic determinant is a single
//! monomial. Once every edge weight is nonzero (which α-criticality forces
//! on an optimal weight matrix), the gadget's submatrix is nonsingular and
//! the bound on the subgraph pins its inertia to `(α+1, α, 0)` or
//! `(α, α+1, 0)`. Which one depends only on the edge signs, through a parity
//! over the monomial's odd-exponent edges.
//!
//! An optimal weight matrix cannot have one principal submatrix with `α + 1`
//! positive eigenvalues and another with `α + 1` negative ones, so all
//! gadgets must point the same way. That is a linear system over GF(2); if
//! it has no solution, a subset of rows summing to `0 = 1` is the
//! certificate.

use std::fmt;

use thiserror::Error;

use crate::graphs::{Edge, Graph};
use crate::independence::{independence_number, is_alpha_critical, IndependenceError};

mod certificate;
mod gadgets;
mod parity;
pub mod patterns;
mod signs;

pub use certificate::{verify_certificate, GadgetClaim, NonTightnessCertificate, VerifyFailure};
pub use gadgets::{direction_of, enumerate_gadgets, GadgetCopy, MAX_GADGET_ORDER, MAX_SUBSETS};
pub use parity::{build_parity_system, direction_shift, solve_gf2, Gf2Solution, ParitySystem};
pub use signs::{
    conflict_witness, conflict_witness_for, covered_triangles, normalize_signs,
    propagate_triangle_signs, ConflictWitness, Propagation, SignVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("gadgets on {0} vertices exceed the supported order {MAX_GADGET_ORDER}")]
    GadgetTooLarge(usize),
    #[error("{0} vertex subsets exceed the scan limit {MAX_SUBSETS}")]
    ScanTooLarge(u128),
    #[error("no gadgets")]
    NoGadgets,
    #[error("gadget edge {0} is not an edge of the graph")]
    ForeignEdge(Edge),
    #[error("not a spanning tree: {0}")]
    InvalidTree(String),
    #[error("{0}")]
    Matrix(String),
    #[error(transparent)]
    Independence(#[from] IndependenceError),
}

impl CertifyError {
    /// Whether the failure came from a resource limit rather than the input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            CertifyError::GadgetTooLarge(_)
                | CertifyError::ScanTooLarge(_)
                | CertifyError::Independence(IndependenceError::BudgetExceeded(_))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NotTight(Box<NonTightnessCertificate>),
    Unknown {
        reason: String,
        /// Edge signs and direction satisfying every gadget, when the
        /// parity system was feasible.
        sign_class: Option<(SignVector, bool)>,
        /// Set when the reason is a resource limit.
        budget: bool,
    },
}

impl Verdict {
    fn unknown(reason: impl Into<String>) -> Self {
        Verdict::Unknown {
            reason: reason.into(),
            sign_class: None,
            budget: false,
        }
    }

    fn from_error(e: CertifyError) -> Self {
        Verdict::Unknown {
            reason: e.to_string(),
            sign_class: None,
            budget: e.is_budget(),
        }
    }

    pub fn is_not_tight(&self) -> bool {
        matches!(self, Verdict::NotTight(_))
    }

    pub fn certificate(&self) -> Option<&NonTightnessCertificate> {
        match self {
            Verdict::NotTight(c) => Some(c),
            Verdict::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotTight(_) => write!(f, "NOT_TIGHT"),
            Verdict::Unknown { reason, .. } => write!(f, "UNKNOWN({reason})"),
        }
    }
}

/// Runs the full pipeline: α, criticality, gadget scan, parity solve.
pub fn certify_not_tight(g: &Graph) -> Verdict {
    match run(g) {
        Ok(v) => v,
        Err(e) => Verdict::from_error(e),
    }
}

fn run(g: &Graph) -> Result<Verdict, CertifyError> {
    let alpha = independence_number(g)?.alpha;
    let report = is_alpha_critical(g)?;
    if !report.is_critical {
        return Ok(Verdict::unknown("criticality prerequisite fails"));
    }
    let gadgets = enumerate_gadgets(g, alpha)?;
    if gadgets.is_empty() {
        return Ok(Verdict::unknown("no gadgets"));
    }
    let sys = build_parity_system(g, &gadgets)?;
    match solve_gf2(&sys) {
        Gf2Solution::Infeasible { farkas_rows } => {
            Ok(Verdict::NotTight(Box::new(NonTightnessCertificate {
                graph: g.clone(),
                alpha,
                critical_witnesses: report.witnesses,
                gadgets: gadgets.iter().map(GadgetClaim::from).collect(),
                farkas_rows,
            })))
        }
        sol @ Gf2Solution::Feasible { .. } => Ok(Verdict::Unknown {
            reason: format!("parity system feasible ({} gadgets)", gadgets.len()),
            sign_class: sol.sign_class(&sys),
            budget: false,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::paley;

    #[test]
    fn c5_is_unknown() {
        let v = certify_not_tight(&Graph::cycle(5));
        assert!(!v.is_not_tight());
        let Verdict::Unknown { sign_class, .. } = v else { unreachable!() };
        assert!(sign_class.is_some());
    }

    #[test]
    fn non_critical_graph_is_unknown() {
        assert_eq!(
            certify_not_tight(&Graph::cycle(4)).to_string(),
            "UNKNOWN(criticality prerequisite fails)"
        );
    }

    #[test]
    fn paley17_certificate_round_trips_and_verifies() {
        let g = paley(17).unwrap();
        let v = certify_not_tight(&g);
        assert_eq!(v.to_string(), "NOT_TIGHT");
        let cert = v.certificate().unwrap();
        assert_eq!(verify_certificate(&g, cert), Ok(()));
        let back = NonTightnessCertificate::from_json_str(&cert.to_json_string()).unwrap();
        assert_eq!(&back, cert);

        let mut flipped = cert.clone();
        flipped.gadgets[cert.farkas_rows[0]].const_negative ^= true;
        let err = verify_certificate(&g, &flipped).unwrap_err();
        assert_eq!(err.to_string(), "farkas sum rhs = 0");

        let other = g.delete_edge(Edge::new(0, 1)).unwrap();
        let err = verify_certificate(&other, cert).unwrap_err();
        assert!(matches!(err, VerifyFailure::InducedSubgraphMismatch(_)), "{err}");
    }
}
