use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::gadgets::GadgetCopy;
use crate::exactla::symbolic_determinant;
use crate::graphs::{Edge, Graph};
use crate::independence::{independence_number, is_valid_critical_witness, WitnessMap};

/// The claim a certificate makes about one gadget. Everything else (the
/// monomial, the subgraph) is recomputed during verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetClaim {
    pub vertices: Vec<usize>,
    pub odd_support: Vec<Edge>,
    #[serde(with = "bit")]
    pub const_negative: bool,
}

impl From<&GadgetCopy> for GadgetClaim {
    fn from(g: &GadgetCopy) -> Self {
        GadgetClaim {
            vertices: g.vertices.clone(),
            odd_support: g.odd_support.clone(),
            const_negative: g.const_negative,
        }
    }
}

mod bit {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*b))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            x => Err(D::Error::custom(format!("expected 0 or 1, got {x}"))),
        }
    }
}

/// Machine-checkable proof that no weight matrix of `graph` attains the
/// inertia bound: every listed gadget has a forced direction, and the rows
/// in `farkas_rows` cannot all agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonTightnessCertificate {
    pub graph: Graph,
    pub alpha: usize,
    /// One independent `(α+1)`-set of `G − e` per edge, in edge order.
    pub critical_witnesses: Vec<(Edge, Vec<usize>)>,
    pub gadgets: Vec<GadgetClaim>,
    pub farkas_rows: Vec<usize>,
}

#[derive(Serialize)]
struct CertOut<'a> {
    graph: &'a Graph,
    alpha: usize,
    critical_witnesses: WitnessMap<'a>,
    gadgets: &'a [GadgetClaim],
    farkas_rows: &'a [usize],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CertIn {
    graph: Graph,
    alpha: usize,
    critical_witnesses: BTreeMap<String, Vec<usize>>,
    gadgets: Vec<GadgetClaim>,
    farkas_rows: Vec<usize>,
}

impl Serialize for NonTightnessCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CertOut {
            graph: &self.graph,
            alpha: self.alpha,
            critical_witnesses: WitnessMap(&self.critical_witnesses),
            gadgets: &self.gadgets,
            farkas_rows: &self.farkas_rows,
        }
        .serialize(s)
    }
}

fn parse_edge_key(k: &str) -> Option<Edge> {
    let (a, b) = k.split_once('-')?;
    Edge::try_new(a.parse().ok()?, b.parse().ok()?)
}

impl<'de> Deserialize<'de> for NonTightnessCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CertIn::deserialize(d)?;
        let mut critical_witnesses = raw
            .critical_witnesses
            .into_iter()
            .map(|(k, w)| {
                parse_edge_key(&k)
                    .map(|e| (e, w))
                    .ok_or_else(|| D::Error::custom(format!("bad witness key {k:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        critical_witnesses.sort();
        Ok(NonTightnessCertificate {
            graph: raw.graph,
            alpha: raw.alpha,
            critical_witnesses,
            gadgets: raw.gadgets,
            farkas_rows: raw.farkas_rows,
        })
    }
}

impl NonTightnessCertificate {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Why a certificate was rejected. The display strings are stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("induced subgraph mismatch (gadget {0})")]
    InducedSubgraphMismatch(usize),
    #[error("alpha mismatch: certificate claims {claimed}, graph has {actual}")]
    AlphaMismatch { claimed: usize, actual: usize },
    #[error("criticality witness missing for edge {0}")]
    MissingWitness(Edge),
    #[error("criticality witness invalid for edge {0}")]
    InvalidWitness(Edge),
    #[error("farkas rows empty, repeated or out of range")]
    FarkasRowsMalformed,
    #[error("farkas sum has a nonzero coefficient")]
    FarkasCoefficientNonzero,
    #[error("farkas sum rhs = 0")]
    FarkasRhsZero,
    #[error("gadget {0} does not have independence number alpha")]
    GadgetAlpha(usize),
    #[error("gadget {0}: determinant does not match the claim")]
    DeterminantMismatch(usize),
    #[error("certificate describes a different graph")]
    GraphMismatch,
    #[error("independence computation failed: {0}")]
    Budget(String),
}

impl VerifyFailure {
    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            VerifyFailure::InducedSubgraphMismatch(_) => "induced_subgraph_mismatch",
            VerifyFailure::AlphaMismatch { .. } => "alpha_mismatch",
            VerifyFailure::MissingWitness(_) => "missing_witness",
            VerifyFailure::InvalidWitness(_) => "invalid_witness",
            VerifyFailure::FarkasRowsMalformed => "farkas_rows_malformed",
            VerifyFailure::FarkasCoefficientNonzero => "farkas_coefficient_nonzero",
            VerifyFailure::FarkasRhsZero => "farkas_rhs_zero",
            VerifyFailure::GadgetAlpha(_) => "gadget_alpha",
            VerifyFailure::DeterminantMismatch(_) => "determinant_mismatch",
            VerifyFailure::GraphMismatch => "graph_mismatch",
            VerifyFailure::Budget(_) => "budget",
        }
    }
}

/// Re-proves the certificate against `g` from scratch.
pub fn verify_certificate(g: &Graph, cert: &NonTightnessCertificate) -> Result<(), VerifyFailure> {
    let k = 2 * cert.alpha + 1;

    // every gadget must induce the same subgraph in `g` as in the certified graph
    for (i, claim) in cert.gadgets.iter().enumerate() {
        let sorted = claim.vertices.windows(2).all(|w| w[0] < w[1]);
        let mine = g.induced_subgraph(&claim.vertices);
        let theirs = cert.graph.induced_subgraph(&claim.vertices);
        match (mine, theirs) {
            (Ok(a), Ok(b)) if sorted && claim.vertices.len() == k && a == b => {}
            _ => return Err(VerifyFailure::InducedSubgraphMismatch(i)),
        }
    }

    let actual = independence_number(g)
        .map_err(|e| VerifyFailure::Budget(e.to_string()))?
        .alpha;
    if actual != cert.alpha {
        return Err(VerifyFailure::AlphaMismatch {
            claimed: cert.alpha,
            actual,
        });
    }

    let witnesses: BTreeMap<Edge, &Vec<usize>> =
        cert.critical_witnesses.iter().map(|(e, w)| (*e, w)).collect();
    for e in g.edges() {
        let w = witnesses.get(&e).ok_or(VerifyFailure::MissingWitness(e))?;
        if !is_valid_critical_witness(g, cert.alpha, e, w) {
            return Err(VerifyFailure::InvalidWitness(e));
        }
    }

    let distinct: BTreeSet<usize> = cert.farkas_rows.iter().copied().collect();
    if cert.farkas_rows.is_empty()
        || distinct.len() != cert.farkas_rows.len()
        || distinct.iter().any(|&r| r >= cert.gadgets.len())
    {
        return Err(VerifyFailure::FarkasRowsMalformed);
    }
    let mut coefficients: BTreeMap<Edge, bool> = BTreeMap::new();
    let mut rhs = false;
    for &r in &cert.farkas_rows {
        for &e in &cert.gadgets[r].odd_support {
            *coefficients.entry(e).or_default() ^= true;
        }
        rhs ^= cert.gadgets[r].const_negative;
    }
    // the direction bit appears once per row
    if cert.farkas_rows.len() % 2 == 1 || coefficients.values().any(|&c| c) {
        return Err(VerifyFailure::FarkasCoefficientNonzero);
    }
    if !rhs {
        return Err(VerifyFailure::FarkasRhsZero);
    }

    for (i, claim) in cert.gadgets.iter().enumerate() {
        let sub = g.induced_subgraph(&claim.vertices).expect("checked above");
        let a = independence_number(&sub.graph)
            .map_err(|e| VerifyFailure::Budget(e.to_string()))?
            .alpha;
        if a != cert.alpha {
            return Err(VerifyFailure::GadgetAlpha(i));
        }
        let Some(mono) = symbolic_determinant(&sub.graph).is_monomial() else {
            return Err(VerifyFailure::DeterminantMismatch(i));
        };
        let pattern_edges: Vec<Edge> = sub.graph.edges().collect();
        let mut odd: Vec<Edge> = mono
            .odd_variables()
            .into_iter()
            .map(|v| sub.host_edge(pattern_edges[v]))
            .collect();
        odd.sort_unstable();
        if odd != claim.odd_support || mono.coefficient.is_negative() != claim.const_negative {
            return Err(VerifyFailure::DeterminantMismatch(i));
        }
    }

    if cert.graph != *g {
        return Err(VerifyFailure::GraphMismatch);
    }
    Ok(())
}
