//! 1-walk-regularity and the edge-independence of perturbed spectra.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::PerturbSpec;
use crate::arith::{serde_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::spectra::charpoly::charpoly_matrix;
use crate::spectra::poly::RatPoly;

/// Checks that `A^ℓ ∘ I` and `A^ℓ ∘ A` are constant multiples of `I` and `A`
/// for `ℓ = 0..=n`; returns the first failing `ℓ` otherwise.
pub fn one_walk_regular(g: &LabeledGraph) -> Result<()> {
    let n = g.n();
    let mut power: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let edges = g.edges();
    for length in 0..=n {
        if length > 0 {
            power = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            g.neighbors(j)
                                .fold(BigInt::zero(), |acc, l| acc + &power[i][l])
                        })
                        .collect()
                })
                .collect();
        }
        let diag_ok = (1..n).all(|i| power[i][i] == power[0][0]);
        let edge_ok = edges
            .first()
            .map(|&(x, y)| edges.iter().all(|&(i, j)| power[i][j] == power[x][y]))
            .unwrap_or(true);
        if !diag_ok || !edge_ok {
            return Err(Error::NotOneWalkRegular { length });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSample {
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    /// The common polynomial, or the first one seen when they differ.
    pub polynomial: RatPoly,
    pub distinct_polynomials: usize,
    /// An edge whose polynomial differs from the first edge's.
    pub witness_edge: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeInvarianceReport {
    pub edges_checked: usize,
    pub samples: Vec<EdgeSample>,
}

impl EdgeInvarianceReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.distinct_polynomials == 1)
    }
}

/// For a 1-walk-regular graph, computes `det(tI − A − H)` on every edge for
/// each `(β, γ)` sample (always including edge deletion `(−1, 0)`) and
/// reports whether the polynomial is the same on all edges.
pub fn edge_perturbation_invariance(
    g: &LabeledGraph,
    samples: &[(Rational, Rational)],
) -> Result<EdgeInvarianceReport> {
    one_walk_regular(g)?;
    let edges = g.edges();
    let deletion = (Rational::from_integer((-1).into()), Rational::zero());
    let mut weights = vec![deletion.clone()];
    weights.extend(samples.iter().filter(|w| **w != deletion).cloned());
    let mut out = Vec::new();
    for (beta, gamma) in weights {
        let mut first: Option<RatPoly> = None;
        let mut distinct: Vec<RatPoly> = Vec::new();
        let mut witness = None;
        for &(u, v) in &edges {
            let s = PerturbSpec::new(u, v, beta.clone(), gamma.clone(), true)?;
            let poly = charpoly_matrix(&s.matrix(g)?);
            if first.is_none() {
                first = Some(poly.clone());
            }
            if !distinct.contains(&poly) {
                if !distinct.is_empty() && witness.is_none() {
                    witness = Some((u, v));
                }
                distinct.push(poly);
            }
        }
        out.push(EdgeSample {
            beta,
            gamma,
            polynomial: first.unwrap_or_else(RatPoly::one),
            distinct_polynomials: distinct.len().max(1),
            witness_edge: witness,
        });
    }
    Ok(EdgeInvarianceReport {
        edges_checked: edges.len(),
        samples: out,
    })
}
