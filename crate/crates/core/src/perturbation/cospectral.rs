//! Exact strong-cospectrality decisions.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::srg::{helper_polys, srg_perturbed_polys};
use super::{roots_of, EigenValue, PerturbSpec};
use crate::error::{Error, Result};
use crate::graph::srg::SrgParams;
use crate::graph::LabeledGraph;
use crate::spectra::poly::RatPoly;
use crate::spectra::{phi_polys, phi_polys_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CospectralityCase {
    /// `β ≠ ±γ`: `P₊` and `P₋` must be coprime.
    Generic,
    /// `β = γ ≠ 0`: `P₊` must avoid the roots of `φ(X)`.
    BetaEqualsGamma,
    /// `β = −γ ≠ 0`: `P₋` must avoid the roots of `φ(X)`.
    BetaEqualsMinusGamma,
    /// Decided from the walk functions of the perturbed matrix itself.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongCospectrality {
    pub strongly_cospectral: bool,
    pub case: CospectralityCase,
    /// Monic gcd of the two polynomials compared; `1` on success.
    pub common_factor: RatPoly,
    /// Roots of `common_factor` (the shared eigenvalues) on failure.
    pub common_roots: Vec<EigenValue>,
}

fn decide(case: CospectralityCase, a: &RatPoly, b: &RatPoly) -> Result<StrongCospectrality> {
    let g = a.gcd(b);
    let ok = g.degree() == Some(0);
    let common_roots = if ok {
        Vec::new()
    } else {
        roots_of(&g)?.into_iter().map(|(r, _)| r).collect()
    };
    Ok(StrongCospectrality {
        strongly_cospectral: ok,
        case,
        common_factor: g,
        common_roots,
    })
}

/// Three-case criterion for an SRG host: shared roots are found with an
/// exact polynomial gcd.
pub fn strong_cospectrality(p: &SrgParams, s: &PerturbSpec) -> Result<StrongCospectrality> {
    if s.is_trivial() {
        return Err(Error::TrivialPerturbation);
    }
    let spec = srg_perturbed_polys(p, s)?;
    let sum_zero = (&s.beta + &s.gamma).is_zero();
    let diff_zero = (&s.beta - &s.gamma).is_zero();
    let phi_roots = helper_polys(p, s.adjacent)?.p1;
    match (sum_zero, diff_zero) {
        (false, false) => decide(CospectralityCase::Generic, &spec.p_plus, &spec.p_minus),
        (false, true) => decide(CospectralityCase::BetaEqualsGamma, &spec.p_plus, &phi_roots),
        (true, false) => decide(CospectralityCase::BetaEqualsMinusGamma, &spec.p_minus, &phi_roots),
        (true, true) => unreachable!("trivial perturbation handled above"),
    }
}

/// Strong cospectrality of `u, v` in `A + H` for any host graph, decided
/// from the poles of `W_uu ± W_uv`, the walk generating functions of the
/// perturbed matrix: the eigenvalues carrying balanced support are the poles
/// of `(φ_u + φ_uv)/φ`, the skew ones those of `(φ_u − φ_uv)/φ`, and the
/// vertices are strongly cospectral iff the two pole sets are disjoint.
///
/// `u` and `v` must be cospectral in the host graph.
pub fn strong_cospectrality_general(g: &LabeledGraph, s: &PerturbSpec) -> Result<StrongCospectrality> {
    if s.is_trivial() {
        return Err(Error::TrivialPerturbation);
    }
    s.validate_against(g)?;
    let host = phi_polys(g, s.u, s.v)?;
    if host.phi_u != host.phi_v {
        return Err(Error::NotCospectral { u: s.u, v: s.v });
    }
    let m = s.matrix(g)?;
    let pert = phi_polys_matrix(&m, s.u, s.v)?;
    let poles = |num: &RatPoly| -> RatPoly {
        let g = pert.phi.gcd(num);
        pert.phi.exact_div(&g).expect("gcd divides").monic()
    };
    let balanced = poles(&(&pert.phi_u + &pert.phi_uv));
    let skew = poles(&(&pert.phi_u - &pert.phi_uv));
    decide(CospectralityCase::Direct, &balanced, &skew)
}
