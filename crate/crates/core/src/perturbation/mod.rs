//! Pair perturbations `A + H` with
//! `H = β(e_u e_vᵀ + e_v e_uᵀ) + γ(e_u e_uᵀ + e_v e_vᵀ)`.

pub mod cospectral;
pub mod srg;
pub mod walk_regular;

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{serde_rational, to_f64, Rational};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::spectra::charpoly::{det_poly, t_minus, RatMatrix};
use crate::spectra::poly::RatPoly;
use crate::spectra::{phi_polys, PhiPolys};
use crate::surd::{quadratic_roots, Algebraic};

pub use cospectral::{strong_cospectrality, strong_cospectrality_general, CospectralityCase, StrongCospectrality};
pub use srg::{
    helper_polys, srg_perturbed_polys, srg_rational_equations_check, EquationsStatus, HelperPolys,
    PerturbedSpectrum, RationalEquationsReport,
};
pub use walk_regular::{edge_perturbation_invariance, one_walk_regular, EdgeInvarianceReport};

/// A weighted perturbation on the vertex pair `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PerturbSpec {
    pub u: usize,
    pub v: usize,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    pub adjacent: bool,
}

impl PerturbSpec {
    pub fn new(u: usize, v: usize, beta: Rational, gamma: Rational, adjacent: bool) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidPair(format!("u = v = {u}")));
        }
        Ok(Self { u, v, beta, gamma, adjacent })
    }

    /// Spec on an explicit graph; adjacency is read from the graph.
    pub fn on_graph(g: &LabeledGraph, u: usize, v: usize, beta: Rational, gamma: Rational) -> Result<Self> {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        Self::new(u, v, beta, gamma, u != v && g.has_edge(u, v))
    }

    /// Checks the pair and adjacency flag against a host graph.
    pub fn validate_against(&self, g: &LabeledGraph) -> Result<()> {
        g.check_vertex(self.u)?;
        g.check_vertex(self.v)?;
        if g.has_edge(self.u, self.v) != self.adjacent {
            return Err(Error::InvalidPair(format!(
                "pair ({}, {}) is {}adjacent in the graph but the spec says otherwise",
                self.u,
                self.v,
                if self.adjacent { "non-" } else { "" }
            )));
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.beta.is_zero() && self.gamma.is_zero()
    }

    pub fn with_weights(&self, beta: Rational, gamma: Rational) -> Self {
        Self { beta, gamma, ..self.clone() }
    }

    /// `A + H` over the rationals.
    pub fn matrix(&self, g: &LabeledGraph) -> Result<RatMatrix> {
        self.validate_against(g)?;
        let mut m = g.rational_matrix();
        m[self.u][self.v] += &self.beta;
        m[self.v][self.u] += &self.beta;
        m[self.u][self.u] += &self.gamma;
        m[self.v][self.v] += &self.gamma;
        Ok(m)
    }

    pub fn matrix_f64(&self, g: &LabeledGraph) -> Result<nalgebra::DMatrix<f64>> {
        self.validate_against(g)?;
        let mut m = g.f64_matrix();
        let (b, c) = (to_f64(&self.beta), to_f64(&self.gamma));
        m[(self.u, self.v)] += b;
        m[(self.v, self.u)] += b;
        m[(self.u, self.u)] += c;
        m[(self.v, self.v)] += c;
        Ok(m)
    }
}

/// Closed form from the walk polynomials:
/// `φ − 2βφ_uv − γ(φ_u + φ_v) + (γ² − β²)φ(X∖{u,v})`.
pub fn perturbed_charpoly_from_phis(phis: &PhiPolys, beta: &Rational, gamma: &Rational) -> RatPoly {
    let two = Rational::from_integer(2.into());
    let sum_uv = &phis.phi_u + &phis.phi_v;
    let mut out = phis.phi.clone();
    out = &out - &phis.phi_uv.scale(&(&two * beta));
    out = &out - &sum_uv.scale(gamma);
    &out + &phis.phi_pair.scale(&(gamma * gamma - beta * beta))
}

pub fn perturbed_charpoly_general(g: &LabeledGraph, s: &PerturbSpec) -> Result<RatPoly> {
    s.validate_against(g)?;
    let phis = phi_polys(g, s.u, s.v)?;
    Ok(perturbed_charpoly_from_phis(&phis, &s.beta, &s.gamma))
}

/// `det(tI − A − H)` by fraction-free elimination over polynomial entries.
pub fn perturbed_charpoly_oracle(g: &LabeledGraph, s: &PerturbSpec) -> Result<RatPoly> {
    Ok(det_poly(t_minus(&s.matrix(g)?)))
}

/// For cospectral `u, v`: the numerators `(N₊, N₋)` with
/// `φ(X^{β,γ}) · φ(X) = N₊ · N₋`, where
/// `N₊ = φ − (β+γ)(φ_uv + φ_u)` and `N₋ = φ − (β−γ)(φ_uv − φ_u)`.
pub fn cospectral_factors(phis: &PhiPolys, beta: &Rational, gamma: &Rational) -> (RatPoly, RatPoly) {
    let plus = &phis.phi - &(&phis.phi_uv + &phis.phi_u).scale(&(beta + gamma));
    let minus = &phis.phi - &(&phis.phi_uv - &phis.phi_u).scale(&(beta - gamma));
    (plus, minus)
}

/// Symmetry type of an eigenvector relative to `u, v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    /// `z_u = z_v ≠ 0`
    #[serde(rename = "+")]
    Balanced,
    /// `z_u = −z_v ≠ 0`
    #[serde(rename = "-")]
    Skew,
    /// `z_u = z_v = 0`
    #[serde(rename = "0")]
    Null,
}

impl Parity {
    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Balanced => "+",
            Parity::Skew => "-",
            Parity::Null => "0",
        }
    }
}

/// An isolating interval for a real root of an irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub poly: RatPoly,
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl RootEnclosure {
    pub fn approx(&self) -> f64 {
        (to_f64(&self.lo) + to_f64(&self.hi)) / 2.0
    }
}

/// Enclosure width for roots that are not exact.
pub fn enclosure_width() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(10).pow(20))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EigenValue {
    Exact(Algebraic),
    Enclosed { enclosure: RootEnclosure },
}

impl EigenValue {
    pub fn approx(&self) -> f64 {
        match self {
            EigenValue::Exact(a) => a.to_f64(),
            EigenValue::Enclosed { enclosure } => enclosure.approx(),
        }
    }

    pub fn exact(&self) -> Option<&Algebraic> {
        match self {
            EigenValue::Exact(a) => Some(a),
            EigenValue::Enclosed { .. } => None,
        }
    }

    pub fn rational(q: Rational) -> Self {
        EigenValue::Exact(Algebraic::Rational(q))
    }

    /// Whether this value is a root of `p` (decided exactly).
    pub fn is_root_of(&self, p: &RatPoly) -> bool {
        if p.is_zero() {
            return true;
        }
        let min = match self {
            EigenValue::Exact(a) => a.minimal_polynomial(),
            EigenValue::Enclosed { enclosure } => enclosure.poly.monic(),
        };
        p.exact_div(&min).is_some()
    }

    fn cmp_desc(&self, other: &Self) -> Ordering {
        match (self, other) {
            (EigenValue::Exact(a), EigenValue::Exact(b)) => b.cmp_value(a),
            _ => other.approx().total_cmp(&self.approx()),
        }
    }
}

impl std::fmt::Display for EigenValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EigenValue::Exact(a) => write!(f, "{a}"),
            EigenValue::Enclosed { enclosure } => {
                write!(f, "~{:.12} (root of {})", enclosure.approx(), enclosure.poly)
            }
        }
    }
}

/// One eigenvalue of the perturbed matrix with its multiplicity and the
/// symmetry type of its eigenvectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenClass {
    #[serde(rename = "eigenvalue")]
    pub value: EigenValue,
    pub multiplicity: u64,
    pub parity: Parity,
}

/// Distinct real roots of `p` with multiplicities, largest first. Rational
/// and quadratic roots are exact; roots of an irreducible cubic or higher
/// factor are enclosed.
pub fn roots_of(p: &RatPoly) -> Result<Vec<(EigenValue, u64)>> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let mut rest = p.monic();
    for r in p.rational_roots() {
        let m = rest.root_multiplicity(&r);
        rest = rest
            .exact_div(&RatPoly::linear_root(&r).pow(m as u64))
            .expect("root divides");
        out.push((EigenValue::rational(r), m as u64));
    }
    for (factor, mult) in rest.squarefree_factors() {
        match factor.degree() {
            Some(2) => {
                let roots = quadratic_roots(&factor)?.ok_or_else(|| {
                    Error::InexactSpectrum(format!("{factor} has complex roots"))
                })?;
                out.extend(roots.into_iter().map(|r| (EigenValue::Exact(r), mult as u64)));
            }
            _ => {
                let width = enclosure_width();
                let isolated = factor.isolate_real_roots();
                if isolated.len() != factor.degree().unwrap_or(0) {
                    return Err(Error::InexactSpectrum(format!(
                        "{factor} does not have all roots real"
                    )));
                }
                for (lo, hi) in isolated {
                    let (lo, hi) = factor.refine_root(&lo, &hi, &width);
                    let value = if lo == hi {
                        EigenValue::rational(lo)
                    } else {
                        EigenValue::Enclosed {
                            enclosure: RootEnclosure { poly: factor.clone(), lo, hi },
                        }
                    };
                    out.push((value, mult as u64));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp_desc(&b.0));
    Ok(out)
}

/// Sum of `value · multiplicity` over classes, exactly. Surd conjugates and
/// the roots of each enclosed polynomial are summed through their
/// coefficients, so the result is rational whenever the classes are complete.
pub fn exact_trace(classes: &[EigenClass]) -> Result<Rational> {
    let mut total = Rational::zero();
    let mut surd_sum: Vec<Algebraic> = Vec::new();
    let mut enclosed: Vec<(RatPoly, u64, usize)> = Vec::new();
    for c in classes {
        let m = Rational::from_integer(c.multiplicity.into());
        match &c.value {
            EigenValue::Exact(Algebraic::Rational(q)) => total += q * m,
            EigenValue::Exact(a) => {
                let scaled = a.checked_mul(&Algebraic::Rational(m))?;
                match surd_sum.iter_mut().find(|s| s.checked_add(&scaled).is_ok()) {
                    Some(s) => *s = s.checked_add(&scaled)?,
                    None => surd_sum.push(scaled),
                }
            }
            EigenValue::Enclosed { enclosure } => {
                match enclosed.iter_mut().find(|(p, mult, _)| *p == enclosure.poly && *mult == c.multiplicity) {
                    Some(entry) => entry.2 += 1,
                    None => enclosed.push((enclosure.poly.clone(), c.multiplicity, 1)),
                }
            }
        }
    }
    for s in surd_sum {
        match s {
            Algebraic::Rational(q) => total += q,
            other => {
                return Err(Error::InexactSpectrum(format!(
                    "unpaired surd contribution {other} to the trace"
                )))
            }
        }
    }
    for (p, mult, count) in enclosed {
        let deg = p.degree().unwrap_or(0);
        if count != deg {
            return Err(Error::InexactSpectrum(format!("only {count} of {deg} roots of {p} present")));
        }
        let root_sum = -p.coeff(deg - 1) / p.leading();
        total += root_sum * Rational::from_integer(mult.into());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::graph::families::{complete, cycle, petersen};

    #[test]
    fn k2_closed_form() {
        let g = complete(2);
        let s = PerturbSpec::on_graph(&g, 0, 1, frac(1, 3), int(2)).unwrap();
        // (t − γ)² − (1 + β)²
        let expected = &RatPoly::from_ints(&[-2, 1]).pow(2)
            - &RatPoly::constant(frac(16, 9));
        assert_eq!(perturbed_charpoly_general(&g, &s).unwrap(), expected);
        assert_eq!(perturbed_charpoly_oracle(&g, &s).unwrap(), expected);
    }

    #[test]
    fn zero_perturbation_is_identity() {
        let g = petersen();
        let s = PerturbSpec::on_graph(&g, 0, 9, int(0), int(0)).unwrap();
        assert_eq!(
            perturbed_charpoly_general(&g, &s).unwrap(),
            crate::spectra::charpoly::charpoly(&g)
        );
    }

    #[test]
    fn closed_form_matches_oracle_on_path() {
        let g = crate::graph::families::path(5);
        let s = PerturbSpec::on_graph(&g, 1, 3, frac(-2, 5), frac(7, 3)).unwrap();
        assert_eq!(
            perturbed_charpoly_general(&g, &s).unwrap(),
            perturbed_charpoly_oracle(&g, &s).unwrap()
        );
    }

    #[test]
    fn cospectral_product_identity() {
        let g = cycle(6);
        let s = PerturbSpec::on_graph(&g, 0, 3, frac(1, 2), frac(-3, 4)).unwrap();
        let phis = phi_polys(&g, 0, 3).unwrap();
        let (plus, minus) = cospectral_factors(&phis, &s.beta, &s.gamma);
        let pert = perturbed_charpoly_general(&g, &s).unwrap();
        assert_eq!(&pert * &phis.phi, &plus * &minus);
    }

    #[test]
    fn spec_validation() {
        let g = petersen();
        assert!(PerturbSpec::new(2, 2, int(1), int(0), false).is_err());
        let (u, v) = g.edges()[0];
        let s = PerturbSpec::new(u, v, int(1), int(0), false).unwrap();
        assert!(s.validate_against(&g).is_err());
        assert!(PerturbSpec::on_graph(&g, 0, 10, int(1), int(0)).is_err());
    }

    #[test]
    fn roots_exact_and_enclosed() {
        let quad = RatPoly::from_ints(&[-1, 3, 1]);
        let roots = roots_of(&quad).unwrap();
        assert!(roots.iter().all(|(r, _)| r.exact().is_some()));
        // squarefree but reducible: the quadratic factor is not split off
        let p = &RatPoly::from_ints(&[21, -10, -4, 1]) * &quad;
        let roots = roots_of(&p).unwrap();
        assert_eq!(roots.len(), 5);
        assert!(roots.windows(2).all(|w| w[0].0.approx() > w[1].0.approx()));
        for (r, _) in &roots {
            assert!(r.exact().is_none());
            assert!(r.is_root_of(&p));
            assert!(p.eval_f64(r.approx()).abs() < 1e-8);
        }
        let sq = RatPoly::from_ints(&[-1, 1]).pow(2);
        assert_eq!(roots_of(&sq).unwrap(), vec![(EigenValue::rational(int(1)), 2)]);
    }

    #[test]
    fn parity_json_symbols() {
        let c = EigenClass {
            value: EigenValue::rational(int(-5)),
            multiplicity: 1,
            parity: Parity::Skew,
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"eigenvalue":{"rational":"-5/1"},"multiplicity":1,"parity":"-"}"#
        );
    }
}
