//! Closed-form perturbed spectrum of a strongly regular graph.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{exact_trace, roots_of, EigenClass, EigenValue, Parity, PerturbSpec};
use crate::arith::{serde_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::srg::SrgParams;
use crate::spectra::poly::RatPoly;
use crate::spectra::{partial_fractions, srg_idempotent_rows};

/// The cubic/quadratic building blocks of the perturbed characteristic
/// polynomial: `p1 = (t−k)(t−θ)(t−τ)`, `p2 = (t−θ)(t−τ)` and the correction
/// terms `q1`, `q2` for the given adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HelperPolys {
    pub p1: RatPoly,
    pub q1: RatPoly,
    pub p2: RatPoly,
    pub q2: RatPoly,
}

pub fn helper_polys(p: &SrgParams, adjacent: bool) -> Result<HelperPolys> {
    let (k, th, ta) = p.rational_eigenvalues()?;
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let p2 = RatPoly::from_roots([&th, &ta]);
    let p1 = &p2 * &RatPoly::linear_root(&k);
    let s = &k + &th + &ta;
    let base = &k * &th + &k * &ta + &two * &th * &ta;
    let (q1, q2) = if adjacent {
        (
            RatPoly::new(vec![base + &k, -(s - &one), one.clone()]),
            RatPoly::new(vec![-(&th + &ta + &one), one]),
        )
    } else {
        (
            RatPoly::new(vec![base + &two * &k, -s, one.clone()]),
            RatPoly::new(vec![-(&th + &ta), one]),
        )
    };
    Ok(HelperPolys { p1, q1, p2, q2 })
}

/// Spectrum of `A + H` for an SRG: the unchanged eigenvalues `θ`, `τ`
/// (multiplicities reduced by two) plus the roots of `P₊` (balanced) and
/// `P₋` (skew).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbedSpectrum {
    pub adjacent: bool,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    pub classes: Vec<EigenClass>,
    pub p_plus: RatPoly,
    pub p_minus: RatPoly,
    /// `P₊` with any root that is independent of the weights removed; its
    /// roots are exactly the eigenvalues whose eigenvectors are balanced and
    /// nonzero on `u`.
    pub support_plus: RatPoly,
    pub support_minus: RatPoly,
    /// `(θ, m_θ − 2)` and `(τ, m_τ − 2)`.
    pub null_part: RatPoly,
}

impl PerturbedSpectrum {
    /// Distinct roots of [`Self::support_plus`], largest first.
    pub fn balanced_support(&self) -> Result<Vec<EigenValue>> {
        Ok(roots_of(&self.support_plus)?.into_iter().map(|(r, _)| r).collect())
    }

    pub fn skew_support(&self) -> Result<Vec<EigenValue>> {
        Ok(roots_of(&self.support_minus)?.into_iter().map(|(r, _)| r).collect())
    }

    /// Full characteristic polynomial `P₊ · P₋ · (t−θ)^{m_θ−2} (t−τ)^{m_τ−2}`.
    pub fn charpoly(&self) -> RatPoly {
        &(&self.p_plus * &self.p_minus) * &self.null_part
    }

    pub fn trace(&self) -> Result<Rational> {
        exact_trace(&self.classes)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }
}

/// Builds `P₊ = p1 − (β+γ) q1` and `P₋ = p2 + (β−γ) q2` and classifies the
/// full spectrum.
pub fn srg_perturbed_polys(p: &SrgParams, s: &PerturbSpec) -> Result<PerturbedSpectrum> {
    let (_, theta, tau) = p.rational_eigenvalues()?;
    if p.m_theta < 2 || p.m_tau < 2 {
        return Err(Error::DegenerateMultiplicity { m_theta: p.m_theta, m_tau: p.m_tau });
    }
    let h = helper_polys(p, s.adjacent)?;
    let p_plus = &h.p1 - &h.q1.scale(&(&s.beta + &s.gamma));
    let p_minus = &h.p2 + &h.q2.scale(&(&s.beta - &s.gamma));
    let fixed_plus = h.p1.gcd(&h.q1);
    let fixed_minus = h.p2.gcd(&h.q2);
    let support_plus = p_plus.exact_div(&fixed_plus).expect("common factor of p1, q1 divides P+");
    let support_minus = p_minus.exact_div(&fixed_minus).expect("common factor of p2, q2 divides P-");

    let mut classes = Vec::new();
    let null_theta = p.m_theta - 2;
    let null_tau = p.m_tau - 2;
    for (value, m) in [(&theta, null_theta), (&tau, null_tau)] {
        if m > 0 {
            classes.push(EigenClass {
                value: EigenValue::rational(value.clone()),
                multiplicity: m,
                parity: Parity::Null,
            });
        }
    }
    for (poly, fixed, parity) in [
        (&support_plus, &fixed_plus, Parity::Balanced),
        (&support_minus, &fixed_minus, Parity::Skew),
    ] {
        for (value, m) in roots_of(poly)? {
            classes.push(EigenClass { value, multiplicity: m, parity });
        }
        for (value, m) in roots_of(fixed)? {
            classes.push(EigenClass { value, multiplicity: m, parity: Parity::Null });
        }
    }
    let null_part = &RatPoly::linear_root(&theta).pow(null_theta) * &RatPoly::linear_root(&tau).pow(null_tau);
    Ok(PerturbedSpectrum {
        adjacent: s.adjacent,
        beta: s.beta.clone(),
        gamma: s.gamma.clone(),
        classes,
        p_plus,
        p_minus,
        support_plus,
        support_minus,
        null_part,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationsStatus {
    Pass,
    Fail,
    /// `β = ±γ`: one of the two equations has a zero weight on its right side.
    SkippedDegenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalEquationsReport {
    pub status: EquationsStatus,
    /// Monic polynomial obtained by clearing denominators in the balanced
    /// equation; compare with `P₊`.
    pub balanced_equation: Option<RatPoly>,
    pub skew_equation: Option<RatPoly>,
    pub mismatches: Vec<String>,
}

/// Solves the two rational equations
///
/// `Σ_r ((E_r)_uu + (E_r)_uv)/(t − θ_r) = 1/(β+γ)` and
/// `Σ_r ((E_r)_uu − (E_r)_uv)/(t − θ_r) = 1/(γ−β)`
///
/// built from the closed-form idempotent rows, and checks that clearing
/// denominators reproduces `P₊` and `P₋` exactly.
pub fn srg_rational_equations_check(p: &SrgParams, s: &PerturbSpec) -> Result<RationalEquationsReport> {
    let sum = &s.beta + &s.gamma;
    let diff = &s.gamma - &s.beta;
    if sum.is_zero() || diff.is_zero() {
        return Ok(RationalEquationsReport {
            status: EquationsStatus::SkippedDegenerate,
            balanced_equation: None,
            skew_equation: None,
            mismatches: Vec::new(),
        });
    }
    let rows = srg_idempotent_rows(p, s.adjacent)?;
    let weights = |sign: i64| -> Vec<(Rational, Rational)> {
        rows.iter()
            .map(|r| (r.eigenvalue.clone(), &r.uu_entry + &r.uv_entry * Rational::from_integer(sign.into())))
            .filter(|(_, w)| !w.is_zero())
            .collect()
    };
    // Σ w/(t−θ) = 1/c  ⇔  den − c·num = 0
    let clear = |terms: &[(Rational, Rational)], c: &Rational| {
        let (num, den) = partial_fractions(terms);
        (&den - &num.scale(c)).monic()
    };
    let balanced = clear(&weights(1), &sum);
    let skew = clear(&weights(-1), &diff);
    let spec = srg_perturbed_polys(p, s)?;
    let mut mismatches = Vec::new();
    if balanced != spec.p_plus {
        mismatches.push(format!("balanced equation gives {balanced}, P+ is {}", spec.p_plus));
    }
    if skew != spec.p_minus {
        mismatches.push(format!("skew equation gives {skew}, P- is {}", spec.p_minus));
    }
    Ok(RationalEquationsReport {
        status: if mismatches.is_empty() { EquationsStatus::Pass } else { EquationsStatus::Fail },
        balanced_equation: Some(balanced),
        skew_equation: Some(skew),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::graph::srg::srg_from_params;

    fn spec(adjacent: bool, beta: Rational, gamma: Rational) -> PerturbSpec {
        PerturbSpec::new(0, 1, beta, gamma, adjacent).unwrap()
    }

    fn values(classes: &[EigenClass], parity: Parity) -> Vec<Rational> {
        classes
            .iter()
            .filter(|c| c.parity == parity)
            .map(|c| c.value.exact().and_then(|a| a.as_rational()).cloned().unwrap())
            .collect()
    }

    #[test]
    fn oa34_nonadjacent_skew_pair() {
        let p = srg_from_params(16, 9, 4, 6).unwrap();
        let sp = srg_perturbed_polys(&p, &spec(false, int(2), int(-2))).unwrap();
        assert_eq!(sp.p_minus, RatPoly::from_ints(&[5, 6, 1]));
        assert_eq!(values(&sp.classes, Parity::Skew), vec![int(-1), int(-5)]);
        assert_eq!(values(&sp.classes, Parity::Balanced), vec![int(9), int(1), int(-3)]);
        assert_eq!(sp.total_multiplicity(), 16);
        assert_eq!(sp.trace().unwrap(), int(-4));
    }

    #[test]
    fn clebsch_complement_adjacent() {
        let p = srg_from_params(16, 10, 6, 6).unwrap();
        let sp = srg_perturbed_polys(&p, &spec(true, int(-2), int(2))).unwrap();
        assert_eq!(values(&sp.classes, Parity::Skew), vec![int(4), int(0)]);
        assert_eq!(values(&sp.classes, Parity::Balanced), vec![int(10), int(2), int(-2)]);
        assert_eq!(sp.trace().unwrap(), int(4));
    }

    #[test]
    fn unperturbed_recovers_srg_spectrum() {
        let p = srg_from_params(16, 5, 0, 2).unwrap();
        let sp = srg_perturbed_polys(&p, &spec(false, int(0), int(0))).unwrap();
        assert_eq!(sp.p_minus, RatPoly::from_roots(&[int(1), int(-3)]));
        assert_eq!(sp.p_plus, RatPoly::from_roots(&[int(5), int(1), int(-3)]));
        assert_eq!(
            sp.charpoly(),
            &(&RatPoly::from_ints(&[-5, 1]) * &RatPoly::from_ints(&[-1, 1]).pow(10))
                * &RatPoly::from_ints(&[3, 1]).pow(5)
        );
    }

    #[test]
    fn clebsch_pgst_instance_polys() {
        let p = srg_from_params(16, 5, 0, 2).unwrap();
        let sp = srg_perturbed_polys(&p, &spec(false, int(1), int(0))).unwrap();
        assert_eq!(sp.p_plus, RatPoly::from_ints(&[21, -10, -4, 1]));
        assert_eq!(sp.p_minus, RatPoly::from_ints(&[-1, 3, 1]));
        assert_eq!(sp.trace().unwrap(), int(0));
        assert_eq!(sp.total_multiplicity(), 16);
    }

    #[test]
    fn equations_agree_with_closed_form() {
        let p = srg_from_params(16, 5, 0, 2).unwrap();
        for adjacent in [false, true] {
            let r = srg_rational_equations_check(&p, &spec(adjacent, int(1), int(0))).unwrap();
            assert_eq!(r.status, EquationsStatus::Pass, "{:?}", r.mismatches);
        }
        let q = srg_from_params(16, 9, 4, 6).unwrap();
        let r = srg_rational_equations_check(&q, &spec(false, int(-2), int(2))).unwrap();
        assert_eq!(r.status, EquationsStatus::SkippedDegenerate);
        let r = srg_rational_equations_check(&q, &spec(true, frac(3, 7), frac(-1, 5))).unwrap();
        assert_eq!(r.status, EquationsStatus::Pass);
    }

    #[test]
    fn degenerate_and_conference_rejected() {
        let conf = srg_from_params(13, 6, 2, 3).unwrap();
        assert_eq!(
            srg_perturbed_polys(&conf, &spec(false, int(1), int(0))),
            Err(Error::IrrationalEigenvalues)
        );
        // no primitive SRG has a multiplicity below 2, so tamper with one
        let mut fake = srg_from_params(10, 3, 0, 1).unwrap();
        fake.m_tau = 1;
        assert!(matches!(
            srg_perturbed_polys(&fake, &spec(false, int(1), int(0))),
            Err(Error::DegenerateMultiplicity { .. })
        ));
    }
}
