//! Pretty good state transfer: irreducibility of the new-root polynomials,
//! the root-mean inequality and a numeric fidelity scan.

use serde::{Deserialize, Serialize};

use crate::arith::{rational_sqrt, serde_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::perturbation::{PerturbSpec, PerturbedSpectrum};
use crate::spectra::poly::RatPoly;
use crate::walk::SpectralNumeric;

pub use crate::certificate::pgst_certify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrreducibilityMethod {
    QuadraticDiscriminant,
    RationalRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub method: IrreducibilityMethod,
}

/// Irreducibility over the rationals for degree 2 (discriminant not a
/// rational square) and degree 3 (no rational root).
pub fn irreducible_over_rationals(poly: &RatPoly) -> Result<Irreducibility> {
    match poly.degree() {
        Some(2) => {
            let c = poly.coeffs();
            let disc = &c[1] * &c[1] - Rational::from_integer(4.into()) * &c[2] * &c[0];
            Ok(Irreducibility {
                irreducible: rational_sqrt(&disc).is_none(),
                method: IrreducibilityMethod::QuadraticDiscriminant,
            })
        }
        Some(3) => Ok(Irreducibility {
            irreducible: poly.rational_roots().is_empty(),
            method: IrreducibilityMethod::RationalRoot,
        }),
        d => Err(Error::UnsupportedDegree(d.unwrap_or(0))),
    }
}

/// Mean of the roots of a monic polynomial of degree `d`: `−c_{d−1}/d`.
fn root_mean(p: &RatPoly) -> Rational {
    let d = p.degree().unwrap_or(0);
    let c = p.monic();
    -c.coeff(d - 1) / Rational::from_integer(d.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PgstEvidence {
    pub p_plus_irreducible: Irreducibility,
    pub p_minus_irreducible: Irreducibility,
    /// Mean of the skew roots (roots of `P₋`).
    #[serde(with = "serde_rational")]
    pub skew_mean: Rational,
    /// Mean of the balanced roots (roots of `P₊`).
    #[serde(with = "serde_rational")]
    pub balanced_mean: Rational,
    pub inequality_holds: bool,
    pub strongly_cospectral: bool,
    /// All sufficient conditions hold.
    pub pgst_by_test: bool,
    /// PST was certified separately, which implies PGST.
    pub pst_implies_pgst: bool,
}

/// Evaluates the sufficient conditions on `P₊` (cubic) and `P₋`
/// (quadratic): both irreducible, their root means different, and the pair
/// strongly cospectral.
pub fn pgst_evidence(spec: &PerturbedSpectrum, strongly_cospectral: bool, pst: bool) -> Result<PgstEvidence> {
    let p_plus_irreducible = irreducible_over_rationals(&spec.p_plus)?;
    let p_minus_irreducible = irreducible_over_rationals(&spec.p_minus)?;
    let skew_mean = root_mean(&spec.p_minus);
    let balanced_mean = root_mean(&spec.p_plus);
    let inequality_holds = skew_mean != balanced_mean;
    let pgst_by_test = p_plus_irreducible.irreducible
        && p_minus_irreducible.irreducible
        && inequality_holds
        && strongly_cospectral;
    Ok(PgstEvidence {
        p_plus_irreducible,
        p_minus_irreducible,
        skew_mean,
        balanced_mean,
        inequality_holds,
        strongly_cospectral,
        pgst_by_test,
        pst_implies_pgst: pst,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub time: f64,
    pub fidelity: f64,
}

const GOLDEN_ITERATIONS: usize = 60;

fn amplitude(terms: &[(f64, f64)], t: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for &(lam, c) in terms {
        let (s, co) = (t * lam).sin_cos();
        re += c * co;
        im += c * s;
    }
    re.hypot(im).min(1.0)
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden_max(terms: &[(f64, f64)], lo: f64, hi: f64) -> ScanResult {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (amplitude(terms, c), amplitude(terms, d));
    for _ in 0..GOLDEN_ITERATIONS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = amplitude(terms, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = amplitude(terms, d);
        }
    }
    let t = (a + b) / 2.0;
    ScanResult { time: t, fidelity: amplitude(terms, t) }
}

/// Best `|U(t)_{uv}|` over `t = 0, step, …, ≤ horizon`, each grid point
/// refined by golden-section search on `[t − step, t + step]`.
///
/// Points whose Lipschitz bound cannot beat the running best are skipped, so
/// the result equals the best refined value over the whole grid and never
/// decreases as the horizon grows. Ties go to the earliest time.
pub fn fidelity_scan_terms(terms: &[(f64, f64)], horizon: f64, step: f64) -> Result<ScanResult> {
    if !(horizon > 0.0 && step > 0.0) {
        return Err(Error::InvalidArgument("horizon and step must be positive".into()));
    }
    let lipschitz: f64 = terms.iter().map(|&(lam, c)| (lam * c).abs()).sum();
    let count = (horizon / step).floor() as usize;
    let mut grid: Vec<(usize, f64)> = (0..=count).map(|i| (i, amplitude(terms, i as f64 * step))).collect();
    grid.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut best = ScanResult { time: grid[0].0 as f64 * step, fidelity: grid[0].1 };
    for &(i, f) in &grid {
        if f + lipschitz * step < best.fidelity {
            break;
        }
        let t = i as f64 * step;
        let r = golden_max(terms, (t - step).max(0.0), t + step);
        let r = if r.fidelity >= f { r } else { ScanResult { time: t, fidelity: f } };
        if r.fidelity > best.fidelity || (r.fidelity == best.fidelity && r.time < best.time) {
            best = r;
        }
    }
    Ok(best)
}

pub fn fidelity_scan(g: &LabeledGraph, s: &PerturbSpec, horizon: f64, step: f64) -> Result<ScanResult> {
    let sn = SpectralNumeric::of(g, s)?;
    fidelity_scan_terms(&sn.support_terms(s.u, s.v), horizon, step)
}

/// Ascending-horizon ladder of scans, e.g. `[10, 100, 1000]`.
pub fn fidelity_ladder(
    g: &LabeledGraph,
    s: &PerturbSpec,
    horizons: &[f64],
    step: f64,
) -> Result<Vec<ScanResult>> {
    let sn = SpectralNumeric::of(g, s)?;
    let terms = sn.support_terms(s.u, s.v);
    horizons.iter().map(|&h| fidelity_scan_terms(&terms, h, step)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::graph::families::{clebsch, complete, petersen};
    use crate::graph::srg::srg_from_params;
    use crate::perturbation::srg_perturbed_polys;

    #[test]
    fn irreducibility_examples() {
        let q = RatPoly::from_ints(&[-5, 1, 1]);
        assert!(irreducible_over_rationals(&q).unwrap().irreducible);
        assert!(!irreducible_over_rationals(&RatPoly::from_ints(&[0, -4, 1])).unwrap().irreducible);
        let c = irreducible_over_rationals(&RatPoly::from_ints(&[21, -10, -4, 1])).unwrap();
        assert!(c.irreducible);
        assert_eq!(c.method, IrreducibilityMethod::RationalRoot);
        assert_eq!(irreducible_over_rationals(&RatPoly::from_ints(&[1, 1])), Err(Error::UnsupportedDegree(1)));
    }

    #[test]
    fn clebsch_evidence() {
        let p = srg_from_params(16, 5, 0, 2).unwrap();
        let s = PerturbSpec::new(0, 1, int(1), int(0), false).unwrap();
        let e = pgst_evidence(&srg_perturbed_polys(&p, &s).unwrap(), true, false).unwrap();
        assert!(e.pgst_by_test);
        assert_eq!(e.skew_mean, crate::arith::frac(-3, 2));
        assert_eq!(e.balanced_mean, crate::arith::frac(4, 3));
    }

    #[test]
    fn oa34_quadratic_factors() {
        let p = srg_from_params(16, 9, 4, 6).unwrap();
        let s = PerturbSpec::new(0, 1, int(2), int(-2), false).unwrap();
        let e = pgst_evidence(&srg_perturbed_polys(&p, &s).unwrap(), true, true).unwrap();
        assert!(!e.pgst_by_test);
        assert!(!e.p_minus_irreducible.irreducible);
        assert!(e.pst_implies_pgst);
    }

    #[test]
    fn scan_finds_k2_transfer() {
        let g = complete(2);
        let s = PerturbSpec::on_graph(&g, 0, 1, int(0), int(0)).unwrap();
        let r = fidelity_scan(&g, &s, 3.0, 0.1).unwrap();
        assert!(r.fidelity > 1.0 - 1e-9);
        assert!((r.time - std::f64::consts::FRAC_PI_2).abs() < 1e-4);
    }

    #[test]
    fn scan_gap_without_cospectrality() {
        let g = petersen();
        let v = (1..10).find(|&v| !g.has_edge(0, v)).unwrap();
        let s = PerturbSpec::on_graph(&g, 0, v, int(0), int(0)).unwrap();
        let r = fidelity_scan(&g, &s, 100.0, 0.05).unwrap();
        assert!(r.fidelity < 0.9);
    }

    #[test]
    fn scan_is_monotone_in_horizon() {
        let g = clebsch();
        let v = (1..16).find(|&v| !g.has_edge(0, v)).unwrap();
        let s = PerturbSpec::on_graph(&g, 0, v, int(1), int(0)).unwrap();
        let ladder = fidelity_ladder(&g, &s, &[5.0, 20.0, 40.0], 0.05).unwrap();
        assert!(ladder.windows(2).all(|w| w[1].fidelity >= w[0].fidelity));
    }
}
