//! Transfer certificates: the exact pipeline plus a numeric cross-check.

use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{fmt_rational, serde_rational, serde_rational_opt, serde_rational_vec, Rational};
use crate::error::{Error, Result};
use crate::graph::srg::SrgParams;
use crate::graph::LabeledGraph;
use crate::perturbation::{srg_perturbed_polys, strong_cospectrality, EigenClass, PerturbSpec, StrongCospectrality};
use crate::pgst::{fidelity_scan_terms, pgst_evidence, PgstEvidence};
use crate::pst::{pst_parity_check, ParityCheck};
use crate::walk::{projection_parity, SpectralNumeric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pst,
    Pgst,
    StronglyCospectralOnly,
    None,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pst => "pst",
            Verdict::Pgst => "pgst",
            Verdict::StronglyCospectralOnly => "strongly-cospectral-only",
            Verdict::None => "none",
        }
    }

    /// PST or PGST.
    pub fn transfers(self) -> bool {
        matches!(self, Verdict::Pst | Verdict::Pgst)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Floats in reports are rounded to 12 decimals so that output is stable.
pub fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn ser_round<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

fn ser_round_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_f64(round12(*x)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FidelityMethod {
    /// Evaluated at the certified PST time.
    CertifiedTime,
    /// Best value of a grid scan up to the horizon.
    Scan,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityCheck {
    pub method: FidelityMethod,
    #[serde(serialize_with = "ser_round")]
    pub fidelity: f64,
    #[serde(serialize_with = "ser_round")]
    pub checked_at_time: f64,
    #[serde(serialize_with = "ser_round_opt")]
    pub horizon: Option<f64>,
    /// Numeric eigenspace parities agree with the exact classification.
    pub projection_parities_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferCertificate {
    pub verdict: Verdict,
    pub params: [u64; 4],
    pub u: usize,
    pub v: usize,
    pub adjacent: bool,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    #[serde(with = "serde_rational_opt")]
    pub time_pi_multiple: Option<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub ratios: Vec<Rational>,
    pub r: Option<u64>,
    #[serde(serialize_with = "ser_round_opt")]
    pub fidelity: Option<f64>,
    #[serde(serialize_with = "ser_round_opt")]
    pub checked_at_time: Option<f64>,
    pub p_plus: String,
    pub p_minus: String,
    pub spectrum: Vec<EigenClass>,
    pub cospectrality: StrongCospectrality,
    pub parity: Option<ParityCheck>,
    /// Why the parity test was not run, when it was not.
    pub parity_skipped: Option<String>,
    pub pgst: Option<PgstEvidence>,
    pub numeric: Option<FidelityCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Evaluate the PGST conditions when PST fails.
    pub pgst: bool,
    pub scan_horizon: f64,
    pub scan_step: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { pgst: true, scan_horizon: 100.0, scan_step: 0.01 }
    }
}

/// Full pipeline on SRG parameters: perturbed spectrum, strong
/// cospectrality, parity test and PST time, PGST conditions; then, when an
/// explicit graph is given, the numeric fidelity and projection checks.
pub fn certify_with(
    p: &SrgParams,
    s: &PerturbSpec,
    graph: Option<&LabeledGraph>,
    opts: CertifyOptions,
) -> Result<TransferCertificate> {
    if s.is_trivial() {
        return Err(Error::TrivialPerturbation);
    }
    if let Some(g) = graph {
        s.validate_against(g)?;
    }
    let spec = srg_perturbed_polys(p, s)?;
    let cospectrality = strong_cospectrality(p, s)?;
    let (parity, parity_skipped) = if cospectrality.strongly_cospectral {
        match pst_parity_check(p, &spec) {
            Ok(c) => (Some(c), None),
            Err(Error::InexactSpectrum(why)) => (None, Some(why)),
            Err(e) => return Err(e),
        }
    } else {
        (None, Some("not strongly cospectral".to_string()))
    };
    let pst = parity.as_ref().is_some_and(|c| c.passed);
    let pgst = if opts.pgst {
        Some(pgst_evidence(&spec, cospectrality.strongly_cospectral, pst)?)
    } else {
        None
    };
    let verdict = if pst {
        Verdict::Pst
    } else if pgst.as_ref().is_some_and(|e| e.pgst_by_test) {
        Verdict::Pgst
    } else if cospectrality.strongly_cospectral {
        Verdict::StronglyCospectralOnly
    } else {
        Verdict::None
    };
    let time_pi = parity.as_ref().and_then(|c| c.time_pi.clone());
    let (ratios, r) = match &parity {
        Some(c) => (c.witness.ratios.iter().map(|e| e.ratio.clone()).collect(), c.witness.r),
        None => (Vec::new(), None),
    };

    let numeric = match graph {
        Some(g) => {
            let sn = SpectralNumeric::of(g, s)?;
            let agree = projection_parity(&sn, s.u, s.v).matches_exact(&spec.classes);
            Some(match &time_pi {
                Some(tp) => {
                    let t = crate::arith::to_f64(tp) * std::f64::consts::PI;
                    FidelityCheck {
                        method: FidelityMethod::CertifiedTime,
                        fidelity: sn.fidelity(s.u, s.v, t),
                        checked_at_time: t,
                        horizon: None,
                        projection_parities_agree: agree,
                    }
                }
                None => {
                    let best =
                        fidelity_scan_terms(&sn.support_terms(s.u, s.v), opts.scan_horizon, opts.scan_step)?;
                    FidelityCheck {
                        method: FidelityMethod::Scan,
                        fidelity: best.fidelity,
                        checked_at_time: best.time,
                        horizon: Some(opts.scan_horizon),
                        projection_parities_agree: agree,
                    }
                }
            })
        }
        None => None,
    };

    Ok(TransferCertificate {
        verdict,
        params: [p.n, p.k, p.a, p.c],
        u: s.u,
        v: s.v,
        adjacent: s.adjacent,
        beta: s.beta.clone(),
        gamma: s.gamma.clone(),
        time_pi_multiple: time_pi,
        ratios,
        r,
        fidelity: numeric.as_ref().map(|n| n.fidelity),
        checked_at_time: numeric.as_ref().map(|n| n.checked_at_time),
        p_plus: spec.p_plus.to_string(),
        p_minus: spec.p_minus.to_string(),
        spectrum: spec.classes,
        cospectrality,
        parity,
        parity_skipped,
        pgst,
        numeric,
    })
}

pub fn certify(p: &SrgParams, s: &PerturbSpec, graph: Option<&LabeledGraph>) -> Result<TransferCertificate> {
    certify_with(p, s, graph, CertifyOptions::default())
}

/// PST-only certification: the verdict is `pst`, `strongly-cospectral-only`
/// or `none`.
pub fn pst_certify(p: &SrgParams, s: &PerturbSpec, graph: Option<&LabeledGraph>) -> Result<TransferCertificate> {
    certify_with(p, s, graph, CertifyOptions { pgst: false, ..CertifyOptions::default() })
}

/// Certification with the PGST conditions as fallback (same as [`certify`]).
pub fn pgst_certify(p: &SrgParams, s: &PerturbSpec, graph: Option<&LabeledGraph>) -> Result<TransferCertificate> {
    certify(p, s, graph)
}

impl TransferCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Plain-text report with the parity table.
    pub fn human(&self) -> String {
        let mut out = String::new();
        let [n, k, a, c] = self.params;
        out.push_str(&format!("srg({n},{k},{a},{c}) pair ({}, {}) {}\n", self.u, self.v, if self.adjacent { "adjacent" } else { "non-adjacent" }));
        out.push_str(&format!("beta = {}, gamma = {}\n", fmt_rational(&self.beta), fmt_rational(&self.gamma)));
        out.push_str(&format!("P+ = {}\nP- = {}\n", self.p_plus, self.p_minus));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(t) = &self.time_pi_multiple {
            out.push_str(&format!("time: {} pi\n", fmt_rational(t)));
        }
        if let Some(c) = &self.parity {
            if !c.witness.ratios.is_empty() {
                out.push_str("mu\tratio\tp odd\t|q|_2\n");
                for e in &c.witness.ratios {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\n",
                        fmt_rational(&e.mu),
                        fmt_rational(&e.ratio),
                        if e.numerator_odd { "yes" } else { "no" },
                        e.denominator_valuation
                    ));
                }
            }
            if let Some(why) = &c.reason {
                out.push_str(&format!("parity: {why}\n"));
            }
        }
        if let Some(e) = &self.pgst {
            out.push_str(&format!(
                "P+ irreducible: {}, P- irreducible: {}, root means {} vs {}\n",
                e.p_plus_irreducible.irreducible,
                e.p_minus_irreducible.irreducible,
                fmt_rational(&e.skew_mean),
                fmt_rational(&e.balanced_mean)
            ));
            if e.pst_implies_pgst {
                out.push_str("pst-implies-pgst\n");
            }
        }
        if let Some(nm) = &self.numeric {
            out.push_str(&format!("fidelity {:.12} at t = {:.6}\n", nm.fidelity, nm.checked_at_time));
        }
        out
    }
}
