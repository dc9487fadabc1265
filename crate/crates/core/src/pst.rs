//! Perfect state transfer: the 2-adic parity test on the perturbed spectrum,
//! the transfer time, synthesis of weights and the family-level predicates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_sqrt, is_prime_power, lcm_all, mod4, odd_part, serde_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::srg::SrgParams;
use crate::perturbation::{srg_perturbed_polys, strong_cospectrality, EigenValue, PerturbSpec, PerturbedSpectrum};

pub use crate::arith::two_adic as two_adic_valuation;
pub use crate::certificate::pst_certify;

/// One row of the parity table: `(λ₁ − μ)/(λ₁ − λ₂) = p_i/q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioEntry {
    #[serde(with = "serde_rational")]
    pub mu: Rational,
    #[serde(with = "serde_rational")]
    pub ratio: Rational,
    pub numerator_odd: bool,
    /// `|q_i|₂`
    pub denominator_valuation: u64,
}

/// Arithmetic behind the parity test. `p/q = γ − β` in lowest terms; `alpha`,
/// `a_val`, `b_val` are set when the scaled discriminant is a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityWitness {
    #[serde(with = "crate::arith::serde_int")]
    pub p: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub q: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub alpha_squared: BigInt,
    #[serde(with = "crate::arith::serde_int_opt")]
    pub alpha: Option<BigInt>,
    #[serde(with = "crate::arith::serde_int_opt")]
    pub a_val: Option<BigInt>,
    #[serde(with = "crate::arith::serde_int_opt")]
    pub b_val: Option<BigInt>,
    /// Shifted eigenvalues `θ + δ`, `τ + δ` with `δ = 1` for adjacent pairs.
    #[serde(with = "crate::arith::serde_int")]
    pub theta_shifted: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub tau_shifted: BigInt,
    #[serde(with = "crate::arith::serde_rational_opt")]
    pub lambda1: Option<Rational>,
    #[serde(with = "crate::arith::serde_rational_opt")]
    pub lambda2: Option<Rational>,
    pub ratios: Vec<RatioEntry>,
    pub r: Option<u64>,
}

impl ParityWitness {
    /// `2α = B − A` and `A·B = 4q²θτ` (shifted values for adjacent pairs).
    pub fn identities_hold(&self) -> bool {
        match (&self.alpha, &self.a_val, &self.b_val) {
            (Some(alpha), Some(a), Some(b)) => {
                let four_q2 = BigInt::from(4) * &self.q * &self.q;
                BigInt::from(2) * alpha == b - a && a * b == four_q2 * &self.theta_shifted * &self.tau_shifted
            }
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCheck {
    pub passed: bool,
    pub reason: Option<String>,
    pub witness: ParityWitness,
    /// Minimal transfer time as a multiple of `π`.
    #[serde(with = "crate::arith::serde_rational_opt")]
    pub time_pi: Option<Rational>,
}

fn rational_value(v: &EigenValue) -> Result<Option<Rational>> {
    match v {
        EigenValue::Exact(a) => Ok(a.as_rational().cloned()),
        EigenValue::Enclosed { .. } => Err(Error::InexactSpectrum(
            "a support eigenvalue is only known by an enclosure".into(),
        )),
    }
}

fn fail(witness: ParityWitness, reason: &str) -> ParityCheck {
    ParityCheck { passed: false, reason: Some(reason.into()), witness, time_pi: None }
}

/// Parity test on the support of `e_u` in the perturbed SRG: with skew
/// eigenvalues `λ₁ > λ₂`, every balanced `μ` must give
/// `(λ₁ − μ)/(λ₁ − λ₂) = p_i/q_i` with `p_i` odd, `q_i` even and all `|q_i|₂`
/// equal. Strong cospectrality is assumed, not checked.
pub fn pst_parity_check(p: &SrgParams, spec: &PerturbedSpectrum) -> Result<ParityCheck> {
    let (_, theta, tau) = p.integer_eigenvalues()?;
    let shift = BigInt::from(u8::from(spec.adjacent));
    let (th, ta) = (&theta + &shift, &tau + &shift);
    let wq = &spec.gamma - &spec.beta;
    let (pp, qq) = (wq.numer().clone(), wq.denom().clone());
    let s = &th + &ta;
    let centre = &pp - &qq * &s;
    let alpha_squared = &centre * &centre - BigInt::from(4) * &qq * &qq * &th * &ta;
    let alpha = exact_sqrt(&alpha_squared);
    let (a_val, b_val) = match &alpha {
        Some(al) => (Some(&centre - al), Some(&centre + al)),
        None => (None, None),
    };
    let mut witness = ParityWitness {
        p: pp,
        q: qq,
        alpha_squared,
        alpha,
        a_val,
        b_val,
        theta_shifted: th,
        tau_shifted: ta,
        lambda1: None,
        lambda2: None,
        ratios: Vec::new(),
        r: None,
    };

    // skew side first: an irrational pair fails regardless of the balanced side
    let skew = spec.skew_support()?;
    if skew.len() != 2 {
        return Ok(fail(witness, "skew support does not consist of two eigenvalues"));
    }
    let (Some(l1), Some(l2)) = (rational_value(&skew[0])?, rational_value(&skew[1])?) else {
        return Ok(fail(witness, "skew eigenvalues are irrational"));
    };
    let delta = &l1 - &l2;
    witness.lambda1 = Some(l1.clone());
    witness.lambda2 = Some(l2);

    let mut balanced = Vec::new();
    for v in spec.balanced_support()? {
        match rational_value(&v)? {
            Some(q) => balanced.push(q),
            None => return Ok(fail(witness, "balanced eigenvalues are irrational")),
        }
    }
    if balanced.is_empty() {
        return Ok(fail(witness, "no balanced support"));
    }
    for mu in balanced {
        let ratio = (&l1 - &mu) / &delta;
        let numerator_odd = ratio.numer().is_odd();
        let denominator_valuation = two_adic_valuation(ratio.denom())?;
        witness.ratios.push(RatioEntry { mu, ratio, numerator_odd, denominator_valuation });
    }
    if let Some(bad) = witness.ratios.iter().find(|e| !e.numerator_odd) {
        let reason = format!("ratio {} has an even numerator", crate::arith::fmt_rational_short(&bad.ratio));
        return Ok(fail(witness, &reason));
    }
    let valuations: BTreeSet<u64> = witness.ratios.iter().map(|e| e.denominator_valuation).collect();
    if valuations.len() != 1 {
        return Ok(fail(witness, "denominators have different 2-adic valuations"));
    }
    let r = *valuations.iter().next().expect("nonempty");
    if r == 0 {
        return Ok(fail(witness, "ratio denominators are odd"));
    }
    witness.r = Some(r);

    let odd_parts: Vec<BigInt> = witness
        .ratios
        .iter()
        .map(|e| odd_part(e.ratio.denom()))
        .collect::<Result<_>>()?;
    let l = lcm_all(&odd_parts);
    let time_pi = Rational::from_integer(BigInt::one() << r as usize) * Rational::from_integer(l) / &delta;
    if !time_aligns(&time_pi, &l1, &delta, &witness.ratios) {
        return Ok(fail(witness, "phases do not align at the candidate time"));
    }
    Ok(ParityCheck { passed: true, reason: None, witness, time_pi: Some(time_pi) })
}

/// Exact phase check at `t = π·time_pi`: `t(λ₁ − λ₂)/π` even and
/// `t(λ₁ − μ)/π` odd for every balanced `μ`.
fn time_aligns(time_pi: &Rational, l1: &Rational, delta: &Rational, ratios: &[RatioEntry]) -> bool {
    let skew_phase = time_pi * delta;
    if !skew_phase.is_integer() || skew_phase.to_integer().is_odd() {
        return false;
    }
    ratios.iter().all(|e| {
        let x = time_pi * (l1 - &e.mu);
        x.is_integer() && x.to_integer().is_odd()
    })
}

/// `x = 2^t_exp · x_core` with the same exponent for all three values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCore {
    pub t_exp: u64,
    #[serde(with = "crate::arith::serde_int")]
    pub k_core: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub theta_core: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub tau_core: BigInt,
}

impl OddCore {
    pub fn cores(&self) -> [&BigInt; 3] {
        [&self.k_core, &self.theta_core, &self.tau_core]
    }

    pub fn all_odd(&self) -> bool {
        self.cores().iter().all(|c| c.is_odd())
    }

    pub fn congruent_mod4(&self) -> bool {
        let odd: Vec<u8> = self.cores().iter().filter(|c| c.is_odd()).map(|c| mod4(c)).collect();
        odd.windows(2).all(|w| w[0] == w[1])
    }
}

/// Divides out the smallest 2-power among three nonzero integers.
pub fn odd_core(k: &BigInt, theta: &BigInt, tau: &BigInt) -> Result<OddCore> {
    let t = [k, theta, tau]
        .iter()
        .map(|x| two_adic_valuation(x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("three values");
    let shift = t as usize;
    Ok(OddCore { t_exp: t, k_core: k >> shift, theta_core: theta >> shift, tau_core: tau >> shift })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateSource {
    Canonical,
    Family { q1: i64, q2: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    pub source: CandidateSource,
    pub check: ParityCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synthesis {
    pub adjacent: bool,
    pub possible: bool,
    pub reason: Option<String>,
    pub core: Option<OddCore>,
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisOptions {
    /// `q₁, q₂` range over odd values with `|q| ≤ bound`.
    pub bound: u64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self { bound: 99 }
    }
}

/// Full certification of one `β = −γ` candidate: strong cospectrality and
/// the parity test.
fn verify_candidate(p: &SrgParams, adjacent: bool, beta: &Rational) -> Result<Option<ParityCheck>> {
    let s = PerturbSpec::new(0, 1, beta.clone(), -beta.clone(), adjacent)?;
    if s.is_trivial() {
        return Ok(None);
    }
    if !strong_cospectrality(p, &s)?.strongly_cospectral {
        return Ok(None);
    }
    let spec = srg_perturbed_polys(p, &s)?;
    let check = pst_parity_check(p, &spec)?;
    Ok(check.passed.then_some(check))
}

fn synthesize(p: &SrgParams, adjacent: bool, opts: SynthesisOptions) -> Result<Synthesis> {
    let (k, theta, tau) = p.integer_eigenvalues()?;
    let shift = BigInt::from(u8::from(adjacent));
    let (k, theta, tau) = (k + &shift, theta + &shift, tau + &shift);
    let impossible = |core: Option<OddCore>, reason: &str| Synthesis {
        adjacent,
        possible: false,
        reason: Some(reason.into()),
        core,
        candidates: Vec::new(),
    };
    if theta.is_zero() || tau.is_zero() {
        return Ok(impossible(None, "zero eigenvalue"));
    }
    let core = odd_core(&k, &theta, &tau)?;
    if !core.congruent_mod4() {
        return Ok(impossible(Some(core), "cores not congruent mod 4"));
    }
    if !core.all_odd() {
        return Ok(impossible(Some(core), "2-adic valuations differ"));
    }

    let scale = Rational::from_integer(BigInt::one() << core.t_exp as usize);
    let (th, ta) = (&core.theta_core, &core.tau_core);
    let mut proposals: Vec<(Rational, CandidateSource)> =
        vec![(-(&scale * Rational::from_integer(th + ta)), CandidateSource::Canonical)];
    let theta_res = mod4(th);
    let bound = opts.bound as i64;
    for q1 in (1..=bound).step_by(2) {
        for q2 in (-bound..=bound).filter(|q| q.rem_euclid(2) == 1) {
            if mod4(&BigInt::from(q1 * q2)) != theta_res {
                continue;
            }
            let (b1, b2) = (BigInt::from(q1), BigInt::from(q2));
            let pnum = &b1 * &b1 + &b2 * &b2 * th * ta + &b1 * &b2 * (th + ta);
            let diff = -(&scale * Rational::new(pnum, &b1 * &b2));
            proposals.push((diff / Rational::from_integer(2.into()), CandidateSource::Family { q1, q2 }));
        }
    }

    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    for (beta, source) in proposals {
        if !seen.insert(beta.clone()) {
            continue;
        }
        if let Some(check) = verify_candidate(p, adjacent, &beta)? {
            candidates.push(Candidate { gamma: -beta.clone(), beta, source, check });
        }
    }
    if candidates.is_empty() {
        return Ok(impossible(Some(core), "no candidate passed the parity check"));
    }
    Ok(Synthesis { adjacent, possible: true, reason: None, core: Some(core), candidates })
}

/// Weights `β = −γ` giving PST between non-adjacent vertices.
pub fn synthesize_beta_nonadjacent(p: &SrgParams, opts: SynthesisOptions) -> Result<Synthesis> {
    synthesize(p, false, opts)
}

/// As [`synthesize_beta_nonadjacent`] with `k+1, θ+1, τ+1`.
pub fn synthesize_beta_adjacent(p: &SrgParams, opts: SynthesisOptions) -> Result<Synthesis> {
    synthesize(p, true, opts)
}

/// 2-adic criterion for OA(k, n) graphs:
/// `|n|₂ ≥ |k|₂ + 2` (non-adjacent) or `|n|₂ ≥ |k−1|₂ + 2` (adjacent).
pub fn oa_pst_predicate(k: u64, n: u64, adjacent: bool) -> bool {
    let m = if adjacent { k - 1 } else { k };
    if k < 2 || n < 2 || m == 0 {
        return false;
    }
    n.trailing_zeros() >= m.trailing_zeros() + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AffinePolarKind {
    Elliptic,
    Hyperbolic,
}

impl std::str::FromStr for AffinePolarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elliptic" => Ok(Self::Elliptic),
            "hyperbolic" => Ok(Self::Hyperbolic),
            other => Err(Error::InvalidArgument(format!("unknown affine polar kind '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePolarReport {
    pub e: u32,
    pub q: u64,
    pub kind: AffinePolarKind,
    #[serde(with = "crate::arith::serde_int")]
    pub k: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub theta: BigInt,
    #[serde(with = "crate::arith::serde_int")]
    pub tau: BigInt,
    pub pst: bool,
}

/// Parameter-level test for `VO^±(2e, q)`: yes iff `k, θ, τ` are odd and
/// congruent mod 4.
pub fn affine_polar_pst_predicate(e: u32, q: u64, kind: AffinePolarKind) -> Result<AffinePolarReport> {
    if is_prime_power(q).is_none() {
        return Err(Error::InvalidPrimePower(q));
    }
    if e < 2 {
        return Err(Error::InvalidArgument(format!("e must be at least 2, got {e}")));
    }
    let qb = BigInt::from(q);
    let qe = qb.pow(e);
    let qe1 = qb.pow(e - 1);
    let one = BigInt::one();
    let (k, theta, tau) = match kind {
        AffinePolarKind::Elliptic => ((&qe1 - &one) * (&qe + &one), &qe1 - &one, -&qe + &qe1 - &one),
        AffinePolarKind::Hyperbolic => ((&qe1 + &one) * (&qe - &one), &qe - &qe1 - &one, -&qe1 - &one),
    };
    let odd = [&k, &theta, &tau].iter().all(|x| x.is_odd());
    let pst = odd && mod4(&k) == mod4(&theta) && mod4(&theta) == mod4(&tau);
    Ok(AffinePolarReport { e, q, kind, k, theta, tau, pst })
}

/// Shortcut used by tests and the CLI: parity test for explicit weights.
pub fn parity_for(p: &SrgParams, s: &PerturbSpec) -> Result<ParityCheck> {
    pst_parity_check(p, &srg_perturbed_polys(p, s)?)
}
