//! Strongly regular parameter sets and their spectral data.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LabeledGraph;
use crate::arith::{exact_sqrt, Rational};
use crate::error::{Error, Result};
use crate::surd::Algebraic;

/// Parameters `(n, k, a, c)` of a primitive strongly regular graph with its
/// restricted eigenvalues `theta > tau` and their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub a: u64,
    pub c: u64,
    pub theta: Algebraic,
    pub tau: Algebraic,
    pub m_theta: u64,
    pub m_tau: u64,
}

fn infeasible(msg: impl Into<String>) -> Error {
    Error::InfeasibleParameters(msg.into())
}

/// Validates `(n, k, a, c)` and derives the eigenvalue data.
pub fn srg_from_params(n: u64, k: u64, a: u64, c: u64) -> Result<SrgParams> {
    if k == 0 || k >= n {
        return Err(infeasible(format!("need n > k >= 1, got n={n}, k={k}")));
    }
    if c == 0 {
        return Err(infeasible("c must be positive (disconnected graph)"));
    }
    if k == n - 1 {
        return Err(infeasible("k = n - 1 is the complete graph"));
    }
    if c == k {
        return Err(infeasible(format!(
            "c = k = {k}: complete multipartite, the complement is disconnected"
        )));
    }
    let (bn, bk, ba, bc) = (BigInt::from(n), BigInt::from(k), BigInt::from(a), BigInt::from(c));
    if a >= k {
        return Err(infeasible(format!("a = {a} must be below k = {k}")));
    }
    if (&bn - &bk - 1) * &bc != &bk * (&bk - &ba - 1) {
        return Err(infeasible(format!(
            "(n-k-1)c = {} but k(k-a-1) = {}",
            (&bn - &bk - 1) * &bc,
            &bk * (&bk - &ba - 1)
        )));
    }
    let s = &ba - &bc;
    let disc = &s * &s + BigInt::from(4) * (&bk - &bc);
    let q = |x: BigInt| Rational::from_integer(x);
    match exact_sqrt(&disc) {
        Some(root) => {
            let two = BigInt::from(2);
            let theta = q(&s + &root) / q(two.clone());
            let tau = q(&s - &root) / q(two);
            // m_theta = (-k - tau(n-1)) / (theta - tau)
            let m_theta = (-q(bk.clone()) - &tau * q(&bn - 1)) / (&theta - &tau);
            let m_tau = q(&bn - 1) - &m_theta;
            let as_mult = |m: &Rational, name: &str| -> Result<u64> {
                if !m.is_integer() || !m.is_positive() {
                    return Err(infeasible(format!(
                        "multiplicity {name} = {m} is not a positive integer"
                    )));
                }
                m.to_integer()
                    .to_u64()
                    .ok_or_else(|| infeasible("multiplicity overflow"))
            };
            let m_theta = as_mult(&m_theta, "m_theta")?;
            let m_tau = as_mult(&m_tau, "m_tau")?;
            Ok(SrgParams {
                n,
                k,
                a,
                c,
                theta: Algebraic::Rational(theta),
                tau: Algebraic::Rational(tau),
                m_theta,
                m_tau,
            })
        }
        None => {
            // Irrational eigenvalues force equal multiplicities (n-1)/2 and
            // k + (n-1)(a-c)/2 = 0.
            if n.is_multiple_of(2) || &bk * 2 + (&bn - 1) * &s != BigInt::zero() {
                return Err(infeasible(format!(
                    "eigenvalues are irrational but (n,k,a,c) = ({n},{k},{a},{c}) are not conference parameters"
                )));
            }
            let half = Rational::new(1.into(), 2.into());
            let x = q(s) * &half;
            let d = q(disc);
            let theta = Algebraic::new(x.clone(), half.clone(), &d)?;
            let tau = Algebraic::new(x, -half, &d)?;
            Ok(SrgParams {
                n,
                k,
                a,
                c,
                theta,
                tau,
                m_theta: (n - 1) / 2,
                m_tau: (n - 1) / 2,
            })
        }
    }
}

impl SrgParams {
    pub fn has_rational_eigenvalues(&self) -> bool {
        self.theta.is_rational() && self.tau.is_rational()
    }

    /// `(k, theta, tau)` as rationals; errors for conference parameters.
    pub fn rational_eigenvalues(&self) -> Result<(Rational, Rational, Rational)> {
        match (&self.theta, &self.tau) {
            (Algebraic::Rational(t), Algebraic::Rational(s)) => {
                Ok((Rational::from_integer(self.k.into()), t.clone(), s.clone()))
            }
            _ => Err(Error::IrrationalEigenvalues),
        }
    }

    /// Integer eigenvalues `(k, theta, tau)`; errors for conference parameters.
    pub fn integer_eigenvalues(&self) -> Result<(BigInt, BigInt, BigInt)> {
        let (k, t, s) = self.rational_eigenvalues()?;
        // rational roots of a monic integer quadratic are integers
        Ok((k.to_integer(), t.to_integer(), s.to_integer()))
    }

    /// The six trace and product identities relating `n, k, theta, tau` and
    /// the multiplicities, each evaluated exactly.
    pub fn identity_checks(&self) -> Vec<(&'static str, bool)> {
        let z = |x: u64| Algebraic::Rational(Rational::from_integer(x.into()));
        let (n, k, mt, ms) = (z(self.n), z(self.k), z(self.m_theta), z(self.m_tau));
        let (t, s) = (&self.theta, &self.tau);
        let op = |r: Result<Algebraic>| r.expect("theta and tau share a field");
        let add = |a: &Algebraic, b: &Algebraic| op(a.checked_add(b));
        let sub = |a: &Algebraic, b: &Algebraic| op(a.checked_sub(b));
        let mul = |a: &Algebraic, b: &Algebraic| op(a.checked_mul(b));
        let one = z(1);
        let ts = add(t, s);
        let tt = mul(t, s);
        let n1 = sub(&n, &one);
        vec![
            ("m_theta + m_tau + 1 = n", add(&add(&mt, &ms), &one) == n),
            (
                "theta m_theta + tau m_tau + k = 0",
                add(&add(&mul(t, &mt), &mul(s, &ms)), &k).is_zero(),
            ),
            (
                "theta^2 m_theta + tau^2 m_tau + k^2 = nk",
                add(&add(&mul(&mul(t, t), &mt), &mul(&mul(s, s), &ms)), &mul(&k, &k)) == mul(&n, &k),
            ),
            (
                "theta m_tau + tau m_theta = (n-1)(theta+tau) + k",
                add(&mul(t, &ms), &mul(s, &mt)) == add(&mul(&n1, &ts), &k),
            ),
            (
                "theta tau (m_theta + m_tau) = k^2 - nk - k(theta+tau)",
                mul(&tt, &add(&mt, &ms)) == sub(&sub(&mul(&k, &k), &mul(&n, &k)), &mul(&k, &ts)),
            ),
            (
                "(theta tau + k) n = k^2 - k(theta+tau) + theta tau",
                mul(&add(&tt, &k), &n) == add(&sub(&mul(&k, &k), &mul(&k, &ts)), &tt),
            ),
        ]
    }

    pub fn identities_hold(&self) -> bool {
        self.identity_checks().iter().all(|(_, ok)| *ok)
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SRG({}, {}, {}, {}) spectrum {}^1 {}^{} {}^{}",
            self.n, self.k, self.a, self.c, self.k, self.theta, self.m_theta, self.tau, self.m_tau
        )
    }
}

fn not_srg(reason: impl Into<String>, witness: Option<(usize, usize)>) -> Error {
    Error::NotSrg {
        reason: reason.into(),
        witness,
    }
}

/// Checks `A² = kI + aA + c(J − I − A)` entrywise and returns the parameters.
pub fn verify_srg(g: &LabeledGraph) -> Result<SrgParams> {
    let n = g.n();
    if n < 3 {
        return Err(not_srg(format!("{n} vertices is too few"), None));
    }
    let k = g.degree(0);
    if let Some(u) = (0..n).find(|&u| g.degree(u) != k) {
        return Err(not_srg(
            format!("not regular: vertex {u} has degree {} but vertex 0 has {k}", g.degree(u)),
            Some((u, u)),
        ));
    }
    if k == 0 {
        return Err(not_srg("edgeless graph", None));
    }
    if k == n - 1 {
        return Err(not_srg("complete graph (imprimitive)", None));
    }
    if !g.is_connected() {
        return Err(not_srg("disconnected (imprimitive)", None));
    }
    let common = |u: usize, v: usize| (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
    let mut a: Option<usize> = None;
    let mut c: Option<usize> = None;
    for u in 0..n {
        for v in u + 1..n {
            let x = common(u, v);
            let (slot, kind) = if g.has_edge(u, v) {
                (&mut a, "adjacent")
            } else {
                (&mut c, "non-adjacent")
            };
            match *slot {
                None => *slot = Some(x),
                Some(prev) if prev != x => {
                    return Err(not_srg(
                        format!("{kind} pair ({u}, {v}) has {x} common neighbours, expected {prev}"),
                        Some((u, v)),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    let a = a.unwrap_or(0);
    let c = c.expect("non-complete graph has a non-adjacent pair");
    if c == k {
        return Err(not_srg(
            format!("c = k = {k}: complement is disconnected (imprimitive)"),
            None,
        ));
    }
    srg_from_params(n as u64, k as u64, a as u64, c as u64)
        .map_err(|e| not_srg(format!("parameters fail feasibility: {e}"), None))
}
