//! Exact spectral data: polynomials, characteristic polynomials, the walk
//! polynomials of a vertex pair and the idempotent rows of an SRG.

pub mod charpoly;
pub mod poly;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::srg::SrgParams;
use crate::graph::LabeledGraph;
use charpoly::{adjugate_entry, charpoly_matrix, delete_indices};
use poly::RatPoly;

/// Walk polynomials of a vertex pair `(u, v)`.
///
/// `phi_uv` is the `(u, v)` entry of `adj(tI − A)`, so that
/// `phi_uv / phi = ((tI − A)^{-1})_{uv}` with its sign fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiPolys {
    pub phi: RatPoly,
    pub phi_u: RatPoly,
    pub phi_v: RatPoly,
    pub phi_uv: RatPoly,
    /// Characteristic polynomial with both `u` and `v` deleted.
    pub phi_pair: RatPoly,
}

impl PhiPolys {
    /// `phi_uv² = phi_u·phi_v − phi·phi_pair`, checked exactly.
    pub fn jacobi_identity_holds(&self) -> bool {
        &self.phi_uv * &self.phi_uv == &(&self.phi_u * &self.phi_v) - &(&self.phi * &self.phi_pair)
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    if u == v {
        return Err(Error::InvalidPair(format!("u = v = {u}")));
    }
    if u >= n || v >= n {
        return Err(Error::InvalidPair(format!("({u}, {v}) out of range for {n} vertices")));
    }
    Ok(())
}

/// Walk polynomials for an arbitrary symmetric rational matrix.
pub fn phi_polys_matrix(m: &[Vec<Rational>], u: usize, v: usize) -> Result<PhiPolys> {
    check_pair(m.len(), u, v)?;
    Ok(PhiPolys {
        phi: charpoly_matrix(m),
        phi_u: charpoly_matrix(&delete_indices(m, &[u])),
        phi_v: charpoly_matrix(&delete_indices(m, &[v])),
        phi_uv: adjugate_entry(m, u, v),
        phi_pair: charpoly_matrix(&delete_indices(m, &[u, v])),
    })
}

pub fn phi_polys(g: &LabeledGraph, u: usize, v: usize) -> Result<PhiPolys> {
    phi_polys_matrix(&g.rational_matrix(), u, v)
}

/// Row `u` of one spectral idempotent, restricted to the entries `(u, u)`
/// and `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentRow {
    #[serde(with = "crate::arith::serde_rational")]
    pub eigenvalue: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub uu_entry: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub uv_entry: Rational,
}

/// The rows of `E_k`, `E_theta`, `E_tau` for a pair at distance one
/// (`adjacent`) or two.
pub fn srg_idempotent_rows(p: &SrgParams, adjacent: bool) -> Result<[IdempotentRow; 3]> {
    let (k, theta, tau) = p.rational_eigenvalues()?;
    let q = |x: u64| Rational::from_integer(x.into());
    let n = q(p.n);
    let uv = |m: u64, r: &Rational| -> Rational {
        let base = q(m) / &n;
        if adjacent {
            base * r / &k
        } else {
            -base * (r + Rational::one()) / (&n - &k - Rational::one())
        }
    };
    Ok([
        IdempotentRow {
            eigenvalue: k.clone(),
            uu_entry: Rational::one() / &n,
            uv_entry: Rational::one() / &n,
        },
        IdempotentRow {
            uu_entry: q(p.m_theta) / &n,
            uv_entry: uv(p.m_theta, &theta),
            eigenvalue: theta,
        },
        IdempotentRow {
            uu_entry: q(p.m_tau) / &n,
            uv_entry: uv(p.m_tau, &tau),
            eigenvalue: tau,
        },
    ])
}

/// `sum_r weight_r / (t − θ_r)` as `(numerator, denominator)`, with the
/// denominator `prod_r (t − θ_r)`.
pub fn partial_fractions(terms: &[(Rational, Rational)]) -> (RatPoly, RatPoly) {
    let den = RatPoly::from_roots(terms.iter().map(|(r, _)| r));
    let mut num = RatPoly::zero();
    for (i, (_, w)) in terms.iter().enumerate() {
        let others = RatPoly::from_roots(
            terms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (r, _))| r),
        );
        num = &num + &others.scale(w);
    }
    (num, den)
}

/// Whether `a/b = c/d` as rational functions.
pub fn same_rational_function(a: &RatPoly, b: &RatPoly, c: &RatPoly, d: &RatPoly) -> bool {
    (a * d) == (c * b)
}

/// Cross-checks `phi_u/phi` and `phi_uv/phi` against the idempotent rows.
pub fn idempotent_rows_match(phis: &PhiPolys, rows: &[IdempotentRow]) -> bool {
    let uu: Vec<_> = rows.iter().map(|r| (r.eigenvalue.clone(), r.uu_entry.clone())).collect();
    let uv: Vec<_> = rows.iter().map(|r| (r.eigenvalue.clone(), r.uv_entry.clone())).collect();
    let (nu, du) = partial_fractions(&uu);
    let (nv, dv) = partial_fractions(&uv);
    same_rational_function(&phis.phi_u, &phis.phi, &nu, &du)
        && same_rational_function(&phis.phi_uv, &phis.phi, &nv, &dv)
}

impl IdempotentRow {
    pub fn is_zero(&self) -> bool {
        self.uu_entry.is_zero() && self.uv_entry.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::graph::families::{clebsch, complete, petersen};
    use crate::graph::srg::srg_from_params;

    #[test]
    fn k2_walk_polys() {
        let p = phi_polys(&complete(2), 0, 1).unwrap();
        assert_eq!(p.phi_uv, RatPoly::one());
        assert_eq!(p.phi_u, RatPoly::t());
        assert_eq!(p.phi_pair, RatPoly::one());
        assert!(p.jacobi_identity_holds());
    }

    #[test]
    fn petersen_adjacent_pair() {
        let g = petersen();
        let (u, v) = g.edges()[0];
        let p = phi_polys(&g, u, v).unwrap();
        assert!(p.jacobi_identity_holds());
        assert_eq!(p.phi_u, p.phi_v);
    }

    #[test]
    fn clebsch_rows() {
        let p = srg_from_params(16, 5, 0, 2).unwrap();
        let rows = srg_idempotent_rows(&p, false).unwrap();
        assert_eq!(rows[0].uu_entry, frac(1, 16));
        assert_eq!(rows[1].uu_entry, frac(10, 16));
        assert_eq!(rows[2].uu_entry, frac(5, 16));
        let total: Rational = rows.iter().map(|r| r.uu_entry.clone()).sum();
        assert_eq!(total, int(1));
        let a_uv: Rational = rows.iter().map(|r| &r.eigenvalue * &r.uv_entry).sum();
        assert_eq!(a_uv, int(0));
        let adj = srg_idempotent_rows(&p, true).unwrap();
        let a_uv: Rational = adj.iter().map(|r| &r.eigenvalue * &r.uv_entry).sum();
        assert_eq!(a_uv, int(1));
        let uv_sum: Rational = adj.iter().map(|r| r.uv_entry.clone()).sum();
        assert_eq!(uv_sum, int(0));
    }

    #[test]
    fn clebsch_rows_reproduce_walk_functions() {
        let g = clebsch();
        let p = srg_from_params(16, 5, 0, 2).unwrap();
        let non_adj = (1..16).find(|&v| !g.has_edge(0, v)).unwrap();
        let phis = phi_polys(&g, 0, non_adj).unwrap();
        assert!(idempotent_rows_match(&phis, &srg_idempotent_rows(&p, false).unwrap()));
        assert!(!idempotent_rows_match(&phis, &srg_idempotent_rows(&p, true).unwrap()));
        let phis = phi_polys(&g, 0, g.neighbors(0).next().unwrap()).unwrap();
        assert!(idempotent_rows_match(&phis, &srg_idempotent_rows(&p, true).unwrap()));
    }

    #[test]
    fn conference_rows_rejected() {
        let p = srg_from_params(13, 6, 2, 3).unwrap();
        assert_eq!(srg_idempotent_rows(&p, true), Err(Error::IrrationalEigenvalues));
    }
}
