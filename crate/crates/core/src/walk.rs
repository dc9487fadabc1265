//! Numeric continuous-time quantum walk `U(t) = exp(itM)` through a full
//! symmetric eigendecomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::perturbation::{EigenClass, Parity, PerturbSpec};

/// Eigensolve residual tolerance.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Tolerance for classifying projections as balanced, skew or null.
pub const PARITY_TOL: f64 = 1e-8;
/// Tolerance used by fidelity assertions.
pub const FIDELITY_TOL: f64 = 1e-9;
/// Eigenvalues closer than this are grouped into one eigenspace.
const CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SpectralNumeric {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
    pub tolerance: f64,
}

impl SpectralNumeric {
    /// Decomposes a symmetric matrix and checks reconstruction and
    /// orthonormality against `RESIDUAL_TOL`, scaled by the matrix norm.
    pub fn new(m: &DMatrix<f64>) -> Result<Self> {
        let eig = SymmetricEigen::new(m.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let eigenvectors = DMatrix::from_columns(
            &order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>(),
        );
        let scale = m.amax().max(1.0);
        let tolerance = RESIDUAL_TOL * scale;
        let lambda = DMatrix::from_diagonal(&DVector::from_vec(eigenvalues.clone()));
        let recon = (&eigenvectors * lambda * eigenvectors.transpose() - m).amax();
        let ortho = (eigenvectors.transpose() * &eigenvectors - DMatrix::identity(m.nrows(), m.nrows())).amax();
        let residual = recon.max(ortho);
        if residual >= tolerance {
            return Err(Error::IllConditioned { residual, tolerance });
        }
        Ok(Self { eigenvalues, eigenvectors, tolerance })
    }

    pub fn of(g: &LabeledGraph, s: &PerturbSpec) -> Result<Self> {
        Self::new(&s.matrix_f64(g)?)
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U(t)_{uv}` as `(re, im)`.
    pub fn amplitude(&self, u: usize, v: usize, t: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, &lam) in self.eigenvalues.iter().enumerate() {
            let c = self.eigenvectors[(u, r)] * self.eigenvectors[(v, r)];
            let (s, co) = (t * lam).sin_cos();
            re += c * co;
            im += c * s;
        }
        (re, im)
    }

    pub fn fidelity(&self, u: usize, v: usize, t: f64) -> f64 {
        let (re, im) = self.amplitude(u, v, t);
        re.hypot(im).min(1.0)
    }

    /// `Σ_w |U(t)_{uw}|²`, which is 1 for a unitary `U`.
    pub fn row_norm_squared(&self, u: usize, t: f64) -> f64 {
        (0..self.n())
            .map(|w| {
                let (re, im) = self.amplitude(u, w, t);
                re * re + im * im
            })
            .sum()
    }

    /// Eigenspaces as `(mean eigenvalue, column indices)`.
    pub fn clusters(&self) -> Vec<(f64, Vec<usize>)> {
        let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
        for (i, &lam) in self.eigenvalues.iter().enumerate() {
            match out.last_mut() {
                Some((_, idx)) if (lam - self.eigenvalues[*idx.last().expect("nonempty")]).abs() < CLUSTER_TOL => {
                    idx.push(i)
                }
                _ => out.push((lam, vec![i])),
            }
        }
        for (mean, idx) in &mut out {
            *mean = idx.iter().map(|&i| self.eigenvalues[i]).sum::<f64>() / idx.len() as f64;
        }
        out
    }

    /// `(λ_r, (E_r)_{uv})` per eigenspace, dropping spaces with no weight:
    /// `U(t)_{uv} = Σ_r e^{itλ_r} (E_r)_{uv}`.
    pub fn support_terms(&self, u: usize, v: usize) -> Vec<(f64, f64)> {
        self.clusters()
            .into_iter()
            .map(|(lam, idx)| {
                let c: f64 = idx.iter().map(|&i| self.eigenvectors[(u, i)] * self.eigenvectors[(v, i)]).sum();
                (lam, c)
            })
            .filter(|&(_, c)| c.abs() > PARITY_TOL * PARITY_TOL)
            .collect()
    }
}

/// `|U(t)_{uv}|` for the perturbed graph.
pub fn fidelity(g: &LabeledGraph, s: &PerturbSpec, t: f64) -> Result<f64> {
    Ok(SpectralNumeric::of(g, s)?.fidelity(s.u, s.v, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumericParity {
    #[serde(rename = "+")]
    Balanced,
    #[serde(rename = "-")]
    Skew,
    #[serde(rename = "0")]
    Null,
    /// Both symmetric and antisymmetric parts present.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericClass {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub parity: NumericParity,
    /// `‖E_r e_u‖`
    pub norm_u: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub classes: Vec<NumericClass>,
    pub strongly_cospectral: bool,
}

impl ProjectionReport {
    /// Whether every numeric eigenspace carries the parities the exact
    /// classification predicts for eigenvalues at that position.
    pub fn matches_exact(&self, exact: &[EigenClass]) -> bool {
        let mut covered = 0u64;
        for c in &self.classes {
            let here: Vec<&EigenClass> = exact
                .iter()
                .filter(|e| (e.value.approx() - c.eigenvalue).abs() < CLUSTER_TOL)
                .collect();
            let mult: u64 = here.iter().map(|e| e.multiplicity).sum();
            if mult != c.multiplicity as u64 {
                return false;
            }
            covered += mult;
            let has = |p: Parity| here.iter().any(|e| e.parity == p);
            let ok = match c.parity {
                NumericParity::Null => !has(Parity::Balanced) && !has(Parity::Skew),
                NumericParity::Balanced => has(Parity::Balanced) && !has(Parity::Skew),
                NumericParity::Skew => has(Parity::Skew) && !has(Parity::Balanced),
                NumericParity::Mixed => has(Parity::Balanced) && has(Parity::Skew),
            };
            if !ok {
                return false;
            }
        }
        covered == exact.iter().map(|e| e.multiplicity).sum::<u64>()
    }
}

/// Classifies `E_r e_u` against `E_r e_v` for every numeric eigenspace.
pub fn projection_parity_check(g: &LabeledGraph, s: &PerturbSpec) -> Result<ProjectionReport> {
    let sn = SpectralNumeric::of(g, s)?;
    Ok(projection_parity(&sn, s.u, s.v))
}

pub fn projection_parity(sn: &SpectralNumeric, u: usize, v: usize) -> ProjectionReport {
    let mut classes = Vec::new();
    for (lam, idx) in sn.clusters() {
        let project = |x: usize| -> DVector<f64> {
            let mut out = DVector::zeros(sn.n());
            for &i in &idx {
                let col = sn.eigenvectors.column(i);
                out += col * col[x];
            }
            out
        };
        let (pu, pv) = (project(u), project(v));
        let norm_u = pu.norm();
        let parity = if norm_u < PARITY_TOL && pv.norm() < PARITY_TOL {
            NumericParity::Null
        } else if (&pu - &pv).norm() < PARITY_TOL {
            NumericParity::Balanced
        } else if (&pu + &pv).norm() < PARITY_TOL {
            NumericParity::Skew
        } else {
            NumericParity::Mixed
        };
        classes.push(NumericClass { eigenvalue: lam, multiplicity: idx.len(), parity, norm_u });
    }
    let strongly_cospectral = classes.iter().all(|c| c.parity != NumericParity::Mixed);
    ProjectionReport { classes, strongly_cospectral }
}

/// `time,fidelity` rows on `t = 0, step, 2·step, …, ≤ horizon`.
pub fn fidelity_trace(sn: &SpectralNumeric, u: usize, v: usize, horizon: f64, step: f64) -> Vec<(f64, f64)> {
    let count = (horizon / step).floor() as usize;
    (0..=count)
        .map(|i| {
            let t = i as f64 * step;
            (t, sn.fidelity(u, v, t))
        })
        .collect()
}

pub fn trace_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("time,fidelity\n");
    for (t, f) in rows {
        out.push_str(&format!("{t:.6},{f:.12}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::graph::families::{complete, oa_graph, petersen};
    use std::f64::consts::PI;

    #[test]
    fn k2_transfers_at_half_pi() {
        let g = complete(2);
        let s = PerturbSpec::on_graph(&g, 0, 1, int(0), int(0)).unwrap();
        assert!(fidelity(&g, &s, 0.0).unwrap() < 1e-12);
        assert!((fidelity(&g, &s, PI / 2.0).unwrap() - 1.0).abs() < FIDELITY_TOL);
    }

    #[test]
    fn oa34_pst_numeric() {
        let g = oa_graph(3, 4).unwrap();
        let v = (1..16).find(|&v| !g.has_edge(0, v)).unwrap();
        let s = PerturbSpec::on_graph(&g, 0, v, int(2), int(-2)).unwrap();
        let sn = SpectralNumeric::of(&g, &s).unwrap();
        assert!(sn.fidelity(0, v, PI / 2.0) > 1.0 - FIDELITY_TOL);
        assert!((sn.fidelity(0, v, PI / 2.0 + 2.0 * PI) - sn.fidelity(0, v, PI / 2.0)).abs() < FIDELITY_TOL);
        let r = projection_parity(&sn, 0, v);
        assert!(r.strongly_cospectral);
    }

    #[test]
    fn unitarity_and_symmetry() {
        let g = petersen();
        let s = PerturbSpec::on_graph(&g, 0, 1, int(1), int(3)).unwrap();
        let sn = SpectralNumeric::of(&g, &s).unwrap();
        for i in 0..20 {
            let t = 0.37 * i as f64;
            assert!((sn.row_norm_squared(0, t) - 1.0).abs() < 1e-10);
            assert!((sn.fidelity(0, 1, t) - sn.fidelity(1, 0, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn unperturbed_srg_is_mixed() {
        let g = petersen();
        let v = (1..10).find(|&v| !g.has_edge(0, v)).unwrap();
        let r = projection_parity_check(&g, &PerturbSpec::on_graph(&g, 0, v, int(0), int(0)).unwrap()).unwrap();
        assert!(!r.strongly_cospectral);
        assert_eq!(r.classes.len(), 3);
        assert_eq!(r.classes[2].parity, NumericParity::Balanced);
    }

    #[test]
    fn csv_layout() {
        let g = complete(2);
        let s = PerturbSpec::on_graph(&g, 0, 1, int(0), int(0)).unwrap();
        let sn = SpectralNumeric::of(&g, &s).unwrap();
        let rows = fidelity_trace(&sn, 0, 1, 1.0, 0.5);
        assert_eq!(rows.len(), 3);
        let csv = trace_csv(&rows);
        assert!(csv.starts_with("time,fidelity\n0.000000,0.000000000000\n"));
    }
}
