use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use srg_transfer::arith::{fmt_rational, fmt_rational_short, parse_rational, Rational};
use srg_transfer::certificate::{certify_with, round12, CertifyOptions, TransferCertificate, Verdict};
use srg_transfer::graph::families::oa_expected_params;
use srg_transfer::graph::srg::{verify_srg, SrgParams};
use srg_transfer::perturbation::{edge_perturbation_invariance, one_walk_regular, EdgeInvarianceReport};
use srg_transfer::pst::{
    affine_polar_pst_predicate, oa_pst_predicate, synthesize_beta_adjacent, synthesize_beta_nonadjacent,
    CandidateSource, OddCore, SynthesisOptions,
};
use srg_transfer::walk::{fidelity_trace, trace_csv, SpectralNumeric};
use srg_transfer::{Error, Result};

use crate::input::{load_graph, Input, PairArgs, Source, Weights};
use crate::Format;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn positive(horizon: f64, step: f64) -> Result<()> {
    if horizon > 0.0 && step > 0.0 && horizon.is_finite() && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("horizon and step must be positive".into()))
    }
}

fn time_text(cert: &TransferCertificate) -> String {
    cert.time_pi_multiple.as_ref().map(fmt_rational).unwrap_or_default()
}

fn opt_float(x: Option<f64>) -> String {
    x.map(|x| format!("{:.12}", round12(x))).unwrap_or_default()
}

// certify

pub fn certify(
    source: &Source,
    pair: &PairArgs,
    weights: &Weights,
    pst_only: bool,
    horizon: f64,
    step: f64,
    format: Format,
) -> Result<(String, bool)> {
    positive(horizon, step)?;
    let input = Input::resolve(source)?;
    let (beta, gamma) = weights.parse()?;
    let spec = input.spec(pair, beta, gamma)?;
    let opts = CertifyOptions { pgst: !pst_only, scan_horizon: horizon, scan_step: step };
    let cert = certify_with(&input.params, &spec, input.graph.as_ref(), opts)?;
    let out = match format {
        Format::Json => cert.to_json() + "\n",
        Format::Human => cert.human(),
        Format::Csv => format!(
            "verdict,beta,gamma,time_pi,fidelity,checked_at_time\n{},{},{},{},{},{}\n",
            cert.verdict,
            fmt_rational(&cert.beta),
            fmt_rational(&cert.gamma),
            time_text(&cert),
            opt_float(cert.fidelity),
            opt_float(cert.checked_at_time)
        ),
    };
    Ok((out, cert.verdict.transfers()))
}

// synthesize

#[derive(Serialize)]
struct CandidateReport {
    #[serde(serialize_with = "ser_rational")]
    beta: Rational,
    #[serde(serialize_with = "ser_rational")]
    gamma: Rational,
    source: CandidateSource,
    certificate: TransferCertificate,
}

#[derive(Serialize)]
struct SynthesisReport {
    params: [u64; 4],
    adjacent: bool,
    possible: bool,
    reason: Option<String>,
    core: Option<OddCore>,
    candidates: Vec<CandidateReport>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

fn source_text(src: &CandidateSource) -> String {
    match src {
        CandidateSource::Canonical => "canonical".into(),
        CandidateSource::Family { q1, q2 } => format!("q1={q1} q2={q2}"),
    }
}

pub fn synthesize(
    source: &Source,
    pair: &PairArgs,
    bound: u64,
    limit: Option<usize>,
    format: Format,
) -> Result<(String, bool)> {
    let input = Input::resolve(source)?;
    let adjacent = input.adjacency(pair)?;
    let opts = SynthesisOptions { bound };
    let mut syn = if adjacent {
        synthesize_beta_adjacent(&input.params, opts)?
    } else {
        synthesize_beta_nonadjacent(&input.params, opts)?
    };
    if let Some(limit) = limit {
        syn.candidates.truncate(limit);
    }
    let pst_opts = CertifyOptions { pgst: false, ..CertifyOptions::default() };
    let mut candidates = Vec::with_capacity(syn.candidates.len());
    for cand in syn.candidates {
        let spec = input.spec(pair, cand.beta.clone(), cand.gamma.clone())?;
        let certificate = certify_with(&input.params, &spec, input.graph.as_ref(), pst_opts)?;
        candidates.push(CandidateReport { beta: cand.beta, gamma: cand.gamma, source: cand.source, certificate });
    }
    let p = &input.params;
    let report = SynthesisReport {
        params: [p.n, p.k, p.a, p.c],
        adjacent,
        possible: syn.possible,
        reason: syn.reason,
        core: syn.core,
        candidates,
    };
    let verified = report.candidates.iter().all(|c| c.certificate.verdict == Verdict::Pst);
    let out = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("beta,gamma,source,verdict,time_pi,fidelity\n");
            for c in &report.candidates {
                let cert = &c.certificate;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt_rational(&c.beta),
                    fmt_rational(&c.gamma),
                    source_text(&c.source),
                    cert.verdict,
                    time_text(cert),
                    opt_float(cert.fidelity)
                );
            }
            out
        }
        Format::Human => {
            let mut out = format!(
                "srg({},{},{},{}) {} pair: ",
                p.n,
                p.k,
                p.a,
                p.c,
                if adjacent { "adjacent" } else { "non-adjacent" }
            );
            match &report.reason {
                None => {
                    let _ = writeln!(out, "{} candidate(s)", report.candidates.len());
                }
                Some(why) => {
                    let _ = writeln!(out, "impossible ({why})");
                }
            }
            for c in &report.candidates {
                let cert = &c.certificate;
                let _ = writeln!(
                    out,
                    "beta = {}, gamma = {} [{}] {} time {} pi{}",
                    fmt_rational_short(&c.beta),
                    fmt_rational_short(&c.gamma),
                    source_text(&c.source),
                    cert.verdict,
                    time_text(cert),
                    cert.fidelity.map(|f| format!(" fidelity {f:.12}")).unwrap_or_default()
                );
            }
            out
        }
    };
    Ok((out, report.possible && verified))
}

// sweep

pub struct SweepGrid {
    pub max_num: u64,
    pub max_den: u64,
    pub gamma: Option<String>,
    pub horizon: f64,
    pub step: f64,
}

impl SweepGrid {
    /// Distinct values `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`, ascending.
    pub fn betas(&self) -> Vec<Rational> {
        let mut set = BTreeSet::new();
        let m = self.max_num as i64;
        for q in 1..=self.max_den.max(1) as i64 {
            for p in -m..=m {
                set.insert(Rational::new(p.into(), q.into()));
            }
        }
        set.into_iter().collect()
    }
}

#[derive(Serialize)]
struct SweepRow {
    beta: String,
    gamma: String,
    verdict: String,
    time_pi_multiple: Option<String>,
    #[serde(serialize_with = "ser_round_opt")]
    fidelity: Option<f64>,
    #[serde(serialize_with = "ser_round_opt")]
    checked_at_time: Option<f64>,
    error: Option<String>,
}

fn ser_round_opt<S: serde::Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_f64(round12(*x)),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct SweepReport {
    params: [u64; 4],
    u: usize,
    v: usize,
    adjacent: bool,
    counts: Vec<(String, usize)>,
    rows: Vec<SweepRow>,
}

fn sweep_row(input: &Input, pair: &PairArgs, beta: Rational, gamma: Rational, opts: CertifyOptions) -> SweepRow {
    let mut row = SweepRow {
        beta: fmt_rational(&beta),
        gamma: fmt_rational(&gamma),
        verdict: String::new(),
        time_pi_multiple: None,
        fidelity: None,
        checked_at_time: None,
        error: None,
    };
    let result = input
        .spec(pair, beta, gamma)
        .and_then(|s| certify_with(&input.params, &s, input.graph.as_ref(), opts));
    match result {
        Ok(cert) => {
            row.verdict = cert.verdict.to_string();
            row.time_pi_multiple = cert.time_pi_multiple.as_ref().map(fmt_rational);
            row.fidelity = cert.fidelity;
            row.checked_at_time = cert.checked_at_time;
        }
        Err(Error::TrivialPerturbation) => row.verdict = "trivial-perturbation".into(),
        Err(e) => {
            row.verdict = "error".into();
            row.error = Some(e.to_string());
        }
    }
    row
}

pub fn sweep(
    source: &Source,
    pair: &PairArgs,
    grid: &SweepGrid,
    jobs: Option<usize>,
    format: Format,
) -> Result<(String, bool)> {
    positive(grid.horizon, grid.step)?;
    let input = Input::resolve(source)?;
    let probe = input.spec(pair, Rational::from_integer(1.into()), Rational::from_integer(0.into()))?;
    let fixed_gamma = grid.gamma.as_deref().map(parse_rational).transpose()?;
    let weights: Vec<(Rational, Rational)> = grid
        .betas()
        .into_iter()
        .map(|b| {
            let g = fixed_gamma.clone().unwrap_or_else(|| -b.clone());
            (b, g)
        })
        .collect();
    let opts = CertifyOptions { pgst: true, scan_horizon: grid.horizon, scan_step: grid.step };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    // indexed collect keeps grid order whatever the completion order
    let rows: Vec<SweepRow> = pool.install(|| {
        weights
            .into_par_iter()
            .map(|(b, g)| sweep_row(&input, pair, b, g, opts))
            .collect()
    });

    let mut counts: Vec<(String, usize)> = Vec::new();
    for row in &rows {
        match counts.iter_mut().find(|(v, _)| *v == row.verdict) {
            Some((_, n)) => *n += 1,
            None => counts.push((row.verdict.clone(), 1)),
        }
    }
    counts.sort();
    let p = &input.params;
    let report = SweepReport {
        params: [p.n, p.k, p.a, p.c],
        u: probe.u,
        v: probe.v,
        adjacent: probe.adjacent,
        counts,
        rows,
    };
    let out = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("beta,gamma,verdict,time_pi,fidelity,checked_at_time\n");
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.beta,
                    r.gamma,
                    r.verdict,
                    r.time_pi_multiple.as_deref().unwrap_or(""),
                    opt_float(r.fidelity),
                    opt_float(r.checked_at_time)
                );
            }
            out
        }
        Format::Human => {
            let mut out = format!("srg({},{},{},{}) pair ({}, {}), {} rows\n", p.n, p.k, p.a, p.c, probe.u, probe.v, report.rows.len());
            for (verdict, n) in &report.counts {
                let _ = writeln!(out, "{verdict}: {n}");
            }
            for r in report.rows.iter().filter(|r| r.verdict == "pst") {
                let _ = writeln!(out, "pst at beta = {}, gamma = {}, time {} pi", r.beta, r.gamma, r.time_pi_multiple.as_deref().unwrap_or("?"));
            }
            out
        }
    };
    Ok((out, true))
}

// simulate

#[derive(Serialize)]
struct SimulationSummary {
    u: usize,
    v: usize,
    beta: String,
    gamma: String,
    horizon: f64,
    step: f64,
    samples: usize,
    best_time: f64,
    best_fidelity: f64,
    max_unitarity_deviation: f64,
}

pub fn simulate(
    source: &Source,
    pair: &PairArgs,
    weights: &Weights,
    horizon: f64,
    step: f64,
    format: Format,
) -> Result<(String, bool)> {
    positive(horizon, step)?;
    let input = Input::resolve(source)?;
    let g = input
        .graph
        .as_ref()
        .ok_or_else(|| Error::UnsupportedParameters("no explicit construction for these parameters; pass --graph6".into()))?;
    let (beta, gamma) = weights.parse()?;
    let spec = input.spec(pair, beta, gamma)?;
    let sn = SpectralNumeric::of(g, &spec)?;
    let trace = fidelity_trace(&sn, spec.u, spec.v, horizon, step);
    let out = match format {
        Format::Csv => trace_csv(&trace),
        Format::Json | Format::Human => {
            let (best_time, best_fidelity) = trace
                .iter()
                .copied()
                .fold((0.0, f64::MIN), |best, (t, f)| if f > best.1 { (t, f) } else { best });
            let deviation = trace
                .iter()
                .map(|&(t, _)| (sn.row_norm_squared(spec.u, t) - 1.0).abs())
                .fold(0.0, f64::max);
            let summary = SimulationSummary {
                u: spec.u,
                v: spec.v,
                beta: fmt_rational(&spec.beta),
                gamma: fmt_rational(&spec.gamma),
                horizon,
                step,
                samples: trace.len(),
                best_time: round12(best_time),
                best_fidelity: round12(best_fidelity),
                max_unitarity_deviation: round12(deviation),
            };
            if format == Format::Json {
                json(&summary)
            } else {
                format!(
                    "pair ({}, {}) beta = {}, gamma = {}\n{} samples up to t = {}\nbest fidelity {:.12} at t = {:.6}\nunitarity deviation {:e}\n",
                    summary.u,
                    summary.v,
                    summary.beta,
                    summary.gamma,
                    summary.samples,
                    horizon,
                    best_fidelity,
                    best_time,
                    deviation
                )
            }
        }
    };
    Ok((out, true))
}

// verify-graph

#[derive(Serialize)]
struct GraphReport {
    strongly_regular: bool,
    reason: Option<String>,
    witness: Option<(usize, usize)>,
    params: Option<SrgParams>,
    identities: Vec<(String, bool)>,
    one_walk_regular: Option<bool>,
    edge_invariance: Option<EdgeInvarianceReport>,
}

pub fn verify_graph(source: &Source, edges: bool, format: Format) -> Result<(String, bool)> {
    let graph = load_graph(source)?;
    let mut report = GraphReport {
        strongly_regular: false,
        reason: None,
        witness: None,
        params: None,
        identities: Vec::new(),
        one_walk_regular: None,
        edge_invariance: None,
    };
    let params = match &graph {
        Some(g) => verify_srg(g),
        None => Input::resolve(source).map(|i| i.params),
    };
    match params {
        Ok(p) => {
            report.strongly_regular = true;
            report.identities = p.identity_checks().into_iter().map(|(n, ok)| (n.to_string(), ok)).collect();
            report.params = Some(p);
        }
        Err(Error::NotSrg { reason, witness }) => {
            report.reason = Some(reason);
            report.witness = witness;
        }
        Err(e) => return Err(e),
    }
    if let Some(g) = &graph {
        let walk = one_walk_regular(g);
        report.one_walk_regular = Some(walk.is_ok());
        if edges && walk.is_ok() {
            let samples = [
                (Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())),
                (Rational::from_integer(2.into()), Rational::from_integer((-2).into())),
            ];
            report.edge_invariance = Some(edge_perturbation_invariance(g, &samples)?);
        }
    }
    let ok = report.strongly_regular && report.identities.iter().all(|(_, ok)| *ok);
    let out = match format {
        Format::Json => json(&report),
        Format::Human | Format::Csv => {
            let mut out = String::new();
            match &report.params {
                Some(p) => {
                    let _ = writeln!(out, "{p}");
                    for (name, holds) in &report.identities {
                        let _ = writeln!(out, "{name}: {}", if *holds { "ok" } else { "FAILS" });
                    }
                }
                None => {
                    let _ = write!(out, "not strongly regular: {}", report.reason.as_deref().unwrap_or(""));
                    if let Some((u, v)) = report.witness {
                        let _ = write!(out, " (pair {u}, {v})");
                    }
                    out.push('\n');
                }
            }
            if let Some(w) = report.one_walk_regular {
                let _ = writeln!(out, "1-walk-regular: {}", if w { "yes" } else { "no" });
            }
            if let Some(e) = &report.edge_invariance {
                for s in &e.samples {
                    let _ = writeln!(
                        out,
                        "beta = {}, gamma = {}: {} distinct polynomial(s) over {} edges",
                        fmt_rational_short(&s.beta),
                        fmt_rational_short(&s.gamma),
                        s.distinct_polynomials,
                        e.edges_checked
                    );
                }
            }
            out
        }
    };
    Ok((out, ok))
}

// family

#[derive(Serialize)]
struct OaReport {
    k: u64,
    n: u64,
    params: [u64; 4],
    nonadjacent: bool,
    adjacent: bool,
}

pub fn family_oa(k: u64, n: u64, format: Format) -> Result<(String, bool)> {
    if k < 2 || n < 2 || k > n + 1 {
        return Err(Error::InvalidArgument(format!("OA({k},{n}) needs 2 <= k <= n + 1 and n >= 2")));
    }
    let (pn, pk, pa, pc) = oa_expected_params(k, n);
    let report = OaReport {
        k,
        n,
        params: [pn, pk, pa, pc],
        nonadjacent: oa_pst_predicate(k, n, false),
        adjacent: oa_pst_predicate(k, n, true),
    };
    let yn = |b: bool| if b { "yes" } else { "no" };
    let out = match format {
        Format::Json => json(&report),
        Format::Csv => format!("k,n,nonadjacent,adjacent\n{k},{n},{},{}\n", report.nonadjacent, report.adjacent),
        Format::Human => format!(
            "OA({k},{n}) = srg({pn},{pk},{pa},{pc})\nPST weights exist, non-adjacent pair: {}\nPST weights exist, adjacent pair: {}\n",
            yn(report.nonadjacent),
            yn(report.adjacent)
        ),
    };
    Ok((out, report.nonadjacent || report.adjacent))
}

pub fn family_affine_polar(e: u32, q: u64, kind: &str, format: Format) -> Result<(String, bool)> {
    let report = affine_polar_pst_predicate(e, q, kind.parse()?)?;
    let out = match format {
        Format::Json => json(&report),
        Format::Csv => format!("e,q,kind,k,theta,tau,pst\n{e},{q},{kind},{},{},{},{}\n", report.k, report.theta, report.tau, report.pst),
        Format::Human => format!(
            "VO({},{q}) {kind}: k = {}, theta = {}, tau = {}\nPST weights exist: {}\n",
            2 * e,
            report.k,
            report.theta,
            report.tau,
            if report.pst { "yes" } else { "no" }
        ),
    };
    Ok((out, report.pst))
}
