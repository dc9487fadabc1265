use std::path::PathBuf;

use clap::{Args, ValueEnum};
use srg_transfer::arith::{parse_rational, Rational};
use srg_transfer::graph::families::{builtin, graph_for_params, oa_graph};
use srg_transfer::graph::graph6::parse_graph6;
use srg_transfer::graph::srg::{srg_from_params, verify_srg, SrgParams};
use srg_transfer::graph::LabeledGraph;
use srg_transfer::perturbation::PerturbSpec;
use srg_transfer::{Error, Result};

/// Exactly one input source.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// SRG parameters n,k,a,c
    #[arg(long, value_name = "N,K,A,C")]
    pub params: Option<String>,
    /// File holding one graph in graph6 format
    #[arg(long, value_name = "FILE")]
    pub graph6: Option<PathBuf>,
    /// Named graph (petersen, clebsch, clebsch-complement, ..., oa:k,n)
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Orthogonal array graph OA(k,n)
    #[arg(long, value_name = "K,N")]
    pub oa: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairMode {
    Adjacent,
    #[value(alias = "non-adjacent")]
    Nonadjacent,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Pick the first adjacent or non-adjacent pair at vertex 0
    #[arg(long, conflicts_with_all = ["u", "v"])]
    pub pair: Option<PairMode>,
    #[arg(long, requires = "v")]
    pub u: Option<usize>,
    #[arg(long, requires = "u")]
    pub v: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Weights {
    /// Edge weight as an exact rational p/q
    #[arg(long, allow_hyphen_values = true)]
    pub beta: String,
    /// Loop weight as an exact rational p/q
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
}

impl Weights {
    pub fn parse(&self) -> Result<(Rational, Rational)> {
        Ok((parse_rational(&self.beta)?, parse_rational(&self.gamma)?))
    }
}

/// Resolved input: parameters plus an explicit graph when one is known.
pub struct Input {
    pub params: SrgParams,
    pub graph: Option<LabeledGraph>,
}

fn parse_list<const N: usize>(text: &str, what: &str) -> Result<[u64; N]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Error::InvalidArgument(format!("{what} expects {N} comma-separated integers, got '{text}'"));
    if parts.len() != N {
        return Err(bad());
    }
    let mut out = [0u64; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn from_graph(g: LabeledGraph) -> Result<Input> {
    let params = verify_srg(&g)?;
    Ok(Input { params, graph: Some(g) })
}

pub fn load_graph(src: &Source) -> Result<Option<LabeledGraph>> {
    if let Some(path) = &src.graph6 {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::InvalidArgument(format!("{} is empty", path.display())))?;
        return parse_graph6(line).map(Some);
    }
    if let Some(name) = &src.builtin {
        return builtin(name).map(Some);
    }
    if let Some(spec) = &src.oa {
        let [k, n] = parse_list::<2>(spec, "--oa")?;
        return oa_graph(k as usize, n as usize).map(Some);
    }
    Ok(None)
}

impl Input {
    pub fn resolve(src: &Source) -> Result<Self> {
        if let Some(text) = &src.params {
            let [n, k, a, c] = parse_list::<4>(text, "--params")?;
            let params = srg_from_params(n, k, a, c)?;
            let graph = graph_for_params(&params);
            return Ok(Input { params, graph });
        }
        match load_graph(src)? {
            Some(g) => from_graph(g),
            None => Err(Error::InvalidArgument("no input source".into())),
        }
    }

    /// Builds the perturbation spec. Without an explicit graph the pair is
    /// `(0, 1)` with the requested adjacency.
    pub fn spec(&self, pair: &PairArgs, beta: Rational, gamma: Rational) -> Result<PerturbSpec> {
        match (pair.u, pair.v, pair.pair) {
            (Some(u), Some(v), _) => match &self.graph {
                Some(g) => PerturbSpec::on_graph(g, u, v, beta, gamma),
                None => Err(Error::InvalidArgument(
                    "--u/--v need an explicit graph; no construction is known for these parameters, use --pair".into(),
                )),
            },
            (_, _, Some(mode)) => {
                let adjacent = mode == PairMode::Adjacent;
                match &self.graph {
                    Some(g) => {
                        let (u, v) = g.find_pair(adjacent).ok_or_else(|| {
                            Error::InvalidPair(format!("graph has no {} pair", if adjacent { "adjacent" } else { "non-adjacent" }))
                        })?;
                        PerturbSpec::new(u, v, beta, gamma, adjacent)
                    }
                    None => PerturbSpec::new(0, 1, beta, gamma, adjacent),
                }
            }
            _ => Err(Error::InvalidArgument("give --pair adjacent|nonadjacent or --u and --v".into())),
        }
    }

    /// Adjacency requested by `--pair` or implied by `--u/--v`.
    pub fn adjacency(&self, pair: &PairArgs) -> Result<bool> {
        let spec = self.spec(pair, Rational::from_integer(1.into()), Rational::from_integer(0.into()))?;
        Ok(spec.adjacent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(text: &str) -> Source {
        Source { params: Some(text.into()), graph6: None, builtin: None, oa: None }
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list::<4>("16, 9,4,6", "x").unwrap(), [16, 9, 4, 6]);
        assert!(parse_list::<4>("16,9,4", "x").is_err());
        assert!(parse_list::<2>("3,-4", "x").is_err());
    }

    #[test]
    fn params_pick_up_a_construction() {
        let input = Input::resolve(&params("16,9,4,6")).unwrap();
        assert!(input.graph.is_some());
        let pair = PairArgs { pair: Some(PairMode::Nonadjacent), u: None, v: None };
        let s = input.spec(&pair, Rational::from_integer(2.into()), Rational::from_integer((-2).into())).unwrap();
        assert!(!s.adjacent);
        assert!(!input.graph.unwrap().has_edge(s.u, s.v));
    }

    #[test]
    fn explicit_pair_needs_graph() {
        let input = Input { params: srg_from_params(10, 3, 0, 1).unwrap(), graph: None };
        let pair = PairArgs { pair: None, u: Some(0), v: Some(4) };
        assert!(input.spec(&pair, Rational::from_integer(1.into()), Rational::from_integer(0.into())).is_err());
    }

    #[test]
    fn decimals_rejected() {
        let w = Weights { beta: "0.5".into(), gamma: "0".into() };
        assert!(w.parse().is_err());
    }
}
