//! Named graphs and the orthogonal-array construction.

use super::srg::{verify_srg, SrgParams};
use super::LabeledGraph;
use crate::arith::is_prime;
use crate::error::{Error, Result};

pub fn complete(n: usize) -> LabeledGraph {
    LabeledGraph::empty(n).complement()
}

pub fn cycle(n: usize) -> LabeledGraph {
    let mut g = LabeledGraph::empty(n);
    for i in 0..n {
        if n > 1 && i != (i + 1) % n {
            g.add_edge(i, (i + 1) % n).expect("in range");
        }
    }
    g
}

pub fn path(n: usize) -> LabeledGraph {
    let mut g = LabeledGraph::empty(n);
    for i in 1..n {
        g.add_edge(i - 1, i).expect("in range");
    }
    g
}

/// Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen() -> LabeledGraph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut g = LabeledGraph::empty(10);
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                g.add_edge(x, y).expect("in range");
            }
        }
    }
    g
}

/// Folded 5-cube: vectors of `F_2^4`, adjacent when they differ in one
/// coordinate or in all four. Parameters (16, 5, 0, 2).
pub fn clebsch() -> LabeledGraph {
    let mut g = LabeledGraph::empty(16);
    for x in 0..16usize {
        for y in x + 1..16 {
            let d = (x ^ y).count_ones();
            if d == 1 || d == 4 {
                g.add_edge(x, y).expect("in range");
            }
        }
    }
    g
}

/// Triangular graph T(m): line graph of K_m.
pub fn triangular(m: usize) -> LabeledGraph {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut g = LabeledGraph::empty(pairs.len());
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a == c || a == d || b == c || b == d {
                g.add_edge(x, y).expect("in range");
            }
        }
    }
    g
}

/// Paley graph on a prime `p ≡ 1 (mod 4)`.
pub fn paley(p: usize) -> Result<LabeledGraph> {
    if !is_prime(p as u64) || p % 4 != 1 {
        return Err(Error::UnsupportedParameters(format!(
            "Paley graph needs a prime p = 1 (mod 4), got {p}"
        )));
    }
    let squares: Vec<bool> = {
        let mut s = vec![false; p];
        for x in 1..p {
            s[x * x % p] = true;
        }
        s
    };
    let mut g = LabeledGraph::empty(p);
    for x in 0..p {
        for y in x + 1..p {
            if squares[(y - x) % p] {
                g.add_edge(x, y).expect("in range");
            }
        }
    }
    Ok(g)
}

/// Graph of an orthogonal array OA(k, n): vertices are the `n²` columns
/// `(i, j)` (vertex `i·n + j`), adjacent when they agree in exactly one row.
///
/// Rows are `i`, `j` and `i + m·j (mod n)` for `m = 1..k-2`. For `k = 3` the
/// cyclic Latin square works for every `n`; for `k > 3` the multipliers must
/// be distinct units, so `n` must be prime and `k ≤ n + 1`.
pub fn oa_graph(k: usize, n: usize) -> Result<LabeledGraph> {
    if k < 2 || n < 2 {
        return Err(Error::UnsupportedParameters(format!(
            "OA({k},{n}) needs k >= 2 and n >= 2"
        )));
    }
    if k > 3 && !(is_prime(n as u64) && k <= n + 1) {
        return Err(Error::UnsupportedParameters(format!(
            "OA({k},{n}): for k > 3 only prime n with k <= n + 1 is constructed"
        )));
    }
    let column = |v: usize| -> Vec<usize> {
        let (i, j) = (v / n, v % n);
        let mut col = vec![i, j];
        col.extend((1..=k - 2).map(|m| (i + m * j) % n));
        col
    };
    let cols: Vec<Vec<usize>> = (0..n * n).map(column).collect();
    let mut g = LabeledGraph::empty(n * n);
    for x in 0..n * n {
        for y in x + 1..n * n {
            let agree = cols[x].iter().zip(&cols[y]).filter(|(a, b)| a == b).count();
            if agree == 1 {
                g.add_edge(x, y).expect("in range");
            }
        }
    }
    Ok(g)
}

/// Whether [`oa_graph`] accepts `(k, n)`.
pub fn oa_constructible(k: usize, n: usize) -> bool {
    k >= 2 && n >= 2 && (k <= 3 || (is_prime(n as u64) && k <= n + 1))
}

/// Parameters an OA(k, n) graph should have.
pub fn oa_expected_params(k: u64, n: u64) -> (u64, u64, u64, u64) {
    (n * n, (n - 1) * k, n - 2 + (k - 1) * (k - 2), k * (k - 1))
}

/// Named builtin graphs accepted by the CLI and the browser demo.
pub const BUILTINS: &[&str] = &[
    "petersen",
    "petersen-complement",
    "clebsch",
    "clebsch-complement",
    "lattice-4",
    "triangular-6",
    "paley-13",
];

pub fn builtin(name: &str) -> Result<LabeledGraph> {
    match name {
        "petersen" => Ok(petersen()),
        "petersen-complement" => Ok(petersen().complement()),
        "clebsch" => Ok(clebsch()),
        "clebsch-complement" => Ok(clebsch().complement()),
        "lattice-4" => oa_graph(2, 4),
        "triangular-6" => Ok(triangular(6)),
        "paley-13" => paley(13),
        other => {
            if let Some(rest) = other.strip_prefix("oa:") {
                let (k, n) = rest
                    .split_once(',')
                    .and_then(|(k, n)| Some((k.trim().parse().ok()?, n.trim().parse().ok()?)))
                    .ok_or_else(|| Error::InvalidArgument(format!("bad OA spec '{rest}', expected oa:k,n")))?;
                return oa_graph(k, n);
            }
            Err(Error::InvalidArgument(format!(
                "unknown builtin '{other}' (known: {}, oa:k,n)",
                BUILTINS.join(", ")
            )))
        }
    }
}

/// Finds an explicit graph with the given parameters among the constructions
/// in this module (and their complements), for numeric cross-checks.
pub fn graph_for_params(p: &SrgParams) -> Option<LabeledGraph> {
    let want = (p.n, p.k, p.a, p.c);
    let mut candidates: Vec<LabeledGraph> = vec![petersen(), clebsch(), paley(13).ok()?];
    for m in 5..=14 {
        candidates.push(triangular(m));
    }
    let root = (p.n as f64).sqrt().round() as usize;
    if root * root == p.n as usize {
        for k in 2..=root + 1 {
            if oa_constructible(k, root) {
                candidates.extend(oa_graph(k, root).ok());
            }
        }
    }
    if is_prime(p.n) && p.n % 4 == 1 {
        candidates.extend(paley(p.n as usize).ok());
    }
    candidates.retain(|g| g.n() as u64 == p.n);
    let complements: Vec<LabeledGraph> = candidates.iter().map(LabeledGraph::complement).collect();
    candidates.into_iter().chain(complements).find(|h| {
        verify_srg(h).is_ok_and(|q| (q.n, q.k, q.a, q.c) == want)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: &LabeledGraph) -> (u64, u64, u64, u64) {
        let p = verify_srg(g).unwrap();
        (p.n, p.k, p.a, p.c)
    }

    #[test]
    fn named_graphs() {
        assert_eq!(params(&petersen()), (10, 3, 0, 1));
        assert_eq!(params(&clebsch()), (16, 5, 0, 2));
        assert_eq!(params(&clebsch().complement()), (16, 10, 6, 6));
        assert_eq!(params(&triangular(6)), (15, 8, 4, 4));
        assert_eq!(params(&paley(13).unwrap()), (13, 6, 2, 3));
    }

    #[test]
    fn oa_graphs_match_expected_parameters() {
        assert_eq!(params(&oa_graph(3, 4).unwrap()), (16, 9, 4, 6));
        assert_eq!(params(&oa_graph(3, 5).unwrap()), (25, 12, 5, 6));
        for (k, n) in [(2, 3), (3, 6), (4, 5), (5, 7), (2, 8)] {
            assert_eq!(params(&oa_graph(k, n).unwrap()), oa_expected_params(k as u64, n as u64));
        }
    }

    #[test]
    fn oa_2_2_is_the_four_cycle() {
        let g = oa_graph(2, 2).unwrap();
        // columns (0,0), (0,1), (1,0), (1,1)
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(verify_srg(&g).is_err());
    }

    #[test]
    fn oa_rejections() {
        assert!(matches!(oa_graph(4, 4), Err(Error::UnsupportedParameters(_))));
        assert!(matches!(oa_graph(7, 5), Err(Error::UnsupportedParameters(_))));
        assert!(oa_graph(6, 5).is_ok());
    }

    #[test]
    fn finds_explicit_graphs() {
        let p = crate::graph::srg::srg_from_params(16, 10, 6, 6).unwrap();
        let g = graph_for_params(&p).unwrap();
        assert_eq!(params(&g), (16, 10, 6, 6));
        let p = crate::graph::srg::srg_from_params(16, 9, 4, 6).unwrap();
        assert_eq!(graph_for_params(&p).unwrap(), oa_graph(3, 4).unwrap());
    }
}
