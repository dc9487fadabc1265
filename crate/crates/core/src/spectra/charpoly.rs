//! Characteristic polynomials and polynomial-matrix determinants.

use num_traits::{One, Zero};

use super::poly::RatPoly;
use crate::arith::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

/// `det(tI − M)` by Berkowitz's division-free recurrence.
pub fn charpoly_matrix(m: &[Vec<Rational>]) -> RatPoly {
    let n = m.len();
    // p holds coefficients highest degree first
    let mut p = vec![Rational::one()];
    for r in 0..n {
        let mut q = vec![Rational::zero(); r + 2];
        q[0] = Rational::one();
        q[1] = -m[r][r].clone();
        let mut col: Vec<Rational> = (0..r).map(|i| m[i][r].clone()).collect();
        for j in 0..r {
            let dot = (0..r).fold(Rational::zero(), |acc, i| acc + &m[r][i] * &col[i]);
            q[j + 2] = -dot;
            if j + 1 < r {
                col = (0..r)
                    .map(|i| (0..r).fold(Rational::zero(), |acc, l| acc + &m[i][l] * &col[l]))
                    .collect();
            }
        }
        let mut next = vec![Rational::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                if i - j < q.len() {
                    *slot += &q[i - j] * &p[j];
                }
            }
        }
        p = next;
    }
    p.reverse();
    RatPoly::new(p)
}

/// Characteristic polynomial of a graph's adjacency matrix.
pub fn charpoly(g: &crate::graph::LabeledGraph) -> RatPoly {
    charpoly_matrix(&g.rational_matrix())
}

/// Determinant of a square matrix of polynomials by fraction-free (Bareiss)
/// elimination with exact polynomial division.
pub fn det_poly(mut m: Vec<Vec<RatPoly>>) -> RatPoly {
    let n = m.len();
    if n == 0 {
        return RatPoly::one();
    }
    let mut sign = RatPoly::one();
    let mut prev = RatPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -&sign;
                }
                None => return RatPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    &sign * &m[n - 1][n - 1]
}

/// `tI − M` as a polynomial matrix.
pub fn t_minus(m: &[Vec<Rational>]) -> Vec<Vec<RatPoly>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = RatPoly::constant(-m[i][j].clone());
                    if i == j {
                        &c + &RatPoly::t()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

/// Entry `(u, v)` of `adj(tI − M)`: `(−1)^{u+v}` times the minor with row
/// `v` and column `u` removed.
pub fn adjugate_entry(m: &[Vec<Rational>], u: usize, v: usize) -> RatPoly {
    let tm = t_minus(m);
    let minor: Vec<Vec<RatPoly>> = tm
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, row)| {
            row.into_iter()
                .enumerate()
                .filter(|&(j, _)| j != u)
                .map(|(_, x)| x)
                .collect()
        })
        .collect();
    let d = det_poly(minor);
    if (u + v).is_multiple_of(2) {
        d
    } else {
        -&d
    }
}

pub fn delete_indices(m: &[Vec<Rational>], removed: &[usize]) -> RatMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| !removed.contains(j))
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::graph::families::{complete, cycle, petersen};

    #[test]
    fn small_graphs() {
        assert_eq!(charpoly(&complete(2)), RatPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(charpoly(&cycle(4)), RatPoly::from_ints(&[0, 0, -4, 0, 1]));
        assert_eq!(charpoly(&crate::graph::LabeledGraph::empty(0)), RatPoly::one());
    }

    #[test]
    fn petersen_factorization() {
        let expected = &(&RatPoly::from_ints(&[-3, 1]) * &RatPoly::from_ints(&[-1, 1]).pow(5))
            * &RatPoly::from_ints(&[2, 1]).pow(4);
        assert_eq!(charpoly(&petersen()), expected);
    }

    #[test]
    fn bareiss_agrees_with_berkowitz() {
        let m: RatMatrix = vec![
            vec![frac(1, 2), int(1), int(0)],
            vec![int(1), int(-2), frac(3, 4)],
            vec![int(0), frac(3, 4), int(5)],
        ];
        assert_eq!(det_poly(t_minus(&m)), charpoly_matrix(&m));
        let c5 = cycle(5).rational_matrix();
        assert_eq!(det_poly(t_minus(&c5)), charpoly_matrix(&c5));
    }

    #[test]
    fn bareiss_pivots_on_zero() {
        // constant matrix with a zero leading entry
        let m = vec![
            vec![RatPoly::zero(), RatPoly::one()],
            vec![RatPoly::one(), RatPoly::zero()],
        ];
        assert_eq!(det_poly(m), RatPoly::from_ints(&[-1]));
    }

    #[test]
    fn k2_adjugate() {
        let m = complete(2).rational_matrix();
        assert_eq!(adjugate_entry(&m, 0, 1), RatPoly::one());
        assert_eq!(adjugate_entry(&m, 0, 0), RatPoly::t());
    }
}
