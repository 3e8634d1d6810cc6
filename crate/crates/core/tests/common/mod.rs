//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's arithmetic beyond evaluating sequences.
#![allow(dead_code)]

use nbar::scalar::rational;
use nbar::{MatrixSpec, Rational, SequenceSpec, Tail, WeightPair};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let pivot = m[c][c].clone();
        d *= pivot.clone();
        for i in c + 1..n {
            let f = m[i][c].clone() / pivot.clone();
            for j in c..n {
                let sub = f.clone() * m[c][j].clone();
                m[i][j] -= sub;
            }
        }
    }
    d
}

/// `H_n = det(P_n) / p_0^(n+1)` with `P_n[i][j] = p_{i-j+1}` (1-based, zero
/// for negative subscripts).
pub fn h_by_determinant(p: &[Rational], n: usize) -> Rational {
    let p_at = |i: isize| -> Rational {
        if i < 0 {
            Rational::zero()
        } else {
            p.get(i as usize).cloned().unwrap_or_else(Rational::zero)
        }
    };
    let p0_pow = (0..=n).fold(Rational::one(), |acc, _| acc * p[0].clone());
    if n == 0 {
        return Rational::one() / p[0].clone();
    }
    let m: Vec<Vec<Rational>> = (1..=n as isize)
        .map(|i| (1..=n as isize).map(|j| p_at(i - j + 1)).collect())
        .collect();
    det(m) / p0_pow
}

/// `(-1)^i H_i` for `i < len`, by forward substitution in the lower
/// triangular Toeplitz system `P u = e_0`.
pub fn signed_h_by_substitution(p: &SequenceSpec<Rational>, len: usize) -> Vec<Rational> {
    let p0 = p.eval(0);
    let mut u: Vec<Rational> = Vec::with_capacity(len);
    for i in 0..len {
        let rhs = if i == 0 { Rational::one() } else { Rational::zero() };
        let s: Rational = (0..i).map(|j| p.eval(i - j) * u[j].clone()).sum();
        u.push((rhs - s) / p0.clone());
    }
    u
}

pub fn r_direct(w: &WeightPair<Rational>, n: usize) -> Rational {
    (0..=n).map(|j| w.p_spec().eval(n - j) * w.q_spec().eval(j)).sum()
}

pub fn triangle_block(w: &WeightPair<Rational>, m: usize) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|n| {
            let r = r_direct(w, n);
            (0..m)
                .map(|k| {
                    if k <= n {
                        w.p_spec().eval(n - k) * w.q_spec().eval(k) / r.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k].clone() * b[k][j].clone()).sum())
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<Rational>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| *v == if i == j { Rational::one() } else { Rational::zero() })
    })
}

/// `c_nk` straight from its defining double sum.
pub fn c_brute(w: &WeightPair<Rational>, a: &SequenceSpec<Rational>, n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let u = signed_h_by_substitution(w.p_spec(), n + 1);
    let s: Rational = (k..=n).map(|j| u[j - k].clone() * a.eval(j) / w.q_spec().eval(j)).sum();
    r_direct(w, k) * s
}

pub fn c_abs_row_sum(w: &WeightPair<Rational>, a: &SequenceSpec<Rational>, n: usize) -> Rational {
    (0..=n).map(|k| c_brute(w, a, n, k).abs()).sum()
}

/// `max_{n in rows, m<=depth} sum_k |c_mk(A_n)|`, with `H` and `R` computed
/// once up front.
pub fn row_dual_bound_brute(
    a: &MatrixSpec<Rational>,
    w: &WeightPair<Rational>,
    rows: std::ops::RangeInclusive<usize>,
    depth: usize,
) -> Rational {
    let u = signed_h_by_substitution(w.p_spec(), depth + 1);
    let r: Vec<Rational> = (0..=depth).map(|k| r_direct(w, k)).collect();
    let q: Vec<Rational> = w.q_spec().prefix(depth + 1);
    let mut best = Rational::zero();
    for n in rows {
        let row = a.row(n);
        let aq: Vec<Rational> = (0..=depth).map(|j| row.eval(j) / q[j].clone()).collect();
        for m in 0..=depth {
            let v: Rational = (0..=m)
                .map(|k| {
                    let s: Rational = (k..=m).map(|j| u[j - k].clone() * aq[j].clone()).sum();
                    (r[k].clone() * s).abs()
                })
                .sum();
            if v > best {
                best = v;
            }
        }
    }
    best
}

/// A rational in `[1/4, 4]`.
pub fn rand_weight(rng: &mut impl Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=8);
    let lo = (d + 3) / 4;
    rational(rng.gen_range(lo..=4 * d), d)
}

/// A rational in `[-bound, bound]` with small denominator.
pub fn rand_signed(rng: &mut impl Rng, bound: i64) -> Rational {
    let d: i64 = rng.gen_range(1..=6);
    rational(rng.gen_range(-bound * d..=bound * d), d)
}

/// Weights with `len` random terms in `[1/4, 4]` that repeat the last term.
pub fn rand_weights(rng: &mut impl Rng, len: usize) -> WeightPair<Rational> {
    let seq = |rng: &mut _| SequenceSpec::Literal {
        values: (0..len).map(|_| rand_weight(rng)).collect(),
        tail: Tail::RepeatLast,
    };
    let p = seq(rng);
    let q = seq(rng);
    WeightPair::new(p, q)
}

pub fn rand_literal(rng: &mut impl Rng, len: usize, bound: i64) -> SequenceSpec<Rational> {
    SequenceSpec::literal((0..len).map(|_| rand_signed(rng, bound)).collect())
}

/// `p = (1, 1, 0, ...)`, `q_n = 3^n`, every row `e^(1)`.
pub fn worked_example() -> (WeightPair<Rational>, MatrixSpec<Rational>) {
    let w = WeightPair::new(
        SequenceSpec::literal(vec![Rational::one(), Rational::one()]),
        SequenceSpec::Geometric(rational(3, 1)),
    );
    (
        w,
        MatrixSpec::ConstantRows {
            row: SequenceSpec::Unit(1),
        },
    )
}

/// A matrix whose rows `n >= rows` vanish, with literal rows of length `len`.
pub fn rand_finite_rows(rng: &mut impl Rng, rows: usize, len: usize, bound: i64) -> MatrixSpec<Rational> {
    MatrixSpec::Rows {
        rows: (0..rows).map(|_| rand_literal(rng, len, bound)).collect(),
        tail: nbar::RowTail::Zero,
    }
}
