//! Oracles shared by the integration tests. Nothing here calls into the
//! code paths it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use pcf_moments::exactnum::{rat, Rational};
use pcf_moments::matrix::RatMatrix;
use rand::Rng;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rat(1, 1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn rows_of(m: &RatMatrix) -> Vec<Vec<Rational>> {
    (0..m.size())
        .map(|i| (0..m.size()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

/// A symmetric matrix is PSD iff every principal minor (not just the
/// leading ones) is nonnegative.
pub fn all_principal_minors_nonneg(m: &RatMatrix) -> bool {
    let n = m.size();
    let rows = rows_of(m);
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| rows[i][j].clone()).collect())
            .collect();
        !cofactor_det(&sub).is_negative()
    })
}

/// `1/(p_1 + 1/(p_2 + ... 1/(p_n + w)))` evaluated from the inside out,
/// with `p_j` taken from `period(j)`.
pub fn nested_fraction(period: impl Fn(usize) -> Rational, w: &Rational, n: usize) -> Rational {
    if n == 0 {
        return w.clone();
    }
    let mut x = w.clone();
    for j in (1..=n).rev() {
        x = (period(j) + x).recip();
    }
    x
}

pub fn two_periodic(a: &Rational, b: &Rational, w: &Rational, n: usize) -> Rational {
    nested_fraction(|j| if j % 2 == 1 { a.clone() } else { b.clone() }, w, n)
}

pub fn random_rational<R: Rng>(rng: &mut R, span: i64, max_denom: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-span..=span)),
        BigInt::from(rng.gen_range(1..=max_denom)),
    )
}

pub fn random_square<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, |_, _| random_rational(rng, 6, 4))
}

/// Mix of indefinite symmetric matrices and (possibly singular) Gram
/// matrices `B^T B`, so both verdicts occur often.
pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    match rng.gen_range(0..3) {
        0 => {
            let upper: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| random_rational(rng, 4, 3)).collect())
                .collect();
            RatMatrix::from_fn(n, |i, j| upper[i.min(j)][i.max(j)].clone())
        }
        kind => {
            let k = if kind == 1 { rng.gen_range(1..=n) } else { n };
            let b: Vec<Vec<Rational>> = (0..k)
                .map(|_| (0..n).map(|_| random_rational(rng, 3, 2)).collect())
                .collect();
            let mut g = RatMatrix::from_fn(n, |i, j| {
                (0..k).fold(Rational::zero(), |acc, r| acc + &b[r][i] * &b[r][j])
            });
            if kind == 2 && rng.gen_bool(0.5) {
                // nudge one diagonal entry down to break semidefiniteness sometimes
                let i = rng.gen_range(0..n);
                let shift = random_rational(rng, 2, 2).abs();
                g = RatMatrix::from_fn(n, |r, c| {
                    if r == i && c == i {
                        g.get(r, c) - &shift
                    } else {
                        g.get(r, c).clone()
                    }
                });
            }
            g
        }
    }
}

pub fn fibonacci(n_max: usize) -> Vec<Rational> {
    let mut f = vec![rat(0, 1), rat(1, 1)];
    while f.len() <= n_max {
        let k = f.len();
        let next = &f[k - 1] + &f[k - 2];
        f.push(next);
    }
    f.truncate(n_max + 1);
    f
}
