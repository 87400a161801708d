//! Worked applications: square subgraphs, Fibonacci rectangles, refined
//! boundary counts, holey-diamond dimer fractions, and the generating
//! polynomials of central-row vertical pairs.

use num::{BigInt, BigRational, One, Zero};

use crate::asm::{for_each_asm, Asm};
use crate::condense::{lambda_det, lambda_mu_det};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{var, Scalar};

/// All-ones matrix of order `2n` with triangular corners of zeros
/// (`n(n-1)/2` zeros per corner); its lambda-determinant counts the
/// matchings of the `2n`-by-`2n` square grid up to a bias power.
pub fn square_corner_matrix(n: usize) -> SquareMatrix {
    let m = 2 * n;
    SquareMatrix::from_fn(m, |i, j| {
        let (ri, rj) = (m + 1 - i, m + 1 - j);
        if i + j <= n || i + rj <= n || ri + j <= n || ri + rj <= n {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    })
}

/// Partition function for biased perfect matchings of the `2n`-by-`2n`
/// square grid: `lambda^(-n(n-1)/2) det_lambda(P_sq)`.
pub fn square_grid_partition(n: usize, lambda: &Scalar) -> Result<Scalar> {
    let det = lambda_det(&square_corner_matrix(n), lambda)?;
    det.div(&lambda.pow((n * (n - 1) / 2) as i64)?)
}

/// Tridiagonal all-ones matrix of order `m`.
pub fn tridiagonal_ones(m: usize) -> SquareMatrix {
    SquareMatrix::from_fn(m, |i, j| {
        if i.abs_diff(j) <= 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// `det_lambda` of the order `n+1` tridiagonal band matrix: the biased
/// matching polynomial of the `2 x 2n` rectangle, an odd-index Fibonacci
/// polynomial evaluated at `x^2 = lambda`.
pub fn fibonacci_det(n: usize, lambda: &Scalar) -> Result<Scalar> {
    lambda_det(&tridiagonal_ones(n + 1), lambda)
}

/// Odd-index Fibonacci polynomial `F_{2n+1}` written in `lambda = x^2`,
/// computed from the recurrence `F_{m+1} = x F_m + F_{m-1}`. Serves as the
/// independent reference for [`fibonacci_det`].
pub fn fibonacci_polynomial(n: usize, lambda: &Scalar) -> Scalar {
    // Track (F_{2k}, F_{2k+1}) as (x * G, H) with G, H polynomials in
    // lambda; then F_{2k+2} = x (H + x G) and F_{2k+3} = lambda G + (1 +
    // lambda) H ... simpler: iterate pairs of even/odd parts directly.
    // F_1 = 1, F_2 = x. Even-index Fibonacci polynomials are x times a
    // polynomial in x^2; odd-index ones are polynomials in x^2.
    let mut odd = Scalar::one(); // F_1 as polynomial in lambda
    let mut even = Scalar::one(); // F_2 / x
    for _ in 0..n {
        // F_{2k+3} = x F_{2k+2} + F_{2k+1} = lambda * even + odd
        // F_{2k+4} = x F_{2k+3} + F_{2k+2} = x (odd_next + even)
        let odd_next = lambda.mul(&even).add(&odd);
        let even_next = odd_next.add(&even);
        odd = odd_next;
        even = even_next;
    }
    odd
}

/// All-ones with first row the unit vector at position `l + 1`.
pub fn refined_nw_matrix(n: usize, l: usize) -> SquareMatrix {
    SquareMatrix::from_fn(n + 1, |i, j| {
        if i > 1 || j == l + 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Partition function of matchings with exactly `l` vertical dimers on the
/// NW boundary, computed as a lambda-determinant.
pub fn refined_nw(n: usize, l: usize, lambda: &Scalar) -> Result<Scalar> {
    assert!(l <= n);
    lambda_det(&refined_nw_matrix(n, l), lambda)
}

/// The closed form `binom(n, l) lambda^l (1 + lambda)^(n(n-1)/2)`.
pub fn refined_nw_closed(n: usize, l: usize, lambda: &Scalar) -> Result<Scalar> {
    let c = Scalar::from_rational(BigRational::from_integer(binomial(n as u64, l as u64)));
    Ok(c
        .mul(&lambda.pow(l as i64)?)
        .mul(&Scalar::one().add(lambda).pow((n * (n - 1) / 2) as i64)?))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k.min(n - k) {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Fractions of matchings with 0, 1 or 2 dimers adjacent to the central
/// face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionTriple {
    pub p0: BigRational,
    pub p1: BigRational,
    pub p2: BigRational,
}

/// Computes the central-face dimer fractions from the partition function
/// with the central face weight kept symbolic: `det_1 P_t` for even orders
/// and `2^n det_1 Q_{1/t}` for odd ones.
pub fn holey_fractions(n: usize) -> Result<FractionTriple> {
    let tvar = var("t");
    let t = Scalar::var_id(tvar);
    let tn_t = if n.is_multiple_of(2) {
        let c = n / 2 + 1;
        let p_t =
            SquareMatrix::from_fn(n + 1, |i, j| if (i, j) == (c, c) { t.clone() } else { Scalar::one() });
        lambda_det(&p_t, &Scalar::one())?
    } else {
        let c = n / 2 + 1;
        let q_inv_t = SquareMatrix::from_fn(n, |i, j| {
            if (i, j) == (c, c) {
                t.inv().expect("t is a variable")
            } else {
                Scalar::one()
            }
        });
        Scalar::from_int(2)
            .pow(n as i64)?
            .mul(&lambda_det(&q_inv_t, &Scalar::one())?)
    };
    let tn = Scalar::from_int(2).pow((n * (n + 1) / 2) as i64)?;
    let l = tn_t.div(&tn)?;
    let (lo, coeffs) = l.laurent_coeffs(tvar)?;
    let mut by_degree = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (k, c) in coeffs.iter().enumerate() {
        let d = lo + k as i64;
        let r = c.as_rational().ok_or(Error::NotLaurent("t".into()))?;
        if r.is_zero() {
            continue;
        }
        if !(-1..=1).contains(&d) {
            return Err(Error::NotLaurent("t".into()));
        }
        by_degree[(d + 1) as usize] = r;
    }
    let [p2, p1, p0] = by_degree;
    Ok(FractionTriple { p0, p1, p2 })
}

/// The closed form for the fractions at even order; odd orders reflect the
/// previous even one.
pub fn holey_fractions_closed(n: usize) -> FractionTriple {
    // The sign flip of alpha at odd orders realizes the reflection
    // p_i(n) = p_{2-i}(n-1).
    let alpha = if n.is_multiple_of(2) {
        alpha_n(n)
    } else {
        -alpha_n(n - 1)
    };
    let one = BigRational::one();
    let q2 = BigRational::new(1.into(), 2.into());
    let q4 = BigRational::new(1.into(), 4.into());
    FractionTriple {
        p0: q4.clone() * (&one + &alpha) * (&one + &alpha),
        p1: q2 * (&one - &alpha * &alpha),
        p2: q4 * (&one - &alpha) * (&one - &alpha),
    }
}

/// `alpha_n = 2^-n binom(n/2, n/4)^2` for `n = 0 mod 4`, `0` for
/// `n = 2 mod 4` (`n` even).
fn alpha_n(n: usize) -> BigRational {
    assert!(n.is_multiple_of(2));
    if !n.is_multiple_of(4) {
        return BigRational::zero();
    }
    let b = binomial((n / 2) as u64, (n / 4) as u64);
    BigRational::new(b.clone() * b, BigInt::from(2).pow(n as u32))
}

/// The finite alternating sum for `p_0(n) - p_2(n)`, `n` even:
/// `(-1)^(n/2) sum_k (-1/4)^k binom(n/2+k, 2k) binom(2k,k)^2`.
pub fn p0_minus_p2_sum(n: usize) -> Result<BigRational> {
    if !n.is_multiple_of(2) {
        return Err(Error::SizeMismatch("n must be even".into()));
    }
    let m = n / 2;
    let mut acc = BigRational::zero();
    let minus_quarter = BigRational::new((-1).into(), 4.into());
    let mut powk = BigRational::one();
    for k in 0..=m {
        let term = BigRational::from_integer(
            binomial((m + k) as u64, (2 * k) as u64)
                * binomial((2 * k) as u64, k as u64).pow(2),
        );
        acc += term * &powk;
        powk *= &minus_quarter;
    }
    if m % 2 == 1 {
        acc = -acc;
    }
    Ok(acc)
}

/// The closed form the sum evaluates to: `2^-n binom(n/2, n/4)^2` when
/// `4 | n`, zero when `n = 2 mod 4`.
pub fn p0_minus_p2_closed(n: usize) -> Result<BigRational> {
    if !n.is_multiple_of(2) {
        return Err(Error::SizeMismatch("n must be even".into()));
    }
    Ok(alpha_n(n))
}

/// Legendre polynomial value at zero by the three-term recurrence;
/// an independent route to the same numbers.
pub fn legendre_at_zero(m: usize) -> BigRational {
    let mut prev = BigRational::one(); // P_0(0)
    let mut cur = BigRational::zero(); // P_1(0)
    if m == 0 {
        return prev;
    }
    for k in 1..m {
        // (k+1) P_{k+1}(0) = -k P_{k-1}(0)
        let next = -BigRational::new(k.into(), (k + 1).into()) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

const DEFAULT_MAX_GN_ORDER: usize = 8;

pub fn max_gn_order() -> usize {
    std::env::var("LAMDET_MAX_GN_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_GN_ORDER)
}

/// Coefficients of the generating polynomial `G_n`: coefficient `k` counts
/// the matchings with `k` pairs of vertical dimers in the central row.
/// Computed through the inhomogeneous determinant with the central row
/// bias kept symbolic.
pub fn gn_polynomial(n: usize) -> Result<Vec<BigInt>> {
    let bound = max_gn_order();
    if n == 0 || n > bound {
        return Err(Error::SizeTooLarge(n, bound));
    }
    let x = var("gn_x");
    let mut lambdas = vec![Scalar::one(); 2 * n - 1];
    lambdas[n - 1] = Scalar::var_id(x); // row label a = 0
    let mus = vec![Scalar::one(); 2 * n - 1];
    let det = lambda_mu_det(&SquareMatrix::all_ones(n + 1), &lambdas, &mus, None)?;
    let (lo, coeffs) = det.laurent_coeffs(x)?;
    if lo != 0 {
        return Err(Error::NotLaurent("gn_x".into()));
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let r = c.as_rational().ok_or(Error::NotLaurent("gn_x".into()))?;
        debug_assert!(r.denom().is_one());
        out.push(r.numer().clone());
    }
    Ok(out)
}

/// Number of zeros on the main diagonal whose first nonzero entries to the
/// right and below are both `+1`, and the number of `-1` entries on the
/// main diagonal.
fn diagonal_restrictions(b: &Asm) -> (u32, u32) {
    let n = b.order();
    let mut p0 = 0u32;
    let mut nm0 = 0u32;
    for d in 1..=n {
        match b.get(d, d) {
            -1 => nm0 += 1,
            0 => {
                let right = (d + 1..=n).map(|j| b.get(d, j)).find(|&v| v != 0);
                let below = (d + 1..=n).map(|i| b.get(i, d)).find(|&v| v != 0);
                if right == Some(1) && below == Some(1) {
                    p0 += 1;
                }
            }
            _ => {}
        }
    }
    (p0, nm0)
}

/// `G_n` from the alternating-sign-matrix sum
/// `sum_B x^(P0(B)) ((1+x)/2)^(N0_-(B)) 2^(N_-(B))`, an independent route
/// relying only on the enumeration.
pub fn gn_polynomial_asm_form(n: usize) -> Result<Vec<BigInt>> {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for_each_asm(n + 1, |b| {
        let stats = b.stats();
        let (p0, nm0) = diagonal_restrictions(b);
        debug_assert!(stats.n_minus >= nm0);
        let scale = BigInt::from(2).pow(stats.n_minus - nm0);
        // x^p0 (1+x)^nm0: binomial expansion
        for k in 0..=nm0 {
            let idx = (p0 + k) as usize;
            coeffs[idx] += &scale * binomial(nm0 as u64, k as u64);
        }
    })?;
    Ok(coeffs)
}

/// Histogram of central-row vertical-dimer pairs over all matchings; the
/// brute-force counterpart of [`gn_polynomial`].
pub fn gn_histogram_brute(n: usize) -> Result<Vec<u64>> {
    let mut out = vec![0u64; n + 1];
    for m in crate::aztec::enumerate_matchings(n)? {
        let vertical_central = m
            .dimers()
            .iter()
            .filter(|e| e.is_vertical() && e.bias_index() == 0)
            .count();
        debug_assert!(vertical_central % 2 == 0);
        out[vertical_central / 2] += 1;
    }
    Ok(out)
}

/// Numeric, report-only observations about the roots of `G_n`.
#[derive(Clone, Debug)]
pub struct GnConjectureReport {
    pub n: usize,
    /// All `n` roots located on the negative axis by sign changes.
    pub roots_real_negative: bool,
    /// Roots of `G_{n-1}` interlace those of `G_n` (when `n >= 2`).
    pub interlaced_with_previous: bool,
    /// Largest root magnitude divided by `G'_{n-1}(0)`.
    pub largest_root_ratio: f64,
    /// `G_n|_{x^{n-1}} - G_{n-1}|_x - (4n-3)`, zero if the coefficient
    /// identity holds.
    pub coefficient_identity_defect: BigInt,
}

fn real_negative_roots(coeffs: &[BigInt]) -> Vec<f64> {
    let eval = |y: f64| -> f64 {
        // value at x = -y
        let mut acc = 0f64;
        for c in coeffs.iter().rev() {
            let cf = c.to_string().parse::<f64>().unwrap_or(f64::MAX);
            acc = acc * (-y) + cf;
        }
        acc
    };
    let mut roots = Vec::new();
    let mut prev_y = 0f64;
    let mut prev_v = eval(0.0);
    let mut y = 1e-9f64;
    while y < 1e12 {
        let v = eval(y);
        if prev_v == 0.0 {
            roots.push(prev_y);
        } else if v != 0.0 && (v > 0.0) != (prev_v > 0.0) {
            // bisect
            let (mut a, mut b) = (prev_y, y);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (eval(mid) > 0.0) == (prev_v > 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_y = y;
        prev_v = v;
        y *= 1.02;
    }
    roots
}

pub fn gn_conjecture_report(n: usize) -> Result<GnConjectureReport> {
    let g = gn_polynomial(n)?;
    let roots = real_negative_roots(&g);
    let roots_real_negative = roots.len() == n;
    let (interlaced, ratio, defect) = if n >= 2 {
        let gp = gn_polynomial(n - 1)?;
        let prev_roots = real_negative_roots(&gp);
        let mut inter = prev_roots.len() == n - 1 && roots.len() == n;
        if inter {
            for k in 0..n - 1 {
                if !(roots[k] <= prev_roots[k] && prev_roots[k] <= roots[k + 1]) {
                    inter = false;
                }
            }
        }
        let gpp0 = gp[1].to_string().parse::<f64>().unwrap_or(f64::NAN);
        let largest = roots.last().copied().unwrap_or(f64::NAN);
        let defect = g[n - 1].clone() - &gp[1] - BigInt::from(4 * n as i64 - 3);
        (inter, largest / gpp0, defect)
    } else {
        (true, f64::NAN, BigInt::zero())
    };
    Ok(GnConjectureReport {
        n,
        roots_real_negative,
        interlaced_with_previous: interlaced,
        largest_root_ratio: ratio,
        coefficient_identity_defect: defect,
    })
}
