//! Condensation engines: homogeneous lambda-determinants, the generalized
//! two-matrix form, and inhomogeneous bias vectors, with automatic
//! regularization of vanishing divisors.
//!
//! The core recursion consumes two seed matrices `A0` (order `m+1`) and
//! `A1` (order `m`) and produces `A_k` of order `m+1-k`:
//!
//! `A_k[i,j] = (c_mu * A_{k-1}[i,j] A_{k-1}[i+1,j+1]
//!              + c_lambda * A_{k-1}[i+1,j] A_{k-1}[i,j+1]) / A_{k-2}[i+1,j+1]`
//!
//! ending with the order-1 matrix `A_m`, the result.

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{fresh_var, Scalar, VarId};

#[derive(Clone, Copy, Debug, Default)]
pub struct CondOptions {
    /// Keep every intermediate matrix of the run.
    pub trace: bool,
    /// Regularize with one fresh variable per zero entry instead of a
    /// single shared one.
    pub per_entry_regularization: bool,
}

/// Result of a condensation run; `intermediates` is populated when tracing
/// (for a regularized run it shows the regularized matrices).
#[derive(Clone, Debug)]
pub struct CondensationRun {
    pub result: Scalar,
    pub intermediates: Vec<SquareMatrix>,
}

type CoefFn<'a> = dyn Fn(usize, usize, usize) -> (Scalar, Scalar) + 'a;

fn condense_raw(
    a0: &SquareMatrix,
    a1: &SquareMatrix,
    coef: &CoefFn,
    trace: Option<&mut Vec<SquareMatrix>>,
) -> Result<Scalar> {
    let m = a1.order();
    if a0.order() != m + 1 {
        return Err(Error::SizeMismatch(format!(
            "seed orders {} and {} must be consecutive",
            a0.order(),
            m
        )));
    }
    let mut tr = trace;
    if let Some(t) = tr.as_deref_mut() {
        t.push(a0.clone());
        t.push(a1.clone());
    }
    let mut prev2 = a0.clone();
    let mut prev = a1.clone();
    for k in 2..=m {
        let size = m + 1 - k;
        let mut next = SquareMatrix::all_ones(size);
        for i in 1..=size {
            for j in 1..=size {
                let (c_mu, c_lambda) = coef(k, i, j);
                let den = prev2.get(i + 1, j + 1);
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let num = c_mu
                    .mul(&prev.get(i, j).mul(prev.get(i + 1, j + 1)))
                    .add(&c_lambda.mul(&prev.get(i + 1, j).mul(prev.get(i, j + 1))));
                next.set(i, j, num.div(den)?);
            }
        }
        if let Some(t) = tr.as_deref_mut() {
            t.push(next.clone());
        }
        prev2 = prev;
        prev = next;
    }
    Ok(prev.get(1, 1).clone())
}

/// Replaces selected zero entries by regularization variables. Only `A1`
/// and the central block of `A0` take part in the recursion, so only those
/// entries are touched.
fn regularize_zeros(
    a0: &SquareMatrix,
    a1: &SquareMatrix,
    per_entry: bool,
) -> (SquareMatrix, SquareMatrix, Vec<VarId>) {
    let mut vars: Vec<VarId> = Vec::new();
    let mut shared: Option<VarId> = None;
    let mut next = |vars: &mut Vec<VarId>| -> Scalar {
        if per_entry {
            let v = fresh_var("reg_eps");
            vars.push(v);
            Scalar::var_id(v)
        } else {
            let v = *shared.get_or_insert_with(|| {
                
                fresh_var("reg_eps")
            });
            if vars.is_empty() {
                vars.push(v);
            }
            Scalar::var_id(v)
        }
    };
    let m1 = a1.map(|v| v.clone());
    let mut m1 = m1;
    for i in 1..=a1.order() {
        for j in 1..=a1.order() {
            if a1.get(i, j).is_zero() {
                let e = next(&mut vars);
                m1.set(i, j, e);
            }
        }
    }
    let mut m0 = a0.clone();
    let n0 = a0.order();
    for i in 2..n0 {
        for j in 2..n0 {
            if a0.get(i, j).is_zero() {
                let e = next(&mut vars);
                m0.set(i, j, e);
            }
        }
    }
    (m0, m1, vars)
}

/// Adds `eps * r_ij` to every participating entry, with small deterministic
/// pseudorandom integers `r_ij`. Last-resort regularization for vanishing
/// divisors that do not come from zero entries.
fn perturb_all(a0: &SquareMatrix, a1: &SquareMatrix) -> (SquareMatrix, SquareMatrix, VarId) {
    let eps = fresh_var("reg_eps");
    let e = Scalar::var_id(eps);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1D5A);
    let mut m1 = a1.clone();
    for i in 1..=a1.order() {
        for j in 1..=a1.order() {
            let r = Scalar::from_int(rng.gen_range(1..=10_000));
            m1.set(i, j, a1.get(i, j).add(&e.mul(&r)));
        }
    }
    let mut m0 = a0.clone();
    for i in 2..a0.order() {
        for j in 2..a0.order() {
            let r = Scalar::from_int(rng.gen_range(1..=10_000));
            m0.set(i, j, a0.get(i, j).add(&e.mul(&r)));
        }
    }
    (m0, m1, eps)
}

fn has_zero_input(a0: &SquareMatrix, a1: &SquareMatrix) -> bool {
    let n0 = a0.order();
    a1.entries().any(|(_, _, v)| v.is_zero())
        || a0
            .entries()
            .any(|(i, j, v)| i > 1 && i < n0 && j > 1 && j < n0 && v.is_zero())
}

/// Fraction-free fast path for constant inputs and a constant homogeneous
/// bias `u/w`. Every intermediate `A_k[i,j]` is a sub-partition function
/// whose denominator divides `w^(k(k-1)/2)` times the product of the
/// `A0`-center entries under it and the inner `A1` entries under it, so the
/// recurrence can be cleared to exact integer arithmetic:
///
/// `N_k[i,j] = (w a0[i+1,j+k-1] a0[i+k-1,j+1] a1[i+1,j+k-2] a1[i+k-2,j+1]
///               * N_{k-1}[i,j] N_{k-1}[i+1,j+1]
///             + u a0[i+1,j+1] a0[i+k-1,j+k-1] a1[i+1,j+1] a1[i+k-2,j+k-2]
///               * N_{k-1}[i+1,j] N_{k-1}[i,j+1]) / N_{k-2}[i+1,j+1]`
///
/// (the `a1` factors drop out for `k < 4` and the `a0` corner pairs merge
/// for `k = 2`, where the ranges degenerate). Returns `None` when the
/// inputs are not constant, contain zeros, or a cleared divisor vanishes;
/// the caller then falls back to the generic engine.
fn condense_numeric(
    a0: &SquareMatrix,
    a1: &SquareMatrix,
    lambda: &Scalar,
) -> Option<Scalar> {
    use num::{BigInt, BigRational, One, Zero};
    let m = a1.order();
    if a0.order() != m + 1 {
        return None;
    }
    let lam = lambda.as_rational()?;
    let (u, w) = (lam.numer().clone(), lam.denom().clone());
    // Scale to integer matrices; the result is homogeneous of degree m in
    // A1 and degree -(m-1) in the center of A0.
    let mut den_lcm0 = BigInt::one();
    let mut den_lcm1 = BigInt::one();
    for (i, j, v) in a0.entries() {
        let n0 = a0.order();
        if i > 1 && i < n0 && j > 1 && j < n0 {
            let r = v.as_rational()?;
            if r.is_zero() {
                return None;
            }
            den_lcm0 = num::Integer::lcm(&den_lcm0, r.denom());
        }
    }
    for (_, _, v) in a1.entries() {
        let r = v.as_rational()?;
        if r.is_zero() {
            return None;
        }
        den_lcm1 = num::Integer::lcm(&den_lcm1, r.denom());
    }
    let int0 = |i: usize, j: usize| -> BigInt {
        let r = a0.get(i, j).as_rational().unwrap();
        (r * BigRational::from_integer(den_lcm0.clone()))
            .to_integer()
    };
    let int1 = |i: usize, j: usize| -> BigInt {
        let r = a1.get(i, j).as_rational().unwrap();
        (r * BigRational::from_integer(den_lcm1.clone()))
            .to_integer()
    };
    // Levels 0 and 1 of the cleared sequence are the integer matrices
    // themselves. A0's border never participates; use 1 there.
    let n0 = a0.order();
    let grid0: Vec<Vec<BigInt>> = (1..=n0)
        .map(|i| {
            (1..=n0)
                .map(|j| {
                    if i > 1 && i < n0 && j > 1 && j < n0 {
                        int0(i, j)
                    } else {
                        BigInt::one()
                    }
                })
                .collect()
        })
        .collect();
    let grid1: Vec<Vec<BigInt>> = (1..=m).map(|i| (1..=m).map(|j| int1(i, j)).collect()).collect();
    let at0 = |i: usize, j: usize| -> &BigInt { &grid0[i - 1][j - 1] };
    let at1 = |i: usize, j: usize| -> &BigInt { &grid1[i - 1][j - 1] };

    let mut prev2 = grid0.clone();
    let mut prev = grid1.clone();
    for k in 2..=m {
        let size = m + 1 - k;
        let mut next = vec![vec![BigInt::zero(); size]; size];
        for i in 1..=size {
            for j in 1..=size {
                let div = &prev2[i][j]; // N_{k-2}[i+1, j+1], 0-based shift
                if div.is_zero() {
                    return None;
                }
                let mut c_w = w.clone();
                let mut c_u = u.clone();
                if k == 2 {
                    c_w *= at0(i + 1, j + 1);
                    c_u *= at0(i + 1, j + 1);
                } else {
                    c_w *= at0(i + 1, j + k - 1) * at0(i + k - 1, j + 1);
                    c_u *= at0(i + 1, j + 1) * at0(i + k - 1, j + k - 1);
                    if k == 3 {
                        c_w *= at1(i + 1, j + 1);
                        c_u *= at1(i + 1, j + 1);
                    } else {
                        c_w *= at1(i + 1, j + k - 2) * at1(i + k - 2, j + 1);
                        c_u *= at1(i + 1, j + 1) * at1(i + k - 2, j + k - 2);
                    }
                }
                let numer = c_w * (&prev[i - 1][j - 1] * &prev[i][j])
                    + c_u * (&prev[i][j - 1] * &prev[i - 1][j]);
                let (quot, rem) = num::Integer::div_rem(&numer, div);
                if !rem.is_zero() {
                    return None;
                }
                next[i - 1][j - 1] = quot;
            }
        }
        prev2 = prev;
        prev = next;
    }
    // Undo the clearing: divide by w^(m(m-1)/2) and the denominator
    // products, and rescale for the input integerization.
    let mut den = w.pow((m * (m - 1) / 2) as u32);
    for r in 2..=m {
        for c in 2..=m {
            den *= at0(r, c);
        }
    }
    for r in 2..m {
        for c in 2..m {
            den *= at1(r, c);
        }
    }
    if den.is_zero() {
        return None;
    }
    let mut value = BigRational::new(prev[0][0].clone(), den);
    // T(c1 A1, c0-center A0) = c1^m c0^{-(m-1)} T(A1, A0-center)
    value *= BigRational::new(den_lcm0.pow((m - 1) as u32), den_lcm1.pow(m as u32));
    Some(Scalar::from_rational(value))
}

fn condense_regularized(
    a0: &SquareMatrix,
    a1: &SquareMatrix,
    coef: &CoefFn,
    opts: CondOptions,
) -> Result<CondensationRun> {
    let mut trace = Vec::new();
    fn tr(on: bool, t: &mut Vec<SquareMatrix>) -> Option<&mut Vec<SquareMatrix>> {
        if on {
            Some(t)
        } else {
            None
        }
    }

    match condense_raw(a0, a1, coef, tr(opts.trace, &mut trace)) {
        Ok(result) => {
            return Ok(CondensationRun {
                result,
                intermediates: trace,
            })
        }
        Err(Error::DivisionByZero) => {}
        Err(e) => return Err(e),
    }

    // A divisor vanished. Regularize zero entries, shared variable first
    // unless per-entry was requested.
    let mut stages: Vec<(SquareMatrix, SquareMatrix, Vec<VarId>)> = Vec::new();
    if has_zero_input(a0, a1) {
        if opts.per_entry_regularization {
            stages.push(regularize_zeros(a0, a1, true));
        } else {
            stages.push(regularize_zeros(a0, a1, false));
            stages.push(regularize_zeros(a0, a1, true));
        }
    }
    {
        let (m0, m1, eps) = perturb_all(a0, a1);
        stages.push((m0, m1, vec![eps]));
    }

    'stage: for (m0, m1, vars) in stages {
        trace.clear();
        let mut value = match condense_raw(&m0, &m1, coef, tr(opts.trace, &mut trace)) {
            Ok(v) => v,
            Err(Error::DivisionByZero) => continue 'stage,
            Err(e) => return Err(e),
        };
        for v in vars {
            value = match value.limit_at_zero(v) {
                Ok(v) => v,
                Err(Error::PoleAtZero(_)) => return Err(Error::UndefinedDeterminant),
                Err(e) => return Err(e),
            };
        }
        return Ok(CondensationRun {
            result: value,
            intermediates: trace,
        });
    }
    Err(Error::UndefinedDeterminant)
}

/// `Cond_lambda(A0, A1)` for arbitrary seed matrices of consecutive orders.
pub fn cond_general(a0: &SquareMatrix, a1: &SquareMatrix, lambda: &Scalar) -> Result<Scalar> {
    if let Some(v) = condense_numeric(a0, a1, lambda) {
        return Ok(v);
    }
    let one = Scalar::one();
    let coef = move |_k: usize, _i: usize, _j: usize| (one.clone(), lambda.clone());
    Ok(condense_regularized(a0, a1, &coef, CondOptions::default())?.result)
}

/// The lambda-determinant of a square matrix.
pub fn lambda_det(a: &SquareMatrix, lambda: &Scalar) -> Result<Scalar> {
    lambda_det_opt(a, lambda, CondOptions::default()).map(|r| r.result)
}

pub fn lambda_det_opt(
    a: &SquareMatrix,
    lambda: &Scalar,
    opts: CondOptions,
) -> Result<CondensationRun> {
    let a0 = SquareMatrix::all_ones(a.order() + 1);
    if !opts.trace {
        if let Some(result) = condense_numeric(&a0, a, lambda) {
            return Ok(CondensationRun {
                result,
                intermediates: Vec::new(),
            });
        }
    }
    let one = Scalar::one();
    let coef = move |_k: usize, _i: usize, _j: usize| (one.clone(), lambda.clone());
    condense_regularized(&a0, a, &coef, opts)
}

/// Partition function `T_n(P, Q | lambda)`: condensation seeded by a
/// completion of `Q` (all-ones border) and `P`.
pub fn cond_pq(p: &SquareMatrix, q: &SquareMatrix, lambda: &Scalar) -> Result<Scalar> {
    cond_pq_opt(p, q, lambda, CondOptions::default()).map(|r| r.result)
}

pub fn cond_pq_opt(
    p: &SquareMatrix,
    q: &SquareMatrix,
    lambda: &Scalar,
    opts: CondOptions,
) -> Result<CondensationRun> {
    let n = q.order();
    if p.order() != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "P has order {}, expected {}",
            p.order(),
            n + 1
        )));
    }
    let a0 = completion(q);
    if !opts.trace {
        if let Some(result) = condense_numeric(&a0, p, lambda) {
            return Ok(CondensationRun {
                result,
                intermediates: Vec::new(),
            });
        }
    }
    let one = Scalar::one();
    let coef = move |_k: usize, _i: usize, _j: usize| (one.clone(), lambda.clone());
    condense_regularized(&a0, p, &coef, opts)
}

/// Any completion works; the all-ones border is the canonical one.
fn completion(q: &SquareMatrix) -> SquareMatrix {
    let n = q.order();
    SquareMatrix::from_fn(n + 2, |i, j| {
        if i >= 2 && i <= n + 1 && j >= 2 && j <= n + 1 {
            q.get(i - 1, j - 1).clone()
        } else {
            Scalar::one()
        }
    })
}

/// Generalized determinant with position-dependent bias. `a` has order
/// `n+1`; `lambdas` and `mus` have length `2n-1` and are indexed by the
/// diagonal label `a = j-i` and antidiagonal label `b`, offset by `n-1`.
/// With `q` present this computes `T_n(P, Q | lambdas, mus)`.
pub fn lambda_mu_det(
    a: &SquareMatrix,
    lambdas: &[Scalar],
    mus: &[Scalar],
    q: Option<&SquareMatrix>,
) -> Result<Scalar> {
    let m = a.order();
    if m == 1 {
        return Ok(a.get(1, 1).clone());
    }
    let n = m - 1;
    if lambdas.len() != 2 * n - 1 || mus.len() != 2 * n - 1 {
        return Err(Error::SizeMismatch(format!(
            "bias vectors must have length {}",
            2 * n - 1
        )));
    }
    let a0 = match q {
        None => SquareMatrix::all_ones(m + 1),
        Some(q) => {
            if q.order() != n {
                return Err(Error::SizeMismatch(format!(
                    "Q has order {}, expected {}",
                    q.order(),
                    n
                )));
            }
            completion(q)
        }
    };
    let offset = n as i64 - 1;
    let coef = move |k: usize, i: usize, j: usize| {
        // A_{k-1} has size m + 2 - k; its main antidiagonal is
        // i + j = m + 3 - k.
        let b = i as i64 + j as i64 - (m as i64 + 2 - k as i64);
        let a_label = j as i64 - i as i64;
        (
            mus[(b + offset) as usize].clone(),
            lambdas[(a_label + offset) as usize].clone(),
        )
    };
    Ok(condense_regularized(&a0, a, &coef, CondOptions::default())?.result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aztec::{partition_brute, AztecWeighting, Bias};
    use crate::scalar::parse;

    fn lam() -> Scalar {
        Scalar::var("lambda")
    }

    #[test]
    fn two_by_two_minor() {
        let a = SquareMatrix::from_exprs(&[
            vec!["a".into(), "b".into()],
            vec!["c".into(), "d".into()],
        ])
        .unwrap();
        assert_eq!(lambda_det(&a, &lam()).unwrap(), parse("a*d + lambda*b*c").unwrap());
    }

    #[test]
    fn generic_three_by_three_expansion() {
        let a = SquareMatrix::symbolic(3, "a");
        let got = lambda_det(&a, &lam()).unwrap();
        let expected = parse(
            "a_1_1*a_2_2*a_3_3 + lambda*a_1_2*a_2_1*a_3_3 + lambda*a_1_1*a_2_3*a_3_2 \
             + lambda^2*a_1_2*a_2_3*a_3_1 + lambda^2*a_1_3*a_2_1*a_3_2 \
             + lambda^3*a_1_3*a_2_2*a_3_1 \
             + lambda*(1+lambda)*a_1_2*a_2_1*a_2_3*a_3_2/a_2_2",
        )
        .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn all_ones_counts_tilings() {
        let a = SquareMatrix::all_ones(4);
        assert_eq!(lambda_det(&a, &Scalar::one()).unwrap(), Scalar::from_int(64));
        let sym = lambda_det(&a, &lam()).unwrap();
        assert_eq!(sym, parse("(1+lambda)^6").unwrap());
    }

    #[test]
    fn degree_in_lambda_is_n_choose_2() {
        for n in 2..=4u32 {
            let a = SquareMatrix::symbolic(n as usize, "a");
            let d = lambda_det(&a, &lam()).unwrap();
            let v = crate::scalar::var("lambda");
            assert_eq!(d.numerator().degree_in(v), n * (n - 1) / 2);
        }
    }

    #[test]
    fn minus_one_specialization_is_the_classical_determinant() {
        let a = SquareMatrix::from_exprs(&[
            vec!["2".into(), "3".into(), "5".into()],
            vec!["7".into(), "11".into(), "13".into()],
            vec!["17".into(), "19".into(), "23".into()],
        ])
        .unwrap();
        // classical determinant of the 3x3 above is -78
        assert_eq!(
            lambda_det(&a, &Scalar::from_int(-1)).unwrap(),
            Scalar::from_int(-78)
        );
    }

    #[test]
    fn cond_pq_initial_and_t2() {
        let p = SquareMatrix::symbolic(2, "p");
        let q = SquareMatrix::symbolic(1, "q");
        assert_eq!(
            cond_pq(&p, &q, &lam()).unwrap(),
            parse("(p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1").unwrap()
        );
        let p = SquareMatrix::symbolic(3, "p");
        let q = SquareMatrix::symbolic(2, "q");
        let got = cond_pq(&p, &q, &lam()).unwrap();
        let expected = parse(
            "((p_1_1*p_2_2 + lambda*p_1_2*p_2_1)/q_1_1 \
              * (p_2_2*p_3_3 + lambda*p_2_3*p_3_2)/q_2_2 \
              + lambda * (p_2_1*p_3_2 + lambda*p_2_2*p_3_1)/q_2_1 \
                       * (p_1_2*p_2_3 + lambda*p_1_3*p_2_2)/q_1_2) / p_2_2",
        )
        .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn theorem1_specializations() {
        // T_n(P,1) = det_lambda P at n = 2
        let p = SquareMatrix::symbolic(3, "p");
        let q1 = SquareMatrix::all_ones(2);
        assert_eq!(
            cond_pq(&p, &q1, &lam()).unwrap(),
            lambda_det(&p, &lam()).unwrap()
        );
        // T_n(1,Q) = (1+lambda)^n det_lambda Q^{-1} at n = 2
        let q = SquareMatrix::symbolic(2, "q");
        let lhs = cond_pq(&SquareMatrix::all_ones(3), &q, &lam()).unwrap();
        let rhs = parse("(1+lambda)^2")
            .unwrap()
            .mul(&lambda_det(&q.entrywise_inv().unwrap(), &lam()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn completion_border_does_not_matter() {
        let p = SquareMatrix::from_fn(4, |i, j| Scalar::from_int((2 + 3 * i + 5 * j) as i64));
        let q = SquareMatrix::from_fn(3, |i, j| Scalar::from_int((1 + i + 7 * j) as i64));
        let canonical = cond_pq(&p, &q, &lam()).unwrap();
        // replace the all-ones border with arbitrary nonzero junk
        let n = q.order();
        let weird = SquareMatrix::from_fn(n + 2, |i, j| {
            if i >= 2 && i <= n + 1 && j >= 2 && j <= n + 1 {
                q.get(i - 1, j - 1).clone()
            } else {
                Scalar::from_int((10 + i * j) as i64)
            }
        });
        let via_weird = {
            let one = Scalar::one();
            let lam = lam();
            let coef = move |_: usize, _: usize, _: usize| (one.clone(), lam.clone());
            condense_regularized(&weird, &p, &coef, CondOptions::default())
                .unwrap()
                .result
        };
        assert_eq!(canonical, via_weird);
    }

    #[test]
    fn desnanot_jacobi_identity_random() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let a = SquareMatrix::from_fn(4, |_, _| {
                Scalar::ratio(rng.gen_range(1..30), rng.gen_range(1..10))
            });
            let l = lam();
            let full = lambda_det(&a, &l).unwrap();
            let c = lambda_det(&a.submatrix(2, 2, 2), &l).unwrap();
            let ul = lambda_det(&a.submatrix(1, 1, 3), &l).unwrap();
            let lr = lambda_det(&a.submatrix(2, 2, 3), &l).unwrap();
            let ll = lambda_det(&a.submatrix(2, 1, 3), &l).unwrap();
            let ur = lambda_det(&a.submatrix(1, 2, 3), &l).unwrap();
            assert_eq!(full.mul(&c), ul.mul(&lr).add(&l.mul(&ll).mul(&ur)));
        }
    }

    #[test]
    fn octahedron_recurrence_for_cond_pq() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = SquareMatrix::from_fn(4, |_, _| Scalar::from_int(rng.gen_range(1..20)));
        let q = SquareMatrix::from_fn(3, |_, _| Scalar::from_int(rng.gen_range(1..20)));
        let l = lam();
        let t3 = cond_pq(&p, &q, &l).unwrap();
        let t1c = cond_pq(&p.submatrix(2, 2, 2), &q.submatrix(2, 2, 1), &l).unwrap();
        let ul = cond_pq(&p.submatrix(1, 1, 3), &q.submatrix(1, 1, 2), &l).unwrap();
        let lr = cond_pq(&p.submatrix(2, 2, 3), &q.submatrix(2, 2, 2), &l).unwrap();
        let ll = cond_pq(&p.submatrix(2, 1, 3), &q.submatrix(2, 1, 2), &l).unwrap();
        let ur = cond_pq(&p.submatrix(1, 2, 3), &q.submatrix(1, 2, 2), &l).unwrap();
        assert_eq!(t3.mul(&t1c), ul.mul(&lr).add(&l.mul(&ll).mul(&ur)));
    }

    #[test]
    fn matches_brute_force_on_random_weights() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for n in 1..=3 {
            let p = SquareMatrix::from_fn(n + 1, |_, _| Scalar::from_int(rng.gen_range(1..9)));
            let q = SquareMatrix::from_fn(n, |_, _| Scalar::from_int(rng.gen_range(1..9)));
            let l = Scalar::ratio(rng.gen_range(1..9), rng.gen_range(1..5));
            let w = AztecWeighting::new(p.clone(), q.clone(), Bias::Homogeneous(l.clone()))
                .unwrap();
            assert_eq!(cond_pq(&p, &q, &l).unwrap(), partition_brute(&w).unwrap());
        }
    }

    #[test]
    fn inhomogeneous_initial_condition() {
        let p = SquareMatrix::symbolic(2, "p");
        let q = SquareMatrix::symbolic(1, "q");
        let got = lambda_mu_det(
            &p,
            &[Scalar::var("lambda_0")],
            &[Scalar::var("mu_0")],
            Some(&q),
        )
        .unwrap();
        assert_eq!(
            got,
            parse("(mu_0*p_1_1*p_2_2 + lambda_0*p_1_2*p_2_1)/q_1_1").unwrap()
        );
    }

    #[test]
    fn inhomogeneous_n2_matches_the_eight_term_expansion() {
        let p = SquareMatrix::symbolic(3, "p");
        let q = SquareMatrix::symbolic(2, "q");
        let lams: Vec<Scalar> = ["lambda_m1", "lambda_0", "lambda_1"]
            .iter()
            .map(|s| Scalar::var(s))
            .collect();
        let mus: Vec<Scalar> = ["mu_m1", "mu_0", "mu_1"]
            .iter()
            .map(|s| Scalar::var(s))
            .collect();
        let got = lambda_mu_det(&p, &lams, &mus, Some(&q)).unwrap();
        let expected = parse(
            "mu_m1*mu_0*mu_1 * p_1_1*p_2_2*p_3_3/(q_1_1*q_2_2) \
             + lambda_0*mu_0*mu_1 * p_1_2*p_2_1*p_3_3/(q_1_1*q_2_2) \
             + lambda_0*mu_m1*mu_0 * p_1_1*p_2_3*p_3_2/(q_1_1*q_2_2) \
             + lambda_m1*lambda_0*mu_0 * p_1_2*p_2_3*p_3_1/(q_1_2*q_2_1) \
             + lambda_0*lambda_1*mu_0 * p_1_3*p_2_1*p_3_2/(q_1_2*q_2_1) \
             + lambda_m1*lambda_0*lambda_1 * p_1_3*p_2_2*p_3_1/(q_1_2*q_2_1) \
             + lambda_0*mu_0^2 * p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_2*q_2_1) \
             + lambda_0^2*mu_0 * p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_1*q_2_2)",
        )
        .unwrap();
        assert_eq!(got, expected);
        // and the brute-force enumeration assigns the same biases
        let w = AztecWeighting::new(
            p,
            q,
            Bias::Inhomogeneous {
                lambdas: lams,
                mus,
            },
        )
        .unwrap();
        assert_eq!(partition_brute(&w).unwrap(), expected);
    }

    #[test]
    fn inhomogeneous_brute_force_agreement_at_order_3() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        let n = 3usize;
        let p = SquareMatrix::from_fn(n + 1, |_, _| Scalar::from_int(rng.gen_range(1..7)));
        let q = SquareMatrix::from_fn(n, |_, _| Scalar::from_int(rng.gen_range(1..7)));
        let lams: Vec<Scalar> = (0..2 * n - 1)
            .map(|_| Scalar::ratio(rng.gen_range(1..7), rng.gen_range(1..4)))
            .collect();
        let mus: Vec<Scalar> = (0..2 * n - 1)
            .map(|_| Scalar::ratio(rng.gen_range(1..7), rng.gen_range(1..4)))
            .collect();
        let via_det = lambda_mu_det(&p, &lams, &mus, Some(&q)).unwrap();
        let w = AztecWeighting::new(
            p,
            q,
            Bias::Inhomogeneous {
                lambdas: lams,
                mus,
            },
        )
        .unwrap();
        assert_eq!(via_det, partition_brute(&w).unwrap());
    }

    #[test]
    fn homogeneous_specialization_of_inhomogeneous() {
        let a = SquareMatrix::symbolic(3, "a");
        let l = lam();
        let lams = vec![l.clone(), l.clone(), l.clone()];
        let mus = vec![Scalar::one(), Scalar::one(), Scalar::one()];
        assert_eq!(
            lambda_mu_det(&a, &lams, &mus, None).unwrap(),
            lambda_det(&a, &l).unwrap()
        );
    }

    #[test]
    fn integer_fast_path_agrees_with_the_generic_engine() {
        use rand::Rng;
        // mixed signs and fractions; trace forces the generic engine
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for n in 1..=4usize {
            for _ in 0..4 {
                let p = SquareMatrix::from_fn(n + 1, |_, _| {
                    Scalar::ratio(rng.gen_range(-12..13), rng.gen_range(1..5))
                });
                let q = SquareMatrix::from_fn(n, |_, _| {
                    Scalar::ratio(rng.gen_range(-12..13).max(1), rng.gen_range(1..5))
                });
                let l = Scalar::ratio(rng.gen_range(-6..7), rng.gen_range(1..4));
                let opts = CondOptions {
                    trace: true,
                    ..CondOptions::default()
                };
                let generic = cond_pq_opt(&p, &q, &l, opts).map(|r| r.result);
                let fast = cond_pq(&p, &q, &l);
                match (generic, fast) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "value mismatch at n = {n}"),
                    (Err(_), Err(_)) => {}
                    (a, b) => panic!("path disagreement at n = {n}: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn regularization_and_genuinely_undefined_determinants() {
        // All-ones with a central zero: the direct expansion has a term
        // with 1/a_22, so the determinant does not exist.
        let a = SquareMatrix::from_exprs(&[
            vec!["1".into(), "1".into(), "1".into()],
            vec!["1".into(), "0".into(), "1".into()],
            vec!["1".into(), "1".into(), "1".into()],
        ])
        .unwrap();
        assert_eq!(
            lambda_det(&a, &lam()),
            Err(Error::UndefinedDeterminant)
        );
        // Zeros that the structure protects: first row a unit vector.
        let a = SquareMatrix::from_exprs(&[
            vec!["0".into(), "1".into(), "0".into()],
            vec!["1".into(), "1".into(), "1".into()],
            vec!["1".into(), "1".into(), "1".into()],
        ])
        .unwrap();
        assert_eq!(
            lambda_det(&a, &lam()).unwrap(),
            parse("2*lambda*(1+lambda)").unwrap()
        );
    }
}
