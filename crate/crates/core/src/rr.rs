//! Direct, non-recursive evaluation of (generalized) lambda-determinants
//! as sums over alternating sign matrices, and the gauge transformation
//! that absorbs the vertical bias into the face weights.

use crate::asm::{compatible_set, for_each_asm, Asm, Direction};
use crate::condense;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// `sum_B lambda^P(B) (1+lambda)^N_-(B) A^B` over alternating sign
/// matrices of the order of `a`.
pub fn rr_det(a: &SquareMatrix, lambda: &Scalar) -> Result<Scalar> {
    let n = a.order();
    let one_plus = Scalar::one().add(lambda);
    let mut acc = Scalar::zero();
    let mut failure: Option<Error> = None;
    for_each_asm(n, |b| {
        if failure.is_some() {
            return;
        }
        let stats = b.stats();
        let coeff = match lambda
            .pow(stats.p_exp as i64)
            .and_then(|x| one_plus.pow(stats.n_minus as i64).map(|y| x.mul(&y)))
        {
            Ok(c) => c,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        if coeff.is_zero() {
            return;
        }
        match monomial_power(a, b, 1) {
            Ok(m) => acc = acc.add(&coeff.mul(&m)),
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// `prod a_ij^(sign * b_ij)`; a zero entry raised to a negative power makes
/// the determinant undefined.
fn monomial_power(a: &SquareMatrix, b: &Asm, sign: i64) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for i in 1..=b.order() {
        for j in 1..=b.order() {
            let e = sign * b.get(i, j) as i64;
            if e == 0 {
                continue;
            }
            let v = a.get(i, j);
            if v.is_zero() {
                if e < 0 {
                    return Err(Error::UndefinedDeterminant);
                }
                return Ok(Scalar::zero());
            }
            acc = acc.mul(&v.pow(e)?);
        }
    }
    Ok(acc)
}

/// The three equivalent forms of the general two-matrix formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RrForm {
    /// `lambda^(P(B) + |C'| - |C'|_min)` summed per larger matrix.
    MinForm,
    /// `lambda^(P(B') + |C|_max - |C|)` summed per smaller matrix.
    MaxForm,
    /// `lambda^((n+1)^2 + |C'| - |C|)` over compatible pairs.
    CornerForm,
}

/// Partition function `T_n(P, Q | lambda)` as a sum over compatible pairs
/// of alternating sign matrices.
pub fn rr_general(
    p: &SquareMatrix,
    q: &SquareMatrix,
    lambda: &Scalar,
    form: RrForm,
) -> Result<Scalar> {
    let n = q.order();
    if p.order() != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "P has order {}, expected {}",
            p.order(),
            n + 1
        )));
    }
    let mut acc = Scalar::zero();
    let mut failure: Option<Error> = None;
    match form {
        RrForm::MinForm | RrForm::CornerForm => {
            for_each_asm(n + 1, |b| {
                if failure.is_some() {
                    return;
                }
                let pb = b.stats().p_exp;
                let pterm = match monomial_power(p, b, 1) {
                    Ok(m) => m,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                let cb_total = b.corner_sum().total();
                for (bp, delta) in compatible_set(b, Direction::Smaller) {
                    let exponent = match form {
                        RrForm::MinForm => (pb + delta) as i64,
                        RrForm::CornerForm => {
                            let cbp_total = bp.corner_sum().total();
                            (n as i64 + 1).pow(2) + cbp_total - cb_total
                        }
                        RrForm::MaxForm => unreachable!(),
                    };
                    let r = lambda
                        .pow(exponent)
                        .and_then(|c| monomial_power(q, &bp, -1).map(|m| c.mul(&m)));
                    match r {
                        Ok(term) => acc = acc.add(&pterm.mul(&term)),
                        Err(e) => {
                            failure = Some(e);
                            return;
                        }
                    }
                }
            })?;
        }
        RrForm::MaxForm => {
            for_each_asm(n, |bp| {
                if failure.is_some() {
                    return;
                }
                let pbp = bp.stats().p_exp;
                let qterm = match monomial_power(q, bp, -1) {
                    Ok(m) => m,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                for (b, delta) in compatible_set(bp, Direction::Larger) {
                    let r = lambda
                        .pow((pbp + delta) as i64)
                        .and_then(|c| monomial_power(p, &b, 1).map(|m| c.mul(&m)));
                    match r {
                        Ok(term) => acc = acc.add(&qterm.mul(&term)),
                        Err(e) => {
                            failure = Some(e);
                            return;
                        }
                    }
                }
            })?;
        }
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// Result of absorbing the vertical bias into the face weights. With
/// `s = sqrt(lambda)`:
/// `T_n(P, Q | s^2) = prefactor * T_n(P_lambda, Q_lambda | 1)`.
#[derive(Clone, Debug)]
pub struct GaugeAbsorption {
    pub p_lambda: SquareMatrix,
    pub q_lambda: SquareMatrix,
    /// `s^(n^2)`, the combined gauge and measure normalization.
    pub prefactor: Scalar,
}

/// Exponent of `s` on `p_ij`: `2 sigma_ij` with `sigma_ij = i+j-1-ij`.
pub fn sigma_exponent(i: i64, j: i64) -> i64 {
    i + j - 1 - i * j
}

/// Exponent of `s` on `q_ij`: `2 tau_ij = i+j-1-2ij` (`tau` itself is a
/// half-integer).
pub fn two_tau_exponent(i: i64, j: i64) -> i64 {
    i + j - 1 - 2 * i * j
}

/// Absorbs the vertical bias into redefined face matrices. The bias is
/// passed through its square root so that every returned entry stays a
/// radical-free scalar.
pub fn gauge_absorb(
    p: &SquareMatrix,
    q: &SquareMatrix,
    sqrt_lambda: &Scalar,
) -> Result<GaugeAbsorption> {
    let n = q.order();
    if p.order() != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "P has order {}, expected {}",
            p.order(),
            n + 1
        )));
    }
    if sqrt_lambda.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let s = sqrt_lambda;
    let p_lambda = SquareMatrix::from_fn(n + 1, |i, j| {
        s.pow(2 * sigma_exponent(i as i64, j as i64))
            .expect("nonzero base")
            .mul(p.get(i, j))
    });
    let q_lambda = SquareMatrix::from_fn(n, |i, j| {
        s.pow(two_tau_exponent(i as i64, j as i64))
            .expect("nonzero base")
            .mul(q.get(i, j))
    });
    let prefactor = s.pow((n * n) as i64)?;
    Ok(GaugeAbsorption {
        p_lambda,
        q_lambda,
        prefactor,
    })
}

/// Checks the absorption identity `T_n(P,Q|s^2) = prefactor *
/// T_n(P_lambda, Q_lambda | 1)` by condensation on both sides.
pub fn gauge_identity_holds(
    p: &SquareMatrix,
    q: &SquareMatrix,
    sqrt_lambda: &Scalar,
) -> Result<bool> {
    let g = gauge_absorb(p, q, sqrt_lambda)?;
    let lambda = sqrt_lambda.mul(sqrt_lambda);
    let lhs = condense::cond_pq(p, q, &lambda)?;
    let rhs = g
        .prefactor
        .mul(&condense::cond_pq(&g.p_lambda, &g.q_lambda, &Scalar::one())?);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::enumerate_asm;
    use crate::condense::{cond_pq, lambda_det};
    use crate::scalar::parse;
    use rand::{Rng, SeedableRng};

    fn lam() -> Scalar {
        Scalar::var("lambda")
    }

    #[test]
    fn rr_det_matches_the_generic_expansion() {
        let a = SquareMatrix::symbolic(3, "a");
        assert_eq!(rr_det(&a, &lam()).unwrap(), lambda_det(&a, &lam()).unwrap());
        let ones = SquareMatrix::all_ones(3);
        assert_eq!(rr_det(&ones, &lam()).unwrap(), parse("(1+lambda)^3").unwrap());
    }

    #[test]
    fn rr_det_matches_condensation_on_random_input() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let a = SquareMatrix::from_fn(4, |_, _| {
            Scalar::ratio(rng.gen_range(1..40), rng.gen_range(1..12))
        });
        assert_eq!(rr_det(&a, &lam()).unwrap(), lambda_det(&a, &lam()).unwrap());
    }

    #[test]
    fn rr_det_detects_poles() {
        // zero where the unique -1 wants an inverse
        let a = SquareMatrix::from_exprs(&[
            vec!["1".into(), "1".into(), "1".into()],
            vec!["1".into(), "0".into(), "1".into()],
            vec!["1".into(), "1".into(), "1".into()],
        ])
        .unwrap();
        assert_eq!(rr_det(&a, &lam()), Err(Error::UndefinedDeterminant));
        // but at lambda = -1 only permutations contribute: classical det
        assert_eq!(
            rr_det(&a, &Scalar::from_int(-1)).unwrap(),
            Scalar::zero()
        );
        let b = SquareMatrix::from_exprs(&[
            vec!["2".into(), "3".into(), "5".into()],
            vec!["7".into(), "0".into(), "13".into()],
            vec!["17".into(), "19".into(), "23".into()],
        ])
        .unwrap();
        // classical determinant: 2*(0-247) - 3*(161-221) + 5*(133-0)
        assert_eq!(
            rr_det(&b, &Scalar::from_int(-1)).unwrap(),
            Scalar::from_int(351)
        );
    }

    #[test]
    fn three_forms_agree_symbolically_at_n2() {
        let p = SquareMatrix::symbolic(3, "p");
        let q = SquareMatrix::symbolic(2, "q");
        let reference = cond_pq(&p, &q, &lam()).unwrap();
        for form in [RrForm::MinForm, RrForm::MaxForm, RrForm::CornerForm] {
            assert_eq!(rr_general(&p, &q, &lam(), form).unwrap(), reference);
        }
    }

    #[test]
    fn specializations_of_the_general_formula() {
        // Q = 1 collapses to rr_det(P)
        let p = SquareMatrix::symbolic(3, "p");
        let q1 = SquareMatrix::all_ones(2);
        assert_eq!(
            rr_general(&p, &q1, &lam(), RrForm::MinForm).unwrap(),
            rr_det(&p, &lam()).unwrap()
        );
        // P = 1 gives (1+lambda)^n det_lambda(Q^{-1})
        let q = SquareMatrix::symbolic(2, "q");
        let got = rr_general(&SquareMatrix::all_ones(3), &q, &lam(), RrForm::MaxForm).unwrap();
        let expected = parse("(1+lambda)^2")
            .unwrap()
            .mul(&lambda_det(&q.entrywise_inv().unwrap(), &lam()).unwrap());
        assert_eq!(got, expected);
    }

    #[test]
    fn inner_delta_sums_are_binomial_theorems() {
        let l = lam();
        let one_plus = Scalar::one().add(&l);
        for n in 2..=4usize {
            for b in enumerate_asm(n).unwrap() {
                let total = compatible_set(&b, Direction::Smaller)
                    .iter()
                    .map(|(_, d)| l.pow(*d as i64).unwrap())
                    .fold(Scalar::zero(), |acc, t| acc.add(&t));
                assert_eq!(total, one_plus.pow(b.stats().n_minus as i64).unwrap());
            }
        }
        for n in 1..=3usize {
            for bp in enumerate_asm(n).unwrap() {
                let total = compatible_set(&bp, Direction::Larger)
                    .iter()
                    .map(|(_, d)| l.pow(*d as i64).unwrap())
                    .fold(Scalar::zero(), |acc, t| acc.add(&t));
                assert_eq!(total, one_plus.pow(bp.stats().n_plus as i64).unwrap());
            }
        }
    }

    #[test]
    fn gauge_edge_factors() {
        // Around each q-face the gauge leaves horizontal edges with weight
        // 1 and vertical edges with weight sqrt(lambda). Exponents are in
        // units of sqrt(lambda).
        let gamma = |i: i64, j: i64| (i - 1) * (2 * j - 1);
        for i in 1..=8i64 {
            for j in 1..=8i64 {
                let vertical = -2 * sigma_exponent(i, j)
                    - two_tau_exponent(i, j)
                    - gamma(i, j)
                    - (gamma(i, j) + j - i);
                assert_eq!(vertical, 1, "left edge of q_{i}{j}");
                let horizontal = -2 * sigma_exponent(i, j + 1)
                    - two_tau_exponent(i, j)
                    - gamma(i, j)
                    - (gamma(i, j) + i + j - 1);
                assert_eq!(horizontal, 0, "upper edge of q_{i}{j}");
            }
        }
    }

    #[test]
    fn exponent_recombination_at_n2() {
        // n^2 + sum 2*sigma b - sum 2*tau b' = 2 (n+1)^2 + 2|C'| - 2|C|
        let n = 2i64;
        for b in enumerate_asm(3).unwrap() {
            let sb: i64 = (1..=3)
                .flat_map(|i| (1..=3).map(move |j| (i, j)))
                .map(|(i, j)| 2 * sigma_exponent(i as i64, j as i64) * b.get(i, j) as i64)
                .sum();
            for (bp, _) in compatible_set(&b, Direction::Smaller) {
                let tbp: i64 = (1..=2)
                    .flat_map(|i| (1..=2).map(move |j| (i, j)))
                    .map(|(i, j)| two_tau_exponent(i as i64, j as i64) * bp.get(i, j) as i64)
                    .sum();
                let lhs = n * n + sb - tbp;
                let rhs = 2 * (n + 1) * (n + 1) + 2 * bp.corner_sum().total()
                    - 2 * b.corner_sum().total();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gauge_absorption_identity() {
        // trivial bias
        let p = SquareMatrix::symbolic(3, "p");
        let q = SquareMatrix::symbolic(2, "q");
        let g = gauge_absorb(&p, &q, &Scalar::one()).unwrap();
        assert_eq!(g.p_lambda, p);
        assert_eq!(g.q_lambda, q);
        assert_eq!(g.prefactor, Scalar::one());
        // symbolic square root, n = 1 and n = 2
        let s = Scalar::var("s");
        let p1 = SquareMatrix::symbolic(2, "p");
        let q1 = SquareMatrix::symbolic(1, "q");
        assert!(gauge_identity_holds(&p1, &q1, &s).unwrap());
        assert!(gauge_identity_holds(&p, &q, &s).unwrap());
    }
}
