//! Exact multivariate rational functions, the value type of every
//! computation in the crate.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One};

use super::poly::{Monomial, Poly};
use super::vars::{var, VarId};
use crate::error::{Error, Result};

/// A ratio of integer-coefficient polynomials in canonical form:
/// numerator and denominator are coprime, their integer contents are
/// coprime, and the denominator has a positive leading coefficient under
/// the graded lexicographic order. Equal values are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: Poly::from_int(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_polys(Poly::constant(r), Poly::one()).expect("finite rational")
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::from_polys(Poly::from_int(p), Poly::from_int(q)).expect("nonzero denominator")
    }

    /// The indeterminate with the given name.
    pub fn var(name: &str) -> Self {
        Scalar {
            num: Poly::var(var(name)),
            den: Poly::one(),
        }
    }

    pub fn var_id(v: VarId) -> Self {
        Scalar {
            num: Poly::var(v),
            den: Poly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divexact(&g).expect("gcd divides numerator"),
                den.divexact(&g).expect("gcd divides denominator"),
            )
        };
        // Integer contents: num = (u/v) * primitive with coprime u, v.
        let (pnum, cnum) = num.primitive();
        let (pden, cden) = den.primitive();
        let c = cnum / cden; // sign of cden folded in: pden has positive lc
        let num = pnum.mul_rat(&BigRational::from_integer(c.numer().clone()));
        let den = pden.mul_rat(&BigRational::from_integer(c.denom().clone()));
        Ok(Scalar { num, den })
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(r)` when the value is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if let Err(pos) = vs.binary_search(&v) {
                vs.insert(pos, v);
            }
        }
        vs
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // a/b + c/d = (a d' + c b') / (b' d g) with g = gcd(b, d).
        let g = Poly::gcd(&self.den, &other.den);
        let (bp, dp) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.divexact(&g).expect("gcd divides"),
                other.den.divexact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&dp).add(&other.num.mul(&bp));
        let den = bp.mul(&other.den);
        Scalar::from_polys(num, den).expect("denominator product is nonzero")
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        // Cross-reduce before multiplying to keep the gcds small.
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let a = self.num.divexact(&g1).expect("gcd divides");
        let d = other.den.divexact(&g1).expect("gcd divides");
        let c = other.num.divexact(&g2).expect("gcd divides");
        let b = self.den.divexact(&g2).expect("gcd divides");
        Scalar::from_polys(a.mul(&c), b.mul(&d)).expect("nonzero denominator")
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&Scalar {
            num: other.den.clone(),
            den: other.num.clone(),
        }))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one().div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        if self.is_zero() {
            if e < 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(Scalar::zero());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mag = e.unsigned_abs();
        Ok(Scalar {
            num: base.num.pow(mag),
            den: base.den.pow(mag),
        })
    }

    /// Simultaneous substitution of variables by scalars, then
    /// renormalization.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Scalar>) -> Result<Scalar> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let num = eval_poly(&self.num, bindings)?;
        let den = eval_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(Error::PoleAtSubstitution);
        }
        num.div(&den)
    }

    /// Substitutes a single variable.
    pub fn substitute_var(&self, v: VarId, value: &Scalar) -> Result<Scalar> {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    /// Limit as `v` tends to zero: cancels common powers of `v`, then
    /// evaluates at `v = 0`.
    pub fn limit_at_zero(&self, v: VarId) -> Result<Scalar> {
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let a = self.num.min_degree_in(v);
        let b = self.den.min_degree_in(v);
        if a < b {
            return Err(Error::PoleAtZero(super::vars::var_name(v)));
        }
        if a > b {
            // A net positive power of v survives in the numerator.
            return Ok(Scalar::zero());
        }
        let num = self.num.div_monomial(&Monomial::var(v, a)).substitute_zero(v);
        let den = self.den.div_monomial(&Monomial::var(v, b)).substitute_zero(v);
        debug_assert!(!den.is_zero());
        Scalar::from_polys(num, den)
    }

    /// Laurent expansion in `v`: returns `(d0, coeffs)` such that
    /// `self = sum_k coeffs[k] * v^(d0 + k)` with every coefficient free of
    /// `v`. Fails when the denominator is not a monomial in `v` times a
    /// `v`-free polynomial.
    pub fn laurent_coeffs(&self, v: VarId) -> Result<(i64, Vec<Scalar>)> {
        if self.is_zero() {
            return Ok((0, Vec::new()));
        }
        let k = self.den.min_degree_in(v);
        let d = self.den.div_monomial(&Monomial::var(v, k));
        if d.degree_in(v) != 0 {
            return Err(Error::NotLaurent(super::vars::var_name(v)));
        }
        let dsc = Scalar::from_polys(d, Poly::one())?;
        let lo = self.num.min_degree_in(v) as i64 - k as i64;
        let hi = self.num.degree_in(v) as i64 - k as i64;
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        let by_deg = self.num.coeffs_in(v);
        for e in self.num.min_degree_in(v)..=self.num.degree_in(v) {
            let c = Scalar::from_polys(by_deg[e as usize].clone(), Poly::one())?;
            coeffs.push(c.div(&dsc)?);
        }
        Ok((lo, coeffs))
    }

    /// True when `self` and `other` agree modulo the polynomial `modulus`
    /// (a polynomial in `v`, required nonconstant): the difference, written
    /// over a common denominator, has numerator divisible by `modulus` and
    /// denominator that is not.
    pub fn equal_mod(&self, other: &Scalar, modulus: &Scalar, v: VarId) -> bool {
        assert!(modulus.is_polynomial() && modulus.numerator().degree_in(v) > 0);
        let m = modulus.numerator().primitive().0;
        let diff = self.sub(other);
        if diff.is_zero() {
            return true;
        }
        diff.num.divexact(&m).is_some() && diff.den.divexact(&m).is_none()
    }
}

fn eval_poly(p: &Poly, bindings: &BTreeMap<VarId, Scalar>) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (m, c) in &p.terms {
        let mut term = Scalar::from_rational(c.clone());
        for &(v, e) in &m.0 {
            match bindings.get(&v) {
                Some(s) => term = term.mul(&s.pow(e as i64)?),
                None => {
                    term = term.mul(&Scalar {
                        num: Poly::term(Monomial::var(v, e), BigRational::one()),
                        den: Poly::one(),
                    })
                }
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(expr: &str) -> Scalar {
        crate::scalar::parse(expr).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(Scalar::ratio(1, 2).add(&Scalar::ratio(1, 3)), Scalar::ratio(5, 6));
        assert_eq!(Scalar::ratio(1, 2).mul(&Scalar::ratio(2, 3)), Scalar::ratio(1, 3));
        assert_eq!(
            Scalar::from_int(1).div(&Scalar::from_int(0)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcd_cancellation() {
        // (x^2 - 1) / (x - 1) = x + 1
        let v = s("x^2 - 1").div(&s("x - 1")).unwrap();
        assert_eq!(v, s("x + 1"));
    }

    #[test]
    fn canonical_forms_compare_equal() {
        let a = s("(x + y) / (2*x + 2*y)");
        assert_eq!(a, Scalar::ratio(1, 2));
        let b = s("(1/2) * (x - y) / (x - y)");
        assert_eq!(b, Scalar::ratio(1, 2));
        // denominator sign normalization
        let c = s("1 / (-x + 1)");
        let d = s("-1 / (x - 1)");
        assert_eq!(c, d);
    }

    #[test]
    fn substitution() {
        let v = s("(1 + lambda)^3");
        let r = v
            .substitute_var(var("lambda"), &Scalar::from_int(1))
            .unwrap();
        assert_eq!(r, Scalar::from_int(8));

        let v = s("lambda / t");
        let r = v.substitute_var(var("t"), &s("lambda")).unwrap();
        assert_eq!(r, Scalar::one());

        let v = s("1 / (lambda - 1)");
        assert_eq!(
            v.substitute_var(var("lambda"), &Scalar::from_int(1)),
            Err(Error::PoleAtSubstitution)
        );
    }

    #[test]
    fn limits_at_zero() {
        let eps = var("eps");
        let v = s("eps * (1 / eps)");
        assert_eq!(v, Scalar::one()); // already cancelled by canonical form
        let v = s("(eps^2 + eps) / eps");
        assert_eq!(v.limit_at_zero(eps).unwrap(), Scalar::one());
        let v = s("(eps^2 + eps*x) / eps");
        assert_eq!(v.limit_at_zero(eps).unwrap(), s("x"));
        let v = s("1 / eps");
        assert!(matches!(v.limit_at_zero(eps), Err(Error::PoleAtZero(_))));
        let v = s("eps^2 / (eps + eps^2)");
        assert_eq!(v.limit_at_zero(eps).unwrap(), Scalar::zero());
    }

    #[test]
    fn laurent_coefficients() {
        let v = s("(p0*t^2 + p1*t + p2) / (4*t)");
        let (lo, coeffs) = v.laurent_coeffs(var("t")).unwrap();
        assert_eq!(lo, -1);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], s("p2/4"));
        assert_eq!(coeffs[1], s("p1/4"));
        assert_eq!(coeffs[2], s("p0/4"));
        assert!(s("1/(t+1)").laurent_coeffs(var("t")).is_err());
    }

    #[test]
    fn equality_modulo_a_polynomial() {
        // lambda^2 = 6 lambda - 1 modulo m
        let m = s("lambda^2 - 6*lambda + 1");
        let v = var("lambda");
        assert!(s("lambda^2").equal_mod(&s("6*lambda - 1"), &m, v));
        assert!(s("(1+lambda)^2").equal_mod(&s("8*lambda"), &m, v));
        assert!(!s("lambda^2").equal_mod(&s("lambda"), &m, v));
    }
}
