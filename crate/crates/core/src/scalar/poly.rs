//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted in descending graded-lexicographic order over the
//! global variable list (lower [`VarId`] = more significant). Canonical
//! `Scalar`s store integer-coefficient polynomials, but the type itself
//! accepts arbitrary rational coefficients so intermediate computations can
//! stay in one representation.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::vars::{var_name, VarId};

/// Exponent vector, sparse: sorted by `VarId`, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn degree_of(&self, v: VarId) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Componentwise quotient; `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(v, e) in &other.0 {
            while i < self.0.len() && self.0[i].0 < v {
                out.push(self.0[i]);
                i += 1;
            }
            if i >= self.0.len() || self.0[i].0 != v || self.0[i].1 < e {
                return None;
            }
            if self.0[i].1 > e {
                out.push((v, self.0[i].1 - e));
            }
            i += 1;
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Monomial(out))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    /// Descending graded lexicographic order.
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lex on the merged variable list, smallest id most significant.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // A missing variable means exponent 0 there; the side that
                // still has variables has a *later* (less significant) one,
                // so the earlier variable decides.
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

/// Multivariate polynomial; terms sorted descending by grlex, no zero terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub(crate) terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: VarId) -> Self {
        Poly {
            terms: vec![(Monomial::var(v, 1), BigRational::one())],
        }
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading term under grlex.
    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_of(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: VarId) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_of(v)).min().unwrap_or(0)
    }

    /// Sorted list of variables that actually occur.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = Vec::new();
        for (m, _) in &self.terms {
            for &(v, _) in &m.0 {
                if let Err(pos) = vs.binary_search(&v) {
                    vs.insert(pos, v);
                }
            }
        }
        vs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp_grlex(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        // Accumulate into a map keyed by monomial, then sort once.
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, BigRational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        Poly { terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn mul_rat(&self, c: &BigRational) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Positive rational `c` with `self / c` primitive over the integers
    /// (coprime integer coefficients). Zero polynomial gives 1.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// `self / content(self)`, with sign fixed so the leading coefficient is
    /// positive. Returns the unit actually divided out alongside the result.
    pub fn primitive(&self) -> (Poly, BigRational) {
        if self.is_zero() {
            return (Poly::zero(), BigRational::one());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let p = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, coeff)| (m.clone(), coeff / &c))
                .collect(),
        };
        (p, c)
    }

    /// Componentwise-minimum monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(),
        };
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.div(m).expect("monomial divides"), c.clone()))
                .collect(),
        }
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None`.
    pub fn divexact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.mul_rat(&(BigRational::one() / c)));
        }
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut q_terms: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            q_terms.push((qm, qc));
        }
        q_terms.sort_by(|a, b| b.0.cmp_grlex(&a.0));
        Some(Poly { terms: q_terms })
    }

    /// Drops every term containing `v` (i.e. substitutes `v = 0`).
    pub fn substitute_zero(&self, v: VarId) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_of(v) == 0)
                .cloned()
                .collect(),
        }
    }

    /// Coefficients of `self` viewed as univariate in `v`; index = degree.
    pub fn coeffs_in(&self, v: VarId) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.degree_of(v) as usize;
            let rest = Monomial(m.0.iter().copied().filter(|&(w, _)| w != v).collect());
            out[e] = out[e].add(&Poly::term(rest, c.clone()));
        }
        out
    }

    /// Rebuilds a polynomial from univariate-in-`v` coefficients.
    pub fn from_coeffs_in(v: VarId, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul_term(&Monomial::var(v, e as u32), &BigRational::one()));
        }
        acc
    }

    /// Primitive gcd with positive leading coefficient. `gcd(0, p)` is the
    /// primitive part of `p`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive().0;
        }
        if b.is_zero() {
            return a.primitive().0;
        }
        if a == b {
            return a.primitive().0;
        }
        // Common monomial factor first.
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        let mg = ma.gcd(&mb);
        let ap = a.div_monomial(&ma).primitive().0;
        let bp = b.div_monomial(&mb).primitive().0;
        let core = Self::gcd_primitive(&ap, &bp);
        core.mul_term(&mg, &BigRational::one())
    }

    fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.clone();
        }
        let va = a.vars();
        let vb = b.vars();
        let common: Vec<VarId> = va.iter().copied().filter(|v| vb.contains(v)).collect();
        if common.is_empty() {
            return Poly::one();
        }
        // Main variable: smallest combined degree keeps the PRS short.
        let v = *common
            .iter()
            .min_by_key(|&&v| a.degree_in(v).min(b.degree_in(v)))
            .unwrap();

        let ca = a.coeffs_in(v);
        let cb = b.coeffs_in(v);
        let cont_a = Self::gcd_many(&ca);
        let cont_b = Self::gcd_many(&cb);
        let cont = Self::gcd(&cont_a, &cont_b);
        let pa = a.divexact(&cont_a).expect("content divides");
        let pb = b.divexact(&cont_b).expect("content divides");

        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        loop {
            let r = Self::pseudo_rem(&f, &g, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                // Nontrivial constant-in-v remainder: gcd has degree 0 in v.
                g = Poly::one();
                break;
            }
            let rc = Self::gcd_many(&r.coeffs_in(v));
            let r = r.divexact(&rc).expect("content divides").primitive().0;
            f = g;
            g = r;
        }
        let g = {
            let gc = Self::gcd_many(&g.coeffs_in(v));
            g.divexact(&gc).expect("content divides")
        };
        g.mul(&cont).primitive().0
    }

    fn gcd_many(polys: &[Poly]) -> Poly {
        let mut g = Poly::zero();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            g = Self::gcd(&g, p);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            Poly::one()
        } else {
            g
        }
    }

    /// Pseudo-remainder of `f` by `g` in the variable `v`:
    /// `lc(g)^(df-dg+1) * f = q*g + r` with `deg_v r < deg_v g`.
    fn pseudo_rem(f: &Poly, g: &Poly, v: VarId) -> Poly {
        let dg = g.degree_in(v);
        let gc = g.coeffs_in(v);
        let lc_g = gc[dg as usize].clone();
        let mut r = f.coeffs_in(v);
        let mut df = r.len() as i64 - 1;
        while df >= dg as i64 {
            let lead = r[df as usize].clone();
            if lead.is_zero() {
                r.pop();
                df -= 1;
                continue;
            }
            // r = lc_g * r - lead * g * v^(df-dg)
            for item in r.iter_mut() {
                *item = item.mul(&lc_g);
            }
            let shift = (df - dg as i64) as usize;
            for (k, gk) in gc.iter().enumerate() {
                r[shift + k] = r[shift + k].sub(&lead.mul(gk));
            }
            debug_assert!(r[df as usize].is_zero());
            r.pop();
            df -= 1;
        }
        Poly::from_coeffs_in(v, &r)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let show_coeff = !c.is_one() || m.is_one();
            if show_coeff {
                if c.denom().is_one() {
                    if c.numer().sign() == Sign::Minus {
                        parts.push(format!("(-{})", c.numer().magnitude()));
                    } else {
                        parts.push(format!("{}", c.numer()));
                    }
                } else {
                    parts.push(format!("({} / {})", c.numer(), c.denom()));
                }
            }
            for &(v, e) in &m.0 {
                if e == 1 {
                    parts.push(var_name(v));
                } else {
                    parts.push(format!("({} ^ {})", var_name(v), e));
                }
            }
            if parts.len() == 1 {
                write!(f, "{}", parts[0])?;
            } else {
                write!(f, "({})", parts.join(" * "))?;
            }
        }
        Ok(())
    }
}
