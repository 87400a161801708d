//! Local graph rewrites and the one-step shuffling transform: an order-`n`
//! weighting `(P, Q)` becomes an order-`n-1` weighting with the same
//! partition function.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{var, Scalar};

/// A weighted 4-cycle about to be renewed: central face weight `x1`,
/// the two opposite neighbor pairs `(x2, x4)` and `(x3, x5)`, and edge
/// weights with `alpha` opposite `gamma` and `beta` opposite `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UrbanCell {
    pub x1: Scalar,
    pub x2: Scalar,
    pub x3: Scalar,
    pub x4: Scalar,
    pub x5: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
}

/// The urban renewal move: the face weight becomes
/// `(alpha gamma x2 x4 + beta delta x3 x5) / x1` and opposite edge weights
/// swap pairwise.
pub fn urban_renewal(c: &UrbanCell) -> Result<UrbanCell> {
    if c.x1.is_zero() {
        return Err(Error::ZeroFaceWeight);
    }
    let num = c
        .alpha
        .mul(&c.gamma)
        .mul(&c.x2)
        .mul(&c.x4)
        .add(&c.beta.mul(&c.delta).mul(&c.x3).mul(&c.x5));
    Ok(UrbanCell {
        x1: num.div(&c.x1)?,
        x2: c.x2.clone(),
        x3: c.x3.clone(),
        x4: c.x4.clone(),
        x5: c.x5.clone(),
        alpha: c.gamma.clone(),
        beta: c.delta.clone(),
        gamma: c.alpha.clone(),
        delta: c.beta.clone(),
    })
}

/// One shuffling step: renews every `q`-face and contracts the green
/// chains, giving `P' = (q'_ij)` of order `n` and `Q' = (p_{i+1,j+1})` of
/// order `n-1`, with `T_n(P,Q|lambda) = T_{n-1}(P',Q'|lambda)`.
pub fn shuffle_step(
    p: &SquareMatrix,
    q: &SquareMatrix,
    lambda: &Scalar,
) -> Result<(SquareMatrix, SquareMatrix)> {
    let n = q.order();
    if p.order() != n + 1 {
        return Err(Error::SizeMismatch(format!(
            "P has order {}, expected {}",
            p.order(),
            n + 1
        )));
    }
    for (_, _, v) in q.entries() {
        if v.is_zero() {
            return Err(Error::ZeroFaceWeight);
        }
    }
    let mut p_next = SquareMatrix::all_ones(n);
    for i in 1..=n {
        for j in 1..=n {
            let num = p
                .get(i, j)
                .mul(p.get(i + 1, j + 1))
                .add(&lambda.mul(p.get(i, j + 1)).mul(p.get(i + 1, j)));
            p_next.set(i, j, num.div(q.get(i, j))?);
        }
    }
    let q_next = if n >= 1 {
        SquareMatrix::from_fn(n - 1, |i, j| p.get(i + 1, j + 1).clone())
    } else {
        SquareMatrix::new(0, Vec::new())?
    };
    Ok((p_next, q_next))
}

/// Iterates [`shuffle_step`] all the way down to the single face weight,
/// which equals `T_n(P, Q | lambda)`.
pub fn shuffle_to_scalar(
    p: &SquareMatrix,
    q: &SquareMatrix,
    lambda: &Scalar,
) -> Result<Scalar> {
    let mut p = p.clone();
    let mut q = q.clone();
    while q.order() >= 1 {
        let (pn, qn) = shuffle_step(&p, &q, lambda)?;
        p = pn;
        q = qn;
    }
    Ok(p.get(1, 1).clone())
}

/// `S^k(p_1_1)` for the substitution
/// `S: q_ij -> p_{i+1,j+1}, p_ij -> (p_ij p_{i+1,j+1} + lambda p_{i,j+1}
/// p_{i+1,j}) / q_ij` on the face variables `p_i_j`, `q_i_j`. The result
/// equals `T_k(P, Q | lambda)`.
pub fn substitution_s(steps: usize, lambda: &Scalar) -> Result<Scalar> {
    let pv = |i: usize, j: usize| Scalar::var(&format!("p_{i}_{j}"));
    let qv = |i: usize, j: usize| Scalar::var(&format!("q_{i}_{j}"));
    let mut expr = pv(1, 1);
    for step in 0..steps {
        let range = step + 1;
        let mut bindings = BTreeMap::new();
        for i in 1..=range {
            for j in 1..=range {
                let renewed = pv(i, j)
                    .mul(&pv(i + 1, j + 1))
                    .add(&lambda.mul(&pv(i, j + 1)).mul(&pv(i + 1, j)))
                    .div(&qv(i, j))?;
                bindings.insert(var(&format!("p_{i}_{j}")), renewed);
                bindings.insert(var(&format!("q_{i}_{j}")), pv(i + 1, j + 1));
            }
        }
        expr = expr.substitute(&bindings).map_err(|e| match e {
            Error::PoleAtSubstitution => Error::ZeroFaceWeight,
            e => e,
        })?;
    }
    Ok(expr)
}
