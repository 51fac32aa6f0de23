//! Jacobi continued fractions and B-sequences.
//!
//! A J-fraction writes a series with `g(0) = 1` as
//!
//! ```text
//! g = 1 / (1 - a0 x - b1 x^2 / (1 - a1 x - b2 x^2 / (1 - ...)))
//! ```
//!
//! The B-sequence `(b0, b1, ...)` of a series `f = x + ...` is defined by
//! `f = x + x f B(x f)` with `B(y) = sum b_k y^k`.

use std::fmt;

use num_traits::{One, Zero};

use crate::construct::FamilyParams;
use crate::rational::{format_rational, int, Rational};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Coefficients `alphas = (a0, a1, ...)` and `betas = (b1, b2, ...)`.
///
/// With `m` alphas there are `m` or `m - 1` betas. `terminated` means the
/// next beta vanished, so the fraction is finite and exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFraction {
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
    pub terminated: bool,
}

impl JFraction {
    /// Builds a fraction, cutting it at the first zero beta.
    pub fn new(alphas: Vec<Rational>, mut betas: Vec<Rational>) -> Self {
        let mut alphas = alphas;
        let mut terminated = false;
        if let Some(k) = betas.iter().position(|b| b.is_zero()) {
            betas.truncate(k);
            alphas.truncate(k + 1);
            terminated = true;
        }
        Self { alphas, betas, terminated }
    }

    pub fn depth(&self) -> usize {
        self.alphas.len()
    }

    /// The first `depth` layers.
    pub fn prefix(&self, depth: usize) -> Self {
        if self.alphas.len() <= depth {
            return self.clone();
        }
        Self {
            alphas: self.alphas[..depth].to_vec(),
            betas: self.betas[..self.betas.len().min(depth)].to_vec(),
            terminated: false,
        }
    }

    /// Highest power of `x` to which [`jfraction_eval`] is exact.
    pub fn exact_order(&self) -> Option<usize> {
        if self.terminated {
            None
        } else if self.betas.len() >= self.alphas.len() {
            Some(2 * self.alphas.len())
        } else {
            Some((2 * self.alphas.len()).saturating_sub(1))
        }
    }
}

fn join(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for JFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha: {}", join(&self.alphas))?;
        writeln!(f, "beta: {}", join(&self.betas))?;
        write!(f, "terminated: {}", self.terminated)
    }
}

/// Default number of layers an order-`order` series can determine.
pub fn default_depth(order: usize) -> usize {
    (order.saturating_sub(1) / 2).max(1)
}

/// Peels `g` into J-fraction layers: with `h = 1 - 1/g_k`,
/// `alpha_k = [x]h`, `beta_(k+1) = [x^2]h` and `g_(k+1) = (h - alpha_k x)/(beta_(k+1) x^2)`.
///
/// Stops after `depth` layers, when the order runs out, or at a zero beta.
pub fn jfraction_expand(g: &TruncatedSeries, depth: usize) -> Result<JFraction> {
    if !g.coeff(0).is_one() {
        return Err(Error::NonUnitConstant(format_rational(&g.coeff(0))));
    }
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut terminated = false;
    let mut current = g.clone();
    for _ in 0..depth {
        if current.order() < 1 {
            break;
        }
        let order = current.order();
        let h = &TruncatedSeries::one(order) - &current.recip()?;
        let alpha = h.coeff(1);
        alphas.push(alpha.clone());
        if order < 2 {
            break;
        }
        let beta = h.coeff(2);
        if beta.is_zero() {
            terminated = true;
            break;
        }
        let rest = &h - &TruncatedSeries::monomial(alpha, 1, order);
        current = rest.div_x_power(2)?.scale(&beta.recip());
        betas.push(beta);
    }
    Ok(JFraction { alphas, betas, terminated })
}

/// Evaluates the finite fraction bottom-up to `order`. A trailing beta with
/// no alpha below it is closed off with `1`.
pub fn jfraction_eval(jf: &JFraction, order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let mut value = one.clone();
    for i in (0..jf.alphas.len()).rev() {
        let mut denom = &one - &TruncatedSeries::monomial(jf.alphas[i].clone(), 1, order);
        if let Some(beta) = jf.betas.get(i) {
            denom = &denom - &value.mul_x_power(2).truncate(order).scale(beta);
        }
        value = denom.recip().expect("denominator has constant term 1");
    }
    value
}

/// Continued fractions predicted for the family's `g` and for the row sums
/// of its matrix, `depth` layers each.
///
/// `g`: `alpha = (2r, r+2t, r+2t, ...)`, `beta = (2rt, s+t(r+t), ...)`.
/// Row sums: `alpha = (2r-1, r+2t, ...)`, `beta = (2t(r-1), s+t(r+t), ...)`.
pub fn predicted_jfractions(p: &FamilyParams, depth: usize) -> (JFraction, JFraction) {
    let FamilyParams { r, s: _, t } = p;
    let tail_alpha = r + int(2) * t;
    let tail_beta = p.tail_beta();
    let build = |a0: Rational, b1: Rational| {
        let mut alphas = vec![a0];
        let mut betas = vec![b1];
        for _ in 1..depth {
            alphas.push(tail_alpha.clone());
            betas.push(tail_beta.clone());
        }
        alphas.truncate(depth);
        betas.truncate(depth);
        JFraction::new(alphas, betas)
    };
    let first = build(int(2) * r, int(2) * r * t);
    let second = build(int(2) * r - int(1), int(2) * t * (r - int(1)));
    (first, second)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSequence {
    pub terms: Vec<Rational>,
    /// The functional equation holds through the order the terms determine.
    pub residual_ok: bool,
}

impl fmt::Display for BSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "B: {}", join(&self.terms))?;
        write!(f, "residual_ok: {}", self.residual_ok)
    }
}

/// Solves `f = x + x f B(x f)` for up to `depth` terms.
///
/// `b_k` is the coefficient of `x^(2k+2)` in the running residual, since
/// `x f (x f)^k` starts with `x^(2k+2)`. The equation is then rechecked
/// through `x^(2m+1)` for the `m` terms found (capped at the order).
pub fn b_sequence(f: &TruncatedSeries, depth: usize) -> Result<BSequence> {
    if !f.coeff(0).is_zero() || !f.coeff(1).is_one() {
        let shown = if f.coeff(0).is_zero() { f.coeff(1) } else { f.coeff(0) };
        return Err(Error::BadNormalization(format_rational(&shown)));
    }
    let order = f.order();
    let x = TruncatedSeries::x(order);
    let xf = x.mul(f);
    let mut residual = f - &x;
    let mut multiplier = xf.clone();
    let mut terms = Vec::new();
    for k in 0..depth {
        let index = 2 * k + 2;
        if index > order {
            break;
        }
        let b = residual.coeff(index);
        residual = &residual - &multiplier.scale(&b);
        terms.push(b);
        multiplier = multiplier.mul(&xf);
    }

    let b_series = TruncatedSeries::from_slice(&terms, order);
    let rhs = &x + &xf.mul(&b_series.compose(&xf)?);
    let checked = order.min(2 * terms.len() + 1);
    let residual_ok = (f - &rhs).coeffs().iter().take(checked + 1).all(|c| c.is_zero());
    Ok(BSequence { terms, residual_ok })
}
