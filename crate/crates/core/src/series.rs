//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `x^0, ..., x^N`. Binary operations truncate to the smaller order of
//! their operands, so the order of a result is always trustworthy.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use crate::rational::Rational;
use crate::rational::{format_rational, int, sqrt_exact};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by a non-unit: divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    DivisionByNonUnit { divisor: usize, dividend: usize },
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("cannot compose: inner series has nonzero constant term {0}")]
    CompositionNonComposable(String),
    #[error("series has no compositional inverse: {0}")]
    NotInvertible(&'static str),
    #[error("constant term {0} has no rational square root")]
    NoRationalSqrt(String),
    #[error("coefficient of x^{index} is nonzero, cannot divide by x^{power}")]
    NonzeroLowOrder { index: usize, power: usize },
    #[error("cannot divide a series of order {order} by x^{power}")]
    ShiftBeyondOrder { power: usize, order: usize },
}

/// Coefficients `[x^0], ..., [x^N]` of a power series known modulo `x^(N+1)`.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Series of the given order; missing coefficients are zero, extra ones dropped.
    pub fn from_slice(coeffs: &[Rational], order: usize) -> Self {
        let mut v: Vec<Rational> = coeffs.iter().take(order + 1).cloned().collect();
        v.resize(order + 1, Rational::zero());
        Self { coeffs: v }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        let v: Vec<Rational> = coeffs.iter().map(|&c| int(c)).collect();
        Self::from_slice(&v, order)
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The monomial `c x^k`, truncated to `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `[x^i]`, or zero when `i` is beyond the order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// First index `<= min(order)` where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    /// Coefficientwise sum to order `min(a.order, b.order)`.
    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated to `min(a.order, b.order)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Reciprocal of a series with nonzero constant term.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        Self::one(self.order()).div(self)
    }

    /// `a / b`. A common factor `x^k` with `k = valuation(b)` is cancelled first,
    /// which lowers the result order by `k`.
    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let k = divisor.valuation().ok_or(SeriesError::DivisionByZero)?;
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(SeriesError::DivisionByNonUnit { divisor: k, dividend: v });
            }
        }
        if k > self.order() {
            return Err(SeriesError::ShiftBeyondOrder { power: k, order: self.order() });
        }
        let order = self.order().min(divisor.order()) - k;
        let num = &self.coeffs[k..=k + order];
        let den = &divisor.coeffs[k..=k + order];
        let lead_inv = den[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num[n].clone();
            for i in 1..=n {
                if !den[i].is_zero() {
                    acc -= &den[i] * &q[n - i];
                }
            }
            q.push(acc * &lead_inv);
        }
        Ok(Self { coeffs: q })
    }

    /// `outer(inner(x))` truncated to `min(outer.order, inner.order)`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionNonComposable(format_rational(&inner.coeffs[0])));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = self.coeffs[0].clone();
        // power = inner^k, supported on [k, order]
        let mut power = inner.clone();
        for k in 1..=order {
            let c = &self.coeffs[k];
            if !c.is_zero() {
                for n in k..=order {
                    if !power.coeffs[n].is_zero() {
                        out[n] += c * &power.coeffs[n];
                    }
                }
            }
            if k < order {
                let mut next = vec![Rational::zero(); order + 1];
                for i in k..order {
                    let p = &power.coeffs[i];
                    if p.is_zero() {
                        continue;
                    }
                    for j in 1..=order - i {
                        if !inner.coeffs[j].is_zero() {
                            next[i + j] += p * &inner.coeffs[j];
                        }
                    }
                }
                power = Self { coeffs: next };
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Compositional inverse `u` with `f(u(x)) = x` and `u(0) = 0`, by
    /// Lagrange inversion: `[x^n] u = (1/n) [x^(n-1)] (x/f)^n`.
    pub fn comp_inverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible("constant term is nonzero"));
        }
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible("linear coefficient is zero"));
        }
        let phi = self.div_x_power(1)?.recip()?;
        let mut out = vec![Rational::zero(); order + 1];
        let mut power = phi.clone();
        for n in 1..=order {
            out[n] = &power.coeffs[n - 1] / int(n as i64);
            if n < order {
                power = power.mul(&phi);
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Square root with the nonnegative constant term.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        let s0 = match sqrt_exact(a0) {
            Some(s) if !s.is_zero() => s,
            _ => return Err(SeriesError::NoRationalSqrt(format_rational(a0))),
        };
        let order = self.order();
        let two_s0_inv = (&s0 * int(2)).recip();
        let mut s = Vec::with_capacity(order + 1);
        s.push(s0);
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s.push(acc * &two_s0_inv);
        }
        Ok(Self { coeffs: s })
    }

    /// Divides by `x^k`; the order drops by `k`.
    pub fn div_x_power(&self, k: usize) -> Result<Self, SeriesError> {
        if let Some(index) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroLowOrder { index, power: k });
        }
        if k > self.order() {
            return Err(SeriesError::ShiftBeyondOrder { power: k, order: self.order() });
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiplies by `x^k`; the order grows by `k`.
    pub fn mul_x_power(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `a(-x)`.
    pub fn subst_neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }
}

/// Coefficientwise equality up to the smaller order.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = format_rational(&mag);
            match i {
                0 => f.write_str(&body)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{body}*")?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}
