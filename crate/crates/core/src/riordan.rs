//! Riordan group elements and their matrices.
//!
//! An element is a pair `(g, f)` with `g(0) != 0`, `f(0) = 0`, `f'(0) != 0`.
//! The product is `(g, f) · (u, v) = (g · u(f), v(f))` and the matrix of
//! `(g, f)` has entries `a[n][k] = [x^n] g f^k`.
//!
//! Every check here is decided modulo `x^(N+1)` at the element's truncation
//! order `N`.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{format_rational, Rational};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct RiordanElement {
    g: TruncatedSeries,
    f: TruncatedSeries,
}

/// Which half of a pair a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    G,
    F,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::G => "g",
            Part::F => "f",
        })
    }
}

/// First coefficient at which two elements differ.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub part: Part,
    pub index: usize,
    pub found: Rational,
    pub expected: Rational,
}

/// Outcome of an involution test, with the first offending coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionCheck {
    /// Truncation order the identity was tested to.
    pub order: usize,
    pub failure: Option<Mismatch>,
}

impl InvolutionCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    /// Size of the smallest leading block of the squared matrix that is not
    /// the identity. A mismatch at `[x^i]` first shows up in row `i`.
    pub fn failing_order(&self) -> Option<usize> {
        self.failure.as_ref().map(|m| m.index + 1)
    }
}

impl fmt::Display for InvolutionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failing_order() {
            None => f.write_str("true"),
            Some(order) => write!(f, "false (fails at order {order})"),
        }
    }
}

impl RiordanElement {
    /// Validates the pair; both halves are truncated to their common order.
    pub fn new(g: TruncatedSeries, f: TruncatedSeries) -> Result<Self> {
        let order = g.order().min(f.order());
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidG);
        }
        if !f.coeff(0).is_zero() {
            return Err(Error::InvalidF("f(0) is nonzero"));
        }
        if order >= 1 && f.coeff(1).is_zero() {
            return Err(Error::InvalidF("f'(0) is zero"));
        }
        Ok(Self { g: g.truncate(order), f: f.truncate(order) })
    }

    /// Builds an element from two expressions in the input language.
    pub fn from_exprs(g: &str, f: &str, order: usize) -> Result<Self> {
        let g = crate::expr::eval_str(g, order)?;
        let f = crate::expr::eval_str(f, order)?;
        Self::new(g, f)
    }

    /// `(1, x)`.
    pub fn identity(order: usize) -> Self {
        Self { g: TruncatedSeries::one(order), f: TruncatedSeries::x(order) }
    }

    /// `(1/(1 - alpha x), x/(1 - alpha x))`; `alpha = 1` is Pascal's triangle.
    pub fn bin_element(alpha: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = Rational::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p *= alpha;
        }
        let g = TruncatedSeries::from_coeffs(coeffs);
        let f = g.mul_x_power(1).truncate(order);
        Self { g, f }
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn into_parts(self) -> (TruncatedSeries, TruncatedSeries) {
        (self.g, self.f)
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { g: self.g.truncate(order), f: self.f.truncate(order) }
    }

    /// `(g · u(f), v(f))`.
    pub fn product(&self, other: &Self) -> Self {
        let u_of_f = other.g.compose(&self.f).expect("f(0) = 0 by construction");
        let v_of_f = other.f.compose(&self.f).expect("f(0) = 0 by construction");
        Self { g: self.g.mul(&u_of_f), f: v_of_f }
    }

    pub fn square(&self) -> Self {
        self.product(self)
    }

    /// `(1 / g(fbar), fbar)` where `fbar` is the compositional inverse of `f`.
    pub fn inverse(&self) -> Result<Self> {
        let fbar = self.f.comp_inverse()?;
        let g = self.g.compose(&fbar)?.recip()?;
        Ok(Self { g, f: fbar })
    }

    /// `(g(-x), f(-x))`, which equals `(1, -x) · (g, f)`.
    pub fn reflect(&self) -> Self {
        Self { g: self.g.subst_neg(), f: self.f.subst_neg() }
    }

    /// `(g, -f) = (g, f) · (1, -x)`.
    pub fn pseudo_companion(&self) -> Self {
        Self { g: self.g.clone(), f: self.f.neg() }
    }

    /// First coefficient where `self` differs from `other`, up to the shared order.
    pub fn first_difference(&self, other: &Self) -> Option<Mismatch> {
        let g = self.g.first_difference(&other.g);
        let f = self.f.first_difference(&other.f);
        let (part, index) = match (g, f) {
            (None, None) => return None,
            (Some(i), None) => (Part::G, i),
            (None, Some(j)) => (Part::F, j),
            (Some(i), Some(j)) if i <= j => (Part::G, i),
            (Some(_), Some(j)) => (Part::F, j),
        };
        let (found, expected) = match part {
            Part::G => (self.g.coeff(index), other.g.coeff(index)),
            Part::F => (self.f.coeff(index), other.f.coeff(index)),
        };
        Some(Mismatch { part, index, found, expected })
    }

    /// Tests `g · g(f) = 1` and `f(f) = x`.
    pub fn is_involution(&self) -> InvolutionCheck {
        let failure = self.square().first_difference(&Self::identity(self.order()));
        InvolutionCheck { order: self.order(), failure }
    }

    /// Tests whether `(g, -f)` is an involution.
    pub fn is_pseudo_involution(&self) -> InvolutionCheck {
        self.pseudo_companion().is_involution()
    }

    /// Rows `0..nrows` of the matrix. Column `k + 1` is column `k` times `f`.
    pub fn matrix(&self, nrows: usize) -> Result<TriangleMatrix> {
        if nrows > self.order() + 1 {
            return Err(Error::OrderTooSmall { rows: nrows, needed: nrows.saturating_sub(1), order: self.order() });
        }
        let mut rows: Vec<Vec<Rational>> = (0..nrows).map(|n| Vec::with_capacity(n + 1)).collect();
        let mut column = self.g.clone();
        for k in 0..nrows {
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row.push(column.coeff(n));
            }
            if k + 1 < nrows {
                column = column.mul(&self.f);
            }
        }
        Ok(TriangleMatrix { rows })
    }
}

impl PartialEq for RiordanElement {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

/// Lower-triangular rational matrix; row `n` holds entries `(n, 0..=n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleMatrix {
    rows: Vec<Vec<Rational>>,
}

impl TriangleMatrix {
    /// Panics unless row `n` has exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} of a triangle must have {} entries", n + 1);
        }
        Self { rows }
    }

    /// Accepts ragged rows or full square rows; entries above the diagonal must be zero.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                assert!(row.iter().skip(n + 1).all(|&v| v == 0), "row {n} has entries above the diagonal");
                row.iter().take(n + 1).map(|&v| crate::rational::int(v)).collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..=i).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Exact product, over the smaller of the two sizes.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.nrows().min(other.nrows());
        let rows = (0..n)
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let mut acc = Rational::zero();
                        for m in j..=i {
                            acc += &self.rows[i][m] * &other.rows[m][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.iter().fold(Rational::zero(), |acc, v| acc + v)).collect()
    }

    /// Multiplies column `k` by `(-1)^k`: the matrix of `(g, -f)` from that of `(g, f)`.
    pub fn alternate_columns(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(k, v)| if k % 2 == 1 { -v } else { v.clone() }).collect())
            .collect();
        Self { rows }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nrows())
    }

    /// First `(n, k)` where the matrices differ, over the smaller size.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let n = self.nrows().min(other.nrows());
        (0..n).flat_map(|i| (0..=i).map(move |k| (i, k))).find(|&(i, k)| self.rows[i][k] != other.rows[i][k])
    }

    /// Full square layout with right-aligned columns, zeros above the diagonal.
    pub fn to_table(&self) -> String {
        let n = self.nrows();
        let cells: Vec<Vec<String>> =
            (0..n).map(|i| (0..n).map(|k| format_rational(&self.get(i, k))).collect()).collect();
        let widths: Vec<usize> = (0..n).map(|k| cells.iter().map(|r| r[k].len()).max().unwrap_or(1)).collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
