//! Involutions built by conjugation, and the orthogonal-polynomial families
//! that feed them.
//!
//! For any element `(g, f)` and any pseudo-involution `P`,
//! `(g, f)^-1 · P · (g(-x), f(-x))` is an involution: since
//! `(g(-x), f(-x)) = (1, -x) · (g, f)`, it is the conjugate of the involution
//! `P · (1, -x)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::analysis::{jfraction_eval, predicted_jfractions};
use crate::rational::{format_rational, int, Rational};
use crate::riordan::{Part, RiordanElement, TriangleMatrix};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// `(r, s, t)` of the three-parameter involution family. Any rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl FamilyParams {
    pub fn new(r: Rational, s: Rational, t: Rational) -> Self {
        Self { r, s, t }
    }

    pub fn ints(r: i64, s: i64, t: i64) -> Self {
        Self::new(int(r), int(s), int(t))
    }

    /// `s + t(r + t)`, the constant term shared by the closed forms and the
    /// tail coefficient of the continued fraction.
    pub fn tail_beta(&self) -> Rational {
        &self.s + &self.t * (&self.r + &self.t)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(r, s, t) = ({}, {}, {})",
            format_rational(&self.r),
            format_rational(&self.s),
            format_rational(&self.t)
        )
    }
}

/// Three-term recurrence `P_n = (x - alpha_n) P_(n-1) - beta_n P_(n-2)`.
///
/// `p0` and `p1` are seeds; `alpha[k]` and `beta[k]` produce `P_(k+2)`.
/// All polynomials are coefficient lists, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoRecurrence {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub p0: Vec<Rational>,
    pub p1: Vec<Rational>,
}

impl OrthoRecurrence {
    /// Number of polynomials the recurrence can produce.
    pub fn len(&self) -> usize {
        self.alpha.len() + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `P_0, ..., P_(count-1)`, capped at [`len`](Self::len).
    pub fn polynomials(&self, count: usize) -> Vec<Vec<Rational>> {
        let count = count.min(self.len());
        let mut out: Vec<Vec<Rational>> = vec![self.p0.clone(), self.p1.clone()];
        out.truncate(count);
        for k in 0..count.saturating_sub(2) {
            let prev = &out[k + 1];
            let prev2 = &out[k];
            let mut next = vec![Rational::zero(); prev.len() + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &self.alpha[k] * c;
            }
            for (i, c) in prev2.iter().enumerate() {
                next[i] -= &self.beta[k] * c;
            }
            out.push(next);
        }
        out
    }

    /// Triangle whose row `n` holds the coefficients of `P_n`.
    pub fn coefficient_matrix(&self, nrows: usize) -> TriangleMatrix {
        let rows = self
            .polynomials(nrows)
            .into_iter()
            .enumerate()
            .map(|(n, mut p)| {
                p.resize(n + 1, Rational::zero());
                p
            })
            .collect();
        TriangleMatrix::from_rows(rows)
    }
}

fn poly(coeffs: &[Rational], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_slice(coeffs, order)
}

/// `(g, f)^-1 · P · (g(-x), f(-x))`, after checking that `P` is a pseudo-involution.
pub fn involution_from(g: TruncatedSeries, f: TruncatedSeries, p: &RiordanElement) -> Result<RiordanElement> {
    let check = p.is_pseudo_involution();
    if let Some(order) = check.failing_order() {
        return Err(Error::NotPseudoInvolution { order });
    }
    let base = RiordanElement::new(g, f)?;
    involution_from_unchecked(&base, p)
}

/// Same as [`involution_from`] without testing `P`.
pub fn involution_from_unchecked(base: &RiordanElement, p: &RiordanElement) -> Result<RiordanElement> {
    Ok(base.inverse()?.product(p).product(&base.reflect()))
}

/// Generalized Chebyshev array
/// `((1 - r x - s x^2)/(1 + a x + b x^2), x/(1 + a x + b x^2))` and its recurrence.
pub fn chebyshev_array(
    r: &Rational,
    s: &Rational,
    a: &Rational,
    b: &Rational,
    order: usize,
) -> Result<(RiordanElement, OrthoRecurrence)> {
    let one = Rational::one();
    let denom = poly(&[one.clone(), a.clone(), b.clone()], order);
    let g = poly(&[one.clone(), -r, -s], order).div(&denom)?;
    let f = TruncatedSeries::x(order).div(&denom)?;
    let steps = order.saturating_sub(1);
    let mut beta = vec![b.clone(); steps];
    if let Some(first) = beta.first_mut() {
        *first = b + s;
    }
    let rec = OrthoRecurrence {
        alpha: vec![a.clone(); steps],
        beta,
        p0: vec![one.clone()],
        p1: vec![-(a + r), one],
    };
    Ok((RiordanElement::new(g, f)?, rec))
}

/// `((1 + (r - s)x)/(1 + (r + s)x), x/((1 + r x)(1 + (r + s)x)))` and its recurrence.
///
/// The recurrence has `alpha_n = 2r + s` and `beta_n = r(r + s)` from `n = 3`
/// on; `P_2` uses `beta_2 = 2rs`.
pub fn ortho_rs_array(r: &Rational, s: &Rational, order: usize) -> Result<(RiordanElement, OrthoRecurrence)> {
    let one = Rational::one();
    let rps = r + s;
    let g = poly(&[one.clone(), r - s], order).div(&poly(&[one.clone(), rps.clone()], order))?;
    let denom = poly(&[one.clone(), r + &rps, r * &rps], order);
    let f = TruncatedSeries::x(order).div(&denom)?;
    let steps = order.saturating_sub(1);
    let mut beta = vec![r * &rps; steps];
    if let Some(first) = beta.first_mut() {
        *first = int(2) * r * s;
    }
    let rec = OrthoRecurrence {
        alpha: vec![int(2) * r + s; steps],
        beta,
        p0: vec![one.clone()],
        p1: vec![-(int(2) * s), one],
    };
    Ok((RiordanElement::new(g, f)?, rec))
}

/// `(N/D, x/D)^-1 · (1, -x(1 + 2t x)/N)` with
/// `D = 1 + (r + 2t)x + (rt + s + t^2)x^2` and `N = 1 - (r - 2t)x - (rt - s - t^2)x^2`.
pub fn family_rst(p: &FamilyParams, order: usize) -> Result<RiordanElement> {
    let FamilyParams { r, s, t } = p;
    let one = Rational::one();
    let two_t = int(2) * t;
    let d = poly(&[one.clone(), r + &two_t, r * t + s + t * t], order);
    let n = poly(&[one.clone(), -(r - &two_t), -(r * t - s - t * t)], order);
    let first = RiordanElement::new(n.div(&d)?, TruncatedSeries::x(order).div(&d)?)?;
    let second_f = poly(&[Rational::zero(), -one, -two_t], order).div(&n)?;
    let second = RiordanElement::new(TruncatedSeries::one(order), second_f)?;
    Ok(first.inverse()?.product(&second))
}

/// The same family via conjugation: `(1/(1 + r x + s x^2), x(1 - t x)/(1 + r x + s x^2))` with `P = (1, x)`.
pub fn family_rst_via_construction(p: &FamilyParams, order: usize) -> Result<RiordanElement> {
    let FamilyParams { r, s, t } = p;
    let one = Rational::one();
    let d = poly(&[one.clone(), r.clone(), s.clone()], order);
    let g = TruncatedSeries::one(order).div(&d)?;
    let f = poly(&[Rational::zero(), one, -t], order).div(&d)?;
    let base = RiordanElement::new(g, f)?;
    involution_from_unchecked(&base, &RiordanElement::identity(order))
}

/// Expansions of the radical closed forms for the family's `g` and `f`, taken verbatim:
///
/// ```text
/// g = (s + t(r+t)) / (s + t(t+1) - (r^2 t + 2rs - s + t^2)x + t(r-1) sqrt(R))
/// f = (t sqrt(R) + (t^2 - s)x - t) / (s + t^2 - r(rt + 2s)x + rt sqrt(R))
/// R = 1 - 2(r + 2t)x + (r^2 - 4s)x^2
/// ```
pub fn tilde_closed_forms(p: &FamilyParams, order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let FamilyParams { r, s, t } = p;
    let k = p.tail_beta();
    if k.is_zero() {
        return Err(Error::Degenerate(format!("s + t(r + t) = 0 at {p}")));
    }
    let root = poly(&[Rational::one(), int(-2) * (r + int(2) * t), r * r - int(4) * s], order).sqrt()?;
    let g_den = &poly(&[s + t * (t + int(1)), -(r * r * t + int(2) * r * s - s + t * t)], order)
        + &root.scale(&(t * (r - int(1))));
    let g = TruncatedSeries::constant(k, order).div(&g_den)?;
    let f_num = &root.scale(t) + &poly(&[-t, t * t - s], order);
    let f_den = &poly(&[s + t * t, -(r * (r * t + int(2) * s))], order) + &root.scale(&(r * t));
    let f = f_num.div(&f_den)?;
    Ok((g, f))
}

/// `((1 + (t-r)x)/(1 + (t+r)x), x/((1 + t x)(1 + (t+r)x)))^-1 · (1, -x(1 + 2t x)/((1 + t x)(1 + (t-r)x)))`,
/// the `s = 0` member of [`family_rst`].
pub fn corollary_rt(r: &Rational, t: &Rational, order: usize) -> Result<RiordanElement> {
    let one = Rational::one();
    let lin = |c: Rational| poly(&[one.clone(), c], order);
    let g = lin(t - r).div(&lin(t + r))?;
    let f = TruncatedSeries::x(order).div(&lin(t.clone()).mul(&lin(t + r)))?;
    let first = RiordanElement::new(g, f)?;
    let second_f = poly(&[Rational::zero(), -one.clone(), int(-2) * t], order).div(&lin(t.clone()).mul(&lin(t - r)))?;
    let second = RiordanElement::new(TruncatedSeries::one(order), second_f)?;
    Ok(first.inverse()?.product(&second))
}

/// Row-sums generating function `g / (1 - f)` of an element.
pub fn row_sums_series(e: &RiordanElement) -> Result<TruncatedSeries> {
    Ok(e.g().div(&(&TruncatedSeries::one(e.order()) - e.f()))?)
}

/// The four ways of obtaining the family member compared by [`cross_validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    /// (i) the product of the two factors.
    Product,
    /// (ii) conjugation of `(1/(1+rx+sx^2), x(1-tx)/(1+rx+sx^2))`.
    Construction,
    /// (iii) the radical closed forms.
    ClosedForm,
    /// (iv) the predicted continued fraction for `g` (no `f`).
    ContinuedFraction,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Product, Route::Construction, Route::ClosedForm, Route::ContinuedFraction];

    pub fn label(self) -> &'static str {
        match self {
            Route::Product => "(i) product",
            Route::Construction => "(ii) construction",
            Route::ClosedForm => "(iii) closed form",
            Route::ContinuedFraction => "(iv) continued fraction",
        }
    }
}

/// First coefficient where two routes disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteMismatch {
    pub part: Part,
    pub index: usize,
    pub left: Rational,
    pub right: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Comparison {
    Agree,
    Mismatch(RouteMismatch),
    /// One side could not be computed.
    Unavailable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairReport {
    pub left: Route,
    pub right: Route,
    pub outcome: Comparison,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub params: FamilyParams,
    pub order: usize,
    pub pairs: Vec<PairReport>,
}

impl CrossValidation {
    /// Outcome for an unordered pair of routes.
    pub fn outcome(&self, a: Route, b: Route) -> &Comparison {
        let (l, r) = if a <= b { (a, b) } else { (b, a) };
        &self
            .pairs
            .iter()
            .find(|p| p.left == l && p.right == r)
            .expect("every pair of distinct routes is reported")
            .outcome
    }

    pub fn agree(&self, a: Route, b: Route) -> bool {
        matches!(self.outcome(a, b), Comparison::Agree)
    }
}

impl fmt::Display for CrossValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cross-validation at {} to order {}", self.params, self.order)?;
        for p in &self.pairs {
            write!(f, "{} vs {}: ", p.left.label(), p.right.label())?;
            match &p.outcome {
                Comparison::Agree => writeln!(f, "agree")?,
                Comparison::Mismatch(m) => writeln!(
                    f,
                    "mismatch in {} at x^{}: {} vs {}",
                    m.part,
                    m.index,
                    format_rational(&m.left),
                    format_rational(&m.right)
                )?,
                Comparison::Unavailable(why) => writeln!(f, "unavailable ({why})")?,
            }
        }
        Ok(())
    }
}

type RouteValue = std::result::Result<(TruncatedSeries, Option<TruncatedSeries>), String>;

fn compare(a: &RouteValue, b: &RouteValue) -> Comparison {
    let ((ag, af), (bg, bf)) = match (a, b) {
        (Err(e), _) | (_, Err(e)) => return Comparison::Unavailable(e.clone()),
        (Ok(a), Ok(b)) => (a, b),
    };
    if let Some(i) = ag.first_difference(bg) {
        return Comparison::Mismatch(RouteMismatch { part: Part::G, index: i, left: ag.coeff(i), right: bg.coeff(i) });
    }
    if let (Some(af), Some(bf)) = (af, bf) {
        if let Some(i) = af.first_difference(bf) {
            return Comparison::Mismatch(RouteMismatch {
                part: Part::F,
                index: i,
                left: af.coeff(i),
                right: bf.coeff(i),
            });
        }
    }
    Comparison::Agree
}

/// Computes the family member four ways and compares every pair.
///
/// Mismatches are report content, not errors.
pub fn cross_validate(p: &FamilyParams, order: usize) -> CrossValidation {
    let element = |e: Result<RiordanElement>| -> RouteValue {
        e.map(|e| {
            let (g, f) = e.into_parts();
            (g, Some(f))
        })
        .map_err(|e| e.to_string())
    };
    let product = element(family_rst(p, order));
    let construction = element(family_rst_via_construction(p, order));
    let closed = tilde_closed_forms(p, order).map(|(g, f)| (g, Some(f))).map_err(|e| e.to_string());
    let depth = order.div_ceil(2);
    let (first, _) = predicted_jfractions(p, depth);
    let fraction: RouteValue = Ok((jfraction_eval(&first, order), None));
    let values = [product, construction, closed, fraction];

    let mut pairs = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            pairs.push(PairReport { left: Route::ALL[i], right: Route::ALL[j], outcome: compare(&values[i], &values[j]) });
        }
    }
    CrossValidation { params: p.clone(), order, pairs }
}

/// [`cross_validate`] over a grid, one thread per point; output keeps the grid order.
pub fn cross_validate_grid(grid: &[FamilyParams], order: usize) -> Vec<CrossValidation> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = grid.iter().map(|p| scope.spawn(move || cross_validate(p, order))).collect();
        handles.into_iter().map(|h| h.join().expect("cross-validation thread panicked")).collect()
    })
}
