//! Builders shared by the integration tests and the acceptance runner.

#![allow(dead_code)]

use std::path::PathBuf;

use riordan::construct::{corollary_rt, involution_from};
use riordan::rational::{int, ratio, Rational};
use riordan::expr::eval_str;
use riordan::{RiordanElement, TriangleMatrix, TruncatedSeries};

pub const ORDER: usize = 24;

pub fn series(text: &str, order: usize) -> TruncatedSeries {
    eval_str(text, order).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn element(g: &str, f: &str, order: usize) -> RiordanElement {
    RiordanElement::from_exprs(g, f, order).unwrap_or_else(|e| panic!("({g}, {f}): {e}"))
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.json"))
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `(1/(1+x^2), x/(1+x^2)) · Pascal · (1/(1+x^2), -x/(1+x^2))^-1`.
pub fn rna_involution(order: usize) -> RiordanElement {
    let (g, f) = element("1/(1+x^2)", "x/(1+x^2)", order).inverse().unwrap().into_parts();
    involution_from(g, f, &RiordanElement::bin_element(&int(1), order)).unwrap()
}

pub fn motzkin_involution(order: usize) -> RiordanElement {
    involution_from(series("M(x)", order), series("x*M(x)", order), &RiordanElement::identity(order)).unwrap()
}

pub fn schroder_involution(order: usize) -> RiordanElement {
    corollary_rt(&int(1), &int(1), order).unwrap()
}

/// The pseudo-involution `(g, -f)` of the `r = 1, t = 2` corollary member.
pub fn r1t2_pseudo_involution(order: usize) -> RiordanElement {
    corollary_rt(&int(1), &int(2), order).unwrap().pseudo_companion()
}

/// The four golden matrices: fixture name and 7-row realization.
pub fn golden_matrices() -> Vec<(&'static str, TriangleMatrix)> {
    let m = |e: RiordanElement| e.matrix(7).unwrap();
    vec![
        ("rna", m(rna_involution(ORDER))),
        ("motzkin", m(motzkin_involution(ORDER))),
        ("schroder", m(schroder_involution(ORDER))),
        ("r1t2_pseudo", m(r1t2_pseudo_involution(ORDER))),
    ]
}

/// Bases `(g, f)` for the involution grid: polynomial, rational and
/// algebraic, with integer and fractional coefficients.
pub const BASE_GRID: [(&str, &str); 22] = [
    ("1", "x"),
    ("c(x)", "x*c(x)"),
    ("M(x)", "x*M(x)"),
    ("S(x)", "x*S(x)"),
    ("1/(1-x)", "x/(1-x)"),
    ("1/(1+x^2)", "x/(1+x^2)"),
    ("1/(1+x^2)", "x*(1-x)/(1+x^2)"),
    ("1+x", "x+x^2"),
    ("2-x", "3*x"),
    ("1/2+x^3", "-x/2+x^2"),
    ("(1-x)^3", "x*(1+2*x)^2"),
    ("1/(1-3/2*x+x^2)", "x/(1+x/3)"),
    ("sqrt(1+4*x)", "x*sqrt(1-x)"),
    ("c(2*x)^2", "x*c(-x/3)"),
    ("1/(1+x+x^2)", "x*(1-x)/(1+x+x^2)"),
    ("-3+x/5", "-2*x+7/4*x^2"),
    ("M(x/2)", "x*S(x/4)"),
    ("1/(1-x)^2", "x*(1-2/3*x)"),
    ("5/7", "x/(1-x)^2"),
    ("c(x)^3", "x*c(x)^2"),
    ("1+x^2/3", "-x*(1+x^5)"),
    ("1/(1-2*x-x^2)", "x-x^3/9"),
];

/// The pseudo-involutions for the grid: `(1, x)`, Pascal, `Bin(-1)` and `Bin(1/2)`.
pub fn pseudo_involutions(order: usize) -> Vec<(&'static str, RiordanElement)> {
    vec![
        ("(1, x)", RiordanElement::identity(order)),
        ("Pascal", RiordanElement::bin_element(&int(1), order)),
        ("Bin(-1)", RiordanElement::bin_element(&int(-1), order)),
        ("Bin(1/2)", RiordanElement::bin_element(&ratio(1, 2), order)),
    ]
}

/// Coefficient rows of `P_0..P_(n-1)` for `P_k = (x - a(k)) P_(k-1) - b(k) P_(k-2)`,
/// with `P_(-1) = 0`, `P_0 = 1`; `b(1)` is never used.
pub fn recurrence_rows(n: usize, a: impl Fn(usize) -> Rational, b: impl Fn(usize) -> Rational) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for k in 0..n {
        let mut row = vec![int(0); k + 1];
        if k == 0 {
            row[0] = int(1);
        } else {
            let prev = &rows[k - 1];
            for (i, c) in prev.iter().enumerate() {
                row[i + 1] += c;
                row[i] -= &a(k) * c;
            }
            if k >= 2 {
                for (i, c) in rows[k - 2].iter().enumerate() {
                    row[i] -= &b(k) * c;
                }
            }
        }
        rows.push(row);
    }
    rows
}

/// Deterministic pseudo-random rationals for the parameter sweeps.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u32(&mut self) -> u32 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 33) as u32
    }

    /// Numerator in `-9..=9`, denominator in `1..=4`.
    pub fn rational(&mut self) -> Rational {
        let n = (self.next_u32() % 19) as i64 - 9;
        let d = (self.next_u32() % 4) as i64 + 1;
        ratio(n, d)
    }
}
pub mod kernel;
