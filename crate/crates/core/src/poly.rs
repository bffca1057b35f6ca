//! Dense integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

fn number(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `L^2 - L + 1`.
    pub fn loop_factor() -> Self {
        Poly::from_i64(&[1, -1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(number).collect())
    }

    /// Human-readable form in the variable `var`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let term = match k {
                0 => a.to_string(),
                _ => {
                    let base = if k == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{k}")
                    };
                    if a.is_one() {
                        base
                    } else {
                        format!("{a}{base}")
                    }
                }
            };
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("L"))
    }
}

/// Integer polynomial in two variables, keyed by exponent pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn monomial(c: BigInt, a: usize, b: usize) -> Self {
        let mut p = Poly2::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: BigInt) {
        let slot = self.terms.entry((a, b)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Multiply by `x^a y^b`.
    pub fn shift(&self, a: usize, b: usize) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn coeff(&self, a: usize, b: usize) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.terms
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * x.pow(a as u32) * y.pow(b as u32))
            .sum()
    }

    /// Dense grid: `grid[a][b]` is the coefficient of `x^a y^b`.
    pub fn grid(&self) -> Vec<Vec<BigInt>> {
        let na = self.terms.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let nb = self.terms.keys().map(|k| k.1 + 1).max().unwrap_or(0);
        (0..na)
            .map(|a| (0..nb).map(|b| self.coeff(a, b)).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.grid()
                .iter()
                .map(|row| Value::Array(row.iter().map(number).collect()))
                .collect(),
        )
    }

    /// Human-readable form in variables `x`, `y`, highest terms first.
    pub fn display(&self, x: &str, y: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (&(a, b), c) in self.terms.iter().rev() {
            let mono = [(x, a), (y, b)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect::<String>();
            let body = match (mono.is_empty(), c.abs().is_one()) {
                (true, _) => c.abs().to_string(),
                (false, true) => mono,
                (false, false) => format!("{}{mono}", c.abs()),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        let mut out = String::new();
        for (k, (sign, body)) in parts.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let l = Poly::loop_factor();
        assert_eq!(l.pow(2), Poly::from_i64(&[1, -2, 3, -2, 1]));
        assert_eq!(l.to_string(), "L^2 - L + 1");
        assert_eq!(l.eval(&BigInt::from(5)), BigInt::from(21));
        assert_eq!(l.sub(&l), Poly::zero());
        assert_eq!(
            Poly::from_i64(&[0, 1]).shift(2),
            Poly::monomial(1.into(), 3)
        );
        assert!(l.is_monic());
    }

    #[test]
    fn bivariate() {
        // x^2 + x + y
        let mut t = Poly2::zero();
        t.add_term(2, 0, 1.into());
        t.add_term(1, 0, 1.into());
        t.add_term(0, 1, 1.into());
        assert_eq!(t.eval(&1.into(), &1.into()), BigInt::from(3));
        assert_eq!(t.display("x", "y"), "x^2 + x + y");
        assert_eq!(t.grid().len(), 3);
    }
}
