//! Univariate and bivariate integer polynomials and exact interpolation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in one variable; `coeffs[i]` multiplies `t^i`. Never stores a
/// zero leading coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(deg: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn render(&self, var: &str) -> String {
        let terms = self.coeffs.iter().enumerate().rev().map(|(i, c)| (vec![(var, i as u32)], c.clone()));
        render_terms(terms)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Polynomial in two variables. Key `(i, j)` is the exponent of the first and
/// second variable (`t, x` for coboundary polynomials, `x, y` for Tutte
/// polynomials and weight enumerators).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut p = BiPoly::default();
        p.add_term(i, j, c);
        p
    }

    /// First variable.
    pub fn first() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    /// Second variable.
    pub fn second() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    /// Builds from `(i, j, c)` triples, summing repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, BigInt)>) -> Self {
        let mut p = BiPoly::default();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_i64_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    /// `sum_i parts[i](first) * second^i`
    pub fn from_second_coefficients(parts: &[UniPoly]) -> Self {
        let mut p = BiPoly::default();
        for (j, part) in parts.iter().enumerate() {
            for (i, c) in part.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// Lifts a univariate polynomial into the first variable.
    pub fn from_first(p: &UniPoly) -> Self {
        Self::from_second_coefficients(std::slice::from_ref(p))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_first(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_second(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Coefficient of `second^j`, as a polynomial in the first variable.
    pub fn second_coefficient(&self, j: u32) -> UniPoly {
        let n = self.degree_first().map_or(0, |d| d as usize + 1);
        let mut c = vec![BigInt::zero(); n];
        for (&(a, b), v) in &self.terms {
            if b == j {
                c[a as usize] = v.clone();
            }
        }
        UniPoly::new(c)
    }

    /// Coefficient of `first^i`, as a polynomial in the second variable.
    pub fn first_coefficient(&self, i: u32) -> UniPoly {
        let n = self.degree_second().map_or(0, |d| d as usize + 1);
        let mut c = vec![BigInt::zero(); n];
        for (&(a, b), v) in &self.terms {
            if a == i {
                c[b as usize] = v.clone();
            }
        }
        UniPoly::new(c)
    }

    pub fn evaluate(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * a.pow(i) * b.pow(j))
            .sum()
    }

    /// Fixes the first variable, leaving a polynomial in the second.
    pub fn evaluate_first(&self, a: &BigInt) -> UniPoly {
        let n = self.degree_second().map_or(0, |d| d as usize + 1);
        let mut c = vec![BigInt::zero(); n];
        for (&(i, j), v) in &self.terms {
            c[j as usize] += v * a.pow(i);
        }
        UniPoly::new(c)
    }

    /// Fixes the second variable, leaving a polynomial in the first.
    pub fn evaluate_second(&self, b: &BigInt) -> UniPoly {
        let n = self.degree_first().map_or(0, |d| d as usize + 1);
        let mut c = vec![BigInt::zero(); n];
        for (&(i, j), v) in &self.terms {
            c[i as usize] += v * b.pow(j);
        }
        UniPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(first, second)` with `first := p`, `second := q`.
    pub fn substitute(&self, p: &BiPoly, q: &BiPoly) -> BiPoly {
        let max_i = self.degree_first().unwrap_or(0);
        let max_j = self.degree_second().unwrap_or(0);
        let p_pows: Vec<BiPoly> = std::iter::successors(Some(BiPoly::one()), |x| Some(x * p))
            .take(max_i as usize + 1)
            .collect();
        let q_pows: Vec<BiPoly> = std::iter::successors(Some(BiPoly::one()), |x| Some(x * q))
            .take(max_j as usize + 1)
            .collect();
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let term = (&p_pows[i as usize] * &q_pows[j as usize]).scale(c);
            out = &out + &term;
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| (i, j, c * k)))
    }

    /// Exact division by an integer; fails if any coefficient is not a multiple.
    pub fn exact_div(&self, k: &BigInt) -> Result<BiPoly> {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(Error::NonIntegerCoefficient(format!("{c}/{k}")));
            }
            out.add_term(i, j, q);
        }
        Ok(out)
    }

    /// Total degree of every term, if all terms share one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Canonical text: terms by first-variable degree descending, then
    /// second-variable degree ascending, e.g. `t^2 - 4*t + 4*t*x`.
    pub fn render(&self, first: &str, second: &str) -> String {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        render_terms(keys.into_iter().map(|(&(i, j), c)| (vec![(first, i), (second, j)], c.clone())))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term(a + x, b + y, c * d);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t", "x"))
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (Vec<(&'a str, u32)>, BigInt)>) -> String {
    let mut out = String::new();
    for (vars, c) in terms {
        if c.is_zero() {
            continue;
        }
        let monomial: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let abs = c.abs();
        let body = match (monomial.is_empty(), abs.is_one()) {
            (true, _) => abs.to_string(),
            (false, true) => monomial.join("*"),
            (false, false) => format!("{abs}*{}", monomial.join("*")),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The unique polynomial of degree `<= degree_bound` through `samples`, in
/// exact rational arithmetic. Extra samples beyond `degree_bound + 1` must lie
/// on the same polynomial. Non-integer coefficients are an error.
pub fn interpolate(samples: &[(BigInt, BigInt)], degree_bound: usize) -> Result<UniPoly> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    let mut seen = HashSet::new();
    for (x, _) in samples {
        if !seen.insert(x) {
            return Err(Error::DuplicateNodes(x.to_string()));
        }
    }
    let (used, extra) = samples.split_at(needed);
    let xs: Vec<BigRational> = used.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
    // Newton divided differences, in place
    let mut dd: Vec<BigRational> = used.iter().map(|(_, y)| BigRational::from_integer(y.clone())).collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand the Newton form from the innermost term outwards
    let mut coeffs: Vec<BigRational> = vec![dd[needed - 1].clone()];
    for k in (0..needed - 1).rev() {
        // coeffs := coeffs * (t - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient(c.to_string()));
        }
        ints.push(c.to_integer());
    }
    let p = UniPoly::new(ints);
    if extra.iter().any(|(x, y)| &p.evaluate(x) != y) {
        return Err(Error::InconsistentSamples(degree_bound));
    }
    Ok(p)
}
