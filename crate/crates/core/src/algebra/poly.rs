//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial carries its own ordered variable list; every exponent vector
//! has one entry per variable. Arithmetic between polynomials over different
//! variable lists first embeds both into the union list (left operand's order
//! first), so callers working over a fixed global order never pay for it.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{is_one, Rational};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Result of a homogeneity test. The zero polynomial has no degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(u32),
    Inhomogeneous,
    Zero,
}

fn total(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(vars);
        let i = p.var_index(name)?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeats and dropping zeros.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Self
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::NotAVariable(name.to_string()))
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// Lowest total degree among terms; `None` for the zero polynomial.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).min()
    }

    pub fn degree_in(&self, var: &str) -> Result<Option<u32>, AlgebraError> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(|e| total(e));
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) if degs.all(|x| x == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    /// `Some(d)` iff every term has total degree `d`.
    pub fn is_homogeneous(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.vars, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, var: &str) -> Result<Self, AlgebraError> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[i].into()));
        }
        Ok(out)
    }

    /// Evaluates at a full assignment, one value per variable.
    ///
    /// Panics if `point` has the wrong length.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "evaluation point length");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces each variable by the matching polynomial in `images`; all
    /// images must share one variable list, which becomes the result's.
    ///
    /// Panics if `images` is empty or has the wrong length.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images[0].vars.clone();
        let images: Vec<MultiPoly> = images.iter().map(|p| p.embed_lenient(&target)).collect();
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(&target, Rational::one()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes `value` for `var`; the variable stays in the list.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Result<Self, AlgebraError> {
        let i = self.var_index(var)?;
        let value = value.embed_lenient(&self.vars);
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .enumerate()
            .map(|(j, v)| {
                if j == i {
                    value.clone()
                } else {
                    MultiPoly::var(&self.vars, v).expect("own variable")
                }
            })
            .collect();
        Ok(self.compose(&images))
    }

    /// Substitutes a rational constant for `var`.
    pub fn specialize(&self, var: &str, value: &Rational) -> Result<Self, AlgebraError> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = core::mem::replace(&mut e2[i], 0);
            out.add_term(e2, c * num_traits::pow(value.clone(), k as usize));
        }
        Ok(out)
    }

    /// Coefficients `[c_0, c_1, ..., c_k]` with `self = sum c_j var^j`; each
    /// `c_j` keeps the full variable list (with `var` absent). Empty for zero.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly>, AlgebraError> {
        let i = self.var_index(var)?;
        let deg = match self.degree_in(var)? {
            Some(d) => d as usize,
            None => return Ok(Vec::new()),
        };
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = core::mem::replace(&mut e2[i], 0) as usize;
            out[k].terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// Rebuilds `sum coeffs[j] * var^j`.
    pub fn from_coefficients(coeffs: &[MultiPoly], var: &str) -> Result<Self, AlgebraError> {
        let Some(first) = coeffs.first() else {
            return Err(AlgebraError::ZeroPolynomial);
        };
        let x = MultiPoly::var(&first.vars, var)?;
        let mut out = MultiPoly::zero(&first.vars);
        let mut power = MultiPoly::constant(&first.vars, Rational::one());
        for c in coeffs {
            out = &out + &(c * &power);
            power = &power * &x;
        }
        Ok(out)
    }

    /// Re-expresses over `vars`, which must contain every variable that
    /// actually occurs.
    pub fn with_variables<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self, AlgebraError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|e| e[i] == 0) => map.push(None),
                None => return Err(AlgebraError::NotAVariable(v.clone())),
            }
        }
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    e2[j] += k;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    fn embed_lenient(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        self.with_variables(vars).unwrap_or_else(|_| {
            self.with_variables(&union(&self.vars, vars))
                .expect("union")
        })
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let vars = union(&a.vars, &b.vars);
        (a.embed_lenient(&vars), b.embed_lenient(&vars))
    }

    /// Leading term in lexicographic order.
    fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// `self / divisor` when the division is exact, `None` otherwise.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.vars != divisor.vars {
            let (a, b) = Self::aligned(self, divisor);
            return a.div_exact(&b);
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dlead_e, dlead_c) = divisor.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&dlead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&dlead_e).map(|(a, b)| a - b).collect();
            let qc = c / &dlead_c;
            for (de, dc) in &divisor.terms {
                let pe: Vec<u32> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(pe, -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Multiplies by the least common denominator and divides by the content,
    /// making the leading (lexicographic) coefficient positive.
    pub fn primitive_integer(&self) -> Self {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            g = -g;
        }
        let factor = Rational::new(lcm, g);
        self.scale(&factor)
    }
}

fn union(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars != rhs.vars {
            let (a, b) = MultiPoly::aligned(self, rhs);
            return &a + &b;
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars != rhs.vars {
            let (a, b) = MultiPoly::aligned(self, rhs);
            return &a * &b;
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Canonical print order: descending total degree, then descending lex.
fn print_order(a: &[u32], b: &[u32]) -> Ordering {
    total(b).cmp(&total(a)).then_with(|| b.cmp(a))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| print_order(a.0, b.0));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        alloc::format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !is_one(&abs) {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly, rat};

    const XYZW: [&str; 4] = ["x", "y", "z", "w"];

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &XYZW).unwrap()
    }

    #[test]
    fn homogeneity_cases() {
        assert_eq!(p("x^5+y^5+z^5-z*w^4").is_homogeneous(), Some(5));
        assert_eq!(p("x + x^2").is_homogeneous(), None);
        assert_eq!(p("x + x^2").homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(p("3").is_homogeneous(), Some(0));
        assert_eq!(p("0").homogeneity(), Homogeneity::Zero);
        assert_eq!(p("0").is_homogeneous(), None);
        assert_eq!(p("0").total_degree(), None);
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("z*w^4").partial("w").unwrap(), p("4*z*w^3"));
        assert_eq!(p("x^7+y^7+z^7-z*w^6").partial("x").unwrap(), p("7*x^6"));
        assert_eq!(p("x^3").partial("y").unwrap(), p("0"));
        assert!(p("x").partial("t").is_err());
    }

    #[test]
    fn exact_division() {
        let f = p("x^2 - y^2");
        let g = p("x + y");
        assert_eq!(f.div_exact(&g), Some(p("x - y")));
        assert_eq!(p("x^2 + 1").div_exact(&g), None);
        assert_eq!(p("3*x").div_exact(&p("6")), Some(p("1/2*x")));
    }

    #[test]
    fn compose_and_specialize() {
        let f = p("x^2*w + z");
        let g = f.specialize("w", &int(2)).unwrap();
        assert_eq!(g, p("2*x^2 + z"));
        let h = f.substitute("x", &p("y + 1")).unwrap();
        assert_eq!(h, p("y^2*w + 2*y*w + w + z"));
    }

    #[test]
    fn display_is_canonical_and_reparses() {
        let f = p("-z*w^4 + (x^3+y^3)*w^2 + 3/2");
        let s = f.to_string();
        assert_eq!(s, "x^3*w^2 + y^3*w^2 - z*w^4 + 3/2");
        assert_eq!(p(&s), f);
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("-2/3*x*y").to_string(), "-2/3*x*y");
    }

    #[test]
    fn mixed_variable_lists_are_unified() {
        let a = parse_poly("x + 1", &["x"]).unwrap();
        let b = parse_poly("t", &["t"]).unwrap();
        let s = &a + &b;
        assert_eq!(s.variables(), &["x".to_string(), "t".to_string()]);
        assert_eq!(s.num_terms(), 3);
    }

    #[test]
    fn primitive_integer_normalization() {
        assert_eq!(p("-1/2*z").primitive_integer(), p("z"));
        assert_eq!(p("5*x + 5*y").primitive_integer(), p("x + y"));
        assert_eq!(
            p("2/3*x - 4/3*w")
                .primitive_integer()
                .coefficient(&[1, 0, 0, 0]),
            rat(1, 1)
        );
    }
}
