//! Dense univariate polynomials over the rationals: gcd and squarefreeness.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{AlgebraError, MultiPoly, Rational};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    /// Reads `f` as a polynomial in `var` alone; any other variable that
    /// actually occurs is an error.
    pub fn from_multi(f: &MultiPoly, var: &str) -> Result<Self, AlgebraError> {
        let i = f.var_index(var)?;
        let mut coeffs = Vec::new();
        for (e, c) in f.terms() {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(AlgebraError::NotUnivariate(var.to_string()));
            }
            let k = e[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn to_multi(&self, var: &str) -> MultiPoly {
        MultiPoly::from_terms(
            &[var],
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    /// Multiplicity of the root `0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                Self(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading().expect("nonzero").recip();
        let mut rem = self.0.clone();
        let Some(nd) = self.degree() else {
            return (Self(Vec::new()), Self(Vec::new()));
        };
        if nd < dd {
            return (Self(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (dd..=nd).rev() {
            let q = &rem[k] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.0.iter().enumerate() {
                rem[k - dd + j] -= dc * &q;
            }
            quot[k - dd] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `f / gcd(f, f')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

/// Verdict of a squarefreeness test with the squarefree part as witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub squarefree: bool,
    pub part: MultiPoly,
}

/// Squarefreeness of a univariate polynomial in `var` over the rationals:
/// true iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &MultiPoly, var: &str) -> Result<SquarefreeReport, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let u = UniPoly::from_multi(f, var)?;
    let part = u
        .squarefree_part()
        .to_multi(var)
        .with_variables(f.variables())?;
    Ok(SquarefreeReport {
        squarefree: u.is_squarefree(),
        part,
    })
}

/// Squarefreeness of a binary form in `(x, y)`: both dehomogenizations are
/// squarefree and the root at infinity of each chart is at most simple.
pub fn binary_form_squarefree(f: &MultiPoly, x: &str, y: &str) -> Result<bool, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let Some(e) = f.is_homogeneous() else {
        return Err(AlgebraError::NotBinaryForm(x.to_string(), y.to_string()));
    };
    let (xi, yi) = (f.var_index(x)?, f.var_index(y)?);
    let mut chart_x = vec![Rational::zero(); e as usize + 1];
    let mut chart_y = vec![Rational::zero(); e as usize + 1];
    for (exps, c) in f.terms() {
        if exps
            .iter()
            .enumerate()
            .any(|(j, &k)| j != xi && j != yi && k > 0)
        {
            return Err(AlgebraError::NotBinaryForm(x.to_string(), y.to_string()));
        }
        chart_x[exps[xi] as usize] = c.clone();
        chart_y[exps[yi] as usize] = c.clone();
    }
    let (fx, fy) = (UniPoly::new(chart_x), UniPoly::new(chart_y));
    let at_infinity = |p: &UniPoly| e as usize - p.degree().unwrap_or(0);
    let ok = |p: &UniPoly| match p.degree() {
        Some(0) => true,
        Some(_) => p.is_squarefree(),
        None => false,
    };
    Ok(ok(&fx) && ok(&fy) && at_infinity(&fx) <= 1 && at_infinity(&fy) <= 1)
}

impl From<Rational> for UniPoly {
    fn from(c: Rational) -> Self {
        Self::new(vec![c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly};

    fn u(s: &str) -> UniPoly {
        UniPoly::from_multi(&parse_poly(s, &["x"]).unwrap(), "x").unwrap()
    }

    #[test]
    fn gcd_and_squarefree_part() {
        let f = u("(x-1)^2*(x+2)");
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), u("(x-1)*(x+2)"));
        assert_eq!(u("x^2-1").gcd(&u("x^2+2x+1")), u("x+1"));
        assert!(u("x^3 - 2").is_squarefree());
        assert_eq!(UniPoly::from(int(3)).degree(), Some(0));
    }

    #[test]
    fn binary_forms() {
        let xy = ["x", "y"];
        assert!(binary_form_squarefree(&parse_poly("x^3+y^3", &xy).unwrap(), "x", "y").unwrap());
        assert!(!binary_form_squarefree(&parse_poly("x^2*y", &xy).unwrap(), "x", "y").unwrap());
        assert!(binary_form_squarefree(&parse_poly("x^2+y^2", &xy).unwrap(), "x", "y").unwrap());
        assert!(binary_form_squarefree(&parse_poly("x*y", &xy).unwrap(), "x", "y").unwrap());
        assert!(!binary_form_squarefree(&parse_poly("x*y^2", &xy).unwrap(), "x", "y").unwrap());
        assert!(binary_form_squarefree(&parse_poly("x", &xy).unwrap(), "x", "y").unwrap());
        assert!(
            binary_form_squarefree(&parse_poly("x^2", &xy).unwrap(), "x", "y").is_ok_and(|b| !b)
        );
        assert!(binary_form_squarefree(&parse_poly("0", &xy).unwrap(), "x", "y").is_err());
        assert!(binary_form_squarefree(&parse_poly("x + 1", &xy).unwrap(), "x", "y").is_err());
    }

    #[test]
    fn multipoly_entry_point() {
        let f = parse_poly("x^2*(x-3)", &["x"]).unwrap();
        let r = is_squarefree(&f, "x").unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.part, parse_poly("x^2 - 3x", &["x"]).unwrap());
        assert!(is_squarefree(&parse_poly("0", &["x"]).unwrap(), "x").is_err());
        assert_eq!(u("x^2 + 1").eval(&int(2)), int(5));
    }
}
