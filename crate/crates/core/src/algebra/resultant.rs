//! Sylvester resultants and discriminants via fraction-free (Bareiss)
//! elimination over the polynomial ring.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::One;

use super::{AlgebraError, MultiPoly, Rational};

/// Determinant of a square matrix of polynomials by Bareiss elimination.
/// Every division is exact; a zero pivot column is handled by a row swap.
///
/// Panics if the matrix is not square or empty.
pub fn determinant(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n), "square matrix");
    let vars = m[0][0].variables().to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::constant(&vars, Rational::one());
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of two polynomials given by coefficient lists in ascending
/// degree, using the list lengths as formal degrees (leading entries may be
/// zero). This is the homogeneous resultant of the corresponding binary forms.
///
/// Panics if either list is empty or both are constants.
pub fn sylvester_resultant(f: &[MultiPoly], g: &[MultiPoly]) -> MultiPoly {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let vars = f[0].variables().to_vec();
    if m == 0 && n == 0 {
        return MultiPoly::constant(&vars, Rational::one());
    }
    let size = m + n;
    let zero = MultiPoly::zero(&vars);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Sylvester resultant eliminating `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, AlgebraError> {
    let f = f + &MultiPoly::zero(g.variables());
    let g = g.with_variables(f.variables())?;
    let (fc, gc) = (f.coefficients_in(var)?, g.coefficients_in(var)?);
    if fc.len() < 2 || gc.len() < 2 {
        return Err(AlgebraError::DegreeZero(var.to_string()));
    }
    Ok(sylvester_resultant(&fc, &gc))
}

/// Discriminant in `var`: `(-1)^(n(n-1)/2) / lc * res(f, df/dvar)`.
pub fn discriminant(f: &MultiPoly, var: &str) -> Result<MultiPoly, AlgebraError> {
    let coeffs = f.coefficients_in(var)?;
    let degree = coeffs.len().saturating_sub(1) as u32;
    if degree < 2 {
        return Err(AlgebraError::DegreeTooSmall {
            var: var.to_string(),
            degree,
            required: 2,
        });
    }
    let res = resultant(f, &f.partial(var)?, var)?;
    let lead = coeffs.last().expect("degree >= 2");
    let mut disc = res
        .div_exact(lead)
        .expect("leading coefficient divides the resultant");
    if (degree * (degree - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}

/// Discriminant of the binary form `sum coeffs[j] s^j u^(e-j)` of formal
/// degree `e = coeffs.len() - 1 >= 2`, computed as
/// `(-1)^(e(e-1)/2) e^(2-e) Res(dF/ds, dF/du)`. No division by a leading
/// coefficient is needed, so roots at `u = 0` are counted like any other.
///
/// Panics if `coeffs.len() < 3`.
pub fn binary_form_discriminant(coeffs: &[MultiPoly]) -> MultiPoly {
    let e = coeffs.len() - 1;
    assert!(e >= 2, "binary form of degree at least 2");
    let ds: Vec<MultiPoly> = (1..=e)
        .map(|j| coeffs[j].scale(&Rational::from_integer(j.into())))
        .collect();
    let du: Vec<MultiPoly> = (0..e)
        .map(|j| coeffs[j].scale(&Rational::from_integer((e - j).into())))
        .collect();
    let res = sylvester_resultant(&ds, &du);
    let mut factor = Rational::from_integer(e.into()).pow(2 - e as i32);
    if (e * (e - 1) / 2) % 2 == 1 {
        factor = -factor;
    }
    res.scale(&factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        parse_poly(s, vars).unwrap()
    }

    #[test]
    fn resultant_evaluation_property() {
        let v = ["x", "t"];
        let r = resultant(&p("x^2 - t", &v), &p("x - 1", &v), "x").unwrap();
        assert_eq!(r, p("1 - t", &v));
    }

    #[test]
    fn resultant_of_common_factor_vanishes() {
        let v = ["x", "y"];
        let f = p("x^3 - y*x + 2", &v);
        assert!(resultant(&f, &f, "x").unwrap().is_zero());
        let g = p("(x - y)*(x + 1)", &v);
        let h = p("(x - y)*(x^2 + 3)", &v);
        assert!(resultant(&g, &h, "x").unwrap().is_zero());
    }

    #[test]
    fn resultant_rejects_degree_zero() {
        let v = ["x", "y"];
        assert_eq!(
            resultant(&p("y + 1", &v), &p("x", &v), "x"),
            Err(AlgebraError::DegreeZero("x".into()))
        );
        assert!(resultant(&p("x", &v), &p("y", &v), "x").is_err());
    }

    #[test]
    fn quadratic_discriminant() {
        let v = ["x", "b", "c"];
        assert_eq!(
            discriminant(&p("x^2 + b*x + c", &v), "x").unwrap(),
            p("b^2 - 4c", &v)
        );
        assert!(discriminant(&p("(x-1)^2", &v), "x").unwrap().is_zero());
        assert!(matches!(
            discriminant(&p("b*x + c", &v), "x"),
            Err(AlgebraError::DegreeTooSmall { degree: 1, .. })
        ));
    }

    #[test]
    fn cubic_discriminant_matches_closed_form() {
        let v = ["x", "p", "q"];
        assert_eq!(
            discriminant(&p("x^3 + p*x + q", &v), "x").unwrap(),
            p("-4p^3 - 27q^2", &v)
        );
    }

    #[test]
    fn binary_discriminant_agrees_with_univariate() {
        let v = ["s", "a", "b", "c", "d"];
        let coeffs: Vec<MultiPoly> = ["d", "c", "b", "a"].iter().map(|s| p(s, &v)).collect();
        let f = p("a*s^3 + b*s^2 + c*s + d", &v);
        assert_eq!(
            binary_form_discriminant(&coeffs),
            discriminant(&f, "s").unwrap()
        );
    }

    #[test]
    fn binary_discriminant_counts_roots_at_infinity() {
        // s*u*(s - u): three distinct points, one at u = 0.
        let v = ["t"];
        let c = |s: &str| p(s, &v);
        let disc = binary_form_discriminant(&[c("0"), c("-1"), c("1"), c("0")]);
        assert!(!disc.is_zero());
        // s^2*u: double root at s = 0.
        let disc = binary_form_discriminant(&[c("0"), c("0"), c("1"), c("0")]);
        assert!(disc.is_zero());
    }

    #[test]
    fn determinant_with_pivoting() {
        let v = ["t"];
        let c = |s: &str| p(s, &v);
        let m = alloc::vec![
            alloc::vec![c("0"), c("1"), c("t")],
            alloc::vec![c("1"), c("0"), c("2")],
            alloc::vec![c("t"), c("3"), c("0")],
        ];
        // Cofactor expansion: 0 - 1*(0 - 2t) + t*(3 - 0) = 5t.
        assert_eq!(determinant(m), c("5t"));
    }
}
