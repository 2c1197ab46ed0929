//! Dense polynomials in `t` over the base field `k`.
//!
//! These are internal building blocks for [`super::RationalScalar`]; the
//! coefficient vector never has trailing zeros, so the zero polynomial is the
//! empty vector.

use crate::field::{BaseField, FieldElem};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: BaseField,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: BaseField, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: BaseField) -> Poly {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: BaseField) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// t-adic order: index of the lowest nonzero coefficient. None for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    /// Divides by `t^k`; all of the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        assert!(self.coeffs[..k].iter().all(FieldElem::is_zero));
        Poly::new(self.field, self.coeffs[k..].to_vec())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(FieldElem::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.clone();
        let mut q = Poly::zero(self.field);
        let dl = d.leading().unwrap().inv().expect("leading coeff invertible");
        while !r.is_zero() && r.degree() >= d.degree() {
            let k = (r.degree() - d.degree()) as usize;
            let c = r.leading().unwrap().mul(&dl);
            let m = Poly::monomial(c, k);
            q = q.add(&m);
            r = r.sub(&m.mul(d));
        }
        (q, r)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().inv().unwrap();
        a.scale(&lead)
    }

    /// Value at t = 0.
    pub fn eval_zero(&self) -> FieldElem {
        self.coeff(0)
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering in the scalar grammar, lowest-degree term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c {
                FieldElem::Rat(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly5(cs: &[i64]) -> Poly {
        let f = BaseField::Prime(5);
        Poly::new(f, cs.iter().map(|&c| FieldElem::from_i64(f, c)).collect())
    }

    #[test]
    fn mul_mod_5() {
        // (2 + t)(3 + t) = 6 + 5t + t^2 = 1 + t^2 over F5
        let p = poly5(&[2, 1]).mul(&poly5(&[3, 1]));
        assert_eq!(p, poly5(&[1, 0, 1]));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = poly5(&[1, 2, 0, 3, 4]);
        let d = poly5(&[2, 1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let g = poly5(&[1, 1]); // 1 + t
        let a = g.mul(&poly5(&[2, 0, 1]));
        let b = g.mul(&poly5(&[3, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn display_ascending() {
        assert_eq!(poly5(&[3, 0, 1]).to_string(), "3 + t^2");
        assert_eq!(poly5(&[0, 2]).to_string(), "2*t");
        assert_eq!(poly5(&[0]).to_string(), "0");
        let f = BaseField::Rationals;
        let q = Poly::new(
            f,
            vec![FieldElem::from_i64(f, 1), FieldElem::from_fraction(f, -1, 2)],
        );
        assert_eq!(q.to_string(), "1 - 1/2*t");
    }
}
