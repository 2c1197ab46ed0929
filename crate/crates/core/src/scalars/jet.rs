//! Truncated Laurent series with explicit precision.
//!
//! A jet represents a value known modulo `t^prec`: the coefficients on
//! exponents `[start, prec)` are stored, everything below `start` is zero,
//! everything from `prec` on is unknown. Arithmetic propagates precision
//! pessimistically, so a jet never claims more digits than it has.
//!
//! Square roots are the one place the library leaves k(t): they exist as
//! power series whenever the valuation is even and the leading residue
//! coefficient is a square in k.

use crate::error::ScalarError;
use crate::field::{BaseField, FieldElem};
use crate::scalars::poly::Poly;
use crate::scalars::rational::RationalScalar;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentJet {
    field: BaseField,
    start: i64,
    coeffs: Vec<FieldElem>,
    prec: i64,
}

impl LaurentJet {
    /// Builds a jet from coefficients for `t^start, t^(start+1), ...`,
    /// truncating at `prec` and trimming leading zeros.
    pub fn new(field: BaseField, mut start: i64, mut coeffs: Vec<FieldElem>, prec: i64) -> Self {
        if start + coeffs.len() as i64 > prec {
            coeffs.truncate((prec - start).max(0) as usize);
        }
        while coeffs.first().is_some_and(FieldElem::is_zero) {
            coeffs.remove(0);
            start += 1;
        }
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            start = prec;
        }
        LaurentJet {
            field,
            start,
            coeffs,
            prec,
        }
    }

    /// The jet of 0 at the given precision (zero modulo `t^prec`).
    pub fn zero(field: BaseField, prec: i64) -> Self {
        LaurentJet {
            field,
            start: prec,
            coeffs: vec![],
            prec,
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Known zero modulo `t^prec`.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation as far as this jet can tell: `prec` when zero.
    pub fn valuation(&self) -> i64 {
        self.start
    }

    pub fn coeff(&self, k: i64) -> FieldElem {
        if k < self.start || k >= self.start + self.coeffs.len() as i64 {
            self.field.zero()
        } else {
            self.coeffs[(k - self.start) as usize].clone()
        }
    }

    /// Lowers the precision (raising it would overstate knowledge).
    pub fn truncate(&self, prec: i64) -> LaurentJet {
        let p = prec.min(self.prec);
        LaurentJet::new(self.field, self.start, self.coeffs.clone(), p)
    }

    pub fn add(&self, other: &LaurentJet) -> LaurentJet {
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return other.truncate(prec);
        }
        if other.is_zero() {
            return self.truncate(prec);
        }
        let start = self.start.min(other.start);
        let coeffs = (start..prec)
            .map(|k| self.coeff(k).add(&other.coeff(k)))
            .collect();
        LaurentJet::new(self.field, start, coeffs, prec)
    }

    pub fn neg(&self) -> LaurentJet {
        LaurentJet {
            field: self.field,
            start: self.start,
            coeffs: self.coeffs.iter().map(FieldElem::neg).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &LaurentJet) -> LaurentJet {
        self.add(&other.neg())
    }

    /// Product; the result is known modulo `t^min(p1 + v2, p2 + v1)`.
    pub fn mul(&self, other: &LaurentJet) -> LaurentJet {
        let prec = (self.prec + other.start).min(other.prec + self.start);
        if self.is_zero() || other.is_zero() {
            return LaurentJet::zero(self.field, prec);
        }
        let start = self.start + other.start;
        let n = (prec - start).max(0) as usize;
        let mut coeffs = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < n {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        LaurentJet::new(self.field, start, coeffs, prec)
    }

    /// Inverse; a jet of valuation v known mod `t^p` has inverse known mod `t^(p-2v)`.
    pub fn inv(&self) -> Option<LaurentJet> {
        if self.is_zero() {
            return None;
        }
        let v = self.start;
        let n = ((self.prec - v).max(1)) as usize;
        let lead_inv = self.coeffs[0].inv()?;
        let mut inv = vec![self.field.zero(); n];
        inv[0] = lead_inv.clone();
        for i in 1..n {
            let mut acc = self.field.zero();
            for k in 1..=i {
                acc = acc.add(&self.coeff(v + k as i64).mul(&inv[i - k]));
            }
            inv[i] = acc.mul(&lead_inv).neg();
        }
        Some(LaurentJet::new(self.field, -v, inv, self.prec - 2 * v))
    }

    /// Square root with sign fixed by `residue_root` when supplied.
    ///
    /// Requires even valuation and a leading coefficient that is a square
    /// in k; otherwise the caller is told an etale extension would be needed.
    pub fn sqrt(&self, residue_root: Option<&FieldElem>) -> Result<LaurentJet, ScalarError> {
        if self.is_zero() {
            // zero modulo t^prec: the best square root is zero modulo t^ceil(prec/2)
            return Ok(LaurentJet::zero(self.field, self.prec.div_euclid(2)));
        }
        let v = self.start;
        if v % 2 != 0 {
            return Err(ScalarError::OddValuation(v));
        }
        let lead = &self.coeffs[0];
        let r0 = match residue_root {
            Some(r) => {
                if r.mul(r) != *lead {
                    return Err(ScalarError::NeedsEtaleExtension { degree: 2 });
                }
                r.clone()
            }
            None => lead
                .sqrt()
                .ok_or(ScalarError::NeedsEtaleExtension { degree: 2 })?,
        };
        let n = ((self.prec - v).max(1)) as usize;
        let two_r0_inv = r0.add(&r0).inv().expect("char != 2 and r0 != 0");
        let mut s = vec![self.field.zero(); n];
        s[0] = r0;
        for i in 1..n {
            // coefficient of t^(v+i) in s^2 must match self
            let mut acc = self.field.zero();
            for j in 1..i {
                acc = acc.add(&s[j].mul(&s[i - j]));
            }
            let target = self.coeff(v + i as i64).sub(&acc);
            s[i] = target.mul(&two_r0_inv);
        }
        // s has v/2 extra valuation; s^2 agrees with self modulo t^prec
        Ok(LaurentJet::new(
            self.field,
            v / 2,
            s,
            self.prec - v / 2,
        ))
    }

    /// Agreement modulo `t^min(prec, other.prec)`.
    pub fn agrees_with(&self, other: &LaurentJet) -> bool {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        (lo..prec).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// The stored Laurent polynomial as an exact rational function.
    pub fn to_rational(&self) -> RationalScalar {
        if self.is_zero() {
            return RationalScalar::zero(self.field);
        }
        let poly = Poly::new(self.field, self.coeffs.clone());
        RationalScalar::from_poly(poly).shift(self.start)
    }
}

impl fmt::Display for LaurentJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(t^{})", self.prec);
        }
        write!(f, "{} + O(t^{})", self.to_rational(), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    const F5: BaseField = BaseField::Prime(5);
    const Q: BaseField = BaseField::Rationals;

    #[test]
    fn sqrt_of_perfect_square() {
        let x = parse_scalar("(1+t)^2", F5).unwrap().to_jet(8);
        let s = x.sqrt(None).unwrap();
        assert_eq!(s.to_rational(), parse_scalar("1+t", F5).unwrap());
    }

    #[test]
    fn sqrt_series_over_q() {
        let x = parse_scalar("1+t", Q).unwrap().to_jet(4);
        let s = x.sqrt(None).unwrap();
        let expected = parse_scalar("1 + 1/2*t - 1/8*t^2 + 1/16*t^3", Q).unwrap();
        assert_eq!(s.to_rational(), expected);
        assert!(s.mul(&s).agrees_with(&x));
    }

    #[test]
    fn sqrt_odd_valuation_rejected() {
        let x = parse_scalar("t", Q).unwrap().to_jet(6);
        assert_eq!(x.sqrt(None), Err(ScalarError::OddValuation(1)));
    }

    #[test]
    fn sqrt_nonsquare_residue_signals_extension() {
        let x = parse_scalar("2+t", F5).unwrap().to_jet(6);
        assert_eq!(
            x.sqrt(None),
            Err(ScalarError::NeedsEtaleExtension { degree: 2 })
        );
    }

    #[test]
    fn sqrt_sign_follows_supplied_root() {
        let f = |n| FieldElem::from_i64(F5, n);
        let x = parse_scalar("4+t", F5).unwrap().to_jet(6);
        let pos = x.sqrt(Some(&f(2))).unwrap();
        let neg = x.sqrt(Some(&f(3))).unwrap();
        assert_eq!(pos.neg(), neg);
        assert!(pos.mul(&pos).agrees_with(&x));
    }

    #[test]
    fn precision_tracking_in_products() {
        let a = parse_scalar("t^-1", F5).unwrap().to_jet(3);
        let b = parse_scalar("1/(1-t)", F5).unwrap().to_jet(3);
        let p = a.mul(&b);
        assert_eq!(p.precision(), 2);
        assert_eq!(p.valuation(), -1);
        let inv = a.inv().unwrap();
        assert_eq!(inv.precision(), 3 + 2);
    }

    #[test]
    fn jet_arithmetic_matches_field_arithmetic() {
        let xs = ["t^-2*(1+3*t)", "4/(1+t)", "t+2", "(1+t)/(1+2*t)"];
        for a in xs {
            for b in xs {
                let x = parse_scalar(a, F5).unwrap();
                let y = parse_scalar(b, F5).unwrap();
                let lhs = x.mul(&y).to_jet(6);
                let rhs = x.to_jet(10).mul(&y.to_jet(10));
                assert!(lhs.agrees_with(&rhs), "{a} * {b}");
                let lhs = x.add(&y).to_jet(6);
                let rhs = x.to_jet(10).add(&y.to_jet(10));
                assert!(lhs.agrees_with(&rhs), "{a} + {b}");
            }
        }
    }
}
