//! Elements of F = k(t) in a form adapted to the t-adic valuation.
//!
//! A nonzero scalar is stored as `t^e * n(t)/d(t)` with `n(0) != 0`,
//! `d(0) = 1` and `gcd(n, d) = 1`. This makes the representation unique
//! (equality is structural), makes the valuation literal (`e`), and keeps
//! every element of the localization `O = k[t]_(t)` visibly integral.

use crate::field::{BaseField, FieldElem};
use crate::scalars::jet::LaurentJet;
use crate::scalars::poly::Poly;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// t-adic valuation, with infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        match self {
            Valuation::Finite(v) => v >= 0,
            Valuation::Infinity => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    exp: i64,
    num: Poly,
    den: Poly,
}

impl RationalScalar {
    fn reduced(mut exp: i64, mut num: Poly, mut den: Poly) -> RationalScalar {
        assert!(!den.is_zero(), "zero denominator");
        let field = num.field();
        if num.is_zero() {
            return RationalScalar::zero(field);
        }
        if let Some(v) = num.order() {
            exp += v as i64;
            num = num.shift_down(v);
        }
        if let Some(v) = den.order() {
            exp -= v as i64;
            den = den.shift_down(v);
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
        let c = den.eval_zero().inv().expect("den(0) nonzero after shift");
        num = num.scale(&c);
        den = den.scale(&c);
        RationalScalar { exp, num, den }
    }

    pub fn zero(field: BaseField) -> RationalScalar {
        RationalScalar {
            exp: 0,
            num: Poly::zero(field),
            den: Poly::one(field),
        }
    }

    pub fn one(field: BaseField) -> RationalScalar {
        RationalScalar::from_poly(Poly::one(field))
    }

    pub fn from_poly(p: Poly) -> RationalScalar {
        let field = p.field();
        RationalScalar::reduced(0, p, Poly::one(field))
    }

    pub fn from_fraction(num: Poly, den: Poly) -> RationalScalar {
        RationalScalar::reduced(0, num, den)
    }

    pub fn constant(c: FieldElem) -> RationalScalar {
        RationalScalar::from_poly(Poly::constant(c))
    }

    pub fn from_i64(field: BaseField, n: i64) -> RationalScalar {
        RationalScalar::constant(FieldElem::from_i64(field, n))
    }

    /// `t^e`.
    pub fn t_power(field: BaseField, e: i64) -> RationalScalar {
        RationalScalar {
            exp: e,
            num: Poly::one(field),
            den: Poly::one(field),
        }
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.num.is_one() && self.den.is_one()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinity
        } else {
            Valuation::Finite(self.exp)
        }
    }

    /// Lies in the valuation ring O = k[t]_(t).
    pub fn is_integral(&self) -> bool {
        self.valuation().is_nonnegative()
    }

    /// Unit of O: valuation exactly zero.
    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn t_exponent(&self) -> i64 {
        self.exp
    }

    pub fn add(&self, other: &RationalScalar) -> RationalScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = self
            .num
            .mul(&other.den)
            .mul(&t_poly(self.field(), (self.exp - e) as usize));
        let b = other
            .num
            .mul(&self.den)
            .mul(&t_poly(self.field(), (other.exp - e) as usize));
        RationalScalar::reduced(e, a.add(&b), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RationalScalar) -> RationalScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalScalar {
        RationalScalar {
            exp: self.exp,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalScalar) -> RationalScalar {
        if self.is_zero() || other.is_zero() {
            return RationalScalar::zero(self.field());
        }
        RationalScalar::reduced(
            self.exp + other.exp,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    pub fn inv(&self) -> Option<RationalScalar> {
        if self.is_zero() {
            return None;
        }
        Some(RationalScalar::reduced(
            -self.exp,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, other: &RationalScalar) -> RationalScalar {
        self.mul(&other.inv().expect("division by zero"))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> RationalScalar {
        if self.is_zero() {
            return self.clone();
        }
        RationalScalar {
            exp: self.exp + k,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Value at t = 0 for integral elements; None on negative valuation.
    pub fn residue(&self) -> Option<FieldElem> {
        match self.valuation() {
            Valuation::Infinity => Some(self.field().zero()),
            Valuation::Finite(0) => Some(self.num.eval_zero()),
            Valuation::Finite(v) if v > 0 => Some(self.field().zero()),
            _ => None,
        }
    }

    /// Exact Laurent expansion, correct modulo `t^prec`.
    pub fn to_jet(&self, prec: i64) -> LaurentJet {
        let field = self.field();
        if self.is_zero() || self.exp >= prec {
            return LaurentJet::zero(field, prec);
        }
        let n = (prec - self.exp) as usize;
        // den(0) = 1, so the power-series inverse needs no division
        let mut inv = vec![field.zero(); n];
        inv[0] = field.one();
        for i in 1..n {
            let mut acc = field.zero();
            for k in 1..=i.min(self.den.degree().max(0) as usize) {
                acc = acc.add(&self.den.coeff(k).mul(&inv[i - k]));
            }
            inv[i] = acc.neg();
        }
        let mut coeffs = vec![field.zero(); n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let mut acc = field.zero();
            for k in 0..=i.min(self.num.degree().max(0) as usize) {
                acc = acc.add(&self.num.coeff(k).mul(&inv[i - k]));
            }
            *c = acc;
        }
        LaurentJet::new(field, self.exp, coeffs, prec)
    }

    /// The Laurent-polynomial part of the expansion below `t^bound`, exactly.
    pub fn truncate_below(&self, bound: i64) -> RationalScalar {
        let jet = self.to_jet(bound);
        jet.to_rational()
    }
}

fn t_poly(field: BaseField, k: usize) -> Poly {
    Poly::monomial(field.one(), k)
}

impl fmt::Display for RationalScalar {
    /// Canonical printing in the scalar grammar; `parse . print` is the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let tpow = match self.exp {
            0 => None,
            1 => Some("t".to_string()),
            e => Some(format!("t^{e}")),
        };
        let num_s = self.num.to_string();
        let num_atomic = self.num.order() == Some(0) && self.num.degree() == 0;
        let core = if self.den.is_one() {
            if num_s == "1" && tpow.is_some() {
                None
            } else if num_atomic || tpow.is_none() {
                Some(num_s)
            } else {
                Some(format!("({num_s})"))
            }
        } else if num_atomic {
            Some(format!("{num_s}/({})", self.den))
        } else {
            Some(format!("({num_s})/({})", self.den))
        };
        match (tpow, core) {
            (Some(t), None) => write!(f, "{t}"),
            (Some(t), Some(c)) => write!(f, "{t}*{c}"),
            (None, Some(c)) => write!(f, "{c}"),
            (None, None) => unreachable!(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl $trait for &RationalScalar {
            type Output = RationalScalar;
            fn $method(self, rhs: &RationalScalar) -> RationalScalar {
                self.$inherent(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    const F5: BaseField = BaseField::Prime(5);

    fn s(text: &str) -> RationalScalar {
        parse_scalar(text, F5).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let x = s("t^2 + 3*t");
        assert_eq!(x.t_exponent(), 1);
        assert_eq!(x.numerator().to_string(), "3 + t");
        assert!(x.denominator().is_one());

        let u = s("1/(1+t)");
        assert_eq!(u.valuation(), Valuation::Finite(0));
        assert!(u.is_unit());

        let w = s("t^-1");
        assert_eq!(w.valuation(), Valuation::Finite(-1));
    }

    #[test]
    fn valuation_of_products_and_units() {
        assert_eq!(
            RationalScalar::zero(F5).valuation(),
            Valuation::Infinity
        );
        // t^2 (1+t)/(1-t) has valuation 2
        let x = s("t^2*(1+t)/(1-t)");
        assert_eq!(x.valuation(), Valuation::Finite(2));
    }

    #[test]
    fn field_ops() {
        let x = s("1+t");
        assert!(x.mul(&x.inv().unwrap()).is_one());
        let a = s("1/(1+t)").add(&s("t/(1+t)"));
        assert!(a.is_one());
        let p = s("2+t").mul(&s("3+t"));
        assert_eq!(p, s("1+t^2"));
    }

    #[test]
    fn truncation_is_the_series_prefix() {
        let x = s("1/(1-t)"); // 1 + t + t^2 + ...
        assert_eq!(x.truncate_below(3), s("1+t+t^2"));
        let y = s("t^-1/(1-t)"); // t^-1 + 1 + t + ...
        assert_eq!(y.truncate_below(1), s("t^-1 + 1"));
        assert_eq!(s("t^3").truncate_below(2), RationalScalar::zero(F5));
    }

    #[test]
    fn dvf_axioms_on_samples() {
        let xs = ["t^-1", "1+t", "t^2+3*t", "2/(1+2*t)", "t*(4+t)/(1+t)"];
        for a in xs {
            for b in xs {
                let (x, y) = (s(a), s(b));
                let vx = x.valuation().finite().unwrap();
                let vy = y.valuation().finite().unwrap();
                assert_eq!(x.mul(&y).valuation(), Valuation::Finite(vx + vy));
                let sum = x.add(&y);
                if let Valuation::Finite(vs) = sum.valuation() {
                    assert!(vs >= vx.min(vy));
                }
                if vx != vy {
                    assert_eq!(sum.valuation(), Valuation::Finite(vx.min(vy)));
                }
            }
        }
    }
}
