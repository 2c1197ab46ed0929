//! The coefficient field `k`: prime fields of odd characteristic and the rationals.
//!
//! Everything downstream (polynomials, rational functions, lattices) is generic
//! over the choice of `k` at runtime, so field elements carry a tag identifying
//! which field they live in. Mixing elements of different fields is a programming
//! error and panics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::ScalarError;

/// The base field `k` of the construction. Characteristic 2 is excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    /// The prime field `F_p`, `p` an odd prime.
    Prime(u64),
    /// The rational numbers.
    Rationals,
}

impl BaseField {
    /// Parses a field descriptor such as `F5`, `F101`, or `Q`.
    pub fn parse(text: &str) -> Result<BaseField, ScalarError> {
        let t = text.trim();
        if t == "Q" || t == "q" {
            return Ok(BaseField::Rationals);
        }
        if let Some(rest) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
            let p: u64 = rest
                .parse()
                .map_err(|_| ScalarError::BadField(text.to_string()))?;
            return BaseField::prime(p);
        }
        Err(ScalarError::BadField(text.to_string()))
    }

    /// The field `F_p`, validated to be an odd prime.
    pub fn prime(p: u64) -> Result<BaseField, ScalarError> {
        if p == 2 || !is_prime_u64(p) {
            return Err(ScalarError::BadField(format!("F{p}")));
        }
        Ok(BaseField::Prime(p))
    }

    /// Field characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Prime(p) => *p,
            BaseField::Rationals => 0,
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::from_i64(*self, 0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::from_i64(*self, 1)
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Prime(p) => write!(f, "F{p}"),
            BaseField::Rationals => write!(f, "Q"),
        }
    }
}

/// An element of the base field `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Fp { p: u64, v: u64 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn field(&self) -> BaseField {
        match self {
            FieldElem::Fp { p, .. } => BaseField::Prime(*p),
            FieldElem::Rat(_) => BaseField::Rationals,
        }
    }

    pub fn from_i64(field: BaseField, n: i64) -> FieldElem {
        match field {
            BaseField::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                FieldElem::Fp { p, v: r }
            }
            BaseField::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    /// The fraction `a/b` as a field element; `b` must be nonzero (and a unit mod p).
    pub fn from_fraction(field: BaseField, a: i64, b: i64) -> FieldElem {
        let num = FieldElem::from_i64(field, a);
        let den = FieldElem::from_i64(field, b);
        num.mul(&den.inv().expect("zero denominator"))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Fp { p, v: a }, FieldElem::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                FieldElem::Fp {
                    p: *p,
                    v: addmod(*a, *b, *p),
                }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            _ => panic!("mixed base fields"),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Fp { p, v } => FieldElem::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
            FieldElem::Rat(r) => FieldElem::Rat(-r),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Fp { p, v: a }, FieldElem::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                FieldElem::Fp {
                    p: *p,
                    v: mulmod(*a, *b, *p),
                }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            _ => panic!("mixed base fields"),
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Fp { p, v } => FieldElem::Fp {
                p: *p,
                v: powmod(*v, p - 2, *p),
            },
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
        })
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.mul(&other.inv().expect("division by zero in k"))
    }

    /// `self^n` for `n ∈ Z`; negative powers invert first.
    pub fn pow(&self, n: i64) -> FieldElem {
        if n < 0 {
            return self.inv().expect("negative power of zero").pow(-n);
        }
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Whether the element is a square in `k`.
    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// A square root in `k` if one exists. For `F_p` the root `r` with
    /// `r <= p - r` is returned; for `Q` the nonnegative root.
    pub fn sqrt(&self) -> Option<FieldElem> {
        match self {
            FieldElem::Fp { p, v } => {
                if *v == 0 {
                    return Some(self.clone());
                }
                let r = tonelli_shanks(*v, *p)?;
                let r = r.min(*p - r);
                Some(FieldElem::Fp { p: *p, v: r })
            }
            FieldElem::Rat(r) => {
                if r.is_negative() {
                    return None;
                }
                let (n, d) = (r.numer(), r.denom());
                let sn = n.sqrt();
                let sd = d.sqrt();
                if &(&sn * &sn) == n && &(&sd * &sd) == d {
                    Some(FieldElem::Rat(BigRational::new(sn, sd)))
                } else {
                    None
                }
            }
        }
    }

    /// Legendre symbol for prime fields: 1 for nonzero squares, -1 for
    /// nonsquares, 0 for zero. Panics over `Q`.
    pub fn legendre(&self) -> i8 {
        match self {
            FieldElem::Fp { p, v } => {
                if *v == 0 {
                    0
                } else if powmod(*v, (p - 1) / 2, *p) == 1 {
                    1
                } else {
                    -1
                }
            }
            FieldElem::Rat(_) => panic!("legendre symbol is defined over prime fields"),
        }
    }

    /// Square-free representative of the square class, as a rational.
    /// Prime factors beyond the trial-division bound are only reduced by
    /// perfect-square extraction; the result is informational.
    pub fn square_class_rep(&self) -> FieldElem {
        match self {
            FieldElem::Fp { .. } => {
                if self.is_zero() {
                    self.clone()
                } else if self.legendre() == 1 {
                    self.field().one()
                } else {
                    // smallest nonsquare representative
                    let p = self.field().characteristic();
                    let mut n = 2u64;
                    while (FieldElem::Fp { p, v: n }).legendre() != -1 {
                        n += 1;
                    }
                    FieldElem::Fp { p, v: n }
                }
            }
            FieldElem::Rat(r) => {
                if r.is_zero() {
                    return self.clone();
                }
                let sign = if r.is_negative() { -1 } else { 1 };
                let m = (r.numer() * r.denom()).abs();
                FieldElem::Rat(BigRational::from(BigInt::from(sign) * squarefree_part(&m)))
            }
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks square root mod an odd prime; `a` nonzero.
fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // write p - 1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // smallest quadratic nonresidue as the auxiliary generator
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Square-free part of a positive integer: trial division up to 10^5,
/// then a perfect-square check on the remaining cofactor.
fn squarefree_part(n: &BigInt) -> BigInt {
    let mut rest = n.clone();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(100_000u64);
    while &d * &d <= rest && d <= bound {
        let mut mult = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            mult += 1;
        }
        if mult % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        out
    } else {
        out * rest
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5(n: i64) -> FieldElem {
        FieldElem::from_i64(BaseField::Prime(5), n)
    }

    #[test]
    fn prime_field_arithmetic() {
        assert_eq!(f5(2).add(&f5(4)), f5(1));
        assert_eq!(f5(3).mul(&f5(4)), f5(2));
        assert_eq!(f5(3).inv().unwrap(), f5(2));
        assert!(f5(0).inv().is_none());
        assert_eq!(f5(-1), f5(4));
    }

    #[test]
    fn sqrt_and_legendre_mod_5() {
        assert_eq!(f5(4).sqrt(), Some(f5(2)));
        assert_eq!(f5(1).legendre(), 1);
        assert_eq!(f5(2).legendre(), -1);
        assert!(f5(2).sqrt().is_none());
        assert_eq!(f5(0).legendre(), 0);
    }

    #[test]
    fn sqrt_mod_1_mod_4_prime() {
        let f = BaseField::Prime(13);
        for n in 1..13i64 {
            let x = FieldElem::from_i64(f, n);
            let sq = x.mul(&x);
            let r = sq.sqrt().expect("square of element has a root");
            assert_eq!(r.mul(&r), sq);
        }
    }

    #[test]
    fn rational_sqrt() {
        let f = BaseField::Rationals;
        let x = FieldElem::from_fraction(f, 9, 4);
        assert_eq!(x.sqrt(), Some(FieldElem::from_fraction(f, 3, 2)));
        assert!(FieldElem::from_i64(f, 2).sqrt().is_none());
        assert!(FieldElem::from_i64(f, -4).sqrt().is_none());
    }

    #[test]
    fn square_class_reps() {
        let f = BaseField::Rationals;
        let x = FieldElem::from_fraction(f, 18, 1);
        assert_eq!(x.square_class_rep(), FieldElem::from_i64(f, 2));
        let y = FieldElem::from_fraction(f, -12, 25);
        assert_eq!(y.square_class_rep(), FieldElem::from_i64(f, -3));
        assert_eq!(f5(4).square_class_rep(), f5(1));
        assert_eq!(f5(2).square_class_rep(), f5(2));
    }

    #[test]
    fn field_parsing() {
        assert_eq!(BaseField::parse("F5").unwrap(), BaseField::Prime(5));
        assert_eq!(BaseField::parse("Q").unwrap(), BaseField::Rationals);
        assert!(BaseField::parse("F4").is_err());
        assert!(BaseField::parse("F2").is_err());
        assert!(BaseField::parse("xyz").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
    }
}
