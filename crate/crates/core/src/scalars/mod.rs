//! Exact scalars: the base field k, the rational function field F = k(t)
//! with its t-adic valuation, and precision-tracked Laurent jets.

mod jet;
mod parse;
mod poly;
mod rational;

pub use jet::LaurentJet;
pub use parse::parse_scalar;
pub use poly::Poly;
pub use rational::{RationalScalar, Valuation};

use crate::error::ScalarError;
use crate::field::{BaseField, FieldElem};
use rand::Rng;

/// Square root of a jet; see [`LaurentJet::sqrt`].
pub fn jet_sqrt(x: &LaurentJet) -> Result<LaurentJet, ScalarError> {
    x.sqrt(None)
}

/// A pseudorandom polynomial scalar of degree at most `degree_bound`.
/// Over `Q` the coefficients are drawn from -9..=9.
pub fn random_scalar<R: Rng>(field: BaseField, rng: &mut R, degree_bound: usize) -> RationalScalar {
    let coeffs: Vec<FieldElem> = (0..=degree_bound)
        .map(|_| match field {
            BaseField::Prime(p) => FieldElem::from_i64(field, rng.gen_range(0..p) as i64),
            BaseField::Rationals => FieldElem::from_i64(field, rng.gen_range(-9..=9)),
        })
        .collect();
    RationalScalar::from_poly(Poly::new(field, coeffs))
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    const F5: BaseField = BaseField::Prime(5);

    fn arb_scalar() -> impl Strategy<Value = RationalScalar> {
        (
            -3i64..=3,
            proptest::collection::vec(0i64..5, 1..4),
            proptest::collection::vec(0i64..5, 0..3),
        )
            .prop_map(|(e, num, den)| {
                let num = Poly::new(F5, num.iter().map(|&c| FieldElem::from_i64(F5, c)).collect());
                let mut den_c = vec![FieldElem::from_i64(F5, 1)];
                den_c.extend(den.iter().map(|&c| FieldElem::from_i64(F5, c)));
                let den = Poly::new(F5, den_c);
                if num.is_zero() {
                    RationalScalar::zero(F5)
                } else {
                    RationalScalar::from_fraction(num, den).shift(e)
                }
            })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(x in arb_scalar()) {
            let printed = x.to_string();
            let back = parse_scalar(&printed, F5).unwrap();
            prop_assert_eq!(x, back);
        }

        #[test]
        fn valuation_is_multiplicative(x in arb_scalar(), y in arb_scalar()) {
            let p = x.mul(&y);
            match (x.valuation().finite(), y.valuation().finite()) {
                (Some(a), Some(b)) => prop_assert_eq!(p.valuation(), Valuation::Finite(a + b)),
                _ => prop_assert_eq!(p.valuation(), Valuation::Infinity),
            }
        }

        #[test]
        fn valuation_ultrametric(x in arb_scalar(), y in arb_scalar()) {
            let s = x.add(&y);
            prop_assert!(s.valuation() >= x.valuation().min(y.valuation()));
            if x.valuation() != y.valuation() {
                prop_assert_eq!(s.valuation(), x.valuation().min(y.valuation()));
            }
        }

        #[test]
        fn jets_respect_multiplication(x in arb_scalar(), y in arb_scalar()) {
            let exact = x.mul(&y).to_jet(8);
            let jets = x.to_jet(16).mul(&y.to_jet(16));
            prop_assert!(exact.agrees_with(&jets));
        }

        #[test]
        fn jet_sqrt_recovers_squares(x in arb_scalar()) {
            prop_assume!(!x.is_zero());
            let sq = x.mul(&x);
            let jet = sq.to_jet(10);
            let lead = x.to_jet(12);
            let root_hint = lead.coeff(lead.valuation());
            let s = jet.sqrt(Some(&root_hint)).unwrap();
            prop_assert!(s.agrees_with(&x.to_jet(10)));
        }
    }
}
