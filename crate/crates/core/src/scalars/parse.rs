//! Parser for the scalar grammar.
//!
//! Grammar: integer literals, the symbol `t`, operators `+ - * / ^`,
//! parentheses; whitespace is insignificant. Exponents are integer literals;
//! a negative exponent is only allowed directly on `t`. Canonical printing
//! (the `Display` impl on [`RationalScalar`]) emits the same grammar.

use crate::error::ScalarError;
use crate::field::{BaseField, FieldElem};
use crate::scalars::rational::RationalScalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ScalarError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let at = self.pos;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((Tok::Int(text.to_string()), at));
                }
                b't' => {
                    self.pos += 1;
                    out.push((Tok::T, at));
                }
                b'+' => {
                    self.pos += 1;
                    out.push((Tok::Plus, at));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((Tok::Minus, at));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((Tok::Star, at));
                }
                b'/' => {
                    self.pos += 1;
                    out.push((Tok::Slash, at));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((Tok::Caret, at));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((Tok::LParen, at));
                }
                b')' => {
                    self.pos += 1;
                    out.push((Tok::RParen, at));
                }
                other => {
                    return Err(ScalarError::Syntax {
                        pos: at,
                        msg: format!("unexpected character `{}`", other as char),
                    })
                }
            }
        }
        Ok(out)
    }
}

/// A parsed value, remembering whether it is literally the symbol `t`
/// (negative exponents are legal only there).
struct Val {
    v: RationalScalar,
    is_t: bool,
}

struct Parser {
    field: BaseField,
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        self.i += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self, min_bp: u8) -> Result<Val, ScalarError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, bp) = match self.peek() {
                Some(Tok::Plus) => (Tok::Plus, 10),
                Some(Tok::Minus) => (Tok::Minus, 10),
                Some(Tok::Star) => (Tok::Star, 20),
                Some(Tok::Slash) => (Tok::Slash, 20),
                Some(Tok::Caret) => (Tok::Caret, 40),
                _ => break,
            };
            if bp < min_bp {
                break;
            }
            if op == Tok::Caret {
                self.bump();
                let at = self.pos();
                let n = self.exponent()?;
                if n < 0 && !lhs.is_t {
                    return Err(ScalarError::Syntax {
                        pos: at,
                        msg: "negative exponent is only allowed on t".into(),
                    });
                }
                let v = match pow(&lhs.v, n) {
                    Some(v) => v,
                    None => {
                        return Err(ScalarError::Syntax {
                            pos: at,
                            msg: "zero raised to a negative power".into(),
                        })
                    }
                };
                lhs = Val { v, is_t: false };
                continue;
            }
            self.bump();
            let at = self.pos();
            let rhs = self.expr(bp + 1)?;
            let v = match op {
                Tok::Plus => lhs.v.add(&rhs.v),
                Tok::Minus => lhs.v.sub(&rhs.v),
                Tok::Star => lhs.v.mul(&rhs.v),
                Tok::Slash => {
                    if rhs.v.is_zero() {
                        return Err(ScalarError::Syntax {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    lhs.v.div(&rhs.v)
                }
                _ => unreachable!(),
            };
            lhs = Val { v, is_t: false };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Val, ScalarError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                // unary minus binds tighter than * and /
                let inner = self.expr(30)?;
                Ok(Val {
                    v: inner.v.neg(),
                    is_t: false,
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Val, ScalarError> {
        match self.bump() {
            Some(Tok::Int(text)) => Ok(Val {
                v: RationalScalar::constant(decimal(self.field, &text)),
                is_t: false,
            }),
            Some(Tok::T) => Ok(Val {
                v: RationalScalar::t_power(self.field, 1),
                is_t: true,
            }),
            Some(Tok::LParen) => {
                let inner = self.expr(0)?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(Val {
                        v: inner.v,
                        is_t: false,
                    }),
                    _ => {
                        self.i -= 1;
                        self.err("expected `)`")
                    }
                }
            }
            other => {
                if other.is_some() {
                    self.i -= 1;
                }
                self.err("expected a number, `t`, or `(`")
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(text)) => {
                let n: i64 = text
                    .parse()
                    .map_err(|_| ScalarError::Syntax {
                        pos: self.pos(),
                        msg: "exponent out of range".into(),
                    })?;
                Ok(if neg { -n } else { n })
            }
            other => {
                if other.is_some() {
                    self.i -= 1;
                }
                self.err("expected an integer exponent")
            }
        }
    }
}

fn decimal(field: BaseField, digits: &str) -> FieldElem {
    let ten = FieldElem::from_i64(field, 10);
    let mut acc = field.zero();
    for d in digits.bytes() {
        acc = acc
            .mul(&ten)
            .add(&FieldElem::from_i64(field, (d - b'0') as i64));
    }
    acc
}

fn pow(base: &RationalScalar, n: i64) -> Option<RationalScalar> {
    if n < 0 {
        return pow(&base.inv()?, -n);
    }
    let mut acc = RationalScalar::one(base.field());
    let mut b = base.clone();
    let mut e = n as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    Some(acc)
}

/// Parses a scalar grammar string into a canonical [`RationalScalar`].
pub fn parse_scalar(text: &str, field: BaseField) -> Result<RationalScalar, ScalarError> {
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokens()?;
    if toks.is_empty() {
        return Err(ScalarError::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut parser = Parser {
        field,
        toks,
        i: 0,
        end: text.len(),
    };
    let val = parser.expr(0)?;
    if parser.i != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(val.v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F5: BaseField = BaseField::Prime(5);
    const Q: BaseField = BaseField::Rationals;

    #[test]
    fn spec_examples() {
        let x = parse_scalar("t^2 + 3*t", F5).unwrap();
        assert_eq!(x.to_string(), "t*(3 + t)");
        let u = parse_scalar("1/(1+t)", F5).unwrap();
        assert_eq!(u.to_string(), "1/(1 + t)");
        let w = parse_scalar("t^-1", Q).unwrap();
        assert_eq!(w.to_string(), "t^-1");
    }

    #[test]
    fn print_parse_is_identity() {
        let samples = [
            "0",
            "3",
            "t",
            "t^-2",
            "t^3*(1 + 2*t)",
            "(1 + t)/(1 + 3*t + t^2)",
            "t^-1*(2 + t)/(1 + t)",
            "2 + 4*t + t^5",
        ];
        for s in samples {
            let x = parse_scalar(s, F5).unwrap();
            let y = parse_scalar(&x.to_string(), F5).unwrap();
            assert_eq!(x, y, "round trip through `{s}`");
        }
    }

    #[test]
    fn rational_coefficients() {
        let x = parse_scalar("-1/2*t + 3", Q).unwrap();
        let y = parse_scalar(&x.to_string(), Q).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.to_string(), "3 - 1/2*t");
    }

    #[test]
    fn error_positions() {
        match parse_scalar("1 + $", F5) {
            Err(ScalarError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_scalar("", F5).is_err());
        assert!(parse_scalar("1/(t - t)", F5).is_err());
        assert!(parse_scalar("(1+t)^-1", F5).is_err());
        assert!(parse_scalar("2^-1", F5).is_err());
        assert!(parse_scalar("1 + ", F5).is_err());
        assert!(parse_scalar("(1+t", F5).is_err());
    }

    #[test]
    fn denominators_with_t_powers_move_to_the_numerator() {
        let x = parse_scalar("1/(t + t^2)", F5).unwrap();
        assert_eq!(x.t_exponent(), -1);
        assert_eq!(x.to_string(), "t^-1*1/(1 + t)");
        let y = parse_scalar(&x.to_string(), F5).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn precedence() {
        // -1/2*t parses as ((-1)/2)*t
        let x = parse_scalar("-1/2*t", Q).unwrap();
        assert_eq!(x, parse_scalar("(0 - 1)/2 * t", Q).unwrap());
        // ^ binds tightest: 2*t^2 is 2*(t^2)
        assert_eq!(
            parse_scalar("2*t^2", Q).unwrap(),
            parse_scalar("2*(t^2)", Q).unwrap()
        );
        assert_eq!(
            parse_scalar("t^2^2", Q).unwrap(),
            parse_scalar("t^4", Q).unwrap()
        );
    }
}
