//! Recursive-descent parser for sums of monomial terms.
//!
//! ```text
//! form     := term (('+'|'-') term)*
//! term     := (rational '*')? factor ('*' factor)*
//! factor   := variable ('^' integer)?
//! variable := 'x' integer | letter
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace between tokens is ignored. A leading sign is accepted so
//! rendered forms with a negative first coefficient parse back.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ParseError, Variable};
use crate::exact::Rational;

/// One parsed summand, before any validation beyond syntax.
#[derive(Debug, Clone)]
pub(crate) struct RawTerm {
    pub position: usize,
    pub coefficient: Rational,
    pub factors: Vec<(Variable, u32)>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, expected: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num: BigInt = self
            .digits()
            .ok_or_else(|| self.error("expected an integer"))?
            .parse()
            .expect("digit string parses");
        self.skip_ws();
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        self.skip_ws();
        let den_pos = self.pos;
        let den: BigInt = self
            .digits()
            .ok_or_else(|| self.error("expected a denominator"))?
            .parse()
            .expect("digit string parses");
        if den.is_zero() {
            return Err(ParseError::Syntax {
                position: den_pos,
                message: "denominator must be positive".into(),
            });
        }
        Ok(Rational::new(num, den))
    }

    fn variable(&mut self) -> Result<Variable, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('x') => {
                self.bump();
                let at = self.pos;
                match self.digits() {
                    Some(d) => d.parse().map(Variable::Indexed).map_err(|_| ParseError::Syntax {
                        position: at,
                        message: "variable index out of range".into(),
                    }),
                    None => Ok(Variable::Letter('x')),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                Ok(Variable::Letter(c))
            }
            Some(c) => Err(self.error(format!("expected a variable, found '{c}'"))),
            None => Err(self.error("expected a variable, found end of input")),
        }
    }

    fn factor(&mut self) -> Result<(Variable, u32), ParseError> {
        let var = self.variable()?;
        if self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let exp = self
                .digits()
                .ok_or_else(|| self.error("expected an exponent"))?
                .parse::<u32>()
                .map_err(|_| ParseError::Syntax {
                    position: at,
                    message: "exponent out of range".into(),
                })?;
            Ok((var, exp))
        } else {
            Ok((var, 1))
        }
    }

    fn term(&mut self, negate: bool) -> Result<RawTerm, ParseError> {
        self.skip_ws();
        let position = self.pos;
        let mut coefficient = Rational::from_integer(1.into());
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coefficient = self.rational()?;
            if !self.eat('*') {
                self.skip_ws();
                return Err(self.error("expected '*' after coefficient"));
            }
        }
        if negate {
            coefficient = -coefficient;
        }
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(RawTerm {
            position,
            coefficient,
            factors,
        })
    }
}

pub(crate) fn parse_terms(text: &str) -> Result<Vec<RawTerm>, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut negate = false;
    cur.skip_ws();
    if cur.eat('-') {
        negate = true;
    } else {
        cur.eat('+');
    }
    let mut terms = vec![cur.term(negate)?];
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                terms.push(cur.term(false)?);
            }
            Some('-') => {
                cur.bump();
                terms.push(cur.term(true)?);
            }
            Some(c) => return Err(cur.error(format!("unexpected '{c}'"))),
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn coefficients_and_signs() {
        let t = parse_terms("a^2*b - 5*c^3").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].coefficient, rat(-5, 1));
        assert_eq!(t[1].factors, vec![(Variable::Letter('c'), 3)]);
        let t = parse_terms(" 3/2 * x*y*z ").unwrap();
        assert_eq!(t[0].coefficient, rat(3, 2));
        assert_eq!(t[0].factors.len(), 3);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_terms("x1 + * x2").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                position: 5,
                message: "expected a variable, found '*'".into()
            }
        );
        assert!(matches!(parse_terms("3x"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse_terms("x^"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_terms("1/0*x"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse_terms(""), Err(ParseError::Syntax { position: 0, .. })));
    }
}
