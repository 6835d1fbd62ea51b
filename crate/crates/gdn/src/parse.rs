//! Textual grammar for terms and linear combinations.
//!
//! ```text
//! term    := ident | "(" term "*" term ")"
//! element := ["-"] [coeff] term { ("+" | "-") [coeff] term }
//! coeff   := integer | integer "/" integer
//! ident   := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Printing is the exact inverse of parsing on terms.

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::element::{GdnElement, Rat};
use crate::term::Term;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator `{name}` at byte {pos}")]
    UnknownGenerator { pos: usize, name: String },
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.bump();
            }
            _ => return Err(self.err("expected identifier")),
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        Ok((start, self.src[start..self.pos].to_string()))
    }

    fn term(&mut self, alphabet: &Alphabet) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.bump();
            let left = self.term(alphabet)?;
            self.skip_ws();
            self.expect('*')?;
            let right = self.term(alphabet)?;
            self.skip_ws();
            self.expect(')')?;
            Ok(Term::product(left, right))
        } else {
            let (pos, name) = self.ident()?;
            let gen = alphabet
                .lookup(&name)
                .map_err(|_| ParseError::UnknownGenerator { pos, name })?;
            Ok(Term::leaf(gen))
        }
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("invalid number"))
    }

    fn coeff(&mut self) -> Result<Rat, ParseError> {
        let numer = self.integer()?;
        if self.peek() == Some('/') {
            self.bump();
            let denom = self.integer()?;
            if denom == 0.into() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }
}

/// Parses a single term.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(text);
    let t = cur.term(alphabet)?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(cur.err("trailing input"));
    }
    Ok(t)
}

/// Parses a signed sum of optionally coefficiented terms.
pub fn parse_element(text: &str, alphabet: &Alphabet) -> Result<GdnElement, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = GdnElement::zero();
    cur.skip_ws();
    if cur.peek() == Some('0') {
        // bare zero element
        cur.bump();
        cur.skip_ws();
        if cur.pos == text.len() {
            return Ok(out);
        }
        return Err(cur.err("trailing input"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = match cur.peek() {
            Some('-') => {
                cur.bump();
                -Rat::one()
            }
            Some('+') => {
                if first {
                    return Err(cur.err("unexpected `+`"));
                }
                cur.bump();
                Rat::one()
            }
            Some(_) if first => Rat::one(),
            None if first => return Err(cur.err("empty element")),
            None => break,
            Some(_) => return Err(cur.err("expected `+` or `-`")),
        };
        cur.skip_ws();
        let coeff = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            cur.coeff()?
        } else {
            Rat::one()
        };
        let term = cur.term(alphabet)?;
        out.add_term(term, sign * coeff);
        first = false;
        cur.skip_ws();
        if cur.pos == text.len() {
            break;
        }
    }
    Ok(out)
}

/// Prints a term in the grammar above; `parse_term(print_term(t)) == t`.
pub fn print_term(t: &Term, alphabet: &Alphabet) -> String {
    match t.as_product() {
        None => alphabet.name(t.as_leaf().unwrap()).to_string(),
        Some((l, r)) => format!(
            "({}*{})",
            print_term(l, alphabet),
            print_term(r, alphabet)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::rat;
    use crate::term::right_normed;

    fn alpha() -> Alphabet {
        Alphabet::parse("x:0,y:0,z:0,xi:1").unwrap()
    }

    #[test]
    fn parses_right_and_left_nesting() {
        let a = alpha();
        let x = a.lookup("x").unwrap();
        let y = a.lookup("y").unwrap();
        let z = a.lookup("z").unwrap();
        assert_eq!(
            parse_term("(x*(y*z))", &a).unwrap(),
            right_normed(vec![Term::leaf(x), Term::leaf(y), Term::leaf(z)])
        );
        assert_eq!(
            parse_term("((x*y)*z)", &a).unwrap(),
            Term::product(
                Term::product(Term::leaf(x), Term::leaf(y)),
                Term::leaf(z)
            )
        );
    }

    #[test]
    fn unknown_generator_is_reported_with_position() {
        let a = alpha();
        match parse_term("(x*w)", &a) {
            Err(ParseError::UnknownGenerator { pos, name }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 3);
            }
            other => panic!("expected unknown-generator error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let a = alpha();
        assert!(matches!(
            parse_term("(x*y", &a),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_term("(x y)", &a),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("x)", &a),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn element_syntax_with_rationals() {
        let a = alpha();
        let e = parse_element("3/2 (x*y) - (y*x) + 2 x", &a).unwrap();
        let x = a.lookup("x").unwrap();
        let y = a.lookup("y").unwrap();
        assert_eq!(
            e.coeff(&Term::product(Term::leaf(x), Term::leaf(y))),
            rat(3) / rat(2)
        );
        assert_eq!(e.coeff(&Term::product(Term::leaf(y), Term::leaf(x))), rat(-1));
        assert_eq!(e.coeff(&Term::leaf(x)), rat(2));
        assert_eq!(parse_element("0", &a).unwrap(), GdnElement::zero());
        assert_eq!(e.display(&a), format!("2 x + 3/2 (x*y) - (y*x)"));
    }

    #[test]
    fn print_parse_round_trip() {
        let a = alpha();
        for src in ["x", "(x*y)", "((x*y)*(z*xi))", "(xi*((x*y)*z))"] {
            let t = parse_term(src, &a).unwrap();
            assert_eq!(print_term(&t, &a), src);
            assert_eq!(parse_term(&print_term(&t, &a), &a).unwrap(), t);
        }
    }
}
