//! Generators, parities and the ordered alphabet.
//!
//! An alphabet is a finite ordered list of named generators, each of parity
//! 0 (even) or 1 (odd). The listing order is the total order used everywhere
//! else: comparisons of generators compare their ranks.

use std::fmt;

use thiserror::Error;

/// Z/2 grading of a generator, term or monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Parity of a product: addition mod 2.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Koszul sign picked up when two homogeneous elements pass each other.
    pub fn swap_sign(self, other: Parity) -> Sign {
        if self.is_odd() && other.is_odd() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Exact sign, a unit of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// (-1)^n.
    pub fn from_parity_of(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

/// A generator as it appears inside terms and monomials: its rank in the
/// alphabet order plus its parity. Names live on the [`Alphabet`]; keeping
/// them out of here makes every structural computation independent of any
/// string data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    rank: u16,
    parity: Parity,
}

impl Gen {
    pub fn new(rank: u16, parity: Parity) -> Gen {
        Gen { rank, parity }
    }

    pub fn rank(self) -> u16 {
        self.rank
    }

    pub fn parity(self) -> Parity {
        self.parity
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("empty alphabet specification")]
    Empty,
    #[error("malformed generator entry `{0}`, expected `name:parity`")]
    MalformedEntry(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
    #[error("invalid parity `{0}`, expected 0 or 1")]
    BadParity(String),
    #[error("duplicate generator name `{0}`")]
    Duplicate(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Finite ordered alphabet. The order of the constructor list is the
/// well-order on generators; rank equals list position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    parities: Vec<Parity>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(gens: Vec<(S, Parity)>) -> Result<Alphabet, AlphabetError> {
        if gens.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut names = Vec::with_capacity(gens.len());
        let mut parities = Vec::with_capacity(gens.len());
        for (name, parity) in gens {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(AlphabetError::BadName(name));
            }
            if names.contains(&name) {
                return Err(AlphabetError::Duplicate(name));
            }
            names.push(name);
            parities.push(parity);
        }
        Ok(Alphabet { names, parities })
    }

    /// Parses a comma-separated `name:parity` list, e.g. `x:0,y:0,xi:1`.
    pub fn parse(spec: &str) -> Result<Alphabet, AlphabetError> {
        if spec.trim().is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut gens = Vec::new();
        for entry in spec.split(',') {
            let entry = entry.trim();
            let (name, parity) = entry
                .split_once(':')
                .ok_or_else(|| AlphabetError::MalformedEntry(entry.to_string()))?;
            let parity = match parity.trim() {
                "0" => Parity::Even,
                "1" => Parity::Odd,
                other => return Err(AlphabetError::BadParity(other.to_string())),
            };
            gens.push((name.trim().to_string(), parity));
        }
        Alphabet::new(gens)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn gen(&self, rank: usize) -> Option<Gen> {
        self.parities
            .get(rank)
            .map(|&p| Gen::new(rank as u16, p))
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        self.parities
            .iter()
            .enumerate()
            .map(|(rank, &p)| Gen::new(rank as u16, p))
    }

    pub fn lookup(&self, name: &str) -> Result<Gen, AlphabetError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|rank| Gen::new(rank as u16, self.parities[rank]))
            .ok_or_else(|| AlphabetError::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, gen: Gen) -> &str {
        &self.names[gen.rank() as usize]
    }

    /// True when every generator is odd.
    pub fn all_odd(&self) -> bool {
        self.parities.iter().all(|p| p.is_odd())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, parity)) in self.names.iter().zip(&self.parities).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", name, parity.as_u8())?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec_assigns_ranks_in_listing_order() {
        let a = Alphabet::parse("x:0,y:0,xi:1,eta:1").unwrap();
        assert_eq!(a.len(), 4);
        let x = a.lookup("x").unwrap();
        let xi = a.lookup("xi").unwrap();
        assert_eq!(x.rank(), 0);
        assert_eq!(xi.rank(), 2);
        assert_eq!(x.parity(), Parity::Even);
        assert_eq!(xi.parity(), Parity::Odd);
        assert!(x < xi);
        assert_eq!(a.name(xi), "xi");
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert_eq!(Alphabet::parse(""), Err(AlphabetError::Empty));
        assert!(matches!(
            Alphabet::parse("x:0,x:1"),
            Err(AlphabetError::Duplicate(_))
        ));
        assert!(matches!(
            Alphabet::parse("x:2"),
            Err(AlphabetError::BadParity(_))
        ));
        assert!(matches!(
            Alphabet::parse("1x:0"),
            Err(AlphabetError::BadName(_))
        ));
        assert!(matches!(
            Alphabet::parse("x"),
            Err(AlphabetError::MalformedEntry(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        let spec = "x:0,xi:1";
        let a = Alphabet::parse(spec).unwrap();
        assert_eq!(a.to_string(), spec);
    }

    #[test]
    fn sign_and_parity_arithmetic() {
        assert_eq!(Parity::Odd.combine(Parity::Odd), Parity::Even);
        assert_eq!(Parity::Odd.combine(Parity::Even), Parity::Odd);
        assert_eq!(Parity::Odd.swap_sign(Parity::Odd), Sign::Minus);
        assert_eq!(Parity::Odd.swap_sign(Parity::Even), Sign::Plus);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::from_parity_of(3), Sign::Minus);
    }
}
