//! Linear combinations of terms with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Parity, Sign};
use crate::term::Term;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(n.into())
}

pub fn sign_rat(s: Sign) -> Rat {
    match s {
        Sign::Plus => Rat::one(),
        Sign::Minus => -Rat::one(),
    }
}

/// Element of the free algebra: a finite formal sum of terms with nonzero
/// rational coefficients. The empty sum is zero. Keys are held in the
/// deterministic term order, so iteration and printing are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GdnElement {
    terms: BTreeMap<Term, Rat>,
}

impl GdnElement {
    pub fn zero() -> GdnElement {
        GdnElement::default()
    }

    pub fn from_term(t: Term) -> GdnElement {
        GdnElement::single(t, Rat::one())
    }

    pub fn single(t: Term, coeff: Rat) -> GdnElement {
        let mut e = GdnElement::zero();
        e.add_term(t, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> Rat {
        self.terms.get(t).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `coeff * t`, dropping the key if the total cancels.
    pub fn add_term(&mut self, t: Term, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &GdnElement) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &GdnElement) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), -c.clone());
        }
    }

    pub fn scale(&self, by: &Rat) -> GdnElement {
        if by.is_zero() {
            return GdnElement::zero();
        }
        GdnElement {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c * by))
                .collect(),
        }
    }

    /// Formal bilinear extension of the term product.
    pub fn circ(&self, other: &GdnElement) -> GdnElement {
        let mut out = GdnElement::zero();
        for (s, cs) in &self.terms {
            for (t, ct) in &other.terms {
                out.add_term(Term::product(s.clone(), t.clone()), cs * ct);
            }
        }
        out
    }

    /// Common parity of all terms, `None` for zero or mixed-parity elements.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys();
        let first = it.next()?.parity();
        it.all(|t| t.parity() == first).then_some(first)
    }

    /// Common length of all terms, `None` for zero or mixed-length elements.
    pub fn homogeneous_length(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.length();
        it.all(|t| t.length() == first).then_some(first)
    }

    pub fn terms(&self) -> &BTreeMap<Term, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Term, Rat> {
        self.terms
    }

    /// Renders against an alphabet, e.g. `((x*y)*x) + (y*(x*x)) - 2 ((y*x)*x)`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push_str("- ");
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push(' ');
            }
            out.push_str(&crate::parse::print_term(t, alphabet));
        }
        out
    }
}

impl From<Term> for GdnElement {
    fn from(t: Term) -> GdnElement {
        GdnElement::from_term(t)
    }
}

impl Add for GdnElement {
    type Output = GdnElement;
    fn add(mut self, rhs: GdnElement) -> GdnElement {
        self.add_assign(&rhs);
        self
    }
}

impl Sub for GdnElement {
    type Output = GdnElement;
    fn sub(mut self, rhs: GdnElement) -> GdnElement {
        self.sub_assign(&rhs);
        self
    }
}

impl Neg for GdnElement {
    type Output = GdnElement;
    fn neg(self) -> GdnElement {
        self.scale(&-Rat::one())
    }
}

impl Mul<&Rat> for &GdnElement {
    type Output = GdnElement;
    fn mul(self, rhs: &Rat) -> GdnElement {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::term::{left_normed, Term};

    #[test]
    fn zero_coefficients_never_stored() {
        let a = Alphabet::parse("x:0").unwrap();
        let x = Term::leaf(a.lookup("x").unwrap());
        let mut e = GdnElement::zero();
        e.add_term(x.clone(), rat(2));
        e.add_term(x.clone(), rat(-2));
        assert!(e.is_zero());
        e.add_term(x.clone(), rat(0));
        assert!(e.is_zero());
    }

    #[test]
    fn circ_is_bilinear_on_singletons() {
        let a = Alphabet::parse("x:0,y:0").unwrap();
        let x = Term::leaf(a.lookup("x").unwrap());
        let y = Term::leaf(a.lookup("y").unwrap());
        let e = GdnElement::single(x.clone(), rat(2)) + GdnElement::from_term(y.clone());
        let p = e.circ(&GdnElement::from_term(x.clone()));
        assert_eq!(p.coeff(&Term::product(x.clone(), x.clone())), rat(2));
        assert_eq!(p.coeff(&Term::product(y, x)), rat(1));
    }

    #[test]
    fn display_formats_signs_and_rationals() {
        let a = Alphabet::parse("x:0,y:0").unwrap();
        let x = a.lookup("x").unwrap();
        let y = a.lookup("y").unwrap();
        let t1 = Term::product(Term::leaf(x), Term::leaf(y));
        let t2 = left_normed(vec![Term::leaf(x), Term::leaf(y), Term::leaf(x)]);
        let e = GdnElement::single(t1, rat(3) / rat(2)) + GdnElement::single(t2, rat(-1));
        assert_eq!(e.display(&a), "3/2 (x*y) - ((x*y)*x)");
        assert_eq!(GdnElement::zero().display(&a), "0");
    }
}
