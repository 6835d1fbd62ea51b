//! The free associative differential supercommutative algebra on an alphabet.
//!
//! Basis monomials are words in derivative factors `D^i(a)` sorted ascending
//! by `(order, generator)`, with the admissibility constraint that no odd
//! generator occurs twice at the same derivative order (such a square is 0).
//! The product concatenates factor lists and resorts, picking up a Koszul
//! sign of -1 for every inverted pair of odd factors; the derivation `D`
//! raises one factor's order at a time (Leibniz rule).
//!
//! With the circle product `u ∘ v = u · D(v)` this algebra carries a second,
//! nonassociative structure satisfying left supersymmetry and right
//! supercommutativity; that product is what the embedding in
//! [`crate::embed`] targets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Gen, Parity, Sign};
use crate::element::{sign_rat, Rat};

/// Maximum representable derivative order. Desk-scale inputs stay far below;
/// the guard turns runaway loops into a loud failure instead of wraparound.
pub const MAX_ORDER: u32 = 1_000_000;

/// A single derivative factor `D^order(gen)`; order 0 prints as the bare
/// generator name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DFactor {
    order: u32,
    gen: Gen,
}

impl DFactor {
    pub fn new(order: u32, gen: Gen) -> DFactor {
        assert!(order <= MAX_ORDER, "derivative order {order} out of range");
        DFactor { order, gen }
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn gen(self) -> Gen {
        self.gen
    }

    pub fn parity(self) -> Parity {
        self.gen.parity()
    }

    /// Same factor with the derivative order raised by one.
    pub fn bumped(self) -> DFactor {
        DFactor::new(self.order + 1, self.gen)
    }
}

/// Sorted admissible word of derivative factors. Always nonempty, which
/// is why there is no `is_empty`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[allow(clippy::len_without_is_empty)]
pub struct DMonomial {
    factors: Vec<DFactor>,
}

impl DMonomial {
    /// Canonicalizes an arbitrary factor list: sorts it and counts the Koszul
    /// sign, or returns `None` when an odd factor repeats (the monomial is 0)
    /// or the list is empty.
    pub fn canonical(mut factors: Vec<DFactor>) -> Option<(DMonomial, Sign)> {
        if factors.is_empty() {
            return None;
        }
        let mut odd_inversions = 0usize;
        for p in 0..factors.len() {
            for q in (p + 1)..factors.len() {
                let (fp, fq) = (factors[p], factors[q]);
                if fp == fq && fp.parity().is_odd() {
                    return None;
                }
                if fp > fq && fp.parity().is_odd() && fq.parity().is_odd() {
                    odd_inversions += 1;
                }
            }
        }
        factors.sort();
        Some((DMonomial { factors }, Sign::from_parity_of(odd_inversions)))
    }

    /// Builds from a list already known to be sorted and admissible.
    pub fn from_sorted(factors: Vec<DFactor>) -> DMonomial {
        debug_assert!(factors.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(!factors.is_empty());
        DMonomial { factors }
    }

    pub fn generator(gen: Gen) -> DMonomial {
        DMonomial {
            factors: vec![DFactor::new(0, gen)],
        }
    }

    pub fn factors(&self) -> &[DFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn parity(&self) -> Parity {
        self.factors
            .iter()
            .fold(Parity::Even, |acc, f| acc.combine(f.parity()))
    }

    /// `(sum of orders) - length + 1`.
    pub fn weight(&self) -> i64 {
        let orders: i64 = self.factors.iter().map(|f| f.order as i64).sum();
        orders - self.factors.len() as i64 + 1
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            if f.order == 0 {
                out.push_str(alphabet.name(f.gen));
            } else {
                let _ = write!(out, "D^{}[{}]", f.order, alphabet.name(f.gen));
            }
        }
        out
    }
}

// Order (*): compare lengths, then factor tuples read from the last factor
// backwards.
impl Ord for DMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| {
                for (a, b) in self
                    .factors
                    .iter()
                    .rev()
                    .zip(other.factors.iter().rev())
                {
                    let ord = a.cmp(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for DMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of monomials with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffElement {
    monomials: BTreeMap<DMonomial, Rat>,
}

impl DiffElement {
    pub fn zero() -> DiffElement {
        DiffElement::default()
    }

    pub fn from_monomial(m: DMonomial) -> DiffElement {
        DiffElement::single(m, Rat::one())
    }

    pub fn single(m: DMonomial, coeff: Rat) -> DiffElement {
        let mut e = DiffElement::zero();
        e.add_monomial(m, coeff);
        e
    }

    pub fn generator(gen: Gen) -> DiffElement {
        DiffElement::from_monomial(DMonomial::generator(gen))
    }

    /// The canonical form of an arbitrary factor list as an element: a
    /// single signed monomial, or zero when an odd factor repeats.
    pub fn canonical_monomial(factors: Vec<DFactor>) -> DiffElement {
        match DMonomial::canonical(factors) {
            Some((m, sign)) => DiffElement::single(m, sign_rat(sign)),
            None => DiffElement::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DMonomial, &Rat)> {
        self.monomials.iter()
    }

    pub fn monomials(&self) -> &BTreeMap<DMonomial, Rat> {
        &self.monomials
    }

    pub fn coeff(&self, m: &DMonomial) -> Rat {
        self.monomials.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_monomial(&mut self, m: DMonomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.monomials.entry(m) {
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

    pub fn add_assign(&mut self, other: &DiffElement) {
        for (m, c) in &other.monomials {
            self.add_monomial(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &DiffElement) {
        for (m, c) in &other.monomials {
            self.add_monomial(m.clone(), -c.clone());
        }
    }

    pub fn scale(&self, by: &Rat) -> DiffElement {
        if by.is_zero() {
            return DiffElement::zero();
        }
        DiffElement {
            monomials: self
                .monomials
                .iter()
                .map(|(m, c)| (m.clone(), c * by))
                .collect(),
        }
    }

    /// The maximal monomial under the order (*) and its coefficient, or
    /// `None` for the zero element.
    pub fn leading(&self) -> Option<(&DMonomial, &Rat)> {
        self.monomials.iter().next_back()
    }

    /// Supercommutative product, extended bilinearly.
    pub fn mul(&self, other: &DiffElement) -> DiffElement {
        let mut out = DiffElement::zero();
        for (u, cu) in &self.monomials {
            for (v, cv) in &other.monomials {
                let mut fs = Vec::with_capacity(u.len() + v.len());
                fs.extend_from_slice(u.factors());
                fs.extend_from_slice(v.factors());
                if let Some((m, sign)) = DMonomial::canonical(fs) {
                    out.add_monomial(m, cu * cv * sign_rat(sign));
                }
            }
        }
        out
    }

    /// The derivation: Leibniz sum over factors, each with its order raised
    /// by one.
    pub fn derive(&self) -> DiffElement {
        let mut out = DiffElement::zero();
        for (u, cu) in &self.monomials {
            for t in 0..u.len() {
                let mut fs = u.factors().to_vec();
                fs[t] = fs[t].bumped();
                if let Some((m, sign)) = DMonomial::canonical(fs) {
                    out.add_monomial(m, cu * sign_rat(sign));
                }
            }
        }
        out
    }

    /// Circle product `u ∘ v = u · D(v)`.
    pub fn circ(&self, other: &DiffElement) -> DiffElement {
        self.mul(&other.derive())
    }

    /// Common parity of all monomials, `None` for zero or mixed.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        let mut it = self.monomials.keys();
        let first = it.next()?.parity();
        it.all(|m| m.parity() == first).then_some(first)
    }

    /// Renders as a signed combination, largest monomial first.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.monomials.iter().rev().enumerate() {
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
            out.push_str(&m.display(alphabet));
        }
        out
    }
}

impl std::ops::Add for DiffElement {
    type Output = DiffElement;
    fn add(mut self, rhs: DiffElement) -> DiffElement {
        self.add_assign(&rhs);
        self
    }
}

impl std::ops::Sub for DiffElement {
    type Output = DiffElement;
    fn sub(mut self, rhs: DiffElement) -> DiffElement {
        self.sub_assign(&rhs);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::element::rat;

    fn setup() -> (Alphabet, Gen, Gen, Gen, Gen) {
        let a = Alphabet::parse("x:0,y:0,xi:1,eta:1").unwrap();
        let x = a.lookup("x").unwrap();
        let y = a.lookup("y").unwrap();
        let xi = a.lookup("xi").unwrap();
        let eta = a.lookup("eta").unwrap();
        (a, x, y, xi, eta)
    }

    fn mono(fs: &[(u32, Gen)]) -> DMonomial {
        DMonomial::canonical(fs.iter().map(|&(o, g)| DFactor::new(o, g)).collect())
            .expect("nonzero monomial")
            .0
    }

    #[test]
    fn canonical_sign_counts_odd_inversions() {
        let (_, _, _, xi, _) = setup();
        // [D(xi), xi] has one odd-odd inversion
        let (m, sign) =
            DMonomial::canonical(vec![DFactor::new(1, xi), DFactor::new(0, xi)]).unwrap();
        assert_eq!(sign, Sign::Minus);
        assert_eq!(m, mono(&[(0, xi), (1, xi)]));
    }

    #[test]
    fn canonical_even_pair_has_no_sign() {
        let (_, x, ..) = setup();
        let (m, sign) =
            DMonomial::canonical(vec![DFactor::new(1, x), DFactor::new(0, x)]).unwrap();
        assert_eq!(sign, Sign::Plus);
        assert_eq!(m, mono(&[(0, x), (1, x)]));
    }

    #[test]
    fn repeated_odd_factor_vanishes() {
        let (_, _, _, xi, _) = setup();
        assert!(DMonomial::canonical(vec![DFactor::new(1, xi), DFactor::new(1, xi)]).is_none());
        assert!(
            DiffElement::canonical_monomial(vec![DFactor::new(1, xi), DFactor::new(1, xi)])
                .is_zero()
        );
    }

    #[test]
    fn mul_examples() {
        let (_, x, y, xi, eta) = setup();
        // x . y = x y
        let p = DiffElement::generator(x).mul(&DiffElement::generator(y));
        assert_eq!(p.coeff(&mono(&[(0, x), (0, y)])), rat(1));
        assert_eq!(p.len(), 1);

        // (xi . D(eta)) . eta = -(xi eta D(eta))
        let left = DiffElement::from_monomial(mono(&[(0, xi), (1, eta)]));
        let p = left.mul(&DiffElement::generator(eta));
        assert_eq!(p.coeff(&mono(&[(0, xi), (0, eta), (1, eta)])), rat(-1));
        assert_eq!(p.len(), 1);

        // xi . xi = 0
        let p = DiffElement::generator(xi).mul(&DiffElement::generator(xi));
        assert!(p.is_zero());
    }

    #[test]
    fn derive_examples() {
        let (_, x, y, xi, eta) = setup();
        // D(x) = D(x)
        let d = DiffElement::generator(x).derive();
        assert_eq!(d.coeff(&mono(&[(1, x)])), rat(1));

        // D(x y) = y D(x) + x D(y)
        let d = DiffElement::from_monomial(mono(&[(0, x), (0, y)])).derive();
        assert_eq!(d.coeff(&mono(&[(0, y), (1, x)])), rat(1));
        assert_eq!(d.coeff(&mono(&[(0, x), (1, y)])), rat(1));
        assert_eq!(d.len(), 2);

        // D(xi eta) = -eta D(xi) + xi D(eta)
        let d = DiffElement::from_monomial(mono(&[(0, xi), (0, eta)])).derive();
        assert_eq!(d.coeff(&mono(&[(0, eta), (1, xi)])), rat(-1));
        assert_eq!(d.coeff(&mono(&[(0, xi), (1, eta)])), rat(1));
    }

    #[test]
    fn circ_examples() {
        let (_, x, _, xi, _) = setup();
        let cx = DiffElement::generator(x).circ(&DiffElement::generator(x));
        assert_eq!(cx.coeff(&mono(&[(0, x), (1, x)])), rat(1));

        let cxi = DiffElement::generator(xi).circ(&DiffElement::generator(xi));
        assert_eq!(cxi.coeff(&mono(&[(0, xi), (1, xi)])), rat(1));

        // (xi D(xi)) o xi : both Leibniz branches repeat an odd factor
        let u = DiffElement::from_monomial(mono(&[(0, xi), (1, xi)]));
        assert!(u.circ(&DiffElement::generator(xi)).is_zero());
    }

    #[test]
    fn weight_examples() {
        let (_, x, y, xi, _) = setup();
        assert_eq!(mono(&[(0, x)]).weight(), 0);
        assert_eq!(mono(&[(1, x)]).weight(), 1);
        assert_eq!(mono(&[(0, x), (0, y), (2, xi)]).weight(), 0);
    }

    #[test]
    fn order_star_examples() {
        let (_, x, y, xi, _) = setup();
        assert!(mono(&[(0, x)]) < mono(&[(0, x), (0, y)]));
        assert!(mono(&[(0, x)]) < mono(&[(1, x)]));
        assert!(mono(&[(0, x), (1, x), (1, y)]) < mono(&[(0, x), (0, y), (2, x)]));
        // spec'd leading example: y D(x) D(xi) < x y D^2(xi)
        assert!(mono(&[(0, y), (1, x), (1, xi)]) < mono(&[(0, x), (0, y), (2, xi)]));
    }

    #[test]
    fn leading_examples() {
        let (_, x, ..) = setup();
        let f = DiffElement::single(mono(&[(0, x)]), rat(2))
            + DiffElement::single(mono(&[(1, x)]), rat(3));
        let (m, c) = f.leading().unwrap();
        assert_eq!(m, &mono(&[(1, x)]));
        assert_eq!(c, &rat(3));
        assert!(DiffElement::zero().leading().is_none());
    }

    #[test]
    fn display_format() {
        let (a, x, y, xi, _) = setup();
        let f = DiffElement::from_monomial(mono(&[(0, x), (0, y), (2, xi)]))
            + DiffElement::single(mono(&[(0, y), (1, x), (1, xi)]), rat(-2));
        assert_eq!(f.display(&a), "x y D^2[xi] - 2 y D^1[x] D^1[xi]");
        assert_eq!(DiffElement::zero().display(&a), "0");
    }
}
