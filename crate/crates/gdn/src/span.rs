//! Exact rational linear spans over ordered sparse keys.
//!
//! A [`SpanBasis`] keeps an echelonized set of sparse vectors: every row is
//! normalized to pivot coefficient 1, pivots are pairwise distinct, and
//! membership is decided by exact elimination. Keys are any ordered type;
//! here they are terms (in tableau normal form) or monomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::alphabet::Parity;
use crate::element::{GdnElement, Rat};
use crate::term::{left_normed, Term};
use crate::Alphabet;

/// Sparse vector with exact rational entries.
pub type SparseVec<K> = BTreeMap<K, Rat>;

/// Echelonized basis of a subspace. Rows are indexed by their pivot, the
/// largest key of the row.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> SpanBasis<K> {
        SpanBasis {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    /// Reduces a vector against the basis; the remainder has no pivot in
    /// common with any row.
    fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        loop {
            let Some((pivot, coeff)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))
            else {
                return v;
            };
            let Some(row) = self.rows.get(&pivot) else {
                return v;
            };
            for (k, c) in row {
                let entry = v.entry(k.clone()).or_insert_with(Rat::zero);
                *entry -= &coeff * c;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    /// Exact membership test.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts a vector; returns `true` when the rank grew (the vector was
    /// independent). Dependent vectors are a no-op.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let reduced = self.reduce(v.clone());
        let Some((pivot, lead)) = reduced
            .iter()
            .next_back()
            .map(|(k, c)| (k.clone(), c.clone()))
        else {
            return false;
        };
        let normalized: SparseVec<K> = reduced.into_iter().map(|(k, c)| (k, c / &lead)).collect();
        self.rows.insert(pivot, normalized);
        true
    }

    /// Ranks bucketed by an arbitrary grading of the pivot key.
    pub fn rank_by<G: Ord, F: Fn(&K) -> G>(&self, grade: F) -> BTreeMap<G, usize> {
        let mut out = BTreeMap::new();
        for pivot in self.rows.keys() {
            *out.entry(grade(pivot)).or_insert(0) += 1;
        }
        out
    }
}

/// Coordinates of an element whose support is already in tableau normal
/// form; rejects anything else so span arithmetic never mixes reduced and
/// unreduced vectors.
pub fn coordinates(e: &GdnElement) -> Result<SparseVec<Term>, Term> {
    for (t, _) in e.iter() {
        if !crate::tableau::is_tableau(t) {
            return Err(t.clone());
        }
    }
    Ok(e.terms().clone())
}

/// Sum over all permutations of the inputs of their left-normed products.
pub fn symmetrization(xs: &[GdnElement]) -> GdnElement {
    assert!(!xs.is_empty());
    let mut out = GdnElement::zero();
    for perm in permutations(xs.len()) {
        let mut it = perm.into_iter();
        let mut acc = xs[it.next().unwrap()].clone();
        for idx in it {
            acc = acc.circ(&xs[idx]);
        }
        out.add_assign(&acc);
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

/// Iterated right multiplication: `x`, `x x`, `(x x) x`, ... with `n - 1`
/// applications.
pub fn right_power(x: &GdnElement, n: u32) -> GdnElement {
    assert!(n >= 1);
    let mut acc = x.clone();
    for _ in 1..n {
        acc = acc.circ(x);
    }
    acc
}

/// Left-normed product of a slice of elements.
pub fn left_normed_product(xs: &[GdnElement]) -> GdnElement {
    let mut it = xs.iter();
    let mut acc = it.next().expect("nonempty product").clone();
    for x in it {
        acc = acc.circ(x);
    }
    acc
}

/// Left-normed bracketing of single terms.
pub fn left_normed_terms(ts: &[Term]) -> Term {
    left_normed(ts.to_vec())
}

/// All tableaux terms of the given length and parity, the spanning set of
/// the homogeneous slice of the free algebra.
pub fn tableau_slice(alphabet: &Alphabet, length: u32, parity: Option<Parity>) -> Vec<Term> {
    crate::embed::enumerate_tableaux(alphabet, length)
        .into_iter()
        .map(|t| t.to_term())
        .filter(|t| parity.is_none_or(|p| t.parity() == p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::rat;
    use crate::parse::{parse_element, parse_term};

    fn alpha() -> Alphabet {
        Alphabet::parse("x:0,y:0,xi:1").unwrap()
    }

    #[test]
    fn span_membership_and_rank() {
        let a = alpha();
        let x = parse_element("x", &a).unwrap();
        let mut basis = SpanBasis::new();
        // zero is in the empty span
        assert!(basis.contains(&coordinates(&GdnElement::zero()).unwrap()));
        assert!(basis.insert(&coordinates(&x).unwrap()));
        // scalar multiples are dependent
        let two_x = x.scale(&rat(2));
        assert!(basis.contains(&coordinates(&two_x).unwrap()));
        assert!(!basis.insert(&coordinates(&two_x).unwrap()));
        assert_eq!(basis.rank(), 1);
        // a different degree is independent
        let xx = parse_element("(x*x)", &a).unwrap();
        assert!(!basis.contains(&coordinates(&xx).unwrap()));
        assert!(basis.insert(&coordinates(&xx).unwrap()));
        assert_eq!(basis.rank(), 2);
    }

    #[test]
    fn coordinates_rejects_unreduced_elements() {
        let a = alpha();
        // (x*(y*xi)) violates the chain condition, so it is not a tableau
        let t = parse_term("(x*(y*xi))", &a).unwrap();
        assert!(coordinates(&GdnElement::from_term(t)).is_err());
    }

    #[test]
    fn symmetrization_examples() {
        let a = alpha();
        let x = parse_element("x", &a).unwrap();
        let y = parse_element("y", &a).unwrap();
        assert_eq!(symmetrization(std::slice::from_ref(&x)), x);
        let s2 = symmetrization(&[x.clone(), y.clone()]);
        assert_eq!(s2, parse_element("(x*y) + (y*x)", &a).unwrap());
        // permuting the inputs leaves the output fixed
        assert_eq!(symmetrization(&[y.clone(), x.clone()]), s2);
        // |S_3| = 6 left-normed terms
        let xi = parse_element("xi", &a).unwrap();
        let s3 = symmetrization(&[x, y, xi]);
        assert_eq!(s3.len(), 6);
    }

    #[test]
    fn right_power_examples() {
        let a = alpha();
        let x = parse_element("x", &a).unwrap();
        assert_eq!(right_power(&x, 1), x);
        assert_eq!(right_power(&x, 3), parse_element("((x*x)*x)", &a).unwrap());
        let xx = parse_element("(x*x)", &a).unwrap();
        assert_eq!(
            right_power(&xx, 2),
            parse_element("((x*x)*(x*x))", &a).unwrap()
        );
    }
}
