//! Terms: binary product trees over an alphabet.
//!
//! A term is either a generator or a product `(left * right)` of two terms.
//! Each term carries three derived quantities, cached at construction:
//!
//! * `length`: number of leaves;
//! * `parity`: sum of leaf parities mod 2;
//! * `root`  : the root number: `root(a) = 0` for a generator, and
//!   `root((m * n)) = root(m) + 1` when `n` is a generator, else
//!   `root(m) + root(n)`.
//!
//! The root number is the progress measure of the rewriting engine: it never
//! exceeds `length - 1`, left-normed products of generators attain the bound,
//! and right-normed ones have root 1.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::alphabet::{Gen, Parity};

/// An immutable term. Cheap to clone (products share subtrees).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(Gen),
    Node(Arc<Node>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Node {
    left: Term,
    right: Term,
    length: u32,
    root: u32,
    parity: Parity,
}

impl Term {
    pub fn leaf(gen: Gen) -> Term {
        Term::Leaf(gen)
    }

    /// The product `(left * right)`.
    pub fn product(left: Term, right: Term) -> Term {
        let length = left.length() + right.length();
        let root = left.root()
            + match &right {
                Term::Leaf(_) => 1,
                Term::Node(n) => n.root,
            };
        let parity = left.parity().combine(right.parity());
        Term::Node(Arc::new(Node {
            left,
            right,
            length,
            root,
            parity,
        }))
    }

    pub fn length(&self) -> u32 {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(n) => n.length,
        }
    }

    pub fn root(&self) -> u32 {
        match self {
            Term::Leaf(_) => 0,
            Term::Node(n) => n.root,
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            Term::Leaf(g) => g.parity(),
            Term::Node(n) => n.parity,
        }
    }

    pub fn as_leaf(&self) -> Option<Gen> {
        match self {
            Term::Leaf(g) => Some(*g),
            Term::Node(_) => None,
        }
    }

    pub fn as_product(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Leaf(_) => None,
            Term::Node(n) => Some((&n.left, &n.right)),
        }
    }

    /// Letters `[a_r, ..., a_1]` of a simple term, outermost first, or `None`
    /// if the term is not a right-normed product of generators.
    pub fn simple_letters(&self) -> Option<Vec<Gen>> {
        let mut letters = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Leaf(g) => {
                    letters.push(*g);
                    return Some(letters);
                }
                Term::Node(n) => {
                    letters.push(n.left.as_leaf()?);
                    cur = &n.right;
                }
            }
        }
    }

    pub fn is_simple(&self) -> bool {
        self.simple_letters().is_some()
    }
}

/// Left-normed bracketing `(((t1*t2)*...)*tn)`. Panics on an empty list.
pub fn left_normed(terms: Vec<Term>) -> Term {
    let mut it = terms.into_iter();
    let first = it.next().expect("left_normed: empty bracketing list");
    it.fold(first, Term::product)
}

/// Right-normed bracketing `(t1*(...*(tn-1*tn)))`. Panics on an empty list.
pub fn right_normed(terms: Vec<Term>) -> Term {
    let mut it = terms.into_iter().rev();
    let last = it.next().expect("right_normed: empty bracketing list");
    it.fold(last, |acc, t| Term::product(t, acc))
}

/// Simple term from letters given outermost first: `[a_r, ..., a_1]` becomes
/// `(a_r * (... * (a_2 * a_1)))`.
pub fn simple_term(letters: &[Gen]) -> Term {
    right_normed(letters.iter().map(|&g| Term::leaf(g)).collect())
}

/// Every term of the given length: all bracketings crossed with all letter
/// assignments. Grows like the Catalan numbers; meant for small lengths.
pub fn enumerate_terms(alphabet: &crate::alphabet::Alphabet, length: u32) -> Vec<Term> {
    assert!(length >= 1);
    if length == 1 {
        return alphabet.gens().map(Term::leaf).collect();
    }
    let mut out = Vec::new();
    for left_len in 1..length {
        for l in enumerate_terms(alphabet, left_len) {
            for r in enumerate_terms(alphabet, length - left_len) {
                out.push(Term::product(l.clone(), r));
            }
        }
    }
    out
}

// Deterministic total order used for canonical storage of linear
// combinations: by length, then root, then structural recursion comparing
// generator ranks. No algebraic meaning, only reproducible output.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.root().cmp(&other.root()))
            .then_with(|| match (self, other) {
                (Term::Leaf(a), Term::Leaf(b)) => a.cmp(b),
                (Term::Node(a), Term::Node(b)) => {
                    a.left.cmp(&b.left).then_with(|| a.right.cmp(&b.right))
                }
                // equal lengths rule out leaf-vs-node mismatches, but keep a
                // total answer anyway
                (Term::Leaf(_), Term::Node(_)) => Ordering::Less,
                (Term::Node(_), Term::Leaf(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
