//! Supertableaux: the canonical term shapes spanning the free algebra.
//!
//! A tableau is a term `[a, m_1, ..., m_n]` in left-normed bracketing, where
//! `a` is a generator (the head) and each factor `m_i` is a simple term with
//! letters `(a_{i,r_i}, ..., a_{i,1})`, outermost first, subject to:
//!
//! 1. factor lengths never increase: `r_1 >= ... >= r_n`;
//! 2. on equal lengths the innermost letters never increase:
//!    `r_i = r_{i+1}` implies `a_{i,1} >= a_{i+1,1}`;
//! 3. the tail chain never increases: reading the head, then every factor's
//!    letters from position `r_i` down to position 2, the sequence is
//!    non-increasing;
//! 4. no odd letter repeats anywhere in the head-plus-tail chain of (3);
//! 5. adjacent equal-length factors never share an odd innermost letter.
//!
//! Condition (4) includes the head: without it the square of an odd
//! generator inside a cube would pass, yet its image in the differential
//! algebra vanishes, so it cannot be a basis element.

use std::fmt;

use crate::alphabet::Gen;
use crate::term::{left_normed, simple_term, Term};

/// Decomposed canonical shape. `factors[i]` stores the letters of the i-th
/// simple factor innermost first: `factors[i][j-1]` is the letter at
/// position `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    head: Gen,
    factors: Vec<Vec<Gen>>,
}

/// First failed tableau condition, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableauViolation {
    /// Not of the shape head-over-simple-factors at all.
    Shape,
    /// Condition (1): factor lengths increase somewhere.
    FactorLengths,
    /// Condition (2): innermost letters increase within an equal-length run.
    InnermostOrder,
    /// Condition (3): the head-plus-tail chain increases somewhere.
    TailChain,
    /// Condition (4): an odd letter repeats in the head-plus-tail chain.
    OddTailRepeat,
    /// Condition (5): adjacent equal-length factors share an odd innermost
    /// letter.
    OddInnermostRepeat,
}

impl fmt::Display for TableauViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableauViolation::Shape => write!(f, "not of tableau shape"),
            TableauViolation::FactorLengths => write!(f, "condition (1)"),
            TableauViolation::InnermostOrder => write!(f, "condition (2)"),
            TableauViolation::TailChain => write!(f, "condition (3)"),
            TableauViolation::OddTailRepeat => write!(f, "condition (4)"),
            TableauViolation::OddInnermostRepeat => write!(f, "condition (5)"),
        }
    }
}

impl Tableau {
    /// Checks all five conditions on a candidate shape.
    pub fn new(head: Gen, factors: Vec<Vec<Gen>>) -> Result<Tableau, TableauViolation> {
        if factors.iter().any(|f| f.is_empty()) {
            return Err(TableauViolation::Shape);
        }
        let t = Tableau { head, factors };
        t.check()?;
        Ok(t)
    }

    /// Splits a term into head and simple factors and checks the conditions.
    pub fn decompose(term: &Term) -> Result<Tableau, TableauViolation> {
        let mut rights = Vec::new();
        let mut cur = term;
        while let Some((l, r)) = cur.as_product() {
            rights.push(r);
            cur = l;
        }
        let head = cur.as_leaf().ok_or(TableauViolation::Shape)?;
        let mut factors = Vec::with_capacity(rights.len());
        for r in rights.into_iter().rev() {
            let mut letters = r.simple_letters().ok_or(TableauViolation::Shape)?;
            letters.reverse(); // store innermost first
            factors.push(letters);
        }
        Tableau::new(head, factors)
    }

    fn check(&self) -> Result<(), TableauViolation> {
        // (1)
        for w in self.factors.windows(2) {
            if w[0].len() < w[1].len() {
                return Err(TableauViolation::FactorLengths);
            }
        }
        // (2)
        for w in self.factors.windows(2) {
            if w[0].len() == w[1].len() && w[0][0] < w[1][0] {
                return Err(TableauViolation::InnermostOrder);
            }
        }
        // (3)
        let chain: Vec<Gen> = self.chain().collect();
        let mut prev = self.head;
        for &g in &chain {
            if prev < g {
                return Err(TableauViolation::TailChain);
            }
            prev = g;
        }
        // (4)
        let mut odds: Vec<Gen> = std::iter::once(self.head)
            .chain(chain.iter().copied())
            .filter(|g| g.parity().is_odd())
            .collect();
        odds.sort();
        if odds.windows(2).any(|w| w[0] == w[1]) {
            return Err(TableauViolation::OddTailRepeat);
        }
        // (5)
        for w in self.factors.windows(2) {
            if w[0].len() == w[1].len()
                && w[0][0] == w[1][0]
                && w[0][0].parity().is_odd()
            {
                return Err(TableauViolation::OddInnermostRepeat);
            }
        }
        Ok(())
    }

    pub fn head(&self) -> Gen {
        self.head
    }

    /// Factor letters, innermost first.
    pub fn factors(&self) -> &[Vec<Gen>] {
        &self.factors
    }

    pub fn length(&self) -> usize {
        1 + self.factors.iter().map(|f| f.len()).sum::<usize>()
    }

    /// Letters of the tail chain of condition (3), head excluded: factor 1
    /// from its outermost letter down to position 2, then factor 2, ...
    pub fn chain(&self) -> impl Iterator<Item = Gen> + '_ {
        self.factors
            .iter()
            .flat_map(|f| f.iter().skip(1).rev().copied())
    }

    /// Rebuilds the term: left-normed head over right-normed factors.
    pub fn to_term(&self) -> Term {
        let mut parts = Vec::with_capacity(1 + self.factors.len());
        parts.push(Term::leaf(self.head));
        for f in &self.factors {
            let outer_first: Vec<Gen> = f.iter().rev().copied().collect();
            parts.push(simple_term(&outer_first));
        }
        left_normed(parts)
    }
}

/// True when the term already is a tableau.
pub fn is_tableau(term: &Term) -> bool {
    Tableau::decompose(term).is_ok()
}
