//! Identity-driven normal forms: rewriting arbitrary terms into linear
//! combinations of tableaux using only the two defining identities.
//!
//! Every step is an exact identity in the free algebra, applied to a subterm
//! in context:
//!
//! * right supercommutativity swaps the two right operands of a double
//!   product at the cost of a Koszul sign, with no extra terms;
//! * left supersymmetry swaps two adjacent letters inside a simple term at
//!   the cost of a Koszul sign plus two correction terms whose root number
//!   is strictly larger;
//! * when the two letters being swapped are equal and odd, the same identity
//!   reads `m = -m + 2c`, so `m` collapses exactly to the single
//!   higher-root term `c` (coefficients form a field of characteristic 0).
//!
//! Correction terms keep their length and strictly increase their root
//! number, and the root is bounded by `length - 1`, so recursing on
//! corrections is well founded. The engine normalizes a product of two
//! normal forms by sorting its simple factors, permuting the freely
//! exchangeable letter pool (the head plus every non-innermost letter) into
//! the canonical descending arrangement, and resolving repeated odd letters
//! by collapses; pairs of equal-shape factors with the same odd innermost
//! letter cancel through a closed chain of interchanges that returns to the
//! starting pair with opposite sign.

use std::collections::HashMap;

use num_traits::One;
use thiserror::Error;

use crate::alphabet::{Gen, Parity, Sign};
use crate::element::{rat, sign_rat, GdnElement, Rat};
use crate::tableau::Tableau;
use crate::term::{left_normed, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("operand is not a simple term")]
    NotSimple,
    #[error("letter position {pos} out of range 2..={max}")]
    PositionOutOfRange { pos: usize, max: usize },
    #[error("invalid permutation: must fix position 1 and permute 1..=length")]
    BadPermutation,
}

/// Left supersymmetry defect
/// `x(yz) - (xy)z - (-1)^{|x||y|} ( y(xz) - (yx)z )`, as a formal
/// four-term combination. Terms are parity-homogeneous by construction.
pub fn ls_defect(x: &Term, y: &Term, z: &Term) -> GdnElement {
    let s = sign_rat(x.parity().swap_sign(y.parity()));
    let mut e = GdnElement::zero();
    e.add_term(
        Term::product(x.clone(), Term::product(y.clone(), z.clone())),
        Rat::one(),
    );
    e.add_term(
        Term::product(Term::product(x.clone(), y.clone()), z.clone()),
        -Rat::one(),
    );
    e.add_term(
        Term::product(y.clone(), Term::product(x.clone(), z.clone())),
        -s.clone(),
    );
    e.add_term(
        Term::product(Term::product(y.clone(), x.clone()), z.clone()),
        s,
    );
    e
}

/// Right supercommutativity defect `(xy)z - (-1)^{|y||z|} (xz)y`.
pub fn rc_defect(x: &Term, y: &Term, z: &Term) -> GdnElement {
    let s = sign_rat(y.parity().swap_sign(z.parity()));
    let mut e = GdnElement::zero();
    e.add_term(
        Term::product(Term::product(x.clone(), y.clone()), z.clone()),
        Rat::one(),
    );
    e.add_term(
        Term::product(Term::product(x.clone(), z.clone()), y.clone()),
        -s,
    );
    e
}

// ---------------------------------------------------------------------------
// Letters and atomic identities
//
// Simple terms are handled as letter vectors stored innermost first:
// `letters[k]` is the letter at position `k + 1`, so `letters[0]` is the
// innermost letter and the last entry is the outermost one.
// ---------------------------------------------------------------------------

fn letters_parity(letters: &[Gen]) -> Parity {
    letters
        .iter()
        .fold(Parity::Even, |acc, g| acc.combine(g.parity()))
}

/// Simple term from innermost-first letters.
fn simple_of(letters: &[Gen]) -> Term {
    let mut it = letters.iter();
    let first = Term::leaf(*it.next().expect("nonempty letters"));
    it.fold(first, |acc, &g| Term::product(Term::leaf(g), acc))
}

/// Right-normed product of parts given innermost first.
fn right_normed_inner(parts: Vec<Term>) -> Term {
    let mut it = parts.into_iter();
    let first = it.next().expect("nonempty parts");
    it.fold(first, |acc, t| Term::product(t, acc))
}

/// Exact identity swapping positions `p + 1` and `p` (`p >= 2`) inside a
/// simple term: `m = sign * m_swapped + c1 - sign * c2`, where the
/// corrections replace the two letters by their product in either order and
/// have root 2.
fn swap_identity(letters: &[Gen], p: usize) -> (Sign, Vec<Gen>, Vec<(Rat, Term)>) {
    debug_assert!(p >= 2 && p < letters.len());
    let x = letters[p]; // position p + 1
    let y = letters[p - 1]; // position p
    let sign = x.parity().swap_sign(y.parity());
    let mut swapped = letters.to_vec();
    swapped.swap(p, p - 1);

    let correction = |top: Gen, bottom: Gen| {
        let mut parts: Vec<Term> = letters[..p - 1].iter().map(|&g| Term::leaf(g)).collect();
        parts.push(Term::product(Term::leaf(top), Term::leaf(bottom)));
        parts.extend(letters[p + 1..].iter().map(|&g| Term::leaf(g)));
        right_normed_inner(parts)
    };
    let c1 = correction(x, y);
    let c2 = correction(y, x);
    (sign, swapped, vec![(Rat::one(), c1), (-sign_rat(sign), c2)])
}

/// Exact collapse of a repeated odd letter at positions `p + 1`, `p`: the
/// swap identity degenerates to `m = -m + 2c`, hence `m = c` with
/// `c` the same word with the two letters fused into their square.
fn collapse_identity(letters: &[Gen], p: usize) -> Term {
    let x = letters[p];
    debug_assert!(x == letters[p - 1] && x.parity().is_odd());
    let mut parts: Vec<Term> = letters[..p - 1].iter().map(|&g| Term::leaf(g)).collect();
    parts.push(Term::product(Term::leaf(x), Term::leaf(x)));
    parts.extend(letters[p + 1..].iter().map(|&g| Term::leaf(g)));
    right_normed_inner(parts)
}

// ---------------------------------------------------------------------------
// Pair state: a product of two simple words under exact rewriting
// ---------------------------------------------------------------------------

/// Product `(simple(l) * simple(r))` evolving under exact steps. The
/// invariant is `original = sign * (simple(l) * simple(r)) + corrections`,
/// where corrections are full product terms collected with coefficients.
struct PairState {
    l: Vec<Gen>,
    r: Vec<Gen>,
    sign: Sign,
    corrections: Vec<(Rat, Term)>,
}

impl PairState {
    fn new(l: Vec<Gen>, r: Vec<Gen>) -> PairState {
        PairState {
            l,
            r,
            sign: Sign::Plus,
            corrections: Vec::new(),
        }
    }

    /// Swap positions `p + 1`, `p` in the left word; equal letters need no
    /// step at all.
    fn swap_l(&mut self, p: usize) {
        if self.l[p] == self.l[p - 1] {
            return;
        }
        let (s, swapped, corrs) = swap_identity(&self.l, p);
        let r_term = simple_of(&self.r);
        for (coeff, c) in corrs {
            self.corrections.push((
                sign_rat(self.sign) * coeff,
                Term::product(c, r_term.clone()),
            ));
        }
        self.sign *= s;
        self.l = swapped;
    }

    /// Transpose entries at vector indices `hi > lo >= 1` of the left word
    /// by adjacent swaps: bubble the top entry down, then the displaced
    /// entry back up.
    fn transpose_l(&mut self, hi: usize, lo: usize) {
        debug_assert!(hi > lo && lo >= 1);
        if self.l[hi] == self.l[lo] {
            return;
        }
        for i in (lo..hi).rev() {
            self.swap_l(i + 1);
        }
        for i in lo + 1..hi {
            self.swap_l(i + 1);
        }
    }

    /// Right supercommutativity on `((top * rest) * r)`: the left word's top
    /// letter keeps its place on top of the old right word, and the rest
    /// becomes the new right word.
    fn rc(&mut self) {
        let top = *self.l.last().expect("left word is nonempty");
        let rest = self.l[..self.l.len() - 1].to_vec();
        self.sign *= letters_parity(&rest).swap_sign(letters_parity(&self.r));
        let mut new_l = self.r.clone();
        new_l.push(top);
        self.l = new_l;
        self.r = rest;
    }

    /// Rotates the top letter of the left word down to vector index `lo`,
    /// shifting the letters in between up by one.
    fn sink_top(&mut self, lo: usize) {
        let hi = self.l.len() - 1;
        for p in (lo + 1..=hi).rev() {
            self.swap_l(p);
        }
    }

    /// Exchange the letter at position `i` of the left word with the letter
    /// at position `j` of the right word (`2 <= i`, `2 <= j`, the innermost
    /// letters stay put), composing the atomic identities.
    fn interchange(&mut self, i: usize, j: usize) {
        let lm = self.l.len();
        // extract position i to the top of the left word
        for p in i..lm {
            self.swap_l(p);
        }
        self.rc();
        // the left word is now [old right word..., mover]; transpose the
        // mover with position j, sending that letter to the top
        let hi = self.l.len() - 1;
        self.transpose_l(hi, j - 1);
        self.rc();
        // left word is [old left word minus mover..., swapped-in letter];
        // insert it back at position i
        self.sink_top(i - 1);
    }
}

/// Koszul sign of the closed-form interchange rule: exchanging the letter at
/// position `i` of `mu` with the letter at position `j` of `nu` in
/// `(mu * nu)` costs
/// `(-1)^{|a_i| |a_{i-1}..a_1 b_m..b_j| + |b_j| |a_{i-1}..a_1 b_m..b_{j+1}|}`.
pub fn interchange_sign(mu: &[Gen], nu: &[Gen], i: usize, j: usize) -> Sign {
    let ai = mu[i - 1].parity();
    let bj = nu[j - 1].parity();
    let below_a = letters_parity(&mu[..i - 1]);
    let nu_from_j1 = letters_parity(&nu[j..]);
    let first = below_a.combine(nu_from_j1).combine(bj);
    let second = below_a.combine(nu_from_j1);
    ai.swap_sign(first) * bj.swap_sign(second)
}

/// Interchange of letters between two simple terms: the exact identity
/// `(mu * nu) = sign * (mu' * nu') + correction`, where `mu'`, `nu'` swap
/// the letters at positions `i` of `mu` and `j` of `nu` (counted from the
/// innermost letter, which is position 1 and cannot move), and every
/// correction term has the same length and strictly larger root.
pub fn interchange(
    mu: &Term,
    nu: &Term,
    i: usize,
    j: usize,
) -> Result<(Sign, Term, Term, GdnElement), RewriteError> {
    let mut ml = mu.simple_letters().ok_or(RewriteError::NotSimple)?;
    let mut nl = nu.simple_letters().ok_or(RewriteError::NotSimple)?;
    ml.reverse();
    nl.reverse();
    if ml.len() < 2 || nl.len() < 2 {
        return Err(RewriteError::NotSimple);
    }
    if i < 2 || i > ml.len() {
        return Err(RewriteError::PositionOutOfRange {
            pos: i,
            max: ml.len(),
        });
    }
    if j < 2 || j > nl.len() {
        return Err(RewriteError::PositionOutOfRange {
            pos: j,
            max: nl.len(),
        });
    }
    let mut st = PairState::new(ml, nl);
    st.interchange(i, j);
    let mut correction = GdnElement::zero();
    let base_root = Term::product(mu.clone(), nu.clone()).root();
    for (coeff, t) in &st.corrections {
        debug_assert!(t.root() > base_root);
        debug_assert_eq!(t.length(), mu.length() + nu.length());
        correction.add_term(t.clone(), coeff.clone());
    }
    Ok((st.sign, simple_of(&st.l), simple_of(&st.r), correction))
}

/// Rearranges the letters of a simple term: `perm[k]` is the source position
/// of the letter landing at position `k + 1`, and position 1 must stay
/// fixed. Returns the exact identity `mu = sign * mu' + correction`.
pub fn reorder_tail(mu: &Term, perm: &[usize]) -> Result<(Sign, Term, GdnElement), RewriteError> {
    let mut letters = mu.simple_letters().ok_or(RewriteError::NotSimple)?;
    letters.reverse();
    let n = letters.len();
    if perm.len() != n {
        return Err(RewriteError::BadPermutation);
    }
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(RewriteError::BadPermutation);
        }
        seen[p] = true;
    }
    if perm[0] != 1 {
        return Err(RewriteError::BadPermutation);
    }

    // selection by positions: bring the wanted source letter into each slot,
    // molding the current arrangement from the outside in
    let mut st = PairState::new(letters, Vec::new());
    // track where each original position currently sits
    let mut location: Vec<usize> = (0..n).collect(); // location[src] = index
    for target_idx in (1..n).rev() {
        let src = perm[target_idx] - 1;
        let cur = location[src];
        debug_assert!(cur <= target_idx);
        if cur == target_idx {
            continue;
        }
        // bubble the source letter up to the target index
        for idx in cur..target_idx {
            st.swap_l_tracked(idx + 1, &mut location);
        }
    }
    let mu2 = simple_of(&st.l);
    let mut correction = GdnElement::zero();
    for (coeff, t) in &st.corrections {
        debug_assert!(t.root() > mu.root());
        debug_assert_eq!(t.length(), mu.length());
        correction.add_term(t.clone(), coeff.clone());
    }
    Ok((st.sign, mu2, correction))
}

impl PairState {
    /// Swap with bookkeeping of where original positions went. Equal letters
    /// still need the swap here, because positions are tracked by identity;
    /// for equal odd letters the algebraic step is skipped (content is
    /// unchanged) but the tracking still updates.
    fn swap_l_tracked(&mut self, p: usize, location: &mut [usize]) {
        if self.l[p] != self.l[p - 1] {
            let (s, swapped, corrs) = swap_identity(&self.l, p);
            let r_empty = self.r.is_empty();
            for (coeff, c) in corrs {
                let term = if r_empty {
                    c
                } else {
                    Term::product(c, simple_of(&self.r))
                };
                self.corrections
                    .push((sign_rat(self.sign) * coeff, term));
            }
            self.sign *= s;
            self.l = swapped;
        } else {
            self.l.swap(p, p - 1);
        }
        for loc in location.iter_mut() {
            if *loc == p {
                *loc = p - 1;
            } else if *loc == p - 1 {
                *loc = p;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The rewriting engine
// ---------------------------------------------------------------------------

/// Normal-form engine with a term-level memo. The memo is sound across
/// alphabets because generators carry their rank and parity.
#[derive(Default)]
pub struct Rewriter {
    memo: HashMap<Term, GdnElement>,
}

/// One-shot normal form of an element.
pub fn nf_rewrite(e: &GdnElement) -> GdnElement {
    Rewriter::new().nf(e)
}

impl Rewriter {
    pub fn new() -> Rewriter {
        Rewriter::default()
    }

    /// Linear extension of the term normal form.
    pub fn nf(&mut self, e: &GdnElement) -> GdnElement {
        let mut out = GdnElement::zero();
        for (t, c) in e.iter() {
            out.add_assign(&self.nf_term(t).scale(c));
        }
        out
    }

    /// Normal form of a single term as a combination of tableaux.
    pub fn nf_term(&mut self, t: &Term) -> GdnElement {
        if let Some(hit) = self.memo.get(t) {
            return hit.clone();
        }
        let result = self.compute(t);
        debug_assert!(result
            .iter()
            .all(|(u, _)| u.length() == t.length() && u.root() >= t.root()));
        self.memo.insert(t.clone(), result.clone());
        result
    }

    fn compute(&mut self, t: &Term) -> GdnElement {
        if t.length() <= 2 {
            // generators and products of two generators are tableaux
            return GdnElement::from_term(t.clone());
        }
        let (l, r) = t.as_product().expect("length > 2");
        let (l, r) = (l.clone(), r.clone());
        let el = self.nf_term(&l);
        let er = self.nf_term(&r);
        let single = |e: &GdnElement, t: &Term| e.len() == 1 && e.coeff(t).is_one();
        if single(&el, &l) && single(&er, &r) {
            return self.tableau_pair(&l, &r);
        }
        let mut out = GdnElement::zero();
        for (lt, lc) in el.iter() {
            for (rt, rc) in er.iter() {
                let prod = Term::product(lt.clone(), rt.clone());
                out.add_assign(&self.nf_term(&prod).scale(&(lc * rc)));
            }
        }
        out
    }

    /// Product of two tableaux.
    fn tableau_pair(&mut self, mu: &Term, nu: &Term) -> GdnElement {
        let mt = Tableau::decompose(mu).expect("normal forms are tableaux");
        if let Some(mut nl) = nu.simple_letters() {
            nl.reverse();
            let mut factors: Vec<Vec<Gen>> =
                mt.factors().iter().map(|f| f.to_vec()).collect();
            factors.push(nl);
            return self.main_case(mt.head(), factors);
        }
        let nt = Tableau::decompose(nu).expect("normal forms are tableaux");
        if mu.length() >= 2 {
            // rotate the non-simple right operand inward:
            // (mu * nu) = +-(([head, f_1..f_{p-1}] * nu) * f_p)
            let factors = mt.factors();
            let p = factors.len();
            let last = factors[p - 1].clone();
            let prefix = Tableau::new(mt.head(), factors[..p - 1].to_vec())
                .expect("prefix of a tableau is a tableau")
                .to_term();
            let last_term = simple_of(&last);
            let sign = nu.parity().swap_sign(last_term.parity());
            let inner = self.nf_term(&Term::product(prefix, nu.clone()));
            let mut out = GdnElement::zero();
            for (tau, c) in inner.iter() {
                let tab = Tableau::decompose(tau).expect("normal forms are tableaux");
                let mut fs: Vec<Vec<Gen>> =
                    tab.factors().iter().map(|f| f.to_vec()).collect();
                fs.push(last.clone());
                out.add_assign(&self.main_case(tab.head(), fs).scale(c));
            }
            return out.scale(&sign_rat(sign));
        }
        // mu is a single letter and nu is a tableau with at least two
        // factors; peel nu's last factor z by left supersymmetry:
        // (a * (w * z)) = ((a*w)*z) + s (w*(a*z)) - s ((w*a)*z)
        let a = mu.as_leaf().expect("length-1 term is a leaf");
        let factors = nt.factors();
        let q = factors.len();
        debug_assert!(q >= 2);
        let z = factors[q - 1].clone();
        let w_tab = Tableau::new(nt.head(), factors[..q - 1].to_vec())
            .expect("prefix of a tableau is a tableau");
        let w = w_tab.to_term();
        let s = a.parity().swap_sign(w.parity());

        let mut out = GdnElement::zero();

        // ((a*w)*z)
        let aw = self.nf_term(&Term::product(Term::leaf(a), w.clone()));
        for (tau, c) in aw.iter() {
            let tab = Tableau::decompose(tau).expect("normal forms are tableaux");
            let mut fs: Vec<Vec<Gen>> = tab.factors().iter().map(|f| f.to_vec()).collect();
            fs.push(z.clone());
            out.add_assign(&self.main_case(tab.head(), fs).scale(c));
        }

        // + s (w*(a*z))
        let az = self.nf_term(&Term::product(Term::leaf(a), simple_of(&z)));
        for (sigma, c) in az.iter() {
            let part = self.tableau_pair(&w, sigma);
            out.add_assign(&part.scale(&(sign_rat(s) * c)));
        }

        // - s ((w*a)*z)
        let mut wa_factors: Vec<Vec<Gen>> =
            w_tab.factors().iter().map(|f| f.to_vec()).collect();
        wa_factors.push(vec![a]);
        let wa = self.main_case(w_tab.head(), wa_factors);
        for (rho, c) in wa.iter() {
            let tab = Tableau::decompose(rho).expect("normal forms are tableaux");
            let mut fs: Vec<Vec<Gen>> = tab.factors().iter().map(|f| f.to_vec()).collect();
            fs.push(z.clone());
            out.add_assign(&self.main_case(tab.head(), fs).scale(&(-sign_rat(s) * c)));
        }
        out
    }

    /// Normalizes `[head, factors...]` in left-normed bracketing, all
    /// factors simple.
    fn main_case(&mut self, head: Gen, factors: Vec<Vec<Gen>>) -> GdnElement {
        if factors.is_empty() {
            return GdnElement::from_term(Term::leaf(head));
        }
        let vm = MainCase::new(head, factors);
        let (main, pending) = vm.run();
        let mut out = match main {
            Some((sign, tab)) => GdnElement::single(tab.to_term(), sign_rat(sign)),
            None => GdnElement::zero(),
        };
        for (coeff, term) in pending {
            out.add_assign(&self.nf_term(&term).scale(&coeff));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Main-case machine
// ---------------------------------------------------------------------------

/// Rewrites `[head, factors...]` with simple factors into a single tableau
/// plus higher-root corrections, or into corrections alone. Factor letters
/// are stored innermost first. The invariant throughout is
/// `original = sign * [head, factors...] + pending`.
struct MainCase {
    head: Gen,
    factors: Vec<Vec<Gen>>,
    sign: Sign,
    pending: Vec<(Rat, Term)>,
    total_len: u32,
    base_root: u32,
}

/// Chain slot: a letter position that participates in the descending chain,
/// identified by factor index and letter index (which is >= 1; index 0 is
/// the innermost letter and never part of the chain).
type Slot = (usize, usize);

/// Outcome of the main-case machine: the surviving signed tableau, if the
/// term did not dissolve entirely, plus correction terms to normalize.
type MainOutcome = (Option<(Sign, Tableau)>, Vec<(Rat, Term)>);

impl MainCase {
    fn new(head: Gen, factors: Vec<Vec<Gen>>) -> MainCase {
        let total_len = 1 + factors.iter().map(|f| f.len() as u32).sum::<u32>();
        let base_root = factors.len() as u32;
        MainCase {
            head,
            factors,
            sign: Sign::Plus,
            pending: Vec::new(),
            total_len,
            base_root,
        }
    }

    fn run(mut self) -> MainOutcome {
        self.sort_factors();
        if self.vanishes_by_identical_odd_factors() {
            return (None, self.pending);
        }
        if self.resolve_pool_duplicate() {
            return (None, self.pending);
        }
        if self.resolve_equal_innermost_pair() {
            return (None, self.pending);
        }
        self.arrange_pool();
        let tab = Tableau::new(self.head, self.factors.clone())
            .expect("arranged duplicate-free pool forms a tableau");
        (Some((self.sign, tab)), self.pending)
    }

    // -- exact step primitives ----------------------------------------------

    fn emit(&mut self, coeff: Rat, term: Term) {
        debug_assert_eq!(term.length(), self.total_len);
        debug_assert!(term.root() > self.base_root);
        self.pending.push((coeff, term));
    }

    fn context_with_factor_term(&self, idx: usize, replacement: Term) -> Term {
        let mut parts = Vec::with_capacity(1 + self.factors.len());
        parts.push(Term::leaf(self.head));
        for (k, f) in self.factors.iter().enumerate() {
            if k == idx {
                parts.push(replacement.clone());
            } else {
                parts.push(simple_of(f));
            }
        }
        left_normed(parts)
    }

    fn context_with_nucleus(&self, nucleus: Term, skip: usize) -> Term {
        let mut parts = Vec::with_capacity(self.factors.len());
        parts.push(nucleus);
        for f in self.factors.iter().skip(skip) {
            parts.push(simple_of(f));
        }
        left_normed(parts)
    }

    /// Adjacent swap of two factors, by right supercommutativity.
    fn swap_factors(&mut self, k: usize) {
        let s = letters_parity(&self.factors[k]).swap_sign(letters_parity(&self.factors[k + 1]));
        self.factors.swap(k, k + 1);
        self.sign *= s;
    }

    /// Moves the factor at `from` to `to <= from`, shifting the others.
    fn move_factor(&mut self, from: usize, to: usize) {
        for k in (to..from).rev() {
            self.swap_factors(k);
        }
    }

    /// Bubble sort of factors by content key, descending: length, then
    /// innermost letter, then remaining letters. Equal factors never swap.
    fn sort_factors(&mut self) {
        let key = |f: &Vec<Gen>| (f.len(), f[0], f[1..].to_vec());
        let n = self.factors.len();
        for _ in 0..n {
            let mut swapped = false;
            for k in 0..n - 1 {
                if key(&self.factors[k]) < key(&self.factors[k + 1]) {
                    self.swap_factors(k);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
    }

    /// Two identical adjacent factors of odd parity force the term to zero:
    /// swapping them is a sign flip that fixes the term.
    fn vanishes_by_identical_odd_factors(&self) -> bool {
        self.factors.windows(2).any(|w| {
            w[0] == w[1] && letters_parity(&w[0]).is_odd()
        })
    }

    /// Swap inside factor `f` at letter positions `p + 1`, `p`; corrections
    /// keep the factor slot.
    fn swap_in_factor(&mut self, f: usize, p: usize) {
        if self.factors[f][p] == self.factors[f][p - 1] {
            return;
        }
        let (s, swapped, corrs) = swap_identity(&self.factors[f], p);
        for (coeff, c) in corrs {
            let term = self.context_with_factor_term(f, c);
            self.emit(sign_rat(self.sign) * coeff, term);
        }
        self.sign *= s;
        self.factors[f] = swapped;
    }

    /// Swap inside the word `factors[0] ++ [head]` (the head rides on top of
    /// the leading factor); corrections replace that whole leading product.
    fn swap_in_nucleus(&mut self, p: usize) {
        let mut word = self.factors[0].clone();
        word.push(self.head);
        if word[p] == word[p - 1] {
            return;
        }
        let (s, swapped, corrs) = swap_identity(&word, p);
        for (coeff, c) in corrs {
            let term = self.context_with_nucleus(c, 1);
            self.emit(sign_rat(self.sign) * coeff, term);
        }
        self.sign *= s;
        self.head = *swapped.last().unwrap();
        self.factors[0] = swapped[..swapped.len() - 1].to_vec();
    }

    fn transpose_in_factor(&mut self, f: usize, hi: usize, lo: usize) {
        debug_assert!(hi > lo && lo >= 1);
        if self.factors[f][hi] == self.factors[f][lo] {
            return;
        }
        for i in (lo..hi).rev() {
            self.swap_in_factor(f, i + 1);
        }
        for i in lo + 1..hi {
            self.swap_in_factor(f, i + 1);
        }
    }

    /// Transpose the head with the letter at index `lo` of factor 0.
    fn transpose_head(&mut self, lo: usize) {
        let hi = self.factors[0].len(); // head's index in the nucleus word
        debug_assert!(lo >= 1 && lo < hi);
        let mut word = self.factors[0].clone();
        word.push(self.head);
        if word[hi] == word[lo] {
            return;
        }
        for i in (lo..hi).rev() {
            self.swap_in_nucleus(i + 1);
        }
        for i in lo + 1..hi {
            self.swap_in_nucleus(i + 1);
        }
    }

    /// Deliberate collapse of the repeated odd head letter against the
    /// outermost letter of factor 0: the nucleus becomes a single term with
    /// the square fused, and the whole term moves to the corrections.
    fn collapse_nucleus_top(&mut self) {
        let mut word = self.factors[0].clone();
        word.push(self.head);
        let p = word.len() - 1;
        let replacement = collapse_identity(&word, p);
        let term = self.context_with_nucleus(replacement, 1);
        self.emit(sign_rat(self.sign), term);
    }

    // -- chain slots and the letter pool -------------------------------------

    fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        for (f, letters) in self.factors.iter().enumerate() {
            for idx in (1..letters.len()).rev() {
                out.push((f, idx));
            }
        }
        out
    }

    fn slot_value(&self, (f, idx): Slot) -> Gen {
        self.factors[f][idx]
    }

    /// The freely permutable letters: the head plus every chain slot.
    fn pool(&self) -> Vec<Gen> {
        let mut pool = vec![self.head];
        pool.extend(self.slots().iter().map(|&s| self.slot_value(s)));
        pool
    }

    /// An odd letter occurring twice in the pool, if any.
    fn pool_duplicate(&self) -> Option<Gen> {
        let mut odds: Vec<Gen> = self
            .pool()
            .into_iter()
            .filter(|g| g.parity().is_odd())
            .collect();
        odds.sort();
        odds.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
    }

    /// Eliminates the term when an odd letter repeats in the pool: make it
    /// the head, bring the second copy to the outermost position of the
    /// leading factor, and collapse the square. Exact, no halving needed.
    fn resolve_pool_duplicate(&mut self) -> bool {
        let Some(dup) = self.pool_duplicate() else {
            return false;
        };
        if self.head != dup {
            let slot = self
                .slots()
                .into_iter()
                .find(|&s| self.slot_value(s) == dup)
                .expect("duplicate letter sits in some slot");
            self.move_factor(slot.0, 0);
            self.transpose_head(slot.1);
            debug_assert_eq!(self.head, dup);
        }
        // a second copy remains in some slot
        let slot = self
            .slots()
            .into_iter()
            .find(|&s| self.slot_value(s) == dup)
            .expect("second copy sits in some slot");
        let outer = (0usize, self.factors[0].len() - 1);
        if slot != outer && self.slot_value(outer) != dup {
            self.transpose_slots(outer, slot);
        }
        debug_assert_eq!(self.slot_value((0, self.factors[0].len() - 1)), dup);
        self.collapse_nucleus_top();
        true
    }

    /// Transposes the letters at two chain slots. For slots in different
    /// factors the two factors are brought to the front and the letters are
    /// exchanged through the interchange chain on the nucleus pair.
    fn transpose_slots(&mut self, a: Slot, b: Slot) {
        if self.slot_value(a) == self.slot_value(b) {
            return;
        }
        if a.0 == b.0 {
            let (hi, lo) = if a.1 > b.1 { (a.1, b.1) } else { (b.1, a.1) };
            self.transpose_in_factor(a.0, hi, lo);
            return;
        }
        let ((fa, ia), (fb, ib)) = if a.0 < b.0 { (a, b) } else { (b, a) };
        self.move_factor(fa, 0);
        let fb_now = if fb < fa { fb + 1 } else { fb };
        self.move_factor(fb_now, 1);

        let mut word = self.factors[0].clone();
        word.push(self.head);
        let mut st = PairState::new(word, self.factors[1].clone());
        st.interchange(ia + 1, ib + 1);
        self.harvest_pair(st);
    }

    /// Writes a pair state back into head/factors 0, 1 and re-emits its
    /// corrections wrapped in the trailing-factor context.
    fn harvest_pair(&mut self, st: PairState) {
        for (coeff, t) in &st.corrections {
            let term = self.context_with_nucleus(t.clone(), 2);
            self.emit(sign_rat(self.sign) * coeff, term);
        }
        self.sign *= st.sign;
        self.head = *st.l.last().unwrap();
        self.factors[0] = st.l[..st.l.len() - 1].to_vec();
        self.factors[1] = st.r;
    }

    /// Resolves a pair of equal-length factors with the same odd innermost
    /// letter: interchanging every non-innermost letter and closing with one
    /// right-supercommutativity step returns to the starting pair with the
    /// opposite sign, so twice the term equals the collected corrections.
    fn resolve_equal_innermost_pair(&mut self) -> bool {
        let pair = self.factors.windows(2).position(|w| {
            w[0].len() == w[1].len() && w[0][0] == w[1][0] && w[0][0].parity().is_odd()
        });
        let Some(f) = pair else {
            return false;
        };
        self.move_factor(f, 0);
        self.move_factor(f + 1, 1);

        let rho = self.factors[0].len();
        let mut word = self.factors[0].clone();
        word.push(self.head);
        let l0 = word.clone();
        let r0 = self.factors[1].clone();
        let mut st = PairState::new(word, self.factors[1].clone());
        for k in 2..=rho {
            st.interchange(k, k);
        }
        st.rc();
        assert_eq!(st.l, l0, "interchange cycle must close");
        assert_eq!(st.r, r0, "interchange cycle must close");
        assert_eq!(st.sign, Sign::Minus, "closed cycle flips the sign");
        // (1 - (-1)) * nucleus = corrections, so nucleus = corrections / 2
        let half = rat(1) / rat(2);
        for (coeff, t) in &st.corrections {
            let term = self.context_with_nucleus(t.clone(), 2);
            self.emit(sign_rat(self.sign) * coeff * half.clone(), term);
        }
        true
    }

    /// Rearranges the pool into the canonical non-increasing order: the head
    /// becomes the largest pool letter and the chain slots receive the rest
    /// in descending order. One mismatch is fixed per pass; factors are
    /// re-sorted after every fix so the slot layout stays canonical.
    fn arrange_pool(&mut self) {
        let budget = 2 * self.pool().len() + 8;
        let mut steps = 0;
        loop {
            steps += 1;
            assert!(steps <= budget, "pool arrangement failed to converge");
            let slots = self.slots();
            let mut target = self.pool();
            target.sort();
            target.reverse();
            if self.head != target[0] {
                let s = slots
                    .iter()
                    .copied()
                    .find(|&s| self.slot_value(s) == target[0])
                    .expect("maximal letter sits in some slot");
                self.move_factor(s.0, 0);
                self.transpose_head(s.1);
                self.sort_factors();
                continue;
            }
            let mismatch = (0..slots.len())
                .find(|&k| self.slot_value(slots[k]) != target[k + 1]);
            let Some(k) = mismatch else {
                return;
            };
            let donor = (k + 1..slots.len())
                .find(|&s| self.slot_value(slots[s]) == target[k + 1])
                .expect("wanted letter sits in a later slot");
            self.transpose_slots(slots[k], slots[donor]);
            self.sort_factors();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::embed::{nf_embed, phi};
    use crate::parse::{parse_element, parse_term};
    use crate::tableau::is_tableau;
    use crate::term::enumerate_terms;

    fn alpha() -> Alphabet {
        Alphabet::parse("x:0,y:0,xi:1,eta:1").unwrap()
    }

    fn term(src: &str) -> Term {
        parse_term(src, &alpha()).unwrap()
    }

    fn elem(src: &str) -> GdnElement {
        parse_element(src, &alpha()).unwrap()
    }

    #[test]
    fn nf_matches_spec_values() {
        let mut rw = Rewriter::new();
        assert_eq!(
            rw.nf_term(&term("(x*(y*x))")),
            elem("((x*y)*x) + (y*(x*x)) - ((y*x)*x)")
        );
        assert_eq!(rw.nf_term(&term("((x*xi)*eta)")), elem("- ((x*eta)*xi)"));
        assert!(rw.nf_term(&term("(xi*(xi*xi))")).is_zero());
        let tab = term("(y*(x*xi))");
        assert_eq!(rw.nf_term(&tab), GdnElement::from_term(tab.clone()));
    }

    #[test]
    fn nf_output_is_supported_on_tableaux() {
        let a = alpha();
        let mut rw = Rewriter::new();
        for len in 1..=4 {
            for t in enumerate_terms(&a, len) {
                let nf = rw.nf_term(&t);
                for (u, _) in nf.iter() {
                    assert!(is_tableau(u), "non-tableau in nf of {}", crate::parse::print_term(&t, &a));
                    assert_eq!(u.length(), t.length());
                    assert!(u.root() >= t.root());
                }
            }
        }
    }

    #[test]
    fn nf_is_sound_for_phi_and_agrees_with_embedding() {
        let a = alpha();
        let mut rw = Rewriter::new();
        for len in 1..=4 {
            for t in enumerate_terms(&a, len) {
                let e = GdnElement::from_term(t.clone());
                let nf = rw.nf(&e);
                assert_eq!(
                    phi(&nf),
                    phi(&e),
                    "phi mismatch for {}",
                    crate::parse::print_term(&t, &a)
                );
                assert_eq!(
                    nf,
                    nf_embed(&e),
                    "engine disagreement for {}",
                    crate::parse::print_term(&t, &a)
                );
            }
        }
    }

    #[test]
    fn nf_is_idempotent_and_linear() {
        let mut rw = Rewriter::new();
        let e = elem("(x*(y*x)) - 2 ((xi*x)*(y*eta))");
        let once = rw.nf(&e);
        assert_eq!(rw.nf(&once), once);

        let f = elem("3 (eta*(x*xi))");
        let lhs = rw.nf(&(e.clone().scale(&rat(2)) + f.clone()));
        let rhs = rw.nf(&e).scale(&rat(2)) + rw.nf(&f);
        assert_eq!(lhs, rhs);
        assert!(rw.nf(&GdnElement::zero()).is_zero());
    }

    #[test]
    fn defects_vanish_under_nf() {
        let a = alpha();
        let mut rw = Rewriter::new();
        let gens: Vec<Term> = a.gens().map(Term::leaf).collect();
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    assert!(rw.nf(&ls_defect(x, y, z)).is_zero());
                    assert!(rw.nf(&rc_defect(x, y, z)).is_zero());
                }
            }
        }
    }

    #[test]
    fn ls_defect_has_the_spec_coefficients() {
        let x = term("x");
        let y = term("y");
        let z = term("(y*x)");
        let d = ls_defect(&x, &y, &z);
        assert_eq!(d.len(), 4);
        assert_eq!(d.coeff(&term("(x*(y*(y*x)))")), rat(1));
        assert_eq!(d.coeff(&term("((x*y)*(y*x))")), rat(-1));
        assert_eq!(d.coeff(&term("(y*(x*(y*x)))")), rat(-1));
        assert_eq!(d.coeff(&term("((y*x)*(y*x))")), rat(1));

        // odd-odd pair flips the inner sign
        let d = ls_defect(&term("xi"), &term("eta"), &x);
        assert_eq!(d.coeff(&term("(eta*(xi*x))")), rat(1));
        assert_eq!(d.coeff(&term("((eta*xi)*x)")), rat(-1));
    }

    #[test]
    fn rc_defect_has_the_spec_coefficients() {
        let d = rc_defect(&term("x"), &term("xi"), &term("eta"));
        assert_eq!(d.coeff(&term("((x*xi)*eta)")), rat(1));
        assert_eq!(d.coeff(&term("((x*eta)*xi)")), rat(1));

        let d = rc_defect(&term("x"), &term("y"), &term("(x*x)"));
        assert_eq!(d.coeff(&term("((x*y)*(x*x))")), rat(1));
        assert_eq!(d.coeff(&term("((x*(x*x))*y)")), rat(-1));
    }

    #[test]
    fn interchange_spec_example() {
        // mu = (x*(y*xi)), nu = (y*(x*eta)); swap position-2 letters y and x
        let mu = term("(x*(y*xi))");
        let nu = term("(y*(x*eta))");
        let (sign, mu2, nu2, corr) = interchange(&mu, &nu, 2, 2).unwrap();
        assert_eq!(sign, Sign::Plus);
        assert_eq!(mu2, term("(x*(x*xi))"));
        assert_eq!(nu2, term("(y*(y*eta))"));
        assert!(!corr.is_zero());
        let base = Term::product(mu.clone(), nu.clone());
        for (t, _) in corr.iter() {
            assert_eq!(t.length(), 6);
            assert!(t.root() > base.root());
        }
        // exact identity under phi
        let mut lhs = phi(&GdnElement::from_term(base));
        lhs.sub_assign(&phi(&GdnElement::single(
            Term::product(mu2, nu2),
            sign_rat(sign),
        )));
        lhs.sub_assign(&phi(&corr));
        assert!(lhs.is_zero());
    }

    #[test]
    fn interchange_rejects_bad_positions_and_nonsimple_input() {
        let mu = term("(x*(y*xi))");
        let nu = term("(y*eta)");
        assert!(matches!(
            interchange(&mu, &nu, 1, 2),
            Err(RewriteError::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            interchange(&mu, &nu, 4, 2),
            Err(RewriteError::PositionOutOfRange { .. })
        ));
        let bad = term("((x*y)*xi)");
        assert!(matches!(
            interchange(&bad, &nu, 2, 2),
            Err(RewriteError::NotSimple)
        ));
    }

    #[test]
    fn interchange_sign_matches_closed_form_on_distinct_letters() {
        let a = Alphabet::parse("a:0,b:0,c:1,d:1,e:0,f:1").unwrap();
        let gens: Vec<Gen> = a.gens().collect();
        // mu over letters {0,1,2}, nu over {3,4,5}, all distinct
        let mu_letters = vec![gens[2], gens[1], gens[0]]; // innermost first
        let nu_letters = vec![gens[5], gens[4], gens[3]];
        let mu = simple_of(&mu_letters);
        let nu = simple_of(&nu_letters);
        for i in 2..=3 {
            for j in 2..=3 {
                let (sign, mu2, nu2, corr) = interchange(&mu, &nu, i, j).unwrap();
                assert_eq!(
                    sign,
                    interchange_sign(&mu_letters, &nu_letters, i, j),
                    "closed form mismatch at ({i},{j})"
                );
                // phi-exactness
                let mut lhs = phi(&GdnElement::from_term(Term::product(
                    mu.clone(),
                    nu.clone(),
                )));
                lhs.sub_assign(&phi(&GdnElement::single(
                    Term::product(mu2, nu2),
                    sign_rat(sign),
                )));
                lhs.sub_assign(&phi(&corr));
                assert!(lhs.is_zero(), "identity fails at ({i},{j})");
            }
        }
    }

    #[test]
    fn equal_odd_innermost_pair_reduces_to_higher_roots() {
        // left operand one letter longer, same odd innermost letter on both:
        // the product rewrites into strictly higher-root terms only
        let mut rw = Rewriter::new();
        let p = term("((y*(x*xi))*(y*xi))");
        assert_eq!(p.root(), 2);
        let nf = rw.nf_term(&p);
        assert_eq!(phi(&nf), phi(&GdnElement::from_term(p.clone())));
        assert!(!nf.is_zero());
        for (t, _) in nf.iter() {
            assert!(t.root() > p.root(), "root {} not above 2", t.root());
        }
    }

    #[test]
    fn reorder_tail_spec_example() {
        // [eta, xi, x]_R with positions 2 and 3 swapped
        let mu = term("(eta*(xi*x))");
        let (sign, mu2, corr) = reorder_tail(&mu, &[1, 3, 2]).unwrap();
        assert_eq!(sign, Sign::Minus);
        assert_eq!(mu2, term("(xi*(eta*x))"));
        for (t, _) in corr.iter() {
            assert_eq!(t.length(), 3);
            assert_eq!(t.root(), 2);
        }
        let mut lhs = phi(&GdnElement::from_term(mu));
        lhs.sub_assign(&phi(&GdnElement::single(mu2, sign_rat(sign))));
        lhs.sub_assign(&phi(&corr));
        assert!(lhs.is_zero());

        // identity permutation
        let mu = term("(eta*(xi*x))");
        let (sign, mu2, corr) = reorder_tail(&mu, &[1, 2, 3]).unwrap();
        assert_eq!(sign, Sign::Plus);
        assert_eq!(mu2, mu);
        assert!(corr.is_zero());

        // even letters only: sign +1
        let mu = term("(y*(x*x))");
        let (sign, mu2, _corr) = reorder_tail(&mu, &[1, 3, 2]).unwrap();
        assert_eq!(sign, Sign::Plus);
        assert_eq!(mu2, term("(x*(y*x))"));
    }

    #[test]
    fn reorder_tail_rejects_bad_permutations() {
        let mu = term("(eta*(xi*x))");
        assert_eq!(
            reorder_tail(&mu, &[2, 1, 3]).unwrap_err(),
            RewriteError::BadPermutation
        );
        assert_eq!(
            reorder_tail(&mu, &[1, 2]).unwrap_err(),
            RewriteError::BadPermutation
        );
        assert_eq!(
            reorder_tail(&mu, &[1, 2, 2]).unwrap_err(),
            RewriteError::BadPermutation
        );
    }
}
