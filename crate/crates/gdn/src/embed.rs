//! The embedding of the free algebra into the differential supercommutative
//! algebra, and everything it buys: the leading-monomial formula for
//! tableaux, the induced normal form, and basis enumeration.
//!
//! `phi` sends a generator to itself and a product to the circle product of
//! the images. Restricted to tableaux it is injective: the leading monomial
//! of `phi(tableau)` determines the tableau, its coefficient is +1 or -1,
//! and the weight-0 monomials are exactly the leading monomials that occur.
//! `nf_embed` exploits this by greedy elimination: peel the leading monomial
//! of `phi(e)`, emit the unique tableau owning it, subtract, repeat.

use thiserror::Error;

use crate::alphabet::{Alphabet, Gen, Sign};
use crate::diff::{DFactor, DMonomial, DiffElement};
use crate::element::{sign_rat, GdnElement};
use crate::tableau::Tableau;
use crate::term::Term;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("monomial has weight {0}, expected 0")]
    NonzeroWeight(i64),
}

/// Image of a single term.
pub fn phi_term(t: &Term) -> DiffElement {
    match t.as_product() {
        None => DiffElement::generator(t.as_leaf().unwrap()),
        Some((l, r)) => phi_term(l).circ(&phi_term(r)),
    }
}

/// Linear extension to elements.
pub fn phi(e: &GdnElement) -> DiffElement {
    let mut out = DiffElement::zero();
    for (t, c) in e.iter() {
        out.add_assign(&phi_term(t).scale(c));
    }
    out
}

/// Leading term of `phi` of a simple term with the given letters (innermost
/// first), computed by the product recursion on leading terms alone: the
/// image of `[c_r, ..., c_1]` is `c_r` times the derivative of the image of
/// `[c_{r-1}, ..., c_1]`, the derivative's leading branch bumps the maximal
/// factor, and merging tracks the Koszul sign.
fn lead_phi_simple(letters: &[Gen]) -> (Vec<DFactor>, Sign) {
    let (outer, rest) = letters.split_last().expect("simple term has letters");
    if rest.is_empty() {
        return (vec![DFactor::new(0, *outer)], Sign::Plus);
    }
    let (mut block, sign) = lead_phi_simple(rest);
    let last = block.len() - 1;
    block[last] = block[last].bumped();
    let mut fs = Vec::with_capacity(block.len() + 1);
    fs.push(DFactor::new(0, *outer));
    fs.extend(block);
    let (mono, merge_sign) =
        DMonomial::canonical(fs).expect("leading monomial of a simple term is admissible");
    (mono.factors().to_vec(), sign * merge_sign)
}

/// Leading monomial and leading coefficient of `phi(tableau)`, by the closed
/// recursion rather than by expanding the full image: the order-0 letters are
/// the tail chain read smallest first followed by the head, and factor `i`
/// contributes the derivative factor of order `r_i` on its innermost letter.
pub fn leading_tableau_monomial(tab: &Tableau) -> (DMonomial, Sign) {
    let mut fs = vec![DFactor::new(0, tab.head())];
    let mut sign = Sign::Plus;
    for factor in tab.factors() {
        let (mut block, s) = lead_phi_simple(factor);
        let last = block.len() - 1;
        block[last] = block[last].bumped();
        fs.extend(block);
        sign *= s;
    }
    let (mono, merge_sign) =
        DMonomial::canonical(fs).expect("leading monomial of a tableau is admissible");
    (mono, sign * merge_sign)
}

/// Inverts the leading-monomial formula on a weight-0 monomial: the
/// derivative part read largest-first gives the factor lengths and innermost
/// letters, the largest order-0 letter is the head, and the remaining
/// order-0 letters fill the tail positions ascending from the last factor.
pub fn monomial_to_tableau(u: &DMonomial) -> Result<Tableau, EmbedError> {
    if u.weight() != 0 {
        return Err(EmbedError::NonzeroWeight(u.weight()));
    }
    let mut letters: Vec<Gen> = Vec::new();
    let mut dparts: Vec<DFactor> = Vec::new();
    for &f in u.factors() {
        if f.order() == 0 {
            letters.push(f.gen());
        } else {
            dparts.push(f);
        }
    }
    let head = *letters.last().expect("weight-0 monomial has an order-0 factor");
    let mut tail = letters[..letters.len() - 1].iter().copied();

    // dparts ascend, so they list the factors last-to-first
    let mut factors_rev: Vec<Vec<Gen>> = Vec::with_capacity(dparts.len());
    for d in &dparts {
        let mut letters = Vec::with_capacity(d.order() as usize);
        letters.push(d.gen());
        for _ in 1..d.order() {
            letters.push(tail.next().expect("weight balances tail letters"));
        }
        factors_rev.push(letters);
    }
    assert!(tail.next().is_none(), "weight balances tail letters");
    factors_rev.reverse();
    Ok(Tableau::new(head, factors_rev).expect("admissible weight-0 monomial yields a tableau"))
}

/// Normal form through the embedding: greedy elimination of leading
/// monomials of `phi(e)`. The result is supported on tableaux and has the
/// same image as the input. A leading monomial of nonzero weight cannot
/// arise from a well-formed input and aborts.
pub fn nf_embed(e: &GdnElement) -> GdnElement {
    let mut f = phi(e);
    let mut out = GdnElement::zero();
    while let Some((u, c)) = f.leading() {
        let (u, c) = (u.clone(), c.clone());
        let tab = monomial_to_tableau(&u)
            .unwrap_or_else(|err| panic!("nf_embed: leading monomial not weight-0: {err}"));
        let (lead, sign) = leading_tableau_monomial(&tab);
        debug_assert_eq!(lead, u);
        let coeff = c * sign_rat(sign);
        let term = tab.to_term();
        f.sub_assign(&phi_term(&term).scale(&coeff));
        out.add_term(term, coeff);
    }
    out
}

/// All tableaux of the given length, in a deterministic order: by factor
/// length shape, then head, then letter choices.
pub fn enumerate_tableaux(alphabet: &Alphabet, length: u32) -> Vec<Tableau> {
    assert!(length >= 1);
    let mut out = Vec::new();
    for shape in shapes((length - 1) as usize) {
        for head in alphabet.gens() {
            enumerate_for_shape(alphabet, head, &shape, &mut out);
        }
    }
    out
}

/// Partitions of `total` into non-increasing positive parts (the possible
/// factor length shapes). Includes the empty shape when `total` is 0.
fn shapes(total: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if total == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=total.min(max)).rev() {
            prefix.push(part);
            rec(total - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

fn enumerate_for_shape(
    alphabet: &Alphabet,
    head: Gen,
    shape: &[usize],
    out: &mut Vec<Tableau>,
) {
    // innermost letters: per run of equal lengths, a non-increasing sequence
    // with no repeated odd letter
    let mut runs: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < shape.len() {
        let mut j = i;
        while j < shape.len() && shape[j] == shape[i] {
            j += 1;
        }
        runs.push(j - i);
        i = j;
    }

    let all: Vec<Gen> = alphabet.gens().collect();
    let mut innermost_choices: Vec<Vec<Vec<Gen>>> = vec![Vec::new()];
    for &run in &runs {
        let blocks = descending_no_odd_repeat(&all, run);
        innermost_choices = innermost_choices
            .into_iter()
            .flat_map(|prefix| {
                blocks.iter().map(move |b| {
                    let mut v = prefix.clone();
                    v.push(b.clone());
                    v
                })
            })
            .collect();
    }

    let tail_size: usize = shape.iter().map(|r| r - 1).sum();
    let allowed: Vec<Gen> = alphabet.gens().filter(|g| *g <= head).collect();
    let forbidden = head.parity().is_odd().then_some(head);
    let tails = ascending_no_odd_repeat(&allowed, tail_size, forbidden);

    for innermost in &innermost_choices {
        let inner_flat: Vec<Gen> = innermost.iter().flatten().copied().collect();
        for tail in &tails {
            let mut stream = tail.iter().copied();
            let mut factors_rev: Vec<Vec<Gen>> = Vec::with_capacity(shape.len());
            for (idx, &r) in shape.iter().enumerate().rev() {
                let mut letters = Vec::with_capacity(r);
                letters.push(inner_flat[idx]);
                for _ in 1..r {
                    letters.push(stream.next().unwrap());
                }
                factors_rev.push(letters);
            }
            factors_rev.reverse();
            let tab = Tableau::new(head, factors_rev)
                .expect("shape-first enumeration only assembles valid tableaux");
            out.push(tab);
        }
    }
}

/// Non-increasing sequences of the given size over `gens` with no odd letter
/// repeated.
fn descending_no_odd_repeat(gens: &[Gen], size: usize) -> Vec<Vec<Gen>> {
    fn rec(gens: &[Gen], size: usize, start: usize, prefix: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if size == 0 {
            out.push(prefix.iter().rev().copied().collect());
            return;
        }
        for i in start..gens.len() {
            let g = gens[i];
            let next_start = if g.parity().is_odd() { i + 1 } else { i };
            prefix.push(g);
            rec(gens, size - 1, next_start, prefix, out);
            prefix.pop();
        }
    }
    // build ascending, emit reversed
    let mut out = Vec::new();
    rec(gens, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Non-decreasing sequences of the given size over `gens`, no odd repeats,
/// optionally excluding one odd letter entirely.
fn ascending_no_odd_repeat(
    gens: &[Gen],
    size: usize,
    forbidden: Option<Gen>,
) -> Vec<Vec<Gen>> {
    fn rec(gens: &[Gen], size: usize, start: usize, prefix: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if size == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..gens.len() {
            let g = gens[i];
            let next_start = if g.parity().is_odd() { i + 1 } else { i };
            prefix.push(g);
            rec(gens, size - 1, next_start, prefix, out);
            prefix.pop();
        }
    }
    let filtered: Vec<Gen> = gens
        .iter()
        .copied()
        .filter(|g| Some(*g) != forbidden)
        .collect();
    let mut out = Vec::new();
    rec(&filtered, size, 0, &mut Vec::new(), &mut out);
    out
}

/// All admissible monomials of the given length and weight, deterministic
/// order.
pub fn enumerate_monomials(alphabet: &Alphabet, length: u32, weight: i64) -> Vec<DMonomial> {
    let length = length as usize;
    let total_order = length as i64 + weight - 1;
    if total_order < 0 {
        return Vec::new();
    }
    let all: Vec<Gen> = alphabet.gens().collect();
    let mut out = Vec::new();
    for orders in order_multisets(total_order as usize, length) {
        // group equal orders; within a group letters ascend with no odd
        // repeats (admissibility)
        let mut group_choices: Vec<Vec<DFactor>> = vec![Vec::new()];
        let mut i = 0;
        while i < orders.len() {
            let mut j = i;
            while j < orders.len() && orders[j] == orders[i] {
                j += 1;
            }
            let blocks = ascending_no_odd_repeat(&all, j - i, None);
            let order = orders[i] as u32;
            group_choices = group_choices
                .into_iter()
                .flat_map(|prefix| {
                    blocks.iter().map(move |b| {
                        let mut v = prefix.clone();
                        v.extend(b.iter().map(|&g| DFactor::new(order, g)));
                        v
                    })
                })
                .collect();
            i = j;
        }
        for fs in group_choices {
            out.push(DMonomial::from_sorted(fs));
        }
    }
    out
}

/// All weight-0 admissible monomials of the given length.
pub fn enumerate_weight0(alphabet: &Alphabet, length: u32) -> Vec<DMonomial> {
    enumerate_monomials(alphabet, length, 0)
}

/// Non-decreasing sequences of `count` nonnegative integers summing to
/// `total`.
fn order_multisets(total: usize, count: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, count: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if count == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // remaining entries are all >= o, so o * count <= total is required
        for o in min..=total / count {
            prefix.push(o);
            rec(total - o, count - 1, o, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, count, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::rat;
    use crate::parse::parse_term;

    fn alpha() -> Alphabet {
        Alphabet::parse("x:0,y:0,xi:1,eta:1").unwrap()
    }

    fn term(src: &str) -> Term {
        parse_term(src, &alpha()).unwrap()
    }

    fn mono(a: &Alphabet, fs: &[(u32, &str)]) -> DMonomial {
        DMonomial::canonical(
            fs.iter()
                .map(|&(o, n)| DFactor::new(o, a.lookup(n).unwrap()))
                .collect(),
        )
        .unwrap()
        .0
    }

    #[test]
    fn phi_on_generators_and_squares() {
        let a = alpha();
        let img = phi_term(&term("x"));
        assert_eq!(img, DiffElement::from_monomial(mono(&a, &[(0, "x")])));

        let img = phi_term(&term("(xi*xi)"));
        assert_eq!(
            img,
            DiffElement::from_monomial(mono(&a, &[(0, "xi"), (1, "xi")]))
        );
    }

    #[test]
    fn phi_expands_by_leibniz() {
        let a = alpha();
        let img = phi_term(&term("(y*(x*xi))"));
        assert_eq!(img.coeff(&mono(&a, &[(0, "y"), (1, "x"), (1, "xi")])), rat(1));
        assert_eq!(img.coeff(&mono(&a, &[(0, "x"), (0, "y"), (2, "xi")])), rat(1));
        assert_eq!(img.len(), 2);
    }

    #[test]
    fn leading_formula_matches_full_phi_on_small_tableaux() {
        for src in ["x", "(x*x)", "(y*(x*xi))", "((y*(x*x))*x)", "(eta*(xi*x))"] {
            let tab = Tableau::decompose(&term(src)).unwrap();
            let (lead, sign) = leading_tableau_monomial(&tab);
            let img = phi_term(&term(src));
            let (m, c) = img.leading().unwrap();
            assert_eq!(&lead, m, "monomial mismatch for {src}");
            assert_eq!(&sign_rat(sign), c, "sign mismatch for {src}");
        }
    }

    #[test]
    fn leading_formula_examples() {
        let a = alpha();
        let tab = Tableau::decompose(&term("x")).unwrap();
        let (m, s) = leading_tableau_monomial(&tab);
        assert_eq!(m, mono(&a, &[(0, "x")]));
        assert_eq!(s, Sign::Plus);

        let tab = Tableau::decompose(&term("(y*(x*xi))")).unwrap();
        let (m, s) = leading_tableau_monomial(&tab);
        assert_eq!(m, mono(&a, &[(0, "x"), (0, "y"), (2, "xi")]));
        assert_eq!(s, Sign::Plus);

        let tab = Tableau::decompose(&term("(x*x)")).unwrap();
        let (m, s) = leading_tableau_monomial(&tab);
        assert_eq!(m, mono(&a, &[(0, "x"), (1, "x")]));
        assert_eq!(s, Sign::Plus);
    }

    #[test]
    fn monomial_to_tableau_inverts_leading() {
        let a = alpha();
        let tab = monomial_to_tableau(&mono(&a, &[(0, "x"), (0, "y"), (2, "xi")])).unwrap();
        assert_eq!(tab.to_term(), term("(y*(x*xi))"));

        let tab = monomial_to_tableau(&mono(&a, &[(0, "x"), (1, "x")])).unwrap();
        assert_eq!(tab.to_term(), term("(x*x)"));

        let err = monomial_to_tableau(&mono(&a, &[(0, "x"), (0, "y"), (1, "xi"), (1, "eta")]));
        assert_eq!(err, Err(EmbedError::NonzeroWeight(-1)));
    }

    #[test]
    fn nf_embed_spec_values() {
        // (x*(y*x)) -> ((x*y)*x) + (y*(x*x)) - ((y*x)*x)
        let e = GdnElement::from_term(term("(x*(y*x))"));
        let nf = nf_embed(&e);
        assert_eq!(nf.coeff(&term("((x*y)*x)")), rat(1));
        assert_eq!(nf.coeff(&term("(y*(x*x))")), rat(1));
        assert_eq!(nf.coeff(&term("((y*x)*x)")), rat(-1));
        assert_eq!(nf.len(), 3);
        assert_eq!(phi(&nf), phi(&e));

        // a tableau is its own normal form
        let tab = GdnElement::from_term(term("(y*(x*xi))"));
        assert_eq!(nf_embed(&tab), tab);

        // the odd cube vanishes
        let cube = GdnElement::from_term(term("(xi*(xi*xi))"));
        assert!(nf_embed(&cube).is_zero());
    }

    #[test]
    fn enumerate_tableaux_small_counts() {
        let one_even = Alphabet::parse("x:0").unwrap();
        assert_eq!(enumerate_tableaux(&one_even, 1).len(), 1);
        let t3 = enumerate_tableaux(&one_even, 3);
        assert_eq!(t3.len(), 2);

        let one_odd = Alphabet::parse("xi:1").unwrap();
        assert_eq!(enumerate_tableaux(&one_odd, 3).len(), 0);
    }

    #[test]
    fn enumerate_weight0_small_counts() {
        let one_even = Alphabet::parse("x:0").unwrap();
        assert_eq!(enumerate_weight0(&one_even, 1).len(), 1);
        assert_eq!(enumerate_weight0(&one_even, 3).len(), 2);

        let one_odd = Alphabet::parse("xi:1").unwrap();
        assert_eq!(enumerate_weight0(&one_odd, 3).len(), 0);
    }

    #[test]
    fn enumerated_tableaux_are_tableaux_and_distinct() {
        let a = alpha();
        for n in 1..=4 {
            let tabs = enumerate_tableaux(&a, n);
            let mut terms: Vec<Term> = tabs.iter().map(|t| t.to_term()).collect();
            let before = terms.len();
            terms.sort();
            terms.dedup();
            assert_eq!(terms.len(), before, "duplicate tableau at length {n}");
            for t in &terms {
                assert!(crate::tableau::is_tableau(t));
                assert_eq!(t.length(), n);
            }
        }
    }
}
