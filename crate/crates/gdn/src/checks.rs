//! Bounded-degree verification suites: identity vanishing, nilpotency of
//! purely odd alphabets, ideal-slice comparison through the embedding, and
//! the Engel-theorem ingredients, all with exact arithmetic.

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use crate::alphabet::{Alphabet, Parity};
use crate::element::{rat, GdnElement, Rat};
use crate::embed::{enumerate_monomials, phi};
use crate::diff::DiffElement;
use crate::rewrite::{ls_defect, rc_defect, Rewriter};
use crate::span::{
    left_normed_product, right_power, symmetrization, tableau_slice, SpanBasis, SparseVec,
};
use crate::term::{enumerate_terms, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("parameter {name} = {value} out of range {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: u32,
        min: u32,
        max: u32,
    },
    #[error("alphabet must consist of odd generators only")]
    NotAllOdd,
    #[error("relation is not homogeneous (parity and length)")]
    NotHomogeneous,
    #[error("relation exceeds the length budget")]
    RelationTooLong,
}

/// Homogeneous relations cutting out a quotient algebra.
#[derive(Debug, Clone)]
pub struct RelationSet {
    relations: Vec<GdnElement>,
}

impl RelationSet {
    /// Every relation must be parity- and length-homogeneous; the grading
    /// arguments behind the slice computations need both.
    pub fn new(relations: Vec<GdnElement>) -> Result<RelationSet, CheckError> {
        for r in &relations {
            if r.homogeneous_parity().is_none() || r.homogeneous_length().is_none() {
                return Err(CheckError::NotHomogeneous);
            }
        }
        Ok(RelationSet { relations })
    }

    pub fn relations(&self) -> &[GdnElement] {
        &self.relations
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn max_length(&self) -> u32 {
        self.relations
            .iter()
            .filter_map(|r| r.homogeneous_length())
            .max()
            .unwrap_or(0)
    }
}

// ---------------------------------------------------------------------------
// Defining identities
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub triples_checked: usize,
    pub failure: Option<String>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that both defining identities normalize to zero for every
/// homogeneous argument triple of total length at most `max_len`, under both
/// normal-form engines.
pub fn check_identities(alphabet: &Alphabet, max_len: u32) -> IdentityReport {
    let mut rw = Rewriter::new();
    let mut checked = 0;
    let by_len: Vec<Vec<Term>> = (1..=max_len.saturating_sub(2))
        .map(|n| enumerate_terms(alphabet, n))
        .collect();
    let terms = |n: u32| -> &[Term] { &by_len[(n - 1) as usize] };
    for lx in 1..=max_len - 2 {
        for ly in 1..=max_len - 1 - lx {
            for lz in 1..=max_len - lx - ly {
                for x in terms(lx) {
                    for y in terms(ly) {
                        for z in terms(lz) {
                            for defect in [ls_defect(x, y, z), rc_defect(x, y, z)] {
                                checked += 1;
                                if !rw.nf(&defect).is_zero()
                                    || !crate::embed::nf_embed(&defect).is_zero()
                                {
                                    return IdentityReport {
                                        triples_checked: checked,
                                        failure: Some(format!(
                                            "defect of ({}, {}, {}) does not vanish",
                                            crate::parse::print_term(x, alphabet),
                                            crate::parse::print_term(y, alphabet),
                                            crate::parse::print_term(z, alphabet),
                                        )),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    IdentityReport {
        triples_checked: checked,
        failure: None,
    }
}

// ---------------------------------------------------------------------------
// Nilpotency of purely odd alphabets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct NilpotencyReport {
    pub terms_checked: usize,
    pub failure: Option<Term>,
}

impl NilpotencyReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively normalizes every term of the given length over an all-odd
/// alphabet and reports the first nonvanishing term, if any.
pub fn check_nilpotency(alphabet: &Alphabet, length: u32) -> Result<NilpotencyReport, CheckError> {
    if !alphabet.all_odd() {
        return Err(CheckError::NotAllOdd);
    }
    let mut rw = Rewriter::new();
    let mut checked = 0;
    for t in enumerate_terms(alphabet, length) {
        checked += 1;
        if !rw.nf_term(&t).is_zero() {
            return Ok(NilpotencyReport {
                terms_checked: checked,
                failure: Some(t),
            });
        }
    }
    Ok(NilpotencyReport {
        terms_checked: checked,
        failure: None,
    })
}

// ---------------------------------------------------------------------------
// Engel-theorem ingredients
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct EngelReport {
    pub t: u32,
    pub recursion_identity: bool,
    pub inclusion_exclusion: bool,
}

impl EngelReport {
    pub fn pass(&self) -> bool {
        self.recursion_identity && self.inclusion_exclusion
    }
}

/// Verifies, over distinct even generators, that the symmetrized sum obeys
/// `S(x_1,...,x_{t+1}) = t (S(x_2,...,x_{t+1}) x_1) + t! [x_1,...,x_{t+1}]`
/// as a normal-form identity, and that expanding the t-th right power of a
/// sum matches the inclusion-exclusion formula
/// `(x_1+...+x_t)^t_L - S(x_1,...,x_t) =
///  sum over proper nonempty subsets I of (-1)^{t-|I|+1} (sum_I x_i)^t_L`
/// as formal elements.
pub fn check_engel(t: u32) -> Result<EngelReport, CheckError> {
    if !(1..=4).contains(&t) {
        return Err(CheckError::OutOfRange {
            name: "t",
            value: t,
            min: 1,
            max: 4,
        });
    }
    let n = (t + 1) as usize;
    let spec: Vec<(String, Parity)> = (1..=n).map(|i| (format!("x{i}"), Parity::Even)).collect();
    let alphabet = Alphabet::new(spec).expect("valid generated alphabet");
    let gens: Vec<GdnElement> = alphabet
        .gens()
        .map(|g| GdnElement::from_term(Term::leaf(g)))
        .collect();

    // recursion identity, checked in normal form
    let mut rw = Rewriter::new();
    let s_all = symmetrization(&gens);
    let s_tail = symmetrization(&gens[1..]);
    let factorial: i64 = (1..=t as i64).product();
    let mut defect = s_all;
    defect.sub_assign(&s_tail.circ(&gens[0]).scale(&rat(t as i64)));
    defect.sub_assign(&left_normed_product(&gens).scale(&rat(factorial)));
    let recursion_identity = rw.nf(&defect).is_zero();

    // inclusion-exclusion over the first t generators, checked formally
    let heads = &gens[..t as usize];
    let total: GdnElement = heads
        .iter()
        .fold(GdnElement::zero(), |mut acc, g| {
            acc.add_assign(g);
            acc
        });
    let mut lhs = right_power(&total, t);
    lhs.sub_assign(&symmetrization(heads));
    let mut rhs = GdnElement::zero();
    for mask in 1u32..(1 << t) - 1 {
        let subset: Vec<&GdnElement> = (0..t)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &heads[i as usize])
            .collect();
        let sum = subset.iter().fold(GdnElement::zero(), |mut acc, g| {
            acc.add_assign(g);
            acc
        });
        let sign = if (t - subset.len() as u32 + 1).is_multiple_of(2) {
            rat(1)
        } else {
            rat(-1)
        };
        rhs.add_assign(&right_power(&sum, t).scale(&sign));
    }
    let inclusion_exclusion = lhs == rhs;

    Ok(EngelReport {
        t,
        recursion_identity,
        inclusion_exclusion,
    })
}

// ---------------------------------------------------------------------------
// Ideal slices and their comparison through the embedding
// ---------------------------------------------------------------------------

/// Span of the two-sided ideal generated by the relations, within terms of
/// length at most `max_len`: closes the normal forms of the relations under
/// multiplication by tableaux on either side until the rank stabilizes.
pub fn gdn_ideal_slice(
    relations: &RelationSet,
    alphabet: &Alphabet,
    max_len: u32,
) -> Result<SpanBasis<Term>, CheckError> {
    if !relations.is_empty() && relations.max_length() > max_len {
        return Err(CheckError::RelationTooLong);
    }
    let mut rw = Rewriter::new();
    let mut basis: SpanBasis<Term> = SpanBasis::new();
    for r in relations.relations() {
        let nf = rw.nf(r);
        basis.insert(nf.terms());
    }
    let multipliers: Vec<Vec<Term>> = (1..=max_len)
        .map(|n| tableau_slice(alphabet, n, None))
        .collect();
    loop {
        let rows: Vec<SparseVec<Term>> = basis.rows().cloned().collect();
        let mut grew = false;
        for row in rows {
            let e = GdnElement::from(row.clone());
            let deg = row.keys().next().expect("rows are nonzero").length();
            for mult_len in 1..=max_len.saturating_sub(deg) {
                for t in &multipliers[(mult_len - 1) as usize] {
                    let te = GdnElement::from_term(t.clone());
                    grew |= basis.insert(rw.nf(&e.circ(&te)).terms());
                    grew |= basis.insert(rw.nf(&te.circ(&e)).terms());
                }
            }
        }
        if !grew {
            return Ok(basis);
        }
    }
}

impl From<SparseVec<Term>> for GdnElement {
    fn from(v: SparseVec<Term>) -> GdnElement {
        let mut e = GdnElement::zero();
        for (t, c) in v {
            e.add_term(t, c);
        }
        e
    }
}

/// Span of the weight-0 layer of the differential-algebra ideal generated by
/// the images of the relations: products `u . D^t(phi(s))` with `u` an
/// admissible monomial (or absent) whose weight balances `t`, within the
/// length budget.
pub fn diff_ideal_slice(
    relations: &RelationSet,
    alphabet: &Alphabet,
    max_len: u32,
) -> Result<SpanBasis<crate::diff::DMonomial>, CheckError> {
    if !relations.is_empty() && relations.max_length() > max_len {
        return Err(CheckError::RelationTooLong);
    }
    let mut basis = SpanBasis::new();
    for s in relations.relations() {
        let image = phi(s);
        let len = s.homogeneous_length().expect("validated homogeneous");
        let budget = max_len - len;
        let mut derived = image.clone();
        for t in 0..=budget {
            if t > 0 {
                derived = derived.derive();
            }
            if t == 0 {
                basis.insert(derived.monomials());
            }
            for u_len in 1..=budget {
                let weight = 1 - t as i64;
                for u in enumerate_monomials(alphabet, u_len, weight) {
                    let product = DiffElement::from_monomial(u).mul(&derived);
                    if !product.is_zero() {
                        basis.insert(product.monomials());
                    }
                }
            }
        }
    }
    Ok(basis)
}

#[derive(Debug, Clone)]
pub struct PbwReport {
    /// Per degree: dimension of the ideal slice seen through the embedding,
    /// and dimension of the weight-0 differential ideal slice.
    pub dims: Vec<(u32, usize, usize)>,
    pub pass: bool,
}

/// Compares the two ideal slices through the embedding: their images must
/// coincide as subspaces at every length up to `max_len`.
pub fn check_pbw_slice(
    relations: &RelationSet,
    alphabet: &Alphabet,
    max_len: u32,
) -> Result<PbwReport, CheckError> {
    let gdn = gdn_ideal_slice(relations, alphabet, max_len)?;
    let diff = diff_ideal_slice(relations, alphabet, max_len)?;

    let mut embedded = SpanBasis::new();
    for row in gdn.rows() {
        let image = phi(&GdnElement::from(row.clone()));
        embedded.insert(image.monomials());
    }

    let mut pass = embedded.rank() == diff.rank();
    for row in embedded.rows() {
        pass &= diff.contains(row);
    }
    for row in diff.rows() {
        pass &= embedded.contains(row);
    }

    let left = embedded.rank_by(|m| m.len() as u32);
    let right = diff.rank_by(|m| m.len() as u32);
    let mut degrees: Vec<u32> = left.keys().chain(right.keys()).copied().collect();
    degrees.sort_unstable();
    degrees.dedup();
    let dims: Vec<(u32, usize, usize)> = degrees
        .into_iter()
        .map(|d| {
            let l = left.get(&d).copied().unwrap_or(0);
            let r = right.get(&d).copied().unwrap_or(0);
            pass &= l == r;
            (d, l, r)
        })
        .collect();

    Ok(PbwReport { dims, pass })
}

// ---------------------------------------------------------------------------
// Inclusion checks behind the Engel theorem
// ---------------------------------------------------------------------------

/// Outcome of a graded subspace inclusion: on failure, `witness` renders an
/// element of the left side that is not in the right side's span.
#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub witness: Option<String>,
}

impl InclusionReport {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }

    fn ok() -> InclusionReport {
        InclusionReport { witness: None }
    }

    fn fail(witness: String) -> InclusionReport {
        InclusionReport {
            witness: Some(witness),
        }
    }
}

/// Graded spans of the powers of a subspace under the recursive power
/// `V^n = sum of V^i V^{n-i}`, with `V` the span of all products of two
/// elements. Checks that the degree-`d` slice of the n-th power lies in the
/// span of left-normed products with `n + 1` slots, over a two-letter mixed
/// alphabet.
pub fn check_square_power_inclusion(n: u32, degree: u32) -> Result<InclusionReport, CheckError> {
    if !(1..=4).contains(&n) {
        return Err(CheckError::OutOfRange {
            name: "n",
            value: n,
            min: 1,
            max: 4,
        });
    }
    if !(1..=6).contains(&degree) {
        return Err(CheckError::OutOfRange {
            name: "degree",
            value: degree,
            min: 1,
            max: 6,
        });
    }
    let alphabet = Alphabet::parse("x:0,xi:1").expect("fixed alphabet");
    let mut rw = Rewriter::new();

    let full: Vec<Vec<Term>> = (0..=degree)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                tableau_slice(&alphabet, k, None)
            }
        })
        .collect();

    // spans of the subspace powers, per degree
    let mut powers: Vec<BTreeMap<u32, SpanBasis<Term>>> = Vec::with_capacity(n as usize + 1);
    // V^1 = V = span of two-factor products
    let mut v1: BTreeMap<u32, SpanBasis<Term>> = BTreeMap::new();
    for k in 2..=degree {
        let mut b = SpanBasis::new();
        for i in 1..k {
            for u in &full[i as usize] {
                for v in &full[(k - i) as usize] {
                    let p = rw.nf_term(&Term::product(u.clone(), v.clone()));
                    b.insert(p.terms());
                }
            }
        }
        v1.insert(k, b);
    }
    powers.push(v1);
    for m in 2..=n {
        let mut vm: BTreeMap<u32, SpanBasis<Term>> = BTreeMap::new();
        for k in (2 * m)..=degree {
            let mut b = SpanBasis::new();
            for i in 1..m {
                let (pi, pj) = (
                    &powers[(i - 1) as usize],
                    &powers[(m - i - 1) as usize],
                );
                for (ka, ba) in pi {
                    for (kb, bb) in pj {
                        if ka + kb != k {
                            continue;
                        }
                        for ra in ba.rows() {
                            for rb in bb.rows() {
                                let e = GdnElement::from(ra.clone())
                                    .circ(&GdnElement::from(rb.clone()));
                                b.insert(rw.nf(&e).terms());
                            }
                        }
                    }
                }
            }
            vm.insert(k, b);
        }
        powers.push(vm);
    }

    // span of left-normed products with n + 1 slots, at the target degree
    let mut w: BTreeMap<u32, SpanBasis<Term>> = BTreeMap::new();
    for k in 1..=degree {
        let mut b = SpanBasis::new();
        for t in &full[k as usize] {
            b.insert(GdnElement::from_term(t.clone()).terms());
        }
        w.insert(k, b);
    }
    for _slot in 2..=(n + 1) {
        let mut next: BTreeMap<u32, SpanBasis<Term>> = BTreeMap::new();
        for k in 2..=degree {
            let mut b = SpanBasis::new();
            for i in 1..k {
                if let Some(prev) = w.get(&(k - i)) {
                    for row in prev.rows() {
                        let e = GdnElement::from(row.clone());
                        for t in &full[i as usize] {
                            let p = rw.nf(&e.circ(&GdnElement::from_term(t.clone())));
                            b.insert(p.terms());
                        }
                    }
                }
            }
            next.insert(k, b);
        }
        w = next;
    }

    let target = powers[(n - 1) as usize].get(&degree);
    let ambient = w.get(&degree);
    if let Some(v) = target {
        for row in v.rows() {
            let inside = ambient.map_or_else(|| row.is_empty(), |b| b.contains(row));
            if !inside {
                return Ok(InclusionReport::fail(
                    GdnElement::from(row.clone()).display(&alphabet),
                ));
            }
        }
    }
    Ok(InclusionReport::ok())
}

/// Degree-`d` slice of the splitting of four-slot left-normed products with
/// one even and three odd slots into shorter shapes: checks
/// `[A0, A1, A1, A1] <= [A0, A1, A0] + [A0, A1, A1, kX1]`
/// over a four-letter mixed alphabet, where `kX1` is spanned by the odd
/// generators alone.
pub fn check_odd_slot_splitting(degree: u32) -> Result<InclusionReport, CheckError> {
    if degree > 6 {
        return Err(CheckError::OutOfRange {
            name: "degree",
            value: degree,
            min: 1,
            max: 6,
        });
    }
    let alphabet = Alphabet::parse("x:0,y:0,xi:1,eta:1").expect("fixed alphabet");
    let mut rw = Rewriter::new();
    let even: Vec<Vec<Term>> = (0..=degree)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                tableau_slice(&alphabet, k, Some(Parity::Even))
            }
        })
        .collect();
    let odd: Vec<Vec<Term>> = (0..=degree)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                tableau_slice(&alphabet, k, Some(Parity::Odd))
            }
        })
        .collect();
    let odd_generators: Vec<Term> = alphabet
        .gens()
        .filter(|g| g.parity().is_odd())
        .map(Term::leaf)
        .collect();

    // right-hand side span at the target degree
    let mut rhs = SpanBasis::new();
    let compositions = |slots: usize, total: u32| -> Vec<Vec<u32>> {
        fn rec(slots: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if slots == 0 {
                if total == 0 {
                    out.push(prefix.clone());
                }
                return;
            }
            for first in 1..=total.saturating_sub(slots as u32 - 1) {
                prefix.push(first);
                rec(slots - 1, total - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(slots, total, &mut Vec::new(), &mut out);
        out
    };
    for c in compositions(3, degree) {
        for t0 in &even[c[0] as usize] {
            for t1 in &odd[c[1] as usize] {
                for t2 in &even[c[2] as usize] {
                    let t = crate::span::left_normed_terms(&[t0.clone(), t1.clone(), t2.clone()]);
                    rhs.insert(rw.nf_term(&t).terms());
                }
            }
        }
    }
    for c in compositions(4, degree) {
        if c[3] != 1 {
            continue;
        }
        for t0 in &even[c[0] as usize] {
            for t1 in &odd[c[1] as usize] {
                for t2 in &odd[c[2] as usize] {
                    for g in &odd_generators {
                        let t = crate::span::left_normed_terms(&[
                            t0.clone(),
                            t1.clone(),
                            t2.clone(),
                            g.clone(),
                        ]);
                        rhs.insert(rw.nf_term(&t).terms());
                    }
                }
            }
        }
    }

    // left-hand side rows
    for c in compositions(4, degree) {
        for t0 in &even[c[0] as usize] {
            for t1 in &odd[c[1] as usize] {
                for t2 in &odd[c[2] as usize] {
                    for t3 in &odd[c[3] as usize] {
                        let t = crate::span::left_normed_terms(&[
                            t0.clone(),
                            t1.clone(),
                            t2.clone(),
                            t3.clone(),
                        ]);
                        let nf = rw.nf_term(&t);
                        if !rhs.contains(nf.terms()) {
                            return Ok(InclusionReport::fail(
                                crate::parse::print_term(&t, &alphabet),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(InclusionReport::ok())
}

// ---------------------------------------------------------------------------
// Basis counting
// ---------------------------------------------------------------------------

/// Per length: number of tableaux and number of weight-0 admissible
/// monomials. The two columns agree for a free algebra.
pub fn count_bases(alphabet: &Alphabet, max_len: u32) -> Vec<(u32, usize, usize)> {
    (1..=max_len)
        .map(|n| {
            (
                n,
                crate::embed::enumerate_tableaux(alphabet, n).len(),
                crate::embed::enumerate_weight0(alphabet, n).len(),
            )
        })
        .collect()
}

/// Scalar check used by tests and the acceptance suite: normal form of a
/// right power of an even generator stays a single tableau.
pub fn right_power_is_single_tableau(alphabet: &Alphabet, gen_name: &str, n: u32) -> bool {
    let Ok(gen) = alphabet.lookup(gen_name) else {
        return false;
    };
    if gen.parity().is_odd() {
        return false;
    }
    let x = GdnElement::from_term(Term::leaf(gen));
    let p = right_power(&x, n);
    let nf = Rewriter::new().nf(&p);
    nf.len() == 1 && nf.iter().all(|(t, c)| t.root() == n - 1 && c == &Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    #[test]
    fn engel_small_values() {
        for t in 1..=3 {
            let report = check_engel(t).unwrap();
            assert!(report.recursion_identity, "recursion fails at t = {t}");
            assert!(report.inclusion_exclusion, "expansion fails at t = {t}");
        }
        assert!(check_engel(0).is_err());
        assert!(check_engel(5).is_err());
    }

    #[test]
    fn engel_upper_bound_of_the_range() {
        let report = check_engel(4).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn nilpotency_of_one_odd_generator() {
        let a = Alphabet::parse("xi:1").unwrap();
        for len in 3..=4 {
            let report = check_nilpotency(&a, len).unwrap();
            assert!(report.pass(), "length {len} should vanish");
        }
        let mixed = Alphabet::parse("x:0,xi:1").unwrap();
        assert_eq!(
            check_nilpotency(&mixed, 3).unwrap_err(),
            CheckError::NotAllOdd
        );
    }

    #[test]
    fn identities_vanish_at_small_length() {
        let a = Alphabet::parse("x:0,xi:1").unwrap();
        let report = check_identities(&a, 4);
        assert!(report.pass(), "failure: {:?}", report.failure);
        assert!(report.triples_checked > 0);
    }

    #[test]
    fn pbw_slice_on_even_square() {
        let a = Alphabet::parse("x:0").unwrap();
        let rel = parse_element("(x*x)", &a).unwrap();
        let relations = RelationSet::new(vec![rel]).unwrap();
        let report = check_pbw_slice(&relations, &a, 4).unwrap();
        assert!(report.pass, "dims: {:?}", report.dims);
        // the relation itself shows up at degree 2
        assert!(report.dims.iter().any(|&(d, l, r)| d == 2 && l == 1 && r == 1));
    }

    #[test]
    fn pbw_slice_empty_relations() {
        let a = Alphabet::parse("x:0").unwrap();
        let relations = RelationSet::new(vec![]).unwrap();
        let report = check_pbw_slice(&relations, &a, 3).unwrap();
        assert!(report.pass);
        assert!(report.dims.is_empty());
    }

    #[test]
    fn square_power_inclusion_base_case() {
        // the square equals the two-slot left-normed bracket by definition
        assert!(check_square_power_inclusion(1, 2).unwrap().pass());
    }

    #[test]
    fn odd_slot_splitting_is_vacuous_below_four() {
        assert!(check_odd_slot_splitting(3).unwrap().pass());
    }

    #[test]
    fn relation_set_rejects_inhomogeneous_input() {
        let a = Alphabet::parse("x:0,xi:1").unwrap();
        let bad = parse_element("x + (x*x)", &a).unwrap();
        assert_eq!(
            RelationSet::new(vec![bad]).unwrap_err(),
            CheckError::NotHomogeneous
        );
        let bad = parse_element("x + xi", &a).unwrap();
        assert_eq!(
            RelationSet::new(vec![bad]).unwrap_err(),
            CheckError::NotHomogeneous
        );
    }

    #[test]
    fn right_powers_of_even_generators() {
        let a = Alphabet::parse("x:0").unwrap();
        for n in 1..=5 {
            assert!(right_power_is_single_tableau(&a, "x", n));
        }
    }
}
