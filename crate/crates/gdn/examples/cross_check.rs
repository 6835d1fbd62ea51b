//! Exhaustive cross-check of the two normal-form engines beyond the bounds
//! of the test suite: every bracketing and letter assignment up to the given
//! length, on a mixed alphabet.
//!
//!     cargo run --release --example cross_check [alphabet] [max_len]

use std::time::Instant;

use gdn::element::GdnElement;
use gdn::embed::{nf_embed, phi};
use gdn::rewrite::Rewriter;
use gdn::term::enumerate_terms;
use gdn::Alphabet;

fn main() {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "x:0,xi:1".to_string());
    let max_len: u32 = args
        .next()
        .map(|s| s.parse().expect("max_len must be an integer"))
        .unwrap_or(6);
    let alphabet = Alphabet::parse(&spec).expect("valid alphabet");

    let mut rw = Rewriter::new();
    for len in 1..=max_len {
        let t0 = Instant::now();
        let mut count = 0usize;
        for t in enumerate_terms(&alphabet, len) {
            let e = GdnElement::from_term(t.clone());
            let by_rewriting = rw.nf(&e);
            assert_eq!(
                by_rewriting,
                nf_embed(&e),
                "engines disagree on {}",
                gdn::parse::print_term(&t, &alphabet)
            );
            assert_eq!(phi(&by_rewriting), phi(&e), "image drift");
            count += 1;
        }
        println!(
            "length {len}: {count} terms agree ({:?})",
            t0.elapsed()
        );
    }
}
