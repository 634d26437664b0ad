//! Brute-force area oracle over any presentation, triviality certificates in
//! the `u_1 r_1 u_2 ... r_d u_{d+1}` normal form, and desk-scale Dehn-function
//! sampling.
//!
//! The search move is: splice one element of the relator closure (all cyclic
//! shifts of relators and their inverses) at a letter boundary of the current
//! reduced word, then reduce. One splice changes the represented element by
//! one conjugated relator, so the splice distance from `w` to the empty word
//! is the minimal number of factors in `w = prod r_i^{u_i}`.

mod coset;
mod oracle;
mod splicer;

pub use coset::CosetTable;
pub use oracle::{
    area_by_enumeration, area_oracle, dehn_sample, reduced_words, triviality_search, AreaBudget,
    AreaResult, DehnRow, DehnTable, EnumerationOracle, TrivialitySearch,
};
pub use splicer::{
    certificate_from_trace, gm_hub_certificate, heisenberg_commutator_certificate,
    zsq_commutator_certificate, Splicer,
};

use thiserror::Error;

use crate::presentation::GroupPresentation;
use crate::words::Word;

#[derive(Debug, Error)]
pub enum WordProblemError {
    #[error("budget values must be positive")]
    ZeroBudget,
    #[error("trace does not end at the accept word")]
    TraceNotAccepting,
    #[error("machine and presentation do not match: {0}")]
    MachineMismatch(String),
    #[error("certificate construction failed: {0}")]
    Construction(String),
}

/// A triviality certificate `w = u_1 r_1 u_2 r_2 ... u_d r_d u_{d+1}` with
/// `u_1 u_2 ... u_{d+1} = 1` in the free group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityCertificate {
    /// `u_1 ..= u_{d+1}`; one more entry than `relators`.
    pub conjugators: Vec<Word>,
    /// `r_1 ..= r_d`, each expected in the relator closure.
    pub relators: Vec<Word>,
}

impl TrivialityCertificate {
    pub fn d(&self) -> usize {
        self.relators.len()
    }

    /// Builds the normal form from a product of conjugates
    /// `w = prod (r_i)^{v_i}`: the telescoping `u_1 = v_1`,
    /// `u_{i+1} = v_i^-1 v_{i+1}`, `u_{d+1} = v_d^-1` makes the conjugator
    /// product collapse to the empty word.
    pub fn from_conjugate_factors(factors: &[(Word, Word)]) -> Self {
        let d = factors.len();
        if d == 0 {
            return TrivialityCertificate {
                conjugators: vec![Word::empty()],
                relators: Vec::new(),
            };
        }
        let mut conjugators = Vec::with_capacity(d + 1);
        conjugators.push(factors[0].1.clone());
        for i in 1..d {
            conjugators.push(factors[i - 1].1.inverse().concat(&factors[i].1));
        }
        conjugators.push(factors[d - 1].1.inverse());
        TrivialityCertificate {
            conjugators,
            relators: factors.iter().map(|(r, _)| r.clone()).collect(),
        }
    }

    /// The freely reduced product `u_1 r_1 ... u_d r_d u_{d+1}`.
    pub fn product(&self) -> Word {
        let mut parts: Vec<&Word> = Vec::with_capacity(2 * self.relators.len() + 1);
        for (i, u) in self.conjugators.iter().enumerate() {
            parts.push(u);
            if i < self.relators.len() {
                parts.push(&self.relators[i]);
            }
        }
        Word::concat_all(parts)
    }

    pub fn conjugator_length_sum(&self) -> usize {
        self.conjugators.iter().map(Word::len).sum()
    }
}

/// Why a certificate was rejected; the checks run in this order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateDefect {
    #[error("certificate shape is wrong: {0}")]
    Malformed(String),
    #[error("factor {index} is not a relator (up to cyclic shifts and inverses)")]
    NotARelator { index: usize },
    #[error("conjugator product is not freely trivial")]
    ConjugatorProductNotTrivial,
    #[error("product is not freely equal to the target word")]
    NotFreelyEqual,
    #[error("conjugator length sum {sum} exceeds the 4e bound {bound}")]
    EdgeBoundExceeded { sum: usize, bound: usize },
}

/// Checks a certificate against a presentation and target word. `edges`, when
/// given, enables the `sum |u_i| <= 4e` bound.
pub fn verify_certificate(
    cert: &TrivialityCertificate,
    presentation: &GroupPresentation,
    w: &Word,
    edges: Option<usize>,
) -> Result<(), CertificateDefect> {
    if cert.conjugators.len() != cert.relators.len() + 1 {
        return Err(CertificateDefect::Malformed(format!(
            "{} conjugators for {} relators",
            cert.conjugators.len(),
            cert.relators.len()
        )));
    }
    let closure = presentation.relator_closure();
    for (i, r) in cert.relators.iter().enumerate() {
        if !closure.contains(r) {
            return Err(CertificateDefect::NotARelator { index: i });
        }
    }
    if !Word::concat_all(cert.conjugators.iter()).is_empty() {
        return Err(CertificateDefect::ConjugatorProductNotTrivial);
    }
    if &cert.product() != w {
        return Err(CertificateDefect::NotFreelyEqual);
    }
    if let Some(e) = edges {
        let sum = cert.conjugator_length_sum();
        if sum > 4 * e {
            return Err(CertificateDefect::EdgeBoundExceeded { sum, bound: 4 * e });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::GroupPresentation;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn zsq() -> GroupPresentation {
        GroupPresentation::from_texts(&["a", "b"], &["a b a^-1 b^-1"], "zsq").unwrap()
    }

    #[test]
    fn commutator_has_depth_one_certificate() {
        let p = zsq();
        let w = p.alphabet.parse_word("a b a^-1 b^-1").unwrap();
        let cert = TrivialityCertificate {
            conjugators: vec![Word::empty(), Word::empty()],
            relators: vec![w.clone()],
        };
        assert!(verify_certificate(&cert, &p, &w, None).is_ok());
    }

    #[test]
    fn shifted_relator_needs_matching_conjugator() {
        let p = zsq();
        let w = p.alphabet.parse_word("a b a^-1 b^-1").unwrap();
        // b a^-1 b^-1 a is a cyclic shift; with trivial conjugators the
        // product is the shift, not w.
        let shift = p.alphabet.parse_word("b a^-1 b^-1 a").unwrap();
        let bad = TrivialityCertificate {
            conjugators: vec![Word::empty(), Word::empty()],
            relators: vec![shift.clone()],
        };
        assert_eq!(
            verify_certificate(&bad, &p, &w, None),
            Err(CertificateDefect::NotFreelyEqual)
        );
        // Conjugating the shift by `a` restores free equality.
        let a = p.alphabet.parse_word("a").unwrap();
        let good = TrivialityCertificate {
            conjugators: vec![a.clone(), a.inverse()],
            relators: vec![shift],
        };
        assert!(verify_certificate(&good, &p, &w, None).is_ok());
    }

    #[test]
    fn nontrivial_conjugator_product_is_condition_two() {
        let p = zsq();
        let w = p.alphabet.parse_word("a b a^-1 b^-1").unwrap();
        let a = p.alphabet.parse_word("a").unwrap();
        let cert = TrivialityCertificate {
            conjugators: vec![a, Word::empty()],
            relators: vec![w.clone()],
        };
        assert_eq!(
            verify_certificate(&cert, &p, &w, None),
            Err(CertificateDefect::ConjugatorProductNotTrivial)
        );
    }

    #[test]
    fn edge_bound_is_checked_when_given() {
        let p = zsq();
        let w = p.alphabet.parse_word("a b a^-1 b^-1").unwrap();
        let u = p.alphabet.parse_word("a b a b").unwrap();
        let shifted = w.conjugate(&u);
        let cert = TrivialityCertificate::from_conjugate_factors(&[(w.clone(), u)]);
        assert!(verify_certificate(&cert, &p, &shifted, Some(2)).is_ok());
        assert!(matches!(
            verify_certificate(&cert, &p, &shifted, Some(1)),
            Err(CertificateDefect::EdgeBoundExceeded { sum: 8, bound: 4 })
        ));
    }

    fn random_presentation(rng: &mut StdRng) -> GroupPresentation {
        let names = ["a", "b", "c"];
        let n_gens = rng.gen_range(2..=3usize);
        let gens: Vec<&str> = names[..n_gens].to_vec();
        let mut p = GroupPresentation::from_texts(&gens, &[], "random").unwrap();
        let n_rel = rng.gen_range(1..=3usize);
        while p.relators.len() < n_rel {
            let len = rng.gen_range(2..=5usize);
            let w = random_word(rng, n_gens, len);
            if !w.is_empty() && w.is_cyclically_reduced() {
                p.push_relator(w).unwrap();
            }
        }
        p
    }

    fn random_word(rng: &mut StdRng, n_gens: usize, len: usize) -> Word {
        Word::from_letters((0..len).map(|_| {
            crate::words::Letter::new(crate::words::Gen(rng.gen_range(0..n_gens) as u32), rng.gen())
        }))
    }

    /// 200 random valid certificates verify; targeted single-field mutations
    /// are rejected with the matching defect.
    #[test]
    fn random_certificates_verify_and_mutations_fail() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for round in 0..200 {
            let p = random_presentation(&mut rng);
            let closure: Vec<Word> = p.relator_closure().into_iter().collect();
            let n_gens = p.alphabet.len();
            let d = rng.gen_range(1..=5usize);
            let factors: Vec<(Word, Word)> = (0..d)
                .map(|_| {
                    let r = closure[rng.gen_range(0..closure.len())].clone();
                    let len = rng.gen_range(0..=4);
                    let u = random_word(&mut rng, n_gens, len);
                    (r, u)
                })
                .collect();
            let cert = TrivialityCertificate::from_conjugate_factors(&factors);
            let w = cert.product();
            assert_eq!(verify_certificate(&cert, &p, &w, None), Ok(()), "round {round}");

            // Swap a relator for a non-relator.
            let mut bad = cert.clone();
            let idx = rng.gen_range(0..d);
            bad.relators[idx] = loop {
                let cand = random_word(&mut rng, n_gens, 3);
                if !cand.is_empty() && !p.relator_closure().contains(&cand) {
                    break cand;
                }
            };
            assert_eq!(
                verify_certificate(&bad, &p, &w, None),
                Err(CertificateDefect::NotARelator { index: idx })
            );

            // Corrupt a conjugator while keeping the u-product trivial: push
            // g into u_i and g^-1 into u_{i+1}.
            if d >= 1 {
                let mut bad = cert.clone();
                let g = Word::gen(crate::words::Gen(0));
                let i = rng.gen_range(0..d);
                bad.conjugators[i] = bad.conjugators[i].concat(&g);
                bad.conjugators[i + 1] = g.inverse().concat(&bad.conjugators[i + 1]);
                if bad.product() != w {
                    assert_eq!(
                        verify_certificate(&bad, &p, &w, None),
                        Err(CertificateDefect::NotFreelyEqual)
                    );
                }
            }

            // Break condition 2 only: the checker looks at the u-product
            // before free equality.
            let mut bad = cert.clone();
            let last = bad.conjugators.len() - 1;
            bad.conjugators[last] =
                bad.conjugators[last].concat(&Word::gen(crate::words::Gen(0)));
            assert_eq!(
                verify_certificate(&bad, &p, &w, None),
                Err(CertificateDefect::ConjugatorProductNotTrivial)
            );
        }
    }
}
