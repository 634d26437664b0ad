//! Word families over `{b_1, b_2}` with the small-cancellation property:
//! any subword of `X_g` of length at least `lambda * |X_g|` occurs exactly
//! once in `X_g` and nowhere in `X_g^-1` or any other family member. The
//! generator draws random reduced words long enough for distinct windows and
//! re-draws on the rare collision; the verifier is exact either way.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::words::{Alphabet, Gen, Letter, Word};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("length for `{0}` must be at least 1")]
    InfeasibleLength(String),
    #[error("family generation did not settle after {0} attempts")]
    GaveUp(usize),
    #[error("bad family data: {0}")]
    Bad(String),
}

/// Exact rational cancellation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lambda {
    pub num: u64,
    pub den: u64,
}

impl Lambda {
    pub const DEFAULT: Lambda = Lambda { num: 1, den: 50 };

    /// Parses a decimal like `0.02` into an exact rational.
    pub fn parse(text: &str) -> Result<Lambda, FamilyError> {
        let bad = || FamilyError::Bad(format!("cannot parse lambda `{text}`"));
        if let Some((a, b)) = text.split_once('/') {
            let num: u64 = a.trim().parse().map_err(|_| bad())?;
            let den: u64 = b.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Lambda { num, den });
        }
        if let Some((int, frac)) = text.split_once('.') {
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let digits = frac.len() as u32;
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let den = 10u64.pow(digits);
            return Ok(Lambda { num: int * den + frac, den });
        }
        let num: u64 = text.trim().parse().map_err(|_| bad())?;
        Ok(Lambda { num, den: 1 })
    }

    /// Smallest window length `T` with `T >= lambda * len`, at least 1.
    pub fn threshold(&self, len: usize) -> usize {
        let t = (self.num as usize * len).div_ceil(self.den as usize);
        t.max(1)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Clone)]
pub struct WordFamily {
    pub alphabet: Alphabet,
    pub keys: Vec<String>,
    pub words: Vec<Word>,
    pub lambda: Lambda,
}

impl WordFamily {
    pub fn new(keys: Vec<String>, words: Vec<Word>, lambda: Lambda) -> Result<Self, FamilyError> {
        if keys.len() != words.len() {
            return Err(FamilyError::Bad("keys and words differ in length".into()));
        }
        Ok(WordFamily {
            alphabet: Alphabet::from_names(["b_1", "b_2"]).expect("fixed names"),
            keys,
            words,
            lambda,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Where a repeated long subword was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureSite {
    SameWord { second_position: usize },
    OwnInverse { position: usize },
    OtherWord { key: String, inverted: bool, position: usize },
}

#[derive(Debug, Clone)]
pub struct StarStarFailure {
    pub key: String,
    pub witness: Word,
    pub position: usize,
    pub site: FailureSite,
}

fn windows(w: &Word, t: usize) -> impl Iterator<Item = (usize, &[Letter])> {
    (0..w.len().saturating_sub(t.saturating_sub(1)))
        .filter(move |_| t > 0 && w.len() >= t)
        .map(move |i| (i, &w.letters()[i..i + t]))
}

/// Exhaustive check of the condition at `lambda`: every window of length
/// `ceil(lambda |X_g|)` of `X_g` occurs once in `X_g` and nowhere in
/// `X_g^-1` or other members. Longer subwords inherit uniqueness from their
/// prefixes, so checking the threshold length is complete. One shared window
/// map per distinct threshold keeps the check near-linear in the total
/// family length.
pub fn verify_star_star(family: &WordFamily, lambda: Lambda) -> Result<(), StarStarFailure> {
    let inverses: Vec<Word> = family.words.iter().map(Word::inverse).collect();
    let thresholds: Vec<usize> = family
        .words
        .iter()
        .map(|w| lambda.threshold(w.len()))
        .collect();
    let mut distinct: Vec<usize> = thresholds.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for &t in &distinct {
        // All t-windows of every word and inverse, with their origins.
        let mut all: HashMap<&[Letter], Vec<(usize, bool, usize)>> = HashMap::new();
        for (hi, xh) in family.words.iter().enumerate() {
            for (pos, win) in windows(xh, t) {
                all.entry(win).or_default().push((hi, false, pos));
            }
            for (pos, win) in windows(&inverses[hi], t) {
                all.entry(win).or_default().push((hi, true, pos));
            }
        }
        for (gi, xg) in family.words.iter().enumerate() {
            if thresholds[gi] != t || xg.len() < t {
                continue;
            }
            for (pos, win) in windows(xg, t) {
                let occurrences = &all[win];
                for &(hi, inverted, hpos) in occurrences {
                    let (site, first) = if hi == gi && !inverted {
                        if hpos == pos {
                            continue;
                        }
                        (
                            FailureSite::SameWord { second_position: hpos.max(pos) },
                            hpos.min(pos),
                        )
                    } else if hi == gi {
                        (FailureSite::OwnInverse { position: hpos }, pos)
                    } else {
                        (
                            FailureSite::OtherWord {
                                key: family.keys[hi].clone(),
                                inverted,
                                position: hpos,
                            },
                            pos,
                        )
                    };
                    return Err(StarStarFailure {
                        key: family.keys[gi].clone(),
                        witness: Word::from_letters(win.iter().copied()),
                        position: first,
                        site,
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct GeneratedFamily {
    pub family: WordFamily,
    /// Integer stretch with `l(g) <= |X_g| < d * l(g)` for every member.
    pub stretch: u64,
    pub attempts: usize,
}

fn random_reduced(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(Gen(rng.gen_range(0..2u32)), rng.gen());
        if letters.last().map_or(false, |t| t.gen == l.gen && t.inv != l.inv) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

/// Builds a verified family realizing the requested lengths. Words are
/// stretched to a feasibility floor where threshold-length windows can be
/// globally distinct, then drawn at random and re-drawn until the exact
/// verifier passes; the achieved stretch is reported.
pub fn generate_family(
    lengths: &[(String, u64)],
    lambda: Lambda,
    seed: u64,
) -> Result<GeneratedFamily, FamilyError> {
    for (k, l) in lengths {
        if *l == 0 {
            return Err(FamilyError::InfeasibleLength(k.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extra_t = 0usize;
    const MAX_ATTEMPTS: usize = 64;
    for attempt in 1..=MAX_ATTEMPTS {
        // Feasibility floor: windows of length T over four signed letters
        // number about 3^T; keep that comfortably above the square of the
        // total letter count so random draws rarely collide.
        let mut t0 = 2usize;
        loop {
            let floor = lambda.threshold(1).max(t0).max(2);
            let total: usize = lengths
                .iter()
                .map(|(_, l)| {
                    (*l as usize).max(floor * lambda.den as usize / lambda.num as usize)
                })
                .sum();
            let needed = (total.max(2) as f64).log(3.0) * 2.0 + 4.0;
            if (t0 as f64) >= needed {
                break;
            }
            t0 += 1;
        }
        let t0 = t0 + extra_t;
        let min_len = t0 * lambda.den as usize / lambda.num as usize;
        let words: Vec<Word> = lengths
            .iter()
            .map(|(_, l)| random_reduced(&mut rng, (*l as usize).max(min_len)))
            .collect();
        let family = WordFamily::new(
            lengths.iter().map(|(k, _)| k.clone()).collect(),
            words,
            lambda,
        )?;
        if verify_star_star(&family, lambda).is_ok() {
            let stretch = family
                .words
                .iter()
                .zip(lengths)
                .map(|(w, (_, l))| w.len() as u64 / l + 1)
                .max()
                .unwrap_or(1);
            for (w, (k, l)) in family.words.iter().zip(lengths) {
                if (w.len() as u64) < *l || (w.len() as u64) >= stretch * l {
                    return Err(FamilyError::Bad(format!(
                        "stretch bookkeeping broke for `{k}`"
                    )));
                }
            }
            return Ok(GeneratedFamily { family, stretch, attempts: attempt });
        }
        extra_t += 2;
    }
    Err(FamilyError::GaveUp(MAX_ATTEMPTS))
}

#[derive(Debug, Clone)]
pub struct ProductBoundReport {
    pub trials: usize,
    pub all_pass: bool,
    /// Smallest observed `|product| / sum of |X_g|`.
    pub min_ratio: f64,
    /// The factor sequence attaining it, as `(index, inverted)`.
    pub worst: Vec<(usize, bool)>,
}

/// Random freely reduced products `X_{g_1}^{e_1} ... X_{g_s}^{e_s}` with no
/// adjacent inverse pair of the same word; checks
/// `|product| >= (1 - 2 lambda) * sum |X_{g_i}|` with exact integer
/// arithmetic.
pub fn product_lower_bound_check(
    family: &WordFamily,
    trials: usize,
    max_factors: usize,
    seed: u64,
) -> ProductBoundReport {
    let lambda = family.lambda;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all_pass = true;
    let mut min_ratio = f64::INFINITY;
    let mut worst = Vec::new();
    for _ in 0..trials {
        let s = rng.gen_range(1..=max_factors.max(1));
        let mut picks: Vec<(usize, bool)> = Vec::with_capacity(s);
        while picks.len() < s {
            let cand = (rng.gen_range(0..family.len()), rng.gen::<bool>());
            if let Some(&(pg, pe)) = picks.last() {
                if pg == cand.0 && pe != cand.1 {
                    continue;
                }
            }
            picks.push(cand);
        }
        let mut product = Word::empty();
        let mut total = 0usize;
        for &(gi, inv) in &picks {
            let x = &family.words[gi];
            total += x.len();
            product = product.concat(&if inv { x.inverse() } else { x.clone() });
        }
        // |product| * den >= (den - 2 num) * total, exactly.
        let lhs = product.len() as u64 * lambda.den;
        let rhs = lambda.den.saturating_sub(2 * lambda.num) * total as u64;
        if lhs < rhs {
            all_pass = false;
        }
        let ratio = product.len() as f64 / total as f64;
        if ratio < min_ratio {
            min_ratio = ratio;
            worst = picks;
        }
    }
    ProductBoundReport { trials, all_pass, min_ratio, worst }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_parsing_is_exact() {
        assert_eq!(Lambda::parse("0.02").unwrap(), Lambda { num: 2, den: 100 });
        assert_eq!(Lambda::parse("1/50").unwrap(), Lambda { num: 1, den: 50 });
        assert_eq!(Lambda::parse("0.02").unwrap().threshold(100), 2);
        assert_eq!(Lambda::DEFAULT.threshold(101), 3);
        assert_eq!(Lambda::DEFAULT.threshold(40), 1);
    }

    #[test]
    fn periodic_word_fails_at_half() {
        let al = Alphabet::from_names(["b_1", "b_2"]).unwrap();
        let x = al.parse_word("b_1 b_2 b_1 b_2 b_1 b_2 b_1 b_2").unwrap();
        let family = WordFamily::new(vec!["g".into()], vec![x], Lambda { num: 1, den: 2 }).unwrap();
        let fail = verify_star_star(&family, Lambda { num: 1, den: 2 }).unwrap_err();
        assert!(matches!(fail.site, FailureSite::SameWord { .. }));
        assert_eq!(fail.witness.len(), 4);
    }

    #[test]
    fn equal_words_fail() {
        // A word that verifies on its own fails as soon as a second member
        // shares its long subwords; duplicating it is the extreme case.
        let solo = generate_family(&[("g".into(), 40)], Lambda::DEFAULT, 9).unwrap();
        let x = solo.family.words[0].clone();
        let family = WordFamily::new(
            vec!["g".into(), "h".into()],
            vec![x.clone(), x],
            Lambda::DEFAULT,
        )
        .unwrap();
        let fail = verify_star_star(&family, Lambda::DEFAULT).unwrap_err();
        assert!(matches!(
            fail.site,
            FailureSite::OtherWord { inverted: false, .. }
        ));
    }

    #[test]
    fn generated_families_verify() {
        let lengths: Vec<(String, u64)> =
            (0..12).map(|i| (format!("g{i}"), 30 + 7 * i as u64)).collect();
        let out = generate_family(&lengths, Lambda::DEFAULT, 7).unwrap();
        assert!(verify_star_star(&out.family, Lambda::DEFAULT).is_ok());
        for ((_, l), w) in lengths.iter().zip(&out.family.words) {
            assert!(*l <= w.len() as u64);
            assert!((w.len() as u64) < out.stretch * l);
        }
    }

    #[test]
    fn single_word_family_is_easy() {
        let out = generate_family(&[("g".into(), 40)], Lambda::DEFAULT, 3).unwrap();
        assert_eq!(out.family.len(), 1);
        assert!(verify_star_star(&out.family, Lambda::DEFAULT).is_ok());
    }

    #[test]
    fn zero_length_is_infeasible() {
        let err = generate_family(&[("g".into(), 0)], Lambda::DEFAULT, 3).unwrap_err();
        assert!(matches!(err, FamilyError::InfeasibleLength(_)));
    }

    #[test]
    fn product_bound_holds_on_verified_family() {
        let lengths: Vec<(String, u64)> = (0..6).map(|i| (format!("g{i}"), 40 + i as u64)).collect();
        let out = generate_family(&lengths, Lambda::DEFAULT, 11).unwrap();
        let report = product_lower_bound_check(&out.family, 500, 6, 13);
        assert!(report.all_pass, "min ratio {}", report.min_ratio);
        assert!(report.min_ratio >= 1.0 - 2.0 * Lambda::DEFAULT.as_f64());
    }

    #[test]
    fn adversarial_family_breaks_the_bound() {
        // X_h ends with the inverse of X_g's prefix: the product X_h X_g
        // cancels almost half of everything.
        let out = generate_family(&[("g".into(), 60)], Lambda::DEFAULT, 5).unwrap();
        let xg = out.family.words[0].clone();
        let prefix = Word::from_letters(xg.letters()[..xg.len() / 2].iter().copied());
        let tail = Word::from_letters(xg.letters()[xg.len() / 2..].iter().copied());
        let xh = tail.concat(&prefix.inverse());
        let family = WordFamily::new(
            vec!["g".into(), "h".into()],
            vec![xg, xh],
            Lambda::DEFAULT,
        )
        .unwrap();
        assert!(verify_star_star(&family, Lambda::DEFAULT).is_err());
        let report = product_lower_bound_check(&family, 2000, 4, 17);
        assert!(!report.all_pass);
        assert!(report.min_ratio < 1.0 - 2.0 * Lambda::DEFAULT.as_f64());
    }
}
