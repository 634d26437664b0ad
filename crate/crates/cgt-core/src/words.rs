//! Free-group word algebra: alphabets with formal inverses, free reduction,
//! conjugation, substitution and subword search.
//!
//! A [`Word`] is always stored freely reduced; unreduced letter sequences only
//! exist transiently as `Vec<Letter>` before going through [`Word::from_letters`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a generator in an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen(pub u32);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A signed generator occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Gen,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: Gen, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn positive(gen: Gen) -> Self {
        Letter { gen, inv: false }
    }

    pub fn negative(gen: Gen) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("no substitution image for generator `{0}`")]
    UnmappedGenerator(String),
    #[error("generator name `{0}` is reserved or empty")]
    BadGeneratorName(String),
}

/// Ordered set of named generators. Formal inverses are implicit: every
/// generator `x` has the inverse symbol `x^-1`, so the inverse pairing is an
/// involution without fixed points by construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet { names: Vec::new() }
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Alphabet::new();
        for n in names {
            a.add(n.into())?;
        }
        Ok(a)
    }

    /// Adds a generator, returning its index. Names must be unique, non-empty,
    /// free of whitespace and must not end in the reserved `^-1` marker.
    pub fn add(&mut self, name: impl Into<String>) -> Result<Gen, WordError> {
        let name = name.into();
        if name.is_empty()
            || name.contains(char::is_whitespace)
            || name.ends_with("^-1")
            || name == "\u{03b5}"
        {
            return Err(WordError::BadGeneratorName(name));
        }
        if self.names.iter().any(|n| *n == name) {
            return Err(WordError::DuplicateGenerator(name));
        }
        self.names.push(name);
        Ok(Gen(self.names.len() as u32 - 1))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Gen> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Gen(i as u32))
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.names.len() as u32).map(Gen)
    }

    /// Parses the text word format: whitespace-separated generator names with
    /// an optional trailing `^-1`. The empty string and `ε` denote the empty
    /// word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "\u{03b5}" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (tok, false),
            };
            let gen = self
                .lookup(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            letters.push(Letter { gen, inv });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { alphabet: self, word: w }
    }

    /// Formats an owned word; handy when the word is a temporary.
    pub fn display_owned(&self, w: Word) -> String {
        self.display(&w).to_string()
    }
}

pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "\u{03b5}");
        }
        for (i, l) in self.word.letters().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.name(l.gen))?;
            if l.inv {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// A freely reduced word. The canonical form invariant is maintained by every
/// constructor and operation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn gen(g: Gen) -> Self {
        Word(vec![Letter::positive(g)])
    }

    /// Freely reduces a letter sequence with the usual stack pass.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word(stack)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn concat_all<'a, I: IntoIterator<Item = &'a Word>>(parts: I) -> Word {
        Word::from_letters(parts.into_iter().flat_map(|w| w.0.iter().copied()))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Conjugate `self^u = u · self · u^-1`.
    pub fn conjugate(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }

    /// Commutator `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Homomorphic image under a generator map; inverses map to inverse images.
    /// Errors on the first generator without an image.
    pub fn substitute<F>(&self, alphabet: &Alphabet, mut map: F) -> Result<Word, WordError>
    where
        F: FnMut(Gen) -> Option<Word>,
    {
        let mut letters = Vec::new();
        for l in &self.0 {
            let image = map(l.gen)
                .ok_or_else(|| WordError::UnmappedGenerator(alphabet.name(l.gen).to_string()))?;
            let image = if l.inv { image.inverse() } else { image };
            letters.extend_from_slice(image.letters());
        }
        Ok(Word::from_letters(letters))
    }

    /// All start offsets where `pattern` (and `pattern^-1` when asked) occurs
    /// as a contiguous subword. The pattern must be nonempty.
    pub fn find_occurrences(&self, pattern: &Word, include_inverses: bool) -> Vec<usize> {
        assert!(!pattern.is_empty(), "find_occurrences: empty pattern");
        let mut hits = Vec::new();
        let inv = pattern.inverse();
        let n = pattern.len();
        if self.len() < n {
            return hits;
        }
        for start in 0..=self.len() - n {
            let window = &self.0[start..start + n];
            if window == pattern.letters() || (include_inverses && window == inv.letters()) {
                hits.push(start);
            }
        }
        hits
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) if self.len() > 1 => !f.cancels(l),
            _ => true,
        }
    }

    /// Strips conjugating ends: returns `(core, x)` with `self = x · core · x^-1`
    /// and `core` cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let mut core = self.0.clone();
        let mut prefix = Vec::new();
        while core.len() > 1 && core.first().unwrap().cancels(*core.last().unwrap()) {
            prefix.push(core.remove(0));
            core.pop();
        }
        (Word(core), Word(prefix))
    }

    pub fn cyclic_shift(&self, by: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let by = by % self.len();
        Word::from_letters(self.0[by..].iter().chain(self.0[..by].iter()).copied())
    }

    /// Closure of the cyclic reduction of `self` under cyclic shifts and
    /// inverses. Reports the core so callers can see when `self` itself was not
    /// cyclically reduced.
    pub fn cyclic_closure(&self) -> CyclicClosure {
        let (core, conjugator) = self.cyclically_reduce();
        let mut words = BTreeSet::new();
        let inv = core.inverse();
        for by in 0..core.len().max(1) {
            words.insert(core.cyclic_shift(by));
            words.insert(inv.cyclic_shift(by));
        }
        CyclicClosure { core, conjugator, words }
    }
}

/// Result of [`Word::cyclic_closure`].
#[derive(Debug, Clone)]
pub struct CyclicClosure {
    /// Cyclically reduced core of the input.
    pub core: Word,
    /// Witness `x` with input `= x · core · x^-1`; empty iff the input was
    /// already cyclically reduced.
    pub conjugator: Word,
    pub words: BTreeSet<Word>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::from_names(["a", "b"]).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        let al = ab();
        let w = al.parse_word("a a^-1 b").unwrap();
        assert_eq!(w, al.parse_word("b").unwrap());
    }

    #[test]
    fn reduce_empty_word() {
        let al = ab();
        assert_eq!(al.parse_word("").unwrap(), Word::empty());
        assert_eq!(al.parse_word("\u{03b5}").unwrap(), Word::empty());
    }

    #[test]
    fn reduce_nested_cancellation() {
        // a b b^-1 a^-1 a -> a, checked by hand against the stack pass.
        let al = ab();
        let w = al.parse_word("a b b^-1 a^-1 a").unwrap();
        assert_eq!(w, al.parse_word("a").unwrap());
    }

    #[test]
    fn conjugation_examples() {
        let al = ab();
        let a = al.parse_word("a").unwrap();
        let b = al.parse_word("b").unwrap();
        assert_eq!(a.conjugate(&Word::empty()), a);
        assert_eq!(a.conjugate(&b), al.parse_word("b a b^-1").unwrap());
        assert_eq!(a.conjugate(&a), a);
    }

    #[test]
    fn substitute_examples() {
        let ys = Alphabet::from_names(["y1", "y2"]).unwrap();
        let ss = Alphabet::from_names(["s1", "s2"]).unwrap();
        let map = |g: Gen| Some(Word::gen(Gen(g.0)));
        let w = ys.parse_word("y1 y2").unwrap();
        let img = w.substitute(&ys, map).unwrap();
        assert_eq!(img, ss.parse_word("s1 s2").unwrap());

        let w = ys.parse_word("y1 y1^-1").unwrap();
        assert_eq!(w, Word::empty());

        let al = ab();
        let target = al.parse_word("a b").unwrap();
        let w = ys.parse_word("y1^-1").unwrap();
        let img = w
            .substitute(&ys, |g| (g.0 == 0).then(|| target.clone()))
            .unwrap();
        assert_eq!(img, al.parse_word("b^-1 a^-1").unwrap());
    }

    #[test]
    fn substitute_unmapped_generator_errors() {
        let ys = Alphabet::from_names(["y1", "y2"]).unwrap();
        let w = ys.parse_word("y1 y2").unwrap();
        let err = w
            .substitute(&ys, |g| (g.0 == 0).then(|| Word::gen(Gen(0))))
            .unwrap_err();
        assert_eq!(err, WordError::UnmappedGenerator("y2".into()));
    }

    #[test]
    fn find_occurrences_examples() {
        let al = ab();
        let abab = al.parse_word("a b a b").unwrap();
        let pat = al.parse_word("a b").unwrap();
        assert_eq!(abab.find_occurrences(&pat, false), vec![0, 2]);

        let t = al.parse_word("b a^-1").unwrap();
        assert_eq!(t.find_occurrences(&pat, true), Vec::<usize>::new());

        let a = al.parse_word("a").unwrap();
        let ainv = al.parse_word("a^-1").unwrap();
        assert_eq!(ainv.find_occurrences(&a, true), vec![0]);
        assert_eq!(ainv.find_occurrences(&a, false), Vec::<usize>::new());
    }

    #[test]
    fn cyclic_closure_examples() {
        let al = ab();
        let w = al.parse_word("a b").unwrap();
        let c = w.cyclic_closure();
        let expect: BTreeSet<Word> = ["a b", "b a", "b^-1 a^-1", "a^-1 b^-1"]
            .iter()
            .map(|s| al.parse_word(s).unwrap())
            .collect();
        assert_eq!(c.words, expect);
        assert!(c.conjugator.is_empty());

        let a = al.parse_word("a").unwrap();
        let c = a.cyclic_closure();
        assert_eq!(c.words.len(), 2);

        // abab: period-2 overlap collapses the closure to 4 elements,
        // verified by brute-force enumeration and dedup (the BTreeSet).
        let w = al.parse_word("a b a b").unwrap();
        assert_eq!(w.cyclic_closure().words.len(), 4);
    }

    #[test]
    fn cyclic_reduce_reports_conjugator() {
        let al = ab();
        let w = al.parse_word("a b a b^-1 a^-1").unwrap();
        let (core, x) = w.cyclically_reduce();
        assert_eq!(core, al.parse_word("a").unwrap());
        assert_eq!(x, al.parse_word("a b").unwrap());
        assert_eq!(x.concat(&core).concat(&x.inverse()), w);
    }

    #[test]
    fn display_round_trip() {
        let al = ab();
        for s in ["\u{03b5}", "a", "a b^-1 a", "b^-1"] {
            let w = al.parse_word(s).unwrap();
            assert_eq!(al.display(&w).to_string(), s.to_string());
        }
    }

    fn arb_word() -> impl Strategy<Value = Vec<(u8, bool)>> {
        prop::collection::vec((0u8..3, any::<bool>()), 0..24)
    }

    fn mk(raw: &[(u8, bool)]) -> Word {
        Word::from_letters(
            raw.iter()
                .map(|&(g, inv)| Letter::new(Gen(g as u32), inv)),
        )
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(raw in arb_word()) {
            let w = mk(&raw);
            prop_assert_eq!(Word::from_letters(w.letters().to_vec()), w);
        }

        #[test]
        fn word_times_inverse_is_trivial(raw in arb_word()) {
            let w = mk(&raw);
            prop_assert_eq!(w.concat(&w.inverse()).len(), 0);
        }

        #[test]
        fn conjugate_composes(raw in arb_word(), u in arb_word(), v in arb_word()) {
            let w = mk(&raw);
            let u = mk(&u);
            let v = mk(&v);
            prop_assert_eq!(w.conjugate(&u.concat(&v)), w.conjugate(&v).conjugate(&u));
        }

        #[test]
        fn substitute_commutes_with_reduction(raw in arb_word()) {
            // substitute(reduce(w), m) = reduce(substitute(w, m)) with the
            // unreduced side folded letter by letter.
            let al = Alphabet::from_names(["x0", "x1", "x2"]).unwrap();
            let images = [
                al.parse_word("x1 x0").unwrap(),
                al.parse_word("x2^-1").unwrap(),
                al.parse_word("x0 x0").unwrap(),
            ];
            let reduced = mk(&raw);
            let via_reduced = reduced
                .substitute(&al, |g| Some(images[g.index()].clone()))
                .unwrap();
            let mut letters = Vec::new();
            for &(g, inv) in &raw {
                let img = &images[g as usize];
                let img = if inv { img.inverse() } else { img.clone() };
                letters.extend_from_slice(img.letters());
            }
            prop_assert_eq!(via_reduced, Word::from_letters(letters));
        }

        #[test]
        fn closure_size_bounded(raw in arb_word()) {
            let w = mk(&raw);
            let c = w.cyclic_closure();
            prop_assert!(c.words.len() <= (2 * c.core.len()).max(2));
        }
    }
}
