//! Group presentations and the machine-to-group compilers: `G(M)` from a
//! Turing machine, `G_N(S)` from an S-machine, the explicit `G_{m,n}` family
//! and the `H_{m,n}` embedding relations.
//!
//! Conventions fixed here: conjugation is `x^r = r x r^-1`; a relation
//! `left = right` is stored as the relator `left · right^-1`; rule and
//! k-letters are shared across the `N` copies while state and tape letters
//! are copied with a `#c` suffix.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::smachine::{MachineBuilder, SMachine};
use crate::turing::{TuringMachine, LEFT_SENTINEL};
use crate::words::{Alphabet, Gen, Letter, Word, WordError};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("relator `{0}` is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("bad presentation data: {0}")]
    Bad(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "tape-a")]
    TapeA,
    #[serde(rename = "state-q")]
    StateQ,
    #[serde(rename = "k-letter")]
    KLetter,
    #[serde(rename = "rule-r")]
    RuleR,
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "b-letter")]
    BLetter,
    #[serde(rename = "other")]
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub role: Role,
    /// Copy index `1..=N`, or `None` for letters shared across copies.
    pub copy: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct GroupPresentation {
    pub alphabet: Alphabet,
    /// Parallel to the alphabet.
    pub info: Vec<GeneratorInfo>,
    pub relators: Vec<Word>,
    /// Number of disjoint copies used by the compilers; 1 for plain
    /// presentations.
    pub n_copies: u32,
    pub source: String,
}

fn copy_name(base: &str, c: u32) -> String {
    format!("{base}#{c}")
}

impl GroupPresentation {
    /// Plain presentation from generator names and relator texts; all roles
    /// `Other`.
    pub fn from_texts(
        gens: &[&str],
        relators: &[&str],
        source: &str,
    ) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::from_names(gens.iter().copied())?;
        let info = gens
            .iter()
            .map(|g| GeneratorInfo { name: g.to_string(), role: Role::Other, copy: None })
            .collect();
        let mut p = GroupPresentation {
            alphabet,
            info,
            relators: Vec::new(),
            n_copies: 1,
            source: source.to_string(),
        };
        for r in relators {
            let w = p.alphabet.parse_word(r)?;
            p.push_relator(w)?;
        }
        Ok(p)
    }

    pub fn push_relator(&mut self, w: Word) -> Result<(), PresentationError> {
        if !w.is_cyclically_reduced() || w.is_empty() {
            return Err(PresentationError::NotCyclicallyReduced(
                self.alphabet.display(&w).to_string(),
            ));
        }
        self.relators.push(w);
        Ok(())
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.alphabet.lookup(name)
    }

    /// The copy-`c` image of a base-named generator.
    pub fn copy_gen(&self, base: &str, c: u32) -> Option<Gen> {
        self.alphabet.lookup(&copy_name(base, c))
    }

    /// Closure of all relators under cyclic shifts and inverses.
    pub fn relator_closure(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for r in &self.relators {
            out.extend(r.cyclic_closure().words);
        }
        out
    }

    /// Maps a word over `base` into the copy-`c` alphabet of this
    /// presentation, matching generators by name.
    pub fn copy_word(&self, base: &Alphabet, w: &Word, c: u32) -> Result<Word, PresentationError> {
        w.substitute(base, |g| {
            let name = base.name(g);
            self.copy_gen(name, c)
                .or_else(|| self.gen_by_name(name))
                .map(Word::gen)
        })
        .map_err(PresentationError::Word)
    }

    /// The hub-style word `k_1 w^(1) k_2 w^(2) ... k_N w^(N)` over this
    /// presentation's alphabet, for `w` written in the base (uncopied) names.
    pub fn hub_of(&self, base: &Alphabet, w: &Word) -> Result<Word, PresentationError> {
        let mut letters: Vec<Letter> = Vec::new();
        for c in 1..=self.n_copies {
            let k = self
                .gen_by_name(&format!("k_{c}"))
                .ok_or_else(|| PresentationError::Bad(format!("presentation has no k_{c}")))?;
            letters.push(Letter::positive(k));
            let wc = self.copy_word(base, w, c)?;
            letters.extend_from_slice(wc.letters());
        }
        Ok(Word::from_letters(letters))
    }

    /// Generators-as-sets plus relators-as-multisets equality. Compiled
    /// presentations use deterministic naming, so schema-level equality shows
    /// up as literal equality here.
    pub fn structurally_eq(&self, other: &GroupPresentation) -> bool {
        let gens = |p: &GroupPresentation| -> BTreeSet<GeneratorInfo> {
            p.info.iter().cloned().collect()
        };
        if gens(self) != gens(other) {
            return false;
        }
        let rels = |p: &GroupPresentation| -> Vec<String> {
            let mut v: Vec<String> = p
                .relators
                .iter()
                .map(|r| p.alphabet.display(r).to_string())
                .collect();
            v.sort();
            v
        };
        rels(self) == rels(other)
    }

    pub fn count_by_role(&self, role: Role) -> usize {
        self.info.iter().filter(|g| g.role == role).count()
    }
}

/// Builder that keeps `info` parallel to the alphabet.
struct PresentationBuilder {
    p: GroupPresentation,
}

impl PresentationBuilder {
    fn new(n_copies: u32, source: &str) -> Self {
        PresentationBuilder {
            p: GroupPresentation {
                alphabet: Alphabet::new(),
                info: Vec::new(),
                relators: Vec::new(),
                n_copies,
                source: source.to_string(),
            },
        }
    }

    fn add(&mut self, name: String, role: Role, copy: Option<u32>) -> Result<Gen, PresentationError> {
        let g = self.p.alphabet.add(name.clone())?;
        self.p.info.push(GeneratorInfo { name, role, copy });
        Ok(g)
    }

    fn relator(&mut self, letters: Vec<Letter>) -> Result<(), PresentationError> {
        self.p.push_relator(Word::from_letters(letters))
    }

    /// Relation `left = right` as the relator `left · right^-1`.
    fn relation(&mut self, left: Word, right: Word) -> Result<(), PresentationError> {
        self.relator(
            left.concat(&right.inverse())
                .letters()
                .to_vec(),
        )
    }

    /// Commutation `x y = y x`.
    fn commutation(&mut self, x: Gen, y: Gen) -> Result<(), PresentationError> {
        let xw = Word::gen(x);
        let yw = Word::gen(y);
        self.relation(xw.concat(&yw), yw.concat(&xw))
    }

    /// Conjugation relation `x^r = image`, i.e. `r x r^-1 = image`.
    fn conjugation(&mut self, r: Gen, x: Word, image: Word) -> Result<(), PresentationError> {
        self.relation(x.conjugate(&Word::gen(r)), image)
    }
}

/// The standalone hub word `K(w) = k_1 w^(1) ... k_N w^(N)` over a fresh
/// alphabet with `N` disjoint copies of `w`'s letters.
#[derive(Debug, Clone)]
pub struct HubWord {
    pub alphabet: Alphabet,
    pub word: Word,
}

pub fn hub_word(base: &Alphabet, w: &Word, n: u32) -> Result<HubWord, PresentationError> {
    assert!(n >= 1, "hub needs at least one copy");
    let mut alphabet = Alphabet::new();
    let mut ks = Vec::new();
    for c in 1..=n {
        ks.push(alphabet.add(format!("k_{c}"))?);
    }
    let mut copies: Vec<Vec<Gen>> = Vec::new();
    for c in 1..=n {
        let mut m = Vec::new();
        for g in base.gens() {
            m.push(alphabet.add(copy_name(base.name(g), c))?);
        }
        copies.push(m);
    }
    let mut letters = Vec::new();
    for c in 0..n as usize {
        letters.push(Letter::positive(ks[c]));
        for l in w.letters() {
            letters.push(Letter::new(copies[c][l.gen.index()], l.inv));
        }
    }
    Ok(HubWord { alphabet, word: Word::from_letters(letters) })
}

/// The default number of disjoint copies; 28 suffices for the hub
/// tessellation argument.
pub const DEFAULT_N: u32 = 28;

/// The letter-stacking S-machine behind `G_{m,n}`: rules
/// `r_j = [q_i -> a_j q_i]` for all `i`, accepting at `q_1 ... q_n`. In this
/// literal form the first part inserts tape letters left of the `Q_1`-letter,
/// which `validate` flags; the machine exists to be compiled, not run. The
/// anchored variant adds a left sentinel class so the same rules become a
/// well-formed, runnable machine.
pub fn gmn_machine(m: u32, n: u32, anchored: bool) -> SMachine {
    assert!(m >= 1 && n >= 2);
    let qs: Vec<String> = (1..=n).map(|i| format!("q_{i}")).collect();
    let tape: Vec<String> = (1..=m).map(|j| format!("a_{j}")).collect();
    let mut classes: Vec<Vec<String>> = Vec::new();
    if anchored {
        classes.push(vec![LEFT_SENTINEL.to_string()]);
    }
    classes.extend(qs.iter().map(|q| vec![q.clone()]));
    let segs = classes.len() - 1;
    let tapes: Vec<Vec<String>> = (0..segs).map(|_| tape.clone()).collect();
    let builder = MachineBuilder::new(&classes, &tapes).unwrap();
    let mut rules: Vec<(String, Vec<(String, String)>)> = Vec::new();
    for j in 1..=m {
        let mut parts: Vec<(String, String)> = Vec::new();
        if anchored {
            parts.push((LEFT_SENTINEL.to_string(), LEFT_SENTINEL.to_string()));
        }
        for q in &qs {
            parts.push((q.clone(), format!("a_{j} {q}")));
        }
        rules.push((format!("r_{j}"), parts));
    }
    let rule_refs: Vec<(&str, Vec<(&str, &str)>)> = rules
        .iter()
        .map(|(nm, ps)| {
            (
                nm.as_str(),
                ps.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect(),
            )
        })
        .collect();
    let accept = {
        let mut s = String::new();
        if anchored {
            s.push_str(LEFT_SENTINEL);
            s.push(' ');
        }
        s.push_str(&qs.join(" "));
        s
    };
    builder.build(&rule_refs, &accept).unwrap()
}

/// The explicit presentation of `G_{m,n}`: per copy the relations
/// `q_i^{r_j} = a_j q_i`, `a r = r a`, shared `k r = r k` and the hub
/// `K(q_1 ... q_n)`.
pub fn compile_gmn(m: u32, n: u32, n_copies: u32) -> Result<GroupPresentation, PresentationError> {
    assert!(m >= 1 && n >= 2 && n_copies >= 1);
    let mut b = PresentationBuilder::new(n_copies, &format!("gmn(m={m},n={n},N={n_copies})"));
    let mut ks = Vec::new();
    for c in 1..=n_copies {
        ks.push(b.add(format!("k_{c}"), Role::KLetter, None)?);
    }
    let mut qs: Vec<Vec<Gen>> = Vec::new();
    let mut as_: Vec<Vec<Gen>> = Vec::new();
    for c in 1..=n_copies {
        let mut q = Vec::new();
        for i in 1..=n {
            q.push(b.add(copy_name(&format!("q_{i}"), c), Role::StateQ, Some(c))?);
        }
        qs.push(q);
        let mut a = Vec::new();
        for j in 1..=m {
            a.push(b.add(copy_name(&format!("a_{j}"), c), Role::TapeA, Some(c))?);
        }
        as_.push(a);
    }
    let mut rs = Vec::new();
    for j in 1..=m {
        rs.push(b.add(format!("r_{j}"), Role::RuleR, None)?);
    }
    for c in 0..n_copies as usize {
        for (j, &r) in rs.iter().enumerate() {
            for &q in &qs[c] {
                let image = Word::gen(as_[c][j]).concat(&Word::gen(q));
                b.conjugation(r, Word::gen(q), image)?;
            }
        }
        for &a in &as_[c] {
            for &r in &rs {
                b.commutation(a, r)?;
            }
        }
    }
    for &k in &ks {
        for &r in &rs {
            b.commutation(k, r)?;
        }
    }
    let mut hub = Vec::new();
    for c in 0..n_copies as usize {
        hub.push(Letter::positive(ks[c]));
        for &q in &qs[c] {
            hub.push(Letter::positive(q));
        }
    }
    b.relator(hub)?;
    Ok(b.p)
}

/// `G_N(S)`: one shared rule letter per S-rule, relations `U^r = V` per part
/// per copy, tape/rule and k/rule commutations, and the hub `K(W_0)`.
pub fn compile_gns(machine: &SMachine, n_copies: u32) -> Result<GroupPresentation, PresentationError> {
    assert!(n_copies >= 1);
    let mut b = PresentationBuilder::new(n_copies, &format!("gns(N={n_copies})"));
    let mut ks = Vec::new();
    for c in 1..=n_copies {
        ks.push(b.add(format!("k_{c}"), Role::KLetter, None)?);
    }
    let state_letters: Vec<Gen> = machine.classes.iter().flatten().copied().collect();
    let tape_letters: Vec<Gen> = {
        let mut set = BTreeSet::new();
        for y in &machine.tape_alphabets {
            set.extend(y.iter().copied());
        }
        set.into_iter().collect()
    };
    for c in 1..=n_copies {
        for &q in &state_letters {
            b.add(copy_name(machine.alphabet.name(q), c), Role::StateQ, Some(c))?;
        }
        for &y in &tape_letters {
            b.add(copy_name(machine.alphabet.name(y), c), Role::TapeA, Some(c))?;
        }
    }
    let mut rule_gens = Vec::new();
    for rule in &machine.rules {
        rule_gens.push(b.add(rule.name.clone(), Role::RuleR, None)?);
    }
    for c in 1..=n_copies {
        for (ri, rule) in machine.rules.iter().enumerate() {
            let r = rule_gens[ri];
            for part in &rule.parts {
                let u = b.p.copy_word(&machine.alphabet, &part.lhs.to_word(), c)?;
                let v = b.p.copy_word(&machine.alphabet, &part.rhs.to_word(), c)?;
                b.conjugation(r, u, v)?;
            }
        }
        for &y in &tape_letters {
            let yc = b
                .p
                .copy_gen(machine.alphabet.name(y), c)
                .expect("tape copy exists");
            for &r in &rule_gens {
                b.commutation(yc, r)?;
            }
        }
    }
    for &k in &ks {
        for &r in &rule_gens {
            b.commutation(k, r)?;
        }
    }
    let hub = b.p.hub_of(&machine.alphabet, &machine.accept.to_word())?;
    b.p.push_relator(hub)?;
    Ok(b.p)
}

/// `G(M)`: relations `(uqv)^r = u'q'v'` per transition per copy, plus the
/// same commutation families and the hub `K(W_0)` at the accept
/// configuration.
pub fn compile_gm(tm: &TuringMachine, n_copies: u32) -> Result<GroupPresentation, PresentationError> {
    assert!(n_copies >= 1);
    let mut b = PresentationBuilder::new(n_copies, &format!("gm(N={n_copies})"));
    let mut ks = Vec::new();
    for c in 1..=n_copies {
        ks.push(b.add(format!("k_{c}"), Role::KLetter, None)?);
    }
    // Configuration words mix states and tape letters; build a base alphabet
    // holding both so `copy_word` can map them.
    let mut base = Alphabet::new();
    for s in &tm.states {
        base.add(s.clone())?;
    }
    for g in tm.alphabet.gens() {
        base.add(tm.alphabet.name(g).to_string())?;
    }
    for c in 1..=n_copies {
        for s in &tm.states {
            b.add(copy_name(s, c), Role::StateQ, Some(c))?;
        }
        for g in tm.alphabet.gens() {
            b.add(copy_name(tm.alphabet.name(g), c), Role::TapeA, Some(c))?;
        }
    }
    let mut rule_gens = Vec::new();
    for t in &tm.transitions {
        rule_gens.push(b.add(t.name.clone(), Role::RuleR, None)?);
    }
    let config_word = |t_left: &Word, state: usize, t_right: &Word| -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        let push_tape = |letters: &mut Vec<Letter>, w: &Word| -> Result<(), PresentationError> {
            for l in w.letters() {
                let g = base
                    .lookup(tm.alphabet.name(l.gen))
                    .ok_or_else(|| PresentationError::Bad("tape letter missing".into()))?;
                letters.push(Letter::new(g, l.inv));
            }
            Ok(())
        };
        push_tape(&mut letters, t_left)?;
        letters.push(Letter::positive(
            base.lookup(&tm.states[state])
                .ok_or_else(|| PresentationError::Bad("state missing".into()))?,
        ));
        push_tape(&mut letters, t_right)?;
        Ok(Word::from_letters(letters))
    };
    for c in 1..=n_copies {
        for (ti, t) in tm.transitions.iter().enumerate() {
            let lhs = config_word(&t.read_left, t.state.0, &t.read_right)?;
            let rhs = config_word(&t.write_left, t.new_state.0, &t.write_right)?;
            let u = b.p.copy_word(&base, &lhs, c)?;
            let v = b.p.copy_word(&base, &rhs, c)?;
            b.conjugation(rule_gens[ti], u, v)?;
        }
        for g in tm.alphabet.gens() {
            let ac = b
                .p
                .copy_gen(tm.alphabet.name(g), c)
                .expect("tape copy exists");
            for &r in &rule_gens {
                b.commutation(ac, r)?;
            }
        }
    }
    for &k in &ks {
        for &r in &rule_gens {
            b.commutation(k, r)?;
        }
    }
    let w0 = config_word(&tm.accept.left, tm.accept.state.0, &tm.accept.right)?;
    let hub = b.p.hub_of(&base, &w0)?;
    b.p.push_relator(hub)?;
    Ok(b.p)
}

/// The base alphabet of configuration words for [`compile_gm`] (states then
/// tape letters), needed to build hub words like `K(U)` for input words `U`.
pub fn gm_base_alphabet(tm: &TuringMachine) -> Alphabet {
    let mut base = Alphabet::new();
    for s in &tm.states {
        base.add(s.clone()).unwrap();
    }
    for g in tm.alphabet.gens() {
        base.add(tm.alphabet.name(g).to_string()).unwrap();
    }
    base
}

/// `H_{m,n}` / `H_N(S)` embedding relations over a compiled base: a stable
/// letter `rho` that commutes with k-, q- and non-first-copy tape letters and
/// twists first-copy tape letters by `a^rho = a b`, plus `a b = b a` and
/// `q b = b q` in the first copy.
pub fn compile_hmn(base: &GroupPresentation, b_count: u32) -> Result<GroupPresentation, PresentationError> {
    let mut p = base.clone();
    p.source = format!("hmn({})", base.source);
    let first_copy_tapes: Vec<Gen> = p
        .info
        .iter()
        .enumerate()
        .filter(|(_, g)| g.role == Role::TapeA && g.copy == Some(1))
        .map(|(i, _)| Gen(i as u32))
        .collect();
    if first_copy_tapes.len() != b_count as usize {
        return Err(PresentationError::Bad(format!(
            "b_count {} does not match the {} first-copy tape letters",
            b_count,
            first_copy_tapes.len()
        )));
    }
    let rho = p.alphabet.add("rho".to_string())?;
    p.info.push(GeneratorInfo { name: "rho".into(), role: Role::Rho, copy: None });
    let mut bs = Vec::new();
    for j in 1..=b_count {
        let g = p.alphabet.add(format!("b_{j}"))?;
        p.info.push(GeneratorInfo { name: format!("b_{j}"), role: Role::BLetter, copy: None });
        bs.push(g);
    }
    let snapshot = p.info.clone();
    let push_comm = |p: &mut GroupPresentation, x: Gen, y: Gen| -> Result<(), PresentationError> {
        let xw = Word::gen(x);
        let yw = Word::gen(y);
        p.push_relator(xw.concat(&yw).concat(&xw.inverse()).concat(&yw.inverse()))
    };
    for (i, g) in snapshot.iter().enumerate() {
        if g.role == Role::KLetter {
            push_comm(&mut p, rho, Gen(i as u32))?;
        }
    }
    for (i, g) in snapshot.iter().enumerate() {
        if g.role == Role::StateQ {
            push_comm(&mut p, rho, Gen(i as u32))?;
        }
    }
    for (i, g) in snapshot.iter().enumerate() {
        if g.role == Role::TapeA && g.copy.is_some() && g.copy != Some(1) {
            push_comm(&mut p, rho, Gen(i as u32))?;
        }
    }
    for (j, &a) in first_copy_tapes.iter().enumerate() {
        // a^rho = a b_j
        let left = Word::gen(a).conjugate(&Word::gen(rho));
        let right = Word::gen(a).concat(&Word::gen(bs[j]));
        p.push_relator(left.concat(&right.inverse()))?;
    }
    for &a in &first_copy_tapes {
        for &bb in &bs {
            push_comm(&mut p, a, bb)?;
        }
    }
    for (i, g) in snapshot.iter().enumerate() {
        if g.role == Role::StateQ && g.copy == Some(1) {
            for &bb in &bs {
                push_comm(&mut p, Gen(i as u32), bb)?;
            }
        }
    }
    Ok(p)
}

/// JSON file format: `{generators: [{name, role, copy}], relators, meta}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<GeneratorInfo>,
    pub relators: Vec<String>,
    pub meta: PresentationMeta,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PresentationMeta {
    #[serde(rename = "N")]
    pub n_copies: u32,
    pub source: String,
}

impl PresentationFile {
    pub fn from_presentation(p: &GroupPresentation) -> Self {
        PresentationFile {
            generators: p.info.clone(),
            relators: p
                .relators
                .iter()
                .map(|r| p.alphabet.display(r).to_string())
                .collect(),
            meta: PresentationMeta { n_copies: p.n_copies, source: p.source.clone() },
        }
    }

    pub fn to_presentation(&self) -> Result<GroupPresentation, PresentationError> {
        let alphabet = Alphabet::from_names(self.generators.iter().map(|g| g.name.clone()))?;
        let mut p = GroupPresentation {
            alphabet,
            info: self.generators.clone(),
            relators: Vec::new(),
            n_copies: self.meta.n_copies,
            source: self.meta.source.clone(),
        };
        for r in &self.relators {
            let w = p.alphabet.parse_word(r)?;
            p.push_relator(w)?;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turing::two_rule_eraser;

    #[test]
    fn hub_word_lengths() {
        let base = Alphabet::from_names(["q_1", "q_2", "q_3", "a"]).unwrap();
        let w = base.parse_word("q_1 q_2 q_3").unwrap();
        let h = hub_word(&base, &w, 28).unwrap();
        assert_eq!(h.word.len(), 28 * 4);
        assert_eq!(h.word.len(), 112);

        let h = hub_word(&base, &Word::empty(), 3).unwrap();
        assert_eq!(h.word.len(), 3);

        let w = base.parse_word("a q_1 a q_2 a q_3").unwrap();
        let h = hub_word(&base, &w, 2).unwrap();
        assert_eq!(h.word.len(), 2 * 7);
    }

    #[test]
    fn gmn_counts_match_closed_forms() {
        let p = compile_gmn(1, 3, 2).unwrap();
        // 2 k + 2*3 q + 2*1 a + 1 r = 11 generators.
        assert_eq!(p.info.len(), 11);
        // 2*3 q-rules + 2*1 ar + 2*1 kr + 1 hub = 11 relators.
        assert_eq!(p.relators.len(), 11);
        assert_eq!(p.count_by_role(Role::KLetter), 2);
        assert_eq!(p.count_by_role(Role::StateQ), 6);
        assert_eq!(p.count_by_role(Role::TapeA), 2);
        assert_eq!(p.count_by_role(Role::RuleR), 1);
        // All relators are freely and cyclically reduced by construction;
        // re-check explicitly.
        for r in &p.relators {
            assert!(r.is_cyclically_reduced());
            assert_eq!(&Word::from_letters(r.letters().to_vec()), r);
        }
    }

    #[test]
    fn gmn_hub_is_hub_word() {
        for n_copies in [2u32, 28] {
            let p = compile_gmn(1, 3, n_copies).unwrap();
            let hub = p.relators.last().unwrap();
            assert_eq!(hub.len() as u32, 4 * n_copies);
            let base = Alphabet::from_names(["q_1", "q_2", "q_3"]).unwrap();
            let w = base.parse_word("q_1 q_2 q_3").unwrap();
            assert_eq!(&p.hub_of(&base, &w).unwrap(), hub);
        }
    }

    #[test]
    fn gns_over_gmn_machine_matches_gmn() {
        for (m, n, nc) in [(1u32, 3u32, 2u32), (2, 3, 3)] {
            let machine = gmn_machine(m, n, false);
            let gns = compile_gns(&machine, nc).unwrap();
            let gmn = compile_gmn(m, n, nc).unwrap();
            assert!(gns.structurally_eq(&gmn), "m={m} n={n} N={nc}");
        }
    }

    #[test]
    fn gmn_machine_variants() {
        let plain = gmn_machine(1, 3, false);
        // The literal rules insert left of q_1; validation must say so.
        assert!(plain
            .validate()
            .iter()
            .any(|v| v.clause == "V_1 must start with a Q_1-letter"));

        let anchored = gmn_machine(1, 3, true);
        assert!(anchored.validate().is_empty());
        let w = anchored
            .parse_admissible("a_1 q_1 a_1 q_2 a_1 q_3", true)
            .unwrap();
        let out = anchored
            .accepts(&w, crate::smachine::Budget { max_steps: 5, max_visited: 100_000 })
            .unwrap();
        assert_eq!(out.trace().unwrap().steps.len(), 1);
    }

    #[test]
    fn gm_relators_for_eraser() {
        let tm = two_rule_eraser();
        let p = compile_gm(&tm, 2).unwrap();
        // Hub k_1 q0#1 k_2 q0#2.
        let hub = p.relators.last().unwrap();
        assert_eq!(p.alphabet.display(hub).to_string(), "k_1 q0#1 k_2 q0#2");
        // Per copy: (a q)^{r1} = q0 shows up as r1 a#c q#c r1^-1 q0#c^-1.
        let r = p.alphabet.parse_word("r1 a#1 q#1 r1^-1 q0#1^-1").unwrap();
        assert!(p.relators.contains(&r), "missing rule relator");
        let r = p.alphabet.parse_word("r2 a#2 q0#2 r2^-1 q0#2^-1").unwrap();
        assert!(p.relators.contains(&r));
    }

    #[test]
    fn gns_relator_schema_for_eraser_machine() {
        let tm = two_rule_eraser();
        let s = tm.to_smachine().unwrap();
        let p = compile_gns(&s, 2).unwrap();
        // q^{r1} = a^-1 q0, plus identity relations on both sentinels: three
        // parts, three relators per rule per copy.
        let r = p.alphabet.parse_word("r1 q#1 r1^-1 q0#1^-1 a#1").unwrap();
        assert!(p.relators.contains(&r), "missing part relator");
        let sentinel = p
            .alphabet
            .parse_word(&format!("r1 {LEFT_SENTINEL}#1 r1^-1 {LEFT_SENTINEL}#1^-1"))
            .unwrap();
        assert!(p.relators.contains(&sentinel), "missing sentinel commutation");
        let per_rule_per_copy: usize = s.rules[0].parts.len();
        assert_eq!(per_rule_per_copy, 3);
    }

    #[test]
    fn hmn_schema_counts() {
        let base = compile_gmn(1, 3, 2).unwrap();
        let h = compile_hmn(&base, 1).unwrap();
        // Adds rho and b_1.
        assert_eq!(h.info.len(), base.info.len() + 2);
        // rho-k (2) + rho-q (6) + rho-a on non-first copies (1) + a^rho=ab (1)
        // + ab=ba (1) + qb=bq (3) = 14 added relators.
        assert_eq!(h.relators.len(), base.relators.len() + 14);
        for r in &h.relators[base.relators.len()..] {
            assert!(r.len() <= 5, "added relator too long: {}", h.alphabet.display(r));
            assert!(r.is_cyclically_reduced());
        }
    }

    #[test]
    fn file_round_trip_is_identity() {
        let p = compile_gmn(2, 3, 2).unwrap();
        let f = PresentationFile::from_presentation(&p);
        let json = serde_json::to_string(&f).unwrap();
        let back: PresentationFile = serde_json::from_str(&json).unwrap();
        let q = back.to_presentation().unwrap();
        assert!(p.structurally_eq(&q));
        assert_eq!(p.n_copies, q.n_copies);
        assert_eq!(
            p.relators, q.relators,
            "round trip must preserve relator order"
        );
    }
}
