//! S-machines: nondeterministic rewriting on admissible words
//! `q_1 u_1 q_2 ... u_k q_{k+1}` with automatic free reduction after every
//! rule application and a symmetric (inverse-closed) rule set.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::words::{Alphabet, Gen, Word, WordError};

#[derive(Debug, Error)]
pub enum MachineError {
    #[error("budget values must be positive")]
    ZeroBudget,
    #[error("rule `{rule}` has no well-formed inverse: {reason}")]
    Uninvertible { rule: String, reason: String },
    #[error("word is not admissible: {0}")]
    NotAdmissible(String),
    #[error("bad machine data: {0}")]
    Construction(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A word `q_1 u_1 q_2 ... u_k q_{k+1}`: exactly one state letter per class,
/// in class order, separated by reduced tape words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleWord {
    pub states: Vec<Gen>,
    pub tapes: Vec<Word>,
}

impl AdmissibleWord {
    pub fn len(&self) -> usize {
        self.states.len() + self.tapes.iter().map(Word::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flattens to a plain word over the machine alphabet.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for (i, &q) in self.states.iter().enumerate() {
            letters.push(crate::words::Letter::positive(q));
            if i < self.tapes.len() {
                letters.extend_from_slice(self.tapes[i].letters());
            }
        }
        Word::from_letters(letters)
    }
}

/// One span of an S-rule side: optional tape letters, then the state letters
/// of consecutive classes with tape words in the gaps, then optional tape
/// letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub pre: Word,
    pub qs: Vec<Gen>,
    pub gaps: Vec<Word>,
    pub post: Word,
    /// 0-based class of `qs[0]`.
    pub start_class: usize,
}

impl Fragment {
    pub fn end_class(&self) -> usize {
        self.start_class + self.qs.len() - 1
    }

    pub fn to_word(&self) -> Word {
        let mut letters = self.pre.letters().to_vec();
        for (i, &q) in self.qs.iter().enumerate() {
            letters.push(crate::words::Letter::positive(q));
            if i < self.gaps.len() {
                letters.extend_from_slice(self.gaps[i].letters());
            }
        }
        letters.extend_from_slice(self.post.letters());
        Word::from_letters(letters)
    }
}

/// A rule part `U_i -> V_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulePart {
    pub lhs: Fragment,
    pub rhs: Fragment,
}

/// An S-rule `[U_1 -> V_1, ..., U_m -> V_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SRule {
    pub name: String,
    pub parts: Vec<RulePart>,
}

impl SRule {
    /// Part-wise swap `[V_1 -> U_1, ...]`.
    pub fn inverted(&self) -> SRule {
        SRule {
            name: self.name.clone(),
            parts: self
                .parts
                .iter()
                .map(|p| RulePart { lhs: p.rhs.clone(), rhs: p.lhs.clone() })
                .collect(),
        }
    }
}

/// Identifies an application of rule `index`, possibly in the inverse
/// orientation, so traces stay invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientedRuleId {
    pub index: usize,
    pub inverted: bool,
}

impl fmt::Display for OrientedRuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, if self.inverted { "^-1" } else { "" })
    }
}

/// A rule-set violation; empty report means the machine is well-formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Option<usize>,
    pub part: Option<usize>,
    pub clause: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rule, self.part) {
            (Some(r), Some(p)) => write!(f, "rule {r} part {p}: {}", self.clause),
            (Some(r), None) => write!(f, "rule {r}: {}", self.clause),
            _ => write!(f, "{}", self.clause),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SMachine {
    pub alphabet: Alphabet,
    /// State classes `Q_1..Q_{k+1}` (0-based index = class - 1).
    pub classes: Vec<Vec<Gen>>,
    /// Tape alphabets `Y_1..Y_k`; `tapes[i]` sits between classes `i` and `i+1`.
    pub tape_alphabets: Vec<BTreeSet<Gen>>,
    pub rules: Vec<SRule>,
    pub accept: AdmissibleWord,
    class_of: HashMap<Gen, usize>,
}

/// Search budget for [`SMachine::accepts`]; both fields must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: usize,
    pub max_visited: usize,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub words: Vec<AdmissibleWord>,
    pub steps: Vec<OrientedRuleId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStats {
    pub time: usize,
    pub space: usize,
    pub area: usize,
}

impl Trace {
    pub fn start(&self) -> &AdmissibleWord {
        self.words.first().expect("trace has at least one word")
    }

    /// time = rule applications, space = max word length, area = sum of all
    /// word lengths including both endpoints.
    pub fn stats(&self) -> TraceStats {
        TraceStats {
            time: self.steps.len(),
            space: self.words.iter().map(AdmissibleWord::len).max().unwrap_or(0),
            area: self.words.iter().map(AdmissibleWord::len).sum(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum AcceptOutcome {
    Accepted(Trace),
    /// The whole reachable set was enumerated without meeting the accept word.
    RejectedExhaustive { visited: usize },
    /// A budget cap truncated the search.
    UnknownBudget { visited: usize },
}

impl AcceptOutcome {
    pub fn trace(&self) -> Option<&Trace> {
        match self {
            AcceptOutcome::Accepted(t) => Some(t),
            _ => None,
        }
    }
}

impl SMachine {
    pub fn new(
        alphabet: Alphabet,
        classes: Vec<Vec<Gen>>,
        tape_alphabets: Vec<BTreeSet<Gen>>,
        rules: Vec<SRule>,
        accept: AdmissibleWord,
    ) -> Result<Self, MachineError> {
        if classes.len() != tape_alphabets.len() + 1 {
            return Err(MachineError::Construction(format!(
                "need k+1 state classes for k tape segments, got {} classes and {} segments",
                classes.len(),
                tape_alphabets.len()
            )));
        }
        let mut class_of = HashMap::new();
        for (c, q) in classes.iter().enumerate() {
            if q.is_empty() {
                return Err(MachineError::Construction(format!("state class {c} is empty")));
            }
            for &g in q {
                if class_of.insert(g, c).is_some() {
                    return Err(MachineError::Construction(format!(
                        "state letter `{}` appears in two classes",
                        alphabet.name(g)
                    )));
                }
            }
        }
        let m = SMachine { alphabet, classes, tape_alphabets, rules, accept, class_of };
        m.check_admissible(&m.accept)
            .map_err(MachineError::NotAdmissible)?;
        Ok(m)
    }

    pub fn segments(&self) -> usize {
        self.tape_alphabets.len()
    }

    pub fn class_of(&self, g: Gen) -> Option<usize> {
        self.class_of.get(&g).copied()
    }

    pub fn is_state_letter(&self, g: Gen) -> bool {
        self.class_of.contains_key(&g)
    }

    pub fn check_admissible(&self, w: &AdmissibleWord) -> Result<(), String> {
        if w.states.len() != self.classes.len() || w.tapes.len() != self.segments() {
            return Err("wrong number of state letters or tape segments".into());
        }
        for (c, &q) in w.states.iter().enumerate() {
            if self.class_of(q) != Some(c) {
                return Err(format!(
                    "state letter `{}` is not in class {}",
                    self.alphabet.name(q),
                    c + 1
                ));
            }
        }
        for (i, t) in w.tapes.iter().enumerate() {
            for l in t.letters() {
                if !self.tape_alphabets[i].contains(&l.gen) {
                    return Err(format!(
                        "tape letter `{}` is not in Y_{}",
                        self.alphabet.name(l.gen),
                        i + 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// Splits a flat word into an admissible-word fragment, reporting the
    /// failing condition as a string.
    pub fn parse_fragment(&self, w: &Word) -> Result<Fragment, String> {
        let mut pre = Vec::new();
        let mut qs: Vec<Gen> = Vec::new();
        let mut gaps: Vec<Word> = Vec::new();
        let mut current_gap: Vec<crate::words::Letter> = Vec::new();
        for &l in w.letters() {
            if let Some(c) = self.class_of(l.gen) {
                if l.inv {
                    return Err(format!(
                        "state letter `{}` occurs inverted",
                        self.alphabet.name(l.gen)
                    ));
                }
                match qs.last() {
                    None => {
                        pre = std::mem::take(&mut current_gap);
                        qs.push(l.gen);
                    }
                    Some(&prev) => {
                        let pc = self.class_of(prev).unwrap();
                        if c != pc + 1 {
                            return Err(format!(
                                "state letters `{}` and `{}` are not in consecutive classes",
                                self.alphabet.name(prev),
                                self.alphabet.name(l.gen)
                            ));
                        }
                        gaps.push(Word::from_letters(std::mem::take(&mut current_gap)));
                        qs.push(l.gen);
                    }
                }
            } else {
                current_gap.push(l);
            }
        }
        if qs.is_empty() {
            return Err("fragment contains no state letter".into());
        }
        let post = std::mem::take(&mut current_gap);
        let start_class = self.class_of(qs[0]).unwrap();
        let frag = Fragment {
            pre: Word::from_letters(pre),
            qs,
            gaps,
            post: Word::from_letters(post),
            start_class,
        };
        // Tape letters must live in the alphabet of the segment they touch.
        // Letters hanging off the outermost classes have no segment; that is
        // an endpoint violation reported by `validate`, not a parse failure.
        let check_tape = |word: &Word, seg: isize| -> Result<(), String> {
            if word.is_empty() {
                return Ok(());
            }
            if seg < 0 || seg as usize >= self.segments() {
                return Ok(());
            }
            for l in word.letters() {
                if !self.tape_alphabets[seg as usize].contains(&l.gen) {
                    return Err(format!(
                        "tape letter `{}` is not in Y_{}",
                        self.alphabet.name(l.gen),
                        seg + 1
                    ));
                }
            }
            Ok(())
        };
        check_tape(&frag.pre, frag.start_class as isize - 1)?;
        for (j, gap) in frag.gaps.iter().enumerate() {
            check_tape(gap, (frag.start_class + j) as isize)?;
        }
        check_tape(&frag.post, frag.end_class() as isize)?;
        Ok(frag)
    }

    /// Checks every S-rule invariant; an empty report means valid. Also checks
    /// the state/tape alphabet disjointness of the machine itself.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for y in &self.tape_alphabets {
            for &g in y {
                if self.is_state_letter(g) {
                    out.push(Violation {
                        rule: None,
                        part: None,
                        clause: format!(
                            "letter `{}` is both a state letter and a tape letter",
                            self.alphabet.name(g)
                        ),
                    });
                }
            }
        }
        let k = self.segments();
        for (ri, rule) in self.rules.iter().enumerate() {
            if rule.parts.is_empty() {
                out.push(Violation {
                    rule: Some(ri),
                    part: None,
                    clause: "rule has no parts".into(),
                });
                continue;
            }
            let mut prev_end: Option<usize> = None;
            for (pi, part) in rule.parts.iter().enumerate() {
                let l = part.lhs.start_class;
                let r = part.lhs.end_class();
                if part.rhs.start_class != l || part.rhs.end_class() != r {
                    out.push(Violation {
                        rule: Some(ri),
                        part: Some(pi),
                        clause: format!(
                            "V spans classes {}..{} but U spans {}..{}",
                            part.rhs.start_class + 1,
                            part.rhs.end_class() + 1,
                            l + 1,
                            r + 1
                        ),
                    });
                }
                if let Some(pe) = prev_end {
                    if l <= pe {
                        out.push(Violation {
                            rule: Some(ri),
                            part: Some(pi),
                            clause: format!("r({}) >= \u{2113}({})", pi, pi + 1),
                        });
                    }
                }
                prev_end = Some(r);
                if l < r {
                    for (side, frag) in [("U", &part.lhs), ("V", &part.rhs)] {
                        if !frag.pre.is_empty() {
                            out.push(Violation {
                                rule: Some(ri),
                                part: Some(pi),
                                clause: format!(
                                    "{side} must start with a Q_{}-letter (multi-class spans are anchored)",
                                    l + 1
                                ),
                            });
                        }
                        if !frag.post.is_empty() {
                            out.push(Violation {
                                rule: Some(ri),
                                part: Some(pi),
                                clause: format!(
                                    "{side} must end with a Q_{}-letter (multi-class spans are anchored)",
                                    r + 1
                                ),
                            });
                        }
                    }
                }
                if l == 0 {
                    if !part.rhs.pre.is_empty() {
                        out.push(Violation {
                            rule: Some(ri),
                            part: Some(pi),
                            clause: "V_1 must start with a Q_1-letter".into(),
                        });
                    }
                    if !part.lhs.pre.is_empty() {
                        out.push(Violation {
                            rule: Some(ri),
                            part: Some(pi),
                            clause: "U_1 must start with a Q_1-letter".into(),
                        });
                    }
                }
                if r == k {
                    if !part.rhs.post.is_empty() {
                        out.push(Violation {
                            rule: Some(ri),
                            part: Some(pi),
                            clause: format!("V_m must end with a Q_{}-letter", k + 1),
                        });
                    }
                    if !part.lhs.post.is_empty() {
                        out.push(Violation {
                            rule: Some(ri),
                            part: Some(pi),
                            clause: format!("U_m must end with a Q_{}-letter", k + 1),
                        });
                    }
                }
            }
        }
        out
    }

    /// Part-wise swap; errors when the swapped rule breaks an endpoint
    /// constraint, which flags an ill-formed machine.
    pub fn invert_rule(&self, rule: &SRule) -> Result<SRule, MachineError> {
        let inv = rule.inverted();
        let probe = SMachine {
            alphabet: self.alphabet.clone(),
            classes: self.classes.clone(),
            tape_alphabets: self.tape_alphabets.clone(),
            rules: vec![inv.clone()],
            accept: self.accept.clone(),
            class_of: self.class_of.clone(),
        };
        let violations = probe.validate();
        if let Some(v) = violations.first() {
            return Err(MachineError::Uninvertible {
                rule: rule.name.clone(),
                reason: v.clause.clone(),
            });
        }
        Ok(inv)
    }

    /// The symmetric closure: every rule in both orientations, in rule order.
    pub fn symmetric_closure(&self) -> Result<Vec<(OrientedRuleId, SRule)>, MachineError> {
        let mut out = Vec::with_capacity(self.rules.len() * 2);
        for (i, r) in self.rules.iter().enumerate() {
            out.push((OrientedRuleId { index: i, inverted: false }, r.clone()));
            out.push((OrientedRuleId { index: i, inverted: true }, self.invert_rule(r)?));
        }
        Ok(out)
    }

    /// Applies a rule to an admissible word, or returns `None` when some part
    /// does not match. Multi-class spans must match the whole span between
    /// their end state letters literally; single-class parts act on the
    /// neighboring tape segments by free multiplication, so the machine stays
    /// blind to tape content away from the heads.
    pub fn apply_rule(&self, w: &AdmissibleWord, rule: &SRule) -> Option<AdmissibleWord> {
        let k = self.segments();
        let mut states = w.states.clone();
        // Per-segment edits: (left factor, replace, right factor).
        let mut left_edit: Vec<Word> = vec![Word::empty(); k];
        let mut right_edit: Vec<Word> = vec![Word::empty(); k];
        let mut replaced: Vec<Option<Word>> = vec![None; k];
        for part in &rule.parts {
            let c0 = part.lhs.start_class;
            let c1 = part.lhs.end_class();
            for (off, &q) in part.lhs.qs.iter().enumerate() {
                if w.states[c0 + off] != q {
                    return None;
                }
            }
            if c0 < c1 {
                if !part.lhs.pre.is_empty()
                    || !part.lhs.post.is_empty()
                    || !part.rhs.pre.is_empty()
                    || !part.rhs.post.is_empty()
                {
                    return None;
                }
                for (j, gap) in part.lhs.gaps.iter().enumerate() {
                    if &w.tapes[c0 + j] != gap {
                        return None;
                    }
                }
                for (j, gap) in part.rhs.gaps.iter().enumerate() {
                    replaced[c0 + j] = Some(gap.clone());
                }
            } else {
                if c0 == 0 && (!part.lhs.pre.is_empty() || !part.rhs.pre.is_empty()) {
                    return None;
                }
                if c0 == k && (!part.lhs.post.is_empty() || !part.rhs.post.is_empty()) {
                    return None;
                }
                if c0 > 0 {
                    right_edit[c0 - 1] = part.lhs.pre.inverse().concat(&part.rhs.pre);
                }
                if c0 < k {
                    left_edit[c0] = part.rhs.post.concat(&part.lhs.post.inverse());
                }
            }
            for (off, &q) in part.rhs.qs.iter().enumerate() {
                states[c0 + off] = q;
            }
        }
        let mut tapes = Vec::with_capacity(k);
        for s in 0..k {
            let base = replaced[s].clone().unwrap_or_else(|| w.tapes[s].clone());
            tapes.push(left_edit[s].concat(&base).concat(&right_edit[s]));
        }
        Some(AdmissibleWord { states, tapes })
    }

    /// Breadth-first acceptance over the symmetric closure. Returns a shortest
    /// trace; the expansion order (rule index, then orientation) makes it
    /// deterministic.
    pub fn accepts(&self, w: &AdmissibleWord, budget: Budget) -> Result<AcceptOutcome, MachineError> {
        if budget.max_steps == 0 || budget.max_visited == 0 {
            return Err(MachineError::ZeroBudget);
        }
        self.check_admissible(w).map_err(MachineError::NotAdmissible)?;
        let closure = self.symmetric_closure()?;
        self.search(w, budget, &closure)
    }

    /// Same search restricted to the forward rules only; used to contrast a
    /// machine with its symmetric closure.
    pub fn accepts_forward_only(
        &self,
        w: &AdmissibleWord,
        budget: Budget,
    ) -> Result<AcceptOutcome, MachineError> {
        if budget.max_steps == 0 || budget.max_visited == 0 {
            return Err(MachineError::ZeroBudget);
        }
        self.check_admissible(w).map_err(MachineError::NotAdmissible)?;
        let forward: Vec<(OrientedRuleId, SRule)> = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| (OrientedRuleId { index: i, inverted: false }, r.clone()))
            .collect();
        self.search(w, budget, &forward)
    }

    fn search(
        &self,
        w: &AdmissibleWord,
        budget: Budget,
        moves: &[(OrientedRuleId, SRule)],
    ) -> Result<AcceptOutcome, MachineError> {
        if *w == self.accept {
            return Ok(AcceptOutcome::Accepted(Trace {
                words: vec![w.clone()],
                steps: Vec::new(),
            }));
        }
        let mut parents: HashMap<AdmissibleWord, (AdmissibleWord, OrientedRuleId)> = HashMap::new();
        let mut depth: HashMap<AdmissibleWord, usize> = HashMap::new();
        depth.insert(w.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(w.clone());
        let mut truncated = false;
        while let Some(cur) = queue.pop_front() {
            let d = depth[&cur];
            if d == budget.max_steps {
                truncated = true;
                continue;
            }
            for (id, rule) in moves {
                let Some(next) = self.apply_rule(&cur, rule) else {
                    continue;
                };
                if depth.contains_key(&next) {
                    continue;
                }
                parents.insert(next.clone(), (cur.clone(), *id));
                depth.insert(next.clone(), d + 1);
                if next == self.accept {
                    let mut words = vec![next.clone()];
                    let mut steps = Vec::new();
                    let mut at = next;
                    while let Some((p, id)) = parents.get(&at) {
                        steps.push(*id);
                        words.push(p.clone());
                        at = p.clone();
                    }
                    words.reverse();
                    steps.reverse();
                    return Ok(AcceptOutcome::Accepted(Trace { words, steps }));
                }
                if depth.len() >= budget.max_visited {
                    return Ok(AcceptOutcome::UnknownBudget { visited: depth.len() });
                }
                queue.push_back(next);
            }
        }
        if truncated {
            Ok(AcceptOutcome::UnknownBudget { visited: depth.len() })
        } else {
            Ok(AcceptOutcome::RejectedExhaustive { visited: depth.len() })
        }
    }
}

/// Named-word builder used by machine constructors and file IO.
pub struct MachineBuilder {
    pub alphabet: Alphabet,
    classes: Vec<Vec<Gen>>,
    tape_alphabets: Vec<BTreeSet<Gen>>,
}

impl MachineBuilder {
    /// `classes` and `tapes` list generator names; the two pools may overlap
    /// only at the caller's peril (validation will flag it).
    pub fn new<S: AsRef<str>>(classes: &[Vec<S>], tapes: &[Vec<S>]) -> Result<Self, MachineError> {
        let mut alphabet = Alphabet::new();
        let mut cl = Vec::new();
        for class in classes {
            let mut c = Vec::new();
            for name in class {
                let g = match alphabet.lookup(name.as_ref()) {
                    Some(g) => g,
                    None => alphabet.add(name.as_ref().to_string())?,
                };
                c.push(g);
            }
            cl.push(c);
        }
        let mut ts = Vec::new();
        for tape in tapes {
            let mut t = BTreeSet::new();
            for name in tape {
                let g = match alphabet.lookup(name.as_ref()) {
                    Some(g) => g,
                    None => alphabet.add(name.as_ref().to_string())?,
                };
                t.insert(g);
            }
            ts.push(t);
        }
        Ok(MachineBuilder { alphabet, classes: cl, tape_alphabets: ts })
    }

    pub fn build(
        self,
        rules: &[(&str, Vec<(&str, &str)>)],
        accept: &str,
    ) -> Result<SMachine, MachineError> {
        let shell = SMachine::new(
            self.alphabet.clone(),
            self.classes.clone(),
            self.tape_alphabets.clone(),
            Vec::new(),
            AdmissibleWord {
                states: self.classes.iter().map(|c| c[0]).collect(),
                tapes: vec![Word::empty(); self.tape_alphabets.len()],
            },
        )?;
        let mut rs = Vec::new();
        for (name, parts) in rules {
            let mut ps = Vec::new();
            for (u, v) in parts {
                let uw = shell.alphabet.parse_word(u)?;
                let vw = shell.alphabet.parse_word(v)?;
                let lhs = shell
                    .parse_fragment(&uw)
                    .map_err(MachineError::Construction)?;
                let rhs = shell
                    .parse_fragment(&vw)
                    .map_err(MachineError::Construction)?;
                ps.push(RulePart { lhs, rhs });
            }
            rs.push(SRule { name: name.to_string(), parts: ps });
        }
        let accept = shell
            .parse_admissible(accept, true)
            .map_err(MachineError::NotAdmissible)?;
        SMachine::new(
            self.alphabet,
            self.classes,
            self.tape_alphabets,
            rs,
            accept,
        )
    }
}

impl SMachine {
    /// Parses an admissible word from text. In lenient mode, singleton state
    /// classes missing from the text are filled in automatically, so `q` can
    /// stand for a full word whose remaining classes are forced.
    pub fn parse_admissible(&self, text: &str, lenient: bool) -> Result<AdmissibleWord, String> {
        let flat = self
            .alphabet
            .parse_word(text)
            .map_err(|e| e.to_string())?;
        let mut states: Vec<Option<Gen>> = vec![None; self.classes.len()];
        let mut tapes: Vec<Vec<crate::words::Letter>> = vec![Vec::new(); self.segments() + 1];
        let mut cursor = 0usize; // next class to see
        for &l in flat.letters() {
            if let Some(c) = self.class_of(l.gen) {
                if l.inv {
                    return Err("state letters cannot be inverted".into());
                }
                if c < cursor {
                    return Err("state letters out of class order".into());
                }
                if !lenient && c > cursor {
                    return Err(format!("missing state letter of class {}", cursor + 1));
                }
                for missing in cursor..c {
                    if self.classes[missing].len() == 1 {
                        states[missing] = Some(self.classes[missing][0]);
                    } else {
                        return Err(format!(
                            "missing state letter of class {} (not a singleton class)",
                            missing + 1
                        ));
                    }
                }
                states[c] = Some(l.gen);
                cursor = c + 1;
            } else {
                if lenient && cursor == 0 && self.classes[0].len() == 1 {
                    states[0] = Some(self.classes[0][0]);
                    cursor = 1;
                }
                tapes[cursor].push(l);
            }
        }
        for missing in cursor..self.classes.len() {
            if lenient && self.classes[missing].len() == 1 {
                states[missing] = Some(self.classes[missing][0]);
            } else {
                return Err(format!("missing state letter of class {}", missing + 1));
            }
        }
        if !tapes[0].is_empty() {
            return Err("tape letters before the first state letter".into());
        }
        let w = AdmissibleWord {
            states: states.into_iter().map(Option::unwrap).collect(),
            tapes: tapes[1..]
                .iter()
                .map(|ls| Word::from_letters(ls.iter().copied()))
                .collect(),
        };
        self.check_admissible(&w)?;
        Ok(w)
    }

    pub fn display_admissible(&self, w: &AdmissibleWord) -> String {
        self.alphabet.display_owned(w.to_word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-segment machine with states q_1 | q_2 | q_3 and tape alphabet {a}
    /// on both segments.
    fn toy() -> SMachine {
        MachineBuilder::new(
            &[vec!["q1"], vec!["q2"], vec!["q3"]],
            &[vec!["a"], vec!["a"]],
        )
        .unwrap()
        .build(
            &[
                ("push", vec![("q2", "a q2")]),
                ("swap", vec![("q1 a q2", "q1 q2")]),
            ],
            "q1 q2 q3",
        )
        .unwrap()
    }

    #[test]
    fn apply_inserts_left_of_q2() {
        let m = toy();
        let w = m.parse_admissible("q1 q2 q3", false).unwrap();
        let got = m.apply_rule(&w, &m.rules[0]).unwrap();
        assert_eq!(got, m.parse_admissible("q1 a q2 q3", false).unwrap());
    }

    #[test]
    fn apply_reduces_automatically() {
        let m = toy();
        let w = m.parse_admissible("q1 a^-1 q2 q3", false).unwrap();
        let got = m.apply_rule(&w, &m.rules[0]).unwrap();
        assert_eq!(got, m.parse_admissible("q1 q2 q3", false).unwrap());
    }

    #[test]
    fn span_mismatch_is_inapplicable() {
        // [q1 b q2 -> q1 q2] against q1 a q2: span differs, so no match.
        let m = MachineBuilder::new(
            &[vec!["q1"], vec!["q2"]],
            &[vec!["a", "b"]],
        )
        .unwrap()
        .build(&[("del", vec![("q1 b q2", "q1 q2")])], "q1 q2")
        .unwrap();
        let w = m.parse_admissible("q1 a q2", false).unwrap();
        assert!(m.apply_rule(&w, &m.rules[0]).is_none());
        let v = m.parse_admissible("q1 b q2", false).unwrap();
        assert_eq!(
            m.apply_rule(&v, &m.rules[0]).unwrap(),
            m.parse_admissible("q1 q2", false).unwrap()
        );
    }

    #[test]
    fn validate_flags_order_violation() {
        // Parts (1,2) then (2,3): r(1) = 2 is not below l(2) = 2.
        let m = MachineBuilder::new(
            &[vec!["q1"], vec!["q2"], vec!["q3"]],
            &[vec!["a"], vec!["a"]],
        )
        .unwrap()
        .build(
            &[("bad", vec![("q1 q2", "q1 q2"), ("q2 q3", "q2 q3")])],
            "q1 q2 q3",
        );
        // Overlapping spans: both parts claim class 2. Construction succeeds;
        // validation reports.
        let m = m.unwrap();
        let vs = m.validate();
        assert!(vs.iter().any(|v| v.clause.contains(">=")), "{vs:?}");
    }

    #[test]
    fn validate_flags_v1_endpoint() {
        let m = MachineBuilder::new(&[vec!["q1"], vec!["q2"]], &[vec!["a"]])
            .unwrap()
            .build(&[("grow", vec![("q1", "a q1")])], "q1 q2")
            .unwrap();
        let vs = m.validate();
        assert!(
            vs.iter()
                .any(|v| v.clause == "V_1 must start with a Q_1-letter"),
            "{vs:?}"
        );
    }

    #[test]
    fn invert_is_involution_and_respects_endpoints() {
        let m = toy();
        let inv = m.invert_rule(&m.rules[0]).unwrap();
        assert_eq!(inv.parts[0].lhs.to_word(), m.alphabet.parse_word("a q2").unwrap());
        let back = m.invert_rule(&inv).unwrap();
        assert_eq!(back, m.rules[0]);
    }

    #[test]
    fn accepts_at_zero_steps_and_monotone_budget() {
        let m = toy();
        let w0 = m.accept.clone();
        let out = m
            .accepts(&w0, Budget { max_steps: 1, max_visited: 10 })
            .unwrap();
        assert!(matches!(out, AcceptOutcome::Accepted(ref t) if t.steps.is_empty()));

        let w = m.parse_admissible("q1 a q2 q3", false).unwrap();
        for steps in [1usize, 2, 8] {
            let out = m
                .accepts(&w, Budget { max_steps: steps, max_visited: 100_000 })
                .unwrap();
            assert!(out.trace().is_some(), "budget {steps} should accept");
        }
    }

    #[test]
    fn zero_budget_is_an_error() {
        let m = toy();
        let w0 = m.accept.clone();
        assert!(m.accepts(&w0, Budget { max_steps: 0, max_visited: 5 }).is_err());
    }

    #[test]
    fn identity_rule_trace_area() {
        let m = MachineBuilder::new(&[vec!["q1"], vec!["q2"]], &[vec!["a"]])
            .unwrap()
            .build(&[("id", vec![("q2", "q2")])], "q1 q2")
            .unwrap();
        let w = m.parse_admissible("q1 a a q2", false).unwrap();
        let next = m.apply_rule(&w, &m.rules[0]).unwrap();
        let trace = Trace {
            words: vec![w.clone(), next],
            steps: vec![OrientedRuleId { index: 0, inverted: false }],
        };
        let stats = trace.stats();
        assert_eq!(stats.time, 1);
        assert_eq!(stats.area, 2 * w.len());
    }
}

/// JSON machine format: `{k, Q, Y, rules: [{parts: [{U, V}]}], W0}`.
pub mod io {
    use serde::{Deserialize, Serialize};

    use super::{MachineError, MachineBuilder, SMachine};

    #[derive(Debug, Serialize, Deserialize)]
    pub struct MachineFile {
        pub k: usize,
        #[serde(rename = "Q")]
        pub classes: Vec<Vec<String>>,
        #[serde(rename = "Y")]
        pub tapes: Vec<Vec<String>>,
        pub rules: Vec<MachineFileRule>,
        #[serde(rename = "W0")]
        pub accept: String,
    }

    #[derive(Debug, Serialize, Deserialize)]
    pub struct MachineFileRule {
        #[serde(default)]
        pub name: Option<String>,
        pub parts: Vec<MachineFilePart>,
    }

    #[derive(Debug, Serialize, Deserialize)]
    pub struct MachineFilePart {
        #[serde(rename = "U")]
        pub u: String,
        #[serde(rename = "V")]
        pub v: String,
    }

    impl MachineFile {
        pub fn to_machine(&self) -> Result<SMachine, MachineError> {
            if self.classes.len() != self.k + 1 || self.tapes.len() != self.k {
                return Err(MachineError::Construction(format!(
                    "k = {} needs {} state classes and {} tape alphabets",
                    self.k,
                    self.k + 1,
                    self.k
                )));
            }
            let builder = MachineBuilder::new(&self.classes, &self.tapes)?;
            let named: Vec<(String, &MachineFileRule)> = self
                .rules
                .iter()
                .enumerate()
                .map(|(i, r)| (r.name.clone().unwrap_or_else(|| format!("r_{}", i + 1)), r))
                .collect();
            let rules: Vec<(&str, Vec<(&str, &str)>)> = named
                .iter()
                .map(|(n, r)| {
                    (
                        n.as_str(),
                        r.parts
                            .iter()
                            .map(|p| (p.u.as_str(), p.v.as_str()))
                            .collect(),
                    )
                })
                .collect();
            builder.build(&rules, &self.accept)
        }

        pub fn from_machine(m: &SMachine) -> MachineFile {
            let name = |g: crate::words::Gen| m.alphabet.name(g).to_string();
            MachineFile {
                k: m.segments(),
                classes: m
                    .classes
                    .iter()
                    .map(|c| c.iter().map(|&g| name(g)).collect())
                    .collect(),
                tapes: m
                    .tape_alphabets
                    .iter()
                    .map(|t| t.iter().map(|&g| name(g)).collect())
                    .collect(),
                rules: m
                    .rules
                    .iter()
                    .map(|r| MachineFileRule {
                        name: Some(r.name.clone()),
                        parts: r
                            .parts
                            .iter()
                            .map(|p| MachineFilePart {
                                u: m.alphabet.display(&p.lhs.to_word()).to_string(),
                                v: m.alphabet.display(&p.rhs.to_word()).to_string(),
                            })
                            .collect(),
                    })
                    .collect(),
                accept: m.display_admissible(&m.accept),
            }
        }
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use crate::turing::two_rule_eraser;

        #[test]
        fn machine_file_round_trip() {
            let m = two_rule_eraser().to_smachine().unwrap();
            let f = MachineFile::from_machine(&m);
            let json = serde_json::to_string_pretty(&f).unwrap();
            let back: MachineFile = serde_json::from_str(&json).unwrap();
            let m2 = back.to_machine().unwrap();
            assert_eq!(m2.rules.len(), m.rules.len());
            assert_eq!(m2.accept, m.accept);
            assert_eq!(
                m2.rules[0].parts[1].rhs.to_word(),
                m.rules[0].parts[1].rhs.to_word()
            );
        }
    }
}
