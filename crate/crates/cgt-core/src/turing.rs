//! Turing machines in the `uqv -> u'q'v'` convention: the head sits between
//! two squares and observes both; the tape is finite with squares added at
//! the right end as needed; there is a single accept configuration.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::smachine::{AdmissibleWord, MachineBuilder, MachineError, SMachine};
use crate::words::{Alphabet, Word};

pub const LEFT_SENTINEL: &str = "\u{25b7}";
pub const RIGHT_SENTINEL: &str = "\u{25c1}";

#[derive(Debug, Error)]
pub enum TmError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("tape word `{0}` must be positive")]
    NegativeTape(String),
    #[error("budget values must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

/// A configuration `left · q · right` with positive tape words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub left: Word,
    pub state: StateId,
    pub right: Word,
}

impl Configuration {
    pub fn len(&self) -> usize {
        self.left.len() + 1 + self.right.len()
    }
}

#[derive(Debug, Clone)]
pub struct Transition {
    pub name: String,
    pub read_left: Word,
    pub state: StateId,
    pub read_right: Word,
    pub write_left: Word,
    pub new_state: StateId,
    pub write_right: Word,
}

#[derive(Debug, Clone)]
pub struct TuringMachine {
    /// Tape alphabet; states are kept separate so configurations are words
    /// over tape letters only.
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub transitions: Vec<Transition>,
    pub accept: Configuration,
}

#[derive(Debug, Clone)]
pub struct TmTrace {
    pub configs: Vec<Configuration>,
    pub steps: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum TmOutcome {
    Accepted(TmTrace),
    RejectedExhaustive { visited: usize },
    UnknownBudget { visited: usize },
}

impl TmOutcome {
    pub fn trace(&self) -> Option<&TmTrace> {
        match self {
            TmOutcome::Accepted(t) => Some(t),
            _ => None,
        }
    }
}

fn is_positive(w: &Word) -> bool {
    w.letters().iter().all(|l| !l.inv)
}

fn is_suffix(of: &Word, suffix: &Word) -> bool {
    of.len() >= suffix.len() && &of.letters()[of.len() - suffix.len()..] == suffix.letters()
}

fn is_prefix(of: &Word, prefix: &Word) -> bool {
    of.len() >= prefix.len() && &of.letters()[..prefix.len()] == prefix.letters()
}

impl TuringMachine {
    pub fn state_id(&self, name: &str) -> Result<StateId, TmError> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(StateId)
            .ok_or_else(|| TmError::UnknownState(name.to_string()))
    }

    pub fn parse_config(&self, left: &str, state: &str, right: &str) -> Result<Configuration, TmError> {
        let l = self.alphabet.parse_word(left)?;
        let r = self.alphabet.parse_word(right)?;
        for (w, s) in [(&l, left), (&r, right)] {
            if !is_positive(w) {
                return Err(TmError::NegativeTape(s.to_string()));
            }
        }
        Ok(Configuration { left: l, state: self.state_id(state)?, right: r })
    }

    /// All configurations reachable in one transition. The read patterns match
    /// the suffix of the left tape and the prefix of the right tape; writes may
    /// lengthen either side (that is where squares get added).
    pub fn step(&self, c: &Configuration) -> Vec<(usize, Configuration)> {
        let mut out = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            if t.state != c.state
                || !is_suffix(&c.left, &t.read_left)
                || !is_prefix(&c.right, &t.read_right)
            {
                continue;
            }
            let keep_left = c.left.len() - t.read_left.len();
            let left = Word::from_letters(
                c.left.letters()[..keep_left]
                    .iter()
                    .chain(t.write_left.letters())
                    .copied(),
            );
            let right = Word::from_letters(
                t.write_right
                    .letters()
                    .iter()
                    .chain(&c.right.letters()[t.read_right.len()..])
                    .copied(),
            );
            out.push((i, Configuration { left, state: t.new_state, right }));
        }
        out
    }

    /// Breadth-first acceptance; same budget semantics as the S-machine search.
    pub fn accepts(&self, c: &Configuration, max_steps: usize, max_visited: usize) -> Result<TmOutcome, TmError> {
        if max_steps == 0 || max_visited == 0 {
            return Err(TmError::ZeroBudget);
        }
        if *c == self.accept {
            return Ok(TmOutcome::Accepted(TmTrace { configs: vec![c.clone()], steps: Vec::new() }));
        }
        let mut parents: HashMap<Configuration, (Configuration, usize)> = HashMap::new();
        let mut depth: HashMap<Configuration, usize> = HashMap::new();
        depth.insert(c.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(c.clone());
        let mut truncated = false;
        while let Some(cur) = queue.pop_front() {
            let d = depth[&cur];
            if d == max_steps {
                truncated = true;
                continue;
            }
            for (i, next) in self.step(&cur) {
                if depth.contains_key(&next) {
                    continue;
                }
                depth.insert(next.clone(), d + 1);
                parents.insert(next.clone(), (cur.clone(), i));
                if next == self.accept {
                    let mut configs = vec![next.clone()];
                    let mut steps = Vec::new();
                    let mut at = next;
                    while let Some((p, i)) = parents.get(&at) {
                        steps.push(*i);
                        configs.push(p.clone());
                        at = p.clone();
                    }
                    configs.reverse();
                    steps.reverse();
                    return Ok(TmOutcome::Accepted(TmTrace { configs, steps }));
                }
                if depth.len() >= max_visited {
                    return Ok(TmOutcome::UnknownBudget { visited: depth.len() });
                }
                queue.push_back(next);
            }
        }
        if truncated {
            Ok(TmOutcome::UnknownBudget { visited: depth.len() })
        } else {
            Ok(TmOutcome::RejectedExhaustive { visited: depth.len() })
        }
    }

    /// The naive conversion: every transition `uqv -> u'q'v'` becomes the
    /// S-rule part `[q -> u^-1 u' q' v' v^-1]`. Configurations embed as
    /// admissible words between two sentinel state classes, and every rule
    /// carries identity parts on the sentinels so rule letters commute past
    /// them in the compiled group.
    pub fn to_smachine(&self) -> Result<SMachine, TmError> {
        let tape: Vec<String> = (0..self.alphabet.len() as u32)
            .map(|i| self.alphabet.name(crate::words::Gen(i)).to_string())
            .collect();
        let classes: Vec<Vec<String>> = vec![
            vec![LEFT_SENTINEL.to_string()],
            self.states.clone(),
            vec![RIGHT_SENTINEL.to_string()],
        ];
        let builder = MachineBuilder::new(&classes, &[tape.clone(), tape])?;
        let al = builder.alphabet.clone();
        let name_of = |w: &Word| al.display(w).to_string();
        let mut rules: Vec<(String, Vec<(String, String)>)> = Vec::new();
        for t in &self.transitions {
            let u = self.reword(&t.read_left, &al);
            let v = self.reword(&t.read_right, &al);
            let u2 = self.reword(&t.write_left, &al);
            let v2 = self.reword(&t.write_right, &al);
            let pre = u.inverse().concat(&u2);
            let post = v2.concat(&v.inverse());
            let lhs = self.states[t.state.0].clone();
            let rhs = format!(
                "{} {} {}",
                name_of(&pre),
                self.states[t.new_state.0],
                name_of(&post)
            )
            .replace('\u{03b5}', "");
            rules.push((
                t.name.clone(),
                vec![
                    (LEFT_SENTINEL.to_string(), LEFT_SENTINEL.to_string()),
                    (lhs, rhs),
                    (RIGHT_SENTINEL.to_string(), RIGHT_SENTINEL.to_string()),
                ],
            ));
        }
        let rule_refs: Vec<(&str, Vec<(&str, &str)>)> = rules
            .iter()
            .map(|(n, ps)| {
                (
                    n.as_str(),
                    ps.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect(),
                )
            })
            .collect();
        let accept = format!(
            "{} {} {} {} {}",
            LEFT_SENTINEL,
            self.alphabet.display(&self.accept.left),
            self.states[self.accept.state.0],
            self.alphabet.display(&self.accept.right),
            RIGHT_SENTINEL
        )
        .replace('\u{03b5}', "");
        Ok(builder.build(&rule_refs, &accept)?)
    }

    /// Maps a configuration to its admissible word in `to_smachine()`'s layout.
    pub fn config_word(&self, m: &SMachine, c: &Configuration) -> AdmissibleWord {
        AdmissibleWord {
            states: vec![
                m.alphabet.lookup(LEFT_SENTINEL).expect("sentinel"),
                m.alphabet
                    .lookup(&self.states[c.state.0])
                    .expect("state letter"),
                m.alphabet.lookup(RIGHT_SENTINEL).expect("sentinel"),
            ],
            tapes: vec![self.reword(&c.left, &m.alphabet), self.reword(&c.right, &m.alphabet)],
        }
    }

    /// Re-indexes a word over `self.alphabet` into another alphabet that
    /// contains the same names.
    fn reword(&self, w: &Word, target: &Alphabet) -> Word {
        w.substitute(&self.alphabet, |g| {
            target.lookup(self.alphabet.name(g)).map(Word::gen)
        })
        .expect("target alphabet misses a tape letter")
    }
}

/// Builder from plain names; transitions are sextuples of text words.
pub struct TmBuilder {
    alphabet: Alphabet,
    states: Vec<String>,
}

impl TmBuilder {
    pub fn new<S: AsRef<str>>(tape: &[S], states: &[S]) -> Result<Self, TmError> {
        let alphabet = Alphabet::from_names(tape.iter().map(|s| s.as_ref().to_string()))?;
        Ok(TmBuilder {
            alphabet,
            states: states.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// `transitions`: (name, u, q, v, u', q', v').
    pub fn build(
        self,
        transitions: &[(&str, &str, &str, &str, &str, &str, &str)],
        accept: (&str, &str, &str),
    ) -> Result<TuringMachine, TmError> {
        let mut tm = TuringMachine {
            alphabet: self.alphabet,
            states: self.states,
            transitions: Vec::new(),
            accept: Configuration {
                left: Word::empty(),
                state: StateId(0),
                right: Word::empty(),
            },
        };
        for &(name, u, q, v, u2, q2, v2) in transitions {
            let check = |s: &str| -> Result<Word, TmError> {
                let w = tm.alphabet.parse_word(s)?;
                if !is_positive(&w) {
                    return Err(TmError::NegativeTape(s.to_string()));
                }
                Ok(w)
            };
            let t = Transition {
                name: name.to_string(),
                read_left: check(u)?,
                state: tm.state_id(q)?,
                read_right: check(v)?,
                write_left: check(u2)?,
                new_state: tm.state_id(q2)?,
                write_right: check(v2)?,
            };
            tm.transitions.push(t);
        }
        tm.accept = tm.parse_config(accept.0, accept.1, accept.2)?;
        Ok(tm)
    }
}

/// The two-rule machine over one tape letter that erases `a`s:
/// `aq -> q_0`, `aq_0 -> q_0`, accepting at the empty-tape `q_0`.
pub fn two_rule_eraser() -> TuringMachine {
    TmBuilder::new(&["a"], &["q", "q0"])
        .unwrap()
        .build(
            &[
                ("r1", "a", "q", "", "", "q0", ""),
                ("r2", "a", "q0", "", "", "q0", ""),
            ],
            ("", "q0", ""),
        )
        .unwrap()
}

/// JSON file format mirror: `{A, Q, transitions: [{u,q,v,u2,q2,v2}], accept}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct TmFile {
    #[serde(rename = "A")]
    pub tape: Vec<String>,
    #[serde(rename = "Q")]
    pub states: Vec<String>,
    pub transitions: Vec<TmFileTransition>,
    pub accept: TmFileConfig,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TmFileTransition {
    #[serde(default)]
    pub name: Option<String>,
    pub u: String,
    pub q: String,
    pub v: String,
    pub u2: String,
    pub q2: String,
    pub v2: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TmFileConfig {
    pub left: String,
    pub state: String,
    pub right: String,
}

impl TmFile {
    pub fn to_machine(&self) -> Result<TuringMachine, TmError> {
        let owned: Vec<(String, &TmFileTransition)> = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, t)| (t.name.clone().unwrap_or_else(|| format!("r{}", i + 1)), t))
            .collect();
        let trans: Vec<(&str, &str, &str, &str, &str, &str, &str)> = owned
            .iter()
            .map(|(name, t)| {
                (
                    name.as_str(),
                    t.u.as_str(),
                    t.q.as_str(),
                    t.v.as_str(),
                    t.u2.as_str(),
                    t.q2.as_str(),
                    t.v2.as_str(),
                )
            })
            .collect();
        TmBuilder::new(
            &self.tape.iter().map(String::as_str).collect::<Vec<_>>(),
            &self.states.iter().map(String::as_str).collect::<Vec<_>>(),
        )?
        .build(
            &trans,
            (
                self.accept.left.as_str(),
                self.accept.state.as_str(),
                self.accept.right.as_str(),
            ),
        )
    }

    pub fn from_machine(tm: &TuringMachine) -> TmFile {
        TmFile {
            tape: (0..tm.alphabet.len() as u32)
                .map(|i| tm.alphabet.name(crate::words::Gen(i)).to_string())
                .collect(),
            states: tm.states.clone(),
            transitions: tm
                .transitions
                .iter()
                .map(|t| TmFileTransition {
                    name: Some(t.name.clone()),
                    u: tm.alphabet.display(&t.read_left).to_string(),
                    q: tm.states[t.state.0].clone(),
                    v: tm.alphabet.display(&t.read_right).to_string(),
                    u2: tm.alphabet.display(&t.write_left).to_string(),
                    q2: tm.states[t.new_state.0].clone(),
                    v2: tm.alphabet.display(&t.write_right).to_string(),
                })
                .collect(),
            accept: TmFileConfig {
                left: tm.alphabet.display(&tm.accept.left).to_string(),
                state: tm.states[tm.accept.state.0].clone(),
                right: tm.alphabet.display(&tm.accept.right).to_string(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smachine::{AcceptOutcome, Budget};

    #[test]
    fn eraser_steps() {
        let m = two_rule_eraser();
        let c = m.parse_config("a", "q", "").unwrap();
        let next = m.step(&c);
        assert_eq!(next.len(), 1);
        assert_eq!(next[0].1, m.parse_config("", "q0", "").unwrap());

        let stuck = m.parse_config("", "q", "").unwrap();
        assert!(m.step(&stuck).is_empty());

        let c = m.parse_config("a a", "q0", "").unwrap();
        let next = m.step(&c);
        assert_eq!(next[0].1, m.parse_config("a", "q0", "").unwrap());
    }

    #[test]
    fn eraser_acceptance() {
        let m = two_rule_eraser();
        let c = m.parse_config("a a", "q", "").unwrap();
        let out = m.accepts(&c, 100, 10_000).unwrap();
        let trace = out.trace().expect("accepted");
        assert_eq!(trace.steps.len(), 2);

        let q = m.parse_config("", "q", "").unwrap();
        assert!(matches!(
            m.accepts(&q, 100, 10_000).unwrap(),
            TmOutcome::RejectedExhaustive { .. }
        ));

        let w0 = m.parse_config("", "q0", "").unwrap();
        let out = m.accepts(&w0, 100, 10_000).unwrap();
        assert_eq!(out.trace().unwrap().steps.len(), 0);
    }

    #[test]
    fn naive_conversion_rules() {
        let m = two_rule_eraser();
        let s = m.to_smachine().unwrap();
        assert_eq!(s.rules.len(), 2);
        // The state part of r1 is [q -> a^-1 q0].
        let part = &s.rules[0].parts[1];
        assert_eq!(part.lhs.to_word(), s.alphabet.parse_word("q").unwrap());
        assert_eq!(
            part.rhs.to_word(),
            s.alphabet.parse_word("a^-1 q0").unwrap()
        );
        // Sentinel parts are identities.
        for idx in [0usize, 2] {
            let p = &s.rules[0].parts[idx];
            assert_eq!(p.lhs, p.rhs);
        }
        assert!(s.validate().is_empty(), "{:?}", s.validate());
    }

    #[test]
    fn smachine_is_stronger_than_tm() {
        let m = two_rule_eraser();
        let s = m.to_smachine().unwrap();
        let q = m.parse_config("", "q", "").unwrap();
        let w = m.config_word(&s, &q);
        let out = s
            .accepts(&w, Budget { max_steps: 10, max_visited: 100_000 })
            .unwrap();
        let trace = out.trace().expect("the S-machine accepts q");
        assert_eq!(trace.steps.len(), 2);
        // The middle word is the sentinel form of a^-1 q0.
        assert_eq!(
            s.display_admissible(&trace.words[1]),
            format!("{LEFT_SENTINEL} a^-1 q0 {RIGHT_SENTINEL}")
        );
    }

    #[test]
    fn inclusion_is_exhaustive_up_to_length_five() {
        // Every configuration accepted by the TM is accepted by the converted
        // S-machine; checked for all configurations of length <= 5, where the
        // inclusion is strict exactly at the extra S-accepted ones.
        let m = two_rule_eraser();
        let s = m.to_smachine().unwrap();
        let mut strict = 0usize;
        for state in ["q", "q0"] {
            for left in 0..=4usize {
                for right in 0..=(4 - left) {
                    let cfg = m
                        .parse_config(&"a ".repeat(left), state, &"a ".repeat(right))
                        .unwrap();
                    if cfg.len() > 5 {
                        continue;
                    }
                    let tm_accepts = m.accepts(&cfg, 50, 100_000).unwrap().trace().is_some();
                    let sm = s
                        .accepts(
                            &m.config_word(&s, &cfg),
                            Budget { max_steps: 14, max_visited: 200_000 },
                        )
                        .unwrap();
                    let sm_accepts = matches!(sm, AcceptOutcome::Accepted(_));
                    if tm_accepts {
                        assert!(sm_accepts, "S-machine must cover TM acceptance");
                    } else if sm_accepts {
                        strict += 1;
                    }
                }
            }
        }
        assert!(strict > 0, "inclusion should be strict (q is a witness)");
    }
}
