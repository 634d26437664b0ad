//! Scripted splice derivations: an engine that tracks the certificate factors
//! while relators are spliced into a word, plus the constructive fillings
//! used for commutator powers and for accepting S-machine computations.

use std::collections::BTreeSet;

use crate::presentation::GroupPresentation;
use crate::smachine::{Budget, Fragment, SMachine, Trace};
use crate::turing::{Configuration, TuringMachine};
use crate::words::{Alphabet, Gen, Letter, Word};

use super::{TrivialityCertificate, WordProblemError};

/// Splices relator-closure elements into a running word and accumulates the
/// conjugate factors, so that `start = prod factors · current` holds at every
/// step. Reaching the empty word yields a certificate for `start`.
pub struct Splicer {
    closure: BTreeSet<Word>,
    start: Word,
    pub word: Word,
    factors: Vec<(Word, Word)>,
}

impl Splicer {
    pub fn new(presentation: &GroupPresentation, start: Word) -> Self {
        Splicer {
            closure: presentation.relator_closure(),
            word: start.clone(),
            start,
            factors: Vec::new(),
        }
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Splices `rho` at letter boundary `pos`; `rho` must be in the relator
    /// closure.
    pub fn splice(&mut self, pos: usize, rho: &Word) -> Result<(), WordProblemError> {
        if !self.closure.contains(rho) {
            return Err(WordProblemError::Construction(format!(
                "splice word with {} letters is not in the relator closure",
                rho.len()
            )));
        }
        if pos > self.word.len() {
            return Err(WordProblemError::Construction("splice past the end".into()));
        }
        let prefix = Word::from_letters(self.word.letters()[..pos].iter().copied());
        self.factors.push((rho.inverse(), prefix.clone()));
        self.word = Word::from_letters(
            self.word.letters()[..pos]
                .iter()
                .chain(rho.letters())
                .chain(self.word.letters()[pos..].iter())
                .copied(),
        );
        Ok(())
    }

    /// Finishes the derivation; the current word must be empty.
    pub fn finish(self) -> Result<(Word, TrivialityCertificate), WordProblemError> {
        if !self.word.is_empty() {
            return Err(WordProblemError::Construction(format!(
                "derivation stopped at a word of length {}",
                self.word.len()
            )));
        }
        let cert = TrivialityCertificate::from_conjugate_factors(&self.factors);
        debug_assert_eq!(cert.product(), self.start);
        Ok((self.start, cert))
    }
}

fn letter_at(w: &Word, i: usize) -> Letter {
    w.letters()[i]
}

/// Grid filling of `[a^n, b^n]` over `<a,b | [a,b]>`: repeatedly swap an
/// adjacent `b a^-1` pair with one relator splice. Exactly `n^2` factors.
pub fn zsq_commutator_certificate(
    p: &GroupPresentation,
    n: u32,
) -> Result<(Word, TrivialityCertificate), WordProblemError> {
    let a = p.gen_by_name("a").ok_or_else(|| missing("a"))?;
    let b = p.gen_by_name("b").ok_or_else(|| missing("b"))?;
    let an = Word::gen(a).pow(n as i64);
    let bn = Word::gen(b).pow(n as i64);
    let w = Word::commutator(&an, &bn);
    let mut s = Splicer::new(p, w);
    // a^-1 b a b^-1, a cyclic shift of the inverted commutator relator.
    let swap = Word::from_letters([
        Letter::negative(a),
        Letter::positive(b),
        Letter::positive(a),
        Letter::negative(b),
    ]);
    let cap = (n as usize + 1) * (n as usize + 1) + 4;
    for _ in 0..cap {
        if s.word.is_empty() {
            break;
        }
        let pos = (0..s.word.len().saturating_sub(1)).find(|&i| {
            letter_at(&s.word, i) == Letter::positive(b)
                && letter_at(&s.word, i + 1) == Letter::negative(a)
        });
        match pos {
            Some(i) => s.splice(i, &swap)?,
            None => break,
        }
    }
    s.finish()
}

/// Filling of `c^{n^2} · [a^n, b^n]^-1` over the Heisenberg presentation
/// `<a,b,c | [a,b] = c, ca = ac, cb = bc>`: each `b a` swap emits a `c^-1`
/// which then commutes leftward until it cancels.
pub fn heisenberg_commutator_certificate(
    p: &GroupPresentation,
    n: u32,
) -> Result<(Word, TrivialityCertificate), WordProblemError> {
    let a = p.gen_by_name("a").ok_or_else(|| missing("a"))?;
    let b = p.gen_by_name("b").ok_or_else(|| missing("b"))?;
    let c = p.gen_by_name("c").ok_or_else(|| missing("c"))?;
    let an = Word::gen(a).pow(n as i64);
    let bn = Word::gen(b).pow(n as i64);
    let commutator_inv = Word::commutator(&an, &bn).inverse();
    let w = Word::gen(c).pow((n * n) as i64).concat(&commutator_inv);
    let mut s = Splicer::new(p, w);
    // b a -> c^-1 a b, a shift of the [a,b] = c relator.
    let swap = Word::from_letters([
        Letter::negative(c),
        Letter::positive(a),
        Letter::positive(b),
        Letter::negative(a),
        Letter::negative(b),
    ]);
    let migrate = |y: Letter| {
        Word::from_letters([Letter::negative(c), y, Letter::positive(c), y.inverse()])
    };
    let nn = n as usize;
    let cap = 8 * (nn * nn * nn + nn * nn + 8);
    for _ in 0..cap {
        if s.word.is_empty() {
            break;
        }
        // Migrate the leftmost c^-1 one step left across a non-c letter.
        let mig = (0..s.word.len().saturating_sub(1)).find(|&i| {
            letter_at(&s.word, i + 1) == Letter::negative(c) && letter_at(&s.word, i).gen != c
        });
        if let Some(i) = mig {
            let rho = migrate(letter_at(&s.word, i));
            s.splice(i, &rho)?;
            continue;
        }
        let sw = (0..s.word.len().saturating_sub(1)).find(|&i| {
            letter_at(&s.word, i) == Letter::positive(b)
                && letter_at(&s.word, i + 1) == Letter::positive(a)
        });
        match sw {
            Some(i) => s.splice(i, &swap)?,
            None => break,
        }
    }
    s.finish()
}

fn missing(name: &str) -> WordProblemError {
    WordProblemError::MachineMismatch(format!("presentation has no generator `{name}`"))
}


/// One oriented rule part at the level of base-alphabet words: the literal
/// `span` anchored at a state letter gets replaced by
/// `pre^-1 r^e rhs r^-e post^-1` via a single rule-relator splice.
#[derive(Debug, Clone)]
pub(crate) struct ScriptPart {
    pub span: Word,
    pub pre: Word,
    pub post: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone)]
pub(crate) struct ScriptStep {
    pub rule_name: String,
    /// Exponent of the left wrapper: -1 for a forward rule application
    /// (relator `r U r^-1 V^-1` used as `U -> r^-1 V r`), +1 for an inverted
    /// one.
    pub exponent: i8,
    pub parts: Vec<ScriptPart>,
}

/// Shared engine: splices a hub word `K(start)` down to the empty word along
/// a computation, one rule relator per part per copy, commutations to carry
/// rule letters across tape and k letters, and the hub relator last.
pub(crate) fn run_hub_script(
    presentation: &GroupPresentation,
    base: &Alphabet,
    start_sector: &Word,
    accept_sector: &Word,
    steps: &[ScriptStep],
    state_gens: &BTreeSet<Gen>,
    rule_gens: &BTreeSet<Gen>,
) -> Result<(Word, TrivialityCertificate), WordProblemError> {
    let mismatch = |e: crate::presentation::PresentationError| {
        WordProblemError::MachineMismatch(e.to_string())
    };
    let hub_target = presentation.hub_of(base, start_sector).map_err(mismatch)?;
    let hub_relator = presentation.hub_of(base, accept_sector).map_err(mismatch)?;
    if !presentation.relator_closure().contains(&hub_relator) {
        return Err(WordProblemError::MachineMismatch(
            "presentation lacks the hub relator of the accept word".into(),
        ));
    }
    let copy_of = |w: &Word, c: u32| -> Result<Word, WordProblemError> {
        presentation.copy_word(base, w, c).map_err(mismatch)
    };
    let mut s = Splicer::new(presentation, hub_target);
    let mut wrapper_depth = 0usize;
    for (si, step) in steps.iter().enumerate() {
        let r = presentation.gen_by_name(&step.rule_name).ok_or_else(|| {
            WordProblemError::MachineMismatch(format!("no rule letter `{}`", step.rule_name))
        })?;
        let lead = Letter::new(r, step.exponent < 0);
        let trail = lead.inverse();
        for c in 1..=presentation.n_copies {
            for part in &step.parts {
                let span_c = copy_of(&part.span, c)?;
                let anchor = span_c.letters()[0];
                let positions: Vec<usize> = (0..s.word.len())
                    .filter(|&i| letter_at(&s.word, i) == anchor)
                    .collect();
                let pos = match positions.as_slice() {
                    [p] => *p,
                    _ => {
                        return Err(WordProblemError::Construction(format!(
                            "state-letter anchor not unique at step {si}"
                        )))
                    }
                };
                if s.word.len() < pos + span_c.len()
                    || &s.word.letters()[pos..pos + span_c.len()] != span_c.letters()
                {
                    return Err(WordProblemError::Construction(format!(
                        "span mismatch at step {si} copy {c}"
                    )));
                }
                let rhs_c = copy_of(&part.rhs, c)?;
                let pre_c = copy_of(&part.pre, c)?;
                let post_c = copy_of(&part.post, c)?;
                let mut letters = pre_c.inverse().letters().to_vec();
                letters.push(lead);
                letters.extend_from_slice(rhs_c.letters());
                letters.push(trail);
                letters.extend_from_slice(post_c.inverse().letters());
                letters.extend_from_slice(span_c.inverse().letters());
                let x = Word::from_letters(letters);
                s.splice(pos, &x)?;
            }
        }
        // Fusion: trailing rule letters migrate right, the remaining leading
        // one migrates left, all across tape and k letters only.
        let cap = 4 * (s.word.len() + 8) * (presentation.n_copies as usize + 1);
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > cap {
                return Err(WordProblemError::Construction(format!(
                    "fusion did not settle at step {si}"
                )));
            }
            let block_start = wrapper_depth;
            let block_end = s.word.len() - wrapper_depth;
            let blocked = |y: Letter| -> Result<(), WordProblemError> {
                if state_gens.contains(&y.gen) {
                    return Err(WordProblemError::MachineMismatch(format!(
                        "rule `{}` leaves a state class untouched; its letter cannot cross",
                        step.rule_name
                    )));
                }
                Ok(())
            };
            let right = (block_start..block_end.saturating_sub(1)).find(|&i| {
                letter_at(&s.word, i) == trail
                    && !rule_gens.contains(&letter_at(&s.word, i + 1).gen)
            });
            if let Some(i) = right {
                let y = letter_at(&s.word, i + 1);
                blocked(y)?;
                let rho = Word::from_letters([y, trail, y.inverse(), lead]);
                s.splice(i, &rho)?;
                continue;
            }
            let left = ((block_start + 1)..block_end).find(|&i| {
                letter_at(&s.word, i) == lead
                    && !rule_gens.contains(&letter_at(&s.word, i - 1).gen)
            });
            if let Some(i) = left {
                let y = letter_at(&s.word, i - 1);
                blocked(y)?;
                let rho = Word::from_letters([lead, y, trail, y.inverse()]);
                s.splice(i - 1, &rho)?;
                continue;
            }
            break;
        }
        if letter_at(&s.word, wrapper_depth) != lead
            || letter_at(&s.word, s.word.len() - 1 - wrapper_depth) != trail
        {
            return Err(WordProblemError::Construction(format!(
                "wrappers out of place after step {si}"
            )));
        }
        wrapper_depth += 1;
    }
    // The inner block is now K(W_0); cancel it with the hub relator, which
    // lets the nested rule-letter wrappers collapse.
    let inner = &s.word.letters()[wrapper_depth..s.word.len() - wrapper_depth];
    if inner != hub_relator.letters() {
        return Err(WordProblemError::Construction(
            "inner block is not the hub relator".into(),
        ));
    }
    s.splice(wrapper_depth + hub_relator.len(), &hub_relator.inverse())?;
    s.finish()
}

/// Turns an accepting S-machine computation into a triviality certificate for
/// the hub word of its start over `G_N(S)`: per copy each rule part
/// contributes one rule relator, rule letters are transported across tape and
/// k letters by commutation relators, and the final hub relator cancels
/// `K(W_0)`.
pub fn certificate_from_trace(
    machine: &SMachine,
    presentation: &GroupPresentation,
    trace: &Trace,
) -> Result<(Word, TrivialityCertificate), WordProblemError> {
    if trace.words.last() != Some(&machine.accept) {
        return Err(WordProblemError::TraceNotAccepting);
    }
    let fragment_span = |f: &Fragment| -> Word {
        let mut letters = Vec::new();
        for (i, &q) in f.qs.iter().enumerate() {
            letters.push(Letter::positive(q));
            if i < f.gaps.len() {
                letters.extend_from_slice(f.gaps[i].letters());
            }
        }
        Word::from_letters(letters)
    };
    let steps: Vec<ScriptStep> = trace
        .steps
        .iter()
        .map(|id| {
            let base = &machine.rules[id.index];
            let parts = base
                .parts
                .iter()
                .map(|p| {
                    let (lhs, rhs) = if id.inverted { (&p.rhs, &p.lhs) } else { (&p.lhs, &p.rhs) };
                    ScriptPart {
                        span: fragment_span(lhs),
                        pre: lhs.pre.clone(),
                        post: lhs.post.clone(),
                        rhs: rhs.to_word(),
                    }
                })
                .collect();
            ScriptStep {
                rule_name: base.name.clone(),
                exponent: if id.inverted { 1 } else { -1 },
                parts,
            }
        })
        .collect();
    let state_gens: BTreeSet<Gen> = (1..=presentation.n_copies)
        .flat_map(|c| {
            machine
                .classes
                .iter()
                .flatten()
                .filter_map(move |&q| presentation.copy_gen(machine.alphabet.name(q), c))
                .collect::<Vec<_>>()
        })
        .collect();
    let rule_gens: BTreeSet<Gen> = machine
        .rules
        .iter()
        .filter_map(|r| presentation.gen_by_name(&r.name))
        .collect();
    run_hub_script(
        presentation,
        &machine.alphabet,
        &trace.start().to_word(),
        &machine.accept.to_word(),
        &steps,
        &state_gens,
        &rule_gens,
    )
}

/// Hub-word filling oracle for `G(M)`: searches the induced S-machine for an
/// accepting computation of the configuration within the budget, then builds
/// the disc tessellation as a certificate for `K(configuration)` over the
/// `G(M)` relators `(uqv)^r = u'q'v'`. Returns `None` when the budgeted
/// machine search does not accept.
pub fn gm_hub_certificate(
    tm: &TuringMachine,
    presentation: &GroupPresentation,
    config: &Configuration,
    budget: Budget,
) -> Result<Option<(Word, TrivialityCertificate)>, WordProblemError> {
    let machine = tm
        .to_smachine()
        .map_err(|e| WordProblemError::MachineMismatch(e.to_string()))?;
    let w = tm.config_word(&machine, config);
    let outcome = machine
        .accepts(&w, budget)
        .map_err(|e| WordProblemError::MachineMismatch(e.to_string()))?;
    let Some(trace) = outcome.trace() else {
        return Ok(None);
    };
    let base = crate::presentation::gm_base_alphabet(tm);
    let base_word = |tape_left: &Word, state: usize, tape_right: &Word| -> Word {
        let mut letters = Vec::new();
        let map_tape = |letters: &mut Vec<Letter>, w: &Word| {
            for l in w.letters() {
                let g = base.lookup(tm.alphabet.name(l.gen)).expect("tape letter in base");
                letters.push(Letter::new(g, l.inv));
            }
        };
        map_tape(&mut letters, tape_left);
        letters.push(Letter::positive(
            base.lookup(&tm.states[state]).expect("state in base"),
        ));
        map_tape(&mut letters, tape_right);
        Word::from_letters(letters)
    };
    let steps: Vec<ScriptStep> = trace
        .steps
        .iter()
        .map(|id| {
            let t = &tm.transitions[id.index];
            let source = base_word(&t.read_left, t.state.0, &t.read_right);
            let target = base_word(&t.write_left, t.new_state.0, &t.write_right);
            let state_of = |s: usize| Word::gen(base.lookup(&tm.states[s]).expect("state"));
            let reword = |w: &Word| -> Word {
                w.substitute(&tm.alphabet, |g| {
                    base.lookup(tm.alphabet.name(g)).map(Word::gen)
                })
                .expect("tape letters in base")
            };
            let part = if id.inverted {
                ScriptPart {
                    span: state_of(t.new_state.0),
                    pre: reword(&t.write_left),
                    post: reword(&t.write_right),
                    rhs: source,
                }
            } else {
                ScriptPart {
                    span: state_of(t.state.0),
                    pre: reword(&t.read_left),
                    post: reword(&t.read_right),
                    rhs: target,
                }
            };
            ScriptStep {
                rule_name: t.name.clone(),
                exponent: if id.inverted { 1 } else { -1 },
                parts: vec![part],
            }
        })
        .collect();
    // Sector words of the trace drop the sentinel state letters.
    let sector = |aw: &crate::smachine::AdmissibleWord| -> Word {
        let state = machine.alphabet.name(aw.states[1]).to_string();
        let mut letters = Vec::new();
        for l in aw.tapes[0].letters() {
            let g = base
                .lookup(machine.alphabet.name(l.gen))
                .expect("tape letter in base");
            letters.push(Letter::new(g, l.inv));
        }
        letters.push(Letter::positive(base.lookup(&state).expect("state in base")));
        for l in aw.tapes[1].letters() {
            let g = base
                .lookup(machine.alphabet.name(l.gen))
                .expect("tape letter in base");
            letters.push(Letter::new(g, l.inv));
        }
        Word::from_letters(letters)
    };
    let state_gens: BTreeSet<Gen> = (1..=presentation.n_copies)
        .flat_map(|c| {
            tm.states
                .iter()
                .filter_map(|s| presentation.copy_gen(s, c))
                .collect::<Vec<_>>()
        })
        .collect();
    let rule_gens: BTreeSet<Gen> = tm
        .transitions
        .iter()
        .filter_map(|t| presentation.gen_by_name(&t.name))
        .collect();
    let accept_sector = base_word(&tm.accept.left, tm.accept.state.0, &tm.accept.right);
    run_hub_script(
        presentation,
        &base,
        &sector(trace.start()),
        &accept_sector,
        &steps,
        &state_gens,
        &rule_gens,
    )
    .map(Some)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{compile_gns, gmn_machine, GroupPresentation};
    use crate::smachine::Budget;
    use crate::turing::two_rule_eraser;
    use crate::word_problem::verify_certificate;

    fn zsq() -> GroupPresentation {
        GroupPresentation::from_texts(&["a", "b"], &["a b a^-1 b^-1"], "zsq").unwrap()
    }

    fn heis() -> GroupPresentation {
        GroupPresentation::from_texts(
            &["a", "b", "c"],
            &["a b a^-1 b^-1 c^-1", "c a c^-1 a^-1", "c b c^-1 b^-1"],
            "heisenberg",
        )
        .unwrap()
    }

    #[test]
    fn grid_certificates_have_n_squared_factors() {
        let p = zsq();
        for n in 1..=4u32 {
            let (w, cert) = zsq_commutator_certificate(&p, n).unwrap();
            assert_eq!(cert.d(), (n * n) as usize, "n = {n}");
            assert!(verify_certificate(&cert, &p, &w, None).is_ok());
        }
    }

    #[test]
    fn heisenberg_certificates_verify() {
        let p = heis();
        for n in 1..=3u32 {
            let (w, cert) = heisenberg_commutator_certificate(&p, n).unwrap();
            assert!(verify_certificate(&cert, &p, &w, None).is_ok(), "n = {n}");
            assert!(cert.d() >= (n * n) as usize);
        }
    }

    #[test]
    fn zero_step_trace_needs_only_the_hub() {
        let m = gmn_machine(1, 3, true);
        let p = compile_gns(&m, 2).unwrap();
        let trace = crate::smachine::Trace { words: vec![m.accept.clone()], steps: vec![] };
        let (w, cert) = certificate_from_trace(&m, &p, &trace).unwrap();
        assert_eq!(cert.d(), 1);
        assert!(verify_certificate(&cert, &p, &w, None).is_ok());
    }

    #[test]
    fn one_step_trace_on_the_anchored_stacking_machine() {
        let m = gmn_machine(1, 3, true);
        let n_copies = 2u32;
        let p = compile_gns(&m, n_copies).unwrap();
        let start = m.parse_admissible("a_1 q_1 a_1 q_2 a_1 q_3", true).unwrap();
        let out = m
            .accepts(&start, Budget { max_steps: 4, max_visited: 100_000 })
            .unwrap();
        let trace = out.trace().expect("accepts in one step").clone();
        assert_eq!(trace.steps.len(), 1);
        let (w, cert) = certificate_from_trace(&m, &p, &trace).unwrap();
        assert!(verify_certificate(&cert, &p, &w, None).is_ok());
        // Per copy: 4 rule-part relators (sentinel + three state classes) and
        // one k-crossing, plus the hub.
        assert_eq!(cert.d(), (4 + 1) * n_copies as usize + 1);
        assert_eq!(w, p.hub_of(&m.alphabet, &start.to_word()).unwrap());
    }

    #[test]
    fn eraser_two_step_acceptance_certifies() {
        let tm = two_rule_eraser();
        let m = tm.to_smachine().unwrap();
        let p = compile_gns(&m, 2).unwrap();
        let q = tm.parse_config("", "q", "").unwrap();
        let w = tm.config_word(&m, &q);
        let out = m
            .accepts(&w, Budget { max_steps: 8, max_visited: 100_000 })
            .unwrap();
        let trace = out.trace().expect("S-machine accepts q").clone();
        assert_eq!(trace.steps.len(), 2);
        let (target, cert) = certificate_from_trace(&m, &p, &trace).unwrap();
        assert!(verify_certificate(&cert, &p, &target, None).is_ok());
    }
}
