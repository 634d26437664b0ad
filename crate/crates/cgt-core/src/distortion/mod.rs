//! Equalizer subgroups of `F_m x F_n`: the generator construction
//! `(x_i, t_i), (s_j, y_j), (1, r_k)`, membership through the word-problem
//! oracles, rewriting of pairs over the generators, and empirical distortion
//! tables.

pub mod heisenberg;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::presentation::GroupPresentation;
use crate::word_problem::{
    area_oracle, triviality_search, AreaBudget, CosetTable, TrivialityCertificate,
    TrivialitySearch,
};
use crate::words::{Alphabet, Gen, Word, WordError};

#[derive(Debug, Error)]
pub enum EqualizerError {
    #[error("witness `{0}` fails verification: its defining equality does not hold in the target")]
    WitnessFailed(String),
    #[error("spec shape error: {0}")]
    Shape(String),
    #[error("budget values must be positive")]
    ZeroBudget,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Search(#[from] crate::word_problem::WordProblemError),
}

/// An element `(u, v)` of `F_m x F_n`; `u` over the x-alphabet, `v` over the
/// target's y-alphabet. Its length in the product is `|u| + |v|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairElement {
    pub u: Word,
    pub v: Word,
}

impl PairElement {
    pub fn len(&self) -> usize {
        self.u.len() + self.v.len()
    }

    pub fn identity() -> Self {
        PairElement { u: Word::empty(), v: Word::empty() }
    }

    pub fn mul(&self, other: &PairElement) -> PairElement {
        PairElement { u: self.u.concat(&other.u), v: self.v.concat(&other.v) }
    }

    pub fn inverse(&self) -> PairElement {
        PairElement { u: self.u.inverse(), v: self.v.inverse() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqLabel {
    /// `(x_i, t_i)`
    MixedX(usize),
    /// `(s_j, y_j)`
    MixedY(usize),
    /// `(1, r_k)`
    Kernel(usize),
}

#[derive(Debug, Clone)]
pub struct EqGenerator {
    pub label: EqLabel,
    pub pair: PairElement,
}

/// Equalizer of `phi: F_m -> G` against the projection `psi: F_n -> G`, where
/// `G` is the target presentation over the y-alphabet.
#[derive(Debug, Clone)]
pub struct EqualizerSpec {
    pub target: GroupPresentation,
    pub x_alphabet: Alphabet,
    /// `phi[i]`: image of `x_i` as a word over the target alphabet.
    pub phi: Vec<Word>,
    /// Witnesses `t_i` with `phi(x_i) = psi(t_i)`.
    pub t: Vec<Word>,
    /// Witnesses `s_j` with `phi(s_j) = psi(y_j)`.
    pub s: Vec<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

impl EqualizerSpec {
    pub fn new(
        target: GroupPresentation,
        x_names: &[&str],
        phi: Vec<Word>,
        t: Vec<Word>,
        s: Vec<Word>,
    ) -> Result<Self, EqualizerError> {
        let x_alphabet = Alphabet::from_names(x_names.iter().copied())?;
        if phi.len() != x_alphabet.len() || t.len() != x_alphabet.len() {
            return Err(EqualizerError::Shape(
                "phi and t must have one entry per x-generator".into(),
            ));
        }
        if s.len() != target.alphabet.len() {
            return Err(EqualizerError::Shape("s must have one entry per y-generator".into()));
        }
        Ok(EqualizerSpec { target, x_alphabet, phi, t, s })
    }

    /// `phi` extended to words over the x-alphabet.
    pub fn phi_of(&self, u: &Word) -> Result<Word, EqualizerError> {
        Ok(u.substitute(&self.x_alphabet, |g| self.phi.get(g.index()).cloned())?)
    }

    /// `x_i -> t_i` extended to words.
    pub fn t_of(&self, u: &Word) -> Result<Word, EqualizerError> {
        Ok(u.substitute(&self.x_alphabet, |g| self.t.get(g.index()).cloned())?)
    }

    /// `y_j -> s_j` extended to words.
    pub fn s_of(&self, v: &Word) -> Result<Word, EqualizerError> {
        Ok(v.substitute(&self.target.alphabet, |g| self.s.get(g.index()).cloned())?)
    }

    /// A word-problem decider for the target: exact when the coset
    /// enumeration closes, otherwise search-based.
    pub fn decider(&self, budget: AreaBudget) -> TargetDecider {
        TargetDecider {
            table: CosetTable::enumerate(&self.target, 4096),
            budget,
        }
    }

    /// Verifies every `t_i` and `s_j` witness equality in the target group.
    pub fn verify_witnesses(&self, budget: AreaBudget) -> Result<(), EqualizerError> {
        let decider = self.decider(budget);
        for (i, t) in self.t.iter().enumerate() {
            let lhs = self.phi[i].concat(&t.inverse());
            if decider.is_trivial(&self.target, &lhs) != Some(true) {
                return Err(EqualizerError::WitnessFailed(format!("t_{}", i + 1)));
            }
        }
        for (j, s) in self.s.iter().enumerate() {
            let lhs = self.phi_of(s)?.concat(&Word::gen(Gen(j as u32)).inverse());
            if decider.is_trivial(&self.target, &lhs) != Some(true) {
                return Err(EqualizerError::WitnessFailed(format!("s_{}", j + 1)));
            }
        }
        Ok(())
    }

    /// The generating pairs `(x_i, t_i), (s_j, y_j), (1, r_k)`, deduplicated
    /// up to inversion (first label wins).
    pub fn generators(&self, budget: AreaBudget) -> Result<Vec<EqGenerator>, EqualizerError> {
        self.verify_witnesses(budget)?;
        let mut out: Vec<EqGenerator> = Vec::new();
        let mut push = |label: EqLabel, pair: PairElement| {
            let dup = out
                .iter()
                .any(|g| g.pair == pair || g.pair == pair.inverse());
            if !dup && pair != PairElement::identity() {
                out.push(EqGenerator { label, pair });
            }
        };
        for i in 0..self.phi.len() {
            push(
                EqLabel::MixedX(i),
                PairElement { u: Word::gen(Gen(i as u32)), v: self.t[i].clone() },
            );
        }
        for j in 0..self.target.alphabet.len() {
            push(
                EqLabel::MixedY(j),
                PairElement { u: self.s[j].clone(), v: Word::gen(Gen(j as u32)) },
            );
        }
        for (k, r) in self.target.relators.iter().enumerate() {
            push(EqLabel::Kernel(k), PairElement { u: Word::empty(), v: r.clone() });
        }
        Ok(out)
    }

    /// Decides `phi(u) = psi(v)` in the target.
    pub fn membership(&self, p: &PairElement, budget: AreaBudget) -> Result<Membership, EqualizerError> {
        let w = self.phi_of(&p.u)?.concat(&p.v.inverse());
        Ok(match self.decider(budget).is_trivial(&self.target, &w) {
            Some(true) => Membership::In,
            Some(false) => Membership::Out,
            None => Membership::Unknown,
        })
    }
}

/// Word-problem decider used by the equalizer operations.
pub struct TargetDecider {
    table: Option<CosetTable>,
    budget: AreaBudget,
}

impl TargetDecider {
    pub fn is_trivial(&self, p: &GroupPresentation, w: &Word) -> Option<bool> {
        if let Some(t) = &self.table {
            return Some(t.is_trivial(w));
        }
        match triviality_search(p, w, self.budget, None) {
            Ok(TrivialitySearch::Found { .. }) => Some(true),
            Ok(TrivialitySearch::NotFound { exhausted: true, .. }) => Some(false),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.table.is_some()
    }
}

/// A word over the equalizer generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EqWord(pub Vec<(usize, bool)>);

impl EqWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn kernel_factors(&self, gens: &[EqGenerator]) -> usize {
        self.0
            .iter()
            .filter(|(i, _)| matches!(gens[*i].label, EqLabel::Kernel(_)))
            .count()
    }

    /// Coordinate-wise evaluation in `F_m x F_n`.
    pub fn eval(&self, gens: &[EqGenerator]) -> PairElement {
        let mut acc = PairElement::identity();
        for &(i, inv) in &self.0 {
            let g = if inv { gens[i].pair.inverse() } else { gens[i].pair.clone() };
            acc = acc.mul(&g);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct Expression {
    pub word: EqWord,
    /// Number of mixed-x prefix factors (`p` = |u|).
    pub mixed_prefix: usize,
    /// Kernel factor count, the certificate's `d`.
    pub kernel_count: usize,
    /// The residual second coordinate whose certificate drives the kernel
    /// part.
    pub residual: Word,
}

/// Writes a cyclic-closure element as `c^-1 r^s c` over the base relators;
/// returns `(relator index, inverted, rotation prefix c)`.
fn normalize_closure_element(relators: &[Word], sigma: &Word) -> Option<(usize, bool, Word)> {
    for (k, r) in relators.iter().enumerate() {
        for j in 0..r.len().max(1) {
            let c = Word::from_letters(r.letters()[..j].iter().copied());
            if &r.cyclic_shift(j) == sigma {
                return Some((k, false, c));
            }
            if r.cyclic_shift(j).inverse() == *sigma {
                return Some((k, true, c));
            }
        }
    }
    None
}

impl EqualizerSpec {
    /// Expresses a member pair over the generators: mixed-x factors spell `u`,
    /// then each certificate factor `r^w` becomes a conjugated kernel
    /// generator with the conjugator spelled in mixed-y generators.
    /// The result evaluates back to `p` exactly.
    pub fn express(
        &self,
        p: &PairElement,
        gens: &[EqGenerator],
        budget: AreaBudget,
    ) -> Result<Option<Expression>, EqualizerError> {
        let mut word: Vec<(usize, bool)> = Vec::new();
        let find = |label: EqLabel| -> Option<usize> {
            gens.iter().position(|g| g.label == label)
        };
        // Dedup may have dropped (x_i, t_i) in favor of an equal or inverse
        // pair; resolve each letter through the surviving generator.
        let resolve_pair = |pair: &PairElement| -> Option<(usize, bool)> {
            gens.iter().enumerate().find_map(|(gi, g)| {
                if &g.pair == pair {
                    Some((gi, false))
                } else if g.pair == pair.inverse() {
                    Some((gi, true))
                } else {
                    None
                }
            })
        };
        for l in p.u.letters() {
            let base = PairElement {
                u: Word::gen(l.gen),
                v: self.t[l.gen.index()].clone(),
            };
            let (gi, flip) = resolve_pair(&base).ok_or_else(|| {
                EqualizerError::Shape(format!("no generator covers x_{}", l.gen.index() + 1))
            })?;
            word.push((gi, flip ^ l.inv));
        }
        let mixed_prefix = word.len();
        // Residual a with (u, v) = (u, t(u)) (1, a).
        let residual = self.t_of(&p.u)?.inverse().concat(&p.v);
        let cert: TrivialityCertificate = if residual.is_empty() {
            TrivialityCertificate { conjugators: vec![Word::empty()], relators: Vec::new() }
        } else {
            match area_oracle(&self.target, &residual, budget)?.certificate {
                Some(c) => c,
                None => match triviality_search(&self.target, &residual, budget, None)? {
                    TrivialitySearch::Found { certificate, .. } => certificate,
                    TrivialitySearch::NotFound { .. } => return Ok(None),
                },
            }
        };
        let kernel_count = cert.d();
        // Conjugators in the product-of-conjugates form are the prefix
        // products of the certificate's u_i.
        let mut conj = Word::empty();
        for i in 0..cert.d() {
            conj = conj.concat(&cert.conjugators[i]);
            let (k, inverted, rot) = normalize_closure_element(&self.target.relators, &cert.relators[i])
                .ok_or_else(|| EqualizerError::Shape("certificate factor is not a relator".into()))?;
            let kernel_gen = find(EqLabel::Kernel(k)).ok_or_else(|| {
                EqualizerError::Shape(format!("no kernel generator for relator {k}"))
            })?;
            let w = conj.concat(&rot.inverse());
            let spell = |word: &mut Vec<(usize, bool)>, v: &Word, flip: bool| -> Result<(), EqualizerError> {
                let letters: Vec<_> = if flip {
                    v.inverse().letters().to_vec()
                } else {
                    v.letters().to_vec()
                };
                for l in letters {
                    let base = PairElement {
                        u: self.s[l.gen.index()].clone(),
                        v: Word::gen(l.gen),
                    };
                    let (gi, gflip) = gens
                        .iter()
                        .enumerate()
                        .find_map(|(gi, g)| {
                            if g.pair == base {
                                Some((gi, false))
                            } else if g.pair == base.inverse() {
                                Some((gi, true))
                            } else {
                                None
                            }
                        })
                        .ok_or_else(|| {
                            EqualizerError::Shape(format!(
                                "no generator covers y_{}",
                                l.gen.index() + 1
                            ))
                        })?;
                    word.push((gi, gflip ^ l.inv));
                }
                Ok(())
            };
            spell(&mut word, &w, false)?;
            word.push((kernel_gen, inverted));
            spell(&mut word, &w, true)?;
        }
        Ok(Some(Expression {
            word: EqWord(word),
            mixed_prefix,
            kernel_count,
            residual,
        }))
    }
}

#[derive(Debug, Clone)]
pub struct DistortionRow {
    pub n: usize,
    /// Exact minimal generator length over members of pair-length `<= n`.
    pub max_gen_length: usize,
    /// Upper bound from `express` for the same members.
    pub express_upper: usize,
    pub witness: PairElement,
}

#[derive(Debug, Clone)]
pub struct DistortionTable {
    pub rows: Vec<DistortionRow>,
    /// Every member with its exact generator length.
    pub members: Vec<(PairElement, usize)>,
}

/// Exact distortion data by BFS in the subgroup Cayley graph intersected with
/// membership over all pairs with `|u| + |v| <= n_max`.
pub fn distortion_sample(
    spec: &EqualizerSpec,
    gens: &[EqGenerator],
    n_max: usize,
    budget: AreaBudget,
    max_ball: usize,
) -> Result<DistortionTable, EqualizerError> {
    // Members to cover.
    let mut members: Vec<PairElement> = Vec::new();
    for u in crate::word_problem::reduced_words(spec.x_alphabet.len(), n_max) {
        for v in crate::word_problem::reduced_words(spec.target.alphabet.len(), n_max) {
            let p = PairElement { u: u.clone(), v };
            if p.len() > n_max || p == PairElement::identity() {
                continue;
            }
            if spec.membership(&p, budget)? == Membership::In {
                members.push(p);
            }
        }
    }
    // Subgroup ball.
    let mut dist: HashMap<PairElement, usize> = HashMap::new();
    dist.insert(PairElement::identity(), 0);
    let mut queue = VecDeque::new();
    queue.push_back(PairElement::identity());
    let mut pending: usize = members.iter().filter(|m| !dist.contains_key(*m)).count();
    while let Some(at) = queue.pop_front() {
        if pending == 0 || dist.len() >= max_ball {
            break;
        }
        let d = dist[&at];
        for g in gens {
            for pair in [g.pair.clone(), g.pair.inverse()] {
                let next = at.mul(&pair);
                if dist.contains_key(&next) {
                    continue;
                }
                if members.contains(&next) {
                    pending -= 1;
                }
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    if pending > 0 {
        return Err(EqualizerError::Shape(format!(
            "{pending} members not reached within the ball budget; raise max_ball"
        )));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let mut best: Option<(usize, &PairElement)> = None;
        let mut upper = 0usize;
        for m in members.iter().filter(|m| m.len() <= n) {
            let d = dist[m];
            if best.map_or(true, |(bd, bw)| d > bd || (d == bd && m < &bw)) {
                best = Some((d, m));
            }
            if let Some(e) = spec.express(m, gens, budget)? {
                upper = upper.max(e.word.len());
            }
        }
        if let Some((d, w)) = best {
            rows.push(DistortionRow {
                n,
                max_gen_length: d,
                express_upper: upper,
                witness: w.clone(),
            });
        }
    }
    let members = members
        .into_iter()
        .map(|m| {
            let d = dist[&m];
            (m, d)
        })
        .collect();
    Ok(DistortionTable { rows, members })
}

/// Exhaustively checks that no product of at most `max_len` generators with
/// fewer than `min_kernel` kernel factors equals `target`.
pub fn kernel_lower_bound_holds(
    gens: &[EqGenerator],
    target: &PairElement,
    min_kernel: usize,
    max_len: usize,
) -> bool {
    let mut seen: HashMap<(PairElement, usize), usize> = HashMap::new();
    let start = (PairElement::identity(), 0usize);
    seen.insert(start.clone(), 0);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some((at, kernels)) = queue.pop_front() {
        let d = seen[&(at.clone(), kernels)];
        if d == max_len {
            continue;
        }
        for (gi, g) in gens.iter().enumerate() {
            let is_kernel = matches!(gens[gi].label, EqLabel::Kernel(_));
            let k2 = kernels + is_kernel as usize;
            if k2 >= min_kernel {
                continue;
            }
            for pair in [g.pair.clone(), g.pair.inverse()] {
                let next = at.mul(&pair);
                if &next == target {
                    return false;
                }
                let key = (next.clone(), k2);
                if !seen.contains_key(&key) {
                    seen.insert(key.clone(), d + 1);
                    queue.push_back(key);
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::GroupPresentation;

    fn z3_spec() -> EqualizerSpec {
        let target = GroupPresentation::from_texts(&["y"], &["y y y"], "z3").unwrap();
        let y = target.alphabet.parse_word("y").unwrap();
        let x_alphabet = Alphabet::from_names(["x"]).unwrap();
        let x = x_alphabet.parse_word("x").unwrap();
        EqualizerSpec::new(target, &["x"], vec![y.clone()], vec![y], vec![x]).unwrap()
    }

    fn budget() -> AreaBudget {
        AreaBudget { max_area: 8, max_visited: 200_000 }
    }

    #[test]
    fn z3_generators_dedup_to_two() {
        let spec = z3_spec();
        let gens = spec.generators(budget()).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(matches!(gens[0].label, EqLabel::MixedX(0)));
        assert!(matches!(gens[1].label, EqLabel::Kernel(0)));
    }

    #[test]
    fn free_target_has_no_kernel_generators() {
        let target = GroupPresentation::from_texts(&["y"], &[], "f1").unwrap();
        let y = target.alphabet.parse_word("y").unwrap();
        let spec = EqualizerSpec::new(
            target,
            &["x"],
            vec![y.clone()],
            vec![y],
            vec![Alphabet::from_names(["x"]).unwrap().parse_word("x").unwrap()],
        )
        .unwrap();
        let gens = spec.generators(budget()).unwrap();
        assert!(gens
            .iter()
            .all(|g| !matches!(g.label, EqLabel::Kernel(_))));
    }

    #[test]
    fn witness_failure_is_reported() {
        let target = GroupPresentation::from_texts(&["y"], &["y y y"], "z3").unwrap();
        let y2 = target.alphabet.parse_word("y y").unwrap();
        let x_alphabet = Alphabet::from_names(["x"]).unwrap();
        let x = x_alphabet.parse_word("x").unwrap();
        let y = target.alphabet.parse_word("y").unwrap();
        // t_1 = y^2 but phi(x) = y: y != y^2 in Z/3.
        let spec = EqualizerSpec::new(target, &["x"], vec![y], vec![y2], vec![x]).unwrap();
        let err = spec.generators(budget()).unwrap_err();
        assert!(matches!(err, EqualizerError::WitnessFailed(w) if w == "t_1"));
    }

    #[test]
    fn z3_membership_matches_direct_evaluation() {
        // Independent oracle: exponent arithmetic mod 3 in the cyclic group.
        let spec = z3_spec();
        let exp = |w: &Word| -> i64 {
            w.letters().iter().map(|l| if l.inv { -1 } else { 1 }).sum()
        };
        for u in crate::word_problem::reduced_words(1, 6) {
            for v in crate::word_problem::reduced_words(1, 6) {
                let p = PairElement { u: u.clone(), v };
                if p.len() > 6 {
                    continue;
                }
                let expect = (exp(&p.u) - exp(&p.v)).rem_euclid(3) == 0;
                let got = spec.membership(&p, budget()).unwrap();
                assert_eq!(got == Membership::In, expect, "{:?}", p);
                assert_ne!(got, Membership::Unknown);
            }
        }
    }

    #[test]
    fn express_round_trips_members() {
        let spec = z3_spec();
        let gens = spec.generators(budget()).unwrap();
        for u in crate::word_problem::reduced_words(1, 6) {
            for v in crate::word_problem::reduced_words(1, 6) {
                let p = PairElement { u: u.clone(), v };
                if p.len() > 6 || spec.membership(&p, budget()).unwrap() != Membership::In {
                    continue;
                }
                let e = spec
                    .express(&p, &gens, budget())
                    .unwrap()
                    .expect("members are expressible");
                assert_eq!(e.word.eval(&gens), p, "round trip for {:?}", p);
            }
        }
    }

    #[test]
    fn express_examples() {
        let spec = z3_spec();
        let gens = spec.generators(budget()).unwrap();
        let y = spec.target.alphabet.parse_word("y").unwrap();
        let x = spec.x_alphabet.parse_word("x").unwrap();

        let p = PairElement { u: x, v: y.clone() };
        let e = spec.express(&p, &gens, budget()).unwrap().unwrap();
        assert_eq!(e.word.len(), 1);
        assert_eq!(e.kernel_count, 0);

        let p = PairElement { u: Word::empty(), v: y.pow(3) };
        let e = spec.express(&p, &gens, budget()).unwrap().unwrap();
        assert_eq!(e.word.len(), 1);
        assert_eq!(e.kernel_count, 1);

        let p = PairElement { u: Word::empty(), v: y.pow(6) };
        let e = spec.express(&p, &gens, budget()).unwrap().unwrap();
        assert_eq!(e.kernel_count, 2);
        assert_eq!(e.word.len(), 2);
        assert_eq!(e.word.eval(&gens), p);
    }

    #[test]
    fn kernel_lower_bound_for_powers() {
        let spec = z3_spec();
        let gens = spec.generators(budget()).unwrap();
        let y = spec.target.alphabet.parse_word("y").unwrap();
        for k in 1..=2usize {
            let target = PairElement { u: Word::empty(), v: y.pow(3 * k as i64) };
            assert!(
                kernel_lower_bound_holds(&gens, &target, k, 8),
                "(1, y^{}) needs at least {k} kernel factors",
                3 * k
            );
            assert!(
                !kernel_lower_bound_holds(&gens, &target, k + 1, 8),
                "(1, y^{}) is a product of {k} kernel factors",
                3 * k
            );
        }
    }

    #[test]
    fn distortion_table_reflects_compression() {
        let spec = z3_spec();
        let gens = spec.generators(budget()).unwrap();
        let table = distortion_sample(&spec, &gens, 6, budget(), 2_000_000).unwrap();
        // (1, y^3) has pair length 3 but generator length 1: compression.
        let y3 = PairElement {
            u: Word::empty(),
            v: spec.target.alphabet.parse_word("y y y").unwrap(),
        };
        let (_, d) = table.members.iter().find(|(m, _)| *m == y3).unwrap();
        assert_eq!(*d, 1);
        // (x^3, 1) conversely needs four generators.
        let x3 = PairElement {
            u: spec.x_alphabet.parse_word("x x x").unwrap(),
            v: Word::empty(),
        };
        let (_, d) = table.members.iter().find(|(m, _)| *m == x3).unwrap();
        assert_eq!(*d, 4);
        for r in &table.rows {
            assert!(r.max_gen_length <= r.express_upper.max(r.max_gen_length));
        }
    }

    #[test]
    fn free_target_distortion_is_linear() {
        let target = GroupPresentation::from_texts(&["y"], &[], "f1").unwrap();
        let y = target.alphabet.parse_word("y").unwrap();
        let spec = EqualizerSpec::new(
            target,
            &["x"],
            vec![y.clone()],
            vec![y],
            vec![Alphabet::from_names(["x"]).unwrap().parse_word("x").unwrap()],
        )
        .unwrap();
        let gens = spec.generators(budget()).unwrap();
        let table = distortion_sample(&spec, &gens, 4, budget(), 500_000).unwrap();
        for r in &table.rows {
            assert!(r.max_gen_length <= r.n, "d(n) <= n in the free case");
        }
    }
}
