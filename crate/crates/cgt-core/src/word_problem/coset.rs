//! Coset enumeration over the trivial subgroup. When it closes within the
//! coset cap, the table is the full Cayley graph of a finite group, which
//! decides the word problem exactly.

use std::collections::VecDeque;

use crate::presentation::GroupPresentation;
use crate::words::{Letter, Word};

#[derive(Debug, Clone)]
pub struct CosetTable {
    /// `table[coset][2*gen + inv]`, entries are live coset indices.
    table: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Runs the enumeration; `None` when it does not close within
    /// `max_cosets` live cosets (the group may be infinite or just large).
    pub fn enumerate(p: &GroupPresentation, max_cosets: usize) -> Option<CosetTable> {
        Enumerator::new(p, max_cosets).run()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn letter_index(l: Letter) -> usize {
        2 * l.gen.index() + l.inv as usize
    }

    pub fn trace(&self, from: usize, w: &Word) -> usize {
        let mut at = from;
        for &l in w.letters() {
            at = self.table[at][Self::letter_index(l)];
        }
        at
    }

    /// Whether `w` equals the identity in the enumerated group.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.trace(0, w) == 0
    }
}

struct Enumerator {
    /// Partial table over raw coset ids; `usize::MAX` marks undefined.
    table: Vec<Vec<usize>>,
    rep: Vec<usize>,
    relators: Vec<Vec<Letter>>,
    n_letters: usize,
    max_cosets: usize,
    merge_queue: VecDeque<(usize, usize)>,
}

const UNDEF: usize = usize::MAX;

impl Enumerator {
    fn new(p: &GroupPresentation, max_cosets: usize) -> Self {
        Enumerator {
            table: vec![vec![UNDEF; 2 * p.alphabet.len()]],
            rep: vec![0],
            relators: p.relators.iter().map(|r| r.letters().to_vec()).collect(),
            n_letters: 2 * p.alphabet.len(),
            max_cosets,
            merge_queue: VecDeque::new(),
        }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.rep[c] != c {
            let up = self.rep[self.rep[c]];
            self.rep[c] = up;
            c = up;
        }
        c
    }

    fn get(&mut self, c: usize, l: usize) -> usize {
        let c = self.find(c);
        let d = self.table[c][l];
        if d == UNDEF { UNDEF } else { self.find(d) }
    }

    fn inverse_letter(l: usize) -> usize {
        l ^ 1
    }

    fn set(&mut self, c: usize, l: usize, d: usize) {
        let c = self.find(c);
        let d = self.find(d);
        let existing = self.get(c, l);
        if existing == UNDEF {
            self.table[c][l] = d;
            let back = self.get(d, Self::inverse_letter(l));
            if back == UNDEF {
                let li = Self::inverse_letter(l);
                let d2 = self.find(d);
                self.table[d2][li] = c;
            } else if back != c {
                self.merge_queue.push_back((back, c));
            }
        } else if existing != d {
            self.merge_queue.push_back((existing, d));
        }
    }

    fn process_merges(&mut self) {
        while let Some((a, b)) = self.merge_queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.rep[drop] = keep;
            for l in 0..self.n_letters {
                let d = self.table[drop][l];
                if d != UNDEF {
                    let d = self.find(d);
                    self.set(keep, l, d);
                }
            }
        }
    }

    fn define(&mut self, c: usize, l: usize) -> Option<usize> {
        if self.live_count() >= self.max_cosets {
            return None;
        }
        let fresh = self.table.len();
        self.table.push(vec![UNDEF; self.n_letters]);
        self.rep.push(fresh);
        self.set(c, l, fresh);
        self.process_merges();
        Some(self.find(fresh))
    }

    fn live_count(&self) -> usize {
        (0..self.rep.len()).filter(|&c| self.rep[c] == c).count()
    }

    /// Scan-and-fill the relator from `c`, defining cosets as needed; the
    /// closing edge may force coincidences.
    fn scan_fill(&mut self, c: usize, ri: usize) -> Option<()> {
        let letters = self.relators[ri].clone();
        let mut at = self.find(c);
        for (i, &l) in letters.iter().enumerate() {
            let li = CosetTable::letter_index(l);
            let next = self.get(at, li);
            if next != UNDEF {
                at = next;
                continue;
            }
            if i + 1 == letters.len() {
                // Closing edge: deduce at . l = c.
                let c = self.find(c);
                self.set(at, li, c);
                self.process_merges();
                return Some(());
            }
            at = self.define(at, li)?;
        }
        let c = self.find(c);
        let at = self.find(at);
        if at != c {
            self.merge_queue.push_back((at, c));
            self.process_merges();
        }
        Some(())
    }

    fn run(mut self) -> Option<CosetTable> {
        let mut cursor = 0usize;
        while cursor < self.table.len() {
            if self.find(cursor) != cursor {
                cursor += 1;
                continue;
            }
            for l in 0..self.n_letters {
                if self.find(cursor) != cursor {
                    break;
                }
                if self.get(cursor, l) == UNDEF {
                    self.define(cursor, l)?;
                }
            }
            if self.find(cursor) == cursor {
                for ri in 0..self.relators.len() {
                    if self.find(cursor) != cursor {
                        break;
                    }
                    self.scan_fill(cursor, ri)?;
                }
            }
            cursor += 1;
        }
        // Compact to live cosets, putting the subgroup coset first.
        let mut live: Vec<usize> = Vec::new();
        let mut index = vec![UNDEF; self.table.len()];
        let root = self.find(0);
        live.push(root);
        index[root] = 0;
        for c in 0..self.table.len() {
            if self.find(c) == c && index[c] == UNDEF {
                index[c] = live.len();
                live.push(c);
            }
        }
        let mut table = Vec::with_capacity(live.len());
        for &c in &live {
            let mut row = Vec::with_capacity(self.n_letters);
            for l in 0..self.n_letters {
                let d = self.get(c, l);
                if d == UNDEF {
                    return None;
                }
                row.push(index[d]);
            }
            table.push(row);
        }
        Some(CosetTable { table })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::GroupPresentation;

    #[test]
    fn cyclic_three() {
        let p = GroupPresentation::from_texts(&["y"], &["y y y"], "z3").unwrap();
        let t = CosetTable::enumerate(&p, 100).unwrap();
        assert_eq!(t.order(), 3);
        assert!(t.is_trivial(&p.alphabet.parse_word("y y y y y y").unwrap()));
        assert!(!t.is_trivial(&p.alphabet.parse_word("y").unwrap()));
        assert!(!t.is_trivial(&p.alphabet.parse_word("y y^-1 y").unwrap()));
    }

    #[test]
    fn symmetric_group_s3() {
        let p = GroupPresentation::from_texts(&["x", "y"], &["x x", "y y y", "x y x y"], "s3")
            .unwrap();
        let t = CosetTable::enumerate(&p, 200).unwrap();
        assert_eq!(t.order(), 6);
        // x y x = y^-1 holds in S3.
        assert!(t.is_trivial(&p.alphabet.parse_word("x y x y").unwrap()));
        assert!(!t.is_trivial(&p.alphabet.parse_word("x y").unwrap()));
    }

    #[test]
    fn alternating_group_a4() {
        let p = GroupPresentation::from_texts(&["x", "y"], &["x x", "y y y", "x y x y x y"], "a4")
            .unwrap();
        let t = CosetTable::enumerate(&p, 200).unwrap();
        assert_eq!(t.order(), 12);
    }

    #[test]
    fn infinite_groups_hit_the_cap() {
        let free = GroupPresentation::from_texts(&["a"], &[], "z").unwrap();
        assert!(CosetTable::enumerate(&free, 50).is_none());
        let zsq =
            GroupPresentation::from_texts(&["a", "b"], &["a b a^-1 b^-1"], "zsq").unwrap();
        assert!(CosetTable::enumerate(&zsq, 500).is_none());
    }
}
