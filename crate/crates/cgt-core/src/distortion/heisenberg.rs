//! The discrete Heisenberg group `H^3 = <a,b,c | [a,b]=c, ca=ac, cb=bc>`:
//! its center is quadratically distorted, witnessed by `c^{n^2} = [a^n, b^n]`.
//! Geodesics come from breadth-first search over the faithful unitriangular
//! matrix model; trivialities from certificates over the presentation.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::presentation::GroupPresentation;
use crate::word_problem::{
    heisenberg_commutator_certificate, verify_certificate, TrivialityCertificate,
    WordProblemError,
};
use crate::words::Word;

pub fn presentation() -> GroupPresentation {
    GroupPresentation::from_texts(
        &["a", "b", "c"],
        &["a b a^-1 b^-1 c^-1", "c a c^-1 a^-1", "c b c^-1 b^-1"],
        "heisenberg",
    )
    .expect("fixed presentation parses")
}

/// Group element as `(x, y, z)` for the unitriangular matrix with upper row
/// `(1, x, z)` and middle row `(0, 1, y)`; `a = (1,0,0)`, `b = (0,1,0)`,
/// `c = (0,0,1)` satisfy the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point {
    pub const ID: Point = Point { x: 0, y: 0, z: 0 };

    pub fn mul(self, o: Point) -> Point {
        Point { x: self.x + o.x, y: self.y + o.y, z: self.z + o.z + self.x * o.y }
    }
}

const GENS: [Point; 6] = [
    Point { x: 1, y: 0, z: 0 },
    Point { x: -1, y: 0, z: 0 },
    Point { x: 0, y: 1, z: 0 },
    Point { x: 0, y: -1, z: 0 },
    Point { x: 0, y: 0, z: 1 },
    Point { x: 0, y: 0, z: -1 },
];

/// Exact geodesic length of `target` in the generators `a, b, c`, or `None`
/// if it is farther than `max_radius`.
pub fn geodesic_length(target: Point, max_radius: usize) -> Option<usize> {
    if target == Point::ID {
        return Some(0);
    }
    let mut dist: HashMap<Point, usize> = HashMap::new();
    dist.insert(Point::ID, 0);
    let mut queue = VecDeque::new();
    queue.push_back(Point::ID);
    while let Some(at) = queue.pop_front() {
        let d = dist[&at];
        if d == max_radius {
            continue;
        }
        for g in GENS {
            let next = at.mul(g);
            if dist.contains_key(&next) {
                continue;
            }
            if next == target {
                return Some(d + 1);
            }
            dist.insert(next, d + 1);
            queue.push_back(next);
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct DemoRow {
    pub n: u32,
    /// `|c^{n^2}|` in the word metric, exact.
    pub geodesic: usize,
    /// The commutator bound `4n`.
    pub bound_4n: usize,
    /// Certificate that `c^{n^2} [a^n, b^n]^-1 = 1` over the presentation.
    pub certificate: TrivialityCertificate,
    pub certified_word: Word,
}

/// Quadratic-distortion data points: for each `n <= n_max`, the verified
/// identity `c^{n^2} = [a^n, b^n]` and the exact geodesic length of
/// `c^{n^2}`, which the identity caps at `4n`.
pub fn demo(n_max: u32) -> Result<Vec<DemoRow>, WordProblemError> {
    let p = presentation();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let (w, certificate) = heisenberg_commutator_certificate(&p, n)?;
        verify_certificate(&certificate, &p, &w, None)
            .map_err(|e| WordProblemError::Construction(e.to_string()))?;
        let target = Point { x: 0, y: 0, z: (n * n) as i64 };
        let geodesic = geodesic_length(target, (4 * n) as usize)
            .ok_or_else(|| WordProblemError::Construction("geodesic not within 4n".into()))?;
        rows.push(DemoRow {
            n,
            geodesic,
            bound_4n: (4 * n) as usize,
            certificate,
            certified_word: w,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_problem::{area_oracle, AreaBudget};

    #[test]
    fn matrix_model_satisfies_the_relations() {
        let a = GENS[0];
        let b = GENS[2];
        let c = GENS[4];
        let com = a.mul(b).mul(GENS[1]).mul(GENS[3]);
        assert_eq!(com, c);
        assert_eq!(c.mul(a), a.mul(c));
        assert_eq!(c.mul(b), b.mul(c));
    }

    #[test]
    fn central_powers_are_quadratically_short() {
        // |c^{n^2}| <= 4n; c itself is a generator.
        assert_eq!(geodesic_length(Point { x: 0, y: 0, z: 0 }, 4), Some(0));
        assert_eq!(geodesic_length(Point { x: 0, y: 0, z: 1 }, 4), Some(1));
        let d4 = geodesic_length(Point { x: 0, y: 0, z: 4 }, 8).unwrap();
        assert!(d4 <= 8);
        let d9 = geodesic_length(Point { x: 0, y: 0, z: 9 }, 12).unwrap();
        assert!(d9 <= 12);
    }

    #[test]
    fn demo_rows_verify() {
        let rows = demo(2).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(row.geodesic <= row.bound_4n);
        }
    }

    #[test]
    fn small_case_matches_the_exact_oracle() {
        // c [a,b]^-1 is a single relator: area 1.
        let p = presentation();
        let w = p.alphabet.parse_word("c b a b^-1 a^-1").unwrap();
        let res = area_oracle(&p, &w, AreaBudget { max_area: 3, max_visited: 100_000 }).unwrap();
        assert_eq!(res.area, Some(1));
    }
}
