//! Simple arrangements of x-monotone pseudolines, encoded as wiring diagrams.
//!
//! A diagram on `n` wires is a sequence of adjacent track swaps. Track 1 is
//! the topmost track and a swap at position `p` exchanges the wires on tracks
//! `p` and `p + 1`. Wire labels `1..=n` are the top-to-bottom order at the
//! left end, so a valid diagram crosses every pair exactly once and leaves the
//! wires in reversed order.
//!
//! Two swap words describe the same arrangement iff they are related by
//! exchanging adjacent swaps whose positions differ by at least two. The
//! canonical representative of such a commutation class is its
//! lexicographically least word.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ArrangementError, ParseError};

/// Largest number of wires a diagram may carry; positions are stored as `u8`.
pub const MAX_LINES: usize = 255;

/// A validated, immutable wiring diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WiringDiagram {
    n: usize,
    swaps: Vec<u8>,
}

/// Number of crossings in a simple arrangement of `n` pseudolines.
pub const fn crossing_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl WiringDiagram {
    /// Validates a swap word on `n` wires. Positions are 1-based.
    pub fn new(n: usize, swaps: &[usize]) -> Result<Self, ArrangementError> {
        if n < 2 {
            return Err(ArrangementError::TooFewLines(n));
        }
        if n > MAX_LINES {
            return Err(ArrangementError::TooManyLines(n));
        }
        let expected = crossing_count(n);
        if swaps.len() != expected {
            return Err(ArrangementError::WrongSwapCount {
                expected,
                found: swaps.len(),
            });
        }
        let mut tracks: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(expected);
        for (step, &p) in swaps.iter().enumerate() {
            if p == 0 || p >= n {
                return Err(ArrangementError::PositionOutOfRange {
                    step: step + 1,
                    position: p,
                    n,
                });
            }
            let (upper, lower) = (tracks[p - 1], tracks[p]);
            if upper > lower {
                return Err(ArrangementError::RepeatedCrossing {
                    step: step + 1,
                    lines: (lower, upper),
                });
            }
            tracks.swap(p - 1, p);
            word.push(p as u8);
        }
        Ok(Self { n, swaps: word })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The 1-based swap positions, left to right.
    pub fn swaps(&self) -> &[u8] {
        &self.swaps
    }

    pub fn swap_positions(&self) -> Vec<usize> {
        self.swaps.iter().map(|&p| p as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Wire labels on tracks `1..=n` after every swap, starting with the identity.
    pub fn track_history(&self) -> Vec<Vec<usize>> {
        let mut tracks: Vec<usize> = (1..=self.n).collect();
        let mut out = Vec::with_capacity(self.swaps.len() + 1);
        out.push(tracks.clone());
        for &p in &self.swaps {
            tracks.swap(p as usize - 1, p as usize);
            out.push(tracks.clone());
        }
        out
    }

    /// The pair of wire labels `(upper, lower)` crossing at each step.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let mut tracks: Vec<usize> = (1..=self.n).collect();
        self.swaps
            .iter()
            .map(|&p| {
                let p = p as usize;
                let pair = (tracks[p - 1], tracks[p]);
                tracks.swap(p - 1, p);
                pair
            })
            .collect()
    }

    /// Lexicographically least word of the commutation class.
    pub fn canonicalize(&self) -> Self {
        Self {
            n: self.n,
            swaps: lex_least_word(&self.swaps),
        }
    }

    pub fn is_canonical(&self) -> bool {
        is_lex_normal(&self.swaps)
    }

    /// Mirror about a vertical axis: the word is reversed, positions kept.
    pub fn reflect_horizontal(&self) -> Self {
        let mut swaps = self.swaps.clone();
        swaps.reverse();
        Self { n: self.n, swaps }
    }

    /// Top-bottom mirror: position `p` becomes `n - p`.
    pub fn reflect_vertical(&self) -> Self {
        let n = self.n as u8;
        Self {
            n: self.n,
            swaps: self.swaps.iter().map(|&p| n - p).collect(),
        }
    }

    /// Canonical forms of the four images under the horizontal/vertical mirror group.
    pub fn symmetry_orbit(&self) -> [WiringDiagram; 4] {
        let h = self.reflect_horizontal();
        let v = self.reflect_vertical();
        let hv = h.reflect_vertical();
        [
            self.canonicalize(),
            h.canonicalize(),
            v.canonicalize(),
            hv.canonicalize(),
        ]
    }

    /// Least canonical word over the symmetry orbit.
    pub fn symmetry_representative(&self) -> WiringDiagram {
        let [a, b, c, d] = self.symmetry_orbit();
        a.min(b).min(c).min(d)
    }

    /// Plain-text encoding: `n` on the first line, the positions on the second.
    pub fn to_text(&self) -> String {
        format!("{}\n{}\n", self.n, self.word_string())
    }

    /// Space-separated swap positions.
    pub fn word_string(&self) -> String {
        let mut s = String::with_capacity(self.swaps.len() * 3);
        for (i, p) in self.swaps.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&p.to_string());
        }
        s
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: [{}]", self.n, self.word_string())
    }
}

impl FromStr for WiringDiagram {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut content = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n_line, n_text) = content.next().ok_or(ParseError::UnexpectedEof { what: "line count" })?;
        let n: usize = n_text.parse().map_err(|_| ParseError::Syntax {
            line: n_line,
            message: format!("expected a line count, found `{n_text}`"),
        })?;
        let (w_line, w_text) = match content.next() {
            Some(x) => x,
            // n = 1 would have an empty word, but it is rejected anyway.
            None if n < 2 => (n_line, ""),
            None => return Err(ParseError::UnexpectedEof { what: "swap word" }),
        };
        let swaps = w_text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| ParseError::Syntax {
                    line: w_line,
                    message: format!("expected a swap position, found `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some((line, extra)) = content.next() {
            return Err(ParseError::Syntax {
                line,
                message: format!("unexpected trailing content `{extra}`"),
            });
        }
        WiringDiagram::new(n, &swaps).map_err(|source| ParseError::Invalid { line: w_line, source })
    }
}

/// Whether appending `p` to a lex-least word keeps it lex-least.
///
/// A word is lex-least in its class iff no letter `p` can be commuted left
/// past a larger letter. Since every prefix of a lex-least word is lex-least,
/// only the maximal trailing run of letters commuting with `p` needs checking.
#[inline]
fn can_append(word: &[u8], p: u8) -> bool {
    for &q in word.iter().rev() {
        if q.abs_diff(p) < 2 {
            return true;
        }
        if q > p {
            return false;
        }
    }
    true
}

fn is_lex_normal(word: &[u8]) -> bool {
    (0..word.len()).all(|i| can_append(&word[..i], word[i]))
}

/// Greedy lex-least normal form of a trace: repeatedly emit the smallest
/// letter that commutes with every letter still in front of it.
fn lex_least_word(word: &[u8]) -> Vec<u8> {
    let mut rest: Vec<u8> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<(u8, usize)> = None;
        for i in 0..rest.len() {
            let p = rest[i];
            if best.is_some_and(|(b, _)| b <= p) {
                continue;
            }
            if rest[..i].iter().all(|&q| q.abs_diff(p) >= 2) {
                best = Some((p, i));
            }
        }
        let (p, i) = best.expect("first letter is always movable");
        out.push(p);
        rest.remove(i);
    }
    out
}

/// Limits for long enumerations.
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationBudget {
    pub max_count: Option<u64>,
    pub deadline: Option<Instant>,
}

impl EnumerationBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

struct Dfs<'a, V> {
    n: usize,
    tracks: Vec<u8>,
    diagram: WiringDiagram,
    visitor: &'a mut V,
    count: u64,
    budget: EnumerationBudget,
}

impl<V: FnMut(&WiringDiagram)> Dfs<'_, V> {
    fn run(&mut self) -> Result<(), ArrangementError> {
        if self.diagram.swaps.len() == crossing_count(self.n) {
            self.count += 1;
            if let Some(max) = self.budget.max_count {
                if self.count > max {
                    return Err(ArrangementError::ResourceLimit(format!("more than {max} arrangements")));
                }
            }
            if self.count.is_multiple_of(4096) {
                if let Some(deadline) = self.budget.deadline {
                    if Instant::now() > deadline {
                        return Err(ArrangementError::ResourceLimit(format!(
                            "deadline reached after {} arrangements",
                            self.count
                        )));
                    }
                }
            }
            (self.visitor)(&self.diagram);
            return Ok(());
        }
        for p in 1..self.n {
            if self.tracks[p - 1] > self.tracks[p] {
                continue;
            }
            let p8 = p as u8;
            if !can_append(&self.diagram.swaps, p8) {
                continue;
            }
            self.tracks.swap(p - 1, p);
            self.diagram.swaps.push(p8);
            let r = self.run();
            self.diagram.swaps.pop();
            self.tracks.swap(p - 1, p);
            r?;
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<(), ArrangementError> {
    if n < 2 {
        Err(ArrangementError::TooFewLines(n))
    } else if n > MAX_LINES {
        Err(ArrangementError::TooManyLines(n))
    } else {
        Ok(())
    }
}

fn enumerate_from<V: FnMut(&WiringDiagram)>(
    n: usize,
    prefix: &[u8],
    budget: EnumerationBudget,
    visitor: &mut V,
) -> Result<u64, ArrangementError> {
    let mut tracks: Vec<u8> = (1..=n as u8).collect();
    for &p in prefix {
        tracks.swap(p as usize - 1, p as usize);
    }
    let mut swaps = Vec::with_capacity(crossing_count(n));
    swaps.extend_from_slice(prefix);
    let mut dfs = Dfs {
        n,
        tracks,
        diagram: WiringDiagram { n, swaps },
        visitor,
        count: 0,
        budget,
    };
    dfs.run()?;
    Ok(dfs.count)
}

/// Visits the canonical word of every arrangement of `n` pseudolines, in
/// lexicographic order, and returns how many there are.
pub fn enumerate<V: FnMut(&WiringDiagram)>(n: usize, mut visitor: V) -> Result<u64, ArrangementError> {
    enumerate_with_budget(n, EnumerationBudget::unlimited(), &mut visitor)
}

pub fn enumerate_with_budget<V: FnMut(&WiringDiagram)>(
    n: usize,
    budget: EnumerationBudget,
    visitor: &mut V,
) -> Result<u64, ArrangementError> {
    check_n(n)?;
    enumerate_from(n, &[], budget, visitor)
}

/// Canonical prefixes of length `depth` (or shorter, when the word is complete).
pub fn canonical_prefixes(n: usize, depth: usize) -> Result<Vec<Vec<u8>>, ArrangementError> {
    check_n(n)?;
    let depth = depth.min(crossing_count(n));
    let mut out = Vec::new();
    let mut word = Vec::new();
    let mut tracks: Vec<u8> = (1..=n as u8).collect();
    fn rec(n: usize, depth: usize, word: &mut Vec<u8>, tracks: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if word.len() == depth {
            out.push(word.clone());
            return;
        }
        for p in 1..n {
            if tracks[p - 1] > tracks[p] || !can_append(word, p as u8) {
                continue;
            }
            tracks.swap(p - 1, p);
            word.push(p as u8);
            rec(n, depth, word, tracks, out);
            word.pop();
            tracks.swap(p - 1, p);
        }
    }
    rec(n, depth, &mut word, &mut tracks, &mut out);
    Ok(out)
}

/// Parallel enumeration split on the first `split_depth` swaps. The visitor
/// is called concurrently and in no particular order.
pub fn enumerate_parallel<V>(
    n: usize,
    split_depth: usize,
    budget: EnumerationBudget,
    visitor: V,
) -> Result<u64, ArrangementError>
where
    V: Fn(&WiringDiagram) + Sync,
{
    let prefixes = canonical_prefixes(n, split_depth)?;
    let counts = prefixes
        .par_iter()
        .map(|prefix| {
            let mut local = |wd: &WiringDiagram| visitor(wd);
            enumerate_from(n, prefix, budget, &mut local)
        })
        .collect::<Result<Vec<u64>, _>>()?;
    let total: u64 = counts.iter().sum();
    if let Some(max) = budget.max_count {
        if total > max {
            return Err(ArrangementError::ResourceLimit(format!("more than {max} arrangements")));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet, VecDeque};

    /// All reduced words of the reversal on `n` wires, by brute force.
    fn all_words(n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        fn rec(n: usize, w: &mut Vec<u8>, t: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if w.len() == crossing_count(n) {
                out.push(w.clone());
                return;
            }
            for p in 1..n {
                if t[p - 1] < t[p] {
                    t.swap(p - 1, p);
                    w.push(p as u8);
                    rec(n, w, t, out);
                    w.pop();
                    t.swap(p - 1, p);
                }
            }
        }
        rec(n, &mut Vec::new(), &mut (1..=n as u8).collect(), &mut out);
        out
    }

    /// Commutation class by breadth-first closure.
    fn class_of(word: &[u8]) -> BTreeSet<Vec<u8>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([word.to_vec()]);
        seen.insert(word.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                if w[i].abs_diff(w[i + 1]) >= 2 {
                    let mut v = w.clone();
                    v.swap(i, i + 1);
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    fn wd(n: usize, w: &[usize]) -> WiringDiagram {
        WiringDiagram::new(n, w).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(WiringDiagram::new(2, &[1]).is_ok());
        assert!(WiringDiagram::new(3, &[1, 2, 1]).is_ok());
        assert_eq!(
            WiringDiagram::new(3, &[1, 1, 2]),
            Err(ArrangementError::RepeatedCrossing { step: 2, lines: (1, 2) })
        );
        assert!(matches!(
            WiringDiagram::new(3, &[1, 2]),
            Err(ArrangementError::WrongSwapCount { expected: 3, found: 2 })
        ));
        assert!(matches!(
            WiringDiagram::new(3, &[1, 3, 1]),
            Err(ArrangementError::PositionOutOfRange { step: 2, .. })
        ));
        assert_eq!(WiringDiagram::new(1, &[]), Err(ArrangementError::TooFewLines(1)));
    }

    #[test]
    fn valid_words_reverse_the_wires() {
        for n in 2..=5 {
            for w in all_words(n) {
                let d = WiringDiagram { n, swaps: w };
                let last = d.track_history().pop().unwrap();
                assert_eq!(last, (1..=n).rev().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(wd(3, &[2, 1, 2]).canonicalize().swap_positions(), vec![2, 1, 2]);
        // brute-force closure agrees with the frozen value
        let cls = class_of(&[3, 1, 2, 1, 3, 2]);
        assert_eq!(cls.iter().next().unwrap(), &vec![1, 3, 2, 1, 3, 2]);
        assert_eq!(
            wd(4, &[3, 1, 2, 1, 3, 2]).canonicalize().swap_positions(),
            vec![1, 3, 2, 1, 3, 2]
        );
    }

    #[test]
    fn canonical_form_is_class_minimum_exhaustively() {
        for n in 2..=5 {
            for w in all_words(n) {
                let cls = class_of(&w);
                let least = cls.iter().next().unwrap();
                let d = WiringDiagram { n, swaps: w.clone() };
                let c = d.canonicalize();
                assert_eq!(&c.swaps, least);
                assert_eq!(c.canonicalize(), c);
                assert!(c.is_canonical());
                assert_eq!(d.is_canonical(), &w == least);
            }
        }
    }

    #[test]
    fn reflections_are_involutions_and_preserve_classes() {
        for n in 2..=5 {
            for w in all_words(n) {
                let d = WiringDiagram { n, swaps: w };
                assert_eq!(d.reflect_horizontal().reflect_horizontal(), d);
                assert_eq!(d.reflect_vertical().reflect_vertical(), d);
                let moved = d.canonicalize();
                assert_eq!(
                    d.reflect_horizontal().canonicalize(),
                    moved.reflect_horizontal().canonicalize()
                );
                assert_eq!(
                    d.reflect_vertical().canonicalize(),
                    moved.reflect_vertical().canonicalize()
                );
                assert!(WiringDiagram::new(n, &d.reflect_vertical().swap_positions()).is_ok());
                assert!(WiringDiagram::new(n, &d.reflect_horizontal().swap_positions()).is_ok());
            }
        }
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(wd(3, &[1, 2, 1]).reflect_horizontal().swap_positions(), vec![1, 2, 1]);
        assert_eq!(
            wd(4, &[1, 3, 2, 1, 3, 2]).reflect_horizontal().swap_positions(),
            vec![2, 3, 1, 2, 3, 1]
        );
        assert_eq!(wd(3, &[1, 2, 1]).reflect_vertical().swap_positions(), vec![2, 1, 2]);
        assert_eq!(wd(2, &[1]).reflect_vertical().swap_positions(), vec![1]);
    }

    #[test]
    fn enumeration_matches_class_count_and_order() {
        for n in 2..=5 {
            let classes: BTreeSet<Vec<u8>> = all_words(n)
                .into_iter()
                .map(|w| class_of(&w).into_iter().next().unwrap())
                .collect();
            let mut seen = Vec::new();
            let count = enumerate(n, |d| seen.push(d.swaps.clone())).unwrap();
            assert_eq!(count as usize, classes.len());
            assert_eq!(seen, classes.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn enumeration_counts_small() {
        let counts: Vec<u64> = (2..=6).map(|n| enumerate(n, |_| {}).unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 8, 62, 908]);
    }

    #[test]
    fn parallel_enumeration_agrees() {
        use std::sync::Mutex;
        let seen = Mutex::new(HashSet::new());
        let count = enumerate_parallel(6, 3, EnumerationBudget::unlimited(), |d| {
            seen.lock().unwrap().insert(d.clone());
        })
        .unwrap();
        assert_eq!(count, 908);
        assert_eq!(seen.lock().unwrap().len(), 908);
    }

    #[test]
    fn budget_is_enforced() {
        let budget = EnumerationBudget {
            max_count: Some(10),
            deadline: None,
        };
        let r = enumerate_with_budget(5, budget, &mut |_| {});
        assert!(matches!(r, Err(ArrangementError::ResourceLimit(_))));
    }

    #[test]
    fn text_format() {
        let d: WiringDiagram = "# comment\n4\n1 3 2 1 3 2\n".parse().unwrap();
        assert_eq!(d.to_text(), "4\n1 3 2 1 3 2\n");
        assert!(matches!(
            "3\n1 x 1\n".parse::<WiringDiagram>(),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            "3\n1 1 2\n".parse::<WiringDiagram>(),
            Err(ParseError::Invalid { line: 2, .. })
        ));
        assert!(matches!(
            "1\n".parse::<WiringDiagram>(),
            Err(ParseError::Invalid { .. })
        ));
        assert!(matches!(
            "3\n".parse::<WiringDiagram>(),
            Err(ParseError::UnexpectedEof { .. })
        ));
    }
}
