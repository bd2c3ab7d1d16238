//! Executable congruence-freeness: unit contexts for nonzero elements, the
//! collapse procedure that drives any pair of distinct elements to `(1, 0)`,
//! and an independent checker for the resulting traces.
//!
//! A trace is a chain of pairs in which every pair is related by the
//! congruence generated by the first one. Each step either multiplies both
//! sides by the same word or replaces sides by their normal forms.

use std::fmt;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::presentation::{Letter, Presentation, Word, WordError};
use crate::rewrite::Rewriter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("identical inputs")]
    Identical,
    #[error("{0} is not a normal form")]
    NotNormal(Word),
    #[error("the zero has no unit context")]
    Zero,
    #[error("coloring violates condition C{0}")]
    Coloring(usize),
    #[error("collapse made no progress on ({0}, {1})")]
    NoProgress(Word, Word),
}

/// Structural normal-form test: either the lone zero, or no zero and none
/// of the factors `s s`, `x y`, `x s y`.
fn is_structural_normal_form(w: &Word) -> bool {
    let l = w.letters();
    if w.is_zero() {
        return true;
    }
    if w.contains_z() {
        return false;
    }
    let pair_ok = l
        .windows(2)
        .all(|p| !(p[0].is_s() && p[1].is_s()) && !(p[0].is_x() && p[1].is_y()));
    let triple_ok = l
        .windows(3)
        .all(|t| !(t[0].is_x() && t[1].is_s() && t[2].is_y()));
    pair_ok && triple_ok
}

/// Splits a nonzero normal form as `P Q`, where `P` has no `x` and `Q` is
/// empty or starts with `x` and has no `y`.
pub fn decompose(w: &Word) -> Result<(Word, Word), WitnessError> {
    if w.is_zero() {
        return Err(WitnessError::Zero);
    }
    if !is_structural_normal_form(w) {
        return Err(WitnessError::NotNormal(w.clone()));
    }
    let letters = w.letters();
    let split = letters
        .iter()
        .position(|l| l.is_x())
        .unwrap_or(letters.len());
    let (p, q) = letters.split_at(split);
    debug_assert!(!q.iter().any(|l| l.is_y()));
    Ok((Word::from(p), Word::from(q)))
}

fn need(value: Option<usize>, condition: usize) -> Result<usize, WitnessError> {
    value.ok_or(WitnessError::Coloring(condition))
}

/// Words `(a, b)` with `a w b = 1` in the monoid, for a nonzero normal form `w`.
///
/// `Q` is stripped from the right one `x_i` or `x_i s_j` block at a time,
/// then `P` from the left one `y_k` or `s_j y_k` block at a time; a final
/// lone `s_j` is wrapped as `x_1 s_j y_k`.
pub fn unit_context(w: &Word, p: &Presentation) -> Result<(Word, Word), WitnessError> {
    let (prefix, suffix) = decompose(w)?;
    if !w.letters().iter().all(|l| l.in_range(p.order())) {
        return Err(WitnessError::NotNormal(w.clone()));
    }
    let f = p.coloring();
    let mut right = Vec::new();
    let mut q = suffix.letters();
    while let Some(&last) = q.last() {
        match (q.len().checked_sub(2).map(|at| q[at]), last) {
            (_, Letter::X(i)) => {
                let k = need(f.first_y(i, 1, true), 1)?;
                right.extend([Letter::S(1), Letter::Y(k)]);
                q = &q[..q.len() - 1];
            }
            (Some(Letter::X(i)), Letter::S(j)) => {
                right.push(Letter::Y(need(f.first_y(i, j, true), 1)?));
                q = &q[..q.len() - 2];
            }
            _ => unreachable!("suffix of a normal form is a sequence of x or x s blocks"),
        }
    }

    let mut left_parts: Vec<Vec<Letter>> = Vec::new();
    let mut rest = prefix.letters();
    while !rest.is_empty() {
        match rest {
            [Letter::Y(k), ..] => {
                let i = need(f.first_x(1, *k, true), 2)?;
                left_parts.push(vec![Letter::X(i), Letter::S(1)]);
                rest = &rest[1..];
            }
            [Letter::S(j), Letter::Y(k), ..] => {
                left_parts.push(vec![Letter::X(need(f.first_x(*j, *k, true), 2)?)]);
                rest = &rest[2..];
            }
            [Letter::S(j)] => {
                left_parts.push(vec![Letter::X(1)]);
                right.push(Letter::Y(need(f.first_y(1, *j, true), 1)?));
                rest = &[];
            }
            _ => unreachable!("prefix of a normal form is a sequence of y or s y blocks"),
        }
    }
    let left: Vec<Letter> = left_parts.into_iter().rev().flatten().collect();
    Ok((Word::from(left), Word::from(right)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Generator,
    MultiplyLeft(Word),
    MultiplyRight(Word),
    Rewrite(Side),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Generator => f.write_str("GEN"),
            Move::MultiplyLeft(g) => write!(f, "LEFT {g}"),
            Move::MultiplyRight(g) => write!(f, "RIGHT {g}"),
            Move::Rewrite(side) => write!(f, "REWRITE {side}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep {
    pub left: Word,
    pub right: Word,
    pub mv: Move,
    /// Which case of the argument produced this step. Not serialized.
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTrace {
    pub steps: Vec<WitnessStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceParseError {
    #[error("line {line}: expected 4 tab-separated fields")]
    Fields { line: usize },
    #[error("line {line}: expected step number {expected}")]
    StepNumber { line: usize, expected: usize },
    #[error("line {line}: unknown move {text:?}")]
    Move { line: usize, text: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: WordError },
    #[error("empty trace")]
    Empty,
}

impl WitnessTrace {
    pub fn first(&self) -> (&Word, &Word) {
        let s = &self.steps[0];
        (&s.left, &s.right)
    }

    pub fn last(&self) -> (&Word, &Word) {
        let s = self.steps.last().expect("trace is nonempty");
        (&s.left, &s.right)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Parses the tab-separated trace format for a presentation of order `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self, TraceParseError> {
        let mut steps = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            let [number, mv, left, right] = fields[..] else {
                return Err(TraceParseError::Fields { line });
            };
            if number.trim().parse::<usize>().ok() != Some(steps.len()) {
                return Err(TraceParseError::StepNumber {
                    line,
                    expected: steps.len(),
                });
            }
            let word = |t: &str| {
                Word::parse(t, n).map_err(|source| TraceParseError::Word { line, source })
            };
            let bad_move = || TraceParseError::Move {
                line,
                text: mv.to_string(),
            };
            let mv = match mv.trim().split_once(' ') {
                None if mv.trim() == "GEN" => Move::Generator,
                Some(("LEFT", g)) => Move::MultiplyLeft(word(g)?),
                Some(("RIGHT", g)) => Move::MultiplyRight(word(g)?),
                Some(("REWRITE", side)) => Move::Rewrite(match side.trim() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    "both" => Side::Both,
                    _ => return Err(bad_move()),
                }),
                _ => return Err(bad_move()),
            };
            steps.push(WitnessStep {
                left: word(left)?,
                right: word(right)?,
                mv,
                note: String::new(),
            });
        }
        if steps.is_empty() {
            return Err(TraceParseError::Empty);
        }
        Ok(WitnessTrace { steps })
    }
}

impl fmt::Display for WitnessTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (no, s) in self.steps.iter().enumerate() {
            writeln!(f, "{no}\t{}\t{}\t{}", s.mv, s.left, s.right)?;
        }
        Ok(())
    }
}

fn is_terminal(u: &Word, v: &Word) -> bool {
    (u.is_empty() && v.is_zero()) || (u.is_zero() && v.is_empty())
}

/// Right end of a word containing `x`: `x_i` alone or `x_i s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    X(usize),
    XS(usize, usize),
}

fn right_end(w: &Word) -> End {
    match w.letters() {
        [.., Letter::X(i)] => End::X(*i),
        [.., Letter::X(i), Letter::S(j)] => End::XS(*i, *j),
        _ => unreachable!("normal form containing x ends in x or x s"),
    }
}

/// Left end of a word containing `y`: `y_k` alone or `s_j y_k`.
fn left_end(w: &Word) -> End {
    match w.letters() {
        [Letter::Y(k), ..] => End::X(*k),
        [Letter::S(j), Letter::Y(k), ..] => End::XS(*j, *k),
        _ => unreachable!("normal form containing y starts with y or s y"),
    }
}

struct Collapser<'a> {
    rw: Rewriter<'a>,
    steps: Vec<WitnessStep>,
}

impl Collapser<'_> {
    fn pair(&self) -> (Word, Word) {
        let s = self.steps.last().unwrap();
        (s.left.clone(), s.right.clone())
    }

    fn coloring(&self) -> &Coloring {
        self.rw.presentation().coloring()
    }

    fn push(&mut self, left: Word, right: Word, mv: Move, note: &str) {
        self.steps.push(WitnessStep {
            left,
            right,
            mv,
            note: note.to_string(),
        });
    }

    fn multiply_left(&mut self, g: Vec<Letter>, note: &str) {
        let g = Word::from(g);
        let (u, v) = self.pair();
        self.push(g.concat(&u), g.concat(&v), Move::MultiplyLeft(g), note);
    }

    fn multiply_right(&mut self, g: Vec<Letter>, note: &str) {
        let g = Word::from(g);
        let (u, v) = self.pair();
        self.push(u.concat(&g), v.concat(&g), Move::MultiplyRight(g), note);
    }

    fn rewrite(&mut self, note: &str) {
        let (u, v) = self.pair();
        let (nu, nv) = (self.rw.normal_form(&u), self.rw.normal_form(&v));
        let side = match (nu != u, nv != v) {
            (true, true) => Side::Both,
            (true, false) => Side::Left,
            (false, true) => Side::Right,
            (false, false) => return,
        };
        self.push(nu, nv, Move::Rewrite(side), note);
    }

    /// One round of the case analysis; leaves the pair rewritten.
    fn advance(&mut self, u: &Word, v: &Word) -> Result<(), WitnessError> {
        let f = self.coloring().clone();
        if u.is_zero() || v.is_zero() {
            let w = if u.is_zero() { v } else { u };
            let (a, b) = unit_context(w, self.rw.presentation())?;
            if !a.is_empty() {
                self.multiply_left(a.into_letters(), "zero vs nonzero: unit context");
            }
            if !b.is_empty() {
                self.multiply_right(b.into_letters(), "zero vs nonzero: unit context");
            }
            self.rewrite("zero vs nonzero: unit context");
            return Ok(());
        }

        let (ux, vx, uy, vy) = (
            u.contains_x(),
            v.contains_x(),
            u.contains_y(),
            v.contains_y(),
        );
        if ux && vx {
            let (g, note) = match (right_end(u), right_end(v)) {
                (End::XS(i, j), End::XS(p, q)) if (i, j) == (p, q) => (
                    vec![Letter::Y(need(f.first_y(i, j, true), 1)?)],
                    "both x: equal ends, C1",
                ),
                (End::XS(i, j), End::XS(p, q)) => (
                    vec![Letter::Y(need(f.separating_y((i, j), (p, q)), 5)?)],
                    "both x: distinct ends, C5",
                ),
                (End::X(i), End::X(p)) if i == p => (
                    vec![Letter::S(1), Letter::Y(need(f.first_y(i, 1, true), 1)?)],
                    "both x: equal ends, probe s1, C1",
                ),
                (End::X(i), End::X(p)) => (
                    vec![
                        Letter::S(1),
                        Letter::Y(need(f.separating_y((i, 1), (p, 1)), 5)?),
                    ],
                    "both x: distinct ends, probe s1, C5",
                ),
                (End::XS(i, j), End::X(_)) | (End::X(_), End::XS(i, j)) => (
                    vec![Letter::Y(need(f.first_y(i, j, true), 1)?)],
                    "both x: mixed ends, C1",
                ),
            };
            self.multiply_right(g, note);
        } else if uy && vy {
            let (g, note) = match (left_end(u), left_end(v)) {
                (End::XS(j, k), End::XS(q, l)) if (j, k) == (q, l) => (
                    vec![Letter::X(need(f.first_x(j, k, true), 2)?)],
                    "both y: equal ends, C2",
                ),
                (End::XS(j, k), End::XS(q, l)) => (
                    vec![Letter::X(need(f.separating_x((j, k), (q, l)), 6)?)],
                    "both y: distinct ends, C6",
                ),
                (End::X(k), End::X(l)) if k == l => (
                    vec![Letter::X(need(f.first_x(1, k, true), 2)?), Letter::S(1)],
                    "both y: equal ends, probe s1, C2",
                ),
                (End::X(k), End::X(l)) => (
                    vec![
                        Letter::X(need(f.separating_x((1, k), (1, l)), 6)?),
                        Letter::S(1),
                    ],
                    "both y: distinct ends, probe s1, C6",
                ),
                (End::XS(j, k), End::X(_)) | (End::X(_), End::XS(j, k)) => (
                    vec![Letter::X(need(f.first_x(j, k, true), 2)?)],
                    "both y: mixed ends, C2",
                ),
            };
            self.multiply_left(g, note);
        } else if ux || vx {
            let w = if ux { u } else { v };
            match right_end(w) {
                End::X(i) => self.multiply_right(vec![Letter::Y(i)], "one side x: x_i y_i = 0"),
                End::XS(i, j) => self.multiply_right(
                    vec![Letter::Y(need(f.first_y(i, j, false), 3)?)],
                    "one side x: C3",
                ),
            }
        } else if uy || vy {
            let w = if uy { u } else { v };
            match left_end(w) {
                End::X(k) => self.multiply_left(vec![Letter::X(k)], "one side y: x_k y_k = 0"),
                End::XS(j, k) => self.multiply_left(
                    vec![Letter::X(need(f.first_x(j, k, false), 4)?)],
                    "one side y: C4",
                ),
            }
        } else {
            let index = |w: &Word| match w.letters() {
                [] => None,
                [Letter::S(j)] => Some(*j),
                _ => unreachable!("x- and y-free normal forms are 1 or a single s"),
            };
            let k = match (index(u), index(v)) {
                (Some(i), Some(j)) => need(f.separating_y((1, i), (1, j)), 5)?,
                (Some(j), None) | (None, Some(j)) => need(f.first_y(1, j, true), 1)?,
                (None, None) => unreachable!("inputs are distinct"),
            };
            self.multiply_left(vec![Letter::X(1)], "s-letters: wrap x1 . y_k");
            self.multiply_right(vec![Letter::Y(k)], "s-letters: wrap x1 . y_k");
        }
        self.rewrite("normalize");
        Ok(())
    }
}

/// Builds a trace from the pair `(u, v)` of distinct normal forms to `(1, 0)`
/// or `(0, 1)`.
pub fn collapse(u: &Word, v: &Word, p: &Presentation) -> Result<WitnessTrace, WitnessError> {
    let rw = Rewriter::new(p);
    for w in [u, v] {
        if !w.letters().iter().all(|l| l.in_range(p.order())) || !rw.is_normal_form(w) {
            return Err(WitnessError::NotNormal(w.clone()));
        }
    }
    if u == v {
        return Err(WitnessError::Identical);
    }
    let mut c = Collapser {
        rw,
        steps: Vec::new(),
    };
    c.push(u.clone(), v.clone(), Move::Generator, "generator");
    let budget = 4 * (u.len() + v.len()) + 6;
    loop {
        let (a, b) = c.pair();
        if is_terminal(&a, &b) {
            break;
        }
        let before = c.steps.len();
        c.advance(&a, &b)?;
        let (na, nb) = c.pair();
        if c.steps.len() == before || c.steps.len() > budget + 8 || na == nb {
            return Err(WitnessError::NoProgress(na, nb));
        }
    }
    Ok(WitnessTrace { steps: c.steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Index of the first step that fails, if any. A missing terminal pair is
    /// reported at the last step.
    pub bad_step: Option<usize>,
    pub reason: String,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.bad_step.is_none()
    }

    fn reject(step: usize, reason: impl Into<String>) -> Self {
        Verdict {
            bad_step: Some(step),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bad_step {
            None => f.write_str("trace accepted"),
            Some(s) => write!(f, "trace rejected at step {s}: {}", self.reason),
        }
    }
}

/// Checks a trace using only normal forms and literal concatenation.
pub fn verify_trace(t: &WitnessTrace, p: &Presentation) -> Verdict {
    let rw = Rewriter::new(p);
    let nf = |w: &Word| rw.normal_form(w);
    let Some(first) = t.steps.first() else {
        return Verdict::reject(0, "empty trace");
    };
    if first.mv != Move::Generator {
        return Verdict::reject(0, "step 0 must be GEN");
    }
    for w in [&first.left, &first.right] {
        if !w.letters().iter().all(|l| l.in_range(p.order())) {
            return Verdict::reject(0, format!("{w} has letters outside the alphabet"));
        }
        if nf(w) != *w {
            return Verdict::reject(0, format!("{w} is not a normal form"));
        }
    }
    if first.left == first.right {
        return Verdict::reject(0, "generator pair is not distinct");
    }
    for (no, pair) in t.steps.windows(2).enumerate() {
        let (prev, cur) = (&pair[0], &pair[1]);
        let step = no + 1;
        let expected = match &cur.mv {
            Move::Generator => return Verdict::reject(step, "GEN only allowed at step 0"),
            Move::MultiplyLeft(g) => (g.concat(&prev.left), g.concat(&prev.right)),
            Move::MultiplyRight(g) => (prev.left.concat(g), prev.right.concat(g)),
            Move::Rewrite(side) => {
                let left = if matches!(side, Side::Left | Side::Both) {
                    nf(&prev.left)
                } else {
                    prev.left.clone()
                };
                let right = if matches!(side, Side::Right | Side::Both) {
                    nf(&prev.right)
                } else {
                    prev.right.clone()
                };
                (left, right)
            }
        };
        if (&cur.left, &cur.right) != (&expected.0, &expected.1) {
            return Verdict::reject(
                step,
                format!(
                    "{} does not yield ({}, {}); expected ({}, {})",
                    cur.mv, cur.left, cur.right, expected.0, expected.1
                ),
            );
        }
    }
    let last = t.steps.last().unwrap();
    if !is_terminal(&last.left, &last.right) {
        return Verdict::reject(
            t.steps.len() - 1,
            format!(
                "final pair ({}, {}) is not (1, 0) or (0, 1)",
                last.left, last.right
            ),
        );
    }
    Verdict {
        bad_step: None,
        reason: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::CayleyTable;

    fn pres(name: &str) -> Presentation {
        Presentation::for_table(&CayleyTable::builtin(name).unwrap()).unwrap()
    }

    fn w(p: &Presentation, text: &str) -> Word {
        p.parse_word(text).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let p = pres("trivial");
        let (a, b) = decompose(&w(&p, "y1 s1 x2 s1")).unwrap();
        assert_eq!(
            (a.to_string(), b.to_string()),
            ("y1 s1".into(), "x2 s1".into())
        );
        let (a, b) = decompose(&w(&p, "s1")).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("s1".into(), "1".into()));
        let (a, b) = decompose(&w(&p, "x1 x2")).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("1".into(), "x1 x2".into()));
        assert_eq!(decompose(&Word::zero()), Err(WitnessError::Zero));
        assert!(matches!(
            decompose(&w(&p, "x1 y1")),
            Err(WitnessError::NotNormal(_))
        ));
        assert!(matches!(
            decompose(&w(&p, "s1 0")),
            Err(WitnessError::NotNormal(_))
        ));
    }

    #[test]
    fn unit_context_examples() {
        let p = pres("trivial");
        let (a, b) = unit_context(&w(&p, "y2"), &p).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("x2 s1".into(), "1".into()));
        let (a, b) = unit_context(&w(&p, "x1"), &p).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("1".into(), "s1 y1".into()));
        assert_eq!(unit_context(&Word::zero(), &p), Err(WitnessError::Zero));
        let rw = Rewriter::new(&p);
        for text in ["s1", "y1 s1 x2 s1", "s1 y2 y1 s1 x1 x2 s1", "1"] {
            let word = w(&p, text);
            let (a, b) = unit_context(&word, &p).unwrap();
            assert!(
                rw.normal_form(&a.concat(&word).concat(&b)).is_empty(),
                "{text}"
            );
        }
    }

    #[test]
    fn collapse_x1_x2_takes_three_steps() {
        let p = pres("trivial");
        let t = collapse(&w(&p, "x1"), &w(&p, "x2"), &p).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.steps[1].mv, Move::MultiplyRight(w(&p, "s1 y1")));
        assert_eq!(t.last(), (&Word::empty(), &Word::zero()));
        assert!(verify_trace(&t, &p).accepted());
    }

    #[test]
    fn collapse_identity_against_s1() {
        let p = pres("trivial");
        let t = collapse(&Word::empty(), &w(&p, "s1"), &p).unwrap();
        let pairs: Vec<String> = t
            .steps
            .iter()
            .map(|s| format!("{} | {}", s.left, s.right))
            .collect();
        assert_eq!(pairs, ["1 | s1", "x1 | x1 s1", "x1 y1 | x1 s1 y1", "0 | 1"]);
        assert!(verify_trace(&t, &p).accepted());
    }

    #[test]
    fn collapse_rejects_bad_inputs() {
        let p = pres("trivial");
        assert_eq!(
            collapse(&w(&p, "s1"), &w(&p, "s1"), &p),
            Err(WitnessError::Identical)
        );
        assert!(matches!(
            collapse(&w(&p, "s1 s1"), &w(&p, "x1"), &p),
            Err(WitnessError::NotNormal(_))
        ));
    }

    #[test]
    fn terminal_generator_is_a_one_step_trace() {
        let p = pres("trivial");
        let t = collapse(&Word::zero(), &Word::empty(), &p).unwrap();
        assert_eq!(t.len(), 1);
        assert!(verify_trace(&t, &p).accepted());
    }

    #[test]
    fn verifier_rejects_tampering() {
        let p = pres("z2");
        let t = collapse(&w(&p, "y1 s2"), &w(&p, "x3 s1"), &p).unwrap();
        assert!(verify_trace(&t, &p).accepted());

        // a rewrite step that stops short of the normal form
        let mut short = t.clone();
        let at = short
            .steps
            .iter()
            .position(|s| matches!(s.mv, Move::Rewrite(Side::Left | Side::Both)))
            .unwrap();
        short.steps[at].left = short.steps[at - 1].left.clone();
        let v = verify_trace(&short, &p);
        assert_eq!(v.bad_step, Some(at), "{v}");

        let mut wrong_end = t.clone();
        wrong_end.steps.push(WitnessStep {
            left: w(&p, "s1"),
            right: Word::zero(),
            mv: Move::MultiplyLeft(w(&p, "s1")),
            note: String::new(),
        });
        assert!(!verify_trace(&wrong_end, &p).accepted());

        let bare = WitnessTrace {
            steps: vec![WitnessStep {
                left: w(&p, "s1"),
                right: Word::zero(),
                mv: Move::Generator,
                note: String::new(),
            }],
        };
        let v = verify_trace(&bare, &p);
        assert_eq!(v.bad_step, Some(0));
        assert!(v.reason.contains("final pair"));
    }

    #[test]
    fn trace_text_round_trips() {
        let p = pres("z2");
        let t = collapse(&w(&p, "s1 y2"), &w(&p, "y3"), &p).unwrap();
        let text = t.to_string();
        assert!(text.starts_with("0\tGEN\ts1 y2\ty3\n"));
        let back = WitnessTrace::parse(&text, p.order()).unwrap();
        assert_eq!(back.steps.len(), t.steps.len());
        assert_eq!(back.to_string(), text);
        assert!(verify_trace(&back, &p).accepted());
        assert!(matches!(
            WitnessTrace::parse("1\tGEN\t1\t0\n", 2),
            Err(TraceParseError::StepNumber { .. })
        ));
        assert!(matches!(
            WitnessTrace::parse("0\tJUMP\t1\t0\n", 2),
            Err(TraceParseError::Move { .. })
        ));
        assert!(matches!(
            WitnessTrace::parse("0 GEN 1 0\n", 2),
            Err(TraceParseError::Fields { .. })
        ));
    }
}
