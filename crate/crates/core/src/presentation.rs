//! Alphabet, words and the finite rewriting system of the monoid.
//!
//! The alphabet over a semigroup of order `n` is `s_1..s_n`,
//! `x_1..x_{n+1}`, `y_1..y_{n+1}` and the zero letter `z` (written `0`).
//! The empty word is the identity (written `1`).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, ConditionReport};
use crate::semigroup::{CayleyError, CayleyTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S(usize),
    X(usize),
    Y(usize),
    Z,
}

impl Letter {
    pub fn is_s(self) -> bool {
        matches!(self, Letter::S(_))
    }

    pub fn is_x(self) -> bool {
        matches!(self, Letter::X(_))
    }

    pub fn is_y(self) -> bool {
        matches!(self, Letter::Y(_))
    }

    pub fn is_z(self) -> bool {
        self == Letter::Z
    }

    /// Whether the index is legal for a semigroup of order `n`.
    pub fn in_range(self, n: usize) -> bool {
        match self {
            Letter::S(i) => (1..=n).contains(&i),
            Letter::X(i) | Letter::Y(i) => (1..=n + 1).contains(&i),
            Letter::Z => true,
        }
    }

    /// Parses a single token other than `1`.
    pub fn parse_token(token: &str, n: usize) -> Result<Letter, WordError> {
        if token == "0" {
            return Ok(Letter::Z);
        }
        let mut chars = token.chars();
        let role = chars.next();
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(WordError::UnknownToken(token.to_string()));
        }
        let index: usize = digits
            .parse()
            .map_err(|_| WordError::IndexOutOfRange(token.to_string()))?;
        let letter = match role {
            Some('s') => Letter::S(index),
            Some('x') => Letter::X(index),
            Some('y') => Letter::Y(index),
            _ => return Err(WordError::UnknownToken(token.to_string())),
        };
        if !letter.in_range(n) {
            return Err(WordError::IndexOutOfRange(token.to_string()));
        }
        Ok(letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "s{i}"),
            Letter::X(i) => write!(f, "x{i}"),
            Letter::Y(i) => write!(f, "y{i}"),
            Letter::Z => f.write_str("0"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("index out of range in token {0:?}")]
    IndexOutOfRange(String),
    #[error("'1' must be the whole word")]
    MisplacedIdentity,
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn zero() -> Self {
        Word(vec![Letter::Z])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True for the single-letter word `0`.
    pub fn is_zero(&self) -> bool {
        self.0 == [Letter::Z]
    }

    pub fn contains_x(&self) -> bool {
        self.0.iter().any(|l| l.is_x())
    }

    pub fn contains_y(&self) -> bool {
        self.0.iter().any(|l| l.is_y())
    }

    pub fn contains_z(&self) -> bool {
        self.0.iter().any(|l| l.is_z())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Parses word syntax: whitespace-separated tokens `s<i>`, `x<i>`,
    /// `y<i>`, `0`, or the lone token `1` for the empty word.
    pub fn parse(text: &str, n: usize) -> Result<Word, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["1"] {
            return Ok(Word::empty());
        }
        if tokens.is_empty() {
            return Err(WordError::UnknownToken(String::new()));
        }
        tokens
            .iter()
            .map(|&t| {
                if t == "1" {
                    Err(WordError::MisplacedIdentity)
                } else {
                    Letter::parse_token(t, n)
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (pos, l) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `s_i s_j -> s_pi(i,j)`
    A,
    /// `x_i s_j y_k -> 1` or `0`
    B,
    /// `x_i y_j -> 0`
    C,
    /// `0 a -> 0`
    #[serde(rename = "Z_left")]
    ZLeft,
    /// `a 0 -> 0`
    #[serde(rename = "Z_right")]
    ZRight,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::ZLeft => "Z_left",
            Family::ZRight => "Z_right",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
    pub family: Family,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} -> {}", self.family, self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub z_left: usize,
    pub z_right: usize,
}

impl RuleCounts {
    /// Closed-form counts for a semigroup of order `n`.
    pub fn expected(n: usize) -> Self {
        let m = n + 1;
        RuleCounts {
            a: n * n,
            b: m * n * m,
            c: m * m,
            z_left: n + 2 * m,
            z_right: n + 2 * m + 1,
        }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.z_left + self.z_right
    }
}

impl fmt::Display for RuleCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} B={} C={} Z_left={} Z_right={} total={}",
            self.a,
            self.b,
            self.c,
            self.z_left,
            self.z_right,
            self.total()
        )
    }
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("table is not associative: witness triple ({}, {}, {})", .0 .0, .0 .1, .0 .2)]
    NonAssociative((usize, usize, usize)),
    #[error("coloring fails conditions {failed:?}\n{report}")]
    Coloring {
        failed: Vec<usize>,
        report: ConditionReport,
    },
    #[error("table has order {table} but coloring has order {coloring}")]
    OrderMismatch { table: usize, coloring: usize },
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    table: CayleyTable,
    coloring: Coloring,
    rules: Vec<Rule>,
}

impl Presentation {
    /// Generates the complete rewriting system for `table` and `coloring`.
    ///
    /// The table must be associative and the coloring must satisfy all six
    /// conditions.
    pub fn generate(table: &CayleyTable, coloring: &Coloring) -> Result<Self, PresentationError> {
        if table.order() != coloring.order() {
            return Err(PresentationError::OrderMismatch {
                table: table.order(),
                coloring: coloring.order(),
            });
        }
        if let Some(triple) = table.associativity_violation() {
            return Err(PresentationError::NonAssociative(triple));
        }
        let report = coloring.check_conditions();
        if !report.all_pass() {
            return Err(PresentationError::Coloring {
                failed: report.failed(),
                report,
            });
        }
        Ok(Self::generate_unchecked(table, coloring))
    }

    /// Semigroup with the constructed coloring of matching order.
    pub fn for_table(table: &CayleyTable) -> Result<Self, PresentationError> {
        Self::generate(table, &Coloring::build(table.order()))
    }

    /// Generates rules without validating the inputs. Only the orders are
    /// required to agree. Used to exhibit what goes wrong on bad inputs.
    #[doc(hidden)]
    pub fn generate_unchecked(table: &CayleyTable, coloring: &Coloring) -> Self {
        assert_eq!(table.order(), coloring.order());
        let n = table.order();
        let m = n + 1;
        let mut rules = Vec::new();
        let rule = |lhs: Vec<Letter>, rhs: Vec<Letter>, family| Rule {
            lhs: Word(lhs),
            rhs: Word(rhs),
            family,
        };
        for i in 1..=n {
            for j in 1..=n {
                rules.push(rule(
                    vec![Letter::S(i), Letter::S(j)],
                    vec![Letter::S(table.product(i, j))],
                    Family::A,
                ));
            }
        }
        for i in 1..=m {
            for j in 1..=n {
                for k in 1..=m {
                    let rhs = if coloring.get(i, j, k) {
                        vec![]
                    } else {
                        vec![Letter::Z]
                    };
                    rules.push(rule(
                        vec![Letter::X(i), Letter::S(j), Letter::Y(k)],
                        rhs,
                        Family::B,
                    ));
                }
            }
        }
        for i in 1..=m {
            for j in 1..=m {
                rules.push(rule(
                    vec![Letter::X(i), Letter::Y(j)],
                    vec![Letter::Z],
                    Family::C,
                ));
            }
        }
        let alphabet = alphabet(n);
        for &a in alphabet.iter().filter(|a| !a.is_z()) {
            rules.push(rule(vec![Letter::Z, a], vec![Letter::Z], Family::ZLeft));
        }
        for &a in &alphabet {
            rules.push(rule(vec![a, Letter::Z], vec![Letter::Z], Family::ZRight));
        }
        Presentation {
            table: table.clone(),
            coloring: coloring.clone(),
            rules,
        }
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn alphabet(&self) -> Vec<Letter> {
        alphabet(self.order())
    }

    pub fn rule_counts(&self) -> RuleCounts {
        let mut counts = RuleCounts::default();
        for r in &self.rules {
            match r.family {
                Family::A => counts.a += 1,
                Family::B => counts.b += 1,
                Family::C => counts.c += 1,
                Family::ZLeft => counts.z_left += 1,
                Family::ZRight => counts.z_right += 1,
            }
        }
        counts
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        Word::parse(text, self.order())
    }

    /// Replaces the rule list. Rules are not checked against the table, so a
    /// tampered system can be built and then diagnosed by the confluence check.
    #[doc(hidden)]
    pub fn with_rules(mut self, rules: Vec<Rule>) -> Self {
        self.rules = rules;
        self
    }

    pub fn to_json(&self) -> String {
        let file = PresentationFile {
            n: self.order(),
            cayley: self.table.rows(),
            coloring: (1..=self.order())
                .map(|j| {
                    self.coloring
                        .slice(j)
                        .into_iter()
                        .map(|row| row.into_iter().map(u8::from).collect())
                        .collect()
                })
                .collect(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleFile {
                    lhs: r.lhs.tokens(),
                    rhs: r.rhs.tokens(),
                    family: r.family,
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("presentation serializes");
        out.push('\n');
        out
    }

    /// Loads a serialized presentation. Shapes and token ranges are checked;
    /// the rule list is taken as given.
    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let file: PresentationFile = serde_json::from_str(text)?;
        let n = file.n;
        if n == 0 {
            return Err(PresentationError::Malformed("n must be positive".into()));
        }
        if file.cayley.len() != n {
            return Err(PresentationError::Malformed(format!(
                "cayley table has {} rows, expected {n}",
                file.cayley.len()
            )));
        }
        let table = CayleyTable::from_rows(&file.cayley)
            .map_err(|e: CayleyError| PresentationError::Malformed(e.to_string()))?;
        let m = n + 1;
        let shape_ok = file.coloring.len() == n
            && file.coloring.iter().all(|s| {
                s.len() == m && s.iter().all(|r| r.len() == m && r.iter().all(|&b| b <= 1))
            });
        if !shape_ok {
            return Err(PresentationError::Malformed(format!(
                "coloring must be {n} slices of {m}x{m} bits"
            )));
        }
        let coloring = Coloring::from_fn(n, |i, j, k| file.coloring[j - 1][i - 1][k - 1] == 1);
        let word = |tokens: &[String]| -> Result<Word, PresentationError> {
            tokens
                .iter()
                .map(|t| Letter::parse_token(t, n))
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
                .map_err(|e| PresentationError::Malformed(e.to_string()))
        };
        let rules = file
            .rules
            .iter()
            .map(|r| {
                Ok(Rule {
                    lhs: word(&r.lhs)?,
                    rhs: word(&r.rhs)?,
                    family: r.family,
                })
            })
            .collect::<Result<Vec<_>, PresentationError>>()?;
        if let Some(bad) = rules.iter().find(|r| r.rhs.len() >= r.lhs.len()) {
            return Err(PresentationError::Malformed(format!(
                "rule {bad} is not length-reducing"
            )));
        }
        Ok(Presentation {
            table,
            coloring,
            rules,
        })
    }
}

/// All letters for order `n` in canonical order: s, x, y, then z.
pub fn alphabet(n: usize) -> Vec<Letter> {
    let m = n + 1;
    (1..=n)
        .map(Letter::S)
        .chain((1..=m).map(Letter::X))
        .chain((1..=m).map(Letter::Y))
        .chain(std::iter::once(Letter::Z))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    n: usize,
    cayley: Vec<Vec<usize>>,
    coloring: Vec<Vec<Vec<u8>>>,
    rules: Vec<RuleFile>,
}

#[derive(Serialize, Deserialize)]
struct RuleFile {
    lhs: Vec<String>,
    rhs: Vec<String>,
    family: Family,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial() -> Presentation {
        Presentation::for_table(&CayleyTable::builtin("trivial").unwrap()).unwrap()
    }

    #[test]
    fn trivial_semigroup_has_twenty_rules() {
        let p = trivial();
        let counts = p.rule_counts();
        assert_eq!(
            counts,
            RuleCounts {
                a: 1,
                b: 4,
                c: 4,
                z_left: 5,
                z_right: 6
            }
        );
        assert_eq!(counts.total(), 20);
        let b: Vec<String> = p
            .rules()
            .iter()
            .filter(|r| r.family == Family::B)
            .map(|r| format!("{} -> {}", r.lhs, r.rhs))
            .collect();
        assert_eq!(
            b,
            [
                "x1 s1 y1 -> 1",
                "x1 s1 y2 -> 0",
                "x2 s1 y1 -> 0",
                "x2 s1 y2 -> 1"
            ]
        );
        assert_eq!(p.rules()[0].to_string(), "[A] s1 s1 -> s1");
    }

    #[test]
    fn counts_match_closed_form() {
        for n in 1..=5 {
            let t = CayleyTable::from_fn(n, |i, _| i);
            let p = Presentation::for_table(&t).unwrap();
            assert_eq!(p.rule_counts(), RuleCounts::expected(n));
            assert!(p.rules().iter().all(|r| r.rhs.len() < r.lhs.len()));
        }
        assert_eq!(
            RuleCounts::expected(2).to_string(),
            "A=4 B=18 C=9 Z_left=8 Z_right=9 total=48"
        );
    }

    #[test]
    fn a_rules_realize_the_table() {
        let t = CayleyTable::builtin("t2").unwrap();
        let p = Presentation::for_table(&t).unwrap();
        for r in p.rules().iter().filter(|r| r.family == Family::A) {
            match (r.lhs.letters(), r.rhs.letters()) {
                ([Letter::S(i), Letter::S(j)], [Letter::S(k)]) => assert_eq!(t.product(*i, *j), *k),
                other => panic!("bad A rule {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad = CayleyTable::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        match Presentation::for_table(&bad) {
            Err(PresentationError::NonAssociative(t)) => assert_eq!(t, (2, 1, 1)),
            other => panic!("{other:?}"),
        }
        let z2 = CayleyTable::builtin("z2").unwrap();
        match Presentation::generate(&z2, &Coloring::constant(2, true)) {
            Err(PresentationError::Coloring { failed, .. }) => assert_eq!(failed, vec![3, 4, 5, 6]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Presentation::generate(&z2, &Coloring::build(3)),
            Err(PresentationError::OrderMismatch {
                table: 2,
                coloring: 3
            })
        ));
    }

    #[test]
    fn word_syntax() {
        assert_eq!(
            Word::parse("x1 s2 y3", 2).unwrap().letters(),
            &[Letter::X(1), Letter::S(2), Letter::Y(3)]
        );
        assert!(Word::parse("1", 2).unwrap().is_empty());
        assert!(Word::parse(" 0 ", 2).unwrap().is_zero());
        assert_eq!(
            Word::parse("s9", 2),
            Err(WordError::IndexOutOfRange("s9".into()))
        );
        assert_eq!(
            Word::parse("s0", 2),
            Err(WordError::IndexOutOfRange("s0".into()))
        );
        assert_eq!(
            Word::parse("y3", 1),
            Err(WordError::IndexOutOfRange("y3".into()))
        );
        assert_eq!(
            Word::parse("w1", 2),
            Err(WordError::UnknownToken("w1".into()))
        );
        assert_eq!(
            Word::parse("s", 2),
            Err(WordError::UnknownToken("s".into()))
        );
        assert_eq!(Word::parse("s1 1", 2), Err(WordError::MisplacedIdentity));
        assert!(Word::parse("", 2).is_err());
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(Word::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_is_stable() {
        let p = Presentation::for_table(&CayleyTable::builtin("z2").unwrap()).unwrap();
        let json = p.to_json();
        let back = Presentation::from_json(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), json);
        assert!(json.find("\"n\"").unwrap() < json.find("\"cayley\"").unwrap());
        assert!(json.contains("\"Z_left\""));
    }

    #[test]
    fn json_rejects_malformed_input() {
        let p = trivial();
        let json = p.to_json();
        let grown = json.replacen(
            "\"rhs\": [\n        \"s1\"\n      ]",
            "\"rhs\": [\"s1\", \"s1\"]",
            1,
        );
        assert_ne!(grown, json);
        assert!(matches!(
            Presentation::from_json(&grown),
            Err(PresentationError::Malformed(_))
        ));
        assert!(Presentation::from_json("{").is_err());
        let out_of_range = json.replacen("\"x2\"", "\"x7\"", 1);
        assert!(matches!(
            Presentation::from_json(&out_of_range),
            Err(PresentationError::Malformed(_))
        ));
    }
}
