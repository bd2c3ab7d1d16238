//! Rewriting with the generated rule list: normal forms, critical pairs and
//! local confluence.
//!
//! Every rule is length-reducing, so rewriting terminates and local
//! confluence of all critical pairs gives confluence.

use std::collections::HashMap;
use std::fmt;

use crate::presentation::{Letter, Presentation, Rule, Word};

/// Rule lookup keyed by left-hand side.
#[derive(Clone, Debug)]
pub struct Rewriter<'p> {
    presentation: &'p Presentation,
    by_lhs: HashMap<Vec<Letter>, usize>,
    // distinct lhs lengths, ascending
    lengths: Vec<usize>,
}

impl<'p> Rewriter<'p> {
    pub fn new(presentation: &'p Presentation) -> Self {
        let mut by_lhs = HashMap::new();
        let mut lengths = Vec::new();
        for (idx, rule) in presentation.rules().iter().enumerate() {
            by_lhs.entry(rule.lhs.letters().to_vec()).or_insert(idx);
            lengths.push(rule.lhs.len());
        }
        lengths.sort_unstable();
        lengths.dedup();
        Rewriter {
            presentation,
            by_lhs,
            lengths,
        }
    }

    pub fn presentation(&self) -> &'p Presentation {
        self.presentation
    }

    fn rule_at(&self, letters: &[Letter], pos: usize) -> Option<usize> {
        self.lengths.iter().find_map(|&len| {
            letters
                .get(pos..pos + len)
                .and_then(|factor| self.by_lhs.get(factor).copied())
        })
    }

    /// One rewrite step at the leftmost redex, shortest left-hand side first.
    /// Returns the reduct, the position and the rule index.
    pub fn step(&self, w: &Word) -> Option<(Word, usize, usize)> {
        let letters = w.letters();
        (0..letters.len()).find_map(|pos| {
            self.rule_at(letters, pos).map(|idx| {
                let rule = &self.presentation.rules()[idx];
                (replace(letters, pos, rule), pos, idx)
            })
        })
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        let mut current = w.clone();
        while let Some((next, _, _)) = self.step(&current) {
            current = next;
        }
        current
    }

    pub fn is_normal_form(&self, w: &Word) -> bool {
        let letters = w.letters();
        (0..letters.len()).all(|pos| self.rule_at(letters, pos).is_none())
    }

    /// Whether some left-hand side is a suffix of `letters`.
    fn has_redex_suffix(&self, letters: &[Letter]) -> bool {
        self.lengths.iter().any(|&len| {
            len <= letters.len() && self.by_lhs.contains_key(&letters[letters.len() - len..])
        })
    }

    /// All nonzero normal forms of length at most `maxlen` over the letters
    /// other than `0`, in length-lexicographic order. Includes the empty word.
    pub fn enumerate_normal_forms(&self, maxlen: usize) -> Vec<Word> {
        let letters: Vec<Letter> = self
            .presentation
            .alphabet()
            .into_iter()
            .filter(|l| !l.is_z())
            .collect();
        let mut all = vec![Word::empty()];
        let mut layer = vec![Vec::<Letter>::new()];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for prefix in &layer {
                for &a in &letters {
                    let mut w = prefix.clone();
                    w.push(a);
                    if !self.has_redex_suffix(&w) {
                        next.push(w);
                    }
                }
            }
            all.extend(next.iter().cloned().map(Word::from));
            layer = next;
        }
        all
    }
}

fn replace(letters: &[Letter], pos: usize, rule: &Rule) -> Word {
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[..pos]);
    out.extend_from_slice(rule.rhs.letters());
    out.extend_from_slice(&letters[pos + rule.lhs.len()..]);
    Word::from(out)
}

pub fn normal_form(w: &Word, p: &Presentation) -> Word {
    Rewriter::new(p).normal_form(w)
}

pub fn is_normal_form(w: &Word, p: &Presentation) -> bool {
    Rewriter::new(p).is_normal_form(w)
}

pub fn enumerate_normal_forms(p: &Presentation, maxlen: usize) -> Vec<Word> {
    Rewriter::new(p).enumerate_normal_forms(maxlen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OverlapKind {
    /// A proper suffix of the first lhs equals a proper prefix of the second.
    Suffix,
    /// The second lhs occurs inside the first.
    Contained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left_reduct: Word,
    pub right_reduct: Word,
    /// Rule indices; the first applies at position 0.
    pub rules: (usize, usize),
    /// Position at which the second rule applies inside `overlap`.
    pub position: usize,
    pub kind: OverlapKind,
    pub joinable: bool,
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} => ({}) / ({}) rules {},{} {}",
            self.overlap,
            self.left_reduct,
            self.right_reduct,
            self.rules.0,
            self.rules.1,
            if self.joinable {
                "joinable"
            } else {
                "NOT JOINABLE"
            }
        )
    }
}

/// All critical pairs of the rule list, ordered by rule indices, overlap
/// kind and position. `joinable` is left `false`; see
/// [`check_local_confluence`].
pub fn critical_pairs(p: &Presentation) -> Vec<CriticalPair> {
    let rules = p.rules();
    let mut out = Vec::new();
    for (a, ra) in rules.iter().enumerate() {
        let l1 = ra.lhs.letters();
        for (b, rb) in rules.iter().enumerate() {
            let l2 = rb.lhs.letters();
            // proper overlaps: suffix of l1 of length t equals prefix of l2
            for t in (1..l1.len().min(l2.len())).rev() {
                if l1[l1.len() - t..] == l2[..t] {
                    let overlap = Word::from([l1, &l2[t..]].concat());
                    let position = l1.len() - t;
                    out.push(CriticalPair {
                        left_reduct: replace(overlap.letters(), 0, ra),
                        right_reduct: replace(overlap.letters(), position, rb),
                        overlap,
                        rules: (a, b),
                        position,
                        kind: OverlapKind::Suffix,
                        joinable: false,
                    });
                }
            }
            // containment of l2 inside l1
            if a != b && l2.len() <= l1.len() {
                for position in 0..=l1.len() - l2.len() {
                    if l1[position..position + l2.len()] == *l2 {
                        let overlap = ra.lhs.clone();
                        out.push(CriticalPair {
                            left_reduct: ra.rhs.clone(),
                            right_reduct: replace(l1, position, rb),
                            overlap,
                            rules: (a, b),
                            position,
                            kind: OverlapKind::Contained,
                            joinable: false,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub pairs: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn all_joinable(&self) -> bool {
        self.pairs.iter().all(|c| c.joinable)
    }

    pub fn first_failure(&self) -> Option<&CriticalPair> {
        self.pairs.iter().find(|c| !c.joinable)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CriticalPair> {
        self.pairs.iter().filter(|c| !c.joinable)
    }
}

/// Reduces both sides of every critical pair to normal form and compares.
pub fn check_local_confluence(p: &Presentation) -> ConfluenceReport {
    let rw = Rewriter::new(p);
    let mut pairs = critical_pairs(p);
    for cp in &mut pairs {
        cp.joinable = rw.normal_form(&cp.left_reduct) == rw.normal_form(&cp.right_reduct);
    }
    ConfluenceReport { pairs }
}

/// Checks that `s_i s_j` normalizes to `s_pi(i,j)` and that the letters
/// `s_1..s_n` are distinct normal forms. Returns one message per failure.
pub fn embedding_failures(p: &Presentation) -> Vec<String> {
    let rw = Rewriter::new(p);
    let n = p.order();
    let mut failures = Vec::new();
    for i in 1..=n {
        let si = Word::from(vec![Letter::S(i)]);
        if rw.normal_form(&si) != si {
            failures.push(format!("s{i} is not a normal form"));
        }
        for j in 1..=n {
            let product = Word::from(vec![Letter::S(i), Letter::S(j)]);
            let expected = Word::from(vec![Letter::S(p.table().product(i, j))]);
            let got = rw.normal_form(&product);
            if got != expected {
                failures.push(format!("s{i} s{j} -> {got}, expected {expected}"));
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Coloring;
    use crate::presentation::Family;
    use crate::semigroup::CayleyTable;

    fn pres(name: &str) -> Presentation {
        Presentation::for_table(&CayleyTable::builtin(name).unwrap()).unwrap()
    }

    fn w(p: &Presentation, text: &str) -> Word {
        p.parse_word(text).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let z2 = pres("z2");
        assert_eq!(normal_form(&w(&z2, "x1 y1"), &z2), Word::zero());
        // f(1,2,1) = ((1-1) mod 3 < 2) = 1
        assert_eq!(normal_form(&w(&z2, "x1 s2 y1"), &z2), Word::empty());
        let l2 = pres("leftzero2");
        assert_eq!(normal_form(&w(&l2, "s1 s2"), &l2), w(&l2, "s1"));
        assert_eq!(normal_form(&w(&l2, "s2 x1 s1 s2 y1 s1"), &l2), w(&l2, "s2"));
        assert_eq!(normal_form(&w(&l2, "s2 0 x1"), &l2), Word::zero());
    }

    #[test]
    fn normal_form_uses_at_most_len_steps() {
        let p = pres("t2");
        let rw = Rewriter::new(&p);
        let mut word = w(&p, "x2 s3 s4 s2 y1 x1 s1 y2 y3 0 s1");
        let bound = word.len();
        let mut steps = 0;
        while let Some((next, _, _)) = rw.step(&word) {
            assert!(next.len() < word.len());
            word = next;
            steps += 1;
        }
        assert!(steps <= bound);
        assert!(word.is_zero());
    }

    #[test]
    fn step_prefers_leftmost_then_shortest() {
        let p = pres("trivial");
        let rw = Rewriter::new(&p);
        let (_, pos, idx) = rw.step(&w(&p, "y1 x1 s1 y1")).unwrap();
        assert_eq!(pos, 1);
        assert_eq!(p.rules()[idx].family, Family::B);
        let (_, pos, _) = rw.step(&w(&p, "y2 s1 s1 x1 y1")).unwrap();
        assert_eq!(pos, 1);
    }

    #[test]
    fn irreducibility_examples() {
        let p = pres("trivial");
        assert!(is_normal_form(&w(&p, "s1 x1 s1 x2"), &p));
        assert!(!is_normal_form(&w(&p, "x1 s1 y1"), &p));
        assert!(is_normal_form(&Word::empty(), &p));
        assert!(is_normal_form(&Word::zero(), &p));
        assert!(!is_normal_form(&w(&p, "0 0"), &p));
    }

    #[test]
    fn trivial_semigroup_critical_pairs() {
        let p = pres("trivial");
        let report = check_local_confluence(&p);
        assert!(report.all_joinable());
        let aa: Vec<_> = report
            .pairs
            .iter()
            .filter(|c| {
                p.rules()[c.rules.0].family == Family::A && p.rules()[c.rules.1].family == Family::A
            })
            .collect();
        assert_eq!(aa.len(), 1);
        assert_eq!(aa[0].overlap.to_string(), "s1 s1 s1");
        assert_eq!(aa[0].left_reduct, aa[0].right_reduct);
        // every other pair involves a zero rule
        for c in &report.pairs {
            let fams = (p.rules()[c.rules.0].family, p.rules()[c.rules.1].family);
            if fams != (Family::A, Family::A) {
                assert!(c.overlap.contains_z(), "{c}");
            }
        }
        assert!(report
            .pairs
            .iter()
            .any(|c| c.overlap.to_string() == "x1 s1 y1 0"));
    }

    #[test]
    fn a_family_contributes_n_cubed_overlaps() {
        for name in ["z3", "t2"] {
            let p = pres(name);
            let n = p.order();
            let aa = critical_pairs(&p)
                .into_iter()
                .filter(|c| {
                    p.rules()[c.rules.0].family == Family::A
                        && p.rules()[c.rules.1].family == Family::A
                })
                .count();
            assert_eq!(aa, n * n * n);
        }
    }

    #[test]
    fn flipped_b_rule_keeps_local_confluence() {
        let t = CayleyTable::builtin("z2").unwrap();
        let mut c = Coloring::build(2);
        c.set(1, 1, 1, !c.get(1, 1, 1));
        let p = Presentation::generate_unchecked(&t, &c);
        assert!(check_local_confluence(&p).all_joinable());
    }

    #[test]
    fn census_for_order_one() {
        let p = pres("trivial");
        let one: Vec<String> = enumerate_normal_forms(&p, 1)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(one, ["1", "s1", "x1", "x2", "y1", "y2"]);
        assert_eq!(enumerate_normal_forms(&p, 2).len(), 26);
        assert_eq!(enumerate_normal_forms(&p, 0), vec![Word::empty()]);
    }
}
