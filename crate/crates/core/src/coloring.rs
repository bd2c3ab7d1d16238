//! The three-index coloring `f(i, j, k)` that drives the `x_i s_j y_k` rules.
//!
//! `i` ranges over x-indices `1..=n+1`, `j` over s-indices `1..=n` and `k`
//! over y-indices `1..=n+1`. A coloring is usable for the monoid construction
//! exactly when it satisfies the six conditions checked by
//! [`Coloring::check_conditions`].

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("index ({i}, {j}, {k}) out of range for n = {n}")]
    IndexOutOfRange {
        n: usize,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("coloring order must be positive")]
    ZeroOrder,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Closed form of the shifted-column construction:
/// `f(i, j, k) = 1` iff `(i - k) mod (n + 1) < j`, residues taken in `0..=n`.
pub fn coloring_entry(n: usize, i: usize, j: usize, k: usize) -> Result<bool, ColoringError> {
    if n == 0 || !(1..=n + 1).contains(&i) || !(1..=n).contains(&j) || !(1..=n + 1).contains(&k) {
        return Err(ColoringError::IndexOutOfRange { n, i, j, k });
    }
    let m = n + 1;
    let residue = (i + m - k) % m;
    Ok(residue < j)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    // slice-major: [j][i][k]
    bits: Vec<bool>,
}

impl Coloring {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        assert!(n > 0, "coloring order must be positive");
        let m = n + 1;
        let mut bits = Vec::with_capacity(n * m * m);
        for j in 1..=n {
            for i in 1..=m {
                for k in 1..=m {
                    bits.push(f(i, j, k));
                }
            }
        }
        Coloring { n, bits }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        Coloring::from_fn(n, |_, _, _| value)
    }

    /// Slice `j` is an `(n+1) x (n+1)` matrix (rows: x-index, columns:
    /// y-index). Its first column holds `j` ones followed by zeros and every
    /// further column is the previous one cyclically shifted down by one.
    pub fn build(n: usize) -> Self {
        assert!(n > 0, "coloring order must be positive");
        let m = n + 1;
        let mut bits = vec![false; n * m * m];
        for j in 1..=n {
            let mut column: Vec<bool> = (0..m).map(|r| r < j).collect();
            for k in 0..m {
                for (i, &bit) in column.iter().enumerate() {
                    bits[((j - 1) * m + i) * m + k] = bit;
                }
                // sigma: (x_1, ..., x_m) -> (x_m, x_1, ..., x_{m-1})
                column.rotate_right(1);
            }
        }
        Coloring { n, bits }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        let m = self.n + 1;
        debug_assert!((1..=m).contains(&i) && (1..=self.n).contains(&j) && (1..=m).contains(&k));
        ((j - 1) * m + (i - 1)) * m + (k - 1)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.bits[self.offset(i, j, k)]
    }

    pub fn try_get(&self, i: usize, j: usize, k: usize) -> Result<bool, ColoringError> {
        let n = self.n;
        if !(1..=n + 1).contains(&i) || !(1..=n).contains(&j) || !(1..=n + 1).contains(&k) {
            return Err(ColoringError::IndexOutOfRange { n, i, j, k });
        }
        Ok(self.get(i, j, k))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: bool) {
        let at = self.offset(i, j, k);
        self.bits[at] = value;
    }

    /// Slice `j` as rows indexed by `i`, columns by `k`.
    pub fn slice(&self, j: usize) -> Vec<Vec<bool>> {
        let m = self.n + 1;
        (1..=m)
            .map(|i| (1..=m).map(|k| self.get(i, j, k)).collect())
            .collect()
    }

    /// `(f(i,j,1), ..., f(i,j,n+1))`: the y-direction tuple at `(i, j)`.
    pub fn y_tuple(&self, i: usize, j: usize) -> Vec<bool> {
        (1..=self.n + 1).map(|k| self.get(i, j, k)).collect()
    }

    /// `(f(1,j,k), ..., f(n+1,j,k))`: the x-direction tuple at `(j, k)`.
    pub fn x_tuple(&self, j: usize, k: usize) -> Vec<bool> {
        (1..=self.n + 1).map(|i| self.get(i, j, k)).collect()
    }

    /// Smallest y-index `k` with `f(i, j, k) == value`.
    pub fn first_y(&self, i: usize, j: usize, value: bool) -> Option<usize> {
        (1..=self.n + 1).find(|&k| self.get(i, j, k) == value)
    }

    /// Smallest x-index `i` with `f(i, j, k) == value`.
    pub fn first_x(&self, j: usize, k: usize, value: bool) -> Option<usize> {
        (1..=self.n + 1).find(|&i| self.get(i, j, k) == value)
    }

    /// Smallest y-index separating the x/s pairs `(i, j)` and `(p, q)`.
    pub fn separating_y(&self, (i, j): (usize, usize), (p, q): (usize, usize)) -> Option<usize> {
        (1..=self.n + 1).find(|&k| self.get(i, j, k) != self.get(p, q, k))
    }

    /// Smallest x-index separating the s/y pairs `(j, k)` and `(q, l)`.
    pub fn separating_x(&self, (j, k): (usize, usize), (q, l): (usize, usize)) -> Option<usize> {
        (1..=self.n + 1).find(|&i| self.get(i, j, k) != self.get(i, q, l))
    }

    pub fn check_conditions(&self) -> ConditionReport {
        let n = self.n;
        let m = n + 1;
        // (x, s) pairs and (s, y) pairs, both in lexicographic order
        let xs: Vec<(usize, usize)> = (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        let sy: Vec<(usize, usize)> = (1..=n).flat_map(|j| (1..=m).map(move |k| (j, k))).collect();

        let exists = |pairs: &[(usize, usize)], probe: &dyn Fn((usize, usize)) -> bool| {
            pairs
                .iter()
                .find(|&&p| !probe(p))
                .map(|&p| Violation::Pair(p.0, p.1))
        };
        let distinct = |pairs: &[(usize, usize)], tuple: &dyn Fn((usize, usize)) -> Vec<bool>| {
            let tuples: Vec<Vec<bool>> = pairs.iter().map(|&p| tuple(p)).collect();
            for a in 0..pairs.len() {
                for b in a + 1..pairs.len() {
                    if tuples[a] == tuples[b] {
                        return Some(Violation::Pairs(pairs[a], pairs[b]));
                    }
                }
            }
            None
        };

        let c1 = exists(&xs, &|(i, j)| self.first_y(i, j, true).is_some());
        let c2 = exists(&sy, &|(j, k)| self.first_x(j, k, true).is_some());
        let c3 = exists(&xs, &|(i, j)| self.first_y(i, j, false).is_some());
        let c4 = exists(&sy, &|(j, k)| self.first_x(j, k, false).is_some());
        let c5 = distinct(&xs, &|(i, j)| self.y_tuple(i, j));
        let c6 = distinct(&sy, &|(j, k)| self.x_tuple(j, k));

        ConditionReport {
            violations: [c1, c2, c3, c4, c5, c6],
        }
    }

    /// Parses the slice text format written by the `Display` impl.
    pub fn parse(text: &str) -> Result<Self, ColoringError> {
        let mut slices: Vec<Vec<Vec<bool>>> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if let Some(rest) = body.strip_prefix("slice") {
                let j: usize = rest.trim().parse().map_err(|_| ColoringError::Parse {
                    line,
                    message: format!("malformed slice header {body:?}"),
                })?;
                if j != slices.len() + 1 {
                    return Err(ColoringError::Parse {
                        line,
                        message: format!("expected slice {}, found slice {j}", slices.len() + 1),
                    });
                }
                slices.push(Vec::new());
                continue;
            }
            let current = slices.last_mut().ok_or_else(|| ColoringError::Parse {
                line,
                message: "row before first slice header".to_string(),
            })?;
            let row = body
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(ColoringError::Parse {
                        line,
                        message: format!("expected bit, found {other:?}"),
                    }),
                })
                .collect::<Result<Vec<bool>, _>>()?;
            current.push(row);
        }
        let n = slices.len();
        if n == 0 {
            return Err(ColoringError::ZeroOrder);
        }
        let m = n + 1;
        for (j, slice) in slices.iter().enumerate() {
            if slice.len() != m || slice.iter().any(|r| r.len() != m) {
                return Err(ColoringError::Parse {
                    line: 0,
                    message: format!("slice {} must be a {m}x{m} bit matrix", j + 1),
                });
            }
        }
        Ok(Coloring::from_fn(n, |i, j, k| slices[j - 1][i - 1][k - 1]))
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.n {
            if j > 1 {
                writeln!(f)?;
            }
            writeln!(f, "slice {j}")?;
            for row in self.slice(j) {
                let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

/// First counterexample to one of the conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A pair with no witness index (conditions 1 to 4).
    Pair(usize, usize),
    /// Two distinct pairs with identical tuples (conditions 5 and 6).
    Pairs((usize, usize), (usize, usize)),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair(a, b) => write!(f, "({a},{b})"),
            Violation::Pairs((a, b), (c, d)) => write!(f, "({a},{b}) vs ({c},{d})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// Entry `c - 1` is the first violation of condition `c`, if any.
    pub violations: [Option<Violation>; 6],
}

impl ConditionReport {
    pub fn passes(&self, condition: usize) -> bool {
        self.violations[condition - 1].is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.violations.iter().all(Option::is_none)
    }

    pub fn failed(&self) -> Vec<usize> {
        (1..=6).filter(|&c| !self.passes(c)).collect()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, v) in self.violations.iter().enumerate() {
            match v {
                None => writeln!(f, "C{} pass", c + 1)?,
                Some(v) => writeln!(f, "C{} FAIL {v}", c + 1)?,
            }
        }
        Ok(())
    }
}
