//! Finite semigroups given by Cayley tables.
//!
//! All indices exposed here are 1-based: element `s_i` is index `i` in `1..=n`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CayleyError {
    #[error("line {line}: malformed integer {token:?}")]
    MalformedInteger { line: usize, token: String },
    #[error("line {line}: order must be positive")]
    ZeroOrder { line: usize },
    #[error("missing order line")]
    MissingOrder,
    #[error("line {line}: expected {expected} entries in row {row}, found {found}")]
    RowLength {
        line: usize,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: entry {entry} out of range at row {row}")]
    OutOfRange {
        line: usize,
        row: usize,
        entry: usize,
    },
    #[error("unknown builtin semigroup {0:?}")]
    UnknownBuiltin(String),
    #[error("table of order {n} must have {expected} entries, found {found}")]
    Shape {
        n: usize,
        expected: usize,
        found: usize,
    },
}

/// Multiplication table of a finite semigroup `{s_1, ..., s_n}`.
///
/// Entries are range-checked on construction. Associativity is a separate
/// check ([`CayleyTable::is_associative`]) so that bad tables can be loaded
/// and diagnosed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    // row-major, 1-based values
    entries: Vec<usize>,
}

impl CayleyTable {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, CayleyError> {
        let n = rows.len();
        if n == 0 {
            return Err(CayleyError::ZeroOrder { line: 0 });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CayleyError::RowLength {
                    line: 0,
                    row: r + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for &e in row {
                if e == 0 || e > n {
                    return Err(CayleyError::OutOfRange {
                        line: 0,
                        row: r + 1,
                        entry: e,
                    });
                }
                entries.push(e);
            }
        }
        Ok(CayleyTable { n, entries })
    }

    /// Builds the table from a 1-based product function.
    pub fn from_fn(n: usize, mut product: impl FnMut(usize, usize) -> usize) -> Self {
        assert!(n > 0, "semigroup order must be positive");
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let e = product(i, j);
                assert!((1..=n).contains(&e), "product {e} out of range 1..={n}");
                entries.push(e);
            }
        }
        CayleyTable { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `pi(i, j)`: the index of `s_i s_j`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Returns the first triple `(i, j, k)` with `(s_i s_j) s_k != s_i (s_j s_k)`,
    /// or `None` when the table is associative.
    ///
    /// Triples are scanned with `k` varying slowest and `i` fastest.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for k in 1..=n {
            for j in 1..=n {
                for i in 1..=n {
                    let left = self.product(self.product(i, j), k);
                    let right = self.product(i, self.product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Parses the Cayley text format: optional `#` comment lines, the order
    /// `n`, then `n` rows of `n` whitespace-separated entries in `1..=n`.
    pub fn parse(text: &str) -> Result<Self, CayleyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#') && !l.is_empty());

        let (order_line, order_text) = lines.next().ok_or(CayleyError::MissingOrder)?;
        let n = parse_index(order_text, order_line)?;
        if n == 0 {
            return Err(CayleyError::ZeroOrder { line: order_line });
        }

        let mut entries = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (line, body) in lines {
            rows += 1;
            if rows > n {
                return Err(CayleyError::RowCount {
                    expected: n,
                    found: rows,
                });
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() != n {
                return Err(CayleyError::RowLength {
                    line,
                    row: rows,
                    expected: n,
                    found: tokens.len(),
                });
            }
            for tok in tokens {
                let entry = parse_index(tok, line)?;
                if entry == 0 || entry > n {
                    return Err(CayleyError::OutOfRange {
                        line,
                        row: rows,
                        entry,
                    });
                }
                entries.push(entry);
            }
        }
        if rows != n {
            return Err(CayleyError::RowCount {
                expected: n,
                found: rows,
            });
        }
        Ok(CayleyTable { n, entries })
    }

    /// Names accepted by [`CayleyTable::builtin`].
    pub const BUILTINS: [&'static str; 7] = [
        "trivial",
        "z2",
        "z3",
        "leftzero2",
        "rightzero2",
        "semilattice2",
        "t2",
    ];

    pub fn builtin(name: &str) -> Result<Self, CayleyError> {
        let table = match name {
            "trivial" => CayleyTable::from_fn(1, |_, _| 1),
            "z2" => cyclic(2),
            "z3" => cyclic(3),
            "leftzero2" => CayleyTable::from_fn(2, |i, _| i),
            "rightzero2" => CayleyTable::from_fn(2, |_, j| j),
            "semilattice2" => CayleyTable::from_fn(2, usize::min),
            "t2" => full_transformation_monoid_2(),
            other => return Err(CayleyError::UnknownBuiltin(other.to_string())),
        };
        Ok(table)
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, CayleyError> {
    token
        .parse::<usize>()
        .map_err(|_| CayleyError::MalformedInteger {
            line,
            token: token.to_string(),
        })
}

fn cyclic(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |i, j| (i + j - 2) % n + 1)
}

// Maps {1,2} -> {1,2} listed as (image of 1, image of 2) in lexicographic
// order; s_i s_j applies s_i first, then s_j.
fn full_transformation_monoid_2() -> CayleyTable {
    let maps: Vec<[usize; 2]> = (1..=2).flat_map(|a| (1..=2).map(move |b| [a, b])).collect();
    CayleyTable::from_fn(maps.len(), |i, j| {
        let (f, g) = (maps[i - 1], maps[j - 1]);
        let composed = [g[f[0] - 1], g[f[1] - 1]];
        maps.iter().position(|m| *m == composed).unwrap() + 1
    })
}

impl fmt::Display for CayleyTable {
    /// Writes the Cayley text format accepted by [`CayleyTable::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
