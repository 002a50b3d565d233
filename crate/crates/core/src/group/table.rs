use std::fmt;

use crate::error::{Error, Result};

/// First violated group axiom, with 1-based witnessing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Shape { expected: usize, row: usize, found: usize },
    OutOfRange { row: usize, col: usize, value: usize },
    MissingIdentity { index: usize },
    NotLatinRow { row: usize },
    NotLatinColumn { col: usize },
    MissingInverse { index: usize },
    NotAssociative { i: usize, j: usize, k: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Shape { expected, row, found } => {
                write!(f, "row {row} has {found} entries, expected {expected}")
            }
            Diagnostic::OutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            Diagnostic::MissingIdentity { index } => {
                write!(f, "index 1 does not act as identity on index {index}")
            }
            Diagnostic::NotLatinRow { row } => write!(f, "row {row} is not a permutation"),
            Diagnostic::NotLatinColumn { col } => write!(f, "column {col} is not a permutation"),
            Diagnostic::MissingInverse { index } => write!(f, "index {index} has no inverse"),
            Diagnostic::NotAssociative { i, j, k } => {
                write!(f, "associativity fails at ({i},{j},{k})")
            }
        }
    }
}

/// A validated finite group given by its multiplication table.
///
/// The API uses 0-based indices: index 0 is the identity. Files and
/// diagnostics use the 1-based convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates a raw 1-based table.
    pub fn validate(name: &str, rows: &[Vec<usize>]) -> std::result::Result<Self, Diagnostic> {
        let d = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Diagnostic::Shape { expected: d, row: r + 1, found: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > d {
                    return Err(Diagnostic::OutOfRange { row: r + 1, col: c + 1, value: v });
                }
            }
        }
        let t = |i: usize, j: usize| rows[i][j] - 1;
        for i in 0..d {
            if t(0, i) != i || t(i, 0) != i {
                return Err(Diagnostic::MissingIdentity { index: i + 1 });
            }
        }
        for i in 0..d {
            let mut seen = vec![false; d];
            for j in 0..d {
                if std::mem::replace(&mut seen[t(i, j)], true) {
                    return Err(Diagnostic::NotLatinRow { row: i + 1 });
                }
            }
        }
        for j in 0..d {
            let mut seen = vec![false; d];
            for i in 0..d {
                if std::mem::replace(&mut seen[t(i, j)], true) {
                    return Err(Diagnostic::NotLatinColumn { col: j + 1 });
                }
            }
        }
        let inverse = (0..d)
            .map(|i| {
                (0..d)
                    .find(|&r| t(i, r) == 0 && t(r, i) == 0)
                    .ok_or(Diagnostic::MissingInverse { index: i + 1 })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if t(t(i, j), k) != t(i, t(j, k)) {
                        return Err(Diagnostic::NotAssociative { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(GroupTable {
            name: name.to_string(),
            order: d,
            table: rows.iter().flat_map(|r| r.iter().map(|v| v - 1)).collect(),
            inverse,
        })
    }

    /// Parses the `.grp` text format and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group file".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (name, d) = match words.as_slice() {
            ["group", name, "order", d] => (
                *name,
                d.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad order `{d}`")))?,
            ),
            _ => {
                return Err(Error::Parse(format!(
                    "expected `group <name> order <d>`, got `{header}`"
                )))
            }
        };
        if d == 0 {
            return Err(Error::Parse("group order must be positive".into()));
        }
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|v| {
                        v.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad table entry `{v}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != d {
            return Err(Error::Parse(format!("expected {d} table rows, found {}", rows.len())));
        }
        GroupTable::validate(name, &rows).map_err(Error::InvalidGroup)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("group {} order {}\n", self.name, self.order);
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|j| (self.mul(i, j) + 1).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Index of `sigma_i sigma_j` (0-based).
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|i| self.element_order(i) == self.order)
    }

    /// Rows as 1-based vectors, the form [`GroupTable::validate`] accepts.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j) + 1).collect())
            .collect()
    }
}
