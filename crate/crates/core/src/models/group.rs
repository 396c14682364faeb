use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Diagnostics from [`validate_group`], with witness indices.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry ({row}, {col}) = {value} is not an element index below {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NonAssociative {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("expected {expected} element names, got {found}")]
    NameCount { expected: usize, found: usize },
}

/// A finite group given by its Cayley table. Elements are indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Checks the group axioms on a multiplication table; `rows[a][b] = a·b`.
///
/// Checks run in the order: shape, identity, associativity, inverses. The
/// associativity witness is the lexicographically first failing triple.
pub fn validate_group(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let order = rows.len();
    if order == 0 {
        return Err(GroupError::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != order {
            return Err(GroupError::NotSquare {
                row,
                len: r.len(),
                order,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(GroupError::EntryOutOfRange {
                row,
                col,
                value,
                order,
            });
        }
    }
    let table: Vec<usize> = rows.iter().flatten().copied().collect();
    let mul = |a: usize, b: usize| table[a * order + b];

    let identity = (0..order)
        .find(|&e| (0..order).all(|g| mul(e, g) == g && mul(g, e) == g))
        .ok_or(GroupError::NoIdentity)?;

    for a in 0..order {
        for b in 0..order {
            let ab = mul(a, b);
            for c in 0..order {
                let left = mul(ab, c);
                let right = mul(a, mul(b, c));
                if left != right {
                    return Err(GroupError::NonAssociative {
                        a,
                        b,
                        c,
                        left,
                        right,
                    });
                }
            }
        }
    }

    let mut inverses = Vec::with_capacity(order);
    for element in 0..order {
        let inv = (0..order)
            .find(|&h| mul(element, h) == identity && mul(h, element) == identity)
            .ok_or(GroupError::NoInverse { element })?;
        inverses.push(inv);
    }

    Ok(FiniteGroup {
        order,
        table,
        identity,
        inverses,
        names: None,
    })
}

impl FiniteGroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        validate_group(rows)
    }

    /// Builds the table from a closed set of elements and their product.
    pub(crate) fn from_elements<T: PartialEq>(
        elements: &[T],
        product: impl Fn(&T, &T) -> T,
    ) -> Result<Self, GroupError> {
        let rows: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let ab = product(a, b);
                        elements
                            .iter()
                            .position(|e| *e == ab)
                            .unwrap_or(elements.len())
                    })
                    .collect()
            })
            .collect();
        validate_group(&rows)
    }

    pub fn with_names<S: Into<String>>(
        mut self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, GroupError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.order {
            return Err(GroupError::NameCount {
                expected: self.order,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order)
    }
}
