use serde::Serialize;
use thiserror::Error;

use super::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ModuleError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("rank must be positive")]
    BadRank,
    #[error("expected one matrix per group element ({expected}), got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("matrix for element {element} has {found} entries, expected {expected}")]
    WrongShape {
        element: usize,
        expected: usize,
        found: usize,
    },
    #[error("the identity element {identity} does not act as the identity matrix")]
    IdentityNotTrivial { identity: usize },
    #[error("action is not a homomorphism: action({g})·action({h}) != action({g}·{h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("matrix for element {element} is not invertible mod m")]
    NotInvertible { element: usize },
}

/// Square matrices over `ℤ/m`, row-major.
pub type Matrix = Vec<u64>;

/// `(ℤ/m)^k` with a left action of a finite group by invertible matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    modulus: u64,
    rank: usize,
    action: Vec<Matrix>,
}

impl GModule {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    /// Number of vectors, `m^k`.
    pub fn size(&self) -> Option<usize> {
        usize::try_from(self.modulus)
            .ok()?
            .checked_pow(u32::try_from(self.rank).ok()?)
    }

    pub fn identity_matrix(&self) -> Matrix {
        identity_matrix(self.rank)
    }

    pub fn zero_matrix(&self) -> Matrix {
        vec![0; self.rank * self.rank]
    }

    pub fn mat_mul(&self, a: &[u64], b: &[u64]) -> Matrix {
        mat_mul(a, b, self.rank, self.modulus)
    }

    pub fn mat_vec(&self, a: &[u64], v: &[u64]) -> Vec<u64> {
        let k = self.rank;
        (0..k)
            .map(|i| {
                (0..k).fold(0u64, |acc, j| {
                    (acc + a[i * k + j] * v[j] % self.modulus) % self.modulus
                })
            })
            .collect()
    }

    /// `a += c · b` entrywise.
    pub fn axpy(&self, a: &mut [u64], c: u64, b: &[u64]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = (*x + c % self.modulus * y) % self.modulus;
        }
    }

    pub fn add_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + y) % self.modulus)
            .collect()
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }
}

pub(crate) fn identity_matrix(k: usize) -> Matrix {
    let mut m = vec![0; k * k];
    for i in 0..k {
        m[i * k + i] = 1;
    }
    m
}

fn mat_mul(a: &[u64], b: &[u64], k: usize, modulus: u64) -> Matrix {
    let mut out = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            out[i * k + j] = (0..k).fold(0u64, |acc, l| {
                (acc + a[i * k + l] * b[l * k + j] % modulus) % modulus
            });
        }
    }
    out
}

/// Validates a matrix action of `group` on `(ℤ/modulus)^rank`.
///
/// Entries are taken mod `modulus`, so negative integers are accepted.
/// Invertibility is checked by verifying `action(g)·action(g⁻¹) = I`.
pub fn validate_module(
    group: &FiniteGroup,
    modulus: u64,
    rank: usize,
    matrices: &[Vec<i64>],
) -> Result<GModule, ModuleError> {
    if modulus < 2 || modulus > u32::MAX as u64 {
        return Err(ModuleError::BadModulus(modulus));
    }
    if rank == 0 {
        return Err(ModuleError::BadRank);
    }
    if matrices.len() != group.order() {
        return Err(ModuleError::WrongCount {
            expected: group.order(),
            found: matrices.len(),
        });
    }
    let mut action = Vec::with_capacity(matrices.len());
    for (element, m) in matrices.iter().enumerate() {
        if m.len() != rank * rank {
            return Err(ModuleError::WrongShape {
                element,
                expected: rank * rank,
                found: m.len(),
            });
        }
        action.push(
            m.iter()
                .map(|&x| x.rem_euclid(modulus as i64) as u64)
                .collect::<Matrix>(),
        );
    }
    let id = identity_matrix(rank);
    if action[group.identity()] != id {
        return Err(ModuleError::IdentityNotTrivial {
            identity: group.identity(),
        });
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            if mat_mul(&action[g], &action[h], rank, modulus) != action[group.mul(g, h)] {
                return Err(ModuleError::NotHomomorphism { g, h });
            }
        }
    }
    for element in 0..group.order() {
        let inv = &action[group.inv(element)];
        if mat_mul(&action[element], inv, rank, modulus) != id
            || mat_mul(inv, &action[element], rank, modulus) != id
        {
            return Err(ModuleError::NotInvertible { element });
        }
    }
    Ok(GModule {
        modulus,
        rank,
        action,
    })
}
