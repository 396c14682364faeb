//! Evaluation of words and group ring elements in a finite model.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::freegroup::{FreeWord, Letter};
use crate::groupring::GroupRingElement;

use super::group::FiniteGroup;
use super::module::{GModule, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment covers {found} generators, alphabet has {expected}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assigned element {0} is not in the group")]
    NotAnElement(usize),
    #[error("vector has {found} entries, module rank is {expected}")]
    VectorLength { expected: usize, found: usize },
}

fn check_assignment(rank: usize, assign: &[usize], group: &FiniteGroup) -> Result<(), EvalError> {
    if assign.len() != rank {
        return Err(EvalError::AssignmentLength {
            expected: rank,
            found: assign.len(),
        });
    }
    match assign.iter().find(|&&g| g >= group.order()) {
        Some(&g) => Err(EvalError::NotAnElement(g)),
        None => Ok(()),
    }
}

pub(crate) fn eval_letters(letters: &[Letter], assign: &[usize], group: &FiniteGroup) -> usize {
    letters.iter().fold(group.identity(), |acc, l| {
        let g = assign[l.generator];
        group.mul(acc, if l.inverse { group.inv(g) } else { g })
    })
}

/// Image of `w` under the homomorphism sending generator `i` to `assign[i]`.
pub fn eval_word(w: &FreeWord, assign: &[usize], group: &FiniteGroup) -> Result<usize, EvalError> {
    check_assignment(w.alphabet().size(), assign, group)?;
    Ok(eval_letters(w.letters(), assign, group))
}

pub(crate) fn coefficient_mod(c: &BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    let r = ((c % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

/// A group ring element with coefficients reduced mod `m`, ready for repeated
/// evaluation under different assignments.
#[derive(Debug, Clone)]
pub struct CompiledElement {
    rank: usize,
    terms: Vec<(u64, Vec<Letter>)>,
}

impl CompiledElement {
    pub fn new(e: &GroupRingElement, module: &GModule) -> Self {
        CompiledElement {
            rank: e.alphabet().size(),
            terms: e
                .raw_terms()
                .map(|(w, c)| (coefficient_mod(c, module.modulus()), w.to_vec()))
                .filter(|(c, _)| *c != 0)
                .collect(),
        }
    }

    /// `Σ c · action(eval(w))`, the matrix by which the element acts.
    pub fn matrix(&self, assign: &[usize], group: &FiniteGroup, module: &GModule) -> Matrix {
        let mut out = module.zero_matrix();
        for (c, letters) in &self.terms {
            let g = eval_letters(letters, assign, group);
            module.axpy(&mut out, *c, module.action(g));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Acting matrix of `e` with generators assigned to group elements.
pub fn ring_matrix(
    e: &GroupRingElement,
    assign: &[usize],
    group: &FiniteGroup,
    module: &GModule,
) -> Result<Matrix, EvalError> {
    check_assignment(e.alphabet().size(), assign, group)?;
    Ok(CompiledElement::new(e, module).matrix(assign, group, module))
}

/// Left action of `e` on `vec`: `Σ coeff(w) · action(eval(w)) · vec (mod m)`.
pub fn apply_ring(
    e: &GroupRingElement,
    assign: &[usize],
    group: &FiniteGroup,
    module: &GModule,
    vec: &[u64],
) -> Result<Vec<u64>, EvalError> {
    if vec.len() != module.rank() {
        return Err(EvalError::VectorLength {
            expected: module.rank(),
            found: vec.len(),
        });
    }
    let m = ring_matrix(e, assign, group, module)?;
    let v: Vec<u64> = vec.iter().map(|x| x % module.modulus()).collect();
    Ok(module.mat_vec(&m, &v))
}
