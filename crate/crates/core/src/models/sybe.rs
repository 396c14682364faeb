//! Exhaustive checks of the set-theoretic Yang-Baxter equation
//! `(R×1)(1×R)(R×1) = (1×R)(R×1)(1×R)` on finite sets.
//!
//! Triples are scanned in lexicographic order and the first failure is
//! reported. The scan is split over the first coordinate across worker
//! threads; the coordinator keeps the smallest failing first coordinate, so
//! the witness does not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::module::GModule;
use super::solution::{CoefficientTables, ExtendedSolution, SquareMap};

/// Default cap on `|S|³` triple evaluations.
pub const DEFAULT_TRIPLE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(
        "{triples} triple evaluations exceed the budget of {budget}; raise the budget to proceed"
    )]
    BudgetExceeded { triples: u128, budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SybeWitness {
    pub input: [usize; 3],
    /// `(R×1)(1×R)(R×1)` applied to `input`.
    pub lhs: [usize; 3],
    /// `(1×R)(R×1)(1×R)` applied to `input`.
    pub rhs: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum SybeVerdict {
    Pass { triples: u64 },
    Fail { triples: u64, witness: SybeWitness },
}

impl SybeVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SybeVerdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&SybeWitness> {
        match self {
            SybeVerdict::Fail { witness, .. } => Some(witness),
            SybeVerdict::Pass { .. } => None,
        }
    }
}

/// Both sides of the equation on one triple.
#[inline]
pub fn braid_sides(r: &SquareMap, a: usize, b: usize, c: usize) -> ([usize; 3], [usize; 3]) {
    // (R×1) first, then (1×R), then (R×1)
    let (a1, b1) = r.apply(a, b);
    let (b2, c1) = r.apply(b1, c);
    let (a2, b3) = r.apply(a1, b2);
    // (1×R) first, then (R×1), then (1×R)
    let (q1, r1) = r.apply(b, c);
    let (p1, q2) = r.apply(a, q1);
    let (q3, r2) = r.apply(q2, r1);
    ([a2, b3, c1], [p1, q3, r2])
}

fn check_budget(size: usize, budget: u64) -> Result<u64, CheckError> {
    let triples = (size as u128).pow(3);
    if triples > budget as u128 {
        return Err(CheckError::BudgetExceeded { triples, budget });
    }
    Ok(triples as u64)
}

fn first_failure_from(r: &SquareMap, a: usize) -> Option<SybeWitness> {
    let n = r.size();
    for b in 0..n {
        for c in 0..n {
            let (lhs, rhs) = braid_sides(r, a, b, c);
            if lhs != rhs {
                return Some(SybeWitness {
                    input: [a, b, c],
                    lhs,
                    rhs,
                });
            }
        }
    }
    None
}

/// Checks every triple of `S³`, refusing when `|S|³` exceeds `budget`.
pub fn check_sybe(r: &SquareMap, budget: u64) -> Result<SybeVerdict, CheckError> {
    let triples = check_budget(r.size(), budget)?;
    let failure = (0..r.size())
        .into_par_iter()
        .find_map_first(|a| first_failure_from(r, a));
    Ok(match failure {
        None => SybeVerdict::Pass { triples },
        Some(witness) => SybeVerdict::Fail { triples, witness },
    })
}

/// Counts from recomputing the second components `A, B, C` (left side) and
/// `A′, B′, C′` (right side) by their closed formulas on every triple.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub triples: u64,
    /// Triples where the group components of the two sides differ.
    pub group_mismatches: u64,
    pub a_mismatches: u64,
    pub b_mismatches: u64,
    pub c_mismatches: u64,
    /// Triples where the formulas and the table disagree on whether the
    /// equation holds.
    pub disagreements: u64,
    /// Triples where the table's left side differs from the formula values.
    pub table_mismatches: u64,
    pub first_mismatch: Option<[usize; 3]>,
}

impl DecompositionReport {
    /// `A = A′`, `B = B′`, `C = C′` and the group components agree everywhere.
    pub fn all_equal(&self) -> bool {
        self.group_mismatches == 0
            && self.a_mismatches == 0
            && self.b_mismatches == 0
            && self.c_mismatches == 0
    }

    fn merge(mut self, other: Self) -> Self {
        self.triples += other.triples;
        self.group_mismatches += other.group_mismatches;
        self.a_mismatches += other.a_mismatches;
        self.b_mismatches += other.b_mismatches;
        self.c_mismatches += other.c_mismatches;
        self.disagreements += other.disagreements;
        self.table_mismatches += other.table_mismatches;
        self.first_mismatch = match (self.first_mismatch, other.first_mismatch) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerboseVerdict {
    pub verdict: SybeVerdict,
    pub decomposition: DecompositionReport,
}

/// Second components of both sides for one triple, from the closed formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondFactors {
    pub group_lhs: [usize; 3],
    pub group_rhs: [usize; 3],
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub a_prime: Vec<u64>,
    pub b_prime: Vec<u64>,
    pub c_prime: Vec<u64>,
}

pub(crate) fn second_factors(
    t: &CoefficientTables,
    module: &GModule,
    (x, y, z): (usize, usize, usize),
    (va, vb, vc): (&[u64], &[u64], &[u64]),
) -> SecondFactors {
    let mv = |m: &Vec<u64>, v: &[u64]| module.mat_vec(m, v);
    let add = |p: &[u64], q: &[u64]| module.add_vec(p, q);
    let u = |g, h| t.u[t.idx(g, h)];
    let v = |g, h| t.v[t.idx(g, h)];

    // left side
    let uxy = u(x, y);
    let vxy = v(x, y);
    let w = u(vxy, z);
    let first = add(&mv(t.u1(x, y), va), &mv(t.u2(x, y), vb));
    let beta = add(&mv(t.v1(x, y), va), &mv(t.v2(x, y), vb));
    let second = add(&mv(t.u1(vxy, z), &beta), &mv(t.u2(vxy, z), vc));
    let a = add(&mv(t.u1(uxy, w), &first), &mv(t.u2(uxy, w), &second));
    let b = add(&mv(t.v1(uxy, w), &first), &mv(t.v2(uxy, w), &second));
    let c = add(&mv(t.v1(vxy, z), &beta), &mv(t.v2(vxy, z), vc));

    // right side
    let uyz = u(y, z);
    let p = v(x, uyz);
    let q = v(y, z);
    let inner = add(&mv(t.u1(y, z), vb), &mv(t.u2(y, z), vc));
    let a_prime = add(&mv(t.u1(x, uyz), va), &mv(t.u2(x, uyz), &inner));
    let left = add(&mv(t.v1(x, uyz), va), &mv(t.v2(x, uyz), &inner));
    let right = add(&mv(t.v1(y, z), vb), &mv(t.v2(y, z), vc));
    let b_prime = add(&mv(t.u1(p, q), &left), &mv(t.u2(p, q), &right));
    let c_prime = add(&mv(t.v1(p, q), &left), &mv(t.v2(p, q), &right));

    SecondFactors {
        group_lhs: [u(uxy, w), v(uxy, w), v(vxy, z)],
        group_rhs: [u(x, uyz), u(p, q), v(p, q)],
        a,
        b,
        c,
        a_prime,
        b_prime,
        c_prime,
    }
}

/// [`check_sybe`] plus the per-triple `A = A′`, `B = B′`, `C = C′` comparison.
pub fn check_sybe_verbose(
    sol: &ExtendedSolution,
    budget: u64,
) -> Result<VerboseVerdict, CheckError> {
    let verdict = check_sybe(&sol.map, budget)?;
    let tables = sol.tables();
    let carrier = sol.carrier;
    let n = carrier.size();
    let points: Vec<_> = (0..n).map(|i| carrier.decode(i)).collect();

    let decomposition = (0..n)
        .into_par_iter()
        .map(|s0| {
            let mut rep = DecompositionReport::default();
            let p0 = &points[s0];
            for (s1, p1) in points.iter().enumerate() {
                for (s2, p2) in points.iter().enumerate() {
                    let f = second_factors(
                        &tables,
                        &sol.module,
                        (p0.g, p1.g, p2.g),
                        (&p0.vec, &p1.vec, &p2.vec),
                    );
                    let group_ok = f.group_lhs == f.group_rhs;
                    let a_ok = f.a == f.a_prime;
                    let b_ok = f.b == f.b_prime;
                    let c_ok = f.c == f.c_prime;
                    let formula_holds = group_ok && a_ok && b_ok && c_ok;

                    let (lhs, rhs) = braid_sides(&sol.map, s0, s1, s2);
                    let table_holds = lhs == rhs;
                    let formula_lhs = [
                        carrier.encode(f.group_lhs[0], &f.a),
                        carrier.encode(f.group_lhs[1], &f.b),
                        carrier.encode(f.group_lhs[2], &f.c),
                    ];

                    rep.triples += 1;
                    rep.group_mismatches += u64::from(!group_ok);
                    rep.a_mismatches += u64::from(!a_ok);
                    rep.b_mismatches += u64::from(!b_ok);
                    rep.c_mismatches += u64::from(!c_ok);
                    rep.disagreements += u64::from(formula_holds != table_holds);
                    rep.table_mismatches += u64::from(formula_lhs != lhs);
                    if !formula_holds && rep.first_mismatch.is_none() {
                        rep.first_mismatch = Some([s0, s1, s2]);
                    }
                }
            }
            rep
        })
        .reduce(DecompositionReport::default, DecompositionReport::merge);

    Ok(VerboseVerdict {
        verdict,
        decomposition,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Bijectivity {
    Bijective,
    /// Two inputs with the same image, the second being the first input
    /// (in lexicographic order) whose image was already taken.
    NotBijective {
        first: (usize, usize),
        second: (usize, usize),
        image: (usize, usize),
    },
}

impl Bijectivity {
    pub fn is_bijective(&self) -> bool {
        matches!(self, Bijectivity::Bijective)
    }
}

/// Whether `R` permutes `S²`. Informational only.
pub fn check_bijective(r: &SquareMap) -> Bijectivity {
    let n = r.size();
    let mut preimage: Vec<Option<(u32, u32)>> = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            let (c, d) = r.apply(a, b);
            let slot = &mut preimage[c * n + d];
            match *slot {
                Some((pa, pb)) => {
                    return Bijectivity::NotBijective {
                        first: (pa as usize, pb as usize),
                        second: (a, b),
                        image: (c, d),
                    }
                }
                None => *slot = Some((a as u32, b as u32)),
            }
        }
    }
    Bijectivity::Bijective
}
