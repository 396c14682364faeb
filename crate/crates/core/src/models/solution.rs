//! Yang-Baxter maps materialized as total lookup tables.

use serde::Serialize;
use thiserror::Error;

use crate::wada::{derived_coefficients, verify_braid_relations, RelationReport, WadaPair};

use super::eval::{eval_letters, CompiledElement};
use super::group::FiniteGroup;
use super::module::{GModule, Matrix};

/// Largest carrier for which a table is materialized (`|S|²` entries).
pub const MAX_CARRIER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("pair {} fails the braid relations; pass the unchecked override to build anyway", .0.pair)]
    NotBraid(Box<RelationReport>),
    #[error("carrier of size {size} exceeds the table limit {MAX_CARRIER}")]
    CarrierTooLarge { size: u128 },
}

/// A total map `S² → S²` on `S = {0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMap {
    size: usize,
    table: Vec<(u32, u32)>,
}

impl SquareMap {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> (usize, usize)) -> Self {
        assert!(size <= MAX_CARRIER, "carrier too large for a table");
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                let (c, d) = f(a, b);
                assert!(c < size && d < size, "image ({c}, {d}) outside the carrier");
                table.push((c as u32, d as u32));
            }
        }
        SquareMap { size, table }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |a, b| (a, b))
    }

    pub fn flip(size: usize) -> Self {
        Self::from_fn(size, |a, b| (b, a))
    }

    pub fn constant(size: usize, value: (usize, usize)) -> Self {
        Self::from_fn(size, |_, _| value)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let (c, d) = self.table[a * self.size + b];
        (c as usize, d as usize)
    }

    /// Overwrites one entry; used to build perturbed tables.
    pub fn set(&mut self, a: usize, b: usize, image: (usize, usize)) {
        assert!(image.0 < self.size && image.1 < self.size);
        self.table[a * self.size + b] = (image.0 as u32, image.1 as u32);
    }
}

/// `R(x, y) = (u(x, y), v(x, y))` on `G²`. Refuses pairs failing the braid
/// relations.
pub fn base_solution(p: &WadaPair, group: &FiniteGroup) -> Result<SquareMap, SolutionError> {
    braid_gate(p)?;
    base_solution_unchecked(p, group)
}

pub fn base_solution_unchecked(
    p: &WadaPair,
    group: &FiniteGroup,
) -> Result<SquareMap, SolutionError> {
    check_size(group.order() as u128)?;
    Ok(SquareMap::from_fn(group.order(), |x, y| {
        let assign = [x, y];
        (
            eval_letters(p.u.letters(), &assign, group),
            eval_letters(p.v.letters(), &assign, group),
        )
    }))
}

fn braid_gate(p: &WadaPair) -> Result<(), SolutionError> {
    let report = verify_braid_relations(p);
    if report.all_hold() {
        Ok(())
    } else {
        Err(SolutionError::NotBraid(Box::new(report)))
    }
}

fn check_size(size: u128) -> Result<(), SolutionError> {
    if size > MAX_CARRIER as u128 {
        Err(SolutionError::CarrierTooLarge { size })
    } else {
        Ok(())
    }
}

/// An element `(g, a)` of `G × V`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColoredPoint {
    pub g: usize,
    pub vec: Vec<u64>,
}

/// Indexing of `G × (ℤ/m)^k`: `(g, a)` is `g·m^k + Σ aᵢ m^(k-1-i)`, so index
/// order is lexicographic order on `(g, a₀, …, a_{k-1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Carrier {
    pub order: usize,
    pub modulus: u64,
    pub rank: usize,
}

impl Carrier {
    pub fn new(order: usize, modulus: u64, rank: usize) -> Result<Self, SolutionError> {
        let size = (order as u128).saturating_mul((modulus as u128).saturating_pow(rank as u32));
        check_size(size)?;
        Ok(Carrier {
            order,
            modulus,
            rank,
        })
    }

    pub fn vectors(&self) -> usize {
        (self.modulus as usize).pow(self.rank as u32)
    }

    pub fn size(&self) -> usize {
        self.order * self.vectors()
    }

    pub fn encode(&self, g: usize, vec: &[u64]) -> usize {
        g * self.vectors() + self.encode_vec(vec)
    }

    pub fn encode_vec(&self, vec: &[u64]) -> usize {
        vec.iter()
            .fold(0usize, |acc, &x| acc * self.modulus as usize + x as usize)
    }

    pub fn decode_vec(&self, mut index: usize) -> Vec<u64> {
        let m = self.modulus as usize;
        let mut out = vec![0u64; self.rank];
        for slot in out.iter_mut().rev() {
            *slot = (index % m) as u64;
            index /= m;
        }
        out
    }

    pub fn decode(&self, index: usize) -> ColoredPoint {
        ColoredPoint {
            g: index / self.vectors(),
            vec: self.decode_vec(index % self.vectors()),
        }
    }
}

/// Per-`(g, h)` tables of the base words and the four coefficient matrices.
#[derive(Debug, Clone)]
pub(crate) struct CoefficientTables {
    order: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// `[u1, u2, v1, v2]`, each indexed by `g·|G| + h`.
    pub mats: [Vec<Matrix>; 4],
}

impl CoefficientTables {
    pub fn new(p: &WadaPair, group: &FiniteGroup, module: &GModule) -> Self {
        let coeffs = derived_coefficients(p);
        let compiled = [&coeffs.u1, &coeffs.u2, &coeffs.v1, &coeffs.v2]
            .map(|c| CompiledElement::new(c, module));
        let n = group.order();
        let mut u = Vec::with_capacity(n * n);
        let mut v = Vec::with_capacity(n * n);
        let mut mats: [Vec<Matrix>; 4] = Default::default();
        for g in 0..n {
            for h in 0..n {
                let assign = [g, h];
                u.push(eval_letters(p.u.letters(), &assign, group));
                v.push(eval_letters(p.v.letters(), &assign, group));
                for (slot, c) in mats.iter_mut().zip(&compiled) {
                    slot.push(c.matrix(&assign, group, module));
                }
            }
        }
        CoefficientTables {
            order: n,
            u,
            v,
            mats,
        }
    }

    #[inline]
    pub fn idx(&self, g: usize, h: usize) -> usize {
        g * self.order + h
    }

    pub fn u1(&self, g: usize, h: usize) -> &Matrix {
        &self.mats[0][self.idx(g, h)]
    }
    pub fn u2(&self, g: usize, h: usize) -> &Matrix {
        &self.mats[1][self.idx(g, h)]
    }
    pub fn v1(&self, g: usize, h: usize) -> &Matrix {
        &self.mats[2][self.idx(g, h)]
    }
    pub fn v2(&self, g: usize, h: usize) -> &Matrix {
        &self.mats[3][self.idx(g, h)]
    }
}

/// `R((x,a),(y,b)) = ((u, u1·a + u2·b), (v, v1·a + v2·b))` on `(G × V)²`.
#[derive(Debug, Clone)]
pub struct ExtendedSolution {
    pub carrier: Carrier,
    pub map: SquareMap,
    pub pair: WadaPair,
    pub group: FiniteGroup,
    pub module: GModule,
    pub model: String,
}

pub fn extended_solution(
    p: &WadaPair,
    group: &FiniteGroup,
    module: &GModule,
    model: impl Into<String>,
) -> Result<ExtendedSolution, SolutionError> {
    braid_gate(p)?;
    extended_solution_unchecked(p, group, module, model)
}

pub fn extended_solution_unchecked(
    p: &WadaPair,
    group: &FiniteGroup,
    module: &GModule,
    model: impl Into<String>,
) -> Result<ExtendedSolution, SolutionError> {
    let carrier = Carrier::new(group.order(), module.modulus(), module.rank())?;
    let tables = CoefficientTables::new(p, group, module);
    let vectors: Vec<Vec<u64>> = (0..carrier.vectors())
        .map(|i| carrier.decode_vec(i))
        .collect();
    let nv = carrier.vectors();

    let map = SquareMap::from_fn(carrier.size(), |s, t| {
        let (x, a) = (s / nv, &vectors[s % nv]);
        let (y, b) = (t / nv, &vectors[t % nv]);
        let i = tables.idx(x, y);
        let first = module.add_vec(
            &module.mat_vec(tables.u1(x, y), a),
            &module.mat_vec(tables.u2(x, y), b),
        );
        let second = module.add_vec(
            &module.mat_vec(tables.v1(x, y), a),
            &module.mat_vec(tables.v2(x, y), b),
        );
        (
            carrier.encode(tables.u[i], &first),
            carrier.encode(tables.v[i], &second),
        )
    });

    Ok(ExtendedSolution {
        carrier,
        map,
        pair: p.clone(),
        group: group.clone(),
        module: module.clone(),
        model: model.into(),
    })
}

impl ExtendedSolution {
    pub(crate) fn tables(&self) -> CoefficientTables {
        CoefficientTables::new(&self.pair, &self.group, &self.module)
    }

    pub fn apply(&self, p: &ColoredPoint, q: &ColoredPoint) -> (ColoredPoint, ColoredPoint) {
        let (s, t) = self.map.apply(
            self.carrier.encode(p.g, &p.vec),
            self.carrier.encode(q.g, &q.vec),
        );
        (self.carrier.decode(s), self.carrier.decode(t))
    }
}
