//! Wada pairs `(u, v)` and the checks built on them.
//!
//! A pair of words in `F(x, y)` assigns to each braid generator the free group
//! automorphism `(xᵢ, xᵢ₊₁) ↦ (u(xᵢ, xᵢ₊₁), v(xᵢ, xᵢ₊₁))`. The braid relation
//! holds exactly when three word equations over `(x, y, z)` hold. Differentiating
//! them with the Fox chain rule gives nine identities in `ℤF(x, y, z)` among the
//! derived coefficients `u1, u2, v1, v2`.

pub mod template;

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::foxcalc::fox_derivative;
use crate::freegroup::{parse_word, Alphabet, FreeWord, ParseError};
use crate::groupring::GroupRingElement;

use template::{Coefficient, SumTemplate, WordTemplate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("pair words must be over (x, y); got {0}")]
    WrongAlphabet(String),
    #[error("in u: {0}")]
    ParseU(ParseError),
    #[error("in v: {0}")]
    ParseV(ParseError),
    #[error("expected \"u,v\" with exactly one comma")]
    MissingComma,
}

/// Words `u, v ∈ F(x, y)` defining a candidate braid representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WadaPair {
    pub u: FreeWord,
    pub v: FreeWord,
    pub label: Option<String>,
}

impl WadaPair {
    pub fn new(u: FreeWord, v: FreeWord) -> Result<Self, PairError> {
        let xy = Alphabet::rank2();
        for w in [&u, &v] {
            if **w.alphabet() != *xy {
                return Err(PairError::WrongAlphabet(w.alphabet().to_string()));
            }
        }
        Ok(WadaPair { u, v, label: None })
    }

    pub fn parse(u: &str, v: &str) -> Result<Self, PairError> {
        let xy = Alphabet::rank2();
        let u = parse_word(u, &xy).map_err(PairError::ParseU)?;
        let v = parse_word(v, &xy).map_err(PairError::ParseV)?;
        WadaPair::new(u, v)
    }

    /// Parses the `"u,v"` argument form.
    pub fn parse_joined(text: &str) -> Result<Self, PairError> {
        let mut parts = text.split(',');
        match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => WadaPair::parse(u, v).map_err(|e| match e {
                // offsets relative to the joined text
                PairError::ParseV(mut p) => {
                    p.offset += u.len() + 1;
                    PairError::ParseV(p)
                }
                other => other,
            }),
            _ => Err(PairError::MissingComma),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `(u, v)` rendered in the word grammar, with the label if present.
    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => format!("{l} ({}, {})", self.u, self.v),
            None => format!("({}, {})", self.u, self.v),
        }
    }
}

impl fmt::Display for WadaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.v)
    }
}

/// The four Fox derivatives of a pair, elements of `ℤF(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedCoefficients {
    pub u1: GroupRingElement,
    pub u2: GroupRingElement,
    pub v1: GroupRingElement,
    pub v2: GroupRingElement,
}

impl DerivedCoefficients {
    pub fn get(&self, c: Coefficient) -> &GroupRingElement {
        match c {
            Coefficient::U1 => &self.u1,
            Coefficient::U2 => &self.u2,
            Coefficient::V1 => &self.v1,
            Coefficient::V2 => &self.v2,
        }
    }
}

pub fn derived_coefficients(p: &WadaPair) -> DerivedCoefficients {
    let d = |w: &FreeWord, i| fox_derivative(w, i).expect("rank-2 word");
    DerivedCoefficients {
        u1: d(&p.u, 0),
        u2: d(&p.u, 1),
        v1: d(&p.v, 0),
        v2: d(&p.v, 1),
    }
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationEntry {
    pub id: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl RelationEntry {
    fn compare<T: PartialEq + fmt::Display>(id: &str, lhs: &T, rhs: &T) -> Self {
        RelationEntry {
            id: id.to_string(),
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.holds {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub pair: String,
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn entry(&self, id: &str) -> Option<&RelationEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// One tab-separated line per identity: id, verdict, lhs, rhs.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.id,
                e.verdict(),
                e.lhs,
                e.rhs
            ));
        }
        out
    }
}

/// Equations for the braid relation, as `(id, lhs, rhs)` word templates.
pub const BRAID_EQUATIONS: [(&str, &str, &str); 3] = [
    ("(1)", "u(u(x,y), u(v(x,y),z))", "u(x, u(y,z))"),
    ("(2)", "v(u(x,y), u(v(x,y),z))", "u(v(x,u(y,z)), v(y,z))"),
    ("(3)", "v(v(x,y), z)", "v(v(x,u(y,z)), v(y,z))"),
];

/// The nine chain-rule identities: the `x`, `y`, `z` derivatives of equations
/// (1), (2), (3) in turn.
pub const LEMMA1_IDENTITIES: [(&str, &str, &str); 9] = [
    (
        "L1-1",
        "u1(u(x,y), u(v(x,y),z)) u1(x,y) + u2(u(x,y), u(v(x,y),z)) u1(v(x,y),z) v1(x,y)",
        "u1(x, u(y,z))",
    ),
    (
        "L1-2",
        "u1(u(x,y), u(v(x,y),z)) u2(x,y) + u2(u(x,y), u(v(x,y),z)) u1(v(x,y),z) v2(x,y)",
        "u2(x, u(y,z)) u1(y,z)",
    ),
    (
        "L1-3",
        "u2(u(x,y), u(v(x,y),z)) u2(v(x,y),z)",
        "u2(x, u(y,z)) u2(y,z)",
    ),
    (
        "L1-4",
        "v1(u(x,y), u(v(x,y),z)) u1(x,y) + v2(u(x,y), u(v(x,y),z)) u1(v(x,y),z) v1(x,y)",
        "u1(v(x,u(y,z)), v(y,z)) v1(x, u(y,z))",
    ),
    (
        "L1-5",
        "v1(u(x,y), u(v(x,y),z)) u2(x,y) + v2(u(x,y), u(v(x,y),z)) u1(v(x,y),z) v2(x,y)",
        "u1(v(x,u(y,z)), v(y,z)) v2(x, u(y,z)) u1(y,z) + u2(v(x,u(y,z)), v(y,z)) v1(y,z)",
    ),
    (
        "L1-6",
        "v2(u(x,y), u(v(x,y),z)) u2(v(x,y),z)",
        "u1(v(x,u(y,z)), v(y,z)) v2(x, u(y,z)) u2(y,z) + u2(v(x,u(y,z)), v(y,z)) v2(y,z)",
    ),
    (
        "L1-7",
        "v1(v(x,y), z) v1(x,y)",
        "v1(v(x,u(y,z)), v(y,z)) v1(x, u(y,z))",
    ),
    (
        "L1-8",
        "v1(v(x,y), z) v2(x,y)",
        "v1(v(x,u(y,z)), v(y,z)) v2(x, u(y,z)) u1(y,z) + v2(v(x,u(y,z)), v(y,z)) v1(y,z)",
    ),
    (
        "L1-9",
        "v2(v(x,y), z)",
        "v1(v(x,u(y,z)), v(y,z)) v2(x, u(y,z)) u2(y,z) + v2(v(x,u(y,z)), v(y,z)) v2(y,z)",
    ),
];

/// Self-distributivity of `a * b := v(a, b)`.
pub const SELF_DISTRIBUTIVITY: (&str, &str, &str) = ("SD", "v(v(x,y), z)", "v(v(x,z), v(y,z))");

type WordRow = (String, WordTemplate, WordTemplate);
type SumRow = (String, SumTemplate, SumTemplate);

fn braid_rows() -> &'static [WordRow] {
    static ROWS: OnceLock<Vec<WordRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        BRAID_EQUATIONS
            .iter()
            .map(|(id, l, r)| {
                (
                    id.to_string(),
                    WordTemplate::parse(l).unwrap(),
                    WordTemplate::parse(r).unwrap(),
                )
            })
            .collect()
    })
}

fn lemma1_rows() -> &'static [SumRow] {
    static ROWS: OnceLock<Vec<SumRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        LEMMA1_IDENTITIES
            .iter()
            .map(|(id, l, r)| {
                (
                    id.to_string(),
                    SumTemplate::parse(l).unwrap(),
                    SumTemplate::parse(r).unwrap(),
                )
            })
            .collect()
    })
}

/// Evaluates equations (1)–(3) as reduced words over `(x, y, z)`.
pub fn verify_braid_relations(p: &WadaPair) -> RelationReport {
    let entries = braid_rows()
        .iter()
        .map(|(id, l, r)| RelationEntry::compare(id, &l.eval(p), &r.eval(p)))
        .collect();
    RelationReport {
        pair: p.display_name(),
        entries,
    }
}

fn lemma1_entries(p: &WadaPair, ids: &[&str]) -> Vec<RelationEntry> {
    let coeffs = derived_coefficients(p);
    lemma1_rows()
        .par_iter()
        .filter(|(id, _, _)| ids.is_empty() || ids.contains(&id.as_str()))
        .map(|(id, l, r)| RelationEntry::compare(id, &l.eval(p, &coeffs), &r.eval(p, &coeffs)))
        .collect()
}

/// Evaluates the nine chain-rule identities in `ℤF(x, y, z)`.
pub fn verify_lemma1(p: &WadaPair) -> RelationReport {
    RelationReport {
        pair: p.display_name(),
        entries: lemma1_entries(p, &[]),
    }
}

/// Braid equations followed by the nine identities.
pub fn verify_all(p: &WadaPair) -> RelationReport {
    let mut report = verify_braid_relations(p);
    report.entries.extend(verify_lemma1(p).entries);
    report
}

/// Outcome of the rack check for `a * b := v(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RackReport {
    pub pair: String,
    pub u: String,
    /// Whether `u(x, y) = y`.
    pub u_is_y: bool,
    /// `η = v1`.
    pub eta: String,
    /// `τ = v2`.
    pub tau: String,
    /// Self-distributivity, then identities L1-7..L1-9 evaluated with `u`
    /// replaced by the projection `(a, b) ↦ b`, so `u1 = 0` and `u2 = 1`.
    pub relations: RelationReport,
}

impl RackReport {
    pub fn self_distributive(&self) -> bool {
        self.relations.entries[0].holds
    }

    pub fn all_hold(&self) -> bool {
        self.relations.all_hold()
    }

    pub fn render_text(&self) -> String {
        let mut out = self.relations.render_text();
        out.push_str(&format!(
            "u=y\t{}\t{}\ty\n",
            if self.u_is_y { "YES" } else { "NO" },
            self.u
        ));
        out.push_str(&format!("eta=v1\t{}\n", self.eta));
        out.push_str(&format!("tau=v2\t{}\n", self.tau));
        out
    }
}

pub fn rack_check(p: &WadaPair) -> RackReport {
    let (id, l, r) = SELF_DISTRIBUTIVITY;
    let lhs = WordTemplate::parse(l).unwrap().eval(p);
    let rhs = WordTemplate::parse(r).unwrap().eval(p);
    let mut entries = vec![RelationEntry::compare(id, &lhs, &rhs)];

    let xy = Alphabet::rank2();
    let projected = WadaPair {
        u: FreeWord::generator(&xy, 1).unwrap(),
        v: p.v.clone(),
        label: None,
    };
    for mut e in lemma1_entries(&projected, &["L1-7", "L1-8", "L1-9"]) {
        e.id = format!("rack-{}", e.id);
        entries.push(e);
    }

    let coeffs = derived_coefficients(p);
    RackReport {
        pair: p.display_name(),
        u: p.u.to_string(),
        u_is_y: p.u == projected.u,
        eta: coeffs.v1.to_string(),
        tau: coeffs.v2.to_string(),
        relations: RelationReport {
            pair: p.display_name(),
            entries,
        },
    }
}

/// The classified list, with one conjugation pair `(y, yᵐxy⁻ᵐ)` per `m`.
pub fn wada_catalog(m_range: RangeInclusive<i64>) -> Vec<WadaPair> {
    let xy: Arc<Alphabet> = Alphabet::rank2();
    let x = FreeWord::generator(&xy, 0).unwrap();
    let y = FreeWord::generator(&xy, 1).unwrap();
    let fixed = |u: &str, v: &str, label: &str| WadaPair::parse(u, v).unwrap().with_label(label);

    let mut out = vec![
        fixed("x", "y", "W1"),
        fixed("y^-1", "x", "W2"),
        fixed("y^-1", "x^-1", "W3"),
    ];
    for m in m_range {
        let v = y.pow(m).mul_same(&x).mul_same(&y.pow(-m));
        out.push(
            WadaPair::new(y.clone(), v)
                .unwrap()
                .with_label(format!("W4[m={m}]")),
        );
    }
    out.push(fixed("y", "y x^-1 y", "W5"));
    out.push(fixed("y^-1", "y x y", "W6"));
    out.push(fixed("x^-1 y^-1 x", "y^2 x", "W7"));
    out
}
