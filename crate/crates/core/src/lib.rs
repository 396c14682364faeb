//! Set-theoretic Yang-Baxter solutions from free group automorphisms.
//!
//! A pair of words `(u, v)` in the free group `F(x, y)` that satisfies the
//! braid relation equations gives a map `R(x, y) = (u(x, y), v(x, y))` on any
//! group. Taking Fox derivatives of `u` and `v` produces four group ring
//! coefficients, and with them `R` extends to `(G × V)²` for any `G`-module
//! `V`:
//!
//! ```text
//! R((x,a), (y,b)) = ((u(x,y), u1(x,y)·a + u2(x,y)·b), (v(x,y), v1(x,y)·a + v2(x,y)·b))
//! ```
//!
//! The crate is layered bottom-up:
//!
//! * [`freegroup`]: reduced words, substitution, the word grammar;
//! * [`groupring`]: exact arithmetic in `ℤF_n`;
//! * [`foxcalc`]: Fox derivatives;
//! * [`wada`]: pairs, braid equations, the nine coefficient identities, racks;
//! * [`models`]: finite groups and modules, the extended map, exhaustive
//!   Yang-Baxter checks and the text formats.
//!
//! ```
//! use ybe_fox::prelude::*;
//!
//! let pair = WadaPair::parse("y^-1", "y x y").unwrap();
//! assert!(verify_braid_relations(&pair).all_hold());
//!
//! let c = derived_coefficients(&pair);
//! assert_eq!(c.v2.to_string(), "1 + yx");
//!
//! let (group, module) = parse_preset("C3:Z7x2").unwrap();
//! let sol = extended_solution(&pair, &group, &module, "C3:Z7x2").unwrap();
//! let verdict = check_sybe(&sol.map, DEFAULT_TRIPLE_BUDGET).unwrap();
//! assert!(verdict.passed());
//! ```

pub mod foxcalc;
pub mod freegroup;
pub mod groupring;
pub mod models;
pub mod wada;

pub mod prelude {
    pub use crate::foxcalc::{fox_derivative, fox_derivative_ring};
    pub use crate::freegroup::{format_word, parse_word, Alphabet, FreeWord, Letter};
    pub use crate::groupring::{parse_element, GroupRingElement};
    pub use crate::models::presets::parse_preset;
    pub use crate::models::{
        check_bijective, check_sybe, check_sybe_verbose, extended_solution, validate_group,
        validate_module, FiniteGroup, GModule, SquareMap, DEFAULT_TRIPLE_BUDGET,
    };
    pub use crate::wada::{
        derived_coefficients, rack_check, verify_braid_relations, verify_lemma1, wada_catalog,
        WadaPair,
    };
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/free-groups.md")]
    mod free_groups {}
    #[doc = include_str!("../../../book/src/group-ring.md")]
    mod group_ring {}
    #[doc = include_str!("../../../book/src/fox-calculus.md")]
    mod fox_calculus {}
    #[doc = include_str!("../../../book/src/wada-pairs.md")]
    mod wada_pairs {}
    #[doc = include_str!("../../../book/src/coefficient-identities.md")]
    mod coefficient_identities {}
    #[doc = include_str!("../../../book/src/finite-models.md")]
    mod finite_models {}
    #[doc = include_str!("../../../book/src/racks.md")]
    mod racks {}
}
