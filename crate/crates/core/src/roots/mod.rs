//! p-th roots and p-high elements in radical towers: valuations on the base
//! field, structured root extraction, and a finite-field specialization
//! oracle.

pub mod corpus;
pub mod extract;
pub mod high;
pub mod special;
pub mod valuation;

use serde::Serialize;
use serde_json::{json, Value};

use crate::fieldtower::serial;
use crate::fieldtower::TowerElement;

pub use extract::{decompose, poly_root, Decomposition};
pub use high::{
    check_irreducible_radical, classify_p_high, is_p_high, pth_root, pth_root_with, q_high_descends, HighVerdict,
    PHighForm, QHighReport, RootOptions, constant_p_high, foreign_primes,
};
pub use special::{specialization_refute, SpecialOutcome};
pub use valuation::{g_adic_valuation, valuation_places, valuation_vector, PlaceValue, ValuationPlace};

/// Why an element has no p-th root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The value at `place` is not `p`-divisible in the value group. With
    /// `absolute`, no finite deepening of the tower can supply a root.
    Valuation { place: String, value: String, ramification: u64, absolute: bool },
    /// A ring map to `F_q` defined on the whole infinite tower sends the
    /// element to a non-`p`-th power.
    Specialization { q: u64, point: Vec<u64>, radical_values: Vec<u64>, image: u64 },
}

impl Certificate {
    /// Valid in every deeper truncation as well.
    pub fn is_absolute(&self) -> bool {
        match self {
            Certificate::Valuation { absolute, .. } => *absolute,
            Certificate::Specialization { .. } => true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum RootResult {
    Root(TowerElement),
    No(Certificate),
    Unknown(String),
}

impl RootResult {
    pub fn is_root(&self) -> bool {
        matches!(self, RootResult::Root(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, RootResult::No(_))
    }
    pub fn to_json(&self) -> Value {
        match self {
            RootResult::Root(b) => json!({"outcome": "root", "witness": serial::to_json(b)}),
            RootResult::No(c) => json!({"outcome": "no", "certificate": c}),
            RootResult::Unknown(note) => json!({"outcome": "unknown", "note": note}),
        }
    }
}
