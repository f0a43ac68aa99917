//! Certified evaluators for the closed-form bounds.
//!
//! Every evaluator returns a [`BoundResult`]: an interval enclosure of the
//! bound's value tagged with the equation it implements and whether the
//! input lies inside the hypotheses under which the bound is a theorem.
//! Out-of-domain inputs are still evaluated, but flagged `valid = false`
//! with a reason, and must not be used as rigorous facts.

pub mod published;
pub mod ratio;
pub mod sector;
pub mod slab;
pub mod table;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::Interval;

pub use published::{auxiliary_published_bounds, Published};
pub use ratio::{
    g_enclosure, rhombus_ratio_lower, rhombus_ratio_upper, t11_margin, triangle_ratio_lower_narrow,
    triangle_ratio_lower_wide, triangle_ratio_upper,
};
pub use sector::{sector_torsion_enclosure, sector_torsion_pointwise};
pub use slab::theorem1_upper;
pub use table::{bounds_for, polya_sandwich, DEFAULT_TERMS, KNOWN_TAGS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    UpperBound,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    /// `λ(Ω)·M(Ω)`
    LambdaM,
    /// `λ(Ω)·T(Ω)/|Ω|`
    PolyaRatio,
    /// `T(Ω)`
    Torsion,
    /// `λ(Ω)`
    Lambda,
}

/// Certified value of a named bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub equation_tag: String,
    pub kind: BoundKind,
    pub quantity: Quantity,
    pub value: Interval,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub params: BTreeMap<String, Interval>,
}

impl BoundResult {
    pub(crate) fn new(tag: &str, kind: BoundKind, quantity: Quantity, value: Interval) -> Self {
        BoundResult {
            equation_tag: tag.to_string(),
            kind,
            quantity,
            value,
            valid: true,
            reason: None,
            params: BTreeMap::new(),
        }
    }

    pub(crate) fn param(mut self, name: &str, v: Interval) -> Self {
        self.params.insert(name.to_string(), v);
        self
    }

    /// Marks the result out of domain unless `ok`.
    pub(crate) fn require(mut self, ok: bool, reason: impl FnOnce() -> String) -> Self {
        if !ok && self.valid {
            self.valid = false;
            self.reason = Some(reason());
        }
        self
    }

    /// Flat JSON row `{equation_tag, kind, quantity, lo, hi, valid, params}`.
    pub fn to_json(&self) -> serde_json::Value {
        let params: serde_json::Map<String, serde_json::Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!({ "lo": v.lo(), "hi": v.hi() })))
            .collect();
        let mut row = serde_json::json!({
            "equation_tag": self.equation_tag,
            "kind": self.kind,
            "quantity": self.quantity,
            "lo": self.value.lo(),
            "hi": self.value.hi(),
            "valid": self.valid,
            "params": params,
        });
        if let Some(r) = &self.reason {
            row["reason"] = serde_json::Value::String(r.clone());
        }
        row
    }
}

/// Whether `x` does not exceed the real threshold enclosed by `t`, up to the
/// enclosure's own width. Parameters are enclosures of one real value, so a
/// cell that is the enclosure of the threshold itself counts as inside.
pub(crate) fn at_most(x: Interval, t: Interval) -> bool {
    x.hi() <= t.hi()
}
