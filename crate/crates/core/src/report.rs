//! Self-describing verification reports.
//!
//! Every identity check returns a [`VerificationReport`]: the check name, the
//! parameters it ran under, per-item scaled residuals, the headline tolerance
//! and a pass flag (`pass` iff `max_residual <= tolerance`). Reports
//! serialize to JSON with all numerics rendered at `digits` significant
//! decimals; the wall-clock runtime is kept in memory only so that repeated
//! runs produce byte-identical files.

use crate::numerics::{format_real, Real};
use crate::weight::WeightParams;
use serde_json::{json, Value};
use std::time::Duration;

/// Parameter echo embedded in every report.
#[derive(Clone, Debug)]
pub struct ParamsEcho {
    pub c: String,
    pub t: String,
    pub sigma: String,
    pub digits: u32,
}

impl ParamsEcho {
    pub fn from_params(p: &WeightParams) -> Self {
        let ctx = p.ctx();
        ParamsEcho {
            c: ctx.format(p.c()),
            t: ctx.format(p.t()),
            sigma: ctx.format(p.sigma()),
            digits: ctx.digits(),
        }
    }
}

/// One measured residual. `residual` is already scale-normalized, so it is
/// directly comparable against the report tolerance.
#[derive(Clone, Debug)]
pub struct ReportItem {
    pub label: String,
    pub residual: Real,
    pub note: Option<String>,
}

impl ReportItem {
    pub fn new(label: impl Into<String>, residual: Real) -> Self {
        ReportItem {
            label: label.into(),
            residual,
            note: None,
        }
    }

    pub fn with_note(label: impl Into<String>, residual: Real, note: impl Into<String>) -> Self {
        ReportItem {
            label: label.into(),
            residual,
            note: Some(note.into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub check: String,
    pub params: ParamsEcho,
    pub items: Vec<ReportItem>,
    pub max_residual: Real,
    pub tolerance: Real,
    pub pass: bool,
    /// Non-gating reports are informational: they never fail a run.
    pub gating: bool,
    pub notes: Vec<String>,
    /// Wall-clock time; excluded from serialization for determinism.
    pub runtime: Duration,
}

impl VerificationReport {
    /// Assemble a report; `pass` is derived as `max_residual <= tolerance`
    /// over the gating items.
    pub fn from_items(
        check: impl Into<String>,
        params: &WeightParams,
        tolerance: Real,
        items: Vec<ReportItem>,
        gating: bool,
        notes: Vec<String>,
    ) -> Self {
        let mut max_residual = params.ctx().real(0u32);
        for it in &items {
            if it.residual > max_residual {
                max_residual = it.residual.clone();
            }
        }
        let pass = max_residual <= tolerance;
        VerificationReport {
            check: check.into(),
            params: ParamsEcho::from_params(params),
            items,
            max_residual,
            tolerance,
            pass,
            gating,
            notes,
            runtime: Duration::ZERO,
        }
    }

    /// True when this report should fail a batch run.
    pub fn failed_gating(&self) -> bool {
        self.gating && !self.pass
    }

    pub fn to_json(&self) -> Value {
        let d = self.params.digits;
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|it| {
                let mut v = json!({
                    "label": it.label,
                    "residual": format_real(&it.residual, d),
                });
                if let Some(note) = &it.note {
                    v["note"] = json!(note);
                }
                v
            })
            .collect();
        json!({
            "check": self.check,
            "params": {
                "c": self.params.c,
                "t": self.params.t,
                "sigma": self.params.sigma,
                "digits": d,
            },
            "items": items,
            "max_residual": format_real(&self.max_residual, d),
            "tolerance": format_real(&self.tolerance, d),
            "pass": self.pass,
            "gating": self.gating,
            "notes": self.notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionContext;

    #[test]
    fn pass_iff_max_residual_within_tolerance() {
        let ctx = PrecisionContext::new(40).unwrap();
        let p = WeightParams::from_f64(1.0, 0.0, 0.0, ctx.clone()).unwrap();
        let items = vec![
            ReportItem::new("a", ctx.pow10(-30)),
            ReportItem::new("b", ctx.pow10(-25)),
        ];
        let rep = VerificationReport::from_items("demo", &p, ctx.pow10(-20), items, true, vec![]);
        assert!(rep.pass);
        assert!(rep.max_residual == ctx.pow10(-25));

        let items = vec![ReportItem::new("a", ctx.pow10(-10))];
        let rep = VerificationReport::from_items("demo", &p, ctx.pow10(-20), items, true, vec![]);
        assert!(!rep.pass);
        assert!(rep.failed_gating());
    }

    #[test]
    fn json_is_deterministic_and_runtime_free() {
        let ctx = PrecisionContext::new(40).unwrap();
        let p = WeightParams::from_f64(1.0, 0.0, 0.5, ctx.clone()).unwrap();
        let items = vec![ReportItem::new("a", ctx.pow10(-30))];
        let mut rep =
            VerificationReport::from_items("demo", &p, ctx.pow10(-20), items, true, vec![]);
        let j1 = serde_json::to_string_pretty(&rep.to_json()).unwrap();
        rep.runtime = Duration::from_millis(1234);
        let j2 = serde_json::to_string_pretty(&rep.to_json()).unwrap();
        assert_eq!(j1, j2, "runtime must not leak into serialized output");
        assert!(!j1.contains("runtime"));
    }
}
