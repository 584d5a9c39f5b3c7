//! JSON descriptors: families by name or tagged JSON form, arc sets as
//! arrays of endpoint pairs, and the export shapes for effects and
//! commutation reports.

use num_complex::Complex64;
use phasekit_core::{ArcSet, ComReport, Effect, PhaseFamily};
use serde_json::{json, Value};

use crate::RunError;

/// Parse a family descriptor: a bare name for the parameterless
/// built-ins, or the tagged JSON form for anything with parameters.
/// The parsed family is validated before it is returned.
pub fn parse_family(text: &str) -> Result<PhaseFamily, RunError> {
    let trimmed = text.trim();
    let family = if trimmed.starts_with('{') {
        serde_json::from_str::<PhaseFamily>(trimmed)
            .map_err(|e| RunError::Config(format!("family descriptor: {e}")))?
    } else {
        match trimmed.to_ascii_lowercase().as_str() {
            "canonical" => PhaseFamily::Canonical,
            "trivial" => PhaseFamily::Trivial,
            "groundstate" | "ground_state" | "ground-state" => PhaseFamily::GroundState,
            other => {
                return Err(RunError::Config(format!(
                    "unknown family name '{other}': use canonical, trivial, \
                     ground_state, or a JSON descriptor"
                )))
            }
        }
    };
    family
        .validate()
        .map_err(|e| RunError::Config(format!("invalid family: {e}")))?;
    Ok(family)
}

/// Tagged JSON form of a family descriptor. Parsing this back yields
/// the identical family for every built-in.
pub fn family_to_json(family: &PhaseFamily) -> Value {
    serde_json::to_value(family).expect("family serialization is infallible")
}

/// Parse an arc-set descriptor: a JSON array of `[a, b)` endpoint
/// pairs in radians.
pub fn parse_arcs(text: &str) -> Result<ArcSet, RunError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text.trim())
        .map_err(|e| RunError::Config(format!("arc set: {e}")))?;
    if pairs.iter().flatten().any(|v| !v.is_finite()) {
        return Err(RunError::Config("arc endpoints must be finite".into()));
    }
    Ok(ArcSet::new(pairs.iter().map(|p| (p[0], p[1]))))
}

/// Endpoint pairs of a normalized arc set, ready for serialization.
pub fn arcs_to_pairs(x: &ArcSet) -> Vec<[f64; 2]> {
    x.arcs().iter().map(|&(a, b)| [a, b]).collect()
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Effect export: dimension, generating descriptor, arcs, and the
/// matrix entries row-major as `[re, im]` pairs.
pub fn effect_to_json(effect: &Effect) -> Value {
    let dim = effect.dim();
    let mut entries = Vec::with_capacity(dim * dim);
    for n in 0..dim {
        for m in 0..dim {
            entries.push(complex_pair(effect.matrix[(n, m)]));
        }
    }
    json!({
        "dim": dim,
        "family": family_to_json(&effect.family),
        "arcs": arcs_to_pairs(&effect.arcs),
        "entries": entries,
    })
}

/// Commutation report export: exactly commuting index set, dimension
/// counts, singular values of the stacked commutators, and the witness
/// coefficients when one exists.
pub fn com_report_to_json(report: &ComReport) -> Value {
    json!({
        "a_set": report.a_set,
        "pa_dim": report.pa_dim,
        "com_estimate_dim": report.com_estimate_dim,
        "borderline": report.borderline,
        "singular_values": report.singular_values,
        "witness": report.witness.as_ref().map(|w| {
            w.coeffs().iter().map(|&z| complex_pair(z)).collect::<Vec<_>>()
        }),
    })
}
