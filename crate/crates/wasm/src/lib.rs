//! Browser bindings. Every function returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use zetaforge::identity;
use zetaforge::lfactors::{self, AsaiTwist, SVar, SatakeDatum};
use zetaforge::orbits;
use zetaforge::weyl::{GroupContext, Kind, DEFAULT_MAX_RANK};
use zetaforge::Result;

fn context(kind: &str, m: usize, ell: usize, j: usize) -> Result<GroupContext> {
    GroupContext::new(kind.parse::<Kind>()?, m, ell, j)
}

fn respond(v: Result<Value>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Renders one unramified L-factor: `tensor`, `tensor-sigma`, `asai` or `zeta`.
#[wasm_bindgen]
pub fn lfactor(which: &str, kind: &str, m: usize, ell: usize, j: usize) -> String {
    respond((|| {
        let ctx = context(kind, m, ell, j)?;
        let tau = SatakeDatum::tau(&ctx);
        let text = match which {
            "tensor" => lfactors::tensor_l(&tau, &SatakeDatum::pi(&ctx), &ctx, SVar::Present)?.to_string(),
            "tensor-sigma" => {
                lfactors::tensor_sigma_l(&tau, &SatakeDatum::sigma(&ctx), &ctx, SVar::Present)?.to_string()
            }
            "asai" => lfactors::asai_l(&tau, &ctx, AsaiTwist::XiM)?.to_string(),
            "zeta" => {
                let chi = zetaforge::weyl::CharacterVector::for_context(&ctx);
                lfactors::zeta_poly(&chi.vars, 0, &ctx)?.to_string()
            }
            other => return Err(zetaforge::Error::Precondition(format!("unknown factor '{other}'"))),
        };
        Ok(json!({ "context": ctx.to_string(), "factor": which, "text": text }))
    })())
}

/// Double-coset representatives `(alpha, beta)` for the given numerology.
#[wasm_bindgen]
pub fn cosets(kind: &str, m: usize, ell: usize, j: usize) -> String {
    respond((|| {
        let ctx = context(kind, m, ell, j)?;
        let eps = orbits::enumerate_eps(&ctx);
        let surviving = orbits::surviving_summand(&ctx).ok().map(|s| s.datum);
        Ok(json!({ "context": ctx.to_string(), "entries": eps, "surviving": surviving }))
    })())
}

/// Checks that `Delta` changes sign under the Weyl group.
#[wasm_bindgen]
pub fn delta_antisymmetry(kind: &str, m: usize) -> String {
    respond((|| {
        let ctx = context(kind, m, 0, 0)?;
        let rep = identity::check_delta_antisymmetry(&ctx, DEFAULT_MAX_RANK.min(5))?;
        Ok(json!({
            "context": ctx.to_string(),
            "delta": identity::delta(&ctx)?.to_string(),
            "status": rep.status.as_str(),
            "witness": rep.witness.to_string(),
            "notes": rep.notes,
        }))
    })())
}
