//! JSON renderings of kets, vectors and polynomials.
//!
//! A vector serializes as a list of {state, coeff} in canonical order
//! (larger |λ| first, then λ lexicographically, then charge). Rational
//! coefficients are "num/den" strings (the denominator omitted when 1);
//! Laurent coefficients are objects keyed "q^k".

use focklab::fock::FockVector;
use focklab::scalar::{LaurentQ, Rat, Scalar};
use focklab::symfunc::{BosonPoly, SymPoly};
use focklab::ChargedPartition;
use serde_json::{json, Value};

/// How a coefficient ring renders into JSON.
pub trait CoeffJson: Scalar {
    fn coeff_json(&self) -> Value;
}

impl CoeffJson for Rat {
    fn coeff_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl CoeffJson for LaurentQ {
    fn coeff_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (k, c) in self.terms() {
            map.insert(format!("q^{k}"), Value::String(c.to_string()));
        }
        Value::Object(map)
    }
}

pub fn state_json(cp: &ChargedPartition) -> Value {
    json!({ "lambda": cp.lambda.parts(), "charge": cp.charge })
}

pub fn fock_json<R: CoeffJson>(v: &FockVector<R>) -> Value {
    Value::Array(
        v.terms_canonical()
            .into_iter()
            .map(|(cp, c)| json!({ "state": state_json(cp), "coeff": c.coeff_json() }))
            .collect(),
    )
}

pub fn boson_poly_json(p: &BosonPoly) -> Value {
    Value::Array(
        p.iter()
            .map(|((h, e), c)| json!({ "q": h, "exponents": e, "coeff": c.to_string() }))
            .collect(),
    )
}

pub fn sym_poly_json(p: &SymPoly) -> Value {
    Value::Array(
        p.terms
            .iter()
            .map(|(e, c)| json!({ "exponents": e, "coeff": c.to_string() }))
            .collect(),
    )
}
