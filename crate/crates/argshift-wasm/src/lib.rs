//! Browser bindings for the argshift engine.
//!
//! Every export takes plain strings/integers and returns a JSON string, so
//! the page needs no glue beyond `JSON.parse`. The underlying functions are
//! ordinary Rust and are tested on the host; the `wasm_bindgen` attribute
//! only adds the JS shim when compiled for `wasm32`.

use argshift::cli;
use wasm_bindgen::prelude::wasm_bindgen;

fn stringify(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Structure constants, roots, and invariant degrees for one type.
#[wasm_bindgen]
pub fn describe(type_label: &str) -> Result<String, String> {
    let label = cli::parse_type(type_label).map_err(|e| e.to_string())?;
    let value = cli::describe_value(label).map_err(|e| e.to_string())?;
    Ok(stringify(&value))
}

/// Sample a regular direction and report the shift family it generates.
#[wasm_bindgen]
pub fn shift_family(type_label: &str, seed: u64, nmax: usize) -> Result<String, String> {
    let label = cli::parse_type(type_label).map_err(|e| e.to_string())?;
    let value = cli::shift_value(label, seed, nmax).map_err(|e| e.to_string())?;
    Ok(stringify(&value))
}

/// Run the degree-by-degree centralizer comparison and return the report.
#[wasm_bindgen]
pub fn theorem1(type_label: &str, nmax: usize, seed: u64) -> Result<String, String> {
    let label = cli::parse_type(type_label).map_err(|e| e.to_string())?;
    let lie = cli::build_lie(label).map_err(|e| e.to_string())?;
    let report = cli::theorem1_suite(&lie, nmax, seed, 5, false).map_err(|e| e.to_string())?;
    let value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    Ok(stringify(&value))
}
