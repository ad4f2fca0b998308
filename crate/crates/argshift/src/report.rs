//! Serializable verification reports.
//!
//! Wire shapes are part of the tool's contract: identical inputs must
//! produce byte-identical output, so nothing here carries timestamps,
//! hostnames, or map iteration order. Single-suite runs emit one nested
//! JSON document; `verify all` emits JSON Lines with one record per
//! (suite, degree), sorted by suite name and degree.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// One degree of the centralizer-versus-family comparison.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub n: usize,
    pub dim_centralizer: usize,
    pub dim_a_mu: usize,
    pub containment: bool,
    pub equal: bool,
}

/// Degree-by-degree comparison of the shift family against the Poisson
/// centralizer of its quadratic part.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TheoremOneReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub mu: Vec<String>,
    pub seed: u64,
    pub degrees: Vec<DegreeRow>,
    pub resamples: u32,
}

impl TheoremOneReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }

    pub fn degree_records(&self) -> Vec<Value> {
        self.degrees
            .iter()
            .map(|d| {
                json!({
                    "suite": "theorem1",
                    "type": self.type_label,
                    "mu": self.mu,
                    "seed": self.seed,
                    "resamples": self.resamples,
                    "n": d.n,
                    "dim_centralizer": d.dim_centralizer,
                    "dim_a_mu": d.dim_a_mu,
                    "containment": d.containment,
                    "equal": d.equal,
                })
            })
            .collect()
    }

    pub fn text_lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "theorem1 {} mu=[{}] seed={} resamples={}",
            self.type_label,
            self.mu.join(", "),
            self.seed,
            self.resamples
        )];
        for d in &self.degrees {
            out.push(format!(
                "  n={} dim_centralizer={} dim_a_mu={} containment={} equal={}",
                d.n, d.dim_centralizer, d.dim_a_mu, d.containment, d.equal
            ));
        }
        out.push(format!(
            "theorem1 {}: {}",
            self.type_label,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// One degree of the frozen-bracket centralizer count.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DegenerateRow {
    pub n: usize,
    pub dim_centralizer: usize,
    pub balanced_count: usize,
    pub unbalanced_zero_eigenvalues: usize,
    pub equal: bool,
}

/// Centralizer of a single quadratic element under the frozen bracket,
/// counted against balanced monomials.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DegenerateReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub mu: Vec<String>,
    pub h: Vec<String>,
    pub seed: u64,
    pub degrees: Vec<DegenerateRow>,
    pub resamples: u32,
}

impl DegenerateReport {
    pub fn passed(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.equal && d.unbalanced_zero_eigenvalues == 0)
    }

    pub fn degree_records(&self) -> Vec<Value> {
        self.degrees
            .iter()
            .map(|d| {
                json!({
                    "suite": "degenerate",
                    "type": self.type_label,
                    "mu": self.mu,
                    "h": self.h,
                    "seed": self.seed,
                    "resamples": self.resamples,
                    "n": d.n,
                    "dim_centralizer": d.dim_centralizer,
                    "balanced_count": d.balanced_count,
                    "unbalanced_zero_eigenvalues": d.unbalanced_zero_eigenvalues,
                    "equal": d.equal,
                })
            })
            .collect()
    }

    pub fn text_lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "degenerate {} mu=[{}] h=[{}] seed={} resamples={}",
            self.type_label,
            self.mu.join(", "),
            self.h.join(", "),
            self.seed,
            self.resamples
        )];
        for d in &self.degrees {
            out.push(format!(
                "  n={} dim_centralizer={} balanced={} unbalanced_zero={} equal={}",
                d.n, d.dim_centralizer, d.balanced_count, d.unbalanced_zero_eigenvalues, d.equal
            ));
        }
        out.push(format!(
            "degenerate {}: {}",
            self.type_label,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Bracket-pencil health: Jacobi at the sampled pencil parameters, the
/// rescaling intertwiner on random pairs, and stability of the quadratic
/// space under it.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PencilReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub seed: u64,
    pub t_values: Vec<String>,
    pub jacobi_triples_checked: usize,
    pub jacobi_ok: bool,
    pub psi_pairs_checked: usize,
    pub psi_ok: bool,
    pub q_mu_rescales_ok: bool,
}

impl PencilReport {
    pub fn passed(&self) -> bool {
        self.jacobi_ok && self.psi_ok && self.q_mu_rescales_ok
    }

    pub fn degree_records(&self) -> Vec<Value> {
        vec![json!({
            "suite": "pencil",
            "type": self.type_label,
            "seed": self.seed,
            "t_values": self.t_values,
            "jacobi_triples_checked": self.jacobi_triples_checked,
            "jacobi_ok": self.jacobi_ok,
            "psi_pairs_checked": self.psi_pairs_checked,
            "psi_ok": self.psi_ok,
            "q_mu_rescales_ok": self.q_mu_rescales_ok,
        })]
    }

    pub fn text_lines(&self) -> Vec<String> {
        vec![
            format!(
                "pencil {} seed={} t=[{}] jacobi_triples={} jacobi_ok={} psi_pairs={} psi_ok={} q_mu_rescales_ok={}",
                self.type_label,
                self.seed,
                self.t_values.join(", "),
                self.jacobi_triples_checked,
                self.jacobi_ok,
                self.psi_pairs_checked,
                self.psi_ok,
                self.q_mu_rescales_ok
            ),
            format!(
                "pencil {}: {}",
                self.type_label,
                if self.passed() { "PASS" } else { "FAIL" }
            ),
        ]
    }
}

/// Commutativity of the symmetrized quadratic slice inside the enveloping
/// algebra.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub pairs_checked: usize,
    pub all_commute: bool,
    pub witnesses: Vec<String>,
}

/// Enveloping-algebra layer: symmetrization section, commutator versus
/// bracket after passing to the graded algebra, and the quadratic lift.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub seed: u64,
    pub gr_symmetrize_polys_checked: usize,
    pub gr_symmetrize_ok: bool,
    pub gr_commutator_pairs_checked: usize,
    pub gr_commutator_ok: bool,
    pub lift: LiftReport,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.gr_symmetrize_ok && self.gr_commutator_ok && self.lift.all_commute
    }

    pub fn degree_records(&self) -> Vec<Value> {
        vec![json!({
            "suite": "pbw",
            "type": self.type_label,
            "seed": self.seed,
            "gr_symmetrize_polys_checked": self.gr_symmetrize_polys_checked,
            "gr_symmetrize_ok": self.gr_symmetrize_ok,
            "gr_commutator_pairs_checked": self.gr_commutator_pairs_checked,
            "gr_commutator_ok": self.gr_commutator_ok,
            "lift_pairs_checked": self.lift.pairs_checked,
            "lift_all_commute": self.lift.all_commute,
            "lift_witnesses": self.lift.witnesses,
        })]
    }

    pub fn text_lines(&self) -> Vec<String> {
        vec![
            format!(
                "pbw {} seed={} gr_symmetrize_polys={} gr_symmetrize_ok={} gr_commutator_pairs={} gr_commutator_ok={} lift_pairs={} lift_all_commute={}",
                self.type_label,
                self.seed,
                self.gr_symmetrize_polys_checked,
                self.gr_symmetrize_ok,
                self.gr_commutator_pairs_checked,
                self.gr_commutator_ok,
                self.lift.pairs_checked,
                self.lift.all_commute
            ),
            format!(
                "pbw {}: {}",
                self.type_label,
                if self.passed() { "PASS" } else { "FAIL" }
            ),
        ]
    }
}

/// One degree of the invariant-dimension ladder.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct InvariantRow {
    pub n: usize,
    pub dim_kernel: usize,
    pub dim_free_series: usize,
    pub equal: bool,
}

/// Invariant-ring dimensions against the free generating series.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct InvariantsVerifyReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub generator_degrees: Vec<usize>,
    pub degrees: Vec<InvariantRow>,
}

impl InvariantsVerifyReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }

    pub fn degree_records(&self) -> Vec<Value> {
        self.degrees
            .iter()
            .map(|d| {
                json!({
                    "suite": "invariants",
                    "type": self.type_label,
                    "generator_degrees": self.generator_degrees,
                    "n": d.n,
                    "dim_kernel": d.dim_kernel,
                    "dim_free_series": d.dim_free_series,
                    "equal": d.equal,
                })
            })
            .collect()
    }

    pub fn text_lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "invariants {} generator_degrees={:?}",
            self.type_label, self.generator_degrees
        )];
        for d in &self.degrees {
            out.push(format!(
                "  n={} dim_kernel={} dim_free_series={} equal={}",
                d.n, d.dim_kernel, d.dim_free_series, d.equal
            ));
        }
        out.push(format!(
            "invariants {}: {}",
            self.type_label,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Structured error payload emitted on stderr by the binary.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ErrorObject {
    pub error: String,
    pub detail: String,
}
