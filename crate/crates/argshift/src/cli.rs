//! Command-line surface and the verification suite drivers behind it.
//!
//! Everything emitted is a pure function of the arguments: no timestamps,
//! no environment echoes, map-free ordering. Single-suite verifications
//! print one nested JSON document (or its text rendering); `verify all`
//! prints JSON Lines with one record per suite and degree, sorted by suite
//! name. Reports go to stdout unless `--out` is given, in which case the
//! file is written atomically (temp file plus rename).

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::centralizer::{degenerate_suite, verify_theorem1};
use crate::chevalley::LieAlgebra;
use crate::invariants::{
    ad_invariant_space, extract_generators, free_monomial_count, generator_degrees,
};
use crate::polyring::{psi_t, BracketPencil, Monomial, SparsePoly};
use crate::rational::{q, qq, q_to_string, Q};
use crate::report::{
    ErrorObject, InvariantRow, InvariantsVerifyReport, PbwReport, PencilReport, TheoremOneReport,
};
use crate::root_system::{RootSystem, TypeLabel};
use crate::shift::{build_q_mu, sample_regular_mu, ShiftFamily};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Type label: A1..A3, B2, C2, or G2.
    #[arg(long = "type")]
    pub type_label: String,

    /// Highest polynomial degree to examine.
    #[arg(long)]
    pub nmax: Option<usize>,

    /// RNG seed; fixed seed means byte-identical output.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    /// Extra direction samples allowed before giving up.
    #[arg(long, default_value_t = 5)]
    pub retries: u32,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum VerifySuite {
    /// Compare the shift family with the centralizer of its quadratic part.
    Theorem1 {
        #[command(flatten)]
        common: CommonArgs,
        /// Also centralize Q_mu + h + S^2(h) and require the same answer.
        #[arg(long)]
        augmented: bool,
    },
    /// Jacobi identity for the bracket pencil and the psi_t intertwiner.
    Pencil {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Frozen-bracket centralizer versus balanced monomial counts.
    Degenerate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Symmetrization, gr, and commutativity of the lifted quadratic slice.
    Pbw {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Invariant-space dimensions against the free generating series.
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Every suite above, as JSON Lines sorted by suite.
    All {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural data: roots, Cartan and Gram matrices, invariant degrees.
    Describe {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Free generators of the invariant ring up to the top classical degree.
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The shifted generator family at a sampled regular direction.
    Shift {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Parser, Debug)]
#[command(
    name = "argshift",
    version,
    about = "Argument-shift subalgebras over exact rationals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

pub fn parse_type(s: &str) -> Result<TypeLabel> {
    let label: TypeLabel = s.parse()?;
    if !label.cli_supported() {
        return Err(Error::UnsupportedType(s.to_string()));
    }
    Ok(label)
}

pub fn build_lie(label: TypeLabel) -> Result<LieAlgebra> {
    LieAlgebra::build(RootSystem::build(label)?)
}

/// Structural summary of one type.
pub fn describe_value(label: TypeLabel) -> Result<Value> {
    let lie = build_lie(label)?;
    let rs = lie.root_system();
    Ok(json!({
        "type": label.to_string(),
        "rank": rs.rank(),
        "dim": rs.dim(),
        "num_positive_roots": rs.num_positive(),
        "positive_roots": rs.positive_roots().iter().map(|r| json!(r.0)).collect::<Vec<_>>(),
        "cartan_matrix": rs.cartan_matrix(),
        "gram_matrix": rs.gram_matrix().iter()
            .map(|row| row.iter().map(q_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "basis_names": lie.basis_names(),
        "invariant_degrees": generator_degrees(label)?,
    }))
}

fn describe_text(v: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "type {}  rank {}  dim {}  positive roots {}\n",
        v["type"].as_str().unwrap_or_default(),
        v["rank"],
        v["dim"],
        v["num_positive_roots"]
    ));
    out.push_str(&format!("positive_roots: {}\n", v["positive_roots"]));
    out.push_str(&format!("cartan_matrix: {}\n", v["cartan_matrix"]));
    out.push_str(&format!("gram_matrix: {}\n", v["gram_matrix"]));
    out.push_str(&format!("basis: {}\n", v["basis_names"]));
    out.push_str(&format!("invariant_degrees: {}\n", v["invariant_degrees"]));
    out
}

/// Invariant generators plus the sidecar data `{type, degrees,
/// dims_by_degree}`.
pub fn invariants_value(label: TypeLabel) -> Result<Value> {
    let lie = build_lie(label)?;
    let top = *generator_degrees(label)?.last().expect("nonempty");
    let set = extract_generators(&lie, top)?;
    let names = lie.basis_names();
    Ok(json!({
        "type": label.to_string(),
        "degrees": set.degrees,
        "dims_by_degree": set.dims_by_degree.iter()
            .map(|(n, d)| json!({"n": n, "dim": d}))
            .collect::<Vec<_>>(),
        "generators": set.generators.iter().map(|g| g.to_text(names)).collect::<Vec<_>>(),
    }))
}

fn generators_text(v: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("type {}\n", v["type"].as_str().unwrap_or_default()));
    if let Some(gens) = v["generators"].as_array() {
        for (g, d) in gens.iter().zip(v["degrees"].as_array().unwrap_or(&vec![])) {
            out.push_str(&format!("degree {}: {}\n", d, g.as_str().unwrap_or_default()));
        }
    }
    out
}

/// The shift family at a seeded random regular direction: generators in
/// text form plus `{mu, degrees, count, commutative, graded_dims}`.
pub fn shift_value(label: TypeLabel, seed: u64, nmax: usize) -> Result<Value> {
    let lie = build_lie(label)?;
    let top = *generator_degrees(label)?.last().expect("nonempty");
    let set = extract_generators(&lie, top)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = sample_regular_mu(lie.root_system(), &mut rng)?;
    let family = ShiftFamily::new(&lie, &set, mu)?;
    family.verify_commutative()?;
    let slice = family.quadratic_slice()?;
    let graded: Vec<Value> = (1..=nmax)
        .map(|n| json!({"n": n, "dim": family.graded_dim(n)}))
        .collect();
    let names = lie.basis_names();
    Ok(json!({
        "type": label.to_string(),
        "mu": family.mu().0.iter().map(q_to_string).collect::<Vec<_>>(),
        "degrees": family.degrees(),
        "count": family.generators().len(),
        "commutative": true,
        "quadratic_slice_dim": slice.dim(),
        "graded_dims": graded,
        "generators": family.generators().iter().map(|g| g.to_text(names)).collect::<Vec<_>>(),
    }))
}

fn shift_text(v: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "type {}  mu {}  count {}  commutative {}\n",
        v["type"].as_str().unwrap_or_default(),
        v["mu"],
        v["count"],
        v["commutative"]
    ));
    out.push_str(&format!("degrees: {}\n", v["degrees"]));
    out.push_str(&format!("quadratic_slice_dim: {}\n", v["quadratic_slice_dim"]));
    out.push_str(&format!("graded_dims: {}\n", v["graded_dims"]));
    if let Some(gens) = v["generators"].as_array() {
        for g in gens {
            out.push_str(&format!("{}\n", g.as_str().unwrap_or_default()));
        }
    }
    out
}

/// Jacobi at `t` in `{0, 1/2, 1}` on all basis triples, the `psi_t`
/// intertwiner on seeded random pairs, and `t^{-2}`-rescaling of the
/// quadratic space.
pub fn pencil_suite(lie: &LieAlgebra, seed: u64) -> Result<PencilReport> {
    let dim = lie.dim();
    let jacobi_ts = [q(0), qq(1, 2), q(1)];
    let mut jacobi_ok = true;
    let mut triples = 0;
    for t in &jacobi_ts {
        let pencil = BracketPencil::new(lie, t.clone());
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let (x, y, z) = (
                        SparsePoly::var(dim, i),
                        SparsePoly::var(dim, j),
                        SparsePoly::var(dim, k),
                    );
                    let yz = pencil.bracket(&y, &z)?;
                    let zx = pencil.bracket(&z, &x)?;
                    let xy = pencil.bracket(&x, &y)?;
                    let jac = &(&pencil.bracket(&x, &yz)? + &pencil.bracket(&y, &zx)?)
                        + &pencil.bracket(&z, &xy)?;
                    triples += 1;
                    if !jac.is_zero() {
                        jacobi_ok = false;
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi_ts = [qq(1, 2), q(-2), q(3)];
    let mut psi_ok = true;
    let mut pairs = 0;
    let lie_bracket = BracketPencil::lie_poisson(lie);
    for _ in 0..25 {
        let f = random_poly(&mut rng, dim, 3);
        let g = random_poly(&mut rng, dim, 3);
        for t in &psi_ts {
            let pencil = BracketPencil::new(lie, t.clone());
            let lhs = pencil.bracket(&psi_t(lie, &f, t)?, &psi_t(lie, &g, t)?)?;
            let rhs = psi_t(lie, &lie_bracket.bracket(&f, &g)?, t)?;
            pairs += 1;
            if lhs != rhs {
                psi_ok = false;
            }
        }
    }

    let mu = sample_regular_mu(lie.root_system(), &mut rng)?;
    let qs = build_q_mu(lie, &mu)?;
    let mut rescale_ok = true;
    for t in &psi_ts {
        let scale = Q::one() / (t * t);
        for q_el in &qs {
            if psi_t(lie, q_el, t)? != q_el.scale(&scale) {
                rescale_ok = false;
            }
        }
    }

    Ok(PencilReport {
        type_label: lie.label().to_string(),
        seed,
        t_values: jacobi_ts.iter().map(q_to_string).collect(),
        jacobi_triples_checked: triples,
        jacobi_ok,
        psi_pairs_checked: pairs,
        psi_ok,
        q_mu_rescales_ok: rescale_ok,
    })
}

fn random_poly<R: rand::Rng>(rng: &mut R, dim: usize, max_degree: usize) -> SparsePoly {
    let mut p = SparsePoly::zero(dim);
    for _ in 0..4 {
        let d = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u16; dim];
        for _ in 0..d {
            exps[rng.gen_range(0..dim)] += 1;
        }
        p.add_term(Monomial(exps), q(rng.gen_range(-4..=4)));
    }
    p
}

fn random_homogeneous<R: rand::Rng>(rng: &mut R, dim: usize, degree: usize) -> SparsePoly {
    let mut p = SparsePoly::zero(dim);
    for _ in 0..4 {
        let mut exps = vec![0u16; dim];
        for _ in 0..degree {
            exps[rng.gen_range(0..dim)] += 1;
        }
        p.add_term(Monomial(exps), q(rng.gen_range(-4..=4)));
    }
    p
}

/// Symmetrization as a section of `gr`, the commutator-versus-bracket
/// comparison, and commutativity of the lifted quadratic slice.
pub fn pbw_suite(lie: &LieAlgebra, seed: u64, retries: u32) -> Result<PbwReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut straightener = crate::pbw::Straightener::new(lie);
    let dim = lie.dim();

    let mut gr_polys = 0;
    let mut gr_ok = true;
    for _ in 0..25 {
        let d = rng.gen_range(1..=4);
        let p = random_homogeneous(&mut rng, dim, d);
        if p.is_zero() {
            continue;
        }
        gr_polys += 1;
        if straightener.symmetrize(&p)?.gr() != p {
            gr_ok = false;
        }
    }

    let pencil = BracketPencil::lie_poisson(lie);
    let mut comm_pairs = 0;
    let mut comm_ok = true;
    for _ in 0..10 {
        let da = rng.gen_range(1..=2);
        let db = rng.gen_range(1..=2);
        let f = random_homogeneous(&mut rng, dim, da);
        let g = random_homogeneous(&mut rng, dim, db);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let sf = straightener.symmetrize(&f)?;
        let sg = straightener.symmetrize(&g)?;
        let c = straightener.commutator(&sf, &sg)?;
        comm_pairs += 1;
        if c.degree_part(da + db - 1) != pencil.bracket(&f, &g)? {
            comm_ok = false;
        }
    }

    let label = lie.label();
    let top = *generator_degrees(label)?.last().expect("nonempty");
    let set = extract_generators(lie, top)?;
    let mut slice = None;
    for _ in 0..=retries {
        let mu = sample_regular_mu(lie.root_system(), &mut rng)?;
        let family = ShiftFamily::new(lie, &set, mu)?;
        match family.quadratic_slice() {
            Ok(s) => {
                slice = Some(s);
                break;
            }
            Err(Error::NotInQuadraticSpan(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let slice = slice.ok_or(Error::RetriesExhausted {
        attempts: retries + 1,
        detail: "no sampled direction produced the expected quadratic slice".into(),
    })?;
    let lift = crate::pbw::check_quadratic_lift(lie, &slice)?;

    Ok(PbwReport {
        type_label: label.to_string(),
        seed,
        gr_symmetrize_polys_checked: gr_polys,
        gr_symmetrize_ok: gr_ok,
        gr_commutator_pairs_checked: comm_pairs,
        gr_commutator_ok: comm_ok,
        lift,
    })
}

/// Kernel dimensions of the adjoint action against the free series.
pub fn invariants_suite(lie: &LieAlgebra, nmax: usize) -> Result<InvariantsVerifyReport> {
    let degrees = generator_degrees(lie.label())?;
    let rows: Vec<InvariantRow> = (1..=nmax)
        .map(|n| {
            let dim_kernel = ad_invariant_space(lie, n).len();
            let dim_free = free_monomial_count(&degrees, n);
            InvariantRow {
                n,
                dim_kernel,
                dim_free_series: dim_free,
                equal: dim_kernel == dim_free,
            }
        })
        .collect();
    Ok(InvariantsVerifyReport {
        type_label: lie.label().to_string(),
        generator_degrees: degrees,
        degrees: rows,
    })
}

pub fn theorem1_suite(
    lie: &LieAlgebra,
    nmax: usize,
    seed: u64,
    retries: u32,
    augmented: bool,
) -> Result<TheoremOneReport> {
    let top = *generator_degrees(lie.label())?.last().expect("nonempty");
    let set = extract_generators(lie, top)?;
    verify_theorem1(lie, &set, nmax, seed, retries, augmented)
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension(match path.extension() {
                Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
                None => "tmp".to_string(),
            });
            std::fs::write(&tmp, content)?;
            std::fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn render_report<S: serde::Serialize>(report: &S, lines: Vec<String>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = lines.join("\n");
            s.push('\n');
            s
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn run_verify(suite: &VerifySuite) -> Result<(String, Option<PathBuf>, Outcome)> {
    match suite {
        VerifySuite::Theorem1 { common, augmented } => {
            let label = parse_type(&common.type_label)?;
            let lie = build_lie(label)?;
            let report = theorem1_suite(
                &lie,
                common.nmax.unwrap_or(3),
                common.seed,
                common.retries,
                *augmented,
            )?;
            let ok = report.passed();
            let text = report.text_lines();
            Ok((
                render_report(&report, text, common.format),
                common.out.clone(),
                if ok { Outcome::Pass } else { Outcome::Fail },
            ))
        }
        VerifySuite::Pencil { common } => {
            let label = parse_type(&common.type_label)?;
            let lie = build_lie(label)?;
            let report = pencil_suite(&lie, common.seed)?;
            let ok = report.passed();
            let text = report.text_lines();
            Ok((
                render_report(&report, text, common.format),
                common.out.clone(),
                if ok { Outcome::Pass } else { Outcome::Fail },
            ))
        }
        VerifySuite::Degenerate { common } => {
            let label = parse_type(&common.type_label)?;
            let lie = build_lie(label)?;
            let report = degenerate_suite(&lie, common.nmax.unwrap_or(3), common.seed, common.retries)?;
            let ok = report.passed();
            let text = report.text_lines();
            Ok((
                render_report(&report, text, common.format),
                common.out.clone(),
                if ok { Outcome::Pass } else { Outcome::Fail },
            ))
        }
        VerifySuite::Pbw { common } => {
            let label = parse_type(&common.type_label)?;
            let lie = build_lie(label)?;
            let report = pbw_suite(&lie, common.seed, common.retries)?;
            let ok = report.passed();
            let text = report.text_lines();
            Ok((
                render_report(&report, text, common.format),
                common.out.clone(),
                if ok { Outcome::Pass } else { Outcome::Fail },
            ))
        }
        VerifySuite::Invariants { common } => {
            let label = parse_type(&common.type_label)?;
            let lie = build_lie(label)?;
            let report = invariants_suite(&lie, common.nmax.unwrap_or(4))?;
            let ok = report.passed();
            let text = report.text_lines();
            Ok((
                render_report(&report, text, common.format),
                common.out.clone(),
                if ok { Outcome::Pass } else { Outcome::Fail },
            ))
        }
        VerifySuite::All { common } => {
            let label = parse_type(&common.type_label)?;
            let lie = build_lie(label)?;
            let nmax = common.nmax.unwrap_or(3);
            let degenerate = degenerate_suite(&lie, nmax, common.seed, common.retries)?;
            let invariants = invariants_suite(&lie, nmax.max(4))?;
            let pbw = pbw_suite(&lie, common.seed, common.retries)?;
            let pencil = pencil_suite(&lie, common.seed)?;
            let theorem1 = theorem1_suite(&lie, nmax, common.seed, common.retries, false)?;
            let ok = degenerate.passed()
                && invariants.passed()
                && pbw.passed()
                && pencil.passed()
                && theorem1.passed();

            // Suites in alphabetical order; records within a suite are
            // already degree-sorted.
            let mut records = Vec::new();
            records.extend(degenerate.degree_records());
            records.extend(invariants.degree_records());
            records.extend(pbw.degree_records());
            records.extend(pencil.degree_records());
            records.extend(theorem1.degree_records());

            let content = match common.format {
                Format::Json => {
                    let mut s = String::new();
                    for r in &records {
                        s.push_str(&render_json(r));
                    }
                    s
                }
                Format::Text => {
                    let mut lines = Vec::new();
                    lines.extend(degenerate.text_lines());
                    lines.extend(invariants.text_lines());
                    lines.extend(pbw.text_lines());
                    lines.extend(pencil.text_lines());
                    lines.extend(theorem1.text_lines());
                    lines.push(format!("all: {}", if ok { "PASS" } else { "FAIL" }));
                    let mut s = lines.join("\n");
                    s.push('\n');
                    s
                }
            };
            Ok((
                content,
                common.out.clone(),
                if ok { Outcome::Pass } else { Outcome::Fail },
            ))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Describe { common } => {
            let label = parse_type(&common.type_label)?;
            let v = describe_value(label)?;
            let content = match common.format {
                Format::Json => render_json(&v),
                Format::Text => describe_text(&v),
            };
            write_output(common.out.as_deref(), &content)?;
            Ok(Outcome::Pass)
        }
        Command::Invariants { common } => {
            let label = parse_type(&common.type_label)?;
            let v = invariants_value(label)?;
            let content = match common.format {
                Format::Json => render_json(&v),
                Format::Text => generators_text(&v),
            };
            write_output(common.out.as_deref(), &content)?;
            Ok(Outcome::Pass)
        }
        Command::Shift { common } => {
            let label = parse_type(&common.type_label)?;
            let v = shift_value(label, common.seed, common.nmax.unwrap_or(3))?;
            let content = match common.format {
                Format::Json => render_json(&v),
                Format::Text => shift_text(&v),
            };
            write_output(common.out.as_deref(), &content)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { suite } => {
            let (content, out, outcome) = run_verify(suite)?;
            write_output(out.as_deref(), &content)?;
            Ok(outcome)
        }
    }
}

/// Parses arguments, runs the command, and maps the result to an exit code:
/// 0 on success, 1 when a verification ran but failed, 2 on errors (bad
/// input, I/O, retry exhaustion) with a JSON error object on stderr.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            let obj = ErrorObject {
                error: error_kind(&e).to_string(),
                detail: e.to_string(),
            };
            eprintln!("{}", serde_json::to_string(&obj).expect("serializable"));
            2
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedType(_) => "unsupported_type",
        Error::NotARoot(_) => "not_a_root",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::BasisMismatch => "basis_mismatch",
        Error::NonRegularMu { .. } => "non_regular_mu",
        Error::SignConsistency(_) => "sign_consistency",
        Error::NonlinearInput => "nonlinear_input",
        Error::InhomogeneousInput => "inhomogeneous_input",
        Error::ZeroPencilParameter => "zero_pencil_parameter",
        Error::DegreeBookkeeping(_) => "degree_bookkeeping",
        Error::DependentGenerators { .. } => "dependent_generators",
        Error::NotInQuadraticSpan(_) => "not_in_quadratic_span",
        Error::NonCommutingFamily(_) => "non_commuting_family",
        Error::RetriesExhausted { .. } => "retries_exhausted",
        Error::Io(_) => "io",
    }
}
