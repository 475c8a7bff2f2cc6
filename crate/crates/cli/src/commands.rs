use std::fmt::{self, Write as _};
use std::path::Path;

use g6q_core::cartan::{
    compose_factorization, conjugation_table, kak_decompose, phase_equivalent, FactorTarget, Factorization, KAK_TOL,
};
use g6q_core::channels::{channel_report, kraus_apply, ChannelReport, KrausIndex};
use g6q_core::ga::{CheckLine, Multivector, MultivectorJson};
use g6q_core::iso::{
    adoption, density_from_state, entanglement_entropy, matrix_to_even, purity_moments, standard_entropy,
    state_from_schmidt, DensityOperator, LogBase, PurityMoments, SchmidtParams,
};
use g6q_core::oracle::{ComplexMatrix, C64};
use g6q_core::selftest::{run_all, summary_line};
use g6q_core::tables::{reference_table, reference_tables};
use g6q_core::Error;
use serde::Serialize;
use serde_json::Value;

/// A finished report: JSON form, text form and the overall verdict.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    /// The computation itself failed.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) | CliError::Numeric(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::DimensionMismatch(_) | Error::NotSquare(..) => CliError::Input(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn push_line(text: &mut String, l: &CheckLine) {
    let _ = writeln!(
        text,
        "  {} {} [{:.3e} < {:.0e}]",
        verdict(l.pass),
        l.name,
        l.deviation,
        l.tolerance
    );
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| CliError::Input(format!("malformed {what} JSON: {e}")))
}

pub fn verify_iso() -> Result<Outcome> {
    let a = adoption();
    let report = a.adopted_report();
    let pass = report.pass();
    let mut text = format!("adopted convention: {}\n", a.adopted);
    for l in &report.lines {
        push_line(&mut text, l);
    }
    for r in a.rejected() {
        let _ = writeln!(
            text,
            "rejected convention: {} (max pair deviation {:.3e})",
            r.convention, r.max_pair_deviation
        );
        for d in &r.discrepancies {
            let _ = writeln!(text, "  {d}");
        }
    }
    let _ = writeln!(text, "{} max deviation {:.3e}", verdict(pass), report.max_pair_deviation);
    Ok(Outcome {
        json: serde_json::json!({ "pass": pass, "adoption": a }),
        text,
        pass,
    })
}

pub fn tables(op: &str) -> Result<Outcome> {
    let u = match op {
        "Q" => g6q_core::cartan::q_matrix(),
        _ => g6q_core::cartan::q_prime_matrix(),
    };
    let table = conjugation_table(&u)?;
    let reference = reference_tables()?;
    let diff = table.diff(&reference_table(op)?);
    let pass = table.monomial();
    let mut text = format!("{op}, action {}:\n", reference.action);
    for e in &table.entries {
        match e.image {
            Some(s) => {
                let _ = writeln!(text, "  {} -> {s}", e.from);
            }
            None => {
                let _ = writeln!(text, "  {} -> non-monomial (nearest at {:.3e})", e.from, e.residual);
            }
        }
    }
    text.push_str(&table.to_string());
    if diff.is_empty() {
        let _ = writeln!(text, "reference table v{}: no differences", reference.version);
    } else {
        let _ = writeln!(text, "reference table v{}: {} differences", reference.version, diff.len());
        for d in &diff {
            let computed = d.computed.map_or("non-monomial".to_string(), |s| s.to_string());
            let _ = writeln!(text, "  {}: computed {computed}, reference {}", d.from, d.reference);
        }
    }
    let _ = writeln!(text, "{} monomial action (max residual {:.3e})", verdict(pass), table.max_residual());
    Ok(Outcome {
        json: serde_json::json!({
            "op": op,
            "action": reference.action,
            "reference_version": reference.version,
            "monomial": pass,
            "entries": table.entries,
            "diff": diff,
            "pass": pass,
        }),
        text,
        pass,
    })
}

#[derive(Serialize)]
struct SchmidtReport {
    params: SchmidtParams,
    psi: Multivector,
    state_vector: Vec<C64>,
    density: Multivector,
    density_matrix: ComplexMatrix,
    purity: PurityMoments,
    log_base: LogBase,
    /// `-c log c - s log s` with `c, s = |cos(ς/2)|, |sin(ς/2)|`.
    entropy_formula: f64,
    /// Von Neumann entropy of the reduced state.
    entropy_standard: f64,
}

pub fn schmidt(path: &Path, log2: bool) -> Result<Outcome> {
    let params = SchmidtParams::from_json_str(&read(path)?)?;
    let state = state_from_schmidt(&params)?;
    let density = density_from_state(&state)?;
    let base = if log2 { LogBase::Two } else { LogBase::Natural };
    let r = SchmidtReport {
        params,
        psi: state.psi().clone(),
        state_vector: state.state_vector()?,
        density_matrix: density.matrix()?,
        purity: purity_moments(&density)?,
        density: density.into_rho(),
        log_base: base,
        entropy_formula: entanglement_entropy(&params, base),
        entropy_standard: standard_entropy(&state, base)?,
    };
    let mut text = String::new();
    let _ = writeln!(text, "Psi = {}", r.psi);
    let _ = writeln!(text, "rho = {}", r.density);
    let _ = writeln!(text, "rho as a matrix:\n{}", r.density_matrix);
    let _ = writeln!(text, "purity moments: m2 = {:.6}, m3 = {:.6}, m4 = {:.6}", r.purity.m2, r.purity.m3, r.purity.m4);
    let _ = writeln!(text, "entropy (cos/sin formula): {:.12}", r.entropy_formula);
    let _ = writeln!(text, "entropy (reduced state):   {:.12}", r.entropy_standard);
    Ok(Outcome {
        json: to_value(&r),
        text,
        pass: true,
    })
}

#[derive(Serialize)]
struct KakReport {
    factorization: Factorization,
    raw: [f64; 3],
    canonical: [f64; 3],
    residual: f64,
    phase_residual: f64,
    tolerance: f64,
    pass: bool,
}

pub fn kak(path: &Path, tol: Option<f64>) -> Result<Outcome> {
    let u: ComplexMatrix = parse_json(&read(path)?, "matrix")?;
    let tol = tol.unwrap_or(KAK_TOL);
    let k = kak_decompose(&u)?;
    let composed = compose_factorization(&k.factorization)?.matrix;
    let phase_residual = phase_equivalent(&composed, &u, f64::INFINITY)?.residual;
    let pass = k.residual < tol;
    let r = KakReport {
        factorization: k.factorization,
        raw: k.raw,
        canonical: k.canonical,
        residual: k.residual,
        phase_residual,
        tolerance: tol,
        pass,
    };
    let mut text = String::new();
    let _ = writeln!(text, "factorization: {}", serde_json::to_string(&r.factorization).expect("serializes"));
    let _ = writeln!(text, "middle (raw):       {:?}", r.raw);
    let _ = writeln!(text, "middle (canonical): {:?}", r.canonical);
    let _ = writeln!(text, "{} reconstruction residual {:.3e} (up to phase {:.3e})", verdict(pass), r.residual, phase_residual);
    Ok(Outcome {
        json: to_value(&r),
        text,
        pass,
    })
}

pub fn factor_check(target: FactorTarget, tol: Option<f64>) -> Result<Outcome> {
    let mut report = g6q_core::cartan::factor_check(target)?;
    if let Some(t) = tol {
        for c in &mut report.candidates {
            c.pass = c.phase_match.is_some_and(|m| m.residual < t) && c.agreement < t;
        }
    }
    let pass = report.pass();
    let mut text = format!("target {target}:\n{}", report.target_matrix);
    for c in &report.candidates {
        let residual = c.phase_match.map_or("n/a (not unitary)".to_string(), |m| format!("{:.3e}", m.residual));
        let _ = writeln!(
            text,
            "  {} {}: residual up to phase {residual}, unitarity deviation {:.3e}",
            verdict(c.pass),
            c.name,
            c.unitarity_deviation
        );
        if let Some(m) = c.phase_match {
            let _ = writeln!(text, "      phase {:.12}", m.phase);
        }
        let _ = writeln!(text, "      composed matrix:");
        for row in c.matrix.to_string().lines() {
            let _ = writeln!(text, "      {row}");
        }
    }
    for l in &report.lines {
        push_line(&mut text, l);
    }
    let _ = writeln!(text, "{}", verdict(pass));
    Ok(Outcome {
        json: serde_json::json!({ "report": report, "pass": pass }),
        text,
        pass,
    })
}

fn read_density(path: &Path) -> Result<DensityOperator> {
    let v: Value = parse_json(&read(path)?, "density")?;
    let rho = if v.get("signature").is_some() {
        let j: MultivectorJson = serde_json::from_value(v).map_err(|e| CliError::Input(format!("malformed multivector JSON: {e}")))?;
        Multivector::from_json(&j)?
    } else if v.get("rows").is_some() {
        let m: ComplexMatrix = serde_json::from_value(v).map_err(|e| CliError::Input(format!("malformed matrix JSON: {e}")))?;
        matrix_to_even(&m)?
    } else {
        return Err(CliError::Input("density must be multivector JSON or matrix JSON".into()));
    };
    Ok(DensityOperator::new(rho)?)
}

#[derive(Serialize)]
struct KrausReport {
    #[serde(flatten)]
    channel: ChannelReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<Multivector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<Multivector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output_matrix: Option<ComplexMatrix>,
    pass: bool,
}

pub fn kraus(k: usize, rho: Option<&Path>) -> Result<Outcome> {
    let k = KrausIndex::new(k)?;
    let channel = channel_report(k)?;
    let pass = channel.trace_preserving && channel.completely_positive;
    let (mut input, mut output, mut output_matrix) = (None, None, None);
    if let Some(path) = rho {
        let d = read_density(path)?;
        let out = kraus_apply(k, &d)?;
        output_matrix = Some(out.matrix()?);
        input = Some(d.into_rho());
        output = Some(out.into_rho());
    }
    let r = KrausReport {
        channel,
        input,
        output,
        output_matrix,
        pass,
    };
    let c = &r.channel;
    let mut text = format!("M_{} (vector {}):\n", c.k, c.vector);
    let _ = writeln!(text, "  trace preserving:     {}", c.trace_preserving);
    let _ = writeln!(text, "  Choi hermiticity:     {:.3e}", c.choi_hermiticity);
    let _ = writeln!(text, "  Choi min eigenvalue:  {:.12}", c.min_choi_eig);
    let _ = writeln!(text, "  completely positive:  {}", c.completely_positive);
    let _ = writeln!(text, "  boundary:             {}", c.boundary);
    if let (Some(i), Some(o)) = (&r.input, &r.output) {
        let _ = writeln!(text, "  rho    = {i}");
        let _ = writeln!(text, "  M rho  = {o}");
    }
    let _ = writeln!(text, "{} completely positive and trace preserving", verdict(pass));
    Ok(Outcome {
        json: to_value(&r),
        text,
        pass,
    })
}

pub fn selftest(seed: u64) -> Result<Outcome> {
    let reports = run_all(seed)?;
    let pass = reports.iter().all(|r| r.pass());
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{}", summary_line(r));
    }
    let passed = reports.iter().filter(|r| r.pass()).count();
    let _ = writeln!(text, "{} {passed}/{} criteria", verdict(pass), reports.len());
    Ok(Outcome {
        json: serde_json::json!({ "seed": seed, "criteria": reports, "pass": pass }),
        text,
        pass,
    })
}
