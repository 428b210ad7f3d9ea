//! `qcgamma`: every acceptance computation as a subcommand.
//!
//! Exit codes: 0 when the computed checks pass, 2 when a check fails,
//! 1 on usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use qcgamma::asymptotics::{
    apery_ratios, c1_cap, limit_ratio, mellin_psi, psi_asymptotic_constant, psi_gamma_pairing, psi_residue_sum,
    radius_estimate, Covector, QuadSettings,
};
use qcgamma::char_classes::{gamma_class, gamma_class_closed_form, gamma_class_from_roots, zeta_regularized_product};
use qcgamma::cohomology_ring::box_partitions;
use qcgamma::json::{complex, sci};
use qcgamma::linalg::det_i64;
use qcgamma::mrs::{beilinson_gamma_mrs, integer_gram, kapranov_gamma_mrs, rounded_gram, Mrs, MutationLogEntry};
use qcgamma::quantum_connection::{j_closed_form_p, j_coefficients, quantum_period, quantum_period_ln_abs, spectrum};
use qcgamma::satake::{check_kapranov_wedge_identity, check_mrs_wedge, check_pairing_transport, check_wedge_spectrum};
use qcgamma::{verify, CohClass, Kind, Partition, Ring, DD};

#[derive(Parser, Debug)]
#[command(name = "qcgamma", version, about = "Quantum cohomology, Gamma classes and Stokes data of P^{N-1} and G(r,N)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Precision {
    F64,
    Dd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Eigenvalues of c1 * at q = 1 and Property O.
    Spectrum {
        /// P(d) or G(r,N).
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Gamma class from Chern roots, checked against the closed form.
    Gamma {
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = Precision::F64)]
        precision: Precision,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Coefficients J_n of the J-function and optionally J(t).
    Jfun {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Evaluate J at this t > 0.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Quantum period G_n and the running radius estimate.
    Period {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        /// Fail when the estimate is further than this relative distance from T.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// J(t) / <[pt], J(t)> against the Gamma class on a grid of t.
    Limit {
        #[arg(long)]
        target: String,
        /// Comma-separated grid.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Apery ratios for a homology class with c1 cap gamma = 0.
    Apery {
        #[arg(long)]
        target: String,
        /// Covector as label:coefficient pairs, e.g. "[2]:1,[1,1]:-1".
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Mellin solution Psi by quadrature, residue sum and Gamma pairing.
    Psi {
        /// Order N of the equation (target P^{N-1}).
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "0.5,1,2")]
        t: Vec<f64>,
        /// Real part of the contour.
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        /// Grid for the asymptotic constant.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        asymptotic: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Stokes matrix of the Gamma MRS at a phase.
    Stokes {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = -0.05, allow_hyphen_values = true)]
        phase: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Braid action, phase rotation or monodromy of the Gamma MRS.
    Mutate {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = -0.05, allow_hyphen_values = true)]
        phase: f64,
        /// Braid word on the phase-ordered basis, e.g. "1,-2".
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["to", "turns"])]
        word: Option<Vec<i32>>,
        /// Rotate the phase to this value.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "turns")]
        to: Option<f64>,
        /// Monodromy of this many full turns.
        #[arg(long, allow_hyphen_values = true)]
        turns: Option<i32>,
    },
    /// Satake checks between P^{N-1} and G(r,N).
    Satake {
        /// G(r,N).
        #[arg(long)]
        target: String,
        /// Single partition for the Kapranov identity; defaults to the whole box.
        #[arg(long)]
        nu: Option<String>,
        /// Phase for the MRS wedge check.
        #[arg(long, allow_hyphen_values = true)]
        phase: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Zeta-regularized product against its closed form.
    Zetareg {
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long)]
        z: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the full acceptance suite.
    VerifyAll,
}

/// Result of a subcommand: JSON, an optional CSV table and the check verdict.
struct Output {
    json: Value,
    table: Option<Table>,
    pass: bool,
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn render(&self) -> String {
        let line = |r: &[String]| {
            let cells: Vec<String> =
                r.iter().map(|c| if c.contains([',', '"']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() }).collect();
            cells.join(",") + "\n"
        };
        std::iter::once(line(&self.header)).chain(self.rows.iter().map(|r| line(r))).collect()
    }
}

fn ring(target: &str) -> Result<Arc<Ring>> {
    let kind: Kind = target.parse()?;
    Ok(Ring::build(kind)?)
}

fn class_table(c: &CohClass<f64>) -> Table {
    let mut t = Table::new(&["label", "re", "im"]);
    for (i, z) in c.coeffs().iter().enumerate() {
        t.rows.push(vec![c.ring().label_string(i), sci(z.re), sci(z.im)]);
    }
    t
}

fn matrix_json(m: &[Vec<C64>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|&z| complex(z)).collect())).collect())
}

fn matrix_table(m: &[Vec<i64>]) -> Table {
    let mut t = Table { header: (0..m.len()).map(|j| format!("c{j}")).collect(), rows: Vec::new() };
    for r in m {
        t.rows.push(r.iter().map(|x| x.to_string()).collect());
    }
    t
}

fn log_json(log: &[MutationLogEntry]) -> Value {
    Value::Array(
        log.iter()
            .map(|e| {
                json!({
                    "at": e.at,
                    "moved": e.moved,
                    "across": e.across,
                    "direction": e.direction.map(|d| d.as_str()),
                })
            })
            .collect(),
    )
}

fn gamma_mrs(ring: &Arc<Ring>, phase: f64) -> Result<Mrs> {
    Ok(match ring.kind() {
        Kind::ProjSpace { n } => beilinson_gamma_mrs(n, 0.0, phase)?,
        Kind::Grassmannian { .. } => kapranov_gamma_mrs(ring, phase)?.0,
    })
}

fn cmd_spectrum(target: &str, tol: f64) -> Result<Output> {
    let ring = ring(target)?;
    let s = spectrum(&ring)?;
    let mut table = Table::new(&["re", "im", "multiplicity"]);
    for e in &s.eigenvalues {
        table.rows.push(vec![sci(e.value.re), sci(e.value.im), e.multiplicity.to_string()]);
    }
    let json = json!({
        "target": ring.kind().to_string(),
        "eigenvalues": s.eigenvalues.iter().map(|e| complex(e.value)).collect::<Vec<_>>(),
        "multiplicities": s.eigenvalues.iter().map(|e| e.multiplicity).collect::<Vec<_>>(),
        "T": s.t,
        "T_prime": s.t_prime,
        "T_multiplicity": s.t_multiplicity,
        "property_o": s.property_o.holds,
        "violated_clause": s.property_o.violated_clause,
        "closed_form_residual": s.closed_form_residual,
    });
    Ok(Output { json, table: Some(table), pass: s.closed_form_residual < tol })
}

fn cmd_gamma(target: &str, precision: Precision, tol: f64) -> Result<Output> {
    let ring = ring(target)?;
    let (g, closed, roots) = match precision {
        Precision::F64 => (
            gamma_class::<f64>(&ring),
            gamma_class_closed_form::<f64>(&ring),
            gamma_class_from_roots::<f64>(&ring),
        ),
        Precision::Dd => (
            gamma_class::<DD>(&ring).to_f64(),
            gamma_class_closed_form::<DD>(&ring).to_f64(),
            gamma_class_from_roots::<DD>(&ring).to_f64(),
        ),
    };
    let residual = g.max_abs_diff(&closed).max(g.max_abs_diff(&roots));
    let json = json!({
        "target": ring.kind().to_string(),
        "precision": if precision == Precision::F64 { "f64" } else { "dd" },
        "gamma": g.to_json(),
        "closed_form_residual": residual,
    });
    Ok(Output { json, table: Some(class_table(&g)), pass: residual < tol })
}

fn cmd_jfun(target: &str, nmax: usize, t: Option<f64>, tol: f64) -> Result<Output> {
    let ring = ring(target)?;
    let coeffs = j_coefficients::<f64>(&ring, nmax);
    let mut table = Table::new(&["n", "label", "re", "im"]);
    for (n, c) in coeffs.iter().enumerate() {
        for (i, z) in c.coeffs().iter().enumerate() {
            table.rows.push(vec![n.to_string(), ring.label_string(i), sci(z.re), sci(z.im)]);
        }
    }
    let mut json = json!({
        "target": ring.kind().to_string(),
        "nmax": nmax,
        "coefficients": coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    let mut pass = true;
    if let Kind::ProjSpace { .. } = ring.kind() {
        let closed = j_closed_form_p::<f64>(&ring, nmax)?;
        let d = coeffs.iter().zip(&closed).fold(0.0f64, |m, (a, b)| m.max(a.max_abs_diff(b)));
        pass = d < tol;
        json["closed_form_residual"] = json!(d);
    }
    if let Some(t) = t {
        if !(t > 0.0) {
            bail!("--t must be positive, got {t}");
        }
        json["t"] = json!(t);
        json["value"] = qcgamma::asymptotics::eval_j(&ring, t, None)?.to_json();
    }
    Ok(Output { json, table: Some(table), pass })
}

fn cmd_period(target: &str, nmax: usize, tol: Option<f64>) -> Result<Output> {
    let ring = ring(target)?;
    let g = quantum_period(&ring, nmax);
    let rad = radius_estimate(&quantum_period_ln_abs(&ring, nmax), 1);
    let t = spectrum(&ring)?.t;
    let rel = (rad.estimate - t).abs() / t;
    let mut table = Table::new(&["n", "G_n", "radius"]);
    for (n, x) in g.iter().enumerate() {
        let r = rad.running.iter().find(|(m, _)| *m == n).map_or(String::new(), |(_, v)| sci(*v));
        table.rows.push(vec![n.to_string(), sci(*x), r]);
    }
    let json = json!({
        "target": ring.kind().to_string(),
        "nmax": nmax,
        "G": g,
        "radius_estimate": rad.estimate,
        "T": t,
        "rel_error": rel,
    });
    Ok(Output { json, table: Some(table), pass: tol.is_none_or(|tol| rel < tol) })
}

fn cmd_limit(target: &str, grid: &[f64], tol: f64) -> Result<Output> {
    let ring = ring(target)?;
    if grid.iter().any(|&t| !(t > 0.0)) {
        bail!("--t values must be positive");
    }
    let rep = limit_ratio(&ring, grid)?;
    let last = *rep.deviations.last().expect("non-empty grid");
    let mut table = Table::new(&["t", "deviation"]);
    for (t, d) in rep.grid.iter().zip(&rep.deviations) {
        table.rows.push(vec![sci(*t), sci(*d)]);
    }
    let json = json!({
        "target": ring.kind().to_string(),
        "grid": rep.grid,
        "values": rep.values.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "extrapolated": rep.extrapolated.to_json(),
        "gamma": rep.target.to_json(),
        "deviations": rep.deviations,
        "extrapolated_deviation": rep.extrapolated_deviation,
    });
    Ok(Output { json, table: Some(table), pass: last < tol })
}

fn cmd_apery(target: &str, gamma: &str, n: usize, tol: f64) -> Result<Output> {
    let ring = ring(target)?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let cov = Covector::parse(&ring, gamma)?;
    let exact = if cov.0.iter().all(|x| x.fract() == 0.0) {
        let ints: Vec<i64> = cov.0.iter().map(|&x| x as i64).collect();
        Some(c1_cap(&ring, &ints).iter().all(|&x| x == 0))
    } else {
        None
    };
    let rep = apery_ratios(&ring, &cov, n)?;
    let mut table = Table::new(&["n", "ratio", "gap"]);
    for (i, (r, g)) in rep.ratios.iter().zip(&rep.gaps).enumerate() {
        table.rows.push(vec![(i + 1).to_string(), sci(*r), sci(*g)]);
    }
    let json = json!({
        "target": ring.kind().to_string(),
        "gamma": cov.0,
        "c1_cap_exact_zero": exact,
        "ratios": rep.ratios,
        "target_value": rep.target,
        "final_gap": rep.final_gap,
    });
    Ok(Output { json, table: Some(table), pass: rep.final_gap < tol && exact != Some(false) })
}

fn cmd_psi(n: usize, ts: &[f64], c: f64, asymptotic: Option<&[f64]>, tol: f64) -> Result<Output> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let q = QuadSettings::default();
    let mut rows = Vec::new();
    let mut table = Table::new(&["t", "quadrature", "residue_sum", "gamma_pairing"]);
    let mut worst = 0.0f64;
    for &t in ts {
        if !(t > 0.0) {
            bail!("--t values must be positive");
        }
        let a = mellin_psi(n, t, c, &q)?;
        let b = psi_residue_sum(n, t, 60);
        let g = psi_gamma_pairing(n, t, 60)?;
        worst = worst.max((a - b).abs()).max((a - g).abs()).max((b - g).abs());
        table.rows.push(vec![sci(t), sci(a), sci(b), sci(g)]);
        rows.push(json!({ "t": t, "quadrature": a, "residue_sum": b, "gamma_pairing": g }));
    }
    let mut json = json!({ "n": n, "c": c, "values": rows, "max_disagreement": worst });
    let mut pass = worst < tol;
    if let Some(grid) = asymptotic {
        let rep = psi_asymptotic_constant(n, grid)?;
        pass &= (rep.extrapolated - rep.expected).abs() < 1e-3;
        json["asymptotic"] = json!({
            "grid": rep.grid,
            "scaled": rep.scaled,
            "extrapolated": rep.extrapolated,
            "expected": rep.expected,
            "rel_error": rep.rel_error,
        });
    }
    Ok(Output { json, table: Some(table), pass })
}

fn cmd_stokes(target: &str, phase: f64, tol: f64) -> Result<Output> {
    let ring = ring(target)?;
    let m = gamma_mrs(&ring, phase)?;
    let s = m.stokes_matrix()?;
    let ints = rounded_gram(&m.as_sob(), tol).or_else(|| integer_gram(&s, tol));
    let json = json!({
        "target": ring.kind().to_string(),
        "phase": phase,
        "mrs": m.to_json(),
        "stokes": matrix_json(&s),
        "integer": ints,
    });
    let pass = ints.is_some();
    Ok(Output { json, table: ints.as_deref().map(matrix_table), pass })
}

fn cmd_mutate(target: &str, phase: f64, word: Option<&[i32]>, to: Option<f64>, turns: Option<i32>) -> Result<Output> {
    let ring = ring(target)?;
    let m = gamma_mrs(&ring, phase)?;
    let base = json!({ "target": ring.kind().to_string(), "phase": phase });
    let mut json = base;
    if let Some(w) = word {
        let sob = m.sort_by_phase()?.braid_act(w)?;
        let g = rounded_gram(&sob, 1e-9);
        json["word"] = json!(w);
        json["gram"] = json!(g);
        let pass = g.is_some();
        Ok(Output { json, table: g.as_deref().map(matrix_table), pass })
    } else if let Some(to) = to {
        let (next, log) = m.rotate_phase(to)?;
        let g = rounded_gram(&next.as_sob(), 1e-9);
        json["to"] = json!(to);
        json["log"] = log_json(&log);
        json["mrs"] = next.to_json();
        json["stokes"] = json!(g);
        let pass = g.is_some();
        Ok(Output { json, table: g.as_deref().map(matrix_table), pass })
    } else {
        let k = turns.unwrap_or(1);
        let mono = m.monodromy(k)?;
        let ints = integer_gram(&mono, 1e-9);
        let det = ints.as_ref().map(|x| det_i64(x));
        json["turns"] = json!(k);
        json["monodromy"] = matrix_json(&mono);
        json["integer"] = json!(ints);
        json["det"] = json!(det);
        let pass = det.is_some_and(|d| d.abs() == 1);
        Ok(Output { json, table: ints.as_deref().map(matrix_table), pass })
    }
}

fn cmd_satake(target: &str, nu: Option<&str>, phase: Option<f64>, tol: f64) -> Result<Output> {
    let (r, n) = match target.parse::<Kind>()? {
        Kind::Grassmannian { r, n } => (r, n),
        Kind::ProjSpace { n } => (1, n),
    };
    let spec = check_wedge_spectrum(r, n)?;
    let nus = match nu {
        Some(s) => vec![s.parse::<Partition>()?],
        None => box_partitions(r, n - r),
    };
    let mut table = Table::new(&["nu", "residual"]);
    let mut kap = Vec::new();
    let mut worst = 0.0f64;
    for nu in &nus {
        let rep = check_kapranov_wedge_identity(r, n, nu)?;
        worst = worst.max(rep.residual);
        table.rows.push(vec![nu.to_string(), sci(rep.residual)]);
        kap.push(json!({ "nu": nu.to_string(), "residual": rep.residual }));
    }
    let pairing = check_pairing_transport(r, n)?;
    let mut pass = spec.residual < 1e-8 && worst < tol && pairing < 1e-9;
    let mut json = json!({
        "r": r,
        "n": n,
        "spectrum_residual": spec.residual,
        "kapranov": kap,
        "kapranov_max_residual": worst,
        "pairing_residual": pairing,
    });
    if let Some(phase) = phase {
        let w = check_mrs_wedge(r, n, phase)?;
        pass &= w.pass;
        json["mrs_wedge"] = json!({
            "phase": phase,
            "vector_residual": w.vector_residual,
            "marking_residual": w.marking_residual,
            "spectrum_residual": w.spectrum_residual,
            "gram_match": w.gram_match,
            "pass": w.pass,
        });
    }
    Ok(Output { json, table: Some(table), pass })
}

fn cmd_zetareg(delta: f64, z: f64, tol: f64) -> Result<Output> {
    let rep = zeta_regularized_product(delta, z)?;
    let mut table = Table::new(&["delta", "z", "numeric", "closed_form", "rel_error"]);
    table.rows.push(vec![sci(delta), sci(z), sci(rep.numeric), sci(rep.closed_form), sci(rep.rel_error)]);
    let json = json!({
        "delta": delta,
        "z": z,
        "numeric": rep.numeric,
        "closed_form": rep.closed_form,
        "rel_error": rep.rel_error,
    });
    Ok(Output { json, table: Some(table), pass: rep.rel_error < tol })
}

fn cmd_verify_all() -> Output {
    let list = verify::run_all();
    for c in &list {
        println!("{}", c.line());
    }
    let passed = list.iter().filter(|c| c.pass).count();
    println!("{passed}/{} criteria passed", list.len());
    let mut table = Table::new(&["id", "name", "pass"]);
    for c in &list {
        table.rows.push(vec![c.id.to_string(), c.name.to_string(), c.pass.to_string()]);
    }
    let pass = passed == list.len();
    let json = json!({ "criteria": list.iter().map(|c| c.to_json()).collect::<Vec<_>>(), "pass": pass });
    Output { json, table: Some(table), pass }
}

fn dispatch(cmd: &Cmd) -> Result<Output> {
    match cmd {
        Cmd::Spectrum { target, tol } => cmd_spectrum(target, *tol),
        Cmd::Gamma { target, precision, tol } => cmd_gamma(target, *precision, *tol),
        Cmd::Jfun { target, nmax, t, tol } => cmd_jfun(target, *nmax, *t, *tol),
        Cmd::Period { target, nmax, tol } => cmd_period(target, *nmax, *tol),
        Cmd::Limit { target, t, tol } => cmd_limit(target, t, *tol),
        Cmd::Apery { target, gamma, n, tol } => cmd_apery(target, gamma, *n, *tol),
        Cmd::Psi { n, t, c, asymptotic, tol } => cmd_psi(*n, t, *c, asymptotic.as_deref(), *tol),
        Cmd::Stokes { target, phase, tol } => cmd_stokes(target, *phase, *tol),
        Cmd::Mutate { target, phase, word, to, turns } => cmd_mutate(target, *phase, word.as_deref(), *to, *turns),
        Cmd::Satake { target, nu, phase, tol } => cmd_satake(target, nu.as_deref(), *phase, *tol),
        Cmd::Zetareg { delta, z, tol } => cmd_zetareg(*delta, *z, *tol),
        Cmd::VerifyAll => Ok(cmd_verify_all()),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let out = dispatch(&cli.cmd)?;
    let text = match cli.format {
        Format::Json => qcgamma::json::to_string(&out.json) + "\n",
        Format::Csv => match &out.table {
            Some(t) => t.render(),
            None => bail!("--format csv: this result has no tabular form; use --format json"),
        },
    };
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None if matches!(cli.cmd, Cmd::VerifyAll) => {}
        None => print!("{text}"),
    }
    Ok(out.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
