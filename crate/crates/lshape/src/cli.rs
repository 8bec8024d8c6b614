//! Command-line front end: every computation behind one subcommand, with
//! CSV or JSON output fit for plotting and regression fixtures.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (invalid region,
//! regime, or parameters), 3 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};

use crate::asympt::{self, EtaMethod, ScaledPoint};
use crate::eqmeasure::{self, GasParams};
use crate::exactcore::{self, LshapeDims, ModelParams};
use crate::harness::{self, RoundingRule, Suite};
use crate::scalar::{exact_from_str, exact_to_string, RealScalar};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "lshape",
    version,
    about = "Six-vertex model in an L-shaped domain: exact partition functions and limit-shape thermodynamics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for grid sweeps (default: LSHAPE_JOBS or all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NumericMode {
    Exact,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Bisect,
    Both,
}

impl From<MethodArg> for EtaMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => EtaMethod::ClosedForm,
            MethodArg::Bisect => EtaMethod::Bisection,
            MethodArg::Both => EtaMethod::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Emptiness formation probability F[r,s,q], exact or real-arithmetic.
    Efp {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        q: u32,
        /// Bias as "p/q" or a decimal (decimals convert exactly).
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = NumericMode::Exact)]
        mode: NumericMode,
        /// Mantissa bits for the real path (default: LSHAPE_PREC_BITS or by size).
        #[arg(long)]
        prec: Option<usize>,
    },
    /// L-shaped partition function Z[r,s,q] (s = 0 gives the square Z_N).
    Zpart {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Rate function phi and free energy at a point or over a grid.
    Phi {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        alpha: f64,
        /// Normalization entering the free energy column.
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// Sweep an NX,NY grid over the triangle instead of one point.
        #[arg(long, value_name = "NX,NY")]
        grid: Option<String>,
    },
    /// The eta root of the saddle-point equation.
    Eta {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Regime classification and band end-points of the Coulomb gas.
    Regime {
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "Q")]
        q: f64,
        #[arg(long)]
        alpha: f64,
    },
    /// Equilibrium density profile: closed form and resolvent oracle.
    Density {
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "Q")]
        q: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 101)]
        points: u32,
        #[arg(long = "oracle-eps", default_value_t = 1e-8)]
        oracle_eps: f64,
    },
    /// Power-law fit of the rate above the critical bias.
    Transition {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long = "alpha-lo")]
        alpha_lo: f64,
        #[arg(long = "alpha-hi")]
        alpha_hi: f64,
        #[arg(long, default_value_t = 30)]
        n: usize,
    },
    /// Finite-size convergence scan of phi_N toward the limit rate.
    Converge {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        alpha: String,
        /// Comma-separated lattice sizes, e.g. 32,64,128.
        #[arg(long = "Ns")]
        ns: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Run a named verification suite and report residuals.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "tol-scale", default_value_t = 1.0)]
        tol_scale: f64,
    },
}

/// A rendered table: config echo, column names, typed rows.
struct Table {
    config: Vec<(String, String)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    footer: Vec<(String, String)>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            config: Vec::new(),
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    fn cfg(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    fn foot(&mut self, key: &str, value: impl ToString) {
        self.footer.push((key.to_string(), value.to_string()));
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (k, v) in &self.footer {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out
    }

    fn to_json(&self) -> String {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.clone()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self
            .footer
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let doc = json!({ "config": config, "rows": rows, "summary": summary });
        serde_json::to_string_pretty(&doc).expect("json serialization")
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => return String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn num(v: f64) -> Value {
    Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn opt_num(v: Option<f64>) -> Value {
    v.map(num).unwrap_or(Value::Null)
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn resolve_prec(flag: Option<usize>, n: u32) -> usize {
    flag.or_else(|| env_usize("LSHAPE_PREC_BITS"))
        .unwrap_or_else(|| harness::default_prec_bits(n))
        .max(53)
}

/// Entry point used by the `lshape` binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let jobs = cli.out.jobs.or_else(|| env_usize("LSHAPE_JOBS"));
    let body = move || match execute(cli.cmd) {
        Ok((table, code)) => {
            let rendered = match cli.out.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            };
            let result = match &cli.out.out {
                Some(path) => std::fs::write(path, rendered).map_err(Error::from),
                None => std::io::stdout()
                    .write_all(rendered.as_bytes())
                    .map_err(Error::from),
            };
            match result {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(body),
            Err(e) => {
                eprintln!("error: thread pool: {e}");
                2
            }
        },
        None => body(),
    }
}

fn execute(cmd: Cmd) -> Result<(Table, i32)> {
    match cmd {
        Cmd::Efp {
            r,
            s,
            q,
            alpha,
            mode,
            prec,
        } => efp_cmd(r, s, q, &alpha, mode, prec),
        Cmd::Zpart {
            r,
            s,
            q,
            alpha,
            rho,
            prec,
        } => zpart_cmd(r, s, q, &alpha, &rho, prec),
        Cmd::Phi {
            x,
            y,
            alpha,
            rho,
            grid,
        } => phi_cmd(x, y, alpha, rho, grid.as_deref()),
        Cmd::Eta {
            x,
            y,
            alpha,
            method,
        } => eta_cmd(x, y, alpha, method),
        Cmd::Regime { r, q, alpha } => regime_cmd(r, q, alpha),
        Cmd::Density {
            r,
            q,
            alpha,
            points,
            oracle_eps,
        } => density_cmd(r, q, alpha, points, oracle_eps),
        Cmd::Transition {
            x,
            y,
            alpha_lo,
            alpha_hi,
            n,
        } => transition_cmd(x, y, alpha_lo, alpha_hi, n),
        Cmd::Converge {
            x,
            y,
            alpha,
            ns,
            prec,
        } => converge_cmd(x, y, &alpha, &ns, prec),
        Cmd::Verify { suite, tol_scale } => verify_cmd(&suite, tol_scale),
    }
}

fn common_cfg(table: &mut Table, subcommand: &str) {
    table.cfg("subcommand", subcommand);
    table.cfg("version", env!("CARGO_PKG_VERSION"));
}

fn efp_cmd(
    r: u32,
    s: u32,
    q: u32,
    alpha: &str,
    mode: NumericMode,
    prec: Option<usize>,
) -> Result<(Table, i32)> {
    let dims = LshapeDims::new(r, s, q)?;
    let alpha_rat = exact_from_str(alpha)?;
    let prec_bits = resolve_prec(prec, dims.n());
    let mut table = Table::new(vec!["r", "s", "q", "alpha", "mode", "f", "f_decimal"]);
    common_cfg(&mut table, "efp");
    table.cfg("alpha", exact_to_string(&alpha_rat));
    table.cfg("mode", format!("{mode:?}").to_lowercase());
    table.cfg("prec_bits", prec_bits);
    match mode {
        NumericMode::Exact => {
            let f = exactcore::efp_hankel(&dims, &alpha_rat)?;
            let dec = RealScalar::from_rational(&f, prec_bits);
            table.rows.push(vec![
                json!(r),
                json!(s),
                json!(q),
                Value::String(exact_to_string(&alpha_rat)),
                Value::String("exact".into()),
                Value::String(exact_to_string(&f)),
                Value::String(dec.to_decimal_string()),
            ]);
        }
        NumericMode::Real => {
            let a_real = RealScalar::from_rational(&alpha_rat, prec_bits);
            let f = exactcore::efp_real(&dims, &a_real)?;
            table.rows.push(vec![
                json!(r),
                json!(s),
                json!(q),
                Value::String(exact_to_string(&alpha_rat)),
                Value::String("real".into()),
                Value::Null,
                Value::String(f.to_decimal_string()),
            ]);
        }
    }
    Ok((table, 0))
}

fn zpart_cmd(
    r: u32,
    s: u32,
    q: u32,
    alpha: &str,
    rho: &str,
    prec: Option<usize>,
) -> Result<(Table, i32)> {
    let dims = LshapeDims::new(r, s, q)?;
    let params = ModelParams::new(exact_from_str(alpha)?, exact_from_str(rho)?)?;
    let prec_bits = resolve_prec(prec, dims.n());
    let z = exactcore::partition_lshape(&dims, &params, prec_bits)?;
    let weights = params.weights_f64();
    let mut table = Table::new(vec!["r", "s", "q", "n", "alpha", "rho", "z", "prec_bits"]);
    common_cfg(&mut table, "zpart");
    table.cfg("alpha", exact_to_string(&params.alpha));
    table.cfg("rho", exact_to_string(&params.rho));
    table.cfg("weights_w1..w6", format!("{weights:?}"));
    table.cfg("prec_bits", prec_bits);
    table.rows.push(vec![
        json!(r),
        json!(s),
        json!(q),
        json!(dims.n()),
        Value::String(exact_to_string(&params.alpha)),
        Value::String(exact_to_string(&params.rho)),
        Value::String(z.to_decimal_string()),
        json!(prec_bits),
    ]);
    Ok((table, 0))
}

fn phi_row(x: f64, y: f64, alpha: f64, rho: f64) -> Result<Vec<Value>> {
    let p = ScaledPoint::new(x, y)?;
    let region = asympt::classify_point(&p, alpha, asympt::ARC_TOL);
    let h = asympt::h_param(&p).ok();
    let eta = if p.y > 0.0 {
        asympt::eta_root(&p, alpha, EtaMethod::ClosedForm)
            .ok()
            .map(|r| r.eta)
    } else {
        None
    };
    let phi = asympt::rate_phi(&p, alpha)?;
    let f = asympt::free_energy(&p, alpha, rho)?;
    Ok(vec![
        num(x),
        num(y),
        num(alpha),
        Value::String(region.to_string()),
        opt_num(eta),
        opt_num(h),
        num(asympt::alpha_c(&p)),
        num(phi),
        num(f),
    ])
}

fn phi_cmd(x: f64, y: f64, alpha: f64, rho: f64, grid: Option<&str>) -> Result<(Table, i32)> {
    let mut table = Table::new(vec![
        "x", "y", "alpha", "region", "eta", "h", "alpha_c", "phi", "f",
    ]);
    common_cfg(&mut table, "phi");
    table.cfg("alpha", alpha);
    table.cfg("rho", rho);
    match grid {
        None => {
            table.cfg("grid", "none");
            table.rows.push(phi_row(x, y, alpha, rho)?);
        }
        Some(grid_arg) => {
            let (nx, ny) = grid_arg
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad --grid {grid_arg:?}, want NX,NY")))?;
            table.cfg("grid", format!("{nx},{ny}"));
            let mut points = Vec::new();
            for i in 0..nx {
                for j in 0..ny {
                    let gx = (i as f64 + 0.5) / nx as f64;
                    let gy = (j as f64 + 0.5) / ny as f64;
                    if gy <= gx && gy <= 1.0 - gx {
                        points.push((gx, gy));
                    }
                }
            }
            use rayon::prelude::*;
            let rows: Result<Vec<_>> = points
                .par_iter()
                .map(|&(gx, gy)| phi_row(gx, gy, alpha, rho))
                .collect();
            table.rows = rows?;
        }
    }
    Ok((table, 0))
}

fn eta_cmd(x: f64, y: f64, alpha: f64, method: MethodArg) -> Result<(Table, i32)> {
    let p = ScaledPoint::new(x, y)?;
    let mut table = Table::new(vec![
        "x", "y", "alpha", "method", "eta", "residual", "h", "alpha_c",
    ]);
    common_cfg(&mut table, "eta");
    table.cfg("method", format!("{method:?}").to_lowercase());
    let run_one = |m: EtaMethod, label: &str, table: &mut Table| -> Result<()> {
        let root = asympt::eta_root(&p, alpha, m)?;
        table.rows.push(vec![
            num(x),
            num(y),
            num(alpha),
            Value::String(label.to_string()),
            num(root.eta),
            num(root.residual),
            opt_num(asympt::h_param(&p).ok()),
            num(asympt::alpha_c(&p)),
        ]);
        Ok(())
    };
    match method {
        MethodArg::Closed => run_one(EtaMethod::ClosedForm, "closed", &mut table)?,
        MethodArg::Bisect => run_one(EtaMethod::Bisection, "bisect", &mut table)?,
        MethodArg::Both => {
            run_one(EtaMethod::ClosedForm, "closed", &mut table)?;
            run_one(EtaMethod::Bisection, "bisect", &mut table)?;
        }
    }
    Ok((table, 0))
}

fn regime_cmd(r: f64, q: f64, alpha: f64) -> Result<(Table, i32)> {
    let gas = GasParams::new(r, q, alpha)?;
    let sol = eqmeasure::endpoints(&gas)?;
    let (res1, res2) = eqmeasure::endpoint_residuals(&sol, &gas);
    let mut table = Table::new(vec![
        "R", "Q", "alpha", "regime", "a", "b", "eta", "Qc", "Rc", "E",
    ]);
    common_cfg(&mut table, "regime");
    table.cfg("endpoint_residuals", format!("{res1:e},{res2:e}"));
    table.rows.push(vec![
        num(r),
        num(q),
        num(alpha),
        Value::String(sol.regime.to_string()),
        num(sol.a),
        num(sol.b),
        opt_num(sol.eta),
        num(gas.q_critical()),
        num(gas.r_critical()),
        num(eqmeasure::first_moment(&sol, &gas)),
    ]);
    Ok((table, 0))
}

fn density_cmd(r: f64, q: f64, alpha: f64, points: u32, eps: f64) -> Result<(Table, i32)> {
    if points < 2 {
        return Err(Error::InvalidParams("need --points >= 2".into()));
    }
    let gas = GasParams::new(r, q, alpha)?;
    let sol = eqmeasure::endpoints(&gas)?;
    let mut table = Table::new(vec!["mu", "rho0_formula", "rho0_oracle"]);
    common_cfg(&mut table, "density");
    table.cfg("R", r);
    table.cfg("Q", q);
    table.cfg("alpha", alpha);
    table.cfg("regime", sol.regime);
    table.cfg("a", sol.a);
    table.cfg("b", sol.b);
    table.cfg("oracle_eps", eps);
    for k in 0..points {
        let mu = gas.r * k as f64 / (points - 1) as f64;
        let formula = eqmeasure::density_profile(mu, &sol, &gas)?;
        let oracle = if mu > 0.0 && mu < gas.r {
            eqmeasure::density_oracle(mu, eps, &sol, &gas).ok()
        } else {
            None
        };
        table
            .rows
            .push(vec![num(mu), num(formula), opt_num(oracle)]);
    }
    Ok((table, 0))
}

fn transition_cmd(x: f64, y: f64, lo: f64, hi: f64, n: usize) -> Result<(Table, i32)> {
    let fit = harness::transition_fit(x, y, lo, hi, n)?;
    let mut table = Table::new(vec![
        "x",
        "y",
        "alpha_c",
        "alpha_lo",
        "alpha_hi",
        "n",
        "exponent",
        "amplitude",
        "r_squared",
        "C_formula",
    ]);
    common_cfg(&mut table, "transition");
    table.rows.push(vec![
        num(x),
        num(y),
        num(fit.alpha_c),
        num(lo),
        num(hi),
        json!(n),
        num(fit.exponent),
        num(fit.amplitude),
        num(fit.r_squared),
        opt_num(fit.formula_coeff),
    ]);
    Ok((table, 0))
}

fn converge_cmd(
    x: f64,
    y: f64,
    alpha: &str,
    ns: &str,
    prec: Option<usize>,
) -> Result<(Table, i32)> {
    let alpha_rat = exact_from_str(alpha)?;
    let sizes: Vec<u32> = ns
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let scan = harness::convergence_scan(
        x,
        y,
        &alpha_rat,
        &sizes,
        prec.or_else(|| env_usize("LSHAPE_PREC_BITS")),
        RoundingRule::Nearest,
    )?;
    let mut table = Table::new(vec!["n", "r", "s", "q", "phi_n", "gap"]);
    common_cfg(&mut table, "converge");
    table.cfg("x", x);
    table.cfg("y", y);
    table.cfg("alpha", exact_to_string(&alpha_rat));
    table.cfg("Ns", ns);
    for row in &scan.rows {
        table.rows.push(vec![
            json!(row.n),
            json!(row.r),
            json!(row.s),
            json!(row.q),
            num(row.phi_n),
            num(row.gap),
        ]);
    }
    table.foot("extrapolated", scan.extrapolated);
    table.foot("phi_limit", scan.phi_limit);
    if let Some(m) = scan.mapping {
        table.foot("mapping_direct_dev", m.direct_dev);
        table.foot("mapping_scaled_dev", m.scaled_dev);
        table.foot(
            "mapping_winner",
            if m.direct_wins { "direct" } else { "scaled" },
        );
    }
    Ok((table, 0))
}

fn verify_cmd(suite: &str, tol_scale: f64) -> Result<(Table, i32)> {
    let suite: Suite = suite.parse()?;
    let report = harness::verify(suite, tol_scale)?;
    let mut table = Table::new(vec![
        "check_name",
        "inputs",
        "residual",
        "tolerance",
        "pass",
    ]);
    common_cfg(&mut table, "verify");
    table.cfg("suite", &report.suite);
    table.cfg("tol_scale", tol_scale);
    for c in &report.checks {
        table.rows.push(vec![
            Value::String(c.name.clone()),
            Value::String(c.inputs.clone()),
            num(c.residual),
            num(c.tolerance),
            json!(c.pass),
        ]);
    }
    table.foot("passed", report.passed);
    Ok((table, if report.passed { 0 } else { 3 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let tmp = std::env::temp_dir().join(format!("lshape-cli-test-{}.out", rand_suffix()));
        let mut full = vec!["lshape"];
        full.extend_from_slice(args);
        full.push("--out");
        let path_str = tmp.to_str().unwrap().to_string();
        full.push(&path_str);
        let code = run(full);
        let content = std::fs::read_to_string(&tmp).unwrap_or_default();
        let _ = std::fs::remove_file(&tmp);
        (code, content)
    }

    fn rand_suffix() -> u64 {
        use std::time::{SystemTime, UNIX_EPOCH};
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .unwrap()
            .as_nanos() as u64
    }

    #[test]
    fn efp_prints_exact_rational() {
        let (code, out) =
            run_capture(&["efp", "--r", "2", "--s", "1", "--q", "0", "--alpha", "1/2"]);
        assert_eq!(code, 0);
        assert!(out.contains("3/4"), "{out}");
    }

    #[test]
    fn phi_reports_region_zero_in_di() {
        let (code, out) = run_capture(&["phi", "--x", "0.1", "--y", "0.1", "--alpha", "0.5"]);
        assert_eq!(code, 0);
        let line = out.lines().find(|l| l.starts_with("0.1,")).unwrap();
        assert!(line.contains("D_I"), "{line}");
        let phi_cell = line.split(',').nth(7).unwrap();
        assert_eq!(phi_cell, "0.0");
    }

    #[test]
    fn usage_errors_exit_one() {
        let code = run(vec!["lshape", "efp", "--r", "notanint"]);
        assert_eq!(code, 1);
        let code = run(vec!["lshape", "nonsense"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn domain_errors_exit_two() {
        let (code, _) = run_capture(&["eta", "--x", "0.1", "--y", "0.1", "--alpha", "0.5"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["regime", "--R", "0.5", "--Q", "0", "--alpha", "0.5"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn efp_real_mode_runs() {
        let (code, out) = run_capture(&[
            "efp", "--r", "4", "--s", "2", "--q", "1", "--alpha", "0.3", "--mode", "real",
            "--prec", "192",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("real"), "{out}");
        // exact value at the same rational bias for comparison
        let dims = LshapeDims::new(4, 2, 1).unwrap();
        let f = exactcore::efp_hankel(&dims, &exact_from_str("0.3").unwrap()).unwrap();
        let expect = num::ToPrimitive::to_f64(&f).unwrap();
        let cell = out.lines().last().unwrap().split(',').last().unwrap();
        let got: f64 = cell.parse().unwrap();
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
    }

    #[test]
    fn jobs_flag_keeps_grid_deterministic() {
        let (c1, out1) = run_capture(&[
            "phi", "--x", "0", "--y", "0", "--alpha", "0.5", "--grid", "6,6", "--jobs", "2",
        ]);
        let (c2, out2) = run_capture(&[
            "phi", "--x", "0", "--y", "0", "--alpha", "0.5", "--grid", "6,6",
        ]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(out1, out2);
    }

    #[test]
    fn json_output_round_trips() {
        let (code, out) = run_capture(&[
            "regime", "--R", "10", "--Q", "0", "--alpha", "0.5", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["rows"][0]["regime"], "IA");
        assert!((doc["rows"][0]["E"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn grid_sweep_is_sorted_and_deterministic() {
        let args = [
            "phi", "--x", "0", "--y", "0", "--alpha", "0.5", "--grid", "8,8",
        ];
        let (c1, out1) = run_capture(&args);
        let (c2, out2) = run_capture(&args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(out1, out2);
        assert!(out1.lines().count() > 10);
    }

    #[test]
    fn converge_emits_footer_summary() {
        let (code, out) = run_capture(&[
            "converge", "--x", "0.25", "--y", "0.25", "--alpha", "1/2", "--Ns", "16,24,32",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("# extrapolated="), "{out}");
        assert!(out.contains("# mapping_winner=direct"), "{out}");
    }
}
