use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use wigreg_core::algebra::{parse_rational, MultiPoly, Rational};
use wigreg_core::classify::{verify_certificate, Certificate};
use wigreg_core::pipeline::{
    attach_residuals, certify_with, emit_report, generate_from_positive_symbol, generate_quasi_homogeneous, parse_spec,
    summary, CertifyOptions, Report,
};
use wigreg_core::symbol::{LinearChange, OperatorSpec, SpecDocument};
use wigreg_core::wigner::{
    intertwine_residual, parse_test_pair, read_csv, read_raw, wig_forward, wig_inverse, write_csv, write_raw,
    CheckMode, Grid2D, GridFunction2D, GridManifest,
};
use wigreg_core::{Error, Result};

/// Regularity certificates and Wigner-transform checks for planar
/// operators `Σ c_{j,k} (x − qD_y)^j (y + pD_x)^k`.
#[derive(Parser)]
#[command(name = "wigreg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the certification chain. Exit code: 0 regular (exact),
    /// 2 regular (evidence), 3 unknown, 4 not regular.
    Certify {
        spec: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the text summary here instead of stdout.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Also compute the intertwining residual for h0⊗h0 (L=12, N=256).
        #[arg(long)]
        residual: bool,
    },
    /// Print derived symbols.
    Symbol {
        spec: PathBuf,
        /// Comma-separated subset of a,b,atilde,wick,bt.
        #[arg(long, default_value = "a,b,atilde,wick")]
        emit: String,
        /// Polynomial JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check B Wig_p[u⊗v] = Wig_p[(Au)⊗v] numerically.
    VerifyIntertwine {
        spec: PathBuf,
        #[command(flatten)]
        wopts: WigOpts,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        /// Largest accepted relative residual (exit 1 above it).
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Write Wig_p[u⊗v] (forward) or its inverse to a grid file.
    Transform {
        spec: PathBuf,
        #[arg(long, conflicts_with = "inverse", required_unless_present = "inverse")]
        forward: bool,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        wopts: WigOpts,
        /// Grid to invert (with `<input>.manifest.json`); without it the
        /// forward transform of the test pair is inverted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Raw little-endian f64 (re, im) stream instead of CSV.
        #[arg(long)]
        raw: bool,
    },
    /// Build operators that are regular by construction.
    Generate(GenerateArgs),
    /// Re-check a certificate, a {"certificate", "symbol"} pair or every
    /// certificate in a report. Exit 0 when all pass.
    VerifyCertificate {
        cert: PathBuf,
        /// Symbol a(x, ξ) for a bare certificate: a file or an expression.
        #[arg(long)]
        symbol: Option<String>,
        /// Operator spec whose symbol a(x, ξ) is used (for a bare certificate).
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Args)]
struct WigOpts {
    /// Overrides the spec's p.
    #[arg(long)]
    p: Option<String>,
    /// Test pair u⊗v.
    #[arg(long, default_value = "hermite:0,0")]
    w: String,
    #[arg(long = "L", default_value_t = 12.0)]
    l: f64,
    #[arg(long = "N", default_value_t = 256)]
    n: usize,
}

#[derive(Args)]
#[command(group = ArgGroup::new("kind").required(true).multiple(false))]
struct GenerateArgs {
    /// Polynomial JSON file (or an expression) for a positive symbol a(x, ξ).
    #[arg(long, group = "kind", requires = "p")]
    positive_symbol: Option<String>,
    /// `rho,tau,h,k`
    #[arg(long, group = "kind")]
    quasi_homogeneous: Option<String>,
    #[arg(long)]
    p: Option<String>,
    /// Write the generated spec here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Generators,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<(OperatorSpec, Option<LinearChange>)> {
    parse_spec(&read(path)?)
}

/// A polynomial JSON file, a file holding an expression, or the
/// expression itself.
fn load_poly(arg: &str) -> Result<MultiPoly> {
    let path = Path::new(arg);
    if !path.exists() {
        return arg.parse();
    }
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        text.trim().parse()
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn with_p(spec: OperatorSpec, p: &Option<String>) -> Result<OperatorSpec> {
    match p {
        Some(s) => Ok(spec.with_p(parse_rational(s)?)),
        None => Ok(spec),
    }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write_grid(f: &GridFunction2D, out: &Path, raw: bool) -> Result<()> {
    write(&manifest_path(out), &(serde_json::to_string(&GridManifest::of(f))? + "\n"))?;
    let w = create(out)?;
    if raw {
        write_raw(f, w)
    } else {
        write_csv(f, w)
    }
}

fn read_grid(input: &Path, raw: bool) -> Result<GridFunction2D> {
    let manifest: GridManifest = serde_json::from_str(&read(&manifest_path(input))?)?;
    let file = File::open(input).map_err(|e| Error::InvalidArgument(format!("{}: {e}", input.display())))?;
    if raw {
        read_raw(&manifest, BufReader::new(file))
    } else {
        read_csv(&manifest, BufReader::new(file))
    }
}

fn cmd_certify(spec: &Path, report: Option<PathBuf>, text: Option<PathBuf>, residual: bool) -> Result<i32> {
    let (spec, t) = load_spec(spec)?;
    let mut r = certify_with(&spec, t.as_ref(), &CertifyOptions::default());
    if residual {
        attach_residuals(&mut r, &spec, Grid2D::new(12.0, 256)?)?;
    }
    let code = emit_report(&r, report.as_deref(), text.as_deref())?;
    if text.is_none() {
        print!("{}", summary(&r));
    }
    Ok(code)
}

fn cmd_symbol(spec: &Path, emit: &str, as_json: bool) -> Result<i32> {
    let (spec, t) = load_spec(spec)?;
    let syms = wigreg_core::pipeline::Symbols::compute(&spec, t.as_ref());
    let mut out = serde_json::Map::new();
    for name in emit.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let sym = match name {
            "a" => &syms.a,
            "b" => &syms.b,
            "atilde" => &syms.atilde,
            "wick" => &syms.wick,
            "bt" => syms
                .b_conjugated
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("bt needs a spec with a T matrix".into()))?,
            other => return Err(Error::InvalidArgument(format!("unknown symbol {other:?}"))),
        };
        if as_json {
            out.insert(name.to_string(), serde_json::to_value(&sym.poly)?);
        } else {
            println!("{name} = {}", sym.text);
        }
    }
    if as_json {
        print!("{}", pretty(&out)?);
    }
    Ok(0)
}

fn cmd_intertwine(spec: &Path, o: &WigOpts, mode: Mode, tol: f64) -> Result<i32> {
    let spec = with_p(load_spec(spec)?.0, &o.p)?;
    let (u, v) = parse_test_pair(&o.w)?;
    let mode = match mode {
        Mode::Full => CheckMode::Full,
        Mode::Generators => CheckMode::Generators,
    };
    let r = intertwine_residual(&spec, &u, &v, Grid2D::new(o.l, o.n)?, mode)?;
    print!("{}", pretty(&r)?);
    Ok(if r.max_residual() <= tol { 0 } else { 1 })
}

fn cmd_transform(
    spec: &Path,
    inverse: bool,
    o: &WigOpts,
    input: Option<PathBuf>,
    out: &Path,
    raw: bool,
) -> Result<i32> {
    let spec = with_p(load_spec(spec)?.0, &o.p)?;
    let p = wigreg_core::algebra::rational::rat_to_f64(spec.p());
    let grid = Grid2D::new(o.l, o.n)?;
    let result = if inverse {
        let big_f = match input {
            Some(path) => read_grid(&path, raw)?,
            None => {
                let (u, v) = parse_test_pair(&o.w)?;
                wig_forward(&u, &v, p, grid)?
            }
        };
        wig_inverse(&big_f, p)?
    } else {
        let (u, v) = parse_test_pair(&o.w)?;
        wig_forward(&u, &v, p, grid)?
    };
    write_grid(&result, out, raw)?;
    eprintln!("wrote {} (manifest {})", out.display(), manifest_path(out).display());
    Ok(0)
}

fn parse_quadruple(s: &str) -> Result<(Rational, Rational, u32, u32)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::InvalidArgument(format!("expected rho,tau,h,k, got {s:?}"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let h = parts[2].parse().map_err(|_| bad())?;
    let k = parts[3].parse().map_err(|_| bad())?;
    Ok((parse_rational(parts[0])?, parse_rational(parts[1])?, h, k))
}

fn cmd_generate(g: &GenerateArgs) -> Result<i32> {
    if let Some(src) = &g.positive_symbol {
        let a = load_poly(src)?;
        let p = parse_rational(g.p.as_deref().expect("clap requires --p"))?;
        let gen = generate_from_positive_symbol(&a, p)?;
        let doc = SpecDocument::from_spec(&gen.spec, None);
        if let Some(out) = &g.out {
            write(out, &pretty(&doc)?)?;
        }
        print!(
            "{}",
            pretty(&json!({
                "r": gen.r.to_string(),
                "spec": doc,
                "round_trip": gen.round_trip,
                "verdict": gen.report.verdict.status,
                "grade": gen.report.grade,
            }))?
        );
        return Ok(0);
    }
    let quad = g.quasi_homogeneous.as_deref().expect("clap requires one generator");
    let (rho, tau, h, k) = parse_quadruple(quad)?;
    let gen = generate_quasi_homogeneous(rho, tau, h, k)?;
    let doc = SpecDocument::from_spec(&gen.spec, Some(&gen.t));
    if let Some(out) = &g.out {
        write(out, &pretty(&doc)?)?;
    }
    print!(
        "{}",
        pretty(&json!({
            "spec": doc,
            "conjugated_symbol": gen.conjugated_symbol.to_string(),
        }))?
    );
    Ok(0)
}

#[derive(Deserialize)]
struct CertificateDoc {
    certificate: Certificate,
    symbol: MultiPoly,
}

fn cmd_verify_certificate(cert: &Path, symbol: Option<String>, spec: Option<PathBuf>) -> Result<i32> {
    let text = read(cert)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let checks: Vec<(String, Certificate, MultiPoly)> = if value.get("verdict").is_some() {
        let r: Report = serde_json::from_value(value)?;
        let a = r.symbols.a.poly.clone();
        r.hypo_attempts
            .iter()
            .chain(&r.injectivity_attempts)
            .map(|at| (at.method.clone(), at.certificate.clone(), a.clone()))
            .chain(r.adjoint.iter().map(|c| ("adjoint kernel".to_string(), c.clone(), a.clone())))
            .collect()
    } else if value.get("certificate").is_some() {
        let d: CertificateDoc = serde_json::from_value(value)?;
        vec![("certificate".into(), d.certificate, d.symbol)]
    } else {
        let c: Certificate = serde_json::from_value(value)?;
        let a = match (symbol, spec) {
            (Some(s), _) => load_poly(&s)?,
            (None, Some(s)) => load_spec(&s)?.0.symbol_a(),
            (None, None) => return Err(Error::InvalidArgument("a bare certificate needs --symbol or --spec".into())),
        };
        vec![("certificate".into(), c, a)]
    };
    let mut ok = true;
    for (name, c, a) in &checks {
        match verify_certificate(c, a) {
            Ok(()) => println!("ok    {name}: {}", c.kind()),
            Err(e) => {
                ok = false;
                println!("FAIL  {name}: {} ({e})", c.kind());
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn configure_threads() {
    if let Some(n) = std::env::var("WIGREG_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            // only fails if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Certify { spec, report, summary, residual } => cmd_certify(&spec, report, summary, residual),
        Command::Symbol { spec, emit, json } => cmd_symbol(&spec, &emit, json),
        Command::VerifyIntertwine { spec, wopts, mode, tol } => cmd_intertwine(&spec, &wopts, mode, tol),
        Command::Transform { spec, inverse, wopts, input, out, raw, .. } => {
            cmd_transform(&spec, inverse, &wopts, input, &out, raw)
        }
        Command::Generate(g) => cmd_generate(&g),
        Command::VerifyCertificate { cert, symbol, spec } => cmd_verify_certificate(&cert, symbol, spec),
    }
}

fn main() -> ExitCode {
    configure_threads();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
