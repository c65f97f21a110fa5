use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nczeta::acceptance;
use nczeta::bell::{bell_number, bell_polynomial, set_partitions, stirling2, type_counts};
use nczeta::cache::ZetaCache;
use nczeta::coeff::parse_rational;
use nczeta::diagram::{
    coproduct_bs, diagrams_of_size, from_json, multiplicity_formula, product, to_json, DeformParams, LabeledDiagram,
};
use nczeta::kz::{
    adjoint_expansion, bridge_relations, monodromy_series, zeta_reg, z_series, AdjointConvention, Evaluator, Monodromy,
    ZSeries,
};
use nczeta::lyndon::lyndon_words;
use nczeta::polylog::{harmonic_sum, polylog, zeta_compute, zeta_value_with, ZetaMethod};
use nczeta::shuffle::{product as word_product, ProductKind};
use nczeta::{Alphabet, Coeff, Complex, Error, NCSeries, Poly, Real, Word, Q};

#[derive(Parser)]
#[command(name = "nczeta", version, about = "Shuffle algebras, diagram Hopf algebras and polyzetas")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "NCZETA_FORMAT")]
    format: Format,
    /// Floating-point precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = 128, env = "NCZETA_PRECISION",
          value_parser = clap::value_parser!(u32).range(64..=4096))]
    precision: u32,
    /// Absolute error tolerance for numeric values.
    #[arg(long, global = true, default_value_t = 1e-10, env = "NCZETA_TOL", value_parser = positive_f64)]
    tol: f64,
    /// Largest accepted truncation degree.
    #[arg(long, global = true, default_value_t = 6, env = "NCZETA_MAX_DEGREE")]
    max_degree: usize,
    /// JSON-lines zeta cache, loaded at startup and appended on misses.
    #[arg(long, global = true, env = "NCZETA_CACHE")]
    cache: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphabetArg {
    X,
    Y,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Shuffle,
    Stuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Chen,
    Partial,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Phi,
    Psi,
    ZShuffle,
    ZStuffle,
    B,
    BPrime,
    Adjoint,
    M0,
    M1,
}

#[derive(Subcommand)]
enum Command {
    /// Shuffle product of two words.
    Shuffle {
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t = AlphabetArg::X)]
        alphabet: AlphabetArg,
    },
    /// Quasi-shuffle product of two Y-words.
    Stuffle { u: String, v: String },
    /// Lyndon words up to a weight, in graded order.
    Lyndon {
        #[arg(long, value_enum, default_value_t = AlphabetArg::X)]
        alphabet: AlphabetArg,
        #[arg(long)]
        max_weight: usize,
    },
    /// Complete (or partial, with --k) Bell polynomial.
    Bell {
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Print the Bell (or Stirling) number instead.
        #[arg(long)]
        number: bool,
    },
    /// Set partitions of {1..n}.
    Partitions {
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Print counts per partition type instead.
        #[arg(long)]
        types: bool,
    },
    /// Bipartite diagrams given as JSON text or files.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
    /// Multiple polylogarithm Li_w(z).
    Li {
        word: String,
        #[arg(long)]
        z: String,
        #[arg(long, value_enum, default_value_t = AlphabetArg::Auto)]
        alphabet: AlphabetArg,
    },
    /// Harmonic sum H_w(N), exactly.
    Hsum {
        word: String,
        #[arg(long = "N", short = 'N')]
        n: u64,
    },
    /// Convergent polyzeta of a Y-word.
    Zeta {
        word: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Chen)]
        method: MethodArg,
    },
    /// Regularized polyzeta as a polynomial in γ and convergent values.
    Regzeta {
        word: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Truncated associator-related series.
    Associator {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = SeriesArg::Phi)]
        series: SeriesArg,
        /// Evaluate zeta symbols numerically.
        #[arg(long)]
        numeric: bool,
    },
    /// Polyzeta relations from the bridge equation.
    Relations {
        #[arg(long)]
        max_weight: usize,
    },
    /// Run the acceptance suite.
    Check {
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DiagramAction {
    /// Canonical form, spot types and image word.
    Show { diagram: String },
    /// Number of partition pairs with the given diagram.
    Mult { diagram: String },
    /// Deformed product; symbolic in qc, qs unless both are given.
    Product {
        a: String,
        b: String,
        #[arg(long)]
        qc: Option<String>,
        #[arg(long)]
        qs: Option<String>,
    },
    /// Black-spot coproduct.
    Coproduct { diagram: String },
    /// Diagrams with n edges and the sum of their multiplicities.
    Count { n: usize },
}

struct Ctx {
    format: Format,
    prec: usize,
    tol: f64,
    max_degree: usize,
    cache: ZetaCache,
}

type Res<T> = std::result::Result<T, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = match &cli.config.cache {
        Some(p) => match ZetaCache::open(p) {
            Ok(c) => {
                if c.warnings() > 0 {
                    eprintln!("warning: skipped {} corrupt cache lines in {}", c.warnings(), p.display());
                }
                c
            }
            Err(e) => {
                eprintln!("error: cannot open cache {}: {e}", p.display());
                return ExitCode::from(1);
            }
        },
        None => ZetaCache::in_memory(),
    };
    let ctx = Ctx {
        format: cli.config.format,
        prec: cli.config.precision as usize,
        tol: cli.config.tol,
        max_degree: cli.config.max_degree,
        cache,
    };
    match run(&ctx, cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if !out.is_empty() && !out.ends_with('\n') {
                println!();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ (Error::Parse(_) | Error::InvalidDiagram(_) | Error::Json(_) | Error::BoundExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(ctx: &Ctx, cmd: Command) -> Res<(String, bool)> {
    let out = match cmd {
        Command::Shuffle { u, v, alphabet } => {
            let a = match alphabet {
                AlphabetArg::Y => Alphabet::Y,
                AlphabetArg::X => Alphabet::X,
                AlphabetArg::Auto => guess_alphabet(&u).max(guess_alphabet(&v)),
            };
            let s = word_product(ProductKind::Shuffle, &Word::parse(a, &u)?, &Word::parse(a, &v)?)?;
            render_series(ctx, &s, render_q)
        }
        Command::Stuffle { u, v } => {
            let s = word_product(ProductKind::Stuffle, &Word::parse(Alphabet::Y, &u)?, &Word::parse(Alphabet::Y, &v)?)?;
            render_series(ctx, &s, render_q)
        }
        Command::Lyndon { alphabet, max_weight } => {
            let a = if matches!(alphabet, AlphabetArg::Y) { Alphabet::Y } else { Alphabet::X };
            check_degree(ctx, max_weight)?;
            let ws = lyndon_words(a, max_weight);
            match ctx.format {
                Format::Json => json!(ws.iter().map(Word::encode).collect::<Vec<_>>()).to_string(),
                Format::Latex => ws.iter().map(latex_word).collect::<Vec<_>>().join("\n"),
                Format::Text => ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n"),
            }
        }
        Command::Bell { n, k, number } => {
            if number {
                let v = match k {
                    Some(k) => stirling2(n, k),
                    None => bell_number(n),
                };
                v.to_string()
            } else {
                let vars: Vec<Poly> = (1..=n).map(|i| Poly::var(&format!("X{i}"))).collect();
                render_poly(ctx, &bell_polynomial(n, k, &vars)?)
            }
        }
        Command::Partitions { n, k, types } => {
            if types {
                let counts = type_counts(n, k)?;
                match ctx.format {
                    Format::Json => Value::Array(
                        counts.iter().map(|(t, c)| json!({"type": t, "count": c})).collect(),
                    )
                    .to_string(),
                    _ => counts.iter().map(|(t, c)| format!("{t:?} {c}")).collect::<Vec<_>>().join("\n"),
                }
            } else {
                let ps = set_partitions(n, k)?;
                match ctx.format {
                    Format::Json => json!(ps.iter().map(|p| p.blocks().to_vec()).collect::<Vec<_>>()).to_string(),
                    _ => ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n"),
                }
            }
        }
        Command::Diagram { action } => run_diagram(ctx, action)?,
        Command::Li { word, z, alphabet } => {
            let a = match alphabet {
                AlphabetArg::X => Alphabet::X,
                AlphabetArg::Y => Alphabet::Y,
                AlphabetArg::Auto => guess_alphabet(&word),
            };
            let w = Word::parse(a, &word)?;
            let z = Real::from_rational_prec(&parse_rational(&z)?, ctx.prec);
            let e = polylog(&w, &z, ctx.tol)?;
            render_value(ctx, &e.value, e.bound, e.terms)
        }
        Command::Hsum { word, n } => {
            let h = harmonic_sum(&Word::parse(Alphabet::Y, &word)?, n)?;
            match ctx.format {
                Format::Json => json!({"value": h.to_string()}).to_string(),
                Format::Latex => latex_q(&h),
                Format::Text => h.to_string(),
            }
        }
        Command::Zeta { word, method } => {
            let w = Word::parse(Alphabet::Y, &word)?;
            let e = match method {
                MethodArg::Chen => zeta_value_with(&w, ctx.tol, ctx.prec, &ctx.cache)?,
                MethodArg::Partial => zeta_compute(&w, ctx.tol, ctx.prec, ZetaMethod::PartialSum)?,
            };
            render_value(ctx, &e.value, e.bound, e.terms)
        }
        Command::Regzeta { word, kind } => {
            let (a, k) = match kind {
                KindArg::Shuffle => (Alphabet::X, ProductKind::Shuffle),
                KindArg::Stuffle => (Alphabet::Y, ProductKind::Stuffle),
            };
            render_poly(ctx, &zeta_reg(&Word::parse(a, &word)?, k)?)
        }
        Command::Associator { degree, series, numeric } => {
            check_degree(ctx, degree)?;
            let ev = Evaluator { tol: ctx.tol, prec: ctx.prec, cache: &ctx.cache };
            let symbolic = match series {
                SeriesArg::M0 | SeriesArg::M1 => {
                    let which = if matches!(series, SeriesArg::M0) { Monodromy::M0 } else { Monodromy::M1 };
                    let s = monodromy_series(which, degree, &ev)?;
                    return Ok((render_series(ctx, &s, |f, c| render_complex(ctx, f, c)), true));
                }
                SeriesArg::Phi => z_series(ZSeries::PhiKz, degree)?,
                SeriesArg::Psi => z_series(ZSeries::PsiKz, degree)?,
                SeriesArg::ZShuffle => z_series(ZSeries::ZShuffle, degree)?,
                SeriesArg::ZStuffle => z_series(ZSeries::ZStuffle, degree)?,
                SeriesArg::B => z_series(ZSeries::B, degree)?,
                SeriesArg::BPrime => z_series(ZSeries::Bprime, degree)?,
                SeriesArg::Adjoint => adjoint_expansion(degree, AdjointConvention::Mirror)?,
            };
            if numeric {
                let s = ev.series(&symbolic)?;
                render_series(ctx, &s, |f, c| render_real(ctx, f, c))
            } else {
                render_series(ctx, &symbolic, render_poly_coeff)
            }
        }
        Command::Relations { max_weight } => {
            check_degree(ctx, max_weight)?;
            let ev = Evaluator { tol: ctx.tol / 100.0, prec: ctx.prec, cache: &ctx.cache };
            let report = bridge_relations(max_weight, ctx.tol, &ev)?;
            match ctx.format {
                Format::Json => serde_json::to_string_pretty(&report)?,
                Format::Latex => report
                    .relations
                    .iter()
                    .map(|r| format!("{} = 0 \\quad ({})", r.relation.to_latex(), r.word))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Text => report
                    .relations
                    .iter()
                    .map(|r| format!("{}: {} = 0  (residual {:.1e})", r.word, r.relation, r.residual))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }
        }
        Command::Check { criterion } => {
            let ids: Vec<usize> = match criterion {
                Some(i) if (1..=acceptance::criteria_count()).contains(&i) => vec![i],
                Some(i) => return Err(Error::Parse(format!("no criterion {i}"))),
                None => (1..=acceptance::criteria_count()).collect(),
            };
            let results: Vec<_> = ids.into_iter().map(|i| acceptance::run_criterion(i, &ctx.cache)).collect();
            let ok = results.iter().all(|r| r.passed);
            let out = match ctx.format {
                Format::Json => Value::Array(
                    results
                        .iter()
                        .map(|r| {
                            json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail,
                                   "seconds": r.elapsed.as_secs_f64()})
                        })
                        .collect(),
                )
                .to_string(),
                _ => results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
            };
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

fn run_diagram(ctx: &Ctx, action: DiagramAction) -> Res<String> {
    Ok(match action {
        DiagramAction::Show { diagram } => {
            let (d, labeled) = read_diagram(&diagram)?;
            let c = d.canonical()?;
            let image = d.word_image(Alphabet::Y)?;
            match ctx.format {
                Format::Json => json!({
                    "diagram": serde_json::from_str::<Value>(&to_json(&d, labeled))?,
                    "canonical": serde_json::from_str::<Value>(&to_json(c.labeled(), false))?,
                    "alpha": d.alpha(), "beta": d.beta(), "image": image.encode(),
                })
                .to_string(),
                _ => format!(
                    "{}\ncanonical {}\nalpha {:?}\nbeta {:?}\nimage {}",
                    d,
                    c,
                    d.alpha(),
                    d.beta(),
                    image
                ),
            }
        }
        DiagramAction::Mult { diagram } => {
            let (d, _) = read_diagram(&diagram)?;
            multiplicity_formula(&d.canonical()?).to_string()
        }
        DiagramAction::Product { a, b, qc, qs } => {
            let (a, _) = read_diagram(&a)?;
            let (b, _) = read_diagram(&b)?;
            let sum: Vec<(LabeledDiagram, String)> = match (qc, qs) {
                (Some(qc), Some(qs)) => {
                    let p = DeformParams { qc: parse_rational(&qc)?, qs: parse_rational(&qs)? };
                    product(&a, &b, &p).into_iter().map(|(d, c)| (d, c.to_string())).collect()
                }
                (None, None) => {
                    let p = DeformParams { qc: Poly::var("qc"), qs: Poly::var("qs") };
                    product(&a, &b, &p).into_iter().map(|(d, c)| (d, c.to_string())).collect()
                }
                _ => return Err(Error::Parse("give both --qc and --qs, or neither".into())),
            };
            match ctx.format {
                Format::Json => Value::Array(
                    sum.iter()
                        .map(|(d, c)| Ok(json!({"coeff": c, "diagram": serde_json::from_str::<Value>(&to_json(d, true))?})))
                        .collect::<Res<Vec<_>>>()?,
                )
                .to_string(),
                _ => sum.iter().map(|(d, c)| format!("{c} * {d}")).collect::<Vec<_>>().join("\n"),
            }
        }
        DiagramAction::Coproduct { diagram } => {
            let (d, _) = read_diagram(&diagram)?;
            coproduct_bs(&d).iter().map(|((l, r), c)| format!("{c} * {l} ⊗ {r}")).collect::<Vec<_>>().join("\n")
        }
        DiagramAction::Count { n } => {
            let ds = diagrams_of_size(n)?;
            let total: num_bigint::BigInt = ds.iter().map(multiplicity_formula).sum();
            let b = bell_number(n);
            format!("{} diagrams, multiplicity sum {total}, Bell({n})^2 = {}", ds.len(), &b * &b)
        }
    })
}

fn check_degree(ctx: &Ctx, d: usize) -> Res<()> {
    if d > ctx.max_degree {
        return Err(Error::BoundExceeded { what: "degree", value: d, bound: ctx.max_degree });
    }
    Ok(())
}

fn guess_alphabet(text: &str) -> Alphabet {
    if text.contains([',', '[']) || text.chars().any(|c| c.is_ascii_digit() && c > '1') {
        Alphabet::Y
    } else {
        Alphabet::X
    }
}

fn read_diagram(arg: &str) -> Res<(LabeledDiagram, bool)> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { std::fs::read_to_string(arg)? };
    from_json(&text)
}

fn latex_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    match w.alphabet() {
        Alphabet::X => w.letters().iter().map(|l| format!("x_{l}")).collect(),
        _ => w.letters().iter().map(|l| format!("y_{{{l}}}")).collect(),
    }
}

fn latex_q(q: &Q) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        let sign = if *q < Q::from_integer(0.into()) { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().magnitude(), q.denom())
    }
}

fn render_q(f: Format, q: &Q) -> Value {
    match f {
        Format::Latex => Value::String(latex_q(q)),
        _ => Value::String(q.to_string()),
    }
}

fn render_poly_coeff(f: Format, p: &Poly) -> Value {
    match f {
        Format::Latex => Value::String(p.to_latex()),
        _ => Value::String(p.to_string()),
    }
}

fn digits_for(ctx: &Ctx) -> usize {
    let d = (-ctx.tol.log10()).ceil() as usize + 2;
    d.clamp(6, (ctx.prec as f64 * 0.30103) as usize)
}

fn render_real(ctx: &Ctx, _: Format, r: &Real) -> Value {
    Value::String(r.to_decimal(digits_for(ctx)))
}

fn render_complex(ctx: &Ctx, f: Format, c: &Complex) -> Value {
    let d = digits_for(ctx);
    match f {
        Format::Json => json!({"re": c.re.to_decimal(d), "im": c.im.to_decimal(d)}),
        _ => Value::String(format!("{c:.d$}")),
    }
}

fn render_series<C: Coeff>(ctx: &Ctx, s: &NCSeries<C>, coeff: impl Fn(Format, &C) -> Value) -> String {
    match ctx.format {
        Format::Json => Value::Array(
            s.terms().map(|(w, c)| json!({"word": w.encode(), "coeff": coeff(Format::Json, c)})).collect(),
        )
        .to_string(),
        Format::Latex => {
            if s.is_empty() {
                return "0".into();
            }
            s.terms()
                .map(|(w, c)| format!("\\left({}\\right) {}", as_text(coeff(Format::Latex, c)), latex_word(w)))
                .collect::<Vec<_>>()
                .join(" + ")
        }
        Format::Text => {
            if s.is_empty() {
                return "0".into();
            }
            let mut out = String::new();
            for (i, (w, c)) in s.terms().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let c = as_text(coeff(Format::Text, c));
                if !c.starts_with('(') && (c.contains([' ', '+']) || c.chars().skip(1).any(|ch| ch == '-')) {
                    let _ = write!(out, "({c})*{w}");
                } else {
                    let _ = write!(out, "{c}*{w}");
                }
            }
            out
        }
    }
}

fn as_text(v: Value) -> String {
    match v {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn render_poly(ctx: &Ctx, p: &Poly) -> String {
    match ctx.format {
        Format::Json => json!({"polynomial": p.to_string()}).to_string(),
        Format::Latex => p.to_latex(),
        Format::Text => p.to_string(),
    }
}

/// `%.0e`-style exponent with at least two digits.
fn short_exp(x: f64) -> String {
    let s = format!("{x:.0e}");
    match s.split_once('e') {
        Some((m, e)) => {
            let (sign, digits) = e.strip_prefix('-').map_or(("+", e), |d| ("-", d));
            format!("{m}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

fn render_value(ctx: &Ctx, v: &Real, bound: f64, terms: u64) -> String {
    let text = v.to_decimal(digits_for(ctx));
    match ctx.format {
        Format::Json => json!({"value": text, "bound": bound, "tol": ctx.tol, "terms": terms}).to_string(),
        Format::Latex => format!("{text} \\pm {}", short_exp(ctx.tol)),
        Format::Text => format!("{text} ± ≤{}", short_exp(ctx.tol)),
    }
}
