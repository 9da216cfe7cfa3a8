use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use superint::classify::{ClassLabel, RealForm};
use superint::enumerate::{enumerate, rng};
use superint::isometry::normal_form;
use superint::potential::{
    poisson_verify, prolongation_residual, random_phase_points, series_match, solve_fibre_series, Expr,
};
use superint::report::{classify, default_base, ClassificationReport, ClassifyInput, ClassifyOptions};
use superint::svg::arrangement_svg;
use superint::tables::{audit_normal_forms, audit_potentials, AuditStatus, TABLE_BOX};
use superint::{Error, GaussRat, SpecialConformalKillingTensor, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "superint", version, about = "Classify second-order superintegrable systems on the complex plane")]
struct Cli {
    /// Tolerance for floating residuals.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for batch inputs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Slice {
    Euclidean,
    Minkowski,
}

#[derive(Subcommand)]
enum Cmd {
    /// Plücker point of two tensors (`[t1, t2]` or `{"t1": .., "t2": ..}`).
    Wedge { input: PathBuf },
    /// Full report for a point, a tensor pair, or a stream of them (one per line).
    Classify {
        input: PathBuf,
        #[arg(long)]
        normal_form: bool,
        /// Solve the fibre series to this order at a small integer base.
        #[arg(long, value_name = "N")]
        fibre_check: Option<u32>,
        /// Write the real slice of the line arrangement.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Slice::Minkowski)]
        slice: Slice,
    },
    /// Seeded on-variety points of one class, one JSON array per line.
    Enumerate {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Reduce a point to its table row.
    NormalForm { input: PathBuf },
    /// Fibre series at a base point, optionally checking closed-form potentials.
    FibreCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: u32,
        /// Base point as `z,w` (Gaussian rationals).
        #[arg(long)]
        base: Option<String>,
        /// Potential in prefix form; repeatable.
        #[arg(long = "potential")]
        potentials: Vec<String>,
    },
    /// `{F, H}` for a tensor pair and a potential at random phase points.
    PoissonCheck {
        input: PathBuf,
        #[arg(long)]
        potential: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Re-derive the normal-form and potential tables and list deviations.
    TablesAudit {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DependentPair => 2,
            Error::NotOnVariety => 3,
            _ => 1,
        };
        let msg = match e {
            Error::DependentPair => "dependent pair".to_string(),
            other => other.to_string(),
        };
        Failure { code, msg }
    }
}

fn read_input(p: &Path) -> Result<String, Error> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(p)?)
    }
}

fn tensor(v: &Value) -> Result<SpecialConformalKillingTensor, Error> {
    Ok(serde_json::from_value(v.clone())?)
}

/// A point (array of ten), a pair (`[t1, t2]`, `{"t1", "t2"}`,
/// `{"tensors": [..]}`) or `{"point": [..]}`.
fn parse_input(v: &Value) -> Result<ClassifyInput, Error> {
    let pair = |a: &Value, b: &Value| Ok(ClassifyInput::Pair { tensors: [tensor(a)?, tensor(b)?] });
    match v {
        Value::Array(items) if items.len() == 10 => Ok(ClassifyInput::Point { point: serde_json::from_value(v.clone())? }),
        Value::Array(items) if items.len() == 2 => pair(&items[0], &items[1]),
        Value::Object(m) => {
            if let (Some(a), Some(b)) = (m.get("t1"), m.get("t2")) {
                return pair(a, b);
            }
            if let Some(Value::Array(t)) = m.get("tensors") {
                if t.len() == 2 {
                    return pair(&t[0], &t[1]);
                }
            }
            if let Some(p) = m.get("point") {
                return Ok(ClassifyInput::Point { point: serde_json::from_value(p.clone())? });
            }
            Err(Error::Parse("expected a point or a tensor pair".into()))
        }
        _ => Err(Error::Parse("expected a point or a tensor pair".into())),
    }
}

/// One input, or one per nonempty line.
fn parse_inputs(text: &str) -> Result<Vec<ClassifyInput>, Error> {
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        return Ok(vec![parse_input(&v)?]);
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_input(&serde_json::from_str(l)?))
        .collect()
}

fn single(path: &Path) -> Result<ClassifyInput, Error> {
    let v: Value = serde_json::from_str(&read_input(path)?)?;
    parse_input(&v)
}

fn emit<T: Serialize>(v: &T, fmt: Format, text: impl FnOnce() -> String) -> Result<(), Error> {
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(v)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn cmd_wedge(cli: &Cli, input: &Path) -> Result<(), Failure> {
    let p = match single(input)? {
        ClassifyInput::Pair { tensors: [a, b] } => superint::pluecker::wedge(&a, &b)?.canonical()?,
        ClassifyInput::Point { .. } => return Err(Error::Parse("wedge needs two tensors".into()).into()),
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string(&p).map_err(Error::from)?),
        Format::Text => {
            for (c, v) in superint::pluecker::COORD_ORDER.iter().zip(p.coords()) {
                println!("{} = {v}", superint::pluecker::coord_name(c.0, c.1));
            }
        }
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, input: &Path, opts: ClassifyOptions, svg: Option<&Path>, slice: Slice) -> Result<(), Failure> {
    let inputs = parse_inputs(&read_input(input)?)?;
    let reports: Vec<Result<ClassificationReport, Error>> = inputs.into_par_iter().map(|i| classify(i, opts)).collect();
    let reports: Vec<ClassificationReport> = reports.into_iter().collect::<Result<_, _>>()?;
    if let (Some(path), Some(r)) = (svg, reports.first()) {
        let which = match slice {
            Slice::Euclidean => RealForm::Euclidean,
            Slice::Minkowski => RealForm::Minkowski,
        };
        let title = match &r.class {
            Some(c) => format!("{c} {}", r.e_label.as_deref().unwrap_or("")),
            None => "off variety".into(),
        };
        fs::write(path, arrangement_svg(r.arrangement().as_ref(), which, title.trim())).map_err(Error::from)?;
    }
    if reports.len() == 1 {
        emit(&reports[0], cli.format, || reports[0].to_text())?;
    } else {
        for r in &reports {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(r).map_err(Error::from)?),
                Format::Text => println!("{}", r.to_text()),
            }
        }
    }
    if reports.iter().any(|r| !r.sic.on_variety) {
        return Err(Failure { code: 3, msg: Error::NotOnVariety.to_string() });
    }
    Ok(())
}

fn cmd_enumerate(cli: &Cli, class: &str, samples: usize) -> Result<(), Failure> {
    let label: ClassLabel = class.parse()?;
    eprintln!("seed: {}", cli.seed);
    for p in enumerate(&label, samples, cli.seed)? {
        match cli.format {
            Format::Json => println!("{}", serde_json::to_string(&p).map_err(Error::from)?),
            Format::Text => {
                let t = p.extract();
                println!("D = {}; A_z = {}; B_w = {}", t.d, t.a, t.b);
            }
        }
    }
    Ok(())
}

fn cmd_normal_form(cli: &Cli, input: &Path) -> Result<(), Failure> {
    let p = single(input)?.point()?;
    let nf = normal_form(&p)?;
    emit(&nf, cli.format, || {
        let t = nf.point.extract();
        format!(
            "class {} {}\nD = {}; A_z = {}; B_w = {}\nisometry {}\n{}",
            nf.class,
            nf.e_label.unwrap_or(""),
            t.d,
            t.a,
            t.b,
            serde_json::to_string(&nf.isometry).unwrap_or_default(),
            nf.table_note.as_deref().map(|n| format!("note: {n}\n")).unwrap_or_default()
        )
    })?;
    Ok(())
}

#[derive(Serialize)]
struct PotentialCheck {
    potential: String,
    prolongation_residual: f64,
    series_rel_diff: f64,
    passes: bool,
}

#[derive(Serialize)]
struct FibreCheck {
    base: [GaussRat; 2],
    order: u32,
    rank: usize,
    consistent: bool,
    conflicts: Vec<(u32, u32)>,
    potentials: Vec<PotentialCheck>,
}

fn parse_base(s: &str) -> Result<[GaussRat; 2], Error> {
    let (z, w) = s.split_once(',').ok_or_else(|| Error::Parse("base must be `z,w`".into()))?;
    Ok([z.trim().parse()?, w.trim().parse()?])
}

fn cmd_fibre_check(cli: &Cli, input: &Path, order: u32, base: Option<&str>, pots: &[String]) -> Result<(), Failure> {
    let p = single(input)?.point()?;
    let t = p.extract();
    let base = match base {
        Some(b) => parse_base(b)?,
        None => default_base(&p).ok_or(Error::SingularBase)?,
    };
    let fb = solve_fibre_series(&t, (base[0].clone(), base[1].clone()), order)?;
    let bx = TABLE_BOX;
    let samples = bx.samples(20, &mut rng(cli.seed));
    let centre = (base[0].to_c64(), base[1].to_c64());
    let mut potentials = Vec::new();
    for s in pots {
        let v: Expr = s.parse()?;
        let res = prolongation_residual(&t, &v, &samples)?;
        let m = series_match(&t, |z, w| v.eval(z, w), centre, 6, 0.1)?;
        potentials.push(PotentialCheck {
            potential: v.to_string(),
            prolongation_residual: res,
            series_rel_diff: m.max_rel_diff,
            passes: res < cli.tol && m.max_rel_diff < 1e-8,
        });
    }
    let conflicts = fb.solutions.iter().flat_map(|s| s.conflicts()).collect();
    let out = FibreCheck { base, order, rank: fb.rank(), consistent: fb.consistent(), conflicts, potentials };
    emit(&out, cli.format, || {
        let mut s = format!(
            "base ({}, {}) order {}: rank {}, consistent {}\n",
            out.base[0], out.base[1], out.order, out.rank, out.consistent
        );
        for p in &out.potentials {
            s += &format!(
                "  {}  residual {:.3e}  series {:.3e}  {}\n",
                p.potential,
                p.prolongation_residual,
                p.series_rel_diff,
                if p.passes { "ok" } else { "FAIL" }
            );
        }
        s
    })?;
    Ok(())
}

fn cmd_poisson(cli: &Cli, input: &Path, potential: &str, samples: usize) -> Result<(), Failure> {
    let ClassifyInput::Pair { tensors: [t1, t2] } = single(input)? else {
        return Err(Error::Parse("poisson-check needs two tensors".into()).into());
    };
    let v: Expr = potential.parse()?;
    eprintln!("seed: {}", cli.seed);
    let bx = TABLE_BOX;
    let phase = random_phase_points(&bx, samples, &mut rng(cli.seed));
    let r = poisson_verify(&t1, &t2, &v, &phase, bx.center())?;
    emit(&r, cli.format, || {
        format!(
            "cubic parts exact: {:?}\nmax |{{F1, H}}| = {:.3e}\nmax |{{F2, H}}| = {:.3e}\n",
            r.cubic_exact, r.max_bracket[0], r.max_bracket[1]
        )
    })?;
    if !r.passes(cli.tol.max(1e-8)) {
        return Err(Failure { code: 4, msg: "brackets do not vanish".into() });
    }
    Ok(())
}

#[derive(Serialize)]
struct TablesAudit {
    normal_forms: Vec<superint::tables::NormalFormAudit>,
    potentials: Vec<superint::tables::PotentialRowAudit>,
}

fn cmd_tables_audit(cli: &Cli, samples: usize) -> Result<(), Failure> {
    eprintln!("seed: {}", cli.seed);
    let out = TablesAudit { normal_forms: audit_normal_forms(), potentials: audit_potentials(samples, cli.seed, cli.tol)? };
    emit(&out, cli.format, || {
        let mut s = String::from("normal forms\n");
        for a in &out.normal_forms {
            let tag = match a.status {
                AuditStatus::Match => "match",
                AuditStatus::FreeSlot => "free slot",
                AuditStatus::Deviation => "DEVIATION",
            };
            s += &format!("  {:9} {:4} D = {:<14} {tag}", a.class, a.label, a.d);
            if a.status == AuditStatus::Deviation {
                s += &format!(
                    "  printed (A_z, B_w) = ({}, {})  computed ({}, {})",
                    a.printed_a, a.printed_b, a.computed_a, a.computed_b
                );
            }
            s += "\n";
            if let Some(n) = &a.note {
                s += &format!("            note: {n}\n");
            }
        }
        s += "potentials\n";
        for r in &out.potentials {
            for p in &r.potentials {
                let tag = if p.status == AuditStatus::Match { "ok" } else { "DEVIATION" };
                s += &format!("  {:9} {:<34} residual {:.2e}  {tag}\n", r.class, p.printed, p.prolongation_residual);
                if let Some(n) = &p.note {
                    s += &format!("            verified {}; {n}\n", p.verified);
                }
            }
        }
        s
    })?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure { code: 1, msg: e.to_string() })?;
    }
    match &cli.cmd {
        Cmd::Wedge { input } => cmd_wedge(cli, input),
        Cmd::Classify { input, normal_form, fibre_check, svg, slice } => cmd_classify(
            cli,
            input,
            ClassifyOptions { normal_form: *normal_form, fibre_order: *fibre_check },
            svg.as_deref(),
            *slice,
        ),
        Cmd::Enumerate { class, samples } => cmd_enumerate(cli, class, *samples),
        Cmd::NormalForm { input } => cmd_normal_form(cli, input),
        Cmd::FibreCheck { input, order, base, potentials } => cmd_fibre_check(cli, input, *order, base.as_deref(), potentials),
        Cmd::PoissonCheck { input, potential, samples } => cmd_poisson(cli, input, potential, *samples),
        Cmd::TablesAudit { samples } => cmd_tables_audit(cli, *samples),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
