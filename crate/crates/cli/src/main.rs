//! `lsplacto`: crystals, rule sets, normal forms and audits from the shell.
//!
//! Exit status is 0 on success, 1 when an audit or comparison finds a
//! failure, and 2 on usage or domain errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lsplacto::crystal::generate_crystal;
use lsplacto::plactic::{audit_local_confluence, audit_termination, with_threads};
use lsplacto::serial;
use lsplacto::typea_oracle::{box_to_word, column_letters, cross_check, reading_finding, BoxWord};
use lsplacto::{Error, Monomial, RewriteSystem, RootSystem, RootTables, TypeLabel, Weight, Word};

const DATA_ENV: &str = "LSPLACTO_DATA";

#[derive(Parser)]
#[command(name = "lsplacto", version, about = "Path-model crystals and plactic rewriting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan data, fundamental dimensions and the box column of a system.
    Info(Common),
    /// Crystal graph generated from the straight path of a dominant shape.
    Crystal {
        #[command(flatten)]
        common: Common,
        /// Dominant shape, comma-separated fundamental coordinates (default: ρ).
        #[arg(long)]
        shape: Option<String>,
    },
    /// The generator table.
    Generators(Common),
    /// The full rule set.
    Rules(Common),
    /// Normal form of a word.
    Normalize {
        #[command(flatten)]
        common: Common,
        /// Generator ids ("w1.0 w2.1") or, in type A, box digits ("231").
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Termination and local-confluence audits.
    Check(Common),
    /// Crystal sizes against the Weyl dimension formula.
    VerifyDims {
        #[command(flatten)]
        common: Common,
        /// Largest coordinate sum of the shapes checked.
        #[arg(long, default_value_t = 3)]
        max_sum: i64,
    },
    /// Knuth congruence against path-model equivalence on type A box words.
    OracleCompare {
        #[command(flatten)]
        common: Common,
        /// Longest word compared.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Also report which column readings of normal forms are consistent.
        #[arg(long)]
        reading: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Cartan type: A, B, C, D or G2.
    #[arg(long = "type", value_parser = parse_label)]
    label: TypeLabel,
    #[arg(long)]
    rank: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the artifact here and print a summary instead.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for rule building and audits.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

fn parse_label(s: &str) -> Result<TypeLabel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Outcome {
    artifact: String,
    summary: String,
    ok: bool,
}

impl Outcome {
    fn ok(artifact: String, summary: String) -> Self {
        Outcome { artifact, summary, ok: true }
    }
}

fn root_system(c: &Common) -> Result<RootSystem, Error> {
    match std::env::var_os(DATA_ENV) {
        Some(path) => RootTables::from_path(path)?.build(c.label, c.rank),
        None => RootSystem::build(c.label, c.rank),
    }
}

fn format_of(c: &Common, default: Format, allowed: &[Format]) -> Result<Format, Error> {
    let f = c.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::Invalid(format!("unsupported --format for this subcommand: {}", name_of(f))))
    }
}

fn name_of(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Text => "text",
    }
}

fn build_system(rs: &RootSystem, c: &Common) -> Result<RewriteSystem, Error> {
    RewriteSystem::build_with_threads(rs, c.threads)
}

fn parse_shape(rs: &RootSystem, text: &str) -> Result<Weight, Error> {
    let coords = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad shape coordinate {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), actual: coords.len() });
    }
    let w = Weight::new(&coords);
    if !w.is_dominant() {
        return Err(Error::NonDominantWeight(w.to_string()));
    }
    Ok(w)
}

fn parse_word(rs: &RootSystem, system: &RewriteSystem, text: &str) -> Result<Word, Error> {
    let digits = text.chars().all(|c| c.is_ascii_digit() || c.is_whitespace());
    if rs.label() == TypeLabel::A && digits {
        box_to_word(rs, system.table(), &BoxWord::parse(text)?)
    } else {
        system.table().parse_word(text)
    }
}

/// `[2][13]`: the letters of each column of a type A word.
fn columns(system: &RewriteSystem, w: &Word) -> String {
    w.letters()
        .iter()
        .map(|&g| {
            let letters: String = column_letters(&system.table().get(g).weight).iter().map(u8::to_string).collect();
            format!("[{letters}]")
        })
        .collect()
}

fn info(c: &Common) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Text, &[Format::Text, Format::Json])?;
    let dims = (1..=rs.rank())
        .map(|k| rs.weyl_dim(&rs.fundamental(k)?))
        .collect::<Result<Vec<_>, _>>()?;
    let columns = rs.column_decomposition();
    let artifact = match format {
        Format::Json => serial::to_pretty(&json!({
            "system": serial::system_header(&rs),
            "cartan": rs.cartan(),
            "symmetrizer": rs.symmetrizer(),
            "positive_coroots": rs.positive_coroots(),
            "fundamental_dimensions": dims,
            "column_decomposition": columns,
        })),
        _ => {
            let mut s = format!("{}\ncartan:", rs.name());
            for row in rs.cartan() {
                s.push_str(&format!(" {row:?}"));
            }
            s.push_str(&format!(
                "\nsymmetrizer: {:?}\npositive roots: {}\nfundamental dimensions: {dims:?}\n",
                rs.symmetrizer(),
                rs.positive_coroots().len()
            ));
            match &columns {
                Some(d) => s.push_str(&format!("box column: ω{} with multiplicities {:?}\n", d.box_index, d.counts)),
                None => s.push_str("box column: none\n"),
            }
            s
        }
    };
    Ok(Outcome::ok(artifact, format!("{}: {} positive roots", rs.name(), rs.positive_coroots().len())))
}

fn crystal(c: &Common, shape: Option<&str>) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
    let shape = match shape {
        Some(s) => parse_shape(&rs, s)?,
        None => rs.rho().clone(),
    };
    let g = generate_crystal(&rs, &Monomial::straight(shape.clone()))?;
    let artifact = match format {
        Format::Json => serial::to_pretty(&serial::crystal(&rs, &g)),
        Format::Dot => serial::crystal_dot(&g),
        Format::Text => {
            let mut s = String::new();
            for (id, m) in g.vertices().iter().enumerate() {
                s.push_str(&format!("{id}\t{}\t{}\n", m.weight(), m.concatenation()));
            }
            for (u, i, v) in g.edges() {
                s.push_str(&format!("{u} -{i}-> {v}\n"));
            }
            s
        }
    };
    let summary = format!("{} crystal of shape {shape}: {} vertices, {} edges", rs.name(), g.len(), g.edges().len());
    Ok(Outcome::ok(artifact, summary))
}

fn generators(c: &Common) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Text, &[Format::Text, Format::Json])?;
    let system = build_system(&rs, c)?;
    let table = system.table();
    let artifact = match format {
        Format::Json => serial::to_pretty(&json!({
            "system": serial::system_header(&rs),
            "generators": serial::generators(&system),
        })),
        _ => {
            let mut s = String::new();
            for g in table.entries() {
                s.push_str(&format!("{}\tω{}\tweight {}\t{}", g.id, g.shape, g.weight, g.path));
                if rs.label() == TypeLabel::A {
                    let letters: Vec<String> = column_letters(&g.weight).iter().map(u8::to_string).collect();
                    s.push_str(&format!("\t{{{}}}", letters.join(",")));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(artifact, format!("{}: {} generators", rs.name(), table.len())))
}

fn rules(c: &Common) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Json, &[Format::Json, Format::Text])?;
    let system = build_system(&rs, c)?;
    let table = system.table();
    let artifact = match format {
        Format::Json => serial::to_pretty(&serial::rules(&system)),
        _ => {
            let mut s = String::new();
            for r in system.rules() {
                let rhs = table.format_word(&r.rhs);
                s.push_str(&format!(
                    "{} {} -> {}\t{} > {}\n",
                    table.get(r.lhs.0).id,
                    table.get(r.lhs.1).id,
                    if rhs.is_empty() { "()" } else { &rhs },
                    r.lhs_shape,
                    r.rhs_shape
                ));
            }
            s
        }
    };
    let summary = format!("{}: {} generators, {} rules", rs.name(), table.len(), system.rules().len());
    Ok(Outcome::ok(artifact, summary))
}

fn normalize(c: &Common, word: &str) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Text, &[Format::Text, Format::Json])?;
    let system = build_system(&rs, c)?;
    let table = system.table();
    let input = parse_word(&rs, &system, word)?;
    let nf = system.normalize(&input)?;
    let artifact = match format {
        Format::Json => serial::to_pretty(&json!({
            "system": serial::system_header(&rs),
            "input": table.ids(&input),
            "normal_form": table.ids(&nf),
            "weight": serial::weight(&table.word_weight(&nf)),
        })),
        _ => {
            let mut s = format!("{}\n", if nf.is_empty() { "()".to_string() } else { table.format_word(&nf) });
            if rs.label() == TypeLabel::A {
                s.push_str(&format!("columns: {}\n", columns(&system, &nf)));
            }
            s
        }
    };
    let summary = format!("normal form has {} generators", nf.len());
    Ok(Outcome::ok(artifact, summary))
}

fn check(c: &Common) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Text, &[Format::Text, Format::Json])?;
    let system = build_system(&rs, c)?;
    let termination = audit_termination(&rs, &system);
    let confluence = audit_local_confluence(&system, c.threads);
    let summary = format!("{}: {termination}; {confluence}", rs.name());
    let artifact = match format {
        Format::Json => serial::to_pretty(&serial::audit(&termination, &confluence)),
        _ => {
            let mut s = format!("{summary}\n");
            for f in &termination.failures {
                s.push_str(&format!("rule {:?} -> {:?}: {} not below {}\n", f.lhs, f.rhs, f.rhs_shape, f.lhs_shape));
            }
            for f in &confluence.failures {
                s.push_str(&format!("triple {:?}: {:?} vs {:?}\n", f.triple, f.left, f.right));
            }
            s
        }
    };
    Ok(Outcome { artifact, summary, ok: termination.pass && confluence.pass })
}

fn dominant_up_to(rank: usize, max: i64) -> Vec<Weight> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                let used: i64 = v.iter().sum();
                (0..=max - used).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|c| Weight::new(c)).collect()
}

fn verify_dims(c: &Common, max_sum: i64) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Text, &[Format::Text, Format::Json])?;
    if max_sum < 0 {
        return Err(Error::Invalid("--max-sum must be non-negative".into()));
    }
    let shapes = dominant_up_to(rs.rank(), max_sum);
    let rows = with_threads(c.threads, || -> Result<Vec<(Weight, usize, u64)>, Error> {
        shapes
            .iter()
            .map(|w| Ok((w.clone(), generate_crystal(&rs, &Monomial::straight(w.clone()))?.len(), rs.weyl_dim(w)?)))
            .collect()
    })?;
    let bad = rows.iter().filter(|(_, n, d)| *n as u64 != *d).count();
    let artifact = match format {
        Format::Json => serial::to_pretty(&json!({
            "system": serial::system_header(&rs),
            "shapes": rows.iter().map(|(w, n, d)| json!({
                "shape": serial::weight(w), "crystal": n, "weyl_dim": d,
            })).collect::<Vec<_>>(),
            "mismatches": bad,
        })),
        _ => rows
            .iter()
            .map(|(w, n, d)| format!("{w}\t{n}\t{d}\t{}\n", if *n as u64 == *d { "ok" } else { "MISMATCH" }))
            .collect(),
    };
    let summary = format!("{}: {} shapes, {bad} mismatches", rs.name(), rows.len());
    Ok(Outcome { artifact, summary, ok: bad == 0 })
}

fn oracle_compare(c: &Common, max_len: usize, reading: bool) -> Result<Outcome, Error> {
    let rs = root_system(c)?;
    let format = format_of(c, Format::Text, &[Format::Text, Format::Json])?;
    if rs.label() != TypeLabel::A {
        return Err(Error::Invalid("oracle-compare needs type A".into()));
    }
    let n = rs.rank() + 1;
    let report = cross_check(n, max_len, c.threads)?;
    let finding = if reading { Some(reading_finding(n, max_len)?) } else { None };
    let summary = report.to_string();
    let artifact = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            if let Some(f) = &finding {
                v["reading"] = serde_json::to_value(f)?;
            }
            serial::to_pretty(&v)
        }
        _ => {
            let mut s = format!("{summary}\n");
            for m in &report.mismatches {
                s.push_str(&format!("{} vs {}: knuth {}, path model {}\n", m.left, m.right, m.knuth, m.path_model));
            }
            if let Some(f) = &finding {
                for (name, v) in &f.violations {
                    s.push_str(&format!("reading \"{name}\": {v} violations\n"));
                }
            }
            s
        }
    };
    Ok(Outcome { artifact, summary, ok: report.pass() })
}

fn run(cli: &Cli) -> Result<(Outcome, Option<&PathBuf>), Error> {
    let (outcome, common) = match &cli.command {
        Command::Info(c) => (info(c)?, c),
        Command::Crystal { common, shape } => (crystal(common, shape.as_deref())?, common),
        Command::Generators(c) => (generators(c)?, c),
        Command::Rules(c) => (rules(c)?, c),
        Command::Normalize { common, word } => (normalize(common, word)?, common),
        Command::Check(c) => (check(c)?, c),
        Command::VerifyDims { common, max_sum } => (verify_dims(common, *max_sum)?, common),
        Command::OracleCompare { common, max_len, reading } => (oracle_compare(common, *max_len, *reading)?, common),
    };
    Ok((outcome, common.output.as_ref()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, output)) => {
            let written = match output {
                Some(path) => fs::write(path, &outcome.artifact).map(|_| println!("{}", outcome.summary)),
                None => {
                    print!("{}", outcome.artifact);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
