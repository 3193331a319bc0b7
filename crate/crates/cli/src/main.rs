//! Command-line surface: compute fundamental q-characters, apply the braid
//! action, run the verification suite, and inspect X-series data.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qchar_core::verify::{has_theorem_failure, render_jsonl, render_summary, SuiteConfig};
use qchar_core::xseries::{polynomiality_verdict, x_factorization, OracleTables};
use qchar_core::{
    braid::Braid,
    cartan::{CartanData, Node, TypeLabel},
    fm::{cached_fundamental, FmOptions},
    lweight::psi_extremal,
    xseries::eigenvalue_on,
    yring::{factor_in_a, YMonomial},
    Error,
};

const EXIT_THEOREM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qchar",
    version,
    about = "Exact q-character combinatorics: fundamental characters, braid twists, X-series, verification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Cartan type letter (A..G)
    #[arg(long = "type", value_name = "LETTER")]
    type_label: String,
    /// Rank
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn build(&self) -> Result<CartanData, Error> {
        let label = TypeLabel::parse(&self.type_label).ok_or_else(|| Error::InvalidType {
            label: self.type_label.clone(),
            rank: self.rank,
        })?;
        CartanData::new(label, self.rank)
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the result to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["json", "text"])]
    format: String,
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Bypass the q-character cache entirely
    #[arg(long)]
    no_cache: bool,
    /// Cache directory (default: $QCHAR_CACHE_DIR, else ./.qchar-cache)
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

impl CacheArgs {
    fn dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os("QCHAR_CACHE_DIR").map(PathBuf::from))
            .or_else(|| Some(PathBuf::from(".qchar-cache")))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the q-character of a fundamental representation
    Fundamental {
        #[command(flatten)]
        ty: TypeArgs,
        /// Dynkin node (1-based)
        #[arg(long)]
        node: Node,
        /// Spectral shift r of the highest variable Y_{i,q^r}
        #[arg(long, default_value_t = 0)]
        shift: i32,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Apply the braid action of a reduced word
    Braid {
        #[command(flatten)]
        ty: TypeArgs,
        /// Comma-separated reflection indices (empty = identity)
        #[arg(long, default_value = "", value_name = "I,J,...")]
        word: String,
        /// Monomial literal to push through T_w, e.g. "Y:1,0*Y:2,3^-1"
        #[arg(long, value_name = "MONOMIAL")]
        apply: Option<String>,
        /// Twisted root monomial A^w_{i,q^r}, given as "i,r"
        #[arg(long, value_name = "I,R")]
        aw: Option<String>,
        /// Extremal variable Y_{w(omega_i),q^r}, given as "i,r"
        #[arg(long, value_name = "I,R")]
        y: Option<String>,
        /// Extremal l-weight Psi_{w(omega_i),q^r}, given as "i,r"
        #[arg(long, value_name = "I,R")]
        psi: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the theorem/conjecture verification suite
    Verify {
        /// Restrict the sweep, e.g. "A2,B2,G2" (default: the full sweep list)
        #[arg(long, value_name = "TYPES")]
        types: Option<String>,
        /// Worker pool size
        #[arg(long, default_value_t = 8)]
        jobs: usize,
        /// Series truncation order
        #[arg(long, default_value_t = 12)]
        truncation: usize,
        /// Oracle evaluation point numerator
        #[arg(long, default_value_t = 2)]
        q_num: i64,
        /// Oracle evaluation point denominator
        #[arg(long, default_value_t = 1)]
        q_den: i64,
        /// Seed for the sampled sweeps
        #[arg(long, default_value_t = 0x71c4_a2be)]
        seed: u64,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// X-series factorizations, eigenvalue reports and the series oracle
    Xseries {
        #[command(flatten)]
        ty: TypeArgs,
        /// Comma-separated reflection indices (empty = identity)
        #[arg(long, default_value = "", value_name = "I,J,...")]
        word: String,
        /// Dynkin node i of X_{w(omega_i)}
        #[arg(long)]
        node: Node,
        /// Also report eigenvalues on the fundamental character of the node
        #[arg(long)]
        eigenvalues: bool,
        /// Check the structural eigenvalues against the series oracle (w = e)
        #[arg(long)]
        oracle: bool,
        /// Truncation order for the oracle
        #[arg(long, default_value_t = 12, value_name = "N")]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q_num: i64,
        #[arg(long, default_value_t = 1)]
        q_den: i64,
        #[command(flatten)]
        cache: CacheArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_word(cd: &CartanData, word: &str) -> Result<qchar_core::WeylElement, Error> {
    let mut letters = Vec::new();
    for part in word.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let i: Node = part
            .parse()
            .map_err(|_| Error::MonomialSyntax(format!("bad word entry {part}")))?;
        letters.push(i);
    }
    cd.reduce_word(&letters)
}

fn parse_node_shift(s: &str) -> Result<(Node, i32), Error> {
    let bad = || Error::MonomialSyntax(format!("expected \"i,r\", got {s}"));
    let (i, r) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        r.trim().parse().map_err(|_| bad())?,
    ))
}

fn emit(out: &OutputArgs, text: String) -> Result<(), Error> {
    match &out.output {
        Some(path) => {
            std::fs::write(path, text.as_bytes())?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

/// Render a Y-monomial as a product of root monomials over the given anchor,
/// in the CLI literal grammar.
fn a_factorization_text(cd: &CartanData, m: &YMonomial, anchor: &YMonomial) -> Option<String> {
    let e = factor_in_a(cd, m, anchor)?;
    if e.is_empty() {
        return Some("1".to_string());
    }
    Some(
        e.iter()
            .map(|(&(i, r), &k)| {
                if k == 1 {
                    format!("A:{i},{r}")
                } else {
                    format!("A:{i},{r}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("*"),
    )
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Fundamental {
            ty,
            node,
            shift,
            cache,
            out,
        } => {
            let cd = ty.build()?;
            let qc = cached_fundamental(
                &cd,
                node,
                shift,
                cache.dir().as_deref(),
                &FmOptions::default(),
            )?;
            let text = if out.format == "json" {
                serde_json::to_string_pretty(&json!({
                    "type": cd.label().to_string(),
                    "rank": cd.rank(),
                    "node": node,
                    "shift": shift,
                    "dim": qc.dim(),
                    "num_monomials": qc.poly().num_terms(),
                    "highest": qc.highest(),
                    "poly": qc.poly(),
                }))?
            } else {
                let mut s = format!(
                    "chi_q(L(Y_{{{node},q^{shift}}})) in type {}{}: {} monomials, dim {}\n",
                    cd.label(),
                    cd.rank(),
                    qc.poly().num_terms(),
                    qc.dim()
                );
                for (m, c) in qc.poly().iter() {
                    s.push_str(&format!("  {c} * {m}\n"));
                }
                s
            };
            emit(&out, text)?;
            Ok(0)
        }

        Command::Braid {
            ty,
            word,
            apply,
            aw,
            y,
            psi,
            out,
        } => {
            let cd = ty.build()?;
            let braid = Braid::new(&cd);
            let w = parse_word(&cd, &word)?;
            let mut results: Vec<(String, serde_json::Value, String)> = Vec::new();

            if let Some(lit) = apply {
                let m = YMonomial::parse(&cd, &lit)?;
                let image = braid.t_w(&w, &m);
                results.push((
                    "apply".into(),
                    json!({ "input": m, "image": image }),
                    format!("T_{w}({m}) = {image}"),
                ));
            }
            if let Some(spec) = aw {
                let (i, r) = parse_node_shift(&spec)?;
                cd.check_node(i)?;
                let tw = braid.twisted_root(&w, i, r);
                let afact = a_factorization_text(&cd, &tw.value, &YMonomial::one());
                results.push((
                    "aw".into(),
                    json!({ "i": i, "r": r, "value": tw.value,
                            "a_factorization": afact }),
                    format!(
                        "A^w_{{{i},q^{r}}} = {} = {}",
                        afact.as_deref().unwrap_or("?"),
                        tw.value
                    ),
                ));
            }
            if let Some(spec) = y {
                let (i, r) = parse_node_shift(&spec)?;
                cd.check_node(i)?;
                let value = braid.y_extremal(&w, i, r);
                results.push((
                    "y".into(),
                    json!({ "i": i, "r": r, "value": value }),
                    format!("Y_{{w(omega_{i}),q^{r}}} = {value}"),
                ));
            }
            if let Some(spec) = psi {
                let (i, r) = parse_node_shift(&spec)?;
                cd.check_node(i)?;
                let value = psi_extremal(&braid, &w, i, r)?;
                results.push((
                    "psi".into(),
                    json!({ "i": i, "r": r, "value": value }),
                    format!("Psi_{{w(omega_{i}),q^{r}}} = {value}"),
                ));
            }
            if results.is_empty() {
                results.push((
                    "word".into(),
                    json!({ "canonical_word": w.word(), "length": w.len() }),
                    format!("w = {w} (length {})", w.len()),
                ));
            }

            let text = if out.format == "json" {
                let map: serde_json::Map<String, serde_json::Value> = results
                    .iter()
                    .map(|(k, v, _)| (k.clone(), v.clone()))
                    .collect();
                serde_json::to_string_pretty(&serde_json::Value::Object(map))?
            } else {
                results
                    .iter()
                    .map(|(_, _, line)| line.clone())
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(&out, text)?;
            Ok(0)
        }

        Command::Verify {
            types,
            jobs,
            truncation,
            q_num,
            q_den,
            seed,
            cache,
            out,
        } => {
            let mut config = SuiteConfig {
                jobs,
                truncation,
                q_num,
                q_den,
                seed,
                cache_dir: cache.dir(),
                ..Default::default()
            };
            if let Some(spec) = types {
                config = config.with_types(&spec)?;
            }
            let results = qchar_core::verify::run_suite(&config)?;
            let theorem_failure = has_theorem_failure(&results);
            match &out.output {
                Some(path) => {
                    std::fs::write(path, render_jsonl(&results))?;
                    println!("{}", render_summary(&results));
                }
                None => {
                    if out.format == "json" {
                        print!("{}", render_jsonl(&results));
                    } else {
                        println!("{}", render_summary(&results));
                    }
                }
            }
            Ok(if theorem_failure {
                EXIT_THEOREM_FAILURE
            } else {
                0
            })
        }

        Command::Xseries {
            ty,
            word,
            node,
            eigenvalues,
            oracle,
            n,
            q_num,
            q_den,
            cache,
            out,
        } => {
            let cd = ty.build()?;
            let braid = Braid::new(&cd);
            let w = parse_word(&cd, &word)?;
            let xf = x_factorization(&braid, &w, node)?;

            let mut text_lines = vec![format!("X_{{w(omega_{node})}}(z) = {xf}")];
            let mut doc = json!({
                "type": cd.label().to_string(),
                "rank": cd.rank(),
                "w": w.word(),
                "node": node,
                "factorization": xf.exps.iter()
                    .map(|(&(j, s), &e)| json!([j, s, e]))
                    .collect::<Vec<_>>(),
            });

            let mut mismatch = false;
            if eigenvalues || oracle {
                let qc = cached_fundamental(
                    &cd,
                    node,
                    0,
                    cache.dir().as_deref(),
                    &FmOptions::default(),
                )?;
                if eigenvalues {
                    let report = polynomiality_verdict(&braid, &w, &qc);
                    text_lines.push(format!(
                        "eigenvalues on chi_q(L(Y_{{{node},1}})): {}",
                        if report.all_polynomial {
                            "all polynomial".to_string()
                        } else {
                            format!("{} non-polynomial witnesses", report.witnesses.len())
                        }
                    ));
                    for rec in &report.entries {
                        text_lines.push(format!(
                            "  i={} m={} roots={:?} poles={:?} polynomial={}",
                            rec.i, rec.monomial, rec.roots, rec.poles, rec.polynomial
                        ));
                    }
                    doc["eigenvalues"] = serde_json::to_value(&report.entries)?;
                    doc["all_polynomial"] = json!(report.all_polynomial);
                }
                if oracle {
                    let q = qchar_core::num_rational::BigRational::new(q_num.into(), q_den.into());
                    let tables = OracleTables::new(&cd, &q, n)?;
                    let e = cd.identity();
                    let mut checked = 0usize;
                    let mut failures = Vec::new();
                    for m in qc.poly().monomials() {
                        for i in cd.nodes() {
                            let rs = eigenvalue_on(&braid, &e, i, m, qc.highest())
                                .expect("fundamental monomials factor at w=e");
                            let structural = rs.expand(&q, n);
                            let ratio = tables
                                .pairing(i, m)
                                .mul(&tables.pairing(i, qc.highest()).inverse());
                            checked += 1;
                            if ratio != structural {
                                failures.push(format!("i={i}, m={m}"));
                            }
                        }
                    }
                    mismatch = !failures.is_empty();
                    text_lines.push(format!(
                        "oracle check at q={q_num}/{q_den}, order {n}: {checked} eigenvalues, {} mismatches",
                        failures.len()
                    ));
                    for f in &failures {
                        text_lines.push(format!("  MISMATCH {f}"));
                    }
                    doc["oracle"] = json!({
                        "order": n,
                        "q": format!("{q_num}/{q_den}"),
                        "checked": checked,
                        "mismatches": failures,
                    });
                }
            }

            let text = if out.format == "json" {
                serde_json::to_string_pretty(&doc)?
            } else {
                text_lines.join("\n")
            };
            emit(&out, text)?;
            Ok(if mismatch { EXIT_THEOREM_FAILURE } else { 0 })
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidType { .. }
        | Error::NodeOutOfRange { .. }
        | Error::MonomialSyntax(_)
        | Error::NotDominant
        | Error::NotKDominant { .. }
        | Error::NotSingleNode { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
