//! Command-line front end. Weights are ρ-shifted: `-1,1,5` names the module
//! of highest weight `-ε_1 + ε_2 + 5ε_3 - ρ`.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::formal_char::{
    delta_sum_to_nabla_sum, nabla_char_to_delta, nabla_to_delta, theta_char, theta_delta,
    theta_nabla, Basis, FormalChar,
};
use crate::gl_mult::{parabolic_verma_simple_mult, verma_simple_mult};
use crate::linkage::{
    block_count, block_label, block_representatives, canonical_representative, delta_edge,
    delta_edge_via_linkage, nabla_edge, nabla_edge_via_linkage,
};
use crate::pe3_tables::{
    pe2_property_check, replay_appendix, tilting_character, verify_tables, verify_theorem_d,
    Pe3Tables,
};
use crate::report::Report;
use crate::root_data::{is_p_dominant, parse_q, Parabolic, Weight};
use crate::weyl_hecke::{kl_polynomial, Permutation};

const AFTER_HELP: &str =
    "Weights are ρ-shifted throughout: T_{a,b,c} is the tilting module of highest \
weight aε_1 + bε_2 + cε_3 - ρ. Set PERICAT_FIXTURES to use another table file.";

/// Exit status for malformed input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for a failed verification.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for well-formed queries outside the engine's reach.
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pericat", version, about = "Exact tilting and block computations for pe(n)", after_help = AFTER_HELP)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Nabla,
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Pe3,
    Appendix,
    #[value(name = "thmD")]
    ThmD,
    Props,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block label of a weight.
    Block {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Number of blocks for a composition of integrality classes.
    Blocks {
        #[arg(long)]
        composition: String,
        /// Also list one label per block.
        #[arg(long)]
        labels: bool,
    },
    /// Convert between the Δ and ∇ bases.
    Char {
        /// A single ∇_λ to expand.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "char")]
        weight: Option<String>,
        /// A character as JSON, inline or as a file path.
        #[arg(long)]
        char: Option<String>,
        #[arg(long, value_enum, default_value = "delta")]
        to: BasisArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Tilting character `T^p_λ`.
    Tilting {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        parabolic: Option<String>,
        #[arg(long, value_enum, default_value = "nabla")]
        basis: BasisArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Translation functor `θ_a` applied to a Δ- or ∇-character.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// A character as JSON, inline or as a file path.
        #[arg(long)]
        char: String,
    },
    /// Kazhdan-Lusztig polynomial `P_{x,w}` in `S_n`.
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// `gl(n)` multiplicity `[M_verma : L_simple]`, parabolic if requested.
    Mult {
        #[arg(long, allow_hyphen_values = true)]
        verma: String,
        #[arg(long, allow_hyphen_values = true)]
        simple: String,
        #[arg(long)]
        parabolic: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::LengthMismatch { .. }
        | Error::InvalidComposition(_)
        | Error::Json(_)
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

fn parse_weight(s: &str, n: Option<usize>) -> Result<Weight> {
    let w: Weight = s.parse()?;
    if let Some(n) = n {
        if w.n() != n {
            return Err(Error::LengthMismatch {
                left: w.n(),
                right: n,
            });
        }
    }
    Ok(w)
}

fn parse_parabolic(s: Option<&str>, n: usize) -> Result<Parabolic> {
    let p = match s {
        None => Parabolic::borel(n),
        Some(t) => t.parse::<Parabolic>()?,
    };
    if p.n() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: p.n(),
        });
    }
    Ok(p)
}

fn read_char(arg: &str) -> Result<FormalChar> {
    if arg.trim_start().starts_with('{') {
        FormalChar::from_json(arg)
    } else {
        FormalChar::from_json(&std::fs::read_to_string(arg)?)
    }
}

fn char_json(chi: &FormalChar, fallback: Basis) -> Result<String> {
    chi.to_json(&fallback)
}

/// Both forms of the edge predicates, direct and through strong linkage, on a small
/// integral box.
fn edge_forms_agree(report: &mut Report) -> Result<()> {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for p in [Parabolic::borel(3), Parabolic::new(vec![2, 1])?] {
        for lambda in crate::pe3_tables::integral_box(2) {
            if !is_p_dominant(&lambda, &p) {
                continue;
            }
            for i in 0..3 {
                checked += 1;
                if nabla_edge(&lambda, i, &p)? != nabla_edge_via_linkage(&lambda, i, &p)? {
                    bad.push(format!("nabla {lambda} q={i} at {p}"));
                }
                if i < 2 && delta_edge(&lambda, i, &p)? != delta_edge_via_linkage(&lambda, i, &p)? {
                    bad.push(format!("delta {lambda} i={i} at {p}"));
                }
            }
        }
    }
    report.push(
        "edge predicates: both forms agree",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} cases")
        } else {
            bad.join("; ")
        },
    );
    Ok(())
}

/// `θ_a` commutes with the ∇-to-Δ expansion.
fn theta_consistent(report: &mut Report) -> Result<()> {
    let p = Parabolic::borel(3);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for lambda in crate::pe3_tables::integral_box(2) {
        for a in -4..=2 {
            let a = crate::root_data::q(a);
            let mut via_delta = FormalChar::zero();
            for (_, mu, c) in nabla_to_delta(&lambda).iter() {
                via_delta.add_assign(&theta_delta(a, mu, &p), c);
            }
            let mut via_nabla = FormalChar::zero();
            for (_, mu, c) in theta_nabla(a, &lambda, &p).iter() {
                via_nabla.add_assign(&nabla_to_delta(mu), c);
            }
            checked += 1;
            if via_delta != via_nabla {
                bad.push(format!("{lambda} a={a}"));
            }
        }
    }
    report.push(
        "θ commutes with the ∇-to-Δ expansion",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} cases")
        } else {
            bad.join("; ")
        },
    );
    Ok(())
}

fn block_counts(report: &mut Report) -> Result<()> {
    for n in 1..=4 {
        let labels: std::collections::BTreeSet<_> = all_integral(n, 4)
            .map(|w| serde_json::to_string(&block_label(&w)))
            .collect::<std::result::Result<_, _>>()?;
        report.push(
            format!("pe({n}) integral blocks"),
            labels.len() == n + 1,
            format!("{} labels", labels.len()),
        );
    }
    Ok(())
}

fn all_integral(n: usize, bound: i64) -> impl Iterator<Item = Weight> {
    let side = (2 * bound + 1) as usize;
    (0..side.pow(n as u32)).map(move |mut k| {
        let xs: Vec<i64> = (0..n)
            .map(|_| {
                let x = (k % side) as i64 - bound;
                k /= side;
                x
            })
            .collect();
        Weight::from_ints(&xs)
    })
}

fn properties() -> Result<Report> {
    let mut report = pe2_property_check()?;
    report.title = "properties".into();
    edge_forms_agree(&mut report)?;
    theta_consistent(&mut report)?;
    block_counts(&mut report)?;
    Ok(report)
}

fn verify(suite: Suite, bound: i64) -> Result<Report> {
    let tables = Pe3Tables::from_env()?;
    match suite {
        Suite::Pe3 => verify_tables(&tables, bound),
        Suite::Appendix => replay_appendix(&tables),
        Suite::ThmD => verify_theorem_d(&tables, bound),
        Suite::Props => properties(),
    }
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let json_default = |f: Option<Format>| f.unwrap_or(Format::Json) == Format::Json;
    let text_default = |f: Option<Format>| f == Some(Format::Json);
    let out = match cli.command {
        Command::Block { weight, n } => {
            let w = parse_weight(&weight, n)?;
            let label = block_label(&w);
            let canonical = canonical_representative(&w);
            if json_default(cli.format) {
                json!({"label": label, "canonical": canonical.to_string()}).to_string()
            } else {
                format!(
                    "label: {}\ncanonical: {canonical}",
                    serde_json::to_string(&label)?
                )
            }
        }
        Command::Blocks {
            composition,
            labels,
        } => {
            let p: Parabolic = composition.parse()?;
            let count = block_count(&p);
            let reps = block_representatives(&p);
            if text_default(cli.format) {
                let ls: Vec<_> = reps
                    .iter()
                    .map(|r| json!({"label": block_label(r), "canonical": r}))
                    .collect();
                json!({"count": count, "labels": ls}).to_string()
            } else if labels {
                let mut s = count.to_string();
                for r in &reps {
                    s.push_str(&format!(
                        "\n{r}\t{}",
                        serde_json::to_string(&block_label(r))?
                    ));
                }
                s
            } else {
                count.to_string()
            }
        }
        Command::Char {
            weight,
            char,
            to,
            n,
        } => {
            let chi = match (weight, char) {
                (Some(w), None) => FormalChar::nabla(parse_weight(&w, n)?),
                (None, Some(c)) => read_char(&c)?,
                _ => {
                    return Err(Error::Parse(
                        "give exactly one of --weight and --char".into(),
                    ))
                }
            };
            let basis = chi.uniform_basis()?.cloned();
            let converted = match (basis, to) {
                (None, _) => chi.clone(),
                (Some(Basis::Nabla(_)), BasisArg::Delta) => nabla_char_to_delta(&chi)?,
                (Some(Basis::Delta(p)), BasisArg::Nabla) if p.is_borel() => {
                    delta_sum_to_nabla_sum(&chi, 64)?
                }
                (Some(b @ (Basis::Nabla(_) | Basis::Delta(_))), _) if b.name() == to_name(to) => {
                    chi.clone()
                }
                _ => {
                    return Err(Error::WrongBasis {
                        expected: "full-category delta or any nabla".into(),
                    })
                }
            };
            let fallback = match to {
                BasisArg::Delta => Basis::Delta(Parabolic::borel(1)),
                BasisArg::Nabla => Basis::Nabla(Parabolic::borel(1)),
            };
            render_char(&converted, fallback, cli.format)?
        }
        Command::Tilting {
            weight,
            parabolic,
            basis,
            n,
        } => {
            let w = parse_weight(&weight, n)?;
            let p = parse_parabolic(parabolic.as_deref(), w.n())?;
            let t = tilting_character(&w, &p)?;
            match basis {
                BasisArg::Nabla => render_char(&t, Basis::Nabla(p), cli.format)?,
                BasisArg::Delta => {
                    render_char(&nabla_char_to_delta(&t)?, Basis::Delta(p), cli.format)?
                }
            }
        }
        Command::Theta { a, char } => {
            let a = parse_q(&a)?;
            let chi = read_char(&char)?;
            let fallback = chi
                .uniform_basis()?
                .cloned()
                .unwrap_or(Basis::Nabla(Parabolic::borel(1)));
            render_char(&theta_char(a, &chi)?, fallback, cli.format)?
        }
        Command::Kl { n, x, w } => {
            let x: Permutation = x.parse()?;
            let w: Permutation = w.parse()?;
            for perm in [&x, &w] {
                if perm.n() != n {
                    return Err(Error::LengthMismatch {
                        left: perm.n(),
                        right: n,
                    });
                }
            }
            let poly = kl_polynomial(&x, &w)?;
            if text_default(cli.format) {
                json!({"x": x.to_string(), "w": w.to_string(), "coeffs": poly}).to_string()
            } else {
                poly.to_string()
            }
        }
        Command::Mult {
            verma,
            simple,
            parabolic,
            n,
        } => {
            let mu = parse_weight(&verma, n)?;
            let lambda = parse_weight(&simple, Some(n.unwrap_or(mu.n())))?;
            let m = match parabolic {
                None => verma_simple_mult(&mu, &lambda)?,
                Some(c) => {
                    parabolic_verma_simple_mult(&mu, &lambda, &parse_parabolic(Some(&c), mu.n())?)?
                }
            };
            if text_default(cli.format) {
                json!({"mult": m}).to_string()
            } else {
                m.to_string()
            }
        }
        Command::Verify { suite, bound } => {
            let report = verify(suite, bound)?;
            let code = if report.all_passed() { 0 } else { EXIT_FAILED };
            let stdout = if text_default(cli.format) {
                serde_json::to_string(&report)?
            } else {
                report.to_string()
            };
            return Ok(Outcome {
                code,
                stdout,
                stderr: String::new(),
            });
        }
    };
    Ok(Outcome::ok(out))
}

fn to_name(b: BasisArg) -> &'static str {
    match b {
        BasisArg::Nabla => "nabla",
        BasisArg::Delta => "delta",
    }
}

fn render_char(chi: &FormalChar, fallback: Basis, format: Option<Format>) -> Result<String> {
    if format == Some(Format::Text) {
        Ok(if chi.is_zero() {
            "0".into()
        } else {
            chi.to_string()
        })
    } else {
        char_json(chi, fallback)
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}"),
        },
    }
}
