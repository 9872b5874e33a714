mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use liarlab_core::afs::{diagonal_sentence, AfsError, FormalSystem, LiarWitness};
use liarlab_core::logic::LimitationVariant;
use liarlab_core::presburger::{self, PFormula, Presburger, DEFAULT_BUDGET};
use liarlab_core::quineland::{self, QExpr, QFormula, Quineland};

use report::{Report, Status};

#[derive(Parser)]
#[command(name = "liarlab", version, about = "Liar sentences, limitation theorems and two formal systems to run them on")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of naming-ledger assignments a command may force.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Additive arithmetic of the naturals.
    #[command(subcommand)]
    Pres(PresCommand),
    /// The quotation language with a printer.
    #[command(subcommand)]
    Quine(QuineCommand),
    /// Run a limitation theorem's liar construction on a formula.
    Liar(LiarArgs),
}

#[derive(Subcommand)]
enum PresCommand {
    /// Decide a sentence.
    Decide { sentence: String },
    /// List the first formulas in canonical order.
    Enum {
        #[arg(long)]
        count: usize,
    },
    /// Gödel number of a formula.
    Name { formula: String },
    /// Formula with a given Gödel number.
    Unname { name: u64 },
    /// Check that the even/odd representers define truth.
    Truthdef {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Look for a small formula representing the diagonal of the evens.
    Noselfref {
        #[arg(long, default_value_t = 7)]
        cap: usize,
        #[arg(long, default_value_t = 60)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum QuineCommand {
    /// Truth value of a sentence.
    Truth { sentence: String },
    /// Whether the printer prints a sentence.
    Printable { sentence: String },
    /// The diagonal sentence of a formula.
    Diag { formula: String },
    /// The Gödel sentence and its facts.
    Goedel,
    /// A name where `phi` fails to define truth.
    Tarski {
        #[arg(long)]
        phi: String,
    },
    /// Length of the shortest derivation.
    Minproof { sentence: String },
    /// A printable sentence that needs at least N steps.
    Longtheorem {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemTag {
    Pres,
    Quine,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantTag {
    #[value(name = "goedel-syn")]
    GoedelSyn,
    #[value(name = "goedel-sem")]
    GoedelSem,
    Tarski,
    Church,
}

impl From<VariantTag> for LimitationVariant {
    fn from(v: VariantTag) -> Self {
        match v {
            VariantTag::GoedelSyn => LimitationVariant::GoedelSyntactic,
            VariantTag::GoedelSem => LimitationVariant::GoedelSemantic,
            VariantTag::Tarski => LimitationVariant::Tarski,
            VariantTag::Church => LimitationVariant::Church,
        }
    }
}

#[derive(Args)]
struct LiarArgs {
    #[arg(long, value_enum)]
    system: SystemTag,
    #[arg(long, value_enum)]
    variant: VariantTag,
    #[arg(long)]
    pi: String,
}

/// Errors that end the run with exit code 2.
struct Fatal(String);

impl From<AfsError> for Fatal {
    fn from(e: AfsError) -> Self {
        Fatal(e.to_string())
    }
}

impl From<presburger::ParseError> for Fatal {
    fn from(e: presburger::ParseError) -> Self {
        Fatal(format!("parse error: {e}"))
    }
}

impl From<quineland::ParseError> for Fatal {
    fn from(e: quineland::ParseError) -> Self {
        Fatal(format!("parse error: {e}"))
    }
}

impl From<presburger::DecideError> for Fatal {
    fn from(e: presburger::DecideError) -> Self {
        Fatal(format!("{e:?}"))
    }
}

type Run = Result<Report, Fatal>;

fn quoted(s: &str) -> String {
    format!("'{}'", s.replace('\'', r"'\''"))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Pres(c) => pres(c, &argv, cli.budget),
        Command::Quine(c) => quine(c, &argv),
        Command::Liar(a) => liar(a, &argv, cli.budget),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code())
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn pres_sentence(text: &str) -> Result<PFormula, Fatal> {
    let f = presburger::parse(text)?;
    if f.has_free() {
        return Err(Fatal(format!("not a sentence: {}", presburger::serialize(&f))));
    }
    Ok(f)
}

fn pres(cmd: &PresCommand, argv: &[String], budget: usize) -> Run {
    let sys = Presburger::with_budget(budget);
    let mut r = Report::new(argv, "presburger");
    match cmd {
        PresCommand::Decide { sentence } => {
            let f = pres_sentence(sentence)?;
            let canon = presburger::serialize(&f);
            let value = presburger::decide(&f)?;
            let negated = presburger::decide(&PFormula::not(f))?;
            r.fact("decide", value, format!("liarlab pres decide {}", quoted(&canon)));
            r.fact("decide_negation", negated, format!("liarlab pres decide {}", quoted(&format!("~({canon})"))));
            r.witness("canonical", canon);
            Ok(r.brief(value).status(Status::Pass, value != negated))
        }
        PresCommand::Enum { count } => {
            if *count > budget {
                return Err(AfsError::BudgetExceeded {
                    limit: budget,
                    context: format!("enumerating {count} formulas"),
                }
                .into());
            }
            let fs = presburger::enumerate_formulas(*count);
            r.fact("count", fs.len(), format!("liarlab pres enum --count {count}"));
            for (i, f) in fs.iter().enumerate() {
                r.witness(&i.to_string(), presburger::serialize(f));
            }
            Ok(r)
        }
        PresCommand::Name { formula } => {
            let f = presburger::parse(formula)?;
            let n = sys.name_of(&f)?;
            let canon = presburger::serialize(&f);
            let provable = !f.has_free() && sys.is_true(&f);
            r.fact("name", n, format!("liarlab pres name {}", quoted(&canon)));
            r.fact("parity", presburger::Parity::of(n).as_str(), format!("liarlab pres name {}", quoted(&canon)));
            let via = if f.has_free() { "name" } else { "decide" };
            r.fact("provable_sentence", provable, format!("liarlab pres {via} {}", quoted(&canon)));
            r.witness("formula", canon);
            let consistent = (n % 2 == 0) == provable;
            Ok(r.brief(n).status(Status::Pass, consistent))
        }
        PresCommand::Unname { name } => {
            let f = sys.goedel_formula(*name)?;
            let canon = presburger::serialize(&f);
            r.fact("name", *name, format!("liarlab pres name {}", quoted(&canon)));
            r.fact("parity", presburger::Parity::of(*name).as_str(), format!("liarlab pres unname {name}"));
            r.witness("formula", canon.clone());
            Ok(r.brief(canon))
        }
        PresCommand::Truthdef { samples } => {
            let outcome = sys.truth_definability_check(*samples)?;
            let recipe = format!("liarlab pres truthdef --samples {samples}");
            r.fact("samples", *samples, recipe.clone());
            r.fact("even_representer", presburger::serialize(&presburger::even_representer()), recipe.clone());
            r.fact("odd_representer", presburger::serialize(&presburger::odd_representer()), recipe.clone());
            r.fact("refuted", outcome.is_refuted(), recipe);
            match outcome.into_witness() {
                Some(v) => {
                    r.witness("name", v.witness_name.to_string());
                    r.witness("instance", presburger::serialize(&v.lambda));
                    r.witness("narrative", v.narrative);
                    Ok(r.status(Status::Violation, false))
                }
                None => Ok(r),
            }
        }
        PresCommand::Noselfref { cap, samples } => {
            let ev = sys.non_self_referentiality_evidence(*cap, *samples)?;
            let recipe = format!("liarlab pres noselfref --cap {cap} --samples {samples}");
            r.fact("candidates", ev.candidates, recipe.clone());
            r.fact("sample", ev.sample.len(), recipe.clone());
            r.fact("survivors", ev.survivors.len(), recipe);
            for s in &ev.survivors {
                r.witness("survivor", presburger::serialize(s));
            }
            if ev.all_refuted() {
                Ok(r)
            } else {
                Ok(r.status(Status::Violation, false))
            }
        }
    }
}

fn quine_formula(text: &str) -> Result<QFormula, Fatal> {
    Ok(quineland::parse_formula(text)?)
}

fn quine_sentence(text: &str) -> Result<QFormula, Fatal> {
    let f = quine_formula(text)?;
    if !f.is_sentence() {
        return Err(Fatal(format!("not a sentence: {f}")));
    }
    Ok(f)
}

fn derivation_witnesses(r: &mut Report, s: &QFormula) {
    if let Some(d) = quineland::derivation(s) {
        for (step, just) in d.steps.iter().zip(&d.justifications) {
            let how = match just {
                quineland::Justification::Axiom => "axiom".to_string(),
                quineland::Justification::Rule(rule, k) => format!("{rule} from {}", k + 1),
            };
            r.witness(&format!("step ({how})"), step.to_string());
        }
    }
}

fn quine(cmd: &QuineCommand, argv: &[String]) -> Run {
    let sys = Quineland::new();
    let mut r = Report::new(argv, "quineland");
    match cmd {
        QuineCommand::Truth { sentence } => {
            let s = quine_sentence(sentence)?;
            let value = quineland::truth(&s);
            r.fact("truth", value, format!("liarlab quine truth {}", quoted(&s.to_string())));
            r.witness("sentence", s.to_string());
            Ok(r.brief(value))
        }
        QuineCommand::Printable { sentence } => {
            let s = quine_sentence(sentence)?;
            let value = quineland::printable(&s);
            let recipe = format!("liarlab quine printable {}", quoted(&s.to_string()));
            r.fact("printable", value, recipe.clone());
            r.fact(
                "min_proof_length",
                quineland::min_proof_length(&s).map_or(Value::Null, Value::from),
                format!("liarlab quine minproof {}", quoted(&s.to_string())),
            );
            derivation_witnesses(&mut r, &s);
            Ok(r.brief(value))
        }
        QuineCommand::Diag { formula } => {
            let f = quine_formula(formula)?;
            let lambda = diagonal_sentence(&sys, &QExpr::Formula(f.clone()))?;
            let QExpr::Formula(lambda) = lambda else {
                unreachable!("diagonal of a formula is a formula")
            };
            r.fact("truth", quineland::truth(&lambda), format!("liarlab quine truth {}", quoted(&lambda.to_string())));
            r.fact(
                "printable",
                quineland::printable(&lambda),
                format!("liarlab quine printable {}", quoted(&lambda.to_string())),
            );
            r.witness("pi", f.to_string());
            r.witness("lambda", lambda.to_string());
            Ok(r.brief(lambda.to_string()))
        }
        QuineCommand::Goedel => {
            let g = sys.goedel_sentence();
            let l = quoted(&g.lambda.to_string());
            r.fact("diag_fixed_point", g.facts.diag_fixed_point, "liarlab quine goedel");
            r.fact("truth_lambda", g.facts.truth_lambda, format!("liarlab quine truth {l}"));
            r.fact("printable_lambda", g.facts.printable_lambda, format!("liarlab quine printable {l}"));
            r.fact(
                "printable_negation",
                g.facts.printable_negation,
                format!("liarlab quine printable {}", quoted(&QFormula::not(g.lambda.clone()).to_string())),
            );
            r.witness("pi", g.pi.to_string());
            r.witness("lambda", g.lambda.to_string());
            Ok(r.status(Status::Witness, g.facts.as_expected()))
        }
        QuineCommand::Tarski { phi } => {
            let f = quine_formula(phi)?;
            let v = sys.logical_system().tarski_counterexample(&QExpr::Formula(f.clone()))?;
            let instance = f.substitute(&v.witness_name);
            r.fact("phi_at_name_true", v.lhs, format!("liarlab quine truth {}", quoted(&instance.to_string())));
            r.fact(
                "named_sentence_true",
                v.rhs,
                format!("liarlab quine truth {}", quoted(&v.witness_name.0.to_string())),
            );
            r.witness("phi", f.to_string());
            r.witness("name", v.witness_name.to_string());
            r.witness("phi_at_name", instance.to_string());
            r.witness("narrative", v.narrative.clone());
            let violated = v.is_violation();
            Ok(r.status(if violated { Status::Violation } else { Status::Pass }, violated))
        }
        QuineCommand::Minproof { sentence } => {
            let s = quine_sentence(sentence)?;
            let len = quineland::min_proof_length(&s);
            let value = len.map_or(Value::Null, Value::from);
            r.fact("min_proof_length", value.clone(), format!("liarlab quine minproof {}", quoted(&s.to_string())));
            derivation_witnesses(&mut r, &s);
            Ok(r.brief(len.map_or(Value::from("none"), Value::from)))
        }
        QuineCommand::Longtheorem { n } => {
            if *n == 0 {
                return Err(Fatal("--n must be at least 1".into()));
            }
            let s = quineland::long_theorem(*n);
            let len = quineland::min_proof_length(&s);
            let verified = quineland::derivation(&s).is_some_and(|d| d.verify() && Some(d.len()) == len);
            let q = quoted(&s.to_string());
            r.fact("printable", quineland::printable(&s), format!("liarlab quine printable {q}"));
            r.fact("min_proof_length", len.map_or(Value::Null, Value::from), format!("liarlab quine minproof {q}"));
            let itself = format!("liarlab quine longtheorem --n {n}");
            r.fact("in_p_n", quineland::in_p_n(&s, *n), itself.clone());
            r.fact("derivation_verified", verified, itself);
            r.witness("sentence", s.to_string());
            let ok = verified && len.is_some_and(|k| k >= *n);
            Ok(r.result(s.to_string()).status(Status::Witness, ok))
        }
    }
}

fn liar_report<E, N>(
    mut r: Report,
    variant: LimitationVariant,
    w: &LiarWitness<E, N>,
    render: impl Fn(&E) -> String,
    render_name: impl Fn(&N) -> String,
) -> Report {
    let (a, b) = variant.sets();
    let recipe = r.command.iter().map(|s| quoted(s)).collect::<Vec<_>>().join(" ");
    let recipe = format!("liarlab {recipe}");
    r.fact("A", a.symbol(), recipe.clone());
    r.fact("B", b.symbol(), recipe.clone());
    r.fact("lambda_is_sentence", w.facts.lambda_is_sentence, recipe.clone());
    r.fact("lambda_in_A", w.facts.lambda_in_a, recipe.clone());
    r.fact("lambda_in_B", w.facts.lambda_in_b, recipe.clone());
    r.fact("represents_at_self", w.facts.represents_at_self, recipe.clone());
    r.fact("separates", w.facts.separates(), recipe);
    r.witness("pi", render(&w.pi));
    r.witness("name", render_name(&w.name));
    r.witness("lambda", render(&w.lambda));
    let f = w.facts;
    match variant {
        // No formula can satisfy the representation condition at its own name.
        LimitationVariant::Tarski | LimitationVariant::Church => {
            if f.represents_at_self {
                r.status(Status::Pass, false)
            } else {
                r.status(Status::Violation, true)
            }
        }
        LimitationVariant::GoedelSyntactic | LimitationVariant::GoedelSemantic => {
            if !f.represents_at_self {
                r.status(Status::Violation, true)
            } else {
                r.status(Status::Witness, f.separates())
            }
        }
    }
}

fn liar(args: &LiarArgs, argv: &[String], budget: usize) -> Run {
    let variant = LimitationVariant::from(args.variant);
    match args.system {
        SystemTag::Pres => {
            let sys = Presburger::with_budget(budget);
            let pi = presburger::parse(&args.pi)?;
            let w = sys.logical_system().limitation_witness(variant, &pi)?;
            let r = Report::new(argv, "presburger");
            Ok(liar_report(r, variant, &w, presburger::serialize, |n| n.to_string()))
        }
        SystemTag::Quine => {
            let sys = Quineland::new();
            let pi = QExpr::Formula(quine_formula(&args.pi)?);
            let w = sys.logical_system().limitation_witness(variant, &pi)?;
            let r = Report::new(argv, "quineland");
            Ok(liar_report(r, variant, &w, quineland::serialize, |n| n.to_string()))
        }
    }
}
