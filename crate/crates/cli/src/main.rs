//! Batch front end: parse relation or game files, run one analysis, emit a
//! plain or JSON report. Exit codes: 0 = computed and every checked claim
//! holds, 1 = computed but a checked claim fails, 2 = input error.

mod parse;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordex_core::{
    completion_union_check_seeded, conjecture_harness, consistency_report, dimension,
    duggan_check, enumerate_linear_extensions, enumerate_ordering_extensions,
    enumerate_tournament_extensions, extension_with_maximal, linear_extension,
    nash_equilibria_with, ordering_extension, tournament_extension, tournament_extension_raw,
    uncovered_pairs, verify_intersection_theorem, witness_completion, Deviation, Error,
    ExtensionConstraint, Flavor, IntersectionOutcome, Profile, Relation, RelationClass, Scope,
    DEFAULT_ENUM_CAP,
};

const SCHEMA: &str = "ordex/1";

#[derive(Parser)]
#[command(name = "ordex", version, about = "Binary relation and game analysis")]
struct Cli {
    /// Emit the full JSON report instead of the plain summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classification and the consistency table of a relation.
    Analyze {
        file: PathBuf,
    },
    /// Transitive closure of a relation.
    Closure {
        file: PathBuf,
    },
    /// Build one extension of the prescribed kind.
    Extend(ExtendArgs),
    /// Enumerate all extensions of one flavor.
    Extensions {
        file: PathBuf,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Universe-size cap (3^k cap for tournaments).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Check that the flavor's extensions intersect to their target.
    Realize {
        file: PathBuf,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(short, long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP as u64)]
        cap: u64,
    },
    /// Minimum realizer size with a witness family.
    Dimension {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP as u64)]
        cap: u64,
    },
    /// Covers queries over the linear extensions.
    Covers {
        file: PathBuf,
        /// Four labels x y k l: does (x,y) cover (k,l)? Omit for the
        /// uncovered-pairs listing.
        labels: Vec<String>,
    },
    /// Verify the general extension hypotheses over a relation class.
    Duggan {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// Equilibria, completions and the union check for a game file.
    Game(GameArgs),
    /// Run the conjecture sweeps.
    Harness {
        /// One scope name; all four when omitted.
        #[arg(long)]
        scope: Option<String>,
    },
}

#[derive(Args)]
struct ExtendArgs {
    file: PathBuf,
    /// Ordering extension (the default kind).
    #[arg(long, conflicts_with_all = ["linear", "tournament", "maximal"])]
    ordering: bool,
    /// Linear order extension.
    #[arg(long, conflicts_with_all = ["tournament", "maximal"])]
    linear: bool,
    /// Complete extension by the power-union construction; requires -m.
    #[arg(long, conflicts_with = "maximal")]
    tournament: bool,
    /// Linear extension keeping the given element maximal.
    #[arg(long)]
    maximal: Option<String>,
    #[arg(short, long)]
    m: Option<u32>,
    /// Constraint file: its universe is Y, its pairs are T.
    #[arg(long)]
    constraint: Option<PathBuf>,
    /// Skip the implicit reflexivization (tournament kind only).
    #[arg(long)]
    no_reflexivize: bool,
}

#[derive(Args)]
struct GameArgs {
    file: PathBuf,
    /// Weak-deviation semantics instead of the strict default.
    #[arg(long)]
    weak: bool,
    /// Compare N(G) with the union over completions.
    #[arg(long)]
    check_union: bool,
    /// Build a completion keeping the given profile an equilibrium.
    #[arg(long)]
    witness: Option<String>,
    #[arg(long, default_value_t = 1 << 16)]
    cap: u64,
    /// Rotates the completion sample when the union check is partial.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Ordering,
    Linear,
    StrictLinear,
    Tournament,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Ordering => Flavor::Ordering,
            FlavorArg::Linear => Flavor::Linear,
            FlavorArg::StrictLinear => Flavor::StrictLinear,
            FlavorArg::Tournament => Flavor::Tournament,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    /// Every relation on the universe.
    All,
    /// All compatible extensions of the input relation.
    Compatible,
}

/// A failed run: input errors exit 2, failed mathematical claims exit 1.
enum Failure {
    Input(String),
    Claim(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Claim(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Claim(m) => m,
        }
    }
}

/// Library errors about malformed input exit 2; errors reporting that the
/// requested mathematical object does not exist exit 1.
fn classify(e: Error) -> Failure {
    match e {
        Error::EmptyUniverse
        | Error::DuplicateLabel(_)
        | Error::UnknownLabel(_)
        | Error::UniverseMismatch
        | Error::ZeroExponent
        | Error::EmptyRestriction
        | Error::ConstraintUniverseMismatch
        | Error::ProfileArity { .. }
        | Error::UnknownAction { .. }
        | Error::CapExceeded { .. } => Failure::Input(e.to_string()),
        _ => Failure::Claim(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_relation(path: &Path) -> Result<Relation, Failure> {
    parse::parse_relation_text(&read(path)?).map_err(|e| Failure::Input(format!("{e:#}")))
}

fn pairs_json(r: &Relation) -> Value {
    Value::Array(
        r.labeled_pairs().map(|(a, b)| json!([a, b])).collect(),
    )
}

fn report_header(command: &str, input: Option<&Path>) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "input": input.map(|p| p.display().to_string()),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    let (Value::Object(b), Value::Object(e)) = (&mut base, extra) else {
        unreachable!("reports are JSON objects");
    };
    b.extend(e);
    base
}

fn emit(json_mode: bool, report: &Value, plain: &str) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable report"));
    } else {
        print!("{plain}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(claims_hold) => {
            if claims_hold {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// Ok(false) means the command ran but a checked claim failed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Cmd::Analyze { file } => {
            let r = load_relation(file)?;
            let cls = r.classify();
            let cons = consistency_report(&r);
            let report = merge(
                report_header("analyze", Some(file)),
                json!({
                    "universe": r.universe().labels(),
                    "pairs": pairs_json(&r),
                    "cardinality": r.cardinality(),
                    "classification": cls,
                    "consistency": cons,
                    "maximal_elements": r.maximal_element_labels(),
                    "conventions": {"reflexivized": false, "diagonal": "kept"},
                }),
            );
            let mut plain = format!(
                "relation on {} elements, {} pairs\n",
                r.size(),
                r.cardinality()
            );
            plain.push_str(&format!(
                "s-consistent: {}\nlambda: {:?}\n",
                cons.s_consistent, cons.lambda
            ));
            for (m, c, k) in &cons.table {
                plain.push_str(&format!("m={m}: consistent={c} rank-of-symmetry={k}\n"));
            }
            plain.push_str(&format!("maximal: {}\n", r.maximal_element_labels().join(" ")));
            emit(cli.json, &report, &plain);
            Ok(true)
        }
        Cmd::Closure { file } => {
            let r = load_relation(file)?;
            let c = r.transitive_closure();
            let report = merge(
                report_header("closure", Some(file)),
                json!({
                    "universe": c.universe().labels(),
                    "pairs": pairs_json(&c),
                    "cardinality": c.cardinality(),
                }),
            );
            emit(cli.json, &report, &parse::render_relation(&c));
            Ok(true)
        }
        Cmd::Extend(args) => extend(cli, args),
        Cmd::Extensions { file, flavor, cap } => {
            let r = load_relation(file)?;
            let family = match flavor {
                FlavorArg::Tournament => {
                    enumerate_tournament_extensions(&r, cap.unwrap_or(1 << 16))
                }
                FlavorArg::Ordering => {
                    enumerate_ordering_extensions(&r, cap.unwrap_or(DEFAULT_ENUM_CAP as u64) as usize)
                }
                FlavorArg::Linear | FlavorArg::StrictLinear => {
                    enumerate_linear_extensions(&r, cap.unwrap_or(DEFAULT_ENUM_CAP as u64) as usize)
                }
            }
            .map_err(classify)?;
            let family: Vec<Relation> = match flavor {
                FlavorArg::StrictLinear => family.iter().map(Relation::strip_diagonal).collect(),
                _ => family,
            };
            let report = merge(
                report_header("extensions", Some(file)),
                json!({
                    "count": family.len(),
                    "members": family.iter().map(pairs_json).collect::<Vec<_>>(),
                }),
            );
            let mut plain = format!("{} extensions\n", family.len());
            for q in &family {
                let line: Vec<String> =
                    q.labeled_pairs().map(|(a, b)| format!("({a},{b})")).collect();
                plain.push_str(&format!("{}\n", line.join(" ")));
            }
            emit(cli.json, &report, &plain);
            Ok(true)
        }
        Cmd::Realize { file, flavor, m, cap } => {
            let r = load_relation(file)?;
            let rep = verify_intersection_theorem(&r, (*flavor).into(), *m, *cap as usize)
                .map_err(classify)?;
            let ok = rep.outcome == IntersectionOutcome::Equal;
            let report = merge(
                report_header("realize", Some(file)),
                json!({"result": rep}),
            );
            emit(
                cli.json,
                &report,
                &format!("family of {}: {:?}\n", rep.family_size, rep.outcome),
            );
            Ok(ok)
        }
        Cmd::Dimension { file, cap } => {
            let r = load_relation(file)?;
            let (k, witness) = dimension(&r, *cap as usize).map_err(classify)?;
            let report = merge(
                report_header("dimension", Some(file)),
                json!({
                    "dimension": k,
                    "witness": witness.iter().map(pairs_json).collect::<Vec<_>>(),
                }),
            );
            let mut plain = format!("dimension {k}\n");
            for w in &witness {
                let line: Vec<String> =
                    w.labeled_pairs().map(|(a, b)| format!("({a},{b})")).collect();
                plain.push_str(&format!("{}\n", line.join(" ")));
            }
            emit(cli.json, &report, &plain);
            Ok(true)
        }
        Cmd::Covers { file, labels } => {
            let r = load_relation(file)?;
            let u = r.universe().clone();
            if labels.is_empty() {
                let pairs = uncovered_pairs(&r).map_err(classify)?;
                let labeled: Vec<(String, String)> = pairs
                    .iter()
                    .map(|&(i, j)| (u.label(i).to_string(), u.label(j).to_string()))
                    .collect();
                let report = merge(
                    report_header("covers", Some(file)),
                    json!({"uncovered": labeled}),
                );
                let mut plain = String::new();
                for (a, b) in &labeled {
                    plain.push_str(&format!("uncovered ({a},{b})\n"));
                }
                emit(cli.json, &report, &plain);
                return Ok(true);
            }
            if labels.len() != 4 {
                return Err(Failure::Input(
                    "covers takes exactly four labels: x y k l".to_string(),
                ));
            }
            let idx: Vec<usize> = labels
                .iter()
                .map(|l| u.index_of(l))
                .collect::<Result<_, _>>()
                .map_err(classify)?;
            let holds =
                ordex_core::covers(&r, (idx[0], idx[1]), (idx[2], idx[3])).map_err(classify)?;
            let report = merge(
                report_header("covers", Some(file)),
                json!({"p": [labels[0], labels[1]], "q": [labels[2], labels[3]], "covers": holds}),
            );
            emit(cli.json, &report, &format!("covers: {holds}\n"));
            Ok(holds)
        }
        Cmd::Duggan { file, class, cap } => {
            let r = load_relation(file)?;
            let class = match class {
                ClassArg::All => RelationClass::All,
                ClassArg::Compatible => RelationClass::CompatibleExtensions,
            };
            let rep = duggan_check(&r, &class, *cap).map_err(classify)?;
            let ok = rep.closed_upward
                && rep.arc_receptive
                && rep.outcome == IntersectionOutcome::Equal;
            let report =
                merge(report_header("duggan", Some(file)), json!({"result": rep}));
            emit(
                cli.json,
                &report,
                &format!(
                    "closed-upward: {}\narc-receptive: {}\nextensions: {}\noutcome: {:?}\n",
                    rep.closed_upward, rep.arc_receptive, rep.extension_count, rep.outcome
                ),
            );
            Ok(ok)
        }
        Cmd::Game(args) => game(cli, args),
        Cmd::Harness { scope } => {
            let scopes: Vec<Scope> = match scope {
                None => Scope::ALL.to_vec(),
                Some(name) => vec![Scope::parse(name).ok_or_else(|| {
                    Failure::Input(format!("unknown scope `{name}`"))
                })?],
            };
            let reports: Vec<_> = scopes.iter().map(|s| conjecture_harness(*s)).collect();
            let clean = reports.iter().all(|r| r.counterexamples.is_empty());
            let report = merge(
                report_header("harness", None),
                json!({"scopes": reports}),
            );
            let mut plain = String::new();
            for r in &reports {
                plain.push_str(&format!(
                    "{}: swept {} instances, {} ({} counterexamples)\n",
                    r.scope,
                    r.swept,
                    r.conclusion,
                    r.counterexamples.len()
                ));
            }
            emit(cli.json, &report, &plain);
            Ok(clean)
        }
    }
}

fn load_constraint(path: &Option<PathBuf>) -> Result<ExtensionConstraint, Failure> {
    let Some(path) = path else {
        return Ok(ExtensionConstraint::none());
    };
    let t = load_relation(path)?;
    let y = t.universe().labels().to_vec();
    ExtensionConstraint::new(y, t).map_err(classify)
}

fn extend(cli: &Cli, args: &ExtendArgs) -> Result<bool, Failure> {
    let r = load_relation(&args.file)?;
    let c = load_constraint(&args.constraint)?;
    let (kind, q) = if args.tournament {
        let m = args.m.ok_or_else(|| {
            Failure::Input("--tournament requires -m".to_string())
        })?;
        let q = if args.no_reflexivize {
            tournament_extension_raw(&r, m)
        } else {
            tournament_extension(&r, m)
        }
        .map_err(classify)?;
        ("tournament", q)
    } else if args.linear {
        ("linear", linear_extension(&r, &c).map_err(classify)?)
    } else if let Some(label) = &args.maximal {
        ("maximal", extension_with_maximal(&r, label).map_err(classify)?)
    } else {
        ("ordering", ordering_extension(&r, &c).map_err(classify)?)
    };
    // listings suppress the diagonal added by the constructions
    let shown = q.strip_diagonal();
    let report = merge(
        report_header("extend", Some(&args.file)),
        json!({
            "kind": kind,
            "pairs": pairs_json(&q),
            "off_diagonal_pairs": pairs_json(&shown),
            "conventions": {
                "reflexivized": !args.no_reflexivize,
                "diagonal": "suppressed in plain listing",
            },
        }),
    );
    let mut plain = String::new();
    for (a, b) in shown.labeled_pairs() {
        plain.push_str(&format!("pair {a} {b}\n"));
    }
    emit(cli.json, &report, &plain);
    Ok(true)
}

fn game(cli: &Cli, args: &GameArgs) -> Result<bool, Failure> {
    let g = parse::parse_game_text(&read(&args.file)?)
        .map_err(|e| Failure::Input(format!("{e:#}")))?;
    let semantics = if args.weak { Deviation::Weak } else { Deviation::Strict };
    let nash: Vec<String> = nash_equilibria_with(&g, semantics)
        .into_iter()
        .map(|i| g.profile_from_index(i).label())
        .collect();
    if let Some(profile) = &args.witness {
        let gp = witness_completion(&g, &Profile::parse(profile)).map_err(classify)?;
        let prefs: Vec<Value> = (0..gp.players()).map(|i| pairs_json(gp.pref(i))).collect();
        let report = merge(
            report_header("game", Some(&args.file)),
            json!({"witness_for": profile, "completion_prefs": prefs, "nash": nash}),
        );
        let mut plain = format!("completion keeping {profile} an equilibrium\n");
        for i in 0..gp.players() {
            plain.push_str(&format!("pref {i}: {} pairs\n", gp.pref(i).cardinality()));
        }
        emit(cli.json, &report, &plain);
        return Ok(true);
    }
    if args.check_union {
        let rep = completion_union_check_seeded(&g, args.cap, args.seed);
        let equal = rep.equal;
        let report = merge(
            report_header("game", Some(&args.file)),
            json!({"nash": nash, "union_check": rep, "seed": args.seed}),
        );
        emit(
            cli.json,
            &report,
            &format!(
                "equilibria: {}\ncompletions examined: {} (exhaustive: {})\nequal: {}\n",
                nash.join(" "),
                rep.completions,
                rep.exhaustive,
                equal
            ),
        );
        return Ok(equal);
    }
    let report = merge(
        report_header("game", Some(&args.file)),
        json!({"nash": nash, "semantics": if args.weak { "weak" } else { "strict" }}),
    );
    let mut plain = String::new();
    for p in &nash {
        plain.push_str(&format!("nash {p}\n"));
    }
    emit(cli.json, &report, &plain);
    Ok(true)
}
