//! `scox`: command-line access to the singular Coxeter toolkit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scox::io::{
    coset_to_json, expression_from_json, expression_to_json, load_system, parse_element, parse_expression,
    parse_subset, parse_word, table_to_text, trace_to_json,
};
use scox::rewrite::max_vertices;
use scox::webs::{
    apply_web_relation, evaluate_web, expression_from_web, hom_count, symmetric_group, web_normalize,
    web_relation_sites, ObjectSeq, Web, WebDirection, WebJson, WebRelation, WebSite,
};
use scox::{CoxeterSystem, DoubleCoset, Expression, Gen, ScoxError};

/// Singular Coxeter monoid toolkit: cosets, singular expressions, switchbacks,
/// rewriting, complexes and type-A webs.
#[derive(Parser, Debug)]
#[command(name = "scox", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// The Coxeter system: a named type or a matrix file.
#[derive(Args, Debug, Clone)]
struct SystemArgs {
    /// Named finite type, e.g. `A3`, `E8`, `I2(5)`, `A2xA1`.
    #[arg(long = "type", conflicts_with = "matrix")]
    type_name: Option<String>,
    /// JSON or TOML system file (`{"matrix": [[1,3],[3,1]], "labels": ["s","t"]}`).
    #[arg(long)]
    matrix: Option<PathBuf>,
}

impl SystemArgs {
    fn build(&self) -> scox::Result<CoxeterSystem> {
        match (&self.type_name, &self.matrix) {
            (Some(t), _) => CoxeterSystem::named(t),
            (None, Some(path)) => load_system(path),
            (None, None) => Err(ScoxError::Usage("one of --type or --matrix is required".into())),
        }
    }
}

/// A double coset `W_J w W_I`.
#[derive(Args, Debug, Clone)]
struct CosetArgs {
    /// Left subset `J` (labels, 1-based indices, or empty).
    #[arg(long, default_value = "")]
    left: String,
    /// Right subset `I`.
    #[arg(long, default_value = "")]
    right: String,
    /// Any element of the coset, as a word (`e` or empty for the identity).
    #[arg(long, default_value = "")]
    word: String,
}

impl CosetArgs {
    fn build(&self, sys: &CoxeterSystem) -> scox::Result<DoubleCoset> {
        let j = parse_subset(sys, &self.left)?;
        let i = parse_subset(sys, &self.right)?;
        sys.coset_of(j, &parse_element(sys, &self.word)?, i)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a Coxeter system into finite or infinite type.
    Classify(SystemArgs),
    /// Minimum, maximum, redundancies, core and lengths of a double coset.
    Coset {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        coset: CosetArgs,
    },
    /// Reduced expressions of a double coset.
    Rex {
        #[command(subcommand)]
        which: RexCommand,
    },
    /// Normalize an expression to a reduced expression, printing the trace.
    Reduce {
        #[command(flatten)]
        system: SystemArgs,
        /// Expression: `[st] -s +u`, `[st,s,su]`, `[[st,stu,tu]]`, or JSON.
        #[arg(long)]
        expr: String,
    },
    /// The rotation sequence `c` of a switchback relation.
    Switchback {
        #[command(flatten)]
        system: SystemArgs,
        /// Added generator `s_a` (1-based index or label).
        #[arg(long)]
        a: String,
        /// Removed generator `s_b` (1-based index or label).
        #[arg(long)]
        b: String,
        /// Base subset `J` (default: all generators but `s_a`).
        #[arg(long)]
        left: Option<String>,
    },
    /// The switchback table of an irreducible finite system.
    Table(SystemArgs),
    /// Check that every reduced-expression graph is connected.
    Matsumoto {
        #[command(flatten)]
        system: SystemArgs,
        /// Exit with status 1 if some graph is disconnected.
        #[arg(long)]
        verify: bool,
        /// Print one line per coset.
        #[arg(long)]
        list: bool,
    },
    /// The singular Coxeter complex 2-skeleton with base `J`.
    Complex {
        #[command(flatten)]
        system: SystemArgs,
        /// Base subset `J`.
        #[arg(long, default_value = "")]
        left: String,
    },
    /// Type-A webs.
    Webs {
        #[command(subcommand)]
        which: WebsCommand,
    },
}

#[derive(Subcommand, Debug)]
enum RexCommand {
    /// Some reduced expression.
    Some(RexArgs),
    /// The high road: up to the maximum, then down.
    High(RexArgs),
    /// The low road.
    Low(RexArgs),
    /// Every reduced expression (with `--format dot`, the reduced-expression graph).
    Enumerate(RexArgs),
}

#[derive(Args, Debug)]
struct RexArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    coset: CosetArgs,
}

#[derive(Args, Debug, Clone)]
struct WebArg {
    /// Web in text form: `(1,2,1) ; merge@1(1,2) ; split@1(2,1)`, or JSON.
    #[arg(long)]
    web: String,
}

impl WebArg {
    fn build(&self) -> scox::Result<Web> {
        let t = self.web.trim();
        if t.starts_with('{') {
            let j: WebJson = serde_json::from_str(t).map_err(|e| ScoxError::Validation(format!("bad web JSON: {e}")))?;
            Web::from_json(&j)
        } else {
            Web::parse(t)
        }
    }
}

#[derive(Subcommand, Debug)]
enum WebsCommand {
    /// The double coset and singular expression of a web.
    Evaluate(WebArg),
    /// List relation sites of a web, or apply one.
    Relate {
        #[command(flatten)]
        web: WebArg,
        /// Relation to apply (bigon, assoc, coassoc, square1, square2,
        /// nonredsquare, rungswap, interchange); omit to list all sites.
        #[arg(long)]
        relation: Option<String>,
        /// First rewritten layer (1-based).
        #[arg(long, default_value_t = 1)]
        layer: usize,
        /// Direction of the relation.
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
        /// Bottom rung of a backward non-reduced square.
        #[arg(long, default_value_t = 0)]
        param: usize,
    },
    /// Rewrite a web to a reduced web, printing the derivation.
    Normalize(WebArg),
    /// Number of double cosets between two boundary sequences.
    HomCount {
        /// Bottom boundary, e.g. `1,2`.
        #[arg(long)]
        bottom: String,
        /// Top boundary, e.g. `3`.
        #[arg(long)]
        top: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Dir {
    Forward,
    Backward,
}

fn emit_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_gen(sys: &CoxeterSystem, text: &str) -> scox::Result<Gen> {
    let w = parse_word(sys, text)?;
    match w.as_slice() {
        [g] => Ok(*g),
        _ => Err(ScoxError::Validation(format!("expected one generator, found '{text}'"))),
    }
}

fn parse_seq(text: &str) -> scox::Result<ObjectSeq> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let v = inner
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<usize>().map_err(|_| ScoxError::Validation(format!("bad integer '{x}'"))))
        .collect::<scox::Result<Vec<_>>>()?;
    Ok(ObjectSeq::new(v))
}

fn read_expression(sys: &CoxeterSystem, text: &str) -> scox::Result<Expression> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| ScoxError::Validation(format!("bad expression JSON: {e}")))?;
        expression_from_json(sys, &v)
    } else {
        parse_expression(sys, text)
    }
}

fn expression_list(sys: &CoxeterSystem, es: &[Expression], format: Format) -> String {
    match format {
        Format::Json => emit_json(&Value::Array(es.iter().map(|e| expression_to_json(sys, e)).collect())),
        _ => es.iter().map(|e| sys.fmt_expression(e) + "\n").collect(),
    }
}

fn require_format(format: Format, allowed: &[Format]) -> scox::Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(ScoxError::Usage(format!("format {format:?} is not supported by this subcommand").to_lowercase()))
    }
}

fn run(cli: Cli) -> scox::Result<String> {
    let format = cli.format;
    match cli.command {
        Command::Classify(system) => {
            require_format(format, &[Format::Text, Format::Json])?;
            let sys = system.build()?;
            let name = sys.type_name();
            Ok(match format {
                Format::Json => emit_json(&json!({
                    "type": name,
                    "rank": sys.rank(),
                    "finite": sys.is_finite(),
                    "labels": sys.labels(),
                })),
                _ => name + "\n",
            })
        }
        Command::Coset { system, coset } => {
            require_format(format, &[Format::Text, Format::Json])?;
            let sys = system.build()?;
            let p = coset.build(&sys)?;
            if format == Format::Json {
                let mut v = coset_to_json(&sys, &p, true);
                v["core"] = coset_to_json(&sys, &sys.core(&p), false);
                return Ok(emit_json(&v));
            }
            let l = sys.coset_lengths(&p);
            let core = sys.core(&p);
            Ok(format!(
                "left = {}\nright = {}\nmin = {}\nmax = {}\nleft_redundancy = {}\nright_redundancy = {}\ncore = ({}, {}, {})\nlength+ = {}\nlength- = {}\nlength = {}\n",
                sys.fmt_subset(p.left()),
                sys.fmt_subset(p.right()),
                sys.fmt_element(p.min()),
                sys.fmt_element(p.max()),
                sys.fmt_subset(p.left_redundancy()),
                sys.fmt_subset(p.right_redundancy()),
                sys.fmt_subset(core.left()),
                sys.fmt_subset(core.right()),
                sys.fmt_element(core.min()),
                l.plus,
                l.minus,
                l.total
            ))
        }
        Command::Rex { which } => {
            let (args, kind) = match &which {
                RexCommand::Some(a) => (a, "some"),
                RexCommand::High(a) => (a, "high"),
                RexCommand::Low(a) => (a, "low"),
                RexCommand::Enumerate(a) => (a, "enumerate"),
            };
            let sys = args.system.build()?;
            let p = args.coset.build(&sys)?;
            match kind {
                "enumerate" if format == Format::Dot => Ok(sys.rex_graph(&p)?.to_dot(&sys)),
                "enumerate" => Ok(expression_list(&sys, &sys.rex_set(&p)?, format)),
                _ => {
                    require_format(format, &[Format::Text, Format::Json])?;
                    let e = match kind {
                        "some" => sys.some_rex(&p),
                        "high" => sys.high_road(&p),
                        _ => sys.low_road(&p),
                    };
                    Ok(match format {
                        Format::Json => emit_json(&expression_to_json(&sys, &e)),
                        _ => format!("{}\n{}\n", sys.fmt_expression(&e), sys.fmt_steps(&e)),
                    })
                }
            }
        }
        Command::Reduce { system, expr } => {
            require_format(format, &[Format::Text, Format::Json])?;
            let sys = system.build()?;
            let e = read_expression(&sys, &expr)?;
            let tr = sys.normalize(&e);
            Ok(match format {
                Format::Json => emit_json(&trace_to_json(&sys, &tr)),
                _ => tr.to_text(&sys),
            })
        }
        Command::Switchback { system, a, b, left } => {
            require_format(format, &[Format::Text, Format::Json])?;
            let sys = system.build()?;
            let s = parse_gen(&sys, &a)?;
            let t = parse_gen(&sys, &b)?;
            let j = match left {
                Some(l) => parse_subset(&sys, &l)?,
                None => sys.all().without(s),
            };
            let rot = sys.rotation_sequence(j, s, t)?;
            let c: Vec<usize> = rot.c().into_iter().map(|g| g + 1).collect();
            let rel = sys.switchback(j, s, t)?;
            Ok(match format {
                Format::Json => emit_json(&json!({
                    "a": s + 1,
                    "b": t + 1,
                    "c": c,
                    "lhs": expression_to_json(&sys, &rel.lhs),
                    "rhs": expression_to_json(&sys, &rel.rhs),
                })),
                _ => format!(
                    "c = {}\n{} = {}\n",
                    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    sys.fmt_steps(&rel.lhs),
                    sys.fmt_steps(&rel.rhs)
                ),
            })
        }
        Command::Table(system) => {
            require_format(format, &[Format::Text, Format::Json])?;
            let sys = system.build()?;
            let rows = sys.switchback_table()?;
            Ok(match format {
                Format::Json => serde_json::to_string(&rows).expect("serializable") + "\n",
                _ => table_to_text(sys.rank(), &rows),
            })
        }
        Command::Matsumoto { system, verify, list } => {
            require_format(format, &[Format::Text, Format::Json])?;
            let sys = system.build()?;
            let report = sys.matsumoto_verify()?;
            let failures = report.failures().len();
            let rexes: usize = report.entries.iter().map(|e| e.rex_count).sum();
            let out = match format {
                Format::Json => emit_json(&json!({
                    "type": sys.type_name(),
                    "cosets": report.entries.len(),
                    "reduced_expressions": rexes,
                    "disconnected": failures,
                    "entries": if list {
                        report.entries.iter().map(|e| json!({
                            "left": sys.fmt_subset(e.left),
                            "right": sys.fmt_subset(e.right),
                            "min": sys.fmt_word(&e.min_word),
                            "rex_count": e.rex_count,
                            "connected": e.connected,
                        })).collect::<Vec<_>>()
                    } else {
                        Vec::new()
                    },
                })),
                _ => {
                    let mut s = String::new();
                    if list {
                        for e in &report.entries {
                            s.push_str(&format!(
                                "{} {} {} rexes={} {}\n",
                                sys.fmt_subset(e.left),
                                sys.fmt_subset(e.right),
                                sys.fmt_word(&e.min_word),
                                e.rex_count,
                                if e.connected { "connected" } else { "DISCONNECTED" }
                            ));
                        }
                    }
                    s.push_str(&format!(
                        "{}: {} cosets, {} reduced expressions, {} disconnected\n",
                        sys.type_name(),
                        report.entries.len(),
                        rexes,
                        failures
                    ));
                    s
                }
            };
            if verify && failures > 0 {
                return Err(ScoxError::Validation(format!("{out}reduced-expression graphs are not all connected")));
            }
            Ok(out)
        }
        Command::Complex { system, left } => {
            let sys = system.build()?;
            let j = parse_subset(&sys, &left)?;
            let g = sys.build_complex(j, max_vertices())?;
            let f = match format {
                Format::Json => "json",
                _ => "dot",
            };
            sys.export_complex(&g, f)
        }
        Command::Webs { which } => run_webs(which, format),
    }
}

fn site_text(s: &WebSite) -> String {
    let dir = match s.direction {
        WebDirection::Forward => "",
        WebDirection::Backward => "'",
    };
    let param = if s.relation == WebRelation::NonRedSquare && s.direction == WebDirection::Backward {
        format!(" f={}", s.param)
    } else {
        String::new()
    };
    format!("{}{}@{}{}", s.relation.name(), dir, s.layer + 1, param)
}

fn site_json(s: &WebSite) -> Value {
    json!({
        "relation": s.relation.name(),
        "layer": s.layer + 1,
        "direction": s.direction,
        "param": s.param,
    })
}

fn run_webs(which: WebsCommand, format: Format) -> scox::Result<String> {
    require_format(format, &[Format::Text, Format::Json])?;
    match which {
        WebsCommand::Evaluate(w) => {
            let w = w.build()?;
            let n = w.bottom().total();
            let sys = symmetric_group(n);
            let p = evaluate_web(&w);
            let e = expression_from_web(&w);
            Ok(match format {
                Format::Json => emit_json(&json!({
                    "coset": coset_to_json(&sys, &p, true),
                    "expression": expression_to_json(&sys, &e),
                    "degree": w.degree(),
                    "reduced": sys.is_reduced(&e),
                })),
                _ => format!(
                    "expression = {}\ncoset = ({}, {}, {})\ndegree = {}\nreduced = {}\n",
                    sys.fmt_expression(&e),
                    sys.fmt_subset(p.left()),
                    sys.fmt_subset(p.right()),
                    sys.fmt_element(p.min()),
                    w.degree(),
                    sys.is_reduced(&e)
                ),
            })
        }
        WebsCommand::Relate { web, relation, layer, direction, param } => {
            let w = web.build()?;
            let Some(rel) = relation else {
                let sites = web_relation_sites(&w);
                return Ok(match format {
                    Format::Json => emit_json(&Value::Array(sites.iter().map(site_json).collect())),
                    _ => sites.iter().map(|s| site_text(s) + "\n").collect(),
                });
            };
            if layer == 0 {
                return Err(ScoxError::Validation("layers are 1-based".into()));
            }
            let site = WebSite {
                relation: WebRelation::from_name(&rel)?,
                layer: layer - 1,
                direction: match direction {
                    Dir::Forward => WebDirection::Forward,
                    Dir::Backward => WebDirection::Backward,
                },
                param,
            };
            let out = apply_web_relation(&w, site)?;
            Ok(match format {
                Format::Json => emit_json(&serde_json::to_value(out.to_json()).expect("serializable")),
                _ => out.to_text() + "\n",
            })
        }
        WebsCommand::Normalize(w) => {
            let w = w.build()?;
            let d = web_normalize(&w)?;
            Ok(match format {
                Format::Json => emit_json(&json!({
                    "start": d.start.to_json(),
                    "sites": d.sites.iter().map(site_json).collect::<Vec<_>>(),
                    "final": d.final_web.to_json(),
                })),
                _ => {
                    let mut s = format!("start: {}\n", d.start.to_text());
                    let mut cur = d.start.clone();
                    for (k, site) in d.sites.iter().enumerate() {
                        cur = apply_web_relation(&cur, *site)?;
                        s.push_str(&format!("step {}: {}  {}\n", k + 1, site_text(site), cur.to_text()));
                    }
                    s.push_str(&format!("final: {}\n", d.final_web.to_text()));
                    s
                }
            })
        }
        WebsCommand::HomCount { bottom, top } => {
            let n = parse_seq(&bottom)?;
            let m = parse_seq(&top)?;
            let c = hom_count(&n, &m)?;
            Ok(match format {
                Format::Json => emit_json(&json!({ "bottom": n.0, "top": m.0, "count": c })),
                _ => format!("{c}\n"),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e.render());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("scox: {e}");
            match e {
                ScoxError::Resource(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
