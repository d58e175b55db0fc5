//! The `fuzzy-horn` command line.
//!
//! Exit codes: 0 on success, 1 when a semantic check fails (non-Horn input,
//! inconsistency, a failed model or homomorphism check, a repro mismatch),
//! 2 on usage, I/O and parse errors.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::TruthValue;
use crate::herbrand::{h_structure_of_model, least_h_model, HerbrandError};
use crate::morphisms::{canonical_free_map, check_homomorphism, check_uniqueness, StructureMap, Uniqueness};
use crate::repro::{run_example, Example};
use crate::saturation::{build_term_structure, saturate, SaturationConfig, SaturationError, SaturationResult};
use crate::semantics::{eval_formula, is_model, FuzzyStructure, ModelCheck, TruthOutcome, VarEvaluation};
use crate::syntax::{classify_horn, parse_formula, Formula, Theory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "fuzzy-horn",
    version,
    about = "Horn theories over MTL-algebras: saturation, term structures, Herbrand models and homomorphisms"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Print rational truth values as decimals.
    #[arg(long, global = true)]
    pub decimal: bool,
    /// Override the algebra of a structure file (same syntax as its `algebra` line).
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Term depth bound of the generated universe.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// Number of frozen variables v1..vm added to the term universe.
    #[arg(long = "frozen-vars", global = true, default_value_t = 1)]
    pub frozen_vars: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every formula of a theory file.
    Classify { theory: PathBuf },
    /// Saturate a Horn theory and build its term structure.
    Saturate {
        theory: PathBuf,
        /// Directory receiving `term-structure.txt` and `classes.txt`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a formula in a structure.
    Eval {
        structure: PathBuf,
        formula: String,
        /// Variable assignment, e.g. `x=a,y=b`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Check whether a structure is a model of a theory.
    ModelCheck { structure: PathBuf, theory: PathBuf },
    /// Least H-model of a theory, or with `--model` the H-structure of a model.
    Herbrand {
        theory: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        /// Write the H-structure as a structure file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Check a structure map between two structures.
    HomCheck {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Canonical map from the term structure of a theory into a target model.
    FreeHom {
        theory: PathBuf,
        target: PathBuf,
        /// Values of the frozen variables, e.g. `v1=a`.
        #[arg(long, default_value = "")]
        assign: String,
        /// Write the map file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a worked example (`godel-0.8`, `lukasiewicz-0.6`, `forall-strong-conj` or `all`).
    Repro { example: String },
}

#[derive(Debug)]
enum Failure {
    /// Exit code 2.
    Usage(String),
    /// Exit code 1, after the message is printed.
    Semantic(String),
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn semantic(e: impl Display) -> Failure {
    Failure::Semantic(e.to_string())
}

type CmdResult = Result<(), Failure>;

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn machine(&self) -> bool {
        self.opts.format == OutputFormat::Machine
    }

    fn line(&mut self, s: impl Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn config(&self) -> SaturationConfig {
        SaturationConfig::default()
            .with_depth(self.opts.depth)
            .with_frozen(self.opts.frozen_vars)
    }

    fn value(&self, m: &FuzzyStructure, v: &TruthValue) -> String {
        m.algebra.format_value(v, self.opts.decimal)
    }
}

/// Parses `args` and runs the command, writing output to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    let mut ctx = Ctx { opts: &cli.global, out };
    let result = match &cli.command {
        Command::Classify { theory } => classify(&mut ctx, theory),
        Command::Saturate { theory, out } => cmd_saturate(&mut ctx, theory, out.as_deref()),
        Command::Eval {
            structure,
            formula,
            assign,
        } => eval(&mut ctx, structure, formula, assign),
        Command::ModelCheck { structure, theory } => model_check(&mut ctx, structure, theory),
        Command::Herbrand { theory, model, export } => herbrand(&mut ctx, theory, model.as_deref(), export.as_deref()),
        Command::HomCheck { source, target, map } => hom_check(&mut ctx, source, target, map),
        Command::FreeHom {
            theory,
            target,
            assign,
            out,
        } => free_hom(&mut ctx, theory, target, assign, out.as_deref()),
        Command::Repro { example } => repro(&mut ctx, example),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Semantic(msg)) => {
            if !msg.is_empty() {
                let _ = writeln!(err, "{msg}");
            }
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_theory(path: &Path) -> Result<Theory, Failure> {
    Theory::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_structure(ctx: &Ctx, path: &Path) -> Result<FuzzyStructure, Failure> {
    let mut text = read(path)?;
    if let Some(alg) = &ctx.opts.algebra {
        let body: Vec<&str> = text
            .lines()
            .filter(|l| !l.trim_start().starts_with("algebra"))
            .collect();
        text = format!("algebra {alg}\n{}\n", body.join("\n"));
    }
    FuzzyStructure::parse(&text, path.parent()).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_assignment(m: &FuzzyStructure, spec: &str) -> Result<VarEvaluation, Failure> {
    let mut v = VarEvaluation::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (var, elem) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("bad assignment `{part}`, expected var=element")))?;
        let d = m
            .element(elem.trim())
            .ok_or_else(|| usage(format!("unknown element `{}`", elem.trim())))?;
        v.insert(var.trim(), d);
    }
    Ok(v)
}

fn classify(ctx: &mut Ctx, path: &Path) -> CmdResult {
    let theory = load_theory(path)?;
    let mut all = true;
    for (i, ax) in theory.axioms.iter().enumerate() {
        let class = classify_horn(&ax.formula);
        let tags: Vec<&str> = class.tags().iter().map(|t| t.name()).collect();
        let clause = class.is_clause();
        all &= clause;
        if ctx.machine() {
            ctx.line(format!(
                "formula={} line={} tags={} clause={} rank={} normalized-rank={}",
                i + 1,
                ax.line,
                tags.join(","),
                clause,
                ax.surface.rank(),
                ax.formula.rank()
            ));
        } else {
            ctx.line(format!(
                "{:>3}  {:<28} {}  (rank {})",
                ax.line,
                format!("{}{}", tags.join(" "), if clause { " [clause]" } else { "" }),
                ax.source,
                ax.surface.rank()
            ));
        }
    }
    if all {
        Ok(())
    } else {
        Err(semantic(""))
    }
}

fn summary(ctx: &mut Ctx, res: &SaturationResult) {
    let classes = res.classes();
    let singleton = classes.iter().all(|c| c.members.len() == 1);
    if ctx.machine() {
        ctx.line(format!("atoms={}", res.atom_count()));
        ctx.line(format!("classes={}", classes.len()));
        ctx.line(format!("singleton-classes={singleton}"));
        ctx.line(format!("universe={}", res.universe.len()));
        ctx.line(format!("rounds={}", res.rounds));
        ctx.line(format!("complete={}", res.complete));
        ctx.line(format!("consistent={}", res.is_consistent()));
        for a in res.atoms() {
            ctx.line(format!("atom={a}"));
        }
        for c in &classes {
            let ms: Vec<String> = c.members.iter().map(ToString::to_string).collect();
            ctx.line(format!("class={}", ms.join(",")));
        }
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" };
        ctx.line(format!("atoms: {}", res.atom_count()));
        ctx.line(format!(
            "classes: {}{}",
            classes.len(),
            if singleton { " (all singleton)" } else { "" }
        ));
        ctx.line(format!(
            "universe: {} terms, depth {}",
            res.universe.len(),
            res.universe.depth()
        ));
        ctx.line(format!("rounds: {}", res.rounds));
        ctx.line(format!("complete: {}", yn(res.complete)));
        ctx.line(format!("consistent: {}", yn(res.is_consistent())));
        ctx.line("derived atoms:");
        for a in res.atoms() {
            ctx.line(format!("  {a}"));
        }
        let merged: Vec<_> = classes.iter().filter(|c| c.members.len() > 1).collect();
        if !merged.is_empty() {
            ctx.line("merged classes:");
            for c in merged {
                let ms: Vec<String> = c.members.iter().map(ToString::to_string).collect();
                ctx.line(format!("  {{{}}}", ms.join(", ")));
            }
        }
    }
}

fn run_saturation(ctx: &Ctx, theory: &Theory) -> Result<SaturationResult, Failure> {
    saturate(&theory.formulas(), &theory.signature, &ctx.config()).map_err(|e| match e {
        SaturationError::FrozenClash(_) => usage(e),
        other => semantic(other),
    })
}

fn cmd_saturate(ctx: &mut Ctx, path: &Path, out: Option<&Path>) -> CmdResult {
    let theory = load_theory(path)?;
    let res = run_saturation(ctx, &theory)?;
    summary(ctx, &res);
    if !res.is_consistent() {
        return Err(semantic("inconsistent: 0\u{304} derived"));
    }
    if let Some(dir) = out {
        let m = build_term_structure(&res).map_err(semantic)?;
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        write_file(&dir.join("term-structure.txt"), &m.to_text().map_err(usage)?)?;
        write_file(&dir.join("classes.txt"), &res.class_listing())?;
    }
    Ok(())
}

fn outcome_text(ctx: &Ctx, m: &FuzzyStructure, o: &TruthOutcome) -> String {
    match o {
        TruthOutcome::Value(v) => ctx.value(m, v),
        other => other.to_string(),
    }
}

fn eval(ctx: &mut Ctx, path: &Path, formula: &str, assign: &str) -> CmdResult {
    let m = load_structure(ctx, path)?;
    let phi = parse_formula(formula, &m.signature).map_err(usage)?;
    let v = parse_assignment(&m, assign)?;
    if let Some(x) = phi.free_vars().into_iter().find(|x| v.get(x).is_none()) {
        return Err(usage(format!(
            "free variable `{x}` has no value; pass --assign {x}=<element>"
        )));
    }
    let outcome = eval_formula(&m, &v, &phi).map_err(semantic)?;
    let text = outcome_text(ctx, &m, &outcome);
    if ctx.machine() {
        ctx.line(format!("value={text}"));
    } else {
        ctx.line(text);
    }
    match outcome {
        TruthOutcome::Value(_) => Ok(()),
        _ => Err(semantic("")),
    }
}

fn report_model_check(ctx: &mut Ctx, m: &FuzzyStructure, formulas: &[Formula], label: &str) -> Result<bool, Failure> {
    let check = is_model(m, formulas).map_err(semantic)?;
    let (key, detail) = match &check {
        ModelCheck::Yes => ("yes", String::new()),
        ModelCheck::No {
            formula,
            assignment,
            outcome,
        } => (
            "no",
            format!(
                "formula {} ({}) has value {} under [{}]",
                formula + 1,
                formulas[*formula],
                outcome_text(ctx, m, outcome),
                assignment.describe(m)
            ),
        ),
        ModelCheck::Unknown {
            formula,
            assignment,
            depth,
        } => (
            "unknown",
            format!(
                "formula {} undecided under [{}] at depth {depth}",
                formula + 1,
                assignment.describe(m)
            ),
        ),
    };
    if ctx.machine() {
        ctx.line(format!("{label}={key}"));
        if !detail.is_empty() {
            ctx.line(format!("{label}-detail={detail}"));
        }
    } else if detail.is_empty() {
        ctx.line(format!("{label}: {key}"));
    } else {
        ctx.line(format!("{label}: {key}: {detail}"));
    }
    Ok(check.is_yes())
}

fn model_check(ctx: &mut Ctx, structure: &Path, theory: &Path) -> CmdResult {
    let m = load_structure(ctx, structure)?;
    let formulas = load_theory(theory)?.formulas();
    if report_model_check(ctx, &m, &formulas, "model")? {
        Ok(())
    } else {
        Err(semantic(""))
    }
}

fn herbrand(ctx: &mut Ctx, path: &Path, model: Option<&Path>, export: Option<&Path>) -> CmdResult {
    let theory = load_theory(path)?;
    let (h, complete) = match model {
        None => least_h_model(&theory.formulas(), &theory.signature, &ctx.config()).map_err(|e| match e {
            HerbrandError::Parse(_) => usage(e),
            other => semantic(other),
        })?,
        Some(mpath) => {
            let m = load_structure(ctx, mpath)?;
            let h = h_structure_of_model(&m, ctx.opts.depth, true).map_err(semantic)?;
            let complete = h.universe.complete;
            (h, complete)
        }
    };
    if ctx.machine() {
        for a in &h.atoms {
            ctx.line(format!("atom={a}"));
        }
        ctx.line(format!("size={}", h.atoms.len()));
        ctx.line(format!("complete={complete}"));
    } else {
        ctx.line(format!(
            "H ({} atoms{}):",
            h.atoms.len(),
            if complete { "" } else { ", depth-bounded" }
        ));
        ctx.out.write_all(h.to_text().as_bytes()).map_err(usage)?;
    }
    let n = h.to_structure().map_err(semantic)?;
    let mut ok = true;
    if let Some(mpath) = model {
        let m = load_structure(ctx, mpath)?;
        report_model_check(ctx, &m, &theory.formulas(), "model-of-theory")?;
        ok = report_model_check(ctx, &n, &theory.formulas(), "h-structure-model")?;
    }
    if let Some(p) = export {
        write_file(p, &n.to_text().map_err(usage)?)?;
    }
    if ok {
        Ok(())
    } else {
        Err(semantic(""))
    }
}

fn hom_check(ctx: &mut Ctx, source: &Path, target: &Path, map: &Path) -> CmdResult {
    let src = load_structure(ctx, source)?;
    let dst = load_structure(ctx, target)?;
    let map = StructureMap::parse(&read(map)?, &src, &dst).map_err(usage)?;
    let report = check_homomorphism(&src, &dst, &map).map_err(semantic)?;
    if ctx.machine() {
        let _ = ctx.out.write_all(report.to_machine().as_bytes());
    } else {
        let _ = write!(ctx.out, "{report}");
    }
    if report.is_homomorphism() {
        Ok(())
    } else {
        Err(semantic(""))
    }
}

fn free_hom(ctx: &mut Ctx, theory: &Path, target: &Path, assign: &str, out: Option<&Path>) -> CmdResult {
    let theory = load_theory(theory)?;
    let tgt = load_structure(ctx, target)?;
    let v = parse_assignment(&tgt, assign)?;
    let res = run_saturation(ctx, &theory)?;
    if !res.is_consistent() {
        return Err(semantic("inconsistent: 0\u{304} derived"));
    }
    let src = build_term_structure(&res).map_err(semantic)?;
    let map = canonical_free_map(&res, &tgt, &v).map_err(semantic)?;
    let report = check_homomorphism(&src, &tgt, &map).map_err(semantic)?;
    let unique = check_uniqueness(&res, &tgt, &v, &map).map_err(semantic)?;
    let text = map.to_text(&src, &tgt);
    if ctx.machine() {
        let _ = ctx.out.write_all(report.to_machine().as_bytes());
        ctx.line(format!("complete={}", res.complete));
        ctx.line(format!("generators-agree={}", unique == Uniqueness::UniqueMatch));
        for l in text.lines() {
            ctx.line(format!("map={l}"));
        }
    } else {
        let _ = ctx.out.write_all(text.as_bytes());
        let _ = write!(ctx.out, "{report}");
        ctx.line(format!(
            "complete: {}",
            if res.complete { "yes" } else { "no (depth-bounded)" }
        ));
    }
    if let Some(p) = out {
        write_file(p, &text)?;
    }
    if report.is_homomorphism() {
        Ok(())
    } else {
        Err(semantic(""))
    }
}

fn repro(ctx: &mut Ctx, id: &str) -> CmdResult {
    let examples = if id == "all" {
        Example::ALL.to_vec()
    } else {
        vec![id.parse::<Example>().map_err(usage)?]
    };
    let mut ok = true;
    for e in examples {
        let report = run_example(e).map_err(semantic)?;
        ok &= report.all_match();
        if ctx.machine() {
            let _ = ctx.out.write_all(report.to_machine().as_bytes());
        } else {
            ctx.line(&report);
        }
    }
    if ok {
        Ok(())
    } else {
        Err(semantic("mismatch against expected values"))
    }
}
