use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use super::report::{category_dot, diagram_dot, to_value, Format, Report};
use super::suite::run_suite;
use super::workspace::{Binding, Workspace};
use crate::derimorph::validate_morphism;
use crate::error::{Error, Result};
use crate::exactness::{check_exact, check_exact_both, ExactnessReport};
use crate::fincat::comma_category;
use crate::linalg::Matrix;
use crate::pointedops::{
    cofiber, exceptional_adjunction_check, exceptional_right_adjoint_i1, extend_by_zero,
    k0_additivity_check,
};
use crate::derimorph::is_cocontinuous;
use crate::repder::{kan, mate_component, Corpus, Diagram, KanPlan, KanSide, MateSide, Policy};

#[derive(Clone, Debug, Parser)]
#[command(name = "derivator", about = "Kan extensions, mates and exactness over finite categories")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 25)]
    pub samples: usize,
    #[arg(long = "max-dim", global = true, default_value_t = 4)]
    pub max_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Workspace file with the named bindings.
    #[arg(long, short = 'w', global = true)]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn policy(&self) -> Policy {
        Policy {
            seed: self.seed,
            samples: self.samples,
            max_dim: self.max_dim,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SidesArg {
    Left,
    Right,
    Both,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Load the workspace; with a morphism name, also check its coherence.
    Validate { name: Option<String> },
    /// The comma category of two functors with a common target.
    Comma { u: String, v: String },
    /// Pointwise Kan extension of a diagram along a functor.
    Kan {
        u: String,
        x: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Components of the left or right mate of a square at a diagram.
    Mate {
        square: String,
        x: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Sampled exactness verdict for a square.
    ExactCheck {
        square: String,
        #[arg(long, value_enum, default_value_t = SidesArg::Both)]
        side: SidesArg,
    },
    /// Extension by zero along a sieve or cosieve.
    ExtZero { u: String, x: String },
    /// Cofiber of a diagram on [1].
    Cofiber { f: String },
    /// `i_[1]^!` of a diagram on the corner; with `--against X`, the hom
    /// bijection with `i_[1],* X`.
    ExcAdjoint {
        y: String,
        #[arg(long)]
        against: Option<String>,
    },
    /// Additivity of dimension on a cocartesian square with zero corner.
    K0Check { x: String },
    /// Cocontinuity of a derivator morphism along a functor.
    Cocontinuous { phi: String, u: String },
    /// Run the acceptance suite.
    Corpus,
    /// Graph description of a category or diagram.
    EmitDot { name: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Comma { .. } => "comma",
            Command::Kan { .. } => "kan",
            Command::Mate { .. } => "mate",
            Command::ExactCheck { .. } => "exact-check",
            Command::ExtZero { .. } => "ext-zero",
            Command::Cofiber { .. } => "cofiber",
            Command::ExcAdjoint { .. } => "exc-adjoint",
            Command::K0Check { .. } => "k0-check",
            Command::Cocontinuous { .. } => "cocontinuous",
            Command::Corpus => "corpus",
            Command::EmitDot { .. } => "emit-dot",
        }
    }
}

fn mat_doc(m: &Matrix) -> Vec<Vec<String>> {
    m.to_strings()
}

fn diagram_json(x: &Diagram) -> serde_json::Value {
    let k = x.shape();
    let dims: serde_json::Map<_, _> = k
        .objects()
        .map(|a| (k.object_label(a).to_string(), json!(x.dim(a))))
        .collect();
    let maps: serde_json::Map<_, _> = k
        .generators()
        .into_iter()
        .map(|f| (k.morphism_label(f).to_string(), json!(mat_doc(x.mat(f)))))
        .collect();
    json!({ "shape": k.name(), "dims": dims, "maps": maps })
}

/// The diagram, moved onto the corpus shape it equals.
fn on_shape(x: &Diagram, shape: &std::sync::Arc<crate::fincat::FinCategory>, what: &str) -> Result<Diagram> {
    if **x.shape() != **shape {
        return Err(Error::Shape(format!("{what} takes a diagram on {}", shape.name())));
    }
    x.rehome(shape)
}

fn verdicts_json(r: &ExactnessReport) -> Result<serde_json::Value> {
    to_value(r)
}

pub fn run_command(ws: &Workspace, cmd: &Command, policy: &Policy) -> Result<Report> {
    let name = cmd.name();
    match cmd {
        Command::Validate { name: target } => {
            let mut bindings = serde_json::Map::new();
            for n in ws.names() {
                bindings.insert(n.to_string(), json!(ws.get(n)?.kind()));
            }
            match target {
                Some(t) => match ws.get(t)? {
                    Binding::Morphism(m, _) => {
                        let r = validate_morphism(m, policy)?;
                        Report::new(name, policy, r.passed, json!({ "bindings": bindings, "coherence": to_value(&r)? }))
                    }
                    b => Report::new(name, policy, true, json!({ "bindings": bindings, "checked": format!("{t} ({})", b.kind()) })),
                },
                None => Report::new(name, policy, true, json!({ "bindings": bindings })),
            }
        }
        Command::Comma { u, v } => {
            let k = comma_category(ws.functor(u)?, ws.functor(v)?)?;
            let c = &k.category;
            let labels: Vec<&str> = c.objects().map(|a| c.object_label(a)).collect();
            let morphisms: Vec<[String; 3]> = c
                .morphisms()
                .filter(|f| !c.is_identity(*f))
                .map(|f| {
                    [
                        c.morphism_label(f).to_string(),
                        c.object_label(c.source(f)).to_string(),
                        c.object_label(c.target(f)).to_string(),
                    ]
                })
                .collect();
            Report::new(
                name,
                policy,
                true,
                json!({
                    "objects": labels,
                    "morphisms": morphisms,
                    "counts": [c.num_objects(), c.num_morphisms()],
                }),
            )
        }
        Command::Kan { u, x, side } => {
            let u = ws.functor(u)?;
            let x = on_shape(ws.diagram(x)?, u.source(), "kan")?;
            let side = match side {
                SideArg::Left => KanSide::Left,
                SideArg::Right => KanSide::Right,
            };
            let r = kan(&KanPlan::get(u, side)?, &x)?;
            let k = u.target();
            let mut legs = serde_json::Map::new();
            for b in k.objects() {
                let comma = r.comma(b);
                let mut per = serde_json::Map::new();
                for (i, _) in comma.objects.iter().enumerate() {
                    let o = crate::fincat::ObjId(i);
                    per.insert(comma.category.object_label(o).to_string(), json!(mat_doc(&r.leg(b, o))));
                }
                legs.insert(k.object_label(b).to_string(), serde_json::Value::Object(per));
            }
            let adj = r.adjunction_map()?;
            Report::new(
                name,
                policy,
                true,
                json!({
                    "side": side,
                    "output": diagram_json(&r.output),
                    "legs": legs,
                    "adjunction_map_invertible": adj.is_iso(),
                }),
            )
        }
        Command::Mate { square, x, side } => {
            let s = ws.square(square)?;
            let side = match side {
                SideArg::Left => MateSide::Left,
                SideArg::Right => MateSide::Right,
            };
            let shape = crate::repder::mate_input_shape(s, side).source().clone();
            let x = on_shape(ws.diagram(x)?, &shape, "mate")?;
            let m = mate_component(s, side, &x)?;
            let k = m.source().shape();
            let comps: serde_json::Map<_, _> = k
                .objects()
                .map(|a| (k.object_label(a).to_string(), json!(mat_doc(m.component(a)))))
                .collect();
            Report::new(
                name,
                policy,
                true,
                json!({ "side": side, "components": comps, "invertible": m.is_iso() }),
            )
        }
        Command::ExactCheck { square, side } => {
            let s = ws.square(square)?;
            let view = crate::repder::DerivatorView::base();
            let r = match side {
                SidesArg::Both => check_exact_both(&view, s, policy)?,
                SidesArg::Left => ExactnessReport {
                    left: Some(check_exact(&view, s, MateSide::Left, policy)?),
                    right: None,
                },
                SidesArg::Right => ExactnessReport {
                    left: None,
                    right: Some(check_exact(&view, s, MateSide::Right, policy)?),
                },
            };
            let exact = r.exact() == Some(true);
            Report::new(name, policy, exact, json!({ "exact": r.exact(), "verdicts": verdicts_json(&r)? }))
        }
        Command::ExtZero { u, x } => {
            let u = ws.functor(u)?;
            let x = on_shape(ws.diagram(x)?, u.source(), "ext-zero")?;
            let e = extend_by_zero(u, &x)?;
            let k = u.target();
            let off: Vec<&str> = e.off_image.iter().map(|a| k.object_label(*a)).collect();
            Report::new(
                name,
                policy,
                true,
                json!({
                    "kind": format!("{:?}", e.kind),
                    "output": diagram_json(&e.output),
                    "off_image": off,
                    "restriction_iso": e.restriction_iso.is_iso(),
                }),
            )
        }
        Command::Cofiber { f } => {
            let c = Corpus::get();
            let f = on_shape(ws.diagram(f)?, &c.one, "cofiber")?;
            let cof = cofiber(&f)?;
            Report::new(
                name,
                policy,
                cof.cocartesian.cocartesian,
                json!({
                    "cofiber_dim": cof.object_dim(),
                    "map": mat_doc(&cof.map),
                    "square": diagram_json(&cof.square),
                    "cocartesian": to_value(&cof.cocartesian)?,
                }),
            )
        }
        Command::ExcAdjoint { y, against } => {
            let c = Corpus::get();
            let y = on_shape(ws.diagram(y)?, &c.corner, "exc-adjoint")?;
            let ex = exceptional_right_adjoint_i1(&y)?;
            let bij = match against {
                Some(x) => {
                    let x = on_shape(ws.diagram(x)?, &c.one, "exc-adjoint --against")?;
                    Some(exceptional_adjunction_check(&x, &y)?)
                }
                None => None,
            };
            let passed = ex.ran_route_agrees && bij != Some(false);
            Report::new(
                name,
                policy,
                passed,
                json!({
                    "output": diagram_json(&ex.output),
                    "inclusion": mat_doc(&ex.inclusion),
                    "ran_route_agrees": ex.ran_route_agrees,
                    "hom_bijection": bij,
                }),
            )
        }
        Command::K0Check { x } => {
            let c = Corpus::get();
            let x = on_shape(ws.diagram(x)?, &c.square, "k0-check")?;
            let r = k0_additivity_check(&x)?;
            Report::new(name, policy, r.additive != Some(false), to_value(&r)?)
        }
        Command::Cocontinuous { phi, u } => {
            let r = is_cocontinuous(ws.morphism(phi)?, ws.functor(u)?, policy)?;
            Report::new(name, policy, r.routes_agree, to_value(&r)?)
        }
        Command::Corpus => {
            let s = run_suite(policy);
            let mut report = Report::new(
                name,
                policy,
                s.passed(),
                json!({ "criteria": to_value(&s.criteria)?, "concordance": s.concordance() }),
            )?;
            let mut text = format!(
                "command: corpus\nseed: {}\nsamples: {}\nmax_dim: {}\n",
                policy.seed, policy.samples, policy.max_dim
            );
            for c in &s.criteria {
                text.push_str(&format!(
                    "criterion {} {}: {}\n",
                    c.id,
                    c.title,
                    if c.passed { "pass" } else { "FAIL" }
                ));
            }
            for line in s.concordance() {
                text.push_str(&line);
                text.push('\n');
            }
            text.push_str(&format!("passed: {}\n", s.passed()));
            report.raw = Some(text);
            Ok(report)
        }
        Command::EmitDot { name: target } => {
            let dot = match ws.get(target)? {
                Binding::Category(c) => category_dot(c),
                Binding::Diagram(x) => diagram_dot(x),
                b => {
                    return Err(Error::Shape(format!(
                        "emit-dot takes a category or diagram, {target} is a {}",
                        b.kind()
                    )))
                }
            };
            let mut r = Report::new(name, policy, true, json!({ "dot": dot }))?;
            r.raw = Some(dot);
            Ok(r)
        }
    }
}

/// Parses arguments, loads the workspace, runs, writes the output. Returns
/// the exit status: 0 iff the report passed.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_cli(&cli) {
        Ok(passed) => i32::from(!passed),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run_cli(cli: &Cli) -> Result<bool> {
    let ws = match &cli.workspace {
        Some(p) => Workspace::parse_file(p)?,
        None => Workspace::new(),
    };
    let report = run_command(&ws, &cli.command, &cli.policy())?;
    let text = report.render(cli.format);
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(report.passed)
}
