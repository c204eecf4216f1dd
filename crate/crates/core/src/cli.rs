//! Command-line front end.
//!
//! Every operation reads one JSON document from stdin and writes one JSON
//! document to stdout. Multi-argument operations take an object with named
//! keys; single-argument operations also accept the bare value. The same
//! dispatcher backs the C interface.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::axioms::instances::{BoolFun, ConeMonomials, OBullet, Points, Sections, Sigma};
use crate::axioms::{check_all, Instance, LawReport};
use crate::boolfun::BooleanFunction;
use crate::cones::{cone_contains, cone_face, cone_lattice_points, cone_product_map, face_obstruction, CoweightVector, LatticeBox};
use crate::error::{Error, Result};
use crate::json::{aug_to_json, envelope};
use crate::label::{GroundSet, Label};
use crate::opens::{check_indexing, ToricOpen};
use crate::plates::{FlatSpec, Plate};
use crate::points::{format_rational, PermPoint};
use crate::preposet::{AugPreposet, Preposet};
use crate::sections::{co_comul, co_mul, global_sections, Monomial, SectionBasis};
use crate::setcomp::{hat_beta, Bijection, Composition};
use crate::vector::AffinePoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "permutokit", version, about = "Bimonoids on permutohedral space: operations and law checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Set compositions and the Tits product.
    Comp {
        #[arg(value_enum)]
        op: CompOp,
    },
    /// Preposets and the bimonoid O•.
    Preposet {
        #[arg(value_enum)]
        op: PreposetOp,
    },
    /// Coroot cones.
    Cone {
        #[arg(value_enum)]
        op: ConeOp,
        #[command(flatten)]
        window: Window,
    },
    /// Boolean functions.
    Bf {
        #[arg(value_enum)]
        op: BfOp,
    },
    /// Plates and affine flats.
    Plate {
        #[arg(value_enum)]
        op: PlateOp,
        #[command(flatten)]
        window: Window,
    },
    /// Cone monomials.
    Co {
        #[arg(value_enum)]
        op: CoOp,
    },
    /// Global sections of Boolean functions.
    Sections {
        #[arg(value_enum)]
        op: SectionsOp,
    },
    /// Points of permutohedral space.
    Point {
        #[arg(value_enum)]
        op: PointOp,
    },
    /// Opens indexed by preposets.
    Opens {
        #[arg(value_enum)]
        op: OpensOp,
        /// Ground set size for check-indexing.
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Runs the law harness on one instance.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Window {
    /// Sup-norm bound of the lattice-point window.
    #[arg(long, default_value_t = 3)]
    pub bound: u32,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub instance: Target,
    #[arg(long, default_value_t = 3)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum cases per law; laws with more cases are sampled.
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    /// Use the deliberately broken comultiplication.
    #[arg(long)]
    pub mutate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Sigma,
    OBullet,
    Bf,
    Points,
    Co,
    Cbf,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Sigma => "sigma",
            Target::OBullet => "o-bullet",
            Target::Bf => "bf",
            Target::Points => "points",
            Target::Co => "co",
            Target::Cbf => "cbf",
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Target as ValueEnum>::from_str(s, false).map_err(|_| Error::Invalid(format!("unknown instance {s:?}")))
    }
}

macro_rules! op_enum {
    ($name:ident { $($variant:ident = $s:literal),* $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
        pub enum $name {
            $(#[value(name = $s)] $variant),*
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $s),*
                }
            }
        }
    };
}

op_enum!(CompOp { Tits = "tits", Concat = "concat", Restrict = "restrict", Refines = "refines", Relabel = "relabel", Permute = "permute", HatBeta = "hat-beta", Enumerate = "enumerate" });
op_enum!(PreposetOp { Leq = "leq", Mul = "mul", Comul = "comul", Total = "total", OfTotal = "of-total", UpwardPairs = "upward-pairs", Enumerate = "enumerate" });
op_enum!(ConeOp { Points = "points", Contains = "contains", Face = "face", Coroot = "coroot", Pairing = "pairing", Product = "product" });
op_enum!(BfOp { Mul = "mul", Comul = "comul", OfPoint = "of-point", Equiv = "equiv", IsGp = "is-gp" });
op_enum!(PlateOp { Points = "points", Contains = "contains", Face = "face", Flat = "flat", FlatMul = "flat-mul", Halfspace = "halfspace" });
op_enum!(CoOp { Mul = "mul", Comul = "comul" });
op_enum!(SectionsOp { Basis = "basis", Mul = "mul", Comul = "comul", Count = "count" });
op_enum!(PointOp { Mul = "mul", Comul = "comul", Eval = "eval", Relabel = "relabel" });
op_enum!(OpensOp { OfPreposet = "of-preposet", Pullback = "pullback", Product = "product", CheckIndexing = "check-indexing" });

/// Numeric flags shared by the operations.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub bound: u32,
    pub size: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { bound: 3, size: 3 }
    }
}

/// Result of one operation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub payload: Value,
    /// A law check found a counterexample.
    pub violation: bool,
    /// Print the payload without the schema envelope.
    pub bare: bool,
}

impl Outcome {
    fn of(payload: Value) -> Self {
        Outcome { payload, violation: false, bare: false }
    }

    /// The document written to stdout in JSON mode.
    pub fn document(&self) -> Value {
        if self.bare {
            self.payload.clone()
        } else {
            envelope(self.payload.clone())
        }
    }
}

/// Named argument, or the bare input when `single` and the key is absent.
fn arg<T: DeserializeOwned>(input: &Value, key: &str, single: bool) -> Result<T> {
    let v = match input.get(key) {
        Some(v) => v.clone(),
        None if single => input.clone(),
        None => return Err(Error::Invalid(format!("missing input key {key:?}"))),
    };
    serde_json::from_value(v).map_err(|e| Error::Invalid(format!("{key}: {e}")))
}

fn named<T: DeserializeOwned>(input: &Value, key: &str) -> Result<T> {
    arg(input, key, false)
}

fn only<T: DeserializeOwned>(input: &Value, key: &str) -> Result<T> {
    arg(input, key, true)
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn pair_json(a: Value, b: Value) -> Value {
    json!({ "result": [a, b] })
}

/// Runs `group op` on a parsed input document.
pub fn dispatch(group: &str, op: &str, input: &Value, opts: &Options) -> Result<Outcome> {
    let window = LatticeBox::new(opts.bound);
    let result = match (group, op) {
        ("comp", "tits") => to_json(&named::<Composition>(input, "F")?.tits_product(&named(input, "G")?)?),
        ("comp", "concat") => to_json(&named::<Composition>(input, "H")?.concatenate(&named(input, "K")?)?),
        ("comp", "restrict") => to_json(&named::<Composition>(input, "F")?.restrict(&named(input, "S")?)?),
        ("comp", "refines") => json!(named::<Composition>(input, "G")?.leq(&named(input, "F")?)?),
        ("comp", "relabel") => to_json(&named::<Composition>(input, "F")?.relabel(&named(input, "sigma")?)?),
        ("comp", "permute") => to_json(&named::<Composition>(input, "F")?.permute_lumps(&named(input, "beta")?)?),
        ("comp", "hat-beta") => to_json(&hat_beta(&named(input, "beta")?, &named(input, "F")?, &named(input, "G")?)?),
        ("comp", "enumerate") => {
            let all = Composition::enumerate(&only(input, "ground")?)?;
            json!({ "count": all.len(), "compositions": all })
        }

        ("preposet", "leq") => json!(named::<AugPreposet>(input, "q")?.leq(&named(input, "p")?)?),
        ("preposet", "mul") => aug_to_json(&named::<AugPreposet>(input, "p")?.mul(&named(input, "q")?)?),
        ("preposet", "comul") => {
            let (a, b) = named::<AugPreposet>(input, "p")?.comul(&named(input, "S")?, &named(input, "T")?)?;
            pair_json(aug_to_json(&a), aug_to_json(&b))
        }
        ("preposet", "total") => to_json(&Preposet::total_of(&only(input, "F")?)?),
        ("preposet", "of-total") => to_json(&only::<Preposet>(input, "p")?.to_composition()?),
        ("preposet", "upward-pairs") => json!({ "pairs": only::<Preposet>(input, "p")?.upward_pairs() }),
        ("preposet", "enumerate") => {
            let all = Preposet::enumerate(&only(input, "ground")?)?;
            json!({ "count": all.len(), "preposets": all })
        }

        ("cone", "points") => {
            let pts = cone_lattice_points(&only(input, "p")?, window);
            json!({ "bound": opts.bound, "count": pts.len(), "points": pts })
        }
        ("cone", "contains") => json!(cone_contains::<i64>(&named(input, "p")?, &named(input, "h")?)?),
        ("cone", "face") => {
            let p: Preposet = named(input, "p")?;
            let (s, t): (GroundSet, GroundSet) = (named(input, "S")?, named(input, "T")?);
            p.ground().check_decomposition(&s, &t)?;
            json!({
                "face": aug_to_json(&cone_face(&p, &s, &t)?),
                "obstruction": face_obstruction(&p, &s, &t)?,
            })
        }
        ("cone", "coroot") => {
            let (i1, i2): (Label, Label) = (named(input, "i1")?, named(input, "i2")?);
            to_json(&CoweightVector::<i64>::coroot(&i1, &i2, &named(input, "ground")?)?)
        }
        ("cone", "pairing") => json!(named::<CoweightVector>(input, "h")?.pairing(&named(input, "S")?)?),
        ("cone", "product") => to_json(&cone_product_map::<i64>(&named(input, "h1")?, &named(input, "h2")?)?),

        ("bf", "mul") => to_json(&named::<BooleanFunction>(input, "z1")?.mul(&named(input, "z2")?)?),
        ("bf", "comul") => {
            let (a, b) = named::<BooleanFunction>(input, "z")?.comul(&named(input, "S")?, &named(input, "T")?)?;
            pair_json(to_json(&a), to_json(&b))
        }
        ("bf", "of-point") => to_json(&BooleanFunction::of_point(&only(input, "h")?)?),
        ("bf", "equiv") => {
            let h = named::<BooleanFunction>(input, "z1")?.equivalent(&named(input, "z2")?)?;
            json!({ "equivalent": h.is_some(), "h": h })
        }
        ("bf", "is-gp") => json!(only::<BooleanFunction>(input, "z")?.is_generalized_permutohedron()),

        ("plate", "points") => {
            let p = plate(input)?;
            let pts = p.lattice_points(window);
            json!({ "bound": opts.bound, "center": p.default_center(), "count": pts.len(), "points": pts })
        }
        ("plate", "contains") => json!(plate(input)?.contains::<i64>(&named(input, "h")?)?),
        ("plate", "face") => {
            let p = plate(input)?;
            let f: Composition = named(input, "F")?;
            let mut out = json!({ "nonempty": f.leq(p.composition())? });
            if let Some(h) = input.get("h") {
                let h: AffinePoint = serde_json::from_value(h.clone()).map_err(|e| Error::Invalid(format!("h: {e}")))?;
                out["contains"] = json!(p.f_face_contains(&f, &h)?);
            }
            if let Some((seg, c)) = p.f_face_witness(&f)? {
                out["witness"] = json!({ "segment": seg, "coroot": c });
            }
            out
        }
        ("plate", "flat") => to_json(&plate(input)?.max_affine_flat()),
        ("plate", "flat-mul") => {
            let flat: FlatSpec = named(input, "flat")?;
            let parts: Vec<AffinePoint> = named(input, "parts")?;
            to_json(&flat.flat_mul(&parts)?)
        }
        ("plate", "halfspace") => {
            let z: BooleanFunction = named(input, "z")?;
            json!(crate::plates::halfspace_contains::<i64>(&named(input, "A")?, &z, &named(input, "h")?)?)
        }

        ("co", "mul") => monomial_json(&co_mul(&named(input, "m1")?, &named(input, "m2")?)?),
        ("co", "comul") => {
            let w = co_comul(&named(input, "m")?, &named(input, "S")?, &named(input, "T")?)?;
            match w {
                crate::sections::TensorWord::Zero => json!({ "result": "zero" }),
                crate::sections::TensorWord::Word(v) => json!({ "result": v.iter().map(monomial_json).collect::<Vec<_>>() }),
            }
        }

        ("sections", "basis") => to_json(&global_sections(&only(input, "z")?)),
        ("sections", "count") => {
            return Ok(Outcome { payload: json!(global_sections(&only(input, "z")?).len()), violation: false, bare: true });
        }
        ("sections", "mul") => {
            let (z1, z2): (BooleanFunction, BooleanFunction) = (named(input, "z1")?, named(input, "z2")?);
            to_json(&global_sections(&z1).mul(&global_sections(&z2))?)
        }
        ("sections", "comul") => {
            let basis: SectionBasis = global_sections(&named(input, "z")?);
            json!({ "result": basis.comul(&named(input, "h")?, &named(input, "S")?, &named(input, "T")?)? })
        }

        ("point", "mul") => to_json(&named::<PermPoint>(input, "x1")?.mul(&named(input, "x2")?)?),
        ("point", "comul") => {
            let (a, b) = named::<PermPoint>(input, "x")?.comul(&named(input, "S")?, &named(input, "T")?)?;
            pair_json(to_json(&a), to_json(&b))
        }
        ("point", "eval") => {
            let v = named::<PermPoint>(input, "x")?.evaluate(&named(input, "chart")?, &named(input, "h")?)?;
            json!({ "value": format_rational(&v) })
        }
        ("point", "relabel") => to_json(&named::<PermPoint>(input, "x")?.relabel(&named::<Bijection>(input, "sigma")?)?),

        ("opens", "of-preposet") => to_json(&ToricOpen::of_preposet(&only(input, "p")?)?),
        ("opens", "pullback") => {
            let u: ToricOpen = named(input, "U")?;
            match (input.get("G"), input.get("F")) {
                (Some(_), None) => to_json(&u.pullback_comul(&named(input, "G")?)?),
                (None, Some(_)) => to_json(&u.pullback_mul(&named(input, "F")?)?),
                _ => return Err(Error::Invalid("pullback takes exactly one of \"G\" (comultiplication) or \"F\" (multiplication)".into())),
            }
        }
        ("opens", "product") => to_json(&ToricOpen::product(&only::<Vec<ToricOpen>>(input, "parts")?)?),
        ("opens", "check-indexing") => {
            let report = check_indexing(&GroundSet::range(opts.size))?;
            let violation = !report.passed();
            let mut payload = to_json(&report);
            payload["passed"] = json!(!violation);
            return Ok(Outcome { payload, violation, bare: false });
        }

        _ => return Err(Error::Invalid(format!("unknown operation {group} {op}"))),
    };
    Ok(Outcome::of(result))
}

fn plate(input: &Value) -> Result<Plate> {
    Plate::new(named(input, "H")?, named(input, "z")?)
}

fn monomial_json(m: &Monomial) -> Value {
    json!({ "p": aug_to_json(&m.p), "exponent": m.exponent })
}

/// Runs every applicable law on one instance.
pub fn run_check(target: Target, size: usize, seed: u64, budget: u64, mutate: bool) -> Result<Vec<LawReport>> {
    let ground = GroundSet::range(size);
    fn go<I: Instance>(inst: I, g: &GroundSet, seed: u64, budget: u64) -> Result<Vec<LawReport>> {
        check_all(&inst, g, budget, seed)
    }
    let unmutable = |name: &str| Error::Invalid(format!("instance {name} has no mutant"));
    match target {
        Target::Sigma => go(Sigma { mutant: mutate }, &ground, seed, budget),
        Target::OBullet => go(OBullet { mutant: mutate }, &ground, seed, budget),
        Target::Bf => go(BoolFun { mutant: mutate }, &ground, seed, budget),
        Target::Points => go(Points { mutant: mutate }, &ground, seed, budget),
        Target::Co if mutate => Err(unmutable("co")),
        Target::Co => go(ConeMonomials::default(), &ground, seed, budget),
        Target::Cbf if mutate => Err(unmutable("cbf")),
        Target::Cbf => go(Sections, &ground, seed, budget),
    }
}

/// [`run_check`] wrapped into the document printed by `permutokit check`.
pub fn check_outcome(args: &CheckArgs) -> Result<(Outcome, Vec<LawReport>)> {
    let reports = run_check(args.instance, args.size, args.seed, args.budget, args.mutate)?;
    let passed = reports.iter().all(|r| r.passed);
    let payload = json!({
        "instance": args.instance.name(),
        "size": args.size,
        "seed": args.seed,
        "budget": args.budget,
        "mutant": args.mutate,
        "passed": passed,
        "reports": reports,
    });
    Ok((Outcome { payload, violation: !passed, bare: false }, reports))
}

fn report_table(reports: &[LawReport]) -> String {
    let mut out = format!("{:<26} {:<9} {:>4} {:>8} {:<10} {}\n", "law", "instance", "size", "cases", "mode", "result");
    for r in reports {
        let mode = if r.exhaustive { "exhaustive" } else { "sampled" };
        let result = if r.passed { "PASS" } else { "FAIL" };
        out += &format!("{:<26} {:<9} {:>4} {:>8} {:<10} {}\n", r.law, r.instance, r.size, r.cases, mode, result);
    }
    for r in reports.iter().filter(|r| !r.passed) {
        if let Some(c) = &r.counterexample {
            out += &format!("\ncounterexample for {}:\n{}\n", r.law, serde_json::to_string_pretty(c).unwrap());
        }
    }
    out
}

fn read_stdin() -> Result<Value> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Invalid(format!("reading stdin: {e}")))?;
    if buf.trim().is_empty() {
        return Err(Error::Invalid("expected a JSON document on stdin".into()));
    }
    serde_json::from_str(&buf).map_err(|e| Error::Invalid(format!("stdin is not valid JSON: {e}")))
}

/// Parsed command to `(group, op, options)`; `None` for `check`.
fn route(cmd: &Command) -> Option<(&'static str, &'static str, Options)> {
    let d = Options::default();
    Some(match cmd {
        Command::Comp { op } => ("comp", op.as_str(), d),
        Command::Preposet { op } => ("preposet", op.as_str(), d),
        Command::Cone { op, window } => ("cone", op.as_str(), Options { bound: window.bound, ..d }),
        Command::Bf { op } => ("bf", op.as_str(), d),
        Command::Plate { op, window } => ("plate", op.as_str(), Options { bound: window.bound, ..d }),
        Command::Co { op } => ("co", op.as_str(), d),
        Command::Sections { op } => ("sections", op.as_str(), d),
        Command::Point { op } => ("point", op.as_str(), d),
        Command::Opens { op, size } => ("opens", op.as_str(), Options { size: *size, ..d }),
        Command::Check(_) => return None,
    })
}

/// Executes a parsed command, returning the text for stdout and the exit code.
pub fn execute(cli: &Cli, stdin: impl FnOnce() -> Result<Value>) -> std::result::Result<(String, i32), Error> {
    let (outcome, table) = match &cli.command {
        Command::Check(args) => {
            let (o, reports) = check_outcome(args)?;
            (o, Some(report_table(&reports)))
        }
        cmd => {
            let (group, op, opts) = route(cmd).unwrap();
            let input = if (group, op) == ("opens", "check-indexing") { Value::Null } else { stdin()? };
            (dispatch(group, op, &input, &opts)?, None)
        }
    };
    let text = match (cli.format, table) {
        (Format::Table, Some(t)) => t,
        (Format::Table, None) => {
            let doc = outcome.document();
            if doc.is_number() {
                doc.to_string()
            } else {
                serde_json::to_string_pretty(&doc).unwrap()
            }
        }
        (Format::Json, _) => serde_json::to_string(&outcome.document()).unwrap(),
    };
    let code = if outcome.violation { EXIT_VIOLATION } else { EXIT_OK };
    Ok((text, code))
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, read_stdin) {
        Ok((text, code)) => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_match_the_command_line() {
        for t in Target::value_variants() {
            assert_eq!(t.to_possible_value().unwrap().get_name(), t.name());
            assert_eq!(t.name().parse::<Target>().unwrap(), *t);
        }
        assert!("nope".parse::<Target>().is_err());
    }
}
