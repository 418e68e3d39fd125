use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sheafline::algebras::{self, PathAlgebraSpec};
use sheafline::exact::intmat;
use sheafline::exact::{laurent_matrix_from_json, smith_normal_form, Field, Matrix, MatrixJson};
use sheafline::kronecker::{pencil_decompose, tilt_bundle, tilt_label, untilt, KroneckerRep};
use sheafline::lengthcat::{self, TubeLabel, ValuedQuiver};
use sheafline::p1::{self, BundleData, P1Label, TorsionData};
use sheafline::weights::{weights_equivalent, RationalPoint, WeightFunction};
use sheafline::wpl::{self, LElem, WPLLabel, WPLSpec};
use sheafline::{selftest, Error};

#[derive(Parser)]
#[command(name = "sheafline", version, about = "Exact computations with sheaves on the projective line and weighted projective lines")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient field for inline arguments and for files without a "field" key.
    #[arg(long, global = true, value_enum, default_value = "q")]
    field: FieldArg,
    /// Characteristic when --field Fp.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Same as --format json.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "Fp", alias = "fp")]
    Fp,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Input {
    /// JSON input file, `-` for stdin.
    #[arg(long = "in")]
    input: PathBuf,
}

/// A weighted projective line, from a spec file or inline weights and points.
#[derive(Args)]
struct SpecArgs {
    /// Spec JSON file: {"field":"Q","weights":[2,3,5],"points":["0","1","inf"]}.
    #[arg(long, conflicts_with_all = ["weights", "points"])]
    spec: Option<PathBuf>,
    /// Comma-separated weights.
    #[arg(long, value_delimiter = ',')]
    weights: Vec<u32>,
    /// Comma-separated rational points (`a`, `a/b` or `inf`); defaults to 0, 1, inf, 2, 3, ...
    #[arg(long, value_delimiter = ',')]
    points: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraKind {
    Kronecker,
    Squid,
    Canonical,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, value_enum)]
    algebra: Option<AlgebraKind>,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Birkhoff splitting of a vector bundle given by its gluing matrix.
    Split(Input),
    /// Smith normal form of a polynomial matrix.
    Smith(Input),
    /// Indecomposable summands of a torsion sheaf on P1.
    DecomposeTorsion(Input),
    /// dim Hom between two sheaf labels, or between line bundles O(a), O(b) with --lb.
    Hom(PairArgs),
    /// dim Ext^1 between two sheaf labels.
    Ext(PairArgs),
    /// Kronecker representation Hom(O + O(1), F) of a label or a bundle.
    Tilt {
        #[arg(long, conflicts_with = "input")]
        label: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Kronecker canonical form of a representation.
    PencilDecompose(Input),
    /// Cartan matrix of the Kronecker, squid or canonical algebra.
    Cartan(AlgebraArgs),
    /// Euler form: Gram matrix of an algebra, or the pairing of two labels on a weighted line.
    Euler {
        #[command(flatten)]
        args: AlgebraArgs,
        labels: Vec<String>,
    },
    /// Coxeter matrix -G^-1 G^T.
    Coxeter(AlgebraArgs),
    /// Grothendieck group data of a weighted projective line, with classes of the given labels.
    K0 {
        #[command(flatten)]
        spec: SpecArgs,
        labels: Vec<String>,
    },
    /// The tilting bundle of line bundles O(x), 0 <= x <= c.
    CanonicalTilting(SpecArgs),
    /// The squid tilting object.
    SquidTilting(SpecArgs),
    /// Whether the given labels form a tilting object (P1 labels without a spec).
    IsTilting {
        #[command(flatten)]
        spec: SpecArgs,
        labels: Vec<String>,
    },
    /// Gabriel's uniserial criterion on a valued quiver.
    UniserialCheck(Input),
    /// Hom, Ext, tau, AR sequence or class of tube objects written (j,l).
    Tube {
        #[arg(long)]
        rank: u32,
        #[arg(value_enum)]
        op: TubeOp,
        a: String,
        b: Option<String>,
    },
    /// Replace a vertex by an arrow v_l -> v_r.
    Expand {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: String,
    },
    /// Contract a (1,1) arrow.
    Contract {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Whether the weighted line has no weights.
    Homogeneous(SpecArgs),
    /// Specs obtained by lowering weights one unit at a time.
    ExpansionChain(SpecArgs),
    /// Decide PGL(2) equivalence of two weight functions such as "0:2,1:3".
    WeightsEquiv {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Treat both arguments as elements of L(p) (`l` or `l;a1,..,an`).
    #[arg(long)]
    lb: bool,
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TubeOp {
    Hom,
    Ext,
    Tau,
    Ar,
    Class,
}

enum Failure {
    Lib(Error),
    Input(String),
    Selftest(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

type Out = Result<Value, Failure>;

fn field(g: &Global) -> Result<Field, Failure> {
    match (g.field, g.p) {
        (FieldArg::Q, None) => Ok(Field::Rationals),
        (FieldArg::Q, Some(_)) => Err(Failure::Input("--p requires --field Fp".into())),
        (FieldArg::Fp, Some(p)) => Ok(Field::prime(p)?),
        (FieldArg::Fp, None) => Err(Failure::Input("--field Fp requires --p".into())),
    }
}

/// Reads a JSON object, filling in "field" from the command line when absent.
fn read_json(path: &PathBuf, field: Field) -> Result<String, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Input(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let mut v: Value = serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Parse(e.to_string())))?;
    if let Value::Object(m) = &mut v {
        if !m.contains_key("field") && field != Field::Rationals {
            m.insert("field".into(), serde_json::to_value(field).unwrap());
        }
    }
    Ok(v.to_string())
}

fn matrix_json<R: sheafline::exact::Ring + std::fmt::Display>(m: &Matrix<R>) -> Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).unwrap()
}

fn wpl_spec(a: &SpecArgs, field: Field) -> Result<Option<WPLSpec>, Failure> {
    if let Some(path) = &a.spec {
        return Ok(Some(WPLSpec::from_json(&read_json(path, field)?)?));
    }
    if a.weights.is_empty() && a.points.is_empty() {
        return Ok(None);
    }
    let points = if a.points.is_empty() {
        default_points(field, a.weights.len())
    } else {
        a.points.iter().map(|s| RationalPoint::parse(field, s)).collect::<sheafline::Result<Vec<_>>>()?
    };
    Ok(Some(WPLSpec::new(field, a.weights.clone(), points)?))
}

fn default_points(field: Field, n: usize) -> Vec<RationalPoint> {
    (0..n)
        .map(|k| match k {
            0 => RationalPoint::from_i64(field, 0),
            1 => RationalPoint::from_i64(field, 1),
            2 => RationalPoint::infinity(field),
            k => RationalPoint::from_i64(field, k as i64 - 1),
        })
        .collect()
}

/// A spec is required; no weights means the projective line itself.
fn wpl_spec_or_p1(a: &SpecArgs, field: Field) -> Result<WPLSpec, Failure> {
    Ok(match wpl_spec(a, field)? {
        Some(s) => s,
        None => WPLSpec::new(field, vec![], vec![])?,
    })
}

fn algebra(a: &AlgebraArgs, field: Field) -> Result<PathAlgebraSpec, Failure> {
    let spec = wpl_spec(&a.spec, field)?;
    let (weights, points) = match &spec {
        Some(s) => (s.weights().to_vec(), s.points().to_vec()),
        None => (vec![], vec![]),
    };
    Ok(match a.algebra {
        Some(AlgebraKind::Kronecker) | None if weights.is_empty() => algebras::kronecker_algebra(),
        Some(AlgebraKind::Kronecker) => return Err(Failure::Input("the Kronecker algebra takes no weights".into())),
        Some(AlgebraKind::Squid) => algebras::squid(&weights, &points)?,
        Some(AlgebraKind::Canonical) | None => algebras::canonical(&weights, &points)?,
    })
}

fn int_or_rational(m: &Matrix<sheafline::exact::Scalar>) -> Value {
    match algebras::integral(m) {
        Some(i) => json!(i),
        None => json!(m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()),
    }
}

fn det_value(g: &intmat::IntMatrix) -> Value {
    match intmat::det_i64(g) {
        Some(d) => json!(d),
        None => json!(intmat::det(g).to_string()),
    }
}

fn p1_label(field: Field, s: &str) -> Result<P1Label, Failure> {
    Ok(P1Label::parse(field, s)?)
}

fn hom_or_ext(g: &Global, a: &PairArgs, ext: bool) -> Out {
    let field = field(g)?;
    let key = if ext { "ext" } else { "hom" };
    if a.lb {
        let spec = wpl_spec_or_p1(&a.spec, field)?;
        let (x, y) = (LElem::parse(&spec, &a.a)?, LElem::parse(&spec, &a.b)?);
        let (x, y) = (WPLLabel::LB(x), WPLLabel::LB(y));
        let v = if ext { wpl::ext_label(&spec, &x, &y)? } else { wpl::hom_label(&spec, &x, &y)? };
        return Ok(json!({ key: v }));
    }
    match wpl_spec(&a.spec, field)? {
        Some(spec) => {
            let (x, y) = (WPLLabel::parse(&spec, &a.a)?, WPLLabel::parse(&spec, &a.b)?);
            let v = if ext { wpl::ext_label(&spec, &x, &y)? } else { wpl::hom_label(&spec, &x, &y)? };
            Ok(json!({ key: v }))
        }
        None => {
            let (x, y) = (p1_label(field, &a.a)?, p1_label(field, &a.b)?);
            let v = if ext { p1::ext_dim(&x, &y) } else { p1::hom_dim(&x, &y) };
            Ok(json!({ key: v }))
        }
    }
}

fn labels_json(labels: &[WPLLabel]) -> Value {
    json!(labels.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn tilting_object(g: &Global, a: &SpecArgs, squid: bool) -> Out {
    let spec = wpl_spec_or_p1(a, field(g)?)?;
    let labels = if squid { wpl::squid_basis(&spec) } else { wpl::canonical_tilting(&spec) };
    let classes = labels.iter().map(|l| wpl::class_of(&spec, l)).collect::<sheafline::Result<Vec<_>>>()?;
    Ok(json!({
        "labels": labels_json(&labels),
        "classes": classes,
        "tilting": wpl::is_tilting_wpl(&spec, &labels)?,
    }))
}

fn run(cli: &Cli) -> Out {
    let g = &cli.global;
    match &cli.command {
        Command::Split(i) => {
            let mu = laurent_matrix_from_json(&read_json(&i.input, field(g)?)?)?;
            let s = p1::birkhoff_split(&BundleData::new(mu)?);
            Ok(json!({ "type": s.ty, "U": matrix_json(&s.u), "D": matrix_json(&s.d), "V": matrix_json(&s.v) }))
        }
        Command::Smith(i) => {
            let mj: MatrixJson = serde_json::from_str(&read_json(&i.input, field(g)?)?).map_err(|e| Error::Parse(e.to_string()))?;
            let m = mj.to_poly()?;
            let s = smith_normal_form(&m);
            let inv: Vec<String> = s.invariant_factors().iter().map(ToString::to_string).collect();
            Ok(json!({ "invariant_factors": inv, "S": matrix_json(&s.s), "D": matrix_json(&s.d), "T": matrix_json(&s.t) }))
        }
        Command::DecomposeTorsion(i) => {
            let t = TorsionData::from_json(&read_json(&i.input, field(g)?)?)?;
            let parts = p1::torsion_decompose(&t)?;
            Ok(json!({
                "summands": parts.iter().map(|(p, r)| json!({"point": p.to_string(), "length": r})).collect::<Vec<_>>(),
            }))
        }
        Command::Hom(a) => hom_or_ext(g, a, false),
        Command::Ext(a) => hom_or_ext(g, a, true),
        Command::Tilt { label, input } => {
            let field = field(g)?;
            match (label, input) {
                (Some(l), None) => {
                    let (rep, shift) = tilt_label(&p1_label(field, l)?, field);
                    Ok(json!({ "rep": rep.to_json(), "shift": shift }))
                }
                (None, Some(path)) => {
                    let mu = laurent_matrix_from_json(&read_json(path, field)?)?;
                    Ok(json!({ "rep": tilt_bundle(&BundleData::new(mu)?)?.to_json(), "shift": 0 }))
                }
                _ => Err(Failure::Input("give exactly one of --label and --in".into())),
            }
        }
        Command::PencilDecompose(i) => {
            let rep = KroneckerRep::from_json(&read_json(&i.input, field(g)?)?)?;
            let parts = pencil_decompose(&rep)?;
            Ok(json!({
                "summands": parts.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "sheaves": parts.iter().map(|l| untilt(l).to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Cartan(a) => {
            let spec = algebra(a, field(g)?)?;
            let c = algebras::cartan(&spec)?;
            Ok(json!({ "cartan": c, "det": det_value(&c), "vertices": spec.vertices() }))
        }
        Command::Euler { args, labels } => {
            let field = field(g)?;
            if labels.is_empty() {
                let spec = algebra(args, field)?;
                let c = algebras::euler_gram(&spec)?;
                return Ok(json!({ "gram": c, "det": det_value(&c), "vertices": spec.vertices() }));
            }
            let [a, b] = &labels[..] else {
                return Err(Failure::Input("give two labels or none".into()));
            };
            let spec = wpl_spec_or_p1(&args.spec, field)?;
            let (x, y) = (WPLLabel::parse(&spec, a)?, WPLLabel::parse(&spec, b)?);
            let v = wpl::euler(&spec, &wpl::class_of(&spec, &x)?, &wpl::class_of(&spec, &y)?)?;
            Ok(json!({ "euler": v }))
        }
        Command::Coxeter(a) => {
            let spec = algebra(a, field(g)?)?;
            let phi = algebras::coxeter(&spec)?;
            Ok(json!({ "coxeter": int_or_rational(&phi), "vertices": spec.vertices() }))
        }
        Command::K0 { spec, labels } => {
            let spec = wpl_spec_or_p1(spec, field(g)?)?;
            let mut classes = Vec::new();
            for l in labels {
                let label = WPLLabel::parse(&spec, l)?;
                let c = wpl::class_of(&spec, &label)?;
                classes.push(json!({
                    "label": label.to_string(),
                    "class": c,
                    "rank": wpl::rank(&c),
                    "degree": wpl::degree(&spec, &c).to_string(),
                }));
            }
            Ok(json!({
                "rank": spec.k0_rank(),
                "basis": labels_json(&wpl::squid_basis(&spec)),
                "gram": spec.gram(),
                "coxeter": wpl::coxeter_action(&spec)?,
                "classes": classes,
            }))
        }
        Command::CanonicalTilting(a) => tilting_object(g, a, false),
        Command::SquidTilting(a) => tilting_object(g, a, true),
        Command::IsTilting { spec, labels } => {
            let field = field(g)?;
            match wpl_spec(spec, field)? {
                Some(spec) => {
                    let ls = labels.iter().map(|l| WPLLabel::parse(&spec, l)).collect::<sheafline::Result<Vec<_>>>()?;
                    Ok(json!({ "tilting": wpl::is_tilting_wpl(&spec, &ls)? }))
                }
                None => {
                    let ls = labels.iter().map(|l| p1_label(field, l)).collect::<Result<Vec<_>, _>>()?;
                    Ok(json!({ "tilting": p1::is_tilting_p1(&ls) }))
                }
            }
        }
        Command::UniserialCheck(i) => {
            let q = ValuedQuiver::from_json(&read_json(&i.input, Field::Rationals)?)?;
            Ok(json!({ "uniserial": lengthcat::check_uniserial(&q) }))
        }
        Command::Tube { rank, op, a, b } => {
            let x = TubeLabel::parse(*rank, a)?;
            let y = || -> Result<TubeLabel, Failure> {
                let b = b.as_ref().ok_or_else(|| Failure::Input("this operation takes two objects".into()))?;
                Ok(TubeLabel::parse(*rank, b)?)
            };
            Ok(match op {
                TubeOp::Hom => json!({ "hom": lengthcat::tube_hom(&x, &y()?)? }),
                TubeOp::Ext => json!({ "ext": lengthcat::tube_ext(&x, &y()?)? }),
                TubeOp::Tau => json!({ "tau": lengthcat::tube_tau(&x).to_string() }),
                TubeOp::Class => json!({ "class": lengthcat::tube_class(&x) }),
                TubeOp::Ar => {
                    let s = lengthcat::ar_sequence(&x);
                    json!({
                        "left": s.left.to_string(),
                        "middle": s.middle.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "right": s.right.to_string(),
                    })
                }
            })
        }
        Command::Expand { input, vertex } => {
            let q = ValuedQuiver::from_json(&read_json(&input.input, Field::Rationals)?)?;
            Ok(lengthcat::expand_quiver(&q, vertex)?.to_json())
        }
        Command::Contract { input, from, to } => {
            let q = ValuedQuiver::from_json(&read_json(&input.input, Field::Rationals)?)?;
            Ok(lengthcat::contract_quiver(&q, from, to)?.to_json())
        }
        Command::Homogeneous(a) => {
            let spec = wpl_spec_or_p1(a, field(g)?)?;
            Ok(json!({ "homogeneous": wpl::is_homogeneous(&spec), "k0_rank": spec.k0_rank() }))
        }
        Command::ExpansionChain(a) => {
            let spec = wpl_spec_or_p1(a, field(g)?)?;
            let chain = wpl::expansion_chain(&spec);
            Ok(json!({
                "steps": chain.len() - 1,
                "chain": chain.iter().map(WPLSpec::to_json).collect::<Vec<_>>(),
                "k0_ranks": chain.iter().map(WPLSpec::k0_rank).collect::<Vec<_>>(),
            }))
        }
        Command::WeightsEquiv { w, w2 } => {
            let field = field(g)?;
            let (a, b) = (WeightFunction::parse(field, w)?, WeightFunction::parse(field, w2)?);
            let sigma = weights_equivalent(&a, &b)?;
            Ok(json!({ "equivalent": sigma.is_some(), "sigma": sigma.map(|s| s.to_json()) }))
        }
        Command::Selftest { only } => {
            let outcomes = match only {
                Some(id) if (1..=10).contains(id) => vec![selftest::run(*id)],
                Some(id) => return Err(Failure::Input(format!("no criterion {id}; criteria are 1 to 10"))),
                None => selftest::run_all(),
            };
            if g.format == Format::Table && !g.json {
                for o in &outcomes {
                    println!("{o}");
                }
            }
            let v = json!({
                "passed": outcomes.iter().filter(|o| o.passed).count(),
                "total": outcomes.len(),
                "criteria": outcomes,
            });
            if outcomes.iter().all(|o| o.passed) {
                Ok(v)
            } else {
                Err(Failure::Selftest(v))
            }
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match (format, v) {
        (Format::Table, Value::Object(m)) => m
            .iter()
            .filter(|(k, _)| k.as_str() != "criteria")
            .map(|(k, x)| format!("{k}\t{}", x))
            .collect::<Vec<_>>()
            .join("\n"),
        _ => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.global.json { Format::Json } else { cli.global.format };
    match run(&cli) {
        Ok(v) => {
            println!("{}", render(&v, format));
            ExitCode::SUCCESS
        }
        Err(Failure::Selftest(v)) => {
            println!("{}", render(&v, format));
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::UnsupportedFactorization(_)) { 3 } else { 2 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
