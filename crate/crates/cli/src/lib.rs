//! Command-line front end: the graph file format, command dispatch, and
//! reporting. [`run`] does everything except touching the process, so tests call
//! it directly.

pub mod file;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand};
use metrized::bounds::{arithmetic_bounds, function_field_bounds, ArithmeticFiberDatum};
use metrized::fiber::local_term_of;
use metrized::rational::{int, parse};
use metrized::wedge::{has_negative_mass, wedge_constant, wedge_green, wedge_measure, WedgePoint, WedgeSpec};
use metrized::{
    admissible_measure, green_eval, green_system, verify_admissibility, EdgeId, Error, Measure, MetrizedGraph,
    PointLocation, Rational, VertexDivisor,
};

pub use file::{DivisorSource, FileError, FileErrorKind, GraphFile};
pub use report::Format;
use report::{exact, real, Report};

/// Exit code for verification failures.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for bad input of any kind.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "metrized", version, about = "Exact potential theory on metrized graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissible measure of the file's divisor and its vertex image q(μ).
    Measure {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Green function values at vertices, or at two given points.
    Green {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Two points, each `edge:offset` or a vertex id.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        at: Option<Vec<String>>,
    },
    /// The admissible constant c(G, D).
    Constant {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Checks the six defining properties exactly; exits 1 if any fails.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// g(K, K) - 2(2g - 2)c for a divisor K of degree 2g - 2.
    LocalTerm {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Function-field lower bounds from the genus and the node count.
    Bounds {
        #[arg(long)]
        genus: u32,
        /// Total number of nodes in singular fibers, `p` or `p/q`.
        #[arg(long)]
        delta: String,
    },
    /// Lower bounds for arithmetic surfaces.
    ArithBounds {
        #[arg(long)]
        genus: u32,
        /// Critical places with geometrically irreducible fibers, as `nodes:residue_field_size`.
        #[arg(long = "fiber", value_name = "D:N", num_args = 1.., action = ArgAction::Append)]
        fibers: Vec<String>,
        /// Residue field sizes of places with reducible geometric fibers.
        #[arg(long, value_name = "N", num_args = 1.., action = ArgAction::Append)]
        reducible: Vec<u64>,
    },
    /// Closed forms for a bouquet of circles with K = (2g - 2)·O.
    Wedge {
        /// Circle lengths, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<String>,
        #[arg(long)]
        genus: u32,
        /// Two points, each `C<i>:offset` or `O`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        at: Option<Vec<String>>,
    },
}

/// Everything the process would emit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Result of one command on one input.
struct Done {
    body: String,
    warnings: Vec<String>,
    failed: bool,
}

impl Done {
    fn ok(report: Report) -> Self {
        Done {
            body: report.into_string(),
            warnings: Vec::new(),
            failed: false,
        }
    }

    fn warn_if(mut self, condition: bool, warning: &str) -> Self {
        if condition {
            self.warnings.push(warning.to_string());
        }
        self
    }
}

const NEGATIVE_MASS: &str = "admissible measure has negative mass somewhere (allowed when d_v < v(v) - 2)";

fn input(message: impl std::fmt::Display) -> String {
    message.to_string()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: EXIT_INPUT,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    let format = cli.format;
    match cli.command {
        Command::Measure { files } => over_files(&files, format, measure),
        Command::Green { files, at } => over_files(&files, format, |f, fmt| green(f, fmt, at.as_deref())),
        Command::Constant { files } => over_files(&files, format, constant),
        Command::Verify { files } => over_files(&files, format, verify),
        Command::LocalTerm { files } => over_files(&files, format, local_term),
        Command::Bounds { genus, delta } => single(bounds(genus, &delta, format)),
        Command::ArithBounds {
            genus,
            fibers,
            reducible,
        } => single(arith_bounds(genus, &fibers, &reducible, format)),
        Command::Wedge { lengths, genus, at } => single(wedge(&lengths, genus, at.as_deref(), format)),
    }
}

fn single(result: Result<Done, String>) -> Outcome {
    let mut outcome = Outcome::default();
    absorb(&mut outcome, None, result);
    outcome
}

fn absorb(outcome: &mut Outcome, label: Option<&Path>, result: Result<Done, String>) {
    let prefix = label.map(|p| format!("{}: ", p.display())).unwrap_or_default();
    match result {
        Ok(done) => {
            outcome.stdout.push_str(&done.body);
            for w in done.warnings {
                outcome.stderr.push_str(&format!("warning: {prefix}{w}\n"));
            }
            if done.failed {
                outcome.code = outcome.code.max(EXIT_FAILED);
            }
        }
        Err(message) => {
            outcome.stderr.push_str(&format!("error: {prefix}{message}\n"));
            outcome.code = EXIT_INPUT;
        }
    }
}

/// Runs `command` on every file, concurrently, and reports in argument order.
fn over_files<F>(files: &[PathBuf], format: Format, command: F) -> Outcome
where
    F: Fn(&GraphFile, Format) -> Result<Done, String> + Sync,
{
    let results: Vec<Result<Done, String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                let command = &command;
                scope.spawn(move || {
                    let text = std::fs::read_to_string(path).map_err(input)?;
                    let file = GraphFile::parse(&text).map_err(input)?;
                    command(&file, format)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("internal error".to_string())))
            .collect()
    });
    let mut outcome = Outcome::default();
    let several = files.len() > 1;
    for (path, result) in files.iter().zip(results) {
        if several && result.is_ok() {
            outcome.stdout.push_str(&match format {
                Format::Text => format!("== {} ==\n", path.display()),
                Format::Tsv => format!("# {}\n", path.display()),
            });
        }
        absorb(&mut outcome, Some(path), result);
    }
    outcome
}

fn graph_and_divisor(file: &GraphFile) -> Result<(MetrizedGraph, VertexDivisor, DivisorSource), String> {
    let graph = file.graph().map_err(input)?;
    let (divisor, source) = file.divisor(&graph).map_err(input)?;
    Ok((graph, divisor, source))
}

fn describe_divisor(report: &mut Report, graph: &MetrizedGraph, divisor: &VertexDivisor, source: DivisorSource) {
    let terms: Vec<String> = graph
        .vertex_ids()
        .filter(|&v| *divisor.coefficient(v) != int(0))
        .map(|v| format!("{}·{}", exact(divisor.coefficient(v)), graph.vertex_name(v)))
        .collect();
    let origin = match source {
        DivisorSource::Explicit => "given",
        DivisorSource::Canonical => "canonical divisor of the fiber",
        DivisorSource::Zero => "none given",
    };
    let shown = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    report.text(format!("divisor: {shown} (degree {}, {origin})", exact(&divisor.degree())));
}

fn measure_rows(report: &mut Report, graph: &MetrizedGraph, measure: &Measure) {
    for v in graph.vertex_ids() {
        let mass = exact(measure.vertex_mass(v));
        report.row(format!("  {}  mass {mass}", graph.vertex_name(v)), &["mass", graph.vertex_name(v), &mass]);
    }
    for (k, edge) in graph.edges().iter().enumerate() {
        let density = exact(measure.edge_density(EdgeId(k)));
        report.row(format!("  {}  density {density}", edge.id), &["density", &edge.id, &density]);
    }
}

fn measure(file: &GraphFile, format: Format) -> Result<Done, String> {
    let (graph, divisor, source) = graph_and_divisor(file)?;
    let mu = admissible_measure(&graph, &divisor).map_err(input)?;
    let mut report = Report::new(format, &["kind", "id", "value"]);
    describe_divisor(&mut report, &graph, &divisor, source);
    report.text("measure:");
    measure_rows(&mut report, &graph, &mu);
    report.text("q(mu):");
    let q = metrized::calculus::q_map(&graph, &mu);
    for v in graph.vertex_ids() {
        let value = exact(&q[v]);
        report.row(format!("  {}  {value}", graph.vertex_name(v)), &["q", graph.vertex_name(v), &value]);
    }
    let total = exact(&mu.total_mass(&graph));
    report.row(format!("total mass = {total}"), &["total_mass", "", &total]);
    Ok(Done::ok(report).warn_if(!mu.is_nonnegative(), NEGATIVE_MASS))
}

fn parse_point(graph: &MetrizedGraph, text: &str) -> Result<PointLocation, String> {
    if let Some((edge, offset)) = text.rsplit_once(':') {
        let e = graph
            .edge_by_name(edge)
            .ok_or_else(|| input(Error::UnknownEdge(edge.to_string())))?;
        let offset = parse(offset).ok_or_else(|| format!("`{offset}` is not a rational offset"))?;
        graph.point_on_edge(e, offset).map_err(input)
    } else {
        graph
            .vertex_by_name(text)
            .map(PointLocation::Vertex)
            .ok_or_else(|| input(Error::UnknownVertex(text.to_string())))
    }
}

fn green(file: &GraphFile, format: Format, at: Option<&[String]>) -> Result<Done, String> {
    let (graph, divisor, source) = graph_and_divisor(file)?;
    let mut report = Report::new(format, &["quantity", "x", "y", "value"]);
    describe_divisor(&mut report, &graph, &divisor, source);
    if let Some([x, y]) = at {
        let (px, py) = (parse_point(&graph, x)?, parse_point(&graph, y)?);
        let value = exact(&green_eval(&graph, &divisor, &px, &py).map_err(input)?);
        report.row(format!("g({x}, {y}) = {value}"), &["g", x, y, &value]);
        let negative = !admissible_measure(&graph, &divisor).map_err(input)?.is_nonnegative();
        return Ok(Done::ok(report).warn_if(negative, NEGATIVE_MASS));
    }
    let system = green_system(&graph, &divisor).map_err(input)?;
    for v in graph.vertex_ids() {
        for w in graph.vertex_ids().filter(|w| w.0 >= v.0) {
            let (a, b) = (graph.vertex_name(v), graph.vertex_name(w));
            let value = exact(system.value(v, w));
            report.row(format!("g({a}, {b}) = {value}"), &["g", a, b, &value]);
        }
    }
    let c = exact(&system.constant);
    report.row(format!("c = {c}"), &["c", "", "", &c]);
    Ok(Done::ok(report).warn_if(system.has_negative_mass(), NEGATIVE_MASS))
}

fn constant(file: &GraphFile, format: Format) -> Result<Done, String> {
    let (graph, divisor, _) = graph_and_divisor(file)?;
    let system = green_system(&graph, &divisor).map_err(input)?;
    let mut report = Report::new(format, &["quantity", "value"]);
    let c = exact(&system.constant);
    report.row(format!("c = {c}"), &["c", &c]);
    Ok(Done::ok(report).warn_if(system.has_negative_mass(), NEGATIVE_MASS))
}

fn verify(file: &GraphFile, format: Format) -> Result<Done, String> {
    let (graph, divisor, source) = graph_and_divisor(file)?;
    let mut report = Report::new(format, &["property", "name", "status", "detail"]);
    describe_divisor(&mut report, &graph, &divisor, source);
    let system = match green_system(&graph, &divisor) {
        Ok(system) => system,
        Err(e @ Error::NotAdmissible { .. }) => {
            report.row(format!("property 6 constancy: FAIL ({e})"), &["6", "constancy", "fail", &e.to_string()]);
            report.text("0/6 properties hold");
            return Ok(Done {
                failed: true,
                ..Done::ok(report)
            });
        }
        Err(e) => return Err(input(e)),
    };
    let verdict = verify_admissibility(&graph, &divisor, &system);
    for check in &verdict.checks {
        let status = if check.passed { "ok" } else { "FAIL" };
        let line = if check.passed {
            format!("property {} {}: ok", check.property, check.name)
        } else {
            format!("property {} {}: FAIL ({})", check.property, check.name, check.detail)
        };
        report.row(line, &[&check.property.to_string(), check.name, &status.to_lowercase(), &check.detail]);
    }
    report.text(format!("{}/{} properties hold", verdict.passed_count(), verdict.checks.len()));
    Ok(Done {
        failed: !verdict.all_passed(),
        ..Done::ok(report).warn_if(system.has_negative_mass(), NEGATIVE_MASS)
    })
}

fn local_term(file: &GraphFile, format: Format) -> Result<Done, String> {
    let (graph, divisor, source) = graph_and_divisor(file)?;
    let fiber = file.fiber(&graph).map_err(input)?;
    let genus = fiber
        .as_ref()
        .map(|f| f.genus())
        .or(file.curve_genus)
        .ok_or("local-term needs `curve-genus` or `component` lines")?;
    let expected = int(2 * i64::from(genus) - 2);
    if divisor.degree() != expected {
        return Err(input(Error::DegreeMismatch {
            expected,
            found: divisor.degree(),
        }));
    }
    let system = green_system(&graph, &divisor).map_err(input)?;
    let term = local_term_of(&system, genus).map_err(input)?;
    let k = divisor.coefficients();
    let mut report = Report::new(format, &["quantity", "value"]);
    describe_divisor(&mut report, &graph, &divisor, source);
    let rows: [(&str, &str, String); 4] = [
        ("genus", "genus", genus.to_string()),
        ("g(K, K)", "g_KK", exact(&system.pairing(k, k))),
        ("c", "c", exact(&system.constant)),
        ("local term", "local_term", exact(&term)),
    ];
    for (label, key, value) in &rows {
        report.row(format!("{label} = {value}"), &[key, value]);
    }
    Ok(Done::ok(report).warn_if(system.has_negative_mass(), NEGATIVE_MASS))
}

fn bounds(genus: u32, delta: &str, format: Format) -> Result<Done, String> {
    let delta: Rational = parse(delta).ok_or_else(|| format!("`{delta}` is not a rational p or p/q"))?;
    let bound = function_field_bounds(genus, &delta).map_err(input)?;
    let mut report = Report::new(format, &["quantity", "value"]);
    let rows = [
        ("genus = ", "genus", genus.to_string()),
        ("delta = ", "delta", exact(&bound.delta)),
        ("omega2 >= ", "omega2_lower", exact(&bound.omega_sq_lower)),
        ("admissible omega2 >= ", "admissible_omega2_lower", exact(&bound.admissible_omega_sq_lower)),
        ("A^2 >= ", "a_squared_lower", exact(&bound.a_lower_squared)),
        ("A >= ", "a_lower", real(bound.a_lower)),
    ];
    for (label, key, value) in &rows {
        report.row(format!("{label}{value}"), &[key, value]);
    }
    report.text("assumes: every fiber of the stable model is geometrically irreducible");
    Ok(Done::ok(report))
}

fn arith_bounds(genus: u32, fibers: &[String], reducible: &[u64], format: Format) -> Result<Done, String> {
    let data = fibers
        .iter()
        .map(|text| {
            let parsed = text
                .split_once(':')
                .and_then(|(d, n)| Some((d.parse().ok()?, n.parse().ok()?)));
            parsed
                .map(|(delta, residue_cardinality)| ArithmeticFiberDatum {
                    delta,
                    residue_cardinality,
                })
                .ok_or_else(|| format!("`{text}` is not `nodes:residue_field_size`"))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let bound = arithmetic_bounds(genus, &data, reducible).map_err(input)?;
    let mut report = Report::new(format, &["quantity", "value"]);
    let rows = [
        (
            "irreducible-fiber bound: omega_a^2 >= ",
            "irreducible_fiber_bound",
            bound.irreducible_fiber_bound,
            " (only geometrically irreducible fibers; all critical places listed)",
        ),
        ("reducible-fiber bound: omega_a^2 >= ", "reducible_fiber_bound", bound.reducible_fiber_bound, ""),
        ("non-smooth floor: omega_a^2 >= ", "nonsmooth_floor", bound.nonsmooth_floor, " (any non-smooth surface)"),
    ];
    report.row(format!("genus = {genus}"), &["genus", &genus.to_string()]);
    for (label, key, value, note) in rows {
        let value = real(value);
        report.row(format!("{label}{value}{note}"), &[key, &value]);
    }
    Ok(Done::ok(report))
}

fn wedge_point(spec: &WedgeSpec, graph: &MetrizedGraph, text: &str) -> Result<WedgePoint, String> {
    Ok(match parse_point(graph, text)? {
        PointLocation::Vertex(_) => WedgePoint::origin(),
        PointLocation::Edge { edge, offset } => {
            debug_assert!(edge.0 < spec.circle_count());
            WedgePoint::new(edge.0, offset)
        }
    })
}

fn wedge(lengths: &[String], genus: u32, at: Option<&[String]>, format: Format) -> Result<Done, String> {
    let lengths = lengths
        .iter()
        .map(|l| parse(l.trim()).ok_or_else(|| format!("`{l}` is not a rational length")))
        .collect::<Result<Vec<_>, String>>()?;
    let spec = WedgeSpec::new(lengths, genus).map_err(input)?;
    let graph = spec.graph();
    let mut report = Report::new(format, &["kind", "id", "value"]);
    report.text(format!(
        "bouquet of {} circles, genus {genus}, total length {}, K = {}·O",
        spec.circle_count(),
        exact(&spec.total_length()),
        2 * i64::from(genus) - 2
    ));
    report.text("measure:");
    measure_rows(&mut report, &graph, &wedge_measure(&spec));
    let c = exact(&wedge_constant(&spec));
    report.row(format!("c = {c}"), &["c", "", &c]);
    if let Some([x, y]) = at {
        let (px, py) = (wedge_point(&spec, &graph, x)?, wedge_point(&spec, &graph, y)?);
        let value = exact(&wedge_green(&spec, &px, &py).map_err(input)?);
        report.row(format!("g({x}, {y}) = {value}"), &["g", &format!("{x},{y}"), &value]);
    }
    Ok(Done::ok(report).warn_if(has_negative_mass(&spec), NEGATIVE_MASS))
}
