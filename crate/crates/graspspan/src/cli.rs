//! The `graspspan` command line.
//!
//! Exit codes: 0 success, 1 domain outcome (infeasible fit, validation
//! violations, missing grasp set, depth outside a profile), 2 usage error,
//! 3 I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use graspspan_core::{
    canonical_object, classify, compare_hands, config_interp, documentation_completeness, fit,
    span_interp, validate_hand, AxisClasses, CanonicalTargets, ConfigRole, Error, ExtentKind,
    FitResult, GraspType, HandRecord, ObjectSpec, SizeClass, DEFAULT_RESOLUTION,
};
use serde_json::{json, Value};

use crate::document::{
    parse_hand, parse_hand_draft, parse_objects, write_document, DocumentEnvelope, ParseError,
    Payload, Warning,
};
use crate::render::{
    render_svg, ConfigSelector, Overlay, OverlayPlacement, PlotSpec, RenderError, ShowConfigs,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "graspspan",
    version,
    about = "Measure, compare and plot robot hand grasp regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a hand record and report violations and documentation warnings.
    Validate {
        hand: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify an object and search for the actuation and depth at which it fits.
    Fit {
        hand: PathBuf,
        object: PathBuf,
        #[arg(long, value_parser = parse_grasp)]
        grasp: GraspType,
        /// Number of actuation steps searched.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
        #[arg(long)]
        json: bool,
    },
    /// Report the relative size of an object along each axis.
    Classify {
        hand: PathBuf,
        object: PathBuf,
        #[arg(long, value_parser = parse_grasp)]
        grasp: GraspType,
        #[arg(long)]
        json: bool,
    },
    /// Draw grasp regions of one or more hands as an SVG.
    Plot {
        #[arg(required = true)]
        hands: Vec<PathBuf>,
        #[arg(long, value_parser = parse_grasp)]
        grasp: GraspType,
        /// Object documents to overlay at their fitted placement.
        #[arg(long = "object")]
        objects: Vec<PathBuf>,
        /// Millimeters per pixel.
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        scale: f64,
        /// Configurations to draw: max, min, intermediate or an actuation in [0, 1].
        /// Repeatable; all measured configurations by default.
        #[arg(long, value_parser = parse_selector)]
        show: Vec<ConfigSelector>,
        #[arg(long)]
        title: Option<String>,
        /// Output file; standard output when omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Fit one object in several hands and rank them.
    ///
    /// Feasible hands are ranked by how close the object's span relative size
    /// is to 0.5, which leaves the most room for error. This ordering is a
    /// convenience heuristic, not part of the measurement standard.
    Compare {
        #[arg(required = true)]
        hands: Vec<PathBuf>,
        #[arg(long, value_parser = parse_grasp)]
        grasp: GraspType,
        #[arg(long)]
        object: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION, value_parser = clap::value_parser!(u32).range(1..))]
        resolution: u32,
        #[arg(long)]
        json: bool,
    },
    /// Write an object document with a chosen relative size.
    Canonical {
        hand: PathBuf,
        #[arg(long, value_parser = parse_grasp)]
        grasp: GraspType,
        /// Relative size in (0, 1) applied to every bounded axis.
        #[arg(long, allow_negative_numbers = true)]
        target: f64,
    },
    /// Print the interpolated profile at an actuation, or one extent.
    Interp {
        hand: PathBuf,
        #[arg(long, value_parser = parse_grasp)]
        grasp: GraspType,
        #[arg(long, allow_negative_numbers = true)]
        actuation: f64,
        #[arg(long, allow_negative_numbers = true)]
        depth: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_grasp(s: &str) -> Result<GraspType, String> {
    GraspType::from_key(s).ok_or_else(|| {
        format!("unknown grasp type {s:?}; expected precision, cylindricalPower or sphericalPower")
    })
}

fn parse_selector(s: &str) -> Result<ConfigSelector, String> {
    match s {
        "max" => Ok(ConfigSelector::Role(ConfigRole::MaxFunctional)),
        "min" => Ok(ConfigSelector::Role(ConfigRole::MinFunctional)),
        "intermediate" => Ok(ConfigSelector::Role(ConfigRole::Intermediate)),
        _ => match s.parse::<f64>() {
            Ok(a) if (0.0..=1.0).contains(&a) => Ok(ConfigSelector::Actuation(a)),
            _ => Err(format!(
                "expected max, min, intermediate or an actuation in [0, 1], got {s:?}"
            )),
        },
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::domain(format!("{}: {e}", error_name(&e)))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}

/// Stable name of a core error, printed ahead of its message.
pub fn error_name(e: &Error) -> &'static str {
    match e {
        Error::Invalid(_) => "Invalid",
        Error::ActuationOutOfRange(_) => "ActuationOutOfRange",
        Error::DepthOutOfRange { .. } => "DepthOutOfRange",
        Error::WrongExtentKind => "WrongExtentKind",
        Error::MissingGraspType(_) => "MissingGraspType",
        Error::MissingObjectDimension => "MissingObjectDimension",
        Error::TargetOutOfRange { .. } => "TargetOutOfRange",
        Error::UnboundedAxis(_) => "UnboundedAxis",
        Error::InvalidResolution => "InvalidResolution",
        Error::DegenerateExtrema { .. } => "DegenerateExtrema",
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn warn(&mut self, file: &Path, warnings: &[Warning]) -> std::io::Result<()> {
        for w in warnings {
            writeln!(
                self.err,
                "warning: {}: {} {}",
                file.display(),
                w.path,
                w.message
            )?;
        }
        Ok(())
    }

    fn json(&mut self, value: &Value) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
        writeln!(self.out, "{text}")
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::io(format!("{}: {e}", path.display()))
}

fn load_hand(io: &mut Io, path: &Path) -> Result<HandRecord, Failure> {
    let parsed = parse_hand(&read(path)?).map_err(|e| parse_failure(path, e))?;
    io.warn(path, &parsed.warnings)?;
    Ok(parsed.value)
}

fn load_objects(io: &mut Io, path: &Path) -> Result<Vec<ObjectSpec>, Failure> {
    let parsed = parse_objects(&read(path)?).map_err(|e| parse_failure(path, e))?;
    io.warn(path, &parsed.warnings)?;
    Ok(parsed.value)
}

fn load_object(io: &mut Io, path: &Path) -> Result<ObjectSpec, Failure> {
    let mut objects = load_objects(io, path)?;
    if objects.len() != 1 {
        return Err(Failure::usage(format!(
            "{}: expected exactly one object, found {}",
            path.display(),
            objects.len()
        )));
    }
    Ok(objects.remove(0))
}

fn frac(v: f64) -> String {
    format!("{v:.3}")
}

fn mm(v: f64) -> String {
    format!("{v:.1}")
}

fn class_json(c: &SizeClass) -> Value {
    json!({ "band": c.band.as_str(), "relative": c.relative })
}

fn classes_json(classes: &AxisClasses) -> Value {
    json!({
        "span": class_json(&classes.span),
        "depth": class_json(&classes.depth),
        "width": classes.width.as_ref().map(class_json),
    })
}

/// Fit result as JSON, after any `head` fields.
fn fit_json(head: Value, r: &FitResult) -> Value {
    let mut v = head;
    let body = json!({
        "feasible": r.feasible(),
        "classes": classes_json(&r.classes),
        "placement": r.placement.map(|p| json!({
            "actuation": p.actuation,
            "centerDepthMm": p.center_depth,
        })),
    });
    if let (Value::Object(v), Value::Object(body)) = (&mut v, body) {
        v.extend(body);
    }
    v
}

fn fit_error_json(head: Value, e: &Error) -> Value {
    let mut v = head;
    v["feasible"] = false.into();
    v["error"] = error_name(e).into();
    v["message"] = e.to_string().into();
    v
}

fn write_classes(out: &mut dyn Write, classes: &AxisClasses) -> std::io::Result<()> {
    writeln!(out, "{:<6} {:<9} {:>7}", "axis", "class", "s")?;
    for axis in graspspan_core::Axis::ALL {
        match classes.get(axis) {
            Some(c) => writeln!(
                out,
                "{:<6} {:<9} {:>7}",
                axis.as_str(),
                c.band.as_str(),
                frac(c.relative)
            )?,
            None => writeln!(out, "{:<6} {:<9} {:>7}", axis.as_str(), "-", "-")?,
        }
    }
    Ok(())
}

fn cmd_validate(io: &mut Io, path: &Path, as_json: bool) -> Outcome {
    let parsed = parse_hand_draft(&read(path)?).map_err(|e| parse_failure(path, e))?;
    let issues = validate_hand(&parsed.value);
    let (warned, violations): (Vec<_>, Vec<_>) =
        issues.into_iter().partition(|i| i.code.is_warning());
    let mut warnings = warned;
    if violations.is_empty() {
        let record = HandRecord::new(parsed.value)?;
        warnings.extend(documentation_completeness(&record));
    }
    if as_json {
        let issue = |i: &graspspan_core::Issue| json!({ "code": i.code.as_str(), "path": i.path, "message": i.message });
        io.json(&json!({
            "file": path.display().to_string(),
            "valid": violations.is_empty(),
            "violations": violations.iter().map(issue).collect::<Vec<_>>(),
            "warnings": warnings.iter().map(issue).collect::<Vec<_>>(),
            "unknownFields": parsed.warnings.iter().map(|w| w.path.clone()).collect::<Vec<_>>(),
        }))?;
    } else {
        io.warn(path, &parsed.warnings)?;
        for v in &violations {
            writeln!(
                io.out,
                "violation {} at {}: {}",
                v.code.as_str(),
                v.path,
                v.message
            )?;
        }
        for w in &warnings {
            writeln!(
                io.out,
                "warning {} at {}: {}",
                w.code.as_str(),
                w.path,
                w.message
            )?;
        }
        writeln!(
            io.out,
            "{}: {} violation(s), {} warning(s)",
            path.display(),
            violations.len(),
            warnings.len()
        )?;
    }
    Ok(if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

fn cmd_fit(
    io: &mut Io,
    hand: &Path,
    object: &Path,
    grasp: GraspType,
    resolution: u32,
    as_json: bool,
) -> Outcome {
    let hand = load_hand(io, hand)?;
    let obj = load_object(io, object)?;
    let result = fit(&hand, grasp, &obj, resolution)?;
    if as_json {
        let head = json!({
            "hand": hand.name(),
            "object": obj.name(),
            "grasp": grasp.key(),
            "resolution": resolution,
        });
        io.json(&fit_json(head, &result))?;
    } else {
        writeln!(
            io.out,
            "hand: {}  object: {}  grasp: {grasp}",
            hand.name(),
            obj.name()
        )?;
        write_classes(io.out, &result.classes)?;
        match result.placement {
            Some(p) => writeln!(
                io.out,
                "feasible: yes  actuation: {}  center depth: {} mm",
                frac(p.actuation),
                mm(p.center_depth)
            )?,
            None => writeln!(io.out, "feasible: no")?,
        }
    }
    Ok(if result.feasible() {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

fn cmd_classify(
    io: &mut Io,
    hand: &Path,
    object: &Path,
    grasp: GraspType,
    as_json: bool,
) -> Outcome {
    let hand = load_hand(io, hand)?;
    let obj = load_object(io, object)?;
    let classes = classify(&hand, grasp, &obj)?;
    if as_json {
        io.json(&json!({
            "hand": hand.name(),
            "object": obj.name(),
            "grasp": grasp.key(),
            "classes": classes_json(&classes),
        }))?;
    } else {
        for (axis, c) in classes.iter() {
            writeln!(
                io.out,
                "{:<6} {} (s={})",
                axis.as_str(),
                c.band,
                frac(c.relative)
            )?;
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_plot(
    io: &mut Io,
    hands: &[PathBuf],
    grasp: GraspType,
    objects: &[PathBuf],
    scale: f64,
    show: Vec<ConfigSelector>,
    title: Option<String>,
    output: Option<&Path>,
) -> Outcome {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Failure::usage(format!(
            "--scale must be a positive number, got {scale}"
        )));
    }
    let mut records = Vec::with_capacity(hands.len());
    for h in hands {
        records.push((load_hand(io, h)?, grasp));
    }
    let mut overlays = Vec::new();
    for o in objects {
        for object in load_objects(io, o)? {
            overlays.push(Overlay {
                object,
                placement: OverlayPlacement::Auto,
            });
        }
    }
    let title = title.unwrap_or_else(|| {
        let names: Vec<&str> = records.iter().map(|(h, _)| h.name()).collect();
        format!("{} ({grasp})", names.join(", "))
    });
    let spec = PlotSpec {
        hands: records,
        overlays,
        scale,
        show: if show.is_empty() {
            ShowConfigs::All
        } else {
            ShowConfigs::Only(show)
        },
        title,
    };
    let svg = render_svg(&spec).map_err(|e| match e {
        RenderError::InvalidScale(_) | RenderError::NoHands => Failure::usage(e.to_string()),
        RenderError::Core(core) => Failure::from(core),
        RenderError::MissingGraspType { .. } => Failure::domain(format!("MissingGraspType: {e}")),
        RenderError::InfeasibleOverlay { .. } => Failure::domain(format!("InfeasibleOverlay: {e}")),
    })?;
    match output {
        Some(path) => std::fs::write(path, svg)
            .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?,
        None => io.out.write_all(svg.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_compare(
    io: &mut Io,
    hands: &[PathBuf],
    grasp: GraspType,
    object: &Path,
    resolution: u32,
    as_json: bool,
) -> Outcome {
    let mut records = Vec::with_capacity(hands.len());
    for h in hands {
        records.push(load_hand(io, h)?);
    }
    let obj = load_object(io, object)?;
    let rows = compare_hands(&records, grasp, &obj, resolution);

    // Feasible rows by distance to 0.5, then infeasible, then errors; stable.
    let tier = |r: &graspspan_core::CompareRow| match &r.outcome {
        Ok(f) if f.feasible() => (0, (f.classes.span.relative - 0.5).abs()),
        Ok(_) => (1, 0.0),
        Err(_) => (2, 0.0),
    };
    let mut ranked: Vec<_> = rows.iter().collect();
    ranked.sort_by(|a, b| {
        let (ta, da) = tier(a);
        let (tb, db) = tier(b);
        ta.cmp(&tb).then(da.total_cmp(&db))
    });
    let any_feasible = rows
        .iter()
        .any(|r| matches!(&r.outcome, Ok(f) if f.feasible()));

    if as_json {
        let list: Vec<Value> = ranked
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let head = json!({ "rank": i + 1, "hand": r.hand });
                match &r.outcome {
                    Ok(f) => fit_json(head, f),
                    Err(e) => fit_error_json(head, e),
                }
            })
            .collect();
        io.json(&json!({
            "object": obj.name(),
            "grasp": grasp.key(),
            "ranking": "feasible first, by |s_span - 0.5| ascending (heuristic)",
            "rows": list,
        }))?;
    } else {
        writeln!(io.out, "object: {}  grasp: {grasp}", obj.name())?;
        writeln!(
            io.out,
            "{:<4} {:<20} {:>7} {:<9} {:<8} {:>9} {:>10}",
            "rank", "hand", "s_span", "span", "feasible", "actuation", "depth mm"
        )?;
        for (i, r) in ranked.iter().enumerate() {
            match &r.outcome {
                Ok(f) => {
                    let (a, d) = match f.placement {
                        Some(p) => (frac(p.actuation), mm(p.center_depth)),
                        None => ("-".into(), "-".into()),
                    };
                    writeln!(
                        io.out,
                        "{:<4} {:<20} {:>7} {:<9} {:<8} {:>9} {:>10}",
                        i + 1,
                        r.hand,
                        frac(f.classes.span.relative),
                        f.classes.span.band.as_str(),
                        if f.feasible() { "yes" } else { "no" },
                        a,
                        d
                    )?;
                }
                Err(e) => writeln!(io.out, "{:<4} {:<20} {}: {e}", i + 1, r.hand, error_name(e))?,
            }
        }
        writeln!(io.out, "(ranking is a heuristic: |s_span - 0.5| ascending)")?;
    }
    Ok(if any_feasible { EXIT_OK } else { EXIT_DOMAIN })
}

fn cmd_canonical(io: &mut Io, hand: &Path, grasp: GraspType, target: f64) -> Outcome {
    if !(target > 0.0 && target < 1.0) {
        return Err(Failure::usage(format!(
            "--target must lie strictly between 0 and 1, got {target}"
        )));
    }
    let hand = load_hand(io, hand)?;
    let bounded = !hand.one_time().max_width_unbounded();
    if !bounded {
        writeln!(
            io.err,
            "note: {} has no upper width limit; oWidthMm omitted",
            hand.name()
        )?;
    }
    let obj = canonical_object(&hand, grasp, CanonicalTargets::uniform(target, bounded))?;
    io.out
        .write_all(write_document(&DocumentEnvelope::new(Payload::Object(obj))).as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_interp(
    io: &mut Io,
    hand: &Path,
    grasp: GraspType,
    actuation: f64,
    depth: Option<f64>,
    as_json: bool,
) -> Outcome {
    if !(0.0..=1.0).contains(&actuation) {
        return Err(Failure::usage(format!(
            "--actuation must lie in [0, 1], got {actuation}"
        )));
    }
    let hand = load_hand(io, hand)?;
    let set = hand.set(grasp).ok_or(Error::MissingGraspType(grasp))?;
    let profile = config_interp(set, actuation)?;
    let kind = match profile.extent_kind() {
        ExtentKind::Length => "length",
        ExtentKind::Area => "area",
    };
    match depth {
        Some(d) => {
            let extent = span_interp(&profile, d)?;
            if as_json {
                io.json(&json!({ "actuation": actuation, "extentKind": kind, "depthMm": d, "extent": extent }))?;
            } else {
                writeln!(io.out, "{}", mm(extent))?;
            }
        }
        None => {
            if as_json {
                let points: Vec<Value> = profile
                    .points()
                    .iter()
                    .map(|p| json!({ "depthMm": p.depth, "extent": p.extent }))
                    .collect();
                io.json(&json!({ "actuation": actuation, "extentKind": kind, "points": points }))?;
            } else {
                let unit = if kind == "area" {
                    "extent mm2"
                } else {
                    "extent mm"
                };
                writeln!(io.out, "{:>9} {:>11}", "depth mm", unit)?;
                for p in profile.points() {
                    writeln!(io.out, "{:>9} {:>11}", mm(p.depth), mm(p.extent))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let outcome = match cli.command {
        Command::Validate { hand, json } => cmd_validate(&mut io, &hand, json),
        Command::Fit {
            hand,
            object,
            grasp,
            resolution,
            json,
        } => cmd_fit(&mut io, &hand, &object, grasp, resolution, json),
        Command::Classify {
            hand,
            object,
            grasp,
            json,
        } => cmd_classify(&mut io, &hand, &object, grasp, json),
        Command::Plot {
            hands,
            grasp,
            objects,
            scale,
            show,
            title,
            output,
        } => cmd_plot(
            &mut io,
            &hands,
            grasp,
            &objects,
            scale,
            show,
            title,
            output.as_deref(),
        ),
        Command::Compare {
            hands,
            grasp,
            object,
            resolution,
            json,
        } => cmd_compare(&mut io, &hands, grasp, &object, resolution, json),
        Command::Canonical {
            hand,
            grasp,
            target,
        } => cmd_canonical(&mut io, &hand, grasp, target),
        Command::Interp {
            hand,
            grasp,
            actuation,
            depth,
            json,
        } => cmd_interp(&mut io, &hand, grasp, actuation, depth, json),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}
