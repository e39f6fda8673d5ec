//! Command-line front end. Every command prints one JSON document (or CSV
//! with `--csv` where tabular) to the given writer and returns an exit code:
//! 0 success, 1 assertion failure, 2 usage or input error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kodaira::arith::{is_prime, Base, Rational, Valuation};
use kodaira::families::{x1_11_model, x1_13_model, x1_5_model, tate_normal, Family};
use kodaira::io::AnyModel;
use kodaira::local::{base_change, classify_triple, ClassificationRecord, KodairaType, LocalContext, ValuationTriple};
use kodaira::sweep::{run_sweep, SweepSpec};
use kodaira::theorems::{
    allowed_additive_report, l_function, potentially_supersingular, purely_additive_excluded,
    surface_feasibility, verify_bezout_certificate, Verdict,
};
use kodaira::weierstrass::DEFAULT_MAX_ORDER;
use kodaira::Error;

#[derive(Debug, Parser)]
#[command(name = "kodaira", version, about = "Exact Kodaira types and torsion checks for elliptic curves at p >= 5")]
struct Cli {
    /// Emit CSV instead of JSON for tabular output.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "x1-5")]
    X1_5,
    #[value(name = "x1-11")]
    X1_11,
    #[value(name = "x1-13")]
    X1_13,
    #[value(name = "tate-normal")]
    TateNormal,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// b2, b4, b6, b8, c4, c6, discriminant and j of a curve.
    Invariants { curve: PathBuf },
    /// Kodaira type at a prime, over an extension of ramification index E.
    Classify {
        curve: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u64,
    },
    /// Kodaira type of a valuation triple (entries may be "inf" for c4, c6).
    ClassifyTriple {
        #[arg(long, allow_hyphen_values = true)]
        vc4: String,
        #[arg(long, allow_hyphen_values = true)]
        vc6: String,
        #[arg(long, allow_hyphen_values = true)]
        vdelta: i64,
    },
    /// Type after a tame totally ramified extension of degree D.
    Basechange {
        #[arg(long, allow_hyphen_values = true)]
        vc4: String,
        #[arg(long, allow_hyphen_values = true)]
        vc6: String,
        #[arg(long, allow_hyphen_values = true)]
        vdelta: i64,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        p: u64,
    },
    /// Order of a point, searched up to MAX.
    Order {
        curve: PathBuf,
        /// `X,Y`; over a quadratic base write `a;b` for `a + b·θ`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max: u64,
    },
    /// Order of a point and where its multiples reduce modulo p.
    PointAnalysis {
        curve: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Build a family member; with --p also classify it.
    Family {
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        e: u64,
    },
    /// Classify a parameter grid and check a named assertion.
    Sweep {
        spec: PathBuf,
        /// Override the upper end of every parameter range.
        #[arg(long, allow_hyphen_values = true)]
        max: Option<i64>,
        /// Omit per-row output.
        #[arg(long)]
        summary: bool,
    },
    /// Additive types compatible with a point of order p^n at v_K(p) = VKP.
    AllowedTypes {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        vkp: u64,
        /// Include the interval flags.
        #[arg(long)]
        report: bool,
    },
    /// Whether purely additive reduction is excluded: VKP < (p - 1)/M.
    Theorem1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        vkp: u64,
        #[arg(long)]
        m: u64,
    },
    /// Purely additive reduction of abelian surfaces with a point of order p.
    SurfaceBound {
        #[arg(long)]
        p: u64,
    },
    /// Potential supersingularity forced by the type.
    Supersingular {
        #[arg(long = "type")]
        kodaira_type: String,
        #[arg(long)]
        p: u64,
    },
    /// The L function on nonnegative integers.
    Lfunction {
        #[arg(long)]
        x: u64,
    },
    /// Recompute and check the Bézout certificate for c4, c6 of X1(5).
    VerifyClaimGcd,
}

struct Outcome {
    body: String,
    code: i32,
}

fn json_out(v: Value) -> Outcome {
    Outcome {
        body: serde_json::to_string_pretty(&v).expect("serializable"),
        code: 0,
    }
}

fn error_value(kind: &str, message: &str) -> Value {
    json!({"error": {"kind": kind, "message": message}})
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_valuation(s: &str) -> Result<Valuation, Error> {
    match s.trim() {
        "inf" | "infinity" => Ok(Valuation::Infinite),
        v => v
            .parse()
            .map(Valuation::Finite)
            .map_err(|_| Error::Parse(format!("bad valuation {s:?}"))),
    }
}

fn triple(vc4: &str, vc6: &str, vdelta: i64) -> Result<ValuationTriple, Error> {
    Ok(ValuationTriple::new(parse_valuation(vc4)?, parse_valuation(vc6)?, vdelta))
}

fn require_prime(p: u64) -> Result<(), Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

fn require_positive(name: &str, v: u64) -> Result<(), Error> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be >= 1")));
    }
    Ok(())
}

fn record_csv(rec: &ClassificationRecord) -> String {
    let t = &rec.minimal_triple;
    format!(
        "type,n,vc4,vc6,vdelta,u_valuation,component_group,semistability_degree,potentially_good\n{},{},{},{},{},{},{},{},{}\n",
        rec.kodaira_type.family(),
        rec.kodaira_type.index().map(|n| n.to_string()).unwrap_or_default(),
        t.vc4,
        t.vc6,
        t.vdelta,
        rec.u_valuation,
        rec.component_group_order,
        rec.semistability_degree,
        rec.potentially_good
    )
}

fn record_out(rec: &ClassificationRecord, csv: bool) -> Outcome {
    if csv {
        Outcome {
            body: record_csv(rec),
            code: 0,
        }
    } else {
        json_out(serde_json::to_value(rec).expect("serializable"))
    }
}

fn field_json(model: &AnyModel) -> Value {
    match model.base() {
        Base::Rational => json!({"kind": "rational"}),
        Base::Quadratic(f) => json!({
            "kind": "quadratic",
            "minpoly": [f.p1().to_string(), f.p0().to_string()],
            "discriminant": f.discriminant().to_string(),
        }),
    }
}

fn rational_arg(name: &str, v: &Option<String>) -> Result<Rational, Error> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("--{name} is required")))?
        .parse()
}

fn family_command(
    family: FamilyArg,
    args: [&Option<String>; 4],
    p: Option<u64>,
    e: u64,
) -> Result<Outcome, Error> {
    let [s, t, b, c] = args;
    let (name, model, params): (Family, AnyModel, Value) = match family {
        FamilyArg::X1_5 => {
            let (s, t) = (rational_arg("s", s)?, rational_arg("t", t)?);
            let m = x1_5_model(&s, &t)?;
            (Family::X1_5, m.into(), json!({"s": s, "t": t}))
        }
        FamilyArg::X1_11 => {
            let t = rational_arg("t", t)?;
            let (_, m) = x1_11_model(&t)?;
            (Family::X1_11, m.into(), json!({"t": t}))
        }
        FamilyArg::X1_13 => {
            let t = rational_arg("t", t)?;
            let (_, m) = x1_13_model(&t)?;
            (Family::X1_13, m.into(), json!({"t": t}))
        }
        FamilyArg::TateNormal => {
            let (b, c) = (rational_arg("b", b)?, rational_arg("c", c)?);
            let m = tate_normal(b.clone(), c.clone())?;
            (Family::TateNormal, m.into(), json!({"b": b, "c": c}))
        }
    };
    let mut out = model.to_json();
    out["field"] = field_json(&model);
    out["provenance"] = json!({"family": name.name(), "params": params});
    out["marked_point"] = model.marked_point().to_json();
    if let Some(p) = p {
        let ctx = LocalContext::new(p, e)?;
        out["classification"] = serde_json::to_value(model.classify(&ctx)?).expect("serializable");
    }
    Ok(json_out(out))
}

fn point_analysis(curve: &PathBuf, p: u64, point: &str) -> Result<Outcome, Error> {
    let model = AnyModel::parse(&read_input(curve)?)?;
    let ctx = LocalContext::new(p, 1)?;
    let rec = model.classify(&ctx)?;
    let pt = model.point_from_arg(point)?;
    let order = model.point_order(&pt, DEFAULT_MAX_ORDER)?;
    let mut multiples = Vec::new();
    if let Some(n) = order {
        for k in 1..n {
            let q = model.multiply(k as i64, &pt)?;
            let red = model.point_reduction(&q, &ctx)?;
            multiples.push(json!({
                "k": k,
                "point": q.to_json(),
                "order": n / num_integer::gcd(n, k),
                "in_kernel": red.in_kernel,
                "nonsingular_image": red.nonsingular_image,
            }));
        }
    }
    Ok(json_out(json!({
        "point": pt.to_json(),
        "order": order,
        "classification": rec,
        "multiples": multiples,
    })))
}

fn dispatch(cli: Cli) -> Result<Outcome, Error> {
    let csv = cli.csv;
    match cli.command {
        Command::Invariants { curve } => {
            let model = AnyModel::parse(&read_input(&curve)?)?;
            Ok(json_out(json!({
                "curve": model.to_json(),
                "invariants": model.invariants_json(),
            })))
        }
        Command::Classify { curve, p, e } => {
            let model = AnyModel::parse(&read_input(&curve)?)?;
            Ok(record_out(&model.classify(&LocalContext::new(p, e)?)?, csv))
        }
        Command::ClassifyTriple { vc4, vc6, vdelta } => {
            Ok(record_out(&classify_triple(&triple(&vc4, &vc6, vdelta)?)?, csv))
        }
        Command::Basechange { vc4, vc6, vdelta, degree, p } => {
            require_prime(p)?;
            let t = triple(&vc4, &vc6, vdelta)?;
            let after = base_change(&t, degree, p)?;
            if csv {
                return Ok(record_out(&after, true));
            }
            let before = classify_triple(&t)?;
            Ok(json_out(json!({"before": before, "degree": degree, "after": after})))
        }
        Command::Order { curve, point, max } => {
            let model = AnyModel::parse(&read_input(&curve)?)?;
            let pt = model.point_from_arg(&point)?;
            let order = model.point_order(&pt, max)?;
            Ok(json_out(json!({"point": pt.to_json(), "order": order, "max": max})))
        }
        Command::PointAnalysis { curve, p, point } => point_analysis(&curve, p, &point),
        Command::Family { family, s, t, b, c, p, e } => family_command(family, [&s, &t, &b, &c], p, e),
        Command::Sweep { spec, max, summary } => {
            let mut spec = SweepSpec::parse(&read_input(&spec)?)?;
            if let Some(hi) = max {
                spec = spec.with_upper_bound(hi)?;
            }
            let mut report = run_sweep(&spec);
            let code = report.exit_code();
            if csv {
                return Ok(Outcome {
                    body: report.to_csv(),
                    code,
                });
            }
            let counterexamples: Vec<_> =
                report.counterexamples.iter().map(|&i| report.rows[i].clone()).collect();
            if summary {
                report.rows.clear();
            }
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["counterexamples"] = serde_json::to_value(counterexamples).expect("serializable");
            let mut out = json_out(v);
            out.code = code;
            Ok(out)
        }
        Command::AllowedTypes { p, n, vkp, report } => {
            require_prime(p)?;
            require_positive("n", n as u64)?;
            require_positive("vkp", vkp)?;
            let r = allowed_additive_report(p, n, vkp);
            if report {
                Ok(json_out(serde_json::to_value(r).expect("serializable")))
            } else {
                Ok(json_out(serde_json::to_value(r.allowed).expect("serializable")))
            }
        }
        Command::Theorem1 { p, vkp, m } => {
            require_prime(p)?;
            require_positive("vkp", vkp)?;
            require_positive("m", m)?;
            Ok(json_out(json!({
                "p": p, "vkp": vkp, "m": m,
                "purely_additive_excluded": purely_additive_excluded(p, vkp, m),
            })))
        }
        Command::SurfaceBound { p } => {
            Ok(json_out(serde_json::to_value(surface_feasibility(p)?).expect("serializable")))
        }
        Command::Supersingular { kodaira_type, p } => {
            require_prime(p)?;
            let kt: KodairaType = kodaira_type.parse()?;
            Ok(json_out(json!({
                "type": kt.to_string(),
                "p": p,
                "potentially_supersingular": potentially_supersingular(kt, p),
            })))
        }
        Command::Lfunction { x } => {
            let l = l_function(x);
            if csv {
                return Ok(Outcome {
                    body: format!("x,l\n{x},{l}\n"),
                    code: 0,
                });
            }
            Ok(json_out(json!({"x": x, "l": l})))
        }
        Command::VerifyClaimGcd => {
            let r = verify_bezout_certificate();
            let mut out = json_out(serde_json::to_value(&r).expect("serializable"));
            out.code = if r.verdict == Verdict::Pass { 0 } else { 1 };
            Ok(out)
        }
    }
}

/// Parse `args` (including the program name), run, and write the result.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let (body, code) = match Cli::try_parse_from(args) {
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand) {
                (e.to_string(), if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 })
            } else {
                let msg = e.render().to_string();
                let v = error_value("usage", msg.trim());
                (serde_json::to_string_pretty(&v).expect("serializable"), 2)
            }
        }
        Ok(cli) => match dispatch(cli) {
            Ok(o) => (o.body, o.code),
            Err(e) => {
                let v = error_value(&error_kind(&e), &e.to_string());
                (serde_json::to_string_pretty(&v).expect("serializable"), 2)
            }
        },
    };
    let _ = write!(out, "{body}");
    if !body.ends_with('\n') {
        let _ = writeln!(out);
    }
    code
}
