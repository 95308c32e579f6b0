//! Command-line front end: family catalog, verification commands, and
//! machine-readable reports with deterministic payloads.

mod config;
mod report;

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use tubecheck_core::arith::{rat_int, Rational};
use tubecheck_core::geometry::{
    instantiate_family, levi_signature, FamilyParams, FamilyTag, ParamValue,
};
use tubecheck_core::invariants::{
    chi, chi_at_silver_point, chi_inverse, chi_of_sqrt, chi_strictly_increasing, cubic_singular_locus,
    gl2r_separate, j_closed_form, j_of_ct, phi_derivative_at_zero, phi_monotone_scan,
    reciprocity_check, reciprocity_identity_symbolic, Branch, Separation,
};
use tubecheck_core::maps::{
    apply_affine, graded_separation, homogenize_at, sphericity_bundle, verify_quadric_to_tube,
    verify_sphericity,
};
use tubecheck_core::{geometry::cubic_trace, tower::TowerElement};

use config::Config;
use report::{Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "tubecheck", version, about = "Exact verification toolkit for tube hypersurface families")]
struct Cli {
    /// Configuration file (key=value); also read from TUBECHECK_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lists the family catalog or prints one instantiated defining polynomial.
    Families {
        #[arg(long)]
        tag: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Verifies that the catalog automorphism maps the base onto its quadric.
    VerifySphericity {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Homogeneity round trip: normalization maps sampled base points to the origin.
    VerifyHomogeneity {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
        /// Full point `x0,x1,..,xn` on the base.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Number of random rational base points to test.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Trace-free certificate for the cubic part of a family.
    Trace {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Levi signature (Hessian inertia) at a base point.
    Signature {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Base coordinates `x1,..,xn`; defaults to the origin.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// GL2(R) separation of the quartics q_t1, q_t2.
    SeparateQuartics {
        #[arg(long, allow_hyphen_values = true)]
        t1: String,
        #[arg(long, allow_hyphen_values = true)]
        t2: String,
    },
    /// Graded separation of two catalog bases.
    SeparateBases {
        #[arg(long)]
        family1: String,
        #[arg(long)]
        family2: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        t1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t2: Option<String>,
    },
    /// The j-invariant of the cubic c_t.
    JInvariant {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
        /// Also report the singular locus of the cubic.
        #[arg(long)]
        singular_locus: bool,
    },
    /// Exact monotonicity scan of Φ plus its derivative at 0.
    PhiScan {
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        from: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        to: String,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// The reparametrization χ and its inverse.
    Chi {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Evaluate at the endpoint t = 17 + 12√2.
        #[arg(long)]
        silver: bool,
        #[arg(long)]
        inverse: bool,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        #[arg(long)]
        branch: Option<String>,
        /// Strict-increase scan over [from, to].
        #[arg(long)]
        scan: bool,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        from: String,
        #[arg(long, allow_hyphen_values = true, default_value = "50")]
        to: String,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Reciprocity of the normalized j-invariants of c_t and c_{-18/t}.
    Reciprocity {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Parses an expression and echoes its canonical rendering.
    Parse {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| format!("bad rational `{}`", s))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| format!("bad rational `{}`", s))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in `{}`", s));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| format!("bad rational `{}`", s))?;
        Ok(Rational::from(n))
    }
}

fn parse_param(t: &Option<String>, symbolic: bool) -> Result<ParamValue, String> {
    match (t, symbolic) {
        (Some(_), true) => Err("pass either --t or --symbolic, not both".into()),
        (Some(s), false) => Ok(ParamValue::Rational(parse_rational(s)?)),
        (None, true) => Ok(ParamValue::Symbolic),
        (None, false) => Err("missing parameter: pass --t <rational> or --symbolic".into()),
    }
}

fn parse_tag(s: &str) -> Result<FamilyTag, String> {
    FamilyTag::parse(s).ok_or_else(|| format!("unknown family `{}`", s))
}

fn parse_point(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(parse_rational).collect()
}

fn rational_list(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=3))))
        .collect()
}

fn family_params(k: Option<usize>, n: Option<usize>, p: Option<usize>, t: ParamValue) -> FamilyParams {
    FamilyParams { k, n, p, t: Some(t) }
}

fn run(command: &Command, config: &Config) -> Report {
    match command {
        Command::Families { tag, k, n, p, t, symbolic } => {
            let name = "families";
            let Some(tag_str) = tag else {
                let mut r = Report::new(name, Verdict::Verified);
                r = r.with_value("M1", "n >= 2");
                r = r.with_value("M2", "n >= 2");
                r = r.with_value("QuadricTube", "k <= n");
                r = r.with_value("Pt", "5 <= k <= n-2, n >= 7, 1 <= t <= 17+12*sqrt(2)");
                r = r.with_value("CalPt", "4 <= k <= n-3, n >= 7, t >= 17+12*sqrt(2)");
                r = r.with_value("FrakP", "n >= 7, 0 <= p <= n-7, tau != ±2");
                r = r.with_value("St", "any real t, base in R^7");
                r = r.with_value("GenHyper", "k = 5, n = 7 template with symbolic a, b, c, d");
                return r;
            };
            let tag = match parse_tag(tag_str) {
                Ok(tag) => tag,
                Err(e) => return Report::error(name, e),
            };
            let t = if t.is_none() && !symbolic {
                ParamValue::Symbolic
            } else {
                match parse_param(t, *symbolic) {
                    Ok(v) => v,
                    Err(e) => return Report::error(name, e),
                }
            };
            match instantiate_family(tag, &family_params(*k, *n, *p, t)) {
                Ok(base) => {
                    let mut r = Report::new(name, Verdict::Verified)
                        .with_value("family", tag.name())
                        .with_value("defining", base.defining().to_string())
                        .with_value("tower", base.tower().to_string());
                    for (key, value) in base.params() {
                        r = r.with_value(key, value);
                    }
                    r
                }
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::VerifySphericity { family, k, n, t, symbolic } => {
            let name = "verify-sphericity";
            let tag = match parse_tag(family) {
                Ok(tag) => tag,
                Err(e) => return Report::error(name, e),
            };
            if tag == FamilyTag::QuadricTube {
                let (Some(k), Some(n)) = (*k, *n) else {
                    return Report::error(name, "QuadricTube needs --k and --n".into());
                };
                return match verify_quadric_to_tube(k, n) {
                    Ok(out) => {
                        let verdict = if out.verified { Verdict::Verified } else { Verdict::Failed };
                        let mut r = Report::new(name, verdict).with_value("family", "QuadricTube");
                        r.residual_terms = Some(out.residual.term_count());
                        r.with_value("k", k).with_value("n", n)
                    }
                    Err(e) => Report::error(name, e.to_string()),
                };
            }
            let t = match (tag, t, symbolic) {
                (FamilyTag::M1 | FamilyTag::M2, None, false) => ParamValue::Symbolic,
                _ => match parse_param(t, *symbolic) {
                    Ok(v) => v,
                    Err(e) => return Report::error(name, e),
                },
            };
            let (k, n) = match tag {
                FamilyTag::M1 | FamilyTag::M2 => (0, n.unwrap_or(3)),
                FamilyTag::St => (0, 6),
                _ => {
                    let (Some(k), Some(n)) = (*k, *n) else {
                        return Report::error(name, "this family needs --k and --n".into());
                    };
                    (k, n)
                }
            };
            match sphericity_bundle(tag, k, n, &t).and_then(|(base, map, quadric)| {
                verify_sphericity(&base, &map, &quadric)
            }) {
                Ok(out) => {
                    let verdict = if out.verified { Verdict::Verified } else { Verdict::Failed };
                    let mut r = Report::new(name, verdict).with_value("family", tag.name());
                    r.residual_terms = Some(out.residual.term_count());
                    r
                }
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::VerifyHomogeneity { family, k, n, t, symbolic, point, random, seed } => {
            let name = "verify-homogeneity";
            let tag = match parse_tag(family) {
                Ok(tag) => tag,
                Err(e) => return Report::error(name, e),
            };
            let t = if tag == FamilyTag::GenHyper {
                ParamValue::Symbolic
            } else {
                match parse_param(t, *symbolic) {
                    Ok(v) => v,
                    Err(e) => return Report::error(name, e),
                }
            };
            let base = match instantiate_family(tag, &family_params(*k, *n, None, t)) {
                Ok(b) => b,
                Err(e) => return Report::error(name, e.to_string()),
            };
            let mut points: Vec<Vec<TowerElement>> = Vec::new();
            if let Some(p) = point {
                let coords = match parse_point(p) {
                    Ok(c) => c,
                    Err(e) => return Report::error(name, e),
                };
                if coords.len() != base.n() + 1 {
                    return Report::error(
                        name,
                        format!("--point needs {} coordinates x0..x{}", base.n() + 1, base.n()),
                    );
                }
                points.push(
                    coords
                        .into_iter()
                        .map(|q| TowerElement::from_rational(base.tower(), q))
                        .collect(),
                );
            }
            let count = random.unwrap_or(if points.is_empty() { 5 } else { 0 });
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..count {
                let coords = rational_list(&mut rng, base.n());
                match base.lift_rational_point(&coords) {
                    Ok(q) => points.push(q),
                    Err(e) => return Report::error(name, e.to_string()),
                }
            }
            for q in &points {
                let result = homogenize_at(&base, q).and_then(|(m, _)| {
                    let image = apply_affine(&base, &m)?;
                    Ok(image.defining() == base.defining())
                });
                match result {
                    Ok(true) => {}
                    Ok(false) => {
                        return Report::new(name, Verdict::Failed)
                            .with_value("family", tag.name())
                            .with_value("points_checked", points.len())
                    }
                    Err(e) => return Report::error(name, e.to_string()),
                }
            }
            Report::new(name, Verdict::Verified)
                .with_value("family", tag.name())
                .with_value("points_checked", points.len())
        }
        Command::Trace { family, k, n, p, t, symbolic } => {
            let name = "trace";
            let tag = match parse_tag(family) {
                Ok(tag) => tag,
                Err(e) => return Report::error(name, e),
            };
            let t = if t.is_none() && !symbolic {
                ParamValue::Symbolic
            } else {
                match parse_param(t, *symbolic) {
                    Ok(v) => v,
                    Err(e) => return Report::error(name, e),
                }
            };
            let base = match instantiate_family(tag, &family_params(*k, *n, *p, t)) {
                Ok(b) => b,
                Err(e) => return Report::error(name, e.to_string()),
            };
            match cubic_trace(&base) {
                Ok(v) => {
                    let trace_free = v.iter().all(|c| c.is_zero());
                    let rendered: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    Report::new(name, if trace_free { Verdict::Verified } else { Verdict::Failed })
                        .with_value("family", tag.name())
                        .with_value("trace", format!("[{}]", rendered.join(", ")))
                }
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::Signature { family, k, n, p, t, point } => {
            let name = "signature";
            let tag = match parse_tag(family) {
                Ok(tag) => tag,
                Err(e) => return Report::error(name, e),
            };
            let t = match t {
                Some(s) => match parse_rational(s) {
                    Ok(q) => ParamValue::Rational(q),
                    Err(e) => return Report::error(name, e),
                },
                None => ParamValue::Symbolic,
            };
            let base = match instantiate_family(tag, &family_params(*k, *n, *p, t)) {
                Ok(b) => b,
                Err(e) => return Report::error(name, e.to_string()),
            };
            let coords = match point {
                Some(s) => match parse_point(s) {
                    Ok(c) => c,
                    Err(e) => return Report::error(name, e),
                },
                None => vec![rat_int(0); base.n()],
            };
            match levi_signature(&base, &coords, None) {
                Ok(sig) => Report::new(name, Verdict::Verified)
                    .with_value("family", tag.name())
                    .with_value("positives", sig.positives)
                    .with_value("negatives", sig.negatives)
                    .with_value("zeros", sig.zeros),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::SeparateQuartics { t1, t2 } => {
            let name = "separate-quartics";
            let (t1, t2) = match (parse_rational(t1), parse_rational(t2)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Report::error(name, e),
            };
            match gl2r_separate(&t1, &t2) {
                Ok(Separation::NonEquivalent { witness }) => {
                    Report::new(name, Verdict::NonEquivalent).with_value("witness", witness)
                }
                Ok(Separation::Inconclusive) => Report::new(name, Verdict::Inconclusive),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::SeparateBases { family1, family2, k, n, t1, t2 } => {
            let name = "separate-bases";
            let build = |family: &str, t: &Option<String>| -> Result<_, String> {
                let tag = parse_tag(family)?;
                let t = match t {
                    Some(s) => ParamValue::Rational(parse_rational(s)?),
                    None => ParamValue::Symbolic,
                };
                instantiate_family(tag, &family_params(*k, *n, None, t)).map_err(|e| e.to_string())
            };
            let b1 = match build(family1, t1) {
                Ok(b) => b,
                Err(e) => return Report::error(name, e),
            };
            let b2 = match build(family2, t2) {
                Ok(b) => b,
                Err(e) => return Report::error(name, e),
            };
            match graded_separation(&b1, &b2) {
                Ok(Separation::NonEquivalent { witness }) => {
                    Report::new(name, Verdict::NonEquivalent).with_value("witness", witness)
                }
                Ok(Separation::Inconclusive) => Report::new(name, Verdict::Inconclusive),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::JInvariant { t, symbolic, singular_locus } => {
            let name = "j-invariant";
            let t = match parse_param(t, *symbolic) {
                Ok(v) => v,
                Err(e) => return Report::error(name, e),
            };
            let mut r = match j_of_ct(&t) {
                Ok(j) => {
                    let mut r = Report::new(name, Verdict::Verified).with_value("j", j.to_string());
                    if matches!(t, ParamValue::Symbolic) {
                        r = r.with_value("closed_form", j_closed_form().to_string());
                        r = r.with_value("pipeline_agrees", "true");
                    }
                    r
                }
                Err(e) => return Report::error(name, e.to_string()),
            };
            if *singular_locus {
                if let ParamValue::Rational(q) = &t {
                    match cubic_singular_locus(q) {
                        Ok(points) => {
                            r = r.with_value("singular_points", points.len());
                        }
                        Err(e) => return Report::error(name, e.to_string()),
                    }
                }
            }
            r
        }
        Command::PhiScan { from, to, samples } => {
            let name = "phi-scan";
            let (from, to) = match (parse_rational(from), parse_rational(to)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Report::error(name, e),
            };
            let samples = samples.unwrap_or(config.samples);
            match phi_monotone_scan(&from, &to, samples) {
                Ok(increasing) => Report::new(
                    name,
                    if increasing { Verdict::Verified } else { Verdict::Failed },
                )
                .with_value("strictly_increasing", increasing)
                .with_value("samples", samples)
                .with_value("derivative_at_zero", phi_derivative_at_zero().to_string()),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::Chi { t, silver, inverse, tau, branch, scan, from, to, samples } => {
            let name = "chi";
            if *scan {
                let (from, to) = match (parse_rational(from), parse_rational(to)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return Report::error(name, e),
                };
                let samples = samples.unwrap_or(config.samples).max(2);
                let span = &to - &from;
                let grid: Vec<Rational> = (0..samples)
                    .map(|i| {
                        &from + &(&span * Rational::new(BigInt::from(i), BigInt::from(samples - 1)))
                    })
                    .collect();
                return match chi_strictly_increasing(&grid) {
                    Ok(increasing) => Report::new(
                        name,
                        if increasing { Verdict::Verified } else { Verdict::Failed },
                    )
                    .with_value("strictly_increasing", increasing)
                    .with_value("samples", samples),
                    Err(e) => Report::error(name, e.to_string()),
                };
            }
            if *inverse {
                let Some(tau_str) = tau else {
                    return Report::error(name, "--inverse needs --tau".into());
                };
                let tau = match parse_rational(tau_str) {
                    Ok(q) => q,
                    Err(e) => return Report::error(name, e),
                };
                let branch = match branch.as_deref() {
                    Some("lower") => Branch::Lower,
                    Some("upper") => Branch::Upper,
                    _ => return Report::error(name, "--branch must be lower or upper".into()),
                };
                return match chi_inverse(&tau, branch) {
                    Ok((t_val, u)) => {
                        // Round trip exactly.
                        let back = chi_of_sqrt(&u).ok().and_then(|v| v.as_rational());
                        Report::new(name, Verdict::Verified)
                            .with_value("t", t_val.to_string())
                            .with_value("sqrt_t", u.to_string())
                            .with_value(
                                "roundtrip",
                                back.map(|b| (b == tau).to_string()).unwrap_or_else(|| "false".into()),
                            )
                    }
                    Err(e) => Report::error(name, e.to_string()),
                };
            }
            if *silver {
                return match chi_at_silver_point() {
                    Ok(v) => Report::new(name, Verdict::Verified)
                        .with_value("t", "17+12*sqrt(2)")
                        .with_value("chi", v.to_string()),
                    Err(e) => Report::error(name, e.to_string()),
                };
            }
            let Some(t_str) = t else {
                return Report::error(name, "pass --t, --silver, --inverse, or --scan".into());
            };
            let t = match parse_rational(t_str) {
                Ok(q) => q,
                Err(e) => return Report::error(name, e),
            };
            match chi(&t) {
                Ok(v) => Report::new(name, Verdict::Verified).with_value("chi", v.to_string()),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::Reciprocity { t, symbolic } => {
            let name = "reciprocity";
            if *symbolic {
                let holds = reciprocity_identity_symbolic();
                return Report::new(name, if holds { Verdict::Verified } else { Verdict::Failed })
                    .with_value("identity", "Phi(s)*Phi(-5832/s) = 1728^2 (normalized product 1)");
            }
            let Some(t_str) = t else {
                return Report::error(name, "pass --t <rational> or --symbolic".into());
            };
            let t = match parse_rational(t_str) {
                Ok(q) => q,
                Err(e) => return Report::error(name, e),
            };
            match reciprocity_check(&t) {
                Ok(holds) => Report::new(name, if holds { Verdict::Verified } else { Verdict::Failed })
                    .with_value("t", t.to_string()),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
        Command::Parse { expr } => {
            let name = "parse";
            match tubecheck_core::parse::parse_expression(expr) {
                Ok(p) => Report::new(name, Verdict::Verified)
                    .with_value("canonical", p.to_string())
                    .with_value("terms", p.term_count())
                    .with_value("tower", p.tower().to_string()),
                Err(e) => Report::error(name, e.to_string()),
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let config = match Config::resolve(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let report = Report::error("config", e);
            println!("{}", report.to_json());
            std::process::exit(2);
        }
    };
    let start = Instant::now();
    let mut report = run(&cli.command, &config);
    report.elapsed_ms = start.elapsed().as_millis();
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    println!("{}", rendered);
    if let Some(dir) = &config.output_dir {
        let _ = std::fs::create_dir_all(dir);
        let path = dir.join(format!("{}.json", report.command));
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("warning: cannot write report to {}: {}", path.display(), e);
        }
    }
    std::process::exit(report.verdict.exit_code());
}
