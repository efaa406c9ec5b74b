use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cleanforge::oracle::{self, PropertyReport, SweepMode, DEFAULT_WORK_BOUND};
use cleanforge::{
    hensel_lift, local_factorization, pi_regular_witness, poly_reduce_via_matrix, strongly_clean_decompose,
    verify_decomposition, Error, Mat, Poly, ResiduePoly, RingElem, RingSpec,
};

#[derive(Parser)]
#[command(
    name = "cleanforge",
    version,
    about = "Strongly clean matrix decompositions over finite local rings"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Hensel-lift the residue factorization into local factors.
    Local,
    /// Split through the companion matrix; needs f(0), f(a) in P.
    Matrix,
    /// Trial division by every monic candidate.
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Local,
    #[value(name = "t5")]
    Reducible,
    #[value(name = "lemma")]
    MatrixFactor,
    Pireg,
}

#[derive(Subcommand)]
enum Command {
    /// Write A = E + U with E idempotent, U a unit, EU = UE.
    Decompose {
        #[arg(long)]
        ring: String,
        /// JSON array of rows of element strings.
        #[arg(long)]
        matrix: String,
    },
    /// Characteristic polynomial and determinant.
    Charpoly {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
    },
    /// Factor a monic polynomial.
    Factor {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Method::Local)]
        method: Method,
        /// Unit at which f must vanish modulo P (matrix method).
        #[arg(long, default_value = "1")]
        a: String,
    },
    /// Lift a coprime residue factorization f = gbar * hbar.
    Hensel {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        gbar: String,
        #[arg(long)]
        hbar: String,
    },
    /// Strongly pi-regular witness A^q = A^(q+1) s.
    Pireg {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
    },
    /// Run a property sweep and report failures.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        ring: String,
        /// Matrix dimension; polynomial degree for `lemma`; maximum degree for `t5`.
        #[arg(long)]
        n: usize,
        /// Check this many seeded random matrices instead of all of them.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
    },
    /// Irreducible quadratic over Z_(p) showing M_2(Z_(p)) is not strongly clean.
    Witness {
        #[arg(long)]
        p: u64,
    },
}

/// A command's result: JSON payload, text rendering, and whether every
/// property held.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

fn work_bound() -> Result<u64, Error> {
    match std::env::var("CLEANFORGE_WORK_BOUND") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("CLEANFORGE_WORK_BOUND={v} is not an integer"),
        }),
        Err(_) => Ok(DEFAULT_WORK_BOUND),
    }
}

fn matrix_text(m: &Mat) -> String {
    m.to_rows().iter().map(|r| r.join("  ")).collect::<Vec<_>>().join("\n")
}

fn decompose(spec: &RingSpec, matrix: &str) -> Result<Outcome, Error> {
    let a = Mat::parse_json(spec, matrix)?;
    let d = strongly_clean_decompose(&a)?;
    let verified = verify_decomposition(&a, &d.e, &d.u).is_ok();
    let mut json = d.to_json();
    json["ring"] = json!(spec.to_string());
    json["verified"] = json!(verified);
    let text = format!(
        "case: {}\nE =\n{}\nU =\n{}\nverified: {verified}",
        d.case,
        matrix_text(&d.e),
        matrix_text(&d.u)
    );
    Ok(Outcome {
        json,
        text,
        ok: verified,
    })
}

fn charpoly(spec: &RingSpec, matrix: &str) -> Result<Outcome, Error> {
    let a = Mat::parse_json(spec, matrix)?;
    let f = a.charpoly();
    let det = a.det();
    let verified = a.poly_eval(&f)?.is_zero();
    let json = json!({
        "ring": spec.to_string(),
        "charpoly": f.to_string(),
        "coeffs": f.to_json_coeffs(),
        "det": det.to_string(),
        "det_is_unit": det.is_unit(),
        "verified": verified,
    });
    let text = format!("charpoly: {f}\ndet: {det}\nverified: {verified}");
    Ok(Outcome {
        json,
        text,
        ok: verified,
    })
}

fn pair_json(g: &Poly, h: &Poly) -> Value {
    json!({ "g": g.to_string(), "h": h.to_string() })
}

fn factor(spec: &RingSpec, poly: &str, method: Method, a: &str, bound: u64) -> Result<Outcome, Error> {
    let f = Poly::parse(spec, poly)?;
    let (json, text, verified) = match method {
        Method::Local => {
            let list = local_factorization(&f)?;
            let product = list.factors.iter().fold(Poly::one(spec), |acc, lf| &acc * &lf.poly);
            let factors: Vec<Value> = list
                .factors
                .iter()
                .map(|lf| {
                    json!({
                        "poly": lf.poly.to_string(),
                        "residue": lf.base.to_string(),
                        "multiplicity": lf.multiplicity,
                    })
                })
                .collect();
            let text = list
                .factors
                .iter()
                .map(|lf| format!("{}  [residue ({})^{}]", lf.poly, lf.base, lf.multiplicity))
                .collect::<Vec<_>>()
                .join("\n");
            (json!({ "method": "local", "factors": factors }), text, product == f)
        }
        Method::Matrix => {
            let a = RingElem::parse(spec, a)?;
            let (g, h) = poly_reduce_via_matrix(&f, &a)?;
            let ok = &g * &h == f;
            let mut json = pair_json(&g, &h);
            json["method"] = json!("matrix");
            json["a"] = json!(a.to_string());
            (json, format!("({g}) * ({h})"), ok)
        }
        Method::Brute => match oracle::brute_factor_bounded(&f, bound)? {
            Some((g, h)) => {
                let ok = &g * &h == f;
                let json = json!({ "method": "brute", "factors": pair_json(&g, &h) });
                (json, format!("({g}) * ({h})"), ok)
            }
            None => (
                json!({ "method": "brute", "factors": Value::Null }),
                "irreducible".to_string(),
                true,
            ),
        },
    };
    let mut json = json;
    json["ring"] = json!(spec.to_string());
    json["f"] = json!(f.to_string());
    json["verified"] = json!(verified);
    Ok(Outcome {
        json,
        text: format!("{text}\nverified: {verified}"),
        ok: verified,
    })
}

fn hensel(spec: &RingSpec, poly: &str, gbar: &str, hbar: &str) -> Result<Outcome, Error> {
    let f = Poly::parse(spec, poly)?;
    let p = spec
        .residue_prime()
        .ok_or_else(|| Error::UnsupportedFamily(spec.to_string()))?;
    let g0 = ResiduePoly::parse(p, gbar)?;
    let h0 = ResiduePoly::parse(p, hbar)?;
    let lift = hensel_lift(&f, &g0, &h0)?;
    let bezout = &(&lift.u * &lift.g) + &(&lift.v * &lift.h);
    let verified = &lift.g * &lift.h == f && bezout.is_one();
    let mut json = lift.to_json();
    json["ring"] = json!(spec.to_string());
    json["f"] = json!(f.to_string());
    json["verified"] = json!(verified);
    let text = format!(
        "g = {}\nh = {}\nu = {}\nv = {}\nverified: {verified}",
        lift.g, lift.h, lift.u, lift.v
    );
    Ok(Outcome {
        json,
        text,
        ok: verified,
    })
}

fn pireg(spec: &RingSpec, matrix: &str) -> Result<Outcome, Error> {
    let a = Mat::parse_json(spec, matrix)?;
    let w = pi_regular_witness(&a)?;
    let verified = w.verify(&a);
    let mut json = w.to_json();
    json["ring"] = json!(spec.to_string());
    json["verified"] = json!(verified);
    let text = format!(
        "q = {} (index {}, period {})\ns =\n{}\nverified: {verified}",
        w.q,
        w.index,
        w.period,
        matrix_text(&w.s)
    );
    Ok(Outcome {
        json,
        text,
        ok: verified,
    })
}

fn verify(
    spec: &RingSpec,
    suite: Suite,
    n: usize,
    sample: Option<u64>,
    seed: u64,
    bound: u64,
) -> Result<Outcome, Error> {
    let mode = match sample {
        Some(count) => SweepMode::Sample { count, seed },
        None => SweepMode::Exhaustive,
    };
    let sample_unsupported = |name: &str| match mode {
        SweepMode::Exhaustive => Ok(()),
        SweepMode::Sample { .. } => Err(Error::PreconditionViolated(format!(
            "suite {name} is always exhaustive"
        ))),
    };
    let report: PropertyReport = match suite {
        Suite::Local => oracle::check_theorem_local_instance_bounded(spec, n, mode, bound)?,
        Suite::Pireg => oracle::check_pi_regular_bounded(spec, n, mode, bound)?,
        Suite::Reducible => {
            sample_unsupported("t5")?;
            oracle::check_t5_condition_bounded(spec, 2..=n, bound)?
        }
        Suite::MatrixFactor => {
            sample_unsupported("lemma")?;
            oracle::check_lemma_polyreduc_bounded(spec, n, bound)?
        }
    };
    eprintln!("{}", report.summary());
    let mut text = report.summary();
    for f in &report.failures {
        text.push_str("\n  ");
        text.push_str(f);
    }
    Ok(Outcome {
        json: report.to_json(),
        text,
        ok: report.passed(),
    })
}

fn witness(p: u64) -> Result<Outcome, Error> {
    let w = oracle::nonclean_witness_quadratic(p)?;
    let verified = w.verify();
    let text = format!(
        "f = {} over {}\nf(0) in P: {}\nf(1) in P: {}\ndiscriminant {} is a square: {}\nverified: {verified}",
        w.f,
        w.f.spec(),
        w.f0_in_p,
        w.f1_in_p,
        w.discriminant,
        w.discriminant_is_square
    );
    Ok(Outcome {
        json: w.to_json(),
        text,
        ok: verified,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let bound = work_bound()?;
    match &cli.command {
        Command::Decompose { ring, matrix } => decompose(&ring.parse()?, matrix),
        Command::Charpoly { ring, matrix } => charpoly(&ring.parse()?, matrix),
        Command::Factor { ring, poly, method, a } => factor(&ring.parse()?, poly, *method, a, bound),
        Command::Hensel { ring, poly, gbar, hbar } => hensel(&ring.parse()?, poly, gbar, hbar),
        Command::Pireg { ring, matrix } => pireg(&ring.parse()?, matrix),
        Command::Verify {
            suite,
            ring,
            n,
            sample,
            seed,
        } => verify(&ring.parse()?, *suite, *n, *sample, *seed, bound),
        Command::Witness { p } => witness(*p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let body = json!({ "error": { "code": err.code(), "message": err.to_string() } });
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&body).expect("json")),
                Format::Text => {}
            }
            eprintln!("error[{}]: {err}", err.code());
            ExitCode::from(2)
        }
    }
}
