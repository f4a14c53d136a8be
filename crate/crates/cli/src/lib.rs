//! `macias`: queries, closures, density verdicts and the theorem suite from
//! the command line, as text or JSON.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage or parse error,
//! 3 operation unsupported for the ring, 4 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use macias_core::ideal::{
    comaximal, jacobson_radical_principal, maximal_ideals_containing, radical_principal, Hnf,
    Ideal, MaximalIdeal,
};
use macias_core::lab::{self, CheckReport, SuiteConfig, Verdict};
use macias_core::quadratic::QuadInt;
use macias_core::ring::{self, extended_gcd, parse_element, GcdOutcome, Window};
use macias_core::topology::{
    self, closure_singleton, default_separators, density_check, golomb_coset_invariant,
    nowhere_density_check, sigma_window, DensityTarget, DensityVerdict, Method, Space,
};
use macias_core::{int, Element, Error, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "macias",
    version,
    about = "Comaximality topology laboratory on finite windows"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Z, Zi, Zw5, Z[x], ZxZ or Fp[x]:p (also F3[x]); `verify` takes a comma list.
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// Window height H.
    #[arg(long = "window", global = true, default_value_t = 50)]
    height: u64,
    /// Window degree D (polynomial rings).
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,
    /// Separator window height (defaults per operation).
    #[arg(long = "sep-window", global = true)]
    sep_height: Option<u64>,
    #[arg(long = "sep-degree", global = true)]
    sep_degree: Option<usize>,
    /// Seed; MACIAS_SEED is used when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 1000)]
    cases: usize,
    /// auto, exact-j, sandwich or oracle.
    #[arg(long, global = true, default_value = "auto")]
    method: String,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Work in the punctured space R minus {0}.
    #[arg(long, global = true)]
    punctured: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// sigma_r on the window.
    Sigma {
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// Comaximality verdict with certificate.
    Comax {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// cl({x}) on the window.
    Closure {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// cl(I) = j(I) for the ideal generated by the arguments.
    ClosureIdeal {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
    },
    /// j(<x>), the intersection of the maximal ideals over x.
    Jrad {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// rad(<x>).
    Radical {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    Gcd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Factor {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Maximal ideals containing x.
    Maxideals {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// List primes up to this bound when x has a zero coordinate (ZxZ).
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Density of `nonunits`, `primes:N` or `set:a;b;...` on the separator window.
    Dense {
        target: String,
        /// Height budget for the witness search.
        #[arg(long, default_value_t = 1024)]
        budget: u64,
    },
    /// Nowhere density of the ideal generated by the arguments.
    NowhereDense {
        #[arg(required = true, allow_negative_numbers = true)]
        gens: Vec<String>,
    },
    /// Run the theorem suite.
    Verify {
        #[arg(long)]
        list: bool,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
    Counterexample {
        #[arg(value_enum)]
        kind: CounterKind,
    },
    Generate {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Starting elements (irreducibles, or elements whose maximal ideals seed the run).
        #[arg(long, value_delimiter = ';', allow_hyphen_values = true)]
        from: Vec<String>,
    },
    /// Residue classes of sigma_k (Z only).
    Golomb {
        #[arg(allow_hyphen_values = true)]
        k: String,
    },
    /// A nonunit inside every basic open sigma_k of the window.
    UnitsNotOpen,
    /// Which principal ideals of the window are closed.
    ScanClosedPrincipals,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CounterKind {
    CoprimeNotComaximal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    MaximalIdeals,
    Irreducibles,
}

/// The JSON envelope; field order is the output key order.
#[derive(Serialize)]
struct Envelope {
    ring: String,
    op: &'static str,
    inputs: Vec<String>,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Value>,
    window: Value,
    method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

struct Outcome {
    env: Envelope,
    text: String,
    code: i32,
}

/// CLI failures: a core error or a usage problem found before computing.
enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) | Error::MethodUnavailable(_) | Error::InfiniteSet(_) => {
            EXIT_UNSUPPORTED
        }
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::CertificateInvalid(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn list(v: &[Element]) -> String {
    let items: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn window_json(w: &Window) -> Value {
    json!({ "height": w.height, "degree": w.degree })
}

struct Ctx {
    ring: Ring,
    w: Window,
    opts: Opts,
    seed: u64,
}

impl Ctx {
    fn window_for(ring: Ring, height: u64, degree: usize) -> Window {
        Window::new(height, if ring.is_polynomial() { degree } else { 0 })
    }

    fn sep(&self, default: Window) -> Window {
        Self::window_for(
            self.ring,
            self.opts.sep_height.unwrap_or(default.height),
            self.opts.sep_degree.unwrap_or(default.degree),
        )
    }

    fn parse(&self, s: &str) -> Res<Element> {
        Ok(parse_element(self.ring, s)?)
    }

    fn space(&self) -> Space {
        if self.opts.punctured {
            Space::Punctured
        } else {
            Space::WithZero
        }
    }

    fn envelope(&self, op: &'static str, inputs: &[&str], result: Value) -> Envelope {
        Envelope {
            ring: self.ring.to_string(),
            op,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            result,
            certificate: None,
            window: json!({ "height": self.w.height, "degree": self.w.degree }),
            method: None,
            seed: None,
        }
    }
}

fn ok(env: Envelope, text: String) -> Res<Outcome> {
    Ok(Outcome {
        env,
        text,
        code: EXIT_OK,
    })
}

/// Ideal generated by the given elements.
fn ideal_of(ring: Ring, gens: &[Element]) -> Res<Ideal> {
    match gens {
        [] => Err(Failure::Usage(
            "an ideal needs at least one generator".into(),
        )),
        [g] => Ok(Ideal::Principal(g.clone())),
        [a, b] => Ok(Ideal::TwoGen(a.clone(), b.clone())),
        _ => match ring {
            Ring::GaussInt | Ring::QuadM5 => {
                let theta = if ring == Ring::GaussInt { -1 } else { -5 };
                let qs: Vec<QuadInt> = gens
                    .iter()
                    .map(|g| match g {
                        Element::Gauss(q) | Element::Quad(q) => q.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                match Hnf::of(&qs, theta) {
                    Some(h) => Ok(Ideal::Hnf(ring, h)),
                    None => Ok(Ideal::zero(ring)),
                }
            }
            Ring::PolyZ => Err(Error::Unsupported(
                "ideals of Z[x] with more than two generators".into(),
            )
            .into()),
            _ => {
                let mut g = gens[0].clone();
                for h in &gens[1..] {
                    g = match ring::gcd(&g, h)? {
                        GcdOutcome::Gcd(g) => g,
                        GcdOutcome::NoGcdWitness(..) => unreachable!("gcd exists outside Zw5"),
                    };
                }
                Ok(Ideal::Principal(g))
            }
        },
    }
}

fn run_sigma(c: &Ctx, r: &str) -> Res<Outcome> {
    let x = c.parse(r)?;
    let set = sigma_window(&x, &c.w, c.space())?;
    let mut env = c.envelope(
        "sigma",
        &[r],
        json!({ "sigma": to_value(&set), "count": set.len() }),
    );
    env.window =
        json!({ "height": c.w.height, "degree": c.w.degree, "punctured": c.opts.punctured });
    let text = format!(
        "sigma_{x} on the window ({} elements): {}",
        set.len(),
        list(&set)
    );
    ok(env, text)
}

fn run_comax(c: &Ctx, a: &str, b: &str) -> Res<Outcome> {
    let (x, y) = (c.parse(a)?, c.parse(b)?);
    let (verdict, cert) = comaximal(&x, &y)?;
    cert.verify(&x, &y, verdict)?;
    let mut env = c.envelope("comax", &[a, b], json!({ "comaximal": verdict }));
    env.certificate = Some(to_value(&cert));
    ok(
        env,
        format!("comaximal({x}, {y}) = {verdict}\ncertificate: {cert}"),
    )
}

fn run_closure(c: &Ctx, s: &str) -> Res<Outcome> {
    let x = c.parse(s)?;
    let method: Method = c.opts.method.parse()?;
    let sep = c.sep(default_separators(&x, &c.w));
    let res = closure_singleton(&x, &c.w, method, &sep)?;
    if let Some(form) = &res.ideal_form {
        if !form.contains(&x)? {
            return Err(Error::CertificateInvalid(format!(
                "{x} is not in its closure ideal {form}"
            ))
            .into());
        }
    }
    let result = match res.trace() {
        Some(t) => json!({ "exact_on_window": true, "count": t.len(), "trace": to_value(&t) }),
        None => json!({
            "exact_on_window": false,
            "lower": to_value(&res.lower),
            "upper": to_value(&res.upper),
        }),
    };
    let mut env = c.envelope("closure", &[s], result);
    env.certificate = res.ideal_form.as_ref().map(to_value);
    env.method = Some(res.method.to_string());
    if res.method != Method::ExactJ {
        env.window =
            json!({ "height": c.w.height, "degree": c.w.degree, "separators": window_json(&sep) });
    }
    let mut text = String::new();
    match res.trace() {
        Some(t) => writeln!(
            text,
            "cl({{{x}}}) on the window ({} elements): {}",
            t.len(),
            list(t)
        )
        .unwrap(),
        None => {
            writeln!(
                text,
                "lower bound ({}): {}",
                res.lower.len(),
                list(&res.lower)
            )
            .unwrap();
            writeln!(
                text,
                "upper bound ({}): {}",
                res.upper.len(),
                list(&res.upper)
            )
            .unwrap();
        }
    }
    if let Some(form) = &res.ideal_form {
        writeln!(text, "ideal: {form}").unwrap();
    }
    write!(text, "method: {}", res.method).unwrap();
    ok(env, text)
}

fn run_closure_ideal(c: &Ctx, gens: &[String]) -> Res<Outcome> {
    let elems = gens.iter().map(|g| c.parse(g)).collect::<Res<Vec<_>>>()?;
    let i = ideal_of(c.ring, &elems)?;
    let res = topology::closure_of_ideal(&i, &c.w)?;
    let form = res.ideal_form.clone().expect("exact");
    for g in &elems {
        if !form.contains(g)? {
            return Err(Error::CertificateInvalid(format!(
                "{g} is not in the closure ideal {form}"
            ))
            .into());
        }
    }
    let inputs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let mut env = c.envelope(
        "closure-ideal",
        &inputs,
        json!({ "exact_on_window": true, "count": res.lower.len(), "trace": to_value(&res.lower) }),
    );
    env.certificate = Some(to_value(&form));
    env.method = Some(Method::ExactJ.to_string());
    ok(
        env,
        format!(
            "cl({i}) = {form}\non the window ({} elements): {}",
            res.lower.len(),
            list(&res.lower)
        ),
    )
}

fn run_principal_ideal(c: &Ctx, op: &'static str, s: &str) -> Res<Outcome> {
    let x = c.parse(s)?;
    let ideal = if op == "jrad" {
        jacobson_radical_principal(&x)?
    } else {
        radical_principal(&x)?
    };
    let ideal = ideal.normalize()?;
    if !x.is_zero() && !ideal.contains(&x)? {
        return Err(Error::CertificateInvalid(format!("{x} is not in {ideal}")).into());
    }
    let env = c.envelope(op, &[s], to_value(&ideal));
    let name = if op == "jrad" { "j" } else { "rad" };
    ok(env, format!("{name}(<{x}>) = {ideal}"))
}

fn run_gcd(c: &Ctx, a: &str, b: &str) -> Res<Outcome> {
    let (x, y) = (c.parse(a)?, c.parse(b)?);
    let mut env;
    let text;
    match ring::gcd(&x, &y)? {
        GcdOutcome::Gcd(g) => {
            env = c.envelope("gcd", &[a, b], json!({ "gcd": to_value(&g) }));
            if c.ring.is_euclidean() && !(x.is_zero() && y.is_zero()) {
                let (g2, u, v) = extended_gcd(&x, &y)?;
                let lhs = ring::ArithOp::Add.apply(
                    &ring::ArithOp::Mul.apply(&u, Some(&x))?,
                    Some(&ring::ArithOp::Mul.apply(&v, Some(&y))?),
                )?;
                if lhs != g2 || g2.canonical_associate() != g.canonical_associate() {
                    return Err(
                        Error::CertificateInvalid(format!("{u}*{x} + {v}*{y} != {g2}")).into(),
                    );
                }
                env.certificate = Some(
                    json!({ "type": "Bezout", "u": to_value(&u), "v": to_value(&v), "g": to_value(&g2) }),
                );
                text = format!("gcd({x}, {y}) = {g}\n{u}*({x}) + {v}*({y}) = {g2}");
            } else {
                text = format!("gcd({x}, {y}) = {g}");
            }
        }
        GcdOutcome::NoGcdWitness(m1, m2) => {
            env = c.envelope(
                "gcd",
                &[a, b],
                json!({ "gcd": null, "maximal_common_divisors": [to_value(&m1), to_value(&m2)] }),
            );
            text = format!("gcd({x}, {y}) does not exist: {m1} and {m2} are incomparable maximal common divisors");
        }
    }
    ok(env, text)
}

fn run_factor(c: &Ctx, s: &str) -> Res<Outcome> {
    let x = c.parse(s)?;
    let f = ring::factor(&x)?;
    if f.recompose() != x {
        return Err(
            Error::CertificateInvalid(format!("factors of {x} do not multiply back")).into(),
        );
    }
    let parts: Vec<String> = f
        .factors
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                format!("({p})")
            } else {
                format!("({p})^{e}")
            }
        })
        .collect();
    let env = c.envelope("factor", &[s], to_value(&f));
    ok(env, format!("{x} = {} * {}", f.unit, parts.join(" * ")))
}

fn run_maxideals(c: &Ctx, s: &str, bound: Option<u64>) -> Res<Outcome> {
    let x = c.parse(s)?;
    let ms = maximal_ideals_containing(&x, bound)?;
    for m in &ms.ideals {
        if !m.contains(&x)? {
            return Err(Error::CertificateInvalid(format!("{m} does not contain {x}")).into());
        }
    }
    let descriptors: Vec<String> = ms.ideals.iter().map(|m| m.to_string()).collect();
    let env = c.envelope(
        "maxideals",
        &[s],
        json!({ "ideals": to_value(&ms.ideals), "all_primes_on": to_value(&ms.all_primes_on) }),
    );
    ok(
        env,
        format!("maximal ideals over {x}: {}", descriptors.join(", ")),
    )
}

fn verdict_text(v: &DensityVerdict) -> String {
    let mut t = format!("{:?}: {}\n", v.property, v.holds);
    for w in &v.witnesses {
        let kind = if w.refutes { "refuted by" } else { "witness" };
        writeln!(t, "  sigma_{}: {kind} {}", w.open, w.witness).unwrap();
    }
    if !v.skipped.is_empty() {
        writeln!(t, "  skipped: {}", list(&v.skipped)).unwrap();
    }
    t.trim_end().to_string()
}

fn density_envelope(
    c: &Ctx,
    op: &'static str,
    inputs: &[&str],
    v: &DensityVerdict,
    sep: &Window,
) -> Envelope {
    let mut env = c.envelope(op, inputs, to_value(v));
    env.window = json!({ "separators": window_json(sep), "punctured": c.opts.punctured });
    env.seed = Some(c.seed);
    env
}

fn run_dense(c: &Ctx, target: &str, budget: u64) -> Res<Outcome> {
    let sep = c.sep(c.w);
    let t = match target.split_once(':') {
        None if target.eq_ignore_ascii_case("nonunits") => DensityTarget::NonUnits,
        Some(("primes", n)) => {
            if c.ring != Ring::Int {
                return Err(Error::Unsupported("the primes target lives in Z".into()).into());
            }
            let n: u64 = n
                .parse()
                .map_err(|_| Failure::Usage(format!("bad prime bound {n:?}")))?;
            DensityTarget::Custom(
                int::primes_up_to(n)
                    .into_iter()
                    .map(|p| Element::int(p as i64))
                    .collect(),
            )
        }
        Some(("set", items)) => DensityTarget::Custom(
            items
                .split(';')
                .map(|s| c.parse(s))
                .collect::<Res<Vec<_>>>()?,
        ),
        _ => {
            return Err(Failure::Usage(format!(
                "unknown density target {target:?}; use nonunits, primes:N or set:a;b"
            )))
        }
    };
    let v = density_check(c.ring, &t, &sep, c.space(), budget)?;
    let code = if v.holds { EXIT_OK } else { EXIT_VIOLATION };
    let env = density_envelope(c, "dense", &[target], &v, &sep);
    Ok(Outcome {
        env,
        text: verdict_text(&v),
        code,
    })
}

fn run_nowhere_dense(c: &Ctx, gens: &[String]) -> Res<Outcome> {
    let sep = c.sep(c.w);
    let elems = gens.iter().map(|g| c.parse(g)).collect::<Res<Vec<_>>>()?;
    let i = ideal_of(c.ring, &elems)?;
    let v = nowhere_density_check(&i, &sep, c.space())?;
    let code = if v.holds { EXIT_OK } else { EXIT_VIOLATION };
    let inputs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let env = density_envelope(c, "nowhere-dense", &inputs, &v, &sep);
    Ok(Outcome {
        env,
        text: verdict_text(&v),
        code,
    })
}

fn report_line(r: &CheckReport) -> String {
    let tag = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::ExpectedFail => "XFAIL",
    };
    let mut line = format!(
        "{tag:<6}{:<18}{:<10}cases={} violations={}",
        r.id,
        r.ring.to_string(),
        r.cases_run,
        r.violation_count
    );
    if let Some(v) = r.violations.first() {
        write!(
            line,
            "  first: [{}] {} (expected {})",
            list(&v.inputs),
            v.observed,
            v.expected
        )
        .unwrap();
    }
    if let Some(d) = &r.diagnostic {
        write!(line, "  error: {d}").unwrap();
    }
    line
}

fn run_verify(c: &Ctx, rings: &[Ring], listing: bool, suite: &[String]) -> Res<Outcome> {
    if listing {
        let specs: Vec<_> = lab::registry().iter().map(|s| s.listing()).collect();
        let mut text = String::new();
        for s in &specs {
            let rings: Vec<String> = s.rings.iter().map(|(r, e)| format!("{r}:{e:?}")).collect();
            writeln!(text, "{:<18}{}  [{}]", s.id, s.statement, rings.join(", ")).unwrap();
        }
        let mut env = c.envelope("verify-list", &[], to_value(&specs));
        env.window = Value::Null;
        return ok(env, text.trim_end().to_string());
    }
    let cfg = SuiteConfig {
        window: c.w,
        seed: c.seed,
        cases: c.opts.cases,
    };
    let mut reports = Vec::new();
    for &ring in rings {
        let w = Ctx::window_for(ring, c.w.height, c.opts.degree);
        let cfg = SuiteConfig { window: w, ..cfg };
        let ids = (!suite.is_empty()).then_some(suite);
        reports.extend(lab::run_suite(&[ring], &cfg, ids)?);
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (pass, fail, xfail) = (
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::ExpectedFail),
    );
    let mut text: String = reports.iter().map(|r| report_line(r) + "\n").collect();
    write!(text, "{pass} pass, {xfail} expected-fail, {fail} fail").unwrap();
    let inputs: Vec<&str> = suite.iter().map(String::as_str).collect();
    let mut env = c.envelope(
        "verify",
        &inputs,
        json!({ "reports": to_value(&reports), "summary": { "pass": pass, "expected_fail": xfail, "fail": fail } }),
    );
    env.ring = rings
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",");
    env.seed = Some(c.seed);
    env.window = json!({ "height": c.w.height, "degree": c.opts.degree, "cases": c.opts.cases });
    Ok(Outcome {
        env,
        text,
        code: if fail == 0 { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn run_counterexample(c: &Ctx) -> Res<Outcome> {
    let found = lab::find_coprime_not_comaximal(c.ring, &c.w)?;
    let mut env;
    let text;
    match found {
        Some(pair) => {
            pair.certificate.verify(&pair.a, &pair.b, false)?;
            env = c.envelope(
                "counterexample",
                &["coprime-not-comaximal"],
                json!({ "found": true, "a": to_value(&pair.a), "b": to_value(&pair.b), "comaximal": false }),
            );
            env.certificate = Some(to_value(&pair.certificate));
            text = format!(
                "coprime, not comaximal: ({}, {})\ncertificate: {}",
                pair.a, pair.b, pair.certificate
            );
        }
        None => {
            env = c.envelope(
                "counterexample",
                &["coprime-not-comaximal"],
                json!({ "found": false }),
            );
            text = "NotFound: every coprime pair on the window is comaximal".to_string();
        }
    }
    ok(env, text)
}

fn run_generate(c: &Ctx, kind: GenKind, count: usize, from: &[String]) -> Res<Outcome> {
    if count == 0 {
        return Err(Failure::Usage("--count must be positive".into()));
    }
    let seeds = from.iter().map(|s| c.parse(s)).collect::<Res<Vec<_>>>()?;
    let inputs: Vec<&str> = from.iter().map(String::as_str).collect();
    match kind {
        GenKind::MaximalIdeals => {
            let mut known: Vec<MaximalIdeal> = Vec::new();
            for s in &seeds {
                let m = maximal_ideals_containing(s, None)?
                    .ideals
                    .into_iter()
                    .next();
                known.push(m.ok_or_else(|| Failure::Usage(format!("{s} is a unit")))?);
            }
            if known.is_empty() {
                known.push(lab::default_maximal_seed(c.ring)?);
            }
            let mut steps = Vec::new();
            while known.len() < count {
                let ext = lab::extend_maximal_ideals(c.ring, &known)?;
                if !ext.found.contains(&ext.s)? || known.contains(&ext.found) {
                    return Err(Error::CertificateInvalid(format!(
                        "{} is not fresh over {}",
                        ext.found, ext.s
                    ))
                    .into());
                }
                known.push(ext.found.clone());
                steps.push(ext);
            }
            known.truncate(count);
            let names: Vec<String> = known.iter().map(|m| m.to_string()).collect();
            let env = c.envelope(
                "generate-maximal-ideals",
                &inputs,
                json!({ "count": known.len(), "ideals": names, "steps": to_value(&steps) }),
            );
            ok(env, names.join("\n"))
        }
        GenKind::Irreducibles => {
            let mut known = seeds;
            if known.is_empty() {
                known.push(lab::default_irreducible_seed(c.ring)?);
            }
            let mut steps = Vec::new();
            while known.len() < count {
                let ext = lab::extend_irreducibles(c.ring, &known)?;
                let q = &ext.found;
                let fresh = known
                    .iter()
                    .all(|k| k.canonical_associate() != q.canonical_associate());
                if !ring::is_irreducible(q)? || !fresh {
                    return Err(Error::CertificateInvalid(format!(
                        "{q} is not a fresh irreducible"
                    ))
                    .into());
                }
                known.push(q.clone());
                steps.push(ext);
            }
            known.truncate(count);
            let names: Vec<String> = known.iter().map(|e| e.to_string()).collect();
            let env = c.envelope(
                "generate-irreducibles",
                &inputs,
                json!({ "count": known.len(), "irreducibles": names, "steps": to_value(&steps) }),
            );
            ok(env, names.join("\n"))
        }
    }
}

fn run_golomb(c: &Ctx, s: &str) -> Res<Outcome> {
    let k = c.parse(s)?;
    let rep = golomb_coset_invariant(&k, &c.w)?;
    let env = c.envelope("golomb", &[s], to_value(&rep));
    let text = format!(
        "sigma_{k} is a union of residue classes mod {k}: {}\nresidues: {:?}",
        rep.holds, rep.residues
    );
    Ok(Outcome {
        env,
        text,
        code: if rep.holds { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn run_units_not_open(c: &Ctx) -> Res<Outcome> {
    let ev = lab::units_not_open_evidence(c.ring, &c.w)?;
    let text: Vec<String> = ev
        .iter()
        .map(|e| {
            format!(
                "sigma_{} contains {} = 1 + ({})*({})",
                e.k, e.witness, e.r, e.k
            )
        })
        .collect();
    let env = c.envelope("units-not-open", &[], to_value(&ev));
    ok(env, text.join("\n"))
}

fn run_scan(c: &Ctx) -> Res<Outcome> {
    let scan = lab::scan_closed_principals(c.ring, &c.w)?;
    let closed: Vec<&Element> = scan.iter().filter(|(_, k)| *k).map(|(e, _)| e).collect();
    let open: Vec<&Element> = scan.iter().filter(|(_, k)| !*k).map(|(e, _)| e).collect();
    let env = c.envelope(
        "scan-closed-principals",
        &[],
        json!({ "closed": to_value(&closed), "not_closed": to_value(&open) }),
    );
    let fmt = |v: &[&Element]| {
        v.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    ok(
        env,
        format!(
            "closed ({}): {}\nnot closed ({}): {}",
            closed.len(),
            fmt(&closed),
            open.len(),
            fmt(&open)
        ),
    )
}

fn dispatch(cli: Cli) -> Res<Outcome> {
    let seed = match cli.opts.seed {
        Some(s) => s,
        None => match std::env::var("MACIAS_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("MACIAS_SEED={v:?} is not an integer")))?,
            Err(_) => 0,
        },
    };
    if cli.opts.cases == 0 {
        return Err(Failure::Usage("--cases must be positive".into()));
    }
    let rings: Vec<Ring> = cli
        .opts
        .ring
        .split(',')
        .map(|s| s.parse())
        .collect::<Result<_, Error>>()?;
    let is_verify = matches!(cli.cmd, Cmd::Verify { .. });
    if rings.len() != 1 && !is_verify {
        return Err(Failure::Usage("only `verify` accepts several rings".into()));
    }
    let ring = rings[0];
    let method: Method = cli.opts.method.parse()?;
    if method != Method::Auto && !matches!(cli.cmd, Cmd::Closure { .. }) {
        return Err(Failure::Usage("--method applies to `closure` only".into()));
    }
    let w = Ctx::window_for(ring, cli.opts.height, cli.opts.degree);
    let c = Ctx {
        ring,
        w,
        opts: cli.opts,
        seed,
    };
    match &cli.cmd {
        Cmd::Sigma { r } => run_sigma(&c, r),
        Cmd::Comax { a, b } => run_comax(&c, a, b),
        Cmd::Closure { x } => run_closure(&c, x),
        Cmd::ClosureIdeal { gens } => run_closure_ideal(&c, gens),
        Cmd::Jrad { x } => run_principal_ideal(&c, "jrad", x),
        Cmd::Radical { x } => run_principal_ideal(&c, "radical", x),
        Cmd::Gcd { a, b } => run_gcd(&c, a, b),
        Cmd::Factor { x } => run_factor(&c, x),
        Cmd::Maxideals { x, prime_bound } => run_maxideals(&c, x, *prime_bound),
        Cmd::Dense { target, budget } => run_dense(&c, target, *budget),
        Cmd::NowhereDense { gens } => run_nowhere_dense(&c, gens),
        Cmd::Verify { list, suite } => run_verify(&c, &rings, *list, suite),
        Cmd::Counterexample {
            kind: CounterKind::CoprimeNotComaximal,
        } => run_counterexample(&c),
        Cmd::Generate { kind, count, from } => run_generate(&c, *kind, *count, from),
        Cmd::Golomb { k } => run_golomb(&c, k),
        Cmd::UnitsNotOpen => run_units_not_open(&c),
        Cmd::ScanClosedPrincipals => run_scan(&c),
    }
}

/// Parses `argv` (program name first), runs the command, writes results to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    let output = cli.opts.output;
    match dispatch(cli) {
        Ok(o) => {
            let _ = match output {
                Output::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&o.env).expect("serializable")
                ),
                Output::Text => writeln!(out, "{}", o.text),
            };
            o.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
