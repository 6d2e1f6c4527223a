//! Command-line surface: evaluation, distances, convergence
//! classification, neighborhood membership, path sampling, spectrum and
//! broom emission, and a seeded self-test.
//!
//! Output is deterministic: JSON objects use sorted keys, exact rationals
//! travel as `"num/den"` strings, and the few float payloads (distances)
//! are rendered with `%.12g`. Validation problems exit with code 2 before
//! any computation; computation errors (non-integral input, unsupported
//! path pairs, exhausted precision) exit with code 1 and a JSON error
//! object on stdout.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::points::json::{
    magnitude_to_value, parse_point_str, parse_rational, point_to_value,
};
use crate::points::{point_eq, BerkPoint, DiskPoint, GammaPoint};
use crate::polynomial::parse_poly;
use crate::spectrum::{
    broom_dot, cyclotomic_factors, eisenstein_witness, group_ring_eval,
    spectrum_graph, teichmuller_roots, GroupRingElement, Side,
};
use crate::topology::{
    classify_limit, entourage_dist, nbhd_contains, path_sample, NeighborhoodDatum,
    NetSample, TestSet, Verdict,
};
use crate::valuation::{mag_of, rat, ratio, ExtRational, Prime, Rational};

#[derive(Parser)]
#[command(
    name = "berkline",
    about = "Exact computation on the Berkovich affine line over Z_p",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Zp,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a seminorm on a polynomial.
    Eval {
        #[arg(long)]
        p: u64,
        /// Point as JSON, e.g. '{"kind":"disk","s":"0","l":"1","w":"1"}'.
        #[arg(long)]
        point: String,
        /// Polynomial in sparse text syntax, e.g. 't^2+2'.
        #[arg(long)]
        poly: String,
    },
    /// Entourage distance between two points over a finite test set.
    Dist {
        #[arg(long)]
        p: u64,
        /// Exactly two points (repeat the flag).
        #[arg(long = "point", num_args = 1)]
        points: Vec<String>,
        /// Comma-separated polynomials; defaults to the canonical set.
        #[arg(long)]
        testset: Option<String>,
    },
    /// Classify the limit of a sampled net of disk points.
    Classify {
        #[arg(long)]
        p: u64,
        /// JSON file holding an array of disk point objects.
        #[arg(long)]
        net: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 10)]
        tail: usize,
        #[arg(long)]
        testset: Option<String>,
    },
    /// Test membership of a point in a neighborhood-basis set.
    Nbhd {
        #[arg(long)]
        p: u64,
        /// Datum as JSON, e.g. '{"kind":"n1","b":1,"tau":"1/2","eps":"1/4","m":3}'.
        #[arg(long)]
        datum: String,
        #[arg(long)]
        point: String,
    },
    /// Sample a path between two points.
    Path {
        #[arg(long)]
        p: u64,
        /// Exactly two points: from, then to.
        #[arg(long = "point", num_args = 1)]
        points: Vec<String>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Emit the glued-ray graph of M(Z_p[G]) for cyclic G.
    Spectrum {
        #[arg(long)]
        p: u64,
        /// Group order as p^N.
        #[arg(long = "N")]
        n: Option<u32>,
        /// Group order directly (must be p^N or divide p-1).
        #[arg(long = "M")]
        m: Option<u64>,
        #[arg(long, value_enum, default_value = "zp")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Emit the residue-field broom over F_p as DOT.
    Broom {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
    },
    /// Run the seeded invariant suite (BERKLINE_SEED overrides the seed).
    Selftest,
}

/// Parse and dispatch; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(payload) => {
            print!("{payload}");
            0
        }
        Err(e) if e.is_validation() => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            let obj = json!({
                "error": error_tag(&e),
                "message": e.to_string(),
            });
            println!("{obj}");
            1
        }
    }
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::NotIntegral(..) => "NotIntegral",
        Error::UnsupportedPair(..) => "UnsupportedPair",
        Error::WitnessFailed { .. } => "WitnessFailed",
        Error::PrecisionExhausted(..) => "PrecisionExhausted",
        Error::IrrationalPower(..) => "IrrationalPower",
        _ => "Error",
    }
}

fn dispatch(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Eval { p, point, poly } => {
            let p = Prime::new(p)?;
            let pt = parse_point_str(p, &point)?;
            let f = parse_poly(&poly)?;
            let v = pt.eval(&f)?;
            Ok(format!("{}\n", magnitude_to_value(&v)))
        }
        Cmd::Dist { p, points, testset } => {
            let p = Prime::new(p)?;
            let [a, b] = two_points(p, &points)?;
            let x = testset_arg(testset)?;
            let d = entourage_dist(&a, &b, &x)?;
            Ok(format!("{}\n", json!({ "dist": fmt_g12(d) })))
        }
        Cmd::Classify { p, net, tol, tail, testset } => {
            let p = Prime::new(p)?;
            let text = std::fs::read_to_string(&net)
                .map_err(|e| Error::InvalidNet(format!("{}: {e}", net.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidNet(e.to_string()))?;
            let net = NetSample::from_value(p, &v)?;
            let x = testset_arg(testset)?;
            let c = classify_limit(&net, tol, tail, &x)?;
            Ok(format!("{}\n", classification_to_value(&c)))
        }
        Cmd::Nbhd { p, datum, point } => {
            let p = Prime::new(p)?;
            let datum = parse_datum_str(p, &datum)?;
            let pt = parse_point_str(p, &point)?;
            let contains = nbhd_contains(&datum, &pt);
            Ok(format!("{}\n", json!({ "contains": contains })))
        }
        Cmd::Path { p, points, steps } => {
            let p = Prime::new(p)?;
            let [from, to] = two_points(p, &points)?;
            let path = path_sample(&from, &to, steps)?;
            let arr: Vec<Value> = path.iter().map(point_to_value).collect();
            Ok(format!("{}\n", Value::Array(arr)))
        }
        Cmd::Spectrum { p, n, m, side, format } => {
            let p = Prime::new(p)?;
            let order = match (n, m) {
                (Some(n), None) => p.get().checked_pow(n).ok_or(
                    Error::OrderTooLarge(u64::MAX, crate::spectrum::MAX_ORDER),
                )?,
                (None, Some(m)) => m,
                _ => {
                    return Err(Error::InvalidDatum(
                        "give exactly one of --N (order p^N) or --M".into(),
                    ))
                }
            };
            let side = match side {
                SideArg::Zp => Side::Zp,
                SideArg::Closed => Side::Closed,
            };
            let graph = spectrum_graph(p, order, side)?;
            match format {
                FormatArg::Dot => Ok(graph.to_dot()),
                FormatArg::Json => Ok(format!("{}\n", graph.to_json()?)),
            }
        }
        Cmd::Broom { p, maxdeg } => {
            let p = Prime::new(p)?;
            broom_dot(p, maxdeg)
        }
        Cmd::Selftest => selftest(),
    }
}

fn two_points(p: Prime, texts: &[String]) -> Result<[BerkPoint; 2]> {
    if texts.len() != 2 {
        return Err(Error::InvalidPoint(format!(
            "expected exactly two --point flags, got {}",
            texts.len()
        )));
    }
    Ok([parse_point_str(p, &texts[0])?, parse_point_str(p, &texts[1])?])
}

fn testset_arg(arg: Option<String>) -> Result<TestSet> {
    match arg {
        None => Ok(TestSet::canonical()),
        Some(text) => {
            let polys = text
                .split(',')
                .map(parse_poly)
                .collect::<Result<Vec<_>>>()?;
            TestSet::new(polys)
        }
    }
}

/// Datum JSON: `{"kind":"n1","b":1,"tau":"1/2","eps":"1/4","m":3}`,
/// `{"kind":"n2","tau":"2","eps":"1/2","m":1}`,
/// `{"kind":"n3","X":[0,1],"eps":"1/2","m":1}`.
fn parse_datum_str(p: Prime, text: &str) -> Result<NeighborhoodDatum> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidDatum("datum must be a JSON object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidDatum("missing \"kind\"".into()))?;
    let eps = rational_field(obj, "eps")?;
    let m = obj
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidDatum("missing integer \"m\"".into()))?;
    match kind {
        "n1" | "N1" => {
            let b = obj
                .get("b")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidDatum("N1 needs integer \"b\"".into()))?;
            NeighborhoodDatum::n1(p, b, rational_field(obj, "tau")?, eps, m)
        }
        "n2" | "N2" => NeighborhoodDatum::n2(p, rational_field(obj, "tau")?, eps, m),
        "n3" | "N3" => {
            let xs = obj
                .get("X")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidDatum("N3 needs an \"X\" array".into()))?;
            let residues = xs
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| Error::InvalidDatum("X holds integers".into()))
                })
                .collect::<Result<BTreeSet<u64>>>()?;
            NeighborhoodDatum::n3(p, residues, eps, m)
        }
        other => Err(Error::InvalidDatum(format!(
            "unknown kind {other:?} (expected n1|n2|n3)"
        ))),
    }
}

fn rational_field(obj: &Map<String, Value>, key: &str) -> Result<Rational> {
    let s = obj
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidDatum(format!("missing rational \"{key}\"")))?;
    parse_rational(s)
}

fn classification_to_value(c: &crate::topology::Classification) -> Value {
    let parameters = match &c.verdict {
        Verdict::Interior { representative } => json!({
            "representative": point_to_value(&BerkPoint::Disk(representative.clone())),
        }),
        Verdict::C1 { b, tau1 } => json!({
            "b": b.to_string(),
            "tau1": magnitude_to_value(tau1),
        }),
        Verdict::C2 { tau2 } => json!({ "tau2": magnitude_to_value(tau2) }),
        Verdict::C3 | Verdict::Divergent | Verdict::Inconclusive => json!({}),
    };
    let distances: Vec<Value> =
        c.distances.iter().map(|d| Value::String(fmt_g12(*d))).collect();
    let mut out = Map::new();
    out.insert("verdict".into(), c.verdict.name().into());
    out.insert("parameters".into(), parameters);
    if let Some(limit) = &c.limit {
        out.insert("limit".into(), point_to_value(limit));
    }
    out.insert("distances".into(), Value::Array(distances));
    Value::Object(out)
}

/// `%.12g`: 12 significant digits, fixed notation for exponents in
/// `[-4, 12)`, scientific with a two-digit exponent otherwise.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.11e}", x);
    let epos = sci.find('e').unwrap();
    let exp: i32 = sci[epos + 1..].parse().unwrap();
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let mant = trim_zeros(sci[..epos].to_string());
        format!("{}e{}{:02}", mant, if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

// ---------------------------------------------------------------------
// selftest

fn seed() -> u64 {
    std::env::var("BERKLINE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xBE44)
}

fn check(name: &str, ok: bool, report: &mut String) -> Result<()> {
    if !ok {
        return Err(Error::SelftestFailed(name.into()));
    }
    report.push_str("ok: ");
    report.push_str(name);
    report.push('\n');
    Ok(())
}

fn rand_rational(rng: &mut ChaCha8Rng, avoid_p: Option<u64>) -> Rational {
    let num = rng.gen_range(-100i64..=100);
    let mut den = rng.gen_range(1i64..=100);
    if let Some(p) = avoid_p {
        while den % p as i64 == 0 {
            den += 1;
        }
    }
    ratio(num, den)
}

fn rand_poly(rng: &mut ChaCha8Rng, maxdeg: usize, avoid_p: Option<u64>) -> crate::RationalPoly {
    let deg = rng.gen_range(0..=maxdeg);
    crate::RationalPoly::new((0..=deg).map(|_| rand_rational(rng, avoid_p)).collect())
}

/// A fast seeded pass over the crate's core invariants.
fn selftest() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut report = String::new();
    let p2 = Prime::new(2)?;
    let p3 = Prime::new(3)?;

    // magnitude algebra
    let mut ok = true;
    for _ in 0..200 {
        let (x, y) = (rand_rational(&mut rng, None), rand_rational(&mut rng, None));
        ok &= mag_of(&(&x * &y), p2) == mag_of(&x, p2).mul(&mag_of(&y, p2));
        let (mx, my, ms) = (mag_of(&x, p3), mag_of(&y, p3), mag_of(&(&x + &y), p3));
        let bound = mx.clone().max(my.clone());
        ok &= ms <= bound && (mx == my || ms == bound);
    }
    check("magnitude multiplicativity and ultrametric", ok, &mut report)?;

    // shift round-trip and linear resultant oracle
    let mut ok = true;
    for _ in 0..50 {
        let f = rand_poly(&mut rng, 5, None);
        let s = rand_rational(&mut rng, None);
        ok &= f.taylor_shift(&s).taylor_shift(&(-s.clone())) == f;
        let b = rand_rational(&mut rng, None);
        let q = crate::RationalPoly::var_minus(&b);
        ok &= crate::polynomial::resultant(&q, &f)? == f.eval(&b);
    }
    check("taylor shift round-trip and resultant oracle", ok, &mut report)?;

    // seminorm multiplicativity across variants
    let pts: Vec<BerkPoint> = vec![
        DiskPoint::new(p2, rat(0), ExtRational::from_int(1), rat(1))?.into(),
        DiskPoint::new(p2, ratio(1, 3), ExtRational::finite(ratio(1, 2)), ratio(3, 2))?.into(),
        DiskPoint::new(p2, rat(5), ExtRational::Infinity, rat(7))?.into(),
        GammaPoint::linear(p2, 1, ratio(1, 3))?.into(),
        GammaPoint::linear(p2, 0, rat(0))?.into(),
        GammaPoint::linear(p2, 1, rat(1))?.into(),
    ];
    let mut ok = true;
    for _ in 0..50 {
        let f = rand_poly(&mut rng, 4, Some(2));
        let g = rand_poly(&mut rng, 4, Some(2));
        for pt in &pts {
            let fg = pt.eval(&(&f * &g))?;
            ok &= fg == pt.eval(&f)?.mul(&pt.eval(&g)?);
        }
    }
    check("seminorm multiplicativity on disk and gamma points", ok, &mut report)?;

    // cyclotomic factorization and witnesses
    let mut ok = true;
    for (pv, n) in [(2u64, 3u32), (3, 2), (5, 1)] {
        let pr = Prime::new(pv)?;
        let factors = cyclotomic_factors(pr, n)?;
        let mut prod = crate::RationalPoly::one();
        for q in &factors {
            prod = &prod * q;
        }
        let order = pv.pow(n) as usize;
        ok &= prod.degree() == Some(order) && prod.coeff(0) == rat(-1);
        for l in 0..n {
            eisenstein_witness(pr, l)?;
        }
    }
    check("cyclotomic factorization and Eisenstein witnesses", ok, &mut report)?;

    // spectrum combinatorics and separating values
    let g = spectrum_graph(p2, 4, Side::Zp)?;
    let gc = spectrum_graph(p2, 4, Side::Closed)?;
    let g54 = spectrum_graph(Prime::new(5)?, 4, Side::Zp)?;
    let mut ok = g.rays().len() == 3
        && g.junctions().len() == 1
        && gc.rays().len() == 4
        && g54.rays().len() == 4
        && g54.junctions().len() == 4;
    let x = GroupRingElement::u_minus_one(p2, 8)?;
    ok &= group_ring_eval(&x, 0, &rat(1))?.is_zero();
    let values: Vec<_> = (1..=3)
        .map(|k| group_ring_eval(&x, k, &rat(1)))
        .collect::<Result<Vec<_>>>()?;
    ok &= values.windows(2).all(|w| w[0] != w[1]);
    check("spectrum ray counts and separating element", ok, &mut report)?;

    // Teichmuller lifts
    let lifts = teichmuller_roots(Prime::new(5)?, 4, 8)?;
    let modulus = num_bigint::BigUint::from(5u64).pow(8);
    let one = num_bigint::BigUint::from(1u64);
    let ok = lifts.len() == 4
        && lifts
            .iter()
            .all(|x| x.modpow(&num_bigint::BigUint::from(4u64), &modulus) == one);
    check("Teichmuller lifts", ok, &mut report)?;

    // the three convergence families
    let mut ok = true;
    for (b, kl, want) in [(1i64, 1i64, "C1"), (0, -1, "C2"), (0, 0, "C3")] {
        let samples = (1..=30)
            .map(|n| {
                DiskPoint::new(p2, rat(b), ExtRational::finite(ratio(kl, n)), rat(n))
            })
            .collect::<Result<Vec<_>>>()?;
        let net = NetSample::new(samples)?;
        let c = classify_limit(&net, 1e-6, 10, &TestSet::canonical())?;
        ok &= c.verdict.name() == want;
        ok &= c.distances.last().copied().unwrap_or(1.0) < 1e-4;
    }
    check("convergence classifier families", ok, &mut report)?;

    // CLI round-trip of every point shape
    let pts = [
        pts[0].clone(),
        pts[3].clone(),
        crate::ChainPoint::new(
            p2,
            vec![(rat(0), ExtRational::from_int(0)), (rat(2), ExtRational::from_int(2))],
            rat(2),
        )?
        .into(),
    ];
    let ok = pts.iter().all(|pt| {
        let text = point_to_value(pt).to_string();
        parse_point_str(p2, &text).map(|back| point_eq(pt, &back)).unwrap_or(false)
    });
    check("point JSON round-trip", ok, &mut report)?;

    report.push_str("selftest: ok\n");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_formatting() {
        assert_eq!(fmt_g12(0.0), "0");
        assert_eq!(fmt_g12(0.25), "0.25");
        assert_eq!(fmt_g12(1.0), "1");
        assert_eq!(fmt_g12(2.0), "2");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(1e-5), "1e-05");
        assert_eq!(fmt_g12(-1.5e-7), "-1.5e-07");
        assert_eq!(fmt_g12(1e12), "1e+12");
        assert_eq!(fmt_g12(123456789.0), "123456789");
        assert_eq!(fmt_g12(1.0625), "1.0625");
    }

    #[test]
    fn selftest_passes() {
        assert!(selftest().unwrap().ends_with("selftest: ok\n"));
    }

    #[test]
    fn datum_parsing() {
        let p = Prime::new(2).unwrap();
        assert!(parse_datum_str(p, r#"{"kind":"n1","b":1,"tau":"1/2","eps":"1/4","m":3}"#).is_ok());
        assert!(parse_datum_str(p, r#"{"kind":"n2","tau":"2","eps":"1/2","m":1}"#).is_ok());
        assert!(parse_datum_str(p, r#"{"kind":"n3","X":[0,1],"eps":"1/2","m":1}"#).is_ok());
        assert!(parse_datum_str(p, r#"{"kind":"n3","X":[1],"eps":"1/2","m":1}"#).is_err());
        assert!(parse_datum_str(p, r#"{"kind":"n9"}"#).is_err());
    }
}
