//! JSON interchange for points and magnitudes.
//!
//! Exact rationals travel as `"num/den"` strings (`"num"` when the
//! denominator is 1), never as floats; `+inf` travels as `"inf"`. The
//! prime is carried out of band (a `--p` flag on the CLI), so point
//! objects hold only the seminorm data:
//!
//! ```text
//! {"kind":"disk","s":"0","l":"1","w":"1"}
//! {"kind":"chain","disks":[["1","0"],["5","2"]],"w":"2"}
//! {"kind":"gamma","q":"t + 1","kappa":"1/4","phi":{"q":"t + 1","delta":"-3/4"}}
//! ```
//!
//! The `phi` block on gamma points is display metadata (the coordinate of
//! the point in the product-space chart, `delta = kappa - 1`); it is
//! ignored on input.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::polynomial::{parse_poly, reduce_mod_p};
use crate::valuation::{ExtRational, Magnitude, Prime, Rational};

use super::{BerkPoint, ChainPoint, DiskPoint, GammaPoint};

/// `"num/den"`, reduced, with `/1` elided.
pub fn rational_str(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `"num/den"` or `"inf"`.
pub fn ext_rational_str(x: &ExtRational) -> String {
    match x {
        ExtRational::Finite(v) => rational_str(v),
        ExtRational::Infinity => "inf".into(),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Json(format!("expected exact rational \"num/den\", got {s:?}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from(num))
        }
    }
}

pub fn parse_ext_rational(s: &str) -> Result<ExtRational> {
    if s.trim() == "inf" {
        Ok(ExtRational::Infinity)
    } else {
        Ok(ExtRational::Finite(parse_rational(s)?))
    }
}

/// Magnitude as `{"logval": ...}` plus a `"unit"` key when the value is
/// not a pure p-power.
pub fn magnitude_to_value(m: &Magnitude) -> Value {
    let mut map = Map::new();
    map.insert("logval".into(), ext_rational_str(&m.logval()).into());
    if let Some(unit) = m.unit() {
        if !unit.is_one() {
            map.insert("unit".into(), rational_str(unit).into());
        }
    }
    Value::Object(map)
}

pub fn point_to_value(pt: &BerkPoint) -> Value {
    match pt {
        BerkPoint::Disk(d) => json!({
            "kind": "disk",
            "s": rational_str(d.center()),
            "l": ext_rational_str(d.radius_log()),
            "w": rational_str(d.omega()),
        }),
        BerkPoint::Chain(c) => json!({
            "kind": "chain",
            "disks": c
                .disks()
                .iter()
                .map(|(s, l)| json!([rational_str(s), ext_rational_str(l)]))
                .collect::<Vec<_>>(),
            "w": rational_str(c.omega()),
        }),
        BerkPoint::Gamma(g) => json!({
            "kind": "gamma",
            "q": g.q().to_string(),
            "kappa": rational_str(g.kappa()),
            "phi": {
                "q": g.q().to_string(),
                "delta": rational_str(&g.phi_delta()),
            },
        }),
    }
}

pub fn point_from_value(p: Prime, v: &Value) -> Result<BerkPoint> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Json("point must be a JSON object".into()))?;
    let kind = str_field(obj, "kind")?;
    match kind {
        "disk" => {
            let s = parse_rational(str_field(obj, "s")?)?;
            let l = parse_ext_rational(str_field(obj, "l")?)?;
            let w = parse_rational(str_field(obj, "w")?)?;
            Ok(DiskPoint::new(p, s, l, w)?.into())
        }
        "chain" => {
            let arr = obj
                .get("disks")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("chain needs a \"disks\" array".into()))?;
            let mut disks = Vec::with_capacity(arr.len());
            for entry in arr {
                let pair = entry
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Json("each disk is a [s, l] pair".into()))?;
                let s = parse_rational(str_value(&pair[0])?)?;
                let l = parse_ext_rational(str_value(&pair[1])?)?;
                disks.push((s, l));
            }
            let w = parse_rational(str_field(obj, "w")?)?;
            Ok(ChainPoint::new(p, disks, w)?.into())
        }
        "gamma" => {
            let q_text = str_field(obj, "q")?;
            let q = reduce_mod_p(&parse_poly(q_text)?, p)?;
            let kappa = parse_rational(str_field(obj, "kappa")?)?;
            Ok(GammaPoint::new(p, q, kappa)?.into())
        }
        other => Err(Error::Json(format!(
            "unknown point kind {other:?} (expected disk|chain|gamma)"
        ))),
    }
}

pub fn parse_point_str(p: Prime, text: &str) -> Result<BerkPoint> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    point_from_value(p, &v)
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json(format!("missing string field \"{key}\"")))
}

fn str_value(v: &Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::Json("expected a JSON string".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::point_eq;
    use crate::valuation::{rat, ratio};
    use proptest::prelude::*;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    #[test]
    fn parses_the_cli_example() {
        let pt = parse_point_str(p2(), r#"{"kind":"disk","s":"0","l":"1","w":"1"}"#).unwrap();
        let expected: BerkPoint = DiskPoint::new(p2(), rat(0), ExtRational::from_int(1), rat(1))
            .unwrap()
            .into();
        assert!(point_eq(&pt, &expected));
    }

    #[test]
    fn gamma_carries_phi_metadata() {
        let g: BerkPoint = GammaPoint::linear(p2(), 1, ratio(1, 4)).unwrap().into();
        let v = point_to_value(&g);
        assert_eq!(v["phi"]["delta"], "-3/4");
        // phi is ignored on the way back in
        let back = point_from_value(p2(), &v).unwrap();
        assert!(point_eq(&back, &g));
    }

    #[test]
    fn rejects_malformed_points(){
        assert!(parse_point_str(p2(), r#"{"kind":"disk","s":"0.5","l":"1","w":"1"}"#).is_err());
        assert!(parse_point_str(p2(), r#"{"kind":"torus"}"#).is_err());
        assert!(parse_point_str(p2(), "[1,2]").is_err());
        assert!(parse_point_str(p2(), r#"{"kind":"disk","s":"1/0","l":"0","w":"1"}"#).is_err());
    }

    fn arb_point() -> impl Strategy<Value = BerkPoint> {
        let disk = (
            (-99i64..=99, 1i64..=40),
            proptest::option::of((-6i64..=12, 1i64..=4)),
            (1i64..=9, 1i64..=3),
        )
            .prop_map(|((sn, sd), l, (wn, wd))| {
                let l = l.map_or(ExtRational::Infinity, |(n, d)| {
                    ExtRational::finite(ratio(n, d))
                });
                let w = rat(1) + ratio(wn - 1, wd);
                DiskPoint::new(p2(), ratio(sn, sd), l, w).unwrap().into()
            });
        let gamma = (0u64..2, 0i64..=3).prop_map(|(c, kn)| {
            GammaPoint::linear(p2(), c, ratio(kn, 3)).unwrap().into()
        });
        let chain = (-40i64..=40, 0i64..=3, (1i64..=5)).prop_map(|(s, l, w)| {
            let d0 = (rat(s), ExtRational::from_int(l));
            let d1 = (rat(s) + power_of_two(l), ExtRational::from_int(l + 2));
            ChainPoint::new(p2(), vec![d0, d1], rat(w)).unwrap().into()
        });
        prop_oneof![disk, gamma, chain]
    }

    fn power_of_two(e: i64) -> Rational {
        let mut acc = rat(1);
        for _ in 0..e.unsigned_abs() {
            acc *= rat(2);
        }
        if e >= 0 {
            acc
        } else {
            acc.recip()
        }
    }

    proptest! {
        #[test]
        fn json_roundtrip(pt in arb_point()) {
            let text = serde_json::to_string(&point_to_value(&pt)).unwrap();
            let back = parse_point_str(p2(), &text).unwrap();
            prop_assert!(point_eq(&pt, &back));
        }
    }
}
