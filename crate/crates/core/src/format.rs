//! The `pform/1` JSON document and JSON renderings of analysis results.
//!
//! ```json
//! {"format": "pform/1", "d": 1, "m": 2, "Q": [["1"]], "t": [["1/2"]], "meta": {"name": "..."}}
//! ```
//!
//! Rationals are strings `"p/q"` or `"p"`; `t` lists the `m - 1` stored
//! translations, each of length `d`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::certify::{Certificate, Direction, EutaxyStatus};
use crate::linalg::{Pqf, SymForm, TangentVector};
use crate::periodic::{DensityReport, GeneralizedMin, MinRep, PeriodicForm};
use crate::rational::{format as fmt_rat, parse, Rational};
use crate::{Error, Result};

pub const FORMAT_TAG: &str = "pform/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Document {
    format: String,
    d: usize,
    m: usize,
    #[serde(rename = "Q")]
    q: Vec<Vec<Value>>,
    #[serde(default)]
    t: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    meta: Map<String, Value>,
}

fn rational_of(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse(s),
        Value::Number(n) if n.is_i64() => Ok(crate::rational::int(n.as_i64().unwrap())),
        other => Err(Error::Parse(format!("expected a rational string, found {other}"))),
    }
}

/// Parses a document into a form and its metadata.
pub fn parse_document(text: &str) -> Result<(PeriodicForm, Map<String, Value>)> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.format != FORMAT_TAG {
        return Err(Error::Parse(format!("unsupported format `{}`", doc.format)));
    }
    if doc.m == 0 {
        return Err(Error::Parse("m must be at least 1".into()));
    }
    if doc.q.len() != doc.d || doc.q.iter().any(|r| r.len() != doc.d) {
        return Err(Error::Parse(format!("Q must be {0} x {0}", doc.d)));
    }
    if doc.t.len() != doc.m - 1 || doc.t.iter().any(|c| c.len() != doc.d) {
        return Err(Error::Parse(format!(
            "t must hold {} translations of length {}",
            doc.m - 1,
            doc.d
        )));
    }
    let rows = doc
        .q
        .iter()
        .map(|r| r.iter().map(rational_of).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let t = doc
        .t
        .iter()
        .map(|c| c.iter().map(rational_of).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let q = Pqf::new(SymForm::from_rows(&rows)?)?;
    Ok((PeriodicForm::new(q, t)?, doc.meta))
}

pub fn to_document(x: &PeriodicForm, meta: &Map<String, Value>) -> String {
    let doc = Document {
        format: FORMAT_TAG.into(),
        d: x.d(),
        m: x.m(),
        q: x
            .q()
            .form()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|v| Value::String(fmt_rat(v))).collect())
            .collect(),
        t: x
            .translations()
            .iter()
            .map(|c| c.iter().map(|v| Value::String(fmt_rat(v))).collect())
            .collect(),
        meta: meta.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("documents always serialize")
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

pub fn tangent(n: &TangentVector) -> Value {
    json!({
        "Q": n.qpart.to_rows().iter().map(|r| rationals(r)).collect::<Vec<_>>(),
        "t": n.tpart.iter().map(|c| rationals(c)).collect::<Vec<_>>(),
    })
}

pub fn min_rep(r: &MinRep) -> Value {
    json!({"i": r.i, "j": r.j, "v": r.v, "w": rationals(&r.w)})
}

pub fn min_report(g: &GeneralizedMin) -> Value {
    json!({
        "lambda": fmt_rat(&g.lambda),
        "degenerate": g.lambda == Rational::from_integer(0.into()),
        "classes": g.reps.len(),
        "reps": g.reps.iter().map(min_rep).collect::<Vec<_>>(),
    })
}

pub fn density_report(r: &DensityReport) -> Value {
    json!({
        "lambda": fmt_rat(&r.lambda),
        "det": fmt_rat(&r.det),
        "m": r.m,
        "center_density_squared": fmt_rat(&r.center_density_squared),
        "delta_over_ball": r.delta_over_ball,
        "delta": r.delta,
    })
}

pub fn direction(dir: &Direction) -> Value {
    json!({
        "N": tangent(&dir.n),
        "epsilon": fmt_rat(&dir.epsilon),
        "center_density_squared_before": fmt_rat(&dir.center_density_squared_before),
        "center_density_squared_after": fmt_rat(&dir.center_density_squared_after),
    })
}

pub fn eutaxy(e: &EutaxyStatus) -> Value {
    match e {
        EutaxyStatus::Interior { coefficients } => json!({
            "status": "Interior",
            "coefficients": rationals(coefficients),
        }),
        EutaxyStatus::Boundary { face, coefficients } => json!({
            "status": "Boundary",
            "face": face,
            "coefficients": rationals(coefficients),
        }),
        EutaxyStatus::Outside { separator } => json!({
            "status": "Outside",
            "separator": tangent(separator),
        }),
    }
}

/// Full certificate including the exact witnesses: the minimal
/// representations fix the generators, so a reader can recompute every
/// generator and check the stored coefficients or separator.
pub fn certificate(c: &Certificate) -> Value {
    let mut v = json!({
        "verdict": c.verdict.name(),
        "lambda": fmt_rat(&c.lambda),
        "reps": c.reps.iter().map(min_rep).collect::<Vec<_>>(),
        "perfection": {
            "perfect": c.perfection.perfect,
            "rank": c.perfection.rank,
            "ambient_dim": c.perfection.ambient_dim,
        },
        "eutaxy": eutaxy(&c.eutaxy),
        "floating": {
            "components": c.floating,
            "is_floating": c.is_floating(),
        },
    });
    let obj = v.as_object_mut().expect("object literal");
    if let Some(dir) = &c.improving {
        obj.insert("improving".into(), direction(dir));
    }
    if let Some(u) = &c.uncertainty {
        obj.insert(
            "uncertainty".into(),
            json!({
                "dim": u.basis.len(),
                "is_subspace": u.is_subspace,
                "basis": u.basis.iter().map(tangent).collect::<Vec<_>>(),
            }),
        );
    }
    if let Some(t) = &c.translational {
        obj.insert(
            "translational_criterion".into(),
            json!({"holds": t.holds, "witness": t.witness.map(|(i, j)| vec![i, j])}),
        );
    }
    if let Some(s) = &c.strong_eutaxy {
        obj.insert(
            "strong_eutaxy".into(),
            json!({
                "strongly_eutactic": s.strongly_eutactic,
                "alpha": s.alpha.as_ref().map(fmt_rat),
            }),
        );
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn parses_example() {
        let text = r#"{"format":"pform/1","d":1,"m":2,"Q":[["1"]],"t":[["1/2"]],"meta":{"name":"half"}}"#;
        let (x, meta) = parse_document(text).unwrap();
        assert_eq!(x.m(), 2);
        assert_eq!(x.translations()[0], vec![rat(1, 2)]);
        assert_eq!(meta["name"], "half");
    }

    #[test]
    fn rejects_bad_documents() {
        for text in [
            r#"{"format":"pform/2","d":1,"m":1,"Q":[["1"]],"t":[]}"#,
            r#"{"format":"pform/1","d":2,"m":1,"Q":[["1"]],"t":[]}"#,
            r#"{"format":"pform/1","d":1,"m":2,"Q":[["1"]],"t":[]}"#,
            r#"{"format":"pform/1","d":1,"m":1,"Q":[["x"]],"t":[]}"#,
            r#"{"format":"pform/1","d":2,"m":1,"Q":[["1","1"],["0","1"]],"t":[]}"#,
            r#"{"format":"pform/1","d":1,"m":1,"Q":[["-1"]],"t":[]}"#,
            r#"not json"#,
        ] {
            assert!(parse_document(text).is_err(), "{text}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in proptest::collection::vec((-50i64..50, 1i64..50), 4), t in proptest::collection::vec((-50i64..50, 1i64..50), 4)) {
            // Q = B^t B + I with B from the sampled rationals
            let b: Vec<Rational> = n.iter().map(|&(p, q)| rat(p, q)).collect();
            let rows = vec![
                vec![&b[0] * &b[0] + &b[2] * &b[2] + int(1), &b[0] * &b[1] + &b[2] * &b[3]],
                vec![&b[0] * &b[1] + &b[2] * &b[3], &b[1] * &b[1] + &b[3] * &b[3] + int(1)],
            ];
            let q = Pqf::new(SymForm::from_rows(&rows).unwrap()).unwrap();
            let tr: Vec<Vec<Rational>> = t.chunks(2).map(|c| c.iter().map(|&(p, q)| rat(p, q)).collect()).collect();
            let x = PeriodicForm::new(q, tr).unwrap();
            let text = to_document(&x, &Map::new());
            let (y, _) = parse_document(&text).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}
