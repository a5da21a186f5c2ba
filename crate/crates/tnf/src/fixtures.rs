//! Built-in (f, F) pairs with their expected outcomes.

use serde_json::{json, Value};

use crate::config::ConfigDoc;

/// Which decider a fixture is run through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Checker {
    /// `check_tnorm` for t-norms, `check_assoc_subnorm` otherwise.
    Auto,
    /// `check_assoc_ordinal`.
    Ordinal,
}

pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub config: ConfigDoc,
    pub checker: Checker,
    pub verdict: &'static str,
    pub closed_form: Option<fn(f64, f64) -> f64>,
    /// `(x, y, z, T(T(x,y),z), T(x,T(y,z)))`
    pub witness: Option<[f64; 5]>,
    /// Text the trace has to contain.
    pub trace_mentions: Option<&'static str>,
    pub class: Option<&'static str>,
    /// One of the reference examples rather than a corpus extra.
    pub reference: bool,
}

fn lin(slope: Value, intercept: Value) -> Value {
    json!({"kind": "linear", "params": {"slope": slope, "intercept": intercept}})
}

fn expo(offset: Value, scale: Value, rate: Value) -> Value {
    json!({"kind": "exponential", "params": {"offset": offset, "scale": scale, "rate": rate}})
}

fn piece(left: Value, form: Value, at: Value) -> Value {
    json!({"left": left, "form": form, "value_at_left": at})
}

fn sum(sem: &str, parts: &[(f64, f64, Value)]) -> Value {
    let summands: Vec<Value> = parts.iter().map(|(a, b, c)| json!({"a": a, "b": b, "child": c})).collect();
    json!({"kind": "ordinal_sum", "semantics": sem, "summands": summands})
}

fn node(kind: &str) -> Value {
    json!({ "kind": kind })
}

fn doc(pieces: Vec<Value>, end: Value, tnorm: Value) -> ConfigDoc {
    let v = json!({"generator": {"pieces": pieces, "value_at_one": end}, "tnorm": tnorm});
    serde_json::from_value(v).expect("fixture config")
}

/// `0.5 + 0.5 e^(2x-2)` for `x > 0.5`
fn upper_exp() -> Value {
    expo(json!(0.5), json!("0.5*exp(-2)"), json!(2))
}

fn luk_prod() -> Value {
    sum("closed_square", &[(0.0, 0.5, node("lukasiewicz")), (0.5, 1.0, node("product"))])
}

fn ex31_jump(at_half: f64) -> ConfigDoc {
    doc(
        vec![piece(json!(0), lin(json!(0.5), json!(0)), json!(0)), piece(json!(0.5), lin(json!(1), json!(0)), json!(at_half))],
        json!(1),
        luk_prod(),
    )
}

fn ex31_iv() -> ConfigDoc {
    doc(
        vec![piece(json!(0), lin(json!(0.5), json!(0)), json!(0)), piece(json!(0.5), upper_exp(), json!(0.25))],
        json!(1),
        luk_prod(),
    )
}

fn min(x: f64, y: f64) -> f64 {
    x.min(y)
}

fn upper_luk(x: f64, y: f64) -> f64 {
    0.5 + 0.5 * (2.0 * x + 2.0 * y - 3.0).max(0.0)
}

fn upper_prod(x: f64, y: f64) -> f64 {
    0.5 + 0.5 * (2.0 * x - 1.0) * (2.0 * y - 1.0)
}

fn cf_31_i(x: f64, y: f64) -> f64 {
    (x + y - 1.0).max(0.0)
}

fn cf_31_ii(x: f64, y: f64) -> f64 {
    if x <= 0.5 && y <= 0.5 {
        0.0
    } else if x > 0.5 && y > 0.5 {
        upper_prod(x, y)
    } else {
        min(x, y)
    }
}

fn cf_31_iii(x: f64, y: f64) -> f64 {
    if x < 0.5 && y < 0.5 {
        0.0
    } else if x >= 0.5 && y >= 0.5 {
        upper_prod(x, y)
    } else {
        min(x, y)
    }
}

fn cf_31_iv(x: f64, y: f64) -> f64 {
    if x <= 0.5 && y <= 0.5 {
        0.0
    } else if x > 0.5 && y > 0.5 {
        upper_luk(x, y)
    } else {
        min(x, y)
    }
}

fn cf_41_ii(x: f64, y: f64) -> f64 {
    if x > 0.5 && y > 0.5 {
        upper_luk(x, y)
    } else {
        min(x, y)
    }
}

fn cf_41_iii(x: f64, y: f64) -> f64 {
    if x < 0.5 && y < 0.5 {
        1.6 * x * y
    } else if x > 0.5 && y > 0.5 {
        upper_luk(x, y)
    } else {
        min(x, y)
    }
}

fn cf_scaled(x: f64, y: f64) -> f64 {
    0.5 * x * y
}

fn cf_hole(x: f64, y: f64) -> f64 {
    if x > 0.25 && x <= 0.75 && y > 0.25 && y <= 0.75 {
        0.25
    } else {
        min(x, y)
    }
}

pub fn all() -> Vec<Fixture> {
    let e1 = (-1.0f64).exp();
    let identity = || vec![piece(json!(0), lin(json!(1), json!(0)), json!(0))];
    vec![
        Fixture {
            id: "3.1.i",
            title: "f = e^(x-1), F = product",
            config: doc(vec![piece(json!(0), expo(json!(0), json!("exp(-1)"), json!(1)), json!(e1))], json!(1), node("product")),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_31_i),
            witness: None,
            trace_mentions: None,
            class: Some("OrdinallyIrreducible"),
            reference: true,
        },
        Fixture {
            id: "3.1.ii",
            title: "h(x) = x/2 below 0.5, f(0.5) = 0.25, F = Luk (+) product",
            config: ex31_jump(0.25),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_31_ii),
            witness: None,
            trace_mentions: None,
            class: Some("NonTrivialOrdinalSum"),
            reference: true,
        },
        Fixture {
            id: "3.1.iii",
            title: "as 3.1.ii with f(0.5) = 0.5",
            config: ex31_jump(0.5),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_31_iii),
            witness: None,
            trace_mentions: None,
            class: Some("NonTrivialOrdinalSum"),
            reference: true,
        },
        Fixture {
            id: "3.1.iv",
            title: "h(x) = x/2, 0.5 + 0.5 e^(2x-2) above 0.5, F = Luk (+) product",
            config: ex31_iv(),
            checker: Checker::Auto,
            verdict: "Refuted",
            closed_form: Some(cf_31_iv),
            witness: Some([0.75, 0.75, 0.5, 0.0, 0.5]),
            trace_mentions: None,
            class: Some("NotAssociative"),
            reference: true,
        },
        Fixture {
            id: "4.1.i",
            title: "the pair of 3.1.iv through the ordinal-sum decider",
            config: ex31_iv(),
            checker: Checker::Ordinal,
            verdict: "Refuted",
            closed_form: None,
            witness: None,
            trace_mentions: Some("(ii)"),
            class: None,
            reference: true,
        },
        Fixture {
            id: "4.1.ii",
            title: "f = 0.2x + 0.3, then 0.5 + 0.5 e^(2x-2); F = nilpotent min (+) product",
            config: doc(
                vec![piece(json!(0), lin(json!(0.2), json!(0.3)), json!(0.3)), piece(json!(0.5), upper_exp(), json!(0.4))],
                json!(1),
                sum("closed_square", &[(0.0, 0.5, node("nilpotent_min")), (0.5, 1.0, node("product"))]),
            ),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_41_ii),
            witness: None,
            trace_mentions: Some("(iii)"),
            class: Some("NonTrivialOrdinalSum"),
            reference: true,
        },
        Fixture {
            id: "4.1.iii",
            title: "f = 0.8x, then 0.5 + 0.5 e^(2x-2) from 0.5 on; F = product (+) product",
            config: doc(
                vec![piece(json!(0), lin(json!(0.8), json!(0)), json!(0)), piece(json!(0.5), upper_exp(), json!(0.5 + 0.5 * e1))],
                json!(1),
                sum("closed_square", &[(0.0, 0.5, node("product")), (0.5, 1.0, node("product"))]),
            ),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_41_iii),
            witness: None,
            trace_mentions: None,
            class: Some("NonTrivialOrdinalSum"),
            reference: true,
        },
        Fixture {
            id: "6.tm",
            title: "f = 0.5 + 0.5x, F = nilpotent min",
            config: doc(vec![piece(json!(0), lin(json!(0.5), json!(0.5)), json!(0.5))], json!(1), node("nilpotent_min")),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(min),
            witness: None,
            trace_mentions: None,
            class: Some("TM"),
            reference: true,
        },
        Fixture {
            id: "id.min",
            title: "identity, F = min",
            config: doc(identity(), json!(1), node("min")),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(min),
            witness: None,
            trace_mentions: None,
            class: Some("TM"),
            reference: false,
        },
        Fixture {
            id: "id.product",
            title: "identity, F = product",
            config: doc(identity(), json!(1), node("product")),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(|x, y| x * y),
            witness: None,
            trace_mentions: None,
            class: Some("OrdinallyIrreducible"),
            reference: false,
        },
        Fixture {
            id: "hole.zero",
            title: "identity, F = zero subnorm on (0.25,0.75]^2, min elsewhere",
            config: doc(identity(), json!(1), sum("half_open", &[(0.25, 0.75, node("zero_subnorm"))])),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_hole),
            witness: None,
            trace_mentions: None,
            class: Some("NonTrivialOrdinalSum"),
            reference: false,
        },
        Fixture {
            id: "sub.scaled",
            title: "identity, F = xy/2",
            config: doc(identity(), json!(1), json!({"kind": "scaled", "lambda": 0.5, "inner": {"kind": "product"}})),
            checker: Checker::Auto,
            verdict: "Proven",
            closed_form: Some(cf_scaled),
            witness: None,
            trace_mentions: None,
            class: Some("NotTNorm"),
            reference: false,
        },
        Fixture {
            id: "jump.nm",
            title: "two exponential pieces with a jump at 0.5, F = nilpotent min",
            config: doc(
                vec![
                    piece(json!(0), expo(json!(0), json!("0.3*exp(-1)"), json!(2)), json!(0.3 * e1)),
                    piece(json!(0.5), expo(json!(0), json!("exp(-1)"), json!(1)), json!(0.5)),
                ],
                json!(1),
                node("nilpotent_min"),
            ),
            checker: Checker::Auto,
            verdict: "Undetermined",
            closed_form: None,
            witness: None,
            trace_mentions: None,
            class: Some("Undetermined"),
            reference: false,
        },
    ]
}

pub fn ids() -> Vec<&'static str> {
    all().iter().map(|f| f.id).collect()
}

pub fn get(id: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.id == id)
}
