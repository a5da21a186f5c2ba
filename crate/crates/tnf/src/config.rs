//! JSON config: a generator, an operator and check options.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tnf_core::scalar::parse_decimal;
use tnf_core::{AnalyticForm, ChildKind, Piece, PiecewiseIncreasingFn, Scalar, Semantics, Summand, TNormExpr};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {msg}")]
    Syntax { path: String, line: usize, column: usize, msg: String },
    #[error("{at}: bad number {text:?}")]
    Number { at: String, text: String },
    #[error("{at}: exp(..) needs the float backend")]
    ExactExp { at: String },
    #[error("{at}: {source}")]
    Model { at: String, source: tnf_core::Error },
}

/// A number written as a JSON number or as a string: `"3/8"`, `"0.25"`, `"exp(-1)"`, `"0.5*exp(-2)"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Text(String),
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num::Float(v)
    }
}

impl From<&str> for Num {
    fn from(v: &str) -> Self {
        Num::Text(v.to_string())
    }
}

impl Num {
    pub fn get<S: Scalar>(&self, at: &str) -> Result<S, ConfigError> {
        let bad = || ConfigError::Number { at: at.to_string(), text: self.text() };
        match self {
            Num::Float(v) => S::from_f64(*v).ok_or_else(bad),
            Num::Text(t) => {
                let t = t.trim();
                let (coef, rest) = match t.split_once('*') {
                    Some((c, r)) => (parse_decimal(c).ok_or_else(bad)?, r.trim()),
                    None => (<tnf_core::Rational as Scalar>::one(), t),
                };
                if let Some(inner) = rest.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
                    let q = parse_decimal(inner).ok_or_else(bad)?;
                    let e = S::from_rational(&q).exp().ok_or_else(|| ConfigError::ExactExp { at: at.to_string() })?;
                    return Ok(S::from_rational(&coef) * e);
                }
                Ok(S::from_rational(&parse_decimal(t).ok_or_else(bad)?))
            }
        }
    }

    /// Whether the number needs the float backend.
    fn is_transcendental(&self) -> bool {
        matches!(self, Num::Text(t) if t.contains("exp("))
    }

    fn text(&self) -> String {
        match self {
            Num::Float(v) => v.to_string(),
            Num::Text(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum FormDoc {
    Linear { slope: Num, intercept: Num },
    Exponential { offset: Num, scale: Num, rate: Num },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub left: Num,
    pub form: FormDoc,
    pub value_at_left: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub pieces: Vec<PieceDoc>,
    pub value_at_one: Num,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemanticsDoc {
    ClosedSquare,
    HalfOpen,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandDoc {
    pub a: Num,
    pub b: Num,
    pub child: TNormDoc,
    /// Defaults to whatever the child is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child_kind: Option<KindDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindDoc {
    Tnorm,
    Tsubnorm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TNormDoc {
    Min,
    Product,
    Lukasiewicz,
    NilpotentMin,
    ZeroSubnorm,
    Scaled { lambda: Num, inner: Box<TNormDoc> },
    OrdinalSum { semantics: SemanticsDoc, summands: Vec<SummandDoc> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Exact when every number is rational, float otherwise.
    #[default]
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<Backend>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub generator: GeneratorDoc,
    pub tnorm: TNormDoc,
    #[serde(default)]
    pub check: CheckDoc,
}

impl ConfigDoc {
    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let p = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: p.clone(), source })?;
        Self::parse(&text, &p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// `Exact` unless some piece is exponential or some number is `exp(..)`.
    pub fn resolve(&self, b: Backend) -> Backend {
        match b {
            Backend::Auto if self.needs_float() => Backend::Float,
            Backend::Auto => Backend::Exact,
            other => other,
        }
    }

    fn needs_float(&self) -> bool {
        let mut nums: Vec<&Num> = vec![&self.generator.value_at_one];
        for p in &self.generator.pieces {
            if matches!(p.form, FormDoc::Exponential { .. }) {
                return true;
            }
            nums.push(&p.left);
            nums.push(&p.value_at_left);
            if let FormDoc::Linear { slope, intercept } = &p.form {
                nums.push(slope);
                nums.push(intercept);
            }
        }
        tnorm_nums(&self.tnorm, &mut nums);
        nums.iter().any(|n| n.is_transcendental())
    }

    pub fn generator<S: Scalar>(&self) -> Result<PiecewiseIncreasingFn<S>, ConfigError> {
        let g = &self.generator;
        let mut pieces = Vec::new();
        for (i, p) in g.pieces.iter().enumerate() {
            let at = |k: &str| format!("generator.pieces[{}].{}", i, k);
            let form = match &p.form {
                FormDoc::Linear { slope, intercept } => {
                    AnalyticForm::linear(slope.get(&at("form.slope"))?, intercept.get(&at("form.intercept"))?)
                }
                FormDoc::Exponential { offset, scale, rate } => {
                    if S::EXACT {
                        return Err(ConfigError::ExactExp { at: at("form") });
                    }
                    AnalyticForm::Exponential {
                        offset: offset.get(&at("form.offset"))?,
                        scale: scale.get(&at("form.scale"))?,
                        rate: rate.get(&at("form.rate"))?,
                    }
                }
            };
            pieces.push(Piece { left: p.left.get(&at("left"))?, form, value_at_left: p.value_at_left.get(&at("value_at_left"))? });
        }
        let end = g.value_at_one.get("generator.value_at_one")?;
        PiecewiseIncreasingFn::new(pieces, end).map_err(|source| ConfigError::Model { at: "generator".into(), source })
    }

    pub fn tnorm<S: Scalar>(&self) -> Result<TNormExpr<S>, ConfigError> {
        let e = build(&self.tnorm, "tnorm")?;
        e.validate().map_err(|source| ConfigError::Model { at: "tnorm".into(), source })?;
        Ok(e)
    }
}

fn tnorm_nums<'a>(t: &'a TNormDoc, out: &mut Vec<&'a Num>) {
    match t {
        TNormDoc::Scaled { lambda, inner } => {
            out.push(lambda);
            tnorm_nums(inner, out);
        }
        TNormDoc::OrdinalSum { summands, .. } => {
            for s in summands {
                out.push(&s.a);
                out.push(&s.b);
                tnorm_nums(&s.child, out);
            }
        }
        _ => {}
    }
}

fn build<S: Scalar>(t: &TNormDoc, at: &str) -> Result<TNormExpr<S>, ConfigError> {
    let model = |source| ConfigError::Model { at: at.to_string(), source };
    Ok(match t {
        TNormDoc::Min => TNormExpr::Min,
        TNormDoc::Product => TNormExpr::Product,
        TNormDoc::Lukasiewicz => TNormExpr::Lukasiewicz,
        TNormDoc::NilpotentMin => TNormExpr::NilpotentMin,
        TNormDoc::ZeroSubnorm => TNormExpr::ZeroSubnorm,
        TNormDoc::Scaled { lambda, inner } => {
            let inner = build(inner, &format!("{}.inner", at))?;
            TNormExpr::scaled(lambda.get(&format!("{}.lambda", at))?, inner).map_err(model)?
        }
        TNormDoc::OrdinalSum { semantics, summands } => {
            let mut v = Vec::new();
            for (i, s) in summands.iter().enumerate() {
                let here = format!("{}.summands[{}]", at, i);
                let child = build(&s.child, &format!("{}.child", here))?;
                let child_kind = match s.child_kind {
                    Some(KindDoc::Tnorm) => ChildKind::TNorm,
                    Some(KindDoc::Tsubnorm) => ChildKind::TSubnorm,
                    None if child.is_tnorm() => ChildKind::TNorm,
                    None => ChildKind::TSubnorm,
                };
                v.push(Summand { a: s.a.get(&format!("{}.a", here))?, b: s.b.get(&format!("{}.b", here))?, child, child_kind });
            }
            let sem = match semantics {
                SemanticsDoc::ClosedSquare => Semantics::ClosedSquare,
                SemanticsDoc::HalfOpen => Semantics::HalfOpen,
            };
            TNormExpr::ordinal_sum(sem, v).map_err(model)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tnf_core::Rational;

    const EX: &str = r#"{
        "generator": {
            "pieces": [
                {"left": 0, "form": {"kind": "linear", "params": {"slope": "1/2", "intercept": 0}}, "value_at_left": 0},
                {"left": 0.5, "form": {"kind": "linear", "params": {"slope": 1, "intercept": 0}}, "value_at_left": 0.25}
            ],
            "value_at_one": 1
        },
        "tnorm": {"kind": "ordinal_sum", "semantics": "closed_square", "summands": [
            {"a": 0, "b": 0.5, "child": {"kind": "lukasiewicz"}},
            {"a": 0.5, "b": 1, "child": {"kind": "product"}, "child_kind": "tnorm"}
        ]},
        "check": {"grid": 11}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let d = ConfigDoc::parse(EX, "ex").unwrap();
        assert_eq!(d.resolve(Backend::Auto), Backend::Exact);
        let again = ConfigDoc::parse(&d.to_json(), "again").unwrap();
        assert_eq!(d, again);
        let f = d.generator::<Rational>().unwrap();
        assert_eq!(f.eval(&Rational::ratio(1, 2)).unwrap(), Rational::ratio(1, 4));
        let e = d.tnorm::<f64>().unwrap();
        assert!(e.is_tnorm());
    }

    #[test]
    fn errors_are_located() {
        let bad = EX.replace("\"1/2\"", "\"1/x\"");
        let e = ConfigDoc::parse(&bad, "ex").unwrap().generator::<f64>().unwrap_err();
        assert!(e.to_string().contains("generator.pieces[0].form.slope"), "{}", e);
        let e = ConfigDoc::parse("{\"generator\": 3}", "ex").unwrap_err();
        assert!(matches!(e, ConfigError::Syntax { line: 1, .. }), "{}", e);
        let exp = EX.replace("\"value_at_one\": 1", "\"value_at_one\": \"exp(0)\"");
        let d = ConfigDoc::parse(&exp, "ex").unwrap();
        assert_eq!(d.resolve(Backend::Auto), Backend::Float);
        assert!(matches!(d.generator::<Rational>(), Err(ConfigError::ExactExp { .. })));
    }
}
