//! Rule-spec and family-spec JSON files.
//!
//! ```json
//! { "ring": "QQ", "kind": "canonical", "z": "1 - q" }
//! { "kind": "tabulated", "bound": 2, "u": {"1,1": "1", …}, "v": {"1,1": "q", …} }
//! { "lambda": {"2": "1", "3": "-1", "*": "1"}, "t0": 1, "exponents": {"1": 1} }
//! ```
//!
//! In a family spec the key `"*"` gives `λ` on every prime not listed.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::cli::parse::parse_poly;
use crate::cli::CliError;
use crate::poly::Poly;
use crate::ring::{RingCtx, Scalar};
use crate::rules::{rule_canonical, zero_identity, LinearRule, TabulatedRule, ZeroIdentity};
use crate::solve::mult::MultFamilySpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleSpecFile {
    ring: Option<String>,
    kind: String,
    z: Option<String>,
    u: Option<BTreeMap<String, String>>,
    v: Option<BTreeMap<String, String>>,
    bound: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilySpecFile {
    #[serde(default)]
    lambda: BTreeMap<String, String>,
    #[serde(default)]
    t0: i64,
    #[serde(default)]
    exponents: BTreeMap<String, i64>,
}

/// What a rule-spec file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleSpec {
    Rule(LinearRule),
    Zero(ZeroIdentity),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn poly_field(text: &str, ctx: &RingCtx, what: &str) -> Result<Poly, CliError> {
    parse_poly(text, ctx).map_err(|e| usage(format!("{what}: {e}")))
}

fn index_pair(key: &str) -> Result<(usize, usize), CliError> {
    let bad = || usage(format!("table key '{key}' is not of the form \"m,n\""));
    let (m, n) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        m.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}

/// Parses a rule-spec document. `default_ring` applies when the file has
/// no `ring` key.
pub fn parse_rule_spec(text: &str, default_ring: &RingCtx) -> Result<RuleSpec, CliError> {
    let file: RuleSpecFile =
        serde_json::from_str(text).map_err(|e| usage(format!("rule spec: {e}")))?;
    let ctx = match &file.ring {
        Some(r) => r
            .parse::<RingCtx>()
            .map_err(|e| usage(format!("rule spec ring: {e}")))?,
        None => default_ring.clone(),
    };
    let z = |file: &RuleSpecFile| -> Result<Poly, CliError> {
        let text = file
            .z
            .as_deref()
            .ok_or_else(|| usage(format!("rule spec of kind '{}' needs \"z\"", file.kind)))?;
        poly_field(text, &ctx, "z")
    };
    match file.kind.as_str() {
        "canonical" => Ok(RuleSpec::Rule(rule_canonical(z(&file)?))),
        "zero" => Ok(RuleSpec::Zero(zero_identity(z(&file)?))),
        "tabulated" => {
            let bound = file
                .bound
                .ok_or_else(|| usage("tabulated rule spec needs \"bound\""))?;
            let table = |name: &str, entries: &Option<BTreeMap<String, String>>| {
                let entries = entries
                    .as_ref()
                    .ok_or_else(|| usage(format!("tabulated rule spec needs \"{name}\"")))?;
                entries
                    .iter()
                    .map(|(k, v)| {
                        Ok((
                            index_pair(k)?,
                            poly_field(v, &ctx, &format!("{name}[{k}]"))?,
                        ))
                    })
                    .collect::<Result<BTreeMap<_, _>, CliError>>()
            };
            let u = table("u", &file.u)?;
            let v = table("v", &file.v)?;
            Ok(RuleSpec::Rule(LinearRule::Tabulated(TabulatedRule::new(
                &ctx, bound, u, v,
            )?)))
        }
        other => Err(usage(format!(
            "unknown rule kind '{other}' (expected canonical, tabulated or zero)"
        ))),
    }
}

fn constant(text: &str, ctx: &RingCtx, what: &str) -> Result<Scalar, CliError> {
    let p = poly_field(text, ctx, what)?;
    if !p.is_constant() {
        return Err(usage(format!("{what} must be a constant, got {p}")));
    }
    Ok(p.coeff_scalar(0))
}

/// Parses a family-spec document over the field `ctx`.
pub fn parse_family_spec(text: &str, ctx: &RingCtx) -> Result<MultFamilySpec, CliError> {
    let file: FamilySpecFile =
        serde_json::from_str(text).map_err(|e| usage(format!("family spec: {e}")))?;
    let mut lambda = BTreeMap::new();
    let mut default = None;
    for (key, value) in &file.lambda {
        let v = constant(value, ctx, &format!("lambda[{key}]"))?;
        if key.trim() == "*" {
            default = Some(v);
        } else {
            let p = key
                .trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("lambda key '{key}' is not a prime or \"*\"")))?;
            lambda.insert(p, v);
        }
    }
    if file.lambda.is_empty() {
        default = Some(Scalar::one(ctx));
    }
    let exponents = file
        .exponents
        .iter()
        .map(|(k, &t)| {
            let r = k
                .trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("exponent key '{k}' is not a positive integer")))?;
            Ok((r, t))
        })
        .collect::<Result<BTreeMap<_, _>, CliError>>()?;
    Ok(MultFamilySpec::new(
        ctx, lambda, default, file.t0, exponents,
    )?)
}
