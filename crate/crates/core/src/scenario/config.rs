//! Flat key-value scenario configs.
//!
//! One file per scenario, `key = value` per line, `#` starts a comment.
//! Dotted key names group the sections: `scenario.*`, `source.*`, `grid.*`,
//! and `check.<i>.*` with 1-based contiguous check indices. [`render_config`]
//! produces the canonical form (defaults materialized, fixed key order,
//! shortest round-trip floats); the config hash in the manifest is the
//! SHA-256 of that canonical text, so cosmetic edits do not change identity.

use std::collections::BTreeMap;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use super::{
    CheckKind, CheckSpec, Expectation, GridSpec, ScenarioConfig, ScenarioError, SourceSpec,
};
use crate::curvature::{OperatorSpectrum, PinchingVariant};
use crate::flow::ModelFamily;
use crate::numerics::format_float;

fn bad(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Config(msg.into())
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ScenarioError> {
    value.parse::<f64>().map_err(|_| bad(format!("{key}: expected a number, got {value:?}")))
}

fn parse_finite(key: &str, value: &str) -> Result<f64, ScenarioError> {
    let v = parse_f64(key, value)?;
    if !v.is_finite() {
        return Err(bad(format!("{key}: expected a finite number, got {value:?}")));
    }
    Ok(v)
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ScenarioError> {
    value
        .parse::<usize>()
        .map_err(|_| bad(format!("{key}: expected a non-negative integer, got {value:?}")))
}

/// Raw `key = value` lines in file order, comments and blanks removed.
fn tokenize(text: &str) -> Result<BTreeMap<String, String>, ScenarioError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(bad(format!("line {}: expected key = value", lineno + 1)));
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if key.is_empty() || value.is_empty() {
            return Err(bad(format!("line {}: empty key or value", lineno + 1)));
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(bad(format!("line {}: duplicate key {key}", lineno + 1)));
        }
    }
    Ok(map)
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn take(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<String, ScenarioError> {
        self.take(key).ok_or_else(|| bad(format!("missing required key {key}")))
    }

    fn take_finite(&mut self, key: &str) -> Result<Option<f64>, ScenarioError> {
        self.take(key).map(|v| parse_finite(key, &v)).transpose()
    }

    fn require_finite(&mut self, key: &str) -> Result<f64, ScenarioError> {
        let v = self.require(key)?;
        parse_finite(key, &v)
    }

    fn finish_section(&self, section: &str) -> Result<(), ScenarioError> {
        if let Some(key) = self.0.keys().find(|k| k.starts_with(section)) {
            return Err(bad(format!("unknown key {key}")));
        }
        Ok(())
    }
}

fn parse_source(fields: &mut Fields) -> Result<SourceSpec, ScenarioError> {
    let kind = fields.require("source.kind")?;
    let shift = fields.take_finite("source.shift")?.unwrap_or(0.0);
    match kind.as_str() {
        "family" => {
            let family = fields.require("source.family")?;
            let family = match family.as_str() {
                "round-sphere" => {
                    let k0 = fields.require_finite("source.k0")?;
                    let quotient = match fields.take("source.quotient") {
                        Some(v) => v
                            .parse::<u32>()
                            .map_err(|_| bad(format!("source.quotient: bad integer {v:?}")))?,
                        None => 1,
                    };
                    ModelFamily::round_sphere(k0, quotient)?
                }
                "product-sphere-circle" => {
                    let k0 = fields.require_finite("source.k0")?;
                    let len = fields.require_finite("source.circle-length")?;
                    ModelFamily::product_sphere_circle(k0, len)?
                }
                "flat-torus" => {
                    let sides = fields.require("source.sides")?;
                    let parts: Vec<f64> = sides
                        .split_whitespace()
                        .map(|p| parse_finite("source.sides", p))
                        .collect::<Result<_, _>>()?;
                    let [a, b, c] = parts[..] else {
                        return Err(bad(format!(
                            "source.sides: expected three lengths, got {sides:?}"
                        )));
                    };
                    ModelFamily::flat_torus([a, b, c])?
                }
                "cigar" => {
                    let scale = fields.require_finite("source.scale")?;
                    match fields.take_finite("source.truncation")? {
                        Some(r) => ModelFamily::cigar_truncated(scale, r)?,
                        None => ModelFamily::cigar(scale)?,
                    }
                }
                other => return Err(bad(format!("source.family: unknown family {other:?}"))),
            };
            Ok(SourceSpec::Family { family, shift })
        }
        "reaction" => {
            let alpha = fields.require_finite("source.alpha")?;
            let beta = fields.require_finite("source.beta")?;
            let gamma = fields.require_finite("source.gamma")?;
            let tol = fields.take_finite("source.tol")?.unwrap_or(1e-8);
            Ok(SourceSpec::Reaction { initial: OperatorSpectrum::new(alpha, beta, gamma), tol, shift })
        }
        other => Err(bad(format!("source.kind: expected family or reaction, got {other:?}"))),
    }
}

fn parse_check(index: usize, pairs: Vec<(String, String)>) -> Result<CheckSpec, ScenarioError> {
    let prefix = format!("check.{index}.");
    let mut fields = Fields(
        pairs.into_iter().map(|(k, v)| (k[prefix.len()..].to_string(), v)).collect(),
    );
    let kind_tag = fields.require("kind").map_err(|_| bad(format!("check.{index} needs a kind")))?;
    let kind = CheckKind::parse(&kind_tag)
        .ok_or_else(|| bad(format!("check.{index}.kind: unknown check {kind_tag:?}")))?;
    let mut check = CheckSpec::new(kind);

    if let Some(v) = fields.take("expect") {
        check.expect = Expectation::parse(&v)
            .ok_or_else(|| bad(format!("check.{index}.expect: expected pass or violation")))?;
    }
    if let Some(v) = fields.take("variant") {
        check.variant = Some(
            PinchingVariant::parse(&v)
                .ok_or_else(|| bad(format!("check.{index}.variant: unknown variant {v:?}")))?,
        );
    }
    if let Some(v) = fields.take("window") {
        let parts: Vec<f64> = v
            .split_whitespace()
            .map(|p| parse_finite(&format!("check.{index}.window"), p))
            .collect::<Result<_, _>>()?;
        let [a, b] = parts[..] else {
            return Err(bad(format!("check.{index}.window: expected two times, got {v:?}")));
        };
        check.window = Some((a, b));
    }
    if let Some(v) = fields.take("n") {
        check.points = Some(parse_usize(&format!("check.{index}.n"), &v)?);
    }
    if let Some(v) = fields.take("pairs") {
        check.pairs = Some(parse_usize(&format!("check.{index}.pairs"), &v)?);
    }
    check.k = fields.take_finite("k")?;
    check.tol = fields.take_finite("tol")?;

    let c = &mut check.constants;
    c.eps0 = fields.take_finite("eps0")?;
    c.c0 = fields.take_finite("c0")?;
    c.d0 = fields.take_finite("d0")?;
    c.v0 = fields.take_finite("v0")?;
    c.big_c = fields.take_finite("C")?;
    c.delta = fields.take_finite("delta")?;
    c.c = fields.take_finite("c")?;
    c.l = fields.take_finite("l")?;
    c.eps = fields.take_finite("eps")?;

    if let Some(key) = fields.0.keys().next() {
        return Err(bad(format!("unknown key {prefix}{key}")));
    }
    Ok(check)
}

/// Parses and validates one scenario config.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let mut fields = Fields(tokenize(text)?);

    let scenario_id = fields.require("scenario.id")?;
    let seed = match fields.take("scenario.seed") {
        Some(v) => v
            .parse::<u64>()
            .map_err(|_| bad(format!("scenario.seed: bad integer {v:?}")))?,
        None => 0,
    };
    let out_dir = match fields.take("scenario.out") {
        Some(v) => PathBuf::from(v),
        None => PathBuf::from("out").join(&scenario_id),
    };
    fields.finish_section("scenario.")?;

    let source = parse_source(&mut fields)?;
    fields.finish_section("source.")?;

    let end = fields.require_finite("grid.end")?;
    let steps = {
        let v = fields.require("grid.steps")?;
        parse_usize("grid.steps", &v)?
    };
    fields.finish_section("grid.")?;

    let mut grouped: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    let check_keys: Vec<String> =
        fields.0.keys().filter(|k| k.starts_with("check.")).cloned().collect();
    for key in check_keys {
        let rest = &key["check.".len()..];
        let Some((idx, _)) = rest.split_once('.') else {
            return Err(bad(format!("unknown key {key}")));
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| bad(format!("{key}: check index must be a positive integer")))?;
        if idx == 0 {
            return Err(bad(format!("{key}: check indices start at 1")));
        }
        let value = fields.take(&key).expect("key just listed");
        grouped.entry(idx).or_default().push((key, value));
    }
    if let Some(key) = fields.0.keys().next() {
        return Err(bad(format!("unknown key {key}")));
    }

    let mut checks = Vec::with_capacity(grouped.len());
    for (pos, (idx, pairs)) in grouped.into_iter().enumerate() {
        if idx != pos + 1 {
            return Err(bad(format!(
                "check indices must be contiguous from 1; missing check.{}",
                pos + 1
            )));
        }
        checks.push(parse_check(idx, pairs)?);
    }

    let cfg = ScenarioConfig {
        scenario_id,
        seed,
        out_dir,
        source,
        grid: GridSpec { end, steps },
        checks,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn push_kv(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(key);
    out.push_str(" = ");
    out.push_str(value.as_ref());
    out.push('\n');
}

fn push_float(out: &mut String, key: &str, v: f64) {
    push_kv(out, key, format_float(v));
}

/// Canonical text form: defaults materialized, fixed key order, floats in
/// shortest round-trip form. The output directory is runtime plumbing and
/// deliberately omitted, so relocating a run does not change its identity.
pub fn render_config(cfg: &ScenarioConfig) -> String {
    let mut out = String::new();
    push_kv(&mut out, "scenario.id", &cfg.scenario_id);
    push_kv(&mut out, "scenario.seed", cfg.seed.to_string());
    match &cfg.source {
        SourceSpec::Family { family, shift } => {
            push_kv(&mut out, "source.kind", "family");
            match family {
                ModelFamily::RoundSphereQuotient { k0, quotient_order } => {
                    push_kv(&mut out, "source.family", "round-sphere");
                    push_float(&mut out, "source.k0", *k0);
                    push_kv(&mut out, "source.quotient", quotient_order.to_string());
                }
                ModelFamily::ProductSphereCircle { k0, circle_length } => {
                    push_kv(&mut out, "source.family", "product-sphere-circle");
                    push_float(&mut out, "source.k0", *k0);
                    push_float(&mut out, "source.circle-length", *circle_length);
                }
                ModelFamily::FlatTorus { sides } => {
                    push_kv(&mut out, "source.family", "flat-torus");
                    let sides = sides.map(format_float);
                    push_kv(&mut out, "source.sides", sides.join(" "));
                }
                ModelFamily::CigarCrossLine { scale, truncation_radius } => {
                    push_kv(&mut out, "source.family", "cigar");
                    push_float(&mut out, "source.scale", *scale);
                    push_float(&mut out, "source.truncation", *truncation_radius);
                }
            }
            push_float(&mut out, "source.shift", *shift);
        }
        SourceSpec::Reaction { initial, tol, shift } => {
            push_kv(&mut out, "source.kind", "reaction");
            push_float(&mut out, "source.alpha", initial.alpha());
            push_float(&mut out, "source.beta", initial.beta());
            push_float(&mut out, "source.gamma", initial.gamma());
            push_float(&mut out, "source.tol", *tol);
            push_float(&mut out, "source.shift", *shift);
        }
    }
    push_float(&mut out, "grid.end", cfg.grid.end);
    push_kv(&mut out, "grid.steps", cfg.grid.steps.to_string());
    for (pos, check) in cfg.checks.iter().enumerate() {
        let i = pos + 1;
        let key = |field: &str| format!("check.{i}.{field}");
        push_kv(&mut out, &key("kind"), check.kind.as_str());
        if let Some(variant) = check.variant {
            push_kv(&mut out, &key("variant"), variant.name());
        }
        if let Some((a, b)) = check.window {
            push_kv(&mut out, &key("window"), format!("{} {}", format_float(a), format_float(b)));
        }
        if let Some(n) = check.points {
            push_kv(&mut out, &key("n"), n.to_string());
        }
        if let Some(pairs) = check.pairs {
            push_kv(&mut out, &key("pairs"), pairs.to_string());
        }
        if let Some(k) = check.k {
            push_float(&mut out, &key("k"), k);
        }
        if let Some(tol) = check.tol {
            push_float(&mut out, &key("tol"), tol);
        }
        for (name, value) in check.constants.named() {
            push_float(&mut out, &key(&name), value);
        }
        push_kv(&mut out, &key("expect"), check.expect.as_str());
    }
    out
}

/// Hex SHA-256 of the canonical config text.
pub(crate) fn config_sha256(cfg: &ScenarioConfig) -> String {
    let mut hasher = Sha256::new();
    hasher.update(render_config(cfg).as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimates::EstimateKind;

    const SAMPLE: &str = "
# exercise most of the grammar
scenario.id = sample-run
scenario.seed = 9
source.kind = family
source.family = round-sphere
source.k0 = 1
grid.end = 0.2          # inline comment
grid.steps = 4
check.1.kind = curvature-time
check.1.c = 6
check.2.kind = ricci-lower
check.2.eps0 = 0.005
check.2.variant = ricci-absolute
check.2.expect = violation
";

    #[test]
    fn parses_and_round_trips_through_canonical_form() {
        let cfg = parse_config(SAMPLE).unwrap();
        assert_eq!(cfg.scenario_id, "sample-run");
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.out_dir, PathBuf::from("out").join("sample-run"));
        assert_eq!(cfg.checks.len(), 2);
        assert_eq!(cfg.checks[0].kind, CheckKind::Estimate(EstimateKind::CurvatureTime));
        assert_eq!(cfg.checks[1].expect, Expectation::Violation);
        assert_eq!(cfg.checks[1].variant, Some(PinchingVariant::RicciAbsolute));

        let canon = render_config(&cfg);
        let again = parse_config(&canon).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(canon, render_config(&again));
        assert_eq!(config_sha256(&cfg), config_sha256(&again));
    }

    #[test]
    fn hash_ignores_comments_and_output_location() {
        let cfg = parse_config(SAMPLE).unwrap();
        let mut with_out = String::from("scenario.out = /tmp/elsewhere\n");
        with_out.push_str(SAMPLE);
        let moved = parse_config(&with_out).unwrap();
        assert_ne!(cfg.out_dir, moved.out_dir);
        assert_eq!(config_sha256(&cfg), config_sha256(&moved));
    }

    #[test]
    fn rejects_malformed_lines_and_unknown_keys() {
        let stub = "
scenario.id = stub
source.kind = reaction
source.alpha = 2
source.beta = 2
source.gamma = 2
grid.end = 0.1
grid.steps = 2
";
        let cases = [
            ("scenario.id\n".to_string(), "expected key = value"),
            ("scenario.id = a\nscenario.id = b\n".to_string(), "duplicate"),
            ("scenario.id = a\nscenario.color = red\n".to_string(), "unknown key"),
            ("scenario.id = a\nsource.kind = maze\n".to_string(), "family or reaction"),
            (format!("{stub}check.1.kind = nonsense\n"), "unknown check"),
            (format!("{stub}check.1.kind = curvature-time\n"), "needs constant c"),
            (format!("{stub}check.1.kind = hamilton-ivey\ncheck.1.flavor = mild\n"), "unknown key"),
        ];
        for (text, needle) in cases {
            let err = parse_config(&text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} gave {err}");
        }
    }

    #[test]
    fn rejects_check_index_gaps() {
        let text = "
scenario.id = gap
source.kind = reaction
source.alpha = 2
source.beta = 2
source.gamma = 2
grid.end = 0.1
grid.steps = 2
check.2.kind = hamilton-ivey
";
        let err = parse_config(text).unwrap_err().to_string();
        assert!(err.contains("contiguous"), "{err}");
    }

    #[test]
    fn reaction_sources_get_defaults() {
        let text = "
scenario.id = defaults
source.kind = reaction
source.alpha = 0
source.beta = 1
source.gamma = 1
grid.end = 0.5
grid.steps = 5
check.1.kind = hamilton-ivey
";
        let cfg = parse_config(text).unwrap();
        match &cfg.source {
            SourceSpec::Reaction { tol, shift, .. } => {
                assert_eq!(*tol, 1e-8);
                assert_eq!(*shift, 0.0);
            }
            other => panic!("wrong source {other:?}"),
        }
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn torus_sides_must_be_three_numbers() {
        let text = "
scenario.id = torus
source.kind = family
source.family = flat-torus
source.sides = 1 2
grid.end = 1
grid.steps = 2
check.1.kind = curvature-time
check.1.c = 1
";
        let err = parse_config(text).unwrap_err().to_string();
        assert!(err.contains("three lengths"), "{err}");
    }
}
