//! Ring descriptors, element and matrix encodings, shared by every command.
//!
//! Ring descriptors:
//! `zpk:P:K` is `Z/P^K`, `gr:P:K:R` is `GR(P^K, R)` with the default modulus,
//! `gr:P:K:c0,c1,...,1` picks the modulus explicitly (low to high) and
//! `zn:N` is `Z/N` split into prime-power components.
//!
//! An element of a rank-one ring is a JSON integer; otherwise it is an array
//! of coordinates in `1, a, a^2, ...`. Strings such as `"3*a^2+1"` are
//! accepted on input.

use std::env;

use chainring_core::extension::GaloisExtension;
use chainring_core::linalg::Matrix;
use chainring_core::oracles::OracleBudget;
use chainring_core::polys::{MonomialOrder, PolyRing};
use chainring_core::{ChainRing, Elem, PirElem, PirRing};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

pub const BUDGET_VAR: &str = "CHAINRING_BUDGET";

#[derive(Clone, Debug)]
pub enum RingDesc {
    Chain(ChainRing),
    Product(PirRing),
}

pub fn parse_ring(desc: &str) -> CliResult<RingDesc> {
    let parts: Vec<&str> = desc.trim().split(':').collect();
    let int = |s: &str| s.trim().parse::<u64>().map_err(|_| CliError::Parse(format!("bad number `{s}` in ring `{desc}`")));
    let exp = |s: &str| int(s).and_then(|v| u32::try_from(v).map_err(|_| CliError::Parse(format!("exponent `{s}` too large"))));
    match parts.as_slice() {
        ["zpk", p, k] => Ok(RingDesc::Chain(ChainRing::zpk(int(p)?, exp(k)?)?)),
        ["gr", p, k, coeffs] if coeffs.contains(',') => {
            let modulus = coeffs.split(',').map(int).collect::<CliResult<Vec<u64>>>()?;
            Ok(RingDesc::Chain(ChainRing::galois(int(p)?, exp(k)?, &modulus)?))
        }
        ["gr", p, k, r] => Ok(RingDesc::Chain(ChainRing::galois_default(int(p)?, exp(k)?, int(r)? as usize)?)),
        ["zn", n] => {
            let pir = PirRing::integers_mod(int(n)?)?;
            Ok(match pir.components() {
                [only] => RingDesc::Chain(only.clone()),
                _ => RingDesc::Product(pir),
            })
        }
        _ => Err(CliError::Parse(format!("unknown ring `{desc}`; expected zpk:P:K, gr:P:K:R, gr:P:K:c0,...,1 or zn:N"))),
    }
}

pub fn parse_chain_ring(desc: &str) -> CliResult<ChainRing> {
    match parse_ring(desc)? {
        RingDesc::Chain(r) => Ok(r),
        RingDesc::Product(_) => Err(CliError::Domain(format!("`{desc}` is not a chain ring"))),
    }
}

/// Canonical descriptor, used in output.
pub fn describe_ring(ring: &ChainRing) -> String {
    if ring.rank() == 1 {
        return format!("zpk:{}:{}", ring.p(), ring.k());
    }
    let coeffs: Vec<String> = ring.modulus().iter().map(u64::to_string).collect();
    format!("gr:{}:{}:{}", ring.p(), ring.k(), coeffs.join(","))
}

pub fn elem_from_json(ring: &ChainRing, v: &Value) -> CliResult<Elem> {
    match v {
        Value::Number(n) => n.as_i64().map(|c| ring.from_int(c)).ok_or_else(|| CliError::Parse(format!("`{n}` is not an integer"))),
        Value::Array(cs) => {
            let coeffs = cs
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| CliError::Parse(format!("coordinate `{c}` is not an integer"))))
                .collect::<CliResult<Vec<i64>>>()?;
            ring.from_coeffs(&coeffs).map_err(|_| CliError::Domain(format!("element has {} coordinates, ring rank is {}", coeffs.len(), ring.rank())))
        }
        Value::String(s) => {
            let pr = PolyRing::with_names(ring.clone(), Vec::new(), MonomialOrder::Lex);
            let f = pr.parse(s)?;
            Ok(f.lc().unwrap_or_else(|| ring.zero()))
        }
        other => Err(CliError::Parse(format!("cannot read a ring element from `{other}`"))),
    }
}

pub fn elem_to_json(ring: &ChainRing, e: &Elem) -> Value {
    match ring.rank() {
        1 => json!(e.coeff(0)),
        r => json!((0..r).map(|i| e.coeff(i)).collect::<Vec<u32>>()),
    }
}

pub fn vec_from_json(ring: &ChainRing, v: &[Value]) -> CliResult<Vec<Elem>> {
    v.iter().map(|x| elem_from_json(ring, x)).collect()
}

pub fn vec_to_json(ring: &ChainRing, v: &[Elem]) -> Value {
    Value::Array(v.iter().map(|x| elem_to_json(ring, x)).collect())
}

pub fn matrix_from_json(ring: &ChainRing, rows: &[Vec<Value>]) -> CliResult<Matrix> {
    let rows = rows.iter().map(|r| vec_from_json(ring, r)).collect::<CliResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|_| CliError::Domain("matrix rows have different lengths".into()))
}

pub fn matrix_to_json(ring: &ChainRing, m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_to_json(ring, r)).collect())
}

/// Elements of a product ring print as their integer representative when
/// every component is `Z/p^k`, and as per-component lists otherwise.
pub fn pir_elem_to_json(ring: &PirRing, e: &PirElem) -> Value {
    match ring.to_integer(e) {
        Some(v) => json!(v),
        None => Value::Array(ring.components().iter().zip(&e.0).map(|(r, x)| elem_to_json(r, x)).collect()),
    }
}

pub fn pir_elem_from_json(ring: &PirRing, v: &Value) -> CliResult<PirElem> {
    match v {
        Value::Number(n) => n.as_i64().map(|c| ring.from_int(c)).ok_or_else(|| CliError::Parse(format!("`{n}` is not an integer"))),
        Value::Array(parts) if parts.len() == ring.components().len() => {
            Ok(PirElem(ring.components().iter().zip(parts).map(|(r, x)| elem_from_json(r, x)).collect::<CliResult<_>>()?))
        }
        other => Err(CliError::Parse(format!("cannot read a product-ring element from `{other}`"))),
    }
}

/// `lex`, `degrevlex` (alias `grevlex`), optionally followed by `:x,y,...`.
pub fn parse_order(text: &str) -> CliResult<(MonomialOrder, Option<Vec<String>>)> {
    let (name, vars) = match text.split_once(':') {
        Some((n, v)) => (n, Some(split_names(v))),
        None => (text, None),
    };
    let order = match name.trim() {
        "lex" => MonomialOrder::Lex,
        "degrevlex" | "grevlex" => MonomialOrder::DegRevLex,
        other => return Err(CliError::Parse(format!("unknown monomial order `{other}`"))),
    };
    Ok((order, vars))
}

pub fn order_name(order: MonomialOrder) -> &'static str {
    match order {
        MonomialOrder::Lex => "lex",
        MonomialOrder::DegRevLex => "degrevlex",
    }
}

pub fn split_names(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

/// Identifiers in `polys`, sorted; `a` is left out over Galois rings.
pub fn infer_vars(polys: &[String], ring_rank: usize) -> Vec<String> {
    let mut names = std::collections::BTreeSet::new();
    for text in polys {
        let mut chars = text.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if c.is_ascii_alphabetic() || c == '_' {
                let mut end = start + c.len_utf8();
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                names.insert(text[start..end].to_string());
            } else if c.is_ascii_digit() {
                while chars.peek().is_some_and(|&(_, d)| d.is_ascii_alphanumeric()) {
                    chars.next();
                }
            }
        }
    }
    if ring_rank > 1 {
        names.remove("a");
    }
    names.into_iter().collect()
}

/// `{"base": "zpk:P:K", "degree": m}` or `{"base": ..., "modulus": [h0, ..., 1]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub base: String,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub modulus: Option<Vec<i64>>,
}

impl ExtensionSpec {
    pub fn build(&self) -> CliResult<GaloisExtension> {
        let base = parse_chain_ring(&self.base)?;
        let ext = match (&self.modulus, self.degree) {
            (Some(h), d) => {
                if d.is_some_and(|d| d + 1 != h.len()) {
                    return Err(CliError::Domain("extension degree disagrees with the modulus".into()));
                }
                GaloisExtension::with_modulus(&base, h)?
            }
            (None, Some(m)) => GaloisExtension::build(&base, m)?,
            (None, None) => return Err(CliError::Parse("extension needs `degree` or `modulus`".into())),
        };
        Ok(ext)
    }
}

pub fn describe_extension(ext: &GaloisExtension) -> Value {
    let base = ext.base();
    json!({
        "base": describe_ring(base),
        "modulus": ext.modulus().iter().map(|c| c.coeff(0)).collect::<Vec<u32>>(),
    })
}

pub fn budget_from_env() -> CliResult<OracleBudget> {
    match env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(OracleBudget::new)
            .map_err(|_| CliError::Usage(format!("{BUDGET_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(OracleBudget::default()),
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_text(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_descriptors() {
        let z8 = parse_chain_ring("zpk:2:3").unwrap();
        assert_eq!(z8.size(), Some(8));
        assert_eq!(describe_ring(&z8), "zpk:2:3");
        let gr = parse_chain_ring("gr:2:3:1,1,0,1").unwrap();
        assert_eq!(gr.rank(), 3);
        assert_eq!(describe_ring(&gr), "gr:2:3:1,1,0,1");
        let d = parse_chain_ring("gr:2:2:2").unwrap();
        assert_eq!(parse_chain_ring(&describe_ring(&d)).unwrap(), d);
        assert!(matches!(parse_ring("zn:12").unwrap(), RingDesc::Product(p) if p.components().len() == 2));
        assert!(matches!(parse_ring("zn:9").unwrap(), RingDesc::Chain(r) if r.size() == Some(9)));
        assert!(matches!(parse_ring("zpk:4:2"), Err(CliError::Domain(_))));
        assert!(matches!(parse_ring("zq:3"), Err(CliError::Parse(_))));
        assert!(matches!(parse_chain_ring("zn:6"), Err(CliError::Domain(_))));
    }

    #[test]
    fn element_round_trip() {
        let gr = parse_chain_ring("gr:2:2:2").unwrap();
        for e in gr.elements() {
            assert_eq!(elem_from_json(&gr, &elem_to_json(&gr, &e)).unwrap(), e);
        }
        let a2 = elem_from_json(&gr, &json!("a^2")).unwrap();
        assert_eq!(a2, gr.mul(&gr.alpha(), &gr.alpha()));
        let z25 = parse_chain_ring("zpk:5:2").unwrap();
        assert_eq!(elem_to_json(&z25, &elem_from_json(&z25, &json!(-7)).unwrap()), json!(18));
        assert!(elem_from_json(&z25, &json!([1, 2])).is_err());
        let pir = PirRing::integers_mod(12).unwrap();
        for v in 0..12 {
            let e = pir_elem_from_json(&pir, &json!(v)).unwrap();
            assert_eq!(pir_elem_to_json(&pir, &e), json!(v));
        }
    }

    #[test]
    fn orders_and_names() {
        let (o, v) = parse_order("lex:x, y").unwrap();
        assert_eq!(o, MonomialOrder::Lex);
        assert_eq!(v.unwrap(), ["x", "y"]);
        assert_eq!(parse_order("grevlex").unwrap().0, MonomialOrder::DegRevLex);
        assert!(parse_order("deglex").is_err());
        let polys = vec!["4*x^2*y + y3 - 2a".to_string(), "z_1*a^2".into()];
        assert_eq!(infer_vars(&polys, 1), ["a", "x", "y", "y3", "z_1"]);
        assert_eq!(infer_vars(&polys, 2), ["x", "y", "y3", "z_1"]);
    }
}
