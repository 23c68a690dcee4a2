//! Polynomial system files.
//!
//! JSON form: `{"ring": "zpk:2:3", "vars": ["x", "y"], "order": "lex", "polys": ["4*x^2*y + y^3", ...]}`,
//! where every field but `polys` may instead come from the command line.
//! With `--text` the file holds one polynomial per line; blank lines and
//! lines starting with `#` are skipped.

use std::path::Path;

use chainring_core::polys::{MonomialOrder, MultiPoly, PolyRing};
use chainring_core::ChainRing;
use clap::Args;
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::format::{infer_vars, parse_order, parse_ring, read_json, read_text, split_names, RingDesc};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default)]
    pub ring: Option<String>,
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    #[serde(default)]
    pub order: Option<String>,
    pub polys: Vec<String>,
}

#[derive(Args, Clone, Debug, Default)]
pub struct SystemFlags {
    /// Coefficient ring, e.g. zpk:2:3, gr:2:3:3, zn:12.
    #[arg(long)]
    pub ring: Option<String>,
    /// Monomial order, optionally with the variables: lex:x,y or degrevlex.
    #[arg(long)]
    pub order: Option<String>,
    /// Comma-separated variable names, largest first.
    #[arg(long)]
    pub vars: Option<String>,
    /// Read one polynomial per line instead of JSON.
    #[arg(long)]
    pub text: bool,
}

#[derive(Clone, Debug)]
pub struct System {
    pub ring_name: String,
    pub ring: RingDesc,
    pub order: MonomialOrder,
    pub vars: Vec<String>,
    pub polys: Vec<String>,
}

impl System {
    pub fn load(path: &Path, flags: &SystemFlags) -> CliResult<System> {
        let file = if flags.text {
            let polys = read_text(path)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect();
            SystemFile { ring: None, vars: None, order: None, polys }
        } else {
            read_json::<SystemFile>(path)?
        };
        System::resolve(file, flags)
    }

    pub fn resolve(file: SystemFile, flags: &SystemFlags) -> CliResult<System> {
        if file.polys.is_empty() {
            return Err(CliError::Usage("the polynomial system is empty".into()));
        }
        let ring_name = flags.ring.clone().or(file.ring).ok_or_else(|| CliError::Usage("no ring given; use --ring or a `ring` field".into()))?;
        let ring = parse_ring(&ring_name)?;
        let (order, order_vars) = match flags.order.as_deref().or(file.order.as_deref()) {
            Some(text) => parse_order(text)?,
            None => (MonomialOrder::Lex, None),
        };
        let flag_vars = flags.vars.as_deref().map(split_names);
        if let (Some(a), Some(b)) = (&flag_vars, &order_vars) {
            if a != b {
                return Err(CliError::Usage("--vars and the variables in --order disagree".into()));
            }
        }
        let rank = match &ring {
            RingDesc::Chain(r) => r.rank(),
            RingDesc::Product(_) => 1,
        };
        let vars = flag_vars.or(order_vars).or(file.vars).unwrap_or_else(|| infer_vars(&file.polys, rank));
        if vars.is_empty() {
            return Err(CliError::Usage("the system has no variables".into()));
        }
        Ok(System { ring_name, ring, order, vars, polys: file.polys })
    }

    /// Each chain ring the system lives over: one, or the components of a product.
    pub fn chain_rings(&self) -> Vec<ChainRing> {
        match &self.ring {
            RingDesc::Chain(r) => vec![r.clone()],
            RingDesc::Product(p) => p.components().to_vec(),
        }
    }

    pub fn poly_ring(&self, ring: &ChainRing) -> PolyRing {
        PolyRing::with_names(ring.clone(), self.vars.clone(), self.order)
    }

    pub fn parse_over(&self, pr: &PolyRing) -> CliResult<Vec<MultiPoly>> {
        self.polys
            .iter()
            .enumerate()
            .map(|(i, text)| pr.parse(text).map_err(|e| CliError::Parse(format!("polynomial {}: {e}", i + 1))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(polys: &[&str]) -> SystemFile {
        SystemFile { ring: Some("zpk:2:3".into()), vars: None, order: None, polys: polys.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn flags_override_file() {
        let flags = SystemFlags { order: Some("lex:y,x".into()), ..Default::default() };
        let sys = System::resolve(file(&["x*y + 1"]), &flags).unwrap();
        assert_eq!(sys.vars, ["y", "x"]);
        let sys = System::resolve(file(&["x*y + 1"]), &SystemFlags::default()).unwrap();
        assert_eq!(sys.vars, ["x", "y"]);
        assert_eq!(sys.order, MonomialOrder::Lex);
    }

    #[test]
    fn rejects_empty_and_conflicting() {
        assert!(matches!(System::resolve(file(&[]), &SystemFlags::default()), Err(CliError::Usage(_))));
        let flags = SystemFlags { order: Some("lex:y,x".into()), vars: Some("x,y".into()), ..Default::default() };
        assert!(matches!(System::resolve(file(&["x"]), &flags), Err(CliError::Usage(_))));
        let mut f = file(&["x"]);
        f.ring = None;
        assert!(matches!(System::resolve(f, &SystemFlags::default()), Err(CliError::Usage(_))));
    }

    #[test]
    fn parse_errors_name_the_polynomial() {
        let sys = System::resolve(file(&["x + 1", "x +* 2"]), &SystemFlags::default()).unwrap();
        let pr = sys.poly_ring(&sys.chain_rings()[0]);
        match sys.parse_over(&pr) {
            Err(CliError::Parse(msg)) => assert!(msg.starts_with("polynomial 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
