//! Loading groupoid specs and the dump formats, with digests of every file read.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;
use sha2::{Digest, Sha256};

use wmha_core::double::DoubleAlgebra;
use wmha_core::groupoid::FiniteGroupoid;
use wmha_core::pairing::WmhaPairing;
use wmha_core::wmha::{function_algebra, groupoid_algebra, WeakHopf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Side {
    Function,
    Group,
}

impl Side {
    pub fn build(self, g: &FiniteGroupoid) -> WeakHopf {
        match self {
            Side::Function => function_algebra(g),
            Side::Group => groupoid_algebra(g),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "function" => Ok(Side::Function),
            "group" => Ok(Side::Group),
            _ => bail!("side must be \"function\" or \"group\", got {s:?}"),
        }
    }
}

pub enum Input {
    Groupoid(FiniteGroupoid),
    Hopf(WeakHopf),
    Pairing(WmhaPairing),
    Double(Box<DoubleAlgebra>),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Groupoid(_) => "groupoid",
            Input::Hopf(_) => "weak_hopf",
            Input::Pairing(_) => "pairing",
            Input::Double(_) => "double",
        }
    }
}

#[derive(Default)]
pub struct Loader {
    pub digests: BTreeMap<String, String>,
}

impl Loader {
    fn read(&mut self, path: &Path) -> Result<Value> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.digests.insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        serde_json::from_slice(&bytes).map_err(|e| {
            anyhow!("{}:{}:{}: {e}", path.display(), e.line(), e.column())
        })
    }

    pub fn load(&mut self, path: &Path) -> Result<Input> {
        let v = self.read(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        self.parse(&v, &base).with_context(|| format!("in {}", path.display()))
    }

    fn parse(&mut self, v: &Value, base: &Path) -> Result<Input> {
        match v.get("kind").and_then(Value::as_str) {
            Some("weak_hopf") => Ok(Input::Hopf(WeakHopf::from_json(v)?)),
            Some("pairing") => Ok(Input::Pairing(self.pairing(v, base)?)),
            Some("double") => {
                let p = self.pairing_ref(v.get("pairing").ok_or_else(|| anyhow!("missing pairing"))?, base)?;
                Ok(Input::Double(Box::new(DoubleAlgebra::from_json(v, p)?)))
            }
            Some(k) => bail!("unknown kind {k:?}"),
            None => Ok(Input::Groupoid(FiniteGroupoid::from_json(v)?)),
        }
    }

    /// A path relative to `base`, or the value itself.
    fn deref(&mut self, v: &Value, base: &Path) -> Result<(Value, PathBuf)> {
        match v.as_str() {
            Some(rel) => {
                let path = base.join(rel);
                let inner = self.read(&path)?;
                Ok((inner, path.parent().map(Path::to_path_buf).unwrap_or_default()))
            }
            None => Ok((v.clone(), base.to_path_buf())),
        }
    }

    /// A weak Hopf dump, or `{"groupoid": spec, "side": ...}`.
    fn hopf_ref(&mut self, v: &Value, base: &Path) -> Result<WeakHopf> {
        let (v, base) = self.deref(v, base)?;
        if let Some(g) = v.get("groupoid") {
            let side = Side::parse(v.get("side").and_then(Value::as_str).unwrap_or("function"))?;
            let (g, _) = self.deref(g, &base)?;
            return Ok(side.build(&FiniteGroupoid::from_json(&g)?));
        }
        match self.parse(&v, &base)? {
            Input::Hopf(w) => Ok(w),
            other => bail!("expected a weak Hopf algebra, found a {}", other.kind()),
        }
    }

    fn pairing(&mut self, v: &Value, base: &Path) -> Result<WmhaPairing> {
        let a = self.hopf_ref(v.get("a").ok_or_else(|| anyhow!("missing a"))?, base).context("in a")?;
        let b = self.hopf_ref(v.get("b").ok_or_else(|| anyhow!("missing b"))?, base).context("in b")?;
        let form = WmhaPairing::form_from_json(v)?;
        Ok(WmhaPairing::new(a, b, form)?)
    }

    fn pairing_ref(&mut self, v: &Value, base: &Path) -> Result<WmhaPairing> {
        let (v, base) = self.deref(v, base)?;
        self.pairing(&v, &base)
    }
}

/// A pairing file with both algebras inlined.
pub fn pairing_json(p: &WmhaPairing) -> Value {
    p.to_json_with(p.a.to_json(), p.b.to_json())
}
