//! Module expressions and the JSON workspace.
//!
//! ```text
//! expr := NAME | L(seq) | hd(expr, expr) | conv(expr, expr) | zero(expr) | unit
//! seq  := v,v,...  |  vv...     (without commas every vertex is one digit)
//! v    := 2k | -2k | ~2k
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use hecke_core::algebra::Engine;
use hecke_core::modrep::{induce, module_from_json, point_module_klr, unit_module, GradedModule};
use hecke_core::quiver::{OrbitConfig, VSeq, Vertex};
use hecke_core::rmatrix::{convolve, head_product};
use serde_json::value::RawValue;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Point(Vec<Vertex>),
    Head(Box<Expr>, Box<Expr>),
    Conv(Box<Expr>, Box<Expr>),
    Zero(Box<Expr>),
    Unit,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Point(vs) => write!(f, "L({})", vs.iter().map(|v| v.ascii()).collect::<Vec<_>>().join(",")),
            Expr::Head(a, b) => write!(f, "hd({a},{b})"),
            Expr::Conv(a, b) => write!(f, "conv({a},{b})"),
            Expr::Zero(a) => write!(f, "zero({a})"),
            Expr::Unit => write!(f, "unit"),
        }
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            bail!("expected `{tok}` at column {} of {:?}", self.pos + 1, self.s)
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let n = r.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(r.len());
        if n == 0 || !r.starts_with(|c: char| c.is_alphabetic() || c == '_') {
            return None;
        }
        self.pos += n;
        Some(&r[..n])
    }

    fn expr(&mut self) -> Result<Expr> {
        let start = self.pos;
        let id = self.ident().ok_or_else(|| anyhow!("expected a module expression at column {} of {:?}", start + 1, self.s))?;
        match id {
            "L" if self.eat("(") => {
                let close = self.rest().find(')').ok_or_else(|| anyhow!("unclosed `L(` in {:?}", self.s))?;
                let body = &self.rest()[..close];
                self.pos += close + 1;
                Ok(Expr::Point(parse_seq(body)?))
            }
            "hd" | "conv" if self.eat("(") => {
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                Ok(if id == "hd" { Expr::Head(Box::new(a), Box::new(b)) } else { Expr::Conv(Box::new(a), Box::new(b)) })
            }
            "zero" if self.eat("(") => {
                let a = self.expr()?;
                self.expect(")")?;
                Ok(Expr::Zero(Box::new(a)))
            }
            "unit" => Ok(Expr::Unit),
            name => Ok(Expr::Name(name.to_string())),
        }
    }
}

/// `0,2`, `02`, `0,~2`, `~24`, `-2`.
pub fn parse_seq(body: &str) -> Result<Vec<Vertex>> {
    let body = body.trim();
    if body.is_empty() {
        bail!("empty vertex sequence");
    }
    let tokens: Vec<String> = if body.contains(',') {
        body.split(',').map(|t| t.trim().to_string()).collect()
    } else {
        let mut out = Vec::new();
        let mut prefix = String::new();
        for c in body.chars() {
            if c == '~' || c == '-' {
                prefix.push(c);
            } else {
                out.push(format!("{prefix}{c}"));
                prefix.clear();
            }
        }
        if !prefix.is_empty() {
            bail!("dangling `{prefix}` in {body:?}");
        }
        out
    };
    tokens.iter().map(|t| Vertex::parse(t).map_err(|e| anyhow!("{e}"))).collect()
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { s, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if !p.rest().is_empty() {
        bail!("trailing input {:?} in {:?}", p.rest(), s);
    }
    Ok(e)
}

/// Named modules over one orbit; every stored module has passed verification.
pub struct Workspace {
    pub cfg: OrbitConfig,
    pub modules: BTreeMap<String, GradedModule>,
}

impl Workspace {
    pub fn empty(cfg: OrbitConfig) -> Self {
        Self { cfg, modules: BTreeMap::new() }
    }

    /// Reads `{"orbit": {"cyclic_order": r}, "modules": {NAME: expr | module | {"file": path}}}`.
    pub fn load(engine: &Engine, path: &Path, cyclic_override: Option<u32>) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Self::from_json_text(engine, &text, dir, cyclic_override).with_context(|| format!("in {}", path.display()))
    }

    pub fn from_json_text(engine: &Engine, text: &str, dir: &Path, cyclic_override: Option<u32>) -> Result<Self> {
        let entries = unique_entries(text)?;
        let mut orbit = OrbitConfig::infinite();
        let mut modules: Vec<(String, Box<RawValue>)> = Vec::new();
        for (k, v) in entries {
            match k.as_str() {
                "orbit" => {
                    orbit = serde_json::from_str(v.get()).map_err(|e| anyhow!("orbit: {e}"))?;
                }
                "modules" => {
                    modules = unique_entries(v.get()).map_err(|e| anyhow!("modules: {e}"))?;
                }
                other => bail!("unknown top-level field `{other}`"),
            }
        }
        if let Some(r) = cyclic_override {
            orbit = OrbitConfig { cyclic_order: r };
        }
        orbit.validate().map_err(|e| anyhow!("orbit: {e}"))?;
        let mut ws = Self::empty(orbit);
        for (name, raw) in modules {
            let v: Value = serde_json::from_str(raw.get()).map_err(|e| anyhow!("modules.{name}: {e}"))?;
            if parse_expr(&name).ok() != Some(Expr::Name(name.clone())) {
                bail!("modules.{name}: not a plain module name");
            }
            let m = match &v {
                Value::String(s) => ws.eval(engine, &parse_expr(s)?).with_context(|| format!("modules.{name}"))?,
                Value::Object(o) if o.contains_key("file") => {
                    let f = o["file"].as_str().ok_or_else(|| anyhow!("modules.{name}.file: expected a path"))?;
                    let p = dir.join(f);
                    let text = std::fs::read_to_string(&p).with_context(|| format!("modules.{name}: reading {}", p.display()))?;
                    let json: Value = serde_json::from_str(&text).with_context(|| format!("modules.{name}: {}", p.display()))?;
                    module_from_json(engine, &json).map_err(|e| anyhow!("modules.{name}: {e}"))?
                }
                Value::Object(_) => module_from_json(engine, &v).map_err(|e| anyhow!("modules.{name}: {e}"))?,
                _ => bail!("modules.{name}: expected an expression, a module object or {{\"file\": ...}}"),
            };
            if m.cfg() != &ws.cfg {
                bail!("modules.{name}: module is over cyclic_order {} but the orbit has {}", m.cfg().cyclic_order, ws.cfg.cyclic_order);
            }
            ws.modules.insert(name, m);
        }
        Ok(ws)
    }

    pub fn eval(&self, engine: &Engine, e: &Expr) -> Result<GradedModule> {
        Ok(match e {
            Expr::Name(n) => self.modules.get(n).cloned().ok_or_else(|| anyhow!("unknown module `{n}`"))?,
            Expr::Point(vs) => {
                // W e(i) and W e(i') agree when i' flips barred entries through θ.
                let pos: Vec<Vertex> = vs.iter().map(|v| if v.is_positive() { *v } else { v.theta() }).collect();
                let klr = point_module_klr(self.cfg, &VSeq(pos)).map_err(|x| anyhow!("{e}: {x}"))?;
                induce(engine, &klr).map_err(|x| anyhow!("{e}: {x}"))?.module
            }
            Expr::Head(a, b) => {
                let (a, b) = (self.eval(engine, a)?, self.eval(engine, b)?);
                head_product(engine, &a, &b).map_err(|x| anyhow!("{e}: {x}"))?.head.module
            }
            Expr::Conv(a, b) => {
                let (a, b) = (self.eval(engine, a)?, self.eval(engine, b)?);
                convolve(engine, &a, &b).map_err(|x| anyhow!("{e}: {x}"))?.module
            }
            Expr::Zero(a) => GradedModule::zero(self.eval(engine, a)?.algebra().clone()),
            Expr::Unit => unit_module(self.cfg),
        })
    }
}

/// Top-level object entries in file order, rejecting repeated keys.
fn unique_entries(text: &str) -> Result<Vec<(String, Box<RawValue>)>> {
    use serde::de::{Deserializer, MapAccess, Visitor};
    struct Entries;
    impl<'de> Visitor<'de> for Entries {
        type Value = Vec<(String, Box<RawValue>)>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a JSON object")
        }
        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out: Vec<(String, Box<RawValue>)> = Vec::new();
            while let Some((k, v)) = map.next_entry::<String, Box<RawValue>>()? {
                if out.iter().any(|(x, _)| *x == k) {
                    return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                }
                out.push((k, v));
            }
            Ok(out)
        }
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let out = (&mut de).deserialize_map(Entries).map_err(|e| anyhow!("{e}"))?;
    de.end().map_err(|e| anyhow!("{e}"))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expressions() {
        assert_eq!(parse_expr("L(02)").unwrap(), parse_expr("L(0, 2)").unwrap());
        assert_eq!(parse_expr("hd(L(0),L(2))").unwrap().to_string(), "hd(L(0),L(2))");
        assert_eq!(parse_expr("conv(A, L(~2))").unwrap().to_string(), "conv(A,L(~2))");
        assert_eq!(parse_expr("L(-24)").unwrap().to_string(), "L(-2,4)");
        assert!(parse_expr("L(3)").is_err());
        assert!(parse_expr("hd(L(0)").is_err());
        assert!(parse_expr("L(0) x").is_err());
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let e = Engine::new();
        let r = Workspace::from_json_text(&e, r#"{"modules": {"A": "L(0)", "A": "L(2)"}}"#, Path::new("."), None);
        assert!(r.err().unwrap().to_string().contains("duplicate"));
    }

    #[test]
    fn barred_point_is_the_theta_image() {
        let e = Engine::new();
        let ws = Workspace::empty(OrbitConfig::infinite());
        let a = ws.eval(&e, &parse_expr("L(~2)").unwrap()).unwrap();
        let b = ws.eval(&e, &parse_expr("L(-2)").unwrap()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), b.labels());
    }
}
