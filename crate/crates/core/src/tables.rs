//! Seed tables of magic borders: fixed order-4 entries and entries
//! parameterized by the order `m`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numbers::InnerOrder;
use crate::plan::BorderPlan;

/// The tables shipped with the crate.
pub const SEED_TABLES: &str = include_str!("../data/seed_tables.txt");

pub const FORMAT_VERSION: u32 = 1;

/// Integer polynomial expression in `m`, e.g. `(m+2)^2-15` or `2m-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(i64),
    M,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, m: i64) -> i64 {
        match self {
            Expr::Const(k) => *k,
            Expr::M => m,
            Expr::Neg(e) => -e.eval(m),
            Expr::Add(a, b) => a.eval(m) + b.eval(m),
            Expr::Sub(a, b) => a.eval(m) - b.eval(m),
            Expr::Mul(a, b) => a.eval(m) * b.eval(m),
            Expr::Pow(a, k) => a.eval(m).pow(*k),
        }
    }

    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = ExprParser {
            src: src.as_bytes(),
            pos: 0,
            text: src,
        };
        let e = p.sum()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Table(format!(
            "expression `{}` at byte {}: {msg}",
            self.text, self.pos
        ))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == b'+' {
                Expr::Add(Box::new(acc), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(acc), Box::new(rhs))
            };
        }
        Ok(acc)
    }

    // implicit multiplication: `2m`, `2(m+1)`
    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b'm' | b'(' | b'0'..=b'9') => {}
                _ => return Ok(acc),
            }
            let rhs = self.power()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            let k: u32 = self.text[start..self.pos]
                .parse()
                .map_err(|_| self.error("bad exponent"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'm') => {
                self.pos += 1;
                Ok(Expr::M)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
                let k = self.text[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("bad number"))?;
                Ok(Expr::Const(k))
            }
            _ => Err(self.error("expected a number, `m` or `(`")),
        }
    }
}

/// One term of a parameterized entry, kept with its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub text: String,
    pub expr: Expr,
}

impl Term {
    fn parse(text: &str) -> Result<Self> {
        Ok(Self {
            text: text.to_string(),
            expr: Expr::parse(text)?,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order4Entry {
    pub v: i64,
    pub w: i64,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl Order4Entry {
    pub fn plan(&self) -> BorderPlan {
        let n = InnerOrder::new(4).expect("4 is a valid inner order");
        BorderPlan::new(n, self.v, self.w, self.b.clone(), self.c.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamEntry {
    pub v: Term,
    pub w: Term,
    pub b: Vec<Term>,
    pub c: Vec<Term>,
    /// 1-based line in the source file.
    pub line: usize,
}

impl ParamEntry {
    pub fn corners(&self, m: i64) -> (i64, i64) {
        (self.v.expr.eval(m), self.w.expr.eval(m))
    }

    /// The entry at order `m`, completed with the block sets, exactly as
    /// written. The result is not checked.
    pub fn instantiate(&self, m: usize) -> Result<BorderPlan> {
        let n = InnerOrder::new(m)?;
        let mi = m as i64;
        let (v, w) = self.corners(mi);
        let (blocks_b, blocks_c) = block_sets(m);
        let mut b: Vec<i64> = self.b.iter().map(|t| t.expr.eval(mi)).collect();
        let mut c: Vec<i64> = self.c.iter().map(|t| t.expr.eval(mi)).collect();
        b.extend(blocks_b);
        c.extend(blocks_c);
        Ok(BorderPlan::new(n, v, w, b, c))
    }

    pub fn label(&self) -> String {
        format!("{}&{}", self.v, self.w)
    }
}

/// Block sets `B` and `C` completing a parameterized entry at order `m`.
pub fn block_sets(m: usize) -> (Vec<i64>, Vec<i64>) {
    let mi = m as i64;
    let base = mi * mi + 2 * mi;
    let count = m.saturating_sub(8) / 4;
    let mut b = Vec::with_capacity(4 * count);
    let mut c = Vec::with_capacity(4 * count);
    for i in 1..=count as i64 {
        b.extend([11 + 8 * i, 16 + 8 * i, base - 2 + 8 * i, base + 1 + 8 * i]);
        c.extend([13 + 8 * i, 14 + 8 * i, base + 3 + 8 * i, base + 4 + 8 * i]);
    }
    (b, c)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeedTable {
    pub order4: Vec<Order4Entry>,
    pub order_m: Vec<ParamEntry>,
}

fn split_entry(rest: &str, lineno: usize) -> Result<(Vec<&str>, Vec<&str>, Vec<&str>)> {
    let parts: Vec<&str> = rest.split('|').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            location: format!("seed table line {lineno}"),
            message: "expected `<v> <w> | <b> | <c>`".into(),
        });
    }
    fn words(s: &str) -> Vec<&str> {
        s.split_whitespace().collect()
    }
    Ok((words(parts[0]), words(parts[1]), words(parts[2])))
}

impl SeedTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = SeedTable::default();
        let mut version = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let bad = |message: String| Error::Parse {
                location: format!("seed table line {lineno}"),
                message,
            };
            match kind {
                "format" => {
                    let v: u32 = rest
                        .trim()
                        .parse()
                        .map_err(|_| bad("bad format version".into()))?;
                    if v != FORMAT_VERSION {
                        return Err(bad(format!("unsupported format version {v}")));
                    }
                    version = Some(v);
                }
                "order4" => {
                    let (corners, b, c) = split_entry(rest, lineno)?;
                    let ints = |xs: &[&str]| -> Result<Vec<i64>> {
                        xs.iter()
                            .map(|s| {
                                s.parse::<i64>()
                                    .map_err(|_| bad(format!("bad integer `{s}`")))
                            })
                            .collect()
                    };
                    let corners = ints(&corners)?;
                    if corners.len() != 2 {
                        return Err(bad("expected two corners".into()));
                    }
                    table.order4.push(Order4Entry {
                        v: corners[0],
                        w: corners[1],
                        b: ints(&b)?,
                        c: ints(&c)?,
                    });
                }
                "orderm" => {
                    let (corners, b, c) = split_entry(rest, lineno)?;
                    if corners.len() != 2 {
                        return Err(bad("expected two corners".into()));
                    }
                    let terms = |xs: &[&str]| {
                        xs.iter()
                            .map(|s| Term::parse(s))
                            .collect::<Result<Vec<_>>>()
                    };
                    table.order_m.push(ParamEntry {
                        v: Term::parse(corners[0])?,
                        w: Term::parse(corners[1])?,
                        b: terms(&b)?,
                        c: terms(&c)?,
                        line: lineno,
                    });
                }
                other => return Err(bad(format!("unknown record `{other}`"))),
            }
        }
        if version.is_none() {
            return Err(Error::Table("missing `format` line".into()));
        }
        Ok(table)
    }

    pub fn order4_entry(&self, v: i64, w: i64) -> Option<&Order4Entry> {
        self.order4.iter().find(|e| e.v == v && e.w == w)
    }

    pub fn param_entry(&self, m: usize, v: i64, w: i64) -> Option<&ParamEntry> {
        self.order_m.iter().find(|e| e.corners(m as i64) == (v, w))
    }
}

/// The parsed shipped tables.
pub fn seed_tables() -> &'static SeedTable {
    static TABLES: OnceLock<SeedTable> = OnceLock::new();
    TABLES.get_or_init(|| SeedTable::parse(SEED_TABLES).expect("shipped seed tables parse"))
}
