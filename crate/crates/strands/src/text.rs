//! Element syntax for both algebras.
//!
//! `A`: `C2 C4 [1/9]_1 [0/2]_3 @ {0,1,2,3,4,5}`, with `J{0,2}` for an
//! idempotent. Zero columns may be written or omitted.
//!
//! `B`: `C1 U1^2 U3 @ {0,2}->{1,2}`, with `I{0,2}` for an idempotent and a
//! bare `@ {0}->{1}` for `γ`.
//!
//! Terms are joined by `+`; `0` is the zero element. The left idempotent is
//! part of every term because columns alone do not determine it.

use serde::Serialize;

use crate::chain::Chain;
use crate::combinatorics::IState;
use crate::error::{Error, Result};
use crate::osz::{OsElement, OsGen, OsRecord, OszAlgebra};
use crate::strands::{Ctx, GenRecord, StrandsAlgebra, StrandsElement, StrandsGen};

fn format_state(x: &IState) -> String {
    x.to_string()
}

pub fn format_strands_gen(g: &StrandsGen) -> String {
    if g.is_idempotent() {
        return format!("J{}", format_state(&g.x));
    }
    let mut parts: Vec<String> = (1..=g.n()).filter(|&i| g.has_c(i)).map(|i| format!("C{i}")).collect();
    for (i, &(p, q)) in g.pq.iter().enumerate() {
        if (p, q) != (0, 0) {
            parts.push(format!("[{p}/{q}]_{}", i + 1));
        }
    }
    parts.push(format!("@ {}", format_state(&g.x)));
    parts.join(" ")
}

pub fn format_os_gen(g: &OsGen) -> String {
    let mut parts = Vec::new();
    for i in 1..=g.n() {
        if g.has_c(i) {
            parts.push(format!("C{i}"));
        }
    }
    for (i, &r) in g.r.iter().enumerate() {
        match r {
            0 => {}
            1 => parts.push(format!("U{}", i + 1)),
            _ => parts.push(format!("U{}^{r}", i + 1)),
        }
    }
    if parts.is_empty() && g.x == g.y {
        return format!("I{}", format_state(&g.x));
    }
    parts.push(format!("@ {}->{}", format_state(&g.x), format_state(&g.y)));
    parts.join(" ")
}

fn join<G: Ord + Clone>(e: &Chain<G>, f: impl Fn(&G) -> String) -> String {
    if e.is_zero() {
        "0".into()
    } else {
        e.iter().map(f).collect::<Vec<_>>().join(" + ")
    }
}

pub fn format_strands(e: &StrandsElement) -> String {
    join(e, format_strands_gen)
}

pub fn format_os(e: &OsElement) -> String {
    join(e, format_os_gen)
}

/// Hand-rolled scanner over the element grammar; positions are byte offsets.
struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.err(format!("expected '{s}'")))
        }
    }

    /// An unsigned integer with no leading whitespace.
    fn number_here(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        self.number_here()
    }

    fn state(&mut self, n: usize) -> Result<IState> {
        self.expect('{')?;
        let start = self.pos;
        let mut members = Vec::new();
        if !self.eat('}') {
            loop {
                members.push(self.number()? as usize);
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        IState::new(n, &members).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    }

    /// A line index in `[1,n]`.
    fn line(&mut self, n: usize) -> Result<usize> {
        let at = self.pos;
        let i = self.number_here()? as usize;
        if i == 0 || i > n {
            return Err(Error::Parse { pos: at, msg: format!("line {i} outside [1,{n}]") });
        }
        Ok(i)
    }
}

fn terms<G: Ord + Clone>(src: &str, mut term: impl FnMut(&mut Scanner) -> Result<G>) -> Result<Chain<G>> {
    let mut sc = Scanner::new(src);
    let mut out = Chain::zero();
    if sc.at_end() {
        return Err(sc.err("empty element"));
    }
    sc.skip_ws();
    if sc.src[sc.pos..].trim() == "0" {
        return Ok(out);
    }
    loop {
        out.toggle(term(&mut sc)?);
        if sc.at_end() {
            return Ok(out);
        }
        sc.expect('+')?;
    }
}

pub fn parse_strands(alg: &StrandsAlgebra, src: &str) -> Result<StrandsElement> {
    let n = alg.ctx.n();
    terms(src, |sc| {
        sc.skip_ws();
        let start = sc.pos;
        if sc.eat('J') {
            let x = sc.state(n)?;
            return alg.idempotent(&x).map_err(|e| Error::Parse { pos: start, msg: e.to_string() });
        }
        let mut c = 0u64;
        let mut pq = vec![None; n];
        loop {
            sc.skip_ws();
            let at = sc.pos;
            if sc.eat('C') {
                let i = sc.line(n)?;
                if c >> i & 1 == 1 {
                    return Err(Error::Parse { pos: at, msg: format!("C{i} repeated") });
                }
                c |= 1 << i;
            } else if sc.eat('[') {
                let p = sc.number()? as u32;
                sc.expect('/')?;
                let q = sc.number()? as u32;
                sc.expect(']')?;
                sc.expect('_')?;
                let i = sc.line(n)?;
                if pq[i - 1].replace((p, q)).is_some() {
                    return Err(Error::Parse { pos: at, msg: format!("column {i} repeated") });
                }
            } else {
                break;
            }
        }
        sc.expect('@')?;
        let x = sc.state(n)?;
        let g = StrandsGen { x, c, pq: pq.into_iter().map(|col| col.unwrap_or((0, 0))).collect() };
        alg.validate(&g).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })?;
        Ok(g)
    })
}

pub fn parse_os(alg: &OszAlgebra, src: &str) -> Result<OsElement> {
    let n = alg.ctx.n();
    terms(src, |sc| {
        sc.skip_ws();
        let start = sc.pos;
        let invalid = |e: Error| Error::Parse { pos: start, msg: e.to_string() };
        if sc.eat('I') {
            let x = sc.state(n)?;
            let g = OsGen::idempotent(x);
            alg.validate(&g).map_err(invalid)?;
            return Ok(g);
        }
        let mut c = 0u64;
        let mut r = vec![0u32; n];
        loop {
            sc.skip_ws();
            let at = sc.pos;
            if sc.eat('C') {
                let i = sc.line(n)?;
                if c >> i & 1 == 1 {
                    return Err(Error::Parse { pos: at, msg: format!("C{i} repeated") });
                }
                c |= 1 << i;
            } else if sc.eat('U') {
                let i = sc.line(n)?;
                let e = if sc.peek() == Some('^') {
                    sc.pos += 1;
                    sc.number_here()? as u32
                } else {
                    1
                };
                r[i - 1] += e;
            } else {
                break;
            }
        }
        sc.expect('@')?;
        let x = sc.state(n)?;
        sc.expect_str("->")?;
        let y = sc.state(n)?;
        let g = OsGen { x, y, c, r };
        alg.validate(&g).map_err(invalid)?;
        Ok(g)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CtxRecord {
    pub n: usize,
    pub k: usize,
    pub s: Vec<usize>,
}

impl From<&Ctx> for CtxRecord {
    fn from(ctx: &Ctx) -> Self {
        CtxRecord { n: ctx.n(), k: ctx.k(), s: ctx.s_lines() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementJson<R> {
    pub ctx: CtxRecord,
    pub terms: Vec<R>,
}

pub fn strands_json(ctx: &Ctx, e: &StrandsElement) -> ElementJson<GenRecord> {
    ElementJson { ctx: ctx.into(), terms: e.iter().map(GenRecord::from).collect() }
}

pub fn os_json(ctx: &Ctx, e: &OsElement) -> ElementJson<OsRecord> {
    ElementJson { ctx: ctx.into(), terms: e.iter().map(OsRecord::from).collect() }
}
