//! Text format for rings and modules.
//!
//! ```text
//! ring R = Zp(2)[v1:2];
//! module M over R { gen m:0; rel 2^3*m; rel v1^2*m; }
//! ```
//!
//! A ring may carry `laurent[u:2]` and `formal[u1:0]` blocks after the
//! polynomial generators; such rings only support shift computations.
//! Relations are sums of terms, each an integer coefficient times ring
//! variables times exactly one module generator.

use gordual_core::poly::ModuleTerm;
use gordual_core::ring::Generator;
use gordual_core::{AlgebraError, CoefficientRing, FreeVector, GradedRing, ModulePresentation, Monomial, Poly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {line}:{column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, column });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| DslError::SyntaxError { line, column, message: format!("integer `{s}` too large") })?;
                out.push(Token { tok: Tok::Int(n), line, column });
            } else if "=()[]:,;{}*^+-".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line, column });
                i += 1;
            } else {
                return Err(DslError::SyntaxError { line, column, message: format!("unexpected character `{c}`") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        let (line, column) = self.here();
        Err(DslError::SyntaxError { line, column, message: message.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self, c: char) -> Result<(), DslError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Sym(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), DslError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == k => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{k}`")),
        }
    }

    fn uint(&mut self) -> Result<u64, DslError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        let neg = self.eat('-');
        let here = self.here();
        let n = i64::try_from(self.uint()?).map_err(|_| DslError::SyntaxError {
            line: here.0,
            column: here.1,
            message: "integer too large".into(),
        })?;
        Ok(if neg { -n } else { n })
    }

    fn gen_list(&mut self, close: char) -> Result<Vec<Generator>, DslError> {
        let mut gens = Vec::new();
        if self.eat(close) {
            return Ok(gens);
        }
        loop {
            let name = self.ident()?;
            self.sym(':')?;
            gens.push(Generator::new(name, self.int()?));
            if self.eat(close) {
                return Ok(gens);
            }
            self.sym(',')?;
        }
    }

    fn ring(&mut self) -> Result<(String, GradedRing), DslError> {
        self.keyword("ring")?;
        let name = self.ident()?;
        self.sym('=')?;
        let kind = self.ident()?;
        self.sym('(')?;
        let p = self.uint()?;
        self.sym(')')?;
        let coeff = match kind.as_str() {
            "Fp" => CoefficientRing::prime_field(p)?,
            "Zp" => CoefficientRing::p_local(p)?,
            _ => return self.error(format!("unknown coefficients `{kind}`, expected Fp or Zp")),
        };
        self.sym('[')?;
        let polynomial = self.gen_list(']')?;
        let (mut laurent, mut formal) = (Vec::new(), Vec::new());
        while let Some(Tok::Ident(block)) = self.peek() {
            let target = match block.as_str() {
                "laurent" => &mut laurent,
                "formal" => &mut formal,
                _ => break,
            };
            self.pos += 1;
            self.sym('[')?;
            *target = self.gen_list(']')?;
        }
        self.sym(';')?;
        Ok((name, GradedRing::new(coeff, polynomial, laurent, formal)?))
    }

    fn module(&mut self, ring_name: &str, ring: &GradedRing) -> Result<ModulePresentation, DslError> {
        self.keyword("module")?;
        let name = self.ident()?;
        self.keyword("over")?;
        let over = self.ident()?;
        if over != ring_name {
            self.pos -= 1;
            return self.error(format!("unknown ring `{over}`"));
        }
        self.sym('{')?;
        let mut gens: Vec<(String, i64)> = Vec::new();
        let mut rels = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(k)) if k == "gen" => {
                    if !rels.is_empty() {
                        return self.error("generators must precede relations");
                    }
                    self.pos += 1;
                    let g = self.ident()?;
                    if gens.iter().any(|(n, _)| *n == g) || ring.var_index(&g).is_some() {
                        self.pos -= 1;
                        return self.error(format!("name `{g}` already in use"));
                    }
                    self.sym(':')?;
                    let d = self.int()?;
                    self.sym(';')?;
                    gens.push((g, d));
                }
                Some(Tok::Ident(k)) if k == "rel" => {
                    if gens.is_empty() {
                        return self.error("a module needs at least one generator");
                    }
                    self.pos += 1;
                    let label = format!("{name} relation {}", rels.len() + 1);
                    rels.push(self.relation(ring, &gens, label, false)?);
                    self.sym(';')?;
                }
                Some(Tok::Sym('}')) => {
                    self.pos += 1;
                    break;
                }
                _ => return self.error("expected `gen`, `rel` or `}`"),
            }
        }
        if gens.is_empty() {
            return self.error("a module needs at least one generator");
        }
        Ok(ModulePresentation::new(ring.clone(), name, gens, rels)?)
    }

    /// With `implicit`, terms without a module generator sit at position 0.
    fn relation(&mut self, ring: &GradedRing, gens: &[(String, i64)], label: String, implicit: bool) -> Result<FreeVector, DslError> {
        let coeff = ring.coeff;
        let weights = ring.weights();
        let mut terms = Vec::new();
        let mut degree = None;
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let mut c: i64 = sign;
            let mut exps = vec![0u32; ring.nvars()];
            let mut pos = None;
            loop {
                let start = self.here();
                let power = |p: &mut Parser| -> Result<u32, DslError> {
                    if p.eat('^') {
                        let e = p.uint()?;
                        u32::try_from(e).or_else(|_| p.error("exponent too large"))
                    } else {
                        Ok(1)
                    }
                };
                match self.next() {
                    Some(Tok::Int(n)) => {
                        let e = power(self)?;
                        let v = i64::try_from(n)
                            .ok()
                            .and_then(|n| n.checked_pow(e))
                            .and_then(|v| c.checked_mul(v));
                        match v {
                            Some(v) => c = v,
                            None => {
                                return Err(DslError::SyntaxError {
                                    line: start.0,
                                    column: start.1,
                                    message: "coefficient too large".into(),
                                })
                            }
                        }
                    }
                    Some(Tok::Ident(x)) => {
                        let e = power(self)?;
                        if let Some(i) = ring.var_index(&x) {
                            exps[i] += e;
                        } else if let Some(g) = gens.iter().position(|(n, _)| *n == x) {
                            if pos.is_some() || e != 1 {
                                return Err(DslError::SyntaxError {
                                    line: start.0,
                                    column: start.1,
                                    message: "each term needs exactly one module generator".into(),
                                });
                            }
                            pos = Some(g);
                        } else {
                            return Err(DslError::SyntaxError {
                                line: start.0,
                                column: start.1,
                                message: format!("unknown name `{x}`"),
                            });
                        }
                    }
                    _ => {
                        self.pos -= 1;
                        return self.error("expected an integer or a name");
                    }
                }
                if !self.eat('*') {
                    break;
                }
            }
            let pos = match pos {
                Some(pos) => pos,
                None if implicit => 0,
                None => return self.error("term has no module generator"),
            };
            let mono = Monomial::from_exponents(exps, &weights);
            let d = mono.degree() + gens.get(pos).map_or(0, |g| g.1);
            if degree.is_some_and(|e| e != d) {
                return Err(DslError::InhomogeneousRelation(label));
            }
            degree = Some(d);
            terms.push(ModuleTerm { pos, mono, coeff: coeff.from_int(c) });
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
        }
        Ok(FreeVector::from_terms(&coeff, terms))
    }
}

/// Parses one ring declaration followed by any number of modules over it.
pub fn parse_dsl(text: &str) -> Result<(GradedRing, Vec<ModulePresentation>), DslError> {
    let toks = lex(text)?;
    let last = text.lines().count().max(1);
    let end = (last, text.lines().last().map_or(0, str::len) + 1);
    let mut p = Parser { toks, pos: 0, end };
    if p.peek().is_none() {
        return p.error("expected a ring declaration");
    }
    let (ring_name, ring) = p.ring()?;
    let mut modules: Vec<ModulePresentation> = Vec::new();
    while p.peek().is_some() {
        let m = p.module(&ring_name, &ring)?;
        if modules.iter().any(|n| n.name == m.name) {
            return p.error(format!("module `{}` declared twice", m.name));
        }
        modules.push(m);
    }
    Ok((ring, modules))
}

/// Parses one homogeneous ring element such as `2*x - y^3`.
pub fn parse_poly(ring: &GradedRing, text: &str) -> Result<Poly, DslError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: (1, text.len() + 1) };
    let v = p.relation(ring, &[], text.trim().to_string(), true)?;
    if p.peek().is_some() {
        return p.error("unexpected input after the element");
    }
    Ok(v.component(0))
}
