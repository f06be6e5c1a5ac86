//! Expression syntax for weights and torus elements.
//!
//! Weights: `rhoG`, `rhoH`, `rhoM`, `wK` (fundamental weight), `aK` (simple
//! root), `0`, explicit vectors `[1, -1/2, 0]`, parentheses, sums and
//! rational multiples such as `1/2*a1 + w2` or `rhoG/2`. Indices are 1-based.
//!
//! Torus elements: sums of products of factors, where a factor is an integer,
//! `e^w` (or `e^(w)`, `e^-w`), `VH(w)`, `VG(w)`, `unit`, `hdr`, `dG`, `dH`,
//! `euler` or a parenthesized element.

use twind_core::charring::irreducible_restriction;
use twind_core::induction::unit_input;
use twind_core::{InductionProblem, RationalWeight, Scope, SubgroupDatum, TorusElement};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, String> {
    let b: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = b[start..i].iter().collect();
            let n = t
                .parse()
                .map_err(|_| format!("number `{t}` is too large"))?;
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(b[start..i].iter().collect())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}` at offset {i}"));
        }
    }
    Ok(out)
}

/// What names in an expression refer to.
pub struct Env<'a> {
    pub big: &'a SubgroupDatum,
    pub small: &'a SubgroupDatum,
    /// Needed only for `unit`, `hdr`, `dG`, `dH` and `euler`.
    pub problem: Option<&'a InductionProblem>,
}

struct Parser<'a, 'e> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    env: &'a Env<'e>,
}

type PResult<T> = Result<T, String>;

impl<'a, 'e> Parser<'a, 'e> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{c}` {}", self.here()))
        }
    }

    fn here(&self) -> String {
        match self.toks.get(self.pos) {
            Some((o, t)) => format!("at offset {o} (found {})", show(t)),
            None => "at end of input".into(),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            Err(format!("unexpected token {}", self.here()))
        } else {
            Ok(())
        }
    }

    fn rank(&self) -> usize {
        self.env.big.datum().rank()
    }

    fn num(&mut self) -> PResult<i64> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            _ => {
                self.pos -= 1;
                Err(format!("expected a number {}", self.here()))
            }
        }
    }

    fn rational(&mut self) -> PResult<(i64, i64)> {
        let sign = if self.eat('-') { -1 } else { 1 };
        let n = self.num()?;
        let d = if self.eat('/') { self.num()? } else { 1 };
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok((sign * n, d))
    }

    fn weight_sum(&mut self) -> PResult<RationalWeight> {
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc = RationalWeight::zero(self.rank());
        loop {
            let t = self.weight_term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn weight_term(&mut self) -> PResult<RationalWeight> {
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            let d = if self.eat('/') { self.num()? } else { 1 };
            if d == 0 {
                return Err("zero denominator".into());
            }
            if self.eat('*') {
                return Ok(self.weight_atom()?.scale(n).div(d));
            }
            if n == 0 {
                return Ok(RationalWeight::zero(self.rank()));
            }
            return Err(format!("a bare number {n} is not a weight; write {n}*w"));
        }
        self.weight_atom()
    }

    fn weight_atom(&mut self) -> PResult<RationalWeight> {
        let mut w = match self.next() {
            Some(Tok::Sym('(')) => {
                let w = self.weight_sum()?;
                self.expect(')')?;
                w
            }
            Some(Tok::Sym('[')) => {
                let mut coords = Vec::new();
                if !self.at_sym(']') {
                    loop {
                        coords.push(self.rational()?);
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                self.expect(']')?;
                if coords.len() != self.rank() {
                    return Err(format!(
                        "vector has {} entries, the lattice has rank {}",
                        coords.len(),
                        self.rank()
                    ));
                }
                let den = coords.iter().fold(1i64, |l, &(_, d)| lcm(l, d));
                let num = coords.iter().map(|&(n, d)| n * (den / d)).collect();
                RationalWeight::new(num, den)
            }
            Some(Tok::Ident(name)) => self.named_weight(&name)?,
            Some(Tok::Num(0)) => RationalWeight::zero(self.rank()),
            _ => {
                self.pos -= 1;
                return Err(format!("expected a weight {}", self.here()));
            }
        };
        while self.eat('/') {
            let d = self.num()?;
            if d == 0 {
                return Err("zero denominator".into());
            }
            w = w.div(d);
        }
        Ok(w)
    }

    fn named_weight(&self, name: &str) -> PResult<RationalWeight> {
        let big = self.env.big;
        let small = self.env.small;
        let d = big.datum();
        match name {
            "rhoG" => return Ok(big.rho_own().clone()),
            "rhoH" => return Ok(small.rho_own().clone()),
            "rhoM" => return Ok(big.rho_own() - small.rho_own()),
            _ => {}
        }
        let index = |rest: &str| -> PResult<usize> {
            let k: usize = rest.parse().map_err(|_| format!("unknown name `{name}`"))?;
            let n = d.semisimple_rank();
            if k == 0 || k > n {
                return Err(format!("`{name}`: index must be between 1 and {n}"));
            }
            Ok(k - 1)
        };
        if let Some(rest) = name.strip_prefix('w') {
            return Ok(d.fundamental_weight(index(rest)?).clone());
        }
        if let Some(rest) = name.strip_prefix('a') {
            return Ok(RationalWeight::integral(
                d.simple_roots()[index(rest)?].clone(),
            ));
        }
        Err(format!("unknown name `{name}`"))
    }

    fn element_sum(&mut self) -> PResult<TorusElement> {
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc: Option<TorusElement> = None;
        loop {
            let mut t = self.element_term()?;
            if neg {
                t = t.neg();
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.try_add(&t).map_err(|e| e.to_string())?,
            });
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc.expect("at least one term"));
            }
        }
    }

    fn element_term(&mut self) -> PResult<TorusElement> {
        let mut acc = self.element_factor()?;
        while self.eat('*') {
            let f = self.element_factor()?;
            acc = acc.try_mul(&f).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }

    fn element_factor(&mut self) -> PResult<TorusElement> {
        match self.next() {
            Some(Tok::Num(c)) => Ok(TorusElement::one(self.rank()).scale(c)),
            Some(Tok::Sym('(')) => {
                let a = self.element_sum()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(Tok::Ident(name)) => self.named_element(&name),
            _ => {
                self.pos -= 1;
                Err(format!("expected a torus element {}", self.here()))
            }
        }
    }

    fn named_element(&mut self, name: &str) -> PResult<TorusElement> {
        let env = self.env;
        let need = |what: &str| -> PResult<&InductionProblem> {
            env.problem
                .ok_or_else(|| format!("`{what}` needs a subgroup context"))
        };
        match name {
            "e" => {
                self.expect('^')?;
                let w = if self.eat('-') {
                    -&self.weight_atom()?
                } else {
                    self.weight_atom()?
                };
                Ok(TorusElement::monomial(&w, 1))
            }
            "VH" | "VG" => {
                self.expect('(')?;
                let w = self.weight_sum()?;
                self.expect(')')?;
                let scope = if name == "VH" { env.small } else { env.big };
                irreducible_restriction(scope, &w).map_err(|e| e.to_string())
            }
            "unit" => unit_input(need(name)?).map_err(|e| e.to_string()),
            "hdr" => Ok(need(name)?.hodge_de_rham_input()),
            "euler" => Ok(need(name)?.euler_class().clone()),
            "dG" => Ok(need(name)?.weyl_denominator(Scope::G).clone()),
            "dH" => Ok(need(name)?.weyl_denominator(Scope::H).clone()),
            _ => Err(format!("unknown name `{name}`")),
        }
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    (a / gcd(a, b) * b).abs()
}

fn schema(pointer: &str, message: String) -> CliError {
    CliError::Schema {
        pointer: pointer.to_string(),
        message,
    }
}

fn parser<'a, 'e>(text: &str, env: &'a Env<'e>, pointer: &str) -> Result<Parser<'a, 'e>, CliError> {
    let toks = tokenize(text).map_err(|m| schema(pointer, m))?;
    if toks.is_empty() {
        return Err(schema(pointer, "empty expression".into()));
    }
    Ok(Parser { toks, pos: 0, env })
}

pub fn parse_weight(text: &str, env: &Env<'_>, pointer: &str) -> Result<RationalWeight, CliError> {
    let mut p = parser(text, env, pointer)?;
    let w = p.weight_sum().and_then(|w| p.finish().map(|_| w));
    w.map_err(|m| schema(pointer, m))
}

pub fn parse_element(text: &str, env: &Env<'_>, pointer: &str) -> Result<TorusElement, CliError> {
    let mut p = parser(text, env, pointer)?;
    let a = p.element_sum().and_then(|a| p.finish().map(|_| a));
    a.map_err(|m| schema(pointer, m))
}
