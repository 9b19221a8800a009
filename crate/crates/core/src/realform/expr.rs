//! Integer expressions used by the parametric rows of the Tits tables.

use num_integer::Integer;

#[derive(Clone, Copy, Debug, Default)]
pub struct Vars {
    pub n: i64,
    pub s: i64,
}

pub fn eval(src: &str, vars: Vars) -> Result<i64, String> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens: &tokens, pos: 0, vars };
    let v = p.equality()?;
    if p.pos != tokens.len() {
        return Err(format!("trailing input in {src:?}"));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Var(char),
    Op(&'static str),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(src[start..i].parse().map_err(|e| format!("{e}"))?));
            }
            'n' | 's' => {
                out.push(Tok::Var(c));
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '=' if b.get(i + 1) == Some(&b'=') => {
                out.push(Tok::Op("=="));
                i += 2;
            }
            '+' | '-' | '*' | '/' | '%' | '^' => {
                out.push(Tok::Op(match c {
                    '+' => "+",
                    '-' => "-",
                    '*' => "*",
                    '/' => "/",
                    '%' => "%",
                    _ => "^",
                }));
                i += 1;
            }
            _ => return Err(format!("unexpected character {c:?} in {src:?}")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    vars: Vars,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<&'static str> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(o)) => Some(o),
            _ => None,
        }
    }

    fn equality(&mut self) -> Result<i64, String> {
        let lhs = self.sum()?;
        if self.peek_op() == Some("==") {
            self.pos += 1;
            let rhs = self.sum()?;
            return Ok((lhs == rhs) as i64);
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<i64, String> {
        let mut v = self.product()?;
        while let Some(op @ ("+" | "-")) = self.peek_op() {
            self.pos += 1;
            let r = self.product()?;
            v = if op == "+" { v + r } else { v - r };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<i64, String> {
        let mut v = self.unary()?;
        while let Some(op @ ("*" | "/" | "%")) = self.peek_op() {
            self.pos += 1;
            let r = self.unary()?;
            v = match op {
                "*" => v * r,
                _ if r == 0 => return Err("division by zero".into()),
                "/" => Integer::div_floor(&v, &r),
                _ => v.mod_floor(&r),
            };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<i64, String> {
        if self.peek_op() == Some("-") {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<i64, String> {
        let base = self.atom()?;
        if self.peek_op() == Some("^") {
            self.pos += 1;
            let exp = self.unary()?;
            return match (base, exp) {
                (1, _) => Ok(1),
                (-1, e) => Ok(if e.rem_euclid(2) == 0 { 1 } else { -1 }),
                (_, e) if e < 0 => Err("negative exponent".into()),
                (b, e) => Ok(b.pow(e as u32)),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<i64, String> {
        let tok = self.tokens.get(self.pos).cloned().ok_or("unexpected end of expression")?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(v),
            Tok::Var('n') => Ok(self.vars.n),
            Tok::Var(_) => Ok(self.vars.s),
            Tok::LParen => {
                let v = self.equality()?;
                match self.tokens.get(self.pos) {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err("missing ')'".into()),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}
