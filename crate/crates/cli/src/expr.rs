//! Linear expressions over named classes: `2*H - E`, `1/2*L`,
//! `(3 - sqrt(7))*E`, or plain scalars such as `-4/3`.

use zariski_core::{Class, ExactField, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                let n = digits
                    .parse()
                    .map_err(|_| format!("integer literal `{digits}` is too large"))?;
                out.push(Token::Num(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_' || chars[i + 1] == '\'')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..=i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Scalar),
    Class(Class),
}

/// Evaluation context: named classes and the declared radicand.
pub struct Env<'a> {
    pub rank: usize,
    pub lookup: &'a dyn Fn(&str) -> Option<Class>,
    pub radicand: Option<u64>,
}

struct Parser<'a, 'e> {
    tokens: Vec<Token>,
    pos: usize,
    env: &'a Env<'e>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), String> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            Some(got) => Err(format!("expected {t:?}, found {got:?}")),
            None => Err(format!("expected {t:?} at end of input")),
        }
    }

    fn expr(&mut self) -> Result<Value, String> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek().cloned() {
            let negate = match op {
                Token::Plus => false,
                Token::Minus => true,
                _ => break,
            };
            self.pos += 1;
            let mut rhs = self.term()?;
            if negate {
                rhs = neg(rhs);
            }
            acc = add(acc, rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, String> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek().cloned() {
            match op {
                Token::Star => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = mul(acc, rhs)?;
                }
                Token::Slash => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = div(acc, rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, String> {
        match self.next() {
            Some(Token::Minus) => Ok(neg(self.factor()?)),
            Some(Token::Plus) => self.factor(),
            Some(Token::Num(n)) => Ok(Value::Scalar(Scalar::from_rational(
                zariski_core::Rational::from_integer(n.into()),
            ))),
            Some(Token::Open) => {
                let v = self.expr()?;
                self.expect(Token::Close)?;
                Ok(v)
            }
            Some(Token::Ident(name)) if name == "sqrt" && self.peek() == Some(&Token::Open) => {
                self.pos += 1;
                let n = match self.next() {
                    Some(Token::Num(n)) => n,
                    _ => return Err("sqrt expects a nonnegative integer".into()),
                };
                self.expect(Token::Close)?;
                let root = Scalar::sqrt_of(n);
                if !root.is_rational() {
                    let declared = self
                        .env
                        .radicand
                        .map(|d| Scalar::sqrt_of(d).radicand().clone());
                    if declared.as_ref() != Some(root.radicand()) {
                        return Err(format!("sqrt({n}) lies outside the declared field"));
                    }
                }
                Ok(Value::Scalar(root))
            }
            Some(Token::Ident(name)) => (self.env.lookup)(&name)
                .map(Value::Class)
                .ok_or_else(|| format!("unknown name `{name}`")),
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Class(c) => Value::Class(-&c),
    }
}

fn add(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => {
            x.try_add(&y).map(Value::Scalar).map_err(|e| e.to_string())
        }
        (Value::Class(x), Value::Class(y)) => Ok(Value::Class(&x + &y)),
        _ => Err("cannot add a scalar and a class".into()),
    }
}

fn mul(a: Value, b: Value) -> Result<Value, String> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => {
            x.try_mul(&y).map(Value::Scalar).map_err(|e| e.to_string())
        }
        (Value::Scalar(s), Value::Class(c)) | (Value::Class(c), Value::Scalar(s)) => {
            Ok(Value::Class(c.scale(&s)))
        }
        _ => Err("cannot multiply two classes".into()),
    }
}

fn div(a: Value, b: Value) -> Result<Value, String> {
    let Value::Scalar(d) = b else {
        return Err("cannot divide by a class".into());
    };
    let inv = d.try_inv().map_err(|e| e.to_string())?;
    mul(a, Value::Scalar(inv))
}

pub fn evaluate(src: &str, env: &Env) -> Result<Value, String> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { tokens, pos: 0, env };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in `{src}`"));
    }
    Ok(v)
}

pub fn scalar(src: &str, env: &Env) -> Result<Scalar, String> {
    match evaluate(src, env)? {
        Value::Scalar(s) => Ok(s),
        Value::Class(_) => Err(format!("`{src}` is a class, expected a scalar")),
    }
}

pub fn class(src: &str, env: &Env) -> Result<Class, String> {
    match evaluate(src, env)? {
        Value::Class(c) => Ok(c),
        Value::Scalar(s) if s == Scalar::from(0) => Ok(Class::zero(env.rank)),
        Value::Scalar(_) => Err(format!("`{src}` is a scalar, expected a class")),
    }
}
