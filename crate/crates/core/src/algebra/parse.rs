use super::field::PrimeField;
use super::monomial::MAX_VARS;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Parses `x^2 - 3*y*z` style text into a polynomial over the named variables.
///
/// Grammar: `expr := ['-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := atom ['^' int]`, `atom := int | ident | '(' expr ')'`.
/// Juxtaposition is rejected. Errors carry a 1-based column.
pub fn parse_polynomial(field: &PrimeField, vars: &[String], text: &str) -> Result<Polynomial> {
    if vars.len() > MAX_VARS {
        return Err(Error::TooManyVariables(vars.len()));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, field, vars };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a PrimeField,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: String) -> Error {
        Error::Parse { line: 1, col: self.pos + 1, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg(self.field);
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.field, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.field, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(self.field, &f);
        }
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                Err(self.err("juxtaposition is not allowed; use '*'".into()))
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            if e > u16::MAX as u64 {
                return Err(self.err("exponent too large".into()));
            }
            return Ok(base.pow(self.field, e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse { line: 1, col: start + 1, msg: "integer out of range".into() })
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = self.field.characteristic() as u64;
                Ok(Polynomial::constant(self.field, (v % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::var(i)),
                    None => Err(Error::Parse { line: 1, col: start + 1, msg: format!("unknown variable '{name}'") }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}

/// Checks an identifier for use as a variable or module name.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}


#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_formats() {
        let f = PrimeField::default();
        let vars = names(&["x", "y", "z"]);
        let p = parse_polynomial(&f, &vars, "x^2 - 3*y*z").unwrap();
        assert_eq!(p.format(&f, &vars), "x^2 - 3*y*z");
        let q = parse_polynomial(&f, &vars, "(x+y)^2 - x*x - y^2").unwrap();
        assert_eq!(q.format(&f, &vars), "2*x*y");
        assert!(parse_polynomial(&f, &vars, "0").unwrap().is_zero());
        assert_eq!(parse_polynomial(&f, &vars, "-x").unwrap().format(&f, &vars), "-x");
    }

    #[test]
    fn rejects_bad_input() {
        let f = PrimeField::default();
        let vars = names(&["x", "y"]);
        assert!(matches!(parse_polynomial(&f, &vars, "2x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&f, &vars, "x y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&f, &vars, "w"), Err(Error::Parse { col: 1, .. })));
        assert!(matches!(parse_polynomial(&f, &vars, "x +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial(&f, &vars, "(x"), Err(Error::Parse { .. })));
    }
}
