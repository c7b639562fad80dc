//! Integer expressions in q such as `q-1`, `q(q-1)` or `q^2-1`, used for weight lists.

use drinfeld_core::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    q: i64,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Invalid(format!("{msg} at position {} of {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn expr(&mut self) -> Result<i64> {
        let mut v = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let r = self.term()?;
            v = if c == b'+' { v.checked_add(r) } else { v.checked_sub(r) }.ok_or_else(|| self.err("overflow"))?;
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<i64> {
        let mut v = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'(' | b'q') | Some(b'0'..=b'9') => {}
                _ => return Ok(v),
            }
            let r = self.power()?;
            v = v.checked_mul(r).ok_or_else(|| self.err("overflow"))?;
        }
    }

    fn power(&mut self) -> Result<i64> {
        let b = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.power()?;
            let e = u32::try_from(e).map_err(|_| self.err("negative exponent"))?;
            return b.checked_pow(e).ok_or_else(|| self.err("overflow"));
        }
        Ok(b)
    }

    fn atom(&mut self) -> Result<i64> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(self.q)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("bad number"))
            }
            _ => Err(self.err("expected a number, q or (")),
        }
    }
}

pub fn eval(s: &str, q: i64) -> Result<i64> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, q };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// A comma-separated list of expressions.
pub fn eval_list(s: &str, q: i64) -> Result<Vec<i64>> {
    s.split(',').map(|x| eval(x, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(eval("q-1", 3).unwrap(), 2);
        assert_eq!(eval("q(q-1)", 3).unwrap(), 6);
        assert_eq!(eval("q^2-1", 5).unwrap(), 24);
        assert_eq!(eval("2*q + 1", 2).unwrap(), 5);
        assert_eq!(eval_list("q-1, q(q-1)", 2).unwrap(), vec![1, 2]);
        assert!(eval("q-", 2).is_err());
        assert!(eval("q)", 2).is_err());
    }
}
