//! Words over generator names: `a*b^-1`, `(s1*s2)^3`, `1`.
//!
//! ```text
//! word   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := name | '1' | '(' word ')'
//! ```

use super::{Element, Group};
use crate::error::{Error, Result};

struct Parser<'a> {
    group: &'a Group,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn word(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.group.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            return Ok(self.group.pow(&base, k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<i128>() {
            Ok(k) => Ok(k),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Element> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(w)
            }
            Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "1" {
                    return Ok(self.group.identity());
                }
                self.group
                    .lookup(name)
                    .ok_or_else(|| Error::UnknownName(name.to_string()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of word"),
        }
    }
}

/// Evaluate a word over the group's generator and alias names.
pub fn parse_word(group: &Group, text: &str) -> Result<Element> {
    let mut p = Parser { group, src: text.as_bytes(), pos: 0 };
    let e = p.word()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupSpec};

    #[test]
    fn parses_words() {
        let q8 = make_group(&GroupSpec::Q8 { names: None }).unwrap();
        let i = q8.lookup("i").unwrap();
        let j = q8.lookup("j").unwrap();
        assert_eq!(parse_word(&q8, "i*j").unwrap(), q8.mul(&i, &j));
        assert_eq!(parse_word(&q8, "k").unwrap(), q8.mul(&i, &j));
        assert_eq!(parse_word(&q8, "(i*j)^-1").unwrap(), q8.inv(&q8.mul(&i, &j)));
        assert_eq!(parse_word(&q8, " i ^ 4 ").unwrap(), q8.identity());
        assert_eq!(parse_word(&q8, "1").unwrap(), q8.identity());
        assert!(matches!(parse_word(&q8, "i*z"), Err(Error::UnknownName(_))));
        assert!(matches!(parse_word(&q8, "i*("), Err(Error::Parse { .. })));
        assert!(matches!(parse_word(&q8, "i^x"), Err(Error::Parse { .. })));
    }
}
