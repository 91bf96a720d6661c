//! Text syntax for words.
//!
//! ```text
//! word   := factor (('*')? factor)*
//! factor := atom ('^' integer)?
//! atom   := 'x' digit | '#' name | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! Variables are `x1`..`x9`. Coefficient names may contain letters, digits,
//! `_` and `-` (so `#-i` names the element `-i` of `Q8`). Whitespace is
//! ignored.

use super::{Symbol, Word};
use crate::error::{Error, Result};

/// Parses a word and returns it with the coefficient names in tag order.
pub fn parse_word(text: &str) -> Result<(Word, Vec<String>)> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, coeffs: Vec::new(), len: text.len() };
    let w = p.word()?;
    p.skip_ws();
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(Error::Parse { pos: at, msg: format!("unexpected {c:?}") });
    }
    Ok((w, p.coeffs))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    coeffs: Vec<String>,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected {want:?}")),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.concat(&self.factor()?);
                }
                Some('x' | '#' | '(' | '[' | '1') => acc = acc.concat(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos).is_some_and(|&(_, c)| c == '-' || c == '+') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        match s.parse::<i32>() {
            Ok(v) if v.unsigned_abs() <= 1_000_000 => Ok(v),
            _ => {
                self.pos = start;
                self.err("expected an exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                match self.chars.get(self.pos) {
                    Some(&(_, d @ '1'..='9')) => {
                        self.pos += 1;
                        if self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
                            return self.err("variables are x1..x9");
                        }
                        Ok(Word::var(d as u8 - b'1'))
                    }
                    _ => self.err("variables are x1..x9"),
                }
            }
            Some('#') => {
                self.pos += 1;
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_alphanumeric() || *c == '_' || *c == '-') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                if name.is_empty() {
                    return self.err("empty coefficient name");
                }
                let tag = match self.coeffs.iter().position(|n| *n == name) {
                    Some(i) => i,
                    None => {
                        self.coeffs.push(name);
                        self.coeffs.len() - 1
                    }
                };
                Ok(Word::power(Symbol::Coeff(tag as u32), 1))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}
