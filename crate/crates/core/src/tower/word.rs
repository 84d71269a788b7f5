//! RVT letters and words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    R,
    V,
    T,
    L,
    T1,
    T2,
    L1,
    L2,
    L3,
}

impl Letter {
    pub const ALL: [Letter; 9] =
        [Letter::R, Letter::V, Letter::T, Letter::L, Letter::T1, Letter::T2, Letter::L1, Letter::L2, Letter::L3];

    pub fn as_str(self) -> &'static str {
        match self {
            Letter::R => "R",
            Letter::V => "V",
            Letter::T => "T",
            Letter::L => "L",
            Letter::T1 => "T1",
            Letter::T2 => "T2",
            Letter::L1 => "L1",
            Letter::L2 => "L2",
            Letter::L3 => "L3",
        }
    }

    /// Critical letters are everything except `R`.
    pub fn is_critical(self) -> bool {
        self != Letter::R
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A word over the RVT alphabet; letter `i` (1-based) describes the level-`(i-1)` direction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RvtWord(Vec<Letter>);

impl RvtWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        RvtWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn prefix(&self, n: usize) -> RvtWord {
        RvtWord(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn with(&self, l: Letter) -> RvtWord {
        let mut w = self.clone();
        w.push(l);
        w
    }
}

impl fmt::Display for RvtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for RvtWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let digit = b.get(i + 1).copied().filter(u8::is_ascii_digit);
            let letter = match (b[i], digit) {
                (b'R', None) => Letter::R,
                (b'V', None) => Letter::V,
                (b'T', None) => Letter::T,
                (b'L', None) => Letter::L,
                (b'T', Some(b'1')) => Letter::T1,
                (b'T', Some(b'2')) => Letter::T2,
                (b'L', Some(b'1')) => Letter::L1,
                (b'L', Some(b'2')) => Letter::L2,
                (b'L', Some(b'3')) => Letter::L3,
                _ => return Err(Error::Parse(format!("bad RVT word {s:?}"))),
            };
            i += if digit.is_some() { 2 } else { 1 };
            out.push(letter);
        }
        Ok(RvtWord(out))
    }
}

impl Serialize for RvtWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RvtWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for w in ["RVLT1", "RVLL3", "RRRR", "RVT", ""] {
            assert_eq!(w.parse::<RvtWord>().unwrap().to_string(), w);
        }
        assert_eq!("RVLT2".parse::<RvtWord>().unwrap().len(), 4);
        assert!("RX".parse::<RvtWord>().is_err());
        assert!("RV4".parse::<RvtWord>().is_err());
    }
}
