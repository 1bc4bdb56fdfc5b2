//! Words in a free group on indexed generators.

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

/// A generator raised to ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub const fn new(gen: usize, exp: i8) -> Self {
        Letter { gen, exp }
    }

    pub const fn pos(gen: usize) -> Self {
        Letter { gen, exp: 1 }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, exp: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }

    fn key(self) -> (usize, bool) {
        (self.gen, self.exp < 0)
    }
}

// a < a^-1 < b < b^-1 < ...
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Word = Vec<Letter>;

pub fn inverse(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling the ends against each other.
pub fn cyclic_reduce(word: &[Letter]) -> Word {
    let w = free_reduce(word);
    let mut start = 0;
    let mut end = w.len();
    while end - start >= 2 && w[start] == w[end - 1].inverse() {
        start += 1;
        end -= 1;
    }
    w[start..end].to_vec()
}

/// Least rotation of `word` and of its inverse.
pub fn cyclic_canonical(word: &[Letter]) -> Word {
    let inv = inverse(word);
    let mut best = least_rotation(word);
    let other = least_rotation(&inv);
    if other < best {
        best = other;
    }
    best
}

pub fn least_rotation(word: &[Letter]) -> Word {
    let n = word.len();
    (0..n.max(1))
        .map(|r| {
            let mut w = Vec::with_capacity(n);
            w.extend_from_slice(&word[r.min(n)..]);
            w.extend_from_slice(&word[..r.min(n)]);
            w
        })
        .min()
        .unwrap_or_default()
}

/// Sum of exponents of each generator.
pub fn exponent_sums(word: &[Letter], n_gens: usize) -> Vec<i64> {
    let mut sums = vec![0i64; n_gens];
    for l in word {
        sums[l.gen] += l.exp as i64;
    }
    sums
}

/// Renders `word` with powers collapsed, e.g. `a b^-1 a b^2`; the empty word
/// is `1`.
pub fn format_word(word: &[Letter], names: &[String]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let l = word[i];
        let mut run = 1;
        while i + run < word.len() && word[i + run] == l {
            run += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&names[l.gen]);
        let power = run as i64 * l.exp as i64;
        if power != 1 {
            write!(out, "^{power}").unwrap();
        }
        i += run;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
}

/// Parses words like `a b^-1 a b^2` or `a*b^-1`; `1` is the empty word.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, WordParseError> {
    let mut out = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        if token == "1" {
            continue;
        }
        let (name, power) = match token.split_once('^') {
            Some((n, p)) => {
                let p: i64 = p.parse().map_err(|_| WordParseError::BadExponent(token.to_string()))?;
                (n, p)
            }
            None => (token, 1),
        };
        let gen =
            names.iter().position(|n| n == name).ok_or_else(|| WordParseError::UnknownGenerator(name.to_string()))?;
        let letter = Letter::new(gen, if power < 0 { -1 } else { 1 });
        out.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
    }
    Ok(out)
}
