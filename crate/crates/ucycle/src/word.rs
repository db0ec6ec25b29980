//! Fixed-length words over a small alphabet, with the cyclic window,
//! rotation, and period primitives the rest of the crate is built on.
//!
//! Symbols are stored 0-based. Rendering maps symbol `i` to `i + 1` for
//! non-binary alphabets and prints binary words with `0`/`1` directly.

use std::fmt;

use crate::error::{Error, Result};

/// An immutable word: a fixed-length sequence of symbol indices in
/// `[0, alphabet)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: u8,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet: u8) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidArgument("alphabet size must be positive".into()));
        }
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("word must have length >= 1".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(Error::InvalidArgument(format!(
                "symbol index {s} out of range for alphabet size {alphabet}"
            )));
        }
        Ok(Word { alphabet, symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: length >= 1
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Cyclically-read subword of `size` symbols starting at `start`.
    pub fn window(&self, start: usize, size: usize) -> Result<Word> {
        let len = self.len();
        if size == 0 || size > len {
            return Err(Error::InvalidArgument(format!(
                "window size {size} out of range for word of length {len}"
            )));
        }
        if start >= len {
            return Err(Error::InvalidArgument(format!(
                "window start {start} out of range for word of length {len}"
            )));
        }
        let symbols = (0..size).map(|i| self.symbols[(start + i) % len]).collect();
        Ok(Word { alphabet: self.alphabet, symbols })
    }

    /// Cyclic left shift by `shift` (negative shifts rotate right).
    pub fn rotate(&self, shift: isize) -> Word {
        let len = self.len() as isize;
        let shift = shift.rem_euclid(len) as usize;
        let mut symbols = Vec::with_capacity(self.len());
        symbols.extend_from_slice(&self.symbols[shift..]);
        symbols.extend_from_slice(&self.symbols[..shift]);
        Word { alphabet: self.alphabet, symbols }
    }

    /// Smallest `p` dividing the length such that the word equals its own
    /// rotation by `p`. Word lengths here are small, so divisor testing in
    /// increasing order is plenty.
    pub fn minimal_period(&self) -> usize {
        let len = self.len();
        for p in 1..=len {
            if !len.is_multiple_of(p) {
                continue;
            }
            if (p..len).all(|i| self.symbols[i] == self.symbols[i - p]) {
                return p;
            }
        }
        len
    }

    /// The word obtained by dropping the first symbol and appending `sym`;
    /// this is the overlap successor in a transition digraph.
    pub fn shift_append(&self, sym: u8) -> Word {
        debug_assert!(sym < self.alphabet);
        let mut symbols = Vec::with_capacity(self.len());
        symbols.extend_from_slice(&self.symbols[1..]);
        symbols.push(sym);
        Word { alphabet: self.alphabet, symbols }
    }

    /// The word obtained by dropping the last symbol and prepending `sym`;
    /// the overlap predecessor.
    pub fn shift_prepend(&self, sym: u8) -> Word {
        debug_assert!(sym < self.alphabet);
        let mut symbols = Vec::with_capacity(self.len());
        symbols.push(sym);
        symbols.extend_from_slice(&self.symbols[..self.len() - 1]);
        Word { alphabet: self.alphabet, symbols }
    }

    pub fn prefix(&self, len: usize) -> Word {
        debug_assert!(len >= 1 && len <= self.len());
        Word { alphabet: self.alphabet, symbols: self.symbols[..len].to_vec() }
    }

    pub fn suffix(&self, len: usize) -> Word {
        debug_assert!(len >= 1 && len <= self.len());
        Word { alphabet: self.alphabet, symbols: self.symbols[self.len() - len..].to_vec() }
    }

    pub fn ends_with(&self, tail: &[u8]) -> bool {
        self.symbols.ends_with(tail)
    }

    /// Concatenation of the word with one extra symbol; the edge label
    /// induced by leaving this vertex on `sym`.
    pub fn appended(&self, sym: u8) -> Word {
        debug_assert!(sym < self.alphabet);
        let mut symbols = Vec::with_capacity(self.len() + 1);
        symbols.extend_from_slice(&self.symbols);
        symbols.push(sym);
        Word { alphabet: self.alphabet, symbols }
    }

    /// Parses the textual forms produced by `Display`: a contiguous digit
    /// string for alphabets up to 10 (binary words use 0/1 directly, other
    /// alphabets are 1-based with '0' standing for 10), or comma-separated
    /// 1-based integers for any alphabet.
    pub fn parse(text: &str, alphabet: u8) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::InvalidArgument("empty word".into()));
        }
        let symbols = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    let v: u64 = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad symbol {part:?}")))?;
                    if v == 0 || v > alphabet as u64 {
                        return Err(Error::InvalidArgument(format!(
                            "symbol {v} out of range for alphabet size {alphabet}"
                        )));
                    }
                    Ok((v - 1) as u8)
                })
                .collect::<Result<Vec<u8>>>()?
        } else {
            text.chars()
                .map(|c| {
                    let d = c
                        .to_digit(10)
                        .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?}")))?
                        as u8;
                    let sym = if alphabet == 2 {
                        d
                    } else if d == 0 {
                        9 // '0' stands for display value 10
                    } else {
                        d - 1
                    };
                    if sym >= alphabet {
                        return Err(Error::InvalidArgument(format!(
                            "digit {c:?} out of range for alphabet size {alphabet}"
                        )));
                    }
                    Ok(sym)
                })
                .collect::<Result<Vec<u8>>>()?
        };
        Word::new(symbols, alphabet)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet == 2 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else if self.alphabet <= 10 {
            for &s in &self.symbols {
                write!(f, "{}", (s as u32 + 1) % 10)?;
            }
        } else {
            let mut first = true;
            for &s in &self.symbols {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", s as u32 + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: u8) -> Word {
        Word::parse(text, n).unwrap()
    }

    #[test]
    fn window_wraps_cyclically() {
        let cycle = w("11100010", 2);
        assert_eq!(cycle.window(6, 3).unwrap(), w("101", 2));
        assert_eq!(cycle.window(0, cycle.len()).unwrap(), cycle);
    }

    #[test]
    fn windows_of_example_cycle_cover_all_words() {
        let cycle = w("11100010", 2);
        let mut seen: Vec<String> =
            (0..8).map(|i| cycle.window(i, 3).unwrap().to_string()).collect();
        seen.sort();
        let mut expect: Vec<String> =
            ["111", "110", "100", "000", "001", "010", "101", "011"]
                .iter()
                .map(|s| s.to_string())
                .collect();
        expect.sort();
        assert_eq!(seen, expect);
    }

    #[test]
    fn window_rejects_bad_sizes() {
        let word = w("110", 2);
        assert!(word.window(0, 0).is_err());
        assert!(word.window(0, 4).is_err());
        assert!(word.window(3, 2).is_err());
    }

    #[test]
    fn rotate_matches_worked_example() {
        let word = w("25413", 5);
        assert_eq!(word.rotate(1), w("54132", 5));
        assert_eq!(word.rotate(word.len() as isize), word);
        assert_eq!(word.rotate(2).rotate(-2), word);
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(w("1010", 2).minimal_period(), 2);
        assert_eq!(w("1100", 2).minimal_period(), 4);
        assert_eq!(w("1111111", 2).minimal_period(), 1);
    }

    #[test]
    fn display_and_parse_round_trip() {
        assert_eq!(w("41235", 5).to_string(), "41235");
        assert_eq!(w("11100010", 2).to_string(), "11100010");
        let big = Word::new(vec![0, 11, 3], 12).unwrap();
        assert_eq!(big.to_string(), "1,12,4");
        assert_eq!(Word::parse("1,12,4", 12).unwrap(), big);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(Word::parse("12", 2).is_err());
        assert!(Word::parse("19", 5).is_err());
        assert!(Word::parse("0,3", 4).is_err());
        assert!(Word::parse("", 3).is_err());
    }

    #[test]
    fn symbols_validated_against_alphabet() {
        assert!(Word::new(vec![0, 3], 3).is_err());
        assert!(Word::new(vec![], 3).is_err());
        assert!(Word::new(vec![0], 0).is_err());
    }
}
