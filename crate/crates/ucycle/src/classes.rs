//! The function classes under study, each given three independent faces:
//! a membership predicate, a lexicographic enumerator, and a closed-form
//! cardinality. The enumerator doubles as the brute-force oracle against
//! which everything else is checked.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ClassName {
    AllWords,
    Injective,
    Onto,
    AlmostOnto,
    Equitable,
    OneInequitable,
    TwoInequitable,
}

impl ClassName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassName::AllWords => "all-words",
            ClassName::Injective => "injective",
            ClassName::Onto => "onto",
            ClassName::AlmostOnto => "almost-onto",
            ClassName::Equitable => "equitable",
            ClassName::OneInequitable => "one-inequitable",
            ClassName::TwoInequitable => "two-inequitable",
        }
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-words" => Ok(ClassName::AllWords),
            "injective" => Ok(ClassName::Injective),
            "onto" => Ok(ClassName::Onto),
            "almost-onto" => Ok(ClassName::AlmostOnto),
            "equitable" => Ok(ClassName::Equitable),
            "one-inequitable" => Ok(ClassName::OneInequitable),
            "two-inequitable" => Ok(ClassName::TwoInequitable),
            other => Err(Error::InvalidArgument(format!("unknown class {other:?}"))),
        }
    }
}

/// The (class, k, n) triple identifying which function family is being
/// cycled: words of length `k` over an `n`-symbol alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClassSpec {
    class: ClassName,
    k: usize,
    n: u8,
}

impl ClassSpec {
    pub fn new(class: ClassName, k: usize, n: u8) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("word length k must be positive".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("alphabet size n must be positive".into()));
        }
        match class {
            ClassName::AllWords => {}
            ClassName::Injective => {
                if k > n as usize {
                    return Err(Error::InvalidArgument(format!(
                        "injective requires k <= n, got k={k}, n={n}"
                    )));
                }
            }
            ClassName::Onto => {
                if k < n as usize {
                    return Err(Error::InvalidArgument(format!(
                        "onto requires k >= n, got k={k}, n={n}"
                    )));
                }
            }
            ClassName::AlmostOnto => {
                if n < 2 || k < n as usize - 1 {
                    return Err(Error::InvalidArgument(format!(
                        "almost-onto requires n >= 2 and k >= n-1, got k={k}, n={n}"
                    )));
                }
            }
            ClassName::Equitable => {
                if n != 2 || !k.is_multiple_of(2) || k < 4 {
                    return Err(Error::InvalidArgument(format!(
                        "equitable requires n=2 and even k >= 4, got k={k}, n={n}"
                    )));
                }
            }
            ClassName::OneInequitable => {
                if n != 2 || k % 2 != 1 || k < 3 {
                    return Err(Error::InvalidArgument(format!(
                        "one-inequitable requires n=2 and odd k >= 3, got k={k}, n={n}"
                    )));
                }
            }
            ClassName::TwoInequitable => {
                if n != 2 || !k.is_multiple_of(2) {
                    return Err(Error::InvalidArgument(format!(
                        "two-inequitable requires n=2 and even k, got k={k}, n={n}"
                    )));
                }
            }
        }
        Ok(ClassSpec { class, k, n })
    }

    pub fn class(&self) -> ClassName {
        self.class
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_member(&self, w: &Word) -> Result<bool> {
        if w.len() != self.k {
            return Err(Error::InvalidArgument(format!(
                "word length {} does not match k={}",
                w.len(),
                self.k
            )));
        }
        if w.alphabet() != self.n {
            return Err(Error::InvalidArgument(format!(
                "word alphabet {} does not match n={}",
                w.alphabet(),
                self.n
            )));
        }
        Ok(member_slice(self.class, self.n, w.symbols()))
    }

    /// Every class member exactly once, in lexicographic order. Uses the
    /// rayon thread pool when the `parallel` feature is enabled.
    pub fn enumerate(&self) -> Result<Vec<Word>> {
        #[cfg(feature = "parallel")]
        {
            self.enumerate_parallel()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.enumerate_sequential()
        }
    }

    /// Single-threaded enumeration; kept available for benchmarking against
    /// the parallel path.
    pub fn enumerate_sequential(&self) -> Result<Vec<Word>> {
        let total = self.candidate_count()?;
        let mut out = Vec::new();
        self.enumerate_range(0, total, &mut out);
        Ok(out)
    }

    #[cfg(feature = "parallel")]
    fn enumerate_parallel(&self) -> Result<Vec<Word>> {
        use rayon::prelude::*;

        let total = self.candidate_count()?;
        let chunk = ((total / 64).max(1 << 14)).min(total.max(1));
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        let parts: Vec<Vec<Word>> = starts
            .par_iter()
            .map(|&start| {
                let mut out = Vec::new();
                self.enumerate_range(start, (start + chunk).min(total), &mut out);
                out
            })
            .collect();
        Ok(parts.into_iter().flatten().collect())
    }

    fn candidate_count(&self) -> Result<u64> {
        (self.n as u64).checked_pow(self.k as u32).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "n^k overflows for k={}, n={}; class too large to enumerate",
                self.k, self.n
            ))
        })
    }

    /// Walks candidate words with ranks in `[start, end)` (base-n odometer,
    /// most significant digit first, i.e. lexicographic) and keeps members.
    fn enumerate_range(&self, start: u64, end: u64, out: &mut Vec<Word>) {
        let n = self.n as u64;
        let mut buf = vec![0u8; self.k];
        let mut rank = start;
        for pos in (0..self.k).rev() {
            buf[pos] = (rank % n) as u8;
            rank /= n;
        }
        let mut i = start;
        while i < end {
            if member_slice(self.class, self.n, &buf) {
                out.push(Word::new(buf.clone(), self.n).expect("candidate is a valid word"));
            }
            i += 1;
            // odometer increment
            for pos in (0..self.k).rev() {
                if buf[pos] as u64 + 1 < n {
                    buf[pos] += 1;
                    break;
                }
                buf[pos] = 0;
            }
        }
    }

    /// Exact class size by closed form.
    pub fn cardinality(&self) -> BigUint {
        let k = self.k;
        let n = self.n as u64;
        match self.class {
            ClassName::AllWords => BigUint::from(n).pow(k as u32),
            ClassName::Injective => {
                // n! / (n-k)! = n (n-1) ... (n-k+1)
                let mut acc = BigUint::one();
                for i in 0..k as u64 {
                    acc *= BigUint::from(n - i);
                }
                acc
            }
            ClassName::Onto => onto_count(k, self.n),
            ClassName::AlmostOnto => BigUint::from(n) * onto_count(k, self.n - 1),
            ClassName::Equitable => binomial(BigUint::from(k), BigUint::from(k / 2)),
            ClassName::OneInequitable => {
                BigUint::from(2u32) * binomial(BigUint::from(k), BigUint::from(k / 2))
            }
            ClassName::TwoInequitable => {
                if k < 2 {
                    BigUint::zero()
                } else {
                    BigUint::from(2u32) * binomial(BigUint::from(k), BigUint::from(k / 2 - 1))
                }
            }
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={} n={}", self.class, self.k, self.n)
    }
}

/// Inclusion–exclusion count of onto words: sum_i (-1)^i C(n,i) (n-i)^k.
fn onto_count(k: usize, n: u8) -> BigUint {
    if n == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut acc = BigInt::zero();
    for i in 0..=n as u64 {
        let term = BigInt::from(binomial(BigUint::from(n as u64), BigUint::from(i)))
            * BigInt::from(n as u64 - i).pow(k as u32);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert_ne!(acc.sign(), Sign::Minus);
    acc.to_biguint().expect("onto count is non-negative")
}

fn member_slice(class: ClassName, n: u8, symbols: &[u8]) -> bool {
    match class {
        ClassName::AllWords => true,
        ClassName::Injective => distinct_count(symbols) == symbols.len(),
        ClassName::Onto => distinct_count(symbols) == n as usize,
        ClassName::AlmostOnto => distinct_count(symbols) == n as usize - 1,
        ClassName::Equitable => binary_imbalance(symbols) == 0,
        ClassName::OneInequitable => binary_imbalance(symbols) == 1,
        ClassName::TwoInequitable => binary_imbalance(symbols) == 2,
    }
}

fn distinct_count(symbols: &[u8]) -> usize {
    if symbols.iter().all(|&s| s < 128) {
        let mut mask: u128 = 0;
        for &s in symbols {
            mask |= 1u128 << s;
        }
        mask.count_ones() as usize
    } else {
        let mut seen = [false; 256];
        for &s in symbols {
            seen[s as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }
}

/// |#ones - #zeros| of a binary word.
pub fn binary_imbalance(symbols: &[u8]) -> usize {
    let ones = symbols.iter().filter(|&&s| s == 1).count();
    let zeros = symbols.len() - ones;
    ones.abs_diff(zeros)
}

/// True when every alphabet symbol occurs in `w`.
pub fn is_onto_word(w: &Word) -> bool {
    distinct_count(w.symbols()) == w.alphabet() as usize
}

/// True when exactly one alphabet symbol is absent from `w`.
pub fn is_almost_onto_word(w: &Word) -> bool {
    w.alphabet() >= 1 && distinct_count(w.symbols()) == w.alphabet() as usize - 1
}

/// The unique absent symbol of an almost-onto word.
pub fn missing_symbol(w: &Word) -> Option<u8> {
    let mut seen = [false; 256];
    for &s in w.symbols() {
        seen[s as usize] = true;
    }
    let missing: Vec<u8> = (0..w.alphabet()).filter(|&s| !seen[s as usize]).collect();
    match missing.as_slice() {
        [m] => Some(*m),
        _ => None,
    }
}

/// For a binary word with more of one symbol than the other, the symbol in
/// deficit; `None` when balanced.
pub fn deficit_symbol(w: &Word) -> Option<u8> {
    let ones = w.symbols().iter().filter(|&&s| s == 1).count();
    let zeros = w.len() - ones;
    match ones.cmp(&zeros) {
        std::cmp::Ordering::Greater => Some(0),
        std::cmp::Ordering::Less => Some(1),
        std::cmp::Ordering::Equal => None,
    }
}
