//! Permutations in one-line notation and the usual statistics on them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > crate::MAX_CARS {
            return Err(Error::InvalidArgument(format!(
                "permutation length {n} outside 1..={}",
                crate::MAX_CARS
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self(values))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n as u8).collect())
    }

    pub fn reverse(n: usize) -> Self {
        Self((1..=n as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    /// Maximal increasing blocks of consecutive positions, left to right.
    pub fn runs(&self) -> Vec<&[u8]> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..self.0.len() {
            if self.0[i] < self.0[i - 1] {
                out.push(&self.0[start..i]);
                start = i;
            }
        }
        out.push(&self.0[start..]);
        out
    }

    /// Sum of the (1-based) descent positions.
    pub fn maj(&self) -> usize {
        (1..self.0.len())
            .filter(|&i| self.0[i] < self.0[i - 1])
            .sum()
    }

    pub fn inv(&self) -> usize {
        inversions(&self.0)
    }

    /// `{ i : i+1 appears before i }`.
    pub fn ides(&self) -> Subset {
        word_ides(&self.0)
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Perm(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Perm(cur.clone()));
        }
        out
    }

    /// Packs the permutation into a `u64`, four bits per entry.
    pub(crate) fn code(values: &[u8]) -> u64 {
        values
            .iter()
            .fold(0u64, |acc, &v| (acc << 4) | (v as u64 - 1))
    }

    pub(crate) fn from_code(code: u64, n: usize) -> Perm {
        let mut v = vec![0u8; n];
        let mut c = code;
        for slot in v.iter_mut().rev() {
            *slot = (c & 0xf) as u8 + 1;
            c >>= 4;
        }
        Perm(v)
    }
}

pub fn inversions(word: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

/// Inverse descent set of a word that is a permutation of `1..=n`.
pub fn word_ides(word: &[u8]) -> Subset {
    let n = word.len();
    let mut pos = [0usize; crate::MAX_CARS + 1];
    for (i, &v) in word.iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut s = Subset::empty();
    for i in 1..n {
        if pos[i + 1] < pos[i] {
            s.insert(i as u8);
        }
    }
    s
}

/// Lexicographic successor in place; `false` at the last permutation.
pub fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Accepts `23145` (single digits) or `2,3,1,4,5`.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<u8>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        };
        let values = values
            .ok_or_else(|| Error::InvalidArgument(format!("cannot parse permutation {s:?}")))?;
        Perm::new(values)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}
