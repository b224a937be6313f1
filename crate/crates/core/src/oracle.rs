//! Brute-force ground truth for the automata.
//!
//! A word `w = (a_0, …, a_{n−1})` over `{0, 1}` is admissible for `M ≡ 1 (mod 3)`
//! when digits `0 … n−1` of `M · Σ a_i 3^i` are all 0 or 1. Those digits are
//! final: appending `a_n 3^n` only adds multiples of `3^n`. The product is
//! carried as an explicit ternary digit vector and updated by schoolbook
//! ternary addition, so nothing here shares code with the carry automaton.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automaton::{count_paths, PointedLabeledGraph};
use crate::error::{Error, Result};
use crate::spectral::log3_biguint;
use crate::ternary::{DigitWord, Multiplier};

pub const DEFAULT_MAX_LEN: usize = 22;
pub const DEFAULT_EXTENSION_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Longest enumerated word length.
    pub max_len: usize,
    /// Search nodes allowed per extendability query before refusing.
    pub extension_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_len: DEFAULT_MAX_LEN,
            extension_budget: DEFAULT_EXTENSION_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityQuery {
    pub multipliers: Vec<Multiplier>,
    pub word: DigitWord,
}

/// Ternary digits of `M · x` for the prefix `x` chosen so far.
#[derive(Debug, Clone)]
struct Product {
    multiplier: Vec<u8>,
    digits: Vec<u8>,
}

impl Product {
    fn new(m: &Multiplier) -> Self {
        Product {
            multiplier: m.ternary().digits().to_vec(),
            digits: Vec::new(),
        }
    }

    /// Adds `M · 3^pos` to the running product.
    fn add_shifted(&mut self, pos: usize) {
        let need = pos + self.multiplier.len() + 1;
        if self.digits.len() < need {
            self.digits.resize(need, 0);
        }
        let mut carry = 0u8;
        let mut i = pos;
        for &d in &self.multiplier {
            let s = self.digits[i] + d + carry;
            self.digits[i] = s % 3;
            carry = s / 3;
            i += 1;
        }
        while carry > 0 {
            if i == self.digits.len() {
                self.digits.push(0);
            }
            let s = self.digits[i] + carry;
            self.digits[i] = s % 3;
            carry = s / 3;
            i += 1;
        }
    }

    fn digit(&self, pos: usize) -> u8 {
        self.digits.get(pos).copied().unwrap_or(0)
    }
}

/// Appends `digit` at position `pos`; false if some product digit `pos` becomes 2.
fn extend(products: &mut [Product], pos: usize, digit: u8) -> bool {
    let mut ok = true;
    for p in products.iter_mut() {
        if digit == 1 {
            p.add_shifted(pos);
        }
        ok &= p.digit(pos) != 2;
    }
    ok
}

fn products_for(ms: &[Multiplier]) -> Result<Vec<Product>> {
    if ms.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(m) = ms.iter().find(|m| m.residue() == 2) {
        return Err(Error::ResidueTwo(m.to_string()));
    }
    Ok(ms.iter().map(Product::new).collect())
}

pub fn admissible_word(q: &AdmissibilityQuery) -> Result<bool> {
    let mut products = products_for(&q.multipliers)?;
    for (pos, &d) in q.word.digits().iter().enumerate() {
        if d > 1 || !extend(&mut products, pos, d) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_len(n: usize, limits: &OracleLimits) -> Result<()> {
    if n > limits.max_len {
        return Err(Error::LimitExceeded {
            what: format!("brute-force word length {n}"),
            limit: limits.max_len,
        });
    }
    Ok(())
}

/// Number of admissible words of length `n`, by pruned depth-first enumeration.
pub fn brute_count(ms: &[Multiplier], n: usize) -> Result<u64> {
    brute_count_with(ms, n, &OracleLimits::default())
}

pub fn brute_count_with(ms: &[Multiplier], n: usize, limits: &OracleLimits) -> Result<u64> {
    check_len(n, limits)?;
    let products = products_for(ms)?;
    let mut count = 0;
    enumerate(products, 0, n, &mut |_| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

fn enumerate(
    products: Vec<Product>,
    pos: usize,
    n: usize,
    visit: &mut dyn FnMut(&[Product]) -> Result<()>,
) -> Result<()> {
    if pos == n {
        return visit(&products);
    }
    let mut with_one = products.clone();
    if extend(&mut with_one, pos, 1) {
        enumerate(with_one, pos + 1, n, visit)?;
    }
    let mut with_zero = products;
    if extend(&mut with_zero, pos, 0) {
        enumerate(with_zero, pos + 1, n, visit)?;
    }
    Ok(())
}

/// `Π (1 + ⌊M_i/2⌋)`, an upper bound on the number of carry states that needs
/// no automaton.
fn state_bound(ms: &[Multiplier]) -> Result<usize> {
    let bound = ms
        .iter()
        .map(|m| m.carry_bound() + 1u8)
        .fold(BigUint::one(), |acc, f| acc * f);
    usize::try_from(&bound).map_err(|_| Error::Overflow(bound.to_string()))
}

/// Number of admissible length-`n` words that extend to admissible words of
/// length `n + V`, with `V` the carry-state bound `Π (1 + ⌊M_i/2⌋)`. A walk of
/// `V` further steps must revisit a state, so such words extend forever.
pub fn brute_count_extendable(ms: &[Multiplier], n: usize) -> Result<u64> {
    brute_count_extendable_with(ms, n, &OracleLimits::default())
}

pub fn brute_count_extendable_with(
    ms: &[Multiplier],
    n: usize,
    limits: &OracleLimits,
) -> Result<u64> {
    let depth = state_bound(ms)?;
    brute_count_extendable_depth(ms, n, depth, limits)
}

/// As [`brute_count_extendable`] with an explicit extension depth.
pub fn brute_count_extendable_depth(
    ms: &[Multiplier],
    n: usize,
    depth: usize,
    limits: &OracleLimits,
) -> Result<u64> {
    check_len(n, limits)?;
    let products = products_for(ms)?;
    let mut count = 0;
    enumerate(products, 0, n, &mut |prefix| {
        let mut budget = limits.extension_budget;
        if extends(
            prefix.to_vec(),
            n,
            n + depth,
            &mut budget,
            limits.extension_budget,
        )? {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

fn extends(
    products: Vec<Product>,
    pos: usize,
    target: usize,
    budget: &mut u64,
    limit: u64,
) -> Result<bool> {
    if pos == target {
        return Ok(true);
    }
    if *budget == 0 {
        return Err(Error::LimitExceeded {
            what: "extendability search".into(),
            limit: limit as usize,
        });
    }
    *budget -= 1;
    let mut with_zero = products.clone();
    if extend(&mut with_zero, pos, 0) && extends(with_zero, pos + 1, target, budget, limit)? {
        return Ok(true);
    }
    let mut with_one = products;
    Ok(extend(&mut with_one, pos, 1) && extends(with_one, pos + 1, target, budget, limit)?)
}

/// `log_3 N_n / n`, which tends to the dimension for primitive graphs.
pub fn dim_estimate(g: &PointedLabeledGraph, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfRange("dimension estimate needs n ≥ 1".into()));
    }
    let count = count_paths(g, n)?;
    if count.is_zero() {
        return Err(Error::EmptyPathSet);
    }
    Ok(log3_biguint(&count) / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::build_single;

    fn ms(vs: &[u64]) -> Vec<Multiplier> {
        vs.iter().copied().map(Multiplier::from).collect()
    }

    fn query(vs: &[u64], word: &[u8]) -> AdmissibilityQuery {
        AdmissibilityQuery {
            multipliers: ms(vs),
            word: DigitWord::new(word.to_vec()).unwrap(),
        }
    }

    #[test]
    fn admissibility_examples() {
        assert!(!admissible_word(&query(&[7], &[1, 0])).unwrap());
        assert!(admissible_word(&query(&[7], &[1, 1])).unwrap());
        assert!(admissible_word(&query(&[1], &[1, 1, 0, 1, 0, 0, 1])).unwrap());
        assert!(!admissible_word(&query(&[1], &[2])).unwrap());
        assert!(matches!(
            admissible_word(&query(&[5], &[0])),
            Err(Error::ResidueTwo(_))
        ));
    }

    /// Digit check straight from the definition, with big integers.
    fn admissible_by_value(vs: &[u64], word: &[u8]) -> bool {
        let x = word
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * 3u8 + d);
        vs.iter().all(|&m| {
            let mut p = x.clone() * m;
            (0..word.len()).all(|_| {
                let d = &p % 3u8;
                p /= 3u8;
                d != BigUint::from(2u8)
            })
        })
    }

    #[test]
    fn digit_vector_agrees_with_big_integer_product() {
        for m in [1u64, 4, 7, 13, 19, 43, 97] {
            for n in 0..9usize {
                for bits in 0..(1u32 << n) {
                    let word: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
                    assert_eq!(
                        admissible_word(&query(&[m], &word)).unwrap(),
                        admissible_by_value(&[m], &word),
                        "M={m} word={word:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute_count(&ms(&[7]), 3).unwrap(), 5);
        assert_eq!(brute_count(&ms(&[7]), 2).unwrap(), 3);
        assert_eq!(brute_count(&ms(&[7, 19]), 2).unwrap(), 3);
        assert_eq!(brute_count(&ms(&[1]), 10).unwrap(), 1024);
        assert!(matches!(
            brute_count(&ms(&[7]), 23),
            Err(Error::LimitExceeded { limit: 22, .. })
        ));
    }

    #[test]
    fn extendable_examples() {
        assert_eq!(brute_count_extendable(&ms(&[7]), 3).unwrap(), 5);
        for n in 0..8 {
            assert_eq!(brute_count_extendable(&ms(&[1]), n).unwrap(), 1 << n);
        }
    }

    #[test]
    fn estimates() {
        let g = build_single(&Multiplier::from(7)).unwrap();
        assert!((dim_estimate(&g, 400).unwrap() - 0.438_018).abs() < 0.05);
        let fs = PointedLabeledGraph::full_shift();
        let log3_2 = 2f64.ln() / 3f64.ln();
        for n in [1, 5, 64, 300] {
            assert!((dim_estimate(&fs, n).unwrap() - log3_2).abs() < 1e-12);
        }
        assert_eq!(
            dim_estimate(&PointedLabeledGraph::trivial(1), 50).unwrap(),
            0.0
        );
        assert!(dim_estimate(&fs, 0).is_err());
    }
}
