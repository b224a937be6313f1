//! Exact base-3 arithmetic, multiplier normalization and the integer families
//! `L_k = (3^k - 1)/2`, `N_k = 3^k + 1` and `P_k = 2·3^k + 1`.
//!
//! Digit words are stored least-significant digit first; rendering reverses them
//! into the usual `(a_k … a_0)_3` display.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A finite word over `{0, 1, 2}`; index `i` holds the coefficient of `3^i`.
///
/// Words are not required to be canonical: a prefix of a 3-adic expansion may
/// legitimately end in zeros. [`to_ternary`] always yields canonical words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitWord(Vec<u8>);

impl DigitWord {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidDigit(d));
        }
        Ok(DigitWord(digits))
    }

    pub fn empty() -> Self {
        DigitWord(Vec::new())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No zero at the most-significant end.
    pub fn is_canonical(&self) -> bool {
        self.0.last().is_none_or(|&d| d != 0)
    }

    pub fn push(&mut self, digit: u8) -> Result<()> {
        if digit > 2 {
            return Err(Error::InvalidDigit(digit));
        }
        self.0.push(digit);
        Ok(())
    }

    /// Most-significant-first rendering without the `(…)_3` decoration.
    pub fn to_msf_string(&self) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        self.0.iter().rev().map(|d| char::from(b'0' + d)).collect()
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_3", self.to_msf_string())
    }
}

pub fn to_ternary(n: &BigUint) -> DigitWord {
    if n.is_zero() {
        return DigitWord::empty();
    }
    DigitWord(n.to_radix_le(3))
}

pub fn from_ternary(digits: &[u8]) -> Result<BigUint> {
    if let Some(&d) = digits.iter().find(|&&d| d > 2) {
        return Err(Error::InvalidDigit(d));
    }
    if digits.is_empty() {
        return Ok(BigUint::zero());
    }
    Ok(BigUint::from_radix_le(digits, 3).expect("digits already validated"))
}

/// Ternary digits of a machine integer, least significant first.
pub fn ternary_u64(mut n: u64) -> Vec<u8> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % 3) as u8);
        n /= 3;
    }
    out
}

/// Most-significant-first ternary rendering of a carry value; zero renders as "0".
pub fn ternary_string(n: u64) -> String {
    if n == 0 {
        return "0".to_string();
    }
    ternary_u64(n)
        .iter()
        .rev()
        .map(|d| char::from(b'0' + d))
        .collect()
}

pub fn lowest_nonzero_digit(m: &BigUint) -> Result<u8> {
    if m.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let three = BigUint::from(3u8);
    let mut v = m.clone();
    loop {
        let (q, r) = v.div_rem(&three);
        if !r.is_zero() {
            return Ok(r.to_u8().expect("remainder below 3"));
        }
        v = q;
    }
}

/// A positive multiplier with all factors of 3 removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiplier {
    value: BigUint,
    ternary: DigitWord,
    residue: u8,
    normalized_from: BigUint,
}

impl Multiplier {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn ternary(&self) -> &DigitWord {
        &self.ternary
    }

    /// `value mod 3`, always 1 or 2.
    pub fn residue(&self) -> u8 {
        self.residue
    }

    pub fn normalized_from(&self) -> &BigUint {
        &self.normalized_from
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// The value as a machine word for carry arithmetic.
    pub fn to_u64(&self) -> Result<u64> {
        self.value
            .to_u64()
            .ok_or_else(|| Error::Overflow(self.value.to_string()))
    }

    /// Largest reachable carry, `⌊M/2⌋`.
    pub fn carry_bound(&self) -> BigUint {
        &self.value >> 1u32
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialOrd for Multiplier {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multiplier {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.normalized_from.cmp(&other.normalized_from))
    }
}

impl From<u64> for Multiplier {
    /// Panics on zero; use [`normalize`] for fallible construction.
    fn from(m: u64) -> Self {
        normalize(&BigUint::from(m)).expect("multiplier must be positive")
    }
}

pub fn normalize(m: &BigUint) -> Result<Multiplier> {
    if m.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let three = BigUint::from(3u8);
    let mut value = m.clone();
    loop {
        let (q, r) = value.div_rem(&three);
        if !r.is_zero() {
            break;
        }
        value = q;
    }
    let residue = (&value % &three).to_u8().expect("remainder below 3");
    Ok(Multiplier {
        ternary: to_ternary(&value),
        value,
        residue,
        normalized_from: m.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    L,
    N,
    P,
}

impl FamilyKind {
    pub fn letter(self) -> char {
        match self {
            FamilyKind::L => 'L',
            FamilyKind::N => 'N',
            FamilyKind::P => 'P',
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(FamilyKind::L),
            "N" | "n" => Ok(FamilyKind::N),
            "P" | "p" => Ok(FamilyKind::P),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "family must be one of L, N, P".to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub k: u32,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroFamilyIndex);
        }
        Ok(FamilyId { kind, k })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.letter(), self.k)
    }
}

pub fn family_value(f: FamilyId) -> BigUint {
    let p = num_traits::pow(BigUint::from(3u8), f.k as usize);
    match f.kind {
        FamilyKind::L => (p - 1u8) >> 1u32,
        FamilyKind::N => p + 1u8,
        FamilyKind::P => p * 2u8 + 1u8,
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_decimal(input: &str, text: &str) -> Result<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(input, "expected a decimal integer"));
    }
    BigUint::parse_bytes(text.as_bytes(), 10).ok_or_else(|| parse_error(input, "bad decimal"))
}

/// Parses one multiplier term into its raw (unnormalized) value.
///
/// Accepted forms: decimal `19`, ternary literal `t:201`, family `L:4` / `N:3` /
/// `P:2`, and power `2^8`.
pub fn parse_value(input: &str) -> Result<BigUint> {
    let s = input.trim();
    if let Some(rest) = s.strip_prefix("t:").or_else(|| s.strip_prefix("T:")) {
        if rest.is_empty() {
            return Err(parse_error(input, "empty ternary literal"));
        }
        let mut digits = Vec::with_capacity(rest.len());
        for ch in rest.chars().rev() {
            match ch {
                '0' => digits.push(0),
                '1' => digits.push(1),
                '2' => digits.push(2),
                _ => return Err(parse_error(input, format!("`{ch}` is not a ternary digit"))),
            }
        }
        return from_ternary(&digits);
    }
    if let Some((kind, k)) = s.split_once(':') {
        let kind: FamilyKind = kind
            .parse()
            .map_err(|_| parse_error(input, "unknown family"))?;
        let k: u32 = k
            .parse()
            .map_err(|_| parse_error(input, "family index must be a positive integer"))?;
        let id = FamilyId::new(kind, k).map_err(|e| parse_error(input, e.to_string()))?;
        return Ok(family_value(id));
    }
    if let Some((base, exp)) = s.split_once('^') {
        let base = parse_decimal(input, base)?;
        let exp: u32 = exp
            .parse()
            .map_err(|_| parse_error(input, "exponent must be a nonnegative integer"))?;
        return Ok(num_traits::pow(base, exp as usize));
    }
    parse_decimal(input, s)
}

impl FromStr for Multiplier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value = parse_value(s)?;
        normalize(&value).map_err(|e| parse_error(s, e.to_string()))
    }
}

/// Parses a comma-separated multiplier list such as `7,19` or `L:2,t:111`.
pub fn parse_multipliers(s: &str) -> Result<Vec<Multiplier>> {
    let ms = s
        .split(',')
        .map(|part| part.parse::<Multiplier>())
        .collect::<Result<Vec<_>>>()?;
    if ms.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(ms)
}
