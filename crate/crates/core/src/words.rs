//! Symbolic words over {L, R}: shifts, single-symbol flips and the rotational
//! family `F[ell, m, p]`.
//!
//! `F[ell, m, p]` has symbol L at index i exactly when `i * m mod p < ell`.
//! Indexing is 0-based throughout.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest period for which rotational classification is supported.
pub const MAX_CLASSIFY_PERIOD: usize = 64;

/// Side of the switching manifold: L is `x_1 < 0`, R is `x_1 > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    L,
    R,
}

impl Symbol {
    pub fn flipped(self) -> Symbol {
        match self {
            Symbol::L => Symbol::R,
            Symbol::R => Symbol::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::L => 'L',
            Symbol::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            'L' => Some(Symbol::L),
            'R' => Some(Symbol::R),
            _ => None,
        }
    }
}

/// A non-empty word `X = X_0 X_1 ... X_{p-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::domain("words must have length at least 1"));
        }
        Ok(Word(symbols))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().copied()
    }

    pub fn count(&self, symbol: Symbol) -> usize {
        self.0.iter().filter(|&&s| s == symbol).count()
    }

    /// Number of L symbols.
    pub fn ell(&self) -> usize {
        self.count(Symbol::L)
    }

    fn wrap(&self, i: i64) -> usize {
        i.rem_euclid(self.len() as i64) as usize
    }

    /// `sigma^i(X)`: rotate left by `i` (taken mod p), so `sigma(X) = X_1 ... X_{p-1} X_0`.
    pub fn shifted(&self, i: i64) -> Word {
        let mut symbols = self.0.clone();
        symbols.rotate_left(self.wrap(i));
        Word(symbols)
    }

    /// `X^{k-bar}`: identical to X except in symbol `k mod p`.
    pub fn flipped(&self, k: i64) -> Word {
        let mut symbols = self.0.clone();
        let i = self.wrap(k);
        symbols[i] = symbols[i].flipped();
        Word(symbols)
    }

    /// Smallest `i` with `self == other.shifted(i)`.
    pub fn shift_from(&self, other: &Word) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        let p = self.len();
        (0..p).find(|&i| (0..p).all(|j| self.0[j] == other.0[(j + i) % p]))
    }

    /// Lexicographically smallest rotation, with L < R.
    pub fn canonical(&self) -> Word {
        (0..self.len() as i64)
            .map(|i| self.shifted(i))
            .min()
            .expect("words are non-empty")
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Accepts literal words (`"LRRRLRR"`) and constructor syntax (`"F[2,2,7]"`).
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("F[").and_then(|r| r.strip_suffix(']')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Error::domain(format!("expected F[ell,m,p], got {s:?}")));
            }
            let parse = |t: &str| {
                t.parse::<u32>()
                    .map_err(|_| Error::domain(format!("bad integer {t:?} in {s:?}")))
            };
            return make_rotational(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        }
        let symbols = s
            .chars()
            .map(|c| {
                Symbol::from_char(c)
                    .ok_or_else(|| Error::domain(format!("invalid symbol {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(symbols)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The unique `d` in `{1, ..., p-1}` with `m * d mod p = 1`.
pub fn mult_inverse(m: u32, p: u32) -> Result<u32> {
    if p < 2 || m == 0 || m >= p {
        return Err(Error::domain(format!(
            "multiplicative inverse needs 1 <= m < p and p >= 2, got m = {m}, p = {p}"
        )));
    }
    if gcd(m, p) != 1 {
        return Err(Error::domain(format!(
            "m = {m} and p = {p} are not coprime"
        )));
    }
    // extended Euclid on (m, p)
    let (mut r0, mut r1) = (p as i64, m as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Ok(t0.rem_euclid(p as i64) as u32)
}

fn check_rotational_params(ell: u32, m: u32, p: u32) -> Result<()> {
    if p < 2 || ell == 0 || ell >= p || m == 0 || m >= p || gcd(m, p) != 1 {
        return Err(Error::domain(format!(
            "F[{ell},{m},{p}] needs 1 <= ell < p, 1 <= m < p and gcd(m, p) = 1"
        )));
    }
    Ok(())
}

/// `F[ell, m, p]`.
pub fn make_rotational(ell: u32, m: u32, p: u32) -> Result<Word> {
    check_rotational_params(ell, m, p)?;
    let symbols = (0..p)
        .map(|i| {
            if (i as u64 * m as u64) % (p as u64) < ell as u64 {
                Symbol::L
            } else {
                Symbol::R
            }
        })
        .collect();
    Ok(Word(symbols))
}

/// Parameters of a rotational word: it equals `sigma^shift(F[ell, m, p])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationalParams {
    pub ell: u32,
    pub m: u32,
    pub p: u32,
    pub shift: u32,
    /// Multiplicative inverse of m modulo p.
    pub d: u32,
}

impl RotationalParams {
    pub fn base_word(&self) -> Word {
        make_rotational(self.ell, self.m, self.p).expect("validated parameters")
    }

    /// Index in the classified word that corresponds to index `j * d mod p`
    /// of the unshifted `F[ell, m, p]`.
    pub fn word_index_of(&self, j: u32) -> u32 {
        let base = (j as u64 * self.d as u64 % self.p as u64) as i64;
        (base - self.shift as i64).rem_euclid(self.p as i64) as u32
    }

    /// Inverse of [`word_index_of`](Self::word_index_of): the `j` whose base
    /// index `j * d` lands on word index `k`.
    pub fn j_of_word_index(&self, k: u32) -> u32 {
        let base = (k as u64 + self.shift as u64) % self.p as u64;
        (base * self.m as u64 % self.p as u64) as u32
    }
}

/// Every `(ell, m, p, shift)` under which `word` is rotational, ordered by m.
pub fn rotational_representations(word: &Word) -> Vec<RotationalParams> {
    let p = word.len() as u32;
    let ell = word.ell() as u32;
    if p < 2 || ell == 0 || ell == p {
        return Vec::new();
    }
    (1..p)
        .filter(|&m| gcd(m, p) == 1)
        .filter_map(|m| {
            let base = make_rotational(ell, m, p).ok()?;
            let shift = word.shift_from(&base)? as u32;
            Some(RotationalParams {
                ell,
                m,
                p,
                shift,
                d: mult_inverse(m, p).ok()?,
            })
        })
        .collect()
}

/// Rotational parameters of `word` with the smallest matching m, or `None`.
pub fn classify_rotational(word: &Word) -> Option<RotationalParams> {
    rotational_representations(word).into_iter().next()
}

/// The indices `j` for which flipping `F[ell, m, p]` at `j * d mod p` gives a
/// shift of `F[ell - 1, m, p]` or `F[ell + 1, m, p]`: `{0, ell-1, ell, p-1}`.
pub fn rotational_flip_set(params: &RotationalParams) -> Result<BTreeSet<u32>> {
    let (ell, p) = (params.ell, params.p);
    if ell < 2 || ell + 2 > p {
        return Err(Error::domain(format!(
            "flip set needs 2 <= ell <= p - 2, got ell = {ell}, p = {p}"
        )));
    }
    Ok([0, ell - 1, ell, p - 1].into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn mult_inverse_examples() {
        assert_eq!(mult_inverse(2, 7).unwrap(), 4);
        for p in 2..40 {
            assert_eq!(mult_inverse(1, p).unwrap(), 1);
        }
        assert_eq!(mult_inverse(3, 10).unwrap(), 7);
        assert!(mult_inverse(2, 4).is_err());
        assert!(mult_inverse(0, 4).is_err());
        assert!(mult_inverse(5, 5).is_err());
    }

    #[test]
    fn make_rotational_examples() {
        assert_eq!(make_rotational(2, 2, 7).unwrap(), w("LRRRLRR"));
        assert_eq!(make_rotational(1, 2, 7).unwrap(), w("LRRRRRR"));
        assert_eq!(make_rotational(3, 1, 9).unwrap(), w("LLLRRRRRR"));
        assert!(make_rotational(0, 1, 5).is_err());
        assert!(make_rotational(5, 1, 5).is_err());
        assert!(make_rotational(2, 2, 6).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(w("LLLRR").shifted(1), w("LLRRL"));
        assert_eq!(w("LRRRLRR").shifted(7), w("LRRRLRR"));
        assert_eq!(w("LRRRLRR").shifted(4), w("LRRLRRR"));
        assert_eq!(w("LLLRR").shifted(-1), w("RLLLR"));
    }

    #[test]
    fn flip_examples() {
        assert_eq!(w("LLLRR").flipped(2), w("LLRRR"));
        assert_eq!(w("LLLRR").flipped(2).flipped(2), w("LLLRR"));
        assert_eq!(w("LRRRLRR").flipped(4), make_rotational(1, 2, 7).unwrap());
        assert_eq!(w("LRRRLRR").flipped(11), w("LRRRRRR"));
    }

    #[test]
    fn classify_examples() {
        let params = classify_rotational(&w("LRRRLRR")).unwrap();
        assert_eq!(
            (params.ell, params.m, params.p, params.shift, params.d),
            (2, 2, 7, 0, 4)
        );
        assert_eq!(classify_rotational(&w("LLRRRRLRR")), None);
        let lr = classify_rotational(&w("LR")).unwrap();
        assert_eq!((lr.ell, lr.m, lr.p, lr.shift), (1, 1, 2, 0));
        assert_eq!(classify_rotational(&w("LLLL")), None);
        assert_eq!(classify_rotational(&w("R")), None);
        assert_eq!(classify_rotational(&w("L")), None);
    }

    #[test]
    fn classify_reports_smallest_m_for_single_l_words() {
        // every F[1, m, 7] is a shift of LRRRRRR
        let params = classify_rotational(&w("RRLRRRR")).unwrap();
        assert_eq!((params.ell, params.m), (1, 1));
        assert_eq!(rotational_representations(&w("RRLRRRR")).len(), 6);
    }

    #[test]
    fn flip_set_examples() {
        let params = classify_rotational(&make_rotational(2, 2, 7).unwrap()).unwrap();
        let set = rotational_flip_set(&params).unwrap();
        assert_eq!(set, [0, 1, 2, 6].into_iter().collect());
        let indices: BTreeSet<u32> = set.iter().map(|&j| j * params.d % params.p).collect();
        assert_eq!(indices, [0, 4, 1, 3].into_iter().collect());

        let x = make_rotational(2, 2, 7).unwrap();
        assert_eq!(x.flipped(4), make_rotational(1, 2, 7).unwrap());
        assert_eq!(x.flipped(1), w("LLRRLRR"));
        assert_eq!(x.flipped(1), make_rotational(3, 2, 7).unwrap());

        let f327 = make_rotational(3, 2, 7).unwrap();
        let params = classify_rotational(&f327).unwrap();
        assert!(!rotational_flip_set(&params).unwrap().contains(&1));
        let y = f327.flipped((params.d % 7) as i64);
        let near = rotational_representations(&y)
            .into_iter()
            .any(|r| r.m == 2 && (r.ell == 2 || r.ell == 4));
        assert!(!near);
    }

    #[test]
    fn flip_set_requires_interior_ell() {
        let params = classify_rotational(&make_rotational(1, 2, 7).unwrap()).unwrap();
        assert!(rotational_flip_set(&params).is_err());
        let params = classify_rotational(&make_rotational(6, 2, 7).unwrap()).unwrap();
        assert!(rotational_flip_set(&params).is_err());
    }

    #[test]
    fn word_index_conversions_are_inverse() {
        let x = make_rotational(3, 3, 10).unwrap().shifted(4);
        let params = classify_rotational(&x).unwrap();
        for j in 0..10 {
            assert_eq!(params.j_of_word_index(params.word_index_of(j)), j);
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("F[2,2,7]").to_string(), "LRRRLRR");
        assert_eq!(w(" F[ 3, 1, 9 ] ").to_string(), "LLLRRRRRR");
        assert!("LRX".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("F[2,2]".parse::<Word>().is_err());
        assert!("F[2,3,6]".parse::<Word>().is_err());
        let json = serde_json::to_string(&w("LRRRLRR")).unwrap();
        assert_eq!(json, "\"LRRRLRR\"");
    }

    #[test]
    fn canonical_is_smallest_rotation() {
        assert_eq!(w("RRLRL").canonical(), w("LRLRR"));
        assert_eq!(w("LRRRLRR").canonical(), w("LRRLRRR"));
    }

    #[test]
    fn rotational_indexing_holds_for_small_periods() {
        for p in 2..=30u32 {
            for m in (1..p).filter(|&m| gcd(m, p) == 1) {
                let d = mult_inverse(m, p).unwrap();
                for ell in 1..p {
                    let x = make_rotational(ell, m, p).unwrap();
                    assert_eq!(x.ell(), ell as usize);
                    for j in 0..p {
                        let expected = if j < ell { Symbol::L } else { Symbol::R };
                        assert_eq!(x[(j * d % p) as usize], expected);
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rotational_params() -> impl Strategy<Value = (u32, u32, u32)> {
            (2u32..=40)
                .prop_flat_map(|p| {
                    let ms: Vec<u32> = (1..p).filter(|&m| gcd(m, p) == 1).collect();
                    (Just(p), proptest::sample::select(ms), 1..p)
                })
                .prop_map(|(p, m, ell)| (ell, m, p))
        }

        proptest! {
            #[test]
            fn classify_recovers_construction((ell, m, p) in rotational_params(), shift in 0u32..64) {
                let x = make_rotational(ell, m, p).unwrap().shifted(shift as i64);
                let params = classify_rotational(&x).unwrap();
                prop_assert_eq!(params.ell, ell);
                prop_assert_eq!(params.p, p);
                prop_assert!(params.m <= m);
                prop_assert_eq!(params.base_word().shifted(params.shift as i64), x.clone());
                prop_assert_eq!((params.m * params.d) % p, 1);
                prop_assert!(rotational_representations(&x).iter().any(|r| r.m == m));
            }

            #[test]
            fn shifts_preserve_l_count(s in "[LR]{1,40}", i in -100i64..100) {
                let x: Word = s.parse().unwrap();
                prop_assert_eq!(x.shifted(i).ell(), x.ell());
                prop_assert_eq!(x.shifted(i).shifted(-i), x.clone());
                prop_assert_eq!(x.shifted(x.len() as i64), x.clone());
            }

            #[test]
            fn flip_is_involution(s in "[LR]{1,40}", k in -100i64..100) {
                let x: Word = s.parse().unwrap();
                prop_assert_eq!(x.flipped(k).flipped(k), x.clone());
                prop_assert_eq!(x.flipped(k).ell().abs_diff(x.ell()), 1);
            }
        }
    }
}
