//! Program indices: the canonical text read as a bijective base-256 numeral.
//!
//! Byte `b` at position `i` (least significant first) contributes
//! `(b + 1) * 256^i`; the empty string is 0. Only canonical texts decode, so
//! `encode(decode(e)) == e` whenever `decode(e)` succeeds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_while, print_while, WhileProgram};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProgramIndex(BigUint);

impl ProgramIndex {
    pub fn new(e: BigUint) -> Self {
        ProgramIndex(e)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// The index as a register value, clamped to `Nat::MAX`. Programs can
    /// only tell such values apart by iterating over them, which takes more
    /// steps than any fuel bound used here.
    pub fn saturating_nat(&self) -> Nat {
        u64::try_from(&self.0).unwrap_or(Nat::MAX)
    }

    /// Index of an arbitrary byte string.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let base = BigUint::from_bytes_le(bytes);
        ProgramIndex(base + repunit(bytes.len()))
    }

    /// Inverse of [`ProgramIndex::from_bytes`].
    pub fn to_bytes(&self) -> Vec<u8> {
        let e = &self.0;
        let mut n = (e.bits() as usize).div_ceil(8);
        while n > 0 && repunit(n) > *e {
            n -= 1;
        }
        let mut bytes = (e - repunit(n)).to_bytes_le();
        if bytes == [0] {
            bytes.clear();
        }
        bytes.resize(n, 0);
        bytes
    }
}

/// (256^n - 1) / 255, i.e. n digits of 1.
fn repunit(n: usize) -> BigUint {
    BigUint::from_bytes_le(&vec![1u8; n])
}

impl fmt::Display for ProgramIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for ProgramIndex {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse::<BigUint>().map(ProgramIndex)
    }
}

impl From<u64> for ProgramIndex {
    fn from(v: u64) -> Self {
        ProgramIndex(BigUint::from(v))
    }
}

impl Serialize for ProgramIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for ProgramIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn encode_program(p: &WhileProgram) -> ProgramIndex {
    ProgramIndex::from_bytes(print_while(p).as_bytes())
}

/// The program whose canonical text is `e`'s byte string, if any.
pub fn decode_program(e: &ProgramIndex) -> Option<WhileProgram> {
    let bytes = e.to_bytes();
    let text = std::str::from_utf8(&bytes).ok()?;
    let p = parse_while(text).ok()?;
    (print_while(&p) == text).then_some(p)
}

/// Whether `e` indexes a Loop program, i.e. a primitive recursive one.
pub fn is_loop_index(e: &ProgramIndex) -> bool {
    decode_program(e).is_some_and(|p| p.is_loop() && super::validate_while(&p).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle_value(bytes: &[u8]) -> BigUint {
        let mut e = BigUint::from(0u32);
        for &b in bytes.iter().rev() {
            e = e * 256u32 + (b as u32 + 1);
        }
        e
    }

    #[test]
    fn matches_digit_sum() {
        for bytes in [&b""[..], b"\0", b"\xff", b"ab", b"\xff\xff\x00", b"fn"] {
            assert_eq!(ProgramIndex::from_bytes(bytes).0, oracle_value(bytes));
            assert_eq!(ProgramIndex::from_bytes(bytes).to_bytes(), bytes);
        }
    }

    #[test]
    fn small_values_round_trip() {
        for v in 0u64..70_000 {
            let e = ProgramIndex::from(v);
            assert_eq!(ProgramIndex::from_bytes(&e.to_bytes()), e);
        }
        assert_eq!(ProgramIndex::from(0).to_bytes(), Vec::<u8>::new());
        assert_eq!(ProgramIndex::from(256).to_bytes(), vec![255]);
        assert_eq!(ProgramIndex::from(257).to_bytes(), vec![0, 0]);
    }

    #[test]
    fn zero_is_not_a_program() {
        assert!(decode_program(&ProgramIndex::from(0)).is_none());
    }

    #[test]
    fn canonical_only() {
        let p = parse_while("fn zero(1){ clear x0 }").unwrap();
        let e = encode_program(&p);
        assert_eq!(decode_program(&e), Some(p));
        let sloppy = ProgramIndex::from_bytes(b"fn zero(1){ clear x0 }");
        assert!(decode_program(&sloppy).is_none());
        assert!(is_loop_index(&e));
        let bot = parse_while("fn bot(1){ inc x2 while x2 { inc x2 } }").unwrap();
        assert!(!is_loop_index(&encode_program(&bot)));
    }

    #[test]
    fn serde_as_decimal_string() {
        let e = ProgramIndex::from(12345);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, "\"12345\"");
        assert_eq!(serde_json::from_str::<ProgramIndex>(&json).unwrap(), e);
    }
}
