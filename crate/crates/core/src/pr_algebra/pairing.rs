//! Cantor pairing, right-nested tupling, monus and the equality indicator.

use thiserror::Error;

use crate::Nat;

/// `⟨x, y⟩ = (x+y)(x+y+1)/2 + y`, or `None` if it does not fit in a `Nat`.
pub fn checked_pair(x: Nat, y: Nat) -> Option<Nat> {
    let s = x as u128 + y as u128;
    let z = s.checked_mul(s + 1)? / 2 + y as u128;
    Nat::try_from(z).ok()
}

/// Cantor pairing. Panics if the code does not fit in a `Nat`.
pub fn pair(x: Nat, y: Nat) -> Nat {
    checked_pair(x, y).unwrap_or_else(|| panic!("pair({x}, {y}) overflows"))
}

/// Inverse of [`pair`]; total on `Nat`.
pub fn unpair(z: Nat) -> (Nat, Nat) {
    let z = z as u128;
    let mut w = ((8 * z + 1).isqrt() - 1) / 2;
    // Guard against rounding at the diagonal boundaries.
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let y = z - w * (w + 1) / 2;
    ((w - y) as Nat, y as Nat)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("cannot encode an empty tuple")]
    Empty,
    #[error("tuple length must be at least 1")]
    ZeroLength,
    #[error("tuple code does not fit in a Nat")]
    Overflow,
}

/// `⟨x1, ⟨x2, ⟨… ⟨x(n-1), xn⟩ …⟩⟩⟩`, with `⟨x⟩ = x`.
pub fn tuple_encode(xs: &[Nat]) -> Result<Nat, TupleError> {
    let (&last, init) = xs.split_last().ok_or(TupleError::Empty)?;
    init.iter().rev().try_fold(last, |acc, &x| checked_pair(x, acc)).ok_or(TupleError::Overflow)
}

pub fn tuple_decode(z: Nat, n: usize) -> Result<Vec<Nat>, TupleError> {
    if n == 0 {
        return Err(TupleError::ZeroLength);
    }
    let mut out = Vec::with_capacity(n);
    let mut rest = z;
    for _ in 1..n {
        let (head, tail) = unpair(rest);
        out.push(head);
        rest = tail;
    }
    out.push(rest);
    Ok(out)
}

/// Truncated subtraction.
pub fn monus(a: Nat, b: Nat) -> Nat {
    a.saturating_sub(b)
}

/// `(a ∸ b) + (b ∸ a)`: zero exactly when `a = b`.
pub fn eq_indicator(a: Nat, b: Nat) -> Nat {
    monus(a, b) + monus(b, a)
}
