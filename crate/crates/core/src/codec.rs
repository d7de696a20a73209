//! Arithmetic encodings: Cantor pairing and right-nested tuples, signed
//! integers, columns, polynomial codes and canonical finite-set codes.
//!
//! Everything is computed over `u128` with checked arithmetic; an overflow is
//! reported as [`Error::Overflow`] and never wraps.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Nat;

/// A natural number read as the code of a tuple of fixed arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleCode {
    pub value: Nat,
    pub arity: usize,
}

impl TupleCode {
    pub fn decode(&self) -> Vec<Nat> {
        decode_tuple(self.value, self.arity)
    }
}

/// Code of a polynomial with natural-number coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolyCode(pub Nat);

/// Bitmask code of a finite set: bit `x` is set iff `x` is a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalSetCode(pub Nat);

/// `t(t+1)/2`, or `None` on overflow.
fn triangle(t: Nat) -> Option<Nat> {
    if t % 2 == 0 {
        (t / 2).checked_mul(t.checked_add(1)?)
    } else {
        t.checked_mul((t + 1) / 2)
    }
}

/// Cantor pairing `π(a,b) = (a+b)(a+b+1)/2 + b`.
pub fn pair(a: Nat, b: Nat) -> Result<Nat> {
    let diag = a.checked_add(b).ok_or(Error::Overflow("pairing"))?;
    triangle(diag)
        .and_then(|t| t.checked_add(b))
        .ok_or(Error::Overflow("pairing"))
}

/// Inverse of [`pair`]; total on `u128`.
pub fn unpair(z: Nat) -> (Nat, Nat) {
    // w is the largest diagonal with triangle(w) <= z.
    let mut w = match z.checked_mul(2) {
        // Exact to within one below 2^52; the loops below correct it.
        Some(d) if d < 1 << 52 => (d as f64).sqrt() as Nat,
        Some(d) => d.isqrt(),
        None => 2 * (z / 2).isqrt(),
    };
    while triangle(w).map_or(true, |t| t > z) {
        w -= 1;
    }
    while triangle(w + 1).is_some_and(|t| t <= z) {
        w += 1;
    }
    let b = z - triangle(w).expect("checked above");
    (w - b, b)
}

pub fn encode_tuple(xs: &[Nat]) -> Result<TupleCode> {
    let (last, rest) = xs
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("cannot encode an empty tuple".into()))?;
    let mut acc = *last;
    for &x in rest.iter().rev() {
        acc = pair(x, acc)?;
    }
    Ok(TupleCode {
        value: acc,
        arity: xs.len(),
    })
}

/// Shorthand for `encode_tuple(xs)?.value`.
pub fn tuple(xs: &[Nat]) -> Result<Nat> {
    encode_tuple(xs).map(|t| t.value)
}

/// Decodes `n` at arity `k`. Arity 0 is treated as arity 1.
pub fn decode_tuple(n: Nat, k: usize) -> Vec<Nat> {
    let k = k.max(1);
    let mut out = Vec::with_capacity(k);
    let mut rest = n;
    for _ in 1..k {
        let (a, r) = unpair(rest);
        out.push(a);
        rest = r;
    }
    out.push(rest);
    out
}

pub fn signed_int(n: Nat) -> i128 {
    if n % 2 == 0 {
        (n / 2) as i128
    } else {
        -(((n - 1) / 2) as i128) - 1
    }
}

pub fn signed_int_inv(z: i128) -> Nat {
    if z >= 0 {
        2 * z as Nat
    } else {
        2 * z.unsigned_abs() - 1
    }
}

/// Element `⟨a,i⟩` of column `i`.
pub fn column_pack(a: Nat, i: Nat) -> Result<Nat> {
    pair(a, i)
}

pub fn column_unpack(x: Nat) -> (Nat, Nat) {
    unpair(x)
}

pub fn in_column(x: Nat, i: Nat) -> bool {
    unpair(x).1 == i
}

impl PolyCode {
    pub fn encode(coeffs: &[Nat]) -> Result<PolyCode> {
        poly_encode(coeffs)
    }

    /// Coefficients, lowest degree first. Every code decodes.
    pub fn coefficients(&self) -> Vec<Nat> {
        let (d, t) = unpair(self.0);
        let arity = usize::try_from(d).ok().and_then(|d| d.checked_add(1));
        match arity {
            Some(k) if d <= 1 << 20 => decode_tuple(t, k),
            // Degrees this large would take more memory than any code we can
            // construct; such codes cannot be produced by `poly_encode`.
            _ => vec![t],
        }
    }

    pub fn eval(&self, x: Nat) -> Result<Nat> {
        poly_eval(*self, x)
    }

    /// Whether the polynomial has a nonzero coefficient at some degree >= 1.
    pub fn is_increasing(&self) -> bool {
        self.coefficients().iter().skip(1).any(|&c| c > 0)
    }
}

pub fn poly_encode(coeffs: &[Nat]) -> Result<PolyCode> {
    let coeffs: &[Nat] = if coeffs.is_empty() { &[0] } else { coeffs };
    let degree = (coeffs.len() - 1) as Nat;
    let body = tuple(coeffs)?;
    Ok(PolyCode(pair(degree, body)?))
}

pub fn poly_eval(code: PolyCode, x: Nat) -> Result<Nat> {
    let coeffs = code.coefficients();
    let mut acc: Nat = 0;
    for &c in coeffs.iter().rev() {
        acc = acc
            .checked_mul(x)
            .and_then(|v| v.checked_add(c))
            .ok_or(Error::Overflow("evaluating a polynomial"))?;
    }
    Ok(acc)
}

pub fn canonical_encode(set: &BTreeSet<Nat>) -> Result<CanonicalSetCode> {
    let mut code: Nat = 0;
    for &x in set {
        if x >= Nat::BITS as Nat {
            return Err(Error::Overflow("bitmask-coding a set element >= 128"));
        }
        code |= 1 << x;
    }
    Ok(CanonicalSetCode(code))
}

pub fn canonical_decode(code: CanonicalSetCode) -> BTreeSet<Nat> {
    (0..Nat::BITS as Nat)
        .filter(|&x| code.0 >> x & 1 == 1)
        .collect()
}

/// `2^e`, checked.
pub fn pow2(e: Nat) -> Result<Nat> {
    if e >= Nat::BITS as Nat {
        Err(Error::Overflow("computing a power of two"))
    } else {
        Ok(1 << e)
    }
}

/// Least `s` with `2^s >= x` (0 for x <= 1).
pub fn ceil_log2(x: Nat) -> Nat {
    if x <= 1 {
        0
    } else {
        (Nat::BITS - (x - 1).leading_zeros()) as Nat
    }
}

/// Greatest `s` with `2^s <= x`; `None` for x = 0.
pub fn floor_log2(x: Nat) -> Option<Nat> {
    x.checked_ilog2().map(Nat::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent oracle: walk the Cantor diagonals.
    fn pair_by_walk(a: Nat, b: Nat) -> Nat {
        let mut idx = 0;
        for diag in 0.. {
            for j in 0..=diag {
                if diag - j == a && j == b {
                    return idx;
                }
                idx += 1;
            }
        }
        unreachable!()
    }

    #[test]
    fn pairing_matches_diagonal_walk() {
        for a in 0..20 {
            for b in 0..20 {
                assert_eq!(pair(a, b).unwrap(), pair_by_walk(a, b));
            }
        }
    }

    #[test]
    fn tuple_examples() {
        assert_eq!(tuple(&[0, 0]).unwrap(), 0);
        assert_eq!(tuple(&[1, 2]).unwrap(), 8);
        assert_eq!(tuple(&[5]).unwrap(), 5);
        assert!(encode_tuple(&[]).is_err());
        assert_eq!(decode_tuple(8, 2), vec![1, 2]);
        assert_eq!(decode_tuple(0, 3), vec![0, 0, 0]);
        assert_eq!(decode_tuple(77, 1), vec![77]);
    }

    #[test]
    fn signed_examples() {
        assert_eq!(signed_int(0), 0);
        assert_eq!(signed_int(5), -3);
        assert_eq!(signed_int_inv(-1), 1);
        for z in -10_000..=10_000 {
            assert_eq!(signed_int(signed_int_inv(z)), z);
        }
    }

    #[test]
    fn columns() {
        assert_eq!(column_pack(0, 0).unwrap(), 0);
        assert_eq!(column_pack(5, 2).unwrap(), 30);
        assert_eq!(column_unpack(30), (5, 2));
        assert!(in_column(30, 2));
    }

    #[test]
    fn polynomials() {
        assert_eq!(poly_eval(PolyCode(0), 9).unwrap(), 0);
        assert_eq!(poly_encode(&[0, 1]).unwrap().eval(7).unwrap(), 7);
        assert_eq!(poly_encode(&[2]).unwrap().eval(100).unwrap(), 2);
        assert_eq!(poly_encode(&[1, 1]).unwrap(), PolyCode(19));
        assert!(PolyCode(19).is_increasing());
        assert!(!PolyCode(0).is_increasing());
    }

    #[test]
    fn canonical_codes() {
        assert_eq!(canonical_encode(&BTreeSet::new()).unwrap().0, 0);
        assert_eq!(canonical_encode(&[0, 2].into()).unwrap().0, 5);
        assert_eq!(canonical_decode(CanonicalSetCode(6)), [1, 2].into());
        assert!(canonical_encode(&[200].into()).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(pair(Nat::MAX, 1).is_err());
        let (a, b) = unpair(Nat::MAX);
        assert_eq!(pair(a, b).unwrap(), Nat::MAX);
    }

    #[test]
    fn logs() {
        assert_eq!(ceil_log2(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(floor_log2(9), Some(3));
    }

    proptest! {
        #[test]
        fn tuple_roundtrip(n in 0u128..1_000_000_000_000, k in 1usize..6) {
            let xs = decode_tuple(n, k);
            prop_assert!(xs.iter().all(|&x| x <= n));
            prop_assert_eq!(tuple(&xs).unwrap(), n);
        }

        #[test]
        fn poly_matches_direct_evaluation(
            coeffs in proptest::collection::vec(0u128..8, 1..4),
            x in 0u128..50,
        ) {
            let direct: Nat = coeffs.iter().enumerate().map(|(j, c)| c * x.pow(j as u32)).sum();
            let code = poly_encode(&coeffs).unwrap();
            prop_assert_eq!(code.eval(x).unwrap(), direct);
        }

        #[test]
        fn canonical_roundtrip(set in proptest::collection::btree_set(0u128..=20, 0..10)) {
            prop_assert_eq!(canonical_decode(canonical_encode(&set).unwrap()), set);
        }
    }
}
