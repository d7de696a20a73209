use std::collections::BTreeSet;

use serde::Serialize;

use super::{FamilyManifest, IndexedFamily};
use crate::codec::{canonical_decode, decode_tuple, pair, pow2, unpair, CanonicalSetCode};
use crate::engine::SetSpec;
use crate::error::{Error, Result};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasicKind {
    /// `F_n = [n, ∞)`.
    UpIntervals,
    /// `G_⟨m,n⟩ = [m, n]`.
    PairIntervals,
    /// `H_n = content((n)_{k+1})`.
    TupleContents(usize),
    /// `⟨s, e⟩ ↦` the set with bitmask `e` when `s` is its size, else `∅`.
    FiniteCanonical,
    /// `F_n = [0, 2^n]`.
    Pow2,
    /// `A_n = {n} ⊕ ℕ`.
    JoinSingletons,
    /// `G_0 = ℕ`, `G_n = [0, n]`.
    PcsG,
}

#[derive(Debug, Clone)]
pub struct BasicFamily {
    pub kind: BasicKind,
}

pub fn make_basic_family(kind: BasicKind) -> BasicFamily {
    BasicFamily { kind }
}

fn content(n: Nat, k: usize) -> BTreeSet<Nat> {
    decode_tuple(n, k + 1).into_iter().collect()
}

impl IndexedFamily for BasicFamily {
    fn name(&self) -> String {
        match self.kind {
            BasicKind::UpIntervals => "up-intervals".into(),
            BasicKind::PairIntervals => "pair-intervals".into(),
            BasicKind::TupleContents(k) => format!("tuple-contents({k})"),
            BasicKind::FiniteCanonical => "finite-canonical".into(),
            BasicKind::Pow2 => "pow2".into(),
            BasicKind::JoinSingletons => "join-singletons".into(),
            BasicKind::PcsG => "pcs-G".into(),
        }
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        Ok(match self.kind {
            BasicKind::UpIntervals => SetSpec::up_from(n),
            BasicKind::PairIntervals => {
                let (m, k) = unpair(n);
                if m <= k {
                    SetSpec::interval(m, k)
                } else {
                    SetSpec::explicit([])
                }
            }
            BasicKind::TupleContents(k) => SetSpec::Explicit(content(n, k)),
            BasicKind::FiniteCanonical => {
                let (s, e) = unpair(n);
                if s == e.count_ones() as Nat {
                    SetSpec::Explicit(canonical_decode(CanonicalSetCode(e)))
                } else {
                    SetSpec::explicit([])
                }
            }
            BasicKind::Pow2 => SetSpec::interval(0, pow2(n)?),
            BasicKind::JoinSingletons => SetSpec::join(SetSpec::explicit([n]), SetSpec::naturals()),
            BasicKind::PcsG if n == 0 => SetSpec::naturals(),
            BasicKind::PcsG => SetSpec::interval(0, n),
        })
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        Ok(match self.kind {
            BasicKind::PairIntervals => {
                let (m, k) = unpair(n);
                if m <= k {
                    n
                } else {
                    pair(1, 0)?
                }
            }
            BasicKind::TupleContents(k) => {
                let c = content(n, k);
                (0..n).find(|&m| content(m, k) == c).unwrap_or(n)
            }
            BasicKind::FiniteCanonical => {
                let (s, e) = unpair(n);
                if s == e.count_ones() as Nat {
                    n
                } else {
                    0
                }
            }
            BasicKind::Pow2 => {
                pow2(n)?;
                n
            }
            _ => n,
        })
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let top = indices.iter().copied().max().unwrap_or(0);
        Ok(match self.kind {
            BasicKind::UpIntervals | BasicKind::PcsG => top.saturating_add(1),
            BasicKind::JoinSingletons => top.saturating_mul(2).saturating_add(2),
            BasicKind::Pow2 => pow2(top)?.saturating_add(1),
            // Every element of a pair interval or tuple content is at most its code.
            BasicKind::PairIntervals | BasicKind::TupleContents(_) => top.saturating_add(1),
            BasicKind::FiniteCanonical => Nat::BITS as Nat,
        })
    }

    fn canonical_text(&self, n: Nat) -> Result<crate::engine::Text> {
        let m = self.member(n)?;
        if m.is_empty() {
            return Err(Error::InvalidArgument(format!("{} member {n} is empty", self.name())));
        }
        crate::engine::Text::canonical(m)
    }

    fn manifest(&self) -> FamilyManifest {
        FamilyManifest::new(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::set_equal;
    use crate::families::brute_min_index;

    #[test]
    fn examples() {
        let g = make_basic_family(BasicKind::PairIntervals);
        let m = g.member(pair(2, 5).unwrap()).unwrap();
        assert!(set_equal(&m, &SetSpec::interval(2, 5), 40));

        let f = make_basic_family(BasicKind::FiniteCanonical);
        let i = pair(2, 5).unwrap();
        assert_eq!(f.member(i).unwrap().finite_elements().unwrap(), BTreeSet::from([0, 2]));
        assert_eq!(f.min_index(i).unwrap(), i);

        let a = make_basic_family(BasicKind::JoinSingletons);
        let s = a.member(3).unwrap();
        assert!(s.contains(6) && !s.contains(4) && !s.contains(2));
        assert!((0..40).filter(|x| x % 2 == 1).all(|x| s.contains(x)));
    }

    #[test]
    fn analytic_min_index_matches_brute_force() {
        for kind in [
            BasicKind::UpIntervals,
            BasicKind::PairIntervals,
            BasicKind::TupleContents(1),
            BasicKind::TupleContents(2),
            BasicKind::FiniteCanonical,
            BasicKind::JoinSingletons,
            BasicKind::PcsG,
        ] {
            let fam = make_basic_family(kind);
            for n in 0..60 {
                assert_eq!(fam.min_index(n).unwrap(), brute_min_index(&fam, n).unwrap(), "{kind:?} {n}");
            }
        }
    }
}
