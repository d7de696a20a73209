use serde::Serialize;

use super::{FamilyManifest, IndexedFamily};
use crate::codec::{pair, PolyCode};
use crate::engine::SetSpec;
use crate::error::{Error, Result};
use crate::Nat;

/// More blocks than this are never tabulated; in practice the table stops
/// much earlier on overflow.
const MAX_BLOCKS: usize = 256;

/// Block `i` of the partition: index `a` names `A_i`, and `a + 1 + j` names
/// `B_{i,j}` for `j < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CsdBlock {
    pub i: usize,
    pub a: Nat,
    /// `p_i(a_i)`: the column of `A_i`'s short top interval and the chain length.
    pub p: Nat,
    /// Indices reserved for the block, `scale + p_i(scale·a_i)`.
    pub width: Nat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CsdMember {
    A(usize),
    B(usize, Nat),
}

/// Column self-describing sets.
///
/// `scale` is 1 for the plain family and 3 for the even half of the merged
/// family, where the block starts are `a_n = 3(n+1) + Σ p_i(3a_i)`.
#[derive(Debug, Clone)]
pub struct CsdFamily {
    pub scale: Nat,
    pub blocks: Vec<CsdBlock>,
}

pub fn make_csd() -> CsdFamily {
    CsdFamily::with_scale(1)
}

impl CsdFamily {
    pub fn with_scale(scale: Nat) -> CsdFamily {
        let mut blocks = Vec::new();
        let mut sum: Nat = 0;
        for i in 0..MAX_BLOCKS {
            let poly = PolyCode(i as Nat);
            let step = || -> Option<CsdBlock> {
                let a = scale.checked_mul(i as Nat + 1)?.checked_add(sum)?;
                let p = poly.eval(a).ok()?;
                let spaced = poly.eval(scale.checked_mul(a)?).ok()?;
                Some(CsdBlock {
                    i,
                    a,
                    p,
                    width: spaced.checked_add(scale)?,
                })
            };
            let Some(block) = step() else { break };
            // The next start must also be representable.
            let Some(next) = sum.checked_add(block.width - scale) else { break };
            sum = next;
            blocks.push(block);
        }
        CsdFamily { scale, blocks }
    }

    pub fn a(&self, i: usize) -> Result<Nat> {
        self.block(i).map(|b| b.a)
    }

    pub fn block(&self, i: usize) -> Result<CsdBlock> {
        self.blocks
            .get(i)
            .copied()
            .ok_or(Error::Overflow("tabulating column self-describing block starts"))
    }

    pub fn decode(&self, n: Nat) -> Result<CsdMember> {
        if n < self.blocks[0].a {
            return Ok(CsdMember::A(0));
        }
        let pos = self.blocks.partition_point(|b| b.a <= n);
        let b = self.blocks[pos - 1];
        if pos == self.blocks.len() && n - b.a >= b.width {
            return Err(Error::Overflow("index beyond the tabulated blocks"));
        }
        let off = n - b.a;
        Ok(if off >= 1 && off <= b.p {
            CsdMember::B(b.i, off - 1)
        } else {
            CsdMember::A(b.i)
        })
    }

    pub fn index_of(&self, m: CsdMember) -> Result<Nat> {
        match m {
            CsdMember::A(0) => Ok(0),
            CsdMember::A(i) => self.a(i),
            CsdMember::B(i, j) => Ok(self.a(i)? + 1 + j),
        }
    }

    pub fn spec_of(&self, m: CsdMember) -> Result<SetSpec> {
        let col = |hi: Nat, j: Nat| SetSpec::product(SetSpec::interval(0, hi), SetSpec::explicit([j]));
        Ok(match m {
            CsdMember::A(i) => {
                let b = self.block(i)?;
                let mut parts = vec![col(b.a, b.p)];
                parts.extend((0..b.p).map(|j| col(b.a + j, j)));
                SetSpec::Union(parts)
            }
            CsdMember::B(i, j) => {
                let b = self.block(i)?;
                SetSpec::Union((0..=j).map(|l| col(b.a + l, l)).collect())
            }
        })
    }

    /// Greatest element code of a member.
    fn top_code(&self, m: CsdMember) -> Result<Nat> {
        match m {
            CsdMember::A(i) => {
                let b = self.block(i)?;
                let mut top = pair(b.a, b.p)?;
                if b.p > 0 {
                    top = top.max(pair(b.a + b.p - 1, b.p - 1)?);
                }
                Ok(top)
            }
            CsdMember::B(i, j) => pair(self.a(i)? + j, j),
        }
    }

    /// Index named by a member whose highest nonempty column is `column` with
    /// greatest element `greatest` in it, if any member has that shape.
    pub fn index_of_top(&self, column: Nat, greatest: Nat) -> Option<Nat> {
        for b in &self.blocks {
            if b.a > greatest {
                break;
            }
            if b.a == greatest && b.p == column {
                return self.index_of(CsdMember::A(b.i)).ok();
            }
            if column < b.p && b.a + column == greatest {
                return self.index_of(CsdMember::B(b.i, column)).ok();
            }
        }
        None
    }

    /// `B_{i,0} ⊂ … ⊂ B_{i,p-1} ⊂ A_i`, as indices.
    pub fn chain(&self, i: usize) -> Result<Vec<Nat>> {
        let b = self.block(i)?;
        let mut out: Vec<Nat> = (0..b.p).map(|j| b.a + 1 + j).collect();
        out.push(self.index_of(CsdMember::A(i))?);
        Ok(out)
    }
}

impl IndexedFamily for CsdFamily {
    fn name(&self) -> String {
        if self.scale == 1 {
            "csd".into()
        } else {
            format!("csd(scale {})", self.scale)
        }
    }

    fn member(&self, n: Nat) -> Result<SetSpec> {
        self.spec_of(self.decode(n)?)
    }

    fn min_index(&self, n: Nat) -> Result<Nat> {
        self.index_of(self.decode(n)?)
    }

    fn separation_bound(&self, indices: &[Nat]) -> Result<Nat> {
        let mut top = 0;
        for &n in indices {
            top = top.max(self.top_code(self.decode(n)?)?);
        }
        Ok(top)
    }

    fn manifest(&self) -> FamilyManifest {
        FamilyManifest::new("csd")
            .param("scale", self.scale)
            .table("a", self.blocks.iter().map(|b| b.a))
            .table("p_of_a", self.blocks.iter().map(|b| b.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{set_equal, set_subset};
    use crate::families::brute_min_index;

    /// Block starts straight from the recurrence.
    fn oracle_a(scale: Nat, count: usize) -> Vec<Nat> {
        let mut a = Vec::new();
        for n in 0..count {
            let s: Nat = (0..n).map(|i| PolyCode(i as Nat).eval(scale * a[i]).unwrap()).sum();
            a.push(scale * (n as Nat + 1) + s);
        }
        a
    }

    #[test]
    fn block_starts() {
        let f = make_csd();
        assert_eq!(f.a(0).unwrap(), 1);
        assert_eq!(f.a(1).unwrap(), 2);
        let want = oracle_a(1, 12);
        assert_eq!(f.blocks.iter().take(12).map(|b| b.a).collect::<Vec<_>>(), want);
        let g = CsdFamily::with_scale(3);
        assert_eq!(g.blocks.iter().take(9).map(|b| b.a).collect::<Vec<_>>(), oracle_a(3, 9));
    }

    #[test]
    fn first_member() {
        let f = make_csd();
        let want = SetSpec::product(SetSpec::interval(0, 1), SetSpec::explicit([0]));
        assert!(set_equal(&f.member(1).unwrap(), &want, 100));
        assert!(set_equal(&f.member(0).unwrap(), &want, 100));
        assert_eq!(f.min_index(1).unwrap(), 0);
    }

    #[test]
    fn chains_increase() {
        let f = make_csd();
        for b in f.blocks.iter().take(9).filter(|b| b.p > 0) {
            let chain = f.chain(b.i).unwrap();
            let u = f.separation_bound(&chain).unwrap();
            for w in chain.windows(2) {
                let (lo, hi) = (f.member(w[0]).unwrap(), f.member(w[1]).unwrap());
                assert!(set_subset(&lo, &hi, u) && !set_equal(&lo, &hi, u));
            }
        }
    }

    #[test]
    fn min_index_and_inverse() {
        for scale in [1, 3] {
            let f = CsdFamily::with_scale(scale);
            let end = f.a(6).unwrap();
            for n in 0..end {
                let mi = f.min_index(n).unwrap();
                assert_eq!(mi, brute_min_index(&f, n).unwrap(), "scale {scale} index {n}");
                let els = f.member(n).unwrap().finite_elements().unwrap();
                let column = els.iter().map(|&x| crate::codec::unpair(x).1).max().unwrap();
                let greatest = els
                    .iter()
                    .map(|&x| crate::codec::unpair(x))
                    .filter(|&(_, c)| c == column)
                    .map(|(x, _)| x)
                    .max()
                    .unwrap();
                assert_eq!(f.index_of_top(column, greatest), Some(mi));
            }
        }
    }
}
