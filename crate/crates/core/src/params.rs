use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// The pair `(n, r)` that every closed formula is stated in.
///
/// `n > 2^r` and `2^r | n`. Pairs need not come from an actual group: the
/// structural constructor accepts e.g. `(4, 0)`, which no abelian group
/// realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralParams {
    n: u64,
    r: u32,
}

impl DihedralParams {
    pub fn new(n: u64, r: u32) -> Result<Self> {
        if r >= 40 {
            return Err(Error::InvalidParameters {
                n,
                r,
                reason: "2-rank too large",
            });
        }
        let c = 1u64 << r;
        if n <= c {
            return Err(Error::InvalidParameters {
                n,
                r,
                reason: "need n > 2^r",
            });
        }
        if !n.is_multiple_of(c) {
            return Err(Error::InvalidParameters {
                n,
                r,
                reason: "2^r must divide n",
            });
        }
        Ok(DihedralParams { n, r })
    }

    pub fn of_group(g: &AbelianGroup) -> Result<Self> {
        if g.is_elementary_abelian_2() {
            return Err(Error::ElementaryAbelian2);
        }
        Self::new(g.order(), g.two_rank())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `2^r = |Ω1|`, also the size of every block.
    pub fn center_size(&self) -> u64 {
        1 << self.r
    }

    /// `n / 2^r`, the number of blocks.
    pub fn block_count(&self) -> u64 {
        self.n >> self.r
    }

    pub fn vertex_count(&self) -> u64 {
        2 * self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DihedralParams::new(6, 1).is_ok());
        assert!(DihedralParams::new(4, 0).is_ok());
        assert!(DihedralParams::new(4, 2).is_err());
        assert!(DihedralParams::new(6, 2).is_err());
        assert!(DihedralParams::new(1, 0).is_err());
        let p = DihedralParams::new(12, 2).unwrap();
        assert_eq!(
            (p.center_size(), p.block_count(), p.vertex_count()),
            (4, 3, 24)
        );
        let g = AbelianGroup::parse("Z2xZ2").unwrap();
        assert_eq!(DihedralParams::of_group(&g), Err(Error::ElementaryAbelian2));
    }
}
