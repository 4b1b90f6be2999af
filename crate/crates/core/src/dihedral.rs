//! The generalized dihedral group `D(G) = G ⋊ C2`, its center, and the
//! partition of its elements into the center, the other rotations, and the
//! square-classes of reflections.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, GroupElement};
use crate::error::{Error, Result};

/// The `C2 = {+1, -1}` component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub sign: Sign,
    pub g: GroupElement,
}

impl DihedralElement {
    pub fn new(g: GroupElement, sign: Sign) -> Self {
        DihedralElement { sign, g }
    }
}

/// Text form `(g1,g2,...;s)`, e.g. `(3,1;-)`.
impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.g, self.sign.symbol())
    }
}

/// Which of the three sets a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Omega {
    /// The center.
    Omega1,
    /// Non-central rotations `(g, +1)`.
    Omega2,
    /// Reflections `(g, -1)`.
    Omega3,
}

/// Per-vertex label: the two rotation parts, or the index of a reflection block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Omega1,
    Omega2,
    Block(usize),
}

impl Part {
    pub fn omega(self) -> Omega {
        match self {
            Part::Omega1 => Omega::Omega1,
            Part::Omega2 => Omega::Omega2,
            Part::Block(_) => Omega::Omega3,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Omega1 => f.write_str("omega1"),
            Part::Omega2 => f.write_str("omega2"),
            Part::Block(i) => write!(f, "block{}", i + 1),
        }
    }
}

/// `D(G)` over a finite abelian `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralGroup {
    base: AbelianGroup,
}

impl DihedralGroup {
    pub fn new(base: AbelianGroup) -> Self {
        DihedralGroup { base }
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    /// `|D(G)| = 2n`.
    pub fn order(&self) -> usize {
        2 * self.base.order() as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.base.is_elementary_abelian_2()
    }

    pub fn identity(&self) -> DihedralElement {
        DihedralElement::new(self.base.identity(), Sign::Plus)
    }

    /// All rotations, then all reflections, each in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        [Sign::Plus, Sign::Minus].into_iter().flat_map(move |s| {
            self.base
                .elements()
                .map(move |g| DihedralElement::new(g, s))
        })
    }

    pub fn index_of(&self, x: &DihedralElement) -> usize {
        let offset = match x.sign {
            Sign::Plus => 0,
            Sign::Minus => self.base.order() as usize,
        };
        offset + self.base.index_of(&x.g)
    }

    /// `(g1, c1)(g2, c2) = (g1 + c1·g2, c1·c2)`.
    pub fn mul(&self, x: &DihedralElement, y: &DihedralElement) -> Result<DihedralElement> {
        let twisted = match x.sign {
            Sign::Plus => self.base.add(&y.g, &self.base.identity())?,
            Sign::Minus => self.base.neg(&y.g)?,
        };
        Ok(DihedralElement::new(
            self.base.add(&x.g, &twisted)?,
            x.sign.times(y.sign),
        ))
    }

    /// Commutation via the closed criteria: rotations always commute, two
    /// reflections commute iff their squares agree, and a rotation commutes
    /// with a reflection iff the rotation is central.
    pub fn commutes(&self, x: &DihedralElement, y: &DihedralElement) -> Result<bool> {
        let b = &self.base;
        Ok(match (x.sign, y.sign) {
            (Sign::Plus, Sign::Plus) => {
                b.add(&x.g, &y.g)?;
                true
            }
            (Sign::Minus, Sign::Minus) => b.square(&x.g)? == b.square(&y.g)?,
            (Sign::Plus, Sign::Minus) => {
                b.add(&y.g, &y.g)?;
                b.square(&x.g)? == b.identity()
            }
            (Sign::Minus, Sign::Plus) => {
                b.add(&x.g, &x.g)?;
                b.square(&y.g)? == b.identity()
            }
        })
    }

    /// Commutation by multiplying in both orders.
    pub fn commutes_by_definition(&self, x: &DihedralElement, y: &DihedralElement) -> Result<bool> {
        Ok(self.mul(x, y)? == self.mul(y, x)?)
    }

    /// `Z(D(G)) = {(g, +1) : g^2 = e}`, or every element when `D(G)` is abelian.
    pub fn center(&self) -> Vec<DihedralElement> {
        if self.is_abelian() {
            return self.elements().collect();
        }
        self.base
            .involutions()
            .into_iter()
            .map(|g| DihedralElement::new(g, Sign::Plus))
            .collect()
    }

    pub fn omega_partition(&self) -> Result<OmegaPartition> {
        if self.is_abelian() {
            return Err(Error::ElementaryAbelian2);
        }
        let b = &self.base;
        let mut omega1 = Vec::new();
        let mut omega2 = Vec::new();
        let mut classes: BTreeMap<GroupElement, Vec<DihedralElement>> = BTreeMap::new();
        for g in b.elements() {
            let sq = b.square(&g)?;
            if sq == b.identity() {
                omega1.push(DihedralElement::new(g.clone(), Sign::Plus));
            } else {
                omega2.push(DihedralElement::new(g.clone(), Sign::Plus));
            }
            classes
                .entry(sq)
                .or_default()
                .push(DihedralElement::new(g, Sign::Minus));
        }
        Ok(OmegaPartition {
            omega1,
            omega2,
            blocks: classes.into_values().collect(),
        })
    }
}

/// `Ω1` (center), `Ω2` (other rotations) and the blocks `B_1..B_{n/2^r}` of
/// reflections sharing a square. Blocks are ordered by their square value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPartition {
    pub omega1: Vec<DihedralElement>,
    pub omega2: Vec<DihedralElement>,
    pub blocks: Vec<Vec<DihedralElement>>,
}

impl OmegaPartition {
    /// Vertex order used by every graph and export: `Ω1`, `Ω2`, then blocks.
    pub fn canonical_order(&self) -> Vec<(DihedralElement, Part)> {
        let mut out = Vec::with_capacity(2 * self.omega1.len() + self.omega2.len() * 2);
        out.extend(self.omega1.iter().cloned().map(|x| (x, Part::Omega1)));
        out.extend(self.omega2.iter().cloned().map(|x| (x, Part::Omega2)));
        for (i, block) in self.blocks.iter().enumerate() {
            out.extend(block.iter().cloned().map(|x| (x, Part::Block(i))));
        }
        out
    }

    pub fn omega3(&self) -> impl Iterator<Item = &DihedralElement> {
        self.blocks.iter().flatten()
    }

    pub fn part_of(&self, x: &DihedralElement) -> Option<Part> {
        if self.omega1.contains(x) {
            return Some(Part::Omega1);
        }
        if self.omega2.contains(x) {
            return Some(Part::Omega2);
        }
        self.blocks
            .iter()
            .position(|b| b.contains(x))
            .map(Part::Block)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(spec: &str) -> DihedralGroup {
        DihedralGroup::new(AbelianGroup::parse(spec).unwrap())
    }

    fn e(d: &DihedralGroup, xs: &[i64], s: Sign) -> DihedralElement {
        DihedralElement::new(d.base().element(xs).unwrap(), s)
    }

    use Sign::{Minus, Plus};

    #[test]
    fn multiplication_examples() {
        let d = dg("Z6");
        assert_eq!(
            d.mul(&e(&d, &[1], Minus), &e(&d, &[2], Minus)).unwrap(),
            e(&d, &[5], Plus)
        );
        assert_eq!(
            d.mul(&e(&d, &[2], Plus), &e(&d, &[3], Minus)).unwrap(),
            e(&d, &[5], Minus)
        );
        for x in d.elements() {
            assert_eq!(d.mul(&d.identity(), &x).unwrap(), x);
            assert_eq!(d.mul(&x, &d.identity()).unwrap(), x);
        }
    }

    #[test]
    fn commutation_examples() {
        let d = dg("Z6");
        assert!(d
            .commutes(&e(&d, &[1], Minus), &e(&d, &[4], Minus))
            .unwrap());
        let (x, y) = (e(&d, &[1], Plus), e(&d, &[0], Minus));
        assert!(!d.commutes(&x, &y).unwrap());
        assert_eq!(d.mul(&x, &y).unwrap(), e(&d, &[1], Minus));
        assert_eq!(d.mul(&y, &x).unwrap(), e(&d, &[5], Minus));
        let d = dg("Z4");
        assert!(d.commutes(&e(&d, &[2], Plus), &e(&d, &[1], Minus)).unwrap());
    }

    #[test]
    fn closed_criteria_match_definition_exhaustively() {
        for spec in [
            "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "Z8", "Z2xZ4", "Z9", "Z10", "Z12", "Z2xZ6", "Z3xZ4",
        ] {
            let d = dg(spec);
            let all: Vec<_> = d.elements().collect();
            for x in &all {
                for y in &all {
                    assert_eq!(
                        d.commutes(x, y).unwrap(),
                        d.commutes_by_definition(x, y).unwrap(),
                        "{spec}: {x} {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn center_examples_and_scan() {
        let d = dg("Z4");
        assert_eq!(d.center(), vec![e(&d, &[0], Plus), e(&d, &[2], Plus)]);
        let d = dg("Z3");
        assert_eq!(d.center(), vec![d.identity()]);
        assert_eq!(dg("Z2xZ2").center().len(), 8);
        for spec in ["Z3", "Z4", "Z6", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z12"] {
            let d = dg(spec);
            let all: Vec<_> = d.elements().collect();
            let scanned: Vec<_> = all
                .iter()
                .filter(|x| all.iter().all(|y| d.commutes_by_definition(x, y).unwrap()))
                .cloned()
                .collect();
            assert_eq!(d.center(), scanned, "{spec}");
        }
    }

    #[test]
    fn partition_examples() {
        let d = dg("Z6");
        let p = d.omega_partition().unwrap();
        let blocks: Vec<Vec<_>> = [[0, 3], [1, 4], [2, 5]]
            .iter()
            .map(|b| b.iter().map(|&x| e(&d, &[x], Minus)).collect())
            .collect();
        assert_eq!(p.blocks, blocks);

        let d = dg("Z3");
        let p = d.omega_partition().unwrap();
        assert_eq!(p.omega1, vec![d.identity()]);
        assert_eq!(p.omega2, vec![e(&d, &[1], Plus), e(&d, &[2], Plus)]);
        assert_eq!(p.blocks.len(), 3);
        assert!(p.blocks.iter().all(|b| b.len() == 1));

        let p = dg("Z4").omega_partition().unwrap();
        assert_eq!((p.omega1.len(), p.omega2.len(), p.blocks.len()), (2, 2, 2));
        assert!(p.blocks.iter().all(|b| b.len() == 2));

        assert_eq!(
            dg("Z2xZ2").omega_partition(),
            Err(Error::ElementaryAbelian2)
        );
    }

    #[test]
    fn partition_properties() {
        for spec in [
            "Z3", "Z4", "Z6", "Z8", "Z2xZ4", "Z3xZ3", "Z2xZ6", "Z4xZ4", "Z2xZ2xZ3",
        ] {
            let d = dg(spec);
            let g = d.base();
            let (n, c) = (g.order() as usize, 1usize << g.two_rank());
            let p = d.omega_partition().unwrap();
            assert_eq!(p.omega1.len(), c);
            assert_eq!(p.omega2.len(), n - c);
            assert_eq!(p.blocks.len(), n / c);
            assert!(p.blocks.iter().all(|b| b.len() == c));
            let mut all: Vec<_> = p.canonical_order().into_iter().map(|(x, _)| x).collect();
            assert_eq!(all.len(), 2 * n);
            all.sort();
            all.dedup();
            assert_eq!(all.len(), 2 * n);

            for x in &p.omega2 {
                for y in p.omega1.iter().chain(&p.omega2) {
                    assert!(d.commutes(x, y).unwrap());
                }
                for y in p.omega3() {
                    assert!(!d.commutes(x, y).unwrap());
                }
            }
            for x in d.elements().filter(|x| x.sign == Plus) {
                for y in d.elements().filter(|y| y.sign == Minus) {
                    if d.commutes_by_definition(&x, &y).unwrap() {
                        assert!(p.omega1.contains(&x), "{spec}: {x}");
                    }
                }
            }
            for block in &p.blocks {
                for fixed in block {
                    let commuting: Vec<_> = p
                        .omega3()
                        .filter(|y| d.commutes_by_definition(fixed, y).unwrap())
                        .cloned()
                        .collect();
                    assert_eq!(&commuting, block);
                }
            }
        }
    }

    #[test]
    fn text_form() {
        let d = dg("Z4xZ2");
        assert_eq!(e(&d, &[3, 1], Minus).to_string(), "(3,1;-)");
        assert_eq!(d.identity().to_string(), "(0,0;+)");
    }
}
