//! Finite abelian groups `Z_{m1} x ... x Z_{mk}` with componentwise arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// Largest group order accepted by the parser.
pub const MAX_ORDER: u64 = 1 << 20;

/// A finite abelian group given by its cyclic factors, in the order written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
    two_rank: u32,
}

/// An element of an [`AbelianGroup`], one residue per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl AbelianGroup {
    /// Builds a group from its moduli. Factors equal to 1 are dropped.
    pub fn new(moduli: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut kept = Vec::new();
        let mut order: u64 = 1;
        for m in moduli {
            if m == 0 {
                return Err(Error::Parse {
                    token: format!("Z{m}"),
                    reason: "modulus must be at least 1".into(),
                });
            }
            if m == 1 {
                continue;
            }
            order = order.saturating_mul(m);
            if order > MAX_ORDER {
                return Err(Error::OrderTooLarge {
                    order,
                    max: MAX_ORDER,
                });
            }
            kept.push(m);
        }
        if kept.is_empty() {
            return Err(Error::Parse {
                token: String::new(),
                reason: "group is trivial after removing Z1 factors".into(),
            });
        }
        let mut group = AbelianGroup {
            moduli: kept,
            order,
            two_rank: 0,
        };
        let involutions = group.elements().filter(|g| group.is_involution(g)).count();
        debug_assert!(involutions.is_power_of_two());
        group.two_rank = involutions.trailing_zeros();
        Ok(group)
    }

    /// Parses `Z<m>` tokens joined by `x`, e.g. `Z4xZ2xZ3` (case-insensitive).
    pub fn parse(spec: &str) -> Result<Self> {
        if spec.is_empty() {
            return Err(Error::Parse {
                token: String::new(),
                reason: "empty group spec".into(),
            });
        }
        let lower = spec.to_ascii_lowercase();
        let mut moduli = Vec::new();
        for token in lower.split('x') {
            let digits = token.strip_prefix('z').ok_or_else(|| Error::Parse {
                token: token.to_string(),
                reason: "expected `Z<m>`".into(),
            })?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    token: token.to_string(),
                    reason: "modulus must be a decimal integer".into(),
                });
            }
            let m: u64 = digits.parse().map_err(|_| Error::Parse {
                token: token.to_string(),
                reason: "modulus out of range".into(),
            })?;
            if m < 1 {
                return Err(Error::Parse {
                    token: token.to_string(),
                    reason: "modulus must be at least 1".into(),
                });
            }
            moduli.push(m);
        }
        Self::new(moduli)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `n = |G|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `r`, with `2^r` the number of solutions of `g + g = 0`.
    pub fn two_rank(&self) -> u32 {
        self.two_rank
    }

    /// Canonical spelling, e.g. `Z4xZ3`.
    pub fn spec(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    /// True iff every factor is `Z2`, i.e. D(G) is abelian.
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.moduli.iter().all(|&m| m == 2)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    /// Reduces arbitrary coordinates into an element.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.moduli.len() {
            return Err(Error::Structure {
                expected: self.moduli.len(),
                got,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_len(a.0.len())?;
        self.check_len(b.0.len())?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_len(a.0.len())?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        ))
    }

    /// `a + a`, written multiplicatively as `a^2`.
    pub fn square(&self, a: &GroupElement) -> Result<GroupElement> {
        self.add(a, a)
    }

    fn is_involution(&self, g: &GroupElement) -> bool {
        g.0.iter()
            .zip(&self.moduli)
            .all(|(&x, &m)| (2 * x) % m == 0)
    }

    /// All `g` with `g^2 = e`, in lexicographic order.
    pub fn involutions(&self) -> Vec<GroupElement> {
        self.elements().filter(|g| self.is_involution(g)).collect()
    }

    /// Every element in lexicographic order (last coordinate varies fastest).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    /// Lexicographic rank of an element.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut residues = vec![0; self.moduli.len()];
        for (slot, &m) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % m as usize) as u64;
            index /= m as usize;
        }
        GroupElement(residues)
    }

    /// Multiset of prime-power cyclic factors, sorted. Isomorphic groups agree.
    pub fn primary_decomposition(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &m in &self.moduli {
            let mut rest = m;
            let mut p = 2;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut q = 1;
                    while rest % p == 0 {
                        rest /= p;
                        q *= p;
                    }
                    out.push(q);
                }
                p += 1;
            }
            if rest > 1 {
                out.push(rest);
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}
