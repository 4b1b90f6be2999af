//! `u64` neighborhood masks for the exponential oracles, which never run on
//! more than 64 vertices.

use crate::error::{Error, Result};
use crate::graph::CommutingGraph;

pub(crate) const MASK_LIMIT: usize = 64;

pub(crate) fn neighbor_masks(
    g: &CommutingGraph,
    what: &'static str,
    cap: usize,
) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    let cap = cap.min(MASK_LIMIT);
    if n > cap {
        return Err(Error::CapExceeded {
            what,
            vertices: n,
            cap,
        });
    }
    Ok((0..n).map(|u| g.neighbor_bits(u)[0]).collect())
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
