//! Exhaustive enumeration of labeled connected graphs on a few vertices.
//!
//! A labeled graph on `n` vertices is identified with a bit mask over the
//! `n(n-1)/2` vertex pairs, taken in graph6 column order
//! `(0,1), (0,2), (1,2), (0,3), ...`. Masks are visited in increasing order,
//! so the stream is deterministic. No isomorphism reduction is done.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// Largest order whose pair masks fit a `u64` with room to spare.
pub const MAX_ENUMERATION_ORDER: usize = 11;

/// Vertex pairs `(u, v)`, `u < v`, in graph6 column order.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// Decodes pair masks for a fixed order.
#[derive(Debug, Clone)]
pub(crate) struct MaskDecoder {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl MaskDecoder {
    pub(crate) fn new(n: usize) -> Self {
        MaskDecoder {
            n,
            pairs: pair_order(n),
        }
    }

    pub(crate) fn mask_count(&self) -> u64 {
        1u64 << self.pairs.len()
    }

    fn rows(&self, mask: u64) -> [u16; MAX_ENUMERATION_ORDER] {
        let mut rows = [0u16; MAX_ENUMERATION_ORDER];
        for (k, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        rows
    }

    pub(crate) fn is_connected(&self, mask: u64) -> bool {
        let rows = self.rows(mask);
        let all = (1u16 << self.n) - 1;
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= rows[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    pub(crate) fn graph(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p);
        Graph::from_edges(self.n, edges).expect("pair order is in range")
    }
}

/// Builds the labeled graph whose edge set is the given pair mask.
pub fn graph_from_mask(n: usize, mask: u64) -> Result<Graph> {
    check_order(n, MAX_ENUMERATION_ORDER)?;
    let decoder = MaskDecoder::new(n);
    if mask >= decoder.mask_count() {
        return Err(Error::InvalidInput(format!("mask {mask:#x} has bits beyond the {} pairs", decoder.pairs.len())));
    }
    Ok(decoder.graph(mask))
}

fn check_order(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(())
}

/// Every labeled connected graph on `n` vertices, `1 <= n <= 7`.
pub fn enumerate_connected(n: usize) -> Result<ConnectedGraphs> {
    enumerate_connected_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_connected`] with a caller-chosen cap (at most
/// [`MAX_ENUMERATION_ORDER`]).
pub fn enumerate_connected_with_cap(n: usize, cap: usize) -> Result<ConnectedGraphs> {
    check_order(n, cap.min(MAX_ENUMERATION_ORDER))?;
    let decoder = MaskDecoder::new(n);
    Ok(ConnectedGraphs {
        end: decoder.mask_count(),
        decoder,
        next: 0,
    })
}

/// Iterator returned by [`enumerate_connected`].
#[derive(Debug, Clone)]
pub struct ConnectedGraphs {
    decoder: MaskDecoder,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.decoder.is_connected(mask) {
                return Some(self.decoder.graph(mask));
            }
        }
        None
    }
}
