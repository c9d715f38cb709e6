//! Coordinate subsets as bitmasks, with a canonical order and a reflected
//! Gray-code walk.

/// Indices set in `mask`, ascending.
pub fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Orders subsets by size, then lexicographically on their sorted indices.
pub fn canonical_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All nonempty subsets of `{0, ..., len-1}` in canonical order.
pub fn nonempty_subsets(len: usize) -> Vec<Vec<usize>> {
    assert!(len < 64, "subset masks are 64-bit");
    let mut all: Vec<Vec<usize>> = (1u64..1 << len).map(indices).collect();
    all.sort_by(|a, b| canonical_cmp(a, b));
    all
}

/// Reflected binary Gray code over `bits` bits.
///
/// Yields `(mask, flipped)` for each step after the empty set, where
/// `flipped` is the bit that changed from the previous mask. Covers all
/// `2^bits - 1` nonempty masks exactly once.
pub struct GrayWalk {
    step: u64,
    end: u64,
}

impl GrayWalk {
    pub fn new(bits: usize) -> Self {
        assert!(bits < 64, "subset masks are 64-bit");
        GrayWalk {
            step: 1,
            end: 1 << bits,
        }
    }
}

impl Iterator for GrayWalk {
    type Item = (u64, usize);

    fn next(&mut self) -> Option<(u64, usize)> {
        if self.step >= self.end {
            return None;
        }
        let i = self.step;
        self.step += 1;
        Some((i ^ (i >> 1), i.trailing_zeros() as usize))
    }
}
