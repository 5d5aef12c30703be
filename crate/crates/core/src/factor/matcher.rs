use crate::index::SuffixArray;
use crate::text::Symbol;

/// Longest-previous-factor queries over a suffix array.
pub(super) struct PrevMatcher {
    sa: SuffixArray,
    lcp: Vec<usize>,
    touched: Vec<usize>,
}

impl PrevMatcher {
    pub fn new(t: &[Symbol]) -> Self {
        Self {
            sa: SuffixArray::new(t),
            lcp: vec![0; t.len()],
            touched: Vec::new(),
        }
    }

    /// Calls `f(s, lcp(s, pos))` for every `s < pos` whose suffix shares a
    /// non-empty prefix with the suffix at `pos`.
    pub fn for_each_prev(&mut self, pos: usize, mut f: impl FnMut(usize, usize)) {
        self.sa.lcp_with(pos, &mut self.lcp, &mut self.touched);
        for &s in &self.touched {
            if s < pos {
                f(s, self.lcp[s]);
            }
            self.lcp[s] = 0;
        }
    }

    /// Longest previous match at `pos` and its leftmost source.
    ///
    /// With `overlap`, the source only has to start before `pos`; otherwise
    /// it must end before `pos`.
    pub fn longest(&mut self, pos: usize, overlap: bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        self.for_each_prev(pos, |s, h| {
            let len = if overlap { h } else { h.min(pos - s) };
            if len == 0 {
                return;
            }
            match best {
                Some((bl, bs)) if bl > len || (bl == len && bs < s) => {}
                _ => best = Some((len, s)),
            }
        });
        best
    }
}
