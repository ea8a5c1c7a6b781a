//! The shift-set abstraction that unifies both complexity measures:
//! f-preserving shifts, good shifts of a message map, induced graphs and
//! their components, and maximum linear subspaces inside a shift set.

use crate::boolfn::{MessageMap, PartialFn};
use crate::error::{Error, Result};
use crate::gf2::{permute_word, CubeMask, Gf2Subspace};
use rayon::prelude::*;

/// A set of shift vectors as a 2^n-bit mask; always contains the zero shift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftSet {
    n: usize,
    mask: CubeMask,
}

impl ShiftSet {
    pub fn from_mask(mask: CubeMask) -> Result<Self> {
        if !mask.get(0) {
            return Err(Error::Precondition(
                "a shift set must contain the zero shift".to_string(),
            ));
        }
        Ok(ShiftSet { n: mask.n(), mask })
    }

    pub fn full(n: usize) -> Result<Self> {
        Ok(ShiftSet {
            n,
            mask: CubeMask::full(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> &CubeMask {
        &self.mask
    }

    pub fn contains(&self, delta: u64) -> bool {
        self.mask.get(delta)
    }

    pub fn len(&self) -> u64 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        false // 0 is always a member
    }
}

/// All shifts Delta such that no defined pair at difference Delta disagrees
/// on f. Works by whole-mask shift and compare per Delta, which keeps the
/// quadratic scan bit-parallel.
pub fn preserving_shifts(f: &PartialFn) -> ShiftSet {
    let n = f.n();
    let defined = f.defined().words();
    let value = f.value().words();
    let nwords = defined.len();
    let size = 1u64 << n;

    let conflict_free = |delta: u64| -> bool {
        // compare word w against word w ^ hi under the in-word permutation
        let hi = (delta >> 6) as usize;
        let lo = (delta & 63) as u32;
        if lo == 0 {
            for w in 0..nwords {
                let d2 = defined[w ^ hi];
                let v2 = value[w ^ hi];
                if defined[w] & d2 & (value[w] ^ v2) != 0 {
                    return false;
                }
            }
        } else {
            for w in 0..nwords {
                let d2 = permute_word(defined[w ^ hi], lo);
                let v2 = permute_word(value[w ^ hi], lo);
                if defined[w] & d2 & (value[w] ^ v2) != 0 {
                    return false;
                }
            }
        }
        true
    };

    // build the result one 64-delta word at a time so parallel runs stay
    // deterministic
    let out_words = (size as usize).div_ceil(64);
    let words: Vec<u64> = (0..out_words)
        .into_par_iter()
        .map(|wi| {
            let mut word = 0u64;
            let base = (wi as u64) << 6;
            let limit = 64.min(size - base);
            for b in 0..limit {
                if conflict_free(base + b) {
                    word |= 1 << b;
                }
            }
            word
        })
        .collect();
    let mask = CubeMask::from_words(n, words).expect("dimension already checked");
    ShiftSet { n, mask }
}

/// The exact good-shift set of a message map: Delta is good when some pair
/// at difference Delta shares a message.
pub fn good_shifts(h: &MessageMap) -> ShiftSet {
    let n = h.n();
    let mut fibers: Vec<CubeMask> = Vec::new();
    let mut index_of: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
    for x in 0..1u64 << n {
        let l = h.label(x);
        let i = *index_of.entry(l).or_insert_with(|| {
            fibers.push(CubeMask::zeros(n).expect("dimension already capped"));
            fibers.len() - 1
        });
        fibers[i].set(x);
    }
    let mut mask = CubeMask::zeros(n).expect("dimension already capped");
    mask.set(0);
    for fiber in &fibers {
        if fiber.count_ones() < 2 {
            continue;
        }
        // difference set of the fiber
        for x in fiber.ones() {
            let shifted = fiber.xor_shift(x);
            mask.or_assign(&shifted);
        }
    }
    ShiftSet { n, mask }
}

/// Connected-component labeling of the graph with edges {x, x XOR Delta}
/// over nonzero Delta in D, restricted to `live` when given. Labels are the
/// smallest vertex index in each component; dead vertices get u32::MAX.
#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    n: usize,
    labels: Vec<u32>,
    live: Option<CubeMask>,
}

impl ComponentLabeling {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, x: u64) -> u32 {
        self.labels[x as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn is_live(&self, x: u64) -> bool {
        match &self.live {
            Some(m) => m.get(x),
            None => true,
        }
    }

    pub fn component_count(&self) -> usize {
        let mut count = 0;
        for (x, &l) in self.labels.iter().enumerate() {
            if l as u64 == x as u64 && self.is_live(x as u64) {
                count += 1;
            }
        }
        count
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index wins so component ids are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

pub fn induced_components(d: &ShiftSet, live: Option<&CubeMask>) -> ComponentLabeling {
    let n = d.n();
    let size = 1u64 << n;
    let mut uf = UnionFind::new(size as usize);
    for delta in d.mask.ones() {
        if delta == 0 {
            continue;
        }
        match live {
            None => {
                for x in 0..size {
                    let y = x ^ delta;
                    if y > x {
                        uf.union(x as u32, y as u32);
                    }
                }
            }
            Some(m) => {
                let both = m.and(&m.xor_shift(delta));
                for x in both.ones() {
                    let y = x ^ delta;
                    if y > x {
                        uf.union(x as u32, y as u32);
                    }
                }
            }
        }
    }
    // smallest live index per root becomes the component id
    let mut labels = vec![u32::MAX; size as usize];
    let mut smallest: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    for x in 0..size {
        let alive = live.is_none_or(|m| m.get(x));
        if alive {
            let r = uf.find(x as u32);
            let entry = smallest.entry(r).or_insert(x as u32);
            labels[x as usize] = *entry;
        }
    }
    ComponentLabeling {
        n,
        labels,
        live: live.cloned(),
    }
}

/// Linear span of every vector in the shift set.
pub fn span_of(d: &ShiftSet) -> Gf2Subspace {
    let n = d.n();
    let mut basis: Vec<u64> = Vec::new();
    for v in d.mask.ones() {
        let mut r = v;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            if basis.len() == n {
                break;
            }
        }
    }
    Gf2Subspace::from_raw_spanning(n, &basis)
}

/// Degree of every vertex in the shift-defined graph: |D| - 1.
pub fn min_degree(d: &ShiftSet) -> u64 {
    d.len() - 1
}

/// Minimum (in integer order) of v's coset modulo the span of an MSB-pivot
/// basis table. Clearing a set bit at a pivot position always outweighs any
/// effect on lower bits, so the descending greedy is exact.
#[inline]
fn coset_min(table: &[u64; 64], mut v: u64) -> u64 {
    for p in (0..64).rev() {
        if v >> p & 1 == 1 && table[p] != 0 {
            v ^= table[p];
        }
    }
    v
}

/// A linear subspace of maximum dimension contained in D, found by an exact
/// branch-and-bound over canonical generator chains.
///
/// Each subspace has a unique increasing chain of generators in which every
/// generator is the minimum of its coset modulo the span of the earlier
/// ones, so the search visits each candidate subspace at most once. The
/// compat mask (points whose whole coset-by-span stays inside D) limits the
/// branching, and two admissible bounds prune the tree:
///
/// * element count: a dim-(m+r) extension adds (2^r - 1) 2^m elements, all
///   above the last generator and compatible;
/// * weight profile: a dim-d subspace has at most V(d, w) elements of
///   weight <= w (the XOR of any j canonical basis rows keeps j distinct
///   pivots), so low-weight compat sets cap the dimension outright.
///
/// First maximum found is kept, so the result is deterministic.
pub fn max_subspace_in(d: &ShiftSet) -> Gf2Subspace {
    let n = d.n();
    struct Search {
        n: usize,
        best_chain: Vec<u64>,
        chain: Vec<u64>,
        /// binomial prefix sums: ball_vol[d][w] = V(d, w)
        ball_vol: Vec<Vec<u64>>,
    }

    impl Search {
        /// Largest dimension consistent with the weight profile of the
        /// reachable element set (span plus compat points above g_last).
        fn weight_profile_bound(&self, hist_above: &[u64]) -> usize {
            // hist_above[w] = #reachable elements of weight > w
            let mut best = 0;
            'next_d: for d in (0..=self.n).rev() {
                for (w, &above) in hist_above.iter().enumerate() {
                    if (1u64 << d) > self.ball_vol[d][w].saturating_add(above) {
                        continue 'next_d;
                    }
                }
                best = d;
                break;
            }
            best
        }

        fn dfs(
            &mut self,
            compat: &CubeMask,
            span_mask: &CubeMask,
            msb_table: &[u64; 64],
            g_last: u64,
            dim: usize,
        ) {
            if dim > self.best_chain.len() {
                self.best_chain = self.chain.clone();
            }
            // one pass over compat: candidates, availability, weight histogram
            let mut cands: Vec<u64> = Vec::new();
            let mut avail = 0u64;
            let mut weight_count = vec![0u64; self.n + 1];
            for v in compat.ones() {
                let in_span = span_mask.get(v);
                if v > g_last {
                    if !in_span {
                        avail += 1;
                    }
                    cands.push(v);
                }
                if in_span || v > g_last {
                    weight_count[v.count_ones() as usize] += 1;
                }
            }
            // suffix sums: elements of weight > w
            let mut hist_above = vec![0u64; self.n + 1];
            let mut acc = 0u64;
            for w in (0..=self.n).rev() {
                hist_above[w] = acc;
                acc += weight_count[w];
            }
            let mut extra = 0usize;
            while (((1u64 << (extra + 1)) - 1) << dim) <= avail {
                extra += 1;
            }
            let reachable = (dim + extra).min(self.weight_profile_bound(&hist_above));
            if reachable <= self.best_chain.len() {
                return;
            }
            // candidates in increasing order; first maximum found is kept
            for cand in cands {
                if span_mask.get(cand) {
                    continue;
                }
                // canonical-chain condition: cand is the minimum of its coset
                if coset_min(msb_table, cand) != cand {
                    continue;
                }
                let child_compat = compat.and(&compat.xor_shift(cand));
                let child_span = span_mask.or(&span_mask.xor_shift(cand));
                let mut child_table = *msb_table;
                let mut v = cand;
                loop {
                    let p = 63 - v.leading_zeros() as usize;
                    if child_table[p] == 0 {
                        child_table[p] = v;
                        break;
                    }
                    v ^= child_table[p];
                }
                self.chain.push(cand);
                self.dfs(&child_compat, &child_span, &child_table, cand, dim + 1);
                self.chain.pop();
            }
        }
    }

    let mut ball_vol = vec![vec![0u64; n + 1]; n + 1];
    for (d, row) in ball_vol.iter_mut().enumerate() {
        let mut c = 1u64; // C(d, 0)
        let mut acc = 0u64;
        for (w, cell) in row.iter_mut().enumerate() {
            if w > 0 {
                c = if w <= d {
                    c * (d - w + 1) as u64 / w as u64
                } else {
                    0
                };
            }
            acc += c;
            *cell = acc;
        }
    }
    let mut s = Search {
        n,
        best_chain: vec![],
        chain: vec![],
        ball_vol,
    };
    let mut span0 = CubeMask::zeros(n).expect("dimension already capped");
    span0.set(0);
    let (compat, table) = (d.mask.clone(), [0u64; 64]);
    s.dfs(&compat, &span0, &table, 0, 0);
    Gf2Subspace::from_raw_spanning(n, &s.best_chain)
}
