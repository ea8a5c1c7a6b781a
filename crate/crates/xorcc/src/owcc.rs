//! One-way communication complexity of XOR functions: the row-conflict
//! Cayley graph, exact chromatic number at small n, lower and upper bounds,
//! protocol synthesis and direct verification.
//!
//! Two rows x, x' of F(x,y) = f(x XOR y) may share a message exactly when
//! x XOR x' is a preserving shift of f: per-y agreement among defined values
//! is transitive, so pairwise compatibility of a message class suffices, and
//! coloring the conflict graph converts to a protocol through the component
//! construction. The minimum message count is therefore the chromatic
//! number of the conflict graph, and the complexity is its log, rounded up.
//!
//! Two-way protocols are out of scope: interactive complexity never exceeds
//! the one-way value (Bob can ignore his turns), so every separation
//! established here against parity queries transfers to the interactive
//! model as-is.

use crate::boolfn::{MessageMap, PartialFn};
use crate::error::{Error, Result};
use crate::gf2::CubeMask;
use crate::nadt::nadt_complexity;
use crate::shifts::{good_shifts, induced_components, preserving_shifts, ShiftSet};
use std::sync::atomic::{AtomicUsize, Ordering};

/// Cayley graph on {0,1}^n whose edges join rows that cannot share a
/// one-way message: {x, y} is an edge iff x XOR y is not a preserving
/// shift. Vertex-transitive by construction; loop-free since 0 preserves.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    n: usize,
    /// mask of the conflicting (non-preserving) shifts; bit 0 is clear
    bad: CubeMask,
}

const DEFAULT_CHROMATIC_CAP: usize = 8;
static CHROMATIC_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_CHROMATIC_CAP);

pub fn chromatic_cap() -> usize {
    CHROMATIC_CAP.load(Ordering::Relaxed)
}

pub fn set_chromatic_cap(cap: usize) {
    CHROMATIC_CAP.store(cap, Ordering::Relaxed);
}

impl ConflictGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    /// Every vertex has the same degree: the number of conflicting shifts.
    pub fn degree(&self) -> u64 {
        self.bad.count_ones()
    }

    pub fn are_adjacent(&self, x: u64, y: u64) -> bool {
        self.bad.get(x ^ y)
    }

    pub fn adjacency_mask(&self, x: u64) -> CubeMask {
        self.bad.xor_shift(x)
    }

    pub fn bad_shifts(&self) -> &CubeMask {
        &self.bad
    }
}

pub fn conflict_graph(f: &PartialFn) -> ConflictGraph {
    let d = preserving_shifts(f);
    ConflictGraph {
        n: f.n(),
        bad: d.mask().complement(),
    }
}

pub fn conflict_graph_from_shifts(d: &ShiftSet) -> ConflictGraph {
    ConflictGraph {
        n: d.n(),
        bad: d.mask().complement(),
    }
}

/// Greedy clique in vertex-index order; the clique size lower-bounds the
/// chromatic number.
fn greedy_clique(g: &ConflictGraph) -> Vec<u64> {
    let mut clique: Vec<u64> = vec![0];
    for v in 1..g.vertex_count() {
        if clique.iter().all(|&c| g.are_adjacent(v, c)) {
            clique.push(v);
        }
    }
    clique
}

/// Maximum subset of `elems` whose pairwise XORs all land in `good`, by a
/// branch and bound with a greedy-coloring bound (Tomita-style). In the
/// Cayley graphs here this solves both max clique (elems = conflicting
/// shifts, good = conflict mask) and max independent set (elems =
/// preserving shifts, good = preserving mask), each relative to a set
/// containing the vertex 0, which vertex-transitivity makes lossless.
///
/// The search stops after `budget` nodes; the bool reports whether it ran
/// to completion. The returned set is a valid clique either way.
fn max_xor_clique(elems: &[u64], good: &CubeMask, budget: u64) -> (Vec<u64>, bool) {
    struct St<'a> {
        good: &'a CubeMask,
        best: Vec<u64>,
        current: Vec<u64>,
        nodes: u64,
        budget: u64,
    }

    fn expand(st: &mut St<'_>, cands: &[u64]) {
        st.nodes += 1;
        if st.nodes > st.budget {
            return;
        }
        if cands.is_empty() {
            if st.current.len() > st.best.len() {
                st.best = st.current.clone();
            }
            return;
        }
        // greedy coloring of the candidate subgraph: color class indices
        // bound how many of the remaining candidates a clique can use
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let mut order: Vec<(usize, u64)> = Vec::with_capacity(cands.len());
        for &v in cands {
            let mut placed = false;
            for (ci, class) in classes.iter_mut().enumerate() {
                if class.iter().all(|&u| !st.good.get(u ^ v)) {
                    class.push(v);
                    order.push((ci + 1, v));
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![v]);
                order.push((classes.len(), v));
            }
        }
        // branch from the highest color down; sorted ascending then reversed
        order.sort_by_key(|&(c, v)| (c, v));
        for i in (0..order.len()).rev() {
            let (color, v) = order[i];
            if st.current.len() + color <= st.best.len() {
                return;
            }
            let next: Vec<u64> = order[..i]
                .iter()
                .map(|&(_, u)| u)
                .filter(|&u| st.good.get(u ^ v))
                .collect();
            st.current.push(v);
            expand(st, &next);
            st.current.pop();
            if st.nodes > st.budget {
                return;
            }
        }
    }

    let mut st = St {
        good,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
    };
    expand(&mut st, elems);
    let complete = st.nodes <= st.budget;
    (st.best, complete)
}

/// A large clique through the vertex 0: {0} plus conflicting shifts with
/// pairwise conflicts. Exact when the budgeted search completes; a valid
/// clique (hence a valid chromatic lower bound) regardless. On very dense
/// graphs the search is skipped for the index-greedy clique, since the
/// independence-number bound carries those instances.
fn max_clique_lower(g: &ConflictGraph) -> Vec<u64> {
    let elems: Vec<u64> = g.bad.ones().collect();
    if elems.len() > 96 {
        return greedy_clique(g);
    }
    let (found, _) = max_xor_clique(&elems, &g.bad, 50_000);
    let mut clique = vec![0u64];
    clique.extend(found);
    clique
}

/// Exact independence number, or None when the budgeted search cannot
/// certify completion (an incomplete maximum would give an unsound
/// chromatic lower bound, so it is discarded).
fn independence_number(g: &ConflictGraph) -> Option<u64> {
    let d_mask = g.bad.complement();
    let elems: Vec<u64> = d_mask.ones().filter(|&v| v != 0).collect();
    let (found, complete) = max_xor_clique(&elems, &d_mask, 100_000);
    complete.then_some(found.len() as u64 + 1)
}

/// Greedy cover of the cube by translates of difference-closed subsets of
/// D: a coloring scheme aligned with the Cayley structure, often tight on
/// dense conflict graphs. The shift order is scrambled by XOR with a fixed
/// constant per restart and the best cover is kept.
fn translate_greedy(g: &ConflictGraph) -> usize {
    let n = g.n;
    let d_mask = g.bad.complement();
    let size = 1u64 << n;
    let mut best = usize::MAX;
    for scramble in [0u64, !0, 0x5555_5555_5555_5555, 0x3333_3333_3333_3333] {
        let mut deltas: Vec<u64> = d_mask.ones().filter(|&v| v != 0).collect();
        deltas.sort_by_key(|&v| (v ^ scramble) & (size - 1));
        let mut uncovered = CubeMask::full(n).expect("dimension already capped");
        let mut classes = 0usize;
        while let Some(x) = uncovered.first_one() {
            let mut class: Vec<u64> = vec![0];
            for &delta in &deltas {
                if uncovered.get(x ^ delta) && class.iter().all(|&s| d_mask.get(s ^ delta)) {
                    class.push(delta);
                }
            }
            for s in class {
                uncovered.clear(x ^ s);
            }
            classes += 1;
        }
        best = best.min(classes);
    }
    best
}

/// DSATUR greedy coloring; returns the number of colors used.
fn dsatur_greedy(g: &ConflictGraph) -> usize {
    let nv = g.vertex_count() as usize;
    let mut color: Vec<u32> = vec![u32::MAX; nv];
    let adj: Vec<CubeMask> = (0..nv as u64).map(|v| g.adjacency_mask(v)).collect();
    let mut used = 0u32;
    for _ in 0..nv {
        // highest saturation, ties by smallest index (degrees are equal)
        let mut pick = usize::MAX;
        let mut pick_sat = 0usize;
        for v in 0..nv {
            if color[v] != u32::MAX {
                continue;
            }
            let mut seen = vec![false; used as usize + 1];
            let mut sat = 0;
            for u in adj[v].ones() {
                let c = color[u as usize];
                if c != u32::MAX && !seen[c as usize] {
                    seen[c as usize] = true;
                    sat += 1;
                }
            }
            if pick == usize::MAX || sat > pick_sat {
                pick = v;
                pick_sat = sat;
            }
        }
        let mut taken = vec![false; used as usize + 1];
        for u in adj[pick].ones() {
            let c = color[u as usize];
            if c != u32::MAX {
                taken[c as usize] = true;
            }
        }
        let c = (0..).find(|&c| c as usize >= taken.len() || !taken[c as usize]).unwrap();
        color[pick] = c;
        used = used.max(c + 1);
    }
    used as usize
}

/// Bounds on the chromatic number from certificates on the shift
/// structure: a clique and vertex-count over independence number below;
/// DSATUR, translate packing, and coset tiling by the largest preserved
/// subspace above.
fn chromatic_bracket(g: &ConflictGraph) -> (usize, usize, Vec<u64>) {
    let nv = g.vertex_count() as usize;
    let clique = max_clique_lower(g);
    let mut lb = clique.len();
    if let Some(alpha) = independence_number(g) {
        lb = lb.max(nv.div_ceil(alpha as usize));
    }
    let d = ShiftSet::from_mask(g.bad.complement()).expect("0 always preserves");
    let coset_ub = nv >> crate::shifts::max_subspace_in(&d).dim();
    let ub = dsatur_greedy(g).min(translate_greedy(g)).min(coset_ub);
    (lb, ub, clique)
}

struct ColoringSearch<'a> {
    adj: &'a [CubeMask],
    color: Vec<u32>,
    uncolored: usize,
    best: usize,
    stop_at: usize,
    best_assignment: Option<Vec<u32>>,
}

impl ColoringSearch<'_> {
    /// Exhaustive DSATUR branch and bound; lowers `best` to the chromatic
    /// number, stopping early if `best` reaches `stop_at`. Deterministic:
    /// saturation order with index tie-breaks, colors in increasing order.
    fn solve(&mut self, used: usize) {
        if used >= self.best {
            return;
        }
        if self.uncolored == 0 {
            self.best = used;
            self.best_assignment = Some(self.color.clone());
            return;
        }
        // DSATUR choice: highest saturation, ties by smallest index
        // (the graph is regular, so degree never breaks ties)
        let mut pick = usize::MAX;
        let mut pick_sat = 0usize;
        for (v, &cv) in self.color.iter().enumerate() {
            if cv != u32::MAX {
                continue;
            }
            let sat = self.saturation(v, used);
            if pick == usize::MAX || sat > pick_sat {
                pick = v;
                pick_sat = sat;
            }
        }
        let v = pick;
        let mut taken = vec![false; used];
        for u in self.adj[v].ones() {
            let c = self.color[u as usize];
            if c != u32::MAX && (c as usize) < used {
                taken[c as usize] = true;
            }
        }
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if taken.get(c) == Some(&true) {
                continue;
            }
            self.color[v] = c as u32;
            self.uncolored -= 1;
            self.solve(used.max(c + 1));
            self.uncolored += 1;
            self.color[v] = u32::MAX;
            if self.best <= self.stop_at {
                return;
            }
        }
    }

    fn saturation(&self, v: usize, used: usize) -> usize {
        let mut seen = vec![0u64; (used + 64) / 64];
        let mut sat = 0usize;
        for u in self.adj[v].ones() {
            let c = self.color[u as usize];
            if c != u32::MAX && (c as usize) < used && seen[c as usize / 64] >> (c % 64) & 1 == 0 {
                seen[c as usize / 64] |= 1 << (c % 64);
                sat += 1;
            }
        }
        sat
    }
}

/// Exhaustive coloring search seeded with a clique pre-coloring (lossless:
/// some optimal coloring separates the clique, and colors are symmetric).
/// Returns the chromatic number, unless it proves a value <= stop_at and
/// returns that early; the witness assignment, when one was built, comes
/// along.
fn coloring_search(
    g: &ConflictGraph,
    clique: &[u64],
    ub_init: usize,
    stop_at: usize,
) -> (usize, Option<Vec<u32>>) {
    let nv = g.vertex_count() as usize;
    let adj: Vec<CubeMask> = (0..nv as u64).map(|v| g.adjacency_mask(v)).collect();
    let mut bb = ColoringSearch {
        adj: &adj,
        color: vec![u32::MAX; nv],
        uncolored: nv,
        best: ub_init,
        stop_at,
        best_assignment: None,
    };
    for (i, &v) in clique.iter().enumerate() {
        bb.color[v as usize] = i as u32;
        bb.uncolored -= 1;
    }
    bb.solve(clique.len());
    (bb.best, bb.best_assignment)
}

/// Exact chromatic number by branch and bound, seeded with clique and
/// independence-number lower bounds and greedy upper bounds.
pub fn chromatic_number_exact(g: &ConflictGraph) -> Result<usize> {
    let cap = chromatic_cap();
    if g.n > cap {
        return Err(Error::Usage(format!(
            "exact coloring is capped at n <= {cap} (got n={}); use owcc_bounds instead",
            g.n
        )));
    }
    if g.bad.is_zero() {
        return Ok(1);
    }
    let nv = g.vertex_count() as usize;
    // complete graph: all nonzero shifts conflict
    if g.degree() == g.vertex_count() - 1 {
        return Ok(nv);
    }
    let (lb, ub, clique) = chromatic_bracket(g);
    if lb >= ub {
        return Ok(ub);
    }
    Ok(coloring_search(g, &clique, ub, lb).0)
}

/// Exact chromatic number together with a witness coloring.
pub fn chromatic_coloring_exact(g: &ConflictGraph) -> Result<(usize, Vec<u32>)> {
    let cap = chromatic_cap();
    if g.n > cap {
        return Err(Error::Usage(format!(
            "exact coloring is capped at n <= {cap} (got n={})",
            g.n
        )));
    }
    let nv = g.vertex_count() as usize;
    if g.bad.is_zero() {
        return Ok((1, vec![0; nv]));
    }
    if g.degree() == g.vertex_count() - 1 {
        return Ok((nv, (0..nv as u32).collect()));
    }
    let (lb, ub, clique) = chromatic_bracket(g);
    // start above the greedy bound so the search must build a witness
    let (chi, assignment) = coloring_search(g, &clique, ub + 1, lb);
    let assignment =
        assignment.ok_or_else(|| Error::Invariant("search ended without a coloring".into()))?;
    Ok((chi, assignment))
}

/// Decide whether chi <= k. The yes side needs one witness coloring; the
/// no side exhausts colorings with at most k colors, which fail fast when
/// k is small relative to the graph.
fn colorable_within(g: &ConflictGraph, k: usize, lb: usize, ub: usize, clique: &[u64]) -> bool {
    if ub <= k {
        return true;
    }
    if lb > k || clique.len() > k {
        return false;
    }
    coloring_search(g, clique, k + 1, k).0 <= k
}

/// Exact one-way communication complexity of F(x,y) = f(x XOR y):
/// ceil(log2 chi) of the conflict graph, 0 when the graph is edgeless.
///
/// Only the position of chi relative to powers of two matters, so after
/// the cheap bracket this asks colorability decisions at the bucket
/// boundaries instead of resolving chi exactly.
pub fn owcc_exact(f: &PartialFn) -> Result<usize> {
    let g = conflict_graph(f);
    let cap = chromatic_cap();
    if g.n > cap {
        return Err(Error::Usage(format!(
            "exact complexity is capped at n <= {cap} (got n={}); use owcc_bounds instead",
            g.n
        )));
    }
    if g.bad.is_zero() {
        return Ok(0);
    }
    if g.degree() == g.vertex_count() - 1 {
        return Ok(g.n);
    }
    let (lb, ub, clique) = chromatic_bracket(&g);
    for t in ceil_log2(lb)..ceil_log2(ub) {
        if colorable_within(&g, 1 << t, lb, ub, &clique) {
            return Ok(t);
        }
    }
    Ok(ceil_log2(ub))
}

pub fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        usize::BITS as usize - (k - 1).leading_zeros() as usize
    }
}

/// (lower, upper) bounds on the one-way complexity without the exact-cap:
/// a clique gives the lower bound, the better of the coset protocol and a
/// greedy coloring gives the upper. Above the exact cap the clique scan is
/// truncated and the cheaper translate coloring stands alone; the bracket
/// stays valid, just possibly looser.
pub fn owcc_bounds(f: &PartialFn) -> (usize, usize) {
    let g = conflict_graph(f);
    if g.bad.is_zero() {
        return (0, 0);
    }
    let small = g.n <= chromatic_cap();
    let clique_len = if small {
        greedy_clique(&g).len()
    } else {
        let mut clique: Vec<u64> = vec![0];
        for v in 1..g.vertex_count().min(1 << 16) {
            if clique.iter().all(|&c| g.are_adjacent(v, c)) {
                clique.push(v);
            }
        }
        clique.len()
    };
    let mut coloring = translate_greedy(&g);
    if small {
        coloring = coloring.min(dsatur_greedy(&g));
    }
    let upper = nadt_complexity(f).min(ceil_log2(coloring));
    (ceil_log2(clique_len), upper)
}

/// A one-way protocol: Alice's message map and Bob's answer table, stored
/// per message id as a partial function over y (entries not forced by any
/// row are left undefined and answer 0).
#[derive(Clone, Debug)]
pub struct OneWayProtocol {
    h: MessageMap,
    phi: Vec<PartialFn>,
}

impl OneWayProtocol {
    pub fn new(h: MessageMap, phi: Vec<PartialFn>) -> Result<Self> {
        if phi.len() != 1 << h.t() {
            return Err(Error::DimensionMismatch(format!(
                "need an answer row per message id: {} rows for t={}",
                phi.len(),
                h.t()
            )));
        }
        if phi.iter().any(|p| p.n() != h.n()) {
            return Err(Error::DimensionMismatch(
                "answer rows must range over Bob's full input space".to_string(),
            ));
        }
        Ok(OneWayProtocol { h, phi })
    }

    pub fn h(&self) -> &MessageMap {
        &self.h
    }

    pub fn phi(&self) -> &[PartialFn] {
        &self.phi
    }

    pub fn t(&self) -> usize {
        self.h.t()
    }

    /// Bob's output on (message, y); unconstrained entries answer 0.
    pub fn answer(&self, alpha: u32, y: u64) -> bool {
        self.phi[alpha as usize].value().get(y)
    }
}

/// Build phi for a given message map, following the component construction:
/// phi(alpha, y) = f(x' XOR y) for the smallest x' in the fiber of alpha
/// with x' XOR y defined. Requires f constant on every component of the
/// partial h-induced graph, which is checked first.
pub fn synthesize_oneway(f: &PartialFn, h: &MessageMap) -> Result<OneWayProtocol> {
    if h.n() != f.n() {
        return Err(Error::DimensionMismatch(
            "message map dimension differs from the function's".to_string(),
        ));
    }
    let n = f.n();
    let d = good_shifts(h);
    let comps = induced_components(&d, Some(f.defined()));
    // constancy per live component
    let mut value_of: std::collections::HashMap<u32, bool> = std::collections::HashMap::new();
    for x in f.defined().ones() {
        let label = comps.label(x);
        let v = f.value().get(x);
        if let Some(&w) = value_of.get(&label) {
            if w != v {
                return Err(Error::Precondition(format!(
                    "f is not constant on the component of point {label}: \
                     it takes both values there"
                )));
            }
        } else {
            value_of.insert(label, v);
        }
    }

    let mut phi = Vec::with_capacity(1 << h.t());
    for alpha in 0..1u32 << h.t() {
        let mut defined = CubeMask::zeros(n)?;
        let mut value = CubeMask::zeros(n)?;
        // smallest x' first: later x' never overwrite
        for x in 0..1u64 << n {
            if h.label(x) != alpha {
                continue;
            }
            let dom_x = f.defined().xor_shift(x); // y : x XOR y defined
            let val_x = f.value().xor_shift(x);
            let fresh = dom_x.and_not(&defined);
            value.or_assign(&val_x.and(&fresh));
            defined.or_assign(&fresh);
        }
        phi.push(PartialFn::new(n, defined, value)?);
    }
    OneWayProtocol::new(h.clone(), phi)
}

/// Direct check of the protocol equation over every (x, y) with
/// x XOR y in Dom(f), bit-parallel over y.
pub fn verify_oneway(f: &PartialFn, p: &OneWayProtocol) -> Result<bool> {
    if p.h.n() != f.n() {
        return Err(Error::DimensionMismatch(
            "protocol dimension differs from the function's".to_string(),
        ));
    }
    for x in 0..1u64 << f.n() {
        let alpha = p.h.label(x);
        let dom_x = f.defined().xor_shift(x);
        let val_x = f.value().xor_shift(x);
        // effective answers: undefined entries answer 0, which the value
        // mask of a partial function already encodes
        let answers = p.phi[alpha as usize].value();
        if dom_x.and(&val_x.xor(answers)).is_zero() {
            continue;
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::make_fk;
    use crate::gf2::Gf2Subspace;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn conflict_graph_examples() {
        // total constant: edgeless
        let g = conflict_graph(&PartialFn::constant(3, false).unwrap());
        assert_eq!(g.degree(), 0);

        // two defined points with different values: edges exactly at their
        // difference
        let mut defined = CubeMask::zeros(3).unwrap();
        let mut value = CubeMask::zeros(3).unwrap();
        defined.set(0b001);
        defined.set(0b110);
        value.set(0b110);
        let f = PartialFn::new(3, defined, value).unwrap();
        let g = conflict_graph(&f);
        assert_eq!(g.bad_shifts().ones().collect::<Vec<_>>(), vec![0b111]);

        // f_1 at n=3: conflicts at weight >= 2
        let g = conflict_graph(&make_fk(3, 1).unwrap());
        assert!(g.bad_shifts().ones().all(|d| d.count_ones() >= 2));
        assert_eq!(g.degree(), 4);
    }

    #[test]
    fn chromatic_trivial() {
        let g = conflict_graph(&PartialFn::constant(3, true).unwrap());
        assert_eq!(chromatic_number_exact(&g).unwrap(), 1);
        // the indicator of {0}: every nonzero shift separates 0 from the
        // rest, so the conflict graph is complete
        let v = CubeMask::from_indices(3, &[0]).unwrap();
        let f = PartialFn::total(v);
        let g = conflict_graph(&f);
        assert_eq!(g.degree(), 7);
        assert_eq!(chromatic_number_exact(&g).unwrap(), 8);
        assert_eq!(owcc_exact(&f).unwrap(), 3);
    }

    /// Exhaustive coloring oracle for 8 vertices: smallest c such that a
    /// proper c-coloring exists, by direct enumeration.
    fn chi_oracle_n3(g: &ConflictGraph) -> usize {
        'outer: for c in 1..=8usize {
            // enumerate colorings in base c
            let mut assign = [0usize; 8];
            loop {
                let proper = (0..8u64).all(|x| {
                    (x + 1..8u64)
                        .all(|y| !g.are_adjacent(x, y) || assign[x as usize] != assign[y as usize])
                });
                if proper {
                    return c;
                }
                // increment
                let mut i = 0;
                loop {
                    if i == 8 {
                        continue 'outer;
                    }
                    assign[i] += 1;
                    if assign[i] < c {
                        break;
                    }
                    assign[i] = 0;
                    i += 1;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn chromatic_f1_n3_is_four() {
        let g = conflict_graph(&make_fk(3, 1).unwrap());
        assert_eq!(chromatic_number_exact(&g).unwrap(), 4);
        assert_eq!(chi_oracle_n3(&g), 4);
        assert_eq!(owcc_exact(&make_fk(3, 1).unwrap()).unwrap(), 2);
    }

    #[test]
    fn chromatic_matches_oracle_random_n3() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..60 {
            let mut bad = CubeMask::zeros(3).unwrap();
            for delta in 1..8u64 {
                if rng.gen_bool(0.5) {
                    bad.set(delta);
                }
            }
            let d = ShiftSet::from_mask(bad.complement()).unwrap();
            let g = conflict_graph_from_shifts(&d);
            assert_eq!(chromatic_number_exact(&g).unwrap(), chi_oracle_n3(&g));
        }
    }

    #[test]
    fn owcc_paths_agree_with_full_coloring() {
        // the boundary-decision path and the full branch and bound must
        // land on the same width
        let mut rng = StdRng::seed_from_u64(97);
        for i in 0..200 {
            let n = rng.gen_range(3..=6usize);
            let p_undef = [0.1, 0.3, 0.5, 0.7, 0.85][i % 5];
            let mut defined = CubeMask::zeros(n).unwrap();
            let mut value = CubeMask::zeros(n).unwrap();
            for x in 0..1u64 << n {
                if !rng.gen_bool(p_undef) {
                    defined.set(x);
                    if rng.gen_bool(0.5) {
                        value.set(x);
                    }
                }
            }
            let f = PartialFn::new(n, defined, value).unwrap();
            let chi = chromatic_number_exact(&conflict_graph(&f)).unwrap();
            assert_eq!(owcc_exact(&f).unwrap(), ceil_log2(chi), "n={n} i={i}");
        }
    }

    #[test]
    fn exact_coloring_is_proper_and_optimal() {
        let mut rng = StdRng::seed_from_u64(89);
        for _ in 0..60 {
            let n = rng.gen_range(2..=5usize);
            let mut defined = CubeMask::zeros(n).unwrap();
            let mut value = CubeMask::zeros(n).unwrap();
            for x in 0..1u64 << n {
                if rng.gen_bool(0.6) {
                    defined.set(x);
                    if rng.gen_bool(0.5) {
                        value.set(x);
                    }
                }
            }
            let f = PartialFn::new(n, defined, value).unwrap();
            let g = conflict_graph(&f);
            let (chi, colors) = chromatic_coloring_exact(&g).unwrap();
            assert_eq!(chi, chromatic_number_exact(&g).unwrap());
            let used: std::collections::HashSet<u32> = colors.iter().copied().collect();
            assert!(used.len() <= chi);
            for x in 0..1u64 << n {
                for y in x + 1..1u64 << n {
                    if g.are_adjacent(x, y) {
                        assert_ne!(colors[x as usize], colors[y as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn owcc_f4_n7_certificate() {
        // the headline separation point: chi in (8,16], owcc 4, nadt 5
        let f = make_fk(7, 4).unwrap();
        let g = conflict_graph(&f);
        let chi = chromatic_number_exact(&g).unwrap();
        assert!(chi > 8 && chi <= 16, "chi = {chi}");
        assert_eq!(owcc_exact(&f).unwrap(), 4);
        assert_eq!(nadt_complexity(&f), 5);
    }

    #[test]
    fn bounds_bracket_exact() {
        let mut rng = StdRng::seed_from_u64(67);
        for _ in 0..120 {
            let n = rng.gen_range(2..=5usize);
            let mut defined = CubeMask::zeros(n).unwrap();
            let mut value = CubeMask::zeros(n).unwrap();
            for x in 0..1u64 << n {
                if rng.gen_bool(0.7) {
                    defined.set(x);
                    if rng.gen_bool(0.5) {
                        value.set(x);
                    }
                }
            }
            let f = PartialFn::new(n, defined, value).unwrap();
            let (lo, hi) = owcc_bounds(&f);
            let exact = owcc_exact(&f).unwrap();
            assert!(lo <= exact && exact <= hi, "lo={lo} exact={exact} hi={hi}");
        }
    }

    #[test]
    fn owcc_constant_and_bounds_examples() {
        let f = PartialFn::constant(4, false).unwrap();
        assert_eq!(owcc_exact(&f).unwrap(), 0);
        assert_eq!(owcc_bounds(&f), (0, 0));
        // f_k coloring by cosets keeps the upper bound at k+1
        for n in 3..=6usize {
            for k in 0..n {
                let f = make_fk(n, k).unwrap();
                assert!(owcc_bounds(&f).1 <= k + 1);
            }
        }
    }

    #[test]
    fn synthesize_injective_always_works() {
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4usize);
            let mut defined = CubeMask::zeros(n).unwrap();
            let mut value = CubeMask::zeros(n).unwrap();
            for x in 0..1u64 << n {
                if rng.gen_bool(0.6) {
                    defined.set(x);
                    if rng.gen_bool(0.5) {
                        value.set(x);
                    }
                }
            }
            let f = PartialFn::new(n, defined, value).unwrap();
            let h = MessageMap::from_fn(n, n, |x| x as u32).unwrap();
            let p = synthesize_oneway(&f, &h).unwrap();
            assert!(verify_oneway(&f, &p).unwrap());
        }
    }

    #[test]
    fn synthesize_coset_labeling_round_trip() {
        // h = coset labeling of a preserved subspace always succeeds
        let f = make_fk(4, 1).unwrap();
        // preserving shifts of f_1 in n=4 = ball radius 2
        let l = Gf2Subspace::from_raw_spanning(4, &[0b0011]);
        let h = MessageMap::from_subspace_cosets(&l).unwrap();
        let p = synthesize_oneway(&f, &h).unwrap();
        assert!(verify_oneway(&f, &p).unwrap());
        assert_eq!(p.t(), 3);
    }

    #[test]
    fn synthesize_conflicting_merge_fails_and_verify_detects() {
        // merge 0^3 and 1^3 for f_1: their values differ
        let f = make_fk(3, 1).unwrap();
        let h = MessageMap::from_fn(3, 1, |x| if x == 0 || x == 7 { 0 } else { 1 }).unwrap();
        assert!(synthesize_oneway(&f, &h).is_err());

        // hand-built protocol with that merge fails verification
        let n = 3;
        let mut phi = Vec::new();
        for _ in 0..2 {
            phi.push(PartialFn::new(n, CubeMask::full(n).unwrap(), CubeMask::zeros(n).unwrap()).unwrap());
        }
        let p = OneWayProtocol::new(h, phi).unwrap();
        assert!(!verify_oneway(&f, &p).unwrap());
    }

    #[test]
    fn good_shifts_subset_of_preserving_for_valid_protocols() {
        // whenever (h, phi) verifies for f, good shifts of h preserve f
        let mut rng = StdRng::seed_from_u64(73);
        let mut checked = 0;
        while checked < 40 {
            let n = rng.gen_range(2..=5usize);
            let mut defined = CubeMask::zeros(n).unwrap();
            let mut value = CubeMask::zeros(n).unwrap();
            for x in 0..1u64 << n {
                if rng.gen_bool(0.5) {
                    defined.set(x);
                    if rng.gen_bool(0.5) {
                        value.set(x);
                    }
                }
            }
            let f = PartialFn::new(n, defined, value).unwrap();
            let t = rng.gen_range(1..=n);
            let h = MessageMap::from_fn(n, t, |_| rng.gen_range(0..1u32 << t)).unwrap();
            let Ok(p) = synthesize_oneway(&f, &h) else {
                continue;
            };
            assert!(verify_oneway(&f, &p).unwrap());
            assert!(good_shifts(&h)
                .mask()
                .subset_of(preserving_shifts(&f).mask()));
            checked += 1;
        }
    }
}

