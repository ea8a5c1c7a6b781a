//! Non-adaptive parity decision tree complexity: exact value, protocol
//! synthesis and verification, and a small-n adaptive parity tree oracle.

use crate::boolfn::PartialFn;
use crate::error::{Error, Result};
use crate::gf2::{parity_check_matrix, CubeMask, Gf2Matrix, Gf2Subspace};
use crate::shifts::{max_subspace_in, preserving_shifts};
use std::collections::HashMap;

/// A non-adaptive protocol: p parity queries and a flat answer table of
/// 2^p bits indexed by the syndrome, with the first query's answer at the
/// least significant position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NadtProtocol {
    queries: Gf2Matrix,
    table: CubeMask,
}

impl NadtProtocol {
    pub fn new(queries: Gf2Matrix, table: CubeMask) -> Result<Self> {
        if table.n() != queries.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "table indexes {} bits but there are {} queries",
                table.n(),
                queries.nrows()
            )));
        }
        Ok(NadtProtocol { queries, table })
    }

    pub fn queries(&self) -> &Gf2Matrix {
        &self.queries
    }

    pub fn table(&self) -> &CubeMask {
        &self.table
    }

    pub fn query_count(&self) -> usize {
        self.queries.nrows()
    }

    pub fn output(&self, x: u64) -> bool {
        self.table.get(self.queries.mul_raw(x))
    }
}

/// Exact NADT complexity: n minus the dimension of the largest linear
/// subspace of preserving shifts. Coset-constancy of f over a subspace L is
/// the pairwise condition x XOR y in L, so L works exactly when L is inside
/// the preserving-shift set.
pub fn nadt_complexity(f: &PartialFn) -> usize {
    f.n() - max_subspace_in(&preserving_shifts(f)).dim()
}

/// Protocol from a subspace of preserving shifts: queries are the parity
/// check matrix of L and each table entry is f at any defined point of the
/// corresponding coset (0 when the coset misses the domain).
pub fn synthesize_nadt(f: &PartialFn, l: &Gf2Subspace) -> Result<NadtProtocol> {
    if l.n() != f.n() {
        return Err(Error::DimensionMismatch(
            "subspace dimension differs from the function's".to_string(),
        ));
    }
    let d = preserving_shifts(f);
    if !l.span_mask()?.subset_of(d.mask()) {
        return Err(Error::Precondition(
            "subspace contains a non-preserving shift".to_string(),
        ));
    }
    let queries = parity_check_matrix(l);
    let p = queries.nrows();
    let mut table = CubeMask::zeros(p)?;
    for x in f.defined().ones() {
        if f.value().get(x) {
            table.set(queries.mul_raw(x));
        }
    }
    NadtProtocol::new(queries, table)
}

/// True when the table value at the syndrome of x matches f(x) for every
/// defined x.
pub fn verify_nadt(f: &PartialFn, p: &NadtProtocol) -> Result<bool> {
    if p.queries.ncols() != f.n() {
        return Err(Error::DimensionMismatch(format!(
            "protocol queries have {} coordinates, function has {}",
            p.queries.ncols(),
            f.n()
        )));
    }
    Ok(f
        .defined()
        .ones()
        .all(|x| p.output(x) == f.value().get(x)))
}

const DTP_CAP: usize = 6;

/// Exact adaptive parity decision tree depth, for n <= 6.
///
/// The recursion restricts f to affine subspaces cut out by the answers
/// collected so far; states are memoized by the restriction of (domain,
/// values) they induce, which is the only part the optimum depends on.
pub fn dtp_exact(f: &PartialFn) -> Result<usize> {
    let n = f.n();
    if n > DTP_CAP {
        return Err(Error::Usage(format!(
            "adaptive tree search is capped at n <= {DTP_CAP}, got n={n}"
        )));
    }
    let size = 1usize << n;
    let full: u64 = if size == 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    };
    let defined = low_word(f.defined());
    let value = low_word(f.value());
    // parity_zero[s]: points x with <s, x> = 0
    let parity_zero: Vec<u64> = (0..size as u64)
        .map(|s| {
            let mut m = 0u64;
            for x in 0..size as u64 {
                if (s & x).count_ones() % 2 == 0 {
                    m |= 1 << x;
                }
            }
            m & full
        })
        .collect();

    struct Ctx {
        defined: u64,
        value: u64,
        parity_zero: Vec<u64>,
        size: usize,
        memo: HashMap<(u64, u64), usize>,
    }

    fn rec(ctx: &mut Ctx, state: u64) -> usize {
        let live = ctx.defined & state;
        let ones = ctx.value & live;
        if live == 0 || ones == 0 || ones == live {
            return 0;
        }
        if let Some(&d) = ctx.memo.get(&(live, ones)) {
            return d;
        }
        let mut best = usize::MAX;
        for s in 1..ctx.size as u64 {
            let half = ctx.parity_zero[s as usize];
            let s0 = state & half;
            let s1 = state & !half;
            if s0 == state || s1 == state {
                continue;
            }
            let d = 1 + rec(ctx, s0).max(rec(ctx, s1));
            if d < best {
                best = d;
                if best == 1 {
                    break;
                }
            }
        }
        ctx.memo.insert((live, ones), best);
        best
    }

    let mut ctx = Ctx {
        defined,
        value,
        parity_zero,
        size,
        memo: HashMap::new(),
    };
    Ok(rec(&mut ctx, full))
}

fn low_word(m: &CubeMask) -> u64 {
    m.words()[0]
}
