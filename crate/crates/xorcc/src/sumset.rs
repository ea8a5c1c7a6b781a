//! Sumsets in F_2^n: the smallest coset-containing subspace, the iterative
//! element-transfer procedure with full invariant tracing, and verification
//! of the sumset cardinality bound.

use crate::cube::VertexSet;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, CubeMask, Gf2Subspace};

/// Exact sumset A + B = {a XOR b}, accumulated as shifted copies of A.
pub fn sumset(a: &VertexSet, b: &VertexSet) -> Result<VertexSet> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch(
            "sumset operands must share a dimension".to_string(),
        ));
    }
    let mut out = CubeMask::zeros(a.m())?;
    for shift in b.mask().ones() {
        out.or_assign(&a.mask().xor_shift(shift));
    }
    Ok(VertexSet::new(out))
}

/// The smallest subspace Q such that B lies in a coset of Q, together with
/// the coset representative: Q is spanned by the differences from the
/// smallest member.
pub fn min_coset_subspace(b: &VertexSet) -> Result<(Gf2Subspace, BitVector)> {
    let Some(b0) = b.mask().first_one() else {
        return Err(Error::Precondition(
            "the set must be nonempty".to_string(),
        ));
    };
    let gens: Vec<u64> = b.mask().ones().map(|x| x ^ b0).collect();
    let q = Gf2Subspace::from_raw_spanning(b.m(), &gens);
    Ok((q, BitVector::new(b.m(), b0)?))
}

/// One recorded step of the transfer procedure.
#[derive(Clone, Debug)]
pub struct SumsetStep {
    pub a_mask: CubeMask,
    pub b_mask: CubeMask,
    pub q: Gf2Subspace,
    pub b_prime: u64,
    pub a_prime: u64,
    pub transferred: CubeMask,
}

#[derive(Clone, Debug)]
pub struct SumsetTrace {
    pub n: usize,
    pub steps: Vec<SumsetStep>,
    pub terminated: bool,
    pub final_a: CubeMask,
    pub final_b: CubeMask,
}

impl SumsetTrace {
    /// Line-oriented dump: one step per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {i}\t|A|={}\t|B|={}\tdimQ={}\tb'={}\ta'={}\tmoved={}\n",
                s.a_mask.count_ones(),
                s.b_mask.count_ones(),
                s.q.dim(),
                s.b_prime,
                s.a_prime,
                s.transferred.count_ones()
            ));
        }
        out.push_str(&format!(
            "final\t|A|={}\t|B|={}\tterminated={}\n",
            self.final_a.count_ones(),
            self.final_b.count_ones(),
            self.terminated
        ));
        out
    }
}

/// Does some coset of Q intersect A properly (neither empty nor full)?
fn has_partial_coset(a: &CubeMask, q: &Gf2Subspace) -> Result<bool> {
    let span = q.span_mask()?;
    let coset_size = 1u64 << q.dim();
    let mut seen = CubeMask::zeros(a.n())?;
    for rep in 0..a.size() {
        if seen.get(rep) {
            continue;
        }
        let coset = span.xor_shift(rep);
        let inter = a.and(&coset).count_ones();
        if inter != 0 && inter != coset_size {
            return Ok(true);
        }
        seen.or_assign(&coset);
    }
    Ok(false)
}

/// The element-transfer procedure: while some coset of the current Q meets
/// A properly, shift B to contain 0, pick the smallest a' in A whose
/// shifted copy of B escapes A, move the escaping part into A, and repeat.
/// Selections are smallest-first so traces are reproducible. The size-sum
/// and sumset-monotonicity invariants are asserted online at every step;
/// a violation aborts with the trace dump.
pub fn run_algorithm1(a0: &VertexSet, b0: &VertexSet) -> Result<SumsetTrace> {
    if a0.m() != b0.m() {
        return Err(Error::DimensionMismatch(
            "operands must share a dimension".to_string(),
        ));
    }
    let n = a0.m();
    if a0.is_empty() || b0.is_empty() {
        return Err(Error::Precondition("operands must be nonempty".to_string()));
    }
    let (a_span, _) = min_coset_subspace(a0)?;
    if a_span.dim() != n {
        return Err(Error::Precondition(
            "A must not fit inside a coset of a proper subspace".to_string(),
        ));
    }

    let size_sum = a0.len() + b0.len();
    let initial_sumset = sumset(a0, b0)?.len();

    let mut a = a0.mask().clone();
    let mut b = b0.mask().clone();
    let mut steps: Vec<SumsetStep> = Vec::new();
    let mut prev_sumset = initial_sumset;

    loop {
        let (q, _) = min_coset_subspace(&VertexSet::new(b.clone()))?;
        if !has_partial_coset(&a, &q)? {
            break;
        }
        let b_prime = b.first_one().expect("B stays nonempty");
        let b_shifted = b.xor_shift(b_prime);
        // smallest a' in A with a' + B~ not inside A
        let a_prime = a
            .ones()
            .find(|&cand| !b_shifted.xor_shift(cand).subset_of(&a))
            .ok_or_else(|| trace_failure("no transferable element exists", &steps, &a, &b))?;
        // escaping part of the shifted B
        let landed = b_shifted.xor_shift(a_prime);
        let escaped = landed.and_not(&a);
        let moved = escaped.xor_shift(a_prime); // back in B~ coordinates
        if moved.is_zero() {
            return Err(trace_failure("selected a' moves nothing", &steps, &a, &b));
        }
        steps.push(SumsetStep {
            a_mask: a.clone(),
            b_mask: b.clone(),
            q,
            b_prime,
            a_prime,
            transferred: moved.clone(),
        });
        a.or_assign(&escaped);
        b = b_shifted.and_not(&moved);

        // online invariants
        if b.is_zero() {
            return Err(trace_failure("B became empty", &steps, &a, &b));
        }
        let cur_sum = a.count_ones() + b.count_ones();
        if cur_sum != size_sum {
            return Err(trace_failure(
                &format!("|A|+|B| drifted from {size_sum} to {cur_sum}"),
                &steps,
                &a,
                &b,
            ));
        }
        let cur_sumset = sumset(&VertexSet::new(a.clone()), &VertexSet::new(b.clone()))?.len();
        if cur_sumset > prev_sumset {
            return Err(trace_failure(
                &format!("sumset grew from {prev_sumset} to {cur_sumset}"),
                &steps,
                &a,
                &b,
            ));
        }
        prev_sumset = cur_sumset;
        if steps.len() as u64 > 1 << n {
            return Err(trace_failure("step count exceeded 2^n", &steps, &a, &b));
        }
    }

    Ok(SumsetTrace {
        n,
        steps,
        terminated: true,
        final_a: a,
        final_b: b,
    })
}

fn trace_failure(msg: &str, steps: &[SumsetStep], a: &CubeMask, b: &CubeMask) -> Error {
    let partial = SumsetTrace {
        n: a.n(),
        steps: steps.to_vec(),
        terminated: false,
        final_a: a.clone(),
        final_b: b.clone(),
    };
    Error::Invariant(format!("{msg}\n{}", partial.dump()))
}

#[derive(Clone, Debug)]
pub enum BoundOutcome {
    /// lhs = |A+B|, rhs = min(|A|+|B|-2^{n-3}, 3*2^{n-2}) in eighths
    Checked {
        holds: bool,
        sumset_size: u64,
        bound_eighths: i64,
    },
    Skipped { reason: String },
}

/// The cardinality bound |A+B| >= min(|A|+|B| - 2^{n-3}, 3*2^{n-2}),
/// computed in eighths so no fractional values appear for n < 3. Requires
/// A to span the cube affinely; other inputs are reported as skipped.
pub fn sumset_bound_check(a: &VertexSet, b: &VertexSet) -> Result<BoundOutcome> {
    if a.is_empty() || b.is_empty() {
        return Ok(BoundOutcome::Skipped {
            reason: "empty operand".to_string(),
        });
    }
    let (span, _) = min_coset_subspace(a)?;
    if span.dim() != a.m() {
        return Ok(BoundOutcome::Skipped {
            reason: format!(
                "A spans only a dim-{} coset of the {}-cube",
                span.dim(),
                a.m()
            ),
        });
    }
    let n = a.m() as i64;
    let s = sumset(a, b)?.len() as i64;
    let bound = (8 * (a.len() as i64 + b.len() as i64) - (1i64 << n))
        .min(6 * (1i64 << n));
    Ok(BoundOutcome::Checked {
        holds: 8 * s >= bound,
        sumset_size: s as u64,
        bound_eighths: bound,
    })
}
