//! Hypercube isoperimetry machinery: Hales order, initial segments, vertex
//! boundaries, Harper verification, and the boundary quantities behind the
//! equality theorem's counting argument.

use crate::error::{Error, Result};
use crate::gf2::{BitVector, CubeMask};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A vertex subset of the m-cube.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    m: usize,
    mask: CubeMask,
}

impl VertexSet {
    pub fn new(mask: CubeMask) -> Self {
        VertexSet {
            m: mask.n(),
            mask,
        }
    }

    pub fn from_indices(m: usize, indices: &[u64]) -> Result<Self> {
        Ok(VertexSet::new(CubeMask::from_indices(m, indices)?))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mask(&self) -> &CubeMask {
        &self.mask
    }

    pub fn len(&self) -> u64 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_zero()
    }
}

/// Hales order: by Hamming weight, then the smallest differing coordinate
/// belongs to the smaller set.
pub fn hales_less(x: &BitVector, y: &BitVector) -> Result<bool> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(
            "hales_less needs equal dimensions".to_string(),
        ));
    }
    Ok(hales_less_raw(x.bits(), y.bits()))
}

#[inline]
pub(crate) fn hales_less_raw(x: u64, y: u64) -> bool {
    let (wx, wy) = (x.count_ones(), y.count_ones());
    if wx != wy {
        return wx < wy;
    }
    let diff = x ^ y;
    diff != 0 && x >> diff.trailing_zeros() & 1 == 1
}

/// All 2^m vertices sorted in Hales order.
pub fn hales_order(m: usize) -> Result<Vec<u64>> {
    crate::gf2::check_cap(m)?;
    let mut v: Vec<u64> = (0..1u64 << m).collect();
    v.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if hales_less_raw(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Ok(v)
}

/// The first a vertices in Hales order.
pub fn initial_segment(m: usize, a: u64) -> Result<VertexSet> {
    if a > 1u64 << m {
        return Err(Error::Usage(format!(
            "segment size {a} exceeds the cube size 2^{m}"
        )));
    }
    let order = hales_order(m)?;
    let mut mask = CubeMask::zeros(m)?;
    for &x in &order[..a as usize] {
        mask.set(x);
    }
    Ok(VertexSet::new(mask))
}

/// Distance-1 neighborhood of the set (not including the set itself
/// unless a member has a member neighbor).
fn neighbors(a: &VertexSet) -> CubeMask {
    let mut out = CubeMask::zeros(a.m).expect("dimension already capped");
    for i in 0..a.m {
        out.or_assign(&a.mask.xor_shift(1 << i));
    }
    out
}

/// (Gamma A, Gamma' A): the closed neighborhood A union its distance-1
/// neighbors, and the outer boundary (neighbors of A outside A).
pub fn boundary(a: &VertexSet) -> (VertexSet, VertexSet) {
    let nb = neighbors(a);
    let gamma = a.mask.or(&nb);
    let gamma_prime = nb.and_not(&a.mask);
    (VertexSet::new(gamma), VertexSet::new(gamma_prime))
}

#[derive(Clone, Debug)]
pub struct HarperReport {
    pub m: usize,
    pub subsets_checked: u64,
    pub violations: u64,
    pub first_violation: Option<u64>,
}

/// Exhaustive Harper verification for m <= 4: every subset's closed
/// neighborhood is at least as large as the same-size initial segment's.
pub fn harper_check(m: usize) -> Result<HarperReport> {
    if m > 4 {
        return Err(Error::Usage(format!(
            "exhaustive Harper check is capped at m <= 4 (2^2^m subsets), got {m}"
        )));
    }
    let size = 1usize << m;
    // |Gamma I_a| per segment size
    let gamma_of_segment: Vec<u64> = (0..=size as u64)
        .map(|a| {
            let (g, _) = boundary(&initial_segment(m, a)?);
            Ok(g.len())
        })
        .collect::<Result<_>>()?;
    let mut violations = 0u64;
    let mut first = None;
    for sub in 0..1u64 << size {
        let members: Vec<u64> = (0..size as u64).filter(|&i| sub >> i & 1 == 1).collect();
        let set = VertexSet::from_indices(m, &members)?;
        let (g, _) = boundary(&set);
        if g.len() < gamma_of_segment[members.len()] {
            violations += 1;
            if first.is_none() {
                first = Some(sub);
            }
        }
    }
    Ok(HarperReport {
        m,
        subsets_checked: 1u64 << size,
        violations,
        first_violation: first,
    })
}

/// Random subset with word-level generation; density cycles through a
/// quarter, a half, and three quarters.
fn random_mask(rng: &mut StdRng, m: usize, flavor: u64) -> Result<CubeMask> {
    let mut mask = CubeMask::zeros(m)?;
    let words = mask.words().len();
    let mut out = Vec::with_capacity(words);
    for _ in 0..words {
        let a: u64 = rng.gen();
        let b: u64 = rng.gen();
        out.push(match flavor % 3 {
            0 => a,
            1 => a & b,
            _ => a | b,
        });
    }
    for (i, w) in out.into_iter().enumerate() {
        for b in 0..64u64 {
            let idx = (i as u64) << 6 | b;
            if idx < mask.size() && w >> b & 1 == 1 {
                mask.set(idx);
            }
        }
    }
    Ok(mask)
}

/// Sampled Harper verification for larger m.
pub fn harper_check_sampled(m: usize, samples: u64, seed: u64) -> Result<HarperReport> {
    crate::gf2::check_cap(m)?;
    let size = 1u64 << m;
    let gamma_of_segment: Vec<u64> = (0..=size)
        .map(|a| {
            let (g, _) = boundary(&initial_segment(m, a)?);
            Ok(g.len())
        })
        .collect::<Result<_>>()?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut violations = 0u64;
    let mut first = None;
    for i in 0..samples {
        let set = VertexSet::new(random_mask(&mut rng, m, i)?);
        let a = set.len();
        let (g, _) = boundary(&set);
        if g.len() < gamma_of_segment[a as usize] {
            violations += 1;
            if first.is_none() {
                first = Some(i);
            }
        }
    }
    Ok(HarperReport {
        m,
        subsets_checked: samples,
        violations,
        first_violation: first,
    })
}

#[derive(Clone, Debug)]
pub struct WindowReport {
    pub m: usize,
    pub k: usize,
    pub window: Option<(u64, u64)>,
    pub sets_checked: u64,
    pub violations: u64,
}

/// Check of the isoperimetric consequence used by the counting argument:
/// every subset A of the k-cube with V(m, floor((m-1)/2) - 2) <= |A| <=
/// 2^{k-1} has |Gamma' A| >= C(m, floor((m-1)/2) - 1). Exhaustive over all
/// subsets for k <= 4, sampled otherwise. An empty window reports zero
/// sets checked (a vacuous pass).
pub fn isoperim_final_check(
    m: usize,
    k: usize,
    sampled: Option<(u64, u64)>,
) -> Result<WindowReport> {
    crate::gf2::check_cap(k)?;
    let half = (m - 1) / 2;
    let lower = if half >= 2 {
        u64::try_from(crate::codes::ball_volume(m, half as u32 - 2))
            .map_err(|_| Error::Usage("window bound overflows".to_string()))?
    } else {
        0
    };
    let lower = lower.max(1);
    let upper = 1u64 << (k - 1);
    if lower > upper {
        return Ok(WindowReport {
            m,
            k,
            window: None,
            sets_checked: 0,
            violations: 0,
        });
    }
    let needed = if half >= 1 {
        u64::try_from(crate::codes::binomial(m as u64, half as u64 - 1))
            .map_err(|_| Error::Usage("bound overflows".to_string()))?
    } else {
        // floor((m-1)/2) - 1 < 0: the binomial is zero, trivially passed
        0
    };
    let mut checked = 0u64;
    let mut violations = 0u64;
    match sampled {
        None => {
            if k > 4 {
                return Err(Error::Usage(format!(
                    "exhaustive window check is capped at k <= 4, got {k}"
                )));
            }
            let size = 1usize << k;
            for sub in 0..1u64 << size {
                let count = sub.count_ones() as u64;
                if count < lower || count > upper {
                    continue;
                }
                let members: Vec<u64> =
                    (0..size as u64).filter(|&i| sub >> i & 1 == 1).collect();
                let set = VertexSet::from_indices(k, &members)?;
                let (_, gp) = boundary(&set);
                checked += 1;
                if gp.len() < needed {
                    violations += 1;
                }
            }
        }
        Some((samples, seed)) => {
            let mut rng = StdRng::seed_from_u64(seed);
            let size = 1u64 << k;
            while checked < samples {
                let target = rng.gen_range(lower..=upper.min(size));
                let mut mask = CubeMask::zeros(k)?;
                let mut have = 0u64;
                while have < target {
                    let x = rng.gen_range(0..size);
                    if !mask.get(x) {
                        mask.set(x);
                        have += 1;
                    }
                }
                let set = VertexSet::new(mask);
                let (_, gp) = boundary(&set);
                checked += 1;
                if gp.len() < needed {
                    violations += 1;
                }
            }
        }
    }
    Ok(WindowReport {
        m,
        k,
        window: Some((lower, upper)),
        sets_checked: checked,
        violations,
    })
}

/// |Gamma' I^m_a| for every a in 0..=2^m, by incremental segment growth.
pub fn segment_boundary_table(m: usize) -> Result<Vec<u64>> {
    let order = hales_order(m)?;
    let mut mask = CubeMask::zeros(m)?;
    let mut table = Vec::with_capacity((1usize << m) + 1);
    table.push(0u64);
    for &x in &order {
        mask.set(x);
        let set = VertexSet::new(mask.clone());
        let (_, gp) = boundary(&set);
        table.push(gp.len());
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct SegmentChecksReport {
    pub m_max: usize,
    pub ball_identity_ok: bool,
    pub monotone_size_ok: bool,
    pub monotone_dimension_ok: bool,
    pub bridging_radius_ok: bool,
    pub checks: u64,
}

/// Direct numeric verification of the three initial-segment boundary
/// lemmas for all dimensions up to m_max:
/// * |Gamma' I^m_{V(m,r)}| = C(m, r+1) (ball boundary identity);
/// * |Gamma' I^m_a| >= C(m, r+1) for V(m,r) <= a <= V(m, floor((m-1)/2));
/// * |Gamma' I^m_a| <= |Gamma' I^M_a| for m <= M, a <= 2^m;
/// * for every M there is an r bridging the (M-1)-window, i.e.
///   V(M-1, floor((M-2)/2) - 2) <= V(M, r) <= V(M-1, floor((M-2)/2)).
pub fn gamma_prime_segment_checks(m_max: usize) -> Result<SegmentChecksReport> {
    if m_max < 2 {
        return Err(Error::Usage("need m_max >= 2".to_string()));
    }
    let tables: Vec<Vec<u64>> = (0..=m_max)
        .map(|m| {
            if m == 0 {
                Ok(vec![0, 0])
            } else {
                segment_boundary_table(m)
            }
        })
        .collect::<Result<_>>()?;
    let vol = |m: usize, r: i64| -> u64 {
        if r < 0 {
            return 0;
        }
        u64::try_from(crate::codes::ball_volume(m, r as u32)).expect("m <= 24 fits")
    };
    let binom = |m: usize, r: i64| -> u64 {
        if r < 0 {
            return 0;
        }
        u64::try_from(crate::codes::binomial(m as u64, r as u64)).expect("m <= 24 fits")
    };

    let mut checks = 0u64;
    let mut ball_identity_ok = true;
    let mut monotone_size_ok = true;
    for (m, table) in tables.iter().enumerate().skip(1) {
        for r in 0..m as i64 {
            let a = vol(m, r);
            if table[a as usize] != binom(m, r + 1) {
                ball_identity_ok = false;
            }
            checks += 1;
            // monotone window above the ball
            let hi = vol(m, (m as i64 - 1) / 2);
            for a2 in a..=hi {
                if table[a2 as usize] < binom(m, r + 1) {
                    monotone_size_ok = false;
                }
                checks += 1;
            }
        }
    }

    let mut monotone_dimension_ok = true;
    for m in 1..=m_max {
        for big in m..=m_max {
            for a in 0..=1u64 << m {
                if tables[m][a as usize] > tables[big][a as usize] {
                    monotone_dimension_ok = false;
                }
                checks += 1;
            }
        }
    }

    let mut bridging_radius_ok = true;
    for big in 2..=m_max {
        let lo = vol(big - 1, (big as i64 - 2) / 2 - 2);
        let hi = vol(big - 1, (big as i64 - 2) / 2);
        let found = (0..=big as i64).any(|r| {
            let v = vol(big, r);
            lo <= v && v <= hi
        });
        if !found {
            bridging_radius_ok = false;
        }
        checks += 1;
    }

    Ok(SegmentChecksReport {
        m_max,
        ball_identity_ok,
        monotone_size_ok,
        monotone_dimension_ok,
        bridging_radius_ok,
        checks,
    })
}
