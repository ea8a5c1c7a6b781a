//! Covering codes and the code-to-protocol reduction: Hamming, first-order
//! Reed-Muller on 5 variables, repetition, direct sums, greedy covers,
//! radius verification, ball-volume arithmetic, and the ball protocols
//! separating one-way communication from parity queries on the f_k family.

use crate::boolfn::{MessageMap, PartialFn};
use crate::error::{Error, Result};
use crate::gf2::{dim_cap, BitVector, CubeMask, Gf2Matrix};
use crate::owcc::{ceil_log2, OneWayProtocol};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

/// A covering code: K codewords claimed to cover {0,1}^n with balls of
/// radius R. The claim is tracked separately from any verification result.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoveringCode {
    n: usize,
    codewords: Vec<BitVector>,
    radius: u32,
}

impl CoveringCode {
    pub fn new(n: usize, codewords: Vec<BitVector>, radius: u32) -> Result<Self> {
        if n > 64 {
            return Err(Error::Usage(format!("codeword length {n} exceeds 64")));
        }
        if codewords.is_empty() {
            return Err(Error::Usage("a covering code needs a codeword".to_string()));
        }
        for c in &codewords {
            if c.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "codeword of length {} in a length-{n} code",
                    c.n()
                )));
            }
        }
        Ok(CoveringCode {
            n,
            codewords,
            radius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn codewords(&self) -> &[BitVector] {
        &self.codewords
    }

    pub fn min_distance_to(&self, x: u64) -> u32 {
        self.codewords
            .iter()
            .map(|c| (c.bits() ^ x).count_ones())
            .min()
            .expect("nonempty")
    }

    /// Index of the first codeword within the claimed radius of x.
    pub fn assign(&self, x: u64) -> Option<usize> {
        self.codewords
            .iter()
            .position(|c| (c.bits() ^ x).count_ones() <= self.radius)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub covered_within_claim: bool,
    /// exact covering radius; only known in exhaustive mode
    pub exact_radius: Option<u32>,
    pub worst_distance_seen: u32,
    pub points_checked: u64,
}

/// Check that every (or each sampled) point lies within the claimed radius
/// of some codeword. Exhaustive mode also reports the exact covering
/// radius and requires n within the mask cap.
pub fn verify_covering(c: &CoveringCode, mode: VerifyMode) -> Result<CoverReport> {
    match mode {
        VerifyMode::Exhaustive => {
            if c.n > dim_cap() {
                return Err(Error::CapExceeded {
                    n: c.n,
                    cap: dim_cap(),
                });
            }
            let size = 1u64 << c.n;
            let chunk = 1u64 << c.n.min(16);
            let worst = (0..size.div_ceil(chunk))
                .into_par_iter()
                .map(|ci| {
                    (ci * chunk..((ci + 1) * chunk).min(size))
                        .map(|x| c.min_distance_to(x))
                        .max()
                        .unwrap_or(0)
                })
                .max()
                .unwrap_or(0);
            Ok(CoverReport {
                covered_within_claim: worst <= c.radius,
                exact_radius: Some(worst),
                worst_distance_seen: worst,
                points_checked: size,
            })
        }
        VerifyMode::Sampled { count, seed } => {
            let full = if c.n == 64 {
                u64::MAX
            } else {
                (1u64 << c.n) - 1
            };
            // independent per-块 rngs keep the scan order-free
            let chunk = 1u64 << 14;
            let chunks = count.div_ceil(chunk);
            let worst = (0..chunks)
                .into_par_iter()
                .map(|ci| {
                    let mut rng = StdRng::seed_from_u64(seed ^ (ci + 1).wrapping_mul(0x9e37_79b9));
                    let lo = ci * chunk;
                    let hi = ((ci + 1) * chunk).min(count);
                    (lo..hi)
                        .map(|_| c.min_distance_to(rng.gen::<u64>() & full))
                        .max()
                        .unwrap_or(0)
                })
                .max()
                .unwrap_or(0);
            Ok(CoverReport {
                covered_within_claim: worst <= c.radius,
                exact_radius: None,
                worst_distance_seen: worst,
                points_checked: count,
            })
        }
    }
}

/// Hamming code of order m: n = 2^m - 1, the kernel of the m x n check
/// matrix whose columns are 1..n in binary; a perfect radius-1 cover.
pub fn hamming_code(m: usize) -> Result<CoveringCode> {
    if !(2..=4).contains(&m) {
        return Err(Error::Usage(format!(
            "hamming_code supports 2 <= m <= 4 (exhaustively verifiable), got m={m}"
        )));
    }
    let n = (1 << m) - 1;
    // rows of the check matrix: row i has bit j set iff bit i of (j+1)
    let rows: Vec<u64> = (0..m)
        .map(|i| {
            let mut r = 0u64;
            for j in 0..n {
                if (j as u64 + 1) >> i & 1 == 1 {
                    r |= 1 << j;
                }
            }
            r
        })
        .collect();
    let check = Gf2Matrix::from_raw_rows(n, rows);
    let kernel = check.kernel_basis();
    let mut codewords: Vec<BitVector> = kernel
        .elements()
        .into_iter()
        .map(|b| BitVector::new(n, b).expect("kernel vectors fit"))
        .collect();
    codewords.sort_unstable();
    CoveringCode::new(n, codewords, 1)
}

/// All 2^n2 points as codewords: the trivial radius-0 cover used to pad a
/// code up to a target length.
pub fn full_cube_code(n2: usize) -> Result<CoveringCode> {
    if n2 == 0 || n2 > 20 {
        return Err(Error::Usage(format!(
            "full_cube_code supports 1 <= n2 <= 20, got {n2}"
        )));
    }
    let codewords = (0..1u64 << n2)
        .map(|b| BitVector::new(n2, b).expect("in range"))
        .collect();
    CoveringCode::new(n2, codewords, 0)
}

/// The two constant words; covering radius floor(n2/2).
pub fn repetition_code(n2: usize) -> Result<CoveringCode> {
    if n2 == 0 || n2 > 64 {
        return Err(Error::Usage(format!(
            "repetition_code supports 1 <= n2 <= 64, got {n2}"
        )));
    }
    let codewords = vec![BitVector::zero(n2), BitVector::ones(n2)];
    CoveringCode::new(n2, codewords, n2 as u32 / 2)
}

/// First-order Reed-Muller code on 5 variables: the 64 truth tables of
/// affine functions, as words of length 32; covering radius 12.
pub fn reed_muller_1_5() -> CoveringCode {
    let mut codewords = Vec::with_capacity(64);
    for a0 in 0..2u64 {
        for a in 0..32u64 {
            let mut word = 0u64;
            for p in 0..32u64 {
                let bit = a0 ^ ((a & p).count_ones() as u64 & 1);
                word |= bit << p;
            }
            codewords.push(BitVector::new(32, word).expect("32-bit word"));
        }
    }
    codewords.sort_unstable();
    codewords.dedup();
    debug_assert_eq!(codewords.len(), 64);
    CoveringCode::new(32, codewords, 12).expect("static parameters")
}

/// Distance from a 32-bit word to the RM(1,5) code via the Walsh
/// criterion: 16 - max |W(S)| / 2 over the transform of the +-1 table.
pub fn rm15_distance_by_walsh(g: u64) -> u32 {
    let mut a = [0i32; 32];
    for (p, slot) in a.iter_mut().enumerate() {
        *slot = if g >> p & 1 == 1 { -1 } else { 1 };
    }
    let mut half = 1;
    while half < 32 {
        let step = half * 2;
        let mut i = 0;
        while i < 32 {
            for j in i..i + half {
                let u = a[j];
                let v = a[j + half];
                a[j] = u + v;
                a[j + half] = u - v;
            }
            i += step;
        }
        half = step;
    }
    let max_abs = a.iter().map(|v| v.unsigned_abs()).max().unwrap();
    16 - max_abs / 2
}

/// Sampled certification of the RM(1,5) covering radius: random words,
/// each checked against the claim both by direct scan over the 64
/// codewords and by the Walsh formula; the two must agree.
pub fn rm15_sampled_radius_check(samples: u64, seed: u64) -> Result<CoverReport> {
    let code = reed_muller_1_5();
    let chunk = 1u64 << 14;
    let chunks = samples.div_ceil(chunk);
    let worst = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = StdRng::seed_from_u64(seed ^ (ci + 1).wrapping_mul(0x9e37_79b9));
            let lo = ci * chunk;
            let hi = ((ci + 1) * chunk).min(samples);
            let mut worst = 0u32;
            for _ in lo..hi {
                let g = rng.gen::<u64>() & 0xffff_ffff;
                let direct = code.min_distance_to(g);
                let walsh = rm15_distance_by_walsh(g);
                assert_eq!(direct, walsh, "distance computed two ways for {g:#x}");
                worst = worst.max(direct);
            }
            worst
        })
        .max()
        .unwrap_or(0);
    Ok(CoverReport {
        covered_within_claim: worst <= 12,
        exact_radius: None,
        worst_distance_seen: worst,
        points_checked: samples,
    })
}

/// Exhaustive Walsh sweep over all 2^32 Boolean functions of 5 variables;
/// the maximum distance to the code is its exact covering radius (expected
/// value: 12). Multi-hour single-threaded; progress is reported once per
/// 2^24 functions.
pub fn rm15_walsh_certificate_exhaustive(mut progress: impl FnMut(u64, u32)) -> u32 {
    let mut radius = 0u32;
    for hi in 0..1u64 << 8 {
        let chunk_max = (0..1u64 << 24)
            .into_par_iter()
            .map(|lo| rm15_distance_by_walsh(hi << 24 | lo))
            .max()
            .unwrap_or(0);
        radius = radius.max(chunk_max);
        progress((hi + 1) << 24, radius);
    }
    radius
}

/// Concatenation of codes: parameters (n1+n2, K1*K2, R1+R2). The first
/// operand occupies the low coordinates.
pub fn direct_sum(c1: &CoveringCode, c2: &CoveringCode) -> Result<CoveringCode> {
    let n = c1.n + c2.n;
    if n > 64 {
        return Err(Error::Usage(format!(
            "direct sum length {n} exceeds 64"
        )));
    }
    let mut codewords = Vec::with_capacity(c1.len() * c2.len());
    for w1 in &c1.codewords {
        for w2 in &c2.codewords {
            let bits = w1.bits() | w2.bits() << c1.n;
            codewords.push(BitVector::new(n, bits)?);
        }
    }
    CoveringCode::new(n, codewords, c1.radius + c2.radius)
}

/// Greedy set cover: repeatedly take the point covering the most uncovered
/// points, ties to the smallest index. The result is a verified cover and
/// is checked against the standard upper bound log2 K <= n - log2 V(n,R) +
/// log2 n (in exact integer form K * V <= n * 2^n); a miss is reported as
/// an error rather than silenced.
pub fn greedy_covering(n: usize, r: u32) -> Result<CoveringCode> {
    if n == 0 || n > 16 {
        return Err(Error::Usage(format!(
            "greedy_covering supports 1 <= n <= 16, got {n}"
        )));
    }
    let size = 1u64 << n;
    let ball = CubeMask::from_fn(n, |x| x.count_ones() <= r)?;
    let mut uncovered = CubeMask::full(n)?;
    let mut codewords: Vec<BitVector> = Vec::new();
    while !uncovered.is_zero() {
        let best = (0..size)
            .into_par_iter()
            .map(|p| {
                let covered = ball.xor_shift(p).and(&uncovered).count_ones();
                (covered, std::cmp::Reverse(p))
            })
            .max()
            .map(|(_, std::cmp::Reverse(p))| p)
            .expect("nonempty cube");
        let gain = ball.xor_shift(best).and(&uncovered).count_ones();
        debug_assert!(gain > 0);
        codewords.push(BitVector::new(n, best)?);
        let covered = ball.xor_shift(best);
        uncovered = uncovered.and_not(&covered);
    }
    let code = CoveringCode::new(n, codewords, r)?;
    // exact-arithmetic form of the covering bound
    let k = BigUint::from(code.len());
    let v = ball_volume(n, r);
    let bound = BigUint::from(n) << n;
    if k.clone() * v > bound {
        return Err(Error::Invariant(format!(
            "greedy cover for (n={n}, R={r}) has K={} exceeding n 2^n / V(n,R)",
            code.len()
        )));
    }
    Ok(code)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut r = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Volume of the Hamming ball V(n, r) = sum of C(n, i) for i <= r.
pub fn ball_volume(n: usize, r: u32) -> BigUint {
    (0..=r.min(n as u32) as u64)
        .map(|i| binomial(n as u64, i))
        .sum()
}

/// Lazy form of the covering-code protocol for f_k: Alice sends the index
/// of the ball holding x, Bob answers 1 exactly when the negation of y
/// falls in the same ball. Evaluable at any n <= 64 without materializing
/// the 2^n message table.
#[derive(Clone, Debug)]
pub struct BallProtocol {
    n: usize,
    k: usize,
    code: CoveringCode,
}

impl BallProtocol {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn code(&self) -> &CoveringCode {
        &self.code
    }

    /// Message width in bits.
    pub fn width(&self) -> usize {
        ceil_log2(self.code.len())
    }

    pub fn message(&self, x: u64) -> Option<usize> {
        self.code.assign(x)
    }

    pub fn answer(&self, alpha: usize, y: u64) -> Option<bool> {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.code.assign(!y & full).map(|ball| ball == alpha)
    }

    /// Materialize as an explicit protocol object (n within the mask cap).
    pub fn materialize(&self) -> Result<OneWayProtocol> {
        let n = self.n;
        let t = self.width();
        let labels: Result<Vec<u32>> = (0..1u64 << n)
            .map(|x| {
                self.message(x)
                    .map(|m| m as u32)
                    .ok_or_else(|| Error::Precondition(format!("point {x} is uncovered")))
            })
            .collect();
        let h = MessageMap::new(n, t, labels?)?;
        let mut phi = Vec::with_capacity(1 << t);
        for alpha in 0..1usize << t {
            let mut value = CubeMask::zeros(n)?;
            for y in 0..1u64 << n {
                if self.answer(alpha, y) == Some(true) {
                    value.set(y);
                }
            }
            phi.push(PartialFn::new(n, CubeMask::full(n)?, value)?);
        }
        OneWayProtocol::new(h, phi)
    }

    /// Property-based verification: `samples` pairs (x, y) with
    /// x XOR y in Dom(f_k), mixing the all-ones point (the 1-input) with
    /// uniform low-weight differences. Returns the failure count.
    pub fn verify_sampled(&self, samples: u64, seed: u64) -> u64 {
        let n = self.n;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let chunk = 1u64 << 12;
        let chunks = samples.div_ceil(chunk);
        (0..chunks)
            .into_par_iter()
            .map(|ci| {
                let mut rng = StdRng::seed_from_u64(seed ^ (ci + 1).wrapping_mul(0x9e37_79b9));
                let lo = ci * chunk;
                let hi = ((ci + 1) * chunk).min(samples);
                let mut failures = 0u64;
                for _ in lo..hi {
                    let z = if rng.gen_bool(0.5) {
                        full // the all-ones input, f = 1
                    } else {
                        // uniform weight in 0..=k, then uniform support
                        let w = rng.gen_range(0..=self.k);
                        let mut z = 0u64;
                        while z.count_ones() < w as u32 {
                            z |= 1 << rng.gen_range(0..n);
                        }
                        z
                    };
                    let expect = z == full;
                    let x = rng.gen::<u64>() & full;
                    let y = x ^ z;
                    let ok = match self.message(x) {
                        None => false,
                        Some(alpha) => self.answer(alpha, y) == Some(expect),
                    };
                    if !ok {
                        failures += 1;
                    }
                }
                failures
            })
            .sum()
    }
}

/// Protocol for f_k from a covering code of radius at most
/// floor((n-k-1)/2): balls have diameter at most n-k-1, so they cannot
/// hold both a low-weight difference and the all-ones difference.
pub fn fk_protocol_from_code(n: usize, k: usize, code: &CoveringCode) -> Result<BallProtocol> {
    if code.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "code length {} differs from n={n}",
            code.n()
        )));
    }
    if n == 0 || k > n - 1 {
        return Err(Error::Usage(format!("need 0 <= k <= n-1, got n={n} k={k}")));
    }
    let max_radius = (n - k - 1) as u32 / 2;
    if code.radius() > max_radius {
        return Err(Error::Precondition(format!(
            "code radius {} exceeds floor((n-k-1)/2) = {max_radius}",
            code.radius()
        )));
    }
    Ok(BallProtocol {
        n,
        k,
        code: code.clone(),
    })
}

/// One row of the volume-bound report.
#[derive(Clone, Debug)]
pub struct RatioRow {
    pub label: String,
    pub n: usize,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct VolumeBoundReport {
    /// (n, k) pairs checked exactly against (n/k)^k <= V <= (en/k)^k
    pub two_sided_checked: u64,
    pub two_sided_ok: bool,
    pub rows: Vec<RatioRow>,
}

/// Numeric verification of the ball-volume estimates. The two-sided bound
/// is checked in exact integer arithmetic for every k <= n <= n_max; e is
/// replaced by the rational lower bound 2718281828/10^9, which only makes
/// the asserted inequality stronger. The entropy-scaling facts are
/// reported as bounded ratios, not asserted.
pub fn volume_bound_checks(n_max: usize) -> VolumeBoundReport {
    let n_max = n_max.min(64);
    let e_num = BigUint::from(2_718_281_828u64);
    let e_den = BigUint::from(1_000_000_000u64);
    let mut checked = 0u64;
    let mut ok = true;
    for n in 1..=n_max as u64 {
        for k in 0..=n {
            let v = ball_volume(n as usize, k as u32);
            if k == 0 {
                // both bounds degenerate to 1
                ok &= v >= BigUint::from(1u32);
                checked += 1;
                continue;
            }
            // (n/k)^k <= V  <=>  n^k <= V * k^k
            let lhs = BigUint::from(n).pow(k as u32);
            let rhs = v.clone() * BigUint::from(k).pow(k as u32);
            if lhs > rhs {
                ok = false;
            }
            // V <= (en/k)^k  <==  V * (k * 10^9)^k <= (2718281828 * n)^k
            let lhs2 = v * (BigUint::from(k) * e_den.clone()).pow(k as u32);
            let rhs2 = (e_num.clone() * BigUint::from(n)).pow(k as u32);
            if lhs2 > rhs2 {
                ok = false;
            }
            checked += 1;
        }
    }

    let mut rows = Vec::new();
    for n in (16..=n_max.max(16)).step_by(8) {
        // binomial scaling: C(n, n/4) * sqrt(n) / 2^{H(1/4) n}
        let c = binomial(n as u64, n as u64 / 4);
        let h14 = entropy(0.25);
        let ratio = big_to_f64(&c) * (n as f64).sqrt() / 2f64.powf(h14 * n as f64);
        rows.push(RatioRow {
            label: "binom_c25_sqrtn_ratio".to_string(),
            n,
            value: ratio,
        });
        // half-ball scaling: 2^n over V(n, n/2 - sqrt(n log2 n)), reported
        // as a log-base-n exponent (the poly(n) degree)
        let shift = ((n as f64) * (n as f64).log2()).sqrt().round() as u32;
        let r = (n as u32 / 2).saturating_sub(shift);
        let v = ball_volume(n, r);
        let poly = 2f64.powi(n as i32) / big_to_f64(&v);
        rows.push(RatioRow {
            label: "halfball_poly_degree".to_string(),
            n,
            value: poly.log2() / (n as f64).log2(),
        });
        // entropy modulus: |H(c + 1/sqrt(n)) - H(c)| * sqrt(n) at c = 1/4
        let alpha = 1.0 / (n as f64).sqrt();
        rows.push(RatioRow {
            label: "entropy_modulus_c25".to_string(),
            n,
            value: (entropy(0.25 + alpha) - entropy(0.25)).abs() / alpha,
        });
    }
    VolumeBoundReport {
        two_sided_checked: checked,
        two_sided_ok: ok,
        rows,
    }
}

pub fn entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

fn big_to_f64(v: &BigUint) -> f64 {
    v.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::make_fk;
    use crate::owcc::verify_oneway;

    #[test]
    fn hamming_parameters() {
        let c = hamming_code(3).unwrap();
        assert_eq!((c.n(), c.len(), c.radius()), (7, 16, 1));
        let c = hamming_code(2).unwrap();
        assert_eq!((c.n(), c.len(), c.radius()), (3, 2, 1));
        let words: Vec<u64> = c.codewords().iter().map(|w| w.bits()).collect();
        assert_eq!(words, vec![0b000, 0b111]);
        let c = hamming_code(4).unwrap();
        assert_eq!((c.n(), c.len(), c.radius()), (15, 2048, 1));
        assert!(hamming_code(5).is_err());
    }

    #[test]
    fn hamming_perfect_partition() {
        // balls of radius 1 are disjoint and their volumes fill the cube
        for m in 2..=4usize {
            let c = hamming_code(m).unwrap();
            let report = verify_covering(&c, VerifyMode::Exhaustive).unwrap();
            assert_eq!(report.exact_radius, Some(1));
            let mut seen = CubeMask::zeros(c.n()).unwrap();
            for w in c.codewords() {
                let ball = CubeMask::from_fn(c.n(), |x| {
                    (x ^ w.bits()).count_ones() <= 1
                })
                .unwrap();
                assert!(!ball.intersects(&seen), "balls overlap for m={m}");
                seen.or_assign(&ball);
            }
            assert_eq!(seen.count_ones(), 1u64 << c.n());
        }
    }

    #[test]
    fn repetition_examples() {
        for (n2, want) in [(2usize, 1u32), (5, 2), (1, 0)] {
            let c = repetition_code(n2).unwrap();
            assert_eq!((c.n(), c.len(), c.radius()), (n2, 2, want));
        }
        let r = verify_covering(&repetition_code(5).unwrap(), VerifyMode::Exhaustive).unwrap();
        assert_eq!(r.exact_radius, Some(2));
    }

    #[test]
    fn whole_cube_radius_zero() {
        let c = full_cube_code(4).unwrap();
        let r = verify_covering(&c, VerifyMode::Exhaustive).unwrap();
        assert_eq!(r.exact_radius, Some(0));
        assert!(r.covered_within_claim);
    }

    #[test]
    fn rm15_parameters_and_sampling() {
        let c = reed_muller_1_5();
        assert_eq!((c.n(), c.len(), c.radius()), (32, 64, 12));
        // distance from a codeword to the code is zero, both ways
        for w in c.codewords().iter().take(8) {
            assert_eq!(c.min_distance_to(w.bits()), 0);
            assert_eq!(rm15_distance_by_walsh(w.bits()), 0);
        }
        let report = rm15_sampled_radius_check(20_000, 7).unwrap();
        assert!(report.covered_within_claim);
        // the bent-like region is reachable: some word at distance 12
        // exists among quadratics; check one: x1x2 + x3x4 truth table
        let mut g = 0u64;
        for p in 0..32u64 {
            let b = (p & 1) & (p >> 1 & 1) ^ (p >> 2 & 1) & (p >> 3 & 1);
            g |= b << p;
        }
        assert_eq!(c.min_distance_to(g), rm15_distance_by_walsh(g));
    }

    #[test]
    fn direct_sum_parameters() {
        let h3 = hamming_code(3).unwrap();
        let cube2 = full_cube_code(2).unwrap();
        let s = direct_sum(&h3, &cube2).unwrap();
        assert_eq!((s.n(), s.len(), s.radius()), (9, 64, 1));

        let rm = reed_muller_1_5();
        let rep4 = repetition_code(4).unwrap();
        let s = direct_sum(&rm, &rep4).unwrap();
        assert_eq!((s.n(), s.len(), s.radius()), (36, 128, 14));
    }

    #[test]
    fn direct_sum_radius_exactly_additive() {
        // on operands whose exact radius equals the claim, the sum's exact
        // radius is the sum of radii
        let cases: Vec<(CoveringCode, CoveringCode)> = vec![
            (hamming_code(2).unwrap(), hamming_code(2).unwrap()),
            (hamming_code(3).unwrap(), repetition_code(4).unwrap()),
            (repetition_code(3).unwrap(), repetition_code(5).unwrap()),
            (hamming_code(2).unwrap(), full_cube_code(3).unwrap()),
        ];
        for (a, b) in cases {
            let ra = verify_covering(&a, VerifyMode::Exhaustive)
                .unwrap()
                .exact_radius
                .unwrap();
            let rb = verify_covering(&b, VerifyMode::Exhaustive)
                .unwrap()
                .exact_radius
                .unwrap();
            assert_eq!(ra, a.radius());
            assert_eq!(rb, b.radius());
            let s = direct_sum(&a, &b).unwrap();
            let rs = verify_covering(&s, VerifyMode::Exhaustive)
                .unwrap()
                .exact_radius
                .unwrap();
            assert_eq!(rs, ra + rb, "sum of ({},{})", a.n(), b.n());
        }
    }

    #[test]
    fn greedy_cover_examples() {
        // R = n: a single codeword suffices
        let c = greedy_covering(5, 5).unwrap();
        assert_eq!(c.len(), 1);

        // (4,1): verified cover within the bound K <= 12
        let c = greedy_covering(4, 1).unwrap();
        assert!(verify_covering(&c, VerifyMode::Exhaustive).unwrap().covered_within_claim);
        assert!(c.len() <= 12, "K = {}", c.len());

        // (7,1): the sphere-covering lower bound forces K >= 16
        let c = greedy_covering(7, 1).unwrap();
        assert!(c.len() >= 16);
        assert!(verify_covering(&c, VerifyMode::Exhaustive).unwrap().covered_within_claim);
    }

    #[test]
    fn covering_lower_bound_on_all_builders() {
        // log2 K >= n - log2 V(n,R), i.e. K * V >= 2^n
        let codes = vec![
            hamming_code(2).unwrap(),
            hamming_code(3).unwrap(),
            hamming_code(4).unwrap(),
            repetition_code(6).unwrap(),
            full_cube_code(3).unwrap(),
            greedy_covering(6, 1).unwrap(),
            greedy_covering(8, 2).unwrap(),
            direct_sum(&hamming_code(3).unwrap(), &full_cube_code(2).unwrap()).unwrap(),
        ];
        for c in codes {
            let k = BigUint::from(c.len());
            let v = ball_volume(c.n(), c.radius());
            assert!(
                k * v >= (BigUint::from(1u32) << c.n()),
                "lower bound fails for n={} K={} R={}",
                c.n(),
                c.len(),
                c.radius()
            );
        }
    }

    #[test]
    fn ball_volume_examples() {
        assert_eq!(ball_volume(9, 0), BigUint::from(1u32));
        assert_eq!(ball_volume(7, 1), BigUint::from(8u32));
        assert_eq!(ball_volume(10, 10), BigUint::from(1024u32));
        assert_eq!(ball_volume(10, 3), BigUint::from(1u32 + 10 + 45 + 120));
    }

    #[test]
    fn volume_bounds_exact_to_64() {
        let report = volume_bound_checks(64);
        assert!(report.two_sided_ok);
        assert_eq!(report.two_sided_checked, (1..=64u64).map(|n| n + 1).sum::<u64>());
        // V(64,32)/2^63 lands between 0.5 and 1.1
        let v = ball_volume(64, 32);
        let ratio = big_to_f64(&v) / 2f64.powi(63);
        assert!(ratio > 0.5 && ratio < 1.1, "ratio = {ratio}");
        // reported rows exist and are finite
        assert!(report.rows.iter().all(|r| r.value.is_finite()));
    }

    #[test]
    fn fk_protocol_n7_k4_hamming() {
        let code = hamming_code(3).unwrap();
        let p = fk_protocol_from_code(7, 4, &code).unwrap();
        assert_eq!(p.width(), 4);
        let proto = p.materialize().unwrap();
        let f = make_fk(7, 4).unwrap();
        assert!(verify_oneway(&f, &proto).unwrap());
    }

    #[test]
    fn fk_protocol_boundary_whole_cube() {
        // n=3, k=2 requires R = 0: the whole cube, message width n
        let c = full_cube_code(3).unwrap();
        let p = fk_protocol_from_code(3, 2, &c).unwrap();
        assert_eq!(p.width(), 3);
        let proto = p.materialize().unwrap();
        let f = make_fk(3, 2).unwrap();
        assert!(verify_oneway(&f, &proto).unwrap());
    }

    #[test]
    fn fk_protocol_radius_precondition() {
        // radius too large for k is rejected
        let c = repetition_code(7).unwrap(); // radius 3
        assert!(fk_protocol_from_code(7, 4, &c).is_err());
        // inflating the claimed radius past the bound is also rejected
        let h = hamming_code(3).unwrap();
        let inflated = CoveringCode::new(7, h.codewords().to_vec(), 2).unwrap();
        assert!(fk_protocol_from_code(7, 4, &inflated).is_err());
    }

    #[test]
    fn fk_protocol_bad_cover_fails_verification() {
        // a "code" that does not actually cover: claimed radius 1 with
        // only two codewords in n=7
        let bad = CoveringCode::new(
            7,
            vec![BitVector::zero(7), BitVector::ones(7)],
            1,
        )
        .unwrap();
        let p = fk_protocol_from_code(7, 4, &bad).unwrap();
        assert!(p.materialize().is_err());
        assert!(p.verify_sampled(2_000, 5) > 0);
    }

    #[test]
    fn fk_protocol_n36_sampled() {
        let code = direct_sum(&reed_muller_1_5(), &repetition_code(4).unwrap()).unwrap();
        assert_eq!(code.radius(), 14);
        assert_eq!((36 - 7 - 1) / 2, 14);
        let p = fk_protocol_from_code(36, 7, &code).unwrap();
        assert_eq!(p.width(), 7);
        assert_eq!(p.verify_sampled(20_000, 11), 0);
    }

    #[test]
    fn fk_protocol_n32_width_six() {
        // at exactly n=32 the Reed-Muller code alone gives width 6, one
        // bit under the padded construction
        let code = reed_muller_1_5();
        assert_eq!((32 - 7 - 1) / 2, 12);
        let p = fk_protocol_from_code(32, 7, &code).unwrap();
        assert_eq!(p.width(), 6);
        assert_eq!(p.verify_sampled(20_000, 13), 0);
    }
}
