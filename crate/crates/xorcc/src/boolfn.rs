//! Partial Boolean functions as dual bitmasks, the f_k family, message maps,
//! and exact Walsh-Hadamard analysis of total functions.

use crate::error::{Error, Result};
use crate::gf2::{CubeMask, Gf2Matrix, Gf2Subspace};

/// A partial function f: {0,1}^n -> {0,1,undefined} stored as two masks.
/// `value` is zero wherever `defined` is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFn {
    n: usize,
    defined: CubeMask,
    value: CubeMask,
}

impl PartialFn {
    pub fn new(n: usize, defined: CubeMask, value: CubeMask) -> Result<Self> {
        if defined.n() != n || value.n() != n {
            return Err(Error::DimensionMismatch(
                "function masks must share the declared dimension".to_string(),
            ));
        }
        if !value.subset_of(&defined) {
            return Err(Error::Precondition(
                "value mask has bits outside the defined mask".to_string(),
            ));
        }
        Ok(PartialFn { n, defined, value })
    }

    pub fn total(value: CubeMask) -> Self {
        let n = value.n();
        PartialFn {
            n,
            defined: CubeMask::full(n).expect("dimension already capped"),
            value,
        }
    }

    pub fn constant(n: usize, bit: bool) -> Result<Self> {
        let defined = CubeMask::full(n)?;
        let value = if bit {
            CubeMask::full(n)?
        } else {
            CubeMask::zeros(n)?
        };
        Ok(PartialFn { n, defined, value })
    }

    /// Function with empty domain; every complexity measure treats it as
    /// computable with zero queries or bits.
    pub fn empty_domain(n: usize) -> Result<Self> {
        Ok(PartialFn {
            n,
            defined: CubeMask::zeros(n)?,
            value: CubeMask::zeros(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn defined(&self) -> &CubeMask {
        &self.defined
    }

    pub fn value(&self) -> &CubeMask {
        &self.value
    }

    pub fn is_defined(&self, x: u64) -> bool {
        self.defined.get(x)
    }

    pub fn eval(&self, x: u64) -> Option<bool> {
        if self.defined.get(x) {
            Some(self.value.get(x))
        } else {
            None
        }
    }

    pub fn domain_size(&self) -> u64 {
        self.defined.count_ones()
    }

    pub fn undefined_count(&self) -> u64 {
        (1u64 << self.n) - self.domain_size()
    }

    /// Erase the given point from the domain.
    pub fn erase(&mut self, x: u64) {
        self.defined.clear(x);
        self.value.clear(x);
    }
}

/// f_k: 0 on weights <= k, undefined on weights k+1 .. n-1, 1 on the
/// all-ones input.
pub fn make_fk(n: usize, k: usize) -> Result<PartialFn> {
    if n == 0 || k > n - 1 {
        return Err(Error::Usage(format!(
            "make_fk requires 0 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let mut defined = CubeMask::zeros(n)?;
    let mut value = CubeMask::zeros(n)?;
    for x in 0..(1u64 << n) {
        let w = x.count_ones() as usize;
        if w <= k {
            defined.set(x);
        } else if w == n {
            defined.set(x);
            value.set(x);
        }
    }
    PartialFn::new(n, defined, value)
}

pub fn undefined_count(f: &PartialFn) -> u64 {
    f.undefined_count()
}

/// Alice's message map h: {0,1}^n -> {0,1}^t, stored as one label per point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MessageMap {
    n: usize,
    t: usize,
    labels: Vec<u32>,
}

impl MessageMap {
    pub fn new(n: usize, t: usize, labels: Vec<u32>) -> Result<Self> {
        crate::gf2::check_cap(n)?;
        if t > 32 {
            return Err(Error::Usage(format!("message width {t} exceeds 32")));
        }
        if labels.len() as u64 != 1u64 << n {
            return Err(Error::DimensionMismatch(format!(
                "message map needs 2^{n} labels, got {}",
                labels.len()
            )));
        }
        if t < 32 {
            if let Some(x) = labels.iter().position(|&l| l >= 1 << t) {
                return Err(Error::Usage(format!(
                    "label {} at point {x} does not fit in {t} bits",
                    labels[x]
                )));
            }
        }
        Ok(MessageMap { n, t, labels })
    }

    pub fn from_fn(n: usize, t: usize, f: impl FnMut(u64) -> u32) -> Result<Self> {
        crate::gf2::check_cap(n)?;
        let labels = (0..1u64 << n).map(f).collect();
        MessageMap::new(n, t, labels)
    }

    /// Canonical coset labeling of a subspace: the message of x is the
    /// syndrome of x under the parity check matrix of L, so fibers are
    /// exactly the cosets of L.
    pub fn from_subspace_cosets(l: &Gf2Subspace) -> Result<Self> {
        let s = crate::gf2::parity_check_matrix(l);
        let t = s.nrows();
        MessageMap::from_fn(l.n(), t, |x| s.mul_raw(x) as u32)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn label(&self, x: u64) -> u32 {
        self.labels[x as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Mask of the fiber h^{-1}(a).
    pub fn fiber_mask(&self, a: u32) -> CubeMask {
        let mut m = CubeMask::zeros(self.n).expect("dimension already capped");
        for (x, &l) in self.labels.iter().enumerate() {
            if l == a {
                m.set(x as u64);
            }
        }
        m
    }

    /// Count of points with h(x) = 0 over a restriction mask.
    pub fn count_label_on(&self, a: u32, on: &CubeMask) -> u64 {
        on.ones().filter(|&x| self.labels[x as usize] == a).count() as u64
    }
}

/// Exact Fourier coefficients of (-1)^h in the parity basis; coefficient
/// for the set S is numerator(S) / 2^n.
#[derive(Clone, Debug)]
pub struct WalshSpectrum {
    n: usize,
    numer: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Numerator of the coefficient for S; the denominator is 2^n.
    pub fn numerator(&self, s: u64) -> i64 {
        self.numer[s as usize]
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numer
    }

    /// Parseval identity for a total +-1 source, in exact arithmetic:
    /// the squared numerators must sum to 4^n.
    pub fn parseval_holds(&self) -> bool {
        let sum: i128 = self.numer.iter().map(|&v| (v as i128) * (v as i128)).sum();
        sum == 1i128 << (2 * self.n)
    }
}

/// Walsh-Hadamard transform of a total Boolean function given as its
/// truth-table mask; O(n 2^n).
pub fn walsh_spectrum(n: usize, h: &CubeMask) -> Result<WalshSpectrum> {
    if h.n() != n {
        return Err(Error::DimensionMismatch(
            "truth table dimension mismatch".to_string(),
        ));
    }
    let size = 1usize << n;
    let mut a: Vec<i64> = (0..size)
        .map(|x| if h.get(x as u64) { -1 } else { 1 })
        .collect();
    let mut half = 1;
    while half < size {
        let step = half * 2;
        let mut i = 0;
        while i < size {
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
    Ok(WalshSpectrum { n, numer: a })
}

/// For a balanced non-constant h, an (n-1)-dimensional subspace on which h
/// is unbalanced: the kernel of the smallest nonzero S with a nonzero
/// Fourier coefficient. The unbalance is verified before returning.
pub fn unbalanced_subspace(n: usize, h: &CubeMask) -> Result<Gf2Subspace> {
    let ones = h.count_ones();
    if ones != 1u64 << (n - 1) {
        return Err(Error::Precondition(format!(
            "h must be balanced: {} ones out of {}",
            ones,
            1u64 << n
        )));
    }
    let spec = walsh_spectrum(n, h)?;
    let s = (1..1u64 << n)
        .find(|&s| spec.numerator(s) != 0)
        .ok_or_else(|| Error::Precondition("h must not be constant".to_string()))?;
    let x = Gf2Matrix::from_raw_rows(n, vec![s]).kernel_basis();
    let mask = x.span_mask()?;
    let on_subspace = h.and(&mask).count_ones();
    let half = mask.count_ones() / 2;
    if on_subspace == half {
        return Err(Error::Invariant(format!(
            "nonzero coefficient at S={s} but h balanced on its kernel"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fk_examples() {
        // n=3, k=1: defined on weights {0,1,3}; undefined count V(3,1)-1 = 3
        let f = make_fk(3, 1).unwrap();
        assert_eq!(f.domain_size(), 5);
        assert_eq!(f.undefined_count(), 3);
        assert_eq!(f.eval(0), Some(false));
        assert_eq!(f.eval(0b111), Some(true));
        assert_eq!(f.eval(0b011), None);
        // n=7, k=4: undefined count n(n+1)/2 = 28 for f_{n-3}
        assert_eq!(make_fk(7, 4).unwrap().undefined_count(), 28);
        // k = n-1 boundary: total function
        assert_eq!(make_fk(2, 1).unwrap().undefined_count(), 0);
        assert!(make_fk(3, 3).is_err());
    }

    #[test]
    fn fk_one_and_zero_counts() {
        for n in 1..=10usize {
            for k in 0..n {
                let f = make_fk(n, k).unwrap();
                assert_eq!(f.value().count_ones(), 1, "exactly one 1-input");
                let zeros = f.defined().count_ones() - 1;
                let v: u64 = (0..=k as u64).map(|i| binom_u64(n as u64, i)).sum();
                assert_eq!(zeros, v, "V(n,k) zero-inputs");
            }
        }
    }

    fn binom_u64(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut r = 1u64;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn undefined_count_examples() {
        assert_eq!(PartialFn::constant(4, true).unwrap().undefined_count(), 0);
        assert_eq!(PartialFn::empty_domain(4).unwrap().undefined_count(), 16);
    }

    #[test]
    fn walsh_trivial_cases() {
        let n = 4;
        let zero = CubeMask::zeros(n).unwrap();
        let s = walsh_spectrum(n, &zero).unwrap();
        assert_eq!(s.numerator(0), 1 << n);
        assert!((1..1u64 << n).all(|i| s.numerator(i) == 0));

        // h(x) = x_1: pure parity on S = {1}
        let h = CubeMask::from_fn(n, |x| x & 1 == 1).unwrap();
        let s = walsh_spectrum(n, &h).unwrap();
        assert_eq!(s.numerator(1), 1 << n);
        assert!((0..1u64 << n).all(|i| i == 1 || s.numerator(i) == 0));
    }

    /// Direct-summation oracle for one coefficient.
    fn walsh_direct(n: usize, h: &CubeMask, s: u64) -> i64 {
        (0..1u64 << n)
            .map(|x| {
                let sign_h = if h.get(x) { -1i64 } else { 1 };
                let chi = if (s & x).count_ones() % 2 == 1 { -1 } else { 1 };
                sign_h * chi
            })
            .sum()
    }

    #[test]
    fn walsh_matches_direct_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.gen_range(1..=8usize);
            let h = CubeMask::from_fn(n, |_| rng.gen_bool(0.5)).unwrap();
            let spec = walsh_spectrum(n, &h).unwrap();
            for s in 0..1u64 << n {
                assert_eq!(spec.numerator(s), walsh_direct(n, &h, s));
            }
            assert!(spec.parseval_holds());
        }
    }

    #[test]
    fn unbalanced_subspace_examples() {
        // h(x) = x_1 -> X = {x : x_1 = 0}, h restricted to X is constant 0
        let n = 4;
        let h = CubeMask::from_fn(n, |x| x & 1 == 1).unwrap();
        let x = unbalanced_subspace(n, &h).unwrap();
        assert_eq!(x.dim(), n - 1);
        let mask = x.span_mask().unwrap();
        assert!(mask.ones().all(|p| p & 1 == 0));
        assert_eq!(h.and(&mask).count_ones(), 0);

        // h(x) = x_1 XOR x_2
        let h = CubeMask::from_fn(n, |x| (x & 1) ^ (x >> 1 & 1) == 1).unwrap();
        let x = unbalanced_subspace(n, &h).unwrap();
        let mask = x.span_mask().unwrap();
        assert_eq!(h.and(&mask).count_ones(), 0);

        // unbalanced h rejected
        let h = CubeMask::from_fn(n, |x| x == 0).unwrap();
        assert!(unbalanced_subspace(n, &h).is_err());
    }

    #[test]
    fn unbalanced_subspace_postcondition_random() {
        use rand::rngs::StdRng;
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = StdRng::seed_from_u64(4242);
        for _ in 0..200 {
            use rand::Rng;
            let n = rng.gen_range(2..=8usize);
            // random balanced h: shuffle half ones
            let mut idx: Vec<u64> = (0..1u64 << n).collect();
            idx.shuffle(&mut rng);
            let h = CubeMask::from_indices(n, &idx[..1 << (n - 1)]).unwrap();
            let x = unbalanced_subspace(n, &h).unwrap();
            assert_eq!(x.dim(), n - 1);
            let mask = x.span_mask().unwrap();
            let ones_on = h.and(&mask).count_ones();
            assert_ne!(2 * ones_on, mask.count_ones());
        }
    }
}
