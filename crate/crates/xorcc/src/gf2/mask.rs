//! 2^n-bit masks over the Boolean cube.
//!
//! Bit `i` of a mask corresponds to the point of `{0,1}^n` whose integer
//! encoding is `i` (coordinate x_1 at the least significant position).

use crate::error::{Error, Result};
use crate::gf2::check_cap;

/// Membership mask over all 2^n points of the cube.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeMask {
    n: usize,
    words: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

/// Bits of the single word that are valid when n < 6.
fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl CubeMask {
    pub fn zeros(n: usize) -> Result<Self> {
        check_cap(n)?;
        Ok(CubeMask {
            n,
            words: vec![0; words_for(n)],
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        check_cap(n)?;
        let mut words = vec![u64::MAX; words_for(n)];
        *words.last_mut().unwrap() = tail_mask(n);
        Ok(CubeMask { n, words })
    }

    pub fn from_indices(n: usize, indices: &[u64]) -> Result<Self> {
        let mut m = CubeMask::zeros(n)?;
        for &i in indices {
            if i >= m.size() {
                return Err(Error::Usage(format!(
                    "point {i} out of range for dimension {n}"
                )));
            }
            m.set(i);
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut m = CubeMask::zeros(n)?;
        for x in 0..m.size() {
            if f(x) {
                m.set(x);
            }
        }
        Ok(m)
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_cap(n)?;
        debug_assert_eq!(words.len(), words_for(n));
        debug_assert_eq!(words.last().unwrap() & !tail_mask(n), 0);
        Ok(CubeMask { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points in the cube, 2^n.
    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: u64) {
        self.words[(i >> 6) as usize] &= !(1 << (i & 63));
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of set bits at positions strictly greater than `i`.
    pub fn count_ones_above(&self, i: u64) -> u64 {
        let wi = (i >> 6) as usize;
        let mut total = (self.words[wi] >> (i & 63) >> 1).count_ones() as u64;
        for w in &self.words[wi + 1..] {
            total += w.count_ones() as u64;
        }
        total
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<u64> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((wi as u64) << 6 | w.trailing_zeros() as u64);
            }
        }
        None
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            mask: self,
            word_index: 0,
            current: self.words[0],
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn binary_op(&self, other: &CubeMask, f: impl Fn(u64, u64) -> u64) -> CubeMask {
        assert_eq!(self.n, other.n, "mask dimension mismatch");
        CubeMask {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn and(&self, other: &CubeMask) -> CubeMask {
        self.binary_op(other, |a, b| a & b)
    }

    pub fn or(&self, other: &CubeMask) -> CubeMask {
        self.binary_op(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &CubeMask) -> CubeMask {
        self.binary_op(other, |a, b| a ^ b)
    }

    pub fn and_not(&self, other: &CubeMask) -> CubeMask {
        self.binary_op(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> CubeMask {
        let mut words: Vec<u64> = self.words.iter().map(|&w| !w).collect();
        *words.last_mut().unwrap() &= tail_mask(self.n);
        CubeMask { n: self.n, words }
    }

    pub fn or_assign(&mut self, other: &CubeMask) {
        assert_eq!(self.n, other.n, "mask dimension mismatch");
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_assign(&mut self, other: &CubeMask) {
        assert_eq!(self.n, other.n, "mask dimension mismatch");
        for (a, &b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subset_of(&self, other: &CubeMask) -> bool {
        assert_eq!(self.n, other.n, "mask dimension mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &CubeMask) -> bool {
        assert_eq!(self.n, other.n, "mask dimension mismatch");
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }

    /// Image of the mask under the permutation x -> x XOR delta.
    ///
    /// Bit p of the result equals bit (p XOR delta) of self.
    pub fn xor_shift(&self, delta: u64) -> CubeMask {
        debug_assert!(delta < self.size());
        let hi = (delta >> 6) as usize;
        let lo = (delta & 63) as u32;
        let mut words = vec![0u64; self.words.len()];
        if lo == 0 {
            for (w, out) in words.iter_mut().enumerate() {
                *out = self.words[w ^ hi];
            }
        } else {
            for (w, out) in words.iter_mut().enumerate() {
                *out = permute_word(self.words[w ^ hi], lo);
            }
        }
        CubeMask { n: self.n, words }
    }

    /// In-place `self &= xor_shift(self, delta)`, avoiding an allocation.
    pub fn and_assign_xor_shift_of_self(&mut self, delta: u64) {
        let shifted = self.xor_shift(delta);
        self.and_assign(&shifted);
    }
}

/// Permute the bits of one word by position XOR with lo (< 64).
#[inline]
pub(crate) fn permute_word(mut x: u64, lo: u32) -> u64 {
    if lo & 1 != 0 {
        x = (x & 0x5555_5555_5555_5555) << 1 | (x >> 1) & 0x5555_5555_5555_5555;
    }
    if lo & 2 != 0 {
        x = (x & 0x3333_3333_3333_3333) << 2 | (x >> 2) & 0x3333_3333_3333_3333;
    }
    if lo & 4 != 0 {
        x = (x & 0x0f0f_0f0f_0f0f_0f0f) << 4 | (x >> 4) & 0x0f0f_0f0f_0f0f_0f0f;
    }
    if lo & 8 != 0 {
        x = (x & 0x00ff_00ff_00ff_00ff) << 8 | (x >> 8) & 0x00ff_00ff_00ff_00ff;
    }
    if lo & 16 != 0 {
        x = (x & 0x0000_ffff_0000_ffff) << 16 | (x >> 16) & 0x0000_ffff_0000_ffff;
    }
    if lo & 32 != 0 {
        x = x.rotate_left(32);
    }
    x
}

pub struct Ones<'a> {
    mask: &'a CubeMask,
    word_index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as u64;
                self.current &= self.current - 1;
                return Some((self.word_index as u64) << 6 | b);
            }
            self.word_index += 1;
            if self.word_index >= self.mask.words.len() {
                return None;
            }
            self.current = self.mask.words[self.word_index];
        }
    }
}

impl std::fmt::Debug for CubeMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CubeMask(n={}, ones={{", self.n)?;
        for (i, x) in self.ones().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if i > 32 {
                write!(f, "..")?;
                break;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}})")
    }
}

/// Hex serialization used by the file formats: ceil(2^n/8) bytes, lowest
/// address first, bit i of the mask stored as bit (i mod 8) of byte i/8.
pub fn mask_to_hex(m: &CubeMask) -> String {
    let nbytes = (1u64 << m.n()).div_ceil(8);
    let mut s = String::with_capacity(nbytes as usize * 2);
    for byte in 0..nbytes {
        let word = m.words()[(byte / 8) as usize];
        let b = (word >> ((byte % 8) * 8)) as u8;
        s.push_str(&format!("{b:02x}"));
    }
    s
}

pub fn mask_from_hex(n: usize, hex: &str) -> Result<CubeMask> {
    let nbytes = (1u64 << n).div_ceil(8);
    if hex.len() as u64 != nbytes * 2 {
        return Err(Error::Usage(format!(
            "hex mask must have {} digits for n={n}, got {}",
            nbytes * 2,
            hex.len()
        )));
    }
    let mut m = CubeMask::zeros(n)?;
    for (byte, chunk) in hex.as_bytes().chunks(2).enumerate() {
        let s = std::str::from_utf8(chunk).unwrap();
        let b = u8::from_str_radix(s, 16)
            .map_err(|_| Error::Usage(format!("bad hex byte {s:?} in mask")))?;
        for bit in 0..8 {
            let i = byte as u64 * 8 + bit;
            if i < m.size() && b >> bit & 1 == 1 {
                m.set(i);
            } else if i >= m.size() && b >> bit & 1 == 1 {
                return Err(Error::Usage(
                    "hex mask has bits set beyond 2^n".to_string(),
                ));
            }
        }
    }
    Ok(m)
}
