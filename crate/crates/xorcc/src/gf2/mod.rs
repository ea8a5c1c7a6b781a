//! Bit-packed linear algebra over GF(2): vectors, matrices, rank, reduced
//! echelon forms, kernels and canonical subspaces.
//!
//! Conventions used everywhere in this crate:
//! * coordinate x_1 of a vector is stored at the least significant bit;
//! * the integer encoding of a point is its index into 2^n-bit masks;
//! * the canonical form of a subspace is the reduced row-echelon basis with
//!   pivot columns in increasing order, which is unique per subspace.

mod mask;
pub(crate) use mask::permute_word;
pub use mask::{mask_from_hex, mask_to_hex, CubeMask};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on cube dimensions for 2^n-sized objects (masks are then at
/// most 2 MiB). Raised at runtime via `set_dim_cap` (CLI `--cap-override`).
const DEFAULT_DIM_CAP: usize = 24;

/// Hard ceiling: 2^30 bits = 128 MiB per mask.
const MAX_DIM_CAP: usize = 30;

static DIM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIM_CAP);

pub fn dim_cap() -> usize {
    DIM_CAP.load(Ordering::Relaxed)
}

pub fn set_dim_cap(cap: usize) {
    DIM_CAP.store(cap.min(MAX_DIM_CAP), Ordering::Relaxed);
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    let cap = dim_cap();
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// A vector in {0,1}^n, n <= 64, packed into one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    n: usize,
    bits: u64,
}

impl BitVector {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::Usage(format!("vector dimension {n} not in 1..=64")));
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::Usage(format!(
                "bits 0x{bits:x} exceed dimension {n}"
            )));
        }
        Ok(BitVector { n, bits })
    }

    pub fn zero(n: usize) -> Self {
        BitVector { n, bits: 0 }
    }

    pub fn ones(n: usize) -> Self {
        BitVector {
            n,
            bits: if n == 64 { u64::MAX } else { (1 << n) - 1 },
        }
    }

    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::Usage(format!("coordinate {i} out of range 0..{n}")));
        }
        BitVector::new(n, 1 << i)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Hamming weight |x|.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn dist(&self, other: &BitVector) -> Result<u32> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "dist between n={} and n={}",
                self.n, other.n
            )));
        }
        Ok((self.bits ^ other.bits).count_ones())
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.n, other.n, "xor dimension mismatch");
        BitVector {
            n: self.n,
            bits: self.bits ^ other.bits,
        }
    }
}

impl fmt::Display for BitVector {
    /// Binary string, coordinate x_1 leftmost (matches the file formats).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Inner product <x, y> = XOR of x_i AND y_i.
pub fn inner_product(x: &BitVector, y: &BitVector) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch(format!(
            "inner product between n={} and n={}",
            x.n, y.n
        )));
    }
    Ok(parity64(x.bits & y.bits))
}

#[inline]
pub(crate) fn parity64(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// A matrix over GF(2), rows packed as words, ncols <= 64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            if r.n() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row of dimension {} in a matrix with {} columns",
                    r.n(),
                    ncols
                )));
            }
        }
        Ok(Gf2Matrix {
            ncols,
            rows: rows.iter().map(|r| r.bits()).collect(),
        })
    }

    pub fn from_raw_rows(ncols: usize, rows: Vec<u64>) -> Self {
        debug_assert!(rows.iter().all(|&r| ncols == 64 || r >> ncols == 0));
        Gf2Matrix { ncols, rows }
    }

    pub fn empty(ncols: usize) -> Self {
        Gf2Matrix { ncols, rows: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            ncols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            n: self.ncols,
            bits: self.rows[i],
        }
    }

    pub fn raw_rows(&self) -> &[u64] {
        &self.rows
    }

    /// The unique reduced row-echelon form, zero rows dropped, pivot columns
    /// in increasing order. Row space is preserved.
    pub fn rref(&self) -> Gf2Matrix {
        let mut rows = self.rows.clone();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(i) = (r..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else {
                continue;
            };
            rows.swap(r, i);
            let pivot_row = rows[r];
            for (j, row) in rows.iter_mut().enumerate() {
                if j != r && *row >> c & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            r += 1;
        }
        rows.truncate(r);
        Gf2Matrix {
            ncols: self.ncols,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().nrows()
    }

    /// Basis of {x | Mx = 0}, returned in canonical form; its dimension is
    /// ncols - rank.
    pub fn kernel_basis(&self) -> Gf2Subspace {
        let r = self.rref();
        let mut pivot_of_col = vec![usize::MAX; self.ncols];
        for (i, &row) in r.rows.iter().enumerate() {
            pivot_of_col[row.trailing_zeros() as usize] = i;
        }
        let mut gens = Vec::with_capacity(self.ncols - r.nrows());
        for c in 0..self.ncols {
            if pivot_of_col[c] != usize::MAX {
                continue;
            }
            // free column: 1 at c, plus the pivot coordinates whose
            // rref row carries column c
            let mut v = 1u64 << c;
            for (p, &ri) in pivot_of_col.iter().enumerate() {
                if ri != usize::MAX && r.rows[ri] >> c & 1 == 1 {
                    v |= 1 << p;
                }
            }
            gens.push(v);
        }
        Gf2Subspace::from_raw_spanning(self.ncols, &gens)
    }

    /// Syndrome M*x; bit i of the result is <row_i, x>.
    pub fn mul_vector(&self, x: &BitVector) -> Result<BitVector> {
        if x.n() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has dimension {}",
                self.ncols,
                x.n()
            )));
        }
        Ok(BitVector {
            n: self.rows.len().max(1),
            bits: self.mul_raw(x.bits()),
        })
    }

    #[inline]
    pub fn mul_raw(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            out |= (parity64(row & x) as u64) << i;
        }
        out
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[")?;
        for i in 0..self.nrows() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn rref(m: &Gf2Matrix) -> Gf2Matrix {
    m.rref()
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Gf2Matrix) -> Gf2Subspace {
    m.kernel_basis()
}

pub fn syndrome(s: &Gf2Matrix, x: &BitVector) -> Result<BitVector> {
    s.mul_vector(x)
}

/// A linear subspace of {0,1}^n held in canonical (reduced row-echelon)
/// basis form. Two equal subspaces compare and serialize identically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Subspace {
    n: usize,
    basis: Gf2Matrix,
}

impl Gf2Subspace {
    pub fn zero(n: usize) -> Self {
        Gf2Subspace {
            n,
            basis: Gf2Matrix::empty(n),
        }
    }

    pub fn full(n: usize) -> Self {
        Gf2Subspace {
            n,
            basis: Gf2Matrix::identity(n),
        }
    }

    pub fn from_spanning(n: usize, vectors: &[BitVector]) -> Result<Self> {
        let m = Gf2Matrix::new(n, vectors.to_vec())?;
        Ok(Gf2Subspace { n, basis: m.rref() })
    }

    pub fn from_raw_spanning(n: usize, vectors: &[u64]) -> Self {
        let m = Gf2Matrix::from_raw_rows(n, vectors.to_vec());
        Gf2Subspace { n, basis: m.rref() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Gf2Matrix {
        &self.basis
    }

    /// Reduce v by the basis; the result is the canonical representative of
    /// the coset v + L, and is 0 exactly when v is a member.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &row in &self.basis.rows {
            if v >> row.trailing_zeros() & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// All 2^dim member vectors, in generator-combination order.
    pub fn elements(&self) -> Vec<u64> {
        let d = self.dim();
        let mut out = Vec::with_capacity(1 << d);
        out.push(0);
        for &row in &self.basis.rows {
            for i in 0..out.len() {
                let v = out[i] ^ row;
                out.push(v);
            }
        }
        out
    }

    /// Membership mask over the cube (requires n within the dimension cap).
    pub fn span_mask(&self) -> Result<CubeMask> {
        let mut m = CubeMask::zeros(self.n)?;
        m.set(0);
        for &row in &self.basis.rows {
            let shifted = m.xor_shift(row);
            m.or_assign(&shifted);
        }
        Ok(m)
    }
}

impl fmt::Debug for Gf2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Subspace(n={}, dim={}, basis={:?})", self.n, self.dim(), self.basis)
    }
}

/// A matrix S with n - dim(L) independent rows whose kernel is exactly L,
/// so that equal syndromes Sx = Sy characterize membership of x+y in L.
/// For L = {0} the result is the identity.
pub fn parity_check_matrix(l: &Gf2Subspace) -> Gf2Matrix {
    // rows of the dual basis: kernel of the basis matrix is the orthogonal
    // complement, whose canonical basis we take as the check matrix
    l.basis.kernel_basis().basis.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn bv(n: usize, bits: u64) -> BitVector {
        BitVector::new(n, bits).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        // <000, 101> = 0
        assert!(!inner_product(&bv(3, 0b000), &bv(3, 0b101)).unwrap());
        // <110, 011> = 1 (single overlapping coordinate; x1-leftmost strings)
        assert!(inner_product(&bv(3, 0b011), &bv(3, 0b110)).unwrap());
        // <111, 111> = 1
        assert!(inner_product(&bv(3, 0b111), &bv(3, 0b111)).unwrap());
        assert!(inner_product(&bv(3, 0), &bv(4, 0)).is_err());
    }

    #[test]
    fn rref_examples() {
        // rows {11, 01} -> {10, 01}; strings are x1-leftmost
        let m = Gf2Matrix::new(2, vec![bv(2, 0b11), bv(2, 0b10)]).unwrap();
        let r = m.rref();
        assert_eq!(r.raw_rows(), &[0b01, 0b10]);
        // duplicate row removed
        let m = Gf2Matrix::new(3, vec![bv(3, 0b101), bv(3, 0b101)]).unwrap();
        assert_eq!(m.rref().raw_rows(), &[0b101]);
        // empty matrix
        assert_eq!(Gf2Matrix::empty(4).rref().nrows(), 0);
    }

    #[test]
    fn rref_idempotent_and_rank_nullity() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10usize);
            let nrows = rng.gen_range(0..=12usize);
            let rows: Vec<u64> = (0..nrows)
                .map(|_| rng.gen::<u64>() & ((1 << n) - 1))
                .collect();
            let m = Gf2Matrix::from_raw_rows(n, rows);
            let r = m.rref();
            assert_eq!(r.rref(), r);
            assert_eq!(m.rank() + m.kernel_basis().dim(), n);
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::from_raw_rows(4, vec![0, 0]).rank(), 0);
        // row 3 = row 1 XOR row 2
        let m = Gf2Matrix::new(3, vec![bv(3, 0b011), bv(3, 0b110), bv(3, 0b101)]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Gf2Matrix::identity(3).kernel_basis().dim(), 0);
        let k = Gf2Matrix::from_raw_rows(3, vec![0b111]).kernel_basis();
        assert_eq!(k.dim(), 2);
        for v in 0..8u64 {
            assert_eq!(k.contains(v), v.count_ones() % 2 == 0);
        }
        assert_eq!(Gf2Matrix::empty(5).kernel_basis().dim(), 5);
    }

    #[test]
    fn kernel_annihilates() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10usize);
            let rows: Vec<u64> = (0..rng.gen_range(0..=n))
                .map(|_| rng.gen::<u64>() & ((1 << n) - 1))
                .collect();
            let m = Gf2Matrix::from_raw_rows(n, rows);
            let k = m.kernel_basis();
            for v in k.elements() {
                assert_eq!(m.mul_raw(v), 0);
            }
        }
    }

    #[test]
    fn parity_check_examples() {
        // L = full space -> empty matrix
        assert_eq!(parity_check_matrix(&Gf2Subspace::full(4)).nrows(), 0);
        // L = {0} -> identity
        let s = parity_check_matrix(&Gf2Subspace::zero(3));
        assert_eq!(s, Gf2Matrix::identity(3));
        // L = span{110, 011} in n=3 -> single row 111
        let l = Gf2Subspace::from_spanning(3, &[bv(3, 0b011), bv(3, 0b110)]).unwrap();
        let s = parity_check_matrix(&l);
        assert_eq!(s.raw_rows(), &[0b111]);
    }

    #[test]
    fn parity_check_round_trip() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10usize);
            let gens: Vec<u64> = (0..rng.gen_range(0..=n))
                .map(|_| rng.gen::<u64>() & ((1 << n) - 1))
                .collect();
            let l = Gf2Subspace::from_raw_spanning(n, &gens);
            let s = parity_check_matrix(&l);
            assert_eq!(s.nrows(), n - l.dim());
            assert_eq!(s.kernel_basis(), l);
        }
    }

    #[test]
    fn syndrome_examples() {
        let id = Gf2Matrix::identity(3);
        assert_eq!(syndrome(&id, &bv(3, 0b101)).unwrap().bits(), 0b101);
        let s = Gf2Matrix::from_raw_rows(3, vec![0b111]);
        assert_eq!(syndrome(&s, &bv(3, 0b011)).unwrap().bits(), 0);
        assert_eq!(syndrome(&s, &bv(3, 0b001)).unwrap().bits(), 1);
        assert!(syndrome(&s, &bv(4, 0)).is_err());
    }

    #[test]
    fn syndrome_equality_iff_same_coset() {
        // exhaustive for n <= 6
        let mut rng = StdRng::seed_from_u64(5);
        for n in 2..=6usize {
            let gens: Vec<u64> = (0..rng.gen_range(0..=n))
                .map(|_| rng.gen::<u64>() & ((1 << n) - 1))
                .collect();
            let l = Gf2Subspace::from_raw_spanning(n, &gens);
            let s = parity_check_matrix(&l);
            for x in 0..(1u64 << n) {
                for y in 0..(1u64 << n) {
                    let same = s.mul_raw(x) == s.mul_raw(y);
                    assert_eq!(same, l.contains(x ^ y));
                }
            }
        }
    }

    #[test]
    fn canonical_serialization() {
        // two independently generated bases of the same span produce
        // identical canonical bases
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10usize);
            let gens: Vec<u64> = (0..rng.gen_range(1..=n))
                .map(|_| rng.gen::<u64>() & ((1 << n) - 1))
                .collect();
            let l = Gf2Subspace::from_raw_spanning(n, &gens);
            // random invertible recombination of the generators
            let mut regen: Vec<u64> = l.elements();
            regen.retain(|&v| v != 0);
            if regen.is_empty() {
                continue;
            }
            let mut shuffled = vec![];
            for _ in 0..2 * n {
                shuffled.push(regen[rng.gen_range(0..regen.len())]);
            }
            let l2 = Gf2Subspace::from_raw_spanning(n, &shuffled);
            if l2.dim() == l.dim() {
                assert_eq!(l, l2);
                assert_eq!(
                    format!("{:?}", l.basis()),
                    format!("{:?}", l2.basis())
                );
            }
        }
    }

    #[test]
    fn span_mask_matches_elements() {
        let l = Gf2Subspace::from_raw_spanning(4, &[0b0011, 0b0110]);
        let m = l.span_mask().unwrap();
        let mut els = l.elements();
        els.sort_unstable();
        assert_eq!(m.ones().collect::<Vec<_>>(), els);
    }
}
