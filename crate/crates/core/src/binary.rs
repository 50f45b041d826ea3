//! Binary linear codes: packed GF(2) matrices, rank, exact minimum distance by
//! Gray-code enumeration, weight distributions and random codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Largest dimension accepted by [`BinaryCode::exact_min_distance`].
pub const DMIN_MAX_DIM: usize = 28;
/// Largest dimension accepted by [`BinaryCode::weight_distribution`].
pub const WEIGHTS_MAX_DIM: usize = 24;

// Below this many messages the enumeration runs on a single segment.
const PARALLEL_THRESHOLD: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinaryCodeError {
    #[error("dimension {k} exceeds the enumeration cap {cap}; use a sampled estimate instead")]
    DimensionTooLarge { k: usize, cap: usize },
    #[error("the zero code has no nonzero codewords")]
    TrivialCode,
    #[error("dimension {k} exceeds length {n}")]
    InvalidDimension { n: usize, k: usize },
    #[error("message has {got} bits, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("bad hex row {0:?}")]
    BadHex(String),
    #[error("need at least one trial")]
    NoTrials,
}

/// Row-major GF(2) matrix with each row packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let stride = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All rows must have equal length.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.stride + j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn row_weight(&self, i: usize) -> u32 {
        self.row(i).iter().map(|w| w.count_ones()).sum()
    }

    pub fn push_row(&mut self, words: &[u64]) {
        assert_eq!(words.len(), self.stride);
        self.data.extend_from_slice(words);
        self.rows += 1;
    }

    /// Rank over GF(2) by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        (0..self.rows)
            .filter(|&i| basis.insert(self.row(i)))
            .count()
    }

    /// Hex form of a row: bit `j` is bit `7 - j % 8` of byte `j / 8`.
    pub fn row_hex(&self, i: usize) -> String {
        bits_to_hex(&self.row_bits(i))
    }

    pub fn from_hex_rows<S: AsRef<str>>(
        rows: &[S],
        cols: usize,
    ) -> Result<BitMatrix, BinaryCodeError> {
        let parsed = rows
            .iter()
            .map(|r| hex_to_bits(r.as_ref(), cols))
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = BitMatrix::zeros(0, cols);
        for bits in parsed {
            m.push_row(&pack(&bits));
        }
        Ok(m)
    }
}

pub fn pack(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64)];
    for (j, &b) in bits.iter().enumerate() {
        if b {
            words[j / 64] |= 1 << (j % 64);
        }
    }
    words
}

pub fn unpack(words: &[u64], len: usize) -> Vec<bool> {
    (0..len)
        .map(|j| (words[j / 64] >> (j % 64)) & 1 == 1)
        .collect()
}

/// MSB-first hex: bit `j` lands in bit `7 - j % 8` of byte `j / 8`.
pub fn bits_to_hex(bits: &[bool]) -> String {
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (j, &b) in bits.iter().enumerate() {
        if b {
            bytes[j / 8] |= 0x80 >> (j % 8);
        }
    }
    hex::encode(bytes)
}

pub fn hex_to_bits(text: &str, len: usize) -> Result<Vec<bool>, BinaryCodeError> {
    let bytes = hex::decode(text.trim()).map_err(|_| BinaryCodeError::BadHex(text.to_string()))?;
    if bytes.len() != len.div_ceil(8) {
        return Err(BinaryCodeError::BadHex(text.to_string()));
    }
    let bits: Vec<bool> = (0..bytes.len() * 8)
        .map(|j| bytes[j / 8] & (0x80 >> (j % 8)) != 0)
        .collect();
    if bits[len..].iter().any(|&b| b) {
        return Err(BinaryCodeError::BadHex(text.to_string()));
    }
    Ok(bits[..len].to_vec())
}

/// Incremental row-echelon basis used for rank and independence tests.
struct EchelonBasis {
    // (pivot column, reduced row)
    rows: Vec<(usize, Vec<u64>)>,
    stride: usize,
}

impl EchelonBasis {
    fn new(cols: usize) -> Self {
        EchelonBasis {
            rows: Vec::new(),
            stride: cols.div_ceil(64),
        }
    }

    /// Returns true if `v` was independent of the basis (and adds it).
    fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (pivot, r) in &self.rows {
            if (v[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                xor_into(&mut v, r);
            }
        }
        let Some(pivot) = first_set_bit(&v) else {
            return false;
        };
        for (_, r) in self.rows.iter_mut() {
            if (r[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                xor_into(r, &v);
            }
        }
        debug_assert_eq!(v.len(), self.stride);
        self.rows.push((pivot, v));
        true
    }
}

fn first_set_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
fn weight(v: &[u64]) -> u32 {
    v.iter().map(|w| w.count_ones()).sum()
}

/// A binary linear code given by a generator matrix with independent rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    generator: BitMatrix,
}

impl BinaryCode {
    /// Keeps the rows of `g` that are independent of the rows before them, so the
    /// stored generator always has full row rank.
    pub fn from_generator(g: &BitMatrix) -> BinaryCode {
        let mut basis = EchelonBasis::new(g.ncols());
        let mut kept = BitMatrix::zeros(0, g.ncols());
        for i in 0..g.nrows() {
            if basis.insert(g.row(i)) {
                kept.push_row(g.row(i));
            }
        }
        BinaryCode { generator: kept }
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.generator.ncols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    pub fn encode(&self, message: &[bool]) -> Result<Vec<bool>, BinaryCodeError> {
        if message.len() != self.dimension() {
            return Err(BinaryCodeError::LengthMismatch {
                expected: self.dimension(),
                got: message.len(),
            });
        }
        let mut acc = vec![0u64; self.generator.stride];
        for (i, _) in message.iter().enumerate().filter(|(_, &b)| b) {
            xor_into(&mut acc, self.generator.row(i));
        }
        Ok(unpack(&acc, self.length()))
    }

    fn encode_index(&self, message: u64, out: &mut [u64]) {
        out.fill(0);
        let mut m = message;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            xor_into(out, self.generator.row(i));
            m &= m - 1;
        }
    }

    /// Visits the codewords of messages `gray(i)` for `i` in `start..end`, each one
    /// row-XOR away from the previous.
    fn scan_gray<F: FnMut(&[u64])>(&self, start: u64, end: u64, mut visit: F) {
        if start >= end {
            return;
        }
        let mut word = vec![0u64; self.generator.stride];
        self.encode_index(start ^ (start >> 1), &mut word);
        visit(&word);
        for i in start + 1..end {
            xor_into(&mut word, self.generator.row(i.trailing_zeros() as usize));
            visit(&word);
        }
    }

    fn segments(&self) -> Vec<(u64, u64)> {
        let total = 1u64 << self.dimension();
        if total <= PARALLEL_THRESHOLD {
            return vec![(0, total)];
        }
        let parts = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
        let step = total.div_ceil(parts);
        (0..parts)
            .map(|s| (s * step, ((s + 1) * step).min(total)))
            .filter(|(a, b)| a < b)
            .collect()
    }

    /// Exact minimum distance over all `2^k - 1` nonzero codewords.
    pub fn exact_min_distance(&self) -> Result<u32, BinaryCodeError> {
        let k = self.dimension();
        if k > DMIN_MAX_DIM {
            return Err(BinaryCodeError::DimensionTooLarge {
                k,
                cap: DMIN_MAX_DIM,
            });
        }
        if k == 0 {
            return Err(BinaryCodeError::TrivialCode);
        }
        let best = self
            .segments()
            .into_par_iter()
            .map(|(a, b)| {
                let mut best = u32::MAX;
                // message 0 is visited first in segment 0 only; its weight is 0 and skipped
                self.scan_gray(a, b, |w| {
                    let wt = weight(w);
                    if wt != 0 && wt < best {
                        best = wt;
                    }
                });
                best
            })
            .min()
            .unwrap_or(u32::MAX);
        Ok(best)
    }

    /// Minimum distance by re-encoding every message independently. Slow; for cross-checks.
    pub fn naive_min_distance(&self) -> Result<u32, BinaryCodeError> {
        let k = self.dimension();
        if k > DMIN_MAX_DIM {
            return Err(BinaryCodeError::DimensionTooLarge {
                k,
                cap: DMIN_MAX_DIM,
            });
        }
        if k == 0 {
            return Err(BinaryCodeError::TrivialCode);
        }
        let mut word = vec![0u64; self.generator.stride];
        let mut best = u32::MAX;
        for msg in 1..1u64 << k {
            self.encode_index(msg, &mut word);
            best = best.min(weight(&word));
        }
        Ok(best)
    }

    /// Number of codewords of each weight `0..=n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>, BinaryCodeError> {
        let k = self.dimension();
        if k > WEIGHTS_MAX_DIM {
            return Err(BinaryCodeError::DimensionTooLarge {
                k,
                cap: WEIGHTS_MAX_DIM,
            });
        }
        let n = self.length();
        let hist = self
            .segments()
            .into_par_iter()
            .map(|(a, b)| {
                let mut h = vec![0u64; n + 1];
                self.scan_gray(a, b, |w| h[weight(w) as usize] += 1);
                h
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut x, y| {
                    x.iter_mut().zip(&y).for_each(|(a, b)| *a += b);
                    x
                },
            );
        Ok(hist)
    }

    /// Minimum weight over `trials` random nonzero codewords: an upper bound on the
    /// minimum distance. When `trials` covers every nonzero message the scan is
    /// exhaustive and the result is exact.
    pub fn sampled_min_distance_upper(
        &self,
        trials: u64,
        seed: u64,
    ) -> Result<u32, BinaryCodeError> {
        if trials == 0 {
            return Err(BinaryCodeError::NoTrials);
        }
        let k = self.dimension();
        if k == 0 {
            return Err(BinaryCodeError::TrivialCode);
        }
        if k < 64 && trials >= (1u64 << k) - 1 {
            return self.exact_min_distance();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut word = vec![0u64; self.generator.stride];
        let mut best = u32::MAX;
        let mut done = 0;
        while done < trials {
            word.fill(0);
            let mut any = false;
            for i in 0..k {
                if rng.gen::<bool>() {
                    xor_into(&mut word, self.generator.row(i));
                    any = true;
                }
            }
            if !any {
                continue;
            }
            best = best.min(weight(&word));
            done += 1;
        }
        Ok(best)
    }
}

/// Uniform random `k x n` generator, redrawn until it has rank `k`.
pub fn random_linear_code(n: usize, k: usize, seed: u64) -> Result<BinaryCode, BinaryCodeError> {
    if k > n {
        return Err(BinaryCodeError::InvalidDimension { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = BitMatrix::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                g.set(i, j, rng.gen());
            }
        }
        if g.rank() == k {
            return Ok(BinaryCode::from_generator(&g));
        }
    }
}

/// CSV `weight,count` rows for the nonzero entries of a histogram.
pub fn histogram_csv(hist: &[u64]) -> String {
    let mut out = String::from("weight,count\n");
    for (w, &c) in hist.iter().enumerate().filter(|(_, &c)| c > 0) {
        out.push_str(&format!("{w},{c}\n"));
    }
    out
}
