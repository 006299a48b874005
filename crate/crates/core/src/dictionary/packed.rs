//! Bit-plane storage for columns whose entries are all `i^k / sqrt(N)`.
//!
//! A quarter-phase entry is stored as its exponent `k` in two bit planes
//! (`lo = k & 1`, `hi = k >> 1`). The inner product of two such columns is
//! `(1/N) * sum_n i^(k_p[n] - k_q[n])`, so it reduces to counting how many
//! positions have each phase difference. Counting is done with popcounts,
//! which makes the result an exact pair of integers.

#[derive(Debug, Clone)]
pub(crate) struct PhaseCodes {
    rows: usize,
    words: usize,
    lo: Vec<u64>,
    hi: Vec<u64>,
    coded: Vec<bool>,
}

impl PhaseCodes {
    pub(crate) fn new(rows: usize) -> Self {
        PhaseCodes {
            rows,
            words: rows.div_ceil(64),
            lo: Vec::new(),
            hi: Vec::new(),
            coded: Vec::new(),
        }
    }

    /// Appends a column given by its phase exponents (each in `0..4`).
    pub(crate) fn push(&mut self, exponents: impl IntoIterator<Item = u8>) {
        let start = self.lo.len();
        self.lo.resize(start + self.words, 0);
        self.hi.resize(start + self.words, 0);
        let mut count = 0;
        for (n, k) in exponents.into_iter().enumerate() {
            debug_assert!(k < 4);
            let (w, b) = (n / 64, n % 64);
            self.lo[start + w] |= u64::from(k & 1) << b;
            self.hi[start + w] |= u64::from(k >> 1) << b;
            count += 1;
        }
        debug_assert_eq!(count, self.rows);
        self.coded.push(true);
    }

    /// Appends a column that has no phase code (e.g. a standard basis vector).
    pub(crate) fn push_uncoded(&mut self) {
        let start = self.lo.len();
        self.lo.resize(start + self.words, 0);
        self.hi.resize(start + self.words, 0);
        self.coded.push(false);
    }

    pub(crate) fn is_coded(&self, col: usize) -> bool {
        self.coded[col]
    }

    pub(crate) fn truncate(&mut self, cols: usize) {
        self.coded.truncate(cols);
        self.lo.truncate(cols * self.words);
        self.hi.truncate(cols * self.words);
    }

    /// Phase exponent of entry `row` of column `col`.
    #[cfg(test)]
    pub(crate) fn exponent(&self, row: usize, col: usize) -> u8 {
        let i = col * self.words + row / 64;
        let b = row % 64;
        (((self.hi[i] >> b) & 1) << 1 | ((self.lo[i] >> b) & 1)) as u8
    }

    /// `N * <a_p, a_q>` as exact integers `(re, im)`, where
    /// `<a_p, a_q> = sum_n a_p[n] * conj(a_q[n])`.
    pub(crate) fn inner_scaled(&self, p: usize, q: usize) -> (i64, i64) {
        let (lp, hp) = self.planes(p);
        let (lq, hq) = self.planes(q);
        let mut counts = [0i64; 4];
        for w in 0..self.words {
            let l = lp[w] ^ lq[w];
            let borrow = !lp[w] & lq[w];
            let h = hp[w] ^ hq[w] ^ borrow;
            counts[0] += i64::from((!h & !l).count_ones());
            counts[1] += i64::from((!h & l).count_ones());
            counts[2] += i64::from((h & !l).count_ones());
            counts[3] += i64::from((h & l).count_ones());
        }
        // Padding bits are zero in both planes and land in the d = 0 bucket.
        counts[0] -= (self.words * 64 - self.rows) as i64;
        (counts[0] - counts[2], counts[1] - counts[3])
    }

    fn planes(&self, col: usize) -> (&[u64], &[u64]) {
        let r = col * self.words..(col + 1) * self.words;
        (&self.lo[r.clone()], &self.hi[r])
    }
}
