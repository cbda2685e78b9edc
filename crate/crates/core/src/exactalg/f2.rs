/// Dense matrix over the two-element field, rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Parses rows written as strings of `0`/`1`.
    pub fn from_bit_strings(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged bit rows");
            for (j, c) in r.chars().enumerate() {
                m.set(i, j, c == '1');
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Rank by Gaussian elimination. Columns are scanned left to right and
    /// the pivot is the first remaining row with a one in that column.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<&[u64]> = self.bits.chunks(self.words.max(1)).collect();
        rows.truncate(self.rows);
        let mut work: Vec<Vec<u64>> = rows.into_iter().map(<[u64]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (rank..work.len()).find(|&r| (work[r][w] >> b) & 1 == 1) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank].clone();
            for row in work.iter_mut().skip(rank + 1) {
                if (row[w] >> b) & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity() {
        assert_eq!(F2Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(F2Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn dependent_third_row() {
        let m = F2Matrix::from_bit_strings(&["1100", "0110", "1010"]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn wide_rows_span_words() {
        let mut m = F2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(2, 64, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 2);
        m.flip(2, 0);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(F2Matrix::zeros(0, 5).rank(), 0);
        assert_eq!(F2Matrix::zeros(5, 0).rank(), 0);
    }
}
