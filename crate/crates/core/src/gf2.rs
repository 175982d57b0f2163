//! Linear systems over GF(2) with row-combination tracking.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

/// `Σ_{j ∈ row} x_j = rhs` for each equation.
#[derive(Clone, Debug, Default)]
pub struct Gf2System {
    nvars: usize,
    rows: Vec<(BitRow, bool)>,
}

impl Gf2System {
    pub fn new(nvars: usize) -> Self {
        Gf2System {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut row = BitRow::zeros(self.nvars);
        for &v in vars {
            row.flip(v);
        }
        self.rows.push((row, rhs));
    }

    /// Whether `x` satisfies every equation.
    pub fn check(&self, x: &[bool]) -> bool {
        self.rows
            .iter()
            .all(|(row, rhs)| row.ones().fold(false, |acc, j| acc ^ x[j]) == *rhs)
    }

    /// A solution with every free variable set to 0, or the indices of a set of
    /// equations whose sum reads `0 = 1`.
    pub fn solve(&self) -> Result<Vec<bool>, Vec<usize>> {
        let m = self.rows.len();
        let mut rows: Vec<(BitRow, bool, BitRow)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, (r, b))| {
                let mut tag = BitRow::zeros(m);
                tag.set(i, true);
                (r.clone(), *b, tag)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.nvars {
            let Some(p) = (next..m).find(|&r| rows[r].0.get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let (pr, pb, pt) = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.0.get(col) {
                    row.0.xor_assign(&pr);
                    row.1 ^= pb;
                    row.2.xor_assign(&pt);
                }
            }
            pivots.push(col);
            next += 1;
        }
        if let Some(bad) = rows[next..].iter().find(|r| r.1) {
            return Err(bad.2.ones().collect());
        }
        let mut x = vec![false; self.nvars];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = rows[r].1;
        }
        Ok(x)
    }
}
