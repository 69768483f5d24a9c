//! Small prime-field linear algebra for character computations.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let n = self.p - 1;
        let factors = prime_factors(n);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..ncols {
                        let t = self.mul(f, rows[r][k]);
                        rows[i][k] = self.sub(rows[i][k], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of the right kernel `{c : A c = 0}` of an `m × n` matrix.
    pub fn kernel(self, a: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let mut rows = a.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, rows[r][f]);
                }
                v
            })
            .collect()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
