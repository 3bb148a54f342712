//! Kernels of integer matrices: an incremental row-echelon form modulo the
//! Mersenne prime `2^61 - 1`, rational reconstruction, and an exact
//! fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

pub const PRIME: u64 = (1 << 61) - 1;

pub fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

pub fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow_mod(a, PRIME - 2)
}

pub fn reduce(x: &BigInt) -> u64 {
    let r = x.mod_floor(&BigInt::from(PRIME));
    u64::try_from(r).expect("residue fits in u64")
}

/// Row-echelon basis built one row at a time. Row `k` vanishes at the pivots
/// of rows `0..k`.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl ModEchelon {
    pub fn new(ncols: usize) -> Self {
        ModEchelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the basis and keeps it if independent. Returns
    /// whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        for (basis, &p) in self.rows.iter().zip(&self.pivots) {
            let f = row[p];
            if f == 0 {
                continue;
            }
            for (x, &b) in row.iter_mut().zip(basis) {
                if b != 0 {
                    *x = sub_mod(*x, mul_mod(f, b));
                }
            }
        }
        let Some(p) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(row[p]);
        for x in row.iter_mut() {
            *x = mul_mod(*x, inv);
        }
        self.rows.push(row);
        self.pivots.push(p);
        self.is_pivot[p] = true;
        true
    }

    /// One kernel vector per non-pivot column (set to 1, other free columns 0).
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        (0..self.ncols)
            .filter(|&f| !self.is_pivot[f])
            .map(|f| {
                let mut x = vec![0u64; self.ncols];
                x[f] = 1;
                for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
                    let mut s = 0u64;
                    for (j, (&r, &xj)) in row.iter().zip(&x).enumerate() {
                        if j != p && r != 0 && xj != 0 {
                            s = add_mod(s, mul_mod(r, xj));
                        }
                    }
                    x[p] = sub_mod(0, s);
                }
                x
            })
            .collect()
    }
}

/// The fraction `r/s` with `|r|, s <= sqrt(p/2)` congruent to `a`, if any.
pub fn rational_reconstruct(a: u64) -> Option<Rational> {
    let bound = ((PRIME / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (PRIME as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    normalize_integer_vector(ints)
}

pub fn normalize_integer_vector(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x /= &g;
        if flip {
            *x = -&*x;
        }
    }
    v
}

/// Kernel basis of an integer matrix by fraction-free elimination. Each
/// basis vector is a primitive integer vector.
pub fn kernel_exact(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let piv = m[r][c].clone();
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(pivot_row) {
                *x = (&piv * &*x - &f * p) / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots).rev() {
                let mut s = Rational::zero();
                for (j, (rj, xj)) in row.iter().zip(&x).enumerate() {
                    if j != p && !rj.is_zero() && !xj.is_zero() {
                        s += Rational::from_integer(rj.clone()) * xj;
                    }
                }
                x[p] = -s / Rational::from_integer(row[p].clone());
            }
            primitive_integer_vector(&x)
        })
        .collect()
}
