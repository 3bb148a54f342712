//! Multivariate power series truncated to the box `0 <= m_i <= N`.
//!
//! Coefficients are stored densely in mixed radix `N + 1`, so that
//! `index(m + k) = index(m) + index(k)` whenever `m + k` stays in the box.
//! Products only visit nonzero entries of the sparser operand.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_rational, format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, TermJson};

/// Index arithmetic for the box `{0..=N}^nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxShape {
    nvars: usize,
    order: u32,
    strides: Vec<usize>,
    size: usize,
}

impl BoxShape {
    pub fn new(nvars: usize, order: u32) -> Result<Self> {
        let radix = order as usize + 1;
        let mut strides = Vec::with_capacity(nvars);
        let mut size: usize = 1;
        for _ in 0..nvars {
            strides.push(size);
            size = size
                .checked_mul(radix)
                .filter(|&s| s <= 1 << 26)
                .ok_or_else(|| Error::ResourceLimit(format!("box ({order}+1)^{nvars} is too large")))?;
        }
        Ok(BoxShape {
            nvars,
            order,
            strides,
            size,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        m.len() == self.nvars && m.iter().all(|&k| k <= self.order)
    }

    pub fn index(&self, m: &[u32]) -> usize {
        m.iter().zip(&self.strides).map(|(&k, &s)| k as usize * s).sum()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        let radix = self.order as usize + 1;
        let mut m = Vec::with_capacity(self.nvars);
        for _ in 0..self.nvars {
            m.push((idx % radix) as u32);
            idx /= radix;
        }
        m
    }

    /// Calls `f(index(k), k)` for every `k` with `0 <= k_i <= limit[i]`,
    /// in increasing index order.
    pub fn for_each_below(&self, limit: &[u32], mut f: impl FnMut(usize, &[u32])) {
        let mut k = vec![0u32; self.nvars];
        let mut idx = 0usize;
        loop {
            f(idx, &k);
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return;
                }
                if k[i] < limit[i] {
                    k[i] += 1;
                    idx += self.strides[i];
                    break;
                }
                idx -= k[i] as usize * self.strides[i];
                k[i] = 0;
                i += 1;
            }
        }
    }

    /// All exponent vectors of the box, in index order.
    pub fn points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.size).map(|i| self.decode(i))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    shape: BoxShape,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, order: u32) -> Result<Self> {
        let shape = BoxShape::new(nvars, order)?;
        let coeffs = vec![Rational::zero(); shape.size];
        Ok(TruncatedSeries { shape, coeffs })
    }

    pub fn one(nvars: usize, order: u32) -> Result<Self> {
        let mut s = Self::zero(nvars, order)?;
        s.coeffs[0] = Rational::one();
        Ok(s)
    }

    pub fn constant(nvars: usize, order: u32, c: Rational) -> Result<Self> {
        let mut s = Self::zero(nvars, order)?;
        s.coeffs[0] = c;
        Ok(s)
    }

    /// Coefficients of `p` that fall inside the box.
    pub fn from_poly(p: &MultiPoly, order: u32) -> Result<Self> {
        let mut s = Self::zero(p.nvars(), order)?;
        for (e, c) in p.terms() {
            if s.shape.contains(e.as_slice()) {
                let i = s.shape.index(e.as_slice());
                s.coeffs[i] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn from_fn(nvars: usize, order: u32, mut f: impl FnMut(&[u32]) -> Rational) -> Result<Self> {
        let shape = BoxShape::new(nvars, order)?;
        let coeffs = (0..shape.size).map(|i| f(&shape.decode(i))).collect();
        Ok(TruncatedSeries { shape, coeffs })
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn nvars(&self) -> usize {
        self.shape.nvars
    }

    pub fn order(&self) -> u32 {
        self.shape.order
    }

    pub fn coefficient(&self, m: &[u32]) -> Result<Rational> {
        if !self.shape.contains(m) {
            return Err(Error::invalid(format!(
                "exponent {m:?} outside the box of order {} in {} variables",
                self.order(),
                self.nvars()
            )));
        }
        Ok(self.coeffs[self.shape.index(m)].clone())
    }

    pub fn set_coefficient(&mut self, m: &[u32], c: Rational) -> Result<()> {
        if !self.shape.contains(m) {
            return Err(Error::invalid(format!("exponent {m:?} outside the box")));
        }
        let i = self.shape.index(m);
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Nonzero `(exponents, coefficient)` pairs in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<u32>, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shape.decode(i), c))
    }

    fn check_same(&self, other: &TruncatedSeries) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "series on boxes ({} vars, N={}) and ({} vars, N={})",
                self.nvars(),
                self.order(),
                other.nvars(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries {
            shape: self.shape.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries {
            shape: self.shape.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scalar_mul(&-Rational::one())
    }

    pub fn scalar_mul(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Box-truncated product. Exact on the box because both factors are
    /// supported on non-negative exponents.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_same(other)?;
        let (sparse, dense) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let shape = &self.shape;
        let mut out = vec![Rational::zero(); shape.size];
        let n = shape.order;
        let mut limit = vec![0u32; shape.nvars];
        for (ia, ca) in sparse.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = shape.decode(ia);
            for (l, &k) in limit.iter_mut().zip(&ma) {
                *l = n - k;
            }
            shape.for_each_below(&limit, |ib, _| {
                let cb = &dense.coeffs[ib];
                if !cb.is_zero() {
                    out[ia + ib] += ca * cb;
                }
            });
        }
        Ok(TruncatedSeries {
            shape: shape.clone(),
            coeffs: out,
        })
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Result<TruncatedSeries> {
        self.mul(&TruncatedSeries::from_poly(p, self.order())?)
    }

    /// Multiplicative inverse by back-substitution over the support of
    /// `self`: `q_m = -(1/s_0) sum_{0 != k <= m} s_k q_{m-k}`. Index order is
    /// a valid elimination order since `index(m - k) < index(m)`.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let support: Vec<(usize, Vec<u32>, &Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, self.shape.decode(i), c))
            .collect();
        let shape = &self.shape;
        let mut q = vec![Rational::zero(); shape.size];
        q[0] = inv0.clone();
        for idx in 1..shape.size {
            let m = shape.decode(idx);
            let mut acc = Rational::zero();
            for (ik, k, ck) in &support {
                if k.iter().zip(&m).all(|(a, b)| a <= b) {
                    let prev = &q[idx - ik];
                    if !prev.is_zero() {
                        acc += *ck * prev;
                    }
                }
            }
            if !acc.is_zero() {
                q[idx] = -(acc * &inv0);
            }
        }
        Ok(TruncatedSeries {
            shape: shape.clone(),
            coeffs: q,
        })
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow_int(&self, k: i64) -> Result<TruncatedSeries> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = TruncatedSeries::one(self.nvars(), self.order())?;
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients multiplied by `(-1)^{|m|}`. Applying it twice is the
    /// identity; turns the signed expansion of `1/I` into the counts `c_m`.
    pub fn sign_flipped(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let deg: u32 = self.shape.decode(i).iter().sum();
                if deg % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        TruncatedSeries {
            shape: self.shape.clone(),
            coeffs,
        }
    }

    /// The unsigned coefficients `c_m` of a signed expansion
    /// `sum (-1)^{|m|} c_m x^m`.
    pub fn unsigned_cm(&self) -> TruncatedSeries {
        self.sign_flipped()
    }

    /// `c_{(k,...,k)}` for `k = 0..=N`.
    pub fn diagonal(&self) -> Vec<Rational> {
        (0..=self.order())
            .map(|k| self.coeffs[self.shape.index(&vec![k; self.nvars()])].clone())
            .collect()
    }

    /// Multiplies by the monomial `c x^e` (shifting the support, dropping
    /// what leaves the box).
    pub fn shift(&self, e: &[u32], c: &Rational) -> Result<TruncatedSeries> {
        if e.len() != self.nvars() {
            return Err(Error::ShapeMismatch("monomial length".into()));
        }
        let mut out = TruncatedSeries::zero(self.nvars(), self.order())?;
        if c.is_zero() || !self.shape.contains(e) {
            return Ok(out);
        }
        let off = self.shape.index(e);
        let limit: Vec<u32> = e.iter().map(|&k| self.order() - k).collect();
        self.shape.for_each_below(&limit, |i, _| {
            if !self.coeffs[i].is_zero() {
                out.coeffs[i + off] = &self.coeffs[i] * c;
            }
        });
        Ok(out)
    }

    pub fn to_json(&self, signed: bool) -> SeriesJson {
        let view = if signed { self.clone() } else { self.unsigned_cm() };
        SeriesJson {
            nvars: self.nvars(),
            order: self.order(),
            signed,
            terms: view
                .nonzero()
                .map(|(m, c)| TermJson {
                    m,
                    c: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(j.nvars, j.order)?;
        for t in &j.terms {
            s.set_coefficient(&t.m, parse_rational(&t.c)?)?;
        }
        Ok(if j.signed { s } else { s.unsigned_cm() })
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[n={}, N={}]{{", self.nvars(), self.order())?;
        for (i, (m, c)) in self.nonzero().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// Coefficient dump: the polynomial term list plus box order and sign flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub nvars: usize,
    #[serde(rename = "N")]
    pub order: u32,
    pub signed: bool,
    pub terms: Vec<TermJson>,
}

/// `1/p` on the box.
pub fn invert(p: &MultiPoly, order: u32) -> Result<TruncatedSeries> {
    TruncatedSeries::from_poly(p, order)?.invert()
}

/// `p^{-s}` for `p = 1 + u`, as the finite binomial sum
/// `sum_k binom(-s, k) u^k` (finite on the box since `u^k` has total degree
/// at least `k`).
pub fn pow_neg_s(p: &MultiPoly, s: &Rational, order: u32) -> Result<TruncatedSeries> {
    let c0 = p.constant_term();
    if !c0.is_one() {
        return Err(Error::ConstantTermNotOne(format_rational(&c0)));
    }
    let n = p.nvars();
    let u = &(p.clone()) - &MultiPoly::one(n);
    let u = TruncatedSeries::from_poly(&u, order)?;
    let neg_s = -s.clone();
    let mut acc = TruncatedSeries::one(n, order)?;
    let mut power = TruncatedSeries::one(n, order)?;
    let max_k = n as u64 * order as u64;
    for k in 1..=max_k {
        power = power.mul(&u)?;
        if power.is_zero() {
            break;
        }
        let b = binomial_rational(&neg_s, k);
        if !b.is_zero() {
            acc = acc.add(&power.scalar_mul(&b))?;
        }
    }
    Ok(acc)
}

/// `p^{-1/2}`.
pub fn sqrt_inv(p: &MultiPoly, order: u32) -> Result<TruncatedSeries> {
    pow_neg_s(p, &Rational::new(1.into(), 2.into()), order)
}

/// The square root `p^{1/2}` normalized to constant term `+1`.
pub fn sqrt(p: &MultiPoly, order: u32) -> Result<TruncatedSeries> {
    pow_neg_s(p, &Rational::new((-1).into(), 2.into()), order)
}
