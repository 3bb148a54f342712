//! Identities specific to the cycle graph `C_n`: the 2x2 transfer matrix,
//! Carlitz's product-of-binomials expansion of `Delta^{-1/2}`, the Laurent
//! series `R`, de Bruijn's diagonal sums, Dixon-type identities, and the
//! algebraic solutions of the cyclic Nahm system.
//!
//! Conventions: `v = (-1)^n x_1 ... x_n`, `Delta = I_n^2 - 4v`, and
//! `c_{m,j} = prod_i binom(m_i + m_{i+1}, m_i + j)` with indices mod `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{binomial, factorial, rat, Rational};
use crate::chordal::IntMatrix;
use crate::error::{Error, Result};
use crate::nahm::{solve_nahm, NahmSolution};
use crate::poly::{cycle_polynomial, delta_poly, fibonacci_poly_at, Exponents, MultiPoly};
use crate::series::{invert, pow_neg_s, sqrt, TruncatedSeries};

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::invalid(format!("cycle length {n} is below {min}")));
    }
    Ok(())
}

fn x1_to_xn(n: usize) -> MultiPoly {
    MultiPoly::monomial(Exponents(vec![1; n]), Rational::one())
}

/// `v = (-1)^n x_1 ... x_n`.
pub fn signed_volume(n: usize) -> MultiPoly {
    let p = x1_to_xn(n);
    if n.is_multiple_of(2) {
        p
    } else {
        -p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub entries: [[MultiPoly; 2]; 2],
}

impl TransferMatrix {
    pub fn trace(&self) -> MultiPoly {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> MultiPoly {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }
}

/// `M = prod_{i=1}^n [[1, -1], [-x_i, 0]]`, multiplied left to right.
pub fn transfer_matrix(n: usize) -> Result<TransferMatrix> {
    require_n(n, 1)?;
    let one = MultiPoly::one(n);
    let zero = MultiPoly::zero(n);
    let mut m = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for i in 1..=n {
        let f = [[one.clone(), -one.clone()], [-MultiPoly::var(n, i), zero.clone()]];
        let mut next = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
        for r in 0..2 {
            for c in 0..2 {
                next[r][c] = &(&m[r][0] * &f[0][c]) + &(&m[r][1] * &f[1][c]);
            }
        }
        m = next;
    }
    Ok(TransferMatrix { entries: m })
}

/// `tr M = I_n` and `det M = v`. For `n = 1` the trace is `1`, not
/// `I_1 = 1 + x_1`, so the check starts at `n = 2`.
pub fn trace_is_indep(n: usize) -> Result<bool> {
    require_n(n, 2)?;
    let m = transfer_matrix(n)?;
    Ok(m.trace() == cycle_polynomial(n)? && m.det() == signed_volume(n))
}

/// `c_{m,j}`; zero unless `|j| <= min(m)`.
pub fn c_mj(m: &[u32], j: i64) -> BigInt {
    let n = m.len();
    let mut c = BigInt::one();
    for i in 0..n {
        let (a, b) = (m[i] as i64, m[(i + 1) % n] as i64);
        c *= binomial(a + b, a + j);
        if c.is_zero() {
            break;
        }
    }
    c
}

fn min_exponent(m: &[u32]) -> i64 {
    m.iter().copied().min().unwrap_or(0) as i64
}

/// Unsigned coefficients `c_{m,0}` of `Delta^{-1/2}`.
pub fn carlitz_coefficients(n: usize, order: u32) -> Result<TruncatedSeries> {
    require_n(n, 2)?;
    TruncatedSeries::from_fn(n, order, |m| Rational::from_integer(c_mj(m, 0)))
}

/// Unsigned coefficients `sum_{|j| <= min m} (-1)^j c_{m,j}` of `1 / I_n`.
pub fn cycle_inverse_coefficients(n: usize, order: u32) -> Result<TruncatedSeries> {
    require_n(n, 2)?;
    TruncatedSeries::from_fn(n, order, |m| {
        let k = min_exponent(m);
        let s: BigInt = (-k..=k)
            .map(|j| if j % 2 == 0 { c_mj(m, j) } else { -c_mj(m, j) })
            .sum();
        Rational::from_integer(s)
    })
}

/// A Laurent polynomial in `z` with box-truncated series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentInZ {
    pub nvars: usize,
    pub order: u32,
    pub layers: BTreeMap<i64, TruncatedSeries>,
}

impl LaurentInZ {
    pub fn layer(&self, j: i64) -> Result<TruncatedSeries> {
        match self.layers.get(&j) {
            Some(s) => Ok(s.clone()),
            None => TruncatedSeries::zero(self.nvars, self.order),
        }
    }

    /// Substitutes a value for `z`.
    pub fn evaluate(&self, z: &Rational) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::zero(self.nvars, self.order)?;
        for (&j, s) in &self.layers {
            let w = if j >= 0 {
                num_traits::pow(z.clone(), j as usize)
            } else {
                num_traits::pow(z.recip(), j.unsigned_abs() as usize)
            };
            acc = acc.add(&s.scalar_mul(&w))?;
        }
        Ok(acc)
    }
}

/// `R = sum_{m, j} (-1)^{|m|} c_{m,j} z^j x^m`.
pub fn r_series(n: usize, order: u32) -> Result<LaurentInZ> {
    require_n(n, 2)?;
    let mut layers = BTreeMap::new();
    let top = order as i64;
    for j in -top..=top {
        let s = TruncatedSeries::from_fn(n, order, |m| Rational::from_integer(c_mj(m, j)))?;
        layers.insert(j, s.sign_flipped());
    }
    Ok(LaurentInZ {
        nvars: n,
        order,
        layers,
    })
}

/// `R (I_n^2 - (-1)^n (z + 2 + z^{-1}) x_1...x_n) = I_n`, layer by layer in `z`.
pub fn check_r_rational(n: usize, order: u32) -> Result<bool> {
    let r = r_series(n, order)?;
    let i_n = cycle_polynomial(n)?;
    let i_sq = TruncatedSeries::from_poly(&i_n.pow(2), order)?;
    let i_ser = TruncatedSeries::from_poly(&i_n, order)?;
    let vol = signed_volume(n);
    let top = order as i64 + 1;
    for j in -top..=top {
        let around = r
            .layer(j - 1)?
            .add(&r.layer(j)?.scalar_mul(&rat(2)))?
            .add(&r.layer(j + 1)?)?;
        let lhs = r.layer(j)?.mul(&i_sq)?.sub(&around.mul_poly(&vol)?)?;
        let want = if j == 0 {
            i_ser.clone()
        } else {
            TruncatedSeries::zero(n, order)?
        };
        if lhs != want {
            log::debug!("R identity fails in z-layer {j}");
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v^l / I_n^{2l+1} = (2/(2l)!) sum_m (-1)^{|m|}
/// sum_{j=l}^{min m} (-1)^{l+j} j (j+l-1)!/(j-l)! c_{m,j} x^m`.
pub fn check_power_expansion(n: usize, l: u32, order: u32) -> Result<bool> {
    require_n(n, 2)?;
    if l == 0 {
        return Err(Error::invalid("power expansion needs l >= 1"));
    }
    let s = Rational::from_integer((2 * l as i64 + 1).into());
    let lhs = pow_neg_s(&cycle_polynomial(n)?, &s, order)?.mul_poly(&signed_volume(n).pow(l))?;
    let li = l as i64;
    let pref = Rational::new(BigInt::from(2), factorial(2 * l as u64));
    let rhs = TruncatedSeries::from_fn(n, order, |m| {
        let mut acc = BigInt::zero();
        for j in li..=min_exponent(m) {
            let w = BigInt::from(j) * factorial((j + li - 1) as u64) / factorial((j - li) as u64);
            let term = w * c_mj(m, j);
            if (li + j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        &pref * Rational::from_integer(acc)
    })?
    .sign_flipped();
    Ok(lhs == rhs)
}

/// Dixon-type identity:
/// `(1/k!) sum_j (-1)^j (2j+k) (j+k-1)!/j! binom(m_1+m_2+k, m_2+k+j)
/// binom(m_2+m_3+k, m_3+k+j) binom(m_3+m_1+k, m_1+k+j) = (k+|m|)!/(k! m_1! m_2! m_3!)`.
pub fn dixon_check(m: [u32; 3], k: u32) -> Result<bool> {
    let (lhs, rhs) = dixon_sides(m, k)?;
    Ok(lhs == rhs)
}

pub fn dixon_sides(m: [u32; 3], k: u32) -> Result<(Rational, Rational)> {
    if k == 0 {
        return Err(Error::invalid("Dixon identity needs k >= 1"));
    }
    let [a, b, c] = m.map(i64::from);
    let k = k as i64;
    let mut sum = BigInt::zero();
    for j in 0..=a.min(b).min(c) {
        let w = BigInt::from(2 * j + k) * factorial((j + k - 1) as u64) / factorial(j as u64);
        let t = w * binomial(a + b + k, b + k + j) * binomial(b + c + k, c + k + j) * binomial(c + a + k, a + k + j);
        if j % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    let kf = factorial(k as u64);
    let lhs = Rational::new(sum, kf.clone());
    let rhs = Rational::new(
        factorial((k + a + b + c) as u64),
        kf * factorial(a as u64) * factorial(b as u64) * factorial(c as u64),
    );
    Ok((lhs, rhs))
}

/// `S(n, k) = sum_{|j| <= k} (-1)^j binom(2k, k+j)^n`.
pub fn debruijn(n: u32, k: u32) -> BigInt {
    let k = k as i64;
    (-k..=k)
        .map(|j| {
            let b = num_traits::pow(binomial(2 * k, k + j), n as usize);
            if j % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum()
}

/// `kappa_n = (2 cos(pi/2n))^{2n}`, the growth rate of `S(n, k)`.
pub fn kappa(n: u32) -> f64 {
    match kappa_exact(n) {
        Some(r) => r.to_f64().unwrap_or(f64::NAN),
        None => (2.0 * (std::f64::consts::PI / (2.0 * n as f64)).cos()).powi(2 * n as i32),
    }
}

/// `kappa_n` when it is rational: `n <= 3`.
pub fn kappa_exact(n: u32) -> Option<Rational> {
    match n {
        1 => Some(rat(0)),
        2 => Some(rat(4)),
        3 => Some(rat(27)),
        _ => None,
    }
}

/// `(a_i, b_i, c_i)` for `i` in `1..=n`:
/// `a_i = x_i F_n(x_{i+2}, ..., x_{i-1})`, `b_i = I_n` with `x_i` negated,
/// `c_i = -F_n(x_{i+1}, ..., x_{i-2})`.
pub fn quadratic_coefficients(n: usize, i: usize) -> Result<(MultiPoly, MultiPoly, MultiPoly)> {
    require_n(n, 3)?;
    if i == 0 || i > n {
        return Err(Error::invalid(format!("index {i} outside 1..={n}")));
    }
    let var = |k: usize| MultiPoly::var(n, (k - 1) % n + 1);
    let run = |start: usize| -> Vec<MultiPoly> { (0..n - 2).map(|q| var(start + q)).collect() };
    let a = &var(i) * &fibonacci_poly_at(n, &run(i + 2), n)?;
    let mut flip = vec![MultiPoly::zero(n); n];
    for (k, f) in flip.iter_mut().enumerate() {
        *f = if k + 1 == i { -var(k + 1) } else { var(k + 1) };
    }
    let b = cycle_polynomial(n)?.substitute(&flip)?;
    let c = -fibonacci_poly_at(n, &run(i + 1), n)?;
    Ok((a, b, c))
}

/// Solves the cyclic system `1 - z_i = x_i z_i z_{i-1}` (indices mod `n`).
pub fn cyclic_nahm(n: usize, order: u32) -> Result<NahmSolution> {
    require_n(n, 2)?;
    solve_nahm(&IntMatrix::cyclic(n), order)
}

/// Checks `b_i^2 - 4 a_i c_i = Delta` for every `i`, and that `z_{i-1}` is
/// the root `(-b_i + sqrt(Delta)) / (2 a_i)` of `a_i X^2 + b_i X + c_i` on the
/// box, with `sqrt(Delta)` normalized to constant term 1.
pub fn quadratic_extension_check(n: usize, order: u32) -> Result<bool> {
    require_n(n, 3)?;
    let delta = delta_poly(n)?;
    let sol = cyclic_nahm(n, order)?;
    let root_delta = sqrt(&delta, order)?;
    for i in 1..=n {
        let (a, b, c) = quadratic_coefficients(n, i)?;
        if &(&b * &b) - &(&(&a * &c) * &MultiPoly::constant(n, rat(4))) != delta {
            log::debug!("discriminant identity fails at i={i}");
            return Ok(false);
        }
        let z = &sol.z[(i + n - 2) % n];
        let quad = z
            .mul(z)?
            .mul_poly(&a)?
            .add(&z.mul_poly(&b)?)?
            .add(&TruncatedSeries::from_poly(&c, order)?)?;
        if !quad.is_zero() {
            log::debug!("quadratic residual nonzero at i={i}");
            return Ok(false);
        }
        let lin = z
            .mul_poly(&a)?
            .scalar_mul(&rat(2))
            .add(&TruncatedSeries::from_poly(&b, order)?)?;
        if lin != root_delta {
            log::debug!("sign of the square root differs at i={i}");
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the algebraic identities satisfied by the cyclic Nahm solution,
/// with `u = z_1 ... z_n`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CyclicChecks {
    /// `tr M = I_n`, `det M = v`.
    pub transfer: bool,
    /// `M (z_n, 1)^T = uv (z_n, 1)^T`.
    pub eigenvector: bool,
    /// `u^{-1}` and `uv` are the roots of `X^2 - I_n X + v`.
    pub roots: bool,
    /// `I_n = u^{-1} + uv`.
    pub trace_sum: bool,
    /// `D^{-1} = u^{-1} - uv`.
    pub d_inverse: bool,
    /// `D^{-2} = Delta`.
    pub d_squared: bool,
    /// Every `z_i` satisfies its equation on the box.
    pub residual: bool,
}

impl CyclicChecks {
    pub fn all(&self) -> bool {
        self.transfer
            && self.eigenvector
            && self.roots
            && self.trace_sum
            && self.d_inverse
            && self.d_squared
            && self.residual
    }
}

pub fn cyclic_identities(n: usize, order: u32) -> Result<CyclicChecks> {
    let sol = cyclic_nahm(n, order)?;
    let m = transfer_matrix(n)?;
    let v = TruncatedSeries::from_poly(&signed_volume(n), order)?;
    let u = sol.z_product()?;
    let u_inv = u.invert()?;
    let uv = u.mul(&v)?;
    let i_n = TruncatedSeries::from_poly(&cycle_polynomial(n)?, order)?;

    let zn = &sol.z[n - 1];
    let row = |r: usize| -> Result<TruncatedSeries> {
        zn.mul_poly(&m.entries[r][0])?
            .add(&TruncatedSeries::from_poly(&m.entries[r][1], order)?)
    };
    let eigenvector = row(0)? == uv.mul(zn)? && row(1)? == uv;

    let trace_sum = u_inv.add(&uv)? == i_n;
    let roots = trace_sum && u_inv.mul(&uv)? == v;
    let d_inverse = sol.d.invert()? == u_inv.sub(&uv)?;
    let d_squared = sol.d.mul(&sol.d)?.invert()? == TruncatedSeries::from_poly(&delta_poly(n)?, order)?;
    Ok(CyclicChecks {
        transfer: trace_is_indep(n)?,
        eigenvector,
        roots,
        trace_sum,
        d_inverse,
        d_squared,
        residual: sol.residual_vanishes()?,
    })
}

/// The Horn–Kapranov point `(phi_0; phi_1, ..., phi_n)` of `lambda_0..lambda_n`:
/// `phi_0 = prod (lambda_i + lambda_0) / prod (lambda_i - lambda_0)` and
/// `phi_i = -(lambda_i - lambda_0)(lambda_i + lambda_0) /
/// ((lambda_i + lambda_{i+1})(lambda_i + lambda_{i-1}))`.
pub fn horn_kapranov_point(n: usize, lambdas: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
    require_n(n, 2)?;
    if lambdas.len() != n + 1 {
        return Err(Error::invalid(format!(
            "expected {} parameters, got {}",
            n + 1,
            lambdas.len()
        )));
    }
    let l0 = &lambdas[0];
    let l = &lambdas[1..];
    let mut num = Rational::one();
    let mut den = Rational::one();
    for li in l {
        num *= li + l0;
        den *= li - l0;
    }
    if den.is_zero() || num.is_zero() {
        return Err(Error::invalid("phi_0 is zero or undefined"));
    }
    let mut phi = Vec::with_capacity(n);
    for i in 0..n {
        let d = (&l[i] + &l[(i + 1) % n]) * (&l[i] + &l[(i + n - 1) % n]);
        if d.is_zero() {
            return Err(Error::invalid(format!("phi_{} has a vanishing denominator", i + 1)));
        }
        phi.push(-((&l[i] - l0) * (&l[i] + l0)) / d);
    }
    Ok((num / den, phi))
}

/// `Delta(phi_0; phi) = I_n(phi)^2 - (-1)^n (phi_0 + 2 + phi_0^{-1}) phi_1...phi_n`
/// vanishes at the Horn–Kapranov point.
pub fn horn_kapranov_check(n: usize, lambdas: &[Rational]) -> Result<bool> {
    let (phi0, phi) = horn_kapranov_point(n, lambdas)?;
    let i_val = cycle_polynomial(n)?.evaluate(&phi)?;
    let prod: Rational = phi.iter().fold(Rational::one(), |acc, p| acc * p);
    let t = &phi0 + rat(2) + phi0.recip();
    let signed = if n.is_multiple_of(2) { t * prod } else { -(t * prod) };
    Ok((&i_val * &i_val - signed).is_zero())
}

/// `I_n(phi_1, ..., phi_n) = (1 + u_1...u_n) / prod (1 + u_i)` for
/// `phi_i = -1 / ((1 + u_i)(1 + u_{i-1}^{-1}))`, as a polynomial identity
/// after multiplying through by `prod (1 + u_i)^2`.
pub fn u_identity_check(n: usize) -> Result<bool> {
    if !(2..=8).contains(&n) {
        return Err(Error::invalid(format!(
            "u identity is checked for 2 <= n <= 8, got {n}"
        )));
    }
    let one = MultiPoly::one(n);
    let factor: Vec<MultiPoly> = (1..=n).map(|i| &one + &MultiPoly::var(n, i)).collect();
    let mut lhs = MultiPoly::zero(n);
    for (set, _) in cycle_polynomial(n)?.terms() {
        // phi_i = -u_{i-1} / ((1 + u_i)(1 + u_{i-1}))
        let mut uses = vec![0u32; n];
        let mut term = one.clone();
        for i in (0..n).filter(|&i| set.0[i] == 1) {
            let prev = (i + n - 1) % n;
            term = &term * &(-MultiPoly::var(n, prev + 1));
            uses[i] += 1;
            uses[prev] += 1;
        }
        for (k, &used) in uses.iter().enumerate() {
            term = &term * &factor[k].pow(2 - used);
        }
        lhs = &lhs + &term;
    }
    let prod_factors = factor.iter().fold(one.clone(), |acc, f| &acc * f);
    let rhs = &(&one + &x1_to_xn(n)) * &prod_factors;
    Ok(lhs == rhs)
}

/// Signed inverse of `I_{C_n}` on the box, for comparisons.
pub fn cycle_inverse_series(n: usize, order: u32) -> Result<TruncatedSeries> {
    invert(&cycle_polynomial(n)?, order)
}
