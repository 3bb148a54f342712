//! Bounded-degree Horn test: does `c_{m+e_i} / c_m` agree on the box with a
//! rational function `P_i(m) / Q_i(m)` of total degree at most `d`?
//!
//! Each direction is a homogeneous linear system
//! `c_{m+e_i} Q(m) - c_m P(m) = 0` in the coefficients of `P` and `Q`. It is
//! eliminated modulo a 61-bit prime with the equations in shuffled order;
//! full rank mod `p` already proves the kernel over `Q` trivial. Otherwise a
//! kernel vector is lifted by rational reconstruction (falling back to exact
//! fraction-free elimination on the independent rows) and only reported after
//! it passes an exact check over every equation of the box.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, ModEchelon};
use crate::poly::{MultiPoly, TermJson};
use crate::series::{invert, TruncatedSeries};

const SEED: u64 = 0x005e_ed0f_4042;

/// True iff every coefficient on the box is nonzero.
pub fn check_nonvanishing(lattice: &TruncatedSeries) -> bool {
    first_zero(lattice).is_none()
}

fn first_zero(lattice: &TruncatedSeries) -> Option<Vec<u32>> {
    lattice
        .shape()
        .points()
        .find(|m| lattice.coefficient(m).map(|c| c.is_zero()).unwrap_or(true))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionResult {
    Fit {
        direction: usize,
        degree: u32,
        p: MultiPoly,
        q: MultiPoly,
    },
    Failure {
        direction: usize,
        degree: u32,
        order: u32,
        /// Rank of the system at the requested degree.
        rank: usize,
        unknowns: usize,
        equations: usize,
    },
}

impl DirectionResult {
    pub fn is_fit(&self) -> bool {
        matches!(self, DirectionResult::Fit { .. })
    }

    pub fn direction(&self) -> usize {
        match self {
            DirectionResult::Fit { direction, .. } | DirectionResult::Failure { direction, .. } => *direction,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornFitReport {
    pub order: u32,
    pub degree: u32,
    pub nonvanishing: bool,
    pub directions: Vec<DirectionResult>,
}

impl HornFitReport {
    /// Every coefficient is nonzero and every direction has a fit.
    pub fn horn_up_to_bounds(&self) -> bool {
        self.nonvanishing && self.directions.iter().all(DirectionResult::is_fit)
    }

    pub fn verdict(&self) -> String {
        if !self.nonvanishing {
            format!("not Horn: a coefficient vanishes on the box N={}", self.order)
        } else if self.horn_up_to_bounds() {
            format!("Horn up to (N={}, d={})", self.order, self.degree)
        } else {
            format!(
                "no bounded fit at (N={}, d={}); evidence against Hornness, not a proof",
                self.order, self.degree
            )
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        #[serde(tag = "result", rename_all = "lowercase")]
        enum Dir {
            Fit {
                direction: usize,
                degree: u32,
                p: Vec<TermJson>,
                q: Vec<TermJson>,
            },
            Failure {
                direction: usize,
                degree: u32,
                order: u32,
                rank: usize,
                unknowns: usize,
                equations: usize,
            },
        }
        let dirs: Vec<Dir> = self
            .directions
            .iter()
            .map(|d| match d {
                DirectionResult::Fit {
                    direction,
                    degree,
                    p,
                    q,
                } => Dir::Fit {
                    direction: *direction,
                    degree: *degree,
                    p: p.to_json(),
                    q: q.to_json(),
                },
                DirectionResult::Failure {
                    direction,
                    degree,
                    order,
                    rank,
                    unknowns,
                    equations,
                } => Dir::Failure {
                    direction: *direction,
                    degree: *degree,
                    order: *order,
                    rank: *rank,
                    unknowns: *unknowns,
                    equations: *equations,
                },
            })
            .collect();
        serde_json::json!({
            "N": self.order,
            "d": self.degree,
            "nonvanishing": self.nonvanishing,
            "horn_up_to_bounds": self.horn_up_to_bounds(),
            "verdict": self.verdict(),
            "directions": dirs,
        })
    }
}

/// Monomials in `n` variables of total degree at most `d`, in graded order.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=d {
        push_exact(n, deg, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn push_exact(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 >= n {
        if n > 0 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        prefix.push(k);
        push_exact(n, left - k, prefix, out);
        prefix.pop();
    }
}

fn unknown_count(n: usize, d: u32) -> usize {
    2 * monomials(n, d).len()
}

/// One equation `a Q(m) - b P(m) = 0` with `a = c_{m+e_i}`, `b = c_m`
/// scaled to integers.
struct Equation {
    m: Vec<u32>,
    a: BigInt,
    b: BigInt,
}

fn equations(lattice: &TruncatedSeries, dir: usize) -> Result<Vec<Equation>> {
    let shape = lattice.shape();
    let mut out = Vec::new();
    for m in shape.points() {
        if m[dir] == shape.order() {
            continue;
        }
        let mut next = m.clone();
        next[dir] += 1;
        let cn = lattice.coefficient(&next)?;
        let c = lattice.coefficient(&m)?;
        if c.is_zero() {
            return Err(Error::VanishingCoefficient(m));
        }
        if cn.is_zero() {
            return Err(Error::VanishingCoefficient(next));
        }
        let den = num_integer::Integer::lcm(cn.denom(), c.denom());
        let scale = Rational::from_integer(den);
        out.push(Equation {
            a: (&cn * &scale).to_integer(),
            b: (&c * &scale).to_integer(),
            m,
        });
    }
    Ok(out)
}

fn monomial_values(m: &[u32], monos: &[Vec<u32>]) -> Vec<BigInt> {
    monos
        .iter()
        .map(|mu| {
            m.iter().zip(mu).fold(BigInt::one(), |acc, (&base, &e)| {
                acc * num_traits::pow(BigInt::from(base), e as usize)
            })
        })
        .collect()
}

/// Row over the unknowns `(P coefficients, Q coefficients)`.
fn exact_row(eq: &Equation, monos: &[Vec<u32>]) -> Vec<BigInt> {
    let vals = monomial_values(&eq.m, monos);
    let p_part = vals.iter().map(|v| -(&eq.b * v));
    let q_part = vals.iter().map(|v| &eq.a * v);
    p_part.chain(q_part).collect()
}

fn mod_row(eq: &Equation, monos: &[Vec<u32>]) -> Vec<u64> {
    let a = linalg::reduce(&eq.a);
    let b = linalg::reduce(&eq.b);
    let vals: Vec<u64> = monos
        .iter()
        .map(|mu| {
            eq.m.iter().zip(mu).fold(1u64, |acc, (&base, &e)| {
                linalg::mul_mod(acc, linalg::pow_mod(base as u64, e as u64))
            })
        })
        .collect();
    let p_part = vals.iter().map(|&v| linalg::sub_mod(0, linalg::mul_mod(b, v)));
    let q_part = vals.iter().map(|&v| linalg::mul_mod(a, v));
    p_part.chain(q_part).collect()
}

enum DegreeOutcome {
    FullRank(usize),
    Fit(Vec<BigInt>),
    NoValidFit(usize),
}

fn eval_at(coeffs: &[BigInt], vals: &[BigInt]) -> BigInt {
    coeffs.iter().zip(vals).map(|(c, v)| c * v).sum()
}

/// Exact check of a candidate over every equation, plus `Q(m) != 0` on the
/// whole box.
fn verify(candidate: &[BigInt], eqs: &[Equation], monos: &[Vec<u32>], shape: &crate::series::BoxShape) -> bool {
    let k = monos.len();
    let (p, q) = candidate.split_at(k);
    if q.iter().all(Zero::is_zero) {
        return false;
    }
    let ok_eqs = eqs.iter().all(|eq| {
        let vals = monomial_values(&eq.m, monos);
        &eq.a * eval_at(q, &vals) == &eq.b * eval_at(p, &vals)
    });
    ok_eqs
        && shape
            .points()
            .all(|m| !eval_at(q, &monomial_values(&m, monos)).is_zero())
}

fn lift(v: &[u64]) -> Option<Vec<BigInt>> {
    let rats = v
        .iter()
        .map(|&x| linalg::rational_reconstruct(x))
        .collect::<Option<Vec<_>>>()?;
    Some(linalg::primitive_integer_vector(&rats))
}

/// Kernel candidates: the basis vectors, then a few random integer
/// combinations (a nonvanishing `Q` may need a mix).
fn candidates(basis: &[Vec<BigInt>], rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = basis.to_vec();
    if basis.len() > 1 {
        for _ in 0..16 {
            let mut v = vec![BigInt::zero(); basis[0].len()];
            for b in basis {
                let w = BigInt::from(rng.gen_range(-7i64..=7));
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &w * y;
                }
            }
            out.push(linalg::normalize_integer_vector(v));
        }
    }
    out
}

fn solve_degree(
    eqs: &[Equation],
    order_idx: &[usize],
    n: usize,
    d: u32,
    shape: &crate::series::BoxShape,
) -> DegreeOutcome {
    let monos = monomials(n, d);
    let u = 2 * monos.len();
    let mut ech = ModEchelon::new(u);
    let window = (u / 8).max(32);
    let mut stall = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ d as u64);
    let mut used_rows: Vec<usize> = Vec::new();
    for (count, &k) in order_idx.iter().enumerate() {
        if ech.insert(mod_row(&eqs[k], &monos)) {
            used_rows.push(k);
            stall = 0;
            if ech.rank() == u {
                return DegreeOutcome::FullRank(u);
            }
        } else {
            stall += 1;
        }
        let last = count + 1 == order_idx.len();
        if stall == window || last {
            stall = 0;
            let basis: Option<Vec<Vec<BigInt>>> = ech.kernel().iter().map(|v| lift(v)).collect();
            if let Some(basis) = basis {
                if let Some(c) = candidates(&basis, &mut rng)
                    .into_iter()
                    .find(|c| verify(c, eqs, &monos, shape))
                {
                    return DegreeOutcome::Fit(c);
                }
            }
        }
    }
    // Reconstruction did not produce a verified vector: take the exact kernel
    // of the rows that were independent mod p (hence independent over Q).
    log::debug!("hornfit: exact fallback at degree {d} with {} rows", used_rows.len());
    let rows: Vec<Vec<BigInt>> = used_rows.iter().map(|&k| exact_row(&eqs[k], &monos)).collect();
    let basis = linalg::kernel_exact(&rows, u);
    if basis.is_empty() {
        return DegreeOutcome::FullRank(u);
    }
    match candidates(&basis, &mut rng)
        .into_iter()
        .find(|c| verify(c, eqs, &monos, shape))
    {
        Some(c) => DegreeOutcome::Fit(c),
        None => DegreeOutcome::NoValidFit(used_rows.len()),
    }
}

fn to_poly(n: usize, monos: &[Vec<u32>], coeffs: &[BigInt]) -> MultiPoly {
    let terms = monos
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone())));
    MultiPoly::from_terms(n, terms).expect("monomials have n entries")
}

/// Fits `c_{m+e_i} / c_m = P(m) / Q(m)` with `deg P, deg Q <= d` in the
/// 1-based direction `i`, trying degrees `0..=d` and returning the first
/// verified fit. `P` and `Q` come out with jointly primitive integer
/// coefficients and the first nonzero coefficient of `P` positive.
pub fn fit_ratio(lattice: &TruncatedSeries, direction: usize, d: u32) -> Result<DirectionResult> {
    let n = lattice.nvars();
    if direction == 0 || direction > n {
        return Err(Error::invalid(format!("direction {direction} outside 1..={n}")));
    }
    if let Some(m) = first_zero(lattice) {
        return Err(Error::VanishingCoefficient(m));
    }
    let eqs = equations(lattice, direction - 1)?;
    let unknowns = unknown_count(n, d);
    let mut order_idx: Vec<usize> = (0..eqs.len()).collect();
    order_idx.shuffle(&mut ChaCha8Rng::seed_from_u64(SEED ^ direction as u64));

    let mut last_rank = 0;
    for deg in 0..=d {
        // a low-degree fit is still conclusive when the full degree is not
        let needed = 2 * unknown_count(n, deg);
        if eqs.len() < needed {
            return Err(Error::InsufficientData {
                equations: eqs.len(),
                unknowns: unknown_count(n, deg),
                required: needed,
            });
        }
        match solve_degree(&eqs, &order_idx, n, deg, lattice.shape()) {
            DegreeOutcome::Fit(v) => {
                let monos = monomials(n, deg);
                let (p, q) = v.split_at(monos.len());
                return Ok(DirectionResult::Fit {
                    direction,
                    degree: deg,
                    p: to_poly(n, &monos, p),
                    q: to_poly(n, &monos, q),
                });
            }
            DegreeOutcome::FullRank(r) | DegreeOutcome::NoValidFit(r) => last_rank = r,
        }
    }
    Ok(DirectionResult::Failure {
        direction,
        degree: d,
        order: lattice.order(),
        rank: last_rank,
        unknowns,
        equations: eqs.len(),
    })
}

/// Fits every direction of an arbitrary coefficient lattice.
pub fn horn_check_lattice(lattice: &TruncatedSeries, d: u32) -> Result<HornFitReport> {
    let nonvanishing = check_nonvanishing(lattice);
    let directions = if nonvanishing {
        (1..=lattice.nvars())
            .map(|i| fit_ratio(lattice, i, d))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(HornFitReport {
        order: lattice.order(),
        degree: d,
        nonvanishing,
        directions,
    })
}

/// Horn test for the unsigned coefficients of `1 / I_g`.
pub fn horn_check(g: &Graph, order: u32, d: u32) -> Result<HornFitReport> {
    let lattice = invert(&crate::poly::independence_polynomial(g), order)?.unsigned_cm();
    horn_check_lattice(&lattice, d)
}

/// `P(m) / Q(m)` at a point, for reporting.
pub fn evaluate_fit(p: &MultiPoly, q: &MultiPoly, m: &[u32]) -> Result<Rational> {
    let pt: Vec<Rational> = m.iter().map(|&k| Rational::from_integer(k.into())).collect();
    let den = q.evaluate(&pt)?;
    if den.is_zero() {
        return Err(Error::invalid("denominator vanishes"));
    }
    Ok(p.evaluate(&pt)? / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::graph::{make_complete, make_cycle, make_empty};

    fn lattice(g: &Graph, order: u32) -> TruncatedSeries {
        invert(&crate::poly::independence_polynomial(g), order)
            .unwrap()
            .unsigned_cm()
    }

    fn var(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(monomials(3, 2).len(), 10);
        assert_eq!(monomials(5, 4).len(), 126);
    }

    #[test]
    fn nonvanishing() {
        assert!(check_nonvanishing(&lattice(&make_complete(3).unwrap(), 4)));
        assert!(check_nonvanishing(&lattice(&make_cycle(4).unwrap(), 4)));
        let mut l = lattice(&make_complete(2).unwrap(), 3);
        l.set_coefficient(&[1, 0], rat(0)).unwrap();
        assert!(!check_nonvanishing(&l));
        assert_eq!(fit_ratio(&l, 1, 1), Err(Error::VanishingCoefficient(vec![1, 0])));
    }

    #[test]
    fn k2_ratio() {
        let fit = fit_ratio(&lattice(&make_complete(2).unwrap(), 8), 1, 1).unwrap();
        let one = MultiPoly::one(2);
        match fit {
            DirectionResult::Fit { p, q, degree, .. } => {
                assert_eq!(degree, 1);
                assert_eq!(p, &(&var(2, 1) + &var(2, 2)) + &one);
                assert_eq!(q, &var(2, 1) + &one);
            }
            other => panic!("expected a fit, got {other:?}"),
        }
    }

    #[test]
    fn empty_graph_ratio_is_one() {
        let l = lattice(&make_empty(2).unwrap(), 6);
        for d in 0..=2 {
            match fit_ratio(&l, 2, d).unwrap() {
                DirectionResult::Fit { p, q, degree, .. } => {
                    assert_eq!(degree, 0);
                    assert_eq!(p, MultiPoly::one(2));
                    assert_eq!(q, MultiPoly::one(2));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn c4_has_no_low_degree_fit() {
        let report = horn_check(&make_cycle(4).unwrap(), 8, 4).unwrap();
        assert!(report.nonvanishing);
        assert!(!report.horn_up_to_bounds());
        assert!(report.verdict().contains("not a proof"));
    }

    #[test]
    fn insufficient_data() {
        let l = lattice(&make_complete(3).unwrap(), 1);
        assert!(matches!(fit_ratio(&l, 1, 3), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn low_degree_fit_needs_only_its_own_data() {
        // six equations cannot pin down degree 2, but degree 0 already fits
        let l = lattice(&make_complete(1).unwrap(), 6);
        assert!(fit_ratio(&l, 1, 2).unwrap().is_fit());
    }

    #[test]
    fn scaling_keeps_verdict() {
        let l = lattice(&make_complete(2).unwrap(), 6);
        let scaled = l.scalar_mul(&crate::arith::rat_frac(-7, 3));
        assert_eq!(fit_ratio(&l, 2, 2).unwrap(), fit_ratio(&scaled, 2, 2).unwrap());
    }

    #[test]
    fn json_report() {
        let report = horn_check(&make_complete(2).unwrap(), 6, 3).unwrap();
        let j = report.to_json();
        assert_eq!(j["horn_up_to_bounds"], serde_json::json!(true));
        assert_eq!(j["directions"][0]["result"], serde_json::json!("fit"));
    }
}
