//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};
use crate::graph::{enumerate_independent_sets, make_cycle, Graph};

/// Exponent vector `m = (m_1, ..., m_n)`.
///
/// Ordered graded-lexicographically: lower total degree first, then within a
/// degree the vector with the larger leading exponent first (so `x1` sorts
/// before `x2`, and `x1*x3` before `x2*x4`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Exponents(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    fn plus(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Exponents::zero(nvars), c)
    }

    /// The variable `x_i`, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable x{i} outside 1..={nvars}");
        Self::monomial(Exponents::unit(nvars, i - 1), Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ShapeMismatch(format!(
                    "exponent vector of length {} in a ring of {nvars} variables",
                    e.len()
                )));
            }
            p.add_term(Exponents(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponents::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ShapeMismatch(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.plus(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "point of dimension {} for a polynomial in {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes `values[i]` for `x_{i+1}`. All values must live in one ring,
    /// which becomes the ring of the result.
    pub fn substitute(&self, values: &[MultiPoly]) -> Result<MultiPoly> {
        if values.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "{} substitution values for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let target = match values.first() {
            Some(v) => v.nvars,
            None => return Ok(self.clone()),
        };
        if values.iter().any(|v| v.nvars != target) {
            return Err(Error::ShapeMismatch(
                "substitution values live in different rings".into(),
            ));
        }
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (v, &k) in values.iter().zip(&e.0) {
                if k > 0 {
                    t = &t * &v.pow(k);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-embeds into a ring of `nvars` variables, sending `x_{i+1}` to
    /// `x_{map[i]}` (1-based targets).
    pub fn inject(&self, nvars: usize, map: &[usize]) -> Result<MultiPoly> {
        if map.len() != self.nvars || map.iter().any(|&t| t == 0 || t > nvars) {
            return Err(Error::invalid("bad variable injection map"));
        }
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; nvars];
            for (&k, &t) in e.0.iter().zip(map) {
                ne[t - 1] += k;
            }
            out.add_term(Exponents(ne), c.clone());
        }
        Ok(out)
    }

    /// Partial derivative with respect to `x_{i+1}` (0-based `i`).
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[i] -= 1;
            out.add_term(ne, c * rat(k as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Prepends a variable `x_0` and pads every term to total degree `d`.
    pub fn homogenize(&self, d: u32) -> Result<MultiPoly> {
        if d < self.degree() {
            return Err(Error::invalid(format!(
                "homogenization degree {d} below the polynomial degree {}",
                self.degree()
            )));
        }
        let mut out = MultiPoly::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut ne = Vec::with_capacity(self.nvars + 1);
            ne.push(d - e.total_degree());
            ne.extend_from_slice(&e.0);
            out.add_term(Exponents(ne), c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson {
                m: e.0.clone(),
                c: format_rational(c),
            })
            .collect()
    }

    pub fn from_json(nvars: usize, terms: &[TermJson]) -> Result<MultiPoly> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.m.clone(), parse_rational(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(nvars, parsed)
    }
}

/// One serialized term: `{"m": [exponents], "c": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub m: Vec<u32>,
    pub c: String,
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scalar_mul(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Writes e.g. `1+x1+x2-1/2*x1^2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

/// Sum of the squarefree monomials `x^I` over the independent sets `I` of `g`.
pub fn independence_polynomial(g: &Graph) -> MultiPoly {
    let n = g.vertex_count();
    let mut p = MultiPoly::zero(n);
    for set in enumerate_independent_sets(g) {
        let mut e = vec![0u32; n];
        for &v in set.as_slice() {
            e[v - 1] = 1;
        }
        p.add_term(Exponents(e), Rational::one());
    }
    p
}

/// Independence polynomial `I_n` of the cycle `C_n`, extended by
/// `I_1 = 1 + x_1` and `I_2 = 1 + x_1 + x_2`.
pub fn cycle_polynomial(n: usize) -> Result<MultiPoly> {
    match n {
        0 => Err(Error::invalid("cycle polynomial needs n >= 1")),
        1 | 2 => Ok((1..=n).fold(MultiPoly::one(n), |acc, i| &acc + &MultiPoly::var(n, i))),
        _ => Ok(independence_polynomial(&make_cycle(n)?)),
    }
}

/// Multivariate Fibonacci polynomial `F_k`, living in `max(k-2, 0)` variables:
/// `F_0 = 0`, `F_1 = 1`, `F_j = F_{j-1} + x_{j-2} F_{j-2}`.
pub fn fibonacci_poly(k: usize) -> MultiPoly {
    let nvars = k.saturating_sub(2);
    let mut prev = MultiPoly::zero(nvars); // F_0
    if k == 0 {
        return prev;
    }
    let mut cur = MultiPoly::one(nvars); // F_1
    for j in 2..=k {
        let next = if j >= 3 {
            &cur + &(&MultiPoly::var(nvars, j - 2) * &prev)
        } else {
            cur.clone()
        };
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `F_k` with its `j`-th variable replaced by `args[j]`; the result lives in
/// the ring of `nvars` variables shared by the arguments.
pub fn fibonacci_poly_at(k: usize, args: &[MultiPoly], nvars: usize) -> Result<MultiPoly> {
    let arity = k.saturating_sub(2);
    if args.len() != arity {
        return Err(Error::invalid(format!(
            "F_{k} takes {arity} arguments, got {}",
            args.len()
        )));
    }
    if args.iter().any(|a| a.nvars() != nvars) {
        return Err(Error::ShapeMismatch("argument ring mismatch".into()));
    }
    let f = fibonacci_poly(k);
    if arity == 0 {
        return Ok(MultiPoly::constant(nvars, f.constant_term()));
    }
    f.substitute(args)
}

/// `Delta = I_n^2 - (-1)^n 4 x_1 ... x_n`.
pub fn delta_poly(n: usize) -> Result<MultiPoly> {
    let i_n = cycle_polynomial(n)?;
    let prod = MultiPoly::monomial(Exponents(vec![1; n]), Rational::one());
    let sign = if n.is_multiple_of(2) { rat(-4) } else { rat(4) };
    Ok(&i_n.pow(2) + &prod.scalar_mul(&sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;
    use crate::graph::{make_complete, make_path};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn one(n: usize) -> MultiPoly {
        MultiPoly::one(n)
    }

    #[test]
    fn ring_basics() {
        let a = &one(2) + &x(2, 1);
        let b = &one(2) + &x(2, 2);
        let want = &(&(&one(2) + &x(2, 1)) + &x(2, 2)) + &(&x(2, 1) * &x(2, 2));
        assert_eq!(&a * &b, want);

        let p = &(&one(2) + &x(2, 1)) + &x(2, 2);
        assert_eq!(p.evaluate(&[rat(1), rat(1)]).unwrap(), rat(3));
        assert!(p.evaluate(&[rat(1)]).is_err());

        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);

        assert!(a.checked_add(&one(3)).is_err());
        assert!(a.checked_mul(&one(3)).is_err());
    }

    #[test]
    fn display_order() {
        let p = independence_polynomial(&make_cycle(4).unwrap());
        assert_eq!(p.to_string(), "1+x1+x2+x3+x4+x1*x3+x2*x4");
        let q = &x(2, 1).scalar_mul(&rat_frac(-1, 2)) + &x(2, 2).pow(2);
        assert_eq!(q.to_string(), "-1/2*x1+x2^2");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
    }

    fn from_sets(n: usize, sets: &[&[usize]]) -> MultiPoly {
        MultiPoly::from_terms(
            n,
            sets.iter().map(|s| {
                let mut e = vec![0; n];
                for &v in s.iter() {
                    e[v - 1] = 1;
                }
                (e, rat(1))
            }),
        )
        .unwrap()
    }

    #[test]
    fn independence_polynomials() {
        let l4 = independence_polynomial(&make_path(4).unwrap());
        let want = from_sets(4, &[&[], &[1], &[2], &[3], &[4], &[1, 3], &[2, 4], &[1, 4]]);
        assert_eq!(l4, want);

        for n in 1..=5 {
            let k = independence_polynomial(&make_complete(n).unwrap());
            let want = (1..=n).fold(one(n), |acc, i| &acc + &x(n, i));
            assert_eq!(k, want);
        }

        let c4 = independence_polynomial(&make_cycle(4).unwrap());
        let want = from_sets(4, &[&[], &[1], &[2], &[3], &[4], &[1, 3], &[2, 4]]);
        assert_eq!(c4, want);
    }

    #[test]
    fn fibonacci() {
        assert_eq!(fibonacci_poly(0), MultiPoly::zero(0));
        assert_eq!(fibonacci_poly(1), one(0));
        assert_eq!(fibonacci_poly(2), one(0));
        assert_eq!(fibonacci_poly(3), &one(1) + &x(1, 1));
        assert_eq!(fibonacci_poly(5), from_sets(3, &[&[], &[1], &[2], &[3], &[1, 3]]));
        for n in 1..=10 {
            assert_eq!(independence_polynomial(&make_path(n).unwrap()), fibonacci_poly(n + 2));
        }
    }

    #[test]
    fn fibonacci_substitution() {
        // F_3(x_2) in two variables: 1 + x_2
        let f = fibonacci_poly_at(3, &[x(2, 2)], 2).unwrap();
        assert_eq!(f, &one(2) + &x(2, 2));
        // F_5(x_3, x_4, x_5) = 1 + x_3 + x_4 + x_5 + x_3 x_5
        let f = fibonacci_poly_at(5, &[x(5, 3), x(5, 4), x(5, 5)], 5).unwrap();
        assert_eq!(f, from_sets(5, &[&[], &[3], &[4], &[5], &[3, 5]]));
        // F_3(7) = 8
        let f = fibonacci_poly_at(3, &[MultiPoly::constant(0, rat(7))], 0).unwrap();
        assert_eq!(f.constant_term(), rat(8));
        assert!(fibonacci_poly_at(5, &[x(2, 1)], 2).is_err());
        assert_eq!(fibonacci_poly_at(2, &[], 3).unwrap(), one(3));
    }

    #[test]
    fn delta_and_homogenization() {
        let d2 = delta_poly(2).unwrap();
        let i2 = &(&one(2) + &x(2, 1)) + &x(2, 2);
        assert_eq!(d2, &i2.pow(2) - &(&x(2, 1) * &x(2, 2)).scalar_mul(&rat(4)));

        let h2 = d2.homogenize(2).unwrap();
        let y = |i: usize| MultiPoly::var(3, i + 1);
        let want = [
            y(0).pow(2),
            y(1).pow(2),
            y(2).pow(2),
            (&y(0) * &y(1)).scalar_mul(&rat(2)),
            (&y(0) * &y(2)).scalar_mul(&rat(2)),
            (&y(1) * &y(2)).scalar_mul(&rat(-2)),
        ]
        .into_iter()
        .fold(MultiPoly::zero(3), |a, b| &a + &b);
        assert_eq!(h2, want);

        let d3 = delta_poly(3).unwrap();
        let i3 = cycle_polynomial(3).unwrap();
        let v3 = MultiPoly::monomial(Exponents(vec![1, 1, 1]), rat(4));
        assert_eq!(d3, &i3.pow(2) + &v3);
        let y = |i: usize| MultiPoly::var(4, i + 1);
        let s = &(&(&y(0) + &y(1)) + &y(2)) + &y(3);
        let want = &(&y(0) * &s.pow(2)) + &(&(&y(1) * &y(2)) * &y(3)).scalar_mul(&rat(4));
        assert_eq!(d3.homogenize(3).unwrap(), want);
        assert!(d3.homogenize(2).is_err());

        assert_eq!(
            (&one(1) + &x(1, 1)).homogenize(1).unwrap(),
            &MultiPoly::var(2, 1) + &MultiPoly::var(2, 2)
        );

        let d4 = delta_poly(4).unwrap();
        assert_eq!(d4.evaluate(&[rat(1), rat(1), rat(1), rat(1)]).unwrap(), rat(45));
        assert_eq!(d4.degree(), 4);
    }

    #[test]
    fn delta3_double_points() {
        let h = delta_poly(3).unwrap().homogenize(3).unwrap();
        let grad = h.gradient();
        for pt in [[-1, 1, 1, 1], [-1, 0, 0, 1], [-1, 0, 1, 0], [-1, 1, 0, 0]] {
            let pt: Vec<Rational> = pt.iter().map(|&v| rat(v)).collect();
            assert!(h.evaluate(&pt).unwrap().is_zero());
            for g in &grad {
                assert!(g.evaluate(&pt).unwrap().is_zero(), "{pt:?}");
            }
        }
        // a smooth point of the surface, for contrast
        let pt = [rat(0), rat(1), rat(0), rat(0)];
        assert!(h.evaluate(&pt).unwrap().is_zero());
        assert!(grad.iter().any(|g| !g.evaluate(&pt).unwrap().is_zero()));
    }

    #[test]
    fn gradient_simple() {
        assert_eq!(x(1, 1).pow(2).gradient(), vec![x(1, 1).scalar_mul(&rat(2))]);
    }

    #[test]
    fn json_roundtrip() {
        let p = &independence_polynomial(&make_cycle(5).unwrap()).scalar_mul(&rat_frac(3, 7)) - &x(5, 2).pow(3);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(MultiPoly::from_json(5, &back).unwrap(), p);
        assert!(j.starts_with(r#"[{"m":[0,0,0,0,0],"c":"3/7"}"#));
    }

    #[test]
    fn inject_and_substitute() {
        let p = &one(2) + &(&x(2, 1) * &x(2, 2));
        let q = p.inject(3, &[3, 1]).unwrap();
        assert_eq!(q, &one(3) + &(&x(3, 3) * &x(3, 1)));
        let r = p.substitute(&[x(1, 1), x(1, 1)]).unwrap();
        assert_eq!(r, &one(1) + &x(1, 1).pow(2));
    }

    #[test]
    fn induced_specialization() {
        use crate::graph::VertexSet;
        let g = make_cycle(5).unwrap();
        let j = VertexSet::new(vec![1, 2, 4]);
        let sub = independence_polynomial(&g.induced_subgraph(&j).unwrap());
        // set x_3 = x_5 = 0 and rename x_4 -> x_3
        let vals = vec![x(3, 1), x(3, 2), MultiPoly::zero(3), x(3, 3), MultiPoly::zero(3)];
        assert_eq!(independence_polynomial(&g).substitute(&vals).unwrap(), sub);
    }
}
