//! Nahm systems `1 - z_i = x_i prod_j z_j^{a_ij}` over formal power series,
//! and the series `D` attached to an integer matrix `A`.
//!
//! Throughout, `a_j(m) = sum_i a_ij m_i` is the linear form of column `j`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial_poly, binomial_rational, Rational};
use crate::chordal::{nahm_matrix, peo_for, IntMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::independence_polynomial;
use crate::series::{invert, BoxShape, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NahmSolution {
    pub matrix: IntMatrix,
    pub z: Vec<TruncatedSeries>,
    pub d: TruncatedSeries,
}

impl NahmSolution {
    pub fn order(&self) -> u32 {
        self.d.order()
    }

    /// `x_i prod_j z_j^{a_ij}` recomputed with plain series products.
    pub fn rhs(&self, i: usize) -> Result<TruncatedSeries> {
        let n = self.matrix.size();
        let mut acc = TruncatedSeries::from_fn(n, self.order(), |m| {
            let unit = m.iter().enumerate().all(|(k, &e)| e == u32::from(k == i));
            if unit {
                Rational::one()
            } else {
                Rational::zero()
            }
        })?;
        for (j, zj) in self.z.iter().enumerate() {
            let a = self.matrix.get(i, j);
            if a != 0 {
                acc = acc.mul(&zj.pow_int(a)?)?;
            }
        }
        Ok(acc)
    }

    /// Checks `1 - z_i - x_i prod_j z_j^{a_ij} = 0` on the box for every `i`.
    pub fn residual_vanishes(&self) -> Result<bool> {
        let one = TruncatedSeries::one(self.matrix.size(), self.order())?;
        for (i, zi) in self.z.iter().enumerate() {
            if !one.sub(zi)?.sub(&self.rhs(i)?)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn z_product(&self) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::one(self.matrix.size(), self.order())?;
        for zi in &self.z {
            acc = acc.mul(zi)?;
        }
        Ok(acc)
    }
}

/// Nodes of the product recipe evaluated one total degree at a time.
enum Node {
    Z,
    Inv(usize),
    Mul(usize, usize),
}

struct Graded {
    shape: BoxShape,
    layers: Vec<Vec<(usize, Vec<u32>)>>,
}

impl Graded {
    fn new(shape: BoxShape) -> Self {
        let max = shape.nvars() * shape.order() as usize;
        let mut layers = vec![Vec::new(); max + 1];
        for (idx, m) in shape.points().enumerate() {
            let d: u32 = m.iter().sum();
            layers[d as usize].push((idx, m));
        }
        Graded { shape, layers }
    }

    /// `sum_{k <= m} a_k b_{m-k}`, skipping `k = 0` when `skip_zero`.
    fn convolve(&self, a: &[Rational], b: &[Rational], idx: usize, m: &[u32], skip_zero: bool) -> Rational {
        let mut acc = Rational::zero();
        self.shape.for_each_below(m, |ik, _| {
            if skip_zero && ik == 0 {
                return;
            }
            let ca = &a[ik];
            if ca.is_zero() {
                return;
            }
            let cb = &b[idx - ik];
            if !cb.is_zero() {
                acc += ca * cb;
            }
        });
        acc
    }
}

/// Solves the Nahm system of `a` on the box `{0..=order}^n`.
///
/// The fixed point `z_i = 1 - x_i prod_j z_j^{a_ij}` determines the
/// coefficients of `z` in total degree `d` from the products in degree
/// `d - 1`, so the iteration is carried out one degree layer at a time with
/// all intermediate products (and inverses for negative entries) updated in
/// step. This reaches the same fixed point as repeated full substitution.
pub fn solve_nahm(a: &IntMatrix, order: u32) -> Result<NahmSolution> {
    let n = a.size();
    let shape = BoxShape::new(n, order)?;
    let graded = Graded::new(shape.clone());

    let mut nodes: Vec<Node> = (0..n).map(|_| Node::Z).collect();
    let mut inverse_of = vec![None; n];
    let mut products: Vec<Option<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut factors = Vec::new();
        for (j, inv) in inverse_of.iter_mut().enumerate() {
            let e = a.get(i, j);
            let node = if e >= 0 {
                j
            } else {
                *inv.get_or_insert_with(|| {
                    nodes.push(Node::Inv(j));
                    nodes.len() - 1
                })
            };
            factors.extend(std::iter::repeat_n(node, e.unsigned_abs() as usize));
        }
        let mut it = factors.into_iter();
        let mut acc = it.next();
        for f in it {
            nodes.push(Node::Mul(acc.expect("chain start"), f));
            acc = Some(nodes.len() - 1);
        }
        products.push(acc);
    }
    log::debug!("nahm solve: n={n}, N={order}, {} recipe nodes", nodes.len());

    let mut values = vec![vec![Rational::zero(); shape.size()]; nodes.len()];
    for d in 0..graded.layers.len() {
        for (idx, m) in &graded.layers[d] {
            for i in 0..n {
                values[i][*idx] = if d == 0 {
                    Rational::one()
                } else if m[i] == 0 {
                    Rational::zero()
                } else {
                    let below = idx - shape.index(&unit(n, i));
                    match products[i] {
                        Some(p) => -values[p][below].clone(),
                        None if below == 0 => -Rational::one(),
                        None => Rational::zero(),
                    }
                };
            }
        }
        for (k, node) in nodes.iter().enumerate().skip(n) {
            for (idx, m) in &graded.layers[d] {
                let c = match *node {
                    Node::Z => unreachable!(),
                    Node::Inv(j) if d == 0 => values[j][0].recip(),
                    Node::Inv(j) => -graded.convolve(&values[j], &values[k], *idx, m, true),
                    Node::Mul(x, y) => graded.convolve(&values[x], &values[y], *idx, m, false),
                };
                values[k][*idx] = c;
            }
        }
    }

    let z = values
        .into_iter()
        .take(n)
        .map(|coeffs| TruncatedSeries::from_fn(n, order, |m| coeffs[shape.index(m)].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(NahmSolution {
        matrix: a.clone(),
        z,
        d: d_series_binomial(a, order)?,
    })
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    (0..n).map(|k| u32::from(k == i)).collect()
}

fn linear_forms(a: &IntMatrix, m: &[u32]) -> Vec<BigInt> {
    let n = a.size();
    (0..n)
        .map(|j| (0..n).map(|i| BigInt::from(a.get(i, j)) * m[i]).sum())
        .collect()
}

fn parity_sign(m: &[u32]) -> Rational {
    if m.iter().map(|&k| k as u64).sum::<u64>() % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `sum_m (-1)^{|m|} prod_j binom(a_j(m), m_j) x^m`.
pub fn d_series_binomial(a: &IntMatrix, order: u32) -> Result<TruncatedSeries> {
    lagrange_sum(a, &vec![0; a.size()], order)
}

/// `sum_m (-1)^{|m|} prod_j binom(s_j + a_j(m), m_j) x^m`.
fn lagrange_sum(a: &IntMatrix, s: &[i64], order: u32) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(a.size(), order, |m| {
        let forms = linear_forms(a, m);
        let mut c = BigInt::one();
        for ((top, &k), &sj) in forms.iter().zip(m).zip(s) {
            c *= binomial_poly(&(top + sj), k as u64);
            if c.is_zero() {
                return Rational::zero();
            }
        }
        parity_sign(m) * Rational::from_integer(c)
    })
}

/// `D = 1 / det(I + diag((1 - z_i)/z_i) A)`, with the determinant taken by
/// fraction-free elimination over the series ring. Every leading principal
/// minor has constant term 1, so the pivots are units.
pub fn d_series_det(sol: &NahmSolution) -> Result<TruncatedSeries> {
    let n = sol.matrix.size();
    let order = sol.order();
    let one = TruncatedSeries::one(n, order)?;
    if n == 0 {
        return Ok(one);
    }
    let t = sol
        .z
        .iter()
        .map(|zi| zi.invert()?.sub(&one))
        .collect::<Result<Vec<_>>>()?;
    let mut m: Vec<Vec<TruncatedSeries>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = sol.matrix.get(i, j);
                    let entry = t[i].scalar_mul(&Rational::from_integer(a.into()));
                    if i == j {
                        entry.add(&one)
                    } else {
                        Ok(entry)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut prev_pivot_inv = one.clone();
    for k in 0..n - 1 {
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot.mul(&m[i][j])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.mul(&prev_pivot_inv)?;
            }
        }
        prev_pivot_inv = pivot.invert()?;
    }
    m[n - 1][n - 1].invert()
}

/// `z_1^{s_1} ... z_n^{s_n}` through the Lagrange inversion sum divided by `D`.
pub fn lagrange_monomial(sol: &NahmSolution, s: &[i64]) -> Result<TruncatedSeries> {
    if s.len() != sol.matrix.size() {
        return Err(Error::ShapeMismatch(format!(
            "{} exponents for a system of size {}",
            s.len(),
            sol.matrix.size()
        )));
    }
    lagrange_sum(&sol.matrix, s, sol.order())?.mul(&sol.d.invert()?)
}

/// Checks `D(x) = D*(x_i / (1 + x_n)^{a_in}) / (1 + x_n)` on the box, where
/// `D*` belongs to the leading `(n-1)`-minor of `a`.
///
/// Substituting a monomial gives `y^{m'} = x^{m'} (1 + x_n)^{-e}` with
/// `e = sum_i a_in m_i`, so the right-hand side has coefficient
/// `D*_{m'} binom(-e - 1, m_n)` at `(m', m_n)`.
pub fn check_d_recursion(a: &IntMatrix, order: u32) -> Result<bool> {
    if !a.is_unit_upper_triangular() {
        return Err(Error::NotUnitUpperTriangular);
    }
    let n = a.size();
    if n == 0 {
        return Ok(true);
    }
    let d = d_series_binomial(a, order)?;
    let minor = a.leading_minor();
    let d_star = d_series_binomial(&minor, order)?;
    let rhs = TruncatedSeries::from_fn(n, order, |m| {
        let (head, last) = m.split_at(n - 1);
        let c = d_star.coefficient(head).expect("minor box contains the head");
        if c.is_zero() {
            return c;
        }
        let e: i64 = (0..n - 1).map(|i| a.get(i, n - 1) * head[i] as i64).sum();
        c * binomial_rational(&Rational::from_integer((-e - 1).into()), last[0] as u64)
    })?;
    Ok(rhs == d)
}

/// Relabels `g` along a perfect elimination ordering (keeping the labels if
/// they already form one). Returns the relabeled graph and the ordering.
fn peo_labeled(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    let order = peo_for(g)?;
    Ok((g.relabel(&order)?, order))
}

/// Moves a series from PEO labels back to the labels of the original graph:
/// vertex `order[k]` of `g` is vertex `k + 1` after relabeling.
fn unrelabel(s: &TruncatedSeries, order: &[usize]) -> Result<TruncatedSeries> {
    if order.iter().enumerate().all(|(k, &v)| v == k + 1) {
        return Ok(s.clone());
    }
    TruncatedSeries::from_fn(s.nvars(), s.order(), |m| {
        let permuted: Vec<u32> = order.iter().map(|&v| m[v - 1]).collect();
        s.coefficient(&permuted).expect("permuted exponent is in the box")
    })
}

/// `D(nahm_matrix(g)) = 1 / I_g` on the box, after relabeling `g` along a
/// perfect elimination ordering when needed.
pub fn d_equals_inverse_indep(g: &Graph, order: u32) -> Result<bool> {
    let (h, _) = peo_labeled(g)?;
    let d = d_series_binomial(&nahm_matrix(&h), order)?;
    Ok(d == invert(&independence_polynomial(&h), order)?)
}

/// `I_g^{-s} = sum_m (-1)^{|m|} prod_j binom(s - 1 + a_j(m), m_j) x^m` for
/// chordal `g`, in the labels of `g`.
pub fn chordal_power_formula(g: &Graph, s: &Rational, order: u32) -> Result<TruncatedSeries> {
    let (h, peo) = peo_labeled(g)?;
    let a = nahm_matrix(&h);
    let shift = s - Rational::one();
    let series = TruncatedSeries::from_fn(a.size(), order, |m| {
        let forms = linear_forms(&a, m);
        let mut c = parity_sign(m);
        for (top, &k) in forms.iter().zip(m) {
            c *= binomial_rational(&(&shift + Rational::from_integer(top.clone())), k as u64);
            if c.is_zero() {
                break;
            }
        }
        c
    })?;
    unrelabel(&series, &peo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use crate::graph::{make_complete, make_cycle, make_path};
    use crate::poly::MultiPoly;
    use crate::series::pow_neg_s;

    fn swap() -> IntMatrix {
        IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn figure() -> Graph {
        Graph::from_edges(4, &[(1, 2), (1, 3), (2, 4), (3, 4), (2, 3)]).unwrap()
    }

    /// Series of `num / (1 - x_1 x_2)`.
    fn over_one_minus_x1x2(num: &MultiPoly, order: u32) -> TruncatedSeries {
        let den = MultiPoly::from_terms(2, vec![(vec![0, 0], rat(1)), (vec![1, 1], rat(-1))]).unwrap();
        TruncatedSeries::from_poly(num, order)
            .unwrap()
            .mul(&invert(&den, order).unwrap())
            .unwrap()
    }

    #[test]
    fn swap_system() {
        let sol = solve_nahm(&swap(), 6).unwrap();
        let one = MultiPoly::one(2);
        assert_eq!(sol.d, over_one_minus_x1x2(&one, 6));
        let num = &one - &MultiPoly::var(2, 1);
        assert_eq!(sol.z[0], over_one_minus_x1x2(&num, 6));
        assert!(sol.residual_vanishes().unwrap());
        assert_eq!(d_series_det(&sol).unwrap(), sol.d);
        let z1 = lagrange_monomial(&sol, &[1, 0]).unwrap();
        assert_eq!(z1, sol.z[0]);
    }

    #[test]
    fn trivial_systems() {
        let sol = solve_nahm(&IntMatrix::zeros(3), 3).unwrap();
        for (i, zi) in sol.z.iter().enumerate() {
            let want = &MultiPoly::one(3) - &MultiPoly::var(3, i + 1);
            assert_eq!(*zi, TruncatedSeries::from_poly(&want, 3).unwrap());
        }
        assert_eq!(sol.d, TruncatedSeries::one(3, 3).unwrap());
        assert_eq!(d_series_det(&sol).unwrap(), sol.d);

        let one = IntMatrix::identity(1);
        let sol = solve_nahm(&one, 5).unwrap();
        let want = invert(&(&MultiPoly::one(1) + &MultiPoly::var(1, 1)), 5).unwrap();
        assert_eq!(sol.z[0], want);
        assert!(check_d_recursion(&one, 5).unwrap());
    }

    #[test]
    fn negative_entries() {
        let a = IntMatrix::from_rows(vec![vec![1, -1], vec![2, -2]]).unwrap();
        let sol = solve_nahm(&a, 3).unwrap();
        assert!(sol.residual_vanishes().unwrap());
        assert_eq!(d_series_det(&sol).unwrap(), sol.d);
        for s in [[-1, 2], [2, -2], [1, 1]] {
            assert_eq!(
                lagrange_monomial(&sol, &s).unwrap(),
                sol.z[0]
                    .pow_int(s[0])
                    .unwrap()
                    .mul(&sol.z[1].pow_int(s[1]).unwrap())
                    .unwrap()
            );
        }
    }

    #[test]
    fn cyclic_c4_det() {
        let sol = solve_nahm(&IntMatrix::cyclic(4), 2).unwrap();
        assert!(sol.residual_vanishes().unwrap());
        assert_eq!(d_series_det(&sol).unwrap(), sol.d);
    }

    #[test]
    fn triangular_products() {
        let mats = [
            nahm_matrix(&make_complete(3).unwrap()),
            nahm_matrix(&make_path(3).unwrap()),
            nahm_matrix(&figure()),
        ];
        for a in &mats {
            let sol = solve_nahm(a, 3).unwrap();
            assert!(sol.residual_vanishes().unwrap());
            assert_eq!(sol.z_product().unwrap(), sol.d);
            assert_eq!(d_series_det(&sol).unwrap(), sol.d);
            assert!(check_d_recursion(a, 3).unwrap());
            let ones = vec![1; a.size()];
            assert_eq!(lagrange_monomial(&sol, &ones).unwrap(), sol.d);
        }
        assert!(check_d_recursion(&nahm_matrix(&make_path(4).unwrap()), 2).unwrap());
        assert_eq!(check_d_recursion(&swap(), 2), Err(Error::NotUnitUpperTriangular));
    }

    #[test]
    fn k2_binomial_is_inverse_indep() {
        let d = d_series_binomial(&nahm_matrix(&make_complete(2).unwrap()), 4).unwrap();
        let i = independence_polynomial(&make_complete(2).unwrap());
        assert_eq!(d, invert(&i, 4).unwrap());
    }

    #[test]
    fn inverse_indep_examples() {
        for n in 1..=6 {
            let l = make_path(n).unwrap();
            assert!(d_equals_inverse_indep(&l, 3).unwrap());
            let d = d_series_binomial(&nahm_matrix(&l), 3).unwrap();
            for (m, c) in d.nonzero() {
                let mut want = BigInt::one();
                for j in 1..n {
                    want *= crate::arith::binomial((m[j] + m[j - 1]) as i64, m[j] as i64);
                }
                assert_eq!(num_traits::Signed::abs(c), Rational::from_integer(want));
            }
        }
        for n in 1..=4 {
            assert!(d_equals_inverse_indep(&make_complete(n).unwrap(), 3).unwrap());
        }
        assert!(d_equals_inverse_indep(&figure(), 3).unwrap());
        assert_eq!(
            d_equals_inverse_indep(&make_cycle(4).unwrap(), 2),
            Err(Error::NotChordal)
        );
    }

    #[test]
    fn closed_form_matches_binomial_series() {
        let cases = [
            (make_complete(2).unwrap(), rat(2)),
            (make_path(3).unwrap(), rat_frac(1, 2)),
            (figure(), rat_frac(-3, 4)),
            (make_path(3).unwrap(), rat(-2)),
        ];
        for (g, s) in &cases {
            let lhs = chordal_power_formula(g, s, 2).unwrap();
            let rhs = pow_neg_s(&independence_polynomial(g), s, 2).unwrap();
            assert_eq!(lhs, rhs, "s = {s}");
        }
        let k2 = chordal_power_formula(&make_complete(2).unwrap(), &rat(2), 2).unwrap();
        // (1 + x1 + x2)^{-2}: coefficient of x1 x2 is 6
        assert_eq!(k2.coefficient(&[1, 1]).unwrap(), rat(6));
    }

    #[test]
    fn closed_form_relabels_non_peo_labelings() {
        // triangle 1-2-4 with a pendant 3 at 4; vertex 4 comes last but its
        // earlier neighbors 1, 3 are not adjacent
        let g = Graph::from_edges(4, &[(4, 1), (4, 2), (4, 3), (1, 2)]).unwrap();
        let s = rat_frac(1, 3);
        let lhs = chordal_power_formula(&g, &s, 2).unwrap();
        let rhs = pow_neg_s(&independence_polynomial(&g), &s, 2).unwrap();
        assert_eq!(lhs, rhs);
        assert!(d_equals_inverse_indep(&g, 2).unwrap());
    }
}
