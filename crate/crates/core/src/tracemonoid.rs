//! Words over the vertices of a graph in which two distinct letters commute
//! exactly when the vertices are not adjacent, and counts of their
//! commutation classes (traces).
//!
//! `1 / I_g(-x)` has the number of traces with content `m` as its coefficient
//! of `x^m`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest word length accepted by [`brute_force_count`].
pub const BRUTE_FORCE_MAX_LEN: u32 = 10;

pub fn commutes(g: &Graph, a: usize, b: usize) -> bool {
    a != b && !g.has_edge(a, b)
}

fn check_letters(g: &Graph, word: &[usize]) -> Result<()> {
    let n = g.vertex_count();
    match word.iter().find(|&&c| c == 0 || c > n) {
        Some(c) => Err(Error::invalid(format!(
            "letter {c} is not a vertex of a graph on {n} vertices"
        ))),
        None => Ok(()),
    }
}

/// Lexicographically smallest word in the trace class of `word`: repeatedly
/// pull to the front the smallest letter that commutes with everything
/// before its first remaining occurrence.
pub fn foata_normal_form(g: &Graph, word: &[usize]) -> Result<Vec<usize>> {
    check_letters(g, word)?;
    let mut rest = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for (pos, &c) in rest.iter().enumerate() {
            if best.is_some_and(|b| rest[b] <= c) {
                continue;
            }
            if rest[..pos].iter().all(|&p| commutes(g, p, c)) {
                best = Some(pos);
            }
        }
        let pos = best.expect("the first letter can always move to the front");
        out.push(rest.remove(pos));
    }
    Ok(out)
}

fn check_content(g: &Graph, m: &[u32]) -> Result<()> {
    if m.len() != g.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "content has {} entries for a graph on {} vertices",
            m.len(),
            g.vertex_count()
        )));
    }
    if m.len() > 64 {
        return Err(Error::ResourceLimit(
            "trace counting supports at most 64 letters".into(),
        ));
    }
    Ok(())
}

/// Number of traces with content `m`, by counting lexicographic normal forms.
///
/// A word is in normal form iff it has no factor `b u a` with `a < b` where
/// `a` commutes with `b` and with every letter of `u`. The state records, for
/// each letter `a`, whether such a `b u` is currently open at the end of the
/// word (in which case `a` may not come next).
pub fn count_traces(g: &Graph, m: &[u32]) -> Result<BigUint> {
    check_content(g, m)?;
    let n = g.vertex_count();
    let comm: Vec<u64> = (1..=n)
        .map(|c| {
            (1..=n)
                .filter(|&a| commutes(g, a, c))
                .fold(0u64, |mask, a| mask | 1 << (a - 1))
        })
        .collect();
    let mut memo = HashMap::new();
    let mut remaining = m.to_vec();
    Ok(count_from(&comm, &mut remaining, 0, &mut memo))
}

fn count_from(
    comm: &[u64],
    remaining: &mut Vec<u32>,
    forbidden: u64,
    memo: &mut HashMap<(Vec<u32>, u64), BigUint>,
) -> BigUint {
    if remaining.iter().all(|&k| k == 0) {
        return BigUint::one();
    }
    let key = (remaining.clone(), forbidden);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for c in 0..remaining.len() {
        if remaining[c] == 0 || forbidden >> c & 1 == 1 {
            continue;
        }
        // letters smaller than c, or already forbidden, that commute with c
        let below = (1u64 << c) - 1;
        let next = comm[c] & (below | forbidden);
        remaining[c] -= 1;
        total += count_from(comm, remaining, next, memo);
        remaining[c] += 1;
    }
    memo.insert(key, total.clone());
    total
}

/// Distinct normal forms over all rearrangements of the content `m`.
pub fn brute_force_count(g: &Graph, m: &[u32]) -> Result<BigUint> {
    check_content(g, m)?;
    let len: u32 = m.iter().sum();
    if len > BRUTE_FORCE_MAX_LEN {
        return Err(Error::ResourceLimit(format!(
            "brute force over words of length {len} (limit {BRUTE_FORCE_MAX_LEN})"
        )));
    }
    let mut classes = HashSet::new();
    let mut remaining = m.to_vec();
    let mut word = Vec::with_capacity(len as usize);
    let mut err = None;
    rearrangements(&mut remaining, &mut word, &mut |w| match foata_normal_form(g, w) {
        Ok(nf) => {
            classes.insert(nf);
        }
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(BigUint::from(classes.len())),
    }
}

fn rearrangements(remaining: &mut Vec<u32>, word: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if remaining.iter().all(|&k| k == 0) {
        f(word);
        return;
    }
    for c in 0..remaining.len() {
        if remaining[c] > 0 {
            remaining[c] -= 1;
            word.push(c + 1);
            rearrangements(remaining, word, f);
            word.pop();
            remaining[c] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::graph::{make_complete, make_cycle, make_empty, make_path};

    fn nf(g: &Graph, w: &[usize]) -> Vec<usize> {
        foata_normal_form(g, w).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(nf(&make_empty(2).unwrap(), &[2, 1]), vec![1, 2]);
        assert_eq!(nf(&make_complete(2).unwrap(), &[2, 1]), vec![2, 1]);
        assert_eq!(nf(&make_path(3).unwrap(), &[3, 1, 2]), vec![1, 3, 2]);
        assert_eq!(nf(&make_path(3).unwrap(), &[2, 3, 1, 1]), vec![2, 1, 1, 3]);
        assert!(foata_normal_form(&make_path(3).unwrap(), &[4]).is_err());
        assert!(foata_normal_form(&make_path(3).unwrap(), &[0]).is_err());
    }

    #[test]
    fn counts() {
        let e3 = make_empty(3).unwrap();
        assert_eq!(count_traces(&e3, &[2, 1, 3]).unwrap(), BigUint::one());
        let k2 = make_complete(2).unwrap();
        for (a, b) in [(0, 0), (1, 3), (4, 2), (3, 3)] {
            let want = binomial(a + b, a).to_biguint().unwrap();
            assert_eq!(count_traces(&k2, &[a as u32, b as u32]).unwrap(), want);
            assert_eq!(brute_force_count(&k2, &[a as u32, b as u32]).unwrap(), want);
        }
        let l3 = make_path(3).unwrap();
        assert_eq!(count_traces(&l3, &[1, 1, 1]).unwrap(), BigUint::from(4u32));
        assert_eq!(brute_force_count(&l3, &[1, 1, 1]).unwrap(), BigUint::from(4u32));
        let c4 = make_cycle(4).unwrap();
        assert_eq!(count_traces(&c4, &[1, 1, 1, 1]).unwrap(), BigUint::from(14u32));
        assert_eq!(brute_force_count(&c4, &[1, 1, 1, 1]).unwrap(), BigUint::from(14u32));
        let k3 = make_complete(3).unwrap();
        assert_eq!(brute_force_count(&k3, &[2, 1, 0]).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn limits_and_shapes() {
        let k2 = make_complete(2).unwrap();
        assert!(matches!(brute_force_count(&k2, &[6, 5]), Err(Error::ResourceLimit(_))));
        assert!(count_traces(&k2, &[6, 5]).is_ok());
        assert!(matches!(count_traces(&k2, &[1]), Err(Error::ShapeMismatch(_))));
    }
}
