//! Strong linkage, block labels and the edge criteria between standard and
//! costandard objects.
//!
//! Index arguments (`q`, `i`) are zero-based; `α_i = ε_i - ε_{i+1}`.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_data::{
    check_p_dominant, frac, is_neg_int, is_p_dominant, is_pos_int, positive_even_roots, q,
    EvenRoot, Parabolic, Weight, Q,
};

fn orbit_walk(start: &Weight, lower: bool) -> BTreeSet<Weight> {
    let roots = positive_even_roots(start.n());
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(nu) = queue.pop_front() {
        for r in &roots {
            let x = r.pair(&nu);
            let step = if lower {
                is_pos_int(&x)
            } else {
                is_neg_int(&x)
            };
            if step {
                let next = r.reflect(&nu);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// `{μ : μ ↑ λ}`: everything reachable from `λ` by lowering reflections.
pub fn strong_down_set(lambda: &Weight) -> BTreeSet<Weight> {
    orbit_walk(lambda, true)
}

/// `{λ : μ ↑ λ}`.
pub fn strong_up_set(mu: &Weight) -> BTreeSet<Weight> {
    orbit_walk(mu, false)
}

/// `μ ↑ λ`: `μ = λ`, or `μ` is reached from `λ` by a chain `ν ↦ s_β ν` with
/// `⟨ν, β⟩ ∈ Z_{>0}` at each step.
pub fn strongly_linked(mu: &Weight, lambda: &Weight) -> Result<bool> {
    mu.check_same_rank(lambda)?;
    if mu == lambda {
        return Ok(true);
    }
    if mu.sorted() != lambda.sorted() || mu.height() >= lambda.height() {
        return Ok(false);
    }
    Ok(strong_down_set(lambda).contains(mu))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BlockClass {
    #[serde(serialize_with = "ser_q")]
    pub key: Q,
    pub size: usize,
    #[serde(rename = "odd")]
    pub odd_count: usize,
    #[serde(skip)]
    pub indices: Vec<usize>,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Block invariant: per integrality class (in order of first occurrence) its
/// fractional key, size and number of coordinates at odd distance from the key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BlockLabel {
    pub classes: Vec<BlockClass>,
}

pub fn block_label(lambda: &Weight) -> BlockLabel {
    let mut classes: Vec<BlockClass> = Vec::new();
    for (i, x) in lambda.coords().iter().enumerate() {
        let key = frac(x);
        let odd = usize::from((x - key).to_integer().is_odd());
        match classes.iter_mut().find(|c| c.key == key) {
            Some(c) => {
                c.size += 1;
                c.odd_count += odd;
                c.indices.push(i);
            }
            None => classes.push(BlockClass {
                key,
                size: 1,
                odd_count: odd,
                indices: vec![i],
            }),
        }
    }
    BlockLabel { classes }
}

/// Two weights lie in the same block iff they have the same classes, at the
/// same coordinates, with the same odd counts.
pub fn same_block(a: &Weight, b: &Weight) -> Result<bool> {
    a.check_same_rank(b)?;
    let mut la = block_label(a).classes;
    let mut lb = block_label(b).classes;
    la.sort();
    lb.sort();
    Ok(la == lb)
}

/// Representative of the block: each class sits at its key, with `+1` on the
/// first `odd_count` coordinates of the class.
pub fn canonical_representative(lambda: &Weight) -> Weight {
    let mut coords = lambda.coords().to_vec();
    for c in block_label(lambda).classes {
        for (k, &i) in c.indices.iter().enumerate() {
            coords[i] = if k < c.odd_count {
                c.key + Q::one()
            } else {
                c.key
            };
        }
    }
    Weight::new(coords).expect("same rank")
}

/// Number of blocks among weights whose integrality classes are the
/// contiguous blocks of `p`: `Π (n_i + 1)`.
pub fn block_count(p: &Parabolic) -> u64 {
    p.blocks().iter().map(|&b| b as u64 + 1).product()
}

/// One canonical representative per block, for classes laid out as the
/// blocks of `p` with keys `0, 1/k, ..., (k-1)/k`.
pub fn block_representatives(p: &Parabolic) -> Vec<Weight> {
    let k = p.blocks().len() as i64;
    let mut reps = vec![Vec::new()];
    for (b, &size) in p.blocks().iter().enumerate() {
        let key = Q::new(b as i64, k);
        let mut next = Vec::new();
        for prefix in &reps {
            for odd in 0..=size {
                let mut v: Vec<Q> = prefix.clone();
                v.extend((0..size).map(|t| if t < odd { key + Q::one() } else { key }));
                next.push(v);
            }
        }
        reps = next;
    }
    reps.into_iter()
        .map(|v| Weight::new(v).expect("non-empty"))
        .collect()
}

/// `A_q = {j >= q : λ_j = λ_q}`.
pub fn equal_tail(lambda: &Weight, q_idx: usize) -> Result<Vec<usize>> {
    let n = lambda.n();
    if q_idx >= n {
        return Err(Error::IndexOutOfRange { index: q_idx, n });
    }
    Ok((q_idx..n)
        .filter(|&j| lambda.get(j) == lambda.get(q_idx))
        .collect())
}

fn check_simple_index(i: usize, n: usize) -> Result<()> {
    if i + 1 >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// `[Δ^p_λ : L_{λ-2ε_q}] > 0` for `λ - 2ε_q ∈ Σ_p^+`: no `j ∈ A_q` below the
/// last index has `⟨λ, α_j⟩ = 1`.
pub fn nabla_edge(lambda: &Weight, q_idx: usize, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    let tail = equal_tail(lambda, q_idx)?;
    let target = lambda.shift_coord(q_idx, -2);
    if !is_p_dominant(&target, p) {
        return Ok(false);
    }
    let n = lambda.n();
    Ok(tail
        .iter()
        .filter(|&&j| j + 1 < n)
        .all(|&j| EvenRoot::simple(j).pair(lambda) != Q::one()))
}

/// `[Δ^p_λ : L_{λ-ᾱ_i}] > 0`: `α_i` is a Levi root, `λ - ᾱ_i ∈ Σ_p^+`,
/// `⟨λ, α_i⟩ = 1` and `A_i = {i}`.
pub fn delta_edge(lambda: &Weight, i: usize, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    check_simple_index(i, lambda.n())?;
    if !p.same_block(i, i + 1) {
        return Ok(false);
    }
    let alpha = EvenRoot::simple(i);
    let target = lambda - &alpha.bar(lambda.n());
    Ok(is_p_dominant(&target, p)
        && alpha.pair(lambda) == Q::one()
        && equal_tail(lambda, i)? == vec![i])
}

/// The same condition as [`nabla_edge`], phrased through strong linkage:
/// `λ - 2ε_q` is not strongly linked to any `λ - ᾱ_i` with `⟨λ, α_i⟩ = 1`.
pub fn nabla_edge_via_linkage(lambda: &Weight, q_idx: usize, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    let n = lambda.n();
    if q_idx >= n {
        return Err(Error::IndexOutOfRange { index: q_idx, n });
    }
    let target = lambda.shift_coord(q_idx, -2);
    if !is_p_dominant(&target, p) {
        return Ok(false);
    }
    for i in 0..n - 1 {
        let alpha = EvenRoot::simple(i);
        if alpha.pair(lambda) == Q::one() && strongly_linked(&target, &(lambda - &alpha.bar(n)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same condition as [`delta_edge`], phrased through strong linkage:
/// `λ - ᾱ_i` is not strongly linked to any `λ - 2ε_q`.
pub fn delta_edge_via_linkage(lambda: &Weight, i: usize, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    let n = lambda.n();
    check_simple_index(i, n)?;
    if !p.same_block(i, i + 1) {
        return Ok(false);
    }
    let alpha = EvenRoot::simple(i);
    let target = lambda - &alpha.bar(n);
    if !is_p_dominant(&target, p) || alpha.pair(lambda) != Q::one() {
        return Ok(false);
    }
    for q_idx in 0..n {
        if strongly_linked(&target, &lambda.shift_coord(q_idx, -2))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank 3, full category: `⟨λ, α_i⟩ = 1` certifies `[Δ_λ : L_{λ-ᾱ_i}] > 0`.
pub fn unit_step_edge(lambda: &Weight, i: usize) -> Result<bool> {
    if lambda.n() != 3 {
        return Err(Error::UnsupportedRank {
            expected: 3,
            got: lambda.n(),
        });
    }
    check_simple_index(i, 3)?;
    Ok(EvenRoot::simple(i).pair(lambda) == q(1))
}

/// Positivity propagates upward: if `μ ↑ λ` and `[Δ_μ : L_η] > 0` then
/// `[Δ_λ : L_η] > 0`. Returns every `η` certified at `λ` by the given pairs
/// `(μ, η)`.
pub fn propagate_up(lambda: &Weight, certified: &[(Weight, Weight)]) -> Result<BTreeSet<Weight>> {
    let mut out = BTreeSet::new();
    for (mu, eta) in certified {
        if strongly_linked(mu, lambda)? {
            out.insert(eta.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    #[test]
    fn linkage_orientation() {
        assert!(strongly_linked(&w(&[1, 0, 2]), &w(&[1, 2, 0])).unwrap());
        assert!(!strongly_linked(&w(&[1, 2, 0]), &w(&[1, 0, 2])).unwrap());
        assert!(strongly_linked(&w(&[3, 3]), &w(&[3, 3])).unwrap());
        assert!(strongly_linked(&w(&[1, 2]), &w(&[1])).is_err());
    }

    #[test]
    fn up_set_example() {
        let up = strong_up_set(&w(&[1, -1, 3]));
        let expect: BTreeSet<_> = [[1, -1, 3], [3, -1, 1], [1, 3, -1], [3, 1, -1]]
            .iter()
            .map(|x| w(x))
            .collect();
        assert_eq!(up, expect);
    }

    #[test]
    fn non_integral_linkage_stays_in_class() {
        let l: Weight = "1/2,0,1".parse().unwrap();
        let down = strong_down_set(&l);
        assert_eq!(down.len(), 1);
        let l: Weight = "2,1/2,0".parse().unwrap();
        assert!(strong_down_set(&l).contains(&"0,1/2,2".parse().unwrap()));
    }

    #[test]
    fn labels_and_representatives() {
        let l = block_label(&w(&[4, 7, 0]));
        assert_eq!(l.classes.len(), 1);
        assert_eq!(l.classes[0].odd_count, 1);
        assert_eq!(canonical_representative(&w(&[4, 7, 0])), w(&[1, 0, 0]));
        let m: Weight = "0,1/2,1".parse().unwrap();
        assert_eq!(canonical_representative(&m), "1,1/2,0".parse().unwrap());
        assert_eq!(
            serde_json::to_string(&block_label(&w(&[4, 7, 0]))).unwrap(),
            r#"[{"key":"0","size":3,"odd":1}]"#
        );
    }

    #[test]
    fn blocks_separate_class_positions() {
        let a: Weight = "0,1/2".parse().unwrap();
        let b: Weight = "1/2,0".parse().unwrap();
        assert!(!same_block(&a, &b).unwrap());
        assert!(same_block(&w(&[0, 1, 2]), &w(&[3, -2, 0])).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(block_count(&Parabolic::new(vec![2, 1]).unwrap()), 6);
        let reps = block_representatives(&Parabolic::new(vec![2, 1]).unwrap());
        assert_eq!(reps.len(), 6);
        let labels: BTreeSet<_> = reps.iter().map(block_label).collect();
        assert_eq!(labels.len(), 6);
    }

    #[test]
    fn nabla_edge_examples() {
        let b = Parabolic::borel(3);
        assert!(nabla_edge(&w(&[2, 1, 0]), 2, &b).unwrap());
        assert!(!nabla_edge(&w(&[2, 1, 0]), 0, &b).unwrap());
        assert!(nabla_edge(&w(&[2, 2, 0]), 0, &b).unwrap());
        assert!(nabla_edge(&w(&[2, 1, 0]), 3, &b).is_err());
    }

    #[test]
    fn delta_edge_examples() {
        let p = Parabolic::new(vec![2, 1]).unwrap();
        assert!(delta_edge(&w(&[1, 0, -5]), 0, &p).unwrap());
        assert!(matches!(
            delta_edge(&w(&[0, 0, 1]), 0, &p),
            Err(Error::NotParabolicDominant { .. })
        ));
        assert!(!delta_edge(&w(&[1, 0, -5]), 1, &p).unwrap());
    }

    #[test]
    fn unit_step_and_propagation() {
        assert!(unit_step_edge(&w(&[1, 0, 5]), 0).unwrap());
        assert!(!unit_step_edge(&w(&[1, 0, 5]), 1).unwrap());
        assert!(unit_step_edge(&w(&[1, 0]), 0).is_err());
        let base = [(w(&[1, 0, 2]), w(&[0, -1, 2]))];
        for target in [[1, 2, 0], [2, 0, 1], [2, 1, 0], [1, 0, 2]] {
            assert!(propagate_up(&w(&target), &base)
                .unwrap()
                .contains(&w(&[0, -1, 2])));
        }
        assert!(propagate_up(&w(&[0, 1, 2]), &base).unwrap().is_empty());
    }
}
