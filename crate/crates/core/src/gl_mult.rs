//! Composition multiplicities of (parabolic) Verma modules for `gl(n)`.
//!
//! For a weight `ν` antidominant within its integral Weyl group and `x`, `y`
//! of maximal length in their cosets modulo the stabiliser of `ν`,
//! `[M^0_{xν} : L^0_{yν}] = P_{w_0 x, w_0 y}(1)`. Non-integral weights split
//! into a product over integrality classes.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formal_char::{Basis, FormalChar};
use crate::linkage::strong_down_set;
use crate::root_data::{
    check_p_dominant, integrality_classes, is_pos_int, positive_even_roots, Parabolic, Weight, Q,
};
use crate::weyl_hecke::{kl_polynomial, levi_weyl_group, longest_element, Permutation};

/// The maximal-length `w` with `w(sorted(xs)) = xs`.
fn max_coset_rep(xs: &[Q]) -> Permutation {
    let inv: Vec<usize> = (0..xs.len())
        .map(|i| {
            let less = xs.iter().filter(|x| **x < xs[i]).count();
            let equal_after = xs[i + 1..].iter().filter(|x| **x == xs[i]).count();
            less + equal_after
        })
        .collect();
    Permutation::from_vec(inv)
        .expect("ranks form a permutation")
        .inverse()
}

fn class_mult(mu: &[Q], lambda: &[Q]) -> Result<i64> {
    let mut a = mu.to_vec();
    let mut b = lambda.to_vec();
    a.sort();
    b.sort();
    if a != b {
        return Ok(0);
    }
    let w0 = longest_element(mu.len());
    let x = w0.compose(&max_coset_rep(mu));
    let y = w0.compose(&max_coset_rep(lambda));
    Ok(kl_polynomial(&x, &y)?.eval_at_one())
}

/// `[M^0_μ : L^0_λ]` for `gl(n)`.
pub fn verma_simple_mult(mu: &Weight, lambda: &Weight) -> Result<i64> {
    mu.check_same_rank(lambda)?;
    let classes = integrality_classes(mu);
    if integrality_classes(lambda) != classes {
        return Ok(0);
    }
    let mut total = 1;
    for class in classes {
        let m: Vec<Q> = class.iter().map(|&i| *mu.get(i)).collect();
        let l: Vec<Q> = class.iter().map(|&i| *lambda.get(i)).collect();
        total *= class_mult(&m, &l)?;
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

/// `[M^{p0}_μ : L^0_λ] = Σ_{w ∈ W_l} (-1)^{ℓ(w)} [M^0_{wμ} : L^0_λ]`.
pub fn parabolic_verma_simple_mult(mu: &Weight, lambda: &Weight, p: &Parabolic) -> Result<i64> {
    check_p_dominant(mu, p)?;
    mu.check_same_rank(lambda)?;
    let mut total = 0;
    for w in levi_weyl_group(p) {
        total += w.sign() * verma_simple_mult(&w.apply(mu)?, lambda)?;
    }
    assert!(
        total >= 0,
        "negative parabolic multiplicity at {mu}, {lambda}"
    );
    Ok(total)
}

/// Composition factors of `M^0_μ` in the basis of simple `gl(n)`-modules.
pub fn verma_composition(mu: &Weight) -> Result<FormalChar> {
    let mut c = FormalChar::zero();
    for eta in strong_down_set(mu) {
        let m = verma_simple_mult(mu, &eta)?;
        c.add_term(Basis::EvenSimple, eta, m);
    }
    Ok(c)
}

/// Jantzen sum `Σ_{α > 0, ⟨λ,α⟩ ∈ Z_{>0}} ch M^0_{s_α λ}`, in the Verma basis.
pub fn jantzen_sum(lambda: &Weight) -> FormalChar {
    let mut c = FormalChar::zero();
    let p = Parabolic::borel(lambda.n());
    for r in positive_even_roots(lambda.n()) {
        if is_pos_int(&r.pair(lambda)) {
            c.add_term(Basis::EvenVerma(p.clone()), r.reflect(lambda), 1);
        }
    }
    c
}

/// `ch L^0_λ` as a combination of Verma characters, by unitriangular
/// inversion over the strong down-set of `λ`.
pub fn simple_in_verma_basis(lambda: &Weight) -> Result<FormalChar> {
    let down = strong_down_set(lambda);
    let mut memo: HashMap<Weight, FormalChar> = HashMap::new();
    let mut order: Vec<&Weight> = down.iter().collect();
    // lowest first, so every strictly lower simple is already known
    order.sort_by(|a, b| a.height().cmp(&b.height()).then(a.cmp(b)));
    let p = Parabolic::borel(lambda.n());
    for eta in order {
        let mut c = FormalChar::single(Basis::EvenVerma(p.clone()), eta.clone(), 1);
        let below: BTreeSet<Weight> = strong_down_set(eta);
        for zeta in below.iter().filter(|z| *z != eta) {
            let m = verma_simple_mult(eta, zeta)?;
            if m != 0 {
                let lz = memo
                    .get(zeta)
                    .ok_or_else(|| Error::Fixture(format!("order violated at {zeta}")))?;
                c.add_assign(lz, -m);
            }
        }
        memo.insert(eta.clone(), c);
    }
    Ok(memo.remove(lambda).expect("λ is in its own down-set"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    #[test]
    fn rank_two() {
        assert_eq!(verma_simple_mult(&w(&[1, 0]), &w(&[0, 1])).unwrap(), 1);
        assert_eq!(verma_simple_mult(&w(&[0, 1]), &w(&[1, 0])).unwrap(), 0);
        assert_eq!(verma_simple_mult(&w(&[1, 0]), &w(&[1, 0])).unwrap(), 1);
        assert_eq!(verma_simple_mult(&w(&[1, 0]), &w(&[2, 0])).unwrap(), 0);
    }

    #[test]
    fn singular_orbit() {
        assert_eq!(
            verma_simple_mult(&w(&[1, 0, 0]), &w(&[0, 0, 1])).unwrap(),
            1
        );
        assert_eq!(
            verma_simple_mult(&w(&[0, 1, 0]), &w(&[0, 0, 1])).unwrap(),
            1
        );
        assert_eq!(
            verma_simple_mult(&w(&[0, 1, 0]), &w(&[1, 0, 0])).unwrap(),
            0
        );
    }

    #[test]
    fn rank_four_has_a_two() {
        let nu = [0i64, 1, 2, 3];
        let from = |p: &str| {
            let perm: Permutation = p.parse().unwrap();
            perm.apply(&w(&nu)).unwrap()
        };
        let top = from("4,3,2,1");
        let total: i64 = crate::weyl_hecke::all_permutations(4)
            .iter()
            .map(|x| verma_simple_mult(&top, &x.apply(&w(&nu)).unwrap()).unwrap())
            .sum();
        // Σ_z P_{e,z}(1) over S_4: two singular Schubert varieties add one each
        assert_eq!(total, 26);
        let twos = crate::weyl_hecke::all_permutations(4)
            .iter()
            .flat_map(|x| {
                crate::weyl_hecke::all_permutations(4)
                    .into_iter()
                    .map(move |y| (x.clone(), y))
            })
            .filter(|(x, y)| {
                verma_simple_mult(&x.apply(&w(&nu)).unwrap(), &y.apply(&w(&nu)).unwrap()).unwrap()
                    == 2
            })
            .count();
        assert_eq!(twos, 6);
    }

    #[test]
    fn non_integral_factorises() {
        let mu: Weight = "1/2,1,-1/2,0".parse().unwrap();
        let lambda: Weight = "-1/2,0,1/2,1".parse().unwrap();
        assert_eq!(verma_simple_mult(&mu, &lambda).unwrap(), 1);
        let other: Weight = "1,1/2,-1/2,0".parse().unwrap();
        assert_eq!(verma_simple_mult(&mu, &other).unwrap(), 0);
    }

    #[test]
    fn parabolic_subtracts_levi_reflections() {
        let p = Parabolic::new(vec![2, 1]).unwrap();
        assert_eq!(
            parabolic_verma_simple_mult(&w(&[2, 1, 0]), &w(&[2, 0, 1]), &p).unwrap(),
            1
        );
        assert_eq!(
            parabolic_verma_simple_mult(&w(&[2, 1, 0]), &w(&[1, 2, 0]), &p).unwrap(),
            0
        );
        assert!(parabolic_verma_simple_mult(&w(&[0, 1, 2]), &w(&[0, 1, 2]), &p).is_err());
    }

    #[test]
    fn jantzen_regular_dominant() {
        let j = jantzen_sum(&w(&[2, 1, 0]));
        assert_eq!(j.len(), 3);
        assert!(jantzen_sum(&w(&[0, 1, 2])).is_zero());
    }

    #[test]
    fn simple_character_rank_two() {
        let c = simple_in_verma_basis(&w(&[1, 0])).unwrap();
        let b = Basis::EvenVerma(Parabolic::borel(2));
        assert_eq!(c.coeff(&b, &w(&[1, 0])), 1);
        assert_eq!(c.coeff(&b, &w(&[0, 1])), -1);
    }
}
