//! `pe(n)`-level consequences of the `gl(n)` theory: Kac characters,
//! simplicity tests, tilting characters at weakly typical weights, and the
//! positivity claims that follow from known socles of Kac modules.

use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::formal_char::{nabla_char_to_delta, Basis, FormalChar};
use crate::gl_mult::{parabolic_verma_simple_mult, simple_in_verma_basis, verma_simple_mult};
use crate::linkage::{strong_down_set, strong_up_set};
use crate::root_data::{
    check_p_dominant, is_dominant, is_g0_weakly_typical, is_p_dominant, is_p_weakly_typical, omega,
    Parabolic, Weight, Q,
};
use crate::weyl_hecke::parabolic_longest;

/// `-w_0^p λ`.
pub fn twisted_negative(lambda: &Weight, p: &Parabolic) -> Result<Weight> {
    p.check_rank(lambda)?;
    Ok(-&parabolic_longest(p).apply(lambda)?)
}

/// Weak typicality for `p`, cross-checked against `g_0`-weak typicality of `-w_0^p λ`.
pub fn weakly_typical_checked(lambda: &Weight, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    let direct = is_p_weakly_typical(lambda, p)?;
    let twisted = is_g0_weakly_typical(&twisted_negative(lambda, p)?);
    if direct != twisted {
        return Err(Error::CrossCheck(format!(
            "weak typicality of {lambda} at {p}"
        )));
    }
    Ok(direct)
}

/// `ch K_λ` in the `Δ` basis, obtained from `ch L^0_λ` in the Verma basis.
pub fn kac_char(lambda: &Weight) -> Result<FormalChar> {
    let p = Parabolic::borel(lambda.n());
    let simple = simple_in_verma_basis(lambda)?;
    let mut c = FormalChar::zero();
    for (_, w, k) in simple.iter() {
        c.add_term(Basis::Delta(p.clone()), w.clone(), k);
    }
    Ok(c)
}

/// `[Δ_μ : L_λ]`, available when `λ` is `g_0`-weakly typical.
pub fn super_verma_mult(mu: &Weight, lambda: &Weight) -> Result<i64> {
    if !is_g0_weakly_typical(lambda) {
        return Err(Error::NotWeaklyTypical {
            weight: lambda.clone(),
            parabolic: Parabolic::borel(lambda.n()),
        });
    }
    verma_simple_mult(mu, lambda)
}

pub fn kac_is_simple(lambda: &Weight) -> bool {
    is_g0_weakly_typical(lambda)
}

pub fn parabolic_verma_is_simple(lambda: &Weight, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    if !is_g0_weakly_typical(lambda) {
        return Ok(false);
    }
    for mu in strong_down_set(lambda) {
        if mu != *lambda && parabolic_verma_simple_mult(lambda, &mu, p)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ch T^p_λ = Σ_μ [M^{p0}_{-w_0^p μ} : L^0_{-w_0^p λ}] ch ∇^p_μ` for weakly typical `λ`.
pub fn weakly_typical_tilting(lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
    if !weakly_typical_checked(lambda, p)? {
        return Err(Error::NotWeaklyTypical {
            weight: lambda.clone(),
            parabolic: p.clone(),
        });
    }
    let w0p = parabolic_longest(p);
    let eta = twisted_negative(lambda, p)?;
    let mut c = FormalChar::zero();
    for nu in strong_up_set(&eta) {
        let mu = -&w0p.apply(&nu)?;
        if !is_p_dominant(&mu, p) {
            continue;
        }
        let m = parabolic_verma_simple_mult(&nu, &eta, p)?;
        c.add_term(Basis::Nabla(p.clone()), mu, m);
    }
    debug_assert_eq!(c.coeff(&Basis::Nabla(p.clone()), lambda), 1);
    Ok(c)
}

/// `T^p_λ = ∇^p_λ` iff `λ` is weakly typical and `M^{p0}_{-w_0^p λ}` is
/// projective, the latter tested as dominance of `-w_0^p λ`.
pub fn tilting_equals_nabla(lambda: &Weight, p: &Parabolic) -> Result<bool> {
    check_p_dominant(lambda, p)?;
    Ok(is_p_weakly_typical(lambda, p)? && is_dominant(&twisted_negative(lambda, p)?))
}

/// `Δ^p`-flag multiplicities of `T^p_λ` for weakly typical `λ`.
pub fn tilting_delta_mults(lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
    nabla_char_to_delta(&weakly_typical_tilting(lambda, p)?)
}

/// `Σ_{λ-2ε_i ∈ Σ_p^+} L^l_{λ-2ε_i} - Σ L^l_{λ-ᾱ_i}`, the second sum over Levi
/// simple roots with `⟨λ, α_i⟩ = 1` and `λ - ᾱ_i ∈ Σ_p^+`.
pub fn pieri_difference(lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
    check_p_dominant(lambda, p)?;
    let n = lambda.n();
    let basis = Basis::LeviSimple(p.clone());
    let mut c = FormalChar::zero();
    for i in 0..n {
        let mu = lambda.shift_coord(i, -2);
        if is_p_dominant(&mu, p) {
            c.add_term(basis.clone(), mu, 1);
        }
    }
    for i in 0..n.saturating_sub(1) {
        if !p.same_block(i, i + 1) || lambda.diff(i, i + 1) != Q::one() {
            continue;
        }
        let mu = lambda.shift_coord(i, -1).shift_coord(i + 1, -1);
        if is_p_dominant(&mu, p) {
            c.add_term(basis.clone(), mu, -1);
        }
    }
    Ok(c)
}

/// A known composition factor of a Kac module, used as a positivity witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OddReflectionFact {
    /// `L_η = soc K_μ`.
    SocleOfKac { eta: Weight, mu: Weight },
    /// `L_η` has highest weight `br` for the reversed Borel; then
    /// `L_η = soc K_{br + (n-1)ω_n}`.
    ReversedHighestWeight { eta: Weight, br: Weight },
}

impl OddReflectionFact {
    /// The pair `(η, μ)` with `[K_μ : L_η] > 0`.
    pub fn witness(&self) -> Result<(Weight, Weight)> {
        match self {
            OddReflectionFact::SocleOfKac { eta, mu } => {
                eta.check_same_rank(mu)
                    .map_err(|_| Error::MalformedFact(format!("{self:?}")))?;
                Ok((eta.clone(), mu.clone()))
            }
            OddReflectionFact::ReversedHighestWeight { eta, br } => {
                eta.check_same_rank(br)
                    .map_err(|_| Error::MalformedFact(format!("{self:?}")))?;
                let n = br.n();
                let shift = omega(n, n)?.scale(n as i64 - 1);
                Ok((eta.clone(), br + &shift))
            }
        }
    }
}

/// For each witness `[K_μ : L_η] > 0` and each `μ ↑ ν`, the claim
/// `(T_{-η} : ∇_{-ν}) > 0`, returned as pairs `(-η, -ν)`.
pub fn standard_fact_edges(facts: &[OddReflectionFact]) -> Result<BTreeSet<(Weight, Weight)>> {
    let mut out = BTreeSet::new();
    for f in facts {
        let (eta, mu) = f.witness()?;
        for nu in strong_up_set(&mu) {
            out.insert((-&eta, -&nu));
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

    fn b3() -> Parabolic {
        Parabolic::borel(3)
    }

    #[test]
    fn typicality_cross_check() {
        assert!(weakly_typical_checked(&w(&[-1, 1, 5]), &b3()).unwrap());
        assert!(!weakly_typical_checked(&w(&[0, 1, 5]), &b3()).unwrap());
        let p = Parabolic::new(vec![2, 1]).unwrap();
        assert!(!weakly_typical_checked(&w(&[1, 0, 5]), &p).unwrap());
    }

    #[test]
    fn kac_characters() {
        assert_eq!(
            kac_char(&w(&[0, 1, 2])).unwrap(),
            FormalChar::delta(w(&[0, 1, 2]))
        );
        let k = kac_char(&w(&[1, 0])).unwrap();
        assert_eq!(
            k,
            FormalChar::delta(w(&[1, 0])).minus(&FormalChar::delta(w(&[0, 1])))
        );
        assert!(kac_is_simple(&w(&[1, -1, -5])));
        assert!(!kac_is_simple(&w(&[0, -1, -5])));
        assert!(kac_is_simple(&w(&[7])));
    }

    #[test]
    fn verma_simplicity() {
        assert!(parabolic_verma_is_simple(&w(&[0, 2, 4]), &b3()).unwrap());
        assert!(!parabolic_verma_is_simple(&w(&[2, 1, 0]), &b3()).unwrap());
        // g_0-weakly typical and antidominant, though not weakly typical
        assert!(parabolic_verma_is_simple(&w(&[0, 1, 5]), &b3()).unwrap());
        assert!(!parabolic_verma_is_simple(&w(&[1, 0, 5]), &b3()).unwrap());
    }

    #[test]
    fn weakly_typical_examples() {
        assert_eq!(
            weakly_typical_tilting(&w(&[-1, 1, 5]), &b3()).unwrap(),
            FormalChar::nabla(w(&[-1, 1, 5]))
        );
        let t = weakly_typical_tilting(&w(&[-1, 1, -3]), &b3()).unwrap();
        let expect: Vec<Weight> = [[-1, 1, -3], [-1, -3, 1], [-3, -1, 1], [-3, 1, -1]]
            .iter()
            .map(|x| w(x))
            .collect();
        assert_eq!(t, FormalChar::nabla_sum(&b3(), &expect));
        assert!(matches!(
            weakly_typical_tilting(&w(&[0, 1, 5]), &b3()),
            Err(Error::NotWeaklyTypical { .. })
        ));
    }

    #[test]
    fn equals_nabla_examples() {
        assert!(tilting_equals_nabla(&w(&[-1, 1, 5]), &b3()).unwrap());
        assert!(!tilting_equals_nabla(&w(&[-1, 1, 0]), &b3()).unwrap());
        assert!(tilting_equals_nabla(&w(&[-3, -1, 1]), &b3()).unwrap());
    }

    #[test]
    fn delta_flag_of_single_costandard() {
        let d = tilting_delta_mults(&w(&[-1, 1, 5]), &b3()).unwrap();
        assert_eq!(d.len(), 8);
        assert!(d.iter().all(|(_, _, c)| c == 1));
    }

    #[test]
    fn pieri_difference_example() {
        let p = Parabolic::new(vec![2, 1]).unwrap();
        let c = pieri_difference(&w(&[1, 0, 5]), &p).unwrap();
        let l = Basis::LeviSimple(p.clone());
        let mut expect = FormalChar::zero();
        expect.add_term(l.clone(), w(&[1, -2, 5]), 1);
        expect.add_term(l.clone(), w(&[1, 0, 3]), 1);
        expect.add_term(l, w(&[0, -1, 5]), -1);
        assert_eq!(c, expect);
        let c = pieri_difference(&w(&[2, 1, 0]), &b3()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.is_nonnegative());
    }

    #[test]
    fn socle_facts_give_claims() {
        for cc in [2i64, 3, 5] {
            let fact = OddReflectionFact::SocleOfKac {
                eta: w(&[0, -cc, -1]),
                mu: w(&[1, -cc, 0]),
            };
            let claims = standard_fact_edges(&[fact]).unwrap();
            assert!(claims.contains(&(w(&[0, cc, 1]), w(&[-1, cc, 0]))));
        }
        let fact = OddReflectionFact::SocleOfKac {
            eta: w(&[1, -1, 0]),
            mu: w(&[2, -1, 1]),
        };
        assert!(standard_fact_edges(&[fact])
            .unwrap()
            .contains(&(w(&[-1, 1, 0]), w(&[-2, 1, -1]))));
        assert!(standard_fact_edges(&[]).unwrap().is_empty());
    }

    #[test]
    fn reversed_highest_weight_shift() {
        let fact = OddReflectionFact::ReversedHighestWeight {
            eta: w(&[-1, 0, -1]),
            br: w(&[-3, -1, -2]),
        };
        assert_eq!(fact.witness().unwrap().1, w(&[-1, 1, 0]));
        let bad = OddReflectionFact::SocleOfKac {
            eta: w(&[0, 1]),
            mu: w(&[0, 1, 2]),
        };
        assert!(matches!(bad.witness(), Err(Error::MalformedFact(_))));
    }
}
