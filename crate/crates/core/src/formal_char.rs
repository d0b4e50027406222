//! Finite integer combinations of basis symbols, and the operations on them:
//! costandard-to-standard expansion, translation functors `θ_a`, the Pieri
//! rule and the parabolic alternating sums.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{check_p_dominant, degree, is_p_dominant, q, Parabolic, Weight, Q};
use crate::weyl_hecke::levi_weyl_group;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Standard object `Δ^p`.
    Delta(Parabolic),
    /// Costandard object `∇^p`.
    Nabla(Parabolic),
    Simple,
    /// Kac module `K`.
    Kac,
    /// Parabolic Verma module of `gl(n)`.
    EvenVerma(Parabolic),
    /// Simple `gl(n)`-module.
    EvenSimple,
    /// Simple module of the Levi.
    LeviSimple(Parabolic),
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::Delta(_) => "delta",
            Basis::Nabla(_) => "nabla",
            Basis::Simple => "simple",
            Basis::Kac => "kac",
            Basis::EvenVerma(_) => "even_verma",
            Basis::EvenSimple => "even_simple",
            Basis::LeviSimple(_) => "levi_simple",
        }
    }

    pub fn parabolic(&self) -> Option<&Parabolic> {
        match self {
            Basis::Delta(p) | Basis::Nabla(p) | Basis::EvenVerma(p) | Basis::LeviSimple(p) => {
                Some(p)
            }
            _ => None,
        }
    }

    fn from_parts(name: &str, p: Parabolic) -> Result<Basis> {
        Ok(match name {
            "delta" => Basis::Delta(p),
            "nabla" => Basis::Nabla(p),
            "simple" => Basis::Simple,
            "kac" => Basis::Kac,
            "even_verma" => Basis::EvenVerma(p),
            "even_simple" => Basis::EvenSimple,
            "levi_simple" => Basis::LeviSimple(p),
            other => return Err(Error::Parse(format!("unknown basis `{other}`"))),
        })
    }
}

/// A finite `Z`-combination of `(basis, weight)` symbols; zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalChar {
    terms: BTreeMap<(Basis, Weight), i64>,
}

impl FormalChar {
    pub fn zero() -> Self {
        FormalChar::default()
    }

    pub fn single(basis: Basis, weight: Weight, coeff: i64) -> Self {
        let mut c = FormalChar::zero();
        c.add_term(basis, weight, coeff);
        c
    }

    pub fn nabla(weight: Weight) -> Self {
        let p = Parabolic::borel(weight.n());
        FormalChar::single(Basis::Nabla(p), weight, 1)
    }

    pub fn delta(weight: Weight) -> Self {
        let p = Parabolic::borel(weight.n());
        FormalChar::single(Basis::Delta(p), weight, 1)
    }

    /// Sum of `∇^p_μ` over the given weights, each with coefficient 1.
    pub fn nabla_sum<'a>(p: &Parabolic, weights: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut c = FormalChar::zero();
        for w in weights {
            c.add_term(Basis::Nabla(p.clone()), w.clone(), 1);
        }
        c
    }

    pub fn add_term(&mut self, basis: Basis, weight: Weight, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = (basis, weight);
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v += coeff;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &FormalChar, factor: i64) {
        for ((b, w), c) in &other.terms {
            self.add_term(b.clone(), w.clone(), c * factor);
        }
    }

    pub fn plus(&self, other: &FormalChar) -> FormalChar {
        let mut c = self.clone();
        c.add_assign(other, 1);
        c
    }

    pub fn minus(&self, other: &FormalChar) -> FormalChar {
        let mut c = self.clone();
        c.add_assign(other, -1);
        c
    }

    pub fn scale(&self, k: i64) -> FormalChar {
        let mut c = FormalChar::zero();
        c.add_assign(self, k);
        c
    }

    pub fn coeff(&self, basis: &Basis, weight: &Weight) -> i64 {
        self.terms
            .get(&(basis.clone(), weight.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Coefficient of `weight`, ignoring the basis (for single-basis characters).
    pub fn coeff_of(&self, weight: &Weight) -> i64 {
        self.terms
            .iter()
            .filter(|((_, w), _)| w == weight)
            .map(|(_, c)| c)
            .sum()
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

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &Weight, i64)> {
        self.terms.iter().map(|((b, w), c)| (b, w, *c))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys().map(|(_, w)| w)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// `self - other` has no negative coefficient.
    pub fn dominates(&self, other: &FormalChar) -> bool {
        self.minus(other).is_nonnegative()
    }

    /// The basis shared by every term, or an error if several occur.
    pub fn uniform_basis(&self) -> Result<Option<&Basis>> {
        let mut it = self.terms.keys().map(|(b, _)| b);
        let Some(first) = it.next() else {
            return Ok(None);
        };
        if it.any(|b| b != first) {
            return Err(Error::MixedBasis);
        }
        Ok(Some(first))
    }

    /// Divide every coefficient by `k`, if exact.
    pub fn div_exact(&self, k: i64) -> Option<FormalChar> {
        let mut c = FormalChar::zero();
        for ((b, w), v) in &self.terms {
            if v % k != 0 {
                return None;
            }
            c.add_term(b.clone(), w.clone(), v / k);
        }
        Some(c)
    }

    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> FormalChar {
        let mut c = FormalChar::zero();
        for ((b, w), v) in &self.terms {
            c.add_term(b.clone(), f(w), *v);
        }
        c
    }

    pub fn to_json(&self, fallback: &Basis) -> Result<String> {
        let basis = self.uniform_basis()?.unwrap_or(fallback);
        let parabolic = basis.parabolic().filter(|p| !p.is_borel()).cloned();
        let repr = CharRepr {
            basis: basis.name().to_string(),
            parabolic,
            terms: self
                .iter()
                .map(|(_, w, c)| TermRepr {
                    weight: w.clone(),
                    coeff: c,
                })
                .collect(),
        };
        Ok(serde_json::to_string(&repr)?)
    }

    pub fn from_json(text: &str) -> Result<FormalChar> {
        let repr: CharRepr = serde_json::from_str(text)?;
        let mut c = FormalChar::zero();
        for t in repr.terms {
            let p = repr
                .parabolic
                .clone()
                .unwrap_or_else(|| Parabolic::borel(t.weight.n()));
            p.check_rank(&t.weight)?;
            c.add_term(Basis::from_parts(&repr.basis, p)?, t.weight, t.coeff);
        }
        if c.is_zero() {
            // validate the basis name even for an empty character
            Basis::from_parts(&repr.basis, Parabolic::borel(1))?;
        }
        Ok(c)
    }
}

#[derive(Serialize, Deserialize)]
struct CharRepr {
    basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parabolic: Option<Parabolic>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    weight: Weight,
    coeff: i64,
}

impl fmt::Display for FormalChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (b, w, c)) in self.iter().enumerate() {
            let sep = match (k, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sep)?;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{}({w})", b.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn kappa_shifts(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u32..(1 << n)).map(move |mask| {
        (0..n)
            .map(|i| if mask >> i & 1 == 1 { 2 } else { 0 })
            .collect()
    })
}

/// `ch ∇_λ = Σ_{κ ∈ {0,2}^n} ch Δ_{λ-κ}` in the full category.
pub fn nabla_to_delta(lambda: &Weight) -> FormalChar {
    let p = Parabolic::borel(lambda.n());
    let mut c = FormalChar::zero();
    for kappa in kappa_shifts(lambda.n()) {
        let mu = lambda
            .coords()
            .iter()
            .zip(&kappa)
            .map(|(x, k)| x - q(*k))
            .collect();
        c.add_term(
            Basis::Delta(p.clone()),
            Weight::new(mu).expect("non-empty"),
            1,
        );
    }
    c
}

/// Rewrite a full-category `Δ`-combination as a `∇`-combination by peeling
/// off the top degree repeatedly. Gives up after `depth` degree levels.
pub fn delta_sum_to_nabla_sum(chi: &FormalChar, depth: usize) -> Result<FormalChar> {
    let mut rest = chi.clone();
    let mut out = FormalChar::zero();
    for (b, w, _) in chi.iter() {
        if *b != Basis::Delta(Parabolic::borel(w.n())) {
            return Err(Error::WrongBasis {
                expected: "full-category delta".into(),
            });
        }
    }
    for _ in 0..depth {
        let Some(top) = rest.weights().map(degree).max() else {
            return Ok(out);
        };
        let layer: Vec<(Weight, i64)> = rest
            .iter()
            .filter(|(_, w, _)| degree(w) == top)
            .map(|(_, w, c)| (w.clone(), c))
            .collect();
        for (w, c) in layer {
            rest.add_assign(&nabla_to_delta(&w), -c);
            out.add_term(Basis::Nabla(Parabolic::borel(w.n())), w, c);
        }
    }
    if rest.is_zero() {
        Ok(out)
    } else {
        Err(Error::NonTerminating { depth })
    }
}

/// `θ_a Δ^p_λ = Σ_{i : λ_i = a} (Δ^p_{λ+ε_i} + Δ^p_{λ-ε_i})`, keeping targets in `Σ_p^+`.
pub fn theta_delta(a: Q, lambda: &Weight, p: &Parabolic) -> FormalChar {
    let mut c = FormalChar::zero();
    for i in 0..lambda.n() {
        if *lambda.get(i) == a {
            for t in [1, -1] {
                let mu = lambda.shift_coord(i, t);
                if is_p_dominant(&mu, p) {
                    c.add_term(Basis::Delta(p.clone()), mu, 1);
                }
            }
        }
    }
    c
}

/// `θ_a ∇^p_λ = Σ_{λ_i = a} ∇^p_{λ+ε_i} + Σ_{λ_i = a+2} ∇^p_{λ-ε_i}`, keeping targets in `Σ_p^+`.
pub fn theta_nabla(a: Q, lambda: &Weight, p: &Parabolic) -> FormalChar {
    let mut c = FormalChar::zero();
    let a2 = a + q(2);
    for i in 0..lambda.n() {
        let x = lambda.get(i);
        let mu = if *x == a {
            lambda.shift_coord(i, 1)
        } else if *x == a2 {
            lambda.shift_coord(i, -1)
        } else {
            continue;
        };
        if is_p_dominant(&mu, p) {
            c.add_term(Basis::Nabla(p.clone()), mu, 1);
        }
    }
    c
}

/// Apply `θ_a` termwise to a character in a single standard or costandard basis.
pub fn theta_char(a: Q, chi: &FormalChar) -> Result<FormalChar> {
    let mut out = FormalChar::zero();
    let Some(basis) = chi.uniform_basis()? else {
        return Ok(out);
    };
    for (_, w, c) in chi.iter() {
        let t = match basis {
            Basis::Delta(p) => theta_delta(a, w, p),
            Basis::Nabla(p) => theta_nabla(a, w, p),
            _ => return Err(Error::SimpleBasis),
        };
        out.add_assign(&t, c);
    }
    Ok(out)
}

/// Shift every weight by `k ω_n`.
pub fn shift_by_omega(chi: &FormalChar, k: Q) -> FormalChar {
    chi.map_weights(|w| w.add_scalar(k))
}

/// Pieri rule `Δ^p_λ ⊗ V = Σ_i (Δ^p_{λ+ε_i} + Δ^p_{λ-ε_i})`, targets kept in `Σ_p^+`.
pub fn tensor_natural_delta(chi: &FormalChar) -> Result<FormalChar> {
    let mut out = FormalChar::zero();
    let Some(basis) = chi.uniform_basis()? else {
        return Ok(out);
    };
    let Basis::Delta(p) = basis else {
        return Err(Error::WrongBasis {
            expected: "delta".into(),
        });
    };
    for (_, w, c) in chi.iter() {
        for i in 0..w.n() {
            for t in [1, -1] {
                let mu = w.shift_coord(i, t);
                if is_p_dominant(&mu, p) {
                    out.add_term(basis.clone(), mu, c);
                }
            }
        }
    }
    Ok(out)
}

fn alternating_sum(
    lambda: &Weight,
    p: &Parabolic,
    make: fn(Parabolic) -> Basis,
) -> Result<FormalChar> {
    check_p_dominant(lambda, p)?;
    let full = make(Parabolic::borel(lambda.n()));
    let mut c = FormalChar::zero();
    for w in levi_weyl_group(p) {
        c.add_term(full.clone(), w.apply(lambda)?, w.sign());
    }
    Ok(c)
}

/// `ch Δ^p_λ = Σ_{w ∈ W_l} (-1)^{ℓ(w)} ch Δ_{wλ}`.
pub fn expand_parabolic_delta(lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
    alternating_sum(lambda, p, Basis::Delta)
}

/// `ch ∇^p_λ = Σ_{w ∈ W_l} (-1)^{ℓ(w)} ch ∇_{wλ}`.
pub fn expand_parabolic_nabla(lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
    alternating_sum(lambda, p, Basis::Nabla)
}

/// Inverse of [`expand_parabolic_delta`]: regroup a full-category
/// `Δ`-combination into `Δ^p` terms, failing if it is not such a sum.
pub fn collect_parabolic_delta(chi: &FormalChar, p: &Parabolic) -> Result<FormalChar> {
    let mut out = FormalChar::zero();
    let mut check = FormalChar::zero();
    for (b, w, c) in chi.iter() {
        if *b != Basis::Delta(Parabolic::borel(w.n())) {
            return Err(Error::WrongBasis {
                expected: "full-category delta".into(),
            });
        }
        if is_p_dominant(w, p) {
            out.add_term(Basis::Delta(p.clone()), w.clone(), c);
            check.add_assign(&expand_parabolic_delta(w, p)?, c);
        }
    }
    if check != *chi {
        return Err(Error::WrongBasis {
            expected: format!("parabolic delta for {p}"),
        });
    }
    Ok(out)
}

/// Rewrite a `∇^p`-character in the `Δ^p` basis through the full category.
pub fn nabla_char_to_delta(chi: &FormalChar) -> Result<FormalChar> {
    let Some(basis) = chi.uniform_basis()? else {
        return Ok(FormalChar::zero());
    };
    let Basis::Nabla(p) = basis else {
        return Err(Error::WrongBasis {
            expected: "nabla".into(),
        });
    };
    let mut full = FormalChar::zero();
    for (_, mu, c) in chi.iter() {
        for (_, nu, s) in expand_parabolic_nabla(mu, p)?.iter() {
            full.add_assign(&nabla_to_delta(nu), c * s);
        }
    }
    collect_parabolic_delta(&full, p)
}

/// Split a character by the degree `|λ|` of its weights.
pub fn grade_support(chi: &FormalChar) -> BTreeMap<Q, FormalChar> {
    let mut out: BTreeMap<Q, FormalChar> = BTreeMap::new();
    for (b, w, c) in chi.iter() {
        out.entry(degree(w))
            .or_default()
            .add_term(b.clone(), w.clone(), c);
    }
    out
}
