//! Weights, roots and parabolic data for `pe(n)`.
//!
//! Weights are stored in ρ-shifted form: the label `λ` names the module whose
//! highest weight is `λ - ρ` with `ρ = (n-1, ..., 1, 0)`. All coordinates are
//! exact rationals.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub(crate) fn is_int(x: &Q) -> bool {
    x.is_integer()
}

pub(crate) fn is_pos_int(x: &Q) -> bool {
    x.is_integer() && x.is_positive()
}

pub(crate) fn is_neg_int(x: &Q) -> bool {
    x.is_integer() && x.is_negative()
}

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(x: &Q) -> Q {
    if x.is_integer() {
        return Q::zero();
    }
    x - x.floor()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    Q::from_str(t).map_err(|_| Error::Parse(format!("bad rational `{t}`")))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Weight(coords))
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        assert!(!xs.is_empty(), "empty weight");
        Weight(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![Q::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Q {
        &self.0[i]
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_int)
    }

    /// Integer coordinates, if every coordinate is an integer.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    Some(x.to_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn with(&self, i: usize, value: Q) -> Weight {
        let mut c = self.0.clone();
        c[i] = value;
        Weight(c)
    }

    /// `self + t ε_i`.
    pub fn shift_coord(&self, i: usize, t: i64) -> Weight {
        let mut c = self.0.clone();
        c[i] += q(t);
        Weight(c)
    }

    pub fn swap(&self, i: usize, j: usize) -> Weight {
        let mut c = self.0.clone();
        c.swap(i, j);
        Weight(c)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * q(k)).collect())
    }

    /// `self + k (1, ..., 1)`.
    pub fn add_scalar(&self, k: Q) -> Weight {
        Weight(self.0.iter().map(|x| x + k).collect())
    }

    pub fn check_same_rank(&self, other: &Weight) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Standard pairing `Σ λ_i μ_i`.
    pub fn pairing(&self, other: &Weight) -> Result<Q> {
        self.check_same_rank(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// `⟨λ, ε_i - ε_j⟩`.
    pub fn diff(&self, i: usize, j: usize) -> Q {
        self.0[i] - self.0[j]
    }

    pub fn sum(&self) -> Q {
        self.0.iter().sum()
    }

    /// `Σ (n - i) λ_i`: strictly decreases along reflections that lower a weight.
    pub fn height(&self) -> Q {
        let n = self.n() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(i, x)| x * q(n - i as i64))
            .sum()
    }

    pub fn sorted(&self) -> Vec<Q> {
        let mut v = self.0.clone();
        v.sort();
        v
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        let coords = s.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        Weight::new(coords)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoordRepr {
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<CoordRepr>::deserialize(d)?;
        let coords = raw
            .into_iter()
            .map(|c| match c {
                CoordRepr::Int(i) => Ok(q(i)),
                CoordRepr::Text(t) => parse_q(&t),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Weight::new(coords).map_err(serde::de::Error::custom)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.n(), rhs.n(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.n(), rhs.n(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// `ρ = (n-1, ..., 1, 0)`.
pub fn rho(n: usize) -> Weight {
    Weight((0..n).map(|i| q((n - 1 - i) as i64)).collect())
}

/// `∂_k = ε_1 + ... + ε_k`; also the fundamental weight `ω_k`.
pub fn partial(k: usize, n: usize) -> Result<Weight> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    Ok(Weight(
        (0..n)
            .map(|i| if i < k { Q::one() } else { Q::zero() })
            .collect(),
    ))
}

pub fn omega(k: usize, n: usize) -> Result<Weight> {
    partial(k, n)
}

pub fn epsilon(i: usize, n: usize) -> Weight {
    let mut w = Weight::zero(n);
    w.0[i] = Q::one();
    w
}

/// `|λ| = Σ λ_i - Σ (n - i)`, the degree of the underlying highest weight.
pub fn degree(lambda: &Weight) -> Q {
    let n = lambda.n() as i64;
    lambda.sum() - q(n * (n - 1) / 2)
}

/// Number of odd coordinates of an integral weight.
pub fn n_odd(lambda: &Weight) -> Result<usize> {
    let ints = lambda
        .to_ints()
        .ok_or_else(|| Error::NotIntegral(lambda.clone()))?;
    Ok(ints.iter().filter(|x| x.is_odd()).count())
}

/// Even root `ε_i - ε_j` with `i != j` (zero-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenRoot {
    pub i: usize,
    pub j: usize,
}

impl EvenRoot {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "ε_i - ε_i is not a root");
        EvenRoot { i, j }
    }

    /// Simple root `α_i = ε_i - ε_{i+1}`.
    pub fn simple(i: usize) -> Self {
        EvenRoot { i, j: i + 1 }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn pair(&self, lambda: &Weight) -> Q {
        lambda.diff(self.i, self.j)
    }

    /// Conjugate odd root `ε_i + ε_j`, as a weight.
    pub fn bar(&self, n: usize) -> Weight {
        &epsilon(self.i, n) + &epsilon(self.j, n)
    }

    pub fn as_weight(&self, n: usize) -> Weight {
        &epsilon(self.i, n) - &epsilon(self.j, n)
    }

    pub fn reflect(&self, lambda: &Weight) -> Weight {
        lambda.swap(self.i, self.j)
    }
}

impl fmt::Display for EvenRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i + 1, self.j + 1)
    }
}

/// Odd roots: `-ε_i - ε_j` (`i < j`) in degree -1 and `ε_i + ε_j` (`i <= j`) in degree 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddRoot {
    Minus { i: usize, j: usize },
    Plus { i: usize, j: usize },
}

impl OddRoot {
    pub fn as_weight(&self, n: usize) -> Weight {
        match *self {
            OddRoot::Minus { i, j } => -&(&epsilon(i, n) + &epsilon(j, n)),
            OddRoot::Plus { i, j } => &epsilon(i, n) + &epsilon(j, n),
        }
    }
}

pub fn positive_even_roots(n: usize) -> Vec<EvenRoot> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(EvenRoot { i, j });
        }
    }
    out
}

pub fn even_roots(n: usize) -> Vec<EvenRoot> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(EvenRoot { i, j });
            }
        }
    }
    out
}

pub fn odd_roots(n: usize) -> Vec<OddRoot> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(OddRoot::Minus { i, j });
        }
    }
    for i in 0..n {
        for j in i..n {
            out.push(OddRoot::Plus { i, j });
        }
    }
    out
}

/// A parabolic subalgebra of `gl(n)`, given by the block sizes of its Levi.
/// `(1, ..., 1)` is the Borel.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parabolic(Vec<usize>);

impl Parabolic {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidComposition(format!("{blocks:?}")));
        }
        Ok(Parabolic(blocks))
    }

    pub fn borel(n: usize) -> Self {
        Parabolic(vec![1; n])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_borel(&self) -> bool {
        self.0.iter().all(|&b| b == 1)
    }

    /// Index ranges of the Levi blocks.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.ranges()
            .iter()
            .any(|r| r.contains(&i) && r.contains(&j))
    }

    /// `Φ^+(l)`.
    pub fn levi_positive_roots(&self) -> Vec<EvenRoot> {
        let mut out = Vec::new();
        for r in self.ranges() {
            for i in r.clone() {
                for j in i + 1..r.end {
                    out.push(EvenRoot { i, j });
                }
            }
        }
        out
    }

    /// `Φ_0^+ \ Φ^+(l)`.
    pub fn nilradical_roots(&self) -> Vec<EvenRoot> {
        positive_even_roots(self.n())
            .into_iter()
            .filter(|r| !self.same_block(r.i, r.j))
            .collect()
    }

    pub fn check_rank(&self, lambda: &Weight) -> Result<()> {
        if self.n() != lambda.n() {
            return Err(Error::LengthMismatch {
                left: lambda.n(),
                right: self.n(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p({self})")
    }
}

impl FromStr for Parabolic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "b" {
            return Err(Error::Parse(
                "`b` needs a rank; give the composition explicitly".into(),
            ));
        }
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad block `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Parabolic::new(blocks)
    }
}

impl Serialize for Parabolic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Parabolic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Parabolic::new(v).map_err(serde::de::Error::custom)
    }
}

/// `⟨λ, α⟩ ∉ Z_{<0}` for all positive even roots.
pub fn is_dominant(lambda: &Weight) -> bool {
    positive_even_roots(lambda.n())
        .iter()
        .all(|r| !is_neg_int(&r.pair(lambda)))
}

/// `⟨λ, α⟩ ∉ Z_{>0}` for all positive even roots.
pub fn is_antidominant(lambda: &Weight) -> bool {
    positive_even_roots(lambda.n())
        .iter()
        .all(|r| !is_pos_int(&r.pair(lambda)))
}

/// Membership in `Σ_p^+`: `⟨λ, α⟩ ∈ Z_{>0}` on the Levi positive roots.
pub fn is_p_dominant(lambda: &Weight, p: &Parabolic) -> bool {
    p.n() == lambda.n()
        && p.levi_positive_roots()
            .iter()
            .all(|r| is_pos_int(&r.pair(lambda)))
}

pub fn check_p_dominant(lambda: &Weight, p: &Parabolic) -> Result<()> {
    p.check_rank(lambda)?;
    if !is_p_dominant(lambda, p) {
        return Err(Error::NotParabolicDominant {
            weight: lambda.clone(),
            parabolic: p.clone(),
        });
    }
    Ok(())
}

/// No even root (of either sign) pairs to 1 with `λ`.
pub fn is_typical(lambda: &Weight) -> bool {
    even_roots(lambda.n())
        .iter()
        .all(|r| r.pair(lambda) != Q::one())
}

/// Weak typicality relative to `p`: no Levi root pairs to 1 and no other
/// positive root pairs to -1.
pub fn is_p_weakly_typical(lambda: &Weight, p: &Parabolic) -> Result<bool> {
    p.check_rank(lambda)?;
    let one = Q::one();
    let levi_ok = p
        .levi_positive_roots()
        .iter()
        .all(|r| r.pair(lambda) != one);
    let rest_ok = p.nilradical_roots().iter().all(|r| r.pair(lambda) != -one);
    Ok(levi_ok && rest_ok)
}

/// No positive even root pairs to 1 with `λ`.
pub fn is_g0_weakly_typical(lambda: &Weight) -> bool {
    positive_even_roots(lambda.n())
        .iter()
        .all(|r| r.pair(lambda) != Q::one())
}

/// Integrality classes: maximal index sets with pairwise integral differences,
/// ordered by first occurrence.
pub fn integrality_classes(lambda: &Weight) -> Vec<Vec<usize>> {
    let mut classes: Vec<(Q, Vec<usize>)> = Vec::new();
    for (i, x) in lambda.coords().iter().enumerate() {
        let key = frac(x);
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(i),
            None => classes.push((key, vec![i])),
        }
    }
    classes.into_iter().map(|(_, v)| v).collect()
}
