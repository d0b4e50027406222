//! Symmetric groups, Bruhat order and Kazhdan–Lusztig polynomials.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::root_data::{integrality_classes, EvenRoot, Parabolic, Weight};

/// A permutation in one-line notation, stored zero-based: `w[i] = w(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From zero-based one-line values.
    pub fn from_vec(v: Vec<usize>) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("not a permutation: {v:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(v))
    }

    /// From one-based one-line values, e.g. `[2, 1, 3]`.
    pub fn from_one_line(v: &[usize]) -> Result<Self> {
        if v.contains(&0) {
            return Err(Error::Parse(format!("one-line values start at 1: {v:?}")));
        }
        Permutation::from_vec(v.iter().map(|x| x - 1).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Simple transposition `s_i = (i, i+1)`, zero-based.
    pub fn simple(i: usize, n: usize) -> Self {
        Permutation::transposition(i, i + 1, n)
    }

    pub fn transposition(i: usize, j: usize, n: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Permutation(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "rank mismatch");
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x] = i;
        }
        Permutation(v)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut l = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `s_i w < w`, i.e. `i+1` precedes `i` in one-line notation.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.0[i] > inv.0[i + 1]
    }

    /// Permutation action on coordinates: `(wλ)_{w(j)} = λ_j`.
    pub fn apply(&self, lambda: &Weight) -> Result<Weight> {
        if self.n() != lambda.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: lambda.n(),
            });
        }
        let mut out = lambda.coords().to_vec();
        for (j, x) in lambda.coords().iter().enumerate() {
            out[self.0[j]] = *x;
        }
        Weight::new(out)
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let vals: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad entry `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_one_line(&vals)
    }
}

/// Reflection `s_β` acting on a weight.
pub fn reflect(beta: &EvenRoot, lambda: &Weight) -> Weight {
    beta.reflect(lambda)
}

pub fn longest_element(n: usize) -> Permutation {
    Permutation((0..n).rev().collect())
}

/// Longest element of the Levi Weyl group: reverses each block.
pub fn parabolic_longest(p: &Parabolic) -> Permutation {
    let mut v = Vec::with_capacity(p.n());
    for r in p.ranges() {
        v.extend(r.rev());
    }
    Permutation(v)
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation(prefix.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The Levi Weyl group `W_l`: permutations preserving every block of `p`.
pub fn levi_weyl_group(p: &Parabolic) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(p.n())];
    for r in p.ranges() {
        let local = all_permutations(r.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for w in &out {
            for s in &local {
                let mut v = w.0.clone();
                for (k, &img) in s.0.iter().enumerate() {
                    v[r.start + k] = r.start + img;
                }
                next.push(Permutation(v));
            }
        }
        out = next;
    }
    out
}

/// Bruhat order via the tableau criterion on sorted prefixes.
pub fn bruhat_leq(x: &Permutation, w: &Permutation) -> bool {
    assert_eq!(x.n(), w.n(), "rank mismatch");
    let n = x.n();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        a.push(x.0[k]);
        b.push(w.0[k]);
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(p, q)| p > q) {
            return false;
        }
    }
    true
}

/// Integral Weyl group of a weight: a product of symmetric groups on its
/// integrality classes, and the permutation making those classes contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralWeylGroup {
    pub classes: Vec<Vec<usize>>,
    pub composition: Parabolic,
    /// Sends old index to new position; `sorting.apply(λ)` has contiguous classes.
    pub sorting: Permutation,
}

pub fn integral_weyl_group(lambda: &Weight) -> IntegralWeylGroup {
    let classes = integrality_classes(lambda);
    let composition =
        Parabolic::new(classes.iter().map(|c| c.len()).collect()).expect("non-empty classes");
    let mut sigma = vec![0; lambda.n()];
    for (pos, &old) in classes.iter().flatten().enumerate() {
        sigma[old] = pos;
    }
    IntegralWeylGroup {
        classes,
        composition,
        sorting: Permutation(sigma),
    }
}

/// Polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KlPoly(Vec<i64>);

impl KlPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        KlPoly(coeffs)
    }

    pub fn zero() -> Self {
        KlPoly(Vec::new())
    }

    pub fn one() -> Self {
        KlPoly(vec![1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn shifted(&self, d: usize) -> KlPoly {
        if self.is_zero() {
            return KlPoly::zero();
        }
        let mut v = vec![0; d];
        v.extend_from_slice(&self.0);
        KlPoly(v)
    }

    pub fn scaled(&self, c: i64) -> KlPoly {
        KlPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &KlPoly) -> KlPoly {
        let n = self.0.len().max(other.0.len());
        KlPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &KlPoly) -> KlPoly {
        self.add(&other.scaled(-1))
    }

    pub fn mul(&self, other: &KlPoly) -> KlPoly {
        if self.is_zero() || other.is_zero() {
            return KlPoly::zero();
        }
        let mut v = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        KlPoly::new(v)
    }
}

impl fmt::Display for KlPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (d, 1) => write!(f, "q^{d}")?,
                (d, c) => write!(f, "{c}q^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KlPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KlPoly({self})")
    }
}

impl Serialize for KlPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All of `S_n` with lengths, left multiplication by simple reflections and
/// a memo of Kazhdan–Lusztig polynomials.
pub struct HeckeTable {
    n: usize,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lengths: Vec<usize>,
    /// `left[s][w]` is the index of `s_s w`.
    left: Vec<Vec<usize>>,
    memo: Mutex<HashMap<(usize, usize), KlPoly>>,
}

impl HeckeTable {
    pub fn new(n: usize) -> Self {
        let mut elems = all_permutations(n);
        elems.sort_by_key(|w| (w.length(), w.clone()));
        let index: HashMap<Permutation, usize> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let lengths = elems.iter().map(|w| w.length()).collect();
        let left = (0..n.saturating_sub(1))
            .map(|s| {
                let sp = Permutation::simple(s, n);
                elems.iter().map(|w| index[&sp.compose(w)]).collect()
            })
            .collect();
        HeckeTable {
            n,
            elems,
            index,
            lengths,
            left,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    fn idx(&self, w: &Permutation) -> Result<usize> {
        if w.n() != self.n {
            return Err(Error::LengthMismatch {
                left: w.n(),
                right: self.n,
            });
        }
        Ok(self.index[w])
    }

    pub fn kl(&self, x: &Permutation, w: &Permutation) -> Result<KlPoly> {
        let (xi, wi) = (self.idx(x)?, self.idx(w)?);
        Ok(self.p(xi, wi))
    }

    fn leq(&self, x: usize, w: usize) -> bool {
        self.lengths[x] <= self.lengths[w] && bruhat_leq(&self.elems[x], &self.elems[w])
    }

    fn mu(&self, z: usize, v: usize) -> i64 {
        let d = self.lengths[v] - self.lengths[z];
        if d.is_multiple_of(2) {
            return 0;
        }
        self.p(z, v).coeff((d - 1) / 2)
    }

    fn p(&self, x: usize, w: usize) -> KlPoly {
        if x == w {
            return KlPoly::one();
        }
        if !self.leq(x, w) {
            return KlPoly::zero();
        }
        if let Some(p) = self.memo.lock().unwrap().get(&(x, w)) {
            return p.clone();
        }
        let lw = self.lengths[w];
        let s = (0..self.n - 1)
            .find(|&s| self.lengths[self.left[s][w]] < lw)
            .expect("w is not the identity");
        let sx = self.left[s][x];
        let result = if self.lengths[sx] > self.lengths[x] {
            // P_{x,w} = P_{sx,w} whenever sw < w.
            self.p(sx, w)
        } else {
            let v = self.left[s][w];
            let mut acc = self.p(sx, v).add(&self.p(x, v).shifted(1));
            let (lx, lv) = (self.lengths[x], self.lengths[v]);
            for z in 0..self.elems.len() {
                let lz = self.lengths[z];
                if lz < lx || lz >= lv || (lv - lz).is_multiple_of(2) {
                    continue;
                }
                if self.lengths[self.left[s][z]] > lz || !self.leq(x, z) || !self.leq(z, v) {
                    continue;
                }
                let m = self.mu(z, v);
                if m != 0 {
                    acc = acc.sub(&self.p(x, z).shifted((lw - lz) / 2).scaled(m));
                }
            }
            acc
        };
        let bound = (lw - self.lengths[x] - 1) / 2;
        assert!(result.coeff(0) == 1, "P_{{x,w}} must have constant term 1");
        assert!(
            result.degree().is_some_and(|d| d <= bound),
            "KL degree bound violated"
        );
        assert!(
            result.coeffs().iter().all(|&c| c >= 0),
            "negative KL coefficient"
        );
        self.memo.lock().unwrap().insert((x, w), result.clone());
        result
    }
}

/// Shared table for `S_n`.
pub fn hecke_table(n: usize) -> Arc<HeckeTable> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<HeckeTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(HeckeTable::new(n));
    tables.lock().unwrap().entry(n).or_insert(t).clone()
}

/// Kazhdan–Lusztig polynomial `P_{x,w}`; zero unless `x <= w`.
pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> Result<KlPoly> {
    if x.n() != w.n() {
        return Err(Error::LengthMismatch {
            left: x.n(),
            right: w.n(),
        });
    }
    hecke_table(x.n()).kl(x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(perm("2,1,3").to_string(), "2,1,3");
        assert_eq!(perm("3412"), perm("3,4,1,2"));
        assert!("1,1,2".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
    }

    #[test]
    fn action_on_weights() {
        let l = Weight::from_ints(&[1, 0, 2]);
        assert_eq!(
            Permutation::simple(0, 3).apply(&l).unwrap(),
            Weight::from_ints(&[0, 1, 2])
        );
        assert_eq!(
            longest_element(3)
                .apply(&Weight::from_ints(&[2, 1, 0]))
                .unwrap(),
            Weight::from_ints(&[0, 1, 2])
        );
        assert!(Permutation::identity(2).apply(&l).is_err());
    }

    #[test]
    fn action_is_left_action() {
        let l = Weight::from_ints(&[5, 7, 9, 11]);
        for x in all_permutations(4) {
            for y in all_permutations(4) {
                let lhs = x.apply(&y.apply(&l).unwrap()).unwrap();
                assert_eq!(lhs, x.compose(&y).apply(&l).unwrap());
            }
        }
    }

    #[test]
    fn lengths_and_longest() {
        assert_eq!(longest_element(4).length(), 6);
        assert_eq!(perm("3,4,1,2").length(), 4);
        let p = Parabolic::new(vec![2, 1]).unwrap();
        assert_eq!(parabolic_longest(&p), perm("2,1,3"));
        assert_eq!(
            levi_weyl_group(&Parabolic::new(vec![2, 2]).unwrap()).len(),
            4
        );
        assert_eq!(
            levi_weyl_group(&Parabolic::borel(3)),
            vec![Permutation::identity(3)]
        );
    }

    #[test]
    fn bruhat_small_cases() {
        let e = Permutation::identity(3);
        let w0 = longest_element(3);
        for w in all_permutations(3) {
            assert!(bruhat_leq(&e, &w));
            assert!(bruhat_leq(&w, &w0));
        }
        assert!(!bruhat_leq(&perm("2,1,3"), &perm("1,3,2")));
        assert!(bruhat_leq(&perm("2,1,3"), &perm("3,1,2")));
    }

    #[test]
    fn integral_group_sorting() {
        let l: Weight = "0,1/2,1".parse().unwrap();
        let g = integral_weyl_group(&l);
        assert_eq!(g.classes, vec![vec![0, 2], vec![1]]);
        assert_eq!(g.composition.blocks(), &[2, 1]);
        assert_eq!(g.sorting, perm("1,3,2"));
        assert_eq!(g.sorting.apply(&l).unwrap(), "0,1,1/2".parse().unwrap());
    }

    #[test]
    fn kl_identity_and_longest() {
        let e = Permutation::identity(3);
        assert_eq!(kl_polynomial(&e, &e).unwrap(), KlPoly::one());
        assert_eq!(
            kl_polynomial(&e, &longest_element(3)).unwrap(),
            KlPoly::one()
        );
        assert!(kl_polynomial(&perm("2,1,3"), &perm("1,3,2"))
            .unwrap()
            .is_zero());
        assert!(kl_polynomial(&e, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn kl_singular_pair_in_s4() {
        let p = kl_polynomial(&perm("1,3,2,4"), &perm("3,4,1,2")).unwrap();
        assert_eq!(p.to_string(), "1+q^1");
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,1]");
        assert_eq!(
            kl_polynomial(&perm("2,1,4,3"), &perm("4,2,3,1"))
                .unwrap()
                .coeffs(),
            &[1, 1]
        );
    }

    #[test]
    fn poly_display() {
        assert_eq!(KlPoly::zero().to_string(), "0");
        assert_eq!(KlPoly::new(vec![1, 0, 2]).to_string(), "1+2q^2");
    }
}
