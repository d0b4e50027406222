//! Weight patterns such as `"0,-c,-1"` or `"-1,-c-2,-2"`: each coordinate is
//! a rational constant or `±name` plus an integer offset.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{is_int, parse_q, q, Weight, Q};

pub type Params = BTreeMap<String, Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Int,
    Nonint,
}

/// Domain and bounds of one family parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub domain: Domain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gt: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ge: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lt: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub le: Option<i64>,
}

impl ParamSpec {
    pub fn admits(&self, x: &Q) -> bool {
        let in_domain = match self.domain {
            Domain::Int => is_int(x),
            Domain::Nonint => !is_int(x),
        };
        in_domain
            && self.gt.is_none_or(|b| *x > q(b))
            && self.ge.is_none_or(|b| *x >= q(b))
            && self.lt.is_none_or(|b| *x < q(b))
            && self.le.is_none_or(|b| *x <= q(b))
    }

    fn candidates(&self, bound: i64) -> Vec<Q> {
        let raw: Vec<Q> = match self.domain {
            Domain::Int => (-bound..=bound).map(q).collect(),
            Domain::Nonint => vec![Q::new(1, 2), Q::new(3, 2), Q::new(-5, 2)],
        };
        raw.into_iter().filter(|x| self.admits(x)).collect()
    }
}

pub(crate) fn check_params(specs: &BTreeMap<String, ParamSpec>, values: &Params) -> Result<()> {
    for name in values.keys() {
        if !specs.contains_key(name) {
            return Err(Error::ConstraintViolation(format!(
                "unknown parameter `{name}`"
            )));
        }
    }
    for (name, spec) in specs {
        let Some(x) = values.get(name) else {
            return Err(Error::ConstraintViolation(format!(
                "missing parameter `{name}`"
            )));
        };
        if !spec.admits(x) {
            return Err(Error::ConstraintViolation(format!(
                "{name} = {x} outside {spec:?}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn grid(specs: &BTreeMap<String, ParamSpec>, bound: i64) -> Vec<Params> {
    let mut out = vec![Params::new()];
    for (name, spec) in specs {
        let vals = spec.candidates(bound);
        out = out
            .into_iter()
            .flat_map(|m| {
                vals.iter().map(move |v| {
                    let mut m = m.clone();
                    m.insert(name.clone(), *v);
                    m
                })
            })
            .collect();
    }
    out
}

pub(crate) fn show_params(values: &Params) -> String {
    values
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Coord {
    /// `(name, ±1)` for a parameter coordinate.
    param: Option<(String, i64)>,
    offset: Q,
}

impl Coord {
    fn parse(tok: &str) -> Result<Coord> {
        let t = tok.trim();
        let bad = || Error::Parse(format!("bad pattern coordinate `{t}`"));
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t),
        };
        if !body.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Ok(Coord {
                param: None,
                offset: parse_q(t)?,
            });
        }
        let end = body
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(body.len());
        let (name, rest) = body.split_at(end);
        let offset = match rest.chars().next() {
            None => Q::zero(),
            Some('+') => parse_q(&rest[1..]).map_err(|_| bad())?,
            Some('-') => -parse_q(&rest[1..]).map_err(|_| bad())?,
            Some(_) => return Err(bad()),
        };
        Ok(Coord {
            param: Some((name.to_string(), sign)),
            offset,
        })
    }

    fn eval(&self, values: &Params) -> Result<Q> {
        match &self.param {
            None => Ok(self.offset),
            Some((name, s)) => {
                let x = values.get(name).ok_or_else(|| {
                    Error::ConstraintViolation(format!("missing parameter `{name}`"))
                })?;
                Ok(q(*s) * x + self.offset)
            }
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.param {
            None => write!(f, "{}", self.offset),
            Some((name, s)) => {
                if *s < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{name}")?;
                if self.offset > Q::zero() {
                    write!(f, "+{}", self.offset)?;
                } else if self.offset < Q::zero() {
                    write!(f, "{}", self.offset)?;
                }
                Ok(())
            }
        }
    }
}

/// A weight whose coordinates may depend on named parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern(Vec<Coord>);

impl Pattern {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn param_names(&self) -> impl Iterator<Item = &str> {
        self.0
            .iter()
            .filter_map(|c| c.param.as_ref().map(|(n, _)| n.as_str()))
    }

    pub fn eval(&self, values: &Params) -> Result<Weight> {
        Weight::new(
            self.0
                .iter()
                .map(|c| c.eval(values))
                .collect::<Result<_>>()?,
        )
    }

    /// Common `k` with `λ_i = offset_i + k` on every constant coordinate.
    pub(crate) fn solve_shift(&self, lambda: &Weight) -> Option<Q> {
        if lambda.n() != self.n() {
            return None;
        }
        let mut ks = self
            .0
            .iter()
            .zip(lambda.coords())
            .filter(|(c, _)| c.param.is_none())
            .map(|(c, x)| x - c.offset);
        let k = ks.next()?;
        ks.all(|k2| k2 == k).then_some(k)
    }

    /// Parameter values reproducing `λ` exactly, if any.
    pub(crate) fn solve_params(&self, lambda: &Weight) -> Option<Params> {
        let mut values = Params::new();
        for (c, x) in self.0.iter().zip(lambda.coords()) {
            if let Some((name, s)) = &c.param {
                let v = (x - c.offset) * q(*s);
                if *values.entry(name.clone()).or_insert(v) != v {
                    return None;
                }
            }
        }
        (self.eval(&values).ok()? == *lambda).then_some(values)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords: Vec<Coord> = s.split(',').map(Coord::parse).collect::<Result<_>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty pattern".into()));
        }
        Ok(Pattern(coords))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(xs: &[(&str, i64)]) -> Params {
        xs.iter().map(|(k, v)| (k.to_string(), q(*v))).collect()
    }

    #[test]
    fn parse_and_eval() {
        let p: Pattern = "-1,-c-2,-2".parse().unwrap();
        assert_eq!(
            p.eval(&params(&[("c", -3)])).unwrap(),
            Weight::from_ints(&[-1, 1, -2])
        );
        assert_eq!(p.to_string(), "-1,-c-2,-2");
        let r: Pattern = "1/2,b+1,-b".parse().unwrap();
        assert_eq!(r.to_string(), "1/2,b+1,-b");
        assert!("0,b*2,1".parse::<Pattern>().is_err());
    }

    #[test]
    fn solve() {
        let p: Pattern = "0,1,b".parse().unwrap();
        let lambda = Weight::from_ints(&[2, 3, 9]);
        let k = p.solve_shift(&lambda).unwrap();
        assert_eq!(k, q(2));
        let vals = p.solve_params(&lambda.add_scalar(-k)).unwrap();
        assert_eq!(vals["b"], q(7));
        assert!(p.solve_shift(&Weight::from_ints(&[0, 2, 5])).is_none());
        let twice: Pattern = "b,0,b".parse().unwrap();
        assert!(twice.solve_params(&Weight::from_ints(&[1, 0, 2])).is_none());
    }

    #[test]
    fn constraints() {
        let spec = ParamSpec {
            domain: Domain::Int,
            gt: Some(2),
            ge: None,
            lt: None,
            le: None,
        };
        assert!(spec.admits(&q(3)) && !spec.admits(&q(2)) && !spec.admits(&Q::new(7, 2)));
        let mut specs = BTreeMap::new();
        specs.insert("b".to_string(), spec);
        assert_eq!(grid(&specs, 5).len(), 3);
        assert!(check_params(&specs, &params(&[("b", 1)])).is_err());
        assert!(check_params(&specs, &params(&[])).is_err());
    }
}
