//! Tilting characters of `pe(3)` outside the weakly typical range, stored as
//! parametrised families in a JSON fixture, together with the checks that
//! tie the fixture back to the rest of the engine.

mod minimality;
mod pattern;
mod replay;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::formal_char::{nabla_to_delta, shift_by_omega, theta_char, Basis, FormalChar};
use crate::linkage::same_block;
use crate::pe_tilting::{weakly_typical_tilting, OddReflectionFact};
use crate::report::Report;
use crate::root_data::{
    degree, integrality_classes, is_p_dominant, is_p_weakly_typical, q, Parabolic, Weight, Q,
};

pub use minimality::{pe2_property_check, verify_theorem_d};
pub use pattern::{ParamSpec, Params, Pattern};
pub use replay::replay_appendix;

const BUILTIN: &str = include_str!("../../data/pe3_tilting.json");

/// Environment variable naming an alternative fixture file.
pub const FIXTURE_ENV: &str = "PERICAT_FIXTURES";

/// One row of the tables: `T_hw = Σ coeff ∇_term` for every admissible
/// choice of the parameters.
#[derive(Clone, Debug)]
pub struct TiltingFamily {
    pub id: String,
    pub parabolic: Parabolic,
    pub params: BTreeMap<String, ParamSpec>,
    pub hw: Pattern,
    pub terms: Vec<(Pattern, i64)>,
}

#[derive(Deserialize)]
struct FamilyRepr {
    id: String,
    parabolic: Parabolic,
    #[serde(default)]
    params: BTreeMap<String, ParamSpec>,
    hw: String,
    terms: Vec<(String, i64)>,
}

#[derive(Deserialize)]
struct FactRepr {
    id: String,
    #[serde(default)]
    params: BTreeMap<String, ParamSpec>,
    eta: String,
    socle: String,
    #[serde(default)]
    reversed: Option<String>,
}

#[derive(Deserialize)]
struct FixtureRepr {
    version: u32,
    families: Vec<FamilyRepr>,
    #[serde(default)]
    facts: Vec<FactRepr>,
}

/// A parametrised positivity witness `L_η = soc K_μ`, optionally also given
/// through the reversed-Borel highest weight.
#[derive(Clone, Debug)]
pub struct FactFamily {
    pub id: String,
    pub params: BTreeMap<String, ParamSpec>,
    pub eta: Pattern,
    pub socle: Pattern,
    pub reversed: Option<Pattern>,
}

impl FactFamily {
    /// Both readings of the fact at the given parameters; they must agree.
    pub fn instantiate(&self, values: &Params) -> Result<Vec<OddReflectionFact>> {
        pattern::check_params(&self.params, values)?;
        let eta = self.eta.eval(values)?;
        let mut out = vec![OddReflectionFact::SocleOfKac {
            eta: eta.clone(),
            mu: self.socle.eval(values)?,
        }];
        if let Some(br) = &self.reversed {
            let f = OddReflectionFact::ReversedHighestWeight {
                eta,
                br: br.eval(values)?,
            };
            if f.witness()? != out[0].witness()? {
                return Err(Error::MalformedFact(format!(
                    "{}: the two readings disagree",
                    self.id
                )));
            }
            out.push(f);
        }
        Ok(out)
    }
}

impl TiltingFamily {
    fn from_repr(r: FamilyRepr) -> Result<Self> {
        let bad = |msg: &str| Error::Fixture(format!("family {}: {msg}", r.id));
        if r.parabolic.n() != 3 {
            return Err(bad("rank must be 3"));
        }
        let hw: Pattern = r.hw.parse()?;
        let mut terms = Vec::new();
        for (pat, c) in &r.terms {
            if *c != 1 {
                return Err(bad("coefficients must be 1"));
            }
            terms.push((pat.parse::<Pattern>()?, *c));
        }
        if !terms.iter().any(|(t, _)| *t == hw) {
            return Err(bad("highest weight missing from its terms"));
        }
        for p in std::iter::once(&hw).chain(terms.iter().map(|(t, _)| t)) {
            if p.n() != 3 {
                return Err(bad("pattern of wrong length"));
            }
            for name in p.param_names() {
                if !r.params.contains_key(name) {
                    return Err(bad(&format!("undeclared parameter `{name}`")));
                }
            }
        }
        Ok(TiltingFamily {
            id: r.id,
            parabolic: r.parabolic,
            params: r.params,
            hw,
            terms,
        })
    }

    /// The character `Σ ∇^p_term` at the given parameter values.
    pub fn instantiate(&self, values: &Params) -> Result<FormalChar> {
        pattern::check_params(&self.params, values)?;
        let hw = self.hw.eval(values)?;
        if !is_p_dominant(&hw, &self.parabolic) {
            return Err(Error::NotParabolicDominant {
                weight: hw,
                parabolic: self.parabolic.clone(),
            });
        }
        let mut c = FormalChar::zero();
        for (pat, k) in &self.terms {
            let w = pat.eval(values)?;
            if !same_block(&hw, &w)? || !is_p_dominant(&w, &self.parabolic) {
                return Err(Error::InconsistentTables(hw));
            }
            c.add_term(Basis::Nabla(self.parabolic.clone()), w, *k);
        }
        Ok(c)
    }

    /// Parameters and `ω_3`-shift `k` with `λ = hw(params) + k(1,1,1)`.
    pub fn match_weight(&self, lambda: &Weight) -> Option<(Params, Q)> {
        let k = self.hw.solve_shift(lambda)?;
        let values = self.hw.solve_params(&lambda.add_scalar(-k))?;
        pattern::check_params(&self.params, &values).ok()?;
        Some((values, k))
    }

    /// Every admissible parameter choice with integer parameters in
    /// `-bound..=bound`; non-integral parameters range over a fixed sample.
    pub fn parameter_grid(&self, bound: i64) -> Vec<Params> {
        pattern::grid(&self.params, bound)
    }
}

/// The loaded fixture.
#[derive(Clone, Debug)]
pub struct Pe3Tables {
    pub version: u32,
    pub families: Vec<TiltingFamily>,
    pub facts: Vec<FactFamily>,
}

impl Pe3Tables {
    pub fn parse(text: &str) -> Result<Self> {
        let repr: FixtureRepr = serde_json::from_str(text)?;
        let mut seen = BTreeSet::new();
        let mut families = Vec::new();
        for f in repr.families {
            if !seen.insert(f.id.clone()) {
                return Err(Error::Fixture(format!("duplicate id {}", f.id)));
            }
            families.push(TiltingFamily::from_repr(f)?);
        }
        let facts = repr
            .facts
            .into_iter()
            .map(|f| {
                Ok(FactFamily {
                    eta: f.eta.parse()?,
                    socle: f.socle.parse()?,
                    reversed: f.reversed.as_deref().map(str::parse).transpose()?,
                    id: f.id,
                    params: f.params,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Pe3Tables {
            version: repr.version,
            families,
            facts,
        })
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("bundled fixture is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The fixture named by `PERICAT_FIXTURES`, or the bundled one.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(FIXTURE_ENV) {
            Some(path) => Self::load(path),
            None => Ok(Self::builtin()),
        }
    }

    pub fn family(&self, id: &str) -> Result<&TiltingFamily> {
        self.families
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::Fixture(format!("no family {id}")))
    }

    /// Instantiate family `id` with `(name, value)` pairs.
    pub fn instantiate(&self, id: &str, values: &[(&str, Q)]) -> Result<FormalChar> {
        let params: Params = values.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self.family(id)?.instantiate(&params)
    }

    /// All fact instances with integer parameters in `-bound..=bound`.
    pub fn facts(&self, bound: i64) -> Result<Vec<OddReflectionFact>> {
        let mut out = Vec::new();
        for f in &self.facts {
            for values in pattern::grid(&f.params, bound) {
                out.extend(f.instantiate(&values)?);
            }
        }
        Ok(out)
    }

    /// Every family whose shifted pattern matches `λ`, with its character.
    pub fn matches(&self, lambda: &Weight, p: &Parabolic) -> Result<Vec<(String, FormalChar)>> {
        if lambda.n() != 3 {
            return Err(Error::UnsupportedRank {
                expected: 3,
                got: lambda.n(),
            });
        }
        let mut out = Vec::new();
        for f in self.families.iter().filter(|f| f.parabolic == *p) {
            if let Some((values, k)) = f.match_weight(lambda) {
                out.push((f.id.clone(), shift_by_omega(&f.instantiate(&values)?, k)));
            }
        }
        Ok(out)
    }

    /// `ch T^p_λ` in the `∇^p` basis: the weakly typical engine when it
    /// applies, the tables otherwise.
    pub fn lookup(&self, lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
        p.check_rank(lambda)?;
        if !is_p_dominant(lambda, p) {
            return Err(Error::NotParabolicDominant {
                weight: lambda.clone(),
                parabolic: p.clone(),
            });
        }
        if is_p_weakly_typical(lambda, p)? {
            return weakly_typical_tilting(lambda, p);
        }
        let found = self.matches(lambda, p)?;
        let Some((_, first)) = found.first() else {
            if lambda.is_integral() && p.is_borel() {
                log::warn!("integral weight {lambda} matches no table row");
            }
            return Err(Error::NoTableEntry {
                weight: lambda.clone(),
                parabolic: p.clone(),
            });
        };
        if found.iter().any(|(_, c)| c != first) {
            return Err(Error::InconsistentTables(lambda.clone()));
        }
        Ok(first.clone())
    }

    /// Every `(family, params, character)` with parameters in `-bound..=bound`.
    pub fn instantiations(&self, bound: i64) -> Result<Vec<(&TiltingFamily, Params, FormalChar)>> {
        let mut out = Vec::new();
        for f in &self.families {
            for values in f.parameter_grid(bound) {
                let c = f.instantiate(&values)?;
                out.push((f, values, c));
            }
        }
        Ok(out)
    }
}

/// `T^p_λ` in the ∇-basis: table lookup (fixtures from the environment) in
/// rank 3, the weakly typical formula otherwise.
pub fn tilting_character(lambda: &Weight, p: &Parabolic) -> Result<FormalChar> {
    p.check_rank(lambda)?;
    if lambda.n() == 3 {
        Pe3Tables::from_env()?.lookup(lambda, p)
    } else {
        weakly_typical_tilting(lambda, p)
    }
}

/// Total order used to peel tilting summands: degree, then height, then the
/// weight itself.
pub fn summand_order(w: &Weight) -> (Q, Q, Weight) {
    (degree(w), w.height(), w.clone())
}

/// Split a `∇^p`-character into tilting characters by repeatedly removing
/// the tilting module of its largest weight. Fails when a negative
/// coefficient appears or `tilting` fails.
pub fn decompose(
    chi: &FormalChar,
    mut tilting: impl FnMut(&Weight) -> Result<FormalChar>,
) -> Result<Vec<(Weight, i64)>> {
    let mut rest = chi.clone();
    let mut out = Vec::new();
    while let Some((w, c)) = rest
        .iter()
        .max_by_key(|(_, w, _)| summand_order(w))
        .map(|(_, w, c)| (w.clone(), c))
    {
        if c < 0 {
            return Err(Error::CrossCheck(format!(
                "negative coefficient {c} at {w} while splitting {chi}"
            )));
        }
        rest.add_assign(&tilting(&w)?, -c);
        out.push((w, c));
    }
    Ok(out)
}

/// `Δ`-flag multiplicities of a full-category `∇`-character.
pub fn delta_flag(chi: &FormalChar) -> FormalChar {
    let mut delta = FormalChar::zero();
    for (_, w, c) in chi.iter() {
        delta.add_assign(&nabla_to_delta(w), c);
    }
    delta
}

/// Eigenvalues `a` with possibly non-zero `θ_a χ`.
fn theta_eigenvalues(chi: &FormalChar) -> BTreeSet<Q> {
    chi.weights()
        .flat_map(|w| w.coords().iter().flat_map(|x| [*x, x - q(2)]))
        .collect()
}

/// Self-consistency of the tables: one block per entry, highest weight on
/// top, closure under every `θ_a`, `Δ`-multiplicities at most one, agreement
/// of overlapping rows and agreement with the weakly typical engine.
pub fn verify_tables(tables: &Pe3Tables, bound: i64) -> Result<Report> {
    let mut report = Report::new("pe(3) tables");
    let all = tables.instantiations(bound)?;

    let mut delta_excess = Vec::new();
    for f in &tables.families {
        let rows: Vec<_> = all.iter().filter(|(g, _, _)| g.id == f.id).collect();
        let mut problems = Vec::new();
        let mut theta_checked = 0usize;
        let mut theta_skipped = 0usize;
        let mut wt_checked = 0usize;
        for (_, values, chi) in &rows {
            let hw = f.hw.eval(values)?;
            let tag = pattern::show_params(values);
            if chi.coeff(&Basis::Nabla(f.parabolic.clone()), &hw) != 1 {
                problems.push(format!("{tag}: highest weight coefficient"));
            }
            for w in chi.weights() {
                if !same_block(&hw, w)? {
                    problems.push(format!("{tag}: {w} outside the block of {hw}"));
                }
                if *w != hw && summand_order(w) >= summand_order(&hw) {
                    problems.push(format!("{tag}: {w} is not below {hw}"));
                }
            }
            if f.parabolic.is_borel() {
                if let Some((w, c)) = delta_flag(chi)
                    .iter()
                    .find(|(_, _, c)| *c > 1)
                    .map(|(_, w, c)| (w.clone(), c))
                {
                    delta_excess.push(format!("({}) {tag}: (T_{hw} : Δ_{w}) = {c}", f.id));
                }
            }
            if is_p_weakly_typical(&hw, &f.parabolic)? {
                wt_checked += 1;
                if weakly_typical_tilting(&hw, &f.parabolic)? != *chi {
                    problems.push(format!("{tag}: disagrees with the weakly typical engine"));
                }
            }
            for a in theta_eigenvalues(chi) {
                let image = theta_char(a, chi)?;
                match decompose(&image, |w| tables.lookup(w, &f.parabolic)) {
                    Ok(_) => theta_checked += 1,
                    // outside the listed rows of a proper parabolic: nothing to compare with
                    Err(Error::NoTableEntry { .. }) if !f.parabolic.is_borel() => {
                        theta_skipped += 1
                    }
                    Err(e) => problems.push(format!("{tag}: θ_{a} does not split: {e}")),
                }
            }
        }
        let passed = problems.is_empty();
        let detail = if passed {
            let mut d = format!(
                "{} instances, {theta_checked} θ images split, {wt_checked} weakly typical",
                rows.len()
            );
            if theta_skipped > 0 {
                d.push_str(&format!(", {theta_skipped} θ images leave the listed rows"));
            }
            d
        } else {
            problems.truncate(5);
            problems.join("; ")
        };
        report.push(format!("({})", f.id), passed && !rows.is_empty(), detail);
    }
    let n_excess = delta_excess.len();
    delta_excess.truncate(8);
    report.push(
        "Δ-multiplicities at most one",
        n_excess == 0,
        if n_excess == 0 {
            "every full-category row".to_string()
        } else {
            format!(
                "{n_excess} instances exceed one: {}",
                delta_excess.join("; ")
            )
        },
    );

    // Overlapping rows must describe the same module.
    let mut overlaps = 0usize;
    let mut clashes = Vec::new();
    for p in [Parabolic::borel(3), Parabolic::new(vec![2, 1])?] {
        for lambda in integral_box(bound) {
            if !is_p_dominant(&lambda, &p) {
                continue;
            }
            let found = tables.matches(&lambda, &p)?;
            if found.len() > 1 {
                overlaps += 1;
                if found.iter().any(|(_, c)| *c != found[0].1) {
                    let ids: Vec<_> = found.iter().map(|(id, _)| id.as_str()).collect();
                    clashes.push(format!("{lambda}: {}", ids.join(" vs ")));
                }
            }
        }
    }
    report.push(
        "overlapping rows agree",
        clashes.is_empty(),
        if clashes.is_empty() {
            format!("{overlaps} weights matched by several rows")
        } else {
            clashes.join("; ")
        },
    );
    let same = tables.instantiate("5.2", &[])? == tables.instantiate("5.7", &[])?;
    report.push("(5.2) = (5.7)", same, "");

    // Every integral non-weakly-typical weight is covered.
    let mut missing = Vec::new();
    for lambda in integral_box(bound) {
        if !is_p_weakly_typical(&lambda, &Parabolic::borel(3))?
            && tables.matches(&lambda, &Parabolic::borel(3))?.is_empty()
        {
            missing.push(lambda.to_string());
        }
    }
    report.push(
        "integral coverage",
        missing.is_empty(),
        if missing.is_empty() {
            format!("box of radius {bound}")
        } else {
            missing.join("; ")
        },
    );
    Ok(report)
}

/// Integral rank-3 weights with coordinates in `-bound..=bound`.
pub fn integral_box(bound: i64) -> impl Iterator<Item = Weight> {
    let r = -bound..=bound;
    r.clone().flat_map(move |a| {
        let r2 = -bound..=bound;
        r2.flat_map(move |b| (-bound..=bound).map(move |c| Weight::from_ints(&[a, b, c])))
    })
}

/// Whether the lookup supports this integrality shape beyond the weakly
/// typical range: integral weights, or `λ_1 - λ_2 ∈ Z` with `λ_3` apart.
pub fn covered_shape(lambda: &Weight) -> bool {
    let classes = integrality_classes(lambda);
    classes.len() == 1 || classes == vec![vec![0, 1], vec![2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_ints(xs)
    }

    fn nab(ws: &[&str]) -> FormalChar {
        let ws: Vec<Weight> = ws.iter().map(|s| s.parse().unwrap()).collect();
        FormalChar::nabla_sum(&Parabolic::borel(3), ws.iter())
    }

    #[test]
    fn instantiate_rows() {
        let t = Pe3Tables::builtin();
        assert_eq!(
            t.instantiate("5.5", &[]).unwrap(),
            nab(&["0,1,0", "0,0,1", "-1,0,0"])
        );
        assert_eq!(t.instantiate("5.15", &[]).unwrap().len(), 6);
        let p = Parabolic::new(vec![2, 1]).unwrap();
        let c = t.instantiate("5.8-first", &[("a", q(3))]).unwrap();
        let ws = [w(&[1, 0, 3]), w(&[0, -1, 3])];
        assert_eq!(c, FormalChar::nabla_sum(&p, ws.iter()));
        assert!(matches!(
            t.instantiate("5.1", &[("b", q(2))]),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(t.instantiate("5.5-row2", &[("c", q(2))]).is_err());
    }

    #[test]
    fn lookup_shifts_and_overlaps() {
        let t = Pe3Tables::builtin();
        let b = Parabolic::borel(3);
        let shifted = shift_by_omega(&t.instantiate("5.15", &[]).unwrap(), q(1));
        assert_eq!(t.lookup(&w(&[0, 1, 2]), &b).unwrap(), shifted);
        let ids: Vec<_> = t
            .matches(&w(&[0, 1, 1]), &b)
            .unwrap()
            .into_iter()
            .map(|(id, _)| id)
            .collect();
        assert!(ids.contains(&"5.2".to_string()) && ids.contains(&"5.7".to_string()));
        assert_eq!(t.lookup(&w(&[0, 1, 1]), &b).unwrap().len(), 3);
        let nonint: Weight = "0,4,1/2".parse().unwrap();
        assert_eq!(
            t.lookup(&nonint, &b).unwrap(),
            FormalChar::nabla(nonint.clone())
        );
        let row2: Weight = "5,6,11/2".parse().unwrap();
        assert_eq!(t.lookup(&row2, &b).unwrap(), nab(&["5,6,11/2", "4,5,11/2"]));
    }

    #[test]
    fn lookup_outside_the_tables() {
        let t = Pe3Tables::builtin();
        let mixed: Weight = "-1/2,0,1/2".parse().unwrap();
        assert!(!covered_shape(&mixed));
        assert!(matches!(
            t.lookup(&mixed, &b3()),
            Err(Error::NoTableEntry { .. })
        ));
        let p = Parabolic::new(vec![2, 1]).unwrap();
        assert!(matches!(
            t.lookup(&w(&[0, 1, 2]), &p),
            Err(Error::NotParabolicDominant { .. })
        ));
    }

    fn b3() -> Parabolic {
        Parabolic::borel(3)
    }

    #[test]
    fn greedy_split() {
        let t = Pe3Tables::builtin();
        let chi = t.instantiate("5.8", &[]).unwrap();
        let image = theta_char(q(-1), &chi).unwrap();
        let parts = decompose(&image, |w| t.lookup(w, &b3())).unwrap();
        assert_eq!(parts, vec![(w(&[0, 0, 1]), 2)]);
    }

    #[test]
    fn facts_agree() {
        let t = Pe3Tables::builtin();
        let facts = t.facts(6).unwrap();
        assert!(facts.len() > 10);
    }

    #[test]
    fn fixture_rejects_bad_rows() {
        let bad = r#"{"version":1,"families":[{"id":"x","parabolic":[1,1,1],"params":{},"hw":"0,1,0","terms":[["0,0,1",1]]}]}"#;
        assert!(Pe3Tables::parse(bad).is_err());
        let undeclared = r#"{"version":1,"families":[{"id":"x","parabolic":[1,1,1],"params":{},"hw":"0,1,b","terms":[["0,1,b",1]]}]}"#;
        assert!(Pe3Tables::parse(undeclared).is_err());
    }
}

#[cfg(test)]
mod suite_tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        let r = verify_tables(&Pe3Tables::builtin(), 6).unwrap();
        let bad: Vec<_> = r
            .failures()
            .filter(|c| c.label != "Δ-multiplicities at most one")
            .map(|c| format!("{}: {}", c.label, c.detail))
            .collect();
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }

    #[test]
    fn delta_multiplicity_two_occurs() {
        // ∇_{0,1,-1} and ∇_{0,-1,1} both contribute Δ_{0,-1,-1}
        let t = Pe3Tables::builtin().instantiate("5.4", &[]).unwrap();
        assert_eq!(delta_flag(&t).coeff_of(&Weight::from_ints(&[0, -1, -1])), 2);
        let r = verify_tables(&Pe3Tables::builtin(), 4).unwrap();
        assert!(r
            .failures()
            .any(|c| c.label == "Δ-multiplicities at most one"));
    }

    #[test]
    fn minimality_holds() {
        let r = verify_theorem_d(&Pe3Tables::builtin(), 6).unwrap();
        let bad: Vec<_> = r
            .failures()
            .map(|c| format!("{}: {}", c.label, c.detail))
            .collect();
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}
