//! Minimality of the `pe(3)` tilting characters: every `∇`-term forced by
//! linkage or by the root conditions below actually occurs.

use std::collections::BTreeSet;

use super::{integral_box, Pe3Tables};
use crate::error::{Error, Result};
use crate::formal_char::{Basis, FormalChar};
use crate::linkage::strong_down_set;
use crate::pe_tilting::weakly_typical_tilting;
use crate::report::Report;
use crate::root_data::{is_p_weakly_typical, positive_even_roots, q, EvenRoot, Parabolic, Weight};

const SHOWN: usize = 4;

struct Statement {
    name: &'static str,
    instances: usize,
    failures: Vec<String>,
}

impl Statement {
    fn new(name: &'static str) -> Self {
        Statement {
            name,
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, lambda: &Weight, mu: &Weight) {
        self.instances += 1;
        if !ok {
            self.failures.push(format!("λ={lambda} μ={mu}"));
        }
    }

    fn finish(self, report: &mut Report) {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} instances", self.instances)
        } else {
            let n = self.failures.len();
            let mut shown = self.failures;
            shown.truncate(SHOWN);
            format!("{n} failures: {}", shown.join("; "))
        };
        report.push(self.name, passed, detail);
    }
}

fn minus_one() -> crate::root_data::Q {
    q(-1)
}

/// Check the six minimality statements on `T_λ` for one `λ`.
fn check_weight(lambda: &Weight, t: &FormalChar, st: &mut [Statement; 6]) {
    let b = Basis::Nabla(Parabolic::borel(3));
    let has = |mu: &Weight| t.coeff(&b, mu) > 0;
    let a1 = EvenRoot::simple(0);
    let a2 = EvenRoot::simple(1);

    for mu in strong_down_set(lambda) {
        st[0].require(has(&mu), lambda, &mu);
    }
    for beta in positive_even_roots(3) {
        if beta.pair(lambda) == minus_one() {
            let target = lambda - &beta.bar(3);
            st[1].require(has(&target), lambda, &target);
            for mu in strong_down_set(&target) {
                st[2].require(has(&mu), lambda, &mu);
            }
        }
    }
    let after_j = lambda - &a2.bar(3);
    if a2.pair(lambda) == minus_one() && a1.pair(&after_j) == minus_one() {
        let mu = &after_j - &a1.bar(3);
        st[3].require(has(&mu), lambda, &mu);
    }
    if a1.pair(lambda) == minus_one() && a2.pair(lambda) == minus_one() {
        let beta_bar = EvenRoot::new(0, 2).bar(3);
        for ai in [&a1, &a2] {
            let mu = &(lambda - &ai.bar(3)) - &beta_bar;
            st[4].require(has(&mu), lambda, &mu);
        }
    }
    if a1.pair(lambda) == minus_one() && a2.pair(lambda) == minus_one() {
        let mu = lambda.add_scalar(q(-2));
        st[5].require(t.coeff(&b, &mu) == 1, lambda, &mu);
    }
}

/// The six minimality statements over every integral `λ` with coordinates
/// in `-bound..=bound` and every table instance with parameters in that
/// range, characters taken from [`Pe3Tables::lookup`].
pub fn verify_theorem_d(tables: &Pe3Tables, bound: i64) -> Result<Report> {
    if bound < 4 {
        return Err(Error::ConstraintViolation(format!("bound {bound} < 4")));
    }
    let b = Parabolic::borel(3);
    let mut st = [
        Statement::new("(1) μ ↑ λ"),
        Statement::new("(2) ⟨λ,β⟩ = -1"),
        Statement::new("(3) w(λ-β̄) ↑ λ-β̄"),
        Statement::new("(4) chained ᾱ_j, ᾱ_i"),
        Statement::new("(5) α_i, α_{i+1}, β = α_i+α_{i+1}"),
        Statement::new("(6) multiplicity one at λ-2ω_3"),
    ];
    let mut weights: BTreeSet<Weight> = integral_box(bound).collect();
    for (f, values, _) in tables.instantiations(bound)? {
        if f.parabolic == b {
            weights.insert(f.hw.eval(&values)?);
        }
    }
    let mut typical = 0usize;
    for lambda in &weights {
        if is_p_weakly_typical(lambda, &b)? {
            typical += 1;
        }
        let t = tables.lookup(lambda, &b)?;
        check_weight(lambda, &t, &mut st);
    }
    let mut report = Report::new("minimality of pe(3) tilting characters");
    for s in st {
        s.finish(&mut report);
    }
    report.push(
        "weights covered",
        true,
        format!(
            "{} weights, {typical} weakly typical, radius {bound}",
            weights.len()
        ),
    );
    Ok(report)
}

/// For weakly typical `pe(2)` weights in a box, every strongly linked `μ`
/// below `λ` occurs in `T_λ`. Other weights are skipped.
pub fn pe2_property_check() -> Result<Report> {
    const RADIUS: i64 = 6;
    let b = Parabolic::borel(2);
    let mut s = Statement::new("(1) μ ↑ λ for pe(2)");
    let mut skipped = 0usize;
    for x in -RADIUS..=RADIUS {
        for y in -RADIUS..=RADIUS {
            let lambda = Weight::from_ints(&[x, y]);
            if !is_p_weakly_typical(&lambda, &b)? {
                skipped += 1;
                continue;
            }
            let t = weakly_typical_tilting(&lambda, &b)?;
            for mu in strong_down_set(&lambda) {
                s.require(t.coeff(&Basis::Nabla(b.clone()), &mu) > 0, &lambda, &mu);
            }
        }
    }
    let mut report = Report::new("pe(2) minimality");
    s.finish(&mut report);
    report.push(
        "skipped",
        true,
        format!("{skipped} weights outside the weakly typical range"),
    );
    Ok(report)
}
