//! The desk-scale invariant suite run by `quasichar verify`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arrangement::{
    characteristic_brute, characteristic_quasi_polynomial, cokernel_torsion_annihilator,
    cokernel_torsion_annihilator_general, count_h, count_h_integer_formula, Arrangement, HCounter,
};
use crate::coboundary::{
    b_brute, b_from_counter, coboundary_quasi_polynomial, greene_check, kernel_weight_sides, tutte_check,
    GreeneOutcome,
};
use crate::error::{Error, Result};
use crate::layers::{build_layer_poset, check_lemmas};
use crate::poly::UniPoly;
use crate::quasi::{quasi_evaluate, quasi_evaluate_bivariate};
use crate::ring::{ideals_up_to_norm, Ideal, RingSpec};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, tested: usize) -> Check {
        if failures.is_empty() {
            Check { name, status: Status::Pass, detail: format!("{tested} cases") }
        } else {
            Check { name, status: Status::Fail, detail: failures.join("; ") }
        }
    }

    fn skip(name: &'static str, why: impl Into<String>) -> Check {
        Check { name, status: Status::Skip, detail: why.into() }
    }
}

fn within(a: &Arrangement, ideal: &Ideal, limits: &Limits) -> bool {
    limits.check_points(&ideal.norm(), a.rank()).is_ok()
}

/// Runs every check; a resource error in a core computation aborts the suite.
pub fn verify_arrangement(a: &Arrangement, qmax: u64, limits: &Limits) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let chi = characteristic_quasi_polynomial(a, limits)?;
    let cob = coboundary_quasi_polynomial(a, limits)?;
    let counter = HCounter::new(a, limits)?;
    let rho = chi.period().clone();
    let ideals: Vec<Ideal> =
        ideals_up_to_norm(a.ring(), qmax).into_iter().filter(|i| within(a, i, limits)).collect();
    let p = a.class_count();
    let n_pow = |i: &Ideal| i.norm().pow(a.rank() as u32);

    if a.ring() == RingSpec::Integers {
        let mut bad = Vec::new();
        for j in 1..=a.full_subset() {
            if cokernel_torsion_annihilator(a, j)? != cokernel_torsion_annihilator_general(a, j)? {
                bad.push(format!("J = {j:#b}"));
            }
        }
        checks.push(Check::new("annihilator_fast_path", bad, a.full_subset() as usize));
    }

    let mut bad = Vec::new();
    for i in &ideals {
        let quasi = quasi_evaluate(&chi, i)?;
        let brute = BigInt::from(characteristic_brute(a, i, limits)?);
        let ie = counter.characteristic(i)?;
        if quasi != brute || ie != brute {
            bad.push(format!("{i}: quasi {quasi}, inclusion-exclusion {ie}, brute {brute}"));
        }
    }
    checks.push(Check::new("characteristic_vs_brute", bad, ideals.len()));

    let mut bad = Vec::new();
    for i in &ideals {
        let brute = b_brute(a, i, limits)?;
        let ie = b_from_counter(&counter, i)?;
        let quasi = quasi_evaluate_bivariate(&cob, i)?;
        let total: BigInt = brute.iter().sum();
        if ie != brute || quasi != UniPoly::new(brute.clone()) || total != n_pow(i) {
            bad.push(format!("{i}: brute {brute:?}, inclusion-exclusion {ie:?}, quasi {quasi}"));
        }
        if quasi.coeff(0) != quasi_evaluate(&chi, i)? {
            bad.push(format!("{i}: x = 0 value differs from the characteristic value"));
        }
    }
    checks.push(Check::new("coboundary_vs_brute", bad, ideals.len()));

    let mut bad = Vec::new();
    for ((k, c), (_, f)) in cob.constituents().iter().zip(chi.constituents()) {
        if c.evaluate_second(&BigInt::zero()) != *f {
            bad.push(format!("{k}: {} at x = 0 is not {}", c.render("t", "x"), f.render("t")));
        }
        if c.degree_second().unwrap_or(0) as usize > p {
            bad.push(format!("{k}: x-degree exceeds p(A) = {p}"));
        }
    }
    checks.push(Check::new("x_zero_specialization", bad, cob.constituents().len()));

    match build_layer_poset(a, limits) {
        Ok(poset) => {
            let mut bad = Vec::new();
            for ((k, c), (_, f)) in cob.constituents().iter().zip(chi.constituents()) {
                let from_poset = poset.constituent_from_poset(k)?;
                if from_poset != *c {
                    bad.push(format!("{k}: poset {} vs interpolated {}", from_poset.render("t", "x"), c.render("t", "x")));
                }
                if poset.characteristic_from_poset(k)? != *f {
                    bad.push(format!("{k}: poset characteristic polynomial differs"));
                }
            }
            checks.push(Check::new("poset_constituents", bad, cob.constituents().len()));
            let report = check_lemmas(&poset)?;
            checks.push(Check::new("layer_lemmas", report.failures, report.points as usize));
        }
        Err(Error::ResourceBound { .. }) => {
            checks.push(Check::skip("poset_constituents", "torsion points exceed the point bound"));
            checks.push(Check::skip("layer_lemmas", "torsion points exceed the point bound"));
        }
        Err(e) => return Err(e),
    }

    let t = tutte_check(a, &cob, limits)?;
    let bad = if t.holds() { vec![] } else { vec![format!("{} vs {}", t.lhs.render("x", "y"), t.rhs.render("x", "y"))] };
    checks.push(Check::new("tutte_relation", bad, 1));

    let mut bad = Vec::new();
    for i in &ideals {
        let (lhs, rhs) = kernel_weight_sides(a, i, limits)?;
        if lhs != rhs {
            bad.push(format!("{i}: {lhs} vs {rhs}"));
        }
    }
    checks.push(Check::new("kernel_weight_identity", bad, ideals.len()));

    if a.ring() == RingSpec::Integers {
        let r = rho.norm().to_u64().ok_or_else(|| Error::resource("period", rho.norm(), u64::MAX))?;
        let mut bad = Vec::new();
        for q in 1..=3 * r {
            let i = Ideal::integer(q as i64);
            let k = Ideal::integer(q.gcd(&r) as i64);
            let value = chi.constituent(&k).ok_or_else(|| Error::NotADivisor(k.label()))?.evaluate(&BigInt::from(q));
            let truth = if within(a, &i, limits) {
                BigInt::from(characteristic_brute(a, &i, limits)?)
            } else {
                counter.characteristic(&i)?
            };
            if value != truth {
                bad.push(format!("q = {q}: constituent gives {value}, count {truth}"));
            }
        }
        checks.push(Check::new("gcd_property", bad, 3 * r as usize));

        let mut bad = Vec::new();
        for q in 1..=qmax {
            let qb = BigInt::from(q);
            for j in 0..=a.full_subset() {
                if count_h_integer_formula(a, j, &qb)? != count_h(a, j, &Ideal::integer(q as i64))? {
                    bad.push(format!("q = {q}, J = {j:#b}"));
                }
            }
        }
        checks.push(Check::new("integer_count_formula", bad, qmax as usize));

        for prime in [3u64, 5, 7] {
            let name = match prime {
                3 => "greene_p3",
                5 => "greene_p5",
                _ => "greene_p7",
            };
            checks.push(match greene_check(a, prime, limits)? {
                GreeneOutcome::Holds => Check::new(name, vec![], 1),
                GreeneOutcome::Skipped(why) => Check::skip(name, why),
                GreeneOutcome::Fails { coboundary, enumerator } => {
                    Check::new(name, vec![format!("{coboundary} vs {enumerator}")], 1)
                }
            });
        }
    }

    let cs = cob.constituents();
    let mut same = Vec::new();
    for x in 0..cs.len() {
        for y in x + 1..cs.len() {
            if cs[x].1 == cs[y].1 {
                same.push(format!("{} = {}", cs[x].0, cs[y].0));
            }
        }
    }
    checks.push(if same.is_empty() {
        Check::new("distinct_constituents", vec![], cs.len())
    } else {
        Check::skip("distinct_constituents", format!("coinciding constituents: {}", same.join(", ")))
    });
    Ok(checks)
}
