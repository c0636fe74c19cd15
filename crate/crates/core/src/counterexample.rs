//! The four-variable instance showing that `I ⊆ m²` does not force
//! `core(I) ⊆ core(m²)`:
//!
//! * `R = k[x,y,z,w]`, `I₂ = (x²+yw, y²+zw, z²+xw)`, `I = I₂ + m³`;
//! * `J = (x²+yw, y²+zw, z²+xw, w³)` is a minimal reduction with `I² = J I`;
//! * `core(I) = J² : I = I²` while `core(m²) = m⁵`, and `I² ⊄ m⁵`.

use std::time::Instant;

use serde::Serialize;

use crate::core_engine::{core_with_reduction, field_note, CoreConfig};
use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, Ideal};
use crate::ideal_ops::{ci_is_radical, ideal_power, ideal_sum, maximal_ideal_power};
use crate::ring::{Field, Ring, RingContext};

pub const VARIABLES: [&str; 4] = ["x", "y", "z", "w"];
pub const I2_GENERATORS: [&str; 3] = ["x^2+y*w", "y^2+z*w", "z^2+x*w"];
pub const REDUCTION_GENERATORS: [&str; 4] = ["x^2+y*w", "y^2+z*w", "z^2+x*w", "w^3"];
/// `w³` replaced by `w²`: not contained in `I`, so the reduction check must fail.
pub const TAMPERED_REDUCTION_GENERATORS: [&str; 4] = ["x^2+y*w", "y^2+z*w", "z^2+x*w", "w^2"];
/// A monomial minimal reduction of `m²`, with reduction number 2.
pub const M2_REDUCTION_GENERATORS: [&str; 4] = ["x^2", "y^2", "z^2", "w^2"];

/// Taken from the literature, not checked by the engine.
pub const ASSUMED_HYPOTHESES: [&str; 1] = ["I = I2 + m^3 is integrally closed"];

pub const CHECK_NAMES: [&str; 6] = [
    "i2-ci-radical",
    "reduction-j",
    "core-i-equals-i-squared",
    "core-m2-equals-m5",
    "i-in-m2",
    "i-squared-not-in-m5",
];

/// The ideals of the instance over one field.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub i2: Ideal,
    pub i: Ideal,
    pub j: Ideal,
    pub m2: Ideal,
}

impl Instance {
    pub fn new(field: Field, tamper: bool) -> Result<Instance> {
        let ring = RingContext::new(&VARIABLES, field, Default::default())?;
        let i2 = Ideal::parse(&ring, &I2_GENERATORS)?;
        let i = ideal_sum(&i2, &maximal_ideal_power(&ring, 3))?;
        let j_gens: &[&str] = if tamper { &TAMPERED_REDUCTION_GENERATORS } else { &REDUCTION_GENERATORS };
        let j = Ideal::parse(&ring, j_gens)?;
        let m2 = maximal_ideal_power(&ring, 2);
        Ok(Instance { ring, i2, i, j, m2 })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub evidence: String,
    /// Reduced bases of the two ideals the check compares.
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Check {
    fn new(name: &'static str, pass: bool, evidence: String, left: &Ideal, right: &Ideal) -> Check {
        Check {
            name,
            pass,
            evidence,
            left: left.groebner_basis().to_strings(),
            right: right.groebner_basis().to_strings(),
        }
    }

    fn failed(name: &'static str, err: &Error, left: &Ideal, right: &Ideal) -> Check {
        Check::new(name, false, format!("error: {err}"), left, right)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_note: Option<&'static str>,
    pub i2: Ideal,
    pub i: Ideal,
    pub j: Ideal,
    pub core_i: Option<Ideal>,
    pub core_m2: Option<Ideal>,
    pub checks: Vec<Check>,
    pub assumed_hypotheses: Vec<&'static str>,
    pub elapsed_ms: u128,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        self.checks.iter().map(|c| (c.name, c.pass)).collect()
    }
}

fn check_ci_radical(inst: &Instance) -> Check {
    let name = CHECK_NAMES[0];
    let dim = krull_dimension(&inst.i2);
    match ci_is_radical(&inst.i2) {
        Ok(ev) => {
            let pass = ev.radical && ev.codimension == 3 && inst.i2.generators().len() == 3;
            let evidence = format!(
                "codim {} with {} generators; dim R/I2 = {dim}; singular locus dim {} from {} minors",
                ev.codimension,
                inst.i2.generators().len(),
                ev.singular_locus_dimension,
                ev.minors
            );
            Check::new(name, pass, evidence, &inst.i2, &inst.i2)
        }
        Err(e) => Check::failed(name, &e, &inst.i2, &inst.i2),
    }
}

/// Runs the six checks in order; a check that errors counts as failed.
pub fn verify_counterexample(field: Field, seed: u64, tamper: bool) -> Result<CounterexampleReport> {
    let start = Instant::now();
    let inst = Instance::new(field, tamper)?;
    let config = CoreConfig { samples: 1, ..CoreConfig::with_seed(seed) };
    let mut checks = vec![check_ci_radical(&inst)];

    let i_sq = ideal_power(&inst.i, 2);
    let core_i = core_with_reduction(&inst.i, inst.j.generators(), &config, 0);
    checks.push(match &core_i {
        Ok(rep) => {
            let r = rep.samples[0].certificate.reduction_number;
            Check::new(CHECK_NAMES[1], r == 1, format!("J ⊆ I with reduction number {r}"), &inst.j, &inst.i)
        }
        Err(e) => Check::failed(CHECK_NAMES[1], e, &inst.j, &inst.i),
    });
    checks.push(match &core_i {
        Ok(rep) => match rep.core.equals(&i_sq) {
            Ok(eq) => {
                let evidence = format!(
                    "J^2 : I has {} minimal generators; I^2 has {}; equal = {eq}",
                    rep.core.generators().len(),
                    i_sq.generators().len()
                );
                Check::new(CHECK_NAMES[2], eq, evidence, &rep.core, &i_sq)
            }
            Err(e) => Check::failed(CHECK_NAMES[2], &e, &rep.core, &i_sq),
        },
        Err(e) => Check::failed(CHECK_NAMES[2], e, &inst.i, &i_sq),
    });

    let m5 = maximal_ideal_power(&inst.ring, 5);
    let m2_gens = Ideal::parse(&inst.ring, &M2_REDUCTION_GENERATORS)?;
    let core_m2 = core_with_reduction(&inst.m2, m2_gens.generators(), &config, 0);
    checks.push(match &core_m2 {
        Ok(rep) => match rep.core.equals(&m5) {
            Ok(eq) => {
                let r = rep.samples[0].certificate.reduction_number;
                let evidence = format!("reduction number {r}; J^{} : m^{} equals m^5 = {eq}", r + 1, 2 * r);
                Check::new(CHECK_NAMES[3], eq, evidence, &rep.core, &m5)
            }
            Err(e) => Check::failed(CHECK_NAMES[3], &e, &rep.core, &m5),
        },
        Err(e) => Check::failed(CHECK_NAMES[3], e, &inst.m2, &m5),
    });

    checks.push(match inst.m2.first_missing(&inst.i) {
        Ok(None) => Check::new(CHECK_NAMES[4], true, "every generator of I lies in m^2".into(), &inst.i, &inst.m2),
        Ok(Some(g)) => Check::new(CHECK_NAMES[4], false, format!("`{g}` is not in m^2"), &inst.i, &inst.m2),
        Err(e) => Check::failed(CHECK_NAMES[4], &e, &inst.i, &inst.m2),
    });
    checks.push(match m5.first_missing(&i_sq) {
        Ok(Some(g)) => Check::new(
            CHECK_NAMES[5],
            true,
            format!("`{g}` lies in I^2 but not in m^5"),
            &i_sq,
            &m5,
        ),
        Ok(None) => Check::new(CHECK_NAMES[5], false, "I^2 ⊆ m^5".into(), &i_sq, &m5),
        Err(e) => Check::failed(CHECK_NAMES[5], &e, &i_sq, &m5),
    });

    Ok(CounterexampleReport {
        field: field.to_string(),
        field_note: field_note(&inst.ring),
        i2: inst.i2,
        i: inst.i,
        j: inst.j,
        core_i: core_i.ok().map(|r| r.core),
        core_m2: core_m2.ok().map(|r| r.core),
        checks,
        assumed_hypotheses: ASSUMED_HYPOTHESES.to_vec(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_mod_p() {
        let rep = verify_counterexample(Field::prime(32003).unwrap(), 0, false).unwrap();
        for c in &rep.checks {
            assert!(c.pass, "{}: {}", c.name, c.evidence);
        }
        assert_eq!(rep.field_note, Some(crate::core_engine::MOD_P_STAMP));
    }

    #[test]
    fn tampering_breaks_the_reduction() {
        let rep = verify_counterexample(Field::prime(32003).unwrap(), 0, true).unwrap();
        let first = rep.first_failure().expect("a failing check");
        assert!(first.name == CHECK_NAMES[1] || first.name == CHECK_NAMES[2]);
        assert!(rep.checks[0].pass);
    }
}
