//! Closed forms to test the engine against: the conjectured exponents of
//! `core(I) = m^a I^b` for `I = (f_1, ..., f_s) + m^(d+1)` with general
//! `d`-forms `f_i`, and the multiplier-ideal exponents proved for `d = 1`.

use std::fmt;

use serde::Serialize;

use crate::core_engine::{core, derive_seed, random_form, rng_for, CoreConfig, CoreReport, STREAM_FORMS};
use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, Ideal};
use crate::ideal_ops::{ideal_sum, maximal_ideal_power, maximal_power_times};
use crate::ring::{Field, Polynomial, Ring, RingContext};

/// Attempts at drawing forms that cut out a complete intersection.
pub const CI_RETRIES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureParams {
    pub n: u32,
    pub s: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
}

fn check_ranges(n: u32, s: u32, d: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 2")));
    }
    if s < 1 || s >= n {
        return Err(Error::InvalidParameters(format!("s = {s} must satisfy 1 <= s < n = {n}")));
    }
    if d < 1 {
        return Err(Error::InvalidParameters("d must be at least 1".into()));
    }
    Ok(())
}

impl ConjectureParams {
    pub fn new(n: u32, s: u32, d: u32) -> Result<ConjectureParams> {
        let (a, b) = conjecture_exponents(n, s, d)?;
        Ok(ConjectureParams { n, s, d, a, b })
    }
}

/// `b = ⌊(dn - s + 1)/(d + 1)⌋` and `a = dn - s + 1 - (d + 1) b`.
pub fn conjecture_exponents(n: u32, s: u32, d: u32) -> Result<(u32, u32)> {
    check_ranges(n, s, d)?;
    let total = d * n - s + 1;
    let b = total / (d + 1);
    Ok((total - (d + 1) * b, b))
}

/// Exponents of the multiplier-ideal formula for `d = 1`:
/// `b = ⌊(n - s + 1)/2⌋`, `a = n - s + 1 - 2b`.
pub fn theorem_d1_multiplier_formula(n: u32, s: u32) -> Result<(u32, u32)> {
    check_ranges(n, s, 1)?;
    let total = n - s + 1;
    let b = total / 2;
    Ok((total - 2 * b, b))
}

/// `x, y, z, w` for up to four variables, else `x1, ..., xn`.
pub fn standard_variables(n: u32) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n as usize].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// The generators of `I_2` in the four-variable instance.
pub const PAPER_FORMS: [&str; 3] = ["x^2+y*w", "y^2+z*w", "z^2+x*w"];

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FormsSource {
    /// Seeded random forms; `seed` produced the accepted draw.
    Random { seed: u64, attempts: usize },
    /// The explicit forms `x^2+yw, y^2+zw, z^2+xw`.
    PaperForms,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureInstance {
    pub params: ConjectureParams,
    #[serde(skip)]
    pub ring: Ring,
    /// The `s` forms of degree `d`.
    pub forms: Vec<String>,
    pub source: FormsSource,
    /// `I = (forms) + m^(d+1)`.
    pub ideal: Ideal,
    /// `dim R/(forms)`, equal to `n - s` for a complete intersection.
    pub forms_dimension: i64,
}

fn assemble(params: ConjectureParams, ring: &Ring, forms: Vec<Polynomial>, source: FormsSource) -> Result<ConjectureInstance> {
    let id = Ideal::new(ring, forms.clone())?;
    let dim = krull_dimension(&id);
    let ideal = ideal_sum(&id, &maximal_ideal_power(ring, params.d + 1))?;
    Ok(ConjectureInstance {
        params,
        ring: ring.clone(),
        forms: forms.iter().map(|f| f.to_string()).collect(),
        source,
        ideal,
        forms_dimension: dim,
    })
}

/// `I = (f_1, ..., f_s) + m^(d+1)` with seeded random `d`-forms, redrawn
/// until they form a complete intersection (`dim R/(f) = n - s`).
pub fn build_conjecture_ideal(n: u32, s: u32, d: u32, seed: u64, field: Field) -> Result<ConjectureInstance> {
    let params = ConjectureParams::new(n, s, d)?;
    let ring = RingContext::new(&standard_variables(n), field, Default::default())?;
    for attempt in 0..CI_RETRIES {
        let draw = if attempt == 0 { seed } else { derive_seed(seed, STREAM_FORMS, attempt as u64) };
        let mut rng = rng_for(draw);
        let forms: Vec<Polynomial> = (0..s).map(|_| random_form(&ring, d, &mut rng)).collect();
        let inst = assemble(params, &ring, forms, FormsSource::Random { seed: draw, attempts: attempt + 1 })?;
        if inst.forms_dimension == (n - s) as i64 {
            return Ok(inst);
        }
    }
    Err(Error::CiConstructionFailed { attempts: CI_RETRIES })
}

/// The `(n, s, d) = (4, 3, 2)` instance with the explicit forms.
pub fn paper_conjecture_ideal(field: Field) -> Result<ConjectureInstance> {
    let params = ConjectureParams::new(4, 3, 2)?;
    let ring = RingContext::new(&standard_variables(4), field, Default::default())?;
    let forms = Ideal::parse(&ring, &PAPER_FORMS)?.generators().to_vec();
    let inst = assemble(params, &ring, forms, FormsSource::PaperForms)?;
    if inst.forms_dimension != 1 {
        return Err(Error::CiConstructionFailed { attempts: 1 });
    }
    Ok(inst)
}

/// `m^a I^b` with `m^0 = (1)`.
pub fn conjectured_core(params: &ConjectureParams, ideal: &Ideal) -> Ideal {
    maximal_power_times(ideal, params.a, params.b)
}

/// How the engine's core relates to the conjectured ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    EngineStrictlyInside,
    ConjectureStrictlyInside,
    Incomparable,
}

impl Verdict {
    pub fn compare(engine: &Ideal, conjectured: &Ideal) -> Result<Verdict> {
        let engine_in = conjectured.contains(engine)?;
        let conj_in = engine.contains(conjectured)?;
        Ok(match (engine_in, conj_in) {
            (true, true) => Verdict::Equal,
            (true, false) => Verdict::EngineStrictlyInside,
            (false, true) => Verdict::ConjectureStrictlyInside,
            (false, false) => Verdict::Incomparable,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::EngineStrictlyInside => "ENGINE⊊CONJ",
            Verdict::ConjectureStrictlyInside => "CONJ⊊ENGINE",
            Verdict::Incomparable => "INCOMPARABLE",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub instance: ConjectureInstance,
    pub conjectured: Ideal,
    /// Reduced Gröbner basis of `m^a I^b`.
    pub conjectured_basis: Vec<String>,
    pub verdict: Verdict,
    /// `d = 1`: the equality is a theorem.
    pub theorem_backed: bool,
    /// Not EQUAL where equality is known (`d = 1` or the explicit forms).
    pub failure: bool,
    pub core: CoreReport,
}

/// Engine core of a conjecture instance against `m^a I^b`.
pub fn check_conjecture(instance: ConjectureInstance, config: &CoreConfig) -> Result<ConjectureReport> {
    let report = core(&instance.ideal, config)?;
    let conjectured = conjectured_core(&instance.params, &instance.ideal);
    let verdict = Verdict::compare(&report.core, &conjectured)?;
    let theorem_backed = instance.params.d == 1;
    // the explicit four-variable instance is known to match as well
    let expected_equal = theorem_backed || matches!(instance.source, FormsSource::PaperForms);
    Ok(ConjectureReport {
        failure: expected_equal && verdict != Verdict::Equal,
        theorem_backed,
        verdict,
        conjectured_basis: conjectured.groebner_basis().to_strings(),
        conjectured,
        instance,
        core: report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal_ops::ideal_power;

    #[test]
    fn exponent_examples() {
        assert_eq!(conjecture_exponents(4, 3, 2).unwrap(), (0, 2));
        assert_eq!(conjecture_exponents(2, 1, 1).unwrap(), (0, 1));
        assert_eq!(conjecture_exponents(3, 1, 1).unwrap(), (1, 1));
        assert_eq!(theorem_d1_multiplier_formula(4, 1).unwrap(), (0, 2));
        assert_eq!(theorem_d1_multiplier_formula(4, 2).unwrap(), (1, 1));
    }

    #[test]
    fn exponent_identities() {
        for n in 2..=10 {
            for s in 1..n {
                for d in 1..=6 {
                    let (a, b) = conjecture_exponents(n, s, d).unwrap();
                    assert!(a <= d);
                    assert_eq!(a + (d + 1) * b, d * n - s + 1);
                }
                if n <= 8 {
                    assert_eq!(theorem_d1_multiplier_formula(n, s).unwrap(), conjecture_exponents(n, s, 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn range_errors() {
        for (n, s, d) in [(1, 1, 1), (3, 0, 1), (3, 3, 1), (3, 1, 0)] {
            assert!(matches!(conjecture_exponents(n, s, d), Err(Error::InvalidParameters(_))));
        }
        assert!(theorem_d1_multiplier_formula(2, 2).is_err());
    }

    #[test]
    fn paper_instance_conjectures_the_square() {
        let inst = paper_conjecture_ideal(Field::Rational).unwrap();
        assert_eq!(inst.forms_dimension, 1);
        let conj = conjectured_core(&inst.params, &inst.ideal);
        assert!(conj.equals(&ideal_power(&inst.ideal, 2)).unwrap());
    }

    #[test]
    fn random_instances_are_complete_intersections() {
        let inst = build_conjecture_ideal(4, 2, 3, 7, Field::Rational).unwrap();
        assert_eq!(inst.forms_dimension, 2);
        assert_eq!(inst.forms.len(), 2);
        let inst = build_conjecture_ideal(2, 1, 1, 1, Field::Rational).unwrap();
        // (αx + βy) + m^2
        assert_eq!(inst.ideal.generators().len(), 4);
        let again = build_conjecture_ideal(2, 1, 1, 1, Field::Rational).unwrap();
        assert_eq!(inst.forms, again.forms);
    }

    #[test]
    fn conjectured_core_small_cases() {
        let inst = build_conjecture_ideal(2, 1, 1, 3, Field::Rational).unwrap();
        assert!(conjectured_core(&inst.params, &inst.ideal).equals(&inst.ideal).unwrap());
        let inst = build_conjecture_ideal(3, 1, 1, 3, Field::Rational).unwrap();
        let m = maximal_ideal_power(&inst.ring, 1);
        let mi = crate::ideal_ops::ideal_product(&m, &inst.ideal).unwrap();
        assert!(conjectured_core(&inst.params, &inst.ideal).equals(&mi).unwrap());
    }

    #[test]
    fn verdict_labels() {
        assert_eq!(Verdict::Equal.to_string(), "EQUAL");
        assert_eq!(Verdict::EngineStrictlyInside.to_string(), "ENGINE⊊CONJ");
        let r = RingContext::standard(&["x", "y"], Field::Rational);
        let a = Ideal::parse(&r, &["x^2", "y"]).unwrap();
        let b = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(Verdict::compare(&a, &b).unwrap(), Verdict::EngineStrictlyInside);
        assert_eq!(Verdict::compare(&b, &a).unwrap(), Verdict::ConjectureStrictlyInside);
        let c = Ideal::parse(&r, &["x", "y^2"]).unwrap();
        assert_eq!(Verdict::compare(&a, &c).unwrap(), Verdict::Incomparable);
    }

    #[test]
    fn d1_two_variables_matches() {
        let inst = build_conjecture_ideal(2, 1, 1, 5, Field::Rational).unwrap();
        let rep = check_conjecture(inst, &CoreConfig::with_seed(5)).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal);
        assert!(!rep.failure);
    }
}
