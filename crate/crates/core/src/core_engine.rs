//! Minimal reductions, reduction numbers and cores.
//!
//! For an m-primary ideal `I` with minimal reduction `J` and reduction number
//! `r`, the core is the colon `J^(r+1) : I^r`. Every computed core carries its
//! evidence: the reduction certificate, the stabilized colon one step further,
//! and containment in every reduction that was sampled.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, Ideal};
use crate::ideal_ops::{
    ideal_colon, ideal_power, ideal_product, intersect_all, maximal_ideal_power, maximal_power_contained,
    minimalize_generators,
};
use crate::modular::{certified_colon, ColonPlan};
use crate::ring::{monomials_of_degree, Field, Polynomial, Ring, RANDOM_COEFFICIENT_BOUND};

pub const DEFAULT_SAMPLES: usize = 3;
pub const DEFAULT_REDUCTION_CAP: u32 = 10;
pub const DEFAULT_RETRIES: u32 = 5;

/// Stamp carried by every report computed over a prime field.
pub const MOD_P_STAMP: &str = "mod-p surrogate";

#[derive(Clone, Debug)]
pub struct CoreConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_reduction_number: u32,
    pub retries: u32,
    /// Largest `N` tried in the `m^N ⊆ I` scan; `None` means max generator degree + 2.
    pub primary_bound: Option<u32>,
    pub strategy: ColonStrategy,
}

/// How the colons `J^(k+1) : I^k` are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColonStrategy {
    /// Certified lifting from prime fields over Q when it applies, else direct.
    #[default]
    Auto,
    /// Elimination-based colons in the ring's own field.
    Direct,
}

impl Default for CoreConfig {
    fn default() -> Self {
        CoreConfig {
            seed: 0,
            samples: DEFAULT_SAMPLES,
            max_reduction_number: DEFAULT_REDUCTION_CAP,
            retries: DEFAULT_RETRIES,
            primary_bound: None,
            strategy: ColonStrategy::Auto,
        }
    }
}

impl CoreConfig {
    pub fn with_seed(seed: u64) -> Self {
        CoreConfig { seed, ..CoreConfig::default() }
    }
}

/// SplitMix64 finalizer over `(seed, stream, index)`: independent,
/// reproducible seeds for retries and samples.
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const STREAM_RETRY: u64 = 1;
const STREAM_SAMPLE: u64 = 2;
pub(crate) const STREAM_FORMS: u64 = 3;

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A form of degree `d` with every coefficient uniform in `[-B, B]`.
pub(crate) fn random_form(ring: &Ring, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let field = ring.field();
    let b = RANDOM_COEFFICIENT_BOUND;
    let terms = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| (m, field.from_i64(rng.random_range(-b..=b))))
        .collect::<Vec<_>>();
    Polynomial::from_terms(ring, terms)
}

/// How a reduction was obtained.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generation {
    Explicit,
    SeededRandom {
        seed: u64,
        /// Seeds of every attempt, the accepted one last.
        attempts: Vec<u64>,
        /// `combination[i][j]` multiplies minimal generator `j` in element `i`.
        combination: Vec<Vec<String>>,
    },
}

/// A verified reduction `J ⊆ I` with `I^(r+1) = J I^r`, `r` minimal.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionCertificate {
    #[serde(skip)]
    pub ideal: Ideal,
    pub reduction: Ideal,
    pub reduction_number: u32,
    /// `I^(r+1) = J I^r` and, for `r >= 1`, `I^r != J I^(r-1)`.
    pub witness: bool,
    pub generation: Generation,
}

impl ReductionCertificate {
    /// Re-checks the defining equalities from scratch.
    pub fn recheck(&self) -> Result<bool> {
        let (i, j, r) = (&self.ideal, &self.reduction, self.reduction_number);
        if !i.contains(j)? {
            return Ok(false);
        }
        let upper = ideal_product(j, &ideal_power(i, r))?.contains(&ideal_power(i, r + 1))?;
        let minimal = r == 0 || !ideal_product(j, &ideal_power(i, r - 1))?.contains(&ideal_power(i, r))?;
        Ok(upper && minimal)
    }
}

/// Result of scanning `r = 0..=cap` for `I^(r+1) ⊆ J I^r`.
fn reduction_number(i: &Ideal, j: &Ideal, cap: u32) -> Result<Option<u32>> {
    let base = minimalize_generators(i);
    let mut ir = Ideal::unit(i.ring());
    for r in 0..=cap {
        let next = ideal_product(&ir, &base)?;
        if ideal_product(j, &ir)?.contains(&next)? {
            return Ok(Some(r));
        }
        ir = next;
    }
    Ok(None)
}

/// The least `N` with `m^N ⊆ I` within the configured scan, or an error.
pub fn m_primary_index(i: &Ideal, bound: Option<u32>) -> Result<u32> {
    let bound = bound.unwrap_or_else(|| i.max_generator_degree().unwrap_or(0) + 2);
    maximal_power_contained(i, bound).ok_or(Error::NotMPrimary { bound })
}

pub fn explicit_reduction(i: &Ideal, j_gens: &[Polynomial], cap: u32) -> Result<ReductionCertificate> {
    let j = Ideal::new(i.ring(), j_gens.to_vec())?;
    if let Some(g) = i.first_missing(&j)? {
        return Err(Error::ReductionNotContained(g.to_string()));
    }
    let r = reduction_number(i, &j, cap)?.ok_or(Error::ReductionNotVerified { cap: cap as usize })?;
    Ok(ReductionCertificate {
        ideal: i.clone(),
        reduction: j,
        reduction_number: r,
        witness: true,
        generation: Generation::Explicit,
    })
}

/// `n` homogeneous random elements of `I`, one per slot, where the slots are
/// filled lowest generator degree first: as many elements of degree `δ` as
/// there are minimal generators of degree `δ`, the top degree taking the
/// rest. An element of degree `δ` is `Σ_j u_j g_j` with `u_j` a random form
/// of degree `δ - deg g_j`.
fn random_candidate(i: &Ideal, minimal: &[Polynomial], seed: u64) -> (Vec<Polynomial>, Vec<Vec<String>>) {
    let ring = i.ring();
    let n = ring.nvars();
    let mut rng = rng_for(seed);
    let mut degrees: Vec<u32> = minimal.iter().filter_map(Polynomial::total_degree).collect();
    degrees.dedup();
    let mut slots = Vec::with_capacity(n);
    for (k, &d) in degrees.iter().enumerate() {
        let available = minimal.iter().filter(|g| g.total_degree() == Some(d)).count();
        let take = if k + 1 == degrees.len() { n - slots.len() } else { available.min(n - slots.len()) };
        slots.extend(std::iter::repeat_n(d, take));
        if slots.len() == n {
            break;
        }
    }
    let mut elements = Vec::with_capacity(n);
    let mut combination = Vec::with_capacity(n);
    for d in slots {
        let mut f = Polynomial::zero(ring);
        let mut row = Vec::with_capacity(minimal.len());
        for g in minimal {
            let e = g.total_degree().expect("nonzero");
            if e > d {
                row.push("0".to_string());
                continue;
            }
            let u = random_form(ring, d - e, &mut rng);
            f = &f + &(&u * g);
            row.push(u.to_string());
        }
        elements.push(f);
        combination.push(row);
    }
    (elements, combination)
}

pub fn random_minimal_reduction(i: &Ideal, seed: u64, config: &CoreConfig) -> Result<ReductionCertificate> {
    m_primary_index(i, config.primary_bound)?;
    let minimal = minimalize_generators(i);
    let mut attempts = Vec::new();
    for k in 0..config.retries.max(1) {
        let attempt_seed = if k == 0 { seed } else { derive_seed(seed, STREAM_RETRY, k as u64) };
        attempts.push(attempt_seed);
        let (elements, combination) = random_candidate(i, minimal.generators(), attempt_seed);
        let j = Ideal::new(i.ring(), elements)?;
        // a reduction of an m-primary ideal is itself m-primary
        if j.generators().len() < i.ring().nvars() || krull_dimension(&j) != 0 {
            continue;
        }
        if let Some(r) = reduction_number(i, &j, config.max_reduction_number)? {
            return Ok(ReductionCertificate {
                ideal: i.clone(),
                reduction: j,
                reduction_number: r,
                witness: true,
                generation: Generation::SeededRandom {
                    seed: attempt_seed,
                    attempts: attempts.clone(),
                    combination,
                },
            });
        }
    }
    Err(Error::RetryCapExceeded { seeds: attempts })
}

/// `A : K^k` as `k` successive colons by `K`.
pub fn iterated_colon(a: &Ideal, k: &Ideal, times: u32) -> Result<Ideal> {
    let mut acc = a.clone();
    for _ in 0..times {
        if acc.is_unit() {
            break;
        }
        acc = ideal_colon(&acc, k)?;
    }
    Ok(acc)
}

/// `I = m^e` lets `A : I^k` run as `e k` colons by `m`, which has far fewer
/// generators than `m^e`.
fn colon_plan(i: &Ideal) -> Result<ColonPlan> {
    if let Some(e) = i.max_generator_degree() {
        if e > 0 && i.generators().iter().all(|g| g.total_degree() == Some(e)) && i.equals(&maximal_ideal_power(i.ring(), e))? {
            return Ok(ColonPlan::ByMaximal { exponent: e });
        }
    }
    Ok(ColonPlan::ByIdeal)
}

/// The colon `J^(k+1) : I^k`, computed directly.
pub fn core_colon(cert: &ReductionCertificate, k: u32) -> Result<Ideal> {
    let plan = colon_plan(&cert.ideal)?;
    plan.apply(&ideal_power(&cert.reduction, k + 1), &cert.ideal, k)
}

/// How a sample's colons were obtained.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColonMethod {
    Direct,
    /// Lifted from the listed primes and certified over Q; the stabilized
    /// colon was bounded by a further colon modulo the last prime.
    CertifiedLift { primes: Vec<u64> },
}

/// One reduction's contribution to a core computation.
#[derive(Clone, Debug, Serialize)]
pub struct CoreSample {
    pub certificate: ReductionCertificate,
    /// `J^(r+1) : I^r`
    pub colon: Ideal,
    /// `J^(r+2) : I^(r+1)`
    pub next_colon: Ideal,
    pub stabilized: bool,
    pub core_in_reduction: bool,
    pub method: ColonMethod,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreChecks {
    pub core_in_ideal: bool,
    pub core_in_every_reduction: bool,
    pub samples_agree: bool,
    pub stabilized: bool,
}

impl CoreChecks {
    pub fn all(&self) -> bool {
        self.core_in_ideal && self.core_in_every_reduction && self.samples_agree && self.stabilized
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreReport {
    pub input: Ideal,
    /// Minimal generators of the core.
    pub core: Ideal,
    /// Reduced Gröbner basis of the core in the ring's order.
    pub core_basis: Vec<String>,
    pub samples: Vec<CoreSample>,
    pub checks: CoreChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_note: Option<&'static str>,
    pub elapsed_ms: u128,
}

pub(crate) fn field_note(ring: &Ring) -> Option<&'static str> {
    match ring.field() {
        Field::Rational => None,
        Field::Prime(_) => Some(MOD_P_STAMP),
    }
}

fn run_sample(cert: ReductionCertificate, strategy: ColonStrategy) -> Result<CoreSample> {
    let start = Instant::now();
    let r = cert.reduction_number;
    let mut method = ColonMethod::Direct;
    let mut colons = None;
    if strategy == ColonStrategy::Auto {
        let plan = colon_plan(&cert.ideal)?;
        if let Some(c) = certified_colon(&cert.ideal, &cert.reduction, r, &plan)? {
            method = ColonMethod::CertifiedLift { primes: c.primes };
            // without the certificate for the next colon, compute it directly
            let upper = if c.stabilized { c.colon.clone() } else { core_colon(&cert, r + 1)? };
            colons = Some((c.colon, upper));
        }
    }
    let (lower, upper) = match colons {
        Some(pair) => pair,
        None => {
            let (lower, upper) = rayon::join(|| core_colon(&cert, r), || core_colon(&cert, r + 1));
            (lower?, upper?)
        }
    };
    if !lower.equals(&upper)? {
        return Err(Error::StabilizationFailure {
            r: r as usize,
            lower: lower.groebner_basis().to_strings(),
            upper: upper.groebner_basis().to_strings(),
        });
    }
    let core_in_reduction = cert.reduction.contains(&lower)?;
    Ok(CoreSample {
        certificate: cert,
        colon: lower,
        next_colon: upper,
        stabilized: true,
        core_in_reduction,
        method,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn assemble(input: &Ideal, samples: Vec<CoreSample>, start: Instant) -> Result<CoreReport> {
    let core = samples[0].colon.clone();
    for (k, s) in samples.iter().enumerate().skip(1) {
        if !s.colon.equals(&core)? {
            return Err(Error::SampleDisagreement { first: 0, second: k });
        }
    }
    if let Some(k) = samples.iter().position(|s| !s.core_in_reduction) {
        return Err(Error::CoreNotInReduction(k));
    }
    let checks = CoreChecks {
        core_in_ideal: input.contains(&core)?,
        core_in_every_reduction: true,
        samples_agree: true,
        stabilized: samples.iter().all(|s| s.stabilized),
    };
    let core_basis = core.groebner_basis().to_strings();
    Ok(CoreReport {
        input: input.clone(),
        core: minimalize_generators(&core),
        core_basis,
        samples,
        checks,
        field_note: field_note(input.ring()),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The core from a single certificate.
pub fn core_via_colon(cert: &ReductionCertificate) -> Result<CoreReport> {
    core_via_colon_with(cert, ColonStrategy::Auto)
}

pub fn core_via_colon_with(cert: &ReductionCertificate, strategy: ColonStrategy) -> Result<CoreReport> {
    let start = Instant::now();
    let sample = run_sample(cert.clone(), strategy)?;
    assemble(&cert.ideal, vec![sample], start)
}

/// The core from `config.samples` independent seeded minimal reductions,
/// which must all produce the same colon.
pub fn core(i: &Ideal, config: &CoreConfig) -> Result<CoreReport> {
    let start = Instant::now();
    m_primary_index(i, config.primary_bound)?;
    let samples = (0..config.samples.max(1))
        .into_par_iter()
        .map(|k| {
            let seed = if k == 0 { config.seed } else { derive_seed(config.seed, STREAM_SAMPLE, k as u64) };
            run_sample(random_minimal_reduction(i, seed, config)?, config.strategy)
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(i, samples, start)
}

/// Core from an explicit reduction plus `extra` random ones, all required to agree.
pub fn core_with_reduction(i: &Ideal, j_gens: &[Polynomial], config: &CoreConfig, extra: usize) -> Result<CoreReport> {
    let start = Instant::now();
    let explicit = explicit_reduction(i, j_gens, config.max_reduction_number)?;
    let mut certs = vec![explicit];
    for k in 0..extra {
        let seed = if k == 0 { config.seed } else { derive_seed(config.seed, STREAM_SAMPLE, k as u64) };
        certs.push(random_minimal_reduction(i, seed, config)?);
    }
    let samples = certs
        .into_par_iter()
        .map(|c| run_sample(c, config.strategy))
        .collect::<Result<Vec<_>>>()?;
    assemble(i, samples, start)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeeperCoreReport {
    pub core_of_ideal: CoreReport,
    pub member_cores: Vec<CoreReport>,
    /// `core(I) ∩ core(K_1) ∩ ...`, an upper bound for the intersection over all `K ⊇ I`.
    pub intersection: Ideal,
    pub strictly_inside_core: bool,
}

/// Intersects `core(I)` with the cores of a finite family of ideals containing `I`.
pub fn deeper_core_sample(i: &Ideal, family: &[Ideal], config: &CoreConfig) -> Result<DeeperCoreReport> {
    if family.is_empty() {
        return Err(Error::InvalidParameters("the family of ideals containing I is empty".into()));
    }
    for (k, member) in family.iter().enumerate() {
        if !member.contains(i)? {
            return Err(Error::FamilyMemberNotContaining(k));
        }
    }
    let core_of_ideal = core(i, config)?;
    let member_cores = family
        .iter()
        .enumerate()
        .map(|(k, member)| {
            core(member, &CoreConfig { seed: derive_seed(config.seed, STREAM_SAMPLE + 16, k as u64), ..config.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut parts = vec![core_of_ideal.core.clone()];
    parts.extend(member_cores.iter().map(|c| c.core.clone()));
    let intersection = minimalize_generators(&intersect_all(i.ring(), parts)?);
    let strictly_inside_core = !intersection.contains(&core_of_ideal.core)?;
    Ok(DeeperCoreReport {
        core_of_ideal,
        member_cores,
        intersection,
        strictly_inside_core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal_ops::maximal_ideal;
    use crate::ring::RingContext;

    fn ring(vars: &[&str]) -> Ring {
        RingContext::standard(vars, Field::Rational)
    }

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        let a: Vec<u64> = (0..5).map(|k| derive_seed(7, 1, k)).collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(b.len(), 5);
        assert_eq!(derive_seed(7, 1, 3), a[3]);
        assert_ne!(derive_seed(7, 1, 0), derive_seed(7, 2, 0));
    }

    #[test]
    fn maximal_ideal_is_its_own_core() {
        let r = ring(&["x", "y", "z"]);
        let m = maximal_ideal(&r);
        let cert = random_minimal_reduction(&m, 5, &CoreConfig::default()).unwrap();
        assert_eq!(cert.reduction_number, 0);
        assert!(cert.reduction.equals(&m).unwrap());
        let rep = core(&m, &CoreConfig::with_seed(1)).unwrap();
        assert!(rep.core.equals(&m).unwrap());
        assert!(rep.checks.all());
    }

    #[test]
    fn explicit_identity_reduction_has_number_zero() {
        let r = ring(&["x", "y"]);
        let i = maximal_ideal_power(&r, 2);
        let cert = explicit_reduction(&i, i.generators(), 3).unwrap();
        assert_eq!(cert.reduction_number, 0);
        assert!(cert.recheck().unwrap());
    }

    #[test]
    fn core_of_square_of_maximal_ideal_in_two_variables() {
        // core(m^2) = m^3 in k[x,y]: J = two general quadrics, r = 1, J^2 : m^2 = m^3
        let r = ring(&["x", "y"]);
        let i = maximal_ideal_power(&r, 2);
        let rep = core(&i, &CoreConfig::with_seed(3)).unwrap();
        assert!(rep.core.equals(&maximal_ideal_power(&r, 3)).unwrap());
        assert!(rep.samples.iter().all(|s| s.certificate.reduction_number == 1));
        assert_eq!(rep.samples.len(), 3);
    }

    #[test]
    fn non_reduction_is_rejected() {
        let r = ring(&["x", "y"]);
        let m = maximal_ideal(&r);
        let x2 = crate::ring::parse_polynomial("x^2", &r).unwrap();
        let y2 = crate::ring::parse_polynomial("y^2", &r).unwrap();
        assert_eq!(
            explicit_reduction(&m, &[x2, y2], 3).unwrap_err(),
            Error::ReductionNotVerified { cap: 3 }
        );
        let i = maximal_ideal_power(&r, 2);
        let x = crate::ring::parse_polynomial("x", &r).unwrap();
        assert!(matches!(explicit_reduction(&i, &[x], 3), Err(Error::ReductionNotContained(_))));
    }

    #[test]
    fn non_primary_ideal_is_rejected() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2"]).unwrap();
        assert_eq!(core(&i, &CoreConfig::default()).unwrap_err(), Error::NotMPrimary { bound: 4 });
    }

    #[test]
    fn deeper_core_with_trivial_families() {
        let r = ring(&["x", "y"]);
        let i = maximal_ideal_power(&r, 2);
        let cfg = CoreConfig::with_seed(2);
        let rep = deeper_core_sample(&i, std::slice::from_ref(&i), &cfg).unwrap();
        assert!(rep.intersection.equals(&rep.core_of_ideal.core).unwrap());
        assert!(!rep.strictly_inside_core);
        let rep = deeper_core_sample(&i, &[maximal_ideal(&r)], &cfg).unwrap();
        assert!(rep.intersection.equals(&maximal_ideal_power(&r, 3)).unwrap());
        assert!(deeper_core_sample(&i, &[], &cfg).is_err());
        let bad = Ideal::parse(&r, &["x^3", "y^3"]).unwrap();
        assert_eq!(deeper_core_sample(&i, &[bad], &cfg).unwrap_err(), Error::FamilyMemberNotContaining(0));
    }

    #[test]
    fn prime_field_reports_are_stamped() {
        let r = RingContext::standard(&["x", "y"], Field::prime(32003).unwrap());
        let rep = core(&maximal_ideal_power(&r, 2), &CoreConfig::with_seed(1)).unwrap();
        assert_eq!(rep.field_note, Some(MOD_P_STAMP));
        assert!(rep.core.equals(&maximal_ideal_power(&r, 3)).unwrap());
    }
}
