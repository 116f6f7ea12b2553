//! Seeded randomized property suites with JSON reports.
//!
//! Cases are drawn sequentially from a seeded [`StdRng`], so a seed fixes the
//! whole run; checking is then spread over the selected [`Strategy`].

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::deformed_ring::{degree_nu, DeformedElement, DeformedRing};
use crate::fibration::{FiberedMonomial, Fibration};
use crate::isomorphism::{h_star, phi_scale_raw, remainder_identity, RescalePair};
use crate::lattice::{
    alpha, alpha_of_integers, dual_kernel_basis, gamma, gcd_all, same_cone, AlphaRep, DualFunctional, WeightVector,
};
use crate::par::Strategy;
use crate::rational::{coeff, fmt_rat, int, Rat};
use crate::semigroup::{s_generators, t_generators};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_CASES: usize = 500;
pub const DEFAULT_MAX_ENTRY: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub max_entry: i64,
    pub properties: Vec<PropertyReport>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, max_entry: i64, properties: Vec<PropertyReport>) -> Self {
        let pass = properties.iter().all(|p| p.pass);
        Self {
            suite: suite.into(),
            seed,
            max_entry,
            properties,
            pass,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_entry: i64,
    pub strategy: Strategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            cases: DEFAULT_CASES,
            max_entry: DEFAULT_MAX_ENTRY,
            strategy: Strategy::default(),
        }
    }
}

/// Draws `cases` inputs, checks each, and collects the failures. A check
/// returns `Err(description)` on failure.
fn run<T, G, C>(name: &str, cfg: &SuiteConfig, rng: &mut StdRng, mut gen: G, check: C) -> PropertyReport
where
    T: Sync,
    G: FnMut(&mut StdRng) -> T,
    C: Fn(&T) -> Result<(), String> + Sync + Send,
{
    let inputs: Vec<T> = (0..cfg.cases).map(|_| gen(rng)).collect();
    let results = cfg.strategy.map(&inputs, |x| check(x));
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    PropertyReport {
        name: name.into(),
        cases: inputs.len(),
        failures: failures.len(),
        pass: failures.is_empty() && !inputs.is_empty(),
        first_failure: failures.into_iter().next(),
    }
}

pub fn random_weights(rng: &mut StdRng, max_entry: i64, max_len: usize) -> WeightVector {
    loop {
        let len = rng.random_range(2..=max_len);
        let v: Vec<i64> = (0..len).map(|_| rng.random_range(1..=max_entry)).collect();
        if gcd_all(&v) == 1 {
            return WeightVector::weights(v).expect("gcd checked");
        }
    }
}

fn random_multiplicities(rng: &mut StdRng, len: usize, max_entry: i64) -> WeightVector {
    WeightVector::multiplicities((0..len).map(|_| rng.random_range(1..=max_entry)).collect()).expect("positive")
}

fn random_ints(rng: &mut StdRng, len: usize, max_entry: i64) -> Vec<i64> {
    (0..len).map(|_| rng.random_range(-max_entry..=max_entry)).collect()
}

fn random_rep(rng: &mut StdRng, p: &WeightVector, max_entry: i64) -> AlphaRep {
    alpha_of_integers(&random_ints(rng, p.len(), max_entry), p).expect("lengths agree")
}

fn random_element(rng: &mut StdRng, p: &WeightVector, max_entry: i64) -> DeformedElement {
    let terms = rng.random_range(1..=3);
    DeformedElement::from_terms(
        (0..terms).map(|_| (random_rep(rng, p, max_entry), coeff(rng.random_range(-5..=5)))),
    )
}

fn random_theta(rng: &mut StdRng, p: &WeightVector) -> DualFunctional {
    let basis = dual_kernel_basis(p);
    let mut v = vec![0i64; p.len()];
    for b in &basis {
        let k = rng.random_range(-3..=3);
        for (vi, bi) in v.iter_mut().zip(b.entries()) {
            *vi += k * bi;
        }
    }
    DualFunctional::new(v, p).expect("combination of kernel vectors")
}

/// A raw element of `S`: a sum of random generators, unreduced.
fn random_s_element(rng: &mut StdRng, p: &WeightVector) -> Vec<Rat> {
    let gens = s_generators(p).all();
    let mut v = vec![Rat::zero(); p.len()];
    for _ in 0..rng.random_range(0..=4) {
        let g = &gens[rng.random_range(0..gens.len())];
        for (vi, gi) in v.iter_mut().zip(g.exponent.entries()) {
            *vi += gi;
        }
    }
    v
}

fn random_t_element(rng: &mut StdRng, p: &WeightVector) -> Rat {
    let gens = t_generators(p).expect("two weights").generators;
    (0..rng.random_range(0..=3)).fold(Rat::zero(), |acc, _| acc + gens[rng.random_range(0..gens.len())])
}

/// The six structural properties of the rings and maps.
pub fn property_suite(cfg: &SuiteConfig) -> SuiteReport {
    let m = cfg.max_entry;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut props = Vec::new();

    props.push(run(
        "leibniz",
        cfg,
        &mut rng,
        |r| {
            let p = random_weights(r, m, 4);
            let w = random_multiplicities(r, p.len(), m);
            let theta = random_theta(r, &p);
            let x = random_element(r, &p, m);
            let y = random_element(r, &p, m);
            (p, w, theta, x, y)
        },
        |(p, w, theta, x, y)| {
            let ring = DeformedRing::new(p.clone(), w.clone()).map_err(|e| e.to_string())?;
            let xi = |e: &DeformedElement| ring.xi_derivation(theta, e).map_err(|e| e.to_string());
            let mul = |a: &DeformedElement, b: &DeformedElement| ring.multiply(a, b).map_err(|e| e.to_string());
            let lhs = xi(&mul(x, y)?)?;
            let rhs = mul(&xi(x)?, y)?.add(&mul(x, &xi(y)?)?);
            (lhs == rhs).then_some(()).ok_or_else(|| format!("p={p} x={x} y={y}"))
        },
    ));

    props.push(run(
        "alpha_idempotent",
        cfg,
        &mut rng,
        |r| {
            let p = random_weights(r, m, 4);
            let den = r.random_range(1..=m);
            let a: Vec<Rat> = random_ints(r, p.len(), m).into_iter().map(|x| Rat::new(x, den)).collect();
            (p, a)
        },
        |(p, a)| {
            let once = alpha(a, p).map_err(|e| e.to_string())?;
            let twice = alpha(once.entries(), p).map_err(|e| e.to_string())?;
            let ok = once == twice && gamma(once.entries(), p).map_err(|e| e.to_string())?.is_zero();
            ok.then_some(()).ok_or_else(|| format!("p={p} a={a:?}"))
        },
    ));

    props.push(run(
        "product_vanishing_iff_no_common_cone",
        cfg,
        &mut rng,
        |r| {
            let p = random_weights(r, m, 4);
            let a = random_rep(r, &p, m);
            let b = random_rep(r, &p, m);
            (p, a, b)
        },
        |(p, a, b)| {
            let ring = DeformedRing::new(p.clone(), WeightVector::ones(p.len(), crate::lattice::WeightKind::Multiplicities))
                .map_err(|e| e.to_string())?;
            let zero = ring.multiply_monomials(a, b).is_none();
            // the sum of two representatives is again one exactly when they share a cone
            let sum = a.plain_sum(b);
            let sum_is_rep = gamma(&sum, p).map_err(|e| e.to_string())?.is_zero();
            let fib = Fibration::new(p.clone());
            let z = |c: &AlphaRep| fib.z(c.entries()).map_err(|e| e.to_string());
            let fibre_zero = fib.restrict_zero_fiber(&fib.multiply_fibered(&z(a)?, &z(b)?)).is_zero();
            (zero == !sum_is_rep && zero == fibre_zero && zero == !same_cone(a, b))
                .then_some(())
                .ok_or_else(|| format!("p={p} a={a} b={b}"))
        },
    ));

    props.push(run(
        "nu_additive_and_linear",
        cfg,
        &mut rng,
        |r| {
            let p = random_weights(r, m, 4);
            let w = random_multiplicities(r, p.len(), m);
            let a = random_ints(r, p.len(), m);
            let b = random_rep(r, &p, m);
            (p, w, a, b)
        },
        |(p, w, a, b)| {
            let c = alpha_of_integers(a, p).map_err(|e| e.to_string())?;
            let ar: Vec<Rat> = a.iter().map(|&x| int(x)).collect();
            let g = gamma(&ar, p).map_err(|e| e.to_string())?;
            let linear: Rat = (0..p.len())
                .map(|i| (ar[i] - g * int(p.get(i))) / int(w.get(i)))
                .sum();
            if degree_nu(&c, w) != linear {
                return Err(format!("nu(alpha({a:?})) for p={p} w={w}"));
            }
            let ring = DeformedRing::new(p.clone(), w.clone()).map_err(|e| e.to_string())?;
            if let Some(prod) = ring.multiply_monomials(&c, b) {
                if degree_nu(&prod, w) != degree_nu(&c, w) + degree_nu(b, w) {
                    return Err(format!("nu not additive on {c} * {b}"));
                }
            }
            Ok(())
        },
    ));

    props.push(run(
        "phi_star_injective_and_square_commutes",
        cfg,
        &mut rng,
        |r| {
            let p = random_weights(r, m, 4);
            let t1 = random_t_element(r, &p);
            let t2 = random_t_element(r, &p);
            let b1 = random_s_element(r, &p);
            let b2 = random_s_element(r, &p);
            (p, t1, b1, t2, b2)
        },
        |(p, t1, b1, t2, b2)| {
            let fib = Fibration::new(p.clone());
            let n1 = fib.normalize_monomial(t1, b1).map_err(|e| e.to_string())?;
            let n2 = fib.normalize_monomial(t2, b2).map_err(|e| e.to_string())?;
            let (v1, v2) = (fib.phi_star(&n1), fib.phi_star(&n2));
            if (v1 == v2) != (n1 == n2) {
                return Err(format!("phi* identifies {n1:?} and {n2:?}"));
            }
            if fib.phi_star_inverse(&v1) != n1 {
                return Err(format!("phi* not inverted at {n1:?}"));
            }
            if !fib.maps().square_commutes(t1) {
                return Err(format!("square does not commute at {}", fmt_rat(t1)));
            }
            Ok(())
        },
    ));

    props.push(run(
        "normalize_idempotent",
        cfg,
        &mut rng,
        |r| {
            let p = random_weights(r, m, 4);
            let t = random_t_element(r, &p);
            let b = random_s_element(r, &p);
            let theta = random_theta(r, &p);
            (p, t, b, theta)
        },
        |(p, t, b, theta)| {
            let fib = Fibration::new(p.clone());
            let once = fib.normalize_monomial(t, b).map_err(|e| e.to_string())?;
            let twice = fib
                .normalize_monomial(&once.t_exp, once.z_exp.entries())
                .map_err(|e| e.to_string())?;
            if once != twice || !fib.is_normal(&once) {
                return Err(format!("p={p} t={} b={b:?}", fmt_rat(t)));
            }
            // scaling by theta before or after normalizing agrees
            if theta.eval(b) != theta.eval(once.z_exp.entries()) {
                return Err(format!("theta changes under normalization at {b:?}"));
            }
            Ok(())
        },
    ));

    SuiteReport::new("properties", cfg.seed, m, props)
}

/// Randomized checks of the rescaling maps.
pub fn rescale_suite(cfg: &SuiteConfig) -> SuiteReport {
    let m = cfg.max_entry;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let pair_gen = |r: &mut StdRng| loop {
        let p = random_weights(r, m, 4);
        let a = r.random_range(1..=m);
        if let Ok(pair) = RescalePair::new(p, a) {
            return pair;
        }
    };
    let mut props = Vec::new();

    props.push(run(
        "remainder_identity",
        cfg,
        &mut rng,
        |r| {
            let pair = pair_gen(r);
            let len = pair.p().len();
            let (i, j) = (r.random_range(0..len), r.random_range(0..len));
            (pair, i, j, r.random_range(0..=20))
        },
        |(pair, i, j, k)| {
            remainder_identity(pair.p(), pair.a(), *i, *j, *k)
                .then_some(())
                .ok_or_else(|| format!("p={} a={} i={i} j={j} k={k}", pair.p(), pair.a()))
        },
    ));

    props.push(run(
        "h_star_additive",
        cfg,
        &mut rng,
        |r| {
            let pair = pair_gen(r);
            let x = random_t_element(r, pair.p());
            let y = random_t_element(r, pair.p());
            (pair, x, y)
        },
        |(pair, x, y)| {
            let h = |g: &Rat| h_star(g, pair).map_err(|e| e.to_string());
            (h(&(x + y))? == h(x)? + h(y)? && h(&Rat::zero())?.is_zero())
                .then_some(())
                .ok_or_else(|| format!("p={} a={}", pair.p(), pair.a()))
        },
    ));

    props.push(run(
        "scale_commutes_with_gamma_and_alpha",
        cfg,
        &mut rng,
        |r| {
            let pair = pair_gen(r);
            let b = random_s_element(r, pair.p());
            (pair, b)
        },
        |(pair, b)| {
            let img = phi_scale_raw(b, pair);
            let e = |x: crate::error::Error| x.to_string();
            let g = gamma(b, pair.p()).map_err(e)?;
            let ok = g / int(pair.a()) == gamma(&img, pair.scaled()).map_err(e)?
                && phi_scale_raw(alpha(b, pair.p()).map_err(e)?.entries(), pair)
                    == alpha(&img, pair.scaled()).map_err(e)?.into_entries()
                && AlphaRep::new(
                    phi_scale_raw(alpha(b, pair.p()).map_err(e)?.entries(), pair),
                    pair.scaled(),
                )
                .is_ok();
            ok.then_some(())
                .ok_or_else(|| format!("p={} a={} b={b:?}", pair.p(), pair.a()))
        },
    ));

    SuiteReport::new("rescale", cfg.seed, m, props)
}

/// Fibered monomials whose `t`-exponent is an element of `T` by construction.
pub fn random_fibered(rng: &mut StdRng, p: &WeightVector) -> FiberedMonomial {
    let fib = Fibration::new(p.clone());
    let t = random_t_element(rng, p);
    let b = random_s_element(rng, p);
    fib.normalize_monomial(&t, &b).expect("sums of generators lie in S")
}
