//! The weight-rescaling isomorphism
//! `X(w, (a p_0, ..., a p_{n-1}, p_n)) = X((w_0, ..., w_{n-1}, a w_n), p)`
//! for `gcd(a, p_n) = 1`, checked on semigroups, on the fibration and on the
//! orbifold Chow rings.
//!
//! On semigroups the map is `h*(g) = g / a` on `T` and
//! `b -> (b_0, ..., b_{n-1}, b_n / a)` on `S`; on the Chow rings the same
//! coordinate map sends each monomial of the right-hand side to a monomial of
//! the left-hand side of equal degree.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::deformed_ring::{default_degree_cap, DeformedElement, DeformedRing, GradedQuotient};
use crate::error::{Error, Result};
use crate::fibration::{FiberedMonomial, Fibration, DEFAULT_T_BOUND};
use crate::lattice::{alpha_unchecked, fmt_vec, gamma_unchecked, AlphaRep, WeightVector};
use crate::linalg;
use crate::presentation::affine_embedding;
use crate::rational::{fmt_rat, int, Coeff, Rat};
use crate::semigroup::{decompose, s_generators, t_generators, t_membership};

/// A weight vector `p` and a factor `a` coprime to `p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescalePair {
    p: WeightVector,
    a: i64,
    scaled: WeightVector,
}

impl RescalePair {
    pub fn new(p: WeightVector, a: i64) -> Result<Self> {
        if a < 1 {
            return Err(Error::Precondition(format!("rescale factor must be positive, got {a}")));
        }
        let n = p.dim();
        if p.get(n).gcd(&a) != 1 {
            return Err(Error::Precondition(format!(
                "rescale factor {a} is not coprime to the last weight {}",
                p.get(n)
            )));
        }
        let scaled = p
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &x)| if i < n { a * x } else { x })
            .collect();
        Ok(Self {
            scaled: WeightVector::weights(scaled)?,
            p,
            a,
        })
    }

    pub fn p(&self) -> &WeightVector {
        &self.p
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// `p' = (a p_0, ..., a p_{n-1}, p_n)`.
    pub fn scaled(&self) -> &WeightVector {
        &self.scaled
    }

    /// `(w_0, ..., w_{n-1}, a w_n)`.
    pub fn transform_w(&self, w: &WeightVector) -> Result<WeightVector> {
        let n = w.len() - 1;
        WeightVector::multiplicities(
            w.entries()
                .iter()
                .enumerate()
                .map(|(i, &x)| if i == n { self.a * x } else { x })
                .collect(),
        )
    }
}

/// `(1/p_i) rem(k p_j, p_i) == (1/(a p_i)) rem(k a p_j, a p_i)`.
pub fn remainder_identity(p: &WeightVector, a: i64, i: usize, j: usize, k: i64) -> bool {
    let (pi, pj) = (p.get(i), p.get(j));
    Rat::new((k * pj).rem_euclid(pi), pi) == Rat::new((k * a * pj).rem_euclid(a * pi), a * pi)
}

/// `g -> g / a`, checked to land in `T(p')`.
pub fn h_star(gamma: &Rat, pair: &RescalePair) -> Result<Rat> {
    if gamma.is_negative() || !t_membership(gamma, &pair.p, DEFAULT_T_BOUND)? {
        return Err(Error::Precondition(format!("{} is not in T({})", fmt_rat(gamma), pair.p)));
    }
    let image = gamma / int(pair.a);
    if !t_membership(&image, &pair.scaled, DEFAULT_T_BOUND)? {
        return Err(Error::Internal(format!(
            "{} is not in T({})",
            fmt_rat(&image),
            pair.scaled
        )));
    }
    Ok(image)
}

/// The coordinate map on raw exponents: divides the last entry by `a`.
pub fn phi_scale_raw(b: &[Rat], pair: &RescalePair) -> Vec<Rat> {
    let mut out = b.to_vec();
    if let Some(last) = out.last_mut() {
        *last /= int(pair.a);
    }
    out
}

/// The coordinate map on representatives, checked to give a representative
/// for `p'`.
pub fn phi_star_scale(b: &AlphaRep, pair: &RescalePair) -> Result<AlphaRep> {
    AlphaRep::new(b.entries().to_vec(), &pair.p)
        .map_err(|_| Error::Precondition(format!("{b} is not a representative for {}", pair.p)))?;
    AlphaRep::new(phi_scale_raw(b.entries(), pair), &pair.scaled)
        .map_err(|e| Error::Internal(format!("image of {b} is invalid: {e}")))
}

/// `(g, b) -> (g / a, phi(b))` on normal forms of the fibration.
pub fn g_star(m: &FiberedMonomial, pair: &RescalePair) -> Result<FiberedMonomial> {
    Ok(FiberedMonomial {
        t_exp: if m.t_exp.is_zero() { Rat::zero() } else { h_star(&m.t_exp, pair)? },
        z_exp: phi_star_scale(&m.z_exp, pair)?,
    })
}

/// One preimage per generator of `S(p')`, as coefficients over the
/// generators of `S(p)` (in [`crate::semigroup::SGeneratorSet::all`] order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preimage {
    pub target: String,
    pub coefficients: Option<Vec<u32>>,
}

/// Every generator of `S(p')` is the image of a sum of generators of `S(p)`.
pub fn surjectivity_witnesses(pair: &RescalePair) -> Vec<Preimage> {
    let source: Vec<AlphaRep> = s_generators(&pair.p).all().into_iter().map(|g| g.exponent).collect();
    s_generators(&pair.scaled)
        .all()
        .into_iter()
        .map(|g| {
            let mut pre = g.exponent.entries().to_vec();
            if let Some(last) = pre.last_mut() {
                *last *= int(pair.a);
            }
            Preimage {
                target: g.exponent.to_string(),
                coefficients: decompose(&pre, &source, &pair.p),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub p: Vec<i64>,
    pub w: Vec<i64>,
    pub a: i64,
    /// `X(w, p')`.
    pub degree_dims_left: Vec<(String, usize)>,
    /// `X((w_0, ..., a w_n), p)`.
    pub degree_dims_right: Vec<(String, usize)>,
    pub total_left: usize,
    pub total_right: usize,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn witness(check: &str, pass: bool, detail: impl Into<String>) -> Witness {
    Witness {
        check: check.into(),
        pass,
        detail: detail.into(),
    }
}

/// Compares the Chow rings of both sides and checks the explicit
/// correspondence: semigroup maps, transport of the fibration relations, the
/// superpotential, the Jacobian relations and the structure constants.
pub fn chow_invariance(w: &WeightVector, p: &WeightVector, a: i64, degree_cap: Option<Rat>) -> Result<InvarianceReport> {
    let pair = RescalePair::new(p.clone(), a)?;
    if w.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: w.len(),
        });
    }
    let w_right = pair.transform_w(w)?;
    let cap = degree_cap.unwrap_or_else(|| default_degree_cap(p));
    let left_ring = DeformedRing::new(pair.scaled.clone(), w.clone())?;
    let right_ring = DeformedRing::new(p.clone(), w_right.clone())?;
    let left = left_ring.orbifold_chow(&cap)?;
    let right = right_ring.orbifold_chow(&cap)?;

    let dims = |q: &GradedQuotient| -> Vec<(String, usize)> {
        q.nonzero_dims().iter().map(|(d, n)| (fmt_rat(d), *n)).collect()
    };
    let mut witnesses = Vec::new();
    let same_dims = left.nonzero_dims() == right.nonzero_dims();
    witnesses.push(witness("graded dimensions", same_dims, format!("{:?} vs {:?}", dims(&left), dims(&right))));

    witnesses.push(semigroup_witness(&pair));
    witnesses.push(transport_witness(&pair)?);
    witnesses.push(superpotential_witness(&pair, &left_ring, &right_ring));
    if same_dims {
        witnesses.extend(ring_witnesses(&pair, &left, &right_ring, &right)?);
    }

    let pass = witnesses.iter().all(|x| x.pass);
    Ok(InvarianceReport {
        p: p.entries().to_vec(),
        w: w.entries().to_vec(),
        a,
        degree_dims_left: dims(&left),
        degree_dims_right: dims(&right),
        total_left: left.total_dim(),
        total_right: right.total_dim(),
        pass,
        witnesses,
    })
}

fn semigroup_witness(pair: &RescalePair) -> Witness {
    let mut failures = Vec::new();
    for g in t_generators(&pair.p).map(|t| t.generators).unwrap_or_default() {
        if let Err(e) = h_star(&g, pair) {
            failures.push(e.to_string());
        }
    }
    let gens = s_generators(&pair.p).all();
    for g in &gens {
        if let Err(e) = phi_star_scale(&g.exponent, pair) {
            failures.push(e.to_string());
        }
    }
    // gamma and alpha commute with the map on sums of two generators
    for x in &gens {
        for y in &gens {
            let b = x.exponent.plain_sum(&y.exponent);
            let img = phi_scale_raw(&b, pair);
            let g = gamma_unchecked(&b, &pair.p);
            if g / int(pair.a) != gamma_unchecked(&img, &pair.scaled)
                || phi_scale_raw(alpha_unchecked(&b, &pair.p).entries(), pair)
                    != alpha_unchecked(&img, &pair.scaled).into_entries()
            {
                failures.push(format!("gamma/alpha do not commute at {}", fmt_vec(&b)));
            }
        }
    }
    let missing: Vec<String> = surjectivity_witnesses(pair)
        .into_iter()
        .filter(|w| w.coefficients.is_none())
        .map(|w| w.target)
        .collect();
    if !missing.is_empty() {
        failures.push(format!("not hit: {}", missing.join(", ")));
    }
    witness(
        "semigroup maps",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} generators of S mapped, S(p') covered", gens.len())
        } else {
            failures.join("; ")
        },
    )
}

/// The relations of the affine embedding of `Y(p)` hold for the images of
/// its generators in `Y(p')`.
fn transport_witness(pair: &RescalePair) -> Result<Witness> {
    let pres = affine_embedding(&pair.p, 3)?;
    let fib = Fibration::new(pair.scaled.clone());
    let images: BTreeMap<&str, FiberedMonomial> = pres
        .generators
        .iter()
        .map(|g| Ok((g.name.as_str(), g_star(&g.monomial, pair)?)))
        .collect::<Result<_>>()?;
    let eval = |m: &BTreeMap<String, u32>| -> Result<FiberedMonomial> {
        let mut t = Rat::zero();
        let mut z = vec![Rat::zero(); pair.p.len()];
        for (name, &e) in m {
            let g = &images[name.as_str()];
            t += g.t_exp * int(i64::from(e));
            for (zi, gi) in z.iter_mut().zip(g.z_exp.entries()) {
                *zi += gi * int(i64::from(e));
            }
        }
        fib.normalize_monomial(&t, &z)
    };
    let mut bad = Vec::new();
    for r in &pres.relations {
        if eval(&r.lhs)? != eval(&r.rhs)? {
            bad.push(r.to_string());
        }
    }
    Ok(witness(
        "relation transport",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} relations carried over", pres.relations.len())
        } else {
            bad.join("; ")
        },
    ))
}

fn map_element(x: &DeformedElement, pair: &RescalePair) -> Result<DeformedElement> {
    Ok(DeformedElement::from_terms(
        x.terms()
            .iter()
            .map(|(c, k)| Ok((phi_star_scale(c, pair)?, k.clone())))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn superpotential_witness(pair: &RescalePair, left: &DeformedRing, right: &DeformedRing) -> Witness {
    let ok = map_element(&right.superpotential(), pair).is_ok_and(|f| f == left.superpotential());
    witness("superpotential", ok, "f maps to f")
}

/// The monomial map carries Jacobian relations to relations, is bijective
/// in every degree, and preserves all structure constants.
fn ring_witnesses(
    pair: &RescalePair,
    left: &GradedQuotient,
    right_ring: &DeformedRing,
    right: &GradedQuotient,
) -> Result<Vec<Witness>> {
    let mut out = Vec::new();

    let gens = right_ring.jacobian_generators();
    let mut leaked = 0;
    let mut checked = 0;
    for slice in right.slices() {
        if slice.degree > int(right.p().dim() as i64) - int(1) {
            continue;
        }
        for m in &slice.monomials {
            let ym = DeformedElement::monomial(m.clone());
            for g in &gens {
                let rel = map_element(&right_ring.multiply(&ym, g)?, pair)?;
                checked += 1;
                if !left.reduce(&rel)?.is_empty() {
                    leaked += 1;
                }
            }
        }
    }
    out.push(witness(
        "jacobian relations",
        leaked == 0,
        format!("{checked} relations mapped, {leaked} nonzero in the target"),
    ));

    // image of the right basis in left coordinates
    let basis = right.basis();
    let images: Vec<BTreeMap<usize, Coeff>> = basis
        .iter()
        .map(|(_, b)| left.reduce(&DeformedElement::monomial(phi_star_scale(b, pair)?)))
        .collect::<Result<_>>()?;
    let dim = left.total_dim();
    let dense: Vec<Vec<Coeff>> = images
        .iter()
        .map(|v| (0..dim).map(|k| v.get(&k).cloned().unwrap_or_else(Coeff::zero)).collect())
        .collect();
    let rank = linalg::rank(&dense);
    let bijective = rank == dim && basis.len() == dim;
    out.push(witness("basis map", bijective, format!("rank {rank} of {dim}")));
    if !bijective {
        return Ok(out);
    }

    let mut mismatches = 0;
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = left.multiply_vectors(&images[i], &images[j]);
            let mut rhs: BTreeMap<usize, Coeff> = BTreeMap::new();
            for (k, c) in right.multiply_basis(i, j) {
                for (l, v) in &images[k] {
                    let e = rhs.entry(*l).or_insert_with(Coeff::zero);
                    *e += &c * v;
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                mismatches += 1;
            }
        }
    }
    out.push(witness(
        "structure constants",
        mismatches == 0,
        format!("{} products compared, {mismatches} differ", basis.len() * (basis.len() + 1) / 2),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn wv(p: &[i64]) -> WeightVector {
        WeightVector::weights(p.to_vec()).unwrap()
    }

    fn mv(w: &[i64]) -> WeightVector {
        WeightVector::multiplicities(w.to_vec()).unwrap()
    }

    #[test]
    fn pair_construction() {
        let pair = RescalePair::new(wv(&[2, 3, 5]), 7).unwrap();
        assert_eq!(pair.scaled().entries(), &[14, 21, 5]);
        assert_eq!(pair.transform_w(&mv(&[1, 2, 3])).unwrap().entries(), &[1, 2, 21]);
        assert!(RescalePair::new(wv(&[1, 2]), 2).is_err());
        assert!(RescalePair::new(wv(&[1, 2]), 0).is_err());
    }

    #[test]
    fn remainder_identity_examples() {
        let p = wv(&[2, 3, 5]);
        assert!(remainder_identity(&p, 7, 0, 1, 1));
        assert!(remainder_identity(&p, 7, 0, 1, 0));
        for a in 1..=10 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..=20 {
                        assert!(remainder_identity(&p, a, i, j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn h_star_examples() {
        let pair = RescalePair::new(wv(&[1, 2]), 3).unwrap();
        assert_eq!(h_star(&int(0), &pair).unwrap(), int(0));
        assert_eq!(h_star(&rat(1, 2), &pair).unwrap(), rat(1, 6));
        assert!(h_star(&rat(1, 3), &pair).is_err());
        let pair = RescalePair::new(wv(&[2, 3, 5]), 7).unwrap();
        for g in t_generators(pair.p()).unwrap().generators {
            h_star(&g, &pair).unwrap();
        }
    }

    #[test]
    fn phi_star_scale_examples() {
        let pair = RescalePair::new(wv(&[1, 2]), 3).unwrap();
        let zero = AlphaRep::zero(2);
        assert_eq!(phi_star_scale(&zero, &pair).unwrap(), zero);
        let b = AlphaRep::new(vec![rat(1, 2), int(0)], pair.p()).unwrap();
        assert_eq!(phi_star_scale(&b, &pair).unwrap().entries(), &[rat(1, 2), int(0)]);
        assert!(surjectivity_witnesses(&pair).iter().all(|w| w.coefficients.is_some()));
    }

    #[test]
    fn invariance_examples() {
        let r = chow_invariance(&mv(&[1, 1]), &wv(&[1, 2]), 3, None).unwrap();
        assert!(r.pass, "{r:?}");
        let expected: Vec<(String, usize)> = ["0/1", "1/3", "1/2", "2/3", "1/1"]
            .iter()
            .map(|d| (d.to_string(), 1))
            .collect();
        assert_eq!(r.degree_dims_left, expected);
        assert_eq!(r.degree_dims_right, expected);
        assert_eq!(r.total_left, 5);

        let r = chow_invariance(&mv(&[1, 1]), &wv(&[1, 1]), 1, None).unwrap();
        assert!(r.pass);
        let r = chow_invariance(&mv(&[1, 1]), &wv(&[1, 1]), 2, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.total_right, 3);
    }
}
