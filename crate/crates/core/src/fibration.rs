//! The coordinate ring `Q[T + S] / I` of the mirror fibration `Y(p) -> C(p)`.
//!
//! A monomial `t^g z^b` is kept in normal form: `gamma(b) = 0`, with the excess
//! `gamma(b) p` moved into the `t`-exponent by the relations
//! `z^b = t^{gamma(b)} z^{alpha(b)}` generating `I`. Setting every positive power
//! of `t` to zero recovers the deformed group ring, which gives a second,
//! independent construction of the orbifold Chow ring.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::deformed_ring::{degree_nu, DeformedElement, DeformedRing, GradedQuotient};
use crate::error::{Error, Result};
use crate::lattice::{
    alpha_unchecked, fmt_vec, gamma_unchecked, in_alpha_image, AlphaRep, DualFunctional, WeightVector,
};
use crate::par::Strategy;
use crate::rational::{fmt_rat, rat_to_coeff, Coeff, Rat};
use crate::semigroup::{s_generators, t_membership};

/// Default bound on the number of generators in `T`-membership checks.
pub const DEFAULT_T_BOUND: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberedMonomial {
    pub t_exp: Rat,
    pub z_exp: AlphaRep,
}

impl FiberedMonomial {
    pub fn one(len: usize) -> Self {
        Self {
            t_exp: Rat::zero(),
            z_exp: AlphaRep::zero(len),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiberedElement {
    terms: BTreeMap<FiberedMonomial, Coeff>,
}

impl FiberedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: FiberedMonomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, Coeff::from_integer(1.into()));
        e
    }

    pub fn add_term(&mut self, m: FiberedMonomial, k: Coeff) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(k);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_term(m.clone(), k.clone());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<FiberedMonomial, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Operations of `Q[T + S] / I` for a fixed weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibration {
    p: WeightVector,
    t_bound: u32,
}

impl Fibration {
    pub fn new(p: WeightVector) -> Self {
        Self {
            p,
            t_bound: DEFAULT_T_BOUND,
        }
    }

    pub fn with_t_bound(mut self, bound: u32) -> Self {
        self.t_bound = bound;
        self
    }

    pub fn p(&self) -> &WeightVector {
        &self.p
    }

    /// The unique normal form of `t^{gamma0} z^{b}`:
    /// `(gamma0 + gamma(b), alpha(b))`.
    pub fn normalize_monomial(&self, gamma0: &Rat, b_raw: &[Rat]) -> Result<FiberedMonomial> {
        if b_raw.len() != self.p.len() {
            return Err(Error::LengthMismatch {
                expected: self.p.len(),
                got: b_raw.len(),
            });
        }
        if b_raw.iter().any(|x| x.is_negative()) || gamma0.is_negative() {
            return Err(Error::NotInAlphaImage(fmt_vec(b_raw)));
        }
        let g = gamma_unchecked(b_raw, &self.p);
        let rep = alpha_unchecked(b_raw, &self.p);
        if !in_alpha_image(rep.entries(), &self.p) {
            return Err(Error::NotInAlphaImage(fmt_vec(b_raw)));
        }
        Ok(FiberedMonomial {
            t_exp: gamma0 + g,
            z_exp: rep,
        })
    }

    /// `z^b` for an element `b` of `S`, normalized.
    pub fn z(&self, b: &[Rat]) -> Result<FiberedElement> {
        Ok(FiberedElement::monomial(self.normalize_monomial(&Rat::zero(), b)?))
    }

    /// `t^g`.
    pub fn t(&self, g: Rat) -> FiberedElement {
        FiberedElement::monomial(FiberedMonomial {
            t_exp: g,
            z_exp: AlphaRep::zero(self.p.len()),
        })
    }

    pub fn multiply_monomials(&self, a: &FiberedMonomial, b: &FiberedMonomial) -> FiberedMonomial {
        let sum = a.z_exp.plain_sum(&b.z_exp);
        self.normalize_monomial(&(a.t_exp + b.t_exp), &sum)
            .expect("products of normal forms stay in S")
    }

    pub fn multiply_fibered(&self, x: &FiberedElement, y: &FiberedElement) -> FiberedElement {
        let mut out = FiberedElement::zero();
        for (a, ka) in &x.terms {
            for (b, kb) in &y.terms {
                out.add_term(self.multiply_monomials(a, b), ka * kb);
            }
        }
        out
    }

    /// Kills every positive power of `t`, landing in the deformed group ring.
    pub fn restrict_zero_fiber(&self, x: &FiberedElement) -> DeformedElement {
        DeformedElement::from_terms(
            x.terms
                .iter()
                .filter(|(m, _)| m.t_exp.is_zero())
                .map(|(m, k)| (m.z_exp.clone(), k.clone())),
        )
    }

    /// `f_w = sum_i z_i^{w_i}`.
    pub fn build_f(&self, w: &WeightVector) -> Result<FiberedElement> {
        if w.len() != self.p.len() {
            return Err(Error::LengthMismatch {
                expected: self.p.len(),
                got: w.len(),
            });
        }
        let len = self.p.len();
        let mut f = FiberedElement::zero();
        for i in 0..len {
            f.add_term(
                FiberedMonomial {
                    t_exp: Rat::zero(),
                    z_exp: AlphaRep::unit(len, i, w.get(i)),
                },
                Coeff::from_integer(1.into()),
            );
        }
        Ok(f)
    }

    /// `t^g z^b -> theta(b) t^g z^b`. Since `theta` kills `p`, scaling before or
    /// after normalization gives the same result, so the derivation preserves `I`.
    pub fn xi_fibered(&self, theta: &DualFunctional, x: &FiberedElement) -> Result<FiberedElement> {
        let theta = DualFunctional::new(theta.entries().to_vec(), &self.p)?;
        let mut out = FiberedElement::zero();
        for (m, k) in &x.terms {
            out.add_term(m.clone(), k * rat_to_coeff(&theta.eval(m.z_exp.entries())));
        }
        Ok(out)
    }

    /// `t^g z^b -> x^{b - g p}`, a Laurent exponent on the torus.
    pub fn phi_star(&self, m: &FiberedMonomial) -> Vec<Rat> {
        phi_star_raw(&m.t_exp, m.z_exp.entries(), &self.p)
    }

    /// Inverse of [`Self::phi_star`] on normal forms: `g = -min_i v_i / p_i`.
    pub fn phi_star_inverse(&self, v: &[Rat]) -> FiberedMonomial {
        FiberedMonomial {
            t_exp: -gamma_unchecked(v, &self.p),
            z_exp: alpha_unchecked(v, &self.p),
        }
    }

    /// Normal form, nonnegative `t`-exponent in `T` (bounded check).
    pub fn is_normal(&self, m: &FiberedMonomial) -> bool {
        in_alpha_image(m.z_exp.entries(), &self.p)
            && !m.t_exp.is_negative()
            && t_membership(&m.t_exp, &self.p, self.t_bound).unwrap_or(m.t_exp.is_zero())
    }

    pub fn maps(&self) -> FibrationMaps {
        FibrationMaps { p: self.p.clone() }
    }

    /// The Jacobian algebra of `f_w` on the zero fibre, built from the
    /// semigroup `S` and the fibered product alone.
    ///
    /// Monomials are enumerated as sums of `S` generators with a vanishing
    /// coordinate (the others are killed with the zero fibre), relations are
    /// `z^m * xi_theta(f_w)` restricted to the zero fibre.
    pub fn zero_fiber_quotient(&self, w: &WeightVector, cap: &Rat, strategy: Strategy) -> Result<GradedQuotient> {
        let ring = DeformedRing::new(self.p.clone(), w.clone())?;
        let monomials = self.zero_fiber_monomials(w, cap);
        let f = self.build_f(w)?;
        let xis: Vec<FiberedElement> = crate::lattice::dual_kernel_basis(&self.p)
            .iter()
            .map(|theta| self.xi_fibered(theta, &f))
            .collect::<Result<_>>()?;
        let relations = |m: &AlphaRep| {
            let zm = FiberedElement::monomial(FiberedMonomial {
                t_exp: Rat::zero(),
                z_exp: m.clone(),
            });
            xis.iter()
                .map(|g| self.restrict_zero_fiber(&self.multiply_fibered(&zm, g)))
                .collect()
        };
        let product = |a: &AlphaRep, b: &AlphaRep| {
            let m = |c: &AlphaRep| {
                FiberedElement::monomial(FiberedMonomial {
                    t_exp: Rat::zero(),
                    z_exp: c.clone(),
                })
            };
            self.restrict_zero_fiber(&self.multiply_fibered(&m(a), &m(b)))
        };
        GradedQuotient::assemble(&ring, cap, monomials, relations, product, strategy)
    }

    fn zero_fiber_monomials(&self, w: &WeightVector, cap: &Rat) -> BTreeMap<Rat, Vec<AlphaRep>> {
        let gens: Vec<AlphaRep> = s_generators(&self.p).all().into_iter().map(|g| g.exponent).collect();
        let zero = AlphaRep::zero(self.p.len());
        let mut seen: BTreeSet<AlphaRep> = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let sum = x.plain_sum(g);
                if sum.iter().all(|v| v.is_positive()) {
                    continue;
                }
                let rep = AlphaRep::from_trusted(sum);
                if degree_nu(&rep, w) <= *cap && seen.insert(rep.clone()) {
                    frontier.push(rep);
                }
            }
        }
        let mut out: BTreeMap<Rat, Vec<AlphaRep>> = BTreeMap::new();
        for c in seen {
            out.entry(degree_nu(&c, w)).or_default().push(c);
        }
        out
    }

    /// The zero-fibre Jacobian algebra, checked against the deformed-ring
    /// quotient; any difference is reported as an internal error.
    pub fn jacobian_algebra_zero_fiber(&self, w: &WeightVector, cap: &Rat) -> Result<GradedQuotient> {
        self.jacobian_algebra_zero_fiber_with(w, cap, Strategy::default())
    }

    pub fn jacobian_algebra_zero_fiber_with(
        &self,
        w: &WeightVector,
        cap: &Rat,
        strategy: Strategy,
    ) -> Result<GradedQuotient> {
        let fibre = self.zero_fiber_quotient(w, cap, strategy)?;
        let ring = DeformedRing::new(self.p.clone(), w.clone())?;
        let direct = ring.orbifold_chow_with(cap, strategy)?;
        if fibre != direct {
            return Err(Error::PathMismatch(describe_difference(&fibre, &direct)));
        }
        Ok(fibre)
    }
}

fn describe_difference(a: &GradedQuotient, b: &GradedQuotient) -> String {
    if a.degrees() != b.degrees() {
        return "degree lists differ".into();
    }
    for (sa, sb) in a.slices().iter().zip(b.slices()) {
        if sa.monomials != sb.monomials {
            return format!("monomials of degree {} differ", fmt_rat(&sa.degree));
        }
        if sa.dim() != sb.dim() {
            return format!(
                "dimension in degree {}: {} vs {}",
                fmt_rat(&sa.degree),
                sa.dim(),
                sb.dim()
            );
        }
    }
    "reduction data or structure constants differ".into()
}

pub(crate) fn phi_star_raw(t_exp: &Rat, b: &[Rat], p: &WeightVector) -> Vec<Rat> {
    b.iter()
        .zip(p.entries())
        .map(|(x, &pi)| x - t_exp * pi)
        .collect()
}

/// The four monoid maps of the square `T + S -> S_bar`, `T -> T_bar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationMaps {
    p: WeightVector,
}

impl FibrationMaps {
    /// `phi*(g, b) = b - g p`.
    pub fn phi(&self, g: &Rat, b: &[Rat]) -> Vec<Rat> {
        phi_star_raw(g, b, &self.p)
    }

    /// `pi*(g) = (g, 0)`.
    pub fn pi(&self, g: &Rat) -> (Rat, Vec<Rat>) {
        (*g, vec![Rat::zero(); self.p.len()])
    }

    /// `psi*(g) = -g`.
    pub fn psi(&self, g: &Rat) -> Rat {
        -g
    }

    /// `rho*(l) = l p`.
    pub fn rho(&self, l: &Rat) -> Vec<Rat> {
        self.p.entries().iter().map(|&pi| l * pi).collect()
    }

    /// `phi* . pi* = rho* . psi*` at `g`.
    pub fn square_commutes(&self, g: &Rat) -> bool {
        let (t, b) = self.pi(g);
        self.phi(&t, &b) == self.rho(&self.psi(g))
    }
}
