//! The deformed group ring `Q[N]^Sigma` of the stacky fan of `X(w, p)` and its
//! graded Jacobian quotient, which presents the orbifold Chow ring.
//!
//! Monomials `y^c` are indexed by class representatives. Two monomials
//! multiply to `y^{c1 + c2}` when their classes share a cone and to zero
//! otherwise; for classes in a common cone the coordinate-wise sum is again a
//! representative, so no renormalization is needed.
//!
//! The grading is the Newton degree `nu(c) = sum_i c_i / w_i`. Each Jacobian
//! generator `xi_theta(sum_i y^{w_i e_i})` is homogeneous of degree 1, so the
//! quotient is computed one degree slice at a time.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dual_kernel_basis, same_cone, AlphaRep, DualFunctional, WeightKind, WeightVector};
use crate::linalg::{add_to, Rref, SparseRow};
use crate::par::Strategy;
use crate::rational::{fmt_rat, int, rat_to_coeff, Coeff, Rat};

/// An element of `Q[N]^Sigma`: a finite sum of monomials with nonzero
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeformedElement {
    terms: BTreeMap<AlphaRep, Coeff>,
}

impl DeformedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: AlphaRep) -> Self {
        Self::term(c, Coeff::from_integer(1.into()))
    }

    pub fn term(c: AlphaRep, k: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(c, k);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (AlphaRep, Coeff)>) -> Self {
        let mut e = Self::zero();
        for (c, k) in terms {
            e.add_term(c, k);
        }
        e
    }

    pub fn add_term(&mut self, c: AlphaRep, k: Coeff) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(c) {
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

    pub fn terms(&self) -> &BTreeMap<AlphaRep, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &AlphaRep) -> Coeff {
        self.terms.get(c).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(c.clone(), k.clone());
        }
        out
    }

    pub fn scale(&self, k: &Coeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(c, v)| (c.clone(), v * k)))
    }
}

impl fmt::Display for DeformedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, k)) in self.terms.iter().enumerate() {
            let sign = if k.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{sep}{}*y^{c}", k.abs())?;
        }
        Ok(())
    }
}

/// `nu(c) = sum_i c_i / w_i`.
pub fn degree_nu(c: &AlphaRep, w: &WeightVector) -> Rat {
    c.entries()
        .iter()
        .zip(w.entries())
        .fold(Rat::zero(), |acc, (x, &wi)| acc + x / wi)
}

/// Multiplication table and derivations of `Q[N]^Sigma` for fixed `(p, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedRing {
    p: WeightVector,
    w: WeightVector,
}

impl DeformedRing {
    pub fn new(p: WeightVector, w: WeightVector) -> Result<Self> {
        if p.len() != w.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                got: w.len(),
            });
        }
        if p.kind() != WeightKind::Weights {
            return Err(Error::InvalidWeights("expected weights p, got multiplicities".into()));
        }
        Ok(Self { p, w })
    }

    pub fn p(&self) -> &WeightVector {
        &self.p
    }

    pub fn w(&self) -> &WeightVector {
        &self.w
    }

    fn check(&self, x: &DeformedElement) -> Result<()> {
        match x.terms.keys().find(|c| c.len() != self.p.len()) {
            Some(c) => Err(Error::LengthMismatch {
                expected: self.p.len(),
                got: c.len(),
            }),
            None => Ok(()),
        }
    }

    /// The monomial product: `y^{c1 + c2}` if `c1, c2` share a cone, else 0.
    pub fn multiply_monomials(&self, c1: &AlphaRep, c2: &AlphaRep) -> Option<AlphaRep> {
        same_cone(c1, c2).then(|| AlphaRep::from_trusted(c1.plain_sum(c2)))
    }

    pub fn multiply(&self, x: &DeformedElement, y: &DeformedElement) -> Result<DeformedElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = DeformedElement::zero();
        for (c1, k1) in &x.terms {
            for (c2, k2) in &y.terms {
                if let Some(c) = self.multiply_monomials(c1, c2) {
                    out.add_term(c, k1 * k2);
                }
            }
        }
        Ok(out)
    }

    /// `xi_theta(y^c) = theta(c) y^c`, extended linearly.
    pub fn xi_derivation(&self, theta: &DualFunctional, x: &DeformedElement) -> Result<DeformedElement> {
        self.check(x)?;
        let theta = DualFunctional::new(theta.entries().to_vec(), &self.p)?;
        Ok(DeformedElement::from_terms(x.terms.iter().map(|(c, k)| {
            let v = theta.eval(c.entries());
            debug_assert!(v.is_integer());
            (c.clone(), k * rat_to_coeff(&v))
        })))
    }

    /// `sum_i y^{w_i e_i}`, the image of the rays under `beta`.
    pub fn superpotential(&self) -> DeformedElement {
        let len = self.p.len();
        DeformedElement::from_terms(
            (0..len).map(|i| (AlphaRep::unit(len, i, self.w.get(i)), Coeff::from_integer(1.into()))),
        )
    }

    /// `xi_theta(sum_i y^{w_i e_i}) = sum_i w_i theta_i y^{w_i e_i}` for each
    /// `theta` in a basis of the dual lattice.
    pub fn jacobian_generators(&self) -> Vec<DeformedElement> {
        self.jacobian_generators_for(&dual_kernel_basis(&self.p))
    }

    pub fn jacobian_generators_for(&self, basis: &[DualFunctional]) -> Vec<DeformedElement> {
        let f = self.superpotential();
        basis
            .iter()
            .map(|theta| self.xi_derivation(theta, &f).expect("basis annihilates p"))
            .collect()
    }

    pub fn degree_nu(&self, c: &AlphaRep) -> Rat {
        degree_nu(c, &self.w)
    }

    /// All class representatives of Newton degree at most `cap`, bucketed by
    /// degree and sorted lexicographically within each bucket.
    ///
    /// A representative with `c_j = 0` has `c_i = (k p_i mod p_j) / p_j + m_i`
    /// for some `k < p_j` and integers `m_i >= 0` with `m_j = 0`; the
    /// enumeration runs over all such `(j, k, m)`.
    pub fn monomials_up_to(&self, cap: &Rat) -> BTreeMap<Rat, Vec<AlphaRep>> {
        let len = self.p.len();
        let mut all = BTreeSet::new();
        for j in 0..len {
            let pj = self.p.get(j);
            for k in 0..pj {
                let base: Vec<Rat> = self
                    .p
                    .entries()
                    .iter()
                    .map(|&pi| Rat::new((k * pi).rem_euclid(pj), pj))
                    .collect();
                let start = degree_nu(&AlphaRep::from_trusted(base.clone()), &self.w);
                if start > *cap {
                    continue;
                }
                let mut cur = base.clone();
                self.extend_integral(&mut cur, 0, j, start, cap, &mut all);
            }
        }
        let mut out: BTreeMap<Rat, Vec<AlphaRep>> = BTreeMap::new();
        for c in all {
            out.entry(self.degree_nu(&c)).or_default().push(c);
        }
        out
    }

    fn extend_integral(
        &self,
        cur: &mut Vec<Rat>,
        idx: usize,
        skip: usize,
        deg: Rat,
        cap: &Rat,
        out: &mut BTreeSet<AlphaRep>,
    ) {
        if idx == cur.len() {
            out.insert(AlphaRep::from_trusted(cur.clone()));
            return;
        }
        if idx == skip {
            self.extend_integral(cur, idx + 1, skip, deg, cap, out);
            return;
        }
        let step = Rat::new(1, self.w.get(idx));
        let original = cur[idx];
        let mut d = deg;
        while d <= *cap {
            self.extend_integral(cur, idx + 1, skip, d, cap, out);
            cur[idx] += int(1);
            d += step;
        }
        cur[idx] = original;
    }

    pub fn monomials_of_degree(&self, d: &Rat) -> Vec<AlphaRep> {
        self.monomials_up_to(d).remove(d).unwrap_or_default()
    }

    /// The orbifold Chow ring as the graded quotient of `Q[N]^Sigma` by the
    /// Jacobian ideal, through degree `cap` (at least the dimension `n`).
    pub fn orbifold_chow(&self, cap: &Rat) -> Result<GradedQuotient> {
        self.orbifold_chow_with(cap, Strategy::default())
    }

    pub fn orbifold_chow_with(&self, cap: &Rat, strategy: Strategy) -> Result<GradedQuotient> {
        let monomials = self.monomials_up_to(cap);
        let gens = self.jacobian_generators();
        let relations = |m: &AlphaRep| {
            let ym = DeformedElement::monomial(m.clone());
            gens.iter()
                .map(|g| self.multiply(&ym, g).expect("same ring"))
                .collect()
        };
        let product = |a: &AlphaRep, b: &AlphaRep| {
            self.multiply_monomials(a, b)
                .map(DeformedElement::monomial)
                .unwrap_or_default()
        };
        GradedQuotient::assemble(self, cap, monomials, relations, product, strategy)
    }
}

/// Default degree cap: one full unit above the dimension.
pub fn default_degree_cap(p: &WeightVector) -> Rat {
    int(p.dim() as i64 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice {
    pub degree: Rat,
    /// All monomials of this degree, in canonical order; these index the
    /// columns of the relation matrix.
    pub monomials: Vec<AlphaRep>,
    reducer: Rref,
    /// Global index of this slice's first basis element.
    offset: usize,
}

impl DegreeSlice {
    pub fn dim(&self) -> usize {
        self.reducer.free_columns().len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &AlphaRep> {
        self.reducer.free_columns().iter().map(|&c| &self.monomials[c])
    }

    /// For each eliminated monomial, its expression in the surviving basis
    /// (local basis indices).
    pub fn reducers(&self) -> Vec<(AlphaRep, Vec<(usize, Coeff)>)> {
        let local: HashMap<usize, usize> = self
            .reducer
            .free_columns()
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        self.reducer
            .pivot_expressions()
            .iter()
            .map(|(&c, expr)| {
                (
                    self.monomials[c].clone(),
                    expr.iter().map(|(f, v)| (local[f], v.clone())).collect(),
                )
            })
            .collect()
    }
}

/// Per-degree monomial bases, reduction data and structure constants of the
/// Jacobian quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotient {
    p: WeightVector,
    w: WeightVector,
    degree_cap: Rat,
    slices: Vec<DegreeSlice>,
    /// `(i, j)` with `i <= j` maps to the nonzero coordinates of `b_i * b_j`.
    structure_constants: BTreeMap<(usize, usize), Vec<(usize, Coeff)>>,
}

impl GradedQuotient {
    /// Builds the quotient from a monomial enumeration, the relations `m * g`
    /// attached to each monomial `m`, and the monomial product. Shared by the
    /// deformed-ring and zero-fibre constructions.
    pub(crate) fn assemble<R, P>(
        ring: &DeformedRing,
        cap: &Rat,
        monomials: BTreeMap<Rat, Vec<AlphaRep>>,
        relations: R,
        product: P,
        strategy: Strategy,
    ) -> Result<Self>
    where
        R: Fn(&AlphaRep) -> Vec<DeformedElement> + Sync + Send,
        P: Fn(&AlphaRep, &AlphaRep) -> DeformedElement + Sync + Send,
    {
        let n = ring.p.dim();
        if *cap < int(n as i64) {
            return Err(Error::DegreeCapTooSmall {
                cap: fmt_rat(cap),
                dim: n,
            });
        }
        let degrees: Vec<(Rat, Vec<AlphaRep>)> = monomials.clone().into_iter().collect();
        let reducers = strategy.map(&degrees, |(d, cols)| -> Result<Rref> {
            let index: HashMap<&AlphaRep, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut rows = Vec::new();
            if let Some(lower) = monomials.get(&(d - int(1))) {
                for m in lower {
                    for rel in relations(m) {
                        let mut row = SparseRow::new();
                        for (c, k) in rel.terms() {
                            let col = index.get(c).ok_or_else(|| {
                                Error::PathMismatch(format!("relation term y^{c} is not of degree {}", fmt_rat(d)))
                            })?;
                            add_to(&mut row, *col, k.clone());
                        }
                        rows.push(row);
                    }
                }
            }
            Ok(Rref::new(cols.len(), rows))
        });

        let mut slices = Vec::with_capacity(degrees.len());
        let mut offset = 0;
        for ((degree, cols), reducer) in degrees.into_iter().zip(reducers) {
            let reducer = reducer?;
            let dim = reducer.free_columns().len();
            if degree > int(n as i64) && dim > 0 {
                return Err(Error::NonVanishing {
                    degree: fmt_rat(&degree),
                    dim: n,
                });
            }
            slices.push(DegreeSlice {
                degree,
                monomials: cols,
                reducer,
                offset,
            });
            offset += dim;
        }

        let mut q = GradedQuotient {
            p: ring.p.clone(),
            w: ring.w.clone(),
            degree_cap: *cap,
            slices,
            structure_constants: BTreeMap::new(),
        };

        let basis = q.basis();
        let pairs: Vec<(usize, usize)> = (0..basis.len())
            .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
            .collect();
        let products = strategy.map(&pairs, |&(i, j)| {
            let prod = product(&basis[i].1, &basis[j].1);
            q.reduce(&prod).map(|v| ((i, j), v))
        });
        for r in products {
            let (key, v) = r?;
            if !v.is_empty() {
                q.structure_constants.insert(key, v.into_iter().collect());
            }
        }
        Ok(q)
    }

    pub fn p(&self) -> &WeightVector {
        &self.p
    }

    pub fn w(&self) -> &WeightVector {
        &self.w
    }

    pub fn degree_cap(&self) -> Rat {
        self.degree_cap
    }

    pub fn slices(&self) -> &[DegreeSlice] {
        &self.slices
    }

    pub fn degrees(&self) -> Vec<Rat> {
        self.slices.iter().map(|s| s.degree).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.slices.iter().map(DegreeSlice::dim).collect()
    }

    /// Degrees with nonzero dimension, with their dimensions.
    pub fn nonzero_dims(&self) -> BTreeMap<Rat, usize> {
        self.slices
            .iter()
            .filter(|s| s.dim() > 0)
            .map(|s| (s.degree, s.dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.slices.iter().map(DegreeSlice::dim).sum()
    }

    /// The surviving basis monomials with their degrees, in global order.
    pub fn basis(&self) -> Vec<(Rat, AlphaRep)> {
        self.slices
            .iter()
            .flat_map(|s| s.basis().map(move |b| (s.degree, b.clone())))
            .collect()
    }

    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Coeff)>> {
        &self.structure_constants
    }

    /// Coordinates of `b_i * b_j` in the basis.
    pub fn multiply_basis(&self, i: usize, j: usize) -> BTreeMap<usize, Coeff> {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.structure_constants
            .get(&key)
            .map(|v| v.iter().cloned().collect())
            .unwrap_or_default()
    }

    /// Product of two vectors given in basis coordinates.
    pub fn multiply_vectors(
        &self,
        x: &BTreeMap<usize, Coeff>,
        y: &BTreeMap<usize, Coeff>,
    ) -> BTreeMap<usize, Coeff> {
        let mut out = SparseRow::new();
        for (&i, a) in x {
            for (&j, b) in y {
                for (k, c) in self.multiply_basis(i, j) {
                    add_to(&mut out, k, a * b * c);
                }
            }
        }
        out
    }

    /// Coordinates of an element of `Q[N]^Sigma` in the quotient basis.
    /// Terms above the dimension vanish; other terms must lie in a computed
    /// degree.
    pub fn reduce(&self, x: &DeformedElement) -> Result<BTreeMap<usize, Coeff>> {
        let n = int(self.p.dim() as i64);
        let mut by_slice: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (c, k) in x.terms() {
            let d = degree_nu(c, &self.w);
            if d > n {
                continue;
            }
            let s = self
                .slices
                .binary_search_by(|s| s.degree.cmp(&d))
                .map_err(|_| Error::PathMismatch(format!("degree {} is not computed", fmt_rat(&d))))?;
            let col = self.slices[s]
                .monomials
                .binary_search(c)
                .map_err(|_| Error::PathMismatch(format!("monomial y^{c} is not enumerated")))?;
            add_to(by_slice.entry(s).or_default(), col, k.clone());
        }
        let mut out = BTreeMap::new();
        for (s, row) in by_slice {
            let slice = &self.slices[s];
            let local: HashMap<usize, usize> = slice
                .reducer
                .free_columns()
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, i))
                .collect();
            for (c, v) in slice.reducer.reduce(&row) {
                out.insert(slice.offset + local[&c], v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::alpha_of_integers;
    use crate::rational::{coeff, rat};

    fn ring(p: &[i64], w: &[i64]) -> DeformedRing {
        DeformedRing::new(
            WeightVector::weights(p.to_vec()).unwrap(),
            WeightVector::multiplicities(w.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn rep(v: &[Rat]) -> AlphaRep {
        AlphaRep::from_trusted(v.to_vec())
    }

    fn y(v: &[Rat]) -> DeformedElement {
        DeformedElement::monomial(rep(v))
    }

    #[test]
    fn multiply_examples() {
        let r = ring(&[1, 2], &[1, 1]);
        let prod = r.multiply(&y(&[int(1), int(0)]), &y(&[int(0), int(1)])).unwrap();
        assert!(prod.is_zero());

        let r = ring(&[2, 3, 5], &[1, 1, 1]);
        let w1 = y(&[rat(2, 5), rat(3, 5), int(0)]);
        let w2 = y(&[rat(4, 5), rat(1, 5), int(0)]);
        let prod = r.multiply(&w1, &w2).unwrap();
        assert_eq!(prod, y(&[rat(6, 5), rat(4, 5), int(0)]));
        // w3 * z0
        let w3z0 = r
            .multiply(&y(&[rat(1, 5), rat(4, 5), int(0)]), &y(&[int(1), int(0), int(0)]))
            .unwrap();
        assert_eq!(prod, w3z0);

        let one = y(&[int(0), int(0), int(0)]);
        let x = w1.add(&w2.scale(&coeff(-3)));
        assert_eq!(r.multiply(&one, &x).unwrap(), x);
    }

    #[test]
    fn multiply_rejects_wrong_length() {
        let r = ring(&[1, 2], &[1, 1]);
        let bad = y(&[int(0), int(0), int(0)]);
        assert!(r.multiply(&bad, &bad).is_err());
    }

    #[test]
    fn xi_examples() {
        let r = ring(&[1, 2], &[1, 1]);
        let theta = DualFunctional::new(vec![2, -1], r.p()).unwrap();
        assert!(r.xi_derivation(&theta, &y(&[int(0), int(0)])).unwrap().is_zero());
        let x = y(&[int(1), int(0)]).add(&y(&[int(0), int(1)]));
        let expected = DeformedElement::from_terms([
            (rep(&[int(1), int(0)]), coeff(2)),
            (rep(&[int(0), int(1)]), coeff(-1)),
        ]);
        assert_eq!(r.xi_derivation(&theta, &x).unwrap(), expected);

        let r = ring(&[1, 1], &[1, 1]);
        let theta = DualFunctional::new(vec![1, -1], r.p()).unwrap();
        let a = y(&[int(1), int(0)]);
        let b = y(&[int(2), int(0)]);
        let lhs = r.xi_derivation(&theta, &r.multiply(&a, &b).unwrap()).unwrap();
        assert_eq!(lhs, y(&[int(3), int(0)]).scale(&coeff(3)));
        let rhs = r
            .multiply(&r.xi_derivation(&theta, &a).unwrap(), &b)
            .unwrap()
            .add(&r.multiply(&a, &r.xi_derivation(&theta, &b).unwrap()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobian_generator_examples() {
        let r = ring(&[1, 1], &[1, 1]);
        let expected = y(&[int(1), int(0)]).add(&y(&[int(0), int(1)]).scale(&coeff(-1)));
        assert_eq!(r.jacobian_generators(), vec![expected]);

        let r = ring(&[1, 2], &[1, 1]);
        let expected = y(&[int(1), int(0)]).scale(&coeff(2)).add(&y(&[int(0), int(1)]).scale(&coeff(-1)));
        assert_eq!(r.jacobian_generators(), vec![expected]);

        let r = ring(&[2, 3, 5], &[2, 1, 3]);
        for g in r.jacobian_generators() {
            for c in g.terms().keys() {
                assert_eq!(r.degree_nu(c), int(1));
            }
        }
    }

    #[test]
    fn degree_examples() {
        let w = WeightVector::multiplicities(vec![1, 1, 1]).unwrap();
        assert_eq!(degree_nu(&AlphaRep::zero(3), &w), int(0));
        let w = WeightVector::multiplicities(vec![2, 3, 4]).unwrap();
        for i in 0..3 {
            assert_eq!(degree_nu(&AlphaRep::unit(3, i, w.get(i)), &w), int(1));
        }
        let w = WeightVector::multiplicities(vec![1, 1, 1]).unwrap();
        assert_eq!(degree_nu(&rep(&[rat(2, 5), rat(3, 5), int(0)]), &w), int(1));
    }

    #[test]
    fn monomial_enumeration_examples() {
        let r = ring(&[1, 2], &[1, 1]);
        assert_eq!(r.monomials_of_degree(&int(0)), vec![AlphaRep::zero(2)]);
        assert_eq!(
            r.monomials_of_degree(&int(1)),
            vec![rep(&[int(0), int(1)]), rep(&[int(1), int(0)])]
        );
        assert_eq!(r.monomials_of_degree(&rat(1, 2)), vec![rep(&[rat(1, 2), int(0)])]);
    }

    #[test]
    fn enumeration_matches_alpha_of_integer_box() {
        // every alpha(a) of small degree is enumerated, and nothing else
        let r = ring(&[2, 3, 5], &[1, 2, 1]);
        let cap = int(2);
        let listed: BTreeSet<AlphaRep> = r.monomials_up_to(&cap).into_values().flatten().collect();
        let mut seen = BTreeSet::new();
        for a0 in -12..=12 {
            for a1 in -12..=12 {
                for a2 in -12..=12 {
                    let c = alpha_of_integers(&[a0, a1, a2], r.p()).unwrap();
                    if r.degree_nu(&c) <= cap {
                        seen.insert(c);
                    }
                }
            }
        }
        assert_eq!(listed, seen);
    }

    #[test]
    fn chow_projective_plane() {
        let r = ring(&[1, 1, 1], &[1, 1, 1]);
        let q = r.orbifold_chow(&int(3)).unwrap();
        assert_eq!(
            q.nonzero_dims(),
            BTreeMap::from([(int(0), 1), (int(1), 1), (int(2), 1)])
        );
        assert_eq!(q.total_dim(), 3);
    }

    #[test]
    fn chow_small_weighted_cases() {
        let expected = BTreeMap::from([(int(0), 1), (rat(1, 2), 1), (int(1), 1)]);
        let q = ring(&[1, 2], &[1, 1]).orbifold_chow(&int(2)).unwrap();
        assert_eq!(q.nonzero_dims(), expected);
        let q = ring(&[1, 1], &[2, 1]).orbifold_chow(&int(2)).unwrap();
        assert_eq!(q.nonzero_dims(), expected);
    }

    #[test]
    fn cap_below_dimension_is_rejected() {
        let r = ring(&[1, 1, 1], &[1, 1, 1]);
        assert!(matches!(
            r.orbifold_chow(&int(1)),
            Err(Error::DegreeCapTooSmall { .. })
        ));
    }

    #[test]
    fn strategies_agree() {
        let r = ring(&[2, 3, 5], &[1, 2, 1]);
        let a = r.orbifold_chow_with(&int(3), Strategy::Sequential).unwrap();
        let b = r.orbifold_chow_with(&int(3), Strategy::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_kills_relations() {
        let r = ring(&[2, 3, 5], &[1, 1, 1]);
        let q = r.orbifold_chow(&int(3)).unwrap();
        for g in r.jacobian_generators() {
            assert!(q.reduce(&g).unwrap().is_empty());
        }
        let one = q.reduce(&DeformedElement::monomial(AlphaRep::zero(3))).unwrap();
        assert_eq!(one, BTreeMap::from([(0, coeff(1))]));
    }
}
