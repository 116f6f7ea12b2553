//! Lattice arithmetic for the stacky fan of `X(w, p)`.
//!
//! `N = Z^{n+1} / <p>` is never represented by a basis. A class of `N` is
//! stored as its [`AlphaRep`]: the point where the line `a + lambda * p` leaves
//! the nonnegative orthant. Two classes are equal iff their representatives
//! are equal, and the cone of the fan containing a class is read off from the
//! zero coordinates of the representative.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// Weights `p` of the coarse weighted projective space.
    Weights,
    /// Root multiplicities `w` of the toric divisors.
    Multiplicities,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<i64>,
    kind: WeightKind,
    well_formed: bool,
}

impl WeightVector {
    /// Weights `p`: entries at least 1 with overall gcd 1.
    pub fn weights(entries: Vec<i64>) -> Result<Self> {
        Self::build(entries, WeightKind::Weights)
    }

    /// Multiplicities `w`: entries at least 1.
    pub fn multiplicities(entries: Vec<i64>) -> Result<Self> {
        Self::build(entries, WeightKind::Multiplicities)
    }

    pub fn ones(len: usize, kind: WeightKind) -> Self {
        Self::build(vec![1; len], kind).expect("all-ones vector is valid")
    }

    fn build(entries: Vec<i64>, kind: WeightKind) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e < 1) {
            return Err(Error::InvalidWeights(format!(
                "entry {bad} in {entries:?} is not positive"
            )));
        }
        if kind == WeightKind::Weights && gcd_all(&entries) != 1 {
            return Err(Error::InvalidWeights(format!(
                "gcd of {entries:?} is not 1"
            )));
        }
        let well_formed = (0..entries.len()).all(|skip| {
            let rest: Vec<i64> = entries
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &e)| e)
                .collect();
            rest.is_empty() || gcd_all(&rest) == 1
        });
        Ok(Self {
            entries,
            kind,
            well_formed,
        })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Every n-subset of the entries is coprime. Reported, never enforced.
    pub fn well_formed(&self) -> bool {
        self.well_formed
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The dimension `n` of the weighted projective space.
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn lcm(&self) -> i64 {
        self.entries.iter().fold(1, |acc, &e| acc.lcm(&e))
    }

    pub fn get(&self, i: usize) -> i64 {
        self.entries[i]
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |acc, &v| acc.gcd(&v))
}

/// Canonical representative of a class of `N`: nonnegative, with at least one
/// zero coordinate, and of the form `a + lambda * p` for an integer vector `a`.
///
/// Ordered lexicographically on entries; this order fixes monomial bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaRep(Vec<Rat>);

impl AlphaRep {
    /// Checks every invariant against `p`.
    pub fn new(entries: Vec<Rat>, p: &WeightVector) -> Result<Self> {
        check_len(&entries, p)?;
        if !in_alpha_image(&entries, p) {
            return Err(Error::NotInAlphaImage(fmt_vec(&entries)));
        }
        Ok(AlphaRep(entries))
    }

    /// Wraps entries already known to satisfy the invariants.
    pub(crate) fn from_trusted(entries: Vec<Rat>) -> Self {
        debug_assert!(entries.iter().all(|e| !e.is_negative()));
        debug_assert!(entries.iter().any(|e| e.is_zero()));
        AlphaRep(entries)
    }

    pub fn zero(len: usize) -> Self {
        AlphaRep(vec![Rat::zero(); len])
    }

    /// The class of the unit vector `e_i` scaled by `m`.
    pub fn unit(len: usize, i: usize, m: i64) -> Self {
        let mut v = vec![Rat::zero(); len];
        v[i] = int(m);
        AlphaRep(v)
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices of the zero coordinates: the smallest cone containing the class
    /// is spanned by the rays outside this set.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_zero()).collect()
    }

    /// Coordinate-wise sum. Only a class representative when both summands
    /// share a cone.
    pub(crate) fn plain_sum(&self, other: &AlphaRep) -> Vec<Rat> {
        self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()
    }
}

impl fmt::Display for AlphaRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_vec(&self.0))
    }
}

pub(crate) fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|q| {
            if q.is_integer() {
                q.numer().to_string()
            } else {
                fmt_rat(q)
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// An integer functional `theta` on `Z^{n+1}` with `theta . p = 0`, i.e. a lift
/// of an element of `N^dual`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualFunctional(Vec<i64>);

impl DualFunctional {
    pub fn new(entries: Vec<i64>, p: &WeightVector) -> Result<Self> {
        if entries.len() != p.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                got: entries.len(),
            });
        }
        let pairing: i64 = entries.iter().zip(p.entries()).map(|(a, b)| a * b).sum();
        if pairing != 0 {
            return Err(Error::NotInDualLattice(entries));
        }
        Ok(DualFunctional(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Evaluates on a rational vector. On a class representative this equals
    /// the value on any integer lift, because `theta` kills `p`.
    pub fn eval(&self, v: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(v)
            .fold(Rat::zero(), |acc, (&t, x)| acc + x * t)
    }
}

fn check_len<T>(v: &[T], p: &WeightVector) -> Result<()> {
    if v.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `gamma(a) = min_i a_i / p_i`.
pub fn gamma(a: &[Rat], p: &WeightVector) -> Result<Rat> {
    check_len(a, p)?;
    Ok(gamma_unchecked(a, p))
}

pub(crate) fn gamma_unchecked(a: &[Rat], p: &WeightVector) -> Rat {
    a.iter()
        .zip(p.entries())
        .map(|(x, &w)| x / w)
        .min()
        .expect("nonempty")
}

/// `alpha(a) = a - gamma(a) p`, the canonical representative of the class of `a`.
pub fn alpha(a: &[Rat], p: &WeightVector) -> Result<AlphaRep> {
    check_len(a, p)?;
    Ok(alpha_unchecked(a, p))
}

pub(crate) fn alpha_unchecked(a: &[Rat], p: &WeightVector) -> AlphaRep {
    let g = gamma_unchecked(a, p);
    AlphaRep(
        a.iter()
            .zip(p.entries())
            .map(|(x, &w)| x - g * w)
            .collect(),
    )
}

pub fn alpha_of_integers(a: &[i64], p: &WeightVector) -> Result<AlphaRep> {
    let v: Vec<Rat> = a.iter().map(|&x| int(x)).collect();
    alpha(&v, p)
}

/// Two classes lie in a common cone iff their representatives share a zero
/// coordinate.
pub fn same_cone(b1: &AlphaRep, b2: &AlphaRep) -> bool {
    b1.0
        .iter()
        .zip(&b2.0)
        .any(|(x, y)| x.is_zero() && y.is_zero())
}

/// True iff `b` is nonnegative, `gamma(b) = 0`, and `b + lambda p` is integral
/// for some rational `lambda`.
pub fn in_alpha_image(b: &[Rat], p: &WeightVector) -> bool {
    if b.len() != p.len() || b.iter().any(|x| x.is_negative()) {
        return false;
    }
    let Some(j) = b.iter().position(Zero::is_zero) else {
        return false;
    };
    // b_j = 0 forces lambda * p_j to be an integer, so lambda = k / p_j mod 1.
    let pj = p.get(j);
    (0..pj).any(|k| {
        b.iter()
            .zip(p.entries())
            .all(|(x, &w)| (x + Rat::new(k * w, pj)).is_integer())
    })
}

/// A lattice basis of `{theta in Z^{n+1} : theta . p = 0}`.
///
/// Unimodular column operations reduce the row `p` to `(1, 0, ..., 0)`; the
/// transformed columns `1..=n` are then a basis of the kernel. Each vector is
/// normalized so that its first nonzero entry is positive.
pub fn dual_kernel_basis(p: &WeightVector) -> Vec<DualFunctional> {
    let m = p.len();
    let mut row: Vec<i64> = p.entries().to_vec();
    // columns of the transformation matrix U, with row * U = reduced row
    let mut cols: Vec<Vec<i64>> = (0..m)
        .map(|j| (0..m).map(|i| i64::from(i == j)).collect())
        .collect();
    for j in 1..m {
        while row[j] != 0 {
            let q = row[0].div_euclid(row[j]);
            row[0] -= q * row[j];
            for i in 0..m {
                let v = cols[j][i];
                cols[0][i] -= q * v;
            }
            row.swap(0, j);
            cols.swap(0, j);
        }
    }
    debug_assert_eq!(row[0].abs(), 1);
    cols.into_iter()
        .skip(1)
        .map(|mut c| {
            if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                c.iter_mut().for_each(|x| *x = -*x);
            }
            DualFunctional(c)
        })
        .collect()
}

/// gcd of all maximal minors of an integer matrix given by rows. For an
/// `n x (n+1)` matrix of rank `n` this is the product of its invariant
/// factors, so a value of 1 means the rows span a saturated lattice.
pub fn maximal_minor_gcd(rows: &[Vec<i64>]) -> i64 {
    let r = rows.len();
    if r == 0 {
        return 1;
    }
    let c = rows[0].len();
    let mut g = 0i64;
    for cols in combinations(c, r) {
        let sub: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| cols.iter().map(|&j| row[j]).collect())
            .collect();
        g = g.gcd(&bareiss_det(sub));
    }
    g
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Fraction-free determinant.
fn bareiss_det(mut m: Vec<Vec<i64>>) -> i64 {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(v: &[i64]) -> WeightVector {
        WeightVector::weights(v.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn weight_validation() {
        assert!(WeightVector::weights(vec![2, 4]).is_err());
        assert!(WeightVector::weights(vec![0, 1]).is_err());
        assert!(WeightVector::weights(vec![]).is_err());
        assert!(WeightVector::multiplicities(vec![2, 4]).is_ok());
        assert!(p(&[2, 3, 5]).well_formed());
        // gcd 1 overall but (2, 4) share a factor
        let q = p(&[2, 4, 3]);
        assert!(!q.well_formed());
    }

    #[test]
    fn gamma_examples() {
        let w = p(&[2, 3, 5]);
        assert_eq!(gamma(&ints(&[2, 3, 5]), &w).unwrap(), int(1));
        assert_eq!(gamma(&ints(&[0, 0, 0]), &w).unwrap(), int(0));
        assert_eq!(gamma(&ints(&[3, 4, 10]), &w).unwrap(), rat(4, 3));
        assert!(matches!(
            gamma(&ints(&[1, 2]), &w),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn alpha_examples() {
        let w = p(&[2, 3, 5]);
        assert!(alpha(&ints(&[2, 3, 5]), &w).unwrap().is_zero());
        assert_eq!(alpha(&ints(&[1, 0, 0]), &w).unwrap().entries(), &ints(&[1, 0, 0])[..]);
        assert_eq!(
            alpha(&ints(&[3, 4, 10]), &w).unwrap().entries(),
            &[rat(1, 3), int(0), rat(10, 3)][..]
        );
    }

    #[test]
    fn cone_examples() {
        let a = AlphaRep::from_trusted(ints(&[1, 0]));
        let b = AlphaRep::from_trusted(ints(&[0, 1]));
        assert!(!same_cone(&a, &b));
        let a = AlphaRep::from_trusted(ints(&[1, 0, 0]));
        let b = AlphaRep::from_trusted(ints(&[2, 0, 0]));
        assert!(same_cone(&a, &b));
        let a = AlphaRep::from_trusted(ints(&[0, 1, 1]));
        let b = AlphaRep::from_trusted(ints(&[0, 2, 0]));
        assert!(same_cone(&a, &b));
    }

    #[test]
    fn alpha_image_examples() {
        let w = p(&[1, 2]);
        assert!(in_alpha_image(&[rat(1, 2), int(0)], &w));
        assert!(!in_alpha_image(&[rat(1, 2), rat(1, 2)], &w));
        assert!(in_alpha_image(&ints(&[0, 0]), &w));
        assert!(!in_alpha_image(&[rat(1, 3), int(0)], &w));
        assert!(!in_alpha_image(&[int(-1), int(0)], &w));
        assert!(AlphaRep::new(vec![rat(1, 3), int(0)], &w).is_err());
    }

    #[test]
    fn kernel_basis_small_cases() {
        let b = dual_kernel_basis(&p(&[1, 1]));
        assert_eq!(b, vec![DualFunctional(vec![1, -1])]);
        let b = dual_kernel_basis(&p(&[1, 2]));
        assert_eq!(b, vec![DualFunctional(vec![2, -1])]);
    }

    #[test]
    fn kernel_basis_is_saturated() {
        for v in [&[2, 3, 5][..], &[6, 10, 15], &[1, 1, 1, 1], &[4, 6, 9, 35]] {
            let w = p(v);
            let basis = dual_kernel_basis(&w);
            assert_eq!(basis.len(), w.dim());
            let rows: Vec<Vec<i64>> = basis.iter().map(|t| t.entries().to_vec()).collect();
            assert_eq!(maximal_minor_gcd(&rows), 1, "{v:?}");
            for t in &basis {
                assert!(DualFunctional::new(t.entries().to_vec(), &w).is_ok());
            }
        }
    }

    #[test]
    fn dual_functional_rejects_non_annihilating() {
        assert!(matches!(
            DualFunctional::new(vec![1, 1], &p(&[1, 2])),
            Err(Error::NotInDualLattice(_))
        ));
    }

    #[test]
    fn determinant() {
        assert_eq!(bareiss_det(vec![vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(bareiss_det(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            bareiss_det(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            -3
        );
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn weights_and_point() -> impl Strategy<Value = (WeightVector, Vec<i64>)> {
        prop::collection::vec(1i64..=8, 2..=4)
            .prop_filter("gcd 1", |v| gcd_all(v) == 1)
            .prop_flat_map(|p| {
                let len = p.len();
                (Just(WeightVector::weights(p).unwrap()), prop::collection::vec(0i64..=20, len))
            })
    }

    proptest! {
        #[test]
        fn alpha_is_a_canonical_representative((p, a) in weights_and_point(), k in 0i64..5) {
            let ar = alpha_of_integers(&a, &p).unwrap();
            prop_assert!(ar.entries().iter().all(|x| *x >= Rat::zero()));
            prop_assert!(!ar.zero_set().is_empty());
            prop_assert_eq!(gamma(ar.entries(), &p).unwrap(), Rat::zero());
            prop_assert_eq!(&alpha(ar.entries(), &p).unwrap(), &ar);
            let shifted: Vec<i64> = a.iter().zip(p.entries()).map(|(x, pi)| x + k * pi).collect();
            prop_assert_eq!(alpha_of_integers(&shifted, &p).unwrap(), ar);
        }

        #[test]
        fn gamma_splits_off_a_multiple_of_p((p, a) in weights_and_point()) {
            let a: Vec<Rat> = a.iter().map(|&x| int(x)).collect();
            let g = gamma(&a, &p).unwrap();
            let ar = alpha(&a, &p).unwrap();
            for (i, x) in a.iter().enumerate() {
                prop_assert_eq!(*x, ar.entries()[i] + g * int(p.get(i)));
            }
        }
    }
}
