//! Affine embeddings of the mirror fibration: named monomial generators of
//! `T + S`, the binomial relations among them, and the presentation of the
//! orbifold Chow ring obtained on the zero fibre.
//!
//! Relations are found by brute force: every product of at most `bound`
//! generators is brought to normal form, products with equal normal forms are
//! bucketed together, and a binomial is kept only when it does not already
//! follow from the kept ones by rewriting inside the degree bound.

mod export;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::deformed_ring::DeformedRing;
use crate::error::{Error, Result};
use crate::fibration::{FiberedMonomial, Fibration};
use crate::lattice::{AlphaRep, WeightVector};
use crate::linalg;
use crate::par::Strategy;
use crate::rational::{int, rat_to_coeff, Coeff, Rat};
use crate::semigroup::{s_generators, t_generators};

pub use export::{rerender, Format, QuotientSummary};

/// Default number of generator factors explored by [`affine_embedding`].
pub const DEFAULT_BOUND: u32 = 4;

/// Rewriting paths used to discard implied relations may pass through
/// monomials this many factors above the bound.
pub const REWRITE_SLACK: u32 = 1;

/// A monomial in named generators, `name -> exponent`.
pub type NameMonomial = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub monomial: FiberedMonomial,
}

/// `lhs = rhs` between two monomials in the generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub lhs: NameMonomial,
    pub rhs: NameMonomial,
}

impl Binomial {
    pub fn new(lhs: NameMonomial, rhs: NameMonomial) -> Self {
        Self { lhs, rhs }
    }

    pub fn degree(&self) -> u32 {
        monomial_degree(&self.lhs).max(monomial_degree(&self.rhs))
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", fmt_monomial(&self.lhs), fmt_monomial(&self.rhs))
    }
}

/// Parses `w1^2 = w2*z1`; an empty side is written `1`.
impl FromStr for Binomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| Error::Precondition(format!("`{s}` is not of the form lhs = rhs")))?;
        Ok(Self::new(parse_monomial(l)?, parse_monomial(r)?))
    }
}

pub fn parse_monomial(s: &str) -> Result<NameMonomial> {
    let mut m = NameMonomial::new();
    let s = s.trim();
    if s == "1" {
        return Ok(m);
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Precondition(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Precondition(format!("bad factor `{factor}`")));
        }
        *m.entry(name.to_string()).or_insert(0) += e;
    }
    m.retain(|_, e| *e > 0);
    Ok(m)
}

pub fn fmt_monomial(m: &NameMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn monomial_degree(m: &NameMonomial) -> u32 {
    m.values().sum()
}

/// `sum_k c_k m_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub terms: Vec<(Coeff, NameMonomial)>,
}

/// Generators with their defining monomials, binomial relations, and
/// optional linear relations (used once `t` has been set to zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePresentation {
    pub p: WeightVector,
    pub w: Option<WeightVector>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Binomial>,
    pub extra_relations: Vec<LinearRelation>,
    pub ambient_dim: usize,
}

impl AffinePresentation {
    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    /// Normal form of a monomial in the generators.
    pub fn evaluate(&self, m: &NameMonomial) -> Result<FiberedMonomial> {
        let len = self.p.len();
        let mut t = Rat::zero();
        let mut z = vec![Rat::zero(); len];
        for (name, &e) in m {
            let g = self
                .generator(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let e = int(i64::from(e));
            t += g.monomial.t_exp * e;
            for (zi, gi) in z.iter_mut().zip(g.monomial.z_exp.entries()) {
                *zi += gi * e;
            }
        }
        Fibration::new(self.p.clone()).normalize_monomial(&t, &z)
    }

    /// True iff both sides have the same normal form.
    pub fn verify_relation(&self, rel: &Binomial) -> Result<bool> {
        Ok(self.evaluate(&rel.lhs)? == self.evaluate(&rel.rhs)?)
    }

    pub fn verify_all(&self) -> Result<bool> {
        for r in &self.relations {
            if !self.verify_relation(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `rel` follows from the relations of `self` by rewriting through
    /// monomials with at most `bound` factors.
    pub fn implies(&self, rel: &Binomial, bound: u32) -> Result<bool> {
        let index = self.name_index();
        let to_vec = |m: &NameMonomial| -> Result<Vec<u32>> {
            let mut v = vec![0; self.generators.len()];
            for (n, &e) in m {
                v[*index.get(n.as_str()).ok_or_else(|| Error::UnknownGenerator(n.clone()))?] += e;
            }
            Ok(v)
        };
        let rules = self
            .relations
            .iter()
            .map(|r| Ok((to_vec(&r.lhs)?, to_vec(&r.rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        let bound = bound.max(rel.degree());
        Ok(connected(&rules, &to_vec(&rel.lhs)?, &to_vec(&rel.rhs)?, bound))
    }

    fn name_index(&self) -> HashMap<&str, usize> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.as_str(), i))
            .collect()
    }

    /// Renames the generators of `other` through their defining monomials and
    /// checks that each relation set implies the other within `bound`.
    pub fn equivalent(&self, other: &AffinePresentation, bound: u32) -> Result<Equivalence> {
        let by_monomial: HashMap<&FiberedMonomial, &str> =
            self.generators.iter().map(|g| (&g.monomial, g.name.as_str())).collect();
        let mut rename = HashMap::new();
        let mut unmatched = Vec::new();
        for g in &other.generators {
            match by_monomial.get(&g.monomial) {
                Some(&n) => {
                    rename.insert(g.name.as_str(), n.to_string());
                }
                None => unmatched.push(g.name.clone()),
            }
        }
        let theirs: BTreeSet<&FiberedMonomial> = other.generators.iter().map(|g| &g.monomial).collect();
        unmatched.extend(
            self.generators
                .iter()
                .filter(|g| !theirs.contains(&g.monomial))
                .map(|g| g.name.clone()),
        );
        if !unmatched.is_empty() {
            return Ok(Equivalence {
                unmatched_generators: unmatched,
                ..Equivalence::default()
            });
        }
        let translate = |m: &NameMonomial| -> NameMonomial {
            m.iter().map(|(n, &e)| (rename[n.as_str()].clone(), e)).collect()
        };
        let other_renamed = AffinePresentation {
            generators: self.generators.clone(),
            relations: other
                .relations
                .iter()
                .map(|r| Binomial::new(translate(&r.lhs), translate(&r.rhs)))
                .collect(),
            ..self.clone()
        };
        let mut out = Equivalence::default();
        for r in &other_renamed.relations {
            if !self.implies(r, bound)? {
                out.not_implied_by_left.push(r.to_string());
            }
        }
        for r in &self.relations {
            if !other_renamed.implies(r, bound)? {
                out.not_implied_by_right.push(r.to_string());
            }
        }
        out.equivalent = out.not_implied_by_left.is_empty() && out.not_implied_by_right.is_empty();
        Ok(out)
    }
}

/// Outcome of [`AffinePresentation::equivalent`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub unmatched_generators: Vec<String>,
    pub not_implied_by_left: Vec<String>,
    pub not_implied_by_right: Vec<String>,
}

/// Breadth-first search for a rewriting path from `from` to `to` that never
/// passes through a monomial with more than `bound` factors.
fn connected(rules: &[(Vec<u32>, Vec<u32>)], from: &[u32], to: &[u32], bound: u32) -> bool {
    if from == to {
        return true;
    }
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([from.to_vec()]);
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for (l, r) in rules {
            for (a, b) in [(l, r), (r, l)] {
                if x.iter().zip(a).any(|(xi, ai)| xi < ai) {
                    continue;
                }
                let y: Vec<u32> = x.iter().zip(a).zip(b).map(|((xi, ai), bi)| xi - ai + bi).collect();
                if y.iter().sum::<u32>() > bound || seen.contains(&y) {
                    continue;
                }
                if y == to {
                    return true;
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    false
}

/// The chain case `p_0 = 1`, `p_{i-1} | p_i`: generators
/// `v_i = z_0^{p_0/p_i} ... z_{i-1}^{p_{i-1}/p_i}`, the `z_i` and `s = t^{1/p_n}`.
pub fn chain_presentation(p: &WeightVector) -> Result<AffinePresentation> {
    let e = p.entries();
    if e.len() < 2 {
        return Err(Error::TooFewWeights);
    }
    if e[0] != 1 {
        return Err(Error::Precondition(format!("chain case needs p_0 = 1, got {p}")));
    }
    if let Some(i) = (1..e.len()).find(|&i| e[i] % e[i - 1] != 0) {
        return Err(Error::Precondition(format!(
            "chain case needs p_{} | p_{}, got {p}",
            i - 1,
            i
        )));
    }
    let n = p.dim();
    let fib = Fibration::new(p.clone());
    let mut generators = Vec::with_capacity(2 * n + 2);
    for i in 1..=n {
        let z: Vec<Rat> = (0..=n)
            .map(|j| if j < i { Rat::new(e[j], e[i]) } else { Rat::zero() })
            .collect();
        generators.push(Generator {
            name: format!("v{i}"),
            monomial: fib.normalize_monomial(&Rat::zero(), &z)?,
        });
    }
    for i in 0..=n {
        generators.push(Generator {
            name: format!("z{i}"),
            monomial: FiberedMonomial {
                t_exp: Rat::zero(),
                z_exp: AlphaRep::unit(n + 1, i, 1),
            },
        });
    }
    generators.push(Generator {
        name: "s".into(),
        monomial: FiberedMonomial {
            t_exp: Rat::new(1, e[n]),
            z_exp: AlphaRep::zero(n + 1),
        },
    });

    let mono = |pairs: &[(String, u32)]| -> NameMonomial { pairs.iter().cloned().collect() };
    let mut relations = vec![Binomial::new(
        mono(&[("v1".into(), (e[1] / e[0]) as u32)]),
        mono(&[("z0".into(), 1)]),
    )];
    for i in 1..n {
        relations.push(Binomial::new(
            mono(&[(format!("v{}", i + 1), (e[i + 1] / e[i]) as u32)]),
            mono(&[(format!("v{i}"), 1), (format!("z{i}"), 1)]),
        ));
    }
    relations.push(Binomial::new(
        mono(&[(format!("v{n}"), 1), (format!("z{n}"), 1)]),
        mono(&[("s".into(), 1)]),
    ));
    Ok(AffinePresentation {
        p: p.clone(),
        w: None,
        ambient_dim: generators.len(),
        generators,
        relations,
        extra_relations: Vec::new(),
    })
}

/// Letters for fractional generators, one per denominator, skipping the
/// names reserved for `s`, `t` and `z`.
const LETTERS: &[char] = &[
    'u', 'v', 'w', 'x', 'y', 'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'j', 'k', 'm', 'n', 'q', 'r',
];

/// Named generators: `z_i`, then the irreducible fractional generators of
/// `S` grouped by denominator, then the generators of `T`.
pub fn named_generators(p: &WeightVector) -> Result<Vec<Generator>> {
    let len = p.len();
    let mut out: Vec<Generator> = (0..len)
        .map(|i| Generator {
            name: format!("z{i}"),
            monomial: FiberedMonomial {
                t_exp: Rat::zero(),
                z_exp: AlphaRep::unit(len, i, 1),
            },
        })
        .collect();

    let mut by_den: BTreeMap<i64, Vec<AlphaRep>> = BTreeMap::new();
    for g in s_generators(p).pruned() {
        if g.exponent.entries().iter().all(|x| x.is_integer()) {
            continue;
        }
        let den = g.exponent.entries().iter().fold(1, |acc, x| acc.lcm(x.denom()));
        by_den.entry(den).or_default().push(g.exponent);
    }
    for (slot, (den, gens)) in by_den.into_iter().enumerate() {
        for (k, g) in gens.into_iter().enumerate() {
            let name = match LETTERS.get(slot) {
                Some(c) => format!("{c}{}", k + 1),
                None => format!("y{den}_{}", k + 1),
            };
            out.push(Generator {
                name,
                monomial: FiberedMonomial { t_exp: Rat::zero(), z_exp: g },
            });
        }
    }

    // a generator of T that is a multiple of another one adds nothing
    let t = t_generators(p)?.generators;
    let mut kept: Vec<Rat> = t
        .iter()
        .filter(|g| !t.iter().any(|h| h < g && (*g / h).is_integer()))
        .copied()
        .collect();
    kept.sort_by_key(|g| g.denom().to_owned());
    let single = kept.len() == 1;
    for (k, g) in kept.into_iter().enumerate() {
        out.push(Generator {
            name: if single { "s".into() } else { format!("s{}", k + 1) },
            monomial: FiberedMonomial {
                t_exp: g,
                z_exp: AlphaRep::zero(len),
            },
        });
    }
    Ok(out)
}

pub fn affine_embedding(p: &WeightVector, bound: u32) -> Result<AffinePresentation> {
    affine_embedding_with(p, bound, Strategy::default())
}

pub fn affine_embedding_with(p: &WeightVector, bound: u32, strategy: Strategy) -> Result<AffinePresentation> {
    let generators = named_generators(p)?;
    let fib = Fibration::new(p.clone());
    let exps = exponent_vectors(generators.len(), bound + REWRITE_SLACK);
    let normal_forms = strategy.map(&exps, |e| {
        let mut t = Rat::zero();
        let mut z = vec![Rat::zero(); p.len()];
        for (g, &k) in generators.iter().zip(e) {
            if k == 0 {
                continue;
            }
            let k = int(i64::from(k));
            t += g.monomial.t_exp * k;
            for (zi, gi) in z.iter_mut().zip(g.monomial.z_exp.entries()) {
                *zi += gi * k;
            }
        }
        fib.normalize_monomial(&t, &z)
    });
    let mut buckets: BTreeMap<FiberedMonomial, Vec<usize>> = BTreeMap::new();
    for (i, nf) in normal_forms.into_iter().enumerate() {
        buckets.entry(nf?).or_default().push(i);
    }

    let basic: Vec<bool> = generators
        .iter()
        .map(|g| g.name.starts_with('z') || g.name.starts_with('s'))
        .collect();
    let mut candidates = Vec::new();
    for members in buckets.values() {
        let members: Vec<usize> = members.iter().copied().filter(|&i| exps[i].iter().sum::<u32>() <= bound).collect();
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                if exps[a].iter().zip(&exps[b]).all(|(u, v)| *u == 0 || *v == 0) {
                    candidates.push(orient(&exps[a], &exps[b], &basic));
                }
            }
        }
    }
    let deg = |v: &[u32]| v.iter().sum::<u32>();
    candidates.sort_by(|(a1, b1), (a2, b2)| {
        (deg(a1).max(deg(b1)), deg(a1) + deg(b1), a1, b1).cmp(&(deg(a2).max(deg(b2)), deg(a2) + deg(b2), a2, b2))
    });

    let index: HashMap<&[u32], usize> = exps.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut uf = UnionFind::new(exps.len());
    let mut kept = Vec::new();
    for (l, r) in candidates {
        if uf.find(index[l.as_slice()]) == uf.find(index[r.as_slice()]) {
            continue;
        }
        for x in &exps {
            if x.iter().zip(&l).any(|(xi, li)| xi < li) {
                continue;
            }
            let y: Vec<u32> = x.iter().zip(&l).zip(&r).map(|((xi, li), ri)| xi - li + ri).collect();
            if let Some(&j) = index.get(y.as_slice()) {
                uf.union(index[x.as_slice()], j);
            }
        }
        kept.push((l, r));
    }

    let to_names = |v: &[u32]| -> NameMonomial {
        v.iter()
            .zip(&generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| (g.name.clone(), *e))
            .collect()
    };
    let relations = kept
        .iter()
        .map(|(l, r)| Binomial::new(to_names(l), to_names(r)))
        .collect();
    Ok(AffinePresentation {
        p: p.clone(),
        w: None,
        ambient_dim: generators.len(),
        generators,
        relations,
        extra_relations: Vec::new(),
    })
}

/// Puts the side with fewer `z`/`s` factors on the left, then the longer one.
fn orient(a: &[u32], b: &[u32], basic: &[bool]) -> (Vec<u32>, Vec<u32>) {
    let key = |v: &[u32]| {
        let plain: u32 = v.iter().zip(basic).filter(|(_, b)| **b).map(|(e, _)| e).sum();
        (std::cmp::Reverse(plain), v.iter().sum::<u32>(), v.to_vec())
    };
    if key(a) >= key(b) {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    }
}

/// All exponent vectors of length `g` with entry sum at most `bound`.
fn exponent_vectors(g: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, bound, &mut vec![0; g], &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// The zero-fibre presentation: the affine embedding with every `s` set to
/// zero, plus the linear relations `(w_i/p_i) z_i^{w_i} - (w_{i+1}/p_{i+1}) z_{i+1}^{w_{i+1}}`.
pub fn chow_presentation(p: &WeightVector, w: &WeightVector, bound: u32) -> Result<AffinePresentation> {
    if w.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: w.len(),
        });
    }
    let aff = affine_embedding(p, bound)?;
    let is_t = |m: &NameMonomial| {
        m.keys()
            .any(|n| aff.generator(n).is_some_and(|g| g.monomial.t_exp.is_positive()))
    };
    let mut relations = Vec::new();
    let mut zero_monomials: BTreeSet<NameMonomial> = BTreeSet::new();
    for r in &aff.relations {
        match (is_t(&r.lhs), is_t(&r.rhs)) {
            (false, false) => relations.push(r.clone()),
            (true, false) => {
                zero_monomials.insert(r.rhs.clone());
            }
            (false, true) => {
                zero_monomials.insert(r.lhs.clone());
            }
            (true, true) => {}
        }
    }
    let mut extra_relations: Vec<LinearRelation> = zero_monomials
        .into_iter()
        .map(|m| LinearRelation {
            terms: vec![(Coeff::one(), m)],
        })
        .collect();
    extra_relations.extend(linear_relations(p, w));
    if !linear_span_matches(p, w)? {
        return Err(Error::Internal(
            "linear relations do not span the Jacobian relations of degree one".into(),
        ));
    }
    let generators: Vec<Generator> = aff
        .generators
        .into_iter()
        .filter(|g| g.monomial.t_exp.is_zero())
        .collect();
    Ok(AffinePresentation {
        p: p.clone(),
        w: Some(w.clone()),
        ambient_dim: generators.len(),
        generators,
        relations,
        extra_relations,
    })
}

/// `(w_i/p_i) z_i^{w_i} - (w_{i+1}/p_{i+1}) z_{i+1}^{w_{i+1}}` for `i < n`.
pub fn linear_relations(p: &WeightVector, w: &WeightVector) -> Vec<LinearRelation> {
    let term = |i: usize, sign: i64| {
        (
            rat_to_coeff(&Rat::new(sign * w.get(i), p.get(i))),
            NameMonomial::from([(format!("z{i}"), w.get(i) as u32)]),
        )
    };
    (0..p.dim())
        .map(|i| LinearRelation {
            terms: vec![term(i, 1), term(i + 1, -1)],
        })
        .collect()
}

/// Whether the linear relations span the same space as the Jacobian
/// generators `xi_theta(sum y^{w_i e_i})`, both seen in the coordinates
/// `y^{w_i e_i}`.
pub fn linear_span_matches(p: &WeightVector, w: &WeightVector) -> Result<bool> {
    let ring = DeformedRing::new(p.clone(), w.clone())?;
    let len = p.len();
    let jac: Vec<Vec<Coeff>> = ring
        .jacobian_generators()
        .iter()
        .map(|g| {
            (0..len)
                .map(|i| g.coefficient(&AlphaRep::unit(len, i, w.get(i))))
                .collect()
        })
        .collect();
    let lin: Vec<Vec<Coeff>> = linear_relations(p, w)
        .iter()
        .map(|r| {
            let mut row = vec![Coeff::zero(); len];
            for (c, m) in &r.terms {
                let name = m.keys().next().expect("one variable");
                let i: usize = name[1..].parse().expect("z index");
                row[i] += c;
            }
            row
        })
        .collect();
    let both: Vec<Vec<Coeff>> = jac.iter().chain(&lin).cloned().collect();
    let r = linalg::rank(&both);
    Ok(linalg::rank(&jac) == r && linalg::rank(&lin) == r)
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

    fn rel(s: &str) -> Binomial {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_parsing_round_trips() {
        let b = rel("w1^2 = w2*z1");
        assert_eq!(b.lhs, NameMonomial::from([("w1".into(), 2)]));
        assert_eq!(b.to_string(), "w1^2 = w2*z1");
        assert_eq!(rel("s = 1").rhs, NameMonomial::new());
        assert!("w1 w2".parse::<Binomial>().is_err());
        assert!("w1^x = z0".parse::<Binomial>().is_err());
    }

    #[test]
    fn chain_examples() {
        let c = chain_presentation(&wv(&[1, 2, 4])).unwrap();
        assert_eq!(c.ambient_dim, 6);
        let rels: Vec<String> = c.relations.iter().map(|r| r.to_string()).collect();
        assert_eq!(rels, ["v1^2 = z0", "v2^2 = v1*z1", "v2*z2 = s"]);
        assert!(c.verify_all().unwrap());

        let c = chain_presentation(&wv(&[1, 1])).unwrap();
        let rels: Vec<String> = c.relations.iter().map(|r| r.to_string()).collect();
        assert_eq!(rels, ["v1 = z0", "v1*z1 = s"]);
        assert!(c.verify_all().unwrap());

        assert!(chain_presentation(&wv(&[2, 3, 5])).is_err());
        assert!(chain_presentation(&wv(&[1, 2, 3])).is_err());
    }

    #[test]
    fn names_for_235() {
        let g = named_generators(&wv(&[2, 3, 5])).unwrap();
        let names: Vec<&str> = g.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(
            names,
            ["z0", "z1", "z2", "u1", "v1", "w1", "w2", "w3", "w4", "s1", "s2", "s3"]
        );
        let by = |n: &str| g.iter().find(|x| x.name == n).unwrap().monomial.clone();
        assert_eq!(by("w1").z_exp.entries(), &[rat(2, 5), rat(3, 5), rat(0, 1)]);
        assert_eq!(by("v1").z_exp.entries(), &[rat(1, 3), rat(0, 1), rat(1, 3)]);
        assert_eq!(by("s2").t_exp, rat(1, 10));
    }

    #[test]
    fn verify_relation_examples() {
        let a = affine_embedding(&wv(&[2, 3, 5]), 2).unwrap();
        assert!(a.verify_relation(&rel("w1^2 = w2*z1")).unwrap());
        assert!(!a.verify_relation(&rel("w1^2 = w3*z1")).unwrap());
        assert!(matches!(
            a.verify_relation(&rel("q1 = z0")),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn embedding_relations_verify_and_are_irredundant() {
        let a = affine_embedding(&wv(&[2, 3, 5]), 3).unwrap();
        assert!(a.verify_all().unwrap());
        for (i, r) in a.relations.iter().enumerate() {
            let mut rest = a.clone();
            rest.relations.remove(i);
            assert!(!rest.implies(r, 3 + REWRITE_SLACK).unwrap(), "{r} is redundant");
        }
    }

    #[test]
    fn chain_embedding_matches_chain_presentation() {
        for p in [[1, 2, 4], [1, 3, 9]] {
            let p = wv(&p);
            let a = affine_embedding(&p, 4).unwrap();
            let c = chain_presentation(&p).unwrap();
            let eq = a.equivalent(&c, 4 + REWRITE_SLACK).unwrap();
            assert!(eq.equivalent, "{eq:?}");
        }
    }

    #[test]
    fn chow_presentation_examples() {
        let c = chow_presentation(&wv(&[1, 1, 1]), &mv(&[1, 1, 1]), 3).unwrap();
        assert!(c.relations.is_empty());
        let lin: Vec<_> = c.extra_relations.iter().filter(|r| r.terms.len() == 2).collect();
        assert_eq!(lin.len(), 2);
        assert_eq!(lin[0].terms[0].0, Coeff::one());

        let c = chow_presentation(&wv(&[2, 3, 5]), &mv(&[1, 1, 1]), 3).unwrap();
        let lin: Vec<_> = c.extra_relations.iter().filter(|r| r.terms.len() == 2).collect();
        assert_eq!(lin[0].terms[0].0, rat_to_coeff(&rat(1, 2)));
        assert_eq!(lin[0].terms[1].0, rat_to_coeff(&rat(-1, 3)));
        assert_eq!(lin[1].terms[1].0, rat_to_coeff(&rat(-1, 5)));
        assert!(c.generator_names().iter().all(|n| !n.starts_with('s')));
        assert!(c
            .extra_relations
            .iter()
            .any(|r| r.terms.len() == 1 && r.terms[0].1 == rel("u1*v1 = 1").lhs));
    }

    #[test]
    fn span_check() {
        assert!(linear_span_matches(&wv(&[1, 2]), &mv(&[1, 1])).unwrap());
        assert!(linear_span_matches(&wv(&[2, 3, 5]), &mv(&[3, 1, 2])).unwrap());
        assert!(linear_span_matches(&wv(&[1, 1, 1, 1]), &mv(&[1, 1, 1, 1])).unwrap());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn monomial() -> impl Strategy<Value = NameMonomial> {
        prop::collection::btree_map("[a-z][0-9]?", 1u32..4, 0..4)
    }

    proptest! {
        #[test]
        fn binomials_round_trip_through_text(lhs in monomial(), rhs in monomial()) {
            let b = Binomial::new(lhs, rhs);
            prop_assert_eq!(b.to_string().parse::<Binomial>().unwrap(), b);
        }
    }
}
