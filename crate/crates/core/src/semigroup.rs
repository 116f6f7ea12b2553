//! The semigroups `S` (generated by the class representatives) and `T`
//! (generated by `gamma(S)`), with bounded membership tests and an exhaustive
//! check of their generator descriptions.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{alpha_unchecked, fmt_vec, gamma_unchecked, AlphaRep, WeightVector};
use crate::par::Strategy;
use crate::rational::{fmt_rat, int, Rat};

/// Where an `S` generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// The unit vector `e_i`.
    Unit(usize),
    /// `(1/p_i) (k p_0 mod p_i, ..., k p_n mod p_i)`.
    Fractional { index: usize, k: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGenerator {
    pub exponent: AlphaRep,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct SGeneratorSet {
    p: WeightVector,
    pub unit_vectors: Vec<AlphaRep>,
    /// `fractional[i]` lists `(k, generator)` for `k = 1 .. p_i - 1`.
    pub fractional: Vec<Vec<(i64, AlphaRep)>>,
}

pub fn s_generators(p: &WeightVector) -> SGeneratorSet {
    let len = p.len();
    let unit_vectors = (0..len).map(|i| AlphaRep::unit(len, i, 1)).collect();
    let fractional = (0..len)
        .map(|i| {
            let pi = p.get(i);
            (1..pi)
                .map(|k| {
                    let v = p
                        .entries()
                        .iter()
                        .map(|&pj| Rat::new((k * pj).rem_euclid(pi), pi))
                        .collect();
                    (k, AlphaRep::from_trusted(v))
                })
                .collect()
        })
        .collect();
    SGeneratorSet {
        p: p.clone(),
        unit_vectors,
        fractional,
    }
}

impl SGeneratorSet {
    pub fn weights(&self) -> &WeightVector {
        &self.p
    }

    /// Unit vectors followed by the fractional generators in `(i, k)` order,
    /// keeping the first occurrence of each vector.
    pub fn all(&self) -> Vec<SGenerator> {
        let mut seen = BTreeSet::new();
        let units = self
            .unit_vectors
            .iter()
            .enumerate()
            .map(|(i, e)| SGenerator {
                exponent: e.clone(),
                origin: Origin::Unit(i),
            });
        let fracs = self.fractional.iter().enumerate().flat_map(|(i, list)| {
            list.iter().map(move |(k, g)| SGenerator {
                exponent: g.clone(),
                origin: Origin::Fractional { index: i, k: *k },
            })
        });
        units
            .chain(fracs)
            .filter(|g| seen.insert(g.exponent.clone()))
            .collect()
    }

    /// Generators that are not sums of two or more other generators.
    pub fn pruned(&self) -> Vec<SGenerator> {
        let all = self.all();
        let scale = self.p.lcm();
        let scaled: Vec<Vec<i64>> = all.iter().map(|g| scale_vec(g.exponent.entries(), scale)).collect();
        all.into_iter()
            .enumerate()
            .filter(|(idx, _)| {
                let others: Vec<Vec<i64>> = scaled
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != idx)
                    .map(|(_, v)| v.clone())
                    .collect();
                decompose_scaled(&scaled[*idx], &others).is_none()
            })
            .map(|(_, g)| g)
            .collect()
    }
}

pub(crate) fn scale_vec(v: &[Rat], scale: i64) -> Vec<i64> {
    v.iter()
        .map(|x| {
            let y = x * scale;
            debug_assert!(y.is_integer());
            y.to_integer()
        })
        .collect()
}

/// Writes `target` as a nonnegative integer combination of `gens`, returning
/// the multiplicity of each generator. Depth-first search with memoization;
/// every generator must be nonzero and nonnegative.
pub fn decompose(target: &[Rat], gens: &[AlphaRep], p: &WeightVector) -> Option<Vec<u32>> {
    let scale = target
        .iter()
        .chain(gens.iter().flat_map(|g| g.entries()))
        .fold(p.lcm(), |acc, x| acc.lcm(x.denom()));
    let t = scale_vec(target, scale);
    let g: Vec<Vec<i64>> = gens.iter().map(|g| scale_vec(g.entries(), scale)).collect();
    decompose_scaled(&t, &g)
}

fn decompose_scaled(target: &[i64], gens: &[Vec<i64>]) -> Option<Vec<u32>> {
    fn reach(
        x: &[i64],
        gens: &[Vec<i64>],
        memo: &mut HashMap<Vec<i64>, Option<usize>>,
    ) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        if let Some(hit) = memo.get(x) {
            return hit.is_some();
        }
        for (i, g) in gens.iter().enumerate() {
            if g.iter().zip(x).all(|(a, b)| a <= b) {
                let rest: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
                if reach(&rest, gens, memo) {
                    memo.insert(x.to_vec(), Some(i));
                    return true;
                }
            }
        }
        memo.insert(x.to_vec(), None);
        false
    }
    if target.iter().any(|&v| v < 0) || gens.iter().any(|g| g.iter().all(|&v| v == 0)) {
        return None;
    }
    let mut memo = HashMap::new();
    if !reach(target, gens, &mut memo) {
        return None;
    }
    let mut counts = vec![0u32; gens.len()];
    let mut x = target.to_vec();
    while x.iter().any(|&v| v != 0) {
        let i = memo[&x].expect("reachable");
        counts[i] += 1;
        x.iter_mut().zip(&gens[i]).for_each(|(a, b)| *a -= b);
    }
    Some(counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TGeneratorSet {
    /// `1 / lcm(p_i, p_j)` over pairs `i < j`, deduplicated, largest first.
    pub generators: Vec<Rat>,
    /// `1 / lcm(p_0, ..., p_n)`; every generator is a multiple of it.
    pub ell: Rat,
}

pub fn t_generators(p: &WeightVector) -> Result<TGeneratorSet> {
    if p.len() < 2 {
        return Err(Error::TooFewWeights);
    }
    let mut set = BTreeSet::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            set.insert(Rat::new(1, p.get(i).lcm(&p.get(j))));
        }
    }
    Ok(TGeneratorSet {
        generators: set.into_iter().rev().collect(),
        ell: Rat::new(1, p.lcm()),
    })
}

impl TGeneratorSet {
    /// Minimal number of generators summing to each multiple `m * ell`,
    /// `m = 0 ..= max_multiple`; `None` where unreachable.
    pub fn min_terms_table(&self, max_multiple: usize) -> Vec<Option<u32>> {
        let steps: Vec<usize> = self
            .generators
            .iter()
            .map(|g| (g / self.ell).to_integer().to_usize().expect("positive"))
            .collect();
        let mut table = vec![None; max_multiple + 1];
        table[0] = Some(0);
        for m in 1..=max_multiple {
            table[m] = steps
                .iter()
                .filter(|&&s| s <= m)
                .filter_map(|&s| table[m - s].map(|c: u32| c + 1))
                .min();
        }
        table
    }

    /// `q` as a multiple of `ell`, if it is one.
    pub fn multiple_of_ell(&self, q: &Rat) -> Option<usize> {
        let m = q / self.ell;
        if m.is_integer() {
            m.to_integer().to_usize()
        } else {
            None
        }
    }
}

/// True iff `q` is a nonnegative integer combination of the `T` generators
/// using at most `bound` terms. Exhaustive.
pub fn t_membership(q: &Rat, p: &WeightVector, bound: u32) -> Result<bool> {
    if q.is_zero() {
        return Ok(true);
    }
    let t = t_generators(p)?;
    let Some(m) = t.multiple_of_ell(q) else {
        return Ok(false);
    };
    let table = t.min_terms_table(m);
    Ok(table[m].is_some_and(|c| c <= bound))
}

/// Part of a failed generator check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub part: String,
    pub input: String,
    pub detail: String,
}

/// Explicit decomposition of `alpha(a)` as integer vector plus at most one
/// fractional generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaWitness {
    pub a: Vec<i64>,
    pub alpha: String,
    pub integer_part: Vec<i64>,
    /// `(i, k)` of the fractional generator used, if any.
    pub fractional: Option<(usize, i64)>,
}

/// An element of `S` whose `gamma` is `1 / lcm(p_i, p_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TWitness {
    pub pair: (usize, usize),
    pub target: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub lemma: String,
    pub p: Vec<i64>,
    #[serde(rename = "box")]
    pub box_size: u32,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
    pub t_witnesses: Vec<TWitness>,
    pub alpha_checked: usize,
    pub gamma_values_checked: usize,
}

/// Constructs the decomposition of `alpha(a)` from the Euclidean division
/// `k p_i = q_i p_m + r_i`, where `m` attains `gamma(a)`.
pub fn alpha_witness(a: &[i64], p: &WeightVector) -> AlphaWitness {
    let av: Vec<Rat> = a.iter().map(|&x| int(x)).collect();
    let rep = alpha_unchecked(&av, p);
    let m = (0..p.len())
        .min_by_key(|&i| Rat::new(a[i], p.get(i)))
        .expect("nonempty");
    let pm = p.get(m);
    let u = num_integer::Integer::div_ceil(&a[m], &pm);
    let k = u * pm - a[m];
    let integer_part = (0..p.len())
        .map(|i| {
            let q = (k * p.get(i)).div_euclid(pm);
            a[i] - u * p.get(i) + q
        })
        .collect();
    let kk = k.rem_euclid(pm);
    AlphaWitness {
        a: a.to_vec(),
        alpha: fmt_vec(rep.entries()),
        integer_part,
        fractional: (kk != 0).then_some((m, kk)),
    }
}

fn check_alpha_witness(w: &AlphaWitness, set: &SGeneratorSet) -> Option<String> {
    let p = &set.p;
    if w.integer_part.iter().any(|&c| c < 0) {
        return Some(format!("negative integer part {:?}", w.integer_part));
    }
    let mut sum: Vec<Rat> = w.integer_part.iter().map(|&c| int(c)).collect();
    if let Some((i, k)) = w.fractional {
        let g = &set.fractional[i][(k - 1) as usize].1;
        sum.iter_mut().zip(g.entries()).for_each(|(s, x)| *s += x);
    }
    let av: Vec<Rat> = w.a.iter().map(|&x| int(x)).collect();
    let rep = alpha_unchecked(&av, p);
    (sum != rep.entries()).then(|| format!("witness sums to {}, alpha is {}", fmt_vec(&sum), rep))
}

/// Builds `b` in `S` with `gamma(b) = 1 / lcm(p_i, p_j)`: a fractional
/// generator of `S_i` whose `j`-th entry is `gcd(p_i, p_j) / p_i`, plus large
/// unit-vector multiples away from `j`.
pub fn t_generator_witness(p: &WeightVector, i: usize, j: usize) -> Vec<Rat> {
    let len = p.len();
    let (pi, pj) = (p.get(i), p.get(j));
    let g = pi.gcd(&pj);
    let padding = |skip: usize, base: &mut Vec<Rat>| {
        for (m, b) in base.iter_mut().enumerate() {
            if m != skip {
                *b += int(p.get(m));
            }
        }
    };
    if g < pi {
        // l p_j = g (mod p_i) has a solution since g = gcd(p_i, p_j)
        let l = (1..pi).find(|l| (l * pj).rem_euclid(pi) == g).expect("solvable");
        let mut b: Vec<Rat> = p.entries().iter().map(|&pm| Rat::new((l * pm).rem_euclid(pi), pi)).collect();
        padding(j, &mut b);
        b
    } else if g < pj {
        // p_i divides p_j: the fractional generator of S_j with k = 1 works
        let mut b: Vec<Rat> = p.entries().iter().map(|&pm| Rat::new(pm.rem_euclid(pj), pj)).collect();
        padding(i, &mut b);
        b
    } else {
        // p_i = p_j
        let mut b = vec![Rat::zero(); len];
        for (m, x) in b.iter_mut().enumerate() {
            *x = if m == i || m == j { int(1) } else { int(p.get(m)) };
        }
        b
    }
}

/// Exhaustively checks the generator descriptions of `S` and `T`:
///
/// * for every integer `a` with `|a_i| <= box_size`, `alpha(a)` decomposes over
///   the `S` generators (explicit witness);
/// * `gamma` of every sum of at most `box_size` `S` generators lies in the
///   semigroup generated by the `T` generators;
/// * every `T` generator is `gamma` of an explicitly built element of `S`.
pub fn verify_generators(p: &WeightVector, box_size: u32, strategy: Strategy) -> Result<GeneratorReport> {
    let sset = s_generators(p);
    let tset = t_generators(p)?;
    let len = p.len();
    let mut counterexamples = Vec::new();

    let b = box_size as i64;
    let side = 2 * b + 1;
    let total = side.pow(len as u32) as usize;
    let points: Vec<Vec<i64>> = (0..total)
        .map(|mut idx| {
            (0..len)
                .map(|_| {
                    let c = (idx % side as usize) as i64 - b;
                    idx /= side as usize;
                    c
                })
                .collect()
        })
        .collect();
    let failures = strategy.map(&points, |a| {
        let w = alpha_witness(a, p);
        check_alpha_witness(&w, &sset).map(|d| Counterexample {
            part: "alpha-decomposition".into(),
            input: format!("{a:?}"),
            detail: d,
        })
    });
    counterexamples.extend(failures.into_iter().flatten());

    // distinct sums of at most box_size generators
    let gens: Vec<Vec<Rat>> = sset.all().into_iter().map(|g| g.exponent.into_entries()).collect();
    let mut level: BTreeSet<Vec<Rat>> = BTreeSet::from([vec![Rat::zero(); len]]);
    let mut sums = level.clone();
    for _ in 0..box_size {
        let next: BTreeSet<Vec<Rat>> = level
            .iter()
            .flat_map(|x| gens.iter().map(move |g| x.iter().zip(g).map(|(a, b)| a + b).collect()))
            .collect();
        sums.extend(next.iter().cloned());
        level = next;
    }
    let gammas: BTreeSet<Rat> = sums.iter().map(|s| gamma_unchecked(s, p)).collect();
    let max_mult = gammas
        .iter()
        .filter_map(|g| tset.multiple_of_ell(g))
        .max()
        .unwrap_or(0);
    let table = tset.min_terms_table(max_mult);
    for g in &gammas {
        let ok = tset
            .multiple_of_ell(g)
            .is_some_and(|m| table[m].is_some());
        if !ok {
            counterexamples.push(Counterexample {
                part: "gamma-in-T".into(),
                input: fmt_rat(g),
                detail: "gamma value is not a combination of T generators".into(),
            });
        }
    }

    let s_all: Vec<AlphaRep> = sset.all().into_iter().map(|g| g.exponent).collect();
    let mut t_witnesses = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let target = Rat::new(1, p.get(i).lcm(&p.get(j)));
            let bvec = t_generator_witness(p, i, j);
            let g = gamma_unchecked(&bvec, p);
            let in_s = decompose(&bvec, &s_all, p).is_some();
            if g != target || !in_s {
                counterexamples.push(Counterexample {
                    part: "T-generator".into(),
                    input: format!("({i}, {j})"),
                    detail: format!(
                        "built {} with gamma {} (in S: {in_s})",
                        fmt_vec(&bvec),
                        fmt_rat(&g)
                    ),
                });
            }
            t_witnesses.push(TWitness {
                pair: (i, j),
                target: fmt_rat(&target),
                element: fmt_vec(&bvec),
            });
        }
    }

    Ok(GeneratorReport {
        lemma: "semigroup-generators".into(),
        p: p.entries().to_vec(),
        box_size,
        pass: counterexamples.is_empty(),
        counterexamples,
        t_witnesses,
        alpha_checked: total,
        gamma_values_checked: gammas.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::in_alpha_image;
    use crate::rational::rat;

    fn p(v: &[i64]) -> WeightVector {
        WeightVector::weights(v.to_vec()).unwrap()
    }

    fn frac(v: &[i64], d: i64) -> Vec<Rat> {
        v.iter().map(|&x| Rat::new(x, d)).collect()
    }

    #[test]
    fn fractional_generators_of_235() {
        let s = s_generators(&p(&[2, 3, 5]));
        let s2: Vec<Vec<Rat>> = s.fractional[2].iter().map(|(_, g)| g.entries().to_vec()).collect();
        assert_eq!(
            s2,
            vec![
                frac(&[2, 3, 0], 5),
                frac(&[4, 1, 0], 5),
                frac(&[1, 4, 0], 5),
                frac(&[3, 2, 0], 5)
            ]
        );
        assert_eq!(s.fractional[0].len(), 1);
        assert_eq!(s.fractional[0][0].1.entries(), &frac(&[0, 1, 1], 2)[..]);
        // u1^2 = z1 z2
        let u1 = &s.fractional[0][0].1;
        assert_eq!(u1.plain_sum(u1), vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn generator_invariants() {
        for v in [&[2, 3, 5][..], &[1, 2, 4], &[6, 4, 9], &[3, 7]] {
            let w = p(v);
            let s = s_generators(&w);
            for (i, list) in s.fractional.iter().enumerate() {
                assert_eq!(list.len() as i64, w.get(i) - 1);
                for (_, g) in list {
                    assert!(g.entries()[i].is_zero());
                    assert!(in_alpha_image(g.entries(), &w));
                }
            }
        }
    }

    #[test]
    fn projective_space_has_only_unit_generators() {
        let s = s_generators(&p(&[1, 1, 1, 1]));
        assert!(s.fractional.iter().all(Vec::is_empty));
        assert_eq!(s.all().len(), 4);
    }

    #[test]
    fn pruning_removes_squares() {
        let w = p(&[2, 3, 5]);
        let pruned = s_generators(&w).pruned();
        let exps: Vec<&AlphaRep> = pruned.iter().map(|g| &g.exponent).collect();
        assert_eq!(pruned.len(), 9);
        assert!(!exps.iter().any(|e| e.entries() == frac(&[2, 0, 2], 3)));
        assert!(exps.iter().any(|e| e.entries() == frac(&[1, 0, 1], 3)));
    }

    #[test]
    fn t_generator_examples() {
        let t = t_generators(&p(&[2, 3, 5])).unwrap();
        assert_eq!(t.generators, vec![rat(1, 6), rat(1, 10), rat(1, 15)]);
        assert_eq!(t.ell, rat(1, 30));
        assert_eq!(t_generators(&p(&[1, 1, 1])).unwrap().generators, vec![int(1)]);
        assert_eq!(
            t_generators(&p(&[1, 2, 4])).unwrap().generators,
            vec![rat(1, 2), rat(1, 4)]
        );
        assert!(matches!(t_generators(&p(&[1])), Err(Error::TooFewWeights)));
        for g in &t.generators {
            assert!((g / t.ell).is_integer());
        }
    }

    #[test]
    fn t_membership_examples() {
        let w = p(&[2, 3, 5]);
        assert!(t_membership(&int(0), &w, 10).unwrap());
        assert!(!t_membership(&rat(1, 30), &w, 10).unwrap());
        assert!(t_membership(&rat(4, 15), &w, 10).unwrap());
        // 1/6 + 1/10 needs two terms
        assert!(!t_membership(&rat(4, 15), &w, 1).unwrap());
        assert!(!t_membership(&rat(1, 7), &w, 10).unwrap());
    }

    #[test]
    fn decomposition_search() {
        let w = p(&[2, 3, 5]);
        let gens: Vec<AlphaRep> = s_generators(&w).all().into_iter().map(|g| g.exponent).collect();
        let counts = decompose(&[int(1), int(1), int(1)], &gens, &w).unwrap();
        let total: Vec<Rat> = (0..3)
            .map(|c| {
                gens.iter()
                    .zip(&counts)
                    .fold(Rat::zero(), |acc, (g, &n)| acc + g.entries()[c] * i64::from(n))
            })
            .collect();
        assert_eq!(total, vec![int(1), int(1), int(1)]);
        assert!(decompose(&[rat(1, 7), int(0), int(0)], &gens, &w).is_none());
    }

    #[test]
    fn alpha_witness_reconstructs_alpha() {
        let w = p(&[2, 3, 5]);
        let s = s_generators(&w);
        for a in [[3, 4, 10], [-4, 2, 0], [0, 0, 0], [-1, -1, -1]] {
            let wit = alpha_witness(&a, &w);
            assert_eq!(check_alpha_witness(&wit, &s), None, "{a:?}");
        }
    }

    #[test]
    fn generator_check_examples() {
        for (v, b) in [(&[1, 1][..], 3), (&[2, 3, 5], 4), (&[2, 3], 5)] {
            let r = verify_generators(&p(v), b, Strategy::default()).unwrap();
            assert!(r.pass, "{v:?}: {:?}", r.counterexamples);
        }
        let r = verify_generators(&p(&[2, 3]), 5, Strategy::Sequential).unwrap();
        // all gamma values are multiples of 1/6
        let t = t_generators(&p(&[2, 3])).unwrap();
        assert_eq!(t.ell, rat(1, 6));
        assert_eq!(r.t_witnesses.len(), 1);
    }

    #[test]
    fn t_witness_covers_divisible_and_equal_weights() {
        for v in [&[1, 2, 4][..], &[2, 2, 3], &[3, 3, 1], &[4, 6, 5]] {
            let w = p(v);
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    let b = t_generator_witness(&w, i, j);
                    assert_eq!(
                        gamma_unchecked(&b, &w),
                        Rat::new(1, w.get(i).lcm(&w.get(j))),
                        "{v:?} ({i},{j})"
                    );
                }
            }
        }
    }
}
