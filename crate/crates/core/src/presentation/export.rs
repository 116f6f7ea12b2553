//! Text renderings of presentations and quotients: JSON (round-trippable),
//! Singular, Macaulay2 and LaTeX.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_monomial, AffinePresentation, Binomial, Generator, LinearRelation, NameMonomial};
use crate::deformed_ring::GradedQuotient;
use crate::error::{Error, Result};
use crate::fibration::Fibration;
use crate::lattice::WeightVector;
use crate::rational::{clear_denominators, fmt_coeff, fmt_rat, parse_coeff, parse_rat, Coeff, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Singular,
    Macaulay2,
    Latex,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Singular => "singular",
            Format::Macaulay2 => "macaulay2",
            Format::Latex => "latex",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "singular" => Ok(Format::Singular),
            "macaulay2" | "m2" => Ok(Format::Macaulay2),
            "latex" | "tex" => Ok(Format::Latex),
            _ => Err(Error::UnsupportedFormat {
                format: s.to_string(),
                what: "any object",
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorDto {
    name: String,
    t_exp: String,
    z_exp: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PresentationDto {
    kind: String,
    p: Vec<i64>,
    w: Option<Vec<i64>>,
    generators: Vec<GeneratorDto>,
    relations: Vec<(NameMonomial, NameMonomial)>,
    extra_relations: Vec<Vec<(String, NameMonomial)>>,
    ambient_dim: usize,
}

const PRESENTATION: &str = "presentation";
const QUOTIENT: &str = "quotient";

impl AffinePresentation {
    pub fn to_json(&self) -> String {
        let dto = PresentationDto {
            kind: PRESENTATION.into(),
            p: self.p.entries().to_vec(),
            w: self.w.as_ref().map(|w| w.entries().to_vec()),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDto {
                    name: g.name.clone(),
                    t_exp: fmt_rat(&g.monomial.t_exp),
                    z_exp: g.monomial.z_exp.entries().iter().map(fmt_rat).collect(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| (r.lhs.clone(), r.rhs.clone()))
                .collect(),
            extra_relations: self
                .extra_relations
                .iter()
                .map(|r| r.terms.iter().map(|(c, m)| (fmt_coeff(c), m.clone())).collect())
                .collect(),
            ambient_dim: self.ambient_dim,
        };
        serde_json::to_string_pretty(&dto).expect("plain data") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: PresentationDto = serde_json::from_str(text)?;
        if dto.kind != PRESENTATION {
            return Err(Error::Precondition(format!("expected a presentation, found `{}`", dto.kind)));
        }
        let p = WeightVector::weights(dto.p)?;
        let fib = Fibration::new(p.clone());
        let generators = dto
            .generators
            .into_iter()
            .map(|g| {
                let t = parse_rat(&g.t_exp)?;
                let z = g.z_exp.iter().map(|x| parse_rat(x)).collect::<Result<Vec<_>>>()?;
                let monomial = fib.normalize_monomial(&t, &z)?;
                if monomial.t_exp != t || monomial.z_exp.entries() != z.as_slice() {
                    return Err(Error::NotInAlphaImage(format!("generator {} is not in normal form", g.name)));
                }
                Ok(Generator { name: g.name, monomial })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AffinePresentation {
            w: dto.w.map(WeightVector::multiplicities).transpose()?,
            p,
            generators,
            relations: dto
                .relations
                .into_iter()
                .map(|(l, r)| Binomial::new(l, r))
                .collect(),
            extra_relations: dto
                .extra_relations
                .into_iter()
                .map(|terms| {
                    Ok(LinearRelation {
                        terms: terms
                            .into_iter()
                            .map(|(c, m)| Ok((parse_coeff(&c)?, m)))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<_>>()?,
            ambient_dim: dto.ambient_dim,
        })
    }

    pub fn export(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Singular => self.to_singular(),
            Format::Macaulay2 => self.to_macaulay2(),
            Format::Latex => self.to_latex(),
        }
    }

    /// Relations as polynomials with coprime integer coefficients.
    fn ideal_generators(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{}-{}", fmt_monomial(&r.lhs), fmt_monomial(&r.rhs)))
            .collect();
        for r in &self.extra_relations {
            let coeffs: Vec<Coeff> = r.terms.iter().map(|(c, _)| c.clone()).collect();
            let ints = clear_denominators(&coeffs);
            let mut s = String::new();
            for (k, (c, (_, m))) in ints.iter().zip(&r.terms).enumerate() {
                s.push_str(&integer_term(c, m, k == 0));
            }
            out.push(s);
        }
        out
    }

    fn to_singular(&self) -> String {
        let ideal = self.ideal_generators();
        let ideal = if ideal.is_empty() { "0".to_string() } else { ideal.join(",\n  ") };
        format!(
            "ring R = 0, ({}), dp;\nideal I =\n  {};\nquit;\n",
            self.generator_names().join(","),
            ideal
        )
    }

    fn to_macaulay2(&self) -> String {
        let ideal = self.ideal_generators();
        let ideal = if ideal.is_empty() { "0_R".to_string() } else { ideal.join(",\n  ") };
        format!(
            "R = QQ[{}, MonomialOrder => GRevLex];\nI = ideal(\n  {});\n",
            self.generator_names().join(", "),
            ideal
        )
    }

    fn to_latex(&self) -> String {
        let mut lines: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("  {} &= {}", latex_monomial(&r.lhs), latex_monomial(&r.rhs)))
            .collect();
        for r in &self.extra_relations {
            let mut s = String::new();
            for (k, (c, m)) in r.terms.iter().enumerate() {
                s.push_str(&latex_term(c, m, k == 0));
            }
            lines.push(format!("  {s} &= 0"));
        }
        if lines.is_empty() {
            lines.push("  0 &= 0".into());
        }
        format!("\\begin{{align*}}\n{}\n\\end{{align*}}\n", lines.join(" \\\\\n"))
    }
}

fn integer_term(c: &BigInt, m: &NameMonomial, first: bool) -> String {
    let sign = if c.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let a = c.abs();
    let body = match (a.is_one(), m.is_empty()) {
        (true, false) => fmt_monomial(m),
        (_, true) => a.to_string(),
        (false, false) => format!("{a}*{}", fmt_monomial(m)),
    };
    format!("{sign}{body}")
}

fn latex_name(name: &str) -> String {
    match name.find(|c: char| c.is_ascii_digit()) {
        Some(i) => format!("{}_{{{}}}", &name[..i], &name[i..]),
        None => name.to_string(),
    }
}

fn latex_monomial(m: &NameMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(n, &e)| {
            if e == 1 {
                latex_name(n)
            } else {
                format!("{}^{{{e}}}", latex_name(n))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_term(c: &Coeff, m: &NameMonomial, first: bool) -> String {
    let sign = if c.is_negative() {
        " - "
    } else if first {
        ""
    } else {
        " + "
    };
    let sign = if first && c.is_negative() { "-" } else { sign };
    let a = c.abs();
    let body = match (a.is_one(), m.is_empty()) {
        (true, false) => latex_monomial(m),
        (_, true) => latex_coeff(&a),
        (false, false) => format!("{} {}", latex_coeff(&a), latex_monomial(m)),
    };
    format!("{sign}{body}")
}

/// The graded data of a quotient in plain form: degrees, dimensions, basis
/// exponents and nonzero structure constants `b_i b_j = sum_k c b_k`, `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSummary {
    pub p: Vec<i64>,
    pub w: Vec<i64>,
    pub degree_cap: Rat,
    pub dims: Vec<(Rat, usize)>,
    pub total_dim: usize,
    pub basis: Vec<(Rat, Vec<Rat>)>,
    pub structure_constants: Vec<(usize, usize, usize, Coeff)>,
}

#[derive(Serialize, Deserialize)]
struct DimDto {
    degree: String,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct BasisDto {
    degree: String,
    exponent: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct QuotientDto {
    kind: String,
    p: Vec<i64>,
    w: Vec<i64>,
    degree_cap: String,
    dims: Vec<DimDto>,
    total_dim: usize,
    basis: Vec<BasisDto>,
    structure_constants: Vec<(usize, usize, usize, String)>,
}

impl From<&GradedQuotient> for QuotientSummary {
    fn from(q: &GradedQuotient) -> Self {
        let mut sc = Vec::new();
        for (&(i, j), v) in q.structure_constants() {
            for (k, c) in v {
                sc.push((i, j, *k, c.clone()));
            }
        }
        QuotientSummary {
            p: q.p().entries().to_vec(),
            w: q.w().entries().to_vec(),
            degree_cap: q.degree_cap(),
            dims: q.slices().iter().map(|s| (s.degree, s.dim())).collect(),
            total_dim: q.total_dim(),
            basis: q
                .basis()
                .into_iter()
                .map(|(d, b)| (d, b.into_entries()))
                .collect(),
            structure_constants: sc,
        }
    }
}

impl QuotientSummary {
    /// Degrees of positive dimension.
    pub fn nonzero_dims(&self) -> BTreeMap<Rat, usize> {
        self.dims.iter().filter(|(_, d)| *d > 0).copied().collect()
    }

    pub fn to_json(&self) -> String {
        let dto = QuotientDto {
            kind: QUOTIENT.into(),
            p: self.p.clone(),
            w: self.w.clone(),
            degree_cap: fmt_rat(&self.degree_cap),
            dims: self
                .dims
                .iter()
                .map(|(d, n)| DimDto {
                    degree: fmt_rat(d),
                    dim: *n,
                })
                .collect(),
            total_dim: self.total_dim,
            basis: self
                .basis
                .iter()
                .map(|(d, e)| BasisDto {
                    degree: fmt_rat(d),
                    exponent: e.iter().map(fmt_rat).collect(),
                })
                .collect(),
            structure_constants: self
                .structure_constants
                .iter()
                .map(|(i, j, k, c)| (*i, *j, *k, fmt_coeff(c)))
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("plain data") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: QuotientDto = serde_json::from_str(text)?;
        if dto.kind != QUOTIENT {
            return Err(Error::Precondition(format!("expected a quotient, found `{}`", dto.kind)));
        }
        Ok(QuotientSummary {
            p: dto.p,
            w: dto.w,
            degree_cap: parse_rat(&dto.degree_cap)?,
            dims: dto
                .dims
                .iter()
                .map(|d| Ok((parse_rat(&d.degree)?, d.dim)))
                .collect::<Result<_>>()?,
            total_dim: dto.total_dim,
            basis: dto
                .basis
                .iter()
                .map(|b| {
                    Ok((
                        parse_rat(&b.degree)?,
                        b.exponent.iter().map(|x| parse_rat(x)).collect::<Result<_>>()?,
                    ))
                })
                .collect::<Result<_>>()?,
            structure_constants: dto
                .structure_constants
                .iter()
                .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_coeff(c)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn export(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Latex => Ok(self.to_latex()),
            other => Err(Error::UnsupportedFormat {
                format: other.to_string(),
                what: "quotients (export the Chow presentation instead)",
            }),
        }
    }

    fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{tabular}{ll}\n\\hline\ndegree & basis \\\\\n\\hline\n");
        for (d, n) in self.dims.iter().filter(|(_, n)| *n > 0) {
            let monos: Vec<String> = self
                .basis
                .iter()
                .filter(|(bd, _)| bd == d)
                .map(|(_, e)| latex_y(e))
                .collect();
            debug_assert_eq!(monos.len(), *n);
            out.push_str(&format!("${}$ & ${}$ \\\\\n", latex_rat(d), monos.join(",\\ ")));
        }
        out.push_str("\\hline\n\\end{tabular}\n");
        out
    }
}

fn latex_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn latex_y(e: &[Rat]) -> String {
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            if x == &Rat::one() {
                format!("y_{{{i}}}")
            } else {
                format!("y_{{{i}}}^{{{}}}", latex_rat(x))
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" ")
    }
}

/// Reads a stored JSON document (presentation or quotient) and renders it
/// in `format`.
pub fn rerender(text: &str, format: Format) -> Result<String> {
    #[derive(Deserialize)]
    struct Kind {
        kind: String,
    }
    let kind: Kind = serde_json::from_str(text)?;
    match kind.kind.as_str() {
        PRESENTATION => Ok(AffinePresentation::from_json(text)?.export(format)),
        QUOTIENT => QuotientSummary::from_json(text)?.export(format),
        other => match format {
            Format::Json => {
                let v: serde_json::Value = serde_json::from_str(text)?;
                Ok(serde_json::to_string_pretty(&v)? + "\n")
            }
            f => Err(Error::UnsupportedFormat {
                format: f.to_string(),
                what: if other.is_empty() { "untyped documents" } else { "reports" },
            }),
        },
    }
}
