//! Sparse multivariate polynomials over F_p and their images in
//! `R / m^[q]`, where `m^[q] = (x_1^q, ..., x_n^q)`.
//!
//! Because `m^[q]` is a monomial ideal, reduction modulo it simply drops
//! every term with some exponent `>= q`, and it commutes with products.
//! Powers use the Frobenius identity `g^p = g(x^p)` over F_p.

mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub use parse::parse_poly;

pub const MAX_VARS: usize = 8;

/// Exponent vector of a monomial; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVec(Vec<u32>);

impl ExponentVec {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn checked_scale(&self, k: u64) -> Option<Self> {
        self.0
            .iter()
            .map(|&e| u32::try_from(e as u64 * k).ok())
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// True when every exponent is below `bound`.
    pub fn below(&self, bound: u64) -> bool {
        self.0.iter().all(|&e| (e as u64) < bound)
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn max(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl From<Vec<u32>> for ExponentVec {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// `R / m^[q]` with `q = p^c` in `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncationParams {
    field: PrimeField,
    c: u32,
    n: usize,
    q: u64,
}

impl TruncationParams {
    pub fn new(field: PrimeField, c: u32, n: usize) -> Result<Self> {
        check_nvars(n)?;
        let q = (field.modulus() as u64)
            .checked_pow(c)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::ExponentOverflow(format!("{}^{c}", field.modulus())))?;
        Ok(Self { field, c, n, q })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn scale(&self) -> u32 {
        self.c
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^n`, the F_p-dimension of `R / m^[q]`.
    pub fn basis_size(&self) -> u128 {
        (self.q as u128).pow(self.n as u32)
    }
}

pub(crate) fn check_nvars(n: usize) -> Result<()> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadVariableCount(n))
    }
}

/// Polynomial with nonzero F_p coefficients keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<ExponentVec, u32>,
}

impl SparsePoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Self {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        Self::monomial(field, ExponentVec::zero(nvars), c)
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        Self::monomial(field, ExponentVec::unit(nvars, i), 1)
    }

    pub fn monomial(field: PrimeField, exps: ExponentVec, coeff: u64) -> Self {
        let mut out = Self::zero(field, exps.len());
        let c = field.reduce(coeff);
        if c != 0 {
            out.terms.insert(exps, c);
        }
        out
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVec, u64)>,
    {
        let mut acc: BTreeMap<ExponentVec, u32> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Mismatch(format!(
                    "exponent vector of length {} in {nvars} variables",
                    e.len()
                )));
            }
            let c = field.reduce(c);
            let slot = acc.entry(e).or_insert(0);
            *slot = field.add(*slot, c);
        }
        acc.retain(|_, c| *c != 0);
        Ok(Self {
            field,
            nvars,
            terms: acc,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVec, u32)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, e: &ExponentVec) -> u32 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&ExponentVec::zero(self.nvars))
    }

    /// Whether every exponent of every term is below `bound`.
    pub fn all_below(&self, bound: u64) -> bool {
        self.terms.keys().all(|e| e.below(bound))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::Mismatch(format!(
                "operands over F_{} in {} variables and F_{} in {} variables",
                self.p(),
                self.nvars,
                other.p(),
                other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert(0);
            *slot = self.field.add(*slot, c);
            if *slot == 0 {
                out.terms.remove(e);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product restricted to monomials whose exponents are all below
    /// `bound`; `None` keeps everything.
    fn mul_bounded(&self, other: &Self, bound: Option<u64>) -> Result<Self> {
        self.check_compatible(other)?;
        let field = self.field;
        let mut acc: HashMap<ExponentVec, u32> = HashMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea
                    .checked_add(eb)
                    .ok_or_else(|| Error::ExponentOverflow("product exponent exceeds u32".into()))?;
                if bound.is_some_and(|q| !e.below(q)) {
                    continue;
                }
                let slot = acc.entry(e).or_insert(0);
                *slot = field.add(*slot, field.mul(ca, cb));
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(Self {
            field,
            nvars: self.nvars,
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_bounded(other, None)
    }

    /// Exact power in the full polynomial ring.
    pub fn pow(&self, a: u64) -> Result<Self> {
        self.pow_bounded(a, None)
    }

    fn truncate_below(&self, bound: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.below(bound))
            .map(|(e, &c)| (e.clone(), c))
            .collect();
        Self {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    fn frobenius(&self, k: u32) -> Result<Self> {
        let factor = (self.p() as u64)
            .checked_pow(k)
            .ok_or_else(|| Error::ExponentOverflow(format!("{}^{k}", self.p())))?;
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let scaled = e
                .checked_scale(factor)
                .ok_or_else(|| Error::ExponentOverflow(format!("exponent times {factor}")))?;
            terms.insert(scaled, c);
        }
        Ok(Self {
            field: self.field,
            nvars: self.nvars,
            terms,
        })
    }

    /// `self^a` with every monomial having an exponent `>= bound` dropped
    /// (all of them kept when `bound` is `None`).
    ///
    /// Writes `a = sum a_i p^i` and multiplies the Frobenius twists of the
    /// small powers `self^{a_i}`. A term of `self^{a_i}` survives the twist
    /// by `p^i` iff its exponents are below `ceil(bound / p^i)`, so each
    /// small power is computed modulo that coarser bound.
    fn pow_bounded(&self, a: u64, bound: Option<u64>) -> Result<Self> {
        let p = self.p() as u64;
        let mut digits = Vec::new();
        let mut rest = a;
        while rest > 0 {
            digits.push(rest % p);
            rest /= p;
        }
        let mut result = Self::one(self.field, self.nvars);
        if let Some(q) = bound {
            result = result.truncate_below(q);
        }
        // High digits first: their twists are the sparsest factors.
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let i = i as u32;
            let coarse = match bound {
                Some(q) => match p.checked_pow(i) {
                    Some(pi) => Some(q.div_ceil(pi)),
                    None => Some(1),
                },
                None => None,
            };
            let base = match coarse {
                Some(b) => self.truncate_below(b),
                None => self.clone(),
            };
            let mut small = Self::one(self.field, self.nvars);
            if let Some(b) = coarse {
                small = small.truncate_below(b);
            }
            for _ in 0..d {
                small = small.mul_bounded(&base, coarse)?;
            }
            let twisted = if small.terms.keys().all(ExponentVec::is_zero) {
                small
            } else {
                small.frobenius(i)?
            };
            result = result.mul_bounded(&twisted, bound)?;
            if result.is_zero() {
                break;
            }
        }
        Ok(result)
    }
}

/// Image of `f` in `R / m^[q]`: drops every term with an exponent `>= q`.
pub fn truncate(f: &SparsePoly, tp: &TruncationParams) -> Result<SparsePoly> {
    check_params(f, tp)?;
    Ok(f.truncate_below(tp.q))
}

/// Multiplies every exponent by `p^k`; equals `f^(p^k)` over F_p.
pub fn frobenius_substitute(f: &SparsePoly, k: u32) -> Result<SparsePoly> {
    f.frobenius(k)
}

pub fn mul_truncated(f: &SparsePoly, g: &SparsePoly, tp: &TruncationParams) -> Result<SparsePoly> {
    check_params(f, tp)?;
    f.truncate_below(tp.q)
        .mul_bounded(&g.truncate_below(tp.q), Some(tp.q))
}

/// `f^a` in `R / m^[q]`.
pub fn power_mod(f: &SparsePoly, a: u64, tp: &TruncationParams) -> Result<SparsePoly> {
    check_params(f, tp)?;
    f.pow_bounded(a, Some(tp.q))
}

fn check_params(f: &SparsePoly, tp: &TruncationParams) -> Result<()> {
    if f.nvars != tp.n || f.field != tp.field {
        return Err(Error::Mismatch(format!(
            "polynomial over F_{} in {} variables, truncation over F_{} in {} variables",
            f.p(),
            f.nvars,
            tp.p(),
            tp.n
        )));
    }
    Ok(())
}

pub fn var_name(nvars: usize, i: usize) -> String {
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    if nvars <= LETTERS.len() {
        LETTERS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Canonical printer: terms in descending lexicographic order, coefficients
/// in `[0, p)`, `*` between factors. `parse_poly` reads it back exactly.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            if c != 1 || e.is_zero() {
                factors.push(c.to_string());
            }
            for (i, &d) in e.as_slice().iter().enumerate() {
                match d {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, i)),
                    _ => factors.push(format!("{}^{d}", var_name(self.nvars, i))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
