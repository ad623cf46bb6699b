//! Signatures of hypersurface pairs at p-adic rational parameters.
//!
//! Over the regular ring `R = F_p[x_1..x_n]` (equivalently its localization
//! or completion at `m`, since only `R / m^[q]` is ever involved) the
//! signature at `t = a / p^c` is the exact normalized length
//!
//! ```text
//! s(R, f^t) = len(R / (m^[q] : f^a)) / q^n,    q = p^c,
//! ```
//!
//! and `R / (m^[q] : f^a)` is isomorphic to the image of multiplication by
//! `f^a` on `R / m^[q]`. Every length below is therefore the rank of one
//! sparse multiplication matrix on the monomial basis of `R / m^[q]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{dense_rank_fp, sparse_rank_fp, SparseMatrixFp};
use crate::poly::{power_mod, SparsePoly, TruncationParams};
use crate::rational::{ExactRational, PadicRational};

/// Largest basis `q^n` handled unless overridden.
pub const DEFAULT_BASIS_BUDGET: u64 = 2_000_000;

/// A length of a quotient of `R / m^[q]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LengthResult {
    pub length: u64,
    pub q: u64,
    pub n: usize,
}

impl LengthResult {
    /// `length / q^n`.
    pub fn normalized(&self) -> ExactRational {
        BigRational::new(self.length.into(), BigInt::from(self.q).pow(self.n as u32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMethod {
    #[default]
    Sparse,
    /// Plain dense elimination, kept as an independent reference path.
    Dense,
}

/// Evaluation settings shared by every length computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Calculator {
    pub basis_budget: u64,
    pub method: RankMethod,
}

impl Default for Calculator {
    fn default() -> Self {
        Self {
            basis_budget: DEFAULT_BASIS_BUDGET,
            method: RankMethod::Sparse,
        }
    }
}

/// Rejects `f = 0` and units: pairs need `0 != f` in the maximal ideal.
pub fn validate_pair_element(f: &SparsePoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant_term() != 0 {
        return Err(Error::UnitElement(f.to_string()));
    }
    Ok(())
}

fn check_nvars(f: &SparsePoly, n: usize) -> Result<()> {
    if f.nvars() != n {
        return Err(Error::Mismatch(format!(
            "f has {} variables, n = {n}",
            f.nvars()
        )));
    }
    Ok(())
}

/// Lexicographic index of an exponent vector in `[0, q)^n`.
fn basis_index(exps: &[u32], q: u64) -> u64 {
    exps.iter().fold(0, |acc, &e| acc * q + e as u64)
}

impl Calculator {
    pub fn with_budget(basis_budget: u64) -> Self {
        Self {
            basis_budget,
            ..Self::default()
        }
    }

    pub fn with_method(self, method: RankMethod) -> Self {
        Self { method, ..self }
    }

    fn check_budget(&self, tp: &TruncationParams) -> Result<u64> {
        let size = tp.basis_size();
        if size > self.basis_budget as u128 {
            return Err(Error::Capacity {
                needed: size,
                budget: self.basis_budget,
            });
        }
        Ok(size as u64)
    }

    /// Truncation at scale `c` for `f`, checked against the basis budget.
    pub fn params(&self, f: &SparsePoly, c: u32) -> Result<TruncationParams> {
        let tp = TruncationParams::new(f.field(), c, f.nvars())?;
        self.check_budget(&tp)?;
        Ok(tp)
    }

    /// Matrix of multiplication by `g` on the monomial basis of `R / m^[q]`.
    /// Column `v` holds the coefficients of `g * x^v` mod `m^[q]`.
    pub fn mult_matrix(&self, g: &SparsePoly, tp: &TruncationParams) -> Result<SparseMatrixFp> {
        if g.nvars() != tp.nvars() || g.field() != tp.field() {
            return Err(Error::Mismatch("multiplier and truncation disagree".into()));
        }
        let size = self.check_budget(tp)? as usize;
        let q = tp.q();
        let n = tp.nvars();
        let terms: Vec<(&[u32], u64, u32)> = g
            .terms()
            .filter(|(e, _)| e.below(q))
            .map(|(e, c)| (e.as_slice(), basis_index(e.as_slice(), q), c))
            .collect();
        let mut triples = Vec::with_capacity(size * terms.len().min(8));
        let mut v = vec![0u32; n];
        for col in 0..size {
            for &(u, offset, c) in &terms {
                // No carries: the index of v + u is index(v) + index(u).
                if v.iter().zip(u).all(|(&a, &b)| (a as u64 + b as u64) < q) {
                    triples.push((col + offset as usize, col, c as u64));
                }
            }
            for slot in v.iter_mut().rev() {
                *slot += 1;
                if (*slot as u64) < q {
                    break;
                }
                *slot = 0;
            }
        }
        SparseMatrixFp::new(tp.field(), size, size, triples)
    }

    fn rank(&self, m: &SparseMatrixFp) -> u64 {
        match self.method {
            RankMethod::Sparse => sparse_rank_fp(m) as u64,
            RankMethod::Dense => dense_rank_fp(m) as u64,
        }
    }

    /// `len(R / (m^[q] : f^a))`, the rank of multiplication by `f^a`.
    pub fn colon_length(&self, f: &SparsePoly, a: u64, tp: &TruncationParams) -> Result<LengthResult> {
        validate_pair_element(f)?;
        let size = self.check_budget(tp)?;
        let g = power_mod(f, a, tp)?;
        let length = if g.is_zero() {
            0
        } else if g == SparsePoly::one(f.field(), f.nvars()) {
            size
        } else {
            self.rank(&self.mult_matrix(&g, tp)?)
        };
        Ok(LengthResult {
            length,
            q: tp.q(),
            n: tp.nvars(),
        })
    }

    /// `len(R / (m^[q] + f^a))`, computed as the corank of the transposed
    /// multiplication matrix so that it does not share an elimination with
    /// [`Calculator::colon_length`].
    pub fn quotient_length(&self, f: &SparsePoly, a: u64, tp: &TruncationParams) -> Result<LengthResult> {
        validate_pair_element(f)?;
        let size = self.check_budget(tp)?;
        let g = power_mod(f, a, tp)?;
        let rank = if g.is_zero() {
            0
        } else {
            self.rank(&self.mult_matrix(&g, tp)?.transpose())
        };
        Ok(LengthResult {
            length: size - rank,
            q: tp.q(),
            n: tp.nvars(),
        })
    }

    /// Signature at `a / p^c`, evaluated at exactly that scale (no
    /// reduction of the fraction).
    pub fn signature_at_scale(&self, f: &SparsePoly, a: u64, c: u32) -> Result<ExactRational> {
        let tp = self.params(f, c)?;
        Ok(self.colon_length(f, a, &tp)?.normalized())
    }

    pub fn signature_at(&self, f: &SparsePoly, t: PadicRational) -> Result<ExactRational> {
        if t.p() != f.p() {
            return Err(Error::Mismatch(format!(
                "parameter on the {}-adic grid, f over F_{}",
                t.p(),
                f.p()
            )));
        }
        self.signature_at_scale(f, t.numerator(), t.scale())
    }

    pub fn phi_at(&self, f: &SparsePoly, t: PadicRational) -> Result<ExactRational> {
        Ok(BigRational::one() - self.signature_at(f, t)?)
    }

    /// Samples `s(a / p^c)` for `a = 0..=A` where `t_max = A / p^c`.
    /// Each sample is computed at scale `c`; evaluation runs in parallel and
    /// the result is independent of scheduling.
    pub fn signature_table(&self, f: &SparsePoly, c: u32, t_max: PadicRational) -> Result<SignatureTable> {
        validate_pair_element(f)?;
        let last = grid_numerator(f.p(), c, t_max)?;
        let tp = self.params(f, c)?;
        let lengths = (0..=last)
            .into_par_iter()
            .map(|a| self.colon_length(f, a, &tp).map(|l| l.length))
            .collect::<Result<Vec<_>>>()?;
        SignatureTable::from_lengths(f.clone(), c, &lengths)
    }

    /// `len(R / (m^[p^e] + f)) / p^{e(n-1)}` for `e = 1..=e_max`.
    pub fn hk_sequence(&self, f: &SparsePoly, e_max: u32) -> Result<Vec<ExactRational>> {
        validate_pair_element(f)?;
        (1..=e_max)
            .map(|e| {
                let tp = self.params(f, e)?;
                let len = self.quotient_length(f, 1, &tp)?;
                Ok(hypersurface_normalize(len))
            })
            .collect()
    }

    /// `len(R / (m^[p^e] : f^{p^e - 1})) / p^{e(n-1)}` for `e = 1..=e_max`.
    pub fn quotient_signature_sequence(&self, f: &SparsePoly, e_max: u32) -> Result<Vec<ExactRational>> {
        validate_pair_element(f)?;
        (1..=e_max)
            .map(|e| {
                let tp = self.params(f, e)?;
                let len = self.colon_length(f, tp.q() - 1, &tp)?;
                Ok(hypersurface_normalize(len))
            })
            .collect()
    }
}

/// Normalization by `q^{n-1}`, the dimension count of `R / f`.
fn hypersurface_normalize(len: LengthResult) -> ExactRational {
    BigRational::new(
        len.length.into(),
        BigInt::from(len.q).pow(len.n as u32 - 1),
    )
}

/// Numerator of `t_max` over `p^c`.
pub fn grid_numerator(p: u32, c: u32, t_max: PadicRational) -> Result<u64> {
    if t_max.p() != p {
        return Err(Error::Mismatch(format!("t_max on the {}-adic grid, p = {p}", t_max.p())));
    }
    t_max
        .numerator_at(c)
        .ok_or_else(|| Error::NonGridParameter(format!("{t_max} at scale {c}")))
}

/// Signature samples `(t, s(R, f^t))` on a fixed grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTable {
    f: SparsePoly,
    c: u32,
    samples: Vec<(PadicRational, ExactRational)>,
}

impl SignatureTable {
    /// Validates strictly increasing `t`, `s` in `[0, 1]` and denominators
    /// dividing `p^{cn}`.
    pub fn new(f: SparsePoly, c: u32, samples: Vec<(PadicRational, ExactRational)>) -> Result<Self> {
        let p = f.p();
        let full = BigInt::from(p).pow(c * f.nvars() as u32);
        for (i, (t, s)) in samples.iter().enumerate() {
            if t.p() != p {
                return Err(Error::InvalidTable(format!("sample {i} is on the {}-adic grid", t.p())));
            }
            if i > 0 && samples[i - 1].0.value() >= t.value() {
                return Err(Error::InvalidTable(format!("t not increasing at sample {i}")));
            }
            if *s < BigRational::zero() || *s > BigRational::one() {
                return Err(Error::InvalidTable(format!("s = {s} outside [0, 1] at sample {i}")));
            }
            if !(&full % s.denom()).is_zero() {
                return Err(Error::InvalidTable(format!("denominator of {s} does not divide p^(cn)")));
            }
        }
        Ok(Self { f, c, samples })
    }

    /// Table at `t = a / p^c`, `a = 0, 1, ...`, from lengths over `p^{cn}`.
    pub fn from_lengths(f: SparsePoly, c: u32, lengths: &[u64]) -> Result<Self> {
        let p = f.p();
        let full = BigInt::from(p).pow(c * f.nvars() as u32);
        let samples = lengths
            .iter()
            .enumerate()
            .map(|(a, &len)| {
                (
                    PadicRational::new(p, a as u64, c),
                    BigRational::new(len.into(), full.clone()),
                )
            })
            .collect();
        Self::new(f, c, samples)
    }

    /// Table at `t = a / p^c` with the given values.
    pub fn from_values(f: SparsePoly, c: u32, values: Vec<ExactRational>) -> Result<Self> {
        let p = f.p();
        let samples = values
            .into_iter()
            .enumerate()
            .map(|(a, s)| (PadicRational::new(p, a as u64, c), s))
            .collect();
        Self::new(f, c, samples)
    }

    pub fn f(&self) -> &SparsePoly {
        &self.f
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    pub fn scale(&self) -> u32 {
        self.c
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn samples(&self) -> &[(PadicRational, ExactRational)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Value at `t`, if `t` is a sample point.
    pub fn value_at(&self, t: PadicRational) -> Option<&ExactRational> {
        self.samples.iter().find(|(u, _)| *u == t).map(|(_, s)| s)
    }
}

/// Forward difference quotients `(s_{i+1} - s_i) / (t_{i+1} - t_i)`, one per
/// sample except the last.
pub fn derivative_table(tbl: &SignatureTable) -> Result<Vec<(PadicRational, ExactRational)>> {
    if tbl.len() < 2 {
        return Err(Error::TableTooSmall {
            needed: 2,
            have: tbl.len(),
        });
    }
    Ok(tbl
        .samples
        .windows(2)
        .map(|w| {
            let (t0, s0) = &w[0];
            let (t1, s1) = &w[1];
            (*t0, (s1 - s0) / (t1.value() - t0.value()))
        })
        .collect())
}

pub fn mult_matrix(g: &SparsePoly, tp: &TruncationParams) -> Result<SparseMatrixFp> {
    Calculator::default().mult_matrix(g, tp)
}

pub fn colon_length(f: &SparsePoly, a: u64, tp: &TruncationParams) -> Result<LengthResult> {
    Calculator::default().colon_length(f, a, tp)
}

pub fn quotient_length(f: &SparsePoly, a: u64, tp: &TruncationParams) -> Result<LengthResult> {
    Calculator::default().quotient_length(f, a, tp)
}

pub fn signature_at(f: &SparsePoly, t: PadicRational, n: usize) -> Result<ExactRational> {
    check_nvars(f, n)?;
    Calculator::default().signature_at(f, t)
}

pub fn phi_at(f: &SparsePoly, t: PadicRational, n: usize) -> Result<ExactRational> {
    check_nvars(f, n)?;
    Calculator::default().phi_at(f, t)
}

pub fn signature_table(f: &SparsePoly, p: u32, c: u32, n: usize, t_max: PadicRational) -> Result<SignatureTable> {
    check_nvars(f, n)?;
    if f.p() != p {
        return Err(Error::Mismatch(format!("f over F_{}, p = {p}", f.p())));
    }
    Calculator::default().signature_table(f, c, t_max)
}

pub fn hk_sequence(f: &SparsePoly, n: usize, e_max: u32) -> Result<Vec<ExactRational>> {
    check_nvars(f, n)?;
    Calculator::default().hk_sequence(f, e_max)
}

pub fn quotient_signature_sequence(f: &SparsePoly, n: usize, e_max: u32) -> Result<Vec<ExactRational>> {
    check_nvars(f, n)?;
    Calculator::default().quotient_signature_sequence(f, e_max)
}
