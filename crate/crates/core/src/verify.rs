//! Property checks on signature tables: monotonicity, convexity, the slope
//! bound by the Hilbert–Kunz value, the endpoint slope identities, and the
//! agreement of the monomial paths. All comparisons are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::newton::{clipped_volume_exact, monomial_colon_length, newton_facets, MonomialIdeal};
use crate::poly::{SparsePoly, TruncationParams};
use crate::rational::{ratio_u, ExactRational, PadicRational};
use crate::sigcore::{Calculator, SignatureTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Where a report was computed: prime, scale, dimension and the element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportMeta {
    pub p: u32,
    pub c: u32,
    pub n: usize,
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    pub meta: ReportMeta,
}

impl PropertyReport {
    fn new(name: &str, meta: ReportMeta, witnesses: Vec<Witness>) -> Self {
        Self {
            name: name.to_string(),
            pass: witnesses.is_empty(),
            witnesses,
            meta,
        }
    }
}

fn table_meta(tbl: &SignatureTable) -> ReportMeta {
    ReportMeta {
        p: tbl.p(),
        c: tbl.scale(),
        n: tbl.nvars(),
        f: tbl.f().to_string(),
    }
}

fn witness(location: String, expected: String, actual: impl ToString) -> Witness {
    Witness {
        location,
        expected,
        actual: actual.to_string(),
    }
}

/// Forward slopes between consecutive samples, keyed by the left end.
fn slopes(tbl: &SignatureTable) -> Vec<(PadicRational, ExactRational)> {
    tbl.samples()
        .windows(2)
        .map(|w| {
            let (t0, s0) = &w[0];
            let (t1, s1) = &w[1];
            (*t0, (s1 - s0) / (t1.value() - t0.value()))
        })
        .collect()
}

pub fn check_monotone(tbl: &SignatureTable) -> PropertyReport {
    let witnesses = tbl
        .samples()
        .windows(2)
        .filter(|w| w[1].1 > w[0].1)
        .map(|w| witness(format!("t = {}", w[1].0), format!("<= {}", w[0].1), &w[1].1))
        .collect();
    PropertyReport::new("monotone", table_meta(tbl), witnesses)
}

pub fn check_convex(tbl: &SignatureTable) -> Result<PropertyReport> {
    if tbl.len() < 3 {
        return Err(Error::TableTooSmall {
            needed: 3,
            have: tbl.len(),
        });
    }
    let witnesses = slopes(tbl)
        .windows(2)
        .filter(|w| w[1].1 < w[0].1)
        .map(|w| {
            witness(
                format!("slope after t = {}", w[1].0),
                format!(">= {}", w[0].1),
                &w[1].1,
            )
        })
        .collect();
    Ok(PropertyReport::new("convex", table_meta(tbl), witnesses))
}

/// Every slope is at most the first in magnitude, and the first is at most
/// `hk_upper`.
pub fn check_sharp_slope(tbl: &SignatureTable, hk_upper: &ExactRational) -> PropertyReport {
    let all = slopes(tbl);
    let mut witnesses = Vec::new();
    if let Some((t0, first)) = all.first() {
        let bound = first.abs();
        if &bound > hk_upper {
            witnesses.push(witness(format!("slope at t = {t0}"), format!("|slope| <= {hk_upper}"), &bound));
        }
        for (t, s) in &all[1..] {
            if s.abs() > bound {
                witnesses.push(witness(format!("slope at t = {t}"), format!("|slope| <= {bound}"), s.abs()));
            }
        }
    }
    PropertyReport::new("sharp-slope", table_meta(tbl), witnesses)
}

/// At scale `e`: the forward slope at 0 equals minus the Hilbert–Kunz
/// value of `R/f` and the backward slope at 1 equals minus the quotient
/// signature value.
pub fn check_adjunction_slopes(f: &SparsePoly, e: u32) -> Result<PropertyReport> {
    check_adjunction_slopes_with(&Calculator::default(), f, e)
}

pub fn check_adjunction_slopes_with(calc: &Calculator, f: &SparsePoly, e: u32) -> Result<PropertyReport> {
    if e == 0 {
        return Err(Error::OutOfRange("scale e must be positive".into()));
    }
    let q = (f.p() as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::OutOfRange(format!("{}^{e}", f.p())))?;
    let scale = BigRational::from_integer(q.into());
    let hk = calc.hk_sequence(f, e)?.pop().expect("e >= 1");
    let qsig = calc.quotient_signature_sequence(f, e)?.pop().expect("e >= 1");

    let at_start = (calc.signature_at_scale(f, 1, e)? - BigRational::one()) * &scale;
    let at_end = (calc.signature_at_scale(f, q, e)? - calc.signature_at_scale(f, q - 1, e)?) * &scale;

    let mut witnesses = Vec::new();
    if at_start != -hk.clone() {
        witnesses.push(witness("slope at t = 0".into(), (-hk).to_string(), at_start));
    }
    if at_end != -qsig.clone() {
        witnesses.push(witness("slope at t = 1".into(), (-qsig).to_string(), at_end));
    }
    let meta = ReportMeta {
        p: f.p(),
        c: e,
        n: f.nvars(),
        f: f.to_string(),
    };
    Ok(PropertyReport::new("adjunction-slopes", meta, witnesses))
}

/// Compares the monomial-ideal paths at scale `e >= scale(t)`.
///
/// With `f_equiv`, the rank-based signature of the monomial `f_equiv` must
/// equal the lattice count exactly. Without it, the lattice count at
/// `p^e` must lie within `2 n maxdeg / p^e` of the exact clipped volume.
pub fn check_monomial_cross(
    ideal: &MonomialIdeal,
    f_equiv: Option<&SparsePoly>,
    t: PadicRational,
    e: u32,
) -> Result<PropertyReport> {
    check_monomial_cross_with(&Calculator::default(), ideal, f_equiv, t, e)
}

pub fn check_monomial_cross_with(
    calc: &Calculator,
    ideal: &MonomialIdeal,
    f_equiv: Option<&SparsePoly>,
    t: PadicRational,
    e: u32,
) -> Result<PropertyReport> {
    let p = t.p();
    let n = ideal.nvars();
    let a = t
        .numerator_at(e)
        .ok_or_else(|| Error::NonGridParameter(format!("{t} at scale {e}")))?;
    let tp = TruncationParams::new(PrimeField::new(p as u64)?, e, n)?;
    let lattice = monomial_colon_length(ideal, a, &tp)?.normalized();
    let mut witnesses = Vec::new();
    let mut shown = ideal
        .generators()
        .iter()
        .map(|g| format!("{:?}", g.as_slice()))
        .collect::<Vec<_>>()
        .join(",");
    if let Some(f) = f_equiv {
        let mut terms = f.terms();
        let principal = match (terms.next(), terms.next()) {
            (Some((exps, _)), None) => ideal.generators() == [exps.clone()],
            _ => false,
        };
        if !principal || f.nvars() != n || f.p() != p {
            return Err(Error::Mismatch(format!("{f} does not generate the ideal over F_{p}")));
        }
        let ranked = calc.signature_at(f, t)?;
        if ranked != lattice {
            witnesses.push(witness(format!("t = {t}"), lattice.to_string(), &ranked));
        }
        shown = f.to_string();
    } else {
        let exact = clipped_volume_exact(&newton_facets(ideal)?, &t.value())?;
        let q = BigInt::from(p).pow(e);
        let tol = ratio_u(2 * n as u64 * ideal.max_degree(), 1) / BigRational::from_integer(q);
        if (&lattice - &exact).abs() > tol {
            witnesses.push(witness(
                format!("t = {t}, e = {e}"),
                format!("{exact} +- {tol}"),
                &lattice,
            ));
        }
    }
    let meta = ReportMeta { p, c: e, n, f: shown };
    Ok(PropertyReport::new("monomial-cross", meta, witnesses))
}

/// The table checks plus the endpoint identities at every scale up to `c`,
/// for the full table of `f` at scale `c`.
pub fn standard_suite(calc: &Calculator, f: &SparsePoly, c: u32) -> Result<Vec<PropertyReport>> {
    let tbl = calc.signature_table(f, c, PadicRational::new(f.p(), 1, 0))?;
    let hk = calc.hk_sequence(f, c)?.pop().ok_or_else(|| Error::OutOfRange("scale c must be positive".into()))?;
    let mut reports = vec![check_monotone(&tbl), check_convex(&tbl)?, check_sharp_slope(&tbl, &hk)];
    for e in 1..=c {
        reports.push(check_adjunction_slopes_with(calc, f, e)?);
    }
    Ok(reports)
}
