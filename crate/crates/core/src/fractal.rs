//! Self-similar signature functions.
//!
//! For `f = y^3 - x^4 + x^2 y^2` over F_3 the signature has the closed form
//! `(9 - 36t + 36t^2 - D(t)^2) / 8` on `[0, 1]`, where `D` is fixed by
//! `D(t) = 6t - 3` on `[2/3, 1]`, `D(t/3) = D(1 - t)/3` and
//! `D((t+1)/3) = D(t)/3`. [`fractal_dim_probe`] measures, for any `f`, the
//! rank of the span of rescaled translates of `phi = 1 - s`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rational_rank, RationalMatrix};
use crate::poly::SparsePoly;
use crate::rational::{integer, ratio, ExactRational, PadicRational};
use crate::sigcore::{Calculator, SignatureTable};

/// `a / 3^c` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriadicRational {
    a: u64,
    c: u32,
}

impl TriadicRational {
    pub fn new(a: u64, c: u32) -> Result<Self> {
        let den = 3u64
            .checked_pow(c)
            .ok_or_else(|| Error::OutOfRange(format!("3^{c}")))?;
        if a > den {
            return Err(Error::OutOfRange(format!("{a}/3^{c} > 1")));
        }
        Ok(Self { a, c })
    }

    pub fn value(&self) -> ExactRational {
        BigRational::new(self.a.into(), BigInt::from(3u64.pow(self.c)))
    }
}

impl From<TriadicRational> for PadicRational {
    fn from(t: TriadicRational) -> Self {
        PadicRational::new(3, t.a, t.c)
    }
}

fn check_unit_interval(t: &ExactRational) -> Result<()> {
    if *t < BigRational::zero() || *t > BigRational::one() {
        return Err(Error::OutOfRange(format!("t = {t} outside [0, 1]")));
    }
    Ok(())
}

/// Evaluates `D(t)` for any rational `t` in `[0, 1]`.
///
/// Unfolds `D(t) = D(1 - 3t)/3` on `[0, 1/3]` and `D(t) = D(3t - 1)/3` on
/// `(1/3, 2/3)` until the argument lands in `[2/3, 1]`. Triadic arguments
/// lose a factor of 3 in the denominator at every step. Otherwise the
/// orbit is finite and eventually periodic; reaching a point already seen
/// gives `D(u) = D(u) / 3^k` there, so the chain evaluates to 0 (the case
/// `t = 1/2` is the one-step cycle).
pub fn delta_eval(t: &ExactRational) -> Result<ExactRational> {
    check_unit_interval(t)?;
    let third = ratio(1, 3);
    let two_thirds = ratio(2, 3);
    let three = integer(3);
    let mut seen = HashSet::new();
    let mut u = t.clone();
    let mut depth: u32 = 0;
    loop {
        if u >= two_thirds {
            let base = integer(6) * &u - &three;
            return Ok(base / BigRational::from_integer(BigInt::from(3).pow(depth)));
        }
        if !seen.insert(u.clone()) {
            return Ok(BigRational::zero());
        }
        u = if u <= third {
            BigRational::one() - &three * &u
        } else {
            &three * &u - BigRational::one()
        };
        depth += 1;
    }
}

/// `(9 - 36t + 36t^2 - D(t)^2) / 8`.
pub fn monsky_closed_form(t: &ExactRational) -> Result<ExactRational> {
    let d = delta_eval(t)?;
    Ok((integer(9) - integer(36) * t + integer(36) * t * t - &d * &d) / integer(8))
}

pub fn delta_eval_triadic(t: TriadicRational) -> Result<ExactRational> {
    delta_eval(&t.value())
}

pub fn monsky_closed_form_triadic(t: TriadicRational) -> Result<ExactRational> {
    monsky_closed_form(&t.value())
}

/// Closed-form values at `a / 3^c` for `a = 0..=3^c`.
pub fn monsky_table(c: u32) -> Result<Vec<(TriadicRational, ExactRational)>> {
    let den = 3u64
        .checked_pow(c)
        .ok_or_else(|| Error::OutOfRange(format!("3^{c}")))?;
    (0..=den)
        .map(|a| {
            let t = TriadicRational::new(a, c)?;
            Ok((t, monsky_closed_form_triadic(t)?))
        })
        .collect()
}

/// Empirical lower bound for the p-fractal dimension of `phi_f = 1 - s`.
///
/// Every window `psi_{e,b}(t) = phi((t + b) / p^e)` with `e <= e_w` and
/// `0 <= b < p^e` is sampled at `t = a / p^{e_s}`, `a = 0..=p^{e_s}`, which
/// needs `phi` at scale `e_s + e_w`. The windows are the rows of a rational
/// matrix whose rank is returned. Since the columns depend on `e_s` only,
/// the rank cannot decrease as `e_w` grows.
pub fn fractal_dim_probe(f: &SparsePoly, n: usize, p: u32, e_w: u32, e_s: u32) -> Result<usize> {
    fractal_dim_probe_with(&Calculator::default(), f, n, p, e_w, e_s)
}

pub fn fractal_dim_probe_with(
    calc: &Calculator,
    f: &SparsePoly,
    n: usize,
    p: u32,
    e_w: u32,
    e_s: u32,
) -> Result<usize> {
    if f.nvars() != n || f.p() != p {
        return Err(Error::Mismatch(format!(
            "f over F_{} in {} variables, probe asked for p = {p}, n = {n}",
            f.p(),
            f.nvars()
        )));
    }
    if e_w > e_s {
        return Err(Error::OutOfRange(format!("window scale {e_w} > sample scale {e_s}")));
    }
    let scale = e_s + e_w;
    let table = calc.signature_table(f, scale, PadicRational::new(p, 1, 0))?;
    let phi = phi_values(&table);
    Ok(rational_rank(&window_matrix(&phi, p as u64, e_w, e_s)?))
}

fn phi_values(table: &SignatureTable) -> Vec<ExactRational> {
    table
        .samples()
        .iter()
        .map(|(_, s)| BigRational::one() - s)
        .collect()
}

/// Rows `psi_{e,b}` built from `phi` sampled at scale `e_s + e_w`.
fn window_matrix(phi: &[ExactRational], p: u64, e_w: u32, e_s: u32) -> Result<RationalMatrix> {
    let cols = p.pow(e_s);
    let mut rows = Vec::new();
    for e in 0..=e_w {
        let stretch = p.pow(e_w - e);
        for b in 0..p.pow(e) {
            rows.push(
                (0..=cols)
                    .map(|a| phi[((a + b * cols) * stretch) as usize].clone())
                    .collect(),
            );
        }
    }
    RationalMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::parse_poly;

    fn tri(a: u64, c: u32) -> ExactRational {
        TriadicRational::new(a, c).unwrap().value()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_eval(&integer(1)).unwrap(), integer(3));
        assert_eq!(delta_eval(&ratio(1, 2)).unwrap(), integer(0));
        assert_eq!(delta_eval(&ratio(1, 3)).unwrap(), ratio(1, 3));
        assert_eq!(delta_eval(&integer(0)).unwrap(), integer(1));
        assert!(delta_eval(&ratio(4, 3)).is_err());
        assert!(delta_eval(&ratio(-1, 3)).is_err());
    }

    #[test]
    fn delta_boundaries_agree() {
        // 6t - 3 at 2/3 versus D((t+1)/3) = D(t)/3 with t = 1.
        assert_eq!(delta_eval(&ratio(2, 3)).unwrap(), integer(1));
        assert_eq!(delta_eval(&integer(1)).unwrap() / integer(3), integer(1));
        // D(1/3) via either relation: D(0)/3 both ways.
        assert_eq!(
            delta_eval(&ratio(1, 3)).unwrap(),
            delta_eval(&integer(0)).unwrap() / integer(3)
        );
    }

    #[test]
    fn delta_satisfies_its_relations() {
        for c in 0..=5 {
            for a in 0..=3u64.pow(c) {
                let t = tri(a, c);
                let d = |u: &ExactRational| delta_eval(u).unwrap();
                assert_eq!(d(&(&t / integer(3))), d(&(integer(1) - &t)) / integer(3));
                assert_eq!(d(&((&t + integer(1)) / integer(3))), d(&t) / integer(3));
                // same point, finer scale
                assert_eq!(d(&t), d(&tri(3 * a, c + 1)));
            }
        }
    }

    #[test]
    fn delta_on_periodic_points() {
        // 1/4 -> 1/4 under u -> 1 - 3u; fixed point of the first branch.
        assert_eq!(delta_eval(&ratio(1, 4)).unwrap(), integer(0));
        // 5/6 lies in [2/3, 1] directly.
        assert_eq!(delta_eval(&ratio(5, 6)).unwrap(), integer(2));
        // 5/18 -> 1/6 -> 1/2: three levels down to the fixed point.
        assert_eq!(delta_eval(&ratio(5, 18)).unwrap(), integer(0));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(monsky_closed_form(&integer(0)).unwrap(), integer(1));
        assert_eq!(monsky_closed_form(&integer(1)).unwrap(), integer(0));
        assert_eq!(monsky_closed_form(&ratio(1, 3)).unwrap(), ratio(1, 9));
    }

    #[test]
    fn closed_form_in_unit_interval() {
        for (t, s) in monsky_table(6).unwrap() {
            assert!(s >= integer(0) && s <= integer(1), "{t:?}: {s}");
        }
    }

    #[test]
    fn closed_form_matches_rank_computation() {
        let f = parse_poly("y^3-x^4+x^2*y^2", 2, PrimeField::new(3).unwrap()).unwrap();
        let table = Calculator::default()
            .signature_table(&f, 3, PadicRational::new(3, 1, 0))
            .unwrap();
        for ((t, s), (u, closed)) in table.samples().iter().zip(monsky_table(3).unwrap()) {
            assert_eq!(*t, PadicRational::from(u));
            assert_eq!(*s, closed, "t = {t}");
        }
    }

    #[test]
    fn triadic_validation() {
        assert!(TriadicRational::new(10, 2).is_err());
        assert!(TriadicRational::new(9, 2).is_ok());
        assert_eq!(PadicRational::from(TriadicRational::new(3, 2).unwrap()), PadicRational::new(3, 1, 1));
    }

    #[test]
    fn probe_of_smooth_divisor_is_two() {
        let f = parse_poly("x", 2, PrimeField::new(3).unwrap()).unwrap();
        assert_eq!(fractal_dim_probe(&f, 2, 3, 0, 2).unwrap(), 1);
        for e_w in 1..=2 {
            assert_eq!(fractal_dim_probe(&f, 2, 3, e_w, 2).unwrap(), 2);
        }
    }

    #[test]
    fn probe_rejects_bad_scales() {
        let f = parse_poly("x", 2, PrimeField::new(3).unwrap()).unwrap();
        assert!(fractal_dim_probe(&f, 2, 3, 3, 2).is_err());
        assert!(fractal_dim_probe(&f, 2, 5, 1, 2).is_err());
    }

    #[test]
    fn vanishing_windows_have_rank_at_most_one() {
        // Windows of phi on [fpt, 1] are constant 1; all lie on one line.
        let f = parse_poly("x^3+y^2", 2, PrimeField::new(5).unwrap()).unwrap();
        let calc = Calculator::default();
        let table = calc.signature_table(&f, 2, PadicRational::new(5, 1, 0)).unwrap();
        let phi = phi_values(&table);
        // the tail t >= 4/5 at scale 2 is a = 20..=25
        let tail: Vec<Vec<ExactRational>> = (0..3).map(|_| phi[20..=25].to_vec()).collect();
        assert!(tail.iter().flatten().all(|v| *v == integer(1)));
        assert_eq!(rational_rank(&RationalMatrix::from_rows(tail).unwrap()), 1);
    }
}
