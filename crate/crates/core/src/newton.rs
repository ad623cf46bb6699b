//! Monomial ideals: the volume formula
//! `s(R, a^t) = vol(t * P_a ∩ [0,1]^n)` and exact lattice counts of
//! `len(R / (m^[q] : a^k))`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{rational_rank, RationalMatrix};
use crate::poly::{check_nvars, parse_poly, ExponentVec, TruncationParams};
use crate::rational::{integer, ExactRational};
use crate::sigcore::LengthResult;

/// Limit on minimal generators of `I^a` before lattice counting gives up.
pub const MAX_POWER_GENERATORS: usize = 10_000;

/// Largest dimension for facet computation.
pub const MAX_FACET_DIM: usize = 4;

/// Largest dimension for exact clipped volumes.
pub const MAX_VOLUME_DIM: usize = 3;

/// Monomial ideal given by its minimal generators, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<ExponentVec>,
}

/// Keeps the divisibility-minimal vectors, sorted and distinct.
fn minimalize(mut gens: Vec<ExponentVec>) -> Vec<ExponentVec> {
    gens.sort_by_key(|g| (g.degree(), g.clone()));
    gens.dedup();
    let mut kept: Vec<ExponentVec> = Vec::with_capacity(gens.len());
    for g in gens {
        // anything dividing g has degree <= deg g and is already in `kept`
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<ExponentVec>) -> Result<Self> {
        check_nvars(nvars)?;
        if generators.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != nvars) {
            return Err(Error::InvalidIdeal(format!(
                "generator of length {} in {nvars} variables",
                g.len()
            )));
        }
        Ok(Self {
            nvars,
            generators: minimalize(generators),
        })
    }

    /// Reads comma-separated monomials such as `"x^2, y^3"` or `"x*y"`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let field = PrimeField::new(2_147_483_647)?;
        let mut gens = Vec::new();
        for piece in text.split(',') {
            let f = parse_poly(piece, nvars, field)?;
            let mut terms = f.terms();
            match (terms.next(), terms.next()) {
                (Some((e, _)), None) => gens.push(e.clone()),
                _ => {
                    return Err(Error::InvalidIdeal(format!(
                        "`{}` is not a single monomial",
                        piece.trim()
                    )))
                }
            }
        }
        Self::new(nvars, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVec] {
        &self.generators
    }

    pub fn max_degree(&self) -> u64 {
        self.generators.iter().map(ExponentVec::degree).max().unwrap_or(0)
    }

    /// Minimal generators of `I^a`, built one factor at a time with
    /// pruning after every step.
    pub fn power(&self, a: u64) -> Result<Self> {
        let mut gens = vec![ExponentVec::zero(self.nvars)];
        for k in 1..=a {
            let mut next = Vec::with_capacity(gens.len() * self.generators.len());
            for g in &gens {
                for h in &self.generators {
                    next.push(g.checked_add(h).ok_or_else(|| {
                        Error::ExponentOverflow(format!("generator of I^{k}"))
                    })?);
                }
            }
            gens = minimalize(next);
            if gens.len() > MAX_POWER_GENERATORS {
                return Err(Error::GeneratorExplosion {
                    power: a,
                    count: gens.len(),
                    limit: MAX_POWER_GENERATORS,
                });
            }
        }
        Ok(Self {
            nvars: self.nvars,
            generators: gens,
        })
    }
}

/// `<coeffs, x> >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<ExactRational>,
    pub rhs: ExactRational,
}

impl Inequality {
    fn eval(&self, x: &[ExactRational]) -> ExactRational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    fn holds(&self, x: &[ExactRational], scale: &ExactRational) -> bool {
        self.eval(x) >= &self.rhs * scale
    }
}

/// Polyhedron `{x : <c_i, x> >= r_i}` with non-negative normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    nvars: usize,
    inequalities: Vec<Inequality>,
}

impl HPolytope {
    pub fn new(nvars: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        for ineq in &inequalities {
            if ineq.coeffs.len() != nvars {
                return Err(Error::Mismatch("inequality length".into()));
            }
            if ineq.coeffs.iter().any(Signed::is_negative) {
                return Err(Error::OutOfRange(
                    "Newton polyhedra have non-negative facet normals".into(),
                ));
            }
        }
        Ok(Self { nvars, inequalities })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }
}

/// Solves the homogeneous system `rows * v = 0`; returns the generator of
/// the kernel when it is one-dimensional.
fn kernel_line(mut rows: Vec<Vec<ExactRational>>, width: usize) -> Option<Vec<ExactRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let lead = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &lead;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() + 1 != width {
        return None;
    }
    let free = (0..width).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); width];
    v[free] = BigRational::one();
    for (i, &col) in pivots.iter().enumerate() {
        v[col] = -rows[i][free].clone();
    }
    Some(v)
}

/// Scales to a primitive integer vector.
fn primitive(v: &[ExactRational]) -> Vec<ExactRational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| BigRational::from_integer(if gcd.is_zero() { x } else { x / &gcd }))
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Facets of `conv(generators) + R_{>=0}^n`, excluding the coordinate
/// hyperplanes `x_i >= 0`.
///
/// A facet contains `k` affinely independent generators and is parallel to
/// `n - k` coordinate axes, so every candidate hyperplane through `k`
/// generators with `n - k` vanishing normal coordinates is tried and kept
/// when its normal is non-negative and all generators lie on its upper side.
pub fn newton_facets(ideal: &MonomialIdeal) -> Result<HPolytope> {
    let n = ideal.nvars;
    if n > MAX_FACET_DIM {
        return Err(Error::DimensionTooLarge {
            got: n,
            max: MAX_FACET_DIM,
        });
    }
    let points: Vec<Vec<ExactRational>> = ideal
        .generators
        .iter()
        .map(|g| g.as_slice().iter().map(|&e| integer(e as u64)).collect())
        .collect();
    let mut found: BTreeSet<Inequality> = BTreeSet::new();
    for k in 1..=n.min(points.len()) {
        for pts in subsets(points.len(), k) {
            for axes in subsets(n, n - k) {
                // unknowns (c_1..c_n, r)
                let mut rows = Vec::with_capacity(n);
                for &i in &pts {
                    let mut row = points[i].clone();
                    row.push(-BigRational::one());
                    rows.push(row);
                }
                for &j in &axes {
                    let mut row = vec![BigRational::zero(); n + 1];
                    row[j] = BigRational::one();
                    rows.push(row);
                }
                let Some(mut v) = kernel_line(rows, n + 1) else {
                    continue;
                };
                let normal = &v[..n];
                if normal.iter().all(Zero::is_zero) {
                    continue;
                }
                if normal.iter().any(Signed::is_negative) {
                    if normal.iter().any(Signed::is_positive) {
                        continue;
                    }
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                let v = primitive(&v);
                let ineq = Inequality {
                    coeffs: v[..n].to_vec(),
                    rhs: v[n].clone(),
                };
                if ineq.rhs.is_zero() {
                    continue;
                }
                if points.iter().all(|x| ineq.holds(x, &BigRational::one())) {
                    found.insert(ineq);
                }
            }
        }
    }
    HPolytope::new(n, found.into_iter().collect())
}

fn affine_dim(points: &[&Vec<ExactRational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let rows = points[1..]
        .iter()
        .map(|x| x.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rational_rank(&RationalMatrix::from_rows(rows).expect("rectangular"))
}

/// Solves the square system `rows * x = rhs`, if nonsingular.
fn solve_square(rows: &[&Vec<ExactRational>], rhs: &[ExactRational]) -> Option<Vec<ExactRational>> {
    let n = rows.len();
    let mut aug: Vec<Vec<ExactRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = (*r).clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let found = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, found);
        let lead = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = &*v / &lead;
        }
        let pivot = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

/// Determinant by fraction-exact elimination.
fn determinant(mut m: Vec<Vec<ExactRational>>) -> ExactRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(found) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if found != col {
            m.swap(col, found);
            det = -det;
        }
        det *= &m[col][col];
        let pivot = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let factor = &row[col] / &pivot[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
    }
    det
}

struct Vertex {
    point: Vec<ExactRational>,
    tight: BTreeSet<usize>,
}

/// Simplices covering the face spanned by `face` (vertex ids) of affine
/// dimension `dim`: cones from the face centroid over its own facets.
fn triangulate(face: &[usize], dim: usize, vertices: &[Vertex], n_ineq: usize) -> Vec<Vec<Vec<ExactRational>>> {
    if dim == 0 {
        return vec![vec![vertices[face[0]].point.clone()]];
    }
    if dim == 1 {
        return vec![vec![vertices[face[0]].point.clone(), vertices[face[1]].point.clone()]];
    }
    let n = vertices[face[0]].point.len();
    let count = integer(face.len() as u64);
    let centroid: Vec<ExactRational> = (0..n)
        .map(|i| face.iter().map(|&v| &vertices[v].point[i]).sum::<ExactRational>() / &count)
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for j in 0..n_ineq {
        let sub: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&v| vertices[v].tight.contains(&j))
            .collect();
        if sub.len() == face.len() || sub.len() < dim || seen.contains(&sub) {
            continue;
        }
        let pts: Vec<&Vec<ExactRational>> = sub.iter().map(|&v| &vertices[v].point).collect();
        if affine_dim(&pts) != dim - 1 {
            continue;
        }
        for mut simplex in triangulate(&sub, dim - 1, vertices, n_ineq) {
            simplex.push(centroid.clone());
            out.push(simplex);
        }
        seen.insert(sub);
    }
    out
}

fn cube_system(poly: &HPolytope, t: &ExactRational) -> Vec<Inequality> {
    let n = poly.nvars;
    let mut system: Vec<Inequality> = poly
        .inequalities
        .iter()
        .map(|ineq| Inequality {
            coeffs: ineq.coeffs.clone(),
            rhs: &ineq.rhs * t,
        })
        .collect();
    for i in 0..n {
        let mut lower = vec![BigRational::zero(); n];
        lower[i] = BigRational::one();
        let upper = lower.iter().map(|x| -x.clone()).collect();
        system.push(Inequality {
            coeffs: lower,
            rhs: BigRational::zero(),
        });
        system.push(Inequality {
            coeffs: upper,
            rhs: -BigRational::one(),
        });
    }
    system
}

/// Exact volume of `{x in [0,1]^n : <c_i, x> >= t r_i}`.
///
/// Vertices come from every `n`-subset of the facet and cube constraints;
/// the region is then triangulated by recursive coning from face centroids
/// and the simplex volumes `|det| / n!` are summed. Lower-dimensional
/// regions have volume 0.
pub fn clipped_volume_exact(poly: &HPolytope, t: &ExactRational) -> Result<ExactRational> {
    let n = poly.nvars;
    if n > MAX_VOLUME_DIM {
        return Err(Error::DimensionTooLarge {
            got: n,
            max: MAX_VOLUME_DIM,
        });
    }
    if t.is_negative() {
        return Err(Error::OutOfRange(format!("t = {t} < 0")));
    }
    let system = cube_system(poly, t);
    let one = BigRational::one();
    let mut by_point: BTreeMap<Vec<ExactRational>, ()> = BTreeMap::new();
    for subset in subsets(system.len(), n) {
        let rows: Vec<&Vec<ExactRational>> = subset.iter().map(|&i| &system[i].coeffs).collect();
        let rhs: Vec<ExactRational> = subset.iter().map(|&i| system[i].rhs.clone()).collect();
        if let Some(x) = solve_square(&rows, &rhs) {
            if system.iter().all(|ineq| ineq.holds(&x, &one)) {
                by_point.insert(x, ());
            }
        }
    }
    let vertices: Vec<Vertex> = by_point
        .into_keys()
        .map(|point| {
            let tight = system
                .iter()
                .enumerate()
                .filter(|(_, ineq)| ineq.eval(&point) == ineq.rhs)
                .map(|(i, _)| i)
                .collect();
            Vertex { point, tight }
        })
        .collect();
    if vertices.len() <= n {
        return Ok(BigRational::zero());
    }
    let all: Vec<&Vec<ExactRational>> = vertices.iter().map(|v| &v.point).collect();
    if affine_dim(&all) < n {
        return Ok(BigRational::zero());
    }
    let face: Vec<usize> = (0..vertices.len()).collect();
    let factorial: u64 = (1..=n as u64).product();
    let mut volume = BigRational::zero();
    for simplex in triangulate(&face, n, &vertices, system.len()) {
        let base = &simplex[0];
        let m = simplex[1..]
            .iter()
            .map(|x| x.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        volume += determinant(m).abs();
    }
    Ok(volume / integer(factorial))
}

/// `prod_i max(0, 1 - t u_i)`, the volume for a principal ideal.
pub fn principal_monomial_volume(u: &ExponentVec, t: &ExactRational) -> ExactRational {
    u.as_slice()
        .iter()
        .map(|&ui| {
            let side = BigRational::one() - t * integer(ui as u64);
            if side.is_negative() {
                BigRational::zero()
            } else {
                side
            }
        })
        .product()
}

/// Half-width `sqrt(ln(200) / (2 N))` of the 99% Hoeffding interval,
/// rounded up to a rational.
pub fn hoeffding_99_bound(samples: u64) -> ExactRational {
    let h = ((200f64).ln() / (2.0 * samples as f64)).sqrt();
    let scale = 1_000_000_000_000u64;
    let num = (h * scale as f64).ceil() as u64 + 1;
    BigRational::new(num.into(), scale.into())
}

/// Monte Carlo estimate of the clipped volume with its 99% Hoeffding
/// half-width. Points are `(2k + 1) / 2^33` for uniform 32-bit `k`, drawn
/// from ChaCha8 seeded with `seed`, and tested exactly in integers.
pub fn clipped_volume_mc(
    poly: &HPolytope,
    t: &ExactRational,
    samples: u64,
    seed: u64,
) -> Result<(ExactRational, ExactRational)> {
    if samples == 0 {
        return Err(Error::OutOfRange("at least one sample is required".into()));
    }
    if t.is_negative() {
        return Err(Error::OutOfRange(format!("t = {t} < 0")));
    }
    let bound = hoeffding_99_bound(samples);
    if t.is_zero() {
        return Ok((BigRational::one(), bound));
    }
    // <C, 2k+1> * den >= num * 2^33 with integer C; entries below 2^40 keep
    // both sides inside i128 for n <= 8.
    const LIMIT: i128 = 1 << 40;
    let overflow = || Error::OutOfRange("inequality too large for sampling".into());
    let mut checks: Vec<(Vec<i128>, i128, i128)> = Vec::new();
    for ineq in &poly.inequalities {
        let mut scaled: Vec<ExactRational> = ineq.coeffs.clone();
        scaled.push(&ineq.rhs * t);
        let lcm = scaled.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let l = BigRational::from_integer(lcm);
        let coeffs = ineq
            .coeffs
            .iter()
            .map(|c| (c * &l).to_integer().to_i128().filter(|v| v.abs() < LIMIT))
            .collect::<Option<Vec<i128>>>()
            .ok_or_else(overflow)?;
        let rhs = &ineq.rhs * t * &l;
        let num = rhs.numer().to_i128().filter(|v| v.abs() < LIMIT).ok_or_else(overflow)?;
        let den = rhs.denom().to_i128().filter(|v| v.abs() < LIMIT).ok_or_else(overflow)?;
        checks.push((coeffs, num << 33, den));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = poly.nvars;
    let mut point = vec![0i128; n];
    let mut hits: u64 = 0;
    for _ in 0..samples {
        for x in point.iter_mut() {
            *x = 2 * rng.gen::<u32>() as i128 + 1;
        }
        let inside = checks.iter().all(|(coeffs, rhs, den)| {
            let lhs: i128 = coeffs.iter().zip(&point).map(|(c, x)| c * x).sum();
            lhs * den >= *rhs
        });
        hits += inside as u64;
    }
    Ok((BigRational::new(hits.into(), samples.into()), bound))
}

/// Union size of origin-anchored boxes `[0, w]` (corners `w`, inclusive).
///
/// Inclusion–exclusion in the form
/// `|B_1 ∪ .. ∪ B_k| = sum_i (|B_i| - |(B_1 ∩ B_i) ∪ .. ∪ (B_{i-1} ∩ B_i)|)`;
/// intersections of anchored boxes are anchored boxes at the componentwise
/// minimum, contained corners are pruned, and sub-unions are memoized.
fn union_of_boxes(corners: Vec<Vec<u64>>, memo: &mut HashMap<Vec<Vec<u64>>, u128>) -> u128 {
    let corners = maximal_corners(corners);
    if corners.is_empty() {
        return 0;
    }
    if corners.len() == 1 {
        return corners[0].iter().map(|&w| w as u128 + 1).product();
    }
    if let Some(&v) = memo.get(&corners) {
        return v;
    }
    let mut total: u128 = 0;
    for i in 0..corners.len() {
        let size: u128 = corners[i].iter().map(|&w| w as u128 + 1).product();
        let overlaps: Vec<Vec<u64>> = corners[..i]
            .iter()
            .map(|c| c.iter().zip(&corners[i]).map(|(a, b)| *a.min(b)).collect())
            .collect();
        total += size - union_of_boxes(overlaps, memo);
    }
    memo.insert(corners, total);
    total
}

fn maximal_corners(mut corners: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    corners.sort_by(|a, b| b.iter().sum::<u64>().cmp(&a.iter().sum::<u64>()).then(a.cmp(b)));
    corners.dedup();
    let mut kept: Vec<Vec<u64>> = Vec::with_capacity(corners.len());
    for c in corners {
        if !kept.iter().any(|k| k.iter().zip(&c).all(|(a, b)| a >= b)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// `len(R / (m^[q] : I^a))`: the number of `v in [0, q)^n` with
/// `v + u < q` componentwise for some generator `u` of `I^a`.
pub fn monomial_colon_length(ideal: &MonomialIdeal, a: u64, tp: &TruncationParams) -> Result<LengthResult> {
    if ideal.nvars != tp.nvars() {
        return Err(Error::Mismatch("ideal and truncation disagree on n".into()));
    }
    let q = tp.q();
    let power = ideal.power(a)?;
    let corners: Vec<Vec<u64>> = power
        .generators
        .iter()
        .filter(|u| u.below(q))
        .map(|u| u.as_slice().iter().map(|&e| q - 1 - e as u64).collect())
        .collect();
    let length = union_of_boxes(corners, &mut HashMap::new());
    Ok(LengthResult {
        length: u64::try_from(length).map_err(|_| Error::OutOfRange("length exceeds u64".into()))?,
        q,
        n: tp.nvars(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ideal(text: &str, n: usize) -> MonomialIdeal {
        MonomialIdeal::parse(text, n).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVec {
        ExponentVec::new(v.to_vec())
    }

    fn tp(p: u64, c: u32, n: usize) -> TruncationParams {
        TruncationParams::new(PrimeField::new(p).unwrap(), c, n).unwrap()
    }

    fn ineq(coeffs: &[i64], rhs: i64) -> Inequality {
        Inequality {
            coeffs: coeffs.iter().map(|&c| ratio(c, 1)).collect(),
            rhs: ratio(rhs, 1),
        }
    }

    /// Brute-force count of lattice points for the colon length.
    fn brute_colon(ideal: &MonomialIdeal, a: u64, q: u64) -> u64 {
        let gens = ideal.power(a).unwrap().generators;
        let n = ideal.nvars;
        let mut count = 0;
        let total = q.pow(n as u32);
        for idx in 0..total {
            let mut v = vec![0u64; n];
            let mut rest = idx;
            for slot in v.iter_mut().rev() {
                *slot = rest % q;
                rest /= q;
            }
            if gens
                .iter()
                .any(|u| u.as_slice().iter().zip(&v).all(|(&e, &x)| e as u64 + x < q))
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ideal_construction_reduces() {
        let i = MonomialIdeal::new(2, vec![ev(&[2, 0]), ev(&[3, 1]), ev(&[0, 3]), ev(&[2, 0])]).unwrap();
        assert_eq!(i.generators(), &[ev(&[0, 3]), ev(&[2, 0])]);
        assert!(MonomialIdeal::new(2, vec![]).is_err());
        assert!(MonomialIdeal::new(2, vec![ev(&[1])]).is_err());
        assert!(MonomialIdeal::parse("x+y", 2).is_err());
        assert_eq!(ideal("x^2, y^3, x^2*y", 2), ideal("y^3,x^2", 2));
    }

    #[test]
    fn powers() {
        let i = ideal("x, y", 2);
        assert_eq!(i.power(3).unwrap().generators().len(), 4);
        assert_eq!(i.power(0).unwrap().generators(), &[ev(&[0, 0])]);
        let big = ideal("x, y, z", 3);
        assert!(matches!(big.power(200), Err(Error::GeneratorExplosion { .. })));
    }

    #[test]
    fn facet_examples() {
        assert_eq!(newton_facets(&ideal("x, y", 2)).unwrap().inequalities(), &[ineq(&[1, 1], 1)]);
        assert_eq!(newton_facets(&ideal("x^2, y^3", 2)).unwrap().inequalities(), &[ineq(&[3, 2], 6)]);
        let mut principal = newton_facets(&ideal("x^2*z", 3)).unwrap().inequalities().to_vec();
        principal.sort();
        assert_eq!(principal, vec![ineq(&[0, 0, 1], 1), ineq(&[1, 0, 0], 2)]);
        assert!(newton_facets(&MonomialIdeal::new(5, vec![ev(&[1, 0, 0, 0, 0])]).unwrap()).is_err());
    }

    #[test]
    fn facets_drop_interior_generators() {
        // x^2*y^2 lies on the segment from x^4 to y^4
        let f = newton_facets(&ideal("x^4, y^4, x^2*y^2", 2)).unwrap();
        assert_eq!(f.inequalities(), &[ineq(&[1, 1], 4)]);
        let f = newton_facets(&ideal("x^4, y^4, x*y", 2)).unwrap();
        assert_eq!(f.inequalities(), &[ineq(&[1, 3], 4), ineq(&[3, 1], 4)]);
    }

    #[test]
    fn facets_in_three_and_four_variables() {
        let f = newton_facets(&ideal("x, y, z", 3)).unwrap();
        assert_eq!(f.inequalities(), &[ineq(&[1, 1, 1], 1)]);
        let f = newton_facets(&ideal("x, y, z, w", 4)).unwrap();
        assert_eq!(f.inequalities(), &[ineq(&[1, 1, 1, 1], 1)]);
    }

    #[test]
    fn volume_examples() {
        let p = newton_facets(&ideal("x, y", 2)).unwrap();
        assert_eq!(clipped_volume_exact(&p, &ratio(1, 1)).unwrap(), ratio(1, 2));
        assert_eq!(clipped_volume_exact(&p, &ratio(0, 1)).unwrap(), ratio(1, 1));
        assert_eq!(clipped_volume_exact(&p, &ratio(3, 1)).unwrap(), ratio(0, 1));
        // the corner (1,1) itself: degenerate
        assert_eq!(clipped_volume_exact(&p, &ratio(2, 1)).unwrap(), ratio(0, 1));
        let p = newton_facets(&ideal("x^2, y^3", 2)).unwrap();
        assert_eq!(clipped_volume_exact(&p, &ratio(1, 2)).unwrap(), ratio(1, 3));
        assert!(clipped_volume_exact(&p, &ratio(-1, 2)).is_err());
    }

    #[test]
    fn volume_three_dimensional() {
        let p = newton_facets(&ideal("x, y, z", 3)).unwrap();
        // cube minus the corner simplex of side 1/2
        assert_eq!(clipped_volume_exact(&p, &ratio(1, 2)).unwrap(), ratio(47, 48));
        assert_eq!(clipped_volume_exact(&p, &ratio(1, 1)).unwrap(), ratio(5, 6));
        // x + y + z >= 2: the corner simplex at (1,1,1)
        assert_eq!(clipped_volume_exact(&p, &ratio(2, 1)).unwrap(), ratio(1, 6));
    }

    #[test]
    fn principal_examples() {
        assert_eq!(principal_monomial_volume(&ev(&[1, 1]), &ratio(1, 2)), ratio(1, 4));
        assert_eq!(principal_monomial_volume(&ev(&[1, 0, 0]), &ratio(2, 7)), ratio(5, 7));
        assert_eq!(principal_monomial_volume(&ev(&[3, 2]), &ratio(0, 1)), ratio(1, 1));
        assert_eq!(principal_monomial_volume(&ev(&[3, 2]), &ratio(1, 2)), ratio(0, 1));
    }

    #[test]
    fn principal_case_consistency() {
        for u in [[1u32, 1, 0], [2, 1, 0], [1, 2, 3], [0, 0, 4]] {
            let e = ev(&u);
            let p = newton_facets(&MonomialIdeal::new(3, vec![e.clone()]).unwrap()).unwrap();
            for k in 0..=12 {
                let t = ratio(k, 8);
                assert_eq!(
                    clipped_volume_exact(&p, &t).unwrap(),
                    principal_monomial_volume(&e, &t),
                    "u = {u:?}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn volume_is_monotone() {
        let p = newton_facets(&ideal("x^2, x*y^2, y^5", 2)).unwrap();
        let mut prev = ratio(1, 1);
        for k in 0..=30 {
            let v = clipped_volume_exact(&p, &ratio(k, 10)).unwrap();
            assert!(v <= prev, "t = {k}/10");
            prev = v;
        }
        assert_eq!(prev, ratio(0, 1));
    }

    #[test]
    fn colon_length_examples() {
        assert_eq!(monomial_colon_length(&ideal("x", 2), 2, &tp(5, 1, 2)).unwrap().length, 15);
        assert_eq!(monomial_colon_length(&ideal("x, y", 2), 1, &tp(2, 1, 2)).unwrap().length, 3);
        assert_eq!(monomial_colon_length(&ideal("x^2, y^3", 2), 0, &tp(3, 2, 2)).unwrap().length, 81);
    }

    #[test]
    fn colon_length_matches_brute_force() {
        let cases = [
            ("x^2, y^3", 2, 3u64, 2u32),
            ("x*y, x^3, y^2", 2, 2, 3),
            ("x^2, y^2, z^2, x*y*z", 3, 2, 2),
            ("x*y, y*z, x*z", 3, 3, 1),
            ("x, y^2, z^3", 3, 2, 2),
        ];
        for (gens, n, p, c) in cases {
            let i = ideal(gens, n);
            let t = tp(p, c, n);
            for a in 0..=6 {
                assert_eq!(
                    monomial_colon_length(&i, a, &t).unwrap().length,
                    brute_colon(&i, a, t.q()),
                    "{gens} a = {a}"
                );
            }
        }
    }

    #[test]
    fn lattice_counts_approach_volume() {
        let i = ideal("x^2, x*y, y^3", 2);
        let poly = newton_facets(&i).unwrap();
        let exact = clipped_volume_exact(&poly, &ratio(1, 2)).unwrap();
        for e in 2..=7u32 {
            let t = tp(2, e, 2);
            let q = t.q();
            let len = monomial_colon_length(&i, q / 2, &t).unwrap();
            let tol = ratio(2 * 2 * i.max_degree() as i64, q as i64);
            assert!((len.normalized() - &exact).abs() <= tol, "e = {e}");
        }
    }

    #[test]
    fn monte_carlo_examples() {
        let p = newton_facets(&ideal("x, y", 2)).unwrap();
        let (est, _) = clipped_volume_mc(&p, &ratio(0, 1), 10, 1).unwrap();
        assert_eq!(est, ratio(1, 1));
        let (est, _) = clipped_volume_mc(&p, &ratio(3, 1), 1000, 1).unwrap();
        assert_eq!(est, ratio(0, 1));
        let (est, bound) = clipped_volume_mc(&p, &ratio(1, 1), 1_000_000, 42).unwrap();
        assert!((est - ratio(1, 2)).abs() <= ratio(1, 100));
        assert!(bound > ratio(16276, 10_000_000) && bound < ratio(16277, 10_000_000));
        // deterministic for a fixed seed
        assert_eq!(
            clipped_volume_mc(&p, &ratio(1, 2), 5000, 9).unwrap(),
            clipped_volume_mc(&p, &ratio(1, 2), 5000, 9).unwrap()
        );
        assert!(clipped_volume_mc(&p, &ratio(1, 2), 0, 9).is_err());
    }
}
