//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that every criterion reports even when an earlier one fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use fsig::field::PrimeField;
use fsig::fractal::monsky_closed_form;
use fsig::newton::{
    clipped_volume_exact, clipped_volume_mc, monomial_colon_length, newton_facets, MonomialIdeal,
};
use fsig::poly::{parse_poly, ExponentVec, SparsePoly, TruncationParams};
use fsig::rational::{integer, ratio_u, ExactRational, PadicRational};
use fsig::sigcore::{Calculator, RankMethod, SignatureTable};
use fsig::verify::{check_adjunction_slopes, check_convex, check_monotone};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn poly(text: &str, p: u64, n: usize) -> SparsePoly {
    parse_poly(text, n, PrimeField::new(p).unwrap()).unwrap()
}

fn full_table(f: &SparsePoly, c: u32) -> SignatureTable {
    Calculator::default()
        .signature_table(f, c, PadicRational::new(f.p(), 1, 0))
        .unwrap()
}

fn cusp_p5_c3() -> &'static SignatureTable {
    static TABLE: OnceLock<SignatureTable> = OnceLock::new();
    TABLE.get_or_init(|| full_table(&poly("x^3+y^2", 5, 2), 3))
}

fn smooth_divisor_exactness() {
    for (p, c) in [(2, 4), (3, 3), (5, 3), (7, 2)] {
        let tbl = full_table(&poly("x", p, 2), c);
        let q = p.pow(c);
        assert_eq!(tbl.len() as u64, q + 1);
        for (a, (_, s)) in tbl.samples().iter().enumerate() {
            assert_eq!(*s, integer(1) - ratio_u(a as u64, q), "p = {p}, c = {c}, a = {a}");
        }
    }
}

fn snc_cross_check() {
    let f = poly("x*y", 5, 2);
    let ideal = MonomialIdeal::parse("x*y", 2).unwrap();
    let tp = TruncationParams::new(PrimeField::new(5).unwrap(), 2, 2).unwrap();
    let calc = Calculator::default();
    for a in 0..=25u64 {
        let side = integer(1) - ratio_u(a, 25);
        let expected = &side * &side;
        let ranked = calc.signature_at(&f, PadicRational::new(5, a, 2)).unwrap();
        let lattice = monomial_colon_length(&ideal, a, &tp).unwrap().normalized();
        assert_eq!(ranked, expected, "rank path, a = {a}");
        assert_eq!(lattice, expected, "lattice path, a = {a}");
    }
}

fn cusp_table_p5_c3() {
    let tbl = cusp_p5_c3();
    assert_eq!(tbl.len(), 126);
    assert!(check_monotone(tbl).pass);
    assert!(check_convex(tbl).unwrap().pass);
    let fine = &tbl.samples()[75].1;
    let coarse = Calculator::default()
        .signature_at_scale(tbl.f(), 3, 1)
        .unwrap();
    assert_eq!(coarse, ratio_u(2, 25));
    assert_eq!(*fine, coarse);
}

fn fpt_positions() {
    let calc = Calculator::default();
    for (p, c, live, dead) in [(5u64, 1u32, 3u64, 4u64), (7, 2, 40, 41), (11, 2, 98, 99)] {
        let f = poly("x^3+y^2", p, 2);
        let before = calc.signature_at_scale(&f, live, c).unwrap();
        let after = calc.signature_at_scale(&f, dead, c).unwrap();
        assert!(before.is_positive(), "p = {p}: s({live}/{p}^{c}) = {before}");
        assert!(after.is_zero(), "p = {p}: s({dead}/{p}^{c}) = {after}");
    }
}

fn monsky_closed_form_agreement() {
    let f = poly("y^3-x^4+x^2*y^2", 3, 2);
    let calc = Calculator::default();
    (0..=81u64).into_par_iter().for_each(|a| {
        let t = PadicRational::new(3, a, 4);
        let ranked = calc.signature_at(&f, t).unwrap();
        assert_eq!(ranked, monsky_closed_form(&t.value()).unwrap(), "a = {a}");
    });
}

fn adjunction_identities() {
    for text in ["x", "x*y", "x^3+y^2"] {
        for p in [2, 3, 5] {
            let f = poly(text, p, 2);
            for e in 1..=3 {
                let report = check_adjunction_slopes(&f, e).unwrap();
                assert!(report.pass, "{report:?}");
            }
        }
    }
}

fn random_instance(rng: &mut ChaCha8Rng) -> (SparsePoly, u64, TruncationParams) {
    let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
    let field = PrimeField::new(p).unwrap();
    let n = rng.gen_range(1..=3usize);
    let mut c = 1;
    while (p.pow(c + 1)).pow(n as u32) <= 4096 && rng.gen_bool(0.6) {
        c += 1;
    }
    let tp = TruncationParams::new(field, c, n).unwrap();
    let q = tp.q();
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q.min(6) as u32)).collect();
            if e.iter().all(|&x| x == 0) {
                e[rng.gen_range(0..n)] = 1;
            }
            (ExponentVec::new(e), rng.gen_range(1..p))
        })
        .collect::<Vec<_>>();
    let f = SparsePoly::from_terms(field, n, terms).unwrap();
    let a = rng.gen_range(0..=q);
    (f, a, tp)
}

fn length_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sparse = Calculator::default();
    let dense = Calculator::default().with_method(RankMethod::Dense);
    let mut checked = 0;
    while checked < 200 {
        let (f, a, tp) = random_instance(&mut rng);
        if f.is_zero() {
            continue;
        }
        let colon = sparse.colon_length(&f, a, &tp).unwrap().length;
        let quotient = sparse.quotient_length(&f, a, &tp).unwrap().length;
        let full = tp.basis_size() as u64;
        assert_eq!(colon + quotient, full, "{f} a = {a} q = {}", tp.q());
        assert_eq!(colon, dense.colon_length(&f, a, &tp).unwrap().length, "{f} a = {a}");
        assert_eq!(quotient, dense.quotient_length(&f, a, &tp).unwrap().length, "{f} a = {a}");
        checked += 1;
    }
}

fn monomial_volume() {
    let ideal = MonomialIdeal::parse("x^2, y^3", 2).unwrap();
    let poly = newton_facets(&ideal).unwrap();
    let half = ratio_u(1, 2);
    let exact = clipped_volume_exact(&poly, &half).unwrap();
    assert_eq!(exact, ratio_u(1, 3));
    let max = newton_facets(&MonomialIdeal::parse("x, y", 2).unwrap()).unwrap();
    assert_eq!(clipped_volume_exact(&max, &integer(1)).unwrap(), ratio_u(1, 2));

    let inside = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let (est, bound): (ExactRational, ExactRational) =
                clipped_volume_mc(&poly, &half, 1_000_000, seed).unwrap();
            (est - &exact).abs() <= bound
        })
        .count();
    assert!(inside >= 99, "only {inside} of 100 seeds within the bound");
}

fn convexity_sweep() {
    for p in [2, 3, 5] {
        let tbl = if p == 5 {
            cusp_p5_c3().clone()
        } else {
            full_table(&poly("x^3+y^2", p, 2), 3)
        };
        let monotone = check_monotone(&tbl);
        let convex = check_convex(&tbl).unwrap();
        assert!(monotone.witnesses.is_empty(), "p = {p}: {monotone:?}");
        assert!(convex.witnesses.is_empty(), "p = {p}: {convex:?}");
    }
}

fn determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("lengths.ndjson");
    let run = |jobs: &str, cache: Option<&std::path::Path>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fsig"));
        cmd.args(["signature", "--p", "5", "--n", "2", "--f", "x^3+y^2", "--c", "3", "--jobs", jobs]);
        cmd.env_remove("FSIG_CACHE");
        if let Some(path) = cache {
            cmd.arg("--cache").arg(path);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let cold = run("1", Some(&cache));
    let records = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert_eq!(records, 126);
    let warm = run("4", Some(&cache));
    let warm_again = run("4", Some(&cache));
    let uncached = run("4", None);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), records);
    assert_eq!(cold, warm);
    assert_eq!(warm, warm_again);
    assert_eq!(cold, uncached);
    assert_eq!(String::from_utf8(cold).unwrap().lines().count(), 127);
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("1 smooth-divisor exactness", smooth_divisor_exactness),
        ("2 SNC cross-check x*y, p=5, c=2", snc_cross_check),
        ("3 cusp p=5 c=3 full table", cusp_table_p5_c3),
        ("4 F-pure threshold positions", fpt_positions),
        ("5 Monsky closed form, c=4", monsky_closed_form_agreement),
        ("6 adjunction identities", adjunction_identities),
        ("7 length identity and sparse/dense agreement", length_identity),
        ("8 monomial volume and Monte Carlo bound", monomial_volume),
        ("9 convexity/monotonicity sweep", convexity_sweep),
        ("10 determinism across jobs and warm cache", determinism),
    ];
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(check)).is_ok();
        failed += !ok as usize;
        println!(
            "criterion {name}: {} ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    panic::set_hook(default_hook);
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
