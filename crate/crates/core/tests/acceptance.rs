//! One PASS/FAIL line per acceptance criterion. Every comparison is exact; the only
//! tolerances are the wall-clock limits on criteria 1 and 5.
//!
//! Two sub-criteria fail against the printed values (3b and 6b); the test asserts that
//! they are the only failures, so a change in either direction is noticed.

use std::time::{Duration, Instant};

use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqpencil::catalog::fixture_parse;
use eqpencil::combinatorics::{
    family_sizes, gl_dim, gl_one_box, hook_rank_printed, hyperplane_bound_criterion, weyl_dim, weyl_dim_partition,
    FamilyId, GroupSpec, Partition, Weight,
};
use eqpencil::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use eqpencil::matrix::Matrix;
use eqpencil::part;
use eqpencil::pencil::{
    build_adjoint_pencil, build_gl_pencil, build_koszul_pencil, build_so_pencil, build_so_pencil_over,
    build_sp_pencil, build_spin_pencil, so_kernel_vector_coords, theta_map, Pencil,
};
use eqpencil::rank::points::{coordinate_points, isotropic_point, pure_spinor_point, quadratic_form, random_point};
use eqpencil::rank::{
    border_rank_bound, constant_rank_verdict, koszul_flattening_rank, rank_at, rnd, theta_rank_formula, Mode,
    RndVerdict, Verdict,
};
use eqpencil::reps::spin::{spin_kernel_vector, spinor_a};
use eqpencil::reps::spin_space;

const BUDGET: u128 = 1_000_000;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

/// Collects failures of individual comparisons inside one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl Into<String>, expected: T, measured: T) {
        if expected != measured {
            self.failures.push(format!("{}: expected {expected:?}, measured {measured:?}", what.into()));
        }
    }

    fn ok(&mut self, what: impl Into<String>, cond: bool) {
        if !cond {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: &'static str) -> Outcome {
        let pass = self.failures.is_empty();
        let mut parts = self.notes;
        parts.extend(self.failures);
        Outcome { id, pass, detail: parts.join("; ") }
    }
}

fn f() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn ranks(p: &Pencil, f: &PrimeField, pts: &[Vec<u64>]) -> Vec<usize> {
    pts.iter().map(|x| rank_at(p, f, x).unwrap()).collect()
}

fn random_points(f: &PrimeField, n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    (0..count).map(|_| random_point(f, n, rng)).collect()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn u(x: BigInt) -> u64 {
    x.try_into().unwrap()
}

fn c1_gl_two_family() -> Outcome {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 2..=5usize {
        let nn = n as u64;
        let expected = ((nn + 2) * (nn + 1) / 2, nn * (nn + 1) * (nn + 2) / 3, (nn * nn + 3 * nn) / 2);
        let p = build_gl_pencil(&part![2], &part![2, 1], n + 1).unwrap();
        t.eq(format!("n={n} closed form"), expected, family_sizes(FamilyId::Gl2To21, n).unwrap().triple());
        t.eq(format!("n={n} (source, target)"), (expected.0, expected.1), (p.source_dim as u64, p.target_dim as u64));
        let r = constant_rank_verdict(&p, Mode::Transitivity { prime: DEFAULT_PRIME }).unwrap();
        t.eq(format!("n={n} transitivity"), (Verdict::Constant, expected.2 as usize), (r.verdict, r.generic_rank));
        if n <= 3 {
            let r = constant_rank_verdict(&p, Mode::Exhaustive { prime: 3, budget: BUDGET }).unwrap();
            t.eq(format!("n={n} exhaustive F_3"), (Verdict::Constant, expected.2 as usize), (r.verdict, r.generic_rank));
        }
    }
    let el = start.elapsed();
    t.ok(format!("runtime {el:?} exceeds 10 s"), el < Duration::from_secs(10));
    t.note(format!("{:.2}s", el.as_secs_f64()));
    t.finish("1")
}

fn c2_gl_two_two() -> Outcome {
    let mut t = Tally::default();
    let p = build_gl_pencil(&part![2, 2], &part![2, 2, 1], 4).unwrap();
    t.eq("size", (20, 20), (p.target_dim, p.source_dim));
    let r = constant_rank_verdict(&p, Mode::Transitivity { prime: DEFAULT_PRIME }).unwrap();
    t.eq("transitivity", (Verdict::Constant, 14), (r.verdict, r.generic_rank));
    let pred = gl_one_box(&part![2, 2], &part![2, 2, 1], 4).unwrap();
    t.eq("prediction", (6, 14, 6), (pred.kernel_dim, pred.image_dim, pred.cokernel_dim));
    let f = f();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for x in random_points(&f, 4, 100, &mut rng) {
        let m = p.evaluate(&f, &x).unwrap();
        let (rk, ker, coker) = (m.rank(), m.kernel().dim(), m.left_kernel().dim());
        t.eq("measured (ker, im, coker)", (6, 14, 6), (ker as u64, rk as u64, coker as u64));
    }
    t.finish("2")
}

fn c3a_hook_family() -> Outcome {
    let mut t = Tally::default();
    let id = FamilyId::GlHook { a: 1, b: 1 };
    let (mu, nu) = id.shapes();
    let p = build_gl_pencil(&mu, &nu, 4).unwrap();
    t.eq("size (target, source)", (15, 20), (p.target_dim, p.source_dim));
    let r = constant_rank_verdict(&p, Mode::Transitivity { prime: DEFAULT_PRIME }).unwrap();
    t.eq("rank at (1,1,3)", (Verdict::Constant, 11), (r.verdict, r.generic_rank));
    let f = f();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for b in 0..=2usize {
        for n in (b + 1).max(2)..=5 {
            let id = FamilyId::GlHook { a: 1, b };
            let (mu, nu) = id.shapes();
            let p = build_gl_pencil(&mu, &nu, n + 1).unwrap();
            let measured = ranks(&p, &f, &random_points(&f, p.nvars, 5, &mut rng)).into_iter().max().unwrap();
            t.eq(format!("b={b} n={n} strip prediction"), family_sizes(id, n).unwrap().triple().2, measured as u64);
        }
    }
    t.finish("3a")
}

fn c3b_hook_printed_formula() -> Outcome {
    let mut t = Tally::default();
    let f = f();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for b in 0..=2usize {
        for n in (b + 1).max(2)..=5 {
            let (mu, nu) = FamilyId::GlHook { a: 1, b }.shapes();
            let p = build_gl_pencil(&mu, &nu, n + 1).unwrap();
            let measured = ranks(&p, &f, &random_points(&f, p.nvars, 5, &mut rng)).into_iter().max().unwrap();
            t.eq(
                format!("b={b} n={n}"),
                hook_rank_printed(n, b).to_string(),
                BigRational::from_integer(BigInt::from(measured)).to_string(),
            );
        }
    }
    t.finish("3b")
}

fn c4_rank_criticality() -> Outcome {
    let mut t = Tally::default();
    for v in 2..=5 {
        for k in 1..=2usize.min(v - 1) {
            let p = build_koszul_pencil(k, v).unwrap();
            let r = rnd(&p, DEFAULT_PRIME, None, 0).unwrap();
            t.eq(format!("koszul k={k} v={v}"), (RndVerdict::RankCriticalCertified, v), (r.verdict, r.dim));
        }
    }
    let spin = build_spin_pencil(5).unwrap();
    let r = rnd(&spin, DEFAULT_PRIME, None, 0).unwrap();
    t.eq("spin n=5", (RndVerdict::RankCriticalCertified, 16), (r.verdict, r.dim));

    let p = build_gl_pencil(&part![2], &part![2, 1], 3).unwrap();
    let a = rnd(&p, DEFAULT_PRIME, None, 0).unwrap();
    let b = rnd(&p, DEFAULT_PRIME, None, 0).unwrap();
    let weyl = u(weyl_dim(&GroupSpec::gl(3), &Weight::from_doubled(vec![4, 0, -2])).unwrap());
    t.eq("weyl dim S_(2,0,-1)", 15, weyl);
    t.eq("gl (2)->(2,1) n=2", (RndVerdict::StrictlyLarger, 3 + weyl as usize), (a.verdict, a.dim));
    t.eq("deterministic", serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    t.eq("seed recorded", 0, a.seed);
    t.finish("4")
}

fn smith<F: Field>(f: &F, a: usize, b: usize, r: usize) -> Matrix<F> {
    let mut x = Matrix::zeros(f, a, b);
    for i in 0..r {
        x.set(i, i, f.one());
    }
    x
}

fn c5_theta() -> Outcome {
    let start = Instant::now();
    let mut t = Tally::default();
    let (lam, lam_p, mu, mu_p) = (part![2], part![1], part![1], part![1, 1]);
    let q = Rationals;
    let f = f();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in 1..=4 {
        for b in 1..=4 {
            for r in 0..=a.min(b) {
                let exact = theta_map(&q, &smith(&q, a, b, r), &lam, &lam_p, &mu, &mu_p).unwrap().rank();
                t.eq(format!("a={a} b={b} r={r} formula"), theta_rank_formula(a, b, r).unwrap(), BigInt::from(exact));
                for _ in 0..20 {
                    let x = loop {
                        let l = Matrix::from_rows(&f, r.max(1), (0..a).map(|_| (0..r.max(1)).map(|_| f.random(&mut rng)).collect()).collect());
                        let rr = Matrix::from_rows(&f, b, (0..r.max(1)).map(|_| (0..b).map(|_| f.random(&mut rng)).collect()).collect());
                        let x = if r == 0 { Matrix::zeros(&f, a, b) } else { l.mul(&rr).unwrap() };
                        if x.rank() == r {
                            break x;
                        }
                    };
                    let got = theta_map(&f, &x, &lam, &lam_p, &mu, &mu_p).unwrap().rank();
                    t.eq(format!("a={a} b={b} r={r} random X"), exact, got);
                }
            }
        }
    }
    let el = start.elapsed();
    t.ok(format!("runtime {el:?} exceeds 30 s"), el < Duration::from_secs(30));
    t.note(format!("{:.2}s", el.as_secs_f64()));
    t.finish("5")
}

fn c6a_sp6() -> Outcome {
    let mut t = Tally::default();
    let p = build_sp_pencil(&part![1, 1], &part![1, 1, 1], 6).unwrap();
    t.eq("size", (6, 14, 14), (p.nvars, p.target_dim, p.source_dim));
    let r = constant_rank_verdict(&p, Mode::Transitivity { prime: DEFAULT_PRIME }).unwrap();
    t.eq("transitivity", (Verdict::Constant, 9), (r.verdict, r.generic_rank));
    let r = constant_rank_verdict(&p, Mode::Exhaustive { prime: 3, budget: BUDGET }).unwrap();
    t.eq("exhaustive F_3", (Verdict::Constant, 9), (r.verdict, r.generic_rank));

    let fx = fixture_parse("sp6-l2-l3").unwrap();
    let f = f();
    t.eq("fixture at coordinate points", vec![9; 6], ranks(&fx, &f, &coordinate_points(6)));

    let k = build_koszul_pencil(2, 6).unwrap();
    t.eq("expanded size", (20, 15), (k.target_dim, k.source_dim));
    let r = constant_rank_verdict(&k, Mode::Transitivity { prime: DEFAULT_PRIME }).unwrap();
    t.eq("expanded transitivity", (Verdict::Constant, 10), (r.verdict, r.generic_rank));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for x in random_points(&f, 6, 100, &mut rng) {
        t.eq("rank(expanded) = rank(psi) + 1", rank_at(&k, &f, &x).unwrap(), rank_at(&p, &f, &x).unwrap() + 1);
    }
    t.finish("6a")
}

fn c6b_sp6_fixture_random() -> Outcome {
    let mut t = Tally::default();
    let fx = fixture_parse("sp6-l2-l3").unwrap();
    let f = f();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rs = ranks(&fx, &f, &random_points(&f, 6, 200, &mut rng));
    let bad = rs.iter().filter(|&&r| r != 9).count();
    t.eq("fixture points of rank != 9 among 200 random", 0, bad);
    if bad > 0 {
        t.note(format!("observed rank {}", rs.iter().max().unwrap()));
    }
    t.finish("6b")
}

fn c7_so_m3() -> Outcome {
    let mut t = Tally::default();
    let p = build_so_pencil(&part![2], &part![2, 1], 3).unwrap();
    t.eq("size", (5, 5), (p.target_dim, p.source_dim));
    let r = constant_rank_verdict(&p, Mode::Exhaustive { prime: 13, budget: BUDGET }).unwrap();
    t.eq("exhaustive F_13", (Verdict::Constant, 4), (r.verdict, r.generic_rank));
    let f13 = PrimeField::new(13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = constant_rank_verdict(&p, Mode::Sampled { prime: 13, trials: 100, seed: 7 }).unwrap();
    t.ok("sampled strata include isotropic points", r.strata.iter().any(|s| format!("{:?}", s.class) == "Isotropic"));
    t.ok("sampled strata all rank 4", r.strata.iter().all(|s| s.rank == 4));
    for _ in 0..50 {
        let x = isotropic_point(&f13, 3, &mut rng).unwrap();
        t.eq("isotropic rank", 4, rank_at(&p, &f13, &x).unwrap());
    }

    let q = Rationals;
    let build = build_so_pencil_over(&q, &part![2], &part![2, 1], 3).unwrap();
    let mut killed = 0;
    for _ in 0..100 {
        let v: Vec<BigRational> = (0..3).map(|_| BigRational::from_integer(rng.gen_range(-999i64..=999).into())).collect();
        let k = so_kernel_vector_coords(&q, &build, &v).unwrap();
        let a = build.pencil.evaluate(&q, &v).unwrap();
        if k.iter().any(|x| !x.is_zero()) && a.mul_vec(&k).iter().all(Zero::is_zero) {
            killed += 1;
        }
    }
    t.eq("kernel vector annihilated (of 100)", 100, killed);

    for m in 3..=5u64 {
        let p = build_so_pencil(&part![2], &part![2, 1], m as usize).unwrap();
        let f = PrimeField::new(p.modulus.unwrap_or(DEFAULT_PRIME)).unwrap();
        let x = loop {
            let x = random_point(&f, m as usize, &mut rng);
            if quadratic_form(&f, &x) != 0 {
                break x;
            }
        };
        t.eq(
            format!("m={m} sizes"),
            ((m * m + m - 2) / 2, (m * m * m - 4 * m) / 3, (m * m + m - 4) / 2),
            (p.source_dim as u64, p.target_dim as u64, rank_at(&p, &f, &x).unwrap() as u64),
        );
    }
    t.finish("7")
}

fn c8_so_corank() -> Outcome {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for m in 5..=6usize {
        let p = build_so_pencil(&part![3, 1, 1], &part![3, 2, 1], m).unwrap();
        let f = PrimeField::new(p.modulus.unwrap_or(DEFAULT_PRIME)).unwrap();
        let expected = (binom(m as u64 - 1, 3) + binom(m as u64 - 1, 2)) as usize;
        let mut iso = Vec::new();
        let mut non = Vec::new();
        while non.len() < 50 {
            let x = random_point(&f, m, &mut rng);
            if quadratic_form(&f, &x) != 0 {
                non.push(x);
            }
        }
        for _ in 0..50 {
            iso.push(isotropic_point(&f, m, &mut rng).unwrap());
        }
        for (kind, pts) in [("isotropic", iso), ("non-isotropic", non)] {
            let co: Vec<usize> = ranks(&p, &f, &pts).into_iter().map(|r| p.source_dim - r).collect();
            t.eq(format!("m={m} corank at 50 {kind} points"), vec![expected; 50], co);
        }
    }
    t.finish("8")
}

fn c9_spin() -> Outcome {
    let mut t = Tally::default();
    let p = build_spin_pencil(5).unwrap();
    let f = f();
    let (plus, _) = spin_space(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pts = random_points(&f, 16, 200, &mut rng);
    for x in &pts {
        let m = p.evaluate(&f, x).unwrap();
        t.eq("(rank, kernel) at random delta", (9, 1), (m.rank(), m.kernel().dim()));
    }
    t.eq("rank at 1", 5, rank_at(&p, &f, &coordinate_points(16)[0]).unwrap());
    for x in pts.iter().take(100) {
        let delta = plus.embed(&f, x);
        let m = p.evaluate(&f, x).unwrap();
        let k = spin_kernel_vector(&f, &delta).unwrap();
        let a = spinor_a(&f, 5, &delta);
        t.ok("kernel vector annihilated", m.mul_vec(&k).iter().all(|v| *v == 0));
        t.ok("a(delta) annihilated", m.mul_vec(&a).iter().all(|v| *v == 0));
        t.eq("rank of [kernel vector; a(delta)]", 1, Matrix::from_rows(&f, 10, vec![k, a]).rank());
    }
    for _ in 0..100 {
        let s = pure_spinor_point(&f, &plus, &mut rng);
        t.ok("a vanishes on a pure spinor", spinor_a(&f, 5, &plus.embed(&f, &s)).iter().all(|v| *v == 0));
    }
    t.finish("9")
}

fn c10_adjoint() -> Outcome {
    let mut t = Tally::default();
    let f = f();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let p7 = build_adjoint_pencil(7).unwrap();
    let r7 = ranks(&p7, &f, &random_points(&f, p7.nvars, 20, &mut rng)).into_iter().max().unwrap();
    t.eq("a=7 generic rank", 34, r7);
    let p8 = build_adjoint_pencil(8).unwrap();
    let r8 = ranks(&p8, &f, &random_points(&f, p8.nvars, 20, &mut rng)).into_iter().max().unwrap();
    t.ok(format!("a=8 generic rank {r8} > 55"), r8 <= 55);
    t.note(format!("a=8 measured {r8}"));
    let (lam, mu) = (part![3, 2], part![3, 2, 1, 1]);
    t.eq("hyperplane criterion", (true, BigInt::from(40)), hyperplane_bound_criterion(&lam, &mu, 2).unwrap());
    t.eq("s_lam(5), s_mu(5)", (175, 175), (u(gl_dim(&lam, 5)), u(gl_dim(&mu, 5))));
    t.finish("10")
}

fn c11_flattening() -> Outcome {
    let mut t = Tally::default();
    let r = koszul_flattening_rank(&part![2], &part![2, 1], 3).unwrap();
    t.eq("(flattening rank, border rank bound)", (18, 9), (r, border_rank_bound(r, 3)));
    t.finish("11")
}

fn c12_dimensions() -> Outcome {
    let mut t = Tally::default();
    let w = |g: GroupSpec, wt: Weight| u(weyl_dim(&g, &wt).unwrap());
    let lam = |k: usize| Weight::from_partition(&Partition::rectangle(1, k));
    t.eq("Sp(6) Lambda<2>", 14, u(weyl_dim_partition(&GroupSpec::sp(6), &part![1, 1]).unwrap()));
    let mut long = vec![2i64; 5];
    long.extend([1, 1]);
    t.eq("GL(10) (2^5)", 19404, u(weyl_dim_partition(&GroupSpec::gl(10), &Partition::rectangle(2, 5)).unwrap()));
    t.eq("GL(10) (2^5,1,1)", 20790, u(weyl_dim_partition(&GroupSpec::gl(10), &Partition::new(long).unwrap()).unwrap()));
    t.eq("Spin(12) Lambda^2", 66, w(GroupSpec::spin(12), lam(2)));
    t.eq("Spin(12) w1+w5", 352, w(GroupSpec::spin(12), Weight::from_doubled(vec![3, 1, 1, 1, 1, 1])));
    t.eq("Spin(14) Lambda^3", 364, w(GroupSpec::spin(14), lam(3)));
    t.eq("a_7 = C(14, 3)", binom(14, 3), w(GroupSpec::spin(14), lam(7 - 4)));
    t.finish("12")
}

#[test]
fn acceptance() {
    let outcomes = vec![
        c1_gl_two_family(),
        c2_gl_two_two(),
        c3a_hook_family(),
        c3b_hook_printed_formula(),
        c4_rank_criticality(),
        c5_theta(),
        c6a_sp6(),
        c6b_sp6_fixture_random(),
        c7_so_m3(),
        c8_so_corank(),
        c9_spin(),
        c10_adjoint(),
        c11_flattening(),
        c12_dimensions(),
    ];
    for o in &outcomes {
        let detail: String = o.detail.chars().take(400).collect();
        println!("{} criterion {:<3} {}", if o.pass { "PASS" } else { "FAIL" }, o.id, detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert_eq!(failed, ["3b", "6b"], "unexpected set of failing criteria");
}
