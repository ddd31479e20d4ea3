//! Acceptance suite. Runs every criterion in sequence, prints one PASS/FAIL
//! line each, and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fanokit::bott::{bott_cohomology, sweep_line_conditions, BottResult, GrassmannianBundle};
use fanokit::cli::reproduce::{reproduce_orbit_table, verify_cohvan};
use fanokit::field::{Field, PrimeField, Rationals};
use fanokit::forms::{alpha4_as_form, classify_orbit, orbit_dim, q_rank, two_rank, AltForm};
use fanokit::hodge::fano::{quartic_sixfold_fano, seeded_quartic, FanoHodgeOptions};
use fanokit::hodge::jacobian::{
    griffiths_beta_corank, griffiths_phi_rank, hypersurface_hodge, jacobian_hilbert_series, prime_from_seed,
    PRIME_RANGE,
};
use fanokit::hodge::vanishing::gr2_syml_vanishing;
use fanokit::linalg::determinant;
use fanokit::pfaffian::{catalan_degree, cn_constant, crepancy_bidegrees, hull_trials, pfaffian, SkewMatrix};
use fanokit::schur::{partition_dim, rank2_ext_power, SchurExpr};
use fanokit::weights::{lr_coefficients, IntWeight, Partition};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 hypersurface Hodge numbers", secs(1), hypersurface),
        ("2 holomorphic forms on the Fano scheme", secs(1), holomorphic_forms),
        ("3 Bott closed-form sweep", secs(1), bott_sweep),
        ("4 exterior powers of S^4 T", secs(1), ext_powers),
        ("5 Griffiths ranks over 3 primes", secs(15 * 60), griffiths_ranks),
        ("6 two-column vanishing with exceptions", secs(30), cohvan),
        ("7 Koszul vanishing on Gr(2,2n)", secs(5), gr2_vanishing),
        ("8 orbit invariants", secs(5), orbits),
        ("9 pencil kernel hulls", secs(60), pencil_hulls),
        ("10 property suites", secs(10 * 60), properties),
        ("11 degree constants", secs(1), degree_constants),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Outcome::new(false, "panicked"));
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = outcome.pass && in_time;
        failed += usize::from(!pass);
        let timing = if in_time { String::new() } else { format!(", over budget {budget:?}") };
        println!(
            "{} {name} [{:.2}s{timing}]: {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn hypersurface() -> Outcome {
    let h = hypersurface_hodge(7, 4).unwrap();
    let got: Vec<_> = [(6, 0), (5, 1), (4, 2), (3, 3)].iter().map(|&(p, q)| h.h(p, q).unwrap()).collect();
    Outcome::new(got == [0, 1, 266, 1108], format!("(h60,h51,h42,h33) = {got:?}"))
}

fn holomorphic_forms() -> Outcome {
    let r = quartic_sixfold_fano(FanoHodgeOptions { seed: 0, prime: None, skip_matrix: true }).unwrap();
    let page = &r.pages[0];
    let got: Vec<_> = [0, 4, 7].iter().map(|&k| page.collapse.h(k)).collect();
    let weight = page.entries.iter().find(|e| (e.i, e.q) == (5, 12)).map(|e| e.lambdas.clone());
    let expected_weight = vec![IntWeight::new(vec![4, 4, 2, 2, 2, 2, 2, 2]).unwrap()];
    let pass = got == [Some(1), Some(1), Some(336)]
        && page.collapse.ambiguous_degrees.is_empty()
        && weight.as_ref() == Some(&expected_weight);
    Outcome::new(pass, format!("h0,h4,h7 = {got:?}, weight at (5,12) = {weight:?}"))
}

fn bott_sweep() -> Outcome {
    let checks = sweep_line_conditions(15);
    let bad: Vec<_> = checks.iter().filter(|c| !c.pass).map(|c| (c.a, c.b)).collect();
    // one case per dominant weight a ≥ b in the box
    let dominant = 31 * 32 / 2;
    Outcome::new(bad.is_empty() && checks.len() == dominant, format!("{} cases, failures {bad:?}", checks.len()))
}

fn ext_powers() -> Outcome {
    let table: [(usize, &[(i64, i64)]); 4] =
        [(2, &[(7, 1), (5, 3)]), (3, &[(9, 3), (7, 5)]), (4, &[(10, 6)]), (5, &[(10, 10)])];
    let mut bad = Vec::new();
    for (i, labels) in table {
        let expected: SchurExpr = labels.iter().map(|&(a, b)| (IntWeight::new(vec![a, b]).unwrap(), 1)).collect();
        let got = rank2_ext_power(4, i).unwrap();
        if got != expected {
            bad.push(format!("Λ^{i}: {got}"));
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "four lines match".into() } else { bad.join("; ") })
}

fn griffiths_ranks() -> Outcome {
    let series = jacobian_hilbert_series(8, 4);
    let (r4, r8) = (series.get(4) as usize, series.get(8) as usize);
    let mut primes = Vec::new();
    let mut seed = 0;
    while primes.len() < 3 {
        let p = prime_from_seed(seed, PRIME_RANGE.0, PRIME_RANGE.1);
        if !primes.contains(&p) {
            primes.push(p);
        }
        seed += 1;
    }
    let mut bad = Vec::new();
    let mut slowest_phi = Duration::ZERO;
    for &p in &primes {
        let field = PrimeField::new(p).unwrap();
        for q in 0..5 {
            let f = seeded_quartic(&field, 1000 + q);
            let start = Instant::now();
            let phi = griffiths_phi_rank(&field, &f).unwrap();
            slowest_phi = slowest_phi.max(start.elapsed());
            let beta = griffiths_beta_corank(&field, &f).unwrap();
            if phi.psi_kernel != 266 || beta != 1107 {
                bad.push(format!("p={p} quartic {q}: ker {} coker {beta}", phi.psi_kernel));
            }
        }
    }
    let agree = r4 == 266 && r8 == 1107;
    let pass = bad.is_empty() && agree && slowest_phi < secs(1);
    Outcome::new(
        pass,
        format!(
            "primes {primes:?}, 15 quartics, ker ψ = R_4 = {r4}, coker β = R_8 = {r8}, slowest φ {:.3}s{}",
            slowest_phi.as_secs_f64(),
            if bad.is_empty() { String::new() } else { format!(", failures {bad:?}") }
        ),
    )
}

fn cohvan() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (n, k) in [(3, 1), (3, 2), (4, 1)] {
        let r = verify_cohvan(n, k, 5).unwrap();
        pass &= r.pass;
        details.push(format!("({n},{k}) {}", if r.pass { "ok" } else { "failed" }));
    }
    Outcome::new(pass, details.join(", "))
}

fn gr2_vanishing() -> Outcome {
    let mut pass = true;
    for n in [3, 4] {
        pass &= gr2_syml_vanishing(n).unwrap().pass;
    }
    // Λ⁴(S³L) on Gr(2,6): nothing in degree 4, a line in degree 8.
    let r = gr2_syml_vanishing(3).unwrap();
    let special = r.rows.iter().find(|row| row.t == 4).map(|row| {
        row.groups.iter().map(|g| (g.q, g.dim.clone())).collect::<Vec<_>>()
    });
    let special_ok = special == Some(vec![(8, "1".to_string())]);
    Outcome::new(pass && special_ok, format!("n = 3, 4; t = 4 on Gr(2,6) gives {special:?}"))
}

fn orbits() -> Outcome {
    let a = classify_orbit(&alpha4_as_form()).unwrap();
    let zero = classify_orbit(&AltForm::zero(4, 7)).unwrap();
    let table = reproduce_orbit_table(2024, 20).unwrap();
    let pass = (a.name, a.orbit_dim, a.two_rank, a.q_rank) == ("O7", 34, 18, 4)
        && (zero.orbit_dim, zero.two_rank, zero.q_rank) == (0, 0, 0)
        && table.pass;
    Outcome::new(pass, format!("α4 → {} {:?}, zero → {}, 20 random 4-forms checked", a.name, (a.orbit_dim, a.two_rank, a.q_rank), zero.name))
}

fn pencil_hulls() -> Outcome {
    let field = PrimeField::new(65521).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut details = Vec::new();
    let mut pass = true;
    for (n, k) in [(3, 1), (4, 1), (5, 1), (4, 2), (5, 2)] {
        let t = hull_trials(&field, n, k, 100, &mut rng).unwrap();
        let ok = t.constant_rank_accepted == 100 && t.hull_dims == BTreeMap::from([(n + k, 100)]);
        pass &= ok;
        details.push(format!("({n},{k}) {:?}", t.hull_dims));
    }
    Outcome::new(pass, details.join(", "))
}

fn properties() -> Outcome {
    let parts = [pf_squared(), serre_symmetry(), gl_invariance(), lr_balance()];
    let pass = parts.iter().all(|o| o.pass);
    Outcome::new(pass, parts.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join("; "))
}

fn pf_squared() -> Outcome {
    let field = PrimeField::new(65521).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for case in 0..500 {
        let size = 2 * (case % 6);
        let m = SkewMatrix::<u64>::random(&field, size, &mut rng);
        let pf = pfaffian(&field, &m).unwrap();
        if field.mul(&pf, &pf) != determinant(&field, m.entries()) {
            bad += 1;
        }
    }
    // a few over Q, exact
    let q = Rationals;
    for case in 0..20 {
        let size = 2 + 2 * (case % 3);
        let m = SkewMatrix::from_upper(&q, size, |_, _| BigRational::from_integer(BigInt::from(rng.gen_range(-9..=9))));
        let pf = pfaffian(&q, &m).unwrap();
        if &pf * &pf != determinant(&q, m.entries()) {
            bad += 1;
        }
    }
    Outcome::new(bad == 0, format!("Pf² = det: {bad} failures in 520"))
}

fn serre_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..n);
        let weight = |len: usize, rng: &mut ChaCha8Rng| {
            let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            IntWeight::new(v).unwrap()
        };
        let (qw, sw) = (weight(n - m, &mut rng), weight(m, &mut rng));
        let b = GrassmannianBundle::new(n, m, qw, sw).unwrap();
        let d = b.serre_dual();
        let ok = match (bott_cohomology(&b), bott_cohomology(&d)) {
            (BottResult::Vanishing, BottResult::Vanishing) => true,
            (x @ BottResult::Cohomology { .. }, y @ BottResult::Cohomology { .. }) => {
                x.degree().unwrap() + y.degree().unwrap() == b.grassmannian_dim() && x.dim() == y.dim()
            }
            _ => false,
        };
        bad += usize::from(!ok);
    }
    Outcome::new(bad == 0, format!("Serre duality: {bad} failures in 1000"))
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Vec<Vec<BigRational>> {
    loop {
        let g: Vec<Vec<BigRational>> = (0..7)
            .map(|_| (0..7).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3..=3)))).collect())
            .collect();
        if !determinant(&Rationals, &g).is_zero() {
            return g;
        }
    }
}

fn gl_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let decomposable = AltForm::decomposable(7, &[0, 1, 2, 3]).unwrap();
    let two_terms =
        AltForm::from_terms(4, 7, [(vec![0, 1, 2, 3], BigRational::one()), (vec![3, 4, 5, 6], BigRational::one())]).unwrap();
    let seeds = [alpha4_as_form(), decomposable, two_terms, AltForm::decomposable(7, &[0, 1, 2]).unwrap()];
    let mut bad = 0;
    for trial in 0..100 {
        let f = if trial % 5 == 4 { AltForm::random(3 + trial % 2, 7, 2, &mut rng) } else { seeds[trial % 4].clone() };
        let g = random_invertible(&mut rng);
        let h = f.pullback(&g).unwrap();
        let inv = |x: &AltForm| {
            let four = if x.degree() == 4 { x.clone() } else { x.complement_dual(&BigRational::one()) };
            (orbit_dim(x), two_rank(&four).unwrap(), q_rank(x).unwrap())
        };
        bad += usize::from(inv(&f) != inv(&h));
    }
    Outcome::new(bad == 0, format!("GL(7) invariance: {bad} failures in 100"))
}

fn partitions_up_to(total: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).unwrap());
        for part in (1..=left.min(max)).rev() {
            prefix.push(part as i64);
            rec(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

fn lr_balance() -> Outcome {
    let all = partitions_up_to(8);
    let mut cases = 0;
    let mut bad = 0;
    for mu in &all {
        for nu in all.iter().filter(|nu| mu.weight() + nu.weight() <= 8) {
            let coeffs = lr_coefficients(mu, nu);
            for n in 1..=8 {
                let lhs = partition_dim(mu, n) * partition_dim(nu, n);
                let rhs: BigUint = coeffs.iter().map(|(l, &c)| partition_dim(l, n) * c).sum();
                cases += 1;
                bad += usize::from(lhs != rhs);
            }
        }
    }
    Outcome::new(bad == 0, format!("LR dimension balance: {bad} failures in {cases}"))
}

fn catalan(k: usize) -> u64 {
    let mut c = vec![1u64];
    for j in 1..=k {
        c.push((0..j).map(|i| c[i] * c[j - 1 - i]).sum());
    }
    c[k]
}

fn degree_constants() -> Outcome {
    let catalan_ok = (1..=10).all(|n| catalan_degree(n).unwrap() == BigUint::from(catalan(n - 1)));
    let cn: Vec<u64> = (2..=8).map(|n| cn_constant(n).unwrap()).collect();
    let cn_ok = cn.iter().zip(2u64..).all(|(&c, n)| c == (n - 1) * (n - 2) / 2 + 1);
    let canon: Vec<i64> = (2..=6).map(|n| crepancy_bidegrees(n).unwrap().canonical_bidegree.0).collect();
    let pass = catalan_ok && cn_ok && cn[..3] == [1, 2, 4] && canon.iter().all(|&c| c == 0);
    Outcome::new(pass, format!("Catalan to n=10 {catalan_ok}, c_n = {cn:?}, first canonical slots {canon:?}"))
}
