mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::cyclo::{tower_check, CycElem, CycField, RootOrder};
use workbench_core::gammalab::{
    gamma_coeff, gamma_coeff_oracle, rn_dim, GammaCoeffQuery, DEFAULT_MAX_OPS,
};
use workbench_core::growth::{degree_estimate, slope_extract, GrowthSeries, SlopeFit};
use workbench_core::mqfield::{MQElem, PrimeBasis};
use workbench_core::ordgroup::GroupElem;
use workbench_core::qaffine::{
    central_power_check, dim_vr, gk_profile, hom_check, power_is_central, power_map_images,
    FreeWord, QAlgebra, QPoly,
};
use workbench_core::twistring::TwistedElem;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|detail| {
        if elapsed <= limit {
            Ok(detail)
        } else {
            Err(format!("took {elapsed:.2?}, limit {limit:?}"))
        }
    });
    let (tag, detail, ok) = match outcome {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!(
        "{tag} [{id:>2}] {name} ({:.0} ms, limit {} s): {detail}",
        elapsed.as_secs_f64() * 1e3,
        limit.as_secs()
    );
    ok
}

fn witness_factorials() -> Outcome {
    let mut fact = BigUint::from(1u32);
    for n in 1..=8u32 {
        fact *= n;
        let got = gamma_coeff(&GammaCoeffQuery::witness(n, n as usize));
        ensure(got == fact, || format!("n = {n}: got {got}, expected {fact}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x57e94);
    let mut nonzero = 0;
    for k in 0..500 {
        let power = rng.gen_range(1..=6u32);
        let target = if rng.gen_bool(0.7) {
            (0..power).fold(GroupElem::identity(), |acc, _| {
                acc.mul(&GroupElem::generator(rng.gen_range(1..=6)).inv())
            })
        } else {
            GroupElem::from_pairs((1..=6).map(|i| (i, -rng.gen_range(0..=2i64))))
        };
        let q = GammaCoeffQuery::new(power, target).map_err(fail)?;
        let formula = gamma_coeff(&q);
        let oracle = gamma_coeff_oracle(&q, DEFAULT_MAX_OPS).map_err(fail)?;
        ensure(formula == oracle, || {
            format!("query {k} ({}): formula {formula}, oracle {oracle}", q.target())
        })?;
        if formula != BigUint::from(0u32) {
            nonzero += 1;
        }
    }
    Ok(format!(
        "n! for n = 1..8; 500 random queries agree with the oracle ({nonzero} nonzero)"
    ))
}

fn normal_form_slope() -> Outcome {
    let mut slopes = Vec::new();
    for n in 0..=4u32 {
        let lo = 2 * n as u64;
        let s = GrowthSeries::from_fn(lo..=lo + 12, |r| rn_dim(n, r as u32).count).map_err(fail)?;
        let expected = 4i128.pow(n);
        match slope_extract(&s).map_err(fail)? {
            SlopeFit::Linear { slope, offset } => {
                ensure(slope == expected, || format!("n = {n}: slope {slope}, expected {expected}"))?;
                slopes.push(format!("n={n}: {slope}r{offset:+}"));
            }
            SlopeFit::Nonlinear => return Err(format!("n = {n}: no affine tail")),
        }
        if n >= 1 {
            let est = degree_estimate(&s).map_err(fail)?;
            ensure(est.degree() == Some(1), || {
                format!("n = {n}: degree snapped to {} (raw {:.3})", est.snapped, est.raw)
            })?;
        }
    }
    Ok(format!("slopes {}; degree 1 for n = 1..4", slopes.join(", ")))
}

fn quantum_growth() -> Outcome {
    for n in 1..=4usize {
        for r in 0..=12u32 {
            let (got, want) = (dim_vr(n, r), binomial((n as u64) + r as u64, r as u64));
            ensure(got == want, || format!("n = {n}, r = {r}: {got} != {want}"))?;
        }
    }
    let mut raws = Vec::new();
    for n in 1..=4usize {
        let alg = QAlgebra::new(n, 2, 1).map_err(fail)?;
        let est = degree_estimate(&gk_profile(&alg, 12).map_err(fail)?).map_err(fail)?;
        ensure(est.degree() == Some(n as u32), || {
            format!("n = {n}: snapped {} (raw {:.3})", est.snapped, est.raw)
        })?;
        raws.push(format!("{:.3}", est.raw));
    }
    Ok(format!(
        "dim V^r = binomial(n+r, r) for n <= 4, r <= 12; raw degrees {}",
        raws.join(", ")
    ))
}

fn central_powers() -> Outcome {
    let mut spot = 0;
    for (p, t) in [(2u64, 1u32), (2, 2), (3, 1)] {
        for n in 2..=3usize {
            let alg = QAlgebra::new(n, p, t).map_err(fail)?;
            let m = alg.field().m() as u32;
            for i in 1..=n {
                ensure(central_power_check(&alg, i).map_err(fail)?, || {
                    format!("p={p} t={t} n={n}: x{i}^{m} not central")
                })?;
                for k in 1..m {
                    ensure(!power_is_central(&alg, i, k).map_err(fail)?, || {
                        format!("p={p} t={t} n={n}: x{i}^{k} central")
                    })?;
                    // direct check: x_j x_i^k - x_i^k x_j is a nonzero multiple of the product
                    let j = if i == 1 { 2 } else { 1 };
                    let xj = QPoly::generator(&alg, j).map_err(fail)?;
                    let xik = QPoly::generator_pow(&alg, i, k).map_err(fail)?;
                    let comm = xj.commutator(&xik).map_err(fail)?;
                    ensure(comm.len() == 1, || format!("x{j}, x{i}^{k}: commutator {comm}"))?;
                    spot += 1;
                }
            }
        }
    }
    Ok(format!(
        "x_i^m central for every generator; {spot} powers 0 < k < m confirmed non-central"
    ))
}

fn power_embeddings() -> Outcome {
    let mut maps = 0;
    for p in [2u64, 3] {
        for t in 1..=2u32 {
            for n in 2..=3usize {
                let src = QAlgebra::new(n, p, t - 1).map_err(fail)?;
                let dst = QAlgebra::new(n, p, t).map_err(fail)?;
                let images = power_map_images(&dst, n, p as u32).map_err(fail)?;
                let report = hom_check(&src, &dst, &images).map_err(fail)?;
                ensure(report.ok, || format!("p={p} t={t} n={n}: power map rejected"))?;
                maps += 1;
            }
        }
    }
    let alg = QAlgebra::new(2, 2, 1).map_err(fail)?;
    let swap = vec![
        QPoly::generator(&alg, 2).map_err(fail)?,
        QPoly::generator(&alg, 1).map_err(fail)?,
    ];
    let report = hom_check(&alg, &alg, &swap).map_err(fail)?;
    let failure = report
        .first_failure()
        .ok_or_else(|| "generator swap accepted".to_string())?;
    ensure((failure.i, failure.j) == (1, 2), || {
        format!("swap failed at ({}, {})", failure.i, failure.j)
    })?;
    Ok(format!(
        "{maps} power maps accepted; swap rejected at relation (1, 2) with residual {}",
        failure.residual
    ))
}

fn center_equivalence() -> Outcome {
    let basis = PrimeBasis::first(4).map_err(fail)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xce47);
    let mut central = 0;
    for k in 0..1000 {
        let a = common::random_twisted(&mut rng, &basis, 4, 5);
        let by_char = a.is_central_by_characterization();
        let by_comm = a.is_central_by_commutation(4).map_err(fail)?;
        ensure(by_char == by_comm, || {
            format!("element {k} ({a}): characterization {by_char}, commutation {by_comm}")
        })?;
        central += by_char as usize;
    }
    ensure(central > 0 && central < 1000, || {
        format!("degenerate sample: {central} central")
    })?;
    Ok(format!("1000 elements agree ({central} central)"))
}

fn twisted_axioms() -> Outcome {
    let basis = PrimeBasis::first(4).map_err(fail)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xa55);
    for k in 0..1000 {
        let a = common::random_twisted(&mut rng, &basis, 4, 3);
        let b = common::random_twisted(&mut rng, &basis, 4, 3);
        let c = common::random_twisted(&mut rng, &basis, 4, 3);
        let assoc_l = a.mul(&b).and_then(|ab| ab.mul(&c)).map_err(fail)?;
        let assoc_r = b.mul(&c).and_then(|bc| a.mul(&bc)).map_err(fail)?;
        ensure(assoc_l == assoc_r, || format!("triple {k}: associativity"))?;
        let dist_l = b.add(&c).and_then(|s| a.mul(&s)).map_err(fail)?;
        let dist_r = a.mul(&b).and_then(|ab| a.mul(&c).and_then(|ac| ab.add(&ac))).map_err(fail)?;
        ensure(dist_l == dist_r, || format!("triple {k}: left distributivity"))?;
        let dist_l = a.add(&b).and_then(|s| s.mul(&c)).map_err(fail)?;
        let dist_r = a.mul(&c).and_then(|ac| b.mul(&c).and_then(|bc| ac.add(&bc))).map_err(fail)?;
        ensure(dist_l == dist_r, || format!("triple {k}: right distributivity"))?;
    }
    let mut identities = 0;
    for i in 1..=4 {
        let s = TwistedElem::radical(&basis, i).map_err(fail)?;
        for j in 1..=4 {
            for e in 0..=6i64 {
                let x = TwistedElem::group(&basis, GroupElem::generator_pow(j, e)).map_err(fail)?;
                let lhs = x.mul(&s).map_err(fail)?;
                let rhs = s.mul(&x).map_err(fail)?;
                let rhs = if i == j && e % 2 == 1 { rhs.neg() } else { rhs };
                ensure(lhs == rhs, || format!("x{j}^{e} s{i}: {lhs} != {rhs}"))?;
                identities += 1;
            }
        }
    }
    Ok(format!(
        "1000 triples associative and distributive; {identities} commutation identities hold"
    ))
}

fn field_layer() -> Outcome {
    let basis = PrimeBasis::first(5).map_err(fail)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1e1d);
    let mut rational = 0;
    for k in 0..1000 {
        let a = if rng.gen_bool(0.2) {
            common::random_rational_mq(&mut rng, &basis)
        } else {
            common::random_mq(&mut rng, &basis, 4)
        };
        let b = common::random_mq(&mut rng, &basis, 4);
        let (i, j) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let fi = |x: &MQElem| x.apply_f(i).map_err(fail);
        let fj = |x: &MQElem| x.apply_f(j).map_err(fail);
        let ab = a.mul(&b).map_err(fail)?;
        ensure(fi(&ab)? == fi(&a)?.mul(&fi(&b)?).map_err(fail)?, || {
            format!("element {k}: f{i} not multiplicative")
        })?;
        let sum = a.add(&b).map_err(fail)?;
        ensure(fi(&sum)? == fi(&a)?.add(&fi(&b)?).map_err(fail)?, || {
            format!("element {k}: f{i} not additive")
        })?;
        ensure(fi(&fj(&a)?)? == fj(&fi(&a)?)?, || {
            format!("element {k}: f{i} and f{j} do not commute")
        })?;
        ensure(fi(&fi(&a)?)? == a, || format!("element {k}: f{i} not an involution"))?;
        if !a.is_zero() {
            let inv = a.inv().map_err(fail)?;
            ensure(a.mul(&inv).map_err(fail)?.is_one(), || {
                format!("element {k}: bad inverse of {a}")
            })?;
        }
        ensure(a.is_fixed_by_all() == a.is_rational(), || {
            format!("element {k}: fixed-field test disagrees for {a}")
        })?;
        rational += a.is_rational() as usize;
    }
    Ok(format!(
        "1000 elements over 5 primes; fixed exactly on the {rational} rational ones"
    ))
}

fn cyclotomic_tower() -> Outcome {
    for (p, t) in [(2u64, 1u32), (2, 2), (3, 1)] {
        ensure(tower_check(p, t).map_err(fail)?, || format!("tower fails at p={p} t={t}"))?;
    }
    let mut fields = Vec::new();
    for p in [2u64, 3, 5, 7, 11] {
        for t in 0..=3u32 {
            let Some(m) = p.checked_pow(2 * t).filter(|&m| m <= 128) else {
                continue;
            };
            let field = CycField::new(p, t).map_err(fail)?;
            let order = CycElem::zeta(&field).order().map_err(fail)?;
            ensure(order == RootOrder::Finite(m), || {
                format!("p={p} t={t}: order {order:?}, expected {m}")
            })?;
            fields.push(format!("{p}^{}={m}", 2 * t));
        }
    }
    Ok(format!("tower holds; zeta primitive for {}", fields.join(", ")))
}

fn unbounded_degree_shadow() -> Outcome {
    let mut degrees = Vec::new();
    for n in 1..=4usize {
        let alg = QAlgebra::new(n, 2, 1).map_err(fail)?;
        let est = degree_estimate(&gk_profile(&alg, 16).map_err(fail)?).map_err(fail)?;
        let d = est
            .degree()
            .ok_or_else(|| format!("n = {n}: no integer degree (raw {:.3})", est.raw))?;
        ensure(d == n as u32, || format!("n = {n}: degree {d}"))?;
        degrees.push(d);
    }
    ensure(degrees.windows(2).all(|w| w[0] < w[1]), || {
        format!("degrees not strictly increasing: {degrees:?}")
    })?;
    Ok(format!(
        "degrees {degrees:?} along A_1 < A_2 < ... (desk-scale shadow of infinite GK dimension)"
    ))
}

fn rewriting_confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0f1);
    for k in 0..200 {
        let n = rng.gen_range(1..=4usize);
        let (p, t) = [(2u64, 1u32), (2, 2), (3, 1)][rng.gen_range(0..3)];
        let alg = QAlgebra::new(n, p, t).map_err(fail)?;
        let len = rng.gen_range(0..=8);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
        let word = FreeWord::new(&alg, CycElem::one(alg.field()), letters.clone()).map_err(fail)?;
        let reference = word.normal_form();
        for _ in 0..20 {
            let nf = word.normal_form_by(|d| rng.gen_range(0..d.len()));
            ensure(nf == reference, || {
                format!("word {k} {letters:?}: {nf} != {reference}")
            })?;
        }
    }
    Ok("200 words, 20 random swap orders each, identical normal forms".to_string())
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let start = Instant::now();
    let results = [
        run(1, "witness coefficient", s(10), witness_factorials),
        run(2, "normal-form slope", s(5), normal_form_slope),
        run(3, "quantum growth", s(30), quantum_growth),
        run(4, "central powers", s(10), central_powers),
        run(5, "power embeddings", s(10), power_embeddings),
        run(6, "center equivalence", s(20), center_equivalence),
        run(7, "twisted-ring axioms", s(30), twisted_axioms),
        run(8, "field layer", s(30), field_layer),
        run(9, "cyclotomic tower", s(30), cyclotomic_tower),
        run(10, "unbounded degree", s(30), unbounded_degree_shadow),
        run(11, "rewriting confluence", s(30), rewriting_confluence),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    let total_ok = start.elapsed() <= s(120);
    println!(
        "{passed}/{} criteria passed in {:.2?} (suite limit 120 s)",
        results.len(),
        start.elapsed()
    );
    if passed == results.len() && total_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
