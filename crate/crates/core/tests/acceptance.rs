//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//!     cargo test -p casson-core --test acceptance

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use casson::growth::random_word;
use casson::words::{MIXED_TABLE_JSON, NU_TABLE_JSON};
use casson::*;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g(n: u32) -> Genus {
    Genus::new(n).unwrap()
}

fn table(json: &str) -> GeneratorTable {
    GeneratorTable::from_json(json).unwrap()
}

/// Σ_{i=1}^{n} λ1 + 2 Σ_{i=1}^{n-1} (n-i), term by term.
fn nu_power_oracle(n: i64, lambda1: i64) -> i64 {
    (1..=n).map(|_| lambda1).sum::<i64>() + (1..n).map(|i| 2 * (n - i)).sum::<i64>()
}

/// δ_f(ν, νᵐ) = m for 1 ≤ m ≤ 1000 in under a second at g = 3.
fn paired_power_identity() -> Outcome {
    let t = GeneratorTable::nu(g(3), 0).unwrap();
    let s = Splitting::standard(t.genus());
    let nu = t.letter("nu").unwrap();
    let tau_nu = tau_of_word(&Word::power(nu, 1), &t).unwrap();
    let start = Instant::now();
    for m in 1..=1000i64 {
        let tau_m = tau_of_word(&Word::power(nu, m), &t).unwrap();
        let d = delta_f(&tau_nu, &tau_m, &s).unwrap();
        check(d == m, || format!("δ_f(ν, ν^{m}) = {d}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("1000 powers in {elapsed:?}"))
}

/// λ(νⁿ) = nλ1 + n(n-1) for n ≤ 10⁴, λ1 ∈ {0, 7, -3}; naive cross-check up
/// to 500; λ(ν¹⁰⁰)/100² = 99/100.
fn lower_bound_family() -> Outcome {
    let s = Splitting::standard(g(3));
    for lambda1 in [0i64, 7, -3] {
        let t = GeneratorTable::nu(g(3), lambda1).unwrap();
        let nu = t.letter("nu").unwrap();
        for n in 1..=10_000i64 {
            let w = Word::power(nu, n);
            let closed = n * lambda1 + n * (n - 1);
            let fast = accumulate_fast(&w, &t, &s).unwrap();
            check(fast == closed, || {
                format!("fast λ(ν^{n}) = {fast}, expected {closed} (λ1 = {lambda1})")
            })?;
            if n <= 500 {
                let naive = accumulate_naive(&w, &t, &s).unwrap();
                check(naive == fast, || {
                    format!("naive {naive} ≠ fast {fast} at n = {n}")
                })?;
                let oracle = nu_power_oracle(n, lambda1);
                check(oracle == closed, || {
                    format!("summation oracle {oracle} at n = {n}")
                })?;
            }
        }
    }
    let rec = &nu_family(100, 0, g(3)).unwrap()[99];
    check(rec.lambda == 9900, || format!("λ(ν¹⁰⁰) = {}", rec.lambda))?;
    check(rec.ratio == Ratio { num: 99, den: 100 }, || {
        format!("ratio {:?}", rec.ratio)
    })?;
    Ok("3 × 10⁴ exact values, naive agrees to n = 500, λ(ν¹⁰⁰)/100² = 99/100".into())
}

/// 10,000 seeded random words, lengths ≤ 500, over the ν table and the
/// mixed table: every link of the chain holds.
fn upper_bound_certification() -> Outcome {
    let tables = [table(NU_TABLE_JSON), table(MIXED_TABLE_JSON)];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut worst = (0u64, 0u64);
    for i in 0..10_000 {
        let t = &tables[i % 2];
        let s = Splitting::standard(t.genus());
        let len = rng.random_range(0..=500);
        let w = random_word(t, len, &mut rng);
        let r = certify_bound(&w, t, &s).map_err(|e| format!("word {i} (length {len}): {e}"))?;
        check(
            r.lambda.unsigned_abs() <= r.term_sum
                && r.term_sum <= r.per_step_bound
                && r.per_step_bound <= r.quadratic_bound,
            || format!("word {i}: chain out of order {r:?}"),
        )?;
        if r.lambda.unsigned_abs() * worst.1.max(1) > worst.0 * r.quadratic_bound.max(1) {
            worst = (r.lambda.unsigned_abs(), r.quadratic_bound);
        }
    }
    Ok(format!(
        "10000 words certified, tightest |λ|/Cn² = {}/{}",
        worst.0, worst.1
    ))
}

/// Word-level composition law for both accumulators, plus w·w⁻¹ ↦ 0.
fn telescoping_composition() -> Outcome {
    let t = table(MIXED_TABLE_JSON);
    let s = Splitting::standard(t.genus());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for i in 0..1000 {
        let u = random_word(&t, rng.random_range(0..=120), &mut rng);
        let v = random_word(&t, rng.random_range(0..=120), &mut rng);
        let cross = 2 * delta_f(
            &tau_of_word(&u, &t).unwrap(),
            &tau_of_word(&v, &t).unwrap(),
            &s,
        )
        .unwrap();
        let uv = u.concat(&v);
        for (name, acc) in [
            (
                "fast",
                accumulate_fast as fn(&Word, &GeneratorTable, &Splitting) -> casson::Result<i64>,
            ),
            ("naive", accumulate_naive),
        ] {
            let lhs = acc(&uv, &t, &s).unwrap();
            let rhs = acc(&u, &t, &s).unwrap() + acc(&v, &t, &s).unwrap() + cross;
            check(lhs == rhs, || format!("pair {i} ({name}): {lhs} ≠ {rhs}"))?;
        }
    }
    for i in 0..1000 {
        let w = random_word(&t, rng.random_range(0..=250), &mut rng);
        let ww = w.concat(&w.inverse());
        let fast = accumulate_fast(&ww, &t, &s).unwrap();
        let naive = accumulate_naive(&ww, &t, &s).unwrap();
        check(fast == 0 && naive == 0, || {
            format!("w·w⁻¹ #{i}: fast {fast}, naive {naive}")
        })?;
    }
    Ok("1000 pairs × 2 accumulators, 1000 w·w⁻¹".into())
}

/// |δ_f(u,v)| ≤ C(2g,3)·ℓ(u)·ℓ(v) on 10,000 random pairs, g ∈ {3,4,5}.
fn pairing_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut nonzero = 0;
    for i in 0..10_000 {
        let genus = g(3 + (i % 3) as u32);
        let s = Splitting::standard(genus);
        let u = random_pure_heavy(&mut rng, genus, 20);
        let v = random_pure_heavy(&mut rng, genus, 20);
        let d = delta_f(&u, &v, &s).unwrap();
        check(d == delta_oracle(&u, &v), || {
            format!("pair {i}: δ disagrees with oracle")
        })?;
        let bound = genus.wedge3_dim() * u.ell_norm() * v.ell_norm();
        check(d.unsigned_abs() <= bound, || {
            format!("pair {i}: |δ| = {} > {bound}", d.unsigned_abs())
        })?;
        nonzero += (d != 0) as usize;
    }
    Ok(format!("10000 pairs, {nonzero} with δ ≠ 0"))
}

/// δ_f unchanged under 200 random diag(A, (Aᵀ)⁻¹).
fn basis_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut moved = 0;
    for i in 0..200 {
        let gg = 3 + i % 3;
        let genus = g(gg as u32);
        let s = Splitting::standard(genus);
        let a = random_unimodular(&mut rng, gg, 10);
        let m = IntMatrix::splitting_preserving(&a).map_err(|e| format!("matrix {i}: {e}"))?;
        check(
            is_symplectic(&m, genus) && preserves_splitting(&m, &s),
            || format!("matrix {i} not admissible"),
        )?;
        let u = random_pure_heavy(&mut rng, genus, 8);
        let v = random_pure_heavy(&mut rng, genus, 8);
        let before = delta_oracle(&u, &v);
        // image side through the independent expansion oracle
        let to_tv = |d: &DenseTri| {
            let recs: Vec<[i64; 4]> = d
                .iter()
                .map(|(&(i, j, k), &c)| [i as i64 + 1, j as i64 + 1, k as i64 + 1, c])
                .collect();
            TriVector::from_records(genus, &recs).unwrap()
        };
        let after = delta_oracle(
            &to_tv(&induced_oracle(&m, &u)),
            &to_tv(&induced_oracle(&m, &v)),
        );
        check(before == after, || {
            format!("matrix {i}: oracle δ {before} → {after}")
        })?;
        let ok = splitting_invariance_check(&u, &v, &m, &s).unwrap();
        check(ok, || {
            format!("matrix {i}: splitting_invariance_check false")
        })?;
        if induced_map(&m, &u).unwrap() != u {
            moved += 1;
        }
    }
    Ok(format!("200 transformations ({moved} moved u)"))
}

/// wedge3 vs the dense expansion oracle; alternating and multilinear; ℓ axioms.
fn algebra_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for gg in [3, 4] {
        let genus = g(gg);
        for i in 0..1000 {
            let (a, a2, b, c) = (
                random_vector(&mut rng, genus, 5),
                random_vector(&mut rng, genus, 5),
                random_vector(&mut rng, genus, 5),
                random_vector(&mut rng, genus, 5),
            );
            let w = |x: &HomologyVector, y: &HomologyVector, z: &HomologyVector| {
                wedge3(x, y, z).unwrap()
            };
            let abc = w(&a, &b, &c);
            check(
                dense(&abc) == wedge_oracle(a.coeffs(), b.coeffs(), c.coeffs()),
                || format!("g={gg} #{i}: wedge ≠ oracle"),
            )?;
            let neg = abc.negate().unwrap();
            check(
                w(&b, &a, &c) == neg
                    && w(&a, &c, &b) == neg
                    && w(&c, &b, &a) == neg
                    && w(&b, &c, &a) == abc
                    && w(&c, &a, &b) == abc,
                || format!("g={gg} #{i}: not alternating"),
            )?;
            let sum = a.add(&a2).unwrap();
            let lhs = dense(&w(&sum, &b, &c));
            let rhs = dense_add(
                &dense(&abc),
                &wedge_oracle(a2.coeffs(), b.coeffs(), c.coeffs()),
                1,
            );
            check(lhs == rhs, || format!("g={gg} #{i}: not additive"))?;
            let n = rng.random_range(-7..=7);
            check(
                w(&a.scale(n).unwrap(), &b, &c) == abc.scale(n).unwrap(),
                || format!("g={gg} #{i}: not homogeneous"),
            )?;
        }
    }
    for i in 0..1000 {
        let genus = g(3 + (i % 3) as u32);
        let u = random_trivector(&mut rng, genus, 10, 1000);
        let v = random_trivector(&mut rng, genus, 10, 1000);
        let n = rng.random_range(-100..=100);
        check(
            u.add(&v).unwrap().ell_norm() <= u.ell_norm() + v.ell_norm(),
            || format!("#{i}: triangle inequality"),
        )?;
        check(
            u.scale(n).unwrap().ell_norm() == n.unsigned_abs() * u.ell_norm(),
            || format!("#{i}: homogeneity"),
        )?;
        check((u.ell_norm() == 0) == u.is_zero(), || {
            format!("#{i}: definiteness")
        })?;
        check(u.validate().is_ok(), || format!("#{i}: hygiene"))?;
    }
    Ok("2000 wedge triples, 1000 ℓ checks".into())
}

/// 10⁵ letters at g = 3 in under 2 s; fast = naive on words up to length 500.
fn performance_contract() -> Outcome {
    let mixed = table(MIXED_TABLE_JSON);
    let nu = table(NU_TABLE_JSON);
    let s = Splitting::standard(g(3));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);

    let long = random_word(&mixed, 100_000, &mut rng);
    let start = Instant::now();
    let lambda = accumulate_fast(&long, &mixed, &s).unwrap();
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(2), || {
        format!("10⁵ mixed letters took {elapsed:?}")
    })?;

    let nu_long = Word::power(nu.letter("nu").unwrap(), 100_000);
    let start = Instant::now();
    let nu_lambda = accumulate_fast(&nu_long, &nu, &s).unwrap();
    let nu_elapsed = start.elapsed();
    check(nu_elapsed < Duration::from_secs(2), || {
        format!("ν^100000 took {nu_elapsed:?}")
    })?;
    check(nu_lambda == 100_000 * 99_999, || {
        format!("λ(ν^100000) = {nu_lambda}")
    })?;

    // every word of length ≤ 3 over the mixed alphabet, ≤ 8 over {ν, ν⁻¹}
    let mut compared = 0;
    for (t, max_len) in [(&mixed, 3usize), (&nu, 8)] {
        let alphabet = t.alphabet();
        for len in 0..=max_len {
            let total = alphabet.len().pow(len as u32);
            for mut code in 0..total {
                let letters = (0..len)
                    .map(|_| {
                        let l = alphabet[code % alphabet.len()];
                        code /= alphabet.len();
                        l
                    })
                    .collect();
                let w = Word::new(letters);
                let (f, n) = (
                    accumulate_fast(&w, t, &s).unwrap(),
                    accumulate_naive(&w, t, &s).unwrap(),
                );
                check(f == n, || {
                    format!("fast {f} ≠ naive {n} on {:?}", w.to_expr(t))
                })?;
                compared += 1;
            }
        }
    }
    for i in 0..300 {
        let t = if i % 2 == 0 { &mixed } else { &nu };
        let w = random_word(t, rng.random_range(0..=500), &mut rng);
        let (f, n) = (
            accumulate_fast(&w, t, &s).unwrap(),
            accumulate_naive(&w, t, &s).unwrap(),
        );
        check(f == n, || format!("random word {i}: fast {f} ≠ naive {n}"))?;
        compared += 1;
    }
    Ok(format!(
        "10⁵ letters in {elapsed:?} (λ = {lambda}), ν^100000 in {nu_elapsed:?}; {compared} words fast = naive"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 paired-power identity", paired_power_identity),
        ("2 lower-bound family", lower_bound_family),
        ("3 upper-bound certification", upper_bound_certification),
        ("4 telescoping/composition law", telescoping_composition),
        ("5 pairing bound", pairing_bound),
        ("6 basis invariance", basis_invariance),
        ("7 algebra kernel", algebra_kernel),
        ("8 performance contract", performance_contract),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{:?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
