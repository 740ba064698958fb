//! Acceptance suite. Runs without the libtest harness so that each criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, ToPrimitive};

use fihl_core::character::{perm_char_hom, ClassFunction};
use fihl_core::conjecture::{conjecture_report, CellStatus};
use fihl_core::crit::{
    codec_domain, crit_pair, crit_set, dagger_dual, decode, encode, m_set_checked, CritPair,
};
use fihl_core::koszul::{chain_dim, chain_mults, homology_decomposition, lower_bound_failures, schur_dim_check, ChainComplex};
use fihl_core::linalg::{rational, RankPolicy, Rational};
use fihl_core::partition::{partitions_of, Partition};
use fihl_core::tableau::dim_irrep;
use fihl_core::theta::{contexts, plus_reduction, tspec, theta_exact, ThetaContext};
use fihl_core::transfer::{devissage_ses, h0_computed, h0_predicted, hom_pairs};
use fihl_core::young_form::oracle_full;

/// `|θ_exact - θ_oracle|` bound for the double-precision oracle.
const THETA_ORACLE_TOL: f64 = 1e-8;
/// Numeric invariance defects of `Y` and `Σ (1, i) Y`.
const INVARIANCE_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(parts: &[usize]) -> Partition {
    Partition::of(parts)
}

fn criterion_1() -> Outcome {
    let policy = RankPolicy::modular();
    let mut cells = 0;
    for a in 1..=6 {
        for b in 1..=6 {
            let got = h0_computed(a, b, policy).map_err(|e| format!("({a},{b}): {e}"))?;
            let want = h0_predicted(a, b);
            check(got == want, || format!("({a},{b}): computed {} vs predicted {}", got.to_json(), want.to_json()))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells, coker Tr = prediction"))
}

fn criterion_2() -> Outcome {
    let one = Rational::one();
    let mut checked = 0;
    for b in 1..=8 {
        for ctx in contexts(b) {
            let theta = theta_exact(&ctx).map_err(|e| e.to_string())?;
            let t = tspec(&ctx);
            let expected = match ctx.gap() {
                0 => one.clone(),
                1 => &one + rational(1, t.r(1).unwrap()),
                2 => (&one + rational(1, t.r(1).unwrap())) * (&one + rational(1, t.axial(3, 1).unwrap())),
                _ => continue,
            };
            check(theta == expected, || format!("{ctx}: θ = {theta}, expected {expected}"))?;
            checked += 1;
        }
    }
    for n in 2..=8usize {
        let ctx = ThetaContext::new(p(&[n, n - 1]), p(&[n]), p(&[n - 1])).map_err(|e| e.to_string())?;
        let theta = theta_exact(&ctx).map_err(|e| e.to_string())?;
        check(theta == rational(1, n as i64), || format!("two-row n = {n}: θ = {theta}"))?;
    }
    Ok(format!("{checked} contexts with b - a <= 2, two-row family n = 2..8"))
}

fn criterion_3() -> Outcome {
    let mut positive = 0;
    let mut worst: f64 = 0.0;
    let mut oracle_count = 0;
    for b in 1..=8 {
        for ctx in contexts(b) {
            let theta = theta_exact(&ctx).map_err(|e| format!("{ctx}: {e}"))?;
            positive += 1;
            if b <= 7 {
                let o = oracle_full(&ctx).map_err(|e| e.to_string())?;
                let err = (o.theta - theta.to_f64().unwrap()).abs();
                check(err <= THETA_ORACLE_TOL, || format!("{ctx}: exact {theta}, oracle {}", o.theta))?;
                check(o.y_defect <= INVARIANCE_TOL && o.sum_defect <= INVARIANCE_TOL, || {
                    format!("{ctx}: invariance defects {} {}", o.y_defect, o.sum_defect)
                })?;
                worst = worst.max(err);
                oracle_count += 1;
            }
            if let Ok((plus, factor)) = plus_reduction(&ctx) {
                let rhs = factor * theta_exact(&plus).map_err(|e| e.to_string())?;
                check(rhs == theta, || format!("{ctx}: reduction gives {rhs}, θ = {theta}"))?;
            }
        }
    }
    Ok(format!(
        "{positive} contexts positive (b <= 8), {oracle_count} oracle comparisons (b <= 7), max error {worst:.1e}"
    ))
}

fn all_partitions_upto(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

fn criterion_4() -> Outcome {
    let parts = all_partitions_upto(7);
    let mut pairs = 0;
    let mut nonempty = 0;
    for l in &parts {
        for m in &parts {
            let set = m_set_checked(l, m).map_err(|e| e.to_string())?;
            pairs += 1;
            let meet = l.meet(m);
            check(set.is_empty() != set.members.contains(&meet), || {
                format!("({l}, {m}): nonempty iff λ ∩ μ ∈ 𝔐 fails")
            })?;
            if let Some(floor) = &set.floor {
                nonempty += 1;
                let k = meet.size() - floor.size();
                check(set.len() == 1 << k, || format!("({l}, {m}): |𝔐| = {}, expected 2^{k}", set.len()))?;
            }
        }
    }
    Ok(format!("{pairs} pairs, {nonempty} nonempty, brute = interval, |𝔐| = 2^k"))
}

fn criterion_5() -> Outcome {
    let listed: [(&[usize], &[usize], usize); 7] = [
        (&[1, 1], &[1], 0),
        (&[3], &[4], 1),
        (&[2, 1, 1], &[3, 1], 1),
        (&[2, 1, 1], &[3, 2], 2),
        (&[3, 2], &[4], 1),
        (&[3, 3], &[4], 1),
        (&[2, 2, 2], &[3, 3], 2),
    ];
    for (l, m, deg) in listed {
        let pair = crit_pair(&p(l), &p(m)).map_err(|e| e.to_string())?;
        check(pair.degree == deg, || format!("({l:?}, {m:?}) has degree {}", pair.degree))?;
    }

    let domain = codec_domain(10);
    for (g, d) in &domain {
        let pair = encode(g, d).map_err(|e| e.to_string())?;
        let back = decode(&pair).map_err(|e| e.to_string())?;
        check(&back == &(g.clone(), d.clone()), || format!("decode(encode({g}, {d})) = {back:?}"))?;
    }
    let mut crit_total = 0;
    for total in 0..=10 {
        for a in 0..=total {
            for pair in crit_set(a, total - a) {
                let (g, d) = decode(&pair).map_err(|e| e.to_string())?;
                let again = encode(&g, &d).map_err(|e| e.to_string())?;
                check(again == pair, || format!("encode(decode({pair:?})) = {again:?}"))?;
                check(d.is_empty() == pair.mu.leq(&pair.lambda), || format!("{pair:?}: δ = {d}"))?;
                check(g.is_empty() == pair.lambda.leq(&pair.mu), || format!("{pair:?}: γ = {g}"))?;
                crit_total += 1;
            }
        }
    }

    let mut dual_pairs = 0;
    for a in 0..=8 {
        for b in 0..=8 {
            let here: BTreeSet<CritPair> = crit_set(a, b).into_iter().collect();
            let there: BTreeSet<CritPair> = crit_set(b, a).into_iter().collect();
            let image: BTreeSet<CritPair> = here.iter().map(dagger_dual).collect();
            check(image == there, || format!("† does not map crit({a},{b}) onto crit({b},{a})"))?;
            check(here.iter().all(|x| dagger_dual(&dagger_dual(x)) == *x), || "† is not an involution".into())?;
            dual_pairs += here.len();
        }
    }
    Ok(format!(
        "7 listed pairs, codec round trips on {} inputs and {crit_total} critical pairs with a + b <= 10, † bijective on {dual_pairs} pairs",
        domain.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut complexes = 0;
    for a in 0..=6 {
        for b in 0..=6 {
            let c = ChainComplex::new(a, b).map_err(|e| format!("({a},{b}): {e}"))?;
            for n in 2..=a {
                let dd = c.d(n - 1).unwrap().mul(c.d(n).unwrap()).map_err(|e| e.to_string())?;
                check(dd.is_zero(), || format!("({a},{b}): d_{} d_{n} ≠ 0", n - 1))?;
            }
            for (n, &dim) in c.dims().iter().enumerate() {
                check(dim as u128 == chain_dim(a, b, n), || format!("({a},{b}): dim C_{n} = {dim}"))?;
            }
            if a >= 1 && a <= b {
                check(c.d1_matches_transfer().map_err(|e| e.to_string())?, || {
                    format!("({a},{b}): d_1 ≠ Tr")
                })?;
            }
            if a <= 5 && b <= 5 {
                for n in 0..=a {
                    let by_char = c.chain_character(n).decompose().map_err(|e| e.to_string())?;
                    check(by_char == chain_mults(a, b, n), || format!("({a},{b}) degree {n}: chain multiplicities"))?;
                }
            }
            complexes += 1;
        }
    }
    Ok(format!("{complexes} complexes: d² = 0, dimensions, d_1 = Tr, chain multiplicities"))
}

fn criterion_7() -> Outcome {
    let policy = RankPolicy::modular();
    let (mut matched, mut strict) = (0, 0);
    for a in 0..=5 {
        for b in 0..=5 {
            let homology = homology_decomposition(a, b, policy).map_err(|e| format!("({a},{b}): {e}"))?;
            let failures = lower_bound_failures(&homology);
            check(failures.is_empty(), || format!("({a},{b}): critical pairs missing {failures:?}"))?;
            check(homology.degree(0) == h0_predicted(a, b), || format!("({a},{b}): H_0 differs"))?;
            let report = conjecture_report(a, b, policy).map_err(|e| e.to_string())?;
            check(report.status != CellStatus::Violation, || format!("({a},{b}): VIOLATION"))?;
            check(report.degree0_equal && report.euler_holds, || format!("({a},{b}): degree 0 or Euler identity fails"))?;
            match report.status {
                CellStatus::Match => matched += 1,
                _ => strict += 1,
            }
        }
    }
    Ok(format!(
        "36 cells: inclusion, H_0 and Euler identity hold; conjecture status {matched} match, {strict} strict-inclusion"
    ))
}

fn criterion_8() -> Outcome {
    let mut cells = 0;
    for a in 0..=5 {
        for b in 1..=5 {
            let r = devissage_ses(a, b).map_err(|e| e.to_string())?;
            check(r.all_checks(), || format!("({a},{b}): {r:?}"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells exact, split, equivariant, natural"))
}

fn criterion_9() -> Outcome {
    for n in 0..=8 {
        let parts = partitions_of(n);
        let chars: Vec<ClassFunction> = parts.iter().map(|l| ClassFunction::irreducible(l, &Partition::empty())).collect();
        for (i, x) in chars.iter().enumerate() {
            for (j, y) in chars.iter().enumerate() {
                let want = if i == j { Rational::one() } else { rational(0, 1) };
                check(x.inner(y) == want, || format!("⟨χ^{}, χ^{}⟩ = {}", parts[i], parts[j], x.inner(y)))?;
            }
        }
    }
    for n in 0..=10usize {
        let total: u128 = partitions_of(n).iter().map(|l| dim_irrep(l).pow(2)).sum();
        let fact: u128 = (1..=n as u128).product();
        check(total == fact, || format!("Σ f² = {total} ≠ {n}!"))?;
    }
    for b in 0..=7usize {
        for a in 0..=b {
            let table = perm_char_hom(a, b).and_then(|c| c.decompose()).map_err(|e| e.to_string())?;
            check(table.all_multiplicity_one(), || format!("hom({a},{b}) not multiplicity free"))?;
            check(table == hom_pairs(a, b), || format!("hom({a},{b}) constituents differ"))?;
            let falling: i128 = ((b - a + 1)..=b).map(|x| x as i128).product();
            check(table.dimension() == falling, || format!("hom({a},{b}) dimension {}", table.dimension()))?;
        }
    }
    Ok("orthogonality n <= 8, Σ f² = n! n <= 10, hom(a,b) multiplicity free with dimension b!/(b-a)! for a <= b <= 7".into())
}

fn criterion_10() -> Outcome {
    let mut cases = 0;
    for b in 0..=7 {
        for a in 0..=b {
            for v in 1..=4 {
                for w in 1..=4 {
                    check(schur_dim_check(a, b, v, w), || format!("(a,b,v,w) = ({a},{b},{v},{w})"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} dimension identities"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("H_0 = coker Tr matches the prediction, 1 <= a, b <= 6", criterion_1),
        ("θ closed forms", criterion_2),
        ("θ positivity, reduction identity and numeric oracle", criterion_3),
        ("𝔐(λ, μ) structure, |λ|, |μ| <= 7", criterion_4),
        ("critical pairs, codec and † duality", criterion_5),
        ("Koszul complexes, a, b <= 6", criterion_6),
        ("homology lower bound, H_0 and Euler identity, a, b <= 5", criterion_7),
        ("dévissage sequence, a, b <= 5", criterion_8),
        ("representation theory substrate", criterion_9),
        ("Schur functor dimension identity", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
