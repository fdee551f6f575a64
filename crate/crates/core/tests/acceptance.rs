//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the verdict lines are never
//! swallowed by output capture. Exits non-zero on any unexpected verdict.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use leadrace::cli::verify;
use leadrace::exact::{self, GenericSet, Path};
use leadrace::rational::{binomial, int, ratio, to_f64, to_fraction_string};
use leadrace::reference;
use leadrace::simulate::{self, Confidence, DistributionSpec, EventSpec, Outcome, TIE_RATE_LIMIT};
use leadrace::{Rational, Result};
use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

const SEED: u64 = 0x5eed_2026;
const CI: Confidence = Confidence::P999;

/// Criteria that cannot hold as specified; each still runs and must still
/// fail, so a change in behaviour is noticed.
const EXPECTED_RED: &[u32] = &[11];

type Verdict = Result<(bool, String)>;
type Criterion = (u32, &'static str, fn() -> Verdict);

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sets = 0;
    for n in 1..=7usize {
        let want = reference::ballot_signed_perm_count(n as u64)?;
        for _ in 0..20 {
            let set = exact::random_generic_set(n, &mut rng)?;
            let got = BigInt::from(exact::count_ballot_signed_perms(&set)?);
            if got != want {
                return Ok((false, format!("{set}: {got} != {want}")));
            }
            sets += 1;
        }
    }
    Ok((true, format!("{sets} sets, all equal n!C(2n,n)/2^n")))
}

fn criterion_2() -> Verdict {
    let set = GenericSet::certify(vec![ratio(7, 2), int(3), int(1)])?;
    let target = ratio(1, 2);
    let walk = exact::collision_walk(&set, &target)?;
    let end_ok = walk.last().map(|s| s.values()[0] == target).unwrap_or(false);
    let rows = verify::collision_walk_report(&set, &target)?;
    let sizes: Vec<u64> = rows.iter().map(|r| r["image_size"].as_u64().unwrap_or(0)).collect();
    let ok = end_ok && !sizes.is_empty() && sizes.iter().all(|&s| s == 15);
    Ok((ok, format!("{} hops, image sizes {sizes:?}, round trips verified", rows.len())))
}

fn criterion_3() -> Verdict {
    let src: Path = "UUDUDDDDUUDUUUDD".parse()?;
    let img = exact::updown_bijection_to_nonneg(&src)?;
    if img.to_string() != "UUDUDDUUDUUUUUDD" {
        return Ok((false, format!("worked example gave {img}")));
    }
    for n in 0..=8u64 {
        let len = 2 * n as usize;
        let (mut balanced, mut nonneg) = (BTreeSet::new(), BTreeSet::new());
        for mask in 0..(1u64 << len) {
            let p = Path::from_mask(mask, len);
            if p.end_height() == 0 {
                let q = exact::updown_bijection_to_nonneg(&p)?;
                if !q.stays_nonneg() || exact::updown_bijection_to_endzero(&q)? != p {
                    return Ok((false, format!("forward round trip fails at {p}")));
                }
                balanced.insert(q.to_string());
            }
            if p.stays_nonneg() {
                let q = exact::updown_bijection_to_endzero(&p)?;
                if q.end_height() != 0 || exact::updown_bijection_to_nonneg(&q)? != p {
                    return Ok((false, format!("inverse round trip fails at {p}")));
                }
                nonneg.insert(q.to_string());
            }
        }
        let c = binomial(2 * n, n);
        if BigInt::from(balanced.len()) != c || BigInt::from(nonneg.len()) != c {
            return Ok((false, format!("n={n}: {} / {} images, want {c}", balanced.len(), nonneg.len())));
        }
    }
    Ok((true, "worked example exact; round trips and C(2n,n) counts for length <= 16".into()))
}

fn criterion_4() -> Verdict {
    for n in 1..=8u64 {
        let len = 2 * n as usize;
        let eligible = 1u64 << (len - 1);
        let mut good = 0u64;
        for rest in 0..eligible {
            let p = Path::from_mask(rest << 1 | 1, len);
            let m = exact::contract_to_motzkin(&p)?;
            if p.stays_nonneg() != m.stays_nonneg() {
                return Ok((false, format!("{p} -> {m} disagrees on nonnegativity")));
            }
            good += u64::from(p.stays_nonneg());
        }
        let frac = Rational::new(good.into(), eligible.into());
        let want = Rational::new(binomial(2 * n, n), eligible.into());
        if frac != want {
            return Ok((false, format!("n={n}: {frac} != {want}")));
        }
    }
    Ok((true, "equivalence and C(2n,n)/2^(2n-1) for n <= 8".into()))
}

fn criterion_5() -> Verdict {
    for n in 1..=12u64 {
        let got = exact::majorization_probability_exact(n)?;
        let want = Rational::new(binomial(2 * n, n), BigInt::from(1u64) << (2 * n - 1));
        if got != want {
            return Ok((false, format!("n={n}: {got} != {want}")));
        }
    }
    Ok((true, "exact for n <= 12".into()))
}

fn criterion_6() -> Verdict {
    let ballot = verify::ballot_dp_mismatches(20);
    let walk = verify::walk_dp_mismatches(16);
    let ok = ballot.is_empty() && walk.is_empty();
    Ok((ok, format!("ballot mismatches {ballot:?}, walk mismatches {walk:?}")))
}

fn criterion_7() -> Verdict {
    let dists = [
        DistributionSpec::Uniform { lo: 0.0, hi: 1.0 },
        DistributionSpec::Exponential { rate: 1.0 },
        DistributionSpec::Normal { mean: 0.0, sd: 1.0 },
        DistributionSpec::LogNormal { log_mean: 0.0, log_sd: 1.0 },
        DistributionSpec::Normal { mean: 10.0, sd: 3.0 },
    ];
    let mut misses = Vec::new();
    let mut max_tie_rate = 0f64;
    for (d, dist) in dists.iter().enumerate() {
        for n in 1..=6u64 {
            let e = simulate::estimate_probability(EventSpec::LeadAllTheWay, dist, n as usize, 1_000_000, SEED + d as u64)?;
            max_tie_rate = max_tie_rate.max(e.tie_rate());
            if !e.contains(&reference::lead_prob(n)?, CI) || e.tie_rate() >= TIE_RATE_LIMIT {
                let (lo, hi) = e.interval(CI);
                misses.push(format!("{dist} n={n}: [{lo:.6}, {hi:.6}]"));
            }
        }
    }
    Ok((misses.is_empty(), format!("30 estimates, misses {misses:?}, max tie rate {max_tie_rate:e}")))
}

fn criterion_8() -> Verdict {
    let exp = DistributionSpec::Exponential { rate: 1.0 };
    for i in 0..100_000u64 {
        let t = simulate::sample_race(&exp, 4, SEED, i)?;
        let lead = simulate::evaluate_event(&t, EventSpec::LeadAllTheWay) == Outcome::Success;
        if lead != simulate::signs_nonneg(&simulate::ownership_signs(&t)?) {
            return Ok((false, format!("equivalence fails on trace {i}")));
        }
    }
    let mut misses = Vec::new();
    for pattern in 0..16u32 {
        let e = simulate::estimate_trials("ownership_pattern", exp.to_string(), 2, 1_000_000, SEED + 1, |i| {
            let t = simulate::sample_race(&exp, 4, SEED + 1, i)?;
            let signs = simulate::leading_ownership(&t, 4)?;
            let code = signs.iter().enumerate().fold(0u32, |acc, (k, &s)| acc | (u32::from(s > 0) << k));
            Ok(if code == pattern { Outcome::Success } else { Outcome::Failure })
        })?;
        if !e.contains(&ratio(1, 16), CI) {
            misses.push(format!("pattern {pattern:04b}: {:.5}", e.point));
        }
    }
    Ok((misses.is_empty(), format!("10^5 traces equivalent; 16 patterns vs 1/16, misses {misses:?}")))
}

fn criterion_9() -> Verdict {
    let dists = [DistributionSpec::Exponential { rate: 1.0 }, DistributionSpec::Uniform { lo: 0.0, hi: 1.0 }];
    let mut misses = Vec::new();
    for (d, dist) in dists.iter().enumerate() {
        for m in 1..=5usize {
            let seed = SEED + 10 * d as u64;
            let e = simulate::estimate_trials("tied_dominance", dist.to_string(), m, 1_000_000, seed, |i| {
                simulate::tied_dominance_trial(m, dist, seed, i)
            })?;
            if !e.contains(&ratio(1, m as i64 + 1), CI) {
                misses.push(format!("{dist} m={m}: {:.5}", e.point));
            }
        }
    }
    let catalan_ok = (1..=12u64).all(|m| exact::dominance_count(m).map(BigInt::from).ok() == Some(reference::catalan(m)));
    // race length m + 1 with a tie at the end: the cycle-lemma value 1/(m + 1)
    let tied_ok = (1..=5u64).all(|m| reference::tied_lead_prob(m + 1).ok() == Some(ratio(1, m as i64 + 1)));
    Ok((
        misses.is_empty() && catalan_ok && tied_ok,
        format!("misses {misses:?}; dominance_count = Catalan for m <= 12: {catalan_ok}; tied_lead_prob agrees: {tied_ok}"),
    ))
}

fn criterion_10() -> Verdict {
    let dist = DistributionSpec::LogNormal { log_mean: 0.0, log_sd: 1.0 };
    let mut disagree = 0u64;
    for i in 0..100_000u64 {
        let n = 1 + (i % 6) as usize;
        if simulate::multiplicative_race_trial(&dist, n, SEED, i)? != simulate::additive_log_race_trial(&dist, n, SEED, i)? {
            disagree += 1;
        }
    }
    let e = simulate::estimate_trials("multiplicative_lead", dist.to_string(), 4, 1_000_000, SEED, |i| {
        simulate::multiplicative_race_trial(&dist, 4, SEED, i)
    })?;
    let (lo, hi) = e.interval(CI);
    let ok = disagree == 0 && e.contains(&ratio(35, 128), CI);
    Ok((ok, format!("{disagree} disagreements in 10^5 pairs; n=4 CI [{lo:.5}, {hi:.5}] vs 35/128")))
}

fn criterion_11() -> Verdict {
    let exp = DistributionSpec::Exponential { rate: 1.0 };
    let pow3 = DistributionSpec::PowersOfThree { max_exponent: 40, noise: 0.0 };
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=4u64 {
        let e = simulate::estimate_probability(EventSpec::Alternation, &exp, n as usize, 1_000_000, SEED)?;
        let want = reference::alternation_exponential_prob(n)?;
        let hit = e.contains(&want, CI);
        ok &= hit;
        // diagnostic only: the memoryless argument gives 1/2 * (1/4)^(n-1)
        let derived = Rational::new(2.into(), BigInt::from(1u64) << (2 * n));
        notes.push(format!(
            "exp n={n} {:.5} vs {} {} (vs 2/4^n {})",
            e.point,
            to_fraction_string(&want),
            mark(hit),
            mark(e.contains(&derived, CI))
        ));
    }
    for n in 1..=3u64 {
        let e = simulate::estimate_probability(EventSpec::Alternation, &pow3, n as usize, 1_000_000, SEED)?;
        let want = exact::alternation_rank_oracle(n)?;
        let hit = e.contains(&want, CI);
        ok &= hit;
        let (lo, hi) = e.interval(CI);
        notes.push(format!(
            "pow3 n={n} [{lo:.5}, {hi:.5}] vs {} ties {:.4} {} (tie-free share {:.5})",
            to_fraction_string(&want),
            e.tie_rate(),
            mark(hit),
            e.successes as f64 / (e.trials - e.ties) as f64
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn criterion_12() -> Verdict {
    let r = reference::lead_prob_asymptotic_ratio(400)?;
    let direct = to_f64(&reference::lead_prob(400)?) * (400.0 * std::f64::consts::PI).sqrt();
    Ok(((0.98..=1.02).contains(&r) && (r - direct).abs() < 1e-12, format!("lead_prob(400)*sqrt(400 pi) = {r:.6}")))
}

fn mark(hit: bool) -> &'static str {
    if hit {
        "ok"
    } else {
        "miss"
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "ballot count invariance over random generic sets", criterion_1),
        (2, "collision bijection {7/2,3,1} -> 1/2", criterion_2),
        (3, "up-down path bijection", criterion_3),
        (4, "motzkin contraction", criterion_4),
        (5, "majorization probability", criterion_5),
        (6, "ballot and conditioned-walk formulas vs DP", criterion_6),
        (7, "distribution invariance of the lead probability", criterion_7),
        (8, "ownership sequences", criterion_8),
        (9, "tied variant", criterion_9),
        (10, "multiplicative race", criterion_10),
        (11, "alternation designs", criterion_11),
        (12, "asymptotic ratio", criterion_12),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        let expected_red = EXPECTED_RED.contains(&id);
        let verdict = if pass { "PASS" } else { "FAIL" };
        let note = match (pass, expected_red) {
            (false, true) => " (expected: see decisions ledger)",
            (true, true) => " (UNEXPECTED: listed as expected red)",
            _ => "",
        };
        println!("{verdict} criterion {id:>2}: {name} [{secs:.1}s]{note} -- {detail}");
        if pass == expected_red {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected verdict(s)");
        ExitCode::FAILURE
    }
}
