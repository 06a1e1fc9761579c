//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use descartes_core::certificates::{
    b12_gap_width, check_identity, cubic_discriminant, run_certificate, CertificateSpec,
    CubicTriple, IDENTITY_IDS, SAMPLED_IDS,
};
use descartes_core::classifier::{
    audit_search, classify_family, classify_one, supported_patterns, theorem_rule_engine,
    ClassificationEntry, ClassifyOptions, RuleId, Status,
};
use descartes_core::constructor::{concatenate, concatenated_couple, ConcatParams, Witness};
use descartes_core::rational::{int, rat};
use descartes_core::search::{search_realization, SearchSpec};
use descartes_core::signs::{enumerate_couples, TripleCode};
use descartes_core::{sign_pattern, Error, Rational, RootConfiguration, SignPattern};
use num::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn pattern(blocks: &[usize]) -> SignPattern {
    SignPattern::from_blocks(blocks).unwrap()
}

fn code(e: &ClassificationEntry) -> TripleCode {
    e.couple.triple_code().unwrap()
}

fn deciding(e: &ClassificationEntry) -> Option<RuleId> {
    e.rule.as_ref().map(|d| d.deciding_rule())
}

fn timed_family(blocks: &[usize]) -> Result<(Vec<ClassificationEntry>, Duration), String> {
    let t = Instant::now();
    let entries = classify_family(&pattern(blocks), &ClassifyOptions::default())
        .map_err(|e| e.to_string())?;
    Ok((entries, t.elapsed()))
}

fn verified_realizable(entries: &[ClassificationEntry]) -> Result<usize, String> {
    let mut n = 0;
    for e in entries.iter().filter(|e| e.status == Status::Realizable) {
        let w = e.witness.as_ref().ok_or(format!("{} has no witness", e.couple))?;
        check(w.realizes(&e.couple) && w.reverify(), format!("{} witness does not verify", e.couple))?;
        n += 1;
    }
    Ok(n)
}

fn count(entries: &[ClassificationEntry], status: Status, rule: Option<RuleId>) -> usize {
    entries
        .iter()
        .filter(|e| e.status == status && rule.is_none_or(|r| deciding(e) == Some(r)))
        .count()
}

const TWO_MINUTES: Duration = Duration::from_secs(120);

fn criterion_1() -> Verdict {
    let (t, took) = timed_family(&[3, 2, 2])?;
    check(t.len() == 15, format!("{} entries", t.len()))?;
    let real = verified_realizable(&t)?;
    check(real == 11, format!("{real} realizable"))?;
    let t1p3 = count(&t, Status::NonRealizable, Some(RuleId::T1P3));
    check(t1p3 == 4, format!("{t1p3} non-realizable by T1P3"))?;
    check(took < TWO_MINUTES, format!("took {took:?}"))?;
    Ok(format!("15 entries, 11 verified witnesses, 4 T1P3, {took:.2?}"))
}

fn criterion_2() -> Verdict {
    let (t, took) = timed_family(&[4, 2, 2])?;
    check(t.len() == 21, format!("{} entries", t.len()))?;
    let real = verified_realizable(&t)?;
    check(real == 11, format!("{real} realizable"))?;
    let t1p1 = count(&t, Status::NonRealizable, Some(RuleId::T1P1));
    let t1p3 = count(&t, Status::NonRealizable, Some(RuleId::T1P3));
    check((t1p1, t1p3) == (6, 4), format!("T1P1 {t1p1}, T1P3 {t1p3}"))?;
    let candidates = t.iter().filter(|e| code(e).u + code(e).v <= 4).count();
    check(candidates == 15, format!("{candidates} triples with u+v <= 4"))?;
    check(took < TWO_MINUTES, format!("took {took:?}"))?;
    Ok(format!("21 entries, 11 realizable, 6 T1P1 + 4 T1P3, 15 candidates, {took:.2?}"))
}

fn criterion_3() -> Verdict {
    let (t, took) = timed_family(&[2, 4, 2])?;
    check(t.len() == 21, format!("{} entries", t.len()))?;
    let real = verified_realizable(&t)?;
    check(real == 9, format!("{real} realizable"))?;
    for e in t.iter().filter(|e| e.status == Status::Realizable) {
        check(
            e.provenance.contains("triple concatenation"),
            format!("{} built by {}", e.couple, e.provenance),
        )?;
    }
    let t2p2 = count(&t, Status::NonRealizable, Some(RuleId::T2P2));
    check(t2p2 == 12, format!("{t2p2} T2P2"))?;
    check(took < TWO_MINUTES, format!("took {took:?}"))?;
    Ok(format!("9 realizable by concatenation, 12 T2P2, {took:.2?}"))
}

fn criterion_4() -> Verdict {
    let (forward, _) = timed_family(&[4, 2, 2])?;
    let (reversed, _) = timed_family(&[2, 2, 4])?;
    check(reversed.len() == forward.len(), "table sizes differ")?;
    let by_code: BTreeMap<TripleCode, &ClassificationEntry> =
        reversed.iter().map(|e| (code(e), e)).collect();
    for e in &forward {
        let r = by_code
            .get(&code(e).reversed())
            .ok_or(format!("no reversed entry for {}", e.couple))?;
        check(r.status == e.status, format!("{} vs {}", e.couple, r.couple))?;
        check(deciding(r) == deciding(e), format!("rule mismatch at {}", r.couple))?;
    }
    verified_realizable(&reversed)?;

    let opts = ClassifyOptions { search: false, ..ClassifyOptions::default() };
    let mut orbits = 0;
    let mut seen = BTreeSet::new();
    for d in 2..=7 {
        for p in supported_patterns(d) {
            for c in enumerate_couples(&p).unwrap() {
                if !seen.insert(c.clone()) {
                    continue;
                }
                let statuses: BTreeSet<Status> = c
                    .orbit()
                    .iter()
                    .map(|x| classify_one(x, &opts).map(|e| e.status))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                check(statuses.len() == 1, format!("orbit of {c} has statuses {statuses:?}"))?;
                check(!statuses.contains(&Status::Unknown), format!("orbit of {c} undecided"))?;
                seen.extend(c.orbit());
                orbits += 1;
            }
        }
    }
    Ok(format!("S2,2,4 mirrors S4,2,2 under (w,v,u); {orbits} orbits constant for d <= 7"))
}

fn criterion_5() -> Verdict {
    let t = Instant::now();
    let mut worst: Option<Rational> = None;
    for id in SAMPLED_IDS {
        let r = run_certificate(&CertificateSpec::new(id, 10_000, 0)).map_err(|e| e.to_string())?;
        check(r.trials_run == 10_000, format!("{id} ran {} trials", r.trials_run))?;
        check(r.violations == 0 && r.pass, format!("{id}: {} violations", r.violations))?;
        let m = r.min_margin.ok_or(format!("{id} has no margin"))?;
        check(m.is_positive(), format!("{id} min margin not positive"))?;
        worst = Some(worst.map_or(m.clone(), |w| w.min(m)));
    }
    let took = t.elapsed();
    check(took < Duration::from_secs(300), format!("took {took:?}"))?;
    let worst = descartes_core::rational::to_f64(&worst.unwrap());
    Ok(format!("{} entries x 10^4 trials, 0 violations, smallest margin {worst:.3e}, {took:.2?}", SAMPLED_IDS.len()))
}

fn criterion_6() -> Verdict {
    let rho = cubic_discriminant(&CubicTriple::new(int(1), int(1), int(1)));
    check(rho == int(16), format!("rho(1,1,1) = {rho}"))?;
    for t in [rat(1, 2), int(1), int(2), int(5)] {
        let triple = CubicTriple::new(int(3) * &t, int(3) * &t * &t, &t * &t * &t);
        let v = cubic_discriminant(&triple);
        check(v == int(0), format!("rho at t = {t} is {v}"))?;
    }
    Ok("rho(1,1,1) = 16, rho(3t,3t^2,t^3) = 0 for t in {1/2,1,2,5}".into())
}

fn criterion_7() -> Verdict {
    for id in IDENTITY_IDS {
        check(check_identity(id) == Ok(true), format!("{id} fails"))?;
    }
    let gap = b12_gap_width(&rat(1, 2));
    check(gap == rat(7, 12), format!("B12_GAP at c=1/2 is {gap}"))?;
    Ok(format!("{} identities exact, B12_GAP(1/2) = 7/12", IDENTITY_IDS.len()))
}

fn random_witness(rng: &mut ChaCha8Rng) -> Witness {
    loop {
        let d = rng.gen_range(1..=5);
        let mut moduli = BTreeSet::new();
        while moduli.len() < d {
            moduli.insert(rat(rng.gen_range(1..=400), rng.gen_range(1..=20)));
        }
        let values = moduli
            .into_iter()
            .map(|m| if rng.gen_bool(0.5) { -m } else { m })
            .collect();
        let config = RootConfiguration::from_values(values).unwrap();
        if let Ok(w) = Witness::from_config(config) {
            return w;
        }
    }
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let params = ConcatParams::default();
    check(params.max_halvings == 64, "halving cap is not 64")?;
    for i in 0..100 {
        let top = random_witness(&mut rng);
        let bottom = random_witness(&mut rng);
        let w = concatenate(&top, &bottom, &params)
            .map_err(|e| format!("pair {i} ({} with {}): {e}", top.couple, bottom.couple))?;
        let predicted = concatenated_couple(&top.couple, &bottom.couple);
        check(w.couple == predicted && w.reverify(), format!("pair {i} realizes {}", w.couple))?;
    }
    Ok("100 seeded pairs concatenated within 64 halvings, couples as predicted".into())
}

fn criterion_9() -> Verdict {
    let t = Instant::now();
    let audit = audit_search(7, &ClassifyOptions::default());
    check(
        audit.violations.is_empty(),
        format!("search realized rule-impossible couples {:?}", audit.violations),
    )?;
    let mut found = 0;
    for c in enumerate_couples(&pattern(&[3, 2, 2])).unwrap() {
        if !theorem_rule_engine(&c).is_some_and(|d| d.status == Status::Realizable) {
            continue;
        }
        let r = search_realization(&SearchSpec::new(c.clone()));
        let w = r.witness.ok_or(format!("search missed {c}"))?;
        check(w.realizes(&c) && w.reverify(), format!("search witness for {c} does not verify"))?;
        found += 1;
    }
    check(found == 11, format!("{found} degree-6 witnesses"))?;
    Ok(format!(
        "{} rule-impossible couples searched, 0 witnesses; {found}/11 degree-6 witnesses found, {:.2?}",
        audit.couples_searched,
        t.elapsed()
    ))
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    let mut skipped = 0;
    for _ in 0..1000 {
        let d = rng.gen_range(1..=10);
        let mut moduli = BTreeSet::new();
        while moduli.len() < d {
            moduli.insert(rat(rng.gen_range(1..=1000), rng.gen_range(1..=50)));
        }
        let values: Vec<Rational> = moduli
            .into_iter()
            .map(|m| if rng.gen_bool(0.5) { -m } else { m })
            .collect();
        let config = RootConfiguration::from_values(values).unwrap();
        let positive = config.positive_moduli().len();
        let negative = config.negative_moduli().len();
        match sign_pattern(&config.expand()) {
            Ok(s) => {
                check(
                    (s.changes(), s.preservations()) == (positive, negative),
                    format!("{config:?}: pattern {s} vs roots {positive}+/{negative}-"),
                )?;
                checked += 1;
            }
            Err(Error::ZeroCoefficient(_)) => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("{checked} configurations exact ({skipped} with a vanishing coefficient)"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("classify S3,2,2", criterion_1),
        ("classify S4,2,2", criterion_2),
        ("classify S2,4,2", criterion_3),
        ("i_r transfer and orbit coherence", criterion_4),
        ("sampled certificates at 10^4 trials", criterion_5),
        ("cubic discriminant values", criterion_6),
        ("identity certificates", criterion_7),
        ("concatenation robustness", criterion_8),
        ("search soundness and degree-6 bases", criterion_9),
        ("Descartes exactness", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
