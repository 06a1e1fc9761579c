use num::{One, Signed, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{cubic_discriminant, CertificateKind, CertificateReport, CertificateSpec, CubicTriple};
use crate::config::RootConfiguration;
use crate::error::{Error, Result};
use crate::poly::SymmetricTable;
use crate::rational::{binomial, int, rat, Rational};
use crate::signs::{ModuliOrder, Sign, SignPattern, TripleCode};

pub const SAMPLED_IDS: &[&str] = &[
    "QD2_W5",
    "QD2_W4V1",
    "QD2_0N23",
    "NO_Q2Q5_104",
    "NO_Q2Q5_203",
    "NO_Q2Q5_113",
    "SIGMA_M22_WBOUND",
    "NEWTON",
    "NEWTON_PRODUCT",
    "MONOTONE_EXT",
    "RHO_DOMAIN_D",
];

pub(super) fn run(spec: &CertificateSpec) -> Result<CertificateReport> {
    let id = SAMPLED_IDS
        .iter()
        .find(|&&s| s == spec.id)
        .ok_or_else(|| Error::UnknownCertificate(spec.id.clone()))?;
    let window = |lo: usize, hi: usize| -> Result<(usize, usize)> {
        let get = |key: &str, dflt: usize| match spec.constants.get(key) {
            None => Ok(dflt),
            Some(r) if r.is_integer() && !r.is_negative() => Ok(r.to_integer().try_into().unwrap_or(dflt)),
            Some(_) => Err(Error::InvalidConfiguration(format!("{key} must be a natural number"))),
        };
        let (a, b) = (get("d_min", lo)?, get("d_max", hi)?);
        if a < lo || a > b {
            return Err(Error::InvalidConfiguration(format!(
                "degree window must satisfy {lo} <= d_min <= d_max"
            )));
        }
        Ok((a, b))
    };
    let family: Family = match *id {
        "QD2_W5" => Family::Qd2W5(window(9, 12)?),
        "QD2_W4V1" => Family::Qd2W4V1(window(7, 12)?),
        "QD2_0N23" => Family::Qd20N23(window(7, 12)?),
        "NO_Q2Q5_104" => Family::NoQ2Q5(TripleCode::new(1, 0, 4)),
        "NO_Q2Q5_203" => Family::NoQ2Q5(TripleCode::new(2, 0, 3)),
        "NO_Q2Q5_113" => Family::NoQ2Q5(TripleCode::new(1, 1, 3)),
        "SIGMA_M22_WBOUND" => Family::WBound(window(7, 10)?),
        "NEWTON" => Family::Newton(window(3, 10)?),
        "NEWTON_PRODUCT" => Family::NewtonProduct(window(8, 12)?, spec.constants.get("h_star").cloned()),
        "MONOTONE_EXT" => Family::MonotoneExt,
        "RHO_DOMAIN_D" => Family::RhoDomain,
        _ => unreachable!("catalog and dispatch agree"),
    };

    let margins: Vec<Rational> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            rng.set_stream(t);
            family.trial(&mut rng, t % 2 == 1)
        })
        .collect();
    let violations = margins.iter().filter(|m| !m.is_positive()).count() as u64;
    let min_margin = margins.into_iter().min();
    Ok(CertificateReport {
        id: spec.id.clone(),
        kind: CertificateKind::Sampled,
        trials_run: spec.trials,
        violations,
        min_margin,
        pass: violations == 0,
    })
}

enum Family {
    Qd2W5((usize, usize)),
    Qd2W4V1((usize, usize)),
    Qd20N23((usize, usize)),
    NoQ2Q5(TripleCode),
    WBound((usize, usize)),
    Newton((usize, usize)),
    NewtonProduct((usize, usize), Option<Rational>),
    MonotoneExt,
    RhoDomain,
}

/// `n` distinct increasing positive moduli, either sorted uniforms on the
/// grid `k/1000` in `(0, 100]` or a geometric ladder with ratio `1 + j/1000`.
fn moduli(rng: &mut ChaCha8Rng, n: usize, ladder: bool) -> Vec<Rational> {
    if ladder {
        let base = rat(rng.gen_range(1..=100_000), 1000);
        let ratio = rat(1000 + rng.gen_range(1..=50), 1000);
        let mut out = Vec::with_capacity(n);
        let mut x = base;
        for _ in 0..n {
            out.push(x.clone());
            x *= &ratio;
        }
        out
    } else {
        let mut ks: Vec<usize> = index::sample(rng, 100_000, n).into_iter().collect();
        ks.sort_unstable();
        ks.into_iter().map(|k| rat(k as i64 + 1, 1000)).collect()
    }
}

fn config(rng: &mut ChaCha8Rng, order: &ModuliOrder, ladder: bool) -> RootConfiguration {
    let m = moduli(rng, order.len(), ladder);
    RootConfiguration::from_order(order, &m).expect("sampled moduli are increasing")
}

/// Random split of `total` into `(u, v)`.
fn split(rng: &mut ChaCha8Rng, total: usize) -> (usize, usize) {
    let u = rng.gen_range(0..=total);
    (u, total - u)
}

impl Family {
    fn trial(&self, rng: &mut ChaCha8Rng, ladder: bool) -> Rational {
        match self {
            Family::Qd2W5((lo, hi)) => {
                let d = rng.gen_range(*lo..=*hi);
                let w = rng.gen_range(5..=d - 2);
                let (u, v) = split(rng, d - 2 - w);
                let c = config(rng, &ModuliOrder::from_triple(TripleCode::new(u, v, w)), ladder);
                // q_{d-2} together with the stronger (α+β)e_1 < e_2
                let (alpha, beta, t) = positives_and_negatives(&c);
                let sub = t.e(2) - (&alpha + &beta) * t.e(1);
                let q = c.expand().coeff(d - 2);
                debug_assert_eq!(q, &alpha * &beta + &sub);
                q.min(sub)
            }
            Family::Qd2W4V1((lo, hi)) => {
                let d = rng.gen_range(*lo..=*hi);
                let v = rng.gen_range(1..=d - 6);
                let u = d - 6 - v;
                qd2(rng, TripleCode::new(u, v, 4), ladder)
            }
            Family::Qd20N23((lo, hi)) => {
                let d = rng.gen_range(*lo..=*hi);
                qd2(rng, TripleCode::new(0, d - 5, 3), ladder)
            }
            Family::NoQ2Q5(code) => {
                let c = config(rng, &ModuliOrder::from_triple(*code), ladder);
                let p = c.expand();
                // both must be negative for Σ_{2,4,2}
                p.coeff(2).max(p.coeff(5))
            }
            Family::WBound((lo, hi)) => {
                let d = rng.gen_range(*lo..=*hi);
                let m = d - 3;
                let w = rng.gen_range(0..=m - 4);
                let (u, v) = split(rng, m + 1 - w);
                let c = config(rng, &ModuliOrder::from_triple(TripleCode::new(u, v, w)), ladder);
                let pattern = SignPattern::from_blocks(&[m, 2, 2]).expect("valid blocks");
                pattern_miss(&c, &pattern)
            }
            Family::Newton((lo, hi)) => {
                let k = rng.gen_range(*lo..=*hi);
                let t = SymmetricTable::new(&moduli(rng, k, ladder));
                t.newton_gaps().into_iter().min().expect("arity >= 3")
            }
            Family::NewtonProduct((lo, hi), h) => {
                let d = rng.gen_range(*lo..=*hi) as isize;
                let t = SymmetricTable::new(&moduli(rng, d as usize - 3, ladder));
                let h = h
                    .clone()
                    .unwrap_or_else(|| rat(7 * (d as i64 - 4), 5 * (d as i64 - 6)));
                t.e(d - 5) * t.e(d - 6) - h * t.e(d - 4) * t.e(d - 7)
            }
            Family::MonotoneExt => monotone_ext(rng, ladder),
            Family::RhoDomain => {
                let t = domain_triple(rng, ladder);
                cubic_discriminant(&t)
            }
        }
    }
}

fn qd2(rng: &mut ChaCha8Rng, code: TripleCode, ladder: bool) -> Rational {
    let d = code.degree();
    let c = config(rng, &ModuliOrder::from_triple(code), ladder);
    c.expand().coeff(d - 2)
}

/// `(α, β, table of the negative moduli)` for a configuration with exactly
/// two positive roots.
fn positives_and_negatives(c: &RootConfiguration) -> (Rational, Rational, SymmetricTable) {
    let pos = c.positive_moduli();
    let neg = c.negative_moduli();
    (pos[1].clone(), pos[0].clone(), SymmetricTable::new(&neg))
}

/// Largest amount by which a coefficient disagrees with `pattern`;
/// positive iff the polynomial does not define the pattern.
fn pattern_miss(c: &RootConfiguration, pattern: &SignPattern) -> Rational {
    let p = c.expand();
    let d = pattern.degree();
    (0..=d)
        .map(|j| {
            let q = p.coeff(j) / binomial(d, j);
            match pattern.sign_of_coeff(j) {
                Sign::Plus => -q,
                Sign::Minus => q,
            }
        })
        .max()
        .expect("nonempty")
}

/// Adds one negative modulus to a configuration ordered as
/// `y_1 < ... < y_u < β < ... < α < γ_1 < ... < γ_w` with `u ≥ 1`, `u+v ≥ 2`
/// and checks that both `q~_2` and `q_{d-2}` strictly increase.
fn monotone_ext(rng: &mut ChaCha8Rng, ladder: bool) -> Rational {
    let u = rng.gen_range(1..=4);
    let v = rng.gen_range(if u == 1 { 1 } else { 0 }..=4);
    let w = rng.gen_range(3..=4);
    let order = ModuliOrder::from_triple(TripleCode::new(u, v, w));
    let mut m = moduli(rng, order.len() + 1, ladder);
    // the extra modulus is any one of the sampled values
    let extra = m.remove(rng.gen_range(0..m.len()));
    let c = RootConfiguration::from_order(&order, &m).expect("increasing");
    let (alpha, beta, _) = positives_and_negatives(&c);
    let neg = c.negative_moduli();

    let q_top = |ys: &[Rational]| {
        let t = SymmetricTable::new(ys);
        &alpha * &beta - (&alpha + &beta) * t.e(1) + t.e(2)
    };
    let q_low = |ys: &[Rational]| {
        let inv: Vec<Rational> = ys.iter().map(|y| y.recip()).collect();
        let g = SymmetricTable::new(&inv);
        (&alpha * &beta).recip() - (alpha.recip() + beta.recip()) * g.e(1) + g.e(2)
    };
    let mut grown = neg.clone();
    grown.push(extra);
    let d_top = q_top(&grown) - q_top(&neg);
    let d_low = q_low(&grown) - q_low(&neg);

    let e1: Rational = neg.iter().sum();
    let g1: Rational = neg.iter().map(|y| y.recip()).sum();
    let gap_e = e1 - &alpha - &beta;
    let gap_g = g1 - alpha.recip() - beta.recip();
    [d_top, d_low, gap_e, gap_g].into_iter().min().expect("nonempty")
}

/// A point of the closed domain `A/2 <= C <= 2A`, `1/2 <= B <= 2`, `A > 0`.
/// The ladder branch hugs the border.
fn domain_triple(rng: &mut ChaCha8Rng, ladder: bool) -> CubicTriple {
    let a = rat(rng.gen_range(1..=100_000), 1000);
    let (b, s) = if ladder {
        let near = |rng: &mut ChaCha8Rng| rat(rng.gen_range(0..=20), 1000);
        let b = if rng.gen_bool(0.5) {
            rat(1, 2) + near(rng)
        } else {
            int(2) - near(rng)
        };
        let s = if rng.gen_bool(0.5) {
            near(rng)
        } else {
            Rational::one() - near(rng)
        };
        (b, s)
    } else {
        (
            rat(500 + rng.gen_range(0..=1500), 1000),
            rat(rng.gen_range(0..=1000), 1000),
        )
    };
    // C = A/2 + s (3A/2), s in [0, 1]
    let c = &a / int(2) + s * &a * rat(3, 2);
    debug_assert!(!c.is_zero());
    CubicTriple::new(a, b, c)
}
