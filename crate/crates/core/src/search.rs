//! Seeded feasibility search for witnesses of a requested couple.
//!
//! Roots are parametrized by the order word: moduli are cumulative sums of
//! `exp(θ_i)` (so they stay strictly increasing) and the letters fix which
//! moduli belong to positive roots. A compass search with a few random poll
//! directions maximizes the binomially normalized sign margin; a positive
//! float margin is then snapped to rationals and verified exactly. Only the
//! exact check decides whether a witness is returned.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RootConfiguration;
use crate::constructor::Witness;
use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};
use crate::signs::{Couple, Letter, Sign, SignPattern};

/// Restarts are evaluated in fixed-size batches so the reduction does not
/// depend on the thread count.
const BATCH: usize = 16;
const MIN_STEP: f64 = 1e-9;
/// A restart stops polling once the objective reaches this value; pushing
/// further only spreads the moduli and slows exact verification.
const GOOD_ENOUGH: f64 = 1e-2;
/// Box for the log-gaps.
const THETA_MAX: f64 = 20.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub couple: Couple,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub denominator_bound: u64,
}

impl SearchSpec {
    pub fn new(couple: Couple) -> Self {
        SearchSpec {
            couple,
            restarts: 200,
            iterations: 2000,
            seed: 0,
            denominator_bound: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub witness: Option<Witness>,
    /// Best float objective seen: the sign margin capped by the relative
    /// separation of consecutive moduli.
    pub best_margin: f64,
    pub restarts_used: usize,
}

/// `min_j s_j q_j / C(d, j)` over the coefficients of the expanded
/// configuration; positive iff the configuration defines `pattern`.
pub fn margin(config: &RootConfiguration, pattern: &SignPattern) -> Result<Rational> {
    let d = pattern.degree();
    if config.degree() != d {
        return Err(Error::InvalidConfiguration(format!(
            "configuration has degree {} but the pattern has degree {d}",
            config.degree()
        )));
    }
    let p = config.expand();
    let m = (0..=d)
        .map(|j| {
            let q = p.coeff(j) / binomial(d, j);
            match pattern.sign_of_coeff(j) {
                Sign::Plus => q,
                Sign::Minus => -q,
            }
        })
        .min()
        .expect("degree >= 0");
    Ok(m)
}

/// Best continued-fraction convergent of `x` with denominator at most `bound`.
fn convergent(x: f64, bound: u64) -> Option<Rational> {
    let exact = Rational::from_float(x)?;
    let bound = BigInt::from(bound);
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact;
    let mut best = None;
    loop {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > bound {
            break;
        }
        best = Some(Rational::new(p2.clone(), q2.clone()));
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    best
}

/// Replaces each float root by a convergent of bounded denominator, failing
/// if that merges or reorders any two moduli.
pub fn snap_to_rational(roots: &[f64], denominator_bound: u64) -> Result<RootConfiguration> {
    let snapped = roots
        .iter()
        .map(|&r| {
            let m = convergent(r.abs(), denominator_bound).ok_or(Error::OrderCollapsed)?;
            Ok(if r < 0.0 { -m } else { m })
        })
        .collect::<Result<Vec<Rational>>>()?;
    if snapped.iter().any(Zero::is_zero) {
        return Err(Error::OrderCollapsed);
    }
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    idx.sort_by(|&a, &b| roots[a].abs().total_cmp(&roots[b].abs()));
    for w in idx.windows(2) {
        if snapped[w[0]].abs() >= snapped[w[1]].abs() {
            return Err(Error::OrderCollapsed);
        }
    }
    RootConfiguration::from_values(snapped).map_err(|_| Error::OrderCollapsed)
}

/// Float view of the target couple used by the objective.
struct Target {
    letters: Vec<Letter>,
    signs: Vec<f64>,
    binom: Vec<f64>,
}

impl Target {
    fn new(couple: &Couple) -> Self {
        let d = couple.degree();
        Target {
            letters: couple.order.letters().to_vec(),
            signs: (0..=d)
                .map(|j| match couple.pattern.sign_of_coeff(j) {
                    Sign::Plus => 1.0,
                    Sign::Minus => -1.0,
                })
                .collect(),
            binom: (0..=d)
                .map(|j| binomial(d, j).to_f64().unwrap_or(f64::INFINITY))
                .collect(),
        }
    }

    /// Signed roots for parameters θ, moduli scaled to geometric mean 1.
    fn roots(&self, theta: &[f64]) -> Vec<f64> {
        let mut acc = 0.0;
        let moduli: Vec<f64> = theta
            .iter()
            .map(|t| {
                acc += t.exp();
                acc
            })
            .collect();
        let log_mean = moduli.iter().map(|m| m.ln()).sum::<f64>() / moduli.len() as f64;
        let scale = (-log_mean).exp();
        moduli
            .iter()
            .zip(&self.letters)
            .map(|(m, l)| match l {
                Letter::P => m * scale,
                Letter::N => -m * scale,
            })
            .collect()
    }

    /// The sign margin capped by the smallest relative gap between
    /// consecutive moduli, so maximizers stay away from coalescing roots
    /// that would not survive snapping.
    fn objective(&self, theta: &[f64]) -> f64 {
        let roots = self.roots(theta);
        let mut c = vec![0.0; roots.len() + 1];
        c[0] = 1.0;
        for (k, r) in roots.iter().enumerate() {
            for j in (1..=k + 1).rev() {
                c[j] -= r * c[j - 1];
            }
        }
        // c[i] is the coefficient of x^{d-i}
        let d = roots.len();
        let margin = (0..=d)
            .map(|j| self.signs[j] * c[d - j] / self.binom[j])
            .fold(f64::INFINITY, f64::min);
        let mut acc = 0.0;
        let mut separation = f64::INFINITY;
        for (k, t) in theta.iter().enumerate() {
            let gap = t.exp();
            if k > 0 {
                separation = separation.min(gap / acc);
            }
            acc += gap;
        }
        let m = margin.min(separation);
        if m.is_finite() {
            m
        } else {
            f64::NEG_INFINITY
        }
    }
}

struct RestartOutcome {
    index: usize,
    best_margin: f64,
    witness: Option<Witness>,
}

fn run_restart(spec: &SearchSpec, target: &Target, index: usize) -> RestartOutcome {
    let d = target.letters.len();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);

    let mut start: Vec<f64> = (0..d)
        .map(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
        .collect();
    start.sort_by(f64::total_cmp);
    let mut theta: Vec<f64> = start
        .iter()
        .scan(0.0, |prev, &m| {
            let gap = (m - *prev).max(1e-12);
            *prev = m;
            Some(gap.ln().clamp(-THETA_MAX, THETA_MAX))
        })
        .collect();

    let mut best = target.objective(&theta);
    let mut step = 1.0;
    for _ in 0..spec.iterations {
        if best >= GOOD_ENOUGH {
            break;
        }
        let mut improved = false;
        let mut dirs: Vec<Vec<f64>> = Vec::with_capacity(2 * d + 2);
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; d];
                e[i] = s;
                dirs.push(e);
            }
        }
        for _ in 0..2 {
            let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
            dirs.push(v.into_iter().map(|x| x / n).collect());
        }
        for dir in &dirs {
            let cand: Vec<f64> = theta
                .iter()
                .zip(dir)
                .map(|(t, e)| (t + step * e).clamp(-THETA_MAX, THETA_MAX))
                .collect();
            let val = target.objective(&cand);
            if val > best {
                best = val;
                theta = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
            if step < MIN_STEP {
                break;
            }
        }
    }

    let witness = if best > 0.0 {
        snap_and_verify(spec, &target.roots(&theta))
    } else {
        None
    };
    RestartOutcome {
        index,
        best_margin: best,
        witness,
    }
}

fn snap_and_verify(spec: &SearchSpec, roots: &[f64]) -> Option<Witness> {
    // the couple is invariant under positive scaling; put the smallest
    // modulus at 1 so bounded denominators keep relative precision
    let min = roots.iter().map(|r| r.abs()).fold(f64::INFINITY, f64::min);
    let scaled: Vec<f64> = roots.iter().map(|r| r / min).collect();
    let config = snap_to_rational(&scaled, spec.denominator_bound).ok()?;
    if !margin(&config, &spec.couple.pattern).ok()?.is_positive() {
        return None;
    }
    Witness::for_couple(config, &spec.couple).ok()
}

/// Multi-start search; deterministic for a given spec regardless of the
/// number of worker threads.
pub fn search_realization(spec: &SearchSpec) -> SearchResult {
    let target = Target::new(&spec.couple);
    let mut best_margin = f64::NEG_INFINITY;
    let mut start = 0;
    while start < spec.restarts {
        let end = (start + BATCH).min(spec.restarts);
        let outcomes: Vec<RestartOutcome> = (start..end)
            .into_par_iter()
            .map(|i| run_restart(spec, &target, i))
            .collect();
        for o in &outcomes {
            if o.best_margin > best_margin {
                best_margin = o.best_margin;
            }
        }
        if let Some(o) = outcomes.into_iter().find(|o| o.witness.is_some()) {
            return SearchResult {
                witness: o.witness,
                best_margin,
                restarts_used: o.index + 1,
            };
        }
        start = end;
    }
    SearchResult {
        witness: None,
        best_margin,
        restarts_used: spec.restarts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::signs::sign_pattern;

    fn cfg(v: Vec<Rational>) -> RootConfiguration {
        RootConfiguration::from_values(v).unwrap()
    }

    #[test]
    fn margins() {
        let s22 = SignPattern::from_blocks(&[2, 2]).unwrap();
        assert!(margin(&cfg(vec![int(2), int(-1), int(-3)]), &s22).unwrap().is_positive());
        // (x-1)(x+2)(x+3): q1 = 6 - 5 = 1 has the wrong sign
        assert!(margin(&cfg(vec![int(1), int(-2), int(-3)]), &s22).unwrap().is_negative());
        let c = cfg(vec![rat(3, 7), int(-5), rat(-1, 9), int(4)]);
        let own = sign_pattern(&c.expand()).unwrap();
        assert!(margin(&c, &own).unwrap().is_positive());
    }

    #[test]
    fn snapping() {
        let c = snap_to_rational(&[0.5, -1.0, 2.5], 1_000_000).unwrap();
        assert_eq!(c.values().cloned().collect::<Vec<_>>(), vec![rat(1, 2), int(-1), rat(5, 2)]);
        let c = snap_to_rational(&[1.0 / 3.0, -1.0], 1_000_000).unwrap();
        assert_eq!(c.values().cloned().collect::<Vec<_>>(), vec![rat(1, 3), int(-1)]);
        assert_eq!(
            snap_to_rational(&[1.0, -(1.0 + 1e-9)], 10),
            Err(Error::OrderCollapsed)
        );
    }

    #[test]
    fn finds_sigma22_witness() {
        let spec = SearchSpec::new("S2,2 (1,1)".parse().unwrap());
        let r = search_realization(&spec);
        let w = r.witness.expect("witness");
        assert!(w.reverify());
        assert_eq!(w.couple, spec.couple);
    }

    #[test]
    fn deterministic() {
        let mut spec = SearchSpec::new("S3,2,2 (1,1,2)".parse().unwrap());
        spec.seed = 7;
        let a = search_realization(&spec);
        let b = search_realization(&spec);
        assert_eq!(a, b);
        assert!(a.witness.is_some());
    }

    #[test]
    fn no_witness_for_impossible_couple() {
        let mut spec = SearchSpec::new("S2,4,2 (3,1,1)".parse().unwrap());
        spec.restarts = 20;
        spec.iterations = 500;
        let r = search_realization(&spec);
        assert!(r.witness.is_none());
        assert_eq!(r.restarts_used, 20);
    }
}
