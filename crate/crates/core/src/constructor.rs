//! Explicit realizers.
//!
//! Every [`Witness`] produced here has been checked exactly: its expanded
//! polynomial defines the couple's sign pattern and its roots define the
//! couple's order of moduli.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::One;
use serde::{Deserialize, Serialize};

use crate::config::RootConfiguration;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, int, rat, Rational};
use crate::signs::{sign_pattern, Couple, Letter, ModuliOrder, PairCode, Sign, SignPattern, TripleCode};
use crate::sturm::moduli_order;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub couple: Couple,
    pub roots: RootConfiguration,
    pub coefficients: Polynomial,
    pub verified: bool,
}

#[derive(Deserialize)]
struct WitnessRepr {
    couple: Couple,
    roots: RootConfiguration,
    coefficients: Polynomial,
}

impl<'de> Deserialize<'de> for Witness {
    /// Deserialized witnesses are re-verified; the stored flag is ignored.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WitnessRepr::deserialize(d)?;
        let w = Witness::from_config(r.roots).map_err(serde::de::Error::custom)?;
        if w.couple != r.couple || w.coefficients != r.coefficients {
            return Err(serde::de::Error::custom(format!(
                "stored witness for {} does not verify",
                r.couple
            )));
        }
        Ok(w)
    }
}

impl Witness {
    /// Expands the configuration and reads the realized couple off the
    /// polynomial with exact arithmetic.
    pub fn from_config(roots: RootConfiguration) -> Result<Self> {
        let coefficients = roots.expand();
        let pattern = sign_pattern(&coefficients)?;
        let order = moduli_order(&coefficients)?;
        let couple = Couple::new(pattern, order)?;
        Ok(Witness {
            couple,
            roots,
            coefficients,
            verified: true,
        })
    }

    /// Builds a witness and checks that it realizes `target`.
    pub fn for_couple(roots: RootConfiguration, target: &Couple) -> Result<Self> {
        let w = Self::from_config(roots)?;
        if &w.couple != target {
            return Err(Error::SoundnessViolation(format!(
                "configuration realizes {} instead of {target}",
                w.couple
            )));
        }
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.roots.degree()
    }

    pub fn realizes(&self, c: &Couple) -> bool {
        self.verified && &self.couple == c
    }

    /// Recomputes pattern and order from scratch.
    pub fn reverify(&self) -> bool {
        Self::from_config(self.roots.clone()).is_ok_and(|w| w == *self)
    }

    /// Witness for `i_m` of this couple: roots `r -> -r`.
    pub fn apply_im(&self) -> Result<Self> {
        Self::for_couple(self.roots.negated(), &self.couple.apply_im())
    }

    /// Witness for `i_r` of this couple: roots `r -> 1/r`.
    pub fn apply_ir(&self) -> Result<Self> {
        Self::for_couple(self.roots.inverted(), &self.couple.apply_ir())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }
}

/// Fixed realizations of `Σ_{2,2}` with each of its three orders.
pub fn base_witness_sigma22(code: PairCode) -> Result<Witness> {
    let (pos, n1, n2) = match (code.u, code.v) {
        (2, 0) => (rat(5, 2), int(-1), int(-2)),
        (1, 1) => (int(2), int(-1), int(-3)),
        (0, 2) => (rat(9, 10), int(-1), rat(-11, 10)),
        _ => {
            return Err(Error::Unsupported(format!(
                "Σ_{{2,2}} has no order {code}"
            )))
        }
    };
    let target = Couple::from_pair(SignPattern::from_blocks(&[2, 2])?, code)?;
    Witness::for_couple(RootConfiguration::from_values(vec![pos, n1, n2])?, &target)
}

/// `(x+1)(x+2)...(x+k)`, realizing `Σ_{k+1}` with order `N^k`.
pub fn all_negative_witness(k: usize) -> Result<Witness> {
    if k == 0 {
        return Err(Error::InvalidConfiguration(
            "all-negative witness needs at least one root".into(),
        ));
    }
    let roots = (1..=k as i64).map(|i| int(-i)).collect();
    let target = Couple::new(
        SignPattern::from_blocks(&[k + 1])?,
        ModuliOrder::new(vec![Letter::N; k]),
    )?;
    Witness::for_couple(RootConfiguration::from_values(roots)?, &target)
}

/// `x - 1`, realizing `Σ_{1,1}` with order `P`.
pub fn single_positive_witness() -> Witness {
    Witness::from_config(RootConfiguration::from_values(vec![int(1)]).expect("valid"))
        .expect("x - 1 verifies")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatParams {
    pub epsilon: Rational,
    pub max_halvings: u32,
}

impl Default for ConcatParams {
    fn default() -> Self {
        ConcatParams {
            epsilon: rat(1, 2),
            max_halvings: 64,
        }
    }
}

/// Pattern of `ε^{d2} P1(x) P2(x/ε)` for small ε: `(+, σ1, ±σ2)`, with `σ2`
/// flipped when `σ1` ends in `-`.
pub fn concatenated_pattern(top: &SignPattern, bottom: &SignPattern) -> SignPattern {
    let mut signs = top.signs().to_vec();
    let flip = *signs.last().expect("nonempty") == Sign::Minus;
    signs.extend(
        bottom.signs()[1..]
            .iter()
            .map(|&s| if flip { s.flip() } else { s }),
    );
    SignPattern::new(signs).expect("leading sign is +")
}

/// Couple realized by concatenating `top` (large moduli) with `bottom`
/// (small moduli).
pub fn concatenated_couple(top: &Couple, bottom: &Couple) -> Couple {
    Couple {
        pattern: concatenated_pattern(&top.pattern, &bottom.pattern),
        order: bottom.order.then(&top.order),
    }
}

/// Concatenation of two witnesses: the bottom roots are scaled by ε, with ε
/// halved from `params.epsilon` until the product verifies exactly as the
/// predicted couple.
pub fn concatenate(top: &Witness, bottom: &Witness, params: &ConcatParams) -> Result<Witness> {
    if !top.verified || !bottom.verified {
        return Err(Error::InvalidConfiguration("unverified input witness".into()));
    }
    let predicted = concatenated_couple(&top.couple, &bottom.couple);
    let top_min = top.roots.min_modulus();
    let mut eps = params.epsilon.clone();
    for _ in 0..=params.max_halvings {
        let scaled = bottom.roots.scaled(&eps);
        if scaled.max_modulus() < top_min {
            if let Ok(config) = top.roots.joined(&scaled) {
                if let Ok(w) = Witness::from_config(config) {
                    if w.couple == predicted {
                        return Ok(w);
                    }
                }
            }
        }
        eps /= int(2);
    }
    Err(Error::EpsilonExhausted(params.max_halvings))
}

/// Left fold of [`concatenate`]: the first factor keeps the largest moduli.
pub fn concatenate_chain(factors: &[Witness], params: &ConcatParams) -> Result<Witness> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidConfiguration("no factors".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| concatenate(&acc, f, params))
}

/// Multiplies by `(1 + εx)`, adding a negative root `-1/ε` of largest
/// modulus: `(Σ_{m,...}, word)` becomes `(Σ_{m+1,...}, word N)`.
pub fn lift_w(wit: &Witness, eps: &Rational) -> Result<Witness> {
    let mut signs = vec![Sign::Plus];
    signs.extend_from_slice(wit.couple.pattern.signs());
    let mut letters = wit.couple.order.letters().to_vec();
    letters.push(Letter::N);
    let target = Couple::new(SignPattern::new(signs)?, ModuliOrder::new(letters))?;
    let mut eps = eps.clone();
    let max_halvings = ConcatParams::default().max_halvings;
    for _ in 0..=max_halvings {
        let extra = RootConfiguration::from_values(vec![-(Rational::one() / &eps)])?;
        if let Ok(config) = wit.roots.joined(&extra) {
            if let Ok(w) = Witness::for_couple(config, &target) {
                return Ok(w);
            }
        }
        eps /= int(2);
    }
    Err(Error::EpsilonExhausted(max_halvings))
}

/// Realizes `(Σ_{2,n,2}, (u,v,w))` for `n >= 4`, `u, w <= 2` as
/// `Σ_{2,2}(2-w,w) * Σ_{n-2} * Σ_{2,2}(u,2-u)`, the last factor carrying the
/// smallest moduli.
pub fn realize_sigma_2n2(n: usize, code: TripleCode) -> Result<Witness> {
    if n < 4 || code.u > 2 || code.w > 2 || code.u + code.v + code.w != n + 1 {
        return Err(Error::Unsupported(format!(
            "no triple concatenation for Σ_{{2,{n},2}} with code {code}"
        )));
    }
    let top = base_witness_sigma22(PairCode::new(2 - code.w, code.w))?;
    let middle = all_negative_witness(n - 3)?;
    let bottom = base_witness_sigma22(PairCode::new(code.u, 2 - code.u))?;
    let w = concatenate_chain(&[top, middle, bottom], &ConcatParams::default())?;
    let target = Couple::from_triple(SignPattern::from_blocks(&[2, n, 2])?, code)?;
    if w.couple != target {
        return Err(Error::SoundnessViolation(format!(
            "triple concatenation produced {} instead of {target}",
            w.couple
        )));
    }
    Ok(w)
}

/// Witness for the canonical couple of any pattern `Σ_{m1,...,ms}`, built as
/// `Σ_{m1} * Σ_{1,1} * Σ_{m2} * ... * Σ_{1,1} * Σ_{ms}`.
pub fn canonical_witness(pattern: &SignPattern) -> Result<Witness> {
    let blocks = pattern.blocks();
    let mut factors = Vec::new();
    for (i, &b) in blocks.iter().enumerate() {
        if i > 0 {
            factors.push(single_positive_witness());
        }
        if b > 1 {
            factors.push(all_negative_witness(b - 1)?);
        }
    }
    let w = concatenate_chain(&factors, &ConcatParams::default())?;
    debug_assert_eq!(&w.couple.pattern, pattern);
    Ok(w)
}

const DEGREE6_BASES: &str = include_str!("../bases/degree6_sigma322.json");

/// Committed degree-6 witnesses for `Σ_{3,2,2}`, keyed by code and
/// re-verified on first use.
pub fn degree6_bases() -> &'static BTreeMap<TripleCode, Witness> {
    static CACHE: OnceLock<BTreeMap<TripleCode, Witness>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let list: Vec<Witness> =
            serde_json::from_str(DEGREE6_BASES).expect("committed bases verify");
        list.into_iter()
            .filter_map(|w| w.couple.triple_code().ok().map(|c| (c, w)))
            .collect()
    })
}

pub fn bases_to_json(bases: &[Witness]) -> String {
    serde_json::to_string_pretty(bases).expect("witnesses serialize") + "\n"
}

/// Realizes `(Σ_{m,2,2}, (u,v,w))`, `m >= 3`, by lifting the cached degree-6
/// base `(u, v, w - (m-3))` with `(1 + εx)` factors.
pub fn realize_sigma_m22(m: usize, code: TripleCode) -> Result<Witness> {
    let target = Couple::from_triple(SignPattern::from_blocks(&[m, 2, 2])?, code)?;
    if m < 3 || code.w + 3 < m {
        return Err(Error::Unsupported(format!("no lift route to {target}")));
    }
    let base_code = TripleCode::new(code.u, code.v, code.w + 3 - m);
    let base = degree6_bases()
        .get(&base_code)
        .ok_or_else(|| Error::Unsupported(format!("no cached degree-6 base {base_code}")))?;
    let mut w = base.clone();
    for _ in 3..m {
        w = lift_w(&w, &rat(1, 2))?;
    }
    if w.couple != target {
        return Err(Error::SoundnessViolation(format!(
            "lift produced {} instead of {target}",
            w.couple
        )));
    }
    Ok(w)
}

/// One-line summary: couple, roots and expanded polynomial.
pub fn describe(w: &Witness) -> String {
    let roots: Vec<String> = w.roots.values().map(rational::to_pq).collect();
    format!("{} via roots [{}]: {}", w.couple, roots.join(", "), w.coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Couple {
        s.parse().unwrap()
    }

    #[test]
    fn base_witnesses() {
        let w = base_witness_sigma22(PairCode::new(2, 0)).unwrap();
        assert_eq!(w.coefficients.to_string(), "x^3 + 1/2x^2 - 11/2x - 5");
        let w = base_witness_sigma22(PairCode::new(1, 1)).unwrap();
        assert_eq!(w.coefficients.to_string(), "x^3 + 2x^2 - 5x - 6");
        let w = base_witness_sigma22(PairCode::new(0, 2)).unwrap();
        assert_eq!(w.coefficients.to_string(), "x^3 + 6/5x^2 - 79/100x - 99/100");
        assert!(base_witness_sigma22(PairCode::new(3, 0)).is_err());
    }

    #[test]
    fn all_negative() {
        assert!(all_negative_witness(0).is_err());
        assert_eq!(all_negative_witness(1).unwrap().coefficients.to_string(), "x + 1");
        let w = all_negative_witness(2).unwrap();
        assert_eq!(w.coefficients.to_string(), "x^2 + 3x + 2");
        assert_eq!(w.couple.order.to_string(), "NN");
        assert_eq!(all_negative_witness(3).unwrap().coefficients.to_string(), "x^3 + 6x^2 + 11x + 6");
    }

    #[test]
    fn concatenation_examples() {
        let top = single_positive_witness();
        let bottom = all_negative_witness(1).unwrap();
        let w = concatenate(&top, &bottom, &ConcatParams::default()).unwrap();
        assert_eq!(w.coefficients.to_string(), "x^2 - 1/2x - 1/2");
        assert_eq!(w.couple.pattern.to_string(), "+ - -");
        assert_eq!(w.couple.order.to_string(), "NP");

        let top = base_witness_sigma22(PairCode::new(1, 1)).unwrap();
        let w = concatenate(&top, &all_negative_witness(1).unwrap(), &ConcatParams::default()).unwrap();
        assert_eq!(w.couple.pattern.blocks(), vec![2, 3]);

        let s22 = SignPattern::from_blocks(&[2, 2]).unwrap();
        assert_eq!(concatenated_pattern(&s22, &s22).blocks(), vec![2, 3, 2]);
    }

    #[test]
    fn lifts() {
        let base = canonical_witness(&SignPattern::from_blocks(&[3, 2, 2]).unwrap()).unwrap();
        assert_eq!(base.couple, c("S3,2,2 (1,1,2)"));
        let once = lift_w(&base, &rat(1, 2)).unwrap();
        assert_eq!(once.couple, c("S4,2,2 (1,1,3)"));
        let twice = lift_w(&once, &rat(1, 2)).unwrap();
        assert_eq!(twice.couple, c("S5,2,2 (1,1,4)"));
        assert_eq!(twice.couple.order.letters().last(), Some(&Letter::N));
    }

    #[test]
    fn triple_concatenation() {
        for (n, code) in [(4, (2, 1, 2)), (4, (0, 5, 0)), (5, (1, 3, 2)), (6, (1, 4, 2))] {
            let code = TripleCode::new(code.0, code.1, code.2);
            let w = realize_sigma_2n2(n, code).unwrap();
            assert!(w.reverify());
            assert_eq!(w.couple.triple_code().unwrap(), code);
            assert_eq!(w.couple.pattern.blocks(), vec![2, n, 2]);
        }
        assert!(realize_sigma_2n2(4, TripleCode::new(3, 1, 1)).is_err());
    }

    #[test]
    fn canonical_witnesses() {
        for b in [[1, 4, 1], [3, 1, 2], [2, 4, 2], [4, 2, 2], [1, 1, 1]] {
            let p = SignPattern::from_blocks(&b).unwrap();
            let w = canonical_witness(&p).unwrap();
            assert_eq!(w.couple, crate::signs::canonical_couple(&p).unwrap());
        }
    }

    #[test]
    fn involution_covariance() {
        let w = realize_sigma_2n2(4, TripleCode::new(1, 2, 2)).unwrap();
        let m = w.apply_im().unwrap();
        assert_eq!(m.couple, w.couple.apply_im());
        let r = w.apply_ir().unwrap();
        assert_eq!(r.couple, w.couple.apply_ir());
    }

    #[test]
    fn witness_json_round_trip() {
        let w = base_witness_sigma22(PairCode::new(2, 0)).unwrap();
        let j = w.to_json();
        let back: Witness = serde_json::from_str(&j).unwrap();
        assert_eq!(back, w);
        let tampered = j.replace("\"5/2\"", "\"7/2\"");
        assert!(serde_json::from_str::<Witness>(&tampered).is_err());
    }
}
