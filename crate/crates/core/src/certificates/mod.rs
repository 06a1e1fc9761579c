//! Checks backing the non-realizability rules.
//!
//! Two kinds of entries live here. *Sampled* certificates draw exact rational
//! configurations from a constrained sampler and evaluate a strict inequality
//! exactly; they are evidence, not proof. *Identity* certificates verify
//! closed-form coefficient formulas as polynomial identities by exact
//! evaluation on a grid larger than the per-variable degree.

mod identities;
mod sampled;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use identities::{b12_gap_width, check_identity, IDENTITY_IDS};
pub use sampled::SAMPLED_IDS;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSpec {
    pub id: String,
    pub trials: u64,
    pub seed: u64,
    /// Optional overrides: `h_star` for NEWTON_PRODUCT, `d_min`/`d_max` for
    /// the families sampled over a window of degrees.
    #[serde(default, with = "named_rationals")]
    pub constants: BTreeMap<String, Rational>,
}

impl CertificateSpec {
    pub fn new(id: &str, trials: u64, seed: u64) -> Self {
        CertificateSpec {
            id: id.to_string(),
            trials,
            seed,
            constants: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Sampled,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub id: String,
    pub kind: CertificateKind,
    pub trials_run: u64,
    pub violations: u64,
    /// Smallest margin seen; absent for identities, which have no margin.
    #[serde(with = "opt_pq")]
    pub min_margin: Option<Rational>,
    pub pass: bool,
}

impl CertificateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Coefficients of the monic cubic `x^3 + A x^2 + B x + C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicTriple {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl CubicTriple {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        CubicTriple { a, b, c }
    }

    /// `0 < A/2 < C < 2A` and `1/2 < B < 2`.
    pub fn in_domain(&self) -> bool {
        let two = rational::int(2);
        let half = rational::rat(1, 2);
        let zero = rational::int(0);
        zero < &self.a / &two
            && &self.a / &two < self.c
            && self.c < &self.a * &two
            && half < self.b
            && self.b < two
    }
}

/// `4A^3C - A^2B^2 - 18ABC + 4B^3 + 27C^2`
pub fn cubic_discriminant(t: &CubicTriple) -> Rational {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let k = |n: i64| rational::int(n);
    k(4) * a * a * a * c - a * a * b * b - k(18) * a * b * c + k(4) * b * b * b + k(27) * c * c
}

/// Parameters of the coalesced configuration `(x+1)^2 (x+c)^2 (x-1) h(x)`
/// with `h = x^2 + A x - B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseB12Params {
    pub c: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl CaseB12Params {
    pub fn new(c: Rational, a: Rational, b: Rational) -> Result<Self> {
        if c <= rational::int(0) || c >= rational::int(1) {
            return Err(Error::InvalidConfiguration("c must lie in (0, 1)".into()));
        }
        Ok(CaseB12Params { c, a, b })
    }
}

pub fn catalog() -> Vec<&'static str> {
    SAMPLED_IDS.iter().chain(IDENTITY_IDS).copied().collect()
}

/// Runs a sampled certificate, or an identity check when `id` names one.
/// Deterministic in `spec` for any number of worker threads.
pub fn run_certificate(spec: &CertificateSpec) -> Result<CertificateReport> {
    if spec.trials == 0 {
        return Err(Error::InvalidConfiguration("trials must be at least 1".into()));
    }
    if IDENTITY_IDS.contains(&spec.id.as_str()) {
        let (points, failures) = identities::run(&spec.id)?;
        return Ok(CertificateReport {
            id: spec.id.clone(),
            kind: CertificateKind::Identity,
            trials_run: points,
            violations: failures,
            min_margin: None,
            pass: failures == 0,
        });
    }
    sampled::run(spec)
}

mod named_rationals {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<String, Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let text: BTreeMap<&String, String> =
            m.iter().map(|(k, v)| (k, rational::to_pq(v))).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<String, Rational>, D::Error> {
        let text = BTreeMap::<String, String>::deserialize(d)?;
        text.into_iter()
            .map(|(k, v)| {
                rational::parse_pq(&v)
                    .map(|r| (k, r))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

mod opt_pq {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        r.as_ref().map(rational::to_pq).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| rational::parse_pq(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn discriminant_values() {
        let t = CubicTriple::new(int(1), int(1), int(1));
        assert_eq!(cubic_discriminant(&t), int(16));
        assert!(t.in_domain());
        for x in [rat(1, 2), int(1), int(2), int(5)] {
            let t = CubicTriple::new(int(3) * &x, int(3) * &x * &x, &x * &x * &x);
            assert_eq!(cubic_discriminant(&t), int(0));
        }
    }

    #[test]
    fn unknown_ids() {
        let spec = CertificateSpec::new("NOPE", 10, 0);
        assert_eq!(
            run_certificate(&spec),
            Err(Error::UnknownCertificate("NOPE".into()))
        );
        assert_eq!(check_identity("NOPE"), Err(Error::UnknownIdentity("NOPE".into())));
    }

    #[test]
    fn case_params() {
        assert!(CaseB12Params::new(rat(1, 2), int(1), int(1)).is_ok());
        assert!(CaseB12Params::new(int(1), int(1), int(1)).is_err());
    }

    #[test]
    fn report_json() {
        let mut spec = CertificateSpec::new("NEWTON", 40, 3);
        spec.constants.insert("d_max".into(), int(5));
        let r = run_certificate(&spec).unwrap();
        assert!(r.pass);
        let j = r.to_json();
        assert!(j.contains("\"kind\": \"sampled\""));
        let back: CertificateReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains("\"d_max\":\"5/1\""));
        assert_eq!(serde_json::from_str::<CertificateSpec>(&s).unwrap(), spec);
    }
}
