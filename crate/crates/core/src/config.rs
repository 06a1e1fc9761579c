use num::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::signs::{Letter, ModuliOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub value: Rational,
    pub role: Role,
}

#[derive(Serialize, Deserialize)]
struct RootRepr {
    value: String,
    role: Role,
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootRepr {
            value: rational::to_pq(&self.value),
            role: self.role,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RootRepr::deserialize(d)?;
        let value = rational::parse_pq(&r.value).map_err(serde::de::Error::custom)?;
        Ok(Root { value, role: r.role })
    }
}

/// Signed simple roots with pairwise distinct moduli.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RootConfiguration {
    roots: Vec<Root>,
}

impl RootConfiguration {
    /// Roles are read off the signs of the values.
    pub fn from_values(values: Vec<Rational>) -> Result<Self> {
        let roots = values
            .into_iter()
            .map(|value| {
                let role = if value.is_negative() {
                    Role::Negative
                } else {
                    Role::Positive
                };
                Root { value, role }
            })
            .collect();
        Self::new(roots)
    }

    pub fn new(roots: Vec<Root>) -> Result<Self> {
        for r in &roots {
            if r.value.is_zero() {
                return Err(Error::InvalidConfiguration("zero root".into()));
            }
            let ok = match r.role {
                Role::Positive => r.value.is_positive(),
                Role::Negative => r.value.is_negative(),
            };
            if !ok {
                return Err(Error::InvalidConfiguration(format!(
                    "root {} does not match its role",
                    rational::to_pq(&r.value)
                )));
            }
        }
        let mut moduli: Vec<Rational> = roots.iter().map(|r| r.value.abs()).collect();
        moduli.sort();
        if moduli.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfiguration("repeated modulus".into()));
        }
        Ok(RootConfiguration { roots })
    }

    /// Places the given increasing moduli on the letters of `order`.
    pub fn from_order(order: &ModuliOrder, moduli: &[Rational]) -> Result<Self> {
        if order.len() != moduli.len() {
            return Err(Error::InvalidConfiguration("length mismatch".into()));
        }
        if moduli.windows(2).any(|w| w[0] >= w[1]) || moduli.first().is_some_and(|m| !m.is_positive())
        {
            return Err(Error::InvalidConfiguration(
                "moduli must be positive and strictly increasing".into(),
            ));
        }
        let values = order
            .letters()
            .iter()
            .zip(moduli)
            .map(|(l, m)| match l {
                Letter::P => m.clone(),
                Letter::N => -m.clone(),
            })
            .collect();
        Self::from_values(values)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.roots.iter().map(|r| &r.value)
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn expand(&self) -> Polynomial {
        Polynomial::from_roots(self.values())
    }

    /// The order of moduli read directly off the values.
    pub fn order(&self) -> ModuliOrder {
        let mut rs: Vec<&Root> = self.roots.iter().collect();
        rs.sort_by_key(|r| r.value.abs());
        ModuliOrder::new(
            rs.iter()
                .map(|r| match r.role {
                    Role::Positive => Letter::P,
                    Role::Negative => Letter::N,
                })
                .collect(),
        )
    }

    pub fn positive_moduli(&self) -> Vec<Rational> {
        self.moduli_of(Role::Positive)
    }

    pub fn negative_moduli(&self) -> Vec<Rational> {
        self.moduli_of(Role::Negative)
    }

    fn moduli_of(&self, role: Role) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .roots
            .iter()
            .filter(|r| r.role == role)
            .map(|r| r.value.abs())
            .collect();
        v.sort();
        v
    }

    pub fn max_modulus(&self) -> Rational {
        self.values().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn min_modulus(&self) -> Rational {
        self.values().map(|v| v.abs()).min().unwrap_or_else(Rational::zero)
    }

    /// Multiply every root by `k > 0`.
    pub fn scaled(&self, k: &Rational) -> Self {
        Self::from_values(self.values().map(|v| v * k).collect()).expect("scaling keeps validity")
    }

    /// `r -> -r`, the root-level action of `i_m`.
    pub fn negated(&self) -> Self {
        Self::from_values(self.values().map(|v| -v.clone()).collect()).expect("valid")
    }

    /// `r -> 1/r`, the root-level action of `i_r`.
    pub fn inverted(&self) -> Self {
        Self::from_values(self.values().map(|v| v.recip()).collect()).expect("valid")
    }

    pub fn joined(&self, other: &RootConfiguration) -> Result<Self> {
        let mut roots = self.roots.clone();
        roots.extend_from_slice(&other.roots);
        Self::new(roots)
    }
}

impl<'de> Deserialize<'de> for RootConfiguration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let roots = Vec::<Root>::deserialize(d)?;
        RootConfiguration::new(roots).map_err(serde::de::Error::custom)
    }
}

/// Monic polynomial with the configuration's roots.
pub fn expand(config: &RootConfiguration) -> Polynomial {
    config.expand()
}
