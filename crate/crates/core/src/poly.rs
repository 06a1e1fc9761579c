//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, binomial, Rational};

/// Coefficients are stored constant term first; the leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        Polynomial {
            coeffs: vec![-r.clone(), Rational::one()],
        }
    }

    /// Monic product of `(x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut coeffs = vec![Rational::one()];
        for r in roots {
            // multiply by x, then subtract r times the old polynomial
            coeffs.insert(0, Rational::zero());
            for j in 0..coeffs.len() - 1 {
                let t = &coeffs[j + 1] * r;
                coeffs[j] -= t;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)`. Integer coefficients are evaluated homogeneously in
    /// `BigInt`, skipping the gcd that every rational step would pay.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if !self.coeffs.iter().all(|c| c.is_integer()) {
            return crate::rational::sign(&self.eval(x));
        }
        let (n, d) = (x.numer(), x.denom());
        let mut it = self.coeffs.iter().rev();
        let Some(lead) = it.next() else { return 0 };
        let mut acc = lead.numer().clone();
        let mut dp = BigInt::one();
        for c in it {
            dp *= d;
            acc = acc * n + c.numer() * &dp;
        }
        match acc.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * rational::int(j as i64))
                .collect(),
        )
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^d p(1/x)`
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Polynomial::new(c)
    }

    /// `p(k x)`
    pub fn dilate(&self, k: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= k;
        }
        Polynomial::new(out)
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lc;
            if !q.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Polynomial {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sign of `p(x)` as `x` tends to `+inf` (or `-inf` when `negative`).
    pub fn sign_at_infinity(&self, negative: bool) -> i8 {
        let s = rational::sign(&self.leading());
        if negative && self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// A power of two strictly above every root modulus (Fujiwara's bound
    /// rounded up). Dyadic bounds keep bisection points dyadic.
    pub fn root_bound(&self) -> Rational {
        let d = self.degree();
        let lc = self.leading().abs();
        let two = rational::int(2);
        let mut e_max: i64 = 0;
        for k in 1..=d {
            let ratio = self.coeffs[d - k].abs() / &lc;
            if ratio.is_zero() {
                continue;
            }
            // smallest e with (2^e)^k >= ratio
            let mut e: i64 = 0;
            let pow = |e: i64| -> Rational {
                let base = if e >= 0 { two.clone() } else { two.recip() };
                num::pow(base, (e.unsigned_abs() as usize) * k)
            };
            while pow(e) < ratio {
                e += 1;
            }
            while pow(e - 1) >= ratio {
                e -= 1;
            }
            e_max = e_max.max(e);
        }
        num::pow(two, (e_max + 2) as usize)
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Polynomial::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// Binomially normalized coefficients `q_j / C(d, j)`.
    pub fn normalized_coeffs(&self) -> Vec<Rational> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c / binomial(d, j))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::pq_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = rational::pq_vec::deserialize(d)?;
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(serde::de::Error::custom("leading coefficient is zero"));
        }
        Ok(Polynomial { coeffs })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Human-readable form, highest degree first: `x^3 + 1/2x^2 - 11/2x - 5`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            if !unit || j == 0 {
                write!(f, "{a}")?;
            }
            match j {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

/// Elementary symmetric polynomials `e_0..e_k` of a list of arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricTable {
    values: Vec<Rational>,
}

impl SymmetricTable {
    /// Builds the table by multiplying out `(x + a)` for each argument.
    pub fn new(args: &[Rational]) -> Self {
        let mut values = vec![Rational::one()];
        for a in args {
            values.push(Rational::zero());
            for k in (1..values.len()).rev() {
                let prev = &values[k - 1] * a;
                values[k] += prev;
            }
        }
        SymmetricTable { values }
    }

    pub fn arity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `e_k`, zero outside `0..=arity`.
    pub fn e(&self, k: isize) -> Rational {
        if k < 0 {
            return Rational::zero();
        }
        self.values
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Normalized mean `S_k = e_k / C(arity, k)`.
    pub fn mean(&self, k: usize) -> Rational {
        self.e(k as isize) / binomial(self.arity(), k)
    }

    /// `S_j^2 - S_{j-1} S_{j+1}` for `j = 1..arity-1`.
    pub fn newton_gaps(&self) -> Vec<Rational> {
        (1..self.arity())
            .map(|j| {
                let s = self.mean(j);
                &s * &s - self.mean(j - 1) * self.mean(j + 1)
            })
            .collect()
    }
}

pub fn elementary_symmetric(args: &[Rational]) -> SymmetricTable {
    SymmetricTable::new(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn bounds_and_primitive_parts() {
        let p = Polynomial::from_roots(&[rat(5, 2), int(-1), int(-300)]);
        let b = p.root_bound();
        assert!(b > int(300) && b <= int(4 * 1024));
        assert!((b.numer() & (b.numer() - num::BigInt::one())).is_zero());
        let small = Polynomial::from_roots(&[rat(1, 100), rat(-1, 50)]);
        assert!(small.root_bound() > rat(1, 50));
        let q = Polynomial::new(vec![rat(-3, 4), rat(3, 2), rat(9, 8)]);
        assert_eq!(q.primitive(), Polynomial::from_ints(&[-2, 4, 3]));
        assert_eq!((-&q).primitive(), Polynomial::from_ints(&[2, -4, -3]));
    }

    #[test]
    fn symmetric_tables() {
        let t = elementary_symmetric(&[int(1), int(2), int(3)]);
        assert_eq!(t.values(), &[int(1), int(6), int(11), int(6)]);
        assert_eq!(elementary_symmetric(&[]).values(), &[int(1)]);
        assert_eq!(
            elementary_symmetric(&[int(2), int(2)]).values(),
            &[int(1), int(4), int(4)]
        );
    }

    #[test]
    fn from_roots_matches_hand_expansion() {
        // (x - 5/2)(x + 1)(x + 2)
        let p = Polynomial::from_roots(&[rat(5, 2), int(-1), int(-2)]);
        assert_eq!(
            p.coeffs(),
            &[int(-5), rat(-11, 2), rat(1, 2), int(1)]
        );
        assert_eq!(Polynomial::from_roots(&[int(1)]), Polynomial::from_ints(&[-1, 1]));
        assert_eq!(Polynomial::from_roots(&[]), Polynomial::one());
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_roots(&[int(1), int(2), int(3)]);
        let b = Polynomial::from_roots(&[int(2), int(5)]);
        assert_eq!(a.gcd(&b), Polynomial::from_roots(&[int(2)]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        let sq = Polynomial::from_roots(&[int(1), int(1), int(-3)]);
        assert_eq!(sq.squarefree_part(), Polynomial::from_roots(&[int(1), int(-3)]));
    }

    #[test]
    fn display() {
        let p = Polynomial::from_roots(&[rat(5, 2), int(-1), int(-2)]);
        assert_eq!(p.to_string(), "x^3 + 1/2x^2 - 11/2x - 5");
        assert_eq!(Polynomial::from_ints(&[1, 0, 1]).to_string(), "x^2 + 1");
    }

    #[test]
    fn json_is_pq_constant_first() {
        let p = Polynomial::from_roots(&[rat(5, 2), int(-1), int(-2)]);
        assert_eq!(p.to_json(), r#"["-5/1","-11/2","1/2","1/1"]"#);
        assert_eq!(Polynomial::from_json(&p.to_json()).unwrap(), p);
        assert!(Polynomial::from_json(r#"["1/1","0/1"]"#).is_err());
    }

    #[test]
    fn reflect_reverse_dilate() {
        let p = Polynomial::from_roots(&[int(2), int(-3)]);
        assert_eq!(p.reflect(), Polynomial::from_roots(&[int(-2), int(3)]));
        assert_eq!(p.reverse().monic(), Polynomial::from_roots(&[rat(1, 2), rat(-1, 3)]));
        // p(2x) has roots 1 and -3/2
        assert_eq!(p.dilate(&int(2)).monic(), Polynomial::from_roots(&[int(1), rat(-3, 2)]));
    }
}
