//! Sign patterns, orders of moduli and the couples built from them.
//!
//! A [`SignPattern`] is always stored with a leading `+`. A [`ModuliOrder`]
//! is a word over `{P, N}` listing root moduli in increasing order. A
//! [`Couple`] pairs the two; it is *compatible* when the number of `P`
//! letters equals the number of sign changes.
//!
//! Two commuting involutions act on couples:
//!
//! * `i_m : Q(x) -> (-1)^d Q(-x)` flips every other sign of the pattern
//!   (starting after the leading one) and swaps `P` and `N`;
//! * `i_r : Q(x) -> x^d Q(1/x) / Q(0)` reads pattern and word from the
//!   right.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    signs: Vec<Sign>,
}

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        match signs.first() {
            None => Err(Error::InvalidPattern("empty pattern".into())),
            Some(Sign::Minus) => Err(Error::InvalidPattern("leading sign must be +".into())),
            Some(Sign::Plus) => Ok(SignPattern { signs }),
        }
    }

    /// Sign pattern with a leading `+`, normalizing by a global flip.
    pub fn normalized(mut signs: Vec<Sign>) -> Result<Self> {
        if signs.first() == Some(&Sign::Minus) {
            signs.iter_mut().for_each(|s| *s = s.flip());
        }
        Self::new(signs)
    }

    /// `Σ_{m1,...,ms}`: alternating runs of the given lengths, starting with `+`.
    pub fn from_blocks(blocks: &[usize]) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidPattern(format!("bad block lengths {blocks:?}")));
        }
        let mut signs = Vec::new();
        let mut s = Sign::Plus;
        for &b in blocks {
            signs.extend(std::iter::repeat_n(s, b));
            s = s.flip();
        }
        Self::new(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn degree(&self) -> usize {
        self.signs.len() - 1
    }

    pub fn blocks(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev = None;
        for &s in &self.signs {
            if Some(s) == prev {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
            }
            prev = Some(s);
        }
        out
    }

    pub fn changes(&self) -> usize {
        self.signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn preservations(&self) -> usize {
        self.degree() - self.changes()
    }

    /// Sign required of the coefficient of `x^j`.
    pub fn sign_of_coeff(&self, j: usize) -> Sign {
        self.signs[self.degree() - j]
    }

    /// Short label such as `S2,4,2`.
    pub fn label(&self) -> String {
        let b: Vec<String> = self.blocks().iter().map(|b| b.to_string()).collect();
        format!("S{}", b.join(","))
    }

    fn apply_im(&self) -> SignPattern {
        let signs = self
            .signs
            .iter()
            .enumerate()
            .map(|(i, &s)| if i % 2 == 1 { s.flip() } else { s })
            .collect();
        SignPattern { signs }
    }

    fn apply_ir(&self) -> SignPattern {
        let mut signs = self.signs.clone();
        signs.reverse();
        SignPattern::normalized(signs).expect("nonempty")
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signs.iter().map(|s| s.symbol().to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    /// Accepts `"+ + - -"`, `"++--"` or a block label `"S2,2"` / `"Σ2,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let stripped = t
            .strip_prefix('S')
            .or_else(|| t.strip_prefix('Σ'))
            .map(|r| r.trim_start_matches('_').trim_matches(|c| c == '{' || c == '}'));
        if let Some(rest) = stripped {
            let blocks = rest
                .split(',')
                .map(|b| b.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidPattern(format!("bad block label `{s}`")))?;
            return Self::from_blocks(&blocks);
        }
        let signs = t
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(Error::InvalidPattern(format!("unexpected `{c}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }
}

/// Sign pattern of `p`, taken after normalizing the leading coefficient to
/// be positive.
pub fn sign_pattern(p: &Polynomial) -> Result<SignPattern> {
    if p.is_zero() {
        return Err(Error::InvalidPattern("zero polynomial".into()));
    }
    let d = p.degree();
    let signs = (0..=d)
        .rev()
        .map(|j| match rational::sign(&p.coeff(j)) {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::ZeroCoefficient(j)),
        })
        .collect::<Result<Vec<_>>>()?;
    SignPattern::normalized(signs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    P,
    N,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::P => Letter::N,
            Letter::N => Letter::P,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliOrder {
    letters: Vec<Letter>,
}

impl ModuliOrder {
    pub fn new(letters: Vec<Letter>) -> Self {
        ModuliOrder { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&x| x == l).count()
    }

    /// `N^u P N^v P N^w`
    pub fn from_triple(code: TripleCode) -> Self {
        let mut letters = vec![Letter::N; code.u];
        letters.push(Letter::P);
        letters.extend(std::iter::repeat_n(Letter::N, code.v));
        letters.push(Letter::P);
        letters.extend(std::iter::repeat_n(Letter::N, code.w));
        ModuliOrder { letters }
    }

    /// `N^u P N^v`
    pub fn from_pair(code: PairCode) -> Self {
        let mut letters = vec![Letter::N; code.u];
        letters.push(Letter::P);
        letters.extend(std::iter::repeat_n(Letter::N, code.v));
        ModuliOrder { letters }
    }

    /// Concatenation: `self` holds the smaller moduli.
    pub fn then(&self, larger: &ModuliOrder) -> ModuliOrder {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&larger.letters);
        ModuliOrder { letters }
    }

    fn n_runs(&self) -> Vec<usize> {
        let mut runs = vec![0];
        for &l in &self.letters {
            match l {
                Letter::N => *runs.last_mut().unwrap() += 1,
                Letter::P => runs.push(0),
            }
        }
        runs
    }
}

impl fmt::Display for ModuliOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", if *l == Letter::P { 'P' } else { 'N' })?;
        }
        Ok(())
    }
}

impl FromStr for ModuliOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'P' | 'p' => Ok(Letter::P),
                'N' | 'n' => Ok(Letter::N),
                _ => Err(Error::InvalidOrder(format!("unexpected `{c}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::InvalidOrder("empty word".into()));
        }
        Ok(ModuliOrder { letters })
    }
}

/// `(u, v, w)`: negative moduli below β, between β and α, above α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleCode {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl TripleCode {
    pub fn new(u: usize, v: usize, w: usize) -> Self {
        TripleCode { u, v, w }
    }

    pub fn reversed(self) -> Self {
        TripleCode::new(self.w, self.v, self.u)
    }

    /// Degree of the polynomials carrying this code.
    pub fn degree(self) -> usize {
        self.u + self.v + self.w + 2
    }
}

impl fmt::Display for TripleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u, self.v, self.w)
    }
}

/// `(u, v)` for a single positive root: negative moduli below and above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairCode {
    pub u: usize,
    pub v: usize,
}

impl PairCode {
    pub fn new(u: usize, v: usize) -> Self {
        PairCode { u, v }
    }
}

impl fmt::Display for PairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Couple {
    pub pattern: SignPattern,
    pub order: ModuliOrder,
}

impl Couple {
    pub fn new(pattern: SignPattern, order: ModuliOrder) -> Result<Self> {
        if pattern.degree() != order.len() {
            return Err(Error::InvalidOrder(format!(
                "word `{order}` has length {} but the pattern has degree {}",
                order.len(),
                pattern.degree()
            )));
        }
        Ok(Couple { pattern, order })
    }

    pub fn from_triple(pattern: SignPattern, code: TripleCode) -> Result<Self> {
        Self::new(pattern, ModuliOrder::from_triple(code))
    }

    pub fn from_pair(pattern: SignPattern, code: PairCode) -> Result<Self> {
        Self::new(pattern, ModuliOrder::from_pair(code))
    }

    pub fn degree(&self) -> usize {
        self.pattern.degree()
    }

    pub fn is_compatible(&self) -> bool {
        self.order.count(Letter::P) == self.pattern.changes()
            && self.order.count(Letter::N) == self.pattern.preservations()
    }

    pub fn triple_code(&self) -> Result<TripleCode> {
        let runs = self.order.n_runs();
        if self.pattern.changes() != 2 || runs.len() != 3 {
            return Err(Error::WrongChangeCount(self.pattern.changes()));
        }
        Ok(TripleCode::new(runs[0], runs[1], runs[2]))
    }

    pub fn pair_code(&self) -> Result<PairCode> {
        let runs = self.order.n_runs();
        if self.pattern.changes() != 1 || runs.len() != 2 {
            return Err(Error::WrongChangeCount(self.pattern.changes()));
        }
        Ok(PairCode::new(runs[0], runs[1]))
    }

    /// Compact code text: `(u,v,w)` or `(u,v)` when one applies.
    pub fn code_text(&self) -> Option<String> {
        self.triple_code()
            .map(|c| c.to_string())
            .or_else(|_| self.pair_code().map(|c| c.to_string()))
            .ok()
    }

    pub fn apply_im(&self) -> Couple {
        Couple {
            pattern: self.pattern.apply_im(),
            order: ModuliOrder::new(self.order.letters.iter().map(|l| l.swap()).collect()),
        }
    }

    pub fn apply_ir(&self) -> Couple {
        let mut letters = self.order.letters.clone();
        letters.reverse();
        Couple {
            pattern: self.pattern.apply_ir(),
            order: ModuliOrder::new(letters),
        }
    }

    /// Closure of `{self}` under both involutions, sorted.
    pub fn orbit(&self) -> Vec<Couple> {
        let mut set = BTreeSet::new();
        set.insert(self.clone());
        set.insert(self.apply_im());
        set.insert(self.apply_ir());
        set.insert(self.apply_im().apply_ir());
        set.into_iter().collect()
    }
}

impl fmt::Display for Couple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.triple_code() {
            Ok(code) if self.pattern.blocks().len() == 3 => {
                write!(f, "{} {code}", self.pattern.label())
            }
            _ => write!(f, "pattern={} order={}", compact(&self.pattern), self.order),
        }
    }
}

fn compact(p: &SignPattern) -> String {
    p.signs().iter().map(|s| s.symbol()).collect()
}

impl FromStr for Couple {
    type Err = Error;

    /// Accepts `"S2,4,2 (2,1,2)"`, `"S2,2 (1,1)"` and
    /// `"pattern=++----++ order=PNNNNNP"` (optionally prefixed by `Σ`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains("pattern=") {
            let mut pattern = None;
            let mut order = None;
            for tok in t.split_whitespace() {
                if let Some(p) = tok.strip_prefix("pattern=") {
                    pattern = Some(p.parse::<SignPattern>()?);
                } else if let Some(o) = tok.strip_prefix("order=") {
                    order = Some(o.parse::<ModuliOrder>()?);
                }
            }
            return match (pattern, order) {
                (Some(p), Some(o)) => Couple::new(p, o),
                _ => Err(Error::Parse(format!("expected pattern= and order= in `{s}`"))),
            };
        }
        let open = t
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing code in `{s}`")))?;
        let pattern: SignPattern = t[..open].trim().parse()?;
        let inner = t[open..]
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("malformed code in `{s}`")))?;
        let nums = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("malformed code in `{s}`")))?;
        match nums[..] {
            [u, v, w] => Couple::from_triple(pattern, TripleCode::new(u, v, w)),
            [u, v] => Couple::from_pair(pattern, PairCode::new(u, v)),
            _ => Err(Error::Parse(format!("code must have 2 or 3 entries in `{s}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CoupleRepr {
    pattern: String,
    order: String,
    code: Option<String>,
}

impl Serialize for Couple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoupleRepr {
            pattern: self.pattern.to_string(),
            order: self.order.to_string(),
            code: self.code_text(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Couple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CoupleRepr::deserialize(d)?;
        let pattern = r.pattern.parse().map_err(serde::de::Error::custom)?;
        let order = r.order.parse().map_err(serde::de::Error::custom)?;
        Couple::new(pattern, order).map_err(serde::de::Error::custom)
    }
}

/// The couple `(Σ_{m,n,q}, (q-1, n-1, m-1))`.
pub fn canonical_couple(pattern: &SignPattern) -> Result<Couple> {
    match pattern.blocks()[..] {
        [m, n, q] => Couple::from_triple(pattern.clone(), TripleCode::new(q - 1, n - 1, m - 1)),
        _ => Err(Error::InvalidPattern(format!(
            "{} does not have three blocks",
            pattern.label()
        ))),
    }
}

/// All compatible couples of a three-block pattern, ordered by code.
pub fn enumerate_couples(pattern: &SignPattern) -> Result<Vec<Couple>> {
    if pattern.blocks().len() != 3 {
        return Err(Error::InvalidPattern(format!(
            "{} does not have three blocks",
            pattern.label()
        )));
    }
    let total = pattern.degree() - 2;
    let mut out = Vec::new();
    for u in 0..=total {
        for v in 0..=total - u {
            let code = TripleCode::new(u, v, total - u - v);
            out.push(Couple::from_triple(pattern.clone(), code)?);
        }
    }
    Ok(out)
}
