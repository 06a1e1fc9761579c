//! Real-root counting and isolation with Sturm chains.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::signs::{Letter, ModuliOrder};

/// An interval endpoint, possibly infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::Finite(r)
    }
}

/// Signed remainder chain `p, p', -rem(p, p'), ...`.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        // positive rescaling keeps every sign, and primitive integer
        // coefficients keep the chain from blowing up
        let mut chain = vec![p.primitive()];
        let mut next = p.derivative().primitive();
        while !next.is_zero() {
            let r = (-&chain.last().unwrap().rem(&next)).primitive();
            chain.push(next);
            next = r;
        }
        SturmChain { chain }
    }

    /// The head of the chain, a positive multiple of the input.
    pub fn polynomial(&self) -> &Polynomial {
        &self.chain[0]
    }

    fn variations_by<F: Fn(&Polynomial) -> i8>(&self, sign_of: F) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign_of(p);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations(&self, at: &Bound) -> usize {
        match at {
            Bound::NegInf => self.variations_by(|p| p.sign_at_infinity(true)),
            Bound::PosInf => self.variations_by(|p| p.sign_at_infinity(false)),
            Bound::Finite(x) => self.variations_by(|p| p.sign_at(x)),
        }
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize> {
        let p = self.polynomial();
        for b in [lo, hi] {
            if let Bound::Finite(x) = b {
                if p.sign_at(x) == 0 {
                    return Err(Error::BoundaryRoot);
                }
            }
        }
        let ordered = match (lo, hi) {
            (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
            _ => true,
        };
        if !ordered {
            return Err(Error::EmptyInterval);
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Exact count of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn count_real_roots(p: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::BoundaryRoot);
    }
    SturmChain::new(p).count(lo, hi)
}

/// True iff every complex root of `p` is real (multiplicities allowed).
pub fn is_hyperbolic(p: &Polynomial) -> bool {
    if p.is_constant() {
        return false;
    }
    let sf = p.squarefree_part();
    let n = count_real_roots(&sf, &Bound::NegInf, &Bound::PosInf).unwrap_or(0);
    n == sf.degree()
}

/// An isolating interval: exactly one root in `(lo, hi)`, or the exact root
/// `lo` when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive() || (self.lo.is_zero() && self.hi.is_positive())
    }

    /// Closed interval containing the modulus of the root.
    pub fn modulus(&self) -> (Rational, Rational) {
        if self.is_positive() {
            (self.lo.clone(), self.hi.clone())
        } else {
            (-self.hi.clone(), -self.lo.clone())
        }
    }

    fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halve the interval, keeping the root. Requires `p` to change sign
    /// across a simple root.
    fn bisect(&mut self, p: &Polynomial) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / rational::int(2);
        let at_mid = p.sign_at(&mid);
        if at_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let at_lo = p.sign_at(&self.lo);
        if at_lo != 0 && at_lo != at_mid {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }
}

/// Isolates every real root of a squarefree `p` into disjoint intervals,
/// ordered left to right.
pub fn isolate_real_roots(p: &Polynomial) -> Vec<RootInterval> {
    if p.is_constant() {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let b = p.root_bound();
    let mut out = Vec::new();
    isolate_in(&chain, -b.clone(), b, &mut out);
    out
}

fn isolate_in(chain: &SturmChain, lo: Rational, hi: Rational, out: &mut Vec<RootInterval>) {
    let n = chain
        .count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()))
        .expect("isolation endpoints are never roots");
    match n {
        0 => {}
        1 => out.push(RootInterval { lo, hi }),
        _ => {
            let mut mid = (&lo + &hi) / rational::int(2);
            while chain.polynomial().sign_at(&mid) == 0 {
                mid = (&mid + &hi) / rational::int(2);
            }
            isolate_in(chain, lo, mid.clone(), out);
            isolate_in(chain, mid, hi, out);
        }
    }
}

/// The word of P/N letters obtained by listing the roots of `p` by
/// increasing modulus.
pub fn moduli_order(p: &Polynomial) -> Result<ModuliOrder> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if p.coeff(0).is_zero() {
        return Err(Error::RootAtZero);
    }
    let p = &p.primitive();
    if !p.gcd(&p.derivative()).is_constant() {
        return Err(if is_hyperbolic(p) {
            Error::NonGeneric
        } else {
            Error::NotHyperbolic
        });
    }
    let chain = SturmChain::new(p);
    if chain.count(&Bound::NegInf, &Bound::PosInf)? != p.degree() {
        return Err(Error::NotHyperbolic);
    }
    if !p.gcd(&p.reflect()).is_constant() {
        return Err(Error::ModuliTie);
    }
    let b = p.root_bound();
    let mut roots = Vec::new();
    isolate_in(&chain, -b.clone(), b, &mut roots);
    refine_until_moduli_separate(chain.polynomial(), &mut roots);
    roots.sort_by(|a, b| a.modulus().0.cmp(&b.modulus().0));
    Ok(ModuliOrder::new(
        roots
            .iter()
            .map(|r| if r.is_positive() { Letter::P } else { Letter::N })
            .collect(),
    ))
}

/// Bisects isolating intervals until the modulus intervals of all roots are
/// pairwise disjoint. Terminates only when moduli are pairwise distinct and
/// no interval straddles zero.
pub fn refine_until_moduli_separate(p: &Polynomial, roots: &mut [RootInterval]) {
    loop {
        // An interval straddling 0 cannot be assigned a sign yet.
        let mut changed = false;
        for r in roots.iter_mut() {
            while r.lo.is_negative() && r.hi.is_positive() {
                r.bisect(p);
                changed = true;
            }
        }
        let mut overlap = None;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let (a0, a1) = roots[i].modulus();
                let (b0, b1) = roots[j].modulus();
                if a0 <= b1 && b0 <= a1 {
                    overlap = Some((i, j));
                    break 'outer;
                }
            }
        }
        match overlap {
            None if !changed => return,
            None => continue,
            Some((i, j)) => {
                let wi = roots[i].width();
                let wj = roots[j].width();
                if wi >= wj {
                    roots[i].bisect(p);
                } else {
                    roots[j].bisect(p);
                }
            }
        }
    }
}
