use super::{cubic_discriminant, CaseB12Params, CubicTriple};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{int, rat, Rational};

pub const IDENTITY_IDS: &[&str] = &[
    "B22",
    "B23",
    "B12_Q2Q5",
    "B12_GAP",
    "LEM2_BORDER1",
    "LEM2_BORDER2",
    "P6_A",
    "P6_B",
    "P6_C",
];

/// Pairs `(computed, closed form)` at one parameter point.
type Sides = Vec<(Rational, Rational)>;

struct Identity {
    /// Degree bound in each parameter; the grid uses two more points.
    degrees: &'static [usize],
    sides: fn(&[Rational]) -> Sides,
    spots: fn() -> Sides,
}

fn lookup(id: &str) -> Result<Identity> {
    let none: fn() -> Sides = Vec::new;
    Ok(match id {
        "B22" => Identity { degrees: &[1, 1, 1], sides: b22, spots: b22_spot },
        "B23" => Identity { degrees: &[1, 1, 1], sides: b23, spots: none },
        "B12_Q2Q5" => Identity { degrees: &[2, 1, 1], sides: b12_q2q5, spots: none },
        "B12_GAP" => Identity { degrees: &[10, 1, 1], sides: b12_gap, spots: b12_gap_spot },
        "LEM2_BORDER1" => Identity { degrees: &[6, 4], sides: border1, spots: border1_spot },
        "LEM2_BORDER2" => Identity { degrees: &[6, 4], sides: border2, spots: border2_spot },
        "P6_A" => Identity { degrees: &[2, 1, 2], sides: p6_a, spots: none },
        "P6_B" => Identity { degrees: &[1, 1, 1], sides: p6_b, spots: none },
        "P6_C" => Identity { degrees: &[1, 1, 1], sides: p6_c, spots: none },
        _ => return Err(Error::UnknownIdentity(id.to_string())),
    })
}

/// Distinct points of `(0, 1/2)`, which keep every denominator used here
/// away from zero.
fn grid(n: usize) -> Vec<Rational> {
    (0..n).map(|i| rat(i as i64 + 1, 2 * i as i64 + 3)).collect()
}

/// Number of comparisons made and number that failed.
pub(super) fn run(id: &str) -> Result<(u64, u64)> {
    let ident = lookup(id)?;
    let axes: Vec<Vec<Rational>> = ident.degrees.iter().map(|&k| grid(k + 2)).collect();
    let mut point = vec![Rational::default(); axes.len()];
    let (mut checked, mut failed) = (0u64, 0u64);
    let mut tally = |pairs: Sides| {
        for (l, r) in pairs {
            checked += 1;
            if l != r {
                failed += 1;
            }
        }
    };
    let mut idx = vec![0usize; axes.len()];
    'grid: loop {
        for (k, &i) in idx.iter().enumerate() {
            point[k] = axes[k][i].clone();
        }
        tally((ident.sides)(&point));
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                continue 'grid;
            }
            idx[k] = 0;
        }
        break;
    }
    tally((ident.spots)());
    Ok((checked, failed))
}

/// True iff the identity holds as a polynomial identity.
pub fn check_identity(id: &str) -> Result<bool> {
    run(id).map(|(_, failed)| failed == 0)
}

fn roots(v: &[Rational]) -> Polynomial {
    Polynomial::from_roots(v)
}

fn b22(p: &[Rational]) -> Sides {
    let (beta, g3, y1) = (&p[0], &p[1], &p[2]);
    let q = roots(&[int(-1), int(-1), int(-1), int(1), beta.clone(), -g3, -y1]);
    vec![(q.coeff(2) + int(2) * q.coeff(5), int(3) * (y1 - beta + g3))]
}

fn b22_spot() -> Sides {
    let q = b22(&[rat(1, 2), int(2), rat(1, 3)]);
    vec![q[0].clone(), (q[0].1.clone(), rat(11, 2))]
}

fn b23(p: &[Rational]) -> Sides {
    let (beta, g2, g3) = (&p[0], &p[1], &p[2]);
    let q = roots(&[int(-1), int(-1), int(-1), int(1), beta.clone(), -g2, -g3]);
    vec![(q.coeff(2) + int(2) * q.coeff(5), int(3) * (g2 + g3 - beta))]
}

fn b12_poly(t: &CaseB12Params) -> Polynomial {
    let c = &t.c;
    let base = roots(&[int(-1), int(-1), -c, -c, int(1)]);
    let h = Polynomial::new(vec![-t.b.clone(), t.a.clone(), int(1)]);
    &base * &h
}

fn b12_q2q5(p: &[Rational]) -> Sides {
    let t = CaseB12Params::new(p[0].clone(), p[1].clone(), p[2].clone()).expect("c in (0,1)");
    let q = b12_poly(&t);
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let c2 = c * c;
    let q2 = -(a * &c2) - b * &c2 - int(2) * a * c + int(2) * b * c - &c2 + b;
    let q5 = int(2) * a * c + &c2 + a - b + int(2) * c - int(1);
    vec![(q.coeff(2), q2), (q.coeff(5), q5)]
}

/// `B` on the lines `q_2 = 0` and `q_5 = 0` as functions of `A`.
fn b_on_q2(c: &Rational, a: &Rational) -> Rational {
    let c2 = c * c;
    ((&c2 + int(2) * c) * a + &c2) / (-&c2 + int(2) * c + int(1))
}

fn b_on_q5(c: &Rational, a: &Rational) -> Rational {
    (int(2) * c + int(1)) * a + c * c + int(2) * c - int(1)
}

fn a_prime(c: &Rational) -> Rational {
    let c2 = c * c;
    -(&c2 * &c2 - int(5) * &c2 + int(1)) / (int(2) * &c2 * c - int(2) * &c2 - int(2) * c - int(1))
}

fn a_second(c: &Rational) -> Rational {
    (int(1) + int(2) * c - int(2) * c * c) / (int(4) * c + int(1))
}

fn b12_gap(p: &[Rational]) -> Sides {
    let (c, a, b) = (&p[0], &p[1], &p[2]);
    let c2 = c * c;
    let (a1, a2) = (a_prime(c), a_second(c));
    let gap = int(9) * &c2 * (&c2 - int(2) * c - int(1))
        / ((int(2) * &c2 * c - int(2) * &c2 - int(2) * c - int(1)) * (int(4) * c + int(1)));
    // the two lines really are q_2 = 0 and q_5 = 0 of the expanded product
    let t = CaseB12Params::new(c.clone(), a.clone(), b_on_q2(c, a)).expect("c in (0,1)");
    let on_q2 = b12_poly(&t).coeff(2);
    let t = CaseB12Params::new(c.clone(), a.clone(), b_on_q5(c, a)).expect("c in (0,1)");
    let on_q5 = b12_poly(&t).coeff(5);
    let h = Polynomial::new(vec![-b.clone(), a.clone(), int(1)]);
    vec![
        (&a2 - &a1, gap),
        (b_on_q2(c, &a1), b_on_q5(c, &a1)),
        (b_on_q2(c, &a2), int(1) - &a2),
        (on_q2, int(0)),
        (on_q5, int(0)),
        (h.eval(&int(-1)), int(1) - a - b),
    ]
}

fn b12_gap_spot() -> Sides {
    let c = rat(1, 2);
    vec![
        (a_second(&c), rat(1, 2)),
        (a_prime(&c), rat(-1, 12)),
        (b12_gap_width(&c), rat(7, 12)),
    ]
}

/// `A'' - A'`, the width of the gap between the two line intersections.
pub fn b12_gap_width(c: &Rational) -> Rational {
    a_second(c) - a_prime(c)
}

fn tau(b: &Rational) -> Rational {
    -int(4) * b * b - int(36) * b + int(27)
}

fn lambda(b: &Rational) -> Rational {
    -(b * b) / int(4) - int(9) * b + int(27)
}

fn border1(p: &[Rational]) -> Sides {
    let (b, c) = (&p[0], &p[1]);
    let t = tau(b);
    let b3 = b * b * b;
    let rho = cubic_discriminant(&CubicTriple::new(int(2) * c, b.clone(), c.clone()));
    let c2 = c * c;
    vec![
        (&t * &t - int(512) * &b3, (int(2) * b - int(1)) * cube(&(int(2) * b - int(9)))),
        (rho, int(32) * &c2 * &c2 + &t * &c2 + int(4) * &b3),
    ]
}

fn border1_spot() -> Sides {
    let at = |b: i64| {
        let t = tau(&int(b));
        &t * &t - int(512 * b * b * b)
    };
    vec![(at(0), int(729)), (at(1), int(-343))]
}

fn border2(p: &[Rational]) -> Sides {
    let (b, c) = (&p[0], &p[1]);
    let l = lambda(b);
    let b3 = b * b * b;
    let rho = cubic_discriminant(&CubicTriple::new(c / int(2), b.clone(), c.clone()));
    let c2 = c * c;
    vec![
        (&l * &l - int(8) * &b3, (b - int(2)) * cube(&(b - int(18))) / int(16)),
        (rho, &c2 * &c2 / int(2) + &l * &c2 + int(4) * &b3),
    ]
}

fn border2_spot() -> Sides {
    let at = |b: i64| {
        let l = lambda(&int(b));
        &l * &l - int(8 * b * b * b)
    };
    vec![(at(0), int(729)), (at(1), rat(4913, 16))]
}

fn cube(x: &Rational) -> Rational {
    x * x * x
}

fn p6_a(p: &[Rational]) -> Sides {
    let (g1, beta, g4) = (&p[0], &p[1], &p[2]);
    let q = roots(&[-g1, beta.clone(), int(1), int(-1), int(-1), -g4, -g4]);
    let lhs = q.coeff(2) + (int(1) + g1) * q.coeff(5);
    let two_g4 = int(2) * g4;
    let rhs = beta * g4 * g4 * (int(1) - g1)
        + (&two_g4 - beta) * (g1 * g1 + g1)
        + (&two_g4 - beta - int(1))
        + g1 * g1;
    vec![(lhs, rhs)]
}

fn p6_b(p: &[Rational]) -> Sides {
    let (g1, beta, g5) = (&p[0], &p[1], &p[2]);
    let q = roots(&[-g1, beta.clone(), int(1), int(-1), int(-1), int(-1), -g5]);
    let rhs = g1 * beta + g5 * (beta - g1) + (g5 - beta) + g1;
    vec![(q.coeff(2) + q.coeff(5), rhs)]
}

fn p6_c(p: &[Rational]) -> Sides {
    let (g1, beta, g2) = (&p[0], &p[1], &p[2]);
    let q = roots(&[-g1, beta.clone(), -g2, int(1), int(-1), int(-1), int(-1)]);
    let rhs = beta * g2 + beta * g1 + (int(1) - g2) * g1 + (g2 - beta);
    vec![(q.coeff(2) + q.coeff(5), rhs)]
}
