//! Quadratics with rational coefficients: exact roots (rational or of the
//! form `p + q sqrt(d)`) and sign patterns over an interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::scalar::{self, int, Scalar};

/// `p + q sqrt(d)` with `d >= 0` not a rational square, or a plain rational
/// when `q = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub p: Scalar,
    pub q: Scalar,
    pub d: Scalar,
}

fn sign(x: &Scalar) -> Ordering {
    x.cmp(&Scalar::zero())
}

fn exact_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Scalar::new(root(x.numer())?, root(x.denom())?))
}

/// Rewrites `q sqrt(d)` as `q' sqrt(n)` with `n` a positive integer whose
/// square factors up to a small bound have been pulled out.
fn reduce_surd(q: Scalar, d: &Scalar) -> (Scalar, Scalar) {
    let mut n = d.numer() * d.denom();
    let mut outside = BigInt::from(1);
    let mut f = BigInt::from(2);
    let bound = BigInt::from(100_000);
    while &f * &f <= n && f <= bound {
        let sq = &f * &f;
        while (&n % &sq).is_zero() {
            n /= &sq;
            outside *= &f;
        }
        f += 1;
    }
    let coeff = q * Scalar::new(outside, d.denom().clone());
    (coeff, Scalar::from_integer(n))
}

impl QuadraticNumber {
    pub fn rational(p: Scalar) -> Self {
        Self {
            p,
            q: Scalar::zero(),
            d: Scalar::zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&Scalar> {
        self.q.is_zero().then_some(&self.p)
    }

    /// Sign of `p + q sqrt(d)`, decided without approximation.
    pub fn signum(&self) -> Ordering {
        let sp = sign(&self.p);
        let sq = if self.d.is_zero() {
            Ordering::Equal
        } else {
            sign(&self.q)
        };
        if sq == Ordering::Equal || sp == sq {
            return sp;
        }
        if sp == Ordering::Equal {
            return sq;
        }
        match (&self.p * &self.p).cmp(&(&self.q * &self.q * &self.d)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison. Both numbers must share the same radicand unless
    /// one of them is rational, which holds for the roots of one quadratic.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let d = if self.q.is_zero() { &other.d } else { &self.d };
        debug_assert!(self.q.is_zero() || other.q.is_zero() || self.d == other.d);
        QuadraticNumber {
            p: &self.p - &other.p,
            q: &self.q - &other.q,
            d: d.clone(),
        }
        .signum()
    }

    pub fn cmp_rational(&self, r: &Scalar) -> Ordering {
        self.cmp_exact(&Self::rational(r.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        scalar::to_f64(&self.p) + scalar::to_f64(&self.q) * scalar::to_f64(&self.d).sqrt()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return f.write_str(&scalar::fraction(&self.p));
        }
        let op = if self.q.is_negative() { '-' } else { '+' };
        let q = self.q.abs();
        let coeff = if q == scalar::one() {
            String::new()
        } else {
            format!("{}*", scalar::fraction(&q))
        };
        if self.p.is_zero() {
            let sign = if self.q.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{coeff}sqrt({})", scalar::fraction(&self.d));
        }
        write!(
            f,
            "{} {op} {coeff}sqrt({})",
            scalar::fraction(&self.p),
            scalar::fraction(&self.d)
        )
    }
}

/// `a2 x^2 + a1 x + a0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadratic {
    pub a2: Scalar,
    pub a1: Scalar,
    pub a0: Scalar,
}

/// A stretch of the line where the polynomial has one sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSegment {
    pub lower: QuadraticNumber,
    pub lower_closed: bool,
    pub upper: QuadraticNumber,
    pub upper_closed: bool,
    pub sign: Ordering,
}

impl SignSegment {
    fn point(x: QuadraticNumber, sign: Ordering) -> Self {
        Self {
            lower: x.clone(),
            lower_closed: true,
            upper: x,
            upper_closed: true,
            sign,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }
}

impl fmt::Display for SignSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lower);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            self.lower,
            self.upper,
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

impl Quadratic {
    pub fn new(a2: Scalar, a1: Scalar, a0: Scalar) -> Self {
        Self { a2, a1, a0 }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        (&self.a2 * x + &self.a1) * x + &self.a0
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.a2 - &other.a2,
            &self.a1 - &other.a1,
            &self.a0 - &other.a0,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a2.is_zero() && self.a1.is_zero() && self.a0.is_zero()
    }

    pub fn discriminant(&self) -> Scalar {
        &self.a1 * &self.a1 - int(4) * &self.a2 * &self.a0
    }

    /// Real roots in increasing order, repeated by multiplicity. Empty for
    /// constants (including the zero polynomial).
    pub fn real_roots(&self) -> Vec<QuadraticNumber> {
        if self.a2.is_zero() {
            if self.a1.is_zero() {
                return Vec::new();
            }
            return vec![QuadraticNumber::rational(-&self.a0 / &self.a1)];
        }
        let disc = self.discriminant();
        if disc.is_negative() {
            return Vec::new();
        }
        let two_a = int(2) * &self.a2;
        let centre = -&self.a1 / &two_a;
        if let Some(root) = exact_sqrt(&disc) {
            let half_width = (root / &two_a).abs();
            return vec![
                QuadraticNumber::rational(&centre - &half_width),
                QuadraticNumber::rational(centre + half_width),
            ];
        }
        let (q, d) = reduce_surd((int(1) / &two_a).abs(), &disc);
        vec![
            QuadraticNumber {
                p: centre.clone(),
                q: -q.clone(),
                d: d.clone(),
            },
            QuadraticNumber { p: centre, q, d },
        ]
    }

    fn leading_sign(&self) -> Ordering {
        [&self.a2, &self.a1, &self.a0]
            .into_iter()
            .map(sign)
            .find(|s| *s != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    /// Sign just below `x`: the leading sign, flipped once per root at or
    /// above `x`.
    fn sign_below(&self, roots: &[QuadraticNumber], x: &QuadraticNumber) -> Ordering {
        let above = roots
            .iter()
            .filter(|r| r.cmp_exact(x) != Ordering::Less)
            .count();
        let lead = self.leading_sign();
        if above % 2 == 0 {
            lead
        } else {
            lead.reverse()
        }
    }

    /// Partitions the interval between `lo` and `hi` into maximal pieces of
    /// constant sign. Roots become single-point pieces.
    pub fn sign_segments(
        &self,
        lo: &Scalar,
        lo_closed: bool,
        hi: &Scalar,
        hi_closed: bool,
    ) -> Vec<SignSegment> {
        let lo_n = QuadraticNumber::rational(lo.clone());
        let hi_n = QuadraticNumber::rational(hi.clone());
        if self.is_zero() {
            return vec![SignSegment {
                lower: lo_n,
                lower_closed: lo_closed,
                upper: hi_n,
                upper_closed: hi_closed,
                sign: Ordering::Equal,
            }];
        }
        let roots = self.real_roots();
        let mut cuts: Vec<QuadraticNumber> = Vec::new();
        for r in &roots {
            let inside =
                r.cmp_rational(lo) == Ordering::Greater && r.cmp_rational(hi) == Ordering::Less;
            if inside && cuts.last() != Some(r) {
                cuts.push(r.clone());
            }
        }

        let mut out = Vec::new();
        let mut lower = lo_n.clone();
        let mut lower_closed = lo_closed;
        if lo_closed && self.eval(lo).is_zero() {
            out.push(SignSegment::point(lo_n, Ordering::Equal));
            lower_closed = false;
        }
        for cut in cuts {
            out.push(SignSegment {
                lower,
                lower_closed,
                upper: cut.clone(),
                upper_closed: false,
                sign: self.sign_below(&roots, &cut),
            });
            out.push(SignSegment::point(cut.clone(), Ordering::Equal));
            lower = cut;
            lower_closed = false;
        }
        let hi_is_root = hi_closed && self.eval(hi).is_zero();
        out.push(SignSegment {
            lower,
            lower_closed,
            upper: hi_n.clone(),
            upper_closed: hi_closed && !hi_is_root,
            sign: self.sign_below(&roots, &hi_n),
        });
        if hi_is_root {
            out.push(SignSegment::point(hi_n, Ordering::Equal));
        }
        out
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} p_h^2 + {} p_h + {}",
            scalar::exact(&self.a2),
            scalar::exact(&self.a1),
            scalar::exact(&self.a0)
        )
    }
}
