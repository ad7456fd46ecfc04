//! Binary floating point with a few hundred bits of mantissa. Holonomy
//! generators of twisted surfaces have entries near `e^15`, and the
//! surface relation only cancels to the identity if they carry far more
//! digits than `f64` offers.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dd::Dd;
use crate::hypgeom::{op_norm, Mobius};

/// Mantissa bits kept after every operation.
pub(crate) const PREC: u64 = 512;

/// `m · 2^e`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Mp {
    m: BigInt,
    e: i64,
}

/// Written as `"<m>p<e>"` with `m` in decimal.
impl Serialize for Mp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}p{}", self.m, self.e))
    }
}

impl<'de> Deserialize<'de> for Mp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Mp, D::Error> {
        let text = String::deserialize(d)?;
        let (m, e) = text.split_once('p').ok_or_else(|| D::Error::custom("expected <mantissa>p<exponent>"))?;
        let m = m.parse::<BigInt>().map_err(D::Error::custom)?;
        let e = e.parse::<i64>().map_err(D::Error::custom)?;
        Ok(Mp { m, e }.trim())
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl Mp {
    pub fn zero() -> Mp {
        Mp { m: BigInt::zero(), e: 0 }
    }

    pub fn one() -> Mp {
        Mp::from_int(1)
    }

    pub fn from_int(i: i64) -> Mp {
        Mp { m: BigInt::from(i), e: 0 }
    }

    pub fn from_f64(x: f64) -> Mp {
        assert!(x.is_finite(), "non-finite value {x}");
        if x == 0.0 {
            return Mp::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
        Mp { m: BigInt::from(sign * mant), e }.trim()
    }

    fn trim(mut self) -> Mp {
        let bits = self.m.bits();
        if bits > PREC {
            let s = bits - PREC;
            self.m = &self.m >> s;
            self.e += s as i64;
        }
        if self.m.is_zero() {
            self.e = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Mp {
        Mp { m: self.m.abs(), e: self.e }
    }

    /// Rounded to a double-double pair.
    pub(crate) fn to_dd(&self) -> Dd {
        let hi = self.to_f64();
        Dd::new(hi, (self.clone() - Mp::from_f64(hi)).to_f64())
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let s = bits.saturating_sub(63);
        let top = (&self.m >> s).to_i64().expect("63 bits fit");
        ldexp(top as f64, self.e + s as i64)
    }

    /// `⌊log₂ |x|⌋`, or `i64::MIN` for zero.
    pub fn log2_floor(&self) -> i64 {
        if self.m.is_zero() {
            return i64::MIN;
        }
        self.m.bits() as i64 - 1 + self.e
    }

    /// Multiplication by `2^k`, exact.
    pub fn scale(&self, k: i64) -> Mp {
        Mp { m: self.m.clone(), e: self.e + k }
    }

    pub fn sqrt(&self) -> Mp {
        assert!(self.signum() >= 0, "square root of a negative number");
        if self.is_zero() {
            return Mp::zero();
        }
        let mut shift = (2 * PREC + 2).saturating_sub(self.m.bits()) as i64;
        if (self.e - shift) % 2 != 0 {
            shift += 1;
        }
        let m = (&self.m << shift as u64).sqrt();
        Mp { m, e: (self.e - shift) / 2 }.trim()
    }

    fn div_small(&self, n: u64) -> Mp {
        let shift = (PREC + 64).saturating_sub(self.m.bits());
        Mp { m: (&self.m << shift) / n, e: self.e - shift as i64 }.trim()
    }

    pub fn recip(&self) -> Mp {
        Mp::one() / self.clone()
    }

    pub fn exp(&self) -> Mp {
        let x = self.to_f64();
        assert!(x.abs() < 1e6, "exponent out of range: {x}");
        let k = (x / std::f64::consts::LN_2).round() as i64;
        let r = (self.clone() - ln2().clone() * Mp::from_int(k)).scale(-8);
        let eps = Mp::one().scale(-(PREC as i64) - 16);
        let mut term = Mp::one();
        let mut sum = Mp::one();
        for n in 1..200u64 {
            term = (&term * &r).div_small(n);
            sum = sum + term.clone();
            if term.abs() < eps {
                break;
            }
        }
        for _ in 0..8 {
            sum = sum.clone() * sum;
        }
        sum.scale(k)
    }
}

/// `ln 2 = Σ 1/(n 2^n)`.
fn ln2() -> &'static Mp {
    static LN2: OnceLock<Mp> = OnceLock::new();
    LN2.get_or_init(|| {
        let mut sum = Mp::zero();
        for n in 1..(PREC as i64 + 32) {
            sum = sum + Mp::one().div_small(n as u64).scale(-n);
        }
        sum
    })
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, other: &Mp) -> Option<Ordering> {
        Some((self.clone() - other.clone()).signum().cmp(&0))
    }
}

impl Add for Mp {
    type Output = Mp;
    fn add(self, o: Mp) -> Mp {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let top = |x: &Mp| x.e + x.m.bits() as i64;
        // An addend entirely below the kept bits of the other is dropped.
        if top(&self) - top(&o) > PREC as i64 + 4 {
            return self;
        }
        if top(&o) - top(&self) > PREC as i64 + 4 {
            return o;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = (hi.e - lo.e) as u64;
        Mp { m: (hi.m << gap) + lo.m, e: lo.e }.trim()
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp { m: -self.m, e: self.e }
    }
}

impl Sub for Mp {
    type Output = Mp;
    fn sub(self, o: Mp) -> Mp {
        self + (-o)
    }
}

impl Mul for Mp {
    type Output = Mp;
    fn mul(self, o: Mp) -> Mp {
        Mp { m: self.m * o.m, e: self.e + o.e }.trim()
    }
}

impl Div for Mp {
    type Output = Mp;
    fn div(self, o: Mp) -> Mp {
        assert!(!o.is_zero(), "division by zero");
        let shift = (PREC + 2 + o.m.bits()).saturating_sub(self.m.bits());
        let q = (self.m << shift) / o.m;
        Mp { m: q, e: self.e - o.e - shift as i64 }.trim()
    }
}

impl<'a> Add<&'a Mp> for &'a Mp {
    type Output = Mp;
    fn add(self, o: &Mp) -> Mp {
        self.clone() + o.clone()
    }
}

impl<'a> Mul<&'a Mp> for &'a Mp {
    type Output = Mp;
    fn mul(self, o: &Mp) -> Mp {
        Mp { m: &self.m * &o.m, e: self.e + o.e }.trim()
    }
}

/// An element of SL(2,R) with extended precision entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub(crate) struct MobiusMp {
    pub a: Mp,
    pub b: Mp,
    pub c: Mp,
    pub d: Mp,
}

impl MobiusMp {
    pub fn identity() -> MobiusMp {
        MobiusMp { a: Mp::one(), b: Mp::zero(), c: Mp::zero(), d: Mp::one() }
    }

    pub fn from_f64(m: &Mobius) -> MobiusMp {
        MobiusMp { a: Mp::from_f64(m.a), b: Mp::from_f64(m.b), c: Mp::from_f64(m.c), d: Mp::from_f64(m.d) }
    }

    /// Rounded to double precision, determinant renormalized there.
    pub fn to_mobius(&self) -> Mobius {
        Mobius { a: self.a.to_f64(), b: self.b.to_f64(), c: self.c.to_f64(), d: self.d.to_f64() }.normalized()
    }

    /// Rounded entries without renormalization.
    pub fn to_mobius_raw(&self) -> Mobius {
        Mobius { a: self.a.to_f64(), b: self.b.to_f64(), c: self.c.to_f64(), d: self.d.to_f64() }
    }

    pub fn mul(&self, o: &MobiusMp) -> MobiusMp {
        MobiusMp {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse assuming unit determinant.
    pub fn inverse(&self) -> MobiusMp {
        MobiusMp { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    pub fn det(&self) -> Mp {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Attracting and repelling eigenvectors of a hyperbolic element,
    /// scaled to unit max-norm.
    pub fn axis_vectors(&self) -> Option<[[Mp; 2]; 2]> {
        let t = self.trace();
        let disc = &t * &t - Mp::from_int(4);
        if disc.signum() <= 0 {
            return None;
        }
        let root = disc.sqrt();
        let big = if t.signum() >= 0 { t + root } else { t - root }.scale(-1);
        let eigvec = |lambda: &Mp| {
            let u = [self.b.clone(), lambda.clone() - self.a.clone()];
            let w = [lambda.clone() - self.d.clone(), self.c.clone()];
            let size = |v: &[Mp; 2]| if v[0].abs() > v[1].abs() { v[0].abs() } else { v[1].abs() };
            let (su, sw) = (size(&u), size(&w));
            let (v, n) = if su >= sw { (u, su) } else { (w, sw) };
            let r = n.recip();
            [&v[0] * &r, &v[1] * &r]
        };
        Some([eigvec(&big), eigvec(&big.recip())])
    }

    pub fn apply(&self, v: &[Mp; 2]) -> [Mp; 2] {
        [&self.a * &v[0] + &self.b * &v[1], &self.c * &v[0] + &self.d * &v[1]]
    }

    pub fn normalized(&self) -> MobiusMp {
        let s = self.det().sqrt().recip();
        MobiusMp { a: &self.a * &s, b: &self.b * &s, c: &self.c * &s, d: &self.d * &s }
    }

    pub fn trace(&self) -> Mp {
        &self.a + &self.d
    }

    pub fn dilation(t: &Mp) -> MobiusMp {
        let e = t.scale(-1).exp();
        let r = e.recip();
        MobiusMp { a: e, b: Mp::zero(), c: Mp::zero(), d: r }
    }

    /// Rotation by a quarter turn counterclockwise about `i`.
    pub fn quarter_turn() -> MobiusMp {
        let h = Mp::one().scale(-1).sqrt();
        MobiusMp { a: h.clone(), b: h.clone(), c: -h.clone(), d: h }
    }

    pub fn half_turn() -> MobiusMp {
        MobiusMp { a: Mp::zero(), b: Mp::one(), c: -Mp::one(), d: Mp::zero() }
    }

    /// Operator-norm distance to the nearer of `±I`.
    pub fn distance_to_identity(&self) -> f64 {
        let s = if self.trace().signum() >= 0 { Mp::one() } else { -Mp::one() };
        op_norm(
            (self.a.clone() - s.clone()).to_f64(),
            self.b.to_f64(),
            self.c.to_f64(),
            (self.d.clone() - s).to_f64(),
        )
    }
}

/// `2 arccosh(|t|/2)`, computed from the excess `|t| − 2` so that short
/// lengths keep their relative accuracy.
pub(crate) fn length_from_trace(t: &Mp) -> f64 {
    let x = ((t.abs() - Mp::from_int(2)).scale(-1)).to_f64();
    2.0 * (x + (x * (2.0 + x)).sqrt()).ln_1p()
}
