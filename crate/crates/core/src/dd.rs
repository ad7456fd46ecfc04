//! Double-double arithmetic for word products.

use crate::hypgeom::Mobius;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// A 2×2 matrix with double-double entries, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DdMat(pub [Dd; 4]);

impl DdMat {
    pub const IDENTITY: DdMat = DdMat([Dd::ONE, Dd::ZERO, Dd::ZERO, Dd::ONE]);

    #[inline]
    pub fn mul(&self, o: &DdMat) -> DdMat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        DdMat([a.mul(e).add(b.mul(g)), a.mul(f).add(b.mul(h)), c.mul(e).add(d.mul(g)), c.mul(f).add(d.mul(h))])
    }

    pub fn apply(&self, v: [Dd; 2]) -> [Dd; 2] {
        let [a, b, c, d] = self.0;
        [a.mul(v[0]).add(b.mul(v[1])), c.mul(v[0]).add(d.mul(v[1]))]
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> DdMat {
        let [a, b, c, d] = self.0;
        DdMat([d, b.neg(), c.neg(), a])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.hi.abs()).fold(0.0, f64::max)
    }

    pub fn hi(&self) -> Mobius {
        let [a, b, c, d] = self.0.map(Dd::to_f64);
        Mobius { a, b, c, d }
    }

    pub fn lo(&self) -> [f64; 4] {
        self.0.map(|x| x.lo)
    }

    pub fn from_parts(m: &Mobius, lo: &[f64; 4]) -> DdMat {
        DdMat([Dd::new(m.a, lo[0]), Dd::new(m.b, lo[1]), Dd::new(m.c, lo[2]), Dd::new(m.d, lo[3])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_bits() {
        let x = Dd::new(1.0, 1e-20);
        let y = x.add(Dd::new(-1.0, 0.0));
        assert_eq!(y.to_f64(), 1e-20);
        let t = Dd::new(1.0 + f64::EPSILON, 0.0);
        let sq = t.mul(t);
        assert_eq!(sq.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(sq.lo, f64::EPSILON * f64::EPSILON);
    }
}
