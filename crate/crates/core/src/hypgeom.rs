//! Isometries, geodesics and closed-form trigonometry of the hyperbolic plane.
//!
//! Everything lives in the upper half-plane model. Boundary points are the
//! real line plus an explicit point at infinity; isometries are unit
//! determinant real 2×2 matrices kept in a canonical sign.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tolerated `|det − 1|` after renormalization.
pub const DET_TOLERANCE: f64 = 1e-9;
/// Half-width of the parabolic band `||tr| − 2| ≤ CLASS_TOLERANCE`.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// An orientation preserving isometry `z ↦ (az + b)/(cz + d)` with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds a normalized element from any real matrix with positive determinant.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::InvalidInput(format!(
                "matrix determinant must be positive, got {det}"
            )));
        }
        Ok(Mobius { a, b, c, d }.normalized())
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Rescales to unit determinant and fixes the projective sign.
    pub fn normalized(self) -> Self {
        let s = self.det().sqrt();
        let m = Mobius { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s };
        m.canonical_sign()
    }

    fn canonical_sign(self) -> Self {
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|x| *x != 0.0)
            .unwrap_or(1.0);
        if lead < 0.0 {
            Mobius { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    /// Raw matrix product without renormalization.
    pub(crate) fn mul_raw(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn compose(&self, other: &Mobius) -> Mobius {
        self.mul_raw(other).normalized()
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }.canonical_sign()
    }

    /// Integer power by repeated squaring; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Mobius {
        let mut base = if k < 0 { self.inverse() } else { *self };
        let mut e = k.unsigned_abs();
        let mut acc = Mobius::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Translation by `t` along the imaginary axis, towards infinity.
    pub fn dilation(t: f64) -> Mobius {
        let h = 0.5 * t;
        Mobius { a: h.exp(), b: 0.0, c: 0.0, d: (-h).exp() }
    }

    /// Counterclockwise rotation by `theta` about `i`.
    pub fn rotation(theta: f64) -> Mobius {
        let (s, c) = (0.5 * theta).sin_cos();
        Mobius { a: c, b: s, c: -s, d: c }.canonical_sign()
    }

    pub fn classify(&self) -> IsometryKind {
        let t = self.trace().abs();
        if t > 2.0 + CLASS_TOLERANCE {
            IsometryKind::Hyperbolic
        } else if (t - 2.0).abs() <= CLASS_TOLERANCE {
            IsometryKind::Parabolic
        } else {
            IsometryKind::Elliptic
        }
    }

    /// The identity lands in the parabolic band of [`Mobius::classify`]; this
    /// tells it apart from genuine parabolics.
    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance_to_identity() <= tol
    }

    /// Operator-norm distance to `±I`.
    pub fn distance_to_identity(&self) -> f64 {
        let plus = op_norm(self.a - 1.0, self.b, self.c, self.d - 1.0);
        let minus = op_norm(self.a + 1.0, self.b, self.c, self.d + 1.0);
        plus.min(minus)
    }

    /// `2 arccosh(|tr|/2)` for hyperbolic elements.
    pub fn translation_length(&self) -> Result<f64> {
        let t = self.trace().abs();
        if self.classify() != IsometryKind::Hyperbolic {
            return Err(Error::NotHyperbolic { trace: t });
        }
        Ok(2.0 * (0.5 * t).acosh())
    }

    /// The invariant geodesic of a hyperbolic element.
    pub fn axis(&self) -> Result<GeodesicLine> {
        if self.classify() != IsometryKind::Hyperbolic {
            return Err(Error::NotHyperbolic { trace: self.trace().abs() });
        }
        let Mobius { a, b, c, d } = *self;
        // Fixed points solve c x² + (d − a) x − b = 0.
        if c == 0.0 {
            let p = BoundaryPoint::Finite(b / (d - a));
            return Ok(GeodesicLine { p, q: BoundaryPoint::Infinity });
        }
        let disc = (self.trace() * self.trace() - 4.0).max(0.0).sqrt();
        let lin = d - a;
        let q = -0.5 * (lin + lin.signum_nonzero() * disc);
        let r1 = q / c;
        let r2 = -b / q;
        Ok(GeodesicLine { p: BoundaryPoint::Finite(r1), q: BoundaryPoint::Finite(r2) })
    }

    /// Eigenvectors `(v_+, v_-)` of a hyperbolic element as unit vectors in
    /// homogeneous coordinates: the attracting and repelling endpoints of
    /// the axis. Endpoints near infinity stay well conditioned this way.
    pub fn axis_vectors(&self) -> Result<[[f64; 2]; 2]> {
        if self.classify() != IsometryKind::Hyperbolic {
            return Err(Error::NotHyperbolic { trace: self.trace().abs() });
        }
        let Mobius { a, b, c, d } = *self;
        let t = self.trace();
        let big = 0.5 * (t + t.signum_nonzero() * (t * t - 4.0).sqrt());
        let eigvec = |lambda: f64| {
            let u = [b, lambda - a];
            let w = [lambda - d, c];
            let v = if u[0].hypot(u[1]) >= w[0].hypot(w[1]) { u } else { w };
            let n = v[0].hypot(v[1]);
            [v[0] / n, v[1] / n]
        };
        Ok([eigvec(big), eigvec(1.0 / big)])
    }

    /// An isometry `N` with `N m N⁻¹` diagonal: it sends the attracting
    /// fixed point of `m` to infinity and the repelling one to zero.
    pub fn eigen_frame(&self) -> Result<Mobius> {
        let [v1, mut v2] = self.axis_vectors()?;
        let mut det = v1[0] * v2[1] - v2[0] * v1[1];
        if det < 0.0 {
            v2 = [-v2[0], -v2[1]];
            det = -det;
        }
        let s = det.sqrt();
        let v = Mobius { a: v1[0] / s, b: v2[0] / s, c: v1[1] / s, d: v2[1] / s };
        Ok(v.inverse().normalized())
    }

    pub fn apply(&self, z: BoundaryPoint) -> BoundaryPoint {
        match z {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn apply_point(&self, z: PlanePoint) -> PlanePoint {
        // (az + b)/(cz + d) with z = x + iy.
        let (x, y) = (z.x, z.y);
        let nr = self.a * x + self.b;
        let ni = self.a * y;
        let dr = self.c * x + self.d;
        let di = self.c * y;
        let den = dr * dr + di * di;
        PlanePoint { x: (nr * dr + ni * di) / den, y: (ni * dr - nr * di) / den }
    }

    pub fn apply_geodesic(&self, g: &GeodesicLine) -> GeodesicLine {
        GeodesicLine { p: self.apply(g.p), q: self.apply(g.q) }
    }
}

trait SignumNonzero {
    fn signum_nonzero(self) -> f64;
}

impl SignumNonzero for f64 {
    fn signum_nonzero(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Largest singular value of a real 2×2 matrix.
pub(crate) fn op_norm(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let f = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    let disc = (f * f - 4.0 * det * det).max(0.0).sqrt();
    (0.5 * (f + disc)).sqrt()
}

impl Mul for Mobius {
    type Output = Mobius;
    fn mul(self, rhs: Mobius) -> Mobius {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a Mobius> for &'a Mobius {
    type Output = Mobius;
    fn mul(self, rhs: &'a Mobius) -> Mobius {
        self.compose(rhs)
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    fn same_as(self, other: BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => {
                (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()))
            }
            _ => false,
        }
    }
}

/// Unordered pair of distinct boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicLine {
    pub p: BoundaryPoint,
    pub q: BoundaryPoint,
}

impl GeodesicLine {
    pub fn new(p: BoundaryPoint, q: BoundaryPoint) -> Result<Self> {
        if p.same_as(q, 0.0) {
            return Err(Error::InvalidInput("geodesic endpoints must differ".into()));
        }
        Ok(GeodesicLine { p, q })
    }

    pub fn between(p: f64, q: f64) -> Result<Self> {
        Self::new(BoundaryPoint::Finite(p), BoundaryPoint::Finite(q))
    }

    /// The geodesic from `p` to infinity (a vertical line).
    pub fn vertical(p: f64) -> Self {
        GeodesicLine { p: BoundaryPoint::Finite(p), q: BoundaryPoint::Infinity }
    }

    pub fn same_line(&self, other: &GeodesicLine, tol: f64) -> bool {
        (self.p.same_as(other.p, tol) && self.q.same_as(other.q, tol))
            || (self.p.same_as(other.q, tol) && self.q.same_as(other.p, tol))
    }

    fn shares_endpoint(&self, other: &GeodesicLine, tol: f64) -> bool {
        self.p.same_as(other.p, tol)
            || self.p.same_as(other.q, tol)
            || self.q.same_as(other.p, tol)
            || self.q.same_as(other.q, tol)
    }

    /// An isometry sending this line onto the imaginary axis `(0, ∞)`.
    pub fn normalizer(&self) -> Mobius {
        match (self.p, self.q) {
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(q))
            | (BoundaryPoint::Finite(q), BoundaryPoint::Infinity) => {
                Mobius { a: 1.0, b: -q, c: 0.0, d: 1.0 }
            }
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                // z ↦ (z − p)/(z − q) has determinant p − q.
                let (p, q) = if p > q { (p, q) } else { (q, p) };
                Mobius::new(1.0, -p, 1.0, -q).expect("distinct endpoints")
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Mobius::IDENTITY,
        }
    }
}

/// Signed pair `(N, D)` with `N/D` equal to the cosine-like invariant of two
/// lines: `|N/D| < 1` when they cross (the cosine of the angle), `> 1` when
/// disjoint (the hyperbolic cosine of the distance). `D` factors as
/// `(a − b)(c − d)`, so it never suffers cancellation.
fn line_invariant(g1: &GeodesicLine, g2: &GeodesicLine) -> (f64, f64, bool) {
    use BoundaryPoint::*;
    // Put the point at infinity (if any) in first position.
    let (g1, g2) = match (g1.p, g1.q, g2.p, g2.q) {
        (_, Infinity, _, _) => (GeodesicLine { p: g1.q, q: g1.p }, *g2),
        (_, _, Infinity, _) | (_, _, _, Infinity) => {
            let g2 = if g2.q == Infinity { GeodesicLine { p: g2.q, q: g2.p } } else { *g2 };
            (g2, *g1)
        }
        _ => (*g1, *g2),
    };
    let b = g1.q.finite().unwrap_or(0.0);
    let c = g2.p.finite().unwrap_or(0.0);
    let d = g2.q.finite().unwrap_or(0.0);
    match g1.p {
        Infinity => {
            // Divide through by a: N → 2b − c − d, D → c − d.
            let num = 2.0 * b - c - d;
            let den = c - d;
            let crossing = (b - c) * (b - d) < 0.0;
            (num, den, crossing)
        }
        Finite(a) => {
            let num = (a - d) * (b - c) + (a - c) * (b - d);
            let den = (a - b) * (d - c);
            let crossing = ((a - c) * (b - d)) * ((a - d) * (b - c)) < 0.0;
            (num, den, crossing)
        }
    }
}

/// True iff the endpoints of the two lines are linked on the boundary circle.
pub fn geodesics_cross(g1: &GeodesicLine, g2: &GeodesicLine) -> Result<bool> {
    if g1.shares_endpoint(g2, 1e-14) {
        return Err(Error::SharedEndpoint);
    }
    Ok(line_invariant(g1, g2).2)
}

/// `cosh` of the distance between two disjoint lines, or `None` if they
/// cross or share an endpoint.
pub fn geodesic_cosh_distance(g1: &GeodesicLine, g2: &GeodesicLine) -> Option<f64> {
    if g1.shares_endpoint(g2, 1e-14) {
        return None;
    }
    let (num, den, crossing) = line_invariant(g1, g2);
    if crossing {
        None
    } else {
        Some((num / den).abs().max(1.0))
    }
}

/// Cosine of the crossing angle of two linked lines.
pub fn crossing_cosine(g1: &GeodesicLine, g2: &GeodesicLine) -> Option<f64> {
    if g1.shares_endpoint(g2, 1e-14) {
        return None;
    }
    let (num, den, crossing) = line_invariant(g1, g2);
    crossing.then(|| (num / den).abs().min(1.0))
}

/// Hyperbolic distance between two lines; zero when they cross or are asymptotic.
pub fn geodesic_distance(g1: &GeodesicLine, g2: &GeodesicLine) -> f64 {
    geodesic_cosh_distance(g1, g2).map_or(0.0, f64::acosh)
}

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidInput(format!("point must have y > 0, got ({x}, {y})")));
        }
        Ok(PlanePoint { x, y })
    }

    pub const I: PlanePoint = PlanePoint { x: 0.0, y: 1.0 };

    pub fn distance(&self, other: &PlanePoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let arg = 1.0 + (dx * dx + dy * dy) / (2.0 * self.y * other.y);
        arg.acosh()
    }

    /// Distance to a geodesic line.
    pub fn distance_to_line(&self, g: &GeodesicLine) -> f64 {
        let z = g.normalizer().apply_point(*self);
        (z.x.abs() / z.y).asinh()
    }

    /// Orthogonal projection onto a geodesic line.
    pub fn project(&self, g: &GeodesicLine) -> PlanePoint {
        let n = g.normalizer();
        let z = n.apply_point(*self);
        let r = (z.x * z.x + z.y * z.y).sqrt();
        n.inverse().apply_point(PlanePoint { x: 0.0, y: r })
    }
}

/// Feet of the common perpendicular of two disjoint lines, on `g1` then `g2`.
pub fn common_perpendicular(g1: &GeodesicLine, g2: &GeodesicLine) -> Option<(PlanePoint, PlanePoint)> {
    geodesic_cosh_distance(g1, g2)?;
    let n = g1.normalizer();
    let h = n.apply_geodesic(g2);
    let p = h.p.finite()?;
    let q = h.q.finite()?;
    if p * q <= 0.0 {
        return None;
    }
    let r = (p * q).sqrt();
    let foot1 = PlanePoint { x: 0.0, y: r };
    // The circle |z| = r meets the line (p, q) orthogonally.
    let c = 0.5 * (p + q);
    let x = r * r / c;
    let y = (r * r - x * x).max(0.0).sqrt();
    let inv = n.inverse();
    Some((inv.apply_point(foot1), inv.apply_point(PlanePoint { x, y })))
}

/// Half-width `arcsinh(1/sinh(ε/2))` of the embedded collar around a closed
/// geodesic of length `eps`.
pub fn collar_width(eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveLength(eps));
    }
    Ok((1.0 / (0.5 * eps).sinh()).asinh())
}

/// Side `B` of a right-angled hexagon with `sinh(A) sinh(B/2) = cosh(M/2)`.
pub fn hexagon_opposite(a: f64, m: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveLength(a));
    }
    if m < 0.0 {
        return Err(Error::NegativeLength(m));
    }
    Ok(2.0 * ((0.5 * m).cosh() / a.sinh()).asinh())
}

/// Length of the side of a right-angled hexagon opposite to the side `c`,
/// where `a`, `b`, `c` are the three alternate sides.
pub fn hexagon_seam(a: f64, b: f64, c: f64) -> f64 {
    let num = c.cosh() + a.cosh() * b.cosh();
    (num / (a.sinh() * b.sinh())).acosh()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_frame_diagonalizes() {
        let cases = [
            Mobius::new(2.0, 1.0, 1.0, 1.0).unwrap(),
            Mobius { a: 0.6065306597126334, b: 9.436397117840984, c: 1e-19, d: 1.6487212707001282 },
            Mobius::new(-3.0, 2.0, 4.0, -3.0).unwrap(),
        ];
        for m in cases {
            let n = m.eigen_frame().unwrap();
            let diag = n.compose(&m).compose(&n.inverse());
            assert!(diag.b.abs() < 1e-12 && diag.c.abs() < 1e-12, "{diag}");
            assert!((diag.a.abs() - diag.d.abs()).abs() > 1e-3);
        }
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn compose_examples() {
        let m = Mobius::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let id = m.compose(&m.inverse());
        assert!(id.is_identity(1e-12));
        assert_eq!(Mobius::IDENTITY.compose(&m), m);
        let u = Mobius::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let l = Mobius::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(u.compose(&l), Mobius { a: 2.0, b: 1.0, c: 1.0, d: 1.0 });
    }

    #[test]
    fn canonical_sign_is_positive_leading() {
        let m = Mobius::new(-2.0, -1.0, -1.0, -1.0).unwrap();
        assert_eq!(m, Mobius { a: 2.0, b: 1.0, c: 1.0, d: 1.0 });
        let n = Mobius::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert!(n.b > 0.0);
    }

    #[test]
    fn classification() {
        assert_eq!(Mobius::IDENTITY.classify(), IsometryKind::Parabolic);
        assert!(Mobius::IDENTITY.is_identity(1e-12));
        let h = Mobius::new(0.5f64.exp(), 0.0, 0.0, (-0.5f64).exp()).unwrap();
        assert_eq!(h.classify(), IsometryKind::Hyperbolic);
        assert_eq!(Mobius::rotation(0.7).classify(), IsometryKind::Elliptic);
        let p = Mobius::new(1.0, 3.0, 0.0, 1.0).unwrap();
        assert_eq!(p.classify(), IsometryKind::Parabolic);
        assert!(!p.is_identity(1e-9));
    }

    #[test]
    fn translation_lengths() {
        let h = Mobius::new(0.5f64.exp(), 0.0, 0.0, (-0.5f64).exp()).unwrap();
        assert!(close(h.translation_length().unwrap(), 1.0, 1e-14));
        assert!(matches!(
            Mobius::IDENTITY.translation_length(),
            Err(Error::NotHyperbolic { .. })
        ));
        let m = Mobius::new(2.0, 1.0, 1.0, 1.0).unwrap();
        // 2 arccosh(3/2), 30-digit evaluation.
        assert!(close(m.translation_length().unwrap(), 1.924_847_300_238_413_8, 1e-14));
    }

    #[test]
    fn axes() {
        let h = Mobius::dilation(1.3);
        let ax = h.axis().unwrap();
        assert!(ax.same_line(&GeodesicLine::vertical(0.0), 1e-15));

        // Upper triangular with an off-axis finite fixed point.
        let t = Mobius::new(0.5, 3.0, 0.0, 2.0).unwrap();
        let ax = t.axis().unwrap();
        for e in [ax.p, ax.q] {
            assert_eq!(t.apply(e), e);
        }
        assert_eq!(ax.p, BoundaryPoint::Finite(2.0));

        let m = Mobius::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let ax = m.axis().unwrap();
        let s5 = 5f64.sqrt();
        let expect = GeodesicLine::between((1.0 + s5) / 2.0, (1.0 - s5) / 2.0).unwrap();
        assert!(ax.same_line(&expect, 1e-14));

        let g = Mobius::new(1.0, 2.0, 0.5, 3.0).unwrap();
        let conj = g.compose(&m).compose(&g.inverse());
        assert!(conj.axis().unwrap().same_line(&g.apply_geodesic(&ax), 1e-12));
    }

    #[test]
    fn crossing_examples() {
        let unit = GeodesicLine::between(-1.0, 1.0).unwrap();
        assert!(geodesics_cross(&unit, &GeodesicLine::vertical(0.0)).unwrap());
        assert!(!geodesics_cross(&unit, &GeodesicLine::between(2.0, 3.0).unwrap()).unwrap());
        let a = GeodesicLine::between(0.0, 2.0).unwrap();
        assert!(geodesics_cross(&a, &GeodesicLine::between(1.0, 3.0).unwrap()).unwrap());
        assert_eq!(
            geodesics_cross(&a, &GeodesicLine::between(2.0, 5.0).unwrap()),
            Err(Error::SharedEndpoint)
        );
    }

    #[test]
    fn distance_examples() {
        let unit = GeodesicLine::between(-1.0, 1.0).unwrap();
        let e = std::f64::consts::E;
        let big = GeodesicLine::between(-e, e).unwrap();
        assert!(close(geodesic_distance(&unit, &big), 1.0, 1e-14));
        assert_eq!(geodesic_distance(&unit, &GeodesicLine::vertical(0.0)), 0.0);
        // Concentric with the vertical line through the centre.
        let v = GeodesicLine::vertical(3.0);
        assert!(geodesic_distance(&unit, &v) > 0.0);
    }

    #[test]
    fn collar_and_hexagon() {
        let w = collar_width(2.0 * 1f64.asinh()).unwrap();
        assert!(close(w, 1f64.asinh(), 1e-15));
        assert!(matches!(collar_width(0.0), Err(Error::NonPositiveLength(_))));
        let b = hexagon_opposite(1f64.asinh(), 0.0).unwrap();
        assert!(close(b, 2.0 * 1f64.asinh(), 1e-15));
        assert!(matches!(hexagon_opposite(-1.0, 0.0), Err(Error::NonPositiveLength(_))));
    }

    #[test]
    fn projection_and_perpendicular() {
        let g1 = GeodesicLine::vertical(0.0);
        let g2 = GeodesicLine::between(1.0, 4.0).unwrap();
        let (f1, f2) = common_perpendicular(&g1, &g2).unwrap();
        assert!(close(f1.x, 0.0, 1e-15) && close(f1.y, 2.0, 1e-14));
        assert!(close(f1.distance(&f2), geodesic_distance(&g1, &g2), 1e-12));
        let z = PlanePoint::new(1.0, 1.0).unwrap();
        let pz = z.project(&g1);
        assert!(close(z.distance(&pz), z.distance_to_line(&g1), 1e-12));
    }
}
