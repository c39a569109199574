//! General Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
//! over finite fields of characteristic >= 5, with the full chord-tangent
//! group law. Curves may have a1, a3 nonzero (the Kubert family models do),
//! so nothing here assumes a short model.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::ff::{Embedding, Field, FieldElement};
use crate::numutil::prime_factors;
use crate::{Error, Result};

/// Largest field cardinality `points()` will enumerate.
pub const ENUM_BOUND: u128 = 100_000;

#[derive(Debug)]
struct CurveRepr {
    field: Field,
    /// [a1, a2, a3, a4, a6]
    a: [FieldElement; 5],
    /// [b2, b4, b6, b8]
    b: [FieldElement; 4],
    disc: FieldElement,
}

/// A nonsingular Weierstrass curve. Cheap to clone.
#[derive(Clone)]
pub struct Curve(Arc<CurveRepr>);

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.a == other.0.a)
    }
}

impl Eq for Curve {}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Curve{{{:?}, a={:?}}}",
            self.0.field,
            self.0.a.iter().map(|c| c.coeffs().to_vec()).collect::<Vec<_>>()
        )
    }
}

impl Curve {
    /// Builds the curve, computing the b-invariants and rejecting singular
    /// models (discriminant zero).
    pub fn new(field: &Field, a: [FieldElement; 5]) -> Result<Self> {
        for c in &a {
            assert!(c.field() == field, "coefficient outside the base field");
        }
        let [a1, a2, a3, a4, a6] = &a;
        let four = field.from_u64(4);
        let two = field.from_u64(2);
        let b2 = &(a1 * a1) + &(&four * a2);
        let b4 = &(&two * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&four * a6);
        let b8 = &(&(&(&(a1 * a1) * a6) + &(&(&four * a2) * a6)) - &(&(a1 * a3) * a4))
            + &(&(a2 * &(a3 * a3)) - &(a4 * a4));
        // Sanity: 4 b8 = b2 b6 - b4^2.
        debug_assert!(&(&four * &b8) == &(&(&b2 * &b6) - &(&b4 * &b4)));
        let d27 = field.from_u64(27);
        let d9 = field.from_u64(9);
        let d8 = field.from_u64(8);
        let disc = &(&(-&(&(&b2 * &b2) * &b8)) - &(&d8 * &(&(&b4 * &b4) * &b4)))
            + &(&(-&(&d27 * &(&b6 * &b6))) + &(&(&d9 * &b2) * &(&b4 * &b6)));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve(Arc::new(CurveRepr { field: field.clone(), a, b: [b2, b4, b6, b8], disc })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    /// a-invariants [a1, a2, a3, a4, a6].
    pub fn a(&self) -> &[FieldElement; 5] {
        &self.0.a
    }

    /// b-invariants [b2, b4, b6, b8].
    pub fn b(&self) -> &[FieldElement; 4] {
        &self.0.b
    }

    pub fn discriminant(&self) -> &FieldElement {
        &self.0.disc
    }

    pub fn infinity(&self) -> Point {
        Point { curve: self.clone(), coords: None }
    }

    /// Affine point; validates the curve equation.
    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<Point> {
        if !self.satisfies_equation(&x, &y) {
            return Err(Error::NotOnCurve);
        }
        Ok(Point { curve: self.clone(), coords: Some((x, y)) })
    }

    /// One affine point with the given x, if any: the one with the
    /// canonical square root in the completed-square coordinate. The other
    /// is its negative.
    pub fn lift_x(&self, x: &FieldElement) -> Option<Point> {
        let f = self.field();
        let [a1, _, a3, _, _] = self.a();
        let [b2, b4, b6, _] = self.b();
        let four = f.from_u64(4);
        let two = f.from_u64(2);
        let x2 = x * x;
        let rhs = &(&(&four * &(&x2 * x)) + &(b2 * &x2)) + &(&(&(&two * b4) * x) + b6);
        let u = rhs.sqrt().ok()?;
        let half = two.inverse().expect("2 invertible in char >= 5");
        let y = &(&u - &(&(a1 * x) + a3)) * &half;
        Some(Point { curve: self.clone(), coords: Some((x.clone(), y)) })
    }

    fn satisfies_equation(&self, x: &FieldElement, y: &FieldElement) -> bool {
        let [a1, a2, a3, a4, a6] = self.a();
        let lhs = &(y * y) + &(&(&(a1 * x) * y) + &(a3 * y));
        let x2 = x * x;
        let rhs = &(&(&x2 * x) + &(a2 * &x2)) + &(&(a4 * x) + a6);
        lhs == rhs
    }

    /// All rational points: infinity first, then affine points ordered by
    /// canonical x, then canonical y. Uses the completed square
    /// u^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 with u = 2y + a1 x + a3.
    pub fn points(&self) -> Result<Vec<Point>> {
        let f = self.field();
        if f.cardinality() > ENUM_BOUND {
            return Err(Error::FieldTooLarge(f.cardinality()));
        }
        let [a1, _, a3, _, _] = self.a();
        let [b2, b4, b6, _] = self.b();
        let four = f.from_u64(4);
        let two = f.from_u64(2);
        let half = two.inverse().expect("2 invertible in char >= 5");
        let mut out = vec![self.infinity()];
        for x in f.elements() {
            let x2 = &x * &x;
            let rhs = &(&(&four * &(&x2 * &x)) + &(b2 * &x2)) + &(&(&(&two * b4) * &x) + b6);
            if rhs.quadratic_character() == -1 {
                continue;
            }
            let u = rhs.sqrt().expect("character said square");
            let shift = &(a1 * &x) + a3;
            let y1 = &(&u - &shift) * &half;
            if u.is_zero() {
                out.push(Point { curve: self.clone(), coords: Some((x, y1)) });
            } else {
                let y2 = &(&(-&u) - &shift) * &half;
                let (lo, hi) = if y1 < y2 { (y1, y2) } else { (y2, y1) };
                out.push(Point { curve: self.clone(), coords: Some((x.clone(), lo)) });
                out.push(Point { curve: self.clone(), coords: Some((x, hi)) });
            }
        }
        Ok(out)
    }

    /// Base change along an embedding of the base field.
    pub fn base_change(&self, emb: &Embedding) -> Result<Curve> {
        if emb.source() != self.field() {
            return Err(Error::NoEmbedding);
        }
        let a = self.a();
        Curve::new(
            emb.target(),
            [
                emb.apply(&a[0]),
                emb.apply(&a[1]),
                emb.apply(&a[2]),
                emb.apply(&a[3]),
                emb.apply(&a[4]),
            ],
        )
    }
}

/// A point on a specific curve: infinity or an affine pair satisfying the
/// curve equation (enforced at construction).
#[derive(Clone)]
pub struct Point {
    curve: Curve,
    coords: Option<(FieldElement, FieldElement)>,
}

impl Point {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }

    /// Affine x; panics on infinity.
    pub fn x(&self) -> &FieldElement {
        &self.coords.as_ref().expect("x of infinity").0
    }

    /// Affine y; panics on infinity.
    pub fn y(&self) -> &FieldElement {
        &self.coords.as_ref().expect("y of infinity").1
    }

    pub fn neg(&self) -> Point {
        match &self.coords {
            None => self.clone(),
            Some((x, y)) => {
                let [a1, _, a3, _, _] = self.curve.a();
                let ny = &(-y) - &(&(a1 * x) + a3);
                Point { curve: self.curve.clone(), coords: Some((x.clone(), ny)) }
            }
        }
    }

    /// Chord-tangent addition. Errors when the points live on different
    /// curves.
    pub fn add(&self, rhs: &Point) -> Result<Point> {
        if self.curve != rhs.curve {
            return Err(Error::CurveMismatch);
        }
        let (x1, y1) = match &self.coords {
            None => return Ok(rhs.clone()),
            Some(c) => c,
        };
        let (x2, y2) = match &rhs.coords {
            None => return Ok(self.clone()),
            Some(c) => c,
        };
        let [a1, a2, a3, a4, a6] = self.curve.a();
        let (lambda, nu) = if x1 != x2 {
            let dx_inv = (&(x2 - x1)).inverse().expect("x2 - x1 nonzero");
            let lambda = &(y2 - y1) * &dx_inv;
            let nu = &(&(y1 * x2) - &(y2 * x1)) * &dx_inv;
            (lambda, nu)
        } else {
            // Same x: the points are equal or negatives of each other.
            if *rhs == self.neg() {
                return Ok(self.curve.infinity());
            }
            debug_assert!(y1 == y2, "same x but neither equal nor negatives");
            let denom = &(&(&y1.field().from_u64(2) * y1) + &(a1 * x1)) + a3;
            let di = denom.inverse().expect("2-torsion handled by the negation branch");
            let three = x1.field().from_u64(3);
            let two = x1.field().from_u64(2);
            let lambda = &(&(&(&three * &(x1 * x1)) + &(&(&two * a2) * x1)) + &(a4 - &(a1 * y1)))
                * &di;
            let nu = &(&(&(-&(&(x1 * x1) * x1)) + &(a4 * x1)) + &(&(&two * a6) - &(a3 * y1)))
                * &di;
            (lambda, nu)
        };
        let x3 = &(&(&(&lambda * &lambda) + &(a1 * &lambda)) - a2) - &(x1 + x2);
        let y3 = &(-&(&(&lambda + a1) * &x3)) - &(&nu + a3);
        Ok(Point { curve: self.curve.clone(), coords: Some((x3, y3)) })
    }

    pub fn sub(&self, rhs: &Point) -> Result<Point> {
        self.add(&rhs.neg())
    }

    /// Scalar multiple by double-and-add.
    pub fn mul(&self, k: u64) -> Point {
        let mut acc = self.curve.infinity();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base).expect("same curve");
            }
            base = base.add(&base).expect("same curve");
            k >>= 1;
        }
        acc
    }

    /// Exact order by repeated addition; runs in time proportional to the
    /// order, which the Hasse bound caps at q + 1 + 2 sqrt(q).
    pub fn order(&self) -> u64 {
        let q = self.curve.field().cardinality();
        let bound = q + 1 + 2 * isqrt(q) + 2;
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_infinity() {
            acc = acc.add(self).expect("same curve");
            k += 1;
            assert!((k as u128) <= bound, "order exceeded the Hasse bound");
        }
        k
    }

    /// True iff the point has exact order m, checked with O(log m) scalar
    /// multiples instead of walking the whole cyclic group.
    pub fn has_order(&self, m: u64) -> bool {
        if m == 0 || !self.mul(m).is_infinity() {
            return false;
        }
        prime_factors(m).iter().all(|&l| !self.mul(m / l).is_infinity())
    }

    /// The q-power Frobenius image (x^q, y^q). Requires the curve
    /// coefficients to be fixed by x -> x^q and q to be a power of the
    /// characteristic.
    pub fn frobenius(&self, q: u128) -> Result<Point> {
        let p = self.curve.field().p() as u128;
        let mut t = q;
        while t > 1 && t % p == 0 {
            t /= p;
        }
        if t != 1 || q < p {
            return Err(Error::CoefficientsNotRational);
        }
        for c in self.curve.a() {
            if c.pow(q) != *c {
                return Err(Error::CoefficientsNotRational);
            }
        }
        match &self.coords {
            None => Ok(self.clone()),
            Some((x, y)) => {
                let fx = x.pow(q);
                let fy = y.pow(q);
                // Equation coefficients are q-fixed, so the image is on the
                // curve automatically.
                Ok(Point { curve: self.curve.clone(), coords: Some((fx, fy)) })
            }
        }
    }

    /// Map the point along a base-field embedding onto the base-changed
    /// curve.
    pub fn base_change(&self, emb: &Embedding, target: &Curve) -> Result<Point> {
        match &self.coords {
            None => Ok(target.infinity()),
            Some((x, y)) => target.point(emb.apply(x), emb.apply(y)),
        }
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.curve == other.curve
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.coords {
            None => 0u8.hash(state),
            Some((x, y)) => {
                1u8.hash(state);
                x.hash(state);
                y.hash(state);
            }
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            None => write!(f, "inf"),
            Some((x, y)) => write!(f, "({:?}, {:?})", x, y),
        }
    }
}
