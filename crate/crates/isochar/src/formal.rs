//! Truncated Laurent series at the point at infinity and the normalization
//! constants of isogenies: for a map phi the pullback of the codomain's
//! invariant differential is c * omega + O(z^N), and this module extracts c
//! with an explicit record of how many residual coefficients were checked
//! to vanish.
//!
//! The local parameter is z = -x/y. The curve expansion comes from the
//! fixed-point iteration
//!
//!   w <- z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
//!
//! after which x = z/w and y = -1/w.

use crate::ff::{Field, FieldElement};
use crate::velu::Isogeny;
use crate::weierstrass::{Curve, Point};
use crate::{Error, Result};

/// Largest residual precision `normalization_constant` will attempt; keeps
/// the series workload bounded.
pub const MAX_PRECISION: usize = 256;

/// Precision tag for exactly-known series (constants, monomials).
const EXACT: i64 = i64::MAX / 4;

/// Relative-length guard for inversion: inverting an exactly-known series
/// would ask for unboundedly many coefficients.
const MAX_REL: i64 = 1 << 14;

/// A truncated Laurent series. Stored coefficients cover exponents
/// [lead, lead + coeffs.len()); every exponent below `lead` or between the
/// stored window and `prec` is exactly zero; exponents at or above `prec`
/// are unknown. Normalized so the stored window has nonzero endpoints, and
/// an all-zero series has an empty window with lead == prec.
#[derive(Clone, Debug)]
pub struct Series {
    field: Field,
    lead: i64,
    coeffs: Vec<FieldElement>,
    prec: i64,
}

impl Series {
    pub fn zero(field: &Field, prec: i64) -> Series {
        Series { field: field.clone(), lead: prec, coeffs: Vec::new(), prec }
    }

    /// The constant series c, known exactly.
    pub fn constant(c: &FieldElement) -> Series {
        Series::monomial(c, 0)
    }

    /// The monomial c z^e, known exactly.
    pub fn monomial(c: &FieldElement, e: i64) -> Series {
        let mut s =
            Series { field: c.field().clone(), lead: e, coeffs: vec![c.clone()], prec: EXACT };
        s.normalize();
        s
    }

    /// Exponent of the first stored coefficient (== prec for a zero series).
    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// First unknown exponent.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at exponent e; None at or beyond the precision horizon.
    pub fn coeff_at(&self, e: i64) -> Option<FieldElement> {
        if e >= self.prec {
            return None;
        }
        let i = e - self.lead;
        if i < 0 || i >= self.coeffs.len() as i64 {
            return Some(self.field.zero());
        }
        Some(self.coeffs[i as usize].clone())
    }

    fn stored_end(&self) -> i64 {
        self.lead + self.coeffs.len() as i64
    }

    /// Trim zero coefficients at both window ends; trailing zeros move into
    /// the implicit exactly-zero zone, leading zeros sharpen the lead.
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            self.coeffs.drain(..k);
            self.lead += k as i64;
        }
        if self.coeffs.is_empty() {
            self.lead = self.prec;
        }
    }

    pub fn add(&self, rhs: &Series) -> Series {
        debug_assert!(self.field == rhs.field);
        let prec = self.prec.min(rhs.prec);
        let lo = self.lead.min(rhs.lead).min(prec);
        let hi = self.stored_end().max(rhs.stored_end()).clamp(lo, prec);
        let mut coeffs = Vec::with_capacity((hi - lo) as usize);
        for e in lo..hi {
            let a = self.coeff_at(e).expect("below joint precision");
            let b = rhs.coeff_at(e).expect("below joint precision");
            coeffs.push(&a + &b);
        }
        let mut s = Series { field: self.field.clone(), lead: lo, coeffs, prec };
        s.normalize();
        s
    }

    pub fn neg(&self) -> Series {
        Series {
            field: self.field.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Series) -> Series {
        debug_assert!(self.field == rhs.field);
        // With sharp leads, min(l1 + p2, l2 + p1) is the honest precision
        // of the product; a zero factor contributes lead == prec.
        let prec = (self.lead + rhs.prec).min(rhs.lead + self.prec).min(EXACT);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series::zero(&self.field, prec);
        }
        let lo = self.lead + rhs.lead;
        let hi = (lo + self.coeffs.len() as i64 + rhs.coeffs.len() as i64 - 1).clamp(lo, prec);
        let len = (hi - lo) as usize;
        let mut coeffs = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        let mut s = Series { field: self.field.clone(), lead: lo, coeffs, prec };
        s.normalize();
        s
    }

    pub fn scale(&self, c: &FieldElement) -> Series {
        let mut s = Series {
            field: self.field.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        };
        s.normalize();
        s
    }

    /// Multiplicative inverse; errors when the series is zero to its
    /// precision. Relative precision is preserved, so the absolute horizon
    /// shifts to prec - 2 * lead.
    pub fn inverse(&self) -> Result<Series> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        // A monomial inverts exactly; anything longer needs a bounded
        // number of coefficients.
        if self.coeffs.len() == 1 {
            return Ok(Series {
                field: self.field.clone(),
                lead: -self.lead,
                coeffs: vec![self.coeffs[0].inverse()?],
                prec: (self.prec - 2 * self.lead).min(EXACT),
            });
        }
        let rel = self.prec - self.lead;
        assert!(rel <= MAX_REL, "inverse of a near-exact series is unbounded");
        let n = rel as usize;
        let a0_inv = self.coeffs[0].inverse()?;
        let mut out = vec![self.field.zero(); n];
        out[0] = a0_inv.clone();
        for k in 1..n {
            let mut acc = self.field.zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = &acc + &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = -&(&acc * &a0_inv);
        }
        let mut s = Series {
            field: self.field.clone(),
            lead: -self.lead,
            coeffs: out,
            prec: self.prec - 2 * self.lead,
        };
        s.normalize();
        Ok(s)
    }

    pub fn div(&self, rhs: &Series) -> Result<Series> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Formal derivative d/dz.
    pub fn derivative(&self) -> Series {
        let p = self.field.p() as i64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lead + i as i64;
            coeffs.push(c.scale(e.rem_euclid(p) as u64));
        }
        let mut s = Series {
            field: self.field.clone(),
            lead: self.lead - 1,
            coeffs,
            prec: self.prec - 1,
        };
        s.normalize();
        s
    }
}

/// Laurent expansions of (x, y) at infinity in z = -x/y, with `terms`
/// tracked coefficients of x starting at z^{-2}.
pub fn curve_expansion(e: &Curve, terms: usize) -> (Series, Series) {
    let f = e.field();
    let [a1, a2, a3, a4, a6] = e.a();
    // w as a truncated polynomial in z, coefficient index = exponent,
    // exponents below `cap` tracked.
    let cap = terms + 4;
    let mut w = vec![f.zero(); cap];
    if cap > 3 {
        w[3] = f.one();
    }
    loop {
        // z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
        let w2 = poly_mul_trunc(&w, &w, cap, f);
        let w3 = poly_mul_trunc(&w2, &w, cap, f);
        let mut next = vec![f.zero(); cap];
        if cap > 3 {
            next[3] = f.one();
        }
        for k in 0..cap {
            let mut acc = next[k].clone();
            if k >= 1 {
                acc = &acc + &(a1 * &w[k - 1]);
                acc = &acc + &(a4 * &w2[k - 1]);
            }
            if k >= 2 {
                acc = &acc + &(a2 * &w[k - 2]);
            }
            acc = &acc + &(a3 * &w2[k]);
            acc = &acc + &(a6 * &w3[k]);
            next[k] = acc;
        }
        if next == w {
            break;
        }
        w = next;
    }
    let mut w_series =
        Series { field: f.clone(), lead: 3, coeffs: w[3..].to_vec(), prec: cap as i64 };
    w_series.normalize();
    let z = Series::monomial(&f.one(), 1);
    let w_inv = w_series.inverse().expect("w has unit leading coefficient");
    let x = z.mul(&w_inv);
    let y = w_inv.neg();
    debug_assert_eq!(x.lead(), -2);
    debug_assert_eq!(y.lead(), -3);
    debug_assert!(x.coeff_at(-2).unwrap().is_one());
    (x, y)
}

fn poly_mul_trunc(
    a: &[FieldElement],
    b: &[FieldElement],
    cap: usize,
    f: &Field,
) -> Vec<FieldElement> {
    let mut out = vec![f.zero(); cap];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < cap {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// The invariant differential omega = x'(z) / (2y + a1 x + a3) dz as a
/// series in z; leading coefficient 1.
pub fn invariant_differential(e: &Curve, terms: usize) -> Series {
    let (x, y) = curve_expansion(e, terms);
    differential_from(e, &x, &y)
}

fn differential_from(e: &Curve, x: &Series, y: &Series) -> Series {
    let f = e.field();
    let [a1, _, a3, _, _] = e.a();
    let denom = Series::constant(&f.from_u64(2))
        .mul(y)
        .add(&Series::constant(a1).mul(x))
        .add(&Series::constant(a3));
    x.derivative().div(&denom).expect("denominator has a pole, hence is nonzero")
}

/// Chord addition of a formal point (x(z), y(z)) with a constant affine
/// point Q on the same curve.
fn chord_add(e: &Curve, x: &Series, y: &Series, q: &Point) -> (Series, Series) {
    let [a1, a2, a3, _, _] = e.a();
    let xq = Series::constant(q.x());
    let yq = Series::constant(q.y());
    let lambda = y.sub(&yq).div(&x.sub(&xq)).expect("x(z) is non-constant");
    let nu = y.sub(&lambda.mul(x));
    let a1s = Series::constant(a1);
    let a2s = Series::constant(a2);
    let a3s = Series::constant(a3);
    let x3 = lambda.mul(&lambda).add(&a1s.mul(&lambda)).sub(&a2s).sub(x).sub(&xq);
    let y3 = lambda.add(&a1s).mul(&x3).neg().sub(&nu).sub(&a3s);
    (x3, y3)
}

/// A map of curves that can push the formal point at infinity forward.
#[derive(Clone)]
pub enum FormalMap<'a> {
    /// An isogeny evaluated by formal point sums over its kernel.
    Velu(&'a Isogeny),
    /// (x, y) -> (u^{-2}(x - r), u^{-3}(y - sx + rs - t)) with the codomain
    /// derived from the standard change-of-variables formulas.
    Scaling(Box<ScalingIso>),
    /// The q-power Frobenius; inseparable, so its constant is 0 by the
    /// truncation rule (z^q dies at every fixed finite precision).
    Frobenius { curve: Curve },
    /// Left-to-right composition: Composite([f, g]) is g after f.
    Composite(Vec<FormalMap<'a>>),
}

#[derive(Clone, Debug)]
pub struct ScalingIso {
    domain: Curve,
    codomain: Curve,
    u: FieldElement,
    r: FieldElement,
    s: FieldElement,
    t: FieldElement,
}

impl ScalingIso {
    /// Builds the isomorphism data for (u, r, s, t), u != 0, deriving the
    /// codomain coefficients: u a1' = a1 + 2s, u^2 a2' = a2 - s a1 + 3r -
    /// s^2, u^3 a3' = a3 + r a1 + 2t, u^4 a4' = a4 - s a3 + 2r a2 -
    /// (t + rs) a1 + 3r^2 - 2st, u^6 a6' = a6 + r a4 + r^2 a2 + r^3 -
    /// t a3 - t^2 - rt a1.
    pub fn new(
        domain: &Curve,
        u: &FieldElement,
        r: &FieldElement,
        s: &FieldElement,
        t: &FieldElement,
    ) -> Result<ScalingIso> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = domain.field();
        let [a1, a2, a3, a4, a6] = domain.a();
        let two = f.from_u64(2);
        let three = f.from_u64(3);
        let ui = u.inverse()?;
        let u2i = &ui * &ui;
        let u3i = &u2i * &ui;
        let u4i = &u2i * &u2i;
        let u6i = &u4i * &u2i;
        let b1 = &(a1 + &(&two * s)) * &ui;
        let b2 = &(&(&(a2 - &(s * a1)) + &(&three * r)) - &(s * s)) * &u2i;
        let b3 = &(&(a3 + &(r * a1)) + &(&two * t)) * &u3i;
        let b4 = &(&(&(&(a4 - &(s * a3)) + &(&(&two * r) * a2)) - &(&(t + &(r * s)) * a1))
            + &(&three * &(r * r)))
            - &(&(&two * s) * t);
        let b4 = &b4 * &u4i;
        let b6 = &(&(&(&(&(a6 + &(r * a4)) + &(&(r * r) * a2)) + &(&(r * r) * r)) - &(t * a3))
            - &(t * t))
            - &(&(r * t) * a1);
        let b6 = &b6 * &u6i;
        let codomain = Curve::new(f, [b1, b2, b3, b4, b6])?;
        Ok(ScalingIso {
            domain: domain.clone(),
            codomain,
            u: u.clone(),
            r: r.clone(),
            s: s.clone(),
            t: t.clone(),
        })
    }

    pub fn codomain(&self) -> &Curve {
        &self.codomain
    }

    #[cfg(test)]
    pub(crate) fn with_codomain(mut self, codomain: Curve) -> ScalingIso {
        self.codomain = codomain;
        self
    }
}

impl<'a> FormalMap<'a> {
    pub fn velu(iso: &'a Isogeny) -> FormalMap<'a> {
        FormalMap::Velu(iso)
    }

    pub fn frobenius(curve: &Curve) -> FormalMap<'a> {
        FormalMap::Frobenius { curve: curve.clone() }
    }

    pub fn scaling(
        domain: &Curve,
        u: &FieldElement,
        r: &FieldElement,
        s: &FieldElement,
        t: &FieldElement,
    ) -> Result<FormalMap<'a>> {
        Ok(FormalMap::Scaling(Box::new(ScalingIso::new(domain, u, r, s, t)?)))
    }

    /// Composition applied left to right; codomains must chain.
    pub fn compose(maps: Vec<FormalMap<'a>>) -> Result<FormalMap<'a>> {
        assert!(!maps.is_empty(), "empty composition");
        for w in maps.windows(2) {
            if w[0].codomain() != w[1].domain() {
                return Err(Error::CurveMismatch);
            }
        }
        Ok(FormalMap::Composite(maps))
    }

    pub fn domain(&self) -> &Curve {
        match self {
            FormalMap::Velu(iso) => iso.domain(),
            FormalMap::Scaling(s) => &s.domain,
            FormalMap::Frobenius { curve } => curve,
            FormalMap::Composite(maps) => maps.first().unwrap().domain(),
        }
    }

    pub fn codomain(&self) -> &Curve {
        match self {
            FormalMap::Velu(iso) => iso.codomain(),
            FormalMap::Scaling(s) => &s.codomain,
            FormalMap::Frobenius { curve } => curve,
            FormalMap::Composite(maps) => maps.last().unwrap().codomain(),
        }
    }

    pub fn is_inseparable(&self) -> bool {
        match self {
            FormalMap::Frobenius { .. } => true,
            FormalMap::Composite(maps) => maps.iter().any(|m| m.is_inseparable()),
            _ => false,
        }
    }

    /// Push the formal point forward to codomain coordinates.
    fn apply(&self, x: &Series, y: &Series) -> (Series, Series) {
        match self {
            FormalMap::Velu(iso) => {
                let e = iso.domain();
                let mut xx = x.clone();
                let mut yy = y.clone();
                for q in iso.kernel() {
                    if q.is_infinity() {
                        continue;
                    }
                    let (x3, y3) = chord_add(e, x, y, q);
                    xx = xx.add(&x3.sub(&Series::constant(q.x())));
                    yy = yy.add(&y3.sub(&Series::constant(q.y())));
                }
                (xx, yy)
            }
            FormalMap::Scaling(iso) => {
                let ui = iso.u.inverse().expect("u nonzero");
                let u2i = &ui * &ui;
                let u3i = &u2i * &ui;
                let rs_t = &(&iso.r * &iso.s) - &iso.t;
                let xs = x.sub(&Series::constant(&iso.r)).scale(&u2i);
                let ys = y
                    .sub(&Series::constant(&iso.s).mul(x))
                    .add(&Series::constant(&rs_t))
                    .scale(&u3i);
                (xs, ys)
            }
            FormalMap::Frobenius { .. } => {
                unreachable!("inseparable maps are handled by the truncation rule")
            }
            FormalMap::Composite(maps) => {
                let mut cur = (x.clone(), y.clone());
                for m in maps {
                    cur = m.apply(&cur.0, &cur.1);
                }
                cur
            }
        }
    }
}

/// The constant c with pullback(omega_codomain) = c * omega_domain, plus
/// the count of residual coefficients checked to vanish beyond it.
#[derive(Clone, Debug)]
pub struct DifferentialRatio {
    pub c: FieldElement,
    pub residual_precision: usize,
}

/// Extract the normalization constant of a formal map, certifying at least
/// `precision` vanishing residual coefficients. Errors:
/// * PrecisionTooLow when the request exceeds MAX_PRECISION or the series
///   bookkeeping cannot certify that many coefficients;
/// * NonProportional when a checked residual coefficient is nonzero.
pub fn normalization_constant(map: &FormalMap, precision: usize) -> Result<DifferentialRatio> {
    let f = map.domain().field();
    if map.is_inseparable() {
        // z^q truncates to zero at any fixed finite precision; the constant
        // is exactly 0.
        return Ok(DifferentialRatio { c: f.zero(), residual_precision: precision });
    }
    if precision > MAX_PRECISION {
        return Err(Error::PrecisionTooLow { have: MAX_PRECISION, need: precision });
    }
    let terms = precision + 8;
    let (x, y) = curve_expansion(map.domain(), terms);
    let (ix, iy) = map.apply(&x, &y);
    let omega = differential_from(map.domain(), &x, &y);
    let pulled = differential_from(map.codomain(), &ix, &iy);
    let ratio = pulled.div(&omega).map_err(|_| Error::NonProportional)?;
    if ratio.lead() < 0 {
        return Err(Error::NonProportional);
    }
    let c = ratio.coeff_at(0).ok_or(Error::PrecisionTooLow { have: 0, need: precision })?;
    let have = (ratio.prec() - 1).max(0) as usize;
    if have < precision {
        return Err(Error::PrecisionTooLow { have, need: precision });
    }
    for e in 1..=precision as i64 {
        if !ratio.coeff_at(e).expect("within certified precision").is_zero() {
            return Err(Error::NonProportional);
        }
    }
    Ok(DifferentialRatio { c, residual_precision: have })
}

/// Normalization constant of an isogeny built from point sums; it must be 1
/// for every such map, and callers assert exactly that.
pub fn isogeny_normalization(iso: &Isogeny, precision: usize) -> Result<DifferentialRatio> {
    normalization_constant(&FormalMap::velu(iso), precision)
}

/// Normalization constant of the (u, r, s, t) isomorphism; equals u.
pub fn scaling_isomorphism_constant(
    domain: &Curve,
    u: &FieldElement,
    r: &FieldElement,
    s: &FieldElement,
    t: &FieldElement,
    precision: usize,
) -> Result<FieldElement> {
    let map = FormalMap::scaling(domain, u, r, s, t)?;
    Ok(normalization_constant(&map, precision)?.c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve_i64(field: &Field, a: [i64; 5]) -> Curve {
        Curve::new(field, a.map(|v| field.from_int(v))).unwrap()
    }

    fn bounded(c: &FieldElement, prec: i64) -> Series {
        Series::constant(c).add(&Series::zero(c.field(), prec))
    }

    #[test]
    fn series_arithmetic_basics() {
        let f = Field::prime(7).unwrap();
        let z = Series::monomial(&f.one(), 1).add(&Series::zero(&f, 10));
        let one = bounded(&f.one(), 10);
        // (1 + z) * (1 - z) = 1 - z^2
        let a = one.add(&z);
        let b = one.sub(&z);
        let ab = a.mul(&b);
        assert!(ab.coeff_at(0).unwrap().is_one());
        assert!(ab.coeff_at(1).unwrap().is_zero());
        assert_eq!(ab.coeff_at(2).unwrap(), f.from_int(-1));
        // inverse of 1 - z is the geometric series
        let inv = b.inverse().unwrap();
        assert_eq!(inv.prec(), 10);
        for e in 0..inv.prec() {
            assert!(inv.coeff_at(e).unwrap().is_one());
        }
        // derivative of z^{-2} is -2 z^{-3}
        let d = Series::monomial(&f.one(), -2).derivative();
        assert_eq!(d.lead(), -3);
        assert_eq!(d.coeff_at(-3).unwrap(), f.from_int(-2));
    }

    #[test]
    fn precision_tracks_through_division() {
        let f = Field::prime(11).unwrap();
        let cut = Series::zero(&f, 4);
        let num =
            Series::monomial(&f.one(), -3).add(&Series::monomial(&f.from_u64(5), 0)).add(&cut);
        let den =
            Series::monomial(&f.one(), -2).add(&Series::monomial(&f.from_u64(3), 1)).add(&cut);
        let q = num.div(&den).unwrap();
        assert_eq!(q.lead(), -1);
        // relative precision of the weaker operand survives: num has 7
        // known relative coefficients, den 6, so the quotient keeps 6.
        assert_eq!(q.prec() - q.lead(), 6);
        let back = q.mul(&den);
        for e in back.lead()..back.prec() {
            assert_eq!(back.coeff_at(e), num.coeff_at(e), "exponent {e}");
        }
    }

    #[test]
    fn expansion_starts_as_specified() {
        // x = z^{-2} - a1 z^{-1} - a2 - a3 z - ... and y = -x/z.
        let f = Field::prime(13).unwrap();
        let e = curve_i64(&f, [1, -2, -2, 0, 0]);
        let (x, y) = curve_expansion(&e, 12);
        let [a1, a2, a3, _, _] = e.a();
        assert!(x.coeff_at(-2).unwrap().is_one());
        assert_eq!(x.coeff_at(-1).unwrap(), -a1);
        assert_eq!(x.coeff_at(0).unwrap(), -a2);
        assert_eq!(x.coeff_at(1).unwrap(), -a3);
        let want_y = x.div(&Series::monomial(&f.one(), 1)).unwrap().neg();
        for e in y.lead()..y.prec().min(want_y.prec()) {
            assert_eq!(y.coeff_at(e), want_y.coeff_at(e), "exponent {e}");
        }
    }

    #[test]
    fn expansion_satisfies_curve_equation() {
        for (p, a) in [(7u64, [1i64, -2, -2, 0, 0]), (11, [0, 3, 0, 1, 0]), (13, [1, 2, 3, 4, 6])] {
            let f = Field::prime(p).unwrap();
            let e = curve_i64(&f, a);
            let (x, y) = curve_expansion(&e, 14);
            let [a1, a2, a3, a4, a6] = e.a();
            let lhs = y
                .mul(&y)
                .add(&Series::constant(a1).mul(&x).mul(&y))
                .add(&Series::constant(a3).mul(&y));
            let rhs = x
                .mul(&x)
                .mul(&x)
                .add(&Series::constant(a2).mul(&x).mul(&x))
                .add(&Series::constant(a4).mul(&x))
                .add(&Series::constant(a6));
            let diff = lhs.sub(&rhs);
            assert!(diff.is_zero(), "curve equation fails for p={p}: {diff:?}");
            assert!(diff.prec() >= 6, "too little certified precision: {}", diff.prec());
        }
    }

    #[test]
    fn differential_has_unit_lead_and_consistency() {
        let f = Field::prime(11).unwrap();
        let e = curve_i64(&f, [0, 3, 0, 1, 0]);
        let omega = invariant_differential(&e, 12);
        assert_eq!(omega.lead(), 0);
        assert!(omega.coeff_at(0).unwrap().is_one());
        // x' = omega * (2y + a1 x + a3)
        let (x, y) = curve_expansion(&e, 12);
        let [a1, _, a3, _, _] = e.a();
        let denom = Series::constant(&f.from_u64(2))
            .mul(&y)
            .add(&Series::constant(a1).mul(&x))
            .add(&Series::constant(a3));
        let diff = x.derivative().sub(&omega.mul(&denom));
        assert!(diff.is_zero());
    }

    #[test]
    fn velu_isogenies_are_normalized() {
        // c = 1 with at least 12 residual vanishing coefficients.
        let f = Field::prime(7).unwrap();
        let e = curve_i64(&f, [1, -2, -2, 0, 0]);
        let p = e.point(f.zero(), f.zero()).unwrap();
        let phi = Isogeny::from_kernel(&p, 4).unwrap();
        let r = isogeny_normalization(&phi, 12).unwrap();
        assert!(r.c.is_one(), "got c = {:?}", r.c);
        assert!(r.residual_precision >= 12);
        let comp = phi.complement().unwrap();
        let rc = isogeny_normalization(&comp, 12).unwrap();
        assert!(rc.c.is_one());
    }

    #[test]
    fn composition_is_multiplicative() {
        let f = Field::prime(7).unwrap();
        let e = curve_i64(&f, [1, -2, -2, 0, 0]);
        let p = e.point(f.zero(), f.zero()).unwrap();
        let phi = Isogeny::from_kernel(&p, 4).unwrap();
        let comp = phi.complement().unwrap();
        let chain =
            FormalMap::compose(vec![FormalMap::velu(&phi), FormalMap::velu(&comp)]).unwrap();
        let r = normalization_constant(&chain, 12).unwrap();
        assert!(r.c.is_one(), "complement after isogeny must have constant 1");
        // with a scaling isomorphism appended the constant becomes u
        let u = f.from_u64(3);
        let zero = f.zero();
        let eta = FormalMap::scaling(phi.domain(), &u, &zero, &zero, &zero).unwrap();
        let chain2 =
            FormalMap::compose(vec![FormalMap::velu(&phi), FormalMap::velu(&comp), eta]).unwrap();
        let r2 = normalization_constant(&chain2, 12).unwrap();
        assert_eq!(r2.c, u);
    }

    #[test]
    fn scaling_constant_is_u() {
        let f = Field::prime(13).unwrap();
        let e = curve_i64(&f, [0, 3, 0, 1, 0]);
        for (u, r, s, t) in [(1i64, 2i64, 0i64, 0i64), (3, 0, 0, 0), (3, 1, 2, 5), (12, 7, 4, 9)] {
            let c = scaling_isomorphism_constant(
                &e,
                &f.from_int(u),
                &f.from_int(r),
                &f.from_int(s),
                &f.from_int(t),
                12,
            )
            .unwrap();
            assert_eq!(c, f.from_int(u), "u={u} r={r} s={s} t={t}");
        }
    }

    #[test]
    fn scaling_codomain_is_isomorphic_image() {
        // The derived codomain must contain the image of every rational
        // point under (x, y) -> (u^{-2}(x - r), u^{-3}(y - sx + rs - t)).
        let f = Field::prime(13).unwrap();
        let e = curve_i64(&f, [1, 2, 3, 4, 6]);
        let (u, r, s, t) = (f.from_u64(5), f.from_u64(2), f.from_u64(7), f.from_u64(11));
        let iso = ScalingIso::new(&e, &u, &r, &s, &t).unwrap();
        let cod = iso.codomain().clone();
        let ui = u.inverse().unwrap();
        let u2i = &ui * &ui;
        let u3i = &u2i * &ui;
        for pt in e.points().unwrap() {
            if pt.is_infinity() {
                continue;
            }
            let xs = &(pt.x() - &r) * &u2i;
            let ys = &(&(pt.y() - &(&s * pt.x())) + &(&(&r * &s) - &t)) * &u3i;
            assert!(cod.point(xs, ys).is_ok());
        }
    }

    #[test]
    fn frobenius_constant_is_zero() {
        let f = Field::prime(7).unwrap();
        let e = curve_i64(&f, [1, -2, -2, 0, 0]);
        let r = normalization_constant(&FormalMap::frobenius(&e), 12).unwrap();
        assert!(r.c.is_zero());
    }

    #[test]
    fn mismatched_codomain_is_detected() {
        // Pair the identity map with a codomain whose a1 differs; the
        // pulled-back differential is then a genuinely different series.
        let f = Field::prime(13).unwrap();
        let e = curve_i64(&f, [1, 2, 3, 4, 6]);
        let one = f.one();
        let zero = f.zero();
        let good = ScalingIso::new(&e, &one, &zero, &zero, &zero).unwrap();
        let wrong = (0..13)
            .find_map(|a6| Curve::new(&f, [2, 2, 3, 4, a6].map(|v| f.from_int(v))).ok())
            .expect("some nonsingular tweak exists");
        let bad = FormalMap::Scaling(Box::new(good.with_codomain(wrong)));
        assert_eq!(normalization_constant(&bad, 12).unwrap_err(), Error::NonProportional);
    }

    #[test]
    fn precision_cap_enforced() {
        let f = Field::prime(7).unwrap();
        let e = curve_i64(&f, [1, -2, -2, 0, 0]);
        let p = e.point(f.zero(), f.zero()).unwrap();
        let phi = Isogeny::from_kernel(&p, 4).unwrap();
        match isogeny_normalization(&phi, MAX_PRECISION + 1) {
            Err(Error::PrecisionTooLow { have, need }) => assert!(have < need),
            other => panic!("expected PrecisionTooLow, got {other:?}"),
        }
    }
}
