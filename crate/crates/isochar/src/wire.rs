//! JSON wire shapes for fields, curves, points, and isogenies.
//!
//! Elements travel as bare coefficient arrays, constant term first, so a
//! consumer can compare values across implementations by checking the
//! serialized modulus rather than assuming a shared field model. Decoding
//! reconstructs the canonical objects and rejects anything that does not
//! match them.

use crate::ff::{Field, FieldElement};
use crate::velu::Isogeny;
use crate::weierstrass::{Curve, Point};
use crate::{Error, Result};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// {"p": .., "n": .., "modulus": [c0, c1, ..., 1]}
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldWire {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
}

impl From<&Field> for FieldWire {
    fn from(f: &Field) -> FieldWire {
        FieldWire { p: f.p(), n: f.degree(), modulus: f.modulus().to_vec() }
    }
}

impl FieldWire {
    /// Rebuild the field and insist on the canonical modulus.
    pub fn decode(&self) -> Result<Field> {
        let field = Field::extension(self.p, self.n)?;
        if field.modulus() != self.modulus.as_slice() {
            return Err(Error::WireFormat(format!(
                "modulus {:?} is not the canonical modulus for p={} n={}",
                self.modulus, self.p, self.n
            )));
        }
        Ok(field)
    }
}

fn element_coeffs(e: &FieldElement) -> Vec<u64> {
    e.coeffs().to_vec()
}

fn element_from_coeffs(field: &Field, coeffs: &[u64]) -> Result<FieldElement> {
    if coeffs.len() != field.degree() || coeffs.iter().any(|&c| c >= field.p()) {
        return Err(Error::WireFormat(format!(
            "coefficient vector {coeffs:?} is not reduced of length {}",
            field.degree()
        )));
    }
    Ok(field.element(coeffs))
}

/// {"field": .., "a": [[..]; 5]}
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveWire {
    pub field: FieldWire,
    pub a: [Vec<u64>; 5],
}

impl From<&Curve> for CurveWire {
    fn from(e: &Curve) -> CurveWire {
        let a = e.a();
        CurveWire {
            field: e.field().into(),
            a: std::array::from_fn(|i| element_coeffs(&a[i])),
        }
    }
}

impl CurveWire {
    pub fn decode(&self) -> Result<Curve> {
        let field = self.field.decode()?;
        let mut coeffs = Vec::with_capacity(5);
        for c in &self.a {
            coeffs.push(element_from_coeffs(&field, c)?);
        }
        let a: [FieldElement; 5] =
            coeffs.try_into().expect("five coefficients collected above");
        Curve::new(&field, a)
    }
}

/// "inf" or {"x": [..], "y": [..]}
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointWire {
    Infinity,
    Affine { x: Vec<u64>, y: Vec<u64> },
}

impl From<&Point> for PointWire {
    fn from(pt: &Point) -> PointWire {
        if pt.is_infinity() {
            PointWire::Infinity
        } else {
            PointWire::Affine { x: element_coeffs(pt.x()), y: element_coeffs(pt.y()) }
        }
    }
}

impl PointWire {
    pub fn decode(&self, curve: &Curve) -> Result<Point> {
        match self {
            PointWire::Infinity => Ok(curve.infinity()),
            PointWire::Affine { x, y } => {
                let field = curve.field();
                curve.point(element_from_coeffs(field, x)?, element_from_coeffs(field, y)?)
            }
        }
    }
}

impl Serialize for PointWire {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PointWire::Infinity => serializer.serialize_str("inf"),
            PointWire::Affine { x, y } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("x", x)?;
                map.serialize_entry("y", y)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for PointWire {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PointVisitor;
        impl<'de> Visitor<'de> for PointVisitor {
            type Value = PointWire;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"inf\" or a map with x and y coefficient arrays")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<PointWire, E> {
                if v == "inf" {
                    Ok(PointWire::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<PointWire, A::Error> {
                let mut x: Option<Vec<u64>> = None;
                let mut y: Option<Vec<u64>> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "x" => x = Some(map.next_value()?),
                        "y" => y = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["x", "y"])),
                    }
                }
                let x = x.ok_or_else(|| de::Error::missing_field("x"))?;
                let y = y.ok_or_else(|| de::Error::missing_field("y"))?;
                Ok(PointWire::Affine { x, y })
            }
        }
        d.deserialize_any(PointVisitor)
    }
}

/// {"domain": Curve, "codomain": Curve, "kernel_x": [[..], ..], "degree": m}
///
/// kernel_x lists the x-coordinates of P, 2P, ..., (m-1)P in that order;
/// the point at infinity is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyWire {
    pub domain: CurveWire,
    pub codomain: CurveWire,
    pub kernel_x: Vec<Vec<u64>>,
    pub degree: u64,
}

impl From<&Isogeny> for IsogenyWire {
    fn from(phi: &Isogeny) -> IsogenyWire {
        let kernel_x = phi.kernel()[1..]
            .iter()
            .map(|pt| element_coeffs(pt.x()))
            .collect();
        IsogenyWire {
            domain: phi.domain().into(),
            codomain: phi.codomain().into(),
            kernel_x,
            degree: phi.degree(),
        }
    }
}

impl IsogenyWire {
    /// Rebuild the isogeny from the domain and kernel generator, then check
    /// that the stated codomain and kernel order match what the generator
    /// actually produces.
    pub fn decode(&self) -> Result<Isogeny> {
        let domain = self.domain.decode()?;
        if self.degree < 2 || self.kernel_x.len() != (self.degree - 1) as usize {
            return Err(Error::WireFormat(format!(
                "kernel_x has {} entries for degree {}",
                self.kernel_x.len(),
                self.degree
            )));
        }
        let field = domain.field();
        let gen_x = element_from_coeffs(field, &self.kernel_x[0])?;
        let generator = domain
            .lift_x(&gen_x)
            .ok_or_else(|| Error::WireFormat("kernel generator x is not on the curve".into()))?;
        let phi = Isogeny::from_kernel(&generator, self.degree)?;
        let rebuilt = IsogenyWire::from(&phi);
        if rebuilt != *self {
            return Err(Error::WireFormat(
                "kernel or codomain does not match the canonical isogeny".into(),
            ));
        }
        Ok(phi)
    }
}
