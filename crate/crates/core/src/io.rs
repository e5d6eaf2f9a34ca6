//! JSON wire formats.
//!
//! Every complex coefficient is a `[re, im]` pair; a bare number is accepted
//! on input as a real coefficient. Layouts:
//!
//! * vector: 5 coefficients in the order e_o, e1, e2, e3, e_inf
//! * even element: 16 coefficients in the null-basis order of
//!   [`NULL_SLOT_NAMES`](crate::even::NULL_SLOT_NAMES)
//! * multivector: 32 coefficients indexed by orthonormal blade bitmask
//!   (bit 0..4 = e1, e2, e3, e+, e-)
//! * quaternion: 4 coefficients w, x, y, z
//! * even polynomial: `{"coeffs": [c0, c1, ...]}` in ascending degree
//! * real polynomial: `{"real_coeffs": [r0, r1, ...]}`

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::even::EvenElement;
use crate::multivector::{CgaVector, Multivector, Scalar};
use crate::poly::{EvenPolynomial, RealPolynomial};
use crate::quaternion::Quaternion;

#[derive(Deserialize)]
#[serde(untagged)]
enum WireScalar {
    Real(f64),
    Pair([f64; 2]),
}

impl From<WireScalar> for Scalar {
    fn from(w: WireScalar) -> Scalar {
        match w {
            WireScalar::Real(r) => Scalar::new(r, 0.0),
            WireScalar::Pair([re, im]) => Scalar::new(re, im),
        }
    }
}

fn ser_slice<S: Serializer>(c: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = c.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

fn de_array<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[Scalar; N], D::Error> {
    let v: Vec<WireScalar> = Vec::deserialize(d)?;
    if v.len() != N {
        return Err(D::Error::invalid_length(
            v.len(),
            &format!("{N} coefficients").as_str(),
        ));
    }
    let mut out = [Scalar::new(0.0, 0.0); N];
    for (o, w) in out.iter_mut().zip(v) {
        *o = w.into();
        if !o.is_finite() {
            return Err(D::Error::custom("non-finite coefficient"));
        }
    }
    Ok(out)
}

impl Serialize for CgaVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_slice(&self.to_array(), s)
    }
}

impl<'de> Deserialize<'de> for CgaVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        de_array::<D, 5>(d).map(CgaVector::from_array)
    }
}

impl Serialize for EvenElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_slice(&self.null_coeffs(), s)
    }
}

impl<'de> Deserialize<'de> for EvenElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = de_array::<D, 16>(d)?;
        EvenElement::from_null_coeffs(c).map_err(D::Error::custom)
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_slice(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Multivector::from_coeffs(de_array::<D, 32>(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_slice(&self.to_array(), s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        de_array::<D, 4>(d).map(Quaternion::from_array)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    coeffs: Vec<EvenElement>,
}

impl Serialize for EvenPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyWire {
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EvenPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PolyWire::deserialize(d).map(|w| EvenPolynomial::new(w.coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct RealPolyWire {
    real_coeffs: Vec<f64>,
}

impl Serialize for RealPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RealPolyWire {
            real_coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RealPolyWire::deserialize(d)?;
        if w.real_coeffs.iter().any(|c| !c.is_finite()) {
            return Err(D::Error::custom("non-finite coefficient"));
        }
        Ok(RealPolynomial::new(w.real_coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_round_trip_uses_null_order() {
        let e = EvenElement::eps1() + EvenElement::quat_k().scale(Scalar::new(0.5, -2.0));
        let s = serde_json::to_string(&e).unwrap();
        let back: EvenElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let raw: Vec<[f64; 2]> = serde_json::from_str(&s).unwrap();
        assert_eq!(raw.len(), 16);
        assert_eq!(raw, e.null_coeffs().map(|z| [z.re, z.im]).to_vec());
    }

    #[test]
    fn bare_numbers_are_real() {
        let v: CgaVector = serde_json::from_str("[1, [2, 3], 0, 0, -1]").unwrap();
        assert_eq!(v.a_o, Scalar::new(1.0, 0.0));
        assert_eq!(v.a1, Scalar::new(2.0, 3.0));
        assert!(serde_json::from_str::<CgaVector>("[1, 2]").is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let p = EvenPolynomial::linear(EvenElement::quat_i());
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"coeffs\":"));
        assert_eq!(serde_json::from_str::<EvenPolynomial>(&s).unwrap(), p);
        let r = RealPolynomial::new(vec![1.0, 0.0, 1.0]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "{\"real_coeffs\":[1.0,0.0,1.0]}");
    }
}
