use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{data, CycloData};
use super::poly::CycPoly;
use crate::error::{Error, Result};

/// An exact element of the cyclotomic field `Q(z)`, `z = exp(2 pi i / N)`.
///
/// Stored in the power basis `1, z, ..., z^(phi(N)-1)`, i.e. as a polynomial
/// in `z` reduced modulo `Phi_N`.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycloData>,
    coeffs: Vec<BigRational>,
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycScalar {
    pub fn zero(conductor: u32) -> Self {
        let field = data(conductor);
        let coeffs = vec![BigRational::zero(); field.degree];
        CycScalar { field, coeffs }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_integer(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, rat(n))
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut s = Self::zero(conductor);
        s.coeffs[0] = q;
        s
    }

    /// Builds a scalar from power-basis coefficients of any length; the
    /// polynomial is reduced modulo `Phi_N`.
    pub fn from_poly_coeffs(conductor: u32, coeffs: &[BigRational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor);
        }
        let field = data(conductor);
        let reduced = reduce(&field, coeffs);
        Ok(CycScalar { field, coeffs: reduced })
    }

    /// `z_N^(k mod N)`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let field = data(conductor);
        let e = k.rem_euclid(field.conductor as i64) as usize;
        let coeffs = field.powers[e].iter().map(|&c| rat(c)).collect();
        CycScalar { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Reinterprets the value inside `Q(z_M)` via `z_N -> z_M^(M/N)`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        let n = self.conductor();
        if m == 0 {
            return Err(Error::InvalidConductor);
        }
        if m % n != 0 {
            return Err(Error::NotAMultiple { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let target = data(m);
        let step = (m / n) as usize;
        let mut out = vec![BigRational::zero(); target.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &target.powers[(i * step) % m as usize];
            for (o, &pc) in out.iter_mut().zip(p) {
                if pc != 0 {
                    *o += c * rat(pc);
                }
            }
        }
        Ok(CycScalar { field: target, coeffs: out })
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm_u32(a.conductor(), b.conductor());
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    /// Multiplies by `z_N^k` without a general product.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.field.conductor as i64;
        let k = k.rem_euclid(n) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut out = vec![BigRational::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[(i + k) % n as usize];
            for (o, &pc) in out.iter_mut().zip(p) {
                if pc != 0 {
                    *o += c * rat(pc);
                }
            }
        }
        CycScalar { field: Arc::clone(&self.field), coeffs: out }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycScalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse computed by extended gcd against `Phi_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = CycPoly::new(self.coeffs.clone());
        let (g, s) = a.gcd_inverse_part(&self.field.phi);
        debug_assert_eq!(g, CycPoly::one(), "Phi_N is irreducible");
        Ok(CycScalar {
            field: Arc::clone(&self.field),
            coeffs: reduce(&self.field, s.coeffs()),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value, for export and diagnostics only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / n;
            acc += Complex64::from_polar(v, theta);
        }
        acc
    }
}

/// Reduces an arbitrary-length power-basis vector modulo `Phi_N`.
pub(crate) fn reduce(field: &CycloData, coeffs: &[BigRational]) -> Vec<BigRational> {
    let n = field.conductor as usize;
    let mut out = vec![BigRational::zero(); field.degree];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < field.degree {
            out[k] += c;
            continue;
        }
        for (o, &pc) in out.iter_mut().zip(&field.powers[k % n]) {
            if pc != 0 {
                *o += c * rat(pc);
            }
        }
    }
    out
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CycScalar::lift_pair(self, rhs);
            return &a + &b;
        }
        CycScalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CycScalar::lift_pair(self, rhs);
            return &a - &b;
        }
        CycScalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CycScalar::lift_pair(self, rhs);
            return &a * &b;
        }
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycScalar { field: Arc::clone(&self.field), coeffs: reduce(&self.field, &prod) }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.conductor() == rhs.conductor() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        if self.conductor() == rhs.conductor() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

/// Text form `c0 + c1*z + c2*z^2 (N=<conductor>)`; zero terms are omitted
/// and the zero scalar prints as `0 (N=<conductor>)`.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*z")?,
                _ => write!(f, "{a}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (N={})", self.conductor())
    }
}

impl FromStr for CycScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in scalar `{s}`"));
        let s = s.trim();
        let open = s.rfind("(N=").ok_or_else(|| bad("missing `(N=...)`"))?;
        let tail = s[open + 3..].strip_suffix(')').ok_or_else(|| bad("unterminated conductor"))?;
        let conductor: u32 = tail.trim().parse().map_err(|_| bad("bad conductor"))?;
        if conductor == 0 {
            return Err(Error::InvalidConductor);
        }
        let body: String = s[..open].chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in body.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                neg = true;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));

        let mut coeffs: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef, power) = match term.split_once('*') {
                None if term == "z" => ("1", 1usize),
                None => (term.as_str(), 0),
                Some((c, zpart)) => {
                    let p = if zpart == "z" {
                        1
                    } else {
                        zpart
                            .strip_prefix("z^")
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| bad("bad power of z"))?
                    };
                    (c, p)
                }
            };
            let mut q: BigRational = coef.parse().map_err(|_| bad("bad rational"))?;
            if neg {
                q = -q;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += q;
        }
        CycScalar::from_poly_coeffs(conductor, &coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k)
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(6, 3), CycScalar::from_integer(6, -1));
        for n in 1..12 {
            assert!(z(n, 0).is_one());
        }
        assert_eq!(z(5, 7), z(5, 2));
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_integer(4, -1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&z(3, 1) + &z(3, 2)) + &CycScalar::one(3);
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_root() {
        for n in [3u32, 5, 7, 8, 12] {
            for k in 0..n as i64 {
                assert_eq!(z(n, k).inv().unwrap(), z(n, n as i64 - k));
            }
        }
        assert_eq!(CycScalar::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embedding() {
        assert_eq!(z(3, 1).embed(6).unwrap().coeffs(), z(6, 2).coeffs());
        assert!(CycScalar::one(4).embed(12).unwrap().is_one());
        assert_eq!(z(2, 1).embed(6).unwrap(), z(6, 3));
        assert_eq!(z(3, 1).embed(5), Err(Error::NotAMultiple { from: 3, to: 5 }));
        // mixed conductors compare inside the lcm
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn to_complex_values() {
        let c = z(4, 1).to_complex();
        assert!((c.re).abs() < 1e-12 && (c.im - 1.0).abs() < 1e-12);
        let c = z(6, 1).to_complex();
        assert!((c.re - 0.5).abs() < 1e-12 && (c.im - 0.866_025_403_784_438_6).abs() < 1e-12);
        let c = CycScalar::from_integer(7, -1).to_complex();
        assert!((c.re + 1.0).abs() < 1e-12 && c.im.abs() < 1e-12);
    }

    #[test]
    fn text_round_trip() {
        let a = &z(5, 2).scale(&BigRational::new(3.into(), 7.into())) - &CycScalar::from_integer(5, 2);
        let text = a.to_string();
        assert_eq!(text, "-2 + 3/7*z^2 (N=5)");
        assert_eq!(text.parse::<CycScalar>().unwrap(), a);
        assert_eq!("0 (N=3)".parse::<CycScalar>().unwrap(), CycScalar::zero(3));
        assert_eq!("z (N=4)".parse::<CycScalar>().unwrap(), z(4, 1));
        assert!("1 + z".parse::<CycScalar>().is_err());
    }
}
