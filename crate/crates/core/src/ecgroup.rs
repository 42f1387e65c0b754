//! Elliptic curve groups over prime fields F_p with p > 3, in short
//! Weierstrass form y^2 = x^3 + ax + b: point arithmetic, full enumeration at
//! desk scale, scalar multiples, and point orders. These groups serve as the
//! cyclic-group backend for the discrete-log solver.

use crate::error::{domain_err, Error, Result};
use crate::numtheory::{factor_classical, inv_mod, is_prime_u64, jacobi, mul_mod, pow_mod};

/// A nonsingular curve y^2 = x^3 + ax + b over F_p. Constructing one checks
/// that p is a prime greater than 3 and that the discriminant
/// -16(4a^3 + 27b^2) is nonzero mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// A point on a curve: affine coordinates or the point at infinity, which is
/// the identity of the group law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ECPoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl ECPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }
}

/// Enumeration keeps O(p) work and memory; beyond this, refuse.
const MAX_ENUM_P: u64 = 1_000_000;

impl CurveSpec {
    pub fn new(p: u64, a: u64, b: u64) -> Result<CurveSpec> {
        if p <= 3 || !is_prime_u64(p) {
            return Err(domain_err!("curve field order must be a prime greater than 3, got {p}"));
        }
        let (a, b) = (a % p, b % p);
        let curve = CurveSpec { p, a, b };
        if curve.discriminant() == 0 {
            return Err(domain_err!("singular curve: discriminant is zero for a={a}, b={b} mod {p}"));
        }
        Ok(curve)
    }

    /// -16(4a^3 + 27b^2) mod p.
    pub fn discriminant(&self) -> u64 {
        let p = self.p;
        let a3 = pow_mod(self.a, 3, p);
        let inner = (mul_mod(4, a3, p) + mul_mod(27, mul_mod(self.b, self.b, p), p)) % p;
        mul_mod(p - 16 % p, inner, p)
    }

    /// Right-hand side x^3 + ax + b mod p.
    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (pow_mod(x, 3, p) + mul_mod(self.a, x, p) + self.b) % p
    }

    /// Whether the point satisfies the curve equation.
    pub fn contains(&self, pt: &ECPoint) -> bool {
        match *pt {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => {
                x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x)
            }
        }
    }

    fn require(&self, pt: &ECPoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(domain_err!("point {pt:?} is not on the curve"))
        }
    }
}

/// Group law. The identity is O; the inverse of (x, y) is (x, -y); otherwise
/// chord or tangent slopes produce the third intersection, reflected.
pub fn ec_add(curve: &CurveSpec, lhs: &ECPoint, rhs: &ECPoint) -> Result<ECPoint> {
    curve.require(lhs)?;
    curve.require(rhs)?;
    let p = curve.p;
    let (xp, yp) = match *lhs {
        ECPoint::Infinity => return Ok(*rhs),
        ECPoint::Affine { x, y } => (x, y),
    };
    let (xq, yq) = match *rhs {
        ECPoint::Infinity => return Ok(*lhs),
        ECPoint::Affine { x, y } => (x, y),
    };
    if xp == xq && (yp + yq) % p == 0 {
        // Q = -P. Covers doubling a point with y = 0, where the tangent is vertical.
        return Ok(ECPoint::Infinity);
    }
    let lambda = if xp == xq {
        // Tangent: (3x^2 + a) / (2y)
        let num = (mul_mod(3, mul_mod(xp, xp, p), p) + curve.a) % p;
        mul_mod(num, inv_mod(mul_mod(2, yp, p), p)?, p)
    } else {
        // Chord: (y_Q - y_P) / (x_Q - x_P)
        let num = (yq + p - yp) % p;
        let den = (xq + p - xp) % p;
        mul_mod(num, inv_mod(den, p)?, p)
    };
    let xr = (mul_mod(lambda, lambda, p) + 2 * p - xp - xq) % p;
    let yr = (mul_mod(lambda, (xp + p - xr) % p, p) + p - yp) % p;
    Ok(ECPoint::Affine { x: xr, y: yr })
}

/// The inverse -P.
pub fn ec_neg(curve: &CurveSpec, pt: &ECPoint) -> Result<ECPoint> {
    curve.require(pt)?;
    Ok(match *pt {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine { x, y } => ECPoint::Affine { x, y: (curve.p - y) % curve.p },
    })
}

/// All points of the curve, O first, then ascending (x, y).
pub fn ec_enumerate(curve: &CurveSpec) -> Result<Vec<ECPoint>> {
    if curve.p > MAX_ENUM_P {
        return Err(Error::TooLarge(format!(
            "enumeration supports p <= {MAX_ENUM_P}, got {}",
            curve.p
        )));
    }
    let p = curve.p;
    // sqrt_of[s] = smallest y with y^2 = s, or MAX if s is a nonresidue.
    let mut sqrt_of = vec![u64::MAX; p as usize];
    for y in 0..=(p - 1) / 2 {
        sqrt_of[mul_mod(y, y, p) as usize] = y;
    }
    let mut points = vec![ECPoint::Infinity];
    for x in 0..p {
        let s = curve.rhs(x);
        let y = sqrt_of[s as usize];
        if y == u64::MAX {
            continue;
        }
        if y == 0 {
            points.push(ECPoint::Affine { x, y: 0 });
        } else {
            points.push(ECPoint::Affine { x, y });
            points.push(ECPoint::Affine { x, y: p - y });
        }
    }
    points[1..].sort_unstable();
    Ok(points)
}

/// |E|, counted without materializing points: each x contributes
/// 1 + chi(x^3 + ax + b) points where chi is the quadratic character, plus O.
pub fn ec_group_order(curve: &CurveSpec) -> Result<u64> {
    if curve.p > MAX_ENUM_P {
        return Err(Error::TooLarge(format!(
            "point counting supports p <= {MAX_ENUM_P}, got {}",
            curve.p
        )));
    }
    let mut count = 1u64;
    for x in 0..curve.p {
        let chi = jacobi(curve.rhs(x) as i64, curve.p)?;
        count = (count as i64 + 1 + chi as i64) as u64;
    }
    Ok(count)
}

/// k P by double-and-add; 0 P = O.
pub fn ec_scalar_mul(curve: &CurveSpec, k: u64, pt: &ECPoint) -> Result<ECPoint> {
    curve.require(pt)?;
    let mut acc = ECPoint::Infinity;
    let mut base = *pt;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = ec_add(curve, &acc, &base)?;
        }
        base = ec_add(curve, &base, &base)?;
        k >>= 1;
    }
    Ok(acc)
}

/// Minimal r >= 1 with r P = O, via Lagrange: r divides |E|.
pub fn ec_order(curve: &CurveSpec, pt: &ECPoint) -> Result<u64> {
    curve.require(pt)?;
    if pt.is_infinity() {
        return Ok(1);
    }
    let n = ec_group_order(curve)?;
    let mut order = n;
    for (ell, _) in factor_classical(n)?.prime_powers {
        while order % ell == 0 && ec_scalar_mul(curve, order / ell, pt)?.is_infinity() {
            order /= ell;
        }
    }
    Ok(order)
}
