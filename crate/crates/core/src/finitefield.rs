//! Arithmetic in the finite field GF(p^r): element operations, the trace map,
//! the Frobenius automorphism, multiplicative and additive characters, and
//! classical Gauss sums.
//!
//! A field is described by a [`FieldSpec`], which fixes a concrete model
//! F_p[x]/(T) once and for all: T is the first monic irreducible of degree r
//! in a deterministic enumeration, and the stored generator is the first
//! element of full multiplicative order. Fixing both makes every downstream
//! output (character values, Gauss sums, CLI reports) reproducible.

use num_complex::Complex64;

use crate::error::{domain_err, Result};
use crate::numtheory::{factor_classical, is_prime_u64};

/// An element of GF(p^r), as the coefficient vector of a polynomial in the
/// field's generator-of-the-model alpha: coeffs[i] multiplies alpha^i.
/// Always length r with entries reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A concrete model of GF(p^r).
///
/// `modulus` is the monic irreducible T with T(alpha) = 0, stored as
/// coefficients of 1, x, ..., x^r (so it has length r + 1 and ends in 1).
/// Among all monic irreducibles of degree r it is the one whose non-leading
/// coefficients, read as the base-p digits of an integer (constant term least
/// significant), are smallest. `generator` is the element of multiplicative
/// order p^r - 1 with the smallest such integer encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u64>,
    pub generator: FieldElem,
    /// Discrete logs base `generator`, indexed by element encoding; entry 0 unused.
    dlog: Vec<u32>,
}

/// Dense tables stay comfortable below this field size.
const MAX_Q: u64 = 1 << 20;

impl FieldSpec {
    /// Build the canonical model of GF(p^r).
    pub fn new(p: u64, r: u32) -> Result<FieldSpec> {
        if !is_prime_u64(p) {
            return Err(domain_err!("field characteristic {p} is not prime"));
        }
        if r == 0 {
            return Err(domain_err!("extension degree must be at least 1"));
        }
        let q = (0..r).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= MAX_Q)
        });
        let Some(q) = q else {
            return Err(domain_err!("field size p^r exceeds the dense-table cap {MAX_Q}"));
        };

        let modulus = smallest_irreducible(p, r);
        let mut spec = FieldSpec {
            p,
            r,
            modulus,
            generator: FieldElem { coeffs: vec![0; r as usize] },
            dlog: Vec::new(),
        };
        spec.generator = spec.find_generator(q)?;

        // Tabulate discrete logs of every nonzero element.
        let mut dlog = vec![0u32; q as usize];
        let mut x = spec.one();
        for j in 0..(q - 1) as u32 {
            dlog[spec.elem_index(&x) as usize] = j;
            x = ff_mul(&spec, &x, &spec.generator)?;
        }
        spec.dlog = dlog;
        Ok(spec)
    }

    /// Field size q = p^r.
    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.r as usize] }
    }

    pub fn one(&self) -> FieldElem {
        self.elem_from_index(1)
    }

    /// The model's root alpha (equals the integer p's encoding). For r = 1
    /// alpha is 0, since the degree-1 modulus is x itself.
    pub fn alpha(&self) -> FieldElem {
        if self.r == 1 {
            self.zero()
        } else {
            self.elem_from_index(self.p)
        }
    }

    /// Element whose coefficients are the base-p digits of v (v < q).
    pub fn elem_from_index(&self, v: u64) -> FieldElem {
        debug_assert!(v < self.q());
        let mut coeffs = vec![0; self.r as usize];
        let mut v = v;
        for c in coeffs.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        FieldElem { coeffs }
    }

    /// Inverse of `elem_from_index`.
    pub fn elem_index(&self, x: &FieldElem) -> u64 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Embed an integer as the constant polynomial (value mod p).
    pub fn elem_from_int(&self, v: u64) -> FieldElem {
        let mut coeffs = vec![0; self.r as usize];
        coeffs[0] = v % self.p;
        FieldElem { coeffs }
    }

    /// All q elements, in encoding order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q()).map(|v| self.elem_from_index(v))
    }

    /// Discrete log of nonzero x base the spec generator.
    pub fn discrete_log(&self, x: &FieldElem) -> Result<u64> {
        self.check(x)?;
        if x.is_zero() {
            return Err(domain_err!("discrete log of zero"));
        }
        Ok(self.dlog[self.elem_index(x) as usize] as u64)
    }

    fn check(&self, x: &FieldElem) -> Result<()> {
        if x.coeffs.len() != self.r as usize || x.coeffs.iter().any(|&c| c >= self.p) {
            return Err(domain_err!(
                "element {:?} does not belong to GF({}^{})",
                x.coeffs,
                self.p,
                self.r
            ));
        }
        Ok(())
    }

    fn find_generator(&self, q: u64) -> Result<FieldElem> {
        let group_order = q - 1;
        if group_order == 1 {
            return Ok(self.one());
        }
        let prime_divisors: Vec<u64> = factor_classical(group_order)?
            .prime_powers
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        for v in 2..q {
            let e = self.elem_from_index(v);
            let full_order = prime_divisors
                .iter()
                .all(|&ell| !ff_pow(self, &e, group_order / ell).unwrap().coeffs.eq(&self.one().coeffs));
            if full_order {
                return Ok(e);
            }
        }
        unreachable!("every finite field has a multiplicative generator");
    }
}

/// First monic irreducible of degree r over F_p in the deterministic
/// enumeration (non-leading coefficients as ascending base-p integers).
fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    let span = p.pow(r);
    for v in 0..span {
        let mut t = vec![0u64; r as usize + 1];
        let mut v_ = v;
        for c in t.iter_mut().take(r as usize) {
            *c = v_ % p;
            v_ /= p;
        }
        t[r as usize] = 1;
        if poly_is_irreducible(&t, p) {
            return t;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p");
}

/// x + y in the spec's field.
pub fn ff_add(spec: &FieldSpec, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
    spec.check(x)?;
    spec.check(y)?;
    let coeffs = x
        .coeffs
        .iter()
        .zip(&y.coeffs)
        .map(|(a, b)| (a + b) % spec.p)
        .collect();
    Ok(FieldElem { coeffs })
}

/// x - y in the spec's field.
pub fn ff_sub(spec: &FieldSpec, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
    spec.check(x)?;
    spec.check(y)?;
    let coeffs = x
        .coeffs
        .iter()
        .zip(&y.coeffs)
        .map(|(a, b)| (a + spec.p - b) % spec.p)
        .collect();
    Ok(FieldElem { coeffs })
}

/// -x in the spec's field.
pub fn ff_neg(spec: &FieldSpec, x: &FieldElem) -> Result<FieldElem> {
    ff_sub(spec, &spec.zero(), x)
}

/// x * y, reduced modulo the spec's irreducible polynomial.
pub fn ff_mul(spec: &FieldSpec, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
    spec.check(x)?;
    spec.check(y)?;
    let r = spec.r as usize;
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &a) in x.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.coeffs.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % spec.p;
        }
    }
    Ok(FieldElem { coeffs: poly_reduce(prod, &spec.modulus, spec.p) })
}

/// x^e by binary exponentiation; x^0 = 1 including for x = 0.
pub fn ff_pow(spec: &FieldSpec, x: &FieldElem, e: u64) -> Result<FieldElem> {
    spec.check(x)?;
    let mut result = spec.one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = ff_mul(spec, &result, &base)?;
        }
        base = ff_mul(spec, &base, &base)?;
        e >>= 1;
    }
    Ok(result)
}

/// Multiplicative inverse; zero has none.
pub fn ff_inv(spec: &FieldSpec, x: &FieldElem) -> Result<FieldElem> {
    spec.check(x)?;
    if x.is_zero() {
        return Err(domain_err!("zero has no multiplicative inverse"));
    }
    // x^(q-2) = x^{-1}; at these sizes exponentiation beats polynomial Euclid
    // for simplicity and is plenty fast.
    ff_pow(spec, x, spec.q() - 2)
}

/// Field trace Tr(x) = x + x^p + ... + x^{p^{r-1}}, always an element of F_p.
pub fn trace(spec: &FieldSpec, x: &FieldElem) -> Result<u64> {
    spec.check(x)?;
    let mut acc = x.clone();
    let mut term = x.clone();
    for _ in 1..spec.r {
        term = ff_pow(spec, &term, spec.p)?;
        acc = ff_add(spec, &acc, &term)?;
    }
    debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace must lie in the base field");
    Ok(acc.coeffs[0])
}

/// Frobenius automorphism iterated j times: x -> x^{p^j}.
pub fn frobenius(spec: &FieldSpec, x: &FieldElem, j: u32) -> Result<FieldElem> {
    spec.check(x)?;
    let mut y = x.clone();
    for _ in 0..(j % spec.r) {
        y = ff_pow(spec, &y, spec.p)?;
    }
    Ok(y)
}

/// Multiplicative character chi_a(g^j) = exp(2 pi i a j / (q-1)), with
/// chi_a(0) = 0 for a != 0 and chi_0 identically 1.
pub fn mult_char(spec: &FieldSpec, a: u64, x: &FieldElem) -> Result<Complex64> {
    spec.check(x)?;
    let q = spec.q();
    let a = a % (q - 1);
    if x.is_zero() {
        return Ok(if a == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    }
    let j = spec.discrete_log(x)?;
    let angle = 2.0 * std::f64::consts::PI * (a as f64) * (j as f64) / ((q - 1) as f64);
    Ok(Complex64::from_polar(1.0, angle))
}

/// Additive character psi_b(x) = exp(2 pi i Tr(b x) / p).
pub fn add_char(spec: &FieldSpec, b: &FieldElem, x: &FieldElem) -> Result<Complex64> {
    let t = trace(spec, &ff_mul(spec, b, x)?)?;
    let angle = 2.0 * std::f64::consts::PI * (t as f64) / (spec.p as f64);
    Ok(Complex64::from_polar(1.0, angle))
}

/// Gauss sum G(chi_a, psi_b) = sum over x != 0 of chi_a(x) psi_b(x), for
/// nontrivial characters (a != 0 mod q-1, b != 0). Its magnitude is sqrt(q).
pub fn gauss_sum_classical(spec: &FieldSpec, a: u64, b: &FieldElem) -> Result<Complex64> {
    if a % (spec.q() - 1) == 0 {
        return Err(domain_err!("gauss sum requires a nontrivial multiplicative character"));
    }
    spec.check(b)?;
    if b.is_zero() {
        return Err(domain_err!("gauss sum requires a nontrivial additive character"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for v in 1..spec.q() {
        let x = spec.elem_from_index(v);
        acc += mult_char(spec, a, &x)? * add_char(spec, b, &x)?;
    }
    Ok(acc)
}

// Polynomial helpers over F_p. Polynomials are coefficient vectors, index =
// power of x, not necessarily trimmed.

/// Reduce `poly` modulo the monic `modulus` of degree r; returns length r.
fn poly_reduce(mut poly: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    for i in (r..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        poly[i] = 0;
        // x^i = -sum_j m_j x^{i-r+j} since the modulus is monic
        for (j, &m) in modulus.iter().take(r).enumerate() {
            let idx = i - r + j;
            poly[idx] = (poly[idx] + c * ((p - m) % p)) % p;
        }
    }
    poly.truncate(r.max(1));
    poly.resize(r.max(1), 0);
    poly
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_deg(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of a modulo b (b nonzero), coefficients mod p.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = poly_trim(b.to_vec());
    let db = poly_deg(&b);
    let lead_inv = crate::numtheory::inv_mod(b[db], p).expect("leading coeff invertible");
    let mut rem = poly_trim(a.to_vec());
    loop {
        let dr = poly_deg(&rem);
        if dr < db || (dr == 0 && rem[0] == 0) {
            break;
        }
        let scale = rem[dr] * lead_inv % p;
        for j in 0..=db {
            let idx = dr - db + j;
            rem[idx] = (rem[idx] + scale * ((p - b[j]) % p)) % p;
        }
        rem = poly_trim(rem);
    }
    rem
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^k) mod modulus, by k rounds of p-th powering.
fn poly_frob_power(modulus: &[u64], p: u64, k: u32) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut x = vec![0u64; r.max(2)];
    x[1] = 1;
    let mut x = poly_reduce(x, modulus, p);
    for _ in 0..k {
        // x -> x^p by binary exponentiation on polynomials mod modulus
        let mut acc = vec![1u64];
        acc.resize(r.max(1), 0);
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_reduce(poly_mul(&acc, &base, p), modulus, p);
            }
            base = poly_reduce(poly_mul(&base, &base, p), modulus, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

/// Irreducibility over F_p: T of degree r is irreducible iff x^{p^r} = x
/// mod T and gcd(x^{p^{r/ell}} - x, T) = 1 for every prime ell dividing r.
fn poly_is_irreducible(t: &[u64], p: u64) -> bool {
    let r = (t.len() - 1) as u32;
    if r == 1 {
        return true;
    }
    let x_pr = poly_frob_power(t, p, r);
    // x^{p^r} - x must reduce to 0
    let mut diff = x_pr.clone();
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    if poly_deg(&diff) != 0 || diff[0] != 0 {
        return false;
    }
    let prime_divs: Vec<u32> = {
        let mut out = Vec::new();
        let mut m = r;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                out.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            out.push(m);
        }
        out
    };
    for ell in prime_divs {
        let mut diff = poly_frob_power(t, p, r / ell);
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(t, &diff, p);
        if poly_deg(&g) != 0 {
            return false;
        }
    }
    true
}
