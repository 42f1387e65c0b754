//! Arbitrary-precision integer utilities: extended gcd, continued fractions,
//! Pell's equation, the Chinese remainder theorem, multiplicative orders,
//! primality and perfect-power testing, integer factorization by classical
//! means, and Jacobi symbols.
//!
//! These are the classical oracles the quantum simulations are checked against,
//! so they favor clarity and exactness over speed. Everything that can outgrow
//! a machine word (Pell solutions, continued fraction convergents, CRT lifts)
//! uses arbitrary precision.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;

use crate::error::{domain_err, Result};

/// A truncated continued fraction expansion of a rational in [0, 1).
///
/// `partial_quotients` holds the positive quotients a_1, a_2, ... (the leading
/// a_0 = 0 is implicit). `convergents` holds the reduced fractions p_i/q_i
/// starting with p_0/q_0 = 0/1, so it is always one longer than
/// `partial_quotients`. The i-th convergent equals the value of the expansion
/// truncated after a_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pub partial_quotients: Vec<BigUint>,
    pub convergents: Vec<(BigUint, BigUint)>,
}

impl CFExpansion {
    /// Denominators of the convergents, smallest first.
    pub fn denominators(&self) -> impl Iterator<Item = &BigUint> {
        self.convergents.iter().map(|(_, q)| q)
    }
}

/// A factorization into prime powers, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    /// The integer this factorization represents.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(p, e) in &self.prime_powers {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }
}

/// (a * b) mod m without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// (base ^ exp) mod m without overflow. m = 1 gives 0.
pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % m;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    result
}

/// gcd of two u64 values.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Inverse of a modulo m, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(domain_err!("inv_mod: modulus must be positive"));
    }
    if m == 1 {
        return Ok(0);
    }
    let eg = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if eg.gcd != 1 {
        return Err(domain_err!("inv_mod: {a} has no inverse mod {m} (gcd {})", eg.gcd));
    }
    Ok(eg.x.rem_euclid(m as i128) as u64)
}

/// Extended gcd of nonnegative integers, not both zero.
///
/// Returns (g, u, v) with u*a + v*b = g = gcd(a, b). Among the infinitely many
/// Bezout pairs, the one with minimal |u| is returned (ties broken toward
/// positive u), which makes the output deterministic. For example
/// gcd_ext(3, 5) = (1, 2, -1) since 2*3 - 1*5 = 1.
pub fn gcd_ext(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_negative() || b.is_negative() {
        return Err(domain_err!("gcd_ext: inputs must be nonnegative"));
    }
    if a.is_zero() && b.is_zero() {
        return Err(domain_err!("gcd_ext: gcd(0, 0) is undefined"));
    }
    if b.is_zero() {
        return Ok((a.clone(), BigInt::one(), BigInt::zero()));
    }
    if a.is_zero() {
        return Ok((b.clone(), BigInt::zero(), BigInt::one()));
    }
    let eg = a.extended_gcd(b);
    let (g, mut u) = (eg.gcd, eg.x);
    // Reduce u to the least-absolute-value representative mod b/g.
    let m = b / &g;
    u = u.mod_floor(&m);
    if &u * 2 > m {
        u -= &m;
    }
    let v = (&g - &u * a) / b;
    debug_assert_eq!(&u * a + &v * b, g);
    Ok((g, u, v))
}

/// Continued fraction expansion of num/den with 0 <= num < den, truncated at
/// the first convergent whose denominator exceeds `denom_bound`.
///
/// Every fraction p/q with |p/q - num/den| < 1/(2q^2) and q <= denom_bound is
/// guaranteed to appear among the returned convergents.
pub fn continued_fraction(num: &BigUint, den: &BigUint, denom_bound: &BigUint) -> Result<CFExpansion> {
    if den.is_zero() {
        return Err(domain_err!("continued_fraction: denominator must be nonzero"));
    }
    if num >= den {
        return Err(domain_err!("continued_fraction: expects num < den"));
    }
    if denom_bound.is_zero() {
        return Err(domain_err!("continued_fraction: denominator bound must be >= 1"));
    }

    // Euclid's algorithm yields the quotients; the standard recurrence
    // p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2} yields convergents.
    let mut partial_quotients = Vec::new();
    let mut convergents = vec![(BigUint::zero(), BigUint::one())];
    let (mut p_prev, mut q_prev) = (BigUint::one(), BigUint::zero());
    let (mut p, mut q) = (BigUint::zero(), BigUint::one());
    // State of Euclid's algorithm after consuming a_0 = 0.
    let mut n = den.clone();
    let mut d = num.clone();
    while !d.is_zero() {
        let (a, rem) = n.div_rem(&d);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if &q_next > denom_bound {
            break;
        }
        partial_quotients.push(a);
        convergents.push((p_next.clone(), q_next.clone()));
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        n = d;
        d = rem;
    }
    Ok(CFExpansion { partial_quotients, convergents })
}

/// Smallest positive solution (x1, y1) of x^2 - d y^2 = 1.
///
/// Found from the continued fraction expansion of sqrt(d): the fundamental
/// solution is the first convergent satisfying the equation. Solutions grow
/// like exp(O(sqrt(d) log d)), hence the arbitrary-precision output.
pub fn pell_fundamental(d: u64) -> Result<(BigUint, BigUint)> {
    let a0 = d.isqrt();
    if a0 * a0 == d {
        return Err(domain_err!("pell_fundamental: {d} is a perfect square"));
    }
    let big_d = BigUint::from(d);
    // Continued fraction of sqrt(d): a_i from the (m, c) recurrence, all exact
    // in u64 since m <= a0 and c <= 2*a0 + 1 throughout.
    let (mut m, mut c, mut a) = (0u64, 1u64, a0);
    let (mut x_prev, mut x) = (BigUint::one(), BigUint::from(a0));
    let (mut y_prev, mut y) = (BigUint::zero(), BigUint::one());
    loop {
        if &x * &x == &big_d * &y * &y + BigUint::one() {
            return Ok((x, y));
        }
        m = c * a - m;
        c = (d - m * m) / c;
        a = (a0 + m) / c;
        let x_next = BigUint::from(a) * &x + &x_prev;
        let y_next = BigUint::from(a) * &y + &y_prev;
        x_prev = x;
        y_prev = y;
        x = x_next;
        y = y_next;
    }
}

/// Chinese remainder lift: the unique x mod prod(moduli) with
/// x = residues[i] mod moduli[i] for all i.
pub fn crt_combine(residues: &[BigInt], moduli: &[BigInt]) -> Result<BigInt> {
    if residues.len() != moduli.len() || residues.is_empty() {
        return Err(domain_err!(
            "crt_combine: need equally many residues and moduli, at least one"
        ));
    }
    for m in moduli {
        if !m.is_positive() {
            return Err(domain_err!("crt_combine: moduli must be positive"));
        }
    }
    let mut x = residues[0].mod_floor(&moduli[0]);
    let mut modulus = moduli[0].clone();
    for (r, m) in residues.iter().zip(moduli).skip(1) {
        let eg = modulus.extended_gcd(m);
        if !eg.gcd.is_one() {
            return Err(domain_err!("crt_combine: moduli are not pairwise coprime"));
        }
        // x + modulus * t = r (mod m)  =>  t = (r - x) * modulus^{-1} (mod m)
        let t = ((r - &x) * eg.x).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok(x)
}

/// Smallest r >= 1 with a^r = 1 mod n. Requires gcd(a, n) = 1.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain_err!("multiplicative_order: modulus must be positive"));
    }
    if n == 1 {
        return Ok(1);
    }
    let a = a % n;
    if gcd_u64(a, n) != 1 {
        return Err(domain_err!("multiplicative_order: gcd({a}, {n}) != 1"));
    }
    // The order divides phi(n); strip prime factors from phi(n) while the
    // power still fixes 1.
    let phi = euler_phi(n)?;
    let mut order = phi;
    for (p, _) in factor_classical(phi)?.prime_powers {
        while order % p == 0 && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Euler's totient, by factoring n.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain_err!("euler_phi: argument must be positive"));
    }
    let mut phi = 1u64;
    for (p, e) in factor_classical(n)?.prime_powers {
        phi *= (p - 1) * p.pow(e - 1);
    }
    Ok(phi)
}

/// Miller-Rabin with the first twelve prime bases, deterministic for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test with error probability below 2^-64.
///
/// Deterministic (first thirteen prime bases) for n < 3.3 * 10^24, which covers
/// every input the rest of this crate produces; larger n get 64 rounds of
/// Miller-Rabin at pseudorandom bases drawn from a fixed stream, so the
/// function stays deterministic as a function of n.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const SMALL: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &p in &SMALL {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !SMALL.iter().all(|&b| miller_rabin_big(n, &BigUint::from(b))) {
        return false;
    }
    // First thirteen prime bases are known deterministic below 3.317 * 10^24.
    let det_limit: BigUint = BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    if *n < det_limit {
        return true;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6e75_6d74_6865_6f72);
    let bytes_needed = (n.bits() as usize).div_ceil(8) + 8;
    let three = BigUint::from(3u32);
    let span = n - &three;
    for _ in 0..64 {
        let mut buf = vec![0u8; bytes_needed];
        rng.fill_bytes(&mut buf);
        let base = BigUint::from_bytes_le(&buf) % &span + BigUint::from(2u32);
        if !miller_rabin_big(n, &base) {
            return false;
        }
    }
    true
}

fn miller_rabin_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// If n = b^k for integers b >= 2, k >= 2, returns (b, k) with k maximal
/// (so b itself is not a perfect power). Otherwise None.
pub fn is_perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n < BigUint::from(4u32) {
        return None;
    }
    let max_k = n.bits() as u32; // n >= 2^k requires k <= log2(n)
    for k in (2..=max_k).rev() {
        let root = n.nth_root(k);
        if root.pow(k) == *n {
            return Some((root, k));
        }
    }
    None
}

/// Jacobi symbol (a / n) for odd n >= 1, extended multiplicatively from the
/// Legendre symbol. Value in {-1, 0, +1}; 0 exactly when gcd(a, n) > 1.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(domain_err!("jacobi: modulus must be odd and positive"));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        Ok(result)
    } else {
        Ok(0)
    }
}

/// Factor n >= 1 by trial division and Brent's variant of Pollard's rho.
/// Deterministic, suitable up to roughly 2^63.
pub fn factor_classical(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(domain_err!("factor_classical: cannot factor zero"));
    }
    let mut counts = std::collections::BTreeMap::new();
    let mut stack = vec![n];
    while let Some(mut m) = stack.pop() {
        if m == 1 {
            continue;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            while m % p == 0 {
                *counts.entry(p).or_insert(0u32) += 1;
                m /= p;
            }
        }
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *counts.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = brent_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    Ok(Factorization { prime_powers: counts.into_iter().collect() })
}

/// A nontrivial factor of composite m (m odd, not divisible by small primes).
fn brent_rho(m: u64) -> u64 {
    // Cycle detection on x -> x^2 + c; c advances on failure so the search is
    // deterministic and always terminates for composite m.
    for c in 1..64 {
        let f = |x: u64| (mul_mod(x, x, m) + c) % m;
        let (mut x, mut ys) = (2u64, 2u64);
        let (mut y, mut d) = (2u64, 1u64);
        let mut r = 1u64;
        let mut q = 1u64;
        'outer: while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && d == 1 {
                ys = y;
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), m);
                }
                d = gcd_u64(q, m);
                k += steps;
                if d == m {
                    break 'outer;
                }
            }
            r *= 2;
        }
        if d == m {
            // Backtrack one step at a time to recover the factor.
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd_u64(x.abs_diff(ys), m);
            }
        }
        if d != m && d != 1 {
            return d;
        }
    }
    unreachable!("rho failed on composite {m}");
}
