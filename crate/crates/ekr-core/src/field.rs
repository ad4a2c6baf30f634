//! Small finite fields GF(p^e) with exhaustively verified moduli.
//!
//! Elements are coded `0..q` as base-p digit strings of polynomials over
//! GF(p), constant term in the least significant digit. The modulus is the
//! monic irreducible of degree `e` with the least code, so field
//! construction is deterministic.

use thiserror::Error;

pub const MAX_FIELD_SIZE: u64 = 1024;
pub const MAX_EXTENSION_DEGREE: u32 = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree {0} out of range 1..={MAX_EXTENSION_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("field size {0} exceeds {MAX_FIELD_SIZE}")]
    TooLarge(u64),
}

/// GF(p^e) with log/antilog tables over a verified primitive element.
#[derive(Debug)]
pub struct FiniteField {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Monic modulus, coefficient of x^i at position i, length e+1.
    pub modulus: Vec<u32>,
    /// A multiplicative generator, exhibiting cyclicity of order q-1.
    pub generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Constructs GF(p^e) with the lexicographically least monic irreducible modulus.
pub fn gf(p: u32, e: u32) -> Result<FiniteField, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if e < 1 || e > MAX_EXTENSION_DEGREE {
        return Err(FieldError::DegreeOutOfRange(e));
    }
    let q = (p as u64).pow(e);
    if q > MAX_FIELD_SIZE {
        return Err(FieldError::TooLarge(q));
    }
    let q = q as u32;

    let modulus = least_irreducible(p, e);
    let mut field = FiniteField {
        p,
        e,
        q,
        modulus,
        generator: 0,
        exp: Vec::new(),
        log: Vec::new(),
    };
    field.generator = field
        .find_generator()
        .expect("multiplicative group of a finite field is cyclic");
    field.build_tables();
    Ok(field)
}

/// Least monic irreducible of degree e over GF(p), by code of the low
/// coefficients. Verified by trial division against every monic polynomial
/// of degree up to e/2.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let tail_count = (p as u64).pow(e);
    for tail in 0..tail_count {
        let mut coeffs = digits(tail, p, e as usize);
        coeffs.push(1); // monic
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)");
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

fn poly_degree(poly: &[u32]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `b` over GF(p); `b` must be nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = poly_degree(b).expect("nonzero divisor");
    let lead_inv = mod_inverse(b[db], p);
    let mut r = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        for i in 0..=db {
            let idx = dr - db + i;
            let sub = factor * b[i] % p;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r[dr] = 0;
    }
    r
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // p is a small prime; Fermat suffices.
    mod_pow(a, p - 2, p)
}

fn mod_pow(base: u32, mut exp: u32, m: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % m as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u64;
        }
        b = b * b % m as u64;
        exp >>= 1;
    }
    acc as u32
}

fn poly_is_irreducible(poly: &[u32], p: u32) -> bool {
    let d = match poly_degree(poly) {
        Some(d) => d,
        None => return false,
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for deg in 1..=(d / 2) {
        let tail_count = (p as u64).pow(deg as u32);
        for tail in 0..tail_count {
            let mut divisor = digits(tail, p, deg);
            divisor.push(1);
            let rem = poly_rem(poly, &divisor, p);
            if poly_degree(&rem).is_none() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    fn code_to_poly(&self, code: u32) -> Vec<u32> {
        digits(code as u64, self.p, self.e as usize)
    }

    fn poly_to_code(&self, poly: &[u32]) -> u32 {
        let mut code = 0u64;
        for &c in poly.iter().rev() {
            code = code * self.p as u64 + c as u64;
        }
        code as u32
    }

    /// Product by raw polynomial arithmetic; used to bootstrap the tables.
    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let pa = self.code_to_poly(a);
        let pb = self.code_to_poly(b);
        let mut prod = vec![0u32; pa.len() + pb.len()];
        for (i, &ca) in pa.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        self.poly_to_code(&rem[..self.e as usize])
    }

    fn multiplicative_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul_poly(x, a);
            ord += 1;
        }
        ord
    }

    fn find_generator(&self) -> Option<u32> {
        (1..self.q).find(|&c| self.multiplicative_order(c) == self.q - 1)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        self.exp = vec![1; n];
        self.log = vec![0; self.q as usize];
        let mut x = 1u32;
        for i in 0..n {
            self.exp[i] = x;
            self.log[x as usize] = i as u32;
            x = self.mul_poly(x, self.generator);
        }
        debug_assert_eq!(x, 1, "generator order must be q-1");
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        // Digitwise addition mod p.
        let (mut code, mut pa, mut pb) = (0u32, a, b);
        let mut scale = 1u32;
        for _ in 0..self.e {
            let s = (pa % self.p + pb % self.p) % self.p;
            code += s * scale;
            scale *= self.p;
            pa /= self.p;
            pb /= self.p;
        }
        code
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let mut code = 0u32;
        let mut pa = a;
        let mut scale = 1u32;
        for _ in 0..self.e {
            let d = pa % self.p;
            code += ((self.p - d) % self.p) * scale;
            scale *= self.p;
            pa /= self.p;
        }
        code
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = (self.q - 1) as usize;
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = (self.q - 1) as usize;
        self.exp[(n - self.log[a as usize] as usize) % n]
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * k as u64) % n) as usize]
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_prime_field() {
        let f = gf(2, 1).unwrap();
        assert_eq!(f.q, 2);
        // Least monic degree-1 modulus is x itself.
        assert_eq!(f.modulus, vec![0, 1]);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf4_modulus_is_the_unique_irreducible() {
        let f = gf(2, 2).unwrap();
        assert_eq!(f.modulus, vec![1, 1, 1]); // x^2 + x + 1
        // alpha = x has order 3.
        assert_eq!(f.generator, 2);
        assert_eq!(f.mul(2, 2), 3); // x^2 = x + 1
        assert_eq!(f.mul(2, 3), 1); // x^3 = 1
    }

    #[test]
    fn gf9_generator_has_order_eight() {
        let f = gf(3, 2).unwrap();
        assert_eq!(f.q, 9);
        let g = f.generator;
        assert_eq!(f.pow(g, 8), 1);
        assert_ne!(f.pow(g, 4), 1);
        assert_ne!(f.pow(g, 2), 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(gf(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(gf(2, 0).unwrap_err(), FieldError::DegreeOutOfRange(0));
        assert_eq!(gf(2, 11).unwrap_err(), FieldError::DegreeOutOfRange(11));
        assert_eq!(gf(11, 3).unwrap_err(), FieldError::TooLarge(1331));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 3), (3, 2), (5, 1), (7, 1), (2, 4)] {
            let f = gf(p, e).unwrap();
            for a in 0..f.q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..f.q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..f.q {
                        // Distributivity.
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = gf(2, 3).unwrap();
        for a in 0..f.q {
            for b in 0..f.q {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}
