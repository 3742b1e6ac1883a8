use crate::error::{Error, Result};

/// Largest admissible modulus `p^N`; products are formed in `u128`.
const MAX_MODULUS: u128 = 1 << 62;

/// The fixed odd prime together with the p-adic and q-adic truncation.
///
/// Scalars are computed modulo `p^n`; q-expansions keep the coefficients
/// of `q^0 ..= q^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    pub p: u64,
    pub n: u32,
    pub m: usize,
}

impl PadicContext {
    pub fn new(p: u64, n: u32, m: usize) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("p = {p} must be an odd prime")));
        }
        if n == 0 {
            return Err(Error::InvalidContext("p-adic precision N must be at least 1".into()));
        }
        if m == 0 {
            return Err(Error::InvalidContext("q-adic precision M must be at least 1".into()));
        }
        let mut modulus: u128 = 1;
        for _ in 0..n {
            modulus *= p as u128;
            if modulus > MAX_MODULUS {
                return Err(Error::InvalidContext(format!("p^N = {p}^{n} exceeds 2^62")));
            }
        }
        Ok(PadicContext { p, n, m })
    }

    /// `p^e` as a machine integer; `e` must not exceed `n`.
    pub fn pow_p(&self, e: u32) -> u64 {
        pow_u64(self.p, e)
    }

    pub fn modulus(&self) -> u64 {
        self.pow_p(self.n)
    }

    /// Same prime and p-adic precision, different q-adic truncation.
    pub fn with_q_prec(&self, m: usize) -> Self {
        PadicContext { m, ..*self }
    }
}

pub(crate) fn pow_u64(base: u64, e: u32) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc *= base;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest integer `a >= 2` generating `(Z/p^2)^x`; the CLI's default unit.
pub fn default_generator(p: u64) -> u64 {
    let p2 = p * p;
    let order = p * (p - 1);
    let prime_factors: Vec<u64> = (2..=order).filter(|&q| order % q == 0 && is_prime(q)).collect();
    (2..p2)
        .find(|&a| {
            a % p != 0
                && prime_factors
                    .iter()
                    .all(|&q| mod_pow(a, order / q, p2) != 1)
        })
        .expect("(Z/p^2)^x is cyclic for odd p")
}

pub(crate) fn mod_pow(base: u64, mut e: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc: u128 = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}
