//! Univariate polynomial arithmetic over prime fields, just enough for
//! distinct-degree factorization of small defining polynomials.

use crate::polyz::PolyZ;
use crate::sieve::{mul_mod, pow_mod};

/// Coefficients ascending, reduced mod `p`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMod {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl PolyMod {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> PolyMod {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyMod { p, coeffs }
    }

    pub fn from_polyz(f: &PolyZ, p: u64) -> PolyMod {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|&c| (c.rem_euclid(p as i128)) as u64)
            .collect();
        PolyMod::new(p, coeffs)
    }

    pub fn zero(p: u64) -> PolyMod {
        PolyMod { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> PolyMod {
        PolyMod::new(p, vec![1])
    }

    pub fn x(p: u64) -> PolyMod {
        PolyMod::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> PolyMod {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        PolyMod::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &PolyMod) -> PolyMod {
        if self.is_zero() || other.is_zero() {
            return PolyMod::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        PolyMod::new(self.p, out)
    }

    pub fn sub(&self, other: &PolyMod) -> PolyMod {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] = a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] = (out[i] + self.p - b) % self.p;
        }
        PolyMod::new(self.p, out)
    }

    /// Remainder modulo `modulus` (any nonzero polynomial).
    pub fn rem(&self, modulus: &PolyMod) -> PolyMod {
        let p = self.p;
        assert!(!modulus.is_zero());
        let d = modulus.degree();
        let lead_inv = inv_mod(modulus.leading(), p);
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let k = rem.len() - 1;
            let c = rem[k];
            if c != 0 {
                let t = mul_mod(c, lead_inv, p);
                for (j, &mc) in modulus.coeffs.iter().enumerate() {
                    let idx = k - d + j;
                    rem[idx] = (rem[idx] + p - mul_mod(t, mc, p)) % p;
                }
            }
            rem.pop();
        }
        PolyMod::new(p, rem)
    }

    pub fn mulmod(&self, other: &PolyMod, modulus: &PolyMod) -> PolyMod {
        self.mul(other).rem(modulus)
    }

    /// `x^e mod modulus` by binary exponentiation on polynomials.
    pub fn pow_x_mod(e: u64, modulus: &PolyMod) -> PolyMod {
        let p = modulus.p;
        let mut base = PolyMod::x(p).rem(modulus);
        let mut acc = PolyMod::one(p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus);
            }
            base = base.mulmod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(&self, other: &PolyMod) -> PolyMod {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient by a divisor (used after gcd extraction).
    pub fn div(&self, divisor: &PolyMod) -> PolyMod {
        let p = self.p;
        let d = divisor.degree();
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let c = rem[k];
            if c != 0 {
                let t = mul_mod(c, lead_inv, p);
                q[k - d] = t;
                for (j, &mc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - d + j;
                    rem[idx] = (rem[idx] + p - mul_mod(t, mc, p)) % p;
                }
            }
            rem.pop();
        }
        PolyMod::new(p, q)
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Degree multiset of the irreducible factors of squarefree `f` over `F_p`,
/// by distinct-degree factorization; sorted ascending (parts sum to `deg f`).
///
/// Equal-degree splitting is intentionally skipped: the multiset is all the
/// splitting statistics need.
pub fn factor_degree_multiset(f: &PolyMod) -> Vec<usize> {
    let p = f.p;
    let mut f = f.monic();
    let mut degrees = Vec::new();
    // Strip linear factors from x^p - x, then degree 2, and so on.
    let mut h = PolyMod::pow_x_mod(p, &f); // x^(p^1) mod f
    let mut d = 1usize;
    while f.degree() >= 1 {
        if 2 * d > f.degree() {
            // What remains is irreducible of its own degree.
            degrees.push(f.degree());
            break;
        }
        let diff = h.sub(&PolyMod::x(p).rem(&f));
        let g = f.gcd(&diff);
        if g.degree() >= 1 {
            for _ in 0..g.degree() / d {
                degrees.push(d);
            }
            f = f.div(&g);
            h = h.rem(&f);
        }
        if f.degree() < 1 {
            break;
        }
        // h := h^(p) mod f  (so h = x^(p^(d+1)))
        let mut acc = PolyMod::one(p);
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, &f);
            }
            base = base.mulmod(&base, &f);
            e >>= 1;
        }
        h = acc;
        d += 1;
    }
    degrees.sort_unstable();
    degrees
}
