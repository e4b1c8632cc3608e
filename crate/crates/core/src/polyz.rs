//! Exact integer polynomial arithmetic: discriminants by fraction-free
//! elimination, irreducibility over the rationals for monic polynomials of
//! degree at most 5, and cyclotomic polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyZ {
    coeffs: Vec<i128>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<i128>) -> PolyZ {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn zero() -> PolyZ {
        PolyZ { coeffs: vec![] }
    }

    pub fn x() -> PolyZ {
        PolyZ::new(vec![0, 1])
    }

    pub fn constant(c: i128) -> PolyZ {
        PolyZ::new(vec![c])
    }

    /// Monic polynomial from low coefficients `a0..a_{n-1}` (degree `n`).
    pub fn monic(low: &[i128]) -> PolyZ {
        let mut c = low.to_vec();
        c.push(1);
        PolyZ::new(c)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> i128 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn derivative(&self) -> PolyZ {
        if self.coeffs.len() <= 1 {
            return PolyZ::zero();
        }
        PolyZ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|&c| -c).collect())
    }

    /// Reversal `x^deg * f(1/x)`; pairs with height symmetry of roots.
    pub fn reverse(&self) -> PolyZ {
        let mut c = self.coeffs.clone();
        c.reverse();
        PolyZ::new(c)
    }

    /// Sign-flip of the variable: `f(-x)`.
    pub fn flip_sign(&self) -> PolyZ {
        PolyZ::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    pub fn mul(&self, other: &PolyZ) -> PolyZ {
        if self.is_zero() || other.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyZ::new(out)
    }

    pub fn add(&self, other: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i128; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        PolyZ::new(out)
    }

    pub fn sub(&self, other: &PolyZ) -> PolyZ {
        self.add(&other.neg())
    }

    /// Exact division; `None` when `other` does not divide `self` over `Z`.
    pub fn div_exact(&self, other: &PolyZ) -> Option<PolyZ> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PolyZ::zero());
        }
        if self.degree() < other.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let d = other.degree();
        let lead = other.leading();
        let mut quot = vec![0i128; self.degree() - d + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d];
            if c % lead != 0 {
                return None;
            }
            let q = c / lead;
            quot[k] = q;
            for (j, &b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= q * b;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(PolyZ::new(quot))
    }

    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0, |acc, &c| gcd_i128(acc, c.abs()))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut c = self.content();
        if self.leading() < 0 {
            c = -c;
        }
        PolyZ::new(self.coeffs.iter().map(|&a| a / c).collect())
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Discriminant, exact. Fraction-free elimination over `i128` with a
    /// `BigInt` fallback when intermediates overflow.
    pub fn discriminant(&self) -> Option<i128> {
        let n = self.degree();
        if n < 1 {
            return None;
        }
        let sign_flip = (n * (n - 1) / 2) % 2 == 1;
        if let Some(res) = resultant_i128(self.coeffs(), self.derivative().coeffs()) {
            let scaled = res / self.leading();
            return Some(if sign_flip { -scaled } else { scaled });
        }
        let res = resultant_big(&self.to_big(), &self.derivative().to_big());
        let lead = BigInt::from(self.leading());
        let scaled = &res / &lead;
        let disc = if sign_flip { -scaled } else { scaled };
        big_to_i128(&disc)
    }

    /// True for a monic polynomial of degree 1..=5 irreducible over `Q`.
    ///
    /// Degree <= 3 reduces to an integer-root search; degrees 4 and 5 also
    /// exclude monic quadratic factors by exact division.
    pub fn is_irreducible_monic(&self) -> bool {
        let n = self.degree();
        assert!(self.is_monic() && (1..=5).contains(&n), "monic, degree 1..=5");
        if n == 1 {
            return true;
        }
        if self.coeffs[0] == 0 {
            return false;
        }
        for d in divisors_signed(self.coeffs[0]) {
            if self.eval(d) == 0 {
                return false;
            }
        }
        if n <= 3 {
            return true;
        }
        // No linear factor, so reducibility needs a monic quadratic factor
        // (2+2 at degree 4, 2+3 at degree 5).
        !self.has_monic_quadratic_factor()
    }

    fn has_monic_quadratic_factor(&self) -> bool {
        let a0 = self.coeffs[0];
        // Mignotte-style bound on a degree-2 factor's middle coefficient.
        let norm = (self
            .coeffs
            .iter()
            .map(|&c| (c as f64) * (c as f64))
            .sum::<f64>())
        .sqrt();
        let b_bound = (2.0 * norm).ceil() as i128 + 1;
        for c in divisors_signed(a0) {
            for b in -b_bound..=b_bound {
                let q = PolyZ::new(vec![c, b, 1]);
                if self.div_exact(&q).is_some() {
                    return true;
                }
            }
        }
        false
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd_i128(b, a % b) }
}

/// All divisors of `|a0|`, both signs. `a0` must be nonzero.
fn divisors_signed(a0: i128) -> Vec<i128> {
    let n = a0.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as i128);
            out.push(-(d as i128));
            let e = (n / d) as i128;
            if e as u128 != d {
                out.push(e);
                out.push(-e);
            }
        }
        d += 1;
    }
    out
}

fn big_to_i128(b: &BigInt) -> Option<i128> {
    use num_traits::ToPrimitive;
    b.to_i128()
}

/// Resultant of two integer polynomials by Bareiss elimination on the
/// Sylvester matrix, exact over `BigInt`.
pub fn resultant_big(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let trim = |v: &[BigInt]| {
        let mut v = v.to_vec();
        while v.last().map(|c| c.is_zero()) == Some(true) {
            v.pop();
        }
        v
    };
    let f = trim(f);
    let g = trim(g);
    if f.is_empty() || g.is_empty() {
        return BigInt::zero();
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        return f[0].pow(n as u32);
    }
    if n == 0 {
        return g[0].pow(m as u32);
    }
    let size = m + n;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + row][row + j] = c.clone();
        }
    }
    bareiss_det(a)
}

/// Resultant over `i128` with overflow checking; `None` signals fallback.
pub fn resultant_i128(f: &[i128], g: &[i128]) -> Option<i128> {
    let trim = |v: &[i128]| {
        let mut v = v.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let f = trim(f);
    let g = trim(g);
    if f.is_empty() || g.is_empty() {
        return Some(0);
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        return f[0].checked_pow(n as u32);
    }
    if n == 0 {
        return g[0].checked_pow(m as u32);
    }
    let size = m + n;
    let mut a = vec![vec![0i128; size]; size];
    for row in 0..n {
        for (j, &c) in f.iter().rev().enumerate() {
            a[row][row + j] = c;
        }
    }
    for row in 0..m {
        for (j, &c) in g.iter().rev().enumerate() {
            a[n + row][row + j] = c;
        }
    }
    bareiss_det_i128(a)
}

fn bareiss_det_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = a[i][j].checked_mul(a[k][k])?;
                let t2 = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = t1.checked_sub(t2)? / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 { -det } else { det }
}

/// Cyclotomic polynomial of index `f`, exact, via the Moebius product:
/// multiply together the `x^d - 1` with `mu(f/d) = 1`, then divide out those
/// with `mu(f/d) = -1` (exact divisions).
pub fn cyclotomic(f: usize) -> Vec<BigInt> {
    assert!(f >= 1);
    let mobius = |mut n: usize| -> i32 {
        let mut mu = 1i32;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    };
    let x_pow_minus_one = |d: usize| {
        let mut v = vec![BigInt::zero(); d + 1];
        v[0] = BigInt::from(-1);
        v[d] = BigInt::one();
        v
    };
    let mut numerator = vec![BigInt::one()];
    let mut denominators = Vec::new();
    for d in 1..=f {
        if f % d == 0 {
            match mobius(f / d) {
                1 => numerator = big_mul(&numerator, &x_pow_minus_one(d)),
                -1 => denominators.push(x_pow_minus_one(d)),
                _ => {}
            }
        }
    }
    for d in denominators {
        numerator = big_div_exact(&numerator, &d).expect("cyclotomic division is exact");
    }
    numerator
}

pub fn big_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                let v = &out[i + j] + x * y;
                out[i + j] = v;
            }
        }
    }
    out
}

/// Exact division of BigInt polynomials (coefficients ascending).
pub fn big_div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let gd = g.len() - 1;
    if f.len() < g.len() {
        return if f.iter().all(|c| c.is_zero()) {
            Some(vec![BigInt::zero()])
        } else {
            None
        };
    }
    let mut rem = f.to_vec();
    let lead = g[gd].clone();
    let qd = f.len() - g.len();
    let mut q = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + gd].clone();
        if (&c % &lead) != BigInt::zero() {
            return None;
        }
        let term = &c / &lead;
        for (j, gc) in g.iter().enumerate() {
            let v = &rem[k + j] - &term * gc;
            rem[k + j] = v;
        }
        q[k] = term;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

/// Remainder of `f` modulo `g` where `g` is monic, exact over `BigInt`.
pub fn big_rem_monic(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let gd = g.len() - 1;
    assert!(g[gd].is_one(), "modulus must be monic");
    let mut rem = f.to_vec();
    while rem.len() > gd {
        let k = rem.len() - 1;
        let c = rem[k].clone();
        if !c.is_zero() {
            for (j, gc) in g.iter().enumerate().take(gd) {
                let idx = k - gd + j;
                let v = &rem[idx] - &c * gc;
                rem[idx] = v;
            }
        }
        rem.pop();
    }
    rem
}

/// Signed divisor check helper: largest square dividing `|n|` is 1.
pub fn squarefree_i128(n: i128) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n.unsigned_abs();
    let mut p = 2u128;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}
