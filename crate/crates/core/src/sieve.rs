//! Prime generation by segmented sieve, a deterministic primality test for
//! 64-bit integers, and the logarithmic integral by adaptive quadrature.

/// Simple sieve of Eratosthenes; returns all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is_prime[i] {
            let mut j = i * i;
            while j <= n {
                is_prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| is_prime[i]).map(|i| i as u64).collect()
}

/// Calls `f` on every prime in `[2, n]`, sieving in cache-sized segments.
pub fn for_each_prime(n: u64, mut f: impl FnMut(u64)) {
    if n < 2 {
        return;
    }
    let root = (n as f64).sqrt() as u64 + 1;
    let base = primes_up_to(root);
    for &p in &base {
        if p <= n {
            f(p);
        }
    }
    const SEGMENT: u64 = 1 << 18;
    let mut low = root + 1;
    while low <= n {
        let high = (low + SEGMENT - 1).min(n);
        let len = (high - low + 1) as usize;
        let mut composite = vec![false; len];
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= high {
                composite[(j - low) as usize] = true;
                j += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                f(low + i as u64);
            }
        }
        low = high + 1;
    }
}

/// Prime-counting function by direct sieve (independent of any factorization
/// machinery).
pub fn prime_count(n: u64) -> u64 {
    let mut count = 0;
    for_each_prime(n, |_| count += 1);
    count
}

/// Deterministic Miller-Rabin for `u64` (the standard 7-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Squarefree test by trial division (exact for `|n| < 2^63`).
pub fn is_squarefree(n: i64) -> bool {
    let mut n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> u32 {
    let mut n = n;
    let mut count = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// `Li(x) = integral from 2 to x of dt/ln t`, by adaptive Simpson with
/// relative tolerance well under `1e-10`; `Li(x) = 0` for `x <= 2`.
pub fn li(x: f64) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    let f = |t: f64| 1.0 / t.ln();
    adaptive_simpson(&f, 2.0, x, 1e-12 * (x / x.ln()).max(1.0), 60)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    let c = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fc = f(c);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_step(f, a, b, fa, fb, fc, whole, eps, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let fd = f(d);
    let fe = f(e);
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, c, fa, fc, fd, left, eps * 0.5, depth - 1)
            + simpson_step(f, c, b, fc, fb, fe, right, eps * 0.5, depth - 1)
    }
}
