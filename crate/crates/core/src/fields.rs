//! Desk-scale construction of number-field families: squarefree-discriminant
//! fields by polynomial search, cyclic fields of odd prime degree by
//! conductor and character, Galois-group labeling for degree at most 5, and
//! census statistics over a family.

use crate::polymod::{factor_degree_multiset, PolyMod};
use crate::polyz::{big_rem_monic, cyclotomic, squarefree_i128, PolyZ};
use crate::sieve;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A number field given by a monic integral defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldRecord {
    pub degree: usize,
    /// Signed field discriminant.
    pub disc: i128,
    pub signature: (usize, usize),
    pub label: String,
    pub poly: PolyZ,
    pub tags: Vec<String>,
}

impl FieldRecord {
    /// One line of the field database:
    /// `degree|disc|r1,r2|label|a0,..,an|tag;tag`.
    pub fn to_line(&self) -> String {
        let coeffs: Vec<String> = self.poly.coeffs().iter().map(|c| c.to_string()).collect();
        format!(
            "{}|{}|{},{}|{}|{}|{}",
            self.degree,
            self.disc,
            self.signature.0,
            self.signature.1,
            self.label,
            coeffs.join(","),
            self.tags.join(";")
        )
    }

    pub fn from_line(line: &str) -> Result<FieldRecord> {
        let parts: Vec<&str> = line.trim().split('|').collect();
        if parts.len() != 6 {
            return Err(Error::Validation(format!("bad field record: {line}")));
        }
        let degree: usize = parts[0]
            .parse()
            .map_err(|_| Error::Validation("bad degree".into()))?;
        let disc: i128 = parts[1]
            .parse()
            .map_err(|_| Error::Validation("bad disc".into()))?;
        let sig: Vec<usize> = parts[2]
            .split(',')
            .map(|s| s.parse().map_err(|_| Error::Validation("bad signature".into())))
            .collect::<Result<_>>()?;
        if sig.len() != 2 {
            return Err(Error::Validation("bad signature".into()));
        }
        let coeffs: Vec<i128> = parts[4]
            .split(',')
            .map(|s| s.parse().map_err(|_| Error::Validation("bad coeffs".into())))
            .collect::<Result<_>>()?;
        let tags = if parts[5].is_empty() {
            vec![]
        } else {
            parts[5].split(';').map(|s| s.to_string()).collect()
        };
        Ok(FieldRecord {
            degree,
            disc,
            signature: (sig[0], sig[1]),
            label: parts[3].to_string(),
            poly: PolyZ::new(coeffs),
            tags,
        })
    }
}

/// Fundamental quadratic discriminant test (either sign).
pub fn is_fundamental_disc(d: i128) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree_i128(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree_i128(m)
        }
        _ => false,
    }
}

/// Factorization-pattern fingerprint at the first `count` unramified primes.
pub fn frobenius_fingerprint(poly: &PolyZ, disc: i128, count: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(count);
    let mut p = 2u64;
    while out.len() < count {
        if sieve::is_prime_u64(p) && disc.rem_euclid(p as i128) != 0 {
            out.push(factor_degree_multiset(&PolyMod::from_polyz(poly, p)));
        }
        p += 1;
    }
    out
}

/// Galois label of an irreducible monic polynomial of degree 2..=5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisLabel {
    pub name: String,
    /// Degree-5 labels rest on disc and Frobenius sampling, not a proof.
    pub heuristic: bool,
}

fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    for c in r.saturating_sub(2)..=r + 2 {
        if c >= 0 && c * c == n {
            return true;
        }
    }
    false
}

fn squarefree_core(n: i128) -> i128 {
    if n == 0 {
        return 0;
    }
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut core = 1u128;
    let mut p = 2u128;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    core *= m;
    sign * core as i128
}

/// Number of primes to sample for the degree-5 heuristic label.
const QUINTIC_SAMPLE_PRIMES: usize = 200;

pub fn galois_label(poly: &PolyZ) -> Result<GaloisLabel> {
    let n = poly.degree();
    if !(2..=5).contains(&n) || !poly.is_monic() {
        return Err(Error::Validation("need a monic polynomial of degree 2..=5".into()));
    }
    if !poly.is_irreducible_monic() {
        return Err(Error::Validation("polynomial is reducible".into()));
    }
    let disc = poly
        .discriminant()
        .ok_or_else(|| Error::Validation("discriminant overflow".into()))?;
    let exact = |name: &str| GaloisLabel {
        name: name.into(),
        heuristic: false,
    };
    match n {
        2 => Ok(exact("C2")),
        3 => Ok(exact(if is_square_i128(disc) { "C3" } else { "S3" })),
        4 => {
            let c = poly.coeffs();
            let (a, b, cc, d) = (c[3], c[2], c[1], c[0]);
            // Resolvent cubic y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4 b d + c^2).
            let resolvent = PolyZ::new(vec![
                -(a * a * d - 4 * b * d + cc * cc),
                a * cc - 4 * d,
                -b,
                1,
            ]);
            let roots = integer_roots(&resolvent);
            match roots.len() {
                3 => Ok(exact("K4")),
                0 => Ok(exact(if is_square_i128(disc) { "A4" } else { "S4" })),
                _ => {
                    // One rational root: distinguish C4 from D4 by whether the
                    // two attached quadratics split over Q(sqrt(disc)).
                    let beta = roots[0];
                    let d1 = beta * beta - 4 * d;
                    let d2 = a * a - 4 * (b - beta);
                    let core = squarefree_core(disc);
                    let splits = |e: i128| {
                        e == 0 || is_square_i128(e) || (squarefree_core(e) == core)
                    };
                    Ok(exact(if splits(d1) && splits(d2) { "C4" } else { "D4" }))
                }
            }
        }
        5 => {
            let square = is_square_i128(disc);
            let patterns = frobenius_fingerprint(poly, disc, QUINTIC_SAMPLE_PRIMES);
            let has = |t: &[usize]| patterns.iter().any(|p| p == t);
            let name = if square {
                // A5 shows 1+1+3 patterns; C5 and D5 never do.
                if has(&[1, 1, 3]) {
                    "A5"
                } else {
                    "other(5)"
                }
            } else {
                // S5 shows patterns outside the Frobenius-group repertoire.
                if has(&[1, 1, 3]) || has(&[2, 3]) || has(&[1, 1, 1, 2]) {
                    "S5"
                } else {
                    "other(5)"
                }
            };
            Ok(GaloisLabel {
                name: name.into(),
                heuristic: true,
            })
        }
        _ => unreachable!(),
    }
}

/// Integer roots of a monic integer polynomial, ascending, distinct.
fn integer_roots(f: &PolyZ) -> Vec<i128> {
    let c0 = f.coeffs()[0];
    let mut roots = Vec::new();
    if c0 == 0 {
        roots.push(0);
        // Divide out x and recurse once; multiplicities beyond the set of
        // distinct roots do not matter to callers.
        let reduced = PolyZ::new(f.coeffs()[1..].to_vec());
        if reduced.degree() >= 1 && !reduced.coeffs().is_empty() && reduced.coeffs()[0] != 0 {
            for d in divisors_of(reduced.coeffs()[0]) {
                if reduced.eval(d) == 0 && !roots.contains(&d) {
                    roots.push(d);
                }
            }
        }
    } else {
        for d in divisors_of(c0) {
            if f.eval(d) == 0 {
                roots.push(d);
            }
        }
    }
    roots.sort_unstable();
    roots
}

fn divisors_of(a0: i128) -> Vec<i128> {
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

/// Length of the dedup fingerprint.
pub const DEDUP_FINGERPRINT_PRIMES: usize = 100;

/// Enumerates monic degree-`n` polynomials of height at most `height` whose
/// polynomial discriminant is squarefree (or, at degree 2, fundamental) with
/// `|disc| <= disc_bound`. Records are deduplicated by (disc, Frobenius
/// fingerprint) and sorted by `|disc|` then coefficients.
pub fn enumerate_squarefree_disc_fields(
    n: usize,
    disc_bound: i128,
    height: i128,
) -> Result<Vec<FieldRecord>> {
    if !(2..=5).contains(&n) {
        return Err(Error::Validation("degree must be 2..=5".into()));
    }
    if disc_bound < 3 || height < 1 {
        return Err(Error::Validation("need disc_bound >= 3 and height >= 1".into()));
    }
    let keep = |poly: &PolyZ, disc: i128| -> bool {
        disc != 0
            && disc.unsigned_abs() <= disc_bound.unsigned_abs()
            && (squarefree_i128(disc) || n == 2 && is_fundamental_disc(disc))
            && poly.is_irreducible_monic()
    };
    let survivors: Vec<(PolyZ, i128)> = (-height..=height)
        .into_par_iter()
        .flat_map_iter(|top| {
            let mut found = Vec::new();
            let width = (2 * height + 1) as usize;
            let lower = n - 1;
            let total: usize = width.pow(lower as u32);
            for idx in 0..total {
                let mut rem = idx;
                let mut low = Vec::with_capacity(n);
                for _ in 0..lower {
                    low.push((rem % width) as i128 - height);
                    rem /= width;
                }
                low.push(top);
                let poly = PolyZ::monic(&low);
                if poly.degree() != n {
                    continue;
                }
                if let Some(disc) = poly.discriminant() {
                    if keep(&poly, disc) {
                        found.push((poly, disc));
                    }
                }
            }
            found
        })
        .collect();

    let mut dedup: BTreeMap<(i128, Vec<Vec<usize>>), PolyZ> = BTreeMap::new();
    for (poly, disc) in survivors {
        let key = (disc, frobenius_fingerprint(&poly, disc, DEDUP_FINGERPRINT_PRIMES));
        dedup
            .entry(key)
            .and_modify(|existing| {
                if poly.coeffs() < existing.coeffs() {
                    *existing = poly.clone();
                }
            })
            .or_insert(poly);
    }

    let mut records: Vec<FieldRecord> = dedup
        .into_iter()
        .map(|((disc, _), poly)| {
            let label = galois_label(&poly)?;
            let mut tags = vec![if squarefree_i128(disc) {
                "sf-disc".to_string()
            } else {
                "fund-disc".to_string()
            }];
            if label.heuristic {
                tags.push("heuristic".into());
            }
            Ok(FieldRecord {
                degree: n,
                disc,
                signature: crate::roots::signature(&poly),
                label: label.name,
                poly,
                tags,
            })
        })
        .collect::<Result<_>>()?;
    records.sort_by(|a, b| {
        a.disc
            .unsigned_abs()
            .cmp(&b.disc.unsigned_abs())
            .then_with(|| a.poly.coeffs().cmp(b.poly.coeffs()))
    });
    Ok(records)
}

/// Per-conductor outcome of the cyclic construction.
#[derive(Debug, Clone)]
pub struct ConductorEntry {
    pub conductor: u64,
    pub wild: bool,
    pub constructed: usize,
    /// `phi(p)^omega(f)` coefficient read off the Euler product; tame
    /// squarefree conductors only.
    pub euler_coefficient: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct CyclicFamily {
    pub p: usize,
    pub records: Vec<FieldRecord>,
    pub conductors: Vec<ConductorEntry>,
}

/// Constructs all degree-`p` cyclic fields of discriminant at most
/// `disc_bound`, by Gaussian periods over each admissible conductor; every
/// rounded minimal polynomial is verified exactly (symmetric functions of
/// the periods reduced against the cyclotomic polynomial).
pub fn cyclic_fields(p: usize, disc_bound: i128) -> Result<CyclicFamily> {
    if ![3, 5, 7].contains(&p) {
        return Err(Error::Validation("p must be one of 3, 5, 7".into()));
    }
    if disc_bound < 1 {
        return Err(Error::Validation("disc_bound must be >= 1".into()));
    }
    // Conductors f with f^(p-1) <= disc_bound.
    let mut fmax = 1u64;
    while ((fmax + 1) as i128).pow(p as u32 - 1) <= disc_bound {
        fmax += 1;
    }
    let admissible: Vec<(u64, bool)> = (2..=fmax)
        .filter_map(|f| admissible_conductor(f, p as u64).map(|wild| (f, wild)))
        .collect();

    let per_conductor: Vec<(ConductorEntry, Vec<FieldRecord>)> = admissible
        .par_iter()
        .map(|&(f, wild)| conductor_fields(f, wild, p))
        .collect::<Result<_>>()?;

    let mut records = Vec::new();
    let mut conductors = Vec::new();
    for (entry, fields) in per_conductor {
        conductors.push(entry);
        records.extend(fields);
    }
    records.sort_by(|a, b| {
        a.disc
            .unsigned_abs()
            .cmp(&b.disc.unsigned_abs())
            .then_with(|| a.poly.coeffs().cmp(b.poly.coeffs()))
    });
    Ok(CyclicFamily {
        p,
        records,
        conductors,
    })
}

/// A conductor is admissible when it is a squarefree product of primes
/// `= 1 mod p`, optionally times `p^2`. Returns `Some(wild)` or `None`.
fn admissible_conductor(f: u64, p: u64) -> Option<bool> {
    let mut m = f;
    let mut wild = false;
    if m % p == 0 {
        if m % (p * p) != 0 {
            return None;
        }
        m /= p * p;
        if m % p == 0 {
            return None;
        }
        wild = true;
    }
    // m must be squarefree with every prime factor = 1 mod p.
    let mut q = 2u64;
    let mut rest = m;
    while q * q <= rest {
        if rest % q == 0 {
            rest /= q;
            if rest % q == 0 || q % p != 1 {
                return None;
            }
        }
        q += 1;
    }
    if rest > 1 && rest % p != 1 {
        return None;
    }
    if m == 1 && !wild {
        return None; // conductor 1 is the rational field
    }
    Some(wild)
}

/// Local factor of the unit group: modulus, a generator, and its order.
struct LocalFactor {
    modulus: u64,
    dlog: Vec<Option<u64>>, // index by residue mod modulus
    order: u64,
}

fn primitive_root(modulus: u64, order: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = order;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            factors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'g: for g in 2..modulus {
        if num_integer::gcd(g, modulus) != 1 {
            continue;
        }
        for &q in &factors {
            if sieve::pow_mod(g, order / q, modulus) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("cyclic unit group has a generator");
}

fn local_factor(modulus: u64, order: u64) -> LocalFactor {
    let g = primitive_root(modulus, order);
    let mut dlog = vec![None; modulus as usize];
    let mut x = 1u64;
    for e in 0..order {
        dlog[x as usize] = Some(e);
        x = sieve::mul_mod(x, g, modulus);
    }
    LocalFactor {
        modulus,
        dlog,
        order,
    }
}

/// All fields of exact conductor `f`, plus the census entry.
fn conductor_fields(f: u64, wild: bool, p: usize) -> Result<(ConductorEntry, Vec<FieldRecord>)> {
    let pu = p as u64;
    // Local factors of (Z/f)^* that carry order-p characters.
    let mut factors = Vec::new();
    let mut m = f;
    if wild {
        factors.push(local_factor(pu * pu, pu * (pu - 1)));
        m /= pu * pu;
    }
    let mut q = 2u64;
    while q * q <= m {
        if m % q == 0 {
            factors.push(local_factor(q, q - 1));
            m /= q;
        }
        q += 1;
    }
    if m > 1 {
        factors.push(local_factor(m, m - 1));
    }
    let t = factors.len();

    // Character exponent vectors (1, c_2..c_t), each c nonzero mod p: one
    // representative per Galois orbit.
    let mut vectors = vec![vec![1u64]];
    for _ in 1..t {
        let mut next = Vec::new();
        for v in vectors {
            for c in 1..pu {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        vectors = next;
    }

    let phi_f: u64 = factors.iter().map(|l| l.order).product();
    let cosets_of = |vector: &[u64]| -> Vec<Vec<u64>> {
        let mut cosets = vec![Vec::new(); p];
        for u in 1..f {
            if num_integer::gcd(u, f) != 1 {
                continue;
            }
            let mut value = 0u64;
            for (factor, &c) in factors.iter().zip(vector) {
                let r = u % factor.modulus;
                let e = factor.dlog[r as usize].expect("unit has a discrete log");
                // Only the mod-p component of the log matters.
                if factor.order % pu == 0 {
                    value = (value + c * (e % pu)) % pu;
                } else {
                    unreachable!("factor carries no order-p character");
                }
            }
            cosets[value as usize].push(u);
        }
        cosets
    };

    let phi_big = cyclotomic(f as usize);
    let mut fields = Vec::new();
    for vector in &vectors {
        let cosets = cosets_of(vector);
        debug_assert!(cosets.iter().all(|c| c.len() as u64 == phi_f / pu));
        let poly = period_polynomial(f, p, &cosets, &phi_big)?;
        let disc = (f as i128).pow(p as u32 - 1);
        fields.push(FieldRecord {
            degree: p,
            disc,
            signature: (p, 0),
            label: format!("C{p}"),
            poly,
            tags: vec![format!("cyclic-{p}"), format!("conductor={f}")],
        });
    }
    fields.sort_by(|a, b| a.poly.coeffs().cmp(b.poly.coeffs()));
    fields.dedup_by(|a, b| a.poly == b.poly);
    if fields.len() != vectors.len() {
        return Err(Error::Construction(format!(
            "conductor {f}: duplicate period polynomials"
        )));
    }

    let euler_coefficient = if wild {
        None
    } else {
        Some((pu - 1).pow(sieve::omega(f)))
    };
    Ok((
        ConductorEntry {
            conductor: f,
            wild,
            constructed: fields.len(),
            euler_coefficient,
        },
        fields,
    ))
}

/// Minimal polynomial of the Gaussian periods for the given unit cosets:
/// computed numerically, rounded, then verified exactly against the
/// cyclotomic polynomial of the conductor.
fn period_polynomial(f: u64, p: usize, cosets: &[Vec<u64>], phi_big: &[BigInt]) -> Result<PolyZ> {
    // Numeric periods (real: complex conjugation fixes each coset).
    let tau = 2.0 * std::f64::consts::PI / f as f64;
    let periods: Vec<f64> = cosets
        .iter()
        .map(|coset| coset.iter().map(|&u| (tau * u as f64).cos()).sum())
        .collect();
    let num = rebuild_product(&periods);
    let mut coeffs = Vec::with_capacity(p + 1);
    for (k, &c) in num.iter().enumerate() {
        let r = c.round();
        if (c - r).abs() > 1e-6 {
            return Err(Error::Construction(format!(
                "conductor {f}: period coefficient {k} = {c} not near an integer"
            )));
        }
        coeffs.push(r as i128);
    }
    let poly = PolyZ::new(coeffs);

    // Exact verification: each elementary symmetric function of the period
    // sums P_i(x), reduced mod Phi_f(x), must equal the rounded coefficient.
    let ring_len = f as usize;
    let to_ring = |coset: &[u64]| -> Vec<i128> {
        let mut v = vec![0i128; ring_len];
        for &u in coset {
            v[u as usize] += 1;
        }
        v
    };
    let ring_mul = |a: &[i128], b: &[i128]| -> Vec<i128> {
        let mut out = vec![0i128; ring_len];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[(i + j) % ring_len] += x * y;
                }
            }
        }
        out
    };
    // elem[k] after processing items = e_k of the processed periods.
    let mut elem: Vec<Vec<i128>> = vec![vec![0; ring_len]; p + 1];
    elem[0][0] = 1;
    let mut processed = 0usize;
    for coset in cosets {
        let pi = to_ring(coset);
        processed += 1;
        for k in (1..=processed).rev() {
            let add = ring_mul(&elem[k - 1], &pi);
            for (t, v) in add.into_iter().enumerate() {
                elem[k][t] += v;
            }
        }
    }
    for k in 1..=p {
        // Expected integer value: e_k = (-1)^k * coeff_{p-k}.
        let expected = if k % 2 == 0 {
            poly.coeffs()[p - k]
        } else {
            -poly.coeffs()[p - k]
        };
        let mut diff: Vec<BigInt> = elem[k].iter().map(|&c| BigInt::from(c)).collect();
        diff[0] -= BigInt::from(expected);
        let rem = big_rem_monic(&diff, phi_big);
        if !rem.iter().all(|c| c.is_zero()) {
            return Err(Error::Construction(format!(
                "conductor {f}: exact symmetric-function check failed at e_{k}"
            )));
        }
    }

    // The periods must actually generate a degree-p field.
    if !poly.is_irreducible_monic() {
        return Err(Error::Construction(format!(
            "conductor {f}: period polynomial is reducible"
        )));
    }
    Ok(poly)
}

fn rebuild_product(etas: &[f64]) -> Vec<f64> {
    let mut acc = vec![1.0f64];
    for &eta in etas {
        let mut next = vec![0.0; acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= eta * c;
        }
        acc = next;
    }
    acc
}

/// Census over a family of records: counts on a grid, a log-log growth fit,
/// and the discriminant multiplicity histogram.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub grid: Vec<(i128, usize)>,
    pub fitted_exponent: f64,
    pub fit_rms_residual: f64,
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    pub max_multiplicity: usize,
    pub height_limited: bool,
}

/// `omega`: when set, multiplicities are keyed by the tame part of `|D|`
/// (primes in `omega` stripped).
pub fn family_census(
    records: &[FieldRecord],
    grid: &[i128],
    omega: Option<&[u64]>,
    height_limited: bool,
) -> Result<CensusReport> {
    let counts: Vec<(i128, usize)> = grid
        .iter()
        .map(|&x| {
            (
                x,
                records
                    .iter()
                    .filter(|r| r.disc.unsigned_abs() <= x.unsigned_abs())
                    .count(),
            )
        })
        .collect();
    let points: Vec<(f64, f64)> = counts
        .iter()
        .filter(|&&(x, n)| n > 0 && x > 0)
        .map(|&(x, n)| ((x as f64).ln(), (n as f64).ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::Fit("need at least 3 grid points with nonzero counts".into()));
    }
    let (slope, intercept) = least_squares(&points);
    let rms = (points
        .iter()
        .map(|&(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum::<f64>()
        / points.len() as f64)
        .sqrt();

    let mut mult: BTreeMap<i128, usize> = BTreeMap::new();
    for r in records {
        let mut key = r.disc.unsigned_abs() as i128;
        if let Some(primes) = omega {
            for &p in primes {
                while key % p as i128 == 0 {
                    key /= p as i128;
                }
            }
        }
        *mult.entry(key).or_insert(0) += 1;
    }
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for &m in mult.values() {
        *histogram.entry(m).or_insert(0) += 1;
    }
    let max_multiplicity = mult.values().copied().max().unwrap_or(0);
    Ok(CensusReport {
        grid: counts,
        fitted_exponent: slope,
        fit_rms_residual: rms,
        multiplicity_histogram: histogram,
        max_multiplicity,
        height_limited,
    })
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    (slope, (sy - slope * sx) / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_cubics_contains_minimal_field() {
        let recs = enumerate_squarefree_disc_fields(3, 30, 2).unwrap();
        assert!(recs
            .iter()
            .any(|r| r.disc == -23 && r.poly == PolyZ::monic(&[-1, -1, 0])));
    }

    #[test]
    fn enumerate_quadratics_fundamental_set() {
        let recs = enumerate_squarefree_disc_fields(2, 10, 3).unwrap();
        let discs: Vec<i128> = recs.iter().map(|r| r.disc).collect();
        for d in [5, -3, -4, 8, -7, -8] {
            assert!(discs.contains(&d), "missing {d} in {discs:?}");
        }
        // One record per quadratic field.
        let mut sorted = discs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), discs.len());
    }

    #[test]
    fn no_cubic_below_23() {
        for h in 5..=8 {
            let recs = enumerate_squarefree_disc_fields(3, 20, h).unwrap();
            assert!(recs.is_empty(), "height {h} gave {recs:?}");
        }
    }

    #[test]
    fn dedup_is_sound_on_small_cubics() {
        let recs = enumerate_squarefree_disc_fields(3, 200, 4).unwrap();
        for w in recs.windows(2) {
            assert!(
                w[0].disc != w[1].disc
                    || frobenius_fingerprint(&w[0].poly, w[0].disc, 100)
                        != frobenius_fingerprint(&w[1].poly, w[1].disc, 100)
            );
        }
    }

    #[test]
    fn labels() {
        assert_eq!(galois_label(&PolyZ::monic(&[-1, -1, 0])).unwrap().name, "S3");
        assert_eq!(galois_label(&PolyZ::monic(&[-1, -2, 1])).unwrap().name, "C3");
        assert_eq!(galois_label(&PolyZ::monic(&[1, 0, 0, 0])).unwrap().name, "K4");
        // x^4 + x^3 + x^2 + x + 1 is the 5th cyclotomic: C4.
        assert_eq!(galois_label(&PolyZ::monic(&[1, 1, 1, 1])).unwrap().name, "C4");
        // x^4 - 2 is D4.
        assert_eq!(galois_label(&PolyZ::monic(&[-2, 0, 0, 0])).unwrap().name, "D4");
        // x^4 - x - 1 is S4 (disc -283, resolvent irreducible).
        assert_eq!(galois_label(&PolyZ::monic(&[-1, -1, 0, 0])).unwrap().name, "S4");
        // x^4 + 8x + 12 is a classical A4 quartic (disc 331776 = 576^2).
        assert_eq!(galois_label(&PolyZ::monic(&[12, 8, 0, 0])).unwrap().name, "A4");
        // x^5 - x - 1 is S5.
        let l5 = galois_label(&PolyZ::monic(&[-1, -1, 0, 0, 0])).unwrap();
        assert_eq!(l5.name, "S5");
        assert!(l5.heuristic);
        // x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1 is the real 11th cyclotomic
        // subfield: C5, labeled other(5).
        let c5 = galois_label(&PolyZ::monic(&[1, 3, -3, -4, 1])).unwrap();
        assert_eq!(c5.name, "other(5)");
        assert!(galois_label(&PolyZ::monic(&[-1, 0])).is_err()); // x^2-1 reducible
    }

    #[test]
    fn cyclic_cubic_small_conductors() {
        let fam = cyclic_fields(3, 10_000).unwrap();
        let c7: Vec<&FieldRecord> = fam.records.iter().filter(|r| r.disc == 49).collect();
        assert_eq!(c7.len(), 1);
        assert_eq!(c7[0].poly, PolyZ::monic(&[-1, -2, 1]));
        let c9: Vec<&FieldRecord> = fam.records.iter().filter(|r| r.disc == 81).collect();
        assert_eq!(c9.len(), 1);
        assert_eq!(c9[0].poly, PolyZ::monic(&[1, -3, 0]));
        let c91: Vec<&FieldRecord> =
            fam.records.iter().filter(|r| r.disc == 91 * 91).collect();
        assert_eq!(c91.len(), 2);
        let entry = fam.conductors.iter().find(|e| e.conductor == 91).unwrap();
        assert_eq!(entry.constructed, 2);
        assert_eq!(entry.euler_coefficient, Some(4));
    }

    #[test]
    fn cyclic_discs_are_conductor_powers() {
        for p in [3usize, 5] {
            let bound = if p == 3 { 100_000 } else { 10_000_000 };
            let fam = cyclic_fields(p, bound).unwrap();
            for r in &fam.records {
                let f: u64 = r
                    .tags
                    .iter()
                    .find_map(|t| t.strip_prefix("conductor="))
                    .unwrap()
                    .parse()
                    .unwrap();
                assert_eq!(r.disc, (f as i128).pow(p as u32 - 1));
            }
        }
    }

    #[test]
    fn euler_ratio_constant_on_squarefree_conductors() {
        let fam = cyclic_fields(3, 1_000_000).unwrap();
        let mut ratios = Vec::new();
        for e in fam.conductors.iter().filter(|e| !e.wild) {
            let euler = e.euler_coefficient.unwrap() as f64;
            ratios.push(euler / e.constructed as f64);
        }
        assert!(ratios.len() >= 20);
        assert!(ratios.iter().all(|&r| r == 2.0));
    }

    #[test]
    fn census_fit_and_errors() {
        let fam = cyclic_fields(3, 1_000_000).unwrap();
        let grid: Vec<i128> = (0..=12).map(|k| 1 << (k + 8)).collect();
        let report = family_census(&fam.records, &grid, None, false).unwrap();
        assert!((report.fitted_exponent - 0.5).abs() < 0.12);
        let mult91 = fam
            .records
            .iter()
            .filter(|r| r.disc == 91 * 91)
            .count();
        assert_eq!(mult91, 2);
        assert!(report.max_multiplicity >= 2);

        assert!(family_census(&[], &grid, None, false).is_err());
    }

    #[test]
    fn record_round_trip() {
        let recs = enumerate_squarefree_disc_fields(3, 100, 3).unwrap();
        for r in recs {
            let line = r.to_line();
            assert_eq!(FieldRecord::from_line(&line).unwrap(), r);
        }
    }

    #[test]
    fn fundamental_disc_classifier() {
        for d in [5, -3, -4, 8, -7, -8, -23, -84, 12] {
            assert!(is_fundamental_disc(d), "{d}");
        }
        for d in [0, 1, -1, 4, -9, -12, 25, -16, 18] {
            assert!(!is_fundamental_disc(d), "{d}");
        }
    }

    #[test]
    fn resolvent_of_x4_plus_1_splits() {
        // Resolvent cubic of x^4+1 is y^3 - 4y = y(y-2)(y+2).
        let f = PolyZ::monic(&[1, 0, 0, 0]);
        let c = f.coeffs();
        let resolvent = PolyZ::new(vec![
            -(c[3] * c[3] * c[0] - 4 * c[2] * c[0] + c[1] * c[1]),
            c[3] * c[1] - 4 * c[0],
            -c[2],
            1,
        ]);
        assert_eq!(integer_roots(&resolvent), vec![-2, 0, 2]);
    }
}
