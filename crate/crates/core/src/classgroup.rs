//! Class groups of imaginary quadratic fields through reduced binary
//! quadratic forms: Gauss composition, group structure, torsion subgroup
//! sizes, moment statistics, and the cubic-field correspondence.

use crate::fields::{frobenius_fingerprint, is_fundamental_disc};
use crate::polyz::PolyZ;
use crate::sieve;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Cap on `|D|` for class-group computations.
pub const DISC_CAP: i64 = 100_000_000;
/// Largest class number for which a full multiplication table is built.
pub const TABLE_CAP: usize = 4096;

/// A positive-definite integral binary quadratic form `(a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QForm {
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || b.abs() < a && a < c)
    }

    /// Principal form of a discriminant.
    pub fn identity(d: i64) -> QForm {
        if d.rem_euclid(4) == 0 {
            QForm {
                a: 1,
                b: 0,
                c: -d / 4,
            }
        } else {
            QForm {
                a: 1,
                b: 1,
                c: (1 - d) / 4,
            }
        }
    }

    pub fn inverse(&self) -> QForm {
        reduce(self.a as i128, -self.b as i128, self.c as i128)
    }
}

fn reduce(mut a: i128, mut b: i128, mut c: i128) -> QForm {
    loop {
        // Normalize b into (-a, a] via x -> x - q*y:
        // (a, b, c) -> (a, b - 2aq, c - bq + aq^2).
        if b > a || b <= -a {
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            let q = (b - r) / two_a;
            c = c - q * b + a * q * q;
            b = r;
        }
        if a > c {
            // (a, b, c) -> (c, -b, a)
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if (b.abs() == a || a == c) && b < 0 {
        b = -b;
    }
    QForm {
        a: a as i64,
        b: b as i64,
        c: c as i64,
    }
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = xgcd(b, a % b);
        (g, y, x - a / b * y)
    }
}

/// Gauss composition of two forms of the same discriminant, reduced.
pub fn compose(f1: &QForm, f2: &QForm) -> QForm {
    debug_assert_eq!(f1.disc(), f2.disc());
    let d = f1.disc() as i128;
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2) = (f2.a as i128, f2.b as i128);
    let s = (b1 + b2) / 2;
    // e = r a1 + s2 a2 + t s with e = gcd(a1, a2, s).
    let (g1, u, v) = xgcd(a1, a2);
    let (e, w1, t) = xgcd(g1, s);
    let r = u * w1;
    let s2 = v * w1;
    let a3 = a1 / e * (a2 / e);
    let b3_num = s2 * a2 * b1 + r * a1 * b2 + t * (b1 * b2 + d) / 2;
    debug_assert_eq!(b3_num % e, 0);
    let mut b3 = (b3_num / e).rem_euclid(2 * a3);
    if b3 > a3 {
        b3 -= 2 * a3;
    }
    let c3 = (b3 * b3 - d) / (4 * a3);
    reduce(a3, b3, c3)
}

/// `f^k` by repeated squaring in the class group.
pub fn power(f: &QForm, mut k: u64) -> QForm {
    let mut acc = QForm::identity(f.disc());
    let mut base = reduce(f.a as i128, f.b as i128, f.c as i128);
    while k > 0 {
        if k & 1 == 1 {
            acc = compose(&acc, &base);
        }
        base = compose(&base, &base);
        k >>= 1;
    }
    acc
}

/// The class group of a fundamental negative discriminant.
#[derive(Debug, Clone)]
pub struct ClassGroupRecord {
    pub disc: i64,
    /// All reduced forms, sorted.
    pub forms: Vec<QForm>,
    pub h: usize,
    /// `d1 | d2 | ...`, ascending; empty for the trivial group.
    pub elementary_divisors: Vec<u64>,
    /// A generating set found greedily (identity excluded).
    pub generators: Vec<QForm>,
}

/// Enumerates reduced forms of discriminant `d` (must be fundamental, < 0).
pub fn class_group(d: i64) -> Result<ClassGroupRecord> {
    if d >= 0 {
        return Err(Error::Validation("discriminant must be negative".into()));
    }
    if -d > DISC_CAP {
        return Err(Error::CapExceeded(format!("|D| > {DISC_CAP}")));
    }
    if !is_fundamental_disc(d as i128) {
        return Err(Error::Validation(format!("{d} is not fundamental")));
    }
    let mut forms = Vec::new();
    let abs = (-d) as i128;
    let mut a: i128 = 1;
    while 3 * a * a <= abs {
        let parity = d.rem_euclid(2) as i128;
        let mut b = -a + 1;
        // b = D (mod 2)
        if b.rem_euclid(2) != parity {
            b += 1;
        }
        while b <= a {
            let num = b * b + abs;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    let g = gcd3(a, b.abs(), c);
                    let ok_orientation = b >= 0 || b.abs() < a && a < c;
                    if g == 1 && ok_orientation {
                        forms.push(QForm {
                            a: a as i64,
                            b: b as i64,
                            c: c as i64,
                        });
                    }
                }
            }
            b += 2;
        }
        a += 1;
    }
    forms.sort();
    let h = forms.len();
    let elementary_divisors = divisors_by_counting(&forms, h as u64);
    let generators = greedy_generators(&forms, d);
    Ok(ClassGroupRecord {
        disc: d,
        forms,
        h,
        elementary_divisors,
        generators,
    })
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    fn g(a: i128, b: i128) -> i128 {
        if b == 0 { a } else { g(b, a % b) }
    }
    g(g(a, b), c)
}

/// Elementary divisors of the (abelian) form class group, by counting
/// solutions of `g^(q^i) = id` prime by prime. Exact for any order.
fn divisors_by_counting(forms: &[QForm], h: u64) -> Vec<u64> {
    if h <= 1 {
        return vec![];
    }
    let mut rest = h;
    let mut prime_exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    let mut q = 2u64;
    while q * q <= rest {
        if rest % q == 0 {
            let mut v = 0;
            while rest % q == 0 {
                rest /= q;
                v += 1;
            }
            prime_exponents.insert(q, exponent_partition(forms, q, v));
        }
        q += 1;
    }
    if rest > 1 {
        prime_exponents.insert(rest, exponent_partition(forms, rest, 1));
    }
    let rank = prime_exponents
        .values()
        .map(|v| v.len())
        .max()
        .unwrap_or(0);
    let mut divisors = vec![1u64; rank];
    for (q, exps) in prime_exponents {
        // exps descending; largest exponent goes to the largest divisor.
        for (i, &e) in exps.iter().enumerate() {
            divisors[rank - 1 - i] *= q.pow(e);
        }
    }
    divisors
}

/// Partition (descending) of the `q`-part: counts `N_i = #{g : g^(q^i)=id}`
/// recover the cyclic exponents.
fn exponent_partition(forms: &[QForm], q: u64, v_max: u32) -> Vec<u32> {
    let mut log_counts = vec![0u32]; // log_q N_0 = 0
    for i in 1..=v_max {
        let qi = q.pow(i);
        let n_i = forms
            .iter()
            .filter(|f| power(f, qi) == QForm::identity(f.disc()))
            .count() as u64;
        let mut lg = 0u32;
        let mut m = n_i;
        while m > 1 {
            debug_assert_eq!(m % q, 0);
            m /= q;
            lg += 1;
        }
        log_counts.push(lg);
        if i >= 1 && log_counts[i as usize] == log_counts[i as usize - 1] {
            break;
        }
    }
    // #factors with exponent >= i is log_counts[i] - log_counts[i-1].
    let mut exponents = Vec::new();
    for i in 1..log_counts.len() {
        let at_least_i = log_counts[i] - log_counts[i - 1];
        while (exponents.len() as u32) < at_least_i {
            exponents.push(0);
        }
        for e in exponents.iter_mut().take(at_least_i as usize) {
            *e = i as u32;
        }
    }
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents
}

fn greedy_generators(forms: &[QForm], d: i64) -> Vec<QForm> {
    let id = QForm::identity(d);
    let mut generated: BTreeSet<QForm> = BTreeSet::new();
    generated.insert(id);
    let mut gens = Vec::new();
    let mut by_order: Vec<(u64, QForm)> = forms
        .iter()
        .map(|f| (form_order(f, forms.len() as u64), *f))
        .collect();
    by_order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    for (_, f) in by_order {
        if generated.len() == forms.len() {
            break;
        }
        if generated.contains(&f) {
            continue;
        }
        gens.push(f);
        // Close the generated subgroup.
        let mut frontier: Vec<QForm> = generated.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let y = compose(&x, &f);
            if generated.insert(y) {
                frontier.push(y);
            }
        }
    }
    gens
}

/// Order of a form (divides `h`).
pub fn form_order(f: &QForm, h: u64) -> u64 {
    let id = QForm::identity(f.disc());
    let mut divs: Vec<u64> = (1..=h).filter(|d| h % d == 0).collect();
    divs.sort_unstable();
    for d in divs {
        if power(f, d) == id {
            return d;
        }
    }
    unreachable!("element order divides the group order");
}

impl ClassGroupRecord {
    /// Size of the `ell`-torsion subgroup, from the elementary divisors.
    pub fn ell_torsion(&self, ell: u64) -> u64 {
        if ell == 0 {
            return self.h as u64;
        }
        self.elementary_divisors
            .iter()
            .map(|&d| num_integer::gcd(d, ell))
            .product()
    }

    /// Direct count of `g` with `g^ell = id`; oracle for `ell_torsion`.
    pub fn ell_torsion_by_count(&self, ell: u64) -> u64 {
        let id = QForm::identity(self.disc);
        self.forms
            .iter()
            .filter(|f| power(f, ell) == id)
            .count() as u64
    }

    /// Full composition table (indices into `forms`); capped for memory.
    pub fn multiplication_table(&self) -> Result<Vec<Vec<u32>>> {
        if self.h > TABLE_CAP {
            return Err(Error::CapExceeded(format!("h > {TABLE_CAP}")));
        }
        let index: BTreeMap<QForm, u32> = self
            .forms
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i as u32))
            .collect();
        let mut table = vec![vec![0u32; self.h]; self.h];
        for (i, f) in self.forms.iter().enumerate() {
            for (j, g) in self.forms.iter().enumerate() {
                let fg = compose(f, g);
                table[i][j] = *index
                    .get(&fg)
                    .ok_or_else(|| Error::Construction("product not reduced into the set".into()))?;
            }
        }
        Ok(table)
    }

    /// Checks the group axioms on the composition table.
    pub fn verify_group_axioms(&self) -> Result<()> {
        let table = self.multiplication_table()?;
        let id_idx = self
            .forms
            .iter()
            .position(|f| *f == QForm::identity(self.disc))
            .ok_or_else(|| Error::Construction("identity form missing".into()))?;
        let n = self.h;
        for i in 0..n {
            if table[id_idx][i] as usize != i || table[i][id_idx] as usize != i {
                return Err(Error::Construction("identity fails".into()));
            }
            if !(0..n).any(|j| table[i][j] as usize == id_idx) {
                return Err(Error::Construction("inverse missing".into()));
            }
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(Error::Construction("composition not commutative".into()));
                }
            }
        }
        // Associativity spot check on a deterministic sample.
        let step = (n / 12).max(1);
        for i in (0..n).step_by(step) {
            for j in (0..n).step_by(step) {
                for k in (0..n).step_by(step) {
                    let ij_k = table[table[i][j] as usize][k];
                    let i_jk = table[i][table[j][k] as usize];
                    if ij_k != i_jk {
                        return Err(Error::Construction("associativity fails".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All fundamental discriminants in `[-bound, -3]`, descending from -3.
pub fn fundamental_discs(bound: i64) -> Vec<i64> {
    (3..=bound)
        .filter_map(|k| {
            let d = -k;
            if is_fundamental_disc(d as i128) {
                Some(d)
            } else {
                None
            }
        })
        .collect()
}

/// Moment statistics of `|Cl[ell]|` over fundamental `-X <= D < 0`.
#[derive(Debug, Clone)]
pub struct TorsionStats {
    pub moment: u128,
    pub field_count: u64,
    /// Number of `D` with `|Cl[ell]| > |D|^(1/2 - 1/(2 ell))`.
    pub exceptional: u64,
}

pub fn torsion_stats(bound: i64, ell: u64, k: u32) -> Result<TorsionStats> {
    if bound > DISC_CAP {
        return Err(Error::CapExceeded(format!("bound > {DISC_CAP}")));
    }
    if ell == 0 || k == 0 {
        return Err(Error::Validation("need ell >= 1 and k >= 1".into()));
    }
    let discs = fundamental_discs(bound);
    let rows: Vec<(u128, bool)> = discs
        .par_iter()
        .map(|&d| {
            let record = class_group(d).expect("fundamental by construction");
            let t = record.ell_torsion(ell) as u128;
            let threshold = ((-d) as f64).powf(0.5 - 0.5 / ell as f64);
            (t.pow(k), (t as f64) > threshold)
        })
        .collect();
    let mut moment = 0u128;
    let mut exceptional = 0u64;
    for (m, exc) in rows {
        moment += m;
        if exc {
            exceptional += 1;
        }
    }
    Ok(TorsionStats {
        moment,
        field_count: discs.len() as u64,
        exceptional,
    })
}

/// One row of the cubic correspondence: cubic fields of discriminant `D`
/// against `( |Cl[3]| - 1 ) / 2` of the quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceRow {
    pub disc: i64,
    pub cubic_fields: u64,
    pub torsion_predicted: u64,
}

#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub rows: Vec<CorrespondenceRow>,
    /// Height at which the cubic enumeration became stable.
    pub stable_height: i128,
}

/// Counts cubic fields with fundamental discriminant `D` for every
/// fundamental `-bound <= D < 0`, raising the coefficient box until two
/// consecutive rounds agree, and pairs the counts with class-group
/// 3-torsion.
pub fn cubic_correspondence(bound: i64) -> Result<CorrespondenceReport> {
    if bound > 100_000 {
        return Err(Error::CapExceeded("correspondence bound beyond desk scale".into()));
    }
    let discs = fundamental_discs(bound);
    let torsion: BTreeMap<i64, u64> = discs
        .par_iter()
        .map(|&d| {
            let record = class_group(d).expect("fundamental");
            (d, (record.ell_torsion(3) - 1) / 2)
        })
        .collect();

    let mut height: i128 = 2 * ((bound as f64).sqrt().ceil() as i128).max(8);
    let mut prev = cubic_counts_by_disc(bound, height);
    let stable_height;
    loop {
        let next_height = height * 3 / 2;
        let next = cubic_counts_by_disc(bound, next_height);
        if next == prev {
            stable_height = next_height;
            break;
        }
        prev = next;
        height = next_height;
    }
    let rows = discs
        .iter()
        .map(|&d| CorrespondenceRow {
            disc: d,
            cubic_fields: prev.get(&d).copied().unwrap_or(0),
            torsion_predicted: torsion[&d],
        })
        .collect();
    Ok(CorrespondenceReport {
        rows,
        stable_height,
    })
}

/// Number of cubic fields (deduplicated) per fundamental negative
/// discriminant reachable in the coefficient box.
fn cubic_counts_by_disc(bound: i64, height: i128) -> BTreeMap<i64, u64> {
    let survivors: Vec<(i64, PolyZ)> = (-height..=height)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut found = Vec::new();
            for b in -height..=height {
                for c in -height..=height {
                    // disc(x^3+ax^2+bx+c) = 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2
                    let disc = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b
                        - 4 * b * b * b
                        - 27 * c * c;
                    if disc >= 0 || -disc > bound as i128 {
                        continue;
                    }
                    if !is_fundamental_disc(disc) {
                        continue;
                    }
                    let poly = PolyZ::monic(&[c, b, a]);
                    if poly.is_irreducible_monic() {
                        found.push((disc as i64, poly));
                    }
                }
            }
            found
        })
        .collect();
    let mut seen: BTreeSet<(i64, Vec<Vec<usize>>)> = BTreeSet::new();
    for (d, poly) in survivors {
        let fp = frobenius_fingerprint(&poly, d as i128, crate::fields::DEDUP_FINGERPRINT_PRIMES);
        seen.insert((d, fp));
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for (d, _) in seen {
        *counts.entry(d).or_insert(0) += 1;
    }
    counts
}
