//! Frobenius splitting statistics for a defining polynomial: factorization
//! patterns at unramified primes, class counting functions, comparison
//! against the expected density, and small-prime existence checks.

use crate::fields::galois_label;
use crate::perm::{self, Perm, PermGroup};
use crate::polymod::{factor_degree_multiset, PolyMod};
use crate::polyz::PolyZ;
use crate::sieve;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Largest prime bound any sieve-driven operation accepts.
pub const SIEVE_CAP: u64 = 100_000_000;

/// Factor-degree multiset of the defining polynomial at an unramified prime;
/// equals the cycle type of the Frobenius class on the roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusPattern {
    pub prime: u64,
    pub partition: Vec<usize>,
}

pub fn frobenius_pattern(poly: &PolyZ, p: u64) -> Result<FrobeniusPattern> {
    if !sieve::is_prime_u64(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    let disc = poly
        .discriminant()
        .ok_or_else(|| Error::Validation("discriminant overflow".into()))?;
    if disc.rem_euclid(p as i128) == 0 {
        return Err(Error::RamifiedPrime(p));
    }
    Ok(FrobeniusPattern {
        prime: p,
        partition: factor_degree_multiset(&PolyMod::from_polyz(poly, p)),
    })
}

/// The permutation group a label names, for class weights and cycle types.
pub fn group_for_label(label: &str) -> Result<PermGroup> {
    match label {
        "C2" => perm::cyclic(2),
        "C3" => perm::cyclic(3),
        "S3" => perm::symmetric(3),
        "C4" => perm::cyclic(4),
        "K4" => PermGroup::build(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                Perm::from_cycles(4, &[&[0, 2], &[1, 3]])?,
            ],
        ),
        "D4" => perm::dihedral(4),
        "A4" => perm::alternating(4),
        "S4" => perm::symmetric(4),
        "C5" => perm::cyclic(5),
        "D5" => perm::dihedral(5),
        "A5" => perm::alternating(5),
        "S5" => perm::symmetric(5),
        other => Err(Error::Validation(format!(
            "no class data for Galois label {other}"
        ))),
    }
}

/// Cycle types of a group, merged: type -> (total members, class count).
fn merged_cycle_types(group: &PermGroup) -> BTreeMap<Vec<usize>, (usize, usize)> {
    let mut map: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for class in group.conjugacy_classes() {
        let e = map.entry(class.cycle_type.clone()).or_insert((0, 0));
        e.0 += class.size();
        e.1 += 1;
    }
    map
}

/// A class specification: a union of one or more cycle types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub types: Vec<Vec<usize>>,
}

impl ClassSpec {
    pub fn single(t: Vec<usize>) -> ClassSpec {
        ClassSpec { types: vec![t] }
    }

    fn normalized(&self) -> Vec<Vec<usize>> {
        let mut ts: Vec<Vec<usize>> = self
            .types
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.sort_unstable_by(|a, b| b.cmp(a));
                t
            })
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }
}

/// Counts unramified `p <= x` whose pattern lies in `spec`. The spec must
/// consist of cycle types realized in the labeled Galois group.
pub fn pi_class(poly: &PolyZ, spec: &ClassSpec, x: u64) -> Result<u64> {
    if x > SIEVE_CAP {
        return Err(Error::CapExceeded(format!("x > {SIEVE_CAP}")));
    }
    let label = galois_label(poly)?;
    let group = group_for_label(&label.name)?;
    let allowed = merged_cycle_types(&group);
    let wanted = spec.normalized();
    for t in &wanted {
        if !allowed.contains_key(t) {
            return Err(Error::Validation(format!(
                "cycle type {t:?} is impossible for {}",
                label.name
            )));
        }
    }
    let disc = poly.discriminant().unwrap();
    let mut count = 0u64;
    let mut sorted_wanted: Vec<Vec<usize>> = wanted;
    sorted_wanted.sort();
    sieve::for_each_prime(x, |p| {
        if disc.rem_euclid(p as i128) != 0 {
            let mut t = factor_degree_multiset(&PolyMod::from_polyz(poly, p));
            t.sort_unstable_by(|a, b| b.cmp(a));
            if sorted_wanted.binary_search(&t).is_ok() {
                count += 1;
            }
        }
    });
    Ok(count)
}

/// One merged-class row of the report at one grid point.
#[derive(Debug, Clone)]
pub struct ChebRow {
    pub x: u64,
    /// Cycle type, descending parts.
    pub class: Vec<usize>,
    /// True when several conjugacy classes share this cycle type and the
    /// count is for their union.
    pub merged: bool,
    pub count: u64,
    pub main_term: f64,
    /// `(count - main) / (x / (ln x)^2)`.
    pub normalized_error: f64,
}

/// Frobenius statistics on an ascending grid.
#[derive(Debug, Clone)]
pub struct ChebStats {
    pub label: String,
    pub group_order: usize,
    pub grid: Vec<u64>,
    pub rows: Vec<ChebRow>,
    /// Ramified primes up to each grid point.
    pub ramified: Vec<u64>,
    /// Independent total prime count at each grid point.
    pub prime_counts: Vec<u64>,
}

pub fn chebotarev_report(poly: &PolyZ, label: &str, grid: &[u64]) -> Result<ChebStats> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation("grid must be ascending and nonempty".into()));
    }
    let xmax = *grid.last().unwrap();
    if xmax > SIEVE_CAP {
        return Err(Error::CapExceeded(format!("x > {SIEVE_CAP}")));
    }
    let observed_label = galois_label(poly)?;
    if observed_label.name != label && !observed_label.heuristic {
        return Err(Error::Validation(format!(
            "label {label} does not match computed label {}",
            observed_label.name
        )));
    }
    let group = group_for_label(label)?;
    let types = merged_cycle_types(&group);
    let disc = poly.discriminant().unwrap();

    // Pattern of each prime up to xmax, computed in parallel blocks.
    let primes: Vec<u64> = {
        let mut v = Vec::new();
        sieve::for_each_prime(xmax, |p| v.push(p));
        v
    };
    #[derive(Clone)]
    enum Kind {
        Ramified,
        Class(usize),
    }
    let type_index: BTreeMap<Vec<usize>, usize> =
        types.keys().cloned().zip(0..).collect();
    let kinds: Vec<Kind> = primes
        .par_chunks(8192)
        .flat_map_iter(|chunk| {
            chunk.iter().map(|&p| {
                if disc.rem_euclid(p as i128) == 0 {
                    Ok(Kind::Ramified)
                } else {
                    let mut t = factor_degree_multiset(&PolyMod::from_polyz(poly, p));
                    t.sort_unstable_by(|a, b| b.cmp(a));
                    match type_index.get(&t) {
                        Some(&i) => Ok(Kind::Class(i)),
                        None => Err(Error::Validation(format!(
                            "pattern {t:?} at p={p} is impossible for {label}: mislabeled Galois group"
                        ))),
                    }
                }
            })
        })
        .collect::<Result<_>>()?;

    let order = group.order() as f64;
    let mut rows = Vec::new();
    let mut ramified = Vec::new();
    let mut prime_counts = Vec::new();
    let mut counts = vec![0u64; type_index.len()];
    let mut ram = 0u64;
    let mut total = 0u64;
    let mut idx = 0usize;
    for &x in grid {
        while idx < primes.len() && primes[idx] <= x {
            match kinds[idx] {
                Kind::Ramified => ram += 1,
                Kind::Class(i) => counts[i] += 1,
            }
            total += 1;
            idx += 1;
        }
        let li = sieve::li(x as f64);
        let norm = x as f64 / (x as f64).ln().powi(2);
        for (t, &(members, class_count)) in &types {
            let i = type_index[t];
            let main = members as f64 / order * li;
            rows.push(ChebRow {
                x,
                class: t.clone(),
                merged: class_count > 1,
                count: counts[i],
                main_term: main,
                normalized_error: (counts[i] as f64 - main) / norm,
            });
        }
        ramified.push(ram);
        prime_counts.push(total);
    }
    Ok(ChebStats {
        label: label.to_string(),
        group_order: group.order(),
        grid: grid.to_vec(),
        rows,
        ramified,
        prime_counts,
    })
}

impl ChebStats {
    /// CSV lines `x,class,count,main_term,normalized_error`, class rendered
    /// as parts joined by `+` with a `*` suffix on merged unions.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,class,count,main_term,normalized_error\n");
        for row in &self.rows {
            let class: Vec<String> = row.class.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!(
                "{},{}{},{},{:.6},{:.6}\n",
                row.x,
                class.join("+"),
                if row.merged { "*" } else { "" },
                row.count,
                row.main_term,
                row.normalized_error
            ));
        }
        out
    }
}

/// Split-prime counts against the discriminant-power scales.
#[derive(Debug, Clone)]
pub struct CorollaryReport {
    pub abs_disc: u128,
    pub sigma: f64,
    pub threshold: u64,
    /// Completely split primes up to `|D|^sigma`.
    pub split_count: u64,
    /// `|D|^sigma / log(|D|^sigma)`, the density-level target.
    pub lower_target: f64,
    /// Whether a completely split prime exists in `(|D|^sigma, 2|D|^sigma]`.
    pub dyadic_found: bool,
}

pub fn corollary_checks(poly: &PolyZ, sigma: f64) -> Result<CorollaryReport> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::Validation("need 0 < sigma <= 1".into()));
    }
    let disc = poly
        .discriminant()
        .ok_or_else(|| Error::Validation("discriminant overflow".into()))?;
    let abs = disc.unsigned_abs();
    let scale = (abs as f64).powf(sigma);
    if !(scale.is_finite() && 2.0 * scale <= SIEVE_CAP as f64) {
        return Err(Error::CapExceeded("|D|^sigma beyond sieve cap".into()));
    }
    let threshold = scale.floor() as u64;
    let n = poly.degree();
    let split: Vec<usize> = vec![1; n];
    let mut split_count = 0u64;
    let mut dyadic_found = false;
    sieve::for_each_prime(2 * threshold, |p| {
        if disc.rem_euclid(p as i128) != 0 {
            let t = factor_degree_multiset(&PolyMod::from_polyz(poly, p));
            if t == split {
                if p <= threshold {
                    split_count += 1;
                } else {
                    dyadic_found = true;
                }
            }
        }
    });
    Ok(CorollaryReport {
        abs_disc: abs,
        sigma,
        threshold,
        split_count,
        lower_target: if threshold >= 2 {
            scale / scale.ln()
        } else {
            0.0
        },
        dyadic_found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> PolyZ {
        PolyZ::monic(&[-1, -1, 0])
    }

    #[test]
    fn pattern_examples() {
        let p = frobenius_pattern(&cubic(), 5).unwrap();
        assert_eq!(p.partition, vec![1, 2]);
        let q = frobenius_pattern(&PolyZ::monic(&[1, 0]), 13).unwrap();
        assert_eq!(q.partition, vec![1, 1]);
        assert!(matches!(
            frobenius_pattern(&cubic(), 23),
            Err(Error::RamifiedPrime(23))
        ));
    }

    #[test]
    fn pi_class_examples() {
        // Split primes of Q(i) up to 100: the eleven p = 1 mod 4.
        let split = ClassSpec::single(vec![1, 1]);
        assert_eq!(pi_class(&PolyZ::monic(&[1, 0]), &split, 100).unwrap(), 11);
        // First totally split prime of x^3 - x - 1 is 59.
        let split3 = ClassSpec::single(vec![1, 1, 1]);
        assert_eq!(pi_class(&cubic(), &split3, 60).unwrap(), 1);
        assert_eq!(pi_class(&cubic(), &split3, 58).unwrap(), 0);
        // x = 2 with 2 unramified but nothing split.
        assert_eq!(pi_class(&PolyZ::monic(&[1, 1]), &ClassSpec::single(vec![1, 1]), 2).unwrap(), 0);
    }

    #[test]
    fn pi_class_rejects_impossible_type() {
        // A C3 cubic never shows pattern {1,2}.
        let c3 = PolyZ::monic(&[-1, -2, 1]);
        let r = pi_class(&c3, &ClassSpec::single(vec![2, 1]), 100);
        assert!(r.is_err());
    }

    #[test]
    fn pi_class_additive_over_disjoint_specs() {
        let f = cubic();
        let x = 2000;
        let a = pi_class(&f, &ClassSpec::single(vec![1, 1, 1]), x).unwrap();
        let b = pi_class(&f, &ClassSpec::single(vec![2, 1]), x).unwrap();
        let c = pi_class(&f, &ClassSpec::single(vec![3]), x).unwrap();
        let all = pi_class(
            &f,
            &ClassSpec {
                types: vec![vec![1, 1, 1], vec![2, 1], vec![3]],
            },
            x,
        )
        .unwrap();
        assert_eq!(a + b + c, all);
        // And the union of everything accounts for every unramified prime.
        let ram = 1; // only 23 ramifies
        assert_eq!(all + ram, sieve::prime_count(x));
    }

    #[test]
    fn report_consistency() {
        let grid = [100, 1000, 10_000];
        let stats = chebotarev_report(&cubic(), "S3", &grid).unwrap();
        // Sum over classes + ramified = pi(x) at every grid point.
        for (k, &x) in grid.iter().enumerate() {
            let class_sum: u64 = stats
                .rows
                .iter()
                .filter(|r| r.x == x)
                .map(|r| r.count)
                .sum();
            assert_eq!(class_sum + stats.ramified[k], stats.prime_counts[k]);
            assert_eq!(stats.prime_counts[k], sieve::prime_count(x));
        }
    }

    #[test]
    fn report_catches_mislabel() {
        // A C3 claim on an S3 field trips on the first {1,2} pattern.
        let r = chebotarev_report(&cubic(), "C3", &[100]);
        assert!(r.is_err());
    }

    #[test]
    fn split_count_at_1e4_for_gaussian_field() {
        let split = ClassSpec::single(vec![1, 1]);
        assert_eq!(
            pi_class(&PolyZ::monic(&[1, 0]), &split, 10_000).unwrap(),
            609
        );
    }

    #[test]
    fn corollary_examples() {
        // x^3 - x - 1: no split prime up to 23.
        let r = corollary_checks(&cubic(), 1.0).unwrap();
        assert_eq!(r.split_count, 0);
        assert!(!r.dyadic_found); // 59 > 46

        // x^2 + 1: |D| = 4, split primes <= 4: none; (4, 8] contains 5.
        let r = corollary_checks(&PolyZ::monic(&[1, 0]), 1.0).unwrap();
        assert_eq!(r.split_count, 0);
        assert!(r.dyadic_found);

        // Tiny sigma: threshold below 2 counts nothing.
        let r = corollary_checks(&cubic(), 0.1).unwrap();
        assert_eq!(r.split_count, 0);
    }

    #[test]
    fn c3_cubics_never_show_a_transposition() {
        let c3 = PolyZ::monic(&[-1, -2, 1]);
        let stats = chebotarev_report(&c3, "C3", &[10_000]).unwrap();
        assert!(stats.rows.iter().all(|r| r.class != vec![2, 1]));
    }
}
