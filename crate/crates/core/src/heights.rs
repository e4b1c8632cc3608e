//! Absolute multiplicative Weil heights through Mahler measures, and the
//! search for small generators of a number field with the classical
//! two-sided height bounds checked on every candidate.

use crate::fields::FieldRecord;
use crate::polyz::PolyZ;
use crate::roots::mahler_measure;
use crate::{Error, Result};
use rayon::prelude::*;

/// Weil height of an algebraic number given by its minimal polynomial
/// (primitive integer coefficients, positive leading coefficient):
/// the degree-th root of the Mahler measure.
pub fn weil_height(min_poly: &PolyZ) -> Result<f64> {
    let n = min_poly.degree();
    if n < 1 {
        return Err(Error::Validation("degree must be >= 1".into()));
    }
    if min_poly.leading() <= 0 {
        return Err(Error::Validation("leading coefficient must be positive".into()));
    }
    if min_poly.content() != 1 {
        return Err(Error::Validation("polynomial must be primitive".into()));
    }
    if n >= 2 && !monicized(min_poly).is_irreducible_monic() {
        return Err(Error::Validation("polynomial is reducible".into()));
    }
    Ok(height_unchecked(min_poly))
}

fn height_unchecked(min_poly: &PolyZ) -> f64 {
    mahler_measure(min_poly).powf(1.0 / min_poly.degree() as f64)
}

/// `lead^(deg-1) f(x/lead)`: monic with the roots scaled by `lead`;
/// irreducibility transfers.
fn monicized(f: &PolyZ) -> PolyZ {
    let lead = f.leading();
    if lead == 1 {
        return f.clone();
    }
    let n = f.degree();
    let mut coeffs = Vec::with_capacity(n + 1);
    for (i, &c) in f.coeffs().iter().enumerate() {
        if i == n {
            coeffs.push(1);
        } else {
            // coefficient of x^i picks up lead^(n-1-i)
            let mut v = c;
            for _ in 0..(n - 1 - i) {
                v *= lead;
            }
            coeffs.push(v);
        }
    }
    PolyZ::new(coeffs)
}

/// One evaluated generator candidate.
#[derive(Debug, Clone)]
pub struct GeneratorCandidate {
    /// `alpha = sum coeffs[i] theta^i`.
    pub coeffs: Vec<i128>,
    pub min_poly: PolyZ,
    pub height: f64,
    /// `H <= 2 |D|^(1/(2n))`.
    pub ruppert_weak_ok: bool,
    /// `H >= n^(-1/(2(n-1))) |D|^(1/(2n(n-1)))` (must hold for every
    /// generator).
    pub silverman_ok: bool,
    /// Within relative `1e-9` of the Silverman floor.
    pub silverman_boundary: bool,
}

#[derive(Debug, Clone)]
pub struct GeneratorSearch {
    /// Minimal-height generator in the box (lexicographically least
    /// coefficient vector on ties).
    pub best: GeneratorCandidate,
    pub generators_evaluated: usize,
    /// Every evaluated generator satisfied the Silverman floor.
    pub silverman_all_ok: bool,
    pub silverman_floor: f64,
    pub ruppert_bound: f64,
}

/// Searches `alpha = sum a_i theta^i` over `|a_i| <= search_height` for the
/// smallest-height generator of the field. Minimal polynomials are computed
/// by exact integer arithmetic (traces of powers in `Z[x]/(f)`).
pub fn small_generator(field: &FieldRecord, search_height: i128) -> Result<GeneratorSearch> {
    let n = field.degree;
    if !(2..=5).contains(&n) {
        return Err(Error::Validation("field degree must be 2..=5".into()));
    }
    if !field.poly.is_monic() || field.poly.degree() != n {
        return Err(Error::Validation("defining polynomial must be monic of the field degree".into()));
    }
    if search_height < 1 {
        return Err(Error::Validation("search height must be >= 1".into()));
    }
    let abs_disc = field.disc.unsigned_abs() as f64;
    let nf = n as f64;
    let silverman_floor = nf.powf(-1.0 / (2.0 * (nf - 1.0))) * abs_disc.powf(1.0 / (2.0 * nf * (nf - 1.0)));
    let ruppert_bound = 2.0 * abs_disc.powf(1.0 / (2.0 * nf));

    let width = (2 * search_height + 1) as u64;
    let total: u64 = width.pow(n as u32);
    let f = field.poly.clone();
    let candidates: Vec<GeneratorCandidate> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rem = idx;
            let mut coeffs = Vec::with_capacity(n);
            for _ in 0..n {
                coeffs.push((rem % width) as i128 - search_height);
                rem /= width;
            }
            let char_poly = char_poly_exact(&f, &coeffs)?;
            // Generator exactly when the characteristic polynomial is
            // squarefree (then it is the degree-n minimal polynomial).
            match char_poly.discriminant() {
                Some(0) | None => return None,
                Some(_) => {}
            }
            let height = height_unchecked(&char_poly);
            let silverman_gap = height - silverman_floor;
            Some(GeneratorCandidate {
                coeffs,
                min_poly: char_poly,
                height,
                ruppert_weak_ok: height <= ruppert_bound * (1.0 + 1e-9),
                silverman_ok: silverman_gap >= -1e-9 * silverman_floor.max(1.0),
                silverman_boundary: silverman_gap.abs() <= 1e-9 * silverman_floor.max(1.0),
            })
        })
        .collect();

    if candidates.is_empty() {
        return Err(Error::SearchExhausted(
            "no generator in the search box".into(),
        ));
    }
    let silverman_all_ok = candidates.iter().all(|c| c.silverman_ok);
    let generators_evaluated = candidates.len();
    let best = candidates
        .into_iter()
        .min_by(|a, b| {
            a.height
                .partial_cmp(&b.height)
                .unwrap()
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        })
        .unwrap();
    Ok(GeneratorSearch {
        best,
        generators_evaluated,
        silverman_all_ok,
        silverman_floor,
        ruppert_bound,
    })
}

/// Characteristic polynomial of multiplication by `g(theta)` on
/// `Z[x]/(f)`, by exact traces and Newton's identities. `None` on (very
/// unlikely) i128 overflow.
pub fn char_poly_exact(f: &PolyZ, g_coeffs: &[i128]) -> Option<PolyZ> {
    let n = f.degree();
    // Power sums of the roots of f, p_0..p_n, by Newton from coefficients.
    let a = f.coeffs(); // a[n] = 1
    let mut psums = vec![0i128; 2 * n + 1];
    psums[0] = n as i128;
    for k in 1..=2 * n {
        // p_k = -k a_{n-k} - sum_{i=1}^{k-1} a_{n-i} p_{k-i}, a_j = 0 for j < 0.
        let mut s: i128 = 0;
        for i in 1..k {
            if n >= i {
                s = s.checked_add(a[n - i].checked_mul(psums[k - i])?)?;
            }
        }
        let lead_term = if n >= k {
            (k as i128).checked_mul(a[n - k])?
        } else {
            0
        };
        psums[k] = lead_term.checked_neg()?.checked_sub(s)?;
    }
    // Trace of an element v (deg < n after reduction): extend power sums as
    // needed via products in Z[x]/(f).
    let reduce = |v: &mut Vec<i128>| -> Option<()> {
        while v.len() > n {
            let k = v.len() - 1;
            let c = v[k];
            if c != 0 {
                for (j, &fc) in a.iter().enumerate().take(n) {
                    let idx = k - n + j;
                    v[idx] = v[idx].checked_sub(c.checked_mul(fc)?)?;
                }
            }
            v.pop();
        }
        Some(())
    };
    let mult = |u: &[i128], w: &[i128]| -> Option<Vec<i128>> {
        let mut out = vec![0i128; u.len() + w.len() - 1];
        for (i, &x) in u.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in w.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
        reduce(&mut out)?;
        Some(out)
    };
    let trace = |v: &[i128]| -> Option<i128> {
        let mut t: i128 = 0;
        for (i, &c) in v.iter().enumerate() {
            t = t.checked_add(c.checked_mul(psums[i])?)?;
        }
        Some(t)
    };

    let g: Vec<i128> = g_coeffs.to_vec();
    let mut power = vec![1i128]; // g^0
    let mut traces = vec![0i128; n + 1];
    traces[0] = n as i128;
    for j in 1..=n {
        power = mult(&power, &g)?;
        traces[j] = trace(&power)?;
    }
    // Newton: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} t_i.
    let mut e = vec![0i128; n + 1];
    e[0] = 1;
    for k in 1..=n {
        let mut s: i128 = 0;
        for i in 1..=k {
            let term = e[k - i].checked_mul(traces[i])?;
            if i % 2 == 1 {
                s = s.checked_add(term)?;
            } else {
                s = s.checked_sub(term)?;
            }
        }
        debug_assert_eq!(s % k as i128, 0, "Newton division must be exact");
        e[k] = s / k as i128;
    }
    // char = x^n - e1 x^(n-1) + e2 x^(n-2) - ...
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    for k in 1..=n {
        coeffs[n - k] = if k % 2 == 0 { e[k] } else { -e[k] };
    }
    Some(PolyZ::new(coeffs))
}
