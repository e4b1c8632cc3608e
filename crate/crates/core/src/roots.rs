//! Simultaneous (deflation-free) complex root finding for integer
//! polynomials, with residual-certified accuracy; feeds Mahler measures and
//! signature counts.

use crate::polyz::PolyZ;
use num_complex::Complex64;

/// All complex roots of a squarefree polynomial, by Aberth-Ehrlich
/// iteration. Residuals are driven to near machine precision; callers get
/// roots accurate to well within `1e-10` relative for the small polynomials
/// used here.
pub fn complex_roots(f: &PolyZ) -> Vec<Complex64> {
    let coeffs: Vec<f64> = f.coeffs().iter().map(|&c| c as f64).collect();
    let n = coeffs.len() - 1;
    assert!(n >= 1, "degree must be >= 1");
    let lead = coeffs[n];

    // Cauchy bound for the root radius.
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0f64, f64::max);

    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.354) / n as f64 + 0.7;
            Complex64::from_polar(radius * (0.6 + 0.4 * ((k % 3) as f64) / 3.0), theta)
        })
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    let scale = |x: Complex64| -> f64 {
        let ax = x.norm().max(1e-300);
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * ax.powi(i as i32))
            .sum::<f64>()
            .max(1e-300)
    };

    for _ in 0..400 {
        let mut max_resid = 0.0f64;
        let mut next = z.clone();
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            let resid = p.norm() / scale(z[k]);
            max_resid = max_resid.max(resid);
            if resid < 1e-16 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut repulse = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != k {
                    let d = z[k] - zj;
                    if d.norm() > 1e-300 {
                        repulse += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulse;
            let step = if denom.norm() > 1e-12 {
                newton / denom
            } else {
                newton
            };
            next[k] = z[k] - step;
        }
        z = next;
        if max_resid < 1e-15 {
            break;
        }
    }

    // Newton polish.
    for zk in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = eval(*zk);
            if dp.norm() > 0.0 {
                *zk -= p / dp;
            }
        }
    }

    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    z
}

/// Largest relative residual of the computed roots; callers may assert this
/// is below their certification threshold.
pub fn max_relative_residual(f: &PolyZ, roots: &[Complex64]) -> f64 {
    let coeffs: Vec<f64> = f.coeffs().iter().map(|&c| c as f64).collect();
    roots
        .iter()
        .map(|&z| {
            let mut p = Complex64::new(0.0, 0.0);
            for &c in coeffs.iter().rev() {
                p = p * z + c;
            }
            let ax = z.norm().max(1.0);
            let s: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.abs() * ax.powi(i as i32))
                .sum();
            p.norm() / s.max(1e-300)
        })
        .fold(0.0, f64::max)
}

/// Mahler measure `|lead| * prod max(1, |root|)`.
pub fn mahler_measure(f: &PolyZ) -> f64 {
    let roots = complex_roots(f);
    let mut m = f.leading().unsigned_abs() as f64;
    for z in roots {
        let r = z.norm();
        if r > 1.0 {
            m *= r;
        }
    }
    m
}

/// Signature `(r1, r2)` of a squarefree polynomial: real roots and conjugate
/// pairs, counted numerically.
pub fn signature(f: &PolyZ) -> (usize, usize) {
    let roots = complex_roots(f);
    let real = roots
        .iter()
        .filter(|z| z.im.abs() < 1e-7 * (1.0 + z.norm()))
        .count();
    (real, (roots.len() - real) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        let f = PolyZ::new(vec![-1, -1, 1]); // x^2 - x - 1
        let roots = complex_roots(&f);
        assert_eq!(roots.len(), 2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(roots.iter().any(|z| (z.re - phi).abs() < 1e-10));
        assert!(roots.iter().any(|z| (z.re + 1.0 / phi).abs() < 1e-10));
    }

    #[test]
    fn mahler_of_golden_ratio_poly() {
        let f = PolyZ::new(vec![-1, -1, 1]); // x^2 - x - 1
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((mahler_measure(&f) - phi).abs() < 1e-10);
    }

    #[test]
    fn mahler_of_cyclotomic_is_one() {
        let f = PolyZ::new(vec![1, 1, 1]); // x^2 + x + 1
        assert!((mahler_measure(&f) - 1.0).abs() < 1e-10);
        let g = PolyZ::new(vec![1, 0, 0, 0, 1]); // x^4 + 1
        assert!((mahler_measure(&g) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&PolyZ::new(vec![-1, -1, 0, 1])), (1, 1)); // x^3-x-1
        assert_eq!(signature(&PolyZ::new(vec![-1, -2, 1, 1])), (3, 0)); // x^3+x^2-2x-1
        assert_eq!(signature(&PolyZ::new(vec![1, 0, 1])), (0, 1)); // x^2+1
        assert_eq!(signature(&PolyZ::new(vec![1, 0, 0, 0, 1])), (0, 2)); // x^4+1
        assert_eq!(signature(&PolyZ::new(vec![-1, -1, 0, 0, 0, 1])), (1, 2)); // x^5-x-1
    }

    #[test]
    fn residuals_are_certified_small() {
        for low in [
            vec![-23i128, 5, -1, 7],
            vec![3, -11, 0, 2, 1],
            vec![-1, -1, 0, 0, 0],
        ] {
            let f = PolyZ::monic(&low);
            let roots = complex_roots(&f);
            assert!(max_relative_residual(&f, &roots) < 1e-12);
        }
    }

    #[test]
    fn high_multiplicity_free_quintics() {
        // Roots of x^5 - 1 are the fifth roots of unity.
        let f = PolyZ::monic(&[-1, 0, 0, 0, 0]);
        let roots = complex_roots(&f);
        for z in roots {
            assert!((z.norm() - 1.0).abs() < 1e-10);
        }
    }
}
