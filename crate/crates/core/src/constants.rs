//! The explicit-constants pipeline: the zero-density width parameter, the
//! family budget arithmetic behind it, prime-counting validity thresholds
//! and x-ranges, closed-form bound evaluators, and a numerical audit that
//! the thresholds really do force every error term under its target.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Per-family configuration: group data, count exponents, and the absolute
/// constants left unevaluated by the underlying bounds (placeholders are
/// echoed in every report).
#[derive(Debug, Clone)]
pub struct FamilyConfig {
    pub name: String,
    /// Degree of the family fields.
    pub n: u32,
    pub group_order: u32,
    /// Maximum dimension of an irreducible representation of the group.
    pub m: u32,
    /// Upper count exponent for the family.
    pub d: BigRational,
    /// Fixed-field multiplicity exponent.
    pub tau: BigRational,
    /// Lower count exponent (the zero-density comparison point).
    pub beta: BigRational,
    pub eps0: BigRational,
    /// `A >= 2`, the log-power in the error target.
    pub a_param: u32,
    /// Base-field data; degree 1 with unit discriminant means the rationals.
    pub n_k: u32,
    pub d_k: f64,
    pub c_k: f64,
    /// Zero-free-region constant for the Riemann zeta function.
    pub c_q: f64,
    /// Absolute-constant placeholders (not ground truth).
    pub c1_abs: f64,
    pub c2_abs: f64,
    pub c5_abs: f64,
    pub c6_abs: f64,
    pub c0_abs: f64,
}

/// Conventional placeholder for the zeta zero-free-region constant.
pub const C_Q_DEFAULT: f64 = 1.0 / 57.54;

impl FamilyConfig {
    pub fn with_defaults(
        name: &str,
        n: u32,
        group_order: u32,
        m: u32,
        d: BigRational,
        tau: BigRational,
        beta: BigRational,
    ) -> FamilyConfig {
        FamilyConfig {
            name: name.to_string(),
            n,
            group_order,
            m,
            d,
            tau,
            beta,
            eps0: rat(1, 10),
            a_param: 2,
            n_k: 1,
            d_k: 1.0,
            c_k: C_Q_DEFAULT,
            c_q: C_Q_DEFAULT,
            c1_abs: 1.0,
            c2_abs: 1.0,
            c5_abs: 1.0,
            c6_abs: 1.0,
            c0_abs: 1.0,
        }
    }

    /// Named family presets with their proved count exponents.
    pub fn preset(name: &str) -> Result<FamilyConfig> {
        let cfg = match name {
            "s3" => FamilyConfig::with_defaults("s3", 3, 6, 2, rat_int(1), rat(1, 3), rat_int(1)),
            "s4" => FamilyConfig::with_defaults("s4", 4, 24, 3, rat_int(1), rat(1, 2), rat_int(1)),
            "c3" => FamilyConfig::with_defaults("c3", 3, 3, 1, rat(1, 2), rat_int(0), rat(1, 2)),
            "d5" => FamilyConfig::with_defaults("d5", 5, 10, 2, rat(7, 10), rat(1, 4), rat(1, 2)),
            "a4" => {
                FamilyConfig::with_defaults("a4", 4, 12, 3, rat(5, 6), rat(174, 625), rat(1, 2))
            }
            other => {
                return Err(Error::Validation(format!(
                    "unknown preset {other} (expected s3, s4, c3, d5, a4)"
                )))
            }
        };
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps0 <= rat_int(0)
            || self.eps0 > rat(1, 2).min(self.d.clone() / rat_int(4))
        {
            return Err(Error::Validation(
                "need 0 < eps0 <= min(1/2, d/4)".into(),
            ));
        }
        if self.tau >= self.d {
            return Err(Error::Infeasible(
                "multiplicity exponent must stay below the count exponent".into(),
            ));
        }
        if self.a_param < 2 {
            return Err(Error::Validation("need A >= 2".into()));
        }
        if self.n_k < 1 || self.d_k < 1.0 || self.c_k <= 0.0 || self.c_q <= 0.0 {
            return Err(Error::Validation("base-field data out of range".into()));
        }
        Ok(())
    }

    pub fn degree_over_q(&self) -> u32 {
        self.n_k * self.group_order
    }

    pub fn base_is_q(&self) -> bool {
        self.n_k == 1 && self.d_k == 1.0
    }
}

/// Width of the zero-free box: `eps0 / (5 m |G|/2 + 2 d + 4 eps0)`, exact.
pub fn delta_of(eps0: &BigRational, m: u32, group_order: u32, d: &BigRational) -> BigRational {
    let denom = rat(5, 2) * rat_int(m as i64) * rat_int(group_order as i64)
        + rat_int(2) * d.clone()
        + rat_int(4) * eps0.clone();
    eps0.clone() / denom
}

/// Zero-density budget bookkeeping for one family of L-functions.
#[derive(Debug, Clone)]
pub struct KmBudget {
    /// `5 m A / 2 + d`.
    pub c0_base: BigRational,
    /// `c0_base + eps0`.
    pub c0: BigRational,
    /// `1 - tau/d - eps0/(2d)`.
    pub delta_cap: BigRational,
    pub eta: BigRational,
    /// Zero-counting line; at least 3/4.
    pub alpha: BigRational,
    /// `1 - alpha`.
    pub delta: BigRational,
    /// `(1 - (1 - eta) delta_cap) d`, the exact exceptional-set exponent.
    pub exceptional_exact: BigRational,
    /// `tau + eps0`, the reported bound.
    pub exceptional_bound: BigRational,
}

/// Budget arithmetic: conductor exponent `a`, count exponent `d`,
/// multiplicity exponent `tau`. `eta` defaults to `eps0/(2d)` when `None`.
pub fn km_budget(
    m: &BigRational,
    a: &BigRational,
    d: &BigRational,
    tau: &BigRational,
    eps0: &BigRational,
    eta: Option<&BigRational>,
) -> Result<KmBudget> {
    if tau >= d {
        return Err(Error::Infeasible(
            "budget infeasible: tau >= d leaves no zero-density margin".into(),
        ));
    }
    if eps0 <= &rat_int(0) {
        return Err(Error::Validation("eps0 must be positive".into()));
    }
    let eta = match eta {
        Some(e) => e.clone(),
        None => eps0 / (rat_int(2) * d.clone()),
    };
    if eta <= rat_int(0) || eta >= rat(1, 4) {
        return Err(Error::Validation("need 0 < eta < 1/4".into()));
    }
    let c0_base = rat(5, 2) * m.clone() * a.clone() + d.clone();
    let c0 = c0_base.clone() + eps0.clone();
    let delta_cap = rat_int(1) - tau / d - eps0 / (rat_int(2) * d.clone());
    // (1 - delta_cap) d - tau; equals eps0/2 with the imposed delta_cap.
    let gap = (rat_int(1) - delta_cap.clone()) * d.clone() - tau.clone();
    debug_assert_eq!(gap, eps0 / rat_int(2));
    if c0 < rat_int(2) * gap.clone() {
        return Err(Error::Infeasible("alpha < 3/4: c0 too small".into()));
    }
    let alpha = (c0.clone() + gap.clone()) / (c0.clone() + rat_int(2) * gap.clone());
    let delta = rat_int(1) - alpha.clone();
    let exceptional_exact =
        (rat_int(1) - (rat_int(1) - eta.clone()) * delta_cap.clone()) * d.clone();
    Ok(KmBudget {
        c0_base,
        c0,
        delta_cap,
        eta,
        alpha,
        delta,
        exceptional_exact,
        exceptional_bound: tau.clone() + eps0.clone(),
    })
}

/// The `delta` a family configuration induces (conductor exponent `|G|/2`).
pub fn family_delta(config: &FamilyConfig) -> Result<BigRational> {
    config.validate()?;
    Ok(delta_of(
        &config.eps0,
        config.m,
        config.group_order,
        &config.d,
    ))
}

/// Explicit prime-counting parameters for one configuration and width.
#[derive(Debug, Clone)]
pub struct ChebParams {
    /// `ln nu1` (the constant itself overflows any float).
    pub nu1_ln: f64,
    pub nu2: f64,
    pub nu3: f64,
    /// Height at which the base-field zero-free region meets the box line.
    pub t0: f64,
    /// `c0 = 1/(2^(A+3) + 8)`, exact.
    pub c0_choice: BigRational,
    /// `c1 = c0/(6 C5 C6)` and `c1' = c0/(12 C5)`.
    pub c1: f64,
    pub c1_prime: f64,
    pub base_is_q: bool,
    delta: f64,
    delta0: f64,
    a_param: u32,
    n_l: f64,
}

/// Builds the parameter set; requires `delta <= 1/(2A)` and
/// `delta0 <= delta`.
pub fn cheb_params(
    config: &FamilyConfig,
    delta: &BigRational,
    delta0: &BigRational,
) -> Result<ChebParams> {
    config.validate()?;
    let a = config.a_param;
    if delta.clone() * rat_int(2 * a as i64) > rat_int(1) {
        return Err(Error::Validation(
            "hypothesis delta <= 1/(2A) fails".into(),
        ));
    }
    if delta0 > delta || delta0 <= &rat_int(0) {
        return Err(Error::Validation("need 0 < delta0 <= delta".into()));
    }
    let dl = delta.to_f64().unwrap();
    let dl0 = delta0.to_f64().unwrap();
    let n_l = config.degree_over_q() as f64;
    let g = config.group_order as f64;
    let af = a as f64;

    // c0 = (2^(A+3) + 8)^(-1).
    let c0_choice = BigRational::new(
        BigInt::one(),
        BigInt::from(2u64).pow(a + 3) + BigInt::from(8),
    );
    let c0 = c0_choice.to_f64().unwrap();
    let c1 = c0 / (6.0 * config.c5_abs * config.c6_abs);
    let c1_prime = c0 / (12.0 * config.c5_abs);

    // nu1 = c0^-1 (6 (c0/(12 C5 C6))^-1 |G| 10^(A-1) n_L^A)^(1/delta0)
    //       * delta^(-2/delta0), carried in logs.
    let inner = (6.0 * (12.0 * config.c5_abs * config.c6_abs / c0) * g).ln()
        + (af - 1.0) * 10f64.ln()
        + af * n_l.ln();
    let nu1_ln = -c0.ln() + inner / dl0 + (2.0 / dl0) * (1.0 / dl).ln();

    // nu2 = max(2A/delta0, 4A c_k^-1 n_k^3 / delta) + 2A.
    let nk = config.n_k as f64;
    let nu2 = (2.0 * af / dl0).max(4.0 * af * nk.powi(3) / (config.c_k * dl)) + 2.0 * af;

    // nu3 = 6 (12 C5/c0)^(1/(2A+1)) (12 C5 C6/c0)^(1/(2A)) D_k n_L delta^(-1/A).
    let nu3 = 6.0
        * (12.0 * config.c5_abs / c0).powf(1.0 / (2.0 * af + 1.0))
        * (12.0 * config.c5_abs * config.c6_abs / c0).powf(1.0 / (2.0 * af))
        * config.d_k
        * n_l
        * dl.powf(-1.0 / af);

    let t0 = if config.base_is_q() {
        t0_vinogradov_korobov(config.c_q, dl0)
    } else {
        config.d_k.powf(-1.0 / nk) * (config.c_k / (dl0 * nk.powi(3))).exp() - 3.0
    };

    Ok(ChebParams {
        nu1_ln,
        nu2,
        nu3,
        t0: t0.max(0.0),
        c0_choice,
        c1,
        c1_prime,
        base_is_q: config.base_is_q(),
        delta: dl,
        delta0: dl0,
        a_param: a,
        n_l,
    })
}

/// Height where the Vinogradov-Korobov curve meets `Re(s) = 1 - delta0`.
fn t0_vinogradov_korobov(c_q: f64, delta0: f64) -> f64 {
    let width = |t: f64| c_q / ((t + 2.0).ln().powf(2.0 / 3.0) * (t + 3.0).ln().ln().powf(1.0 / 3.0));
    if width(0.0) <= delta0 {
        return 0.0;
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while width(hi) > delta0 {
        hi *= 2.0;
        if hi > 1e300 {
            return f64::INFINITY;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if width(mid) > delta0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl ChebParams {
    /// `ln x0(D_L)` from `ln D_L`; the rationals base field uses the
    /// `(log log)^{5/3} (log log log)^{1/3}` shape, other base fields the
    /// squared shape.
    pub fn ln_x0(&self, ln_dl: f64) -> f64 {
        assert!(ln_dl > 1.0, "need D_L > e");
        let loglog_nu3 = (self.nu3 * ln_dl).ln();
        if self.base_is_q {
            let logloglog2 = (2.0 * ln_dl).ln().ln();
            self.nu1_ln + self.nu2 * loglog_nu3.powf(5.0 / 3.0) * logloglog2.powf(1.0 / 3.0)
        } else {
            self.nu1_ln + self.nu2 * loglog_nu3 * loglog_nu3
        }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    pub fn a_param(&self) -> u32 {
        self.a_param
    }

    pub fn n_l(&self) -> f64 {
        self.n_l
    }
}

/// A possibly astronomically large threshold, carried as `ln ln` of its
/// value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Magnitude {
    pub ln_ln: f64,
}

impl Magnitude {
    pub fn from_ln(ln_value: f64) -> Magnitude {
        Magnitude {
            ln_ln: ln_value.max(1e-300).ln(),
        }
    }

    /// `log10` of the value; `inf` when it exceeds float range.
    pub fn log10(&self) -> f64 {
        (self.ln_ln.exp() / std::f64::consts::LN_10).min(f64::INFINITY)
    }

    pub fn ln(&self) -> f64 {
        self.ln_ln.exp()
    }
}

/// Validity thresholds for the discriminant, all in nested-log form.
#[derive(Debug, Clone)]
pub struct Thresholds {
    /// Zero-free-region geometry threshold (tower for the rational base).
    pub d0_prime: Magnitude,
    /// No-exceptional-zero threshold `max(4, exp(1/(4 delta0)))`.
    pub d1: Magnitude,
    /// Large-x error-domination threshold.
    pub d1_prime: Magnitude,
    /// Small-x error-term threshold (worst of the three term conditions).
    pub d2: Magnitude,
}

impl Thresholds {
    pub fn max_ln(&self) -> f64 {
        self.d1
            .ln()
            .max(self.d1_prime.ln())
            .max(self.d2.ln())
    }
}

pub fn thresholds(
    config: &FamilyConfig,
    delta: &BigRational,
    delta0: &BigRational,
) -> Result<Thresholds> {
    config.validate()?;
    let a = config.a_param as f64;
    let dl = delta.to_f64().unwrap();
    let dl0 = delta0.to_f64().unwrap();
    if delta.clone() * rat_int(2 * config.a_param as i64 + 1) >= rat_int(2) {
        return Err(Error::Infeasible(
            "delta >= 2/(2A+1): error-term thresholds do not exist".into(),
        ));
    }
    let g = config.group_order as f64;
    let n_l = config.degree_over_q() as f64;

    let d0_prime = if config.base_is_q() {
        // ln ln D0' = ln[(2/delta) * exp(c_Q/delta)] = ln(2/delta) + c_Q/delta
        Magnitude {
            ln_ln: (2.0 / dl).ln() + config.c_q / dl,
        }
    } else {
        Magnitude { ln_ln: config.c_k }
    };

    let d1 = Magnitude::from_ln((4f64.ln()).max(1.0 / (4.0 * dl0)));

    // D1': smallest D with D >= c2 (ln D)^gamma, where
    // gamma = 2A/(C2 sqrt(10)), c2 = (c1^(-1/(2A)) (10 n_L)^(1/2))^gamma,
    // and c1 = 1/(|G| C1) is the worst-class choice.
    let gamma = 2.0 * a / (config.c2_abs * 10f64.sqrt());
    let ln_c1 = -(g * config.c1_abs).ln();
    let ln_c2 = gamma * (-ln_c1 / (2.0 * a) + 0.5 * (10.0 * n_l).ln());
    let d1_prime = Magnitude::from_ln(solve_u_equals(ln_c2, gamma));

    // D2: worst of the three error-term conditions.
    let c0 = 1.0 / (2f64.powf(a + 3.0) + 8.0);
    let c1p = c0 / (12.0 * config.c5_abs);
    let e1a = ((1.0 / c1p) * g * (10.0 * n_l).powf(a)).powf(1.0 / (2.0 / dl - 2.0 * a - 1.0));
    let e1b = (2.0 * 10f64.powf(a) * n_l.powf(a + 1.0) * g / c1p)
        .powf(1.0 / (2.0 / dl - 2.0 * a - 1.0));
    let e2b = (10f64.powf(a + 1.0) * n_l.powf(a + 2.0) * g / c1p)
        .powf(1.0 / (2.0 / dl - 2.0 * (a + 1.0)));
    let d2 = Magnitude::from_ln(e1a.max(e1b).max(e2b));

    Ok(Thresholds {
        d0_prime,
        d1,
        d1_prime,
        d2,
    })
}

/// Smallest `u >= e` with `u >= ln_c2 + gamma ln u` for all larger `u`.
fn solve_u_equals(ln_c2: f64, gamma: f64) -> f64 {
    let mut u = (ln_c2.max(1.0) + 1.0).max(std::f64::consts::E);
    for _ in 0..500 {
        let next = (ln_c2 + gamma * u.ln()).max(std::f64::consts::E);
        if (next - u).abs() < 1e-12 * u.abs() {
            break;
        }
        u = 0.5 * (u + next).max(next);
    }
    // Walk upward until the inequality holds with margin.
    while u < 1e290 && u < ln_c2 + gamma * u.ln() {
        u *= 1.5;
    }
    u
}

/// Closed-form bound evaluators.
#[derive(Debug, Clone)]
pub enum BoundKind {
    /// Conditional effective bound `C0 (|C|/|G|) x^(1/2) ln(D_L x^(n_L))`.
    TheoremA {
        c0_abs: f64,
        class_fraction: f64,
        x: f64,
        ln_dl: f64,
        n_l: f64,
    },
    /// Unconditional error with a possible real zero `beta0`:
    /// `(|C|/|G|) Li(x^beta0) + C1 x exp(-C2 n_L^(-1/2) sqrt(ln x))`.
    TheoremB {
        c1_abs: f64,
        c2_abs: f64,
        class_fraction: f64,
        x: f64,
        n_l: f64,
        beta0: Option<f64>,
    },
    /// Torsion bound `D^(1/2 - 1/(2 l (n-1)) + eps)`.
    TheoremD { n: u32, ell: u32, disc: f64, eps: f64 },
    /// Split-prime tradeoff `D^(1/2 + eps) / M`.
    MSplitPrimes { disc: f64, m_count: f64, eps: f64 },
    /// Generator floor `n^(-1/(2(n-1))) D^(1/(2 n (n-1)))`.
    Silverman { n: u32, disc: f64 },
    /// Weak generator ceiling `2 D^(1/(2n))`.
    RuppertWeak { n: u32, disc: f64 },
}

pub fn bound_eval(kind: &BoundKind) -> Result<f64> {
    let v = match *kind {
        BoundKind::TheoremA {
            c0_abs,
            class_fraction,
            x,
            ln_dl,
            n_l,
        } => {
            if x < 2.0 || c0_abs <= 0.0 {
                return Err(Error::Validation("TheoremA needs x >= 2, C0 > 0".into()));
            }
            c0_abs * class_fraction * x.sqrt() * (ln_dl + n_l * x.ln())
        }
        BoundKind::TheoremB {
            c1_abs,
            c2_abs,
            class_fraction,
            x,
            n_l,
            beta0,
        } => {
            if x < 2.0 {
                return Err(Error::Validation("TheoremB needs x >= 2".into()));
            }
            let zero_term = match beta0 {
                Some(b) => class_fraction * crate::sieve::li(x.powf(b)),
                None => 0.0,
            };
            zero_term + c1_abs * x * (-c2_abs * x.ln().sqrt() / n_l.sqrt()).exp()
        }
        BoundKind::TheoremD { n, ell, disc, eps } => {
            if n < 2 || ell < 1 || disc < 1.0 {
                return Err(Error::Validation("TheoremD needs n >= 2, ell >= 1, D >= 1".into()));
            }
            let exponent = 0.5 - 1.0 / (2.0 * ell as f64 * (n as f64 - 1.0)) + eps;
            disc.powf(exponent)
        }
        BoundKind::MSplitPrimes { disc, m_count, eps } => {
            if m_count <= 0.0 || disc < 1.0 {
                return Err(Error::Validation("MSplitPrimes needs M > 0, D >= 1".into()));
            }
            disc.powf(0.5 + eps) / m_count
        }
        BoundKind::Silverman { n, disc } => {
            if n < 2 || disc < 1.0 {
                return Err(Error::Validation("Silverman needs n >= 2, D >= 1".into()));
            }
            let nf = n as f64;
            nf.powf(-1.0 / (2.0 * (nf - 1.0))) * disc.powf(1.0 / (2.0 * nf * (nf - 1.0)))
        }
        BoundKind::RuppertWeak { n, disc } => {
            if n < 2 || disc < 1.0 {
                return Err(Error::Validation("RuppertWeak needs n >= 2, D >= 1".into()));
            }
            2.0 * disc.powf(1.0 / (2.0 * n as f64))
        }
    };
    Ok(v)
}

/// One error-term check at a sample point.
#[derive(Debug, Clone)]
pub struct TermCheck {
    pub term: &'static str,
    /// `ln` of the term and of its target.
    pub ln_term: f64,
    pub ln_target: f64,
}

impl TermCheck {
    pub fn passes(&self) -> bool {
        self.ln_term <= self.ln_target
    }
}

/// All per-term checks at one `(ln D_L, ln x)` sample. Targets carry the
/// worst-case class fraction `1/|G|`.
pub fn check_sample(
    config: &FamilyConfig,
    params: &ChebParams,
    ln_dl: f64,
    ln_x: f64,
) -> Vec<TermCheck> {
    let a = params.a_param() as f64;
    let n_l = params.n_l();
    let g = config.group_order as f64;
    let dl = params.delta();
    let dl0 = params.delta0();
    let ln_t = (2.0 / dl) * ln_dl.ln();
    // ln(T + c) and ln ln (T + c) with care for moderate T.
    let ln_t_plus = |c: f64| {
        if ln_t < 500.0 {
            (ln_t.exp() + c).ln()
        } else {
            ln_t
        }
    };
    let width_at_t = if params.base_is_q {
        config.c_q / (ln_t_plus(2.0).powf(2.0 / 3.0) * ln_t_plus(3.0).ln().powf(1.0 / 3.0))
    } else {
        let nk = config.n_k as f64;
        config.c_k / (nk * nk * (config.d_k.ln() + nk * ln_t_plus(3.0)))
    };
    let ln_lnx = ln_x.ln();
    let ln_tail = (ln_dl + n_l * ln_t).ln() + ln_t.ln(); // ln[ln T * ln(D_L T^n_L)]
    let s_target = params.c1.ln() - g.ln() + ln_x - (a - 1.0) * ln_lnx;
    let e_target = params.c1_prime.ln() - g.ln() + ln_x - (a - 1.0) * ln_lnx;
    vec![
        TermCheck {
            term: "E3",
            ln_term: 0.5 * ln_x + n_l.ln() + 2.0 * ln_dl.ln(),
            ln_target: s_target,
        },
        TermCheck {
            term: "E4",
            ln_term: (1.0 - dl0) * ln_x + ln_tail,
            ln_target: s_target,
        },
        TermCheck {
            term: "E5",
            ln_term: (1.0 - width_at_t) * ln_x + ln_tail,
            ln_target: s_target,
        },
        TermCheck {
            term: "E1a",
            ln_term: ln_x - ln_t + ln_lnx + ln_dl.ln(),
            ln_target: e_target,
        },
        TermCheck {
            term: "E1b",
            ln_term: ln_dl.ln(),
            ln_target: e_target,
        },
        TermCheck {
            term: "E1c",
            ln_term: n_l.ln() + ln_lnx,
            ln_target: e_target,
        },
        TermCheck {
            term: "E1d",
            ln_term: n_l.ln() + ln_x - ln_t + ln_lnx + ln_t.ln(),
            ln_target: e_target,
        },
        TermCheck {
            term: "E2a",
            ln_term: ln_lnx + ln_dl.ln(),
            ln_target: e_target,
        },
        TermCheck {
            term: "E2b",
            ln_term: n_l.ln() + ln_x - ln_t + 2.0 * ln_lnx,
            ln_target: e_target,
        },
    ]
}

/// Outcome of the envelope audit over random samples.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub samples: usize,
    pub passes: usize,
    /// `(term, ln D_L, ln x)` for each violation.
    pub violations: Vec<(String, f64, f64)>,
    /// Zero-free-region geometry (`T0 <= T`) held at every sample.
    pub geometry_ok: bool,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.violations.is_empty() && self.geometry_ok
    }
}

/// Samples admissible `(D_L, x)` pairs in log space and verifies every
/// error term sits under its target. A violation would indicate an
/// implementation bug in the parameter formulas.
pub fn envelope_audit(
    config: &FamilyConfig,
    delta: &BigRational,
    delta0: &BigRational,
    n_samples: usize,
    seed: u64,
) -> Result<AuditReport> {
    let params = cheb_params(config, delta, delta0)?;
    let th = thresholds(config, delta, delta0)?;
    let n_l = params.n_l();
    // Sample ln D_L above every float-computable threshold; the geometry
    // content of the tower threshold is asserted directly per sample.
    let ln_dl_min = th.max_ln().max(3.0);
    let lnln_lo = ln_dl_min.ln();
    let lnln_hi = lnln_lo + 8.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut geometry_ok = true;
    let mut passes = 0usize;
    let mut produced = 0usize;
    let mut attempts = 0usize;
    while produced < n_samples {
        attempts += 1;
        if attempts > 50 * n_samples + 100 {
            return Err(Error::Infeasible(
                "audit-skipped: feasible sample region is empty".into(),
            ));
        }
        let ln_dl = rng.gen_range(lnln_lo..lnln_hi).exp();
        let ln_x_lo = params.ln_x0(ln_dl);
        let ln_x_hi = 10.0 * n_l * ln_dl * ln_dl;
        if !(ln_x_lo.is_finite() && ln_x_lo < ln_x_hi) {
            continue;
        }
        let ln_x = rng.gen_range(ln_x_lo..ln_x_hi);
        produced += 1;
        // T0 <= T: the working content of the tower threshold.
        if params.t0.ln().max(0.0) > (2.0 / params.delta()) * ln_dl.ln() {
            geometry_ok = false;
        }
        let checks = check_sample(config, &params, ln_dl, ln_x);
        let mut ok = true;
        for c in checks {
            if !c.passes() {
                ok = false;
                violations.push((c.term.to_string(), ln_dl, ln_x));
            }
        }
        if ok {
            passes += 1;
        }
    }
    Ok(AuditReport {
        samples: produced,
        passes,
        violations,
        geometry_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_s3_value() {
        // m=2, |G|=6, d=1, eps0 = 1/10: denominator 5*2*6/2 + 2 + 4/10.
        let d = delta_of(&rat(1, 10), 2, 6, &rat_int(1));
        assert_eq!(d, rat(1, 10) / rat(324, 10));
        let f = d.to_f64().unwrap();
        assert!((f - 0.1 / 32.4).abs() < 1e-15);
    }

    #[test]
    fn delta_monotonicity() {
        let small = delta_of(&rat(1, 100), 2, 6, &rat_int(1));
        let large = delta_of(&rat(1, 10), 2, 6, &rat_int(1));
        assert!(small < large);
        let doubled = delta_of(&rat(1, 10), 2, 12, &rat_int(1));
        assert!(doubled < large);
    }

    #[test]
    fn km_c0_base() {
        // m=2, A=3, d=1 -> 5*2*3/2 + 1 = 16.
        let b = km_budget(
            &rat_int(2),
            &rat_int(3),
            &rat_int(1),
            &rat_int(0),
            &rat(1, 10),
            None,
        )
        .unwrap();
        assert_eq!(b.c0_base, rat_int(16));
    }

    #[test]
    fn km_s3_budget() {
        let b = km_budget(
            &rat_int(2),
            &rat_int(3), // A = |G|/2 = 3 for S3
            &rat_int(1),
            &rat(1, 3),
            &rat(1, 10),
            None,
        )
        .unwrap();
        // gap = eps0/2 enforced by construction.
        let gap = (rat_int(1) - b.delta_cap.clone()) * rat_int(1) - rat(1, 3);
        assert_eq!(gap, rat(1, 20));
        assert_eq!(b.exceptional_bound, rat(1, 3) + rat(1, 10));
        assert!(b.exceptional_exact <= b.exceptional_bound);
        assert!(b.alpha >= rat(3, 4));
    }

    #[test]
    fn delta_identity_between_routes() {
        // delta from the closed form equals 1 - alpha from the budget when
        // the conductor exponent is |G|/2 and eps2 = eps0.
        for (m, g, d, tau, eps) in [
            (2i64, 6i64, rat_int(1), rat(1, 3), rat(1, 10)),
            (3, 24, rat_int(1), rat(1, 2), rat(1, 13)),
            (1, 3, rat(1, 2), rat_int(0), rat(1, 8)),
            (2, 10, rat(7, 10), rat(1, 4), rat(3, 100)),
        ] {
            let direct = delta_of(&eps, m as u32, g as u32, &d);
            let a = rat_int(g) / rat_int(2);
            let b = km_budget(&rat_int(m), &a, &d, &tau, &eps, None).unwrap();
            assert_eq!(direct, b.delta, "m={m} g={g}");
        }
    }

    #[test]
    fn infeasible_budget() {
        let r = km_budget(
            &rat_int(2),
            &rat_int(3),
            &rat(1, 2),
            &rat(1, 2),
            &rat(1, 10),
            None,
        );
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }

    #[test]
    fn nu2_symbolic_form() {
        // A=2, delta0 = delta, k = Q: nu2 = max(4/delta, 8/(c_Q delta)) + 4.
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let p = cheb_params(&config, &delta, &delta).unwrap();
        let dl = delta.to_f64().unwrap();
        let expected = (4.0 / dl).max(8.0 / (config.c_q * dl)) + 4.0;
        assert!((p.nu2 - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn nu3_scales_in_nl_and_delta() {
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let p = cheb_params(&config, &delta, &delta).unwrap();
        let mut cfg2 = config.clone();
        cfg2.group_order *= 2; // doubles n_L
        // keep delta fixed to read off the n_L scaling
        let p2 = cheb_params(&cfg2, &delta, &delta).unwrap();
        assert!((p2.nu3 / p.nu3 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn x0_nondecreasing_in_dl() {
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let p = cheb_params(&config, &delta, &delta).unwrap();
        let mut prev = f64::MIN;
        for k in 1..=12 {
            let ln_dl = (10.0f64).powi(k);
            let v = p.ln_x0(ln_dl);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn c0_choice_value() {
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let p = cheb_params(&config, &delta, &delta).unwrap();
        // A=2: 1/(2^5 + 8) = 1/40.
        assert_eq!(p.c0_choice, rat(1, 40));
    }

    #[test]
    fn threshold_d1_and_monotonicity() {
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let th = thresholds(&config, &delta, &delta).unwrap();
        let dl0 = delta.to_f64().unwrap();
        assert!((th.d1.ln() - 1.0 / (4.0 * dl0)).abs() < 1e-9 / dl0);

        // Monotone in delta, direction per closed form: the geometry and
        // exceptional-zero thresholds grow as delta shrinks, while the
        // error-term threshold shrinks (a taller box helps those terms);
        // the large-x threshold does not involve delta at all.
        let smaller = delta.clone() / rat_int(4);
        let th2 = thresholds(&config, &smaller, &smaller).unwrap();
        assert!(th2.d0_prime.ln_ln > th.d0_prime.ln_ln);
        assert!(th2.d1.ln_ln > th.d1.ln_ln);
        assert!(th2.d2.ln_ln <= th.d2.ln_ln);
        assert!((th2.d1_prime.ln_ln - th.d1_prime.ln_ln).abs() < 1e-12);
    }

    #[test]
    fn d0_prime_tower_for_q() {
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let th = thresholds(&config, &delta, &delta).unwrap();
        let dl = delta.to_f64().unwrap();
        let expected = (2.0 / dl).ln() + config.c_q / dl;
        assert!((th.d0_prime.ln_ln - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn infeasible_delta_region() {
        let config = FamilyConfig::preset("s3").unwrap();
        // delta = 2/(2A+1) = 2/5 is out of range.
        let r = thresholds(&config, &rat(2, 5), &rat(2, 5));
        assert!(matches!(r, Err(Error::Infeasible(_))));
    }

    #[test]
    fn bound_values() {
        // Torsion bound: n=3, l=3, D=1e6, eps=0: exponent 5/12.
        let v = bound_eval(&BoundKind::TheoremD {
            n: 3,
            ell: 3,
            disc: 1e6,
            eps: 0.0,
        })
        .unwrap();
        assert!((v - 10f64.powf(2.5)).abs() < 1e-9 * v);

        // Silverman: n=2, D=5.
        let v = bound_eval(&BoundKind::Silverman { n: 2, disc: 5.0 }).unwrap();
        assert!((v - 5f64.powf(0.25) / 2f64.sqrt()).abs() < 1e-12);
        assert!((v - 1.0574).abs() < 1e-4);

        // Full split-prime budget reproduces the torsion exponent up to the
        // log factor.
        let n = 3u32;
        let ell = 3u32;
        let d: f64 = 1e8;
        let delta = 1.0 / (2.0 * ell as f64 * (n as f64 - 1.0));
        let m = d.powf(delta) / d.powf(delta).ln();
        let lhs = bound_eval(&BoundKind::MSplitPrimes {
            disc: d,
            m_count: m,
            eps: 0.0,
        })
        .unwrap();
        let rhs = bound_eval(&BoundKind::TheoremD {
            n,
            ell,
            disc: d,
            eps: 0.0,
        })
        .unwrap();
        let log_factor = d.powf(delta).ln();
        assert!((lhs / (rhs * log_factor) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn audit_passes_on_presets() {
        for name in ["s3", "s4", "c3", "d5", "a4"] {
            let config = FamilyConfig::preset(name).unwrap();
            let delta = family_delta(&config).unwrap();
            let report = envelope_audit(&config, &delta, &delta, 100, 7).unwrap();
            assert!(report.all_passed(), "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn audit_boundary_delta_admitted() {
        // A=2, delta = 1/(2A) exactly must be accepted by cheb_params.
        let mut config = FamilyConfig::preset("s3").unwrap();
        config.a_param = 2;
        let quarter = rat(1, 4);
        assert!(cheb_params(&config, &quarter, &quarter).is_ok());
    }

    #[test]
    fn sample_below_x3_flags_e2a() {
        let config = FamilyConfig::preset("s3").unwrap();
        let delta = family_delta(&config).unwrap();
        let params = cheb_params(&config, &delta, &delta).unwrap();
        let th = thresholds(&config, &delta, &delta).unwrap();
        let ln_dl = th.max_ln().max(3.0) * 10.0;
        // Boundary of the direct E2a inequality:
        // x* = |G| c1'^-1 (ln x*)^A ln D_L, found by fixed point.
        let a = config.a_param as f64;
        let g = config.group_order as f64;
        let mut ln_x_star = ln_dl.ln() + 1.0;
        for _ in 0..200 {
            ln_x_star = (g / params.c1_prime).ln() + a * ln_x_star.ln() + ln_dl.ln();
        }
        let binding = |ln_x: f64| {
            check_sample(&config, &params, ln_dl, ln_x)
                .into_iter()
                .find(|c| c.term == "E2a")
                .unwrap()
                .passes()
        };
        assert!(!binding(ln_x_star - 0.05), "just below x* must bind");
        assert!(binding(ln_x_star + 0.05), "just above x* must clear");
        // Above x0 everything passes.
        let checks = check_sample(&config, &params, ln_dl, params.ln_x0(ln_dl) + 1.0);
        assert!(checks.iter().all(|c| c.passes()));
    }

    #[test]
    fn exceptional_below_beta_for_presets() {
        for name in ["s3", "s4", "c3", "d5", "a4"] {
            let config = FamilyConfig::preset(name).unwrap();
            let a = rat_int(config.group_order as i64) / rat_int(2);
            let b = km_budget(
                &rat_int(config.m as i64),
                &a,
                &config.d,
                &config.tau,
                &config.eps0,
                None,
            )
            .unwrap();
            assert!(
                b.exceptional_bound < config.beta,
                "{name}: exceptional exponent not below beta"
            );
        }
    }

    #[test]
    fn preset_validation() {
        assert!(FamilyConfig::preset("nope").is_err());
        let mut bad = FamilyConfig::preset("s3").unwrap();
        bad.eps0 = rat_int(1);
        assert!(bad.validate().is_err());
    }
}
