//! Plate coefficients in exact rational arithmetic, written from the
//! coefficient table with the material constants as printed (decimal
//! strings), independent of the library's floating-point derivation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

type Q = BigRational;

/// Exact value of a decimal literal such as `"7.76e10"` or `"383.1"`.
pub fn decimal(s: &str) -> Q {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().unwrap()),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    if shift >= 0 {
        Q::from_integer(digits * ten.pow(shift as u32))
    } else {
        Q::new(digits, ten.pow((-shift) as u32))
    }
}

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficients in the library's order: a0, d0, alpha, beta, a1, gamma, b1,
/// c1, a2, kappa.
pub fn ted(d: &str) -> [f64; 10] {
    let c = |s: &str| decimal(s);
    let (lambda, mu, varrho) = (c("7.76e10"), c("3.36e10"), c("9.0e5"));
    let (alpha_t, alpha_c, varpi) = (c("1.78e-5"), c("1.98e-4"), c("1.2e4"));
    let (rho, c_e, t0, k1, k2) = (c("8954"), c("383.1"), c("293"), c("386"), c("8.5e-9"));
    let d = decimal(d);
    let bulk = int(3) * &lambda + int(2) * &mu;
    let lambda0 = &lambda - &bulk * &bulk * &alpha_c * &alpha_c / &varrho;
    let gamma1 = &bulk * (&alpha_t + &varpi / &varrho * &alpha_c);
    let gamma2 = &bulk * &alpha_c / &varrho;
    let l2m = &lambda0 + int(2) * &mu;
    let d2 = &d * &d;
    let d4 = &d2 * &d2;
    let s = int(12) / (&rho * &d4);
    finish([
        &d2 / int(12),
        int(4) * &mu * &d2 * (&lambda0 + &mu) / (int(12) * &rho * &l2m),
        int(2) * &mu * &gamma1 / (&rho * &d * &l2m),
        int(2) * &mu * &gamma2 / (&rho * &d * &l2m),
        &s * (&rho * &c_e / &t0 + &varpi * &varpi / &varrho + &gamma1 * &gamma1 / &l2m),
        -(&s * (&varpi / &varrho + &gamma1 * &gamma2 / &l2m)),
        int(12) * &k1 / (&rho * &d2 * &d),
        &s * &k1,
        &s * (Q::one() / &varrho + &gamma2 * &gamma2 / &l2m),
        &s * &k2,
    ])
}

pub fn tpe(d: &str) -> [f64; 10] {
    let c = |s: &str| decimal(s);
    let (lambda, mu, alpha_t, varrho_star, beta_star) = (c("10.22e9"), c("4.09e9"), c("3e-5"), c("12e9"), c("0.79"));
    let (rho, c_e, t0, gamma_star, k1, k2_star) = (c("2280"), c("800"), c("293"), c("5e-5"), c("1e-6"), c("1.9e-13"));
    let d = decimal(d);
    let gamma1 = &alpha_t * (int(3) * &lambda + int(2) * &mu);
    let gamma2 = beta_star;
    let l2m = &lambda + int(2) * &mu;
    let d2 = &d * &d;
    let d4 = &d2 * &d2;
    let s = int(12) / (&rho * &d4);
    finish([
        &d2 / int(12),
        int(4) * &mu * &d2 * (&lambda + &mu) / (int(12) * &rho * &l2m),
        int(2) * &mu * &gamma1 / (&rho * &d * &l2m),
        int(2) * &mu * &gamma2 / (&rho * &d * &l2m),
        &s * (&rho * &c_e / &t0 + &gamma1 * &gamma1 / &l2m),
        &s * (int(3) * &gamma_star - &gamma1 * &gamma2 / &l2m),
        int(12) * &k1 / (&rho * &d2 * &d),
        &s * &k1,
        &s * (Q::one() / &varrho_star + &gamma2 * &gamma2 / &l2m),
        &s * &k2_star,
    ])
}

fn finish(values: [Q; 10]) -> [f64; 10] {
    values.map(|q| {
        assert!(!q.is_zero());
        q.to_f64().unwrap()
    })
}
