//! The ten plate coefficients and their derivation from 3D material constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of
/// `u_tt - a0 Lap u_tt + d0 Lap^2 u + alpha Lap theta + beta Lap p = f`,
/// `a1 theta_t - gamma p_t + b1 theta - c1 Lap theta - alpha Lap u_t = phi`,
/// `a2 p_t - gamma theta_t - kappa Lap p - beta Lap u_t = g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelCoefficients {
    pub a0: f64,
    pub d0: f64,
    pub alpha: f64,
    pub beta: f64,
    pub a1: f64,
    pub gamma: f64,
    pub b1: f64,
    pub c1: f64,
    pub a2: f64,
    pub kappa: f64,
}

impl ModelCoefficients {
    /// Unit coefficients except `a1 = 35`, `a2 = 40` and the given `gamma`.
    pub fn smooth_study(gamma: f64) -> Self {
        Self { a0: 1.0, d0: 1.0, alpha: 1.0, beta: 1.0, a1: 35.0, gamma, b1: 1.0, c1: 1.0, a2: 40.0, kappa: 1.0 }
    }

    pub fn as_array(&self) -> [(&'static str, f64); 10] {
        [
            ("a0", self.a0),
            ("d0", self.d0),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("a1", self.a1),
            ("gamma", self.gamma),
            ("b1", self.b1),
            ("c1", self.c1),
            ("a2", self.a2),
            ("kappa", self.kappa),
        ]
    }

    /// Finite values, strict positivity of everything but `gamma`, and
    /// `a1 a2 - gamma^2 > 0`.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.as_array() {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient {name} is not finite")));
            }
            if name != "gamma" && v <= 0.0 {
                return Err(Error::InvalidArgument(format!("coefficient {name} must be positive, got {v}")));
            }
        }
        self.check_coupling()
    }

    pub fn check_coupling(&self) -> Result<()> {
        if self.a1 * self.a2 - self.gamma * self.gamma > 0.0 {
            Ok(())
        } else {
            Err(Error::Coupling { a1: self.a1, a2: self.a2, gamma: self.gamma })
        }
    }
}

/// Open interval `(|gamma|/a1, a2/|gamma|)` of admissible energy weights;
/// the upper end is infinite when `gamma = 0`.
pub fn gamma0_interval(c: &ModelCoefficients) -> Result<(f64, f64)> {
    c.check_coupling()?;
    let g = c.gamma.abs();
    let upper = if g == 0.0 { f64::INFINITY } else { c.a2 / g };
    Ok((g / c.a1, upper))
}

/// Geometric mean of the admissible interval, `sqrt(a2 / a1)`.
pub fn default_gamma0(c: &ModelCoefficients) -> f64 {
    (c.a2 / c.a1).sqrt()
}

/// Copper-type thermoelastic diffusion constants (SI units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TedMaterial {
    pub lambda: f64,
    pub mu: f64,
    pub varrho: f64,
    pub alpha_t: f64,
    pub alpha_c: f64,
    pub varpi: f64,
    pub rho: f64,
    pub c_e: f64,
    pub t0: f64,
    pub k1: f64,
    pub k2: f64,
}

/// Thermo-poroelastic constants (SI units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TpeMaterial {
    pub lambda: f64,
    pub mu: f64,
    pub varrho_star: f64,
    pub alpha_t: f64,
    pub beta_star: f64,
    pub rho: f64,
    pub c_e: f64,
    pub t0: f64,
    pub gamma_star: f64,
    pub k1: f64,
    pub k2_star: f64,
}

pub const COPPER: TedMaterial = TedMaterial {
    lambda: 7.76e10,
    mu: 3.36e10,
    varrho: 9.0e5,
    alpha_t: 1.78e-5,
    alpha_c: 1.98e-4,
    varpi: 1.2e4,
    rho: 8954.0,
    c_e: 383.1,
    t0: 293.0,
    k1: 386.0,
    k2: 8.5e-9,
};

pub const BEREA_SANDSTONE: TpeMaterial = TpeMaterial {
    lambda: 10.22e9,
    mu: 4.09e9,
    varrho_star: 12e9,
    alpha_t: 3e-5,
    beta_star: 0.79,
    rho: 2280.0,
    c_e: 800.0,
    t0: 293.0,
    gamma_star: 5e-5,
    k1: 1e-6,
    k2_star: 1.9e-13,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Material3D {
    Ted(TedMaterial),
    Tpe(TpeMaterial),
}

impl Material3D {
    pub fn coefficients(&self, d: f64) -> Result<ModelCoefficients> {
        match self {
            Material3D::Ted(m) => ted_coefficients(m, d),
            Material3D::Tpe(m) => tpe_coefficients(m, d),
        }
    }
}

fn check_positive(fields: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in fields {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Material(format!("positivity of {name} (got {v})")));
        }
    }
    Ok(())
}

/// Shifted Lame constant `lambda - (3 lambda + 2 mu)^2 alpha_c^2 / varrho`.
pub fn ted_lambda0(m: &TedMaterial) -> f64 {
    let k = 3.0 * m.lambda + 2.0 * m.mu;
    m.lambda - k * k * m.alpha_c * m.alpha_c / m.varrho
}

pub fn ted_coefficients(m: &TedMaterial, d: f64) -> Result<ModelCoefficients> {
    check_positive(&[
        ("d", d),
        ("lambda", m.lambda),
        ("mu", m.mu),
        ("varrho", m.varrho),
        ("alpha_t", m.alpha_t),
        ("alpha_c", m.alpha_c),
        ("varpi", m.varpi),
        ("rho", m.rho),
        ("c_e", m.c_e),
        ("t0", m.t0),
        ("k1", m.k1),
        ("k2", m.k2),
    ])?;
    let lambda0 = ted_lambda0(m);
    if lambda0 + m.mu <= 0.0 {
        return Err(Error::Material(format!("lambda0 + mu > 0 (lambda0 = {lambda0})")));
    }
    let k = 3.0 * m.lambda + 2.0 * m.mu;
    let gamma1 = k * (m.alpha_t + m.varpi / m.varrho * m.alpha_c);
    let gamma2 = k * m.alpha_c / m.varrho;
    let l2m = lambda0 + 2.0 * m.mu;
    let s = 12.0 / (m.rho * d.powi(4));
    let c = ModelCoefficients {
        a0: d * d / 12.0,
        d0: 4.0 * m.mu * d * d * (lambda0 + m.mu) / (12.0 * m.rho * l2m),
        alpha: 2.0 * m.mu * gamma1 / (m.rho * d * l2m),
        beta: 2.0 * m.mu * gamma2 / (m.rho * d * l2m),
        a1: s * (m.rho * m.c_e / m.t0 + m.varpi * m.varpi / m.varrho + gamma1 * gamma1 / l2m),
        gamma: -s * (m.varpi / m.varrho + gamma1 * gamma2 / l2m),
        b1: 12.0 * m.k1 / (m.rho * d.powi(3)),
        c1: s * m.k1,
        a2: s * (1.0 / m.varrho + gamma2 * gamma2 / l2m),
        kappa: s * m.k2,
    };
    c.check_coupling()?;
    Ok(c)
}

pub fn tpe_coefficients(m: &TpeMaterial, d: f64) -> Result<ModelCoefficients> {
    check_positive(&[
        ("d", d),
        ("lambda", m.lambda),
        ("mu", m.mu),
        ("varrho_star", m.varrho_star),
        ("alpha_t", m.alpha_t),
        ("beta_star", m.beta_star),
        ("rho", m.rho),
        ("c_e", m.c_e),
        ("t0", m.t0),
        ("gamma_star", m.gamma_star),
        ("k1", m.k1),
        ("k2_star", m.k2_star),
    ])?;
    let gamma1 = m.alpha_t * (3.0 * m.lambda + 2.0 * m.mu);
    let gamma2 = m.beta_star;
    let l2m = m.lambda + 2.0 * m.mu;
    let s = 12.0 / (m.rho * d.powi(4));
    let c = ModelCoefficients {
        a0: d * d / 12.0,
        d0: 4.0 * m.mu * d * d * (m.lambda + m.mu) / (12.0 * m.rho * l2m),
        alpha: 2.0 * m.mu * gamma1 / (m.rho * d * l2m),
        beta: 2.0 * m.mu * gamma2 / (m.rho * d * l2m),
        a1: s * (m.rho * m.c_e / m.t0 + gamma1 * gamma1 / l2m),
        gamma: s * (3.0 * m.gamma_star - gamma1 * gamma2 / l2m),
        b1: 12.0 * m.k1 / (m.rho * d.powi(3)),
        c1: s * m.k1,
        a2: s * (1.0 / m.varrho_star + gamma2 * gamma2 / l2m),
        kappa: s * m.k2_star,
    };
    c.check_coupling()?;
    Ok(c)
}
