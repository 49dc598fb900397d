//! Arithmetic in `Z/p^sZ` and the Hamming, homogeneous and Lee weights.
//!
//! Residues are carried as plain `u64` values reduced into `[0, p^s)`.
//! Homogeneous weights are scaled by `p - 1` so that they stay integral:
//! a unit outside the socle weighs `p - 1` and a nonzero socle element
//! weighs `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted. Keeps every product of two residues in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// The ring `Z/p^sZ`: prime `p`, nilpotency index `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ChainRingParams {
    p: u64,
    s: u32,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    p: u64,
    s: u32,
}

impl TryFrom<RawParams> for ChainRingParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        ChainRingParams::new(raw.p, raw.s)
    }
}

impl From<ChainRingParams> for RawParams {
    fn from(params: ChainRingParams) -> Self {
        RawParams { p: params.p, s: params.s }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ChainRingParams {
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidParams("nilpotency index must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(s)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidParams(format!("{p}^{s} exceeds {MAX_MODULUS}")))?;
        Ok(ChainRingParams { p, s, modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    /// `p^s`.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `p^i` for `i <= s`.
    #[inline]
    pub fn pow_p(&self, i: u32) -> u64 {
        debug_assert!(i <= self.s);
        self.p.pow(i)
    }

    /// `(p^s - 1) / 2`, defined for odd `p` only.
    pub fn lambda(&self) -> Option<u64> {
        (self.p % 2 == 1).then(|| (self.modulus - 1) / 2)
    }

    pub fn require_odd(&self) -> Result<()> {
        if self.p == 2 {
            Err(Error::RequiresOddPrime(self.p))
        } else {
            Ok(())
        }
    }

    /// Closed form `M_i = (p^s - p^i) / 2` for `i = 0..s`.
    pub fn lee_maxima(&self) -> Result<Vec<u64>> {
        self.require_odd()?;
        Ok((0..self.s).map(|i| (self.modulus - self.pow_p(i)) / 2).collect())
    }

    #[inline]
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    /// Largest `i <= s` with `p^i | x`; the valuation of zero is `s`.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.s;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        !x.is_multiple_of(self.p)
    }

    /// Inverse of a unit, `None` for non-units.
    pub fn inverse(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x) {
            return None;
        }
        let (mut old_r, mut r) = (x as i128, self.modulus as i128);
        let (mut old_t, mut t) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_t, t) = (t, old_t - q * t);
        }
        Some(self.reduce(old_t))
    }

    /// Writes a nonzero `x` as `p^v * u` with `u` a unit and returns `(v, u)`.
    /// The unit is only determined modulo `p^(s-v)`; the smallest
    /// representative is returned. Zero gives `(s, 1)`.
    pub fn split(&self, x: u64) -> (u32, u64) {
        let v = self.valuation(x);
        if v == self.s {
            return (v, 1);
        }
        (v, x / self.pow_p(v))
    }

    /// `min(x, p^s - x)`.
    #[inline]
    pub fn lee_weight(&self, x: u64) -> u64 {
        let x = x % self.modulus;
        x.min(self.modulus - x)
    }

    /// Homogeneous weight times `p - 1`.
    #[inline]
    pub fn hom_weight_scaled(&self, x: u64) -> u64 {
        let x = x % self.modulus;
        if x == 0 {
            0
        } else if self.valuation(x) == self.s - 1 {
            self.p
        } else {
            self.p - 1
        }
    }

    /// Maximum Lee weight over the ideal `<p^i>`, by direct search over its
    /// `p^(s-i)` elements.
    pub fn ideal_max_lee(&self, i: u32) -> Result<u64> {
        self.require_odd()?;
        if i >= self.s {
            return Err(Error::OutOfRange(format!("ideal index {i} must be below s = {}", self.s)));
        }
        let step = self.pow_p(i);
        Ok((0..self.modulus / step)
            .map(|k| self.lee_weight(k * step))
            .max()
            .unwrap_or(0))
    }
}

pub fn hamming_weight(v: &[u64]) -> u64 {
    v.iter().filter(|&&x| x != 0).count() as u64
}

pub fn lee_weight_vec(params: &ChainRingParams, v: &[u64]) -> u64 {
    v.iter().map(|&x| params.lee_weight(x)).sum()
}

pub fn hom_weight_scaled_vec(params: &ChainRingParams, v: &[u64]) -> u64 {
    v.iter().map(|&x| params.hom_weight_scaled(x)).sum()
}

/// The three weight functions. Homogeneous values are scaled by `p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Homogeneous,
    Lee,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Hamming, Metric::Homogeneous, Metric::Lee];

    pub fn weight(self, params: &ChainRingParams, v: &[u64]) -> u64 {
        match self {
            Metric::Hamming => hamming_weight(v),
            Metric::Homogeneous => hom_weight_scaled_vec(params, v),
            Metric::Lee => lee_weight_vec(params, v),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Homogeneous => "homogeneous",
            Metric::Lee => "lee",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hamming" | "h" => Ok(Metric::Hamming),
            "homogeneous" | "hom" => Ok(Metric::Homogeneous),
            "lee" | "l" => Ok(Metric::Lee),
            other => Err(Error::Parse(format!("unknown metric `{other}`"))),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
