//! Multiplication counts for dense products in both bases.
//!
//! Counts come from [`MulCounter`] and are deterministic; wall-clock times
//! are reported alongside but never relied upon.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::efb::{EfbElement, EfbMultivector};
use crate::error::{Error, Result};
use crate::gamma::{GammaMonomial, GammaMultivector};
use crate::scalar::{Coefficient, MulCounter, Scalar};
use crate::check_dim;

/// Largest `m` for the exhaustive table count (`2^{4m}` pairs).
pub const TABLE_LIMIT: usize = 5;
/// Largest `m` for the dense gamma product (`2^{4m}` multiplications).
pub const GAMMA_LIMIT: usize = 5;
/// Largest `m` for the dense EFB product (`2^{3m}` multiplications).
pub const EFB_LIMIT: usize = 7;

/// Counts nonzero entries of the EFB multiplication table by trying every
/// pair of basis elements.
pub fn count_table_nonzeros(m: usize) -> Result<u64> {
    check_dim(m)?;
    if m > TABLE_LIMIT {
        return Err(Error::LimitExceeded { what: "multiplication table count", m, limit: TABLE_LIMIT });
    }
    let basis: Vec<EfbElement> = EfbElement::all(m)?.collect();
    let mut count = 0u64;
    for a in &basis {
        for b in &basis {
            if a.product(b).is_some() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Lower bound `2 dim A - 1 = 2^{2m+1} - 1` on the multiplicative
/// complexity of an algebra of dimension `2^{2m}`.
pub fn complexity_lower_bound(m: usize) -> u64 {
    (1u64 << (2 * m + 1)) - 1
}

/// Nonzero random dyadic coefficient.
fn random_coefficient<C: Coefficient, R: Rng>(rng: &mut R) -> C {
    let numerator = 2 * rng.gen_range(0..8i64) + 1;
    let numerator = if rng.gen_bool(0.5) { -numerator } else { numerator };
    C::from_dyadic(numerator, rng.gen_range(-3..=3))
}

/// Multivector with every one of the `4^m` EFB coordinates nonzero.
pub fn dense_efb<C: Coefficient, R: Rng>(m: usize, rng: &mut R) -> Result<EfbMultivector<C>> {
    let terms: Vec<_> = EfbElement::all(m)?.map(|e| (e, random_coefficient(rng))).collect();
    EfbMultivector::from_terms(m, terms)
}

/// Multivector with every one of the `4^m` gamma coordinates nonzero.
pub fn dense_gamma<C: Coefficient, R: Rng>(m: usize, rng: &mut R) -> Result<GammaMultivector<C>> {
    let terms: Vec<_> = GammaMonomial::all(m)?.map(|g| (g, random_coefficient(rng))).collect();
    GammaMultivector::from_terms(m, terms)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub m: usize,
    /// `None` above [`GAMMA_LIMIT`].
    pub dense_gamma_mults: Option<u64>,
    pub dense_efb_mults: u64,
    /// `None` above [`TABLE_LIMIT`].
    pub table_nonzero: Option<u64>,
    pub lower_bound: u64,
    /// `2^{3m}`.
    pub upper_bound_label: u64,
    pub gamma_time: Option<Duration>,
    pub efb_time: Duration,
    pub gamma_time_f64: Option<Duration>,
    pub efb_time_f64: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Multiplies two dense random multivectors in each basis under a
/// counting context, exactly and in `f64`.
pub fn dense_product_counts(m: usize, seed: u64) -> Result<BenchReport> {
    check_dim(m)?;
    if m > EFB_LIMIT {
        return Err(Error::LimitExceeded { what: "dense EFB product", m, limit: EFB_LIMIT });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let a: EfbMultivector<Scalar> = dense_efb(m, &mut rng)?;
    let b: EfbMultivector<Scalar> = dense_efb(m, &mut rng)?;
    let mut counter = MulCounter::enabled();
    let (product, efb_time) = timed(|| a.efb_product_with(&b, &mut counter));
    product?;
    let dense_efb_mults = counter.count();

    let af = a.map_coefficients(Scalar::to_f64);
    let bf = b.map_coefficients(Scalar::to_f64);
    let (product, efb_time_f64) = timed(|| af.efb_product(&bf));
    product?;

    let (dense_gamma_mults, gamma_time, gamma_time_f64) = if m <= GAMMA_LIMIT {
        let x: GammaMultivector<Scalar> = dense_gamma(m, &mut rng)?;
        let y: GammaMultivector<Scalar> = dense_gamma(m, &mut rng)?;
        let mut counter = MulCounter::enabled();
        let (product, t) = timed(|| x.gamma_product_with(&y, &mut counter));
        product?;
        let xf = x.map_coefficients(Scalar::to_f64);
        let yf = y.map_coefficients(Scalar::to_f64);
        let (product, tf) = timed(|| xf.gamma_product(&yf));
        product?;
        (Some(counter.count()), Some(t), Some(tf))
    } else {
        (None, None, None)
    };

    let table_nonzero = if m <= TABLE_LIMIT { Some(count_table_nonzeros(m)?) } else { None };

    Ok(BenchReport {
        m,
        dense_gamma_mults,
        dense_efb_mults,
        table_nonzero,
        lower_bound: complexity_lower_bound(m),
        upper_bound_label: 1u64 << (3 * m),
        gamma_time,
        efb_time,
        gamma_time_f64,
        efb_time_f64,
    })
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

fn millis(d: &Option<Duration>) -> String {
    d.map_or_else(|| "n/a".to_string(), |d| format!("{:.3}", d.as_secs_f64() * 1e3))
}

impl BenchReport {
    /// `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let rows = [
            ("m", self.m.to_string()),
            ("dense_gamma_mults", opt(&self.dense_gamma_mults)),
            ("dense_efb_mults", self.dense_efb_mults.to_string()),
            ("table_nonzero", opt(&self.table_nonzero)),
            ("lower_bound", self.lower_bound.to_string()),
            ("upper_bound", self.upper_bound_label.to_string()),
            ("gamma_ms", millis(&self.gamma_time)),
            ("efb_ms", millis(&Some(self.efb_time))),
            ("gamma_f64_ms", millis(&self.gamma_time_f64)),
            ("efb_f64_ms", millis(&Some(self.efb_time_f64))),
        ];
        rows.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// Aligned table for humans.
impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("m", self.m.to_string()),
            ("gamma basis multiplications (dense x dense)", opt(&self.dense_gamma_mults)),
            ("EFB multiplications (dense x dense)", self.dense_efb_mults.to_string()),
            ("EFB table nonzero entries", opt(&self.table_nonzero)),
            ("lower bound 2^(2m+1) - 1", self.lower_bound.to_string()),
            ("2^(3m)", self.upper_bound_label.to_string()),
            ("gamma product time, exact [ms]", millis(&self.gamma_time)),
            ("EFB product time, exact [ms]", millis(&Some(self.efb_time))),
            ("gamma product time, f64 [ms]", millis(&self.gamma_time_f64)),
            ("EFB product time, f64 [ms]", millis(&Some(self.efb_time_f64))),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v:>12}")?;
        }
        Ok(())
    }
}
