use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::algnum::{mult_dependent_with, weil_height};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Matrix};
use crate::scalar::ln_bigint;
use crate::spectral::{classify_with_profile, spectral_profile_with, SpectralConfig, Verdict};

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthPoint {
    pub n: u64,
    pub gcd: BigInt,
    /// `None` when the gcd is zero (every minor vanishes).
    pub log_gcd: Option<f64>,
}

impl GrowthPoint {
    pub fn new(n: u64, gcd: BigInt) -> Self {
        let log_gcd = if gcd.is_zero() {
            None
        } else {
            Some(ln_bigint(&gcd))
        };
        GrowthPoint { n, gcd, log_gcd }
    }
}

/// Least-squares line through `(n, log gcd)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the residuals.
    pub residual: f64,
    pub points: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GrowthSeries {
    pub points: Vec<GrowthPoint>,
}

impl GrowthSeries {
    pub fn get(&self, n: u64) -> Option<&GrowthPoint> {
        self.points.iter().find(|p| p.n == n)
    }

    /// Fit over the upper half of the series.
    pub fn fit_slope(&self) -> Option<SlopeFit> {
        let len = self.points.len();
        let from = self.points.get(len / 2)?.n;
        let to = self.points.last()?.n;
        self.fit_slope_range(from, to)
    }

    /// Fit over the points with `lo <= n <= hi`, skipping zero gcds.
    pub fn fit_slope_range(&self, lo: u64, hi: u64) -> Option<SlopeFit> {
        let pts: Vec<(f64, f64)> = self
            .points
            .iter()
            .filter(|p| lo <= p.n && p.n <= hi)
            .filter_map(|p| p.log_gcd.map(|y| (p.n as f64, y)))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let ss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
        Some(SlopeFit {
            slope,
            intercept,
            residual: (ss / k).sqrt(),
            points: pts.len(),
        })
    }
}

/// Gcd of all `k x k` minors of `m`, from its Smith normal form.
pub fn minor_gcd(m: &Matrix<BigInt>, k: usize) -> BigInt {
    smith_normal_form(m).ideal_generator(k)
}

fn check_minor_order(d: usize, r: usize) -> Result<()> {
    if r + 1 > d {
        return Err(Error::RankOutOfRange {
            r,
            max: d.saturating_sub(1),
        });
    }
    Ok(())
}

/// For `n = 1..=n_max`, the gcd of the `(r+1) x (r+1)` minors of `A^n - I`.
pub fn gcd_growth_series(a: &Matrix<BigInt>, r: usize, n_max: u64) -> Result<GrowthSeries> {
    let d = a.require_square()?;
    check_minor_order(d, r)?;
    let mut points = Vec::with_capacity(n_max as usize);
    let mut p = Matrix::identity(d);
    for n in 1..=n_max {
        p = &p * a;
        points.push(GrowthPoint::new(n, minor_gcd(&p.sub_identity(), r + 1)));
    }
    Ok(GrowthSeries { points })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSeries {
    /// Step of the subsequence `n = m, 2m, ...`.
    pub m: u64,
    /// Index of the exceptional class in the spectral profile.
    pub class: usize,
    /// Eigenvalue index of the class member of least height.
    pub representative: usize,
    /// Height of the representative.
    pub reference_slope: f64,
    pub series: GrowthSeries,
}

/// Growth of the minor gcd along the multiples of `m`, where `m` is the lcm
/// of the root-of-unity orders and the exponents `b` in
/// `lambda_1^a = lambda_i^b` over the exceptional class.
pub fn exceptional_witness_series(a: &Matrix<BigInt>, r: usize, n_max: u64) -> Result<WitnessSeries> {
    let cfg = SpectralConfig::default();
    let profile = spectral_profile_with(a, &cfg)?;
    let Verdict::Exceptional { class } = classify_with_profile(a, &profile, r)?.verdict else {
        return Err(Error::NotExceptional(r));
    };
    let members = &profile.classes[class].members;
    let heights: Vec<f64> = members
        .iter()
        .map(|&i| weil_height(&profile.eigen[i].value, 64).mid_f64())
        .collect();
    let pos = (0..members.len())
        .min_by(|&x, &y| heights[x].total_cmp(&heights[y]))
        .expect("classes are nonempty");
    let rep = members[pos];
    let mut m = profile.unity_orders().iter().fold(1u64, |acc, &o| acc.lcm(&o));
    for &j in members {
        if j == rep {
            continue;
        }
        let w = match profile.witness(rep, j) {
            Some(w) => w,
            None => mult_dependent_with(
                &profile.eigen[rep].value,
                &profile.eigen[j].value,
                &cfg.dependence,
            )?
            .witness()
            .ok_or_else(|| Error::InvalidDependence("class members not dependent".into()))?,
        };
        m = m.lcm(&w.a2.unsigned_abs());
    }
    let d = profile.d;
    let step = a.pow(m);
    let mut p = Matrix::identity(d);
    let mut points = Vec::new();
    let mut n = m;
    while n <= n_max {
        p = &p * &step;
        points.push(GrowthPoint::new(n, minor_gcd(&p.sub_identity(), r + 1)));
        n += m;
    }
    Ok(WitnessSeries {
        m,
        class,
        representative: rep,
        reference_slope: heights[pos],
        series: GrowthSeries { points },
    })
}
