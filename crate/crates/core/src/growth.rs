//! Growth-degree estimation from dimension sequences `r ↦ dim V^r`.
//!
//! The degree is the limit of `log_r dim V^r`. For the sequences in scope the
//! limit exists, so it is read off a least-squares fit of
//! `log dim = d·log r + c + a/r + b/r²` over the tail of the series. The two
//! inverse-power terms absorb the lower-order corrections that make a bare
//! log-log slope converge slowly (e.g. `log binom(r+2, 2) = 2 log r + 3/r + …`).

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Distance from an integer within which a raw estimate snaps to it.
pub const SNAP_TOLERANCE: f64 = 0.1;
/// Minimum series length for [`degree_estimate`].
pub const MIN_POINTS_DEGREE: usize = 6;
/// Minimum series length for [`slope_extract`].
pub const MIN_POINTS_SLOPE: usize = 4;
/// Minimum points in any fitting window (four parameters plus one).
const MIN_WINDOW: usize = 5;

/// Points `(r, dim V^r)` with `r` strictly increasing and `dim` nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    points: Vec<(u64, u128)>,
}

impl GrowthSeries {
    pub fn new(points: Vec<(u64, u128)>) -> Result<Self> {
        for &(r, d) in &points {
            if d == 0 {
                return Err(Error::InvalidParameter(format!(
                    "dimension at r = {r} must be positive"
                )));
            }
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidParameter(format!(
                    "radii must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::NonMonotone { r: w[1].0 });
            }
        }
        Ok(Self { points })
    }

    pub fn from_fn(rs: impl IntoIterator<Item = u64>, f: impl Fn(u64) -> u128) -> Result<Self> {
        Self::new(rs.into_iter().map(|r| (r, f(r))).collect())
    }

    /// Parses one `r,dim` pair per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::SeriesFormat {
                line: k + 1,
                msg: msg.to_string(),
            };
            let (r, d) = line.split_once(',').ok_or_else(|| err("expected `r,dim`"))?;
            let r: u64 = r.trim().parse().map_err(|_| err("r is not a nonnegative integer"))?;
            let d: u128 = d.trim().parse().map_err(|_| err("dim is not a nonnegative integer"))?;
            points.push((r, d));
        }
        Self::new(points)
    }

    pub fn points(&self) -> &[(u64, u128)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.points
            .iter()
            .map(|(r, d)| format!("{r},{d}\n"))
            .collect()
    }
}

/// Outcome of snapping a raw degree estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Snapped {
    Integer(u32),
    /// Not within [`SNAP_TOLERANCE`] of a nonnegative integer.
    Raw,
    Unbounded,
}

impl fmt::Display for Snapped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Snapped::Integer(d) => write!(f, "{d}"),
            Snapped::Raw => f.write_str("raw"),
            Snapped::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeEstimate {
    pub raw: f64,
    pub snapped: Snapped,
    /// RMS residual of the tail fit, in log space.
    pub residual: f64,
    /// Raw estimates on three successive tail windows, when the series is long enough.
    pub windows: Option<[f64; 3]>,
}

impl DegreeEstimate {
    pub fn degree(&self) -> Option<u32> {
        match self.snapped {
            Snapped::Integer(d) => Some(d),
            _ => None,
        }
    }
}

/// Least-squares fit on the given points; returns `(degree, rms residual)`.
fn fit_window(points: &[(u64, u128)]) -> (f64, f64) {
    let rows = points.len();
    let mut design = DMatrix::<f64>::zeros(rows, 4);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (k, &(r, d)) in points.iter().enumerate() {
        let r = r as f64;
        design[(k, 0)] = r.ln();
        design[(k, 1)] = 1.0;
        design[(k, 2)] = 1.0 / r;
        design[(k, 3)] = 1.0 / (r * r);
        rhs[k] = (d as f64).ln();
    }
    // column scaling keeps the SVD well conditioned
    let mut scales = [1.0f64; 4];
    for (c, s) in scales.iter_mut().enumerate() {
        let m = design.column(c).amax();
        if m > 0.0 {
            *s = m;
            design.column_mut(c).scale_mut(1.0 / m);
        }
    }
    let svd = design.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-12)
        .unwrap_or_else(|_| DVector::zeros(4));
    let fitted = &design * &sol;
    let rms = ((&rhs - fitted).norm_squared() / rows as f64).sqrt();
    (sol[0] / scales[0], rms)
}

/// Estimates the polynomial growth degree of `s`, ignoring any `r = 0` point.
///
/// The raw estimate comes from the tail half of the series (at least five
/// points). The series is reported unbounded when the estimate on three
/// successive tail windows rises by more than [`SNAP_TOLERANCE`] each time.
pub fn degree_estimate(s: &GrowthSeries) -> Result<DegreeEstimate> {
    let pts: Vec<(u64, u128)> = s.points().iter().copied().filter(|&(r, _)| r > 0).collect();
    let n = pts.len();
    if n < MIN_POINTS_DEGREE {
        return Err(Error::TooFewPoints {
            needed: MIN_POINTS_DEGREE,
            got: n,
        });
    }
    let tail = MIN_WINDOW.max(n.div_ceil(2)).min(n);
    let (raw, residual) = fit_window(&pts[n - tail..]);

    let width = MIN_WINDOW.max(n / 2 - 2);
    let windows = (n >= width + 2).then(|| {
        let est = |shift: usize| fit_window(&pts[n - shift - width..n - shift]).0;
        [est(2), est(1), est(0)]
    });
    let rising = windows.is_some_and(|w| {
        w[1] - w[0] > SNAP_TOLERANCE && w[2] - w[1] > SNAP_TOLERANCE
    });

    let snapped = if rising {
        Snapped::Unbounded
    } else {
        let nearest = raw.round();
        if nearest >= 0.0 && (raw - nearest).abs() <= SNAP_TOLERANCE {
            Snapped::Integer(nearest as u32)
        } else {
            Snapped::Raw
        }
    };
    Ok(DegreeEstimate {
        raw,
        snapped,
        residual,
        windows,
    })
}

/// Result of looking for an eventually affine tail `dim = offset + slope·r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeFit {
    Linear { slope: i128, offset: i128 },
    Nonlinear,
}

/// Detects eventually constant first differences.
///
/// The run of equal trailing differences must cover at least three
/// differences and at least half of all of them. Radii must be consecutive.
pub fn slope_extract(s: &GrowthSeries) -> Result<SlopeFit> {
    let pts = s.points();
    if pts.len() < MIN_POINTS_SLOPE {
        return Err(Error::TooFewPoints {
            needed: MIN_POINTS_SLOPE,
            got: pts.len(),
        });
    }
    if let Some(w) = pts.windows(2).find(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::NotConsecutive { r: w[0].0 });
    }
    let diffs: Vec<u128> = pts.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let last = *diffs.last().expect("at least three differences");
    let run = diffs.iter().rev().take_while(|&&d| d == last).count();
    if run < 3 || 2 * run < diffs.len() {
        return Ok(SlopeFit::Nonlinear);
    }
    let (r, d) = *pts.last().expect("nonempty");
    let slope = last as i128;
    Ok(SlopeFit::Linear {
        slope,
        offset: d as i128 - slope * r as i128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn degree_examples() {
        let s = GrowthSeries::from_fn(4..=16, |r| binom(r as u128 + 2, 2)).unwrap();
        assert_eq!(degree_estimate(&s).unwrap().snapped, Snapped::Integer(2));
        let s = GrowthSeries::from_fn(4..=20, |r| 5 + 4 * r as u128).unwrap();
        assert_eq!(degree_estimate(&s).unwrap().snapped, Snapped::Integer(1));
        let s = GrowthSeries::from_fn(1..=12, |_| 7).unwrap();
        let e = degree_estimate(&s).unwrap();
        assert_eq!(e.snapped, Snapped::Integer(0));
        assert!(e.raw.abs() < 1e-9);
    }

    #[test]
    fn unbounded_detection() {
        let s = GrowthSeries::from_fn(1..=20, |r| (r as u128).pow(r as u32)).unwrap();
        assert_eq!(degree_estimate(&s).unwrap().snapped, Snapped::Unbounded);
        let s = GrowthSeries::from_fn(1..=40, |r| 1u128 << r).unwrap();
        assert_eq!(degree_estimate(&s).unwrap().snapped, Snapped::Unbounded);
    }

    #[test]
    fn raw_when_not_near_integer() {
        // r^1.5 stays far from any integer degree
        let s = GrowthSeries::from_fn(10..=40, |r| (1e6 * (r as f64).powf(1.5)) as u128).unwrap();
        let e = degree_estimate(&s).unwrap();
        assert_eq!(e.snapped, Snapped::Raw);
        assert!((e.raw - 1.5).abs() < 0.05, "{}", e.raw);
    }

    #[test]
    fn degree_errors() {
        let s = GrowthSeries::from_fn(1..=5, |r| r as u128).unwrap();
        assert!(matches!(
            degree_estimate(&s),
            Err(Error::TooFewPoints { needed: 6, got: 5 })
        ));
        assert!(matches!(
            GrowthSeries::new(vec![(1, 3), (2, 2)]),
            Err(Error::NonMonotone { r: 2 })
        ));
        assert!(GrowthSeries::new(vec![(2, 3), (2, 4)]).is_err());
        assert!(GrowthSeries::new(vec![(0, 0)]).is_err());
    }

    #[test]
    fn slope_examples() {
        let s = GrowthSeries::from_fn(4..=12, |r| 16 * r as u128 - 16).unwrap();
        assert_eq!(
            slope_extract(&s).unwrap(),
            SlopeFit::Linear {
                slope: 16,
                offset: -16
            }
        );
        let s = GrowthSeries::from_fn(1..=12, |r| binom(r as u128 + 2, 2)).unwrap();
        assert_eq!(slope_extract(&s).unwrap(), SlopeFit::Nonlinear);
        let s = GrowthSeries::from_fn(1..=6, |_| 9).unwrap();
        assert_eq!(
            slope_extract(&s).unwrap(),
            SlopeFit::Linear { slope: 0, offset: 9 }
        );
    }

    #[test]
    fn slope_errors() {
        let s = GrowthSeries::from_fn(1..=3, |r| r as u128).unwrap();
        assert!(slope_extract(&s).is_err());
        let s = GrowthSeries::new(vec![(1, 1), (2, 2), (4, 4), (5, 5)]).unwrap();
        assert!(matches!(slope_extract(&s), Err(Error::NotConsecutive { r: 2 })));
    }

    #[test]
    fn slope_needs_long_enough_tail() {
        // quadratic head, affine only over the final two differences
        let s = GrowthSeries::new(vec![(1, 1), (2, 4), (3, 9), (4, 16), (5, 25), (6, 36), (7, 47), (8, 58)])
            .unwrap();
        assert_eq!(slope_extract(&s).unwrap(), SlopeFit::Nonlinear);
    }

    #[test]
    fn parse_series_file() {
        let s = GrowthSeries::parse("# r,dim\n1,2\n2,3\n\n3, 4 # tail\n").unwrap();
        assert_eq!(s.points(), &[(1, 2), (2, 3), (3, 4)]);
        assert_eq!(GrowthSeries::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(
            GrowthSeries::parse("1,2\n2;3\n"),
            Err(Error::SeriesFormat { line: 2, .. })
        ));
    }
}
