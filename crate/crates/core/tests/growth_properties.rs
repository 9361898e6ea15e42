use proptest::prelude::*;
use workbench_core::growth::{degree_estimate, slope_extract, GrowthSeries, SlopeFit, Snapped};

fn poly_series(coeffs: &[u64], r_max: u64) -> GrowthSeries {
    GrowthSeries::from_fn(1..=r_max, |r| {
        coeffs.iter().rev().fold(0u128, |acc, &c| acc * r as u128 + c as u128)
    })
    .unwrap()
}

proptest! {
    #[test]
    fn polynomial_growth_snaps_to_its_degree(
        d in 1usize..=4,
        lead in 1u64..=5,
        lower in prop::collection::vec(0u64..=5, 4),
        r_max in 20u64..=30,
    ) {
        let mut coeffs: Vec<u64> = lower[..d].iter().map(|&k| k * lead).collect();
        coeffs[0] = coeffs[0].max(1);
        coeffs.push(lead);
        let est = degree_estimate(&poly_series(&coeffs, r_max)).unwrap();
        prop_assert_eq!(est.snapped, Snapped::Integer(d as u32), "raw {}", est.raw);
    }

    #[test]
    fn affine_series_give_back_slope(slope in 1u64..=1000, offset in 0u64..=1000, start in 1u64..=10) {
        let s = GrowthSeries::from_fn(start..start + 8, |r| (slope * r + offset) as u128).unwrap();
        prop_assert_eq!(
            slope_extract(&s).unwrap(),
            SlopeFit::Linear { slope: slope as i128, offset: offset as i128 }
        );
    }

    #[test]
    fn text_round_trip(values in prop::collection::vec(1u64..1000, 1..20)) {
        let mut acc = 0u128;
        let points: Vec<(u64, u128)> = values
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                acc += v as u128;
                (k as u64 + 1, acc)
            })
            .collect();
        let s = GrowthSeries::new(points).unwrap();
        prop_assert_eq!(GrowthSeries::parse(&s.to_text()).unwrap(), s);
    }
}

#[test]
fn super_polynomial_growth_is_unbounded() {
    let rr = GrowthSeries::from_fn(1..=25, |r| (r as u128).pow(r as u32)).unwrap();
    assert_eq!(degree_estimate(&rr).unwrap().snapped, Snapped::Unbounded);
    let exp = GrowthSeries::from_fn(1..=40, |r| 1u128 << r).unwrap();
    assert_eq!(degree_estimate(&exp).unwrap().snapped, Snapped::Unbounded);
}

#[test]
fn quadratic_series_is_not_linear() {
    let s = GrowthSeries::from_fn(1..=12, |r| (r * r) as u128).unwrap();
    assert_eq!(slope_extract(&s).unwrap(), SlopeFit::Nonlinear);
}
