use std::sync::OnceLock;

use proptest::prelude::*;
use quartic_core::curve::series::valuation;
use quartic_core::field::standard;
use quartic_core::field::{Field, PrimeField};
use quartic_core::{Form, PlaneCurve, Point};

type Pt = Point<u64>;

struct Shadow {
    curve: PlaneCurve<PrimeField>,
    points: Vec<Pt>,
    /// Lines `[a, b, c]` meeting the curve in four distinct rational points.
    split_lines: Vec<[u64; 3]>,
}

fn shadow() -> &'static Shadow {
    static S: OnceLock<Shadow> = OnceLock::new();
    S.get_or_init(|| {
        let f = standard::shadow_f73();
        let curve = PlaneCurve::fermat(&f);
        let points = curve.enumerate_points().unwrap();
        let mut split_lines = Vec::new();
        'outer: for a in 0..73u64 {
            for b in 0..73u64 {
                for c in [1u64, 0] {
                    let on = points.iter().filter(|p| {
                        let [x, y, z] = p.coords();
                        (a * x + b * y + c * z) % 73 == 0
                    });
                    if on.count() == 4 && (a, b, c) != (0, 0, 0) {
                        split_lines.push([a, b, c]);
                        if split_lines.len() == 40 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        Shadow { curve, points, split_lines }
    })
}

/// Points of `x^4 + y^4 = z^4` over `F_p` counted with plain integers.
fn brute_count(p: u64) -> usize {
    let q = |v: u64| v.pow(4) % p;
    let affine = (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).filter(|&(x, y)| (q(x) + q(y)) % p == 1).count();
    let infinity = (0..p).filter(|&x| (q(x) + 1) % p == 0).count();
    affine + infinity
}

#[test]
fn point_counts_over_small_fields() {
    assert_eq!(PlaneCurve::fermat(&standard::f3()).enumerate_points().unwrap().len(), 4);
    assert_eq!(PlaneCurve::fermat(&standard::f9()).enumerate_points().unwrap().len(), 28);
    assert_eq!(PlaneCurve::fermat(&standard::f27()).enumerate_points().unwrap().len(), 28);
    assert_eq!(brute_count(3), 4);
    assert_eq!(shadow().points.len(), brute_count(73));
}

#[test]
fn cusp_tangents_have_contact_four_in_every_chart() {
    let k = standard::q_delta();
    let c = PlaneCurve::fermat(&k);
    let sp = c.standard_points().unwrap();
    // Y = Z at A0 = [0 : 1 : 1]; X = Z at B0 = [1 : 0 : 1]
    let cases = [(&sp.a[0], Form::linear(&k, k.zero(), k.one(), k.from_i64(-1))), (&sp.b[0], Form::linear(&k, k.one(), k.zero(), k.from_i64(-1)))];
    for (p, g) in cases {
        assert_eq!(c.ord_at(p, &g).unwrap(), 4);
        for chart in 0..3 {
            if k.is_zero(&p.coords()[chart]) {
                continue;
            }
            let b = c.local_expansion_in_chart(p, chart, 12).unwrap();
            assert_eq!(valuation(&k, &b.eval(&k, &g, 12)), Some(4));
        }
    }
}

fn line(f: &PrimeField, [a, b, c]: [u64; 3]) -> Form<u64> {
    Form::linear(f, a, b, c)
}

fn random_form(f: &PrimeField, d: u32, coeffs: &[u64]) -> Form<u64> {
    let n = ((d + 1) * (d + 2) / 2) as usize;
    Form::from_coeff_vector(f, d, &coeffs[..n].iter().map(|c| c % 73).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orders_of_split_products_sum_to_four_d(picks in prop::collection::vec(0usize..40, 1..5)) {
        let s = shadow();
        let f = s.curve.field();
        let g = Form::product(f, &picks.iter().map(|&i| line(f, s.split_lines[i])).collect::<Vec<_>>());
        let total: usize = s.points.iter().map(|p| s.curve.ord_at(p, &g).unwrap()).sum();
        prop_assert_eq!(total, 4 * picks.len());
    }

    #[test]
    fn orders_of_random_forms_are_bounded(d in 1u32..4, coeffs in prop::collection::vec(0u64..73, 10)) {
        let s = shadow();
        let f = s.curve.field();
        let g = random_form(f, d, &coeffs);
        prop_assume!(!s.curve.reduce(&g).is_zero());
        let total: usize = s.points.iter().map(|p| s.curve.ord_at(p, &g).unwrap()).sum();
        prop_assert!(total <= 4 * d as usize);
        // a zero of order 0 is exactly a nonvanishing value
        for p in &s.points {
            let zero = f.is_zero(&g.eval(f, p.coords()));
            prop_assert_eq!(zero, s.curve.ord_at(p, &g).unwrap() > 0);
        }
    }

    #[test]
    fn expansions_are_consistent_under_refinement(i in 0usize..1000, k in 1usize..24) {
        let s = shadow();
        let p = &s.points[i % s.points.len()];
        let fine = s.curve.local_expansion(p, 2 * k).unwrap().truncate(k);
        let coarse = s.curve.local_expansion_in_chart(p, p.chart(s.curve.field()), k).unwrap();
        prop_assert_eq!(fine.series(), coarse.series());
    }

    #[test]
    fn orders_are_chart_independent(i in 0usize..1000, pick in prop::collection::vec(0usize..40, 1..3)) {
        let s = shadow();
        let f = s.curve.field();
        let p = &s.points[i % s.points.len()];
        let g = Form::product(f, &pick.iter().map(|&j| line(f, s.split_lines[j])).collect::<Vec<_>>());
        let want = s.curve.ord_at(p, &g).unwrap();
        for chart in 0..3 {
            if f.is_zero(&p.coords()[chart]) {
                continue;
            }
            let b = s.curve.local_expansion_in_chart(p, chart, 24).unwrap();
            prop_assert_eq!(valuation(f, &b.eval(f, &g, 24)), Some(want));
        }
    }
}
