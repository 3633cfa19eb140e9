use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use quartic_core::golden::{self, Golden};
use quartic_core::z4::{self, howell_form, kernel, ModuleStructure};
use quartic_core::Z4Matrix;

type Span = BTreeSet<Vec<u8>>;

/// The row span by closing `{0}` under adding generators.
fn span(rows: &[Vec<u8>], n: usize) -> Span {
    let mut out: Span = BTreeSet::from([vec![0; n]]);
    let mut frontier: Vec<Vec<u8>> = vec![vec![0; n]];
    while let Some(v) = frontier.pop() {
        for r in rows {
            let w: Vec<u8> = v.iter().zip(r).map(|(a, b)| (a + b) % 4).collect();
            if out.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    out
}

fn all_vectors(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..4usize.pow(n as u32)).map(move |mut i| {
        (0..n)
            .map(|_| {
                let d = (i % 4) as u8;
                i /= 4;
                d
            })
            .collect()
    })
}

fn matrix(rows: usize, cols: usize, entries: &[u8]) -> Z4Matrix {
    Z4Matrix::new(rows, cols, &entries.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap()
}

fn times(m: &Z4Matrix, x: &[u8]) -> Vec<u8> {
    m.apply(x).unwrap()
}

#[test]
fn howell_form_is_a_canonical_span_generator_exhaustively() {
    for rows in 1..=2 {
        for cols in 1..=3 {
            let mut by_span: HashMap<Span, Z4Matrix> = HashMap::new();
            for entries in all_vectors(rows * cols) {
                let m = matrix(rows, cols, &entries);
                let h = howell_form(&m);
                let s = span(&m.row_vecs(), cols);
                assert_eq!(span(&h.row_vecs(), cols), s, "{m:?}");
                assert_eq!(howell_form(&h), h);
                let st = ModuleStructure::from_generators(cols, &m.row_vecs()).unwrap();
                assert_eq!(st.order() as usize, s.len());
                if let Some(prev) = by_span.insert(s, h.clone()) {
                    assert_eq!(prev, h, "two Howell forms for one span");
                }
            }
        }
    }
}

#[test]
fn kernel_and_solve_exhaustively() {
    for cols in 1..=3 {
        for entries in all_vectors(2 * cols) {
            let m = matrix(2, cols, &entries);
            let k = kernel(&m);
            let zeros: Span = all_vectors(cols).filter(|x| times(&m, x).iter().all(|&y| y == 0)).collect();
            assert_eq!(span(&k.generators, cols), zeros);
            for g in &k.generators {
                assert!(times(&m, g).iter().all(|&y| y == 0));
            }
            let image: Span = all_vectors(cols).map(|x| times(&m, &x)).collect();
            for b in all_vectors(2) {
                match z4::solve(&m, &b) {
                    Ok(x) => assert_eq!(times(&m, &x), b),
                    Err(_) => assert!(!image.contains(&b)),
                }
            }
        }
    }
}

fn entries(n: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn howell_spans_agree_at_six_by_six(e in entries(36)) {
        let m = matrix(6, 6, &e);
        let h = howell_form(&m);
        prop_assert_eq!(span(&h.row_vecs(), 6), span(&m.row_vecs(), 6));
        prop_assert_eq!(howell_form(&h), h);
    }

    #[test]
    fn kernel_and_solve_at_six_by_six(e in entries(36), x in entries(6)) {
        let m = matrix(6, 6, &e);
        let k = kernel(&m);
        for g in &k.generators {
            prop_assert!(times(&m, g).iter().all(|&y| y == 0));
        }
        let zeros = all_vectors(6).filter(|v| times(&m, v).iter().all(|&y| y == 0)).count();
        prop_assert_eq!(k.order() as usize, zeros);
        let b = times(&m, &x);
        prop_assert_eq!(times(&m, &z4::solve(&m, &b).unwrap()), b);
    }

    #[test]
    fn fixed_submodule_is_an_intersection(a in entries(36), b in entries(36)) {
        let (a, b) = (matrix(6, 6, &a), matrix(6, 6, &b));
        let both = z4::fixed_submodule(&[a.clone(), b.clone()]).unwrap();
        let fa = z4::fixed_submodule(&[a.clone()]).unwrap();
        let fb = z4::fixed_submodule(&[b.clone()]).unwrap();
        for v in all_vectors(6) {
            let fixed = times(&a, &v) == v && times(&b, &v) == v;
            prop_assert_eq!(both.contains(&v), fixed);
            prop_assert_eq!(both.contains(&v), fa.contains(&v) && fb.contains(&v));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in entries(16), b in entries(16)) {
        let (a, b) = (matrix(4, 4, &a), matrix(4, 4, &b));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap() % 4);
        prop_assert_eq!(a.inverse().is_some(), a.det().unwrap() % 2 == 1);
    }
}

#[test]
fn published_galois_image() {
    let g = Golden::builtin();
    let (s, t) = (golden::matrix(&g.galois.rho_sigma), golden::matrix(&g.galois.rho_tau));
    assert_eq!(t.mul(&s).unwrap().mul(&t).unwrap(), s.pow(3).unwrap());
    let c = z4::group_closure(&[s.clone(), t.clone()]).unwrap();
    assert_eq!(c.order(), 8);
    assert!(c.dihedral8 && !c.abelian && !c.cyclic);
    assert_eq!(z4::element_order(&s), 4);
    assert_eq!(z4::element_order(&t), 2);
    let w = golden::matrix(&g.weil.matrix);
    assert_eq!(z4::gsp_check(&s, &w).unwrap(), 1);
    assert_eq!(z4::gsp_check(&t, &w).unwrap(), 3);
}

#[test]
fn cyclic_group_is_not_dihedral() {
    let r = Z4Matrix::from_rows(&[[0, 3], [1, 0]]).unwrap();
    let c = z4::group_closure(&[r]).unwrap();
    assert_eq!(c.order(), 4);
    assert!(c.cyclic && c.abelian && !c.dihedral8);
}
