use std::collections::BTreeMap;

use loophh::complex::{tensor, FinComplex};
use loophh::matrix::SparseMatrix;
use loophh::ring::Ring;
use loophh::simplicial::*;
use proptest::prelude::*;

fn bettis(c: &FinComplex, lo: i64, hi: i64) -> Vec<usize> {
    let h = c.homology(lo, hi).unwrap();
    (lo..=hi).map(|k| h.betti(k)).collect()
}

/// Cochain Betti numbers in cochain degrees `0..=top`.
fn cochain_bettis(x: &SSet, ring: Ring, top: usize) -> Vec<usize> {
    let c = Cochains::new(x, ring);
    let mut b = bettis(c.complex(), -(top as i64), 0);
    b.reverse();
    b
}

fn product(x: &SSet, y: &SSet) -> Product {
    Product::new(&[x, y], None, DEFAULT_CEILING).unwrap()
}

#[test]
fn boundary_of_tetrahedron_from_json() {
    let text = r#"{"dims": {"0": ["0","1","2","3"], "1": ["01","02","03","12","13","23"], "2": ["012","013","023","123"]},
        "faces": {
          "01": [[0,"1",[]],[1,"0",[]]], "02": [[0,"2",[]],[1,"0",[]]], "03": [[0,"3",[]],[1,"0",[]]],
          "12": [[0,"2",[]],[1,"1",[]]], "13": [[0,"3",[]],[1,"1",[]]], "23": [[0,"3",[]],[1,"2",[]]],
          "012": [[0,"12",[]],[1,"02",[]],[2,"01",[]]], "013": [[0,"13",[]],[1,"03",[]],[2,"01",[]]],
          "023": [[0,"23",[]],[1,"03",[]],[2,"02",[]]], "123": [[0,"23",[]],[1,"13",[]],[2,"12",[]]]}}"#;
    let x = SSet::from_json(text).unwrap();
    assert_eq!(x.counts(), vec![4, 6, 4]);
    let h = chain_complex(&x, Ring::Integers).homology(0, 2).unwrap();
    assert_eq!(h.bettis(), vec![1, 0, 1]);
    assert!(h.rows.iter().all(|r| r.torsion.is_empty()));
}

#[test]
fn square_and_point_products() {
    let d1 = SSet::delta(1);
    let sq = product(&d1, &d1);
    assert_eq!(sq.sset().count(2), 2);
    let s2 = SSet::sphere(2).unwrap();
    let p = product(&s2, &SSet::point());
    assert_eq!(p.sset().counts(), s2.counts());
}

#[test]
fn sphere_squared_kunneth() {
    let s2 = SSet::sphere(2).unwrap();
    let p = product(&s2, &s2);
    assert_eq!(cochain_bettis(p.sset(), Ring::Rationals, 4), vec![1, 0, 2, 0, 1]);
    // independently: the tensor square of the cochain complex
    let c = Cochains::new(&s2, Ring::Rationals);
    let t = tensor(c.complex(), c.complex()).unwrap();
    let mut b = bettis(&t, -4, 0);
    b.reverse();
    assert_eq!(b, vec![1, 0, 2, 0, 1]);
}

#[test]
fn interval_cochains() {
    let d1 = SSet::delta(1);
    let c = Cochains::new(&d1, Ring::Integers);
    assert_eq!((c.rank(0), c.rank(1)), (2, 1));
    // ∂e = v1 - v0 and δa = -a∘∂ in degree 0
    assert_eq!(c.coboundary(&Cochain::basis(0, 0)).coeffs, vec![(0, 1)]);
    assert_eq!(c.coboundary(&Cochain::basis(0, 1)).coeffs, vec![(0, -1)]);
    let s2 = Cochains::new(&SSet::sphere(2).unwrap(), Ring::Integers);
    assert_eq!((s2.rank(0), s2.rank(1), s2.rank(2)), (1, 0, 1));
    assert!(s2.coboundary(&Cochain::basis(0, 0)).is_zero());
}

#[test]
fn cup_on_the_interval() {
    let c = Cochains::new(&SSet::delta(1), Ring::Integers);
    assert!(c.cup(&Cochain::basis(0, 0), &Cochain::basis(0, 1)).is_zero());
    assert_eq!(c.cup(&Cochain::basis(0, 0), &Cochain::basis(0, 0)).coeffs, vec![(0, 1)]);
    assert_eq!(c.cup(&Cochain::basis(0, 0), &Cochain::basis(1, 0)).coeffs, vec![(0, 1)]);
    assert_eq!(c.cup(&Cochain::basis(1, 0), &Cochain::basis(0, 1)).coeffs, vec![(0, 1)]);
    assert!(c.cup(&Cochain::basis(0, 1), &Cochain::basis(1, 0)).is_zero());
}

fn basis(c: &Cochains, top: usize) -> Vec<Cochain> {
    (0..=top).flat_map(|p| (0..c.rank(p)).map(move |i| Cochain::basis(p, i))).collect()
}

fn cup_or_zero(c: &Cochains, a: &Cochain, b: &Cochain) -> Cochain {
    if a.degree + b.degree > c.sset().max_dim() {
        Cochain::zero(a.degree + b.degree)
    } else {
        c.cup(a, b)
    }
}

#[test]
fn cup_unit_and_associativity_on_the_triangle() {
    let c = Cochains::new(&SSet::delta(2), Ring::Integers);
    let b = basis(&c, 2);
    let one = c.unit();
    for a in &b {
        assert_eq!(c.cup(&one, a).coeffs, a.coeffs);
        assert_eq!(c.cup(a, &one).coeffs, a.coeffs);
    }
    for x in &b {
        for y in &b {
            for z in &b {
                let l = cup_or_zero(&c, &cup_or_zero(&c, x, y), z);
                let r = cup_or_zero(&c, x, &cup_or_zero(&c, y, z));
                assert_eq!(l.coeffs, r.coeffs);
            }
        }
    }
}

#[test]
fn external_product_of_spheres_is_a_quasi_iso() {
    let s2 = SSet::sphere(2).unwrap();
    let c = Cochains::new(&s2, Ring::Prime(2));
    let p = product(&s2, &s2);
    let pc = Cochains::new(p.sset(), Ring::Prime(2));
    let aw = aw_external(&[&c, &c], &p, &pc).unwrap();
    let src = tensor_power(&[c.complex().clone(), c.complex().clone()]).unwrap();
    assert!(loophh::complex::is_quasi_iso_on(&aw, &src, pc.complex(), -4, 0).unwrap());
}

#[test]
fn external_product_is_a_chain_map() {
    let d1 = SSet::delta(1);
    let c = Cochains::new(&d1, Ring::Integers);
    let p = product(&d1, &d1);
    let pc = Cochains::new(p.sset(), Ring::Integers);
    let aw = aw_external(&[&c, &c], &p, &pc).unwrap();
    let src = tensor_power(&[c.complex().clone(), c.complex().clone()]).unwrap();
    assert!(aw.is_chain_map(&src, pc.complex()).unwrap());
    // with a point factor it is the canonical identification
    let pt = SSet::point();
    let cp = Cochains::new(&pt, Ring::Integers);
    let q = product(&d1, &pt);
    let qc = Cochains::new(q.sset(), Ring::Integers);
    let aw = aw_external(&[&c, &cp], &q, &qc).unwrap();
    for m in aw.components().values() {
        assert_eq!(m.to_dense(), SparseMatrix::identity(m.cols()).to_dense());
    }
}

const POOL: [&str; 6] = ["point", "delta:1", "boundary:2", "sphere:1", "sphere:2", "boundary:3"];

fn euler(x: &SSet) -> i64 {
    x.counts().iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kunneth_over_the_rationals(i in 0..POOL.len(), j in 0..POOL.len()) {
        let (x, y) = (SSet::builtin(POOL[i]).unwrap(), SSet::builtin(POOL[j]).unwrap());
        let p = product(&x, &y);
        let top = p.max_dim();
        let (bx, by) = (cochain_bettis(&x, Ring::Rationals, x.max_dim()), cochain_bettis(&y, Ring::Rationals, y.max_dim()));
        let mut expected = vec![0usize; top + 1];
        for (a, &u) in bx.iter().enumerate() {
            for (b, &v) in by.iter().enumerate() {
                expected[a + b] += u * v;
            }
        }
        prop_assert_eq!(cochain_bettis(p.sset(), Ring::Rationals, top), expected);
    }

    #[test]
    fn euler_characteristic_is_multiplicative(i in 0..POOL.len(), j in 0..POOL.len()) {
        let (x, y) = (SSet::builtin(POOL[i]).unwrap(), SSet::builtin(POOL[j]).unwrap());
        prop_assert_eq!(euler(product(&x, &y).sset()), euler(&x) * euler(&y));
    }

    #[test]
    fn homology_has_the_chain_euler_characteristic(
        a in 1usize..5, b in 1usize..5, entries in proptest::collection::vec(-2i64..3, 16),
    ) {
        let m = SparseMatrix::from_triplets(Ring::Rationals, a, b, (0..a).flat_map(|r| (0..b).map(move |c| (r, c))).map(|(r, c)| (r, c, entries[(r * 4 + c) % 16])));
        let c = FinComplex::new(Ring::Rationals, BTreeMap::from([(0, a), (1, b)]), BTreeMap::from([(1, m)])).unwrap();
        let h = c.homology(0, 1).unwrap();
        prop_assert_eq!(h.betti(0) as i64 - h.betti(1) as i64, c.euler_characteristic(0, 1));
    }
}
