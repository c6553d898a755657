mod common;

use common::hh_oracle::{hochschild_ranks, Algebra};
use loophh::complex::GradedMap;
use loophh::cyclic::{
    connes_b, connes_b_total, hochschild, normalized_basis, CyclicBar, CyclicMorphism, Dga, Generator,
    HochschildComplex,
};
use loophh::ring::Ring;
use loophh::simplicial::{Cochains, SSet};

fn sphere_model(ring: Ring) -> Dga {
    Dga::from_cochains(&Cochains::new(&SSet::sphere(2).unwrap(), ring)).unwrap()
}

fn same(a: &GradedMap, b: &GradedMap) -> bool {
    a.add_scaled(-1, b).unwrap().is_zero()
}

// Normalized complex of k[x]/x^2 with |x| = e (cohomological), worked by hand:
// level n is spanned by 1⊗x^n and x⊗x^n, only b(1⊗x^n) = (1 + (-1)^{n + e(e(n-1))}) x⊗x^{n-1}
// can be nonzero. Returns ranks by cohomological degree 0..=top.
fn dual_numbers_oracle(e: i64, p: Option<i64>, top: i64) -> Vec<usize> {
    let mut ranks = vec![0usize; (top + 1) as usize];
    let kills = |n: i64| -> bool {
        if n == 0 {
            return false;
        }
        let c = 1 + if (n + e * e * (n - 1)) % 2 == 0 { 1 } else { -1 };
        match p {
            None => c != 0,
            Some(p) => c % p != 0,
        }
    };
    for n in 0..=top {
        // 1⊗x^n in degree n(e-1), x⊗x^n in degree n(e-1)+e
        let c1 = n * (e - 1);
        let c2 = n * (e - 1) + e;
        if !kills(n) && (0..=top).contains(&c1) {
            ranks[c1 as usize] += 1;
        }
        if !kills(n + 1) && (0..=top).contains(&c2) {
            ranks[c2 as usize] += 1;
        }
    }
    ranks
}

fn cohomological_ranks(a: &Dga, cap: usize, top: i64) -> Vec<usize> {
    let r = hochschild(a, cap).unwrap();
    assert!(r.stabilized, "cap {cap} did not stabilize");
    let t = r.cohomological();
    (0..=top).map(|c| t.betti(c)).collect()
}

#[test]
fn hochschild_of_sphere_cochains() {
    let q = sphere_model(Ring::Rationals);
    let oracle = dual_numbers_oracle(2, None, 4);
    assert_eq!(oracle, vec![1, 1, 1, 1, 1]);
    assert_eq!(cohomological_ranks(&q, 4, 4), oracle);
    let f2 = sphere_model(Ring::Prime(2));
    let oracle = dual_numbers_oracle(2, Some(2), 4);
    assert_eq!(oracle, vec![1, 1, 2, 2, 2]);
    assert_eq!(cohomological_ranks(&f2, 4, 4), oracle);
}

#[test]
fn hochschild_of_formal_sphere_matches() {
    let a = Dga::dual_numbers(Ring::Rationals, -2);
    assert_eq!(cohomological_ranks(&a, 4, 4), vec![1, 1, 1, 1, 1]);
}

#[test]
fn hochschild_of_exterior_on_degree_three() {
    let a = Dga::dual_numbers(Ring::Integers, -3);
    let oracle = dual_numbers_oracle(3, None, 7);
    assert_eq!(oracle, vec![1, 0, 1, 1, 1, 1, 1, 1]);
    assert_eq!(cohomological_ranks(&a, 3, 7), oracle);
}

#[test]
fn hochschild_of_ungraded_dual_numbers() {
    let a = Dga::dual_numbers(Ring::Rationals, 0);
    let r = hochschild(&a, 4).unwrap();
    assert_eq!(r.window, Some((0, 3)));
    assert!(r.stabilized);
    assert_eq!(r.table.bettis(), vec![2, 1, 1, 1]);
}

#[test]
fn mixed_degrees_are_flagged() {
    // x in degree 1 and y in degree -2 leave no honest window
    let json = r#"{"ring":"Q","grading":"homological","basis":[{"name":"1","degree":0},{"name":"x","degree":1},{"name":"y","degree":-2}],
        "unit":"1","product":[],"differential":[]}"#;
    let a = Dga::from_json(json).unwrap();
    let r = hochschild(&a, 2).unwrap();
    assert_eq!(r.window, None);
    assert!(!r.stabilized);
}

#[test]
fn bar_is_a_functor_on_chain_maps() {
    for a in [sphere_model(Ring::Integers), Dga::dual_numbers(Ring::Integers, -1)] {
        let bar = CyclicBar::new(&a, 2).unwrap();
        for i in 0..=2 {
            for j in 0..=2 {
                for phi in CyclicMorphism::enumerate(i, j) {
                    let m = bar.operator(&phi).unwrap();
                    assert!(m.is_chain_map(bar.level(i), bar.level(j)).unwrap(), "{phi}");
                    for k in 0..=2 {
                        for psi in CyclicMorphism::enumerate(j, k) {
                            let lhs = bar.operator(&phi.then(&psi).unwrap()).unwrap();
                            let rhs = m.then(&bar.operator(&psi).unwrap()).unwrap();
                            assert!(same(&lhs, &rhs), "{phi} then {psi}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn identity_acts_as_identity() {
    let a = sphere_model(Ring::Integers);
    let bar = CyclicBar::new(&a, 2).unwrap();
    for n in 0..=2 {
        let m = bar.operator(&CyclicMorphism::identity(n)).unwrap();
        assert!(same(&m, &GradedMap::identity(bar.level(n))));
    }
    assert!(bar.operator(&CyclicMorphism::identity(3)).is_err());
}

#[test]
fn connes_operator_squares_to_zero() {
    for a in [sphere_model(Ring::Integers), Dga::dual_numbers(Ring::Integers, -3), Dga::dual_numbers(Ring::Integers, 0)] {
        for n in 0..3 {
            let b1 = connes_b(&a, &normalized_basis(&a, n), &normalized_basis(&a, n + 1)).unwrap();
            let b2 = connes_b(&a, &normalized_basis(&a, n + 1), &normalized_basis(&a, n + 2)).unwrap();
            assert!(b1.then(&b2).unwrap().is_zero(), "level {n}");
        }
        let h = HochschildComplex::new(&a, 4).unwrap();
        let b = connes_b_total(&a, &h).unwrap();
        let c = &h.tot.complex;
        for (&t, m) in b.components() {
            // (BD + DB) on degree t, ignoring the top level where B leaves the truncation
            let db = c.d_ref(t + 1).map(|dd| dd.mul(c.ring(), m));
            let bd = c.d_ref(t).and_then(|dd| b.comp_ref(t - 1).map(|bb| bb.mul(c.ring(), dd)));
            let sum = match (db, bd) {
                (Some(x), Some(y)) => x.add(c.ring(), &y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => continue,
            };
            let layout = &h.tot.layout[&t];
            for (col, v) in sum.columns().iter().enumerate() {
                let top = layout.blocks.iter().any(|&(lvl, _, off, dim)| lvl == 4 && (off..off + dim).contains(&col));
                if !top {
                    assert!(v.is_empty(), "BD + DB in degree {t}");
                }
            }
        }
    }
}

#[test]
fn brute_force_oracle_agrees() {
    let oracle = hochschild_ranks(&Algebra::dual_numbers(2), 4, 3);
    assert_eq!(oracle, vec![1, 1, 1, 1]);
    assert_eq!(&dual_numbers_oracle(2, None, 3), &oracle);
    assert_eq!(&cohomological_ranks(&sphere_model(Ring::Rationals), 4, 3), &oracle);
    assert_eq!(&cohomological_ranks(&Dga::dual_numbers(Ring::Rationals, -2), 4, 3), &oracle);
    let s3 = hochschild_ranks(&Algebra::dual_numbers(3), 5, 4);
    assert_eq!(&cohomological_ranks(&Dga::dual_numbers(Ring::Rationals, -3), 5, 4), &s3);
    assert_eq!(hochschild_ranks(&Algebra::unit(), 3, 2), vec![1, 0, 0]);
}

#[test]
fn unit_algebra_is_a_point() {
    let r = hochschild(&Dga::unit_algebra(Ring::Integers), 3).unwrap();
    assert!(r.stabilized);
    assert_eq!(r.table.bettis(), vec![1]);
}

#[test]
fn hochschild_ignores_basis_order() {
    let a = Cochains::new(&SSet::sphere(2).unwrap(), Ring::Rationals);
    let a = Dga::from_cochains(&a).unwrap();
    let n = a.dim();
    let reversed: Vec<usize> = (0..n).rev().collect();
    let b = a.permuted(&reversed).unwrap();
    assert_eq!(cohomological_ranks(&b, 4, 3), cohomological_ranks(&a, 4, 3));
    let c = Dga::dual_numbers(Ring::Prime(2), -2).permuted(&[1, 0]).unwrap();
    assert_eq!(cohomological_ranks(&c, 4, 3), vec![1, 1, 2, 2]);
}

fn generator_words(n: usize, len: usize, top: usize) -> Vec<(usize, Vec<Generator>)> {
    let mut out = vec![(n, Vec::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (m, w) in &out {
            let mut gens = vec![Generator::Cyclic];
            gens.extend((0..=*m).filter(|_| *m >= 1).map(Generator::Face));
            gens.extend((0..=*m).filter(|_| *m < top).map(Generator::Degeneracy));
            for g in gens {
                let target = match g {
                    Generator::Face(_) => m - 1,
                    Generator::Degeneracy(_) => m + 1,
                    Generator::Cyclic => *m,
                };
                next.push((target, [w.clone(), vec![g]].concat()));
            }
        }
        out.extend(next.clone());
        out.retain(|(_, w)| w.len() <= len);
        out.sort_by_key(|(_, w)| format!("{w:?}"));
        out.dedup_by_key(|(_, w)| format!("{w:?}"));
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn normal_forms_are_closed() {
    // |Λ([i], [j])| = (i + 1) binom(i + j + 1, i + 1)
    for i in 0..=3 {
        for j in 0..=3 {
            assert_eq!(CyclicMorphism::enumerate(i, j).len(), (i + 1) * binomial(i + j + 1, i + 1), "[{i}] -> [{j}]");
        }
    }
    for n in 0..=3 {
        for (target, w) in generator_words(n, 3, 3) {
            let m = CyclicMorphism::from_word(n, &w).unwrap();
            assert_eq!(m.target(), target);
            assert!(CyclicMorphism::enumerate(n, target).contains(&m), "{w:?}");
        }
    }
}

#[test]
fn cyclic_identities_on_sphere_cochains() {
    let bar = CyclicBar::new(&sphere_model(Ring::Integers), 3).unwrap();
    let op = |m: &CyclicMorphism| bar.operator(m).unwrap();
    for n in 0..=3 {
        let t = CyclicMorphism::cyclic(n);
        let mut power = CyclicMorphism::identity(n);
        for _ in 0..=n {
            power = power.then(&t).unwrap();
        }
        assert!(power.is_identity());
        let mut acc = GradedMap::identity(bar.level(n));
        for _ in 0..=n {
            acc = acc.then(&op(&t)).unwrap();
        }
        assert!(same(&acc, &GradedMap::identity(bar.level(n))), "t^{} on level {n}", n + 1);
        for i in 1..=n {
            let lhs = t.then(&CyclicMorphism::face(n, i).unwrap()).unwrap();
            let rhs = CyclicMorphism::face(n, i - 1).unwrap().then(&CyclicMorphism::cyclic(n - 1)).unwrap();
            assert_eq!(lhs, rhs, "d_{i} t on level {n}");
            assert!(same(&op(&t).then(&op(&CyclicMorphism::face(n, i).unwrap())).unwrap(), &op(&rhs)));
        }
    }
}
