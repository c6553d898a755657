use loophh::comparison::*;
use loophh::cyclic::{CyclicMorphism, Generator};
use loophh::hc::{FinCat, Nerve};
use loophh::ring::Ring;
use loophh::simplicial::{SSet, Simplex, SimplicialMap, DEFAULT_CEILING};
use loophh::surjection::{assoc, SurjElement, SurjSeq};

fn setting(x: &SSet, ring: Ring, cap: usize, degree_cap: Option<usize>) -> LoopSetting {
    LoopSetting::new(x, ring, cap, degree_cap, DEFAULT_CEILING).unwrap()
}

fn el(s: &str, arity: usize) -> SurjElement {
    SurjElement::basis(SurjSeq::new(arity, s.bytes().map(|b| b - b'0').collect()).unwrap())
}

fn generators(max_level: usize) -> Vec<CyclicMorphism> {
    let mut out = Vec::new();
    for n in 0..=max_level {
        out.push(CyclicMorphism::generator(n, Generator::Cyclic).unwrap());
        for i in 0..=n {
            if n >= 1 {
                out.push(CyclicMorphism::generator(n, Generator::Face(i)).unwrap());
            }
            if n < max_level {
                out.push(CyclicMorphism::generator(n, Generator::Degeneracy(i)).unwrap());
            }
        }
    }
    out
}

#[test]
fn pi_interacts_with_generators() {
    for x in [SSet::delta(1), SSet::sphere(2).unwrap()] {
        let s = setting(&x, Ring::Integers, 2, None);
        for phi in generators(2) {
            assert_eq!(interaction_residual(&s, &phi).unwrap(), (0, 0), "{phi} on {}", x.name());
        }
    }
}

#[test]
fn pi_interacts_with_composites() {
    // every morphism of the truncated category is a composite of generators
    let (_, morphisms) = FinCat::cyclic(2);
    let s = setting(&SSet::sphere(2).unwrap(), Ring::Integers, 2, None);
    for phi in &morphisms {
        assert_eq!(interaction_residual(&s, phi).unwrap(), (0, 0), "{phi}");
    }
}

#[test]
fn bar_operators_match_cochain_products() {
    let (_, morphisms) = FinCat::cyclic(2);
    for x in [SSet::delta(1), SSet::sphere(1).unwrap()] {
        let s = setting(&x, Ring::Integers, 2, None);
        for phi in &morphisms {
            assert_eq!(bar_model_residual(&s, phi), 0, "{phi} on {}", x.name());
        }
    }
}

#[test]
fn recipe_of_faces_and_identity() {
    let id = CyclicMorphism::identity(2);
    let u = el("1213", 3);
    assert_eq!(phi_recipe(&u, &id).unwrap(), u);
    // [1] -> [0]: both inputs land in one list
    let lists: Vec<Vec<Vec<usize>>> = (0..=1).map(|i| CyclicMorphism::face(1, i).unwrap().lists()).collect();
    for (i, l) in lists.iter().enumerate() {
        let r = phi_recipe(&assoc(1), &CyclicMorphism::face(1, i).unwrap()).unwrap();
        let expected = if l[0] == vec![0, 1] { el("12", 2) } else { el("21", 2) };
        assert_eq!(r, expected, "face {i}");
    }
    // a degeneracy inserts the unit: ⟨1 2 3⟩ with slot 2 emptied
    let s0 = CyclicMorphism::degeneracy(1, 0).unwrap();
    let r = phi_recipe(&assoc(3), &s0).unwrap();
    assert_eq!(r.arity(), 2);
    assert_eq!(r.degree(), 0);
}

#[test]
fn coherence_residuals_vanish() {
    for x in [SSet::point(), SSet::delta(1), SSet::sphere(1).unwrap(), SSet::sphere(2).unwrap()] {
        for ring in [Ring::Integers, Ring::Prime(2)] {
            let s = setting(&x, ring, 2, Some(6));
            let h = build_transformation(&s, 2).unwrap();
            assert_eq!(h.coherence_residuals().unwrap(), vec![0, 0, 0], "{} over {ring}", x.name());
            assert_eq!(h.coboundary_factorizations(&s).unwrap(), vec![0, 0], "{} over {ring}", x.name());
        }
    }
}

#[test]
fn operations_are_universal() {
    // the lifts do not depend on the space or the ring
    let a = build_transformation(&setting(&SSet::point(), Ring::Integers, 2, None), 2).unwrap();
    let b = build_transformation(&setting(&SSet::sphere(2).unwrap(), Ring::Prime(2), 2, Some(6)), 2).unwrap();
    assert_eq!(a.operations, b.operations);
    assert!(a.lifts > 0);
    // degenerate simplices carry the zero operation
    for (s, op) in a.nerve.level(1).iter().zip(&a.operations[1]) {
        if s.is_degenerate(&a.cat) {
            assert!(op.is_zero());
        }
    }
}

#[test]
fn level_zero_is_alexander_whitney() {
    for x in [SSet::delta(1), SSet::sphere(2).unwrap()] {
        let s = setting(&x, Ring::Integers, 2, None);
        let h = build_transformation(&s, 0).unwrap();
        assert_eq!(aw_residuals(&s, &h.family[0], &h.nerve).unwrap(), vec![0, 0, 0]);
    }
}

fn collapse_map() -> SimplicialMap {
    let x = SSet::delta(2);
    let vertex = Simplex { dim: 0, base_dim: 0, index: 0, jumps: 0 };
    let edge = Simplex { dim: 1, base_dim: 0, index: 0, jumps: 0 };
    let f = SimplicialMap::new(vec![vec![vertex; x.count(0)], vec![edge; x.count(1)], vec![Simplex::nondegenerate(2, 0)]]);
    f.check(&x, &SSet::sphere(2).unwrap()).unwrap();
    f
}

#[test]
fn natural_in_the_space() {
    let f = collapse_map();
    let x = setting(&SSet::delta(2), Ring::Integers, 1, Some(4));
    let y = setting(&SSet::sphere(2).unwrap(), Ring::Integers, 1, Some(4));
    let (cat, morphisms) = FinCat::cyclic(1);
    let nerve = Nerve::new(&cat, 2);
    let (ops, _) = coherent_operations(&cat, &morphisms, &nerve, 2).unwrap();
    assert_eq!(naturality_in_space(&x, &y, &f, &cat, &morphisms, &nerve, &ops).unwrap(), 0);
}

#[test]
fn main_theorem_on_small_spaces() {
    let cases = [
        (SSet::point(), Ring::Integers, 2, 2),
        (SSet::sphere(2).unwrap(), Ring::Prime(2), 3, 4),
        (SSet::sphere(2).unwrap(), Ring::Rationals, 3, 4),
    ];
    for (x, ring, loop_cap, hochschild_cap) in cases {
        let case = TheoremCase {
            space: x,
            ring,
            object_cap: 2,
            nerve_cap: 2,
            degree_cap: Some(6),
            loop_cap,
            hochschild_cap,
            ceiling: DEFAULT_CEILING,
            legs: false,
        };
        let r = main_theorem_check(&case).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(r.stabilized());
    }
}

#[test]
fn sphere_two_loop_cohomology() {
    let case = TheoremCase {
        space: SSet::sphere(2).unwrap(),
        ring: Ring::Rationals,
        object_cap: 1,
        nerve_cap: 1,
        degree_cap: Some(4),
        loop_cap: 3,
        hochschild_cap: 4,
        ceiling: DEFAULT_CEILING,
        legs: false,
    };
    let r = main_theorem_check(&case).unwrap();
    assert_eq!(r.compared, Some((0, 3)));
    let bettis: Vec<usize> = (0..=3).map(|d| r.loop_homology.betti(d)).collect();
    assert_eq!(bettis, vec![1, 1, 1, 1]);
}

#[test]
fn point_zigzag_legs() {
    let case = TheoremCase {
        space: SSet::point(),
        ring: Ring::Rationals,
        object_cap: 2,
        nerve_cap: 2,
        degree_cap: None,
        loop_cap: 2,
        hochschild_cap: 2,
        ceiling: DEFAULT_CEILING,
        legs: true,
    };
    let r = main_theorem_check(&case).unwrap();
    assert!(r.passed(), "{}", r.to_json());
    assert_eq!(r.legs, Some(vec![(true, true); 3]));
    assert_eq!(r.hochschild.bettis(), vec![1]);
    assert_eq!(r.loop_homology.bettis(), vec![1]);
}

#[test]
fn zigzag_legs_on_spheres() {
    for (x, ring) in [(SSet::sphere(1).unwrap(), Ring::Rationals), (SSet::sphere(2).unwrap(), Ring::Prime(2))] {
        let case = TheoremCase {
            space: x,
            ring,
            object_cap: 2,
            nerve_cap: 2,
            degree_cap: Some(6),
            loop_cap: 2,
            hochschild_cap: 2,
            ceiling: DEFAULT_CEILING,
            legs: true,
        };
        let r = main_theorem_check(&case).unwrap();
        assert_eq!(r.legs, Some(vec![(true, true); 3]), "{}", r.to_json());
    }
}
