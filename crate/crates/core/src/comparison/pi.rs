//! Shared data for comparing the cyclic bar construction of `C^*(X)` with the
//! cocyclic space `[n] -> C^*(X^{n+1})`, and the maps `π_φ` on pure tensors.

use crate::cyclic::{bar_apply, CocyclicSpace, CyclicBar, CyclicMorphism, Dga};
use crate::error::Result;
use crate::matrix::normalize;
use crate::ring::Ring;
use crate::sign::koszul_sign;
use crate::simplicial::{Cochain, Cochains, SSet, SimplicialMap};

/// `X`, its cochain algebra, the cyclic bar construction on it and the
/// cochains of the powers `X^{n+1}`, all up to level `cap`.
#[derive(Clone, Debug)]
pub struct LoopSetting {
    x: SSet,
    ring: Ring,
    cochains: Cochains,
    dga: Dga,
    bar: CyclicBar,
    space: CocyclicSpace,
    projections: Vec<Vec<SimplicialMap>>,
}

impl LoopSetting {
    pub fn new(x: &SSet, ring: Ring, cap: usize, degree_cap: Option<usize>, ceiling: usize) -> Result<Self> {
        let cochains = Cochains::new(x, ring);
        let dga = Dga::from_cochains(&cochains)?;
        let bar = CyclicBar::new(&dga, cap)?;
        let space = CocyclicSpace::new(x, ring, cap, degree_cap, ceiling)?;
        let projections = (0..=cap).map(|n| (0..=n).map(|k| space.power(n).projection(k)).collect()).collect();
        Ok(LoopSetting { x: x.clone(), ring, cochains, dga, bar, space, projections })
    }

    pub fn space_set(&self) -> &SSet {
        &self.x
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn cap(&self) -> usize {
        self.bar.cap()
    }

    pub fn cochains(&self) -> &Cochains {
        &self.cochains
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn bar(&self) -> &CyclicBar {
        &self.bar
    }

    pub fn space(&self) -> &CocyclicSpace {
        &self.space
    }

    /// The cochain behind basis element `g` of the algebra.
    pub fn basis_cochain(&self, g: usize) -> Cochain {
        let (k, i) = self.dga.local(g);
        if g == self.dga.unit() {
            return self.cochains.unit();
        }
        Cochain::basis((-k) as usize, i)
    }

    /// `pr_k^* a` on `X^{n+1}`; zero above the degree cap of the power.
    pub fn pull(&self, n: usize, k: usize, a: &Cochain) -> Cochain {
        if a.degree > self.space.power(n).max_dim() {
            return Cochain::zero(a.degree);
        }
        self.cochains.pullback(&self.projections[n][k], a)
    }

    /// `π_φ(a_0 ⊗ … ⊗ a_i) = pr_{g(0)}^* a_0 ⊗ … ⊗ pr_{g(i)}^* a_i` on
    /// `X^{j+1}`, `g` the list assignment of `φ: [i] -> [j]`.
    pub fn pi(&self, phi: &CyclicMorphism, inputs: &[Cochain]) -> Vec<Cochain> {
        let g = phi.assignment();
        inputs.iter().enumerate().map(|(l, a)| self.pull(phi.target(), g[l], a)).collect()
    }

    pub fn tuple_cochains(&self, t: &[u32]) -> Vec<Cochain> {
        t.iter().map(|&g| self.basis_cochain(g as usize)).collect()
    }
}

/// A scalar times a tensor product of cochains.
#[derive(Clone, Debug)]
pub struct PureTensor {
    pub coeff: i64,
    pub factors: Vec<Cochain>,
}

impl PureTensor {
    pub fn new(coeff: i64, factors: Vec<Cochain>) -> Self {
        PureTensor { coeff, factors }
    }

    /// Normal form: every factor primitive with a positive (over a prime
    /// field: unit) leading coefficient, the scalars collected in front.
    /// `None` for the zero tensor.
    pub fn canonical(&self, ring: Ring) -> Option<(i64, Vec<(usize, Vec<(usize, i64)>)>)> {
        let mut c = ring.reduce(self.coeff);
        if c == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let v = normalize(ring, f.coeffs.clone());
            let lead = v.first()?.1;
            let (scale, prim): (i64, Vec<(usize, i64)>) = match ring {
                Ring::Prime(p) => {
                    let inv = mod_inverse(lead, p as i64);
                    (lead, v.iter().map(|&(i, x)| (i, ring.reduce(x * inv))).collect())
                }
                _ => {
                    let g = v.iter().fold(0i64, |acc, &(_, x)| gcd(acc, x)) * lead.signum();
                    (g, v.iter().map(|&(i, x)| (i, x / g)).collect())
                }
            };
            c = ring.reduce(c * scale);
            out.push((f.degree, prim));
        }
        Some((c, out))
    }

    pub fn same_as(&self, other: &PureTensor, ring: Ring) -> bool {
        self.canonical(ring) == other.canonical(ring)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// `φ_*` of the cyclic bar construction of a cochain algebra on a pure
/// tensor: the Koszul sign of the reordering, then the product of each list
/// (the unit for an empty list). Products above the top dimension vanish.
pub fn phi_star_pure(alg: &Cochains, phi: &CyclicMorphism, inputs: &[Cochain]) -> PureTensor {
    let degs: Vec<i64> = inputs.iter().map(|a| a.degree as i64).collect();
    let sign = koszul_sign(&degs, &phi.order());
    let top = alg.sset().max_dim();
    let factors = phi
        .lists()
        .iter()
        .map(|list| {
            let mut acc = alg.unit();
            for &l in list {
                let a = &inputs[l];
                acc = if acc.degree + a.degree > top { Cochain::zero(acc.degree + a.degree) } else { alg.cup(&acc, a) };
            }
            acc
        })
        .collect();
    PureTensor::new(sign, factors)
}

/// Worst violations, over all basis tensors of `F(i)`, of
/// `π_j ∘ φ_* = φ_* ∘ π_φ` and `π_φ = (φ^*)^{⊗} ∘ π_i` for `φ: [i] -> [j]`.
/// Returns the number of failing basis tensors for each identity.
pub fn interaction_residual(setting: &LoopSetting, phi: &CyclicMorphism) -> Result<(usize, usize)> {
    let (i, j) = (phi.source(), phi.target());
    let basis = setting.bar().basis(i);
    let ring = setting.ring();
    let level_j = setting.space().cochains(j);
    let id_i = CyclicMorphism::identity(i);
    let id_j = CyclicMorphism::identity(j);
    let phi_up = setting.space().operator(phi)?;
    let mut bad = (0usize, 0usize);
    for &k in basis.dims().keys() {
        let rows = crate::par::map(basis.tuples(k), |t| {
            let a = setting.tuple_cochains(t);
            // in C^*(X)^{⊗(j+1)}, then pulled back factorwise
            let down = phi_star_pure(setting.cochains(), phi, &a);
            let lhs = PureTensor::new(down.coeff, setting.pi(&id_j, &down.factors));
            let pi_phi = setting.pi(phi, &a);
            let rhs = phi_star_pure(level_j, phi, &pi_phi);
            let first = !lhs.same_as(&rhs, ring);
            let through: Vec<Cochain> = setting
                .pi(&id_i, &a)
                .iter()
                .map(|c| Cochain { degree: c.degree, coeffs: phi_up.apply(-(c.degree as i64), &c.coeffs) })
                .collect();
            let second = !PureTensor::new(1, through).same_as(&PureTensor::new(1, pi_phi), ring);
            (first, second)
        });
        for (a, b) in rows {
            bad.0 += a as usize;
            bad.1 += b as usize;
        }
    }
    Ok(bad)
}

/// Cross-check of [`bar_apply`] against [`phi_star_pure`]: the number of
/// basis tensors of `F(i)` where the algebra model and the cochain model
/// disagree.
pub fn bar_model_residual(setting: &LoopSetting, phi: &CyclicMorphism) -> usize {
    let basis = setting.bar().basis(phi.source());
    let ring = setting.ring();
    let mut bad = 0;
    for &k in basis.dims().keys() {
        for t in basis.tuples(k) {
            let model = phi_star_pure(setting.cochains(), phi, &setting.tuple_cochains(t));
            let lhs = expand_sum(setting, &bar_apply(setting.dga(), phi, t));
            let rhs = expand_pure(setting, &model);
            if lhs != normalize(ring, rhs) {
                bad += 1;
            }
        }
    }
    bad
}

/// A sum of algebra tensors written in the product basis of simplices
/// `(σ_0, …, σ_j)` flattened by the cochain layout of `X`.
fn expand_sum(setting: &LoopSetting, terms: &[(Vec<u32>, i64)]) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for (t, c) in terms {
        let p = PureTensor::new(*c, setting.tuple_cochains(t));
        out.extend(expand_pure(setting, &p));
    }
    normalize(setting.ring(), out)
}

fn expand_pure(setting: &LoopSetting, p: &PureTensor) -> Vec<(usize, i64)> {
    let x = setting.space_set();
    let top = x.max_dim();
    // flat index of a simplex: offset of its degree plus its index
    let mut offset = vec![0usize; top + 2];
    for d in 0..=top {
        offset[d + 1] = offset[d] + x.count(d);
    }
    let width = offset[top + 1];
    let mut acc: Vec<(usize, i64)> = vec![(0, p.coeff)];
    for f in &p.factors {
        if f.degree > top {
            return Vec::new();
        }
        let mut next = Vec::new();
        for &(pos, c) in &acc {
            for &(i, v) in &f.coeffs {
                next.push((pos * width + offset[f.degree] + i, c * v));
            }
        }
        acc = normalize(setting.ring(), next);
    }
    acc
}
