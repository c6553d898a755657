//! Diagrams of chain complexes and the cosimplicial complex `hc(F,G)`.

use super::category::{FinCat, Nerve, NerveSimplex};
use crate::complex::{FinComplex, GradedMap};
use crate::error::{Error, Result};
use crate::par;
use crate::sign::pow_neg_one;

/// A functor to chain complexes: a complex per object, a chain map per arrow.
#[derive(Clone, Debug)]
pub struct Diagram {
    objects: Vec<FinComplex>,
    maps: Vec<GradedMap>,
}

impl Diagram {
    pub fn new(cat: &FinCat, objects: Vec<FinComplex>, maps: Vec<GradedMap>) -> Result<Self> {
        if objects.len() != cat.object_count() || maps.len() != cat.arrow_count() {
            return Err(Error::Shape("diagram does not match its category".into()));
        }
        for (f, m) in maps.iter().enumerate() {
            let (s, t) = (&objects[cat.source(f)], &objects[cat.target(f)]);
            if m.source_dims() != s.dims() || m.target_dims() != t.dims() || m.degree() != 0 {
                return Err(Error::Shape(format!("map for {} has the wrong shape", cat.arrow(f).name)));
            }
        }
        Ok(Diagram { objects, maps })
    }

    pub fn object(&self, o: usize) -> &FinComplex {
        &self.objects[o]
    }

    pub fn map(&self, f: usize) -> &GradedMap {
        &self.maps[f]
    }

    /// Chain maps, identities and composition, checked on the whole table.
    pub fn check_functor(&self, cat: &FinCat) -> Result<()> {
        for f in 0..cat.arrow_count() {
            let m = &self.maps[f];
            if !m.is_chain_map(&self.objects[cat.source(f)], &self.objects[cat.target(f)])? {
                return Err(Error::Naturality(format!("{} is not a chain map", cat.arrow(f).name)));
            }
            if cat.is_identity(f) && !m.add_scaled(-1, &GradedMap::identity(&self.objects[cat.source(f)]))?.is_zero() {
                return Err(Error::CategoryLaw(format!("{} does not act as the identity", cat.arrow(f).name)));
            }
        }
        let bad = par::map_range(cat.arrow_count(), |f| {
            for &g in cat.outgoing(cat.target(f)) {
                let h = cat.then(f, g).expect("composable");
                let lhs = self.maps[f].then(&self.maps[g]).ok()?;
                if !lhs.add_scaled(-1, &self.maps[h]).ok()?.is_zero() {
                    return Some(format!("{} then {}", cat.arrow(f).name, cat.arrow(g).name));
                }
            }
            None
        });
        match bad.into_iter().flatten().next() {
            Some(s) => Err(Error::CategoryLaw(format!("composition fails: {s}"))),
            None => Ok(()),
        }
    }
}

/// One cosimplicial level of `hc(F,G)`: a map `F(i_0) -> G(i_n)` of a fixed
/// degree for every n-simplex of the nerve, in nerve order.
#[derive(Clone, Debug)]
pub struct HcLevel {
    pub level: usize,
    pub degree: i64,
    pub maps: Vec<GradedMap>,
}

impl HcLevel {
    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    /// Largest number of nonzero entries over the components.
    pub fn max_nnz(&self) -> usize {
        self.maps.iter().map(|m| m.nnz()).max().unwrap_or(0)
    }

    pub fn add_scaled(&self, c: i64, other: &HcLevel) -> Result<HcLevel> {
        if self.level != other.level || self.degree != other.degree {
            return Err(Error::Shape("sum of hc levels of different shape".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add_scaled(c, b)).collect::<Result<_>>()?;
        Ok(HcLevel { level: self.level, degree: self.degree, maps })
    }
}

/// `hc(F,G)` over a truncated nerve.
pub struct Hc<'a> {
    pub cat: &'a FinCat,
    pub nerve: &'a Nerve,
    pub f: &'a Diagram,
    pub g: &'a Diagram,
}

impl<'a> Hc<'a> {
    pub fn new(cat: &'a FinCat, nerve: &'a Nerve, f: &'a Diagram, g: &'a Diagram) -> Self {
        Hc { cat, nerve, f, g }
    }

    fn ends(&self, s: &NerveSimplex) -> (&FinComplex, &FinComplex) {
        (self.f.object(s.first()), self.g.object(s.last(self.cat)))
    }

    pub fn zero(&self, level: usize, degree: i64) -> HcLevel {
        let maps = self
            .nerve
            .level(level)
            .iter()
            .map(|s| {
                let (a, b) = self.ends(s);
                GradedMap::zero(a, b, degree)
            })
            .collect();
        HcLevel { level, degree, maps }
    }

    /// Build a level from a function of the simplex.
    pub fn from_fn(&self, level: usize, degree: i64, f: impl Fn(&NerveSimplex) -> Result<GradedMap> + Sync) -> Result<HcLevel> {
        let maps: Vec<GradedMap> = par::map(self.nerve.level(level), |s| f(s)).into_iter().collect::<Result<_>>()?;
        Ok(HcLevel { level, degree, maps })
    }

    fn at<'b>(&self, a: &'b HcLevel, s: &NerveSimplex) -> &'b GradedMap {
        let k = self.nerve.index(s).expect("simplex within the nerve cap");
        &a.maps[k]
    }

    /// `δ^i`: level n to level n+1.
    pub fn coface(&self, i: usize, a: &HcLevel) -> Result<HcLevel> {
        let n = a.level;
        if i > n + 1 {
            return Err(Error::Shape(format!("coface δ{i} on level {n}")));
        }
        if n + 1 > self.nerve.cap() {
            return Err(Error::OutOfTruncation(format!("level {} above the nerve cap", n + 1)));
        }
        self.from_fn(n + 1, a.degree, |s| {
            let inner = self.at(a, &s.face(self.cat, i));
            if i == 0 {
                self.f.map(s.arrows[0]).then(inner)
            } else if i == n + 1 {
                inner.then(self.g.map(s.arrows[n]))
            } else {
                Ok(inner.clone())
            }
        })
    }

    /// `σ^i`: level n to level n-1.
    pub fn codegeneracy(&self, i: usize, a: &HcLevel) -> Result<HcLevel> {
        let n = a.level;
        if n == 0 || i >= n {
            return Err(Error::Shape(format!("codegeneracy σ{i} on level {n}")));
        }
        self.from_fn(n - 1, a.degree, |s| Ok(self.at(a, &s.degeneracy(self.cat, i)).clone()))
    }

    /// Internal-hom differential, componentwise.
    pub fn d(&self, a: &HcLevel) -> Result<HcLevel> {
        let maps = self
            .nerve
            .level(a.level)
            .iter()
            .zip(&a.maps)
            .map(|(s, m)| {
                let (x, y) = self.ends(s);
                m.differential(x, y)
            })
            .collect::<Result<_>>()?;
        Ok(HcLevel { level: a.level, degree: a.degree - 1, maps })
    }

    /// `Σ (-1)^i δ^i`.
    pub fn coboundary(&self, a: &HcLevel) -> Result<HcLevel> {
        let mut acc = self.zero(a.level + 1, a.degree);
        for i in 0..=a.level + 1 {
            acc = acc.add_scaled(pow_neg_one(i as i64), &self.coface(i, a)?)?;
        }
        Ok(acc)
    }

    /// Cosimplicial identities on one family.
    pub fn check_cosimplicial_identities(&self, a: &HcLevel) -> Result<()> {
        let n = a.level;
        let fail = |what: String| Err(Error::CosimplicialIdentity(format!("{what} on level {n}")));
        let eq = |x: &HcLevel, y: &HcLevel| -> Result<bool> { Ok(x.add_scaled(-1, y)?.is_zero()) };
        if n + 2 <= self.nerve.cap() {
            let cof: Vec<HcLevel> = (0..=n + 1).map(|i| self.coface(i, a)).collect::<Result<_>>()?;
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = self.coface(j, &cof[i])?;
                    let rhs = self.coface(i, &cof[j - 1])?;
                    if !eq(&lhs, &rhs)? {
                        return fail(format!("δ{j}δ{i} = δ{i}δ{}", j - 1));
                    }
                }
            }
        }
        if n < self.nerve.cap() {
            for i in 0..=n + 1 {
                let up = self.coface(i, a)?;
                for j in 0..=n {
                    let lhs = self.codegeneracy(j, &up)?;
                    let ok = if i == j || i == j + 1 {
                        eq(&lhs, a)?
                    } else if i < j {
                        eq(&lhs, &self.coface(i, &self.codegeneracy(j - 1, a)?)?)?
                    } else {
                        eq(&lhs, &self.coface(i - 1, &self.codegeneracy(j, a)?)?)?
                    };
                    if !ok {
                        return fail(format!("σ{j}δ{i}"));
                    }
                }
            }
        }
        if n >= 2 {
            for j in 0..n {
                for i in 0..=j {
                    let lhs = self.codegeneracy(j, &self.codegeneracy(i, a)?);
                    let rhs = self.codegeneracy(i, &self.codegeneracy(j + 1, a)?);
                    if i <= j && j + 1 < n && !eq(&lhs?, &rhs?)? {
                        return fail(format!("σ{j}σ{i}"));
                    }
                }
            }
        }
        for i in 0..=n + 1 {
            if n + 1 > self.nerve.cap() {
                break;
            }
            if !eq(&self.d(&self.coface(i, a)?)?, &self.coface(i, &self.d(a)?)?)? {
                return fail(format!("d δ{i} = δ{i} d"));
            }
        }
        Ok(())
    }

    /// Residuals of the coherence conditions: `dA^0` at level 0 and
    /// `Σ(-1)^i δ^i A^{n-1} - (-1)^{n-1} dA^n` at level n, as the largest
    /// number of nonzero entries of a component.
    pub fn coherence_residuals(&self, family: &[HcLevel]) -> Result<Vec<usize>> {
        for (n, a) in family.iter().enumerate() {
            if a.level != n || a.degree != n as i64 {
                return Err(Error::Shape(format!("family entry {n} has level {} and degree {}", a.level, a.degree)));
            }
        }
        let mut out = Vec::with_capacity(family.len());
        if let Some(a0) = family.first() {
            out.push(self.d(a0)?.max_nnz());
        }
        for n in 1..family.len() {
            let lhs = self.coboundary(&family[n - 1])?;
            let rhs = self.d(&family[n])?;
            out.push(lhs.add_scaled(-pow_neg_one(n as i64 - 1), &rhs)?.max_nnz());
        }
        Ok(out)
    }
}
