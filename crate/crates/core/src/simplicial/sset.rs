//! Finite simplicial sets stored by their nondegenerate simplices and face
//! tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::simplex::{epi_mono, Simplex, MAX_DIM};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SSet {
    name: String,
    labels: Vec<Vec<String>>,
    /// `faces[n][idx][i] = d_i` of the nondegenerate simplex; empty for n = 0
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl SSet {
    /// Build from face tables and validate the simplicial identities.
    pub fn from_faces(name: impl Into<String>, labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let s = SSet { name: name.into(), labels, faces };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_faces_unchecked(name: impl Into<String>, labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Self {
        SSet { name: name.into(), labels, faces }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Highest dimension with a nondegenerate simplex (0 for the empty set).
    pub fn max_dim(&self) -> usize {
        (0..self.faces.len()).rev().find(|&n| !self.faces[n].is_empty()).unwrap_or(0)
    }

    pub fn count(&self, n: usize) -> usize {
        self.faces.get(n).map_or(0, |f| f.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_dim()).map(|n| self.count(n)).collect()
    }

    pub fn total(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum()
    }

    pub fn label(&self, n: usize, idx: usize) -> String {
        self.labels.get(n).and_then(|l| l.get(idx).cloned()).unwrap_or_else(|| format!("σ{n}_{idx}"))
    }

    pub fn find_label(&self, label: &str) -> Option<(usize, usize)> {
        for (n, ls) in self.labels.iter().enumerate() {
            if let Some(i) = ls.iter().position(|l| l == label) {
                return Some((n, i));
            }
        }
        None
    }

    pub fn face(&self, n: usize, idx: usize, i: usize) -> Simplex {
        self.faces[n][idx][i]
    }

    /// `θ^* x` for the nondegenerate `m`-simplex `x` and a monotone map
    /// `θ: [k] -> [m]` given by its vertex list.
    pub fn apply_nd(&self, m: usize, idx: usize, theta: &[usize]) -> Simplex {
        let (eps, image) = epi_mono(theta);
        let k = theta.len() - 1;
        if image.len() == m + 1 {
            return Simplex { dim: k as u8, base_dim: m as u8, index: idx as u32, jumps: eps };
        }
        // drop the largest missing vertex through the face table
        let mut j = m;
        while image.binary_search(&j).is_ok() {
            j -= 1;
        }
        let face = self.faces[m][idx][j];
        let shifted: Vec<usize> = theta.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
        self.apply(face, &shifted)
    }

    /// `θ^* s` for an arbitrary simplex.
    pub fn apply(&self, s: Simplex, theta: &[usize]) -> Simplex {
        let through: Vec<usize> = theta.iter().map(|&v| s.eta(v)).collect();
        self.apply_nd(s.base_dim as usize, s.index as usize, &through)
    }

    /// `d_i s`.
    pub fn face_of(&self, s: Simplex, i: usize) -> Simplex {
        let theta: Vec<usize> = (0..=s.dim as usize).filter(|&v| v != i).collect();
        self.apply(s, &theta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.faces.len() > MAX_DIM {
            return Err(Error::Unsupported(format!("dimension above {MAX_DIM}")));
        }
        if self.labels.iter().zip(&self.faces).any(|(l, f)| !l.is_empty() && l.len() != f.len()) {
            return Err(Error::Shape("label table does not match simplex counts".into()));
        }
        for (n, tab) in self.faces.iter().enumerate() {
            for (idx, fs) in tab.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if fs.len() != expected {
                    return Err(Error::SimplicialIdentity(format!(
                        "{} has {} faces, expected {expected}",
                        self.label(n, idx),
                        fs.len()
                    )));
                }
                for f in fs {
                    let ok = f.dim as usize + 1 == n
                        && (f.base_dim as usize) < self.faces.len()
                        && (f.index as usize) < self.count(f.base_dim as usize)
                        && f.jumps.count_ones() == f.base_dim as u32;
                    if !ok {
                        return Err(Error::Dangling(format!("face {f} of {}", self.label(n, idx))));
                    }
                }
                for j in 1..fs.len() {
                    if n < 2 {
                        break;
                    }
                    for i in 0..j {
                        let a = self.face_of(fs[j], i);
                        let b = self.face_of(fs[i], j - 1);
                        if a != b {
                            return Err(Error::SimplicialIdentity(format!(
                                "d{i} d{j} ≠ d{} d{i} on {} ({a} vs {b})",
                                j - 1,
                                self.label(n, idx)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn point() -> Self {
        SSet::from_faces_unchecked("point", vec![vec!["*".into()]], vec![vec![vec![]]])
    }

    /// Standard simplex `Δ^n`, or its boundary when `boundary` is set.
    fn simplex_like(n: usize, boundary: bool, name: String) -> Self {
        let top = if boundary { n.saturating_sub(1) } else { n };
        let mut subsets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        for mask in 1u64..(1 << (n + 1)) {
            let s: Vec<usize> = (0..=n).filter(|&v| mask & (1 << v) != 0).collect();
            if s.len() - 1 <= top {
                subsets[s.len() - 1].push(s);
            }
        }
        for s in &mut subsets {
            s.sort();
        }
        let pos: HashMap<Vec<usize>, usize> =
            subsets.iter().flat_map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i))).collect();
        let faces = subsets
            .iter()
            .enumerate()
            .map(|(d, l)| {
                l.iter()
                    .map(|s| {
                        if d == 0 {
                            return vec![];
                        }
                        (0..=d)
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                Simplex::nondegenerate(d - 1, pos[&f])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let labels = subsets
            .iter()
            .map(|l| l.iter().map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")).collect())
            .collect();
        SSet::from_faces_unchecked(name, labels, faces)
    }

    pub fn delta(n: usize) -> Self {
        Self::simplex_like(n, false, format!("delta:{n}"))
    }

    pub fn boundary(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("boundary:0 is empty".into()));
        }
        Ok(Self::simplex_like(n, true, format!("boundary:{n}")))
    }

    /// `Δ^n / ∂Δ^n`: one vertex and one nondegenerate n-simplex.
    pub fn sphere(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Unsupported("sphere:0 has no single-vertex model".into()));
        }
        let d = Self::delta(n);
        let sub: Vec<(usize, usize)> = (0..n).flat_map(|k| (0..d.count(k)).map(move |i| (k, i))).collect();
        let mut s = d.collapse(&sub)?;
        s.name = format!("sphere:{n}");
        Ok(s)
    }

    /// Quotient collapsing a subcomplex (given by nondegenerate simplices,
    /// closed under faces) to a single new basepoint, which becomes vertex 0.
    pub fn collapse(&self, sub: &[(usize, usize)]) -> Result<Self> {
        let dead: std::collections::HashSet<(usize, usize)> = sub.iter().copied().collect();
        for &(n, i) in sub {
            if n > 0 {
                for f in &self.faces[n][i] {
                    if !dead.contains(&(f.base_dim as usize, f.index as usize)) {
                        return Err(Error::Shape(format!("collapsed set is not closed under faces at {}", self.label(n, i))));
                    }
                }
            }
        }
        let mut newpos: Vec<Vec<Option<usize>>> = Vec::new();
        let mut labels: Vec<Vec<String>> = Vec::new();
        for n in 0..self.faces.len() {
            let mut next = if n == 0 && !sub.is_empty() { 1 } else { 0 };
            let mut l = if n == 0 && !sub.is_empty() { vec!["*".to_string()] } else { vec![] };
            let mut pos = Vec::new();
            for i in 0..self.count(n) {
                if dead.contains(&(n, i)) {
                    pos.push(None);
                } else {
                    pos.push(Some(next));
                    l.push(self.label(n, i));
                    next += 1;
                }
            }
            newpos.push(pos);
            labels.push(l);
        }
        let map = |f: Simplex| -> Simplex {
            match newpos[f.base_dim as usize][f.index as usize] {
                Some(i) => Simplex { index: i as u32, ..f },
                None => Simplex { dim: f.dim, base_dim: 0, index: 0, jumps: 0 },
            }
        };
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
        for n in 0..self.faces.len() {
            let mut tab = Vec::new();
            if n == 0 && !sub.is_empty() {
                tab.push(vec![]);
            }
            for i in 0..self.count(n) {
                if newpos[n][i].is_some() {
                    tab.push(self.faces[n][i].iter().map(|&f| map(f)).collect());
                }
            }
            faces.push(tab);
        }
        while faces.len() > 1 && faces.last().is_some_and(|t| t.is_empty()) {
            faces.pop();
            labels.pop();
        }
        SSet::from_faces(format!("{}/~", self.name), labels, faces)
    }

    /// Built-in by name: `point`, `delta:n`, `boundary:n`, `sphere:n`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "point" {
            return Ok(Self::point());
        }
        let (kind, n) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("unknown space '{spec}'")))?;
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad dimension in '{spec}'")))?;
        if n > 12 {
            return Err(Error::Resource(format!("built-in dimension {n} is above 12")));
        }
        match kind {
            "delta" => Ok(Self::delta(n)),
            "boundary" => Self::boundary(n),
            "sphere" => Self::sphere(n),
            _ => Err(Error::Parse(format!("unknown space kind '{kind}'"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: SSetJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("SSet JSON: {e}")))?;
        desc.build()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut dims = BTreeMap::new();
        let mut faces = BTreeMap::new();
        for n in 0..=self.max_dim() {
            dims.insert(n.to_string(), (0..self.count(n)).map(|i| self.label(n, i)).collect::<Vec<_>>());
            if n > 0 {
                for i in 0..self.count(n) {
                    let fs: Vec<serde_json::Value> = self.faces[n][i]
                        .iter()
                        .enumerate()
                        .map(|(k, f)| {
                            serde_json::json!([k, self.label(f.base_dim as usize, f.index as usize), f.degeneracy_word()])
                        })
                        .collect();
                    faces.insert(self.label(n, i), fs);
                }
            }
        }
        serde_json::json!({ "dims": dims, "faces": faces })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SSetJson {
    dims: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, Vec<(usize, String, Vec<usize>)>>,
}

impl SSetJson {
    fn build(self) -> Result<SSet> {
        let mut by_dim: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (k, v) in self.dims {
            let n: usize = k.parse().map_err(|_| Error::Parse(format!("dimension key '{k}' is not a number")))?;
            by_dim.insert(n, v);
        }
        let top = by_dim.keys().next_back().copied().unwrap_or(0);
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        let mut where_: HashMap<String, (usize, usize)> = HashMap::new();
        for (n, ls) in by_dim {
            for (i, l) in ls.iter().enumerate() {
                if where_.insert(l.clone(), (n, i)).is_some() {
                    return Err(Error::Parse(format!("duplicate simplex label '{l}'")));
                }
            }
            labels[n] = ls;
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> = labels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (label, fs) in &self.faces {
            let &(n, i) = where_.get(label).ok_or_else(|| Error::Dangling(format!("faces given for unknown simplex '{label}'")))?;
            let mut slots: Vec<Option<Simplex>> = vec![None; n + 1];
            for (k, target, word) in fs {
                let &(m, j) = where_.get(target).ok_or_else(|| Error::Dangling(format!("face {k} of '{label}' names unknown '{target}'")))?;
                if *k > n {
                    return Err(Error::Parse(format!("face index {k} out of range for '{label}'")));
                }
                let jumps = Simplex::jumps_from_word(m, word)
                    .ok_or_else(|| Error::Parse(format!("degeneracy word {word:?} of face {k} of '{label}' is not strictly decreasing/in range")))?;
                let s = Simplex { dim: (m + word.len()) as u8, base_dim: m as u8, index: j as u32, jumps };
                if s.dim as usize + 1 != n {
                    return Err(Error::SimplicialIdentity(format!("face {k} of '{label}' has dimension {}, expected {}", s.dim, n - 1)));
                }
                slots[*k] = Some(s);
            }
            if n > 0 {
                faces[n][i] = slots
                    .into_iter()
                    .enumerate()
                    .map(|(k, s)| s.ok_or_else(|| Error::Parse(format!("face {k} of '{label}' missing"))))
                    .collect::<Result<_>>()?;
            }
        }
        for n in 1..faces.len() {
            for i in 0..faces[n].len() {
                if faces[n][i].is_empty() {
                    return Err(Error::Parse(format!("no faces given for '{}'", labels[n][i])));
                }
            }
        }
        SSet::from_faces("json", labels, faces)
    }
}
