//! Dynkin diagrams with fixed orientations, the repetition quiver ℤΔ and its
//! automorphisms, the orbit quiver ℤΔ/𝕊[d] and augmentation by projectives.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::brauer::Diagonal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub family: Family,
    pub rank: u32,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinDiagram { family, rank })
        } else {
            Err(Error::InvalidDiagram(format!("{:?}{}", family, rank)))
        }
    }

    pub fn a(n: u32) -> Self {
        Self::new(Family::A, n).expect("A_n needs n >= 1")
    }

    pub fn d(n: u32) -> Self {
        Self::new(Family::D, n).expect("D_n needs n >= 4")
    }

    pub fn e(n: u32) -> Self {
        Self::new(Family::E, n).expect("E_n needs n in 6..=8")
    }

    pub fn nodes(&self) -> impl Iterator<Item = u32> {
        1..=self.rank
    }

    /// Arrows of the oriented diagram.
    ///
    /// A_n is linear 1→2→…→n; in D_n both n−1 and n point into n−2; in E_n
    /// the branch is at 3 with 2→1, 3→2, 3→4, 3→5 and 5→6→…→n.
    pub fn arrows(&self) -> Vec<(u32, u32)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut v: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                v.push((n - 1, n - 2));
                v.push((n, n - 2));
                v
            }
            Family::E => {
                let mut v = vec![(2, 1), (3, 2), (3, 4), (3, 5)];
                v.extend((5..n).map(|i| (i, i + 1)));
                v
            }
        }
    }

    pub fn coxeter_number(&self) -> u32 {
        match (self.family, self.rank) {
            (Family::A, n) => n + 1,
            (Family::D, n) => 2 * n - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            _ => 30,
        }
    }

    pub fn code(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }

    pub fn contains(&self, v: ZVertex) -> bool {
        v.node >= 1 && v.node <= self.rank
    }

    pub fn successors(&self, v: ZVertex) -> BTreeSet<ZVertex> {
        let mut out = BTreeSet::new();
        for (x, y) in self.arrows() {
            if x == v.node {
                out.insert(ZVertex::new(v.level, y));
            }
            if y == v.node {
                out.insert(ZVertex::new(v.level + 1, x));
            }
        }
        out
    }

    pub fn predecessors(&self, v: ZVertex) -> BTreeSet<ZVertex> {
        let mut out = BTreeSet::new();
        for (x, y) in self.arrows() {
            if y == v.node {
                out.insert(ZVertex::new(v.level, x));
            }
            if x == v.node {
                out.insert(ZVertex::new(v.level - 1, y));
            }
        }
        out
    }

    /// `(predecessors, successors)` of `v` in ℤΔ.
    pub fn mesh_neighbors(&self, v: ZVertex) -> (BTreeSet<ZVertex>, BTreeSet<ZVertex>) {
        (self.predecessors(v), self.successors(v))
    }

    fn diagram_symmetry(&self, q: u32) -> u32 {
        let n = self.rank;
        match self.family {
            Family::D if n % 2 == 1 && q >= n - 1 => 2 * n - 1 - q,
            Family::E if n == 6 => match q {
                1 => 6,
                6 => 1,
                2 => 5,
                5 => 2,
                q => q,
            },
            _ => q,
        }
    }

    pub fn nakayama(&self, v: ZVertex) -> ZVertex {
        let n = self.rank as i64;
        let (p, q) = (v.level, v.node);
        match self.family {
            Family::A => ZVertex::new(p + q as i64 - 1, self.rank + 1 - q),
            Family::D => ZVertex::new(p + n - 2, self.diagram_symmetry(q)),
            Family::E => {
                let k = match self.rank {
                    6 => 5,
                    7 => 8,
                    _ => 14,
                };
                ZVertex::new(p + k, self.diagram_symmetry(q))
            }
        }
    }

    pub fn nakayama_inv(&self, v: ZVertex) -> ZVertex {
        let n = self.rank as i64;
        let (p, q) = (v.level, v.node);
        match self.family {
            Family::A => ZVertex::new(p + q as i64 - n, self.rank + 1 - q),
            Family::D => ZVertex::new(p - n + 2, self.diagram_symmetry(q)),
            Family::E => {
                let k = match self.rank {
                    6 => 5,
                    7 => 8,
                    _ => 14,
                };
                ZVertex::new(p - k, self.diagram_symmetry(q))
            }
        }
    }

    /// [1] = 𝕊τ⁻¹.
    pub fn shift(&self, v: ZVertex) -> ZVertex {
        self.nakayama(tau_inv(v))
    }

    pub fn shift_inv(&self, v: ZVertex) -> ZVertex {
        tau(self.nakayama_inv(v))
    }

    pub fn shift_by(&self, v: ZVertex, k: i64) -> ZVertex {
        let mut w = v;
        if k >= 0 {
            for _ in 0..k {
                w = self.shift(w);
            }
        } else {
            for _ in 0..-k {
                w = self.shift_inv(w);
            }
        }
        w
    }

    /// The generator 𝕊[d] of the group acting on ℤΔ.
    pub fn serre_shift(&self, v: ZVertex, d: u32) -> ZVertex {
        self.nakayama(self.shift_by(v, d as i64))
    }

    pub fn serre_shift_inv(&self, v: ZVertex, d: u32) -> ZVertex {
        self.shift_by(self.nakayama_inv(v), -(d as i64))
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl FromStr for DynkinDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidDiagram(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: u32 = chars.as_str().parse().map_err(|_| bad())?;
        DynkinDiagram::new(family, rank)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::InvalidDiagram(other.to_string())),
        }
    }
}

/// Vertex `(p, q)` of ℤΔ: level `p`, diagram node `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVertex {
    pub level: i64,
    pub node: u32,
}

impl ZVertex {
    pub const fn new(level: i64, node: u32) -> Self {
        ZVertex { level, node }
    }
}

impl fmt::Display for ZVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.node)
    }
}

impl FromStr for ZVertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("vertex {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (p, q) = inner.split_once(',').ok_or_else(bad)?;
        Ok(ZVertex::new(
            p.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        ))
    }
}

pub fn tau(v: ZVertex) -> ZVertex {
    ZVertex::new(v.level - 1, v.node)
}

pub fn tau_inv(v: ZVertex) -> ZVertex {
    ZVertex::new(v.level + 1, v.node)
}

/// Polygon size N = (d+1)n + d − 1 attached to ℤA_n/𝕊[d].
pub fn polygon_size(n: u32, d: u32) -> i64 {
    (d as i64 + 1) * n as i64 + d as i64 - 1
}

/// Integer label of a vertex of ℤA_n, before reduction mod N.
pub fn z_label(v: ZVertex, d: u32) -> (i64, i64) {
    let e = d as i64 + 1;
    (1 + v.level * e, (v.level + v.node as i64) * e)
}

/// Orbit of a vertex under ⟨𝕊[d]⟩, stored by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitVertex {
    pub rep: ZVertex,
    pub label: Option<Diagonal>,
}

impl fmt::Display for OrbitVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "{}", self.rep),
        }
    }
}

/// Canonical representative: the orbit element with the smallest level ≥ 0.
///
/// 𝕊[d] raises the level strictly for d ≥ 1, so that element is unique.
pub fn orbit_canonical(v: ZVertex, diagram: &DynkinDiagram, d: u32) -> OrbitVertex {
    let mut w = v;
    while w.level < 0 {
        w = diagram.serre_shift(w, d);
    }
    loop {
        let u = diagram.serre_shift_inv(w, d);
        if u.level < 0 {
            break;
        }
        w = u;
    }
    let label = match diagram.family {
        Family::A => {
            let n = polygon_size(diagram.rank, d);
            let (a, b) = z_label(w, d);
            Some(Diagonal::new(
                (a - 1).rem_euclid(n) as u32 + 1,
                (b - 1).rem_euclid(n) as u32 + 1,
            ))
        }
        _ => None,
    };
    OrbitVertex { rep: w, label }
}

/// A finite translation quiver with a partial translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationQuiver<V> {
    pub vertices: Vec<V>,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<Option<usize>>,
}

impl<V> TranslationQuiver<V> {
    pub fn tau_inv(&self, i: usize) -> Option<usize> {
        self.tau.iter().position(|t| *t == Some(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AugVertex<V> {
    Base(V),
    /// The vertex p_c added for configuration vertex c.
    Projective(V),
}

impl<V: fmt::Display> fmt::Display for AugVertex<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AugVertex::Base(v) => write!(f, "{v}"),
            AugVertex::Projective(v) => write!(f, "P[{v}]"),
        }
    }
}

/// Base quiver plus a vertex p_c with arrows c → p_c → τ⁻¹c for each c in C.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedQuiver<V> {
    pub vertices: Vec<AugVertex<V>>,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<Option<usize>>,
    /// base index of c ↦ index of p_c
    pub projectives: BTreeMap<usize, usize>,
}

pub fn augment<V: Clone>(base: &TranslationQuiver<V>, c: &[usize]) -> Result<AugmentedQuiver<V>> {
    let mut vertices: Vec<AugVertex<V>> =
        base.vertices.iter().cloned().map(AugVertex::Base).collect();
    let mut arrows = base.arrows.clone();
    let mut tau = base.tau.clone();
    let mut projectives = BTreeMap::new();
    let chosen: BTreeSet<usize> = c.iter().copied().collect();
    for ci in chosen {
        if ci >= base.vertices.len() {
            return Err(Error::VertexNotFound(ci.to_string()));
        }
        let target = base
            .tau_inv(ci)
            .ok_or_else(|| Error::ValidationFailure(format!("vertex {ci} has no τ⁻¹")))?;
        let p = vertices.len();
        vertices.push(AugVertex::Projective(base.vertices[ci].clone()));
        tau.push(None);
        arrows.push((ci, p));
        arrows.push((p, target));
        projectives.insert(ci, p);
    }
    arrows.sort_unstable();
    Ok(AugmentedQuiver {
        vertices,
        arrows,
        tau,
        projectives,
    })
}

/// The orbit quiver ℤΔ/𝕊[d].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub diagram: DynkinDiagram,
    pub d: u32,
    pub vertices: Vec<OrbitVertex>,
    index: HashMap<ZVertex, usize>,
    pub arrows: Vec<(usize, usize)>,
    tau: Vec<usize>,
    shift: Vec<usize>,
    shift_inv: Vec<usize>,
}

impl Quotient {
    pub fn new(diagram: DynkinDiagram, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDiagram("d must be positive".into()));
        }
        let top = diagram
            .nodes()
            .map(|q| diagram.serre_shift(ZVertex::new(0, q), d).level)
            .max()
            .unwrap_or(0);
        let mut vertices = Vec::new();
        for p in 0..=top {
            for q in diagram.nodes() {
                let v = ZVertex::new(p, q);
                let c = orbit_canonical(v, &diagram, d);
                if c.rep == v {
                    vertices.push(c);
                }
            }
        }
        vertices.sort();
        let index: HashMap<ZVertex, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.rep, i)).collect();
        let mut q = Quotient {
            diagram,
            d,
            vertices,
            index,
            arrows: Vec::new(),
            tau: Vec::new(),
            shift: Vec::new(),
            shift_inv: Vec::new(),
        };
        let len = q.vertices.len();
        let mut arrows = Vec::new();
        for i in 0..len {
            let v = q.vertices[i].rep;
            for s in diagram.successors(v) {
                arrows.push((i, q.index_of(s)));
            }
        }
        arrows.sort_unstable();
        q.arrows = arrows;
        q.tau = (0..len).map(|i| q.index_of(tau(q.vertices[i].rep))).collect();
        q.shift = (0..len)
            .map(|i| q.index_of(diagram.shift(q.vertices[i].rep)))
            .collect();
        q.shift_inv = (0..len)
            .map(|i| q.index_of(diagram.shift_inv(q.vertices[i].rep)))
            .collect();
        Ok(q)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn canonical(&self, v: ZVertex) -> OrbitVertex {
        orbit_canonical(v, &self.diagram, self.d)
    }

    /// Index of the orbit of any vertex of ℤΔ.
    pub fn index_of(&self, v: ZVertex) -> usize {
        self.index[&self.canonical(v).rep]
    }

    pub fn index_of_orbit(&self, v: &OrbitVertex) -> Option<usize> {
        self.index.get(&v.rep).copied()
    }

    pub fn index_of_label(&self, l: Diagonal) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == Some(l))
    }

    pub fn tau_index(&self, i: usize) -> usize {
        self.tau[i]
    }

    /// Index of x[k].
    pub fn shift_index(&self, i: usize, k: i64) -> usize {
        let mut j = i;
        if k >= 0 {
            for _ in 0..k {
                j = self.shift[j];
            }
        } else {
            for _ in 0..-k {
                j = self.shift_inv[j];
            }
        }
        j
    }

    pub fn translation_quiver(&self) -> TranslationQuiver<OrbitVertex> {
        TranslationQuiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            tau: self.tau.iter().map(|&t| Some(t)).collect(),
        }
    }

    pub fn augment(&self, c: &[OrbitVertex]) -> Result<AugmentedQuiver<OrbitVertex>> {
        let idx = c
            .iter()
            .map(|v| {
                self.index_of_orbit(v)
                    .ok_or_else(|| Error::VertexNotFound(v.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        augment(&self.translation_quiver(), &idx)
    }
}
