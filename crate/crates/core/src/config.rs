//! (−d)-combinatorial configurations on ℤΔ/𝕊[d].

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::brauer::{diagonals_intersect, BrauerRelation, Budget, Diagonal, Polygon};
use crate::dynkin::{DynkinDiagram, Family, OrbitVertex, Quotient, ZVertex};
use crate::error::{Error, Result};
use crate::hom::HomTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Configuration {
    pub diagram: DynkinDiagram,
    pub d: u32,
    /// sorted
    pub vertices: Vec<OrbitVertex>,
}

impl Configuration {
    /// Labels ("i-j") for type A, vertices ("(p,q)") otherwise, sorted.
    pub fn serialize_items(&self) -> Vec<String> {
        match self.diagram.family {
            Family::A => {
                let mut l: Vec<Diagonal> = self.vertices.iter().filter_map(|v| v.label).collect();
                l.sort();
                l.iter().map(|x| x.to_string()).collect()
            }
            _ => self.vertices.iter().map(|v| v.rep.to_string()).collect(),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize_items().join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Pairwise h̄ tables; any family.
    HomTable,
    /// Type A only: candidates from diagonal disjointness, size n, then a full h̄ check.
    Geometric,
}

/// Quotient plus its h̄ matrix.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    pub quotient: Quotient,
    pub homs: HomTable,
    hbar: Vec<Vec<u64>>,
}

impl ConfigSpace {
    pub fn new(diagram: DynkinDiagram, d: u32) -> Result<Self> {
        let quotient = Quotient::new(diagram, d)?;
        let homs = HomTable::new(diagram)?;
        let hbar = homs.hbar_matrix(&quotient);
        Ok(ConfigSpace {
            quotient,
            homs,
            hbar,
        })
    }

    pub fn diagram(&self) -> DynkinDiagram {
        self.quotient.diagram
    }

    pub fn d(&self) -> u32 {
        self.quotient.d
    }

    pub fn len(&self) -> usize {
        self.quotient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotient.is_empty()
    }

    pub fn hbar(&self, x: usize, y: usize) -> u64 {
        self.hbar[x][y]
    }

    fn shifted(&self, y: usize, k: i64) -> usize {
        self.quotient.shift_index(y, k)
    }

    fn self_ok(&self, x: usize) -> bool {
        self.hbar(x, x) == 1 && (1..self.d() as i64).all(|j| self.hbar(x, self.shifted(x, -j)) == 0)
    }

    fn pair_ok(&self, x: usize, y: usize) -> bool {
        self.hbar(x, y) == 0
            && self.hbar(y, x) == 0
            && (1..self.d() as i64).all(|j| {
                self.hbar(x, self.shifted(y, -j)) == 0 && self.hbar(y, self.shifted(x, -j)) == 0
            })
    }

    pub fn is_preconfiguration(&self, s: &[usize]) -> bool {
        s.iter().all(|&x| self.self_ok(x))
            && s.iter()
                .enumerate()
                .all(|(i, &x)| s[i + 1..].iter().all(|&y| x != y && self.pair_ok(x, y)))
    }

    pub fn covers(&self, s: &[usize]) -> bool {
        (0..self.len()).all(|z| {
            s.iter().any(|&x| {
                (0..self.d() as i64).any(|j| self.hbar(x, self.shifted(z, -j)) != 0)
            })
        })
    }

    pub fn is_configuration(&self, s: &[usize]) -> bool {
        self.is_preconfiguration(s) && self.covers(s)
    }

    pub fn indices(&self, c: &Configuration) -> Result<Vec<usize>> {
        c.vertices
            .iter()
            .map(|v| {
                self.quotient
                    .index_of_orbit(v)
                    .ok_or_else(|| Error::VertexNotFound(v.to_string()))
            })
            .collect()
    }

    pub fn make(&self, s: &[usize]) -> Configuration {
        let mut vertices: Vec<OrbitVertex> = s.iter().map(|&i| self.quotient.vertices[i]).collect();
        vertices.sort();
        vertices.dedup();
        Configuration {
            diagram: self.diagram(),
            d: self.d(),
            vertices,
        }
    }

    /// Parses "i-j,…" labels (type A) or "(p,q),…" vertices.
    pub fn parse_set(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        if s.contains('(') {
            let mut rest = s;
            while let Some(open) = rest.find('(') {
                let close = rest[open..]
                    .find(')')
                    .ok_or_else(|| Error::Parse(s.to_string()))?
                    + open;
                let v: ZVertex = rest[open..=close].parse()?;
                if !self.diagram().contains(v) {
                    return Err(Error::VertexNotFound(v.to_string()));
                }
                out.push(self.quotient.index_of(v));
                rest = &rest[close + 1..];
            }
        } else {
            for part in s.split(',') {
                let l: Diagonal = part.parse()?;
                out.push(
                    self.quotient
                        .index_of_label(l)
                        .ok_or_else(|| Error::VertexNotFound(l.to_string()))?,
                );
            }
        }
        out.sort_unstable();
        let before = out.len();
        out.dedup();
        if out.len() != before {
            return Err(Error::Parse(format!("repeated vertex in {s:?}")));
        }
        Ok(out)
    }

    fn candidate_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| {
            let v = self.quotient.vertices[i];
            (v.label, v.rep)
        });
        order
    }

    pub fn enumerate(&self, strategy: Strategy, budget: &Budget) -> Result<Vec<Configuration>> {
        if strategy == Strategy::Geometric && self.diagram().family != Family::A {
            return Err(Error::InvalidDiagram(format!(
                "geometric strategy needs type A, got {}",
                self.diagram()
            )));
        }
        let order = self.candidate_order();
        let m = order.len();
        let compat: Vec<Vec<bool>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| a != b && self.compatible(strategy, order[a], order[b]))
                    .collect()
            })
            .collect();
        let ok: Vec<bool> = (0..m).map(|a| self.usable(strategy, order[a])).collect();
        let target = match strategy {
            Strategy::Geometric => Some(self.diagram().rank as usize),
            Strategy::HomTable => None,
        };
        let shards: Vec<Result<Vec<Vec<usize>>>> = (0..m)
            .into_par_iter()
            .filter(|&a| ok[a])
            .map(|first| {
                let mut found = Vec::new();
                let mut chosen = vec![first];
                let mut pending = 0u64;
                self.extend(&compat, &ok, &order, target, &mut chosen, first + 1, &mut found, budget, &mut pending)?;
                budget.spend(pending)?;
                Ok(found)
            })
            .collect();
        let mut out = BTreeSet::new();
        for shard in shards {
            for s in shard? {
                out.insert(self.make(&s));
            }
        }
        Ok(out.into_iter().collect())
    }

    fn usable(&self, strategy: Strategy, x: usize) -> bool {
        match strategy {
            Strategy::HomTable => self.self_ok(x),
            Strategy::Geometric => self.quotient.vertices[x].label.is_some(),
        }
    }

    fn compatible(&self, strategy: Strategy, x: usize, y: usize) -> bool {
        match strategy {
            Strategy::HomTable => self.pair_ok(x, y),
            Strategy::Geometric => {
                let (a, b) = (self.quotient.vertices[x].label, self.quotient.vertices[y].label);
                matches!((a, b), (Some(a), Some(b)) if !diagonals_intersect(a, b))
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        compat: &[Vec<bool>],
        ok: &[bool],
        order: &[usize],
        target: Option<usize>,
        chosen: &mut Vec<usize>,
        from: usize,
        found: &mut Vec<Vec<usize>>,
        budget: &Budget,
        pending: &mut u64,
    ) -> Result<()> {
        *pending += 1;
        if *pending == 1024 {
            budget.spend(*pending)?;
            *pending = 0;
        }
        let real: Vec<usize> = chosen.iter().map(|&a| order[a]).collect();
        let check = match target {
            Some(t) => chosen.len() == t,
            None => true,
        };
        if check && self.is_configuration(&real) {
            found.push(real);
        }
        if target.is_some_and(|t| chosen.len() >= t) {
            return Ok(());
        }
        for b in from..order.len() {
            if ok[b] && chosen.iter().all(|&a| compat[a][b]) {
                chosen.push(b);
                self.extend(compat, ok, order, target, chosen, b + 1, found, budget, pending)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    /// π⁻¹(C) over `w` fundamental domains: g^k(c) for c ∈ C, 0 ≤ k < w, g = 𝕊[d].
    pub fn lift(&self, c: &Configuration, w: usize) -> BTreeSet<ZVertex> {
        let dg = self.diagram();
        let mut out = BTreeSet::new();
        for v in &c.vertices {
            let mut x = v.rep;
            for _ in 0..w {
                out.insert(x);
                x = dg.serre_shift(x, self.d());
            }
        }
        out
    }

    /// Pre-configuration test on ℤΔ using plain h.
    pub fn is_lifted_preconfiguration(&self, s: &BTreeSet<ZVertex>) -> bool {
        let dg = self.diagram();
        s.iter().all(|&x| {
            s.iter().all(|&y| {
                let want = u64::from(x == y);
                self.homs.value(x, y) == want
                    && (1..self.d() as i64).all(|j| self.homs.value(x, dg.shift_by(y, -j)) == 0)
            })
        })
    }

    pub fn shift_config(&self, c: &Configuration, k: i64) -> Result<Configuration> {
        let idx = self.indices(c)?;
        let moved: Vec<usize> = idx.iter().map(|&i| self.shifted(i, k)).collect();
        Ok(self.make(&moved))
    }

    /// ⟨[1]⟩-orbits; each class sorted, classes ordered by least member.
    pub fn rotation_classes(&self, configs: &[Configuration]) -> Result<Vec<Vec<Configuration>>> {
        let mut classes: std::collections::BTreeMap<Configuration, BTreeSet<Configuration>> =
            Default::default();
        for c in configs {
            let mut orbit = BTreeSet::new();
            let mut x = c.clone();
            while orbit.insert(x.clone()) {
                x = self.shift_config(&x, 1)?;
            }
            let rep = orbit.iter().next().expect("orbit contains c").clone();
            classes.entry(rep).or_default().insert(c.clone());
        }
        Ok(classes.into_values().map(|s| s.into_iter().collect()).collect())
    }

    fn polygon(&self) -> Result<Polygon> {
        if self.diagram().family != Family::A {
            return Err(Error::InvalidDiagram(self.diagram().code()));
        }
        Polygon::new(self.diagram().rank, self.d())
    }

    pub fn config_to_brauer(&self, c: &Configuration) -> Result<BrauerRelation> {
        let p = self.polygon()?;
        if c.vertices.len() != p.n as usize {
            return Err(Error::WrongSize {
                expected: p.n as usize,
                got: c.vertices.len(),
            });
        }
        let b = BrauerRelation::new(c.vertices.iter().filter_map(|v| v.label));
        if !crate::brauer::is_maximal_brauer(&b, &p) {
            return Err(Error::ValidationFailure(format!("{b} is not maximal")));
        }
        Ok(b)
    }

    pub fn brauer_to_config(&self, b: &BrauerRelation) -> Result<Configuration> {
        let p = self.polygon()?;
        if b.len() != p.n as usize {
            return Err(Error::WrongSize {
                expected: p.n as usize,
                got: b.len(),
            });
        }
        let idx = b
            .diagonals
            .iter()
            .map(|&x| {
                self.quotient
                    .index_of_label(x)
                    .ok_or_else(|| Error::NotADiagonal(x.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if !self.is_configuration(&idx) {
            return Err(Error::ValidationFailure(format!("{b} is not a configuration")));
        }
        Ok(self.make(&idx))
    }

    fn label_index(&self, x: Diagonal) -> Result<usize> {
        self.quotient
            .index_of_label(x)
            .ok_or_else(|| Error::NotADiagonal(x.to_string()))
    }

    /// h̄_X(Y[−s]) = 0 and h̄_Y(X[−s]) = 0 for 0 ≤ s ≤ d−1.
    pub fn hbar_disjointness_oracle(&self, x: Diagonal, y: Diagonal) -> Result<bool> {
        let (xi, yi) = (self.label_index(x)?, self.label_index(y)?);
        Ok((0..self.d() as i64).all(|s| {
            self.hbar(xi, self.shifted(yi, -s)) == 0 && self.hbar(yi, self.shifted(xi, -s)) == 0
        }))
    }

    /// Some (X, i) with X ∈ B, 0 ≤ i ≤ d−1 and h̄_X(M[−i]) ≠ 0.
    pub fn coverage_oracle(&self, b: &BrauerRelation, m: Diagonal) -> Result<Option<(Diagonal, u32)>> {
        let mi = self.label_index(m)?;
        for &x in &b.diagonals {
            let xi = self.label_index(x)?;
            for i in 0..self.d() {
                if self.hbar(xi, self.shifted(mi, -(i as i64))) != 0 {
                    return Ok(Some((x, i)));
                }
            }
        }
        Ok(None)
    }
}
