//! Hom-dimension functions h_x on ℤΔ via the f_n recursion, their projection
//! h̄ to ℤΔ/𝕊[d], and the closed form for type A.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dynkin::{tau_inv, DynkinDiagram, Family, Quotient, ZVertex};
use crate::error::{Error, Result};

/// Finitely supported non-negative function on vertices of ℤΔ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VertexMultiset {
    entries: BTreeMap<ZVertex, u64>,
}

impl VertexMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: ZVertex) -> Self {
        let mut m = Self::new();
        m.add(v, 1);
        m
    }

    pub fn get(&self, v: ZVertex) -> u64 {
        self.entries.get(&v).copied().unwrap_or(0)
    }

    pub fn add(&mut self, v: ZVertex, k: u64) {
        if k > 0 {
            *self.entries.entry(v).or_insert(0) += k;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ZVertex, u64)> + '_ {
        self.entries.iter().map(|(&v, &k)| (v, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    fn translate(&self, dp: i64) -> Self {
        VertexMultiset {
            entries: self
                .entries
                .iter()
                .map(|(v, &k)| (ZVertex::new(v.level + dp, v.node), k))
                .collect(),
        }
    }
}

/// f_0(x), f_1(x), …, ending with the first zero term.
pub fn f_seq(x: ZVertex, diagram: &DynkinDiagram, max_steps: usize) -> Result<Vec<VertexMultiset>> {
    let mut seq = vec![VertexMultiset::singleton(x)];
    let mut step = 0;
    loop {
        if seq.last().is_some_and(|m| m.is_zero()) {
            return Ok(seq);
        }
        if step == max_steps {
            return Err(Error::CapExceeded(max_steps));
        }
        step += 1;
        let mut acc: BTreeMap<ZVertex, i64> = BTreeMap::new();
        for (v, k) in seq[seq.len() - 1].iter() {
            for s in diagram.successors(v) {
                *acc.entry(s).or_insert(0) += k as i64;
            }
        }
        if seq.len() >= 2 {
            for (v, k) in seq[seq.len() - 2].iter() {
                *acc.entry(tau_inv(v)).or_insert(0) -= k as i64;
            }
        }
        let mut next = VertexMultiset::new();
        for (v, k) in acc {
            if k < 0 {
                return Err(Error::NegativeMultiplicity(v.to_string()));
            }
            next.add(v, k as u64);
        }
        seq.push(next);
    }
}

pub fn default_cap(diagram: &DynkinDiagram) -> usize {
    10 * diagram.coxeter_number() as usize
}

/// h_x: total multiplicity over the f-sequence.
pub fn h(x: ZVertex, diagram: &DynkinDiagram) -> Result<VertexMultiset> {
    let mut out = VertexMultiset::new();
    for m in f_seq(x, diagram, default_cap(diagram))? {
        for (v, k) in m.iter() {
            out.add(v, k);
        }
    }
    Ok(out)
}

/// h_x for every level-0 vertex; other sources are translates.
#[derive(Debug, Clone)]
pub struct HomTable {
    pub diagram: DynkinDiagram,
    rows: Vec<VertexMultiset>,
}

impl HomTable {
    pub fn new(diagram: DynkinDiagram) -> Result<Self> {
        let rows = diagram
            .nodes()
            .map(|q| h(ZVertex::new(0, q), &diagram))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomTable { diagram, rows })
    }

    pub fn h(&self, x: ZVertex) -> VertexMultiset {
        self.rows[x.node as usize - 1].translate(x.level)
    }

    pub fn value(&self, x: ZVertex, y: ZVertex) -> u64 {
        self.rows[x.node as usize - 1].get(ZVertex::new(y.level - x.level, y.node))
    }

    /// h̄_x(y) for all quotient vertices y, indexed like `q.vertices`.
    pub fn hbar_row(&self, q: &Quotient, x: usize) -> Vec<u64> {
        let mut row = vec![0; q.len()];
        for (z, k) in self.h(q.vertices[x].rep).iter() {
            row[q.index_of(z)] += k;
        }
        row
    }

    /// Full h̄ matrix, `m[x][y] = h̄_x(y)`.
    pub fn hbar_matrix(&self, q: &Quotient) -> Vec<Vec<u64>> {
        (0..q.len()).map(|x| self.hbar_row(q, x)).collect()
    }
}

/// h̄_x(y) = Σ over the fiber of y of h_x.
pub fn h_bar(x: ZVertex, y: ZVertex, diagram: &DynkinDiagram, d: u32) -> Result<u64> {
    let target = crate::dynkin::orbit_canonical(y, diagram, d);
    let hx = h(x, diagram)?;
    Ok(hx
        .iter()
        .filter(|(z, _)| crate::dynkin::orbit_canonical(*z, diagram, d) == target)
        .map(|(_, k)| k)
        .sum())
}

fn diagonal_width(x: (i64, i64), n: u32, d: u32) -> Result<i64> {
    let e = d as i64 + 1;
    let gap = x.1 - x.0 - d as i64;
    if gap < 0 || gap % e != 0 || gap / e > n as i64 - 1 {
        return Err(Error::NotADiagonal(format!("({},{})", x.0, x.1)));
    }
    Ok(gap / e)
}

/// h_X(Y) on ℤA_n from the integer labels of X and Y.
pub fn h_closed_form_a(x: (i64, i64), y: (i64, i64), n: u32, d: u32) -> Result<u8> {
    let m = diagonal_width(x, n, d)?;
    diagonal_width(y, n, d)?;
    let e = d as i64 + 1;
    let di = y.0 - x.0;
    let dj = y.1 - x.0 - d as i64;
    if di < 0 || dj < 0 || di % e != 0 || dj % e != 0 {
        return Ok(0);
    }
    let (i, j) = (di / e, dj / e);
    Ok(u8::from(i <= m && m <= j && j < n as i64))
}

/// The vertex of ℤA_n with integer label `l`, if any.
pub fn vertex_of_z_label(l: (i64, i64), d: u32) -> Option<ZVertex> {
    let e = d as i64 + 1;
    if (l.0 - 1) % e != 0 || l.1 % e != 0 {
        return None;
    }
    let p = (l.0 - 1).div_euclid(e);
    let q = l.1 / e - p;
    (q >= 1).then(|| ZVertex::new(p, q as u32))
}

pub fn is_type_a(diagram: &DynkinDiagram) -> bool {
    diagram.family == Family::A
}
