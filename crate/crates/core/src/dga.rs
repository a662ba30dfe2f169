//! Graded Brauer quivers Q_B, the presentation kQ_B/I_B, degree twists and
//! admissible gradings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::brauer::{b_cycles, delta, BrauerRelation, Diagonal, Polygon};
use crate::config::ConfigSpace;
use crate::dynkin::{AugmentedQuiver, DynkinDiagram, OrbitVertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedArrow {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedQuiver {
    pub vertices: Vec<Diagonal>,
    pub arrows: Vec<GradedArrow>,
    /// Minimal cycles as arrow indices in path order.
    pub cycles: Vec<Vec<usize>>,
}

impl GradedQuiver {
    pub fn vertex(&self, y: Diagonal) -> Option<usize> {
        self.vertices.iter().position(|&v| v == y)
    }

    pub fn cycle_sums(&self) -> Vec<i64> {
        self.cycles
            .iter()
            .map(|c| c.iter().map(|&a| self.arrows[a].degree).sum())
            .collect()
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.source == a.target)
    }

    /// Cycles through each vertex.
    pub fn cycles_at(&self, v: usize) -> Vec<usize> {
        (0..self.cycles.len())
            .filter(|&c| self.cycles[c].iter().any(|&a| self.arrows[a].source == v))
            .collect()
    }

    /// Every cycle has degrees {−d+1, 0, …, 0}.
    pub fn is_admissible(&self, d: u32) -> bool {
        (0..self.cycles.len()).all(|c| self.cycle_admissible(c, d))
    }

    fn cycle_admissible(&self, c: usize, d: u32) -> bool {
        let mut degs: Vec<i64> = self.cycles[c].iter().map(|&a| self.arrows[a].degree).collect();
        degs.sort_unstable();
        let mut want = vec![0; degs.len()];
        want[0] = 1 - d as i64;
        want.sort_unstable();
        degs == want
    }

    /// Arrows of cycle `c` in path order starting at vertex `v`.
    fn cycle_from(&self, c: usize, v: usize) -> Vec<usize> {
        let cyc = &self.cycles[c];
        let k = cyc
            .iter()
            .position(|&a| self.arrows[a].source == v)
            .expect("vertex lies on cycle");
        let mut out = cyc.clone();
        out.rotate_left(k);
        out
    }
}

/// Q_B: arrows X_i → X_{i+1} of degree 1 − δ(X_i, X_{i+1}) around each B-cycle.
pub fn build_quiver(b: &BrauerRelation, p: &Polygon) -> Result<GradedQuiver> {
    let vertices = b.diagonals.clone();
    let idx = |x: Diagonal| vertices.binary_search(&x).expect("cycle members lie in B");
    let mut arrows = Vec::new();
    let mut cycles = Vec::new();
    for cyc in b_cycles(b, p) {
        let deltas = cyc.deltas(p)?;
        let s = cyc.members.len();
        let mut ids = Vec::new();
        for (i, &delta) in deltas.iter().enumerate() {
            ids.push(arrows.len());
            arrows.push(GradedArrow {
                source: idx(cyc.members[i]),
                target: idx(cyc.members[(i + 1) % s]),
                degree: 1 - delta as i64,
            });
        }
        cycles.push(ids);
    }
    Ok(GradedQuiver {
        vertices,
        arrows,
        cycles,
    })
}

/// A signed path: coefficient and arrows in composition order (left to right).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PathTerm {
    pub coeff: i64,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RelationKind {
    FullCycle,
    Mixed,
    Difference,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub terms: Vec<PathTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraPresentation {
    pub quiver: GradedQuiver,
    pub relations: Vec<Relation>,
}

fn mono(kind: RelationKind, path: Vec<usize>) -> Relation {
    Relation {
        kind,
        terms: vec![PathTerm { coeff: 1, path }],
    }
}

pub fn build_presentation(q: &GradedQuiver) -> AlgebraPresentation {
    let mut relations = Vec::new();
    for cyc in &q.cycles {
        let m = cyc.len();
        for i in 0..m {
            let path: Vec<usize> = (0..=m).map(|k| cyc[(i + k) % m]).collect();
            relations.push(mono(RelationKind::FullCycle, path));
        }
    }
    for v in 0..q.vertices.len() {
        let at = q.cycles_at(v);
        if at.len() != 2 {
            continue;
        }
        let alpha = q.cycle_from(at[0], v);
        let beta = q.cycle_from(at[1], v);
        let (m, s) = (alpha.len(), beta.len());
        relations.push(mono(RelationKind::Mixed, vec![beta[s - 1], alpha[0]]));
        relations.push(mono(RelationKind::Mixed, vec![alpha[m - 1], beta[0]]));
        relations.push(Relation {
            kind: RelationKind::Difference,
            terms: vec![
                PathTerm {
                    coeff: 1,
                    path: alpha,
                },
                PathTerm {
                    coeff: -1,
                    path: beta,
                },
            ],
        });
    }
    AlgebraPresentation {
        quiver: q.clone(),
        relations,
    }
}

/// Q_{Y,a}: arrows ending at Y gain a, arrows starting at Y lose a.
pub fn degree_twist(q: &GradedQuiver, y: Diagonal, a: i64) -> Result<GradedQuiver> {
    let v = q
        .vertex(y)
        .ok_or_else(|| Error::VertexNotFound(y.to_string()))?;
    let mut out = q.clone();
    for arr in &mut out.arrows {
        if arr.target == v {
            arr.degree += a;
        }
        if arr.source == v {
            arr.degree -= a;
        }
    }
    Ok(out)
}

/// Twists making every minimal cycle carry one arrow of degree −d+1.
///
/// Cycles are fixed outward along a spanning tree of the cycle adjacency
/// graph; a cycle is never twisted at the vertex joining it to its parent.
pub fn make_admissible(q: &GradedQuiver, d: u32) -> Result<(GradedQuiver, Vec<(Diagonal, i64)>)> {
    let mut cur = q.clone();
    let mut twists = Vec::new();
    let nc = q.cycles.len();
    let mut attach: Vec<Option<usize>> = vec![None; nc];
    let mut seen = vec![false; nc];
    for root in 0..nc {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        attach[root] = Some(q.arrows[q.cycles[root][0]].source);
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            let y0 = attach[c].expect("attachment set before queueing");
            if !cur.cycle_admissible(c, d) {
                let arrows = cur.cycle_from(c, y0);
                for &a in &arrows[..arrows.len() - 1] {
                    let deg = cur.arrows[a].degree;
                    if deg != 0 {
                        let x = cur.vertices[cur.arrows[a].target];
                        cur = degree_twist(&cur, x, -deg)?;
                        twists.push((x, -deg));
                    }
                }
            }
            for &a in &q.cycles[c] {
                let v = q.arrows[a].source;
                for nb in q.cycles_at(v) {
                    if !seen[nb] {
                        seen[nb] = true;
                        attach[nb] = Some(v);
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    if !cur.is_admissible(d) {
        return Err(Error::ValidationFailure("admissible grading not reached".into()));
    }
    Ok((cur, twists))
}

/// Graded isomorphism that also carries minimal cycles onto minimal cycles.
pub fn graded_isomorphic(q1: &GradedQuiver, q2: &GradedQuiver) -> bool {
    let n = q1.vertices.len();
    if n != q2.vertices.len() || q1.arrows.len() != q2.arrows.len() || q1.cycles.len() != q2.cycles.len() {
        return false;
    }
    let key = |q: &GradedQuiver| -> BTreeMap<(usize, usize), Vec<i64>> {
        let mut m: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
        for a in &q.arrows {
            m.entry((a.source, a.target)).or_default().push(a.degree);
        }
        for v in m.values_mut() {
            v.sort_unstable();
        }
        m
    };
    let k2 = key(q2);
    let cyc2: BTreeSet<BTreeSet<(usize, usize, i64)>> = q2
        .cycles
        .iter()
        .map(|c| c.iter().map(|&a| (q2.arrows[a].source, q2.arrows[a].target, q2.arrows[a].degree)).collect())
        .collect();
    let k1 = key(q1);
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        q1: &GradedQuiver,
        k1: &BTreeMap<(usize, usize), Vec<i64>>,
        k2: &BTreeMap<(usize, usize), Vec<i64>>,
        cyc2: &BTreeSet<BTreeSet<(usize, usize, i64)>>,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = used.len();
        if perm.len() == n {
            let mapped: BTreeMap<(usize, usize), Vec<i64>> =
                k1.iter().map(|(&(s, t), v)| ((perm[s], perm[t]), v.clone())).collect();
            if &mapped != k2 {
                return false;
            }
            return q1.cycles.iter().all(|c| {
                let img: BTreeSet<(usize, usize, i64)> = c
                    .iter()
                    .map(|&a| {
                        let ar = q1.arrows[a];
                        (perm[ar.source], perm[ar.target], ar.degree)
                    })
                    .collect();
                cyc2.contains(&img)
            });
        }
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                perm.push(t);
                if go(q1, k1, k2, cyc2, perm, used) {
                    return true;
                }
                perm.pop();
                used[t] = false;
            }
        }
        false
    }
    go(q1, &k1, &k2, &cyc2, &mut perm, &mut used)
}

/// (ℤA_{n,d})_C for the configuration C matching B.
pub fn predicted_cm_quiver(b: &BrauerRelation, p: &Polygon) -> Result<AugmentedQuiver<OrbitVertex>> {
    let space = ConfigSpace::new(DynkinDiagram::a(p.n), p.d)?;
    let c = space.brauer_to_config(b)?;
    space.quotient.augment(&c.vertices)
}

/// δ-sum of an arbitrary cyclic ordering.
pub fn ordering_delta_sum(order: &[Diagonal], p: &Polygon) -> Result<u32> {
    let s = order.len();
    (0..s)
        .map(|i| delta(order[i], order[(i + 1) % s], p))
        .sum()
}
