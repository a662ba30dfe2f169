//! d-diagonals of the N-gon, maximal d-Brauer relations, δ, B-cycles, the Θ
//! surjection and the counting formula.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair of polygon vertices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal {
    pub a: u32,
    pub b: u32,
}

impl Diagonal {
    pub fn new(i: u32, j: u32) -> Self {
        Diagonal {
            a: i.min(j),
            b: i.max(j),
        }
    }

    pub fn has_endpoint(&self, v: u32) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Diagonal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("diagonal {s:?}"));
        let (i, j) = s.trim().split_once('-').ok_or_else(bad)?;
        let i: u32 = i.trim().parse().map_err(|_| bad())?;
        let j: u32 = j.trim().parse().map_err(|_| bad())?;
        if i == j {
            return Err(bad());
        }
        Ok(Diagonal::new(i, j))
    }
}

/// The N-gon with N = (d+1)n + d − 1, vertices 1..N clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polygon {
    pub n: u32,
    pub d: u32,
    pub size: u32,
}

impl Polygon {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        let size = crate::dynkin::polygon_size(n, d);
        if n == 0 || d == 0 || size < 3 {
            return Err(Error::Degenerate(size));
        }
        Ok(Polygon {
            n,
            d,
            size: size as u32,
        })
    }

    fn wrap(&self, v: i64) -> u32 {
        ((v - 1).rem_euclid(self.size as i64) + 1) as u32
    }

    pub fn contains(&self, x: Diagonal) -> bool {
        x.a >= 1 && x.b <= self.size && x.a != x.b
    }

    pub fn is_d_diagonal(&self, x: Diagonal) -> bool {
        self.contains(x) && (x.b - x.a) % (self.d + 1) == self.d
    }

    /// θ^t: add t to both endpoints.
    pub fn rotate(&self, x: Diagonal, t: i64) -> Diagonal {
        Diagonal::new(self.wrap(x.a as i64 + t), self.wrap(x.b as i64 + t))
    }

    pub fn rotate_relation(&self, b: &BrauerRelation, t: i64) -> BrauerRelation {
        BrauerRelation::new(b.diagonals.iter().map(|&x| self.rotate(x, t)))
    }

    pub fn all_d_diagonals(&self) -> Vec<Diagonal> {
        let mut out = Vec::new();
        for a in 1..=self.size {
            for b in a + 1..=self.size {
                let x = Diagonal::new(a, b);
                if self.is_d_diagonal(x) {
                    out.push(x);
                }
            }
        }
        out
    }
}

/// Shared endpoints count as intersecting.
pub fn diagonals_intersect(x: Diagonal, y: Diagonal) -> bool {
    if x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b {
        return true;
    }
    let inside = |v: u32| x.a < v && v < x.b;
    inside(y.a) != inside(y.b)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BrauerRelation {
    pub diagonals: Vec<Diagonal>,
}

impl BrauerRelation {
    pub fn new(it: impl IntoIterator<Item = Diagonal>) -> Self {
        let set: BTreeSet<Diagonal> = it.into_iter().collect();
        BrauerRelation {
            diagonals: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn contains(&self, x: Diagonal) -> bool {
        self.diagonals.binary_search(&x).is_ok()
    }
}

impl fmt::Display for BrauerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BrauerRelation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BrauerRelation::new([]));
        }
        let v = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Diagonal>>>()?;
        let b = BrauerRelation::new(v.iter().copied());
        if b.len() != v.len() {
            return Err(Error::Parse(format!("repeated diagonal in {s:?}")));
        }
        Ok(b)
    }
}

/// Pairwise disjoint d-diagonals.
pub fn is_brauer(b: &BrauerRelation, p: &Polygon) -> bool {
    b.diagonals.iter().all(|&x| p.is_d_diagonal(x))
        && b.diagonals.iter().enumerate().all(|(i, &x)| {
            b.diagonals[i + 1..]
                .iter()
                .all(|&y| !diagonals_intersect(x, y))
        })
}

pub fn is_maximal_brauer(b: &BrauerRelation, p: &Polygon) -> bool {
    is_brauer(b, p)
        && p.all_d_diagonals().into_iter().all(|m| {
            b.contains(m) || b.diagonals.iter().any(|&x| diagonals_intersect(x, m))
        })
}

/// Smallest m ≥ 1 with θ^{−m}(X) meeting Y.
pub fn delta(x: Diagonal, y: Diagonal, p: &Polygon) -> Result<u32> {
    if diagonals_intersect(x, y) {
        return Err(Error::NotDisjoint(x.to_string(), y.to_string()));
    }
    (1..=p.size)
        .find(|&m| diagonals_intersect(p.rotate(x, -(m as i64)), y))
        .ok_or_else(|| Error::ValidationFailure(format!("delta({x},{y}) undefined")))
}

/// Diagonals bounding one face, ordered anti-clockwise, starting at the least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BCycle {
    pub members: Vec<Diagonal>,
}

impl BCycle {
    pub fn from_order(mut members: Vec<Diagonal>) -> Self {
        if let Some(k) = (0..members.len()).min_by_key(|&i| members[i]) {
            members.rotate_left(k);
        }
        BCycle { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// δ(X_l, X_{l+1}) around the cycle.
    pub fn deltas(&self, p: &Polygon) -> Result<Vec<u32>> {
        let s = self.members.len();
        (0..s)
            .map(|i| delta(self.members[i], self.members[(i + 1) % s], p))
            .collect()
    }
}

/// Faces of the subdivision of the polygon by `b`, as cyclic diagonal lists
/// in clockwise traversal order. Faces with a single diagonal are included.
pub fn faces(b: &BrauerRelation, p: &Polygon) -> Vec<Vec<Diagonal>> {
    let n = p.size as usize;
    let mut partner = vec![0u32; n + 1];
    for x in &b.diagonals {
        partner[x.a as usize] = x.b;
        partner[x.b as usize] = x.a;
    }
    let next = |v: u32| if v == p.size { 1 } else { v + 1 };
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for start in 1..=p.size {
        if seen[start as usize] {
            continue;
        }
        let mut face = Vec::new();
        let mut arc = start;
        loop {
            seen[arc as usize] = true;
            let mut v = next(arc);
            if partner[v as usize] != 0 {
                face.push(Diagonal::new(v, partner[v as usize]));
                v = partner[v as usize];
            }
            arc = v;
            if arc == start {
                break;
            }
        }
        out.push(face);
    }
    out
}

/// B-cycles with at least two members.
pub fn b_cycles(b: &BrauerRelation, p: &Polygon) -> Vec<BCycle> {
    let mut cycles: Vec<BCycle> = faces(b, p)
        .into_iter()
        .filter(|f| f.len() >= 2)
        .map(|mut f| {
            f.reverse();
            BCycle::from_order(f)
        })
        .collect();
    cycles.sort();
    cycles
}

/// Shared search budget.
#[derive(Debug)]
pub struct Budget {
    max: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(max: u64) -> Self {
        Budget {
            max,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    /// Reads `CYW_MAX_STATES`, falling back to `default`.
    pub fn from_env(default: u64) -> Self {
        let max = std::env::var("CYW_MAX_STATES")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(default);
        Self::new(max)
    }

    pub fn spend(&self, k: u64) -> Result<()> {
        let used = self.used.fetch_add(k, Ordering::Relaxed) + k;
        if used > self.max {
            Err(Error::SizeLimit(self.max))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

struct Search<'a, F> {
    p: Polygon,
    e: u32,
    counts: Vec<u32>,
    stack: Vec<u32>,
    chords: Vec<Diagonal>,
    forced: Option<u32>,
    budget: &'a Budget,
    pending: u64,
    visit: &'a F,
    found: u64,
}

impl<F: Fn(&[Diagonal]) + Sync> Search<'_, F> {
    fn face(&mut self) -> &mut [u32] {
        let e = self.e as usize;
        let k = self.stack.len();
        &mut self.counts[k * e..(k + 1) * e]
    }

    fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending == 4096 {
            self.budget.spend(self.pending)?;
            self.pending = 0;
        }
        Ok(())
    }

    fn run(&mut self, v: u32) -> Result<()> {
        self.tick()?;
        let n = self.p.size;
        if v > n {
            if self.stack.is_empty() {
                self.found += 1;
                (self.visit)(&self.chords);
            }
            return Ok(());
        }
        let e = self.e;
        let forced_here = self.forced == Some(v);
        let bottom_forced = self.forced.is_some() && self.stack.len() == 1 && self.stack[0] == 1;
        // leave v free
        if !forced_here {
            let r = (v % e) as usize;
            let bad = ((v + 1) % e) as usize;
            if self.face()[bad] == 0 {
                self.face()[r] += 1;
                self.run(v + 1)?;
                self.face()[r] -= 1;
            }
        }
        // close the innermost open chord at v
        if let Some(&o) = self.stack.last() {
            let allowed = if bottom_forced { forced_here } else { !forced_here };
            if allowed && (v - o) % e == self.p.d {
                // the face inside (o, v) is complete; clear it for the next sibling
                let inner = self.face().to_vec();
                self.face().fill(0);
                self.stack.pop();
                self.chords.push(Diagonal::new(o, v));
                self.run(v + 1)?;
                self.chords.pop();
                self.stack.push(o);
                self.face().copy_from_slice(&inner);
            }
        }
        // open a chord at v
        if !forced_here
            && self.chords.len() + self.stack.len() < self.p.n as usize
            && v + self.p.d <= n
        {
            self.stack.push(v);
            self.run(v + 1)?;
            self.stack.pop();
        }
        Ok(())
    }
}

/// Visits every maximal d-Brauer relation (sorted diagonals, unspecified
/// order across shards) and returns the count.
///
/// Shards are indexed by the diagonal at vertex 1, or none.
pub fn visit_brauer<F>(p: &Polygon, budget: &Budget, visit: &F) -> Result<u64>
where
    F: Fn(&[Diagonal]) + Sync,
{
    let e = p.d + 1;
    let mut shards: Vec<Option<u32>> = vec![None];
    shards.extend(
        (2..=p.size)
            .filter(|w| (w - 1) % e == p.d)
            .map(Some),
    );
    let results: Vec<Result<u64>> = shards
        .par_iter()
        .map(|&shard| {
            let mut s = Search {
                p: *p,
                e,
                counts: vec![0; (p.n as usize + 1) * e as usize],
                stack: Vec::new(),
                chords: Vec::new(),
                forced: shard,
                budget,
                pending: 0,
                visit,
                found: 0,
            };
            match shard {
                None => {
                    s.face()[(1 % e) as usize] += 1;
                    s.run(2)?;
                }
                Some(_) => {
                    s.stack.push(1);
                    s.run(2)?;
                }
            }
            budget.spend(s.pending)?;
            Ok(s.found)
        })
        .collect();
    results.into_iter().sum()
}

/// All maximal d-Brauer relations, sorted.
pub fn enumerate_brauer(p: &Polygon, budget: &Budget) -> Result<Vec<BrauerRelation>> {
    let out = std::sync::Mutex::new(Vec::new());
    visit_brauer(p, budget, &|chords: &[Diagonal]| {
        let b = BrauerRelation::new(chords.iter().copied());
        out.lock().unwrap().push(b);
    })?;
    let mut v = out.into_inner().unwrap();
    v.sort();
    Ok(v)
}

pub fn count_brauer(p: &Polygon, budget: &Budget) -> Result<u64> {
    visit_brauer(p, budget, &|_: &[Diagonal]| {})
}

pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(r)
}

/// (1/(n+1))·C((d+1)n+d−1, n).
pub fn count_formula(n: u32, d: u32) -> Result<u128> {
    let p = Polygon::new(n, d)?;
    let c = binomial(p.size as u64, n as u64)
        .ok_or_else(|| Error::ValidationFailure("binomial overflow".into()))?;
    Ok(c / (n as u128 + 1))
}

/// Θ(V) = {(v, v+d+(d+1)a_v)}.
pub fn theta_map(vs: &BTreeSet<u32>, p: &Polygon) -> Result<BrauerRelation> {
    if vs.len() != p.n as usize {
        return Err(Error::WrongSize {
            expected: p.n as usize,
            got: vs.len(),
        });
    }
    if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > p.size) {
        return Err(Error::IndexOutOfRange(v.to_string()));
    }
    let e = p.d as i64 + 1;
    let mut out = Vec::new();
    for &v in vs {
        let a = (0..p.n as i64).find(|&a| {
            let len = p.d as i64 + e * a;
            let w = p.wrap(v as i64 + len);
            let inside = (1..len)
                .filter(|&k| vs.contains(&p.wrap(v as i64 + k)))
                .count() as i64;
            inside == a && !vs.contains(&w)
        });
        let a = a.ok_or_else(|| Error::ValidationFailure(format!("no a_v for v={v}")))?;
        out.push(Diagonal::new(v, p.wrap(v as i64 + p.d as i64 + e * a)));
    }
    Ok(BrauerRelation::new(out))
}

/// Some t with θ^t(B) = B′.
pub fn rotation_equivalent(b: &BrauerRelation, b2: &BrauerRelation, p: &Polygon) -> Option<u32> {
    (0..p.size).find(|&t| p.rotate_relation(b, t as i64) == *b2)
}

/// Least rotation of `b`.
pub fn rotation_canonical(b: &BrauerRelation, p: &Polygon) -> BrauerRelation {
    (0..p.size)
        .map(|t| p.rotate_relation(b, t as i64))
        .min()
        .expect("polygon is non-empty")
}

/// Partition into θ-orbits; classes sorted by canonical representative.
pub fn brauer_rotation_classes(rels: &[BrauerRelation], p: &Polygon) -> Vec<Vec<BrauerRelation>> {
    let mut classes: std::collections::BTreeMap<BrauerRelation, Vec<BrauerRelation>> =
        Default::default();
    for b in rels {
        classes
            .entry(rotation_canonical(b, p))
            .or_default()
            .push(b.clone());
    }
    classes
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect()
}

/// Infers d from a relation: the least d for which it is maximal on its polygon.
pub fn infer_d(b: &BrauerRelation) -> Option<u32> {
    let n = b.len() as u32;
    let top = b.diagonals.iter().map(|x| x.b).max()?;
    (1..=top).find(|&d| {
        Polygon::new(n, d)
            .map(|p| p.size >= top && is_maximal_brauer(b, &p))
            .unwrap_or(false)
    })
}
