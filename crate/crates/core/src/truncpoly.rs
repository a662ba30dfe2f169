//! Stable and Cohen-Macaulay objects over A = k[X]/(X^{n+1}) with deg X = −d.
//!
//! A stable object A_i[p] is a pair (i, p) modulo
//! (i, p) ≡ (i, p + r) with r = (n+1)d + 2, and
//! (i, p) ≡ (n+1−i, p + id + 1).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::dynkin::{augment, AugVertex, AugmentedQuiver, TranslationQuiver};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CmObject {
    /// T(i,t) ≅ A_i[td] in the stable category.
    T { i: u32, t: u32 },
    /// The free module A.
    Projective,
}

impl fmt::Display for CmObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmObject::T { i, t } => write!(f, "T({i},{t})"),
            CmObject::Projective => write!(f, "A"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Approximation {
    Zero,
    Object(CmObject),
}

/// A stable object in normal form A_i[td], 0 ≤ t ≤ N_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StableObject {
    pub i: u32,
    pub t: u32,
}

/// Vertex names and arrows.
pub type NamedQuiver = (Vec<String>, Vec<(usize, usize)>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TruncPoly {
    pub n: u32,
    pub d: u32,
}

impl TruncPoly {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::IndexOutOfRange(format!("n={n}, d={d}")));
        }
        Ok(TruncPoly { n, d })
    }

    /// r = (n+1)d + 2.
    pub fn period(&self) -> i64 {
        (self.n as i64 + 1) * self.d as i64 + 2
    }

    /// Largest t with T(i,t) in the fundamental domain.
    pub fn t_max(&self, i: u32) -> u32 {
        let (n, d) = (self.n, self.d);
        if d % 2 == 0 {
            (n + 1) * d / 2
        } else {
            ((n + 1) * d + n + 1 - 2 * i) / 2
        }
    }

    fn check(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange(format!("i={i} not in 1..={}", self.n)));
        }
        Ok(())
    }

    /// All (j, s mod r) with A_j[s] ≡ A_i[p], by closure under both relations.
    pub fn orbit(&self, i: u32, p: i64) -> Result<BTreeSet<(u32, i64)>> {
        self.check(i)?;
        let r = self.period();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([(i, p.rem_euclid(r))]);
        while let Some((j, s)) = queue.pop_front() {
            if !seen.insert((j, s)) {
                continue;
            }
            let n = self.n;
            let d = self.d as i64;
            let moves = [
                (j, (s + r).rem_euclid(r)),
                (n + 1 - j, (s + j as i64 * d + 1).rem_euclid(r)),
                (n + 1 - j, (s - (n + 1 - j) as i64 * d - 1).rem_euclid(r)),
            ];
            queue.extend(moves);
        }
        Ok(seen)
    }

    pub fn stable_normalize(&self, i: u32, p: i64) -> Result<StableObject> {
        let r = self.period();
        let d = self.d as i64;
        self.orbit(i, p)?
            .into_iter()
            .flat_map(|(j, s)| {
                (0..=self.t_max(j))
                    .filter(move |&t| (t as i64 * d).rem_euclid(r) == s)
                    .map(move |t| StableObject { i: j, t })
            })
            .min()
            .ok_or_else(|| Error::ValidationFailure(format!("A_{i}[{p}] misses the fundamental domain")))
    }

    pub fn equivalent(&self, a: (u32, i64), b: (u32, i64)) -> Result<bool> {
        Ok(self.orbit(a.0, a.1)?.contains(&(b.0, b.1.rem_euclid(self.period()))))
    }

    /// The representative A_j[s] with 0 ≤ s ≤ (n+1−j)d.
    pub fn cm_label(&self, o: StableObject) -> Result<(u32, i64)> {
        let d = self.d as i64;
        let orbit = self.orbit(o.i, o.t as i64 * d)?;
        let hits: Vec<(u32, i64)> = orbit
            .into_iter()
            .filter(|&(j, s)| s <= (self.n + 1 - j) as i64 * d)
            .collect();
        match hits.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::ValidationFailure(format!(
                "T({},{}) has {} small representatives",
                o.i,
                o.t,
                hits.len()
            ))),
        }
    }

    /// Display name: "k" for A_1, "A2[3]" and so on.
    pub fn cm_name(&self, o: StableObject) -> Result<String> {
        let (j, s) = self.cm_label(o)?;
        let base = if j == 1 { "k".to_string() } else { format!("A{j}") };
        Ok(if s == 0 { base } else { format!("{base}[{s}]") })
    }

    pub fn name(&self, o: CmObject) -> Result<String> {
        match o {
            CmObject::Projective => Ok("A".into()),
            CmObject::T { i, t } => self.cm_name(StableObject { i, t }),
        }
    }

    pub fn stable_objects(&self) -> Vec<StableObject> {
        (1..=self.n)
            .flat_map(|i| (0..=self.t_max(i)).map(move |t| StableObject { i, t }))
            .collect()
    }

    pub fn cm_indecomposables(&self) -> Vec<CmObject> {
        let mut v: Vec<CmObject> = self
            .stable_objects()
            .into_iter()
            .map(|o| CmObject::T { i: o.i, t: o.t })
            .collect();
        v.push(CmObject::Projective);
        v
    }

    /// τ = [d].
    pub fn tau(&self, o: StableObject) -> Result<StableObject> {
        self.stable_normalize(o.i, (o.t as i64 + 1) * self.d as i64)
    }

    /// Irreducible maps between stable objects:
    /// A_j[q] → A_{j−1}[q] and A_j[q] → A_{j+1}[q−d].
    pub fn stable_quiver(&self) -> Result<TranslationQuiver<StableObject>> {
        let vertices = self.stable_objects();
        let index: BTreeMap<StableObject, usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let d = self.d as i64;
        let mut arrows = BTreeSet::new();
        for (k, &v) in vertices.iter().enumerate() {
            for (j, s) in self.orbit(v.i, v.t as i64 * d)? {
                if j >= 2 {
                    arrows.insert((k, index[&self.stable_normalize(j - 1, s)?]));
                }
                if j < self.n {
                    arrows.insert((k, index[&self.stable_normalize(j + 1, s - d)?]));
                }
            }
        }
        let tau = vertices
            .iter()
            .map(|&v| Ok(Some(index[&self.tau(v)?])))
            .collect::<Result<Vec<_>>>()?;
        Ok(TranslationQuiver {
            vertices,
            arrows: arrows.into_iter().collect(),
            tau,
        })
    }

    /// Stable quiver with A inserted via T(n,1) → A → T(n,0).
    pub fn ar_quiver_cm(&self) -> Result<AugmentedQuiver<StableObject>> {
        let base = self.stable_quiver()?;
        let top = base
            .vertices
            .iter()
            .position(|&v| v == self.stable_normalize(self.n, self.d as i64).expect("n is in range"))
            .expect("T(n,1) is a vertex");
        augment(&base, &[top])
    }

    /// Vertex names and arrows of the CM quiver, with "A" for the projective.
    pub fn named_cm_quiver(&self) -> Result<NamedQuiver> {
        let q = self.ar_quiver_cm()?;
        let names = q
            .vertices
            .iter()
            .map(|v| match v {
                AugVertex::Base(o) => self.cm_name(*o),
                AugVertex::Projective(_) => Ok("A".to_string()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((names, q.arrows))
    }

    /// A_i[d] → A_{i−1}[d] ⊕ A_{i+1} → A_i, with A_0 = 0 and A_{n+1} = A.
    pub fn ar_triangle(&self, i: u32) -> Result<(CmObject, Vec<CmObject>, CmObject)> {
        self.check(i)?;
        let d = self.d as i64;
        let t = |o: StableObject| CmObject::T { i: o.i, t: o.t };
        let left = t(self.stable_normalize(i, d)?);
        let right = t(self.stable_normalize(i, 0)?);
        let mut middle = Vec::new();
        if i >= 2 {
            middle.push(t(self.stable_normalize(i - 1, d)?));
        }
        if i < self.n {
            middle.push(t(self.stable_normalize(i + 1, 0)?));
        } else {
            middle.push(CmObject::Projective);
        }
        Ok((left, middle, right))
    }

    /// Minimal CM approximation of A[p].
    pub fn approx_normal_form(&self, p: u32) -> Approximation {
        let (n, d) = (self.n, self.d);
        if p == 0 {
            return Approximation::Object(CmObject::Projective);
        }
        if p > n * d {
            return Approximation::Zero;
        }
        let t = (p - 1) / d;
        let gap = (t + 1) * d - p;
        let o = if gap.is_multiple_of(2) {
            let q = gap / 2;
            CmObject::T {
                i: n - t,
                t: (n + 1) * q + t + 1,
            }
        } else {
            let q = (gap - 1) / 2;
            CmObject::T {
                i: t + 1,
                t: (n + 1) * (q + 1),
            }
        };
        Approximation::Object(o)
    }

    /// Smallest r' > 0 fixing every stable object under [r'].
    pub fn minimal_period(&self) -> Result<i64> {
        let objs = self.stable_objects();
        for rr in 1..=self.period() {
            let mut all = true;
            for o in &objs {
                let p = o.t as i64 * self.d as i64;
                if self.stable_normalize(o.i, p + rr)? != *o {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(rr);
            }
        }
        Err(Error::ValidationFailure("no period found".into()))
    }
}
