//! Standard parabolic subgroups as subsets of simple roots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{has, mask_nodes, NodeMask, RootSystem, Weight};
use crate::{rat, Caps, QMatrix, QVector, Rat};

/// A standard parabolic, identified with the simple roots of its Levi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParabolicIndex {
    pub mask: NodeMask,
}

impl ParabolicIndex {
    pub fn from_nodes(nodes: &[usize]) -> Self {
        ParabolicIndex {
            mask: nodes.iter().fold(0, |m, &i| m | 1 << i),
        }
    }

    pub fn borel() -> Self {
        ParabolicIndex { mask: 0 }
    }

    pub fn full(rs: &RootSystem) -> Self {
        ParabolicIndex { mask: rs.full_mask() }
    }

    pub fn nodes(&self) -> Vec<usize> {
        mask_nodes(self.mask).collect()
    }

    pub fn levi_rank(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains_node(&self, i: usize) -> bool {
        has(self.mask, i)
    }

    /// `P ≤ Q` in the parabolic poset.
    pub fn is_le(&self, other: &ParabolicIndex) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_full(&self, rs: &RootSystem) -> bool {
        self.mask == rs.full_mask()
    }

    pub fn union(&self, other: &ParabolicIndex) -> Self {
        ParabolicIndex {
            mask: self.mask | other.mask,
        }
    }

    /// Report label: sorted Levi nodes, or `*` for the whole group.
    pub fn label(&self, rs: &RootSystem) -> String {
        if self.is_full(rs) && rs.rank() > 0 {
            "*".into()
        } else {
            self.to_string()
        }
    }

    pub fn parse_for(s: &str, rs: &RootSystem) -> Result<Self> {
        let p: ParabolicIndex = s.parse()?;
        if p.mask == u64::MAX {
            return Ok(ParabolicIndex::full(rs));
        }
        if p.mask & !rs.full_mask() != 0 {
            return Err(Error::Input(format!(
                "parabolic `{s}` uses a node outside rank {}",
                rs.rank()
            )));
        }
        Ok(p)
    }

    /// Non-Levi simple roots `Δ_P`.
    pub fn delta(&self, rs: &RootSystem) -> Vec<usize> {
        (0..rs.rank()).filter(|&i| !self.contains_node(i)).collect()
    }

    /// Positive roots of the Levi.
    pub fn levi_positive(&self, rs: &RootSystem) -> Vec<usize> {
        rs.subsystem_positive(self.mask)
    }
}

impl Ord for ParabolicIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mask
            .count_ones()
            .cmp(&other.mask.count_ones())
            .then_with(|| self.nodes().cmp(&other.nodes()))
    }
}

impl PartialOrd for ParabolicIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParabolicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parses `[0,1]`, `0,1` or `*`; `*` yields an all-ones mask that
/// [`ParabolicIndex::parse_for`] clips to the rank.
impl FromStr for ParabolicIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "*" {
            return Ok(ParabolicIndex { mask: u64::MAX });
        }
        let inner = t.trim_start_matches('[').trim_end_matches(']').trim();
        if inner.is_empty() {
            return Ok(ParabolicIndex::borel());
        }
        let mut nodes = Vec::new();
        for part in inner.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad parabolic node `{}`", part.trim())))?;
            if i >= 64 {
                return Err(Error::Input(format!("parabolic node {i} out of range")));
            }
            nodes.push(i);
        }
        Ok(ParabolicIndex::from_nodes(&nodes))
    }
}

/// All standard parabolics ordered by Levi rank, then lexicographically.
pub fn enumerate_parabolics(rs: &RootSystem, caps: &Caps) -> Result<Vec<ParabolicIndex>> {
    if rs.rank() > caps.rank {
        return Err(Error::CapExceeded {
            what: "parabolic poset rank",
            size: rs.rank(),
            cap: caps.rank,
        });
    }
    let mut all: Vec<ParabolicIndex> = (0..=rs.full_mask())
        .map(|mask| ParabolicIndex { mask })
        .collect();
    all.sort();
    Ok(all)
}

/// The interval `[P, R]` of the poset, in poset order.
pub fn interval(p: &ParabolicIndex, r: &ParabolicIndex) -> Vec<ParabolicIndex> {
    if !p.is_le(r) {
        return Vec::new();
    }
    let free = r.mask & !p.mask;
    let mut out = Vec::new();
    let mut sub = free;
    loop {
        out.push(ParabolicIndex { mask: p.mask | sub });
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    out.sort();
    out
}

pub(crate) fn check_le(rs: &RootSystem, p: &ParabolicIndex, q: &ParabolicIndex) -> Result<()> {
    if p.is_le(q) {
        Ok(())
    } else {
        Err(Error::NotOrdered {
            lower: p.label(rs),
            upper: q.label(rs),
        })
    }
}

/// Indices of the positive roots spanning `𝔫_P^Q`.
pub fn nilradical_roots(rs: &RootSystem, p: &ParabolicIndex, q: &ParabolicIndex) -> Result<Vec<usize>> {
    check_le(rs, p, q)?;
    Ok(rs
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.indivisible && r.support & !q.mask == 0 && r.support & !p.mask != 0)
        .map(|(k, _)| k)
        .collect())
}

/// Weights of `𝔫_P^Q`.
pub fn nilradical_weights(rs: &RootSystem, p: &ParabolicIndex, q: &ParabolicIndex) -> Result<Vec<Weight>> {
    Ok(nilradical_roots(rs, p, q)?
        .into_iter()
        .map(|k| rs.positive_roots()[k].labels.clone())
        .collect())
}

/// Orthogonal projection of `x` away from the span of the Levi simple roots.
pub fn xi_restriction(rs: &RootSystem, x: &[Rat], p: &ParabolicIndex) -> QVector {
    let levi = p.nodes();
    if levi.is_empty() {
        return x.to_vec();
    }
    let d = rs.half_norms();
    let gram = QMatrix::from_rows(
        &levi
            .iter()
            .map(|&i| levi.iter().map(|&k| rat(rs.cartan(i, k)) * &d[k]).collect())
            .collect::<Vec<_>>(),
    );
    let rhs = QMatrix::from_columns(
        levi.len(),
        &[levi.iter().map(|&k| &x[k] * &d[k]).collect()],
    );
    let c = gram.solve(&rhs).expect("Levi Gram matrix is nonsingular");
    let mut out = x.to_vec();
    for (t, &i) in levi.iter().enumerate() {
        let ci = c.get(t, 0);
        if ci.is_zero() {
            continue;
        }
        for (k, o) in out.iter_mut().enumerate() {
            *o -= ci * rat(rs.cartan(i, k));
        }
    }
    out
}

/// `(proj_P(μ+ρ), α_j)` for each `j ∈ Δ_P`, in increasing node order.
pub fn shifted_pairings(rs: &RootSystem, mu: &Weight, p: &ParabolicIndex) -> Vec<(usize, Rat)> {
    let shifted = mu.add(&rs.rho()).to_q();
    let xi = xi_restriction(rs, &shifted, p);
    p.delta(rs)
        .into_iter()
        .map(|j| (j, rs.pair_simple(&xi, j)))
        .collect()
}

/// Whether two positive roots are strongly orthogonal.
pub fn strongly_orthogonal(rs: &RootSystem, a: usize, b: usize) -> bool {
    if a == b {
        return false;
    }
    let ra = &rs.positive_roots()[a].labels;
    let rb = &rs.positive_roots()[b].labels;
    rs.find_root(&ra.add(rb)).is_none() && rs.find_root(&ra.sub(rb)).is_none()
        && rs.inner_weights(ra, rb).is_zero()
}

/// All strongly orthogonal subsets of `candidates` of maximum size.
pub fn max_strongly_orthogonal_sets(rs: &RootSystem, candidates: &[usize]) -> Vec<Vec<usize>> {
    let n = candidates.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| strongly_orthogonal(rs, candidates[i], candidates[j]))
                .collect()
        })
        .collect();
    let mut best: Vec<Vec<usize>> = vec![Vec::new()];
    let mut stack = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        adj: &[Vec<bool>],
        stack: &mut Vec<usize>,
        best: &mut Vec<Vec<usize>>,
    ) {
        let best_len = best[0].len();
        if stack.len() > best_len {
            best.clear();
            best.push(stack.clone());
        } else if stack.len() == best_len && !stack.is_empty() {
            best.push(stack.clone());
        }
        for i in start..n {
            if stack.len() + (n - i) < best[0].len() {
                return;
            }
            if stack.iter().all(|&j| adj[i][j]) {
                stack.push(i);
                rec(i + 1, n, adj, stack, best);
                stack.pop();
            }
        }
    }
    rec(0, n, &adj, &mut stack, &mut best);
    best.into_iter()
        .map(|s| s.into_iter().map(|i| candidates[i]).collect())
        .collect()
}

/// Dimension data of the Levi of `P` for the split real form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviRealData {
    pub dim_d: usize,
    pub dim_a: usize,
    pub fundamental_compact_dim: usize,
    pub fundamental_split_dim: usize,
}

pub fn split_real_data(rs: &RootSystem, p: &ParabolicIndex) -> LeviRealData {
    let levi = p.levi_positive(rs);
    let indivisible: Vec<usize> = levi
        .iter()
        .copied()
        .filter(|&k| rs.positive_roots()[k].indivisible)
        .collect();
    let r_l = p.levi_rank();
    let compact = max_strongly_orthogonal_sets(rs, &indivisible)[0].len();
    LeviRealData {
        dim_d: indivisible.len() + r_l,
        dim_a: rs.rank() - r_l,
        fundamental_compact_dim: compact,
        fundamental_split_dim: r_l - compact,
    }
}

/// `dim X = dim D_G`.
pub fn dim_x(rs: &RootSystem) -> usize {
    split_real_data(rs, &ParabolicIndex::full(rs)).dim_d
}

/// `codim X_P = dim D_G − dim D_P`.
pub fn codim(rs: &RootSystem, p: &ParabolicIndex) -> usize {
    dim_x(rs) - split_real_data(rs, p).dim_d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type_str(s).unwrap()
    }

    #[test]
    fn poset_sizes_and_order() {
        let caps = Caps::default();
        assert_eq!(enumerate_parabolics(&rs("A1"), &caps).unwrap().len(), 2);
        assert_eq!(enumerate_parabolics(&rs("A3"), &caps).unwrap().len(), 8);
        let c2 = enumerate_parabolics(&rs("C2"), &caps).unwrap();
        let labels: Vec<String> = c2.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, vec!["[]", "[0]", "[1]", "[0,1]"]);
        assert!(enumerate_parabolics(&rs("A3"), &Caps { rank: 2, ..caps }).is_err());
    }

    #[test]
    fn labels_and_parsing() {
        let c2 = rs("C2");
        assert_eq!(ParabolicIndex::full(&c2).label(&c2), "*");
        assert_eq!(ParabolicIndex::parse_for("*", &c2).unwrap(), ParabolicIndex::full(&c2));
        assert_eq!(ParabolicIndex::parse_for("[1]", &c2).unwrap().nodes(), vec![1]);
        assert_eq!(ParabolicIndex::parse_for("", &c2).unwrap(), ParabolicIndex::borel());
        assert!(ParabolicIndex::parse_for("2", &c2).is_err());
    }

    #[test]
    fn nilradical_sizes() {
        let c2 = rs("C2");
        let b = ParabolicIndex::borel();
        let g = ParabolicIndex::full(&c2);
        let long = ParabolicIndex::from_nodes(&[1]);
        assert_eq!(nilradical_weights(&c2, &b, &g).unwrap().len(), 4);
        assert_eq!(nilradical_weights(&c2, &long, &g).unwrap().len(), 3);
        assert!(nilradical_weights(&c2, &long, &long).unwrap().is_empty());
        assert!(nilradical_weights(&c2, &g, &long).is_err());
    }

    #[test]
    fn projection_kills_levi_directions() {
        let c2 = rs("C2");
        let g = ParabolicIndex::full(&c2);
        assert!(xi_restriction(&c2, &c2.rho().to_q(), &g).iter().all(Zero::is_zero));
        let b = ParabolicIndex::borel();
        assert_eq!(xi_restriction(&c2, &c2.rho().to_q(), &b), c2.rho().to_q());
        let long = ParabolicIndex::from_nodes(&[1]);
        let xi = xi_restriction(&c2, &c2.rho().to_q(), &long);
        assert!(c2.pair_simple(&xi, 1).is_zero());
        assert_eq!(xi, vec![rat(2), rat(0)]);
    }

    #[test]
    fn split_dimensions() {
        let a1 = rs("A1");
        assert_eq!(split_real_data(&a1, &ParabolicIndex::full(&a1)).dim_d, 2);
        let a2 = rs("A2");
        let d = split_real_data(&a2, &ParabolicIndex::full(&a2));
        assert_eq!((d.dim_d, d.fundamental_compact_dim, d.fundamental_split_dim), (5, 1, 1));
        let c2 = rs("C2");
        let d = split_real_data(&c2, &ParabolicIndex::full(&c2));
        assert_eq!((d.dim_d, d.fundamental_compact_dim, d.fundamental_split_dim), (6, 2, 0));
        let d = split_real_data(&a1, &ParabolicIndex::full(&a1));
        assert_eq!((d.fundamental_compact_dim, d.fundamental_split_dim), (1, 0));
        assert_eq!(codim(&c2, &ParabolicIndex::borel()), 6);
        assert_eq!(codim(&c2, &ParabolicIndex::from_nodes(&[0])), 4);
    }

    #[test]
    fn interval_sizes() {
        let p = ParabolicIndex::from_nodes(&[0]);
        let r = ParabolicIndex::from_nodes(&[0, 1, 2]);
        let iv = interval(&p, &r);
        assert_eq!(iv.len(), 4);
        assert_eq!(iv[0], p);
        assert_eq!(*iv.last().unwrap(), r);
        assert!(interval(&r, &p).is_empty());
    }
}
