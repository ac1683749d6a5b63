//! Root systems, weights and Weyl groups in exact arithmetic.
//!
//! Weights are integral vectors of Dynkin labels `λ_i = ⟨λ, α_i∨⟩`. The
//! invariant form is normalized per simple factor so that the shortest
//! simple root has squared length 2; it is stored on the fundamental-weight
//! basis as `G = A⁻¹ D` with `A` the Cartan matrix and
//! `D = diag((α_j, α_j)/2)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{rat, QMatrix, QVector, Rat};

/// Bitmask of simple-root indices.
pub type NodeMask = u64;

#[inline]
pub(crate) fn has(mask: NodeMask, i: usize) -> bool {
    mask >> i & 1 == 1
}

pub(crate) fn mask_nodes(mask: NodeMask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| has(mask, i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

/// A product of irreducible Cartan types, written like `A1xC2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub factors: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.factors.iter().all(|f| f.0 != Family::BC)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (fam, n)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{fam}{n}")?;
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidType {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut factors = Vec::new();
        for part in input.trim().split(['x', 'X', '×']) {
            let part = part.trim();
            let (fam, digits) = if let Some(rest) = part.strip_prefix("BC") {
                (Family::BC, rest)
            } else {
                let mut chars = part.chars();
                let fam = match chars.next() {
                    Some('A') => Family::A,
                    Some('B') => Family::B,
                    Some('C') => Family::C,
                    Some('D') => Family::D,
                    Some('E') => Family::E,
                    Some('F') => Family::F,
                    Some('G') => Family::G,
                    _ => return Err(bad("expected a family letter A-G or BC")),
                };
                (fam, chars.as_str())
            };
            let n: usize = digits.parse().map_err(|_| bad("missing or malformed rank"))?;
            let ok = match fam {
                Family::A | Family::BC => n >= 1,
                Family::B | Family::C => n >= 2,
                Family::D => n >= 3,
                Family::E => (6..=8).contains(&n),
                Family::F => n == 4,
                Family::G => n == 2,
            };
            if !ok {
                return Err(bad(&format!("rank {n} is not valid for family {fam}")));
            }
            factors.push((fam, n));
        }
        if factors.iter().map(|f| f.1).sum::<usize>() > 64 {
            return Err(bad("total rank above 64"));
        }
        Ok(CartanType { factors })
    }
}

/// An integral weight in Dynkin-label coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_q(&self) -> QVector {
        self.0.iter().map(|&a| rat(a)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Weight(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Input(format!("bad weight coordinate `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// A root in simple-root coordinates together with its Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub labels: Weight,
    pub height: i64,
    pub support: NodeMask,
    /// False for the doubled roots of a non-reduced system.
    pub indivisible: bool,
    /// Half the squared length.
    pub half_norm: Rat,
}

/// Weyl group element stored as its integer action matrix on Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    mat: Vec<i64>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        WeylElement { n, mat }
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.mat.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let n = self.n;
        Weight(
            (0..n)
                .map(|k| (0..n).map(|l| self.mat[k * n + l] * w.0[l]).sum())
                .collect(),
        )
    }

    pub fn act_q(&self, x: &[Rat]) -> QVector {
        let n = self.n;
        (0..n)
            .map(|k| {
                (0..n).fold(Rat::zero(), |acc, l| acc + rat(self.mat[k * n + l]) * &x[l])
            })
            .collect()
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.n;
        let mut mat = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.mat[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    mat[i * n + j] += a * other.mat[k * n + j];
                }
            }
        }
        WeylElement { n, mat }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    half_norms: Vec<Rat>,
    simple_roots: Vec<QVector>,
    fundamental_weights: Vec<QVector>,
    gram: QMatrix,
    positive: Vec<Root>,
    lookup: HashMap<Weight, (usize, bool)>,
    node_factor: Vec<usize>,
    rho: Weight,
}

fn unit(dim: usize, i: usize, c: Rat) -> QVector {
    let mut v = vec![Rat::zero(); dim];
    v[i] = c;
    v
}

fn vsum(a: &QVector, b: &QVector) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn eps_diff(dim: usize, i: usize, j: usize) -> QVector {
    vsum(&unit(dim, i, rat(1)), &unit(dim, j, rat(-1)))
}

fn ambient_simple_roots(fam: Family, n: usize) -> Vec<QVector> {
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    match fam {
        Family::A => (0..n).map(|i| eps_diff(n + 1, i, i + 1)).collect(),
        Family::B | Family::BC | Family::C | Family::D => {
            let mut v: Vec<QVector> = (0..n - 1).map(|i| eps_diff(n, i, i + 1)).collect();
            v.push(match fam {
                Family::C => unit(n, n - 1, rat(2)),
                Family::D => vsum(&unit(n, n - 2, rat(1)), &unit(n, n - 1, rat(1))),
                _ => unit(n, n - 1, rat(1)),
            });
            v
        }
        Family::E => {
            let mut a1 = vec![-half.clone(); 8];
            a1[0] = half.clone();
            a1[7] = half.clone();
            let mut v = vec![a1, vsum(&unit(8, 0, rat(1)), &unit(8, 1, rat(1)))];
            for i in 0..6 {
                v.push(eps_diff(8, i + 1, i));
            }
            v.truncate(n);
            v
        }
        Family::F => vec![
            eps_diff(4, 1, 2),
            eps_diff(4, 2, 3),
            unit(4, 3, rat(1)),
            vec![half.clone(), -half.clone(), -half.clone(), -half],
        ],
        Family::G => vec![vec![rat(1), rat(-1), rat(0)], vec![rat(-2), rat(1), rat(1)]],
    }
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let rank = cartan_type.rank();
        let ambient_dim: usize = cartan_type
            .factors
            .iter()
            .map(|&(fam, n)| ambient_simple_roots(fam, n)[0].len())
            .sum();
        let mut simple_roots = Vec::with_capacity(rank);
        let mut half_norms = Vec::with_capacity(rank);
        let mut node_factor = Vec::with_capacity(rank);
        let mut offset = 0;
        for (fi, &(fam, n)) in cartan_type.factors.iter().enumerate() {
            let local = ambient_simple_roots(fam, n);
            let d = local[0].len();
            let norms: Vec<Rat> = local.iter().map(|v| dot(v, v)).collect();
            let shortest = norms.iter().min().cloned().expect("nonempty factor");
            for (v, nrm) in local.iter().zip(&norms) {
                let mut full = vec![Rat::zero(); ambient_dim];
                full[offset..offset + d].clone_from_slice(v);
                simple_roots.push(full);
                half_norms.push(nrm / &shortest);
                node_factor.push(fi);
            }
            offset += d;
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let c = rat(2) * dot(&simple_roots[i], &simple_roots[j])
                    / dot(&simple_roots[j], &simple_roots[j]);
                assert!(c.is_integer(), "non-integral Cartan entry");
                cartan[i][j] = c.to_integer().to_i64().expect("small Cartan entry");
            }
        }
        let a = QMatrix::from_rows(
            &cartan
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<_>>(),
        );
        let a_inv = a.inverse().ok_or_else(|| Error::InvalidType {
            input: cartan_type.to_string(),
            reason: "singular Cartan matrix".into(),
        })?;
        let mut dmat = QMatrix::zeros(rank, rank);
        for (j, d) in half_norms.iter().enumerate() {
            dmat.set(j, j, d.clone());
        }
        let gram = a_inv.mul(&dmat);
        let fundamental_weights = (0..rank)
            .map(|i| {
                (0..ambient_dim)
                    .map(|c| {
                        (0..rank).fold(Rat::zero(), |acc, j| {
                            acc + a_inv.get(i, j) * &simple_roots[j][c]
                        })
                    })
                    .collect()
            })
            .collect();

        let mut rs = RootSystem {
            cartan_type,
            rank,
            cartan,
            half_norms,
            simple_roots,
            fundamental_weights,
            gram,
            positive: Vec::new(),
            lookup: HashMap::new(),
            node_factor,
            rho: Weight::zero(rank),
        };
        rs.generate_roots();
        Ok(rs)
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        RootSystem::new(s.parse()?)
    }

    fn make_root(&self, coeffs: Vec<i64>, indivisible: bool) -> Root {
        let labels = Weight(
            (0..self.rank)
                .map(|k| (0..self.rank).map(|i| coeffs[i] * self.cartan[i][k]).sum())
                .collect(),
        );
        let half_norm = (0..self.rank).fold(Rat::zero(), |acc, i| {
            acc + rat(coeffs[i] * labels.0[i]) * &self.half_norms[i]
        }) / rat(2);
        let support = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |m, (i, _)| m | 1 << i);
        Root {
            height: coeffs.iter().sum(),
            coeffs,
            labels,
            support,
            indivisible,
            half_norm,
        }
    }

    fn generate_roots(&mut self) {
        let n = self.rank;
        let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                c
            })
            .collect();
        let mut all = Vec::new();
        while !layer.is_empty() {
            for c in &layer {
                known.insert(c.clone());
            }
            let mut next = BTreeSet::new();
            for beta in &layer {
                for i in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| beta[j] * self.cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            all.append(&mut layer);
            layer = next.into_iter().collect();
        }
        let mut roots: Vec<Root> = all.into_iter().map(|c| self.make_root(c, true)).collect();
        if !self.cartan_type.is_reduced() {
            let mut doubled = Vec::new();
            for r in &roots {
                let fam = self.cartan_type.factors[self.node_factor[r.support.trailing_zeros() as usize]].0;
                let shortest = r.half_norm.is_one();
                if fam == Family::BC && shortest {
                    doubled.push(self.make_root(r.coeffs.iter().map(|c| 2 * c).collect(), false));
                }
            }
            roots.extend(doubled);
        }
        roots.sort_by(|a, b| {
            (a.height, b.coeffs.clone()).cmp(&(b.height, a.coeffs.clone()))
        });
        let mut lookup = HashMap::new();
        for (k, r) in roots.iter().enumerate() {
            lookup.insert(r.labels.clone(), (k, true));
            lookup.insert(r.labels.scale(-1), (k, false));
        }
        let mut twice_rho = vec![0i64; n];
        for r in &roots {
            for (t, l) in twice_rho.iter_mut().zip(&r.labels.0) {
                *t += l;
            }
        }
        self.rho = Weight(twice_rho.iter().map(|t| t / 2).collect());
        self.positive = roots;
        self.lookup = lookup;
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_reduced(&self) -> bool {
        self.cartan_type.is_reduced()
    }

    pub fn require_reduced(&self, what: &str) -> Result<()> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(Error::NonReduced(format!("{what} on {}", self.cartan_type)))
        }
    }

    /// `cartan(i, j) = ⟨α_i, α_j∨⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn half_norms(&self) -> &[Rat] {
        &self.half_norms
    }

    pub fn simple_roots_ambient(&self) -> &[QVector] {
        &self.simple_roots
    }

    pub fn fundamental_weights_ambient(&self) -> &[QVector] {
        &self.fundamental_weights
    }

    /// Gram matrix of the invariant form on the fundamental-weight basis.
    pub fn inner_product_matrix(&self) -> &QMatrix {
        &self.gram
    }

    pub fn node_factor(&self, i: usize) -> usize {
        self.node_factor[i]
    }

    pub fn full_mask(&self) -> NodeMask {
        if self.rank == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank) - 1
        }
    }

    /// Positive roots, ordered by height and then by decreasing
    /// lexicographic coefficient vector.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn indivisible_positive(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.positive.iter().enumerate().filter(|(_, r)| r.indivisible)
    }

    /// Index and sign of the root with the given labels.
    pub fn find_root(&self, labels: &Weight) -> Option<(usize, bool)> {
        self.lookup.get(labels).copied()
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn rho(&self) -> Weight {
        self.rho.clone()
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        w.0[i] = 1;
        w
    }

    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.mul_vec(y);
        dot(x, &gy)
    }

    pub fn inner_weights(&self, x: &Weight, y: &Weight) -> Rat {
        self.inner(&x.to_q(), &y.to_q())
    }

    /// `(x, γ)` for a rational weight `x` and positive root index `k`.
    pub fn pair_root(&self, x: &[Rat], k: usize) -> Rat {
        let r = &self.positive[k];
        (0..self.rank).fold(Rat::zero(), |acc, i| {
            if r.coeffs[i] == 0 {
                acc
            } else {
                acc + rat(r.coeffs[i]) * &x[i] * &self.half_norms[i]
            }
        })
    }

    /// `⟨x, γ∨⟩` for a rational weight `x` and positive root index `k`.
    pub fn coroot_pairing(&self, x: &[Rat], k: usize) -> Rat {
        self.pair_root(x, k) / &self.positive[k].half_norm
    }

    pub fn coroot_pairing_int(&self, x: &Weight, k: usize) -> i64 {
        let q = self.coroot_pairing(&x.to_q(), k);
        debug_assert!(q.is_integer());
        q.to_integer().to_i64().expect("small pairing")
    }

    /// `(x, α_j)` for the simple root `α_j`.
    pub fn pair_simple(&self, x: &[Rat], j: usize) -> Rat {
        &x[j] * &self.half_norms[j]
    }

    pub fn is_dominant(&self, w: &Weight, mask: NodeMask) -> bool {
        mask_nodes(mask).take_while(|&i| i < self.rank).all(|i| w.0[i] >= 0)
    }

    pub fn check_dominant(&self, w: &Weight, mask: NodeMask, context: &str) -> Result<()> {
        if w.0.len() != self.rank {
            return Err(Error::Shape(format!(
                "weight {w} has {} coordinates, rank is {}",
                w.0.len(),
                self.rank
            )));
        }
        if self.is_dominant(w, mask) {
            Ok(())
        } else {
            Err(Error::NotDominant {
                weight: w.to_string(),
                context: context.to_string(),
            })
        }
    }

    /// Positive roots supported on `mask`.
    pub fn subsystem_positive(&self, mask: NodeMask) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&k| self.positive[k].support & !mask == 0)
            .collect()
    }

    /// Weyl dimension formula for the irreducible module of highest weight
    /// `λ` of the Levi subalgebra spanned by `mask`.
    pub fn weyl_dimension(&self, lambda: &Weight, mask: NodeMask) -> BigInt {
        let shifted = lambda.add(&self.rho).to_q();
        let rho = self.rho.to_q();
        let mut num = Rat::one();
        for k in self.subsystem_positive(mask) {
            if !self.positive[k].indivisible {
                continue;
            }
            num = num * self.pair_root(&shifted, k) / self.pair_root(&rho, k);
        }
        assert!(num.is_integer(), "Weyl dimension must be integral");
        num.to_integer()
    }

    // ---- Weyl group -------------------------------------------------------

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let n = self.rank;
        let mut w = WeylElement::identity(n);
        for k in 0..n {
            w.mat[k * n + i] -= self.cartan[i][k];
        }
        w
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(WeylElement::identity(self.rank), |acc, &i| acc.compose(&self.simple_reflection(i)))
    }

    /// Whether `w` sends the positive root with index `k` to a negative root.
    pub fn sends_negative(&self, w: &WeylElement, k: usize) -> bool {
        let image = w.act(&self.positive[k].labels);
        !self.lookup.get(&image).expect("Weyl group permutes roots").1
    }

    pub fn length(&self, w: &WeylElement) -> usize {
        self.indivisible_positive()
            .filter(|(k, _)| self.sends_negative(w, *k))
            .count()
    }

    /// Whether `i` is a right descent: `ℓ(w s_i) < ℓ(w)`.
    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        !self.lookup[&w.act(&self.simple_root(i))].1
    }

    /// Whether `i` is a left descent: `ℓ(s_i w) < ℓ(w)`, tested through
    /// `⟨wρ, α_i∨⟩ < 0`.
    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.act(&self.rho).0[i] < 0
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while !cur.is_identity() {
            let i = (0..self.rank)
                .find(|&i| self.is_left_descent(&cur, i))
                .expect("non-identity element has a left descent");
            word.push(i);
            cur = self.simple_reflection(i).compose(&cur);
        }
        word
    }

    fn inverse_by_descents(&self, w: &WeylElement) -> WeylElement {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(i) = (0..self.rank).find(|&i| self.is_right_descent(&cur, i)) {
            word.push(i);
            cur = cur.compose(&self.simple_reflection(i));
        }
        self.from_word(&word)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        self.inverse_by_descents(w)
    }

    /// Elements of the parabolic subgroup `W_mask`, ordered by length and
    /// then by lexicographically minimal reduced word.
    pub fn weyl_enumerate_subgroup(
        &self,
        mask: NodeMask,
        cap: usize,
    ) -> Result<Vec<(WeylElement, Vec<usize>)>> {
        self.bfs_right(mask, cap, |_, _| true)
    }

    /// Breadth-first search by right multiplication inside `W_mask`,
    /// restricted to a prefix-closed set described by `keep`.
    pub(crate) fn bfs_right(
        &self,
        mask: NodeMask,
        cap: usize,
        keep: impl Fn(&RootSystem, &WeylElement) -> bool,
    ) -> Result<Vec<(WeylElement, Vec<usize>)>> {
        let gens: Vec<usize> = mask_nodes(mask).take_while(|&i| i < self.rank).collect();
        let mut out = vec![(WeylElement::identity(self.rank), Vec::new())];
        let mut layer = out.clone();
        while !layer.is_empty() {
            let mut next: HashMap<WeylElement, Vec<usize>> = HashMap::new();
            for (w, word) in &layer {
                for &i in &gens {
                    if self.is_right_descent(w, i) {
                        continue;
                    }
                    let v = w.compose(&self.simple_reflection(i));
                    if !keep(self, &v) {
                        continue;
                    }
                    let mut cand = word.clone();
                    cand.push(i);
                    next.entry(v)
                        .and_modify(|cur| {
                            if cand < *cur {
                                *cur = cand.clone();
                            }
                        })
                        .or_insert(cand);
                }
            }
            let mut level: Vec<(WeylElement, Vec<usize>)> = next.into_iter().collect();
            level.sort_by(|a, b| a.1.cmp(&b.1));
            if out.len() + level.len() > cap {
                return Err(Error::CapExceeded {
                    what: "Weyl group enumeration",
                    size: out.len() + level.len(),
                    cap,
                });
            }
            out.extend(level.iter().cloned());
            layer = level;
        }
        Ok(out)
    }

    pub fn weyl_enumerate(&self, cap: usize) -> Result<Vec<WeylElement>> {
        Ok(self
            .weyl_enumerate_subgroup(self.full_mask(), cap)?
            .into_iter()
            .map(|p| p.0)
            .collect())
    }

    /// Longest element of the parabolic subgroup `W_mask`.
    pub fn longest_element(&self, mask: NodeMask) -> WeylElement {
        let mut w = WeylElement::identity(self.rank);
        while let Some(i) = mask_nodes(mask)
            .take_while(|&i| i < self.rank)
            .find(|&i| !self.is_right_descent(&w, i))
        {
            w = w.compose(&self.simple_reflection(i));
        }
        w
    }

    /// The dot action `w·λ = w(λ+ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        w.act(&lambda.add(&self.rho)).sub(&self.rho)
    }

    /// Copy of this system with the invariant form on factor `factor`
    /// multiplied by the positive rational `s`.
    pub fn with_factor_scaled(&self, factor: usize, s: &Rat) -> RootSystem {
        assert!(s.is_positive(), "scaling must be positive");
        let mut out = self.clone();
        let mut dmat = QMatrix::zeros(self.rank, self.rank);
        for j in 0..self.rank {
            if self.node_factor[j] == factor {
                out.half_norms[j] = &out.half_norms[j] * s;
            }
            dmat.set(j, j, out.half_norms[j].clone());
        }
        for r in out.positive.iter_mut() {
            let f = r.support.trailing_zeros() as usize;
            if self.node_factor[f] == factor {
                r.half_norm = &r.half_norm * s;
            }
        }
        let a = QMatrix::from_rows(
            &self
                .cartan
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<_>>(),
        );
        out.gram = a.inverse().expect("Cartan matrix is invertible").mul(&dmat);
        out
    }
}
