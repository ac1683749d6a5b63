//! Brute-force oracle for nilpotent cohomology.
//!
//! Irreducible modules are built by lowering from a highest-weight vector:
//! at each weight the candidate vectors `f_i w` are mapped by all raising
//! operators into the weights above, and a maximal independent set of their
//! images is kept. The kernel of that map is the radical of the contravariant
//! form, so the result is the irreducible quotient. Root vectors, structure
//! constants and Chevalley–Eilenberg differentials are then computed from
//! these explicit matrices, with no use of Kostant's theorem.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kostant::GradedMultiset;
use crate::parabolics::{check_le, nilradical_roots, ParabolicIndex};
use crate::root_data::{has, mask_nodes, NodeMask, RootSystem, Weight};
use crate::{rat, Caps, QMatrix, Rat};

/// A linear operator that shifts weights by a fixed amount, stored as one
/// block per source weight. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightOp {
    pub shift: Weight,
    pub blocks: BTreeMap<Weight, QMatrix>,
}

impl WeightOp {
    pub fn zero(shift: Weight) -> Self {
        WeightOp {
            shift,
            blocks: BTreeMap::new(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeightOp) -> WeightOp {
        let mut out = WeightOp::zero(self.shift.add(&other.shift));
        for (mu, b) in &other.blocks {
            if let Some(a) = self.blocks.get(&mu.add(&other.shift)) {
                let m = a.mul(b);
                if !m.is_zero() {
                    out.blocks.insert(mu.clone(), m);
                }
            }
        }
        out
    }

    pub fn lin_comb(&self, a: &Rat, other: &WeightOp, b: &Rat) -> WeightOp {
        assert_eq!(self.shift, other.shift);
        let mut out = WeightOp::zero(self.shift.clone());
        let keys: BTreeSet<&Weight> = self.blocks.keys().chain(other.blocks.keys()).collect();
        for k in keys {
            let m = match (self.blocks.get(k), other.blocks.get(k)) {
                (Some(x), Some(y)) => x.scale(a).add(&y.scale(b)),
                (Some(x), None) => x.scale(a),
                (None, Some(y)) => y.scale(b),
                (None, None) => unreachable!(),
            };
            if !m.is_zero() {
                out.blocks.insert(k.clone(), m);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> WeightOp {
        self.lin_comb(c, &WeightOp::zero(self.shift.clone()), &Rat::zero())
    }

    pub fn commutator(&self, other: &WeightOp) -> WeightOp {
        self.compose(other)
            .lin_comb(&Rat::one(), &other.compose(self), &-Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(QMatrix::is_zero)
    }

    /// First nonzero entry, as (source weight, row, column, value).
    fn first_entry(&self) -> Option<(Weight, usize, usize, Rat)> {
        for (mu, m) in &self.blocks {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_zero() {
                        return Some((mu.clone(), r, c, m.get(r, c).clone()));
                    }
                }
            }
        }
        None
    }

    fn entry(&self, mu: &Weight, r: usize, c: usize) -> Rat {
        self.blocks
            .get(mu)
            .map_or_else(Rat::zero, |m| m.get(r, c).clone())
    }
}

/// An explicit irreducible module of a Levi subalgebra.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    pub highest_weight: Weight,
    pub levi: NodeMask,
    weights: BTreeMap<Weight, usize>,
    raise: Vec<WeightOp>,
    lower: Vec<WeightOp>,
}

impl ExplicitModule {
    pub fn dim(&self) -> usize {
        self.weights.values().sum()
    }

    pub fn weights(&self) -> &BTreeMap<Weight, usize> {
        &self.weights
    }

    pub fn weight_dim(&self, mu: &Weight) -> usize {
        self.weights.get(mu).copied().unwrap_or(0)
    }

    pub fn e(&self, i: usize) -> &WeightOp {
        &self.raise[i]
    }

    pub fn f(&self, i: usize) -> &WeightOp {
        &self.lower[i]
    }

    /// `h_i` acting by the scalar `μ_i` on each weight space.
    pub fn h(&self, i: usize) -> WeightOp {
        let rank = self.highest_weight.0.len();
        let mut op = WeightOp::zero(Weight::zero(rank));
        for (mu, &d) in &self.weights {
            if mu.0[i] != 0 {
                op.blocks
                    .insert(mu.clone(), QMatrix::identity(d).scale(&rat(mu.0[i])));
            }
        }
        op
    }

    /// Root vectors `e_γ` and `e_{−γ}` for every positive root of the Levi,
    /// indexed like [`RootSystem::positive_roots`].
    pub fn root_ops(&self, rs: &RootSystem) -> Vec<Option<(WeightOp, WeightOp)>> {
        let mut ops: Vec<Option<(WeightOp, WeightOp)>> = vec![None; rs.positive_roots().len()];
        for k in rs.subsystem_positive(self.levi) {
            let root = &rs.positive_roots()[k];
            if root.height == 1 {
                let i = root.support.trailing_zeros() as usize;
                ops[k] = Some((self.raise[i].clone(), self.lower[i].clone()));
                continue;
            }
            let (i, b, p) = chevalley_split(rs, k);
            let (ea, fa) = ops[rs.find_root(&rs.simple_root(i)).unwrap().0].clone().unwrap();
            let (eb, fb) = ops[b].clone().unwrap();
            let inv = Rat::one() / rat(p as i64 + 1);
            let e = ea.commutator(&eb).scaled(&inv);
            let f = fb.commutator(&fa).scaled(&inv);
            ops[k] = Some((e, f));
        }
        ops
    }
}

/// For a non-simple positive root `γ`: the smallest simple index `i` with
/// `β = γ − α_i` a positive root, the index of `β`, and the largest `p` with
/// `β − pα_i` a root. The basis convention is `e_γ = [e_{α_i}, e_β]/(p+1)`.
pub(crate) fn chevalley_split(rs: &RootSystem, k: usize) -> (usize, usize, usize) {
    let gamma = &rs.positive_roots()[k].labels;
    for i in 0..rs.rank() {
        let a = rs.simple_root(i);
        let beta = gamma.sub(&a);
        if let Some((b, true)) = rs.find_root(&beta) {
            let mut p = 0;
            let mut cur = beta.sub(&a);
            while let Some((_, true)) = rs.find_root(&cur) {
                p += 1;
                cur = cur.sub(&a);
            }
            return (i, b, p);
        }
    }
    unreachable!("non-simple positive root has a simple predecessor")
}

/// Builds the irreducible module of highest weight `λ` for the Levi spanned
/// by `levi`.
pub fn irrep_construct(rs: &RootSystem, lambda: &Weight, levi: NodeMask, caps: &Caps) -> Result<ExplicitModule> {
    rs.require_reduced("irreducible module construction")?;
    rs.check_dominant(lambda, levi, "the module's Levi")?;
    let predicted = rs.weyl_dimension(lambda, levi);
    if predicted > BigInt::from(caps.irrep_dim) {
        return Err(Error::CapExceeded {
            what: "irreducible module",
            size: predicted.to_usize().unwrap_or(usize::MAX),
            cap: caps.irrep_dim,
        });
    }
    let rank = rs.rank();
    let nodes: Vec<usize> = mask_nodes(levi).collect();
    let alpha: Vec<Weight> = (0..rank).map(|i| rs.simple_root(i)).collect();
    let mut weights = BTreeMap::new();
    weights.insert(lambda.clone(), 1usize);
    let mut raise: Vec<WeightOp> = alpha.iter().map(|a| WeightOp::zero(a.clone())).collect();
    let mut lower: Vec<WeightOp> = alpha.iter().map(|a| WeightOp::zero(a.scale(-1))).collect();
    let mut layer = vec![lambda.clone()];
    while !layer.is_empty() {
        let mut next: BTreeSet<Weight> = BTreeSet::new();
        for mu in &layer {
            for &i in &nodes {
                next.insert(mu.sub(&alpha[i]));
            }
        }
        let mut produced = Vec::new();
        for mu in next {
            let mut cand: Vec<(usize, usize)> = Vec::new();
            for &i in &nodes {
                for b in 0..weights.get(&mu.add(&alpha[i])).copied().unwrap_or(0) {
                    cand.push((i, b));
                }
            }
            let targets: Vec<(usize, usize)> = nodes
                .iter()
                .filter_map(|&j| weights.get(&mu.add(&alpha[j])).map(|&d| (j, d)))
                .collect();
            let rows: usize = targets.iter().map(|t| t.1).sum();
            let mut r = QMatrix::zeros(rows, cand.len());
            for (c, &(i, b)) in cand.iter().enumerate() {
                let above = mu.add(&alpha[i]);
                let mut offset = 0;
                for &(j, dj) in &targets {
                    // e_j f_i w = f_i e_j w + δ_ij h_i w
                    let via = above.add(&alpha[j]);
                    if let (Some(ej), Some(fi)) = (raise[j].blocks.get(&above), lower[i].blocks.get(&via)) {
                        let col = fi.mul(&ej.select_cols(&[b]));
                        for t in 0..dj {
                            r.set(offset + t, c, col.get(t, 0).clone());
                        }
                    }
                    if i == j {
                        let h = rat(above.0[i]);
                        let cur = r.get(offset + b, c).clone();
                        r.set(offset + b, c, cur + h);
                    }
                    offset += dj;
                }
            }
            let pivots = r.rref().pivots;
            if pivots.is_empty() {
                continue;
            }
            let basis = r.select_cols(&pivots);
            let coords = basis.solve(&r).expect("candidates lie in the span of the basis");
            let dim = pivots.len();
            let mut offset = 0;
            for &(j, dj) in &targets {
                let rows: Vec<usize> = (offset..offset + dj).collect();
                let block = basis.select_rows(&rows);
                if !block.is_zero() {
                    raise[j].blocks.insert(mu.clone(), block);
                }
                offset += dj;
            }
            for &i in &nodes {
                let cols: Vec<usize> = cand
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.0 == i)
                    .map(|(k, _)| k)
                    .collect();
                if cols.is_empty() {
                    continue;
                }
                let block = coords.select_cols(&cols);
                if !block.is_zero() {
                    lower[i].blocks.insert(mu.add(&alpha[i]), block);
                }
            }
            weights.insert(mu.clone(), dim);
            produced.push(mu);
        }
        layer = produced;
    }
    let module = ExplicitModule {
        highest_weight: lambda.clone(),
        levi,
        weights,
        raise,
        lower,
    };
    assert_eq!(
        BigInt::from(module.dim()),
        predicted,
        "constructed module disagrees with the Weyl dimension formula"
    );
    Ok(module)
}

/// Multiplicities of the irreducibles of a smaller Levi in `module`, found
/// by counting vectors killed by the smaller Levi's raising operators.
pub fn levi_branching(module: &ExplicitModule, sub: NodeMask) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for (mu, &d) in &module.weights {
        if mask_nodes(sub).any(|j| mu.0[j] < 0) {
            continue;
        }
        let mut stack = QMatrix::zeros(0, d);
        for j in mask_nodes(sub) {
            if let Some(b) = module.raise[j].blocks.get(mu) {
                stack = stack.vstack(b);
            }
        }
        let m = d - stack.rank();
        if m > 0 {
            out.insert(mu.clone(), m);
        }
    }
    out
}

/// Structure constants `[e_a, e_b] = N_{a,b} e_{a+b}` between positive
/// root vectors of the Chevalley basis.
#[derive(Clone, Debug, Default)]
pub struct StructureConstants {
    n: HashMap<(usize, usize), i64>,
}

impl StructureConstants {
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.n.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn max_abs(&self) -> i64 {
        self.n.values().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// One faithful module per simple factor: the fundamental module of least
/// dimension.
fn faithful_modules(rs: &RootSystem, caps: &Caps) -> Result<Vec<ExplicitModule>> {
    let full = rs.full_mask();
    let mut out = Vec::new();
    for f in 0..rs.cartan_type().factors.len() {
        let k = (0..rs.rank())
            .filter(|&i| rs.node_factor(i) == f)
            .min_by_key(|&i| rs.weyl_dimension(&rs.fundamental_weight(i), full))
            .expect("factor has nodes");
        out.push(irrep_construct(rs, &rs.fundamental_weight(k), full, caps)?);
    }
    Ok(out)
}

fn factor_of_root(rs: &RootSystem, k: usize) -> usize {
    rs.node_factor(rs.positive_roots()[k].support.trailing_zeros() as usize)
}

/// Coefficient `c` with `x = c · y`, panicking if `x` is not a multiple of `y`.
fn ratio(x: &WeightOp, y: &WeightOp) -> Rat {
    let Some((mu, r, c, v)) = y.first_entry() else {
        panic!("root vector acts by zero on a faithful module");
    };
    let coef = x.entry(&mu, r, c) / v;
    let diff = x.lin_comb(&Rat::one(), y, &-coef.clone());
    assert!(diff.is_zero(), "bracket is not proportional to a root vector");
    coef
}

fn to_i64(q: &Rat) -> i64 {
    assert!(q.is_integer(), "non-integral structure constant {q}");
    q.to_integer().to_i64().expect("small structure constant")
}

pub fn structure_constants(rs: &RootSystem, caps: &Caps) -> Result<StructureConstants> {
    rs.require_reduced("Chevalley basis")?;
    let reps = faithful_modules(rs, caps)?;
    let ops: Vec<Vec<Option<(WeightOp, WeightOp)>>> = reps.iter().map(|m| m.root_ops(rs)).collect();
    let pos = rs.positive_roots();
    let mut n = HashMap::new();
    for a in 0..pos.len() {
        for b in 0..pos.len() {
            let f = factor_of_root(rs, a);
            if f != factor_of_root(rs, b) || a == b {
                continue;
            }
            if let Some((c, true)) = rs.find_root(&pos[a].labels.add(&pos[b].labels)) {
                let ea = &ops[f][a].as_ref().unwrap().0;
                let eb = &ops[f][b].as_ref().unwrap().0;
                let ec = &ops[f][c].as_ref().unwrap().0;
                n.insert((a, b), to_i64(&ratio(&ea.commutator(eb), ec)));
            }
        }
    }
    Ok(StructureConstants { n })
}

/// A Lie algebra given by integer structure constants on the basis
/// `e_γ (γ > 0), e_{−γ} (γ > 0), h_i`.
#[derive(Clone, Debug)]
pub struct LiePresentation {
    pub labels: Vec<String>,
    n_pos: usize,
    rank: usize,
    brackets: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
}

impl LiePresentation {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn pos(&self, k: usize) -> usize {
        k
    }

    pub fn neg(&self, k: usize) -> usize {
        self.n_pos + k
    }

    pub fn cartan(&self, i: usize) -> usize {
        2 * self.n_pos + i
    }

    pub fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        if x == y {
            return Vec::new();
        }
        if x < y {
            self.brackets.get(&(x, y)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(y, x))
                .map(|v| v.iter().map(|&(k, c)| (k, -c)).collect())
                .unwrap_or_default()
        }
    }

    fn bracket_vec(&self, v: &[i64], y: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (x, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, d) in self.bracket(x, y) {
                out[k] += c * d;
            }
        }
        out
    }

    fn unit(&self, x: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[x] = 1;
        v
    }

    /// Exhaustive Jacobi identity on basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let a = self.bracket_vec(&self.bracket_vec(&self.unit(x), y), z);
                    let b = self.bracket_vec(&self.bracket_vec(&self.unit(y), z), x);
                    let c = self.bracket_vec(&self.bracket_vec(&self.unit(z), x), y);
                    if (0..n).any(|k| a[k] + b[k] + c[k] != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Image of a basis element under the Chevalley involution
    /// `e_γ ↦ −e_{−γ}`, `e_{−γ} ↦ −e_γ`, `h ↦ −h`.
    pub fn omega(&self, x: usize) -> usize {
        if x < self.n_pos {
            x + self.n_pos
        } else if x < 2 * self.n_pos {
            x - self.n_pos
        } else {
            x
        }
    }

    pub fn check_omega_automorphism(&self) -> bool {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                let lhs: BTreeMap<usize, i64> = self
                    .bracket(self.omega(x), self.omega(y))
                    .into_iter()
                    .collect();
                // ω[x,y] = Σ c_k ω(x_k) = −Σ c_k x_{ω(k)}; the two signs from ω(x), ω(y) cancel
                let rhs: BTreeMap<usize, i64> = self
                    .bracket(x, y)
                    .into_iter()
                    .map(|(k, c)| (self.omega(k), -c))
                    .collect();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `dim 𝔩 − dim 𝔩^ω − dim 𝔞_P` for the Levi spanned by `levi`, computed
    /// from the involution's matrix.
    pub fn split_symmetric_dim(&self, rs: &RootSystem, levi: NodeMask) -> usize {
        let mut basis: Vec<usize> = Vec::new();
        for k in rs.subsystem_positive(levi) {
            basis.push(self.pos(k));
            basis.push(self.neg(k));
        }
        for i in 0..self.rank {
            basis.push(self.cartan(i));
        }
        let d = basis.len();
        let index: HashMap<usize, usize> = basis.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut m = QMatrix::zeros(d, d);
        for (c, &x) in basis.iter().enumerate() {
            let r = index[&self.omega(x)];
            m.set(r, c, -Rat::one());
            let cur = m.get(c, c).clone();
            m.set(c, c, cur - Rat::one());
        }
        let fixed = m.kernel().cols();
        let a_dim = self.rank - levi.count_ones() as usize;
        d - fixed - a_dim
    }
}

pub fn chevalley_basis(rs: &RootSystem, caps: &Caps) -> Result<LiePresentation> {
    rs.require_reduced("Chevalley basis")?;
    let reps = faithful_modules(rs, caps)?;
    let ops: Vec<Vec<Option<(WeightOp, WeightOp)>>> = reps.iter().map(|m| m.root_ops(rs)).collect();
    let pos = rs.positive_roots();
    let n_pos = pos.len();
    let rank = rs.rank();
    let mut labels = Vec::new();
    for r in pos {
        labels.push(format!("e{:?}", r.coeffs));
    }
    for r in pos {
        labels.push(format!("f{:?}", r.coeffs));
    }
    for i in 0..rank {
        labels.push(format!("h{i}"));
    }
    let factor_of = |x: usize| -> usize {
        if x < 2 * n_pos {
            factor_of_root(rs, x % n_pos)
        } else {
            rs.node_factor(x - 2 * n_pos)
        }
    };
    let weight_of = |x: usize| -> Weight {
        if x < n_pos {
            pos[x].labels.clone()
        } else if x < 2 * n_pos {
            pos[x - n_pos].labels.scale(-1)
        } else {
            Weight::zero(rank)
        }
    };
    let op_of = |f: usize, x: usize| -> WeightOp {
        if x < n_pos {
            ops[f][x].as_ref().unwrap().0.clone()
        } else if x < 2 * n_pos {
            ops[f][x - n_pos].as_ref().unwrap().1.clone()
        } else {
            reps[f].h(x - 2 * n_pos)
        }
    };
    let dim = 2 * n_pos + rank;
    let mut brackets = BTreeMap::new();
    for x in 0..dim {
        for y in x + 1..dim {
            let f = factor_of(x);
            if f != factor_of(y) {
                continue;
            }
            let br = op_of(f, x).commutator(&op_of(f, y));
            if br.is_zero() {
                continue;
            }
            let wt = weight_of(x).add(&weight_of(y));
            let terms: Vec<(usize, i64)> = if wt.is_zero() {
                let nodes: Vec<usize> = (0..rank).filter(|&i| rs.node_factor(i) == f).collect();
                let mut a = QMatrix::zeros(0, nodes.len());
                let mut rhs = QMatrix::zeros(0, 1);
                for mu in reps[f].weights().keys() {
                    let row = QMatrix::from_rows(&[nodes.iter().map(|&i| rat(mu.0[i])).collect()]);
                    a = a.vstack(&row);
                    let v = br.blocks.get(mu).map_or_else(Rat::zero, |m| m.get(0, 0).clone());
                    rhs = rhs.vstack(&QMatrix::from_rows(&[vec![v]]));
                }
                let c = a.solve(&rhs).expect("weight-zero bracket lies in the Cartan");
                let mut check = WeightOp::zero(Weight::zero(rank));
                for (t, &i) in nodes.iter().enumerate() {
                    check = check.lin_comb(&Rat::one(), &reps[f].h(i), c.get(t, 0));
                }
                assert!(check.lin_comb(&Rat::one(), &br, &-Rat::one()).is_zero());
                nodes
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| !c.get(*t, 0).is_zero())
                    .map(|(t, &i)| (2 * n_pos + i, to_i64(c.get(t, 0))))
                    .collect()
            } else {
                match rs.find_root(&wt) {
                    Some((k, sign)) => {
                        let target = if sign { k } else { n_pos + k };
                        vec![(target, to_i64(&ratio(&br, &op_of(f, target))))]
                    }
                    None => panic!("nonzero bracket of weight {wt} which is not a root"),
                }
            };
            brackets.insert((x, y), terms);
        }
    }
    Ok(LiePresentation {
        labels,
        n_pos,
        rank,
        brackets,
    })
}

/// Result of the Chevalley–Eilenberg computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeResult {
    pub betti: Vec<usize>,
    pub decomposition: GradedMultiset,
}

fn sort_sign(mut seq: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in 0..seq.len() - 1 - i {
            match seq[j].cmp(&seq[j + 1]) {
                std::cmp::Ordering::Greater => {
                    seq.swap(j, j + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some((seq, sign))
}

/// A cochain basis vector `e^I ⊗ v`, with `I` a bitmask over the nilradical
/// roots and `v` the `b`-th basis vector of the weight space `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cochain {
    set: u64,
    mu: Weight,
    b: usize,
}

/// Cohomology of `Λ(𝔫_P^Q)* ⊗ V` decomposed into irreducibles of the Levi
/// of `P`. The module must be a module for the Levi of `Q`.
pub fn ce_cohomology(
    rs: &RootSystem,
    p: &ParabolicIndex,
    q: &ParabolicIndex,
    module: &ExplicitModule,
    constants: &StructureConstants,
    caps: &Caps,
) -> Result<CeResult> {
    check_le(rs, p, q)?;
    if module.levi & q.mask != q.mask {
        return Err(Error::Shape(format!(
            "module is not a module for the Levi of {}",
            q.label(rs)
        )));
    }
    let nroots = nilradical_roots(rs, p, q)?;
    let m = nroots.len();
    let total = (1usize << m).saturating_mul(module.dim());
    if m >= 63 || total > caps.ce_dim {
        return Err(Error::CapExceeded {
            what: "Chevalley-Eilenberg cochain space",
            size: total,
            cap: caps.ce_dim,
        });
    }
    let pos = rs.positive_roots();
    let local: HashMap<usize, usize> = nroots.iter().enumerate().map(|(a, &k)| (k, a)).collect();
    let ops = module.root_ops(rs);
    let e_ops: Vec<&WeightOp> = nroots.iter().map(|&k| &ops[k].as_ref().unwrap().0).collect();

    let set_weight = |set: u64| -> Weight {
        (0..m)
            .filter(|&a| has(set, a))
            .fold(Weight::zero(rs.rank()), |acc, a| acc.add(&pos[nroots[a]].labels))
    };
    // basis grouped by (degree, total weight)
    let mut blocks: BTreeMap<(usize, Weight), Vec<Cochain>> = BTreeMap::new();
    for set in 0..(1u64 << m) {
        let sw = set_weight(set);
        let deg = set.count_ones() as usize;
        for (mu, &d) in module.weights() {
            for b in 0..d {
                blocks
                    .entry((deg, mu.sub(&sw)))
                    .or_default()
                    .push(Cochain { set, mu: mu.clone(), b });
            }
        }
    }
    let index: HashMap<(usize, Weight), HashMap<Cochain, usize>> = blocks
        .iter()
        .map(|(k, v)| (k.clone(), v.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()))
        .collect();
    let nodes_of = |set: u64| -> Vec<usize> { (0..m).filter(|&a| has(set, a)).collect() };

    // coboundary from degree k at weight τ
    let differential = |k: usize, tau: &Weight| -> Option<QMatrix> {
        let src = blocks.get(&(k, tau.clone()))?;
        let tgt_key = (k + 1, tau.clone());
        let tgt = blocks.get(&tgt_key)?;
        let tix = &index[&tgt_key];
        let mut d = QMatrix::zeros(tgt.len(), src.len());
        for (col, c) in src.iter().enumerate() {
            let i_nodes = nodes_of(c.set);
            // x_γ acting on the module
            for g in 0..m {
                if has(c.set, g) {
                    continue;
                }
                let jset = c.set | 1 << g;
                let posn = nodes_of(jset).iter().position(|&x| x == g).unwrap();
                let sign = if posn % 2 == 0 { Rat::one() } else { -Rat::one() };
                if let Some(blk) = e_ops[g].blocks.get(&c.mu) {
                    let nu = c.mu.add(&pos[nroots[g]].labels);
                    for r in 0..blk.rows() {
                        let v = blk.get(r, c.b);
                        if v.is_zero() {
                            continue;
                        }
                        let row = tix[&Cochain { set: jset, mu: nu.clone(), b: r }];
                        let cur = d.get(row, col).clone();
                        d.set(row, col, cur + &sign * v);
                    }
                }
            }
            // bracket terms
            for (pc, &cidx) in i_nodes.iter().enumerate() {
                let gamma = nroots[cidx];
                for a in 0..m {
                    for b in a + 1..m {
                        let (ga, gb) = (nroots[a], nroots[b]);
                        let nab = constants.get(ga, gb);
                        if nab == 0
                            || pos[ga].labels.add(&pos[gb].labels) != pos[gamma].labels
                        {
                            continue;
                        }
                        let rest = c.set & !(1 << cidx);
                        if has(rest, a) || has(rest, b) {
                            continue;
                        }
                        let jset = rest | 1 << a | 1 << b;
                        let jn = nodes_of(jset);
                        let ia = jn.iter().position(|&x| x == a).unwrap();
                        let ib = jn.iter().position(|&x| x == b).unwrap();
                        let exp = ia + ib + pc;
                        let coef = if exp % 2 == 0 { rat(nab) } else { rat(-nab) };
                        let row = tix[&Cochain { set: jset, mu: c.mu.clone(), b: c.b }];
                        let cur = d.get(row, col).clone();
                        d.set(row, col, cur + coef);
                    }
                }
            }
        }
        Some(d)
    };

    // raising operator e_j (j in the Levi of P) on cochains of degree k, weight τ
    let raise_on = |j: usize, k: usize, tau: &Weight| -> Option<QMatrix> {
        let src = blocks.get(&(k, tau.clone()))?;
        let tgt_key = (k, tau.add(&rs.simple_root(j)));
        let tgt = blocks.get(&tgt_key)?;
        let tix = &index[&tgt_key];
        let aj = rs.find_root(&rs.simple_root(j)).unwrap().0;
        let mut out = QMatrix::zeros(tgt.len(), src.len());
        for (col, c) in src.iter().enumerate() {
            if let Some(blk) = module.e(j).blocks.get(&c.mu) {
                let nu = c.mu.add(&rs.simple_root(j));
                for r in 0..blk.rows() {
                    let v = blk.get(r, c.b);
                    if v.is_zero() {
                        continue;
                    }
                    let row = tix[&Cochain { set: c.set, mu: nu.clone(), b: r }];
                    let cur = out.get(row, col).clone();
                    out.set(row, col, cur + v);
                }
            }
            let seq = nodes_of(c.set);
            for (t, &g) in seq.iter().enumerate() {
                let delta = pos[nroots[g]].labels.sub(&rs.simple_root(j));
                let Some((dk, true)) = rs.find_root(&delta) else { continue };
                let Some(&dl) = local.get(&dk) else { continue };
                let n = constants.get(aj, dk);
                if n == 0 {
                    continue;
                }
                let mut s = seq.clone();
                s[t] = dl;
                let Some((sorted, sign)) = sort_sign(s) else { continue };
                let set = sorted.iter().fold(0u64, |acc, &x| acc | 1 << x);
                let row = tix[&Cochain { set, mu: c.mu.clone(), b: c.b }];
                let cur = out.get(row, col).clone();
                out.set(row, col, cur - rat(n * sign));
            }
        }
        Some(out)
    };

    let mut dcache: HashMap<(usize, Weight), Option<QMatrix>> = HashMap::new();
    let mut get_d = |k: usize, tau: &Weight| -> Option<QMatrix> {
        dcache
            .entry((k, tau.clone()))
            .or_insert_with(|| differential(k, tau))
            .clone()
    };

    let mut betti = vec![0usize; m + 1];
    let mut decomposition = GradedMultiset::new();
    let keys: Vec<(usize, Weight)> = blocks.keys().cloned().collect();
    for (k, tau) in keys {
        let n = blocks[&(k, tau.clone())].len();
        let dk = get_d(k, &tau);
        if let (Some(d1), true) = (&dk, k > 0) {
            if let Some(d0) = get_d(k - 1, &tau) {
                assert!(d1.mul(&d0).is_zero(), "d∘d ≠ 0 in the CE complex");
            }
        }
        let z = match &dk {
            Some(d) => d.kernel(),
            None => QMatrix::identity(n),
        };
        let image = |k: usize, tau: &Weight, rows: usize, get_d: &mut dyn FnMut(usize, &Weight) -> Option<QMatrix>| {
            if k == 0 {
                return QMatrix::zeros(rows, 0);
            }
            get_d(k - 1, tau).unwrap_or_else(|| QMatrix::zeros(rows, 0))
        };
        let b = image(k, &tau, n, &mut get_d);
        let rank_b = b.rank();
        let h = z.cols() - rank_b;
        betti[k] += h;
        if h == 0 || !rs.is_dominant(&tau, p.mask) {
            continue;
        }
        let mut stack = QMatrix::zeros(0, z.cols());
        for j in p.nodes() {
            let Some(a) = raise_on(j, k, &tau) else { continue };
            let up = tau.add(&rs.simple_root(j));
            let rows = blocks[&(k, up.clone())].len();
            let bu = image(k, &up, rows, &mut get_d);
            let ann = bu.left_annihilator();
            stack = stack.vstack(&ann.mul(&a).mul(&z));
        }
        let mult = z.cols() - stack.rank() - rank_b;
        if mult > 0 {
            decomposition.insert((tau.clone(), k), mult);
        }
    }
    Ok(CeResult {
        betti,
        decomposition,
    })
}
