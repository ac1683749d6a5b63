//! ℒ-modules: families `(E_P, f_PQ)` over a set of standard parabolics,
//! the stalk and costalk functors, and the intersection, weighted and
//! ordinary-cohomology constructions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{
    cohomology, split_les, weight_kept, ComplexObject, GradedModule, GradedMorphism, Isotype,
    LesReport, WeightProfile,
};
use crate::kostant::{factorize, kostant_cohomology, KostantComponent};
use crate::parabolics::{codim, enumerate_parabolics, ParabolicIndex};
use crate::root_data::{CartanType, RootSystem, Weight, WeylElement};
use crate::{Caps, QMatrix};

/// Middle perversities as functions of the stratum codimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Perversity {
    /// `⌊(k−1)/2⌋`
    Upper,
    /// `⌊(k−2)/2⌋`
    Lower,
}

impl Perversity {
    pub fn value(self, k: i64) -> i64 {
        match self {
            Perversity::Upper => (k - 1).div_euclid(2),
            Perversity::Lower => (k - 2).div_euclid(2),
        }
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Perversity::Upper => "upper",
            Perversity::Lower => "lower",
        })
    }
}

impl FromStr for Perversity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "upper" | "upper-middle" => Ok(Perversity::Upper),
            "lower" | "lower-middle" => Ok(Perversity::Lower),
            other => Err(Error::Input(format!("unknown perversity `{other}`"))),
        }
    }
}

impl FromStr for WeightProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "upper" | "upper-middle" => Ok(WeightProfile::Upper),
            "lower" | "lower-middle" => Ok(WeightProfile::Lower),
            other => Err(Error::Input(format!("unknown weight profile `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "variant", rename_all = "lowercase")]
pub enum Construction {
    /// Ordinary cohomology: `E_G = E`, zero elsewhere.
    IgStar,
    Ic(Perversity),
    Wc(WeightProfile),
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::IgStar => f.write_str("igstar"),
            Construction::Ic(p) => write!(f, "ic/{p}"),
            Construction::Wc(p) => write!(f, "wc/{p}"),
        }
    }
}

/// One Kostant summand slot: the `index`-th slot of `source` twisted by `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origin {
    pub source: Isotype,
    pub index: usize,
    pub w: WeylElement,
}

/// `H(𝔫_P^Q; X)` as a graded Levi module of `P`, with each slot traced back
/// to the slot and Weyl element it comes from.
#[derive(Clone, Debug)]
pub struct KostantModule {
    pub module: GradedModule,
    pub origins: BTreeMap<Isotype, Vec<Origin>>,
    lookup: HashMap<(Isotype, usize, Weight), usize>,
}

impl KostantModule {
    /// Position of the slot coming from `(source, index)` with weight `target`.
    pub fn position(&self, source: &Isotype, index: usize, target: &Weight) -> Option<usize> {
        self.lookup
            .get(&(source.clone(), index, target.clone()))
            .copied()
    }
}

pub fn kostant_module(
    rs: &RootSystem,
    p: &ParabolicIndex,
    q: &ParabolicIndex,
    x: &GradedModule,
    caps: &Caps,
) -> Result<KostantModule> {
    let mut module = GradedModule::new();
    let mut origins: BTreeMap<Isotype, Vec<Origin>> = BTreeMap::new();
    let mut lookup = HashMap::new();
    let mut cache: HashMap<Weight, Vec<KostantComponent>> = HashMap::new();
    for (src, labels) in &x.entries {
        if !cache.contains_key(&src.0) {
            cache.insert(src.0.clone(), kostant_cohomology(rs, p, q, &src.0, caps)?);
        }
        for comp in &cache[&src.0] {
            let target = (comp.weight.clone(), src.1 + comp.degree as i64);
            for (idx, label) in labels.iter().enumerate() {
                let word: String = comp.word.iter().map(|i| format!("s{i}")).collect();
                let name = if word.is_empty() {
                    label.clone()
                } else {
                    format!("{word}*{label}")
                };
                let pos = module.push(target.clone(), name);
                origins.entry(target.clone()).or_default().push(Origin {
                    source: src.clone(),
                    index: idx,
                    w: comp.w.clone(),
                });
                lookup.insert((src.clone(), idx, comp.weight.clone()), pos);
            }
        }
    }
    Ok(KostantModule {
        module,
        origins,
        lookup,
    })
}

/// `H(𝔫_P^Q; g)` for a morphism `g: X → Y` of Levi-`Q` modules.
pub fn kostant_morphism(kx: &KostantModule, ky: &KostantModule, g: &GradedMorphism) -> GradedMorphism {
    let mut out = GradedMorphism::zero(g.shift);
    for (iso, origins) in &kx.origins {
        let target = (iso.0.clone(), iso.1 + g.shift);
        let rows = ky.module.mult(&target);
        let mut m = QMatrix::zeros(rows, origins.len());
        for (col, o) in origins.iter().enumerate() {
            let Some(block) = g.blocks.get(&o.source) else {
                continue;
            };
            let tsrc = g.target_of(&o.source);
            for r in 0..block.rows() {
                let v = block.get(r, o.index);
                if v.is_zero() {
                    continue;
                }
                let row = ky
                    .position(&tsrc, r, &iso.0)
                    .expect("morphism target has matching Kostant slot");
                m.set(row, col, v.clone());
            }
        }
        out.insert(iso.clone(), m);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LModule {
    pub cartan_type: CartanType,
    pub strata: BTreeSet<ParabolicIndex>,
    pub e: BTreeMap<ParabolicIndex, GradedModule>,
    /// `f_PQ: H(𝔫_P^Q; E_Q) → E_P` for `P < Q`, keyed by `(P, Q)`.
    pub f: BTreeMap<(ParabolicIndex, ParabolicIndex), GradedMorphism>,
}

/// A nonzero block of `Σ_Q f_PQ ∘ H(𝔫_P^Q; f_QR)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub lower: String,
    pub upper: String,
    pub weight: Weight,
    pub degree: i64,
    pub nonzero_entries: usize,
}

/// `i_P^*ℳ` with each slot tagged by the stratum it comes from.
#[derive(Clone, Debug)]
pub struct StarComplex {
    pub complex: ComplexObject,
    pub owners: BTreeMap<Isotype, Vec<ParabolicIndex>>,
}

impl StarComplex {
    /// Slots owned by strata satisfying `keep`.
    pub fn select(&self, keep: impl Fn(&ParabolicIndex) -> bool) -> BTreeMap<Isotype, Vec<usize>> {
        self.owners
            .iter()
            .map(|(iso, own)| {
                (
                    iso.clone(),
                    (0..own.len()).filter(|&k| keep(&own[k])).collect::<Vec<_>>(),
                )
            })
            .filter(|(_, v)| !v.is_empty())
            .collect()
    }

    /// The subcomplex on the selected slots together with its inclusion.
    pub fn subcomplex(&self, keep: impl Fn(&ParabolicIndex) -> bool) -> (ComplexObject, GradedMorphism) {
        let sel = self.select(keep);
        let mut module = GradedModule::new();
        let mut incl = GradedMorphism::zero(0);
        for (iso, idx) in &sel {
            let labels = &self.complex.module.entries[iso];
            for &k in idx {
                module.push(iso.clone(), labels[k].clone());
            }
            let n = self.complex.module.mult(iso);
            incl.insert(iso.clone(), QMatrix::identity(n).select_cols(idx));
        }
        let mut d = GradedMorphism::zero(1);
        for (iso, idx) in &sel {
            let next = (iso.0.clone(), iso.1 + 1);
            if let Some(nidx) = sel.get(&next) {
                let b = self.complex.d_block(iso).select_rows(nidx).select_cols(idx);
                d.insert(iso.clone(), b);
            }
        }
        (ComplexObject { module, d }, incl)
    }
}

impl LModule {
    pub fn zero(cartan_type: CartanType, strata: BTreeSet<ParabolicIndex>) -> Self {
        LModule {
            cartan_type,
            strata,
            e: BTreeMap::new(),
            f: BTreeMap::new(),
        }
    }

    pub fn e_at(&self, p: &ParabolicIndex) -> GradedModule {
        self.e.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.e.values().all(GradedModule::is_zero)
    }

    fn require(&self, rs: &RootSystem, p: &ParabolicIndex) -> Result<()> {
        if self.strata.contains(p) {
            Ok(())
        } else {
            Err(Error::NotInStrata(p.label(rs)))
        }
    }

    fn check_type(&self, rs: &RootSystem) -> Result<()> {
        if rs.cartan_type() != &self.cartan_type {
            return Err(Error::Shape(format!(
                "module of type {} used with root system {}",
                self.cartan_type,
                rs.cartan_type()
            )));
        }
        Ok(())
    }

    /// Restriction to the strata satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&ParabolicIndex) -> bool) -> LModule {
        LModule {
            cartan_type: self.cartan_type.clone(),
            strata: self.strata.iter().copied().filter(|p| keep(p)).collect(),
            e: self
                .e
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, m)| (*p, m.clone()))
                .collect(),
            f: self
                .f
                .iter()
                .filter(|((p, q), _)| keep(p) && keep(q))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

/// The total complex `⊕_{R ≥ P} H(𝔫_P^R; E_R)` without checking `D² = 0`.
fn total_complex(rs: &RootSystem, m: &LModule, p: &ParabolicIndex, caps: &Caps) -> Result<StarComplex> {
    m.check_type(rs)?;
    let above: Vec<ParabolicIndex> = m.strata.iter().copied().filter(|r| p.is_le(r)).collect();
    let mut kmods: BTreeMap<ParabolicIndex, KostantModule> = BTreeMap::new();
    for r in &above {
        kmods.insert(*r, kostant_module(rs, p, r, &m.e_at(r), caps)?);
    }
    let mut module = GradedModule::new();
    let mut owners: BTreeMap<Isotype, Vec<ParabolicIndex>> = BTreeMap::new();
    let mut offset: HashMap<(ParabolicIndex, Isotype), usize> = HashMap::new();
    let isos: BTreeSet<Isotype> = kmods
        .values()
        .flat_map(|k| k.module.entries.keys().cloned())
        .collect();
    for iso in &isos {
        for r in &above {
            let Some(labels) = kmods[r].module.entries.get(iso) else {
                continue;
            };
            offset.insert((*r, iso.clone()), module.mult(iso));
            for l in labels {
                module.push(iso.clone(), format!("{}:{l}", r.label(rs)));
                owners.entry(iso.clone()).or_default().push(*r);
            }
        }
    }
    let mut d = GradedMorphism::zero(1);
    let mut blocks: BTreeMap<Isotype, QMatrix> = BTreeMap::new();
    for r in &above {
        for s in above.iter().filter(|s| s.is_le(r) && *s != r) {
            let Some(fsr) = m.f.get(&(*s, *r)) else {
                continue;
            };
            let inner = kostant_module(rs, s, r, &m.e_at(r), caps)?;
            let outer = &kmods[s];
            for (iso, origins) in &kmods[r].origins {
                let next = (iso.0.clone(), iso.1 + 1);
                for (col, o) in origins.iter().enumerate() {
                    let (w1, y) = factorize(rs, &o.w, s);
                    let mid_w = rs.dot_action(&y, &o.source.0);
                    let mid = (mid_w.clone(), o.source.1 + rs.length(&y) as i64);
                    let c = inner
                        .position(&o.source, o.index, &mid_w)
                        .expect("factor lies in the relative coset representatives");
                    let Some(fb) = fsr.blocks.get(&mid) else {
                        continue;
                    };
                    let fsrc = (mid.0.clone(), mid.1 + 1);
                    debug_assert_eq!(rs.dot_action(&w1, &mid_w), iso.0);
                    for t in 0..fb.rows() {
                        let v = fb.get(t, c);
                        if v.is_zero() {
                            continue;
                        }
                        let row = outer
                            .position(&fsrc, t, &iso.0)
                            .expect("outer factor lies in the relative coset representatives");
                        let block = blocks.entry(iso.clone()).or_insert_with(|| {
                            QMatrix::zeros(module.mult(&next), module.mult(iso))
                        });
                        let gr = offset[&(*s, next.clone())] + row;
                        let gc = offset[&(*r, iso.clone())] + col;
                        let cur = block.get(gr, gc).clone();
                        block.set(gr, gc, cur + v);
                    }
                }
            }
        }
    }
    for (iso, b) in blocks {
        d.insert(iso, b);
    }
    Ok(StarComplex {
        complex: ComplexObject { module, d },
        owners,
    })
}

/// Checks block shapes and the gluing axiom; returns every nonzero residual.
pub fn validate(rs: &RootSystem, m: &LModule, caps: &Caps) -> Result<Vec<Residual>> {
    m.check_type(rs)?;
    for ((p, q), g) in &m.f {
        m.require(rs, p)?;
        m.require(rs, q)?;
        if !p.is_le(q) || p == q {
            return Err(Error::NotOrdered {
                lower: p.label(rs),
                upper: q.label(rs),
            });
        }
        if g.shift != 1 {
            return Err(Error::Shape(format!(
                "f[{}, {}] must have degree 1",
                p.label(rs),
                q.label(rs)
            )));
        }
        let k = kostant_module(rs, p, q, &m.e_at(q), caps)?;
        g.check_shapes(&k.module, &m.e_at(p))?;
    }
    let mut out = Vec::new();
    for p in &m.strata {
        let star = total_complex(rs, m, p, caps)?;
        let d2 = star.complex.d.compose(&star.complex.d);
        for (iso, b) in &d2.blocks {
            let tgt = d2.target_of(iso);
            let rows_own = &star.owners[&tgt];
            let cols_own = &star.owners[iso];
            let mut counts: BTreeMap<ParabolicIndex, usize> = BTreeMap::new();
            for (r, owner) in rows_own.iter().enumerate().take(b.rows()) {
                if owner != p {
                    continue;
                }
                for (c, source) in cols_own.iter().enumerate().take(b.cols()) {
                    if !b.get(r, c).is_zero() {
                        *counts.entry(*source).or_default() += 1;
                    }
                }
            }
            for (upper, n) in counts {
                out.push(Residual {
                    lower: p.label(rs),
                    upper: upper.label(rs),
                    weight: iso.0.clone(),
                    degree: iso.1,
                    nonzero_entries: n,
                });
            }
        }
    }
    Ok(out)
}

/// `i_P^*ℳ`.
pub fn i_star(rs: &RootSystem, m: &LModule, p: &ParabolicIndex, caps: &Caps) -> Result<StarComplex> {
    m.require(rs, p)?;
    let star = total_complex(rs, m, p, caps)?;
    if !star.complex.d.compose(&star.complex.d).is_zero() {
        return Err(Error::Shape(format!(
            "stalk complex at {} has D² ≠ 0; the module violates the gluing axiom",
            p.label(rs)
        )));
    }
    Ok(star)
}

/// `i_P^!ℳ = (E_P, 0)`.
pub fn i_shriek(rs: &RootSystem, m: &LModule, p: &ParabolicIndex) -> Result<ComplexObject> {
    m.require(rs, p)?;
    Ok(ComplexObject::normal(m.e_at(p)))
}

/// `î_Q^!ℳ`: the restriction to the closed set of strata below `Q`.
pub fn closed_restrict(rs: &RootSystem, m: &LModule, q: &ParabolicIndex) -> Result<LModule> {
    m.require(rs, q)?;
    Ok(m.restrict(|r| r.is_le(q)))
}

/// `j_*` from an up-closed subset of `target` into `target`; the new
/// strata carry zero.
pub fn open_pushforward(rs: &RootSystem, m: &LModule, target: &BTreeSet<ParabolicIndex>) -> Result<LModule> {
    for p in &m.strata {
        if !target.contains(p) {
            return Err(Error::NotOpen(format!("{} is not in the target", p.label(rs))));
        }
        for q in target {
            if p.is_le(q) && !m.strata.contains(q) {
                return Err(Error::NotOpen(format!(
                    "{} lies above {} but is missing",
                    q.label(rs),
                    p.label(rs)
                )));
            }
        }
    }
    let mut out = m.clone();
    out.strata = target.clone();
    Ok(out)
}

/// Long exact sequence of `0 → i_P^* î_Q^! ℳ → i_P^* ℳ → i_P^* ĵ_{Q*} ĵ_Q^* ℳ → 0`.
pub fn ses_of_pair(
    rs: &RootSystem,
    m: &LModule,
    p: &ParabolicIndex,
    q: &ParabolicIndex,
    caps: &Caps,
) -> Result<LesReport> {
    m.require(rs, q)?;
    if !p.is_le(q) {
        return Err(Error::NotOrdered {
            lower: p.label(rs),
            upper: q.label(rs),
        });
    }
    let star = i_star(rs, m, p, caps)?;
    split_les(&star.complex, |iso, k| star.owners[iso][k].is_le(q))
}

pub fn all_strata(rs: &RootSystem, caps: &Caps) -> Result<BTreeSet<ParabolicIndex>> {
    Ok(enumerate_parabolics(rs, caps)?.into_iter().collect())
}

pub fn build(rs: &RootSystem, lambda: &Weight, construction: Construction, caps: &Caps) -> Result<LModule> {
    build_on(rs, lambda, construction, &all_strata(rs, caps)?, caps)
}

pub fn build_igstar(rs: &RootSystem, lambda: &Weight, caps: &Caps) -> Result<LModule> {
    build(rs, lambda, Construction::IgStar, caps)
}

pub fn build_ic(rs: &RootSystem, lambda: &Weight, p: Perversity, caps: &Caps) -> Result<LModule> {
    build(rs, lambda, Construction::Ic(p), caps)
}

pub fn build_wc(rs: &RootSystem, lambda: &Weight, profile: WeightProfile, caps: &Caps) -> Result<LModule> {
    build(rs, lambda, Construction::Wc(profile), caps)
}

/// Builds the construction on a set of strata containing `G`, descending
/// from `G`: each new stratum absorbs the discarded part of the
/// cohomology of its link complex, shifted by one.
pub fn build_on(
    rs: &RootSystem,
    lambda: &Weight,
    construction: Construction,
    strata: &BTreeSet<ParabolicIndex>,
    caps: &Caps,
) -> Result<LModule> {
    rs.require_reduced("ℒ-module constructions")?;
    let g = ParabolicIndex::full(rs);
    if lambda.0.len() != rs.rank() {
        return Err(Error::Input(format!(
            "weight {lambda} has {} coordinates, rank is {}",
            lambda.0.len(),
            rs.rank()
        )));
    }
    rs.check_dominant(lambda, g.mask, "coefficient system")?;
    if !strata.contains(&g) {
        return Err(Error::NotInStrata(format!("{} (the open stratum)", g.label(rs))));
    }
    let mut m = LModule::zero(rs.cartan_type().clone(), BTreeSet::new());
    let mut top = GradedModule::new();
    top.push((lambda.clone(), 0), "v");
    m.strata.insert(g);
    m.e.insert(g, top);
    if construction == Construction::IgStar {
        m.strata = strata.clone();
        return Ok(m);
    }
    for p in strata.iter().rev().filter(|p| **p != g) {
        m.strata.insert(*p);
        let link = total_complex(rs, &m, p, caps)?;
        let h = cohomology(&link.complex);
        let k = codim(rs, p) as i64;
        let discard = |iso: &Isotype| match construction {
            Construction::Ic(perv) => iso.1 > perv.value(k),
            Construction::Wc(profile) => !weight_kept(rs, p, &iso.0, profile),
            Construction::IgStar => false,
        };
        let mut ep = GradedModule::new();
        let mut rows: BTreeMap<Isotype, Vec<usize>> = BTreeMap::new();
        for (iso, labels) in &h.module.entries {
            if !discard(iso) {
                continue;
            }
            let target = (iso.0.clone(), iso.1 + 1);
            for (c, l) in labels.iter().enumerate() {
                ep.push(target.clone(), l.clone());
                rows.entry(iso.clone()).or_default().push(c);
            }
        }
        for r in m.strata.iter().filter(|r| p.is_le(r) && *r != p) {
            let mut fpr = GradedMorphism::zero(1);
            for (iso, sel) in &rows {
                let cols: Vec<usize> = (0..link.owners[iso].len())
                    .filter(|&c| link.owners[iso][c] == *r)
                    .collect();
                if cols.is_empty() {
                    continue;
                }
                let pi = &h.pi.blocks[iso];
                fpr.insert(iso.clone(), pi.select_rows(sel).select_cols(&cols));
            }
            if !fpr.is_zero() {
                m.f.insert((*p, *r), fpr);
            }
        }
        m.e.insert(*p, ep);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::cohomology_dims;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type_str(s).unwrap()
    }

    #[test]
    fn perversity_values() {
        for p in [Perversity::Upper, Perversity::Lower] {
            assert_eq!(p.value(2), 0);
            for k in 1..10 {
                assert_eq!(p.value(k + 2), p.value(k) + 1);
            }
        }
        assert_eq!(Perversity::Upper.value(3), 1);
        assert_eq!(Perversity::Lower.value(3), 0);
    }

    #[test]
    fn igstar_stalks_are_kostant() {
        let caps = Caps::default();
        let c2 = rs("C2");
        let m = build_igstar(&c2, &c2.rho(), &caps).unwrap();
        assert!(validate(&c2, &m, &caps).unwrap().is_empty());
        let g = ParabolicIndex::full(&c2);
        for p in &m.strata {
            let star = i_star(&c2, &m, p, &caps).unwrap();
            assert!(star.complex.is_normal());
            let comps = kostant_cohomology(&c2, p, &g, &c2.rho(), &caps).unwrap();
            assert_eq!(star.complex.module.total_dim(), comps.len());
        }
    }

    #[test]
    fn a1_ic_places_boundary_class_in_degree_two() {
        let caps = Caps::default();
        let a1 = rs("A1");
        for perv in [Perversity::Upper, Perversity::Lower] {
            let m = build_ic(&a1, &Weight(vec![0]), perv, &caps).unwrap();
            let eb = m.e_at(&ParabolicIndex::borel());
            assert_eq!(eb.multiplicities(), BTreeMap::from([((Weight(vec![-2]), 2), 1)]));
            assert!(validate(&a1, &m, &caps).unwrap().is_empty());
            let stalk = i_star(&a1, &m, &ParabolicIndex::borel(), &caps).unwrap();
            assert_eq!(
                cohomology_dims(&stalk.complex),
                BTreeMap::from([((Weight(vec![0]), 0), 1)])
            );
        }
    }

    #[test]
    fn c2_ic_support_and_cosupport() {
        let caps = Caps::default();
        let c2 = rs("C2");
        let g = ParabolicIndex::full(&c2);
        for perv in [Perversity::Upper, Perversity::Lower] {
            let m = build_ic(&c2, &c2.rho(), perv, &caps).unwrap();
            assert!(validate(&c2, &m, &caps).unwrap().is_empty());
            for p in m.strata.iter().filter(|p| **p != g) {
                let pk = perv.value(codim(&c2, p) as i64);
                let star = i_star(&c2, &m, p, &caps).unwrap();
                assert!(cohomology_dims(&star.complex).keys().all(|iso| iso.1 <= pk));
                let shriek = i_shriek(&c2, &m, p).unwrap();
                assert!(cohomology_dims(&shriek).keys().all(|iso| iso.1 > pk + 1));
            }
        }
    }

    #[test]
    fn sign_flip_is_detected() {
        let caps = Caps::default();
        let c2 = rs("C2");
        let mut m = build_ic(&c2, &c2.rho(), Perversity::Upper, &caps).unwrap();
        let key = (ParabolicIndex::borel(), ParabolicIndex::from_nodes(&[0]));
        let f = m.f.get_mut(&key).expect("Borel gluing map");
        *f = f.neg();
        let res = validate(&c2, &m, &caps).unwrap();
        assert!(!res.is_empty());
        assert!(res.iter().all(|r| r.lower == "[]" && r.upper == "*"));
        assert!(i_star(&c2, &m, &ParabolicIndex::borel(), &caps).is_err());
    }

    #[test]
    fn restrictions() {
        let caps = Caps::default();
        let a2 = rs("A2");
        let m = build_igstar(&a2, &Weight(vec![1, 0]), &caps).unwrap();
        let g = ParabolicIndex::full(&a2);
        assert_eq!(closed_restrict(&a2, &m, &g).unwrap(), m);
        let q = ParabolicIndex::from_nodes(&[0]);
        assert!(closed_restrict(&a2, &m, &q).unwrap().is_zero());
        let open = m.restrict(|r| *r == g);
        let pushed = open_pushforward(&a2, &open, &m.strata).unwrap();
        assert_eq!(pushed, m);
        let mid: BTreeSet<_> = m.strata.iter().copied().filter(|r| r.levi_rank() >= 1).collect();
        let two_step = open_pushforward(&a2, &open_pushforward(&a2, &open, &mid).unwrap(), &m.strata).unwrap();
        assert_eq!(two_step, pushed);
        assert!(open_pushforward(&a2, &m.restrict(|r| *r == ParabolicIndex::borel()), &m.strata).is_err());
    }

    #[test]
    fn wc_validates() {
        let caps = Caps::default();
        for t in ["A1", "C2"] {
            let r = rs(t);
            for prof in [WeightProfile::Upper, WeightProfile::Lower] {
                let m = build_wc(&r, &r.rho(), prof, &caps).unwrap();
                assert!(validate(&r, &m, &caps).unwrap().is_empty(), "{t} {prof}");
            }
        }
    }

    #[test]
    fn ses_exact_on_ic() {
        let caps = Caps::default();
        let a1 = rs("A1");
        let m = build_ic(&a1, &Weight(vec![0]), Perversity::Upper, &caps).unwrap();
        let b = ParabolicIndex::borel();
        let g = ParabolicIndex::full(&a1);
        let les = ses_of_pair(&a1, &m, &b, &b, &caps).unwrap();
        assert!(les.exact);
        // the boundary class maps onto the degree-1 link class
        assert!(les.rows.iter().any(|r| r.rank_connecting == 1 && r.degree == 1));
        assert!(ses_of_pair(&a1, &m, &b, &g, &caps).unwrap().exact);
    }
}
