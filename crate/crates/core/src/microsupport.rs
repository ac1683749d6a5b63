//! Micro-support, essential micro-support and the degree bounds they
//! control, for the split real form.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{cohomology_dims, induced_rank, ComplexObject, GradedMorphism};
use crate::kostant::minimal_coset_reps;
use crate::lmodule::{build, i_star, Construction, LModule, Perversity, StarComplex};
use crate::parabolics::{
    enumerate_parabolics, interval, max_strongly_orthogonal_sets, nilradical_roots, shifted_pairings,
    split_real_data, xi_restriction, LeviRealData, ParabolicIndex,
};
use crate::root_data::{Family, RootSystem, Weight};
use crate::{Caps, QMatrix, Rat};

/// Real-form data source. Only the split form is built in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealFormOracle {
    #[default]
    Split,
}

/// Root data of the centralizer `L_P(u)` and the dimensions derived from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerData {
    /// Positive roots of `L_P(u)`, as indices into the positive roots.
    pub roots: Vec<usize>,
    pub dim_d: usize,
    pub dim_n: usize,
    /// Set when no maximal strongly orthogonal set is compatible with the
    /// centralizer and the split fallback was used.
    pub conservative: bool,
}

impl RealFormOracle {
    pub fn levi_data(&self, rs: &RootSystem, p: &ParabolicIndex) -> LeviRealData {
        split_real_data(rs, p)
    }

    /// `(V|_{M_P})^* ≅ V|_{M_P}`: the Levi labels are fixed by `−w₀^{L_P}`
    /// and `μ + w₀^{L_P}μ` is divisible by two.
    pub fn duality(&self, rs: &RootSystem, mu: &Weight, p: &ParabolicIndex) -> bool {
        let w0 = rs.longest_element(p.mask);
        let image = w0.act(mu);
        p.nodes().iter().all(|&j| -image.0[j] == mu.0[j])
            && mu.add(&image).0.iter().all(|x| x.rem_euclid(2) == 0)
    }

    pub fn centralizer(&self, rs: &RootSystem, u: &Weight, p: &ParabolicIndex) -> CentralizerData {
        centralizer_split(rs, u, p)
    }
}

fn reflect(rs: &RootSystem, x: &Weight, k: usize) -> Weight {
    let c = rs.coroot_pairing_int(x, k);
    x.sub(&rs.positive_roots()[k].labels.scale(c))
}

fn sigma(rs: &RootSystem, s: &[usize], x: &Weight) -> Weight {
    s.iter().fold(x.clone(), |acc, &k| reflect(rs, &acc, k))
}

/// Simple roots of the subsystem spanned by `pos` (a positive system of a
/// closed subsystem) and the coefficient vectors of every element.
fn subsystem_coefficients(rs: &RootSystem, pos: &[usize]) -> (Vec<usize>, Vec<Vec<i64>>) {
    let labels = |k: usize| rs.positive_roots()[k].labels.clone();
    let set: BTreeSet<Weight> = pos.iter().map(|&k| labels(k)).collect();
    let simple: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&k| {
            !pos.iter().any(|&a| {
                let rest = labels(k).sub(&labels(a));
                a != k && set.contains(&rest)
            })
        })
        .collect();
    let basis = QMatrix::from_columns(
        rs.rank(),
        &simple
            .iter()
            .map(|&k| rs.positive_roots()[k].coeffs.iter().map(|&c| crate::rat(c)).collect())
            .collect::<Vec<_>>(),
    );
    let coeffs = pos
        .iter()
        .map(|&k| {
            let rhs = QMatrix::from_columns(
                rs.rank(),
                &[rs.positive_roots()[k].coeffs.iter().map(|&c| crate::rat(c)).collect()],
            );
            let x = basis.solve(&rhs).expect("root lies in its subsystem span");
            (0..simple.len())
                .map(|i| {
                    let v = x.get(i, 0);
                    debug_assert!(v.is_integer());
                    v.to_integer().try_into().expect("small coefficient")
                })
                .collect()
        })
        .collect();
    (simple, coeffs)
}

fn centralizer_split(rs: &RootSystem, u: &Weight, p: &ParabolicIndex) -> CentralizerData {
    let levi: Vec<usize> = p
        .levi_positive(rs)
        .into_iter()
        .filter(|&k| rs.positive_roots()[k].indivisible)
        .collect();
    let uq = u.to_q();
    let ru: Vec<usize> = levi
        .iter()
        .copied()
        .filter(|&k| rs.pair_root(&uq, k).is_zero())
        .collect();
    let ru_labels: BTreeSet<Weight> = ru
        .iter()
        .flat_map(|&k| {
            let l = rs.positive_roots()[k].labels.clone();
            [l.scale(-1), l]
        })
        .collect();
    let r_l = p.levi_rank();
    let nil = nilradical_roots(rs, p, &ParabolicIndex::full(rs)).unwrap_or_default();

    let mut best: Option<(usize, usize)> = None;
    for s in max_strongly_orthogonal_sets(rs, &levi) {
        let stable = ru.iter().all(|&k| {
            let img = sigma(rs, &s, &rs.positive_roots()[k].labels);
            ru_labels.contains(&img)
        });
        if !stable {
            continue;
        }
        let kind = |k: usize| {
            let l = &rs.positive_roots()[k].labels;
            let img = sigma(rs, &s, l);
            if &img == l {
                1
            } else if img == l.scale(-1) {
                -1
            } else {
                0
            }
        };
        let imag: Vec<usize> = levi.iter().copied().filter(|&k| kind(k) == -1).collect();
        let (simple, coeffs) = if imag.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            subsystem_coefficients(rs, &imag)
        };
        let real_ru = ru.iter().filter(|&&k| kind(k) == 1).count();
        let complex_ru = ru.iter().filter(|&&k| kind(k) == 0).count();
        let base = (r_l - s.len()) + real_ru + complex_ru;
        let mut best_here: Option<usize> = None;
        for bits in 0u64..(1 << simple.len()) {
            let eps = |c: &[i64]| {
                c.iter()
                    .enumerate()
                    .map(|(i, &x)| if bits >> i & 1 == 1 { x } else { 0 })
                    .sum::<i64>()
                    .rem_euclid(2)
                    == 1
            };
            let nc: Vec<bool> = coeffs.iter().map(|c| eps(c)).collect();
            let on_s = s
                .iter()
                .all(|k| imag.iter().position(|x| x == k).is_some_and(|i| nc[i]));
            let total = nc.iter().filter(|&&b| b).count();
            if !on_s || 2 * total != s.len() + imag.len() {
                continue;
            }
            let nc_ru = imag
                .iter()
                .zip(&nc)
                .filter(|(k, &b)| b && ru.contains(k))
                .count();
            let dim = base + 2 * nc_ru;
            if best_here.is_none_or(|b| dim > b) {
                best_here = Some(dim);
            }
        }
        let Some(dim) = best_here else {
            continue;
        };
        let dim_n = stable_blocks(rs, &s, &ru, &nil);
        if best.is_none_or(|(d, n)| (dim, dim_n) > (d, n)) {
            best = Some((dim, dim_n));
        }
    }
    match best {
        Some((dim_d, dim_n)) => CentralizerData {
            roots: ru,
            dim_d,
            dim_n,
            conservative: false,
        },
        None => CentralizerData {
            dim_d: ru.len() + r_l,
            roots: ru,
            dim_n: 0,
            conservative: true,
        },
    }
}

/// Total size of the `L_P(u)`-blocks of `𝔫_P` whose weight set is stable
/// under the involution `s_S`.
fn stable_blocks(rs: &RootSystem, s: &[usize], ru: &[usize], nil: &[usize]) -> usize {
    let labels: Vec<Weight> = nil.iter().map(|&k| rs.positive_roots()[k].labels.clone()).collect();
    let index: BTreeMap<Weight, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let mut comp: Vec<usize> = (0..labels.len()).collect();
    fn root(comp: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while comp[i] != i {
            comp[i] = comp[comp[i]];
            i = comp[i];
        }
        i
    }
    for (i, l) in labels.iter().enumerate() {
        for &k in ru {
            let b = &rs.positive_roots()[k].labels;
            for step in [l.add(b), l.sub(b)] {
                if let Some(&j) = index.get(&step) {
                    let (a, c) = (root(&mut comp, i), root(&mut comp, j));
                    comp[a] = c;
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, BTreeSet<Weight>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let r = root(&mut comp, i);
        blocks.entry(r).or_default().insert(l.clone());
    }
    blocks
        .values()
        .filter(|b| b.iter().all(|l| b.contains(&sigma(rs, s, l))))
        .map(BTreeSet::len)
        .sum()
}

fn rat_str(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MicroSupportElement {
    pub parabolic: String,
    pub weight: Weight,
    /// `ξ_V` in fundamental-weight coordinates.
    pub xi: Vec<String>,
    pub q_v: String,
    pub q_v_prime: String,
    pub self_dual: bool,
    /// Degrees in which `Type_V` is nonzero.
    pub type_degrees: Vec<i64>,
    pub type_interval: Option<(i64, i64)>,
    pub essential: bool,
    pub dim_d_p: usize,
    pub dim_d_pv: usize,
    pub c_tilde: Option<i64>,
    pub d_tilde: Option<i64>,
    pub conservative: bool,
}

/// `[c(ℳ), d(ℳ)]`, or a marker that every degree vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeRange {
    Vanishes,
    Bounded { c: i64, d: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MicroSupportReport {
    pub cartan_type: String,
    pub oracle: RealFormOracle,
    pub elements: Vec<MicroSupportElement>,
    pub range: DegreeRange,
    /// Diagnostics such as parity violations.
    pub flags: Vec<String>,
}

impl MicroSupportReport {
    pub fn essential(&self) -> impl Iterator<Item = &MicroSupportElement> {
        self.elements.iter().filter(|e| e.essential)
    }

    pub fn c(&self) -> Option<i64> {
        match self.range {
            DegreeRange::Bounded { c, .. } => Some(c),
            DegreeRange::Vanishes => None,
        }
    }
}

fn local_inclusion(
    sub_v: &(ComplexObject, GradedMorphism),
    sub_w: &(ComplexObject, GradedMorphism),
) -> GradedMorphism {
    let mut out = GradedMorphism::zero(0);
    for (iso, a) in &sub_v.1.blocks {
        if let Some(b) = sub_w.1.blocks.get(iso) {
            out.insert(iso.clone(), b.transpose().mul(a));
        }
    }
    out
}

fn local_complex(star: &StarComplex, q: &ParabolicIndex) -> (ComplexObject, GradedMorphism) {
    star.subcomplex(|r| r.is_le(q))
}

/// `Q_V` and `Q_V′` from the signs of `(ξ_V+ρ, α)`, `α ∈ Δ_P`.
pub fn q_bounds(rs: &RootSystem, mu: &Weight, p: &ParabolicIndex) -> (ParabolicIndex, ParabolicIndex) {
    let pairs = shifted_pairings(rs, mu, p);
    let neg: Vec<usize> = pairs.iter().filter(|(_, v)| v.is_negative()).map(|(j, _)| *j).collect();
    let nonpos: Vec<usize> = pairs.iter().filter(|(_, v)| !v.is_positive()).map(|(j, _)| *j).collect();
    (
        p.union(&ParabolicIndex::from_nodes(&neg)),
        p.union(&ParabolicIndex::from_nodes(&nonpos)),
    )
}

/// Scans every stratum and every isotype of its stalk complex.
pub fn micro_support(rs: &RootSystem, m: &LModule, oracle: &RealFormOracle, caps: &Caps) -> Result<MicroSupportReport> {
    let mut elements = Vec::new();
    let mut flags = Vec::new();
    for p in &m.strata {
        let star = i_star(rs, m, p, caps)?;
        let mut locals: BTreeMap<ParabolicIndex, (ComplexObject, GradedMorphism)> = BTreeMap::new();
        let mut local = |q: &ParabolicIndex| -> (ComplexObject, GradedMorphism) {
            locals.entry(*q).or_insert_with(|| local_complex(&star, q)).clone()
        };
        let levi = oracle.levi_data(rs, p);
        for mu in star.complex.module.weights() {
            let (qv, qv2) = q_bounds(rs, &mu, p);
            let self_dual = oracle.duality(rs, &mu, p);
            let nonzero = interval(&qv, &qv2).iter().any(|q| {
                let (c, _) = local(q);
                cohomology_dims(&c).keys().any(|iso| iso.0 == mu)
            });
            if !self_dual || !nonzero {
                continue;
            }
            let a = local(&qv);
            let b = local(&qv2);
            let incl = local_inclusion(&a, &b);
            let degrees: BTreeSet<i64> = a.0.module.degrees();
            let type_degrees: Vec<i64> = degrees
                .into_iter()
                .filter(|&n| induced_rank(&incl, &a.0, &b.0, &(mu.clone(), n)) > 0)
                .collect();
            let type_interval = type_degrees.first().map(|&lo| (lo, *type_degrees.last().unwrap()));
            let cent = oracle.centralizer(rs, &mu, p);
            let (mut c_tilde, mut d_tilde) = (None, None);
            if let Some((lo, hi)) = type_interval {
                let diff = levi.dim_d as i64 - cent.dim_d as i64;
                let sum = levi.dim_d as i64 + cent.dim_d as i64;
                if diff.rem_euclid(2) != 0 {
                    flags.push(format!(
                        "parity: {} {} has dim D_P − dim D_P(V) = {diff}",
                        p.label(rs),
                        mu
                    ));
                } else {
                    c_tilde = Some(diff / 2 + lo);
                    d_tilde = Some(sum / 2 + hi);
                }
            }
            if cent.conservative {
                flags.push(format!("conservative centralizer at {} {}", p.label(rs), mu));
            }
            let xi = xi_restriction(rs, &mu.to_q(), p);
            elements.push(MicroSupportElement {
                parabolic: p.label(rs),
                xi: xi.iter().map(rat_str).collect(),
                q_v: qv.label(rs),
                q_v_prime: qv2.label(rs),
                self_dual,
                essential: type_interval.is_some(),
                type_degrees,
                type_interval,
                dim_d_p: levi.dim_d,
                dim_d_pv: cent.dim_d,
                c_tilde,
                d_tilde,
                conservative: cent.conservative,
                weight: mu,
            });
        }
    }
    let cs: Vec<i64> = elements.iter().filter_map(|e| e.c_tilde).collect();
    let ds: Vec<i64> = elements.iter().filter_map(|e| e.d_tilde).collect();
    let range = match (cs.iter().min(), ds.iter().max()) {
        (Some(&c), Some(&d)) => DegreeRange::Bounded { c, d },
        _ => DegreeRange::Vanishes,
    };
    Ok(MicroSupportReport {
        cartan_type: rs.cartan_type().to_string(),
        oracle: *oracle,
        elements,
        range,
        flags,
    })
}

/// `(P, V, type interval)` of an essential element.
pub type EssentialKey = (String, Weight, (i64, i64));

pub fn essential_set(report: &MicroSupportReport) -> BTreeSet<EssentialKey> {
    report
        .essential()
        .map(|e| (e.parabolic.clone(), e.weight.clone(), e.type_interval.unwrap()))
        .collect()
}

/// The closed-form essential micro-support of `i_{G*}E`: the `V_{w·λ}` with
/// `(w(λ+ρ), α) < 0` on `𝔞_P` for every `α ∈ Δ_P` that pass the duality test,
/// each with type `[ℓ(w), ℓ(w)]`. The `𝔞_P`-restriction is computed by
/// Gram–Schmidt against the invariant form.
pub fn igstar_closed_form(
    rs: &RootSystem,
    lambda: &Weight,
    oracle: &RealFormOracle,
    caps: &Caps,
) -> Result<BTreeSet<EssentialKey>> {
    let g = ParabolicIndex::full(rs);
    let mut out = BTreeSet::new();
    for p in enumerate_parabolics(rs, caps)? {
        let basis = gram_schmidt(rs, &p.nodes().iter().map(|&j| rs.simple_root(j).to_q()).collect::<Vec<_>>());
        for (w, word) in minimal_coset_reps(rs, &p, &g, caps)? {
            let x = w.act(&lambda.add(&rs.rho())).to_q();
            let mut a = x.clone();
            for b in &basis {
                let c = rs.inner(&a, b) / rs.inner(b, b);
                for (ai, bi) in a.iter_mut().zip(b) {
                    *ai -= &c * bi;
                }
            }
            let strict = p
                .delta(rs)
                .iter()
                .all(|&j| rs.inner(&a, &rs.simple_root(j).to_q()).is_negative());
            let v = rs.dot_action(&w, lambda);
            if strict && oracle.duality(rs, &v, &p) {
                let l = word.len() as i64;
                out.insert((p.label(rs), v, (l, l)));
            }
        }
    }
    Ok(out)
}

/// Orthogonal basis of the span of `vectors` for the invariant form.
pub fn gram_schmidt(rs: &RootSystem, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for v in vectors {
        let mut a = v.clone();
        for b in &out {
            let c = rs.inner(&a, b) / rs.inner(b, b);
            for (ai, bi) in a.iter_mut().zip(b) {
                *ai -= &c * bi;
            }
        }
        if a.iter().any(|x| !x.is_zero()) {
            out.push(a);
        }
    }
    out
}

/// A failure of one of the two length inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub parabolic: String,
    pub lambda: Weight,
    pub word: Vec<usize>,
    pub weight: Weight,
    pub part: u8,
    pub length: usize,
    pub dim_n: usize,
    pub dim_n_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaScan {
    pub cartan_type: String,
    pub checked: usize,
    pub violations: Vec<LemmaViolation>,
}

/// Dominant weights with every coordinate in `0..=max`.
pub fn dominant_grid(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=max).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

/// Checks `ℓ(w) ≥ ½(dim 𝔫_P + dim 𝔫_P(V))` when `(ξ_V+ρ, α) ≤ 0` on `Δ_P`
/// and `ℓ(w) ≤ ½(dim 𝔫_P − dim 𝔫_P(V))` when `(ξ_V+ρ, α) ≥ 0`, for every
/// self-dual `V = w·λ`.
pub fn verify_basic_lemma(
    rs: &RootSystem,
    lambdas: &[Weight],
    oracle: &RealFormOracle,
    caps: &Caps,
) -> Result<LemmaScan> {
    let g = ParabolicIndex::full(rs);
    let mut checked = 0;
    let mut violations = Vec::new();
    for p in enumerate_parabolics(rs, caps)? {
        let dim_n = nilradical_roots(rs, &p, &g)?.len();
        let reps = minimal_coset_reps(rs, &p, &g, caps)?;
        for lambda in lambdas {
            rs.check_dominant(lambda, g.mask, "lemma grid")?;
            for (w, word) in &reps {
                let v = rs.dot_action(w, lambda);
                if !oracle.duality(rs, &v, &p) {
                    continue;
                }
                let pairs = shifted_pairings(rs, &v, &p);
                let nonpos = pairs.iter().all(|(_, x)| !x.is_positive());
                let nonneg = pairs.iter().all(|(_, x)| !x.is_negative());
                if !nonpos && !nonneg {
                    continue;
                }
                checked += 1;
                let dim_n_v = oracle.centralizer(rs, &v, &p).dim_n;
                let l = word.len();
                let mut push = |part: u8| {
                    violations.push(LemmaViolation {
                        parabolic: p.label(rs),
                        lambda: lambda.clone(),
                        word: word.clone(),
                        weight: v.clone(),
                        part,
                        length: l,
                        dim_n,
                        dim_n_v,
                    })
                };
                if nonpos && 2 * l < dim_n + dim_n_v {
                    push(1);
                }
                if nonneg && 2 * l + dim_n_v > dim_n {
                    push(2);
                }
            }
        }
    }
    Ok(LemmaScan {
        cartan_type: rs.cartan_type().to_string(),
        checked,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub cartan_type: String,
    pub lambda: Weight,
    pub construction: String,
    /// All factors are of type A, B, C, BC or G2.
    pub hypothesis: bool,
    pub self_dual: bool,
    pub essential: Vec<EssentialKey>,
    pub pure: bool,
}

/// Builds the construction and checks that its essential micro-support is
/// `E` alone, with type concentrated in degree 0.
pub fn micro_purity_check(
    rs: &RootSystem,
    lambda: &Weight,
    construction: Construction,
    oracle: &RealFormOracle,
    caps: &Caps,
) -> Result<PurityReport> {
    let hypothesis = rs.cartan_type().factors.iter().all(|(f, r)| {
        matches!(f, Family::A | Family::B | Family::C | Family::BC) || (*f == Family::G && *r == 2)
    });
    let g = ParabolicIndex::full(rs);
    let m = build(rs, lambda, construction, caps)?;
    let report = micro_support(rs, &m, oracle, caps)?;
    let essential: Vec<EssentialKey> = essential_set(&report).into_iter().collect();
    let expected = vec![(g.label(rs), lambda.clone(), (0, 0))];
    Ok(PurityReport {
        cartan_type: rs.cartan_type().to_string(),
        lambda: lambda.clone(),
        construction: construction.to_string(),
        hypothesis,
        self_dual: oracle.duality(rs, lambda, &g),
        pure: essential == expected,
        essential,
    })
}

/// Compares `H(i_P^* î_Q^! 𝓘𝓒)` for a maximal `P` with `τ^{≤p}H(𝔫_P;E)`
/// (`Q = G`) and `(τ^{>p}H(𝔫_P;E))[−1]` (`Q = P`), `p = ⌊½ dim 𝔫_P⌋`.
pub fn microtypes_check(
    rs: &RootSystem,
    lambda: &Weight,
    p: &ParabolicIndex,
    perversity: Perversity,
    caps: &Caps,
) -> Result<bool> {
    let g = ParabolicIndex::full(rs);
    if p.levi_rank() + 1 != rs.rank() {
        return Err(Error::Input(format!("{} is not a maximal parabolic", p.label(rs))));
    }
    let m = build(rs, lambda, Construction::Ic(perversity), caps)?;
    let star = i_star(rs, &m, p, caps)?;
    let dim_n = nilradical_roots(rs, p, &g)?.len() as i64;
    let cut = dim_n / 2;
    let mut low = BTreeMap::new();
    let mut high = BTreeMap::new();
    for c in crate::kostant::kostant_cohomology(rs, p, &g, lambda, caps)? {
        let d = c.degree as i64;
        if d <= cut {
            *low.entry((c.weight, d)).or_insert(0usize) += 1;
        } else {
            *high.entry((c.weight, d + 1)).or_insert(0usize) += 1;
        }
    }
    let at_g = cohomology_dims(&local_complex(&star, &g).0);
    let at_p = cohomology_dims(&local_complex(&star, p).0);
    Ok(at_g == low && at_p == high)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub cartan_type: String,
    pub lambda: Weight,
    pub construction: String,
    pub dim_x: usize,
    pub range: DegreeRange,
    /// `c(ℳ) ≥ ½ dim X`.
    pub below_half_vanishes: bool,
}

pub fn vanishing(
    rs: &RootSystem,
    lambda: &Weight,
    construction: Construction,
    oracle: &RealFormOracle,
    caps: &Caps,
) -> Result<VanishingReport> {
    let m = build(rs, lambda, construction, caps)?;
    let report = micro_support(rs, &m, oracle, caps)?;
    let dim_x = oracle.levi_data(rs, &ParabolicIndex::full(rs)).dim_d;
    let below_half_vanishes = match report.range {
        DegreeRange::Vanishes => true,
        DegreeRange::Bounded { c, .. } => 2 * c >= dim_x as i64,
    };
    Ok(VanishingReport {
        cartan_type: rs.cartan_type().to_string(),
        lambda: lambda.clone(),
        construction: construction.to_string(),
        dim_x,
        range: report.range,
        below_half_vanishes,
    })
}
