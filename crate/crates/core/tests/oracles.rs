//! Independent recomputations of worked values.

use std::collections::{BTreeMap, BTreeSet};

use lmod_core::ce_oracle::{ce_cohomology, chevalley_basis, irrep_construct, structure_constants};
use lmod_core::graded::{cohomology, cohomology_dims, cone_shift, truncate_degree, GradedModule, Side, WeightProfile};
use lmod_core::kostant::kostant_cohomology;
use lmod_core::lmodule::{
    build, closed_restrict, i_star, kostant_module, open_pushforward, ses_of_pair, Construction, LModule, Perversity,
};
use lmod_core::microsupport::{micro_support, RealFormOracle};
use lmod_core::parabolics::{enumerate_parabolics, split_real_data, xi_restriction, ParabolicIndex};
use lmod_core::{Caps, QVector, Rat, RootSystem, Weight};
use num_traits::{One, Zero};

fn rs(s: &str) -> RootSystem {
    RootSystem::from_type_str(s).unwrap()
}

fn q(v: &[i64]) -> QVector {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// Projection away from the Levi roots by explicit orthogonalization.
fn gram_schmidt_projection(r: &RootSystem, x: &[Rat], p: &ParabolicIndex) -> QVector {
    let mut basis: Vec<QVector> = Vec::new();
    for i in p.nodes() {
        let mut v = q(&(0..r.rank()).map(|j| r.cartan(i, j)).collect::<Vec<_>>());
        for e in &basis {
            let c = r.inner(&v, e) / r.inner(e, e);
            v = v.iter().zip(e).map(|(a, b)| a - &c * b).collect();
        }
        basis.push(v);
    }
    let mut out = x.to_vec();
    for e in &basis {
        let c = r.inner(x, e) / r.inner(e, e);
        out = out.iter().zip(e).map(|(a, b)| a - &c * b).collect();
    }
    out
}

#[test]
fn projection_matches_gram_schmidt() {
    let caps = Caps::default();
    let samples = [vec![1, 1, 1], vec![2, -1, 0], vec![-3, 4, 5], vec![0, 0, 1]];
    for t in ["A2", "C2", "G2", "B3", "A3", "C3"] {
        let r = rs(t);
        for p in enumerate_parabolics(&r, &caps).unwrap() {
            for s in &samples {
                let x = q(&s[..r.rank()]);
                assert_eq!(xi_restriction(&r, &x, &p), gram_schmidt_projection(&r, &x, &p), "{t} {p}");
            }
        }
    }
    // ρ on the Heisenberg parabolic of C2 loses exactly its α₁ component
    let c2 = rs("C2");
    let p = ParabolicIndex::from_nodes(&[1]);
    let rho = c2.rho().to_q();
    let xi = xi_restriction(&c2, &rho, &p);
    let alpha = q(&[c2.cartan(1, 0), c2.cartan(1, 1)]);
    assert!(c2.inner(&xi, &alpha).is_zero());
    let diff: QVector = rho.iter().zip(&xi).map(|(a, b)| a - b).collect();
    let c = &diff[1] / &alpha[1];
    assert_eq!(diff, alpha.iter().map(|a| a * &c).collect::<QVector>());
}

#[test]
fn symmetric_space_dimensions_from_structure_constants() {
    let caps = Caps::default();
    for t in ["A1", "A2", "B2", "C2", "G2", "A3"] {
        let r = rs(t);
        let lie = chevalley_basis(&r, &caps).unwrap();
        for p in enumerate_parabolics(&r, &caps).unwrap() {
            assert_eq!(lie.split_symmetric_dim(&r, p.mask), split_real_data(&r, &p).dim_d, "{t} {p}");
        }
    }
    let g = |t: &str| split_real_data(&rs(t), &ParabolicIndex::full(&rs(t))).dim_d;
    assert_eq!(g("C2"), 10 - 4);
    assert_eq!(g("A2"), 8 - 3);
}

#[test]
fn structure_constants_satisfy_jacobi() {
    let caps = Caps::default();
    let c2 = rs("C2");
    let lie = chevalley_basis(&c2, &caps).unwrap();
    let n = lie.dim();
    assert_eq!(n, 10);
    let bracket = |x: &BTreeMap<usize, i64>, y: usize| -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&b, &c) in x {
            for (z, k) in lie.bracket(b, y) {
                *out.entry(z).or_insert(0) += c * k;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    };
    let basis = |x: usize| BTreeMap::from([(x, 1i64)]);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut total: BTreeMap<usize, i64> = BTreeMap::new();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    // [a,[b,c]] = −[[b,c],a]
                    for (k, v) in bracket(&bracket(&basis(b), c), a) {
                        *total.entry(k).or_insert(0) -= v;
                    }
                }
                assert!(total.values().all(|v| *v == 0), "{x} {y} {z}");
            }
        }
    }
    let sc = structure_constants(&c2, &caps).unwrap();
    assert_eq!(sc.max_abs(), 2);
}

#[test]
fn kostant_degrees_match_ce() {
    let caps = Caps::default();
    let cases = [("A2", 0u64, vec![0, 1, 1, 2, 2, 3]), ("C2", 2, vec![0, 1, 2, 3])];
    for (t, mask, degrees) in cases {
        let r = rs(t);
        let p = ParabolicIndex { mask };
        let g = ParabolicIndex::full(&r);
        let zero = Weight::zero(2);
        let mut got: Vec<i64> = kostant_cohomology(&r, &p, &g, &zero, &caps)
            .unwrap()
            .iter()
            .map(|c| c.degree as i64)
            .collect();
        got.sort();
        assert_eq!(got, degrees);
        let sc = structure_constants(&r, &caps).unwrap();
        let v = irrep_construct(&r, &zero, g.mask, &caps).unwrap();
        let ce = ce_cohomology(&r, &p, &g, &v, &sc, &caps).unwrap();
        let mut ce_degrees: Vec<i64> = Vec::new();
        for ((_, d), n) in &ce.decomposition {
            ce_degrees.extend(std::iter::repeat_n(*d as i64, *n));
        }
        ce_degrees.sort();
        assert_eq!(ce_degrees, degrees, "{t}");
    }
}

fn kostant_complex(r: &RootSystem, p: &ParabolicIndex, lambda: &Weight) -> lmod_core::ComplexObject {
    let mut e = GradedModule::new();
    e.push((lambda.clone(), 0), "v");
    let k = kostant_module(r, p, &ParabolicIndex::full(r), &e, &Caps::default()).unwrap();
    lmod_core::ComplexObject::normal(k.module)
}

#[test]
fn degree_truncation_of_kostant_module() {
    let c2 = rs("C2");
    let c = kostant_complex(&c2, &ParabolicIndex::from_nodes(&[1]), &Weight::zero(2));
    let low = truncate_degree(&c, 1, Side::AtMost).complex;
    let high = truncate_degree(&c, 1, Side::Above).complex;
    let degrees = |x: &lmod_core::ComplexObject| x.module.entries.keys().map(|i| i.1).collect::<BTreeSet<_>>();
    assert_eq!(degrees(&low), [0, 1].into());
    assert_eq!(degrees(&high), [2, 3].into());
}

#[test]
fn cone_of_projection_is_lower_truncation() {
    let c2 = rs("C2");
    for lambda in [Weight::zero(2), c2.rho()] {
        let c = kostant_complex(&c2, &ParabolicIndex::from_nodes(&[1]), &lambda);
        for p in 0..4 {
            let high = truncate_degree(&c, p, Side::Above);
            let cone = cone_shift(&high.map, &c, &high.complex).unwrap();
            let low = truncate_degree(&c, p, Side::AtMost).complex;
            assert_eq!(cohomology_dims(&cone), cohomology_dims(&low), "p = {p}");
        }
    }
}

#[test]
fn two_step_pushforward() {
    let caps = Caps::default();
    let a2 = rs("A2");
    let g = ParabolicIndex::full(&a2);
    let mut m = LModule::zero(a2.cartan_type().clone(), [g].into());
    let mut top = GradedModule::new();
    top.push((Weight(vec![1, 0]), 0), "v");
    m.e.insert(g, top);
    let middle: BTreeSet<_> = [ParabolicIndex::from_nodes(&[0]), ParabolicIndex::from_nodes(&[1]), g].into();
    let all: BTreeSet<_> = enumerate_parabolics(&a2, &caps).unwrap().into_iter().collect();
    let two = open_pushforward(&a2, &open_pushforward(&a2, &m, &middle).unwrap(), &all).unwrap();
    assert_eq!(two, open_pushforward(&a2, &m, &all).unwrap());
    assert_eq!(two, build(&a2, &Weight(vec![1, 0]), Construction::IgStar, &caps).unwrap());
}

fn a1_two_stratum() -> LModule {
    let a1 = rs("A1");
    let b = ParabolicIndex::borel();
    let g = ParabolicIndex::full(&a1);
    let mut m = LModule::zero(a1.cartan_type().clone(), [b, g].into());
    let mut top = GradedModule::new();
    top.push((Weight(vec![0]), 0), "v");
    m.e.insert(g, top);
    let mut eb = GradedModule::new();
    eb.push((Weight(vec![-2]), 2), "*:s0*v");
    m.e.insert(b, eb);
    let mut f = lmod_core::GradedMorphism::zero(1);
    f.insert((Weight(vec![-2]), 1), lmod_core::QMatrix::identity(1));
    m.f.insert((b, g), f);
    m
}

#[test]
fn a1_trivial_ic_and_wc_by_hand() {
    let caps = Caps::default();
    let a1 = rs("A1");
    let expected = a1_two_stratum();
    for c in [
        Construction::Ic(Perversity::Upper),
        Construction::Ic(Perversity::Lower),
        Construction::Wc(WeightProfile::Upper),
    ] {
        assert_eq!(build(&a1, &Weight(vec![0]), c, &caps).unwrap(), expected, "{c}");
    }
}

#[test]
fn a1_ic_long_exact_sequence() {
    let caps = Caps::default();
    let a1 = rs("A1");
    let b = ParabolicIndex::borel();
    let m = a1_two_stratum();
    let les = ses_of_pair(&a1, &m, &b, &b, &caps).unwrap();
    assert!(les.exact);
    let row = |w: i64, d: i64| les.rows.iter().find(|r| r.weight == Weight(vec![w]) && r.degree == d).unwrap();
    let top = row(0, 0);
    assert_eq!((top.dim_sub, top.dim_total, top.dim_quotient), (0, 1, 1));
    assert_eq!(top.rank_projection, 1);
    let q1 = row(-2, 1);
    assert_eq!((q1.dim_total, q1.dim_quotient, q1.rank_connecting), (0, 1, 1));
    assert_eq!(row(-2, 2).dim_sub, 1);
}

#[test]
fn igstar_pairs_below_g_are_isomorphisms() {
    let caps = Caps::default();
    for t in ["A2", "C2"] {
        let r = rs(t);
        let g = ParabolicIndex::full(&r);
        let m = build(&r, &r.rho(), Construction::IgStar, &caps).unwrap();
        for qq in m.strata.iter().filter(|x| **x != g) {
            for p in m.strata.iter().filter(|p| p.is_le(qq)) {
                let les = ses_of_pair(&r, &m, p, qq, &caps).unwrap();
                for row in &les.rows {
                    assert_eq!(row.dim_sub, 0);
                    assert_eq!(row.rank_projection, row.dim_total);
                    assert_eq!(row.dim_total, row.dim_quotient);
                }
            }
        }
    }
}

#[test]
fn closed_restriction_is_the_owned_subcomplex() {
    let caps = Caps::default();
    let c2 = rs("C2");
    let m = build(&c2, &c2.rho(), Construction::Ic(Perversity::Upper), &caps).unwrap();
    for qq in &m.strata {
        let restricted = closed_restrict(&c2, &m, qq).unwrap();
        for p in m.strata.iter().filter(|p| p.is_le(qq)) {
            let (sub, _) = i_star(&c2, &m, p, &caps).unwrap().subcomplex(|r| r.is_le(qq));
            let direct = i_star(&c2, &restricted, p, &caps).unwrap().complex;
            assert_eq!(cohomology(&sub).module.multiplicities(), cohomology(&direct).module.multiplicities());
            assert_eq!(sub.module.total_dim(), direct.module.total_dim());
        }
    }
}

#[test]
fn a1_ic_types_by_hand() {
    let caps = Caps::default();
    let a1 = rs("A1");
    let b = ParabolicIndex::borel();
    let m = a1_two_stratum();
    // i_B^* M is H(𝔫;E) → E_B with the degree-1 class cancelled
    let star = cohomology(&i_star(&a1, &m, &b, &caps).unwrap().complex);
    assert_eq!(star.module.multiplicities(), BTreeMap::from([((Weight(vec![0]), 0), 1)]));
    // Q_V = G for the cancelled class and Q_V = B for the trivial one, so
    // neither Borel candidate has nonzero local cohomology in its range
    let report = micro_support(&a1, &m, &RealFormOracle::Split, &caps).unwrap();
    assert!(report.elements.iter().all(|e| e.parabolic == "*"));
    let top = &report.elements[0];
    assert_eq!(top.weight, Weight(vec![0]));
    assert_eq!(top.type_interval, Some((0, 0)));
    assert!(top.essential);
}

/// `−w₀` on the Levi found by brute force as the longest Levi element.
fn levi_self_dual(r: &RootSystem, mu: &Weight, p: &ParabolicIndex) -> bool {
    let group = r.weyl_enumerate_subgroup(p.mask, 10_000).unwrap();
    let (w0, _) = group.iter().max_by_key(|(w, _)| r.length(w)).unwrap();
    let image = w0.act(mu);
    let fixes = p.nodes().iter().all(|&j| -image.0[j] == mu.0[j]);
    let sum = mu.add(&image);
    fixes && sum.0.iter().all(|x| x % 2 == 0)
}

#[test]
fn duality_against_brute_force_longest_element() {
    let caps = Caps::default();
    let oracle = RealFormOracle::Split;
    for t in ["A2", "C2", "G2", "B3", "A3"] {
        let r = rs(t);
        for p in enumerate_parabolics(&r, &caps).unwrap() {
            for a in -2..=2 {
                for b in 0..=2 {
                    let mut mu = vec![a; r.rank()];
                    for &j in &p.nodes() {
                        mu[j] = b;
                    }
                    let mu = Weight(mu);
                    assert_eq!(oracle.duality(&r, &mu, &p), levi_self_dual(&r, &mu, &p), "{t} {p} {mu}");
                }
            }
        }
    }
    let c2 = rs("C2");
    let glt = ParabolicIndex::from_nodes(&[0]);
    assert!(!oracle.duality(&c2, &Weight(vec![1, 0]), &glt));
    assert!(oracle.duality(&c2, &Weight(vec![2, 0]), &glt));
}

#[test]
fn irrep_dimensions_match_weyl_formula() {
    let caps = Caps::default();
    let weyl = |r: &RootSystem, l: &Weight| -> Rat {
        let lr = l.add(&r.rho()).to_q();
        let rho = r.rho().to_q();
        let mut num = Rat::one();
        let mut den = Rat::one();
        for root in r.positive_roots().iter().filter(|x| x.indivisible) {
            let a = root.labels.to_q();
            num *= r.inner(&lr, &a);
            den *= r.inner(&rho, &a);
        }
        num / den
    };
    let mut seen = BTreeMap::new();
    for (t, l) in [("C2", vec![1, 0]), ("A2", vec![1, 1]), ("G2", vec![1, 0]), ("B2", vec![0, 2])] {
        let r = rs(t);
        let l = Weight(l);
        let v = irrep_construct(&r, &l, ParabolicIndex::full(&r).mask, &caps).unwrap();
        let expected = weyl(&r, &l);
        assert_eq!(Rat::from_integer(v.dim().into()), expected, "{t} {l}");
        seen.insert(t, v.dim());
    }
    assert_eq!(seen["C2"], 4);
    assert_eq!(seen["A2"], 8);
}
