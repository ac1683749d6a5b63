//! Kostant's theorem: `H(𝔫_P^Q; V_ν)` as a graded Levi module.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::parabolics::{check_le, ParabolicIndex};
use crate::root_data::{RootSystem, Weight, WeylElement};
use crate::Caps;

/// One Levi-irreducible summand `V_{w·ν}` in degree `ℓ(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantComponent {
    pub w: WeylElement,
    pub word: Vec<usize>,
    pub weight: Weight,
    pub degree: usize,
}

/// Minimal length representatives of `W_{L_P} \ W_{L_Q}`, i.e. the
/// `w ∈ W_{L_Q}` with `w⁻¹α_j > 0` for every Levi simple root `α_j` of `P`.
pub fn minimal_coset_reps(
    rs: &RootSystem,
    p: &ParabolicIndex,
    q: &ParabolicIndex,
    caps: &Caps,
) -> Result<Vec<(WeylElement, Vec<usize>)>> {
    check_le(rs, p, q)?;
    let rho = rs.rho();
    let levi = p.nodes();
    rs.bfs_right(q.mask, caps.weyl_order, |_, v| {
        let image = v.act(&rho);
        levi.iter().all(|&j| image.0[j] > 0)
    })
}

pub fn kostant_cohomology(
    rs: &RootSystem,
    p: &ParabolicIndex,
    q: &ParabolicIndex,
    nu: &Weight,
    caps: &Caps,
) -> Result<Vec<KostantComponent>> {
    check_le(rs, p, q)?;
    rs.check_dominant(nu, q.mask, &format!("Levi {}", q.label(rs)))?;
    let reps = minimal_coset_reps(rs, p, q, caps)?;
    Ok(reps
        .into_iter()
        .map(|(w, word)| {
            let weight = rs.dot_action(&w, nu);
            debug_assert!(
                rs.is_dominant(&weight, p.mask),
                "Kostant weight {weight} is not Levi-dominant"
            );
            KostantComponent {
                degree: word.len(),
                w,
                word,
                weight,
            }
        })
        .collect())
}

/// Counts of coset representatives by length.
pub fn length_distribution(reps: &[(WeylElement, Vec<usize>)]) -> Vec<usize> {
    let max = reps.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let mut out = vec![0; max + 1];
    for r in reps {
        out[r.1.len()] += 1;
    }
    out
}

/// Splits `w ∈ W_S^P` as `w = w₁·y` with `y` minimal in `W_{L_R} w` and
/// `w₁ ∈ W_R^P`.
pub fn factorize(rs: &RootSystem, w: &WeylElement, r: &ParabolicIndex) -> (WeylElement, WeylElement) {
    let mut y = w.clone();
    while let Some(i) = r.nodes().into_iter().find(|&i| rs.is_left_descent(&y, i)) {
        y = rs.simple_reflection(i).compose(&y);
    }
    let w1 = w.compose(&rs.inverse(&y));
    (w1, y)
}

/// Graded multiset `(weight, degree) → multiplicity`.
pub type GradedMultiset = BTreeMap<(Weight, usize), usize>;

pub fn as_multiset(components: &[KostantComponent]) -> GradedMultiset {
    let mut m = GradedMultiset::new();
    for c in components {
        *m.entry((c.weight.clone(), c.degree)).or_default() += 1;
    }
    m
}

/// Compares the one-step decomposition of `H(𝔫_P^S; V_ν)` with the two-step
/// decomposition through `H(𝔫_P^R; H(𝔫_R^S; V_ν))`.
pub fn kostant_transitivity_check(
    rs: &RootSystem,
    p: &ParabolicIndex,
    r: &ParabolicIndex,
    s: &ParabolicIndex,
    nu: &Weight,
    caps: &Caps,
) -> Result<bool> {
    check_le(rs, p, r)?;
    check_le(rs, r, s)?;
    let direct = as_multiset(&kostant_cohomology(rs, p, s, nu, caps)?);
    let mut composed = GradedMultiset::new();
    for inner in kostant_cohomology(rs, r, s, nu, caps)? {
        for outer in kostant_cohomology(rs, p, r, &inner.weight, caps)? {
            *composed
                .entry((outer.weight, outer.degree + inner.degree))
                .or_default() += 1;
        }
    }
    Ok(direct == composed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type_str(s).unwrap()
    }

    #[test]
    fn coset_rep_examples() {
        let caps = Caps::default();
        let a1 = rs("A1");
        let reps = minimal_coset_reps(&a1, &ParabolicIndex::borel(), &ParabolicIndex::full(&a1), &caps).unwrap();
        assert_eq!(length_distribution(&reps), vec![1, 1]);
        let c2 = rs("C2");
        let long = ParabolicIndex::from_nodes(&[1]);
        let reps = minimal_coset_reps(&c2, &long, &ParabolicIndex::full(&c2), &caps).unwrap();
        assert_eq!(length_distribution(&reps), vec![1, 1, 1, 1]);
        let reps = minimal_coset_reps(&c2, &long, &long, &caps).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].0.is_identity());
    }

    #[test]
    fn a1_components() {
        let a1 = rs("A1");
        let caps = Caps::default();
        for m in 0..4 {
            let comps = kostant_cohomology(
                &a1,
                &ParabolicIndex::borel(),
                &ParabolicIndex::full(&a1),
                &Weight(vec![m]),
                &caps,
            )
            .unwrap();
            let got: Vec<(Weight, usize)> = comps.iter().map(|c| (c.weight.clone(), c.degree)).collect();
            assert_eq!(got, vec![(Weight(vec![m]), 0), (Weight(vec![-m - 2]), 1)]);
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let a2 = rs("A2");
        let caps = Caps::default();
        assert!(kostant_cohomology(
            &a2,
            &ParabolicIndex::borel(),
            &ParabolicIndex::full(&a2),
            &Weight(vec![-1, 0]),
            &caps
        )
        .is_err());
        // dominance is only required on the Levi of Q
        assert!(kostant_cohomology(
            &a2,
            &ParabolicIndex::borel(),
            &ParabolicIndex::from_nodes(&[1]),
            &Weight(vec![-1, 0]),
            &caps
        )
        .is_ok());
    }

    #[test]
    fn euler_characteristic_vanishes() {
        let caps = Caps::default();
        for t in ["A2", "C2", "G2", "A3"] {
            let r = rs(t);
            let g = ParabolicIndex::full(&r);
            for p in crate::parabolics::enumerate_parabolics(&r, &caps).unwrap() {
                let nu = r.rho();
                let comps = kostant_cohomology(&r, &p, &g, &nu, &caps).unwrap();
                let chi: BigInt = comps
                    .iter()
                    .map(|c| {
                        let d = r.weyl_dimension(&c.weight, p.mask);
                        if c.degree % 2 == 0 {
                            d
                        } else {
                            -d
                        }
                    })
                    .sum();
                let n = crate::parabolics::nilradical_roots(&r, &p, &g).unwrap().len();
                if n == 0 {
                    assert_eq!(chi, r.weyl_dimension(&nu, g.mask));
                } else {
                    assert_eq!(chi, BigInt::from(0), "{t} {p}");
                }
                let top = comps.iter().map(|c| c.degree).max().unwrap();
                assert_eq!(top, n);
            }
        }
    }

    #[test]
    fn factorization_lengths_add() {
        let caps = Caps::default();
        let c2 = rs("C2");
        let g = ParabolicIndex::full(&c2);
        let b = ParabolicIndex::borel();
        let r = ParabolicIndex::from_nodes(&[1]);
        for (w, _) in minimal_coset_reps(&c2, &b, &g, &caps).unwrap() {
            let (w1, y) = factorize(&c2, &w, &r);
            assert_eq!(c2.length(&w1) + c2.length(&y), c2.length(&w));
            assert_eq!(w1.compose(&y), w);
            assert!(r.nodes().iter().all(|&i| !c2.is_left_descent(&y, i)));
        }
    }

    #[test]
    fn transitivity_examples() {
        let caps = Caps::default();
        let a2 = rs("A2");
        let g = ParabolicIndex::full(&a2);
        let b = ParabolicIndex::borel();
        let m = ParabolicIndex::from_nodes(&[0]);
        assert!(kostant_transitivity_check(&a2, &b, &m, &g, &Weight(vec![1, 0]), &caps).unwrap());
        assert!(kostant_transitivity_check(&a2, &b, &b, &g, &Weight(vec![1, 0]), &caps).unwrap());
        let c2 = rs("C2");
        let g = ParabolicIndex::full(&c2);
        let s = ParabolicIndex::from_nodes(&[1]);
        assert!(kostant_transitivity_check(&c2, &b, &s, &g, &c2.rho(), &caps).unwrap());
    }
}
