//! Nested parabolic pairs given by crossed Dynkin nodes, the induced
//! partition of the positive roots, the distinguished weights δ_p and δ^q_p,
//! dominance predicates, and (relative) Hasse diagrams with factorization.
//!
//! Crossing convention: `sigma` indexes the simple roots whose root spaces
//! lie in the nilradical, so crossing *more* nodes gives the *smaller*
//! parabolic — q ⊂ p corresponds to sigma_q ⊇ sigma_p. Node indices are
//! 0-based in the API and 1-based in all textual I/O.

use crate::rootsys::{Root, RootSystem, Weight};
use crate::weyl::{orbit, WeylElement};
use crate::{qr, Error, Result};
use num::{One, Signed};
use std::collections::BTreeSet;

/// Default orbit-size cap; overridable per call (the CLI reads
/// RELBGG_ORBIT_CAP).
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// Nested parabolics q ⊂ p ⊂ g: crossed nodes Σ_p ⊆ Σ_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicPair {
    pub sigma_p: BTreeSet<usize>,
    pub sigma_q: BTreeSet<usize>,
}

/// The partition Δ⁺ = Δ⁺(q₀) ⊔ Δ⁺(p₀∩q₊) ⊔ Δ⁺(p₊), each part in the ambient
/// root order (height, then lex).
#[derive(Debug, Clone)]
pub struct RootPartition {
    pub q0: Vec<Root>,
    pub mid: Vec<Root>,
    pub pplus: Vec<Root>,
}

/// Sum of the root's coefficients over the crossed nodes: the grading degree.
pub fn sigma_height(alpha: &Root, sigma: &BTreeSet<usize>) -> i64 {
    sigma.iter().map(|&i| alpha.coords[i]).sum()
}

impl ParabolicPair {
    pub fn new(
        sigma_p: impl IntoIterator<Item = usize>,
        sigma_q: impl IntoIterator<Item = usize>,
        rank: usize,
    ) -> Result<Self> {
        let sigma_p: BTreeSet<usize> = sigma_p.into_iter().collect();
        let sigma_q: BTreeSet<usize> = sigma_q.into_iter().collect();
        if let Some(&i) = sigma_q.iter().chain(&sigma_p).find(|&&i| i >= rank) {
            return Err(Error::InvalidParabolic(format!(
                "node {} out of range for rank {}",
                i + 1,
                rank
            )));
        }
        if !sigma_p.is_subset(&sigma_q) {
            return Err(Error::InvalidParabolic(
                "crossed nodes of p must be a subset of those of q".into(),
            ));
        }
        Ok(ParabolicPair { sigma_p, sigma_q })
    }

    pub fn partition(&self, rs: &RootSystem) -> RootPartition {
        let mut part = RootPartition { q0: Vec::new(), mid: Vec::new(), pplus: Vec::new() };
        for alpha in &rs.positive_roots {
            if sigma_height(alpha, &self.sigma_q) == 0 {
                part.q0.push(alpha.clone());
            } else if sigma_height(alpha, &self.sigma_p) > 0 {
                part.pplus.push(alpha.clone());
            } else {
                part.mid.push(alpha.clone());
            }
        }
        part
    }

    /// δ_p: half-sum of Δ⁺(p₀) (all positive roots of zero Σ_p-height).
    pub fn delta_p(&self, rs: &RootSystem) -> Weight {
        delta_levi(rs, &self.sigma_p)
    }

    /// δ^q_p: the sum of the fundamental weights over Σ_q ∖ Σ_p.
    pub fn delta_qp(&self, rs: &RootSystem) -> Weight {
        let mut w = Weight::zero(rs.rank);
        for &i in self.sigma_q.difference(&self.sigma_p) {
            w.coords[i] = crate::Q::one();
        }
        w
    }

    /// Uncrossed nodes of p: the simple reflections generating W_p.
    pub fn p_generators(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|i| !self.sigma_p.contains(i)).collect()
    }
}

/// Half-sum of the positive roots of zero Σ-height (the Levi of the
/// parabolic crossed at `sigma`).
pub fn delta_levi(rs: &RootSystem, sigma: &BTreeSet<usize>) -> Weight {
    let mut sum = Weight::zero(rs.rank);
    for alpha in &rs.positive_roots {
        if sigma_height(alpha, sigma) == 0 {
            sum = sum.add(&rs.root_to_weight(alpha));
        }
    }
    sum.scale(&qr(1, 2))
}

/// ⟨λ, αᵢ∨⟩ is a non-negative integer for every uncrossed node i.
pub fn is_dominant(lambda: &Weight, sigma: &BTreeSet<usize>, rank: usize) -> bool {
    (0..rank).all(|i| {
        sigma.contains(&i)
            || (lambda.coords[i].is_integer() && !lambda.coords[i].is_negative())
    })
}

/// All coordinates integral (algebraic integrality over the crossed nodes).
pub fn is_integral(lambda: &Weight) -> bool {
    lambda.is_integral()
}

pub fn is_dominant_integral(lambda: &Weight, sigma: &BTreeSet<usize>, rank: usize) -> bool {
    is_dominant(lambda, sigma, rank) && is_integral(lambda)
}

/// The relative Hasse diagram W^q_p = {w : Φ_w ⊆ Δ⁺(p₀∩q₊)}: the W_p-orbit
/// of δ^q_p, each point's shortest reaching element inverted. Sorted by
/// length, then canonical word.
pub fn relative_hasse(
    pair: &ParabolicPair,
    rs: &RootSystem,
    cap: usize,
) -> Result<Vec<WeylElement>> {
    let gens = pair.p_generators(rs.rank);
    let points = orbit(rs, &pair.delta_qp(rs), &gens, cap)?;
    let mut elements: Vec<WeylElement> =
        points.iter().map(|pt| pt.element.inverse(rs)).collect();
    elements.sort_by(|a, b| (a.length(), a.word()).cmp(&(b.length(), b.word())));
    // Φ_w ⊆ mid for every representative
    let part = pair.partition(rs);
    let mid: BTreeSet<&Root> = part.mid.iter().collect();
    for w in &elements {
        for alpha in w.phi_set(rs) {
            if !mid.contains(&alpha) {
                return Err(Error::Internal(format!(
                    "element {} has inversion {} outside the middle part",
                    w, alpha
                )));
            }
        }
    }
    Ok(elements)
}

/// The Hasse diagram W^p = {w : Φ_w ⊆ Δ⁺(p₊)}: the relative diagram of the
/// pair p ⊂ g.
pub fn hasse(
    sigma: &BTreeSet<usize>,
    rs: &RootSystem,
    cap: usize,
) -> Result<Vec<WeylElement>> {
    let pair = ParabolicPair::new(std::iter::empty(), sigma.iter().copied(), rs.rank)?;
    relative_hasse(&pair, rs, cap)
}

/// Factor w ∈ W^q as w = w1·w2 with w1 ∈ W^q_p, w2 ∈ W^p and additive
/// lengths. w1 is determined by Φ_{w1} = Φ_w ∩ Δ⁺(p₀).
pub fn factorize(
    w: &WeylElement,
    pair: &ParabolicPair,
    rs: &RootSystem,
) -> Result<(WeylElement, WeylElement)> {
    let part = pair.partition(rs);
    let phi = w.phi_set(rs);
    let qplus: BTreeSet<&Root> = part.mid.iter().chain(&part.pplus).collect();
    if phi.iter().any(|a| !qplus.contains(a)) {
        return Err(Error::NotInHasse(w.to_string()));
    }
    let p0: BTreeSet<Root> = part
        .q0
        .iter()
        .chain(&part.mid)
        .cloned()
        .collect();
    let phi1: BTreeSet<Root> = phi.iter().filter(|a| p0.contains(a)).cloned().collect();
    let w1 = WeylElement::from_phi(rs, &phi1);
    let w2 = w1.inverse(rs).compose(rs, w);
    if w1.length() + w2.length() != w.length() {
        return Err(Error::Internal(format!(
            "length not additive when factoring {w}"
        )));
    }
    Ok((w1, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use crate::rootsys::RootSystem;

    fn a3() -> RootSystem {
        RootSystem::from_spec("A3").unwrap()
    }

    fn pair(p: &[usize], q_: &[usize], rank: usize) -> ParabolicPair {
        ParabolicPair::new(p.iter().copied(), q_.iter().copied(), rank).unwrap()
    }

    #[test]
    fn sigma_heights() {
        let one = BTreeSet::from([0usize]);
        let twelve = BTreeSet::from([0usize, 1]);
        assert_eq!(sigma_height(&Root { coords: vec![0, 1, 1] }, &one), 0);
        assert_eq!(sigma_height(&Root { coords: vec![1, 1, 1] }, &twelve), 2);
        assert_eq!(sigma_height(&Root { coords: vec![1, 0, 0] }, &one), 1);
    }

    #[test]
    fn partition_a3() {
        let rs = a3();
        let part = pair(&[0], &[0, 1], 3).partition(&rs);
        assert_eq!(part.q0, vec![Root { coords: vec![0, 0, 1] }]);
        assert_eq!(
            part.mid,
            vec![Root { coords: vec![0, 1, 0] }, Root { coords: vec![0, 1, 1] }]
        );
        assert_eq!(part.pplus.len(), 3);
        // p = q: mid empty
        let same = pair(&[0], &[0], 3).partition(&rs);
        assert!(same.mid.is_empty());
    }

    #[test]
    fn distinguished_weights() {
        let rs = a3();
        // p = g: δ_p = δ
        assert_eq!(pair(&[], &[], 3).delta_p(&rs), rs.delta());
        // p = Borel: δ_p = 0
        assert_eq!(pair(&[0, 1, 2], &[0, 1, 2], 3).delta_p(&rs), Weight::zero(3));
        // p = {1}
        assert_eq!(pair(&[0], &[0, 1], 3).delta_p(&rs), Weight::from_ints(&[-1, 1, 1]));
        // δ^q_p examples
        assert_eq!(pair(&[0], &[0, 1], 3).delta_qp(&rs), Weight::from_ints(&[0, 1, 0]));
        assert_eq!(pair(&[0], &[0], 3).delta_qp(&rs), Weight::zero(3));
        assert_eq!(pair(&[], &[0, 1, 2], 3).delta_qp(&rs), rs.delta());
    }

    #[test]
    fn dominance() {
        let all: BTreeSet<usize> = BTreeSet::new();
        assert!(is_dominant(&Weight::zero(3), &all, 3));
        // q = {1,2}: only node 3 uncrossed
        let sq = BTreeSet::from([0usize, 1]);
        for (b, c) in [(0i64, 0i64), (2, 3)] {
            let w = Weight::from_ints(&[b + 1, -b - 2, b + c + 1]);
            assert!(is_dominant(&w, &sq, 3));
        }
        // p = {1}: node 2 uncrossed and negative
        let sp = BTreeSet::from([0usize]);
        assert!(!is_dominant(&Weight::from_ints(&[5, -1, 0]), &sp, 3));
        assert!(!is_dominant(
            &Weight { coords: vec![q(0), qr(1, 2), q(0)] },
            &sp,
            3
        ));
    }

    #[test]
    fn relative_hasse_a3() {
        let rs = a3();
        let els = relative_hasse(&pair(&[0], &[0, 1], 3), &rs, DEFAULT_ORBIT_CAP).unwrap();
        let words: Vec<String> = els.iter().map(|w| w.display_word()).collect();
        assert_eq!(words, vec!["e", "s2", "s2 s3"]);
        assert_eq!(
            els.iter().map(|w| w.length()).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        // p̃ = {2}
        let els2 = relative_hasse(&pair(&[1], &[0, 1], 3), &rs, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(
            els2.iter().map(|w| w.display_word()).collect::<Vec<_>>(),
            vec!["e", "s1"]
        );
        // q = p
        let trivial = relative_hasse(&pair(&[0], &[0], 3), &rs, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_identity());
    }

    #[test]
    fn hasse_a3() {
        let rs = a3();
        let wp = hasse(&BTreeSet::from([0usize]), &rs, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(
            wp.iter().map(|w| w.display_word()).collect::<Vec<_>>(),
            vec!["e", "s1", "s1 s2", "s1 s2 s3"]
        );
        let wq = hasse(&BTreeSet::from([0usize, 1]), &rs, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(wq.len(), 12);
        assert_eq!(hasse(&BTreeSet::new(), &rs, DEFAULT_ORBIT_CAP).unwrap().len(), 1);
    }

    #[test]
    fn factorization_bijection_a3() {
        let rs = a3();
        let pr = pair(&[0], &[0, 1], 3);
        let wq = hasse(&pr.sigma_q, &rs, DEFAULT_ORBIT_CAP).unwrap();
        let wqp = relative_hasse(&pr, &rs, DEFAULT_ORBIT_CAP).unwrap();
        let wp = hasse(&pr.sigma_p, &rs, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(wq.len(), wqp.len() * wp.len());
        let mut seen = std::collections::HashSet::new();
        for w in &wq {
            let (w1, w2) = factorize(w, &pr, &rs).unwrap();
            assert!(wqp.contains(&w1), "{w1} not in relative diagram");
            assert!(wp.contains(&w2), "{w2} not in absolute diagram");
            assert_eq!(w1.length() + w2.length(), w.length());
            assert_eq!(w1.compose(&rs, &w2), *w);
            assert!(seen.insert((w1, w2)));
        }
        assert_eq!(seen.len(), 12);
        // identity and pure-W^p cases
        let (e1, e2) = factorize(&WeylElement::identity(), &pr, &rs).unwrap();
        assert!(e1.is_identity() && e2.is_identity());
        for w2 in &wp {
            let (f1, f2) = factorize(w2, &pr, &rs).unwrap();
            assert!(f1.is_identity());
            assert_eq!(f2, *w2);
        }
    }

    #[test]
    fn factorize_rejects_non_hasse() {
        let rs = a3();
        let pr = pair(&[0], &[0, 1], 3);
        // σ3 has Φ = {α3} ⊂ Δ⁺(q₀), not in W^q
        let s3 = WeylElement::from_word(&rs, &[2]).unwrap();
        assert!(matches!(factorize(&s3, &pr, &rs), Err(Error::NotInHasse(_))));
    }

    #[test]
    fn dominance_transport() {
        // w ∈ W^q_p maps p-dominant integral weights to q-dominant ones
        let rs = a3();
        let pr = pair(&[0], &[0, 1], 3);
        let wqp = relative_hasse(&pr, &rs, DEFAULT_ORBIT_CAP).unwrap();
        for (a, b, c) in [(0i64, 0, 0), (-3, 2, 5), (7, 0, 1)] {
            let lam = Weight::from_ints(&[a, b, c]);
            assert!(is_dominant_integral(&lam, &pr.sigma_p, 3));
            for w in &wqp {
                assert!(is_dominant(&w.apply(&rs, &lam), &pr.sigma_q, 3));
            }
        }
    }

    #[test]
    fn delta_qp_stabilizer() {
        // w(δ^q_p) = δ^q_p for w ∈ W_p iff w ∈ W_q
        let rs = a3();
        let pr = pair(&[0], &[0, 1], 3);
        let dqp = pr.delta_qp(&rs);
        for w in crate::weyl::enumerate_weyl(&rs, 10_000).unwrap() {
            let in_wp = w
                .phi_set(&rs)
                .iter()
                .all(|a| sigma_height(a, &pr.sigma_p) == 0);
            if !in_wp {
                continue;
            }
            let in_wq = w
                .phi_set(&rs)
                .iter()
                .all(|a| sigma_height(a, &pr.sigma_q) == 0);
            assert_eq!(w.apply(&rs, &dqp) == dqp, in_wq, "element {w}");
        }
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(ParabolicPair::new([1], [0], 3).is_err());
        assert!(ParabolicPair::new([5], [5], 3).is_err());
    }
}
