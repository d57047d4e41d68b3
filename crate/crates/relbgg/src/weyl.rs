//! Weyl group elements as reduced words, their action on weights and roots,
//! Φ_w sets, affine actions, orbit enumeration, and Bruhat covering pairs.
//!
//! A word `[i1, ..., ik]` denotes the composition σ_{i1}∘⋯∘σ_{ik}, i.e. the
//! rightmost reflection acts first. Elements are canonicalized to the
//! lexicographically smallest reduced word, so equal group elements compare
//! equal as values. Indices are 0-based internally; display is 1-based
//! ("s2 s3", identity "e") matching Dynkin node numbering.

use crate::linalg::QMatrix;
use crate::rootsys::{Root, RootSystem, Weight};
use crate::{Error, Q, Result};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    /// Canonical (lex-smallest) reduced word, 0-based simple-root indices.
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    /// Build from an arbitrary (possibly non-reduced) word; the result is
    /// canonicalized through its Φ set.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        for &i in word {
            if i >= rs.rank {
                return Err(Error::Internal(format!(
                    "reflection index {} out of range for rank {}",
                    i + 1,
                    rs.rank
                )));
            }
        }
        let phi = phi_from_action(rs, word);
        Ok(Self::from_phi(rs, &phi))
    }

    /// Reconstruct the unique element with the given Φ set, producing the
    /// lex-smallest reduced word. Uses Φ_{σᵢw} = σᵢ(Φ_w ∖ {αᵢ}) with i the
    /// smallest index such that αᵢ ∈ Φ_w.
    pub fn from_phi(rs: &RootSystem, phi: &BTreeSet<Root>) -> Self {
        let mut current: BTreeSet<Root> = phi.clone();
        let mut word = Vec::with_capacity(phi.len());
        while !current.is_empty() {
            let i = (0..rs.rank)
                .find(|&i| current.contains(&Root::simple(i, rs.rank)))
                .expect("a nonempty inversion set contains a simple root");
            word.push(i);
            current = current
                .iter()
                .filter(|r| r.coords != Root::simple(i, rs.rank).coords)
                .map(|r| rs.simple_reflection_root(i, r))
                .collect();
        }
        WeylElement { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Linear action on a weight in fundamental coordinates.
    pub fn apply(&self, rs: &RootSystem, lambda: &Weight) -> Weight {
        let mut v = lambda.clone();
        for &i in self.word.iter().rev() {
            v = rs.simple_reflection_weight(i, &v);
        }
        v
    }

    pub fn apply_root(&self, rs: &RootSystem, root: &Root) -> Root {
        let mut r = root.clone();
        for &i in self.word.iter().rev() {
            r = rs.simple_reflection_root(i, &r);
        }
        r
    }

    /// Φ_w = {α ∈ Δ⁺ : w⁻¹(α) ∈ −Δ⁺}.
    pub fn phi_set(&self, rs: &RootSystem) -> BTreeSet<Root> {
        phi_from_action(rs, &self.word)
    }

    /// w·λ = w(λ+shift) − shift.
    pub fn affine_action(&self, rs: &RootSystem, lambda: &Weight, shift: &Weight) -> Weight {
        self.apply(rs, &lambda.add(shift)).sub(shift)
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &rev).expect("indices already validated")
    }

    /// Group composition self∘other (self acts second).
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement::from_word(rs, &word).expect("indices already validated")
    }

    /// Action matrix on the weight space (fundamental coordinates).
    pub fn matrix(&self, rs: &RootSystem) -> QMatrix {
        let cols: Vec<Vec<Q>> = (0..rs.rank)
            .map(|j| self.apply(rs, &Weight::fundamental(j, rs.rank)).coords)
            .collect();
        QMatrix::from_columns(&cols)
    }

    /// Serialized form: "e" or "s2 s3" (1-based indices).
    pub fn display_word(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Parse "e" or "s2 s3" back into an element.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<WeylElement> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(WeylElement::identity());
        }
        let mut word = Vec::new();
        for tok in s.split_whitespace() {
            let idx: usize = tok
                .strip_prefix('s')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Internal(format!("cannot parse word token '{tok}'")))?;
            if idx == 0 {
                return Err(Error::Internal("word indices are 1-based".into()));
            }
            word.push(idx - 1);
        }
        WeylElement::from_word(rs, &word)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_word())
    }
}

fn phi_from_action(rs: &RootSystem, word: &[usize]) -> BTreeSet<Root> {
    // w⁻¹ applied to α iterates the word of w in forward order
    rs.positive_roots
        .iter()
        .filter(|alpha| {
            let mut r = (*alpha).clone();
            for &i in word {
                r = rs.simple_reflection_root(i, &r);
            }
            !r.is_positive()
        })
        .cloned()
        .collect()
}

/// One point of a Weyl orbit: the weight together with a shortest element
/// reaching it from the starting weight.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub weight: Weight,
    pub element: WeylElement,
}

/// Breadth-first orbit of `lambda` under the reflections indexed by
/// `generators` (0-based). Deterministic: points sorted by word length, then
/// canonical word. `cap` bounds the orbit size.
pub fn orbit(
    rs: &RootSystem,
    lambda: &Weight,
    generators: &[usize],
    cap: usize,
) -> Result<Vec<OrbitPoint>> {
    let mut gens: Vec<usize> = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    for &g in &gens {
        if g >= rs.rank {
            return Err(Error::Internal(format!(
                "generator index {} out of range for rank {}",
                g + 1,
                rs.rank
            )));
        }
    }
    let mut seen: HashMap<Vec<Q>, Vec<usize>> = HashMap::new();
    seen.insert(lambda.coords.clone(), Vec::new());
    let mut frontier: Vec<(Weight, Vec<usize>)> = vec![(lambda.clone(), Vec::new())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, word) in &frontier {
            for &g in &gens {
                let img = rs.simple_reflection_weight(g, w);
                if !seen.contains_key(&img.coords) {
                    // new point reached by σ_g ∘ (previous element)
                    let mut nw = vec![g];
                    nw.extend_from_slice(word);
                    seen.insert(img.coords.clone(), nw.clone());
                    next.push((img, nw));
                    if seen.len() > cap {
                        return Err(Error::OrbitCapExceeded { cap });
                    }
                }
            }
        }
        frontier = next;
    }
    let mut points: Vec<OrbitPoint> = seen
        .into_iter()
        .map(|(coords, word)| OrbitPoint {
            weight: Weight { coords },
            element: WeylElement::from_word(rs, &word).expect("validated generators"),
        })
        .collect();
    points.sort_by(|a, b| {
        (a.element.length(), a.element.word())
            .cmp(&(b.element.length(), b.element.word()))
    });
    Ok(points)
}

/// All elements of the Weyl group (orbit of the regular weight δ).
pub fn enumerate_weyl(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let gens: Vec<usize> = (0..rs.rank).collect();
    Ok(orbit(rs, &rs.delta(), &gens, cap)?
        .into_iter()
        .map(|p| p.element)
        .collect())
}

/// Covering pairs (w, w′) with ℓ(w′) = ℓ(w)+1 and w′w⁻¹ a reflection,
/// returned as index pairs into `elements`.
pub fn bruhat_covers(rs: &RootSystem, elements: &[WeylElement]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (a, w) in elements.iter().enumerate() {
        let w_inv = w.inverse(rs);
        for (b, w2) in elements.iter().enumerate() {
            if w2.length() != w.length() + 1 {
                continue;
            }
            let t = w2.compose(rs, &w_inv);
            if is_reflection(rs, &t) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// A reflection fixes a hyperplane: the action matrix minus the identity has
/// rank 1 (and the element is an involution by construction of the check).
fn is_reflection(rs: &RootSystem, t: &WeylElement) -> bool {
    if t.is_identity() {
        return false;
    }
    let m = t.matrix(rs).sub(&QMatrix::identity(rs.rank));
    m.rank() == 1 && t.compose(rs, t).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use crate::Weight;
    use rand::{Rng, SeedableRng};

    fn a3() -> RootSystem {
        RootSystem::from_spec("A3").unwrap()
    }

    fn w(rs: &RootSystem, word: &[usize]) -> WeylElement {
        WeylElement::from_word(rs, word).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let rs = a3();
        let lam = Weight::from_ints(&[3, -1, 2]);
        assert_eq!(WeylElement::identity().apply(&rs, &lam), lam);
    }

    #[test]
    fn simple_reflection_on_weight() {
        let rs = a3();
        let s2 = w(&rs, &[1]);
        assert_eq!(
            s2.apply(&rs, &Weight::from_ints(&[0, 1, 0])),
            Weight::from_ints(&[1, -1, 1])
        );
    }

    #[test]
    fn two_step_orbit_weights() {
        // the orbit of (0,1,0) under σ2, σ3 passes (1,−1,1) and ends at
        // (1,0,−1); the element reaching the end point is σ3σ2 and its
        // inverse σ2σ3 is the length-2 coset representative
        let rs = a3();
        let s3s2 = w(&rs, &[2, 1]);
        assert_eq!(
            s3s2.apply(&rs, &Weight::from_ints(&[0, 1, 0])),
            Weight::from_ints(&[1, 0, -1])
        );
        let s2s3 = w(&rs, &[1, 2]);
        assert_eq!(s3s2.inverse(&rs), s2s3);
    }

    #[test]
    fn phi_sets() {
        let rs = a3();
        assert!(WeylElement::identity().phi_set(&rs).is_empty());
        let s2 = w(&rs, &[1]);
        let phi2 = s2.phi_set(&rs);
        assert_eq!(phi2.len(), 1);
        assert!(phi2.contains(&Root { coords: vec![0, 1, 0] }));
        let s2s3 = w(&rs, &[1, 2]);
        let phi = s2s3.phi_set(&rs);
        assert_eq!(phi.len(), 2);
        assert!(phi.contains(&Root { coords: vec![0, 1, 0] }));
        assert!(phi.contains(&Root { coords: vec![0, 1, 1] }));
    }

    #[test]
    fn length_equals_phi_size_over_full_group() {
        for spec in ["A3", "B2", "G2"] {
            let rs = RootSystem::from_spec(spec).unwrap();
            for el in enumerate_weyl(&rs, 10_000).unwrap() {
                assert_eq!(el.length(), el.phi_set(&rs).len());
            }
        }
    }

    #[test]
    fn canonical_words_are_reduced_and_lex_minimal() {
        let rs = a3();
        // s1 s1 cancels
        assert!(w(&rs, &[0, 0]).is_identity());
        // braid: s1 s2 s1 = s2 s1 s2, canonical form is the lex-smaller word
        assert_eq!(w(&rs, &[0, 1, 0]), w(&rs, &[1, 0, 1]));
        assert_eq!(w(&rs, &[0, 1, 0]).word(), &[0, 1, 0]);
    }

    #[test]
    fn affine_action_examples() {
        let rs = a3();
        let delta = rs.delta();
        let s1 = w(&rs, &[0]);
        for (a, b, c) in [(0i64, 0i64, 0i64), (2, 5, 1), (-3, 4, 7)] {
            let lam = Weight::from_ints(&[a, b, c]);
            assert_eq!(
                s1.affine_action(&rs, &lam, &delta),
                Weight::from_ints(&[-a - 2, a + b + 1, c])
            );
        }
    }

    #[test]
    fn affine_zero_is_negative_phi_sum() {
        let rs = a3();
        let delta = rs.delta();
        let zero = Weight::zero(3);
        for el in enumerate_weyl(&rs, 10_000).unwrap() {
            let lhs = el.affine_action(&rs, &zero, &delta);
            let mut sum = Weight::zero(3);
            for r in el.phi_set(&rs) {
                sum = sum.add(&rs.root_to_weight(&r));
            }
            assert_eq!(lhs, sum.neg());
        }
    }

    #[test]
    fn affine_action_is_group_action() {
        let rs = a3();
        let delta = rs.delta();
        let all = enumerate_weyl(&rs, 10_000).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let w1 = &all[rng.gen_range(0..all.len())];
            let w2 = &all[rng.gen_range(0..all.len())];
            let lam = Weight::from_ints(&[
                rng.gen_range(-5..6),
                rng.gen_range(-5..6),
                rng.gen_range(-5..6),
            ]);
            let composed = w1.compose(&rs, w2).affine_action(&rs, &lam, &delta);
            let nested = w1.affine_action(&rs, &w2.affine_action(&rs, &lam, &delta), &delta);
            assert_eq!(composed, nested);
        }
    }

    #[test]
    fn apply_preserves_killing_norm() {
        let rs = RootSystem::from_spec("B2").unwrap();
        let lam = Weight { coords: vec![crate::qr(3, 2), crate::qr(-5, 7)] };
        let n = rs.norm_sq(&lam);
        for el in enumerate_weyl(&rs, 10_000).unwrap() {
            assert_eq!(rs.norm_sq(&el.apply(&rs, &lam)), n);
        }
    }

    #[test]
    fn orbit_examples() {
        let rs = a3();
        // orbit of (0,1,0) under {σ2, σ3}
        let pts = orbit(&rs, &Weight::from_ints(&[0, 1, 0]), &[1, 2], 1000).unwrap();
        let weights: Vec<&Weight> = pts.iter().map(|p| &p.weight).collect();
        assert_eq!(weights.len(), 3);
        assert!(weights.contains(&&Weight::from_ints(&[0, 1, 0])));
        assert!(weights.contains(&&Weight::from_ints(&[1, -1, 1])));
        assert!(weights.contains(&&Weight::from_ints(&[1, 0, -1])));
        // stabilized: (0,1,0) is fixed by σ3-orthogonal... by nothing in {σ1}? no:
        // σ1 moves it not; (0,1,0) has zero first coordinate so σ1 fixes it
        let fixed = orbit(&rs, &Weight::from_ints(&[0, 1, 0]), &[0], 1000).unwrap();
        assert_eq!(fixed.len(), 1);
        // full orbit of δ has |W(A3)| = 24 points
        let full = orbit(&rs, &rs.delta(), &[0, 1, 2], 1000).unwrap();
        assert_eq!(full.len(), 24);
    }

    #[test]
    fn orbit_cap_enforced() {
        let rs = a3();
        match orbit(&rs, &rs.delta(), &[0, 1, 2], 5) {
            Err(crate::Error::OrbitCapExceeded { cap: 5 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn orbit_words_reach_their_points() {
        let rs = RootSystem::from_spec("B2").unwrap();
        let lam = Weight::from_ints(&[1, 2]);
        for p in orbit(&rs, &lam, &[0, 1], 1000).unwrap() {
            assert_eq!(p.element.apply(&rs, &lam), p.weight);
        }
    }

    #[test]
    fn phi_determines_element() {
        for spec in ["A3", "B3", "C3", "G2"] {
            let rs = RootSystem::from_spec(spec).unwrap();
            let all = enumerate_weyl(&rs, 10_000).unwrap();
            let mut seen = std::collections::HashMap::new();
            for el in &all {
                let phi = el.phi_set(&rs);
                assert_eq!(WeylElement::from_phi(&rs, &phi), *el);
                assert!(seen.insert(phi, el.clone()).is_none(), "duplicate Φ in {spec}");
            }
        }
    }

    #[test]
    fn covers_chain() {
        let rs = a3();
        let els = vec![
            WeylElement::identity(),
            w(&rs, &[1]),
            w(&rs, &[1, 2]),
        ];
        let covers = bruhat_covers(&rs, &els);
        assert_eq!(covers, vec![(0, 1), (1, 2)]);
        for &(a, b) in &covers {
            assert_eq!(els[a].length() + 1, els[b].length());
        }
        assert!(bruhat_covers(&rs, &[WeylElement::identity()]).is_empty());
    }

    #[test]
    fn parse_round_trip() {
        let rs = a3();
        for word in [vec![], vec![1usize], vec![1, 2], vec![0, 1, 2]] {
            let el = w(&rs, &word);
            assert_eq!(WeylElement::parse(&rs, &el.display_word()).unwrap(), el);
        }
    }

    #[test]
    fn norm_invariance_proptest_style() {
        // 1000 pseudo-random rational weights, all simple reflections
        let rs = RootSystem::from_spec("G2").unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..1000 {
            let lam = Weight {
                coords: (0..2)
                    .map(|_| crate::qr(rng.gen_range(-20..21), rng.gen_range(1..8)))
                    .collect(),
            };
            let n = rs.norm_sq(&lam);
            for i in 0..2 {
                assert_eq!(rs.norm_sq(&rs.simple_reflection_weight(i, &lam)), n);
            }
        }
    }
}
