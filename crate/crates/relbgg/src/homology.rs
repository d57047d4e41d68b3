//! Weight-level homology tables: one entry per Hasse-diagram element, the
//! Laplacian scalar, the factorized bigraded table, and singular-orbit
//! reports. Components are labelled by the negatives of their lowest
//! weights.

use crate::parabolic::{
    hasse, is_dominant, is_dominant_integral, relative_hasse, ParabolicPair,
};
use crate::rootsys::{Root, RootSystem, Weight};
use crate::weyl::WeylElement;
use crate::{qr, Error, Q, Result};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// One irreducible component of a homology space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyEntry {
    /// Homological degree; equals the length of `word`.
    pub degree: usize,
    pub word: WeylElement,
    /// ν = w·λ, the negative of the component's lowest weight.
    pub nu: Weight,
    /// ½(‖λ+δ_p‖² − ‖ν+δ_p‖²); exactly zero on the orbit.
    pub laplacian_gap: Q,
}

/// Entries of the factorized decomposition, keyed by (relative degree i,
/// p-degree j); flattening over i+j = k reproduces absolute degree k.
#[derive(Debug, Clone)]
pub struct BigradedTable {
    pub entries: BTreeMap<(usize, usize), Vec<HomologyEntry>>,
}

impl BigradedTable {
    /// Multiset of weights in total degree k, sorted.
    pub fn flatten(&self, k: usize) -> Vec<Weight> {
        let mut out: Vec<Weight> = self
            .entries
            .iter()
            .filter(|((i, j), _)| i + j == k)
            .flat_map(|(_, es)| es.iter().map(|e| e.nu.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn max_total_degree(&self) -> usize {
        self.entries.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }
}

/// ½(‖λ+δ_p‖² − ‖ν+δ_p‖²) with the Killing-induced norm.
pub fn laplacian_scalar(
    lambda: &Weight,
    nu: &Weight,
    pair: &ParabolicPair,
    rs: &RootSystem,
) -> Q {
    let dp = pair.delta_p(rs);
    let a = rs.norm_sq(&lambda.add(&dp));
    let b = rs.norm_sq(&nu.add(&dp));
    (a - b) * qr(1, 2)
}

/// Homology of q₊/p₊ with coefficients in the p-irreducible labelled by λ:
/// one entry ν_w = w·λ per w ∈ W^q_p, sorted by degree then word.
pub fn relative_homology(
    lambda: &Weight,
    pair: &ParabolicPair,
    rs: &RootSystem,
    cap: usize,
) -> Result<Vec<HomologyEntry>> {
    if !is_dominant_integral(lambda, &pair.sigma_p, rs.rank) {
        return Err(Error::NotDominant(lambda.to_string(), "p".into()));
    }
    let dp = pair.delta_p(rs);
    let delta = rs.delta();
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for w in relative_hasse(pair, rs, cap)? {
        let nu = w.affine_action(rs, lambda, &dp);
        // for w ∈ W_p the two shifts agree: w(λ+δ)−δ = w(λ+δ_p)−δ_p
        debug_assert_eq!(nu, w.affine_action(rs, lambda, &delta));
        if !is_dominant(&nu, &pair.sigma_q, rs.rank) || !nu.is_integral() {
            return Err(Error::Internal(format!(
                "orbit weight {nu} of {w} is not q-dominant integral"
            )));
        }
        if !seen.insert(nu.coords.clone()) {
            return Err(Error::Internal(format!("duplicate orbit weight {nu}")));
        }
        let gap = laplacian_scalar(lambda, &nu, pair, rs);
        if !gap.is_zero() {
            return Err(Error::Internal(format!(
                "nonzero Laplacian scalar {gap} on the orbit at {nu}"
            )));
        }
        entries.push(HomologyEntry { degree: w.length(), word: w, nu, laplacian_gap: gap });
    }
    Ok(entries)
}

/// Homology of q₊ with coefficients in the g-irreducible labelled by λ: one
/// entry per w ∈ W^q with the full affine action.
pub fn absolute_homology(
    lambda: &Weight,
    sigma_q: &BTreeSet<usize>,
    rs: &RootSystem,
    cap: usize,
) -> Result<Vec<HomologyEntry>> {
    let pair = ParabolicPair::new(std::iter::empty(), sigma_q.iter().copied(), rs.rank)?;
    relative_homology(lambda, &pair, rs, cap)
}

/// The decomposition H_k(q₊,V) ≅ ⊕_{i+j=k} H_i(q₊/p₊, H_j(p₊,V)): for each
/// w2 ∈ W^p the inner label is μ = w2·λ, and each w1 ∈ W^q_p contributes
/// ν = w1·μ at position (ℓ(w1), ℓ(w2)).
pub fn factorized_homology(
    lambda: &Weight,
    pair: &ParabolicPair,
    rs: &RootSystem,
    cap: usize,
) -> Result<BigradedTable> {
    let g_sigma: BTreeSet<usize> = BTreeSet::new();
    if !is_dominant_integral(lambda, &g_sigma, rs.rank) {
        return Err(Error::NotDominant(lambda.to_string(), "g".into()));
    }
    let delta = rs.delta();
    let dp = pair.delta_p(rs);
    let wp = hasse(&pair.sigma_p, rs, cap)?;
    let wqp = relative_hasse(pair, rs, cap)?;
    let mut entries: BTreeMap<(usize, usize), Vec<HomologyEntry>> = BTreeMap::new();
    for w2 in &wp {
        let mu = w2.affine_action(rs, lambda, &delta);
        if !is_dominant(&mu, &pair.sigma_p, rs.rank) {
            return Err(Error::Internal(format!(
                "inner label {mu} of {w2} is not p-dominant"
            )));
        }
        let j = w2.length();
        for w1 in &wqp {
            let nu = w1.affine_action(rs, &mu, &dp);
            debug_assert_eq!(
                nu,
                w1.compose(rs, w2).affine_action(rs, lambda, &delta)
            );
            let entry = HomologyEntry {
                degree: w1.length(),
                word: w1.clone(),
                nu,
                laplacian_gap: Q::zero(),
            };
            entries.entry((w1.length(), j)).or_default().push(entry);
        }
    }
    Ok(BigradedTable { entries })
}

/// Relative orbit in possibly singular infinitesimal character, plus the
/// absolute walls λ+δ lies on (positive roots with ⟨λ+δ, α∨⟩ = 0).
pub fn singular_patterns(
    lambda: &Weight,
    pair: &ParabolicPair,
    rs: &RootSystem,
    cap: usize,
) -> Result<(Vec<HomologyEntry>, Vec<Root>)> {
    let entries = relative_homology(lambda, pair, rs, cap)?;
    let shifted = lambda.add(&rs.delta());
    let walls = rs
        .positive_roots
        .iter()
        .filter(|alpha| rs.pairing(&shifted, alpha).is_zero())
        .cloned()
        .collect();
    Ok((entries, walls))
}
