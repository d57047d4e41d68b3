//! Independent brute-force oracles: Freudenthal weight multiplicities for a
//! Levi factor, the Weyl dimension formula, and exhaustive chain-weight
//! counts. These deliberately avoid the Hasse-diagram machinery so they can
//! cross-check it.

use crate::linalg::QMatrix;
use crate::parabolic::{delta_levi, sigma_height, ParabolicPair};
use crate::rootsys::{Root, RootSystem, Weight};
use crate::{q, Error, Q, Result};
use itertools::Itertools;
use num::{One, Zero};
use std::collections::BTreeMap;

/// Exact weight multiplicities of one irreducible representation.
#[derive(Debug, Clone)]
pub struct WeightMultiplicityMap {
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightMultiplicityMap {
    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Positive roots of the Levi: zero Σ-height for the crossed set `sigma`.
fn levi_positive_roots(rs: &RootSystem, sigma: &std::collections::BTreeSet<usize>) -> Vec<Root> {
    rs.positive_roots
        .iter()
        .filter(|a| sigma_height(a, sigma) == 0)
        .cloned()
        .collect()
}

fn check_levi_dominant(
    lambda: &Weight,
    sigma: &std::collections::BTreeSet<usize>,
    rank: usize,
) -> Result<()> {
    if crate::parabolic::is_dominant(lambda, sigma, rank) {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.to_string(), "Levi".into()))
    }
}

/// Freudenthal recursion for the irreducible Levi representation with
/// highest weight λ; `sigma` is the crossed set, the Levi is generated by
/// the uncrossed simple roots. Center coordinates (over crossed nodes) ride
/// along inside the g-fundamental coordinates. Everything uses the ambient
/// Killing inner product, which is W_Levi-invariant.
pub fn freudenthal(
    lambda: &Weight,
    sigma: &std::collections::BTreeSet<usize>,
    rs: &RootSystem,
) -> Result<WeightMultiplicityMap> {
    check_levi_dominant(lambda, sigma, rs.rank)?;
    let levi_pos = levi_positive_roots(rs, sigma);
    let levi_simple: Vec<usize> = (0..rs.rank).filter(|i| !sigma.contains(i)).collect();
    let d_levi = delta_levi(rs, sigma);
    let top = rs.norm_sq(&lambda.add(&d_levi));
    // height of λ − μ in simple-root coordinates bounds every root string
    let cartan_inv = QMatrix::from_fn(rs.rank, rs.rank, |i, j| q(rs.cartan.entries[i][j]))
        .inverse()
        .expect("finite-type Cartan matrices are invertible");
    let level = |mu: &Weight| -> Q {
        cartan_inv
            .mul_vec(&lambda.sub(mu).coords)
            .into_iter()
            .fold(Q::zero(), |s, t| s + t)
    };

    // weights processed by level (height below λ); at each level the RHS of
    // the recursion only needs higher weights, already known
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    mult.insert(lambda.clone(), 1);
    let mut current: Vec<Weight> = vec![lambda.clone()];
    while !current.is_empty() {
        // candidates one level down: subtract a simple Levi root
        let mut candidates: Vec<Weight> = current
            .iter()
            .cartesian_product(&levi_simple)
            .map(|(w, &i)| w.sub(&rs.root_to_weight(&Root::simple(i, rs.rank))))
            .collect();
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for mu in candidates {
            if mult.contains_key(&mu) {
                continue;
            }
            // (‖λ+δ‖² − ‖μ+δ‖²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα)(μ+kα, α)
            let denom = &top - &rs.norm_sq(&mu.add(&d_levi));
            let mut rhs = Q::zero();
            for alpha in &levi_pos {
                let aw = rs.root_to_weight(alpha);
                let mut shifted = mu.add(&aw);
                // the string μ+kα leaves the support cone once its level
                // (height below λ) turns negative
                while level(&shifted) >= Q::zero() {
                    if let Some(&m) = mult.get(&shifted) {
                        if m > 0 {
                            rhs += rs.inner(&shifted, &aw) * q(m as i64);
                        }
                    }
                    shifted = shifted.add(&aw);
                }
            }
            rhs *= q(2);
            if denom.is_zero() {
                // actual weights μ ≠ λ satisfy ‖μ+δ‖ < ‖λ+δ‖ strictly, so a
                // vanishing denominator certifies multiplicity zero; the
                // identity forces the RHS to vanish too
                if !rhs.is_zero() {
                    return Err(Error::Internal(format!(
                        "inconsistent Freudenthal identity at {mu}"
                    )));
                }
                mult.insert(mu, 0);
                continue;
            }
            let m_mu = rhs / denom;
            if !m_mu.is_integer() {
                return Err(Error::Internal(format!(
                    "non-integer multiplicity {m_mu} at {mu}"
                )));
            }
            let m_int: i64 = m_mu
                .to_integer()
                .try_into()
                .map_err(|_| Error::Internal("multiplicity overflow".into()))?;
            if m_int < 0 {
                return Err(Error::Internal(format!(
                    "negative multiplicity at {mu}"
                )));
            }
            if m_int > 0 {
                mult.insert(mu.clone(), m_int as u64);
                next.push(mu);
            } else {
                // remember the zero so the candidate is not revisited
                mult.insert(mu, 0);
            }
        }
        current = next;
    }
    mult.retain(|_, m| *m > 0);
    Ok(WeightMultiplicityMap { entries: mult })
}

/// ∏_{α∈Δ⁺(Levi)} ⟨λ+δ_L, α∨⟩ / ⟨δ_L, α∨⟩ — the dimension of the Levi
/// irreducible with highest weight λ.
pub fn weyl_dimension(
    lambda: &Weight,
    sigma: &std::collections::BTreeSet<usize>,
    rs: &RootSystem,
) -> Result<u64> {
    check_levi_dominant(lambda, sigma, rs.rank)?;
    let d_levi = delta_levi(rs, sigma);
    let shifted = lambda.add(&d_levi);
    let mut dim = Q::one();
    for alpha in levi_positive_roots(rs, sigma) {
        dim *= rs.pairing(&shifted, &alpha) / rs.pairing(&d_levi, &alpha);
    }
    if !dim.is_integer() {
        return Err(Error::Internal(format!("non-integer dimension {dim}")));
    }
    dim.to_integer()
        .try_into()
        .map_err(|_| Error::Internal("dimension overflow".into()))
}

/// Multiplicity of −ν as a weight of Λ^k(q₊/p₊)⊗V by brute force: every
/// weight of the chain space is −μ + Σ_{α∈Ψ}α with −μ a weight of V and
/// Ψ ⊆ Δ⁺(p₀∩q₊), |Ψ| = k. V is labelled by the negative of its lowest
/// weight λ, so its weight multiplicities are those of the highest-weight-λ
/// module negated: m_V(−ν − ΣΨ) = m_{L(λ)}(ν + ΣΨ).
pub fn chain_multiplicity(
    nu: &Weight,
    k: usize,
    lambda: &Weight,
    pair: &ParabolicPair,
    rs: &RootSystem,
) -> Result<u64> {
    let mults = freudenthal(lambda, &pair.sigma_p, rs)?;
    let mid = pair.partition(rs).mid;
    let mut total = 0u64;
    for psi in mid.iter().combinations(k) {
        let mut target = nu.clone();
        for alpha in psi {
            target = target.add(&rs.root_to_weight(alpha));
        }
        total += mults.multiplicity(&target);
    }
    Ok(total)
}
