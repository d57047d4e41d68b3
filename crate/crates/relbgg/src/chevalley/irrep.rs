//! Explicit rational matrix models of irreducible Levi representations,
//! built by closing a highest weight vector under the simple lowering
//! operators. Linear independence among the abstract vectors f_I·v is
//! decided with the contravariant form ⟨f_i u, u′⟩ = ⟨u, e_i u′⟩ (exact
//! Gram-matrix ranks); the closure terminates at the Weyl dimension.

use crate::chevalley::basis::{BasisElt, ChevalleyBasis};
use crate::linalg::QMatrix;
use crate::oracle::weyl_dimension;
use crate::parabolic::sigma_height;
use crate::rootsys::{Root, Weight};
use crate::{q, Error, Q, Result};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A concrete representation of the parabolic with crossed set `sigma`:
/// weight-vector basis, rational action matrices for the Cartan and all
/// Levi root vectors; the nilradical acts as zero.
#[derive(Debug, Clone)]
pub struct ExplicitRep {
    pub sigma: BTreeSet<usize>,
    /// Highest weight (g-fundamental coordinates, crossed nodes included).
    pub highest: Weight,
    /// Weight of each basis vector.
    pub weights: Vec<Weight>,
    actions: HashMap<BasisElt, QMatrix>,
}

impl ExplicitRep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Action matrix of a Lie algebra basis element of the parabolic.
    /// Nilradical elements (positive Σ-height) act as zero; elements of the
    /// opposite nilradical are outside the parabolic and rejected.
    pub fn action(&self, elt: &BasisElt) -> Result<QMatrix> {
        if let Some(m) = self.actions.get(elt) {
            return Ok(m.clone());
        }
        match elt {
            BasisElt::X(alpha) if sigma_height(alpha, &self.sigma) > 0 => {
                Ok(QMatrix::zeros(self.dim(), self.dim()))
            }
            _ => Err(Error::Internal(format!(
                "element {elt:?} does not act on this representation"
            ))),
        }
    }

    /// Multiset of weights, for oracle comparison.
    pub fn weight_multiset(&self) -> BTreeMap<Weight, u64> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }
}

/// Contravariant-form evaluator on lowering words. A word [i, rest] denotes
/// f_i applied outermost to f_rest·v.
struct Shapovalov<'a> {
    cb: &'a ChevalleyBasis,
    lambda: &'a Weight,
    memo: HashMap<(Vec<usize>, Vec<usize>), Q>,
}

impl Shapovalov<'_> {
    fn form(&mut self, i_word: &[usize], j_word: &[usize]) -> Q {
        if i_word.len() != j_word.len() {
            return Q::zero();
        }
        if i_word.is_empty() {
            return q(1);
        }
        let key = (i_word.to_vec(), j_word.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        // ⟨f_i u, f_J v⟩ = ⟨u, e_i f_J v⟩; commuting e_i leftwards leaves
        // one term per matching letter, scaled by the Cartan eigenvalue of
        // the tail weight
        let (i, rest) = (i_word[0], &i_word[1..]);
        let cartan = &self.cb.rs.cartan.entries;
        let mut acc = Q::zero();
        for t in 0..j_word.len() {
            if j_word[t] != i {
                continue;
            }
            // ⟨λ − Σ_{s>t} α_{J_s}, α_i∨⟩
            let mut coeff = self.lambda.coords[i].clone();
            for &s in &j_word[t + 1..] {
                coeff -= q(cartan[i][s]);
            }
            if !coeff.is_zero() {
                let mut reduced = j_word.to_vec();
                reduced.remove(t);
                let sub = self.form(rest, &reduced);
                acc += coeff * sub;
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// Construct the irreducible representation of the Levi (uncrossed nodes of
/// `sigma`) with highest weight `lambda`, extended to the parabolic by zero
/// nilradical action.
pub fn build_irrep(
    lambda: &Weight,
    sigma: &BTreeSet<usize>,
    cb: &ChevalleyBasis,
) -> Result<ExplicitRep> {
    let rs = &cb.rs;
    let rank = rs.rank;
    if !crate::parabolic::is_dominant(lambda, sigma, rank) {
        return Err(Error::NotDominant(lambda.to_string(), "Levi".into()));
    }
    let target = weyl_dimension(lambda, sigma, rs)? as usize;
    let levi_simple: Vec<usize> = (0..rank).filter(|i| !sigma.contains(i)).collect();
    let mut shap = Shapovalov { cb, lambda, memo: HashMap::new() };

    // breadth-first closure; each selected word must raise the Gram rank of
    // its weight space
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut weights: Vec<Weight> = vec![lambda.clone()];
    let mut frontier: Vec<(Vec<usize>, Weight)> = vec![(Vec::new(), lambda.clone())];
    while words.len() < target && !frontier.is_empty() {
        let mut candidates: BTreeMap<Weight, Vec<Vec<usize>>> = BTreeMap::new();
        for (w, wt) in &frontier {
            for &i in &levi_simple {
                let mut cand = Vec::with_capacity(w.len() + 1);
                cand.push(i);
                cand.extend_from_slice(w);
                let cwt = wt.sub(&rs.root_to_weight(&Root::simple(i, rank)));
                candidates.entry(cwt).or_default().push(cand);
            }
        }
        let mut next = Vec::new();
        for (cwt, mut cands) in candidates {
            cands.sort();
            cands.dedup();
            let mut chosen: Vec<Vec<usize>> = Vec::new();
            for cand in cands {
                // Gram rank test over the already-chosen words of cwt
                let m = chosen.len() + 1;
                let mut gram = QMatrix::zeros(m, m);
                for (a, wa) in chosen.iter().chain(std::iter::once(&cand)).enumerate() {
                    for (b, wb) in chosen.iter().chain(std::iter::once(&cand)).enumerate() {
                        gram[(a, b)] = shap.form(wa, wb);
                    }
                }
                if gram.rank() == m {
                    chosen.push(cand);
                }
            }
            for w in chosen {
                words.push(w.clone());
                weights.push(cwt.clone());
                next.push((w, cwt.clone()));
            }
        }
        frontier = next;
    }
    if words.len() != target {
        return Err(Error::Internal(format!(
            "closure produced {} vectors, Weyl dimension is {target}",
            words.len()
        )));
    }

    // indices grouped by weight, with the inverse Gram matrix per weight
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (idx, wt) in weights.iter().enumerate() {
        by_weight.entry(wt.clone()).or_default().push(idx);
    }
    let mut gram_inv: BTreeMap<Weight, QMatrix> = BTreeMap::new();
    for (wt, idxs) in &by_weight {
        let m = idxs.len();
        let gram = QMatrix::from_fn(m, m, |a, b| {
            let (wa, wb) = (&words[idxs[a]], &words[idxs[b]]);
            shap.form(wa, wb)
        });
        let inv = gram.inverse().ok_or_else(|| {
            Error::Internal(format!("singular Gram matrix at weight {wt}"))
        })?;
        gram_inv.insert(wt.clone(), inv);
    }

    let dim = words.len();
    let mut actions: HashMap<BasisElt, QMatrix> = HashMap::new();
    // Cartan: diagonal weight eigenvalues
    for j in 0..rank {
        let m = QMatrix::from_fn(dim, dim, |r, c| {
            if r == c { weights[c].coords[j].clone() } else { Q::zero() }
        });
        actions.insert(BasisElt::H(j), m);
    }
    // simple Levi raising/lowering: resolve images through the form
    for &i in &levi_simple {
        let alpha_i = rs.root_to_weight(&Root::simple(i, rank));
        let mut f_mat = QMatrix::zeros(dim, dim);
        let mut e_mat = QMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut lowered = vec![i];
            lowered.extend_from_slice(&words[col]);
            let low_wt = weights[col].sub(&alpha_i);
            if let Some(idxs) = by_weight.get(&low_wt) {
                let p: Vec<Q> =
                    idxs.iter().map(|&k| shap.form(&words[k], &lowered)).collect();
                let coeffs = gram_inv[&low_wt].mul_vec(&p);
                for (pos, &row) in idxs.iter().enumerate() {
                    f_mat[(row, col)] = coeffs[pos].clone();
                }
            }
            let up_wt = weights[col].add(&alpha_i);
            if let Some(idxs) = by_weight.get(&up_wt) {
                let p: Vec<Q> = idxs
                    .iter()
                    .map(|&k| {
                        let mut lk = vec![i];
                        lk.extend_from_slice(&words[k]);
                        shap.form(&lk, &words[col])
                    })
                    .collect();
                let coeffs = gram_inv[&up_wt].mul_vec(&p);
                for (pos, &row) in idxs.iter().enumerate() {
                    e_mat[(row, col)] = coeffs[pos].clone();
                }
            }
        }
        actions.insert(BasisElt::X(Root::simple(i, rank).neg()), f_mat);
        actions.insert(BasisElt::X(Root::simple(i, rank)), e_mat);
    }
    // non-simple Levi root vectors by bracketing up the heights
    let levi_pos: Vec<Root> = rs
        .positive_roots
        .iter()
        .filter(|a| sigma_height(a, sigma) == 0)
        .cloned()
        .collect();
    for alpha in &levi_pos {
        if alpha.height() == 1 {
            continue;
        }
        let (i, tail) = levi_simple
            .iter()
            .find_map(|&i| {
                let mut c = alpha.coords.clone();
                c[i] -= 1;
                let tail = Root { coords: c };
                if rs.is_root(&tail) && !cb.n(&Root::simple(i, rank), &tail).is_zero() {
                    Some((i, tail))
                } else {
                    None
                }
            })
            .ok_or_else(|| Error::Internal(format!("no decomposition for {alpha}")))?;
        let si = Root::simple(i, rank);
        let n_pos = cb.n(&si, &tail);
        let a = actions[&BasisElt::X(si.clone())].clone();
        let b = actions[&BasisElt::X(tail.clone())].clone();
        let x_alpha = a.mul(&b).sub(&b.mul(&a)).scale(&n_pos.recip());
        actions.insert(BasisElt::X(alpha.clone()), x_alpha);

        let n_neg = cb.n(&si.neg(), &tail.neg());
        let an = actions[&BasisElt::X(si.neg())].clone();
        let bn = actions[&BasisElt::X(tail.neg())].clone();
        let x_neg = an.mul(&bn).sub(&bn.mul(&an)).scale(&n_neg.recip());
        actions.insert(BasisElt::X(alpha.neg()), x_neg);
    }

    Ok(ExplicitRep { sigma: sigma.clone(), highest: lambda.clone(), weights, actions })
}

/// W_Levi-dominant conjugate: reflect negative uncrossed coordinates until
/// dominant. Crossed coordinates ride along.
pub fn levi_dominant_conjugate(
    lambda: &Weight,
    sigma: &BTreeSet<usize>,
    rs: &crate::rootsys::RootSystem,
) -> Weight {
    let mut w = lambda.clone();
    loop {
        let Some(i) = (0..rs.rank)
            .find(|i| !sigma.contains(i) && w.coords[*i] < Q::zero())
        else {
            return w;
        };
        w = rs.simple_reflection_weight(i, &w);
    }
}

/// The representation labelled by the negative of its lowest weight: the
/// Levi irreducible whose lowest weight is −λ.
pub fn build_irrep_by_lowest(
    lambda: &Weight,
    sigma: &BTreeSet<usize>,
    cb: &ChevalleyBasis,
) -> Result<ExplicitRep> {
    let highest = levi_dominant_conjugate(&lambda.neg(), sigma, &cb.rs);
    build_irrep(&highest, sigma, cb)
}

/// Exhaustive representation-property check: action([x,y]) equals the
/// commutator of actions for every pair of parabolic basis elements.
pub fn check_representation(rep: &ExplicitRep, cb: &ChevalleyBasis) -> Result<()> {
    let rs = &cb.rs;
    let mut gens: Vec<BasisElt> = (0..rs.rank).map(BasisElt::H).collect();
    for alpha in &rs.positive_roots {
        gens.push(BasisElt::X(alpha.clone()));
        if sigma_height(alpha, &rep.sigma) == 0 {
            gens.push(BasisElt::X(alpha.neg()));
        }
    }
    for x in &gens {
        for y in &gens {
            let ax = rep.action(x)?;
            let ay = rep.action(y)?;
            let commutator = ax.mul(&ay).sub(&ay.mul(&ax));
            let mut bracket_action = QMatrix::zeros(rep.dim(), rep.dim());
            for (e, c) in cb.bracket_basis(x, y) {
                bracket_action = bracket_action.add(&rep.action(&e)?.scale(&c));
            }
            if commutator != bracket_action {
                return Err(Error::Internal(format!(
                    "representation property fails on {x:?}, {y:?}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::freudenthal;
    use crate::rootsys::RootSystem;

    fn setup(spec: &str) -> ChevalleyBasis {
        ChevalleyBasis::new(&RootSystem::from_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn trivial_rep() {
        let cb = setup("A3");
        let sigma = BTreeSet::from([0usize]);
        let rep = build_irrep(&Weight::zero(3), &sigma, &cb).unwrap();
        assert_eq!(rep.dim(), 1);
        for i in 0..3 {
            assert!(rep.action(&BasisElt::H(i)).unwrap().is_zero());
        }
        check_representation(&rep, &cb).unwrap();
    }

    #[test]
    fn natural_rep_of_a2_levi() {
        let cb = setup("A3");
        let sigma = BTreeSet::from([0usize]);
        let rep = build_irrep(&Weight::from_ints(&[0, 1, 0]), &sigma, &cb).unwrap();
        assert_eq!(rep.dim(), 3);
        check_representation(&rep, &cb).unwrap();
    }

    #[test]
    fn sl2_adjoint_matrices() {
        let cb = setup("A1");
        let sigma = BTreeSet::new();
        let rep = build_irrep(&Weight::from_ints(&[2]), &sigma, &cb).unwrap();
        assert_eq!(rep.dim(), 3);
        check_representation(&rep, &cb).unwrap();
        let h = rep.action(&BasisElt::H(0)).unwrap();
        let mut eigen: Vec<Q> = (0..3).map(|i| h[(i, i)].clone()).collect();
        eigen.sort();
        assert_eq!(eigen, vec![q(-2), q(0), q(2)]);
    }

    #[test]
    fn weight_multisets_match_oracle() {
        let cb = setup("A3");
        for (sigma, lam) in [
            (BTreeSet::from([0usize]), Weight::from_ints(&[0, 1, 1])),
            (BTreeSet::from([0usize]), Weight::from_ints(&[2, 2, 0])),
            (BTreeSet::new(), Weight::from_ints(&[1, 0, 1])),
            (BTreeSet::new(), Weight::from_ints(&[1, 1, 0])),
        ] {
            let rep = build_irrep(&lam, &sigma, &cb).unwrap();
            let oracle = freudenthal(&lam, &sigma, &cb.rs).unwrap();
            assert_eq!(rep.weight_multiset(), oracle.entries, "λ={lam}");
            check_representation(&rep, &cb).unwrap();
        }
        let cbb = setup("B2");
        for lam in [Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1]), Weight::from_ints(&[1, 1])] {
            let rep = build_irrep(&lam, &BTreeSet::new(), &cbb).unwrap();
            let oracle = freudenthal(&lam, &BTreeSet::new(), &cbb.rs).unwrap();
            assert_eq!(rep.weight_multiset(), oracle.entries, "B2 λ={lam}");
            check_representation(&rep, &cbb).unwrap();
        }
    }

    #[test]
    fn lowest_weight_labelling() {
        // the module labelled λ contains −λ as its lowest weight: with
        // multiplicity one, and subtracting any Levi simple root leaves the
        // support
        let cb = setup("A3");
        let sigma = BTreeSet::from([0usize]);
        for lam in [Weight::from_ints(&[1, 1, 0]), Weight::from_ints(&[-2, 0, 2])] {
            let rep = build_irrep_by_lowest(&lam, &sigma, &cb).unwrap();
            let multiset = rep.weight_multiset();
            assert_eq!(multiset.get(&lam.neg()), Some(&1), "λ={lam}");
            for i in [1usize, 2] {
                let below = lam.neg().sub(&cb.rs.root_to_weight(&Root::simple(i, 3)));
                assert!(!multiset.contains_key(&below), "λ={lam}, i={i}");
            }
        }
    }

    #[test]
    fn nilradical_acts_as_zero() {
        let cb = setup("A3");
        let sigma = BTreeSet::from([0usize]);
        let rep = build_irrep(&Weight::from_ints(&[0, 1, 0]), &sigma, &cb).unwrap();
        let alpha1 = Root { coords: vec![1, 0, 0] };
        assert!(rep.action(&BasisElt::X(alpha1.clone())).unwrap().is_zero());
        assert!(rep.action(&BasisElt::X(alpha1.neg())).is_err());
    }
}
