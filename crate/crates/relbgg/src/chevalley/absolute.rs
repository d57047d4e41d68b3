//! The full nilradical chain complex Λ^*(q₊)⊗V for a module of the whole
//! algebra, filtered by the number of wedge factors from the deeper
//! nilradical p₊. The verification suite checks the bidegree decomposition
//! of the codifferential, the stability of the filtration, and that the
//! projections onto relative chains with nilradical-homology coefficients
//! are chain maps inducing isomorphisms degree by degree.

use crate::chevalley::basis::{BasisElt, ChevalleyBasis};
use crate::chevalley::complex::{
    binomial, chain_action, codifferential, columns_matrix, k_subsets, relative_complex_over,
    subset_positions, Check, Coefficients, RelativeComplex, Report, MAX_CHAIN_DIM,
};
use crate::chevalley::irrep::{build_irrep_by_lowest, levi_dominant_conjugate};
use crate::homology::relative_homology;
use crate::linalg::QMatrix;
use crate::oracle::weyl_dimension;
use crate::parabolic::{sigma_height, ParabolicPair, DEFAULT_ORBIT_CAP};
use crate::rootsys::{Root, Weight};
use crate::{Error, Q, Result};
use num::Zero;
use std::collections::{BTreeSet, HashMap};

/// Λ^*(q₊)⊗V with the codifferential split by how many wedge factors lie in
/// p₊. Generators are ordered with the intermediate roots (q₊∩p₀) first and
/// the deeper ones (p₊) second, so every sorted monomial is a concatenation
/// of an intermediate part and a deep part.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    pub pair: ParabolicPair,
    pub lambda: Weight,
    pub mid: Vec<Root>,
    pub pplus: Vec<Root>,
    pub gens: Vec<BasisElt>,
    pub coeff: Coefficients,
    pub subsets: Vec<Vec<Vec<usize>>>,
    /// d_star[k]: C_k → C_{k−1}, k = 0..=top+1 (ends empty).
    pub d_star: Vec<QMatrix>,
    /// The bidegree (−1,0) piece (removes an intermediate factor).
    pub d1: Vec<QMatrix>,
    /// The bidegree (0,−1) piece (removes a deep factor).
    pub d2: Vec<QMatrix>,
}

impl FilteredComplex {
    pub fn top(&self) -> usize {
        self.mid.len() + self.pplus.len()
    }

    pub fn chain_dim(&self, k: usize) -> usize {
        if k > self.top() {
            0
        } else {
            self.subsets[k].len() * self.coeff.dim()
        }
    }

    /// Number of deep (p₊) factors in a monomial subset.
    pub fn deep_count(&self, subset: &[usize]) -> usize {
        let nm = self.mid.len();
        subset.iter().filter(|&&i| i >= nm).count()
    }

    pub fn homology_dim(&self, k: usize) -> usize {
        self.chain_dim(k) - self.d_star[k].rank() - self.d_star[k + 1].rank()
    }

    /// Selection matrix for the span of degree-k monomials with at least
    /// (`at_least`) deep factors.
    pub fn filtration_basis(&self, k: usize, at_least: usize) -> QMatrix {
        let dv = self.coeff.dim();
        let dim = self.chain_dim(k);
        let mut cols = Vec::new();
        for (si, s) in self.subsets[k].iter().enumerate() {
            if self.deep_count(s) >= at_least {
                for v in 0..dv {
                    let mut e = vec![Q::zero(); dim];
                    e[si * dv + v] = crate::q(1);
                    cols.push(e);
                }
            }
        }
        columns_matrix(&cols, dim)
    }
}

/// Build the filtered complex for the whole-algebra module labelled by λ
/// (the negative of its lowest weight, as everywhere in this crate).
pub fn filtered_complex(
    lambda: &Weight,
    pair: &ParabolicPair,
    cb: &ChevalleyBasis,
) -> Result<FilteredComplex> {
    let rs = &cb.rs;
    let empty: BTreeSet<usize> = BTreeSet::new();
    let highest = levi_dominant_conjugate(&lambda.neg(), &empty, rs);
    let dv = weyl_dimension(&highest, &empty, rs)? as usize;
    let part = pair.partition(rs);
    let n = part.mid.len() + part.pplus.len();
    for k in 0..=n {
        let dim = binomial(n, k) * dv;
        if dim > MAX_CHAIN_DIM {
            return Err(Error::TooLarge(dim, MAX_CHAIN_DIM));
        }
    }
    let rep = build_irrep_by_lowest(lambda, &empty, cb)?;
    let coeff = Coefficients::from_rep(&rep, cb)?;

    let mid = part.mid;
    let pplus = part.pplus;
    let gens: Vec<BasisElt> = mid
        .iter()
        .chain(&pplus)
        .map(|r| BasisElt::X(r.clone()))
        .collect();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();

    let mut d_star: Vec<QMatrix> = Vec::with_capacity(n + 2);
    for k in 0..=n {
        // q₊ is bracket-closed, so nothing escapes the span
        d_star.push(codifferential(k, &gens, &coeff, cb, false)?);
    }
    d_star.push(QMatrix::zeros(binomial(n, n) * dv, 0));
    for k in 0..n {
        if !d_star[k].mul(&d_star[k + 1]).is_zero() {
            return Err(Error::Internal(format!(
                "codifferential does not square to zero at degree {}",
                k + 1
            )));
        }
    }

    // split each degree by the change in the number of deep factors
    let nm = mid.len();
    let dvq = coeff.dim();
    let mut d1: Vec<QMatrix> = Vec::with_capacity(n + 1);
    let mut d2: Vec<QMatrix> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let m = &d_star[k];
        let mut m1 = QMatrix::zeros(m.rows, m.cols);
        let mut m2 = QMatrix::zeros(m.rows, m.cols);
        let deep = |s: &Vec<usize>| s.iter().filter(|&&i| i >= nm).count();
        let col_deep: Vec<usize> = subsets[k].iter().map(deep).collect();
        let row_deep: Vec<usize> =
            if k == 0 { Vec::new() } else { subsets[k - 1].iter().map(deep).collect() };
        for c in 0..m.cols {
            for r in 0..m.rows {
                let x = &m[(r, c)];
                if x.is_zero() {
                    continue;
                }
                let sc = col_deep[c / dvq];
                let sr = row_deep[r / dvq];
                if sr == sc {
                    m1[(r, c)] = x.clone();
                } else if sr + 1 == sc {
                    m2[(r, c)] = x.clone();
                } else {
                    return Err(Error::Internal(format!(
                        "codifferential entry changes the deep factor count by {}",
                        sc as i64 - sr as i64
                    )));
                }
            }
        }
        d1.push(m1);
        d2.push(m2);
    }

    Ok(FilteredComplex {
        pair: pair.clone(),
        lambda: lambda.clone(),
        mid,
        pplus,
        gens,
        coeff,
        subsets,
        d_star,
        d1,
        d2,
    })
}

/// One homology space H_ℓ(p₊, V) in explicit coordinates: kernel, image,
/// weight-homogeneous representatives, and the induced module structure for
/// the Levi of p.
#[derive(Debug, Clone)]
pub struct HomologyLevel {
    pub ker: QMatrix,
    pub im: QMatrix,
    /// Representative columns completing the image to the kernel.
    pub reps: QMatrix,
    /// [im | reps]: an independent spanning set of the kernel, used to read
    /// off quotient coordinates.
    pub basis: QMatrix,
    pub coeff: Coefficients,
}

impl HomologyLevel {
    pub fn dim(&self) -> usize {
        self.reps.cols
    }

    /// Quotient coordinates of a kernel vector, or None if it is not in the
    /// kernel.
    pub fn project(&self, x: &[Q]) -> Option<Vec<Q>> {
        let y = self.basis.solve(x)?;
        Some(y[self.im.cols..].to_vec())
    }
}

/// The chain complex of the deeper nilradical, Λ^*(p₊)⊗V, together with all
/// of its homology spaces as modules for the Levi of p.
#[derive(Debug, Clone)]
pub struct NilradicalHomology {
    pub gens: Vec<BasisElt>,
    /// d_star[ℓ]: C_ℓ → C_{ℓ−1}, ℓ = 0..=top+1.
    pub d_star: Vec<QMatrix>,
    pub levels: Vec<HomologyLevel>,
}

pub fn nilradical_homology(
    pplus: &[Root],
    coeff: &Coefficients,
    pair: &ParabolicPair,
    cb: &ChevalleyBasis,
) -> Result<NilradicalHomology> {
    let rs = &cb.rs;
    let np = pplus.len();
    let dv = coeff.dim();
    let gens: Vec<BasisElt> = pplus.iter().map(|r| BasisElt::X(r.clone())).collect();
    let mut d_star: Vec<QMatrix> = Vec::with_capacity(np + 2);
    for l in 0..=np {
        d_star.push(codifferential(l, &gens, coeff, cb, false)?);
    }
    d_star.push(QMatrix::zeros(binomial(np, np) * dv, 0));

    // the acting basis: everything of zero Σ_p-height
    let mut p0_gens: Vec<BasisElt> = (0..rs.rank).map(BasisElt::H).collect();
    for alpha in &rs.positive_roots {
        if sigma_height(alpha, &pair.sigma_p) == 0 {
            p0_gens.push(BasisElt::X(alpha.clone()));
            p0_gens.push(BasisElt::X(alpha.neg()));
        }
    }

    let mut levels = Vec::with_capacity(np + 1);
    for l in 0..=np {
        let dim = binomial(np, l) * dv;
        let ker = columns_matrix(&d_star[l].nullspace(), dim);
        let im = columns_matrix(&d_star[l + 1].column_space(), dim);

        // weight of each chain coordinate
        let subs = k_subsets(np, l);
        let wt_of = |idx: usize| -> Weight {
            let (s, v) = (idx / dv, idx % dv);
            let mut w = coeff.weights[v].clone();
            for &g in &subs[s] {
                w = w.add(&rs.root_to_weight(&pplus[g]));
            }
            w
        };
        let mut by_weight: HashMap<Weight, Vec<usize>> = HashMap::new();
        for idx in 0..dim {
            by_weight.entry(wt_of(idx)).or_default().push(idx);
        }
        let mut weights_sorted: Vec<&Weight> = by_weight.keys().collect();
        weights_sorted.sort_by_key(|w| w.to_string());

        // pick homogeneous representatives weight block by weight block
        let mut rep_cols: Vec<Vec<Q>> = Vec::new();
        let mut rep_wts: Vec<Weight> = Vec::new();
        for w in weights_sorted {
            let idxs = &by_weight[w];
            // kernel vectors supported on this weight block
            let sub = QMatrix::from_fn(d_star[l].rows.max(1), idxs.len(), |r, c| {
                if d_star[l].rows == 0 { Q::zero() } else { d_star[l][(r, idxs[c])].clone() }
            });
            let mut chosen = im.clone();
            for small in sub.nullspace() {
                let mut full = vec![Q::zero(); dim];
                for (pos, &idx) in idxs.iter().enumerate() {
                    full[idx] = small[pos].clone();
                }
                let cand = columns_matrix(std::slice::from_ref(&full), dim);
                if !chosen.contains_columns(&cand) {
                    chosen = chosen.hstack(&cand);
                    rep_cols.push(full);
                    rep_wts.push(w.clone());
                }
            }
        }
        let reps = columns_matrix(&rep_cols, dim);
        let basis = im.hstack(&reps);
        let h = reps.cols;

        // induced module structure on the quotient
        let mut actions = HashMap::new();
        for x in &p0_gens {
            let a = chain_action(x, l, &gens, coeff, cb, false)?;
            let mut mat = QMatrix::zeros(h, h);
            for j in 0..h {
                let moved = a.mul_vec(&reps.column(j));
                let Some(coords) = basis.solve(&moved) else {
                    return Err(Error::Internal(format!(
                        "action of {x:?} does not preserve the homology kernel at level {l}"
                    )));
                };
                for i in 0..h {
                    mat[(i, j)] = coords[im.cols + i].clone();
                }
            }
            actions.insert(x.clone(), mat);
        }
        levels.push(HomologyLevel {
            ker,
            im,
            reps,
            basis,
            coeff: Coefficients { weights: rep_wts, actions },
        });
    }
    Ok(NilradicalHomology { gens, d_star, levels })
}

/// Extraction matrix: the degree-k chains with exactly `level` deep factors,
/// rewritten as Λ^{k−level}(q₊∩p₀) ⊗ C_level(p₊) coordinates.
fn level_extraction(fc: &FilteredComplex, k: usize, level: usize) -> QMatrix {
    let nm = fc.mid.len();
    let np = fc.pplus.len();
    let dv = fc.coeff.dim();
    let r = k - level;
    let mid_subs = k_subsets(nm, r);
    let deep_subs = k_subsets(np, level);
    let mid_pos = subset_positions(&mid_subs);
    let deep_pos = subset_positions(&deep_subs);
    let dc = deep_subs.len() * dv;
    let mut m = QMatrix::zeros(mid_subs.len() * dc, fc.chain_dim(k));
    for (si, s) in fc.subsets[k].iter().enumerate() {
        if fc.deep_count(s) != level {
            continue;
        }
        let rpart: Vec<usize> = s.iter().copied().filter(|&i| i < nm).collect();
        let ppart: Vec<usize> = s.iter().filter(|&&i| i >= nm).map(|&i| i - nm).collect();
        let ri = mid_pos[&rpart];
        let pi = deep_pos[&ppart];
        for v in 0..dv {
            m[(ri * dc + (pi * dv + v), si * dv + v)] = crate::q(1);
        }
    }
    m
}

/// Apply the level-ℓ projection to one chain vector: take the component with
/// exactly ℓ deep factors and pass each intermediate-monomial coefficient to
/// the homology quotient. None if some coefficient is not a kernel vector.
fn project_chain(
    fc: &FilteredComplex,
    nh: &NilradicalHomology,
    level: usize,
    extraction: &QMatrix,
    col: &[Q],
) -> Option<Vec<Q>> {
    let lv = &nh.levels[level];
    let dv = fc.coeff.dim();
    let dc = binomial(fc.pplus.len(), level) * dv;
    let h = lv.dim();
    let z = extraction.mul_vec(col);
    let n_mid = z.len() / dc;
    let mut out = vec![Q::zero(); n_mid * h];
    for ri in 0..n_mid {
        let block = &z[ri * dc..(ri + 1) * dc];
        let coords = lv.project(block)?;
        out[ri * h..(ri + 1) * h].clone_from_slice(&coords);
    }
    Some(out)
}

fn bigrading_check(fc: &FilteredComplex) -> Check {
    let mut failures = Vec::new();
    for k in 0..=fc.top() {
        if fc.d1[k].add(&fc.d2[k]) != fc.d_star[k] {
            failures.push(format!("degree {k}: the two pieces do not sum to d*"));
        }
        if k > 0 {
            if !fc.d1[k - 1].mul(&fc.d1[k]).is_zero() {
                failures.push(format!("degree {k}: first piece does not square to zero"));
            }
            if !fc.d2[k - 1].mul(&fc.d2[k]).is_zero() {
                failures.push(format!("degree {k}: second piece does not square to zero"));
            }
            let anti = fc.d1[k - 1].mul(&fc.d2[k]).add(&fc.d2[k - 1].mul(&fc.d1[k]));
            if !anti.is_zero() {
                failures.push(format!("degree {k}: the two pieces do not anticommute"));
            }
        }
    }
    if failures.is_empty() {
        Check::new("bigrading", true, "d* = d₁ + d₂ with d₁² = d₂² = d₁d₂+d₂d₁ = 0".into())
    } else {
        Check::new("bigrading", false, failures.join("; "))
    }
}

/// The bidegree (0,−1) piece acts as (−1)^r ⊗ the deep-nilradical
/// codifferential, where r is the number of intermediate factors.
fn deep_factor_check(fc: &FilteredComplex, nh: &NilradicalHomology) -> Check {
    let dv = fc.coeff.dim();
    let nm = fc.mid.len();
    let np = fc.pplus.len();
    let mut failures = Vec::new();
    for k in 0..=fc.top() {
        let mut expected = QMatrix::zeros(fc.d2[k].rows, fc.d2[k].cols);
        if k > 0 {
            for l in 1..=k.min(np) {
                let r = k - l;
                if r > nm {
                    continue;
                }
                let ext_in = level_extraction(fc, k, l);
                let ext_out = level_extraction(fc, k - 1, l - 1);
                // (−1)^r id ⊗ d_p on the (r, l) component, transported back
                let dp = &nh.d_star[l];
                let n_mid = binomial(nm, r);
                let dc_in = binomial(np, l) * dv;
                let dc_out = binomial(np, l - 1) * dv;
                let mut blk = QMatrix::zeros(n_mid * dc_out, n_mid * dc_in);
                for ri in 0..n_mid {
                    for c in 0..dc_in {
                        for rr in 0..dc_out {
                            let x = &dp[(rr, c)];
                            if !x.is_zero() {
                                let v = if r % 2 == 1 { -x.clone() } else { x.clone() };
                                blk[(ri * dc_out + rr, ri * dc_in + c)] = v;
                            }
                        }
                    }
                }
                expected = expected.add(&ext_out.transpose().mul(&blk).mul(&ext_in));
            }
        }
        if expected != fc.d2[k] {
            failures.push(format!(
                "degree {k}: second piece differs from the signed deep codifferential"
            ));
        }
    }
    if failures.is_empty() {
        Check::new("deep-factor", true, "d₂ = (−1)^r id ⊗ d_p on every bidegree".into())
    } else {
        Check::new("deep-factor", false, failures.join("; "))
    }
}

fn filtration_check(fc: &FilteredComplex, cb: &ChevalleyBasis) -> Check {
    let rs = &cb.rs;
    let np = fc.pplus.len();
    let mut failures = Vec::new();
    // d* drops the filtration level by at most one
    for k in 1..=fc.top() {
        for l in 1..=k.min(np) {
            let f = fc.filtration_basis(k, l);
            let target = fc.filtration_basis(k - 1, l - 1);
            if !target.contains_columns(&fc.d_star[k].mul(&f)) {
                failures.push(format!("degree {k}: d* drops level {l} by more than one"));
            }
        }
    }
    // the filtration is stable under all of q
    let mut q_gens: Vec<BasisElt> = (0..rs.rank).map(BasisElt::H).collect();
    for alpha in &rs.positive_roots {
        if sigma_height(alpha, &fc.pair.sigma_q) == 0 {
            q_gens.push(BasisElt::X(alpha.clone()));
            q_gens.push(BasisElt::X(alpha.neg()));
        } else {
            q_gens.push(BasisElt::X(alpha.clone()));
        }
    }
    for k in 0..=fc.top() {
        let acts: Vec<QMatrix> = match q_gens
            .iter()
            .map(|x| chain_action(x, k, &fc.gens, &fc.coeff, cb, false))
            .collect::<Result<_>>()
        {
            Ok(v) => v,
            Err(e) => return Check::new("filtration", false, e.to_string()),
        };
        for l in 1..=k.min(np) {
            let f = fc.filtration_basis(k, l);
            for a in &acts {
                if !f.contains_columns(&a.mul(&f)) {
                    failures.push(format!("degree {k}: level {l} not stable under q"));
                }
            }
        }
    }
    if failures.is_empty() {
        Check::new(
            "filtration",
            true,
            "d* shifts the level by at most one; every level is q-stable".into(),
        )
    } else {
        failures.dedup();
        Check::new("filtration", false, failures.join("; "))
    }
}

/// Compare the ranks of both nilradical complexes against the Weyl-orbit
/// dimension formulas.
fn orbit_dimension_check(
    fc: &FilteredComplex,
    nh: &NilradicalHomology,
    cb: &ChevalleyBasis,
) -> Check {
    let rs = &cb.rs;
    let mut failures = Vec::new();
    let mut details = Vec::new();

    let abs_pair = match ParabolicPair::new([], fc.pair.sigma_q.iter().copied(), rs.rank) {
        Ok(p) => p,
        Err(e) => return Check::new("orbit-dimensions", false, e.to_string()),
    };
    match relative_homology(&fc.lambda, &abs_pair, rs, DEFAULT_ORBIT_CAP) {
        Ok(entries) => {
            let mut predicted = vec![0u64; fc.top() + 1];
            for e in &entries {
                match weyl_dimension(&e.nu, &fc.pair.sigma_q, rs) {
                    Ok(d) => predicted[e.degree] += d,
                    Err(err) => return Check::new("orbit-dimensions", false, err.to_string()),
                }
            }
            let mut dims = Vec::new();
            for k in 0..=fc.top() {
                let actual = fc.homology_dim(k) as u64;
                if actual != predicted[k] {
                    failures.push(format!(
                        "full complex degree {k}: rank gives {actual}, orbit predicts {}",
                        predicted[k]
                    ));
                }
                dims.push(actual.to_string());
            }
            details.push(format!("H_*(q₊) = ({})", dims.join(",")));
        }
        Err(e) => return Check::new("orbit-dimensions", false, e.to_string()),
    }

    let p_pair = match ParabolicPair::new([], fc.pair.sigma_p.iter().copied(), rs.rank) {
        Ok(p) => p,
        Err(e) => return Check::new("orbit-dimensions", false, e.to_string()),
    };
    match relative_homology(&fc.lambda, &p_pair, rs, DEFAULT_ORBIT_CAP) {
        Ok(entries) => {
            let np = fc.pplus.len();
            let mut predicted = vec![0u64; np + 1];
            for e in &entries {
                match weyl_dimension(&e.nu, &fc.pair.sigma_p, rs) {
                    Ok(d) => predicted[e.degree] += d,
                    Err(err) => return Check::new("orbit-dimensions", false, err.to_string()),
                }
            }
            let mut dims = Vec::new();
            for l in 0..=np {
                let actual = nh.levels[l].dim() as u64;
                if actual != predicted[l] {
                    failures.push(format!(
                        "deep complex level {l}: rank gives {actual}, orbit predicts {}",
                        predicted[l]
                    ));
                }
                dims.push(actual.to_string());
            }
            details.push(format!("H_*(p₊) = ({})", dims.join(",")));
        }
        Err(e) => return Check::new("orbit-dimensions", false, e.to_string()),
    }

    if failures.is_empty() {
        Check::new("orbit-dimensions", true, details.join("; "))
    } else {
        Check::new("orbit-dimensions", false, failures.join("; "))
    }
}

/// Basis of the subspace of the level-ℓ filtration step whose leading
/// component has kernel-valued coefficients (the domain of the projection).
fn projectable_basis(
    fc: &FilteredComplex,
    nh: &NilradicalHomology,
    k: usize,
    level: usize,
) -> QMatrix {
    let f = fc.filtration_basis(k, level);
    let ext = level_extraction(fc, k, level);
    let dv = fc.coeff.dim();
    let np = fc.pplus.len();
    let dc = binomial(np, level) * dv;
    let n_mid = binomial(fc.mid.len(), k - level);
    // id ⊗ d_p applied to the leading component
    let dp = &nh.d_star[level];
    let mut idp = QMatrix::zeros(n_mid * dp.rows, n_mid * dc);
    for ri in 0..n_mid {
        for c in 0..dc {
            for r in 0..dp.rows {
                let x = &dp[(r, c)];
                if !x.is_zero() {
                    idp[(ri * dp.rows + r, ri * dc + c)] = x.clone();
                }
            }
        }
    }
    let test = idp.mul(&ext).mul(&f);
    let null = columns_matrix(&test.nullspace(), f.cols);
    f.mul(&null)
}

/// The projections onto relative chains with homology coefficients: chain
/// maps up to a per-bidegree sign, vanishing on boundaries, and inducing
/// maps of full rank whose ranks add up across levels to the homology of the
/// full complex.
fn projection_checks(
    fc: &FilteredComplex,
    nh: &NilradicalHomology,
    rels: &[RelativeComplex],
) -> (Check, Check) {
    let np = fc.pplus.len();
    let nm = fc.mid.len();
    let mut chain_failures = Vec::new();
    let mut transfer_failures = Vec::new();
    let mut signs = Vec::new();
    let mut rank_details = Vec::new();

    for k in 0..=fc.top() {
        let ker = columns_matrix(&fc.d_star[k].nullspace(), fc.chain_dim(k));
        let im = columns_matrix(&fc.d_star[k + 1].column_space(), fc.chain_dim(k));
        let mut rank_sum = 0usize;
        for l in 0..=k.min(np) {
            if k - l > nm {
                continue;
            }
            let rel = &rels[l];
            let h = nh.levels[l].dim();
            let ext_k = level_extraction(fc, k, l);
            let ftil = projectable_basis(fc, nh, k, l);

            // the projection is defined on the whole domain
            let mut proj_cols = Vec::new();
            let mut defined = true;
            for j in 0..ftil.cols {
                match project_chain(fc, nh, l, &ext_k, &ftil.column(j)) {
                    Some(p) => proj_cols.push(p),
                    None => {
                        defined = false;
                        break;
                    }
                }
            }
            if !defined {
                chain_failures
                    .push(format!("(k,ℓ)=({k},{l}): projection undefined on its domain"));
                continue;
            }
            let out_dim = binomial(nm, k - l) * h;
            let proj = columns_matrix(&proj_cols, out_dim);

            // chain map up to one sign for the whole bidegree
            if k - l >= 1 {
                let ext_km1 = level_extraction(fc, k - 1, l);
                let moved = fc.d_star[k].mul(&ftil);
                let mut lhs_cols = Vec::new();
                let mut ok_domain = true;
                for j in 0..moved.cols {
                    match project_chain(fc, nh, l, &ext_km1, &moved.column(j)) {
                        Some(p) => lhs_cols.push(p),
                        None => {
                            ok_domain = false;
                            break;
                        }
                    }
                }
                if !ok_domain {
                    chain_failures.push(format!(
                        "(k,ℓ)=({k},{l}): d* leaves the projectable subspace"
                    ));
                } else {
                    let lhs = columns_matrix(&lhs_cols, binomial(nm, k - l - 1) * h);
                    let rhs = rel.d_star[k - l].mul(&proj);
                    if lhs == rhs {
                        signs.push(format!("({k},{l}):+"));
                    } else if lhs == rhs.scale(&-crate::q(1)) {
                        signs.push(format!("({k},{l}):−"));
                    } else {
                        chain_failures.push(format!(
                            "(k,ℓ)=({k},{l}): projection is not a chain map up to sign"
                        ));
                    }
                }
            }

            // boundaries inside the filtration project into boundaries
            let bnd = columns_matrix(
                &QMatrix::column_intersection(&im, &ftil),
                fc.chain_dim(k),
            );
            let rel_im = columns_matrix(
                &rel.d_star[k - l + 1].column_space(),
                rel.chain_dim(k - l),
            );
            let mut bnd_proj = Vec::new();
            for j in 0..bnd.cols {
                match project_chain(fc, nh, l, &ext_k, &bnd.column(j)) {
                    Some(p) => bnd_proj.push(p),
                    None => {
                        transfer_failures.push(format!(
                            "(k,ℓ)=({k},{l}): a boundary escapes the projection domain"
                        ));
                        break;
                    }
                }
            }
            let bnd_proj = columns_matrix(&bnd_proj, out_dim);
            if !rel_im.contains_columns(&bnd_proj) {
                transfer_failures.push(format!(
                    "(k,ℓ)=({k},{l}): boundaries do not project into boundaries"
                ));
            }

            // the induced map on homology has the full relative rank
            let cyc = columns_matrix(
                &QMatrix::column_intersection(&ker, &ftil),
                fc.chain_dim(k),
            );
            let mut cyc_proj = Vec::new();
            let mut cyc_ok = true;
            for j in 0..cyc.cols {
                match project_chain(fc, nh, l, &ext_k, &cyc.column(j)) {
                    Some(p) => cyc_proj.push(p),
                    None => {
                        cyc_ok = false;
                        break;
                    }
                }
            }
            if !cyc_ok {
                transfer_failures
                    .push(format!("(k,ℓ)=({k},{l}): a cycle escapes the projection domain"));
                continue;
            }
            let cyc_proj = columns_matrix(&cyc_proj, out_dim);
            let induced = rel_im.hstack(&cyc_proj).rank() - rel_im.rank();
            let expected = rel.homology_dim(k - l);
            if induced != expected {
                transfer_failures.push(format!(
                    "(k,ℓ)=({k},{l}): induced rank {induced}, relative homology has {expected}"
                ));
            }
            rank_sum += induced;
        }
        let total = fc.homology_dim(k);
        if rank_sum != total {
            transfer_failures.push(format!(
                "degree {k}: level ranks add to {rank_sum}, full homology has {total}"
            ));
        }
        rank_details.push(format!("H_{k}={total}"));
    }

    let chain_check = if chain_failures.is_empty() {
        Check::new("projection-chain-map", true, format!("signs {}", signs.join(" ")))
    } else {
        Check::new("projection-chain-map", false, chain_failures.join("; "))
    };
    let transfer_check = if transfer_failures.is_empty() {
        Check::new("homology-transfer", true, rank_details.join(", "))
    } else {
        Check::new("homology-transfer", false, transfer_failures.join("; "))
    };
    (chain_check, transfer_check)
}

/// Run the full filtration suite for one instance: build Λ^*(q₊)⊗V, the deep
/// complex and its homology modules, one relative complex per homology level,
/// and all checks.
pub fn verify_filtration(
    lambda: &Weight,
    pair: &ParabolicPair,
    cb: &ChevalleyBasis,
) -> Result<Report> {
    let rs = &cb.rs;
    let sp: Vec<String> = pair.sigma_p.iter().map(|i| (i + 1).to_string()).collect();
    let sq: Vec<String> = pair.sigma_q.iter().map(|i| (i + 1).to_string()).collect();
    let instance = format!(
        "{} p={{{}}} q={{{}}} lambda={}",
        rs.label(),
        sp.join(","),
        sq.join(","),
        lambda
    );
    let fc = filtered_complex(lambda, pair, cb)?;
    let nh = nilradical_homology(&fc.pplus, &fc.coeff, pair, cb)?;
    let mut rels = Vec::with_capacity(nh.levels.len());
    for level in &nh.levels {
        rels.push(relative_complex_over(lambda, pair, cb, level.coeff.clone())?);
    }
    let mut checks = Vec::new();
    checks.push(Check::new(
        "complex-property",
        true,
        "d*∘d* = 0 for the full and level complexes (asserted during construction)".into(),
    ));
    checks.push(bigrading_check(&fc));
    checks.push(deep_factor_check(&fc, &nh));
    checks.push(filtration_check(&fc, cb));
    checks.push(orbit_dimension_check(&fc, &nh, cb));
    let (chain_check, transfer_check) = projection_checks(&fc, &nh, &rels);
    checks.push(chain_check);
    checks.push(transfer_check);
    Ok(Report { instance, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyBasis;
    use crate::rootsys::RootSystem;

    fn setup(spec: &str, p: &[usize], qn: &[usize]) -> (ChevalleyBasis, ParabolicPair) {
        let rs = RootSystem::from_spec(spec).unwrap();
        let rank = rs.rank;
        let cb = ChevalleyBasis::new(&rs).unwrap();
        let pair = ParabolicPair::new(p.iter().copied(), qn.iter().copied(), rank).unwrap();
        (cb, pair)
    }

    #[test]
    fn filtration_suite_a3() {
        let (cb, pair) = setup("A3", &[0], &[0, 1]);
        for coords in [[0i64, 0, 0], [1, 0, 0]] {
            let lambda = Weight::from_ints(&coords);
            let report = verify_filtration(&lambda, &pair, &cb).unwrap();
            for c in &report.checks {
                assert!(c.ok, "{}: {} failed: {}", report.instance, c.name, c.details);
            }
        }
    }

    #[test]
    fn filtration_suite_a2() {
        let (cb, pair) = setup("A2", &[0], &[0, 1]);
        for coords in [[0i64, 0], [1, 1]] {
            let lambda = Weight::from_ints(&coords);
            let report = verify_filtration(&lambda, &pair, &cb).unwrap();
            for c in &report.checks {
                assert!(c.ok, "{}: {} failed: {}", report.instance, c.name, c.details);
            }
        }
    }

    #[test]
    fn filtration_suite_b2() {
        let (cb, pair) = setup("B2", &[1], &[0, 1]);
        let lambda = Weight::from_ints(&[0, 1]);
        let report = verify_filtration(&lambda, &pair, &cb).unwrap();
        for c in &report.checks {
            assert!(c.ok, "{}: {} failed: {}", report.instance, c.name, c.details);
        }
    }
}
