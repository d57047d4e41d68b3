//! Chevalley basis with integer structure constants, built deterministically
//! by the extraspecial-pair method, plus the full bracket table, ad-matrices,
//! and the (trace-form) Killing pairing used to normalize dual bases.

use crate::linalg::QMatrix;
use crate::rootsys::{Root, RootSystem};
use crate::{q, Error, Q, Result};
use num::Zero;
use std::collections::{BTreeMap, HashMap};

/// Basis element of the Lie algebra: a simple coroot h_i or a root vector
/// x_α (α any root, positive or negative).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElt {
    H(usize),
    X(Root),
}

/// A Lie algebra element as a sparse rational combination of basis elements.
pub type LieElt = BTreeMap<BasisElt, Q>;

pub fn lie_add_term(elt: &mut LieElt, b: BasisElt, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match elt.entry(b) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    pub rs: RootSystem,
    /// N_{α,β} for positive special pairs (α, β) keyed in root order α < β.
    n_pos: HashMap<(Vec<i64>, Vec<i64>), i64>,
    /// Ambient basis in a fixed order: h's, then x_α (positive then
    /// negative roots, each in root order).
    basis: Vec<BasisElt>,
    index: HashMap<BasisElt, usize>,
}

impl ChevalleyBasis {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let mut n_pos = HashMap::new();
        let pos = rs.positive_roots.clone();
        let order: HashMap<Vec<i64>, usize> =
            pos.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
        // fill by increasing height of the sum, so every reference in the
        // Jacobi relation below is already resolved
        for rho in &pos {
            let special: Vec<(Root, Root)> = pos
                .iter()
                .filter_map(|xi| {
                    let eta = rho.add(&xi.neg());
                    if eta.is_positive()
                        && rs.is_root(&eta)
                        && order[&xi.coords] < order[&eta.coords]
                    {
                        Some((xi.clone(), eta))
                    } else {
                        None
                    }
                })
                .collect();
            let Some((alpha, beta)) = special.first().cloned() else {
                continue; // simple root: no decomposition
            };
            // extraspecial pair: N = p+1 with p the depth of the α-string
            // through β
            let mut p = 0i64;
            let mut probe = beta.add(&alpha.neg());
            while rs.is_root(&probe) {
                p += 1;
                probe = probe.add(&alpha.neg());
            }
            n_pos.insert((alpha.coords.clone(), beta.coords.clone()), p + 1);
            // remaining special pairs from the Jacobi identity on
            // (x_{−α}, x_ξ, x_η):
            //   N_{ξ,η} N_{−α,ρ} + N_{η,−α} N_{ξ,η−α} + N_{−α,ξ} N_{η,ξ−α} = 0
            for (xi, eta) in special.iter().skip(1) {
                let helper = PartialTable { rs, n_pos: &n_pos };
                let neg_a = alpha.neg();
                let denom = helper.n(&neg_a, rho);
                if denom.is_zero() {
                    return Err(Error::Internal(
                        "vanishing extraspecial reference constant".into(),
                    ));
                }
                let t1 = helper.n(eta, &neg_a) * helper.n(xi, &eta.add(&neg_a));
                let t2 = helper.n(&neg_a, xi) * helper.n(eta, &xi.add(&neg_a));
                let val = -(t1 + t2) / denom;
                if !val.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integer structure constant {val}"
                    )));
                }
                let val: i64 = val
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Internal("structure constant overflow".into()))?;
                n_pos.insert((xi.coords.clone(), eta.coords.clone()), val);
            }
        }
        let mut basis: Vec<BasisElt> = (0..rs.rank).map(BasisElt::H).collect();
        basis.extend(pos.iter().map(|r| BasisElt::X(r.clone())));
        basis.extend(pos.iter().map(|r| BasisElt::X(r.neg())));
        let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Ok(ChevalleyBasis { rs: rs.clone(), n_pos, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_list(&self) -> &[BasisElt] {
        &self.basis
    }

    pub fn index_of(&self, b: &BasisElt) -> usize {
        self.index[b]
    }

    /// N_{x,y} for arbitrary roots with x+y a root; 0 otherwise.
    pub fn n(&self, x: &Root, y: &Root) -> Q {
        PartialTable { rs: &self.rs, n_pos: &self.n_pos }.n(x, y)
    }

    /// [a, b] for basis elements, expanded in the basis.
    pub fn bracket_basis(&self, a: &BasisElt, b: &BasisElt) -> LieElt {
        let mut out = LieElt::new();
        match (a, b) {
            (BasisElt::H(_), BasisElt::H(_)) => {}
            (BasisElt::H(i), BasisElt::X(beta)) => {
                // [h_i, x_β] = β(h_i) x_β
                let c = self.rs.root_to_weight(beta).coords[*i].clone();
                lie_add_term(&mut out, BasisElt::X(beta.clone()), c);
            }
            (BasisElt::X(beta), BasisElt::H(i)) => {
                let c = -self.rs.root_to_weight(beta).coords[*i].clone();
                lie_add_term(&mut out, BasisElt::X(beta.clone()), c);
            }
            (BasisElt::X(alpha), BasisElt::X(beta)) => {
                let sum = alpha.add(beta);
                if sum.coords.iter().all(|&c| c == 0) {
                    // [x_α, x_{−α}] = h_α in simple-coroot coordinates
                    let pos = if alpha.is_positive() { alpha.clone() } else { beta.clone() };
                    let sign = if alpha.is_positive() { q(1) } else { -q(1) };
                    for (j, c) in self.rs.coroot_coords(&pos).into_iter().enumerate() {
                        lie_add_term(&mut out, BasisElt::H(j), c * sign.clone());
                    }
                } else if self.rs.is_root(&sum) {
                    lie_add_term(&mut out, BasisElt::X(sum), self.n(alpha, beta));
                }
            }
        }
        out
    }

    pub fn bracket(&self, a: &LieElt, b: &LieElt) -> LieElt {
        let mut out = LieElt::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                for (e, c) in self.bracket_basis(ea, eb) {
                    lie_add_term(&mut out, e, c * ca * cb);
                }
            }
        }
        out
    }

    /// Adjoint action matrix of a basis element on the whole algebra.
    pub fn ad_matrix(&self, e: &BasisElt) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim(), self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            for (out, c) in self.bracket_basis(e, b) {
                m[(self.index[&out], j)] = c;
            }
        }
        m
    }

    /// Killing form B(a,b) = tr(ad a ∘ ad b) of two basis elements.
    pub fn killing_form(&self, a: &BasisElt, b: &BasisElt) -> Q {
        let ma = self.ad_matrix(a);
        let mb = self.ad_matrix(b);
        let prod = ma.mul(&mb);
        let mut tr = Q::zero();
        for i in 0..prod.rows {
            tr += prod[(i, i)].clone();
        }
        tr
    }

    /// B(x_α, x_{−α}), the normalizer turning x_{−α} into the Killing-dual
    /// of x_α.
    pub fn killing_pair(&self, alpha: &Root) -> Q {
        self.killing_form(&BasisElt::X(alpha.clone()), &BasisElt::X(alpha.neg()))
    }
}

/// View over a partially-filled positive table that resolves arbitrary-sign
/// constants via antisymmetry, negation, and the cyclic norm identity
/// N_{x,y}/‖z‖² = N_{y,z}/‖x‖² for x+y+z = 0.
struct PartialTable<'a> {
    rs: &'a RootSystem,
    n_pos: &'a HashMap<(Vec<i64>, Vec<i64>), i64>,
}

impl PartialTable<'_> {
    fn n(&self, x: &Root, y: &Root) -> Q {
        if !self.rs.is_root(x) || !self.rs.is_root(y) {
            return Q::zero();
        }
        let s = x.add(y);
        if s.coords.iter().all(|&c| c == 0) || !self.rs.is_root(&s) {
            return Q::zero();
        }
        match (x.is_positive(), y.is_positive()) {
            (true, true) => {
                if let Some(&v) = self.n_pos.get(&(x.coords.clone(), y.coords.clone())) {
                    q(v)
                } else if let Some(&v) = self.n_pos.get(&(y.coords.clone(), x.coords.clone()))
                {
                    -q(v)
                } else {
                    panic!("unresolved structure constant for {x}, {y}");
                }
            }
            (false, false) => -self.n(&x.neg(), &y.neg()),
            (false, true) => -self.n(y, x),
            (true, false) => {
                if s.is_positive() {
                    // x + y + (−s) = 0: N_{x,y} = ‖s‖²/‖x‖² N_{y,−s}
                    //                           = −‖s‖²/‖x‖² N_{−y,s}
                    let ratio = self.rs.root_half_norm_sym(&s)
                        / self.rs.root_half_norm_sym(x);
                    -ratio * self.n(&y.neg(), &s)
                } else {
                    -self.n(&x.neg(), &y.neg())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use num::Signed;

    fn basis(spec: &str) -> ChevalleyBasis {
        ChevalleyBasis::new(&RootSystem::from_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn a1_standard_triple() {
        let cb = basis("A1");
        let alpha = Root { coords: vec![1] };
        let e = BasisElt::X(alpha.clone());
        let f = BasisElt::X(alpha.neg());
        let h = BasisElt::H(0);
        assert_eq!(cb.bracket_basis(&e, &f), LieElt::from([(h.clone(), q(1))]));
        assert_eq!(cb.bracket_basis(&h, &e), LieElt::from([(e.clone(), q(2))]));
        assert_eq!(cb.bracket_basis(&h, &f), LieElt::from([(f.clone(), -q(2))]));
    }

    #[test]
    fn a2_constants_are_unit() {
        let cb = basis("A2");
        let a1 = Root { coords: vec![1, 0] };
        let a2 = Root { coords: vec![0, 1] };
        let v = cb.n(&a1, &a2);
        assert!(v == q(1) || v == -q(1));
        assert_eq!(cb.n(&a2, &a1), -v);
    }

    #[test]
    fn string_length_bound() {
        // |N_{α,β}| = p+1 where p is the α-string depth through β
        for spec in ["A3", "B2", "G2"] {
            let cb = basis(spec);
            let rs = &cb.rs;
            for a in &rs.positive_roots {
                for b in &rs.positive_roots {
                    let s = a.add(b);
                    if a == b || !rs.is_root(&s) {
                        continue;
                    }
                    let mut p = 0i64;
                    let mut probe = b.add(&a.neg());
                    while rs.is_root(&probe) {
                        p += 1;
                        probe = probe.add(&a.neg());
                    }
                    assert_eq!(
                        cb.n(a, b).abs(),
                        q(p + 1),
                        "{spec}: |N| at {a}, {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_exhaustive() {
        for spec in ["A3", "B2", "G2"] {
            let cb = basis(spec);
            let elts = cb.basis_list().to_vec();
            for x in &elts {
                for y in &elts {
                    for z in &elts {
                        let xe = LieElt::from([(x.clone(), q(1))]);
                        let ye = LieElt::from([(y.clone(), q(1))]);
                        let ze = LieElt::from([(z.clone(), q(1))]);
                        let mut sum = cb.bracket(&xe, &cb.bracket(&ye, &ze));
                        for (e, c) in cb.bracket(&ye, &cb.bracket(&ze, &xe)) {
                            lie_add_term(&mut sum, e, c);
                        }
                        for (e, c) in cb.bracket(&ze, &cb.bracket(&xe, &ye)) {
                            lie_add_term(&mut sum, e, c);
                        }
                        assert!(sum.is_empty(), "{spec}: Jacobi fails at {x:?},{y:?},{z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn killing_pairing_properties() {
        let cb = basis("A2");
        let rs = &cb.rs;
        for alpha in &rs.positive_roots {
            let b = cb.killing_pair(alpha);
            assert!(b > q(0), "B(x_α, x_{{−α}}) should be positive");
        }
        // opposite-height root vectors pair to zero
        let a1 = Root { coords: vec![1, 0] };
        let a2 = Root { coords: vec![0, 1] };
        assert!(cb
            .killing_form(&BasisElt::X(a1.clone()), &BasisElt::X(a2.neg()))
            .is_zero());
        assert!(cb.killing_form(&BasisElt::X(a1.clone()), &BasisElt::X(a1)).is_zero());
    }

    #[test]
    fn killing_matches_root_system_form() {
        // B(h_i, h_j) computed from ad-traces equals the Killing matrix the
        // root system carries (which lives on the coroot side)
        let cb = basis("B2");
        let rs = &cb.rs;
        let k_inv = rs.killing.inverse().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    cb.killing_form(&BasisElt::H(i), &BasisElt::H(j)),
                    k_inv[(i, j)]
                );
            }
        }
    }
}
