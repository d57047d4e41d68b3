//! Root systems of complex semisimple Lie algebras in exact rational
//! arithmetic.
//!
//! Roots live in simple-root coordinates (integer vectors), weights in
//! fundamental-weight coordinates (rational vectors); the Cartan matrix
//! converts between the two. The inner product on the weight space is the one
//! literally induced by the Killing form κ(h,h′) = Σ_{α∈Δ} α(h)α(h′), so that
//! Laplacian scalars computed here match the explicit Chevalley-basis
//! Laplacian without hidden rescaling.

use crate::linalg::QMatrix;
use crate::{q, Error, Q, Result};
use num::{One, Zero};
use std::collections::HashSet;
use std::fmt;

/// A Cartan matrix plus an optional human-readable type label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSpec {
    pub entries: Vec<Vec<i64>>,
    pub label: Option<String>,
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn simple(i: usize, rank: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![Q::zero(); rank] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| q(c)).collect() }
    }

    pub fn fundamental(i: usize, rank: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = Q::one();
        w
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Root system data: positive roots, Cartan matrix, Killing-induced inner
/// product on the weight space, and the symmetrizer used for coroots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan: CartanSpec,
    pub rank: usize,
    /// Ordered by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    /// Killing-form-induced inner product matrix on the weight space
    /// (fundamental coordinates).
    pub killing: QMatrix,
    /// Symmetrizer d_i: (αᵢ,αⱼ)_sym = dᵢ·cᵢⱼ is symmetric, min dᵢ = 1.
    /// Only length *ratios* of this auxiliary form are ever used.
    sym: Vec<Q>,
    root_set: HashSet<Vec<i64>>,
}

impl CartanSpec {
    /// Parse an algebra spec: a type letter A–G followed by the rank
    /// (e.g. "A3"), products joined by "x" (e.g. "A2xA1"), or an explicit
    /// Cartan matrix as a JSON integer matrix.
    pub fn parse(spec: &str) -> Result<CartanSpec> {
        let trimmed = spec.trim();
        if trimmed.starts_with('[') {
            let entries: Vec<Vec<i64>> = serde_json::from_str(trimmed)
                .map_err(|_| Error::BadAlgebraSpec(spec.to_string()))?;
            return Ok(CartanSpec { entries, label: None });
        }
        let mut blocks = Vec::new();
        for part in trimmed.split(['x', 'X']) {
            blocks.push(Self::simple_type(part.trim()).ok_or_else(|| {
                Error::BadAlgebraSpec(spec.to_string())
            })?);
        }
        if blocks.is_empty() {
            return Err(Error::BadAlgebraSpec(spec.to_string()));
        }
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        let mut entries = vec![vec![0i64; total]; total];
        let mut off = 0;
        for b in &blocks {
            for i in 0..b.len() {
                for j in 0..b.len() {
                    entries[off + i][off + j] = b[i][j];
                }
            }
            off += b.len();
        }
        Ok(CartanSpec { entries, label: Some(trimmed.to_uppercase()) })
    }

    /// Cartan matrix of a simple type, rows cᵢⱼ = ⟨αⱼ, αᵢ∨⟩.
    fn simple_type(part: &str) -> Option<Vec<Vec<i64>>> {
        let mut chars = part.chars();
        let letter = chars.next()?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().ok()?;
        if n == 0 {
            return None;
        }
        let chain = |n: usize| {
            let mut m = vec![vec![0i64; n]; n];
            for i in 0..n {
                m[i][i] = 2;
                if i + 1 < n {
                    m[i][i + 1] = -1;
                    m[i + 1][i] = -1;
                }
            }
            m
        };
        match (letter, n) {
            ('A', _) => Some(chain(n)),
            ('B', n) if n >= 2 => {
                // α_n short: ⟨α_{n-1}, α_n∨⟩ = -2.
                let mut m = chain(n);
                m[n - 1][n - 2] = -2;
                Some(m)
            }
            ('C', n) if n >= 2 => {
                let mut m = chain(n);
                m[n - 2][n - 1] = -2;
                Some(m)
            }
            ('D', n) if n >= 3 => {
                let mut m = chain(n - 1);
                m.iter_mut().for_each(|row| row.push(0));
                m.push(vec![0; n]);
                m[n - 1][n - 1] = 2;
                // node n attaches to node n-2
                m[n - 1][n - 3] = -1;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 2] = 0;
                m[n - 2][n - 1] = 0;
                Some(m)
            }
            ('E', n) if (6..=8).contains(&n) => {
                // Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4.
                let mut m = vec![vec![0i64; n]; n];
                for i in 0..n {
                    m[i][i] = 2;
                }
                let mut link = |a: usize, b: usize| {
                    m[a - 1][b - 1] = -1;
                    m[b - 1][a - 1] = -1;
                };
                link(1, 3);
                link(2, 4);
                for k in 3..n {
                    link(k, k + 1);
                }
                Some(m)
            }
            ('F', 4) => Some(vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ]),
            ('G', 2) => Some(vec![vec![2, -1], vec![-3, 2]]),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Structural validity: square, diagonal 2, off-diagonal ≤ 0 with
    /// matching zeros, symmetrizable with positive-definite symmetrization
    /// (finite type).
    pub fn validate(&self) -> Result<Vec<Q>> {
        let n = self.rank();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is not 2")));
            }
            for (j, &v) in row.iter().enumerate() {
                if i != j {
                    if v > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "positive off-diagonal entry at ({i},{j})"
                        )));
                    }
                    if (v == 0) != (self.entries[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "zero pattern not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        let sym = self.symmetrizer()?;
        // positive-definite symmetrization <=> finite type
        let b = QMatrix::from_fn(n, n, |i, j| &sym[i] * &q(self.entries[i][j]));
        for k in 1..=n {
            let minor = QMatrix::from_fn(k, k, |i, j| b[(i, j)].clone());
            if det(&minor) <= Q::zero() {
                return Err(Error::InvalidCartan(
                    "symmetrization is not positive definite (not finite type)".into(),
                ));
            }
        }
        Ok(sym)
    }

    /// d_i > 0 with d_i c_ij = d_j c_ji, normalized to min 1 per component.
    fn symmetrizer(&self) -> Result<Vec<Q>> {
        let n = self.rank();
        let mut d: Vec<Option<Q>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            let mut comp = vec![start];
            d[start] = Some(Q::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    let ratio = q(self.entries[i][j]) / q(self.entries[j][i]);
                    let dj = d[i].clone().unwrap() * ratio;
                    match &d[j] {
                        Some(existing) => {
                            if *existing != dj {
                                return Err(Error::InvalidCartan(
                                    "matrix is not symmetrizable".into(),
                                ));
                            }
                        }
                        None => {
                            d[j] = Some(dj);
                            comp.push(j);
                            stack.push(j);
                        }
                    }
                }
            }
            let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
            for &i in &comp {
                let v = d[i].clone().unwrap() / min.clone();
                d[i] = Some(v);
            }
        }
        Ok(d.into_iter().map(|x| x.unwrap()).collect())
    }
}

fn det(m: &QMatrix) -> Q {
    let n = m.rows;
    let mut a = m.clone();
    let mut result = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(col, j)].clone();
                a[(col, j)] = tmp;
            }
            result = -result;
        }
        result *= a[(col, col)].clone();
        let inv = a[(col, col)].recip();
        for r in col + 1..n {
            if a[(r, col)].is_zero() {
                continue;
            }
            let f = &a[(r, col)] * &inv;
            for j in col..n {
                let v = &a[(r, j)] - &(&f * &a[(col, j)]);
                a[(r, j)] = v;
            }
        }
    }
    result
}

/// Build the root system: reflection closure of the simple roots, Killing
/// form as the trace form transported to the weight space.
pub fn build_root_system(spec: CartanSpec) -> Result<RootSystem> {
    let sym = spec.validate()?;
    let n = spec.rank();
    // closure of {±αᵢ} under simple reflections
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Root> = (0..n).map(|i| Root::simple(i, n)).collect();
    for r in &queue {
        seen.insert(r.coords.clone());
        seen.insert(r.neg().coords);
    }
    // finite-type closure is small; cap guards against bugs, not input
    // (validate() already rejected infinite type)
    let cap = 1_000_000;
    while let Some(root) = queue.pop() {
        for i in 0..n {
            let refl = simple_reflection_root_raw(&spec, i, &root);
            if seen.insert(refl.coords.clone()) {
                seen.insert(refl.neg().coords);
                queue.push(refl);
            }
            if seen.len() > cap {
                return Err(Error::InvalidCartan("root closure did not terminate".into()));
            }
        }
    }
    let mut positive: Vec<Root> = seen
        .iter()
        .map(|c| Root { coords: c.clone() })
        .filter(Root::is_positive)
        .collect();
    positive.sort_by_key(|r| (r.height(), r.coords.clone()));

    // Killing form on the coroot basis: K_ij = Σ_{α∈Δ} α(hᵢ)α(hⱼ)
    let mut k = QMatrix::zeros(n, n);
    for root in &positive {
        let w = root_to_weight_raw(&spec, root);
        for i in 0..n {
            for j in 0..n {
                let term = &w.coords[i] * &w.coords[j] * q(2);
                k[(i, j)] += term;
            }
        }
    }
    let killing = k
        .inverse()
        .ok_or_else(|| Error::InvalidCartan("degenerate Killing form".into()))?;

    let root_set = seen;
    Ok(RootSystem { cartan: spec, rank: n, positive_roots: positive, killing, sym, root_set })
}

fn simple_reflection_root_raw(spec: &CartanSpec, i: usize, root: &Root) -> Root {
    // σᵢ(α) = α − ⟨α, αᵢ∨⟩ αᵢ, with ⟨α, αᵢ∨⟩ = Σⱼ cᵢⱼ aⱼ
    let pairing: i64 = root
        .coords
        .iter()
        .enumerate()
        .map(|(j, &a)| spec.entries[i][j] * a)
        .sum();
    let mut coords = root.coords.clone();
    coords[i] -= pairing;
    Root { coords }
}

fn root_to_weight_raw(spec: &CartanSpec, root: &Root) -> Weight {
    let n = spec.rank();
    Weight {
        coords: (0..n)
            .map(|i| {
                q(root
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| spec.entries[i][j] * a)
                    .sum::<i64>())
            })
            .collect(),
    }
}

impl RootSystem {
    pub fn from_spec(spec: &str) -> Result<RootSystem> {
        build_root_system(CartanSpec::parse(spec)?)
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_set.contains(&r.coords)
    }

    /// Fundamental coordinates of a root.
    pub fn root_to_weight(&self, root: &Root) -> Weight {
        root_to_weight_raw(&self.cartan, root)
    }

    pub fn simple_reflection_root(&self, i: usize, root: &Root) -> Root {
        simple_reflection_root_raw(&self.cartan, i, root)
    }

    /// σᵢ(λ) = λ − ⟨λ, αᵢ∨⟩ αᵢ in fundamental coordinates.
    pub fn simple_reflection_weight(&self, i: usize, w: &Weight) -> Weight {
        let c = w.coords[i].clone();
        let alpha = self.root_to_weight(&Root::simple(i, self.rank));
        w.sub(&alpha.scale(&c))
    }

    /// δ = ½ Σ_{α∈Δ⁺} α, the all-ones weight.
    pub fn delta(&self) -> Weight {
        let mut sum = Weight::zero(self.rank);
        for r in &self.positive_roots {
            sum = sum.add(&self.root_to_weight(r));
        }
        sum.scale(&crate::qr(1, 2))
    }

    /// Coroot pairing ⟨λ, α∨⟩ = 2(λ,α)/(α,α).
    pub fn pairing(&self, lambda: &Weight, alpha: &Root) -> Q {
        // α∨ = Σⱼ aⱼ dⱼ/d_α αⱼ∨ with d measured in the symmetrized form
        let d_alpha = self.root_half_norm_sym(alpha);
        let mut acc = Q::zero();
        for (j, &a) in alpha.coords.iter().enumerate() {
            if a != 0 {
                acc += &lambda.coords[j] * &(&self.sym[j] * &q(a));
            }
        }
        acc / d_alpha
    }

    /// (α,α)/2 in the symmetrized-Cartan normalization (ratios only).
    pub fn root_half_norm_sym(&self, alpha: &Root) -> Q {
        // (α,α)_sym = Σᵢⱼ aᵢ aⱼ dᵢ cᵢⱼ
        let mut acc = Q::zero();
        for (i, &a) in alpha.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in alpha.coords.iter().enumerate() {
                if b == 0 || self.cartan.entries[i][j] == 0 {
                    continue;
                }
                acc += &self.sym[i] * &q(self.cartan.entries[i][j] * a * b);
            }
        }
        acc / q(2)
    }

    /// Killing-form inner product (λ,μ) on the weight space.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let kb = self.killing.mul_vec(&b.coords);
        a.coords.iter().zip(&kb).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)
    }

    /// ‖λ‖² under the Killing-induced inner product.
    pub fn norm_sq(&self, lambda: &Weight) -> Q {
        self.inner(lambda, lambda)
    }

    /// Coroot coordinates of α∨ in the simple-coroot basis (integers for roots).
    pub fn coroot_coords(&self, alpha: &Root) -> Vec<Q> {
        let d_alpha = self.root_half_norm_sym(alpha);
        alpha
            .coords
            .iter()
            .enumerate()
            .map(|(j, &a)| &self.sym[j] * &q(a) / d_alpha.clone())
            .collect()
    }

    pub fn label(&self) -> String {
        self.cartan.label.clone().unwrap_or_else(|| "custom".to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(spec: &str) -> RootSystem {
        RootSystem::from_spec(spec).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs("A2").positive_roots.len(), 3);
        assert_eq!(rs("A3").positive_roots.len(), 6);
        assert_eq!(rs("G2").positive_roots.len(), 6);
        assert_eq!(rs("B2").positive_roots.len(), 4);
        assert_eq!(rs("C3").positive_roots.len(), 9);
        assert_eq!(rs("D4").positive_roots.len(), 12);
        assert_eq!(rs("F4").positive_roots.len(), 24);
        assert_eq!(rs("A2xA1").positive_roots.len(), 4);
    }

    #[test]
    fn delta_is_all_ones() {
        for spec in ["A1", "A3", "B2", "G2", "A2xA1"] {
            let r = rs(spec);
            assert_eq!(r.delta(), Weight::from_ints(&vec![1; r.rank]));
        }
    }

    #[test]
    fn pairing_recovers_cartan_matrix() {
        for spec in ["A3", "B2", "G2", "F4", "A2xA1"] {
            let r = rs(spec);
            for i in 0..r.rank {
                let alpha_i = Root::simple(i, r.rank);
                for j in 0..r.rank {
                    let alpha_j_wt = r.root_to_weight(&Root::simple(j, r.rank));
                    assert_eq!(
                        r.pairing(&alpha_j_wt, &alpha_i),
                        q(r.cartan.entries[i][j]),
                        "type {spec} entry ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn fundamental_weight_pairing_is_kronecker() {
        let r = rs("B3");
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { q(1) } else { q(0) };
                assert_eq!(r.pairing(&Weight::fundamental(i, 3), &Root::simple(j, 3)), expect);
            }
        }
    }

    #[test]
    fn delta_pairing_with_highest_root_a2() {
        let r = rs("A2");
        let highest = Root { coords: vec![1, 1] };
        assert_eq!(r.pairing(&r.delta(), &highest), q(2));
    }

    #[test]
    fn reflection_closure_property() {
        for spec in ["A3", "B2", "G2"] {
            let r = rs(spec);
            for a in &r.positive_roots {
                for i in 0..r.rank {
                    let refl = r.simple_reflection_root(i, a);
                    assert!(r.is_root(&refl), "{spec}: σ_{i}({a}) not a root");
                }
            }
        }
    }

    #[test]
    fn killing_weyl_invariance() {
        for spec in ["A3", "B2", "G2"] {
            let r = rs(spec);
            let lam = Weight {
                coords: (0..r.rank).map(|k| crate::qr(2 * k as i64 + 1, 3)).collect(),
            };
            let n = r.norm_sq(&lam);
            for i in 0..r.rank {
                assert_eq!(r.norm_sq(&r.simple_reflection_weight(i, &lam)), n);
            }
        }
    }

    #[test]
    fn norm_bilinearity_a1() {
        let r = rs("A1");
        let w = Weight::from_ints(&[1]);
        let w2 = Weight::from_ints(&[2]);
        assert_eq!(r.norm_sq(&w2), r.norm_sq(&w) * q(4));
        assert_eq!(r.norm_sq(&Weight::zero(1)), q(0));
    }

    #[test]
    fn rejects_bad_matrices() {
        // affine A1~: not finite type
        assert!(CartanSpec {
            entries: vec![vec![2, -2], vec![-2, 2]],
            label: None
        }
        .validate()
        .is_err());
        // bad diagonal
        assert!(CartanSpec { entries: vec![vec![1]], label: None }.validate().is_err());
        // asymmetric zero pattern
        assert!(CartanSpec {
            entries: vec![vec![2, 0], vec![-1, 2]],
            label: None
        }
        .validate()
        .is_err());
        assert!(CartanSpec::parse("H5").is_err());
        assert!(CartanSpec::parse("Q").is_err());
    }

    #[test]
    fn parses_explicit_matrix() {
        let spec = CartanSpec::parse("[[2,-1],[-1,2]]").unwrap();
        let r = build_root_system(spec).unwrap();
        assert_eq!(r.positive_roots.len(), 3);
    }
}
