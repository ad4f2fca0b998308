//! A Chevalley-style basis with explicit rational structure constants.
//!
//! The basis is ordered: negative root vectors `e_{-alpha}` (by the order of
//! their positive counterparts), then the Cartan elements `h_{alpha_1}, ...,
//! h_{alpha_l}`, then positive root vectors `e_alpha`. It is normalized
//! against the invariant form `(.,.)` (long roots of squared length 2) by
//!
//! * `(e_alpha, e_{-alpha}) = 1` and `(h_{alpha_i}, h_{alpha_j}) = (alpha_i, alpha_j)`,
//! * `h_alpha := [e_alpha, e_{-alpha}]` equals the form-dual `t_alpha` of
//!   `alpha`, so `(h_alpha, h) = <alpha, h>` for `h` in the Cartan subalgebra,
//! * `[h, e_alpha] = <alpha, h> e_alpha`.
//!
//! Signs of the constants `N_{alpha,beta}` in `[e_alpha, e_beta] =
//! N_{alpha,beta} e_{alpha+beta}` are pinned by the extraspecial-pair
//! convention: first an integral basis `x_alpha` with `[x_alpha, x_{-alpha}]
//! = alpha^vee` is built, choosing `N_{alpha,beta} = p + 1 > 0` whenever
//! `(alpha, beta)` is the defining pair of `alpha + beta` (the pair whose
//! first member is the earliest simple root `alpha` with `alpha + beta` a
//! root), and propagating every other constant through the standard
//! sum-of-three-roots relations. The integral basis is then rescaled
//! diagonally, `e_{-alpha} = ((alpha,alpha)/2) x_{-alpha}`, to meet the form
//! normalization above.
//!
//! Because a sign slip here silently poisons every bracket downstream,
//! [`LieAlgebra::build`] refuses to return until the finished table passes
//! antisymmetry, the Jacobi identity on all basis triples, invariance of the
//! form, the eigenvalue rule `[h_i, e_alpha] = (alpha, alpha_i) e_alpha`, and
//! `|N_{alpha,beta}| = p + 1` for every pair of roots with a root sum.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::rational::{q, to_integer, Q};
use crate::root_system::{CartanVector, Root, RootSystem, TypeLabel};
use crate::{Error, Result};

/// A sparse combination of basis elements: `(index, coefficient)` pairs with
/// strictly increasing indices.
pub type BasisCombo = Vec<(usize, Q)>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct SignedRoot {
    neg: bool,
    idx: usize,
}

impl SignedRoot {
    fn flip(self) -> Self {
        SignedRoot {
            neg: !self.neg,
            idx: self.idx,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    rs: RootSystem,
    dim: usize,
    names: Vec<String>,
    /// `table[i][j]` is `[b_i, b_j]` as a basis combination.
    table: Vec<Vec<BasisCombo>>,
    form: Vec<Vec<Q>>,
    /// Root-lattice weight of each basis vector (zero rows for the Cartan).
    weights: Vec<Root>,
}

impl LieAlgebra {
    pub fn build(rs: RootSystem) -> Result<Self> {
        let m = rs.num_positive();
        let l = rs.rank();
        let dim = rs.dim();

        let mut names = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        for r in rs.positive_roots() {
            names.push(format!("e{}", r.neg()));
            weights.push(r.neg());
        }
        for i in 0..l {
            names.push(format!("h[{}]", i + 1));
            weights.push(Root(vec![0; l]));
        }
        for r in rs.positive_roots() {
            names.push(format!("e{r}"));
            weights.push(r.clone());
        }

        let mut builder = ConstantBuilder::new(&rs);
        let table = builder.assemble_table()?;

        let mut form = vec![vec![Q::zero(); dim]; dim];
        for k in 0..m {
            form[m + l + k][k] = Q::one();
            form[k][m + l + k] = Q::one();
        }
        for i in 0..l {
            for j in 0..l {
                form[m + i][m + j] = rs.gram_matrix()[i][j].clone();
            }
        }

        let lie = LieAlgebra {
            rs,
            dim,
            names,
            table,
            form,
            weights,
        };
        lie.validate()?;
        Ok(lie)
    }

    pub fn label(&self) -> TypeLabel {
        self.rs.label()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.rs.num_positive()
    }

    /// Index of `e_{-alpha_k}` (k-th positive root).
    pub fn neg_index(&self, k: usize) -> usize {
        k
    }

    /// Index of `h_{alpha_i}`.
    pub fn cartan_index(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Index of `e_{alpha_k}` (k-th positive root).
    pub fn pos_index(&self, k: usize) -> usize {
        self.num_positive() + self.rank() + k
    }

    /// Basis index of the root vector for an arbitrary (signed) root.
    pub fn root_vector_index(&self, r: &Root) -> Option<usize> {
        if let Some(k) = self.rs.pos_index(r) {
            return Some(self.pos_index(k));
        }
        self.rs.pos_index(&r.neg()).map(|k| self.neg_index(k))
    }

    pub fn basis_name(&self, b: usize) -> &str {
        &self.names[b]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    /// Weight of basis vector `b` in the root lattice (zero on the Cartan).
    pub fn weight(&self, b: usize) -> &Root {
        &self.weights[b]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &BasisCombo {
        &self.table[i][j]
    }

    /// `[x, y]` on dense coefficient vectors.
    pub fn lie_bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: if x.len() != self.dim { x.len() } else { y.len() },
            });
        }
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        Ok(out)
    }

    pub fn form_pair(&self, i: usize, j: usize) -> &Q {
        &self.form[i][j]
    }

    pub fn form_vectors(&self, x: &[Q], y: &[Q]) -> Result<Q> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: if x.len() != self.dim { x.len() } else { y.len() },
            });
        }
        let mut acc = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += xi * yj * &self.form[i][j];
                }
            }
        }
        Ok(acc)
    }

    /// Realizes a functional given in the `h_{alpha_i}` coordinates as the
    /// corresponding Cartan element `h_mu = sum mu_i h_{alpha_i}`, so that
    /// pairing against `mu` becomes `(h_mu, -)` under the invariant form.
    pub fn cartan_from_form(&self, mu: &CartanVector) -> Result<Vec<Q>> {
        if mu.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: mu.rank(),
            });
        }
        let mut v = vec![Q::zero(); self.dim];
        for (i, c) in mu.0.iter().enumerate() {
            v[self.cartan_index(i)] = c.clone();
        }
        Ok(v)
    }

    /// `<alpha, h>` for a basis root vector index: the eigenvalue of
    /// `ad h` on it. Zero on Cartan indices.
    pub fn weight_pairing(&self, b: usize, h: &CartanVector) -> Result<Q> {
        let w = &self.weights[b];
        if w.is_zero() {
            return Ok(Q::zero());
        }
        self.rs.pairing(w, h)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim;
        let l = self.rank();

        let fail = |msg: String| Err(Error::SignConsistency(msg));

        // Antisymmetry and zero diagonal.
        for i in 0..dim {
            if !self.table[i][i].is_empty() {
                return fail(format!("[{0}, {0}] != 0", self.names[i]));
            }
            for j in 0..dim {
                let mut neg: BasisCombo = self.table[j][i]
                    .iter()
                    .map(|(k, c)| (*k, -c.clone()))
                    .collect();
                neg.sort_by_key(|(k, _)| *k);
                if neg != self.table[i][j] {
                    return fail(format!(
                        "antisymmetry fails on ({}, {})",
                        self.names[i], self.names[j]
                    ));
                }
            }
        }

        // Jacobi on all unordered triples (enough, given antisymmetry).
        let bracket_combo = |v: &BasisCombo, k: usize| -> BasisCombo {
            let mut acc: HashMap<usize, Q> = HashMap::new();
            for (b, c) in v {
                for (t, ct) in &self.table[*b][k] {
                    *acc.entry(*t).or_insert_with(Q::zero) += c * ct;
                }
            }
            let mut out: BasisCombo = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            out.sort_by_key(|(b, _)| *b);
            out
        };
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let mut acc: HashMap<usize, Q> = HashMap::new();
                    for (t, c) in bracket_combo(&self.table[i][j], k) {
                        *acc.entry(t).or_insert_with(Q::zero) += c;
                    }
                    for (t, c) in bracket_combo(&self.table[j][k], i) {
                        *acc.entry(t).or_insert_with(Q::zero) += c;
                    }
                    for (t, c) in bracket_combo(&self.table[k][i], j) {
                        *acc.entry(t).or_insert_with(Q::zero) += c;
                    }
                    if acc.values().any(|c| !c.is_zero()) {
                        return fail(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }

        // [h_i, e_{±alpha}] = ±(alpha, alpha_i) e_{±alpha}.
        for i in 0..l {
            let hi = self.cartan_index(i);
            for (k, alpha) in self.rs.positive_roots().iter().enumerate() {
                let expected = self.rs.dot(alpha, &self.rs.simple_root(i));
                for (idx, sign) in [(self.pos_index(k), 1i64), (self.neg_index(k), -1i64)] {
                    let want: BasisCombo = if expected.is_zero() {
                        vec![]
                    } else {
                        vec![(idx, q(sign) * &expected)]
                    };
                    if self.table[hi][idx] != want {
                        return fail(format!(
                            "[h[{}], {}] has the wrong eigenvalue",
                            i + 1,
                            self.names[idx]
                        ));
                    }
                }
            }
        }

        // [e_alpha, e_{-alpha}] = t_alpha = sum_i k_i h_{alpha_i}.
        for (k, alpha) in self.rs.positive_roots().iter().enumerate() {
            let got = &self.table[self.pos_index(k)][self.neg_index(k)];
            let want: BasisCombo = alpha
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (self.cartan_index(i), q(*c)))
                .collect();
            if *got != want {
                return fail(format!("[e{alpha}, e{}] != t_alpha", alpha.neg()));
            }
        }

        // Invariance ([x,y], z) + (y, [x,z]) = 0.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut acc = Q::zero();
                    for (t, c) in &self.table[i][j] {
                        acc += c * &self.form[*t][k];
                    }
                    for (t, c) in &self.table[i][k] {
                        acc += c * &self.form[j][*t];
                    }
                    if !acc.is_zero() {
                        return fail(format!(
                            "form invariance fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }

        Ok(())
    }
}

/// Determines the integral-basis constants `N_{xi,eta}` from the
/// extraspecial-pair choices and hands back the rescaled final table.
struct ConstantBuilder<'a> {
    rs: &'a RootSystem,
    /// Defining pair of each non-simple positive root: (simple index as a
    /// positive-root index, partner positive-root index).
    defining: Vec<Option<(usize, usize)>>,
    memo: HashMap<(SignedRoot, SignedRoot), Q>,
}

impl<'a> ConstantBuilder<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let l = rs.rank();
        let mut defining = vec![None; rs.num_positive()];
        for (g, gamma) in rs.positive_roots().iter().enumerate() {
            if gamma.height() == 1 {
                continue;
            }
            for s in 0..l {
                let rest = gamma.sub(&rs.simple_root(s));
                if let Some(p) = rs.pos_index(&rest) {
                    defining[g] = Some((s, p));
                    break;
                }
            }
        }
        ConstantBuilder {
            rs,
            defining,
            memo: HashMap::new(),
        }
    }

    fn root_of(&self, sr: SignedRoot) -> Root {
        let r = &self.rs.positive_roots()[sr.idx];
        if sr.neg {
            r.neg()
        } else {
            r.clone()
        }
    }

    fn signed_of(&self, r: &Root) -> Option<SignedRoot> {
        if let Some(idx) = self.rs.pos_index(r) {
            return Some(SignedRoot { neg: false, idx });
        }
        self.rs
            .pos_index(&r.neg())
            .map(|idx| SignedRoot { neg: true, idx })
    }

    /// Length of the `alpha`-string below `beta`: max k with `beta - k alpha`
    /// a root.
    fn p_string(&self, alpha: &Root, beta: &Root) -> i64 {
        let mut p = 0;
        loop {
            let mut down = beta.clone();
            for (c, a) in down.0.iter_mut().zip(&alpha.0) {
                *c -= a * (p + 1);
            }
            if self.rs.is_root(&down) {
                p += 1;
            } else {
                return p;
            }
            assert!(p <= 4, "root strings have length at most 4");
        }
    }

    /// `N_{u,v}` for arbitrary signed roots with `u + v != 0`; zero when
    /// `u + v` is not a root.
    fn n_any(&mut self, u: SignedRoot, v: SignedRoot) -> Q {
        if let Some(cached) = self.memo.get(&(u, v)) {
            return cached.clone();
        }
        let sum = self.root_of(u).add(&self.root_of(v));
        assert!(!sum.is_zero(), "opposite roots have no N constant");
        let value = if !self.rs.is_root(&sum) {
            Q::zero()
        } else if u.neg && v.neg {
            -self.n_any(u.flip(), v.flip())
        } else if !u.neg && !v.neg {
            self.n_pos(u.idx, v.idx)
        } else {
            // Mixed signs: complete to a zero-sum triple (u, v, w) and use
            // N_{u,v}/(w,w) = N_{v,w}/(u,u) = N_{w,u}/(v,v).
            let w = self.signed_of(&sum.neg()).expect("sum is a root");
            let (uu, vv) = (
                self.rs.norm2(&self.root_of(u)),
                self.rs.norm2(&self.root_of(v)),
            );
            let ww = self.rs.norm2(&self.root_of(w));
            if v.neg == w.neg {
                let n = self.n_any(v, w);
                ww / uu * n
            } else {
                let n = self.n_any(w, u);
                ww / vv * n
            }
        };
        self.memo.insert((u, v), value.clone());
        value
    }

    /// `N_{xi,eta}` for positive roots with a positive-root sum.
    fn n_pos(&mut self, a: usize, b: usize) -> Q {
        let xi = self.rs.positive_roots()[a].clone();
        let eta = self.rs.positive_roots()[b].clone();
        let gamma = xi.add(&eta);
        let g = self.rs.pos_index(&gamma).expect("caller checked the sum");
        let (s, p) = self.defining[g].expect("non-simple root has a defining pair");
        let pos = |idx: usize| SignedRoot { neg: false, idx };
        let neg = |idx: usize| SignedRoot { neg: true, idx };

        if (a, b) == (s, p) {
            // The extraspecial choice: N = p + 1 > 0.
            let alpha = self.rs.simple_root(s);
            return q(self.p_string(&alpha, &eta) + 1);
        }
        if (a, b) == (p, s) {
            return -self.n_pos(s, p);
        }

        // Special but not defining: expand through the defining pair
        // (alpha, beta) using the four-term relation obtained from the
        // Jacobi identity on (alpha, beta, -xi).
        let alpha = self.rs.positive_roots()[s].clone();
        let beta = self.rs.positive_roots()[p].clone();
        let mut acc = Q::zero();
        let n_beta_negxi = self.n_any(pos(p), neg(a));
        if !n_beta_negxi.is_zero() {
            let bx = self
                .signed_of(&beta.sub(&xi))
                .expect("beta - xi is a root when N != 0");
            acc += n_beta_negxi * self.n_any(bx, pos(s));
        }
        let n_negxi_alpha = self.n_any(neg(a), pos(s));
        if !n_negxi_alpha.is_zero() {
            let ax = self
                .signed_of(&alpha.sub(&xi))
                .expect("alpha - xi is a root when N != 0");
            acc += n_negxi_alpha * self.n_any(ax, pos(p));
        }
        let n_def = self.n_pos(s, p);
        self.rs.norm2(&gamma) / (self.rs.norm2(&eta) * n_def) * acc
    }

    /// Builds the full bracket table in the rescaled basis order
    /// (negatives, Cartan, positives).
    fn assemble_table(&mut self) -> Result<Vec<Vec<BasisCombo>>> {
        let rs = self.rs;
        let m = rs.num_positive();
        let l = rs.rank();
        let dim = rs.dim();

        // Verify |N| = p + 1 on every pair with a root sum before rescaling.
        for ui in 0..m {
            for un in [false, true] {
                for vi in 0..m {
                    for vn in [false, true] {
                        let u = SignedRoot { neg: un, idx: ui };
                        let v = SignedRoot { neg: vn, idx: vi };
                        let (ru, rv) = (self.root_of(u), self.root_of(v));
                        let sum = ru.add(&rv);
                        if sum.is_zero() || !rs.is_root(&sum) {
                            continue;
                        }
                        let n = self.n_any(u, v);
                        let expect = q(self.p_string(&ru, &rv) + 1);
                        if n.abs() != expect {
                            return Err(Error::SignConsistency(format!(
                                "|N| for ({ru}, {rv}) is {n}, expected {expect}"
                            )));
                        }
                        if to_integer(&n).is_none() {
                            return Err(Error::SignConsistency(format!(
                                "non-integral N for ({ru}, {rv})"
                            )));
                        }
                    }
                }
            }
        }

        // Scale factors from the integral basis to the final one:
        // s = (alpha,alpha)/2 on e_{-alpha} and on h_i, 1 on e_alpha.
        let mut scale = vec![Q::one(); dim];
        for k in 0..m {
            scale[k] = rs.norm2(&rs.positive_roots()[k]) / q(2);
        }
        for i in 0..l {
            scale[m + i] = rs.gram_matrix()[i][i].clone() / q(2);
        }

        let signed_to_index = |sr: SignedRoot| if sr.neg { sr.idx } else { m + l + sr.idx };
        let index_to_signed = |b: usize| -> Option<SignedRoot> {
            if b < m {
                Some(SignedRoot { neg: true, idx: b })
            } else if b >= m + l {
                Some(SignedRoot {
                    neg: false,
                    idx: b - m - l,
                })
            } else {
                None
            }
        };

        // Integral-basis bracket of two basis vectors.
        let mut integral = |i: usize, j: usize| -> BasisCombo {
            match (index_to_signed(i), index_to_signed(j)) {
                (None, None) => vec![],
                (None, Some(v)) => {
                    // [alpha_i^vee, x_v] = <v, alpha_i^vee> x_v.
                    let cart = i - m;
                    let rv = self.root_of(v);
                    let pairing: i64 =
                        (0..l).map(|t| rv.0[t] * rs.cartan_matrix()[t][cart]).sum();
                    if pairing == 0 {
                        vec![]
                    } else {
                        vec![(j, q(pairing))]
                    }
                }
                (Some(u), None) => {
                    let cart = j - m;
                    let ru = self.root_of(u);
                    let pairing: i64 =
                        (0..l).map(|t| ru.0[t] * rs.cartan_matrix()[t][cart]).sum();
                    if pairing == 0 {
                        vec![]
                    } else {
                        vec![(i, q(-pairing))]
                    }
                }
                (Some(u), Some(v)) => {
                    let (ru, rv) = (self.root_of(u), self.root_of(v));
                    let sum = ru.add(&rv);
                    if sum.is_zero() {
                        // [x_alpha, x_{-alpha}] = ±alpha^vee for alpha the
                        // positive one.
                        let sign = if u.neg { q(-1) } else { q(1) };
                        let alpha = if u.neg { rv } else { ru };
                        rs.coroot_coeffs(&alpha)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(t, c)| (m + t, &sign * c))
                            .collect()
                    } else if rs.is_root(&sum) {
                        let n = self.n_any(u, v);
                        if n.is_zero() {
                            vec![]
                        } else {
                            let target = self
                                .signed_of(&sum)
                                .expect("sum is a root");
                            vec![(signed_to_index(target), n)]
                        }
                    } else {
                        vec![]
                    }
                }
            }
        };

        let mut table = vec![vec![BasisCombo::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let mut combo: BasisCombo = integral(i, j)
                    .into_iter()
                    .map(|(t, c)| (t, c * &scale[i] * &scale[j] / &scale[t]))
                    .collect();
                combo.sort_by_key(|(t, _)| *t);
                table[i][j] = combo;
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qq;
    use crate::root_system::Family;

    fn lie(s: &str) -> LieAlgebra {
        LieAlgebra::build(RootSystem::build(s.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn a1_is_the_classical_sl2_normalization() {
        let g = lie("A1");
        assert_eq!(g.dim(), 3);
        let (f, h, e) = (0, 1, 2);
        assert_eq!(g.basis_name(f), "e[-1]");
        assert_eq!(g.basis_name(h), "h[1]");
        assert_eq!(g.basis_name(e), "e[1]");
        assert_eq!(g.bracket_basis(e, f), &vec![(h, q(1))]);
        assert_eq!(g.bracket_basis(h, e), &vec![(e, q(2))]);
        assert_eq!(g.bracket_basis(h, f), &vec![(f, q(-2))]);
        assert_eq!(*g.form_pair(e, f), q(1));
        assert_eq!(*g.form_pair(h, h), q(2));
        assert_eq!(*g.form_pair(e, e), q(0));
    }

    #[test]
    fn all_supported_types_pass_the_build_gate() {
        for s in ["A1", "A2", "A3", "B2", "C2", "G2"] {
            let g = lie(s);
            assert_eq!(g.dim(), g.root_system().dim(), "{s}");
        }
    }

    /// Dense matrices of the defining representation of sl_{l+1}: the root
    /// `e_i - e_j` maps to the matrix unit `E_ij`, `h_{alpha_i}` to
    /// `E_ii - E_{i+1,i+1}`. This is an independent realization: brackets
    /// are matrix commutators.
    struct MatrixSl {
        n: usize,
        images: Vec<Vec<Vec<Q>>>,
    }

    impl MatrixSl {
        fn new(g: &LieAlgebra) -> Self {
            let l = g.rank();
            let n = l + 1;
            let unit = |r: usize, c: usize| {
                let mut m = vec![vec![q(0); n]; n];
                m[r][c] = q(1);
                m
            };
            let mut images = Vec::new();
            let span = |root: &Root| -> (usize, usize) {
                let support: Vec<usize> = (0..l).filter(|i| root.0[*i] != 0).collect();
                (support[0], support[support.len() - 1] + 1)
            };
            for r in g.root_system().positive_roots() {
                let (a, b) = span(r);
                images.push(unit(b, a));
            }
            for i in 0..l {
                let mut m = unit(i, i);
                m[i + 1][i + 1] = q(-1);
                images.push(m);
            }
            for r in g.root_system().positive_roots() {
                let (a, b) = span(r);
                images.push(unit(a, b));
            }
            MatrixSl { n, images }
        }

        fn commutator(&self, i: usize, j: usize) -> Vec<Vec<Q>> {
            let (a, b) = (&self.images[i], &self.images[j]);
            let mut out = vec![vec![q(0); self.n]; self.n];
            for r in 0..self.n {
                for c in 0..self.n {
                    for k in 0..self.n {
                        out[r][c] += &a[r][k] * &b[k][c];
                        let s = &b[r][k] * &a[k][c];
                        out[r][c] -= s;
                    }
                }
            }
            out
        }

        /// Expands a traceless matrix in the image basis.
        fn decompose(&self, g: &LieAlgebra, m: &[Vec<Q>]) -> BasisCombo {
            let l = self.n - 1;
            let mut combo = BasisCombo::new();
            for r in 0..self.n {
                for c in 0..self.n {
                    if r == c || m[r][c].is_zero() {
                        continue;
                    }
                    let (lo, hi) = (r.min(c), r.max(c));
                    let mut coords = vec![0i64; l];
                    for i in lo..hi {
                        coords[i] = 1;
                    }
                    let root = if r < c {
                        Root(coords)
                    } else {
                        Root(coords).neg()
                    };
                    combo.push((g.root_vector_index(&root).unwrap(), m[r][c].clone()));
                }
            }
            let mut acc = q(0);
            for i in 0..l {
                acc += &m[i][i];
                if !acc.is_zero() {
                    combo.push((g.cartan_index(i), acc.clone()));
                }
            }
            combo.sort_by_key(|(b, _)| *b);
            combo
        }
    }

    #[test]
    fn type_a_tables_match_matrix_commutators_exactly() {
        for s in ["A1", "A2", "A3"] {
            let g = lie(s);
            let mats = MatrixSl::new(&g);
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let expected = mats.decompose(&g, &mats.commutator(i, j));
                    assert_eq!(
                        g.bracket_basis(i, j),
                        &expected,
                        "{s}: [{}, {}]",
                        g.basis_name(i),
                        g.basis_name(j)
                    );
                }
            }
        }
    }

    #[test]
    fn a2_bracket_examples() {
        let g = lie("A2");
        // [e_{a1}, e_{a2}] = e_{a1+a2} under the extraspecial choice.
        let e1 = g.root_vector_index(&Root(vec![1, 0])).unwrap();
        let e2 = g.root_vector_index(&Root(vec![0, 1])).unwrap();
        let e12 = g.root_vector_index(&Root(vec![1, 1])).unwrap();
        assert_eq!(g.bracket_basis(e1, e2), &vec![(e12, q(1))]);
        // [e_{a1+a2}, e_{-a1}] = -e_{a2}, as for the matrix units.
        let f1 = g.root_vector_index(&Root(vec![-1, 0])).unwrap();
        assert_eq!(g.bracket_basis(e12, f1), &vec![(e2, q(-1))]);
    }

    #[test]
    fn positive_block_constants_are_integral_with_expected_magnitudes() {
        // Brackets of positive root vectors keep the integral-basis N's
        // (the diagonal rescaling only touches the negative block).
        let magnitudes = |s: &str| -> i64 {
            let g = lie(s);
            let mut max = 0;
            for a in 0..g.num_positive() {
                for b in 0..g.num_positive() {
                    for (_, c) in g.bracket_basis(g.pos_index(a), g.pos_index(b)) {
                        let n = to_integer(c).expect("integral N");
                        let n: i64 = (&n).try_into().unwrap();
                        max = max.max(n.abs());
                    }
                }
            }
            max
        };
        assert_eq!(magnitudes("A3"), 1);
        assert_eq!(magnitudes("B2"), 2);
        assert_eq!(magnitudes("C2"), 2);
        assert_eq!(magnitudes("G2"), 3);
    }

    #[test]
    fn cartan_brackets_vanish_and_weights_act_by_pairing() {
        for s in ["A2", "B2", "G2"] {
            let g = lie(s);
            for i in 0..g.rank() {
                for j in 0..g.rank() {
                    assert!(g.bracket_basis(g.cartan_index(i), g.cartan_index(j)).is_empty());
                }
            }
            let h = CartanVector(vec![qq(1, 2), q(-3)]);
            let hv = g.cartan_from_form(&h).unwrap();
            for b in 0..g.dim() {
                let mut x = vec![q(0); g.dim()];
                x[b] = q(1);
                let br = g.lie_bracket(&hv, &x).unwrap();
                let lambda = g.weight_pairing(b, &h).unwrap();
                for (t, val) in br.iter().enumerate() {
                    let expect = if t == b { &lambda * q(1) } else { q(0) };
                    assert_eq!(*val, expect, "{s}: [h, {}]", g.basis_name(b));
                }
            }
        }
    }

    #[test]
    fn form_duality_pairs_roots_with_cartan_vectors() {
        // (h_alpha, h) = <alpha, h> with h_alpha = [e_alpha, e_{-alpha}].
        for s in ["A3", "B2", "C2", "G2"] {
            let g = lie(s);
            let h = CartanVector(vec![q(2); g.rank()]);
            let hv = g.cartan_from_form(&h).unwrap();
            for (k, alpha) in g.root_system().positive_roots().iter().enumerate() {
                let mut e = vec![q(0); g.dim()];
                e[g.pos_index(k)] = q(1);
                let mut f = vec![q(0); g.dim()];
                f[g.neg_index(k)] = q(1);
                let h_alpha = g.lie_bracket(&e, &f).unwrap();
                let lhs = g.form_vectors(&h_alpha, &hv).unwrap();
                let rhs = g.root_system().pairing(alpha, &h).unwrap();
                assert_eq!(lhs, rhs, "{s}: {alpha}");
            }
        }
    }

    #[test]
    fn pairing_normalization_e_f_is_one() {
        for s in ["A2", "B2", "C2", "G2"] {
            let g = lie(s);
            for k in 0..g.num_positive() {
                assert_eq!(*g.form_pair(g.pos_index(k), g.neg_index(k)), q(1), "{s}");
            }
        }
    }

    #[test]
    fn bracket_rejects_wrong_dimensions() {
        let g = lie("A2");
        let bad = vec![q(1); 5];
        let ok = vec![q(0); g.dim()];
        assert!(matches!(
            g.lie_bracket(&bad, &ok),
            Err(Error::DimensionMismatch { expected: 8, got: 5 })
        ));
    }

    #[test]
    fn larger_types_build_too() {
        // The construction is type-generic; spot check beyond the CLI set.
        for (f, r) in [(Family::B, 3), (Family::D, 4)] {
            let rs = RootSystem::build(TypeLabel::new(f, r)).unwrap();
            LieAlgebra::build(rs).unwrap();
        }
    }
}
