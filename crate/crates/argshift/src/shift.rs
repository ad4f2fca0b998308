//! The argument-shift family attached to a regular direction.
//!
//! Fix a regular `mu` in the Cartan (no root pairs to zero with it). Each
//! invariant generator `Phi` of degree `d` decomposes after shifting the
//! argument by `mu` as `Phi(x + mu) = sum_k Phi_k(x)` with `deg Phi_k =
//! d - k`; the components `Phi_k` for `k < d` over all generators span a
//! Poisson-commutative subalgebra of `S(g)`. The degree-one block of that
//! subalgebra is the Cartan, and the quadratic block splits as
//! `S^2(h) + Q_mu`, where `Q_mu` is spanned by
//!
//! ```text
//! q_h = sum_{alpha > 0} (<alpha, h> / <alpha, mu>) e_alpha e_{-alpha}
//! ```
//!
//! for `h` running over the Cartan. [`ShiftFamily::quadratic_slice`] builds
//! that splitting and verifies it against the actual shift components.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::chevalley::LieAlgebra;
use crate::invariants::{free_monomial_count, products_of_degree, InvariantGeneratorSet};
use crate::linalg::SparseMat;
use crate::polyring::{monomials_of_degree, BracketPencil, Monomial, SparsePoly};
use crate::rational::{q, Q};
use crate::root_system::{CartanVector, RootSystem};
use crate::{Error, Result};

/// Uniform integer coordinates in `[-9, 9]`, resampled until every root
/// pairs to something nonzero.
pub fn sample_regular_mu<R: Rng + ?Sized>(rs: &RootSystem, rng: &mut R) -> Result<CartanVector> {
    const ATTEMPTS: u32 = 10_000;
    for _ in 0..ATTEMPTS {
        let coords: Vec<Q> = (0..rs.rank()).map(|_| q(rng.gen_range(-9..=9))).collect();
        let v = CartanVector(coords);
        if rs.is_regular(&v) {
            return Ok(v);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: ATTEMPTS,
        detail: "no regular direction found in the sampling box".into(),
    })
}

/// The dense coordinate shift induced by `mu`: each basis variable moves by
/// the form pairing of `h_mu` against it, so root-vector coordinates stay
/// put and the Cartan block picks up the Gram image of `mu`.
pub fn shift_vector(lie: &LieAlgebra, mu: &CartanVector) -> Result<Vec<Q>> {
    let h_mu = lie.cartan_from_form(mu)?;
    let mut out = vec![Q::zero(); lie.dim()];
    for (a, c) in h_mu.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (b, slot) in out.iter_mut().enumerate() {
            *slot += c * lie.form_pair(a, b);
        }
    }
    Ok(out)
}

/// Graded components of `f(x + mu)`, indexed by how many derivatives were
/// taken: entry `k` is `(1/k!) d^k_mu f`, of degree `deg f - k`. The input
/// must be homogeneous.
pub fn shift_components(lie: &LieAlgebra, f: &SparsePoly, mu: &CartanVector) -> Result<Vec<SparsePoly>> {
    if f.nvars() != lie.dim() {
        return Err(Error::BasisMismatch);
    }
    if f.homogeneous_degree().is_none() {
        return Err(Error::InhomogeneousInput);
    }
    Ok(f.shift_powers(&shift_vector(lie, mu)?))
}

/// `q_h = sum_{alpha > 0} (<alpha, h> / <alpha, mu>) e_alpha e_{-alpha}`
/// for one Cartan element `h`.
pub fn q_element(lie: &LieAlgebra, mu: &CartanVector, h: &CartanVector) -> Result<SparsePoly> {
    let rs = lie.root_system();
    if let Some(root) = rs.vanishing_root(mu) {
        return Err(Error::NonRegularMu {
            root: root.to_string(),
        });
    }
    let dim = lie.dim();
    let mut poly = SparsePoly::zero(dim);
    for alpha in rs.positive_roots() {
        let num = rs.pairing(alpha, h)?;
        let den = rs.pairing(alpha, mu)?;
        let pos = lie.root_vector_index(alpha).expect("positive root");
        let neg = lie.root_vector_index(&alpha.neg()).expect("negative root");
        let mut m = vec![0u16; dim];
        m[pos] += 1;
        m[neg] += 1;
        poly.add_term(Monomial(m), num / den);
    }
    Ok(poly)
}

/// `q_h` for `h = h_{alpha_1}, ..., h_{alpha_l}`: the quadratic root-vector
/// part of the shifted family, one polynomial per Cartan basis vector.
pub fn build_q_mu(lie: &LieAlgebra, mu: &CartanVector) -> Result<Vec<SparsePoly>> {
    (0..lie.rank())
        .map(|i| {
            let unit: Vec<i64> = (0..lie.rank()).map(|j| i64::from(i == j)).collect();
            q_element(lie, mu, &CartanVector::from_ints(&unit))
        })
        .collect()
}

/// The degree `<= 2` slab of the shifted family, presented as the direct
/// sum `Q . 1 + h + S^2(h) + Q_mu` and cross-checked against the span of
/// the actual shift components.
#[derive(Clone, Debug)]
pub struct QuadraticSlice {
    pub constant: SparsePoly,
    pub cartan: Vec<SparsePoly>,
    pub cartan_products: Vec<SparsePoly>,
    pub q_mu: Vec<SparsePoly>,
}

impl QuadraticSlice {
    /// All slice members, constants first; `1 + l + l(l+1)/2 + l` in total.
    pub fn elements(&self) -> Vec<SparsePoly> {
        let mut out = vec![self.constant.clone()];
        out.extend(self.cartan.iter().cloned());
        out.extend(self.cartan_products.iter().cloned());
        out.extend(self.q_mu.iter().cloned());
        out
    }

    pub fn dim(&self) -> usize {
        1 + self.cartan.len() + self.cartan_products.len() + self.q_mu.len()
    }
}

/// Shift components of every invariant generator at a fixed regular `mu`,
/// sorted by degree.
#[derive(Clone, Debug)]
pub struct ShiftFamily<'a> {
    lie: &'a LieAlgebra,
    mu: CartanVector,
    generators: Vec<SparsePoly>,
    degrees: Vec<usize>,
}

impl<'a> ShiftFamily<'a> {
    pub fn new(
        lie: &'a LieAlgebra,
        invariants: &InvariantGeneratorSet,
        mu: CartanVector,
    ) -> Result<Self> {
        if let Some(root) = lie.root_system().vanishing_root(&mu) {
            return Err(Error::NonRegularMu {
                root: root.to_string(),
            });
        }
        let mut tagged: Vec<(usize, SparsePoly)> = Vec::new();
        for phi in &invariants.generators {
            let parts = shift_components(lie, phi, &mu)?;
            let d = parts.len() - 1;
            for (k, part) in parts.into_iter().enumerate() {
                if k == d {
                    continue;
                }
                let deg = d - k;
                if part.homogeneous_degree() != Some(deg) {
                    return Err(Error::DegreeBookkeeping(format!(
                        "shift component {k} of a degree-{d} invariant is not homogeneous of degree {deg}"
                    )));
                }
                tagged.push((deg, part));
            }
        }
        tagged.sort_by_key(|(d, _)| *d);
        let (degrees, generators) = tagged.into_iter().map(|(d, p)| (d, p)).unzip();
        Ok(Self {
            lie,
            mu,
            generators,
            degrees,
        })
    }

    pub fn lie(&self) -> &LieAlgebra {
        self.lie
    }

    pub fn mu(&self) -> &CartanVector {
        &self.mu
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Pairwise vanishing of the `t = 1` bracket across the whole family.
    pub fn verify_commutative(&self) -> Result<()> {
        let pencil = BracketPencil::lie_poisson(self.lie);
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let br = pencil.bracket(&self.generators[i], &self.generators[j])?;
                if !br.is_zero() {
                    return Err(Error::NonCommutingFamily(format!(
                        "generators {i} (degree {}) and {j} (degree {})",
                        self.degrees[i], self.degrees[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every product of family generators of total degree exactly `n`.
    pub fn products_of_degree(&self, n: usize) -> Vec<SparsePoly> {
        products_of_degree(&self.generators, &self.degrees, n)
    }

    /// Dimension of the degree-`n` graded piece of the generated subalgebra.
    pub fn graded_dim(&self, n: usize) -> usize {
        let monos = monomials_of_degree(self.lie.dim(), n);
        let index: HashMap<Monomial, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut mat = SparseMat::new(monos.len());
        for p in self.products_of_degree(n) {
            mat.push_row(p.coefficient_row(&index));
        }
        mat.rank()
    }

    /// What [`graded_dim`](Self::graded_dim) returns when the generators are
    /// algebraically independent: the monomial count in free variables of
    /// the family degrees.
    pub fn expected_graded_dim(&self, n: usize) -> usize {
        free_monomial_count(&self.degrees, n)
    }

    /// Asserts algebraic independence through degree `n_max` and reports the
    /// graded dimensions.
    pub fn independence_check(&self, n_max: usize) -> Result<Vec<(usize, usize)>> {
        let mut dims = Vec::new();
        for n in 1..=n_max {
            let got = self.graded_dim(n);
            let expected = self.expected_graded_dim(n);
            if got < expected {
                return Err(Error::DependentGenerators {
                    degree: n,
                    span: got,
                    expected,
                });
            }
            if got > expected {
                return Err(Error::DegreeBookkeeping(format!(
                    "degree {n}: span dimension {got} exceeds the free count {expected}"
                )));
            }
            dims.push((n, got));
        }
        Ok(dims)
    }

    /// Builds the `1 + h + S^2(h) + Q_mu` presentation of the low-degree
    /// slab and verifies, degree by degree, that it spans exactly the same
    /// space as the shift components and their products.
    pub fn quadratic_slice(&self) -> Result<QuadraticSlice> {
        let lie = self.lie;
        let dim = lie.dim();
        let l = lie.rank();
        let cartan: Vec<SparsePoly> = (0..l)
            .map(|i| SparsePoly::var(dim, lie.cartan_index(i)))
            .collect();
        let mut cartan_products = Vec::new();
        for i in 0..l {
            for j in i..l {
                cartan_products.push(&cartan[i] * &cartan[j]);
            }
        }
        let q_mu = build_q_mu(lie, &self.mu)?;
        let slice = QuadraticSlice {
            constant: SparsePoly::constant(dim, Q::one()),
            cartan,
            cartan_products,
            q_mu,
        };

        for n in 1..=2usize {
            let monos = monomials_of_degree(dim, n);
            let index: HashMap<Monomial, usize> = monos
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            let mut family = SparseMat::new(monos.len());
            for p in self.products_of_degree(n) {
                family.push_row(p.coefficient_row(&index));
            }
            let mut presented = SparseMat::new(monos.len());
            for p in slice.elements() {
                if p.homogeneous_degree() == Some(n) {
                    presented.push_row(p.coefficient_row(&index));
                }
            }
            if family.rref().rows() != presented.rref().rows() {
                return Err(Error::NotInQuadraticSpan(format!(
                    "degree-{n} block of the family does not match 1 + h + S^2(h) + Q_mu"
                )));
            }
        }
        Ok(slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::extract_generators;
    use crate::rational::qq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lie(s: &str) -> LieAlgebra {
        LieAlgebra::build(RootSystem::build(s.parse().unwrap()).unwrap()).unwrap()
    }

    fn family<'a>(g: &'a LieAlgebra, inv: &InvariantGeneratorSet, coords: &[i64]) -> ShiftFamily<'a> {
        ShiftFamily::new(g, inv, CartanVector::from_ints(coords)).unwrap()
    }

    #[test]
    fn sampling_always_lands_on_regular_points() {
        let rs = RootSystem::build("B2".parse().unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mu = sample_regular_mu(&rs, &mut rng).unwrap();
            assert!(rs.is_regular(&mu));
            for c in &mu.0 {
                assert!(crate::rational::abs(c) <= q(9));
            }
        }
    }

    #[test]
    fn sl2_shift_vector_and_components() {
        let g = lie("A1");
        let mu = CartanVector::from_ints(&[3]);
        // (h_mu, h) = 3 (h, h) = 6 on the Cartan slot; zero on e and f.
        assert_eq!(shift_vector(&g, &mu).unwrap(), vec![q(0), q(6), q(0)]);

        let inv = extract_generators(&g, 2).unwrap();
        let parts = shift_components(&g, &inv.generators[0], &mu).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], inv.generators[0]);
        assert_eq!(parts[1].homogeneous_degree(), Some(1));
        // d_mu (h^2 + 4ef) is proportional to h alone.
        assert_eq!(parts[1].num_terms(), 1);
        assert!(!parts[1].coeff(&Monomial(vec![0, 1, 0])).is_zero());
    }

    #[test]
    fn shift_components_reject_bad_inputs() {
        let g = lie("A1");
        let mu = CartanVector::from_ints(&[1]);
        let mixed = &SparsePoly::var(3, 0) + &SparsePoly::constant(3, q(1));
        assert!(matches!(
            shift_components(&g, &mixed, &mu),
            Err(Error::InhomogeneousInput)
        ));
        let wrong = SparsePoly::var(5, 0);
        assert!(matches!(
            shift_components(&g, &wrong, &mu),
            Err(Error::BasisMismatch)
        ));
    }

    #[test]
    fn family_degrees_follow_the_invariant_table() {
        for (s, coords, want) in [
            ("A1", &[3][..], vec![1usize, 2]),
            ("A2", &[3, 1][..], vec![1, 1, 2, 2, 3]),
            ("B2", &[3, 1][..], vec![1, 1, 2, 2, 3, 4]),
        ] {
            let g = lie(s);
            let inv = extract_generators(&g, *want.last().unwrap()).unwrap();
            let fam = family(&g, &inv, coords);
            assert_eq!(fam.degrees(), &want[..], "{s}");
            for (gen, d) in fam.generators().iter().zip(fam.degrees()) {
                assert_eq!(gen.homogeneous_degree(), Some(*d));
            }
        }
    }

    #[test]
    fn non_regular_directions_are_rejected_by_name() {
        let g = lie("A2");
        let inv = extract_generators(&g, 3).unwrap();
        let err = ShiftFamily::new(&g, &inv, CartanVector::from_ints(&[1, -1])).unwrap_err();
        match err {
            Error::NonRegularMu { root } => assert_eq!(root, "[1,1]"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn the_family_commutes_pairwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in ["A1", "A2", "B2"] {
            let g = lie(s);
            let top = *crate::invariants::generator_degrees(g.label()).unwrap().last().unwrap();
            let inv = extract_generators(&g, top).unwrap();
            for _ in 0..3 {
                let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
                let fam = ShiftFamily::new(&g, &inv, mu).unwrap();
                fam.verify_commutative().unwrap();
            }
        }
    }

    #[test]
    fn sl2_q_mu_matches_the_hand_formula() {
        let g = lie("A1");
        let mu = CartanVector(vec![qq(5, 1)]);
        let qs = build_q_mu(&g, &mu).unwrap();
        assert_eq!(qs.len(), 1);
        // q = (<alpha, h_alpha> / <alpha, mu>) e f = (2 / 10) e f.
        let ef = Monomial(vec![1, 0, 1]);
        assert_eq!(qs[0].num_terms(), 1);
        assert_eq!(qs[0].coeff(&ef), qq(1, 5));
        assert!(matches!(
            build_q_mu(&g, &CartanVector::from_ints(&[0])),
            Err(Error::NonRegularMu { .. })
        ));
    }

    #[test]
    fn quadratic_slice_splits_the_low_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for s in ["A1", "A2", "B2"] {
            let g = lie(s);
            let l = g.rank();
            let top = *crate::invariants::generator_degrees(g.label()).unwrap().last().unwrap();
            let inv = extract_generators(&g, top).unwrap();
            for _ in 0..2 {
                let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
                let fam = ShiftFamily::new(&g, &inv, mu).unwrap();
                let slice = fam.quadratic_slice().unwrap();
                assert_eq!(slice.dim(), 1 + l + l * (l + 1) / 2 + l, "{s}");
                assert_eq!(slice.elements().len(), slice.dim());
            }
        }
    }

    #[test]
    fn graded_dims_match_the_free_count_in_low_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let g = lie("A2");
        let inv = extract_generators(&g, 3).unwrap();
        let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
        let fam = ShiftFamily::new(&g, &inv, mu).unwrap();
        let dims = fam.independence_check(3).unwrap();
        assert_eq!(dims, vec![(1, 2), (2, 5), (3, 9)]);
    }

    #[test]
    fn a1_graded_dims() {
        let g = lie("A1");
        let inv = extract_generators(&g, 2).unwrap();
        let fam = family(&g, &inv, &[2]);
        let dims = fam.independence_check(4).unwrap();
        assert_eq!(dims, vec![(1, 1), (2, 2), (3, 2), (4, 3)]);
    }

    #[test]
    fn degree_one_block_is_the_cartan() {
        let g = lie("B2");
        let inv = extract_generators(&g, 4).unwrap();
        let fam = family(&g, &inv, &[2, 1]);
        let dim = g.dim();
        let monos = monomials_of_degree(dim, 1);
        let index: HashMap<Monomial, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut linear = SparseMat::new(monos.len());
        for p in fam.products_of_degree(1) {
            linear.push_row(p.coefficient_row(&index));
        }
        let mut cartan = SparseMat::new(monos.len());
        for i in 0..g.rank() {
            cartan.push_row(SparsePoly::var(dim, g.cartan_index(i)).coefficient_row(&index));
        }
        assert_eq!(linear.rref().rows(), cartan.rref().rows());
    }
}
