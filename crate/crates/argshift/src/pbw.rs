//! The enveloping algebra via PBW straightening.
//!
//! Normal form: products are written with factors in the fixed basis order
//! (negative root vectors, then the Cartan, then positive root vectors —
//! the same order the polynomial ring uses), so an element is a rational
//! combination of exponent vectors exactly like a [`SparsePoly`], except
//! the product is the ordered noncommutative one. Out-of-order adjacent
//! pairs rewrite through `xy = yx + [x, y]`; the normal form is independent
//! of the rewriting route, which the associativity test exercises.
//!
//! `symmetrize` sends a monomial `x_1 ... x_k` to the average of its `k!`
//! orderings and is a section of the symbol map `gr` (top filtration part),
//! which is how the commutative quadratic slice is carried into the
//! enveloping algebra.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::chevalley::LieAlgebra;
use crate::polyring::{Monomial, SparsePoly};
use crate::rational::{factorial, Q};
use crate::report::LiftReport;
use crate::shift::QuadraticSlice;
use crate::{Error, Result};

/// An element of the enveloping algebra in PBW normal form: ordered
/// monomials (exponent vectors over the basis order) with rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UEAElement {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl UEAElement {
    pub fn zero(nvars: usize) -> Self {
        UEAElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut out = Self::zero(nvars);
        out.add_term(Monomial(vec![0; nvars]), c);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("just inserted");
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Q) -> UEAElement {
        if c.is_zero() {
            return UEAElement::zero(self.nvars);
        }
        UEAElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Largest total degree among the stored monomials.
    pub fn filtration_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// The degree-`n` piece, reinterpreted as a commutative polynomial.
    pub fn degree_part(&self, n: usize) -> SparsePoly {
        SparsePoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Symbol map: the top filtration part as a commutative polynomial.
    pub fn gr(&self) -> SparsePoly {
        self.degree_part(self.filtration_degree())
    }

    /// Same rendering as the polynomial ring, with `*` read as the ordered
    /// product.
    pub fn to_text(&self, names: &[String]) -> String {
        SparsePoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
        .to_text(names)
    }
}

impl std::ops::Add for &UEAElement {
    type Output = UEAElement;
    fn add(self, rhs: &UEAElement) -> UEAElement {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &UEAElement {
    type Output = UEAElement;
    fn sub(self, rhs: &UEAElement) -> UEAElement {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

/// PBW rewriting engine with a memoized word table.
pub struct Straightener<'a> {
    lie: &'a LieAlgebra,
    memo: HashMap<Vec<usize>, UEAElement>,
}

impl<'a> Straightener<'a> {
    pub fn new(lie: &'a LieAlgebra) -> Self {
        Straightener {
            lie,
            memo: HashMap::new(),
        }
    }

    pub fn lie(&self) -> &LieAlgebra {
        self.lie
    }

    fn word_monomial(&self, word: &[usize]) -> Monomial {
        let mut exps = vec![0u16; self.lie.dim()];
        for b in word {
            exps[*b] += 1;
        }
        Monomial(exps)
    }

    /// Normal form of the product of basis generators in the given order.
    pub fn straighten(&mut self, word: &[usize]) -> Result<UEAElement> {
        let dim = self.lie.dim();
        if word.iter().any(|b| *b >= dim) {
            return Err(Error::BasisMismatch);
        }
        if let Some(cached) = self.memo.get(word) {
            return Ok(cached.clone());
        }
        let descent = word.windows(2).position(|w| w[0] > w[1]);
        let result = match descent {
            None => {
                let mut out = UEAElement::zero(dim);
                out.add_term(self.word_monomial(word), Q::one());
                out
            }
            Some(i) => {
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut out = self.straighten(&swapped)?;
                for (target, coeff) in self.lie.bracket_basis(word[i], word[i + 1]).clone() {
                    let mut shorter: Vec<usize> = word[..i].to_vec();
                    shorter.push(target);
                    shorter.extend_from_slice(&word[i + 2..]);
                    out = &out + &self.straighten(&shorter)?.scale(&coeff);
                }
                out
            }
        };
        self.memo.insert(word.to_vec(), result.clone());
        Ok(result)
    }

    fn monomial_word(m: &Monomial) -> Vec<usize> {
        let mut word = Vec::with_capacity(m.degree());
        for (b, e) in m.0.iter().enumerate() {
            for _ in 0..*e {
                word.push(b);
            }
        }
        word
    }

    pub fn mul(&mut self, a: &UEAElement, b: &UEAElement) -> Result<UEAElement> {
        if a.nvars != self.lie.dim() || b.nvars != self.lie.dim() {
            return Err(Error::BasisMismatch);
        }
        let mut out = UEAElement::zero(a.nvars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mut word = Self::monomial_word(ma);
                word.extend(Self::monomial_word(mb));
                let prod = self.straighten(&word)?;
                out = &out + &prod.scale(&(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn commutator(&mut self, a: &UEAElement, b: &UEAElement) -> Result<UEAElement> {
        Ok(&self.mul(a, b)? - &self.mul(b, a)?)
    }

    /// The symmetrization map: each monomial goes to the average of its
    /// `k!` factor orderings, straightened.
    pub fn symmetrize(&mut self, p: &SparsePoly) -> Result<UEAElement> {
        if p.nvars() != self.lie.dim() {
            return Err(Error::BasisMismatch);
        }
        let mut out = UEAElement::zero(p.nvars());
        for (m, c) in p.terms() {
            let word = Self::monomial_word(m);
            let k = word.len();
            let mut acc = UEAElement::zero(p.nvars());
            let mut perm = word.clone();
            permute(&mut perm, k, &mut |w| -> Result<()> {
                let s = self.straighten(w)?;
                acc = &acc + &s;
                Ok(())
            })?;
            out = &out + &acc.scale(&(c / factorial(k)));
        }
        Ok(out)
    }
}

/// Heap's algorithm: visits all `n!` arrangements, repeats included.
fn permute<F: FnMut(&[usize]) -> Result<()>>(
    word: &mut [usize],
    n: usize,
    visit: &mut F,
) -> Result<()> {
    if n <= 1 {
        return visit(word);
    }
    for i in 0..n {
        permute(word, n - 1, visit)?;
        if n % 2 == 0 {
            word.swap(i, n - 1);
        } else {
            word.swap(0, n - 1);
        }
    }
    Ok(())
}

/// Symmetrizes every slice element into the enveloping algebra and checks
/// that all pairs commute there.
pub fn check_quadratic_lift(lie: &LieAlgebra, slice: &QuadraticSlice) -> Result<LiftReport> {
    let mut straightener = Straightener::new(lie);
    let elements = slice.elements();
    let lifted: Vec<UEAElement> = elements
        .iter()
        .map(|p| straightener.symmetrize(p))
        .collect::<Result<Vec<_>>>()?;
    let names = lie.basis_names();
    let mut pairs_checked = 0;
    let mut witnesses = Vec::new();
    for i in 0..lifted.len() {
        for j in i + 1..lifted.len() {
            let c = straightener.commutator(&lifted[i], &lifted[j])?;
            pairs_checked += 1;
            if !c.is_zero() {
                witnesses.push(format!(
                    "[{}, {}] = {}",
                    lifted[i].to_text(names),
                    lifted[j].to_text(names),
                    c.to_text(names)
                ));
            }
        }
    }
    Ok(LiftReport {
        pairs_checked,
        all_commute: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::extract_generators;
    use crate::polyring::BracketPencil;
    use crate::rational::{q, qq};
    use crate::root_system::{CartanVector, RootSystem};
    use crate::shift::ShiftFamily;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lie(s: &str) -> LieAlgebra {
        LieAlgebra::build(RootSystem::build(s.parse().unwrap()).unwrap()).unwrap()
    }

    fn random_homogeneous<R: Rng>(rng: &mut R, dim: usize, degree: usize) -> SparsePoly {
        let mut p = SparsePoly::zero(dim);
        for _ in 0..4 {
            let mut exps = vec![0u16; dim];
            for _ in 0..degree {
                exps[rng.gen_range(0..dim)] += 1;
            }
            p.add_term(Monomial(exps), q(rng.gen_range(-4..=4)));
        }
        p
    }

    #[test]
    fn sl2_straightening_golden() {
        let g = lie("A1");
        let mut s = Straightener::new(&g);
        let (f, h, e) = (g.neg_index(0), g.cartan_index(0), g.pos_index(0));
        // e f -> f e + h.
        let ef = s.straighten(&[e, f]).unwrap();
        let mut expect = UEAElement::zero(3);
        expect.add_term(Monomial(vec![1, 0, 1]), q(1));
        expect.add_term(Monomial(vec![0, 1, 0]), q(1));
        assert_eq!(ef, expect);
        // Already ordered words are fixed.
        let fe = s.straighten(&[f, e]).unwrap();
        assert_eq!(fe.num_terms(), 1);
        // h h stays h^2.
        let hh = s.straighten(&[h, h]).unwrap();
        assert_eq!(hh.degree_part(2).coeff(&Monomial(vec![0, 2, 0])), q(1));
    }

    #[test]
    fn symmetrize_golden_and_identity_on_linears() {
        let g = lie("A1");
        let mut s = Straightener::new(&g);
        let ef = SparsePoly::monomial(3, Monomial(vec![1, 0, 1]), q(1));
        let sym = s.symmetrize(&ef).unwrap();
        // (ef + fe)/2 = fe + h/2.
        let mut expect = UEAElement::zero(3);
        expect.add_term(Monomial(vec![1, 0, 1]), q(1));
        expect.add_term(Monomial(vec![0, 1, 0]), qq(1, 2));
        assert_eq!(sym, expect);

        let linear = &SparsePoly::var(3, 0) + &SparsePoly::var(3, 2).scale(&q(-7));
        let sym = s.symmetrize(&linear).unwrap();
        assert_eq!(sym.gr(), linear);
        assert_eq!(sym.filtration_degree(), 1);

        let h2 = SparsePoly::monomial(3, Monomial(vec![0, 2, 0]), q(1));
        assert_eq!(s.symmetrize(&h2).unwrap().num_terms(), 1);
    }

    #[test]
    fn gr_symmetrize_is_the_identity_on_homogeneous_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for s_label in ["A1", "A2"] {
            let g = lie(s_label);
            let mut s = Straightener::new(&g);
            for _ in 0..25 {
                let d = rng.gen_range(1..=4);
                let p = random_homogeneous(&mut rng, g.dim(), d);
                if p.is_zero() {
                    continue;
                }
                let sym = s.symmetrize(&p).unwrap();
                assert_eq!(sym.gr(), p, "{s_label}");
            }
        }
    }

    #[test]
    fn straightening_is_associative_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = lie("A2");
        let mut s = Straightener::new(&g);
        for _ in 0..30 {
            let len = rng.gen_range(1..=2);
            let word = |rng: &mut ChaCha8Rng, len: usize| -> Vec<usize> {
                (0..len).map(|_| rng.gen_range(0..g.dim())).collect()
            };
            let (wa, wb, wc) = (
                word(&mut rng, len),
                word(&mut rng, 2),
                word(&mut rng, len),
            );
            let a = s.straighten(&wa).unwrap();
            let b = s.straighten(&wb).unwrap();
            let c = s.straighten(&wc).unwrap();
            let ab = s.mul(&a, &b).unwrap();
            let bc = s.mul(&b, &c).unwrap();
            let left = s.mul(&ab, &c).unwrap();
            let right = s.mul(&a, &bc).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn commutator_filtration_drops_and_gr_matches_the_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let g = lie("A2");
        let mut s = Straightener::new(&g);
        let pencil = BracketPencil::lie_poisson(&g);
        for _ in 0..12 {
            let da = rng.gen_range(1..=2);
            let db = rng.gen_range(1..=2);
            let f = random_homogeneous(&mut rng, g.dim(), da);
            let h = random_homogeneous(&mut rng, g.dim(), db);
            if f.is_zero() || h.is_zero() {
                continue;
            }
            let sf = s.symmetrize(&f).unwrap();
            let sh = s.symmetrize(&h).unwrap();
            let c = s.commutator(&sf, &sh).unwrap();
            assert!(c.filtration_degree() <= da + db - 1 || c.is_zero());
            let top = c.degree_part(da + db - 1);
            assert_eq!(top, pencil.bracket(&f, &h).unwrap());
        }
    }

    #[test]
    fn sl2_quadratic_slice_lifts_commutatively() {
        let g = lie("A1");
        let inv = extract_generators(&g, 2).unwrap();
        let fam = ShiftFamily::new(&g, &inv, CartanVector::from_ints(&[3])).unwrap();
        let slice = fam.quadratic_slice().unwrap();
        let report = check_quadratic_lift(&g, &slice).unwrap();
        assert!(report.all_commute);
        assert_eq!(report.pairs_checked, 6);
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn sl3_quadratic_slice_lifts_commutatively() {
        let g = lie("A2");
        let inv = extract_generators(&g, 3).unwrap();
        let fam = ShiftFamily::new(&g, &inv, CartanVector::from_ints(&[3, 1])).unwrap();
        let slice = fam.quadratic_slice().unwrap();
        let report = check_quadratic_lift(&g, &slice).unwrap();
        assert!(report.all_commute, "witnesses: {:?}", report.witnesses);
        assert_eq!(report.pairs_checked, 28);
    }

    #[test]
    fn rejects_foreign_bases() {
        let g = lie("A1");
        let mut s = Straightener::new(&g);
        assert!(matches!(
            s.straighten(&[5]),
            Err(Error::BasisMismatch)
        ));
        assert!(matches!(
            s.symmetrize(&SparsePoly::var(4, 0)),
            Err(Error::BasisMismatch)
        ));
    }
}
