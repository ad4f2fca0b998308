//! Sparse polynomials on `g*` and the compatible bracket pencil.
//!
//! A polynomial is a map from exponent vectors (fixed width = dim g) to
//! nonzero rational coefficients, kept in a `BTreeMap` under the graded
//! lexicographic order, so iteration, serialization and pivot selection are
//! all deterministic.
//!
//! The Poisson structures: with `gamma` the character that is 1 on each
//! `h_{alpha_i}` and 0 on the root vectors, the pencil member at parameter
//! `t` acts on generators by
//!
//! ```text
//! {x, y}_t = t [x, y] + (1 - t) gamma([x, y])
//! ```
//!
//! and extends to polynomials as a biderivation. `t = 1` is the Lie–Poisson
//! bracket; `t = 0` is the frozen-argument bracket whose value on generators
//! is the constant `gamma([x, y])`. On a homogeneous pair of degrees `(a, b)`
//! the two pieces land in degrees `a + b - 1` and `a + b - 2`.
//!
//! The rescaling-substitution `psi_t` sends `x` to `t^{-1} x + t^{-2}(1-t)
//! gamma(x)` on generators; it intertwines the pencil members,
//! `{psi_t f, psi_t g}_t = psi_t({f, g}_1)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::chevalley::{BasisCombo, LieAlgebra};
use crate::linalg::QRow;
use crate::rational::{q, q_to_string, Q};
use crate::{Error, Result};

/// An exponent vector of fixed width, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, b: usize) -> Self {
        let mut e = vec![0; nvars];
        e[b] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|e| *e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Divides by `x_b`; the exponent must be positive.
    pub fn div_var(&self, b: usize) -> Monomial {
        let mut e = self.0.clone();
        assert!(e[b] > 0);
        e[b] -= 1;
        Monomial(e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// All monomials of total degree `n` in `nvars` variables, ascending.
pub fn monomials_of_degree(nvars: usize, n: usize) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Vec<u16>>, prefix: &mut Vec<u16>, left: usize, slots: usize) {
        if slots == 1 {
            prefix.push(left as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for here in 0..=left {
            prefix.push(here as u16);
            rec(out, prefix, left - here, slots - 1);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if n == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut Vec::new(), n, nvars);
    let mut monos: Vec<Monomial> = raw.into_iter().map(Monomial).collect();
    monos.sort();
    monos
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = SparsePoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, b: usize) -> Self {
        let mut p = SparsePoly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, b), Q::one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Q) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut p = SparsePoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(nvars: usize, it: I) -> Self {
        let mut p = SparsePoly::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        // Graded order: the last key has maximal degree.
        self.terms
            .keys()
            .next_back()
            .map(|m| m.degree())
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.0.len(), self.nvars, "monomial width mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        if self.nvars != other.nvars {
            return Err(Error::BasisMismatch);
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        if self.nvars != other.nvars {
            return Err(Error::BasisMismatch);
        }
        Ok(self * other)
    }

    /// `Some(d)` when every term has degree `d` (zero counts as homogeneous
    /// of degree 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Some(0);
        };
        let d = first.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn degree_part(&self, n: usize) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, b: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[b] > 0 {
                out.add_term(m.div_var(b), c * q(m.0[b] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (b, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    term *= &point[b];
                }
            }
            acc += term;
        }
        acc
    }

    /// Simultaneous substitution `x_b -> images[b]`.
    pub fn substitute(&self, images: &[SparsePoly]) -> SparsePoly {
        assert_eq!(images.len(), self.nvars);
        let nvars = images.first().map(|p| p.nvars).unwrap_or(self.nvars);
        let mut out = SparsePoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut acc = SparsePoly::constant(nvars, c.clone());
            for (b, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    acc = &acc * &images[b];
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Coefficients of `t^k` in `p(x + t * shift)`, for `k = 0 ..= deg p`.
    pub fn shift_powers(&self, shift: &[Q]) -> Vec<SparsePoly> {
        assert_eq!(shift.len(), self.nvars);
        let deg = self.degree();
        let mut out = vec![SparsePoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            // conv[k] accumulates the t^k part of prod_b (x_b + t s_b)^{e_b}.
            let mut conv: Vec<SparsePoly> = vec![SparsePoly::constant(self.nvars, c.clone())];
            for (b, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                if shift[b].is_zero() {
                    let mut pow = Monomial::one(self.nvars);
                    pow.0[b] = e as u16;
                    let pw = SparsePoly::monomial(self.nvars, pow, Q::one());
                    conv = conv.into_iter().map(|p| &p * &pw).collect();
                    continue;
                }
                // (x_b + t s)^e = sum_j C(e, j) s^j t^j x_b^{e-j}
                let mut binom: Vec<SparsePoly> = Vec::with_capacity(e + 1);
                let mut coef = Q::one();
                for j in 0..=e {
                    let mut pow = Monomial::one(self.nvars);
                    pow.0[b] = (e - j) as u16;
                    binom.push(SparsePoly::monomial(self.nvars, pow, coef.clone()));
                    coef *= &shift[b] * q((e - j) as i64) / q((j + 1) as i64);
                }
                let mut next = vec![SparsePoly::zero(self.nvars); conv.len() + e];
                for (i, p) in conv.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    for (j, bp) in binom.iter().enumerate() {
                        let prod = p * bp;
                        next[i + j] = &next[i + j] + &prod;
                    }
                }
                conv = next;
            }
            for (k, p) in conv.into_iter().enumerate() {
                out[k] = &out[k] + &p;
            }
        }
        out
    }

    /// Row of coefficients in the monomial basis given by `index`.
    pub fn coefficient_row(&self, index: &std::collections::HashMap<Monomial, usize>) -> QRow {
        let mut row: QRow = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    *index
                        .get(m)
                        .unwrap_or_else(|| panic!("monomial outside the basis")),
                    c.clone(),
                )
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    /// Human-readable form, leading term first.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (b, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[b].clone()),
                    _ => factors.push(format!("{}^{}", names[b], e)),
                }
            }
            if factors.is_empty() {
                parts.push(q_to_string(c));
            } else if c.is_one() {
                parts.push(factors.join(" * "));
            } else {
                parts.push(format!("{} * {}", q_to_string(c), factors.join(" * ")));
            }
        }
        parts.join(" + ")
    }

    /// Machine-readable form: terms leading-first, exponents sparse.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let exps: Vec<serde_json::Value> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(b, e)| serde_json::json!([b, e]))
                    .collect();
                serde_json::json!({ "coeff": q_to_string(c), "exps": exps })
            })
            .collect();
        serde_json::json!({ "nvars": self.nvars, "terms": terms })
    }
}

impl std::ops::Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "basis mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "basis mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&q(-1))
    }
}

impl std::ops::Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "basis mismatch");
        let mut out = SparsePoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// The character of the Borel that is 1 on every `h_{alpha_i}` and 0 on the
/// root vectors; evaluating it on brackets defines the frozen bracket.
#[derive(Clone, Debug)]
pub struct GammaFunctional {
    values: Vec<Q>,
}

impl GammaFunctional {
    pub fn standard(lie: &LieAlgebra) -> Self {
        let mut values = vec![Q::zero(); lie.dim()];
        for i in 0..lie.rank() {
            values[lie.cartan_index(i)] = Q::one();
        }
        GammaFunctional { values }
    }

    pub fn value(&self, b: usize) -> &Q {
        &self.values[b]
    }

    pub fn of_combo(&self, combo: &BasisCombo) -> Q {
        let mut acc = Q::zero();
        for (b, c) in combo {
            if !self.values[*b].is_zero() {
                acc += c * &self.values[*b];
            }
        }
        acc
    }
}

/// `gamma([x, y])` for polynomials of degree at most 1; constants bracket to
/// zero.
pub fn gamma_of_bracket(
    lie: &LieAlgebra,
    gamma: &GammaFunctional,
    x: &SparsePoly,
    y: &SparsePoly,
) -> Result<Q> {
    if x.nvars() != lie.dim() || y.nvars() != lie.dim() {
        return Err(Error::BasisMismatch);
    }
    if x.degree() > 1 || y.degree() > 1 {
        return Err(Error::NonlinearInput);
    }
    let mut acc = Q::zero();
    for (mx, cx) in x.terms() {
        let Some(b) = mx.0.iter().position(|e| *e == 1) else {
            continue;
        };
        for (my, cy) in y.terms() {
            let Some(c) = my.0.iter().position(|e| *e == 1) else {
                continue;
            };
            let g = gamma.of_combo(lie.bracket_basis(b, c));
            if !g.is_zero() {
                acc += cx * cy * g;
            }
        }
    }
    Ok(acc)
}

/// One member of the compatible pencil; `t = 1` is Lie–Poisson, `t = 0` the
/// frozen bracket.
pub struct BracketPencil<'a> {
    pub lie: &'a LieAlgebra,
    pub gamma: GammaFunctional,
    pub t: Q,
}

impl<'a> BracketPencil<'a> {
    pub fn new(lie: &'a LieAlgebra, t: Q) -> Self {
        BracketPencil {
            lie,
            gamma: GammaFunctional::standard(lie),
            t,
        }
    }

    pub fn lie_poisson(lie: &'a LieAlgebra) -> Self {
        Self::new(lie, q(1))
    }

    pub fn frozen(lie: &'a LieAlgebra) -> Self {
        Self::new(lie, q(0))
    }

    /// `{f, g}_t`, extended from generators as a biderivation.
    pub fn bracket(&self, f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly> {
        let dim = self.lie.dim();
        if f.nvars() != dim || g.nvars() != dim {
            return Err(Error::BasisMismatch);
        }
        let t = &self.t;
        let one_minus_t = q(1) - t;
        let mut out = SparsePoly::zero(dim);
        for (mf, cf) in f.terms() {
            for (b, eb) in mf.0.iter().enumerate() {
                if *eb == 0 {
                    continue;
                }
                let df_mono = mf.div_var(b);
                let df_coef = cf * q(*eb as i64);
                for (mg, cg) in g.terms() {
                    for (c, ec) in mg.0.iter().enumerate() {
                        if *ec == 0 {
                            continue;
                        }
                        let combo = self.lie.bracket_basis(b, c);
                        if combo.is_empty() {
                            continue;
                        }
                        let dg_mono = mg.div_var(c);
                        let scalar = &df_coef * cg * q(*ec as i64);
                        let prod = df_mono.mul(&dg_mono);
                        if !t.is_zero() {
                            for (k, cc) in combo {
                                let mut mono = prod.clone();
                                mono.0[*k] += 1;
                                out.add_term(mono, &scalar * t * cc);
                            }
                        }
                        if !one_minus_t.is_zero() {
                            let gval = self.gamma.of_combo(combo);
                            if !gval.is_zero() {
                                out.add_term(prod, &scalar * &one_minus_t * gval);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The pencil-intertwining substitution
/// `psi_t(x) = t^{-1} x + t^{-2}(1 - t) gamma(x)` on generators, undefined at
/// `t = 0`.
pub fn psi_t(lie: &LieAlgebra, f: &SparsePoly, t: &Q) -> Result<SparsePoly> {
    if f.nvars() != lie.dim() {
        return Err(Error::BasisMismatch);
    }
    if t.is_zero() {
        return Err(Error::ZeroPencilParameter);
    }
    let gamma = GammaFunctional::standard(lie);
    let tinv = q(1) / t;
    let shift = (q(1) - t) / (t * t);
    let images: Vec<SparsePoly> = (0..lie.dim())
        .map(|b| {
            let mut img = SparsePoly::var(lie.dim(), b).scale(&tinv);
            let c = &shift * gamma.value(b);
            img = &img + &SparsePoly::constant(lie.dim(), c);
            img
        })
        .collect();
    Ok(f.substitute(&images))
}
