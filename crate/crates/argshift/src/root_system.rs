//! Root systems of the finite crystallographic types, built from their Cartan
//! matrices by closing the simple roots under root strings.
//!
//! Roots are stored as integer coordinate vectors in the basis of simple
//! roots, so `alpha = sum_i k_i alpha_i` is just `[k_1, ..., k_l]`. The
//! invariant bilinear form is normalized so that long roots have squared
//! length 2; concretely `(alpha_i, alpha_j)` is the Gram matrix
//! `G_ij = d_j a_ij` where `a` is the Cartan matrix and `d_j` the symmetrizer
//! scaled to `max d_j = 1`. Cartan-space vectors ("mu", "h") are rational
//! coordinate vectors in the basis `h_{alpha_1}, ..., h_{alpha_l}` of
//! form-duals of the simple roots, so the natural pairing of a root with such
//! a vector is `<alpha, x> = k^T G x`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::rational::{q, Q};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A simple type label such as `A2` or `G2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Self {
        TypeLabel { family, rank }
    }

    /// The types the command-line tool accepts. Construction itself is
    /// type-generic; this is the tested surface.
    pub fn cli_supported(&self) -> bool {
        matches!(
            (self.family, self.rank),
            (Family::A, 1..=3) | (Family::B, 2) | (Family::C, 2) | (Family::G, 2)
        )
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(err)? {
            'A' | 'a' => Family::A,
            'B' | 'b' => Family::B,
            'C' | 'c' => Family::C,
            'D' | 'd' => Family::D,
            'E' | 'e' => Family::E,
            'F' | 'f' => Family::F,
            'G' | 'g' => Family::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        Ok(TypeLabel { family, rank })
    }
}

/// A root written in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|k| -k).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|k| *k == 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", coords.join(","))
    }
}

/// A rational vector in the Cartan subalgebra, written in the basis
/// `h_{alpha_1}, ..., h_{alpha_l}` of form-duals of the simple roots. Used for
/// both shift directions `mu` and test elements `h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanVector(pub Vec<Q>);

impl CartanVector {
    pub fn zero(rank: usize) -> Self {
        CartanVector(vec![Q::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        CartanVector(coords.iter().map(|k| q(*k)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CartanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.0.iter().map(crate::rational::q_to_string).collect();
        write!(f, "({})", coords.join(", "))
    }
}

/// A realized root system: the positive roots in a fixed deterministic order,
/// the Cartan matrix, and the normalized invariant form on the simple roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<Q>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

/// Orders roots by height, then by coordinates with the lexicographically
/// larger vector first, so the simple roots come out as `alpha_1, alpha_2, ...`.
fn root_order_key(r: &Root) -> (i64, Vec<i64>) {
    (r.height(), r.0.iter().map(|k| -k).collect())
}

impl RootSystem {
    pub fn build(label: TypeLabel) -> Result<Self> {
        let cartan = cartan_matrix(label)?;
        let rank = label.rank;
        let gram = gram_from_cartan(&cartan);

        // Close the simple roots under root strings: beta + alpha_i is a root
        // exactly when p - <beta, alpha_i^vee> > 0, with p the length of the
        // string below beta in direction alpha_i.
        let mut set: HashSet<Root> = HashSet::new();
        for i in 0..rank {
            let mut coords = vec![0i64; rank];
            coords[i] = 1;
            set.insert(Root(coords));
        }
        let mut frontier: Vec<Root> = set.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..rank {
                    let mut alpha = vec![0i64; rank];
                    alpha[i] = 1;
                    let alpha = Root(alpha);
                    let mut p = 0i64;
                    loop {
                        let mut down = beta.clone();
                        for (c, a) in down.0.iter_mut().zip(&alpha.0) {
                            *c -= a * (p + 1);
                        }
                        if set.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..rank).map(|j| beta.0[j] * cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let up = beta.add(&alpha);
                        if set.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }

        let mut positive: Vec<Root> = set.into_iter().collect();
        positive.sort_by_key(root_order_key);

        for r in &positive {
            if r.0.iter().any(|k| *k < 0) || r.is_zero() {
                return Err(Error::SignConsistency(format!(
                    "closure produced a non-positive vector {r}"
                )));
            }
        }
        // Reduced system: no positive root is a multiple of another.
        for a in &positive {
            for b in &positive {
                if a != b {
                    let prop = a
                        .0
                        .iter()
                        .zip(&b.0)
                        .all(|(x, y)| x * b.height() == y * a.height());
                    let parallel = (0..rank).all(|i| {
                        (0..rank).all(|j| a.0[i] * b.0[j] == a.0[j] * b.0[i])
                    });
                    if prop && parallel {
                        return Err(Error::SignConsistency(format!(
                            "proportional positive roots {a} and {b}"
                        )));
                    }
                }
            }
        }

        let index = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        Ok(RootSystem {
            label,
            cartan,
            gram,
            positive,
            index,
        })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(alpha_i, alpha_j)` with long roots of squared length 2.
    pub fn gram_matrix(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// `dim g = rank + 2 * |positive roots|`.
    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.num_positive()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut coords = vec![0i64; self.rank()];
        coords[i] = 1;
        Root(coords)
    }

    pub fn pos_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }

    /// `(a, b)` for arbitrary integer combinations of simple roots.
    pub fn dot(&self, a: &Root, b: &Root) -> Q {
        let mut acc = Q::zero();
        for (i, ka) in a.0.iter().enumerate() {
            if *ka == 0 {
                continue;
            }
            for (j, kb) in b.0.iter().enumerate() {
                if *kb == 0 {
                    continue;
                }
                acc += &self.gram[i][j] * q(*ka) * q(*kb);
            }
        }
        acc
    }

    pub fn norm2(&self, r: &Root) -> Q {
        self.dot(r, r)
    }

    /// `<alpha, x> = (t_alpha, x) = k^T G x` for `x` in the `h_{alpha_i}`
    /// basis. Rejects vectors that are not roots, to catch index slips early.
    pub fn pairing(&self, alpha: &Root, x: &CartanVector) -> Result<Q> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        if x.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.rank(),
            });
        }
        let mut acc = Q::zero();
        for (i, k) in alpha.0.iter().enumerate() {
            if *k == 0 {
                continue;
            }
            for (j, xj) in x.0.iter().enumerate() {
                acc += &self.gram[i][j] * q(*k) * xj;
            }
        }
        Ok(acc)
    }

    /// Regular means no root pairs to zero.
    pub fn is_regular(&self, mu: &CartanVector) -> bool {
        self.positive
            .iter()
            .all(|alpha| !self.pairing(alpha, mu).expect("positive root").is_zero())
    }

    /// First positive root orthogonal to `mu`, if any; used for diagnostics.
    pub fn vanishing_root(&self, mu: &CartanVector) -> Option<&Root> {
        self.positive
            .iter()
            .find(|alpha| self.pairing(alpha, mu).expect("positive root").is_zero())
    }

    /// Coefficients of the coroot `alpha^vee` in the basis of simple coroots:
    /// `c_i = k_i (alpha_i, alpha_i) / (alpha, alpha)`. Always integers.
    pub fn coroot_coeffs(&self, r: &Root) -> Vec<Q> {
        let n2 = self.norm2(r);
        r.0.iter()
            .enumerate()
            .map(|(i, k)| q(*k) * &self.gram[i][i] / &n2)
            .collect()
    }
}

fn gram_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let rank = cartan.len();
    // Symmetrize: with d_j = (alpha_j, alpha_j)/2 the matrix a_ij d_j is
    // symmetric, so d_j = d_i a_ji / a_ij along edges; the graph is connected
    // for all the irreducible types handled here. Scale so max(d) = 1.
    let mut d: Vec<Option<Q>> = vec![None; rank];
    d[0] = Some(q(1));
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..rank {
            for j in 0..rank {
                if i != j && cartan[i][j] != 0 {
                    if let (Some(di), None) = (d[i].clone(), &d[j]) {
                        d[j] = Some(di * q(cartan[j][i]) / q(cartan[i][j]));
                        changed = true;
                    }
                }
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.expect("connected Dynkin diagram"))
        .collect();
    let dmax = d.iter().cloned().fold(q(0), |a, b| if b > a { b } else { a });
    let d: Vec<Q> = d.into_iter().map(|x| x / &dmax).collect();

    (0..rank)
        .map(|i| (0..rank).map(|j| &d[j] * q(cartan[i][j])).collect())
        .collect()
}

fn cartan_matrix(label: TypeLabel) -> Result<Vec<Vec<i64>>> {
    let l = label.rank;
    let unsupported = || Error::UnsupportedType(label.to_string());

    let chain = |l: usize| -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; l]; l];
        for i in 0..l {
            a[i][i] = 2;
            if i + 1 < l {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };

    match (label.family, l) {
        (Family::A, l) if l >= 1 => Ok(chain(l)),
        (Family::B, l) if l >= 2 => {
            // alpha_l short: a_{l-1,l} = -2.
            let mut a = chain(l);
            a[l - 2][l - 1] = -2;
            Ok(a)
        }
        (Family::C, l) if l >= 2 => {
            // alpha_l long: a_{l,l-1} = -2.
            let mut a = chain(l);
            a[l - 1][l - 2] = -2;
            Ok(a)
        }
        (Family::D, l) if l >= 4 => {
            let mut a = chain(l - 1);
            a.iter_mut().for_each(|row| row.push(0));
            a.push(vec![0; l]);
            a[l - 1][l - 1] = 2;
            // alpha_l attaches to alpha_{l-2}.
            a[l - 1][l - 3] = -1;
            a[l - 3][l - 1] = -1;
            Ok(a)
        }
        (Family::E, l) if (6..=8).contains(&l) => {
            // Bourbaki numbering: node 2 attaches to node 4 of the chain
            // 1-3-4-5-...-l.
            let mut a = vec![vec![0i64; l]; l];
            for i in 0..l {
                a[i][i] = 2;
            }
            let mut link = |i: usize, j: usize| {
                a[i][j] = -1;
                a[j][i] = -1;
            };
            link(0, 2);
            link(1, 3);
            for i in 2..l - 1 {
                link(i, i + 1);
            }
            Ok(a)
        }
        (Family::F, 4) => Ok(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        (Family::G, 2) => Ok(vec![vec![2, -1], vec![-3, 2]]),
        _ => Err(unsupported()),
    }
}
