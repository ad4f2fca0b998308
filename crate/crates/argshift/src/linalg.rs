//! Exact sparse linear algebra over the rationals.
//!
//! Rows are kept as primitive integer vectors internally (denominators
//! cleared, content divided out) and eliminated by cross-multiplication, so
//! no floating point and no uncontrolled coefficient growth inside a row.
//! All outputs are canonical: the reduced row echelon form of a matrix
//! depends only on its row space and the column order, which downstream code
//! fixes by ordering monomials graded-lexicographically. Kernels are read off
//! the RREF free columns in ascending order, which makes every basis this
//! module hands out reproducible across runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// A sparse rational row: strictly increasing column indices, nonzero values.
pub type QRow = Vec<(usize, Q)>;

type ZRow = Vec<(usize, BigInt)>;

#[derive(Clone, Debug)]
pub struct SparseMat {
    ncols: usize,
    rows: Vec<QRow>,
}

impl SparseMat {
    pub fn new(ncols: usize) -> Self {
        SparseMat {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QRow] {
        &self.rows
    }

    /// Adds a row given in any order, merging duplicate columns.
    pub fn push_row(&mut self, mut row: QRow) {
        row.sort_by_key(|(c, _)| *c);
        let mut merged: QRow = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.ncols, "column {} out of range {}", c, self.ncols);
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.rows.push(merged);
    }

    pub fn rank(&self) -> usize {
        Eliminator::new(self.ncols).insert_all(&self.rows).npivots()
    }

    /// Canonical reduced row echelon form: pivots 1, pivot columns cleared,
    /// rows sorted by pivot column.
    pub fn rref(&self) -> SparseMat {
        let elim = Eliminator::new(self.ncols).insert_all(&self.rows);
        elim.rref()
    }

    /// A canonical basis of `{x : M x = 0}`, one row per free column of the
    /// RREF, in ascending free-column order. Each basis vector is primitive
    /// integer with positive leading entry.
    pub fn kernel(&self) -> SparseMat {
        let rref = self.rref();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.ncols];
        for (r, row) in rref.rows.iter().enumerate() {
            if let Some((c, _)) = row.first() {
                pivot_of_col[*c] = Some(r);
            }
        }
        let mut kernel = SparseMat::new(self.ncols);
        for free in 0..self.ncols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v: QRow = vec![(free, Q::one())];
            for row in &rref.rows {
                let (pcol, _) = row[0];
                if let Some(val) = row
                    .iter()
                    .find(|(c, _)| *c == free)
                    .map(|(_, val)| val.clone())
                {
                    v.push((pcol, -val));
                }
            }
            kernel.push_row(normalize_primitive(v));
        }
        kernel
    }

    /// Reduces `row` against these rows, which must be in RREF. Returns the
    /// remainder; an empty remainder means `row` lies in the row space.
    pub fn reduce_against_rref(&self, row: &QRow) -> QRow {
        let mut dense = std::collections::BTreeMap::new();
        for (c, v) in row {
            dense.insert(*c, v.clone());
        }
        for rref_row in &self.rows {
            let (pcol, pval) = &rref_row[0];
            let coeff = match dense.get(pcol) {
                Some(v) if !v.is_zero() => v / pval,
                _ => continue,
            };
            for (c, v) in rref_row {
                let entry = dense.entry(*c).or_insert_with(Q::zero);
                *entry -= &coeff * v;
            }
        }
        dense
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Whether every given row lies in this RREF's row space.
    pub fn rref_contains_rows(&self, rows: &[QRow]) -> bool {
        rows.iter().all(|r| self.reduce_against_rref(r).is_empty())
    }
}

/// Multiplies a rational row through by the lcm of denominators over the gcd
/// of numerators and flips signs so the leading entry is positive.
pub fn normalize_primitive(mut row: QRow) -> QRow {
    row.sort_by_key(|(c, _)| *c);
    row.retain(|(_, v)| !v.is_zero());
    if row.is_empty() {
        return row;
    }
    let mut lcm = BigInt::one();
    for (_, v) in &row {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * &lcm / v.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for (_, v) in &ints {
        gcd = gcd.gcd(v);
    }
    if ints[0].1.is_negative() {
        gcd = -gcd;
    }
    for (_, v) in &mut ints {
        *v = &*v / &gcd;
    }
    ints.into_iter()
        .map(|(c, v)| (c, Q::from_integer(v)))
        .collect()
}

/// Incremental integer echelon form: rows are reduced against the current
/// pivots as they arrive, and a surviving remainder becomes a new pivot. The
/// final RREF does not depend on insertion order.
struct Eliminator {
    ncols: usize,
    // Pivot rows as primitive integer vectors, keyed by leading column.
    pivots: std::collections::BTreeMap<usize, ZRow>,
}

fn strip_content(row: &mut ZRow) {
    let mut gcd = BigInt::zero();
    for (_, v) in row.iter() {
        gcd = gcd.gcd(v);
        if gcd.is_one() {
            return;
        }
    }
    if gcd.is_zero() || gcd.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &gcd;
    }
}

/// `a - (a_lead / b_lead) * b` computed as `(b_lead * a - a_lead * b) / content`,
/// where `b`'s leading column is the elimination column.
fn eliminate_col(a: &ZRow, acoef: &BigInt, b: &ZRow, bcoef: &BigInt) -> ZRow {
    let mut out: ZRow = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = bcoef * va - acoef * vb;
                i += 1;
                j += 1;
                (*ca, v)
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, bcoef * va)
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, bcoef * va)
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, -acoef * vb)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    strip_content(&mut out);
    out
}

impl Eliminator {
    fn new(ncols: usize) -> Self {
        Eliminator {
            ncols,
            pivots: std::collections::BTreeMap::new(),
        }
    }

    fn insert_all(mut self, rows: &[QRow]) -> Self {
        for row in rows {
            self.insert(to_int_row(row));
        }
        self
    }

    fn insert(&mut self, mut row: ZRow) {
        loop {
            let Some((lead_col, lead_val)) = row.first().map(|(c, v)| (*c, v.clone())) else {
                return;
            };
            match self.pivots.get(&lead_col) {
                Some(pivot) => {
                    let pval = pivot[0].1.clone();
                    row = eliminate_col(&row, &lead_val, pivot, &pval);
                }
                None => {
                    self.pivots.insert(lead_col, row);
                    return;
                }
            }
        }
    }

    fn npivots(&self) -> usize {
        self.pivots.len()
    }

    fn rref(&self) -> SparseMat {
        // Back-substitute from the rightmost pivot so each pass fully clears
        // that pivot column from the rows above.
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut reduced: std::collections::BTreeMap<usize, ZRow> = self.pivots.clone();
        for (k, col) in cols.iter().enumerate().rev() {
            let pivot = reduced[col].clone();
            let pval = pivot[0].1.clone();
            for upper in &cols[..k] {
                let row = reduced.get_mut(upper).unwrap();
                if let Some((_, coef)) = row.iter().find(|(c, _)| c == col) {
                    let coef = coef.clone();
                    *row = eliminate_col(row, &coef, &pivot, &pval);
                }
            }
        }
        let mut out = SparseMat::new(self.ncols);
        for (_, row) in reduced {
            let lead = row[0].1.clone();
            out.rows.push(
                row.into_iter()
                    .map(|(c, v)| (c, Q::new(v, lead.clone())))
                    .collect(),
            );
        }
        out
    }
}

fn to_int_row(row: &QRow) -> ZRow {
    let prim = normalize_primitive(row.clone());
    prim.into_iter()
        .map(|(c, v)| (c, v.numer().clone()))
        .collect()
}
