//! Sparse exact matrices, canonical spans, commutants and algebra closure.
//!
//! Matrices are stored row-wise with sorted columns and no explicit zeros, so
//! structural equality is matrix equality. A span of `d x d` matrices is kept
//! in reduced row echelon form over the flattened index `row * d + col`; two
//! spans are equal exactly when their canonical bases coincide.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::Field;
use crate::{Error, Result};

/// Default refusal threshold for the ambient dimension `d`.
pub const DEFAULT_SIZE_CAP: usize = 256;

/// A sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<E> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> ExactMatrix<E> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        ExactMatrix { nrows, ncols, rows: alloc::vec![Vec::new(); nrows] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, d: usize) -> Self {
        ExactMatrix { nrows: d, ncols: d, rows: (0..d).map(|i| alloc::vec![(i, field.one())]).collect() }
    }

    /// Sum duplicate positions and drop zeros.
    pub fn from_entries<F, I>(field: &F, nrows: usize, ncols: usize, entries: I) -> Result<Self>
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (usize, usize, E)>,
    {
        let mut acc: Vec<BTreeMap<usize, E>> = alloc::vec![BTreeMap::new(); nrows];
        for (r, c, x) in entries {
            if r >= nrows {
                return Err(Error::IndexOutOfRange { idx: r, max: nrows });
            }
            if c >= ncols {
                return Err(Error::IndexOutOfRange { idx: c, max: ncols });
            }
            match acc[r].entry(c) {
                Entry::Occupied(mut e) => {
                    let v = field.add(e.get(), &x);
                    *e.get_mut() = v;
                }
                Entry::Vacant(e) => {
                    e.insert(x);
                }
            }
        }
        let rows = acc.into_iter().map(|row| row.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()).collect();
        Ok(ExactMatrix { nrows, ncols, rows })
    }

    /// Entries given as small integers.
    pub fn from_integers<F, I>(field: &F, nrows: usize, ncols: usize, entries: I) -> Result<Self>
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        Self::from_entries(field, nrows, ncols, entries.into_iter().map(|(r, c, x)| (r, c, field.from_i64(x))))
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, E)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    /// Nonzero entries of column `c`, i.e. the image of basis vector `c`.
    pub fn column(&self, c: usize) -> SparseVec<E> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.binary_search_by_key(&c, |e| e.0).ok().map(|k| (r, row[k].1.clone())))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec<E>> = alloc::vec![Vec::new(); self.ncols];
        for (r, c, x) in self.entries() {
            rows[c].push((r, x.clone()));
        }
        ExactMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch { expected: self.ncols, rows: other.nrows, cols: other.ncols });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, E> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        let prod = field.mul(a, b);
                        match acc.entry(*j) {
                            Entry::Occupied(mut e) => {
                                let v = field.add(e.get(), &prod);
                                *e.get_mut() = v;
                            }
                            Entry::Vacant(e) => {
                                e.insert(prod);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
            })
            .collect();
        Ok(ExactMatrix { nrows: self.nrows, ncols: other.ncols, rows })
    }

    /// `self + scale * other`.
    pub fn add_scaled<F: Field<Elem = E>>(&self, other: &Self, scale: &E, field: &F) -> Result<Self> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch { expected: self.nrows, rows: other.nrows, cols: other.ncols });
        }
        let minus = field.neg(scale);
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(field, a, &minus, b)).collect();
        Ok(ExactMatrix { nrows: self.nrows, ncols: self.ncols, rows })
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self> {
        self.add_scaled(other, &field.one(), field)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Result<Self> {
        self.add_scaled(other, &field.from_i64(-1), field)
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        if field.is_zero(s) {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(c, x)| (*c, field.mul(x, s))).collect()).collect();
        ExactMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    /// `self * other == other * self`.
    pub fn commutes_with<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Result<bool> {
        Ok(self.mul(other, field)? == other.mul(self, field)?)
    }

    pub fn trace<F: Field<Elem = E>>(&self, field: &F) -> E {
        (0..self.nrows.min(self.ncols)).filter_map(|i| self.get(i, i)).fold(field.zero(), |acc, x| field.add(&acc, x))
    }

    /// Conjugate by a diagonal sign matrix: entry `(r, c)` times `s_r s_c`.
    pub fn conjugate_by_signs<F: Field<Elem = E>>(&self, signs: &[bool], field: &F) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .map(|(c, x)| if signs[r] != signs[*c] { (*c, field.neg(x)) } else { (*c, x.clone()) })
                    .collect()
            })
            .collect();
        ExactMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    /// Row-major flattening, index `row * ncols + col`.
    pub fn flatten(&self) -> SparseVec<E> {
        self.entries().map(|(r, c, x)| (r * self.ncols + c, x.clone())).collect()
    }

    pub fn from_flat(nrows: usize, ncols: usize, flat: &[(usize, E)]) -> Self {
        let mut rows: Vec<SparseVec<E>> = alloc::vec![Vec::new(); nrows];
        for (k, x) in flat {
            rows[k / ncols].push((k % ncols, x.clone()));
        }
        ExactMatrix { nrows, ncols, rows }
    }

    /// The block indexed by `idx x idx`.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let mut pos = alloc::vec![usize::MAX; self.ncols.max(self.nrows)];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let rows = idx
            .iter()
            .map(|&i| {
                self.rows[i].iter().filter(|(c, _)| pos[*c] != usize::MAX).map(|(c, x)| (pos[*c], x.clone())).collect()
            })
            .collect();
        ExactMatrix { nrows: idx.len(), ncols: idx.len(), rows }
    }

    /// Zero extension of a block back to `d x d`; inverse of [`restrict`](Self::restrict).
    pub fn embed(&self, d: usize, idx: &[usize]) -> Self {
        let mut rows: Vec<SparseVec<E>> = alloc::vec![Vec::new(); d];
        for (k, row) in self.rows.iter().enumerate() {
            let mut mapped: SparseVec<E> = row.iter().map(|(c, x)| (idx[*c], x.clone())).collect();
            mapped.sort_by_key(|e| e.0);
            rows[idx[k]] = mapped;
        }
        ExactMatrix { nrows: d, ncols: d, rows }
    }

    /// Entries confined to the given rows and columns.
    pub fn is_supported_on(&self, idx: &[usize]) -> bool {
        let mut inside = alloc::vec![false; self.ncols.max(self.nrows)];
        for &i in idx {
            inside[i] = true;
        }
        self.entries().all(|(r, c, _)| inside[r] && inside[c])
    }
}

/// `a - s * b` for sparse vectors.
fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], s: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.neg(&field.mul(s, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub_mul(&a[i].1, s, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduce `v` against rows with leading coefficient 1; `lookup` maps a
/// column to the row pivoting on it.
fn reduce_with<F: Field>(
    field: &F,
    rows: &[SparseVec<F::Elem>],
    lookup: impl Fn(usize) -> Option<usize>,
    v: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut acc: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
    let mut cursor = 0usize;
    while let Some(c) = acc.range(cursor..).map(|(c, _)| *c).find(|&c| lookup(c).is_some()) {
        cursor = c + 1;
        let row = &rows[lookup(c).expect("pivot present")];
        let coef = acc.remove(&c).expect("entry present");
        for (j, x) in &row[1..] {
            match acc.entry(*j) {
                Entry::Occupied(mut e) => {
                    let nv = field.sub_mul(e.get(), &coef, x);
                    if field.is_zero(&nv) {
                        e.remove();
                    } else {
                        *e.get_mut() = nv;
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(field.neg(&field.mul(&coef, x)));
                }
            }
        }
    }
    acc.into_iter().collect()
}

/// Incremental row echelon form over sparse rows.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    width: usize,
    rows: Vec<SparseVec<E>>,
    pivots: BTreeMap<usize, usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[(usize, E)]) -> SparseVec<E> {
        reduce_with(field, &self.rows, |c| self.pivots.get(&c).copied(), v)
    }

    /// Insert a row; returns whether it enlarged the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &[(usize, E)]) -> bool {
        let mut r = self.reduce(field, v);
        if r.is_empty() {
            return false;
        }
        let inv = field.inv(&r[0].1).expect("leading entry is nonzero");
        for e in r.iter_mut() {
            e.1 = field.mul(&e.1, &inv);
        }
        self.pivots.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Canonical reduced row echelon form, rows ordered by pivot column.
    pub fn into_rref<F: Field<Elem = E>>(self, field: &F) -> (Vec<SparseVec<E>>, Vec<usize>) {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let mut done: Vec<Option<SparseVec<E>>> = alloc::vec![None; rows.len()];
        for i in (0..rows.len()).rev() {
            let (finished, lookup_pivots) = (&done, &pivots);
            let reduced = {
                let lookup =
                    |c: usize| lookup_pivots.binary_search(&c).ok().filter(|&k| k > i && finished[k].is_some());
                // Rows past `i` are final; gather them by index for the reducer.
                let mut acc: BTreeMap<usize, E> = rows[i].iter().cloned().collect();
                let mut cursor = rows[i][0].0 + 1;
                while let Some((c, k)) = acc.range(cursor..).find_map(|(c, _)| lookup(*c).map(|k| (*c, k))) {
                    cursor = c + 1;
                    let coef = acc.remove(&c).expect("entry present");
                    let row = finished[k].as_ref().expect("final row");
                    for (j, x) in &row[1..] {
                        match acc.entry(*j) {
                            Entry::Occupied(mut e) => {
                                let nv = field.sub_mul(e.get(), &coef, x);
                                if field.is_zero(&nv) {
                                    e.remove();
                                } else {
                                    *e.get_mut() = nv;
                                }
                            }
                            Entry::Vacant(e) => {
                                e.insert(field.neg(&field.mul(&coef, x)));
                            }
                        }
                    }
                }
                acc.into_iter().collect::<SparseVec<E>>()
            };
            done[i] = Some(reduced);
        }
        (done.into_iter().map(|r| r.expect("all rows reduced")).collect(), pivots)
    }

    /// Basis of `{x : R x = 0}` read off the reduced form.
    pub fn null_space<F: Field<Elem = E>>(self, field: &F) -> Vec<SparseVec<E>> {
        let width = self.width;
        let (rows, pivots) = self.into_rref(field);
        let mut is_pivot = alloc::vec![false; width];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut free_index = alloc::vec![usize::MAX; width];
        let free: Vec<usize> = (0..width).filter(|&c| !is_pivot[c]).collect();
        for (k, &c) in free.iter().enumerate() {
            free_index[c] = k;
        }
        let mut out: Vec<SparseVec<E>> = free.iter().map(|_| Vec::new()).collect();
        for (row, &p) in rows.iter().zip(&pivots) {
            for (c, x) in &row[1..] {
                out[free_index[*c]].push((p, field.neg(x)));
            }
        }
        for (vec, &f) in out.iter_mut().zip(&free) {
            vec.push((f, field.one()));
            vec.sort_by_key(|e| e.0);
        }
        out
    }
}

/// A linear subspace of `d x d` matrices in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpan<E> {
    d: usize,
    rows: Vec<SparseVec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> AlgebraSpan<E> {
    pub fn zero(d: usize) -> Self {
        AlgebraSpan { d, rows: Vec::new(), pivots: Vec::new() }
    }

    fn from_echelon<F: Field<Elem = E>>(field: &F, d: usize, echelon: Echelon<E>) -> Self {
        let (rows, pivots) = echelon.into_rref(field);
        AlgebraSpan { d, rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical basis as matrices.
    pub fn basis(&self) -> Vec<ExactMatrix<E>> {
        self.rows.iter().map(|r| ExactMatrix::from_flat(self.d, self.d, r)).collect()
    }

    fn echelon(&self) -> Echelon<E> {
        Echelon {
            width: self.d * self.d,
            rows: self.rows.clone(),
            pivots: self.pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect(),
        }
    }

    fn check(&self, mat: &ExactMatrix<E>) -> Result<()> {
        if mat.nrows != self.d || mat.ncols != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, rows: mat.nrows, cols: mat.ncols });
        }
        Ok(())
    }

    fn remainder<F: Field<Elem = E>>(&self, field: &F, v: &[(usize, E)]) -> SparseVec<E> {
        reduce_with(field, &self.rows, |c| self.pivots.binary_search(&c).ok(), v)
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, mat: &ExactMatrix<E>) -> Result<bool> {
        self.check(mat)?;
        Ok(self.remainder(field, &mat.flatten()).is_empty())
    }

    /// Coordinates against the canonical basis, if `mat` lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, mat: &ExactMatrix<E>) -> Result<Option<Vec<E>>> {
        self.check(mat)?;
        let flat = mat.flatten();
        if !self.remainder(field, &flat).is_empty() {
            return Ok(None);
        }
        Ok(Some(
            self.pivots
                .iter()
                .map(|p| {
                    flat.binary_search_by_key(p, |e| e.0).map(|k| flat[k].1.clone()).unwrap_or_else(|_| field.zero())
                })
                .collect(),
        ))
    }

    pub fn contains_span<F: Field<Elem = E>>(&self, field: &F, inner: &Self) -> Result<bool> {
        if inner.d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, rows: inner.d, cols: inner.d });
        }
        Ok(inner.rows.iter().all(|r| self.remainder(field, r).is_empty()))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if other.d != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, rows: other.d, cols: other.d });
        }
        let mut ech = self.echelon();
        for r in &other.rows {
            ech.insert(field, r);
        }
        Ok(Self::from_echelon(field, self.d, ech))
    }

    /// Whether every product `a * b` with `a` here and `b` in `other` vanishes.
    pub fn annihilates<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<bool> {
        let right = other.basis();
        for a in self.basis() {
            for b in &right {
                if !a.mul(b, field)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Canonical-basis equality.
pub fn spans_equal<E: Clone + PartialEq>(a: &AlgebraSpan<E>, b: &AlgebraSpan<E>) -> Result<bool> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch { expected: a.d, rows: b.d, cols: b.d });
    }
    Ok(a == b)
}

/// A field together with the size guard applied to matrix-level work.
#[derive(Clone, Debug)]
pub struct Engine<F> {
    field: F,
    size_cap: usize,
}

impl<F: Field> Engine<F> {
    pub fn new(field: F) -> Self {
        Engine { field, size_cap: DEFAULT_SIZE_CAP }
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn check_size(&self, d: usize) -> Result<()> {
        if d > self.size_cap {
            return Err(Error::SizeCapExceeded { dim: d, cap: self.size_cap });
        }
        Ok(())
    }

    fn check_square(&self, d: usize, mats: &[ExactMatrix<F::Elem>]) -> Result<()> {
        for m in mats {
            if m.nrows != d || m.ncols != d {
                return Err(Error::DimensionMismatch { expected: d, rows: m.nrows, cols: m.ncols });
            }
        }
        Ok(())
    }

    pub fn span_of(&self, d: usize, mats: &[ExactMatrix<F::Elem>]) -> Result<AlgebraSpan<F::Elem>> {
        self.check_square(d, mats)?;
        let mut ech = Echelon::new(d * d);
        for m in mats {
            ech.insert(&self.field, &m.flatten());
        }
        Ok(AlgebraSpan::from_echelon(&self.field, d, ech))
    }

    pub fn in_span(&self, mat: &ExactMatrix<F::Elem>, span: &AlgebraSpan<F::Elem>) -> Result<bool> {
        span.contains(&self.field, mat)
    }

    /// Rank of a family of sparse vectors of the given width.
    pub fn rank<'a, I>(&self, width: usize, rows: I) -> usize
    where
        I: IntoIterator<Item = &'a SparseVec<F::Elem>>,
        F::Elem: 'a,
    {
        let mut ech = Echelon::new(width);
        for r in rows {
            if ech.is_full() {
                break;
            }
            ech.insert(&self.field, r);
        }
        ech.rank()
    }

    /// All `X` with `X G = G X` for every generator `G`.
    pub fn commutant(&self, gens: &[ExactMatrix<F::Elem>], d: usize) -> Result<AlgebraSpan<F::Elem>> {
        self.check_size(d)?;
        self.check_square(d, gens)?;
        let f = &self.field;
        let mut ech = Echelon::new(d * d);
        for g in gens {
            let cols = g.transpose();
            for a in 0..d {
                for b in 0..d {
                    // (XG - GX)[a, b] in the unknowns X[., .]
                    let mut eq: BTreeMap<usize, F::Elem> = BTreeMap::new();
                    for (c, x) in cols.row(b) {
                        accumulate(f, &mut eq, a * d + c, x.clone());
                    }
                    for (c, x) in g.row(a) {
                        accumulate(f, &mut eq, c * d + b, f.neg(x));
                    }
                    if eq.is_empty() {
                        continue;
                    }
                    let v: SparseVec<F::Elem> = eq.into_iter().collect();
                    ech.insert(f, &v);
                    if ech.is_full() {
                        return Ok(AlgebraSpan::zero(d));
                    }
                }
            }
        }
        let null: Vec<ExactMatrix<F::Elem>> =
            ech.null_space(f).iter().map(|v| ExactMatrix::from_flat(d, d, v)).collect();
        self.span_of(d, &null)
    }

    /// Smallest subspace containing `gens` (and the identity if requested)
    /// closed under products.
    pub fn algebra_closure(
        &self,
        d: usize,
        gens: &[ExactMatrix<F::Elem>],
        include_identity: bool,
    ) -> Result<AlgebraSpan<F::Elem>> {
        let unit = include_identity.then(|| ExactMatrix::identity(&self.field, d));
        self.algebra_closure_with_unit(d, gens, unit.as_ref())
    }

    /// Closure with an arbitrary adjoined unit element (e.g. a projector).
    pub fn algebra_closure_with_unit(
        &self,
        d: usize,
        gens: &[ExactMatrix<F::Elem>],
        unit: Option<&ExactMatrix<F::Elem>>,
    ) -> Result<AlgebraSpan<F::Elem>> {
        self.check_size(d)?;
        self.check_square(d, gens)?;
        if let Some(u) = unit {
            self.check_square(d, core::slice::from_ref(u))?;
        }
        let f = &self.field;
        let mut ech = Echelon::new(d * d);
        let mut found: Vec<ExactMatrix<F::Elem>> = Vec::new();
        for m in unit.into_iter().chain(gens.iter()) {
            if ech.insert(f, &m.flatten()) {
                found.push(m.clone());
            }
        }
        let mut next = 0;
        while next < found.len() {
            let current = found[next].clone();
            next += 1;
            for g in gens {
                for p in [current.mul(g, f)?, g.mul(&current, f)?] {
                    if ech.insert(f, &p.flatten()) {
                        found.push(p);
                    }
                }
            }
        }
        Ok(AlgebraSpan::from_echelon(f, d, ech))
    }
}

fn accumulate<F: Field>(field: &F, acc: &mut BTreeMap<usize, F::Elem>, k: usize, x: F::Elem) {
    match acc.entry(k) {
        Entry::Occupied(mut e) => {
            let v = field.add(e.get(), &x);
            if field.is_zero(&v) {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            e.insert(x);
        }
    }
}
