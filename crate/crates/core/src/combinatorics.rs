//! Index sets, parities, permutations and the sign calculus on tensor words.
//!
//! Letters of the natural module are numbered `1..=m+n`; letter `i` is even
//! for `i <= m` and odd otherwise. Permutations act on positions from the
//! right: `(i . w)_k = i_{w(k)}`. With that action the composition convention
//! that makes `(i . sigma) . mu = i . (sigma o mu)` hold is
//! `(sigma o mu)(k) = sigma(mu(k))`, which is what [`Permutation::compose`]
//! implements.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg};

use crate::{Error, Result};

/// An element of Z2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Parity {
        if bit & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^exponent`.
    pub fn from_exponent(exponent: usize) -> Sign {
        if exponent.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Dimensions of the super vector space `K^{m|n}`, the tensor degree `r`
/// and the parity of the enhanced vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    m: usize,
    n: usize,
    r: usize,
    vparity: Parity,
}

impl Shape {
    pub fn new(m: usize, n: usize, r: usize, vparity: Parity) -> Result<Shape> {
        if m == 0 {
            return Err(Error::InvalidShape(String::from("m must be at least 1")));
        }
        if r == 0 {
            return Err(Error::InvalidShape(String::from("r must be at least 1")));
        }
        Ok(Shape { m, n, r, vparity })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vparity(&self) -> Parity {
        self.vparity
    }

    /// `m + n`, the number of letters of the natural module.
    pub fn letters(&self) -> usize {
        self.m + self.n
    }

    pub fn with_vparity(self, vparity: Parity) -> Shape {
        Shape { vparity, ..self }
    }

    pub fn with_r(self, r: usize) -> Result<Shape> {
        Shape::new(self.m, self.n, r, self.vparity)
    }

    /// Parity of the letter `idx` of the natural module.
    pub fn parity_of(&self, idx: usize) -> Result<Parity> {
        if idx == 0 || idx > self.letters() {
            return Err(Error::IndexOutOfRange { idx, max: self.letters() });
        }
        Ok(if idx <= self.m { Parity::Even } else { Parity::Odd })
    }

    fn parity_unchecked(&self, idx: usize) -> Parity {
        if idx <= self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{},{}; v {})", self.m, self.n, self.r, self.vparity)
    }
}

/// Free-function form of [`Shape::parity_of`].
pub fn parity_of_index(idx: usize, shape: &Shape) -> Result<Parity> {
    shape.parity_of(idx)
}

/// An element of Z2^l.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParityVector(Vec<Parity>);

impl ParityVector {
    pub fn new(entries: Vec<Parity>) -> ParityVector {
        ParityVector(entries)
    }

    pub fn from_bits(bits: &[u8]) -> Result<ParityVector> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(Parity::Even),
                1 => Ok(Parity::Odd),
                other => Err(Error::InvalidShape(format!("parity bit {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ParityVector)
    }

    pub fn zeros(len: usize) -> ParityVector {
        ParityVector(alloc::vec![Parity::Even; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Parity] {
        &self.0
    }

    pub fn get(&self, k: usize) -> Parity {
        self.0[k]
    }

    /// Sum of all entries.
    pub fn total(&self) -> Parity {
        self.0.iter().fold(Parity::Even, |acc, &p| acc + p)
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &ParityVector) -> Result<ParityVector> {
        check_len(self.len(), other.len())?;
        Ok(ParityVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect()))
    }

    /// `eps . w`, permuting entries like the letters of a word.
    pub fn permuted(&self, w: &Permutation) -> Result<ParityVector> {
        check_len(self.len(), w.len())?;
        Ok(ParityVector(w.images.iter().map(|&k| self.0[k]).collect()))
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

/// `alpha(eps, delta) = prod_{s<t} (-1)^{eps_t delta_s}`.
pub fn alpha(eps: &ParityVector, delta: &ParityVector) -> Result<Sign> {
    check_len(eps.len(), delta.len())?;
    let mut odd_prefix = 0usize;
    let mut exponent = 0usize;
    for t in 0..eps.len() {
        if eps.get(t).is_odd() {
            exponent += odd_prefix;
        }
        if delta.get(t).is_odd() {
            odd_prefix += 1;
        }
    }
    Ok(Sign::from_exponent(exponent))
}

/// `gamma(eps, w)`: the product of `(-1)^{eps_s eps_t}` over pairs `s < t`
/// whose relative order is reversed by `w`, i.e. `w^{-1}(s) > w^{-1}(t)`.
pub fn gamma(eps: &ParityVector, w: &Permutation) -> Result<Sign> {
    check_len(eps.len(), w.len())?;
    let inv = w.inverse();
    let mut exponent = 0usize;
    for s in 0..eps.len() {
        if !eps.get(s).is_odd() {
            continue;
        }
        for t in (s + 1)..eps.len() {
            if eps.get(t).is_odd() && inv.images[s] > inv.images[t] {
                exponent += 1;
            }
        }
    }
    Ok(Sign::from_exponent(exponent))
}

/// Checks `alpha(eps_{i.w} + eps_{j.w}, eps_{j.w})
/// = alpha(eps_i + eps_j, eps_j) gamma(eps_i + eps_j, w) gamma(eps_i, w) gamma(eps_j, w)`.
pub fn sign_identity_holds(eps_i: &ParityVector, eps_j: &ParityVector, w: &Permutation) -> Result<bool> {
    let iw = eps_i.permuted(w)?;
    let jw = eps_j.permuted(w)?;
    let lhs = alpha(&iw.plus(&jw)?, &jw)?;
    let sum = eps_i.plus(eps_j)?;
    let rhs = alpha(&sum, eps_j)? * gamma(&sum, w)? * gamma(eps_i, w)? * gamma(eps_j, w)?;
    Ok(lhs == rhs)
}

/// A bijection of `{0, .., l-1}`, stored by images. Displayed one-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Build from zero-based images.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = alloc::vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from one-based images, as written in one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation> {
        if images.contains(&0) {
            return Err(Error::NotAPermutation(format!("{images:?}")));
        }
        Permutation::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(len: usize) -> Permutation {
        Permutation { images: (0..len).collect() }
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_len`, `i` one-based.
    pub fn simple(len: usize, i: usize) -> Result<Permutation> {
        if i == 0 || i >= len {
            return Err(Error::NotAPermutation(format!("s_{i} in S_{len}")));
        }
        let mut images: Vec<usize> = (0..len).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = alloc::vec![0; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x] = k;
        }
        Permutation { images }
    }

    /// `self o other`, i.e. `k -> self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_len(self.len(), other.len())?;
        Ok(Permutation { images: other.images.iter().map(|&k| self.images[k]).collect() })
    }

    /// Extend to `S_len` by fixing the trailing points.
    pub fn extend(&self, len: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.len()..len);
        Permutation { images }
    }

    /// All of `S_len` in lexicographic order of the image sequence.
    pub fn all(len: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..len).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            if !next_permutation(&mut current) {
                return out;
            }
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A word in the letters `1..=m+n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>, shape: &Shape) -> Result<MultiIndex> {
        for &e in &entries {
            shape.parity_of(e)?;
        }
        Ok(MultiIndex(entries))
    }

    pub fn empty() -> MultiIndex {
        MultiIndex(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `eps_i`, the parities of the letters.
    pub fn parities(&self, shape: &Shape) -> ParityVector {
        ParityVector(self.0.iter().map(|&e| shape.parity_unchecked(e)).collect())
    }

    /// Total parity of the word.
    pub fn parity(&self, shape: &Shape) -> Parity {
        self.parities(shape).total()
    }

    /// `i . w = (i_{w(1)}, .., i_{w(l)})`.
    pub fn act(&self, w: &Permutation) -> Result<MultiIndex> {
        check_len(self.len(), w.len())?;
        Ok(MultiIndex(w.images.iter().map(|&k| self.0[k]).collect()))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Free-function form of [`MultiIndex::act`].
pub fn act(i: &MultiIndex, w: &Permutation) -> Result<MultiIndex> {
    i.act(w)
}

/// A pair `(i, j)` of words of equal length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleIndex {
    row: MultiIndex,
    col: MultiIndex,
}

impl DoubleIndex {
    pub fn new(row: MultiIndex, col: MultiIndex) -> Result<DoubleIndex> {
        check_len(row.len(), col.len())?;
        Ok(DoubleIndex { row, col })
    }

    /// Convenience constructor from raw letter slices.
    pub fn from_slices(row: &[usize], col: &[usize], shape: &Shape) -> Result<DoubleIndex> {
        DoubleIndex::new(MultiIndex::new(row.to_vec(), shape)?, MultiIndex::new(col.to_vec(), shape)?)
    }

    pub fn empty() -> DoubleIndex {
        DoubleIndex { row: MultiIndex::empty(), col: MultiIndex::empty() }
    }

    pub fn row(&self) -> &MultiIndex {
        &self.row
    }

    pub fn col(&self) -> &MultiIndex {
        &self.col
    }

    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    /// `eps_i + eps_j`.
    pub fn combined_parities(&self, shape: &Shape) -> ParityVector {
        let row = self.row.parities(shape);
        let col = self.col.parities(shape);
        ParityVector(row.0.iter().zip(&col.0).map(|(&a, &b)| a + b).collect())
    }

    /// `i-bar + j-bar`, the parity of the associated basis element.
    pub fn parity(&self, shape: &Shape) -> Parity {
        self.row.parity(shape) + self.col.parity(shape)
    }

    /// Diagonal action `(i, j) . w = (i . w, j . w)`.
    pub fn act(&self, w: &Permutation) -> Result<DoubleIndex> {
        Ok(DoubleIndex { row: self.row.act(w)?, col: self.col.act(w)? })
    }

    /// Strict: no two positions carry the same odd column `(i_s, j_s)`.
    pub fn is_strict(&self, shape: &Shape) -> bool {
        let l = self.len();
        for s in 0..l {
            let (a, b) = (self.row.0[s], self.col.0[s]);
            if !(shape.parity_unchecked(a) + shape.parity_unchecked(b)).is_odd() {
                continue;
            }
            for t in (s + 1)..l {
                if self.row.0[t] == a && self.col.0[t] == b {
                    return false;
                }
            }
        }
        true
    }

    /// The lexicographically least element of the orbit (row then column):
    /// columns sorted as pairs.
    pub fn canonical(&self) -> DoubleIndex {
        let mut columns: Vec<(usize, usize)> = self.row.0.iter().copied().zip(self.col.0.iter().copied()).collect();
        columns.sort_unstable();
        DoubleIndex {
            row: MultiIndex(columns.iter().map(|c| c.0).collect()),
            col: MultiIndex(columns.iter().map(|c| c.1).collect()),
        }
    }

    pub fn same_orbit(&self, other: &DoubleIndex) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// The lexicographically least `w` with `self . w = target`, if any.
    pub fn transporter(&self, target: &DoubleIndex) -> Option<Permutation> {
        if self.len() != target.len() {
            return None;
        }
        let l = self.len();
        let mut used = alloc::vec![false; l];
        let mut images = Vec::with_capacity(l);
        for k in 0..l {
            let want = (target.row.0[k], target.col.0[k]);
            let s = (0..l).find(|&s| !used[s] && (self.row.0[s], self.col.0[s]) == want)?;
            used[s] = true;
            images.push(s);
        }
        Some(Permutation { images })
    }

    /// Every distinct element of the orbit, keyed by element, each with the
    /// lexicographically least permutation reaching it.
    pub fn orbit(&self) -> BTreeMap<DoubleIndex, Permutation> {
        let mut out = BTreeMap::new();
        for w in Permutation::all(self.len()) {
            let image = self.act(&w).expect("lengths agree");
            out.entry(image).or_insert(w);
        }
        out
    }

    /// Concatenation `row ++ col`, the ordering key for representatives.
    pub fn concat_key(&self) -> Vec<usize> {
        let mut key = self.row.0.clone();
        key.extend_from_slice(&self.col.0);
        key
    }
}

impl fmt::Display for DoubleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.row, self.col)
    }
}

/// Free-function form of [`DoubleIndex::is_strict`].
pub fn is_strict(d: &DoubleIndex, shape: &Shape) -> bool {
    d.is_strict(shape)
}

/// Representatives of the diagonal `S_l`-orbits on strict pairs of length `l`.
///
/// Each representative is the lexicographically least element of its orbit,
/// and the list is sorted by `row ++ col`.
pub fn orbit_reps(shape: &Shape, l: usize) -> Vec<DoubleIndex> {
    let letters = shape.letters();
    let columns: Vec<(usize, usize)> = (1..=letters).flat_map(|a| (1..=letters).map(move |b| (a, b))).collect();
    let odd: Vec<bool> =
        columns.iter().map(|&(a, b)| (shape.parity_unchecked(a) + shape.parity_unchecked(b)).is_odd()).collect();

    // Non-decreasing column sequences, odd columns at most once.
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(l);
    fn rec(
        start: usize,
        l: usize,
        columns: &[(usize, usize)],
        odd: &[bool],
        stack: &mut Vec<usize>,
        out: &mut Vec<DoubleIndex>,
    ) {
        if stack.len() == l {
            out.push(DoubleIndex {
                row: MultiIndex(stack.iter().map(|&c| columns[c].0).collect()),
                col: MultiIndex(stack.iter().map(|&c| columns[c].1).collect()),
            });
            return;
        }
        for c in start..columns.len() {
            stack.push(c);
            rec(if odd[c] { c + 1 } else { c }, l, columns, odd, stack, out);
            stack.pop();
        }
    }
    rec(0, l, &columns, &odd, &mut stack, &mut out);
    out.sort_by_key(DoubleIndex::concat_key);
    out
}

/// `sigma(src; dst) = gamma(eps_i + eps_j, w)` where `src . w = dst`.
pub fn sigma_sign(src: &DoubleIndex, dst: &DoubleIndex, shape: &Shape) -> Result<Sign> {
    if !src.is_strict(shape) {
        return Err(Error::NotStrict);
    }
    let w = src.transporter(dst).ok_or(Error::NotInOrbit)?;
    gamma(&src.combined_parities(shape), &w)
}
