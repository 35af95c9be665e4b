//! The enhanced space `V-bar = V + Kv`, its tensor powers split into layers,
//! and the Levi Schur superalgebra `S'(m|n,r)` through its faithful matrices.
//!
//! Enhanced letters use the relabelling in which `1..=m` are the even core
//! letters, `m+1` is the enhanced vector `v`, and core letter `c > m` becomes
//! `c + 1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::combinatorics::{alpha, gamma, DoubleIndex, MultiIndex, Parity, ParityVector, Shape, Sign};
use crate::field::Field;
use crate::linalg::ExactMatrix;
use crate::schur::{orbit_terms, schur_basis, structure_constants, SchurBasisElement, TensorBasis};
use crate::{Error, Result};

/// The letter standing for `v`.
pub fn enhanced_letter(shape: &Shape) -> usize {
    shape.m() + 1
}

/// Core letter to enhanced letter.
pub fn lift_letter(c: usize, shape: &Shape) -> usize {
    if c <= shape.m() {
        c
    } else {
        c + 1
    }
}

/// Enhanced letter to core letter; `None` for `v`.
pub fn lower_letter(e: usize, shape: &Shape) -> Option<usize> {
    match e.cmp(&enhanced_letter(shape)) {
        Ordering::Less => Some(e),
        Ordering::Equal => None,
        Ordering::Greater => Some(e - 1),
    }
}

/// Parity of an enhanced letter; `v` carries `shape.vparity()`.
pub fn enhanced_parity(e: usize, shape: &Shape) -> Parity {
    let v = enhanced_letter(shape);
    if e < v {
        Parity::Even
    } else if e == v {
        shape.vparity()
    } else {
        Parity::Odd
    }
}

/// The basis of `V-bar^{(x)r}`.
pub fn enhanced_basis(shape: &Shape) -> TensorBasis {
    TensorBasis::new(shape.letters() + 1, shape.r())
}

/// A basis word `v_{i,I}` of `V-bar^{(x)r}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnhWord {
    letters: Vec<usize>,
}

impl EnhWord {
    pub fn from_letters(letters: Vec<usize>, shape: &Shape) -> Result<EnhWord> {
        if letters.len() != shape.r() {
            return Err(Error::LengthMismatch { expected: shape.r(), found: letters.len() });
        }
        let top = shape.letters() + 1;
        if let Some(&bad) = letters.iter().find(|&&x| x == 0 || x > top) {
            return Err(Error::IndexOutOfRange { idx: bad, max: top });
        }
        Ok(EnhWord { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn position(&self, shape: &Shape) -> usize {
        enhanced_basis(shape).encode(&self.letters).expect("validated word")
    }

    pub fn from_position(pos: usize, shape: &Shape) -> Result<EnhWord> {
        Ok(EnhWord { letters: enhanced_basis(shape).decode(pos)? })
    }

    /// Number of core letters.
    pub fn layer(&self, shape: &Shape) -> usize {
        let v = enhanced_letter(shape);
        self.letters.iter().filter(|&&x| x != v).count()
    }

    /// One-based positions of the core letters.
    pub fn support(&self, shape: &Shape) -> Vec<usize> {
        let v = enhanced_letter(shape);
        self.letters.iter().enumerate().filter(|(_, &x)| x != v).map(|(k, _)| k + 1).collect()
    }

    /// The core letters in order.
    pub fn core(&self, shape: &Shape) -> MultiIndex {
        let core = self.letters.iter().filter_map(|&x| lower_letter(x, shape)).collect();
        MultiIndex::new(core, shape).expect("core letters in range")
    }

    /// `eps_{i,I}`, parities of all `r` letters.
    pub fn parities(&self, shape: &Shape) -> ParityVector {
        ParityVector::new(self.letters.iter().map(|&x| enhanced_parity(x, shape)).collect())
    }
}

impl fmt::Display for EnhWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// `v_{i,I}`: the core word `i` placed on the one-based positions `I`.
pub fn enh_encode(i: &MultiIndex, support: &[usize], shape: &Shape) -> Result<EnhWord> {
    if support.len() != i.len() {
        return Err(Error::LengthMismatch { expected: support.len(), found: i.len() });
    }
    let r = shape.r();
    let mut letters = alloc::vec![enhanced_letter(shape); r];
    let mut prev = 0;
    for (&pos, &c) in support.iter().zip(i.entries()) {
        if pos <= prev || pos > r {
            return Err(Error::IndexOutOfRange { idx: pos, max: r });
        }
        shape.parity_of(c)?;
        letters[pos - 1] = lift_letter(c, shape);
        prev = pos;
    }
    Ok(EnhWord { letters })
}

/// One-based `l`-subsets of `{1..r}` in lexicographic order.
pub fn supports(r: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for p in start..=r {
            if r - p + 1 < l - cur.len() {
                break;
            }
            cur.push(p);
            rec(p + 1, r, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l <= r {
        rec(1, r, l, &mut Vec::new(), &mut out);
    }
    out
}

/// Basis element of `S'(m|n,r)`: `xi_0`, or `xi_{i,j,l}` with `l = |i| >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LeviBasisElement {
    Xi0,
    Xi(SchurBasisElement),
}

impl LeviBasisElement {
    pub fn new(pair: DoubleIndex, shape: &Shape) -> Result<LeviBasisElement> {
        let l = pair.len();
        if l == 0 || l > shape.r() {
            return Err(Error::LayerOutOfRange { layer: l, max: shape.r() });
        }
        Ok(LeviBasisElement::Xi(SchurBasisElement::from_rep(pair, shape)?))
    }

    /// 0 for `xi_0`.
    pub fn layer(&self) -> usize {
        match self {
            LeviBasisElement::Xi0 => 0,
            LeviBasisElement::Xi(b) => b.degree(),
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            LeviBasisElement::Xi0 => Parity::Even,
            LeviBasisElement::Xi(b) => b.parity(),
        }
    }

    pub fn pair(&self) -> Option<&DoubleIndex> {
        match self {
            LeviBasisElement::Xi0 => None,
            LeviBasisElement::Xi(b) => Some(b.pair()),
        }
    }

    fn key(&self) -> (usize, Vec<usize>) {
        match self {
            LeviBasisElement::Xi0 => (0, Vec::new()),
            LeviBasisElement::Xi(b) => (b.degree(), b.pair().concat_key()),
        }
    }
}

impl Ord for LeviBasisElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for LeviBasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LeviBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeviBasisElement::Xi0 => f.write_str("xi0"),
            LeviBasisElement::Xi(b) => write!(f, "xi{}@{}", b.pair(), b.degree()),
        }
    }
}

/// `xi_0` first, then each layer `1..=r` in representative order.
pub fn levi_basis(shape: &Shape) -> Vec<LeviBasisElement> {
    let mut out = alloc::vec![LeviBasisElement::Xi0];
    for l in 1..=shape.r() {
        out.extend(schur_basis(shape, l).into_iter().map(LeviBasisElement::Xi));
    }
    out
}

/// `alpha_l`: `xi_{i,j} -> xi_{i,j,l}`, and the degree-0 element to `xi_0`.
pub fn embed_alpha(l: usize, b: &SchurBasisElement, shape: &Shape) -> Result<LeviBasisElement> {
    if b.degree() != l {
        return Err(Error::DegreeMismatch(l, b.degree()));
    }
    if l > shape.r() {
        return Err(Error::LayerOutOfRange { layer: l, max: shape.r() });
    }
    Ok(if l == 0 { LeviBasisElement::Xi0 } else { LeviBasisElement::Xi(b.clone()) })
}

/// The rank-one projector onto `v^{(x)r}`.
pub fn rho_xi0<F: Field>(field: &F, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let d = enhanced_basis(shape).dim();
    let p = EnhWord { letters: alloc::vec![enhanced_letter(shape); shape.r()] }.position(shape);
    ExactMatrix::from_integers(field, d, d, [(p, p, 1)])
}

/// `rho_r(b)` on `V-bar^{(x)r}`: on `v_{t,I}` with `|I| = l`,
/// `xi_{i,j,l}` gives `sum sigma(i,j;k,t) alpha(eps_{k,I} + eps_{t,I}, eps_{t,I}) v_{k,I}`.
pub fn rho_levi<F: Field>(field: &F, b: &LeviBasisElement, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let b = match b {
        LeviBasisElement::Xi0 => return rho_xi0(field, shape),
        LeviBasisElement::Xi(b) => b,
    };
    if b.degree() == 0 || b.degree() > shape.r() {
        return Err(Error::LayerOutOfRange { layer: b.degree(), max: shape.r() });
    }
    let d = enhanced_basis(shape).dim();
    let terms = orbit_terms(b, shape)?;
    let mut entries = Vec::new();
    for support in supports(shape.r(), b.degree()) {
        for (k, t, sigma) in &terms {
            let row = enh_encode(k, &support, shape)?;
            let col = enh_encode(t, &support, shape)?;
            let t_eps = col.parities(shape);
            let combined = row.parities(shape).plus(&t_eps)?;
            let sign = *sigma * alpha(&combined, &t_eps)?;
            entries.push((row.position(shape), col.position(shape), sign.to_i64()));
        }
    }
    ExactMatrix::from_integers(field, d, d, entries)
}

/// The matrix unit `e_{i,j,I}`: `e_{i_s j_s}` on the positions of `I` and the
/// projector onto `v` elsewhere, as a super tensor product of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhMatrixUnit {
    pair: DoubleIndex,
    support: Vec<usize>,
}

impl EnhMatrixUnit {
    pub fn new(pair: DoubleIndex, support: Vec<usize>, shape: &Shape) -> Result<EnhMatrixUnit> {
        if pair.len() != support.len() {
            return Err(Error::LengthMismatch { expected: support.len(), found: pair.len() });
        }
        if support.windows(2).any(|w| w[0] >= w[1]) || support.iter().any(|&p| p == 0 || p > shape.r()) {
            return Err(Error::InvalidShape(alloc::format!("bad support {support:?}")));
        }
        Ok(EnhMatrixUnit { pair, support })
    }

    pub fn pair(&self) -> &DoubleIndex {
        &self.pair
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Factor operators applied slot by slot with the Koszul sign
    /// `(-1)^{|f_q| |w_p|}` for every factor `f_q` passing a letter `w_p`, `p < q`.
    pub fn matrix<F: Field>(&self, field: &F, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
        let r = shape.r();
        let v = enhanced_letter(shape);
        // (target, source, parity) of each slot's factor
        let mut factors = alloc::vec![(v, v, Parity::Even); r];
        for (k, &pos) in self.support.iter().enumerate() {
            let a = self.pair.row().entries()[k];
            let b = self.pair.col().entries()[k];
            factors[pos - 1] =
                (lift_letter(a, shape), lift_letter(b, shape), shape.parity_of(a)? + shape.parity_of(b)?);
        }
        let source: Vec<usize> = factors.iter().map(|f| f.1).collect();
        let target: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let mut exponent = 0usize;
        for q in 0..r {
            if !factors[q].2.is_odd() {
                continue;
            }
            exponent += source[..q].iter().filter(|&&x| enhanced_parity(x, shape).is_odd()).count();
        }
        let basis = enhanced_basis(shape);
        let d = basis.dim();
        ExactMatrix::from_integers(
            field,
            d,
            d,
            [(basis.encode(&target)?, basis.encode(&source)?, Sign::from_exponent(exponent).to_i64())],
        )
    }
}

/// `rho_r(xi_{i,j,l})` assembled from matrix units: `sum_I sum sigma e_{k,t,I}`.
pub fn rho_levi_from_units<F: Field>(field: &F, b: &SchurBasisElement, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let d = enhanced_basis(shape).dim();
    let comb = b.pair().combined_parities(shape);
    let mut acc = ExactMatrix::zeros(d, d);
    for support in supports(shape.r(), b.degree()) {
        for (image, w) in b.pair().orbit() {
            let sigma = gamma(&comb, &w)?;
            let unit = EnhMatrixUnit::new(image, support.clone(), shape)?.matrix(field, shape)?;
            acc = acc.add_scaled(&unit, &field.from_i64(sigma.to_i64()), field)?;
        }
    }
    Ok(acc)
}

/// Coefficients of `a b` in the Levi basis. Different layers multiply to
/// zero, `xi_0` is idempotent, and equal positive layers expand by the
/// structure constants of `S(m|n,l)`.
pub fn levi_product(
    a: &LeviBasisElement,
    b: &LeviBasisElement,
    shape: &Shape,
) -> Result<BTreeMap<LeviBasisElement, i64>> {
    let mut out = BTreeMap::new();
    match (a, b) {
        (LeviBasisElement::Xi0, LeviBasisElement::Xi0) => {
            out.insert(LeviBasisElement::Xi0, 1);
        }
        (LeviBasisElement::Xi(x), LeviBasisElement::Xi(y)) if x.degree() == y.degree() => {
            for (pair, c) in structure_constants(x, y, shape)? {
                out.insert(LeviBasisElement::Xi(SchurBasisElement::from_rep(pair, shape)?), c);
            }
        }
        _ => {}
    }
    Ok(out)
}

/// `sum c_b rho(b)`.
pub fn combine_levi<F: Field>(
    field: &F,
    coeffs: &BTreeMap<LeviBasisElement, i64>,
    shape: &Shape,
) -> Result<ExactMatrix<F::Elem>> {
    let d = enhanced_basis(shape).dim();
    let mut acc = ExactMatrix::zeros(d, d);
    for (b, c) in coeffs {
        acc = acc.add_scaled(&rho_levi(field, b, shape)?, &field.from_i64(*c), field)?;
    }
    Ok(acc)
}

/// Positions of the words in layer `l`, ascending.
pub fn layer_indices(shape: &Shape, l: usize) -> Vec<usize> {
    let basis = enhanced_basis(shape);
    let v = enhanced_letter(shape);
    basis.words().enumerate().filter(|(_, w)| w.iter().filter(|&&x| x != v).count() == l).map(|(p, _)| p).collect()
}

/// The projector onto `V-bar_l^{(x)r}`.
pub fn layer_projector<F: Field>(field: &F, shape: &Shape, l: usize) -> Result<ExactMatrix<F::Elem>> {
    if l > shape.r() {
        return Err(Error::LayerOutOfRange { layer: l, max: shape.r() });
    }
    let d = enhanced_basis(shape).dim();
    ExactMatrix::from_integers(field, d, d, layer_indices(shape, l).into_iter().map(|p| (p, p, 1)))
}

/// Diagonal signs `J` with `rho_{v odd} = J rho_{v even} J`: a word gets a minus
/// sign when the number of (enhanced letter, later odd core letter) pairs is odd.
pub fn parity_gauge(shape: &Shape) -> Vec<bool> {
    let v = enhanced_letter(shape);
    enhanced_basis(shape)
        .words()
        .map(|w| {
            let mut seen_v = 0usize;
            let mut exponent = 0usize;
            for &x in &w {
                if x == v {
                    seen_v += 1;
                } else if x > v {
                    exponent += seen_v;
                }
            }
            exponent % 2 == 1
        })
        .collect()
}

/// Comparison of the Levi representation for the two parities of `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossParityReport {
    /// Every `rho(b)` is literally the same matrix for both parities.
    pub literal_equal: bool,
    /// Every `rho(b)` agrees after conjugating by [`parity_gauge`].
    pub gauge_equal: bool,
}

pub fn cross_parity<F: Field>(field: &F, shape: &Shape) -> Result<CrossParityReport> {
    let even = shape.with_vparity(Parity::Even);
    let odd = shape.with_vparity(Parity::Odd);
    let j = parity_gauge(shape);
    let mut report = CrossParityReport { literal_equal: true, gauge_equal: true };
    for b in levi_basis(shape) {
        let a = rho_levi(field, &b, &even)?;
        let c = rho_levi(field, &b, &odd)?;
        report.literal_equal &= a == c;
        report.gauge_equal &= a.conjugate_by_signs(&j, field) == c;
    }
    Ok(report)
}
