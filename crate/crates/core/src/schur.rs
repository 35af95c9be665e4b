//! The tensor space `V^{(x)l}`, the signed right action of `S_l` on it, and the
//! Schur superalgebra `S(m|n,l)` through its faithful matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::combinatorics::{
    alpha, gamma, orbit_reps, sigma_sign, DoubleIndex, MultiIndex, Parity, Permutation, Shape, Sign,
};
use crate::field::Field;
use crate::linalg::{Engine, ExactMatrix};
use crate::{Error, Result};

/// Mixed-radix positions of words of length `len` over letters `1..=alphabet`,
/// first letter most significant, so position order is lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorBasis {
    alphabet: usize,
    len: usize,
}

impl TensorBasis {
    pub fn new(alphabet: usize, len: usize) -> TensorBasis {
        TensorBasis { alphabet, len }
    }

    /// The basis of `V^{(x)l}` for the natural module of `shape`.
    pub fn natural(shape: &Shape, len: usize) -> TensorBasis {
        TensorBasis::new(shape.letters(), len)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.alphabet.pow(self.len as u32)
    }

    pub fn encode(&self, word: &[usize]) -> Result<usize> {
        if word.len() != self.len {
            return Err(Error::LengthMismatch { expected: self.len, found: word.len() });
        }
        word.iter().try_fold(0usize, |acc, &x| {
            if x == 0 || x > self.alphabet {
                return Err(Error::IndexOutOfRange { idx: x, max: self.alphabet });
            }
            Ok(acc * self.alphabet + (x - 1))
        })
    }

    pub fn decode(&self, mut pos: usize) -> Result<Vec<usize>> {
        if pos >= self.dim() {
            return Err(Error::IndexOutOfRange { idx: pos, max: self.dim() });
        }
        let mut word = alloc::vec![0; self.len];
        for slot in word.iter_mut().rev() {
            *slot = pos % self.alphabet + 1;
            pos /= self.alphabet;
        }
        Ok(word)
    }

    /// All words in position order.
    pub fn words(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.dim()).map(move |p| self.decode(p).expect("position in range"))
    }
}

/// Matrix of the right action `v_i . w = gamma(eps_i, w) v_{i . w}` on words
/// over an alphabet with the given letter parities. Column `i` holds `v_i . w`.
pub(crate) fn signed_permutation_action<F: Field>(
    field: &F,
    basis: &TensorBasis,
    parity: impl Fn(usize) -> Parity,
    w: &Permutation,
) -> Result<ExactMatrix<F::Elem>> {
    if w.len() != basis.len() {
        return Err(Error::LengthMismatch { expected: basis.len(), found: w.len() });
    }
    let mut entries = Vec::with_capacity(basis.dim());
    for (col, word) in basis.words().enumerate() {
        let eps = crate::combinatorics::ParityVector::new(word.iter().map(|&x| parity(x)).collect());
        let image: Vec<usize> = w.images().iter().map(|&k| word[k]).collect();
        let sign = gamma(&eps, w)?;
        entries.push((basis.encode(&image)?, col, sign.to_i64()));
    }
    ExactMatrix::from_integers(field, basis.dim(), basis.dim(), entries)
}

/// `pi_l(w)` on `V^{(x)l}`. Matrices compose as `pi(mu) pi(sigma) = pi(sigma o mu)`.
pub fn pi_matrix<F: Field>(field: &F, w: &Permutation, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let basis = TensorBasis::natural(shape, w.len());
    signed_permutation_action(field, &basis, |x| shape.parity_of(x).expect("letter in range"), w)
}

/// A basis element `xi_{i,j}` of `S(m|n,l)`, labelled by an orbit representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchurBasisElement {
    pair: DoubleIndex,
    parity: Parity,
}

impl SchurBasisElement {
    /// Accepts only strict orbit representatives.
    pub fn from_rep(pair: DoubleIndex, shape: &Shape) -> Result<SchurBasisElement> {
        check_letters(&pair, shape)?;
        if !pair.is_strict(shape) {
            return Err(Error::NotStrict);
        }
        if pair.canonical() != pair {
            return Err(Error::NotInOrbit);
        }
        let parity = pair.parity(shape);
        Ok(SchurBasisElement { pair, parity })
    }

    /// `xi_{k,l} = sigma(i,j; k,l) xi_{i,j}` for the representative `(i,j)` of
    /// the orbit of `(k,l)`.
    pub fn normalize(pair: &DoubleIndex, shape: &Shape) -> Result<(SchurBasisElement, Sign)> {
        check_letters(pair, shape)?;
        if !pair.is_strict(shape) {
            return Err(Error::NotStrict);
        }
        let rep = pair.canonical();
        let sign = sigma_sign(&rep, pair, shape)?;
        Ok((SchurBasisElement::from_rep(rep, shape)?, sign))
    }

    pub fn pair(&self) -> &DoubleIndex {
        &self.pair
    }

    pub fn degree(&self) -> usize {
        self.pair.len()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

fn check_letters(pair: &DoubleIndex, shape: &Shape) -> Result<()> {
    for &x in pair.row().entries().iter().chain(pair.col().entries()) {
        shape.parity_of(x)?;
    }
    Ok(())
}

/// `Omega(m|n,l)` as basis elements, in representative order.
pub fn schur_basis(shape: &Shape, l: usize) -> Vec<SchurBasisElement> {
    orbit_reps(shape, l)
        .into_iter()
        .map(|pair| {
            let parity = pair.parity(shape);
            SchurBasisElement { pair, parity }
        })
        .collect()
}

/// The orbit of `(i,j)` as triples `(k, t, sigma(i,j;k,t))`.
pub(crate) fn orbit_terms(b: &SchurBasisElement, shape: &Shape) -> Result<Vec<(MultiIndex, MultiIndex, Sign)>> {
    let combined = b.pair.combined_parities(shape);
    b.pair
        .orbit()
        .into_iter()
        .map(|(image, w)| Ok((image.row().clone(), image.col().clone(), gamma(&combined, &w)?)))
        .collect()
}

/// `rho_l(xi_{i,j})` on `V^{(x)l}`: `v_t -> sum sigma(i,j;k,t) alpha(eps_k + eps_t, eps_t) v_k`.
pub fn xi_matrix<F: Field>(field: &F, b: &SchurBasisElement, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let basis = TensorBasis::natural(shape, b.degree());
    let mut entries = Vec::new();
    for (k, t, sigma) in orbit_terms(b, shape)? {
        let t_eps = t.parities(shape);
        let sign = sigma * alpha(&k.parities(shape).plus(&t_eps)?, &t_eps)?;
        entries.push((basis.encode(k.entries())?, basis.encode(t.entries())?, sign.to_i64()));
    }
    ExactMatrix::from_integers(field, basis.dim(), basis.dim(), entries)
}

/// `xi_{k,l}` for an arbitrary strict pair, via its representative and sign.
pub fn xi_matrix_of_pair<F: Field>(field: &F, pair: &DoubleIndex, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let (b, sign) = SchurBasisElement::normalize(pair, shape)?;
    let m = xi_matrix(field, &b, shape)?;
    Ok(match sign {
        Sign::Plus => m,
        Sign::Minus => m.scale(&field.from_i64(-1), field),
    })
}

/// Coefficients of `xi_a xi_b` in the representative basis:
/// `sum_h sigma(a; s,h) sigma(b; h,t) alpha(eps_s + eps_h, eps_h + eps_t)`
/// over `(s,h)` in the orbit of `a` and `(h,t)` in the orbit of `b`.
pub fn structure_constants(
    a: &SchurBasisElement,
    b: &SchurBasisElement,
    shape: &Shape,
) -> Result<BTreeMap<DoubleIndex, i64>> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    let a_comb = a.pair.combined_parities(shape);
    let b_comb = b.pair.combined_parities(shape);
    let mut by_middle: BTreeMap<MultiIndex, Vec<(MultiIndex, Sign)>> = BTreeMap::new();
    for (image, w) in b.pair.orbit() {
        let sign = gamma(&b_comb, &w)?;
        by_middle.entry(image.row().clone()).or_default().push((image.col().clone(), sign));
    }
    let mut out: BTreeMap<DoubleIndex, i64> = BTreeMap::new();
    for (image, w) in a.pair.orbit() {
        let Some(tails) = by_middle.get(image.col()) else { continue };
        let sa = gamma(&a_comb, &w)?;
        let s = image.row();
        let h = image.col();
        let s_plus_h = image.combined_parities(shape);
        for (t, sb) in tails {
            let st = DoubleIndex::new(s.clone(), t.clone())?;
            if st.canonical() != st || !st.is_strict(shape) {
                continue;
            }
            let h_plus_t = DoubleIndex::new(h.clone(), t.clone())?.combined_parities(shape);
            let coeff = sa * *sb * alpha(&s_plus_h, &h_plus_t)?;
            *out.entry(st).or_insert(0) += coeff.to_i64();
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `sum_t c_t rho(xi_t)` for a coefficient map keyed by representatives.
pub fn combine_xi<F: Field>(
    field: &F,
    coeffs: &BTreeMap<DoubleIndex, i64>,
    shape: &Shape,
    degree: usize,
) -> Result<ExactMatrix<F::Elem>> {
    let d = shape.letters().pow(degree as u32);
    let mut acc = ExactMatrix::zeros(d, d);
    for (pair, c) in coeffs {
        let b = SchurBasisElement::from_rep(pair.clone(), shape)?;
        acc = acc.add_scaled(&xi_matrix(field, &b, shape)?, &field.from_i64(*c), field)?;
    }
    Ok(acc)
}

/// Outcome of the classical double-centralizer check on `V^{(x)r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalReport {
    pub dim_commutant_of_symmetric_group: usize,
    pub dim_schur: usize,
    pub spans_equal: bool,
    /// Whether `r <= m + n`, so the converse was checked.
    pub converse_checked: bool,
    pub dim_commutant_of_schur: Option<usize>,
    pub dim_group_algebra_image: Option<usize>,
    pub converse_equal: Option<bool>,
}

/// Commutant of `pi_r(S_r)` against the span of `rho_r(S(m|n,r))`, and for
/// `r <= m + n` the commutant of that span against `pi_r(K S_r)`.
pub fn classical_duality<F: Field>(engine: &Engine<F>, shape: &Shape) -> Result<ClassicalReport> {
    let r = shape.r();
    let d = shape.letters().pow(r as u32);
    engine.check_size(d)?;
    let field = engine.field();
    let simple: Vec<_> = (1..r).map(|i| pi_matrix(field, &Permutation::simple(r, i)?, shape)).collect::<Result<_>>()?;
    let commutant = engine.commutant(&simple, d)?;
    let schur_mats: Vec<_> = schur_basis(shape, r).iter().map(|b| xi_matrix(field, b, shape)).collect::<Result<_>>()?;
    let schur = engine.span_of(d, &schur_mats)?;
    let mut report = ClassicalReport {
        dim_commutant_of_symmetric_group: commutant.dimension(),
        dim_schur: schur.dimension(),
        spans_equal: commutant == schur,
        converse_checked: false,
        dim_commutant_of_schur: None,
        dim_group_algebra_image: None,
        converse_equal: None,
    };
    if r <= shape.letters() {
        let back = engine.commutant(&schur.basis(), d)?;
        let group: Vec<_> = Permutation::all(r).iter().map(|w| pi_matrix(field, w, shape)).collect::<Result<_>>()?;
        let group = engine.span_of(d, &group)?;
        report.converse_checked = true;
        report.dim_commutant_of_schur = Some(back.dimension());
        report.dim_group_algebra_image = Some(group.dimension());
        report.converse_equal = Some(back == group);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::linalg::Engine;

    fn shape(m: usize, n: usize, r: usize) -> Shape {
        Shape::new(m, n, r, Parity::Even).unwrap()
    }

    fn unit_vec(d: usize, k: usize) -> ExactMatrix<num_rational::BigRational> {
        ExactMatrix::from_integers(&Rationals, d, 1, [(k, 0, 1)]).unwrap()
    }

    #[test]
    fn encode_decode_round_trip() {
        let b = TensorBasis::new(3, 3);
        for p in 0..b.dim() {
            assert_eq!(b.encode(&b.decode(p).unwrap()).unwrap(), p);
        }
        assert_eq!(b.encode(&[1, 1, 2]).unwrap(), 1);
        assert!(b.encode(&[4, 1, 1]).is_err());
        assert_eq!(TensorBasis::new(2, 0).dim(), 1);
    }

    #[test]
    fn pi_matrix_examples() {
        let s = shape(1, 1, 2);
        let b = TensorBasis::natural(&s, 2);
        let id = pi_matrix(&Rationals, &Permutation::identity(2), &s).unwrap();
        assert_eq!(id, ExactMatrix::identity(&Rationals, 4));
        let swap = pi_matrix(&Rationals, &Permutation::simple(2, 1).unwrap(), &s).unwrap();
        let v22 = b.encode(&[2, 2]).unwrap();
        assert_eq!(swap.get(v22, v22), Some(&Rationals.from_i64(-1)));
        let v12 = b.encode(&[1, 2]).unwrap();
        let v21 = b.encode(&[2, 1]).unwrap();
        let image = swap.mul(&unit_vec(4, v12), &Rationals).unwrap();
        assert_eq!(image, unit_vec(4, v21));
    }

    #[test]
    fn xi_matrix_examples() {
        let s = shape(1, 1, 1);
        let b = SchurBasisElement::from_rep(DoubleIndex::from_slices(&[1], &[2], &s).unwrap(), &s).unwrap();
        let m = xi_matrix(&Rationals, &b, &s).unwrap();
        assert_eq!(m.mul(&unit_vec(2, 1), &Rationals).unwrap(), unit_vec(2, 0));
        assert!(m.mul(&unit_vec(2, 0), &Rationals).unwrap().is_zero());
        for i in 1..=2 {
            let d = SchurBasisElement::from_rep(DoubleIndex::from_slices(&[i], &[i], &s).unwrap(), &s).unwrap();
            let m = xi_matrix(&Rationals, &d, &s).unwrap();
            assert_eq!(m.mul(&unit_vec(2, i - 1), &Rationals).unwrap(), unit_vec(2, i - 1));
        }
    }

    #[test]
    fn xi_rejects_non_strict() {
        let s = shape(1, 1, 2);
        let bad = DoubleIndex::from_slices(&[1, 1], &[2, 2], &s).unwrap();
        assert_eq!(SchurBasisElement::normalize(&bad, &s), Err(Error::NotStrict));
        assert!(xi_matrix_of_pair(&Rationals, &bad, &s).is_err());
    }

    #[test]
    fn degree_zero_is_identity_on_a_point() {
        let s = shape(1, 1, 1);
        let basis = schur_basis(&s, 0);
        assert_eq!(basis.len(), 1);
        let m = xi_matrix(&Rationals, &basis[0], &s).unwrap();
        assert_eq!(m, ExactMatrix::identity(&Rationals, 1));
    }

    #[test]
    fn structure_constant_examples() {
        let s = shape(1, 1, 1);
        for i in 1..=2 {
            let d = SchurBasisElement::from_rep(DoubleIndex::from_slices(&[i], &[i], &s).unwrap(), &s).unwrap();
            let c = structure_constants(&d, &d, &s).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c.get(d.pair()), Some(&1));
        }
        let e = SchurBasisElement::from_rep(DoubleIndex::from_slices(&[1], &[2], &s).unwrap(), &s).unwrap();
        assert!(structure_constants(&e, &e, &s).unwrap().is_empty());
        let two = schur_basis(&shape(1, 1, 2), 2);
        assert_eq!(structure_constants(&e, &two[0], &s), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn structure_constants_match_matrix_products() {
        for s in [shape(1, 1, 1), shape(1, 1, 2), shape(2, 1, 2)] {
            let basis = schur_basis(&s, s.r());
            let mats: Vec<_> = basis.iter().map(|b| xi_matrix(&Rationals, b, &s).unwrap()).collect();
            for (a, ma) in basis.iter().zip(&mats) {
                for (b, mb) in basis.iter().zip(&mats) {
                    let c = structure_constants(a, b, &s).unwrap();
                    let expected = ma.mul(mb, &Rationals).unwrap();
                    assert_eq!(combine_xi(&Rationals, &c, &s, s.r()).unwrap(), expected, "{} * {}", a.pair(), b.pair());
                }
            }
        }
    }

    #[test]
    fn classical_duality_examples() {
        let e = Engine::new(Rationals);
        let rep = classical_duality(&e, &shape(1, 1, 2)).unwrap();
        assert_eq!(rep.dim_schur, 8);
        assert!(rep.spans_equal);
        assert_eq!(rep.dim_commutant_of_schur, Some(2));
        assert_eq!(rep.converse_equal, Some(true));
        let rep = classical_duality(&e, &shape(1, 1, 1)).unwrap();
        assert_eq!(rep.dim_schur, 4);
        assert!(rep.spans_equal);
    }
}
