//! Double-centralizer checks between `rho(S'(m|n,r))` and `D(m|n,r)` on
//! `V-bar^{(x)r}`, including the layer-by-layer decomposition.

use alloc::vec::Vec;

use crate::combinatorics::{orbit_reps, Shape};
use crate::enhanced::{enhanced_basis, layer_indices, levi_basis, rho_levi, LeviBasisElement};
use crate::field::Field;
use crate::hecke::{d_algebra, d_layer_algebra};
use crate::linalg::{AlgebraSpan, Engine, ExactMatrix, SparseVec};
use crate::schur::schur_basis;
use crate::{Error, Result};

/// Caches the spans shared by the individual checks for one shape.
#[derive(Clone, Debug)]
pub struct Workspace<F: Field> {
    engine: Engine<F>,
    shape: Shape,
    levi: Option<AlgebraSpan<F::Elem>>,
    d: Option<AlgebraSpan<F::Elem>>,
    commutant_d: Option<AlgebraSpan<F::Elem>>,
    commutant_levi: Option<AlgebraSpan<F::Elem>>,
    d_layers: Option<Vec<AlgebraSpan<F::Elem>>>,
}

impl<F: Field> Workspace<F> {
    /// Fails if `(m+n+1)^r` exceeds the engine's size cap.
    pub fn new(engine: Engine<F>, shape: Shape) -> Result<Self> {
        engine.check_size(enhanced_basis(&shape).dim())?;
        Ok(Workspace { engine, shape, levi: None, d: None, commutant_d: None, commutant_levi: None, d_layers: None })
    }

    pub fn engine(&self) -> &Engine<F> {
        &self.engine
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn ambient_dim(&self) -> usize {
        enhanced_basis(&self.shape).dim()
    }

    /// Span of `rho(b)` over the Levi basis.
    pub fn levi_span(&mut self) -> Result<&AlgebraSpan<F::Elem>> {
        if self.levi.is_none() {
            let f = self.engine.field();
            let mats: Vec<_> =
                levi_basis(&self.shape).iter().map(|b| rho_levi(f, b, &self.shape)).collect::<Result<_>>()?;
            self.levi = Some(self.engine.span_of(self.ambient_dim(), &mats)?);
        }
        Ok(self.levi.as_ref().expect("just filled"))
    }

    pub fn d_span(&mut self) -> Result<&AlgebraSpan<F::Elem>> {
        if self.d.is_none() {
            self.d = Some(d_algebra(&self.engine, &self.shape)?);
        }
        Ok(self.d.as_ref().expect("just filled"))
    }

    pub fn commutant_of_d(&mut self) -> Result<&AlgebraSpan<F::Elem>> {
        if self.commutant_d.is_none() {
            let basis = self.d_span()?.basis();
            self.commutant_d = Some(self.engine.commutant(&basis, self.ambient_dim())?);
        }
        Ok(self.commutant_d.as_ref().expect("just filled"))
    }

    pub fn commutant_of_levi(&mut self) -> Result<&AlgebraSpan<F::Elem>> {
        if self.commutant_levi.is_none() {
            let basis = self.levi_span()?.basis();
            self.commutant_levi = Some(self.engine.commutant(&basis, self.ambient_dim())?);
        }
        Ok(self.commutant_levi.as_ref().expect("just filled"))
    }

    /// `D_l` for `l = 0..=r`.
    pub fn d_layers(&mut self) -> Result<&[AlgebraSpan<F::Elem>]> {
        if self.d_layers.is_none() {
            let layers = (0..=self.shape.r())
                .map(|l| d_layer_algebra(&self.engine, &self.shape, l))
                .collect::<Result<Vec<_>>>()?;
            self.d_layers = Some(layers);
        }
        Ok(self.d_layers.as_deref().expect("just filled"))
    }
}

/// `1 + sum_{l=1}^r |Omega(m|n,l)|`.
pub fn expected_levi_dim(shape: &Shape) -> usize {
    1 + (1..=shape.r()).map(|l| orbit_reps(shape, l).len()).sum::<usize>()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstReport {
    pub dim_levi: usize,
    pub expected_dim_levi: usize,
    pub dim_commutant_d: usize,
    /// `rho(S') = End_D`.
    pub holds: bool,
    /// `rho(S')` is contained in `End_D`.
    pub levi_in_commutant: bool,
}

/// `rho(S'(m|n,r)) = End_{D(m|n,r)}(V-bar^{(x)r})`.
pub fn verify_first<F: Field>(ws: &mut Workspace<F>) -> Result<FirstReport> {
    let levi = ws.levi_span()?.clone();
    let comm = ws.commutant_of_d()?.clone();
    let field = ws.engine.field();
    Ok(FirstReport {
        dim_levi: levi.dimension(),
        expected_dim_levi: expected_levi_dim(&ws.shape),
        dim_commutant_d: comm.dimension(),
        holds: comm == levi,
        levi_in_commutant: comm.contains_span(field, &levi)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondReport {
    pub dim_d: usize,
    pub dim_commutant_levi: usize,
    /// `End_{S'} = D`.
    pub holds: bool,
    /// `r <= m + n`, where equality is expected.
    pub gated: bool,
    /// `D` is contained in `End_{S'}`.
    pub d_in_commutant: bool,
}

/// `End_{S'(m|n,r)}(V-bar^{(x)r}) = D(m|n,r)`; expected only for `r <= m + n`.
pub fn verify_second<F: Field>(ws: &mut Workspace<F>) -> Result<SecondReport> {
    let d = ws.d_span()?.clone();
    let comm = ws.commutant_of_levi()?.clone();
    let field = ws.engine.field();
    Ok(SecondReport {
        dim_d: d.dimension(),
        dim_commutant_levi: comm.dimension(),
        holds: comm == d,
        gated: ws.shape.r() <= ws.shape.letters(),
        d_in_commutant: comm.contains_span(field, &d)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub layer: usize,
    /// `dim V-bar_l^{(x)r}`.
    pub space_dim: usize,
    pub dim_d_layer: usize,
    /// Dimension of the endomorphisms of the layer commuting with `S'`.
    pub dim_layer_endos: usize,
    /// Those endomorphisms, extended by zero, equal `D_l`.
    pub equal: bool,
    /// `S(m|n,l)` acts faithfully on the layer; always true for `l = 0`.
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerEndoReport {
    pub layers: Vec<LayerReport>,
    pub sum_of_dims: usize,
    /// The layer endomorphism algebras together span `End_{S'}`.
    pub sum_equals_commutant: bool,
    /// `D = sum_l D_l`.
    pub decomposition_holds: bool,
    /// `D_l D_k = 0` for `l != k`.
    pub layers_orthogonal: bool,
}

/// Per-layer commutants computed inside `End(V-bar_l^{(x)r})` and embedded by
/// zero extension, compared with `D_l` and with the full commutant.
pub fn verify_layer_endos<F: Field>(ws: &mut Workspace<F>) -> Result<LayerEndoReport> {
    let d = ws.ambient_dim();
    let levi_basis_mats = ws.levi_span()?.basis();
    let comm = ws.commutant_of_levi()?.clone();
    let dspan = ws.d_span()?.clone();
    let layers = ws.d_layers()?.to_vec();
    let field = ws.engine.field().clone();

    let mut reports = Vec::new();
    let mut endo_sum = AlgebraSpan::zero(d);
    let mut layer_sum = AlgebraSpan::zero(d);
    for (l, layer) in layers.iter().enumerate() {
        let idx = layer_indices(&ws.shape, l);
        let restricted: Vec<_> = levi_basis_mats.iter().map(|m| m.restrict(&idx)).collect();
        let local = ws.engine.commutant(&restricted, idx.len())?;
        let embedded: Vec<_> = local.basis().iter().map(|m| m.embed(d, &idx)).collect();
        let endos = ws.engine.span_of(d, &embedded)?;
        let faithful = l == 0 || verify_faithful_layer_action(ws, l)?;
        reports.push(LayerReport {
            layer: l,
            space_dim: idx.len(),
            dim_d_layer: layer.dimension(),
            dim_layer_endos: endos.dimension(),
            equal: endos == *layer,
            faithful,
        });
        endo_sum = endo_sum.sum(&field, &endos)?;
        layer_sum = layer_sum.sum(&field, layer)?;
    }
    let mut orthogonal = true;
    for (l, a) in layers.iter().enumerate() {
        for (k, b) in layers.iter().enumerate() {
            if l != k && !a.annihilates(&field, b)? {
                orthogonal = false;
            }
        }
    }
    Ok(LayerEndoReport {
        sum_of_dims: reports.iter().map(|r| r.dim_layer_endos).sum(),
        layers: reports,
        sum_equals_commutant: endo_sum == comm,
        decomposition_holds: layer_sum == dspan,
        layers_orthogonal: orthogonal,
    })
}

/// Whether `w -> (rho(alpha_l(b)) w)_b` is injective on `V-bar_l^{(x)r}`.
pub fn verify_faithful_layer_action<F: Field>(ws: &Workspace<F>, l: usize) -> Result<bool> {
    let shape = &ws.shape;
    if l == 0 || l > shape.r() {
        return Err(Error::LayerOutOfRange { layer: l, max: shape.r() });
    }
    let field = ws.engine.field();
    let idx = layer_indices(shape, l);
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::new();
    for b in schur_basis(shape, l) {
        let m: ExactMatrix<F::Elem> = rho_levi(field, &LeviBasisElement::Xi(b), shape)?.restrict(&idx);
        rows.extend((0..m.nrows()).map(|k| m.row(k).to_vec()).filter(|row| !row.is_empty()));
    }
    Ok(ws.engine.rank(idx.len(), rows.iter()) == idx.len())
}

/// Everything checked for one shape. Deterministic for a given shape and field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub shape: Shape,
    pub dim_ambient: usize,
    pub r_le_mplusn: bool,
    pub first: FirstReport,
    pub second: SecondReport,
    pub layers: LayerEndoReport,
}

impl DualityReport {
    pub fn dim_levi(&self) -> usize {
        self.first.dim_levi
    }

    pub fn dim_d(&self) -> usize {
        self.second.dim_d
    }

    pub fn first_isomorphism_holds(&self) -> bool {
        self.first.holds
    }

    pub fn second_isomorphism_holds(&self) -> bool {
        self.second.holds
    }

    pub fn faithful(&self) -> bool {
        self.first.dim_levi == self.first.expected_dim_levi && self.layers.layers.iter().all(|l| l.faithful)
    }

    /// Every check that is expected to hold at this shape.
    pub fn gated_pass(&self) -> bool {
        self.first.holds
            && self.first.levi_in_commutant
            && self.second.d_in_commutant
            && (!self.second.gated || self.second.holds)
            && self.faithful()
            && self.layers.layers.iter().all(|l| l.equal)
            && self.layers.sum_equals_commutant
            && self.layers.decomposition_holds
            && self.layers.layers_orthogonal
    }
}

pub fn verify_all<F: Field>(ws: &mut Workspace<F>) -> Result<DualityReport> {
    let first = verify_first(ws)?;
    let second = verify_second(ws)?;
    let layers = verify_layer_endos(ws)?;
    Ok(DualityReport {
        shape: ws.shape,
        dim_ambient: ws.ambient_dim(),
        r_le_mplusn: ws.shape.r() <= ws.shape.letters(),
        first,
        second,
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Parity;
    use crate::field::Rationals;

    fn ws(m: usize, n: usize, r: usize, v: Parity) -> Workspace<Rationals> {
        Workspace::new(Engine::new(Rationals), Shape::new(m, n, r, v).unwrap()).unwrap()
    }

    #[test]
    fn first_duality_at_smallest_shape() {
        for v in [Parity::Even, Parity::Odd] {
            let rep = verify_first(&mut ws(1, 1, 2, v)).unwrap();
            assert!(rep.holds);
            assert_eq!(rep.dim_levi, 13);
            assert_eq!(rep.dim_commutant_d, 13);
        }
    }

    #[test]
    fn second_duality_at_smallest_shape() {
        let rep = verify_second(&mut ws(1, 1, 2, Parity::Odd)).unwrap();
        assert!(rep.gated && rep.holds);
    }

    #[test]
    fn faithful_layers() {
        let w = ws(1, 1, 2, Parity::Even);
        assert!(verify_faithful_layer_action(&w, 1).unwrap());
        assert!(verify_faithful_layer_action(&w, 2).unwrap());
        assert!(verify_faithful_layer_action(&w, 0).is_err());
        assert!(verify_faithful_layer_action(&w, 3).is_err());
    }

    #[test]
    fn layer_endos_at_smallest_shape() {
        let rep = verify_layer_endos(&mut ws(1, 1, 2, Parity::Even)).unwrap();
        assert!(rep.layers.iter().all(|l| l.equal));
        assert_eq!(rep.layers[0].dim_layer_endos, 1);
        // C(2,2)^2 * dim End_{S(1|1,2)}(V^{(x)2}) = 2
        assert_eq!(rep.layers[2].dim_layer_endos, 2);
        assert!(rep.sum_equals_commutant && rep.decomposition_holds && rep.layers_orthogonal);
    }

    #[test]
    fn size_cap_refuses_large_shapes() {
        let e = Engine::new(Rationals).with_size_cap(8);
        let err = Workspace::new(e, Shape::new(1, 1, 2, Parity::Even).unwrap()).unwrap_err();
        assert_eq!(err, Error::SizeCapExceeded { dim: 9, cap: 8 });
    }
}
