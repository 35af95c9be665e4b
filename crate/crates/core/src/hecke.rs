//! The weak degenerate double Hecke algebra through its action on
//! `V-bar^{(x)r}`: generator words, the defining relations, and the matrix
//! algebras `D(m|n,r)` and `D(m|n,r)_l`.
//!
//! The action is on the right, so a word `g_1 g_2 .. g_k` evaluates to the
//! matrix product `M(g_k) .. M(g_2) M(g_1)`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{gamma, Permutation, Shape};
use crate::enhanced::{enh_encode, enhanced_basis, enhanced_parity, layer_projector, levi_basis, rho_levi, EnhWord};
use crate::field::Field;
use crate::linalg::{AlgebraSpan, Engine, ExactMatrix};
use crate::schur::signed_permutation_action;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeckeGenerator {
    /// `s_i`, one-based, `1 <= i <= r - 1`.
    S(usize),
    /// `x_sigma^{(l)}` with `sigma` in `S_l`, `0 <= l <= r`.
    X { layer: usize, sigma: Permutation },
}

impl HeckeGenerator {
    pub fn x(sigma: Permutation) -> HeckeGenerator {
        HeckeGenerator::X { layer: sigma.len(), sigma }
    }

    pub fn validate(&self, r: usize) -> Result<()> {
        match self {
            HeckeGenerator::S(i) if *i == 0 || *i >= r => {
                Err(Error::InvalidGenerator(alloc::format!("s{i} needs 1 <= i <= {}", r.saturating_sub(1))))
            }
            HeckeGenerator::X { layer, .. } if *layer > r => {
                Err(Error::InvalidGenerator(alloc::format!("x at layer {layer} exceeds r = {r}")))
            }
            HeckeGenerator::X { layer, sigma } if sigma.len() != *layer => {
                Err(Error::InvalidGenerator(alloc::format!("x at layer {layer} with a permutation of {}", sigma.len())))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for HeckeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeGenerator::S(i) => write!(f, "s{i}"),
            HeckeGenerator::X { layer, sigma } => write!(f, "x{sigma}^{layer}"),
        }
    }
}

/// A word in the generators, evaluated left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeckeWord(Vec<HeckeGenerator>);

impl HeckeWord {
    pub fn new(gens: Vec<HeckeGenerator>) -> HeckeWord {
        HeckeWord(gens)
    }

    pub fn generators(&self) -> &[HeckeGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<HeckeGenerator>> for HeckeWord {
    fn from(gens: Vec<HeckeGenerator>) -> HeckeWord {
        HeckeWord(gens)
    }
}

impl fmt::Display for HeckeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// `s_1 .. s_{r-1}`, then `x_sigma^{(l)}` for `l = 0..=r` and `sigma` in
/// lexicographic order.
pub fn all_generators(r: usize) -> Vec<HeckeGenerator> {
    let mut out: Vec<HeckeGenerator> = (1..r).map(HeckeGenerator::S).collect();
    for l in 0..=r {
        out.extend(Permutation::all(l).into_iter().map(HeckeGenerator::x));
    }
    out
}

/// `Xi(g)` on `V-bar^{(x)r}`.
///
/// `s_i` is the signed swap of slots `i, i+1` with sign `(-1)^{p p'}` for the
/// parities of the two letters (the enhanced letter has parity `v`).
/// `x_sigma^{(l)}` sends `v_{i,I}` to `gamma(eps_i, sigma) v_{i.sigma, {1..l}}`
/// when `I = {1..l}` and to zero otherwise.
pub fn xi_gen<F: Field>(field: &F, g: &HeckeGenerator, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    let r = shape.r();
    g.validate(r)?;
    let basis = enhanced_basis(shape);
    match g {
        HeckeGenerator::S(i) => {
            signed_permutation_action(field, &basis, |x| enhanced_parity(x, shape), &Permutation::simple(r, *i)?)
        }
        HeckeGenerator::X { layer, sigma } => {
            let support: Vec<usize> = (1..=*layer).collect();
            let d = basis.dim();
            let mut entries = Vec::new();
            for pos in 0..d {
                let word = EnhWord::from_position(pos, shape)?;
                if word.support(shape) != support {
                    continue;
                }
                let core = word.core(shape);
                let sign = gamma(&core.parities(shape), sigma)?;
                let image = enh_encode(&core.act(sigma)?, &support, shape)?;
                entries.push((image.position(shape), pos, sign.to_i64()));
            }
            ExactMatrix::from_integers(field, d, d, entries)
        }
    }
}

/// Matrices of generators, computed once per generator.
#[derive(Clone, Debug)]
pub struct GeneratorCache<F: Field> {
    field: F,
    shape: Shape,
    mats: BTreeMap<HeckeGenerator, ExactMatrix<F::Elem>>,
}

impl<F: Field> GeneratorCache<F> {
    pub fn new(field: F, shape: Shape) -> Self {
        GeneratorCache { field, shape, mats: BTreeMap::new() }
    }

    pub fn get(&mut self, g: &HeckeGenerator) -> Result<&ExactMatrix<F::Elem>> {
        if !self.mats.contains_key(g) {
            let m = xi_gen(&self.field, g, &self.shape)?;
            self.mats.insert(g.clone(), m);
        }
        Ok(&self.mats[g])
    }

    /// `Xi(w)`: the empty word gives the identity.
    pub fn eval(&mut self, w: &HeckeWord) -> Result<ExactMatrix<F::Elem>> {
        let d = enhanced_basis(&self.shape).dim();
        let mut acc = ExactMatrix::identity(&self.field, d);
        for g in w.generators() {
            let field = self.field.clone();
            acc = self.get(g)?.mul(&acc, &field)?;
        }
        Ok(acc)
    }
}

/// `Xi(w)` for the right action: `M(g_k) .. M(g_1)`.
pub fn eval_word<F: Field>(field: &F, w: &HeckeWord, shape: &Shape) -> Result<ExactMatrix<F::Elem>> {
    GeneratorCache::new(field.clone(), *shape).eval(w)
}

/// One instance of a defining relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationInstance {
    /// `s_i s_i = 1`
    Involution { i: usize },
    /// `s_i s_j = s_j s_i`, `|i - j| > 1`
    FarCommute { i: usize, j: usize },
    /// `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}`
    Braid { i: usize },
    /// `x_sigma x_mu = x_{sigma o mu}` in one layer
    XProduct { layer: usize, sigma: Permutation, mu: Permutation },
    /// `s_i x_sigma = x_{s_i o sigma}`, `i < l`
    LeftAbsorb { i: usize, sigma: Permutation },
    /// `x_sigma s_i = x_{sigma o s_i}`, `i < l`
    RightAbsorb { i: usize, sigma: Permutation },
    /// `s_i x_sigma = x_sigma s_i`, `i > l`
    CommuteAbove { i: usize, sigma: Permutation },
    /// `x_delta^{(l)} x_gamma^{(k)} = 0`, `k != l`
    Orthogonal { delta: Permutation, gamma: Permutation },
}

/// Right-hand side of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationSide {
    Word(HeckeWord),
    Zero,
}

impl RelationInstance {
    pub fn id(&self) -> &'static str {
        match self {
            RelationInstance::Involution { .. } => "involution",
            RelationInstance::FarCommute { .. } => "far_commute",
            RelationInstance::Braid { .. } => "braid",
            RelationInstance::XProduct { .. } => "x_product",
            RelationInstance::LeftAbsorb { .. } | RelationInstance::RightAbsorb { .. } => "absorb",
            RelationInstance::CommuteAbove { .. } => "commute_above",
            RelationInstance::Orthogonal { .. } => "orthogonal",
        }
    }

    /// Both sides, after checking the side conditions against `r`.
    pub fn sides(&self, r: usize) -> Result<(HeckeWord, RelationSide)> {
        use HeckeGenerator::S;
        use RelationInstance::*;
        let malformed = |why: &str| Error::MalformedRelation(alloc::format!("{}: {why}", self.id()));
        let bad = |why: &str| Err(malformed(why));
        let out = match self {
            Involution { i } => (vec_word([S(*i), S(*i)]), RelationSide::Word(HeckeWord::default())),
            FarCommute { i, j } => {
                if i.abs_diff(*j) <= 1 {
                    return bad("indices must differ by more than one");
                }
                (vec_word([S(*i), S(*j)]), RelationSide::Word(vec_word([S(*j), S(*i)])))
            }
            Braid { i } => {
                (vec_word([S(*i), S(*i + 1), S(*i)]), RelationSide::Word(vec_word([S(*i + 1), S(*i), S(*i + 1)])))
            }
            XProduct { layer, sigma, mu } => {
                if sigma.len() != *layer || mu.len() != *layer {
                    return bad("permutations must lie in the layer's symmetric group");
                }
                let prod = sigma.compose(mu)?;
                (
                    vec_word([HeckeGenerator::x(sigma.clone()), HeckeGenerator::x(mu.clone())]),
                    RelationSide::Word(vec_word([HeckeGenerator::x(prod)])),
                )
            }
            LeftAbsorb { i, sigma } | RightAbsorb { i, sigma } => {
                let l = sigma.len();
                if *i == 0 || *i >= l {
                    return bad("needs 1 <= i < l");
                }
                let si = Permutation::simple(l, *i)?;
                let x = HeckeGenerator::x(sigma.clone());
                if matches!(self, LeftAbsorb { .. }) {
                    (vec_word([S(*i), x]), RelationSide::Word(vec_word([HeckeGenerator::x(si.compose(sigma)?)])))
                } else {
                    (vec_word([x, S(*i)]), RelationSide::Word(vec_word([HeckeGenerator::x(sigma.compose(&si)?)])))
                }
            }
            CommuteAbove { i, sigma } => {
                if *i <= sigma.len() {
                    return bad("needs i > l");
                }
                let x = HeckeGenerator::x(sigma.clone());
                (vec_word([S(*i), x.clone()]), RelationSide::Word(vec_word([x, S(*i)])))
            }
            Orthogonal { delta, gamma } => {
                if delta.len() == gamma.len() {
                    return bad("layers must differ");
                }
                (vec_word([HeckeGenerator::x(delta.clone()), HeckeGenerator::x(gamma.clone())]), RelationSide::Zero)
            }
        };
        for g in out.0.generators() {
            g.validate(r).map_err(|e| malformed(&e.to_string()))?;
        }
        if let RelationSide::Word(w) = &out.1 {
            for g in w.generators() {
                g.validate(r).map_err(|e| malformed(&e.to_string()))?;
            }
        }
        Ok(out)
    }
}

fn vec_word<const N: usize>(gens: [HeckeGenerator; N]) -> HeckeWord {
    HeckeWord(gens.into_iter().collect())
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Any r large enough for the instance works for display.
        match self.sides(usize::MAX) {
            Ok((lhs, RelationSide::Word(rhs))) => write!(f, "[{}] {lhs} = {rhs}", self.id()),
            Ok((lhs, RelationSide::Zero)) => write!(f, "[{}] {lhs} = 0", self.id()),
            Err(_) => write!(f, "[{}] {self:?}", self.id()),
        }
    }
}

/// Every instance of every relation for degree `r`.
pub fn all_relation_instances(r: usize) -> Vec<RelationInstance> {
    use RelationInstance::*;
    let mut out = Vec::new();
    for i in 1..r {
        out.push(Involution { i });
    }
    for i in 1..r {
        for j in (i + 2)..r {
            out.push(FarCommute { i, j });
            out.push(FarCommute { i: j, j: i });
        }
    }
    for i in 1..r.saturating_sub(1) {
        out.push(Braid { i });
    }
    let perms: Vec<Vec<Permutation>> = (0..=r).map(Permutation::all).collect();
    for (layer, ps) in perms.iter().enumerate() {
        for sigma in ps {
            for mu in ps {
                out.push(XProduct { layer, sigma: sigma.clone(), mu: mu.clone() });
            }
        }
    }
    for (l, ps) in perms.iter().enumerate() {
        for i in 1..l {
            for sigma in ps {
                out.push(LeftAbsorb { i, sigma: sigma.clone() });
                out.push(RightAbsorb { i, sigma: sigma.clone() });
            }
        }
    }
    for (l, ps) in perms.iter().enumerate() {
        for i in (l + 1)..r {
            for sigma in ps {
                out.push(CommuteAbove { i, sigma: sigma.clone() });
            }
        }
    }
    for (l, ds) in perms.iter().enumerate() {
        for (k, gs) in perms.iter().enumerate() {
            if k == l {
                continue;
            }
            for delta in ds {
                for gamma in gs {
                    out.push(Orthogonal { delta: delta.clone(), gamma: gamma.clone() });
                }
            }
        }
    }
    out
}

fn check_with_cache<F: Field>(cache: &mut GeneratorCache<F>, rel: &RelationInstance, r: usize) -> Result<bool> {
    let (lhs, rhs) = rel.sides(r)?;
    let left = cache.eval(&lhs)?;
    Ok(match rhs {
        RelationSide::Word(w) => left == cache.eval(&w)?,
        RelationSide::Zero => left.is_zero(),
    })
}

/// Whether both sides of `rel` act by the same matrix.
pub fn check_relation<F: Field>(field: &F, rel: &RelationInstance, shape: &Shape) -> Result<bool> {
    check_with_cache(&mut GeneratorCache::new(field.clone(), *shape), rel, shape.r())
}

/// Behaviour at `i = l`, where no relation is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryObservation {
    pub layer: usize,
    pub sigma: Permutation,
    /// `s_l x_sigma = x_sigma s_l`.
    pub commutes: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    /// Relation id to (checked, passed).
    pub by_id: BTreeMap<&'static str, (usize, usize)>,
    pub failures: Vec<String>,
    pub boundary: Vec<BoundaryObservation>,
}

impl RelationReport {
    pub fn total(&self) -> usize {
        self.by_id.values().map(|c| c.0).sum()
    }

    pub fn passed(&self) -> usize {
        self.by_id.values().map(|c| c.1).sum()
    }

    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every relation instance and records the `i = l` boundary.
pub fn relation_suite<F: Field>(field: &F, shape: &Shape) -> Result<RelationReport> {
    let r = shape.r();
    let mut cache = GeneratorCache::new(field.clone(), *shape);
    let mut report = RelationReport::default();
    for rel in all_relation_instances(r) {
        let ok = check_with_cache(&mut cache, &rel, r)?;
        let entry = report.by_id.entry(rel.id()).or_insert((0, 0));
        entry.0 += 1;
        if ok {
            entry.1 += 1;
        } else {
            report.failures.push(rel.to_string());
        }
    }
    for l in 1..r {
        for sigma in Permutation::all(l) {
            let x = HeckeGenerator::x(sigma.clone());
            let a = cache.eval(&vec_word([HeckeGenerator::S(l), x.clone()]))?;
            let b = cache.eval(&vec_word([x, HeckeGenerator::S(l)]))?;
            report.boundary.push(BoundaryObservation { layer: l, sigma, commutes: a == b });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommutationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// `rho(b) Xi(g) = Xi(g) rho(b)` for every Levi basis element and generator.
pub fn commutation_suite<F: Field>(field: &F, shape: &Shape) -> Result<CommutationReport> {
    let gens: Vec<_> =
        all_generators(shape.r()).into_iter().map(|g| Ok((xi_gen(field, &g, shape)?, g))).collect::<Result<_>>()?;
    let mut report = CommutationReport::default();
    for b in levi_basis(shape) {
        let rb = rho_levi(field, &b, shape)?;
        for (m, g) in &gens {
            report.checked += 1;
            if !rb.commutes_with(m, field)? {
                report.failures.push(alloc::format!("{b} vs {g}"));
            }
        }
    }
    Ok(report)
}

/// Generators of a layer algebra together with its unit.
pub type LayerGenerators<E> = (Vec<ExactMatrix<E>>, ExactMatrix<E>);

/// Generators of `D(m|n,r)_l` and its unit, the layer projector: `s_i`
/// truncated to the layer, and `x_sigma^{(l)}` for all `sigma`.
pub fn d_layer_generators<F: Field>(field: &F, shape: &Shape, l: usize) -> Result<LayerGenerators<F::Elem>> {
    let r = shape.r();
    let proj = layer_projector(field, shape, l)?;
    let mut gens = Vec::new();
    for i in 1..r {
        gens.push(proj.mul(&xi_gen(field, &HeckeGenerator::S(i), shape)?, field)?);
    }
    for sigma in Permutation::all(l) {
        gens.push(xi_gen(field, &HeckeGenerator::x(sigma), shape)?);
    }
    Ok((gens, proj))
}

/// `D(m|n,r)_l`, extended by zero off the layer.
pub fn d_layer_algebra<F: Field>(engine: &Engine<F>, shape: &Shape, l: usize) -> Result<AlgebraSpan<F::Elem>> {
    let d = enhanced_basis(shape).dim();
    engine.check_size(d)?;
    let (gens, unit) = d_layer_generators(engine.field(), shape, l)?;
    engine.algebra_closure_with_unit(d, &gens, Some(&unit))
}

/// `D(m|n,r) = Xi(H_r)`, with the identity adjoined.
pub fn d_algebra<F: Field>(engine: &Engine<F>, shape: &Shape) -> Result<AlgebraSpan<F::Elem>> {
    let d = enhanced_basis(shape).dim();
    engine.check_size(d)?;
    let gens: Vec<_> =
        all_generators(shape.r()).iter().map(|g| xi_gen(engine.field(), g, shape)).collect::<Result<_>>()?;
    engine.algebra_closure(d, &gens, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Parity;
    use crate::enhanced::rho_xi0;
    use crate::field::Rationals;
    use alloc::vec;

    fn shape(m: usize, n: usize, r: usize, v: Parity) -> Shape {
        Shape::new(m, n, r, v).unwrap()
    }

    fn pos(letters: &[usize], s: &Shape) -> usize {
        EnhWord::from_letters(letters.to_vec(), s).unwrap().position(s)
    }

    #[test]
    fn x0_is_the_bottom_projector() {
        for v in [Parity::Even, Parity::Odd] {
            let s = shape(1, 1, 2, v);
            let x0 = xi_gen(&Rationals, &HeckeGenerator::x(Permutation::identity(0)), &s).unwrap();
            assert_eq!(x0, rho_xi0(&Rationals, &s).unwrap());
        }
    }

    #[test]
    fn swap_with_two_odd_letters() {
        let s = shape(1, 1, 2, Parity::Odd);
        let m = xi_gen(&Rationals, &HeckeGenerator::S(1), &s).unwrap();
        // v_2 (x) v is letters (3, 2); its image is -(v (x) v_2)
        let col = m.column(pos(&[3, 2], &s));
        assert_eq!(col, vec![(pos(&[2, 3], &s), Rationals.from_i64(-1))]);
    }

    #[test]
    fn x1_projects_onto_the_first_slot() {
        let s = shape(1, 1, 2, Parity::Even);
        let m = xi_gen(&Rationals, &HeckeGenerator::x(Permutation::identity(1)), &s).unwrap();
        let expected: Vec<_> = [pos(&[1, 2], &s), pos(&[3, 2], &s)].into();
        let diag: Vec<_> = m.entries().map(|(r, c, _)| (r, c)).collect();
        assert_eq!(diag, expected.iter().map(|&p| (p, p)).collect::<Vec<_>>());
    }

    #[test]
    fn eval_word_examples() {
        let s = shape(1, 1, 2, Parity::Odd);
        let id = ExactMatrix::identity(&Rationals, 9);
        assert_eq!(eval_word(&Rationals, &HeckeWord::default(), &s).unwrap(), id);
        let ss = HeckeWord::new(vec![HeckeGenerator::S(1), HeckeGenerator::S(1)]);
        assert_eq!(eval_word(&Rationals, &ss, &s).unwrap(), id);
        let xx = HeckeWord::new(vec![
            HeckeGenerator::x(Permutation::identity(1)),
            HeckeGenerator::x(Permutation::identity(2)),
        ]);
        assert!(eval_word(&Rationals, &xx, &s).unwrap().is_zero());
        let bad = HeckeWord::new(vec![HeckeGenerator::S(2)]);
        assert!(eval_word(&Rationals, &bad, &s).is_err());
    }

    #[test]
    fn malformed_relations_are_rejected() {
        let sigma = Permutation::identity(1);
        assert!(RelationInstance::CommuteAbove { i: 1, sigma: sigma.clone() }.sides(3).is_err());
        assert!(RelationInstance::LeftAbsorb { i: 1, sigma }.sides(3).is_err());
        assert!(RelationInstance::FarCommute { i: 1, j: 2 }.sides(4).is_err());
        let id2 = Permutation::identity(2);
        assert!(RelationInstance::Orthogonal { delta: id2.clone(), gamma: id2 }.sides(3).is_err());
    }

    #[test]
    fn relations_hold_on_small_shapes() {
        for v in [Parity::Even, Parity::Odd] {
            for s in [shape(1, 1, 2, v), shape(1, 1, 3, v)] {
                let rep = relation_suite(&Rationals, &s).unwrap();
                assert!(rep.all_pass(), "{:?}", rep.failures);
                assert_eq!(rep.total(), all_relation_instances(s.r()).len());
            }
        }
    }

    #[test]
    fn commutation_on_small_shape() {
        let s = shape(1, 1, 2, Parity::Odd);
        let rep = commutation_suite(&Rationals, &s).unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert_eq!(rep.checked, 13 * all_generators(2).len());
    }

    #[test]
    fn layer_zero_algebra_is_one_dimensional() {
        let e = Engine::new(Rationals);
        for v in [Parity::Even, Parity::Odd] {
            let s = shape(1, 1, 2, v);
            assert_eq!(d_layer_algebra(&e, &s, 0).unwrap().dimension(), 1);
        }
    }

    #[test]
    fn d_algebra_contains_identity_and_decomposes() {
        let e = Engine::new(Rationals);
        let s = shape(1, 1, 2, Parity::Even);
        let d = d_algebra(&e, &s).unwrap();
        assert!(d.contains(&Rationals, &ExactMatrix::identity(&Rationals, 9)).unwrap());
        let mut sum = AlgebraSpan::zero(9);
        for l in 0..=2 {
            sum = sum.sum(&Rationals, &d_layer_algebra(&e, &s, l).unwrap()).unwrap();
        }
        assert_eq!(sum, d);
    }
}
