//! Structure of finite-dimensional modules: enveloping algebras, radicals,
//! heads, irreducibility and intertwiners.
//!
//! The radical of an algebra of matrices is computed with the trace form
//! (in characteristic zero it is the radical of `(x, y) ↦ tr(xy)`). Since
//! enveloping algebras of 24-dimensional modules have dimension up to 576,
//! module radicals are computed through θ-weights whenever possible:
//! every nonzero submodule of the dual module contains a joint
//! θ-eigenvector, so when every joint eigenspace of the dual is a line the
//! simple submodules of the dual are among the cyclic submodules generated
//! by those eigenvectors. The socle of the dual is their sum, and the
//! radical of the module is its annihilator. Otherwise the enveloping
//! algebra is used.

use crate::affhecke::{AlgebraModule, Provenance};
use crate::error::{consistency, usage, Result};
use crate::linalg::{kernel, solve_hom_system, spin, Echelon, Matrix, Subspace};
use crate::scalar::Rational;

/// The unital algebra spanned by products of a set of `d × d` matrices.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    d: usize,
    basis: Vec<Matrix>,
}

impl EnvelopingAlgebra {
    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The element with the given coordinates in [`Self::basis`].
    pub fn element(&self, coords: &[Rational]) -> Matrix {
        let mut acc = Matrix::zeros(self.d, self.d);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        let mut e = Echelon::new(self.d * self.d);
        for b in &self.basis {
            e.insert(b.as_slice().to_vec());
        }
        e.contains(x.as_slice())
    }
}

/// Closure of the identity under left multiplication by the generators,
/// breadth first.
pub fn envelope_of(generators: &[Matrix], d: usize) -> Result<EnvelopingAlgebra> {
    if generators.iter().any(|g| !g.is_square() || g.rows() != d) {
        return Err(usage!("generators must be {d} × {d}"));
    }
    let mut e = Echelon::new(d * d);
    let mut basis = Vec::new();
    let id = Matrix::identity(d);
    if d > 0 {
        e.insert(id.as_slice().to_vec());
        basis.push(id);
    }
    let mut next = 0;
    while next < basis.len() {
        let x = basis[next].clone();
        next += 1;
        for g in generators {
            let y = g * &x;
            if e.insert(y.as_slice().to_vec()) {
                basis.push(y);
                if basis.len() > d * d {
                    return Err(consistency!("enveloping algebra exceeded dimension {}", d * d));
                }
            }
        }
    }
    Ok(EnvelopingAlgebra { d, basis })
}

pub fn envelope(m: &AlgebraModule) -> Result<EnvelopingAlgebra> {
    envelope_of(&m.generators(), m.dim())
}

/// `{x ∈ a : tr(xy) = 0 for all y ∈ a}` in coordinates of `a.basis()`.
pub fn radical(a: &EnvelopingAlgebra) -> Subspace {
    let k = a.dim();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let t = a.basis[i].trace_of_product(&a.basis[j]);
            gram[(j, i)] = t.clone();
            gram[(i, j)] = t;
        }
    }
    kernel(&gram)
}

/// Matrices spanning the radical.
pub fn radical_elements(a: &EnvelopingAlgebra) -> Vec<Matrix> {
    radical(a).basis_vectors().iter().map(|c| a.element(c)).collect()
}

/// Smallest `k ≥ 1` with `J^k = 0`, where `J` is spanned by `elements`; `None`
/// if the powers stop shrinking before reaching zero.
pub fn nilpotency_index(elements: &[Matrix], d: usize) -> Option<usize> {
    let span = |ms: &[Matrix]| {
        let mut e = Echelon::new(d * d);
        let mut out = Vec::new();
        for m in ms {
            if e.insert(m.as_slice().to_vec()) {
                out.push(m.clone());
            }
        }
        out
    };
    let mut power = span(elements);
    let mut k = 1;
    loop {
        if power.is_empty() {
            return Some(k);
        }
        let next: Vec<Matrix> = power.iter().flat_map(|p| elements.iter().map(move |x| p * x)).collect();
        let next = span(&next);
        if next.len() >= power.len() {
            return None;
        }
        power = next;
        k += 1;
    }
}

/// `J · M` for the radical `J` of the enveloping algebra.
pub fn module_radical_by_envelope(m: &AlgebraModule) -> Result<Subspace> {
    let a = envelope(m)?;
    let d = m.dim();
    let vectors = radical_elements(&a).into_iter().flat_map(|x| (0..d).map(move |c| x.col(c))).collect::<Vec<_>>();
    Ok(Subspace::from_vectors(d, vectors))
}

/// Joint eigenvectors of a family of commuting matrices, one per weight,
/// provided every generalized weight space is accounted for and every
/// joint eigenspace is a line.
fn weight_lines(theta: &[Matrix], weights: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let d = theta.first()?.rows();
    let stacked = |power: u32, mu: &[Rational]| {
        let mut rows = Vec::new();
        for (th, z) in theta.iter().zip(mu) {
            let shifted = (th - &Matrix::scalar(d, z)).pow(power);
            rows.extend(shifted.row_vectors());
        }
        Matrix::from_rows(rows)
    };
    let mut generalized = 0;
    let mut lines = Vec::new();
    for mu in weights {
        let gen = kernel(&stacked(d as u32, mu)).dim();
        if gen == 0 {
            continue;
        }
        generalized += gen;
        let eig = kernel(&stacked(1, mu));
        if eig.dim() != 1 {
            return None;
        }
        lines.push(eig.basis_vectors().remove(0));
    }
    (generalized == d).then_some(lines)
}

/// Radical through the socle of the dual, or `None` if the module lacks
/// a central character or has a joint eigenspace of dimension above one.
pub fn module_radical_by_weights(m: &AlgebraModule) -> Option<Subspace> {
    let weights = m.central_character()?.weights();
    let dual = m.dual();
    let lines = weight_lines(dual.theta_matrices(), &weights)?;
    let gens = dual.generators();
    let d = m.dim();
    let cyclic: Vec<Subspace> = lines.iter().map(|u| spin(&gens, &Subspace::from_vectors(d, [u.clone()]))).collect();
    let mut socle = Subspace::zero(d);
    for (a, sa) in cyclic.iter().enumerate() {
        let simple = lines.iter().enumerate().all(|(b, ub)| !sa.contains(ub) || cyclic[b].contains(&lines[a]));
        if simple {
            socle = socle.sum(sa);
        }
    }
    Some(socle.annihilator())
}

/// The radical of the module: the intersection of its maximal submodules.
pub fn module_radical(m: &AlgebraModule) -> Result<Subspace> {
    match module_radical_by_weights(m) {
        Some(r) => Ok(r),
        None => module_radical_by_envelope(m),
    }
}

/// A quotient module together with the maps relating it to its parent.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    parent: AlgebraModule,
    submodule: Subspace,
    projection: Matrix,
    section: Matrix,
    module: AlgebraModule,
}

impl QuotientModule {
    pub fn parent(&self) -> &AlgebraModule {
        &self.parent
    }

    pub fn submodule(&self) -> &Subspace {
        &self.submodule
    }

    /// `dim(quotient) × dim(parent)`.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `dim(parent) × dim(quotient)`, a right inverse of the projection.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn module(&self) -> &AlgebraModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// `m / sub`, with the quotient identified with the span of the standard
/// basis vectors at the non-pivot columns of `sub`.
pub fn quotient(m: &AlgebraModule, sub: &Subspace) -> Result<QuotientModule> {
    let d = m.dim();
    if sub.ambient() != d {
        return Err(usage!("submodule lives in dimension {}, module has {d}", sub.ambient()));
    }
    for g in m.generators() {
        for v in sub.basis_vectors() {
            if !sub.contains(&g.mul_vec(&v)) {
                return Err(consistency!("subspace is not a submodule"));
            }
        }
    }
    let pivots = sub.pivots();
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let ech = sub.to_echelon();
    let k = free.len();
    let reduce = |v: Vec<Rational>| {
        let mut v = v;
        ech.reduce(&mut v);
        free.iter().map(|&c| v[c].clone()).collect::<Vec<_>>()
    };
    let unit = |c: usize| {
        let mut v = vec![Rational::zero(); d];
        v[c] = Rational::one();
        v
    };
    let projection = Matrix::from_cols(k, &(0..d).map(|c| reduce(unit(c))).collect::<Vec<_>>());
    let section = Matrix::from_cols(d, &free.iter().map(|&c| unit(c)).collect::<Vec<_>>());
    let induce = |g: &Matrix| {
        let cols: Vec<Vec<Rational>> = free.iter().map(|&c| reduce(g.col(c))).collect();
        Matrix::from_cols(k, &cols)
    };
    let module = if k == 0 {
        None
    } else {
        Some(AlgebraModule::new(
            m.params(),
            m.t_matrices().iter().map(induce).collect(),
            m.theta_matrices().iter().map(induce).collect(),
            Provenance::Quotient,
            m.central_character().cloned(),
        )?)
    };
    let module = module.ok_or_else(|| usage!("quotient by the whole module"))?;
    Ok(QuotientModule { parent: m.clone(), submodule: sub.clone(), projection, section, module })
}

/// The head `m / rad(m)`. For standard modules the head must be
/// irreducible; anything else is reported as a consistency failure.
pub fn cosocle(m: &AlgebraModule) -> Result<QuotientModule> {
    let rad = module_radical(m)?;
    let head = quotient(m, &rad)?;
    if let Provenance::InducedStandard(ms) = m.provenance() {
        if !is_irreducible(head.module())? {
            return Err(consistency!("head of the standard module for {ms} is reducible (dimension {})", head.dim()));
        }
    }
    Ok(head)
}

/// Irreducibility. With one-dimensional joint eigenspaces the module is
/// simple exactly when each joint eigenvector generates it; otherwise
/// the module must have zero radical and scalar commutant.
pub fn is_irreducible(m: &AlgebraModule) -> Result<bool> {
    if let Some(weights) = m.central_character().map(|c| c.weights()) {
        if let Some(lines) = weight_lines(m.theta_matrices(), &weights) {
            let gens = m.generators();
            let d = m.dim();
            return Ok(lines.into_iter().all(|u| spin(&gens, &Subspace::from_vectors(d, [u])).dim() == d));
        }
    }
    is_irreducible_by_envelope(m)
}

pub fn is_irreducible_by_envelope(m: &AlgebraModule) -> Result<bool> {
    Ok(module_radical_by_envelope(m)?.is_zero() && commutant_dim(m)? == 1)
}

/// Linear maps `m1 → m2` commuting with every generator, flattened row
/// major as `dim(m2) × dim(m1)` matrices.
pub fn hom_space(m1: &AlgebraModule, m2: &AlgebraModule) -> Result<Subspace> {
    if m1.params() != m2.params() {
        return Err(usage!("modules over different algebras"));
    }
    let pairs: Vec<(Matrix, Matrix)> = m2.generators().into_iter().zip(m1.generators()).collect();
    solve_hom_system(&pairs)
}

pub fn commutant_dim(m: &AlgebraModule) -> Result<usize> {
    Ok(hom_space(m, m)?.dim())
}
