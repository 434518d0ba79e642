//! The finite Iwahori–Hecke algebra `H_W(q)` of `S_n`: products in the
//! `T_w` basis, the two one-dimensional characters, Specht modules in
//! seminormal form, and multiplicities computed as intertwiner dimensions.
//!
//! `T_i` satisfies `T_i^2 = (q-1) T_i + q`, so its eigenvalues are `q` and
//! `-1`. The sign character (`T_i ↦ -1`) is the Specht module of `(n)` and
//! the trivial character (`T_i ↦ q`) the one of `(1^n)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::combin::{enumerate_syt, Partition, Tableau};
use crate::error::{usage, HeckeError, Result};
use crate::linalg::{solve_hom_system, Matrix};
use crate::scalar::Rational;
use crate::symgroup::{all_permutations, length, reduced_word, Permutation};

/// Modules up to this dimension have their relations checked when built,
/// unless overridden.
pub const AUTO_VERIFY_MAX_DIM: usize = 24;

/// Whether constructed modules re-check their defining relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VerifyPolicy {
    #[default]
    Auto,
    Always,
    Never,
}

impl VerifyPolicy {
    /// `Always` if `HECKE_DEBUG_RELATIONS=1`, else `Auto`.
    pub fn from_env() -> Self {
        match std::env::var("HECKE_DEBUG_RELATIONS") {
            Ok(v) if v.trim() == "1" => VerifyPolicy::Always,
            _ => VerifyPolicy::Auto,
        }
    }

    pub fn should_verify(self, dim: usize) -> bool {
        match self {
            VerifyPolicy::Auto => dim <= AUTO_VERIFY_MAX_DIM,
            VerifyPolicy::Always => true,
            VerifyPolicy::Never => false,
        }
    }
}

/// Rank and parameter. Equality ignores the verification policy.
#[derive(Clone, Debug)]
pub struct HeckeParams {
    n: usize,
    q: Rational,
    verify: VerifyPolicy,
}

impl HeckeParams {
    /// Rejects `q = 0`, `q = -1` and any `q` with a vanishing quantum
    /// factorial `[k]_q`, `k ≤ n`.
    pub fn new(n: usize, q: Rational) -> Result<Self> {
        if n == 0 {
            return Err(usage!("rank must be at least 1"));
        }
        if q.is_zero() || q == -Rational::one() {
            return Err(HeckeError::Parameter(format!("q = {q} is not allowed")));
        }
        let mut qk = Rational::one();
        let mut bracket = Rational::zero();
        for k in 1..=n {
            bracket += &qk;
            qk = &qk * &q;
            if bracket.is_zero() {
                return Err(HeckeError::Parameter(format!("[{k}]_q vanishes at q = {q}")));
            }
        }
        Ok(HeckeParams { n, q, verify: VerifyPolicy::from_env() })
    }

    pub fn with_verify(mut self, verify: VerifyPolicy) -> Self {
        self.verify = verify;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn verify(&self) -> VerifyPolicy {
        self.verify
    }
}

impl PartialEq for HeckeParams {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.q == other.q
    }
}

impl Eq for HeckeParams {}

/// An element `Σ c_w T_w` of `H_W(q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    params: HeckeParams,
    coeffs: BTreeMap<Permutation, Rational>,
}

impl HeckeElement {
    pub fn zero(params: &HeckeParams) -> Self {
        HeckeElement { params: params.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(params: &HeckeParams, w: Permutation) -> Self {
        assert_eq!(w.n(), params.n, "permutation degree differs from rank");
        let mut e = Self::zero(params);
        e.coeffs.insert(w, Rational::one());
        e
    }

    pub fn one(params: &HeckeParams) -> Self {
        Self::basis(params, Permutation::identity(params.n))
    }

    pub fn generator(params: &HeckeParams, i: usize) -> Self {
        Self::basis(params, Permutation::simple(params.n, i))
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn coeff(&self, w: &Permutation) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: Permutation, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.params);
        for (w, x) in &self.coeffs {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_params(&self.params, &other.params)?;
        let mut out = self.clone();
        for (w, x) in &other.coeffs {
            out.add_term(w.clone(), x);
        }
        Ok(out)
    }

    /// `T_i · self`.
    pub fn left_mul_generator(&self, i: usize) -> Self {
        let q = &self.params.q;
        let qm1 = q - &Rational::one();
        let mut out = Self::zero(&self.params);
        for (w, c) in &self.coeffs {
            let sw = w.left_mul_simple(i);
            if w.has_left_descent(i) {
                out.add_term(w.clone(), &(c * &qm1));
                out.add_term(sw, &(c * q));
            } else {
                out.add_term(sw, c);
            }
        }
        out
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.coeffs.iter().map(|(w, c)| format!("{c}·T{w}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

fn check_params(a: &HeckeParams, b: &HeckeParams) -> Result<()> {
    if a != b {
        return Err(usage!("mismatched Hecke parameters (n={}, q={}) vs (n={}, q={})", a.n, a.q, b.n, b.q));
    }
    Ok(())
}

/// Product in the `T_w` basis, built by left-multiplying `b` by the
/// generators along a reduced word of each `T_x` in `a`.
pub fn hecke_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    check_params(&a.params, &b.params)?;
    let mut out = HeckeElement::zero(&a.params);
    for (x, c) in &a.coeffs {
        let mut prod = b.clone();
        for &i in reduced_word(x).iter().rev() {
            prod = prod.left_mul_generator(i);
        }
        out = out.add(&prod.scale(c))?;
    }
    Ok(out)
}

/// A module of `H_W(q)` given by the matrices of `T_0, …, T_{n-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    params: HeckeParams,
    dim: usize,
    t: Vec<Matrix>,
}

impl FiniteModule {
    /// Wraps generator matrices without checking relations.
    pub fn new_unchecked(params: &HeckeParams, dim: usize, t: Vec<Matrix>) -> Self {
        assert_eq!(t.len(), params.n - 1, "need one matrix per simple reflection");
        assert!(t.iter().all(|m| m.is_square() && m.rows() == dim));
        FiniteModule { params: params.clone(), dim, t }
    }

    /// Wraps generator matrices after checking the quadratic and braid
    /// relations.
    pub fn new(params: &HeckeParams, dim: usize, t: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(params, dim, t);
        m.verify_relations()?;
        Ok(m)
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self, i: usize) -> &Matrix {
        &self.t[i]
    }

    pub fn t_matrices(&self) -> &[Matrix] {
        &self.t
    }

    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule> {
        check_params(&self.params, &other.params)?;
        let t = self.t.iter().zip(&other.t).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::new_unchecked(&self.params, self.dim + other.dim, t))
    }

    /// Quadratic relation for every generator, braid relation for adjacent
    /// ones, commutation for distant ones.
    pub fn verify_relations(&self) -> Result<()> {
        check_hecke_relations(&self.params, &self.t)
    }
}

pub(crate) fn check_hecke_relations(params: &HeckeParams, t: &[Matrix]) -> Result<()> {
    let Some(first) = t.first() else {
        return Ok(());
    };
    let d = first.rows();
    let q = params.q();
    let one = Matrix::identity(d);
    for (i, ti) in t.iter().enumerate() {
        let lhs = &(ti - &Matrix::scalar(d, q)) * &(ti + &one);
        if !lhs.is_zero() {
            return Err(HeckeError::Consistency(format!("quadratic relation fails for T_{i}")));
        }
        for (j, tj) in t.iter().enumerate().skip(i + 1) {
            let ok = if j == i + 1 { &(ti * tj) * ti == &(tj * ti) * tj } else { ti * tj == tj * ti };
            if !ok {
                return Err(HeckeError::Consistency(format!("braid relation fails for T_{i}, T_{j}")));
            }
        }
    }
    Ok(())
}

fn character(params: &HeckeParams, value: &Rational) -> FiniteModule {
    let t = (0..params.n - 1).map(|_| Matrix::scalar(1, value)).collect();
    FiniteModule::new_unchecked(params, 1, t)
}

/// `T_i ↦ -1`.
pub fn sign_character(params: &HeckeParams) -> FiniteModule {
    character(params, &-Rational::one())
}

/// `T_i ↦ q`.
pub fn trivial_character(params: &HeckeParams) -> FiniteModule {
    character(params, params.q())
}

/// Left regular representation on the basis `T_w`, `w` ordered as in
/// [`all_permutations`].
pub fn regular_representation(params: &HeckeParams) -> FiniteModule {
    let basis = all_permutations(params.n);
    let index: BTreeMap<&Permutation, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let d = basis.len();
    let t = (0..params.n - 1)
        .map(|i| {
            let mut m = Matrix::zeros(d, d);
            for (col, w) in basis.iter().enumerate() {
                let image = HeckeElement::basis(params, w.clone()).left_mul_generator(i);
                for (u, c) in image.terms() {
                    m[(index[u], col)] = c.clone();
                }
            }
            m
        })
        .collect();
    FiniteModule::new_unchecked(params, d, t)
}

/// A Specht module: basis indexed by standard tableaux of its shape.
#[derive(Clone, Debug)]
pub struct SpechtModule {
    label: Partition,
    tableaux: Vec<Tableau>,
    module: FiniteModule,
}

impl SpechtModule {
    pub fn label(&self) -> &Partition {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn t(&self, i: usize) -> &Matrix {
        self.module.t(i)
    }
}

/// `(q-1) / (1 - q^{-rho})`, the diagonal entry for axial distance `rho`.
fn seminormal_diagonal(q: &Rational, rho: i64) -> Rational {
    let qm1 = q - &Rational::one();
    let den = &Rational::one() - &q.pow(-(rho as i32));
    &qm1 / &den
}

/// Seminormal form. With `rho` the content of `i+1` minus the content of
/// `i+2` (1-based entries for 0-based generator `i`), `T_i` acts on `v_t` by
/// `(q-1)/(1-q^{-rho})` on the diagonal; row neighbours give `-1` and column
/// neighbours `q`. When swapping the two entries gives a standard tableau
/// `t'`, the off-diagonal coefficient is `1` if `i+2` lies in a lower row
/// than `i+1` in `t`, and `a(rho) a(-rho) + q` otherwise.
pub fn specht_module(params: &HeckeParams, label: &Partition) -> Result<SpechtModule> {
    if label.size() as usize != params.n {
        return Err(usage!("{label} is not a partition of {}", params.n));
    }
    let tableaux = enumerate_syt(label);
    let d = tableaux.len();
    let q = params.q();
    let index: std::collections::HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let t = (0..params.n - 1)
        .map(|i| {
            let (a, b) = (i as u32 + 1, i as u32 + 2);
            let mut m = Matrix::zeros(d, d);
            for (col, tab) in tableaux.iter().enumerate() {
                let rho = tab.content(a) - tab.content(b);
                let diag = seminormal_diagonal(q, rho);
                let swapped = tab.swap_entries(a);
                if swapped.is_standard() {
                    let row = index[&swapped];
                    let lower = tab.position(b).0 > tab.position(a).0;
                    m[(row, col)] = if lower { Rational::one() } else { &(&diag * &seminormal_diagonal(q, -rho)) + q };
                }
                m[(col, col)] = diag;
            }
            m
        })
        .collect();
    let module = FiniteModule::new_unchecked(params, d, t);
    module
        .verify_relations()
        .map_err(|e| HeckeError::Consistency(format!("Specht module {label} failed validation: {e}")))?;
    Ok(SpechtModule { label: label.clone(), tableaux, module })
}

/// `dim Hom(S, m)` as the dimension of the space of intertwiners.
pub fn multiplicity(s: &SpechtModule, m: &FiniteModule) -> Result<usize> {
    check_params(&s.module.params, &m.params)?;
    m.verify_relations().map_err(|e| usage!("module does not satisfy the Hecke relations: {e}"))?;
    hom_dimension(&s.module, m)
}

/// Dimension of the space of `T`-intertwiners `a → b`.
pub fn hom_dimension(a: &FiniteModule, b: &FiniteModule) -> Result<usize> {
    check_params(&a.params, &b.params)?;
    if a.t.is_empty() {
        return Ok(a.dim * b.dim);
    }
    let blocks: Vec<(Matrix, Matrix)> = b.t.iter().zip(&a.t).map(|(tb, ta)| (tb.clone(), ta.clone())).collect();
    Ok(solve_hom_system(&blocks)?.dim())
}

/// `true` if `l(x y) = l(x) + l(y)`.
pub fn lengths_add(x: &Permutation, y: &Permutation) -> bool {
    length(&(x * y)) == length(x) + length(y)
}
