//! The affine Hecke algebra of `GL_n` in Bernstein form.
//!
//! Elements are written `Σ_w T_w · p_w(θ)` with the finite part on the
//! left and Laurent polynomials in `θ_1, …, θ_n` on the right. The
//! Bernstein–Lusztig relation used throughout is
//!
//! ```text
//! T_i p = (s_i p) T_i + (q-1) D_i(p),   D_i(p) = (p - s_i p) / (1 - θ_{i+1} θ_i^{-1})
//! ```
//!
//! which also gives `p T_i = T_i (s_i p) + (q-1) D_i(p)`. In particular
//! `D_i(θ_i) = θ_i` and `D_i(θ_{i+1}) = -θ_i`.
//!
//! With this relation the one-dimensional module `T_i ↦ -1`, `θ ↦ z`
//! exists exactly when `z_{i+1} = q z_i`, so the values attached to a
//! segment `[a, a+e-1]` are the increasing progression `q^a (1, q, …, q^{e-1})`.
//! [`induced_standard_module`] re-checks this for every segment.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{consistency, usage, HeckeError, Result};
use crate::finhecke::{check_hecke_relations, FiniteModule, HeckeElement, HeckeParams};
use crate::linalg::Matrix;
use crate::scalar::{LaurentPoly, Rational};
use crate::segments::{is_langlands_ordered, line_multiplier, Multisegment, Segment};
use crate::symgroup::{
    all_permutations, coset_factor, deodhar_step, length, min_coset_reps, reduced_word, Composition, DeodharStep,
    Permutation,
};

/// `D_i(p)`, computed monomial by monomial: for `θ^a` with
/// `k = a_i - a_{i+1}` the quotient is `θ^a (1 + x + … + x^{k-1})` when
/// `k > 0` and `-θ^a (x^k + … + x^{-1})` when `k < 0`, where
/// `x = θ_{i+1} θ_i^{-1}`.
pub fn bl_correction(i: usize, p: &LaurentPoly) -> LaurentPoly {
    let n = p.nvars();
    assert!(i + 1 < n, "no simple reflection s_{i} in rank {n}");
    let mut terms = Vec::new();
    for (a, c) in p.terms() {
        let k = a[i] - a[i + 1];
        let (range, sign) = if k > 0 { (0..k, c.clone()) } else { (k..0, -c) };
        for j in range {
            let mut e = a.clone();
            e[i] -= j;
            e[i + 1] += j;
            terms.push((e, sign.clone()));
        }
    }
    LaurentPoly::from_terms(n, terms)
}

/// `(s_i p, D_i(p))`, so that `T_i p = (s_i p) T_i + (q-1) D_i(p)`.
/// The correction is cross-checked against exact Laurent division in debug
/// builds.
pub fn bl_commute(i: usize, p: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let n = p.nvars();
    if i + 1 >= n {
        return Err(usage!("no simple reflection s_{i} in rank {n}"));
    }
    let moved = p.swap_vars(i);
    let c = bl_correction(i, p);
    if cfg!(debug_assertions) {
        let divided = (p - &moved).divide_exact(&bl_denominator(n, i))?;
        if divided != c {
            return Err(consistency!("Bernstein-Lusztig correction mismatch for {p}"));
        }
    }
    Ok((moved, c))
}

/// `1 - θ_{i+1} θ_i^{-1}`.
pub fn bl_denominator(n: usize, i: usize) -> LaurentPoly {
    let mut e = vec![0; n];
    e[i] = -1;
    e[i + 1] = 1;
    &LaurentPoly::one(n) - &LaurentPoly::monomial(e, Rational::one())
}

/// `Σ_w T_w · p_w(θ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalFormElement {
    params: HeckeParams,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl NormalFormElement {
    pub fn zero(params: &HeckeParams) -> Self {
        NormalFormElement { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn term(params: &HeckeParams, w: Permutation, p: LaurentPoly) -> Self {
        assert_eq!(w.n(), params.n());
        assert_eq!(p.nvars(), params.n());
        let mut e = Self::zero(params);
        if !p.is_zero() {
            e.terms.insert(w, p);
        }
        e
    }

    pub fn t(params: &HeckeParams, w: Permutation) -> Self {
        Self::term(params, w, LaurentPoly::one(params.n()))
    }

    pub fn poly(params: &HeckeParams, p: LaurentPoly) -> Self {
        Self::term(params, Permutation::identity(params.n()), p)
    }

    pub fn from_hecke(h: &HeckeElement) -> Self {
        let n = h.params().n();
        let mut e = Self::zero(h.params());
        for (w, c) in h.terms() {
            e.add_term(w.clone(), &LaurentPoly::constant(n, c.clone()));
        }
        e
    }

    /// The finite part, if every coefficient is constant.
    pub fn to_hecke(&self) -> Option<HeckeElement> {
        let mut h = HeckeElement::zero(&self.params);
        for (w, p) in &self.terms {
            let c = p.as_constant()?;
            h = h.add(&HeckeElement::basis(&self.params, w.clone()).scale(&c)).ok()?;
        }
        Some(h)
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| LaurentPoly::zero(self.params.n()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Permutation, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(old) => old + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    fn add_assign(&mut self, other: &Self) {
        for (w, p) in &other.terms {
            self.add_term(w.clone(), p);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(usage!("mismatched Hecke parameters"));
        }
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.params);
        for (w, p) in &self.terms {
            out.add_term(w.clone(), &p.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by `r` on the right.
    fn mul_poly_right(&self, r: &LaurentPoly) -> Self {
        let mut out = Self::zero(&self.params);
        for (w, p) in &self.terms {
            out.add_term(w.clone(), &(p * r));
        }
        out
    }

    /// `T_i · self`, using only the finite Hecke rule on the left factor.
    pub fn left_mul_generator(&self, i: usize) -> Self {
        let q = self.params.q();
        let qm1 = q - &Rational::one();
        let mut out = Self::zero(&self.params);
        for (w, p) in &self.terms {
            let sw = w.left_mul_simple(i);
            if w.has_left_descent(i) {
                out.add_term(w.clone(), &p.scale(&qm1));
                out.add_term(sw, &p.scale(q));
            } else {
                out.add_term(sw, p);
            }
        }
        out
    }

    fn left_mul_t(&self, w: &Permutation) -> Self {
        let mut out = self.clone();
        for &i in reduced_word(w).iter().rev() {
            out = out.left_mul_generator(i);
        }
        out
    }
}

impl fmt::Debug for NormalFormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.terms.iter().map(|(w, p)| format!("T{w}·({p})")).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Normal form of `p · T_{word[0]} ⋯ T_{word[k-1]}`, by moving `p` to the
/// right one generator at a time with `p T_i = T_i (s_i p) + (q-1) D_i(p)`.
pub fn push(params: &HeckeParams, p: &LaurentPoly, word: &[usize]) -> NormalFormElement {
    let Some((&i, rest)) = word.split_first() else {
        return NormalFormElement::poly(params, p.clone());
    };
    if p.is_zero() {
        return NormalFormElement::zero(params);
    }
    let mut out = push(params, &p.swap_vars(i), rest).left_mul_generator(i);
    let corr = bl_correction(i, p);
    if !corr.is_zero() {
        let qm1 = params.q() - &Rational::one();
        out.add_assign(&push(params, &corr, rest).scale(&qm1));
    }
    out
}

/// Product of two normal-form elements.
pub fn nf_mul(a: &NormalFormElement, b: &NormalFormElement) -> Result<NormalFormElement> {
    if a.params != b.params {
        return Err(usage!("mismatched Hecke parameters"));
    }
    let mut out = NormalFormElement::zero(&a.params);
    for (w, p) in &a.terms {
        for (v, r) in &b.terms {
            let moved = push(&a.params, p, &reduced_word(v)).mul_poly_right(r);
            out.add_assign(&moved.left_mul_t(w));
        }
    }
    Ok(out)
}

/// The θ-eigenvalues `z_1, …, z_n` of a central character datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacterData {
    z: Vec<Rational>,
}

impl CentralCharacterData {
    pub fn new(z: Vec<Rational>) -> Result<Self> {
        if z.iter().any(Rational::is_zero) {
            return Err(HeckeError::Domain("central character values must be nonzero".into()));
        }
        Ok(CentralCharacterData { z })
    }

    pub fn values(&self) -> &[Rational] {
        &self.z
    }

    /// Distinct rearrangements of the values: the possible θ-weights.
    pub fn weights(&self) -> Vec<Vec<Rational>> {
        let mut sorted = self.z.clone();
        sorted.sort();
        let mut out = Vec::new();
        fn rec(pool: &mut Vec<Option<Rational>>, cur: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
            if pool.iter().all(Option::is_none) {
                out.push(cur.clone());
                return;
            }
            let mut last: Option<Rational> = None;
            for k in 0..pool.len() {
                let Some(x) = pool[k].clone() else { continue };
                if last.as_ref() == Some(&x) {
                    continue;
                }
                last = Some(x.clone());
                pool[k] = None;
                cur.push(x.clone());
                rec(pool, cur, out);
                cur.pop();
                pool[k] = Some(x);
            }
        }
        let mut pool: Vec<Option<Rational>> = sorted.into_iter().map(Some).collect();
        rec(&mut pool, &mut Vec::new(), &mut out);
        out
    }
}

/// Where a module came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    PrincipalSeries,
    InducedStandard(Multisegment),
    Quotient,
    Custom,
}

/// A finite-dimensional module of the affine Hecke algebra: matrices of
/// `T_0, …, T_{n-2}` and of `θ_1, …, θ_n`.
#[derive(Clone, Debug)]
pub struct AlgebraModule {
    params: HeckeParams,
    dim: usize,
    t: Vec<Matrix>,
    theta: Vec<Matrix>,
    provenance: Provenance,
    central: Option<CentralCharacterData>,
}

impl AlgebraModule {
    /// Builds a module, checking all relations when the parameters' policy
    /// asks for it at this dimension.
    pub fn new(
        params: &HeckeParams,
        t: Vec<Matrix>,
        theta: Vec<Matrix>,
        provenance: Provenance,
        central: Option<CentralCharacterData>,
    ) -> Result<Self> {
        let n = params.n();
        if t.len() + 1 != n || theta.len() != n {
            return Err(usage!("rank {n} needs {} T-matrices and {n} θ-matrices", n - 1));
        }
        let dim = theta[0].rows();
        if t.iter().chain(&theta).any(|m| !m.is_square() || m.rows() != dim) {
            return Err(usage!("module matrices must all be square of the same size"));
        }
        let m = AlgebraModule { params: params.clone(), dim, t, theta, provenance, central };
        if params.verify().should_verify(dim) {
            m.verify_relations()?;
        }
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

    pub fn theta(&self, j: usize) -> &Matrix {
        &self.theta[j]
    }

    pub fn t_matrices(&self) -> &[Matrix] {
        &self.t
    }

    pub fn theta_matrices(&self) -> &[Matrix] {
        &self.theta
    }

    /// All action matrices: the `T`s followed by the `θ`s.
    pub fn generators(&self) -> Vec<Matrix> {
        self.t.iter().chain(&self.theta).cloned().collect()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn central_character(&self) -> Option<&CentralCharacterData> {
        self.central.as_ref()
    }

    pub fn restrict_to_finite(&self) -> FiniteModule {
        FiniteModule::new_unchecked(&self.params, self.dim, self.t.clone())
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// The module on the dual space twisted by the anti-involution fixing
    /// every `T_i` and `θ_j`: all matrices transposed.
    pub fn dual(&self) -> AlgebraModule {
        AlgebraModule {
            params: self.params.clone(),
            dim: self.dim,
            t: self.t.iter().map(Matrix::transpose).collect(),
            theta: self.theta.iter().map(Matrix::transpose).collect(),
            provenance: Provenance::Custom,
            central: self.central.clone(),
        }
    }

    pub fn direct_sum(&self, other: &AlgebraModule) -> Result<AlgebraModule> {
        if self.params != other.params {
            return Err(usage!("mismatched Hecke parameters"));
        }
        let sum = |a: &[Matrix], b: &[Matrix]| a.iter().zip(b).map(|(x, y)| x.direct_sum(y)).collect();
        Ok(AlgebraModule {
            params: self.params.clone(),
            dim: self.dim + other.dim,
            t: sum(&self.t, &other.t),
            theta: sum(&self.theta, &other.theta),
            provenance: Provenance::Custom,
            central: None,
        })
    }

    /// Quadratic and braid relations, commuting invertible `θ`s, and the
    /// Bernstein–Lusztig relation between every `T_i` and every `θ_j^{±1}`.
    pub fn verify_relations(&self) -> Result<()> {
        check_hecke_relations(&self.params, &self.t)?;
        let n = self.params.n();
        for a in 0..n {
            for b in a + 1..n {
                if &self.theta[a] * &self.theta[b] != &self.theta[b] * &self.theta[a] {
                    return Err(consistency!("θ_{} and θ_{} do not commute", a + 1, b + 1));
                }
            }
        }
        let inverses = self.theta_inverses()?;
        let qm1 = self.params.q() - &Rational::one();
        for (i, ti) in self.t.iter().enumerate() {
            for j in 0..n {
                for k in [1, -1] {
                    let p = LaurentPoly::var_pow(n, j, k);
                    let lhs = &(ti * &eval_at(&p, &self.theta, &inverses))
                        - &(&eval_at(&p.swap_vars(i), &self.theta, &inverses) * ti);
                    let rhs = eval_at(&bl_correction(i, &p), &self.theta, &inverses).scale(&qm1);
                    if lhs != rhs {
                        return Err(consistency!("Bernstein-Lusztig relation fails for T_{i} and θ_{}^{k}", j + 1));
                    }
                }
            }
        }
        Ok(())
    }

    fn theta_inverses(&self) -> Result<Vec<Matrix>> {
        self.theta
            .iter()
            .enumerate()
            .map(|(j, m)| m.inverse().ok_or_else(|| consistency!("θ_{} is not invertible", j + 1)))
            .collect()
    }
}

/// Evaluates a Laurent polynomial at commuting matrices.
pub fn eval_at(p: &LaurentPoly, theta: &[Matrix], inverses: &[Matrix]) -> Matrix {
    let d = theta.first().map_or(0, Matrix::rows);
    let mut acc = Matrix::zeros(d, d);
    for (e, c) in p.terms() {
        let mut m = Matrix::scalar(d, c);
        for (j, &k) in e.iter().enumerate() {
            let base = if k >= 0 { &theta[j] } else { &inverses[j] };
            for _ in 0..k.unsigned_abs() {
                m = &m * base;
            }
        }
        acc = &acc + &m;
    }
    acc
}

/// θ-values of a segment: `μ q^a (1, q, …, q^{e-1})`, with `μ` the line
/// multiplier.
pub fn segment_eval(seg: &Segment, q: &Rational) -> Result<Vec<Rational>> {
    let mult = line_multiplier(seg.line)?;
    Ok((0..seg.len as i64).map(|k| &mult * &q.pow((seg.start + k) as i32)).collect())
}

/// Concatenated θ-values of the segments, in the given order.
pub fn multisegment_values(m: &Multisegment, q: &Rational) -> Result<Vec<Rational>> {
    let mut z = Vec::with_capacity(m.n());
    for s in m.segments() {
        z.extend(segment_eval(s, q)?);
    }
    Ok(z)
}

/// Builds the θ-matrices of an induced module with basis `T_x ⊗ v`: push
/// `θ_j` through `T_x`, split each `T_u = T_{x'} T_{u'}` along the
/// parabolic, and let `T_{u'}` act on `v` by `sign^{l(u')}`.
fn induced_theta(
    params: &HeckeParams,
    reps: &[Permutation],
    comp: &Composition,
    z: &[Rational],
    parabolic_sign: bool,
) -> Result<Vec<Matrix>> {
    let n = params.n();
    let index: BTreeMap<&Permutation, usize> = reps.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let d = reps.len();
    let mut theta = vec![Matrix::zeros(d, d); n];
    for (col, x) in reps.iter().enumerate() {
        let word = reduced_word(x);
        for (j, th) in theta.iter_mut().enumerate() {
            let nf = push(params, &LaurentPoly::var(n, j), &word);
            for (u, f) in nf.terms() {
                let (xr, up) = coset_factor(u, comp);
                let mut val = f.eval(z)?;
                if parabolic_sign && length(&up) % 2 == 1 {
                    val = -val;
                }
                let row = *index.get(&xr).ok_or_else(|| consistency!("coset representative {xr} missing"))?;
                th[(row, col)] += &val;
            }
        }
    }
    Ok(theta)
}

/// The principal series module on the basis `T_w ⊗ 1`, `w` ordered as in
/// [`all_permutations`].
pub fn principal_series(params: &HeckeParams, chi: &CentralCharacterData) -> Result<AlgebraModule> {
    let n = params.n();
    if chi.values().len() != n {
        return Err(usage!("central character needs {n} values"));
    }
    let basis = all_permutations(n);
    let index: BTreeMap<&Permutation, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let d = basis.len();
    let t = (0..n - 1)
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
    let comp = Composition::new(vec![1; n])?;
    let theta = induced_theta(params, &basis, &comp, chi.values(), false)?;
    AlgebraModule::new(params, t, theta, Provenance::PrincipalSeries, Some(chi.clone()))
}

/// The standard module induced from the one-dimensional module of the
/// parabolic subalgebra on which each `T_t` inside a block acts by `-1` and
/// `θ` by the concatenated segment values. Basis `T_x ⊗ v` over minimal
/// coset representatives `x`, ordered by length then lexicographically.
pub fn induced_standard_module(params: &HeckeParams, m: &Multisegment) -> Result<AlgebraModule> {
    let n = params.n();
    if m.n() != n {
        return Err(usage!("multisegment {m} has total length {}, expected {n}", m.n()));
    }
    if !is_langlands_ordered(m) {
        return Err(usage!("multisegment {m} is not in Langlands order"));
    }
    let q = params.q();
    let comp = Composition::new(m.segments().iter().map(|s| s.len as usize).collect())?;
    let z = multisegment_values(m, q)?;
    check_parabolic_character(params, &comp, &z)?;

    let reps = min_coset_reps(n, &comp)?;
    let index: BTreeMap<&Permutation, usize> = reps.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let d = reps.len();
    let qm1 = q - &Rational::one();
    let mut t = Vec::with_capacity(n - 1);
    for s in 0..n - 1 {
        let mut mat = Matrix::zeros(d, d);
        for (col, x) in reps.iter().enumerate() {
            match deodhar_step(s, x, &comp)? {
                DeodharStep::LongerRep(y) => mat[(index[&y], col)] = Rational::one(),
                DeodharStep::StaysInParabolic(_) => mat[(col, col)] = -Rational::one(),
                DeodharStep::ShorterRep(y) => {
                    mat[(index[&y], col)] = q.clone();
                    mat[(col, col)] = qm1.clone();
                }
            }
        }
        t.push(mat);
    }
    let theta = induced_theta(params, &reps, &comp, &z, true)?;
    let chi = CentralCharacterData::new(z)?;
    AlgebraModule::new(params, t, theta, Provenance::InducedStandard(m.clone()), Some(chi))
}

/// The one-dimensional parabolic module must satisfy the Bernstein–Lusztig
/// relation for every simple reflection inside a block.
fn check_parabolic_character(params: &HeckeParams, comp: &Composition, z: &[Rational]) -> Result<()> {
    let n = params.n();
    let qm1 = params.q() - &Rational::one();
    let minus_one = -Rational::one();
    for s in (0..n.saturating_sub(1)).filter(|&s| comp.contains_simple(s)) {
        for j in 0..n {
            let p = LaurentPoly::var(n, j);
            let lhs = &(&minus_one * &p.eval(z)?) - &(&p.swap_vars(s).eval(z)? * &minus_one);
            let rhs = &qm1 * &bl_correction(s, &p).eval(z)?;
            if lhs != rhs {
                return Err(HeckeError::Parameter(format!(
                    "segment values {z:?} are incompatible with T_{s} acting by -1"
                )));
            }
        }
    }
    Ok(())
}
