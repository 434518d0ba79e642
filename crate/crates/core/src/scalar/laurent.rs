//! Laurent polynomials in commuting variables θ_1, …, θ_n over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;
use crate::error::{consistency, usage, HeckeError, Result};

/// Exponent vector of a Laurent monomial; entries may be negative.
pub type Exponent = Vec<i32>;

/// A sparse Laurent polynomial. Terms are kept in lexicographic order of
/// exponent vectors and zero coefficients are never stored, so two equal
/// polynomials are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable θ_{j+1} (0-based index `j`).
    pub fn var(nvars: usize, j: usize) -> Self {
        Self::var_pow(nvars, j, 1)
    }

    pub fn var_pow(nvars: usize, j: usize, k: i32) -> Self {
        assert!(j < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[j] = k;
        Self::monomial(e, Rational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, exp: &[i32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exp: Exponent, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(usage!("Laurent polynomials in {} and {} variables", self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    /// Multiplies by the monomial θ^shift.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(shift).map(|(x, s)| x + s).collect(), a.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Applies the simple transposition s_{i+1}: swaps θ_{i+1} and θ_{i+2}
    /// (0-based variables `i` and `i + 1`).
    pub fn swap_vars(&self, i: usize) -> Self {
        assert!(i + 1 < self.nvars, "swap index out of range");
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, i + 1);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// True if the polynomial is invariant under swapping variables `i`, `i + 1`.
    pub fn is_symmetric_in(&self, i: usize) -> bool {
        self.swap_vars(i) == *self
    }

    /// Evaluates at a point with all coordinates nonzero.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(usage!(
                "evaluation point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            ));
        }
        if let Some(j) = point.iter().position(Rational::is_zero) {
            return Err(HeckeError::Domain(format!("coordinate {} of the evaluation point is zero", j + 1)));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (z, &k) in point.iter().zip(e) {
                if k != 0 {
                    m *= &z.pow(k);
                }
            }
            acc += &m;
        }
        Ok(acc)
    }

    /// Exact quotient `self / den` in the Laurent ring.
    ///
    /// Both sides are shifted by monomials so that they become ordinary
    /// polynomials with the denominator free of monomial factors; then
    /// divisibility in the Laurent ring coincides with divisibility in the
    /// polynomial ring and lexicographic long division decides it.
    pub fn divide_exact(&self, den: &Self) -> Result<Self> {
        self.check_same(den)?;
        if den.is_zero() {
            return Err(consistency!("division by the zero Laurent polynomial"));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let n = self.nvars;
        let min_exp = |p: &Self| -> Exponent { (0..n).map(|j| p.terms.keys().map(|e| e[j]).min().unwrap()).collect() };
        let dmin = min_exp(den);
        let nmin = min_exp(self);
        let neg = |v: &Exponent| -> Exponent { v.iter().map(|x| -x).collect() };
        let d = den.shift(&neg(&dmin));
        let mut rem = self.shift(&neg(&nmin));

        let (lead_e, lead_c) = d.terms.iter().next_back().unwrap();
        let (lead_e, lead_c) = (lead_e.clone(), lead_c.clone());
        let mut quot = Self::zero(n);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return Err(consistency!("Laurent division is not exact: ({self}) / ({den})"));
            }
            let qe: Exponent = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = c / &lead_c;
            for (de, dc) in &d.terms {
                let te: Exponent = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, &-(dc * &qc));
            }
            quot.add_term(qe, &qc);
        }
        let net: Exponent = nmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&net))
    }
}

/// Product of two Laurent polynomials in the same variables.
pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.checked_mul(b)
}

/// Exact quotient; fails with a consistency error when `den` does not divide `num`.
pub fn laurent_divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    num.divide_exact(den)
}

/// Evaluates `p` at `point` (all coordinates nonzero).
pub fn laurent_eval(p: &LaurentPoly, point: &[Rational]) -> Result<Rational> {
    p.eval(point)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(&-rhs).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let constant = e.iter().all(|&x| x == 0);
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (j, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "θ{}", j + 1)?,
                    _ => write!(f, "θ{}^{}", j + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
