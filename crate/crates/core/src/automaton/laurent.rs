use std::fmt;

use crate::algebra::Field;

/// A Laurent polynomial `Σ c_k t^k` with finitely many nonzero terms.
///
/// Stored as a dense coefficient run starting at exponent `low`; both ends of
/// the run are nonzero, and the zero polynomial is the empty run at `low = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly<F: Field> {
    field: F,
    low: i64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero(field: F) -> Self {
        LaurentPoly { field, low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(field: F, c: F::Elem, exp: i64) -> Self {
        Self::from_run(field, exp, vec![c])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::monomial(field, c, 0)
    }

    /// Coefficients of `t^low, t^(low+1), …`.
    pub fn from_run(field: F, low: i64, coeffs: Vec<F::Elem>) -> Self {
        let mut p = LaurentPoly { field, low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| self.field.is_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> F::Elem {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            self.field.zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { field: self.field.clone(), low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Shifted so that the lowest exponent is 0.
    pub fn normalized(&self) -> Self {
        self.shift(-self.low)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let coeffs = (low..=high).map(|e| f.add(&self.coeff(e), &other.coeff(e))).collect();
        Self::from_run(f.clone(), low, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LaurentPoly { field: self.field.clone(), low: self.low, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::from_run(f.clone(), self.low + other.low, coeffs)
    }

    /// `self / divisor` when the division is exact in `K[t, t⁻¹]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let f = &self.field;
        // long division of the normalized runs, highest degree first
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        if rem.len() < d.len() {
            return None;
        }
        let lead_inv = f.inv(d.last().unwrap()).expect("trimmed leading coefficient");
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![f.zero(); qlen];
        for k in (0..qlen).rev() {
            let c = f.mul(&rem[k + d.len() - 1], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dj));
            }
            quot[k] = c;
        }
        if rem.iter().any(|r| !f.is_zero(r)) {
            return None;
        }
        Some(Self::from_run(f.clone(), self.low - divisor.low, quot))
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let one = self.field.one();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let e = self.low + i as i64;
            let cs = self.field.format(c);
            match (e, *c == one) {
                (0, _) => write!(out, "{cs}")?,
                (1, true) => write!(out, "t")?,
                (1, false) => write!(out, "{cs}*t")?,
                (_, true) => write!(out, "t^{e}")?,
                (_, false) => write!(out, "{cs}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix<F: Field> {
    field: F,
    n: usize,
    entries: Vec<LaurentPoly<F>>,
}

impl<F: Field> LaurentMatrix<F> {
    pub fn zero(field: F, n: usize) -> Self {
        LaurentMatrix { entries: vec![LaurentPoly::zero(field.clone()); n * n], field, n }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<F> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly<F>) {
        self.entries[i * self.n + j] = p;
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> LaurentPoly<F> {
        let n = self.n;
        let f = self.field.clone();
        if n == 0 {
            return LaurentPoly::constant(f.clone(), f.one());
        }
        let mut a = self.entries.clone();
        let mut prev = LaurentPoly::constant(f.clone(), f.one());
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return LaurentPoly::zero(f);
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k * n + k].mul(&a[i * n + j]).sub(&a[i * n + k].mul(&a[k * n + j]));
                    a[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i * n + k] = LaurentPoly::zero(f.clone());
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }
}
