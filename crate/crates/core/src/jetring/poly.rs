//! Differential polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::monomial::JetMonomial;
use super::{int, JetError, Rational};

/// A finite sum `sum c_m m` over jet monomials with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality in
/// the ring.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<JetMonomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, JetMonomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The jet variable `v^{(order)}`.
    pub fn var(order: usize) -> Self {
        Self::term(Rational::one(), JetMonomial::var(order))
    }

    /// `(v^{(order)})^exp`, failing for negative exponents on jets of order >= 2.
    pub fn var_pow(order: usize, exp: i32) -> Result<Self, JetError> {
        Ok(Self::term(Rational::one(), JetMonomial::var_pow(order, exp)?))
    }

    pub fn term(c: Rational, m: JetMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (JetMonomial, Rational)>>(iter: I) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&JetMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &JetMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&JetMonomial::one())
    }

    pub fn without_constant(&self) -> DiffPoly {
        let mut p = self.clone();
        p.terms.remove(&JetMonomial::one());
        p
    }

    /// If the polynomial is a single term, returns it.
    pub fn as_single_term(&self) -> Option<(&JetMonomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&JetMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: JetMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &JetMonomial, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// Exact division by a unit monomial `c * m`.
    pub fn div_monomial(&self, m: &JetMonomial, c: &Rational) -> Result<DiffPoly, JetError> {
        if c.is_zero() {
            return Err(JetError::DivisionByZero { order: None });
        }
        let inv = c.recip();
        let mut out = DiffPoly::zero();
        for (k, a) in &self.terms {
            out.add_term(k.div(m)?, a * &inv);
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut acc = DiffPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Highest jet order that occurs in any term.
    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_order()).max()
    }

    /// Split by total degree in the jet variables.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, DiffPoly> {
        let mut out: BTreeMap<i64, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Total x-derivative: `v^{(s)} -> v^{(s+1)}` extended by Leibniz.
    pub fn dx(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for (s, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let dm = m.bump(s, -1).bump(s + 1, 1);
                out.add_term(dm, c * int(e as i64));
            }
        }
        out
    }

    pub fn dx_n(&self, n: usize) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.dx();
        }
        p
    }

    /// Formal partial derivative with respect to `v^{(s)}`.
    pub fn partial(&self, s: usize) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e != 0 {
                out.add_term(m.bump(s, -1), c * int(e as i64));
            }
        }
        out
    }

    /// Coefficient of `(v^{(s)})^e` viewed as a polynomial in that variable.
    pub fn coefficient_of_power(&self, s: usize, e: i32) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(s) == e {
                out.add_term(m.without(s), c.clone());
            }
        }
        out
    }

    /// Distinct exponents of `v^{(s)}` occurring in the polynomial.
    pub fn exponents_of(&self, s: usize) -> Vec<i32> {
        let mut es: Vec<i32> = self.terms.keys().map(|m| m.exponent(s)).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Exact evaluation at a rational point. Jets missing from `point` are 0.
    pub fn eval(&self, point: &BTreeMap<usize, Rational>) -> Result<Rational, JetError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (s, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(&s).cloned().unwrap_or_else(Rational::zero);
                if x.is_zero() {
                    if e < 0 {
                        return Err(JetError::DivisionByZero { order: Some(s) });
                    }
                    val = Rational::zero();
                    break;
                }
                let xe = if e > 0 { num_traits::pow(x, e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
                val *= xe;
            }
            total += val;
        }
        Ok(total)
    }

    /// Replace every coefficient by `f(coefficient)`, dropping zeros.
    pub fn map_coeffs<F: Fn(&JetMonomial, &Rational) -> Rational>(&self, f: F) -> DiffPoly {
        DiffPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))))
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl From<Rational> for DiffPoly {
    fn from(c: Rational) -> Self {
        DiffPoly::constant(c)
    }
}

impl<'a> Add<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign for DiffPoly {
    fn sub_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Sub<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= rhs;
        self
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl<'a> Mul<&'a DiffPoly> for &'a DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = DiffPoly::zero();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::poly_text(self, super::Chart::V))
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
