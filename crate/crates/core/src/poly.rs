//! Sparse bivariate polynomials over Q with exact arithmetic.
//!
//! A [`BiPoly`] is a finite map from exponent pairs to nonzero big-rational
//! coefficients; the zero polynomial is the empty map, so structural equality
//! is mathematical equality. All operations are pure and exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

/// Arbitrary-precision rational scalar, always reduced with positive denominator.
pub type Rational = num::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// One of the two ring variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Exponent pair (i, j) for the monomial x^i * y^j.
///
/// The derived `Ord` is ascending lexicographic on (i, j), which is the
/// canonical term order used for iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn total_degree(&self) -> i64 {
        self.i as i64 + self.j as i64
    }
}

/// Sparse polynomial in Q[x,y].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Monomial::new(0, 0), c);
        p
    }

    /// The polynomial x.
    pub fn x() -> Self {
        BiPoly::monomial(1, 0, rat(1))
    }

    /// The polynomial y.
    pub fn y() -> Self {
        BiPoly::monomial(0, 1, rat(1))
    }

    pub fn monomial(i: u32, j: u32, coeff: Rational) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Monomial::new(i, j), coeff);
        p
    }

    /// Builds a polynomial from (i, j, coefficient) triples, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    /// Adds `coeff` to the term at `m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// The support: monomials with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    /// Coefficient at (i, j); zero when absent.
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.i == 0 && m.j == 0)
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.term_count() == 1 && self.terms.contains_key(&Monomial::new(0, 0))
    }

    /// True when no term involves y (elements of Q[x]).
    pub fn is_univariate_x(&self) -> bool {
        self.terms.keys().all(|m| m.j == 0)
    }

    /// True when no term involves x (elements of Q[y]).
    pub fn is_univariate_y(&self) -> bool {
        self.terms.keys().all(|m| m.i == 0)
    }

    /// Total degree, None for the zero polynomial (the -infinity sentinel).
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut result = BiPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial(&self, var: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in self.iter() {
            match var {
                Var::X => {
                    if m.i > 0 {
                        out.add_term(Monomial::new(m.i - 1, m.j), c * rat(m.i as i64));
                    }
                }
                Var::Y => {
                    if m.j > 0 {
                        out.add_term(Monomial::new(m.i, m.j - 1), c * rat(m.j as i64));
                    }
                }
            }
        }
        out
    }

    /// Evaluates the polynomial at x := `x_img`, y := `y_img`.
    ///
    /// Horner nesting in y then x keeps intermediate products small.
    pub fn substitute(&self, x_img: &BiPoly, y_img: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        // rows[j] = the univariate-in-x slice of coefficient terms at y^j
        let mut rows: BTreeMap<u32, Vec<(u32, Rational)>> = BTreeMap::new();
        for (m, c) in self.iter() {
            rows.entry(m.j).or_default().push((m.i, c.clone()));
        }
        let mut acc = BiPoly::zero();
        let mut prev_j: Option<u32> = None;
        for (&j, row) in rows.iter().rev() {
            if let Some(pj) = prev_j {
                acc = &acc * &y_img.pow(pj - j);
            }
            acc = &acc + &eval_univariate(row, x_img);
            prev_j = Some(j);
        }
        if let Some(last) = prev_j {
            if last > 0 {
                acc = &acc * &y_img.pow(last);
            }
        }
        acc
    }

    /// Jacobian bracket [self, other] = self_x * other_y - self_y * other_x.
    pub fn bracket(&self, other: &BiPoly) -> BiPoly {
        let a = &self.partial(Var::X) * &other.partial(Var::Y);
        let b = &self.partial(Var::Y) * &other.partial(Var::X);
        &a - &b
    }
}

/// Horner evaluation of a univariate slice (exponent, coefficient) at `img`.
/// The slice must be sorted ascending by exponent.
fn eval_univariate(row: &[(u32, Rational)], img: &BiPoly) -> BiPoly {
    let mut acc = BiPoly::zero();
    let mut prev_e: Option<u32> = None;
    for (e, c) in row.iter().rev() {
        if let Some(pe) = prev_e {
            acc = &acc * &img.pow(pe - e);
        }
        acc.add_term(Monomial::new(0, 0), c.clone());
        prev_e = Some(*e);
    }
    if let Some(last) = prev_e {
        if last > 0 {
            acc = &acc * &img.pow(last);
        }
    }
    acc
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.iter() {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.iter() {
            out.add_term(m, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in self.iter() {
            for (mb, cb) in rhs.iter() {
                out.add_term(Monomial::new(ma.i + mb.i, ma.j + mb.j), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Rendering order for text output: total degree descending, then
/// x-exponent descending. This is the order of the canonical text form
/// (e.g. "x^4 + 2*x^2*y + y^2 + x").
fn render_key(m: &Monomial) -> (i64, i64) {
    (-m.total_degree(), -(m.i as i64))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(Monomial, &Rational)> = self.iter().collect();
        terms.sort_by_key(|(m, _)| render_key(m));
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let is_const = m.i == 0 && m.j == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                match (m.i, m.j) {
                    (0, _) => {}
                    (1, _) => write!(f, "x")?,
                    (i, _) => write!(f, "x^{i}")?,
                }
                if m.i > 0 && m.j > 0 {
                    write!(f, "*")?;
                }
                match m.j {
                    0 => {}
                    1 => write!(f, "y")?,
                    j => write!(f, "y^{j}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
