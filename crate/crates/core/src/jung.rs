//! Tame moves and words, leading-form classification, the degree-reduction
//! step, and the decomposition of plane polynomial automorphisms into
//! elementary and linear factors.
//!
//! The decomposition loop works on P = f(x) alone: it flips or shears until
//! the top form is a pure x power, then applies the elementary move read off
//! the Newton polygon's successor edge, dropping the total degree. Inputs
//! that are not automorphisms are rejected with the structural reason that
//! rules them out; a returned word always recomposes to the input exactly.

use std::fmt;

use num::integer::binomial;
use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::newton::{leading_form, st_en, succ, Direction};
use crate::poly::{rat, BiPoly, Monomial, Rational, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JungError {
    #[error("linear move has zero determinant")]
    SingularLinear,
    #[error("constant polynomials have no leading-form class")]
    ConstantInput,
    #[error("edge profiles require a direction of the form (1,sigma)")]
    RhoNotOne,
    #[error("edge start corner is not on the x-axis")]
    StNotOnAxis,
    #[error("edge profile is constant")]
    ConstantProfile,
}

/// Why an input pair cannot be the coordinate image of an automorphism.
/// Each variant names the structural fact the input violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reject {
    /// The Jacobian bracket of the pair is not a nonzero constant.
    JacobianNotConstant,
    /// f(x) is a monomial c*x^a with a >= 2.
    MonomialImage,
    /// The top form of f(x) is not a power of a single linear factor.
    MixedInfinity,
    /// The successor direction has rho >= 2.
    RhoNotOne,
    /// The successor edge profile is not a perfect linear power.
    NotLinearPower,
    /// f(x) lies in Q[x] with degree >= 2.
    PInUnivariate,
    /// After normalizing f(x) = x, f(y) is not of the form c*y + q(x).
    SecondCoordinate,
}

impl Reject {
    pub fn name(&self) -> &'static str {
        match self {
            Reject::JacobianNotConstant => "JacobianNotConstant",
            Reject::MonomialImage => "MonomialImage",
            Reject::MixedInfinity => "MixedInfinity",
            Reject::RhoNotOne => "RhoNotOne",
            Reject::NotLinearPower => "NotLinearPower",
            Reject::PInUnivariate => "PInUnivariate",
            Reject::SecondCoordinate => "SecondCoordinate",
        }
    }
}

impl fmt::Display for Reject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl std::error::Error for Reject {}

/// A tame generator: an elementary move fixing one variable or an invertible
/// linear change of variables. Constants are allowed in the elementary
/// polynomials, so translations are covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TameMove {
    /// x -> x, y -> y + p(x); p must not involve y.
    ElemY(BiPoly),
    /// x -> x + q(y), y -> y; q must not involve x.
    ElemX(BiPoly),
    /// x -> a*x + b*y, y -> c*x + d*y with a*d - b*c != 0.
    Linear {
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    },
}

impl TameMove {
    pub fn elem_y(p: BiPoly) -> Self {
        assert!(p.is_univariate_x(), "elem_y polynomial must lie in Q[x]");
        TameMove::ElemY(p)
    }

    pub fn elem_x(q: BiPoly) -> Self {
        assert!(q.is_univariate_y(), "elem_x polynomial must lie in Q[y]");
        TameMove::ElemX(q)
    }

    pub fn linear(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        TameMove::Linear { a, b, c, d }
    }

    /// The variable swap x <-> y.
    pub fn swap() -> Self {
        TameMove::linear(rat(0), rat(1), rat(1), rat(0))
    }

    pub fn is_identity(&self) -> bool {
        match self {
            TameMove::ElemY(p) | TameMove::ElemX(p) => p.is_zero(),
            TameMove::Linear { a, b, c, d } => {
                a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
            }
        }
    }

    fn determinant(&self) -> Option<Rational> {
        match self {
            TameMove::Linear { a, b, c, d } => Some(a * d - b * c),
            _ => None,
        }
    }

    /// The images (m(x), m(y)) of the move as a ring morphism.
    pub fn images(&self) -> (BiPoly, BiPoly) {
        match self {
            TameMove::ElemY(p) => (BiPoly::x(), &BiPoly::y() + p),
            TameMove::ElemX(q) => (&BiPoly::x() + q, BiPoly::y()),
            TameMove::Linear { a, b, c, d } => (
                &BiPoly::x().scale(a) + &BiPoly::y().scale(b),
                &BiPoly::x().scale(c) + &BiPoly::y().scale(d),
            ),
        }
    }
}

/// An ordered list of moves denoting the composition g_1 ∘ g_2 ∘ ... ∘ g_k
/// of ring morphisms (rightmost applied first). The empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TameWord {
    pub moves: Vec<TameMove>,
}

impl TameWord {
    pub fn new(moves: Vec<TameMove>) -> Self {
        TameWord { moves }
    }

    pub fn identity() -> Self {
        TameWord::default()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Concatenation: self ∘ other as morphism words.
    pub fn concat(&self, other: &TameWord) -> TameWord {
        let mut moves = self.moves.clone();
        moves.extend(other.moves.iter().cloned());
        TameWord { moves }
    }
}

/// Candidate coordinate images (f(x), f(y)) of a ring endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoPair {
    pub p: BiPoly,
    pub q: BiPoly,
}

impl AutoPair {
    pub fn new(p: BiPoly, q: BiPoly) -> Self {
        AutoPair { p, q }
    }

    pub fn identity() -> Self {
        AutoPair::new(BiPoly::x(), BiPoly::y())
    }

    /// Composition (self ∘ other) of the two pairs as morphisms.
    pub fn compose(&self, other: &AutoPair) -> AutoPair {
        AutoPair::new(
            other.p.substitute(&self.p, &self.q),
            other.q.substitute(&self.p, &self.q),
        )
    }
}

/// Shape of the (1,1)-leading form of a nonconstant polynomial: a pure axis
/// power, a power of one linear factor, or anything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeadClass {
    AxisX(u32),
    AxisY(u32),
    LinearPower {
        mu: Rational,
        lambda: Rational,
        a: u32,
    },
    Mixed,
}

/// Univariate profile p(z) of a (1,sigma)-leading form x^a * p(z) with
/// z = y * x^(-sigma). coeffs[k] is the coefficient of z^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePolynomial {
    pub a: u32,
    pub sigma: i64,
    pub coeffs: Vec<Rational>,
}

impl EdgePolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Applies the move as a ring morphism to P.
pub fn apply_move(m: &TameMove, p: &BiPoly) -> Result<BiPoly, JungError> {
    if let Some(det) = m.determinant() {
        if det.is_zero() {
            return Err(JungError::SingularLinear);
        }
    }
    let (ix, iy) = m.images();
    Ok(p.substitute(&ix, &iy))
}

/// The coordinate images of the composition g_1 ∘ ... ∘ g_k, folded from the
/// rightmost move outward.
pub fn word_to_pair(w: &TameWord) -> Result<AutoPair, JungError> {
    let mut pair = AutoPair::identity();
    for m in w.moves.iter().rev() {
        pair = AutoPair::new(apply_move(m, &pair.p)?, apply_move(m, &pair.q)?);
    }
    Ok(pair)
}

/// Inverse morphism of a single move.
pub fn move_inverse(m: &TameMove) -> Result<TameMove, JungError> {
    match m {
        TameMove::ElemY(p) => Ok(TameMove::ElemY(-p)),
        TameMove::ElemX(q) => Ok(TameMove::ElemX(-q)),
        TameMove::Linear { a, b, c, d } => {
            let det = a * d - b * c;
            if det.is_zero() {
                return Err(JungError::SingularLinear);
            }
            Ok(TameMove::Linear {
                a: d / &det,
                b: -b / &det,
                c: -c / &det,
                d: a / &det,
            })
        }
    }
}

/// Reversed word of inverse moves; concatenating in either order with the
/// original yields the identity pair.
pub fn word_inverse(w: &TameWord) -> Result<TameWord, JungError> {
    let mut moves = Vec::with_capacity(w.len());
    for m in w.moves.iter().rev() {
        moves.push(move_inverse(m)?);
    }
    Ok(TameWord { moves })
}

/// Exact check that a word recomposes to the given pair.
pub fn verify(w: &TameWord, pair: &AutoPair) -> bool {
    match word_to_pair(w) {
        Ok(p) => p == *pair,
        Err(_) => false,
    }
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Classifies the (1,1)-leading form of a nonconstant polynomial.
pub fn classify_leading(p: &BiPoly) -> Result<LeadClass, JungError> {
    if p.is_constant() {
        return Err(JungError::ConstantInput);
    }
    let ell = leading_form(Direction::new(1, 1), p).expect("nonconstant input");
    let a = p.total_degree().unwrap() as u32;
    let supp: Vec<Monomial> = ell.support().collect();
    if supp.len() == 1 {
        let m = supp[0];
        return Ok(if m.j == 0 {
            LeadClass::AxisX(a)
        } else if m.i == 0 {
            LeadClass::AxisY(a)
        } else {
            LeadClass::Mixed
        });
    }
    // test for mu * (x - lambda*y)^a by matching the top two coefficients,
    // then verifying the whole binomial expansion
    let mu = ell.coeff(a, 0);
    if mu.is_zero() {
        return Ok(LeadClass::Mixed);
    }
    let lambda = -ell.coeff(a - 1, 1) / (rat(a as i64) * &mu);
    if lambda.is_zero() {
        return Ok(LeadClass::Mixed);
    }
    let expected = BiPoly::from_terms(
        (0..=a).map(|k| (a - k, k, &mu * binom(a, k) * (-lambda.clone()).pow(k as i32))),
    );
    if expected == ell {
        Ok(LeadClass::LinearPower { mu, lambda, a })
    } else {
        Ok(LeadClass::Mixed)
    }
}

/// Reads the (1,sigma)-leading form of P as x^a * p(z), z = y * x^(-sigma).
pub fn edge_profile(d: Direction, p: &BiPoly) -> Result<EdgePolynomial, JungError> {
    if d.rho != 1 {
        return Err(JungError::RhoNotOne);
    }
    assert!(d.sigma >= 1, "edge profiles require sigma >= 1");
    let ell = leading_form(d, p).expect("nonzero input");
    let (st, en) = st_en(d, p).expect("nonzero input");
    if st.j != 0 {
        return Err(JungError::StNotOnAxis);
    }
    let a = st.i;
    let coeffs: Vec<Rational> = (0..=en.j)
        .map(|k| ell.coeff(a - d.sigma as u32 * k, k))
        .collect();
    Ok(EdgePolynomial {
        a,
        sigma: d.sigma,
        coeffs,
    })
}

/// Decides whether the profile is mu_p * (z + lambda)^N and returns
/// (mu_p, lambda, N) when it is.
pub fn perfect_power_test(
    p: &EdgePolynomial,
) -> Result<Option<(Rational, Rational, u32)>, JungError> {
    let n = p.degree() as u32;
    if n == 0 {
        return Err(JungError::ConstantProfile);
    }
    let mu = p.coeffs[n as usize].clone();
    let lambda = &p.coeffs[n as usize - 1] / (rat(n as i64) * &mu);
    for k in 0..=n {
        let expect = &mu * binom(n, k) * lambda.clone().pow((n - k) as i32);
        if p.coeffs[k as usize] != expect {
            return Ok(None);
        }
    }
    Ok(Some((mu, lambda, n)))
}

/// One degree-reduction event, recorded for inspection.
#[derive(Debug, Clone)]
pub struct ReductionDetail {
    pub direction: Direction,
    pub lambda: Rational,
    pub mu_profile: Rational,
    pub power: u32,
    pub leading_form: BiPoly,
    pub degree_before: i64,
    pub degree_after: i64,
}

/// The elementary move that strictly reduces the total degree of P, given
/// that the top form of P is a pure x power of degree >= 2 and P is not a
/// monomial.
pub fn reduction_step(p: &BiPoly) -> Result<(TameMove, BiPoly), Reject> {
    reduction_step_detailed(p).map(|(m, p2, _)| (m, p2))
}

/// Like [`reduction_step`], also returning the successor direction, the
/// shear coefficient and the leading form it acted on.
pub fn reduction_step_detailed(
    p: &BiPoly,
) -> Result<(TameMove, BiPoly, ReductionDetail), Reject> {
    let d = match succ(p).expect("reduction preconditions: nonzero, non-monomial, (1,1) free") {
        Some(d) => d,
        None => return Err(Reject::PInUnivariate),
    };
    if d.rho <= 0 {
        return Err(Reject::PInUnivariate);
    }
    if d.rho >= 2 {
        return Err(Reject::RhoNotOne);
    }
    let profile = edge_profile(d, p).expect("successor edge starts on the x-axis");
    let (mu_profile, lambda, power) = match perfect_power_test(&profile)
        .expect("successor edges have at least two points")
    {
        Some(t) => t,
        None => return Err(Reject::NotLinearPower),
    };
    let shear = TameMove::ElemY(BiPoly::monomial(d.sigma as u32, 0, -lambda.clone()));
    let next = apply_move(&shear, p).expect("elementary moves are never singular");
    let degree_before = p.total_degree().unwrap();
    let degree_after = next.total_degree().unwrap();
    assert!(
        degree_after < degree_before,
        "reduction must strictly drop the total degree"
    );
    let detail = ReductionDetail {
        direction: d,
        lambda,
        mu_profile,
        power,
        leading_form: leading_form(d, p).unwrap(),
        degree_before,
        degree_after,
    };
    Ok((shear, next, detail))
}

/// Instrumentation of a decomposition run.
#[derive(Debug, Clone, Default)]
pub struct DecomposeTrace {
    pub initial_degree: i64,
    pub iterations: usize,
    pub flips: usize,
    pub linear_normalizations: usize,
    pub reductions: Vec<ReductionDetail>,
}

/// Decomposes the pair into a word of tame moves, or rejects it with the
/// structural reason. A returned word satisfies `word_to_pair(w) == pair`
/// exactly.
pub fn decompose(pair: &AutoPair) -> Result<TameWord, Reject> {
    decompose_traced(pair).map(|(w, _)| w)
}

/// [`decompose`] with instrumentation: loop counts and per-reduction data.
pub fn decompose_traced(pair: &AutoPair) -> Result<(TameWord, DecomposeTrace), Reject> {
    if !pair.p.bracket(&pair.q).is_nonzero_constant() {
        return Err(Reject::JacobianNotConstant);
    }
    // the bracket forces P nonconstant from here on
    let mut current = pair.p.clone();
    let mut applied: Vec<TameMove> = Vec::new();
    let mut word: Vec<TameMove> = Vec::new();
    let mut trace = DecomposeTrace {
        initial_degree: current.total_degree().unwrap(),
        ..DecomposeTrace::default()
    };

    fn push(
        applied: &mut Vec<TameMove>,
        word: &mut Vec<TameMove>,
        current: &mut BiPoly,
        m: TameMove,
    ) {
        *current = apply_move(&m, current).expect("recorded moves are invertible");
        word.push(move_inverse(&m).expect("recorded moves are invertible"));
        applied.push(m);
    }

    let mut last_was_flip = false;
    while current.total_degree().unwrap() >= 2 {
        trace.iterations += 1;
        match classify_leading(&current).expect("degree >= 2") {
            LeadClass::AxisY(_) => {
                debug_assert!(!last_was_flip, "a flip always leaves a pure x-power top");
                last_was_flip = true;
                trace.flips += 1;
                push(&mut applied, &mut word, &mut current, TameMove::swap());
            }
            LeadClass::LinearPower { lambda, .. } => {
                last_was_flip = false;
                trace.linear_normalizations += 1;
                let shear = TameMove::linear(rat(1), lambda, rat(0), rat(1));
                push(&mut applied, &mut word, &mut current, shear);
            }
            LeadClass::AxisX(_) => {
                last_was_flip = false;
                if current.term_count() == 1 {
                    return Err(Reject::MonomialImage);
                }
                let (m, next, detail) = reduction_step_detailed(&current)?;
                assert!(detail.degree_after < detail.degree_before);
                trace.reductions.push(detail);
                word.push(move_inverse(&m).expect("elementary"));
                applied.push(m);
                current = next;
            }
            LeadClass::Mixed => return Err(Reject::MixedInfinity),
        }
    }

    // endgame: current = alpha*x + beta*y + gamma with (alpha, beta) != 0
    let alpha = current.coeff(1, 0);
    let beta = current.coeff(0, 1);
    let normalize = if !alpha.is_zero() {
        TameMove::linear(alpha, beta, rat(0), rat(1))
    } else {
        TameMove::linear(alpha, beta, rat(1), rat(0))
    };
    if !normalize.is_identity() {
        let inv = move_inverse(&normalize).expect("completion matrices are invertible");
        current = apply_move(&inv, &current).expect("invertible");
        word.push(normalize);
        applied.push(inv);
    }
    // current = x + gamma
    let gamma = current.coeff(0, 0);
    if !gamma.is_zero() {
        let translate = TameMove::ElemX(BiPoly::constant(-gamma.clone()));
        current = apply_move(&translate, &current).expect("elementary");
        word.push(TameMove::ElemX(BiPoly::constant(gamma)));
        applied.push(translate);
    }
    debug_assert_eq!(current, BiPoly::x());

    // replay the applied moves on the second coordinate
    let mut q = pair.q.clone();
    for m in &applied {
        q = apply_move(m, &q).expect("applied moves are invertible");
    }
    // q must be lambda*y + rest(x) with lambda a nonzero constant
    let dq = q.partial(Var::Y);
    let lambda = match dq.constant_value() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Reject::SecondCoordinate),
    };
    let rest = &q - &BiPoly::monomial(0, 1, lambda.clone());
    debug_assert!(rest.is_univariate_x());
    if !lambda.is_one() {
        word.push(TameMove::linear(rat(1), rat(0), rat(0), lambda));
    }
    if !rest.is_zero() {
        word.push(TameMove::ElemY(rest));
    }

    let word = TameWord::new(word);
    debug_assert!(verify(&word, pair));
    Ok((word, trace))
}

/// The inverse pair, computed by inverting the decomposition word.
pub fn invert(pair: &AutoPair) -> Result<AutoPair, Reject> {
    let w = decompose(pair)?;
    let winv = word_inverse(&w).expect("decomposition words are invertible");
    Ok(word_to_pair(&winv).expect("decomposition words are invertible"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;
    use proptest::prelude::*;

    fn p(s: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(s.iter().map(|&(i, j, c)| (i, j, rat(c))))
    }

    /// x + (y + x^2)^2 expanded.
    fn worked_p() -> BiPoly {
        p(&[(1, 0, 1), (0, 2, 1), (2, 1, 2), (4, 0, 1)])
    }

    fn worked_pair() -> AutoPair {
        AutoPair::new(worked_p(), p(&[(0, 1, 1), (2, 0, 1)]))
    }

    fn x2() -> BiPoly {
        p(&[(2, 0, 1)])
    }

    #[test]
    fn apply_move_examples() {
        let m = TameMove::elem_y(x2());
        assert_eq!(apply_move(&m, &BiPoly::x()), Ok(BiPoly::x()));
        let back = TameMove::elem_y(-&x2());
        assert_eq!(apply_move(&back, &worked_p()), Ok(p(&[(1, 0, 1), (0, 2, 1)])));
        let swapped = apply_move(&TameMove::swap(), &p(&[(0, 1, 1), (2, 0, 1)]));
        assert_eq!(swapped, Ok(p(&[(1, 0, 1), (0, 2, 1)])));
    }

    #[test]
    fn apply_move_rejects_singular_linear() {
        let m = TameMove::linear(rat(1), rat(2), rat(2), rat(4));
        assert_eq!(apply_move(&m, &BiPoly::x()), Err(JungError::SingularLinear));
    }

    #[test]
    fn word_to_pair_examples() {
        assert_eq!(word_to_pair(&TameWord::identity()), Ok(AutoPair::identity()));
        let w = TameWord::new(vec![
            TameMove::elem_y(x2()),
            TameMove::elem_x(p(&[(0, 2, 1)])),
        ]);
        assert_eq!(word_to_pair(&w), Ok(worked_pair()));
        let via_swaps = TameWord::new(vec![
            TameMove::elem_y(x2()),
            TameMove::swap(),
            TameMove::elem_y(x2()),
            TameMove::swap(),
        ]);
        assert_eq!(word_to_pair(&via_swaps), Ok(worked_pair()));
    }

    #[test]
    fn move_inverse_examples() {
        assert_eq!(move_inverse(&TameMove::elem_y(x2())), Ok(TameMove::elem_y(-&x2())));
        assert_eq!(move_inverse(&TameMove::swap()), Ok(TameMove::swap()));
        assert_eq!(
            move_inverse(&TameMove::linear(rat(2), rat(0), rat(0), rat(1))),
            Ok(TameMove::linear(ratio(1, 2), rat(0), rat(0), rat(1)))
        );
        assert_eq!(
            move_inverse(&TameMove::linear(rat(1), rat(1), rat(1), rat(1))),
            Err(JungError::SingularLinear)
        );
    }

    #[test]
    fn word_inverse_examples() {
        assert_eq!(word_inverse(&TameWord::identity()), Ok(TameWord::identity()));
        let w = TameWord::new(vec![
            TameMove::elem_y(x2()),
            TameMove::elem_x(p(&[(0, 2, 1)])),
        ]);
        let winv = word_inverse(&w).unwrap();
        assert_eq!(
            winv.moves,
            vec![TameMove::elem_x(p(&[(0, 2, -1)])), TameMove::elem_y(-&x2())]
        );
        assert_eq!(word_to_pair(&w.concat(&winv)), Ok(AutoPair::identity()));
        let sw = TameWord::new(vec![TameMove::swap()]);
        assert_eq!(word_inverse(&sw), Ok(sw.clone()));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_leading(&worked_p()), Ok(LeadClass::AxisX(4)));
        assert_eq!(classify_leading(&p(&[(1, 0, 1), (0, 2, 1)])), Ok(LeadClass::AxisY(2)));
        // (x - 2y)^3 + x
        let lp = p(&[(3, 0, 1), (2, 1, -6), (1, 2, 12), (0, 3, -8), (1, 0, 1)]);
        assert_eq!(
            classify_leading(&lp),
            Ok(LeadClass::LinearPower {
                mu: rat(1),
                lambda: rat(2),
                a: 3
            })
        );
        assert_eq!(classify_leading(&p(&[(2, 0, 1), (0, 2, 1)])), Ok(LeadClass::Mixed));
        assert_eq!(classify_leading(&BiPoly::one()), Err(JungError::ConstantInput));
    }

    #[test]
    fn edge_profile_examples() {
        let prof = edge_profile(Direction::new(1, 2), &worked_p()).unwrap();
        assert_eq!(prof.a, 4);
        assert_eq!(prof.coeffs, vec![rat(1), rat(2), rat(1)]);
        let prof = edge_profile(Direction::new(1, 2), &p(&[(0, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(prof.a, 2);
        assert_eq!(prof.coeffs, vec![rat(1), rat(1)]);
        let prof = edge_profile(Direction::new(1, 1), &p(&[(3, 0, 1)])).unwrap();
        assert_eq!(prof.a, 3);
        assert_eq!(prof.coeffs, vec![rat(1)]);
        assert_eq!(
            edge_profile(Direction::new(2, 1), &worked_p()),
            Err(JungError::RhoNotOne)
        );
        // leading form y^2 + ... starts off the axis
        assert_eq!(
            edge_profile(Direction::new(1, 1), &p(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)])),
            Err(JungError::StNotOnAxis)
        );
    }

    #[test]
    fn perfect_power_examples() {
        let prof = EdgePolynomial {
            a: 4,
            sigma: 2,
            coeffs: vec![rat(1), rat(2), rat(1)],
        };
        assert_eq!(perfect_power_test(&prof), Ok(Some((rat(1), rat(1), 2))));
        let prof = EdgePolynomial {
            a: 9,
            sigma: 3,
            coeffs: vec![rat(-8), rat(12), rat(-6), rat(1)],
        };
        assert_eq!(perfect_power_test(&prof), Ok(Some((rat(1), rat(-2), 3))));
        let prof = EdgePolynomial {
            a: 4,
            sigma: 2,
            coeffs: vec![rat(1), rat(0), rat(1)],
        };
        assert_eq!(perfect_power_test(&prof), Ok(None));
        let constant = EdgePolynomial {
            a: 3,
            sigma: 1,
            coeffs: vec![rat(1)],
        };
        assert_eq!(perfect_power_test(&constant), Err(JungError::ConstantProfile));
    }

    #[test]
    fn reduction_step_examples() {
        let (m, next) = reduction_step(&worked_p()).unwrap();
        assert_eq!(m, TameMove::ElemY(p(&[(2, 0, -1)])));
        assert_eq!(next, p(&[(1, 0, 1), (0, 2, 1)]));
        let (m, next) = reduction_step(&p(&[(0, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(m, TameMove::ElemY(p(&[(2, 0, -1)])));
        assert_eq!(next, BiPoly::y());
        assert_eq!(
            reduction_step(&p(&[(5, 0, 1), (1, 0, 1)])),
            Err(Reject::PInUnivariate)
        );
    }

    #[test]
    fn reduction_step_rejects_structural_failures() {
        // succ = (2,3): rho >= 2
        assert_eq!(reduction_step(&p(&[(3, 0, 1), (0, 2, 1)])), Err(Reject::RhoNotOne));
        // profile 1 + z^2 on the (1,2) edge
        assert_eq!(
            reduction_step(&p(&[(4, 0, 1), (0, 2, 1), (1, 0, 1)])),
            Err(Reject::NotLinearPower)
        );
        assert_eq!(reduction_step(&p(&[(2, 0, 1), (0, 0, 5)])), Err(Reject::PInUnivariate));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&AutoPair::identity()), Ok(TameWord::identity()));

        let pair = worked_pair();
        let w = decompose(&pair).unwrap();
        assert!(verify(&w, &pair));
        assert_eq!(
            w.moves,
            vec![
                TameMove::elem_y(x2()),
                TameMove::swap(),
                TameMove::elem_y(x2()),
                TameMove::swap(),
            ]
        );

        let bad = AutoPair::new(x2(), BiPoly::y());
        assert_eq!(decompose(&bad), Err(Reject::JacobianNotConstant));
        let bad = AutoPair::new(p(&[(1, 0, 1), (0, 2, 1)]), p(&[(0, 1, 1), (2, 0, 1)]));
        assert_eq!(decompose(&bad), Err(Reject::JacobianNotConstant));
    }

    #[test]
    fn decompose_traced_records_the_worked_reduction() {
        let (w, trace) = decompose_traced(&worked_pair()).unwrap();
        assert!(verify(&w, &worked_pair()));
        assert_eq!(trace.initial_degree, 4);
        assert_eq!(trace.reductions.len(), 2);
        let first = &trace.reductions[0];
        assert_eq!(first.direction, Direction::new(1, 2));
        assert_eq!(first.lambda, rat(1));
        assert_eq!(first.degree_before, 4);
        assert_eq!(first.degree_after, 2);
        assert_eq!(trace.flips, 1);
        assert!(trace.iterations <= 4 + trace.flips + trace.linear_normalizations);
    }

    #[test]
    fn mixed_monomials_classify_as_mixed() {
        assert_eq!(classify_leading(&p(&[(1, 1, 1)])), Ok(LeadClass::Mixed));
        assert_eq!(classify_leading(&p(&[(2, 3, 5), (0, 0, 1)])), Ok(LeadClass::Mixed));
    }

    #[test]
    fn decompose_handles_affine_pairs() {
        // pure linear + translation: endgame only
        let pair = AutoPair::new(
            p(&[(1, 0, 2), (0, 1, 3), (0, 0, 5)]),
            p(&[(1, 0, 1), (0, 1, 2), (0, 0, -1)]),
        );
        let w = decompose(&pair).unwrap();
        assert!(verify(&w, &pair));
        let swapped = AutoPair::new(BiPoly::y(), BiPoly::x());
        let w = decompose(&swapped).unwrap();
        assert!(verify(&w, &swapped));
        assert_eq!(w.moves, vec![TameMove::swap()]);
    }

    #[test]
    fn decompose_normalizes_linear_power_tops() {
        // start from the worked pair and shear it so the top form becomes
        // mu*(x - lambda*y)^a
        let shear = TameMove::linear(rat(1), rat(-1), rat(0), rat(1));
        let base = worked_pair();
        let pair = AutoPair::new(
            apply_move(&shear, &base.p).unwrap(),
            apply_move(&shear, &base.q).unwrap(),
        );
        match classify_leading(&pair.p).unwrap() {
            LeadClass::LinearPower { a, .. } => assert_eq!(a, 4),
            other => panic!("expected a linear-power top form, got {other:?}"),
        }
        let (w, trace) = decompose_traced(&pair).unwrap();
        assert!(verify(&w, &pair));
        assert!(trace.linear_normalizations >= 1);
    }

    #[test]
    fn invert_examples() {
        let pair = AutoPair::new(BiPoly::x(), p(&[(0, 1, 1), (2, 0, 1)]));
        assert_eq!(
            invert(&pair),
            Ok(AutoPair::new(BiPoly::x(), p(&[(0, 1, 1), (2, 0, -1)])))
        );
        let pair = worked_pair();
        let inv = invert(&pair).unwrap();
        assert_eq!(pair.compose(&inv), AutoPair::identity());
        assert_eq!(inv.compose(&pair), AutoPair::identity());
        let sw = AutoPair::new(BiPoly::y(), BiPoly::x());
        assert_eq!(invert(&sw), Ok(sw.clone()));
    }

    #[test]
    fn verify_examples() {
        assert!(verify(&TameWord::identity(), &AutoPair::identity()));
        let w = TameWord::new(vec![
            TameMove::elem_y(x2()),
            TameMove::elem_x(p(&[(0, 2, 1)])),
        ]);
        assert!(verify(&w, &worked_pair()));
        let w = TameWord::new(vec![TameMove::elem_y(x2())]);
        assert!(!verify(&w, &AutoPair::identity()));
    }

    #[test]
    fn linear_power_normalization_yields_axis_x() {
        // invariant: shearing a LinearPower top by x -> x + lambda*y gives AxisX(a)
        let lp = p(&[(3, 0, 1), (2, 1, -6), (1, 2, 12), (0, 3, -8), (1, 0, 1)]);
        let LeadClass::LinearPower { lambda, a, .. } = classify_leading(&lp).unwrap() else {
            panic!("expected linear power");
        };
        let m = TameMove::linear(rat(1), lambda, rat(0), rat(1));
        let sheared = apply_move(&m, &lp).unwrap();
        assert_eq!(classify_leading(&sheared), Ok(LeadClass::AxisX(a)));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
    }

    prop_compose! {
        fn arb_univariate(var: Var)(deg in 1u32..4, lead in 1i64..=4, sign in proptest::bool::ANY, rest in proptest::collection::vec(-4i64..=4, 0..4))
                          -> BiPoly {
            let mut poly = BiPoly::zero();
            let lead = if sign { lead } else { -lead };
            let put = |poly: &mut BiPoly, e: u32, c: i64| match var {
                Var::X => poly.add_term(Monomial::new(e, 0), rat(c)),
                Var::Y => poly.add_term(Monomial::new(0, e), rat(c)),
            };
            put(&mut poly, deg, lead);
            for (e, c) in rest.into_iter().enumerate() {
                put(&mut poly, e as u32 % deg, c);
            }
            poly
        }
    }

    fn arb_move() -> impl Strategy<Value = TameMove> {
        prop_oneof![
            arb_univariate(Var::X).prop_map(TameMove::elem_y),
            arb_univariate(Var::Y).prop_map(TameMove::elem_x),
            (arb_rat(), arb_rat(), arb_rat(), arb_rat())
                .prop_filter("invertible", |(a, b, c, d)| !(a * d - b * c).is_zero())
                .prop_map(|(a, b, c, d)| TameMove::linear(a, b, c, d)),
        ]
    }

    fn arb_word() -> impl Strategy<Value = TameWord> {
        proptest::collection::vec(arb_move(), 0..4).prop_map(TameWord::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn decompose_is_sound_and_complete_on_tame_words(w in arb_word()) {
            let pair = word_to_pair(&w).unwrap();
            let decomposed = decompose(&pair).unwrap();
            prop_assert!(verify(&decomposed, &pair));
        }

        #[test]
        fn words_compose_with_their_inverses(w in arb_word()) {
            let winv = word_inverse(&w).unwrap();
            prop_assert!(verify(&winv.concat(&w), &AutoPair::identity()));
            prop_assert!(verify(&w.concat(&winv), &AutoPair::identity()));
        }

        #[test]
        fn tame_pairs_have_constant_jacobian(w in arb_word()) {
            let pair = word_to_pair(&w).unwrap();
            prop_assert!(pair.p.bracket(&pair.q).is_nonzero_constant());
        }

        #[test]
        fn perfect_power_roundtrip(mu_n in -5i64..=5, mu_d in 1i64..=3, l_n in -5i64..=5, l_d in 1i64..=3, n in 1u32..=6) {
            prop_assume!(mu_n != 0 && l_n != 0);
            let mu = ratio(mu_n, mu_d);
            let lambda = ratio(l_n, l_d);
            let coeffs: Vec<Rational> = (0..=n)
                .map(|k| &mu * binom(n, k) * lambda.clone().pow((n - k) as i32))
                .collect();
            let prof = EdgePolynomial { a: 2 * n, sigma: 2, coeffs };
            prop_assert_eq!(perfect_power_test(&prof), Ok(Some((mu, lambda, n))));
        }
    }
}
