//! Instance-level verification oracles: the homogeneous bracket witness
//! behind each degree reduction, bracket orbits, the corner-alignment
//! identity, the Jacobian chain rule, and a seeded generator of random tame
//! words for test suites.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::jung::{TameMove, TameWord};
use crate::newton::{cross, leading_form, st_en, Direction};
use crate::poly::{rat, BiPoly, Monomial, Rational, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("input is not a nonzero homogeneous polynomial for the given direction")]
    NonHomogeneousInput,
    #[error("the bracket of the two leading forms vanishes")]
    ZeroBracket,
}

/// The bracket orbit R_0, R_1 = [R_0, P], R_2 = [R_1, P], ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub terms: Vec<BiPoly>,
    pub reached_zero: bool,
    pub steps: usize,
}

/// Solves for a (rho, sigma)-homogeneous F of weighted degree rho + sigma
/// with [F, ell] = ell, where ell is (rho, sigma)-homogeneous and nonzero.
/// Returns None when the exact linear system is inconsistent. Free
/// coordinates (in canonical monomial order) are set to zero, so the result
/// is deterministic.
///
/// Both weights must be positive; otherwise the candidate support
/// {(i,j) : i,j >= 0, rho*i + sigma*j = rho + sigma} is infinite.
pub fn homogeneous_witness(d: Direction, ell: &BiPoly) -> Result<Option<BiPoly>, WitnessError> {
    assert!(
        d.rho >= 1 && d.sigma >= 1,
        "witness solving needs positive weights"
    );
    if ell.is_zero() || leading_form(d, ell).unwrap() != *ell {
        return Err(WitnessError::NonHomogeneousInput);
    }
    let target = d.rho + d.sigma;
    // candidate support, ascending lexicographic in (i, j)
    let mut candidates: Vec<Monomial> = Vec::new();
    for i in 0..=(target / d.rho) {
        let rem = target - d.rho * i;
        if rem >= 0 && rem % d.sigma == 0 {
            candidates.push(Monomial::new(i as u32, (rem / d.sigma) as u32));
        }
    }
    let columns: Vec<BiPoly> = candidates
        .iter()
        .map(|m| BiPoly::monomial(m.i, m.j, rat(1)).bracket(ell))
        .collect();
    // equations: one row per monomial appearing in any column or in ell
    let mut row_index: Vec<Monomial> = columns
        .iter()
        .flat_map(|c| c.support())
        .chain(ell.support())
        .collect();
    row_index.sort();
    row_index.dedup();
    let matrix: Vec<Vec<Rational>> = row_index
        .iter()
        .map(|m| columns.iter().map(|c| c.coeff(m.i, m.j)).collect())
        .collect();
    let rhs: Vec<Rational> = row_index.iter().map(|m| ell.coeff(m.i, m.j)).collect();
    Ok(solve_exact(matrix, rhs).map(|solution| {
        BiPoly::from_terms(
            candidates
                .iter()
                .zip(solution)
                .map(|(m, c)| (m.i, m.j, c)),
        )
    }))
}

/// Exact Gauss-Jordan elimination over Q. Returns the particular solution
/// with all free variables zero, or None when the system is inconsistent.
fn solve_exact(mut matrix: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot) = (next_row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(next_row, pivot);
        rhs.swap(next_row, pivot);
        let inv = matrix[next_row][col].clone();
        for entry in matrix[next_row].iter_mut() {
            *entry = &*entry / &inv;
        }
        rhs[next_row] = &rhs[next_row] / &inv;
        let pivot_row = matrix[next_row].clone();
        let pivot_rhs = rhs[next_row].clone();
        for r in 0..rows {
            if r != next_row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for (entry, p) in matrix[r].iter_mut().zip(&pivot_row) {
                    *entry = &*entry - &(&factor * p);
                }
                rhs[r] = &rhs[r] - &(&factor * &pivot_rhs);
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    // rows beyond the pivots must have zero right-hand side
    if rhs[next_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(
        pivot_of_col
            .into_iter()
            .map(|p| match p {
                Some(r) => rhs[r].clone(),
                None => Rational::zero(),
            })
            .collect(),
    )
}

/// Pattern-matches F against mu*x*(y + lambda*x^sigma) = mu*x*y +
/// mu*lambda*x^(sigma+1) with mu nonzero; lambda may be zero only for the
/// bare monomial F = mu*x*y.
pub fn witness_shape(f: &BiPoly, sigma: i64) -> Option<(Rational, Rational)> {
    let mu = f.coeff(1, 1);
    if mu.is_zero() {
        return None;
    }
    let mut expected = BiPoly::monomial(1, 1, mu.clone());
    let lambda = if sigma >= 0 {
        let l = f.coeff(sigma as u32 + 1, 0) / &mu;
        expected.add_term(Monomial::new(sigma as u32 + 1, 0), &mu * &l);
        l
    } else {
        Rational::zero()
    };
    if expected == *f {
        Some((mu, lambda))
    } else {
        None
    }
}

/// Iterates R_{k+1} = [R_k, P] until zero or `max_steps` brackets.
pub fn bracket_orbit(r0: &BiPoly, p: &BiPoly, max_steps: usize) -> OrbitReport {
    assert!(max_steps >= 1);
    let mut terms = vec![r0.clone()];
    let mut steps = 0;
    while steps < max_steps && !terms.last().unwrap().is_zero() {
        let next = terms.last().unwrap().bracket(p);
        terms.push(next);
        steps += 1;
    }
    let reached_zero = terms.last().unwrap().is_zero();
    OrbitReport {
        terms,
        reached_zero,
        steps,
    }
}

fn corner(m: Monomial) -> (i64, i64) {
    (m.i as i64, m.j as i64)
}

/// Checks both biconditionals of the corner-alignment identity on the
/// instance (d, P, Q): with R = [l(P), l(Q)] nonzero,
/// st(P) not aligned with st(Q) iff st(P) + st(Q) - (1,1) = st(R), and the
/// same for en.
pub fn corner_identity_holds(d: Direction, p: &BiPoly, q: &BiPoly) -> Result<bool, WitnessError> {
    let lp = leading_form(d, p).expect("nonzero input");
    let lq = leading_form(d, q).expect("nonzero input");
    let r = lp.bracket(&lq);
    if r.is_zero() {
        return Err(WitnessError::ZeroBracket);
    }
    debug_assert_eq!(leading_form(d, &r).unwrap(), r, "brackets of homogeneous forms are homogeneous");
    let (st_p, en_p) = st_en(d, p).unwrap();
    let (st_q, en_q) = st_en(d, q).unwrap();
    let (st_r, en_r) = st_en(d, &r).unwrap();
    let check = |a: Monomial, b: Monomial, c: Monomial| {
        let (a, b, c) = (corner(a), corner(b), corner(c));
        let not_aligned = cross(a, b) != 0;
        let shifted = (a.0 + b.0 - 1, a.1 + b.1 - 1);
        not_aligned == (shifted == c)
    };
    Ok(check(st_p, st_q, st_r) && check(en_p, en_q, en_r))
}

/// Checks the Jacobian chain rule [m(P), m(Q)] = m([P, Q]) * [m(x), m(y)]
/// exactly for the given move.
pub fn chain_rule_holds(m: &TameMove, p: &BiPoly, q: &BiPoly) -> bool {
    let (ix, iy) = m.images();
    let apply = |h: &BiPoly| h.substitute(&ix, &iy);
    let lhs = apply(p).bracket(&apply(q));
    let rhs = &apply(&p.bracket(q)) * &ix.bracket(&iy);
    lhs == rhs
}

/// Deterministic seeded generator of tame words. Consecutive moves always
/// differ in kind, so no two adjacent factors collapse; elementary
/// polynomials have degree in [1, max_deg], integer coefficients in
/// [-coeff_bound, coeff_bound] and a nonzero leading coefficient; linear
/// moves are invertible by construction.
pub fn random_tame_word(seed: u64, n_moves: usize, max_deg: u32, coeff_bound: i64) -> TameWord {
    assert!(max_deg >= 1 && coeff_bound >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moves = Vec::with_capacity(n_moves);
    let mut prev_kind = usize::MAX;
    for _ in 0..n_moves {
        let kind = loop {
            let k = rng.gen_range(0..3);
            if k != prev_kind {
                break k;
            }
        };
        prev_kind = kind;
        moves.push(match kind {
            0 => TameMove::elem_y(random_univariate(&mut rng, Var::X, max_deg, coeff_bound)),
            1 => TameMove::elem_x(random_univariate(&mut rng, Var::Y, max_deg, coeff_bound)),
            _ => random_linear(&mut rng, coeff_bound),
        });
    }
    TameWord::new(moves)
}

fn random_univariate(rng: &mut ChaCha8Rng, var: Var, max_deg: u32, bound: i64) -> BiPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut poly = BiPoly::zero();
    for e in 0..=deg {
        let c = if e == deg {
            let magnitude = rng.gen_range(1..=bound);
            if rng.gen_bool(0.5) {
                magnitude
            } else {
                -magnitude
            }
        } else {
            rng.gen_range(-bound..=bound)
        };
        let m = match var {
            Var::X => Monomial::new(e, 0),
            Var::Y => Monomial::new(0, e),
        };
        poly.add_term(m, rat(c));
    }
    poly
}

fn random_linear(rng: &mut ChaCha8Rng, bound: i64) -> TameMove {
    loop {
        let a = rat(rng.gen_range(-bound..=bound));
        let b = rat(rng.gen_range(-bound..=bound));
        let c = rat(rng.gen_range(-bound..=bound));
        let d = rat(rng.gen_range(-bound..=bound));
        if !(&a * &d - &b * &c).is_zero() {
            return TameMove::linear(a, b, c, d);
        }
    }
}
