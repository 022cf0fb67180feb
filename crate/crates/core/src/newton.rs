//! Newton-polygon machinery: weighted degrees, leading forms, the lattice
//! convex hull of the support, edge directions and the counterclockwise
//! successor of the diagonal weight (1,1).
//!
//! A direction is a primitive integer pair (rho, sigma); the weighted degree
//! of a term x^i y^j is rho*i + sigma*j. Directions are compared by the cross
//! product, which orders them counterclockwise inside any arc shorter than a
//! half circle. This crate only ever compares directions inside the closed
//! arc from (1,1) counterclockwise to (-1,-1) exclusive.

use std::fmt;

use num::integer::gcd;
use thiserror::Error;

use crate::poly::{BiPoly, Monomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NewtonError {
    #[error("the zero polynomial has no weighted degree or polygon")]
    ZeroPolynomial,
    #[error("a monomial has no edge directions")]
    MonomialInput,
    #[error("(1,1) lies in the direction set of the input")]
    DirContains11,
}

/// Primitive weight vector (rho, sigma) with gcd(rho, sigma) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    pub rho: i64,
    pub sigma: i64,
}

impl Direction {
    /// Panics unless (rho, sigma) is primitive.
    pub fn new(rho: i64, sigma: i64) -> Self {
        assert!(
            gcd(rho, sigma) == 1,
            "direction ({rho},{sigma}) is not primitive"
        );
        Direction { rho, sigma }
    }

    /// Divides out the gcd, keeping orientation. Panics on (0,0).
    pub fn primitive(rho: i64, sigma: i64) -> Self {
        let g = gcd(rho, sigma);
        assert!(g != 0, "(0,0) has no direction");
        Direction {
            rho: rho / g,
            sigma: sigma / g,
        }
    }

    fn pair(&self) -> (i64, i64) {
        (self.rho, self.sigma)
    }

    /// Weighted degree of a single exponent pair.
    pub fn weight(&self, m: Monomial) -> i64 {
        self.rho * m.i as i64 + self.sigma * m.j as i64
    }

    /// The counterclockwise tangent: the outward normal rotated by +90 degrees.
    pub fn tangent(&self) -> (i64, i64) {
        (-self.sigma, self.rho)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rho, self.sigma)
    }
}

/// 2x2 determinant of two integer vectors.
pub fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn is_aligned(a: (i64, i64), b: (i64, i64)) -> bool {
    cross(a, b) == 0
}

/// Counterclockwise order on directions within a common arc shorter than a
/// half circle (caller-guaranteed).
pub fn dir_less(a: Direction, b: Direction) -> bool {
    cross(a.pair(), b.pair()) > 0
}

/// Convex hull of a support, counterclockwise, starting at the bottom-most
/// (then left-most) vertex. A point is stored as one vertex, a segment as its
/// two endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    pub vertices: Vec<Monomial>,
}

impl LatticePolygon {
    /// Directed boundary edges; empty for a single point, two opposite
    /// edges for a segment.
    pub fn edges(&self) -> Vec<(Monomial, Monomial)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|k| (self.vertices[k], self.vertices[(k + 1) % n]))
            .collect()
    }
}

/// Weighted degree of P in direction d. Errors on the zero polynomial.
pub fn vdeg(d: Direction, p: &BiPoly) -> Result<i64, NewtonError> {
    p.support()
        .map(|m| d.weight(m))
        .max()
        .ok_or(NewtonError::ZeroPolynomial)
}

/// Sum of the terms of P attaining the weighted degree in direction d.
/// The result is (rho, sigma)-homogeneous.
pub fn leading_form(d: Direction, p: &BiPoly) -> Result<BiPoly, NewtonError> {
    let v = vdeg(d, p)?;
    Ok(BiPoly::from_terms(
        p.iter()
            .filter(|(m, _)| d.weight(*m) == v)
            .map(|(m, c)| (m.i, m.j, c.clone())),
    ))
}

fn point(m: Monomial) -> (i64, i64) {
    (m.i as i64, m.j as i64)
}

fn sub(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 - b.0, a.1 - b.1)
}

/// Newton polygon of P: the convex hull of the support.
pub fn hull(p: &BiPoly) -> Result<LatticePolygon, NewtonError> {
    let mut pts: Vec<Monomial> = p.support().collect();
    if pts.is_empty() {
        return Err(NewtonError::ZeroPolynomial);
    }
    // monotone chain; strict turns only, so collinear interior points drop out
    pts.sort(); // ascending (i, j)
    pts.dedup();
    if pts.len() == 1 {
        return Ok(LatticePolygon { vertices: pts });
    }
    let turn = |a: Monomial, b: Monomial, c: Monomial| {
        cross(sub(point(b), point(a)), sub(point(c), point(a)))
    };
    let mut lower: Vec<Monomial> = Vec::new();
    for &q in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Monomial> = Vec::new();
    for &q in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);
    // collinear supports leave both endpoints once each
    if vertices.is_empty() {
        vertices = vec![pts[0], *pts.last().unwrap()];
    }
    // rotate so traversal starts at the bottom-most, then left-most vertex
    let start = vertices
        .iter()
        .enumerate()
        .min_by_key(|(_, m)| (m.j, m.i))
        .map(|(k, _)| k)
        .unwrap();
    vertices.rotate_left(start);
    Ok(LatticePolygon { vertices })
}

/// Outward edge normals of the Newton polygon, primitive, in counterclockwise
/// boundary-traversal order from the hull's start vertex. A direction appears
/// here exactly when its leading form has more than one term.
pub fn directions(p: &BiPoly) -> Result<Vec<Direction>, NewtonError> {
    let h = hull(p)?;
    Ok(h.edges()
        .iter()
        .map(|&(a, b)| {
            let (dx, dy) = sub(point(b), point(a));
            Direction::primitive(dy, -dx)
        })
        .collect())
}

/// First and last support point of the leading form met when running
/// counterclockwise along the polygon boundary. They coincide when the
/// leading form is a monomial.
pub fn st_en(d: Direction, p: &BiPoly) -> Result<(Monomial, Monomial), NewtonError> {
    let ell = leading_form(d, p)?;
    let t = d.tangent();
    let dot = |m: Monomial| t.0 * m.i as i64 + t.1 * m.j as i64;
    let st = ell.support().min_by_key(|&m| dot(m)).unwrap();
    let en = ell.support().max_by_key(|&m| dot(m)).unwrap();
    Ok((st, en))
}

/// The successor of (1,1): the first direction of Dir(P) in the open arc
/// counterclockwise from (1,1) to (-1,-1), or None when the arc is empty.
pub fn succ(p: &BiPoly) -> Result<Option<Direction>, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    if p.term_count() == 1 {
        return Err(NewtonError::MonomialInput);
    }
    let diag = Direction::new(1, 1);
    if leading_form(diag, p)?.term_count() > 1 {
        return Err(NewtonError::DirContains11);
    }
    let candidates = directions(p)?
        .into_iter()
        .filter(|d| cross(diag.pair(), d.pair()) > 0);
    let mut best: Option<Direction> = None;
    for d in candidates {
        match best {
            None => best = Some(d),
            Some(b) => {
                if dir_less(d, b) {
                    best = Some(d);
                }
            }
        }
    }
    Ok(best)
}
