//! Named test polytopes.
//!
//! Shapes with irrational Euclidean coordinates are given exactly in a
//! frame with a rational Gram matrix: `diag(1, 3)` turns the lattice point
//! `(1, 1)` into a point at distance 2 from the origin, at 60 degrees to the
//! first axis.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{Metric, Polytope};
use crate::rational::{int, rat, Rational, RationalVector};

fn pts(coords: &[&[i64]]) -> Vec<RationalVector> {
    coords.iter().map(|c| RationalVector::from_ints(c)).collect()
}

fn hex_metric() -> Metric {
    Metric::diagonal(&[int(1), int(3)]).expect("positive diagonal")
}

/// The open interval `(a, b)`.
pub fn interval(a: Rational, b: Rational) -> Polytope {
    Polytope::from_vertices(1, vec![RationalVector::new(vec![a]), RationalVector::new(vec![b])])
        .expect("a != b")
}

pub fn unit_square() -> Polytope {
    rectangle(int(1), int(1))
}

/// `(0, a) x (0, b)`
pub fn rectangle(a: Rational, b: Rational) -> Polytope {
    let z = int(0);
    Polytope::from_vertices(
        2,
        vec![
            RationalVector::new(vec![z.clone(), z.clone()]),
            RationalVector::new(vec![a.clone(), z.clone()]),
            RationalVector::new(vec![z, b.clone()]),
            RationalVector::new(vec![a, b]),
        ],
    )
    .expect("positive sides")
}

/// Legs `(0,0)-(1,0)` and `(1,0)-(1,1)`.
pub fn isosceles_right_triangle() -> Polytope {
    Polytope::from_vertices(2, pts(&[&[0, 0], &[1, 0], &[1, 1]])).expect("triangle")
}

/// Side 2, in the `diag(1, 3)` frame.
pub fn equilateral_triangle() -> Polytope {
    Polytope::from_vertices_in(hex_metric(), pts(&[&[0, 0], &[2, 0], &[1, 1]])).expect("triangle")
}

/// Sides 1, sqrt 3 and 2 (angles 30, 60, 90), in the `diag(1, 3)` frame.
pub fn hemiequilateral_triangle() -> Polytope {
    Polytope::from_vertices_in(hex_metric(), pts(&[&[0, 0], &[1, 0], &[1, 1]])).expect("triangle")
}

/// Side 2, centred at the origin, in the `diag(1, 3)` frame.
pub fn regular_hexagon() -> Polytope {
    Polytope::from_vertices_in(
        hex_metric(),
        pts(&[&[2, 0], &[1, 1], &[-1, 1], &[-2, 0], &[-1, -1], &[1, -1]]),
    )
    .expect("hexagon")
}

/// Euclidean triangle with angles 50, 60 and 70 degrees to about six
/// digits (the apex is rounded to a rational point).
pub fn triangle_50_60_70() -> Polytope {
    Polytope::from_vertices(
        2,
        vec![
            RationalVector::from_ints(&[0, 0]),
            RationalVector::from_ints(&[1, 0]),
            RationalVector::new(vec![rat(148_099, 250_000), rat(70_599, 100_000)]),
        ],
    )
    .expect("triangle")
}

/// Look up a shape by name.
pub fn by_name(name: &str) -> Option<Polytope> {
    Some(match name {
        "interval" => interval(int(0), int(1)),
        "square" | "unit-square" => unit_square(),
        "rectangle" => rectangle(int(2), int(1)),
        "isosceles-right" => isosceles_right_triangle(),
        "equilateral" => equilateral_triangle(),
        "hemiequilateral" => hemiequilateral_triangle(),
        "hexagon" => regular_hexagon(),
        "triangle-50-60-70" => triangle_50_60_70(),
        _ => return None,
    })
}

pub const NAMES: [&str; 8] = [
    "interval",
    "square",
    "rectangle",
    "isosceles-right",
    "equilateral",
    "hemiequilateral",
    "hexagon",
    "triangle-50-60-70",
];
