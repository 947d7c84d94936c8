#![allow(dead_code)]

use hermitia::{Field, Mat2, QuadElem, QuadInt};
use proptest::prelude::*;

pub fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(Field::ALL.to_vec())
}

pub fn quad_int(f: Field, r: i64) -> impl Strategy<Value = QuadInt> {
    (-r..=r, -r..=r).prop_map(move |(x, y)| QuadInt::from_i64(f, x, y))
}

pub fn any_quad_int(r: i64) -> impl Strategy<Value = QuadInt> {
    field().prop_flat_map(move |f| quad_int(f, r))
}

/// (x + yω)/q with q ≤ max_den.
pub fn quad_elem(f: Field, max_den: i64) -> impl Strategy<Value = QuadElem> {
    (1..=max_den).prop_flat_map(move |q| (-2 * q..=2 * q, -q..=q).prop_map(move |(x, y)| QuadElem::from_i64(f, x, y, q)))
}

/// Products of S and translations by small lattice points: elements of SL₂(O_d).
pub fn unimodular(f: Field, len: usize) -> impl Strategy<Value = Mat2> {
    prop::collection::vec(quad_int(f, 2), 1..=len).prop_map(move |ls| {
        ls.iter().fold(Mat2::identity(f), |acc, l| acc.mul(&Mat2::translation(l)).mul(&Mat2::s(f)))
    })
}

/// Lattice points in the square |x|, |y| ≤ r around 0, in internal coordinates.
pub fn box_points(f: Field, r: i64) -> Vec<QuadInt> {
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            out.push(QuadInt::from_i64(f, x, y));
        }
    }
    out
}
