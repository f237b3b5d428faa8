//! Reference checks written independently of the library's fast paths.
#![allow(dead_code)]

use std::cmp::Ordering;

use gapforge::model::{BoxFunction, FunctionSpec, Int, Limits, Rat};

/// All box points in lexicographic order, built from scratch.
pub fn box_points(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// First ordered pair `(x, y)` in lexicographic order whose comparison
/// differs between `f` and `g`, with the comparison results.
pub fn first_violation_pairwise<F: BoxFunction, G: BoxFunction>(
    f: &F,
    g: &G,
) -> Option<(Vec<i64>, Vec<i64>, Ordering, Ordering)> {
    let d = f.domain();
    let pts = box_points(d.dim(), d.radius());
    let fv: Vec<Rat> = pts.iter().map(|x| f.value(x)).collect();
    let gv: Vec<Rat> = pts.iter().map(|x| g.value(x)).collect();
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            let (a, b) = (fv[i].cmp(&fv[j]), gv[i].cmp(&gv[j]));
            if a != b {
                return Some((pts[i].clone(), pts[j].clone(), a, b));
            }
        }
    }
    None
}

pub fn equivalent_pairwise<F: BoxFunction, G: BoxFunction>(f: &F, g: &G) -> bool {
    first_violation_pairwise(f, g).is_none()
}

/// `max - min` by direct evaluation.
pub fn gap_by_points(f: &FunctionSpec) -> Rat {
    let d = f.domain();
    let vals: Vec<Rat> = box_points(d.dim(), d.radius()).iter().map(|x| f.value_at(x)).collect();
    vals.iter().max().unwrap() - vals.iter().min().unwrap()
}

pub fn factorial(d: usize) -> Int {
    let mut acc = Int::from(1);
    for k in 2..=d {
        acc *= k;
    }
    acc
}

pub fn int_pow(base: i64, e: usize) -> Int {
    let mut acc = Int::from(1);
    for _ in 0..e {
        acc *= base;
    }
    acc
}

pub fn pow2(e: usize) -> Int {
    Int::from(1) << e
}

pub fn limits() -> Limits {
    Limits::default()
}

pub fn to_int(v: &Rat) -> Int {
    assert!(v.is_integer(), "{v} is not an integer");
    v.to_integer()
}
