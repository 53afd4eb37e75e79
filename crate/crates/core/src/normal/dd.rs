//! Extreme rays of `{x >= 0, Ax = 0}` by the double description method.
//!
//! Hyperplanes are intersected one at a time. Candidate pairs are tested
//! for adjacency combinatorially (no other ray vanishes on every coordinate
//! where both vanish). Rays whose support fails the caller's admissibility
//! test are discarded as soon as they appear; for a support condition that
//! is closed under taking subsets this loses nothing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: Bits,
}

impl Ray {
    fn new(coords: Vec<BigInt>) -> Ray {
        let mut zeros = Bits::new(coords.len());
        for (i, x) in coords.iter().enumerate() {
            if x.is_zero() {
                zeros.set(i);
            }
        }
        Ray { coords, zeros }
    }
}

fn dot(row: &[i64], x: &[BigInt]) -> BigInt {
    row.iter()
        .zip(x)
        .filter(|(c, _)| **c != 0)
        .map(|(c, v)| v * BigInt::from(*c))
        .sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Extreme rays of `{x in R^dim : x >= 0, rows . x = 0}` whose support
/// passes `admissible`, as primitive integer vectors in lexicographic order.
///
/// `admissible` receives a support indicator and must be monotone: any
/// subset of an admissible support is admissible.
pub fn extreme_rays<F>(rows: &[Vec<i64>], dim: usize, admissible: F) -> Vec<Vec<BigInt>>
where
    F: Fn(&[bool]) -> bool + Sync,
{
    if dim == 0 {
        return Vec::new();
    }
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::one();
            Ray::new(v)
        })
        .filter(|r| admissible(&support(r)))
        .collect();

    for row in rows {
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if pos.is_empty() && neg.is_empty() {
            continue;
        }
        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .flat_map(|&u| neg.iter().map(move |&v| (u, v)))
            .collect();
        let current = &rays;
        let new_rays: Vec<Ray> = pairs
            .par_iter()
            .filter_map(|&(u, v)| {
                let (ru, rv) = (&current[u], &current[v]);
                let common = ru.zeros.and(&rv.zeros);
                let union_support: Vec<bool> = (0..dim).map(|i| !common.get(i)).collect();
                if !admissible(&union_support) {
                    return None;
                }
                let blocked = current
                    .iter()
                    .enumerate()
                    .any(|(w, rw)| w != u && w != v && rw.zeros.is_superset(&common));
                if blocked {
                    return None;
                }
                let (a, b) = (&values[u], &values[v]);
                // a > 0 > b: a*rv - b*ru vanishes on the new hyperplane.
                let coords: Vec<BigInt> = ru
                    .coords
                    .iter()
                    .zip(&rv.coords)
                    .map(|(x, y)| a * y - b * x)
                    .collect();
                Some(Ray::new(primitive(coords)))
            })
            .collect();
        let mut next: Vec<Ray> = (0..rays.len())
            .filter(|&i| values[i].is_zero())
            .map(|i| rays[i].clone())
            .collect();
        next.extend(new_rays);
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    out
}

fn support(r: &Ray) -> Vec<bool> {
    (0..r.coords.len()).map(|i| !r.zeros.get(i)).collect()
}
