//! Kazhdan–Lusztig polynomials, structure constants of the KL basis, the
//! a-function, cells, near involutions and the asymptotic ring `J`.
//!
//! Basis convention: `c_w = v^{-l(w)} sum_{y <= w} P_{y,w}(v^2) T_y` with
//! `(T_s - v^2)(T_s + 1) = 0`. In this basis
//!
//! ```text
//! c_s c_w = (v + v^-1) c_w                          if sw < w
//! c_s c_w = c_{sw} + sum_{z < w, sz < z} mu(z,w) c_z   if sw > w
//! ```
//!
//! and every structure constant `h_{x,y,z}` is a bar-invariant Laurent
//! polynomial with nonnegative coefficients. `a(z)` is the largest `v`-degree
//! of any `h_{x,y,z}`, and `gamma_{x,y,z}` is the coefficient of `v^{a(z)}`
//! in `h_{x,y,z}`; `t_x t_y = sum_z gamma_{x,y,z} t_z`.

mod cells;
mod jring;
mod structure;

pub use cells::{compute_cells, near_involutions, CellPartition, NearInvolutionSet};
pub use jring::{JElement, JRing};
pub use structure::StructureConstants;

use rayon::prelude::*;

use crate::coxeter::{BruhatOrder, WeylGroup};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Default bound on the group order accepted by [`compute_kl`].
pub const DEFAULT_GROUP_BOUND: usize = 120;

/// A polynomial in `q` with small integer coefficients (`coeffs[k]` of `q^k`).
pub type QPoly = Vec<i64>;

fn q_add_scaled(acc: &mut QPoly, src: &[i64], shift: usize, scale: i64) {
    if src.is_empty() || scale == 0 {
        return;
    }
    if acc.len() < src.len() + shift {
        acc.resize(src.len() + shift, 0);
    }
    for (k, c) in src.iter().enumerate() {
        acc[k + shift] += scale * c;
    }
}

fn q_trim(mut p: QPoly) -> QPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

#[derive(Debug, Clone)]
pub struct KLData {
    group: WeylGroup,
    bruhat: BruhatOrder,
    /// `p[w][y] = P_{y,w}`, empty when `y` is not below `w`.
    p: Vec<Vec<QPoly>>,
    /// For each `w`: the pairs `(z, mu(z, w))` with `z < w` and `mu != 0`.
    mu_below: Vec<Vec<(usize, i64)>>,
    h: StructureConstants,
    a: Vec<usize>,
}

pub fn compute_kl(g: &WeylGroup) -> Result<KLData> {
    compute_kl_bounded(g, DEFAULT_GROUP_BOUND)
}

pub fn compute_kl_bounded(g: &WeylGroup, bound: usize) -> Result<KLData> {
    if g.order() > bound {
        return Err(Error::GroupTooLarge { order: g.order(), bound });
    }
    let bruhat = g.bruhat();
    let (p, mu_below) = kl_polynomials(g, &bruhat);
    let h = StructureConstants::compute(g, &mu_below);
    let size = g.order();
    let a: Vec<usize> = (0..size)
        .into_par_iter()
        .map(|z| h.max_degree_into(z))
        .collect();
    Ok(KLData { group: g.clone(), bruhat, p, mu_below, h, a })
}

type MuLists = Vec<Vec<(usize, i64)>>;

/// Standard recursion: for `sw < w`, `v = sw` and `c = [sx < x]`,
/// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}`.
fn kl_polynomials(g: &WeylGroup, bruhat: &BruhatOrder) -> (Vec<Vec<QPoly>>, MuLists) {
    let size = g.order();
    let mut p: Vec<Vec<QPoly>> = vec![vec![Vec::new(); size]; size];
    let mut mu_below: MuLists = vec![Vec::new(); size];
    p[0][0] = vec![1];
    for w in 1..size {
        let s = g.elt(w).word()[0] as usize;
        let v = g.left_mul_gen(w, s);
        let lw = g.length(w);
        let correction: Vec<(usize, i64)> = mu_below[v]
            .iter()
            .copied()
            .filter(|&(z, _)| g.length(g.left_mul_gen(z, s)) < g.length(z))
            .collect();
        let mut row = vec![Vec::new(); size];
        for x in bruhat.interval_below(w) {
            let sx = g.left_mul_gen(x, s);
            let c = usize::from(g.length(sx) < g.length(x));
            let mut acc: QPoly = Vec::new();
            q_add_scaled(&mut acc, &p[v][sx], 1 - c, 1);
            q_add_scaled(&mut acc, &p[v][x], c, 1);
            for &(z, mu) in &correction {
                let shift = (lw - g.length(z)) / 2;
                q_add_scaled(&mut acc, &p[z][x], shift, -mu);
            }
            row[x] = q_trim(acc);
        }
        p[w] = row;
        for y in bruhat.interval_below(w) {
            if y == w {
                continue;
            }
            let d = lw - g.length(y);
            if d % 2 == 1 {
                let mu = p[w][y].get((d - 1) / 2).copied().unwrap_or(0);
                if mu != 0 {
                    mu_below[w].push((y, mu));
                }
            }
        }
    }
    (p, mu_below)
}

impl KLData {
    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn bruhat(&self) -> &BruhatOrder {
        &self.bruhat
    }

    /// `P_{y,w}` as coefficients in `q`; empty when `y` is not below `w`.
    pub fn kl_poly(&self, y: usize, w: usize) -> &[i64] {
        &self.p[w][y]
    }

    /// `mu(y, w)`, symmetric in its arguments.
    pub fn mu(&self, y: usize, w: usize) -> i64 {
        let (lo, hi) = if self.group.length(y) <= self.group.length(w) { (y, w) } else { (w, y) };
        self.mu_below[hi]
            .iter()
            .find(|(z, _)| *z == lo)
            .map_or(0, |(_, m)| *m)
    }

    pub fn mu_below(&self, w: usize) -> &[(usize, i64)] {
        &self.mu_below[w]
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.h
    }

    /// `h_{x,y,z}` as a Laurent polynomial in `v`.
    pub fn h(&self, x: usize, y: usize, z: usize) -> LaurentPoly {
        self.h.get(x, y, z)
    }

    /// The a-function value of each element.
    pub fn a_values(&self) -> &[usize] {
        &self.a
    }

    pub fn a(&self, w: usize) -> usize {
        self.a[w]
    }

    /// `gamma_{x,y,z}`: coefficient of `v^{a(z)}` in `h_{x,y,z}`.
    pub fn gamma(&self, x: usize, y: usize, z: usize) -> i64 {
        self.h.coeff(x, y, z, self.a[z] as i32)
    }

    /// Checks the degree bound, constant term and `P_{w,w} = 1` for every
    /// comparable pair; returns the offending pairs.
    pub fn kl_invariant_violations(&self) -> Vec<(usize, usize)> {
        let g = &self.group;
        let mut bad = Vec::new();
        for w in 0..g.order() {
            for y in 0..g.order() {
                let poly = &self.p[w][y];
                let below = self.bruhat.leq(y, w);
                let ok = if !below {
                    poly.is_empty()
                } else if y == w {
                    poly == &vec![1]
                } else {
                    let bound = (g.length(w) - g.length(y) - 1) / 2;
                    poly.first() == Some(&1) && poly.len() <= bound + 1
                };
                if !ok {
                    bad.push((y, w));
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    #[test]
    fn dihedral_polynomials_are_trivial() {
        for t in [CartanType::B2, CartanType::G2, CartanType::A2] {
            let g = WeylGroup::generate(t);
            let kl = compute_kl(&g).unwrap();
            for w in 0..g.order() {
                for y in 0..g.order() {
                    if kl.bruhat().leq(y, w) {
                        assert_eq!(kl.kl_poly(y, w), &[1], "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn a3_nontrivial_polynomial() {
        let g = WeylGroup::generate(CartanType::A3);
        let kl = compute_kl(&g).unwrap();
        let s2 = g.parse_word("2").unwrap();
        let w = g.parse_word("2132").unwrap();
        assert_eq!(kl.kl_poly(s2, w), &[1, 1]);
        assert_eq!(kl.kl_poly(0, w), &[1, 1]);
        for i in 1..=3 {
            assert_eq!(kl.kl_poly(0, g.parse_word(&i.to_string()).unwrap()), &[1]);
        }
        // 2132 and 12321 (= 13231) are the only w with a nontrivial P_{y,w}
        let nontrivial: std::collections::BTreeSet<String> = (0..g.order())
            .flat_map(|w| (0..g.order()).map(move |y| (y, w)))
            .filter(|&(y, w)| kl.kl_poly(y, w).len() > 1)
            .map(|(_, w)| g.elt(w).to_string())
            .collect();
        assert_eq!(nontrivial.into_iter().collect::<Vec<_>>(), vec!["12321", "2132"]);
    }

    #[test]
    fn kl_invariants_hold() {
        for t in [CartanType::A3, CartanType::B2, CartanType::G2] {
            let kl = compute_kl(&WeylGroup::generate(t)).unwrap();
            assert!(kl.kl_invariant_violations().is_empty(), "{t}");
        }
    }

    #[test]
    fn a_function_extremes() {
        for t in [CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2] {
            let g = WeylGroup::generate(t);
            let kl = compute_kl(&g).unwrap();
            assert_eq!(kl.a(0), 0);
            assert_eq!(kl.a(g.w0()), g.nu(), "{t}");
            for w in 0..g.order() {
                assert_eq!(kl.a(w), kl.a(g.inverse(w)));
            }
        }
        let b2 = WeylGroup::generate(CartanType::B2);
        let kl = compute_kl(&b2).unwrap();
        assert_eq!(kl.a(b2.parse_word("121").unwrap()), 1);
        let g2 = WeylGroup::generate(CartanType::G2);
        let kl = compute_kl(&g2).unwrap();
        assert_eq!(kl.a(g2.parse_word("12121").unwrap()), 1);
    }

    #[test]
    fn group_bound_enforced() {
        let g = WeylGroup::generate(CartanType::A3);
        assert_eq!(
            compute_kl_bounded(&g, 10).unwrap_err(),
            Error::GroupTooLarge { order: 24, bound: 10 }
        );
    }

    #[test]
    fn generator_products() {
        let g = WeylGroup::generate(CartanType::A2);
        let kl = compute_kl(&g).unwrap();
        let s1 = g.parse_word("1").unwrap();
        let s2 = g.parse_word("2").unwrap();
        let s12 = g.parse_word("12").unwrap();
        assert_eq!(kl.h(s1, s1, s1), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(kl.h(s1, s2, s12), LaurentPoly::one());
        assert!(kl.h(s1, s2, s1).is_zero());
    }
}
