//! The asymptotic ring `J` with basis `t_w` and integer structure constants
//! `t_x t_y = sum_z gamma_{x,y,z} t_z`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::KLData;
use crate::error::{Error, Result};

/// A finitely supported integer combination of basis elements `t_w`.
pub type JElement = BTreeMap<usize, i64>;

#[derive(Debug, Clone)]
pub struct JRing {
    size: usize,
    /// `gamma[x * size + y]` lists the nonzero `(z, gamma_{x,y,z})`.
    gamma: Vec<Vec<(usize, i64)>>,
    a: Vec<usize>,
    labels: Vec<String>,
}

impl JRing {
    /// Builds the ring and verifies associativity on every basis triple.
    pub fn new(kl: &KLData) -> Result<Self> {
        let ring = Self::new_unchecked(kl);
        if let Some((x, y, z)) = ring.associativity_failure() {
            return Err(Error::AssociativityFailure(
                ring.labels[x].clone(),
                ring.labels[y].clone(),
                ring.labels[z].clone(),
            ));
        }
        Ok(ring)
    }

    pub fn new_unchecked(kl: &KLData) -> Self {
        let g = kl.group();
        let size = g.order();
        let h = kl.structure_constants();
        let gamma = (0..size * size)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / size, k % size);
                h.support(x, y)
                    .filter_map(|z| {
                        let c = kl.gamma(x, y, z);
                        (c != 0).then_some((z, c))
                    })
                    .collect()
            })
            .collect();
        JRing {
            size,
            gamma,
            a: kl.a_values().to_vec(),
            labels: g.elements().iter().map(|e| e.to_string()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.size
    }

    pub fn gamma(&self, x: usize, y: usize, z: usize) -> i64 {
        self.gamma[x * self.size + y]
            .iter()
            .find(|(w, _)| *w == z)
            .map_or(0, |(_, c)| *c)
    }

    /// `t_x t_y`.
    pub fn basis_product(&self, x: usize, y: usize) -> &[(usize, i64)] {
        &self.gamma[x * self.size + y]
    }

    pub fn basis(&self, x: usize) -> JElement {
        JElement::from([(x, 1)])
    }

    pub fn mul(&self, lhs: &JElement, rhs: &JElement) -> JElement {
        let mut out = JElement::new();
        for (&x, &cx) in lhs {
            for (&y, &cy) in rhs {
                for &(z, c) in self.basis_product(x, y) {
                    *out.entry(z).or_insert(0) += cx * cy * c;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// First basis triple on which `(t_x t_y) t_z != t_x (t_y t_z)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        (0..n * n).into_par_iter().find_map_first(|k| {
            let (x, y) = (k / n, k % n);
            let xy: JElement = self.basis_product(x, y).iter().copied().collect();
            for z in 0..n {
                let lhs = self.mul(&xy, &self.basis(z));
                let yz: JElement = self.basis_product(y, z).iter().copied().collect();
                let rhs = self.mul(&self.basis(x), &yz);
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
            None
        })
    }

    /// Nonzero `gamma_{x,y,z}` must have `a(x) = a(y) = a(z)`; returns the
    /// first triple that breaks this.
    pub fn cell_support_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        (0..n * n).find_map(|k| {
            let (x, y) = (k / n, k % n);
            self.basis_product(x, y)
                .iter()
                .find(|(z, _)| self.a[x] != self.a[*z] || self.a[y] != self.a[*z])
                .map(|&(z, _)| (x, y, z))
        })
    }

    /// `z t_x = t_x z` for every basis element `t_x`.
    pub fn is_central(&self, z: &JElement) -> bool {
        let z: JElement = z.iter().filter(|(_, c)| **c != 0).map(|(w, c)| (*w, *c)).collect();
        (0..self.size).all(|x| {
            let tx = self.basis(x);
            self.mul(&z, &tx) == self.mul(&tx, &z)
        })
    }
}
