//! All structure constants `h_{x,y,z}` of the KL basis.
//!
//! For fixed `y` the products `c_x c_y` are built in increasing length of
//! `x`: with `x = s x'`, `c_x = c_s c_{x'} - sum_{z < x', sz < z} mu(z,x') c_z`.
//! Coefficient vectors are dense over `v^{-NU_MAX}..=v^{NU_MAX}`, which
//! bounds every `h` for the supported types.

use rayon::prelude::*;

use crate::coxeter::WeylGroup;
use crate::poly::LaurentPoly;

const NU_MAX: usize = 12;
const WIDTH: usize = 2 * NU_MAX + 1;

type Dense = [i64; WIDTH];

/// A nonzero `h_{x,y,z}` with its lowest exponent and packed coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Packed {
    z: u32,
    lo: i32,
    coeffs: Box<[i64]>,
}

impl Packed {
    fn from_dense(z: usize, d: &Dense) -> Option<Self> {
        let first = d.iter().position(|&c| c != 0)?;
        let last = d.iter().rposition(|&c| c != 0)?;
        Some(Packed {
            z: z as u32,
            lo: first as i32 - NU_MAX as i32,
            coeffs: d[first..=last].into(),
        })
    }

    fn degree(&self) -> i32 {
        self.lo + self.coeffs.len() as i32 - 1
    }

    fn coeff(&self, e: i32) -> i64 {
        let k = e - self.lo;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, &c)| (self.lo + k as i32, c)))
    }
}

#[derive(Debug, Clone)]
pub struct StructureConstants {
    size: usize,
    /// Indexed by `x * size + y`, sorted by `z`.
    table: Vec<Vec<Packed>>,
}

fn apply_generator(
    g: &WeylGroup,
    mu_below: &[Vec<(usize, i64)>],
    s: usize,
    vec: &[Dense],
    out: &mut [Dense],
) {
    for row in out.iter_mut() {
        *row = [0; WIDTH];
    }
    for (u, coeffs) in vec.iter().enumerate() {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let su = g.left_mul_gen(u, s);
        if g.length(su) < g.length(u) {
            // (v + v^-1) * coeffs
            let target = &mut out[u];
            for k in 0..WIDTH {
                let c = coeffs[k];
                if c != 0 {
                    target[k + 1] += c;
                    target[k - 1] += c;
                }
            }
        } else {
            add_into(&mut out[su], coeffs, 1);
            for &(z, mu) in &mu_below[u] {
                if g.length(g.left_mul_gen(z, s)) < g.length(z) {
                    add_into(&mut out[z], coeffs, mu);
                }
            }
        }
    }
}

fn add_into(target: &mut Dense, src: &Dense, scale: i64) {
    for k in 0..WIDTH {
        target[k] += scale * src[k];
    }
}

impl StructureConstants {
    pub(super) fn compute(g: &WeylGroup, mu_below: &[Vec<(usize, i64)>]) -> Self {
        assert!(g.nu() + 1 < NU_MAX, "group too large for the dense kernel");
        let size = g.order();
        let columns: Vec<Vec<Vec<Packed>>> = (0..size)
            .into_par_iter()
            .map(|y| Self::column(g, mu_below, y))
            .collect();
        let mut table = vec![Vec::new(); size * size];
        for (y, col) in columns.into_iter().enumerate() {
            for (x, entries) in col.into_iter().enumerate() {
                table[x * size + y] = entries;
            }
        }
        StructureConstants { size, table }
    }

    /// `c_x c_y` for every `x`, with `y` fixed.
    fn column(g: &WeylGroup, mu_below: &[Vec<(usize, i64)>], y: usize) -> Vec<Vec<Packed>> {
        let size = g.order();
        let mut products: Vec<Vec<Dense>> = Vec::with_capacity(size);
        let mut unit = vec![[0i64; WIDTH]; size];
        unit[y][NU_MAX] = 1;
        products.push(unit);
        for x in 1..size {
            let s = g.elt(x).word()[0] as usize;
            let shorter = g.left_mul_gen(x, s);
            let mut next = vec![[0i64; WIDTH]; size];
            apply_generator(g, mu_below, s, &products[shorter], &mut next);
            for &(z, mu) in &mu_below[shorter] {
                if g.length(g.left_mul_gen(z, s)) < g.length(z) {
                    for (row, src) in next.iter_mut().zip(&products[z]) {
                        add_into(row, src, -mu);
                    }
                }
            }
            products.push(next);
        }
        products
            .iter()
            .map(|vec| {
                vec.iter()
                    .enumerate()
                    .filter_map(|(z, d)| Packed::from_dense(z, d))
                    .collect()
            })
            .collect()
    }

    fn entries(&self, x: usize, y: usize) -> &[Packed] {
        &self.table[x * self.size + y]
    }

    fn find(&self, x: usize, y: usize, z: usize) -> Option<&Packed> {
        let entries = self.entries(x, y);
        entries
            .binary_search_by_key(&(z as u32), |p| p.z)
            .ok()
            .map(|k| &entries[k])
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> LaurentPoly {
        self.find(x, y, z).map_or_else(LaurentPoly::zero, Packed::to_laurent)
    }

    pub fn coeff(&self, x: usize, y: usize, z: usize, e: i32) -> i64 {
        self.find(x, y, z).map_or(0, |p| p.coeff(e))
    }

    /// Nonzero `z` in `c_x c_y`, with `h_{x,y,z}`.
    pub fn product(&self, x: usize, y: usize) -> impl Iterator<Item = (usize, LaurentPoly)> + '_ {
        self.entries(x, y).iter().map(|p| (p.z as usize, p.to_laurent()))
    }

    pub fn support(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries(x, y).iter().map(|p| p.z as usize)
    }

    /// `max_{x,y} deg_v h_{x,y,z}`.
    pub(super) fn max_degree_into(&self, z: usize) -> usize {
        self.table
            .iter()
            .filter_map(|entries| {
                entries
                    .binary_search_by_key(&(z as u32), |p| p.z)
                    .ok()
                    .map(|k| entries[k].degree())
            })
            .max()
            .unwrap_or(0)
            .max(0) as usize
    }

    /// Whether every stored constant is bar-invariant with nonnegative coefficients.
    pub fn is_positive_and_bar_invariant(&self) -> bool {
        self.table.iter().flatten().all(|p| {
            p.coeffs.iter().all(|&c| c >= 0) && p.lo == -p.degree() && {
                let n = p.coeffs.len();
                (0..n).all(|k| p.coeffs[k] == p.coeffs[n - 1 - k])
            }
        })
    }
}
