//! Finite-field experiments for `SL_3(F_p)`: the line/plane incidence
//! modules with the maps `tau`, `tau'` between sum-zero functions, and the
//! dimension count for principal series attached to regular orbits of `W`
//! on `X / (p-1) X`.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::WeylGroup;
use crate::error::{Error, Result};
use crate::rootdata::{build_root_system, CartanType, Weight};
use crate::weylmod::is_prime;

pub const DEFAULT_PRIME_BOUND: u64 = 97;
pub const EQUIVARIANCE_SAMPLES: usize = 20;
const EQUIVARIANCE_SEED: u64 = 0x0053_4c33;

/// Arithmetic in `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

type Vec3 = [u64; 3];

/// Lines of `F_p^3` and planes, each plane given by a normal vector in the
/// dual space. Both are normalized so the first nonzero entry is 1.
#[derive(Debug, Clone)]
pub struct IncidenceSpace {
    pub field: PrimeField,
    pub lines: Vec<Vec3>,
    pub planes: Vec<Vec3>,
    /// `incidence[P]` lists the lines inside plane `P`.
    pub incidence: Vec<Vec<usize>>,
}

fn projective_points(f: &PrimeField) -> Vec<Vec3> {
    let p = f.p();
    let mut out = vec![[0, 0, 1]];
    for b in 0..p {
        out.push([0, 1, b]);
    }
    for b in 0..p {
        for c in 0..p {
            out.push([1, b, c]);
        }
    }
    out
}

fn normalize(f: &PrimeField, v: Vec3) -> Option<Vec3> {
    let lead = v.iter().copied().find(|&x| x != 0)?;
    let s = f.inv(lead);
    Some(v.map(|x| f.mul(x, s)))
}

fn dot(f: &PrimeField, a: &Vec3, b: &Vec3) -> u64 {
    (0..3).fold(0, |acc, i| f.add(acc, f.mul(a[i], b[i])))
}

fn point_index(f: &PrimeField, v: &Vec3) -> usize {
    let p = f.p() as usize;
    match v {
        [0, 0, _] => 0,
        [0, _, b] => 1 + *b as usize,
        [_, b, c] => 1 + p + *b as usize * p + *c as usize,
    }
}

pub fn build_incidence(p: u64) -> Result<IncidenceSpace> {
    build_incidence_bounded(p, DEFAULT_PRIME_BOUND)
}

pub fn build_incidence_bounded(p: u64, bound: u64) -> Result<IncidenceSpace> {
    let field = PrimeField::new(p)?;
    if p > bound {
        return Err(Error::TooLarge { p, bound });
    }
    let lines = projective_points(&field);
    let planes = lines.clone();
    let incidence = planes
        .iter()
        .map(|n| (0..lines.len()).filter(|&l| dot(&field, n, &lines[l]) == 0).collect())
        .collect();
    Ok(IncidenceSpace { field, lines, planes, incidence })
}

impl IncidenceSpace {
    pub fn size(&self) -> usize {
        self.lines.len()
    }

    /// Every plane holds `p+1` lines and every line lies in `p+1` planes.
    pub fn is_regular(&self) -> bool {
        let k = self.field.p() as usize + 1;
        let mut per_line = vec![0usize; self.size()];
        for plane in &self.incidence {
            if plane.len() != k {
                return false;
            }
            for &l in plane {
                per_line[l] += 1;
            }
        }
        per_line.iter().all(|&c| c == k)
    }

    /// `A[P][L] = 1` iff `L` lies in `P`; `tau` is `A` and `tau'` is `A^T`
    /// on functions.
    fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let mut a = vec![vec![0; self.size()]; self.size()];
        for (pl, lines) in self.incidence.iter().enumerate() {
            for &l in lines {
                a[pl][l] = 1;
            }
        }
        a
    }

    fn transpose(a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
    }

    /// Dimension of the sum-zero function spaces.
    pub fn function_space_dim(&self) -> usize {
        self.size() - 1
    }

    /// Checks that random elements of `GL_3(F_p)` permute lines and planes
    /// compatibly with incidence, i.e. commute with `tau` and `tau'`.
    pub fn equivariance_spot_check(&self, samples: usize, seed: u64) -> bool {
        let f = self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        while checked < samples {
            let g: [[u64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..f.p())));
            let Some(g_inv) = invert3(&f, &g) else { continue };
            checked += 1;
            // lines move by g, plane normals by the inverse transpose
            let line_image: Vec<usize> = self
                .lines
                .iter()
                .map(|v| point_index(&f, &normalize(&f, apply(&f, &g, v)).unwrap()))
                .collect();
            let inv_t = transpose3(&g_inv);
            let plane_image: Vec<usize> = self
                .planes
                .iter()
                .map(|n| point_index(&f, &normalize(&f, apply(&f, &inv_t, n)).unwrap()))
                .collect();
            let planes_of: Vec<BTreeSet<usize>> =
                self.incidence.iter().map(|ls| ls.iter().copied().collect()).collect();
            for (pl, lines) in self.incidence.iter().enumerate() {
                if lines.iter().any(|&l| !planes_of[plane_image[pl]].contains(&line_image[l])) {
                    return false;
                }
            }
        }
        true
    }
}

fn apply(f: &PrimeField, g: &[[u64; 3]; 3], v: &Vec3) -> Vec3 {
    std::array::from_fn(|i| dot(f, &g[i], v))
}

fn transpose3(g: &[[u64; 3]; 3]) -> [[u64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| g[j][i]))
}

fn invert3(f: &PrimeField, g: &[[u64; 3]; 3]) -> Option<[[u64; 3]; 3]> {
    let mut rows: Vec<Vec<u64>> = (0..3)
        .map(|i| {
            let mut r = g[i].to_vec();
            r.extend((0..3).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let rank = row_reduce(f, &mut rows);
    if rank < 3 || rows[..3].iter().enumerate().any(|(i, r)| r[i] != 1) {
        return None;
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][3 + j])))
}

/// Reduced row echelon form in place; returns the rank.
fn row_reduce(f: &PrimeField, m: &mut [Vec<u64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        let s = f.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, s);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Basis of the null space of `m` (as column vectors).
fn null_space(f: &PrimeField, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = m.to_vec();
    let rank = row_reduce(f, &mut r);
    let pivots: Vec<usize> = r[..rank]
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r[i][free]);
            }
            v
        })
        .collect()
}

fn mat_vec(f: &PrimeField, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelAnalysis {
    pub function_space_dim: usize,
    pub dim_ker_tau: usize,
    pub dim_ker_tau_prime: usize,
    pub ker_tau_eq_im_tau_prime: bool,
    pub ker_tau_prime_eq_im_tau: bool,
}

/// Kernel of `map` on sum-zero functions, and whether it equals the image
/// of `back` on sum-zero functions.
fn kernel_vs_image(f: &PrimeField, map: &[Vec<u64>], back: &[Vec<u64>]) -> (usize, bool) {
    let n = map[0].len();
    let mut constrained = map.to_vec();
    constrained.push(vec![1; n]);
    let kernel_dim = null_space(f, &constrained).len();
    // image of sum-zero functions e_i - e_0 under `back`
    let m = back[0].len();
    let mut image: Vec<Vec<u64>> = (1..m)
        .map(|i| {
            let mut g = vec![0; m];
            g[i] = 1;
            g[0] = f.neg(1);
            mat_vec(f, back, &g)
        })
        .collect();
    let contained = image
        .iter()
        .all(|v| mat_vec(f, map, v).iter().all(|&x| x == 0) && v.iter().fold(0, |a, &x| f.add(a, x)) == 0);
    let image_dim = row_reduce(f, &mut image);
    (kernel_dim, contained && image_dim == kernel_dim)
}

pub fn kernel_analysis(sp: &IncidenceSpace) -> KernelAnalysis {
    let f = sp.field;
    let tau = sp.incidence_matrix();
    let tau_prime = IncidenceSpace::transpose(&tau);
    let (dim_ker_tau, ker_tau_eq_im_tau_prime) = kernel_vs_image(&f, &tau, &tau_prime);
    let (dim_ker_tau_prime, ker_tau_prime_eq_im_tau) = kernel_vs_image(&f, &tau_prime, &tau);
    KernelAnalysis {
        function_space_dim: sp.function_space_dim(),
        dim_ker_tau,
        dim_ker_tau_prime,
        ker_tau_eq_im_tau_prime,
        ker_tau_prime_eq_im_tau,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    /// Residues mod `p-1`, in orbit order starting from the smallest.
    pub members: Vec<Vec<i64>>,
    /// Lifts with coordinates in `[1, p-2]`.
    pub lifts: Vec<Vec<i64>>,
    pub dims: Vec<u64>,
    pub sum: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalSeriesReport {
    pub p: u64,
    /// `(p+1)(p^2+p+1)`, the index of a Borel subgroup.
    pub target: u64,
    pub regular_orbits: usize,
    /// Orbits with a nontrivial stabilizer.
    pub singular_orbits: usize,
    /// Singular classes whose coordinates are all nonzero mod `p-1`.
    pub singular_with_nonzero_coords: usize,
    pub orbits: Vec<OrbitResult>,
    pub all_ok: bool,
}

/// Sums `dim V(lift)` over every regular `W`-orbit on `X/(p-1)X` for `SL_3`.
pub fn principal_series_check(p: u64) -> Result<PrincipalSeriesReport> {
    PrimeField::new(p)?;
    if p < 5 {
        return Err(Error::PrimeTooSmall { p, min: 5 });
    }
    let g = WeylGroup::generate(CartanType::A2);
    let rs = build_root_system(CartanType::A2);
    let m = p as i64 - 1;
    let reduce = |w: &Weight| -> Vec<i64> { w.coords().iter().map(|c| c.rem_euclid(m)).collect() };
    let target = (p + 1) * (p * p + p + 1);
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut singular = 0;
    let mut singular_nonzero = 0;
    for a in 0..m {
        for b in 0..m {
            if seen.contains(&vec![a, b]) {
                continue;
            }
            let zeta = Weight(vec![a, b]);
            let images: Vec<Vec<i64>> = (0..g.order()).map(|w| reduce(&g.act_on_weight(w, &zeta))).collect();
            let members: BTreeSet<Vec<i64>> = images.iter().cloned().collect();
            seen.extend(members.iter().cloned());
            if members.len() < g.order() {
                singular += 1;
                singular_nonzero += members.iter().filter(|z| z.iter().all(|&c| c != 0)).count();
                continue;
            }
            let members: Vec<Vec<i64>> = members.into_iter().collect();
            // regular classes have no zero coordinate, so the lift in [1, p-2] is forced
            let lifts: Vec<Vec<i64>> = members.clone();
            let dims: Vec<u64> = lifts
                .iter()
                .map(|l| {
                    let d = rs.weyl_dim(&Weight(l.clone()))?;
                    Ok(d.to_u64().expect("dimension fits in u64 below the prime bound"))
                })
                .collect::<Result<_>>()?;
            let sum: u64 = dims.iter().sum();
            let ok = sum == target && lifts.iter().flatten().all(|&c| (1..=m - 1).contains(&c));
            orbits.push(OrbitResult { members, lifts, dims, sum, ok });
        }
    }
    let all_ok = orbits.iter().all(|o| o.ok);
    Ok(PrincipalSeriesReport {
        p,
        target,
        regular_orbits: orbits.len(),
        singular_orbits: singular,
        singular_with_nonzero_coords: singular_nonzero,
        orbits,
        all_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl3Report {
    pub p: u64,
    pub lines: usize,
    pub planes: usize,
    pub regular_incidence: bool,
    pub expected_kernel_dim: usize,
    pub kernels: KernelAnalysis,
    pub equivariant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal_series: Option<PrincipalSeriesReport>,
}

impl Sl3Report {
    pub fn passed(&self) -> bool {
        let k = &self.kernels;
        self.regular_incidence
            && self.equivariant
            && k.dim_ker_tau == self.expected_kernel_dim
            && k.dim_ker_tau_prime == self.expected_kernel_dim
            && k.ker_tau_eq_im_tau_prime
            && k.ker_tau_prime_eq_im_tau
            && self.principal_series.as_ref().is_none_or(|ps| ps.all_ok)
    }
}

/// Full incidence experiment at `p`, optionally with the orbit check.
pub fn run_sl3(p: u64, with_orbits: bool) -> Result<Sl3Report> {
    let sp = build_incidence(p)?;
    let kernels = kernel_analysis(&sp);
    let principal_series = if with_orbits && p >= 5 { Some(principal_series_check(p)?) } else { None };
    Ok(Sl3Report {
        p,
        lines: sp.lines.len(),
        planes: sp.planes.len(),
        regular_incidence: sp.is_regular(),
        expected_kernel_dim: (p * (p + 1) / 2) as usize,
        kernels,
        equivariant: sp.equivariance_spot_check(EQUIVARIANCE_SAMPLES, EQUIVARIANCE_SEED ^ p),
        principal_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_and_bounds() {
        assert!(matches!(PrimeField::new(9), Err(Error::NotPrime(9))));
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert!(matches!(build_incidence(101), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn fano_plane() {
        let sp = build_incidence(2).unwrap();
        assert_eq!(sp.lines.len(), 7);
        assert!(sp.incidence.iter().all(|ls| ls.len() == 3));
        assert!(sp.is_regular());
        let k = kernel_analysis(&sp);
        assert_eq!(k.function_space_dim, 6);
        assert_eq!((k.dim_ker_tau, k.dim_ker_tau_prime), (3, 3));
    }

    #[test]
    fn kernels_at_five_and_seven() {
        let sp = build_incidence(5).unwrap();
        assert_eq!(sp.lines.len(), 31);
        let k = kernel_analysis(&sp);
        assert_eq!((k.dim_ker_tau, k.dim_ker_tau_prime), (15, 15));
        assert!(k.ker_tau_eq_im_tau_prime && k.ker_tau_prime_eq_im_tau);
        let sp7 = build_incidence(7).unwrap();
        assert_eq!(sp7.lines.len(), 57);
        assert!(sp7.is_regular());
        assert!(sp7.equivariance_spot_check(20, 1));
    }

    #[test]
    fn orbit_of_one_two_at_five() {
        let r = principal_series_check(5).unwrap();
        let orbit = r.orbits.iter().find(|o| o.members.contains(&vec![1, 2])).unwrap();
        let lifts: BTreeSet<Vec<i64>> = orbit.lifts.iter().cloned().collect();
        let expected: BTreeSet<Vec<i64>> =
            [[1, 2], [3, 3], [3, 2], [1, 1], [2, 1], [2, 3]].iter().map(|v| v.to_vec()).collect();
        assert_eq!(lifts, expected);
        assert_eq!(orbit.sum, 186);
        assert!(r.all_ok);
    }

    #[test]
    fn all_regular_orbits_at_seven() {
        let r = principal_series_check(7).unwrap();
        assert!(r.regular_orbits > 0);
        assert!(r.orbits.iter().all(|o| o.sum == 456));
    }

    #[test]
    fn nonzero_coordinates_do_not_imply_regular() {
        // (1,3) mod 4 is fixed by the reflection in the highest root
        let r = principal_series_check(5).unwrap();
        assert!(r.singular_with_nonzero_coords > 0);
    }
}
