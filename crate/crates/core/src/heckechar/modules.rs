//! Hecke-algebra modules `E(u)` as explicit matrices over `Z[v, v^-1]`,
//! with `(T_s - v^2)(T_s + 1) = 0`.

use serde::Serialize;

use super::chartable::WCharTable;
use crate::coxeter::WeylGroup;
use crate::error::{Error, Result};
use crate::klcells::{CellPartition, KLData};
use crate::poly::LaurentPoly;
use crate::rootdata::Family;

/// Square matrix over Laurent polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LMatrix {
    pub fn zero(n: usize) -> Self {
        LMatrix { n, entries: vec![LaurentPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        LMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn mul(&self, rhs: &LMatrix) -> LMatrix {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> LMatrix {
        LMatrix { n: self.n, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn add(&self, rhs: &LMatrix) -> LMatrix {
        LMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.n).fold(LaurentPoly::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HModule {
    pub label: String,
    pub dim: usize,
    /// Matrices of `T_{s_i}`, `i = 1..rank`.
    #[serde(skip)]
    pub gen_matrices: Vec<LMatrix>,
}

impl HModule {
    /// Checks the quadratic and braid relations.
    pub fn verify_relations(&self, g: &WeylGroup) -> Result<()> {
        let n = self.dim;
        let minus_q = LaurentPoly::monomial(2, -1);
        let one = LaurentPoly::one();
        for (i, t) in self.gen_matrices.iter().enumerate() {
            let lhs = t.add(&LMatrix::identity(n).scale(&minus_q));
            let rhs = t.add(&LMatrix::identity(n).scale(&one));
            if !lhs.mul(&rhs).is_zero() {
                return Err(Error::ConstructionIncomplete(format!(
                    "{}: quadratic relation fails for s{}",
                    self.label,
                    i + 1
                )));
            }
        }
        let cartan = g.cartan_type().cartan_matrix();
        #[allow(clippy::needless_range_loop)]
        for i in 0..g.rank() {
            for j in i + 1..g.rank() {
                let m = match cartan[i][j] * cartan[j][i] {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    other => unreachable!("Cartan product {other}"),
                };
                let alternating = |first: usize, second: usize| {
                    (0..m).fold(LMatrix::identity(n), |acc, k| {
                        acc.mul(&self.gen_matrices[if k % 2 == 0 { first } else { second }])
                    })
                };
                if alternating(i, j) != alternating(j, i) {
                    return Err(Error::ConstructionIncomplete(format!(
                        "{}: braid relation fails for s{} s{}",
                        self.label,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `T_w` for every element, indexed like the group.
    pub fn all_element_matrices(&self, g: &WeylGroup) -> Vec<LMatrix> {
        let mut out: Vec<LMatrix> = Vec::with_capacity(g.order());
        out.push(LMatrix::identity(self.dim));
        for w in 1..g.order() {
            let word = g.elt(w).word();
            let s = *word.last().unwrap() as usize;
            let prefix = g.right_mul_gen(w, s);
            let m = out[prefix].mul(&self.gen_matrices[s - 1]);
            out.push(m);
        }
        out
    }
}

/// `T_s = v c_s - 1` where `c_s` acts on the cell module through the
/// structure constants `h_{s,w,z}` with `w, z` in the left cell.
fn left_cell_module(kl: &KLData, cell: &[usize]) -> Vec<LMatrix> {
    let g = kl.group();
    let n = cell.len();
    let v = LaurentPoly::v();
    let minus_one = LaurentPoly::monomial(0, -1);
    (1..=g.rank())
        .map(|i| {
            let s = g.left_mul_gen(0, i);
            let mut m = LMatrix::zero(n);
            for (col, &w) in cell.iter().enumerate() {
                for (row, &z) in cell.iter().enumerate() {
                    let h = kl.h(s, w, z);
                    if !h.is_zero() {
                        m.set(row, col, &h * &v);
                    }
                }
            }
            m.add(&LMatrix::identity(n).scale(&minus_one))
        })
        .collect()
}

fn dihedral_modules(m: usize) -> Vec<(String, Vec<LMatrix>)> {
    let q = LaurentPoly::monomial(2, 1);
    let minus_one = LaurentPoly::monomial(0, -1);
    let scalar = |p: &LaurentPoly| LMatrix::from_rows(vec![vec![p.clone()]]);
    let one_dim = |eps: [bool; 2]| -> Vec<LMatrix> {
        eps.iter().map(|&neg| scalar(if neg { &minus_one } else { &q })).collect()
    };
    let mut out = vec![
        ("1".to_string(), one_dim([false, false])),
        ("eps_1".to_string(), one_dim([true, false])),
        ("eps_2".to_string(), one_dim([false, true])),
        ("sgn".to_string(), one_dim([true, true])),
    ];
    for k in 1..m / 2 {
        // T_1 = [[-1, a], [0, q]], T_2 = [[q, 0], [b, -1]] with ab = q (2 + 2cos(2 pi k / m))
        let coupling = match (m, k) {
            (4, 1) => 2,
            (6, 1) => 3,
            (6, 2) => 1,
            _ => unreachable!(),
        };
        let a = LaurentPoly::monomial(1, coupling);
        let b = LaurentPoly::v();
        let zero = LaurentPoly::zero();
        let t1 = LMatrix::from_rows(vec![vec![minus_one.clone(), a], vec![zero.clone(), q.clone()]]);
        let t2 = LMatrix::from_rows(vec![vec![q.clone(), zero], vec![b, minus_one.clone()]]);
        out.push((format!("rho_{k}"), vec![t1, t2]));
    }
    out
}

/// One module per irreducible character, labelled like the character table.
pub fn build_hecke_modules(
    g: &WeylGroup,
    kl: &KLData,
    cells: &CellPartition,
    table: &WCharTable,
) -> Result<Vec<HModule>> {
    let candidates: Vec<(Option<String>, Vec<LMatrix>)> = match g.cartan_type().family() {
        Family::A => cells
            .two_sided_cells
            .iter()
            .map(|two_sided| {
                let left = cells
                    .left_cells
                    .iter()
                    .find(|c| c[0] == two_sided[0] || c.contains(&two_sided[0]))
                    .expect("left cell inside two-sided cell");
                (None, left_cell_module(kl, left))
            })
            .collect(),
        Family::B => dihedral_modules(4).into_iter().map(|(l, m)| (Some(l), m)).collect(),
        Family::G => dihedral_modules(6).into_iter().map(|(l, m)| (Some(l), m)).collect(),
    };

    let mut modules: Vec<Option<HModule>> = vec![None; table.len()];
    for (label, gens) in candidates {
        let dim = gens[0].dim();
        let mut module = HModule { label: label.clone().unwrap_or_default(), dim, gen_matrices: gens };
        let chars: Vec<i64> = {
            let mats = module.all_element_matrices(g);
            table.class_values(|w| i64::try_from(mats[w].trace().at_one()).unwrap_or(i64::MAX))
        };
        if table.scaled_inner(&chars, &chars) != g.order() as i64 {
            return Err(Error::ConstructionIncomplete(format!(
                "module of dimension {dim} is reducible at v = 1"
            )));
        }
        let Some(e) = table.chars.iter().position(|row| *row == chars) else {
            return Err(Error::ConstructionIncomplete(format!(
                "module of dimension {dim} matches no irreducible character"
            )));
        };
        if let Some(l) = &label {
            if *l != table.labels[e] {
                return Err(Error::ConstructionIncomplete(format!(
                    "module `{l}` specialises to `{}`",
                    table.labels[e]
                )));
            }
        }
        if modules[e].is_some() {
            return Err(Error::ConstructionIncomplete(format!("two modules for `{}`", table.labels[e])));
        }
        module.label = table.labels[e].clone();
        module.verify_relations(g)?;
        modules[e] = Some(module);
    }
    modules
        .into_iter()
        .enumerate()
        .map(|(e, m)| m.ok_or_else(|| Error::ConstructionIncomplete(format!("no module for `{}`", table.labels[e]))))
        .collect()
}
