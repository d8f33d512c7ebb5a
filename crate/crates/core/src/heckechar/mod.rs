//! Characters of `W`, the Hecke modules `E(u)`, their normalized traces and
//! the leading coefficients `c_{w,E}` and `a_E`.
//!
//! For every `E` there is an integer `a_E` such that
//! `v^{-l(w)} tr(T_w, E(u)) = (-1)^{l(w)} c_{w,E} v^{-a_E} + (higher powers of v)`
//! for all `w`, with some `c_{w,E} != 0`. The sign `(-1)^{l(w)}` is removed
//! when `c` is extracted, so `alpha_w = sum_E c_{w,E} E` carries none.

mod chartable;
mod modules;

pub use chartable::{murnaghan_nakayama, partition_label, partitions, w_character_table, WCharTable};
pub use modules::{build_hecke_modules, HModule, LMatrix};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::WeylGroup;
use crate::error::{Error, Result};
use crate::klcells::{CellPartition, KLData};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, Serialize)]
pub struct LeadingData {
    pub labels: Vec<String>,
    pub a: Vec<usize>,
    /// `c[w][e] = c_{w,E}`.
    pub c: Vec<Vec<i64>>,
    /// `traces[e][w] = tr(T_w, E(u))`.
    #[serde(skip)]
    pub traces: Vec<Vec<LaurentPoly>>,
}

impl LeadingData {
    /// `alpha_w` as a coefficient vector over the irreducible characters.
    pub fn alpha(&self, w: usize) -> &[i64] {
        &self.c[w]
    }

    pub fn alpha_is_nonzero(&self, w: usize) -> bool {
        self.c[w].iter().any(|&c| c != 0)
    }

    pub fn c(&self, w: usize, e: usize) -> i64 {
        self.c[w][e]
    }
}

/// Per module: `a_E`, the leading coefficients and the raw traces.
type ModuleLeading = (usize, Vec<i64>, Vec<LaurentPoly>);

pub fn leading_data(g: &WeylGroup, modules: &[HModule]) -> Result<LeadingData> {
    let per_module: Vec<Result<ModuleLeading>> = modules
        .par_iter()
        .map(|m| {
            let traces: Vec<LaurentPoly> =
                m.all_element_matrices(g).iter().map(LMatrix::trace).collect();
            let normalized: Vec<LaurentPoly> = traces
                .iter()
                .enumerate()
                .map(|(w, t)| t.shift(-(g.length(w) as i32)))
                .collect();
            let lowest = normalized
                .iter()
                .filter_map(LaurentPoly::valuation)
                .min()
                .ok_or_else(|| Error::LeadingTermMismatch(m.label.clone()))?;
            if lowest > 0 {
                return Err(Error::LeadingTermMismatch(m.label.clone()));
            }
            let a_e = (-lowest) as usize;
            let c = normalized
                .iter()
                .enumerate()
                .map(|(w, t)| {
                    let raw: BigInt = t.coeff(lowest);
                    let sign = if g.length(w) % 2 == 0 { 1 } else { -1 };
                    raw.to_i64()
                        .map(|x| sign * x)
                        .ok_or_else(|| Error::LeadingTermMismatch(m.label.clone()))
                })
                .collect::<Result<Vec<i64>>>()?;
            Ok((a_e, c, traces))
        })
        .collect();

    let mut a = Vec::new();
    let mut by_module = Vec::new();
    let mut traces = Vec::new();
    for r in per_module {
        let (a_e, c, t) = r?;
        a.push(a_e);
        by_module.push(c);
        traces.push(t);
    }
    let c = (0..g.order())
        .map(|w| by_module.iter().map(|col| col[w]).collect())
        .collect();
    Ok(LeadingData {
        labels: modules.iter().map(|m| m.label.clone()).collect(),
        a,
        c,
        traces,
    })
}

/// Everything in this module for one group.
#[derive(Debug, Clone)]
pub struct HeckeCharacters {
    pub table: WCharTable,
    pub modules: Vec<HModule>,
    pub leading: LeadingData,
}

impl HeckeCharacters {
    pub fn compute(kl: &KLData, cells: &CellPartition) -> Result<Self> {
        let g = kl.group();
        let table = w_character_table(g);
        let modules = build_hecke_modules(g, kl, cells, &table)?;
        let leading = leading_data(g, &modules)?;
        Ok(HeckeCharacters { table, modules, leading })
    }

    /// Elements where the `v = 1` trace differs from the character table.
    pub fn specialization_mismatches(&self, g: &WeylGroup) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for (e, traces) in self.leading.traces.iter().enumerate() {
            for (w, t) in traces.iter().enumerate() {
                if t.at_one() != BigInt::from(self.table.value(e, w)) {
                    out.push((self.table.labels[e].clone(), w));
                }
            }
        }
        let _ = g;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klcells::{compute_cells, compute_kl, near_involutions};
    use crate::rootdata::CartanType;

    fn hecke(t: CartanType) -> (WeylGroup, KLData, CellPartition, HeckeCharacters) {
        let g = WeylGroup::generate(t);
        let kl = compute_kl(&g).unwrap();
        let cells = compute_cells(&kl);
        let hc = HeckeCharacters::compute(&kl, &cells).unwrap();
        (g, kl, cells, hc)
    }

    #[test]
    fn trivial_and_sign_leading_data() {
        for t in [CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2] {
            let (g, _, _, hc) = hecke(t);
            let triv = hc.table.trivial();
            let sgn = hc.table.sign;
            assert_eq!(hc.leading.a[triv], 0, "{t}");
            assert_eq!(hc.leading.c(0, triv), 1);
            assert_eq!(hc.leading.a[sgn], g.nu(), "{t}");
            assert_eq!(hc.leading.c(g.w0(), sgn), 1);
            let alpha_e: Vec<i64> = (0..hc.table.len()).map(|e| i64::from(e == triv)).collect();
            assert_eq!(hc.leading.alpha(0), alpha_e.as_slice());
        }
    }

    #[test]
    fn specialization_matches_character_table() {
        for t in [CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2] {
            let (g, _, _, hc) = hecke(t);
            assert!(hc.specialization_mismatches(&g).is_empty(), "{t}");
        }
    }

    #[test]
    fn a2_alpha_of_simple_reflections_is_reflection_character() {
        let (g, _, _, hc) = hecke(CartanType::A2);
        let refl = hc.table.index_of("[2,1]").unwrap();
        for w in ["1", "2"] {
            let w = g.parse_word(w).unwrap();
            let expected: Vec<i64> = (0..3).map(|e| i64::from(e == refl)).collect();
            assert_eq!(hc.leading.alpha(w), expected.as_slice());
        }
    }

    #[test]
    fn alpha_nonzero_exactly_on_near_involutions() {
        for t in [CartanType::A3, CartanType::B2, CartanType::G2] {
            let (g, kl, cells, hc) = hecke(t);
            let j = near_involutions(&kl, &cells);
            for w in 0..g.order() {
                assert_eq!(hc.leading.alpha_is_nonzero(w), j.contains(w), "{t} {}", g.elt(w));
            }
        }
    }

    #[test]
    fn type_a_module_a_values_match_cells() {
        let (_, kl, cells, hc) = hecke(CartanType::A3);
        // each cell module E has a_E equal to the a-value of its two-sided cell
        let mut from_cells: Vec<usize> = cells.a_value.clone();
        let mut from_modules = hc.leading.a.clone();
        from_cells.sort_unstable();
        from_modules.sort_unstable();
        assert_eq!(from_cells, from_modules);
        let _ = kl;
    }

    #[test]
    fn a2_reflection_module_satisfies_relations() {
        let (g, _, _, hc) = hecke(CartanType::A2);
        let refl = hc.modules.iter().find(|m| m.label == "[2,1]").unwrap();
        assert_eq!(refl.dim, 2);
        refl.verify_relations(&g).unwrap();
    }
}
