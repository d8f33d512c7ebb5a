//! Dimension polynomials of the `M_w`: the Weyl dimension formula applied
//! to weights whose coordinates are affine in `p`, the polynomials `pi_w`,
//! their lowest degrees `c(w)`, and the search for the duality involution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::coxeter::WeylGroup;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rootdata::RootSystem;
use crate::uniptables::{UnipTables, WeightTemplate};

/// Primes at which every symbolic dimension is compared with the numeric one.
pub const SPOT_PRIMES: [i64; 4] = [5, 7, 11, 13];

/// `dim V(lambda(p))` as a polynomial in `t = p`, by expanding the Weyl
/// product symbolically.
pub fn dim_template(rs: &RootSystem, tmpl: &WeightTemplate) -> Result<IntPoly> {
    if tmpl.rank() != rs.rank() || tmpl.0.iter().any(|&(c0, c1)| c1 < 0 || (c1 == 0 && c0 < 0)) {
        return Err(Error::NonDominantTemplate(tmpl.render()));
    }
    let mut num = IntPoly::one();
    let mut den = BigInt::one();
    for (pair, &rho) in rs.coroot_pairings.iter().zip(&rs.weyl_vector_pairings) {
        let (c0, c1) = pair
            .iter()
            .zip(&tmpl.0)
            .fold((0, 0), |(a0, a1), (&k, &(c0, c1))| (a0 + k * (c0 + 1), a1 + k * c1));
        num = num * IntPoly::affine(c0, c1);
        den *= rho;
    }
    let f = num.scale(&BigRational::new(BigInt::one(), den));
    for p in SPOT_PRIMES {
        let lambda = tmpl.instantiate(p);
        if lambda.is_dominant() {
            let numeric = BigRational::from_integer(rs.weyl_dim(&lambda)?);
            debug_assert_eq!(f.eval_int(p), numeric, "template {} at p = {p}", tmpl.render());
        }
    }
    Ok(f)
}

/// Smallest prime at which every template is dominant and restricted.
pub fn min_admissible_prime<'a>(templates: impl IntoIterator<Item = &'a WeightTemplate> + Clone) -> u64 {
    (2u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            templates.clone().into_iter().all(|t| {
                let w = t.instantiate(p as i64);
                w.is_dominant() && w.is_restricted(p)
            })
        })
        .expect("some prime admits every template")
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaPoly {
    pub w: usize,
    /// `pi_w`, with `pi_w(p) = dim M_w`.
    pub pi: IntPoly,
    /// Lowest degree of `pi_w`.
    pub c: usize,
}

/// `pi_w` for every `w` with an `M_w` definition.
pub fn delta_table(tables: &UnipTables, rs: &RootSystem) -> Result<BTreeMap<usize, DeltaPoly>> {
    let m_w = tables
        .m_w
        .as_ref()
        .ok_or_else(|| Error::MissingMwData(tables.cartan_type.to_string()))?;
    m_w.iter()
        .map(|(&w, terms)| {
            let mut pi = IntPoly::zero();
            for term in terms {
                let f = dim_template(rs, &term.template)?;
                pi = pi + f.scale(&BigRational::from_integer(term.coef.into()));
            }
            let c = pi.lowest_degree()?;
            Ok((w, DeltaPoly { w, pi, c }))
        })
        .collect()
}

/// Elements of `J` at which `pi_w(p) <= 0` for some `p` from the minimum
/// admissible prime up to `upto`.
pub fn positivity_failures(deltas: &BTreeMap<usize, DeltaPoly>, min_prime: u64, upto: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for d in deltas.values() {
        for p in (min_prime..=upto).filter(|&p| is_prime(p)) {
            if d.pi.eval_int(p as i64) <= BigRational::from_integer(0.into()) {
                out.push((d.w, p));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualPair {
    pub w: usize,
    pub partner: usize,
    /// `+1` or `-1` in `t^nu pi_w(1/t) = sign * pi_partner(t)`.
    pub sign: i8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DualityResult {
    /// One entry per element, in index order, for elements with a unique partner.
    pub pairs: Vec<DualPair>,
    pub no_match: Vec<usize>,
    pub ambiguous: Vec<usize>,
    /// Unique matches that do not pair back.
    pub not_involutive: Vec<usize>,
}

impl DualityResult {
    pub fn is_perfect_involution(&self) -> bool {
        self.no_match.is_empty() && self.ambiguous.is_empty() && self.not_involutive.is_empty()
    }

    pub fn partner(&self, w: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.w == w).map(|p| p.partner)
    }
}

/// Finds every `w~` with `t^nu pi_w(1/t) = +- pi_{w~}(t)` and
/// `cl(w~) = I - cl(w)`.
pub fn find_duality(g: &WeylGroup, deltas: &BTreeMap<usize, DeltaPoly>) -> Result<DualityResult> {
    let nu = g.nu();
    let all: Vec<usize> = (1..=g.rank()).collect();
    let mut result = DualityResult::default();
    for (&w, d) in deltas {
        let reversed = d.pi.reverse_at(nu)?;
        let complement: Vec<usize> = {
            let cl = g.left_descent_set(w);
            all.iter().copied().filter(|i| !cl.contains(i)).collect()
        };
        let matches: Vec<(usize, i8)> = deltas
            .iter()
            .filter(|(&x, _)| g.left_descent_set(x) == complement)
            .filter_map(|(&x, e)| {
                if e.pi == reversed {
                    Some((x, 1))
                } else if e.pi == -reversed.clone() {
                    Some((x, -1))
                } else {
                    None
                }
            })
            .collect();
        match matches.as_slice() {
            [] => result.no_match.push(w),
            [(x, sign)] => result.pairs.push(DualPair { w, partner: *x, sign: *sign }),
            _ => result.ambiguous.push(w),
        }
    }
    let partner: BTreeMap<usize, usize> = result.pairs.iter().map(|p| (p.w, p.partner)).collect();
    result.not_involutive = partner
        .iter()
        .filter(|(w, x)| partner.get(x) != Some(w))
        .map(|(&w, _)| w)
        .collect();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, CartanType};
    use crate::uniptables::load_tables;

    fn tmpl(coords: &[(i64, i64)]) -> WeightTemplate {
        WeightTemplate(coords.to_vec())
    }

    #[test]
    fn symbolic_dimensions() {
        let b2 = build_root_system(CartanType::B2);
        assert_eq!(dim_template(&b2, &tmpl(&[(-3, 1), (0, 0)])).unwrap().to_string(), "t(t-1)(t-2)/6");
        assert_eq!(dim_template(&b2, &tmpl(&[(-1, 1), (-1, 1)])).unwrap(), IntPoly::t_pow(4));
        assert_eq!(dim_template(&b2, &tmpl(&[(0, 0), (0, 0)])).unwrap(), IntPoly::one());
        let g2 = build_root_system(CartanType::G2);
        assert_eq!(
            dim_template(&g2, &tmpl(&[(-4, 1), (1, 0)])).unwrap(),
            "t(t^2-1)(t^2-9)/30".parse().unwrap()
        );
        assert!(matches!(
            dim_template(&b2, &tmpl(&[(-1, 0), (0, 0)])),
            Err(Error::NonDominantTemplate(_))
        ));
    }

    #[test]
    fn delta_tables_match_closed_forms() {
        for t in [CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2] {
            let tables = load_tables(t).unwrap();
            let deltas = delta_table(&tables, &build_root_system(t)).unwrap();
            let closed = tables.delta.as_ref().unwrap();
            for (w, d) in &deltas {
                assert_eq!(&d.pi, &closed[w], "{t}");
            }
        }
        let a4 = load_tables(CartanType::A4).unwrap();
        assert!(matches!(
            delta_table(&a4, &build_root_system(CartanType::A4)),
            Err(Error::MissingMwData(_))
        ));
    }

    #[test]
    fn a3_specific_deltas() {
        let tables = load_tables(CartanType::A3).unwrap();
        let g = WeylGroup::generate(CartanType::A3);
        let deltas = delta_table(&tables, &build_root_system(CartanType::A3)).unwrap();
        let pi = |w: &str| deltas[&g.parse_word(w).unwrap()].pi.to_string();
        assert_eq!(pi("2"), "t(2t^2+1)/3");
        assert_eq!(pi("13"), "t^2(5t^2+1)/6");
    }

    #[test]
    fn duality_recovers_involutions() {
        for t in [CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2, CartanType::G2] {
            let tables = load_tables(t).unwrap();
            let g = WeylGroup::generate(t);
            let deltas = delta_table(&tables, &build_root_system(t)).unwrap();
            let found = find_duality(&g, &deltas).unwrap();
            assert!(found.is_perfect_involution(), "{t}");
            assert!(found.pairs.iter().all(|p| p.sign == 1), "{t}");
            for &(a, b) in tables.duality.as_ref().unwrap() {
                assert_eq!(found.partner(a), Some(b), "{t}");
            }
        }
    }

    #[test]
    fn minimum_primes() {
        for (t, p) in [
            (CartanType::A1, 2),
            (CartanType::A2, 2),
            (CartanType::A3, 3),
            (CartanType::B2, 3),
            (CartanType::G2, 5),
        ] {
            let tables = load_tables(t).unwrap();
            let templates = tables.m_w.as_ref().unwrap().values().flatten().map(|m| &m.template);
            assert_eq!(min_admissible_prime(templates), p, "{t}");
        }
    }

    #[test]
    fn lowest_degrees_are_positive_values() {
        let tables = load_tables(CartanType::G2).unwrap();
        let deltas = delta_table(&tables, &build_root_system(CartanType::G2)).unwrap();
        assert!(positivity_failures(&deltas, 5, 97).is_empty());
    }
}
