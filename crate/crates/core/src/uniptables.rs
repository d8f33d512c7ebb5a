//! Transcribed tables for the unipotent characters of each supported type:
//! degrees, the multiplicities `(rho : R_{alpha_w})`, the `M_w` weight
//! templates with their closed-form dimensions, the decompositions of the
//! reductions, and the duality involution on the near involutions.
//!
//! Tables ship as JSON under `data/` and are compiled in. Setting
//! `CELLRED_DATA_DIR` makes the loader read `<dir>/<TYPE>.json` instead.
//! Every load re-verifies the internal consistency of the data.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::coxeter::WeylGroup;
use crate::error::{Error, Result};
use crate::heckechar::{partitions, LeadingData, WCharTable};
use crate::poly::IntPoly;
use crate::rootdata::{build_root_system, CartanType, Weight};
use crate::weylmod;

pub const DATA_DIR_ENV: &str = "CELLRED_DATA_DIR";

fn builtin(t: CartanType) -> &'static str {
    match t.to_string().as_str() {
        "A1" => include_str!("../data/A1.json"),
        "A2" => include_str!("../data/A2.json"),
        "A3" => include_str!("../data/A3.json"),
        "A4" => include_str!("../data/A4.json"),
        "B2" => include_str!("../data/B2.json"),
        "G2" => include_str!("../data/G2.json"),
        other => unreachable!("no table for {other}"),
    }
}

/// One coordinate `c0 + c1 p` per fundamental weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightTemplate(pub Vec<(i64, i64)>);

impl WeightTemplate {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn instantiate(&self, p: i64) -> Weight {
        Weight(self.0.iter().map(|&(c0, c1)| c0 + c1 * p).collect())
    }

    /// Indices (1-based) whose coordinate grows with `p`.
    pub fn growing_coords(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &(_, c1))| c1 != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Renders like `(p-3,0)`.
    pub fn render(&self) -> String {
        let coords: Vec<String> = self
            .0
            .iter()
            .map(|&(c0, c1)| match (c0, c1) {
                (c0, 0) => c0.to_string(),
                (0, 1) => "p".into(),
                (c0, 1) if c0 > 0 => format!("p+{c0}"),
                (c0, 1) => format!("p{c0}"),
                (c0, c1) => format!("{c1}p{c0:+}"),
            })
            .collect();
        format!("({})", coords.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwTerm {
    pub coef: i64,
    pub template: WeightTemplate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnipotentChar {
    pub label: String,
    pub degree: IntPoly,
    pub derived: bool,
}

#[derive(Debug, Deserialize)]
struct RawUnipotent {
    label: String,
    degree: String,
    #[allow(dead_code)]
    #[serde(rename = "ref")]
    location: Option<String>,
}

#[derive(Debug, Deserialize)]
struct RawTables {
    #[serde(rename = "type")]
    cartan_type: String,
    #[serde(default)]
    derived: bool,
    #[serde(default)]
    refs: BTreeMap<String, String>,
    min_prime: Option<u64>,
    proximity_bound: i64,
    near_involutions: Option<Vec<String>>,
    unipotent: Option<Vec<RawUnipotent>>,
    w_char: Option<BTreeMap<String, String>>,
    r_alpha: Option<BTreeMap<String, BTreeMap<String, i64>>>,
    m_w: Option<BTreeMap<String, Vec<MwTerm>>>,
    delta: Option<BTreeMap<String, String>>,
    decomp: Option<BTreeMap<String, BTreeMap<String, i64>>>,
    duality: Option<Vec<(String, String)>>,
}

/// Tables for one type with words resolved to group indices. Slots the
/// source does not provide are `None`.
#[derive(Debug, Clone, Serialize)]
pub struct UnipTables {
    pub cartan_type: CartanType,
    /// True when the tables were generated from computed Hecke data rather
    /// than transcribed.
    pub derived: bool,
    /// Source location per table, as recorded in the data file.
    pub refs: BTreeMap<String, String>,
    pub min_prime: Option<u64>,
    pub proximity_bound: i64,
    /// Display word for every element mentioned in the data.
    pub words: BTreeMap<usize, String>,
    pub near_involutions: Option<Vec<usize>>,
    pub unipotent: Vec<UnipotentChar>,
    /// Unipotent label to W-character label (type A).
    pub w_char: Option<BTreeMap<String, String>>,
    pub r_alpha: Option<BTreeMap<usize, BTreeMap<String, i64>>>,
    pub m_w: Option<BTreeMap<usize, Vec<MwTerm>>>,
    pub delta: Option<BTreeMap<usize, IntPoly>>,
    pub decomp: Option<BTreeMap<String, BTreeMap<usize, i64>>>,
    pub duality: Option<Vec<(usize, usize)>>,
}

fn integrity(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::DataIntegrityFailure { location: location.into(), message: message.into() }
}

/// Loads and verifies the tables for `t`.
pub fn load_tables(t: CartanType) -> Result<UnipTables> {
    let text = match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => std::fs::read_to_string(PathBuf::from(dir).join(format!("{t}.json")))?,
        None => builtin(t).to_string(),
    };
    parse_tables(t, &text)
}

/// Parses and verifies tables from JSON text.
pub fn parse_tables(t: CartanType, text: &str) -> Result<UnipTables> {
    let raw: RawTables =
        serde_json::from_str(text).map_err(|e| integrity(format!("{t}.json"), e.to_string()))?;
    if raw.cartan_type != t.to_string() {
        return Err(integrity("type", format!("file declares {}, expected {t}", raw.cartan_type)));
    }
    let g = WeylGroup::generate(t);
    let mut words = BTreeMap::new();
    let mut resolve = |table: &str, word: &str| -> Result<usize> {
        let w = g.parse_word(word).map_err(|e| integrity(table, e.to_string()))?;
        words.entry(w).or_insert_with(|| word.to_string());
        Ok(w)
    };

    let near_involutions = raw
        .near_involutions
        .as_ref()
        .map(|list| list.iter().map(|w| resolve("near_involutions", w)).collect::<Result<Vec<_>>>())
        .transpose()?;
    let r_alpha = raw
        .r_alpha
        .map(|rows| {
            rows.into_iter()
                .map(|(w, row)| Ok((resolve("r_alpha", &w)?, row)))
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .transpose()?;
    let m_w = raw
        .m_w
        .map(|rows| {
            rows.into_iter()
                .map(|(w, terms)| Ok((resolve("m_w", &w)?, terms)))
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .transpose()?;
    let delta = raw
        .delta
        .map(|rows| {
            rows.into_iter()
                .map(|(w, f)| {
                    let poly: IntPoly = f.parse().map_err(|e: Error| integrity(format!("delta {w}"), e.to_string()))?;
                    Ok((resolve("delta", &w)?, poly))
                })
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .transpose()?;
    let decomp = raw
        .decomp
        .map(|rows| {
            rows.into_iter()
                .map(|(rho, row)| {
                    let row = row
                        .into_iter()
                        .map(|(w, m)| Ok((resolve("decomp", &w)?, m)))
                        .collect::<Result<BTreeMap<_, _>>>()?;
                    Ok((rho, row))
                })
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .transpose()?;
    let duality = raw
        .duality
        .map(|pairs| {
            pairs
                .into_iter()
                .map(|(a, b)| Ok((resolve("duality", &a)?, resolve("duality", &b)?)))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let unipotent = raw
        .unipotent
        .unwrap_or_default()
        .into_iter()
        .map(|u| {
            let degree = u
                .degree
                .parse()
                .map_err(|e: Error| integrity(format!("degree of {}", u.label), e.to_string()))?;
            Ok(UnipotentChar { label: u.label, degree, derived: false })
        })
        .collect::<Result<Vec<_>>>()?;

    let tables = UnipTables {
        cartan_type: t,
        derived: raw.derived,
        refs: raw.refs,
        min_prime: raw.min_prime,
        proximity_bound: raw.proximity_bound,
        words,
        near_involutions,
        unipotent,
        w_char: raw.w_char,
        r_alpha,
        m_w,
        delta,
        decomp,
        duality,
    };
    tables.verify(&g)?;
    Ok(tables)
}

impl UnipTables {
    pub fn has_mw_data(&self) -> bool {
        self.m_w.is_some()
    }

    /// Display word for `w`: the data's spelling when present, otherwise
    /// the canonical word.
    pub fn word(&self, g: &WeylGroup, w: usize) -> String {
        self.words.get(&w).cloned().unwrap_or_else(|| g.elt(w).to_string())
    }

    pub fn labels(&self) -> Vec<&str> {
        self.unipotent.iter().map(|u| u.label.as_str()).collect()
    }

    pub fn degree(&self, label: &str) -> Option<&IntPoly> {
        self.unipotent.iter().find(|u| u.label == label).map(|u| &u.degree)
    }

    /// `(rho : R_{alpha_w})`, zero when `w` has no row.
    pub fn r_alpha_multiplicity(&self, label: &str, w: usize) -> Result<i64> {
        if self.degree(label).is_none() {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        let rows = self
            .r_alpha
            .as_ref()
            .ok_or_else(|| Error::UnknownLabel(format!("{label} (no multiplicity table)")))?;
        Ok(rows.get(&w).and_then(|row| row.get(label)).copied().unwrap_or(0))
    }

    /// Coefficients of `z_rho = sum_w (rho : R_{alpha_w}) t_w`.
    pub fn z_coefficients(&self, label: &str) -> Result<BTreeMap<usize, i64>> {
        let rows = self
            .r_alpha
            .as_ref()
            .ok_or_else(|| Error::UnknownLabel(format!("{label} (no multiplicity table)")))?;
        if self.degree(label).is_none() {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        Ok(rows
            .iter()
            .filter_map(|(&w, row)| row.get(label).map(|&m| (w, m)))
            .filter(|&(_, m)| m != 0)
            .collect())
    }

    fn verify(&self, g: &WeylGroup) -> Result<()> {
        let nu = g.nu();
        if !self.unipotent.is_empty() {
            let by_label: BTreeMap<&str, &IntPoly> =
                self.unipotent.iter().map(|u| (u.label.as_str(), &u.degree)).collect();
            if by_label.len() != self.unipotent.len() {
                return Err(integrity("unipotent", "duplicate label"));
            }
            if by_label.get("1") != Some(&&IntPoly::one()) {
                return Err(integrity("unipotent", "degree of `1` must be 1"));
            }
            if by_label.get("S") != Some(&&IntPoly::t_pow(nu)) {
                return Err(integrity("unipotent", format!("degree of `S` must be t^{nu}")));
            }
            for u in &self.unipotent {
                if !u.degree.leading_coeff().is_some_and(|c| c.is_positive()) {
                    return Err(integrity(format!("degree of {}", u.label), "leading coefficient must be positive"));
                }
            }
        }
        let labels: BTreeSet<&str> = self.labels().into_iter().collect();
        let j: Option<BTreeSet<usize>> = self.near_involutions.as_ref().map(|v| v.iter().copied().collect());
        let check_keys = |table: &str, keys: BTreeSet<usize>| -> Result<()> {
            match &j {
                Some(j) if *j != keys => Err(integrity(table, "keys differ from the near-involution list")),
                _ => Ok(()),
            }
        };

        if let Some(rows) = &self.r_alpha {
            check_keys("r_alpha", rows.keys().copied().collect())?;
            let mut seen = BTreeSet::new();
            for (w, row) in rows {
                let loc = format!("r_alpha {}", self.word(g, *w));
                if row.values().all(|&m| m == 0) {
                    return Err(integrity(loc, "empty row"));
                }
                for (label, &m) in row {
                    if !labels.contains(label.as_str()) {
                        return Err(integrity(loc, format!("unknown label `{label}`")));
                    }
                    if m < 0 {
                        return Err(integrity(loc, "negative multiplicity"));
                    }
                    seen.insert(label.as_str());
                }
            }
            if let Some(missing) = labels.iter().find(|l| !seen.contains(*l)) {
                return Err(integrity("r_alpha", format!("`{missing}` occurs in no row")));
            }
        }

        if let (Some(decomp), Some(rows)) = (&self.decomp, &self.r_alpha) {
            for label in &labels {
                let expected: BTreeMap<usize, i64> = rows
                    .iter()
                    .filter_map(|(&w, row)| row.get(*label).map(|&m| (w, m)))
                    .filter(|&(_, m)| m != 0)
                    .collect();
                let given = decomp.get(*label).cloned().unwrap_or_default();
                if given != expected {
                    return Err(integrity(
                        format!("decomp {label}"),
                        "differs from the transpose of the multiplicity table",
                    ));
                }
            }
            if let Some(extra) = decomp.keys().find(|k| !labels.contains(k.as_str())) {
                return Err(integrity("decomp", format!("unknown label `{extra}`")));
            }
        }

        if let Some(m_w) = &self.m_w {
            check_keys("m_w", m_w.keys().copied().collect())?;
            let rs = build_root_system(self.cartan_type);
            for (w, terms) in m_w {
                let loc = format!("m_w {}", self.word(g, *w));
                if terms.is_empty() {
                    return Err(integrity(loc, "empty combination"));
                }
                let mut total = IntPoly::zero();
                for term in terms {
                    if term.coef.abs() != 1 {
                        return Err(integrity(loc, "coefficients must be +1 or -1"));
                    }
                    if term.template.rank() != g.rank() {
                        return Err(integrity(loc, "template has the wrong rank"));
                    }
                    let f = weylmod::dim_template(&rs, &term.template)
                        .map_err(|e| integrity(loc.clone(), e.to_string()))?;
                    total = total + f.scale(&num_rational::BigRational::from_integer(term.coef.into()));
                }
                if !total.leading_coeff().is_some_and(|c| c.is_positive()) {
                    return Err(integrity(loc, "dimension polynomial must have positive leading coefficient"));
                }
            }
            let computed = weylmod::min_admissible_prime(m_w.values().flatten().map(|t| &t.template));
            if self.min_prime != Some(computed) {
                return Err(integrity(
                    "min_prime",
                    format!("recorded {:?}, templates force {computed}", self.min_prime),
                ));
            }
        }

        if let Some(delta) = &self.delta {
            check_keys("delta", delta.keys().copied().collect())?;
        }

        if let Some(pairs) = &self.duality {
            let mut partner = BTreeMap::new();
            for &(a, b) in pairs {
                for (x, y) in [(a, b), (b, a)] {
                    if partner.insert(x, y).is_some_and(|old| old != y) {
                        return Err(integrity("duality", format!("{} has two partners", self.word(g, x))));
                    }
                }
            }
            check_keys("duality", partner.keys().copied().collect())?;
        }

        if let Some(map) = &self.w_char {
            if !self.cartan_type.is_type_a() {
                return Err(integrity("w_char", "only type A tables carry a character bijection"));
            }
            let targets: BTreeSet<&String> = map.values().collect();
            let n = self.cartan_type.rank() + 1;
            let expected: BTreeSet<String> =
                partitions(n).iter().map(|l| crate::heckechar::partition_label(l)).collect();
            if targets.len() != map.len() || targets.into_iter().cloned().collect::<BTreeSet<_>>() != expected {
                return Err(integrity("w_char", "must be a bijection onto the partitions"));
            }
            if map.keys().map(String::as_str).collect::<BTreeSet<_>>() != labels {
                return Err(integrity("w_char", "domain must be the unipotent labels"));
            }
        }
        Ok(())
    }

    /// Elements of `M_w` whose template strays from `(p-1) lambda_{cl(w)}`:
    /// either the growing coordinates are not `cl(w)`, or some coordinate
    /// differs by more than the proximity bound.
    pub fn proximity_violations(&self, g: &WeylGroup) -> Vec<String> {
        let Some(m_w) = &self.m_w else { return Vec::new() };
        let mut out = Vec::new();
        for (&w, terms) in m_w {
            let cl: BTreeSet<usize> = g.left_descent_set(w).into_iter().collect();
            for term in terms {
                let tmpl = &term.template;
                let pattern_ok = tmpl.growing_coords() == cl && tmpl.0.iter().all(|&(_, c1)| c1 == 0 || c1 == 1);
                let offset_ok = tmpl
                    .0
                    .iter()
                    .enumerate()
                    .all(|(i, &(c0, _))| (c0 + i64::from(cl.contains(&(i + 1)))).abs() <= self.proximity_bound);
                if !(pattern_ok && offset_ok) {
                    out.push(format!("{}: {}", self.word(g, w), tmpl.render()));
                }
            }
        }
        out
    }
}

/// Degree of the unipotent character attached to the partition `lambda` of
/// `n`: `q^{n(lambda)} prod_{i<=n} (q^i - 1) / prod_{hooks} (q^h - 1)`.
pub fn hook_degree(lambda: &[usize]) -> IntPoly {
    let n: usize = lambda.iter().sum();
    let q_minus_one = |k: usize| IntPoly::t_pow(k) - IntPoly::one();
    let n_lambda: usize = lambda.iter().enumerate().map(|(i, &l)| i * l).sum();
    let num = (1..=n).fold(IntPoly::t_pow(n_lambda), |acc, i| acc * q_minus_one(i));
    let conj: Vec<usize> = (0..lambda.first().copied().unwrap_or(0))
        .map(|j| lambda.iter().filter(|&&l| l > j).count())
        .collect();
    let den = lambda.iter().enumerate().fold(IntPoly::one(), |acc, (i, &row)| {
        (0..row).fold(acc, |acc, j| acc * q_minus_one(row - j + conj[j] - i - 1))
    });
    num.div_exact(&den).expect("hook formula divides exactly")
}

/// Unipotent label used for a partition in the generated type-A tables.
pub fn type_a_label(lambda: &[usize]) -> String {
    let n: usize = lambda.iter().sum();
    if lambda.len() == 1 {
        "1".into()
    } else if lambda.len() == n {
        "S".into()
    } else {
        crate::heckechar::partition_label(lambda)
    }
}

/// Fills the slots of a type-A table that the data leaves empty using the
/// bijection between unipotent characters and partitions: degrees from the
/// hook formula, the near-involution list from the Hecke data and the
/// multiplicity row of `w` from `c_{w,E}`. Existing slots are kept.
pub fn complete_type_a(
    tables: &mut UnipTables,
    g: &WeylGroup,
    table: &WCharTable,
    leading: &LeadingData,
) -> Result<()> {
    let t = tables.cartan_type;
    if !t.is_type_a() {
        return Err(Error::UnsupportedType(format!("{t} has no partition labelling")));
    }
    let n = t.rank() + 1;
    if tables.unipotent.is_empty() {
        tables.unipotent = partitions(n)
            .iter()
            .map(|l| UnipotentChar { label: type_a_label(l), degree: hook_degree(l), derived: true })
            .collect();
        tables.w_char = Some(
            partitions(n)
                .iter()
                .map(|l| (type_a_label(l), crate::heckechar::partition_label(l)))
                .collect(),
        );
        tables.derived = true;
    }
    let Some(w_char) = tables.w_char.clone() else {
        return Err(integrity("w_char", "type A tables need a character bijection"));
    };
    if tables.near_involutions.is_none() {
        tables.near_involutions = Some((0..g.order()).filter(|&w| leading.alpha_is_nonzero(w)).collect());
    }
    if tables.r_alpha.is_none() {
        let mut rows = BTreeMap::new();
        for w in 0..g.order() {
            let row: BTreeMap<String, i64> = w_char
                .iter()
                .filter_map(|(rho, e)| {
                    let idx = table.index_of(e)?;
                    let c = leading.c(w, idx);
                    (c != 0).then(|| (rho.clone(), c))
                })
                .collect();
            if !row.is_empty() {
                rows.insert(w, row);
            }
        }
        tables.r_alpha = Some(rows);
    }
    tables.verify(g)
}
