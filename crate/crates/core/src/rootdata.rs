//! Cartan data, weights and the Weyl dimension formula.
//!
//! Weights live in fundamental-weight coordinates, roots in simple-root
//! coordinates and coroots in simple-coroot coordinates. Pairings between
//! a weight and a coroot are then plain dot products.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    G,
}

/// One of the six supported split types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub const A1: CartanType = CartanType { family: Family::A, rank: 1 };
    pub const A2: CartanType = CartanType { family: Family::A, rank: 2 };
    pub const A3: CartanType = CartanType { family: Family::A, rank: 3 };
    pub const A4: CartanType = CartanType { family: Family::A, rank: 4 };
    pub const B2: CartanType = CartanType { family: Family::B, rank: 2 };
    pub const G2: CartanType = CartanType { family: Family::G, rank: 2 };

    /// Every supported instance, in report order.
    pub const ALL: [CartanType; 6] = [
        CartanType::A1,
        CartanType::A2,
        CartanType::A3,
        CartanType::A4,
        CartanType::B2,
        CartanType::G2,
    ];

    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let t = CartanType { family, rank };
        if Self::ALL.contains(&t) {
            Ok(t)
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }

    /// Cartan matrix `C[i][j] = <alpha_i^vee, alpha_j>`.
    ///
    /// For B2 and G2 the first simple root is the short one; this is the
    /// labelling under which the dimension polynomials
    /// `ab(a+b)(a+2b)/6` and `ab(a+b)(a+2b)(a+3b)(2a+3b)/120` hold.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect(),
            Family::B => vec![vec![2, -2], vec![-1, 2]],
            Family::G => vec![vec![2, -3], vec![-1, 2]],
        }
    }

    /// Squared lengths `(alpha_i, alpha_i)` of the simple roots, scaled so the
    /// short roots have length 2.
    pub fn simple_root_norms(&self) -> Vec<i64> {
        match self.family {
            Family::A => vec![2; self.rank],
            Family::B => vec![2, 4],
            Family::G => vec![2, 6],
        }
    }

    /// Number of positive roots, which is also the length of the longest element.
    pub fn nu(&self) -> usize {
        match (self.family, self.rank) {
            (Family::A, n) => n * (n + 1) / 2,
            (Family::B, _) => 4,
            (Family::G, _) => 6,
        }
    }

    pub fn weyl_order(&self) -> usize {
        match (self.family, self.rank) {
            (Family::A, n) => (1..=n + 1).product(),
            (Family::B, _) => 8,
            (Family::G, _) => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('G') => Family::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        CartanType::new(family, rank).map_err(|_| Error::UnsupportedType(s.to_string()))
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A weight `sum n_i varpi_i`, stored by its fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `varpi_i` for a 1-based index `i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    /// `lambda_J = sum_{i in J} varpi_i` for 1-based indices.
    pub fn indicator<I: IntoIterator<Item = usize>>(rank: usize, subset: I) -> Self {
        let mut v = vec![0; rank];
        for i in subset {
            v[i - 1] = 1;
        }
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&n| n >= 0)
    }

    pub fn is_restricted(&self, p: u64) -> bool {
        self.0.iter().all(|&n| n >= 0 && (n as u64) < p)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, n) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// Row `k` holds `<varpi_i, beta_k^vee>` for every `i`, i.e. the
    /// simple-coroot coordinates of the coroot of the `k`-th positive root.
    pub coroot_pairings: Vec<Vec<i64>>,
    /// `<rho, beta_k^vee>` per positive root.
    pub weyl_vector_pairings: Vec<i64>,
}

pub fn build_root_system(t: CartanType) -> RootSystem {
    let cartan = t.cartan_matrix();
    let norms = t.simple_root_norms();
    let n = t.rank();
    // Gram matrix of the simple roots: (alpha_i, alpha_j) = C_ij |alpha_i|^2 / 2.
    let gram: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| cartan[i][j] * norms[i] / 2).collect())
        .collect();

    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut frontier = roots.clone();
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&c| c >= 0) && !roots.contains(&image) {
                roots.push(image.clone());
                frontier.push(image);
            }
        }
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });

    let coroot_pairings: Vec<Vec<i64>> = roots
        .iter()
        .map(|beta| {
            let norm: i64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| beta[i] * beta[j] * gram[i][j])
                .sum();
            (0..n)
                .map(|i| {
                    let num = beta[i] * norms[i];
                    debug_assert_eq!(num % norm, 0);
                    num / norm
                })
                .collect()
        })
        .collect();
    let weyl_vector_pairings = coroot_pairings.iter().map(|c| c.iter().sum()).collect();

    RootSystem {
        cartan_type: t,
        cartan,
        positive_roots: roots,
        coroot_pairings,
        weyl_vector_pairings,
    }
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn nu(&self) -> usize {
        self.positive_roots.len()
    }

    /// `alpha_i` (1-based) in fundamental-weight coordinates: column `i` of the Cartan matrix.
    pub fn simple_root_as_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| self.cartan[j][i - 1]).collect())
    }

    /// Dimension of the Weyl module with highest weight `lambda`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<BigInt> {
        if lambda.rank() != self.rank() || !lambda.is_dominant() {
            return Err(Error::NonDominantWeight(lambda.0.clone()));
        }
        Ok(self.weyl_dim_unchecked(lambda.coords()))
    }

    /// The Weyl product for arbitrary coordinates; the value is the signed
    /// dimension for non-dominant input.
    pub(crate) fn weyl_dim_unchecked(&self, coords: &[i64]) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (pair, &rho) in self.coroot_pairings.iter().zip(&self.weyl_vector_pairings) {
            let shifted: i64 = pair.iter().zip(coords).map(|(c, n)| c * (n + 1)).sum();
            num *= shifted;
            den *= rho;
        }
        if num.is_zero() {
            return num;
        }
        debug_assert!((&num % &den).is_zero());
        num / den
    }
}

/// Closed-form dimension in terms of `a_i = n_i + 1`, used to pin which
/// simple root is long in B2 and G2. `None` for A4.
pub fn closed_form_dimension(t: CartanType, a: &[i64]) -> Option<i64> {
    let v = match (t.family(), t.rank()) {
        (Family::A, 1) => a[0],
        (Family::A, 2) => a[0] * a[1] * (a[0] + a[1]) / 2,
        (Family::A, 3) => {
            let (a, b, c) = (a[0], a[1], a[2]);
            a * b * c * (a + b) * (b + c) * (a + b + c) / 12
        }
        (Family::B, _) => {
            let (a, b) = (a[0], a[1]);
            a * b * (a + b) * (a + 2 * b) / 6
        }
        (Family::G, _) => {
            let (a, b) = (a[0], a[1]);
            a * b * (a + b) * (a + 2 * b) * (a + 3 * b) * (2 * a + 3 * b) / 120
        }
        _ => return None,
    };
    Some(v)
}

/// Startup check that the labelling of simple roots reproduces the closed
/// dimension polynomials on a small grid.
pub fn verify_index_convention(rs: &RootSystem) -> Result<()> {
    let t = rs.cartan_type;
    let n = t.rank();
    let points = 4i64.pow(n as u32);
    for code in 0..points {
        let coords: Vec<i64> = (0..n).map(|i| (code / 4i64.pow(i as u32)) % 4).collect();
        let a: Vec<i64> = coords.iter().map(|c| c + 1).collect();
        if let Some(expected) = closed_form_dimension(t, &a) {
            let got = rs.weyl_dim_unchecked(&coords);
            if got != BigInt::from(expected) {
                return Err(Error::DataIntegrityFailure {
                    location: format!("dimension formula {t}"),
                    message: format!("weight {coords:?}: Weyl product {got}, closed form {expected}"),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for t in CartanType::ALL {
            let rs = build_root_system(t);
            assert_eq!(rs.nu(), t.nu(), "{t}");
            for (k, beta) in rs.positive_roots.iter().enumerate() {
                if beta.iter().sum::<i64>() == 1 {
                    assert_eq!(rs.weyl_vector_pairings[k], 1);
                }
            }
        }
        assert_eq!(build_root_system(CartanType::A2).nu(), 3);
        assert_eq!(build_root_system(CartanType::G2).nu(), 6);
        assert_eq!(build_root_system(CartanType::B2).nu(), 4);
    }

    #[test]
    fn index_convention_holds() {
        for t in CartanType::ALL {
            verify_index_convention(&build_root_system(t)).unwrap();
        }
    }

    #[test]
    fn parse_types() {
        assert_eq!("B2".parse::<CartanType>().unwrap(), CartanType::B2);
        assert_eq!("a4".parse::<CartanType>().unwrap(), CartanType::A4);
        assert!(matches!("E8".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!("A5".parse::<CartanType>().is_err());
        assert!("B3".parse::<CartanType>().is_err());
        assert!("".parse::<CartanType>().is_err());
    }

    #[test]
    fn small_dimensions() {
        let a2 = build_root_system(CartanType::A2);
        assert_eq!(a2.weyl_dim(&Weight(vec![0, 0])).unwrap(), BigInt::from(1));
        assert_eq!(a2.weyl_dim(&Weight(vec![1, 2])).unwrap(), BigInt::from(15));
        let g2 = build_root_system(CartanType::G2);
        assert_eq!(g2.weyl_dim(&Weight(vec![0, 0])).unwrap(), BigInt::from(1));
        // short fundamental weight of G2 is the 7-dimensional module
        assert_eq!(g2.weyl_dim(&Weight(vec![1, 0])).unwrap(), BigInt::from(7));
        assert_eq!(g2.weyl_dim(&Weight(vec![0, 1])).unwrap(), BigInt::from(14));
        let a3 = build_root_system(CartanType::A3);
        assert_eq!(a3.weyl_dim(&Weight(vec![1, 1, 1])).unwrap(), BigInt::from(64));
        let b2 = build_root_system(CartanType::B2);
        assert_eq!(b2.weyl_dim(&Weight(vec![1, 0])).unwrap(), BigInt::from(4));
        assert_eq!(b2.weyl_dim(&Weight(vec![0, 1])).unwrap(), BigInt::from(5));
    }

    #[test]
    fn non_dominant_rejected() {
        let a2 = build_root_system(CartanType::A2);
        assert_eq!(
            a2.weyl_dim(&Weight(vec![-1, 0])),
            Err(Error::NonDominantWeight(vec![-1, 0]))
        );
    }

    #[test]
    fn diagram_automorphism_invariance() {
        let a3 = build_root_system(CartanType::A3);
        let a4 = build_root_system(CartanType::A4);
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let w = Weight(vec![a, b, c]);
                    let r = Weight(vec![c, b, a]);
                    assert_eq!(a3.weyl_dim(&w).unwrap(), a3.weyl_dim(&r).unwrap());
                    let w4 = Weight(vec![a, b, c, a + 1]);
                    let r4 = Weight(vec![a + 1, c, b, a]);
                    assert_eq!(a4.weyl_dim(&w4).unwrap(), a4.weyl_dim(&r4).unwrap());
                }
            }
        }
    }
}
