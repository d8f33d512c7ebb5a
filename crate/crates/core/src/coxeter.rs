//! The Weyl group as a Coxeter group, enumerated in full.
//!
//! Elements are indexed `0..|W|` in shortlex order of their canonical
//! (shortlex-minimal reduced) words, so index 0 is the identity and the last
//! index is the longest element.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{CartanType, Weight};

/// Token used for the identity in words.
pub const IDENTITY_TOKEN: &str = "e";

/// A group element by its canonical reduced word over 1-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    word: Vec<u8>,
}

impl WeylElt {
    pub fn identity() -> Self {
        WeylElt { word: Vec::new() }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str(IDENTITY_TOKEN);
        }
        for g in &self.word {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl Serialize for WeylElt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

type Matrix = Vec<i64>;

fn mat_mul(a: &Matrix, b: &Matrix, n: usize) -> Matrix {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    cartan_type: CartanType,
    rank: usize,
    elements: Vec<WeylElt>,
    /// Action on fundamental-weight coordinates, row-major.
    matrices: Vec<Matrix>,
    by_word: HashMap<Vec<u8>, usize>,
    /// `right[w][i] = w s_{i+1}`.
    right: Vec<Vec<usize>>,
    /// `left[w][i] = s_{i+1} w`.
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    product: Vec<usize>,
}

impl WeylGroup {
    pub fn generate(t: CartanType) -> Self {
        let n = t.rank();
        let cartan = t.cartan_matrix();
        let identity: Matrix = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        // s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i
        let gens: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut m = identity.clone();
                for j in 0..n {
                    m[j * n + i] -= cartan[i][j];
                }
                m
            })
            .collect();

        let mut elements = vec![WeylElt::identity()];
        let mut matrices = vec![identity.clone()];
        let mut by_matrix: HashMap<Matrix, usize> = HashMap::from([(identity, 0)]);
        let mut level_start = 0;
        while level_start < elements.len() {
            let level_end = elements.len();
            for w in level_start..level_end {
                for (i, g) in gens.iter().enumerate() {
                    let m = mat_mul(&matrices[w], g, n);
                    if !by_matrix.contains_key(&m) {
                        let mut word = elements[w].word.clone();
                        word.push(i as u8 + 1);
                        by_matrix.insert(m.clone(), elements.len());
                        elements.push(WeylElt { word });
                        matrices.push(m);
                    }
                }
            }
            level_start = level_end;
        }

        let size = elements.len();
        let right: Vec<Vec<usize>> = (0..size)
            .map(|w| gens.iter().map(|g| by_matrix[&mat_mul(&matrices[w], g, n)]).collect())
            .collect();
        let left: Vec<Vec<usize>> = (0..size)
            .map(|w| gens.iter().map(|g| by_matrix[&mat_mul(g, &matrices[w], n)]).collect())
            .collect();
        let by_word = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.word.clone(), k))
            .collect();

        let mut g = WeylGroup {
            cartan_type: t,
            rank: n,
            elements,
            matrices,
            by_word,
            right,
            left,
            inverse: Vec::new(),
            product: Vec::new(),
        };
        g.product = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .map(|(x, y)| g.fold_right(x, &g.elements[y].word))
            .collect();
        g.inverse = (0..size)
            .map(|w| (0..size).find(|&y| g.product[w * size + y] == 0).expect("group inverse"))
            .collect();
        g
    }

    fn fold_right(&self, mut x: usize, word: &[u8]) -> usize {
        for &i in word {
            x = self.right[x][i as usize - 1];
        }
        x
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn nu(&self) -> usize {
        self.elements.last().map_or(0, WeylElt::length)
    }

    pub fn w0(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn elt(&self, w: usize) -> &WeylElt {
        &self.elements[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length()
    }

    /// Index of an element; every `WeylElt` built by this group is canonical.
    pub fn index_of(&self, w: &WeylElt) -> Option<usize> {
        self.by_word.get(&w.word).copied()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x * self.order() + y]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// `w s_i` for a 1-based generator.
    pub fn right_mul_gen(&self, w: usize, i: usize) -> usize {
        self.right[w][i - 1]
    }

    /// `s_i w` for a 1-based generator.
    pub fn left_mul_gen(&self, w: usize, i: usize) -> usize {
        self.left[w][i - 1]
    }

    /// Parses a digit word such as `"1212"`; `"e"`, `""` and `"∅"` denote the
    /// identity. The word need not be reduced.
    pub fn parse_word(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if text.is_empty() || text == IDENTITY_TOKEN || text == "∅" {
            return Ok(0);
        }
        let mut x = 0;
        for ch in text.chars() {
            let i = ch
                .to_digit(10)
                .map(|d| d as usize)
                .filter(|&d| d >= 1 && d <= self.rank)
                .ok_or_else(|| Error::BadGeneratorIndex {
                    word: text.to_string(),
                    found: ch,
                    rank: self.rank,
                })?;
            x = self.right[x][i - 1];
        }
        Ok(x)
    }

    pub fn parse_elt(&self, text: &str) -> Result<WeylElt> {
        self.parse_word(text).map(|w| self.elements[w].clone())
    }

    /// `{i : l(s_i w) < l(w)}`, 1-based and sorted.
    pub fn left_descent_set(&self, w: usize) -> Vec<usize> {
        (1..=self.rank)
            .filter(|&i| self.length(self.left_mul_gen(w, i)) < self.length(w))
            .collect()
    }

    pub fn right_descent_set(&self, w: usize) -> Vec<usize> {
        (1..=self.rank)
            .filter(|&i| self.length(self.right_mul_gen(w, i)) < self.length(w))
            .collect()
    }

    pub fn is_involution(&self, w: usize) -> bool {
        self.inverse(w) == w
    }

    pub fn act_on_weight(&self, w: usize, lambda: &Weight) -> Weight {
        let n = self.rank;
        let m = &self.matrices[w];
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| m[i * n + j] * lambda.0[j]).sum())
                .collect(),
        )
    }

    /// Bruhat order as a dense relation, `leq[w][x]` iff `x <= w`.
    ///
    /// Uses the subword property on canonical words: if `w = w's` with
    /// `l(w) = l(w') + 1` then `{x <= w} = {x <= w'} ∪ {xs : x <= w'}`.
    pub fn bruhat(&self) -> BruhatOrder {
        let size = self.order();
        let mut below = vec![vec![false; size]; size];
        below[0][0] = true;
        for w in 1..size {
            let word = &self.elements[w].word;
            let s = *word.last().unwrap() as usize;
            let prefix = self.by_word[&word[..word.len() - 1]];
            let mut row = below[prefix].clone();
            for x in 0..size {
                if below[prefix][x] {
                    row[self.right_mul_gen(x, s)] = true;
                }
            }
            row[w] = true;
            below[w] = row;
        }
        BruhatOrder { below }
    }
}

#[derive(Debug, Clone)]
pub struct BruhatOrder {
    below: Vec<Vec<bool>>,
}

impl BruhatOrder {
    /// `x <= w`.
    pub fn leq(&self, x: usize, w: usize) -> bool {
        self.below[w][x]
    }

    pub fn interval_below(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[w].iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders_and_longest_element() {
        for t in CartanType::ALL {
            let g = WeylGroup::generate(t);
            assert_eq!(g.order(), t.weyl_order(), "{t}");
            assert_eq!(g.nu(), t.nu(), "{t}");
            assert_eq!(g.elements().iter().filter(|e| e.length() == g.nu()).count(), 1);
        }
    }

    #[test]
    fn words_parse_to_canonical_forms() {
        let b2 = WeylGroup::generate(CartanType::B2);
        assert_eq!(b2.parse_word("1212").unwrap(), b2.w0());
        assert_eq!(b2.parse_word("2121").unwrap(), b2.w0());
        assert_eq!(b2.elt(b2.w0()).to_string(), "1212");
        let a2 = WeylGroup::generate(CartanType::A2);
        assert_eq!(a2.parse_word("11").unwrap(), 0);
        assert_eq!(a2.parse_word("e").unwrap(), 0);
        assert_eq!(a2.parse_word("212").unwrap(), a2.parse_word("121").unwrap());
        assert!(matches!(
            a2.parse_word("13"),
            Err(Error::BadGeneratorIndex { found: '3', .. })
        ));
        assert!(a2.parse_word("1x").is_err());
        let a3 = WeylGroup::generate(CartanType::A3);
        let w = a3.parse_word("121321").unwrap();
        assert_eq!(w, a3.w0());
        assert_eq!(a3.length(w), 6);
    }

    #[test]
    fn descent_sets() {
        let b2 = WeylGroup::generate(CartanType::B2);
        assert!(b2.left_descent_set(0).is_empty());
        assert_eq!(b2.left_descent_set(b2.parse_word("212").unwrap()), vec![2]);
        let a3 = WeylGroup::generate(CartanType::A3);
        assert_eq!(a3.left_descent_set(a3.w0()), vec![1, 2, 3]);
    }

    #[test]
    fn lengths_change_by_one_and_descents_agree() {
        for t in CartanType::ALL {
            let g = WeylGroup::generate(t);
            for w in 0..g.order() {
                let cl = g.left_descent_set(w);
                for i in 1..=g.rank() {
                    let l = g.length(g.left_mul_gen(w, i)) as i64;
                    assert_eq!((l - g.length(w) as i64).abs(), 1);
                    assert_eq!(cl.contains(&i), l < g.length(w) as i64);
                }
                let inv = g.inverse(w);
                assert_eq!(g.length(inv), g.length(w));
                assert_eq!(g.left_descent_set(inv), g.right_descent_set(w));
            }
        }
    }

    #[test]
    fn multiplication_is_associative_on_a3() {
        let g = WeylGroup::generate(CartanType::A3);
        for x in 0..g.order() {
            for y in 0..g.order() {
                for z in (0..g.order()).step_by(5) {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
                // inversion is an anti-automorphism
                assert_eq!(g.inverse(g.mul(x, y)), g.mul(g.inverse(y), g.inverse(x)));
            }
        }
    }

    #[test]
    fn weight_action() {
        let a2 = WeylGroup::generate(CartanType::A2);
        let s1 = a2.parse_word("1").unwrap();
        assert_eq!(a2.act_on_weight(s1, &Weight(vec![3, 5])), Weight(vec![-3, 8]));
        assert_eq!(a2.act_on_weight(0, &Weight(vec![3, 5])), Weight(vec![3, 5]));
        let a1 = WeylGroup::generate(CartanType::A1);
        assert_eq!(a1.act_on_weight(1, &Weight(vec![4])), Weight(vec![-4]));
        for t in CartanType::ALL {
            let g = WeylGroup::generate(t);
            let rho = Weight(vec![1; g.rank()]);
            let image = g.act_on_weight(g.w0(), &rho);
            assert!(image.coords().iter().all(|&c| c < 0), "{t}");
            // faithful: only the identity fixes every fundamental weight
            for w in 1..g.order() {
                assert!((1..=g.rank())
                    .any(|i| g.act_on_weight(w, &Weight::fundamental(g.rank(), i))
                        != Weight::fundamental(g.rank(), i)));
            }
        }
    }

    #[test]
    fn bruhat_extremes() {
        let g = WeylGroup::generate(CartanType::A3);
        let b = g.bruhat();
        for w in 0..g.order() {
            assert!(b.leq(0, w));
            assert!(b.leq(w, g.w0()));
            assert!(b.leq(w, w));
        }
        let s2 = g.parse_word("2").unwrap();
        let s1 = g.parse_word("1").unwrap();
        assert!(!b.leq(s1, s2));
        assert_eq!(b.interval_below(g.parse_word("121").unwrap()).count(), 6);
    }
}
