//! Rational character tables of the supported Weyl groups, built without
//! reference to Hecke algebras: Murnaghan–Nakayama for type A and the
//! closed dihedral formulas for B2 and G2.

use serde::Serialize;

use crate::coxeter::WeylGroup;
use crate::rootdata::Family;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WCharTable {
    pub labels: Vec<String>,
    /// Conjugacy classes as sorted element indices; ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// `chars[e][k]` is the value of irreducible `e` on class `k`.
    pub chars: Vec<Vec<i64>>,
    pub sign: usize,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl WCharTable {
    pub fn trivial(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    pub fn value(&self, e: usize, w: usize) -> i64 {
        self.chars[e][self.class_of[w]]
    }

    pub fn dim(&self, e: usize) -> i64 {
        self.chars[e][self.class_of[0]]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `sum_g chi(g) psi(g)` over the group; `|W|` times the inner product.
    pub fn scaled_inner(&self, chi: &[i64], psi: &[i64]) -> i64 {
        self.classes
            .iter()
            .enumerate()
            .map(|(k, c)| c.len() as i64 * chi[k] * psi[k])
            .sum()
    }

    /// Row orthogonality `<chi_e, chi_f> = delta_{ef}`.
    pub fn is_orthonormal(&self, order: usize) -> bool {
        (0..self.len()).all(|e| {
            (0..self.len()).all(|f| {
                self.scaled_inner(&self.chars[e], &self.chars[f]) == if e == f { order as i64 } else { 0 }
            })
        })
    }

    /// Class function of an arbitrary per-element function.
    pub fn class_values(&self, per_element: impl Fn(usize) -> i64) -> Vec<i64> {
        self.classes.iter().map(|c| per_element(c[0])).collect()
    }
}

fn conjugacy_classes(g: &WeylGroup) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|y| g.mul(g.mul(y, x), g.inverse(y))).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    (classes, class_of)
}

pub fn w_character_table(g: &WeylGroup) -> WCharTable {
    let (classes, class_of) = conjugacy_classes(g);
    let t = g.cartan_type();
    let (labels, chars): (Vec<String>, Vec<Vec<i64>>) = match t.family() {
        Family::A => {
            let n = t.rank() + 1;
            let cycle_types: Vec<Vec<usize>> =
                classes.iter().map(|c| cycle_type(&permutation(g, c[0], n))).collect();
            partitions(n)
                .into_iter()
                .map(|lambda| {
                    let row = cycle_types.iter().map(|mu| murnaghan_nakayama(&lambda, mu)).collect();
                    (partition_label(&lambda), row)
                })
                .unzip()
        }
        Family::B | Family::G => {
            let m = if t.family() == Family::B { 4 } else { 6 };
            dihedral_rows(g, m, &classes)
        }
    };
    let sign_row: Vec<i64> = classes
        .iter()
        .map(|c| if g.length(c[0]) % 2 == 0 { 1 } else { -1 })
        .collect();
    let sign = chars.iter().position(|r| *r == sign_row).expect("sign character present");
    WCharTable { labels, classes, chars, sign, class_of }
}

pub fn partition_label(lambda: &[usize]) -> String {
    let parts: Vec<String> = lambda.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `s_i` acts as the transposition `(i, i+1)` on `{0..n}`.
fn permutation(g: &WeylGroup, w: usize, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in g.elt(w).word() {
        perm.swap(i as usize - 1, i as usize);
    }
    perm
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `chi^lambda(mu)` by removing rim hooks on a beta-set.
pub fn murnaghan_nakayama(lambda: &[usize], mu: &[usize]) -> i64 {
    let k = lambda.len();
    let beta: Vec<i64> = lambda.iter().enumerate().map(|(i, &l)| (l + k - 1 - i) as i64).collect();
    mn_beta(&beta, mu)
}

fn mn_beta(beta: &[i64], mu: &[usize]) -> i64 {
    let Some((&m, rest)) = mu.split_first() else {
        return 1;
    };
    let m = m as i64;
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        let target = b - m;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.to_vec();
        next[idx] = target;
        total += sign * mn_beta(&next, rest);
    }
    total
}

/// `2 cos(2 pi n / m)` for the angles that occur with `m` in {4, 6}.
fn two_cos(n: usize, m: usize) -> i64 {
    let n = n % m;
    // reduce n/m to a fraction with denominator dividing 12
    match 12 * n / m {
        0 => 2,
        2 | 10 => 1,
        3 | 9 => 0,
        4 | 8 => -1,
        6 => -2,
        _ => unreachable!("angle {n}/{m} has no integral cosine"),
    }
}

fn dihedral_rows(g: &WeylGroup, m: usize, classes: &[Vec<usize>]) -> (Vec<String>, Vec<Vec<i64>>) {
    let one_dim = |eps: [i64; 2]| -> Vec<i64> {
        classes
            .iter()
            .map(|c| g.elt(c[0]).word().iter().map(|&i| eps[i as usize - 1]).product())
            .collect()
    };
    let mut labels = vec!["1".to_string(), "eps_1".into(), "eps_2".into(), "sgn".into()];
    let mut rows = vec![one_dim([1, 1]), one_dim([-1, 1]), one_dim([1, -1]), one_dim([-1, -1])];
    for k in 1..m / 2 {
        labels.push(format!("rho_{k}"));
        rows.push(
            classes
                .iter()
                .map(|c| {
                    let l = g.length(c[0]);
                    if l % 2 == 1 {
                        0
                    } else {
                        two_cos(k * l / 2, m)
                    }
                })
                .collect(),
        );
    }
    (labels, rows)
}
