//! Factored rendering: the content, powers of `t`, linear factors over `Q`,
//! then whatever is left, e.g. `t(t+1)(2t+1)/6` or `t^2(5t^2+1)/6`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntPoly;

/// Trial division bound for rational-root candidates.
const CANDIDATE_LIMIT: i64 = 1_000_000;

pub(super) fn render(f: &IntPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let (content, mut prim) = f.content_split();

    let zeros = prim.iter().position(|c| !c.is_zero()).unwrap();
    prim.drain(..zeros);

    // (b, a) stands for the factor b t - a
    let mut linear: Vec<(i64, i64, usize)> = Vec::new();
    for (a, b) in rational_root_candidates(&prim) {
        let mut mult = 0;
        while prim.len() > 1 {
            match divide_linear(&prim, b, a) {
                Some(q) => {
                    prim = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            linear.push((b, a, mult));
        }
    }
    linear.sort_by_key(|&(b, a, _)| (b, a.abs(), -a));

    let mut sign_flip = false;
    if prim.last().is_some_and(Signed::is_negative) {
        sign_flip = true;
        prim.iter_mut().for_each(|c| *c = -c.clone());
    }
    let residual_is_unit = prim.len() == 1 && prim[0].is_one();

    let mut factors: Vec<String> = Vec::new();
    match zeros {
        0 => {}
        1 => factors.push("t".into()),
        k => factors.push(format!("t^{k}")),
    }
    for &(b, a, mult) in &linear {
        let body = expand(&[BigInt::from(-a), BigInt::from(b)]);
        factors.push(with_power(format!("({body})"), mult));
    }
    let residual = (!residual_is_unit).then(|| expand(&prim));

    let mut numer = content.numer().clone();
    if sign_flip {
        numer = -numer;
    }
    let denom = content.denom().clone();

    let mut out = String::new();
    let no_other_factors = factors.is_empty();
    if numer.is_negative() {
        out.push('-');
    }
    let abs_numer = numer.abs();
    if !abs_numer.is_one() || (no_other_factors && residual.is_none()) {
        out.push_str(&abs_numer.to_string());
    }
    out.push_str(&factors.concat());
    if let Some(r) = residual {
        let bare = no_other_factors && abs_numer.is_one() && denom.is_one() && !numer.is_negative();
        if bare {
            out.push_str(&r);
        } else {
            out.push('(');
            out.push_str(&r);
            out.push(')');
        }
    }
    if !denom.is_one() {
        out.push('/');
        out.push_str(&denom.to_string());
    }
    out
}

fn with_power(s: String, k: usize) -> String {
    if k == 1 {
        s
    } else {
        format!("{s}^{k}")
    }
}

/// Expanded form with descending powers, e.g. `5t^2+1`.
fn expand(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push(if a.is_negative() { '-' } else { '+' });
        }
        let abs = a.abs();
        if k == 0 || !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        match k {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{k}")),
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<i64> {
    let Some(n) = n.abs().to_i64() else {
        return Vec::new();
    };
    if n == 0 || n > CANDIDATE_LIMIT * CANDIDATE_LIMIT {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Candidate roots `a/b` (b > 0, gcd 1) of a primitive polynomial with
/// nonzero constant term.
fn rational_root_candidates(prim: &[BigInt]) -> Vec<(i64, i64)> {
    if prim.len() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for b in divisors(prim.last().unwrap()) {
        for a in divisors(&prim[0]) {
            for a in [a, -a] {
                if a.gcd(&b) == 1 {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Divides by `b t - a` when exact over `Z`.
fn divide_linear(c: &[BigInt], b: i64, a: i64) -> Option<Vec<BigInt>> {
    let (b, a) = (BigInt::from(b), BigInt::from(a));
    let n = c.len() - 1;
    let mut rem: Vec<BigInt> = c.to_vec();
    let mut q = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let (qk, r) = rem[k + 1].div_rem(&b);
        if !r.is_zero() {
            return None;
        }
        rem[k] += &qk * &a;
        rem[k + 1] = BigInt::zero();
        q[k] = qk;
    }
    rem[0].is_zero().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn r(s: &str) -> String {
        render(&s.parse().unwrap())
    }

    #[test]
    fn factored_forms() {
        assert_eq!(r("(2t^3+3t^2+t)/6"), "t(t+1)(2t+1)/6");
        assert_eq!(r("t^2(5t^2+1)/6"), "t^2(5t^2+1)/6");
        assert_eq!(r("t(t-1)(t+1)(t-3)(t+3)/30"), "t(t-1)(t+1)(t-3)(t+3)/30");
        assert_eq!(r("t(t+1)^2/2"), "t(t+1)^2/2");
        assert_eq!(r("t^2+1"), "t^2+1");
        assert_eq!(r("1"), "1");
        assert_eq!(r("-5/2"), "-5/2");
        assert_eq!(r("t^6"), "t^6");
        assert_eq!(r("-t+1"), "-(t-1)");
        assert_eq!(r("3t^2+3"), "3(t^2+1)");
        assert_eq!(r("0"), "0");
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec((-20i64..20, 1i64..7), 0..6).prop_map(|cs| {
            IntPoly::from_coeffs(
                cs.into_iter()
                    .map(|(n, d)| BigRational::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn render_round_trips(f in small_poly()) {
            let text = render(&f);
            let back: IntPoly = text.parse().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn products_evaluate_pointwise(f in small_poly(), g in small_poly(), k in -30i64..30) {
            let prod = &f * &g;
            prop_assert_eq!(prod.eval_int(k), f.eval_int(k) * g.eval_int(k));
        }

        #[test]
        fn reverse_is_an_involution(f in small_poly(), extra in 0usize..3) {
            let nu = f.degree().unwrap_or(0) + extra;
            let twice = f.reverse_at(nu).unwrap().reverse_at(nu).unwrap();
            prop_assert_eq!(twice, f);
        }
    }
}
