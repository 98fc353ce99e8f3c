//! Closed-form Waring ranks and the comparison with generic forms.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::Rational;
use crate::forms::{CoprimeForm, Monomial};
use crate::Error;

/// Default cap on the number of exponent vectors a survey may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// `rk(x_1^{a_1}·…·x_n^{a_n}) = Π_{i≥2}(a_i + 1)` with exponents ascending,
/// and 1 for a pure power.
pub fn rank_monomial(monomial: &Monomial) -> u64 {
    rank_from_exponents(&monomial.exponents())
}

/// The monomial rank formula on a raw exponent vector (order irrelevant,
/// zero exponents ignored).
pub fn rank_from_exponents(exponents: &[u32]) -> u64 {
    let mut sorted: Vec<u64> = exponents
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| a as u64)
        .collect();
    sorted.sort_unstable();
    sorted.iter().skip(1).map(|a| a + 1).product()
}

/// Rank of a sum of pairwise coprime monomials: 1 in degree one, otherwise
/// the sum of the summands' ranks.
pub fn rank_coprime_sum(form: &CoprimeForm) -> u64 {
    if form.degree() == 1 {
        1
    } else {
        form.monomials().iter().map(rank_monomial).sum()
    }
}

/// `C(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericRank {
    pub value: u64,
    /// Set for the pairs where the true generic rank exceeds the formula.
    pub exceptional: bool,
}

/// `⌈C(d+n-1, d) / n⌉`, flagged on the exceptional `(n, d)` pairs: `d = 2`
/// with `n ≥ 2`, and `(3,4), (4,4), (5,4), (5,3)`.
pub fn generic_rank(n: u32, d: u32) -> GenericRank {
    assert!(n >= 1 && d >= 1, "generic rank needs n, d >= 1");
    let count = binomial(d as u64 + n as u64 - 1, d as u64);
    let n_big = BigInt::from(n);
    let value = (count + &n_big - 1u32) / n_big;
    let value = u64::try_from(value).expect("generic rank fits in u64");
    let exceptional = (d == 2 && n >= 2) || matches!((n, d), (3, 4) | (4, 4) | (5, 4) | (5, 3));
    GenericRank { value, exceptional }
}

/// Maximum rank of a degree-`d` monomial in three variables, with the
/// witness `x1·x2^{(d-1)/2}·x3^{(d-1)/2}` (odd) or `x1·x2^{d/2-1}·x3^{d/2}` (even).
pub fn max_monomial_rank_3vars(d: u32) -> Result<(u64, Monomial), Error> {
    if d <= 2 {
        return Err(Error::Domain(format!(
            "three-variable maximum needs degree > 2, got {d}"
        )));
    }
    let d64 = d as u64;
    let (value, exps) = if d % 2 == 1 {
        let h = d64.div_ceil(2);
        (h * h, [1, (d - 1) / 2, (d - 1) / 2])
    } else {
        let h = d64 / 2;
        (h * (h + 1), [1, d / 2 - 1, d / 2])
    };
    let witness = Monomial::from_exponents(&exps).expect("witness has positive degree");
    debug_assert_eq!(rank_monomial(&witness), value);
    Ok((value, witness))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    /// Ascending exponents, length between 1 and `n`.
    pub exponents: Vec<u32>,
    pub rank: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survey {
    pub n: u32,
    pub d: u32,
    pub value: u64,
    pub witness: Monomial,
    pub table: Vec<SurveyRow>,
}

/// Number of partitions of `d` into at most `n` positive parts.
pub fn partition_count(n: u32, d: u32) -> u128 {
    // p[k][m]: partitions of m into parts of size at most k (conjugate count).
    let (n, d) = (n as usize, d as usize);
    let mut p = vec![0u128; d + 1];
    p[0] = 1;
    for part in 1..=n.min(d.max(1)) {
        for m in part..=d {
            p[m] += p[m - part];
        }
    }
    p[d]
}

fn partitions(d: u32, max_parts: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, min: u32, slots: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for a in min..=rest {
            cur.push(a);
            go(rest - a, a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, 1, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive maximum of the monomial rank over all degree-`d` monomials in
/// at most `n` variables. Ties keep the first witness in enumeration order.
pub fn survey_max_monomial_rank(n: u32, d: u32, cap: u128) -> Result<Survey, Error> {
    if n == 0 || d == 0 {
        return Err(Error::Domain("survey needs n, d >= 1".into()));
    }
    let count = partition_count(n, d);
    if count > cap {
        return Err(Error::ResourceBound { count, cap });
    }
    let table: Vec<SurveyRow> = partitions(d, n)
        .into_iter()
        .map(|exponents| {
            let rank = rank_from_exponents(&exponents);
            SurveyRow { exponents, rank }
        })
        .collect();
    debug_assert_eq!(table.len() as u128, count);
    let best = table
        .iter()
        .fold(&table[0], |best, row| if row.rank > best.rank { row } else { best });
    Ok(Survey {
        n,
        d,
        value: best.rank,
        witness: Monomial::from_exponents(&best.exponents).expect("positive degree"),
        table,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub k: u32,
    pub d: u32,
    pub monomial_rank: u64,
    pub generic_rank: u64,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub n: u32,
    /// `n! / (n-1)^{n-1}`.
    pub limit: Rational,
    pub rows: Vec<RatioRow>,
}

/// Tabulates `rk(x1·x2^k·…·xn^k)` against the generic rank in degree
/// `d = (n-1)k + 1` for `k = 1..=k_max`.
pub fn asymptotic_ratio_report(n: u32, k_max: u32) -> Result<RatioReport, Error> {
    if n < 3 {
        return Err(Error::Domain(format!("ratio report needs n >= 3, got {n}")));
    }
    let factorial: BigInt = (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    let limit = Rational::new(factorial, BigInt::from(n - 1).pow(n - 1));
    let rows = (1..=k_max)
        .map(|k| {
            let d = (n - 1) * k + 1;
            let monomial_rank = (k as u64 + 1).pow(n - 1);
            let generic = generic_rank(n, d).value;
            RatioRow {
                k,
                d,
                monomial_rank,
                generic_rank: generic,
                ratio: Rational::new(monomial_rank.into(), generic.into()),
            }
        })
        .collect();
    Ok(RatioReport { n, limit, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::forms::parse_form;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps).unwrap()
    }

    #[test]
    fn monomial_rank_examples() {
        assert_eq!(rank_monomial(&mono(&[7])), 1);
        assert_eq!(rank_monomial(&mono(&[2, 2, 2])), 9);
        assert_eq!(rank_monomial(&mono(&[1, 3])), 4);
        assert_eq!(rank_monomial(&mono(&[3, 1])), 4);
    }

    #[test]
    fn coprime_sum_examples() {
        assert_eq!(rank_coprime_sum(&parse_form("x1 + x2 + x3").unwrap()), 1);
        assert_eq!(rank_coprime_sum(&parse_form("x1*x2 + x3^2").unwrap()), 3);
        assert_eq!(rank_coprime_sum(&parse_form("x1^2*x2 + x3^3").unwrap()), 4);
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(3, 5), GenericRank { value: 7, exceptional: false });
        assert_eq!(generic_rank(1, 9).value, 1);
        assert_eq!(generic_rank(3, 4), GenericRank { value: 5, exceptional: true });
        assert!(generic_rank(4, 2).exceptional);
        assert!(!generic_rank(1, 2).exceptional);
        for d in 1..40 {
            assert_eq!(generic_rank(2, d).value, (d as u64 + 2) / 2);
        }
    }

    #[test]
    fn three_variable_maximum() {
        let (v, w) = max_monomial_rank_3vars(7).unwrap();
        assert_eq!((v, w.to_string()), (16, "x1*x2^3*x3^3".to_string()));
        let (v, w) = max_monomial_rank_3vars(6).unwrap();
        assert_eq!((v, w.to_string()), (12, "x1*x2^2*x3^3".to_string()));
        let (v, w) = max_monomial_rank_3vars(3).unwrap();
        assert_eq!((v, w.to_string()), (4, "x1*x2*x3".to_string()));
        assert!(matches!(max_monomial_rank_3vars(2), Err(Error::Domain(_))));
    }

    #[test]
    fn survey_examples() {
        assert_eq!(survey_max_monomial_rank(3, 7, DEFAULT_ENUMERATION_CAP).unwrap().value, 16);
        let s = survey_max_monomial_rank(2, 9, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s.value, 9);
        assert_eq!(s.witness.to_string(), "x1*x2^8");
        assert_eq!(survey_max_monomial_rank(1, 5, DEFAULT_ENUMERATION_CAP).unwrap().value, 1);
        assert!(matches!(
            survey_max_monomial_rank(3, 30, 10),
            Err(Error::ResourceBound { cap: 10, .. })
        ));
    }

    #[test]
    fn partition_counts_match_enumeration() {
        for n in 1..=5 {
            for d in 1..=15 {
                assert_eq!(partition_count(n, d), partitions(d, n).len() as u128, "n={n} d={d}");
            }
        }
        assert_eq!(partition_count(3, 7), 8);
    }

    #[test]
    fn ratio_report_small_case() {
        let r = asymptotic_ratio_report(3, 1).unwrap();
        assert_eq!(r.limit, rat(3, 2));
        assert_eq!(r.rows[0].d, 3);
        assert_eq!(r.rows[0].monomial_rank, 4);
        assert_eq!(r.rows[0].generic_rank, 4);
        assert_eq!(r.rows[0].ratio, rat(1, 1));
        assert_eq!(asymptotic_ratio_report(4, 1).unwrap().limit, rat(24, 27));
    }
}
