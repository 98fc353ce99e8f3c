//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.
//!
//! The process fails if any criterion fails, except those listed in
//! `KNOWN_UNATTAINABLE`; those still print FAIL together with the reason.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use waring_core::apolarity::{
    binary_rank_sylvester, catalecticant_lower_bound, claim_ideals, verify_claim_identity,
};
use waring_core::decompose::{
    decompose_form, least_variable_check, verify_decomposition, PowerSumDecomposition,
};
use waring_core::exact::{self, rat, Rational};
use waring_core::forms::{parse_form, CoprimeForm, Monomial, Variable};
use waring_core::rank::{
    asymptotic_ratio_report, max_monomial_rank_3vars, rank_coprime_sum, rank_monomial,
    survey_max_monomial_rank, DEFAULT_ENUMERATION_CAP,
};
use waring_core::CyclotomicNumber;

const SEED: u64 = 20_240_601;

/// Criteria whose literal statement is false for mathematical reasons.
const KNOWN_UNATTAINABLE: &[(&str, &str)] = &[(
    "9",
    "for binary x^a*y^b every catalecticant has rank <= min(a,b)+1, while the rank is max(a,b)+1",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

/// Decompositions kept for the least-variable criterion.
type Produced = Vec<(CoprimeForm, PowerSumDecomposition)>;

fn monomial(exps: &[u32]) -> Monomial {
    Monomial::from_exponents(exps).expect("positive degree")
}

/// All exponent vectors of length `n` with positive entries summing to `d`.
fn compositions(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return if d >= 1 { vec![vec![d]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..d {
        for mut rest in compositions(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn sweep() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for d in n as u32..=8 {
            out.extend(compositions(n, d));
        }
    }
    out
}

fn c1_monomial_formula() -> Outcome {
    let mut checked = 0;
    for n in 1..=4u32 {
        for m in 1..=3u32 {
            let expected = (m as u64 + 1).pow(n - 1);
            let got = rank_monomial(&monomial(&vec![m; n as usize]));
            if got != expected {
                return Outcome::new(false, format!("n={n} m={m}: got {got}, expected {expected}"));
            }
            checked += 1;
        }
    }
    Outcome::new(true, format!("{checked} cases"))
}

fn c2_four_cubes(produced: &mut Produced) -> Outcome {
    let form = parse_form("x0*x1*x2").unwrap();
    let d = match decompose_form(&form) {
        Ok(d) => d,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let r = |x: i64, y: i64| CyclotomicNumber::from(rat(x, y));
    let expected = [
        (r(1, 24), [1, 1, 1]),
        (r(-1, 24), [1, 1, -1]),
        (r(-1, 24), [1, -1, 1]),
        (r(1, 24), [1, -1, -1]),
    ];
    let matches = d.len() == 4
        && expected.iter().all(|(g, signs)| {
            let linear: Vec<CyclotomicNumber> = signs.iter().map(|&s| r(s, 1)).collect();
            d.terms.iter().any(|t| &t.gamma == g && t.linear == linear)
        });
    let report = verify_decomposition(&form, &d);
    let ok = matches && report.passed();
    produced.push((form, d));
    Outcome::new(ok, if ok { "4 terms, gammas +-1/24, exact" } else { "terms differ" })
}

fn c3_exhaustive(produced: &mut Produced) -> Outcome {
    let cases = sweep();
    for exps in &cases {
        let m = monomial(exps);
        let expected: u64 = {
            let mut sorted = exps.clone();
            sorted.sort_unstable();
            sorted[1..].iter().map(|&a| a as u64 + 1).product()
        };
        let form = CoprimeForm::new(vec![(rat(1, 1), m.clone())]).unwrap();
        let d = match decompose_form(&form) {
            Ok(d) => d,
            Err(e) => return Outcome::new(false, format!("{m}: {e}")),
        };
        let report = verify_decomposition(&form, &d);
        if d.len() as u64 != expected || !report.passed() || report.residual_terms != 0 {
            return Outcome::new(false, format!("{m}: {} terms, expected {expected}\n{report}", d.len()));
        }
        produced.push((form, d));
    }
    Outcome::new(true, format!("{} monomials", cases.len()))
}

fn random_coprime_form(rng: &mut ChaCha8Rng) -> CoprimeForm {
    let r = rng.gen_range(1..=3);
    let d = rng.gen_range(1..=6u32);
    let mut next_var = 1u32;
    let mut terms = Vec::new();
    for i in 0..r {
        let remaining_blocks = (r - i - 1) as u32;
        let budget = (8 - (next_var - 1) - remaining_blocks).min(d);
        let size = rng.gen_range(1..=budget.max(1)) as usize;
        let mut parts = vec![1u32; size];
        for _ in 0..d - size as u32 {
            parts[rng.gen_range(0..size)] += 1;
        }
        let factors = parts.iter().map(|&a| {
            let v = Variable::x(next_var);
            next_var += 1;
            (v, a)
        });
        let m = Monomial::new(factors.collect::<Vec<_>>()).unwrap();
        let mut num = rng.gen_range(-5..=5i64);
        if num == 0 {
            num = 1;
        }
        terms.push((rat(num, rng.gen_range(1..=4)), m));
    }
    CoprimeForm::new(terms).expect("disjoint supports")
}

fn c4_additivity(produced: &mut Produced) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..30 {
        let form = random_coprime_form(&mut rng);
        let expected: u64 = if form.degree() == 1 {
            1
        } else {
            form.monomials().iter().map(rank_monomial).sum()
        };
        let d = match decompose_form(&form) {
            Ok(d) => d,
            Err(e) => return Outcome::new(false, format!("case {i} {form}: {e}")),
        };
        let report = verify_decomposition(&form, &d);
        if d.len() as u64 != expected || !report.expansion_exact() {
            return Outcome::new(false, format!("case {i} {form}: {} terms, expected {expected}", d.len()));
        }
        produced.push((form, d));
    }
    Outcome::new(true, "30 forms")
}

/// Symmetric matrix `Q` with `F = xᵀ Q x`.
fn quadratic_matrix(form: &CoprimeForm) -> Vec<Vec<Rational>> {
    let n = form.variables().len();
    let mut q = vec![vec![rat(0, 1); n]; n];
    for (m, c) in form.monomials().iter().zip(form.coefficients()) {
        let idx: Vec<usize> = m
            .factors()
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(form.var_index(v).unwrap(), e as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            q[i][i] += c;
        } else {
            q[i][j] += c / rat(2, 1);
            q[j][i] += c / rat(2, 1);
        }
    }
    q
}

fn c5_quadratic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut checked = 0;
    // each bit picks a square (0) or a product of two fresh variables (1)
    for blocks in 1..=4u32 {
        for mask in 0..(1u32 << blocks) {
            let mut next = 1;
            let mut terms = Vec::new();
            for b in 0..blocks {
                let factors = if mask >> b & 1 == 1 {
                    next += 2;
                    vec![(Variable::x(next - 2), 1), (Variable::x(next - 1), 1)]
                } else {
                    next += 1;
                    vec![(Variable::x(next - 1), 2)]
                };
                let c = rat(rng.gen_range(1..=7) * if rng.gen() { 1 } else { -1 }, rng.gen_range(1..=3));
                terms.push((c, Monomial::new(factors).unwrap()));
            }
            let form = CoprimeForm::new(terms).unwrap();
            let matrix_rank = exact::rank(&quadratic_matrix(&form)) as u64;
            let formula = rank_coprime_sum(&form);
            if matrix_rank != formula {
                return Outcome::new(false, format!("{form}: matrix rank {matrix_rank}, formula {formula}"));
            }
            checked += 1;
        }
    }
    Outcome::new(true, format!("{checked} quadratic forms"))
}

fn c6_three_variables() -> Outcome {
    for d in 3..=20u32 {
        let formula = if d % 2 == 1 {
            (d as u64).div_ceil(2).pow(2)
        } else {
            (d as u64 / 2) * (d as u64 / 2 + 1)
        };
        let (closed, witness) = max_monomial_rank_3vars(d).unwrap();
        let brute = survey_max_monomial_rank(3, d, DEFAULT_ENUMERATION_CAP).unwrap().value;
        if closed != formula || brute != formula || rank_monomial(&witness) != formula {
            return Outcome::new(false, format!("d={d}: closed {closed}, brute {brute}, expected {formula}"));
        }
    }
    Outcome::new(true, "d = 3..20")
}

fn c7_ratios() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for n in 3..=5 {
        let report = asymptotic_ratio_report(n, 200).unwrap();
        let last = report.rows.last().unwrap();
        let gap = (&last.ratio - &report.limit).abs() / &report.limit;
        let within = gap < rat(5, 100);
        ok &= within;
        let basis_points = (gap * rat(10_000, 1)).round().to_integer();
        detail.push(format!(
            "n={n}: {} vs {} (off by {}.{:02}%)",
            last.ratio,
            report.limit,
            &basis_points / 100,
            &basis_points % 100
        ));
    }
    Outcome::new(ok, detail.join("; "))
}

fn c8_claim() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for i in 0..50 {
        let r = rng.gen_range(1..=3);
        let blocks: Vec<Vec<u32>> = (0..r)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=4)).collect())
            .collect();
        match verify_claim_identity(&claim_ideals(&blocks), None) {
            Ok(report) if report.passed() => {}
            Ok(report) => return Outcome::new(false, format!("case {i} {blocks:?}: {report:?}")),
            Err(e) => return Outcome::new(false, format!("case {i} {blocks:?}: {e}")),
        }
    }
    Outcome::new(true, "50 configurations")
}

struct BoundSweep {
    unsound: Vec<String>,
    binary_gaps: Vec<String>,
    binary_total: usize,
    sylvester_mismatch: Vec<String>,
}

fn bound_sweep() -> BoundSweep {
    let mut s = BoundSweep {
        unsound: Vec::new(),
        binary_gaps: Vec::new(),
        binary_total: 0,
        sylvester_mismatch: Vec::new(),
    };
    for exps in sweep() {
        let m = monomial(&exps);
        let poly = m.to_polynomial::<Rational>();
        let bound = catalecticant_lower_bound(&poly, m.degree());
        let rank = rank_monomial(&m);
        if bound > rank {
            s.unsound.push(format!("{m}: {bound} > {rank}"));
        }
        if exps.len() == 2 {
            s.binary_total += 1;
            if bound != rank {
                s.binary_gaps.push(format!("{m}: bound {bound}, rank {rank}"));
            }
            match binary_rank_sylvester(&poly) {
                Ok(r) if r == rank => {}
                other => s.sylvester_mismatch.push(format!("{m}: {other:?} vs {rank}")),
            }
        }
    }
    s
}

fn c10_least_variable(produced: &Produced) -> Outcome {
    for (form, d) in produced {
        let report = least_variable_check(form, d);
        if !report.passed() {
            return Outcome::new(false, format!("{form}: {report:?}"));
        }
    }
    Outcome::new(true, format!("{} decompositions", produced.len()))
}

struct Runner {
    results: BTreeMap<String, bool>,
}

impl Runner {
    fn run(&mut self, id: &str, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let passed = outcome.passed && in_time;
        let limit_text = limit.map_or("no limit".to_string(), |l| format!("limit {} s", l.as_secs()));
        println!(
            "{} {id:<4} {title}: {} [{:.2} s, {limit_text}]",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
        if !in_time {
            println!("          time limit exceeded");
        }
        self.results.insert(id.to_string(), passed);
        passed
    }
}

fn main() -> ExitCode {
    let mut runner = Runner {
        results: BTreeMap::new(),
    };
    let secs = |s| Some(Duration::from_secs(s));
    let mut produced = Produced::new();

    runner.run("1", "monomial rank formula", secs(1), c1_monomial_formula);
    runner.run("2", "four-cube identity", secs(1), || c2_four_cubes(&mut produced));
    runner.run("3", "exhaustive decompose and verify", secs(120), || c3_exhaustive(&mut produced));
    runner.run("4", "additivity on random coprime sums", secs(60), || c4_additivity(&mut produced));
    runner.run("5", "quadratic forms vs matrix rank", secs(1), c5_quadratic);
    runner.run("6", "three-variable maximum vs brute force", secs(5), c6_three_variables);
    runner.run("7", "ratio tables at k = 200", secs(5), c7_ratios);
    runner.run("8", "Hilbert-function additivity identity", secs(30), c8_claim);

    let start = Instant::now();
    let sweep = bound_sweep();
    let sweep_time = start.elapsed();
    let limit = Duration::from_secs(60);
    runner.run("9a", "catalecticant bound <= rank", Some(limit), || {
        Outcome::new(
            sweep.unsound.is_empty() && sweep_time <= limit,
            if sweep.unsound.is_empty() {
                "no violations".to_string()
            } else {
                sweep.unsound.join("; ")
            },
        )
    });
    runner.run("9", "catalecticant bound = rank for n = 2", Some(limit), || {
        Outcome::new(
            sweep.binary_gaps.is_empty(),
            format!(
                "{} of {} binary monomials differ, e.g. {}",
                sweep.binary_gaps.len(),
                sweep.binary_total,
                sweep.binary_gaps.first().map_or("none", String::as_str)
            ),
        )
    });
    runner.run("9s", "binary rank by Sylvester's algorithm = rank", Some(limit), || {
        Outcome::new(
            sweep.sylvester_mismatch.is_empty(),
            format!(
                "{} binary monomials, {} mismatches",
                sweep.binary_total,
                sweep.sylvester_mismatch.len()
            ),
        )
    });
    runner.run("10", "least variable in every term", None, || c10_least_variable(&produced));

    let mut unexpected = 0;
    for (id, passed) in &runner.results {
        match KNOWN_UNATTAINABLE.iter().find(|(k, _)| k == id) {
            Some((_, reason)) if !passed => println!("note {id}: known unattainable: {reason}"),
            Some(_) => println!("note {id}: listed as unattainable but passed"),
            None if !passed => unexpected += 1,
            None => {}
        }
    }
    let failed = runner.results.values().filter(|p| !**p).count();
    println!("{} passed, {failed} failed, {unexpected} unexpected", runner.results.len() - failed);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
