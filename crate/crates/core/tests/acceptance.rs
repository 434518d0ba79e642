//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use hecke_core::affhecke::{bl_correction, induced_standard_module, nf_mul, principal_series};
use hecke_core::affhecke::{CentralCharacterData, NormalFormElement};
use hecke_core::combin::{
    count_syt, dominance_leq, enumerate_partitions, enumerate_syt, hook_length_count, max_label, min_label, Partition,
};
use hecke_core::finhecke::{hecke_mul, specht_module, HeckeElement, HeckeParams};
use hecke_core::linalg::Matrix;
use hecke_core::modlab::{cosocle, envelope, envelope_of, nilpotency_index, radical, radical_elements};
use hecke_core::pipeline::{ktype_table, sweep, MultiplicityTable, SweepConfig, SweepReport};
use hecke_core::scalar::{int, LaurentPoly, Rational};
use hecke_core::segments::{is_generic, Multisegment};
use hecke_core::symgroup::{all_permutations, Permutation};

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ms(s: &str) -> Multisegment {
    s.parse().expect("valid multisegment")
}

fn table(m: &str, q: &Rational) -> Result<MultiplicityTable, String> {
    ktype_table(&ms(m), q).map_err(|e| format!("{m}: {e}"))
}

fn values(t: &MultiplicityTable) -> Vec<u64> {
    t.entries.values().copied().collect()
}

fn gl3_example(q: &Rational) -> Outcome {
    let start = Instant::now();
    let t = table("[0,0];[2,2];[4,4]", q)?;
    let elapsed = start.elapsed();
    ensure(values(&t) == [1, 2, 1], || format!("table {:?}", t.entries))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("(3):1 (2,1):2 (1,1,1):1 in {elapsed:.2?}"))
}

fn run_sweeps(q: &Rational, jobs: usize) -> Result<Vec<SweepReport>, String> {
    (2..=4)
        .map(|n| {
            let config = SweepConfig { q: q.clone(), jobs, ..SweepConfig::new(n) };
            let report = sweep(&config).map_err(|e| e.to_string())?;
            ensure(report.errors.is_empty(), || format!("n={n}: errors {:?}", report.errors))?;
            Ok(report)
        })
        .collect()
}

fn sweep_theorem(reports: &[SweepReport]) -> Outcome {
    let mut summary = Vec::new();
    for report in reports {
        for c in &report.certificates {
            let expected = u64::from(is_generic(&c.multisegment));
            ensure(c.sign_multiplicity == expected, || {
                format!("{}: sign multiplicity {}, generic {}", c.multisegment, c.sign_multiplicity, c.generic)
            })?;
        }
        if report.n == 4 {
            ensure(report.elapsed < Duration::from_secs(300), || format!("n=4 took {:?}", report.elapsed))?;
        }
        summary.push(format!("n={}: {} in {:.1?}", report.n, report.certificates.len(), report.elapsed));
    }
    Ok(summary.join(", "))
}

fn sign_at_most_one(reports: &[SweepReport]) -> Outcome {
    let mut total = 0;
    for report in reports {
        for c in &report.certificates {
            ensure(c.sign_multiplicity <= 1, || format!("{}: {}", c.multisegment, c.sign_multiplicity))?;
        }
        total += report.certificates.len();
    }
    Ok(format!("{total} multisegments"))
}

fn indicator(t: &MultiplicityTable, label: &Partition) -> bool {
    t.entries.iter().all(|(l, &m)| m == u64::from(l == label))
}

fn extreme_quotients(q: &Rational) -> Outcome {
    for n in 1..=4usize {
        let params = HeckeParams::new(n, q.clone()).map_err(|e| e.to_string())?;
        let single = format!("[0,{}]", n - 1);
        let chain: Vec<String> = (0..n).rev().map(|k| format!("[{k},{k}]")).collect();
        let chain = chain.join(";");
        let cases = [
            (single, -Rational::one(), min_label(n as u32).unwrap().0),
            (chain, q.clone(), max_label(n as u32).unwrap().0),
        ];
        for (m, value, label) in cases {
            let standard = induced_standard_module(&params, &ms(&m)).map_err(|e| e.to_string())?;
            let head = cosocle(&standard).map_err(|e| format!("{m}: {e}"))?;
            ensure(head.dim() == 1, || format!("{m}: head has dimension {}", head.dim()))?;
            for i in 0..n - 1 {
                ensure(head.module().t(i) == &Matrix::scalar(1, &value), || {
                    format!("{m}: T_{i} acts by {:?}", head.module().t(i))
                })?;
            }
            let t = table(&m, q)?;
            ensure(indicator(&t, &label), || format!("{m}: table {:?}", t.entries))?;
        }
    }
    Ok("single segments give T_i = -1 on (n), decreasing chains give T_i = q on (1^n)".into())
}

fn generic_principal_series(q: &Rational) -> Outcome {
    for n in 1..=4usize {
        let m: Vec<String> = (0..n).map(|k| format!("[{0},{0}]", 2 * k)).collect();
        let t = table(&m.join(";"), q)?;
        let factorial: u64 = (1..=n as u64).product();
        ensure(t.quotient_dim as u64 == factorial, || format!("n={n}: dimension {}", t.quotient_dim))?;
        for (l, &mult) in &t.entries {
            ensure(mult == count_syt(l), || format!("n={n}: {l} occurs {mult} times"))?;
        }
        ensure(t.accounted_dim() == factorial, || format!("n={n}: accounted {}", t.accounted_dim()))?;
    }
    Ok("quotient dimension n!, entries equal tableau counts".into())
}

fn seeded_runner(cases: u32) -> TestRunner {
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, rng)
}

fn relations() -> Outcome {
    let q = int(3);
    for n in 2..=5 {
        let p = HeckeParams::new(n, q.clone()).unwrap();
        let t: Vec<HeckeElement> = (0..n - 1).map(|i| HeckeElement::generator(&p, i)).collect();
        let mul = |a: &HeckeElement, b: &HeckeElement| hecke_mul(a, b).unwrap();
        for i in 0..n - 1 {
            let quad = t[i].scale(&(&q - &Rational::one())).add(&HeckeElement::one(&p).scale(&q)).unwrap();
            ensure(mul(&t[i], &t[i]) == quad, || format!("quadratic relation, n={n}, i={i}"))?;
            if i + 2 < n {
                let lhs = mul(&mul(&t[i], &t[i + 1]), &t[i]);
                let rhs = mul(&mul(&t[i + 1], &t[i]), &t[i + 1]);
                ensure(lhs == rhs, || format!("braid relation, n={n}, i={i}"))?;
            }
        }
        for l in enumerate_partitions(n as u32) {
            let s = specht_module(&p, &l).map_err(|e| e.to_string())?;
            s.module().verify_relations().map_err(|e| format!("{l}: {e}"))?;
        }
    }

    let mut runner = seeded_runner(64);
    let poly = |n: usize| {
        proptest::collection::vec((proptest::collection::vec(-2i32..=2, n), -3i64..=3), 0..4).prop_map(move |terms| {
            LaurentPoly::from_terms(n, terms.into_iter().map(|(e, c)| (e, Rational::from_integer(c))))
        })
    };
    let strategy = (2usize..=4).prop_flat_map(move |n| (Just(n), 0..n - 1, poly(n)));
    runner
        .run(&strategy, |(n, i, p)| {
            let params = HeckeParams::new(n, int(3)).unwrap();
            let s = Permutation::simple(n, i);
            let ti = NormalFormElement::t(&params, s.clone());
            let lhs = nf_mul(&NormalFormElement::poly(&params, p.clone()), &ti).unwrap();
            let expected = NormalFormElement::term(&params, s, p.swap_vars(i))
                .add(&NormalFormElement::poly(&params, bl_correction(i, &p).scale(&int(2))))
                .unwrap();
            prop_assert_eq!(&lhs, &expected);
            let diff = &p - &p.swap_vars(i);
            let mut e = vec![0; n];
            e[i] = -1;
            e[i + 1] = 1;
            let den = &LaurentPoly::one(n) - &LaurentPoly::monomial(e, Rational::one());
            prop_assert_eq!(&(&bl_correction(i, &p) * &den), &diff);
            Ok(())
        })
        .map_err(|e| format!("Bernstein-Lusztig identity: {e}"))?;

    let p3 = HeckeParams::new(3, int(3)).unwrap();
    let elem =
        (0usize..6, poly(3)).prop_map(move |(k, f)| NormalFormElement::term(&p3, all_permutations(3)[k].clone(), f));
    let mut runner = seeded_runner(24);
    runner
        .run(&(elem.clone(), elem.clone(), elem), |(a, b, c)| {
            let left = nf_mul(&nf_mul(&a, &b).unwrap(), &c).unwrap();
            let right = nf_mul(&a, &nf_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            Ok(())
        })
        .map_err(|e| format!("normal-form associativity: {e}"))?;
    Ok("H_W products n<=5, Specht matrices n<=5, BL identity rank<=4, normal-form associativity".into())
}

fn radicals() -> Outcome {
    let e11 = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]);
    let e12 = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
    let upper = envelope_of(&[e11, e12.clone()], 2).map_err(|e| e.to_string())?;
    let rad = radical_elements(&upper);
    ensure(upper.dim() == 3 && rad.len() == 1, || {
        format!("upper triangular: dim {}, radical {}", upper.dim(), rad.len())
    })?;
    let pivot = &rad[0][(0, 1)];
    ensure(!pivot.is_zero() && rad[0] == e12.scale(pivot), || format!("radical {:?}", rad[0]))?;
    ensure(nilpotency_index(&rad, 2) == Some(2), || "radical of the upper triangular algebra not nilpotent".into())?;

    let params = HeckeParams::new(2, int(3)).unwrap();
    let chi = CentralCharacterData::new(vec![int(1), int(5)]).unwrap();
    let ps = principal_series(&params, &chi).map_err(|e| e.to_string())?;
    let a = envelope(&ps).map_err(|e| e.to_string())?;
    ensure(radical(&a).is_zero(), || "generic principal series has a nonzero radical".into())?;

    let mut checked = 0;
    for m in ["[1,1];[0,0]", "[0,0];[0,0]"] {
        let st = induced_standard_module(&params, &ms(m)).map_err(|e| e.to_string())?;
        let a = envelope(&st).map_err(|e| e.to_string())?;
        let rad = radical_elements(&a);
        ensure(nilpotency_index(&rad, st.dim()).is_some(), || format!("{m}: radical not nilpotent"))?;
        checked += 1;
    }
    let p3 = HeckeParams::new(3, int(3)).unwrap();
    for m in ["[1,1];[0,1]", "[2,2];[1,1];[0,0]", "[1,2];[0,0]"] {
        let st = induced_standard_module(&p3, &ms(m)).map_err(|e| e.to_string())?;
        let rad = radical_elements(&envelope(&st).map_err(|e| e.to_string())?);
        ensure(nilpotency_index(&rad, st.dim()).is_some(), || format!("{m}: radical not nilpotent"))?;
        checked += 1;
    }
    Ok(format!("textbook cases, generic principal series, {checked} nilpotent radicals"))
}

fn combinatorics() -> Outcome {
    for n in 1..=6u32 {
        let parts = enumerate_partitions(n);
        let leq = |a: &Partition, b: &Partition| dominance_leq(a, b).unwrap();
        let (lo, hi) = (min_label(n).unwrap().0, max_label(n).unwrap().0);
        for a in &parts {
            ensure(leq(a, a), || format!("reflexivity at {a}"))?;
            ensure(leq(&lo, a) && leq(a, &hi), || format!("{a} outside [{lo}, {hi}]"))?;
            for b in &parts {
                ensure(!(leq(a, b) && leq(b, a)) || a == b, || format!("antisymmetry at {a}, {b}"))?;
                for c in &parts {
                    ensure(!(leq(a, b) && leq(b, c)) || leq(a, c), || format!("transitivity at {a}, {b}, {c}"))?;
                }
            }
        }
        let mut squares = 0u64;
        for l in &parts {
            let enumerated = enumerate_syt(l).len() as u128;
            ensure(hook_length_count(l) == enumerated, || format!("tableau count of {l}"))?;
            squares += count_syt(l).pow(2);
        }
        ensure(squares == (1..=n as u64).product::<u64>(), || format!("sum of squares at n={n}"))?;
    }
    Ok("order axioms, endpoints, hook lengths and sum of squares for n<=6".into())
}

fn record(reports: &[SweepReport]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| &r.certificates)
        .map(|c| format!("{} {} {} {}", c.multisegment, c.sign_multiplicity, c.quotient_dim, c.verdict.as_str()))
        .collect()
}

fn across_q(reference: &[SweepReport]) -> Outcome {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut tables = Vec::new();
    for q in [int(2), int(3), int(5)] {
        let reports = if q == int(3) { reference.to_vec() } else { run_sweeps(&q, jobs)? };
        let checks: [(&str, Outcome); 5] = [
            ("1", gl3_example(&q)),
            ("2", sweep_theorem(&reports)),
            ("3", sign_at_most_one(&reports)),
            ("4", extreme_quotients(&q)),
            ("5", generic_principal_series(&q)),
        ];
        for (name, outcome) in checks {
            outcome.map_err(|e| format!("q={q}, criterion {name}: {e}"))?;
        }
        let mut small = Vec::new();
        for n in 1..=4usize {
            let m: Vec<String> = (0..n).map(|k| format!("[{0},{0}]", 2 * k)).collect();
            small.push(values(&table(&m.join(";"), &q)?));
        }
        small.push(values(&table("[0,0];[2,2];[4,4]", &q)?));
        tables.push((q, record(&reports), small));
    }
    let (_, first, first_small) = &tables[0];
    for (q, rec, small) in &tables[1..] {
        ensure(rec == first && small == first_small, || format!("results at q={q} differ from q=2"))?;
    }
    Ok("criteria 1-5 and all sweep certificates agree at q = 2, 3, 5".into())
}

fn main() -> ExitCode {
    let q = int(3);
    let reports = run_sweeps(&q, 1);
    let with_reports = |f: fn(&[SweepReport]) -> Outcome| -> Check<'_> {
        let reports = &reports;
        Box::new(move || reports.as_ref().map_err(Clone::clone).and_then(|r| f(r)))
    };
    let criteria: Vec<(&str, Check)> = vec![
        ("1 GL3 unlinked example", Box::new(|| gl3_example(&q))),
        ("2 sweep: sign multiplicity matches genericity", with_reports(sweep_theorem)),
        ("3 sign multiplicity at most one", with_reports(sign_at_most_one)),
        ("4 Steinberg and trivial extremes", Box::new(|| extreme_quotients(&q))),
        ("5 generic principal series", Box::new(|| generic_principal_series(&q))),
        ("6 algebra relations", Box::new(relations)),
        ("7 radicals", Box::new(radicals)),
        ("8 partition combinatorics", Box::new(combinatorics)),
        ("9 independence of q", with_reports(across_q)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
