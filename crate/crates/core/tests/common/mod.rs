//! Checks shared by the integration tests and the acceptance run. Each check
//! returns a one-line detail on success and the first failure otherwise.
#![allow(dead_code)]


use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestCaseError, TestRunner};

use efht::analysis::{empirical_multiple_gain, gain_trace, observed_levels};
use efht::bounds::*;
use efht::ea::{run_ea, step_generation};
use efht::harness::{pearson, run_batch, verify, BatchResult, ConsistencyReport, ExperimentConfig};
use efht::model::{BitString, EaConfig, Genotype, Population, RandomStream, Tour};
use efht::problems::{
    build_experiment_instance, derive_quantities, two_opt_inversion, DerivedDetail,
    ExperimentProblem, KnapsackInstance, MaxSatInstance, ProblemInstance,
};
use efht::Error;

pub type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub const SEED: u64 = 7;
pub const RUNS: usize = 500;

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

// ---------------------------------------------------------------- oracles

fn check_knapsack(values: Vec<u64>, weights: Vec<u64>, capacity: u64) -> Result<(), String> {
    let label = format!("knapsack v={values:?} w={weights:?} K={capacity}");
    let inst = KnapsackInstance::favorably_correlated(values.clone(), weights.clone(), capacity)
        .map_err(|e| format!("{label}: {e}"))?;
    let n = values.len();
    let naive = oracle::knapsack(&values, &weights, capacity);
    let pi = ProblemInstance::Knapsack(inst);
    for mask in 0..(1u64 << n) {
        let got = pi
            .evaluate(&Genotype::Bits(BitString::from_mask(mask, n)))
            .unwrap();
        let want = oracle::knapsack_value(&values, &weights, capacity, mask);
        ensure!(
            got == want,
            "{label}: mask {mask:b} gives {got:?}, oracle {want:?}"
        );
    }
    let distinct: std::collections::BTreeSet<_> = values.iter().collect();
    let q = oracle::knapsack_q(&values, &weights, capacity, naive.optimum);
    let derived = derive_quantities(&pi, 24);
    if naive.values.len() < 2 || distinct.len() < 2 || q.is_none() {
        ensure!(derived.is_err(), "{label}: degenerate instance accepted");
        return Ok(());
    }
    let d = derived.map_err(|e| format!("{label}: {e}"))?;
    let (alpha, beta) = naive.gaps().unwrap();
    let DerivedDetail::Knapsack(k) = &d.detail else {
        return Err(format!("{label}: wrong detail"));
    };
    let q = q.unwrap();
    let p2_num: u128 = (0..q as u64).map(|i| oracle::binomial(q as u64, i)).sum();
    let vals: Vec<i64> = naive.values.iter().copied().collect();
    ensure!(d.optimum_fitness == naive.optimum, "{label}: optimum");
    ensure!(
        d.space.values() == vals.as_slice(),
        "{label}: S {:?} vs {vals:?}",
        d.space.values()
    );
    ensure!(
        (d.space.alpha(), d.space.beta()) == (alpha, beta),
        "{label}: alpha/beta"
    );
    ensure!(
        k.feasible_count == naive.feasible,
        "{label}: N {} vs {}",
        k.feasible_count,
        naive.feasible
    );
    ensure!(k.q == q, "{label}: q {} vs {q}", k.q);
    ensure!(k.p2_numerator == p2_num, "{label}: p2 numerator");
    let v_min = *values.iter().min().unwrap();
    let mut d_min = u64::MAX;
    for &a in &values {
        for &b in &values {
            if a > b {
                d_min = d_min.min(a - b);
            }
        }
    }
    ensure!(k.d_min == d_min && k.v_min == v_min, "{label}: d_min/v_min");
    Ok(())
}

fn check_maxsat(n: usize, width: usize, clauses: Vec<Vec<i32>>) -> Result<(), String> {
    let label = format!("maxsat n={n} clauses={clauses:?}");
    let inst =
        MaxSatInstance::new(n, width, clauses.clone()).map_err(|e| format!("{label}: {e}"))?;
    let pi = ProblemInstance::MaxSat(inst);
    let naive = oracle::maxsat(n, &clauses);
    for mask in 0..(1u64 << n) {
        let got = pi
            .evaluate(&Genotype::Bits(BitString::from_mask(mask, n)))
            .unwrap();
        let want = oracle::maxsat_value(&clauses, mask);
        ensure!(got == Some(want), "{label}: mask {mask:b}");
    }
    let derived = derive_quantities(&pi, 24);
    if naive.values.len() < 2 {
        ensure!(derived.is_err(), "{label}: constant fitness accepted");
        return Ok(());
    }
    let d = derived.map_err(|e| format!("{label}: {e}"))?;
    let DerivedDetail::MaxSat(m) = &d.detail else {
        return Err(format!("{label}: wrong detail"));
    };
    let vals: Vec<i64> = naive.values.iter().copied().collect();
    ensure!(naive.feasible == 1u128 << n, "{label}: N");
    ensure!(
        d.optimum_fitness == naive.optimum && m.n_opt == naive.n_opt,
        "{label}: optimum/N_opt"
    );
    ensure!(d.space.values() == vals.as_slice(), "{label}: S");
    ensure!(
        (d.space.alpha(), d.space.beta()) == naive.gaps().unwrap(),
        "{label}: alpha/beta"
    );
    Ok(())
}

fn check_tsp(n: usize) -> Result<(), String> {
    let (pi, _) =
        build_experiment_instance(ExperimentProblem::Tsp, n).map_err(|e| e.to_string())?;
    let mut values = std::collections::BTreeSet::new();
    let mut optima = 0u64;
    let mut mismatch = None;
    oracle::for_each_permutation(n, |p| {
        let want = oracle::tsp_value(p);
        values.insert(want);
        optima += (want == 0) as u64;
        let got = pi
            .evaluate(&Genotype::Tour(Tour::new(p.to_vec()).unwrap()))
            .unwrap();
        if got != Some(want) && mismatch.is_none() {
            mismatch = Some(format!("tsp n={n}: {p:?} gives {got:?}, oracle {want}"));
        }
    });
    if let Some(m) = mismatch {
        return Err(m);
    }
    // Each optimal cycle appears n times per direction.
    ensure!(optima == 2 * n as u64, "tsp n={n}: {optima} optimal tours");
    let d = derive_quantities(&pi, 24).map_err(|e| e.to_string())?;
    let vals: Vec<i64> = values.iter().copied().collect();
    ensure!(d.optimum_fitness == vals[0], "tsp n={n}: optimum");
    ensure!(
        d.space.values() == vals.as_slice(),
        "tsp n={n}: S {:?} vs {vals:?}",
        d.space.values()
    );
    Ok(())
}

fn random_knapsack(rng: &mut RandomStream) -> (Vec<u64>, Vec<u64>, u64) {
    let n = 2 + rng.below(9);
    let mut values: Vec<u64> = (0..n).map(|_| 1 + rng.below(9) as u64).collect();
    let mut weights: Vec<u64> = (0..n).map(|_| 1 + rng.below(9) as u64).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    weights.sort_unstable();
    let total: u64 = weights.iter().sum();
    let capacity = weights[0] + rng.below((total - weights[0] + 1) as usize) as u64;
    (values, weights, capacity)
}

fn random_maxsat(rng: &mut RandomStream) -> (usize, usize, Vec<Vec<i32>>) {
    let n = 2 + rng.below(9);
    let width = 1 + rng.below(3.min(n));
    let m = 1 + rng.below(12);
    let clauses = (0..m)
        .map(|_| {
            let mut vars: Vec<i32> = (1..=n as i32).collect();
            rng.shuffle(&mut vars);
            vars[..width]
                .iter()
                .map(|&v| if rng.bernoulli(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    (n, width, clauses)
}

/// Fitness, `N`, `N_opt`, optimum, `S`, `α`, `β` and `q` against brute force
/// for every family member and a random sample of instances with `n ≤ 10`.
pub fn oracle_equivalence() -> Check {
    let mut checked = 0;
    for n in 4..=10 {
        let (pi, _) = build_experiment_instance(ExperimentProblem::Knapsack, n).unwrap();
        let ProblemInstance::Knapsack(k) = pi else {
            unreachable!()
        };
        check_knapsack(k.values().to_vec(), k.weights().to_vec(), k.capacity())?;
        checked += 1;
    }
    for n in 2..=10 {
        let (pi, _) = build_experiment_instance(ExperimentProblem::MaxSat, n).unwrap();
        let ProblemInstance::MaxSat(m) = pi else {
            unreachable!()
        };
        check_maxsat(n, m.clause_width(), m.clauses().to_vec())?;
        checked += 1;
    }
    for n in 6..=10 {
        check_tsp(n)?;
        checked += 1;
    }
    let mut rng = RandomStream::new(2024);
    for _ in 0..60 {
        let (v, w, c) = random_knapsack(&mut rng);
        check_knapsack(v, w, c)?;
        let (n, width, clauses) = random_maxsat(&mut rng);
        check_maxsat(n, width, clauses)?;
        checked += 2;
    }
    Ok(format!("{checked} instances match brute force exactly"))
}

// ---------------------------------------------------------------- bounds

fn knapsack5(beta: f64) -> KnapsackBoundInputs {
    KnapsackBoundInputs {
        n: 5,
        mu: 2,
        lambda: 10,
        p1: 9.0 / 16.0,
        p2: 7.0 / 16.0,
        d_min: 2.0,
        v_min: 1.0,
        y0: 7.0,
        r0: 0.0,
        alpha: 1.0,
        beta,
    }
}

fn maxsat3(beta: f64) -> MaxSatBoundInputs {
    MaxSatBoundInputs {
        n: 3,
        lambda: 10,
        clause_count: 4,
        n_opt: 2,
        y0: 2.0,
        r0: 0.0,
        alpha: 1.0,
        beta,
    }
}

fn tsp20(mu: u64) -> TspBoundInputs {
    let (pi, x0) = build_experiment_instance(ExperimentProblem::Tsp, 20).unwrap();
    let l = pi.evaluate(&x0).unwrap().unwrap() as u64;
    TspBoundInputs {
        n: 20,
        mu,
        lambda: 10,
        lambda_p: 1.0,
        l,
        r0: 0.0,
        alpha: 1.0,
        beta: 2.0,
    }
}

/// Closed-form examples against the calculator in `oracle::closed_form`,
/// relative error at most 1e-10.
pub fn bound_regression() -> Check {
    use oracle::closed_form as cf;
    const TOL: f64 = 1e-10;
    let mut cases: Vec<(&str, f64, f64)> = Vec::new();

    let den = cf::knapsack_den(5.0, 2.0, 10.0, 9.0 / 16.0, 7.0 / 16.0, 2.0, 1.0);
    cases.push((
        "knapsack avg n=5",
        knapsack_avg_bound(&knapsack5(1.0)).unwrap(),
        7.0 / den,
    ));
    cases.push((
        "knapsack k_low n=5",
        knapsack_klow(&knapsack5(1.0)).unwrap(),
        1.0 / den,
    ));
    cases.push((
        "knapsack k_low beta=2",
        knapsack_klow(&knapsack5(2.0)).unwrap(),
        2.0 / den,
    ));
    cases.push((
        "knapsack worst k=1",
        knapsack_worst_bound(&knapsack5(1.0), 1.0).unwrap(),
        7.0,
    ));

    let den = cf::maxsat_den(3, 10.0, 2.0);
    let m = MaxSatBoundInputs {
        y0: 4.0,
        ..maxsat3(1.0)
    };
    cases.push((
        "maxsat avg n=3",
        maxsat_avg_bound(&m).unwrap(),
        cf::harmonic(4) / den,
    ));
    cases.push(("maxsat k_low n=3", maxsat_klow(&m).unwrap(), 1.0 / den));
    let one = MaxSatBoundInputs {
        clause_count: 1,
        ..m.clone()
    };
    cases.push(("maxsat avg s=1", maxsat_avg_bound(&one).unwrap(), 1.0 / den));

    cases.push(("tsp g n=20", tsp_g(20).unwrap(), 274.0 / 5508.0));
    cases.push(("tsp g n=6", tsp_g(6).unwrap(), 8.0 / 48.0));
    let t = tsp20(2);
    cases.push((
        "tsp avg n=20",
        tsp_avg_bound(&t).unwrap(),
        cf::tsp_avg(20.0, 2.0, 10.0, 1.0, t.l),
    ));
    let e = std::f64::consts::E;
    cases.push((
        "tsp k_low n=20",
        tsp_klow(&t).unwrap(),
        2.0 * (1.0 + 2.0 * e * 190.0 / 10.0) / (1.0 + 274.0 / 5508.0),
    ));
    cases.push(("harmonic 4", harmonic(4), 25.0 / 12.0));
    cases.push(("harmonic 1", harmonic(1), 1.0));

    // Rough magnitudes quoted for the small examples.
    ensure!(
        (knapsack_avg_bound(&knapsack5(1.0)).unwrap() - 24.5).abs() < 0.1,
        "knapsack avg not ≈ 24.5"
    );
    ensure!(
        (knapsack_klow(&knapsack5(1.0)).unwrap() - 3.49).abs() < 0.01,
        "knapsack k_low not ≈ 3.49"
    );
    ensure!(
        (maxsat_avg_bound(&m).unwrap() - 2.27).abs() < 0.01,
        "maxsat avg not ≈ 2.27"
    );
    ensure!(
        (maxsat_klow(&m).unwrap() - 1.089).abs() < 0.001,
        "maxsat k_low not ≈ 1.089"
    );

    for n in 6..=1000u64 {
        let (num, den) = tsp_g_fraction(n).unwrap();
        let m = n as i128;
        let want = num_rational::Ratio::new(
            -(m - 2) * (m - 5) + 2 * (m - 3) * (m - 4),
            (m - 2) * (m - 2) * (m - 3),
        );
        ensure!(
            num_rational::Ratio::new(num, den) == want,
            "tsp g fraction n={n}"
        );
        ensure!(
            rel_err(tsp_g(n).unwrap(), cf::tsp_g(n as f64)) <= TOL,
            "tsp g n={n}"
        );
    }

    let mut worst = 0.0f64;
    for (name, got, want) in &cases {
        let err = rel_err(*got, *want);
        ensure!(err <= TOL, "{name}: {got} vs {want} (rel err {err:e})");
        worst = worst.max(err);
    }
    Ok(format!(
        "{} closed forms plus tsp g for n in 6..=1000, max rel err {worst:.1e}",
        cases.len()
    ))
}

/// Substitution identities and limit checks standing in for the asymptotic
/// statements.
pub fn substitution_and_limits() -> Check {
    const TOL: f64 = 1e-12;
    let k = knapsack5(2.0);
    let klow = knapsack_klow(&k).unwrap();
    let den = oracle::closed_form::knapsack_den(5.0, 2.0, 10.0, k.p1, k.p2, k.d_min, k.v_min);
    let closed = k.beta * (k.y0 - k.r0) / (k.alpha * den);
    ensure!(
        rel_err(knapsack_worst_bound(&k, klow).unwrap(), closed) <= TOL,
        "knapsack substitution"
    );
    ensure!(
        rel_err(klow, k.beta * knapsack_avg_bound(&k).unwrap() / k.y0) <= TOL,
        "knapsack k_low identity"
    );

    let m = MaxSatBoundInputs {
        y0: 3.0,
        ..maxsat3(2.0)
    };
    let den = one_minus_exp_neg(10.0 * 2.0 / 8.0);
    let klow = maxsat_klow(&m).unwrap();
    ensure!(
        rel_err(
            maxsat_worst_bound(&m, klow).unwrap(),
            m.beta * m.y0 / (m.alpha * den)
        ) <= TOL,
        "maxsat substitution"
    );
    let huge = MaxSatBoundInputs {
        lambda: 1 << 40,
        ..m.clone()
    };
    ensure!(
        rel_err(maxsat_klow(&huge).unwrap(), m.beta) <= TOL,
        "maxsat k_low does not tend to beta"
    );

    let t = tsp20(2);
    let klow = tsp_klow(&t).unwrap();
    let (num, den) = tsp_g_fraction(20).unwrap();
    let g = num as f64 / den as f64;
    let wait = 2.0 * std::f64::consts::E * 190.0 / 10.0;
    ensure!(
        rel_err(
            tsp_worst_bound(&t, klow).unwrap(),
            t.beta * t.l as f64 * (1.0 + wait) / (t.alpha * (1.0 + g))
        ) <= TOL,
        "tsp substitution"
    );
    ensure!(tsp_g(1_000_000).unwrap() < 1e-5, "1 + g does not tend to 1");
    let zero = TspBoundInputs { l: 0, ..t.clone() };
    ensure!(
        tsp_avg_bound(&zero).unwrap() == 0.0,
        "tsp bound at the optimum"
    );
    for s in 1..=10_000u64 {
        ensure!(
            harmonic(s) <= (s as f64).ln() + 1.0,
            "harmonic({s}) above ln s + 1"
        );
    }
    let mut previous = f64::INFINITY;
    for lambda in 1..=50 {
        let b = knapsack_avg_bound(&KnapsackBoundInputs {
            lambda,
            ..knapsack5(1.0)
        })
        .unwrap();
        ensure!(
            b <= previous,
            "knapsack bound increases with lambda at {lambda}"
        );
        previous = b;
    }
    ensure!(
        tsp_klow(&tsp20(3)).unwrap() > tsp_klow(&tsp20(2)).unwrap(),
        "tsp k_low not increasing in mu"
    );
    Ok("substitution identities within 1e-12; limit and monotonicity checks hold".into())
}

// ---------------------------------------------------------------- properties

fn family_strategy() -> impl Strategy<Value = (ExperimentProblem, usize, usize, usize, u64)> {
    prop_oneof![
        (4usize..=12).prop_map(|n| (ExperimentProblem::Knapsack, n)),
        (2usize..=8).prop_map(|n| (ExperimentProblem::MaxSat, n)),
        (6usize..=10).prop_map(|n| (ExperimentProblem::Tsp, n)),
    ]
    .prop_flat_map(|(p, n)| (Just(p), Just(n), 1usize..=4, 1usize..=12, any::<u64>()))
}

fn setup(
    p: ExperimentProblem,
    n: usize,
    mu: usize,
    lambda: usize,
    seed: u64,
) -> (ProblemInstance, EaConfig, i64) {
    let (pi, x0) = build_experiment_instance(p, n).unwrap();
    let optimum = derive_quantities(&pi, 24).unwrap().optimum_fitness;
    let cfg = EaConfig::new(pi.default_variant(), mu, lambda, seed)
        .with_initial(EaConfig::replicate(x0, mu))
        .with_max_generations(1_000_000);
    (pi, cfg, optimum)
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn prop_determinism(
    case: (ExperimentProblem, usize, usize, usize, u64),
) -> Result<(), TestCaseError> {
    let (p, n, mu, lambda, seed) = case;
    let (pi, cfg, opt) = setup(p, n, mu, lambda, seed);
    let a = run_ea(&pi, &cfg, opt).map_err(|e| fail(e.to_string()))?;
    let b = run_ea(&pi, &cfg, opt).map_err(|e| fail(e.to_string()))?;
    prop_assert_eq!(a.events, b.events);
    prop_assert_eq!(a.fht, b.fht);
    Ok(())
}

/// Best fitness never worsens and every gain is non-negative.
pub fn prop_elitism(
    case: (ExperimentProblem, usize, usize, usize, u64),
) -> Result<(), TestCaseError> {
    let (p, n, mu, lambda, seed) = case;
    let (pi, cfg, opt) = setup(p, n, mu, lambda, seed);
    let out = run_ea(&pi, &cfg, opt).map_err(|e| fail(e.to_string()))?;
    let dir = pi.direction();
    for w in out.events.windows(2) {
        prop_assert!(
            !dir.is_better(w[0].best_fitness, w[1].best_fitness),
            "best fitness worsened"
        );
    }
    let trace = gain_trace(&out, opt, dir).map_err(|e| fail(e.to_string()))?;
    prop_assert!(trace.gains.iter().all(|&g| g >= 0));
    prop_assert_eq!(trace.potentials.last().copied(), Some(0));
    Ok(())
}

pub fn prop_population_size(
    case: (ExperimentProblem, usize, usize, usize, u64),
) -> Result<(), TestCaseError> {
    let (p, n, mu, lambda, seed) = case;
    let (pi, cfg, opt) = setup(p, n, mu, lambda, seed);
    let mut rng = RandomStream::new(seed);
    let mut pop = Population::initialize(&cfg, &pi, &mut rng).map_err(|e| fail(e.to_string()))?;
    for g in 1..=40 {
        let (next, event) =
            step_generation(&pop, &pi, &cfg, opt, g, &mut rng).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(next.len(), mu);
        prop_assert_eq!(
            next.recount_best(),
            (next.best_fitness(), next.best_count())
        );
        prop_assert_eq!(event.best_fitness, next.best_fitness());
        prop_assert!(!pop
            .direction()
            .is_better(pop.best_fitness(), next.best_fitness()));
        pop = next;
    }
    Ok(())
}

pub fn prop_two_opt_involution(case: (usize, u64, usize, usize)) -> Result<(), TestCaseError> {
    let (n, seed, a, b) = case;
    let t = Tour::random(n, &mut RandomStream::new(seed));
    let (i, j) = (1 + a % n, 1 + b % n);
    if i >= j {
        prop_assert!(two_opt_inversion(&t, i, j).is_err());
        return Ok(());
    }
    let once = two_opt_inversion(&t, i, j).unwrap();
    prop_assert!(Tour::new(once.order().to_vec()).is_ok());
    prop_assert_eq!(&once.order()[..i - 1], &t.order()[..i - 1]);
    prop_assert_eq!(&once.order()[j..], &t.order()[j..]);
    prop_assert_eq!(two_opt_inversion(&once, i, j).unwrap(), t);
    Ok(())
}

pub fn prop_pearson(xy: Vec<(f64, f64)>) -> Result<(), TestCaseError> {
    let (x, y): (Vec<f64>, Vec<f64>) = xy.into_iter().unzip();
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(&x) || constant(&y) {
        prop_assert!(matches!(
            pearson(&x, &y),
            Err(Error::UndefinedCorrelation(_))
        ));
        return Ok(());
    }
    let r = pearson(&x, &y).unwrap();
    let want = oracle::pearson_two_pass(&x, &y);
    prop_assert!((r - want).abs() <= 1e-12, "r = {} vs two-pass {}", r, want);
    prop_assert_eq!(pearson(&x, &x).unwrap(), 1.0);
    Ok(())
}

pub fn tour_case() -> impl Strategy<Value = (usize, u64, usize, usize)> {
    (2usize..=60, any::<u64>(), any::<usize>(), any::<usize>())
}

pub fn pearson_case() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..60)
}

pub fn ea_case() -> impl Strategy<Value = (ExperimentProblem, usize, usize, usize, u64)> {
    family_strategy()
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(RunnerConfig {
        cases,
        failure_persistence: None,
        ..RunnerConfig::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

pub fn property_suite(cases: u32) -> Check {
    run_property("determinism", cases, ea_case(), prop_determinism)?;
    run_property("elitism", cases, ea_case(), prop_elitism)?;
    run_property("population size", cases, ea_case(), prop_population_size)?;
    run_property(
        "2-opt involution",
        cases * 4,
        tour_case(),
        prop_two_opt_involution,
    )?;
    run_property("pearson", cases * 4, pearson_case(), prop_pearson)?;
    Ok(format!(
        "5 property groups, {cases} to {} cases each",
        cases * 4
    ))
}

// ---------------------------------------------------------------- batches

fn acceptance_config(problem: &str, n_min: usize, n_max: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::family(problem, n_min, n_max);
    cfg.runs_per_n = RUNS;
    cfg.base_seed = SEED;
    cfg
}

pub fn reproduce(problem: &str, n_min: usize, n_max: usize) -> (BatchResult, ConsistencyReport) {
    verify(&acceptance_config(problem, n_min, n_max))
        .unwrap_or_else(|e| panic!("{problem} batch failed: {e}"))
}

pub fn batch(problem: &str, n: usize) -> BatchResult {
    run_batch(&acceptance_config(problem, n, n))
        .unwrap_or_else(|e| panic!("{problem} batch failed: {e}"))
}

/// Correlation thresholds and per-`n` dominance of both bounds.
pub fn reproduction_check(report: &ConsistencyReport) -> Check {
    let (ra, rw, rk) = (report.average.r, report.worst.r, report.k_low.r);
    let detail = format!(
        "r_avg={ra:.4} r_worst={rw:.4} r_k={rk:.4}; k_hat>k_low fails at n={:?}",
        report.k_low.violations
    );
    ensure!(
        ra >= 0.95,
        "r(avg_bound, T0_hat) = {ra:.4} < 0.95; {detail}"
    );
    ensure!(
        rw >= 0.90,
        "r(worst_bound, T_max) = {rw:.4} < 0.90; {detail}"
    );
    ensure!(rk >= 0.90, "r(k_hat, k_low) = {rk:.4} < 0.90; {detail}");
    ensure!(
        report.average.dominates_all,
        "avg_bound <= T0_hat at n={:?}; {detail}",
        report.average.violations
    );
    let worst_fail: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.worst_bound <= r.t_max)
        .map(|r| format!("n={} ({:.1} <= {})", r.n, r.worst_bound, r.t_max))
        .collect();
    ensure!(
        worst_fail.is_empty(),
        "worst_bound <= T_max at {}; {detail}",
        worst_fail.join(", ")
    );
    Ok(detail)
}

/// One-step gain at each well-sampled potential level against the drift
/// lower bound `(1 − e^{−λN_opt/2^n})·r`, one-sided at 3 standard errors.
pub fn drift_diagnostic(batch: &BatchResult) -> Check {
    let r = &batch.results[0];
    let BoundInputs::MaxSat(inp) = &r.bound_inputs else {
        return Err("not a MAX-SAT batch".into());
    };
    let h = one_minus_exp_neg(inp.lambda as f64 * inp.n_opt as f64 / 2f64.powi(inp.n as i32));
    let mut tested = Vec::new();
    for level in observed_levels(&r.traces) {
        let Some(s) = empirical_multiple_gain(&r.traces, 1, level).unwrap() else {
            continue;
        };
        if s.count < 200 {
            continue;
        }
        let floor = h * level as f64 - 3.0 * s.std_error;
        ensure!(
            s.mean >= floor,
            "level {level}: mean gain {:.4} < {:.4} (count {})",
            s.mean,
            floor,
            s.count
        );
        tested.push(format!(
            "r={level}: {:.3}>={:.3} (m={})",
            s.mean, floor, s.count
        ));
    }
    ensure!(!tested.is_empty(), "no level observed 200 times");
    Ok(tested.join("; "))
}
