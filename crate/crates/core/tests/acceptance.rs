//! Acceptance suite: one test per contract item, each printing a single
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing items too.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{One, Zero};

use obddlab_core::bounds::{
    check_inequalities, distinguishable_count, n_of, permutations, subfunction_max,
    InequalityCheck, SearchMode, TruthTable,
};
use obddlab_core::constructions::{
    build_hwb_afobdd, build_minimal_obdd, build_mws_afobdd, build_ssa_afobdd,
    build_ssa_lv_pobdd, build_ssa_lv_uobdd, build_ws_afobdd,
};
use obddlab_core::functions::{
    all_inputs, hwb, modxor_member, mws, smallest_prime_gt, ssa, ws, BitString, SsaParams,
};
use obddlab_core::numeric::{
    rational, rational_int, validate_affine, validate_orthogonal, validate_stochastic, QuadExt,
    Rational,
};
use obddlab_core::obdd::{
    sweep_classify, CertMode, Obdd, VariableOrder, DEFAULT_SWEEP_BUDGET,
};

/// Single PASS/FAIL line per item, then the hard assertion.
fn conclude(name: &str, failures: Vec<String>, detail: String) {
    if failures.is_empty() {
        println!("ACCEPTANCE PASS {name}: {detail}");
    } else {
        println!(
            "ACCEPTANCE FAIL {name}: {} problem(s), first: {}",
            failures.len(),
            failures[0]
        );
    }
    assert!(failures.is_empty(), "{name}: {failures:?}");
}

#[test]
fn hwb_zero_error_exhaustive() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut inputs = 0u64;
    for n in 2..=12usize {
        let model = Obdd::Affine(build_hwb_afobdd(n).unwrap());
        match sweep_classify(&model, hwb, &CertMode::Exact, DEFAULT_SWEEP_BUDGET) {
            Ok(report) => {
                inputs += report.total;
                if !report.passed() {
                    failures.push(format!(
                        "n={n}: {} violations, first on {}",
                        report.violations.len(),
                        report.violations[0].input
                    ));
                }
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 60 {
        failures.push(format!("runtime {elapsed:?} exceeds 60 s"));
    }
    conclude(
        "hwb zero-error (n=2..=12)",
        failures,
        format!("{inputs} inputs exact in {elapsed:?}"),
    );
}

#[test]
fn ws_zero_error_exhaustive() {
    let mut failures = Vec::new();
    let mut inputs = 0u64;
    for n in 2..=10usize {
        let model = build_ws_afobdd(n).unwrap();
        let p = smallest_prime_gt(n as u64) as usize;
        if model.classical_count() != p {
            failures.push(format!(
                "n={n}: {} classical states, expected p(n)={p}",
                model.classical_count()
            ));
        }
        match sweep_classify(
            &Obdd::Affine(model),
            ws,
            &CertMode::Exact,
            DEFAULT_SWEEP_BUDGET,
        ) {
            Ok(report) => {
                inputs += report.total;
                if !report.passed() {
                    failures.push(format!(
                        "n={n}: violation on {}",
                        report.violations[0].input
                    ));
                }
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    conclude(
        "ws zero-error (n=2..=10)",
        failures,
        format!("{inputs} inputs exact, p(n) classical states"),
    );
}

#[test]
fn mws_zero_error_exhaustive() {
    let mut failures = Vec::new();
    let mut inputs = 0u64;
    for n in 2..=5usize {
        let model = build_mws_afobdd(n).unwrap();
        let p = smallest_prime_gt(n as u64) as usize;
        if model.classical_count() != p * p {
            failures.push(format!(
                "n={n}: {} classical states, expected p(n)^2={}",
                model.classical_count(),
                p * p
            ));
        }
        if model.affine_dim() != n + 1 {
            failures.push(format!(
                "n={n}: {} affine states, expected {}",
                model.affine_dim(),
                n + 1
            ));
        }
        let oracle = move |w: &BitString| {
            let x = BitString::new(w.as_slice()[..n].to_vec());
            let y = BitString::new(w.as_slice()[n..].to_vec());
            mws(&x, &y).unwrap()
        };
        match sweep_classify(
            &Obdd::Affine(model),
            oracle,
            &CertMode::Exact,
            DEFAULT_SWEEP_BUDGET,
        ) {
            Ok(report) => {
                inputs += report.total;
                if !report.passed() {
                    failures.push(format!(
                        "n={n}: violation on {}",
                        report.violations[0].input
                    ));
                }
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    conclude(
        "mws zero-error (n=2..=5)",
        failures,
        format!("{inputs} inputs exact, p(n)^2 classical and n+1 affine states"),
    );
}

#[test]
fn ssa_las_vegas_pobdd_and_uobdd() {
    let mut failures = Vec::new();
    let half = rational(1, 2);
    for d in 1..=2usize {
        let params = SsaParams::from_d(d).unwrap();
        let width_cap = 1usize << ((1 << (d - 1)) + d + 3);
        let pobdd = build_ssa_lv_pobdd(d).unwrap();
        let uobdd = build_ssa_lv_uobdd(d).unwrap();
        if pobdd.width() > width_cap {
            failures.push(format!("d={d}: pobdd width {} > {width_cap}", pobdd.width()));
        }
        if uobdd.width() > width_cap {
            failures.push(format!("d={d}: uobdd width {} > {width_cap}", uobdd.width()));
        }
        for x in all_inputs(params.n) {
            let po = pobdd.run(&x).unwrap();
            let uo = uobdd.run(&x).unwrap();
            let member = ssa(&x, &params).unwrap();
            let wrong = if member { &po.reject } else { &po.accept };
            if !wrong.is_zero() {
                failures.push(format!("d={d} x={x}: wrong-side probability {wrong}"));
                break;
            }
            let decision = po.accept.clone() + po.reject.clone();
            if decision != half {
                failures.push(format!("d={d} x={x}: decision probability {decision}"));
                break;
            }
            if po.promote() != uo {
                failures.push(format!("d={d} x={x}: outcome triples differ"));
                break;
            }
        }
    }
    conclude(
        "ssa las vegas pobdd/uobdd (d=1,2)",
        failures,
        "zero wrong side, decision exactly 1/2, widths 32/128, triples identical".into(),
    );
}

#[test]
fn ssa_exact_afobdd() {
    let mut failures = Vec::new();
    let mut inputs = 0u64;
    for d in 1..=2usize {
        let params = SsaParams::from_d(d).unwrap();
        let model = build_ssa_afobdd(d).unwrap();
        if model.classical_count() != 1 << (d + 1) {
            failures.push(format!(
                "d={d}: {} classical states, expected {}",
                model.classical_count(),
                1 << (d + 1)
            ));
        }
        if model.affine_dim() != (1 << d) + 1 {
            failures.push(format!(
                "d={d}: {} affine states, expected {}",
                model.affine_dim(),
                (1 << d) + 1
            ));
        }
        match sweep_classify(
            &Obdd::Affine(model),
            |x| ssa(x, &params).unwrap(),
            &CertMode::Exact,
            DEFAULT_SWEEP_BUDGET,
        ) {
            Ok(report) => {
                inputs += report.total;
                if !report.passed() {
                    failures.push(format!(
                        "d={d}: violation on {}",
                        report.violations[0].input
                    ));
                }
            }
            Err(e) => failures.push(format!("d={d}: {e}")),
        }
    }
    conclude(
        "ssa exact afobdd (d=1,2)",
        failures,
        format!("{inputs} inputs exact with declared state counts"),
    );
}

#[test]
fn ssa_order_search_baseline() {
    let mut failures = Vec::new();
    let params = SsaParams::from_d(1).unwrap();
    let f = TruthTable::from_fn(params.n, |x| ssa(x, &params).unwrap());
    let report = n_of(&f, SearchMode::Exhaustive, 1 << 24).unwrap();
    if report.orders_examined != 720 {
        failures.push(format!("examined {} orders, expected 720", report.orders_examined));
    }
    let n_f = report.n_f.expect("exhaustive search sets the bound");
    if n_f < 4 {
        failures.push(format!("N(SSA_6) = {n_f} < 4"));
    }
    // exact value, frozen as a regression baseline
    if n_f != 6 {
        failures.push(format!("N(SSA_6) = {n_f}, regression baseline is 6"));
    }
    conclude(
        "ssa order search (720 orders)",
        failures,
        format!("N(SSA_6) = {n_f} >= 4"),
    );
}

#[test]
fn modxor_family() {
    use obddlab_core::automata::{
        build_modxor_afa, build_modxor_lv_pfa, build_modxor_lv_ufa, run_automaton, sweep_strings,
    };
    let mut failures = Vec::new();
    for k in 1..=2usize {
        let count = distinguishable_count(|w| modxor_member(w, k), 2 * k + 2, 2 * k + 2, 1 << 22)
            .unwrap();
        if count < 1 << (2 * k) {
            failures.push(format!("k={k}: distinguishable count {count} < {}", 1 << (2 * k)));
        }

        let pfa = build_modxor_lv_pfa(k).unwrap();
        let ufa = build_modxor_lv_ufa(k).unwrap();
        let afa = build_modxor_afa(k).unwrap();
        if pfa.states() != 2 << k || ufa.states() != 2 << k {
            failures.push(format!("k={k}: LV models must have exactly {} states", 2 << k));
        }
        if afa.states() != 2 * k + 1 {
            failures.push(format!("k={k}: afa must have exactly {} states", 2 * k + 1));
        }

        for (name, model) in [("pfa", &pfa), ("ufa", &ufa)] {
            let report = sweep_strings(
                model,
                |w| modxor_member(w, k),
                2 * k + 6,
                &CertMode::LasVegas(rational(1, 2)),
                DEFAULT_SWEEP_BUDGET,
            )
            .unwrap();
            if !report.passed() {
                failures.push(format!(
                    "k={k} {name}: violation on {:?}",
                    report.violations[0].input.to_string()
                ));
            }
            // strings shorter than 2k are never accepted
            for len in 0..(2 * k) {
                for i in 0..(1u64 << len) {
                    let w = BitString::from_index(i, len);
                    if !run_automaton(model, &w).unwrap().accept.is_zero() {
                        failures.push(format!("k={k} {name}: accepts short string {w}"));
                    }
                }
            }
        }

        let report = sweep_strings(
            &afa,
            |w| modxor_member(w, k),
            2 * k + 6,
            &CertMode::Exact,
            DEFAULT_SWEEP_BUDGET,
        )
        .unwrap();
        if !report.passed() {
            failures.push(format!(
                "k={k} afa: violation on {:?}",
                report.violations[0].input.to_string()
            ));
        }
    }
    conclude(
        "modxor family (k=1,2)",
        failures,
        "nerode >= 2^2k, LV pair exact at 1/2, afa zero-error, short strings rejected".into(),
    );
}

#[test]
fn inequality_ledger() {
    let mut failures = Vec::new();
    let half = rational(1, 2);

    let params = SsaParams::from_d(1).unwrap();
    let f = TruthTable::from_fn(params.n, |x| ssa(x, &params).unwrap());
    let n_ssa = n_of(&f, SearchMode::Exhaustive, 1 << 24)
        .unwrap()
        .n_f
        .unwrap() as u64;
    let pobdd_width = build_ssa_lv_pobdd(1).unwrap().width() as u64;
    let uobdd_width = build_ssa_lv_uobdd(1).unwrap().width() as u64;

    let mut checks = vec![
        InequalityCheck {
            label: "obdd bound vs lv-pobdd, ssa d=1".into(),
            bound: n_ssa,
            size: pobdd_width,
            one_minus_eps: half.clone(),
        },
        InequalityCheck {
            label: "obdd bound vs lv-uobdd, ssa d=1".into(),
            bound: n_ssa,
            size: uobdd_width,
            one_minus_eps: half.clone(),
        },
    ];
    for k in 1..=2usize {
        let dfa_bound =
            distinguishable_count(|w| modxor_member(w, k), 2 * k + 2, 2 * k + 2, 1 << 22).unwrap()
                as u64;
        let lv_size = (2 << k) as u64;
        checks.push(InequalityCheck {
            label: format!("dfa bound vs lv-pfa, modxor k={k}"),
            bound: dfa_bound,
            size: lv_size,
            one_minus_eps: half.clone(),
        });
        checks.push(InequalityCheck {
            label: format!("dfa bound vs lv-ufa, modxor k={k}"),
            bound: dfa_bound,
            size: lv_size,
            one_minus_eps: half.clone(),
        });
    }

    let results = check_inequalities(&checks).unwrap();
    for r in &results {
        if !r.pass {
            failures.push(format!(
                "{}: {}^{} = {} > {} = {}^{}",
                r.label,
                r.bound,
                r.one_minus_eps.numer(),
                r.lhs,
                r.rhs,
                r.size,
                r.one_minus_eps.denom()
            ));
        }
    }
    conclude(
        "inequality ledger (eps = 1/2)",
        failures,
        format!("{} pairings compared by exact integer powers", results.len()),
    );
}

#[test]
fn property_suites() {
    let mut failures = Vec::new();

    // 1. validity predicates for every matrix emitted by every builder
    let mut checked = 0usize;
    let mut check = |ok: bool, what: String| {
        checked += 1;
        if !ok {
            failures.push(what);
        }
    };
    for n in 2..=8usize {
        for (name, model) in [
            ("hwb", build_hwb_afobdd(n).unwrap()),
            ("ws", build_ws_afobdd(n).unwrap()),
        ] {
            for (i, level) in model.levels().iter().enumerate() {
                for pair in &level.matrices {
                    for m in pair {
                        check(validate_affine(m), format!("{name} n={n} level {}", i + 1));
                    }
                }
            }
        }
    }
    for n in 2..=4usize {
        let model = build_mws_afobdd(n).unwrap();
        for (i, level) in model.levels().iter().enumerate() {
            for pair in &level.matrices {
                for m in pair {
                    check(validate_affine(m), format!("mws n={n} level {}", i + 1));
                }
            }
        }
    }
    for d in 1..=2usize {
        let model = build_ssa_afobdd(d).unwrap();
        for (i, level) in model.levels().iter().enumerate() {
            for pair in &level.matrices {
                for m in pair {
                    check(validate_affine(m), format!("ssa-afobdd d={d} level {}", i + 1));
                }
            }
        }
        let model = build_ssa_lv_pobdd(d).unwrap();
        for (i, level) in model.levels().iter().enumerate() {
            for m in [&level.on0, &level.on1] {
                check(
                    validate_stochastic(m),
                    format!("ssa-lv-pobdd d={d} level {}", i + 1),
                );
            }
        }
        let model = build_ssa_lv_uobdd(d).unwrap();
        for (i, level) in model.levels().iter().enumerate() {
            for m in [&level.on0, &level.on1] {
                check(
                    validate_orthogonal(m),
                    format!("ssa-lv-uobdd d={d} level {} matrix not orthogonal", i + 1),
                );
            }
        }
    }
    {
        use obddlab_core::automata::AutomatonModel;
        for k in 1..=2usize {
            for (name, model) in [
                ("modxor-lv-pfa", obddlab_core::automata::build_modxor_lv_pfa(k).unwrap()),
                ("modxor-lv-ufa", obddlab_core::automata::build_modxor_lv_ufa(k).unwrap()),
                ("modxor-afa", obddlab_core::automata::build_modxor_afa(k).unwrap()),
            ] {
                match &model {
                    AutomatonModel::Probabilistic(m) => {
                        check(validate_stochastic(&m.on0), format!("{name} k={k} on0"));
                        check(validate_stochastic(&m.on1), format!("{name} k={k} on1"));
                    }
                    AutomatonModel::Unitary(m) => {
                        check(validate_orthogonal(&m.on0), format!("{name} k={k} on0"));
                        check(validate_orthogonal(&m.on1), format!("{name} k={k} on1"));
                    }
                    AutomatonModel::Affine(m) => {
                        check(validate_affine(&m.on0), format!("{name} k={k} on0"));
                        check(validate_affine(&m.on1), format!("{name} k={k} on1"));
                        if let Some(end) = &m.end_marker {
                            check(validate_affine(end), format!("{name} k={k} end-marker"));
                        }
                    }
                    AutomatonModel::Deterministic(_) => {}
                }
            }
        }
    }

    // 2. probability conservation and per-step normalization on 1000
    //    random models per variant
    let mut rng = common::rng(0x0BDD);
    for trial in 0..1000usize {
        let n = 1 + trial % 6;
        let m = 1 + trial % 4;
        let x = BitString::from_index((trial as u64 * 37) % (1 << n), n);

        let model = common::random_probabilistic(&mut rng, n, m);
        let out = model.run(&x).unwrap();
        if !out.conserves() {
            failures.push(format!("probabilistic trial {trial}: outcome not conserved"));
        }
        for state in model.trace(&x).unwrap() {
            if !state.sum().is_one() || state.iter().any(|e| e < &rational_int(0)) {
                failures.push(format!("probabilistic trial {trial}: state not a distribution"));
                break;
            }
        }

        let model = common::random_unitary(&mut rng, n, m);
        let out = model.run(&x).unwrap();
        if !out.conserves() {
            failures.push(format!("unitary trial {trial}: outcome not conserved"));
        }
        for state in model.trace(&x).unwrap() {
            if !state.l2_norm_squared().is_one() {
                failures.push(format!("unitary trial {trial}: norm drifted"));
                break;
            }
        }

        let model = common::random_affine(&mut rng, n, 1 + trial % 3, m.max(2));
        let out = model.run(&x).unwrap();
        if !out.conserves() {
            failures.push(format!("affine trial {trial}: outcome not conserved"));
        }
        for (_, state) in model.trace(&x).unwrap() {
            if !state.sum().is_one() {
                failures.push(format!("affine trial {trial}: affine sum drifted"));
                break;
            }
        }

        let model = common::random_deterministic(&mut rng, n, m);
        let accept = QuadExt::from_integer(model.run(&x).unwrap() as i64);
        let out = Obdd::Deterministic(model).run(&x).unwrap();
        if out.accept != accept || !out.conserves() {
            failures.push(format!("deterministic trial {trial}: outcome mismatch"));
        }
    }

    // 3. minimal-obdd width equals the subfunction maximum for every
    //    function on 3 variables under every order
    for code in 0..256u32 {
        let f = TruthTable::from_bits(3, (0..8).map(|i| (code >> i) & 1 == 1).collect()).unwrap();
        for pi in permutations(3) {
            let order = VariableOrder::new(pi).unwrap();
            let built = build_minimal_obdd(&f, &order, DEFAULT_SWEEP_BUDGET).unwrap();
            let expected = subfunction_max(&f, &order, DEFAULT_SWEEP_BUDGET).unwrap();
            if built.reading_width() != expected {
                failures.push(format!(
                    "code {code} order {:?}: width {} vs subfunction max {expected}",
                    order.as_slice(),
                    built.reading_width()
                ));
            }
        }
    }

    conclude(
        "property suites",
        failures,
        format!("{checked} builder matrices validated, 1000 random models per variant, 256 functions x 6 orders"),
    );
}

/// Fault injection: a corrupted matrix must surface as a certification
/// failure with a concrete counterexample.
#[test]
fn fault_injection_is_detected() {
    let mut model = build_hwb_afobdd(4).unwrap();
    // rebuild with one classical transition redirected
    let mut levels = model.levels().to_vec();
    levels[1].delta[0] = [1, 0];
    model = obddlab_core::obdd::AffineObdd::new(
        model.classical_count(),
        model.initial_classical(),
        model.classical_accept().clone(),
        model.initial_affine().clone(),
        model.affine_partition().clone(),
        VariableOrder::identity(4),
        levels,
    )
    .unwrap();
    let report = sweep_classify(
        &Obdd::Affine(model),
        hwb,
        &CertMode::Exact,
        DEFAULT_SWEEP_BUDGET,
    )
    .unwrap();
    assert!(!report.passed());
    assert!(!report.violations.is_empty());
    println!(
        "fault injection: {} violations, first on {}",
        report.violations.len(),
        report.violations[0].input
    );
}

/// The last-level classical collapse keeps every input's final state in
/// the declared accepting set for the zero-error models; spot-check that
/// sweeps also reject wrong oracles (sanity of the harness itself).
#[test]
fn sweep_harness_rejects_wrong_oracle() {
    let model = Obdd::Affine(build_hwb_afobdd(4).unwrap());
    let wrong = |x: &BitString| !hwb(x);
    let report = sweep_classify(&model, wrong, &CertMode::Exact, DEFAULT_SWEEP_BUDGET).unwrap();
    assert!(!report.passed());
    assert_eq!(report.violations.len(), 16);
}

/// Cross-check the identity-order cut profile of the shuffled storage
/// access function at d=1, recorded as a regression baseline.
#[test]
fn ssa6_identity_cut_profile() {
    use obddlab_core::bounds::{subfunction_count, Cut};
    let params = SsaParams::from_d(1).unwrap();
    let f = TruthTable::from_fn(params.n, |x| ssa(x, &params).unwrap());
    let counts: Vec<usize> = (2..params.n)
        .map(|u| {
            let cut = Cut::new(VariableOrder::identity(params.n), u).unwrap();
            subfunction_count(&f, &cut, 1 << 24).unwrap()
        })
        .collect();
    assert_eq!(counts, vec![3, 6, 6, 4]);
    let _ = BTreeSet::from([0u8]);
    let _: Rational = rational_int(0);
}
