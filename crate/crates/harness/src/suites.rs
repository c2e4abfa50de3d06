//! Verification suites: each runs `count` generated instances through the
//! theorem-backed checks of the corresponding modules. Instances run
//! concurrently up to a worker budget; outcomes are merged in instance order
//! so reports are deterministic.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_traits::{Signed, Zero};

use conespec_cones::{
    cone_spectrum, iterate_spectrum_check, restriction_spectrum_check, validate_good_cone,
};
use conespec_cones::theorems::{certificates_verify, verify_spectrum_theorem};
use conespec_degrees::{
    ample_spectrum, big_spectrum, classify, cross_check_big, dedup_values, dynamical_degrees,
    factor_consistency, set_contains, set_equal, split_monomial_tree,
};
use conespec_exppoly::{
    cesaro_period_sum_is_zero, negative_value_search, region_bound_check, torus_closure,
    ExpPolyError,
};
use conespec_gencycles::{
    atomic_decomposition, pi_componentwise, pi_subtractive, reconstruct, restrict_direct,
    restrict_inductive, support, vector_measure, ClosedSet, GeneratedCycle, QuotientSpace,
};
use conespec_kernel::algebraic::RealAlgebraic;
use conespec_kernel::growth::growth_rate;
use conespec_kernel::rational::{rat, rat_int};
use conespec_kernel::spectrum::certified_spectrum;
use conespec_kernel::rational::two_pow_neg;

use crate::generate::*;
use crate::report::{CheckOutcome, VerificationReport};

pub const SUITES: [&str; 4] = ["cone-theorems", "degree-consistency", "exppoly", "cycles"];

/// Runs one suite with the given worker budget.
pub fn run_suite(name: &str, count: usize, seed: u64, workers: usize) -> VerificationReport {
    let runner: fn(usize, u64) -> Vec<CheckOutcome> = match name {
        "cone-theorems" => cone_theorems_instance,
        "degree-consistency" => degree_consistency_instance,
        "exppoly" => exppoly_instance,
        "cycles" => cycles_instance,
        other => panic!("unknown suite {:?}", other),
    };
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(Vec<CheckOutcome>, u128)>>> =
        Mutex::new(vec![None; count]);
    let workers = workers.clamp(1, 16);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= count {
                    break;
                }
                let started = Instant::now();
                let outcomes = runner(i, seed.wrapping_add(i as u64));
                let elapsed = started.elapsed().as_millis();
                results.lock().unwrap()[i] = Some((outcomes, elapsed));
            });
        }
    });
    let mut outcomes = vec![];
    let mut wall = vec![];
    for slot in results.into_inner().unwrap() {
        let (mut o, ms) = slot.expect("every instance ran");
        outcomes.append(&mut o);
        wall.push(ms);
    }
    VerificationReport {
        suite: name.to_string(),
        count,
        seed,
        outcomes,
        wall_clock_ms: wall,
    }
}

fn outcome(instance: usize, check: &str, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        instance,
        check: check.to_string(),
        pass,
        detail,
    }
}

// ---------------------------------------------------------------------------
// cone-theorems
// ---------------------------------------------------------------------------

fn cone_theorems_instance(index: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut out = vec![];
    let diagonal = index % 2 == 0;
    let dim = 2 + (seed % 4) as usize; // 2..=5
    let (matrix, cone, expected, replay) = if diagonal {
        let inst = gen_diagonal(seed, dim);
        let expected = dedup_values(
            inst.entries
                .iter()
                .map(|e| RealAlgebraic::Rational(e.clone()))
                .collect(),
        );
        (
            inst.matrix,
            inst.cone,
            expected,
            format!("kind=diagonal-cone seed={} dim={}", seed, dim),
        )
    } else {
        let inst = gen_permutation_scale(seed, dim);
        (
            inst.matrix,
            inst.cone,
            inst.expected_spectrum,
            format!("kind=permutation-scale seed={} dim={}", seed, dim),
        )
    };
    // good cone with exact equality
    match validate_good_cone(&matrix, &cone) {
        Ok(cert) => out.push(outcome(index, "good-cone", cert.is_good(), replay.clone())),
        Err(e) => out.push(outcome(index, "good-cone", false, format!("{replay}: {e}"))),
    }
    // spectrum equals the analytically expected set
    match cone_spectrum(&matrix, &cone, false) {
        Ok(sr) => {
            let vals = sr.member_values();
            let equal = set_equal(&vals, &expected);
            out.push(outcome(index, "spectrum-exact", equal, replay.clone()));
            out.push(outcome(
                index,
                "certificates",
                certificates_verify(&matrix, &cone, &sr),
                replay.clone(),
            ));
        }
        Err(e) => {
            out.push(outcome(index, "spectrum-exact", false, format!("{replay}: {e}")));
        }
    }
    // the subset equivalence, exhaustively
    match verify_spectrum_theorem(&matrix, &cone) {
        Ok(rep) => out.push(outcome(
            index,
            "subset-equivalence",
            rep.all_consistent,
            replay.clone(),
        )),
        Err(e) => out.push(outcome(
            index,
            "subset-equivalence",
            false,
            format!("{replay}: {e}"),
        )),
    }
    // iterate power law with witness constructions
    for n in [2u32, 3] {
        match iterate_spectrum_check(&matrix, &cone, n) {
            Ok(rep) => out.push(outcome(
                index,
                &format!("iterate-{n}"),
                rep.all_pass(),
                replay.clone(),
            )),
            Err(e) => out.push(outcome(
                index,
                &format!("iterate-{n}"),
                false,
                format!("{replay}: {e}"),
            )),
        }
    }
    // restriction along the diagonal embedding of a doubled system
    if diagonal {
        let n = matrix.n;
        let mut doubled = conespec_kernel::matrix::RationalMatrix::zero(2 * n);
        for i in 0..n {
            for j in 0..n {
                *doubled.at_mut(i, j) = matrix.at(i, j).clone();
                *doubled.at_mut(n + i, n + j) = matrix.at(i, j).clone();
            }
        }
        let big_cone = conespec_cones::PolyhedralCone::orthant(2 * n);
        let basis: Vec<Vec<conespec_kernel::rational::Rational>> = (0..n)
            .map(|i| {
                let mut v = vec![rat_int(0); 2 * n];
                v[i] = rat_int(1);
                v[n + i] = rat_int(1);
                v
            })
            .collect();
        match restriction_spectrum_check(&doubled, &big_cone, &basis) {
            Ok(rep) => out.push(outcome(index, "restriction", rep.equal, replay.clone())),
            Err(e) => out.push(outcome(
                index,
                "restriction",
                false,
                format!("{replay}: {e}"),
            )),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// degree-consistency
// ---------------------------------------------------------------------------

fn degree_consistency_instance(index: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut out = vec![];
    let k = 2 + (seed % 3) as usize; // 2..=4
    let inst = gen_monomial_product(seed, k);
    let replay = format!(
        "kind=monomial-product seed={} k={} exponents={:?}",
        seed, k, inst.exponents
    );
    // profile against the brute-force oracle: lambda_i = product of the i
    // largest exponents
    let profile = match dynamical_degrees(&inst.system) {
        Ok(p) => p,
        Err(e) => {
            out.push(outcome(index, "profile", false, format!("{replay}: {e}")));
            return out;
        }
    };
    let mut sorted = inst.exponents.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut ok = true;
    let mut prod = 1i64;
    for (i, lambda) in profile.lambdas.iter().enumerate() {
        let expect = if i == 0 {
            1
        } else {
            prod *= sorted[i - 1];
            prod
        };
        if !lambda.equals(&RealAlgebraic::from_int(expect)) {
            ok = false;
        }
    }
    out.push(outcome(index, "profile-oracle", ok, replay.clone()));
    // mu_i equals the i-th largest exponent
    let mu_ok = profile
        .mus_proper()
        .iter()
        .zip(&sorted)
        .all(|(mu, &e)| mu.equals(&RealAlgebraic::from_int(e)));
    out.push(outcome(index, "mu-oracle", mu_ok, replay.clone()));
    // big spectrum equals the exponent set
    let exp_set = dedup_values(
        inst.exponents
            .iter()
            .map(|&e| RealAlgebraic::from_int(e))
            .collect(),
    );
    match big_spectrum(&inst.system) {
        Ok(bs) => out.push(outcome(
            index,
            "big-spectrum",
            set_equal(&bs, &exp_set),
            replay.clone(),
        )),
        Err(e) => out.push(outcome(index, "big-spectrum", false, format!("{replay}: {e}"))),
    }
    // cross-check against the cone spectrum of the divisor action
    match cross_check_big(&inst.system) {
        Ok(rep) => out.push(outcome(index, "cross-check-big", rep.equal, replay.clone())),
        Err(e) => out.push(outcome(
            index,
            "cross-check-big",
            false,
            format!("{replay}: {e}"),
        )),
    }
    // ample spectrum over the full tree equals the exponent set
    match ample_spectrum(&inst.tree) {
        Ok(rep) => out.push(outcome(
            index,
            "ample-spectrum",
            set_equal(&rep.values, &exp_set),
            replay.clone(),
        )),
        Err(e) => out.push(outcome(
            index,
            "ample-spectrum",
            false,
            format!("{replay}: {e}"),
        )),
    }
    // classification coherence
    match classify(&inst.system, Some(&inst.tree)) {
        Ok(c) => {
            let one = RealAlgebraic::one();
            let big_has_one = profile.mus_proper().iter().any(|m| m.equals(&one));
            let coherent = c.quasi_amplified == !big_has_one
                && c.cohomologically_hyperbolic == !big_has_one
                && c.amplified == Some(!set_contains(&exp_set, &one))
                && c.int_amplified
                    == (profile.mus_proper().last().unwrap() > &one);
            out.push(outcome(index, "classify", coherent, replay.clone()));
        }
        Err(e) => out.push(outcome(index, "classify", false, format!("{replay}: {e}"))),
    }
    // factor consistency: a coordinate subproduct is a factor, an alien
    // exponent is not
    if k >= 2 {
        let sub = monomial_product_with(&inst.exponents[..k - 1]);
        match factor_consistency(&inst.tree, &sub.tree) {
            Ok(rep) => out.push(outcome(
                index,
                "factor-positive",
                rep.big_ok && rep.ample_ok,
                replay.clone(),
            )),
            Err(e) => out.push(outcome(
                index,
                "factor-positive",
                false,
                format!("{replay}: {e}"),
            )),
        }
        let alien = monomial_product_with(&[7]);
        let alien_in_source = inst.exponents.contains(&7);
        match factor_consistency(&inst.tree, &alien.tree) {
            Ok(rep) => out.push(outcome(
                index,
                "factor-negative",
                (rep.big_ok && rep.ample_ok) == alien_in_source,
                replay.clone(),
            )),
            Err(e) => out.push(outcome(
                index,
                "factor-negative",
                false,
                format!("{replay}: {e}"),
            )),
        }
    }
    // growth rates of dual rays land in the aggregated exponent set
    let m1 = &inst.system.pullbacks[1];
    let pushforward = m1.transpose();
    let spec = certified_spectrum(&pushforward, &two_pow_neg(64));
    let mut growth_ok = true;
    for i in 0..pushforward.n {
        let mut e = vec![rat_int(0); pushforward.n];
        e[i] = rat_int(1);
        match growth_rate(&pushforward, &spec, &e) {
            Ok(g) => {
                if !set_contains(&exp_set, &g) {
                    growth_ok = false;
                }
            }
            Err(_) => growth_ok = false,
        }
    }
    out.push(outcome(index, "growth-membership", growth_ok, replay));
    out
}

// ---------------------------------------------------------------------------
// exppoly
// ---------------------------------------------------------------------------

fn exppoly_instance(index: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut out = vec![];
    let replay = format!("kind=exppoly-random seed={}", seed);
    let h = gen_exppoly_region(seed);
    match region_bound_check(&h, &rat(1, 4), 4096) {
        Ok(rep) => {
            let finite = rep.c_lower.is_positive() && rep.c_upper >= rep.c_lower;
            out.push(outcome(index, "region-bracket", finite, replay.clone()));
            let decay = rep.remainder_envelopes.iter().all(|env| {
                env.len() < 2 || env.last().unwrap() < env.first().unwrap()
            });
            out.push(outcome(index, "remainder-decay", decay, replay.clone()));
        }
        Err(e) => out.push(outcome(
            index,
            "region-bracket",
            false,
            format!("{replay}: {e}"),
        )),
    }
    // sign search: theorem-backed success within one period
    let terms = gen_sign_instance(seed);
    let sign_replay = format!("kind=sign-search seed={}", seed);
    match negative_value_search(&terms) {
        Ok((_, s)) => out.push(outcome(index, "sign-search", s < 0, sign_replay.clone())),
        Err(ExpPolyError::IdenticallyZero) => {
            out.push(outcome(index, "sign-search", true, format!("{sign_replay}: degenerate zero data skipped")))
        }
        Err(e) => out.push(outcome(
            index,
            "sign-search",
            false,
            format!("{sign_replay}: {e}"),
        )),
    }
    // Cesaro partial sums over a period vanish exactly
    match cesaro_period_sum_is_zero(&terms) {
        Ok(z) => out.push(outcome(index, "cesaro-zero", z, sign_replay.clone())),
        Err(ExpPolyError::ZeroAngleTerm) => {
            out.push(outcome(index, "cesaro-zero", true, sign_replay.clone()))
        }
        Err(e) => out.push(outcome(
            index,
            "cesaro-zero",
            false,
            format!("{sign_replay}: {e}"),
        )),
    }
    // torus closure: order divides every return time
    let turns = vec![
        rat((seed % 5) as i64 + 1, 6),
        rat((seed % 3) as i64 + 1, 4),
    ];
    let tc = torus_closure(&turns);
    let div_ok = tc.return_times.iter().all(|t| t % tc.order == 0);
    out.push(outcome(index, "torus-order", div_ok, replay));
    out
}

// ---------------------------------------------------------------------------
// cycles
// ---------------------------------------------------------------------------

fn cycles_instance(index: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut out = vec![];
    let inst = gen_random_stratified(seed, 20);
    let replay = format!("kind=random-stratified seed={}", seed);
    let model = &inst.model;
    let alpha = &inst.cycle;
    out.push(outcome(
        index,
        "model-valid",
        model.validate().valid(),
        replay.clone(),
    ));
    // cut-and-paste over principal closures and pairwise unions
    let n = model.point_count();
    let principals: Vec<ClosedSet> = (0..n).map(|x| model.principal(x)).collect();
    let mut family: Vec<ClosedSet> = principals.clone();
    for i in 0..principals.len().min(6) {
        for j in (i + 1)..principals.len().min(6) {
            family.push(principals[i].union(&principals[j]));
        }
    }
    let mut cnp_ok = true;
    for v1 in family.iter().take(8) {
        for v2 in family.iter().take(8) {
            if !cut_and_paste_holds(model, alpha, v1, v2) {
                cnp_ok = false;
            }
        }
    }
    out.push(outcome(index, "cut-and-paste", cnp_ok, replay.clone()));
    // the two restriction routes agree on the whole space and on unions
    let mut routes_ok = true;
    for v in family.iter().take(8) {
        if v.is_empty() {
            continue;
        }
        let d = restrict_direct(model, alpha, v).unwrap();
        let i2 = restrict_inductive(model, alpha, v).unwrap();
        if !d.space.eq_classes(&d.class, &i2.class) {
            routes_ok = false;
        }
    }
    out.push(outcome(index, "restriction-routes", routes_ok, replay.clone()));
    // constructible restriction: componentwise equals subtractive; partition
    // sums to the identity; support stays inside
    let mut pi_ok = true;
    let all: Vec<usize> = (0..n).collect();
    let cells: Vec<conespec_gencycles::Constructible> = vec![
        all.iter().copied().filter(|x| x % 3 == 0).collect(),
        all.iter().copied().filter(|x| x % 3 == 1).collect(),
        all.iter().copied().filter(|x| x % 3 == 2).collect(),
    ];
    let mut sum = GeneratedCycle::zero(model);
    for w in &cells {
        let a = pi_componentwise(model, alpha, w);
        let b = pi_subtractive(model, alpha, w);
        if a != b {
            pi_ok = false;
        }
        for x in support(model, &a) {
            if !w.contains(&x) {
                pi_ok = false;
            }
        }
        sum = sum.add(&a);
    }
    if &sum != alpha {
        pi_ok = false;
    }
    out.push(outcome(index, "pi-additivity", pi_ok, replay.clone()));
    // atoms: decomposition and reconstruction round trip
    match atomic_decomposition(model, alpha) {
        Ok(atoms) => {
            let back = reconstruct(model, &atoms);
            out.push(outcome(index, "atoms", back == *alpha, replay.clone()));
        }
        Err(e) => out.push(outcome(index, "atoms", false, format!("{replay}: {e}"))),
    }
    // measure: additivity and positivity over the 3-cell partition
    match vector_measure(model, alpha, &inst.dual) {
        Ok(mu) => {
            let total: conespec_kernel::rational::Rational =
                cells.iter().map(|w| mu.measure(w)).sum();
            let additive = total == mu.total();
            let nonneg = mu.point_masses.iter().all(|v| !v.is_negative());
            out.push(outcome(index, "measure", additive && nonneg, replay.clone()));
        }
        Err(e) => out.push(outcome(index, "measure", false, format!("{replay}: {e}"))),
    }
    out
}

fn cut_and_paste_holds(
    model: &conespec_gencycles::StratifiedModel,
    alpha: &GeneratedCycle,
    v1: &ClosedSet,
    v2: &ClosedSet,
) -> bool {
    let union = v1.union(v2);
    if union.is_empty() {
        return true;
    }
    let inter = v1.intersect(v2);
    let space = QuotientSpace::build(model, &union);
    let r1 = restrict_direct(model, alpha, v1).unwrap();
    let r2 = restrict_direct(model, alpha, v2).unwrap();
    let ru = restrict_direct(model, alpha, &union).unwrap();
    let mut lhs = space.push_from(model, &r1.space, &r1.class);
    let p2 = space.push_from(model, &r2.space, &r2.class);
    for (i, c) in p2.into_iter().enumerate() {
        lhs[i] += c;
    }
    let mut rhs = ru.class.clone();
    if !inter.is_empty() {
        let ri = restrict_direct(model, alpha, &inter).unwrap();
        let pi = space.push_from(model, &ri.space, &ri.class);
        for (i, c) in pi.into_iter().enumerate() {
            rhs[i] += c;
        }
    }
    space.eq_classes(&space.reduce(lhs), &space.reduce(rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in SUITES {
            let rep = run_suite(suite, 3, 41, 2);
            assert!(
                rep.all_pass(),
                "suite {} failures: {:?}",
                suite,
                rep.failures()
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("cone-theorems", 2, 7, 2).to_text();
        let b = run_suite("cone-theorems", 2, 7, 4).to_text();
        assert_eq!(a, b);
    }
}
