//! Property suites behind `sigma-hecke verify`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{build_group, character, guard_ball, guard_filtration, tri_default_character, AnyGroup, CliError, Report, RunConfig, Suite};
use crate::arith::{
    crt_approximate, discreteness_gap, in_localization, integer, prime_power, unit_decompose, vp, PrimeSet, Rational,
    Valuation,
};
use crate::chains::{boundary_matrix, reduced_homology, reduced_homology_full_basis, HomologyResult, RingSpec};
use crate::groups::{
    ball, cayley_ball, character_basis, random_element, unipotent_conjugation_check, BaumslagSolitar, Character,
    Group, InfiniteCyclic, TriangularGroup,
};
use crate::hecke::{
    commensuration_indices, completing_orbits_check, core_escape, coset_ball, induced_char, random_lambda,
    schlichting_truncation, transversal_witness, verify_transversal, HeckeError, HeckePair,
};
use crate::sigma::{
    bs_sigma_classify, build_coset_filtration, build_group_filtration, lookup_citation, tri_sigma_classify, Clause,
    ConeCoordinates, Degree, Target, Theory, Verdict,
};
use crate::simplicial::{pi0, TranslateFamily, VertexId};
use crate::vietoris::{
    cofinality_check, vr_h0_probe, vr_simplex_test, word_metric_window, zero_skeleton_invariance, MetricWindow,
    VrWindow,
};

pub fn cmd_verify(suite: Suite, cfg: &RunConfig) -> Result<Report, CliError> {
    let name = format!("verify {}", format!("{suite:?}").to_lowercase());
    let mut r = Report::new(name, cfg);
    match suite {
        Suite::Arith => verify_arith(cfg, &mut r),
        Suite::Groups => verify_groups(cfg, &mut r)?,
        Suite::Hecke => verify_hecke(cfg, &mut r)?,
        Suite::Chains => verify_chains(cfg, &mut r)?,
        Suite::Sigma => verify_sigma(cfg, &mut r)?,
        Suite::Vr => verify_vr(cfg, &mut r)?,
    }
    Ok(r)
}

fn rng_for(cfg: &RunConfig, salt: u64) -> (u64, ChaCha8Rng) {
    let seed = cfg.seed.wrapping_add(salt);
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

fn ring(cfg: &RunConfig) -> Result<RingSpec, CliError> {
    cfg.ring.parse().map_err(super::usage)
}

fn random_prime_set(rng: &mut ChaCha8Rng) -> PrimeSet {
    loop {
        let ps: Vec<u64> = [2, 3, 5, 7].into_iter().filter(|_| rng.random_bool(0.5)).collect();
        if !ps.is_empty() {
            return PrimeSet::new(ps).expect("primes");
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut q = integer(rng.random_range(-500..=500));
    for p in [2, 3, 5, 7, 11] {
        q *= prime_power(p, rng.random_range(-3..=3));
    }
    q
}

fn random_unit(rng: &mut ChaCha8Rng, primes: &PrimeSet) -> Rational {
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    primes.primes().iter().fold(integer(sign), |q, &p| q * prime_power(p, rng.random_range(-4..=4)))
}

fn verify_arith(cfg: &RunConfig, r: &mut Report) {
    let (seed, mut rng) = rng_for(cfg, 1);
    let mut failures = Vec::new();
    for _ in 0..cfg.samples {
        let primes = random_prime_set(&mut rng);
        let precision = rng.random_range(1..=6);
        let targets: BTreeMap<u64, Rational> = primes.primes().iter().map(|&p| (p, random_rational(&mut rng))).collect();
        let ok = crt_approximate(&targets, precision, &primes).is_ok_and(|x| {
            in_localization(&x, &primes)
                && targets.iter().all(|(&p, t)| vp(&(&x - t), p) >= Valuation::Finite(precision))
        });
        if !ok {
            failures.push(format!("{targets:?} @ {precision}"));
        }
    }
    r.property("crt_approximate.valuation", failures.is_empty(), Some(seed), json!({"instances": cfg.samples, "failures": failures}));

    let (seed, mut rng) = rng_for(cfg, 2);
    let pairs = cfg.samples * 10;
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let primes = random_prime_set(&mut rng);
        let x = random_unit(&mut rng, &primes);
        let y = random_unit(&mut rng, &primes);
        if x == y {
            continue;
        }
        let ok = discreteness_gap(&x, &y, &primes).is_ok_and(|(p, gap)| {
            gap == vp(&(&x - &y), p) && gap <= Valuation::Finite(vp(&x, p).finite().expect("unit") + 1)
        });
        if !ok {
            failures.push(format!("{x} {y}"));
        }
    }
    r.property("discreteness_gap.witness", failures.is_empty(), Some(seed), json!({"pairs": pairs, "failures": failures}));

    let (seed, mut rng) = rng_for(cfg, 3);
    let mut bad = 0;
    for _ in 0..cfg.samples {
        let primes = random_prime_set(&mut rng);
        let (x, y) = (random_rational(&mut rng), random_rational(&mut rng));
        for &p in primes.primes() {
            let lhs = vp(&(&x * &y), p);
            let rhs = match (vp(&x, p).finite(), vp(&y, p).finite()) {
                (Some(a), Some(b)) => Valuation::Finite(a + b),
                _ => Valuation::Infinity,
            };
            bad += usize::from(lhs != rhs);
        }
        let u = random_unit(&mut rng, &primes);
        bad += usize::from(unit_decompose(&u, &primes).map(|d| d.value(&primes)) != Ok(u));
    }
    r.property("valuation.multiplicative_and_units", bad == 0, Some(seed), json!({"failures": bad}));
}

fn group_laws<G: Group>(g: &G, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_ball(g, cfg.radius, cfg)?;
    let (seed, mut rng) = rng_for(cfg, 10);
    let (mut assoc, mut inv, mut additive) = (0, 0, 0);
    for _ in 0..cfg.samples {
        let x = random_element(g, 6, &mut rng);
        let y = random_element(g, 6, &mut rng);
        let z = random_element(g, 6, &mut rng);
        assoc += usize::from(g.multiply(&g.multiply(&x, &y), &z) != g.multiply(&x, &g.multiply(&y, &z)));
        inv += usize::from(g.multiply(&x, &g.invert(&x)) != g.identity());
        let lhs = g.char_eval(chi, &g.multiply(&x, &y))?;
        additive += usize::from(lhs != g.char_eval(chi, &x)? + g.char_eval(chi, &y)?);
    }
    r.property("group.associativity", assoc == 0, Some(seed), json!({"samples": cfg.samples, "failures": assoc}));
    r.property("group.inverses", inv == 0, Some(seed), json!({"samples": cfg.samples, "failures": inv}));
    r.property("character.additive", additive == 0, Some(seed), json!({"character": chi.to_string(), "failures": additive}));
    let sizes: Vec<usize> = {
        let b = ball(g, cfg.radius);
        (0..=cfg.radius).map(|k| b.within(k).count()).collect()
    };
    r.evidence("ball_sizes", sizes);
    Ok(())
}

fn verify_groups(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    match build_group(&cfg.group)? {
        AnyGroup::Cyclic => {
            let chi = character(&InfiniteCyclic, cfg, || Character::new(vec![integer(1)]))?;
            group_laws(&InfiniteCyclic, &chi, cfg, r)
        }
        AnyGroup::Bs(g) => {
            let chi = character(&g, cfg, || g.tau())?;
            group_laws(&g, &chi, cfg, r)?;
            bs_structure(&g, cfg, r)
        }
        AnyGroup::Tri(g) => {
            let chi = character(&g, cfg, || tri_default_character(&g))?;
            group_laws(&g, &chi, cfg, r)?;
            tri_structure(&g, cfg, r)
        }
    }
}

fn bs_structure(g: &BaumslagSolitar, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let (seed, mut rng) = rng_for(cfg, 11);
    let mut bad = usize::from(!g.from_letters(&g.relator()).is_identity());
    for _ in 0..cfg.samples {
        let w = random_element(g, 5, &mut rng);
        let rel = g.from_letters(&g.relator());
        bad += usize::from(!g.multiply(&g.multiply(&w, &rel), &g.invert(&w)).is_identity());
    }
    r.property("bs.relator_trivial", bad == 0, Some(seed), json!({"failures": bad}));

    let radius = cfg.radius.max(2);
    guard_ball(g, radius + 3, cfg)?;
    let graph = cayley_ball(g, radius + 3, &g.tau())?;
    let small = cayley_ball(g, radius, &g.tau())?;
    let profiles = small.a_line_profiles(g);
    let measured: Vec<_> = profiles.iter().filter(|p| p.measured).collect();
    let (up, down) = (g.n().unsigned_abs() as usize, g.m().unsigned_abs() as usize);
    let wrong = measured.iter().filter(|p| p.up != up || p.down != down).count();
    r.property(
        "bs.a_line_counts",
        !measured.is_empty() && wrong == 0,
        None,
        json!({"radius": radius, "lines": profiles.len(), "measured": measured.len(), "expected_up": up, "expected_down": down, "mismatches": wrong}),
    );

    let interior: Vec<usize> = (0..graph.len()).filter(|&v| graph.distance(v) < radius).collect();
    let (seed, mut rng) = rng_for(cfg, 12);
    let picks: Vec<usize> = (0..cfg.samples).map(|_| *interior.choose(&mut rng).expect("nonempty")).collect();
    let open = picks.iter().filter(|&&v| !graph.relator_closes_at(g, v)).count();
    r.property("bs.relator_closes", open == 0, Some(seed), json!({"samples": picks.len(), "open": open}));
    Ok(())
}

fn tri_structure(g: &TriangularGroup, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let (seed, mut rng) = rng_for(cfg, 13);
    let mut checked = 0;
    let mut failures = Vec::new();
    for &p in g.primes().primes() {
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                let alpha = integer(rng.random_range(1..=9)) * prime_power(p, rng.random_range(-2..=2));
                checked += 1;
                match unipotent_conjugation_check(g.n(), g.primes(), p, i, j, &alpha) {
                    Ok(c) if c.exponent == p * p => {}
                    other => failures.push(format!("p={p} ({},{}): {other:?}", i + 1, j + 1)),
                }
            }
        }
    }
    r.property("tri.unipotent_conjugation", failures.is_empty(), Some(seed), json!({"checked": checked, "failures": failures}));

    let basis = character_basis(g.n(), g.primes())?;
    let mut bad = 0;
    for chi in &basis {
        for _ in 0..cfg.samples.min(50) {
            let i = rng.random_range(0..g.n() - 1);
            let j = rng.random_range(i + 1..g.n());
            let p = *g.primes().primes().choose(&mut rng).expect("nonempty");
            let alpha = integer(rng.random_range(-9..=9)) * prime_power(p, rng.random_range(-3..=3));
            bad += usize::from(!g.char_eval(chi, &g.elementary(i, j, alpha)?)?.is_zero());
        }
    }
    r.property(
        "tri.basis_characters_vanish_on_elementary",
        bad == 0 && basis.len() == (g.n() - 1) * g.primes().len(),
        Some(seed),
        json!({"basis_size": basis.len(), "failures": bad}),
    );
    Ok(())
}

fn verify_hecke(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    match build_group(&cfg.group)? {
        AnyGroup::Cyclic => Err(CliError::Usage("the hecke suite needs BS(m,n) or TRI(n;P)".into())),
        AnyGroup::Bs(g) => {
            let chi = character(&g, cfg, || g.tau())?;
            let c: Vec<_> = ball(&g, 2).elements().cloned().collect();
            let expected = (g.m().unsigned_abs() as usize, g.n().unsigned_abs() as usize);
            hecke_laws(&g, &g.t(), Some(expected), &c, &chi, cfg, r)
        }
        AnyGroup::Tri(g) => {
            let chi = character(&g, cfg, || tri_default_character(&g))?;
            let c: Vec<_> = g.generators().into_iter().map(|s| s.element).collect();
            let d1 = g.d(0, g.primes().primes()[0])?;
            hecke_laws(&g, &d1, None, &c, &chi, cfg, r)?;
            escape_samples(&g, cfg, r)
        }
    }
}

fn hecke_laws<H: HeckePair>(
    pair: &H,
    g0: &H::Element,
    expected: Option<(usize, usize)>,
    c: &[H::Element],
    chi: &Character,
    cfg: &RunConfig,
    r: &mut Report,
) -> Result<(), CliError> {
    pair.check_lambda_vanishing(chi)?;
    guard_ball(pair, cfg.radius, cfg)?;
    let idx = commensuration_indices(pair, g0, cfg.cap)?;
    r.evidence("commensuration", json!({"at": pair.format_element(g0), "i1": idx.i1, "i2": idx.i2}));
    r.property(
        "commensuration.indices",
        expected.is_none_or(|e| e == (idx.i1, idx.i2)),
        None,
        json!({"found": [idx.i1, idx.i2], "expected": expected}),
    );

    let (seed, mut rng) = rng_for(cfg, 20);
    let tr = transversal_witness(pair, c, cfg.cap)?;
    let samples: Vec<_> = (0..cfg.samples)
        .map(|_| (c[rng.random_range(0..c.len())].clone(), random_lambda(pair, 8, &mut rng)))
        .collect();
    let check = verify_transversal(pair, &tr, &samples);
    r.property("transversal.c_lambda_in_lambda_f", check.passed(), Some(seed), serde_json::to_value(&check).expect("json"));

    let ball = coset_ball(pair, cfg.radius);
    let len = (cfg.radius / 2).max(1);
    let (seed, mut rng) = rng_for(cfg, 21);
    let mut well_defined = Vec::new();
    let mut additive = Vec::new();
    let mut skipped = 0;
    let mut elements = Vec::new();
    for _ in 0..cfg.samples {
        let g = random_element(pair, len, &mut rng);
        let h = random_element(pair, len, &mut rng);
        let lambda = random_lambda(pair, 6, &mut rng);
        let sg = schlichting_truncation(pair, &g, &ball);
        let sgl = schlichting_truncation(pair, &pair.multiply(&g, &lambda), &ball);
        match (induced_char(pair, chi, &sg, &ball), induced_char(pair, chi, &sgl, &ball)) {
            (Ok(a), Ok(b)) if a == b => {}
            other => well_defined.push(format!("{}: {other:?}", pair.format_element(&g))),
        }
        let sh = schlichting_truncation(pair, &h, &ball);
        let comp = sg.compose(pair, &sh);
        match induced_char(pair, chi, &comp, &ball) {
            Err(HeckeError::UndefinedAtBase) => skipped += 1,
            Ok(v) if v == induced_char(pair, chi, &sg, &ball)? + induced_char(pair, chi, &sh, &ball)? => {}
            other => additive.push(format!("{}: {other:?}", pair.format_element(&comp.provenance))),
        }
        elements.push(g);
    }
    r.property("induced_char.representatives", well_defined.is_empty(), Some(seed), json!({"samples": cfg.samples, "failures": well_defined}));
    r.property("induced_char.additive", additive.is_empty(), Some(seed), json!({"samples": cfg.samples, "skipped": skipped, "failures": additive}));

    let report = completing_orbits_check(pair, chi, &elements, &ball)?;
    r.property("completing_orbits", report.failures.is_empty(), Some(seed), serde_json::to_value(&report).expect("json"));
    Ok(())
}

fn escape_samples(g: &TriangularGroup, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let (seed, mut rng) = rng_for(cfg, 22);
    let mut done = 0;
    let mut failures = Vec::new();
    let mut attempts = 0;
    while done < cfg.samples.min(50) && attempts < 10 * cfg.samples.max(1) {
        attempts += 1;
        let a = random_lambda(g, 6, &mut rng);
        match core_escape(g.n(), g.primes(), &a) {
            Err(HeckeError::InCore) => continue,
            Ok(e) if e.conjugate == a.conjugate(&e.b) && !g.in_lambda(&e.conjugate) => done += 1,
            other => {
                done += 1;
                failures.push(format!("{a}: {other:?}"));
            }
        }
    }
    r.property("core_escape", failures.is_empty() && done > 0, Some(seed), json!({"samples": done, "failures": failures}));
    Ok(())
}

/// Every family on `v` labelled vertices up to redundancy: antichains of nonempty
/// subsets of `{0..v}` (only maximal parts affect the simplicial set).
pub fn antichain_families(v: usize) -> Vec<TranslateFamily> {
    fn rec(subsets: &[u32], i: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == subsets.len() {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        rec(subsets, i + 1, chosen, out);
        let s = subsets[i];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            rec(subsets, i + 1, chosen, out);
            chosen.pop();
        }
    }
    let subsets: Vec<u32> = (1..1u32 << v).collect();
    let mut masks = Vec::new();
    rec(&subsets, 0, &mut Vec::new(), &mut masks);
    masks
        .into_iter()
        .map(|parts| {
            let parts: Vec<Vec<VertexId>> = parts
                .into_iter()
                .map(|m| (0..v as u32).filter(|b| m >> b & 1 == 1).map(VertexId).collect())
                .collect();
            TranslateFamily::new(parts).expect("nonempty parts")
        })
        .collect()
}

fn verify_chains(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let rings = [RingSpec::Integers, RingSpec::Rationals, RingSpec::PrimeField(2), RingSpec::PrimeField(3)];
    let mut bad = Vec::new();
    for size in 1..=cfg.max_vertices.min(4) {
        let ids: Vec<u32> = (0..size as u32).collect();
        let f = TranslateFamily::from_ids(&[&ids]);
        for ring in rings {
            for k in 0..=2 {
                if !reduced_homology(&f, k, ring).is_zero() {
                    bad.push(format!("|X|={size} k={k} {ring}"));
                }
            }
        }
    }
    r.property("chains.simplex_acyclic", bad.is_empty(), None, json!({"failures": bad}));

    let hollow = TranslateFamily::from_ids(&[&[0, 1], &[1, 2], &[0, 2]]);
    let h1 = reduced_homology(&hollow, 1, RingSpec::Integers);
    r.property(
        "chains.hollow_triangle",
        h1 == HomologyResult::Integral { free_rank: 1, torsion: vec![] },
        None,
        json!({"h1": h1.to_string()}),
    );

    let ring = ring(cfg)?;
    let families = antichain_families(cfg.max_vertices);
    let mut mismatches = Vec::new();
    let mut nonzero = 0;
    for f in &families {
        for k in 0..=1 {
            if reduced_homology(f, k, ring) != reduced_homology_full_basis(f, k, ring) {
                mismatches.push(format!("{:?} k={k}", f.parts()));
            }
        }
        for k in 0..=2 {
            let d = boundary_matrix(f, k, ring).mul(&boundary_matrix(f, k + 1, ring), ring);
            nonzero += usize::from(!d.is_zero());
        }
    }
    r.property(
        "chains.normalized_matches_full",
        mismatches.is_empty(),
        None,
        json!({"families": families.len(), "max_vertices": cfg.max_vertices, "ring": ring.to_string(), "failures": mismatches}),
    );
    r.property("chains.boundary_squared_zero", nonzero == 0, None, json!({"families": families.len(), "failures": nonzero}));
    Ok(())
}

fn verify_sigma(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let mut bad = Vec::new();
    let params = [-3i64, -2, -1, 1, 2, 3];
    let theories = [
        Theory::Homotopical,
        Theory::Homological(RingSpec::Integers),
        Theory::Homological(RingSpec::Rationals),
        Theory::Homological(RingSpec::PrimeField(2)),
    ];
    for &m in &params {
        for &n in &params {
            for l in -2..=2 {
                let lambda = integer(l);
                let base = bs_sigma_classify(m, n, &lambda, Degree::Finite(1), Target::Completion, Theory::Homotopical)?;
                let scaled = bs_sigma_classify(m, n, &(&lambda * integer(3)), Degree::Finite(1), Target::Completion, Theory::Homotopical)?;
                if scaled.verdict != base.verdict {
                    bad.push(format!("scaling ({m},{n}) λ={l}"));
                }
                for k in [Degree::Finite(1), Degree::Finite(2), Degree::Finite(5), Degree::Infinity] {
                    for theory in theories {
                        for target in [Target::Completion, Target::Discrete] {
                            let v = bs_sigma_classify(m, n, &lambda, k, target, theory)?;
                            if v.verdict != base.verdict || v.clause != base.clause {
                                bad.push(format!("({m},{n}) λ={l} k={k} {theory}"));
                            }
                        }
                    }
                }
                if l == 0 && base.verdict != Verdict::Member {
                    bad.push(format!("({m},{n}) zero character"));
                }
            }
        }
    }
    r.property("bs.table_invariances", bad.is_empty(), None, json!({"failures": bad}));

    let (seed, mut rng) = rng_for(cfg, 30);
    let mut bad = Vec::new();
    for (n, ps) in [(3usize, vec![2u64, 5]), (5, vec![2, 3]), (4, vec![3])] {
        let primes = PrimeSet::new(ps).expect("primes");
        let dim = (n - 1) * primes.len();
        for _ in 0..cfg.samples {
            let c = ConeCoordinates::new((0..dim).map(|_| integer(rng.random_range(-2..=2))).collect());
            let verdicts = (1..=n as u32 + 1)
                .map(|k| tri_sigma_classify(n, &primes, &c, Degree::Finite(k), Target::Completion))
                .collect::<Result<Vec<_>, _>>()?;
            for w in verdicts.windows(2) {
                let broke = (w[0].verdict == Verdict::NonMember && w[1].verdict != Verdict::NonMember)
                    || (w[1].verdict == Verdict::Member && w[0].verdict != Verdict::Member);
                if broke {
                    bad.push(format!("n={n} {:?}", c.coefficients));
                }
            }
            if verdicts.iter().any(|v| (v.verdict == Verdict::Unknown) != (v.clause == Clause::TriGap)) {
                bad.push(format!("unknown outside gap n={n}"));
            }
        }
    }
    r.property("tri.monotone_in_degree", bad.is_empty(), Some(seed), json!({"failures": bad}));

    let unresolved: Vec<&str> = Clause::ALL.iter().map(|c| c.tag()).filter(|t| lookup_citation(t).is_none()).collect();
    r.property("citations.resolve", unresolved.is_empty(), None, json!({"unresolved": unresolved}));

    match build_group(&cfg.group)? {
        AnyGroup::Cyclic => {
            let chi = character(&InfiniteCyclic, cfg, || Character::new(vec![integer(1)]))?;
            filtration_nesting(&InfiniteCyclic, &chi, cfg, r)?;
        }
        AnyGroup::Bs(g) => {
            let chi = character(&g, cfg, || g.tau())?;
            filtration_nesting(&g, &chi, cfg, r)?;
            coset_nesting(&g, &chi, cfg, r)?;
        }
        AnyGroup::Tri(g) => {
            let chi = character(&g, cfg, || tri_default_character(&g))?;
            filtration_nesting(&g, &chi, cfg, r)?;
            coset_nesting(&g, &chi, cfg, r)?;
        }
    }
    Ok(())
}

fn filtration_nesting<G: Group>(g: &G, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_filtration(g, cfg.scales.last().copied().unwrap_or(0), cfg)?;
    let f = build_group_filtration(g, chi, cfg.window, &cfg.scales)?;
    let nested = crate::chains::check_nested(&f.stages).is_ok();
    r.property("filtration.group_nested", nested, None, json!({"translates": f.translates.len(), "stages": f.stages.len()}));
    Ok(())
}

fn coset_nesting<H: HeckePair>(pair: &H, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    if pair.check_lambda_vanishing(chi).is_err() {
        return Ok(());
    }
    let f = build_coset_filtration(pair, chi, cfg.window, &cfg.scales)?;
    let nested = crate::chains::check_nested(&f.stages).is_ok();
    r.property("filtration.coset_nested", nested, None, json!({"translates": f.translates.len(), "stages": f.stages.len()}));
    Ok(())
}

fn verify_vr(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    match build_group(&cfg.group)? {
        AnyGroup::Cyclic => {
            let chi = character(&InfiniteCyclic, cfg, || Character::new(vec![integer(1)]))?;
            vr_laws(&InfiniteCyclic, &chi, cfg, r)
        }
        AnyGroup::Bs(g) => {
            let chi = character(&g, cfg, || g.tau())?;
            vr_laws(&g, &chi, cfg, r)
        }
        AnyGroup::Tri(g) => {
            let chi = character(&g, cfg, || tri_default_character(&g))?;
            vr_laws(&g, &chi, cfg, r)
        }
    }
}

/// `H̃_0` rank from components, the independent side of the `vr_h0_probe` check.
pub fn components_rank(family: &TranslateFamily) -> usize {
    if family.parts().is_empty() {
        0
    } else {
        pi0(family).count - 1
    }
}

fn vr_laws<G: Group>(g: &G, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_ball(g, 2 * cfg.radius, cfg)?;
    let window = word_metric_window(g, cfg.radius)?;
    let admitted = window.restriction(g, chi)?;
    let ring = ring(cfg)?;
    let windows: Vec<VrWindow<'_, G::Element>> =
        cfg.scales.iter().map(|&s| VrWindow::restricted(&window, s, admitted.clone())).collect();
    r.property("vr.zero_skeleton_invariance", zero_skeleton_invariance(&windows)?, None, json!({"scales": cfg.scales}));
    r.evidence("vr_h0", vr_h0_probe(&window, Some(&admitted), &cfg.scales, ring)?);

    let (seed, mut rng) = rng_for(cfg, 40);
    let points: Vec<G::Element> = window.points().iter().cloned().collect();
    let mut bad = Vec::new();
    for trial in 0..20 {
        let size = rng.random_range(1..=points.len().min(40));
        let pick: Vec<G::Element> = points.choose_multiple(&mut rng, size).cloned().collect();
        let sub = MetricWindow::from_points(g, pick, 2 * cfg.radius)?;
        let adm = sub.restriction(g, chi)?;
        for ring in [RingSpec::Integers, RingSpec::Rationals, RingSpec::PrimeField(2)] {
            let rep = vr_h0_probe(&sub, Some(&adm), &cfg.scales, ring)?;
            for s in &rep.scales {
                let expected = components_rank(&VrWindow::restricted(&sub, s.r, adm.clone()).clique_family());
                if s.h0_rank != expected {
                    bad.push(format!("trial {trial} r={} {ring}: {} vs {expected}", s.r, s.h0_rank));
                }
            }
        }
    }
    r.property("vr.h0_matches_components", bad.is_empty(), Some(seed), json!({"windows": 20, "failures": bad}));

    let (seed, mut rng) = rng_for(cfg, 41);
    let (mut mono, mut invariance) = (0, 0);
    for _ in 0..cfg.samples {
        let k = rng.random_range(1..=3);
        let simplex: Vec<G::Element> = points.choose_multiple(&mut rng, k).cloned().collect();
        for &s in &cfg.scales {
            if vr_simplex_test(&VrWindow::new(&window, s), &simplex)?
                && !vr_simplex_test(&VrWindow::new(&window, s + 1), &simplex)?
            {
                mono += 1;
            }
        }
        let (x, y, h) = (points.choose(&mut rng), points.choose(&mut rng), points.choose(&mut rng));
        let (x, y, h) = (x.expect("nonempty"), y.expect("nonempty"), h.expect("nonempty"));
        let (hx, hy) = (g.multiply(h, x), g.multiply(h, y));
        if let (Some(i), Some(j), Some(a), Some(b)) =
            (window.index_of(x), window.index_of(y), window.index_of(&hx), window.index_of(&hy))
        {
            invariance += usize::from(window.distance(i, j) != window.distance(a, b));
        }
    }
    r.property("vr.monotone_in_scale", mono == 0, Some(seed), json!({"failures": mono}));
    r.property("vr.left_invariance", invariance == 0, Some(seed), json!({"failures": invariance}));

    let mut cof = Vec::new();
    for c_radius in [1, 2] {
        let c: Vec<G::Element> = ball(g, c_radius).elements().cloned().collect();
        let rep = cofinality_check(g, &c, c_radius + 1)?;
        cof.push(json!({"c": format!("ball({c_radius})"), "forward_scale": rep.forward_scale, "reverse_radius": rep.reverse_radius, "passed": rep.passed() && rep.forward_scale == c_radius}));
    }
    let ok = cof.iter().all(|v| v["passed"] == json!(true));
    r.property("vr.cofinality", ok, None, json!(cof));
    Ok(())
}
