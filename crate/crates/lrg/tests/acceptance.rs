//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured evidence. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use lrg::clique::{clique_number, clique_number_oracle, verify, BoundsVector};
use lrg::colouring::{ColourId, LinearColouring};
use lrg::compound::{
    build, predicted_order, predicts_cyclic, restricted_verify, CompoundRecipe,
};
use lrg::growth::{abbott_r5, limiting_growth_rate, lower_bound};
use lrg::search::{exhaustive, quadratic_residue_colouring, ExhaustiveOptions};
use lrg::template::validate_template;

fn bounds(ks: &[u32]) -> BoundsVector {
    BoundsVector::new(ks.to_vec()).unwrap()
}

fn template_search(m: u32, ks: &[u32]) -> Vec<LinearColouring> {
    let opts = ExhaustiveOptions {
        require_template: true,
        ..Default::default()
    };
    exhaustive(m, &bounds(ks), &opts).unwrap().found
}

/// The catalog's order-12 first prototype: the search result whose template
/// is {5,7,8,9,11}. Its compounds keep the prototype's clique number in the
/// retained colour, unlike some of its siblings from the same search.
fn derived_6_3_12() -> LinearColouring {
    template_search(12, &[6, 3])
        .into_iter()
        .find(|c| validate_template(c, 2).unwrap().theta().lengths() == [5, 7, 8, 9, 11])
        .expect("exhaustive search derives this prototype")
}

/// Criterion 1: exhaustive prototype derivation. Order 12 under (6,3) with a
/// required template yields a template of minimum length 5 (tail length 4);
/// order 10 under (5,3) yields minimum length 4 (tail length 3). Under five
/// seconds each.
#[test]
fn criterion_1_prototype_derivation() {
    let t0 = Instant::now();
    let found12 = template_search(12, &[6, 3]);
    let d12 = t0.elapsed();
    assert!(
        found12
            .iter()
            .any(|c| validate_template(c, 2).unwrap().phi() == 4),
        "no order-12 prototype with tail length 4 found"
    );

    let t0 = Instant::now();
    let found10 = template_search(10, &[5, 3]);
    let d10 = t0.elapsed();
    assert!(
        found10
            .iter()
            .any(|c| validate_template(c, 2).unwrap().phi() == 3),
        "no order-10 prototype with tail length 3 found"
    );

    assert!(d12 < Duration::from_secs(5), "order-12 search took {d12:?}");
    assert!(d10 < Duration::from_secs(5), "order-10 search took {d10:?}");
    println!(
        "[criterion 1] PASS: order-12 search {:?} ({} found), order-10 search {:?} ({} found)",
        d12,
        found12.len(),
        d10,
        found10.len()
    );
}

/// Criterion 2: the 82-vertex compound built from search-derived prototypes,
/// fully verified (no restricted shortcut) against (6,3,4) in colour order.
/// Under one minute.
#[test]
fn criterion_2_eighty_two_vertex_compound() {
    let t0 = Instant::now();
    let u = derived_6_3_12();
    let v = exhaustive(8, &bounds(&[3, 4]), &ExhaustiveOptions::default())
        .unwrap()
        .found
        .into_iter()
        .next()
        .expect("a (3,4) graph of order 8 exists");

    let recipe = CompoundRecipe::new(u, bounds(&[6, 3]), 2, v, bounds(&[3, 4])).unwrap();
    let result = build(&recipe).unwrap();
    assert_eq!(result.w().order(), 82, "order must be exactly 82");

    let report = verify(result.w(), &bounds(&[6, 3, 4])).unwrap();
    assert!(report.pass, "full verification failed:\n{}", report.render_text());
    let cliques: Vec<u32> = report.verdicts.iter().map(|v| v.clique).collect();
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "[criterion 2] PASS: order 82, full clique numbers {cliques:?} < (6,3,4), {elapsed:?}"
    );
}

/// Criterion 3: order arithmetic, exact integers.
#[test]
fn criterion_3_order_arithmetic() {
    assert_eq!(predicted_order(12, 8, 4).unwrap(), 82);
    assert_eq!(predicted_order(12, 101, 4).unwrap(), 1105);
    assert_eq!(predicted_order(10, 453, 3).unwrap(), 4072);
    assert_eq!(lower_bound(1105), 1106);
    assert_eq!(lower_bound(4072), 4073);
    println!("[criterion 3] PASS: orders 82/1105/4072 and bounds 1106/4073 exact");
}

// ---------------------------------------------------------------------------
// random valid recipes for the theorem property suite
// ---------------------------------------------------------------------------

fn is_sumfree(set: &BTreeSet<u32>) -> bool {
    for &a in set {
        for &b in set.range(a..) {
            if set.contains(&(a + b)) {
                return false;
            }
        }
    }
    true
}

/// Random sum-free template contents containing m-1.
fn random_theta(rng: &mut ChaCha8Rng, m: u32) -> BTreeSet<u32> {
    let mut theta = BTreeSet::from([m - 1]);
    // walk downwards; upper-half lengths are safe bets, lower ones are kept
    // only if sum-freeness survives
    for l in (1..m - 1).rev() {
        let p = if 2 * l > m - 1 { 0.45 } else { 0.15 };
        if rng.gen_bool(p) {
            theta.insert(l);
            if !is_sumfree(&theta) {
                theta.remove(&l);
            }
        }
    }
    theta
}

/// A recipe whose compound provably meets its bounds: prototype bounds are
/// the measured clique numbers plus one, and any retained colour whose clique
/// grows in the compound gets its bound raised to cover the growth (the
/// restricted-search guarantee is conditional on the compound meeting the
/// bound).
fn random_recipe(rng: &mut ChaCha8Rng) -> CompoundRecipe {
    loop {
        let q: u32 = if rng.gen_bool(0.7) { 2 } else { 3 };
        let doubling = rng.gen_bool(0.4);
        let m: u32 = if doubling {
            2 * rng.gen_range(2..=7)
        } else {
            rng.gen_range(4..=14)
        };

        // template contents
        let theta: BTreeSet<u32> = if doubling {
            (m / 2..m).collect()
        } else {
            random_theta(rng, m)
        };
        if theta.len() == (m - 1) as usize {
            continue; // nothing left for the retained colours
        }

        // retained colours; the doubling variant gets a palindromic head so
        // that cyclic predictions occur in the sample
        let mut colours = vec![0u32; (m - 1) as usize];
        for (i, c) in colours.iter_mut().enumerate() {
            let l = (i + 1) as u32;
            if theta.contains(&l) {
                *c = q;
            }
        }
        if doubling {
            let p = m / 2;
            for l in 1..p {
                let partner = p - l;
                if colours[(l - 1) as usize] == 0 {
                    let c = rng.gen_range(1..q);
                    colours[(l - 1) as usize] = c;
                    if partner >= 1 && colours[(partner - 1) as usize] == 0 {
                        colours[(partner - 1) as usize] = c;
                    }
                }
            }
        }
        for c in colours.iter_mut() {
            if *c == 0 {
                *c = rng.gen_range(1..q);
            }
        }
        let u = LinearColouring::new(m, q, colours).unwrap();
        if validate_template(&u, q).is_err() {
            continue;
        }

        // second prototype, cyclic half the time
        let n: u32 = rng.gen_range(2..=12);
        let r: u32 = rng.gen_range(1..=3);
        let cyclic_v = rng.gen_bool(0.5);
        let mut vcols = vec![0u32; (n - 1) as usize];
        for l in 1..n {
            if vcols[(l - 1) as usize] != 0 {
                continue;
            }
            let c = rng.gen_range(1..=r);
            vcols[(l - 1) as usize] = c;
            if cyclic_v {
                vcols[(n - l - 1) as usize] = c;
            }
        }
        let v = LinearColouring::new(n, r, vcols).unwrap();

        // tight bounds from measured clique numbers
        let mut u_bounds: Vec<u32> = u
            .length_sets()
            .iter()
            .map(|s| clique_number(s).0 + 1)
            .collect();
        u_bounds[(q - 1) as usize] = 3;
        let v_bounds: Vec<u32> = v
            .length_sets()
            .iter()
            .map(|s| (clique_number(s).0 + 1).max(2))
            .collect();

        let recipe = CompoundRecipe::new(
            u.clone(),
            bounds(&u_bounds),
            q,
            v.clone(),
            bounds(&v_bounds),
        )
        .unwrap();

        // raise any retained bound the compound outgrows
        let w = build(&recipe).unwrap();
        let mut bumped = false;
        for s in 1..q {
            let full = clique_number(&w.w().length_set(s).unwrap()).0;
            if full >= u_bounds[(s - 1) as usize] {
                u_bounds[(s - 1) as usize] = full + 1;
                bumped = true;
            }
        }
        if !bumped {
            return recipe;
        }
        return CompoundRecipe::new(u, bounds(&u_bounds), q, v, bounds(&v_bounds)).unwrap();
    }
}

/// Criterion 4: over at least 100 random valid recipes, (a) restricted clique
/// numbers equal full clique numbers in every retained colour, (b) the full
/// clique number of every inherited colour equals the second prototype's,
/// (c) retained colours repeat with period m-1 inside the full blocks, and
/// (d) the template colour is eliminated. Zero violations.
#[test]
fn criterion_4_theorem_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    let total = 120;
    let mut binding_caps = 0u32;
    for i in 0..total {
        let recipe = random_recipe(&mut rng);
        let result = build(&recipe).unwrap();
        let w = result.w();
        let w_bounds = recipe.w_bounds();
        let q = recipe.u().colour_count();
        let r = recipe.v().colour_count();
        let m = recipe.u().order();
        let n = recipe.v().order();

        let restricted = restricted_verify(&result, &w_bounds).unwrap();
        assert!(
            restricted.pass,
            "recipe {i}: compound unexpectedly fails its bounds\n{}",
            restricted.render_text()
        );
        let full = verify(w, &w_bounds).unwrap();

        // (a) restricted equals full in every retained colour
        for s in 0..(q - 1) as usize {
            assert_eq!(
                restricted.verdicts[s].clique, full.verdicts[s].clique,
                "recipe {i}: restricted/full mismatch in retained colour {}",
                s + 1
            );
            let cap = (w_bounds.as_slice()[s] as u64 - 1) * (m as u64 - 2);
            if cap < (w.order() - 1) as u64 {
                binding_caps += 1;
            }
        }

        // (b) inherited clique numbers equal the second prototype's
        for t in 1..=r {
            let mapped = (q - 1 + t) as usize;
            let v_clique = clique_number(&recipe.v().length_set(t).unwrap()).0;
            assert_eq!(
                full.verdicts[mapped - 1].clique, v_clique,
                "recipe {i}: inherited colour {t} clique differs from prototype"
            );
        }

        // (c) retained colours repeat with period m-1 inside the full blocks
        let blocks = (n - 1) * (m - 1);
        for l in 1..=blocks.saturating_sub(m - 1) {
            let c = w.colour_of(l);
            if c < q {
                assert_eq!(
                    w.colour_of(l + (m - 1)),
                    c,
                    "recipe {i}: period break at length {l}"
                );
            }
        }

        // (d) template elimination: inside blocks, template residues carry
        // inherited colours and everything else keeps its prototype colour;
        // the tail repeats the head of the first prototype
        let theta = recipe.template().theta();
        for length in 1..w.order() {
            let c = w.colour_of(length);
            if length <= blocks {
                let residue = (length - 1) % (m - 1) + 1;
                if theta.contains(residue) {
                    let mu = (length - 1) / (m - 1) + 1;
                    assert_eq!(c, q - 1 + recipe.v().colour_of(mu), "recipe {i}");
                } else {
                    assert_eq!(c, recipe.u().colour_of(residue), "recipe {i}");
                    assert!(c < q, "recipe {i}: template colour survives at {length}");
                }
            } else {
                let j = length - blocks;
                assert_eq!(c, recipe.u().colour_of(j), "recipe {i}");
                assert!(c < q, "recipe {i}: template colour in the tail");
            }
        }
    }
    assert!(binding_caps > 0, "sample never exercised a binding cap");
    println!(
        "[criterion 4] PASS: {total} recipes, zero violations ({binding_caps} retained-colour checks with a binding cap)"
    );
}

/// Criterion 5: over the same kind of sample, a positive cyclicity prediction
/// always yields a cyclic compound. Zero violations.
#[test]
fn criterion_5_cyclicity_prediction() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let total = 120;
    let mut predicted = 0u32;
    for i in 0..total {
        let recipe = random_recipe(&mut rng);
        if predicts_cyclic(&recipe) {
            predicted += 1;
            let w = build(&recipe).unwrap();
            assert!(
                w.w().is_cyclic(),
                "recipe {i}: predicted cyclic but the compound is not"
            );
        }
    }
    assert!(
        predicted >= 15,
        "sample contains too few predicted-cyclic recipes ({predicted})"
    );
    println!("[criterion 5] PASS: {predicted}/{total} recipes predicted cyclic, all compounds cyclic");
}

/// Criterion 6: the difference-set clique numbers agree with the explicit
/// maximum-clique oracle on every 2-colouring of order at most 7 and on 500
/// random colourings of order at most 20 in up to 4 colours. Under two
/// minutes.
#[test]
fn criterion_6_giraud_equivalence() {
    let t0 = Instant::now();
    let mut checked = 0u32;

    for m in 2u32..=7 {
        let entries = (m - 1) as usize;
        for bits in 0u32..(1 << entries) {
            let colours: Vec<ColourId> = (0..entries).map(|i| 1 + ((bits >> i) & 1)).collect();
            let col = LinearColouring::new(m, 2, colours).unwrap();
            let g = col.expand_explicit().unwrap();
            for set in col.length_sets() {
                assert_eq!(
                    clique_number(&set).0,
                    clique_number_oracle(&g, set.colour()).unwrap(),
                    "m={m} bits={bits} colour={}",
                    set.colour()
                );
                checked += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    for _ in 0..500 {
        let m = rng.gen_range(2u32..=20);
        let q = rng.gen_range(1u32..=4);
        let colours: Vec<ColourId> = (1..m).map(|_| rng.gen_range(1..=q)).collect();
        let col = LinearColouring::new(m, q, colours).unwrap();
        let g = col.expand_explicit().unwrap();
        for set in col.length_sets() {
            assert_eq!(
                clique_number(&set).0,
                clique_number_oracle(&g, set.colour()).unwrap(),
                "m={m} q={q} colour={} colours={:?}",
                set.colour(),
                col.colours()
            );
            checked += 1;
        }
    }

    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("[criterion 6] PASS: {checked} colour classes agree with the oracle, {elapsed:?}");
}

/// Criterion 7: classical sanity. Exactly two (3,3) colourings of order 5,
/// none of order 6; the quadratic-residue colouring of order 17 verifies as
/// a (4,4) graph.
#[test]
fn criterion_7_classical_sanity() {
    let c5 = exhaustive(5, &bounds(&[3, 3]), &ExhaustiveOptions::default()).unwrap();
    assert_eq!(c5.count, 2);
    let c6 = exhaustive(6, &bounds(&[3, 3]), &ExhaustiveOptions::default()).unwrap();
    assert_eq!(c6.count, 0);

    let paley = quadratic_residue_colouring(17).unwrap();
    let report = verify(&paley, &bounds(&[4, 4])).unwrap();
    assert!(report.pass);
    println!("[criterion 7] PASS: counts 2/0, order-17 residue graph verifies as (4,4)");
}

/// Criterion 8: growth arithmetic. Published decimals within 0.001 and the
/// algebraic identities within 1e-12.
#[test]
fn criterion_8_growth_arithmetic() {
    let root212 = limiting_growth_rate(213, 3).unwrap();
    assert!((root212 - 14.560).abs() <= 0.001, "sqrt(212) = {root212}");
    let root376 = limiting_growth_rate(377, 6).unwrap();
    assert!((root376 - 3.273).abs() <= 0.001, "376^(1/5) = {root376}");
    let gamma5 = abbott_r5(root376).unwrap();
    assert!((gamma5 - 10.717).abs() <= 0.001, "376^(2/5) = {gamma5}");

    for m in [3u32, 10, 101, 213, 377, 1105, 4072] {
        let r3 = limiting_growth_rate(m, 3).unwrap();
        assert!((r3 * r3 - (m as f64 - 1.0)).abs() < 1e-12 * (m as f64 - 1.0).max(1.0));
        for q in [2u32, 3, 6] {
            let rate = limiting_growth_rate(m, q).unwrap();
            assert!((abbott_r5(rate).unwrap() - rate * rate).abs() < 1e-12);
        }
    }
    println!(
        "[criterion 8] PASS: sqrt(212)={root212:.4}, 376^(1/5)={root376:.4}, 376^(2/5)={gamma5:.4}, identities at 1e-12"
    );
}

/// Criterion 9 (conditional): ingest a cyclic (6,6) colouring of order 101,
/// compound it with the derived (6,3;12) prototype, and check the order-1105
/// result under restricted verification for (6,6,6) plus cyclicity. The
/// prototype is not shipped; the test reads LRG_PROTO_6_6_101 if set and
/// otherwise generates a quadratic-residue stand-in of order 101, which
/// verifies as (6,6;101).
#[test]
fn criterion_9_order_1105_compound() {
    let t0 = Instant::now();
    let (v, origin) = match std::env::var("LRG_PROTO_6_6_101") {
        Ok(path) => {
            let text = std::fs::read_to_string(&path).expect("cannot read LRG_PROTO_6_6_101");
            (LinearColouring::parse(&text).unwrap(), format!("file {path}"))
        }
        Err(_) => (
            quadratic_residue_colouring(101).unwrap(),
            "generated order-101 residue stand-in".to_string(),
        ),
    };
    assert_eq!(v.order(), 101, "second prototype must have order 101");
    assert!(v.is_cyclic(), "second prototype must be cyclic");
    let v_report = verify(&v, &bounds(&[6, 6])).unwrap();
    assert!(
        v_report.pass,
        "second prototype is not a (6,6;101) graph:\n{}",
        v_report.render_text()
    );

    let u = derived_6_3_12();
    let recipe = CompoundRecipe::new(u, bounds(&[6, 3]), 2, v, bounds(&[6, 6])).unwrap();
    assert!(predicts_cyclic(&recipe), "construction should predict cyclic");

    let result = build(&recipe).unwrap();
    assert_eq!(result.w().order(), 1105, "order must be exactly 1105");
    assert!(result.w().is_cyclic(), "compound must be cyclic");

    let report = restricted_verify(&result, &bounds(&[6, 6, 6])).unwrap();
    assert!(
        report.pass,
        "restricted verification failed:\n{}",
        report.render_text()
    );
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "[criterion 9] PASS: ({origin}) -> cyclic order-1105 compound, restricted (6,6,6) ok, {elapsed:?}"
    );
}
