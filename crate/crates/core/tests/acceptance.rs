//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Counts are exact; each criterion also has a wall-clock budget.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use weylgate::building::{
    big_cell_map, frame_of, is_opposite, relative_position, weyl_action, Building, FlagModel,
};
use weylgate::coxeter::{enumerate_homomorphisms, enumerate_subgroups, CoxeterGroup, Subgroup};
use weylgate::galois::{product_pair_action, ClosedLattice, PairAction};
use weylgate::morphism::{
    check_opposition_preserving, check_w_equivariance, induced_face_maps, ChamberMap,
};
use weylgate::partition::Partition;
use weylgate::scenario::{self, check_galois_laws, Report, RANDOM_PARTITIONS};
use weylgate::subspace::Matrix;
use weylgate::DEFAULT_SEED;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn count(r: &Report, key: &str) -> u64 {
    r.counts.get(key).copied().unwrap_or(u64::MAX)
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn all_verdicts_pass(r: &Report) -> Result<(), String> {
    match r.verdicts.iter().find(|v| !v.pass && !v.informational) {
        Some(v) => Err(format!("verdict failed: {} ({:?})", v.name, v.detail)),
        None => Ok(()),
    }
}

fn flag_n3() -> Outcome {
    let r = scenario::run_flag_building(3, 2, DEFAULT_SEED).map_err(e)?;
    let got = [
        count(&r, "chambers"),
        count(&r, "opposite_pairs"),
        count(&r, "diagonal_orbits"),
        count(&r, "closed_quotients"),
    ];
    ensure(got == [21, 168, 6, 4], format!("counts {got:?}"))?;
    let cube = r.verdict("Boolean cube of dimension 2").ok_or("no cube verdict")?;
    ensure(cube.pass, "not a 2-cube")?;
    all_verdicts_pass(&r)?;

    // the two middle elements are the point and line quotients, closed
    // subgroups <(1 2)> and <(2 3)>
    let model = FlagModel::new(3, 2).map_err(e)?;
    let lattice = model.action().enumerate_closed().map_err(e)?;
    let g = model.group();
    let middle: HashSet<Vec<String>> = lattice
        .subgroups()
        .iter()
        .filter(|v| v.len() == 2)
        .map(|v| v.labels(g))
        .collect();
    let expected: HashSet<Vec<String>> = [
        vec!["()".to_string(), "(1 2)".to_string()],
        vec!["()".to_string(), "(2 3)".to_string()],
    ]
    .into_iter()
    .collect();
    ensure(middle == expected, format!("middle closed subgroups {middle:?}"))?;
    for (ty, gen) in [(vec![1], "(2 3)"), (vec![2], "(1 2)")] {
        let p = model.building().partial_flag_quotient(&ty).map_err(e)?;
        let stab = model.action().stabilizer_subgroup(&p).map_err(e)?;
        ensure(
            stab.labels(g) == ["()", gen],
            format!("type {ty:?} quotient has stabilizer {:?}", stab.labels(g)),
        )?;
    }
    Ok("21 chambers, 168 pairs, 6 orbits, 4 closed quotients, 2-cube".into())
}

fn flag_n4() -> Outcome {
    let r = scenario::run_flag_building(4, 2, DEFAULT_SEED).map_err(e)?;
    let got = [
        count(&r, "chambers"),
        count(&r, "opposite_pairs"),
        count(&r, "diagonal_orbits"),
        count(&r, "closed_quotients"),
    ];
    ensure(got == [315, 20160, 24, 8], format!("counts {got:?}"))?;
    ensure(
        r.verdict("Boolean cube of dimension 3").is_some_and(|v| v.pass),
        "not isomorphic to the partial-flag 3-cube",
    )?;
    all_verdicts_pass(&r)?;
    Ok("315 chambers, 20160 pairs, 24 orbits, 8 closed quotients, 3-cube".into())
}

fn product_3_4() -> Outcome {
    let r = scenario::run_product(3, 4, DEFAULT_SEED).map_err(e)?;
    ensure(count(&r, "closed_quotients") == 4, "closed quotient count")?;
    all_verdicts_pass(&r)?;

    // independent recomputation of the named quotients
    let action = product_pair_action(3, 4).map_err(e)?;
    let lattice = action.enumerate_closed().map_err(e)?;
    let pr1 = Partition::from_labels((0..12).map(|x| x / 4));
    let pr2 = Partition::from_labels((0..12).map(|x| x % 4));
    let expected: HashSet<Partition> =
        [Partition::one_block(12), pr1, pr2, Partition::identity(12)].into_iter().collect();
    let found: HashSet<Partition> = lattice.quotients().iter().cloned().collect();
    ensure(expected == found, "closed quotients differ from {one-block, pr_1, pr_2, identity}")?;
    let g = action.group();
    let flip = Subgroup::generated_by(g, &[g.flip().ok_or("no flip")?]);
    ensure(lattice.subgroup_index(&flip).is_none(), "<w_flip> is closed")?;
    ensure(
        action.close_subgroup(&flip).map_err(e)? == Subgroup::whole(g),
        "closure of <w_flip> is not W",
    )?;
    Ok("4 closed quotients; <w_flip> closes to W".into())
}

fn obstructions() -> Outcome {
    let s4 = CoxeterGroup::symmetric(4).map_err(e)?;
    let s3 = CoxeterGroup::symmetric(3).map_err(e)?;
    let z = CoxeterGroup::involution_product(2).map_err(e)?;

    let inj = enumerate_homomorphisms(&s4, &s3, None, true).map_err(e)?;
    ensure(inj.is_empty(), format!("{} injective S4 -> S3", inj.len()))?;

    let pin = (z.flip().ok_or("no flip")?, s3.flip().ok_or("no flip")?);
    ensure(s3.element(pin.1).to_string() == "(1 3)", "S3 flip is not w_long")?;
    let homs = enumerate_homomorphisms(&z, &s3, Some(pin), false).map_err(e)?;
    ensure(homs.len() == 2, format!("{} pinned Z2^2 -> S3", homs.len()))?;
    let gens = z.generator_indices();
    let kernels: HashSet<Subgroup> = homs.iter().map(|h| h.kernel().clone()).collect();
    let expected: HashSet<Subgroup> = gens
        .iter()
        .map(|&g| Subgroup::generated_by(&z, &[g]))
        .collect();
    ensure(kernels == expected, "kernels are not <w_1>, <w_2>")?;

    let auts = enumerate_homomorphisms(&s3, &s3, Some((s3.flip().unwrap(), s3.flip().unwrap())), true)
        .map_err(e)?;
    ensure(auts.len() == 2, format!("{} pinned automorphisms of S3", auts.len()))?;
    Ok("0 injective S4->S3; 2 pinned Z2^2->S3 with kernels <w_1>, <w_2>; 2 pinned Aut(S3)".into())
}

fn lattice_exchange(lattice: &ClosedLattice, action: &PairAction) -> Result<(), String> {
    // anti-isomorphism: the pairing is a bijection reversing the order
    let pairing = lattice.pairing();
    let distinct: HashSet<usize> = pairing.iter().copied().collect();
    ensure(distinct.len() == lattice.len(), "pairing is not a bijection")?;
    let (subs, quos) = (lattice.subgroups(), lattice.quotients());
    for i in 0..lattice.len() {
        for j in 0..lattice.len() {
            let sub_le = subs[i].is_subset_of(&subs[j]);
            let quo_ge = quos[pairing[j]].leq(&quos[pairing[i]]).map_err(e)?;
            ensure(sub_le == quo_ge, format!("pairing not antitone at ({i}, {j})"))?;
        }
    }
    let exchange = lattice.meet_join_exchange_violations(action).map_err(e)?;
    ensure(exchange == 0, format!("{exchange} meet/join exchange violations"))
}

fn galois_laws() -> Outcome {
    let mut pairs = 0;
    let mut scenarios = 0;
    let mut run = |action: &PairAction, structured: Vec<Partition>| -> Result<(), String> {
        let subgroups = enumerate_subgroups(action.group()).map_err(e)?;
        let laws = check_galois_laws(action, &subgroups, &structured, RANDOM_PARTITIONS, DEFAULT_SEED)
            .map_err(e)?;
        ensure(
            laws.adjunction_violations == 0
                && laws.closure_violations == 0
                && laws.antitone_violations == 0,
            format!("law violations {laws:?}"),
        )?;
        pairs += laws.adjunction_pairs;
        scenarios += 1;
        let lattice = action.enumerate_closed().map_err(e)?;
        lattice_exchange(&lattice, action)
    };
    for (n, q) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let model = FlagModel::new(n, q).map_err(e)?;
        let b = model.building();
        let structured: Vec<Partition> = weylgate::building::face_types(n)
            .iter()
            .map(|ty| b.partial_flag_quotient(ty))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        run(model.action(), structured)?;
    }
    for (m1, m2) in [(2, 2), (3, 4)] {
        let action = product_pair_action(m1, m2).map_err(e)?;
        let ground = m1 * m2;
        let structured = vec![
            Partition::one_block(ground),
            Partition::from_labels((0..ground).map(|x| x / m2)),
            Partition::from_labels((0..ground).map(|x| x % m2)),
            Partition::identity(ground),
        ];
        run(&action, structured)?;
    }
    Ok(format!(
        "0 violations over {scenarios} scenarios, {pairs} adjunction pairs ({RANDOM_PARTITIONS} random partitions each)"
    ))
}

fn weyl_identities() -> Outcome {
    let model = FlagModel::new(3, 2).map_err(e)?;
    let b = model.building();
    let g = model.group();
    let pairs: Vec<_> = model
        .opposite_pairs()
        .iter()
        .map(|&(x, y)| (b.chamber(x).clone(), b.chamber(y).clone()))
        .collect();
    ensure(pairs.len() == 168, "pair count")?;
    let mut checked = 0;
    for (ep, fp) in &pairs {
        for w in g.elements() {
            let (e1, f1) = weyl_action(w, (ep, fp)).map_err(e)?;
            ensure(is_opposite(&e1, &f1).map_err(e)?, "action leaves the opposite pairs")?;
            for v in g.elements() {
                let lhs = weyl_action(v, (&e1, &f1)).map_err(e)?;
                let rhs = weyl_action(&v.compose(w), (ep, fp)).map_err(e)?;
                ensure(lhs == rhs, "action law fails")?;
                checked += 1;
            }
        }
        let w_long = g.longest_element().map_err(e)?;
        ensure(g.element(g.flip().ok_or("no flip")?) == &w_long, "flip is not w_long")?;
        let swapped = weyl_action(&w_long, (ep, fp)).map_err(e)?;
        ensure(swapped == (fp.clone(), ep.clone()), "w_long does not swap the pair")?;
        let back = big_cell_map(&frame_of(ep, fp).map_err(e)?).map_err(e)?;
        ensure(back == (ep.clone(), fp.clone()), "big_cell_map . frame_of != id")?;
    }
    Ok(format!("{checked} action-law instances; w_long swaps; big_cell_map . frame_of = id"))
}

fn morphisms() -> Outcome {
    let model = FlagModel::new(3, 2).map_err(e)?;
    let matrices = Matrix::all_invertible(3, 2).map_err(e)?;
    ensure(matrices.len() == 168, format!("{} matrices in GL_3(F_2)", matrices.len()))?;
    let mut induced = HashSet::new();
    for g in &matrices {
        let phi = ChamberMap::from_matrix(&model, g).map_err(e)?;
        ensure(check_opposition_preserving(&model, &model, &phi).map_err(e)?, "matrix map not opposition preserving")?;
        ensure(check_w_equivariance(&model, &model, &phi).map_err(e)?, "matrix map not equivariant")?;
        induced_face_maps(&model, &model, &phi).map_err(e)?;
        induced.insert(phi.images().to_vec());
    }
    ensure(induced.len() == 168, "matrix maps are not distinct")?;
    for seed in 0..50 {
        let phi = ChamberMap::random_permutation(&model, DEFAULT_SEED + seed);
        let passes = check_opposition_preserving(&model, &model, &phi).map_err(e)?
            && check_w_equivariance(&model, &model, &phi).map_err(e)?
            && induced_face_maps(&model, &model, &phi).is_ok();
        ensure(!passes, format!("random permutation with seed {} passes", DEFAULT_SEED + seed))?;
    }
    Ok("168 matrix maps pass all checks; 50 random permutations all fail".into())
}

fn bruhat_cells() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        for q in [2u32, 3, 5] {
            let b = Building::new(n, q).map_err(e)?;
            let n_factorial: usize = (1..=n).product();
            for ep in b.chambers() {
                let mut cells = std::collections::HashMap::new();
                for fp in b.chambers() {
                    *cells.entry(relative_position(ep, fp).map_err(e)?).or_insert(0usize) += 1;
                }
                ensure(cells.len() == n_factorial, format!("n={n} q={q}: {} cells", cells.len()))?;
                for (w, c) in cells {
                    ensure(
                        c == (q as usize).pow(w.length() as u32),
                        format!("n={n} q={q}: cell of length {} has {c} chambers", w.length()),
                    )?;
                    total += 1;
                }
            }
        }
    }
    Ok(format!("{total} (E, w) cells checked for n <= 3, q in {{2, 3, 5}}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("flag-building n=3 q=2", Duration::from_secs(5), flag_n3),
        ("flag-building n=4 q=2", Duration::from_secs(120), flag_n4),
        ("product (3, 4)", Duration::from_secs(1), product_3_4),
        ("obstruction suite", Duration::from_secs(1), obstructions),
        ("Galois adjunction and closure laws", Duration::MAX, galois_laws),
        ("Weyl-action identities", Duration::from_secs(5), weyl_identities),
        ("morphism checker", Duration::from_secs(30), morphisms),
        ("Bruhat cell sizes", Duration::MAX, bruhat_cells),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg} [{} ms]", elapsed.as_millis()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg} [{} ms]", elapsed.as_millis());
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
