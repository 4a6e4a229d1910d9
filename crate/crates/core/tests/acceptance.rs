//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use partalg::alcove::{geometric_residue_equivalent, step_residues};
use partalg::branching::{all_paths, vertices_at_level, DimensionTable, Path, Vertex};
use partalg::diagram::{AlgebraElement, SetPartitionDiagram};
use partalg::kronecker::{pad, stable_point, KroneckerEngine};
use partalg::modules::{
    decomposition_row, is_permissible, simple_dimension, simple_dimension_verified,
    SimpleDimensions,
};
use partalg::residues::{
    content_vector, linkage_classes, linkage_classes_brute_force, residue_equivalent,
    residue_vector,
};
use partalg::{IntPolynomial, Partition};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn v(parts: &[usize], level: usize) -> Vertex {
    Vertex::new(p(parts), level).unwrap()
}

fn path(shapes: &[&[usize]]) -> Path {
    Path::new(shapes.iter().map(|s| p(s)).collect()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn reference_dimensions() -> Outcome {
    let start = Instant::now();
    let a = simple_dimension(&v(&[], 6), 2).map_err(|e| e.to_string())?;
    let b = simple_dimension(&v(&[1], 6), 2).map_err(|e| e.to_string())?;
    ensure(a == 4 && b == 4, || format!("got {a}, {b}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("dim L(∅,6) = {a}, dim L((1),6) = {b} at n=2"))
}

fn reference_paths() -> Outcome {
    let s = path(&[&[], &[], &[1], &[], &[1], &[], &[]]);
    let t = path(&[&[], &[], &[1], &[1], &[1], &[], &[]]);
    let u = path(&[&[], &[], &[1], &[1], &[2], &[2], &[3]]);
    let got = (
        is_permissible(&s, 2),
        is_permissible(&t, 2),
        is_permissible(&u, 2),
    );
    ensure(got == (true, false, true), || format!("got {got:?}"))?;
    Ok("s, t, u permissible: true, false, true".into())
}

fn reference_residues() -> Outcome {
    let t = path(&[&[], &[], &[1], &[1], &[1], &[], &[]]);
    let content: Vec<String> = content_vector(&t).iter().map(|c| c.to_string()).collect();
    ensure(content == ["0", "0", "1", "z-1", "z", "z"], || {
        format!("content {content:?}")
    })?;
    let r = residue_vector(&t, 2);
    ensure(r.values == [0, 0, 1, 1, 2, 2], || format!("residues {r}"))?;
    Ok(format!("c(t) = ({}), r_2(t) = {r}", content.join(",")))
}

fn kronecker_table() -> Outcome {
    let mut engine = KroneckerEngine::default();
    let expected: [(&[usize], Vec<Partition>); 3] = [
        (&[1, 1], vec![p(&[2])]),
        (&[2, 1], vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]),
        (
            &[3, 1],
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])],
        ),
    ];
    for (shape, constituents) in expected {
        let a = p(shape);
        for c in Partition::all_of_size(a.size()) {
            let g = engine
                .coefficient_of_shapes(&a, &a, &c)
                .map_err(|e| e.to_string())?;
            let want = u64::from(constituents.contains(&c));
            ensure(g == want, || {
                format!("g({a},{a},{c}) = {g}, expected {want}")
            })?;
        }
    }
    let one = p(&[1]);
    for nu in [p(&[]), p(&[1]), p(&[1, 1]), p(&[2])] {
        let seq = engine
            .kronecker_sequence(&one, &one, &nu, 8)
            .map_err(|e| e.to_string())?;
        let (stable, _) = engine
            .stable_kronecker(&one, &one, &nu)
            .map_err(|e| e.to_string())?;
        ensure(stable == 1, || {
            format!("stable value for ν={nu} is {stable}")
        })?;
        for e in seq.iter().filter(|e| e.n >= 4) {
            ensure(e.valid && e.g == 1, || {
                format!("ν={nu}: g at n={} is {}", e.n, e.g)
            })?;
        }
        let g4 = engine
            .kronecker_coefficient(&pad(&one, 4), &pad(&one, 4), &pad(&nu, 4))
            .map_err(|e| e.to_string())?;
        ensure(g4 == 1, || format!("ν={nu}: g at n=4 is {g4}"))?;
    }
    Ok("tensor squares at n=2,3,4 exact; ((1),(1),ν) constant 1 from n=4".into())
}

/// Bell numbers from the Stirling recurrence `S(k, j) = j·S(k−1, j) + S(k−1, j−1)`.
fn bell_numbers(max: usize) -> Vec<u64> {
    let mut stirling = vec![vec![0u64; max + 1]; max + 1];
    stirling[0][0] = 1;
    for k in 1..=max {
        for j in 1..=k {
            stirling[k][j] = j as u64 * stirling[k - 1][j] + stirling[k - 1][j - 1];
        }
    }
    stirling.iter().map(|row| row.iter().sum()).collect()
}

fn bell_identity() -> Outcome {
    let start = Instant::now();
    let bell = bell_numbers(10);
    ensure(
        bell == [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975],
        || format!("oracle {bell:?}"),
    )?;
    let table = DimensionTable::up_to(10).map_err(|e| e.to_string())?;
    for k in 0..=10 {
        let total: u64 = vertices_at_level(k)
            .iter()
            .map(|u| table.get(u).unwrap().pow(2))
            .sum();
        ensure(total == bell[k], || {
            format!("k={k}: Σ dim² = {total}, Bell = {}", bell[k])
        })?;
    }
    within(start, Duration::from_secs(5))?;
    Ok("Σ dim Δ² = Bell(k) for k = 0..10".into())
}

fn triple_agreement() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for k in 0..=8 {
        for n in 0..=6 {
            for u in vertices_at_level(k) {
                simple_dimension_verified(&u, n).map_err(|e| e.to_string())?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} (vertex, n) instances agree"))
}

fn oracle_equivalences() -> Outcome {
    let mut pairs = 0;
    for k in 0..=6 {
        let paths = all_paths(k).map_err(|e| e.to_string())?;
        for n in 0..=4 {
            for s in &paths {
                let r = residue_vector(s, n).values;
                let steps = step_residues(s, n);
                ensure(steps == r, || {
                    format!("{s} n={n}: steps {steps:?} vs {r:?}")
                })?;
                for t in &paths {
                    let g = geometric_residue_equivalent(s, t, n).map_err(|e| e.to_string())?;
                    let e = residue_equivalent(s, t, n).map_err(|e| e.to_string())?;
                    ensure(g == e, || {
                        format!("{s} vs {t} n={n}: geometric {g}, residue {e}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    for k in 0..=7 {
        for n in 0..=4 {
            let brute = linkage_classes_brute_force(k, n).map_err(|e| e.to_string())?;
            ensure(linkage_classes(k, n) == brute, || {
                format!("linkage differs at k={k}, n={n}")
            })?;
        }
    }
    Ok(format!("{pairs} path pairs; linkage k≤7, n≤4"))
}

fn monotonicity() -> Outcome {
    let start = Instant::now();
    let mut engine = KroneckerEngine::default();
    let shapes = Partition::all_up_to(3);
    let mut triples = 0;
    for a in &shapes {
        for b in &shapes {
            for c in &shapes {
                let n_max = stable_point(a, b, c) + 2;
                let report = engine
                    .check_monotone(a, b, c, n_max)
                    .map_err(|e| e.to_string())?;
                ensure(report.pass, || {
                    format!("({a}),({b}),({c}): {:?}", report.violations)
                })?;
                let r = &report.result;
                let tail: Vec<u64> = r
                    .sequence
                    .iter()
                    .filter(|e| e.n >= r.stable_at)
                    .map(|e| e.g)
                    .collect();
                ensure(
                    tail.len() == 3 && tail.iter().all(|&g| g == r.stable),
                    || {
                        format!(
                            "({a}),({b}),({c}): not constant from n₀ = {}: {tail:?}",
                            r.stable_at
                        )
                    },
                )?;
                triples += 1;
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{triples} triples monotone through n₀+2"))
}

fn decomposition_bookkeeping() -> Outcome {
    let mut rows = 0;
    for n in 0..=6 {
        let mut dims = SimpleDimensions::new(n, 8).map_err(|e| e.to_string())?;
        for k in 0..=8 {
            for u in vertices_at_level(k) {
                let row = decomposition_row(&u, n);
                let mut total = 0;
                for (w, m) in &row.factors {
                    total += m * dims.get(w).map_err(|e| e.to_string())?;
                }
                let cell = dims.cell(&u).map_err(|e| e.to_string())?;
                ensure(total == cell, || format!("{u} n={n}: {total} != {cell}"))?;
                rows += 1;
            }
        }
    }
    let special = decomposition_row(&v(&[], 2), 0);
    ensure(special.factors == vec![(v(&[1], 2), 1)], || {
        format!("n=0 row {:?}", special.factors)
    })?;
    Ok(format!(
        "{rows} rows balance, including Δ(∅) ≅ L((1)) at n=0"
    ))
}

fn random_diagram(rng: &mut StdRng, level: usize) -> SetPartitionDiagram {
    let dots = level.div_ceil(2);
    loop {
        // restricted growth string
        let mut labels = Vec::with_capacity(2 * dots);
        let mut next = 0;
        for _ in 0..2 * dots {
            let l = rng.gen_range(0..=next);
            if l == next {
                next += 1;
            }
            labels.push(l);
        }
        let d = SetPartitionDiagram::from_raw_labels(dots, labels);
        if d.fits_level(level) {
            return d;
        }
    }
}

fn algebra_axioms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let level = 1 + i % 6;
        let [a, b, c] =
            [0; 3].map(|_| AlgebraElement::basis(level, random_diagram(&mut rng, level)).unwrap());
        let left = a
            .multiply(&b)
            .and_then(|ab| ab.multiply(&c))
            .map_err(|e| e.to_string())?;
        let right = b
            .multiply(&c)
            .and_then(|bc| a.multiply(&bc))
            .map_err(|e| e.to_string())?;
        ensure(left == right, || {
            format!("associativity fails for {a}, {b}, {c}")
        })?;
        let ab_star = a.multiply(&b).map_err(|e| e.to_string())?.involute();
        let b_star_a_star = b
            .involute()
            .multiply(&a.involute())
            .map_err(|e| e.to_string())?;
        ensure(ab_star == b_star_a_star, || {
            format!("(ab)* != b*a* for {a}, {b}")
        })?;
    }
    let e: SetPartitionDiagram = "[[1],[1']]"
        .parse()
        .map_err(|e: partalg::Error| e.to_string())?;
    let e = AlgebraElement::basis(2, e).map_err(|e| e.to_string())?;
    let ee = e.multiply(&e).map_err(|e| e.to_string())?;
    let ze = e
        .scale(&IntPolynomial::monomial(1, 1))
        .map_err(|e| e.to_string())?;
    ensure(ee == ze, || format!("e·e = {ee}"))?;
    Ok("1000 random triples at m ≤ 3; e·e = z·e".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 reference simple dimensions", reference_dimensions),
        ("2 reference permissible paths", reference_paths),
        (
            "3 reference content and residue vectors",
            reference_residues,
        ),
        ("4 reference Kronecker table", kronecker_table),
        ("5 Bell identity", bell_identity),
        ("6 triple agreement", triple_agreement),
        ("7 oracle equivalences", oracle_equivalences),
        ("8 Kronecker monotonicity", monotonicity),
        ("9 decomposition bookkeeping", decomposition_bookkeeping),
        ("10 algebra axioms", algebra_axioms),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
