//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};

use revdist::fatgraph::{bar_offset, genus};
use revdist::oracle::{exact_distance, survey, validate, SortCertificate, SurveyMode};
use revdist::perm_core::GroundSet;
use revdist::plane_perm::{block_interchange, reversal_h, skew_symmetric, PlanePermutation};
use revdist::signed_perm::enumerate_all;
use revdist::verify::{self, VerifyConfig};
use revdist::{
    bound_bg, bound_genus, bound_plane, check_conjecture, check_equivalence, fatgraph_from_signed,
    hat, ReversalStep, SignedPermutation,
};

fn sp(v: &[i32]) -> SignedPermutation {
    SignedPermutation::new(v.to_vec()).unwrap()
}

/// Cycle count of `p ∘ s̃`, built from the two cyclic sequences with plain maps.
fn naive_plane_cycles(a: &SignedPermutation) -> (usize, bool) {
    let n = a.len() as i32;
    let mut s_seq = vec![0];
    s_seq.extend(a.entries());
    s_seq.extend(a.entries().iter().rev().map(|x| -x));
    let mut p_seq = vec![0];
    p_seq.extend((1..=n).map(|k| -k));
    p_seq.extend((1..=n).rev());
    let next = |seq: &[i32]| -> HashMap<i32, i32> {
        (0..seq.len())
            .map(|k| (seq[k], seq[(k + 1) % seq.len()]))
            .collect()
    };
    let (s, p) = (next(&s_seq), next(&p_seq));
    let pi = |x: i32| p[&s[&x]];
    let mut seen = HashSet::new();
    let mut cycles = 0;
    let mut n_and_sn_together = false;
    let s_n = *a.entries().last().unwrap();
    for &start in &s_seq {
        if seen.contains(&start) {
            continue;
        }
        cycles += 1;
        let mut orbit = HashSet::new();
        let mut x = start;
        while orbit.insert(x) {
            seen.insert(x);
            x = pi(x);
        }
        n_and_sn_together |= orbit.contains(&n) && orbit.contains(&s_n);
    }
    (cycles, n_and_sn_together)
}

/// Alternating cycles of the breakpoint graph in its unsigned-image form:
/// `+x -> 2x-1, 2x`, `-x -> 2x, 2x-1`, framed by `0` and `2n+1`.
fn naive_breakpoint_cycles(a: &SignedPermutation) -> usize {
    let n = a.len();
    let mut u = vec![0usize];
    for &x in a.entries() {
        let m = x.unsigned_abs() as usize;
        if x > 0 {
            u.extend([2 * m - 1, 2 * m]);
        } else {
            u.extend([2 * m, 2 * m - 1]);
        }
    }
    u.push(2 * n + 1);
    let mut parent: Vec<usize> = (0..2 * n + 2).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut union = |x: usize, y: usize| {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx] = ry;
    };
    for k in 0..=n {
        union(u[2 * k], u[2 * k + 1]);
        union(2 * k, 2 * k + 1);
    }
    (0..2 * n + 2)
        .filter(|&x| find(&mut parent, x) == x)
        .count()
}

/// Distances from the identity by BFS over plain vectors.
fn naive_distances(n: usize) -> HashMap<Vec<i32>, usize> {
    let start: Vec<i32> = (1..=n as i32).collect();
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for i in 0..n {
            for j in i..n {
                let mut w = v.clone();
                w[i..=j].reverse();
                w[i..=j].iter_mut().for_each(|x| *x = -*x);
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), d + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn golden_example() -> Outcome {
    let t = Instant::now();
    let a = sp(&[-5, 1, -3, 2, 4]);
    let bounds = (
        bound_plane(&a).map_err(|e| e.to_string())?,
        bound_bg(&a).map_err(|e| e.to_string())?,
        bound_genus(&a).map_err(|e| e.to_string())?,
    );
    ensure(bounds == (4, 4, 4), || format!("bounds {bounds:?}"))?;
    let stats = genus(&fatgraph_from_signed(&a)).map_err(|e| e.to_string())?;
    let cells = (stats.vertices, stats.edges, stats.faces, stats.genus);
    ensure(cells == (4, 11, 1, 4), || format!("fatgraph {cells:?}"))?;
    let d = exact_distance(&a, 7).map_err(|e| e.to_string())?;
    ensure(d == 4, || format!("exact distance {d}"))?;
    let cert = SortCertificate {
        start: a.clone(),
        steps: [(3, 4), (3, 3), (1, 5), (1, 4)]
            .map(|(i, j)| ReversalStep::new(i, j))
            .to_vec(),
    };
    ensure(validate(&cert), || {
        "four-step sequence does not sort".into()
    })?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "bounds 4/4/4, V=4 E=11 F=1 g=4, d=4 in {:?}",
        t.elapsed()
    ))
}

fn two_row_golden() -> Outcome {
    let inst = skew_symmetric(&sp(&[-5, 1, -3, 2, 4]));
    let (top, bottom) = inst.plane().two_row();
    let want_top = [0, -5, 1, -3, 2, 4, -4, -2, 3, -1, 5];
    let want_bottom = [5, 0, -4, 1, 3, -5, -3, 2, -2, 4, -1];
    ensure(top == want_top, || format!("top row {top:?}"))?;
    ensure(bottom == want_bottom, || format!("bottom row {bottom:?}"))?;
    Ok("pi-row matches".into())
}

fn hat_golden() -> Outcome {
    let g = Arc::new(GroundSet::range(1, 6));
    let pp = PlanePermutation::from_rows(Arc::clone(&g), &[1, 2, 3, 4, 5, 6], &[4, 5, 6, 1, 2, 3])
        .map_err(|e| e.to_string())?;
    let h = hat(&pp).map_err(|e| e.to_string())?;
    let off = bar_offset(&g);
    let bar = |v: i32| v + off;
    let (_, bottom) = h.two_row();
    let want = [
        4,
        bar(5),
        5,
        bar(6),
        6,
        bar(1),
        1,
        bar(2),
        2,
        bar(3),
        3,
        bar(4),
    ];
    ensure(bottom == want, || format!("hat row {bottom:?}"))?;
    let barred: Vec<i32> = (1..=6).map(bar).collect();
    let restricted = h.pi().restrict(&barred).map_err(|e| e.to_string())?;
    let cycles: HashSet<Vec<i32>> = restricted.cycles().into_iter().collect();
    let want: HashSet<Vec<i32>> =
        [vec![bar(1), bar(5), bar(3)], vec![bar(2), bar(6), bar(4)]].into();
    ensure(cycles == want, || format!("barred cycles {cycles:?}"))?;
    let d = pp.diagonal().cycle_count();
    ensure(d == 2, || format!("C(D) = {d}"))?;
    Ok("hat row and (1' 5' 3')(2' 6' 4') match, C(D) = 2".into())
}

fn acceptance_corpus() -> Vec<SignedPermutation> {
    verify::corpus(&VerifyConfig {
        exhaustive_n: 3,
        samples: 1000,
        seed: 0xacce,
        max_n: 10,
    })
}

fn equivalence(corpus: &[SignedPermutation]) -> Outcome {
    let t = Instant::now();
    let exhaustive = corpus.iter().filter(|a| a.len() <= 3).count();
    ensure(exhaustive == 58, || {
        format!("{exhaustive} permutations with n <= 3")
    })?;
    for a in corpus {
        let r = check_equivalence(a).map_err(|e| format!("{a}: {e}"))?;
        let (c_plane, _) = naive_plane_cycles(a);
        let c_bg = naive_breakpoint_cycles(a);
        let n = a.len();
        ensure(
            r.c_plane == c_plane
                && r.c_bg == c_bg
                && r.c_plane + 1 == r.c_theta
                && r.c_theta == 2 * r.c_bg
                && r.bound == n + 1 - c_bg,
            || format!("{a}: {r:?} vs naive C(pi)={c_plane} C_BG={c_bg}"),
        )?;
    }
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "{} permutations in {:?}",
        corpus.len(),
        t.elapsed()
    ))
}

fn conjecture(corpus: &[SignedPermutation]) -> Outcome {
    for a in corpus {
        let (_, naive) = naive_plane_cycles(a);
        ensure(check_conjecture(a) && naive, || format!("fails for {a}"))?;
    }
    Ok(format!("{} permutations, 0 failures", corpus.len()))
}

fn involution_suite() -> Outcome {
    let config = VerifyConfig {
        samples: 500,
        seed: 0x1e33,
        ..VerifyConfig::default()
    };
    let results = [
        verify::check_no_odd_return(&config),
        verify::check_fixed_points_share_cycle(&config),
        verify::check_extension_adds_one_cycle(&config),
        verify::check_matrix_factorization(&config),
    ];
    for r in &results {
        ensure(r.passed() && r.cases >= 500, || format!("{r:?}"))?;
    }
    Ok(results
        .iter()
        .map(|r| r.cases.to_string())
        .collect::<Vec<_>>()
        .join("/")
        + " cases")
}

/// Tight counts from the first exhaustive oracle run, pinned as regression values.
const TIGHT_N4: usize = 356;
const TIGHT_N5: usize = 3667;

fn soundness() -> Outcome {
    let t = Instant::now();
    let naive = naive_distances(4);
    for a in enumerate_all(4).unwrap() {
        let d = naive[a.entries()];
        ensure(exact_distance(&a, 7) == Ok(d), || {
            format!("BFS disagrees on {a}")
        })?;
    }
    let mut summary = Vec::new();
    for (n, total, tight) in [(4, 384, TIGHT_N4), (5, 3840, TIGHT_N5)] {
        let r = survey(n, SurveyMode::Exhaustive, 7).map_err(|e| e.to_string())?;
        ensure(r.total == total, || {
            format!("n={n}: {} permutations", r.total)
        })?;
        ensure(r.tight == tight, || {
            format!("n={n}: {} tight, pinned {tight}", r.tight)
        })?;
        ensure(r.histogram.values().sum::<usize>() == total, || {
            "histogram".into()
        })?;
        summary.push(format!(
            "n={n} tight {}/{} ({:.4})",
            r.tight, r.total, r.tight_fraction
        ));
    }
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(summary.join(", "))
}

fn is_skew(seq: &[i32]) -> bool {
    let m = seq.len();
    seq[0] == 0 && (1..m).all(|k| seq[k] == -seq[m - k])
}

fn structural() -> Outcome {
    let config = VerifyConfig::default();
    let results = [
        verify::check_block_interchange_moves(&config),
        verify::check_reversal_square(&config),
        verify::check_fatgraph_invariants(&acceptance_corpus()),
    ];
    for r in &results {
        ensure(r.passed(), || format!("{r:?}"))?;
    }
    let mut moves = 0;
    for n in 1..=4 {
        for a in enumerate_all(n).unwrap() {
            let inst = skew_symmetric(&a);
            for step in ReversalStep::all(n) {
                let h = reversal_h(step.i, step.j, n).map_err(|e| e.to_string())?;
                let q = block_interchange(inst.plane(), h).map_err(|e| e.to_string())?;
                ensure(is_skew(&q.s_sequence()), || {
                    format!("{a} {step} breaks skew symmetry")
                })?;
                moves += 1;
            }
        }
    }
    let fg = fatgraph_from_signed(&sp(&[-5, 1, -3, 2, 4]));
    let gamma = fg.alpha().compose(fg.beta()).map_err(|e| e.to_string())?;
    ensure(&gamma == fg.gamma(), || "gamma != alpha beta".into())?;
    ensure(fg.alpha().is_fixed_point_free_involution(), || {
        "alpha".into()
    })?;
    Ok(format!(
        "{} + {} + {} cases, {moves} skew-preserving moves",
        results[0].cases, results[1].cases, results[2].cases
    ))
}

fn main() {
    let corpus = acceptance_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 golden example", Box::new(golden_example)),
        ("2 two-row golden", Box::new(two_row_golden)),
        ("3 hat-construction golden", Box::new(hat_golden)),
        ("4 bound equivalence", Box::new(|| equivalence(&corpus))),
        (
            "5 n and s_n share a cycle",
            Box::new(|| conjecture(&corpus)),
        ),
        (
            "6 involution properties and matrix factorization",
            Box::new(involution_suite),
        ),
        ("7 soundness against the oracle", Box::new(soundness)),
        ("8 structural invariants", Box::new(structural)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
