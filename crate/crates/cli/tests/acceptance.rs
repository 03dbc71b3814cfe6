//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.
//!
//! The corpus is 500 seeded random instances for each n in 2..=7; each is
//! enumerated once by the brute-force oracle and shared by criteria 2-6.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use disjoint_sm::oracle::is_stable_bruteforce;
use disjoint_sm::scaling::{run_bench, time_slope};
use disjoint_sm::{
    disjoint_stable_matchings, dominates, enumerate_stable, fixed_pairs, gale_shapley, gen_random, gs_lists,
    max_disjoint_bruteforce, teo_sethuraman_transform, ChainJson, Instance, Matching, MatchingChain, MatchingJson,
    Side, Workload, WORK_BOUND_C,
};
use itertools::Itertools;

const CORPUS_SIZES: std::ops::RangeInclusive<usize> = 2..=7;
const CORPUS_PER_SIZE: u64 = 500;
const CORPUS_BUDGET: Duration = Duration::from_secs(120);

const FIXTURE_BUDGET: Duration = Duration::from_millis(1);

const TRANSFORM_MAX_STABLE: usize = 10;
const TRANSFORM_MAX_SUBSET: usize = 4;

const SCALING_SIZES: [usize; 4] = [500, 1000, 2000, 4000];
const SCALING_REPEATS: usize = 3;
const SLOPE_RANGE: (f64, f64) = (1.7, 2.3);
const SCALING_BUDGET: Duration = Duration::from_secs(60);

/// Outcome of one criterion.
struct Verdict {
    id: usize,
    name: &'static str,
    failures: Vec<String>,
    summary: String,
}

impl Verdict {
    fn new(id: usize, name: &'static str) -> Self {
        Verdict {
            id,
            name,
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn report(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        println!("{status} [{}] {}: {}", self.id, self.name, self.summary);
        for f in self.failures.iter().take(10) {
            println!("    {f}");
        }
        if self.failures.len() > 10 {
            println!("    ... {} more", self.failures.len() - 10);
        }
    }
}

struct CorpusEntry {
    label: String,
    inst: Instance,
    stable: Vec<Matching>,
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    workspace_root().join("fixtures").join(name)
}

fn corpus_seed(n: usize, i: u64) -> u64 {
    (n as u64) * 1_000_000 + i
}

fn build_corpus() -> Vec<CorpusEntry> {
    let mut corpus = Vec::new();
    for n in CORPUS_SIZES {
        for i in 0..CORPUS_PER_SIZE {
            let seed = corpus_seed(n, i);
            let inst = gen_random(n, seed).expect("valid size");
            let stable = enumerate_stable(&inst).expect("corpus sizes are enumerable");
            corpus.push(CorpusEntry {
                label: format!("n={n} seed={seed}"),
                inst,
                stable,
            });
        }
    }
    corpus
}

fn wives(m: &Matching) -> Vec<usize> {
    (0..m.n()).map(|i| m.partner_of_man(i).expect("perfect")).collect()
}

fn run_dsm(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dsm"))
        .args(args)
        .output()
        .expect("dsm runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn criterion_fixture() -> Verdict {
    let mut v = Verdict::new(1, "3x3 fixture reproduces M0, M1, Mz");
    let path = fixture("paper_3x3.txt");
    let path_str = path.to_str().expect("utf-8 path");
    let inst = Instance::parse(&std::fs::read_to_string(&path).expect("fixture")).expect("fixture parses");

    // 0-based wives of men 0, 1, 2
    let m0 = vec![0, 1, 2];
    let m1 = vec![1, 2, 0];
    let mz = vec![2, 0, 1];
    let to_json = |w: &Vec<usize>| Matching::from_wives(w).unwrap().to_json();

    let (code, out) = run_dsm(&["disjoint", path_str]);
    v.check(code == 0, || format!("disjoint exited {code}"));
    match serde_json::from_str::<ChainJson>(&out) {
        Ok(chain) => {
            let expected = vec![to_json(&m0), to_json(&m1), to_json(&mz)];
            v.check(chain.size == 3 && chain.chain == expected, || {
                format!("disjoint printed {}", out.trim())
            });
        }
        Err(e) => v.check(false, || format!("disjoint output is not a chain: {e}")),
    }
    for (side, expected) in [("men", &m0), ("women", &mz)] {
        let (code, out) = run_dsm(&["solve", "--side", side, path_str]);
        v.check(code == 0, || format!("solve --side {side} exited {code}"));
        let got = serde_json::from_str::<MatchingJson>(&out).ok();
        v.check(got.as_ref() == Some(&to_json(expected)), || {
            format!("solve --side {side} printed {}", out.trim())
        });
    }

    // in-process timing of all three computations; median of many runs
    let mut samples: Vec<Duration> = (0..201)
        .map(|_| {
            let start = Instant::now();
            let chain = disjoint_stable_matchings(&inst);
            let a = gale_shapley(&inst, Side::Men);
            let b = gale_shapley(&inst, Side::Women);
            let elapsed = start.elapsed();
            std::hint::black_box((chain, a, b));
            elapsed
        })
        .collect();
    samples.sort();
    let median = samples[samples.len() / 2];
    let chain = disjoint_stable_matchings(&inst);
    let got: Vec<_> = chain.matchings().iter().map(wives).collect();
    v.check(got == vec![m0.clone(), m1.clone(), mz.clone()], || {
        format!("library chain {got:?}")
    });
    v.check(median < FIXTURE_BUDGET, || {
        format!("median time {median:?} >= {FIXTURE_BUDGET:?}")
    });
    v.summary = format!("CLI and library output exact; median compute time {median:?} (< {FIXTURE_BUDGET:?})");
    v
}

/// `enumeration` is the time spent building the corpus; the budget covers
/// enumeration plus the comparison.
fn criterion_optimality(corpus: &[CorpusEntry], enumeration: Duration) -> Verdict {
    let mut v = Verdict::new(2, "chain length equals oracle maximum");
    let start = Instant::now();
    for e in corpus {
        let engine = disjoint_stable_matchings(&e.inst).len();
        let oracle = max_disjoint_bruteforce(&e.inst, &e.stable).expect("oracle").size;
        v.check(engine == oracle, || {
            format!("{}: engine {engine}, oracle {oracle}", e.label)
        });
    }
    let elapsed = enumeration + start.elapsed();
    v.check(elapsed < CORPUS_BUDGET, || format!("corpus took {elapsed:?}"));
    v.summary = format!(
        "{} instances ({} per n in {:?}), enumeration and comparison {:.1?} (< {:?})",
        corpus.len(),
        CORPUS_PER_SIZE,
        CORPUS_SIZES,
        elapsed,
        CORPUS_BUDGET
    );
    v
}

fn criterion_chain(corpus: &[CorpusEntry]) -> Verdict {
    let mut v = Verdict::new(
        3,
        "chain members stable, disjoint, dominance-ordered; endpoints GS-optimal",
    );
    let mut members = 0;
    for e in corpus {
        let chain = disjoint_stable_matchings(&e.inst);
        let ms = chain.matchings();
        members += ms.len();
        for (i, m) in ms.iter().enumerate() {
            v.check(is_stable_bruteforce(&e.inst, m), || {
                format!("{}: member {i} unstable", e.label)
            });
        }
        for ((i, a), (j, b)) in ms.iter().enumerate().tuple_combinations() {
            v.check(!a.intersects(b), || {
                format!("{}: members {i} and {j} share a pair", e.label)
            });
            v.check(dominates(&e.inst, a, b), || {
                format!("{}: member {i} does not dominate {j}", e.label)
            });
        }
        let m0 = gale_shapley(&e.inst, Side::Men);
        let mz = gale_shapley(&e.inst, Side::Women);
        v.check(chain.last() == Some(&mz), || {
            format!("{}: last member is not Mz", e.label)
        });
        if ms.len() >= 2 {
            v.check(chain.first() == Some(&m0), || {
                format!("{}: first member is not M0", e.label)
            });
        } else {
            // a single member means M0 itself meets Mz, so the chain is [Mz]
            v.check(m0.intersects(&mz), || {
                format!("{}: singleton chain but M0, Mz disjoint", e.label)
            });
        }
    }
    v.summary = format!("{members} chain members over {} instances", corpus.len());
    v
}

fn criterion_gs_lists(corpus: &[CorpusEntry]) -> Verdict {
    let mut v = Verdict::new(4, "GS-lists contain every stable matching; extremes at list ends");
    let mut checked = 0;
    for e in corpus {
        let lists = gs_lists(&e.inst);
        for m in &e.stable {
            checked += 1;
            v.check(m.pairs().all(|(a, b)| lists.contains(a, b)), || {
                format!("{}: stable matching {:?} not contained", e.label, wives(m))
            });
        }
        let m0 = gale_shapley(&e.inst, Side::Men);
        let mz = gale_shapley(&e.inst, Side::Women);
        for (man, woman) in m0.pairs() {
            v.check(
                lists.first(Side::Men, man) == Some(woman) && lists.last(Side::Women, woman) == Some(man),
                || format!("{}: M0 pair ({man}, {woman}) not at man-first/woman-last", e.label),
            );
        }
        for (man, woman) in mz.pairs() {
            v.check(
                lists.first(Side::Women, woman) == Some(man) && lists.last(Side::Men, man) == Some(woman),
                || format!("{}: Mz pair ({man}, {woman}) not at woman-first/man-last", e.label),
            );
        }
    }
    v.summary = format!("{checked} stable matchings over {} instances", corpus.len());
    v
}

fn criterion_fixed_pairs(corpus: &[CorpusEntry]) -> Verdict {
    let mut v = Verdict::new(5, "M0 and Mz common pairs lie in every stable matching");
    let mut pairs = 0;
    for e in corpus {
        let fixed = fixed_pairs(&gale_shapley(&e.inst, Side::Men), &gale_shapley(&e.inst, Side::Women));
        pairs += fixed.len();
        for m in &e.stable {
            v.check(fixed.iter().all(|&p| m.contains(p)), || {
                format!("{}: fixed pair missing from {:?}", e.label, wives(m))
            });
        }
    }
    v.summary = format!("{pairs} fixed pairs over {} instances", corpus.len());
    v
}

fn criterion_transform(corpus: &[CorpusEntry]) -> Verdict {
    let mut v = Verdict::new(
        6,
        "transform: stable outputs; disjoint inputs give a chain; order invariant",
    );
    let (mut instances, mut subsets, mut disjoint) = (0, 0, 0);
    for e in corpus.iter().filter(|e| e.stable.len() <= TRANSFORM_MAX_STABLE) {
        instances += 1;
        for size in 1..=TRANSFORM_MAX_SUBSET.min(e.stable.len()) {
            for subset in e.stable.iter().combinations(size) {
                subsets += 1;
                let input: Vec<Matching> = subset.iter().map(|&m| m.clone()).collect();
                let out = match teo_sethuraman_transform(&e.inst, &input) {
                    Ok(out) => out,
                    Err(err) => {
                        v.check(false, || format!("{}: transform failed: {err}", e.label));
                        continue;
                    }
                };
                v.check(out.len() == size, || {
                    format!("{}: {size} inputs, {} outputs", e.label, out.len())
                });
                for level in &out {
                    v.check(is_stable_bruteforce(&e.inst, level), || {
                        format!("{}: unstable output {:?}", e.label, wives(level))
                    });
                }
                for perm in input.iter().cloned().permutations(size).skip(1) {
                    let again = teo_sethuraman_transform(&e.inst, &perm).expect("same matchings");
                    v.check(again == out, || format!("{}: output depends on input order", e.label));
                }
                let pairwise_disjoint = input.iter().tuple_combinations().all(|(a, b)| !a.intersects(b));
                if pairwise_disjoint {
                    disjoint += 1;
                    let violations = MatchingChain::from_matchings(out).validate(&e.inst);
                    v.check(violations.is_empty(), || format!("{}: {violations:?}", e.label));
                }
            }
        }
    }
    v.summary = format!("{subsets} subsets ({disjoint} disjoint) over {instances} instances");
    v
}

fn criterion_scaling() -> Verdict {
    let mut v = Verdict::new(7, "work <= C n^2 and wall-time slope in range");
    let start = Instant::now();
    let mut notes = Vec::new();
    // small sizes exercise the bound where lower-order terms matter most
    let small: Vec<usize> = (1..=64).collect();
    for workload in [Workload::Cyclic, Workload::Random { base_seed: 0 }] {
        for r in run_bench(workload, &small, 1).expect("sizes >= 1") {
            v.check(r.within_work_bound(), || {
                format!(
                    "{} n={}: {} steps",
                    workload.name(),
                    r.n,
                    r.proposal_count + r.deletion_count
                )
            });
        }
        let records = run_bench(workload, &SCALING_SIZES, SCALING_REPEATS).expect("sizes >= 1");
        for r in &records {
            v.check(r.within_work_bound(), || {
                format!(
                    "{} n={}: {} steps",
                    workload.name(),
                    r.n,
                    r.proposal_count + r.deletion_count
                )
            });
        }
        let worst = records
            .iter()
            .map(|r| (r.proposal_count + r.deletion_count) as f64 / (r.n * r.n) as f64)
            .fold(0.0, f64::max);
        match time_slope(&records) {
            Some(slope) => {
                v.check((SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&slope), || {
                    format!("{} slope {slope:.3} outside {SLOPE_RANGE:?}", workload.name())
                });
                notes.push(format!(
                    "{} slope {slope:.3}, max steps/n^2 {worst:.2}",
                    workload.name()
                ));
            }
            None => v.check(false, || format!("{}: no slope", workload.name())),
        }
    }
    let elapsed = start.elapsed();
    v.check(elapsed < SCALING_BUDGET, || format!("scaling run took {elapsed:?}"));
    v.summary = format!(
        "C = {WORK_BOUND_C}; {}; slope range {SLOPE_RANGE:?}; {:.1?}",
        notes.join("; "),
        elapsed
    );
    v
}

fn criterion_round_trip() -> Verdict {
    let mut v = Verdict::new(8, "fixture round-trips and generator determinism");
    let mut files = 0;
    let mut entries: Vec<_> = std::fs::read_dir(workspace_root().join("fixtures"))
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    entries.sort();
    for path in &entries {
        files += 1;
        let text = std::fs::read_to_string(path).expect("readable fixture");
        match Instance::parse(&text) {
            Ok(inst) => {
                let out = inst.serialize();
                v.check(out == text, || {
                    format!("{}: serialize differs from file", path.display())
                });
                v.check(Instance::parse(&out).ok().as_ref() == Some(&inst), || {
                    format!("{}: reparse differs", path.display())
                });
            }
            Err(e) => v.check(false, || format!("{}: {e}", path.display())),
        }
    }
    v.check(files >= 3, || format!("only {files} fixtures found"));

    let mut draws = 0;
    for (n, seed) in [(1, 0), (3, 7), (10, 42), (100, 2024), (500, u64::MAX)] {
        draws += 1;
        let a = gen_random(n, seed).expect("n >= 1").serialize();
        let b = gen_random(n, seed).expect("n >= 1").serialize();
        v.check(a.as_bytes() == b.as_bytes(), || {
            format!("gen_random({n}, {seed}) not reproducible")
        });
    }
    let seed = "123456789";
    let (c1, a) = run_dsm(&["gen", "--kind", "random", "--n", "50", "--seed", seed]);
    let (c2, b) = run_dsm(&["gen", "--kind", "random", "--n", "50", "--seed", seed]);
    v.check(c1 == 0 && c2 == 0 && !a.is_empty() && a == b, || {
        "dsm gen output differs between runs".into()
    });
    v.check(a == gen_random(50, 123456789).unwrap().serialize(), || {
        "dsm gen differs from library".into()
    });
    v.summary = format!("{files} fixtures, {} generator draws byte-identical", draws + 1);
    v
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut verdicts = vec![criterion_fixture()];

    let enumeration_start = Instant::now();
    let corpus = build_corpus();
    let enumeration = enumeration_start.elapsed();
    verdicts.push(criterion_optimality(&corpus, enumeration));
    verdicts.push(criterion_chain(&corpus));
    verdicts.push(criterion_gs_lists(&corpus));
    verdicts.push(criterion_fixed_pairs(&corpus));
    verdicts.push(criterion_transform(&corpus));
    verdicts.push(criterion_scaling());
    verdicts.push(criterion_round_trip());

    for v in &verdicts {
        v.report();
    }
    let failed = verdicts.iter().filter(|v| !v.passed()).count();
    println!(
        "{} of {} criteria passed in {:.1?}",
        verdicts.len() - failed,
        verdicts.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
