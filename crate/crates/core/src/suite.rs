//! Numbered regression checks against the published examples and tables,
//! grouped into named suites.

use std::fmt::{self, Display};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{
    build_multi, build_multi_untrimmed, build_single, count_paths, label_product, BuildOptions,
    PointedLabeledGraph,
};
use crate::error::{Error, Result};
use crate::families::{
    check_l_bounds, check_th413_equality, family_multiplier, golden_ratio, l_beta,
    n_eigen_residual, y_graph,
};
use crate::langops::{is_subset, pointed_isomorphic};
use crate::oracle::{brute_count, brute_count_extendable};
use crate::spectral::{
    adjacency, char_poly, hausdorff_dim, log3, perron_exceeds_one, scc, CharPoly, DEFAULT_TOL,
};
use crate::ternary::{ternary_u64, FamilyKind, Multiplier};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Families,
    Oracle,
    Containment,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["tables", "families", "oracle", "containment", "all"];

    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Tables => vec![1, 2, 3, 4, 5, 7, 14],
            Suite::Families => vec![6, 8, 9, 11, 13],
            Suite::Oracle => vec![12],
            Suite::Containment => vec![10],
            Suite::All => (1..=CRITERION_COUNT).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tables" => Ok(Suite::Tables),
            "families" => Ok(Suite::Families),
            "oracle" => Ok(Suite::Oracle),
            "containment" => Ok(Suite::Containment),
            "all" => Ok(Suite::All),
            _ => Err(format!(
                "unknown suite `{s}` (expected one of {})",
                Suite::NAMES.join(", ")
            )),
        }
    }
}

pub const CRITERION_COUNT: u8 = 14;

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub passed: bool,
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub lines: Vec<CheckLine>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }
}

impl Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({} checks, {:.3} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.lines.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Default)]
struct Checker {
    lines: Vec<CheckLine>,
}

impl Checker {
    fn record(&mut self, passed: bool, text: String) -> bool {
        self.lines.push(CheckLine { passed, text });
        passed
    }

    fn close(&mut self, what: impl Display, expected: f64, actual: f64, tol: f64) -> bool {
        let ok = (expected - actual).abs() <= tol;
        self.record(
            ok,
            format!("{what}: expected {expected:.9} ± {tol:e}, got {actual:.9}"),
        )
    }

    fn equal<T: PartialEq + fmt::Debug>(
        &mut self,
        what: impl Display,
        expected: T,
        actual: T,
    ) -> bool {
        let ok = expected == actual;
        self.record(ok, format!("{what}: expected {expected:?}, got {actual:?}"))
    }

    fn holds(&mut self, what: impl Display, ok: bool) -> bool {
        self.record(
            ok,
            format!("{what}: {}", if ok { "holds" } else { "fails" }),
        )
    }

    fn within(&mut self, what: impl Display, elapsed: Duration, limit: Duration) -> bool {
        let ok = elapsed < limit;
        self.record(
            ok,
            format!(
                "{what}: {:.3} s, limit {:.3} s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            ),
        )
    }
}

fn m(v: u64) -> Multiplier {
    Multiplier::from(v)
}

fn ms(vs: &[u64]) -> Vec<Multiplier> {
    vs.iter().copied().map(Multiplier::from).collect()
}

fn dim(g: &PointedLabeledGraph) -> Result<f64> {
    Ok(hausdorff_dim(g, DEFAULT_TOL)?.dim)
}

fn scc_sets(g: &PointedLabeledGraph) -> Vec<Vec<String>> {
    let mut sets: Vec<Vec<String>> = scc(g)
        .components
        .iter()
        .map(|c| {
            let mut s: Vec<String> = c.iter().map(|&v| g.vertices()[v].ternary()).collect();
            s.sort();
            s
        })
        .collect();
    sets.sort();
    sets
}

const PHI_DIM: f64 = 0.438_018;

fn c1(ck: &mut Checker) -> Result<()> {
    let t = Instant::now();
    let g = build_single(&m(7))?;
    let d = hausdorff_dim(&g, DEFAULT_TOL)?;
    let elapsed = t.elapsed();
    ck.close("dim C(1,7)", PHI_DIM, d.dim, 1e-5);
    ck.close("beta C(1,7)", golden_ratio(), d.beta, 1e-6);
    ck.equal("vertices", 4, g.vertex_count());
    ck.within("runtime", elapsed, Duration::from_millis(100));
    Ok(())
}

fn c2(ck: &mut Checker) -> Result<()> {
    let g = build_single(&m(19))?;
    let d = hausdorff_dim(&g, DEFAULT_TOL)?;
    ck.close("dim C(1,19)", 0.347_934, d.dim, 1e-5);
    ck.close("beta C(1,19)", 1.465_571, d.beta, 1e-5);
    ck.equal("vertices", 8, g.vertex_count());
    let sets = scc_sets(&g);
    ck.equal("strongly connected components", 2, sets.len());
    let a = adjacency(&g);
    let comps = scc(&g);
    let nontrivial = comps
        .components
        .iter()
        .filter(|c| c.len() > 1 || a.get(c[0], c[0]) > 0)
        .count();
    ck.equal("nontrivial components", 2, nontrivial);
    ck.equal(
        "component vertex sets",
        vec![vec!["0", "1", "10", "100", "20", "22"], vec!["2", "21"]],
        sets.iter()
            .map(|s| s.iter().map(String::as_str).collect())
            .collect::<Vec<Vec<_>>>(),
    );
    Ok(())
}

fn c3(ck: &mut Checker) -> Result<()> {
    let g = build_multi(&ms(&[7, 19]))?;
    ck.equal("vertices", 6, g.vertex_count());
    let p = char_poly(&adjacency(&g))?;
    ck.equal(
        "characteristic polynomial",
        CharPoly::from_i64(&[-1, 0, 0, 0, 1, -2, 1])?.to_string(),
        p.to_string(),
    );
    ck.close("dim C(1,7,19)", 0.347_934, dim(&g)?, 1e-5);
    Ok(())
}

fn c4(ck: &mut Checker) -> Result<()> {
    let g = build_single(&m(43))?;
    let expected: Vec<Vec<String>> = {
        let mut e: Vec<Vec<String>> = [
            vec!["0"],
            vec!["112"],
            vec!["2", "120", "201", "20"],
            vec!["12", "121"],
        ]
        .iter()
        .map(|s| {
            let mut v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            v.sort();
            v
        })
        .collect();
        e.sort();
        e
    };
    ck.equal("component vertex sets", expected, scc_sets(&g));
    let d = hausdorff_dim(&g, DEFAULT_TOL)?;
    ck.close("beta C(1,43)", 1.0, d.beta, 1e-9);
    ck.equal("dim C(1,43)", 0.0, d.dim);
    Ok(())
}

const TABLE_L: [(f64, f64); 9] = [
    (2.000_000, 0.630_929),
    (1.618_033, 0.438_018),
    (1.465_571, 0.347_934),
    (1.380_278, 0.293_358),
    (1.324_718, 0.255_960),
    (1.285_199, 0.228_392),
    (1.255_423, 0.207_052),
    (1.232_055, 0.189_948),
    (1.213_150, 0.175_877),
];

fn c5(ck: &mut Checker) -> Result<()> {
    let t = Instant::now();
    for (i, &(table_beta, table_dim)) in TABLE_L.iter().enumerate() {
        let k = i as u32 + 1;
        let g = build_single(&family_multiplier(FamilyKind::L, k)?)?;
        let d = hausdorff_dim(&g, DEFAULT_TOL)?;
        ck.close(format!("beta C(1,L_{k})"), table_beta, d.beta, 1e-5);
        ck.close(format!("dim C(1,L_{k})"), table_dim, d.dim, 1e-5);
        ck.equal(format!("vertices C(1,L_{k})"), k as usize, g.vertex_count());
        ck.equal(
            format!("char poly C(1,L_{k})"),
            CharPoly::l_family(k as usize).to_string(),
            char_poly(&adjacency(&g))?.to_string(),
        );
    }
    ck.within("runtime", t.elapsed(), Duration::from_secs(1));
    Ok(())
}

fn c6(ck: &mut Checker) -> Result<()> {
    let t = Instant::now();
    let target = log3(golden_ratio());
    for k in 1..=12 {
        let g = build_single(&family_multiplier(FamilyKind::N, k)?)?;
        ck.equal(
            format!("vertices C(1,N_{k})"),
            1usize << k,
            g.vertex_count(),
        );
        ck.equal(format!("components C(1,N_{k})"), 1, scc(&g).len());
        ck.close(format!("dim C(1,N_{k})"), target, dim(&g)?, 1e-8);
        let r = n_eigen_residual(k)?;
        ck.record(
            r <= 1e-9,
            format!("eigenvector residual N_{k}: {r:e} ≤ 1e-9"),
        );
    }
    ck.within("runtime", t.elapsed(), Duration::from_secs(30));
    Ok(())
}

const TABLE_POWERS: [(u32, f64); 7] = [
    (2, 0.438_018),
    (4, 0.255_960),
    (6, 0.278_002),
    (8, 0.287_416),
    (10, 0.215_201),
    (12, 0.244_002),
    (14, 0.267_112),
];

fn pow2(e: u32) -> Multiplier {
    m(1u64 << e)
}

fn c7(ck: &mut Checker) -> Result<()> {
    let t = Instant::now();
    for &(e, table_dim) in &TABLE_POWERS {
        let g = build_single(&pow2(e))?;
        ck.close(format!("dim C(1,2^{e})"), table_dim, dim(&g)?, 1e-5);
    }
    let g = build_multi(&[pow2(2), pow2(8)])?;
    ck.close("dim C(1,2^2,2^8)", 0.228_392, dim(&g)?, 1e-5);
    let pairs = [
        (2, 4),
        (2, 6),
        (2, 10),
        (4, 6),
        (4, 8),
        (4, 10),
        (6, 8),
        (6, 10),
        (8, 10),
    ];
    let triples = [(2, 8, 12), (2, 8, 14), (2, 8, 16)];
    let zero_cases = pairs
        .iter()
        .map(|&(a, b)| vec![a, b])
        .chain(triples.iter().map(|&(a, b, c)| vec![a, b, c]));
    for es in zero_cases {
        let g = build_multi(&es.iter().map(|&e| pow2(e)).collect::<Vec<_>>())?;
        let d = hausdorff_dim(&g, DEFAULT_TOL)?;
        let name = es
            .iter()
            .map(|e| format!("2^{e}"))
            .collect::<Vec<_>>()
            .join(",");
        ck.close(format!("beta C(1,{name})"), 1.0, d.beta, 1e-9);
    }
    ck.within("runtime", t.elapsed(), Duration::from_secs(120));
    Ok(())
}

fn c8(ck: &mut Checker) -> Result<()> {
    let ls = (1..=8)
        .map(|k| build_single(&family_multiplier(FamilyKind::L, k)?))
        .collect::<Result<Vec<_>>>()?;
    for k1 in 1..=8 {
        for k2 in k1 + 1..=8 {
            let p = label_product(&ls[k1 - 1], &ls[k2 - 1])?;
            ck.holds(
                format!("C(1,L_{k1}) ⋆ C(1,L_{k2}) ≅ C(1,L_{k2})"),
                pointed_isomorphic(&p, &ls[k2 - 1])?,
            );
        }
    }
    Ok(())
}

fn c9(ck: &mut Checker) -> Result<()> {
    for n in 1..=5 {
        let c = check_th413_equality(n)?;
        ck.close(
            format!("dim C(1,N_1..N_{n}) vs dim C(1,L_{})", n + 1),
            c.reference_dim,
            c.product_dim,
            1e-6,
        );
    }
    Ok(())
}

fn c10(ck: &mut Checker) -> Result<()> {
    let y = y_graph();
    ck.close("dim Y", 0.315_464, dim(&y)?, 1e-6);
    for k in 0..=6 {
        let n = 2 * k + 1;
        let g = build_single(&family_multiplier(FamilyKind::N, n)?)?;
        let r = is_subset(&y, &g)?;
        let what = match &r.witness {
            Some(w) => format!("Y ⊂ C(1,N_{n}) (witness {})", w.to_msf_string()),
            None => format!("Y ⊂ C(1,N_{n})"),
        };
        ck.holds(what, r.holds);
    }
    Ok(())
}

fn c11(ck: &mut Checker) -> Result<()> {
    let failing: Vec<u32> = (6..=200)
        .map(|k| check_l_bounds(k).map(|ok| (k, ok)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&(_, ok)| !ok)
        .map(|(k, _)| k)
        .collect();
    ck.equal(
        "k in 6..=200 violating the β_k bounds",
        Vec::<u32>::new(),
        failing,
    );
    Ok(())
}

/// Seed for the random multiplier pairs of criterion 12.
pub const ORACLE_SEED: u64 = 0x3ad1c;

fn random_pairs(count: usize, max: u64, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<u64> = (1..=max).filter(|v| v % 3 == 1).collect();
    (0..count)
        .map(|_| {
            (
                pool[rng.gen_range(0..pool.len())],
                pool[rng.gen_range(0..pool.len())],
            )
        })
        .collect()
}

fn c12(ck: &mut Checker) -> Result<()> {
    ck.equal("brute_count([7], 3)", 5, brute_count(&ms(&[7]), 3)?);
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for v in (1..=100u64).filter(|v| v % 3 == 1) {
        let g = build_single(&m(v))?;
        for n in 0..=12 {
            let brute = brute_count(&ms(&[v]), n)?;
            let paths = count_paths(&g, n)?;
            compared += 1;
            if paths != brute.into() {
                mismatches.push(format!("M={v} n={n}: paths {paths}, brute {brute}"));
            }
        }
    }
    for (a, b) in random_pairs(20, 50, ORACLE_SEED) {
        let pair = ms(&[a, b]);
        let trimmed = build_multi(&pair)?;
        let untrimmed = build_multi_untrimmed(&pair, &BuildOptions::default())?;
        for n in 0..=10 {
            let ext = brute_count_extendable(&pair, n)?;
            let paths = count_paths(&trimmed, n)?;
            let all = brute_count(&pair, n)?;
            let all_paths = count_paths(&untrimmed, n)?;
            compared += 2;
            if paths != ext.into() || all_paths != all.into() {
                mismatches.push(format!(
                    "({a},{b}) n={n}: trimmed {paths} vs extendable {ext}, untrimmed {all_paths} vs brute {all}"
                ));
            }
        }
    }
    ck.record(
        mismatches.is_empty(),
        format!("{compared} oracle comparisons, mismatches: {mismatches:?}"),
    );
    Ok(())
}

/// Normalized values `≤ max` whose ternary digits are all 0 or 1, excluding 1.
fn binary_digit_multipliers(max: u64) -> Vec<u64> {
    let mut vs: Vec<u64> = (2..=max)
        .filter(|&v| v % 3 != 0 && ternary_u64(v).iter().all(|&d| d < 2))
        .collect();
    vs.dedup();
    vs
}

fn c13(ck: &mut Checker) -> Result<()> {
    let mut residue_two_bad = Vec::new();
    for v in 1..=1000u64 {
        let mv = m(v);
        if mv.residue() != 2 {
            continue;
        }
        let g = build_single(&mv)?;
        let d = hausdorff_dim(&g, DEFAULT_TOL)?;
        if g.vertex_count() != 1 || d.dim != 0.0 {
            residue_two_bad.push(v);
        }
    }
    ck.equal(
        "residue-2 multipliers ≤ 1000 with dim ≠ 0 or > 1 vertex",
        Vec::<u64>::new(),
        residue_two_bad,
    );

    // Multipliers divisible by 3 normalize into this list, and 1 or repeated
    // entries reduce a tuple to a shorter one.
    let vs = binary_digit_multipliers(1000);
    let singles = vs
        .iter()
        .map(|&v| build_single(&m(v)))
        .collect::<Result<Vec<_>>>()?;
    let mut zero = Vec::new();
    let mut tuples = 1u64;
    if !perron_exceeds_one(&PointedLabeledGraph::full_shift()) {
        zero.push(vec![1]);
    }
    for (i, gi) in singles.iter().enumerate() {
        tuples += 1;
        if !perron_exceeds_one(gi) {
            zero.push(vec![vs[i]]);
        }
        for j in i + 1..singles.len() {
            let gij = label_product(gi, &singles[j])?;
            tuples += 1;
            if !perron_exceeds_one(&gij) {
                zero.push(vec![vs[i], vs[j]]);
            }
            for l in j + 1..singles.len() {
                let g = label_product(&gij, &singles[l])?;
                tuples += 1;
                if !perron_exceeds_one(&g) {
                    zero.push(vec![vs[i], vs[j], vs[l]]);
                }
            }
        }
    }
    ck.equal(
        format!(
            "{tuples} tuples over {} digit-{{0,1}} multipliers with dim 0",
            vs.len()
        ),
        Vec::<Vec<u64>>::new(),
        zero,
    );
    // the exact β > 1 test agrees with the numerical dimension on the pairs
    let mut disagreements = Vec::new();
    for (i, gi) in singles.iter().enumerate().step_by(7) {
        for gj in singles.iter().skip(i + 1).step_by(5) {
            let g = label_product(gi, gj)?;
            let d = hausdorff_dim(&g, DEFAULT_TOL)?;
            if (d.dim > 0.0) != perron_exceeds_one(&g) {
                disagreements.push(g.provenance().to_string());
            }
        }
    }
    ck.equal(
        "numerical dim > 0 disagreeing with exact test",
        Vec::<String>::new(),
        disagreements,
    );
    Ok(())
}

fn c14(ck: &mut Checker) -> Result<()> {
    let phi_dim = log3(golden_ratio());
    ck.close(
        "dim C(1,2^2)",
        phi_dim,
        dim(&build_single(&pow2(2))?)?,
        1e-6,
    );
    let d = dim(&build_multi(&[pow2(2), pow2(8)])?)?;
    ck.close("dim C(1,2^2,2^8)", 0.228_392, d, 1e-5);
    let root_dim = log3(l_beta(6)?);
    ck.close(
        "log_3 of the root of λ^6 − λ^5 − 1",
        0.228_392,
        root_dim,
        1e-5,
    );
    ck.close("dim C(1,2^2,2^8) vs that root", root_dim, d, 1e-5);
    Ok(())
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "C(1,7): golden-ratio dimension, 4 vertices",
        2 => "C(1,19): dimension, 8 vertices, two components",
        3 => "C(1,7,19): 6 vertices, characteristic polynomial",
        4 => "C(1,43): four components, dimension 0",
        5 => "C(1,L_k), k ≤ 9: table values and polynomials",
        6 => "C(1,N_k), k ≤ 12: 2^k vertices, golden-ratio eigenvector",
        7 => "powers of 2: single, pair and triple intersections",
        8 => "L_k1 ⋆ L_k2 isomorphic to L_k2",
        9 => "dim C(1,N_1..N_n) = dim C(1,L_{n+1}), n ≤ 5",
        10 => "Y inside C(1,N_{2k+1}), k ≤ 6",
        11 => "β_k bounds for 6 ≤ k ≤ 200",
        12 => "automaton counts agree with brute force",
        13 => "residue 2 gives {0}; digit-{0,1} tuples give dim > 0",
        14 => "C(1,4) and C(1,4,256) witnesses",
        _ => "unknown criterion",
    }
}

pub fn run_criterion(id: u8) -> Result<CheckOutcome> {
    let f: fn(&mut Checker) -> Result<()> = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        10 => c10,
        11 => c11,
        12 => c12,
        13 => c13,
        14 => c14,
        _ => {
            return Err(Error::OutOfRange(format!(
                "criteria are numbered 1..={CRITERION_COUNT}, got {id}"
            )))
        }
    };
    let mut ck = Checker::default();
    let t = Instant::now();
    if let Err(e) = f(&mut ck) {
        ck.record(false, format!("error: {e}"));
    }
    let elapsed = t.elapsed();
    Ok(CheckOutcome {
        id,
        title: title(id),
        passed: !ck.lines.is_empty() && ck.lines.iter().all(|l| l.passed),
        lines: ck.lines,
        elapsed,
    })
}

pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    suite
        .criteria()
        .into_iter()
        .map(|id| run_criterion(id).expect("suite ids are in range"))
        .collect()
}
