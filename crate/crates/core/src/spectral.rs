//! Adjacency matrices, strongly connected components, Perron eigenvalues and
//! the dimension formula `dim_H = log_3 β`.
//!
//! The spectral radius of a nonnegative matrix is the maximum over its
//! irreducible diagonal blocks, so every strongly connected component is
//! handled separately. A component is iterated as `A_c + I`, which is
//! primitive whenever `A_c` is irreducible, and `ρ(A_c + I) = ρ(A_c) + 1`.
//! The Collatz–Wielandt quotients `min_i (Bv)_i / v_i ≤ ρ(B) ≤ max_i (Bv)_i / v_i`
//! of a positive vector give a certified enclosure at every step.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automaton::PointedLabeledGraph;
use crate::error::{Error, Result};

/// Default tolerance on the Collatz–Wielandt gap.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest matrix accepted by [`char_poly`].
pub const CHAR_POLY_LIMIT: usize = 64;
/// Bisection width for [`largest_real_root`].
pub const ROOT_TOL: f64 = 1e-12;

const MAX_POWER_STEPS: usize = 5_000_000;
const ROOT_SCAN_CELLS: usize = 4096;

/// Sparse nonnegative integer matrix; `rows[i]` lists `(j, a_ij)` with `a_ij > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    rows: Vec<Vec<(usize, u64)>>,
}

impl AdjacencyMatrix {
    pub fn from_dense(dense: &[Vec<u64>]) -> Result<Self> {
        let n = dense.len();
        let mut rows = Vec::with_capacity(n);
        for (i, row) in dense.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .filter(|&(_, &a)| a > 0)
                    .map(|(j, &a)| (j, a))
                    .collect(),
            );
        }
        Ok(AdjacencyMatrix { rows })
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, u64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i]
            .iter()
            .find(|&&(c, _)| c == j)
            .map_or(0, |&(_, a)| a)
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.rows[i].iter().map(|&(_, a)| a).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let n = self.dimension();
        let mut out = vec![vec![0; n]; n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                out[i][j] = a;
            }
        }
        out
    }

    /// Principal submatrix on `vertices`, in the given order.
    pub fn submatrix(&self, vertices: &[usize]) -> AdjacencyMatrix {
        let mut local = vec![usize::MAX; self.dimension()];
        for (k, &v) in vertices.iter().enumerate() {
            local[v] = k;
        }
        let rows = vertices
            .iter()
            .map(|&v| {
                self.rows[v]
                    .iter()
                    .filter(|&&(j, _)| local[j] != usize::MAX)
                    .map(|&(j, a)| (local[j], a))
                    .collect()
            })
            .collect();
        AdjacencyMatrix { rows }
    }
}

/// Edge multiplicity matrix of the underlying directed graph.
pub fn adjacency(g: &PointedLabeledGraph) -> AdjacencyMatrix {
    let n = g.vertex_count();
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for e in g.edges() {
        let row = &mut rows[e.from];
        match row.iter_mut().find(|(j, _)| *j == e.to) {
            Some((_, a)) => *a += 1,
            None => row.push((e.to, 1)),
        }
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    AdjacencyMatrix { rows }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Components as sorted vertex lists, in the order Tarjan's algorithm
    /// completes them (sinks of the condensation first).
    pub components: Vec<Vec<usize>>,
    /// Component indices in topological order of the condensation.
    pub condensation_order: Vec<usize>,
    pub component_of: Vec<usize>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn scc(g: &PointedLabeledGraph) -> SccDecomposition {
    scc_matrix(&adjacency(g))
}

/// Iterative Tarjan.
pub fn scc_matrix(a: &AdjacencyMatrix) -> SccDecomposition {
    let n = a.dimension();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut components: Vec<Vec<usize>> = Vec::new();
    // (vertex, position in its row)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&(w, _)) = a.row(v).get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }

    let mut component_of = vec![0; n];
    for (c, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let condensation_order = (0..components.len()).rev().collect();
    SccDecomposition {
        components,
        condensation_order,
        component_of,
    }
}

/// Certified Perron eigenvalue enclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRadius {
    pub beta: f64,
    pub lower: f64,
    pub upper: f64,
    /// `max(upper − beta, beta − lower)`.
    pub error_bound: f64,
    /// True when every contributing component has constant row sums, so the
    /// value is exact.
    pub exact: bool,
    pub dominant_component: Vec<usize>,
}

struct ComponentRadius {
    lower: f64,
    upper: f64,
    exact: bool,
}

pub fn spectral_radius(a: &AdjacencyMatrix, tol: f64) -> Result<SpectralRadius> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let sccs = scc_matrix(a);
    let mut best: Option<(ComponentRadius, usize)> = None;
    let mut all_exact = true;
    let mut lower = 0.0f64;
    let mut upper = 0.0f64;
    for (c, comp) in sccs.components.iter().enumerate() {
        let sub = a.submatrix(comp);
        if sub.rows.iter().all(|r| r.is_empty()) {
            // acyclic: contributes 0
            continue;
        }
        let r = component_radius(&sub, tol)?;
        all_exact &= r.exact;
        lower = lower.max(r.lower);
        upper = upper.max(r.upper);
        let better = match &best {
            None => true,
            Some((b, _)) => r.lower + r.upper > b.lower + b.upper,
        };
        if better {
            best = Some((r, c));
        }
    }
    let (dominant, exact) = match &best {
        Some((r, c)) => (sccs.components[*c].clone(), all_exact && r.exact),
        None => (Vec::new(), true),
    };
    let beta = if exact { upper } else { 0.5 * (lower + upper) };
    Ok(SpectralRadius {
        beta,
        lower,
        upper,
        error_bound: (upper - beta).max(beta - lower),
        exact,
        dominant_component: dominant,
    })
}

/// Spectral radius of an irreducible nonnegative matrix.
fn component_radius(sub: &AdjacencyMatrix, tol: f64) -> Result<ComponentRadius> {
    let n = sub.dimension();
    let first = sub.row_sum(0);
    if (1..n).all(|i| sub.row_sum(i) == first) {
        let r = first as f64;
        return Ok(ComponentRadius {
            lower: r,
            upper: r,
            exact: true,
        });
    }
    let mut v = vec![1.0f64; n];
    let mut w = vec![0.0f64; n];
    let mut gap = f64::INFINITY;
    for _ in 0..MAX_POWER_STEPS {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut max = 0.0f64;
        for i in 0..n {
            let mut s = v[i];
            for &(j, a) in sub.row(i) {
                s += a as f64 * v[j];
            }
            w[i] = s;
            let q = s / v[i];
            lo = lo.min(q);
            hi = hi.max(q);
            max = max.max(s);
        }
        gap = hi - lo;
        if gap <= tol {
            return Ok(ComponentRadius {
                lower: lo - 1.0,
                upper: hi - 1.0,
                exact: false,
            });
        }
        let scale = 1.0 / max;
        for (vi, &wi) in v.iter_mut().zip(&w) {
            *vi = wi * scale;
        }
    }
    Err(Error::NotConverged {
        tol,
        iterations: MAX_POWER_STEPS,
        gap,
    })
}

/// Monic characteristic polynomial `det(λI − A)`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coefficients: Vec<BigInt>,
}

impl CharPoly {
    /// Coefficients lowest degree first; the leading one must be 1.
    pub fn from_coefficients(coefficients: Vec<BigInt>) -> Result<Self> {
        match coefficients.last() {
            Some(c) if c.is_one() => Ok(CharPoly { coefficients }),
            _ => Err(Error::InvalidGraph(
                "characteristic polynomial must be monic".into(),
            )),
        }
    }

    pub fn from_i64(coefficients: &[i64]) -> Result<Self> {
        Self::from_coefficients(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_poly(&self.coefficients_f64(), x)
    }

    pub fn coefficients_f64(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// `λ^k − λ^(k−1) − 1`.
    pub fn l_family(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        c[k - 1] -= 1;
        c[0] -= 1;
        CharPoly { coefficients: c }
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn char_poly(a: &AdjacencyMatrix) -> Result<CharPoly> {
    char_poly_with_limit(a, CHAR_POLY_LIMIT)
}

/// Faddeev–LeVerrier over exact integers; every division by `k` is exact.
pub fn char_poly_with_limit(a: &AdjacencyMatrix, limit: usize) -> Result<CharPoly> {
    let n = a.dimension();
    if n > limit {
        return Err(Error::LimitExceeded {
            what: format!("characteristic polynomial of a {n}x{n} matrix"),
            limit,
        });
    }
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // a_times_m = A · M_{k-1}, with M_0 = 0
    let mut a_times_m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut m = a_times_m;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        a_times_m = mul_sparse_dense(a, &m);
        let trace: BigInt = (0..n).map(|i| &a_times_m[i][i]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        c[n - k] = -q;
    }
    Ok(CharPoly { coefficients: c })
}

fn mul_sparse_dense(a: &AdjacencyMatrix, m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.dimension();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for &(l, w) in a.row(i) {
            let w = BigInt::from(w);
            for (o, x) in row.iter_mut().zip(&m[l]) {
                if !x.is_zero() {
                    *o += &w * x;
                }
            }
        }
    }
    out
}

/// Largest real root of a polynomial (coefficients lowest degree first) in
/// `[lo, hi]`, to within [`ROOT_TOL`].
///
/// The interval is scanned from `hi` downward for the first sign change, which
/// is then bisected. A root of even multiplicity, or two roots inside one scan
/// cell, gives no sign change and is skipped.
pub fn largest_real_root(coeffs: &[f64], lo: f64, hi: f64) -> Result<f64> {
    let p = |x: f64| eval_poly(coeffs, x);
    let phi = p(hi);
    if !(lo < hi) || phi.is_nan() {
        return Err(Error::NoBracketedRoot { lo, hi });
    }
    if phi == 0.0 {
        return Ok(hi);
    }
    let step = (hi - lo) / ROOT_SCAN_CELLS as f64;
    let mut right = hi;
    let mut p_right = phi;
    let mut bracket = None;
    for i in (0..ROOT_SCAN_CELLS).rev() {
        let left = if i == 0 { lo } else { lo + step * i as f64 };
        let p_left = p(left);
        if p_left == 0.0 {
            return Ok(left);
        }
        if p_left * p_right < 0.0 {
            bracket = Some((left, right));
            break;
        }
        right = left;
        p_right = p_left;
    }
    let (mut a, mut b) = bracket.ok_or(Error::NoBracketedRoot { lo, hi })?;
    let pb_sign = p(b).signum();
    while b - a > ROOT_TOL {
        let mid = 0.5 * (a + b);
        let pm = p(mid);
        if pm == 0.0 {
            return Ok(mid);
        }
        if pm.signum() == pb_sign {
            b = mid;
        } else {
            a = mid;
        }
        if mid == a && mid == b {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionMethod {
    PowerIteration,
    CharPolyRoot,
    ExactTrivial,
}

impl fmt::Display for DimensionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionMethod::PowerIteration => "power_iteration",
            DimensionMethod::CharPolyRoot => "char_poly_root",
            DimensionMethod::ExactTrivial => "exact_trivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionResult {
    pub beta: f64,
    pub dim: f64,
    pub method: DimensionMethod,
    /// Half-width of the certified enclosure of `beta`.
    pub beta_error: f64,
    /// Half-width of the propagated enclosure of `dim`.
    pub error_bound: f64,
    pub dominant_component: Vec<usize>,
}

pub fn log3(x: f64) -> f64 {
    x.ln() / 3f64.ln()
}

pub fn hausdorff_dim(g: &PointedLabeledGraph, tol: f64) -> Result<DimensionResult> {
    g.check_right_resolving()?;
    let r = spectral_radius(&adjacency(g), tol)?;
    if r.upper < 1.0 - tol {
        return Err(Error::EmptyPathSet);
    }
    let dim = log3(r.beta).max(0.0);
    let dim_lo = log3(r.lower.max(1.0));
    let dim_hi = log3(r.upper.max(1.0));
    Ok(DimensionResult {
        beta: r.beta,
        dim,
        method: if r.exact {
            DimensionMethod::ExactTrivial
        } else {
            DimensionMethod::PowerIteration
        },
        beta_error: r.error_bound,
        error_bound: (dim_hi - dim).max(dim - dim_lo),
        dominant_component: r.dominant_component,
    })
}

/// Dimension from the largest real roots of the characteristic polynomials of
/// the strongly connected components. Each component must fit [`CHAR_POLY_LIMIT`].
pub fn hausdorff_dim_char_poly(g: &PointedLabeledGraph) -> Result<DimensionResult> {
    g.check_right_resolving()?;
    let a = adjacency(g);
    let sccs = scc_matrix(&a);
    let mut best: Option<(f64, usize)> = None;
    for (c, comp) in sccs.components.iter().enumerate() {
        let sub = a.submatrix(comp);
        if sub.rows.iter().all(|r| r.is_empty()) {
            continue;
        }
        let p = char_poly(&sub)?;
        let max_row = (0..sub.dimension())
            .map(|i| sub.row_sum(i))
            .max()
            .unwrap_or(0);
        // the Perron root of an irreducible block is simple and at most the max row sum
        let root = largest_real_root(&p.coefficients_f64(), 0.0, max_row as f64 + 0.5)?;
        if best.is_none_or(|(b, _)| root > b) {
            best = Some((root, c));
        }
    }
    let (beta, c) = best.ok_or(Error::EmptyPathSet)?;
    Ok(DimensionResult {
        beta,
        dim: log3(beta).max(0.0),
        method: DimensionMethod::CharPolyRoot,
        beta_error: ROOT_TOL,
        error_bound: ROOT_TOL / (beta * 3f64.ln()),
        dominant_component: sccs.components[c].clone(),
    })
}

/// Exact test for `β > 1`. The Perron root of an irreducible 0-1 graph is 1
/// exactly when the component is a single cycle, so `β > 1` iff some component
/// carries more internal edges than it has vertices.
pub fn perron_exceeds_one(g: &PointedLabeledGraph) -> bool {
    let a = adjacency(g);
    let sccs = scc_matrix(&a);
    let mut internal = vec![0u64; sccs.len()];
    for i in 0..a.dimension() {
        let c = sccs.component_of[i];
        for &(j, w) in a.row(i) {
            if sccs.component_of[j] == c {
                internal[c] += w;
            }
        }
    }
    sccs.components
        .iter()
        .zip(&internal)
        .any(|(comp, &e)| e > comp.len() as u64)
}

/// `log_3` of an exact nonnegative integer (−∞ for zero).
pub fn log3_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().expect("fits in f64");
    (top.ln() + shift as f64 * std::f64::consts::LN_2) / 3f64.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{build_multi, build_single, PointedLabeledGraph};
    use crate::ternary::Multiplier;

    fn g(v: u64) -> PointedLabeledGraph {
        build_single(&Multiplier::from(v)).unwrap()
    }

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn perron_above_one_is_exact() {
        use crate::automaton::build_single;
        use crate::ternary::Multiplier;
        for m in 1..400u64 {
            let g = build_single(&Multiplier::from(m)).unwrap();
            let d = hausdorff_dim(&g, 1e-12).unwrap();
            assert_eq!(perron_exceeds_one(&g), d.beta > 1.0 + 1e-9, "M={m}");
        }
    }

    #[test]
    fn adjacency_of_seven() {
        let a = adjacency(&g(7));
        assert_eq!(
            a.to_dense(),
            vec![
                vec![1, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 1, 1],
                vec![1, 0, 0, 0],
            ]
        );
        assert_eq!(
            adjacency(&PointedLabeledGraph::full_shift()).to_dense(),
            vec![vec![2]]
        );
    }

    #[test]
    fn adjacency_of_seven_nineteen() {
        let gm = build_multi(&[Multiplier::from(7), Multiplier::from(19)]).unwrap();
        assert_eq!(
            adjacency(&gm).to_dense(),
            vec![
                vec![1, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
                vec![1, 0, 0, 0, 0, 0],
            ]
        );
    }

    #[test]
    fn radius_examples() {
        let r = spectral_radius(&adjacency(&g(7)), 1e-12).unwrap();
        assert!((r.beta - PHI).abs() < 1e-6);
        assert!(r.lower <= PHI + 1e-12 && PHI <= r.upper + 1e-12);
        let r = spectral_radius(&adjacency(&g(19)), 1e-12).unwrap();
        assert!((r.beta - 1.465_571).abs() < 1e-6);
        let r = spectral_radius(&AdjacencyMatrix::from_dense(&[vec![2]]).unwrap(), 1e-9).unwrap();
        assert_eq!(r.beta, 2.0);
        assert!(r.exact);
        assert!(spectral_radius(&adjacency(&g(7)), 0.0).is_err());
        assert!(spectral_radius(&adjacency(&g(7)), -1.0).is_err());
    }

    #[test]
    fn acyclic_matrix_has_zero_radius() {
        let a = AdjacencyMatrix::from_dense(&[vec![0, 1], vec![0, 0]]).unwrap();
        let r = spectral_radius(&a, 1e-9).unwrap();
        assert_eq!(r.beta, 0.0);
    }

    #[test]
    fn periodic_component_converges() {
        // 2-periodic irreducible matrix with spectral radius sqrt(2)
        let a = AdjacencyMatrix::from_dense(&[vec![0, 2], vec![1, 0]]).unwrap();
        let r = spectral_radius(&a, 1e-12).unwrap();
        assert!((r.beta - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn scc_of_forty_three() {
        let gr = g(43);
        let d = scc(&gr);
        assert_eq!(d.len(), 4);
        let mut sets: Vec<Vec<String>> = d
            .components
            .iter()
            .map(|c| {
                let mut s: Vec<String> = c.iter().map(|&v| gr.vertices()[v].ternary()).collect();
                s.sort();
                s
            })
            .collect();
        sets.sort();
        let mut expected: Vec<Vec<String>> = vec![
            vec!["0"],
            vec!["112"],
            vec!["2", "120", "201", "20"],
            vec!["12", "121"],
        ]
        .into_iter()
        .map(|c| {
            let mut s: Vec<String> = c.into_iter().map(String::from).collect();
            s.sort();
            s
        })
        .collect();
        expected.sort();
        assert_eq!(sets, expected);
        // start component comes first topologically
        let first = d.condensation_order[0];
        assert_eq!(d.components[first], vec![gr.start()]);
    }

    #[test]
    fn scc_single_loop() {
        let d = scc(&PointedLabeledGraph::trivial(1));
        assert_eq!(d.components, vec![vec![0]]);
    }

    #[test]
    fn radius_is_max_over_components() {
        for v in [19u64, 43] {
            let a = adjacency(&g(v));
            let whole = spectral_radius(&a, 1e-12).unwrap().beta;
            let d = scc_matrix(&a);
            let best = d
                .components
                .iter()
                .map(|c| spectral_radius(&a.submatrix(c), 1e-12).unwrap().beta)
                .fold(0.0, f64::max);
            assert!((whole - best).abs() < 1e-10, "M={v}");
        }
    }

    #[test]
    fn char_poly_examples() {
        let gm = build_multi(&[Multiplier::from(7), Multiplier::from(19)]).unwrap();
        let p = char_poly(&adjacency(&gm)).unwrap();
        assert_eq!(p, CharPoly::from_i64(&[-1, 0, 0, 0, 1, -2, 1]).unwrap());
        assert_eq!(p.to_string(), "λ^6 - 2λ^5 + λ^4 - 1");
        let p = char_poly(&AdjacencyMatrix::from_dense(&[vec![1]]).unwrap()).unwrap();
        assert_eq!(p, CharPoly::from_i64(&[-1, 1]).unwrap());
        assert_eq!(p.to_string(), "λ - 1");
    }

    #[test]
    fn char_poly_matches_cofactor_expansion() {
        // independent route: Laplace expansion of det(λI − A) at integer points
        fn det(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum()
        }
        for v in [7u64, 19, 13, 28, 43] {
            let a = adjacency(&g(v));
            let dense = a.to_dense();
            let p = char_poly(&a).unwrap();
            for x in -3i64..=3 {
                let m: Vec<Vec<i64>> = (0..dense.len())
                    .map(|i| {
                        (0..dense.len())
                            .map(|j| (if i == j { x } else { 0 }) - dense[i][j] as i64)
                            .collect()
                    })
                    .collect();
                let value: BigInt = p
                    .coefficients()
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * x + c);
                assert_eq!(value, BigInt::from(det(&m)), "M={v} x={x}");
            }
        }
    }

    #[test]
    fn char_poly_refuses_large() {
        let a = adjacency(&g(256));
        assert!(a.dimension() > 4);
        assert!(matches!(
            char_poly_with_limit(&a, 4),
            Err(Error::LimitExceeded { limit: 4, .. })
        ));
    }

    #[test]
    fn root_examples() {
        let r = largest_real_root(&[-1.0, -1.0, 1.0], 1.0, 2.0).unwrap();
        assert!((r - PHI).abs() < 1e-11);
        let r = largest_real_root(&[-1.0, 0.0, -1.0, 1.0], 1.0, 2.0).unwrap();
        assert!((r - 1.465_571_231_876_768).abs() < 1e-11);
        let r = largest_real_root(&[-2.0, 1.0], 1.0, 3.0).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        assert!(matches!(
            largest_real_root(&[1.0, 0.0, 1.0], -1.0, 1.0),
            Err(Error::NoBracketedRoot { .. })
        ));
        // picks the largest of several roots: (x-1)(x-2)(x-3)
        let r = largest_real_root(&[-6.0, 11.0, -6.0, 1.0], 0.0, 3.5).unwrap();
        assert!((r - 3.0).abs() < 1e-11);
        // both endpoints positive: (x-1)(x-2)
        let r = largest_real_root(&[2.0, -3.0, 1.0], 0.0, 3.0).unwrap();
        assert!((r - 2.0).abs() < 1e-11);
    }

    #[test]
    fn dims() {
        let d = hausdorff_dim(&g(7), DEFAULT_TOL).unwrap();
        assert!((d.dim - 0.438_018).abs() < 1e-5);
        assert_eq!(d.method, DimensionMethod::PowerIteration);
        let d = hausdorff_dim(&PointedLabeledGraph::trivial(1), DEFAULT_TOL).unwrap();
        assert_eq!(d.dim, 0.0);
        assert_eq!(d.beta, 1.0);
        assert_eq!(d.method, DimensionMethod::ExactTrivial);
        let d = hausdorff_dim(&g(1024), DEFAULT_TOL).unwrap();
        assert!((d.dim - 0.215_201).abs() < 1e-5, "{}", d.dim);
        let c = hausdorff_dim_char_poly(&g(19)).unwrap();
        assert!((c.dim - 0.347_934).abs() < 1e-6);
        let c = hausdorff_dim_char_poly(&g(43)).unwrap();
        assert!((c.beta - 1.0).abs() < 1e-9);
    }

    #[test]
    fn log3_of_big_integers() {
        assert!((log3_biguint(&BigUint::from(81u8)) - 4.0).abs() < 1e-12);
        let x = BigUint::one() << 400u32;
        assert!((log3_biguint(&x) - 400.0 * 2f64.ln() / 3f64.ln()).abs() < 1e-9);
        assert_eq!(log3_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }
}
