//! Closed-form expectations for the families `L_k = (1^k)_3` and
//! `N_k = (10^{k−1}1)_3`, and the two-state presentation of
//!
//! ```text
//! Y = { Σ a_j 3^j : a_{2i} ∈ {0, 1}, a_{2i+1} = 0 }.
//! ```
//!
//! `C(1, L_k)` has a `k`-vertex presentation whose characteristic polynomial
//! is `λ^k − λ^{k−1} − 1`; `C(1, N_k)` has `2^k` vertices and Perron
//! eigenvalue the golden ratio for every `k`.

use crate::automaton::{build_multi, build_single, Edge, PointedLabeledGraph, VertexLabel};
use crate::error::{Error, Result};
use crate::spectral::{hausdorff_dim, largest_real_root, log3, CharPoly, DEFAULT_TOL};
use crate::ternary::{family_value, normalize, FamilyId, FamilyKind, Multiplier};

/// Largest `k` accepted for the `N_k` family (`2^k` vertices).
pub const N_FAMILY_CAP: u32 = 20;

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyExpectation {
    pub family: FamilyId,
    pub expected_beta: f64,
    pub expected_dim: f64,
    pub expected_vertices: usize,
    pub expected_scc_count: usize,
    pub defining_poly: Option<CharPoly>,
}

pub fn family_multiplier(kind: FamilyKind, k: u32) -> Result<Multiplier> {
    normalize(&family_value(FamilyId::new(kind, k)?))
}

/// Perron root `β_k` of `λ^k − λ^{k−1} − 1`.
pub fn l_beta(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroFamilyIndex);
    }
    let p = CharPoly::l_family(k as usize);
    largest_real_root(&p.coefficients_f64(), 1.0, 2.0)
}

pub fn expect_l(k: u32) -> Result<FamilyExpectation> {
    let family = FamilyId::new(FamilyKind::L, k)?;
    let beta = l_beta(k)?;
    Ok(FamilyExpectation {
        family,
        expected_beta: beta,
        expected_dim: log3(beta),
        expected_vertices: k as usize,
        expected_scc_count: 1,
        defining_poly: Some(CharPoly::l_family(k as usize)),
    })
}

fn check_n_cap(k: u32) -> Result<()> {
    if k > N_FAMILY_CAP {
        return Err(Error::LimitExceeded {
            what: format!("N_k family index {k}"),
            limit: N_FAMILY_CAP as usize,
        });
    }
    Ok(())
}

pub fn expect_n(k: u32) -> Result<FamilyExpectation> {
    let family = FamilyId::new(FamilyKind::N, k)?;
    check_n_cap(k)?;
    let phi = golden_ratio();
    Ok(FamilyExpectation {
        family,
        expected_beta: phi,
        expected_dim: log3(phi),
        expected_vertices: 1 << k,
        expected_scc_count: 1,
        defining_poly: None,
    })
}

/// Positive eigenvector for `φ`: `v_1 = (φ, 1)`, `v_j = (φ·v_{j−1}, v_{j−1})`.
pub fn n_eigenvector(k: u32) -> Result<Vec<f64>> {
    FamilyId::new(FamilyKind::N, k)?;
    check_n_cap(k)?;
    let phi = golden_ratio();
    let mut v = vec![phi, 1.0];
    for _ in 1..k {
        let mut next: Vec<f64> = v.iter().map(|x| phi * x).collect();
        next.extend_from_slice(&v);
        v = next;
    }
    Ok(v)
}

/// Orders the vertices of the `C(1, N_k)` presentation so that vertex `I_i`
/// (1-based, `i ≤ 2^{k−1}`) has its 0-successor at position `2i − 1` and its
/// 1-successor at position `2i`. Returns graph vertex ids in that order.
pub fn n_recursive_order(g: &PointedLabeledGraph, k: u32) -> Result<Vec<usize>> {
    let size = 1usize << k;
    if g.vertex_count() != size {
        return Err(Error::InvalidGraph(format!(
            "expected {size} vertices, found {}",
            g.vertex_count()
        )));
    }
    let missing =
        |v: usize, a: u8| Error::InvalidGraph(format!("vertex {v} lacks an out-edge labeled {a}"));
    let mut order = vec![usize::MAX; size];
    order[0] = g.start();
    order[1] = g
        .successor(g.start(), 1)
        .ok_or_else(|| missing(g.start(), 1))?;
    for i in 2..=size / 2 {
        let v = order[i - 1];
        order[2 * i - 2] = g.successor(v, 0).ok_or_else(|| missing(v, 0))?;
        order[2 * i - 1] = g.successor(v, 1).ok_or_else(|| missing(v, 1))?;
    }
    let mut seen = vec![false; size];
    for &v in &order {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidGraph(format!("vertex {v} ordered twice")));
        }
    }
    Ok(order)
}

/// `‖A v − φ v‖_∞ / ‖v‖_∞` for the `C(1, N_k)` presentation, with `v` placed on
/// the vertices in recursive order.
pub fn n_eigen_residual(k: u32) -> Result<f64> {
    let v = n_eigenvector(k)?;
    let g = build_single(&family_multiplier(FamilyKind::N, k)?)?;
    let order = n_recursive_order(&g, k)?;
    let mut x = vec![0.0; g.vertex_count()];
    for (pos, &vertex) in order.iter().enumerate() {
        x[vertex] = v[pos];
    }
    let mut ax = vec![0.0; g.vertex_count()];
    for e in g.edges() {
        ax[e.from] += x[e.to];
    }
    let phi = golden_ratio();
    let residual = ax
        .iter()
        .zip(&x)
        .map(|(a, b)| (a - phi * b).abs())
        .fold(0.0, f64::max);
    let norm = x.iter().copied().fold(0.0, f64::max);
    Ok(residual / norm)
}

/// `1 + (ln k)/k − 2(ln ln k)/k ≤ β_k ≤ 1 + (ln k)/k`, stated for `k ≥ 6`.
pub fn check_l_bounds(k: u32) -> Result<bool> {
    if k < 6 {
        return Err(Error::OutOfRange(format!(
            "the β_k bounds are stated for k ≥ 6, got {k}"
        )));
    }
    let beta = l_beta(k)?;
    let kf = f64::from(k);
    let upper = 1.0 + kf.ln() / kf;
    let lower = upper - 2.0 * kf.ln().ln() / kf;
    Ok(lower <= beta && beta <= upper)
}

/// Presentation of `Y`: free digit at even positions, 0 at odd positions.
pub fn y_graph() -> PointedLabeledGraph {
    PointedLabeledGraph::new(
        vec![VertexLabel::new(vec![0]), VertexLabel::new(vec![1])],
        vec![
            Edge {
                from: 0,
                to: 1,
                label: 0,
            },
            Edge {
                from: 0,
                to: 1,
                label: 1,
            },
            Edge {
                from: 1,
                to: 0,
                label: 0,
            },
        ],
        0,
        "Y: even digits free, odd digits 0",
    )
    .expect("well-formed")
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionComparison {
    pub holds: bool,
    pub product_dim: f64,
    pub reference_dim: f64,
}

/// Compares `dim C(1, N_1, …, N_n)` with `dim C(1, L_{n+1})` to within 1e-6.
pub fn check_th413_equality(n: u32) -> Result<DimensionComparison> {
    if !(1..=5).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "the N_1..N_n equality check runs for 1 ≤ n ≤ 5, got {n}"
        )));
    }
    let ms = (1..=n)
        .map(|k| family_multiplier(FamilyKind::N, k))
        .collect::<Result<Vec<_>>>()?;
    let product_dim = hausdorff_dim(&build_multi(&ms)?, DEFAULT_TOL)?.dim;
    let reference = build_single(&family_multiplier(FamilyKind::L, n + 1)?)?;
    let reference_dim = hausdorff_dim(&reference, DEFAULT_TOL)?.dim;
    Ok(DimensionComparison {
        holds: (product_dim - reference_dim).abs() <= 1e-6,
        product_dim,
        reference_dim,
    })
}

/// `dim C(1, N_k, …, N_{k+n−1})`.
pub fn n_window_dim(k: u32, n: u32) -> Result<f64> {
    let ms = (k..k + n)
        .map(|j| family_multiplier(FamilyKind::N, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(hausdorff_dim(&build_multi(&ms)?, DEFAULT_TOL)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::count_paths;
    use crate::spectral::{adjacency, scc};
    use num_bigint::BigUint;

    #[test]
    fn l_expectations() {
        let e = expect_l(3).unwrap();
        assert!((e.expected_dim - 0.347_934).abs() < 1e-6);
        assert_eq!(e.expected_vertices, 3);
        let e = expect_l(1).unwrap();
        assert!((e.expected_beta - 2.0).abs() < 1e-12);
        assert!((e.expected_dim - 0.630_929).abs() < 1e-6);
        assert!((expect_l(9).unwrap().expected_dim - 0.175_877).abs() < 1e-6);
        assert_eq!(
            expect_l(3).unwrap().defining_poly.unwrap().to_string(),
            "λ^3 - λ^2 - 1"
        );
    }

    #[test]
    fn n_expectations() {
        assert!((expect_n(1).unwrap().expected_dim - 0.438_018).abs() < 1e-6);
        assert_eq!(expect_n(3).unwrap().expected_vertices, 8);
        assert_eq!(expect_n(12).unwrap().expected_vertices, 4096);
        assert!(matches!(expect_n(21), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn eigenvectors() {
        let phi = golden_ratio();
        assert_eq!(n_eigenvector(1).unwrap(), vec![phi, 1.0]);
        let v = n_eigenvector(2).unwrap();
        let expect = [phi * phi, phi, phi, 1.0];
        for (a, b) in v.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        // A_1 = [[1,1],[1,0]] maps (φ,1) to φ·(φ,1)
        let v = n_eigenvector(1).unwrap();
        assert!((v[0] + v[1] - phi * v[0]).abs() < 1e-12);
        assert!((v[0] - phi * v[1]).abs() < 1e-12);
        for k in 1..=8 {
            assert!(n_eigen_residual(k).unwrap() <= 1e-9, "k={k}");
        }
    }

    #[test]
    fn recursive_order_reproduces_block_matrix() {
        // For k = 3 the ordered adjacency matrix is the displayed 8x8 matrix.
        let g = build_single(&family_multiplier(FamilyKind::N, 3).unwrap()).unwrap();
        let order = n_recursive_order(&g, 3).unwrap();
        let a = adjacency(&g);
        let ordered: Vec<Vec<u64>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| a.get(i, j)).collect())
            .collect();
        let expected = vec![
            vec![1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 1],
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
        ];
        assert_eq!(ordered, expected);
    }

    #[test]
    fn l_bounds() {
        assert!(check_l_bounds(6).unwrap());
        assert!(check_l_bounds(50).unwrap());
        assert!(check_l_bounds(5).is_err());
    }

    #[test]
    fn y() {
        let y = y_graph();
        let d = hausdorff_dim(&y, 1e-12).unwrap();
        assert!((d.dim - 0.315_464).abs() < 1e-6);
        assert_eq!(adjacency(&y).to_dense(), vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(count_paths(&y, 4).unwrap(), BigUint::from(4u8));
        assert_eq!(scc(&y).len(), 1);
    }

    #[test]
    fn th413_small() {
        for n in 1..=3 {
            let c = check_th413_equality(n).unwrap();
            assert!(c.holds, "n={n}: {c:?}");
        }
        assert!(check_th413_equality(0).is_err());
        assert!(check_th413_equality(6).is_err());
    }
}
