//! Language comparisons between pointed right-resolving presentations.
//!
//! Both graphs must be right-resolving and essential. Then every finite path
//! from the start extends to an infinite one, and containment of path sets is
//! the same as containment of their prefix languages, which a breadth-first
//! walk over pairs of states decides.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::automaton::PointedLabeledGraph;
use crate::error::Result;
use crate::ternary::DigitWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonResult {
    pub holds: bool,
    /// A shortest word of the left language missing from the right one.
    pub witness: Option<DigitWord>,
}

impl ComparisonResult {
    fn holds() -> Self {
        ComparisonResult {
            holds: true,
            witness: None,
        }
    }
}

fn check_inputs(g: &PointedLabeledGraph) -> Result<()> {
    g.check_right_resolving()?;
    g.check_essential()
}

pub fn is_subset(g1: &PointedLabeledGraph, g2: &PointedLabeledGraph) -> Result<ComparisonResult> {
    check_inputs(g1)?;
    check_inputs(g2)?;
    let start = (g1.start(), g2.start());
    let mut parent: HashMap<(usize, usize), Option<((usize, usize), u8)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (u1, u2)) = queue.pop_front() {
        for &(label, t1) in g1.out_edges(u1) {
            match g2.successor(u2, label) {
                None => {
                    let mut digits = vec![label];
                    let mut cur = pair;
                    while let Some(&Some((prev, l))) = parent.get(&cur) {
                        digits.push(l);
                        cur = prev;
                    }
                    digits.reverse();
                    return Ok(ComparisonResult {
                        holds: false,
                        witness: Some(DigitWord::new(digits)?),
                    });
                }
                Some(t2) => {
                    let next = (t1, t2);
                    if let Entry::Vacant(slot) = parent.entry(next) {
                        slot.insert(Some((pair, label)));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(ComparisonResult::holds())
}

/// Mutual containment; the witness, if any, comes from the first failing direction.
pub fn is_equal(g1: &PointedLabeledGraph, g2: &PointedLabeledGraph) -> Result<ComparisonResult> {
    let forward = is_subset(g1, g2)?;
    if !forward.holds {
        return Ok(forward);
    }
    is_subset(g2, g1)
}

/// Label-preserving bijection of vertices sending start to start.
///
/// In a right-resolving graph the candidate map is forced by following equal
/// labels from the start pair, so a single traversal decides it. Carry labels
/// play no part.
pub fn pointed_isomorphic(g1: &PointedLabeledGraph, g2: &PointedLabeledGraph) -> Result<bool> {
    check_inputs(g1)?;
    check_inputs(g2)?;
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let n = g1.vertex_count();
    let mut forward = vec![usize::MAX; n];
    let mut backward = vec![usize::MAX; n];
    forward[g1.start()] = g2.start();
    backward[g2.start()] = g1.start();
    let mut queue = VecDeque::from([g1.start()]);
    let mut mapped = 1;
    while let Some(u) = queue.pop_front() {
        let v = forward[u];
        let (o1, o2) = (g1.out_edges(u), g2.out_edges(v));
        if o1.len() != o2.len() {
            return Ok(false);
        }
        for (&(l1, t1), &(l2, t2)) in o1.iter().zip(o2) {
            if l1 != l2 {
                return Ok(false);
            }
            match (forward[t1], backward[t2]) {
                (usize::MAX, usize::MAX) => {
                    forward[t1] = t2;
                    backward[t2] = t1;
                    mapped += 1;
                    queue.push_back(t1);
                }
                (f, b) if f == t2 && b == t1 => {}
                _ => return Ok(false),
            }
        }
    }
    // Unreached vertices cannot be matched by a pointed map.
    Ok(mapped == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{build_multi, build_single, label_product, Edge, VertexLabel};
    use crate::error::Error;
    use crate::ternary::{family_value, normalize, FamilyId, FamilyKind, Multiplier};

    fn g(v: u64) -> PointedLabeledGraph {
        build_single(&Multiplier::from(v)).unwrap()
    }

    fn l(k: u32) -> PointedLabeledGraph {
        let v = family_value(FamilyId::new(FamilyKind::L, k).unwrap());
        build_single(&normalize(&v).unwrap()).unwrap()
    }

    #[test]
    fn full_shift_containment() {
        let fs = PointedLabeledGraph::full_shift();
        assert!(is_subset(&g(7), &fs).unwrap().holds);
        let r = is_subset(&fs, &g(7)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().digits(), &[1, 0]);
    }

    #[test]
    fn equality() {
        let a = build_multi(&[Multiplier::from(7), Multiplier::from(19)]).unwrap();
        assert_eq!(is_equal(&a, &a).unwrap(), ComparisonResult::holds());
        let r = is_equal(&g(7), &g(19)).unwrap();
        assert!(!r.holds);
        assert!(r.witness.is_some());
        let fs = PointedLabeledGraph::full_shift();
        assert!(
            is_equal(&label_product(&g(19), &fs).unwrap(), &g(19))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn isomorphism() {
        let p = label_product(&l(2), &l(3)).unwrap();
        assert!(pointed_isomorphic(&p, &l(3)).unwrap());
        assert!(pointed_isomorphic(&g(19), &g(19)).unwrap());
        assert!(!pointed_isomorphic(&g(7), &g(19)).unwrap());
        // same language, different presentations
        let two = PointedLabeledGraph::new(
            vec![VertexLabel::new(vec![0]), VertexLabel::new(vec![1])],
            vec![
                Edge {
                    from: 0,
                    to: 0,
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
                Edge {
                    from: 1,
                    to: 1,
                    label: 1,
                },
            ],
            0,
            "two-state full shift",
        )
        .unwrap();
        let fs = PointedLabeledGraph::full_shift();
        assert!(is_equal(&two, &fs).unwrap().holds);
        assert!(!pointed_isomorphic(&two, &fs).unwrap());
    }

    #[test]
    fn rejects_unsuitable_inputs() {
        let sink = PointedLabeledGraph::new(
            vec![VertexLabel::new(vec![0]), VertexLabel::new(vec![1])],
            vec![
                Edge {
                    from: 0,
                    to: 0,
                    label: 0,
                },
                Edge {
                    from: 0,
                    to: 1,
                    label: 1,
                },
            ],
            0,
            "sink",
        )
        .unwrap();
        assert_eq!(is_subset(&sink, &g(7)), Err(Error::NotEssential(1)));
        let nd = PointedLabeledGraph::new(
            vec![VertexLabel::new(vec![0])],
            vec![
                Edge {
                    from: 0,
                    to: 0,
                    label: 0,
                },
                Edge {
                    from: 0,
                    to: 0,
                    label: 0,
                },
            ],
            0,
            "nondeterministic",
        )
        .unwrap();
        assert!(matches!(
            is_subset(&g(7), &nd),
            Err(Error::NotRightResolving { .. })
        ));
        assert!(pointed_isomorphic(&nd, &nd).is_err());
    }
}
