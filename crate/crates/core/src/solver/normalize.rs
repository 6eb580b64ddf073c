use super::{ListAssignment, ShiftAssignment, SolverError};
use crate::graph::Graph;
use crate::group::AbelianGroup;

/// An equivalent shift that vanishes on the breadth-first spanning forest of
/// `g`, together with the translation `t` (per vertex, zero at component
/// roots). `(L, f)` is colourable iff `(L - t, f')` is, via `c' = c - t`.
pub fn normalize_shift(
    g: &Graph,
    a: &AbelianGroup,
    f: &ShiftAssignment,
) -> Result<(ShiftAssignment, Vec<u8>), SolverError> {
    f.validate(g, a)?;
    let (order, parent) = g.bfs_forest();
    let mut t = vec![0u8; g.n()];
    for &v in &order {
        if let Some(pos) = parent[v] {
            let e = &g.edges()[pos];
            t[v] = if e.v == v {
                a.sub_idx(t[e.u], f.get(pos))
            } else {
                a.add_idx(f.get(pos), t[e.v])
            };
        }
    }
    let shifted = g
        .edges()
        .iter()
        .enumerate()
        .map(|(pos, e)| a.add_idx(a.sub_idx(f.get(pos), t[e.u]), t[e.v]))
        .collect();
    Ok((ShiftAssignment::new(shifted), t))
}

/// `L'(v) = L(v) - t(v)`.
pub fn translate_lists(a: &AbelianGroup, l: &ListAssignment, t: &[u8]) -> ListAssignment {
    ListAssignment::new(
        l.as_slice()
            .iter()
            .zip(t)
            .map(|(&s, &tv)| a.translate(s, a.neg_idx(tv)))
            .collect(),
    )
}
