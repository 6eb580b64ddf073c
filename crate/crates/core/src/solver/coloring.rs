use super::{forbidden, incidence, ListAssignment, ShiftAssignment, SolverError};
use crate::graph::Graph;
use crate::group::{AbelianGroup, ElementSet};

/// An (A, L, f)-colouring of `g` (colours as element indices), or `None` if
/// none exists.
pub fn find_coloring(
    g: &Graph,
    a: &AbelianGroup,
    l: &ListAssignment,
    f: &ShiftAssignment,
) -> Result<Option<Vec<u8>>, SolverError> {
    l.validate(g, a)?;
    f.validate(g, a)?;
    Ok(solve(a, &incidence(g), l.as_slice(), f.as_slice()))
}

pub fn is_coloring(g: &Graph, a: &AbelianGroup, l: &ListAssignment, f: &ShiftAssignment, c: &[u8]) -> bool {
    c.len() == g.n()
        && g.vertices().all(|v| l.get(v).contains(c[v]))
        && g.edges()
            .iter()
            .enumerate()
            .all(|(pos, e)| a.sub_idx(c[e.u], c[e.v]) != f.get(pos))
}

/// Colour the uncoloured vertices of `order` one at a time, each with the
/// smallest list element not forbidden by already coloured neighbours.
/// Returns `false` (leaving `partial` partly extended) if some vertex has no
/// available colour.
pub fn extend_greedily(
    g: &Graph,
    a: &AbelianGroup,
    l: &ListAssignment,
    f: &ShiftAssignment,
    partial: &mut [Option<u8>],
    order: &[usize],
) -> bool {
    for &v in order {
        if partial[v].is_some() {
            continue;
        }
        let mut avail = l.get(v);
        for &(w, pos) in g.incidences(v) {
            if let Some(x) = partial[w] {
                avail.remove(forbidden(a, x, f.get(pos), w < v));
            }
        }
        match avail.iter().next() {
            Some(x) => partial[v] = Some(x),
            None => return false,
        }
    }
    true
}

/// Backtracking with minimum-remaining-values ordering (ties to the smallest
/// vertex) and forward checking.
pub(crate) fn solve(
    a: &AbelianGroup,
    inc: &[Vec<(usize, usize, bool)>],
    lists: &[ElementSet],
    shifts: &[u8],
) -> Option<Vec<u8>> {
    let n = lists.len();
    let mut color = vec![u8::MAX; n];
    let avail: Vec<u64> = lists.iter().map(|s| s.0).collect();
    if avail.contains(&0) {
        return None;
    }
    if descend(a, inc, shifts, &avail, &mut color, n) {
        Some(color)
    } else {
        None
    }
}

fn descend(
    a: &AbelianGroup,
    inc: &[Vec<(usize, usize, bool)>],
    shifts: &[u8],
    avail: &[u64],
    color: &mut [u8],
    left: usize,
) -> bool {
    if left == 0 {
        return true;
    }
    let v = (0..avail.len())
        .filter(|&v| color[v] == u8::MAX)
        .min_by_key(|&v| avail[v].count_ones())
        .expect("uncoloured vertex");
    let mut bits = avail[v];
    let mut next = avail.to_vec();
    while bits != 0 {
        let x = bits.trailing_zeros() as u8;
        bits &= bits - 1;
        next.copy_from_slice(avail);
        let mut dead = false;
        for &(w, pos, lower) in &inc[v] {
            if color[w] == u8::MAX {
                next[w] &= !(1u64 << forbidden(a, x, shifts[pos], lower));
                if next[w] == 0 {
                    dead = true;
                    break;
                }
            }
        }
        if dead {
            continue;
        }
        color[v] = x;
        if descend(a, inc, shifts, &next, color, left - 1) {
            return true;
        }
        color[v] = u8::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn z(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn single_edge() {
        let g = complete(2);
        let a = z("Z2");
        let l = ListAssignment::uniform(2, ElementSet::singleton(0));
        let c = find_coloring(&g, &a, &l, &ShiftAssignment::new(vec![1])).unwrap();
        assert_eq!(c, Some(vec![0, 0]));
        assert_eq!(find_coloring(&g, &a, &l, &ShiftAssignment::new(vec![0])).unwrap(), None);
    }

    #[test]
    fn twisted_four_cycle() {
        let g = cycle(4);
        let a = z("Z2");
        let l = ListAssignment::uniform(4, ElementSet::full(2));
        let mut f = ShiftAssignment::zero(&g);
        f.set(0, 1);
        assert_eq!(find_coloring(&g, &a, &l, &f).unwrap(), None);
        let ok = find_coloring(&g, &a, &l, &ShiftAssignment::zero(&g)).unwrap().unwrap();
        assert!(is_coloring(&g, &a, &l, &ShiftAssignment::zero(&g), &ok));
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let g = complete(3);
        let a = z("Z3");
        let l = ListAssignment::uniform(2, ElementSet::full(3));
        assert!(find_coloring(&g, &a, &l, &ShiftAssignment::zero(&g)).is_err());
        let l = ListAssignment::uniform(3, ElementSet::full(4));
        assert!(find_coloring(&g, &a, &l, &ShiftAssignment::zero(&g)).is_err());
        let l = ListAssignment::uniform(3, ElementSet::full(3));
        assert!(find_coloring(&g, &a, &l, &ShiftAssignment::new(vec![0, 3, 0])).is_err());
    }
}
