use std::collections::BTreeSet;

use super::{ConfigurationMatch, Graph};

/// Calls `visit` once per simple cycle of length `3..=max_len` of the
/// underlying simple graph. Each cycle is reported as a vertex sequence
/// starting at its smallest vertex, with `seq[1] < seq[last]`. Returning
/// `false` from `visit` stops the enumeration.
pub fn enumerate_cycles(g: &Graph, max_len: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let adj: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v)).collect();
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(max_len);
    for s in 0..g.n() {
        path.clear();
        path.push(s);
        on_path[s] = true;
        let keep_going = extend(&adj, s, max_len, &mut path, &mut on_path, &mut visit);
        on_path[s] = false;
        if !keep_going {
            return;
        }
    }
}

fn extend(
    adj: &[Vec<usize>],
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let last = *path.last().expect("non-empty");
    for &w in &adj[last] {
        if w == s && path.len() >= 3 && path[1] < last && !visit(path) {
            return false;
        }
        if w > s && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            let ok = extend(adj, s, max_len, path, on_path, visit);
            on_path[w] = false;
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

/// The set of cycle lengths `k <= max_len` present in `g`. `max_len` is clamped
/// to `|V|`. Parallel edges count as 2-cycles.
pub fn cycle_spectrum(g: &Graph, max_len: usize) -> BTreeSet<usize> {
    let max_len = max_len.min(g.n());
    let mut out = BTreeSet::new();
    if max_len >= 2 && !g.is_simple() {
        out.insert(2);
    }
    if max_len < 3 {
        return out;
    }
    let full = max_len - 2 + usize::from(out.contains(&2));
    enumerate_cycles(g, max_len, |c| {
        out.insert(c.len());
        out.len() < full
    });
    out
}

/// Describes which vertices may occupy the odd (first, third, ...) and even
/// positions of an alternating cycle.
pub struct AlternationPattern<'a> {
    pub odd: &'a dyn Fn(usize) -> bool,
    pub even: &'a dyn Fn(usize) -> bool,
}

/// Even cycles `v1 v2 ... v2k` (k >= 2) whose odd-position vertices satisfy
/// `pattern.odd` and even-position vertices satisfy `pattern.even`. Each cycle
/// is reported once per admissible alternation, starting at its smallest
/// odd-position vertex. Stops after `limit` cycles when given.
pub fn find_alternating_cycles(g: &Graph, pattern: &AlternationPattern<'_>, limit: Option<usize>) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = g.vertices().map(|v| g.neighbors(v)).collect();
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::new();
    for s in 0..g.n() {
        if !(pattern.odd)(s) {
            continue;
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        alt_extend(&adj, pattern, s, &mut path, &mut on_path, &mut out, limit);
        on_path[s] = false;
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
    }
    out
}

fn alt_extend(
    adj: &[Vec<usize>],
    pattern: &AlternationPattern<'_>,
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    limit: Option<usize>,
) {
    let last = *path.last().expect("non-empty");
    let next_is_odd = path.len().is_multiple_of(2);
    for &w in &adj[last] {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if w == s {
            if path.len() >= 4 && next_is_odd && path[1] < last {
                out.push(path.clone());
            }
            continue;
        }
        if on_path[w] {
            continue;
        }
        let ok = if next_is_odd {
            w > s && (pattern.odd)(w)
        } else {
            (pattern.even)(w)
        };
        if ok {
            path.push(w);
            on_path[w] = true;
            alt_extend(adj, pattern, s, path, on_path, out, limit);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// An even cycle whose alternate vertices have degree 2.
pub fn find_2_alternating_cycle(g: &Graph) -> Option<ConfigurationMatch> {
    let odd = |v: usize| g.degree(v) == 2;
    let even = |_: usize| true;
    let pattern = AlternationPattern { odd: &odd, even: &even };
    find_alternating_cycles(g, &pattern, Some(1))
        .pop()
        .map(|c| ConfigurationMatch {
            config: "ALT2CYCLE".into(),
            vertex_map: c,
            face_map: Vec::new(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn count_cycles(g: &Graph, max_len: usize) -> usize {
        let mut k = 0;
        enumerate_cycles(g, max_len, |_| {
            k += 1;
            true
        });
        k
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(count_cycles(&complete(4), 4), 7);
        assert_eq!(count_cycles(&cycle(6), 6), 1);
        assert_eq!(count_cycles(&path(5), 6), 0);
    }

    #[test]
    fn spectra() {
        assert_eq!(cycle_spectrum(&cycle(6), 14), BTreeSet::from([6]));
        assert_eq!(cycle_spectrum(&complete(4), 4), BTreeSet::from([3, 4]));
        assert_eq!(cycle_spectrum(&petersen(), 6), BTreeSet::from([5, 6]));
        let multi = Graph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(cycle_spectrum(&multi, 3), BTreeSet::from([2]));
    }

    #[test]
    fn two_alternating() {
        let m = find_2_alternating_cycle(&cycle(4)).unwrap();
        assert_eq!(m.vertex_map.len(), 4);
        assert!(find_2_alternating_cycle(&complete(4)).is_none());
        assert!(find_2_alternating_cycle(&cycle(5)).is_none());
        assert!(find_2_alternating_cycle(&complete_bipartite(2, 3)).is_some());
        let mut c6 = cycle(6);
        c6.add_edge(0, 3).unwrap();
        assert!(find_2_alternating_cycle(&c6).is_none());
    }
}
