use std::sync::OnceLock;

use super::{Bound, ConfigSpec, DegreeConstraint::*};
use crate::graph::named::{cycle, g1, path};
use crate::graph::Graph;

fn edge_sum(name: &str, bound: Bound) -> ConfigSpec {
    ConfigSpec::pattern(name, "an edge whose endpoint degrees sum to at most the bound", path(1)).with_sum(0, 1, bound)
}

fn alt4(name: &str, high: super::DegreeConstraint) -> ConfigSpec {
    ConfigSpec::pattern(
        name,
        "a 4-cycle alternating between 3-vertices and high vertices",
        cycle(4),
    )
    .with_degree(0, Exact(3))
    .with_degree(2, Exact(3))
    .with_degree(1, high)
    .with_degree(3, high)
}

fn pattern(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("catalog patterns are valid")
}

fn build() -> Vec<ConfigSpec> {
    vec![
        edge_sum("EDGE_SUM(7)", Bound::constant(7)),
        edge_sum("EDGE_SUM(8)", Bound::constant(8)),
        edge_sum("EDGE_SUM(9)", Bound::constant(9)),
        edge_sum("EDGE_SUM(13)", Bound::constant(13)),
        edge_sum("EDGE_SUM(Δ+2)", Bound::max_with_delta(0, 2)),
        edge_sum("EDGE_SUM(max{8,Δ+2})", Bound::max_with_delta(8, 2)),
        edge_sum("EDGE_SUM(max{9,Δ+2})", Bound::max_with_delta(9, 2)),
        // v = 0, f1 = [0 1 2], f2 = [0 3 4]
        ConfigSpec::pattern(
            "G1",
            "a 4-vertex on two 3-faces whose other corners have degree at least 4, at most one above 4",
            g1(),
        )
        .with_degree(0, Exact(4))
        .with_degree(1, AtLeast(4))
        .with_degree(2, AtLeast(4))
        .with_degree(3, AtLeast(4))
        .with_degree(4, AtLeast(4))
        .with_few_above(&[1, 2, 3, 4], 4, 1)
        .with_face(&[0, 1, 2], None)
        .with_face(&[0, 3, 4], None),
        ConfigSpec::pattern(
            "CHARG1",
            "an edge with min degree at most 2 and degree sum at most 5",
            path(1),
        )
        .with_min(0, 1, 2)
        .with_sum(0, 1, Bound::constant(5)),
        ConfigSpec::pattern(
            "CHARG2",
            "a 4-vertex on 3-faces [v v1 v2] and [v v3 v4] with d(v1) = d(v4) = 2",
            g1(),
        )
        .with_degree(0, Exact(4))
        .with_degree(1, Exact(2))
        .with_degree(4, Exact(2))
        .with_face(&[0, 1, 2], None)
        .with_face(&[0, 3, 4], None),
        ConfigSpec::pattern("EDGE_35", "an edge xy with d(x) = 3 and d(y) at most 5", path(1))
            .with_degree(0, Exact(3))
            .with_degree(1, AtMost(5)),
        alt4("ALT4CYCLE(5)", Exact(5)),
        alt4("ALT4CYCLE(6)", Exact(6)),
        alt4("ALT4CYCLE(Δ)", MaxDegree),
        // x = 0, x1..x6 = 1..6
        ConfigSpec::pattern(
            "G2",
            "a 6-vertex x on 3-faces [x x1 x2], [x x2 x3], [x x4 x5], [x x5 x6]",
            pattern(
                7,
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (0, 5),
                    (0, 6),
                    (1, 2),
                    (2, 3),
                    (4, 5),
                    (5, 6),
                ],
            ),
        )
        .with_degree(0, Exact(6))
        .with_degree(1, Exact(3))
        .with_degree(5, Exact(3))
        .with_degree(3, Exact(4))
        .with_degree(2, Exact(6))
        .with_degree(4, Exact(6))
        .with_degree(6, Exact(6))
        .with_face(&[0, 1, 2], None)
        .with_face(&[0, 2, 3], None)
        .with_face(&[0, 4, 5], None)
        .with_face(&[0, 5, 6], None),
        // u x y z = 0 1 2 3, x1 x2 = 4 5, y1 y2 y3 = 6 7 8. Only the listed
        // faces and degrees are constrained; the x-side and y-side extra
        // vertices may coincide.
        ConfigSpec::pattern(
            "G3",
            "a cluster on {u, x, y, z} with (3,6,6)-faces around x and y",
            pattern(
                9,
                &[
                    (0, 1),
                    (0, 2),
                    (1, 2),
                    (0, 3),
                    (1, 3),
                    (2, 3),
                    (1, 4),
                    (1, 5),
                    (4, 5),
                    (2, 6),
                    (2, 7),
                    (2, 8),
                    (6, 7),
                    (7, 8),
                ],
            ),
        )
        .with_degree(0, Exact(3))
        .with_degree(1, Exact(6))
        .with_degree(2, Exact(6))
        .with_degree(3, Exact(6))
        .with_degree(4, Exact(3))
        .with_degree(7, Exact(3))
        .with_face(&[0, 1, 2], Some(&[3, 6, 6]))
        .with_face(&[0, 1, 3], Some(&[3, 6, 6]))
        .with_face(&[2, 0, 3], Some(&[3, 6, 6]))
        .with_face(&[1, 4, 5], Some(&[3, 6, 6]))
        .with_face(&[2, 6, 7], Some(&[3, 6, 6]))
        .with_face(&[2, 7, 8], Some(&[3, 6, 6]))
        .with_cluster(0, &[0, 1, 2, 3])
        .with_coincidence(4, 6)
        .with_coincidence(4, 7)
        .with_coincidence(4, 8)
        .with_coincidence(5, 6)
        .with_coincidence(5, 7)
        .with_coincidence(5, 8),
        ConfigSpec::pattern("G4", "a 5-vertex on three (3,5,5)-faces", Graph::new(1))
            .with_degree(0, Exact(5))
            .with_incident_faces(0, &[3, 5, 5], 3),
        // u x y z = 0 1 2 3
        ConfigSpec::pattern(
            "G5",
            "a 4-vertex u adjacent to 4-vertices x, y, z and on the 3-face [u x y]",
            pattern(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]),
        )
        .with_degree(0, Exact(4))
        .with_degree(1, Exact(4))
        .with_degree(2, Exact(4))
        .with_degree(3, Exact(4))
        .with_face(&[0, 1, 2], None),
        ConfigSpec::alternating_cycle(
            "ALT2CYCLE",
            "an even cycle whose alternate vertices have degree 2",
            Exact(2),
            Any,
        ),
        ConfigSpec::alternating_cycle(
            "EVEN_3Δ_CYCLE",
            "an even cycle alternating between 3-vertices and Δ-vertices",
            Exact(3),
            MaxDegree,
        ),
        ConfigSpec::pattern("FACE4_3355", "a 4-face on two 3-vertices and two 5-vertices", cycle(4))
            .with_face(&[0, 1, 2, 3], Some(&[3, 3, 5, 5])),
        ConfigSpec::pattern(
            "G6",
            "a 6-vertex on two (3,6,6)-faces and one (4,5,6)-face",
            Graph::new(1),
        )
        .with_degree(0, Exact(6))
        .with_incident_faces(0, &[3, 6, 6], 2)
        .with_incident_faces(0, &[4, 5, 6], 1),
        ConfigSpec::pattern("OUTER1", "an edge at a 1-vertex", path(1)).with_degree(0, Exact(1)),
        ConfigSpec::pattern("OUTER2", "an edge joining two 2-vertices", path(1))
            .with_degree(0, Exact(2))
            .with_degree(1, Exact(2)),
        ConfigSpec::pattern("OUTER3", "a 3-face [u x y] with d(u) = 2 and d(x) = 3", cycle(3))
            .with_degree(0, Exact(2))
            .with_degree(1, Exact(3))
            .with_face(&[0, 1, 2], None),
        // u1 u2 x v1 v2 = 0 1 2 3 4
        ConfigSpec::pattern(
            "G7",
            "a 4-vertex x on 3-faces [x u1 v1] and [x u2 v2] with d(u1) = d(u2) = 2",
            pattern(5, &[(2, 0), (2, 3), (0, 3), (2, 1), (2, 4), (1, 4)]),
        )
        .with_degree(0, Exact(2))
        .with_degree(1, Exact(2))
        .with_degree(2, Exact(4))
        .with_face(&[2, 0, 3], None)
        .with_face(&[2, 1, 4], None),
    ]
}

/// The named configuration table.
pub fn catalog() -> &'static [ConfigSpec] {
    static CATALOG: OnceLock<Vec<ConfigSpec>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Looks a configuration up by name. `D` may stand for `Δ`, and `OUTER4` is
/// another name for `G7`.
pub fn lookup(name: &str) -> Option<&'static ConfigSpec> {
    let name = match name {
        "OUTER4" => "G7",
        other => other,
    };
    let mut alt = String::new();
    let mut prev = ' ';
    for c in name.chars() {
        if c == 'D' && !prev.is_ascii_alphabetic() {
            alt.push('Δ');
        } else {
            alt.push(c);
        }
        prev = c;
    }
    catalog().iter().find(|c| c.name == name || c.name == alt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(lookup("G7").unwrap().pattern_size(), 5);
        assert_eq!(lookup("OUTER4").unwrap().name, "G7");
        assert_eq!(lookup("EDGE_SUM(max{9,D+2})").unwrap().name, "EDGE_SUM(max{9,Δ+2})");
        assert_eq!(lookup("EVEN_3D_CYCLE").unwrap().name, "EVEN_3Δ_CYCLE");
        assert_eq!(lookup("ALT4CYCLE(D)").unwrap().name, "ALT4CYCLE(Δ)");
        assert!(lookup("G8").is_none());
        let g2 = lookup("G2").unwrap();
        assert_eq!(g2.degrees[1], Exact(3));
        assert_eq!(g2.degrees[5], Exact(3));
        assert_eq!(g2.degrees[3], Exact(4));
        let g7 = lookup("G7").unwrap();
        assert_eq!(&g7.degrees[..3], &[Exact(2), Exact(2), Exact(4)]);
        assert_eq!(g7.faces.len(), 2);
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = catalog().iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), catalog().len());
    }
}
