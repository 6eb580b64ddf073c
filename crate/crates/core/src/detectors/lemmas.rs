use serde::{Deserialize, Serialize};

use super::{find_config, lookup, ConfigurationMatch, DetectError};
use crate::graph::graph6::encode_graph6;
use crate::graph::{cycle_spectrum, Graph};
use crate::plane::{find_k_net_or_hole, write_rotation_system, CycleKind, PlaneGraph};

#[derive(Debug, Clone, Copy)]
enum Hypothesis {
    Connected,
    MinDegreeAtLeast(usize),
    MaxDegree(usize),
    MaxDegreeAtLeast(usize),
    /// No cycle with length in the inclusive range.
    NoCycles(usize, usize),
    /// Some length in the list has no cycle.
    MissesOneOf(&'static [usize]),
    NoNets(usize),
    NoAdjacentTriangles,
    Outerplane,
}

struct Lemma {
    name: &'static str,
    hypotheses: &'static [Hypothesis],
    configs: &'static [&'static str],
}

use Hypothesis::*;

const LEMMAS: &[Lemma] = &[
    Lemma {
        name: "7",
        hypotheses: &[MinDegreeAtLeast(3)],
        configs: &["EDGE_SUM(13)"],
    },
    Lemma {
        name: "4-cycles1",
        hypotheses: &[Connected, MinDegreeAtLeast(3), NoCycles(4, 4)],
        configs: &["EDGE_SUM(7)", "G1"],
    },
    Lemma {
        name: "charg",
        hypotheses: &[MaxDegree(4), NoCycles(4, 14)],
        configs: &["CHARG1", "CHARG2"],
    },
    Lemma {
        name: "5-cycles1",
        hypotheses: &[MinDegreeAtLeast(3), NoCycles(5, 5)],
        configs: &["EDGE_35"],
    },
    Lemma {
        name: "5-cycles2",
        hypotheses: &[MaxDegree(6), NoNets(5)],
        configs: &["EDGE_SUM(8)", "ALT4CYCLE(6)", "G2", "G3"],
    },
    Lemma {
        name: "5-cycles3",
        hypotheses: &[MinDegreeAtLeast(3), NoNets(5)],
        configs: &["EDGE_SUM(9)"],
    },
    Lemma {
        name: "5-cycles4,5a",
        hypotheses: &[MaxDegree(5), NoNets(5), NoNets(6)],
        configs: &["EDGE_SUM(7)", "ALT4CYCLE(5)", "G4"],
    },
    Lemma {
        name: "5-cycles4,5b",
        hypotheses: &[MaxDegree(5), NoNets(4), NoNets(5)],
        configs: &["EDGE_SUM(7)", "ALT4CYCLE(5)", "G5"],
    },
    Lemma {
        name: "5-cycles6",
        hypotheses: &[Connected, MinDegreeAtLeast(2), MissesOneOf(&[5, 6])],
        configs: &["EDGE_SUM(9)", "ALT2CYCLE"],
    },
    Lemma {
        name: "5-cycles7",
        hypotheses: &[NoNets(5)],
        configs: &["EDGE_SUM(max{8,Δ+2})", "EVEN_3Δ_CYCLE"],
    },
    Lemma {
        name: "3-cycles1",
        hypotheses: &[NoCycles(3, 3), MaxDegreeAtLeast(5)],
        configs: &["EDGE_SUM(Δ+2)", "FACE4_3355"],
    },
    Lemma {
        name: "3-cycles2",
        hypotheses: &[NoAdjacentTriangles],
        configs: &["EDGE_SUM(max{8,Δ+2})", "ALT4CYCLE(Δ)", "G6"],
    },
    Lemma {
        name: "6-cycles1",
        hypotheses: &[MinDegreeAtLeast(3), NoCycles(6, 6)],
        configs: &["EDGE_SUM(8)"],
    },
    Lemma {
        name: "7-cycles1",
        hypotheses: &[NoCycles(7, 7)],
        configs: &["EDGE_SUM(max{9,Δ+2})", "ALT4CYCLE(Δ)"],
    },
    Lemma {
        name: "outerplanar1",
        hypotheses: &[Outerplane],
        configs: &["OUTER1", "OUTER2", "OUTER3", "G7"],
    },
];

pub fn lemma_names() -> Vec<&'static str> {
    LEMMAS.iter().map(|l| l.name).collect()
}

/// The configurations a lemma promises, in catalog form.
pub fn lemma_configs(name: &str) -> Result<Vec<&'static str>, DetectError> {
    find_lemma(name).map(|l| l.configs.to_vec())
}

fn find_lemma(name: &str) -> Result<&'static Lemma, DetectError> {
    LEMMAS
        .iter()
        .find(|l| l.name == name)
        .ok_or_else(|| DetectError::UnknownLemma(name.into()))
}

/// Everything needed to reproduce a host on which a lemma's promise fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleBundle {
    pub lemma: String,
    pub graph6: String,
    pub rotation_system: String,
    pub configs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Present { matches: Vec<ConfigurationMatch> },
    Skipped { reason: String },
    Counterexample { bundle: CounterexampleBundle },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnavoidabilityReport {
    pub lemma: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// Checks the lemma's hypotheses on `pg` and, when they hold, that at least
/// one of its configurations occurs.
pub fn verify_unavoidability(pg: &PlaneGraph, lemma: &str) -> Result<UnavoidabilityReport, DetectError> {
    let l = find_lemma(lemma)?;
    let g = pg.graph();
    g.require_simple()?;
    let report = |outcome| UnavoidabilityReport {
        lemma: l.name.into(),
        outcome,
    };
    if g.m() == 0 {
        return Ok(report(Outcome::Skipped {
            reason: "host has no edges".into(),
        }));
    }
    for &h in l.hypotheses {
        if let Some(reason) = violation(pg, h) {
            return Ok(report(Outcome::Skipped { reason }));
        }
    }
    let mut matches = Vec::new();
    for name in l.configs {
        let spec = lookup(name).expect("lemma configurations are in the catalog");
        matches.extend(find_config(pg, spec)?);
    }
    if !matches.is_empty() {
        return Ok(report(Outcome::Present { matches }));
    }
    let bundle = CounterexampleBundle {
        lemma: l.name.into(),
        graph6: encode_graph6(g)?,
        rotation_system: write_rotation_system(pg),
        configs: l.configs.iter().map(|c| c.to_string()).collect(),
    };
    Ok(report(Outcome::Counterexample { bundle }))
}

/// Why `h` fails on `pg`, if it does.
fn violation(pg: &PlaneGraph, h: Hypothesis) -> Option<String> {
    let g = pg.graph();
    match h {
        Connected => (!g.is_connected()).then(|| "host is not connected".into()),
        MinDegreeAtLeast(k) => (g.min_degree() < k).then(|| format!("minimum degree {} < {k}", g.min_degree())),
        MaxDegree(k) => (g.max_degree() != k).then(|| format!("maximum degree {} != {k}", g.max_degree())),
        MaxDegreeAtLeast(k) => (g.max_degree() < k).then(|| format!("maximum degree {} < {k}", g.max_degree())),
        NoCycles(lo, hi) => {
            let spectrum = cycle_spectrum(g, hi);
            spectrum.range(lo..=hi).next().map(|l| format!("host has a {l}-cycle"))
        }
        MissesOneOf(lengths) => {
            let max = lengths.iter().copied().max().unwrap_or(0);
            let spectrum = cycle_spectrum(g, max);
            lengths
                .iter()
                .all(|l| spectrum.contains(l))
                .then(|| format!("host has cycles of every length in {lengths:?}"))
        }
        NoNets(k) => find_k_net_or_hole(g, k)
            .iter()
            .any(|c| c.kind == CycleKind::Net)
            .then(|| format!("host has a {k}-net")),
        NoAdjacentTriangles => adjacent_triangles(g).then(|| "host has adjacent triangles".into()),
        Outerplane => (!is_outerplane(pg)).then(|| "embedding is not outerplane".into()),
    }
}

/// Two triangles sharing an edge.
fn adjacent_triangles(g: &Graph) -> bool {
    g.edges().iter().any(|e| {
        let nu = g.neighbors(e.u);
        g.neighbors(e.v).iter().filter(|w| nu.contains(w)).count() >= 2
    })
}

/// Every component with an edge has all its vertices on one face.
fn is_outerplane(pg: &PlaneGraph) -> bool {
    let g = pg.graph();
    let comp = g.components();
    let count = comp.iter().copied().max().map_or(0, |c| c + 1);
    (0..count).all(|c| {
        let vs: Vec<usize> = g.vertices().filter(|&v| comp[v] == c).collect();
        vs.len() < 2 || pg.faces().iter().any(|f| vs.iter().all(|&v| f.walk().any(|x| x == v)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{complete, cycle, prism};
    use crate::plane::embed_small;

    fn run(g: &Graph, lemma: &str) -> Outcome {
        let pg = embed_small(g).unwrap().unwrap();
        verify_unavoidability(&pg, lemma).unwrap().outcome
    }

    #[test]
    fn lemma_7_on_min_degree_3_hosts() {
        for g in [complete(4), prism()] {
            let Outcome::Present { matches } = run(&g, "7") else {
                panic!()
            };
            assert!(matches.iter().all(|m| m.config == "EDGE_SUM(13)"));
            assert_eq!(matches.len(), g.m());
        }
    }

    #[test]
    fn outerplanar_cases() {
        let Outcome::Present { matches } = run(&cycle(6), "outerplanar1") else {
            panic!()
        };
        assert!(matches.iter().any(|m| m.config == "OUTER2"));
        assert!(matches!(run(&complete(4), "outerplanar1"), Outcome::Skipped { .. }));
    }

    #[test]
    fn hypothesis_failures_skip() {
        assert!(matches!(run(&cycle(4), "7"), Outcome::Skipped { .. }));
        assert!(matches!(run(&complete(4), "3-cycles1"), Outcome::Skipped { .. }));
        assert!(matches!(run(&complete(4), "charg"), Outcome::Skipped { .. }));
        assert!(verify_unavoidability(&embed_small(&cycle(3)).unwrap().unwrap(), "nope").is_err());
    }

    #[test]
    fn every_lemma_names_catalog_entries() {
        for name in lemma_names() {
            for c in lemma_configs(name).unwrap() {
                assert!(lookup(c).is_some(), "{c}");
            }
        }
    }

    #[test]
    fn report_json_is_tagged() {
        let pg = embed_small(&complete(4)).unwrap().unwrap();
        let r = verify_unavoidability(&pg, "outerplanar1").unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["outcome"], "skipped");
        assert_eq!(v["lemma"], "outerplanar1");
    }
}
