//! Discharging for plane graphs with maximum degree 4 and no cycles of length
//! 4 to 14.
//!
//! Every vertex and face starts with charge `d(x) - 4`. The rules:
//!
//! * R1: a face of degree `r >= 15` gives `(1 - 4/r) m_v(f)` to each incident
//!   cut vertex `v` and `1 - 4/r` to every other incident vertex.
//! * R2: a 2-vertex on a 3-face receives 19/24 from each neighbour; any other
//!   2-vertex receives 8/15 from its 2-master.
//! * R3: a 3-face receives 1/3 from each incident vertex.
//!
//! All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::detectors::{find_config, lookup, ConfigurationMatch, CounterexampleBundle};
use crate::graph::graph6::encode_graph6;
use crate::graph::{blocks, cycle_spectrum, Graph, GraphError};
use crate::plane::{write_rotation_system, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// No matching saturates `two_vertices`; together they have only
    /// `neighbors` available as partners outside the set.
    #[error("no matching saturates the 2-vertices {two_vertices:?} (outside partners {neighbors:?})")]
    NoSaturatingMatching {
        two_vertices: Vec<usize>,
        neighbors: Vec<usize>,
    },
}

/// An exact rational charge, serialised as `[num, den]`. Parts too large for
/// an `i64` are written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge(pub BigRational);

impl Charge {
    pub fn new(num: i64, den: i64) -> Self {
        Charge(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: i64) -> Self {
        Charge::new(v, 1)
    }

    pub fn zero() -> Self {
        Charge::integer(0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Part {
    Small(i64),
    Big(String),
}

impl Part {
    fn of(x: &BigInt) -> Part {
        x.to_i64().map_or_else(|| Part::Big(x.to_string()), Part::Small)
    }

    fn value(self) -> Result<BigInt, String> {
        match self {
            Part::Small(v) => Ok(v.into()),
            Part::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

impl Serialize for Charge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (Part::of(self.0.numer()), Part::of(self.0.denom())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Charge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (n, m): (Part, Part) = Deserialize::deserialize(d)?;
        let n = n.value().map_err(serde::de::Error::custom)?;
        let m = m.value().map_err(serde::de::Error::custom)?;
        if m.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Charge(BigRational::new(n, m)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeLedger {
    #[serde(with = "as_pairs")]
    pub initial: BTreeMap<Element, Charge>,
    pub transfers: Vec<Transfer>,
    #[serde(rename = "final", with = "as_pairs")]
    pub final_charges: BTreeMap<Element, Charge>,
}

/// Charge maps as lists of `[element, charge]`; JSON keys must be strings.
mod as_pairs {
    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<Element, Charge>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Element, Charge>, D::Error> {
        let pairs: Vec<(Element, Charge)> = Deserialize::deserialize(d)?;
        Ok(pairs.into_iter().collect())
    }
}

impl ChargeLedger {
    /// Final charges recomputed from the initial ones and the transfers.
    pub fn replay(&self) -> BTreeMap<Element, Charge> {
        let mut out = self.initial.clone();
        for t in &self.transfers {
            let from = out.entry(t.from).or_insert_with(Charge::zero);
            from.0 -= &t.amount.0;
            let to = out.entry(t.to).or_insert_with(Charge::zero);
            to.0 += &t.amount.0;
        }
        out
    }

    pub fn total_initial(&self) -> Charge {
        total(&self.initial)
    }

    pub fn total_final(&self) -> Charge {
        total(&self.final_charges)
    }

    /// Elements whose final charge is negative.
    pub fn negative(&self) -> Vec<Element> {
        self.final_charges
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(&e, _)| e)
            .collect()
    }
}

fn total(m: &BTreeMap<Element, Charge>) -> Charge {
    Charge(m.values().fold(BigRational::zero(), |acc, c| acc + &c.0))
}

/// The 2-master of every 2-vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoMasterMap {
    pub master: BTreeMap<usize, usize>,
}

/// A matching of the edges at 2-vertices that covers every 2-vertex; among
/// all such matchings, the one whose partner list (by increasing 2-vertex) is
/// lexicographically least.
pub fn two_master_matching(g: &Graph) -> Result<TwoMasterMap, DischargeError> {
    g.require_simple()?;
    let need: Vec<bool> = g.vertices().map(|v| g.degree(v) == 2).collect();
    least_matching(g, &need)
}

/// As [`two_master_matching`], but covering only the 2-vertices that R2 pays
/// through a 2-master: those on no 3-face. Other 2-vertices may still serve
/// as masters.
pub fn rule_masters(pg: &PlaneGraph) -> Result<TwoMasterMap, DischargeError> {
    let g = pg.graph();
    g.require_simple()?;
    let need: Vec<bool> = g
        .vertices()
        .map(|v| g.degree(v) == 2 && !pg.faces_at(v).iter().any(|&f| pg.faces()[f].degree() == 3))
        .collect();
    least_matching(g, &need)
}

fn least_matching(g: &Graph, need: &[bool]) -> Result<TwoMasterMap, DischargeError> {
    let mut free = vec![true; g.n()];
    saturable(g, need, &free)?;
    let mut master = BTreeMap::new();
    for u in g.vertices().filter(|&u| need[u]) {
        if master.contains_key(&u) {
            continue;
        }
        let mut chosen = None;
        for w in g.neighbors(u) {
            if !free[w] {
                continue;
            }
            free[u] = false;
            free[w] = false;
            if saturable(g, need, &free).is_ok() {
                chosen = Some(w);
                break;
            }
            free[u] = true;
            free[w] = true;
        }
        let w = chosen.expect("a feasible choice exists while the rest is saturable");
        master.insert(u, w);
        if need[w] {
            master.insert(w, u);
        }
    }
    Ok(TwoMasterMap { master })
}

/// Whether the free vertices in `need` (all of degree 2) can be matched
/// among free vertices.
///
/// Free needy vertices induce paths and cycles. An even path matches internally
/// and an odd cycle never can; an odd path must send one end to an outside
/// neighbour, which is a bipartite matching between odd paths and outside
/// vertices.
fn saturable(g: &Graph, need: &[bool], free: &[bool]) -> Result<(), DischargeError> {
    let n = g.n();
    let inner = |v: usize| need[v] && free[v];
    let mut seen = vec![false; n];
    // each odd path: its vertices and the free outside vertices at its ends
    let mut odd: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for s in 0..n {
        if !inner(s) || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for y in g.neighbors(x) {
                if inner(y) && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        if comp.len() % 2 == 0 {
            continue;
        }
        let mut outside: BTreeSet<usize> = BTreeSet::new();
        for &x in &comp {
            let in_path = g.neighbors(x).into_iter().filter(|&y| inner(y)).count();
            if in_path < 2 {
                outside.extend(g.neighbors(x).into_iter().filter(|&y| !need[y] && free[y]));
            }
        }
        comp.sort_unstable();
        let is_cycle = comp
            .iter()
            .all(|&x| g.neighbors(x).into_iter().filter(|&y| inner(y)).count() == 2);
        if is_cycle {
            return Err(DischargeError::NoSaturatingMatching {
                two_vertices: comp,
                neighbors: Vec::new(),
            });
        }
        odd.push((comp, outside.into_iter().collect()));
    }

    // Kuhn's augmenting paths from each odd path
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for p in 0..odd.len() {
        let mut visited = vec![false; odd.len()];
        if !augment(p, &odd, &mut owner, &mut visited) {
            // the odd paths reached by alternating paths form a Hall violator
            let reached: Vec<usize> = (0..odd.len()).filter(|&q| visited[q]).collect();
            let mut two_vertices: Vec<usize> = reached.iter().flat_map(|&q| odd[q].0.iter().copied()).collect();
            let mut neighbors: Vec<usize> = reached.iter().flat_map(|&q| odd[q].1.iter().copied()).collect();
            two_vertices.sort_unstable();
            neighbors.sort_unstable();
            neighbors.dedup();
            return Err(DischargeError::NoSaturatingMatching {
                two_vertices,
                neighbors,
            });
        }
    }
    Ok(())
}

fn augment(p: usize, odd: &[(Vec<usize>, Vec<usize>)], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    visited[p] = true;
    for &t in &odd[p].1 {
        match owner[t] {
            None => {
                owner[t] = Some(p);
                return true;
            }
            Some(q) if !visited[q] => {
                if augment(q, odd, owner, visited) {
                    owner[t] = Some(p);
                    return true;
                }
            }
            Some(_) => {}
        }
    }
    false
}

/// Applies R1 to R3 to `pg` once each.
pub fn apply_charg_rules(pg: &PlaneGraph, masters: &TwoMasterMap) -> Result<ChargeLedger, DischargeError> {
    let g = pg.graph();
    g.require_simple()?;
    let deg = |d: usize| Charge::integer(d as i64 - 4);
    let mut initial = BTreeMap::new();
    for v in g.vertices() {
        initial.insert(Element::Vertex(v), deg(g.degree(v)));
    }
    for (f, face) in pg.faces().iter().enumerate() {
        initial.insert(Element::Face(f), deg(face.degree()));
    }
    let cut = blocks(g).cut_vertices;
    let mut transfers = Vec::new();

    for (f, face) in pg.faces().iter().enumerate() {
        let r = face.degree();
        if r < 15 {
            continue;
        }
        let share = Charge::new(r as i64 - 4, r as i64);
        for v in face.vertex_set() {
            let amount = if cut.contains(&v) {
                Charge(&share.0 * BigRational::from_integer((pg.m_v(v, f) as i64).into()))
            } else {
                share.clone()
            };
            transfers.push(Transfer {
                from: Element::Face(f),
                to: Element::Vertex(v),
                amount,
                rule: Rule::R1,
            });
        }
    }

    for v in g.vertices().filter(|&v| g.degree(v) == 2) {
        let on_triangle = pg.faces_at(v).iter().any(|&f| pg.faces()[f].degree() == 3);
        if on_triangle {
            for w in g.neighbors(v) {
                transfers.push(Transfer {
                    from: Element::Vertex(w),
                    to: Element::Vertex(v),
                    amount: Charge::new(19, 24),
                    rule: Rule::R2,
                });
            }
        } else {
            let &w = masters
                .master
                .get(&v)
                .ok_or_else(|| DischargeError::NoSaturatingMatching {
                    two_vertices: vec![v],
                    neighbors: Vec::new(),
                })?;
            transfers.push(Transfer {
                from: Element::Vertex(w),
                to: Element::Vertex(v),
                amount: Charge::new(8, 15),
                rule: Rule::R2,
            });
        }
    }

    for (f, face) in pg.faces().iter().enumerate() {
        if face.degree() != 3 {
            continue;
        }
        for v in face.walk() {
            transfers.push(Transfer {
                from: Element::Vertex(v),
                to: Element::Face(f),
                amount: Charge::new(1, 3),
                rule: Rule::R3,
            });
        }
    }

    let mut ledger = ChargeLedger {
        initial,
        transfers,
        final_charges: BTreeMap::new(),
    };
    ledger.final_charges = ledger.replay();
    Ok(ledger)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ChargReport {
    HypothesisFailed {
        reason: String,
    },
    ConfigFound {
        matches: Vec<ConfigurationMatch>,
    },
    /// The host meets the hypotheses and avoids both configurations.
    /// `negative` lists the elements left with negative charge; it is empty
    /// only if the final charges contradict the total of -8.
    DischargeContradiction {
        ledger: ChargeLedger,
        negative: Vec<Element>,
        bundle: CounterexampleBundle,
    },
    /// The host meets the hypotheses and avoids both configurations, but its
    /// 2-vertices cannot all be given a 2-master.
    NoTwoMasters {
        error: String,
        bundle: CounterexampleBundle,
    },
}

/// Runs the whole argument on one host: hypotheses, configurations, then the
/// discharging.
pub fn verify_lemma_charg(pg: &PlaneGraph) -> Result<ChargReport, DischargeError> {
    let g = pg.graph();
    g.require_simple()?;
    let failed = |reason: String| Ok(ChargReport::HypothesisFailed { reason });
    if g.max_degree() != 4 {
        return failed(format!("maximum degree is {}, not 4", g.max_degree()));
    }
    if !g.is_connected() {
        return failed("host is not connected".into());
    }
    if let Some(l) = cycle_spectrum(g, 14).range(4..=14).next() {
        return failed(format!("host has a {l}-cycle"));
    }
    let mut matches = Vec::new();
    for name in ["CHARG1", "CHARG2"] {
        let spec = lookup(name).expect("catalog entry");
        matches.extend(find_config(pg, spec).expect("host is simple and embedded"));
    }
    if !matches.is_empty() {
        return Ok(ChargReport::ConfigFound { matches });
    }
    let bundle = CounterexampleBundle {
        lemma: "charg".into(),
        graph6: encode_graph6(g)?,
        rotation_system: write_rotation_system(pg),
        configs: vec!["CHARG1".into(), "CHARG2".into()],
    };
    let masters = match rule_masters(pg) {
        Ok(m) => m,
        Err(e) => {
            return Ok(ChargReport::NoTwoMasters {
                error: e.to_string(),
                bundle,
            })
        }
    };
    let ledger = apply_charg_rules(pg, &masters)?;
    let negative = ledger.negative();
    Ok(ChargReport::DischargeContradiction {
        ledger,
        negative,
        bundle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{cycle, path, star};
    use crate::plane::{embed_planar, embed_small};

    /// Least saturating partner list by plain enumeration.
    fn brute_masters(g: &Graph) -> Option<BTreeMap<usize, usize>> {
        let twos: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
        let mut best: Option<Vec<usize>> = None;
        for bits in 0..1u32 << twos.len() {
            let pick: Vec<usize> = twos
                .iter()
                .enumerate()
                .map(|(i, &u)| g.neighbors(u)[(bits >> i & 1) as usize])
                .collect();
            let partner: BTreeMap<usize, usize> = twos.iter().copied().zip(pick.iter().copied()).collect();
            let ok = twos.iter().all(|&u| {
                let w = partner[&u];
                let taken_by_other = twos.iter().any(|&x| x != u && partner[&x] == w && w != u);
                let consistent = partner.get(&w).is_none_or(|&b| b == u);
                let mutual = partner.contains_key(&w);
                let claimed = twos.iter().any(|&x| x != u && x != w && partner[&x] == u);
                consistent && !claimed && (mutual || !taken_by_other)
            });
            if ok && best.as_ref().is_none_or(|b| &pick < b) {
                best = Some(pick);
            }
        }
        best.map(|b| twos.into_iter().zip(b).collect())
    }

    #[test]
    fn masters_on_small_graphs() {
        let m = two_master_matching(&path(2)).unwrap();
        assert_eq!(m.master, BTreeMap::from([(1, 0)]));
        let m = two_master_matching(&cycle(4)).unwrap();
        assert_eq!(m.master, BTreeMap::from([(0, 1), (1, 0), (2, 3), (3, 2)]));
        // leaves 0 1 2, subdivision vertices 3 4 5, hub 6
        let g = Graph::from_edges(7, &[(3, 0), (3, 6), (4, 1), (4, 6), (5, 2), (5, 6)]).unwrap();
        let m = two_master_matching(&g).unwrap();
        assert_eq!(m.master, BTreeMap::from([(3, 0), (4, 1), (5, 2)]));
        assert_eq!(Some(m.master), brute_masters(&g));
    }

    #[test]
    fn odd_cycle_of_two_vertices_has_no_masters() {
        let err = two_master_matching(&cycle(5)).unwrap_err();
        assert!(matches!(err, DischargeError::NoSaturatingMatching { .. }));
        assert_eq!(brute_masters(&cycle(5)), None);
    }

    #[test]
    fn hall_violator() {
        // three 2-vertices 1 3 5 whose only outside neighbours are 0 and 6
        let g = Graph::from_edges(7, &[(0, 1), (1, 6), (0, 3), (3, 6), (0, 5), (5, 6)]).unwrap();
        let Err(DischargeError::NoSaturatingMatching {
            two_vertices,
            neighbors,
        }) = two_master_matching(&g)
        else {
            panic!()
        };
        assert_eq!(two_vertices, vec![1, 3, 5]);
        assert_eq!(neighbors, vec![0, 6]);
        assert_eq!(brute_masters(&g), None);
    }

    fn ledger_for(g: &Graph) -> ChargeLedger {
        let pg = embed_planar(g).unwrap().unwrap();
        let masters = rule_masters(&pg).unwrap();
        apply_charg_rules(&pg, &masters).unwrap()
    }

    #[test]
    fn triangle_charges() {
        let l = ledger_for(&cycle(3));
        let expect =
            Charge(BigRational::from_integer(2.into()) - BigRational::from_integer(4.into()) - Charge::new(2, 3).0);
        for v in 0..3 {
            assert_eq!(l.final_charges[&Element::Vertex(v)], expect);
        }
        assert_eq!(l.final_charges[&Element::Face(0)], Charge::zero());
        assert_eq!(l.total_final(), Charge::integer(-8));
    }

    #[test]
    fn long_cycle_faces_pay_their_excess() {
        let l = ledger_for(&cycle(16));
        for f in 0..2 {
            assert_eq!(l.final_charges[&Element::Face(f)], Charge::zero());
        }
        assert_eq!(l.final_charges[&Element::Vertex(0)], Charge::new(-1, 2));
        assert_eq!(l.total_initial(), Charge::integer(-8));
        assert_eq!(l.total_final(), Charge::integer(-8));
    }

    #[test]
    fn cube_fires_no_rule() {
        let cube = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        let l = ledger_for(&cube);
        assert!(l.transfers.is_empty());
        assert_eq!(l.initial, l.final_charges);
    }

    #[test]
    fn ledger_json_round_trip() {
        let l = ledger_for(&cycle(3));
        let text = serde_json::to_string(&l).unwrap();
        assert!(text.contains("[-8,3]"));
        let back: ChargeLedger = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
        let huge: Charge = serde_json::from_str(r#"["-100000000000000000000000", 3]"#).unwrap();
        assert_eq!(
            serde_json::to_string(&huge).unwrap(),
            r#"["-100000000000000000000000",3]"#
        );
        assert!(serde_json::from_str::<Charge>("[1, 0]").is_err());
    }

    #[test]
    fn lemma_outcomes() {
        let c3 = embed_small(&cycle(3)).unwrap().unwrap();
        assert!(matches!(
            verify_lemma_charg(&c3).unwrap(),
            ChargReport::HypothesisFailed { .. }
        ));
        let s = embed_small(&star(4)).unwrap().unwrap();
        let ChargReport::ConfigFound { matches } = verify_lemma_charg(&s).unwrap() else {
            panic!()
        };
        assert!(matches.iter().all(|m| m.config == "CHARG1"));
        // a 15-cycle with two pendant vertices at 0
        let mut g = cycle(15);
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(0, a).unwrap();
        g.add_edge(0, b).unwrap();
        let pg = embed_planar(&g).unwrap().unwrap();
        assert!(matches!(
            verify_lemma_charg(&pg).unwrap(),
            ChargReport::ConfigFound { .. }
        ));
    }
}
