//! Finite Abelian groups of order at most [`MAX_GROUP_ORDER`].
//!
//! Elements are residue vectors; internally each element also has a dense
//! index in `0..order` (mixed radix, last factor least significant, identity
//! is index 0) so that sets of elements fit in a `u64` and arithmetic is a
//! table lookup.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const MAX_GROUP_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {0} is not supported (must be 1..={MAX_GROUP_ORDER})")]
    UnsupportedOrder(u64),
    #[error("cyclic factor must be at least 1")]
    ZeroFactor,
    #[error("elements belong to different groups ({0} and {1})")]
    MixedParents(String, String),
    #[error("residue vector {residues:?} is not an element of {group}")]
    NotAnElement { group: String, residues: Vec<u32> },
    #[error("subset size {k} out of range for a group of order {order}")]
    SubsetSize { k: usize, order: usize },
    #[error("cannot parse group at column {column}: {message}")]
    Parse { column: usize, message: String },
}

struct GroupData {
    factors: Vec<u32>,
    order: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
}

/// A finite Abelian group in invariant-factor form `Z_{d1} x ... x Z_{dm}`
/// with `d1 | d2 | ... | dm` and every `di >= 2`. The trivial group has no
/// factors. Cloning is cheap.
#[derive(Clone)]
pub struct AbelianGroup(Arc<GroupData>);

impl AbelianGroup {
    /// The product of cyclic groups of the given orders, normalised to
    /// invariant factors (so `[2, 3]` and `[6]` give the same group).
    pub fn new(factors: &[u32]) -> Result<Self, GroupError> {
        let mut order: u64 = 1;
        for &d in factors {
            if d == 0 {
                return Err(GroupError::ZeroFactor);
            }
            order = order.saturating_mul(d as u64);
            if order > MAX_GROUP_ORDER as u64 {
                return Err(GroupError::UnsupportedOrder(order));
            }
        }
        Ok(Self::from_invariant_factors(invariant_factors(factors)))
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        Self::new(&[n])
    }

    fn from_invariant_factors(factors: Vec<u32>) -> Self {
        let order: usize = factors.iter().map(|&d| d as usize).product();
        let mut residues = Vec::with_capacity(order);
        for i in 0..order {
            residues.push(decode(&factors, i));
        }
        let mut add = vec![0u8; order * order];
        let mut neg = vec![0u8; order];
        for a in 0..order {
            for b in 0..order {
                let sum: Vec<u32> = residues[a]
                    .iter()
                    .zip(&residues[b])
                    .zip(&factors)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                add[a * order + b] = encode(&factors, &sum) as u8;
            }
            let inv: Vec<u32> = residues[a].iter().zip(&factors).map(|(x, d)| (d - x) % d).collect();
            neg[a] = encode(&factors, &inv) as u8;
        }
        AbelianGroup(Arc::new(GroupData {
            factors,
            order,
            add,
            neg,
        }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Invariant factors in increasing (divisibility) order.
    pub fn factors(&self) -> &[u32] {
        &self.0.factors
    }

    /// Prime-power cyclic factors, sorted.
    pub fn elementary_divisors(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .0
            .factors
            .iter()
            .flat_map(|&d| prime_powers(d).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        self.element(0)
    }

    pub fn element(&self, index: u8) -> GroupElement {
        assert!((index as usize) < self.order(), "element index out of range");
        GroupElement {
            group: self.clone(),
            residues: decode(&self.0.factors, index as usize),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i as u8))
    }

    pub fn element_from_residues(&self, residues: &[u32]) -> Result<GroupElement, GroupError> {
        self.index_of_residues(residues)?;
        Ok(GroupElement {
            group: self.clone(),
            residues: residues.to_vec(),
        })
    }

    pub fn index_of_residues(&self, residues: &[u32]) -> Result<u8, GroupError> {
        let f = &self.0.factors;
        if residues.len() != f.len() || residues.iter().zip(f).any(|(r, d)| r >= d) {
            return Err(GroupError::NotAnElement {
                group: self.to_string(),
                residues: residues.to_vec(),
            });
        }
        Ok(encode(f, residues) as u8)
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<u8, GroupError> {
        self.check_parent(x)?;
        self.index_of_residues(&x.residues)
    }

    pub fn residues(&self, index: u8) -> Vec<u32> {
        decode(&self.0.factors, index as usize)
    }

    #[inline]
    pub fn add_idx(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.order + b as usize]
    }

    #[inline]
    pub fn neg_idx(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub_idx(&self, a: u8, b: u8) -> u8 {
        self.add_idx(a, self.neg_idx(b))
    }

    /// `{x + t : x in set}`.
    pub fn translate(&self, set: ElementSet, t: u8) -> ElementSet {
        set.iter().map(|x| self.add_idx(x, t)).collect()
    }

    fn check_parent(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.group != *self {
            return Err(GroupError::MixedParents(self.to_string(), x.group.to_string()));
        }
        Ok(())
    }
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }
}

impl Eq for AbelianGroup {}

impl std::hash::Hash for AbelianGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.factors.hash(state);
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.factors.is_empty() {
            return f.write_str("Z1");
        }
        for (i, d) in self.0.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl FromStr for AbelianGroup {
    type Err = GroupError;

    /// Accepts `Z4`, `Z2xZ2`, `Z3 x Z9`, `Z2×Z6` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let perr = |column: usize, message: &str| GroupError::Parse {
            column,
            message: message.to_string(),
        };
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut i = 0;
        let mut factors = Vec::new();
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].1.is_whitespace() {
                *i += 1;
            }
        };
        loop {
            skip_ws(&mut i);
            let col = chars.get(i).map_or(s.len(), |c| c.0);
            match chars.get(i) {
                Some((_, 'Z' | 'z')) => i += 1,
                Some(_) => return Err(perr(col, "expected 'Z'")),
                None => return Err(perr(col, "expected a cyclic factor")),
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(perr(chars.get(i).map_or(s.len(), |c| c.0), "expected digits"));
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            let d: u32 = digits.parse().map_err(|_| perr(chars[start].0, "factor too large"))?;
            if d == 0 {
                return Err(perr(chars[start].0, "factor must be at least 1"));
            }
            factors.push(d);
            skip_ws(&mut i);
            match chars.get(i) {
                None => break,
                Some((_, 'x' | 'X' | '×' | '*')) => i += 1,
                Some((c, _)) => return Err(perr(*c, "expected 'x' or end of input")),
            }
        }
        AbelianGroup::new(&factors)
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of a specific group, as a residue vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: AbelianGroup,
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn index(&self) -> u8 {
        encode(self.group.factors(), &self.residues) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.group.check_parent(other)?;
        Ok(self.group.element(self.group.add_idx(self.index(), other.index())))
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.group.check_parent(other)?;
        Ok(self.group.element(self.group.sub_idx(self.index(), other.index())))
    }

    pub fn neg(&self) -> GroupElement {
        self.group.element(self.group.neg_idx(self.index()))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            return write!(f, "{}", self.residues[0]);
        }
        f.write_str("(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.group)
    }
}

/// A set of element indices of a group of order at most 64.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(pub u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(order: usize) -> Self {
        ElementSet(if order >= 64 { u64::MAX } else { (1u64 << order) - 1 })
    }

    pub fn singleton(x: u8) -> Self {
        ElementSet(1 << x)
    }

    pub fn contains(self, x: u8) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: u8) {
        self.0 |= 1 << x;
    }

    pub fn remove(&mut self, x: u8) {
        self.0 &= !(1 << x);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            Some(x)
        })
    }

    /// True iff every element is `< order`.
    pub fn fits(self, order: usize) -> bool {
        self.is_subset(ElementSet::full(order))
    }
}

impl FromIterator<u8> for ElementSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One group per isomorphism class, cyclic group first.
pub fn enumerate_abelian_groups(order: usize) -> Result<Vec<AbelianGroup>, GroupError> {
    if order == 0 || order > MAX_GROUP_ORDER {
        return Err(GroupError::UnsupportedOrder(order as u64));
    }
    let mut choices: Vec<Vec<u32>> = vec![Vec::new()];
    for (p, e) in prime_powers(order as u32) {
        let mut next = Vec::new();
        for base in &choices {
            for part in partitions(e) {
                let mut f = base.clone();
                f.extend(part.iter().map(|&x| p.pow(x)));
                next.push(f);
            }
        }
        choices = next;
    }
    let mut groups: Vec<AbelianGroup> = choices
        .iter()
        .map(|f| AbelianGroup::from_invariant_factors(invariant_factors(f)))
        .collect();
    groups.sort_by(|a, b| (a.factors().len(), a.factors()).cmp(&(b.factors().len(), b.factors())));
    Ok(groups)
}

/// All `k`-subsets of `0..n` as bitmasks, in increasing numeric order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 64 && k <= n);
    let mut next = Some(if k == 0 { 0 } else { ElementSet::full(k).0 });
    let limit = ElementSet::full(n).0;
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 || r & !limit != 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt & !limit == 0).then_some(nxt)
            }
        };
        Some(cur)
    })
}

/// Every `k`-subset of `a`.
pub fn k_subsets(a: &AbelianGroup, k: usize) -> Result<impl Iterator<Item = ElementSet>, GroupError> {
    if k > a.order() {
        return Err(GroupError::SubsetSize { k, order: a.order() });
    }
    Ok(combinations(a.order(), k).map(ElementSet))
}

/// Every `k`-subset of `a` that contains the identity.
pub fn k_subsets_containing_zero(a: &AbelianGroup, k: usize) -> Result<impl Iterator<Item = ElementSet>, GroupError> {
    if k == 0 || k > a.order() {
        return Err(GroupError::SubsetSize { k, order: a.order() });
    }
    Ok(combinations(a.order() - 1, k - 1).map(|m| ElementSet(m << 1 | 1)))
}

fn decode(factors: &[u32], mut index: usize) -> Vec<u32> {
    let mut out = vec![0; factors.len()];
    for (i, &d) in factors.iter().enumerate().rev() {
        out[i] = (index % d as usize) as u32;
        index /= d as usize;
    }
    out
}

fn encode(factors: &[u32], residues: &[u32]) -> usize {
    residues
        .iter()
        .zip(factors)
        .fold(0, |acc, (&r, &d)| acc * d as usize + r as usize)
}

fn prime_powers(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `e` into non-increasing parts.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

fn invariant_factors(factors: &[u32]) -> Vec<u32> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &d in factors {
        for (p, e) in prime_powers(d) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u32; len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in es.into_iter().enumerate() {
            out[len - 1 - i] *= p.pow(e);
        }
    }
    out
}
