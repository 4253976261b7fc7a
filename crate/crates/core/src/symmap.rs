//! Symmetric maps on unordered point pairs and their module-theoretic
//! primitives.
//!
//! A [`SymMap`] assigns a label to every unordered pair `{x, y}` of distinct
//! points. Storage is keyed by unordered pairs, so `label(x, y) == label(y, x)`
//! holds by construction. A *module* is a subset `M` such that every point
//! outside `M` sees a single label towards all of `M`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Label string reserved for prime vertices of a decomposition tree.
pub const PRIME_LABEL: &str = "prime";

/// Dense index of a point in its owning [`SymMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

/// Interned label; an index into the alphabet of a [`SymMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u32);

/// A subset of the points of a map, stored as a bitset.
///
/// Subsets order lexicographically by their sorted member lists, so sorting
/// disjoint parts orders them by smallest member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSubset(FixedBitSet);

impl PointSubset {
    pub fn empty(universe: usize) -> Self {
        PointSubset(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSubset(bits)
    }

    pub fn singleton(universe: usize, p: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(p);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::empty(universe);
        for p in items {
            s.insert(p);
        }
        s
    }

    /// Size of the ground set this subset lives in.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, p: usize) {
        self.0.insert(p);
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &PointSubset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &PointSubset) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    /// Two sets overlap when they intersect and neither contains the other.
    pub fn overlaps(&self, other: &PointSubset) -> bool {
        self.intersects(other) && !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn union_with(&mut self, other: &PointSubset) {
        self.0.union_with(&other.0);
    }

    /// Trivial modules: the empty set, singletons and the full set.
    pub fn is_trivial(&self) -> bool {
        let k = self.len();
        k <= 1 || k == self.universe()
    }
}

impl Ord for PointSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for PointSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Outcome of checking the symbolic-ultrametric axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UltrametricVerdict {
    Ultrametric,
    /// Four points `x, y, u, v` with `xy = yu = uv` differing from `yv = xv = xu`.
    ViolatesU1([PointId; 4]),
    /// Three points whose pairs carry three distinct labels.
    ViolatesU2([PointId; 3]),
}

impl UltrametricVerdict {
    pub fn is_ultrametric(&self) -> bool {
        matches!(self, UltrametricVerdict::Ultrametric)
    }
}

/// A total symmetric labeling of all unordered pairs of distinct points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMap {
    names: Vec<String>,
    alphabet: Vec<String>,
    // Condensed upper triangle, row-major over x < y.
    labels: Vec<Label>,
}

fn pair_index(n: usize, x: usize, y: usize) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl SymMap {
    /// Builds a map from point names and `(x, y, label)` entries.
    ///
    /// Points are sorted by name and labels are interned in sorted order, so
    /// the result does not depend on input ordering.
    pub fn build<P, E>(points: &[P], entries: &[(E, E, E)]) -> Result<SymMap>
    where
        P: AsRef<str>,
        E: AsRef<str>,
    {
        Self::build_with_alphabet(points, &[] as &[&str], entries)
    }

    /// Like [`SymMap::build`], additionally registering `declared` labels in the
    /// alphabet even when no pair uses them.
    pub fn build_with_alphabet<P, L, E>(
        points: &[P],
        declared: &[L],
        entries: &[(E, E, E)],
    ) -> Result<SymMap>
    where
        P: AsRef<str>,
        L: AsRef<str>,
        E: AsRef<str>,
    {
        let mut names: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePoint(w[0].clone()));
            }
        }
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

        let mut alphabet: BTreeSet<String> = BTreeSet::new();
        for l in declared {
            alphabet.insert(l.as_ref().to_string());
        }
        for (_, _, l) in entries {
            alphabet.insert(l.as_ref().to_string());
        }
        if alphabet.contains(PRIME_LABEL) {
            return Err(Error::ReservedLabel(PRIME_LABEL.to_string()));
        }
        let alphabet: Vec<String> = alphabet.into_iter().collect();
        let label_of: BTreeMap<&str, Label> = alphabet
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), Label(i as u32)))
            .collect();

        let n = names.len();
        let mut slots: Vec<Option<Label>> = vec![None; n * n.saturating_sub(1) / 2];
        for (x, y, l) in entries {
            let (x, y) = (x.as_ref(), y.as_ref());
            let xi = *index.get(x).ok_or_else(|| Error::UnknownPoint(x.to_string()))?;
            let yi = *index.get(y).ok_or_else(|| Error::UnknownPoint(y.to_string()))?;
            if xi == yi {
                return Err(Error::SelfPair(x.to_string()));
            }
            let label = label_of[l.as_ref()];
            let slot = &mut slots[pair_index(n, xi, yi)];
            match slot {
                Some(prev) if *prev != label => {
                    let (a, b) = if xi < yi { (xi, yi) } else { (yi, xi) };
                    return Err(Error::ConflictingEntry(names[a].clone(), names[b].clone()));
                }
                _ => *slot = Some(label),
            }
        }

        let mut labels = Vec::with_capacity(slots.len());
        for x in 0..n {
            for y in x + 1..n {
                match slots[pair_index(n, x, y)] {
                    Some(l) => labels.push(l),
                    None => return Err(Error::MissingPair(names[x].clone(), names[y].clone())),
                }
            }
        }
        Ok(SymMap { names, alphabet, labels })
    }

    /// Builds a map directly from a labeling function over point indices.
    ///
    /// Point order is taken as given. `label(x, y)` is only queried for
    /// `x < y` and must return ids below `alphabet.len()`.
    pub fn from_fn<F>(names: Vec<String>, alphabet: Vec<String>, mut label: F) -> SymMap
    where
        F: FnMut(usize, usize) -> Label,
    {
        let n = names.len();
        let mut labels = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for x in 0..n {
            for y in x + 1..n {
                let l = label(x, y);
                assert!((l.0 as usize) < alphabet.len(), "label id out of range");
                labels.push(l);
            }
        }
        SymMap { names, alphabet, labels }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn point(&self, name: &str) -> Option<PointId> {
        self.names.iter().position(|n| n == name).map(PointId)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn label_name(&self, l: Label) -> &str {
        &self.alphabet[l.0 as usize]
    }

    pub fn label_id(&self, name: &str) -> Option<Label> {
        self.alphabet.iter().position(|a| a == name).map(|i| Label(i as u32))
    }

    /// Label of the pair `{x, y}`. Panics when `x == y`.
    pub fn label(&self, x: usize, y: usize) -> Label {
        assert_ne!(x, y, "pairs must be irreflexive");
        self.labels[pair_index(self.len(), x, y)]
    }

    pub fn pair_count(&self) -> usize {
        self.labels.len()
    }

    /// All pairs `(x, y, label)` with `x < y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y, self.label(x, y))))
    }

    /// Labels that occur on at least one pair.
    pub fn used_labels(&self) -> Vec<Label> {
        let set: BTreeSet<Label> = self.labels.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn full_set(&self) -> PointSubset {
        PointSubset::full(self.len())
    }

    fn check_subset(&self, s: &PointSubset) -> Result<()> {
        if s.universe() != self.len() {
            return Err(Error::SubsetOutOfRange);
        }
        Ok(())
    }

    /// Restriction to the points of `subset`, keeping their names and labels.
    pub fn restrict(&self, subset: &PointSubset) -> Result<SymMap> {
        self.check_subset(subset)?;
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let members = subset.to_vec();
        let names = members.iter().map(|&p| self.names[p].clone()).collect();
        Ok(SymMap::from_fn(names, self.alphabet.clone(), |a, b| {
            self.label(members[a], members[b])
        }))
    }

    /// Whether every outside point sees a single label towards all of `m`.
    /// Empty sets, singletons and the full set are modules.
    pub fn is_module(&self, m: &PointSubset) -> bool {
        let Some(reference) = m.first() else {
            return true;
        };
        (0..self.len()).filter(|&z| !m.contains(z)).all(|z| {
            let seen = self.label(z, reference);
            m.iter().all(|x| self.label(z, x) == seen)
        })
    }

    /// Smallest module inside `domain` containing `seed`, or `None` when the
    /// growing set reaches a point of `stop`.
    ///
    /// `seed` must be non-empty and inside `domain`.
    pub(crate) fn closure_within(
        &self,
        domain: &PointSubset,
        seed: &[usize],
        stop: Option<&PointSubset>,
    ) -> Option<PointSubset> {
        let reference = seed[0];
        let mut members = PointSubset::empty(self.len());
        let mut queue = VecDeque::new();
        for &s in seed {
            if !members.contains(s) {
                members.insert(s);
                queue.push_back(s);
            }
        }
        if let Some(stop) = stop {
            if members.intersects(stop) {
                return None;
            }
        }
        let outside: Vec<usize> = domain.iter().filter(|&z| !members.contains(z)).collect();
        let mut pending = outside;
        while let Some(u) = queue.pop_front() {
            if u == reference {
                continue;
            }
            let mut keep = Vec::with_capacity(pending.len());
            for z in pending {
                if self.label(z, u) != self.label(z, reference) {
                    if stop.is_some_and(|s| s.contains(z)) {
                        return None;
                    }
                    members.insert(z);
                    queue.push_back(z);
                } else {
                    keep.push(z);
                }
            }
            pending = keep;
        }
        Some(members)
    }

    /// The unique smallest module containing both `x` and `y`.
    pub fn minimal_module(&self, x: PointId, y: PointId) -> Result<PointSubset> {
        if x == y {
            return Err(Error::SamePoint);
        }
        if x.0 >= self.len() || y.0 >= self.len() {
            return Err(Error::SubsetOutOfRange);
        }
        Ok(self
            .closure_within(&self.full_set(), &[x.0, y.0], None)
            .expect("closure without stop set always succeeds"))
    }

    /// Whether the module `m` overlaps no other module.
    pub fn is_strong_module(&self, m: &PointSubset) -> Result<bool> {
        self.check_subset(m)?;
        if !self.is_module(m) {
            return Err(Error::NotAModule);
        }
        if m.is_trivial() {
            return Ok(true);
        }
        let full = self.full_set();
        for x in m.iter() {
            for y in (0..self.len()).filter(|&y| !m.contains(y)) {
                let closure = self
                    .closure_within(&full, &[x, y], None)
                    .expect("closure without stop set always succeeds");
                if !m.is_subset(&closure) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Quotient over a partition of the points into modules.
    ///
    /// Each part becomes a point named `{members}`; the label between two
    /// parts is the label of any pair of representatives.
    pub fn quotient(&self, parts: &[PointSubset]) -> Result<SymMap> {
        let n = self.len();
        let mut covered = PointSubset::empty(n);
        for part in parts {
            self.check_subset(part)?;
            if part.is_empty() || covered.intersects(part) {
                return Err(Error::NotAPartition);
            }
            covered.union_with(part);
        }
        if !covered.is_full() {
            return Err(Error::NotAPartition);
        }
        if let Some(i) = parts.iter().position(|p| !self.is_module(p)) {
            return Err(Error::PartNotAModule(i));
        }
        let reps: Vec<usize> = parts.iter().map(|p| p.first().unwrap()).collect();
        if cfg!(debug_assertions) {
            for a in 0..parts.len() {
                for b in a + 1..parts.len() {
                    let l = self.label(reps[a], reps[b]);
                    debug_assert!(parts[a]
                        .iter()
                        .all(|x| parts[b].iter().all(|y| self.label(x, y) == l)));
                }
            }
        }
        let names = parts.iter().map(|p| self.subset_name(p)).collect();
        Ok(SymMap::from_fn(names, self.alphabet.clone(), |a, b| {
            self.label(reps[a], reps[b])
        }))
    }

    /// Display name of a subset, e.g. `{c,d,e}`.
    pub fn subset_name(&self, s: &PointSubset) -> String {
        let inner: Vec<&str> = s.iter().map(|p| self.names[p].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// All pairs carry the same label. Maps with at most one pair are complete.
    pub fn is_complete(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] == w[1])
    }

    /// Only trivial modules exist. Maps on at most two points are not prime.
    pub fn is_prime(&self) -> bool {
        let n = self.len();
        if n <= 2 {
            return false;
        }
        let full = self.full_set();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                self.closure_within(&full, &[x, y], None)
                    .is_some_and(|m| m.is_full())
            })
        })
    }

    /// Checks the two symbolic-ultrametric axioms, returning the first
    /// violating tuple in lexicographic order (three-label triples first).
    pub fn ultrametric_check(&self) -> UltrametricVerdict {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let (a, b, c) = (self.label(x, y), self.label(x, z), self.label(y, z));
                    if a != b && a != c && b != c {
                        return UltrametricVerdict::ViolatesU2([PointId(x), PointId(y), PointId(z)]);
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if let Some(w) = self.u1_violation([a, b, c, d]) {
                            return UltrametricVerdict::ViolatesU1(w.map(PointId));
                        }
                    }
                }
            }
        }
        UltrametricVerdict::Ultrametric
    }

    // Tries every role assignment (x, y, u, v) of the quadruple.
    fn u1_violation(&self, quad: [usize; 4]) -> Option<[usize; 4]> {
        for i in 0..4 {
            for j in (0..4).filter(|&j| j != i) {
                for k in (0..4).filter(|&k| k != i && k != j) {
                    let l = 6 - i - j - k;
                    let [x, y, u, v] = [quad[i], quad[j], quad[k], quad[l]];
                    let path = self.label(x, y);
                    let other = self.label(y, v);
                    if path != other
                        && self.label(y, u) == path
                        && self.label(u, v) == path
                        && self.label(x, v) == other
                        && self.label(x, u) == other
                    {
                        return Some([x, y, u, v]);
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn delta4() -> SymMap {
        SymMap::build(
            &["a", "b", "c", "d"],
            &[
                ("a", "b", "blue"),
                ("a", "c", "blue"),
                ("b", "d", "blue"),
                ("b", "c", "red"),
                ("c", "d", "purple"),
                ("a", "d", "green"),
            ],
        )
        .unwrap()
    }

    pub(crate) fn delta5() -> SymMap {
        SymMap::build(
            &["a", "b", "c", "d", "e"],
            &[
                ("a", "b", "blue"),
                ("b", "c", "red"),
                ("b", "d", "red"),
                ("b", "e", "red"),
                ("a", "c", "purple"),
                ("a", "d", "purple"),
                ("a", "e", "purple"),
                ("c", "e", "purple"),
                ("c", "d", "green"),
                ("d", "e", "green"),
            ],
        )
        .unwrap()
    }

    fn set(d: &SymMap, names: &[&str]) -> PointSubset {
        PointSubset::from_indices(d.len(), names.iter().map(|n| d.point(n).unwrap().0))
    }

    fn lab<'a>(d: &'a SymMap, x: &str, y: &str) -> &'a str {
        d.label_name(d.label(d.point(x).unwrap().0, d.point(y).unwrap().0))
    }

    #[test]
    fn build_smallest_map() {
        let d = SymMap::build(&["a", "b"], &[("a", "b", "blue")]).unwrap();
        assert_eq!(d.pair_count(), 1);
        assert_eq!(lab(&d, "b", "a"), "blue");
    }

    #[test]
    fn build_sorts_points_and_checks_totality() {
        let d = SymMap::build(&["c", "a", "b"], &[("c", "a", "x"), ("b", "a", "y"), ("b", "c", "x")])
            .unwrap();
        assert_eq!(d.names(), ["a", "b", "c"]);
        assert_eq!(d.pair_count(), 3);

        let err = SymMap::build(&["a", "b", "c"], &[("a", "b", "x"), ("a", "c", "x")]).unwrap_err();
        assert_eq!(err, Error::MissingPair("b".into(), "c".into()));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            SymMap::build(&["a", "b"], &[("a", "b", "x"), ("b", "a", "y")]).unwrap_err(),
            Error::ConflictingEntry("a".into(), "b".into())
        );
        // repeated identical entries are fine
        assert!(SymMap::build(&["a", "b"], &[("a", "b", "x"), ("b", "a", "x")]).is_ok());
        assert_eq!(
            SymMap::build(&["a", "a"], &[("a", "a", "x")]).unwrap_err(),
            Error::DuplicatePoint("a".into())
        );
        assert_eq!(
            SymMap::build(&["a", "b"], &[("a", "b", "prime")]).unwrap_err(),
            Error::ReservedLabel("prime".into())
        );
        assert_eq!(
            SymMap::build(&["a", "b"], &[("a", "q", "x")]).unwrap_err(),
            Error::UnknownPoint("q".into())
        );
    }

    #[test]
    fn delta4_labels() {
        let d = delta4();
        assert_eq!(lab(&d, "a", "b"), "blue");
        assert_eq!(lab(&d, "d", "b"), "blue");
        assert_eq!(lab(&d, "a", "d"), "green");
        assert_eq!(d.pair_count(), 6);
    }

    #[test]
    fn restrict_examples() {
        let d = delta5();
        let r = d.restrict(&set(&d, &["c", "d", "e"])).unwrap();
        assert_eq!(r.names(), ["c", "d", "e"]);
        assert_eq!(lab(&r, "c", "d"), "green");
        assert_eq!(lab(&r, "d", "e"), "green");
        assert_eq!(lab(&r, "c", "e"), "purple");

        assert_eq!(d.restrict(&d.full_set()).unwrap(), d);
        assert_eq!(d.restrict(&set(&d, &["a"])).unwrap().pair_count(), 0);
        assert_eq!(d.restrict(&PointSubset::empty(5)).unwrap_err(), Error::EmptySubset);
    }

    #[test]
    fn module_examples() {
        let d = delta5();
        assert!(d.is_module(&set(&d, &["c", "e"])));
        assert!(!d.is_module(&set(&d, &["c", "d"])));
        assert!(d.is_module(&d.full_set()));
        assert!(d.is_module(&PointSubset::empty(5)));
        assert!(d.is_module(&set(&d, &["b"])));
    }

    #[test]
    fn minimal_module_examples() {
        let d = delta5();
        let p = |n| d.point(n).unwrap();
        assert_eq!(d.minimal_module(p("c"), p("e")).unwrap(), set(&d, &["c", "e"]));
        assert_eq!(d.minimal_module(p("c"), p("d")).unwrap(), set(&d, &["c", "d", "e"]));
        assert_eq!(d.minimal_module(p("a"), p("b")).unwrap(), d.full_set());
        assert_eq!(d.minimal_module(p("a"), p("a")).unwrap_err(), Error::SamePoint);
    }

    #[test]
    fn strong_module_examples() {
        let d = delta5();
        assert!(d.is_strong_module(&set(&d, &["c", "d", "e"])).unwrap());
        assert!(d.is_strong_module(&set(&d, &["c", "e"])).unwrap());
        assert_eq!(d.is_strong_module(&set(&d, &["c", "d"])).unwrap_err(), Error::NotAModule);

        let k3 = SymMap::build(&["a", "b", "c"], &[("a", "b", "x"), ("a", "c", "x"), ("b", "c", "x")])
            .unwrap();
        assert!(!k3.is_strong_module(&set(&k3, &["a", "b"])).unwrap());
        assert!(k3.is_strong_module(&k3.full_set()).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let d = delta5();
        let parts = vec![set(&d, &["a"]), set(&d, &["b"]), set(&d, &["c", "d", "e"])];
        let q = d.quotient(&parts).unwrap();
        assert_eq!(q.names(), ["{a}", "{b}", "{c,d,e}"]);
        assert_eq!(q.label_name(q.label(0, 1)), "blue");
        assert_eq!(q.label_name(q.label(0, 2)), "purple");
        assert_eq!(q.label_name(q.label(1, 2)), "red");
        assert!(q.is_prime());
        assert!(!q.is_complete());

        let singletons: Vec<_> = (0..5).map(|p| PointSubset::singleton(5, p)).collect();
        let fine = d.quotient(&singletons).unwrap();
        assert!(fine.pairs().zip(d.pairs()).all(|(a, b)| a == b));

        assert_eq!(d.quotient(&[d.full_set()]).unwrap().pair_count(), 0);

        assert_eq!(
            d.quotient(&[set(&d, &["a", "b"]), set(&d, &["c", "d", "e"])]).unwrap_err(),
            Error::PartNotAModule(0)
        );
        assert_eq!(d.quotient(&[set(&d, &["a", "b"])]).unwrap_err(), Error::NotAPartition);
        assert_eq!(
            d.quotient(&[set(&d, &["a", "b"]), set(&d, &["b", "c", "d", "e"])]).unwrap_err(),
            Error::NotAPartition
        );
    }

    #[test]
    fn complete_and_prime() {
        let d = delta5();
        let cde = d.restrict(&set(&d, &["c", "d", "e"])).unwrap();
        let q = cde
            .quotient(&[set(&cde, &["c", "e"]), set(&cde, &["d"])])
            .unwrap();
        assert!(q.is_complete());
        assert!(!d.is_complete());
        let two = SymMap::build(&["a", "b"], &[("a", "b", "blue")]).unwrap();
        assert!(two.is_complete());
        assert!(!two.is_prime());

        let k3 = SymMap::build(&["a", "b", "c"], &[("a", "b", "x"), ("a", "c", "x"), ("b", "c", "x")])
            .unwrap();
        assert!(!k3.is_prime());
        assert!(!d.is_prime());
    }

    #[test]
    fn ultrametric_examples() {
        let d = delta5();
        let abc = [PointId(0), PointId(1), PointId(2)];
        assert_eq!(d.ultrametric_check(), UltrametricVerdict::ViolatesU2(abc));

        let k4 = SymMap::from_fn(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec!["x".into()],
            |_, _| Label(0),
        );
        assert!(k4.ultrametric_check().is_ultrametric());
        assert!(!delta4().ultrametric_check().is_ultrametric());
    }

    #[test]
    fn u1_detects_two_colored_path() {
        // path a-b-c-d in "p", complement in "q"
        let d = SymMap::build(
            &["a", "b", "c", "d"],
            &[
                ("a", "b", "p"),
                ("b", "c", "p"),
                ("c", "d", "p"),
                ("b", "d", "q"),
                ("a", "d", "q"),
                ("a", "c", "q"),
            ],
        )
        .unwrap();
        assert!(matches!(d.ultrametric_check(), UltrametricVerdict::ViolatesU1(_)));

        // path a-c-b-d, which puts the pattern in a different role assignment
        let d = SymMap::build(
            &["a", "b", "c", "d"],
            &[
                ("a", "c", "p"),
                ("c", "b", "p"),
                ("b", "d", "p"),
                ("c", "d", "q"),
                ("a", "d", "q"),
                ("a", "b", "q"),
            ],
        )
        .unwrap();
        assert!(matches!(d.ultrametric_check(), UltrametricVerdict::ViolatesU1(_)));
    }
}
