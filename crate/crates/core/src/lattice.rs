//! Finite posets, distributive lattices and their Heyting structure.
//!
//! Elements are dense indices. Implication and pseudo-complement are derived
//! from the meet/join tables on every call; nothing Heyting-specific is stored.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Default cap on the number of lattice elements accepted by [`validate_lattice`].
pub const DEFAULT_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    n: usize,
    up: Vec<BitSet>,
    labels: Vec<String>,
}

impl FinPoset {
    /// Reflexive-transitive closure of `pairs` (each `(a, b)` meaning `a ≤ b`),
    /// rejected when antisymmetry fails.
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<FinPoset> {
        let n = labels.len();
        let mut up: Vec<BitSet> = (0..n).map(|a| BitSet::from_indices(n, [a])).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("pair ({a}, {b}) out of range")));
            }
            up[a].insert(b);
        }
        // Warshall
        for k in 0..n {
            let row = up[k].clone();
            for a in 0..n {
                if up[a].contains(k) {
                    up[a].union_with(&row);
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if up[a].contains(b) && up[b].contains(a) {
                    return Err(Error::NotAPoset(format!(
                        "{} and {} are distinct but mutually related",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        Ok(FinPoset { n, up, labels })
    }

    /// From a complete order test, checked.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinPoset> {
        let labels = (0..n).map(|i| format!("{i}")).collect();
        let up: Vec<BitSet> = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq(a, b))))
            .collect();
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(Error::NotAPoset(format!("{a} is not below itself")));
            }
            for b in 0..n {
                if a != b && up[a].contains(b) && up[b].contains(a) {
                    return Err(Error::NotAPoset(format!("{a} and {b} are mutually related")));
                }
                if up[a].contains(b) && !up[b].is_subset(&up[a]) {
                    return Err(Error::NotAPoset(format!("transitivity fails through {b}")));
                }
            }
        }
        Ok(FinPoset { n, up, labels })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// All downward-closed subsets, smallest first by `(size, bits)`.
    pub fn downsets(&self) -> Vec<BitSet> {
        let n = self.n;
        let mut seen = alloc::collections::BTreeSet::new();
        let mut frontier = vec![BitSet::new(n)];
        seen.insert(BitSet::new(n));
        while let Some(d) = frontier.pop() {
            for a in 0..n {
                if d.contains(a) {
                    continue;
                }
                // a can be added when everything strictly below it is present
                if (0..n).all(|b| b == a || !self.leq(b, a) || d.contains(b)) {
                    let mut e = d.clone();
                    e.insert(a);
                    if seen.insert(e.clone()) {
                        frontier.push(e);
                    }
                }
            }
        }
        let mut out: Vec<BitSet> = seen.into_iter().collect();
        out.sort_by_key(|d| (d.count(), d.iter().collect::<Vec<_>>()));
        out
    }
}

/// A finite lattice with precomputed meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

/// Bounds and lattice tables of an order, or the first pair lacking a meet or join.
fn tables(
    n: usize,
    up: &[BitSet],
    down: &[BitSet],
) -> core::result::Result<(Vec<u16>, Vec<u16>), (usize, usize)> {
    let dcount: Vec<usize> = down.iter().map(BitSet::count).collect();
    let ucount: Vec<usize> = up.iter().map(BitSet::count).collect();
    let mut meet = vec![0u16; n * n];
    let mut join = vec![0u16; n * n];
    for a in 0..n {
        for b in a..n {
            let lower = down[a].intersection(&down[b]);
            let lc = lower.count();
            let Some(m) = lower.iter().find(|&z| dcount[z] == lc) else {
                return Err((a, b));
            };
            let upper = up[a].intersection(&up[b]);
            let uc = upper.count();
            let Some(j) = upper.iter().find(|&z| ucount[z] == uc) else {
                return Err((a, b));
            };
            meet[a * n + b] = m as u16;
            meet[b * n + a] = m as u16;
            join[a * n + b] = j as u16;
            join[b * n + a] = j as u16;
        }
    }
    Ok((meet, join))
}

/// Check that a finite poset is a distributive lattice and build its tables.
pub fn validate_lattice(poset: &FinPoset) -> Result<FinLattice> {
    validate_lattice_capped(poset, DEFAULT_CAP)
}

pub fn validate_lattice_capped(poset: &FinPoset, cap: usize) -> Result<FinLattice> {
    let l = FinLattice::build(poset.n, poset.up.clone(), Some(poset.labels.clone()), cap)?;
    if let Some((x, y, z)) = l.distributivity_failure() {
        return Err(Error::NotDistributive {
            x: l.label(x),
            y: l.label(y),
            z: l.label(z),
        });
    }
    Ok(l)
}

impl FinLattice {
    fn build(n: usize, up: Vec<BitSet>, labels: Option<Vec<String>>, cap: usize) -> Result<FinLattice> {
        if n == 0 {
            return Err(Error::InvalidInput("a lattice needs at least one element".into()));
        }
        if n > cap || n > u16::MAX as usize {
            return Err(Error::SizeExceeded {
                what: "lattice",
                limit: cap,
            });
        }
        let mut down = vec![BitSet::new(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        let name = |i: usize| match &labels {
            Some(l) => l[i].clone(),
            None => format!("{i}"),
        };
        let (meet, join) = tables(n, &up, &down).map_err(|(a, b)| Error::NotALattice {
            a: name(a),
            b: name(b),
        })?;
        let bottom = (0..n).find(|&a| up[a].is_full()).ok_or(Error::NotALattice {
            a: name(0),
            b: name(0),
        })?;
        let top = (0..n).find(|&a| down[a].is_full()).ok_or(Error::NotALattice {
            a: name(0),
            b: name(0),
        })?;
        Ok(FinLattice {
            n,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            labels,
        })
    }

    /// Lattice from an order test, with the given cap. Distributivity is not
    /// checked; see [`FinLattice::distributivity_failure`].
    pub fn from_leq(n: usize, cap: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinLattice> {
        let up = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| leq(a, b))))
            .collect();
        FinLattice::build(n, up, None, cap)
    }

    /// The lattice of downsets of a poset, ordered by inclusion.
    pub fn of_downsets(poset: &FinPoset) -> FinLattice {
        let ds = poset.downsets();
        let labels = ds
            .iter()
            .map(|d| {
                let names: Vec<&str> = d.iter().map(|a| poset.label(a)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let up = (0..ds.len())
            .map(|a| BitSet::from_indices(ds.len(), (0..ds.len()).filter(|&b| ds[a].is_subset(&ds[b]))))
            .collect();
        FinLattice::build(ds.len(), up, Some(labels), usize::MAX).expect("downsets form a lattice")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("{a}"),
        }
    }

    pub fn element_named(&self, name: &str) -> Option<usize> {
        (0..self.n).find(|&a| self.label(a) == name)
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Elements below `a`, as a bitset.
    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// First triple `(x, y, z)` with `x∧(y∨z) ≠ (x∧y)∨(x∧z)`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        if self.join_irreducibles_are_prime() {
            return None;
        }
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    let l = self.meet(x, self.join(y, z));
                    let r = self.join(self.meet(x, y), self.meet(x, z));
                    if l != r {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `j ≤ a∨b` forces `j ≤ a` or `j ≤ b` for every join-irreducible `j`;
    /// on a finite lattice this is equivalent to distributivity.
    fn join_irreducibles_are_prime(&self) -> bool {
        self.join_irreducibles().into_iter().all(|j| {
            let up = &self.up[j];
            (0..self.n)
                .filter(|&a| !up.contains(a))
                .all(|a| (a..self.n).all(|b| up.contains(b) || !up.contains(self.join(a, b))))
        })
    }

    /// `a → b`: the join of every `z` with `z ∧ a ≤ b`.
    pub fn implies(&self, a: usize, b: usize) -> usize {
        let mut r = self.bottom;
        for z in 0..self.n {
            if self.leq(self.meet(z, a), b) {
                r = self.join(r, z);
            }
        }
        r
    }

    /// `¬a = a → 0`.
    pub fn neg(&self, a: usize) -> usize {
        self.implies(a, self.bottom)
    }

    pub fn neg_table(&self) -> Vec<usize> {
        (0..self.n).map(|a| self.neg(a)).collect()
    }

    /// Elements covering nothing but one element: the join-irreducibles.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| {
                a != self.bottom && {
                    let below: Vec<usize> = self.down[a].iter().filter(|&b| b != a).collect();
                    // a is irreducible iff the strict downset has a greatest element
                    let j = self.join_all(below.iter().copied());
                    j != a
                }
            })
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| a != self.bottom && self.down[a].count() == 2)
            .collect()
    }

    /// The sublattice-as-order on `elems` (indices into `self`), with the
    /// order inherited. Fails when the induced order is not a lattice.
    pub fn restrict(&self, elems: &[usize]) -> Result<FinLattice> {
        let k = elems.len();
        let up = (0..k)
            .map(|i| BitSet::from_indices(k, (0..k).filter(|&j| self.leq(elems[i], elems[j]))))
            .collect();
        let labels = elems.iter().map(|&e| self.label(e)).collect();
        FinLattice::build(k, up, Some(labels), usize::MAX)
    }

    /// The lattice of ideals of this lattice. Internal helper for
    /// [`ideals`]; returns each ideal as a subset of the elements.
    fn ideal_sets(&self) -> Vec<BitSet> {
        let n = self.n;
        let generate = |s: &BitSet| -> BitSet {
            // close under joins, then downwards
            let mut cur = s.clone();
            loop {
                let mut next = cur.clone();
                let members: Vec<usize> = cur.iter().collect();
                for &a in &members {
                    next.union_with(&self.down[a]);
                    for &b in &members {
                        next.insert(self.join(a, b));
                    }
                }
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        };
        let start = generate(&BitSet::from_indices(n, [self.bottom]));
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for a in 0..n {
                if !i.contains(a) {
                    let mut s = i.clone();
                    s.insert(a);
                    let j = generate(&s);
                    if seen.insert(j.clone()) {
                        stack.push(j);
                    }
                }
            }
        }
        let mut out: Vec<BitSet> = seen.into_iter().collect();
        out.sort_by_key(|d| (d.count(), d.iter().collect::<Vec<_>>()));
        out
    }
}

/// Verdict of [`is_stone`]: on failure `x` witnesses `¬x∨¬¬x ≠ 1` and
/// `pair` witnesses `¬(x∧y) ≠ ¬x∨¬y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoneVerdict {
    pub holds: bool,
    pub x: Option<usize>,
    pub pair: Option<(usize, usize)>,
}

/// Both Stone criteria, evaluated independently and required to agree.
pub fn is_stone(l: &FinLattice) -> Result<StoneVerdict> {
    let neg = l.neg_table();
    let x = (0..l.len()).find(|&x| l.join(neg[x], neg[neg[x]]) != l.top());
    let pair = (0..l.len())
        .flat_map(|x| (0..l.len()).map(move |y| (x, y)))
        .find(|&(x, y)| neg[l.meet(x, y)] != l.join(neg[x], neg[y]));
    if x.is_some() != pair.is_some() {
        return Err(Error::CriteriaDisagree {
            element: match (x, pair) {
                (Some(x), _) => l.label(x),
                (_, Some((a, b))) => format!("({}, {})", l.label(a), l.label(b)),
                _ => unreachable!(),
            },
        });
    }
    Ok(StoneVerdict {
        holds: x.is_none(),
        x,
        pair,
    })
}

pub fn is_boolean(l: &FinLattice) -> bool {
    boolean_failure(l).is_none()
}

/// First `x` with `x ∨ ¬x ≠ 1`.
pub fn boolean_failure(l: &FinLattice) -> Option<usize> {
    (0..l.len()).find(|&x| l.join(x, l.neg(x)) != l.top())
}

/// The property `I_r`: for every `r+1` pairwise disjoint elements the
/// pseudo-complements join to the top. Returns the first failing tuple.
pub fn lee_property(l: &FinLattice, r: usize) -> core::result::Result<(), Vec<usize>> {
    assert!(r >= 1, "lee_property needs r >= 1");
    let neg = l.neg_table();
    let nonzero: Vec<usize> = (0..l.len()).filter(|&x| x != l.bottom()).collect();
    fn rec(
        l: &FinLattice,
        neg: &[usize],
        cands: &[usize],
        want: usize,
        start: usize,
        tuple: &mut Vec<usize>,
    ) -> bool {
        if tuple.len() == want {
            let j = l.join_all(tuple.iter().map(|&x| neg[x]));
            return j != l.top();
        }
        for i in start..cands.len() {
            let c = cands[i];
            if tuple.iter().all(|&t| l.meet(t, c) == l.bottom()) {
                tuple.push(c);
                if rec(l, neg, cands, want, i + 1, tuple) {
                    return true;
                }
                tuple.pop();
            }
        }
        false
    }
    let mut tuple = Vec::new();
    if rec(l, &neg, &nonzero, r + 1, 0, &mut tuple) {
        Err(tuple)
    } else {
        Ok(())
    }
}

/// `{z : z ≤ x}` as a lattice, with the embedding into `l`. Asserts that its
/// implication is `(a → b) ∧ x` and its double negation `¬¬a ∧ x`.
pub fn down_algebra(l: &FinLattice, x: usize) -> Result<(FinLattice, Vec<usize>)> {
    let elems: Vec<usize> = l.down_set(x).iter().collect();
    let sub = l.restrict(&elems)?;
    for (i, &a) in elems.iter().enumerate() {
        let nn_sub = elems[sub.neg(sub.neg(i))];
        if nn_sub != l.meet(l.neg(l.neg(a)), x) {
            return Err(Error::CertificateFailure {
                axiom: "double negation in a down algebra",
                witness: l.label(a),
            });
        }
        for (j, &b) in elems.iter().enumerate() {
            if elems[sub.implies(i, j)] != l.meet(l.implies(a, b), x) {
                return Err(Error::CertificateFailure {
                    axiom: "implication in a down algebra",
                    witness: format!("({}, {})", l.label(a), l.label(b)),
                });
            }
        }
    }
    Ok((sub, elems))
}

/// The Boolean algebra of `¬¬`-fixed elements, with its embedding. Its join is
/// asserted to be `¬¬(x ∨ y)`.
pub fn regular_elements(l: &FinLattice) -> Result<(FinLattice, Vec<usize>)> {
    let neg = l.neg_table();
    let elems: Vec<usize> = (0..l.len()).filter(|&x| neg[neg[x]] == x).collect();
    let sub = l.restrict(&elems)?;
    for i in 0..elems.len() {
        for j in 0..elems.len() {
            let j_l = neg[neg[l.join(elems[i], elems[j])]];
            if elems[sub.join(i, j)] != j_l || elems[sub.meet(i, j)] != l.meet(elems[i], elems[j]) {
                return Err(Error::CertificateFailure {
                    axiom: "regular join is double negation of join",
                    witness: format!("({}, {})", l.label(elems[i]), l.label(elems[j])),
                });
            }
        }
    }
    if let Some(x) = boolean_failure(&sub) {
        return Err(Error::CertificateFailure {
            axiom: "regular elements form a Boolean algebra",
            witness: sub.label(x),
        });
    }
    Ok((sub, elems))
}

/// The lattice of ideals ordered by inclusion, with each ideal as an element
/// set. Every ideal of a finite lattice is asserted principal, and the
/// principal map `a ↦ ↓a` is asserted to be an isomorphism; `principal[a]` is
/// the index of `↓a`.
pub struct Ideals {
    pub lattice: FinLattice,
    pub sets: Vec<BitSet>,
    pub principal: Vec<usize>,
}

pub fn ideals(l: &FinLattice) -> Result<Ideals> {
    let sets = l.ideal_sets();
    let k = sets.len();
    let up = (0..k)
        .map(|a| BitSet::from_indices(k, (0..k).filter(|&b| sets[a].is_subset(&sets[b]))))
        .collect();
    let labels = sets
        .iter()
        .map(|s| {
            let names: Vec<String> = s.iter().map(|a| l.label(a)).collect();
            format!("<{}>", names.join(","))
        })
        .collect();
    let lattice = FinLattice::build(k, up, Some(labels), usize::MAX)?;
    let mut index = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        index.insert(s.clone(), i);
    }
    let mut principal = vec![0; l.len()];
    for a in 0..l.len() {
        match index.get(l.down_set(a)) {
            Some(&i) => principal[a] = i,
            None => {
                return Err(Error::CertificateFailure {
                    axiom: "principal downset is an ideal",
                    witness: l.label(a),
                })
            }
        }
    }
    for s in &sets {
        let top = l.join_all(s.iter());
        if s != l.down_set(top) {
            return Err(Error::CertificateFailure {
                axiom: "ideals of a finite lattice are principal",
                witness: s.iter().map(|a| l.label(a)).collect::<Vec<_>>().join(","),
            });
        }
    }
    if k != l.len() {
        return Err(Error::CertificateFailure {
            axiom: "principal ideals exhaust the ideal lattice",
            witness: format!("{} ideals for {} elements", k, l.len()),
        });
    }
    Ok(Ideals {
        lattice,
        sets,
        principal,
    })
}

/// Per-element witnesses of regularity: pairs `(l_i, t_i)` with
/// `t_i ∧ l_i = 0`, `t_i ∨ l = 1` whose `l_i` join to `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularVerdict {
    pub holds: bool,
    pub witnesses: Vec<Vec<(usize, usize)>>,
    pub failure: Option<usize>,
}

pub fn is_regular_frame(l: &FinLattice) -> RegularVerdict {
    let mut witnesses = Vec::with_capacity(l.len());
    let mut failure = None;
    for x in 0..l.len() {
        let mut w = Vec::new();
        for k in l.down_set(x).iter() {
            if let Some(t) = (0..l.len())
                .find(|&t| l.meet(t, k) == l.bottom() && l.join(t, x) == l.top())
            {
                w.push((k, t));
            }
        }
        if l.join_all(w.iter().map(|&(k, _)| k)) != x && failure.is_none() {
            failure = Some(x);
        }
        witnesses.push(w);
    }
    RegularVerdict {
        holds: failure.is_none(),
        witnesses,
        failure,
    }
}

pub fn complemented_elements(l: &FinLattice) -> BitSet {
    BitSet::from_indices(
        l.len(),
        (0..l.len()).filter(|&x| {
            (0..l.len()).any(|y| l.meet(x, y) == l.bottom() && l.join(x, y) == l.top())
        }),
    )
}

/// Compactness by the directed-join definition: `x` is compact when every
/// ideal whose join lies above `x` already contains `x`.
pub fn compact_elements(l: &FinLattice) -> BitSet {
    let ideals = l.ideal_sets();
    BitSet::from_indices(
        l.len(),
        (0..l.len()).filter(|&x| {
            ideals
                .iter()
                .all(|i| !l.leq(x, l.join_all(i.iter())) || i.contains(x))
        }),
    )
}

/// Isomorphism test for finite distributive lattices, by comparing their
/// posets of join-irreducibles.
pub fn is_isomorphic(a: &FinLattice, b: &FinLattice) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ja = a.join_irreducibles();
    let jb = b.join_irreducibles();
    if ja.len() != jb.len() {
        return false;
    }
    let k = ja.len();
    let lea = |i: usize, j: usize| a.leq(ja[i], ja[j]);
    let leb = |i: usize, j: usize| b.leq(jb[i], jb[j]);
    let deg = |le: &dyn Fn(usize, usize) -> bool, i: usize| {
        ((0..k).filter(|&j| le(j, i)).count(), (0..k).filter(|&j| le(i, j)).count())
    };
    let da: Vec<_> = (0..k).map(|i| deg(&lea, i)).collect();
    let db: Vec<_> = (0..k).map(|i| deg(&leb, i)).collect();
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn rec(
        i: usize,
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        da: &[(usize, usize)],
        db: &[(usize, usize)],
        lea: &dyn Fn(usize, usize) -> bool,
        leb: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i == k {
            return true;
        }
        for j in 0..k {
            if used[j] || da[i] != db[j] {
                continue;
            }
            if (0..i).all(|p| lea(p, i) == leb(map[p], j) && lea(i, p) == leb(j, map[p])) {
                map[i] = j;
                used[j] = true;
                if rec(i + 1, k, map, used, da, db, lea, leb) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    rec(0, k, &mut map, &mut used, &da, &db, &lea, &leb)
}

pub mod fixtures {
    //! Standard small lattices.
    use super::*;
    use alloc::string::ToString;

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> FinLattice {
        FinLattice::from_leq(n, usize::MAX, |a, b| a <= b).unwrap()
    }

    /// The Boolean algebra of subsets of a `k`-element set, elements as bitmasks.
    pub fn boolean(k: usize) -> FinLattice {
        FinLattice::from_leq(1 << k, usize::MAX, |a, b| a & !b == 0).unwrap()
    }

    pub fn fork_poset() -> FinPoset {
        let labels = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        FinPoset::from_relation(labels, &[(0, 2), (1, 2)]).unwrap()
    }

    /// Downsets of `{x, y < z}`: `∅, {x}, {y}, {x,y}, {x,y,z}`.
    pub fn fork() -> FinLattice {
        FinLattice::of_downsets(&fork_poset())
    }

    /// The non-distributive pentagon `0 < a < b < 1`, `0 < c < 1`.
    pub fn pentagon_poset() -> FinPoset {
        let labels = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        FinPoset::from_relation(labels, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }
}
