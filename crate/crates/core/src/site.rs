//! Sieves, Grothendieck topologies and sheafification on finite sites.
//!
//! On a finite category the covering sieves of an object form a principal
//! filter, so a topology is stored as one minimal covering sieve per object;
//! `S` covers `c` exactly when it contains `minimal(c)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::fincat::{principal_image, Category};

/// A sieve on `target`, as a set of positions in `into(target)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sieve {
    pub target: usize,
    pub members: BitSet,
}

impl Sieve {
    pub fn empty<C: Category>(c: &C, target: usize) -> Sieve {
        Sieve {
            target,
            members: BitSet::new(c.incoming(target).len()),
        }
    }

    pub fn maximal<C: Category>(c: &C, target: usize) -> Sieve {
        Sieve {
            target,
            members: BitSet::full(c.incoming(target).len()),
        }
    }

    /// `↓f`, the sieve generated by one morphism.
    pub fn principal<C: Category>(c: &C, f: usize) -> Sieve {
        Sieve {
            target: c.cod(f),
            members: principal_image(c, f),
        }
    }

    pub fn contains<C: Category>(&self, c: &C, f: usize) -> bool {
        c.cod(f) == self.target && self.members.contains(c.local_index(f))
    }

    /// Member morphisms in increasing id order.
    pub fn morphisms<'a, C: Category>(&'a self, c: &'a C) -> impl Iterator<Item = usize> + 'a {
        let into = c.incoming(self.target);
        self.members.iter().map(move |i| into[i])
    }

    pub fn is_maximal(&self) -> bool {
        self.members.is_full()
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.target == other.target && self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &Sieve) -> Sieve {
        Sieve {
            target: self.target,
            members: self.members.union(&other.members),
        }
    }

    pub fn intersection(&self, other: &Sieve) -> Sieve {
        Sieve {
            target: self.target,
            members: self.members.intersection(&other.members),
        }
    }

    pub fn describe<C: Category>(&self, c: &C) -> String {
        let names: Vec<String> = self.morphisms(c).map(|m| c.morphism_label(m)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Whether a set of morphisms into `target` is closed under precomposition.
pub fn is_sieve<C: Category>(c: &C, target: usize, members: &BitSet) -> bool {
    let into = c.incoming(target);
    members.iter().all(|i| {
        let f = into[i];
        c.incoming(c.dom(f))
            .iter()
            .all(|&h| members.contains(c.local_index(c.compose(f, h))))
    })
}

/// Smallest sieve on `target` containing `family`.
pub fn generated_sieve<C: Category>(c: &C, target: usize, family: &[usize]) -> Result<Sieve> {
    let mut s = Sieve::empty(c, target);
    for &f in family {
        if c.cod(f) != target {
            return Err(Error::WrongCodomain {
                morphism: c.morphism_label(f),
            });
        }
        if !s.members.contains(c.local_index(f)) {
            s.members.union_with(&principal_image(c, f));
        }
    }
    Ok(s)
}

/// `f*(S) = {h : f∘h ∈ S}` on `dom f`.
pub fn pullback_sieve<C: Category>(c: &C, s: &Sieve, f: usize) -> Result<Sieve> {
    if c.cod(f) != s.target {
        return Err(Error::TargetMismatch {
            morphism: c.morphism_label(f),
        });
    }
    Ok(pullback_unchecked(c, s, f))
}

pub(crate) fn pullback_unchecked<C: Category>(c: &C, s: &Sieve, f: usize) -> Sieve {
    let d = c.dom(f);
    let into = c.incoming(d);
    let mut out = BitSet::new(into.len());
    for (i, &h) in into.iter().enumerate() {
        if s.members.contains(c.local_index(c.compose(f, h))) {
            out.insert(i);
        }
    }
    Sieve {
        target: d,
        members: out,
    }
}

/// The sieve generated by `{f∘h : f ∈ s, h ∈ inner[dom f]}`.
fn compose_sieves<C: Category>(c: &C, s: &Sieve, inner: &[Sieve]) -> Sieve {
    let mut out = Sieve::empty(c, s.target);
    for f in s.morphisms(c) {
        for h in inner[c.dom(f)].morphisms(c) {
            out.members.insert(c.local_index(c.compose(f, h)));
        }
    }
    out
}

/// Every sieve on `target`, smallest first; fails above `limit`.
pub fn all_sieves<C: Category>(c: &C, target: usize, limit: usize) -> Result<Vec<Sieve>> {
    sieves_containing(c, &Sieve::empty(c, target), limit)
}

/// Every sieve containing `base`, smallest first; fails above `limit`.
pub fn sieves_containing<C: Category>(c: &C, base: &Sieve, limit: usize) -> Result<Vec<Sieve>> {
    let target = base.target;
    let gens: Vec<BitSet> = c.incoming(target).iter().map(|&f| principal_image(c, f)).collect();
    let mut seen = alloc::collections::BTreeSet::new();
    seen.insert(base.members.clone());
    let mut stack = vec![base.members.clone()];
    while let Some(s) = stack.pop() {
        for g in &gens {
            if !g.is_subset(&s) {
                let t = s.union(g);
                if seen.insert(t.clone()) {
                    if seen.len() > limit {
                        return Err(Error::SizeExceeded {
                            what: "sieve lattice",
                            limit,
                        });
                    }
                    stack.push(t);
                }
            }
        }
    }
    let mut out: Vec<Sieve> = seen
        .into_iter()
        .map(|members| Sieve { target, members })
        .collect();
    out.sort_by_key(|s| (s.members.count(), s.members.iter().collect::<Vec<_>>()));
    Ok(out)
}

/// A Grothendieck topology, by its minimal covering sieve on each object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothTopology {
    minimal: Vec<Sieve>,
}

impl GrothTopology {
    /// Only maximal sieves cover.
    pub fn trivial<C: Category>(c: &C) -> GrothTopology {
        GrothTopology {
            minimal: (0..c.object_count()).map(|o| Sieve::maximal(c, o)).collect(),
        }
    }

    pub fn minimal(&self, o: usize) -> &Sieve {
        &self.minimal[o]
    }

    pub fn covers(&self, s: &Sieve) -> bool {
        self.minimal[s.target].is_subset(s)
    }

    /// Whether the empty sieve covers `o`.
    pub fn empty_covers(&self, o: usize) -> bool {
        self.minimal[o].members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.minimal.iter().all(Sieve::is_maximal)
    }

    /// `self ⊆ other`: every `self`-cover is an `other`-cover.
    pub fn contained_in(&self, other: &GrothTopology) -> bool {
        self.minimal
            .iter()
            .zip(&other.minimal)
            .all(|(a, b)| b.is_subset(a))
    }

    /// Every covering sieve on `o`: the sieves containing the minimal one.
    pub fn covering_sieves<C: Category>(&self, c: &C, o: usize, limit: usize) -> Result<Vec<Sieve>> {
        sieves_containing(c, &self.minimal[o], limit)
    }

    /// Build from a covering predicate that is already known to define a
    /// topology: `u` lies in the minimal sieve iff the largest sieve avoiding
    /// `u` does not cover. The result is checked against the predicate on the
    /// minimal sieves and against the topology axioms.
    pub fn from_predicate<C: Category>(
        c: &C,
        mut covers: impl FnMut(&Sieve) -> bool,
    ) -> Result<GrothTopology> {
        let mut minimal = Vec::with_capacity(c.object_count());
        for o in 0..c.object_count() {
            let into = c.incoming(o);
            let gens: Vec<BitSet> = into.iter().map(|&f| principal_image(c, f)).collect();
            let mut m = BitSet::new(into.len());
            for u in 0..into.len() {
                let avoid = BitSet::from_indices(into.len(), (0..into.len()).filter(|&v| !gens[v].contains(u)));
                if !covers(&Sieve {
                    target: o,
                    members: avoid,
                }) {
                    m.insert(u);
                }
            }
            let s = Sieve { target: o, members: m };
            if !covers(&s) {
                return Err(Error::CertificateFailure {
                    axiom: "covering sieves are closed under intersection",
                    witness: c.object_label(o),
                });
            }
            minimal.push(s);
        }
        let j = GrothTopology { minimal };
        j.check_axioms(c)?;
        Ok(j)
    }

    /// Stability and transitivity, checked on the minimal sieves (which
    /// suffices for a principal family) and sieve-closure of each minimal sieve.
    pub fn check_axioms<C: Category>(&self, c: &C) -> Result<()> {
        for (o, m) in self.minimal.iter().enumerate() {
            if !is_sieve(c, o, &m.members) {
                return Err(Error::CertificateFailure {
                    axiom: "minimal cover is a sieve",
                    witness: c.object_label(o),
                });
            }
        }
        for f in 0..c.morphism_count() {
            let pulled = pullback_unchecked(c, &self.minimal[c.cod(f)], f);
            if !self.covers(&pulled) {
                return Err(Error::CertificateFailure {
                    axiom: "stability",
                    witness: c.morphism_label(f),
                });
            }
        }
        for (o, m) in self.minimal.iter().enumerate() {
            let t = compose_sieves(c, m, &self.minimal);
            if !self.covers(&t) {
                return Err(Error::CertificateFailure {
                    axiom: "transitivity",
                    witness: c.object_label(o),
                });
            }
        }
        Ok(())
    }

    /// `Cl(S) = {f : f*(S) covers dom f}`.
    pub fn closure<C: Category>(&self, c: &C, s: &Sieve) -> Sieve {
        let into = c.incoming(s.target);
        let mut out = BitSet::new(into.len());
        for (i, &f) in into.iter().enumerate() {
            if s.members.contains(i) {
                out.insert(i);
                continue;
            }
            let m = &self.minimal[c.dom(f)];
            if m.morphisms(c).all(|h| s.members.contains(c.local_index(c.compose(f, h)))) {
                out.insert(i);
            }
        }
        Sieve {
            target: s.target,
            members: out,
        }
    }

    pub fn is_closed<C: Category>(&self, c: &C, s: &Sieve) -> bool {
        self.closure(c, s) == *s
    }
}

/// Least topology in which every sieve of `basis` covers its target.
pub fn saturate<C: Category>(c: &C, basis: &[Sieve]) -> GrothTopology {
    let mut minimal: Vec<Sieve> = (0..c.object_count()).map(|o| Sieve::maximal(c, o)).collect();
    for b in basis {
        let m = &mut minimal[b.target];
        m.members.intersect_with(&b.members);
    }
    loop {
        let mut changed = false;
        for f in 0..c.morphism_count() {
            let pulled = pullback_unchecked(c, &minimal[c.cod(f)], f);
            let d = c.dom(f);
            if !minimal[d].is_subset(&pulled) {
                minimal[d].members.intersect_with(&pulled.members);
                changed = true;
            }
        }
        for o in 0..c.object_count() {
            let t = compose_sieves(c, &minimal[o], &minimal);
            if t != minimal[o] {
                minimal[o] = t;
                changed = true;
            }
        }
        if !changed {
            return GrothTopology { minimal };
        }
    }
}

/// A presheaf of finite sets: `sections[o]` elements at `o`, and for each
/// morphism `f: d → c` the restriction `P(c) → P(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPresheaf {
    pub sections: Vec<usize>,
    pub restrict: Vec<Vec<usize>>,
}

impl FinPresheaf {
    pub fn constant<C: Category>(c: &C, n: usize) -> FinPresheaf {
        FinPresheaf {
            sections: vec![n; c.object_count()],
            restrict: vec![(0..n).collect(); c.morphism_count()],
        }
    }

    pub fn check_functorial<C: Category>(&self, c: &C) -> Result<()> {
        for o in 0..c.object_count() {
            let id = c.identity(o);
            if self.restrict[id] != (0..self.sections[o]).collect::<Vec<_>>() {
                return Err(Error::NotFunctorial(format!("restriction along {}", c.morphism_label(id))));
            }
        }
        for g in 0..c.morphism_count() {
            for &f in c.incoming(c.dom(g)) {
                let gf = c.compose(g, f);
                for x in 0..self.sections[c.cod(g)] {
                    if self.restrict[gf][x] != self.restrict[f][self.restrict[g][x]] {
                        return Err(Error::NotFunctorial(format!(
                            "{} then {}",
                            c.morphism_label(g),
                            c.morphism_label(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Matching families for `P` on sieve `s`: each entry lists one section per
/// member, in the order of `s.morphisms`.
pub fn matching_families<C: Category>(c: &C, p: &FinPresheaf, s: &Sieve) -> Vec<Vec<usize>> {
    let members: Vec<usize> = s.morphisms(c).collect();
    let slot: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // generators: members not a proper composite of another member
    let gens: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&f| {
            !members.iter().any(|&g| {
                g != f
                    && c.incoming(c.dom(g)).iter().any(|&h| c.compose(g, h) == f)
                    && !c.incoming(c.dom(f)).iter().any(|&h| c.compose(f, h) == g)
            })
        })
        .collect();
    let mut out = Vec::new();
    let mut vals = vec![usize::MAX; members.len()];
    fn rec<C: Category>(
        c: &C,
        p: &FinPresheaf,
        gens: &[usize],
        slot: &BTreeMap<usize, usize>,
        i: usize,
        vals: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == gens.len() {
            if vals.iter().all(|&v| v != usize::MAX) {
                out.push(vals.clone());
            }
            return;
        }
        let g = gens[i];
        let d = c.dom(g);
        for x in 0..p.sections[d] {
            let saved = vals.clone();
            let mut ok = true;
            for &h in c.incoming(d) {
                let k = slot[&c.compose(g, h)];
                let v = p.restrict[h][x];
                if vals[k] == usize::MAX {
                    vals[k] = v;
                } else if vals[k] != v {
                    ok = false;
                    break;
                }
            }
            if ok {
                rec(c, p, gens, slot, i + 1, vals, out);
            }
            *vals = saved;
        }
    }
    rec(c, p, &gens, &slot, 0, &mut vals, &mut out);
    out
}

/// The restriction of `x ∈ P(c)` to every member of `s`.
pub fn restrict_to<C: Category>(c: &C, p: &FinPresheaf, s: &Sieve, x: usize) -> Vec<usize> {
    s.morphisms(c).map(|f| p.restrict[f][x]).collect()
}

/// `P⁺` with the matching families behind each section and the unit `P → P⁺`.
#[derive(Clone, Debug)]
pub struct Plus {
    pub presheaf: FinPresheaf,
    pub families: Vec<Vec<Vec<usize>>>,
    pub unit: Vec<Vec<usize>>,
}

/// `P⁺(c)`, computed as matching families on the minimal covering sieve of
/// `c`; every other cover refines to it, so the colimit over covers is attained there.
pub fn plus_construction<C: Category>(c: &C, j: &GrothTopology, p: &FinPresheaf) -> Plus {
    let n = c.object_count();
    let families: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|o| matching_families(c, p, j.minimal(o)))
        .collect();
    let index: Vec<BTreeMap<Vec<usize>, usize>> = families
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
        .collect();
    let mut restrict = Vec::with_capacity(c.morphism_count());
    for f in 0..c.morphism_count() {
        let (d, t) = (c.dom(f), c.cod(f));
        let mt: Vec<usize> = j.minimal(t).morphisms(c).collect();
        let pos: BTreeMap<usize, usize> = mt.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let md: Vec<usize> = j.minimal(d).morphisms(c).collect();
        let map = families[t]
            .iter()
            .map(|fam| {
                let r: Vec<usize> = md.iter().map(|&h| fam[pos[&c.compose(f, h)]]).collect();
                index[d][&r]
            })
            .collect();
        restrict.push(map);
    }
    let unit = (0..n)
        .map(|o| {
            (0..p.sections[o])
                .map(|x| index[o][&restrict_to(c, p, j.minimal(o), x)])
                .collect()
        })
        .collect();
    Plus {
        presheaf: FinPresheaf {
            sections: families.iter().map(Vec::len).collect(),
            restrict,
        },
        families,
        unit,
    }
}

/// `P⁺(c)` as the colimit over every covering sieve, with families identified
/// when they agree on a common covering refinement. Brute force; returns the
/// number of classes per object.
pub fn plus_by_all_covers<C: Category>(
    c: &C,
    j: &GrothTopology,
    p: &FinPresheaf,
    limit: usize,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for o in 0..c.object_count() {
        let covers = j.covering_sieves(c, o, limit)?;
        let mut elems: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, s) in covers.iter().enumerate() {
            for fam in matching_families(c, p, s) {
                elems.push((i, fam));
            }
        }
        // agree on the intersection, itself a cover
        let restrict = |i: usize, fam: &[usize], sub: &Sieve| -> Vec<usize> {
            let members: Vec<usize> = covers[i].morphisms(c).collect();
            sub.morphisms(c)
                .map(|f| fam[members.iter().position(|&g| g == f).unwrap()])
                .collect()
        };
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for a in 0..elems.len() {
            for b in a + 1..elems.len() {
                let meet = covers[elems[a].0].intersection(&covers[elems[b].0]);
                if restrict(elems[a].0, &elems[a].1, &meet) == restrict(elems[b].0, &elems[b].1, &meet) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let roots: alloc::collections::BTreeSet<usize> =
            (0..elems.len()).map(|x| find(&mut parent, x)).collect();
        out.push(roots.len());
    }
    Ok(out)
}

/// `P⁺⁺`, with the composite unit `P → P⁺⁺`.
pub fn sheafify<C: Category>(c: &C, j: &GrothTopology, p: &FinPresheaf) -> Plus {
    let once = plus_construction(c, j, p);
    let twice = plus_construction(c, j, &once.presheaf);
    let unit = once
        .unit
        .iter()
        .enumerate()
        .map(|(o, u)| u.iter().map(|&x| twice.unit[o][x]).collect())
        .collect();
    Plus { unit, ..twice }
}

/// First object at which some matching family on the minimal cover lacks a
/// unique amalgamation. Covers containing the minimal one then inherit the
/// sheaf property.
pub fn sheaf_failure<C: Category>(c: &C, j: &GrothTopology, p: &FinPresheaf) -> Option<usize> {
    (0..c.object_count()).find(|&o| {
        let m = j.minimal(o);
        let fams = matching_families(c, p, m);
        let mut hit = vec![0usize; fams.len()];
        let index: BTreeMap<&Vec<usize>, usize> = fams.iter().enumerate().map(|(i, f)| (f, i)).collect();
        for x in 0..p.sections[o] {
            hit[index[&restrict_to(c, p, m, x)]] += 1;
        }
        hit.iter().any(|&h| h != 1)
    })
}

pub fn is_sheaf<C: Category>(c: &C, j: &GrothTopology, p: &FinPresheaf) -> bool {
    sheaf_failure(c, j, p).is_none()
}

/// The sheaf condition on every covering sieve, by brute force.
pub fn is_sheaf_all_covers<C: Category>(
    c: &C,
    j: &GrothTopology,
    p: &FinPresheaf,
    limit: usize,
) -> Result<bool> {
    for o in 0..c.object_count() {
        for s in j.covering_sieves(c, o, limit)? {
            let fams = matching_families(c, p, &s);
            for fam in fams {
                let n = (0..p.sections[o])
                    .filter(|&x| restrict_to(c, p, &s, x) == fam)
                    .count();
                if n != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::fincat::FinCategory;

    fn cospan_names() -> (FinCategory, usize, usize, usize) {
        let c = cospan();
        let f = c.morphism_named("f").unwrap();
        let g = c.morphism_named("g").unwrap();
        let z = c.object_named("z").unwrap();
        (c, f, g, z)
    }

    #[test]
    fn generated_and_pulled_back() {
        let (c, f, g, z) = cospan_names();
        let id = c.identity(z);
        assert!(generated_sieve(&c, z, &[id]).unwrap().is_maximal());
        let sf = generated_sieve(&c, z, &[f]).unwrap();
        assert_eq!(sf.morphisms(&c).collect::<Vec<_>>(), [f]);
        assert!(generated_sieve(&c, z, &[]).unwrap().members.is_empty());
        assert!(matches!(
            generated_sieve(&c, c.dom(f), &[f]),
            Err(Error::WrongCodomain { .. })
        ));
        assert_eq!(pullback_sieve(&c, &sf, id).unwrap(), sf);
        assert!(pullback_sieve(&c, &Sieve::maximal(&c, z), g).unwrap().is_maximal());
        assert!(pullback_sieve(&c, &sf, g).unwrap().members.is_empty());
        assert!(matches!(pullback_sieve(&c, &Sieve::maximal(&c, 0), g), Err(Error::TargetMismatch { .. })));
    }

    #[test]
    fn saturation_of_joins_on_a_frame() {
        // 2x2 Boolean algebra: 0, a, b, 1 with bit-mask order
        let c = FinCategory::from_preorder(4, |x, y| x & !y == 0);
        let mut basis = Vec::new();
        for x in 0..4usize {
            for y in 0..4usize {
                for z in 0..4usize {
                    // every finite family is generated by its maximal members; pairs suffice here
                    if (y | z) == x && y & !x == 0 && z & !x == 0 {
                        let fam: Vec<usize> = [y, z].iter().map(|&v| c.hom(v, x)[0]).collect();
                        basis.push(generated_sieve(&c, x, &fam).unwrap());
                    }
                }
            }
            if x == 0 {
                basis.push(Sieve::empty(&c, 0));
            }
        }
        let j = saturate(&c, &basis);
        j.check_axioms(&c).unwrap();
        assert_eq!(saturate(&c, &[j.minimal(0).clone(), j.minimal(1).clone(), j.minimal(2).clone(), j.minimal(3).clone()]), j);
        for x in 0..4 {
            for s in all_sieves(&c, x, 64).unwrap() {
                let join = s.morphisms(&c).fold(0, |acc, m| acc | c.dom(m));
                assert_eq!(j.covers(&s), join == x, "object {x} sieve {:?}", s.members);
            }
        }
        assert_eq!(saturate(&c, &[]), GrothTopology::trivial(&c));
    }

    #[test]
    fn closure_properties() {
        let (c, f, _, z) = cospan_names();
        let triv = GrothTopology::trivial(&c);
        let sf = generated_sieve(&c, z, &[f]).unwrap();
        assert_eq!(triv.closure(&c, &sf), sf);
        // a topology where {f, g} covers z
        let j = saturate(&c, &[generated_sieve(&c, z, &[0, 1]).unwrap()]);
        let cover = generated_sieve(&c, z, &[0, 1]).unwrap();
        assert!(j.closure(&c, &cover).is_maximal());
        for o in 0..c.object_count() {
            for s in all_sieves(&c, o, 64).unwrap() {
                let cl = j.closure(&c, &s);
                assert!(s.is_subset(&cl));
                assert_eq!(j.closure(&c, &cl), cl);
                assert_eq!(cl.is_maximal(), j.covers(&s));
                for t in all_sieves(&c, o, 64).unwrap() {
                    if s.is_subset(&t) {
                        assert!(cl.is_subset(&j.closure(&c, &t)));
                    }
                }
            }
        }
        let e = Sieve::empty(&c, z);
        let cl = j.closure(&c, &e);
        assert_eq!(
            cl.morphisms(&c).collect::<Vec<_>>(),
            c.incoming(z).iter().copied().filter(|&m| j.empty_covers(c.dom(m))).collect::<Vec<_>>()
        );
    }

    #[test]
    fn sheafification_examples() {
        let t = terminal();
        let two = FinPresheaf::constant(&t, 2);
        let s = sheafify(&t, &GrothTopology::trivial(&t), &two);
        assert_eq!(s.presheaf.sections, [2]);

        let d = discrete(2);
        let s = sheafify(&d, &GrothTopology::trivial(&d), &FinPresheaf::constant(&d, 2));
        assert_eq!(s.presheaf.sections, [2, 2]);
        // global sections of a coproduct of two points: 2 x 2
        assert_eq!(s.presheaf.sections.iter().product::<usize>(), 4);

        // chain 0 < 1 with the empty sieve covering 0: constant 2 is not a sheaf
        let c = chain(2);
        let j = saturate(&c, &[Sieve::empty(&c, 0)]);
        let p = FinPresheaf::constant(&c, 2);
        assert!(!is_sheaf(&c, &j, &p));
        assert!(!is_sheaf_all_covers(&c, &j, &p, 64).unwrap());
        let sp = sheafify(&c, &j, &p);
        sp.presheaf.check_functorial(&c).unwrap();
        assert!(is_sheaf(&c, &j, &sp.presheaf));
        assert_eq!(sp.presheaf.sections, [1, 2]);
        assert_eq!(plus_by_all_covers(&c, &j, &p, 64).unwrap(), plus_construction(&c, &j, &p).presheaf.sections);

        // sheafifying a sheaf changes nothing
        let again = sheafify(&c, &j, &sp.presheaf);
        assert_eq!(again.presheaf.sections, sp.presheaf.sections);
        assert!(again.unit.iter().all(|u| {
            let mut v = u.clone();
            v.sort();
            v.dedup();
            v.len() == u.len()
        }));
    }
}
