//! The subobject classifier Ω of a finite site as closed sieves, its regular
//! part Ω¬¬, the sheaf 1⊔1, and the De Morgan and Boolean topos verdicts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::fincat::{principal_image, Category};
use crate::lattice::{self, FinLattice};
use crate::site::{
    is_sheaf, plus_construction, pullback_unchecked, FinPresheaf, GrothTopology, Plus, Sieve,
};

/// Largest Ω fibre that is built.
pub const OMEGA_LIMIT: usize = 4096;

/// A fibrewise frame: one lattice per object and, for each `f: d → c`, the
/// transition `fibre(c) → fibre(d)` as an index table.
#[derive(Clone, Debug)]
pub struct InternalFrame {
    pub fibres: Vec<FinLattice>,
    pub transition: Vec<Vec<usize>>,
}

impl InternalFrame {
    pub fn as_presheaf(&self) -> FinPresheaf {
        FinPresheaf {
            sections: self.fibres.iter().map(FinLattice::len).collect(),
            restrict: self.transition.clone(),
        }
    }
}

/// A subpresheaf of the sieve presheaf: per object a list of sieves, closed
/// under pullback, with the pullback maps tabulated.
#[derive(Clone, Debug)]
pub struct SieveFamily {
    pub sieves: Vec<Vec<Sieve>>,
    index: Vec<BTreeMap<BitSet, usize>>,
    pub transition: Vec<Vec<usize>>,
}

impl SieveFamily {
    fn new<C: Category>(c: &C, sieves: Vec<Vec<Sieve>>) -> Result<SieveFamily> {
        let index: Vec<BTreeMap<BitSet, usize>> = sieves
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, s)| (s.members.clone(), i)).collect())
            .collect();
        let mut transition = Vec::with_capacity(c.morphism_count());
        for f in 0..c.morphism_count() {
            let d = c.dom(f);
            let mut row = Vec::with_capacity(sieves[c.cod(f)].len());
            for s in &sieves[c.cod(f)] {
                let p = pullback_unchecked(c, s, f);
                match index[d].get(&p.members) {
                    Some(&i) => row.push(i),
                    None => {
                        return Err(Error::TransitionEscapesFibre {
                            morphism: c.morphism_label(f),
                        })
                    }
                }
            }
            transition.push(row);
        }
        Ok(SieveFamily {
            sieves,
            index,
            transition,
        })
    }

    pub fn len(&self, o: usize) -> usize {
        self.sieves[o].len()
    }

    pub fn position(&self, s: &Sieve) -> Option<usize> {
        self.index[s.target].get(&s.members).copied()
    }

    pub fn get(&self, o: usize, i: usize) -> &Sieve {
        &self.sieves[o][i]
    }

    /// Index of the maximal sieve on `o`.
    pub fn top(&self, o: usize) -> usize {
        self.sieves[o].len() - 1
    }

    /// Index of the least sieve on `o`; sieves are sorted by size.
    pub fn bottom(&self, _o: usize) -> usize {
        0
    }

    pub fn as_presheaf(&self) -> FinPresheaf {
        FinPresheaf {
            sections: self.sieves.iter().map(Vec::len).collect(),
            restrict: self.transition.clone(),
        }
    }

    /// The fibre at `o` ordered by inclusion.
    pub fn lattice<C: Category>(&self, c: &C, o: usize) -> Result<FinLattice> {
        let v = &self.sieves[o];
        let l = FinLattice::from_leq(v.len(), OMEGA_LIMIT, |a, b| v[a].is_subset(&v[b]))?;
        Ok(l.with_labels(v.iter().map(|s| s.describe(c)).collect()))
    }

    pub fn frame<C: Category>(&self, c: &C) -> Result<InternalFrame> {
        Ok(InternalFrame {
            fibres: (0..c.object_count())
                .map(|o| self.lattice(c, o))
                .collect::<Result<_>>()?,
            transition: self.transition.clone(),
        })
    }
}

fn sort_sieves(v: &mut [Sieve]) {
    v.sort_by(|a, b| {
        (a.members.count(), a.members.iter().collect::<Vec<_>>())
            .cmp(&(b.members.count(), b.members.iter().collect::<Vec<_>>()))
    });
}

/// The `J`-closed sieves on `o`, smallest first.
pub fn closed_sieves<C: Category>(c: &C, j: &GrothTopology, o: usize, limit: usize) -> Result<Vec<Sieve>> {
    let mut gens: Vec<BitSet> = c
        .incoming(o)
        .iter()
        .map(|&f| j.closure(c, &Sieve { target: o, members: principal_image(c, f) }).members)
        .collect();
    gens.sort();
    gens.dedup();
    let bottom = j.closure(c, &Sieve::empty(c, o)).members;
    let mut seen = alloc::collections::BTreeSet::new();
    seen.insert(bottom.clone());
    let mut stack = vec![bottom];
    while let Some(s) = stack.pop() {
        for g in &gens {
            if g.is_subset(&s) {
                continue;
            }
            let t = j.closure(c, &Sieve { target: o, members: s.union(g) }).members;
            if seen.insert(t.clone()) {
                if seen.len() > limit {
                    return Err(Error::SizeExceeded {
                        what: "closed-sieve fibre",
                        limit,
                    });
                }
                stack.push(t);
            }
        }
    }
    let mut v: Vec<Sieve> = seen.into_iter().map(|members| Sieve { target: o, members }).collect();
    sort_sieves(&mut v);
    Ok(v)
}

/// Ω as closed sieves with pullback transitions; asserted to be a `J`-sheaf.
pub fn omega<C: Category>(c: &C, j: &GrothTopology) -> Result<SieveFamily> {
    let sieves = (0..c.object_count())
        .map(|o| closed_sieves(c, j, o, OMEGA_LIMIT))
        .collect::<Result<Vec<_>>>()?;
    let om = SieveFamily::new(c, sieves)?;
    if !is_sheaf(c, j, &om.as_presheaf()) {
        return Err(Error::CertificateFailure {
            axiom: "Ω is a sheaf",
            witness: String::new(),
        });
    }
    Ok(om)
}

/// `S ⇒ T = {f : f*(S) ⊆ f*(T)}` in Ω(c).
pub fn heyting_in_omega<C: Category>(c: &C, s: &Sieve, t: &Sieve) -> Sieve {
    let into = c.incoming(s.target);
    let mut out = BitSet::new(into.len());
    for (i, &f) in into.iter().enumerate() {
        if pullback_unchecked(c, s, f).is_subset(&pullback_unchecked(c, t, f)) {
            out.insert(i);
        }
    }
    Sieve {
        target: s.target,
        members: out,
    }
}

/// `¬S = {f : f*(S) ⊆ Cl(∅)}`, with `bottoms[d]` the closed empty sieve on `d`.
pub fn negation<C: Category>(c: &C, bottoms: &[Sieve], s: &Sieve) -> Sieve {
    let into = c.incoming(s.target);
    let mut out = BitSet::new(into.len());
    for (i, &f) in into.iter().enumerate() {
        if pullback_unchecked(c, s, f).is_subset(&bottoms[c.dom(f)]) {
            out.insert(i);
        }
    }
    Sieve {
        target: s.target,
        members: out,
    }
}

/// Pseudo-complements in every Ω fibre, as index tables.
pub fn negation_tables<C: Category>(c: &C, om: &SieveFamily) -> Result<Vec<Vec<usize>>> {
    let bottoms: Vec<Sieve> = (0..c.object_count()).map(|o| om.get(o, 0).clone()).collect();
    let mut out = Vec::with_capacity(c.object_count());
    for o in 0..c.object_count() {
        let mut row = Vec::with_capacity(om.len(o));
        for s in &om.sieves[o] {
            let n = negation(c, &bottoms, s);
            row.push(om.position(&n).ok_or(Error::CertificateFailure {
                axiom: "pseudo-complement is closed",
                witness: s.describe(c),
            })?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Ω¬¬: the sieves fixed by double pseudo-complement. Transitions are checked
/// to preserve pseudo-complements, so they restrict to the regular parts.
pub fn omega_notnot<C: Category>(c: &C, om: &SieveFamily) -> Result<SieveFamily> {
    let neg = negation_tables(c, om)?;
    for f in 0..c.morphism_count() {
        let (d, t) = (c.dom(f), c.cod(f));
        for i in 0..om.len(t) {
            if om.transition[f][neg[t][i]] != neg[d][om.transition[f][i]] {
                return Err(Error::TransitionEscapesFibre {
                    morphism: c.morphism_label(f),
                });
            }
        }
    }
    let sieves = (0..c.object_count())
        .map(|o| {
            (0..om.len(o))
                .filter(|&i| neg[o][neg[o][i]] == i)
                .map(|i| om.get(o, i).clone())
                .collect()
        })
        .collect();
    SieveFamily::new(c, sieves)
}

/// Ω¬¬ at `o` through the lattice route, as indices into Ω(o).
pub fn regular_by_lattice<C: Category>(c: &C, om: &SieveFamily, o: usize) -> Result<Vec<usize>> {
    let l = om.lattice(c, o)?;
    Ok(lattice::regular_elements(&l)?.1)
}

/// The sheaf 1⊔1 with its two constant generators.
#[derive(Clone, Debug)]
pub struct TwoPointSheaf {
    pub once: Plus,
    pub twice: Plus,
    /// Per object, the section ⊤ and the section ⊥.
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl TwoPointSheaf {
    pub fn sheaf(&self) -> &FinPresheaf {
        &self.twice.presheaf
    }
}

/// Sheafification of the constant presheaf `{⊥, ⊤}`, with the equalizer of
/// the two generators checked to be `Cl(∅)` on every object.
pub fn coproduct_of_terminals<C: Category>(c: &C, j: &GrothTopology) -> Result<TwoPointSheaf> {
    let p = FinPresheaf::constant(c, 2);
    let once = plus_construction(c, j, &p);
    let twice = plus_construction(c, j, &once.presheaf);
    let unit = |o: usize, x: usize| twice.unit[o][once.unit[o][x]];
    let n = c.object_count();
    let bottom: Vec<usize> = (0..n).map(|o| unit(o, 0)).collect();
    let top: Vec<usize> = (0..n).map(|o| unit(o, 1)).collect();
    for o in 0..n {
        let eq: Vec<usize> = c
            .incoming(o)
            .iter()
            .copied()
            .filter(|&f| twice.presheaf.restrict[f][top[o]] == twice.presheaf.restrict[f][bottom[o]])
            .collect();
        let cl = j.closure(c, &Sieve::empty(c, o));
        if eq != cl.morphisms(c).collect::<Vec<_>>() {
            return Err(Error::CertificateFailure {
                axiom: "⊤ and ⊥ are disjoint",
                witness: c.object_label(o),
            });
        }
    }
    Ok(TwoPointSheaf {
        once,
        twice,
        top,
        bottom,
    })
}

/// Extend `phi: P → Q` along `P → P⁺`, with `Q` a sheaf of sieves.
fn extend_along_plus<C: Category>(
    c: &C,
    j: &GrothTopology,
    plus: &Plus,
    phi: &[Vec<usize>],
    q: &SieveFamily,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(c.object_count());
    for o in 0..c.object_count() {
        let cover: Vec<usize> = j.minimal(o).morphisms(c).collect();
        let mut row = Vec::with_capacity(plus.families[o].len());
        for fam in &plus.families[o] {
            let mut hit = None;
            for t in 0..q.len(o) {
                if cover
                    .iter()
                    .zip(fam)
                    .all(|(&f, &x)| q.transition[f][t] == phi[c.dom(f)][x])
                {
                    if hit.is_some() {
                        hit = None;
                        break;
                    }
                    hit = Some(t);
                }
            }
            row.push(hit.ok_or(Error::CertificateFailure {
                axiom: "target of the classifying map is a sheaf",
                witness: c.object_label(o),
            })?);
        }
        out.push(row);
    }
    Ok(out)
}

/// The map 1⊔1 → Q sending ⊤ to the maximal sieve and ⊥ to the least one,
/// extended through both plus steps.
pub fn classify_two_points<C: Category>(
    c: &C,
    j: &GrothTopology,
    two: &TwoPointSheaf,
    q: &SieveFamily,
) -> Result<Vec<Vec<usize>>> {
    let phi0: Vec<Vec<usize>> = (0..c.object_count())
        .map(|o| vec![q.bottom(o), q.top(o)])
        .collect();
    let phi1 = extend_along_plus(c, j, &two.once, &phi0, q)?;
    extend_along_plus(c, j, &two.twice, &phi1, q)
}

/// Per-object comparison of 1⊔1 with a sheaf of sieves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToposVerdict {
    pub holds: bool,
    /// `(|1⊔1(c)|, |Q(c)|, map bijective at c)` per object.
    pub per_object: Vec<(usize, usize, bool)>,
    /// First object where the map is not a bijection.
    pub witness: Option<usize>,
}

fn compare<C: Category>(c: &C, j: &GrothTopology, two: &TwoPointSheaf, q: &SieveFamily) -> Result<ToposVerdict> {
    let map = classify_two_points(c, j, two, q)?;
    let mut per_object = Vec::with_capacity(c.object_count());
    for o in 0..c.object_count() {
        let mut hit = vec![false; q.len(o)];
        let mut injective = true;
        for &t in &map[o] {
            injective &= !core::mem::replace(&mut hit[t], true);
        }
        per_object.push((map[o].len(), q.len(o), injective && hit.iter().all(|&h| h)));
    }
    let witness = per_object.iter().position(|p| !p.2);
    Ok(ToposVerdict {
        holds: witness.is_none(),
        per_object,
        witness,
    })
}

/// Whether the classifying map 1⊔1 → Ω¬¬ is an isomorphism.
pub fn is_de_morgan_topos<C: Category>(c: &C, j: &GrothTopology) -> Result<ToposVerdict> {
    let om = omega(c, j)?;
    let nn = omega_notnot(c, &om)?;
    let two = coproduct_of_terminals(c, j)?;
    compare(c, j, &two, &nn)
}

/// Whether the classifying map 1⊔1 → Ω is an isomorphism.
pub fn is_boolean_topos<C: Category>(c: &C, j: &GrothTopology) -> Result<ToposVerdict> {
    let om = omega(c, j)?;
    let two = coproduct_of_terminals(c, j)?;
    compare(c, j, &two, &om)
}

/// Both topos verdicts from one computation of Ω, Ω¬¬ and 1⊔1.
#[derive(Clone, Debug)]
pub struct ToposAnalysis {
    pub omega: SieveFamily,
    pub notnot: SieveFamily,
    pub two: TwoPointSheaf,
    pub de_morgan: ToposVerdict,
    pub boolean: ToposVerdict,
}

pub fn analyse<C: Category>(c: &C, j: &GrothTopology) -> Result<ToposAnalysis> {
    let omega = omega(c, j)?;
    let notnot = omega_notnot(c, &omega)?;
    let two = coproduct_of_terminals(c, j)?;
    let de_morgan = compare(c, j, &two, &notnot)?;
    let boolean = compare(c, j, &two, &omega)?;
    Ok(ToposAnalysis {
        omega,
        notnot,
        two,
        de_morgan,
        boolean,
    })
}

/// Algebraic predicates of one Ω fibre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoneRecord {
    pub object: usize,
    pub omega_size: usize,
    pub regular_size: usize,
    pub stone: bool,
    pub boolean: bool,
    pub lee: Vec<(usize, bool)>,
}

pub fn stone_report<C: Category>(c: &C, j: &GrothTopology, lee: &[usize]) -> Result<Vec<StoneRecord>> {
    let om = omega(c, j)?;
    let nn = omega_notnot(c, &om)?;
    let mut out = Vec::with_capacity(c.object_count());
    for o in 0..c.object_count() {
        let l = om.lattice(c, o)?;
        out.push(StoneRecord {
            object: o,
            omega_size: l.len(),
            regular_size: nn.len(o),
            stone: lattice::is_stone(&l)?.holds,
            boolean: lattice::is_boolean(&l),
            lee: lee.iter().map(|&r| (r, lattice::lee_property(&l, r).is_ok())).collect(),
        });
    }
    Ok(out)
}

/// Readable summary of a verdict for reports and errors.
pub fn describe_verdict<C: Category>(c: &C, v: &ToposVerdict) -> String {
    let parts: Vec<String> = v
        .per_object
        .iter()
        .enumerate()
        .map(|(o, (a, b, ok))| format!("{}: {a} vs {b}{}", c.object_label(o), if *ok { "" } else { " (fails)" }))
        .collect();
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::fincat::FinCategory;
    use crate::site::{all_sieves, saturate};

    fn fork_check(l: &FinLattice) {
        assert!(lattice::is_isomorphic(l, &lattice::fixtures::fork()));
    }

    #[test]
    fn omega_examples() {
        let t = terminal();
        let j = GrothTopology::trivial(&t);
        let om = omega(&t, &j).unwrap();
        assert_eq!(om.len(0), 2);

        let c = cospan();
        let j = GrothTopology::trivial(&c);
        let om = omega(&c, &j).unwrap();
        let z = c.object_named("z").unwrap();
        assert_eq!(om.len(z), 5);
        fork_check(&om.lattice(&c, z).unwrap());

        // 3-chain frame with the joins topology: closed sieves are principal
        let f = FinCategory::from_preorder(3, |a, b| a <= b);
        let j = saturate(&f, &[Sieve::empty(&f, 0)]);
        let om = omega(&f, &j).unwrap();
        assert_eq!((om.len(0), om.len(1), om.len(2)), (1, 2, 3));
        assert!(lattice::is_isomorphic(&om.lattice(&f, 2).unwrap(), &lattice::fixtures::chain(3)));
    }

    #[test]
    fn implication_matches_lattice() {
        for c in [cospan(), span(), arrow(), chain(3), discrete(2)] {
            let j = GrothTopology::trivial(&c);
            let om = omega(&c, &j).unwrap();
            for o in 0..c.object_count() {
                let l = om.lattice(&c, o).unwrap();
                for a in 0..om.len(o) {
                    for b in 0..om.len(o) {
                        let s = heyting_in_omega(&c, om.get(o, a), om.get(o, b));
                        assert_eq!(om.position(&s), Some(l.implies(a, b)));
                    }
                }
            }
        }
        let c = cospan();
        let z = c.object_named("z").unwrap();
        let (f, g) = (c.morphism_named("f").unwrap(), c.morphism_named("g").unwrap());
        let sf = Sieve::principal(&c, f);
        let s = heyting_in_omega(&c, &sf, &Sieve::empty(&c, z));
        assert_eq!(s, Sieve::principal(&c, g));
    }

    #[test]
    fn notnot_examples() {
        let c = cospan();
        let om = omega(&c, &GrothTopology::trivial(&c)).unwrap();
        let nn = omega_notnot(&c, &om).unwrap();
        let z = c.object_named("z").unwrap();
        assert_eq!(nn.len(z), 4);
        assert!(lattice::is_boolean(&nn.lattice(&c, z).unwrap()));
        for o in 0..3 {
            let by_lattice: Vec<&Sieve> = regular_by_lattice(&c, &om, o).unwrap().iter().map(|&i| om.get(o, i)).collect();
            assert_eq!(by_lattice, nn.sieves[o].iter().collect::<Vec<_>>());
        }
        let s = span();
        let nn = omega_notnot(&s, &omega(&s, &GrothTopology::trivial(&s)).unwrap()).unwrap();
        assert!((0..3).all(|o| nn.len(o) == 2));
    }

    #[test]
    fn topos_verdicts() {
        let t = terminal();
        let a = analyse(&t, &GrothTopology::trivial(&t)).unwrap();
        assert!(a.de_morgan.holds && a.boolean.holds);
        assert_eq!(a.two.sheaf().sections, [2]);

        let c = cospan();
        let a = analyse(&c, &GrothTopology::trivial(&c)).unwrap();
        assert!(!a.de_morgan.holds);
        let z = c.object_named("z").unwrap();
        assert_eq!(a.de_morgan.witness, Some(z));
        assert_eq!(a.de_morgan.per_object[z], (2, 4, false));
        assert_eq!(a.two.sheaf().sections, [2, 2, 2]);

        let s = span();
        let a = analyse(&s, &GrothTopology::trivial(&s)).unwrap();
        assert!(a.de_morgan.holds);
        assert!(!a.boolean.holds);
        let x = s.object_named("x").unwrap();
        assert_eq!(a.omega.len(x), 3);

        let ch = chain(2);
        assert!(!is_boolean_topos(&ch, &GrothTopology::trivial(&ch)).unwrap().holds);

        let d = discrete(2);
        assert_eq!(coproduct_of_terminals(&d, &GrothTopology::trivial(&d)).unwrap().sheaf().sections, [2, 2]);
    }

    #[test]
    fn two_points_are_the_complemented_sieves() {
        // a site with a non-trivial topology: Boolean algebra 2x2 with joins
        let c = FinCategory::from_preorder(4, |x, y| x & !y == 0);
        let mut basis = vec![Sieve::empty(&c, 0)];
        basis.push(crate::site::generated_sieve(&c, 3, &[c.hom(1, 3)[0], c.hom(2, 3)[0]]).unwrap());
        let j = saturate(&c, &basis);
        for (site, j) in [(c.clone(), j), (cospan(), GrothTopology::trivial(&cospan())), (span(), GrothTopology::trivial(&span()))] {
            let a = analyse(&site, &j).unwrap();
            for o in 0..site.object_count() {
                let l = a.omega.lattice(&site, o).unwrap();
                assert_eq!(a.two.sheaf().sections[o], lattice::complemented_elements(&l).count());
            }
            assert!(is_sheaf(&site, &j, &a.omega.as_presheaf()));
        }
    }

    #[test]
    fn stone_reports() {
        let c = cospan();
        let r = stone_report(&c, &GrothTopology::trivial(&c), &[1, 2]).unwrap();
        let z = c.object_named("z").unwrap();
        assert!(!r[z].stone);
        assert_eq!(r[z].lee[0], (1, false));
        let s = span();
        assert!(stone_report(&s, &GrothTopology::trivial(&s), &[]).unwrap().iter().all(|r| r.stone));
        let b = FinCategory::from_preorder(4, |x, y| x & !y == 0);
        let mut basis = vec![Sieve::empty(&b, 0)];
        basis.push(crate::site::generated_sieve(&b, 3, &[b.hom(1, 3)[0], b.hom(2, 3)[0]]).unwrap());
        let j = saturate(&b, &basis);
        assert!(stone_report(&b, &j, &[]).unwrap().iter().all(|r| r.boolean));
        // sanity for the brute-force helpers
        assert_eq!(all_sieves(&c, z, 64).unwrap().len(), 5);
    }
}
