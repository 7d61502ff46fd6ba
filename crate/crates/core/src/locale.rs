//! Finite frames as sites, their Gleason cover computed directly through
//! ideal completions, and the comparison with the site pipeline.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::fincat::{is_cartesian, Category, FinCategory};
use crate::gleason::gleason_cover;
use crate::lattice::{self, FinLattice};
use crate::site::{generated_sieve, saturate, GrothTopology};

/// Largest frame whose join covers of 1 are enumerated exhaustively.
pub const FAMILY_LIMIT: usize = 20;

/// A finite frame as a poset category with the finite-join topology.
#[derive(Clone, Debug)]
pub struct FrameSite {
    pub frame: FinLattice,
    pub site: FinCategory,
    pub topology: GrothTopology,
}

pub fn frame_to_site(l: &FinLattice) -> Result<FrameSite> {
    let n = l.len();
    let site = FinCategory::from_preorder(n, |a, b| l.leq(a, b));
    let objects = (0..n).map(|o| l.label(o)).collect();
    let morphisms = (0..site.morphism_count())
        .map(|m| format!("{}≤{}", l.label(site.dom(m)), l.label(site.cod(m))))
        .collect();
    let site = site.with_labels(objects, morphisms);
    let jis = l.join_irreducibles();
    let basis = (0..n)
        .map(|x| {
            let fam: Vec<usize> = jis.iter().filter(|&&j| l.leq(j, x)).map(|&j| site.hom(j, x)[0]).collect();
            generated_sieve(&site, x, &fam)
        })
        .collect::<Result<Vec<_>>>()?;
    let topology = saturate(&site, &basis);
    topology.check_axioms(&site)?;
    if !is_cartesian(&site).holds() {
        return Err(Error::CertificateFailure {
            axiom: "a frame is cartesian as a category",
            witness: String::new(),
        });
    }
    Ok(FrameSite {
        frame: l.clone(),
        site,
        topology,
    })
}

pub fn booleanization_frame(l: &FinLattice) -> Result<FinLattice> {
    Ok(lattice::regular_elements(l)?.0)
}

/// Every family of elements of `l` joining to the top, as bitsets.
fn covers_of_top(l: &FinLattice) -> Result<Vec<Vec<usize>>> {
    let n = l.len();
    if n > FAMILY_LIMIT {
        return Err(Error::SizeExceeded {
            what: "frame for join-cover enumeration",
            limit: FAMILY_LIMIT,
        });
    }
    let cands: Vec<usize> = (0..n).filter(|&a| a != l.bottom()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << cands.len()) {
        let fam: Vec<usize> = (0..cands.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
        if l.join_all(fam.iter().copied()) == l.top() {
            out.push(fam);
        }
    }
    Ok(out)
}

/// Ideals of `target` surviving a closure test: for every cover `(l_i)` of 1
/// in `l` and every `x ∈ target`, if `step(x, l_i) ∈ I` for all `i` then `x ∈ I`.
fn closed_ideals(
    l: &FinLattice,
    target: &FinLattice,
    step: impl Fn(usize, usize) -> usize,
) -> Result<(lattice::Ideals, Vec<usize>)> {
    let ids = lattice::ideals(target)?;
    let mut pairs = BTreeSet::new();
    for fam in covers_of_top(l)? {
        for x in 0..target.len() {
            let hyps: Vec<usize> = fam.iter().map(|&li| step(x, li)).collect();
            pairs.insert((hyps, x));
        }
    }
    let passing = (0..ids.sets.len())
        .filter(|&i| {
            let s = &ids.sets[i];
            pairs.iter().all(|(hyps, x)| !hyps.iter().all(|&h| s.contains(h)) || s.contains(*x))
        })
        .collect();
    Ok((ids, passing))
}

/// `Idl⁺(B(L))`: ideals `I` of the regular elements such that `¬¬(x ∧ l_i) ∈ I`
/// for a cover `(l_i)` of 1 forces `x ∈ I`. On a finite frame every ideal
/// passes and is principal (both asserted), so the result is `B(L)`.
pub fn gleason_locale_direct(l: &FinLattice) -> Result<FinLattice> {
    let (b, elems) = lattice::regular_elements(l)?;
    let pos = |a: usize| elems.iter().position(|&e| e == a).expect("¬¬ lands in the regular elements");
    let (ids, passing) = closed_ideals(l, &b, |x, li| {
        let m = l.meet(elems[x], li);
        pos(l.neg(l.neg(m)))
    })?;
    if passing.len() != ids.sets.len() {
        return Err(Error::CertificateFailure {
            axiom: "every ideal of a finite frame has the closure property",
            witness: format!("{} of {} ideals pass", passing.len(), ids.sets.len()),
        });
    }
    ids.lattice.restrict(&passing)
}

/// `Idl⁺⁺(L)`: ideals `I` of `L` with `x ∧ l_i ∈ I` for a cover of 1 forcing
/// `x ∈ I`; asserted isomorphic to `L` on finite frames.
pub fn idl_plus_plus(l: &FinLattice) -> Result<FinLattice> {
    let (ids, passing) = closed_ideals(l, l, |x, li| l.meet(x, li))?;
    let out = ids.lattice.restrict(&passing)?;
    if !lattice::is_isomorphic(&out, l) {
        return Err(Error::CertificateFailure {
            axiom: "Idl⁺⁺ of a finite frame is the frame",
            witness: format!("{} elements for {}", out.len(), l.len()),
        });
    }
    Ok(out)
}

/// The site pipeline's cover fibre over the top element against the direct
/// computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GleasonCrossCheck {
    pub holds: bool,
    pub regular: bool,
    pub site_size: usize,
    pub direct_size: usize,
}

pub fn cross_check_gleason(l: &FinLattice) -> Result<GleasonCrossCheck> {
    let fs = frame_to_site(l)?;
    let g = gleason_cover(&fs.site, &fs.topology)?;
    let via_site = g.cover_fibre(l.top());
    let direct = gleason_locale_direct(l)?;
    Ok(GleasonCrossCheck {
        holds: lattice::is_isomorphic(via_site, &direct),
        regular: lattice::is_regular_frame(l).holds,
        site_size: via_site.len(),
        direct_size: direct.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacePredicates {
    pub extremally_disconnected: bool,
    pub almost_discrete: bool,
    pub regular: bool,
    pub idl_omega_fixed: bool,
}

/// On a regular frame, `Idl(L) = L` is checked to coincide with Booleanness.
pub fn space_predicates(l: &FinLattice) -> Result<SpacePredicates> {
    let p = SpacePredicates {
        extremally_disconnected: lattice::is_stone(l)?.holds,
        almost_discrete: lattice::is_boolean(l),
        regular: lattice::is_regular_frame(l).holds,
        idl_omega_fixed: lattice::ideals(l).map(|i| i.sets.len() == l.len()).unwrap_or(false),
    };
    if p.regular {
        if !lattice::compact_elements(l).is_full() {
            return Err(Error::TheoremViolation {
                claim: "elements of a finite frame are compact",
                witness: String::new(),
            });
        }
        if lattice::complemented_elements(l).is_full() != p.almost_discrete || p.idl_omega_fixed != p.almost_discrete {
            return Err(Error::TheoremViolation {
                claim: "on a compact regular frame Idl(L) = L iff L is Boolean",
                witness: String::new(),
            });
        }
    }
    Ok(p)
}

/// The frame of opens of a finite space, after checking that `opens`
/// contains ∅ and the whole space and is closed under union and intersection.
pub fn space_frame(points: &[String], opens: &[BitSet]) -> Result<FinLattice> {
    let n = points.len();
    let mut set: BTreeSet<BitSet> = BTreeSet::new();
    for o in opens {
        if o.len() != n {
            return Err(Error::InvalidInput("open set over the wrong point set".into()));
        }
        set.insert(o.clone());
    }
    let name = |s: &BitSet| {
        let v: Vec<&str> = s.iter().map(|i| points[i].as_str()).collect();
        format!("{{{}}}", v.join(","))
    };
    if !set.contains(&BitSet::new(n)) {
        return Err(Error::InvalidInput("the empty set must be open".into()));
    }
    if !set.contains(&BitSet::full(n)) {
        return Err(Error::InvalidInput("the whole space must be open".into()));
    }
    for a in &set {
        for b in &set {
            if !set.contains(&a.union(b)) {
                return Err(Error::InvalidInput(format!("{} ∪ {} is not open", name(a), name(b))));
            }
            if !set.contains(&a.intersection(b)) {
                return Err(Error::InvalidInput(format!("{} ∩ {} is not open", name(a), name(b))));
            }
        }
    }
    let v: Vec<BitSet> = set.into_iter().collect();
    let l = FinLattice::from_leq(v.len(), usize::MAX, |a, b| v[a].is_subset(&v[b]))?;
    Ok(l.with_labels(v.iter().map(name).collect()))
}
