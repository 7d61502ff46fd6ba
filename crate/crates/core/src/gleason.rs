//! The Gleason cover of a finite site: the fibred ideal completion of Ω¬¬
//! under the coherent topology, with the maps ρ and λ to and from Ω.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::classifier::{self, classify_two_points, coproduct_of_terminals, omega, omega_notnot, SieveFamily};
use crate::error::{Error, Result};
use crate::fincat::{has_right_ore, Category, FinCategory};
use crate::indlat::{
    fibred_ideal_completion, grothendieck_construction, locale_over, relative_site, surjectivity_verdict,
    FibredCompletion, InternalLattice, InternalLocale, RelativeSite, Surjectivity, Total, TopologyKind,
};
use crate::lattice::{self, FinLattice};
use crate::site::{GrothTopology, Sieve};

#[derive(Clone, Debug)]
pub struct GleasonCover {
    pub base: FinCategory,
    pub topology: GrothTopology,
    pub omega: SieveFamily,
    pub notnot: SieveFamily,
    /// Ω¬¬ with its left adjoints.
    pub omega_nn: InternalLocale,
    /// `Idl(Ω¬¬)` under the coherent topology.
    pub cover: FibredCompletion,
    /// `rho[c][R]`: index in Ω(c) of `{f : (f,1,1) ∈ R}`.
    pub rho: Vec<Vec<usize>>,
    /// `lambda[c][S]`: index in the cover fibre of `⋁_{f∈S} ∃_f(1)`.
    pub lambda: Vec<Vec<usize>>,
}

fn violation(claim: &'static str, witness: String) -> Error {
    Error::TheoremViolation { claim, witness }
}

impl GleasonCover {
    pub fn cover_locale(&self) -> &InternalLocale {
        &self.cover.locale
    }

    pub fn cover_fibre(&self, c: usize) -> &FinLattice {
        &self.cover.locale.lattice.fibres[c]
    }

    fn label(&self, c: usize) -> String {
        self.base.object_label(c)
    }
}

/// Assemble the cover and check that ρ and λ are well defined and natural.
/// Beck-Chevalley is checked on the pullbacks the base has.
pub fn gleason_cover(c: &FinCategory, j: &GrothTopology) -> Result<GleasonCover> {
    let om = omega(c, j)?;
    let nn = omega_notnot(c, &om)?;
    let omega_nn = locale_over(InternalLattice::from_sieves(c, j, &nn)?, false)?;
    let site = relative_site(&omega_nn.lattice, TopologyKind::Coherent, None)?;
    let cover = fibred_ideal_completion(site, false)?;
    let t = &cover.site.total;
    let n = c.object_count();

    let mut rho = Vec::with_capacity(n);
    for o in 0..n {
        let top = omega_nn.lattice.fibres[o].top();
        let mut row = Vec::with_capacity(cover.sieves[o].len());
        for r in &cover.sieves[o] {
            let mut s = Sieve::empty(c, o);
            for &f in c.incoming(o) {
                let ftop = omega_nn.lattice.fibres[c.dom(f)].top();
                let m = t.morphism(f, ftop, top).expect("(f,1,1) exists");
                if r.contains(t, m) {
                    s.members.insert(c.local_index(f));
                }
            }
            row.push(om.position(&s).ok_or_else(|| violation("ρ lands in closed sieves", s.describe(c)))?);
        }
        rho.push(row);
    }

    let cl = &cover.locale;
    let mut lambda = Vec::with_capacity(n);
    for o in 0..n {
        let fib = &cl.lattice.fibres[o];
        let row = om.sieves[o]
            .iter()
            .map(|s| {
                s.morphisms(c)
                    .fold(fib.bottom(), |acc, f| fib.join(acc, cl.exists[f][cl.lattice.fibres[c.dom(f)].top()]))
            })
            .collect();
        lambda.push(row);
    }

    let g = GleasonCover {
        base: c.clone(),
        topology: j.clone(),
        omega: om,
        notnot: nn,
        omega_nn,
        cover,
        rho,
        lambda,
    };
    check_maps(&g)?;
    Ok(g)
}

/// Naturality of ρ and λ, meets under ρ, `S ⊆ ρλ(S)` and `λ(¬S) ≤ ¬λ(S)`.
fn check_maps(g: &GleasonCover) -> Result<()> {
    let c = &g.base;
    let cl = &g.cover.locale.lattice;
    for f in 0..c.morphism_count() {
        let (d, t) = (c.dom(f), c.cod(f));
        for r in 0..cl.fibres[t].len() {
            if g.rho[d][cl.map(f, r)] != g.omega.transition[f][g.rho[t][r]] {
                return Err(violation("ρ is natural", format!("along {}", c.morphism_label(f))));
            }
        }
        for s in 0..g.omega.len(t) {
            if g.lambda[d][g.omega.transition[f][s]] != cl.map(f, g.lambda[t][s]) {
                return Err(violation("λ is natural", format!("along {}", c.morphism_label(f))));
            }
        }
    }
    let neg = classifier::negation_tables(c, &g.omega)?;
    for o in 0..c.object_count() {
        let fib = &cl.fibres[o];
        let om = &g.omega.sieves[o];
        if g.rho[o][fib.top()] != g.omega.top(o) || g.rho[o][fib.bottom()] != g.omega.bottom(o) {
            return Err(violation("ρ preserves 0 and 1", g.label(o)));
        }
        for a in 0..fib.len() {
            for b in 0..fib.len() {
                let m = &om[g.rho[o][a]].intersection(&om[g.rho[o][b]]);
                if om[g.rho[o][fib.meet(a, b)]] != *m {
                    return Err(violation("ρ preserves meets", g.label(o)));
                }
            }
        }
        for s in 0..om.len() {
            let l = g.lambda[o][s];
            if !om[s].is_subset(&om[g.rho[o][l]]) {
                return Err(violation("S ⊆ ρλ(S)", om[s].describe(c)));
            }
            if !fib.leq(g.lambda[o][neg[o][s]], fib.neg(l)) {
                return Err(violation("λ(¬S) ≤ ¬λ(S)", om[s].describe(c)));
            }
        }
    }
    Ok(())
}

/// Every cover fibre is Stone, and the pseudo-complement of each closed sieve
/// `R` on `(c,1)` is `{(f,x,1) : ∃_f(x) ∧ ∃_g(x') = 0 for all (g,x',1) ∈ R}`.
pub fn gleason_is_de_morgan(g: &GleasonCover) -> Result<()> {
    let t = &g.cover.site.total;
    let nn = &g.omega_nn;
    for o in 0..g.base.object_count() {
        let fib = g.cover_fibre(o);
        if !lattice::is_stone(fib)?.holds {
            return Err(violation("cover fibres are Stone", g.label(o)));
        }
        let lc = &nn.lattice.fibres[o];
        let ex = |m: usize| {
            let (f, y, _) = t.triple(m);
            nn.exists[f][y]
        };
        for (i, r) in g.cover.sieves[o].iter().enumerate() {
            let images: Vec<usize> = r.morphisms(t).map(ex).collect();
            let mut formula = Sieve::empty(t, t.top(o));
            for (k, &m) in t.incoming(t.top(o)).iter().enumerate() {
                let e = ex(m);
                if images.iter().all(|&e2| lc.meet(e, e2) == lc.bottom()) {
                    formula.members.insert(k);
                }
            }
            if g.cover.sieves[o][fib.neg(i)] != formula {
                return Err(violation("pseudo-complement formula", r.describe(t)));
            }
        }
    }
    Ok(())
}

/// First `(c, R)` with `R ≠ 0` that never restricts to 1 over an object not
/// covered by the empty sieve.
pub fn minimality_failure(a: &InternalLattice) -> Option<(usize, usize)> {
    let b = &a.base;
    for c in 0..b.object_count() {
        let fib = &a.fibres[c];
        for r in 0..fib.len() {
            if r == fib.bottom() {
                continue;
            }
            let reaches = b.incoming(c).iter().any(|&f| {
                let d = b.dom(f);
                !a.topology.empty_covers(d) && a.map(f, r) == a.fibres[d].top()
            });
            if !reaches {
                return Some((c, r));
            }
        }
    }
    None
}

pub fn check_minimality(g: &GleasonCover) -> Result<()> {
    match minimality_failure(&g.cover.locale.lattice) {
        None => Ok(()),
        Some((c, r)) => Err(violation("the cover is minimal", format!("{} at {}", g.label(c), g.cover_fibre(c).label(r)))),
    }
}

/// ρ restricted to the regular elements of each cover fibre is a bijection
/// onto Ω¬¬(c).
pub fn check_rho_regular_iso(g: &GleasonCover) -> Result<()> {
    for o in 0..g.base.object_count() {
        let fib = g.cover_fibre(o);
        let (_, regular) = lattice::regular_elements(fib)?;
        if regular.len() != g.notnot.len(o) {
            return Err(violation(
                "ρ maps regular elements onto Ω¬¬",
                format!("{}: {} regular vs {}", g.label(o), regular.len(), g.notnot.len(o)),
            ));
        }
        let mut hit = vec![false; g.notnot.len(o)];
        for &r in &regular {
            let s = g.omega.get(o, g.rho[o][r]);
            match g.notnot.position(s) {
                Some(k) if !hit[k] => hit[k] = true,
                _ => return Err(violation("ρ maps regular elements onto Ω¬¬", s.describe(&g.base))),
            }
        }
    }
    Ok(())
}

/// ρ is a bijection onto Ω at every object.
pub fn is_equivalence(g: &GleasonCover) -> bool {
    (0..g.base.object_count()).all(|o| {
        let mut hit = vec![false; g.omega.len(o)];
        g.rho[o].iter().all(|&s| !core::mem::replace(&mut hit[s], true)) && hit.iter().all(|&h| h)
    })
}

pub fn cover_surjectivity(g: &GleasonCover) -> Surjectivity {
    surjectivity_verdict(&g.cover.site)
}

/// The internal lattice 1⊔1 as the complemented closed sieves, its
/// completion under the coherent topology, and the comparison with Ω.
pub fn check_idl_coproduct_is_omega(c: &FinCategory, j: &GrothTopology) -> Result<()> {
    let om = omega(c, j)?;
    let two = coproduct_of_terminals(c, j)?;
    let map = classify_two_points(c, j, &two, &om)?;
    let n = c.object_count();
    let mut fibres = Vec::with_capacity(n);
    let mut elems: Vec<Vec<usize>> = Vec::with_capacity(n);
    for o in 0..n {
        let l = om.lattice(c, o)?;
        let comp = lattice::complemented_elements(&l);
        let mut image = map[o].clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != map[o].len() || image != comp.iter().collect::<Vec<_>>() {
            return Err(violation("1⊔1 is the complemented part of Ω", g_label(c, o)));
        }
        for &a in &image {
            for &b in &image {
                if !comp.contains(l.join(a, b)) {
                    return Err(violation("joins of complemented sieves are complemented", g_label(c, o)));
                }
            }
        }
        fibres.push(l.restrict(&image)?);
        elems.push(image);
    }
    let transition = (0..c.morphism_count())
        .map(|f| {
            let d = c.dom(f);
            elems[c.cod(f)]
                .iter()
                .map(|&s| {
                    let t = om.transition[f][s];
                    elems[d].iter().position(|&e| e == t).ok_or_else(|| violation("1⊔1 is a subpresheaf", c.morphism_label(f)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let b = InternalLattice::new(c.clone(), j.clone(), fibres, transition)?;
    let site = relative_site(&b, TopologyKind::Coherent, None)?;
    let fc = fibred_ideal_completion(site, false)?;
    let t = &fc.site.total;
    for o in 0..n {
        let top = b.fibres[o].top();
        let mut hit = vec![false; om.len(o)];
        for r in &fc.sieves[o] {
            let mut s = Sieve::empty(c, o);
            for &f in c.incoming(o) {
                let m = t.morphism(f, b.fibres[c.dom(f)].top(), top).expect("(f,1,1) exists");
                if r.contains(t, m) {
                    s.members.insert(c.local_index(f));
                }
            }
            let k = om.position(&s).ok_or_else(|| violation("ρ lands in closed sieves", s.describe(c)))?;
            if core::mem::replace(&mut hit[k], true) {
                return Err(violation("Idl(1⊔1) → Ω is injective", g_label(c, o)));
            }
            // f ∈ R iff x ⊆ f*(S_R) for (f,x,1)
            for (i, &m) in t.incoming(t.top(o)).iter().enumerate() {
                let (f, x, _) = t.triple(m);
                let xs = om.get(c.dom(f), elems[c.dom(f)][x]);
                let pulled = crate::site::pullback_unchecked(c, &s, f);
                if r.members.contains(i) != xs.is_subset(&pulled) {
                    return Err(violation("membership criterion of Idl(1⊔1)", t.morphism_label(m)));
                }
            }
        }
        if !hit.iter().all(|&h| h) {
            return Err(violation("Idl(1⊔1) → Ω is surjective", g_label(c, o)));
        }
    }
    Ok(())
}

fn g_label(c: &FinCategory, o: usize) -> String {
    c.object_label(o)
}

/// The full subcategory of `G(Ω¬¬)` on the objects `(c,x)` with `x` an atom.
#[derive(Clone, Debug)]
pub struct AtomsCategory {
    pub category: FinCategory,
    /// `(c, x)` for each object, `x` indexing Ω¬¬(c).
    pub objects: Vec<(usize, usize)>,
    /// Object count of the whole of `G(Ω¬¬)`.
    pub total_objects: usize,
}

pub fn atoms_category(g: &GleasonCover) -> Result<AtomsCategory> {
    atoms_of(&g.topology, &g.cover.site.total)
}

/// As [`atoms_category`], from `G(Ω¬¬)` alone without building the cover.
pub fn atoms_category_of_site(c: &FinCategory, j: &GrothTopology) -> Result<AtomsCategory> {
    let om = omega(c, j)?;
    let nn = omega_notnot(c, &om)?;
    let t = grothendieck_construction(&InternalLattice::from_sieves(c, j, &nn)?);
    atoms_of(j, &t)
}

fn atoms_of(j: &GrothTopology, t: &Total) -> Result<AtomsCategory> {
    if !j.is_trivial() {
        return Err(Error::NotPresheafBase);
    }
    let nn = &t.lattice;
    let mut objects = Vec::new();
    let mut tot_ids = Vec::new();
    for c in 0..nn.base.object_count() {
        for x in nn.fibres[c].atoms() {
            objects.push((c, x));
            tot_ids.push(t.object(c, x));
        }
    }
    let mut slot = vec![usize::MAX; t.object_count()];
    for (i, &o) in tot_ids.iter().enumerate() {
        slot[o] = i;
    }
    let mut mors = Vec::new();
    let mut index = vec![usize::MAX; t.morphism_count()];
    let (mut dom, mut cod) = (Vec::new(), Vec::new());
    for m in 0..t.morphism_count() {
        let (a, b) = (slot[t.dom(m)], slot[t.cod(m)]);
        if a != usize::MAX && b != usize::MAX {
            index[m] = mors.len();
            mors.push(m);
            dom.push(a);
            cod.push(b);
        }
    }
    if objects.is_empty() {
        return Err(Error::EmptyCategory);
    }
    let ident: Vec<usize> = tot_ids.iter().map(|&o| index[t.identity(o)]).collect();
    let cat = FinCategory::from_fn(objects.len(), dom, cod, ident, |a, b| {
        let r = index[t.compose(mors[a], mors[b])];
        (r != usize::MAX).then_some(r)
    })?;
    let cat = cat.with_labels(
        tot_ids.iter().map(|&o| t.object_label(o)).collect(),
        mors.iter().map(|&m| t.morphism_label(m)).collect(),
    );
    if let Err((f, h)) = has_right_ore(&cat) {
        return Err(violation(
            "the atoms category has the right Ore property",
            format!("({}, {})", cat.morphism_label(f), cat.morphism_label(h)),
        ));
    }
    Ok(AtomsCategory {
        category: cat,
        objects,
        total_objects: t.object_count(),
    })
}

/// The site of the cover: `G(Ω¬¬)` under the coherent topology, without the
/// ideal completion.
pub fn cover_site(c: &FinCategory, j: &GrothTopology) -> Result<RelativeSite> {
    let om = omega(c, j)?;
    let nn = omega_notnot(c, &om)?;
    relative_site(&InternalLattice::from_sieves(c, j, &nn)?, TopologyKind::Coherent, None)
}

/// Objects of the cover site on which every covering sieve contains a split
/// epimorphism, by enumerating the covering sieves.
pub fn irreducible_objects(site: &RelativeSite, limit: usize) -> Result<Vec<bool>> {
    let t = &site.total;
    let k = &site.topology;
    (0..t.object_count())
        .map(|o| {
            let split = |m: usize| {
                t.hom(o, t.dom(m)).iter().any(|&s| t.compose(m, s) == t.identity(o))
            };
            Ok(k.covering_sieves(t, o, limit)?
                .iter()
                .all(|s| s.morphisms(t).any(split)))
        })
        .collect()
}

/// Irreducible objects are exactly the `(c,x)` with `x` an atom of Ω¬¬(c).
pub fn check_irreducibles(site: &RelativeSite, limit: usize) -> Result<()> {
    let t = &site.total;
    let irr = irreducible_objects(site, limit)?;
    for (o, &i) in irr.iter().enumerate() {
        let (c, x) = t.pair(o);
        let atom = t.lattice.fibres[c].atoms().contains(&x);
        if i != atom {
            return Err(violation("irreducible objects are the atoms", t.object_label(o)));
        }
    }
    Ok(())
}
