//! One function per subcommand, each turning an input document into a JSON
//! result.

use demorgan_core::classifier::{analyse, describe_verdict, is_boolean_topos, is_de_morgan_topos, stone_report, ToposVerdict};
use demorgan_core::enumerate::for_each_category;
use demorgan_core::error::Error;
use demorgan_core::fincat::{has_amalgamation, has_right_ore, is_cartesian, terminal_object, CartesianVerdict, Category, FinCategory};
use demorgan_core::gleason::{
    atoms_category, check_idl_coproduct_is_omega, check_irreducibles, check_minimality, check_rho_regular_iso,
    cover_surjectivity, gleason_cover, gleason_is_de_morgan, is_equivalence,
};
use demorgan_core::indcomp::{embed_morphism, extract_base_failure, factor_through_base, ind_amalgamate, AmalgamationOutcome, IndObject};
use demorgan_core::indlat::{check_loc_ideal_equivalence, locale_over, relative_de_morgan, InternalLattice, InternalLocale};
use demorgan_core::lattice::{self, FinLattice};
use demorgan_core::locale::{cross_check_gleason, gleason_locale_direct, idl_plus_plus, space_predicates};
use serde_json::{json, Value};

use crate::load::{self, Site};

/// Sieve enumeration cap for the irreducibility check.
const SIEVE_LIMIT: usize = 1 << 16;

fn pair_names(c: &FinCategory, (f, g): (usize, usize)) -> Value {
    json!([c.morphism_label(f), c.morphism_label(g)])
}

fn verdict_json<C: Category>(c: &C, v: &ToposVerdict) -> Value {
    json!({
        "holds": v.holds,
        "witness": v.witness.map(|o| c.object_label(o)),
        "per_object": v.per_object.iter().enumerate().map(|(o, &(two, q, iso))| json!({
            "object": c.object_label(o),
            "coproduct_size": two,
            "target_size": q,
            "bijective": iso,
        })).collect::<Vec<_>>(),
        "summary": describe_verdict(c, v),
    })
}

pub fn check_category(text: &str) -> Result<Value, Error> {
    let c = load::category(&load::parse(text, "category")?)?;
    let cart = is_cartesian(&c);
    let cart_json = match &cart {
        CartesianVerdict::Cartesian { .. } => json!({"holds": true}),
        CartesianVerdict::NoTerminal => json!({"holds": false, "reason": "no terminal object"}),
        CartesianVerdict::MissingPullback { f, g } => {
            json!({"holds": false, "reason": "missing pullback", "cospan": pair_names(&c, (*f, *g))})
        }
    };
    Ok(json!({
        "objects": (0..c.object_count()).map(|o| c.object_label(o)).collect::<Vec<_>>(),
        "morphisms": (0..c.morphism_count()).map(|m| json!({
            "id": c.morphism_label(m),
            "dom": c.object_label(c.dom(m)),
            "cod": c.object_label(c.cod(m)),
        })).collect::<Vec<_>>(),
        "terminal": terminal_object(&c).map(|o| c.object_label(o)),
        "cartesian": cart_json,
        "right_ore": has_right_ore(&c).is_ok(),
        "amalgamation": has_amalgamation(&c).is_ok(),
    }))
}

fn site(text: &str) -> Result<Site, Error> {
    load::site(&load::parse(text, "site")?)
}

pub fn check_site(text: &str) -> Result<Value, Error> {
    let s = site(text)?;
    let c = &s.category;
    Ok(json!({
        "objects": c.object_count(),
        "morphisms": c.morphism_count(),
        "trivial_topology": s.topology.is_trivial(),
        "frame_site": s.frame.is_some(),
        "minimal_covers": (0..c.object_count()).map(|o| json!({
            "object": c.object_label(o),
            "sieve": s.topology.minimal(o).describe(c),
            "empty_covers": s.topology.empty_covers(o),
        })).collect::<Vec<_>>(),
    }))
}

fn lattice_json(l: &FinLattice, lee: &[usize]) -> Result<Value, Error> {
    let stone = lattice::is_stone(l)?;
    let (b, _) = lattice::regular_elements(l)?;
    Ok(json!({
        "size": l.len(),
        "stone": stone.holds,
        "stone_witness": stone.x.map(|x| l.label(x)),
        "boolean": lattice::is_boolean(l),
        "regular_elements": b.len(),
        "regular_frame": lattice::is_regular_frame(l).holds,
        "ideals": lattice::ideals(l)?.sets.len(),
        "lee": lee.iter().map(|&r| json!({"r": r, "holds": lattice::lee_property(l, r).is_ok()})).collect::<Vec<_>>(),
    }))
}

pub fn lattice(text: &str, lee: &[usize]) -> Result<Value, Error> {
    let l = load::lattice(&load::parse(text, "lattice")?)?;
    lattice_json(&l, lee)
}

pub fn omega(text: &str, lee: &[usize]) -> Result<Value, Error> {
    let s = site(text)?;
    let c = &s.category;
    let recs = stone_report(c, &s.topology, lee)?;
    let a = analyse(c, &s.topology)?;
    Ok(json!({
        "objects": recs.iter().map(|r| json!({
            "object": c.object_label(r.object),
            "omega_size": r.omega_size,
            "regular_size": r.regular_size,
            "stone": r.stone,
            "boolean": r.boolean,
            "lee": r.lee.iter().map(|&(k, v)| (k.to_string(), Value::Bool(v))).collect::<serde_json::Map<_, _>>(),
        })).collect::<Vec<_>>(),
        "de_morgan": a.de_morgan.holds,
        "boolean": a.boolean.holds,
    }))
}

pub fn de_morgan(text: &str) -> Result<Value, Error> {
    let s = site(text)?;
    Ok(verdict_json(&s.category, &is_de_morgan_topos(&s.category, &s.topology)?))
}

pub fn boolean(text: &str) -> Result<Value, Error> {
    let s = site(text)?;
    Ok(verdict_json(&s.category, &is_boolean_topos(&s.category, &s.topology)?))
}

pub fn ore(text: &str) -> Result<Value, Error> {
    let c = load::category(&load::parse(text, "category")?)?;
    Ok(match has_right_ore(&c) {
        Ok(()) => json!({"holds": true}),
        Err(w) => json!({"holds": false, "cospan": pair_names(&c, w)}),
    })
}

pub fn amalg(text: &str) -> Result<Value, Error> {
    let c = load::category(&load::parse(text, "category")?)?;
    Ok(match has_amalgamation(&c) {
        Ok(()) => json!({"holds": true}),
        Err(w) => json!({"holds": false, "span": pair_names(&c, w)}),
    })
}

pub fn gleason(text: &str, atoms: bool) -> Result<Value, Error> {
    let s = site(text)?;
    let c = &s.category;
    let g = gleason_cover(c, &s.topology)?;
    gleason_is_de_morgan(&g)?;
    check_minimality(&g)?;
    check_rho_regular_iso(&g)?;
    check_idl_coproduct_is_omega(c, &s.topology)?;
    let surj = cover_surjectivity(&g);
    let base = is_de_morgan_topos(c, &s.topology)?;
    let equivalence = is_equivalence(&g);
    let mut out = json!({
        "fibres": (0..c.object_count()).map(|o| json!({
            "object": c.object_label(o),
            "omega_size": g.omega.len(o),
            "regular_size": g.notnot.len(o),
            "cover_size": g.cover_fibre(o).len(),
        })).collect::<Vec<_>>(),
        "cover_de_morgan": true,
        "minimal": true,
        "rho_regular_iso": true,
        "idl_coproduct_is_omega": true,
        "surjective": {"holds": surj.holds, "nontrivial": surj.nontrivial, "covers_project": surj.covers_project},
        "base_de_morgan": base.holds,
        "equivalence": equivalence,
    });
    if atoms {
        let a = atoms_category(&g)?;
        check_irreducibles(&g.cover.site, SIEVE_LIMIT)?;
        out["atoms"] = json!({
            "objects": a.category.object_count(),
            "morphisms": a.category.morphism_count(),
            "right_ore": has_right_ore(&a.category).is_ok(),
            "irreducibles_are_atoms": true,
        });
    }
    Ok(out)
}

pub fn locale(text: &str) -> Result<Value, Error> {
    let l = load::frame(&load::parse(text, "lattice or space")?)?;
    let p = space_predicates(&l)?;
    let direct = gleason_locale_direct(&l)?;
    let pp = idl_plus_plus(&l)?;
    let cross = cross_check_gleason(&l)?;
    Ok(json!({
        "frame": lattice_json(&l, &[])?,
        "extremally_disconnected": p.extremally_disconnected,
        "almost_discrete": p.almost_discrete,
        "regular": p.regular,
        "idl_omega_fixed": p.idl_omega_fixed,
        "gleason_direct_size": direct.len(),
        "idl_plus_plus_size": pp.len(),
        "cross_check": {"holds": cross.holds, "site_size": cross.site_size, "direct_size": cross.direct_size},
    }))
}

/// `loc-ideal` accepts an internal-lattice document, or a site with `of`
/// naming Ω or Ω¬¬.
pub fn loc_ideal(text: &str, of: Option<&str>) -> Result<Value, Error> {
    let v: Value = load::parse(text, "JSON")?;
    let l: InternalLocale = if v.get("fibres").is_some() {
        let doc: load::InternalLatticeDoc = load::parse(text, "internal-lattice")?;
        locale_over(load::internal_lattice(&doc)?, true)?
    } else {
        let s = site(text)?;
        let om = demorgan_core::classifier::omega(&s.category, &s.topology)?;
        let fam = match of.unwrap_or("omega") {
            "omega" => om,
            "notnot" => demorgan_core::classifier::omega_notnot(&s.category, &om)?,
            other => return Err(Error::InvalidInput(format!("--of expects omega or notnot, got {other}"))),
        };
        locale_over(InternalLattice::from_sieves(&s.category, &s.topology, &fam)?, true)?
    };
    let eq = check_loc_ideal_equivalence(&l)?;
    let dm = relative_de_morgan(&l)?;
    let base = &l.lattice.base;
    Ok(json!({
        "fibre_sizes": (0..base.object_count()).map(|o| json!({"object": base.object_label(o), "size": l.lattice.fibres[o].len()})).collect::<Vec<_>>(),
        "certificates": {
            "adjunction_pairs": l.certificates.adjunction_pairs,
            "beck_chevalley_squares": l.certificates.beck_chevalley_squares,
            "frobenius_triples": l.certificates.frobenius_triples,
            "pseudo_complements": l.certificates.pseudo_complements,
            "sheaf": l.certificates.sheaf,
        },
        "loc_ideal_equivalence": {"holds": eq.holds, "failure": eq.failure},
        "relative_de_morgan": {"holds": dm.holds, "stone": dm.stone, "principal": dm.principal, "failure": dm.failure},
    }))
}

pub fn ind_amalg(text: &str, f: &str, g: &str, bound: usize) -> Result<Value, Error> {
    let c = load::category(&load::parse(text, "category")?)?;
    let find = |n: &str| c.morphism_named(n).ok_or_else(|| Error::UnknownName(n.to_string()));
    let (f, g) = (find(f)?, find(g)?);
    if c.dom(f) != c.dom(g) {
        return Err(Error::InvalidInput("the span legs need a common domain".into()));
    }
    let a = IndObject::embed(&c, c.dom(f));
    let (b, cc) = (IndObject::embed(&c, c.cod(f)), IndObject::embed(&c, c.cod(g)));
    let out = ind_amalgamate(&c, &a, (&b, &embed_morphism(f)), (&cc, &embed_morphism(g)), bound)?;
    let cert = extract_base_failure(&c, f, g);
    let outcome = match &out {
        AmalgamationOutcome::Found(am) => {
            let (d, h, k) = factor_through_base(&c, f, g, am)?;
            json!({
                "found": true,
                "apex_size": am.apex.len(),
                "apex_top": c.object_label(am.apex.top_object()),
                "base_amalgamation": {"object": c.object_label(d), "legs": pair_names(&c, (h, k))},
            })
        }
        AmalgamationOutcome::NoneWithinBound { bound, diagrams } => {
            json!({"found": false, "none_within_bound": bound, "diagrams_searched": diagrams})
        }
    };
    if out.found().is_some() && cert.is_some() {
        return Err(Error::TheoremViolation {
            claim: "a base failure rules out ind-amalgamation",
            witness: format!("{} {}", c.morphism_label(f), c.morphism_label(g)),
        });
    }
    Ok(json!({
        "span": pair_names(&c, (f, g)),
        "outcome": outcome,
        "base_failure": cert.map(|b| json!({"pairs_checked": b.pairs_checked})),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusCheck {
    Count,
    OreVsDeMorgan,
    Amalgamation,
}

pub fn corpus(max_objects: usize, max_morphisms: usize, check: CorpusCheck, bound: usize) -> Result<Value, Error> {
    let mut count = 0u64;
    let mut holds = 0u64;
    let mut mismatches = 0u64;
    let mut samples: Vec<String> = Vec::new();
    let mut err = None;
    for_each_category(max_objects, max_morphisms, |c| {
        if err.is_some() {
            return;
        }
        count += 1;
        match check {
            CorpusCheck::Count => {}
            CorpusCheck::OreVsDeMorgan => match is_de_morgan_topos(c, &demorgan_core::site::GrothTopology::trivial(c)) {
                Ok(v) => {
                    holds += v.holds as u64;
                    if v.holds != has_right_ore(c).is_ok() {
                        mismatches += 1;
                        if samples.len() < 16 {
                            samples.push(format!("{c:?}"));
                        }
                    }
                }
                Err(e) => err = Some(e),
            },
            CorpusCheck::Amalgamation => match crate::amalgamation_consistency(c, bound) {
                Ok(ok) => {
                    holds += has_amalgamation(c).is_ok() as u64;
                    if !ok {
                        mismatches += 1;
                        if samples.len() < 16 {
                            samples.push(format!("{c:?}"));
                        }
                    }
                }
                Err(e) => err = Some(e),
            },
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(json!({
        "max_objects": max_objects,
        "max_morphisms": max_morphisms,
        "categories": count,
        "property_holds": holds,
        "mismatches": mismatches,
        "mismatch_samples": samples,
    }))
}
