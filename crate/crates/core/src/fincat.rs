//! Finite categories as explicit tables.
//!
//! Objects and morphisms are dense indices in input order. Every "first"
//! witness returned below is the smallest one in that order, so fixtures are
//! stable across runs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// The read interface every category in the crate offers: explicit tables
/// ([`FinCategory`]) and implicitly composed total categories alike.
pub trait Category {
    fn object_count(&self) -> usize;
    fn morphism_count(&self) -> usize;
    fn dom(&self, m: usize) -> usize;
    fn cod(&self, m: usize) -> usize;
    fn identity(&self, o: usize) -> usize;
    /// `g ∘ f`; callers guarantee `cod(f) == dom(g)`.
    fn compose(&self, g: usize, f: usize) -> usize;
    /// Morphisms with codomain `o`, increasing.
    fn incoming(&self, o: usize) -> &[usize];
    /// Position of `m` inside `into(cod(m))`.
    fn local_index(&self, m: usize) -> usize;

    fn is_identity(&self, m: usize) -> bool {
        self.identity(self.dom(m)) == m
    }

    fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.incoming(b)
            .iter()
            .copied()
            .filter(|&m| self.dom(m) == a)
            .collect()
    }

    fn object_label(&self, o: usize) -> String {
        format!("o{o}")
    }

    fn morphism_label(&self, m: usize) -> String {
        format!("m{m}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Labels {
    objects: Vec<String>,
    morphisms: Vec<String>,
}

/// A validated finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    dom: Vec<usize>,
    cod: Vec<usize>,
    ident: Vec<usize>,
    comp: Vec<u32>,
    into: Vec<Vec<usize>>,
    local: Vec<usize>,
    labels: Option<Labels>,
}

impl Category for FinCategory {
    fn object_count(&self) -> usize {
        self.ident.len()
    }
    fn morphism_count(&self) -> usize {
        self.dom.len()
    }
    #[inline]
    fn dom(&self, m: usize) -> usize {
        self.dom[m]
    }
    #[inline]
    fn cod(&self, m: usize) -> usize {
        self.cod[m]
    }
    #[inline]
    fn identity(&self, o: usize) -> usize {
        self.ident[o]
    }
    #[inline]
    fn compose(&self, g: usize, f: usize) -> usize {
        let r = self.comp[g * self.dom.len() + f];
        debug_assert!(r != NONE, "composing non-composable pair");
        r as usize
    }
    #[inline]
    fn incoming(&self, o: usize) -> &[usize] {
        &self.into[o]
    }
    #[inline]
    fn local_index(&self, m: usize) -> usize {
        self.local[m]
    }
    fn object_label(&self, o: usize) -> String {
        match &self.labels {
            Some(l) => l.objects[o].clone(),
            None => format!("o{o}"),
        }
    }
    fn morphism_label(&self, m: usize) -> String {
        match &self.labels {
            Some(l) => l.morphisms[m].clone(),
            None => format!("m{m}"),
        }
    }
}

/// Raw, name-based description of a category as read from a document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(id, dom, cod)`.
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism id)`.
    pub identities: Vec<(String, String)>,
    /// `(g, f, g ∘ f)`.
    pub composition: Vec<(String, String, String)>,
}

/// Build and check a category from name-based tables.
///
/// Identities missing from `morphisms` are synthesized (named after the
/// identities map, or `id_<object>` when absent there) and appended after the
/// listed morphisms; composites with an identity may be omitted.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    if raw.objects.is_empty() {
        return Err(Error::EmptyCategory);
    }
    let mut obj_ix = BTreeMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_ix.insert(o.as_str(), i).is_some() {
            return Err(Error::DuplicateName(o.clone()));
        }
    }
    let lookup_obj = |n: &str| {
        obj_ix
            .get(n)
            .copied()
            .ok_or_else(|| Error::UnknownName(n.to_string()))
    };
    let mut names: Vec<String> = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut mor_ix: BTreeMap<String, usize> = BTreeMap::new();
    for (id, d, c) in &raw.morphisms {
        if mor_ix.insert(id.clone(), names.len()).is_some() {
            return Err(Error::DuplicateName(id.clone()));
        }
        names.push(id.clone());
        dom.push(lookup_obj(d)?);
        cod.push(lookup_obj(c)?);
    }
    let mut ident = vec![usize::MAX; raw.objects.len()];
    for (o, m) in &raw.identities {
        let oi = lookup_obj(o)?;
        if ident[oi] != usize::MAX {
            return Err(Error::DuplicateName(o.clone()));
        }
        let mi = match mor_ix.get(m) {
            Some(&mi) => mi,
            None => {
                let mi = names.len();
                mor_ix.insert(m.clone(), mi);
                names.push(m.clone());
                dom.push(oi);
                cod.push(oi);
                mi
            }
        };
        if dom[mi] != oi || cod[mi] != oi {
            return Err(Error::BadIdentity(m.clone()));
        }
        ident[oi] = mi;
    }
    for (oi, o) in raw.objects.iter().enumerate() {
        if ident[oi] == usize::MAX {
            let name = format!("id_{o}");
            if mor_ix.contains_key(&name) {
                return Err(Error::DuplicateName(name));
            }
            let mi = names.len();
            mor_ix.insert(name.clone(), mi);
            names.push(name);
            dom.push(oi);
            cod.push(oi);
            ident[oi] = mi;
        }
    }
    let m = names.len();
    let mut comp = vec![NONE; m * m];
    let lookup_mor = |n: &str| {
        mor_ix
            .get(n)
            .copied()
            .ok_or_else(|| Error::UnknownName(n.to_string()))
    };
    for (g, f, r) in &raw.composition {
        let (gi, fi, ri) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(r)?);
        if cod[fi] != dom[gi] || dom[ri] != dom[fi] || cod[ri] != cod[gi] {
            return Err(Error::BadComposite {
                g: g.clone(),
                f: f.clone(),
                result: r.clone(),
            });
        }
        let slot = &mut comp[gi * m + fi];
        if *slot != NONE && *slot != ri as u32 {
            return Err(Error::BadComposite {
                g: g.clone(),
                f: f.clone(),
                result: r.clone(),
            });
        }
        *slot = ri as u32;
    }
    let n_obj = raw.objects.len();
    let labels = Labels {
        objects: raw.objects.clone(),
        morphisms: names,
    };
    FinCategory::checked(n_obj, dom, cod, ident, comp, Some(labels))
}

impl FinCategory {
    /// Build from index tables. `comp(g, f)` is consulted for every composable
    /// pair where neither side is an identity; identity composites are filled in.
    pub fn from_fn(
        n_obj: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        ident: Vec<usize>,
        mut comp: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<FinCategory> {
        let m = dom.len();
        let mut table = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if cod[f] == dom[g] && ident[dom[g]] != g && ident[dom[f]] != f {
                    if let Some(r) = comp(g, f) {
                        table[g * m + f] = r as u32;
                    }
                }
            }
        }
        FinCategory::checked(n_obj, dom, cod, ident, table, None)
    }

    /// Build from a complete table without re-checking the axioms. Used by the
    /// enumerator, whose search already enforces them.
    pub(crate) fn from_trusted(
        n_obj: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        ident: Vec<usize>,
        comp: Vec<u32>,
    ) -> FinCategory {
        let (into, local) = index_into(n_obj, &cod);
        FinCategory {
            dom,
            cod,
            ident,
            comp,
            into,
            local,
            labels: None,
        }
    }

    fn checked(
        n_obj: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        ident: Vec<usize>,
        mut comp: Vec<u32>,
        labels: Option<Labels>,
    ) -> Result<FinCategory> {
        if n_obj == 0 {
            return Err(Error::EmptyCategory);
        }
        let m = dom.len();
        let label = |i: usize| match &labels {
            Some(l) => l.morphisms[i].clone(),
            None => format!("m{i}"),
        };
        for (o, &i) in ident.iter().enumerate() {
            if i >= m || dom[i] != o || cod[i] != o {
                return Err(Error::BadIdentity(format!("object {o}")));
            }
        }
        // identity composites: fill when absent, reject when contradicting
        for f in 0..m {
            let left = ident[cod[f]];
            let slot = &mut comp[left * m + f];
            if *slot == NONE {
                *slot = f as u32;
            } else if *slot != f as u32 {
                return Err(Error::BadIdentity(label(left)));
            }
            let right = ident[dom[f]];
            let slot = &mut comp[f * m + right];
            if *slot == NONE {
                *slot = f as u32;
            } else if *slot != f as u32 {
                return Err(Error::BadIdentity(label(right)));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let r = comp[g * m + f];
                if cod[f] == dom[g] {
                    if r == NONE {
                        return Err(Error::MissingComposite {
                            g: label(g),
                            f: label(f),
                        });
                    }
                    let r = r as usize;
                    if r >= m || dom[r] != dom[f] || cod[r] != cod[g] {
                        return Err(Error::BadComposite {
                            g: label(g),
                            f: label(f),
                            result: if r < m { label(r) } else { format!("#{r}") },
                        });
                    }
                } else if r != NONE {
                    return Err(Error::BadComposite {
                        g: label(g),
                        f: label(f),
                        result: label(r as usize),
                    });
                }
            }
        }
        for h in 0..m {
            for g in 0..m {
                if cod[g] != dom[h] {
                    continue;
                }
                let hg = comp[h * m + g] as usize;
                for f in 0..m {
                    if cod[f] != dom[g] {
                        continue;
                    }
                    let gf = comp[g * m + f] as usize;
                    if comp[hg * m + f] != comp[h * m + gf] {
                        return Err(Error::NonAssociative {
                            h: label(h),
                            g: label(g),
                            f: label(f),
                        });
                    }
                }
            }
        }
        let (into, local) = index_into(n_obj, &cod);
        Ok(FinCategory {
            dom,
            cod,
            ident,
            comp,
            into,
            local,
            labels,
        })
    }

    /// Build a category from a preorder given by its `leq` test. Morphisms are
    /// the pairs `a ≤ b`, ordered by `(b, a)`.
    pub fn from_preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> FinCategory {
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        let mut ix = vec![usize::MAX; n * n];
        for b in 0..n {
            for a in 0..n {
                if leq(a, b) {
                    ix[a * n + b] = dom.len();
                    dom.push(a);
                    cod.push(b);
                }
            }
        }
        let ident: Vec<usize> = (0..n).map(|a| ix[a * n + a]).collect();
        let m = dom.len();
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if cod[f] == dom[g] {
                    comp[g * m + f] = ix[dom[f] * n + cod[g]] as u32;
                }
            }
        }
        FinCategory::from_trusted(n, dom, cod, ident, comp)
    }

    pub fn with_labels(mut self, objects: Vec<String>, morphisms: Vec<String>) -> Self {
        assert_eq!(objects.len(), self.object_count());
        assert_eq!(morphisms.len(), self.morphism_count());
        self.labels = Some(Labels { objects, morphisms });
        self
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Look a morphism up by label.
    pub fn morphism_named(&self, name: &str) -> Option<usize> {
        (0..self.morphism_count()).find(|&m| self.morphism_label(m) == name)
    }

    pub fn object_named(&self, name: &str) -> Option<usize> {
        (0..self.object_count()).find(|&o| self.object_label(o) == name)
    }

    /// Raw composition table, row `g`, column `f`; `None` off composable pairs.
    pub fn composite(&self, g: usize, f: usize) -> Option<usize> {
        let r = self.comp[g * self.dom.len() + f];
        (r != NONE).then_some(r as usize)
    }

    /// Export back into a name-based description (identities included).
    pub fn to_raw(&self) -> RawCategory {
        let m = self.morphism_count();
        let mut raw = RawCategory {
            objects: (0..self.object_count())
                .map(|o| self.object_label(o))
                .collect(),
            ..Default::default()
        };
        for i in 0..m {
            raw.morphisms.push((
                self.morphism_label(i),
                self.object_label(self.dom[i]),
                self.object_label(self.cod[i]),
            ));
        }
        for o in 0..self.object_count() {
            raw.identities
                .push((self.object_label(o), self.morphism_label(self.ident[o])));
        }
        for g in 0..m {
            for f in 0..m {
                if let Some(r) = self.composite(g, f) {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        raw.composition.push((
                            self.morphism_label(g),
                            self.morphism_label(f),
                            self.morphism_label(r),
                        ));
                    }
                }
            }
        }
        raw
    }
}

fn index_into(n_obj: usize, cod: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut into = vec![Vec::new(); n_obj];
    let mut local = vec![0; cod.len()];
    for (m, &c) in cod.iter().enumerate() {
        local[m] = into[c].len();
        into[c].push(m);
    }
    (into, local)
}

/// The dual category: same ids, domain and codomain swapped.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let m = c.morphism_count();
    let mut comp = vec![NONE; m * m];
    for g in 0..m {
        for f in 0..m {
            comp[g * m + f] = c.comp[f * m + g];
        }
    }
    let (into, local) = index_into(c.object_count(), &c.dom);
    FinCategory {
        dom: c.cod.clone(),
        cod: c.dom.clone(),
        ident: c.ident.clone(),
        comp,
        into,
        local,
        labels: c.labels.clone(),
    }
}

/// A chosen pullback of the cospan `(f, g)`: `f ∘ left = g ∘ right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Square {
    pub apex: usize,
    pub left: usize,
    pub right: usize,
    pub f: usize,
    pub g: usize,
}

/// A pullback square with its exhaustively verified universal property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackSquare {
    pub square: Square,
    /// For every cone `(apex, a, b)` over the cospan, the unique mediator.
    pub mediators: Vec<((usize, usize, usize), usize)>,
}

/// All cones `(apex, a, b)` over the cospan with `f ∘ a = g ∘ b`, in id order.
pub fn cones<C: Category>(c: &C, f: usize, g: usize) -> Vec<(usize, usize, usize)> {
    let (x, y) = (c.dom(f), c.dom(g));
    let mut out = Vec::new();
    for p in 0..c.object_count() {
        let ha = c.hom(p, x);
        let hb = c.hom(p, y);
        for &a in &ha {
            for &b in &hb {
                if c.compose(f, a) == c.compose(g, b) {
                    out.push((p, a, b));
                }
            }
        }
    }
    out
}

/// Pullback of a cospan by exhaustive cone search, choosing the smallest
/// apex and then the smallest projections among universal cones.
pub fn find_pullback<C: Category>(c: &C, f: usize, g: usize) -> Result<Option<PullbackSquare>> {
    if c.cod(f) != c.cod(g) {
        return Err(Error::NotCospan {
            f: c.morphism_label(f),
            g: c.morphism_label(g),
        });
    }
    let all = cones(c, f, g);
    'cand: for &(p, a, b) in &all {
        let mut mediators = Vec::with_capacity(all.len());
        for &(q, qa, qb) in &all {
            let mut found = None;
            for u in c.hom(q, p) {
                if c.compose(a, u) == qa && c.compose(b, u) == qb {
                    if found.is_some() {
                        continue 'cand;
                    }
                    found = Some(u);
                }
            }
            match found {
                Some(u) => mediators.push(((q, qa, qb), u)),
                None => continue 'cand,
            }
        }
        return Ok(Some(PullbackSquare {
            square: Square {
                apex: p,
                left: a,
                right: b,
                f,
                g,
            },
            mediators,
        }));
    }
    Ok(None)
}

/// Chosen pullbacks for every cospan, indexed by `(f, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackTable {
    m: usize,
    squares: Vec<Option<Square>>,
}

impl PullbackTable {
    pub fn get(&self, f: usize, g: usize) -> Option<&Square> {
        self.squares[f * self.m + g].as_ref()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Square> {
        self.squares.iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartesianVerdict {
    Cartesian {
        terminal: usize,
        pullbacks: PullbackTable,
    },
    NoTerminal,
    MissingPullback {
        f: usize,
        g: usize,
    },
}

impl CartesianVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CartesianVerdict::Cartesian { .. })
    }
}

pub fn terminal_object<C: Category>(c: &C) -> Option<usize> {
    (0..c.object_count()).find(|&t| (0..c.object_count()).all(|o| c.hom(o, t).len() == 1))
}

/// Terminal object plus a pullback for every cospan.
pub fn is_cartesian(c: &FinCategory) -> CartesianVerdict {
    let Some(terminal) = terminal_object(c) else {
        return CartesianVerdict::NoTerminal;
    };
    let m = c.morphism_count();
    let mut squares = vec![None; m * m];
    for f in 0..m {
        for g in 0..m {
            if c.cod(f) != c.cod(g) {
                continue;
            }
            match find_pullback(c, f, g).expect("cospan by construction") {
                Some(sq) => squares[f * m + g] = Some(sq.square),
                None => return CartesianVerdict::MissingPullback { f, g },
            }
        }
    }
    CartesianVerdict::Cartesian {
        terminal,
        pullbacks: PullbackTable { m, squares },
    }
}

/// `{f ∘ h}` as a bitset over `into(cod f)`.
pub(crate) fn principal_image<C: Category>(c: &C, f: usize) -> BitSet {
    let tgt = c.cod(f);
    let mut s = BitSet::new(c.incoming(tgt).len());
    for &h in c.incoming(c.dom(f)) {
        s.insert(c.local_index(c.compose(f, h)));
    }
    s
}

/// Right Ore condition: every cospan completes to a commutative square.
/// On failure, returns the first cospan `(f, g)` in id order with no completion.
pub fn has_right_ore<C: Category>(c: &C) -> core::result::Result<(), (usize, usize)> {
    let m = c.morphism_count();
    let images: Vec<BitSet> = (0..m).map(|f| principal_image(c, f)).collect();
    for f in 0..m {
        for g in 0..m {
            if c.cod(f) == c.cod(g) && images[f].is_disjoint(&images[g]) {
                return Err((f, g));
            }
        }
    }
    Ok(())
}

/// Amalgamation: every span completes to a commutative square. Decided as the
/// right Ore condition of the opposite category; the witness is a span `(f, g)`
/// with common domain.
pub fn has_amalgamation(c: &FinCategory) -> core::result::Result<(), (usize, usize)> {
    has_right_ore(&opposite(c))
}

/// Brute-force amalgamation check straight from the definition, used as an
/// oracle against [`has_amalgamation`].
pub fn has_amalgamation_direct<C: Category>(c: &C) -> bool {
    let m = c.morphism_count();
    (0..m).all(|f| {
        (0..m).all(|g| {
            if c.dom(f) != c.dom(g) {
                return true;
            }
            (0..m).any(|h| {
                c.dom(h) == c.cod(f)
                    && (0..m).any(|k| {
                        c.dom(k) == c.cod(g)
                            && c.cod(k) == c.cod(h)
                            && c.compose(h, f) == c.compose(k, g)
                    })
            })
        })
    })
}

pub mod fixtures {
    //! Small named categories used across tests and examples.
    use super::*;
    use alloc::string::ToString;

    fn s(x: &str) -> String {
        x.to_string()
    }

    pub fn terminal() -> FinCategory {
        validate_category(&RawCategory {
            objects: vec![s("*")],
            ..Default::default()
        })
        .unwrap()
    }

    /// `f: x → z ← y: g`.
    pub fn cospan() -> FinCategory {
        validate_category(&RawCategory {
            objects: vec![s("x"), s("y"), s("z")],
            morphisms: vec![(s("f"), s("x"), s("z")), (s("g"), s("y"), s("z"))],
            ..Default::default()
        })
        .unwrap()
    }

    /// `f: z → x`, `g: z → y`.
    pub fn span() -> FinCategory {
        validate_category(&RawCategory {
            objects: vec![s("x"), s("y"), s("z")],
            morphisms: vec![(s("f"), s("z"), s("x")), (s("g"), s("z"), s("y"))],
            ..Default::default()
        })
        .unwrap()
    }

    /// `0 → 1`.
    pub fn arrow() -> FinCategory {
        validate_category(&RawCategory {
            objects: vec![s("0"), s("1")],
            morphisms: vec![(s("u"), s("0"), s("1"))],
            ..Default::default()
        })
        .unwrap()
    }

    pub fn discrete(n: usize) -> FinCategory {
        validate_category(&RawCategory {
            objects: (0..n).map(|i| format!("d{i}")).collect(),
            ..Default::default()
        })
        .unwrap()
    }

    /// The `n`-element chain `0 < 1 < … < n-1` as a category.
    pub fn chain(n: usize) -> FinCategory {
        FinCategory::from_preorder(n, |a, b| a <= b)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn terminal_category_is_self_dual_and_cartesian() {
        let t = terminal();
        assert_eq!(t.morphism_count(), 1);
        assert_eq!(opposite(&t), t);
        assert!(is_cartesian(&t).holds());
        assert_eq!(has_right_ore(&t), Ok(()));
        assert_eq!(has_amalgamation(&t), Ok(()));
        let sq = find_pullback(&t, 0, 0).unwrap().unwrap();
        assert_eq!(sq.square.apex, 0);
    }

    #[test]
    fn cospan_and_span() {
        let c = cospan();
        let (f, g) = (c.morphism_named("f").unwrap(), c.morphism_named("g").unwrap());
        assert_eq!(c.morphism_count(), 5);
        assert!(find_pullback(&c, f, g).unwrap().is_none());
        assert_eq!(is_cartesian(&c), CartesianVerdict::MissingPullback { f, g });
        assert_eq!(has_right_ore(&c), Err((f, g)));
        assert_eq!(has_amalgamation(&c), Ok(()));

        let sp = span();
        assert_eq!(has_right_ore(&sp), Ok(()));
        let (f, g) = (sp.morphism_named("f").unwrap(), sp.morphism_named("g").unwrap());
        assert_eq!(has_amalgamation(&sp), Err((f, g)));
        assert!(!has_amalgamation_direct(&sp));
        assert!(has_amalgamation_direct(&c));

        // the opposite of COSPAN is SPAN up to the identical relabelling
        let op = opposite(&c);
        assert_eq!(op.to_raw().morphisms, sp.to_raw().morphisms);
        assert_eq!(opposite(&op), c);
        assert_eq!(op.morphism_count(), c.morphism_count());
    }

    #[test]
    fn pullback_of_identity_has_domain_apex() {
        let c = chain(3);
        for h in 0..c.morphism_count() {
            let id = c.identity(c.cod(h));
            let sq = find_pullback(&c, id, h).unwrap().unwrap();
            assert_eq!(sq.square.apex, c.dom(h));
        }
    }

    #[test]
    fn meet_semilattice_is_cartesian() {
        // the 2x2 Boolean lattice a, b < 1, 0 < a, b on indices 0=0, 1=a, 2=b, 3=1
        let leq = |x: usize, y: usize| x == y || x == 0 || y == 3;
        let c = FinCategory::from_preorder(4, leq);
        match is_cartesian(&c) {
            CartesianVerdict::Cartesian {
                terminal,
                pullbacks,
            } => {
                assert_eq!(terminal, 3);
                // pullback of a → 1 ← b is 0
                let a1 = c.hom(1, 3)[0];
                let b1 = c.hom(2, 3)[0];
                assert_eq!(pullbacks.get(a1, b1).unwrap().apex, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let s = |x: &str| x.to_string();
        assert_eq!(
            validate_category(&RawCategory::default()),
            Err(Error::EmptyCategory)
        );
        // endomorphism e with e∘e missing
        let raw = RawCategory {
            objects: vec![s("a")],
            morphisms: vec![(s("e"), s("a"), s("a"))],
            ..Default::default()
        };
        assert!(matches!(
            validate_category(&raw),
            Err(Error::MissingComposite { .. })
        ));
        // (a·a)·a = b·a = a but a·(a·a) = a·b = b
        let raw = RawCategory {
            objects: vec![s("o")],
            morphisms: vec![(s("a"), s("o"), s("o")), (s("b"), s("o"), s("o"))],
            composition: vec![
                (s("a"), s("a"), s("b")),
                (s("a"), s("b"), s("b")),
                (s("b"), s("a"), s("a")),
                (s("b"), s("b"), s("a")),
            ],
            ..Default::default()
        };
        assert!(matches!(
            validate_category(&raw),
            Err(Error::NonAssociative { .. })
        ));
        // a composite with an identity that contradicts the identity law
        let raw = RawCategory {
            objects: vec![s("o")],
            morphisms: vec![(s("a"), s("o"), s("o"))],
            identities: vec![(s("o"), s("i"))],
            composition: vec![(s("a"), s("a"), s("a")), (s("i"), s("a"), s("i"))],
        };
        assert!(matches!(validate_category(&raw), Err(Error::BadIdentity(_))));
    }
}
