//! Bounded Ind-completion: formal colimits of finite directed diagrams, their
//! hom-sets `lim_i colim_j Hom(A_i, B_j)`, and amalgamation search.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use smallvec::SmallVec;

use crate::enumerate::posets;
use crate::error::{Error, Result};
use crate::fincat::Category;

const NONE: usize = usize::MAX;

/// A finite poset labelled along a linear extension, so `i < j` implies `i < j`
/// as integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    n: usize,
    lt: Vec<bool>,
}

impl Shape {
    pub fn new(n: usize, lt: Vec<bool>) -> Result<Shape> {
        let s = Shape { n, lt };
        if s.lt.len() != n * n || n == 0 {
            return Err(Error::InvalidInput("shape needs an n×n order relation, n ≥ 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if s.lt[i * n + j] && j <= i {
                    return Err(Error::InvalidInput("shape must be labelled along a linear extension".into()));
                }
                for k in 0..n {
                    if s.lt[i * n + j] && s.lt[j * n + k] && !s.lt[i * n + k] {
                        return Err(Error::InvalidInput("shape order is not transitive".into()));
                    }
                }
                if !(0..n).any(|k| s.leq(i, k) && s.leq(j, k)) {
                    return Err(Error::InvalidInput(format!("indices {i} and {j} have no upper bound")));
                }
            }
        }
        Ok(s)
    }

    pub fn point() -> Shape {
        Shape { n: 1, lt: vec![false] }
    }

    pub fn chain(n: usize) -> Shape {
        Shape {
            n,
            lt: (0..n * n).map(|k| k / n < k % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.lt[i * self.n + j]
    }

    /// A finite directed poset has a maximum; with this labelling it is last.
    pub fn top(&self) -> usize {
        self.n - 1
    }
}

/// All finite directed posets with at most `max` elements, up to isomorphism:
/// the posets on `n - 1` elements with a maximum added.
pub fn directed_shapes(max: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    if max >= 1 {
        out.push(Shape::point());
    }
    for n in 2..=max {
        for p in posets(n - 1) {
            let mut lt = vec![false; n * n];
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    lt[i * n + j] = i != j && p.leq(i, j);
                }
                lt[i * n + n - 1] = true;
            }
            out.push(Shape { n, lt });
        }
    }
    out
}

/// A formal colimit `"colim" A_i` of a diagram indexed by a directed shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndObject {
    shape: Shape,
    objects: Vec<usize>,
    /// `conn[i*n+j]` is `A(i ≤ j)`.
    conn: Vec<usize>,
}

impl IndObject {
    /// `conn(i, j)` supplies `A(i ≤ j)` for each `i ≤ j`; functoriality is checked.
    pub fn new<C: Category>(
        c: &C,
        shape: Shape,
        objects: Vec<usize>,
        conn: impl Fn(usize, usize) -> usize,
    ) -> Result<IndObject> {
        let n = shape.len();
        if objects.len() != n {
            return Err(Error::InvalidInput("one object per index".into()));
        }
        let mut table = vec![NONE; n * n];
        for i in 0..n {
            for j in 0..n {
                if shape.leq(i, j) {
                    let m = conn(i, j);
                    if m >= c.morphism_count() || c.dom(m) != objects[i] || c.cod(m) != objects[j] {
                        return Err(Error::InvalidInput(format!("connecting map {i} ≤ {j} has the wrong ends")));
                    }
                    table[i * n + j] = m;
                }
            }
        }
        let a = IndObject {
            shape,
            objects,
            conn: table,
        };
        for i in 0..n {
            if a.at(i, i) != c.identity(a.objects[i]) {
                return Err(Error::NotFunctorial(format!("index {i} is not sent to an identity")));
            }
            for j in 0..n {
                for k in 0..n {
                    if a.shape.leq(i, j) && a.shape.leq(j, k) && c.compose(a.at(j, k), a.at(i, j)) != a.at(i, k) {
                        return Err(Error::NotFunctorial(format!("{i} ≤ {j} ≤ {k}")));
                    }
                }
            }
        }
        Ok(a)
    }

    /// The object `o` as a one-point diagram.
    pub fn embed<C: Category>(c: &C, o: usize) -> IndObject {
        IndObject {
            shape: Shape::point(),
            objects: vec![o],
            conn: vec![c.identity(o)],
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn object(&self, i: usize) -> usize {
        self.objects[i]
    }

    pub fn at(&self, i: usize, j: usize) -> usize {
        self.conn[i * self.shape.len() + j]
    }

    pub fn top_object(&self) -> usize {
        self.objects[self.shape.top()]
    }
}

/// Call `emit` on every diagram of shape `s` in `c`, in a fixed order, until it
/// returns `false`. Returns `false` if stopped early.
pub fn for_each_diagram<C: Category>(c: &C, s: &Shape, emit: &mut dyn FnMut(&IndObject) -> bool) -> bool {
    let n = s.len();
    let mut d = IndObject {
        shape: s.clone(),
        objects: vec![0; n],
        conn: vec![NONE; n * n],
    };
    // pairs (i, j), i < j, ordered so that every (i,k), (k,j) with i < k < j come first
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in (0..j).rev() {
            if s.leq(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let no = c.object_count();
    let homs: Vec<Vec<usize>> = if pairs.is_empty() {
        Vec::new()
    } else {
        (0..no * no).map(|k| c.hom(k / no, k % no)).collect()
    };
    struct Ctx<'a> {
        pairs: &'a [(usize, usize)],
        homs: &'a [Vec<usize>],
    }
    fn objects<C: Category>(
        c: &C,
        d: &mut IndObject,
        k: usize,
        cx: &Ctx,
        emit: &mut dyn FnMut(&IndObject) -> bool,
    ) -> bool {
        let n = d.shape.len();
        if k == n {
            for i in 0..n {
                d.conn[i * n + i] = c.identity(d.objects[i]);
            }
            return arrows(c, d, 0, cx, emit);
        }
        for o in 0..c.object_count() {
            d.objects[k] = o;
            if !objects(c, d, k + 1, cx, emit) {
                return false;
            }
        }
        true
    }
    fn arrows<C: Category>(
        c: &C,
        d: &mut IndObject,
        p: usize,
        cx: &Ctx,
        emit: &mut dyn FnMut(&IndObject) -> bool,
    ) -> bool {
        if p == cx.pairs.len() {
            return emit(d);
        }
        let n = d.shape.len();
        let (i, j) = cx.pairs[p];
        let mut forced = NONE;
        for k in i + 1..j {
            if d.shape.leq(i, k) && d.shape.leq(k, j) {
                let m = c.compose(d.conn[k * n + j], d.conn[i * n + k]);
                if forced == NONE {
                    forced = m;
                } else if forced != m {
                    return true;
                }
            }
        }
        let one = [forced];
        let choices: &[usize] = if forced == NONE {
            &cx.homs[d.objects[i] * c.object_count() + d.objects[j]]
        } else {
            &one
        };
        for &m in choices {
            d.conn[i * n + j] = m;
            if !arrows(c, d, p + 1, cx, emit) {
                return false;
            }
        }
        d.conn[i * n + j] = NONE;
        true
    }
    objects(c, &mut d, 0, &Ctx { pairs: &pairs, homs: &homs }, emit)
}

/// `colim_j Hom(x, B_j)`: pairs `(j, f : x → B_j)` modulo the zig-zag relation
/// generated by `(j, f) ~ (k, g)` when some `l ≥ j, k` has `B(j,l)f = B(k,l)g`.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub elems: Vec<(usize, usize)>,
    pub class: Vec<usize>,
    pub classes: usize,
}

impl Colimit {
    pub fn new<C: Category>(c: &C, x: usize, b: &IndObject) -> Colimit {
        let n = b.len();
        let elems: Vec<(usize, usize)> = (0..n).flat_map(|j| c.hom(x, b.object(j)).into_iter().map(move |f| (j, f))).collect();
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for (u, &(j, f)) in elems.iter().enumerate() {
            for (v, &(k, g)) in elems.iter().enumerate().skip(u + 1) {
                let meet = (0..n).any(|l| {
                    b.shape.leq(j, l) && b.shape.leq(k, l) && c.compose(b.at(j, l), f) == c.compose(b.at(k, l), g)
                });
                if meet {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
        let mut class = vec![NONE; elems.len()];
        let mut classes = 0;
        for u in 0..elems.len() {
            let r = find(&mut parent, u);
            if class[r] == NONE {
                class[r] = classes;
                classes += 1;
            }
            class[u] = class[r];
        }
        Colimit { elems, class, classes }
    }

    pub fn class_of(&self, j: usize, f: usize) -> usize {
        let u = self.elems.iter().position(|&e| e == (j, f)).expect("element of the colimit");
        self.class[u]
    }

    /// The first element of a class, used as its normal form.
    pub fn representative(&self, k: usize) -> (usize, usize) {
        self.elems[self.class.iter().position(|&c| c == k).expect("class is inhabited")]
    }

    pub fn members(&self, k: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.elems.iter().zip(&self.class).filter(move |&(_, &c)| c == k).map(|(&e, _)| e)
    }
}

/// A morphism of ind-objects: one normalized class `(j, f : A_i → B_j)` per
/// source index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndMorphism {
    pub reps: Vec<(usize, usize)>,
}

/// `Hom(A, B)` together with the colimits it was computed from.
#[derive(Clone, Debug)]
pub struct IndHom {
    pub colimits: Vec<Colimit>,
    pub morphisms: Vec<IndMorphism>,
}

pub fn ind_hom<C: Category>(c: &C, a: &IndObject, b: &IndObject) -> IndHom {
    let n = a.len();
    let colimits: Vec<Colimit> = (0..n).map(|i| Colimit::new(c, a.object(i), b)).collect();
    let mut morphisms = Vec::new();
    let mut chosen = vec![0usize; n];
    fn go<C: Category>(
        c: &C,
        a: &IndObject,
        cols: &[Colimit],
        i: usize,
        chosen: &mut [usize],
        out: &mut Vec<IndMorphism>,
    ) {
        if i == a.len() {
            out.push(IndMorphism {
                reps: chosen.iter().enumerate().map(|(i, &k)| cols[i].representative(k)).collect(),
            });
            return;
        }
        'class: for k in 0..cols[i].classes {
            let (j, f) = cols[i].representative(k);
            for h in 0..i {
                if a.shape.leq(h, i) && cols[h].class_of(j, c.compose(f, a.at(h, i))) != chosen[h] {
                    continue 'class;
                }
            }
            chosen[i] = k;
            go(c, a, cols, i + 1, chosen, out);
        }
    }
    go(c, a, &colimits, 0, &mut chosen, &mut morphisms);
    IndHom { colimits, morphisms }
}

pub fn ind_identity<C: Category>(c: &C, a: &IndObject) -> IndMorphism {
    IndMorphism {
        reps: (0..a.len())
            .map(|i| {
                let col = Colimit::new(c, a.object(i), a);
                col.representative(col.class_of(i, c.identity(a.object(i))))
            })
            .collect(),
    }
}

/// `g ∘ f` for `f : A → B`, `g : B → D`, checking that every choice of
/// representatives gives the same class.
pub fn ind_compose<C: Category>(
    c: &C,
    a: &IndObject,
    b: &IndObject,
    d: &IndObject,
    g: &IndMorphism,
    f: &IndMorphism,
) -> Result<IndMorphism> {
    let ab: Vec<Colimit> = (0..a.len()).map(|i| Colimit::new(c, a.object(i), b)).collect();
    let bd: Vec<Colimit> = (0..b.len()).map(|j| Colimit::new(c, b.object(j), d)).collect();
    let mut reps = Vec::with_capacity(a.len());
    for (i, col) in ab.iter().enumerate() {
        let ad = Colimit::new(c, a.object(i), d);
        let (j0, f0) = f.reps[i];
        let mut result = None;
        for (j, phi) in col.members(col.class_of(j0, f0)) {
            let (k0, g0) = g.reps[j];
            for (k, psi) in bd[j].members(bd[j].class_of(k0, g0)) {
                let r = ad.class_of(k, c.compose(psi, phi));
                match result {
                    None => result = Some(r),
                    Some(q) if q != r => {
                        return Err(Error::CertificateFailure {
                            axiom: "composition is independent of representatives",
                            witness: format!("index {i}"),
                        })
                    }
                    _ => {}
                }
            }
        }
        reps.push(ad.representative(result.expect("classes are inhabited")));
    }
    Ok(IndMorphism { reps })
}

/// `embed(f)` for `f : x → y` in `c`.
pub fn embed_morphism(f: usize) -> IndMorphism {
    IndMorphism { reps: vec![(0, f)] }
}

pub fn is_ind_isomorphic<C: Category>(c: &C, a: &IndObject, b: &IndObject) -> Result<bool> {
    let (ida, idb) = (ind_identity(c, a), ind_identity(c, b));
    let ab = ind_hom(c, a, b).morphisms;
    let ba = ind_hom(c, b, a).morphisms;
    for u in &ab {
        for v in &ba {
            if ind_compose(c, a, b, a, v, u)? == ida && ind_compose(c, b, a, b, u, v)? == idb {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgamation {
    pub apex: IndObject,
    pub left: IndMorphism,
    pub right: IndMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmalgamationOutcome {
    Found(Amalgamation),
    /// Inconclusive: no apex with at most `bound` indices closes the span.
    NoneWithinBound { bound: usize, diagrams: u64 },
}

impl AmalgamationOutcome {
    pub fn found(&self) -> Option<&Amalgamation> {
        match self {
            AmalgamationOutcome::Found(a) => Some(a),
            AmalgamationOutcome::NoneWithinBound { .. } => None,
        }
    }
}

/// `κ ∘ f` at the maximum of `D`, for `f : A → X` and `κ : X_top → D_top`.
fn precompose_top<C: Category>(
    c: &C,
    a: &IndObject,
    x: &IndObject,
    f: &IndMorphism,
    kappa: usize,
) -> SmallVec<[usize; 4]> {
    (0..a.len())
        .map(|i| {
            let (j, phi) = f.reps[i];
            c.compose(kappa, c.compose(x.at(j, x.shape.top()), phi))
        })
        .collect()
}

fn hom_iter<C: Category>(c: &C, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
    c.incoming(b).iter().copied().filter(move |&m| c.dom(m) == a)
}

/// Legs `u : B_top → d`, `v : C_top → d` closing the span at the maximum.
/// A morphism `X → D` is fixed by its component at the maximum of `X`, and a
/// class `(j, φ)` of `colim_j Hom(x, D_j)` by `D(j, top) ∘ φ`, so this only
/// depends on the object `d` sitting at the maximum of `D`.
fn closing_legs<C: Category>(
    c: &C,
    a: &IndObject,
    (b, f): (&IndObject, &IndMorphism),
    (cc, g): (&IndObject, &IndMorphism),
    d: usize,
) -> Option<(usize, usize)> {
    let lefts: SmallVec<[(usize, SmallVec<[usize; 4]>); 8]> =
        hom_iter(c, b.top_object(), d).map(|u| (u, precompose_top(c, a, b, f, u))).collect();
    hom_iter(c, cc.top_object(), d).find_map(|v| {
        let vg = precompose_top(c, a, cc, g, v);
        lefts.iter().find(|(_, uf)| *uf == vg).map(|&(u, _)| (u, v))
    })
}

fn from_top<C: Category>(c: &C, x: &IndObject, d: &IndObject, kappa: usize) -> IndMorphism {
    let top = d.shape.top();
    if d.len() == 1 {
        return IndMorphism {
            reps: (0..x.len()).map(|i| (0, c.compose(kappa, x.at(i, x.shape.top())))).collect(),
        };
    }
    IndMorphism {
        reps: (0..x.len())
            .map(|i| {
                let col = Colimit::new(c, x.object(i), d);
                col.representative(col.class_of(top, c.compose(kappa, x.at(i, x.shape.top()))))
            })
            .collect(),
    }
}

/// Search apexes of at most `bound` indices, shapes and diagrams in a fixed
/// order, for `u : B → D`, `v : C → D` with `u ∘ f = v ∘ g`.
pub fn ind_amalgamate<C: Category>(
    c: &C,
    a: &IndObject,
    (b, f): (&IndObject, &IndMorphism),
    (cc, g): (&IndObject, &IndMorphism),
    bound: usize,
) -> Result<AmalgamationOutcome> {
    if [a, b, cc].iter().any(|x| x.len() > bound) {
        return Err(Error::InvalidInput("span objects must fit within the bound".into()));
    }
    let mut diagrams = 0u64;
    let mut found = None;
    let mut legs: Vec<Option<Option<(usize, usize)>>> = vec![None; c.object_count()];
    for s in directed_shapes(bound) {
        let done = !for_each_diagram(c, &s, &mut |d| {
            diagrams += 1;
            let top = d.top_object();
            let l = *legs[top].get_or_insert_with(|| closing_legs(c, a, (b, f), (cc, g), top));
            match l {
                Some((u, v)) => {
                    found = Some((d.clone(), u, v));
                    false
                }
                None => true,
            }
        });
        if done {
            break;
        }
    }
    Ok(match found {
        Some((d, u, v)) => AmalgamationOutcome::Found(Amalgamation {
            left: from_top(c, b, &d, u),
            right: from_top(c, cc, &d, v),
            apex: d,
        }),
        None => AmalgamationOutcome::NoneWithinBound { bound, diagrams },
    })
}

/// A span `y ← x → z` of `c` with no amalgamation in `c`, checked against
/// every pair of arrows out of `y` and `z` with a common codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFailure {
    pub f: usize,
    pub g: usize,
    pub pairs_checked: usize,
}

/// A certificate that the embedded span `(f, g)` has no amalgamation at any
/// bound, or `None` when `c` amalgamates it. Any ind-amalgamation restricts
/// to a `c`-amalgamation through [`factor_through_base`].
pub fn extract_base_failure<C: Category>(c: &C, f: usize, g: usize) -> Option<BaseFailure> {
    assert_eq!(c.dom(f), c.dom(g), "a span has a common domain");
    let mut pairs_checked = 0;
    for h in 0..c.morphism_count() {
        if c.dom(h) != c.cod(f) {
            continue;
        }
        for k in c.hom(c.cod(g), c.cod(h)) {
            pairs_checked += 1;
            if c.compose(h, f) == c.compose(k, g) {
                return None;
            }
        }
    }
    Some(BaseFailure { f, g, pairs_checked })
}

/// An amalgamation of `embed(f), embed(g)` gives one in `c`: take
/// representatives `(j, φ)`, `(k, ψ)` of the legs and an index `l ≥ j, k` at
/// which `φf` and `ψg` become equal. Returns `(D_l, D(j,l)φ, D(k,l)ψ)`.
pub fn factor_through_base<C: Category>(c: &C, f: usize, g: usize, am: &Amalgamation) -> Result<(usize, usize, usize)> {
    let d = &am.apex;
    let (j, phi) = am.left.reps[0];
    let (k, psi) = am.right.reps[0];
    for l in 0..d.len() {
        if d.shape.leq(j, l) && d.shape.leq(k, l) {
            let (h, kk) = (c.compose(d.at(j, l), phi), c.compose(d.at(k, l), psi));
            if c.compose(h, f) == c.compose(kk, g) {
                return Ok((d.object(l), h, kk));
            }
        }
    }
    Err(Error::TheoremViolation {
        claim: "an ind-amalgamation of an embedded span restricts to the base",
        witness: format!("legs at {j} and {k}"),
    })
}

/// Smallest index size of a diagram within `bound` that is isomorphic to `a`
/// in the Ind-category, or `None` if the bound is exhausted.
pub fn presentation_size<C: Category>(c: &C, a: &IndObject, bound: usize) -> Result<Option<usize>> {
    for s in directed_shapes(bound) {
        let mut hit = Ok(false);
        for_each_diagram(c, &s, &mut |d| {
            hit = is_ind_isomorphic(c, a, d);
            !matches!(hit, Ok(true) | Err(_))
        });
        if hit? {
            return Ok(Some(s.len()));
        }
    }
    Ok(None)
}
