//! Orderly enumeration of small finite categories and posets up to isomorphism.
//!
//! Categories are produced object count first, then total morphism count
//! (identities included), then by canonical hom-size matrix, then by
//! composition table in lexicographic order. Each isomorphism class appears
//! exactly once, as the lexicographically least table in its orbit.

use alloc::vec;
use alloc::vec::Vec;

use crate::fincat::{Category, FinCategory};

const UNDEF: u8 = u8::MAX;
const NOCELL: u16 = u16::MAX;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Hom-size matrices on `k` objects (row-major, `h[a*k+b] = |hom(a,b)|`,
/// identities counted) with exactly `m` morphisms that are lexicographically
/// least under relabelling of objects and closed under composability.
pub fn hom_shapes(k: usize, m: usize) -> Vec<Vec<usize>> {
    let perms = permutations(k);
    let mut out = Vec::new();
    let mut h = vec![0usize; k * k];
    fn rec(
        k: usize,
        pos: usize,
        left: usize,
        h: &mut Vec<usize>,
        perms: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == k * k {
            if left == 0 && composable_shape(k, h) && is_least(k, h, perms) {
                out.push(h.clone());
            }
            return;
        }
        let lo = usize::from(pos / k == pos % k);
        for v in lo..=left {
            h[pos] = v;
            rec(k, pos + 1, left - v, h, perms, out);
        }
        h[pos] = 0;
    }
    if m >= k {
        rec(k, 0, m, &mut h, &perms, &mut out);
    }
    out
}

fn composable_shape(k: usize, h: &[usize]) -> bool {
    (0..k).all(|a| {
        (0..k).all(|b| {
            (0..k).all(|c| h[a * k + b] == 0 || h[b * k + c] == 0 || h[a * k + c] > 0)
        })
    })
}

fn relabel(k: usize, h: &[usize], p: &[usize]) -> Vec<usize> {
    let mut r = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            r[p[a] * k + p[b]] = h[a * k + b];
        }
    }
    r
}

fn is_least(k: usize, h: &[usize], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| relabel(k, h, p).as_slice() >= h)
}

/// Search state for one hom-size shape.
struct Shape {
    k: usize,
    m: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    ident: Vec<usize>,
    /// Composable pairs `(g, f)` of non-identities: squares, then row-major.
    cells: Vec<(u8, u8)>,
    cell_at: Vec<u16>,
    /// Candidate values per cell: `hom(dom f, cod g)`, increasing.
    range: Vec<Vec<u8>>,
    /// Non-identities `z` with `cod z = dom f`, per `f`.
    before: Vec<Vec<u8>>,
    /// Non-identities `x` with `dom x = cod g`, per `g`.
    after: Vec<Vec<u8>>,
    /// Non-trivial symmetries, as morphism permutations.
    perms: Vec<Vec<u8>>,
    /// `pre_cell[s][i]`: the cell whose value, pushed through `perms[s]`, lands in cell `i`.
    pre_cell: Vec<Vec<u16>>,
}

impl Shape {
    fn new(k: usize, h: &[usize]) -> Shape {
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        for o in 0..k {
            dom.push(o);
            cod.push(o);
        }
        let ident: Vec<usize> = (0..k).collect();
        // non-identities grouped by (dom, cod)
        let mut homs: Vec<Vec<usize>> = vec![Vec::new(); k * k];
        for a in 0..k {
            for b in 0..k {
                let extra = h[a * k + b] - usize::from(a == b);
                for _ in 0..extra {
                    homs[a * k + b].push(dom.len());
                    dom.push(a);
                    cod.push(b);
                }
            }
        }
        let m = dom.len();
        let mut cells = Vec::new();
        let mut cell_at = vec![NOCELL; m * m];
        // squares of endomorphisms first: symmetries map them among themselves,
        // so most are decided after the first few cells
        for g in k..m {
            if dom[g] == cod[g] {
                cell_at[g * m + g] = cells.len() as u16;
                cells.push((g as u8, g as u8));
            }
        }
        for g in k..m {
            for f in k..m {
                if cod[f] == dom[g] && cell_at[g * m + f] == NOCELL {
                    cell_at[g * m + f] = cells.len() as u16;
                    cells.push((g as u8, f as u8));
                }
            }
        }
        let range = cells
            .iter()
            .map(|&(g, f)| {
                let (a, b) = (dom[f as usize], cod[g as usize]);
                (0..m)
                    .filter(|&r| dom[r] == a && cod[r] == b)
                    .map(|r| r as u8)
                    .collect()
            })
            .collect();
        let before = (0..m)
            .map(|f| {
                (k..m)
                    .filter(|&z| cod[z] == dom[f])
                    .map(|z| z as u8)
                    .collect()
            })
            .collect();
        let after = (0..m)
            .map(|g| {
                (k..m)
                    .filter(|&x| dom[x] == cod[g])
                    .map(|x| x as u8)
                    .collect()
            })
            .collect();

        let mut perms = Vec::new();
        for p in permutations(k) {
            if relabel(k, h, &p).as_slice() != h {
                continue;
            }
            // every choice of bijections hom(a,b) -> hom(pa,pb)
            let mut partial: Vec<Vec<u8>> = vec![{
                let mut s = vec![0u8; m];
                for o in 0..k {
                    s[o] = p[o] as u8;
                }
                s
            }];
            for a in 0..k {
                for b in 0..k {
                    let src = &homs[a * k + b];
                    let dst = &homs[p[a] * k + p[b]];
                    let mut next = Vec::new();
                    for s in &partial {
                        for q in permutations(src.len()) {
                            let mut s = s.clone();
                            for (i, &mi) in src.iter().enumerate() {
                                s[mi] = dst[q[i]] as u8;
                            }
                            next.push(s);
                        }
                    }
                    partial = next;
                }
            }
            perms.extend(partial);
        }
        perms.retain(|s| s.iter().enumerate().any(|(i, &v)| v as usize != i));
        let pre_cell = perms
            .iter()
            .map(|s| {
                let mut inv = vec![0u8; m];
                for (i, &v) in s.iter().enumerate() {
                    inv[v as usize] = i as u8;
                }
                cells
                    .iter()
                    .map(|&(g, f)| cell_at[inv[g as usize] as usize * m + inv[f as usize] as usize])
                    .collect()
            })
            .collect();
        Shape {
            k,
            m,
            dom,
            cod,
            ident,
            cells,
            cell_at,
            range,
            before,
            after,
            perms,
            pre_cell,
        }
    }
}

struct Run<'s, F> {
    s: &'s Shape,
    t: Vec<u8>,
    vals: Vec<u8>,
    /// Flat stack of `(perm index, first undecided cell)`.
    active: Vec<(u16, u16)>,
    emit: F,
}

impl<F: FnMut(&FinCategory)> Run<'_, F> {
    #[inline]
    fn at(&self, g: u8, f: u8) -> u8 {
        self.t[g as usize * self.s.m + f as usize]
    }

    /// Associativity on every triple whose last missing entry is cell `(g, f)`.
    fn consistent(&self, g: u8, f: u8, r: u8, filled: usize) -> bool {
        let s = self.s;
        for &z in &s.before[f as usize] {
            let (a, b) = (self.at(r, z), self.at(f, z));
            if a != UNDEF && b != UNDEF {
                let c = self.at(g, b);
                if c != UNDEF && c != a {
                    return false;
                }
            }
        }
        for &x in &s.after[g as usize] {
            let a = self.at(x, g);
            if a != UNDEF {
                let (lhs, rhs) = (self.at(a, f), self.at(x, r));
                if lhs != UNDEF && rhs != UNDEF && lhs != rhs {
                    return false;
                }
            }
        }
        for i in 0..filled {
            let (x, y) = s.cells[i];
            let v = self.vals[i];
            if v == g {
                let b = self.at(y, f);
                if b != UNDEF {
                    let c = self.at(x, b);
                    if c != UNDEF && c != r {
                        return false;
                    }
                }
            }
            if v == f {
                let a = self.at(g, x);
                if a != UNDEF {
                    let c = self.at(a, y);
                    if c != UNDEF && c != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Advance every undecided symmetry over the filled prefix; false when
    /// some symmetry maps the prefix to a smaller table.
    fn lex_leader(&mut self, from: usize, filled: usize) -> bool {
        let to = self.active.len();
        for i in from..to {
            let (p, mut q) = self.active[i];
            let perm = &self.s.perms[p as usize];
            let pre = &self.s.pre_cell[p as usize];
            let mut keep = true;
            while (q as usize) < filled {
                let pc = pre[q as usize] as usize;
                if pc >= filled {
                    break;
                }
                let image = perm[self.vals[pc] as usize];
                let own = self.vals[q as usize];
                if image < own {
                    self.active.truncate(to);
                    return false;
                }
                if image > own {
                    keep = false;
                    break;
                }
                q += 1;
            }
            if keep {
                self.active.push((p, q));
            }
        }
        true
    }

    fn go(&mut self, depth: usize, from: usize) {
        let s = self.s;
        if depth == s.cells.len() {
            let c = FinCategory::from_trusted(
                s.k,
                s.dom.clone(),
                s.cod.clone(),
                s.ident.clone(),
                self.t
                    .iter()
                    .map(|&v| if v == UNDEF { u32::MAX } else { u32::from(v) })
                    .collect(),
            );
            (self.emit)(&c);
            return;
        }
        let (g, f) = s.cells[depth];
        let to = self.active.len();
        for &r in &s.range[depth] {
            self.t[g as usize * s.m + f as usize] = r;
            self.vals[depth] = r;
            if !self.consistent(g, f, r, depth + 1) {
                continue;
            }
            if self.lex_leader(from, depth + 1) {
                self.go(depth + 1, to);
            }
            self.active.truncate(to);
        }
        self.t[g as usize * s.m + f as usize] = UNDEF;
        self.vals[depth] = UNDEF;
    }
}

/// Enumerate every category with exactly `k` objects whose hom sizes are `h`,
/// one per isomorphism class.
pub fn for_each_with_shape(k: usize, h: &[usize], emit: impl FnMut(&FinCategory)) {
    let s = Shape::new(k, h);
    let mut t = vec![UNDEF; s.m * s.m];
    for f in 0..s.m {
        t[s.ident[s.cod[f]] * s.m + f] = f as u8;
        t[f * s.m + s.ident[s.dom[f]]] = f as u8;
    }
    debug_assert!(s.cell_at.len() == s.m * s.m);
    let mut run = Run {
        s: &s,
        t,
        vals: vec![UNDEF; s.cells.len()],
        active: (0..s.perms.len()).map(|p| (p as u16, 0)).collect(),
        emit,
    };
    run.go(0, 0);
}

/// Enumerate every category with at most `max_objects` objects and at most
/// `max_morphisms` morphisms (identities included), up to isomorphism, in
/// canonical order.
pub fn for_each_category(max_objects: usize, max_morphisms: usize, mut emit: impl FnMut(&FinCategory)) {
    for k in 1..=max_objects {
        for m in k..=max_morphisms {
            for h in hom_shapes(k, m) {
                for_each_with_shape(k, &h, &mut emit);
            }
        }
    }
}

/// Collected form of [`for_each_category`]; only sensible for small bounds.
pub fn enumerate_categories(max_objects: usize, max_morphisms: usize) -> Vec<FinCategory> {
    let mut out = Vec::new();
    for_each_category(max_objects, max_morphisms, |c| out.push(c.clone()));
    out
}

/// Number of categories with exactly `k` objects and `m` morphisms, up to
/// isomorphism.
pub fn count_categories(k: usize, m: usize) -> u64 {
    let mut n = 0;
    for h in hom_shapes(k, m) {
        for_each_with_shape(k, &h, |_| n += 1);
    }
    n
}

/// Canonical key of a category by brute force over all relabellings of
/// objects and of morphisms within hom-sets. Exponential; for tests and
/// oracles on tiny inputs.
pub fn brute_canonical_key<C: Category>(c: &C) -> Vec<usize> {
    let k = c.object_count();
    let m = c.morphism_count();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(k) {
        for q in permutations(m) {
            // q sends old morphism i to new id q[i]
            let mut inv = vec![0; m];
            for (i, &v) in q.iter().enumerate() {
                inv[v] = i;
            }
            let mut key = Vec::with_capacity(2 * m + m * m);
            let mut valid = true;
            // new ids sorted by relabelled ends
            let new_ends: Vec<(usize, usize)> = (0..m)
                .map(|new| {
                    let old = inv[new];
                    (p[c.dom(old)], p[c.cod(old)])
                })
                .collect();
            for w in new_ends.windows(2) {
                if w[0] > w[1] {
                    valid = false;
                }
            }
            if !valid {
                continue;
            }
            for &(a, b) in &new_ends {
                key.push(a);
                key.push(b);
            }
            for g in 0..m {
                for f in 0..m {
                    let (og, of) = (inv[g], inv[f]);
                    if c.dom(og) == c.cod(of) {
                        key.push(q[c.compose(og, of)]);
                    } else {
                        key.push(usize::MAX);
                    }
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap()
}

/// Finite posets on `0..n` given by their strict order as `lt[a*n+b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallPoset {
    pub n: usize,
    pub lt: Vec<bool>,
}

impl SmallPoset {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a * self.n + b]
    }
}

/// All posets with exactly `n` elements up to isomorphism. Each is labelled
/// along a linear extension, so `a < b` implies `a < b` as integers.
pub fn posets(n: usize) -> Vec<SmallPoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut lt = vec![false; n * n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lt[a * n + b] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(lt[a * n + b] && lt[b * n + c]) || lt[a * n + c]))
        });
        if !transitive {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut r = vec![false; n * n];
                for a in 0..n {
                    for b in 0..n {
                        r[p[a] * n + p[b]] = lt[a * n + b];
                    }
                }
                r
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            out.push(SmallPoset { n, lt });
        }
    }
    out
}
