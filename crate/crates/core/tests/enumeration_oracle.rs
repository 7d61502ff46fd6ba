//! Secondary oracle for the category counts.
//!
//! Connected categories: labelled structures are counted by plain
//! backtracking over every connected hom-size matrix; each isomorphism class
//! `C` accounts for `k! * prod(n_ab!) / |Aut C|` of them, where `n_ab` counts
//! the non-identity slots of `hom(a,b)`. Summing that weight over the
//! enumerated classes must give the labelled total.
//!
//! Disconnected categories are multisets of connected ones, so the full counts
//! follow from the connected counts and the known monoid counts.

use demorgan_core::enumerate::{count_categories, for_each_category, for_each_with_shape, hom_shapes, permutations};
use demorgan_core::fincat::{Category, FinCategory};
use std::collections::HashMap;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Slots `(a, b, i)`, identities first at `(a, a, 0)`.
struct Slots {
    dom: Vec<usize>,
    cod: Vec<usize>,
}

fn slots(k: usize, h: &[usize]) -> Slots {
    let mut dom: Vec<usize> = (0..k).collect();
    let mut cod: Vec<usize> = (0..k).collect();
    for a in 0..k {
        for b in 0..k {
            for _ in usize::from(a == b)..h[a * k + b] {
                dom.push(a);
                cod.push(b);
            }
        }
    }
    Slots { dom, cod }
}

const NONE: usize = usize::MAX;

fn labelled_count(k: usize, h: &[usize]) -> u64 {
    if (0..k).any(|a| h[a * k + a] == 0) {
        return 0;
    }
    let s = slots(k, h);
    let m = s.dom.len();
    let mut t = vec![NONE; m * m];
    for f in 0..m {
        t[s.cod[f] * m + f] = f;
        t[f * m + s.dom[f]] = f;
    }
    let cells: Vec<(usize, usize)> = (k..m)
        .flat_map(|g| (k..m).map(move |f| (g, f)))
        .filter(|&(g, f)| s.cod[f] == s.dom[g])
        .collect();
    let ranges: Vec<Vec<usize>> = cells
        .iter()
        .map(|&(g, f)| (0..m).filter(|&r| s.dom[r] == s.dom[f] && s.cod[r] == s.cod[g]).collect())
        .collect();

    fn assoc(t: &[usize], m: usize, h: usize, g: usize, f: usize) -> bool {
        let gf = t[g * m + f];
        let hg = t[h * m + g];
        if gf == NONE || hg == NONE {
            return true;
        }
        let l = t[hg * m + f];
        let r = t[h * m + gf];
        l == NONE || r == NONE || l == r
    }

    fn go(i: usize, cells: &[(usize, usize)], ranges: &[Vec<usize>], t: &mut [usize], s: &Slots, m: usize) -> u64 {
        if i == cells.len() {
            for f in 0..m {
                for g in 0..m {
                    if s.cod[f] != s.dom[g] {
                        continue;
                    }
                    for h in 0..m {
                        if s.cod[g] == s.dom[h] && t[t[h * m + g] * m + f] != t[h * m + t[g * m + f]] {
                            return 0;
                        }
                    }
                }
            }
            return 1;
        }
        let (g, f) = cells[i];
        let mut n = 0;
        for &v in &ranges[i] {
            t[g * m + f] = v;
            let ok = (0..m).all(|x| {
                (s.dom[x] != s.cod[g] || assoc(t, m, x, g, f)) && (s.cod[x] != s.dom[f] || assoc(t, m, g, f, x))
            }) && (0..m).all(|p| {
                (0..m).all(|q| {
                    s.cod[q] != s.dom[p]
                        || (t[p * m + q] != g || assoc(t, m, p, q, f)) && (t[p * m + q] != f || assoc(t, m, g, p, q))
                })
            });
            if ok {
                n += go(i + 1, cells, ranges, t, s, m);
            }
        }
        t[g * m + f] = NONE;
        n
    }
    go(0, &cells, &ranges, &mut t, &s, m)
}

fn connected(k: usize, linked: impl Fn(usize, usize) -> bool) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in 0..k {
            if !seen[b] && (linked(a, b) || linked(b, a)) {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn is_connected(c: &FinCategory) -> bool {
    connected(c.object_count(), |a, b| !c.hom(a, b).is_empty())
}

/// Every connected hom-size matrix on `k` objects with `m` morphisms, counted
/// through a memo keyed by the least relabelling.
fn labelled_total(k: usize, m: usize) -> u64 {
    let perms = permutations(k);
    let mut memo: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut h = vec![0usize; k * k];
    let mut total = 0;
    fn rec(
        pos: usize,
        left: usize,
        k: usize,
        h: &mut Vec<usize>,
        perms: &[Vec<usize>],
        memo: &mut HashMap<Vec<usize>, u64>,
        total: &mut u64,
    ) {
        if pos == k * k {
            if left == 0 && connected(k, |a, b| h[a * k + b] > 0) {
                let key = perms
                    .iter()
                    .map(|p| (0..k * k).map(|i| h[p[i / k] * k + p[i % k]]).collect::<Vec<_>>())
                    .min()
                    .unwrap();
                let n = *memo.entry(key).or_insert_with(|| labelled_count(k, h));
                *total += n;
            }
            return;
        }
        for v in 0..=left {
            h[pos] = v;
            rec(pos + 1, left - v, k, h, perms, memo, total);
        }
        h[pos] = 0;
    }
    rec(0, m, k, &mut h, &perms, &mut memo, &mut total);
    total
}

/// All bijections of the non-identity morphisms that respect each hom-set,
/// combined with an object permutation; counts those preserving composition.
fn automorphisms(c: &FinCategory) -> u64 {
    let k = c.object_count();
    let m = c.morphism_count();
    let mut n = 0;
    for p in permutations(k) {
        if (0..k).any(|a| (0..k).any(|b| c.hom(a, b).len() != c.hom(p[a], p[b]).len())) {
            continue;
        }
        let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for a in 0..k {
            for b in 0..k {
                let src: Vec<usize> = c.hom(a, b).into_iter().filter(|&f| !c.is_identity(f)).collect();
                let dst: Vec<usize> = c.hom(p[a], p[b]).into_iter().filter(|&f| !c.is_identity(f)).collect();
                if !src.is_empty() {
                    blocks.push((src, dst));
                }
            }
        }
        let mut map = vec![usize::MAX; m];
        for o in 0..k {
            map[c.identity(o)] = c.identity(p[o]);
        }
        fn assign(i: usize, blocks: &[(Vec<usize>, Vec<usize>)], map: &mut Vec<usize>, c: &FinCategory) -> u64 {
            if i == blocks.len() {
                let m = c.morphism_count();
                let ok = (0..m).all(|f| {
                    (0..m).all(|g| c.cod(f) != c.dom(g) || map[c.compose(g, f)] == c.compose(map[g], map[f]))
                });
                return u64::from(ok);
            }
            let (src, dst) = &blocks[i];
            permutations(src.len())
                .iter()
                .map(|q| {
                    for (j, &f) in src.iter().enumerate() {
                        map[f] = dst[q[j]];
                    }
                    assign(i + 1, blocks, map, c)
                })
                .sum()
        }
        n += assign(0, &blocks, &mut map, c);
    }
    n
}

fn weight(c: &FinCategory) -> u64 {
    let k = c.object_count();
    let mut w = factorial(k);
    for a in 0..k {
        for b in 0..k {
            w *= factorial(c.hom(a, b).len() - usize::from(a == b));
        }
    }
    assert_eq!(w % automorphisms(c), 0);
    w / automorphisms(c)
}

const MAX_MORPHISMS: usize = 8;

/// Connected class counts indexed `[k][m]`, with weights checked against the
/// labelled totals on the way.
fn connected_counts() -> Vec<Vec<u64>> {
    let mut weights = vec![vec![0u64; MAX_MORPHISMS + 1]; 4];
    let mut classes = vec![vec![0u64; MAX_MORPHISMS + 1]; 4];
    for k in 2..=3 {
        for m in k..=MAX_MORPHISMS {
            for h in hom_shapes(k, m) {
                for_each_with_shape(k, &h, |c| {
                    if is_connected(c) {
                        weights[k][m] += weight(c);
                        classes[k][m] += 1;
                    }
                });
            }
            assert_eq!(weights[k][m], labelled_total(k, m), "k={k} m={m}");
        }
    }
    // monoids, OEIS A058129
    classes[1] = vec![0, 1, 2, 7, 35, 228, 2237, 31559, 1668997];
    classes
}

#[test]
fn counts_follow_from_connected_counts() {
    let conn = connected_counts();
    let c = |k: usize, m: usize| conn[k][m];
    for m in 1..=MAX_MORPHISMS {
        assert_eq!(count_categories(1, m), c(1, m), "monoids of order {m}");
    }
    // unordered pairs and triples of connected pieces
    let pair = |k1: usize, k2: usize, m: usize| -> u64 {
        let mut n = 0;
        for m1 in 1..m {
            let m2 = m - m1;
            if k1 == k2 {
                if m1 < m2 {
                    n += c(k1, m1) * c(k2, m2);
                } else if m1 == m2 {
                    n += c(k1, m1) * (c(k1, m1) + 1) / 2;
                }
            } else {
                n += c(k1, m1) * c(k2, m2);
            }
        }
        n
    };
    for m in 2..=MAX_MORPHISMS {
        assert_eq!(count_categories(2, m), c(2, m) + pair(1, 1, m), "k=2 m={m}");
    }
    for m in 3..=MAX_MORPHISMS {
        let mut triples = 0u64;
        for a in 1..=m {
            for b in a..=m {
                if a + b >= m {
                    continue;
                }
                let d = m - a - b;
                if d < b {
                    continue;
                }
                let (x, y, z) = (c(1, a), c(1, b), c(1, d));
                // multisets of size three drawn from the monoid classes per order
                triples += if a == b && b == d {
                    x * (x + 1) * (x + 2) / 6
                } else if a == b {
                    x * (x + 1) / 2 * z
                } else if b == d {
                    x * y * (y + 1) / 2
                } else {
                    x * y * z
                };
            }
        }
        let split = (1..m).map(|m1| c(1, m1) * c(2, m - m1)).sum::<u64>();
        assert_eq!(count_categories(3, m), c(3, m) + split + triples, "k=3 m={m}");
    }
}

#[test]
fn totals_at_three_objects_eight_morphisms() {
    let mut n = 0u64;
    for_each_category(3, 8, |_| n += 1);
    assert_eq!(n, 1_761_783);
}
