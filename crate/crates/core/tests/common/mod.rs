//! Oracles shared by the integration suites. Each one recomputes a
//! quantity from definitions without going through the code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use cubeforge::whitehead::SignedGen;
use cubeforge::{Sign, SimplicialGraph};

/// Signed generators of vertex `v` encoded as bits `2v` (positive) and
/// `2v + 1` (negative).
fn bit(v: usize, sign: Sign) -> u32 {
    1 << (2 * v + usize::from(!sign.is_plus()))
}

fn components_avoiding(g: &SimplicialGraph, removed: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in 0..g.len() {
        if removed.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        seen.insert(s);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in 0..g.len() {
                if g.adjacent(v, w) && !removed.contains(&w) && seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// `lk(v)` inside `st(w)`, straight from adjacency.
fn leq(g: &SimplicialGraph, v: usize, w: usize) -> bool {
    (0..g.len()).filter(|u| g.adjacent(v, *u)).all(|u| u == w || g.adjacent(u, w))
}

/// Every Whitehead pair found by filtering all subsets of the signed
/// generators through the defining conditions, with both sides of size at
/// least two, reduced modulo `(P, m) ~ (P*, m^-1)` to the pair whose side
/// sorts first. Items are `(sorted P, m)`.
pub fn brute_force_pairs(g: &SimplicialGraph) -> BTreeSet<(Vec<SignedGen>, SignedGen)> {
    let n = g.len();
    let all: Vec<SignedGen> = (0..n)
        .flat_map(|v| [SignedGen::new(v, Sign::Plus), SignedGen::new(v, Sign::Minus)])
        .collect();
    let has = |mask: u32, s: SignedGen| mask & bit(s.vertex, s.sign) != 0;
    let decode = |mask: u32| -> Vec<SignedGen> { all.iter().copied().filter(|s| has(mask, *s)).collect() };
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (2 * n)) {
        if mask.count_ones() < 2 {
            continue;
        }
        for &m in &all {
            if !has(mask, m) || has(mask, m.inverse()) {
                continue;
            }
            let members = decode(mask);
            if members.iter().any(|v| g.adjacent(v.vertex, m.vertex)) {
                continue;
            }
            if members.iter().any(|v| !has(mask, v.inverse()) && !leq(g, v.vertex, m.vertex)) {
                continue;
            }
            let mut star: BTreeSet<usize> = (0..n).filter(|u| g.adjacent(*u, m.vertex)).collect();
            star.insert(m.vertex);
            let comps = components_avoiding(g, &star);
            let closed = members.iter().filter(|v| has(mask, v.inverse())).all(|v| {
                comps
                    .iter()
                    .find(|c| c.contains(&v.vertex))
                    .is_some_and(|c| c.iter().all(|w| has(mask, SignedGen::new(*w, Sign::Plus)) && has(mask, SignedGen::new(*w, Sign::Minus))))
            });
            if !closed {
                continue;
            }
            let mut link_mask = 0;
            for u in (0..n).filter(|u| g.adjacent(*u, m.vertex)) {
                link_mask |= bit(u, Sign::Plus) | bit(u, Sign::Minus);
            }
            let full = (1u32 << (2 * n)) - 1;
            let star_mask = full & !mask & !link_mask;
            if star_mask.count_ones() < 2 {
                continue;
            }
            let (p, p_star) = (decode(mask), decode(star_mask));
            if p <= p_star {
                out.insert((p, m));
            } else {
                out.insert((p_star, m.inverse()));
            }
        }
    }
    out
}

/// Number of permutations of `n` things.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Automorphisms of a multigraph with loops given as edge endpoint
/// pairs, counted as (vertex bijection, edge bijection, edge flips) that
/// preserve incidence. A loop can be flipped independently.
pub fn multigraph_automorphisms(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let vperms = permutations(vertices);
    let eperms = permutations(edges.len());
    let mut count = 0;
    for vp in &vperms {
        for ep in &eperms {
            let mut ways = 1;
            for (i, &(t, h)) in edges.iter().enumerate() {
                let (t2, h2) = edges[ep[i]];
                let forward = vp[t] == t2 && vp[h] == h2;
                let backward = vp[t] == h2 && vp[h] == t2;
                ways *= usize::from(forward) + usize::from(backward);
            }
            count += ways;
        }
    }
    count
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for c in 0..n {
                if !p.contains(&c) {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Rank of an integer matrix over the rationals by fraction-free
/// elimination in `i128`.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|v| *v as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| m[*r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i128, |g, v| gcd(g, v.abs()));
                if g > 1 {
                    for v in &mut m[r] {
                        *v /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Counts of words: letter multiset of a word as `generator -> exponent sum`.
pub fn exponent_sums(word: &[SignedGen]) -> HashMap<usize, i64> {
    let mut out = HashMap::new();
    for l in word {
        *out.entry(l.vertex).or_insert(0) += l.sign.to_i64();
    }
    out
}

/// Small nonpositively curved complexes for property tests: a base
/// preset, optionally crossed with another and optionally subdivided.
pub fn small_complex() -> impl proptest::strategy::Strategy<Value = cubeforge::CubeComplex> {
    use cubeforge::complex::{product, subdivide, Preset};
    use proptest::prelude::*;
    let base = prop_oneof![
        Just(Preset::Interval),
        (1usize..=3).prop_map(Preset::Rose),
        (1usize..=4).prop_map(Preset::Cycle),
        Just(Preset::Torus),
    ];
    (base.clone(), proptest::option::of(base), any::<bool>()).prop_map(|(a, b, sub)| {
        let a = a.build().expect("preset builds");
        let x = match b {
            Some(b) => product(&a, &b.build().expect("preset builds")).expect("product builds"),
            None => a,
        };
        if sub {
            subdivide(&x)
        } else {
            x
        }
    })
}

/// Euler characteristic from cube counts alone.
pub fn euler(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { *c as i64 } else { -(*c as i64) })
        .sum()
}

/// Largest family of hyperplanes sharing no cube whose dual edges can be
/// deleted without disconnecting the vertices. Union-find over subsets.
pub fn genus_brute_force(x: &cubeforge::CubeComplex) -> usize {
    use cubeforge::hyperplane::hyperplanes;
    let hs = hyperplanes(x);
    let n = hs.len();
    let cubes: Vec<BTreeSet<usize>> = hs.iter().map(|h| h.midcubes.iter().map(|m| m.0).collect()).collect();
    let vertices = x.vertices();
    let index: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|h| mask >> h & 1 == 1).collect();
        if members.len() <= best {
            continue;
        }
        let disjoint = members
            .iter()
            .all(|a| members.iter().all(|b| a == b || cubes[*a].is_disjoint(&cubes[*b])));
        if !disjoint {
            continue;
        }
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for e in x.edges() {
            if mask >> hs.dual_to(e) & 1 == 1 {
                continue;
            }
            let a = find(&mut parent, index[&x.endpoint(e, Sign::Minus)]);
            let b = find(&mut parent, index[&x.endpoint(e, Sign::Plus)]);
            parent[a] = b;
        }
        let roots: BTreeSet<usize> = (0..vertices.len()).map(|i| find(&mut parent, i)).collect();
        if roots.len() == 1 {
            best = members.len();
        }
    }
    best
}
