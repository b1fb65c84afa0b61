use std::fmt;

use super::{ComplexBuilder, CubeComplex, Sign, SignedCoord, SignedPermMap};
use crate::error::{Error, Result};

/// Named generators for standard complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// One edge between two vertices.
    Interval,
    /// `n` loops at a single vertex.
    Rose(usize),
    /// A `k`-cycle graph.
    Cycle(usize),
    /// The one-vertex square torus.
    Torus,
    /// Closed orientable surface of genus `g` (at least 1). Genus 1 is a
    /// coned square with sides halved; higher genus is a quotient of the
    /// right-angled polygon tiling. Subdivided once more if the result
    /// is not special.
    Surface(usize),
    Product(Box<Preset>, Box<Preset>),
}

impl Preset {
    pub fn build(&self) -> Result<CubeComplex> {
        match self {
            Preset::Interval => interval(),
            Preset::Rose(n) => rose(*n),
            Preset::Cycle(k) => cycle(*k),
            Preset::Torus => product(&rose(1)?, &rose(1)?),
            Preset::Surface(g) => surface(*g),
            Preset::Product(a, b) => product(&a.build()?, &b.build()?),
        }
    }

    /// Parses `interval`, `torus`, `rose:N`, `cycle:N`, `surface:G` and
    /// `product(A,B)`.
    pub fn parse(expr: &str) -> Result<Preset> {
        let expr = expr.trim();
        if let Some(inner) = expr.strip_prefix("product(").and_then(|s| s.strip_suffix(')')) {
            let mut depth = 0usize;
            for (pos, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        let a = Preset::parse(&inner[..pos])?;
                        let b = Preset::parse(&inner[pos + 1..])?;
                        return Ok(Preset::Product(Box::new(a), Box::new(b)));
                    }
                    _ => {}
                }
            }
            return Err(Error::UnknownPreset(expr.to_string()));
        }
        let (name, arg) = match expr.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (expr, None),
        };
        let number = || -> Result<usize> {
            arg.and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::UnknownPreset(expr.to_string()))
        };
        match name {
            "interval" => Ok(Preset::Interval),
            "torus" => Ok(Preset::Torus),
            "rose" => Ok(Preset::Rose(number()?)),
            "cycle" => Ok(Preset::Cycle(number()?)),
            "surface" => Ok(Preset::Surface(number()?)),
            _ => Err(Error::UnknownPreset(expr.to_string())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Interval => write!(f, "interval"),
            Preset::Torus => write!(f, "torus"),
            Preset::Rose(n) => write!(f, "rose:{n}"),
            Preset::Cycle(k) => write!(f, "cycle:{k}"),
            Preset::Surface(g) => write!(f, "surface:{g}"),
            Preset::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

fn edge_map() -> SignedPermMap {
    SignedPermMap::facet_standard(1, 0)
}

fn add_edge(b: &mut ComplexBuilder, id: &str, tail: &str, head: &str) -> Result<()> {
    b.add_cube(id, 1)?;
    b.set_facet(id, 0, Sign::Minus, tail, edge_map())?;
    b.set_facet(id, 0, Sign::Plus, head, edge_map())
}

fn interval() -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    b.add_cube("v0", 0)?;
    b.add_cube("v1", 0)?;
    add_edge(&mut b, "e0", "v0", "v1")?;
    b.build()
}

fn rose(n: usize) -> Result<CubeComplex> {
    let mut b = ComplexBuilder::new();
    b.add_cube("v", 0)?;
    for i in 0..n {
        add_edge(&mut b, &format!("e{i}"), "v", "v")?;
    }
    b.build()
}

fn cycle(k: usize) -> Result<CubeComplex> {
    if k == 0 {
        return Err(Error::UnknownPreset("cycle:0".to_string()));
    }
    let mut b = ComplexBuilder::new();
    for i in 0..k {
        b.add_cube(format!("v{i}"), 0)?;
    }
    for i in 0..k {
        add_edge(&mut b, &format!("e{i}"), &format!("v{i}"), &format!("v{}", (i + 1) % k))?;
    }
    b.build()
}

fn coned_surface(g: usize) -> Result<CubeComplex> {
    let sides = 4 * g;
    // Side k carries label `labels[k]` with exponent `exps[k]`.
    let mut labels = Vec::with_capacity(sides);
    let mut exps = Vec::with_capacity(sides);
    for i in 1..=g {
        for (name, e) in [("a", 1), ("b", 1), ("a", -1), ("b", -1)] {
            labels.push(format!("{name}{i}"));
            exps.push(e);
        }
    }
    let width = (sides - 1).to_string().len();
    let spoke = |k: usize| format!("s{:0width$}", k % sides);
    // Half of side k adjacent to its starting corner, and to its end corner.
    let half_start = |k: usize| format!("{}_{}", labels[k], if exps[k] == 1 { 0 } else { 1 });
    let half_end = |k: usize| format!("{}_{}", labels[k], if exps[k] == 1 { 1 } else { 0 });

    let mut b = ComplexBuilder::new();
    b.add_cube("c", 0)?;
    b.add_cube("p", 0)?;
    for i in 1..=g {
        for name in ["a", "b"] {
            let label = format!("{name}{i}");
            let mid = format!("m{label}");
            b.add_cube(mid.clone(), 0)?;
            add_edge(&mut b, &format!("{label}_0"), "p", &mid)?;
            add_edge(&mut b, &format!("{label}_1"), "p", &mid)?;
        }
    }
    for k in 0..sides {
        add_edge(&mut b, &spoke(k), "c", &format!("m{}", labels[k]))?;
    }
    let plus_y = SignedPermMap::new(vec![None, Some(SignedCoord::new(0, Sign::Plus))], 1);
    let minus_y = SignedPermMap::new(vec![None, Some(SignedCoord::new(0, Sign::Minus))], 1);
    let plus_x = SignedPermMap::new(vec![Some(SignedCoord::new(0, Sign::Plus)), None], 1);
    let minus_x = SignedPermMap::new(vec![Some(SignedCoord::new(0, Sign::Minus)), None], 1);
    for k in 0..sides {
        let prev = (k + sides - 1) % sides;
        let q = format!("q{:0width$}", k);
        b.add_cube(q.clone(), 2)?;
        b.set_facet(&q, 0, Sign::Minus, spoke(k), plus_y.clone())?;
        b.set_facet(&q, 0, Sign::Plus, half_end(prev), minus_y.clone())?;
        b.set_facet(&q, 1, Sign::Minus, spoke(prev), plus_x.clone())?;
        b.set_facet(&q, 1, Sign::Plus, half_start(k), minus_x.clone())?;
    }
    b.build()
}

/// Square tiling of a closed surface by right-angled `(g + 3)`-gons,
/// taken modulo a torsion-free `(Z/2)^3` colouring of the polygon's
/// sides. Vertices are the eight elements of `(Z/2)^3`; side `i` of the
/// polygon contributes the edges `{x, x + colour(i)}` and consecutive
/// sides span squares. Every colour has odd weight, so the quotient is
/// orientable, and `chi = 8 - 4(g + 3) + 2(g + 3) = 2 - 2g`.
fn polygon_quotient_surface(g: usize) -> Result<CubeComplex> {
    let sides = g + 3;
    let colour = |i: usize| -> u8 {
        match i {
            0 => 0b100,
            _ if i % 2 == 1 => 0b001,
            _ => 0b010,
        }
    };
    let width = (sides - 1).to_string().len();
    let vertex = |x: u8| format!("x{x:03b}");
    let edge = |i: usize, x: u8| {
        let tail = x.min(x ^ colour(i));
        format!("e{i:0width$}_{tail:03b}")
    };
    let plus_tail = |i: usize, x: u8| if x < (x ^ colour(i)) { Sign::Plus } else { Sign::Minus };
    let mut b = ComplexBuilder::new();
    for x in 0..8u8 {
        b.add_cube(vertex(x), 0)?;
    }
    for i in 0..sides {
        for x in 0..8u8 {
            let y = x ^ colour(i);
            if x < y {
                add_edge(&mut b, &edge(i, x), &vertex(x), &vertex(y))?;
            }
        }
    }
    for i in 0..sides {
        let j = (i + 1) % sides;
        let (a, c) = (colour(i), colour(j));
        for x in 0..8u8 {
            let coset = [x, x ^ a, x ^ c, x ^ a ^ c];
            if *coset.iter().min().expect("nonempty") != x {
                continue;
            }
            let (lo, hi) = (i.min(j), i.max(j));
            let (da, dc) = if lo == i { (a, c) } else { (c, a) };
            let q = format!("q{lo:0width$}{hi:0width$}_{x:03b}");
            b.add_cube(q.clone(), 2)?;
            for eps in Sign::BOTH {
                // Facet across coordinate 0 runs in direction `hi`.
                let p = if eps.is_plus() { x ^ da } else { x };
                let map = SignedPermMap::new(vec![None, Some(SignedCoord::new(0, plus_tail(hi, p)))], 1);
                b.set_facet(&q, 0, eps, edge(hi, p), map)?;
                let p = if eps.is_plus() { x ^ dc } else { x };
                let map = SignedPermMap::new(vec![Some(SignedCoord::new(0, plus_tail(lo, p))), None], 1);
                b.set_facet(&q, 1, eps, edge(lo, p), map)?;
            }
        }
    }
    b.build()
}

fn surface(g: usize) -> Result<CubeComplex> {
    let candidate = match g {
        0 => return Err(Error::UnknownPreset("surface:0".to_string())),
        1 => coned_surface(1)?,
        _ => polygon_quotient_surface(g)?,
    };
    if crate::hyperplane::specialness(&candidate).is_special() {
        Ok(candidate)
    } else {
        Ok(subdivide(&candidate))
    }
}

/// Cartesian product; the coordinates of `a` come first. Cube ids are
/// `(a_id,b_id)`.
pub fn product(a: &CubeComplex, b: &CubeComplex) -> Result<CubeComplex> {
    let name = |x: &str, y: &str| format!("({x},{y})");
    let mut builder = ComplexBuilder::new();
    for ca in a.cubes() {
        for cb in b.cubes() {
            builder.add_cube(name(ca.id(), cb.id()), ca.dim() + cb.dim())?;
        }
    }
    for ca in a.cubes() {
        let da = ca.dim();
        for cb in b.cubes() {
            let db = cb.dim();
            let id = name(ca.id(), cb.id());
            for (coord, sign, f) in ca.facets() {
                let mut images: Vec<Option<SignedCoord>> = f.map.images().to_vec();
                images.extend((0..db).map(|l| Some(SignedCoord::new(da - 1 + l, Sign::Plus))));
                let map = SignedPermMap::new(images, da + db - 1);
                builder.set_facet(&id, coord, sign, name(a.id(f.target), cb.id()), map)?;
            }
            for (coord, sign, f) in cb.facets() {
                let mut images: Vec<Option<SignedCoord>> =
                    (0..da).map(|j| Some(SignedCoord::new(j, Sign::Plus))).collect();
                images.extend(
                    f.map
                        .images()
                        .iter()
                        .map(|img| img.map(|sc| SignedCoord::new(da + sc.coord, sc.sign))),
                );
                let map = SignedPermMap::new(images, da + db - 1);
                builder.set_facet(&id, da + coord, sign, name(ca.id(), b.id(f.target)), map)?;
            }
        }
    }
    builder.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Low,
    High,
    Mid,
}

impl Half {
    fn flip(self) -> Half {
        match self {
            Half::Low => Half::High,
            Half::High => Half::Low,
            Half::Mid => Half::Mid,
        }
    }

    fn letter(self) -> char {
        match self {
            Half::Low => 'l',
            Half::High => 'r',
            Half::Mid => 'z',
        }
    }
}

fn half_patterns(n: usize) -> Vec<Vec<Half>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                [Half::Low, Half::High, Half::Mid].into_iter().map(move |h| {
                    let mut q = p.clone();
                    q.push(h);
                    q
                })
            })
            .collect();
    }
    out
}

fn free_position(tau: &[Half], coord: usize) -> usize {
    tau[..coord].iter().filter(|h| **h != Half::Mid).count()
}

/// Cubical barycentric subdivision: every `n`-cube becomes `2^n` cubes.
/// New cube ids are `id[pattern]` where the pattern records, per
/// coordinate, the lower half `l`, upper half `r` or midpoint `z`.
pub fn subdivide(x: &CubeComplex) -> CubeComplex {
    let name = |id: &str, tau: &[Half]| {
        let letters: String = tau.iter().map(|h| h.letter()).collect();
        format!("{id}[{letters}]")
    };
    let mut b = ComplexBuilder::new();
    for c in x.cubes() {
        for tau in half_patterns(c.dim()) {
            let dim = tau.iter().filter(|h| **h != Half::Mid).count();
            b.add_cube(name(c.id(), &tau), dim).expect("subdivision ids are unique");
        }
    }
    for c in x.cubes() {
        for tau in half_patterns(c.dim()) {
            let id = name(c.id(), &tau);
            let new_dim = tau.iter().filter(|h| **h != Half::Mid).count();
            for (j, h) in tau.iter().enumerate() {
                if *h == Half::Mid {
                    continue;
                }
                let local = free_position(&tau, j);
                let (inner_sign, outer_sign) = match h {
                    Half::Low => (Sign::Plus, Sign::Minus),
                    _ => (Sign::Minus, Sign::Plus),
                };
                // Inner facet: the midpoint slice of the same cube.
                let mut inner_tau = tau.clone();
                inner_tau[j] = Half::Mid;
                let inner_map = SignedPermMap::facet_standard(new_dim, local);
                b.set_facet(&id, local, inner_sign, name(c.id(), &inner_tau), inner_map)
                    .expect("coordinate in range");
                // Outer facet: the matching cell inside the original facet.
                let f = c.facet(j, outer_sign);
                let target = x.cube(f.target);
                let mut outer_tau = vec![Half::Mid; target.dim()];
                for (k, hk) in tau.iter().enumerate() {
                    if k == j {
                        continue;
                    }
                    let img = f.map.image(k).expect("retained coordinate");
                    outer_tau[img.coord] = if img.sign.is_plus() { *hk } else { hk.flip() };
                }
                let mut images = Vec::with_capacity(new_dim);
                for (k, hk) in tau.iter().enumerate() {
                    if *hk == Half::Mid {
                        continue;
                    }
                    if k == j {
                        images.push(None);
                    } else {
                        let img = f.map.image(k).expect("retained coordinate");
                        images.push(Some(SignedCoord::new(free_position(&outer_tau, img.coord), img.sign)));
                    }
                }
                let outer_map = SignedPermMap::new(images, new_dim - 1);
                b.set_facet(&id, local, outer_sign, name(target.id(), &outer_tau), outer_map)
                    .expect("coordinate in range");
            }
        }
    }
    b.build().expect("subdivision is well formed")
}
