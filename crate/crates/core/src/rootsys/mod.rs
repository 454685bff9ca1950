//! Simply-laced root systems in explicit coordinates.
//!
//! Coordinates are stored doubled, so the half-integer vectors of the
//! E-series realizations become integers; the pairing divides the dot
//! product by 4.

pub mod presets;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactrings::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    D(usize),
    E(usize),
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::D(n) | CartanType::E(n) => n,
        }
    }

    pub fn root_count(&self) -> usize {
        match *self {
            CartanType::A(n) => n * (n + 1),
            CartanType::D(n) => 2 * n * (n - 1),
            CartanType::E(6) => 72,
            CartanType::E(7) => 126,
            CartanType::E(_) => 240,
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            CartanType::A(n) => n >= 1,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Parse(format!("unsupported root system {self}")))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad root system label {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str().trim_start_matches('_');
        let n: usize = rest.parse().map_err(|_| bad())?;
        match letter.to_ascii_uppercase() {
            'A' => CartanType::A(n),
            'D' => CartanType::D(n),
            'E' => CartanType::E(n),
            _ => return Err(bad()),
        }
        .validate()
    }
}

/// An irreducible simply-laced root system with all lookup tables
/// precomputed. Roots are numbered: positive roots by height (simple roots
/// first, in Bourbaki order), then their negatives in the same order.
#[derive(Debug)]
pub struct RootSystem {
    cartan: CartanType,
    dim: usize,
    roots: Vec<Vec<i64>>,
    coeffs: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, RootId>,
    neg: Vec<RootId>,
    pairing: Vec<i8>,
    sum: Vec<Option<RootId>>,
    reflect: Vec<RootId>,
    n_pos: usize,
}

/// Doubled inner product divided back: `<x, y>` for doubled coordinates.
pub fn pairing_coords(x: &[i64], y: &[i64]) -> i64 {
    let d: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    debug_assert_eq!(d % 4, 0);
    d / 4
}

fn unit(dim: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn simple_roots(cartan: CartanType) -> Vec<Vec<i64>> {
    match cartan {
        CartanType::A(n) => (0..n)
            .map(|i| {
                let mut v = unit(n + 1, i, 2);
                v[i + 1] = -2;
                v
            })
            .collect(),
        CartanType::D(n) => {
            let mut out: Vec<Vec<i64>> = (0..n - 1)
                .map(|i| {
                    let mut v = unit(n, i, 2);
                    v[i + 1] = -2;
                    v
                })
                .collect();
            let mut last = unit(n, n - 2, 2);
            last[n - 1] = 2;
            out.push(last);
            out
        }
        CartanType::E(7) => {
            // 56 roots e_i - e_j and 70 vectors (1/2)(+-1)^8 with four minus
            // signs, inside the hyperplane of coordinate sum zero
            let diff = |i: usize, j: usize| {
                let mut v = unit(8, i, 2);
                v[j] = -2;
                v
            };
            vec![
                diff(2, 1),
                vec![1, 1, 1, 1, -1, -1, -1, -1],
                diff(3, 2),
                diff(4, 3),
                diff(5, 4),
                diff(6, 5),
                diff(7, 6),
            ]
        }
        CartanType::E(n) => {
            let mut out = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], {
                let mut v = unit(8, 0, 2);
                v[1] = 2;
                v
            }];
            for i in 0..n - 2 {
                let mut v = unit(8, i + 1, 2);
                v[i] = -2;
                out.push(v);
            }
            out
        }
    }
}

impl RootSystem {
    pub fn build(cartan: CartanType) -> RootSystem {
        let simple = simple_roots(cartan);
        let r = simple.len();
        let dim = simple[0].len();
        // breadth-first closure of the simple roots under simple reflections
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for (i, s) in simple.iter().enumerate() {
            seen.insert(s.clone(), unit(r, i, 1));
            queue.push_back(s.clone());
        }
        while let Some(g) = queue.pop_front() {
            let c = seen[&g].clone();
            for (i, s) in simple.iter().enumerate() {
                let p = pairing_coords(&g, s);
                if p == 0 {
                    continue;
                }
                let img: Vec<i64> = g.iter().zip(s).map(|(a, b)| a - p * b).collect();
                if !seen.contains_key(&img) {
                    let mut ci = c.clone();
                    ci[i] -= p;
                    seen.insert(img.clone(), ci);
                    queue.push_back(img);
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> =
            seen.into_iter().filter(|(_, c)| c.iter().all(|&x| x >= 0)).collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.1.iter().sum();
            let hb: i64 = b.1.iter().sum();
            ha.cmp(&hb).then_with(|| b.1.cmp(&a.1))
        });
        let n_pos = pos.len();
        let mut roots = Vec::with_capacity(2 * n_pos);
        let mut coeffs = Vec::with_capacity(2 * n_pos);
        for (v, c) in &pos {
            roots.push(v.clone());
            coeffs.push(c.clone());
        }
        for (v, c) in &pos {
            roots.push(v.iter().map(|x| -x).collect());
            coeffs.push(c.iter().map(|x| -x).collect());
        }
        let n = roots.len();
        let index: HashMap<Vec<i64>, RootId> = roots.iter().enumerate().map(|(i, v)| (v.clone(), RootId(i))).collect();
        let neg = (0..n).map(|i| RootId((i + n_pos) % n)).collect();
        let mut pairing = vec![0i8; n * n];
        let mut sum = vec![None; n * n];
        let mut reflect = vec![RootId(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let p = pairing_coords(&roots[a], &roots[b]);
                pairing[a * n + b] = p as i8;
                let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                sum[a * n + b] = index.get(&s).copied();
                // reflect[a*n+b] = s_b(a)
                let img: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x - p * y).collect();
                reflect[a * n + b] = index[&img];
            }
        }
        RootSystem { cartan, dim, roots, coeffs, index, neg, pairing, sum, reflect, n_pos }
    }

    pub fn from_label(label: &str) -> Result<RootSystem> {
        Ok(RootSystem::build(label.parse()?))
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn label(&self) -> String {
        self.cartan.to_string()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// Length of the (doubled) coordinate vectors.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn n_positive(&self) -> usize {
        self.n_pos
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len()).map(RootId)
    }

    pub fn simple(&self, i: usize) -> RootId {
        assert!(i < self.rank());
        RootId(i)
    }

    pub fn simple_roots(&self) -> Vec<RootId> {
        (0..self.rank()).map(RootId).collect()
    }

    pub fn coords(&self, a: RootId) -> &[i64] {
        &self.roots[a.0]
    }

    /// Coefficients in the basis of simple roots.
    pub fn simple_coeffs(&self, a: RootId) -> &[i64] {
        &self.coeffs[a.0]
    }

    pub fn height(&self, a: RootId) -> i64 {
        self.coeffs[a.0].iter().sum()
    }

    pub fn is_positive(&self, a: RootId) -> bool {
        a.0 < self.n_pos
    }

    pub fn id_of(&self, coords: &[i64]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    pub fn lookup(&self, coords: &[i64]) -> Result<RootId> {
        self.id_of(coords).ok_or_else(|| Error::GeneratorsNotInSystem(coords.to_vec()))
    }

    pub fn neg(&self, a: RootId) -> RootId {
        self.neg[a.0]
    }

    pub fn pairing(&self, a: RootId, b: RootId) -> i64 {
        self.pairing[a.0 * self.roots.len() + b.0] as i64
    }

    /// `a + b` when it is a root.
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sum[a.0 * self.roots.len() + b.0]
    }

    /// `s_alpha(gamma) = gamma - <gamma, alpha> alpha`.
    pub fn reflect(&self, gamma: RootId, alpha: RootId) -> RootId {
        self.reflect[gamma.0 * self.roots.len() + alpha.0]
    }

    pub fn highest_root(&self) -> RootId {
        RootId(self.n_pos - 1)
    }

    /// Element of the root lattice with the given simple-root coefficients.
    pub fn from_simple_coeffs(&self, c: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        for (i, &k) in c.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&self.roots[i]) {
                *x += k * y;
            }
        }
        v
    }

    pub fn format_root(&self, a: RootId) -> String {
        format!("{:?}", self.coords(a))
    }

    /// Roots orthogonal to every root of `sub`.
    pub fn perp(&self, sub: &Subsystem) -> Vec<RootId> {
        self.ids().filter(|&g| sub.roots().iter().all(|&a| self.pairing(g, a) == 0)).collect()
    }

    /// Shortest word of reflections (taken from `gens`) carrying `from` to
    /// `to`: applying `s_{w[0]}`, then `s_{w[1]}`, ... maps `from` to `to`.
    pub fn reflection_path(&self, from: RootId, to: RootId, gens: &[RootId]) -> Option<Vec<RootId>> {
        let n = self.n_roots();
        let mut parent: Vec<Option<(RootId, RootId)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from.0] = true;
        let mut q = VecDeque::from([from]);
        while let Some(g) = q.pop_front() {
            if g == to {
                let mut word = Vec::new();
                let mut cur = g;
                while let Some((p, r)) = parent[cur.0] {
                    word.push(r);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for &r in gens {
                let img = self.reflect(g, r);
                if !seen[img.0] {
                    seen[img.0] = true;
                    parent[img.0] = Some((g, r));
                    q.push_back(img);
                }
            }
        }
        None
    }

    /// Applies a reflection word (first letter first).
    pub fn apply_word(&self, gamma: RootId, word: &[RootId]) -> RootId {
        word.iter().fold(gamma, |g, &r| self.reflect(g, r))
    }
}

/// A subsystem `Delta`: the roots of the parent lying in the integer span
/// of the given generators.
#[derive(Clone, Debug)]
pub struct Subsystem {
    generators: Vec<RootId>,
    roots: Vec<RootId>,
    member: Vec<bool>,
    pub is_symmetric: bool,
    pub is_closed: bool,
}

impl Subsystem {
    pub fn closure(sys: &RootSystem, generators: &[RootId]) -> Subsystem {
        let r = sys.rank();
        let lat = Lattice::from_generators(
            r,
            None,
            generators.iter().map(|&g| sys.simple_coeffs(g).iter().map(|&x| x as i128).collect()),
        )
        .expect("root coefficients are small");
        let mut member = vec![false; sys.n_roots()];
        let mut roots = Vec::new();
        for a in sys.ids() {
            let c: Vec<i128> = sys.simple_coeffs(a).iter().map(|&x| x as i128).collect();
            if lat.contains(&c).expect("small") {
                member[a.0] = true;
                roots.push(a);
            }
        }
        let is_symmetric = roots.iter().all(|&a| member[sys.neg(a).0]);
        let is_closed = roots
            .iter()
            .all(|&a| roots.iter().all(|&b| sys.sum(a, b).is_none_or(|s| member[s.0])));
        Subsystem { generators: generators.to_vec(), roots, member, is_symmetric, is_closed }
    }

    pub fn from_coords(sys: &RootSystem, gens: &[Vec<i64>]) -> Result<Subsystem> {
        let ids = gens.iter().map(|g| sys.lookup(g)).collect::<Result<Vec<_>>>()?;
        Ok(Subsystem::closure(sys, &ids))
    }

    pub fn generators(&self) -> &[RootId] {
        &self.generators
    }

    pub fn roots(&self) -> &[RootId] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Dimension of the span.
    pub fn rank(&self, sys: &RootSystem) -> usize {
        rank_of(sys, &self.roots)
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, a: RootId) -> bool {
        self.member[a.0]
    }

    /// Roots of the parent outside the subsystem.
    pub fn complement(&self, sys: &RootSystem) -> Vec<RootId> {
        sys.ids().filter(|&a| !self.member[a.0]).collect()
    }

    /// Irreducible components, each a sorted list of roots.
    pub fn components(&self, sys: &RootSystem) -> Vec<Vec<RootId>> {
        let mut comp = vec![usize::MAX; sys.n_roots()];
        let mut out: Vec<Vec<RootId>> = Vec::new();
        for &start in &self.roots {
            if comp[start.0] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start.0] = id;
            let mut i = 0;
            while i < members.len() {
                let a = members[i];
                for &b in &self.roots {
                    if comp[b.0] == usize::MAX && sys.pairing(a, b) != 0 {
                        comp[b.0] = id;
                        members.push(b);
                    }
                }
                i += 1;
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Isomorphism type, e.g. `"A5+A1"`, `"2A3+A1"`, `"D4+3A1"`; the empty
    /// subsystem is `"0"`.
    pub fn type_label(&self, sys: &RootSystem) -> String {
        let mut types = Vec::new();
        for c in self.components(sys) {
            let rank = rank_of(sys, &c);
            let n = c.len();
            let t = if n == rank * (rank + 1) {
                CartanType::A(rank)
            } else if rank >= 4 && n == 2 * rank * (rank - 1) {
                CartanType::D(rank)
            } else {
                CartanType::E(rank)
            };
            types.push(t);
        }
        format_type_multiset(types)
    }
}

fn rank_of(sys: &RootSystem, roots: &[RootId]) -> usize {
    let l = Lattice::from_generators(
        sys.rank(),
        None,
        roots.iter().map(|&g| sys.simple_coeffs(g).iter().map(|&x| x as i128).collect()),
    )
    .expect("small");
    l.basis().len()
}

fn type_order(t: &CartanType) -> (u8, usize) {
    match *t {
        CartanType::E(n) => (0, usize::MAX - n),
        CartanType::D(n) => (1, usize::MAX - n),
        CartanType::A(n) => (2, usize::MAX - n),
    }
}

fn format_type_multiset(mut types: Vec<CartanType>) -> String {
    if types.is_empty() {
        return "0".into();
    }
    types.sort_by_key(type_order);
    let mut parts = Vec::new();
    let mut i = 0;
    while i < types.len() {
        let mut j = i;
        while j < types.len() && types[j] == types[i] {
            j += 1;
        }
        let k = j - i;
        parts.push(if k == 1 { types[i].to_string() } else { format!("{k}{}", types[i]) });
        i = j;
    }
    parts.join("+")
}

/// Canonical form of a type label such as `"A1+A7"` (becomes `"A7+A1"`).
pub fn canonical_type_label(s: &str) -> Result<String> {
    let mut types = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
        let mult: usize = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| Error::Parse(format!("bad type label {s:?}")))?
        };
        let t: CartanType = part[digits.len()..].parse()?;
        types.extend(std::iter::repeat_n(t, mult));
    }
    Ok(format_type_multiset(types))
}

/// Partition of the roots into orbits of the group generated by the
/// reflections in a set of roots, with transport words from each orbit's
/// representative.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<RootId>>,
    parent: Vec<Option<(RootId, RootId)>>,
}

impl OrbitPartition {
    /// Orbits of `W(Delta)` on the whole of `Phi`, generated by reflections in
    /// every root of `Delta`. Representatives are the smallest root ids.
    pub fn weyl_orbits(sys: &RootSystem, sub: &Subsystem) -> OrbitPartition {
        let gens: Vec<RootId> = sub.roots().iter().copied().filter(|&a| sys.is_positive(a)).collect();
        let n = sys.n_roots();
        let mut orbit_of = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut orbits = Vec::new();
        for start in sys.ids() {
            if orbit_of[start.0] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            orbit_of[start.0] = id;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let g = members[i];
                for &r in &gens {
                    let img = sys.reflect(g, r);
                    if orbit_of[img.0] == usize::MAX {
                        orbit_of[img.0] = id;
                        parent[img.0] = Some((g, r));
                        members.push(img);
                    }
                }
                i += 1;
            }
            orbits.push(members);
        }
        OrbitPartition { orbit_of, orbits, parent }
    }

    pub fn orbit_of(&self, a: RootId) -> usize {
        self.orbit_of[a.0]
    }

    pub fn orbits(&self) -> &[Vec<RootId>] {
        &self.orbits
    }

    pub fn representative(&self, orbit: usize) -> RootId {
        self.orbits[orbit][0]
    }

    /// Reflection word `w` with `apply_word(representative, w) == a`.
    pub fn transport_word(&self, a: RootId) -> Vec<RootId> {
        let mut word = Vec::new();
        let mut cur = a;
        while let Some((p, r)) = self.parent[cur.0] {
            word.push(r);
            cur = p;
        }
        word.reverse();
        word
    }

    /// Orbits disjoint from the subsystem.
    pub fn outside(&self, sub: &Subsystem) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&o| !sub.contains(self.orbits[o][0])).collect()
    }
}

/// An ambient system together with a subsystem and the `W(Delta)`-orbits.
#[derive(Debug)]
pub struct Embedding {
    pub sys: Arc<RootSystem>,
    pub sub: Subsystem,
    pub orbits: OrbitPartition,
}

impl Embedding {
    pub fn new(sys: Arc<RootSystem>, gens: &[RootId]) -> Embedding {
        let sub = Subsystem::closure(&sys, gens);
        let orbits = OrbitPartition::weyl_orbits(&sys, &sub);
        Embedding { sys, sub, orbits }
    }

    pub fn from_preset(spec: &str, m: Option<usize>) -> Result<Embedding> {
        let (sys, gens) = presets::resolve(spec, m)?;
        Ok(Embedding::new(Arc::new(sys), &gens))
    }

    pub fn from_spec(spec: &SubsystemSpec) -> Result<Embedding> {
        let (sys, gens) = spec.resolve()?;
        Ok(Embedding::new(Arc::new(sys), &gens))
    }

    pub fn spec(&self) -> SubsystemSpec {
        SubsystemSpec::new(&self.sys, self.sub.generators())
    }

    /// Orbit ids of the roots outside the subsystem.
    pub fn outer_orbits(&self) -> Vec<usize> {
        self.orbits.outside(&self.sub)
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.sys.label(), self.sub.type_label(&self.sys))
    }
}

/// JSON form of a subsystem: `{"system":"E7","subsystem_simple_roots":[[..],..]}`
/// with doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemSpec {
    pub system: String,
    pub subsystem_simple_roots: Vec<Vec<i64>>,
}

impl SubsystemSpec {
    pub fn new(sys: &RootSystem, gens: &[RootId]) -> SubsystemSpec {
        SubsystemSpec {
            system: sys.label(),
            subsystem_simple_roots: gens.iter().map(|&g| sys.coords(g).to_vec()).collect(),
        }
    }

    pub fn resolve(&self) -> Result<(RootSystem, Vec<RootId>)> {
        let sys = RootSystem::from_label(&self.system)?;
        let ids = self.subsystem_simple_roots.iter().map(|g| sys.lookup(g)).collect::<Result<Vec<_>>>()?;
        Ok((sys, ids))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(v: &[i64]) -> Vec<f64> {
        v.iter().map(|&x| x as f64 / 2.0).collect()
    }

    #[test]
    fn root_counts() {
        for (label, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("A7", 56),
            ("D4", 24),
            ("D5", 40),
            ("D6", 60),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            let s = RootSystem::from_label(label).unwrap();
            assert_eq!(s.n_roots(), n, "{label}");
            assert_eq!(s.n_roots(), s.cartan().root_count());
        }
    }

    #[test]
    fn bad_labels() {
        for l in ["D3", "E9", "A0", "B3", "", "E"] {
            assert!(l.parse::<CartanType>().is_err(), "{l}");
        }
    }

    #[test]
    fn e7_roots_have_the_expected_shape() {
        let s = RootSystem::from_label("E7").unwrap();
        let mut integral = 0;
        let mut half = 0;
        for a in s.ids() {
            let v = s.coords(a);
            assert_eq!(v.iter().sum::<i64>(), 0);
            let nz: Vec<i64> = v.iter().copied().filter(|&x| x != 0).collect();
            if nz.iter().all(|x| x.abs() == 1) {
                assert_eq!(nz.len(), 8);
                half += 1;
            } else {
                let mut sorted = nz.clone();
                sorted.sort();
                assert_eq!(sorted, vec![-2, 2]);
                integral += 1;
            }
        }
        assert_eq!((integral, half), (56, 70));
        // highest root is e1 - e2
        assert_eq!(real(s.coords(s.highest_root())), vec![1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.simple_coeffs(s.highest_root()), &[2, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn highest_roots_match_bourbaki() {
        let e8 = RootSystem::from_label("E8").unwrap();
        assert_eq!(e8.simple_coeffs(e8.highest_root()), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let e6 = RootSystem::from_label("E6").unwrap();
        assert_eq!(e6.simple_coeffs(e6.highest_root()), &[1, 2, 2, 3, 2, 1]);
        let d5 = RootSystem::from_label("D5").unwrap();
        assert_eq!(d5.simple_coeffs(d5.highest_root()), &[1, 2, 2, 1, 1]);
    }

    #[test]
    fn simple_roots_are_first_and_cartan_matrix_is_bourbaki() {
        let e7 = RootSystem::from_label("E7").unwrap();
        // Bourbaki E7: 1-3-4-5-6-7 chain, 2 attached to 4
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)];
        for i in 0..7 {
            for j in 0..7 {
                let p = e7.pairing(e7.simple(i), e7.simple(j));
                let expect = if i == j {
                    2
                } else if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
                    -1
                } else {
                    0
                };
                assert_eq!(p, expect, "({i},{j})");
            }
        }
    }

    #[test]
    fn simply_laced_laws_exhaustive_small() {
        for label in ["A2", "A3", "D4"] {
            let s = RootSystem::from_label(label).unwrap();
            for a in s.ids() {
                assert_eq!(s.pairing(a, a), 2);
                assert_eq!(s.coords(s.neg(a)), s.coords(a).iter().map(|x| -x).collect::<Vec<_>>().as_slice());
                for b in s.ids() {
                    let p = s.pairing(a, b);
                    assert!((-2..=2).contains(&p));
                    assert_eq!(s.sum(a, b).is_some(), p == -1, "{label}");
                    let r = s.reflect(a, b);
                    assert_eq!(s.reflect(r, b), a);
                    for c in s.ids() {
                        assert_eq!(s.pairing(s.reflect(a, c), s.reflect(b, c)), p);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn simply_laced_law_on_e_series(big in prop::sample::select(vec!["E7", "E8"]), i in 0usize..240, j in 0usize..240) {
            let s = RootSystem::from_label(big).unwrap();
            let (a, b) = (RootId(i % s.n_roots()), RootId(j % s.n_roots()));
            let p = s.pairing(a, b);
            prop_assert!((-2..=2).contains(&p));
            prop_assert_eq!(s.sum(a, b).is_some(), p == -1);
            prop_assert_eq!(s.reflect(s.reflect(a, b), b), a);
        }
    }

    #[test]
    fn reflection_examples() {
        let d4 = RootSystem::from_label("D4").unwrap();
        let a = d4.lookup(&[2, -2, 0, 0]).unwrap();
        let g = d4.lookup(&[2, 0, 2, 0]).unwrap();
        assert_eq!(d4.coords(d4.reflect(g, a)), &[0, 2, 2, 0]);
        assert_eq!(d4.reflect(a, a), d4.neg(a));
        let perp = d4.lookup(&[0, 0, 2, 2]).unwrap();
        assert_eq!(d4.reflect(perp, a), perp);
    }

    fn d4_4a1(s: &RootSystem) -> Subsystem {
        Subsystem::from_coords(s, &[vec![2, -2, 0, 0], vec![2, 2, 0, 0], vec![0, 0, 2, -2], vec![0, 0, 2, 2]]).unwrap()
    }

    #[test]
    fn subsystem_closures() {
        let d4 = RootSystem::from_label("D4").unwrap();
        let s = d4_4a1(&d4);
        assert_eq!(s.len(), 8);
        assert!(s.is_symmetric && s.is_closed);
        assert_eq!(s.type_label(&d4), "4A1");
        assert!(d4.perp(&s).is_empty());
        let empty = Subsystem::closure(&d4, &[]);
        assert!(empty.is_empty());
        assert_eq!(empty.type_label(&d4), "0");
        let full = Subsystem::closure(&d4, &d4.simple_roots());
        assert_eq!(full.len(), 24);
        assert!(d4.perp(&full).is_empty());
        assert!(matches!(
            Subsystem::from_coords(&d4, &[vec![2, 0, 0, 0]]),
            Err(Error::GeneratorsNotInSystem(_))
        ));
    }

    #[test]
    fn perp_in_a3() {
        let a3 = RootSystem::from_label("A3").unwrap();
        let s = Subsystem::from_coords(&a3, &[vec![2, -2, 0, 0]]).unwrap();
        let mut p: Vec<Vec<i64>> = a3.perp(&s).iter().map(|&g| a3.coords(g).to_vec()).collect();
        p.sort();
        assert_eq!(p, vec![vec![0, 0, -2, 2], vec![0, 0, 2, -2]]);
    }

    #[test]
    fn orbit_facts() {
        let d4 = RootSystem::from_label("D4").unwrap();
        let s = d4_4a1(&d4);
        let orb = OrbitPartition::weyl_orbits(&d4, &s);
        let out = orb.outside(&s);
        assert_eq!(out.len(), 1);
        assert_eq!(orb.orbits()[out[0]].len(), 16);
        for o in orb.orbits() {
            for &g in o {
                let w = orb.transport_word(g);
                assert_eq!(d4.apply_word(o[0], &w), g);
                for &a in s.roots() {
                    assert_eq!(orb.orbit_of(d4.reflect(g, a)), orb.orbit_of(g));
                }
            }
        }
    }

    #[test]
    fn type_labels_canonicalize() {
        assert_eq!(canonical_type_label("A1+A7").unwrap(), "A7+A1");
        assert_eq!(canonical_type_label("A1+A1+D4+A1").unwrap(), "D4+3A1");
        assert_eq!(canonical_type_label("2A4").unwrap(), "2A4");
        assert!(canonical_type_label("X3").is_err());
    }

    #[test]
    fn reflection_path_reaches_target() {
        let e7 = RootSystem::from_label("E7").unwrap();
        let all: Vec<RootId> = e7.ids().filter(|&a| e7.is_positive(a)).collect();
        for t in [RootId(5), RootId(100), e7.highest_root()] {
            let w = e7.reflection_path(RootId(0), t, &all).unwrap();
            assert_eq!(e7.apply_word(RootId(0), &w), t);
        }
    }
}
