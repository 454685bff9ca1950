//! Named subsystem embeddings, given by explicit simple roots of the
//! subsystem in terms of the Bourbaki simple roots `eps_i` and highest roots.

use super::{canonical_type_label, RootId, RootSystem, Subsystem};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Gen {
    /// Simple root `eps_i` (1-based).
    Eps(usize),
    /// Minus the highest root of the whole system.
    NegHighest,
    /// Minus the highest root of the irreducible subsystem with the given simple roots.
    NegHighestOf(Vec<Gen>),
}

use Gen::{Eps, NegHighest, NegHighestOf};

fn eps_range(a: usize, b: usize) -> Vec<Gen> {
    (a..=b).map(Eps).collect()
}

fn cat(parts: Vec<Vec<Gen>>) -> Vec<Gen> {
    parts.into_iter().flatten().collect()
}

/// The embeddings for which condition (*) is known to hold, as
/// `(item, system, subsystem type)`. Item `u` is the family `D2m:2mA1`.
pub const ITEMS: [(char, &str, &str); 22] = [
    ('a', "E7", "A7"),
    ('b', "E6", "A5+A1"),
    ('c', "E8", "A8"),
    ('d', "E6", "D5"),
    ('e', "E7", "E6"),
    ('f', "E7", "A5+A2"),
    ('g', "E7", "2A3+A1"),
    ('h', "E8", "A1+A7"),
    ('i', "E8", "D5+A3"),
    ('j', "E8", "2A4"),
    ('k', "E8", "4A2"),
    ('l', "E6", "3A2"),
    ('m', "E8", "E6+A2"),
    ('n', "E7", "D6+A1"),
    ('o', "E8", "D8"),
    ('p', "E8", "E7+A1"),
    ('q', "E7", "D4+3A1"),
    ('r', "E8", "D6+2A1"),
    ('s', "E8", "2D4"),
    ('t', "E7", "7A1"),
    ('u', "D2m", "2mA1"),
    ('v', "E8", "8A1"),
];

fn explicit(system: &str, label: &str) -> Option<Vec<Gen>> {
    let d8 = || cat(vec![eps_range(2, 8), vec![NegHighest]]);
    let d6_in_e7 = || cat(vec![vec![NegHighest], eps_range(1, 5)]);
    Some(match (system, label) {
        ("E7", "A7") => cat(vec![vec![NegHighest, Eps(1)], eps_range(3, 7)]),
        ("E6", "A5+A1") => cat(vec![vec![NegHighest, Eps(1)], eps_range(3, 6)]),
        ("E8", "A8") => cat(vec![vec![Eps(1)], eps_range(3, 8), vec![NegHighest]]),
        ("E6", "D5") => eps_range(1, 5),
        ("E7", "E6") => eps_range(1, 6),
        ("E7", "A5+A2") => cat(vec![vec![NegHighest, Eps(1), Eps(2)], eps_range(4, 7)]),
        ("E7", "2A3+A1") => vec![NegHighest, Eps(1), Eps(2), Eps(3), Eps(5), Eps(6), Eps(7)],
        ("E8", "A7+A1") => cat(vec![vec![NegHighest, Eps(1), Eps(2)], eps_range(4, 8)]),
        ("E8", "D5+A3") => cat(vec![eps_range(1, 5), vec![Eps(7), Eps(8), NegHighest]]),
        ("E8", "2A4") => cat(vec![eps_range(1, 4), eps_range(6, 8), vec![NegHighest]]),
        ("E8", "4A2") => vec![
            Eps(8),
            NegHighest,
            Eps(1),
            Eps(3),
            Eps(5),
            Eps(6),
            Eps(2),
            NegHighestOf(eps_range(1, 6)),
        ],
        ("E6", "3A2") => vec![Eps(1), Eps(3), Eps(5), Eps(6), Eps(2), NegHighest],
        ("E8", "E6+A2") => cat(vec![eps_range(1, 6), vec![Eps(8), NegHighest]]),
        ("E7", "D6+A1") => cat(vec![d6_in_e7(), vec![Eps(7)]]),
        ("E8", "D8") => d8(),
        ("E8", "E7+A1") => cat(vec![eps_range(1, 7), vec![NegHighest]]),
        ("E7", "D4+3A1") => vec![NegHighest, NegHighestOf(d6_in_e7()), Eps(3), Eps(4), Eps(5), Eps(2), Eps(7)],
        ("E8", "D6+2A1") => cat(vec![eps_range(2, 7), vec![NegHighest, NegHighestOf(d8())]]),
        ("E8", "2D4") => vec![NegHighest, Eps(8), Eps(7), NegHighestOf(d8()), Eps(2), Eps(3), Eps(4), Eps(5)],
        _ => return None,
    })
}

fn resolve_gen(sys: &RootSystem, g: &Gen) -> Result<RootId> {
    Ok(match g {
        Eps(i) => sys.simple(i - 1),
        NegHighest => sys.neg(sys.highest_root()),
        NegHighestOf(gs) => {
            let ids = gs.iter().map(|g| resolve_gen(sys, g)).collect::<Result<Vec<_>>>()?;
            sys.neg(highest_root_of(sys, &ids)?)
        }
    })
}

/// Highest root of the irreducible subsystem whose simple roots are `simple`.
pub fn highest_root_of(sys: &RootSystem, simple: &[RootId]) -> Result<RootId> {
    let sub = Subsystem::closure(sys, simple);
    // Gram matrix of the simple roots; coefficients c solve G c = (<gamma, s_j>)
    let gram: Vec<Vec<f64>> =
        simple.iter().map(|&a| simple.iter().map(|&b| sys.pairing(a, b) as f64).collect()).collect();
    let mut best: Option<(i64, RootId)> = None;
    for &g in sub.roots() {
        let rhs: Vec<f64> = simple.iter().map(|&s| sys.pairing(g, s) as f64).collect();
        let c = solve(&gram, &rhs).ok_or_else(|| Error::PreconditionViolation("simple roots are dependent".into()))?;
        let ci: Vec<i64> = c.iter().map(|x| x.round() as i64).collect();
        // verify exactly
        let mut v = vec![0i64; sys.ambient_dim()];
        for (j, &s) in simple.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(sys.coords(s)) {
                *x += ci[j] * y;
            }
        }
        if v != sys.coords(g) {
            return Err(Error::PreconditionViolation("not a simple system of its span".into()));
        }
        if ci.iter().all(|&x| x >= 0) {
            let h: i64 = ci.iter().sum();
            if best.is_none_or(|(bh, _)| h > bh) {
                best = Some((h, g));
            }
        }
    }
    best.map(|(_, g)| g).ok_or_else(|| Error::PreconditionViolation("empty subsystem".into()))
}

fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-9 {
            return None;
        }
        m.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// A set of `size` mutually orthogonal roots whose closure is exactly
/// `size` copies of A1, found by deterministic backtracking over positive
/// roots in id order.
pub fn orthogonal_frame(sys: &RootSystem, size: usize) -> Option<Vec<RootId>> {
    fn go(sys: &RootSystem, size: usize, start: usize, chosen: &mut Vec<RootId>) -> bool {
        if chosen.len() == size {
            return Subsystem::closure(sys, chosen).len() == 2 * size;
        }
        for i in start..sys.n_positive() {
            let a = RootId(i);
            if chosen.iter().all(|&b| sys.pairing(a, b) == 0) {
                chosen.push(a);
                if go(sys, size, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(sys, size, 0, &mut chosen).then_some(chosen)
}

/// `{e1 - e2, e1 + e2, e3 - e4, e3 + e4, ...}` in `D_{2m}`.
fn d2m_frame(sys: &RootSystem) -> Result<Vec<RootId>> {
    let n = sys.ambient_dim();
    let mut out = Vec::new();
    for i in (0..n).step_by(2) {
        for s in [-2, 2] {
            let mut v = vec![0; n];
            v[i] = 2;
            v[i + 1] = s;
            out.push(sys.lookup(&v)?);
        }
    }
    Ok(out)
}

/// Resolves a preset such as `"E7:A7"`, `"D4:4A1"` or `"D2m:2mA1"` (with
/// `m`) into the ambient system and the subsystem's simple roots.
pub fn resolve(spec: &str, m: Option<usize>) -> Result<(RootSystem, Vec<RootId>)> {
    let (system, label) = spec.split_once(':').ok_or_else(|| Error::UnknownPreset(spec.to_string()))?;
    let (system, label) = if system == "D2m" || label == "2mA1" {
        let m = m.ok_or_else(|| Error::UnknownPreset(format!("{spec} needs the parameter m")))?;
        if m < 2 {
            return Err(Error::UnknownPreset(format!("{spec} with m = {m}")));
        }
        (format!("D{}", 2 * m), format!("{}A1", 2 * m))
    } else {
        (system.to_string(), label.to_string())
    };
    let sys = RootSystem::from_label(&system).map_err(|_| Error::UnknownPreset(spec.to_string()))?;
    let canon = canonical_type_label(&label).map_err(|_| Error::UnknownPreset(spec.to_string()))?;
    let gens = if let Some(gs) = explicit(&system, &canon) {
        gs.iter().map(|g| resolve_gen(&sys, g)).collect::<Result<Vec<_>>>()?
    } else if system.starts_with('D') && canon == format!("{}A1", sys.rank()) && sys.rank() % 2 == 0 {
        d2m_frame(&sys)?
    } else if (system == "E7" && canon == "7A1") || (system == "E8" && canon == "8A1") {
        orthogonal_frame(&sys, sys.rank()).ok_or_else(|| Error::UnknownPreset(spec.to_string()))?
    } else {
        return Err(Error::UnknownPreset(spec.to_string()));
    };
    Ok((sys, gens))
}

/// Preset string for an item letter (`u` needs `m`).
pub fn item_spec(item: char) -> Option<String> {
    ITEMS.iter().find(|(c, _, _)| *c == item).map(|(_, s, l)| format!("{s}:{l}"))
}
