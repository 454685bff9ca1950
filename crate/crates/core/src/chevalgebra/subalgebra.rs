//! The subalgebras `L(sigma)`, `L'(sigma)` and `L_{alpha1,alpha2}` and the
//! module computations behind them.

use std::collections::BTreeSet;

use super::{ChevalleyAlgebra, LieVector, Net};
use crate::error::{Error, Result};
use crate::exactrings::lattice::Lattice;
use crate::exactrings::Ring;
use crate::starcond::PairFunctional;

/// `v in L(sigma)`: every root coefficient lies in its ideal; the toral part is free.
pub fn in_l_sigma(alg: &ChevalleyAlgebra, v: &LieVector, net: &Net) -> Result<bool> {
    if v.ring() != net.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", v.ring(), net.ring())));
    }
    for a in alg.system().ids() {
        let c = v.root_coeff(a);
        if !v.ring().is_zero(c) && !net.ideal(a).contains(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v in L_{alpha1,alpha2}`: no coefficient on roots with `varpi < 0`.
pub fn in_l_parabolic(alg: &ChevalleyAlgebra, v: &LieVector, f: &PairFunctional) -> bool {
    alg.system().ids().all(|g| f.value(g) >= 0 || v.ring().is_zero(v.root_coeff(g)))
}

/// Additive generators of `L(sigma)`: `h_i * b` and `xi * b * e_alpha` for
/// `b` in the additive basis of the ring and `xi` an ideal generator.
pub fn l_sigma_generators(alg: &ChevalleyAlgebra, net: &Net) -> Result<Vec<LieVector>> {
    let r = net.ring();
    let zb = r.zbasis()?;
    let mut out = Vec::new();
    for i in 0..alg.system().rank() {
        for b in &zb {
            out.push(alg.basis_vector(r, alg.h(i), b.clone()));
        }
    }
    for a in alg.system().ids() {
        for g in net.ideal(a).nonzero_gens() {
            for b in &zb {
                out.push(alg.e_vector(r, a, r.mul(&g, b)));
            }
        }
    }
    Ok(out)
}

fn lattice_of(alg: &ChevalleyAlgebra, ring: &Ring, vs: &[LieVector]) -> Result<Lattice> {
    let shape = ring.zmodule_shape()?;
    let mut l = Lattice::zero(alg.dim() * shape.rank, shape.modulus);
    for v in vs {
        l.insert(v.to_zcoords()?)?;
    }
    Ok(l)
}

pub fn l_sigma_lattice(alg: &ChevalleyAlgebra, net: &Net) -> Result<Lattice> {
    lattice_of(alg, net.ring(), &l_sigma_generators(alg, net)?)
}

/// `L'(sigma)`, the Lie subalgebra generated by `xi e_alpha` with `xi` in
/// `sigma_alpha`, as an additive lattice.
#[derive(Clone, Debug)]
pub struct LPrime {
    ring: Ring,
    dim: usize,
    lattice: Lattice,
}

impl LPrime {
    pub fn compute(alg: &ChevalleyAlgebra, net: &Net) -> Result<LPrime> {
        let r = net.ring();
        let zb = r.zbasis()?;
        let mut gens = Vec::new();
        for a in alg.system().ids() {
            for g in net.ideal(a).nonzero_gens() {
                gens.push(alg.e_vector(r, a, g));
            }
        }
        let shape = r.zmodule_shape()?;
        let mut lattice = Lattice::zero(alg.dim() * shape.rank, shape.modulus);
        let insert = |lattice: &mut Lattice, v: &LieVector| -> Result<bool> {
            let mut grew = false;
            for b in &zb {
                grew |= lattice.insert(v.scale(b).to_zcoords()?)?;
            }
            Ok(grew)
        };
        for g in &gens {
            insert(&mut lattice, g)?;
        }
        loop {
            let basis: Vec<LieVector> = lattice
                .basis()
                .iter()
                .map(|row| LieVector::from_zcoords(r, alg.dim(), row))
                .collect::<Result<_>>()?;
            let mut grew = false;
            for (i, u) in basis.iter().enumerate() {
                for w in &basis[i + 1..] {
                    let br = alg.bracket(u, w)?;
                    if !br.is_zero() {
                        grew |= insert(&mut lattice, &br)?;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(LPrime { ring: r.clone(), dim: alg.dim(), lattice })
    }

    pub fn contains(&self, v: &LieVector) -> Result<bool> {
        if v.ring() != &self.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", v.ring(), self.ring)));
        }
        self.lattice.contains(&v.to_zcoords()?)
    }

    pub fn basis(&self) -> Result<Vec<LieVector>> {
        self.lattice.basis().iter().map(|row| LieVector::from_zcoords(&self.ring, self.dim, row)).collect()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }
}

pub enum SubalgebraDescriptor<'a> {
    LSigma(&'a Net),
    LPrimeSigma(&'a LPrime),
    LParabolic(&'a PairFunctional),
}

pub fn in_subalgebra(alg: &ChevalleyAlgebra, v: &LieVector, s: &SubalgebraDescriptor) -> Result<bool> {
    match s {
        SubalgebraDescriptor::LSigma(n) => in_l_sigma(alg, v, n),
        SubalgebraDescriptor::LPrimeSigma(l) => l.contains(v),
        SubalgebraDescriptor::LParabolic(f) => Ok(in_l_parabolic(alg, v, f)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPrimeReport {
    /// `[L(sigma), L(sigma)] ⊆ L'(sigma)` on module generators.
    pub brackets_in_lprime: bool,
    /// `{v : [v, L'(sigma)] ⊆ L(sigma)} = L(sigma)`.
    pub normalizer_is_l_sigma: bool,
}

impl LPrimeReport {
    pub fn holds(&self) -> bool {
        self.brackets_in_lprime && self.normalizer_is_l_sigma
    }
}

/// Checks both parts of the `L'(sigma)` lemma by exact module computations.
pub fn lemma_lprime_check(alg: &ChevalleyAlgebra, net: &Net) -> Result<LPrimeReport> {
    let r = net.ring();
    let lp = LPrime::compute(alg, net)?;
    let gens = l_sigma_generators(alg, net)?;
    let mut part1 = true;
    'outer: for (i, u) in gens.iter().enumerate() {
        for v in &gens[i..] {
            if !lp.contains(&alg.bracket(u, v)?)? {
                part1 = false;
                break 'outer;
            }
        }
    }

    // coordinates of [x, w] at roots whose ideal is proper, for every basis
    // element x of L and every basis element w of L'
    let shape = r.zmodule_shape()?;
    let k = shape.rank;
    let zb = r.zbasis()?;
    let inputs: Vec<LieVector> =
        (0..alg.dim()).flat_map(|i| zb.iter().map(move |b| (i, b.clone()))).map(|(i, b)| alg.basis_vector(r, i, b)).collect();
    let lp_basis = lp.basis()?;
    let proper: Vec<_> = alg.system().ids().filter(|&a| !net.ideal(a).is_unit_ideal().unwrap_or(false)).collect();
    let images: Vec<Vec<LieVector>> =
        inputs.iter().map(|x| lp_basis.iter().map(|w| alg.bracket(x, w)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut blocks: BTreeSet<(Vec<Vec<i128>>, usize)> = BTreeSet::new();
    for (wi, _) in lp_basis.iter().enumerate() {
        for &g in &proper {
            let col: Vec<Vec<i128>> = images.iter().map(|imgs| r.to_zcoords(imgs[wi].root_coeff(g))).collect::<Result<_>>()?;
            if col.iter().all(|c| c.iter().all(|&x| x == 0)) {
                continue;
            }
            blocks.insert((col, net.embedding().orbits.orbit_of(g)));
        }
    }
    let blocks: Vec<_> = blocks.into_iter().collect();
    let nb = blocks.len();
    let vectors: Vec<Vec<i128>> = (0..inputs.len())
        .map(|xi| blocks.iter().flat_map(|(col, _)| col[xi].iter().copied()).collect())
        .collect();
    let mut target = Lattice::zero(nb * k, shape.modulus);
    for (bi, (_, orbit)) in blocks.iter().enumerate() {
        for row in net.orbit_ideal(*orbit).as_lattice()?.basis() {
            let mut full = vec![0i128; nb * k];
            full[bi * k..(bi + 1) * k].copy_from_slice(&row);
            target.insert(full)?;
        }
    }
    let normalizer = if nb == 0 {
        Lattice::from_generators(inputs.len(), shape.modulus, (0..inputs.len()).map(|i| {
            let mut e = vec![0i128; inputs.len()];
            e[i] = 1;
            e
        }))?
    } else {
        Lattice::kernel(&vectors, &target)?
    };
    let ls = l_sigma_lattice(alg, net)?;
    let part2 = normalizer.contains_lattice(&ls)? && ls.contains_lattice(&normalizer)?;
    Ok(LPrimeReport { brackets_in_lprime: part1, normalizer_is_l_sigma: part2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactrings::Ideal;
    use crate::rootsys::Embedding;
    use std::sync::Arc;

    fn setup(ring: &str, ideal: i64) -> (ChevalleyAlgebra, Net) {
        let emb = Arc::new(Embedding::from_preset("D4:4A1", None).unwrap());
        let alg = ChevalleyAlgebra::new(emb.sys.clone());
        let r: Ring = ring.parse().unwrap();
        let net = Net::uniform(emb, &r, Ideal::from_i64(&r, &[ideal])).unwrap();
        (alg, net)
    }

    #[test]
    fn l_sigma_membership() {
        let (alg, net) = setup("mod:2", 0);
        let r = net.ring().clone();
        let s = alg.system().clone();
        let gamma = s.ids().find(|&g| !net.embedding().sub.contains(g)).unwrap();
        assert!(!in_l_sigma(&alg, &alg.e_vector(&r, gamma, r.one()), &net).unwrap());
        assert!(in_l_sigma(&alg, &alg.basis_vector(&r, alg.h(0), r.one()), &net).unwrap());
        let f = PairFunctional::new(&s, s.lookup(&[2, -2, 0, 0]).unwrap(), s.lookup(&[2, 2, 0, 0]).unwrap()).unwrap();
        let v = alg.e_vector(&r, s.lookup(&[-2, 0, -2, 0]).unwrap(), r.one());
        assert!(!in_subalgebra(&alg, &v, &SubalgebraDescriptor::LParabolic(&f)).unwrap());
        assert!(in_l_parabolic(&alg, &alg.e_vector(&r, s.lookup(&[0, 0, 2, 2]).unwrap(), r.one()), &f));
    }

    #[test]
    fn lprime_lemma_on_d4() {
        for (ring, ideal) in [("mod:2", 0), ("mod:4", 2), ("mod:4", 0), ("mod:3", 1), ("int", 2), ("dual:mod:2", 0)] {
            let (alg, net) = setup(ring, ideal);
            let rep = lemma_lprime_check(&alg, &net).unwrap();
            assert!(rep.holds(), "{ring} ({ideal}): {rep:?}");
        }
    }

    #[test]
    fn lprime_of_the_zero_net_is_the_subsystem_algebra() {
        let (alg, net) = setup("mod:2", 0);
        let lp = LPrime::compute(&alg, &net).unwrap();
        let r = net.ring().clone();
        let emb = net.embedding();
        for g in alg.system().ids() {
            let e = alg.e_vector(&r, g, r.one());
            assert_eq!(lp.contains(&e).unwrap(), emb.sub.contains(g));
            if emb.sub.contains(g) {
                assert!(lp.contains(&alg.coroot_vector(&r, g)).unwrap());
            }
        }
        // the toral part is only what the coroots of the subsystem span
        let torus = lp.basis().unwrap().into_iter().filter(|v| v.support().iter().all(|&i| alg.root_of(i).is_none())).count();
        assert!(torus < alg.system().rank());
    }

    #[test]
    fn l_sigma_is_closed_under_bracket_over_z4() {
        let (alg, net) = setup("mod:4", 2);
        let gens = l_sigma_generators(&alg, &net).unwrap();
        for u in &gens {
            for v in &gens {
                assert!(in_l_sigma(&alg, &alg.bracket(u, v).unwrap(), &net).unwrap());
            }
        }
    }
}
