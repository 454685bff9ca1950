//! Subgroups of `Z^n` and of `(Z/m)^n`, kept in echelon form.
//!
//! With a modulus `m` the echelon form is a Howell form: for every pivot row
//! `r` with pivot `g | m`, the multiple `(m/g) r` is pushed back through the
//! insertion, so the rows with pivot column `>= j` span exactly the elements
//! whose first `j` coordinates vanish. Kernels rely on that property.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    modulus: Option<i128>,
    /// `pivots[j]` is the row whose first nonzero entry sits in column `j`.
    pivots: Vec<Option<Vec<i128>>>,
}

fn ovf<T>(x: Option<T>) -> Result<T> {
    x.ok_or(Error::Overflow("lattice echelon form"))
}

impl Lattice {
    pub fn zero(dim: usize, modulus: Option<i128>) -> Lattice {
        assert!(modulus.is_none_or(|m| m >= 2), "modulus must be >= 2");
        Lattice { dim, modulus, pivots: vec![None; dim] }
    }

    pub fn from_generators(dim: usize, modulus: Option<i128>, gens: impl IntoIterator<Item = Vec<i128>>) -> Result<Lattice> {
        let mut l = Lattice::zero(dim, modulus);
        for g in gens {
            l.insert(g)?;
        }
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Option<i128> {
        self.modulus
    }

    /// Echelon rows, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<i128>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// True when the lattice is everything (`Z^n`, or `(Z/m)^n`).
    pub fn is_full(&self) -> bool {
        self.pivots.iter().all(|p| matches!(p, Some(r) if r.iter().find(|&&x| x != 0) == Some(&1)))
    }

    fn normalize(&self, v: &mut [i128]) {
        if let Some(m) = self.modulus {
            for x in v.iter_mut() {
                *x = x.rem_euclid(m);
            }
        }
    }

    fn axpy(&self, v: &mut [i128], k: i128, w: &[i128]) -> Result<()> {
        // v <- v - k w
        for (a, b) in v.iter_mut().zip(w) {
            let t = ovf(k.checked_mul(*b))?;
            *a = ovf(a.checked_sub(t))?;
        }
        self.normalize(v);
        Ok(())
    }

    /// Adds a generator; returns whether the lattice grew.
    pub fn insert(&mut self, v: Vec<i128>) -> Result<bool> {
        assert_eq!(v.len(), self.dim, "vector length must match lattice dimension");
        let mut grew = false;
        let mut work = vec![v];
        while let Some(mut v) = work.pop() {
            self.normalize(&mut v);
            let mut j = 0;
            while j < self.dim {
                if v[j] == 0 {
                    j += 1;
                    continue;
                }
                match self.pivots[j].take() {
                    None => {
                        let mut row = v;
                        self.make_pivot_canonical(&mut row, j)?;
                        if let Some(m) = self.modulus {
                            let extra = m / row[j];
                            if extra != 1 {
                                work.push(row.iter().map(|x| x * extra).collect());
                            }
                        }
                        self.pivots[j] = Some(row);
                        grew = true;
                        break;
                    }
                    Some(p) => {
                        let (a, b) = (p[j], v[j]);
                        if b % a == 0 {
                            let q = b / a;
                            self.axpy(&mut v, q, &p)?;
                            self.pivots[j] = Some(p);
                        } else {
                            // unimodular recombination of p and v at column j
                            let e = a.extended_gcd(&b);
                            let g = e.gcd;
                            let mut np = vec![0i128; self.dim];
                            let mut nv = vec![0i128; self.dim];
                            for k in 0..self.dim {
                                np[k] = ovf(ovf(e.x.checked_mul(p[k]))?.checked_add(ovf(e.y.checked_mul(v[k]))?))?;
                                nv[k] = ovf(ovf((b / g).checked_mul(p[k]))?.checked_sub(ovf((a / g).checked_mul(v[k]))?))?;
                            }
                            self.normalize(&mut np);
                            self.normalize(&mut nv);
                            self.make_pivot_canonical(&mut np, j)?;
                            if let Some(m) = self.modulus {
                                let extra = m / np[j];
                                if extra != 1 {
                                    work.push(np.iter().map(|x| x * extra).collect());
                                }
                            }
                            self.pivots[j] = Some(np);
                            grew = true;
                            v = nv;
                        }
                        j += 1;
                    }
                }
            }
        }
        Ok(grew)
    }

    /// Scales a fresh pivot row so the pivot is positive and, with a
    /// modulus, a divisor of the modulus.
    fn make_pivot_canonical(&self, row: &mut [i128], j: usize) -> Result<()> {
        match self.modulus {
            None => {
                if row[j] < 0 {
                    for x in row.iter_mut() {
                        *x = ovf(x.checked_neg())?;
                    }
                }
            }
            Some(m) => {
                let e = row[j].extended_gcd(&m);
                // unit u with u*row[j] = gcd(row[j], m) mod m
                let mut u = e.x.rem_euclid(m);
                let g = e.gcd;
                // make u a unit mod m by adding multiples of m/g
                let step = m / g;
                while u.gcd(&m) != 1 {
                    u = (u + step) % m;
                }
                for x in row.iter_mut() {
                    *x = ((*x % m) * u).rem_euclid(m);
                }
                debug_assert_eq!(row[j], g);
            }
        }
        Ok(())
    }

    /// Residue of `v` after reduction by the echelon rows; zero exactly when
    /// `v` belongs to the lattice.
    pub fn reduce(&self, v: &[i128]) -> Result<Vec<i128>> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        self.normalize(&mut v);
        for j in 0..self.dim {
            if v[j] == 0 {
                continue;
            }
            match &self.pivots[j] {
                Some(p) if v[j] % p[j] == 0 => {
                    let q = v[j] / p[j];
                    self.axpy(&mut v, q, p)?;
                }
                _ => return Ok(v),
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for r in other.basis() {
            if !self.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{c in Z^k : sum c_i vectors[i] in target}`, as a lattice in `Z^k`
    /// (with the target's modulus, which the kernel always contains).
    pub fn kernel(vectors: &[Vec<i128>], target: &Lattice) -> Result<Lattice> {
        let n = target.dim;
        let k = vectors.len();
        let mut big = Lattice::zero(n + k, target.modulus);
        for (i, a) in vectors.iter().enumerate() {
            assert_eq!(a.len(), n);
            let mut row = a.clone();
            row.extend((0..k).map(|t| i128::from(t == i)));
            big.insert(row)?;
        }
        for r in target.basis() {
            let mut row = r;
            row.extend(std::iter::repeat_n(0, k));
            big.insert(row)?;
        }
        let mut ker = Lattice::zero(k, target.modulus);
        for r in big.pivots[n..].iter().flatten() {
            ker.insert(r[n..].to_vec())?;
        }
        Ok(ker)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_members(m: i128, dim: usize, gens: &[Vec<i128>]) -> std::collections::BTreeSet<Vec<i128>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0; dim]);
        loop {
            let mut next = set.clone();
            for v in &set {
                for g in gens {
                    next.insert(v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(m)).collect());
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    fn all_vectors(m: i128, dim: usize) -> Vec<Vec<i128>> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn integer_membership() {
        let l = Lattice::from_generators(1, None, [vec![6], vec![10]]).unwrap();
        assert!(l.contains(&[2]).unwrap());
        assert!(!l.contains(&[1]).unwrap());
        let l = Lattice::from_generators(2, None, [vec![2, 1], vec![0, 3]]).unwrap();
        assert!(l.contains(&[4, 5]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        assert!(!l.contains(&[0, 1]).unwrap());
    }

    proptest! {
        #[test]
        fn modular_membership_matches_brute_force(
            m in prop::sample::select(vec![2i128, 4, 6, 8, 9]),
            gens in prop::collection::vec(prop::collection::vec(0i128..12, 3), 0..4),
        ) {
            let l = Lattice::from_generators(3, Some(m), gens.clone()).unwrap();
            let members = brute_members(m, 3, &gens);
            for v in all_vectors(m, 3) {
                prop_assert_eq!(l.contains(&v).unwrap(), members.contains(&v));
            }
        }

        #[test]
        fn modular_kernel_matches_brute_force(
            m in prop::sample::select(vec![4i128, 6, 8]),
            vecs in prop::collection::vec(prop::collection::vec(0i128..8, 2), 1..4),
            tgt in prop::collection::vec(prop::collection::vec(0i128..8, 2), 0..2),
        ) {
            let target = Lattice::from_generators(2, Some(m), tgt).unwrap();
            let ker = Lattice::kernel(&vecs, &target).unwrap();
            for c in all_vectors(m, vecs.len()) {
                let mut s = vec![0i128; 2];
                for (ci, v) in c.iter().zip(&vecs) {
                    for t in 0..2 { s[t] += ci * v[t]; }
                }
                prop_assert_eq!(ker.contains(&c).unwrap(), target.contains(&s).unwrap());
            }
        }

        #[test]
        fn integer_kernel_elements_map_into_target(
            vecs in prop::collection::vec(prop::collection::vec(-5i128..6, 2), 1..4),
            tgt in prop::collection::vec(prop::collection::vec(-5i128..6, 2), 0..2),
        ) {
            let target = Lattice::from_generators(2, None, tgt).unwrap();
            let ker = Lattice::kernel(&vecs, &target).unwrap();
            for c in ker.basis() {
                let mut s = vec![0i128; 2];
                for (ci, v) in c.iter().zip(&vecs) {
                    for t in 0..2 { s[t] += ci * v[t]; }
                }
                prop_assert!(target.contains(&s).unwrap());
            }
            // and every small integer combination landing in the target is in the kernel
            for c in all_vectors(5, vecs.len()) {
                let c: Vec<i128> = c.iter().map(|x| x - 2).collect();
                let mut s = vec![0i128; 2];
                for (ci, v) in c.iter().zip(&vecs) {
                    for t in 0..2 { s[t] += ci * v[t]; }
                }
                if target.contains(&s).unwrap() {
                    prop_assert!(ker.contains(&c).unwrap());
                }
            }
        }
    }
}
