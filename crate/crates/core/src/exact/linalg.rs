//! Dense linear algebra over Q and full-rank lattices in Q^n.

#![allow(clippy::needless_range_loop)]

use super::rational::Rational;
use super::ExactError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form and the pivot columns.
pub fn rref(a: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &QMatrix) -> usize {
    rref(a).1.len()
}

/// Some solution x of A x = b, or `None` if inconsistent.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, |r| r.len());
    let aug: QMatrix = a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    let (r, piv) = rref(&aug);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = r[i][n].clone();
    }
    Some(x)
}

pub fn identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let aug: QMatrix = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det(a: &QMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

pub fn transpose(a: &QMatrix) -> QMatrix {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, br)| acc + x * &br[j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)).collect()
}

fn common_denominator(vs: &[Vec<Rational>]) -> BigInt {
    vs.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Column-style Hermite normal form of the integer span of `gens` in Z^n:
/// basis b_0..b_{n−1} with b_i[j] = 0 for j < i, b_i[i] > 0, and for j > i
/// the entry b_i[j] reduced into [0, b_j[j]). Read as the columns of a
/// matrix, this is lower triangular.
pub fn hnf_int(gens: &[Vec<BigInt>], n: usize) -> Result<Vec<Vec<BigInt>>, ExactError> {
    let mut pool: Vec<Vec<BigInt>> = gens.iter().filter(|v| v.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        loop {
            let nz: Vec<usize> = (0..pool.len()).filter(|&k| !pool[k][i].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let &best = nz.iter().min_by_key(|&&k| pool[k][i].abs()).unwrap();
            let piv = pool[best].clone();
            for &k in &nz {
                if k == best {
                    continue;
                }
                let f = pool[k][i].div_floor(&piv[i]);
                for (x, p) in pool[k].iter_mut().zip(&piv) {
                    *x -= &f * p;
                }
            }
        }
        let Some(k) = (0..pool.len()).find(|&k| !pool[k][i].is_zero()) else {
            return Err(ExactError::NotFullRank);
        };
        let mut b = pool.swap_remove(k);
        if b[i].is_negative() {
            for x in b.iter_mut() {
                *x = -x.clone();
            }
        }
        basis.push(b);
        pool.retain(|v| v.iter().any(|c| !c.is_zero()));
    }
    for i in 0..n {
        for j in i + 1..n {
            let f = basis[i][j].div_floor(&basis[j][j]);
            if !f.is_zero() {
                let bj = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(&bj) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(basis)
}

/// A full-rank lattice in Q^n, stored by its canonical HNF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
    basis: Vec<Vec<Rational>>,
}

impl Lattice {
    pub fn from_generators(gens: &[Vec<Rational>], n: usize) -> Result<Self, ExactError> {
        let d = common_denominator(gens);
        let dq = Rational::from_integer(d.clone());
        let ints: Vec<Vec<BigInt>> = gens.iter().map(|v| v.iter().map(|c| (c * &dq).to_integer()).collect()).collect();
        let h = hnf_int(&ints, n)?;
        let basis = h.into_iter().map(|v| v.into_iter().map(|c| Rational::new(c, d.clone())).collect()).collect();
        Ok(Lattice { n, basis })
    }

    pub fn standard(n: usize) -> Self {
        Lattice { n, basis: identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// HNF basis vectors.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Integer coordinates of v in the HNF basis, if v lies in the lattice.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        let mut r: Vec<Rational> = v.to_vec();
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let c = &r[i] / &self.basis[i][i];
            if !c.is_integer() {
                return None;
            }
            if !c.is_zero() {
                for (x, b) in r.iter_mut().zip(&self.basis[i]) {
                    *x -= &c * b;
                }
            }
            out.push(c.to_integer());
        }
        Some(out)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Product of the pivots: |det| of the basis.
    pub fn covolume(&self) -> Rational {
        self.basis.iter().enumerate().fold(Rational::one(), |acc, (i, b)| acc * &b[i])
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Lattice::from_generators(&g, self.n).expect("sum of full-rank lattices")
    }

    /// Dual lattice with respect to the standard inner product.
    pub fn dual(&self) -> Lattice {
        let m = transpose(&self.basis); // columns = basis vectors
        let inv = inverse(&m).expect("full rank");
        // dual basis vectors are the rows of m^{-1}
        Lattice::from_generators(&inv, self.n).expect("full rank")
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    /// Elementary divisors d_1 | … | d_n of `self` inside `outer`
    /// (both integral relative to `outer`'s basis).
    pub fn elementary_divisors_in(&self, outer: &Lattice) -> Result<Vec<BigInt>, ExactError> {
        let mut rows = Vec::new();
        for b in &self.basis {
            let c = outer.coords(b).ok_or(ExactError::NotContained)?;
            rows.push(c);
        }
        Ok(smith_invariants(&rows))
    }
}

/// Invariant factors of a square integer matrix (all nonzero for full rank).
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    for t in 0..n.min(cols) {
        // find nonzero pivot
        let Some((pi, pj)) = (t..n).flat_map(|i| (t..cols).map(move |j| (i, j))).filter(|&(i, j)| !a[i][j].is_zero()).min_by_key(|&(i, j)| a[i][j].abs()) else {
            out.push(BigInt::zero());
            continue;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..n {
                let f = a[i][t].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for j in t..cols {
                        let d = &f * &a[t][j];
                        a[i][j] -= d;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for i in t..n {
                        let d = &f * &a[i][t];
                        a[i][j] -= d;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if !changed {
                // divisibility condition
                let bad = (t + 1..n).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qq};

    fn v(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn hnf_shape() {
        let l = Lattice::from_generators(&[v(&[2, 1]), v(&[0, 3]), v(&[4, 5])], 2).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 1]), v(&[0, 3])][..]);
        assert_eq!(l.covolume(), q(6));
    }

    #[test]
    fn hnf_rational() {
        let l = Lattice::from_generators(&[vec![qq(1, 2), q(0)], v(&[0, 1])], 2).unwrap();
        assert_eq!(l.covolume(), qq(1, 2));
        assert!(l.contains(&[qq(3, 2), q(7)]));
        assert!(!l.contains(&[qq(1, 4), q(0)]));
    }

    #[test]
    fn intersection_index() {
        let a = Lattice::from_generators(&[v(&[2, 0]), v(&[0, 1])], 2).unwrap();
        let b = Lattice::from_generators(&[v(&[1, 0]), v(&[0, 3])], 2).unwrap();
        assert_eq!(a.intersection(&b).covolume(), q(6));
        assert_eq!(a.intersection(&a), a);
    }

    #[test]
    fn smith() {
        let m = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
        assert_eq!(smith_invariants(&m), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn linear_solve() {
        let a = vec![v(&[1, 2]), v(&[3, 4])];
        assert_eq!(solve(&a, &v(&[5, 6])), Some(vec![q(-4), qq(9, 2)]));
        assert_eq!(det(&a), q(-2));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
    }
}
