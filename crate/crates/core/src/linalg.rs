//! Dense exact linear algebra: row reduction, rank, affine solution spaces,
//! and pivoted Hermitian elimination with checkable certificates.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::num::{Cq, Field, Scalar, Q};

pub type Matrix<C> = Vec<Vec<C>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<C: Field>(m: &mut Matrix<C>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
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
        let inv = C::one() / m[r][c].clone();
        for x in &mut m[r][c..cols] {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x = x.clone() - p.clone() * f.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<C: Field>(m: &Matrix<C>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Affine solution set `{ particular + span(kernel) }` of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<C> {
    pub particular: Vec<C>,
    pub kernel: Vec<Vec<C>>,
}

/// Solve `A x = b`; `None` when inconsistent.
pub fn solve<C: Field>(a: &Matrix<C>, b: &[C], ncols: usize) -> Option<AffineSolution<C>> {
    let mut aug: Matrix<C> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![C::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![C::zero(); ncols];
            v[f] = C::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

pub fn mat_vec<C: Field>(m: &Matrix<C>, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

/// `v* M v` for a Hermitian matrix.
pub fn quadratic_form<C: Scalar>(m: &Matrix<C>, v: &[C]) -> C {
    let mv = mat_vec(m, v);
    v.iter()
        .zip(&mv)
        .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
}

/// One elimination step: pivot position and the pivot row at that stage.
#[derive(Clone, Debug, PartialEq)]
pub struct Pivot {
    pub index: usize,
    pub value: Q,
    /// Entries `M_{index, j}` of the Schur complement at this stage, zero on
    /// indices already eliminated.
    pub row: Vec<Cq>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Elimination {
    /// `M = sum_k value_k * l_k l_k^*` with `l_k = row_k^* / value_k`.
    Psd { pivots: Vec<Pivot> },
    /// `v* M v < 0`.
    Negative { pivots: Vec<Pivot>, witness: Vec<Cq> },
}

/// Symmetric Gaussian elimination with largest-diagonal pivoting.
pub fn hermitian_elimination(m: &Matrix<Cq>) -> Elimination {
    let n = m.len();
    let mut a = m.clone();
    let mut active: Vec<bool> = vec![true; n];
    let mut pivots: Vec<Pivot> = Vec::new();
    loop {
        let best = (0..n)
            .filter(|&i| active[i])
            .max_by(|&i, &j| a[i][i].re.cmp(&a[j][j].re).then(j.cmp(&i)));
        let Some(p) = best else {
            return Elimination::Psd { pivots };
        };
        let d = a[p][p].re.clone();
        if d.is_negative() {
            let mut u = vec![Cq::zero(); n];
            u[p] = Cq::from_rational(Q::from_integer(1.into()));
            let witness = back_substitute(&pivots, u);
            return Elimination::Negative { pivots, witness };
        }
        if d.is_zero() {
            // no active diagonal entry is positive; any nonzero entry is fatal
            if let Some(i) = (0..n).find(|&i| active[i] && a[i][i].re.is_negative()) {
                let mut u = vec![Cq::zero(); n];
                u[i] = Cq::from_rational(Q::from_integer(1.into()));
                let witness = back_substitute(&pivots, u);
                return Elimination::Negative { pivots, witness };
            }
            for i in (0..n).filter(|&i| active[i]) {
                for j in (0..n).filter(|&j| active[j] && j != i) {
                    if !a[i][j].is_zero() {
                        let mut u = vec![Cq::zero(); n];
                        u[i] = -a[i][j].clone();
                        u[j] = Cq::from_rational(Q::from_integer(1.into()));
                        let witness = back_substitute(&pivots, u);
                        return Elimination::Negative { pivots, witness };
                    }
                }
            }
            return Elimination::Psd { pivots };
        }
        let row: Vec<Cq> = (0..n)
            .map(|j| if active[j] { a[p][j].clone() } else { Cq::zero() })
            .collect();
        active[p] = false;
        let dc = Cq::from_rational(d.clone());
        for i in (0..n).filter(|&i| active[i]) {
            if row[i].is_zero() {
                continue;
            }
            let f = row[i].conj() / dc.clone();
            for j in (0..n).filter(|&j| active[j]) {
                let v = f.clone() * row[j].clone();
                a[i][j] = a[i][j].clone() - v;
            }
        }
        pivots.push(Pivot {
            index: p,
            value: d,
            row,
        });
    }
}

/// Extend a witness on the remaining indices back through eliminated pivots.
fn back_substitute(pivots: &[Pivot], mut v: Vec<Cq>) -> Vec<Cq> {
    for pv in pivots.iter().rev() {
        let mut s = Cq::zero();
        for (j, mij) in pv.row.iter().enumerate() {
            if j != pv.index {
                s += mij.clone() * v[j].clone();
            }
        }
        v[pv.index] = -s / Cq::from_rational(pv.value.clone());
    }
    v
}
