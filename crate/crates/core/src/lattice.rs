//! Integer lattices in Z³ kept in row Hermite normal form.

use serde::{Deserialize, Serialize};

use crate::isometry::IVec3;

/// A subgroup of Z³ given by its unique row Hermite normal form: rows in echelon order,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerLattice {
    basis: Vec<IVec3>,
}

impl IntegerLattice {
    pub fn zero() -> Self {
        IntegerLattice { basis: Vec::new() }
    }

    pub fn from_generators<I: IntoIterator<Item = IVec3>>(gens: I) -> Self {
        let rows: Vec<IVec3> = gens.into_iter().filter(|v| *v != [0; 3]).collect();
        IntegerLattice {
            basis: hermite_normal_form(rows),
        }
    }

    pub fn basis(&self) -> &[IVec3] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Covolume of a full-rank lattice.
    pub fn determinant(&self) -> Option<i64> {
        (self.rank() == 3).then(|| self.basis.iter().enumerate().map(|(i, r)| r[i]).product())
    }

    pub fn contains(&self, v: IVec3) -> bool {
        let mut v = v;
        for row in &self.basis {
            let c = pivot_col(row).expect("basis rows are nonzero");
            if v[c].rem_euclid(row[c]) != 0 {
                return false;
            }
            let q = v[c] / row[c];
            for k in 0..3 {
                v[k] -= q * row[k];
            }
        }
        v == [0; 3]
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis.iter().all(|v| self.contains(*v))
    }

    /// Smallest positive k with k·e_axis in the lattice (full-rank lattices only).
    pub fn axis_minimum(&self, axis: usize) -> Option<i64> {
        let det = self.determinant()?;
        (1..=det.abs()).find(|&k| {
            let mut v = [0; 3];
            v[axis] = k;
            self.contains(v)
        })
    }

    /// Image under a linear map given as a closure on vectors.
    pub fn map<F: Fn(IVec3) -> IVec3>(&self, f: F) -> IntegerLattice {
        IntegerLattice::from_generators(self.basis.iter().map(|v| f(*v)))
    }
}

fn pivot_col(row: &IVec3) -> Option<usize> {
    row.iter().position(|v| *v != 0)
}

fn hermite_normal_form(mut rows: Vec<IVec3>) -> Vec<IVec3> {
    let mut r = 0;
    for col in 0..3 {
        if r >= rows.len() {
            break;
        }
        // Euclid on column `col` among rows r.. until a single nonzero entry remains.
        loop {
            let best = (r..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(r, best);
            let pivot = rows[r];
            let mut done = true;
            for i in (r + 1)..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(pivot[col]);
                    for k in 0..3 {
                        rows[i][k] -= q * pivot[k];
                    }
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col] == 0 {
            continue;
        }
        if rows[r][col] < 0 {
            for k in 0..3 {
                rows[r][k] = -rows[r][k];
            }
        }
        let pivot = rows[r];
        for i in 0..r {
            let q = rows[i][col].div_euclid(pivot[col]);
            for k in 0..3 {
                rows[i][k] -= q * pivot[k];
            }
        }
        r += 1;
        rows.retain(|v| *v != [0; 3]);
    }
    rows.truncate(r);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn body_centered_lattice() {
        let l = IntegerLattice::from_generators([[4, 0, 0], [0, 4, 0], [2, 2, 2]]);
        assert_eq!(l.rank(), 3);
        assert_eq!(l.determinant(), Some(32));
        assert!(l.contains([-2, 2, 2]));
        assert!(l.contains([0, 0, 4]));
        assert!(!l.contains([2, 0, 0]));
        assert_eq!(l.axis_minimum(2), Some(4));
        assert_eq!(l, IntegerLattice::from_generators([[-2, 2, 2], [0, 0, 4], [4, 0, 0]]));
    }

    #[test]
    fn rank_deficient() {
        let l = IntegerLattice::from_generators([[0, 0, 4], [0, 0, 6], [0, 0, 0]]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis(), &[[0, 0, 2]]);
        assert_eq!(l.determinant(), None);
        assert_eq!(IntegerLattice::from_generators([]).rank(), 0);
    }

    proptest! {
        #[test]
        fn hnf_is_canonical_and_spans(gens in prop::collection::vec(prop::array::uniform3(-12i64..12), 1..6)) {
            let l = IntegerLattice::from_generators(gens.clone());
            for g in &gens {
                prop_assert!(l.contains(*g));
            }
            let mut shuffled = gens.clone();
            shuffled.reverse();
            let extra: Vec<IVec3> = shuffled.iter().chain(gens.iter().take(1)).map(|v| [v[0] * 3, v[1] * 3, v[2] * 3]).collect();
            let mixed = IntegerLattice::from_generators(shuffled.into_iter().chain(extra));
            prop_assert_eq!(&l, &mixed);
            for b in l.basis() {
                prop_assert!(IntegerLattice::from_generators(gens.clone()).contains(*b));
            }
        }
    }
}
