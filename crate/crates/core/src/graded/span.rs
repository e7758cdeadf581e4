use alloc::vec::Vec;

use num_traits::Zero;

use crate::field::{CoefficientField, Scalar};

/// Incremental row echelon form over a coefficient field.
pub(crate) struct RowSpace {
    field: CoefficientField,
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowSpace {
    pub fn new(field: CoefficientField, dim: usize) -> Self {
        RowSpace {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Add a vector; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(&v[pivot]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Columns carrying no pivot; their unit vectors complete the span.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        let mut has = alloc::vec![false; self.dim];
        for (p, _) in &self.rows {
            has[*p] = true;
        }
        (0..self.dim).filter(|&c| !has[c]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_and_complement() {
        let q = CoefficientField::Rationals;
        let s = |x: i64| q.from_int(x);
        let mut rs = RowSpace::new(q, 3);
        assert!(rs.insert(vec![s(1), s(2), s(0)]));
        assert!(!rs.insert(vec![s(2), s(4), s(0)]));
        assert!(rs.insert(vec![s(0), s(1), s(0)]));
        assert_eq!(rs.rank(), 2);
        assert_eq!(rs.non_pivot_columns(), vec![2]);
        assert!(!rs.is_full());
    }
}
