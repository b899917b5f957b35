// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Thin wrapper over faer's partial-pivoting LU shared by the solvers.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::lu::partial_pivoting::{factor, solve};
use faer::perm::Perm;
use faer::{Mat, Par};
use num_complex::Complex64 as C64;

pub(crate) struct DenseLu {
    factors: Mat<C64>,
    perm: Perm<usize>,
    relative_pivot: f64,
}

impl DenseLu {
    /// Factors `a` in place.
    pub(crate) fn new(mut a: Mat<C64>) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "LU of a non-square matrix");
        let mut fwd = vec![0usize; n];
        let mut inv = vec![0usize; n];
        let mut buf = MemBuffer::new(factor::lu_in_place_scratch::<usize, C64>(
            n,
            n,
            Par::Seq,
            Default::default(),
        ));
        factor::lu_in_place(
            a.as_mut(),
            &mut fwd,
            &mut inv,
            Par::Seq,
            MemStack::new(&mut buf),
            Default::default(),
        );
        let perm = Perm::new_checked(fwd.into_boxed_slice(), inv.into_boxed_slice(), n);

        let (mut pmin, mut pmax) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let p = a[(i, i)].norm();
            pmin = pmin.min(p);
            pmax = pmax.max(p);
        }
        let relative_pivot = if pmax > 0.0 && pmin.is_finite() {
            pmin / pmax
        } else {
            0.0
        };
        Self {
            factors: a,
            perm,
            relative_pivot,
        }
    }

    /// `min |U_ii| / max |U_ii|`, zero for an exactly singular matrix.
    pub(crate) fn relative_pivot(&self) -> f64 {
        self.relative_pivot
    }

    pub(crate) fn solve_in_place(&self, rhs: &mut [C64]) {
        let n = self.factors.nrows();
        let mut col = Mat::<C64>::from_fn(n, 1, |i, _| rhs[i]);
        let mut buf = MemBuffer::new(solve::solve_in_place_scratch::<usize, C64>(n, 1, Par::Seq));
        solve::solve_in_place(
            self.factors.as_ref(),
            self.factors.as_ref(),
            self.perm.as_ref(),
            col.as_mut(),
            Par::Seq,
            MemStack::new(&mut buf),
        );
        for (i, r) in rhs.iter_mut().enumerate() {
            *r = col[(i, 0)];
        }
    }
}
