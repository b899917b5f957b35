// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Truncated composite space: CCW mode ⊗ CW mode ⊗ two-level emitter.
//!
//! Basis states `|n_a, n_b, i⟩` are ordered row-major over `(n_a, n_b, i)`
//! with the emitter index fastest and `−` (ground) before `+` (excited):
//!
//! ```text
//! index(n_a, n_b, i) = ((n_a * (n_b_max + 1)) + n_b) * 2 + i
//! ```
//!
//! Ladder operators are plainly truncated: the column at `n = cutoff` of
//! `a†` is dropped, so `[a, a†] = 1` only holds below the cutoff.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use faer::Mat;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two counter-propagating cavity modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Counter-clockwise mode `a`, the driven one.
    Ccw,
    /// Clockwise mode `b`.
    Cw,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Ccw => f.write_str("ccw"),
            Mode::Cw => f.write_str("cw"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EmitterState {
    Ground,
    Excited,
}

impl EmitterState {
    fn offset(self) -> usize {
        match self {
            EmitterState::Ground => 0,
            EmitterState::Excited => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisState {
    pub n_a: usize,
    pub n_b: usize,
    pub emitter: EmitterState,
}

impl BasisState {
    pub const fn new(n_a: usize, n_b: usize, emitter: EmitterState) -> Self {
        Self { n_a, n_b, emitter }
    }

    pub fn photons(&self, mode: Mode) -> usize {
        match mode {
            Mode::Ccw => self.n_a,
            Mode::Cw => self.n_b,
        }
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.emitter {
            EmitterState::Ground => '-',
            EmitterState::Excited => '+',
        };
        write!(f, "|{},{},{}⟩", self.n_a, self.n_b, sign)
    }
}

#[derive(Deserialize)]
struct RawSpace {
    n_a_max: usize,
    n_b_max: usize,
}

impl TryFrom<RawSpace> for FockSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        FockSpace::new(raw.n_a_max, raw.n_b_max)
    }
}

/// Truncated product space with photon cutoffs for each mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct FockSpace {
    n_a_max: usize,
    n_b_max: usize,
}

impl FockSpace {
    pub fn new(n_a_max: usize, n_b_max: usize) -> Result<Self> {
        if n_a_max < 1 || n_b_max < 1 {
            return Err(Error::InvalidTruncation { n_a_max, n_b_max });
        }
        Ok(Self { n_a_max, n_b_max })
    }

    pub fn n_a_max(&self) -> usize {
        self.n_a_max
    }

    pub fn n_b_max(&self) -> usize {
        self.n_b_max
    }

    pub fn cutoff(&self, mode: Mode) -> usize {
        match mode {
            Mode::Ccw => self.n_a_max,
            Mode::Cw => self.n_b_max,
        }
    }

    pub fn dim(&self) -> usize {
        (self.n_a_max + 1) * (self.n_b_max + 1) * 2
    }

    /// Flat index of a basis state, `None` if it lies above a cutoff.
    pub fn index(&self, state: BasisState) -> Option<usize> {
        if state.n_a > self.n_a_max || state.n_b > self.n_b_max {
            return None;
        }
        Some((state.n_a * (self.n_b_max + 1) + state.n_b) * 2 + state.emitter.offset())
    }

    /// Inverse of [`FockSpace::index`].
    ///
    /// Panics if `index >= self.dim()`.
    pub fn state(&self, index: usize) -> BasisState {
        assert!(index < self.dim(), "basis index {index} out of range");
        let emitter = if index % 2 == 0 {
            EmitterState::Ground
        } else {
            EmitterState::Excited
        };
        let photons = index / 2;
        BasisState {
            n_a: photons / (self.n_b_max + 1),
            n_b: photons % (self.n_b_max + 1),
            emitter,
        }
    }

    /// Basis states in index order.
    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(move |i| self.state(i))
    }
}

/// Dense complex matrix acting on a [`FockSpace`].
///
/// Arithmetic operators panic when the operands live on different spaces;
/// use [`OperatorMatrix::checked_mul`] where that can happen.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    space: FockSpace,
    data: Mat<C64>,
}

impl OperatorMatrix {
    pub fn zeros(space: FockSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            data: Mat::zeros(n, n),
        }
    }

    pub fn identity(space: FockSpace) -> Self {
        let n = space.dim();
        Self {
            space,
            data: Mat::identity(n, n),
        }
    }

    pub fn from_fn(space: FockSpace, f: impl FnMut(usize, usize) -> C64) -> Self {
        let n = space.dim();
        Self {
            space,
            data: Mat::from_fn(n, n, f),
        }
    }

    pub fn from_mat(space: FockSpace, data: Mat<C64>) -> Result<Self> {
        let n = space.dim();
        if data.nrows() != n || data.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: data.nrows().max(data.ncols()),
            });
        }
        Ok(Self { space, data })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[(row, col)] = value;
    }

    /// Matrix element `⟨bra| O |ket⟩`; zero when either state is truncated away.
    pub fn element(&self, bra: BasisState, ket: BasisState) -> C64 {
        match (self.space.index(bra), self.space.index(ket)) {
            (Some(r), Some(c)) => self.data[(r, c)],
            _ => C64::new(0.0, 0.0),
        }
    }

    pub fn as_mat(&self) -> &Mat<C64> {
        &self.data
    }

    pub fn into_mat(self) -> Mat<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        Self {
            space: self.space,
            data: Mat::from_fn(n, n, |i, j| self.data[(j, i)].conj()),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        let n = self.dim();
        Self {
            space: self.space,
            data: Mat::from_fn(n, n, |i, j| self.data[(i, j)] * factor),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.ensure_same_space(rhs)?;
        Ok(Self {
            space: self.space,
            data: &self.data * &rhs.data,
        })
    }

    /// `[self, rhs]`
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.checked_mul(rhs)? - &rhs.checked_mul(self)?)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.data[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, z)| z.norm()).fold(0.0, f64::max)
    }

    /// `max |O − O†|`
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Row-major iterator over all entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j, self.data[(i, j)])))
    }

    /// Entries that are exactly nonzero, row-major.
    pub fn nonzeros(&self) -> Vec<(usize, usize, C64)> {
        self.entries()
            .filter(|(_, _, z)| z.re != 0.0 || z.im != 0.0)
            .collect()
    }

    fn ensure_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.space, rhs.space, "operators on different spaces");
        OperatorMatrix {
            space: self.space,
            data: &self.data + &rhs.data,
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.space, rhs.space, "operators on different spaces");
        OperatorMatrix {
            space: self.space,
            data: &self.data - &rhs.data,
        }
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.space, rhs.space, "operators on different spaces");
        OperatorMatrix {
            space: self.space,
            data: &self.data * &rhs.data,
        }
    }
}

/// Cavity annihilation operator for `mode`.
pub fn annihilator(space: FockSpace, mode: Mode) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(space);
    for (col, ket) in space.states().enumerate() {
        let n = ket.photons(mode);
        if n == 0 {
            continue;
        }
        let bra = match mode {
            Mode::Ccw => BasisState { n_a: n - 1, ..ket },
            Mode::Cw => BasisState { n_b: n - 1, ..ket },
        };
        let row = space.index(bra).expect("lowered state is inside the space");
        op.set(row, col, C64::new((n as f64).sqrt(), 0.0));
    }
    op
}

/// `a†a` (or `b†b`), built directly on the diagonal.
pub fn number(space: FockSpace, mode: Mode) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(space);
    for (i, s) in space.states().enumerate() {
        op.set(i, i, C64::new(s.photons(mode) as f64, 0.0));
    }
    op
}

/// Emitter lowering operator `σ₋ = |−⟩⟨+|`.
pub fn emitter_lowering(space: FockSpace) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(space);
    for (col, ket) in space.states().enumerate() {
        if ket.emitter == EmitterState::Excited {
            let row = space
                .index(BasisState {
                    emitter: EmitterState::Ground,
                    ..ket
                })
                .expect("ground partner exists");
            op.set(row, col, C64::new(1.0, 0.0));
        }
    }
    op
}

/// Excitation projector `|+⟩⟨+|` on the emitter factor.
pub fn emitter_excitation_projector(space: FockSpace) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(space);
    for (i, s) in space.states().enumerate() {
        if s.emitter == EmitterState::Excited {
            op.set(i, i, C64::new(1.0, 0.0));
        }
    }
    op
}

/// Pauli `σ_z = |+⟩⟨+| − |−⟩⟨−|` on the emitter factor.
pub fn pauli_z(space: FockSpace) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(space);
    for (i, s) in space.states().enumerate() {
        let v = match s.emitter {
            EmitterState::Excited => 1.0,
            EmitterState::Ground => -1.0,
        };
        op.set(i, i, C64::new(v, 0.0));
    }
    op
}
