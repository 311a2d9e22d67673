//! Weight windows and truncated sl₂ weight modules.
//!
//! Modules are right modules. A vector is a row; for the weight space with
//! index `n` (weight `offset + 2n`) the action of `e` is the matrix
//! `E(n)` of shape `dim(n) × dim(n−1)` and the action of `f` is `F(n)` of
//! shape `dim(n) × dim(n+1)`, so `v·e = v E(n)`. Since `v·(ef) = (v·e)·f`,
//! the relation `[e, f] = h` reads
//!
//! ```text
//! E(n) F(n−1) − F(n) E(n+1) = w · I,   w = offset + 2n,
//! ```
//!
//! and the Casimir `ef + fe + h²/2` is `E(n)F(n−1) + F(n)E(n+1) + w²/2`.
//! Maps leaving the window are recorded as zero-width matrices; only interior
//! indices `lo+1 ..= hi−1` carry certified data.

use std::fmt;

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::scalar::{format_rational, q, rem_euclid, to_i64, Q};

pub const DEFAULT_HALF_WIDTH: i64 = 24;
pub const MIN_HALF_WIDTH: i64 = 8;

/// Weights `offset + 2n` for `lo ≤ n ≤ hi`, with `offset` in `[0, 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightWindow {
    offset: Q,
    lo: i64,
    hi: i64,
}

impl WeightWindow {
    /// Window of indices `−half ..= half` around the coset of `coset_rep`.
    pub fn centered(coset_rep: &Q, half: i64) -> Self {
        assert!(half >= 1, "window half-width must be positive");
        WeightWindow {
            offset: rem_euclid(coset_rep, 2),
            lo: -half,
            hi: half,
        }
    }

    /// Window for the coset `−2α−λ+2ℤ`.
    pub fn for_parameters(lambda: i64, alpha: &Q, half: i64) -> Self {
        Self::centered(&(-q(2) * alpha - q(lambda)), half)
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn interior(&self) -> impl Iterator<Item = i64> {
        (self.lo + 1)..=(self.hi - 1)
    }

    pub fn contains(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn in_interior(&self, n: i64) -> bool {
        n > self.lo && n < self.hi
    }

    pub fn weight(&self, n: i64) -> Q {
        &self.offset + q(2 * n)
    }

    /// Index of weight `w`, if `w` is in the coset (regardless of bounds).
    pub fn index_of(&self, w: &Q) -> Option<i64> {
        let k = (w - &self.offset) / q(2);
        to_i64(&k)
    }

    pub fn same_coset(&self, w: &Q) -> bool {
        self.index_of(w).is_some()
    }

    /// Same coset, indices `lo ..= hi`.
    pub fn with_bounds(&self, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        WeightWindow {
            offset: self.offset.clone(),
            lo,
            hi,
        }
    }

    /// Same coset, indices `lo*factor ..= hi*factor`.
    pub fn scaled(&self, factor: i64) -> Self {
        WeightWindow {
            offset: self.offset.clone(),
            lo: self.lo * factor,
            hi: self.hi * factor,
        }
    }

    /// Translation between window indices and the parameter index `m` with
    /// weight `−2α−λ+2m`: returns `n − m`.
    pub fn parameter_shift(&self, lambda: i64, alpha: &Q) -> Option<i64> {
        let base = -q(2) * alpha - q(lambda);
        self.index_of(&base)
    }
}

impl fmt::Display for WeightWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "weights {}+2n, n in [{}, {}]",
            format_rational(&self.offset),
            self.lo,
            self.hi
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    window: WeightWindow,
    dims: Vec<usize>,
    e: Vec<Matrix>,
    f: Vec<Matrix>,
    pub lambda: Option<i64>,
    pub alpha: Option<Q>,
}

impl WeightModule {
    /// Module with the given dims and all actions zero.
    pub fn zero_actions(window: WeightWindow, dims: Vec<usize>) -> Self {
        assert_eq!(dims.len(), window.len(), "one dimension per index");
        let lo = window.lo();
        let dim_at = |n: i64| -> usize {
            if window.contains(n) {
                dims[(n - lo) as usize]
            } else {
                0
            }
        };
        let e = window
            .indices()
            .map(|n| Matrix::zeros(dim_at(n), dim_at(n - 1)))
            .collect();
        let f = window
            .indices()
            .map(|n| Matrix::zeros(dim_at(n), dim_at(n + 1)))
            .collect();
        WeightModule {
            window,
            dims,
            e,
            f,
            lambda: None,
            alpha: None,
        }
    }

    pub fn zero(window: WeightWindow) -> Self {
        let dims = vec![0; window.len()];
        Self::zero_actions(window, dims)
    }

    pub fn with_meta(mut self, lambda: Option<i64>, alpha: Option<Q>) -> Self {
        self.lambda = lambda;
        self.alpha = alpha;
        self
    }

    pub fn window(&self) -> &WeightWindow {
        &self.window
    }

    fn slot(&self, n: i64) -> Option<usize> {
        self.window
            .contains(n)
            .then(|| (n - self.window.lo()) as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn e_map(&self, n: i64) -> Matrix {
        match self.slot(n) {
            Some(i) => self.e[i].clone(),
            None => Matrix::zeros(0, self.dim(n - 1)),
        }
    }

    pub fn f_map(&self, n: i64) -> Matrix {
        match self.slot(n) {
            Some(i) => self.f[i].clone(),
            None => Matrix::zeros(0, self.dim(n + 1)),
        }
    }

    pub fn set_e(&mut self, n: i64, m: Matrix) {
        let i = self.slot(n).expect("index in window");
        assert_eq!(
            (m.rows(), m.cols()),
            (self.dim(n), self.dim(n - 1)),
            "e shape at {n}"
        );
        self.e[i] = m;
    }

    pub fn set_f(&mut self, n: i64, m: Matrix) {
        let i = self.slot(n).expect("index in window");
        assert_eq!(
            (m.rows(), m.cols()),
            (self.dim(n), self.dim(n + 1)),
            "f shape at {n}"
        );
        self.f[i] = m;
    }

    pub fn weight(&self, n: i64) -> Q {
        self.window.weight(n)
    }

    /// `E(n)F(n−1)` and `F(n)E(n+1)` at an interior index.
    fn products(&self, n: i64) -> (Matrix, Matrix) {
        let ef = self.e_map(n).mul(&self.f_map(n - 1));
        let fe = self.f_map(n).mul(&self.e_map(n + 1));
        (ef, fe)
    }

    /// Whether `[e, f] = h` holds on every interior weight space.
    pub fn bracket_holds(&self) -> bool {
        self.window.interior().all(|n| {
            let (ef, fe) = self.products(n);
            ef.sub(&fe) == Matrix::scalar(self.dim(n), &self.weight(n))
        })
    }

    /// Casimir matrix on the interior weight space `n`.
    pub fn casimir_at(&self, n: i64) -> Matrix {
        let (ef, fe) = self.products(n);
        let w = self.weight(n);
        let half_w2 = &w * &w / q(2);
        ef.add(&fe).add(&Matrix::scalar(self.dim(n), &half_w2))
    }

    /// Lowest and highest interior indices with nonzero dimension.
    pub fn interior_support(&self) -> Option<(i64, i64)> {
        let mut it = self.window.interior().filter(|&n| self.dim(n) > 0);
        let first = it.next()?;
        let last = it.last().unwrap_or(first);
        Some((first, last))
    }

    /// Rebuilds the module on another window of the same coset, keeping the
    /// overlapping data and padding with zero spaces.
    pub fn restricted_to(&self, window: &WeightWindow) -> WeightModule {
        assert_eq!(window.offset(), self.window.offset(), "coset mismatch");
        let dims = window.indices().map(|n| self.dim(n)).collect();
        let mut out = WeightModule::zero_actions(window.clone(), dims);
        for n in window.indices() {
            if self.dim(n) == 0 {
                continue;
            }
            if window.contains(n - 1) && self.window.contains(n) {
                out.set_e(n, self.e_map(n));
            }
            if window.contains(n + 1) && self.window.contains(n) {
                out.set_f(n, self.f_map(n));
            }
        }
        out.lambda = self.lambda;
        out.alpha = self.alpha.clone();
        out
    }

    /// True when every stored matrix entry is zero (used for sanity checks).
    pub fn actions_vanish(&self) -> bool {
        self.e.iter().chain(&self.f).all(Matrix::is_zero)
    }

    /// `(index, dim)` for interior indices with nonzero dimension.
    pub fn interior_dims(&self) -> Vec<(i64, usize)> {
        self.window
            .interior()
            .map(|n| (n, self.dim(n)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    pub fn total_interior_dim(&self) -> usize {
        self.window.interior().map(|n| self.dim(n)).sum()
    }
}

impl fmt::Display for WeightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.window)?;
        for n in self.window.interior() {
            let d = self.dim(n);
            if d == 0 {
                continue;
            }
            let e = self.e_map(n);
            let fm = self.f_map(n);
            writeln!(
                f,
                "  n={n:>4} weight={:>6} dim={d} rank(e)={} rank(f)={}",
                format_rational(&self.weight(n)),
                e.rank(),
                fm.rank()
            )?;
        }
        Ok(())
    }
}

/// `½λ(λ−2)`.
pub fn central_character(lambda: i64) -> Q {
    q(lambda) * q(lambda - 2) / q(2)
}

/// Checks that `x` is a scalar matrix and returns the scalar.
pub fn as_scalar(m: &Matrix) -> Option<Q> {
    if m.rows() != m.cols() {
        return None;
    }
    if m.rows() == 0 {
        return Some(Q::zero());
    }
    let s = m[(0, 0)].clone();
    (*m == Matrix::scalar(m.rows(), &s)).then_some(s)
}
