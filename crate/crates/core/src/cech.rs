//! The two-term Cech complex `C⁰ = Γ(C_x) ⊕ Γ(C_z) → C¹ = Γ(C^×)`,
//! `(s₁, s₂) ↦ s₁|C^× − s₂|C^×`, graded by `h`-weight.
//!
//! Every chart basis vector is an `h`-eigenvector, and a chart contributes at
//! most one basis vector per weight, so `C⁰` has dimension at most 2 and `C¹`
//! at most 1 at each weight. Cutting the complex to a weight window is exact.

use rayon::prelude::*;
use thiserror::Error;

use crate::charts::{
    chart_presentation, restriction_map, sl2_generators, ChartId, ExtensionKind, Restriction,
};
use crate::linalg::{kernel_coordinates, Cokernel, Matrix};
use crate::scalar::{format_rational, q, Q};
use crate::weights::{WeightModule, WeightWindow};
use crate::weylops::{act_on_basis, BasisAction, CyclicPresentation, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error("window offset {window} does not match the weight coset {expected} + 2Z of {kind}")]
    CosetMismatch {
        kind: String,
        window: String,
        expected: String,
    },
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// One weight space of the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    /// `(chart, basis index)` for each basis vector of `C⁰`.
    pub c0: Vec<(ChartId, i64)>,
    /// Basis indices of `C¹` (in the `x`-coordinate on `C^×`).
    pub c1: Vec<i64>,
    /// `dim C⁰ × dim C¹`.
    pub d: Matrix,
    pub e0: Matrix,
    pub f0: Matrix,
    pub h0: Matrix,
    pub e1: Matrix,
    pub f1: Matrix,
    pub h1: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechComplex {
    pub kind: ExtensionKind,
    pub lambda: i64,
    window: WeightWindow,
    levels: Vec<Level>,
}

struct ChartData {
    chart: ChartId,
    pres: CyclicPresentation,
    e: BasisAction,
    f: BasisAction,
    h: BasisAction,
}

impl ChartData {
    fn new(chart: ChartId, pres: CyclicPresentation, lambda: i64) -> Result<Self, WeylError> {
        let (e, h, f) = sl2_generators(chart, lambda);
        Ok(ChartData {
            chart,
            e: act_on_basis(&pres, &e)?,
            f: act_on_basis(&pres, &f)?,
            h: act_on_basis(&pres, &h)?,
            pres,
        })
    }

    /// Basis index of weight `w`, if any.
    fn index_at_weight(&self, w: &Q, lambda: i64) -> Option<i64> {
        // x-type charts: h = −2x∂x − λ; z chart: h = 2z∂z + λ
        let eig = match self.chart {
            ChartId::Cz => (w - q(lambda)) / q(2),
            _ => -(w + q(lambda)) / q(2),
        };
        self.pres.index_of_eigenvalue(&eig)
    }
}

fn level_labels<T: PartialEq + Copy>(labels: &[T], t: T) -> Option<usize> {
    labels.iter().position(|&l| l == t)
}

impl CechComplex {
    pub fn window(&self) -> &WeightWindow {
        &self.window
    }

    pub fn level(&self, n: i64) -> Option<&Level> {
        self.window
            .contains(n)
            .then(|| &self.levels[(n - self.window.lo()) as usize])
    }

    pub fn levels(&self) -> impl Iterator<Item = (i64, &Level)> {
        self.window.indices().zip(self.levels.iter())
    }

    /// Mutable access to a differential; only meant for negative controls.
    pub fn differential_mut(&mut self, n: i64) -> Option<&mut Matrix> {
        let lo = self.window.lo();
        if !self.window.contains(n) {
            return None;
        }
        Some(&mut self.levels[(n - lo) as usize].d)
    }

    fn c0_dim(&self, n: i64) -> usize {
        self.level(n).map_or(0, |l| l.c0.len())
    }

    fn c1_dim(&self, n: i64) -> usize {
        self.level(n).map_or(0, |l| l.c1.len())
    }

    fn d(&self, n: i64) -> Matrix {
        match self.level(n) {
            Some(l) => l.d.clone(),
            None => Matrix::zeros(0, 0),
        }
    }
}

pub fn build_complex(
    kind: &ExtensionKind,
    lambda: i64,
    window: &WeightWindow,
) -> Result<CechComplex, CechError> {
    let expected = WeightWindow::for_parameters(lambda, &kind.coset_alpha(), 1);
    if expected.offset() != window.offset() {
        return Err(CechError::CosetMismatch {
            kind: kind.to_string(),
            window: format_rational(window.offset()),
            expected: format_rational(expected.offset()),
        });
    }

    let mut charts = Vec::new();
    for chart in [ChartId::Cx, ChartId::Cz] {
        if let Some(p) = chart_presentation(kind, chart) {
            charts.push(ChartData::new(chart, p, lambda)?);
        }
    }
    let cstar = match chart_presentation(kind, ChartId::Cstar) {
        Some(p) => Some(ChartData::new(ChartId::Cstar, p, lambda)?),
        None => None,
    };
    let restrictions: Vec<Restriction> = charts
        .iter()
        .map(|c| restriction_map(kind, c.chart, lambda))
        .collect();

    let labels_at = |n: i64| -> (Vec<(ChartId, i64)>, Vec<i64>) {
        let w = window.weight(n);
        let c0 = charts
            .iter()
            .filter_map(|c| c.index_at_weight(&w, lambda).map(|k| (c.chart, k)))
            .collect();
        let c1 = cstar
            .iter()
            .filter_map(|c| c.index_at_weight(&w, lambda))
            .collect();
        (c0, c1)
    };

    let indices: Vec<i64> = window.indices().collect();
    let levels = indices
        .par_iter()
        .map(|&n| -> Result<Level, CechError> {
            let (c0, c1) = labels_at(n);
            let (c0_dn, c1_dn) = if window.contains(n - 1) {
                labels_at(n - 1)
            } else {
                (vec![], vec![])
            };
            let (c0_up, c1_up) = if window.contains(n + 1) {
                labels_at(n + 1)
            } else {
                (vec![], vec![])
            };

            let mut d = Matrix::zeros(c0.len(), c1.len());
            for (i, &(chart, k)) in c0.iter().enumerate() {
                let pos = charts.iter().position(|c| c.chart == chart).expect("chart");
                let Restriction::Map(r) = &restrictions[pos] else {
                    continue;
                };
                let Some((t, coeff)) = r.image(k)? else {
                    continue;
                };
                let j = level_labels(&c1, t).ok_or_else(|| {
                    CechError::Internal(format!(
                        "restriction of {chart} basis vector {k} lands on index {t}, \
                         which has a different weight"
                    ))
                })?;
                let sign = if chart == ChartId::Cz { -q(1) } else { q(1) };
                d[(i, j)] = coeff * sign;
            }

            let act0 = |pick: fn(&ChartData) -> &BasisAction,
                        target: &[(ChartId, i64)]|
             -> Result<Matrix, CechError> {
                let mut m = Matrix::zeros(c0.len(), target.len());
                for (i, &(chart, k)) in c0.iter().enumerate() {
                    let cd = charts.iter().find(|c| c.chart == chart).expect("chart");
                    for (t, coeff) in pick(cd).apply(k)? {
                        match level_labels(target, (chart, t)) {
                            Some(j) => m[(i, j)] += coeff,
                            None if target.is_empty() => {}
                            None => {
                                return Err(CechError::Internal(format!(
                                    "action moved {chart} vector {k} off the weight lattice"
                                )))
                            }
                        }
                    }
                }
                Ok(m)
            };
            let act1 = |pick: fn(&ChartData) -> &BasisAction,
                        target: &[i64]|
             -> Result<Matrix, CechError> {
                let mut m = Matrix::zeros(c1.len(), target.len());
                let Some(cd) = cstar.as_ref() else {
                    return Ok(m);
                };
                for (i, &k) in c1.iter().enumerate() {
                    for (t, coeff) in pick(cd).apply(k)? {
                        match level_labels(target, t) {
                            Some(j) => m[(i, j)] += coeff,
                            None if target.is_empty() => {}
                            None => {
                                return Err(CechError::Internal(format!(
                                    "action moved C^× vector {k} off the weight lattice"
                                )))
                            }
                        }
                    }
                }
                Ok(m)
            };

            let level = Level {
                e0: act0(|c| &c.e, &c0_dn)?,
                f0: act0(|c| &c.f, &c0_up)?,
                h0: act0(|c| &c.h, &c0)?,
                e1: act1(|c| &c.e, &c1_dn)?,
                f1: act1(|c| &c.f, &c1_up)?,
                h1: act1(|c| &c.h, &c1)?,
                c0,
                c1,
                d,
            };
            Ok(level)
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(CechComplex {
        kind: kind.clone(),
        lambda,
        window: window.clone(),
        levels,
    })
}

/// Checks that `d` intertwines `e`, `f` and `h`, and that `h` acts on every
/// weight space by its weight.
pub fn verify_chain_map(c: &CechComplex) -> bool {
    let win = &c.window;
    win.indices().all(|n| {
        let l = c.level(n).expect("in window");
        let w = win.weight(n);
        let h_ok = l.h0 == Matrix::scalar(l.c0.len(), &w) && l.h1 == Matrix::scalar(l.c1.len(), &w);
        let e_ok = !win.contains(n - 1) || l.e0.mul(&c.d(n - 1)) == l.d.mul(&l.e1);
        let f_ok = !win.contains(n + 1) || l.f0.mul(&c.d(n + 1)) == l.d.mul(&l.f1);
        h_ok && e_ok && f_ok
    })
}

/// `(H⁰, H¹)` as weight modules.
///
/// `H⁰` uses the left-kernel basis of each `d` with unit coordinates at the
/// free positions; `H¹` uses the non-pivot columns of the reduced row echelon
/// form of `d` as quotient coordinates.
pub fn cohomology(c: &CechComplex) -> (WeightModule, WeightModule) {
    let win = c.window.clone();
    let kernels: Vec<(Matrix, Vec<usize>)> = win.indices().map(|n| c.d(n).left_kernel()).collect();
    let cokernels: Vec<Cokernel> = win.indices().map(|n| Cokernel::of(&c.d(n))).collect();
    let at = |n: i64| (n - win.lo()) as usize;

    let h0_dims = kernels.iter().map(|(k, _)| k.rows()).collect();
    let h1_dims = cokernels.iter().map(Cokernel::dim).collect();
    let mut h0 = WeightModule::zero_actions(win.clone(), h0_dims);
    let mut h1 = WeightModule::zero_actions(win.clone(), h1_dims);

    for n in win.indices() {
        let l = c.level(n).expect("in window");
        for (step, act0, act1) in [(-1, &l.e0, &l.e1), (1, &l.f0, &l.f1)] {
            let m = n + step;
            if !win.contains(m) {
                continue;
            }
            let (kb, _) = &kernels[at(n)];
            let (_, free_m) = &kernels[at(m)];
            let rows = (0..kb.rows())
                .map(|i| {
                    let img = Matrix::from_rows(vec![kb.row(i).to_vec()]).mul(act0);
                    kernel_coordinates(img.row(0), free_m)
                })
                .collect::<Vec<_>>();
            let m0 = if rows.is_empty() {
                Matrix::zeros(0, free_m.len())
            } else {
                Matrix::from_rows(rows)
            };

            let ck = &cokernels[at(n)];
            let ck_m = &cokernels[at(m)];
            let rows = ck
                .representatives()
                .iter()
                .map(|&j| ck_m.project(act1.row(j)))
                .collect::<Vec<_>>();
            let m1 = if rows.is_empty() {
                Matrix::zeros(0, ck_m.dim())
            } else {
                Matrix::from_rows(rows)
            };

            if step < 0 {
                h0.set_e(n, m0);
                h1.set_e(n, m1);
            } else {
                h0.set_f(n, m0);
                h1.set_f(n, m1);
            }
        }
    }
    let alpha = c.kind.alpha().cloned();
    (
        h0.with_meta(Some(c.lambda), alpha.clone()),
        h1.with_meta(Some(c.lambda), alpha),
    )
}

/// `dim C⁰` and `dim C¹` per window index.
pub fn chain_dims(c: &CechComplex) -> Vec<(i64, usize, usize)> {
    c.window
        .indices()
        .map(|n| (n, c.c0_dim(n), c.c1_dim(n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn win(kind: &ExtensionKind, lambda: i64, half: i64) -> WeightWindow {
        WeightWindow::for_parameters(lambda, &kind.coset_alpha(), half)
    }

    #[test]
    fn omega_untwisted() {
        let k = ExtensionKind::Omega;
        let c = build_complex(&k, 0, &win(&k, 0, 6)).unwrap();
        assert!(verify_chain_map(&c));
        let l = c.level(0).unwrap();
        assert_eq!(l.c1.len(), 1);
        let (h0, h1) = cohomology(&c);
        assert!(h0.is_zero());
        assert_eq!(h1.interior_dims(), vec![(0, 1)]);
    }

    #[test]
    fn skyscraper_has_no_c1() {
        let k = ExtensionKind::IotaX;
        let c = build_complex(&k, 2, &win(&k, 2, 8)).unwrap();
        assert!(c.levels().all(|(_, l)| l.c1.is_empty()));
        let (h0, h1) = cohomology(&c);
        assert!(h1.is_zero());
        // weights λ, λ+2, …
        let first = h0.interior_support().unwrap().0;
        assert_eq!(h0.weight(first), q(2));
    }

    #[test]
    fn jdot_half_is_surjective() {
        let k = ExtensionKind::JDot(frac(1, 2));
        let c = build_complex(&k, 0, &win(&k, 0, 8)).unwrap();
        for (_, l) in c.levels() {
            assert_eq!((l.d.rows(), l.d.cols()), (2, 1));
            assert_eq!(l.d.rank(), 1);
        }
        let (_, h1) = cohomology(&c);
        assert!(h1.is_zero());
    }

    #[test]
    fn coset_mismatch() {
        let k = ExtensionKind::JDot(frac(1, 2));
        let w = WeightWindow::centered(&q(0), 8);
        assert!(matches!(
            build_complex(&k, 0, &w),
            Err(CechError::CosetMismatch { .. })
        ));
    }

    #[test]
    fn corrupted_differential_is_detected() {
        let k = ExtensionKind::JShriekXDotZ(q(-2));
        let mut c = build_complex(&k, 3, &win(&k, 3, 10)).unwrap();
        assert!(verify_chain_map(&c));
        let d = c.differential_mut(0).unwrap();
        d[(0, 0)] += q(1);
        assert!(!verify_chain_map(&c));
    }
}
