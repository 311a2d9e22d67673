//! Chart data for the extension kinds on `P¹ = C_x ∪ C_z`, `x = z⁻¹`.
//!
//! Each kind restricts to a cyclic right module on `C_x`, on `C_z` and on
//! `C^× = C_x ∩ C_z`. Sections over `C^×` are always written in the
//! `x`-coordinate as `uₙ = g·xⁿ`, where `g·x∂x = c₀·g`, and in the
//! trivialization `z₀^λ`. A `z`-chart section in the trivialization `z₁^λ`
//! picks up the transition factor `z₁^λ = x^λ z₀^λ`, so every `z`-side
//! restriction is shifted by `+λ` in index.
//!
//! All generators are forms (`dx`, `dz`, `dx/x`, `x^α dx/x`, ...); since
//! `dz = −x⁻² dx`, the `z`-side restrictions carry the sign `−1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{format_rational, is_integral, parse_rational, q, to_i64, Q};
use crate::weylops::{reduce_in_cyclic, Coord, CyclicPresentation, DiffOp, Support, WeylError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartId {
    Cx,
    Cz,
    Cstar,
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartId::Cx => "C_x",
            ChartId::Cz => "C_z",
            ChartId::Cstar => "C^×",
        })
    }
}

/// The extensions of (twisted) forms from an open piece of `P¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    /// `Ω ⊗ O(λ)` itself.
    Omega,
    JxDot,
    JxShriek,
    /// Skyscraper at `x = 0`.
    IotaX,
    JzDot,
    JzShriek,
    IotaZ,
    JDot(Q),
    JShriek(Q),
    /// `!`-extension across `x = 0`, `·`-extension across `z = 0`.
    JShriekXDotZ(Q),
    JDotXShriekZ(Q),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KindParseError {
    #[error("unknown extension {0:?}")]
    Unknown(String),
    #[error("extension {0} needs an alpha value")]
    MissingAlpha(String),
    #[error("extension {0} takes no alpha")]
    UnexpectedAlpha(String),
    #[error(transparent)]
    Alpha(#[from] crate::scalar::ParseRationalError),
}

pub const EXTENSION_NAMES: [&str; 11] = [
    "omega",
    "j_x_dot",
    "j_x_shriek",
    "iota_x",
    "iota_z",
    "j_z_dot",
    "j_z_shriek",
    "j_dot",
    "j_shriek",
    "j_shriek_x_dot_z",
    "j_dot_x_shriek_z",
];

impl ExtensionKind {
    /// Builds a kind from its command-line name and optional `α`.
    pub fn from_name(name: &str, alpha: Option<Q>) -> Result<Self, KindParseError> {
        let plain = |k: ExtensionKind| match alpha {
            None => Ok(k),
            Some(_) => Err(KindParseError::UnexpectedAlpha(name.to_string())),
        };
        let with = |ctor: fn(Q) -> ExtensionKind| match alpha.clone() {
            Some(a) => Ok(ctor(a)),
            None => Err(KindParseError::MissingAlpha(name.to_string())),
        };
        match name {
            "omega" => plain(ExtensionKind::Omega),
            "j_x_dot" => plain(ExtensionKind::JxDot),
            "j_x_shriek" => plain(ExtensionKind::JxShriek),
            "iota_x" => plain(ExtensionKind::IotaX),
            "iota_z" => plain(ExtensionKind::IotaZ),
            "j_z_dot" => plain(ExtensionKind::JzDot),
            "j_z_shriek" => plain(ExtensionKind::JzShriek),
            "j_dot" => with(ExtensionKind::JDot),
            "j_shriek" => with(ExtensionKind::JShriek),
            "j_shriek_x_dot_z" => with(ExtensionKind::JShriekXDotZ),
            "j_dot_x_shriek_z" => with(ExtensionKind::JDotXShriekZ),
            _ => Err(KindParseError::Unknown(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExtensionKind::Omega => "omega",
            ExtensionKind::JxDot => "j_x_dot",
            ExtensionKind::JxShriek => "j_x_shriek",
            ExtensionKind::IotaX => "iota_x",
            ExtensionKind::JzDot => "j_z_dot",
            ExtensionKind::JzShriek => "j_z_shriek",
            ExtensionKind::IotaZ => "iota_z",
            ExtensionKind::JDot(_) => "j_dot",
            ExtensionKind::JShriek(_) => "j_shriek",
            ExtensionKind::JShriekXDotZ(_) => "j_shriek_x_dot_z",
            ExtensionKind::JDotXShriekZ(_) => "j_dot_x_shriek_z",
        }
    }

    pub fn alpha(&self) -> Option<&Q> {
        match self {
            ExtensionKind::JDot(a)
            | ExtensionKind::JShriek(a)
            | ExtensionKind::JShriekXDotZ(a)
            | ExtensionKind::JDotXShriekZ(a) => Some(a),
            _ => None,
        }
    }

    pub fn needs_alpha(name: &str) -> bool {
        matches!(
            name,
            "j_dot" | "j_shriek" | "j_shriek_x_dot_z" | "j_dot_x_shriek_z"
        )
    }

    /// The `α` whose coset `−2α−λ+2ℤ` contains all weights (`0` for the
    /// untwisted-form kinds).
    pub fn coset_alpha(&self) -> Q {
        self.alpha().cloned().unwrap_or_else(Q::zero)
    }

    /// The kind obtained by pulling back along `x ↦ x⁻¹`.
    pub fn mirror(&self) -> ExtensionKind {
        match self {
            ExtensionKind::Omega => ExtensionKind::Omega,
            ExtensionKind::JxDot => ExtensionKind::JzDot,
            ExtensionKind::JzDot => ExtensionKind::JxDot,
            ExtensionKind::JxShriek => ExtensionKind::JzShriek,
            ExtensionKind::JzShriek => ExtensionKind::JxShriek,
            ExtensionKind::IotaX => ExtensionKind::IotaZ,
            ExtensionKind::IotaZ => ExtensionKind::IotaX,
            ExtensionKind::JDot(a) => ExtensionKind::JDot(-a),
            ExtensionKind::JShriek(a) => ExtensionKind::JShriek(-a),
            ExtensionKind::JShriekXDotZ(a) => ExtensionKind::JDotXShriekZ(-a),
            ExtensionKind::JDotXShriekZ(a) => ExtensionKind::JShriekXDotZ(-a),
        }
    }

    /// Every kind, with `α` drawn from `alphas` for the parametrised ones.
    pub fn all(alphas: &[Q]) -> Vec<ExtensionKind> {
        let mut out = vec![
            ExtensionKind::Omega,
            ExtensionKind::JxDot,
            ExtensionKind::JxShriek,
            ExtensionKind::IotaX,
            ExtensionKind::IotaZ,
            ExtensionKind::JzDot,
            ExtensionKind::JzShriek,
        ];
        for a in alphas {
            out.push(ExtensionKind::JDot(a.clone()));
            out.push(ExtensionKind::JShriek(a.clone()));
            out.push(ExtensionKind::JShriekXDotZ(a.clone()));
            out.push(ExtensionKind::JDotXShriekZ(a.clone()));
        }
        out
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha() {
            Some(a) => write!(f, "{}(α={})", self.name(), format_rational(a)),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for ExtensionKind {
    type Err = KindParseError;

    /// Accepts `name` or `name:alpha`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((name, a)) => ExtensionKind::from_name(name, Some(parse_rational(a)?)),
            None => ExtensionKind::from_name(s, None),
        }
    }
}

/// Which half of a kind's chart data to use.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Dot,
    Shriek,
}

fn omega(coord: Coord) -> CyclicPresentation {
    CyclicPresentation::xpowers(coord, q(-1), Support::AtLeast(0))
}

/// `j·` / `j!` of `Ω^(α)` on the `x` side; `α` is the `x∂x`-eigenvalue.
fn x_side(alpha: &Q, side: Side) -> CyclicPresentation {
    if side == Side::Shriek && is_integral(alpha) {
        CyclicPresentation::mixed(Coord::X, q(-1))
    } else {
        CyclicPresentation::xpowers(Coord::X, alpha.clone(), Support::AllIntegers)
    }
}

/// `z`-side counterpart; the `z∂z`-eigenvalue of `x^α dx/x` is `−α`.
fn z_side(alpha: &Q, side: Side) -> CyclicPresentation {
    if side == Side::Shriek && is_integral(alpha) {
        CyclicPresentation::mixed(Coord::Z, q(-1))
    } else {
        CyclicPresentation::xpowers(Coord::Z, -alpha.clone(), Support::AllIntegers)
    }
}

/// `x∂x`-eigenvalue `c₀` of the generator used for sections over `C^×`, or
/// `None` if the kind vanishes there.
pub fn cstar_eigenvalue(kind: &ExtensionKind) -> Option<Q> {
    match kind {
        ExtensionKind::IotaX | ExtensionKind::IotaZ => None,
        ExtensionKind::JDot(a)
        | ExtensionKind::JShriek(a)
        | ExtensionKind::JShriekXDotZ(a)
        | ExtensionKind::JDotXShriekZ(a) => Some(a.clone()),
        _ => Some(q(-1)),
    }
}

/// Presentation of the sections of `kind` over `chart`, or `None` when there
/// are none.
pub fn chart_presentation(kind: &ExtensionKind, chart: ChartId) -> Option<CyclicPresentation> {
    use ExtensionKind as K;
    match chart {
        ChartId::Cstar => cstar_eigenvalue(kind)
            .map(|c| CyclicPresentation::xpowers(Coord::X, c, Support::AllIntegers)),
        ChartId::Cx => match kind {
            K::Omega | K::JxDot | K::JxShriek => Some(omega(Coord::X)),
            K::IotaX => None,
            K::JzDot => Some(x_side(&q(0), Side::Dot)),
            K::JzShriek => Some(x_side(&q(0), Side::Shriek)),
            K::IotaZ => Some(CyclicPresentation::dpowers(Coord::X)),
            K::JDot(a) | K::JDotXShriekZ(a) => Some(x_side(a, Side::Dot)),
            K::JShriek(a) | K::JShriekXDotZ(a) => Some(x_side(a, Side::Shriek)),
        },
        ChartId::Cz => match kind {
            K::Omega | K::JzDot | K::JzShriek => Some(omega(Coord::Z)),
            K::IotaZ => None,
            K::JxDot => Some(z_side(&q(0), Side::Dot)),
            K::JxShriek => Some(z_side(&q(0), Side::Shriek)),
            K::IotaX => Some(CyclicPresentation::dpowers(Coord::Z)),
            K::JDot(a) | K::JShriekXDotZ(a) => Some(z_side(a, Side::Dot)),
            K::JShriek(a) | K::JDotXShriekZ(a) => Some(z_side(a, Side::Shriek)),
        },
    }
}

/// The `λ`-twisted operators `(e, h, f)` on a chart. `Cstar` uses the `x`
/// coordinate and is flagged Laurent.
pub fn sl2_generators(chart: ChartId, lambda: i64) -> (DiffOp, DiffOp, DiffOp) {
    let l = q(lambda);
    let build = |coord, terms: Vec<(i64, u32, Q)>, laurent| {
        DiffOp::from_terms(coord, laurent, terms).expect("nonnegative powers")
    };
    match chart {
        ChartId::Cx | ChartId::Cstar => {
            let laurent = chart == ChartId::Cstar;
            (
                build(Coord::X, vec![(0, 1, q(1))], laurent),
                build(Coord::X, vec![(1, 1, q(-2)), (0, 0, -l.clone())], laurent),
                build(Coord::X, vec![(2, 1, q(-1)), (1, 0, -l)], laurent),
            )
        }
        ChartId::Cz => (
            build(Coord::Z, vec![(2, 1, q(-1)), (1, 0, -l.clone())], false),
            build(Coord::Z, vec![(1, 1, q(2)), (0, 0, l)], false),
            build(Coord::Z, vec![(0, 1, q(1))], false),
        ),
    }
}

/// Restriction of chart sections to `C^×`: `vₙ ↦ coefficient(n) · u_{εn+δ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionMap {
    pub epsilon: i64,
    pub delta: i64,
    kappa: Q,
    source: CyclicPresentation,
    localized: CyclicPresentation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    Map(Box<RestrictionMap>),
    ZeroMap,
}

impl RestrictionMap {
    pub fn source(&self) -> &CyclicPresentation {
        &self.source
    }

    pub fn target_index(&self, n: i64) -> i64 {
        self.epsilon * n + self.delta
    }

    /// Coefficient of the image of `vₙ`; zero for sections supported at the
    /// removed point.
    pub fn coefficient(&self, n: i64) -> Result<Q, WeylError> {
        let op = self.source.basis_operator(n).laurent();
        let v = reduce_in_cyclic(&op, &self.localized, 0)?;
        let c = v.get(&n).cloned().unwrap_or_else(Q::zero);
        if v.len() > usize::from(!c.is_zero()) {
            return Err(WeylError::UnsupportedPresentation(format!(
                "localization of basis vector {n} is not a monomial"
            )));
        }
        Ok(&self.kappa * c)
    }

    /// `(target index, coefficient)` or `None` when the image is zero.
    pub fn image(&self, n: i64) -> Result<Option<(i64, Q)>, WeylError> {
        let c = self.coefficient(n)?;
        Ok((!c.is_zero()).then(|| (self.target_index(n), c)))
    }
}

pub fn restriction_map(kind: &ExtensionKind, chart: ChartId, lambda: i64) -> Restriction {
    let (Some(c0), Some(src)) = (cstar_eigenvalue(kind), chart_presentation(kind, chart)) else {
        return Restriction::ZeroMap;
    };
    let Some(localized) = src.localization() else {
        return Restriction::ZeroMap;
    };
    let c = src.eigenvalue(0);
    match chart {
        ChartId::Cx => {
            let delta = to_i64(&(&c0 - &c)).expect("integral eigenvalue shift");
            Restriction::Map(Box::new(RestrictionMap {
                epsilon: 1,
                delta,
                kappa: Q::one(),
                source: src,
                localized,
            }))
        }
        ChartId::Cz => {
            let delta = to_i64(&(&c0 + &c)).expect("integral eigenvalue shift") + lambda;
            Restriction::Map(Box::new(RestrictionMap {
                epsilon: -1,
                delta,
                kappa: -Q::one(),
                source: src,
                localized,
            }))
        }
        ChartId::Cstar => Restriction::ZeroMap,
    }
}
