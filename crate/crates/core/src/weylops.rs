//! Differential operators in one chart coordinate and their action on cyclic
//! right modules.
//!
//! Operators are kept in normal order: every monomial is `coordᵃ ∂ᵇ` with the
//! coordinate power on the left. The only relation is `∂·x = x·∂ + 1`, which in
//! closed form reads
//!
//! ```text
//! ∂ᵇ xᶜ = Σₖ C(b,k) c(c−1)⋯(c−k+1) x^(c−k) ∂^(b−k)
//! ```
//!
//! and holds for negative `c` as well, so Laurent operators on `C^×` use the
//! same code path.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{binomial, falling, format_rational, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operators live in different chart coordinates ({0} vs {1})")]
    ChartMismatch(Coord, Coord),
    #[error("operator has a negative power of {0} but is not Laurent-allowed")]
    NegativePower(Coord),
    #[error("coordinate inversion needs an operator on C^× (Laurent-allowed)")]
    NotLaurent,
    #[error("basis index {index} is outside the presentation support {support}")]
    IndexOutsideSupport { index: i64, support: Support },
    #[error("reduction produced coefficient {coeff} on index {index} outside support {support}")]
    LeavesSupport {
        index: i64,
        coeff: String,
        support: Support,
    },
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
}

/// Chart coordinate label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    X,
    Z,
}

impl Coord {
    pub fn other(self) -> Coord {
        match self {
            Coord::X => Coord::Z,
            Coord::Z => Coord::X,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coord::X => "x",
            Coord::Z => "z",
        })
    }
}

/// A finite rational combination of normal-ordered monomials `coordᵃ ∂ᵇ`.
///
/// Keys are `(a, b)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    coord: Coord,
    laurent: bool,
    terms: BTreeMap<(i64, u32), Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Scale(Q),
}

impl DiffOp {
    pub fn zero(coord: Coord) -> Self {
        DiffOp {
            coord,
            laurent: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(coord: Coord, c: Q) -> Self {
        Self::monomial(coord, 0, 0, c)
    }

    /// `c · coordᵃ ∂ᵇ`; negative `a` marks the operator Laurent-allowed.
    pub fn monomial(coord: Coord, a: i64, b: u32, c: Q) -> Self {
        let mut op = DiffOp::zero(coord);
        op.laurent = a < 0;
        if !c.is_zero() {
            op.terms.insert((a, b), c);
        }
        op
    }

    /// Builds an operator from `(a, b, coefficient)` triples, summing repeats.
    pub fn from_terms(
        coord: Coord,
        laurent: bool,
        terms: impl IntoIterator<Item = (i64, u32, Q)>,
    ) -> Result<Self, WeylError> {
        let mut op = DiffOp {
            coord,
            laurent,
            terms: BTreeMap::new(),
        };
        for (a, b, c) in terms {
            if a < 0 && !laurent {
                return Err(WeylError::NegativePower(coord));
            }
            op.add_term(a, b, c);
        }
        Ok(op)
    }

    pub fn coord_power(coord: Coord, a: i64) -> Self {
        Self::monomial(coord, a, 0, Q::one())
    }

    pub fn d(coord: Coord) -> Self {
        Self::monomial(coord, 0, 1, Q::one())
    }

    pub fn coord(&self) -> Coord {
        self.coord
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Marks the operator as living on `C^×`.
    pub fn laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Q)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: i64, b: u32) -> Q {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    /// Highest power of `∂` occurring, or `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    fn add_term(&mut self, a: i64, b: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    fn check_chart(&self, other: &DiffOp) -> Result<(), WeylError> {
        if self.coord != other.coord {
            return Err(WeylError::ChartMismatch(self.coord, other.coord));
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.check_chart(other)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, r: &Q) -> DiffOp {
        let mut out = DiffOp::zero(self.coord);
        out.laurent = self.laurent;
        if r.is_zero() {
            return out;
        }
        for (&k, c) in &self.terms {
            out.terms.insert(k, c * r);
        }
        out
    }

    /// Normal-ordered product `self · other`.
    pub fn mul(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.check_chart(other)?;
        let mut out = DiffOp::zero(self.coord);
        out.laurent = self.laurent || other.laurent;
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &other.terms {
                let base = c1 * c2;
                for k in 0..=b {
                    let w = binomial(b, k) * falling(c, k);
                    if w.is_zero() {
                        // falling(c, k) vanishes for all larger k as well
                        break;
                    }
                    out.add_term(a + c - k as i64, b + d - k, &base * w);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> DiffOp {
        let mut acc = DiffOp::constant(self.coord, Q::one());
        acc.laurent = self.laurent;
        for _ in 0..n {
            acc = acc.mul(self).expect("same chart");
        }
        acc
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest order first, then by coordinate power.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|l, r| r.1.cmp(&l.1).then(r.0.cmp(&l.0)));
        for (i, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            match a {
                0 => {}
                1 => factors.push(format!("{}", self.coord)),
                _ => factors.push(format!("{}^{}", self.coord, a)),
            }
            match b {
                0 => {}
                1 => factors.push(format!("∂{}", self.coord)),
                _ => factors.push(format!("∂{}^{}", self.coord, b)),
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}·", format_rational(&mag))?;
                }
                f.write_str(&factors.join(""))?;
            }
        }
        Ok(())
    }
}

pub fn op_ring(a: &DiffOp, b: &DiffOp, which: RingOp) -> Result<DiffOp, WeylError> {
    match which {
        RingOp::Add => a.add(b),
        RingOp::Mul => a.mul(b),
        RingOp::Scale(r) => Ok(a.scale(&r)),
    }
}

/// Formal adjoint: the anti-involution fixing the coordinate and negating `∂`.
pub fn formal_adjoint(p: &DiffOp) -> DiffOp {
    let mut out = DiffOp::zero(p.coord);
    out.laurent = p.laurent;
    for (a, b, c) in p.terms() {
        let sign = if b % 2 == 0 { c.clone() } else { -c.clone() };
        let dpow = DiffOp::monomial(p.coord, 0, b, sign);
        let xpow = DiffOp::coord_power(p.coord, a);
        let t = dpow.mul(&xpow).expect("same chart");
        out = out.add(&t).expect("same chart");
    }
    out.laurent = p.laurent;
    out
}

/// Rewrites an operator on `C^×` in the other coordinate, using
/// `x = z⁻¹` and `∂x = −z²∂z` (and symmetrically).
pub fn invert_coordinate(p: &DiffOp) -> Result<DiffOp, WeylError> {
    if !p.laurent {
        return Err(WeylError::NotLaurent);
    }
    let target = p.coord.other();
    let image_of_d = DiffOp::monomial(target, 2, 1, -Q::one()).laurent();
    let mut out = DiffOp::zero(target).laurent();
    for (a, b, c) in p.terms() {
        let t = DiffOp::monomial(target, -a, 0, c.clone())
            .laurent()
            .mul(&image_of_d.pow(b))?;
        out = out.add(&t)?;
    }
    Ok(out)
}

/// Index set of a chart basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Support {
    AllIntegers,
    AtLeast(i64),
    AtMost(i64),
}

impl Support {
    pub fn contains(&self, n: i64) -> bool {
        match *self {
            Support::AllIntegers => true,
            Support::AtLeast(m) => n >= m,
            Support::AtMost(m) => n <= m,
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::AllIntegers => f.write_str("ℤ"),
            Support::AtLeast(m) => write!(f, "n ≥ {m}"),
            Support::AtMost(m) => write!(f, "n ≤ {m}"),
        }
    }
}

/// Monomial basis of a cyclic right module `D/qD` generated by `1̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `q = coord·∂ − c` over Laurent operators: basis `vₙ = 1̄·coordⁿ`,
    /// `n` in `support`. A proper support is a submodule of the Laurent
    /// module and must be closed under the action (checked on reduction).
    XPowers { eigenvalue: Q, support: Support },
    /// `q = coord` (skyscraper at the origin): basis `vₙ = 1̄·∂ⁿ`, `n ≥ 0`.
    DPowers,
    /// `q = coord·∂ − c` over polynomial operators: basis `vₙ = 1̄·coordⁿ`
    /// for `n ≥ 0` and `vₙ = 1̄·∂⁻ⁿ` for `n < 0`.
    MixedPowers { eigenvalue: Q },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicPresentation {
    pub coord: Coord,
    pub kind: BasisKind,
}

impl CyclicPresentation {
    pub fn xpowers(coord: Coord, eigenvalue: Q, support: Support) -> Self {
        CyclicPresentation {
            coord,
            kind: BasisKind::XPowers {
                eigenvalue,
                support,
            },
        }
    }

    pub fn dpowers(coord: Coord) -> Self {
        CyclicPresentation {
            coord,
            kind: BasisKind::DPowers,
        }
    }

    pub fn mixed(coord: Coord, eigenvalue: Q) -> Self {
        CyclicPresentation {
            coord,
            kind: BasisKind::MixedPowers { eigenvalue },
        }
    }

    pub fn support(&self) -> Support {
        match &self.kind {
            BasisKind::XPowers { support, .. } => *support,
            BasisKind::DPowers => Support::AtLeast(0),
            BasisKind::MixedPowers { .. } => Support::AllIntegers,
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.support().contains(n)
    }

    fn needs_laurent(&self) -> bool {
        matches!(self.kind, BasisKind::XPowers { .. })
    }

    /// The operator `P` with `vₙ = 1̄·P`.
    pub fn basis_operator(&self, n: i64) -> DiffOp {
        match &self.kind {
            BasisKind::XPowers { .. } => DiffOp::coord_power(self.coord, n).laurent(),
            BasisKind::DPowers => DiffOp::monomial(self.coord, 0, n as u32, Q::one()),
            BasisKind::MixedPowers { .. } => {
                if n >= 0 {
                    DiffOp::coord_power(self.coord, n)
                } else {
                    DiffOp::monomial(self.coord, 0, (-n) as u32, Q::one())
                }
            }
        }
    }

    /// The relator `q` with `1̄·q = 0`.
    pub fn relator(&self) -> DiffOp {
        match &self.kind {
            BasisKind::XPowers { eigenvalue, .. } | BasisKind::MixedPowers { eigenvalue } => {
                let euler = DiffOp::monomial(self.coord, 1, 1, Q::one());
                euler
                    .sub(&DiffOp::constant(self.coord, eigenvalue.clone()))
                    .expect("same chart")
            }
            BasisKind::DPowers => DiffOp::coord_power(self.coord, 1),
        }
    }

    /// Eigenvalue of `coord·∂` on `vₙ`.
    pub fn eigenvalue(&self, n: i64) -> Q {
        match &self.kind {
            BasisKind::XPowers { eigenvalue, .. } | BasisKind::MixedPowers { eigenvalue } => {
                eigenvalue - q(n)
            }
            BasisKind::DPowers => q(n),
        }
    }

    /// Basis index whose `coord·∂`-eigenvalue is `eig`, if it exists.
    pub fn index_of_eigenvalue(&self, eig: &Q) -> Option<i64> {
        let n = match &self.kind {
            BasisKind::XPowers { eigenvalue, .. } | BasisKind::MixedPowers { eigenvalue } => {
                eigenvalue - eig
            }
            BasisKind::DPowers => eig.clone(),
        };
        let n = crate::scalar::to_i64(&n)?;
        self.contains(n).then_some(n)
    }

    /// Presentation of the same cyclic module after inverting the coordinate
    /// (restriction to `C^×`), or `None` when the module restricts to zero.
    pub fn localization(&self) -> Option<CyclicPresentation> {
        match &self.kind {
            BasisKind::XPowers { eigenvalue, .. } | BasisKind::MixedPowers { eigenvalue } => Some(
                CyclicPresentation::xpowers(self.coord, eigenvalue.clone(), Support::AllIntegers),
            ),
            BasisKind::DPowers => None,
        }
    }

    /// Same presentation with `x` and `z` exchanged.
    pub fn mirrored(&self) -> CyclicPresentation {
        CyclicPresentation {
            coord: self.coord.other(),
            kind: self.kind.clone(),
        }
    }
}

/// The ` - c` of the relator `coord·∂ − c`, empty when `c = 0`.
fn signed(c: &Q) -> String {
    if c.is_zero() {
        String::new()
    } else if c.is_negative() {
        format!(" + {}", format_rational(&-c))
    } else {
        format!(" - {}", format_rational(c))
    }
}

impl fmt::Display for CyclicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coord;
        match &self.kind {
            BasisKind::XPowers {
                eigenvalue,
                support,
            } => write!(
                f,
                "D/({c}∂{c}{})D, basis 1̄·{c}ⁿ, {support}",
                signed(eigenvalue)
            ),
            BasisKind::DPowers => write!(f, "D/{c}D, basis 1̄·∂{c}ⁿ, n ≥ 0"),
            BasisKind::MixedPowers { eigenvalue } => write!(
                f,
                "D/({c}∂{c}{})D, basis 1̄·{c}ⁿ (n ≥ 0), 1̄·∂{c}⁻ⁿ (n < 0)",
                signed(eigenvalue)
            ),
        }
    }
}

/// Sparse vector over basis indices.
pub type BasisVector = BTreeMap<i64, Q>;

const REWRITE_LIMIT: usize = 100_000;

/// Class of `vₙ · p` in the canonical basis, computed by rewriting
/// `basis_operator(n) · p` modulo the right ideal `q·D`.
///
/// Each step removes the leading monomial `m` by subtracting `c · q · m'`,
/// where `q · m'` has leading monomial `m`. The remainder consists of basis
/// monomials only.
pub fn reduce_in_cyclic(
    p: &DiffOp,
    pres: &CyclicPresentation,
    n: i64,
) -> Result<BasisVector, WeylError> {
    if p.coord != pres.coord {
        return Err(WeylError::ChartMismatch(pres.coord, p.coord));
    }
    if !pres.contains(n) {
        return Err(WeylError::IndexOutsideSupport {
            index: n,
            support: pres.support(),
        });
    }
    if p.laurent && !pres.needs_laurent() {
        return Err(WeylError::UnsupportedPresentation(format!(
            "Laurent operator {p} acting on polynomial presentation {pres}"
        )));
    }
    let relator = pres.relator();
    let mut work = pres.basis_operator(n).mul(p)?;
    let mut out = BasisVector::new();

    for _ in 0..REWRITE_LIMIT {
        // Largest monomial in the rewriting order: by ∂-degree for the
        // eigen-relators, by coordinate degree for the skyscraper relator.
        let lead = match &pres.kind {
            BasisKind::DPowers => work.terms.keys().max_by_key(|&&(a, b)| (a, b)).copied(),
            _ => work.terms.keys().max_by_key(|&&(a, b)| (b, a)).copied(),
        };
        let Some((a, b)) = lead else {
            return finish(out, pres);
        };
        let c = work.terms.remove(&(a, b)).expect("present");
        match &pres.kind {
            BasisKind::XPowers { .. } | BasisKind::MixedPowers { .. } => {
                let polynomial = matches!(pres.kind, BasisKind::MixedPowers { .. });
                if b == 0 {
                    push(&mut out, a, c);
                } else if polynomial && a == 0 {
                    push(&mut out, -(b as i64), c);
                } else {
                    // q · x^(a−1) ∂^(b−1) = x^a ∂^b + lower
                    let mut shifted = DiffOp::monomial(pres.coord, a - 1, b - 1, c.clone());
                    shifted.laurent |= work.laurent;
                    let full = relator.mul(&shifted)?;
                    work.add_term(a, b, c);
                    work = work.sub(&full)?;
                    if work.terms.contains_key(&(a, b)) {
                        return Err(WeylError::UnsupportedPresentation(
                            "rewriting step did not cancel the leading monomial".into(),
                        ));
                    }
                }
            }
            BasisKind::DPowers => {
                if a == 0 {
                    push(&mut out, b as i64, c);
                } else if a < 0 {
                    return Err(WeylError::UnsupportedPresentation(
                        "negative coordinate power on a skyscraper".into(),
                    ));
                }
                // a ≥ 1: x^a ∂^b = x · x^(a−1) ∂^b lies in x·D and vanishes.
            }
        }
    }
    Err(WeylError::UnsupportedPresentation(format!(
        "rewriting of {p} against {pres} did not terminate"
    )))
}

fn push(out: &mut BasisVector, idx: i64, c: Q) {
    let slot = out.entry(idx).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        out.remove(&idx);
    }
}

fn finish(out: BasisVector, pres: &CyclicPresentation) -> Result<BasisVector, WeylError> {
    for (&idx, c) in &out {
        if !pres.contains(idx) {
            return Err(WeylError::LeavesSupport {
                index: idx,
                coeff: format_rational(c),
                support: pres.support(),
            });
        }
    }
    Ok(out)
}

/// Closed-form action of a first-order operator `Σ cₐ_b coordᵃ ∂ᵇ` (`b ≤ 1`)
/// on the basis of a presentation.
#[derive(Debug, Clone)]
pub struct BasisAction {
    pres: CyclicPresentation,
    terms: Vec<(i64, u32, Q)>,
}

/// Builds the closed-form action of `gen` on `pres`.
pub fn act_on_basis(pres: &CyclicPresentation, gen: &DiffOp) -> Result<BasisAction, WeylError> {
    if gen.coord != pres.coord {
        return Err(WeylError::ChartMismatch(pres.coord, gen.coord));
    }
    if gen.order().unwrap_or(0) > 1 {
        return Err(WeylError::UnsupportedPresentation(format!(
            "closed forms cover first-order operators only, got {gen}"
        )));
    }
    if !pres.needs_laurent() && gen.terms().any(|(a, _, _)| a < 0) {
        return Err(WeylError::UnsupportedPresentation(format!(
            "Laurent operator {gen} acting on polynomial presentation {pres}"
        )));
    }
    Ok(BasisAction {
        pres: pres.clone(),
        terms: gen.terms().map(|(a, b, c)| (a, b, c.clone())).collect(),
    })
}

impl BasisAction {
    pub fn presentation(&self) -> &CyclicPresentation {
        &self.pres
    }

    /// `vₙ · gen` as `(index, coefficient)` pairs with nonzero coefficients.
    pub fn apply(&self, n: i64) -> Result<Vec<(i64, Q)>, WeylError> {
        if !self.pres.contains(n) {
            return Err(WeylError::IndexOutsideSupport {
                index: n,
                support: self.pres.support(),
            });
        }
        let mut out = BasisVector::new();
        for (a, b, c) in &self.terms {
            let (idx, mut w) = self.coord_power(n, *a);
            if *b == 1 {
                let (idx2, w2) = self.d_step(idx);
                w *= w2;
                push(&mut out, idx2, c * w);
            } else {
                push(&mut out, idx, c * w);
            }
        }
        let out = finish(out, &self.pres)?;
        Ok(out.into_iter().collect())
    }

    /// `vₙ · coordᵃ = w · v_idx`.
    fn coord_power(&self, n: i64, a: i64) -> (i64, Q) {
        match &self.pres.kind {
            BasisKind::XPowers { .. } => (n + a, Q::one()),
            BasisKind::DPowers => (n - a, falling(n, a as u32)),
            BasisKind::MixedPowers { eigenvalue } => {
                if n >= 0 {
                    (n + a, Q::one())
                } else {
                    // 1̄∂ᵐ·x = (c + m)·1̄∂ᵐ⁻¹ while still on the ∂ side
                    let mut w = Q::one();
                    for m in n..(n + a).min(0) {
                        w *= eigenvalue - q(m);
                    }
                    (n + a, w)
                }
            }
        }
    }

    /// `vₙ · ∂ = w · v_idx`.
    fn d_step(&self, n: i64) -> (i64, Q) {
        match &self.pres.kind {
            BasisKind::XPowers { eigenvalue, .. } => (n - 1, eigenvalue - q(n) + Q::one()),
            BasisKind::DPowers => (n + 1, Q::one()),
            BasisKind::MixedPowers { eigenvalue } => {
                if n >= 1 {
                    (n - 1, eigenvalue - q(n) + Q::one())
                } else {
                    (n - 1, Q::one())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn x() -> DiffOp {
        DiffOp::coord_power(Coord::X, 1)
    }
    fn dx() -> DiffOp {
        DiffOp::d(Coord::X)
    }
    fn euler() -> DiffOp {
        x().mul(&dx()).unwrap()
    }

    #[test]
    fn weyl_relation() {
        let lhs = dx().mul(&x()).unwrap();
        let rhs = euler().add(&DiffOp::constant(Coord::X, q(1))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_squared() {
        let sq = euler().mul(&euler()).unwrap();
        let expect = DiffOp::from_terms(Coord::X, false, [(2, 2, q(1)), (1, 1, q(1))]).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn additive_identity() {
        let p = DiffOp::from_terms(Coord::X, false, [(2, 1, q(3)), (0, 0, q(-1))]).unwrap();
        assert_eq!(DiffOp::zero(Coord::X).add(&p).unwrap(), p);
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let err = x().mul(&DiffOp::d(Coord::Z)).unwrap_err();
        assert_eq!(err, WeylError::ChartMismatch(Coord::X, Coord::Z));
    }

    #[test]
    fn negative_power_needs_laurent_flag() {
        assert!(DiffOp::from_terms(Coord::X, false, [(-1, 0, q(1))]).is_err());
        assert!(DiffOp::from_terms(Coord::X, true, [(-1, 0, q(1))]).is_ok());
    }

    #[test]
    fn adjoint_examples() {
        let alpha = frac(1, 3);
        let p = euler()
            .sub(&DiffOp::constant(Coord::X, alpha.clone()))
            .unwrap();
        let expect =
            DiffOp::from_terms(Coord::X, false, [(1, 1, q(-1)), (0, 0, -alpha - q(1))]).unwrap();
        assert_eq!(formal_adjoint(&p), expect);
        assert_eq!(formal_adjoint(&dx()), dx().scale(&q(-1)));
        let p = DiffOp::from_terms(Coord::X, false, [(2, 1, q(1)), (0, 0, q(3))]).unwrap();
        assert_eq!(formal_adjoint(&formal_adjoint(&p)), p);
    }

    #[test]
    fn inversion_examples() {
        let img = invert_coordinate(&dx().laurent()).unwrap();
        assert_eq!(img, DiffOp::monomial(Coord::Z, 2, 1, q(-1)).laurent());
        let img = invert_coordinate(&euler().laurent()).unwrap();
        assert_eq!(img, DiffOp::monomial(Coord::Z, 1, 1, q(-1)).laurent());
        let p = DiffOp::monomial(Coord::X, 2, 1, q(1)).laurent();
        assert_eq!(
            invert_coordinate(&invert_coordinate(&p).unwrap()).unwrap(),
            p
        );
        assert_eq!(invert_coordinate(&dx()), Err(WeylError::NotLaurent));
    }

    #[test]
    fn reduce_examples() {
        let alpha = frac(2, 7);
        let pres = CyclicPresentation::xpowers(Coord::X, alpha.clone(), Support::AllIntegers);
        for n in -3..=3 {
            let v = reduce_in_cyclic(&euler().laurent(), &pres, n).unwrap();
            assert_eq!(v, BTreeMap::from([(n, &alpha - q(n))]));
            let v = reduce_in_cyclic(&dx().laurent(), &pres, n).unwrap();
            assert_eq!(v, BTreeMap::from([(n - 1, &alpha - q(n) + q(1))]));
        }
        let sky = CyclicPresentation::dpowers(Coord::Z);
        let op = DiffOp::monomial(Coord::Z, 2, 1, q(1));
        for n in 0..6 {
            let v = reduce_in_cyclic(&op, &sky, n).unwrap();
            let c = q(n * (n - 1));
            let expect = if n >= 2 {
                BTreeMap::from([(n - 1, c)])
            } else {
                BTreeMap::new()
            };
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn omega_presentation_stays_in_support() {
        // x^n dx with n ≥ 0: the form dx is killed by ∂.
        let omega = CyclicPresentation::xpowers(Coord::X, q(-1), Support::AtLeast(0));
        let v = reduce_in_cyclic(&dx(), &omega, 0).unwrap();
        assert!(v.is_empty());
        // but a presentation whose support is not closed is reported
        let bad = CyclicPresentation::xpowers(Coord::X, q(0), Support::AtLeast(0));
        assert!(matches!(
            reduce_in_cyclic(&dx(), &bad, 0),
            Err(WeylError::LeavesSupport { index: -1, .. })
        ));
        assert!(matches!(
            reduce_in_cyclic(&dx(), &omega, -1),
            Err(WeylError::IndexOutsideSupport { .. })
        ));
    }

    #[test]
    fn mixed_presentation_skyscraper_part() {
        // D/∂z z D: the vectors 1̄∂ᵐ (m ≥ 1) span a copy of D/zD.
        let pres = CyclicPresentation::mixed(Coord::Z, q(-1));
        let z = DiffOp::coord_power(Coord::Z, 1);
        assert!(reduce_in_cyclic(&z, &pres, -1).unwrap().is_empty());
        assert_eq!(
            reduce_in_cyclic(&z, &pres, -3).unwrap(),
            BTreeMap::from([(-2, q(-1 + 3))])
        );
        let dz = DiffOp::d(Coord::Z);
        assert_eq!(
            reduce_in_cyclic(&dz, &pres, 0).unwrap(),
            BTreeMap::from([(-1, q(1))])
        );
    }

    #[test]
    fn closed_form_examples() {
        let omega = CyclicPresentation::xpowers(Coord::X, q(-1), Support::AtLeast(0));
        let act = act_on_basis(&omega, &dx()).unwrap();
        for n in 0..8 {
            let expect = if n == 0 { vec![] } else { vec![(n - 1, q(-n))] };
            assert_eq!(act.apply(n).unwrap(), expect);
        }
        let alpha = frac(-3, 5);
        let lambda = 4;
        let pres = CyclicPresentation::xpowers(Coord::X, alpha.clone(), Support::AllIntegers);
        let f = DiffOp::from_terms(Coord::X, false, [(2, 1, q(-1)), (1, 0, q(-lambda))]).unwrap();
        let act = act_on_basis(&pres, &f).unwrap();
        for n in -5..=5 {
            let c = q(n + 1) - &alpha - q(lambda);
            assert_eq!(act.apply(n).unwrap(), vec![(n + 1, c)]);
        }
        let sky = CyclicPresentation::dpowers(Coord::Z);
        let act = act_on_basis(&sky, &DiffOp::d(Coord::Z)).unwrap();
        assert_eq!(act.apply(3).unwrap(), vec![(4, q(1))]);
        assert!(act_on_basis(&sky, &DiffOp::monomial(Coord::Z, 0, 2, q(1))).is_err());
    }

    #[test]
    fn display() {
        let p = DiffOp::from_terms(
            Coord::X,
            false,
            [(2, 2, q(1)), (1, 1, q(1)), (0, 0, frac(-1, 2))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "x^2∂x^2 + x∂x - 1/2");
        assert_eq!(DiffOp::zero(Coord::Z).to_string(), "0");
    }
}
