//! Catalog of sl₂ weight modules, the functors `(·)⁻` and `(·)^∨`, and
//! identification of truncated modules by their ladder signature.
//!
//! Conventions (right modules, see [`crate::weights`]): the Verma module
//! `M(μ)` has basis `m_k`, `k ≥ 0`, of weight `−μ + 2k`, with
//! `m_k·f = m_{k+1}` and `m_k·e = k(μ−k+1) m_{k−1}`. The relaxed module
//! `R(λ,α)` has basis `b_j`, `j ∈ ℤ`, of weight `−2α−λ+2j`, generated by
//! `b_0`, with
//!
//! ```text
//! b_j·f = b_{j+1}                          (j ≥ 0)
//! b_j·f = (j−α)(α−j−1+λ) b_{j+1}           (j < 0)
//! b_j·e = b_{j−1}                          (j ≤ 0)
//! b_j·e = (j−1−α)(α−j+λ) b_{j−1}           (j ≥ 1)
//! ```
//!
//! so that `ef` acts on `b_{j+1}` (`j ≥ 0`) by `(j−α)(α−j−1+λ)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{format_rational, fract, is_integral, parse_rational, q, to_i64, Q};
use crate::weights::{as_scalar, central_character, WeightModule, WeightWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RClassKind {
    Less,
    Equal,
    Greater,
}

impl RClassKind {
    fn symbol(self) -> char {
        match self {
            RClassKind::Less => '<',
            RClassKind::Equal => '=',
            RClassKind::Greater => '>',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Zero,
    /// Finite-dimensional simple module of dimension `n + 1`.
    Lfd(i64),
    Verma(i64),
    DualVerma(i64),
    VermaMinus(i64),
    DualVermaMinus(i64),
    RNonIntegral(i64, Q),
    RClass(i64, RClassKind),
    /// `R(λ,=)^∨`.
    RClassDual(i64),
    Sum(Box<CatalogName>, Box<CatalogName>),
}

impl CatalogName {
    pub fn sum(a: CatalogName, b: CatalogName) -> CatalogName {
        CatalogName::Sum(Box::new(a), Box::new(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("window {window} cannot hold {name}: weight coset differs")]
    CosetMismatch { name: String, window: String },
    #[error("{0} does not exist")]
    NoSuchModule(String),
    #[error("Casimir does not act by a scalar")]
    NotScalar,
    #[error("module is not in the catalog")]
    NotInCatalog,
    #[error("several catalog modules match at this window size: {0}")]
    AmbiguousAtWindow(String),
    #[error("a weight space has dimension {0} > 2")]
    NotThin(usize),
    #[error("no unique factorization into simple characters")]
    NoFactorization,
    #[error("cannot parse catalog name {0:?}")]
    Parse(String),
}

fn fmt_int(n: i64) -> String {
    n.to_string()
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Zero => f.write_str("Zero"),
            CatalogName::Lfd(n) => write!(f, "L({})", fmt_int(*n)),
            CatalogName::Verma(m) => write!(f, "M({m})"),
            CatalogName::DualVerma(m) => write!(f, "M({m})^∨"),
            CatalogName::VermaMinus(m) => write!(f, "M({m})⁻"),
            CatalogName::DualVermaMinus(m) => write!(f, "M({m})^∨⁻"),
            CatalogName::RNonIntegral(l, a) => write!(f, "R({l},{})", format_rational(a)),
            CatalogName::RClass(l, c) => write!(f, "R({l},{})", c.symbol()),
            CatalogName::RClassDual(l) => write!(f, "R({l},=)^∨"),
            CatalogName::Sum(a, b) => write!(f, "{a} ⊕ {b}"),
        }
    }
}

/// Splits at the first top-level occurrence of `⊕` or `+`.
fn split_sum(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '⊕' | '+' if depth == 0 => return Some((&s[..i], &s[i + ch.len_utf8()..])),
            _ => {}
        }
    }
    None
}

impl FromStr for CatalogName {
    type Err = Sl2Error;

    /// Accepts the display form; `^v`, `^-` and `+` may replace `^∨`, `⁻`
    /// and `⊕`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || Sl2Error::Parse(s.to_string());
        let t = s.trim();
        if let Some((a, b)) = split_sum(t) {
            return Ok(CatalogName::sum(a.parse()?, b.parse()?));
        }
        if t == "Zero" || t == "0" {
            return Ok(CatalogName::Zero);
        }
        let open = t.find('(').ok_or_else(err)?;
        let close = t.rfind(')').ok_or_else(err)?;
        let head = &t[..open];
        let args = &t[open + 1..close];
        let mut suffix = t[close + 1..].replace("^v", "^∨").replace("^-", "⁻");
        let dual = suffix.contains("^∨");
        let minus = suffix.contains('⁻');
        suffix = suffix.replace("^∨", "").replace('⁻', "");
        if !suffix.is_empty() {
            return Err(err());
        }
        let int = |x: &str| x.trim().parse::<i64>().map_err(|_| err());
        match head {
            "L" if !dual && !minus => {
                let n = int(args)?;
                if n < 0 {
                    return Err(err());
                }
                Ok(CatalogName::Lfd(n))
            }
            "M" => {
                let m = int(args)?;
                Ok(match (dual, minus) {
                    (false, false) => CatalogName::Verma(m),
                    (true, false) => CatalogName::DualVerma(m),
                    (false, true) => CatalogName::VermaMinus(m),
                    (true, true) => CatalogName::DualVermaMinus(m),
                })
            }
            "R" if !minus => {
                let (l, a) = args.split_once(',').ok_or_else(err)?;
                let l = int(l)?;
                let a = a.trim();
                let class = match a {
                    "<" => Some(RClassKind::Less),
                    "=" => Some(RClassKind::Equal),
                    ">" => Some(RClassKind::Greater),
                    _ => None,
                };
                match (class, dual) {
                    (Some(RClassKind::Equal), true) => Ok(CatalogName::RClassDual(l)),
                    (Some(c), false) => Ok(CatalogName::RClass(l, c)),
                    (Some(_), true) => Err(err()),
                    (None, _) => {
                        let alpha = parse_rational(a).map_err(|_| err())?;
                        let base = match to_i64(&alpha) {
                            Some(ai) => CatalogName::RClass(l, r_class_of(l, ai)),
                            None => CatalogName::RNonIntegral(l, alpha),
                        };
                        if dual {
                            match base {
                                CatalogName::RClass(l, RClassKind::Equal) => {
                                    Ok(CatalogName::RClassDual(l))
                                }
                                _ => Err(err()),
                            }
                        } else {
                            Ok(base)
                        }
                    }
                }
            }
            _ => Err(err()),
        }
    }
}

/// A weight in the coset of `name`, for choosing a window.
pub fn coset_representative(name: &CatalogName) -> Q {
    match name {
        CatalogName::Zero => Q::zero(),
        CatalogName::Lfd(n) => q(*n),
        CatalogName::Verma(m) | CatalogName::DualVerma(m) => q(-m),
        CatalogName::VermaMinus(m) | CatalogName::DualVermaMinus(m) => q(*m),
        CatalogName::RNonIntegral(l, a) => -q(2) * a - q(*l),
        CatalogName::RClass(l, _) | CatalogName::RClassDual(l) => q(-l),
        CatalogName::Sum(a, _) => coset_representative(a),
    }
}

/// Isomorphism class of `R(λ,α)` for integral `α`.
pub fn r_class_of(lambda: i64, alpha: i64) -> RClassKind {
    if lambda >= 2 {
        if alpha <= -lambda {
            RClassKind::Less
        } else if alpha >= 0 {
            RClassKind::Greater
        } else {
            RClassKind::Equal
        }
    } else if lambda <= 0 {
        if alpha <= -1 {
            RClassKind::Less
        } else if alpha >= 1 - lambda {
            RClassKind::Greater
        } else {
            RClassKind::Equal
        }
    } else if alpha <= -1 {
        RClassKind::Less
    } else {
        RClassKind::Greater
    }
}

/// A fixed `α` in the class, or `None` for `R(1,=)`.
pub fn r_class_representative(lambda: i64, class: RClassKind) -> Option<i64> {
    use RClassKind::*;
    match (lambda, class) {
        (l, Less) if l >= 2 => Some(-l),
        (l, Greater) if l >= 2 => Some(0),
        (l, Equal) if l >= 2 => Some(-1),
        (l, Less) if l <= 0 => Some(-1),
        (l, Greater) if l <= 0 => Some(1 - l),
        (l, Equal) if l <= 0 => Some(0),
        (_, Less) => Some(-1),
        (_, Greater) => Some(0),
        (_, Equal) => None,
    }
}

fn mismatch(name: &dyn fmt::Display, window: &WeightWindow) -> Sl2Error {
    Sl2Error::CosetMismatch {
        name: name.to_string(),
        window: window.to_string(),
    }
}

fn one_by_one(c: Q) -> Matrix {
    Matrix::from_rows(vec![vec![c]])
}

/// Builds a module with one-dimensional weight spaces on the indices in
/// `support` (contiguous), with scalar e/f coefficients given by closures on
/// the window index.
fn ladder(
    window: &WeightWindow,
    support: impl Fn(i64) -> bool,
    e_coeff: impl Fn(i64) -> Q,
    f_coeff: impl Fn(i64) -> Q,
) -> WeightModule {
    let dims = window.indices().map(|n| usize::from(support(n))).collect();
    let mut m = WeightModule::zero_actions(window.clone(), dims);
    for n in window.indices() {
        if !support(n) {
            continue;
        }
        if window.contains(n - 1) && support(n - 1) {
            m.set_e(n, one_by_one(e_coeff(n)));
        }
        if window.contains(n + 1) && support(n + 1) {
            m.set_f(n, one_by_one(f_coeff(n)));
        }
    }
    m
}

fn verma(mu: i64, window: &WeightWindow, truncate: bool) -> Result<WeightModule, Sl2Error> {
    let name = if truncate {
        CatalogName::Lfd(mu)
    } else {
        CatalogName::Verma(mu)
    };
    let base = window
        .index_of(&q(-mu))
        .ok_or_else(|| mismatch(&name, window))?;
    let top = base + mu;
    let inside = move |n: i64| n >= base && (!truncate || n <= top);
    Ok(ladder(
        window,
        inside,
        |n| {
            let k = n - base;
            q(k) * q(mu - k + 1)
        },
        |_| Q::one(),
    ))
}

/// `R(λ,α)` for any rational `α`.
pub fn relaxed(lambda: i64, alpha: &Q, window: &WeightWindow) -> Result<WeightModule, Sl2Error> {
    let base_weight = -q(2) * alpha - q(lambda);
    let base = window
        .index_of(&base_weight)
        .ok_or_else(|| mismatch(&format!("R({lambda},{})", format_rational(alpha)), window))?;
    let l = q(lambda);
    let m = ladder(
        window,
        |_| true,
        |n| {
            let j = q(n - base);
            if n - base <= 0 {
                Q::one()
            } else {
                (&j - q(1) - alpha) * (alpha - &j + &l)
            }
        },
        |n| {
            let j = q(n - base);
            if n - base >= 0 {
                Q::one()
            } else {
                (&j - alpha) * (alpha - &j - q(1) + &l)
            }
        },
    );
    Ok(m.with_meta(Some(lambda), Some(alpha.clone())))
}

pub fn make_catalog(name: &CatalogName, window: &WeightWindow) -> Result<WeightModule, Sl2Error> {
    let m = match name {
        CatalogName::Zero => WeightModule::zero(window.clone()),
        CatalogName::Lfd(n) => {
            if *n < 0 {
                return Err(Sl2Error::NoSuchModule(name.to_string()));
            }
            verma(*n, window, true)?
        }
        CatalogName::Verma(mu) => verma(*mu, window, false)?,
        CatalogName::DualVerma(mu) => vee_dual(&verma(*mu, window, false)?),
        CatalogName::VermaMinus(mu) => minus_twist(&verma(*mu, &minus_window(window), false)?),
        CatalogName::DualVermaMinus(mu) => {
            minus_twist(&vee_dual(&verma(*mu, &minus_window(window), false)?))
        }
        CatalogName::RNonIntegral(l, a) => {
            if is_integral(a) {
                return Err(Sl2Error::NoSuchModule(name.to_string()));
            }
            relaxed(*l, a, window)?
        }
        CatalogName::RClass(l, c) => {
            let a = r_class_representative(*l, *c)
                .ok_or_else(|| Sl2Error::NoSuchModule(name.to_string()))?;
            relaxed(*l, &q(a), window)?
        }
        CatalogName::RClassDual(l) => vee_dual(&make_catalog(
            &CatalogName::RClass(*l, RClassKind::Equal),
            window,
        )?),
        CatalogName::Sum(a, b) => direct_sum(&make_catalog(a, window)?, &make_catalog(b, window)?),
    };
    let lambda = catalog_lambda(name);
    Ok(m.with_meta(lambda, None))
}

fn catalog_lambda(name: &CatalogName) -> Option<i64> {
    match name {
        CatalogName::RNonIntegral(l, _)
        | CatalogName::RClass(l, _)
        | CatalogName::RClassDual(l) => Some(*l),
        _ => None,
    }
}

/// The window that `minus_twist` maps onto `window`.
fn minus_window(window: &WeightWindow) -> WeightWindow {
    let offset = crate::scalar::rem_euclid(&-window.offset().clone(), 2);
    let k = reflection_shift(window.offset(), &offset);
    WeightWindow::centered(&offset, 1).with_bounds(k - window.hi(), k - window.lo())
}

/// `(−offset − offset′)/2`, the index shift of the weight reflection.
fn reflection_shift(offset: &Q, new_offset: &Q) -> i64 {
    to_i64(&((-offset - new_offset) / q(2))).expect("offsets are negatives mod 2")
}

/// Pullback along `x ↦ x⁻¹`: `h ↦ −h`, `e ↔ f`.
pub fn minus_twist(m: &WeightModule) -> WeightModule {
    let w = m.window();
    let win = minus_window(w);
    let k = reflection_shift(w.offset(), win.offset());
    let dims = win.indices().map(|n| m.dim(k - n)).collect();
    let mut out = WeightModule::zero_actions(win.clone(), dims);
    for n in win.indices() {
        let old = k - n;
        if win.contains(n - 1) {
            out.set_e(n, m.f_map(old));
        }
        if win.contains(n + 1) {
            out.set_f(n, m.e_map(old));
        }
    }
    out.with_meta(m.lambda, m.alpha.clone())
}

/// Restricted dual with `e` and `f` exchanged by transposition.
pub fn vee_dual(m: &WeightModule) -> WeightModule {
    let win = m.window().clone();
    let dims = win.indices().map(|n| m.dim(n)).collect();
    let mut out = WeightModule::zero_actions(win.clone(), dims);
    for n in win.indices() {
        if win.contains(n - 1) {
            out.set_e(n, m.f_map(n - 1).transpose());
        }
        if win.contains(n + 1) {
            out.set_f(n, m.e_map(n + 1).transpose());
        }
    }
    out.with_meta(m.lambda, m.alpha.clone())
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    m
}

pub fn direct_sum(a: &WeightModule, b: &WeightModule) -> WeightModule {
    assert_eq!(a.window(), b.window(), "direct sum needs equal windows");
    let win = a.window().clone();
    let dims = win.indices().map(|n| a.dim(n) + b.dim(n)).collect();
    let mut out = WeightModule::zero_actions(win.clone(), dims);
    for n in win.indices() {
        if win.contains(n - 1) {
            out.set_e(n, block_diag(&a.e_map(n), &b.e_map(n)));
        }
        if win.contains(n + 1) {
            out.set_f(n, block_diag(&a.f_map(n), &b.f_map(n)));
        }
    }
    out.with_meta(a.lambda.or(b.lambda), None)
}

/// The scalar by which `ef + fe + h²/2` acts on all interior weight spaces;
/// `Ok(None)` for a module that vanishes on the interior.
pub fn casimir_scalar(m: &WeightModule) -> Result<Option<Q>, Sl2Error> {
    let mut found: Option<Q> = None;
    for n in m.window().interior() {
        if m.dim(n) == 0 {
            continue;
        }
        let s = as_scalar(&m.casimir_at(n)).ok_or(Sl2Error::NotScalar)?;
        match &found {
            Some(prev) if *prev != s => return Err(Sl2Error::NotScalar),
            Some(_) => {}
            None => found = Some(s),
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LadderSignature {
    pub offset: Q,
    pub lo: i64,
    pub hi: i64,
    /// Dimensions at indices `lo..=hi`.
    pub dims: Vec<usize>,
    /// Rank of `e` from index `n+1` to `n`, for `n` in `lo..hi`.
    pub e_ranks: Vec<usize>,
    /// Rank of `f` from index `n` to `n+1`, for `n` in `lo..hi`.
    pub f_ranks: Vec<usize>,
}

impl fmt::Display for LadderSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in (self.lo..=self.hi).enumerate() {
            let w = &self.offset + q(2 * n);
            write!(
                f,
                "n={n:>4} weight={:>6} dim={}",
                format_rational(&w),
                self.dims[i]
            )?;
            if n < self.hi {
                write!(
                    f,
                    "  e({}→{})={} f({}→{})={}",
                    n + 1,
                    n,
                    self.e_ranks[i],
                    n,
                    n + 1,
                    self.f_ranks[i]
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dimensions and edge ranks on the interior of the window.
pub fn signature(m: &WeightModule) -> LadderSignature {
    let w = m.window();
    let (lo, hi) = (w.lo() + 1, w.hi() - 1);
    let dims = (lo..=hi).map(|n| m.dim(n)).collect();
    let e_ranks = (lo..hi).map(|n| m.e_map(n + 1).rank()).collect();
    let f_ranks = (lo..hi).map(|n| m.f_map(n).rank()).collect();
    LadderSignature {
        offset: w.offset().clone(),
        lo,
        hi,
        dims,
        e_ranks,
        f_ranks,
    }
}

/// Simple-module test on the window: thin, contiguous, no vanishing arrows,
/// and shaped like a line, a ray or a segment symmetric about weight 0.
pub fn is_simple_in_window(m: &WeightModule) -> bool {
    let w = m.window();
    let Some((a, b)) = m.interior_support() else {
        return false;
    };
    if (a..=b).any(|n| m.dim(n) != 1) || w.interior().any(|n| m.dim(n) > 1) {
        return false;
    }
    if (a..b).any(|n| m.f_map(n).is_zero() || m.e_map(n + 1).is_zero()) {
        return false;
    }
    let left = a == w.lo() + 1;
    let right = b == w.hi() - 1;
    match (left, right) {
        (true, true) | (true, false) | (false, true) => true,
        (false, false) => m.weight(a) == -m.weight(b),
    }
}

pub fn is_isomorphic_in_window(a: &WeightModule, b: &WeightModule) -> bool {
    let (wa, wb) = (a.window(), b.window());
    if wa.offset() != wb.offset() {
        return false;
    }
    let lo = wa.lo().max(wb.lo());
    let hi = wa.hi().min(wb.hi());
    if hi - lo < 2 {
        return false;
    }
    let common = wa.with_bounds(lo, hi);
    signature(&a.restricted_to(&common)) == signature(&b.restricted_to(&common))
}

/// Non-integral `α` in `(0, 1)` whose coset `−2α−λ+2ℤ` contains the window.
fn nonintegral_alpha(lambda: i64, window: &WeightWindow) -> Option<Q> {
    let a = fract(&(-(window.offset() + q(lambda)) / q(2)));
    (!a.is_zero()).then_some(a)
}

/// Single catalog candidates with central character `χ_λ`, in canonical
/// order.
fn single_candidates(lambda: i64, window: &WeightWindow) -> Vec<CatalogName> {
    use CatalogName as C;
    let mut out = Vec::new();
    if lambda != 1 {
        out.push(C::Lfd((lambda - 1).abs() - 1));
    }
    let mut mus = vec![lambda - 2, -lambda];
    mus.dedup();
    for &mu in &mus {
        out.extend([
            C::Verma(mu),
            C::DualVerma(mu),
            C::VermaMinus(mu),
            C::DualVermaMinus(mu),
        ]);
    }
    for c in [RClassKind::Less, RClassKind::Equal, RClassKind::Greater] {
        if r_class_representative(lambda, c).is_some() {
            out.push(C::RClass(lambda, c));
        }
    }
    if lambda != 1 {
        out.push(C::RClassDual(lambda));
    }
    if let Some(a) = nonintegral_alpha(lambda, window) {
        out.push(C::RNonIntegral(lambda, a));
    }
    out.retain(|c| make_catalog(c, window).is_ok());
    out
}

fn candidates(lambda: i64, window: &WeightWindow) -> Vec<CatalogName> {
    let singles = single_candidates(lambda, window);
    let mut out = singles.clone();
    for i in 0..singles.len() {
        for j in i..singles.len() {
            out.push(CatalogName::sum(singles[i].clone(), singles[j].clone()));
        }
    }
    out
}

/// Canonical catalog name of `m`, matching by ladder signature among modules
/// with central character `χ_λ`.
pub fn identify(m: &WeightModule, lambda: i64) -> Result<CatalogName, Sl2Error> {
    if m.total_interior_dim() == 0 {
        return Ok(CatalogName::Zero);
    }
    let c = casimir_scalar(m)?;
    if c != Some(central_character(lambda)) {
        return Err(Sl2Error::NotInCatalog);
    }
    let win = m.window();
    let sig = signature(m);
    let matches: Vec<CatalogName> = candidates(lambda, win)
        .into_iter()
        .filter(|c| {
            make_catalog(c, win)
                .map(|cm| signature(&cm) == sig)
                .unwrap_or(false)
        })
        .collect();
    match matches.len() {
        0 => Err(Sl2Error::NotInCatalog),
        1 => Ok(matches.into_iter().next().expect("one match")),
        _ => {
            // Candidates that still agree on a larger window are taken to be
            // isomorphic; otherwise this window is too small to decide.
            let wide = win.scaled(2);
            let first = signature(&make_catalog(&matches[0], &wide)?);
            for other in &matches[1..] {
                if signature(&make_catalog(other, &wide)?) != first {
                    let names: Vec<String> = matches.iter().map(ToString::to_string).collect();
                    return Err(Sl2Error::AmbiguousAtWindow(names.join(", ")));
                }
            }
            Ok(matches.into_iter().next().expect("nonempty"))
        }
    }
}

/// Simple modules with central character `χ_λ` whose weights can lie in the
/// window's coset.
pub fn simple_modules(lambda: i64, window: &WeightWindow) -> Vec<CatalogName> {
    match nonintegral_alpha(lambda, window) {
        Some(a) => vec![CatalogName::RNonIntegral(lambda, a)],
        None => {
            let mu = -(lambda - 1).abs() - 1;
            let mut out = Vec::new();
            if lambda != 1 {
                out.push(CatalogName::Lfd((lambda - 1).abs() - 1));
            }
            out.push(CatalogName::Verma(mu));
            out.push(CatalogName::VermaMinus(mu));
            out
        }
    }
}

/// Composition factors with multiplicities, found by solving for the
/// interior character and cross-checked against the edge ranks.
pub fn composition_factors(
    m: &WeightModule,
    lambda: i64,
) -> Result<Vec<(CatalogName, usize)>, Sl2Error> {
    let win = m.window().clone();
    if let Some(d) = win.interior().map(|n| m.dim(n)).max() {
        if d > 2 {
            return Err(Sl2Error::NotThin(d));
        }
    }
    if m.total_interior_dim() == 0 {
        return Ok(vec![]);
    }
    let simples = simple_modules(lambda, &win);
    let mods: Vec<WeightModule> = simples
        .iter()
        .map(|s| make_catalog(s, &win))
        .collect::<Result<_, _>>()?;
    let sigs: Vec<LadderSignature> = mods.iter().map(signature).collect();
    let target = signature(m);

    let mut solutions = Vec::new();
    let k = simples.len();
    let mut mult = vec![0usize; k];
    loop {
        let dims_ok = (0..target.dims.len())
            .all(|i| (0..k).map(|s| mult[s] * sigs[s].dims[i]).sum::<usize>() == target.dims[i]);
        if dims_ok {
            solutions.push(mult.clone());
        }
        // next multiplicity vector in {0,1,2}^k
        let mut i = 0;
        while i < k && mult[i] == 2 {
            mult[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        mult[i] += 1;
    }
    if solutions.len() != 1 {
        return Err(Sl2Error::NoFactorization);
    }
    let mult = solutions.pop().expect("one solution");

    // A factor is a subquotient, so each of its arrows has rank at most the
    // module's. Arrows between different factors come from extensions, so
    // there is no matching upper bound.
    for i in 0..target.e_ranks.len() {
        for s in (0..k).filter(|&s| mult[s] > 0) {
            if sigs[s].e_ranks[i] > target.e_ranks[i] || sigs[s].f_ranks[i] > target.f_ranks[i] {
                return Err(Sl2Error::NoFactorization);
            }
        }
    }
    Ok(simples
        .into_iter()
        .zip(mult)
        .filter(|&(_, n)| n > 0)
        .collect())
}
