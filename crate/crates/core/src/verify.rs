//! The verification table: each row computes some cohomology or catalog
//! module and compares it with the expected isomorphism class.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::cech::{build_complex, cohomology, verify_chain_map};
use crate::charts::{chart_presentation, sl2_generators, ChartId, ExtensionKind};
use crate::scalar::{format_rational, frac, is_integral, q, rem_euclid, Q};
use crate::sl2cat::{
    casimir_scalar, composition_factors, identify, is_isomorphic_in_window, is_simple_in_window,
    make_catalog, minus_twist, r_class_of, relaxed, vee_dual, CatalogName, RClassKind,
};
use crate::weights::{central_character, WeightModule, WeightWindow, DEFAULT_HALF_WIDTH};
use crate::weylops::{
    act_on_basis, formal_adjoint, invert_coordinate, reduce_in_cyclic, Coord, CyclicPresentation,
    DiffOp,
};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub lambdas: Vec<i64>,
    pub alphas: Vec<Q>,
    pub half_width: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            lambdas: (-4..=4).collect(),
            alphas: default_alphas(),
            half_width: DEFAULT_HALF_WIDTH,
        }
    }
}

pub fn default_alphas() -> Vec<Q> {
    vec![
        frac(-7, 2),
        q(-4),
        q(-3),
        q(-2),
        q(-1),
        q(0),
        frac(1, 2),
        q(1),
        q(3),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowResult {
    pub criterion: u8,
    pub row: String,
    pub lambda: i64,
    pub extension: String,
    pub alpha: Option<Q>,
    pub passed: bool,
    pub detail: String,
}

impl RowResult {
    fn sort_key(&self) -> (i64, &str, Option<&Q>, u8, &str) {
        (
            self.lambda,
            &self.extension,
            self.alpha.as_ref(),
            self.criterion,
            &self.row,
        )
    }
}

fn cmp_rows(a: &RowResult, b: &RowResult) -> Ordering {
    a.sort_key().cmp(&b.sort_key())
}

/// Work item: one row evaluation.
struct Task {
    criterion: u8,
    row: String,
    lambda: i64,
    extension: String,
    alpha: Option<Q>,
    run: Box<dyn Fn() -> Result<(), String> + Send + Sync>,
}

impl Task {
    fn new(
        criterion: u8,
        row: impl Into<String>,
        lambda: i64,
        kind: Option<&ExtensionKind>,
        run: impl Fn() -> Result<(), String> + Send + Sync + 'static,
    ) -> Self {
        Task {
            criterion,
            row: row.into(),
            lambda,
            extension: kind.map_or_else(|| "-".to_string(), |k| k.name().to_string()),
            alpha: kind.and_then(|k| k.alpha().cloned()),
            run: Box::new(run),
        }
    }
}

/// `(H⁰, H¹)` of `kind ⊗ O(λ)` on a window of the given half-width.
pub fn compute(
    kind: &ExtensionKind,
    lambda: i64,
    half: i64,
) -> Result<(WeightModule, WeightModule), String> {
    let window = WeightWindow::for_parameters(lambda, &kind.coset_alpha(), half);
    let c = build_complex(kind, lambda, &window).map_err(|e| e.to_string())?;
    if !verify_chain_map(&c) {
        return Err(format!("{kind}: differential is not a chain map"));
    }
    Ok(cohomology(&c))
}

/// Checks that `m` is isomorphic to the catalog module `expected`, by
/// comparing canonical identifications.
fn expect_iso(
    m: &WeightModule,
    lambda: i64,
    expected: &CatalogName,
    what: &str,
) -> Result<(), String> {
    let want = make_catalog(expected, m.window()).map_err(|e| e.to_string())?;
    if !is_isomorphic_in_window(m, &want) {
        let got = identify(m, lambda).map_or_else(|e| format!("<{e}>"), |n| n.to_string());
        return Err(format!("{what}: expected {expected}, got {got}"));
    }
    Ok(())
}

fn expect_zero(m: &WeightModule, what: &str) -> Result<(), String> {
    if m.total_interior_dim() != 0 {
        return Err(format!(
            "{what}: expected 0, got total dimension {}",
            m.total_interior_dim()
        ));
    }
    Ok(())
}

fn expect_dim(m: &WeightModule, d: usize, what: &str) -> Result<(), String> {
    if m.total_interior_dim() != d {
        return Err(format!(
            "{what}: expected dimension {d}, got {}",
            m.total_interior_dim()
        ));
    }
    Ok(())
}

fn integral_alphas(cfg: &VerifyConfig) -> Vec<Q> {
    cfg.alphas
        .iter()
        .filter(|a| is_integral(a))
        .cloned()
        .collect()
}

fn nonintegral_alphas(cfg: &VerifyConfig) -> Vec<Q> {
    cfg.alphas
        .iter()
        .filter(|a| !is_integral(a))
        .cloned()
        .collect()
}

fn criterion1(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    cfg.lambdas
        .iter()
        .map(|&l| {
            let k = ExtensionKind::Omega;
            let row = match l {
                l if l >= 2 => format!("H0(omega) = L({}), H1 = 0", l - 2),
                l if l <= 0 => format!("H0(omega) = 0, H1 = L({})", -l),
                _ => "H0(omega) = H1(omega) = 0".to_string(),
            };
            Task::new(1, row, l, Some(&k.clone()), move || {
                let (h0, h1) = compute(&k, l, half)?;
                if l >= 2 {
                    expect_iso(&h0, l, &CatalogName::Lfd(l - 2), "H0")?;
                    expect_dim(&h0, (l - 1) as usize, "H0")?;
                    expect_zero(&h1, "H1")
                } else if l <= 0 {
                    expect_zero(&h0, "H0")?;
                    expect_iso(&h1, l, &CatalogName::Lfd(-l), "H1")?;
                    expect_dim(&h1, (1 - l) as usize, "H1")
                } else {
                    expect_zero(&h0, "H0")?;
                    expect_zero(&h1, "H1")
                }
            })
        })
        .collect()
}

fn criterion2(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    let mut out = Vec::new();
    for &l in &cfg.lambdas {
        let k = ExtensionKind::JxDot;
        out.push(Task::new(
            2,
            format!("H0(j_x_dot) = M({})^∨, H1 = 0", l - 2),
            l,
            Some(&k.clone()),
            move || {
                let (h0, h1) = compute(&k, l, half)?;
                expect_iso(&h0, l, &CatalogName::DualVerma(l - 2), "H0")?;
                expect_zero(&h1, "H1")
            },
        ));
        let k = ExtensionKind::IotaX;
        out.push(Task::new(
            2,
            format!("H0(iota_x) = M({}), H1 = 0", -l),
            l,
            Some(&k.clone()),
            move || {
                let (h0, h1) = compute(&k, l, half)?;
                expect_iso(&h0, l, &CatalogName::Verma(-l), "H0")?;
                expect_zero(&h1, "H1")
            },
        ));
        let k = ExtensionKind::JxShriek;
        let mu = if l >= 1 { l - 2 } else { -l };
        let row = if l <= 0 {
            format!("H0(j_x_shriek) = M({mu}), H1 = L({})", -l)
        } else {
            format!("H0(j_x_shriek) = M({mu}), H1 = 0")
        };
        out.push(Task::new(2, row, l, Some(&k.clone()), move || {
            let (h0, h1) = compute(&k, l, half)?;
            expect_iso(&h0, l, &CatalogName::Verma(mu), "H0")?;
            if l <= 0 {
                expect_iso(&h1, l, &CatalogName::Lfd(-l), "H1")
            } else {
                expect_zero(&h1, "H1")
            }
        }));
    }
    out
}

fn criterion3(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    let mut out = Vec::new();
    for &l in &cfg.lambdas {
        for a in nonintegral_alphas(cfg) {
            let k = ExtensionKind::JDot(a.clone());
            out.push(Task::new(
                3,
                "H0(j_dot) simple, dense, Casimir χ_λ; H1 = 0",
                l,
                Some(&k.clone()),
                move || {
                    let (h0, h1) = compute(&k, l, half)?;
                    if !is_simple_in_window(&h0) {
                        return Err("H0 is not simple in the window".into());
                    }
                    let c = casimir_scalar(&h0).map_err(|e| e.to_string())?;
                    if c != Some(central_character(l)) {
                        return Err(format!(
                            "H0 Casimir {:?}, expected {}",
                            c.map(|c| format_rational(&c)),
                            format_rational(&central_character(l))
                        ));
                    }
                    let coset = rem_euclid(&(-q(2) * &a - q(l)), 2);
                    if h0.window().offset() != &coset {
                        return Err("H0 weights outside −2α−λ+2Z".into());
                    }
                    let w = h0.window();
                    if w.interior().any(|n| h0.dim(n) != 1) {
                        return Err("H0 is not one-dimensional on every weight".into());
                    }
                    expect_zero(&h1, "H1")
                },
            ));
        }
    }
    out
}

fn criterion4(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    cfg.lambdas
        .iter()
        .map(|&l| {
            let k = ExtensionKind::JDot(q(0));
            let expected = match l {
                l if l <= 0 => CatalogName::RClass(l, RClassKind::Equal),
                l if l >= 2 => CatalogName::RClassDual(l),
                _ => CatalogName::sum(CatalogName::Verma(-1), CatalogName::VermaMinus(-1)),
            };
            Task::new(
                4,
                format!("H0(j_dot, α=0) = {expected}, H1 = 0"),
                l,
                Some(&k.clone()),
                move || {
                    let (h0, h1) = compute(&k, l, half)?;
                    expect_iso(&h0, l, &expected, "H0")?;
                    expect_zero(&h1, "H1")
                },
            )
        })
        .collect()
}

fn criterion5(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    cfg.lambdas
        .iter()
        .map(|&l| {
            let k = ExtensionKind::JShriek(q(0));
            let expected = if l >= 2 {
                CatalogName::RClass(l, RClassKind::Equal)
            } else {
                CatalogName::sum(CatalogName::Verma(-l), CatalogName::VermaMinus(-l))
            };
            let h1_row = if l <= 0 {
                format!("L({})", -l)
            } else {
                "0".to_string()
            };
            Task::new(
                5,
                format!("H0(j_shriek, α=0) = {expected}, H1 = {h1_row}"),
                l,
                Some(&k.clone()),
                move || {
                    let (h0, h1) = compute(&k, l, half)?;
                    expect_iso(&h0, l, &expected, "H0")?;
                    if l <= 0 {
                        expect_iso(&h1, l, &CatalogName::Lfd(-l), "H1")
                    } else {
                        expect_zero(&h1, "H1")
                    }
                },
            )
        })
        .collect()
}

fn criterion6(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    let mut out = Vec::new();
    for &l in &cfg.lambdas {
        for a in integral_alphas(cfg) {
            for (k, class) in [
                (ExtensionKind::JShriekXDotZ(a.clone()), RClassKind::Less),
                (ExtensionKind::JDotXShriekZ(a.clone()), RClassKind::Greater),
            ] {
                let expected = CatalogName::RClass(l, class);
                out.push(Task::new(
                    6,
                    format!("H0 = {expected}, H1 = 0"),
                    l,
                    Some(&k.clone()),
                    move || {
                        let (h0, h1) = compute(&k, l, half)?;
                        expect_iso(&h0, l, &expected, "H0")?;
                        expect_zero(&h1, "H1")
                    },
                ));
            }
        }
    }
    out
}

/// Composition factors of `R(λ,<|=|>)`: the two simple Vermas always, plus
/// the finite-dimensional simple when `λ ≠ 1`.
pub fn expected_r_factors(lambda: i64) -> Vec<(CatalogName, usize)> {
    let mu = -(lambda - 1).abs() - 1;
    let mut out = Vec::new();
    if lambda != 1 {
        out.push((CatalogName::Lfd((lambda - 1).abs() - 1), 1));
    }
    out.push((CatalogName::Verma(mu), 1));
    out.push((CatalogName::VermaMinus(mu), 1));
    out
}

fn criterion7(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    let mut out = Vec::new();
    for &l in &cfg.lambdas {
        for a in integral_alphas(cfg) {
            let ai = crate::scalar::to_i64(&a).expect("integral");
            let class = r_class_of(l, ai);
            let row = format!("R({l},{ai}) is in class {}", CatalogName::RClass(l, class));
            out.push(Task::new(7, row, l, None, move || {
                let w = WeightWindow::for_parameters(l, &a, half);
                let m = relaxed(l, &a, &w).map_err(|e| e.to_string())?;
                let got = identify(&m, l).map_err(|e| e.to_string())?;
                let want = CatalogName::RClass(l, class);
                if got != want {
                    return Err(format!("identified as {got}, expected {want}"));
                }
                Ok(())
            }));
        }
        for class in [RClassKind::Less, RClassKind::Equal, RClassKind::Greater] {
            let name = CatalogName::RClass(l, class);
            if l == 1 && class == RClassKind::Equal {
                continue;
            }
            out.push(Task::new(
                7,
                format!("composition factors of {name}"),
                l,
                None,
                move || {
                    let w = WeightWindow::for_parameters(l, &q(0), half);
                    let m = make_catalog(&name, &w).map_err(|e| e.to_string())?;
                    let got = composition_factors(&m, l).map_err(|e| e.to_string())?;
                    let want = expected_r_factors(l);
                    if got != want {
                        return Err(format!(
                            "factors {}, expected {}",
                            show_factors(&got),
                            show_factors(&want)
                        ));
                    }
                    Ok(())
                },
            ));
        }
    }
    out
}

pub fn show_factors(f: &[(CatalogName, usize)]) -> String {
    let parts: Vec<String> = f.iter().map(|(n, m)| format!("{n}×{m}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn criterion8(cfg: &VerifyConfig) -> Vec<Task> {
    let half = cfg.half_width;
    let mut out = Vec::new();
    for &l in &cfg.lambdas {
        for k in ExtensionKind::all(&cfg.alphas) {
            let kk = k.clone();
            out.push(Task::new(
                8,
                "chain map, Casimir χ_λ on H0 and H1, functor involutions",
                l,
                Some(&k),
                move || {
                    let (h0, h1) = compute(&kk, l, half)?;
                    for (m, what) in [(&h0, "H0"), (&h1, "H1")] {
                        let c = casimir_scalar(m).map_err(|e| format!("{what}: {e}"))?;
                        if c.is_some() && c != Some(central_character(l)) {
                            return Err(format!("{what}: Casimir is not ½λ(λ−2)"));
                        }
                        if minus_twist(&minus_twist(m)) != *m || vee_dual(&vee_dual(m)) != *m {
                            return Err(format!("{what}: functor is not involutive"));
                        }
                        if !m.bracket_holds() {
                            return Err(format!("{what}: [e,f] ≠ h"));
                        }
                    }
                    if l >= 2 {
                        expect_zero(&h1, "H1 for λ ≥ 2")?;
                    }
                    Ok(())
                },
            ));
        }

        let k = ExtensionKind::JDot(q(0));
        out.push(Task::new(
            8,
            "character additivity along 0 → j_x_dot → j_dot → iota_z → 0",
            l,
            Some(&k),
            move || {
                additivity(
                    l,
                    half,
                    &ExtensionKind::JxDot,
                    &ExtensionKind::JDot(q(0)),
                    &ExtensionKind::IotaZ,
                )
            },
        ));
        let k = ExtensionKind::JShriek(q(0));
        out.push(Task::new(
            8,
            "character additivity along 0 → iota_z → j_shriek → j_x_shriek → 0",
            l,
            Some(&k),
            move || {
                additivity(
                    l,
                    half,
                    &ExtensionKind::IotaZ,
                    &ExtensionKind::JShriek(q(0)),
                    &ExtensionKind::JxShriek,
                )
            },
        ));

        let mut pairs = vec![
            (ExtensionKind::JxDot, ExtensionKind::JzDot),
            (ExtensionKind::JxShriek, ExtensionKind::JzShriek),
        ];
        for a in &cfg.alphas {
            pairs.push((
                ExtensionKind::JShriekXDotZ(a.clone()),
                ExtensionKind::JDotXShriekZ(-a),
            ));
        }
        for (a, b) in pairs {
            let ka = a.clone();
            out.push(Task::new(
                8,
                format!("mirror: H(M⁻) ≅ H(M)⁻ for M = {a}"),
                l,
                Some(&a),
                move || {
                    debug_assert_eq!(ka.mirror(), b);
                    let (a0, a1) = compute(&ka, l, half)?;
                    let (b0, b1) = compute(&b, l, half)?;
                    for (x, y, what) in [(&a0, &b0, "H0"), (&a1, &b1, "H1")] {
                        if !is_isomorphic_in_window(&minus_twist(x), y) {
                            return Err(format!(
                                "{what} of {b} is not the minus twist of {what} of {ka}"
                            ));
                        }
                    }
                    Ok(())
                },
            ));
        }
    }
    out.push(Task::new(
        8,
        "formal adjoint and coordinate inversion are involutions",
        0,
        None,
        || {
            for p in sample_ops(Coord::X, true) {
                if formal_adjoint(&formal_adjoint(&p)) != p {
                    return Err(format!("adjoint of adjoint of {p}"));
                }
                let back = invert_coordinate(&invert_coordinate(&p).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if back != p {
                    return Err(format!("double inversion of {p}"));
                }
            }
            Ok(())
        },
    ));
    out
}

/// A fixed spread of operators with small exponents.
pub fn sample_ops(coord: Coord, laurent: bool) -> Vec<DiffOp> {
    let mut out = Vec::new();
    let amin = if laurent { -3 } else { 0 };
    for a in amin..=3 {
        for b in 0..=3u32 {
            let c = frac(2 * a + 1, (b as i64) + 1);
            let terms = vec![(a, b, c), (a.max(amin + 1) - 1, b / 2, q(b as i64 - 2))];
            out.push(DiffOp::from_terms(coord, laurent, terms).expect("valid exponents"));
        }
    }
    out
}

fn additivity(
    lambda: i64,
    half: i64,
    sub: &ExtensionKind,
    mid: &ExtensionKind,
    quot: &ExtensionKind,
) -> Result<(), String> {
    let (s0, s1) = compute(sub, lambda, half)?;
    let (m0, m1) = compute(mid, lambda, half)?;
    let (q0, q1) = compute(quot, lambda, half)?;
    for n in m0.window().interior() {
        let euler = |h0: &WeightModule, h1: &WeightModule| h0.dim(n) as i64 - h1.dim(n) as i64;
        if euler(&m0, &m1) != euler(&s0, &s1) + euler(&q0, &q1) {
            return Err(format!("Euler characteristic not additive at n={n}"));
        }
        if m0.dim(n) != s0.dim(n) + q0.dim(n) {
            return Err(format!("H0 dimension not additive at n={n}"));
        }
    }
    Ok(())
}

/// Every presentation used by some chart, for the `α` grid.
pub fn all_presentations(alphas: &[Q]) -> Vec<(ChartId, CyclicPresentation)> {
    let mut out: Vec<(ChartId, CyclicPresentation)> = Vec::new();
    for k in ExtensionKind::all(alphas) {
        for chart in [ChartId::Cx, ChartId::Cz, ChartId::Cstar] {
            if let Some(p) = chart_presentation(&k, chart) {
                if !out.iter().any(|(c, q)| *c == chart && *q == p) {
                    out.push((chart, p));
                }
            }
        }
    }
    out
}

/// Compares the closed-form action of every generator with raw rewriting.
pub fn oracle_agreement(
    chart: ChartId,
    pres: &CyclicPresentation,
    lambda: i64,
    range: std::ops::RangeInclusive<i64>,
) -> Result<(), String> {
    let (e, h, f) = sl2_generators(chart, lambda);
    for (name, g) in [("e", e), ("h", h), ("f", f)] {
        let closed = act_on_basis(pres, &g).map_err(|e| e.to_string())?;
        for n in range.clone().filter(|&n| pres.contains(n)) {
            let a = closed
                .apply(n)
                .map_err(|e| format!("{name} closed form at {n}: {e}"))?;
            let b = reduce_in_cyclic(&g, pres, n)
                .map_err(|e| format!("{name} rewriting at {n}: {e}"))?;
            let b: Vec<(i64, Q)> = b.into_iter().collect();
            if a != b {
                return Err(format!(
                    "{name} on {pres} at n={n}: closed form {a:?} vs rewriting {b:?}"
                ));
            }
        }
    }
    Ok(())
}

fn criterion9(cfg: &VerifyConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for &l in &cfg.lambdas {
        for (chart, p) in all_presentations(&cfg.alphas) {
            out.push(Task::new(
                9,
                format!("closed forms = rewriting on {chart}: {p}"),
                l,
                None,
                move || oracle_agreement(chart, &p, l, -12..=12),
            ));
        }
    }
    out
}

fn tasks(criterion: u8, cfg: &VerifyConfig) -> Vec<Task> {
    match criterion {
        1 => criterion1(cfg),
        2 => criterion2(cfg),
        3 => criterion3(cfg),
        4 => criterion4(cfg),
        5 => criterion5(cfg),
        6 => criterion6(cfg),
        7 => criterion7(cfg),
        8 => criterion8(cfg),
        9 => criterion9(cfg),
        _ => vec![],
    }
}

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Evaluates the rows of one criterion; rows come back sorted by
/// `(λ, extension, α)`.
pub fn verify_criterion(criterion: u8, cfg: &VerifyConfig) -> Vec<RowResult> {
    run_tasks(tasks(criterion, cfg))
}

/// Evaluates every row.
pub fn verify_all(cfg: &VerifyConfig) -> Vec<RowResult> {
    run_tasks(CRITERIA.iter().flat_map(|&c| tasks(c, cfg)).collect())
}

fn run_tasks(tasks: Vec<Task>) -> Vec<RowResult> {
    let mut rows: Vec<RowResult> = tasks
        .into_par_iter()
        .map(|t| {
            let outcome = (t.run)();
            RowResult {
                criterion: t.criterion,
                row: t.row,
                lambda: t.lambda,
                extension: t.extension,
                alpha: t.alpha,
                passed: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect();
    rows.sort_by(cmp_rows);
    rows
}
