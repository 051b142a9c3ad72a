//! Quasi-trisection data from `(Γ, ε)`, the gem-induced-trisection
//! verdict via the twin collapse routes, G-trisection-genus bounds and
//! the census driver.

use serde::{Deserialize, Serialize};

use crate::gem::{Certainty, Color, ColoredGraph};
use crate::genus::{euler_char, genus_sum, CyclicPermutation, GenusError, ManifoldContext};
use crate::moves::{self, MoveError};
use crate::pi1::{self, CollapseOutcome};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TrisectionError {
    #[error("permutation must have ε_4 = 4")]
    NotAnchored,
    #[error("graph has {0} 4̂-residues; normalize to G_s^(4) first")]
    NotSingleHat4(usize),
    #[error("some î-residue (i ∈ Δ_3) is certified non-spherical: color {0}")]
    SingularLowColor(Color),
    #[error("sphere recognition inconclusive on a î-residue of color {0} (pass --assume-ordinary to proceed)")]
    UncertifiedResidue(Color),
    #[error("identity violation: {0}")]
    IdentityViolation(String),
    #[error("collapse routes disagree: presentation {0:?} vs spine {1:?}")]
    RoutesDisagree(CollapseOutcome, CollapseOutcome),
    #[error("no gem-induced report available")]
    NoGemInduced,
    #[error(transparent)]
    Genus(#[from] GenusError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Pi1(#[from] pi1::Pi1Error),
}

/// Partition of `Δ_4` into apex `{ε_4}`, red `{ε_0,ε_2}` and green
/// `{ε_1,ε_3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tricoloring {
    pub apex: Color,
    pub red: (Color, Color),
    pub green: (Color, Color),
}

impl Tricoloring {
    pub fn from_permutation(eps: &CyclicPermutation) -> Self {
        let sorted = |a: Color, b: Color| if a <= b { (a, b) } else { (b, a) };
        Tricoloring {
            apex: eps.at(4),
            red: sorted(eps.at(0), eps.at(2)),
            green: sorted(eps.at(1), eps.at(3)),
        }
    }

    /// Label like `02|13` (red pair first; the red pair contains the
    /// smallest non-apex color).
    pub fn pairing_label(&self) -> String {
        let (r, g) = if self.red.0 <= self.green.0 {
            (self.red, self.green)
        } else {
            (self.green, self.red)
        };
        format!("{}{}|{}{}", r.0, r.1, g.0, g.1)
    }
}

/// The three tricolorings with a given apex, each with a canonical
/// compatible permutation (apex last).
pub fn tricolorings_for_apex(apex: Color, num_colors: usize) -> Vec<(Tricoloring, CyclicPermutation)> {
    let others: Vec<Color> = crate::gem::color_set(num_colors)
        .into_iter()
        .filter(|&c| c != apex)
        .collect();
    let [a, b, c, d] = [others[0], others[1], others[2], others[3]];
    [(b, c, d), (c, b, d), (d, b, c)]
        .into_iter()
        .map(|(x, y, z)| {
            // red = {a, x}, green = {y, z}
            let eps = CyclicPermutation::new(vec![a, y, x, z, apex]);
            (Tricoloring::from_permutation(&eps), eps)
        })
        .collect()
}

/// The 2-dimensional spine of `H₁ ∩ H₂`: one square per apex-colored
/// edge, one edge per `{i, apex}`-colored cycle, each square bounded by
/// the four cycles through its apex edge.
#[derive(Clone, Debug)]
pub struct SpineComplex {
    pub num_squares: usize,
    pub num_edges: usize,
    /// For each square, the four bounding edges (one per non-apex color).
    pub square_edges: Vec<[usize; 4]>,
}

impl SpineComplex {
    pub fn build(g: &ColoredGraph, apex: Color) -> Self {
        let squares = g.edges_of_color(apex);
        let mut square_of = std::collections::HashMap::new();
        for (s, &(u, v)) in squares.iter().enumerate() {
            square_of.insert((u, v), s);
            square_of.insert((v, u), s);
        }
        let mut square_edges = vec![[usize::MAX; 4]; squares.len()];
        let mut num_edges = 0;
        let mut slot = 0;
        for i in g.colors() {
            if i == apex {
                continue;
            }
            let mut seen = vec![false; g.order()];
            for start in 0..g.order() as u32 {
                if seen[start as usize] {
                    continue;
                }
                // Walk the {apex, i}-cycle and attach it to its squares.
                let edge_id = num_edges;
                num_edges += 1;
                let mut v = start;
                loop {
                    seen[v as usize] = true;
                    let w = g.partner(v, apex);
                    seen[w as usize] = true;
                    square_edges[square_of[&(v, w)]][slot] = edge_id;
                    v = g.partner(w, i);
                    if v == start {
                        break;
                    }
                }
            }
            slot += 1;
        }
        SpineComplex {
            num_squares: squares.len(),
            num_edges,
            square_edges,
        }
    }

    /// True when some edge is free (incident to exactly one square).
    pub fn has_free_edge(&self) -> bool {
        let mut count = vec![0usize; self.num_edges];
        for se in &self.square_edges {
            for &e in se {
                count[e] += 1;
            }
        }
        count.contains(&1)
    }
}

/// Collapse of the spine by repeatedly removing a square together with a
/// free edge, with backtracking under the same budget discipline as the
/// presentation route.
pub fn spine_collapse(spine: &SpineComplex, budget: usize) -> pi1::CollapseTrace {
    let words = spine.num_squares.div_ceil(64).max(1);
    let mut alive = vec![u64::MAX; words];
    for s in spine.num_squares..words * 64 {
        alive[s / 64] &= !(1 << (s % 64));
    }
    if spine.num_squares == 0 {
        return pi1::CollapseTrace {
            steps: Vec::new(),
            outcome: CollapseOutcome::Trivialized,
            visited_states: 0,
            square_blocked_seen: false,
        };
    }
    let mut st = SpineSearch {
        spine,
        budget,
        visited: std::collections::HashSet::new(),
        exhausted: false,
    };
    let mut steps = Vec::new();
    let found = spine_dfs(&mut st, &mut alive, &mut steps);
    pi1::CollapseTrace {
        steps,
        outcome: if found {
            CollapseOutcome::Trivialized
        } else if st.exhausted {
            CollapseOutcome::BudgetExhausted
        } else {
            CollapseOutcome::Stuck
        },
        visited_states: st.visited.len(),
        square_blocked_seen: false,
    }
}

struct SpineSearch<'a> {
    spine: &'a SpineComplex,
    budget: usize,
    visited: std::collections::HashSet<Vec<u64>>,
    exhausted: bool,
}

fn spine_dfs(st: &mut SpineSearch, alive: &mut Vec<u64>, steps: &mut Vec<(usize, usize)>) -> bool {
    if alive.iter().all(|&w| w == 0) {
        return true;
    }
    if st.visited.len() >= st.budget {
        st.exhausted = true;
        return false;
    }
    if !st.visited.insert(alive.clone()) {
        return false;
    }
    // Live incidence count per edge.
    let mut count = vec![0usize; st.spine.num_edges];
    let mut witness = vec![usize::MAX; st.spine.num_edges];
    for (s, se) in st.spine.square_edges.iter().enumerate() {
        if alive[s / 64] >> (s % 64) & 1 == 1 {
            for &e in se {
                count[e] += 1;
                witness[e] = s;
            }
        }
    }
    let mut moves: Vec<(usize, usize)> = Vec::new();
    let mut seen_square = std::collections::HashSet::new();
    for e in 0..st.spine.num_edges {
        if count[e] == 1 && seen_square.insert(witness[e]) {
            moves.push((e, witness[e]));
        }
    }
    for (e, s) in moves {
        alive[s / 64] &= !(1 << (s % 64));
        steps.push((e, s));
        if spine_dfs(st, alive, steps) {
            return true;
        }
        steps.pop();
        alive[s / 64] |= 1 << (s % 64);
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrisectionVerdict {
    GemInduced,
    NotCollapsible,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    Closed,
    Boundary,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisectionChecks {
    /// `g_{ε₀ε₁}+g_{ε₁ε₂}+g_{ε₂ε₃}+g_{ε₀ε₃} − 2p = 2 − 2·genus(Σ)`.
    pub surface_euler: bool,
    /// `χ = 2 + genus(Σ) − genus(H₁) − genus(H₂)`.
    pub euler_lemma: bool,
    /// Spine and presentation collapse agree.
    pub routes_agree: bool,
}

/// Per-`(graph, permutation)` record of the quasi-trisection data and the
/// collapse verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrisectionReport {
    pub eps: String,
    pub apex: u8,
    pub pairing: String,
    pub genus_central: i64,
    pub genus_h1: i64,
    pub genus_h2: i64,
    pub chi: i64,
    pub verdict: TrisectionVerdict,
    pub boundary: BoundaryKind,
    pub residues_ordinary: Certainty,
    pub checks: TrisectionChecks,
    pub collapse_steps: usize,
    pub weak_semi_simple: Option<bool>,
}

#[derive(Clone, Copy, Debug)]
pub struct TrisectOptions {
    pub budget: usize,
    /// Treat `unknown` sphere verdicts on î-residues as ordinary.
    pub assume_ordinary: bool,
}

impl Default for TrisectOptions {
    fn default() -> Self {
        TrisectOptions {
            budget: 1_000_000,
            assume_ordinary: false,
        }
    }
}

/// Certifies `Γ ∈ G_s^(4)` for the quasi-trisection: a single
/// `4̂`-residue and ordinary `î`-residues for `i ∈ Δ_3`. Returns the
/// certification certainty and the boundary kind read off the sphere
/// verdict of `Γ_4̂`.
fn certify_gs4(
    g: &ColoredGraph,
    opts: &TrisectOptions,
) -> Result<(Certainty, BoundaryKind), TrisectionError> {
    let hat4: Vec<Color> = g.colors().into_iter().filter(|&c| c != Color(4)).collect();
    let res4 = g.residues(&hat4);
    if res4.count != 1 {
        return Err(TrisectionError::NotSingleHat4(res4.count));
    }
    let mut overall = Certainty::Yes;
    for i in 0..4u8 {
        let hat: Vec<Color> = g.colors().into_iter().filter(|&c| c != Color(i)).collect();
        let res = g.residues(&hat);
        for comp in &res.components {
            match moves::residue_sphere_status(g, &hat, comp, opts.budget.min(20_000)) {
                Certainty::Yes => {}
                Certainty::No => return Err(TrisectionError::SingularLowColor(Color(i))),
                Certainty::Unknown => {
                    if !opts.assume_ordinary {
                        return Err(TrisectionError::UncertifiedResidue(Color(i)));
                    }
                    overall = Certainty::Unknown;
                }
            }
        }
    }
    let boundary = match moves::residue_sphere_status(
        g,
        &hat4,
        &res4.components[0],
        opts.budget.min(20_000),
    ) {
        Certainty::Yes => BoundaryKind::Closed,
        Certainty::No => BoundaryKind::Boundary,
        Certainty::Unknown => BoundaryKind::Unknown,
    };
    Ok((overall, boundary))
}

/// Builds the quasi-trisection record for `(Γ, ε)`: central-surface
/// genus, handlebody genera, Euler characteristic, and the exact
/// identity checks. The collapse verdict is left `Unknown`.
pub fn quasi_trisection(
    g: &ColoredGraph,
    eps: &CyclicPermutation,
    opts: &TrisectOptions,
) -> Result<TrisectionReport, TrisectionError> {
    assert_eq!(g.num_colors(), 5);
    if !eps.is_anchored() {
        return Err(TrisectionError::NotAnchored);
    }
    let (residues_ordinary, boundary) = certify_gs4(g, opts)?;
    let induced = eps.without_position(4);
    let genus_central = genus_sum(g, &induced)?;

    // Independent route to χ(Σ) by the surface cell count.
    let p = g.half_order() as i64;
    let mut pair_sum = 0i64;
    for j in 0..4usize {
        let a = induced[j];
        let b = induced[(j + 1) % 4];
        pair_sum += crate::genus::bicolored_cycle_count(g, a, b) as i64;
    }
    let surface_euler = pair_sum - 2 * p == 2 - 2 * genus_central;
    if !surface_euler {
        return Err(TrisectionError::IdentityViolation(format!(
            "central surface Euler count {} ≠ 2 − 2·{}",
            pair_sum - 2 * p,
            genus_central
        )));
    }

    let ghat = |c: Color| g.residue_count_hat(c) as i64;
    let gtrip = |a: Color, b: Color, c: Color| g.residue_count(&[a, b, c]) as i64;
    let genus_h1 = gtrip(eps.at(1), eps.at(3), eps.at(4)) - ghat(eps.at(0)) - ghat(eps.at(2)) + 1;
    let genus_h2 = gtrip(eps.at(0), eps.at(2), eps.at(4)) - ghat(eps.at(1)) - ghat(eps.at(3)) + 1;

    let chi = euler_char(g, eps)?;
    let euler_lemma = chi == 2 + genus_central - genus_h1 - genus_h2;
    if !euler_lemma {
        return Err(TrisectionError::IdentityViolation(format!(
            "χ = {} but 2 + {} − {} − {} = {}",
            chi,
            genus_central,
            genus_h1,
            genus_h2,
            2 + genus_central - genus_h1 - genus_h2
        )));
    }

    let tri = Tricoloring::from_permutation(eps);
    Ok(TrisectionReport {
        eps: eps.to_string(),
        apex: tri.apex.0,
        pairing: tri.pairing_label(),
        genus_central,
        genus_h1,
        genus_h2,
        chi,
        verdict: TrisectionVerdict::Unknown,
        boundary,
        residues_ordinary,
        checks: TrisectionChecks {
            surface_euler,
            euler_lemma,
            routes_agree: false,
        },
        collapse_steps: 0,
        weak_semi_simple: None,
    })
}

/// Resolves the collapse verdict by running the presentation collapse
/// and the direct spine collapse; the two routes must agree.
pub fn verdict(
    g: &ColoredGraph,
    eps: &CyclicPermutation,
    ctx: &ManifoldContext,
    opts: &TrisectOptions,
) -> Result<TrisectionReport, TrisectionError> {
    let mut report = quasi_trisection(g, eps, opts)?;
    let pres = pi1::presentation(g, Color(4))?;
    let t_pres = pi1::collapse_search(&pres, opts.budget);
    let spine = SpineComplex::build(g, Color(4));
    let t_spine = spine_collapse(&spine, opts.budget);
    let agree = t_pres.outcome == t_spine.outcome;
    if !agree
        && t_pres.outcome != CollapseOutcome::BudgetExhausted
        && t_spine.outcome != CollapseOutcome::BudgetExhausted
    {
        return Err(TrisectionError::RoutesDisagree(t_pres.outcome, t_spine.outcome));
    }
    report.checks.routes_agree = agree;
    report.collapse_steps = t_pres.steps.len();
    report.verdict = match (t_pres.outcome, t_spine.outcome) {
        (CollapseOutcome::Trivialized, _) | (_, CollapseOutcome::Trivialized) => {
            TrisectionVerdict::GemInduced
        }
        (CollapseOutcome::Stuck, CollapseOutcome::Stuck) => TrisectionVerdict::NotCollapsible,
        _ => TrisectionVerdict::Unknown,
    };
    if report.verdict == TrisectionVerdict::GemInduced {
        debug_assert!(pi1::replay_collapse(&pres, &t_pres));
    }
    // Weak semi-simplicity is only defined for crystallizations.
    report.weak_semi_simple = crate::genus::is_weak_semi_simple(g, eps, ctx).ok();
    Ok(report)
}

/// Endpoints of an apex-colored edge.
pub type ApexEdge = (u32, u32);

/// Endpoints of the apex edges of the first and last collapsed squares,
/// for the connected-sum vertex selection of the genus-additivity
/// recipe. Returns `(first, last)` in graph vertex ids.
pub fn collapse_boundary_squares(
    g: &ColoredGraph,
    budget: usize,
) -> Result<(ApexEdge, ApexEdge), TrisectionError> {
    let pres = pi1::presentation(g, Color(4))?;
    let trace = pi1::collapse_search(&pres, budget);
    if trace.outcome != CollapseOutcome::Trivialized {
        return Err(TrisectionError::NoGemInduced);
    }
    let first_gen = trace.steps.first().unwrap().1;
    let last_gen = trace.steps.last().unwrap().1;
    Ok((
        pres.generator_edges[first_gen],
        pres.generator_edges[last_gen],
    ))
}

/// G-trisection-genus bound record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GtgBounds {
    pub lower: i64,
    pub upper: i64,
    pub equality: bool,
    /// The upper bound is achieved by a weak semi-simple crystallization.
    pub weak_semi_simple_achiever: bool,
}

/// Bounds for the G-trisection genus from a batch of reports:
/// the minimum central genus over gem-induced reports above, the Betti
/// bound `β₂ + β₁ + 2(m − β₁)` (and the user-supplied Heegaard genus of
/// the boundary, when present) below.
pub fn gtg_bounds(
    reports: &[TrisectionReport],
    ctx: &ManifoldContext,
    betti: (u32, u32),
    boundary_heegaard: Option<u32>,
) -> Result<GtgBounds, TrisectionError> {
    let gem_induced: Vec<&TrisectionReport> = reports
        .iter()
        .filter(|r| r.verdict == TrisectionVerdict::GemInduced)
        .collect();
    let upper = gem_induced
        .iter()
        .map(|r| r.genus_central)
        .min()
        .ok_or(TrisectionError::NoGemInduced)?;
    let (beta1, beta2) = (betti.0 as i64, betti.1 as i64);
    let mut lower = beta2 + beta1 + 2 * (ctx.m as i64 - beta1);
    if let Some(h) = boundary_heegaard {
        lower = lower.max(h as i64);
    }
    let weak_semi_simple_achiever = gem_induced
        .iter()
        .any(|r| r.genus_central == upper && r.weak_semi_simple == Some(true));
    Ok(GtgBounds {
        lower,
        upper,
        equality: lower == upper,
        weak_semi_simple_achiever,
    })
}

/// One census cell: a graph, an apex color and one of its tricolorings.
#[derive(Clone, Debug)]
pub struct CensusCell {
    pub graph_index: usize,
    pub label: String,
    pub graph: ColoredGraph,
    pub apex: Color,
    pub eps: CyclicPermutation,
    pub pairing: String,
    pub ctx: ManifoldContext,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusRow {
    pub graph: String,
    pub apex: u8,
    pub pairing: String,
    pub verdict: Option<TrisectionVerdict>,
    pub genus_central: Option<i64>,
    pub genus_h1: Option<i64>,
    pub genus_h2: Option<i64>,
    pub chi: Option<i64>,
    pub checks_ok: bool,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexMode {
    /// Boundary mode: color 4 only.
    Fixed4,
    /// Closed mode: sweep all five apex colors by color relabeling.
    AllApices,
}

/// Expands a catalog entry into its census cells. Apex colors other than
/// 4 are handled by relabeling (swap apex ↔ 4); each apex contributes
/// its three tricolorings.
pub fn census_cells(
    graph_index: usize,
    label: &str,
    g: &ColoredGraph,
    mode: ApexMode,
    ctx: ManifoldContext,
) -> Vec<CensusCell> {
    let apexes: Vec<Color> = match mode {
        ApexMode::Fixed4 => vec![Color(4)],
        ApexMode::AllApices => crate::gem::color_set(5),
    };
    let mut cells = Vec::new();
    for apex in apexes {
        let relabeled = if apex == Color(4) {
            g.clone()
        } else {
            let mut perm = [0u8, 1, 2, 3, 4];
            perm.swap(apex.index(), 4);
            match g.relabel_colors(&perm) {
                Ok(h) => h,
                Err(_) => continue,
            }
        };
        for (tri, eps) in tricolorings_for_apex(Color(4), 5) {
            cells.push(CensusCell {
                graph_index,
                label: label.to_string(),
                graph: relabeled.clone(),
                apex,
                eps,
                pairing: tri.pairing_label(),
                ctx,
            });
        }
    }
    cells
}

/// Evaluates one cell; errors are recorded in the row, never raised.
pub fn evaluate_cell(cell: &CensusCell, opts: &TrisectOptions) -> CensusRow {
    let prepared = if cell.graph.residue_count_hat(Color(4)) != 1 {
        moves::normalize_to_gs4(&cell.graph).map(|(g, _)| g)
    } else {
        Ok(cell.graph.clone())
    };
    let result = prepared
        .map_err(TrisectionError::from)
        .and_then(|g| verdict(&g, &cell.eps, &cell.ctx, opts));
    match result {
        Ok(rep) => CensusRow {
            graph: cell.label.clone(),
            apex: cell.apex.0,
            pairing: cell.pairing.clone(),
            verdict: Some(rep.verdict),
            genus_central: Some(rep.genus_central),
            genus_h1: Some(rep.genus_h1),
            genus_h2: Some(rep.genus_h2),
            chi: Some(rep.chi),
            checks_ok: rep.checks.surface_euler && rep.checks.euler_lemma && rep.checks.routes_agree,
            error: None,
        },
        Err(e) => CensusRow {
            graph: cell.label.clone(),
            apex: cell.apex.0,
            pairing: cell.pairing.clone(),
            verdict: None,
            genus_central: None,
            genus_h1: None,
            genus_h2: None,
            chi: None,
            checks_ok: false,
            error: Some(e.to_string()),
        },
    }
}
