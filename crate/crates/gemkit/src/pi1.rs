//! Fundamental-group presentations extracted from gems, integer
//! abelianization, and the collapse-move search underlying the
//! trisection criterion.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::gem::{Color, ColoredGraph};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("presentation extraction needs a bipartite graph")]
    NotBipartite,
    #[error("color {0} out of range")]
    BadColor(Color),
    #[error("relator references a dead generator")]
    CorruptPresentation,
}

/// Letters are non-zero integers: `+(g+1)` / `−(g+1)` for generator `g`.
pub type Letter = i32;

/// A finite presentation with cyclic relator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub num_generators: usize,
    pub relators: Vec<Vec<Letter>>,
    /// Endpoints of the edge behind each generator (empty for hand-built
    /// presentations).
    pub generator_edges: Vec<(u32, u32)>,
}

impl GroupPresentation {
    pub fn hand_built(num_generators: usize, relators: Vec<Vec<Letter>>) -> Self {
        GroupPresentation {
            num_generators,
            relators,
            generator_edges: Vec::new(),
        }
    }
}

/// Extracts the presentation `< X_i | R_i ∪ R̄_i >` of the fundamental
/// group of the represented singular manifold:
/// `X_i` ↔ `i`-colored edges, one relator per `{i,j}`-colored cycle
/// (`j ≠ i`), plus one length-1 relator per edge of a minimal set of
/// `i`-colored edges connecting `Γ_î`.
///
/// Letters are signed by the bipartition: an `i`-edge traversed from its
/// class-0 endpoint is positive.
pub fn presentation(g: &ColoredGraph, i: Color) -> Result<GroupPresentation, Pi1Error> {
    if i.index() >= g.num_colors() {
        return Err(Pi1Error::BadColor(i));
    }
    if !g.is_bipartite() {
        return Err(Pi1Error::NotBipartite);
    }
    let gen_edges = g.edges_of_color(i);
    let mut gen_of = std::collections::HashMap::new();
    for (idx, &(u, v)) in gen_edges.iter().enumerate() {
        gen_of.insert((u, v), idx);
        gen_of.insert((v, u), idx);
    }
    let letter = |from: u32, to: u32| -> Letter {
        let idx = gen_of[&(from, to)] as Letter + 1;
        if g.vertex_class(from) == Some(0) {
            idx
        } else {
            -idx
        }
    };
    let mut relators = Vec::new();
    for j in g.colors() {
        if j == i {
            continue;
        }
        let mut seen = vec![false; g.order()];
        for start in 0..g.order() as u32 {
            if seen[start as usize] {
                continue;
            }
            // Walk the {i,j}-cycle through `start`, i-edge first from a
            // class-0 vertex so every letter comes out positive.
            let s = if g.vertex_class(start) == Some(0) {
                start
            } else {
                g.partner(start, i)
            };
            let mut word = Vec::new();
            let mut v = s;
            loop {
                seen[v as usize] = true;
                let w = g.partner(v, i);
                seen[w as usize] = true;
                word.push(letter(v, w));
                v = g.partner(w, j);
                if v == s {
                    break;
                }
            }
            relators.push(word);
        }
    }
    // R̄_i: a minimal set of i-edges connecting the î-residues.
    let hat: Vec<Color> = g.colors().into_iter().filter(|&c| c != i).collect();
    let res = g.residues(&hat);
    if res.count > 1 {
        let mut comp_of = vec![0usize; g.order()];
        for (ci, comp) in res.components.iter().enumerate() {
            for &v in comp {
                comp_of[v as usize] = ci;
            }
        }
        let mut uf = crate::gem::UnionFind::new(res.count);
        for (idx, &(u, v)) in gen_edges.iter().enumerate() {
            let (a, b) = (comp_of[u as usize], comp_of[v as usize]);
            if uf.find(a) != uf.find(b) {
                uf.union(a, b);
                relators.push(vec![idx as Letter + 1]);
            }
        }
    }
    Ok(GroupPresentation {
        num_generators: gen_edges.len(),
        relators,
        generator_edges: gen_edges,
    })
}

/// Smith normal form diagonal of an integer matrix (destructive).
fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    'block: while r0 < rows && c0 < cols {
        // Move the entry of least non-zero magnitude into the pivot slot.
        let mut pivot: Option<(usize, usize)> = None;
        for r in r0..rows {
            for c in c0..cols {
                if m[r][c] != 0
                    && pivot.is_none_or(|(pr, pc)| m[r][c].abs() < m[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(r0, pr);
        for row in m.iter_mut() {
            row.swap(c0, pc);
        }
        let p = m[r0][c0];
        // Clear the pivot column; a non-zero remainder is strictly
        // smaller than the pivot, so promote it and restart the block.
        for r in r0 + 1..rows {
            let q = m[r][c0] / p;
            if q != 0 {
                for c in c0..cols {
                    m[r][c] -= q * m[r0][c];
                }
            }
            if m[r][c0] != 0 {
                m.swap(r0, r);
                continue 'block;
            }
        }
        // Same for the pivot row.
        for c in c0 + 1..cols {
            let q = m[r0][c] / p;
            if q != 0 {
                for r in r0..rows {
                    m[r][c] -= q * m[r][c0];
                }
            }
            if m[r0][c] != 0 {
                for row in m.iter_mut() {
                    row.swap(c0, c);
                }
                continue 'block;
            }
        }
        diag.push(p.abs());
        r0 += 1;
        c0 += 1;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i], diag[j]);
            if b % a != 0 {
                let g = gcd(a, b);
                diag[i] = g;
                diag[j] = a / g * b;
            }
        }
    }
    diag
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Abelianization `(β₁, torsion)` from the integer normal form of the
/// relator-exponent matrix.
pub fn abelianization(p: &GroupPresentation) -> (u32, Vec<u64>) {
    let mut matrix = vec![vec![0i128; p.num_generators]; p.relators.len()];
    for (r, word) in p.relators.iter().enumerate() {
        for &l in word {
            let g = l.unsigned_abs() as usize - 1;
            matrix[r][g] += if l > 0 { 1 } else { -1 };
        }
    }
    let diag = smith_diagonal(matrix);
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion: Vec<u64> = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    (
        (p.num_generators - rank) as u32,
        torsion,
    )
}

/// Outcome of the collapse search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollapseOutcome {
    /// A move sequence emptied the generator set; the trace replays.
    Trivialized,
    /// Exhaustive search proved no sequence exists.
    Stuck,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollapseTrace {
    /// `(relator index, generator index)` per applied move, with indices
    /// referring to the original presentation.
    pub steps: Vec<(usize, usize)>,
    pub outcome: CollapseOutcome,
    pub visited_states: usize,
    /// True when some explored dead end contained a relator reduced to a
    /// square `x²`, which move (8) does not unlock.
    pub square_blocked_seen: bool,
}

struct SearchCtx<'a> {
    relators: &'a [Vec<Letter>],
    budget: usize,
    visited: HashSet<Vec<u64>>,
    exhausted: bool,
    square_blocked: bool,
}

/// Searches for an order of moves of type (8) — a relator equal to a
/// single letter `x_s^{±1}` permits deleting `x_s` everywhere — that
/// empties the generator set. Greedy application comes first (the first
/// DFS branch); on dead ends the search backtracks over move choices
/// with visited-state memoization, so `Stuck` is a proof that no
/// sequence exists.
pub fn collapse_search(p: &GroupPresentation, budget: usize) -> CollapseTrace {
    let words = p.num_generators.div_ceil(64).max(1);
    let mut alive = vec![u64::MAX; words];
    for g in p.num_generators..words * 64 {
        alive[g / 64] &= !(1 << (g % 64));
    }
    if p.num_generators == 0 {
        return CollapseTrace {
            steps: Vec::new(),
            outcome: CollapseOutcome::Trivialized,
            visited_states: 0,
            square_blocked_seen: false,
        };
    }
    let mut ctx = SearchCtx {
        relators: &p.relators,
        budget,
        visited: HashSet::new(),
        exhausted: false,
        square_blocked: false,
    };
    let mut steps = Vec::new();
    let found = dfs(&mut ctx, &mut alive, &mut steps);
    let outcome = if found {
        CollapseOutcome::Trivialized
    } else if ctx.exhausted {
        CollapseOutcome::BudgetExhausted
    } else {
        CollapseOutcome::Stuck
    };
    CollapseTrace {
        steps,
        outcome,
        visited_states: ctx.visited.len(),
        square_blocked_seen: ctx.square_blocked,
    }
}

fn bit(alive: &[u64], g: usize) -> bool {
    alive[g / 64] >> (g % 64) & 1 == 1
}

/// The cyclically free-reduced restriction of a relator to live letters.
fn reduced_word(word: &[Letter], alive: &[u64]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if !bit(alive, l.unsigned_abs() as usize - 1) {
            continue;
        }
        if out.last().is_some_and(|&p| p == -l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic cancellation across the wrap-around
    while out.len() >= 2 && *out.first().unwrap() == -*out.last().unwrap() {
        out.pop();
        out.remove(0);
    }
    out
}

fn dfs(ctx: &mut SearchCtx, alive: &mut Vec<u64>, steps: &mut Vec<(usize, usize)>) -> bool {
    if alive.iter().all(|&w| w == 0) {
        return true;
    }
    if ctx.visited.len() >= ctx.budget {
        ctx.exhausted = true;
        return false;
    }
    if !ctx.visited.insert(alive.clone()) {
        return false;
    }
    let mut moves: Vec<(usize, usize)> = Vec::new();
    let mut seen_gen = HashSet::new();
    for (ri, word) in ctx.relators.iter().enumerate() {
        let red = reduced_word(word, alive);
        if red.len() == 1 {
            let g = red[0].unsigned_abs() as usize - 1;
            if seen_gen.insert(g) {
                moves.push((ri, g));
            }
        } else if red.len() == 2 && red[0] == red[1] {
            ctx.square_blocked = true;
        }
    }
    for (ri, g) in moves {
        alive[g / 64] &= !(1 << (g % 64));
        steps.push((ri, g));
        if dfs(ctx, alive, steps) {
            return true;
        }
        steps.pop();
        alive[g / 64] |= 1 << (g % 64);
    }
    false
}

/// Replays a trivializing trace against the original presentation;
/// returns true when every step is legal and the final generator set is
/// empty.
pub fn replay_collapse(p: &GroupPresentation, trace: &CollapseTrace) -> bool {
    let words = p.num_generators.div_ceil(64).max(1);
    let mut alive = vec![u64::MAX; words];
    for g in p.num_generators..words * 64 {
        alive[g / 64] &= !(1 << (g % 64));
    }
    for &(ri, g) in &trace.steps {
        let Some(word) = p.relators.get(ri) else {
            return false;
        };
        let red = reduced_word(word, &alive);
        if red.len() != 1 || red[0].unsigned_abs() as usize - 1 != g || !bit(&alive, g) {
            return false;
        }
        alive[g / 64] &= !(1 << (g % 64));
    }
    alive.iter().all(|&w| w == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gem::order_two_graph;

    #[test]
    fn order_two_presentation_collapses_in_one_step() {
        let g = order_two_graph(5);
        let p = presentation(&g, Color(4)).unwrap();
        assert_eq!(p.num_generators, 1);
        assert_eq!(p.relators.len(), 4);
        assert!(p.relators.iter().all(|r| r.len() == 1));
        let t = collapse_search(&p, 1_000_000);
        assert_eq!(t.outcome, CollapseOutcome::Trivialized);
        assert_eq!(t.steps.len(), 1);
        assert!(replay_collapse(&p, &t));
        assert_eq!(abelianization(&p), (0, vec![]));
    }

    #[test]
    fn forced_two_step_collapse() {
        // <x, y | xy, y>
        let p = GroupPresentation::hand_built(2, vec![vec![1, 2], vec![2]]);
        let t = collapse_search(&p, 1000);
        assert_eq!(t.outcome, CollapseOutcome::Trivialized);
        assert_eq!(t.steps, vec![(1, 1), (0, 0)]);
        assert!(replay_collapse(&p, &t));
    }

    #[test]
    fn commutator_is_stuck() {
        // <x, y | x y x⁻¹ y⁻¹>: no length-1 relator ever appears.
        let p = GroupPresentation::hand_built(2, vec![vec![1, 2, -1, -2]]);
        let t = collapse_search(&p, 1_000_000);
        assert_eq!(t.outcome, CollapseOutcome::Stuck);
        assert!(t.visited_states < 10);
    }

    #[test]
    fn trivial_and_torsion_abelianizations() {
        let p = GroupPresentation::hand_built(0, vec![]);
        assert_eq!(abelianization(&p), (0, vec![]));
        let z2 = GroupPresentation::hand_built(1, vec![vec![1, 1]]);
        assert_eq!(abelianization(&z2), (0, vec![2]));
        let z = GroupPresentation::hand_built(1, vec![]);
        assert_eq!(abelianization(&z), (1, vec![]));
        // Z ⊕ Z/3 from <x, y | x³ y³, y⁻³ ... > keep it simple: x³
        let mixed = GroupPresentation::hand_built(2, vec![vec![1, 1, 1]]);
        assert_eq!(abelianization(&mixed), (1, vec![3]));
    }

    #[test]
    fn free_reduction_is_cyclic() {
        // With generator 2 dead, (x y x⁻¹ y⁻¹) reduces to the empty word.
        let alive = vec![0b01u64];
        let red = reduced_word(&[1, 2, -1, -2], &alive);
        assert!(red.is_empty());
    }

    #[test]
    fn collapse_outcome_invariant_under_relabeling() {
        let p = GroupPresentation::hand_built(3, vec![vec![1], vec![1, 2, 3], vec![3]]);
        let q = GroupPresentation::hand_built(3, vec![vec![3], vec![3, 1, 2], vec![2]]);
        let (tp, tq) = (collapse_search(&p, 1000), collapse_search(&q, 1000));
        assert_eq!(tp.outcome, tq.outcome);
    }
}
