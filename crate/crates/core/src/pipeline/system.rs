use std::collections::BTreeSet;

use itertools::Itertools;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gf2::{solve_mod_pow2, DyadicVector, ModRow, ModSystem};
use crate::graphstate::VertexSet;

use super::ReducedPair;

const MAX_ROWS: usize = 4_000_000;

/// Tail vertices grouped by neighbourhood; one unknown per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinClasses {
    pub classes: Vec<Vec<usize>>,
    pub neighborhoods: Vec<VertexSet>,
}

pub fn twin_classes(rp: &ReducedPair) -> TwinClasses {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut neighborhoods: Vec<VertexSet> = Vec::new();
    for &t in &rp.tail {
        let nb = rp.g_hat.neighborhood(t);
        match neighborhoods.iter().position(|x| *x == nb) {
            Some(c) => classes[c].push(t),
            None => {
                classes.push(vec![t]);
                neighborhoods.push(nb);
            }
        }
    }
    TwinClasses {
        classes,
        neighborhoods,
    }
}

/// Level `r` admits angles that are multiples of `1/2^r`.
pub fn modulus_for_level(r: u32) -> u32 {
    r + 1
}

/// Smallest level at which the search is complete.
pub fn complete_level(rp: &ReducedPair) -> u32 {
    (rp.delta() as u32).saturating_sub(1).max(1)
}

/// The equations `Σ_{i: e ⊆ δ_i} 2^{|e|-1} α_i ≡ b_e (mod 2)` for
/// `2 ≤ |e| ≤ r+1`, one unknown per twin class.
pub fn build_system(rp: &ReducedPair, r: u32) -> Result<(ModSystem, TwinClasses)> {
    if r == 0 {
        return Err(Error::Precondition("levels start at 1".into()));
    }
    let m = modulus_for_level(r);
    if m > 62 {
        return Err(Error::Guard {
            what: "hierarchy level",
            limit: 61,
            got: r as usize,
        });
    }
    let twins = twin_classes(rp);
    let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    for nb in &twins.neighborhoods {
        let members = nb.to_indices();
        for size in 2..=members.len().min(m as usize) {
            for e in members.iter().copied().combinations(size) {
                edges.insert(e);
                if edges.len() > MAX_ROWS {
                    return Err(Error::Guard {
                        what: "system rows",
                        limit: MAX_ROWS,
                        got: edges.len(),
                    });
                }
            }
        }
    }
    let differs = |u: usize, v: usize| rp.g_hat.has_edge(u, v) != rp.gp_hat.has_edge(u, v);
    for (u, v) in rp.g_hat.edges().into_iter().chain(rp.gp_hat.edges()) {
        if differs(u, v) {
            edges.insert(vec![u, v]);
        }
    }
    let n = rp.g_hat.n();
    let mut sys = ModSystem::new(twins.classes.len(), m);
    for e in edges {
        let set = VertexSet::from_indices(n, e.iter().copied());
        let vars = (0..twins.classes.len())
            .filter(|&c| set.is_subset(&twins.neighborhoods[c]))
            .collect();
        let rhs = e.len() == 2 && differs(e[0], e[1]);
        sys.rows.push(ModRow {
            coeff_log2: e.len() as u32 - 1,
            edge: e,
            vars,
            rhs,
        });
    }
    Ok((sys, twins))
}

/// Spreads a class solution over all qubits: the representative carries the
/// class angle and each pivot cancels its singleton weight.
pub fn full_angles(rp: &ReducedPair, twins: &TwinClasses, class_alpha: &[Dyadic]) -> DyadicVector {
    let n = rp.g_hat.n();
    let mut alpha = vec![Dyadic::ZERO; n];
    for (c, members) in twins.classes.iter().enumerate() {
        alpha[members[0]] = class_alpha[c];
    }
    for &p in &rp.pivots {
        let s = rp
            .tail
            .iter()
            .filter(|&&t| rp.g_hat.has_edge(p, t))
            .fold(Dyadic::ZERO, |acc, &t| acc + alpha[t]);
        alpha[p] = -s;
    }
    alpha
}

#[derive(Clone, Debug, PartialEq)]
pub enum HierarchyOutcome {
    Solved {
        r: u32,
        alpha: DyadicVector,
    },
    /// No solution up to the complete level.
    Unsolvable,
    /// No solution up to `r_max`, which is below the complete level.
    Capped {
        r_max: u32,
    },
}

/// Tries levels `1, 2, …, min(r_max, complete_level)`.
pub fn solve_hierarchy(rp: &ReducedPair, r_max: u32) -> Result<HierarchyOutcome> {
    if r_max == 0 {
        return Err(Error::Precondition("r_max must be at least 1".into()));
    }
    let top = complete_level(rp);
    for r in 1..=r_max.min(top) {
        let (sys, twins) = build_system(rp, r)?;
        if let Some(class_alpha) = solve_mod_pow2(&sys) {
            return Ok(HierarchyOutcome::Solved {
                r,
                alpha: full_angles(rp, &twins, &class_alpha),
            });
        }
    }
    Ok(if r_max < top {
        HierarchyOutcome::Capped { r_max }
    } else {
        HierarchyOutcome::Unsolvable
    })
}
