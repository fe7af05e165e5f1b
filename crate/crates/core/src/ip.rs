//! Exact optimization of small integer programs over bounded boxes.
//!
//! The solver is a depth-first branch and bound over the variables in
//! declaration order. Before every branching step all constraints are
//! propagated to a fixpoint, each one shrinking the variable intervals it
//! can. Every variable carries finite bounds, so the search is exhaustive
//! and the reported optimum is exact.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// `(variable, coefficient)` pairs.
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// Minimize `objective · x` subject to the constraints and `lo <= x <= hi`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntegerProgram {
    bounds: Vec<(i64, i64)>,
    objective: Vec<i64>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<i64>,
    pub objective: i64,
}

impl IntegerProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable with inclusive bounds and objective coefficient and
    /// returns its index.
    pub fn add_var(&mut self, lo: i64, hi: i64, cost: i64) -> usize {
        self.bounds.push((lo, hi));
        self.objective.push(cost);
        self.bounds.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        assert!(terms.iter().all(|&(v, _)| v < self.bounds.len()), "unknown variable");
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[i64] {
        &self.objective
    }

    /// Whether `values` satisfies every bound and constraint.
    pub fn is_feasible(&self, values: &[i64]) -> bool {
        values.len() == self.bounds.len()
            && values.iter().zip(&self.bounds).all(|(&x, &(lo, hi))| lo <= x && x <= hi)
            && self.constraints.iter().all(|c| {
                let lhs: i64 = c.terms.iter().map(|&(v, a)| a * values[v]).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn value_of(&self, values: &[i64]) -> i64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }
}

/// An optimal solution, or `None` if the program is infeasible.
pub fn solve_ip(ip: &IntegerProgram) -> Option<Solution> {
    let mut search = Search { ip, best: None };
    search.dfs(ip.bounds.clone());
    search.best
}

struct Search<'a> {
    ip: &'a IntegerProgram,
    best: Option<Solution>,
}

impl Search<'_> {
    fn dfs(&mut self, mut dom: Vec<(i64, i64)>) {
        if !propagate(self.ip, &mut dom) {
            return;
        }
        let lower: i64 = self
            .ip
            .objective
            .iter()
            .zip(&dom)
            .map(|(&c, &(lo, hi))| if c >= 0 { c * lo } else { c * hi })
            .sum();
        if self.best.as_ref().is_some_and(|b| lower >= b.objective) {
            return;
        }
        let Some(v) = dom.iter().position(|&(lo, hi)| lo < hi) else {
            let values: Vec<i64> = dom.iter().map(|&(lo, _)| lo).collect();
            debug_assert!(self.ip.is_feasible(&values));
            self.best = Some(Solution { objective: lower, values });
            return;
        };
        let (lo, hi) = dom[v];
        let ascending = self.ip.objective[v] >= 0;
        for step in 0..=(hi - lo) {
            let x = if ascending { lo + step } else { hi - step };
            let mut next = dom.clone();
            next[v] = (x, x);
            self.dfs(next);
        }
    }
}

/// Tightens `dom` until no constraint changes it. Returns `false` when some
/// interval becomes empty.
fn propagate(ip: &IntegerProgram, dom: &mut [(i64, i64)]) -> bool {
    let mut changed = true;
    while changed {
        changed = false;
        for c in &ip.constraints {
            let (le, ge) = match c.relation {
                Relation::Le => (true, false),
                Relation::Ge => (false, true),
                Relation::Eq => (true, true),
            };
            if le {
                match tighten_le(&c.terms, c.rhs, dom, 1) {
                    None => return false,
                    Some(ch) => changed |= ch,
                }
            }
            if ge {
                match tighten_le(&c.terms, -c.rhs, dom, -1) {
                    None => return false,
                    Some(ch) => changed |= ch,
                }
            }
        }
    }
    true
}

/// Propagates `sign * Σ a·x <= rhs`.
fn tighten_le(terms: &[(usize, i64)], rhs: i64, dom: &mut [(i64, i64)], sign: i64) -> Option<bool> {
    let min_term = |a: i64, (lo, hi): (i64, i64)| if a >= 0 { a * lo } else { a * hi };
    let total: i64 = terms.iter().map(|&(v, a)| min_term(sign * a, dom[v])).sum();
    if total > rhs {
        return None;
    }
    let mut changed = false;
    for &(v, a) in terms {
        let a = sign * a;
        if a == 0 {
            continue;
        }
        let slack = rhs - (total - min_term(a, dom[v]));
        let (lo, hi) = dom[v];
        let (new_lo, new_hi) = if a > 0 {
            (lo, hi.min(slack.div_euclid(a)))
        } else {
            // a·x <= slack with a < 0 means x >= ceil(slack / a).
            (lo.max(-(slack.div_euclid(-a))), hi)
        };
        if new_lo > new_hi {
            return None;
        }
        if (new_lo, new_hi) != (lo, hi) {
            dom[v] = (new_lo, new_hi);
            changed = true;
        }
    }
    Some(changed)
}

/// Exhaustive reference solver, for tests on tiny boxes.
pub fn solve_ip_exhaustive(ip: &IntegerProgram) -> Option<Solution> {
    let n = ip.num_vars();
    let mut values: Vec<i64> = ip.bounds.iter().map(|&(lo, _)| lo).collect();
    if ip.bounds.iter().any(|&(lo, hi)| lo > hi) {
        return None;
    }
    let mut best: Option<Solution> = None;
    loop {
        if ip.is_feasible(&values) {
            let objective = ip.value_of(&values);
            if best.as_ref().is_none_or(|b| objective < b.objective) {
                best = Some(Solution { values: values.clone(), objective });
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if values[i] < ip.bounds[i].1 {
                values[i] += 1;
                break;
            }
            values[i] = ip.bounds[i].0;
            i += 1;
        }
    }
}
