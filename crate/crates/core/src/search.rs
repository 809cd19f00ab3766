//! Ordered depth-first assignment search used by the functor enumerators.

use std::ops::ControlFlow;

use crate::budget::{Budget, BudgetExceeded};

/// A finite constraint problem over variables `0..num_vars`, assigned in order.
pub(crate) trait Problem {
    fn num_vars(&self) -> usize;
    /// Candidate values for `var`, given the values of all earlier variables.
    /// Candidates are tried in the order returned.
    fn domain(&self, assigned: &[usize], var: usize) -> Vec<usize>;
    /// Whether the newest assignment (the last element of `assigned`) is
    /// consistent with the earlier ones.
    fn consistent(&self, assigned: &[usize]) -> bool;
}

/// Visit every complete consistent assignment in lexicographic order of the
/// domains. Each candidate check costs one unit of budget.
pub(crate) fn solve<P: Problem + ?Sized>(
    problem: &P,
    budget: &Budget,
    mut emit: impl FnMut(&[usize]),
) -> Result<(), BudgetExceeded> {
    solve_until(problem, budget, |a| {
        emit(a);
        ControlFlow::Continue(())
    })
}

/// Like [`solve`], stopping as soon as `emit` breaks.
pub(crate) fn solve_until<P: Problem + ?Sized>(
    problem: &P,
    budget: &Budget,
    mut emit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<(), BudgetExceeded> {
    let n = problem.num_vars();
    let mut assigned: Vec<usize> = Vec::with_capacity(n);
    if n == 0 {
        let _ = emit(&assigned);
        return Ok(());
    }
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(problem.domain(&assigned, 0), 0)];
    while let Some((domain, pos)) = stack.last_mut() {
        if *pos >= domain.len() {
            stack.pop();
            assigned.pop();
            continue;
        }
        let value = domain[*pos];
        *pos += 1;
        budget.spend(1)?;
        assigned.push(value);
        if !problem.consistent(&assigned) {
            assigned.pop();
            continue;
        }
        if assigned.len() == n {
            if emit(&assigned).is_break() {
                return Ok(());
            }
            assigned.pop();
            continue;
        }
        let next = problem.domain(&assigned, assigned.len());
        stack.push((next, 0));
    }
    Ok(())
}

/// Collect all solutions.
#[cfg(test)]
pub(crate) fn solve_all<P: Problem + ?Sized>(
    problem: &P,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>, BudgetExceeded> {
    let mut out = Vec::new();
    solve(problem, budget, |a| out.push(a.to_vec()))?;
    Ok(out)
}
