use crate::cnf::CnfFormula;

/// A satisfying assignment, by backtracking over variables in index order
/// with a falsified-clause check after every assignment.
pub(crate) fn solve(f: &CnfFormula) -> Option<Vec<bool>> {
    // Clauses indexed by their largest variable: the point where they become fully assigned.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); f.num_vars()];
    for (j, c) in f.clauses().iter().enumerate() {
        let v = c.iter().map(|l| l.var).max()?;
        closing[v].push(j);
    }
    let mut value = vec![false; f.num_vars()];
    assign(f, &closing, &mut value, 0).then_some(value)
}

fn assign(f: &CnfFormula, closing: &[Vec<usize>], value: &mut [bool], var: usize) -> bool {
    if var == value.len() {
        return true;
    }
    for choice in [false, true] {
        value[var] = choice;
        let ok = closing[var].iter().all(|&j| {
            f.clauses()[j].iter().any(|l| value[l.var] == l.positive)
        });
        if ok && assign(f, closing, value, var + 1) {
            return true;
        }
    }
    false
}
