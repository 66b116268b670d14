//! Exact two-phase simplex method for `min c·x  s.t.  A x = b, x ≥ 0`.
//!
//! Bland's rule is used throughout, so the method terminates without any
//! perturbation; sizes in this crate are a handful of rows and at most a few
//! dozen columns.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<F> {
    Optimal { value: F, solution: Vec<F> },
    Infeasible,
    Unbounded,
}

struct Tableau<F> {
    // rows 0..m are constraints, row m is the objective (reduced costs, -value)
    t: Vec<Vec<F>>,
    basis: Vec<usize>,
    rhs: usize,
}

impl<F: Field> Tableau<F> {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = F::one() / self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..self.t.len() {
            if i != r && !self.t[i][c].is_zero() {
                let f = self.t[i][c].clone();
                for j in 0..self.t[i].len() {
                    if !self.t[r][j].is_zero() {
                        let delta = f.clone() * self.t[r][j].clone();
                        self.t[i][j] = self.t[i][j].clone() - delta;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland-rule iterations over columns `0..allowed`. Returns `false`
    /// when the objective is unbounded below.
    fn run(&mut self, allowed: usize) -> bool {
        let m = self.basis.len();
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.t[m][j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, F)> = None;
            for r in 0..m {
                let a = &self.t[r][enter];
                if a.is_positive() {
                    let ratio = self.t[r][self.rhs].clone() / a.clone();
                    let better = match &leave {
                        None => true,
                        Some((lr, best)) => {
                            ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Minimizes `cost · x` over `{x ≥ 0 : a x = b}`.
pub fn minimize<F: Field>(a: &[Vec<F>], b: &[F], cost: &[F]) -> LpOutcome<F> {
    let m = a.len();
    let n = cost.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let rhs = n + m;
    let mut t: Vec<Vec<F>> = Vec::with_capacity(m + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<F> = row.iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { F::one() } else { F::zero() }));
        r.push(if flip { -bi.clone() } else { bi.clone() });
        t.push(r);
    }
    // phase one objective: sum of artificials, priced out
    let mut obj = vec![F::zero(); rhs + 1];
    for r in &t {
        for j in 0..n {
            obj[j] = obj[j].clone() - r[j].clone();
        }
        obj[rhs] = obj[rhs].clone() - r[rhs].clone();
    }
    t.push(obj);
    let mut tab = Tableau { t, basis: (n..n + m).collect(), rhs };
    tab.run(n + m);
    if !tab.t[m][rhs].is_zero() {
        return LpOutcome::Infeasible;
    }

    // drive artificials out of the basis; rows where that is impossible are redundant
    let mut r = 0;
    while r < tab.basis.len() {
        if tab.basis[r] >= n {
            if let Some(c) = (0..n).find(|&c| !tab.t[r][c].is_zero()) {
                tab.pivot(r, c);
                r += 1;
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
            }
        } else {
            r += 1;
        }
    }
    let m = tab.basis.len();

    let mut obj = vec![F::zero(); rhs + 1];
    obj[..n].clone_from_slice(cost);
    for (row, &bvar) in tab.t[..m].iter().zip(&tab.basis) {
        let cb = cost[bvar].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..=rhs {
            obj[j] = obj[j].clone() - cb.clone() * row[j].clone();
        }
    }
    tab.t[m] = obj;
    if !tab.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![F::zero(); n];
    for (r, &bvar) in tab.basis.iter().enumerate() {
        solution[bvar] = tab.t[r][rhs].clone();
    }
    let value = -tab.t[m][rhs].clone();
    debug_assert_eq!(
        value,
        solution.iter().zip(cost).fold(F::zero(), |acc, (x, c)| acc + x.clone() * c.clone())
    );
    LpOutcome::Optimal { value, solution }
}

pub fn maximize<F: Field>(a: &[Vec<F>], b: &[F], cost: &[F]) -> LpOutcome<F> {
    let neg: Vec<F> = cost.iter().map(|c| -c.clone()).collect();
    match minimize(a, b, &neg) {
        LpOutcome::Optimal { value, solution } => LpOutcome::Optimal { value: -value, solution },
        other => other,
    }
}

/// Some `x ≥ 0` with `a x = b`, if one exists.
pub fn feasible_point<F: Field>(a: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    match minimize(a, b, &vec![F::zero(); ncols]) {
        LpOutcome::Optimal { solution, .. } => Some(solution),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn small_program() {
        // min x + y  s.t. x + 2y = 4, x,y >= 0  → y = 2
        let a = vec![vec![q(1), q(2)]];
        match minimize(&a, &[q(4)], &[q(1), q(1)]) {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, q(2));
                assert_eq!(solution, vec![q(0), q(2)]);
            }
            o => panic!("{o:?}"),
        }
        match maximize(&a, &[q(4)], &[q(1), q(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(4)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![q(1), q(1)]];
        assert_eq!(minimize(&a, &[q(-1)], &[q(1), q(1)]), LpOutcome::Infeasible);
        let a = vec![vec![q(1), q(-1)]];
        assert_eq!(minimize(&a, &[q(1)], &[q(0), q(-1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        match minimize(&a, &[q(1), q(2)], &[q(1), q(3)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn negative_rhs_rows_flip() {
        let a = vec![vec![q(-1), q(0)], vec![q(0), q(1)]];
        assert_eq!(feasible_point(&a, &[q(-3), q(2)], 2), Some(vec![q(3), q(2)]));
    }
}
