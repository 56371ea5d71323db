//! Dense GF(2) row reduction for boundary-matrix solves.

/// One augmented row: variable bits packed into u64 words plus a
/// right-hand-side bit.
#[derive(Clone)]
struct Row {
    words: Vec<u64>,
    rhs: bool,
}

impl Row {
    fn new(n_vars: usize) -> Self {
        Row {
            words: vec![0; n_vars.div_ceil(64)],
            rhs: false,
        }
    }
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn xor_in(&mut self, other: &Row) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }
    fn leading(&self, from: usize, n_vars: usize) -> Option<usize> {
        (from..n_vars).find(|&i| self.get(i))
    }
}

/// Solve a sparse GF(2) system: each equation lists the variables with
/// coefficient one and a right-hand side. Returns one solution with all
/// free variables set to zero, or `None` when inconsistent.
pub(crate) fn solve(
    equations: &[(Vec<usize>, bool)],
    n_vars: usize,
) -> Option<Vec<bool>> {
    let mut rows: Vec<Row> = equations
        .iter()
        .map(|(cols, rhs)| {
            let mut r = Row::new(n_vars);
            for &c in cols {
                debug_assert!(c < n_vars);
                // A variable listed twice cancels over GF(2).
                if r.get(c) {
                    r.words[c / 64] ^= 1 << (c % 64);
                } else {
                    r.set(c);
                }
            }
            r.rhs = *rhs;
            r
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n_vars];
    let mut rank = 0usize;
    for (col, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_in(&pivot_row);
            }
        }
        *pivot_slot = Some(rank);
        rank += 1;
    }

    // Inconsistent iff a zero row has rhs = 1.
    for row in &rows[rank..] {
        if row.rhs && row.words.iter().all(|&w| w == 0) {
            return None;
        }
    }
    for row in &rows {
        if row.rhs && row.leading(0, n_vars).is_none() {
            return None;
        }
    }

    let mut solution = vec![false; n_vars];
    for col in 0..n_vars {
        if let Some(r) = pivot_of_col[col] {
            solution[col] = rows[r].rhs;
        }
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary() {
        // x1+x2=1, x2+x3=1, x3+x1=0 over GF(2): solution x2=1, free x3=0.
        let eqs = vec![
            (vec![0, 1], true),
            (vec![1, 2], true),
            (vec![2, 0], false),
        ];
        let sol = solve(&eqs, 3).unwrap();
        assert_eq!(sol, vec![false, true, false]);
    }

    #[test]
    fn inconsistent() {
        // x1+x2=1, x2+x1=0 is contradictory.
        let eqs = vec![(vec![0, 1], true), (vec![0, 1], false)];
        assert!(solve(&eqs, 2).is_none());
    }

    #[test]
    fn repeated_variable_cancels() {
        // x1+x1 = 0, so the equation [x1,x1]=1 is unsatisfiable.
        let eqs = vec![(vec![0, 0], true)];
        assert!(solve(&eqs, 1).is_none());
        let eqs = vec![(vec![0, 0], false)];
        assert_eq!(solve(&eqs, 1).unwrap(), vec![false]);
    }
}
