//! Smith normal form of small integer matrices.

/// `D = U A V` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_r`, `d_i > 0`. Only `V` is kept since solving
/// `A x = 0` needs just the column transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries of `D`.
    pub divisors: Vec<i128>,
    /// Column transform, `cols x cols`, row-major.
    pub v: Vec<Vec<i128>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols);
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let swap_cols = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
    };
    // column j -= q * column i
    let sub_col = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, j: usize, i: usize, q: i128| {
        for row in m.iter_mut().chain(v.iter_mut()) {
            row[j] -= q * row[i];
        }
    };

    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return finish(divisors, v);
            };
            m.swap(t, pi);
            swap_cols(&mut m, &mut v, t, pj);

            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    let pivot_row = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    sub_col(&mut m, &mut v, j, t, q);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility by folding an offending row into row t
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let offending = m[i].clone();
                    for (x, y) in m[t].iter_mut().zip(&offending) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for row in m.iter_mut().chain(v.iter_mut()) {
                row[t] = -row[t];
            }
        }
        divisors.push(m[t][t]);
    }
    finish(divisors, v)
}

fn finish(divisors: Vec<i128>, v: Vec<Vec<i128>>) -> SmithForm {
    SmithForm { divisors, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        a.iter()
            .map(|r| {
                (0..b[0].len())
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diagonalizes_small_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let snf = smith_normal_form(&a, 3);
        assert_eq!(snf.divisors, vec![2, 6, 12]);
    }

    #[test]
    fn kernel_columns_are_solutions() {
        let a = vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![1, 0, -1, 0]];
        let snf = smith_normal_form(&a, 4);
        assert_eq!(snf.rank(), 2);
        let wide: Vec<Vec<i128>> = a
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let av = mat_mul(&wide, &snf.v);
        for row in &av {
            for &x in &row[snf.rank()..] {
                assert_eq!(x, 0);
            }
        }
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(smith_normal_form(&[], 3).rank(), 0);
        assert_eq!(smith_normal_form(&[vec![0, 0]], 2).rank(), 0);
    }
}
