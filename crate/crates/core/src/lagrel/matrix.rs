//! Row reduction over Q(s).

use crate::field::RatFunc;

pub type Row = Vec<RatFunc>;

/// Reduced row-echelon form with pivot columns ascending and zero rows
/// dropped. Returns the rows and their pivot columns.
pub fn rref_with_pivots(mut rows: Vec<Row>, ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rref(rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    rref_with_pivots(rows, ncols).0
}

pub fn rank(rows: &[Row], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).len()
}

/// Basis of `{v | rows · v = 0}`, one vector per free column.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let (reduced, pivots) = rref_with_pivots(rows.to_vec(), ncols);
    let mut basis = Vec::new();
    let mut next_pivot = pivots.iter().peekable();
    for free in 0..ncols {
        if next_pivot.peek() == Some(&&free) {
            next_pivot.next();
            continue;
        }
        let mut v = vec![RatFunc::zero(); ncols];
        v[free] = RatFunc::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|e| RatFunc::parse(e)).collect())
            .collect()
    }

    #[test]
    fn identity_unchanged() {
        let id = m(&[&["1", "0"], &["0", "1"]]);
        assert_eq!(rref(id.clone(), 2), id);
    }

    #[test]
    fn proportional_rows_collapse() {
        let rows = m(&[&["2", "4*s"], &["1", "2*s"]]);
        assert_eq!(rref(rows, 2), m(&[&["1", "2*s"]]));
    }

    #[test]
    fn symbolic_reduction() {
        let rows = m(&[&["s", "1", "0"], &["1", "0", "s+1"]]);
        let (r, p) = rref_with_pivots(rows, 3);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r, m(&[&["1", "0", "s+1"], &["0", "1", "-s^2-s"]]));
    }

    #[test]
    fn nullspace_basis() {
        let rows = m(&[&["1", "1", "-1"]]);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, m(&[&["-1", "1", "0"], &["1", "0", "1"]]));
        for v in &ns {
            let dot: RatFunc = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(nullspace(&[], 2).len(), 2);
        assert_eq!(rank(&rows, 3), 1);
    }
}
