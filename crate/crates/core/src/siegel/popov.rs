//! Shifted weak Popov column reduction of polynomial matrices over
//! F_p[t]. The column operations are unimodular over F_p[t], so the
//! generated module is unchanged; once the (shifted) pivot rows are
//! pairwise distinct the matrix is column reduced and the sum of
//! shifted column degrees is minimal.

use crate::field::poly::Poly;

/// Shifted degree of an entry: deg + row shift, or None for zero.
fn shifted_deg(e: &Poly, shift: i64) -> Option<i64> {
    e.degree().map(|d| d as i64 + shift)
}

/// (shifted column degree, bottom-most row attaining it), or None for
/// a zero column.
fn pivot_of(col: &[Poly], shifts: &[i64]) -> Option<(i64, usize)> {
    let mut best: Option<(i64, usize)> = None;
    for (i, e) in col.iter().enumerate() {
        if let Some(d) = shifted_deg(e, shifts[i]) {
            if best.map_or(true, |(bd, _)| d >= bd) {
                best = Some((d, i));
            }
        }
    }
    best
}

/// In-place shifted weak Popov form of full-column-rank columns.
pub fn weak_popov(columns: &mut [Vec<Poly>], shifts: &[i64]) {
    let l = columns.len();
    if l == 0 {
        return;
    }
    let p = columns[0][0].characteristic();
    loop {
        let pivots: Vec<Option<(i64, usize)>> =
            columns.iter().map(|c| pivot_of(c, shifts)).collect();
        // find a pivot-row collision
        let mut conflict = None;
        'search: for a in 0..l {
            for b in (a + 1)..l {
                if let (Some((da, ra)), Some((db, rb))) = (pivots[a], pivots[b]) {
                    if ra == rb {
                        // reduce the column with the larger shifted degree
                        conflict = Some(if da >= db { (a, b) } else { (b, a) });
                        break 'search;
                    }
                }
            }
        }
        let Some((target, by)) = conflict else { break };
        let (dt, row) = pivots[target].unwrap();
        let (db, _) = pivots[by].unwrap();
        let lt = columns[target][row].leading_coeff();
        let lb = columns[by][row].leading_coeff();
        let c = (lt as u128 * crate::field::poly::inv_mod(lb, p) as u128 % p as u128) as u64;
        let factor = Poly::monomial(p, c, (dt - db) as usize);
        let by_col = columns[by].clone();
        for (t, s) in columns[target].iter_mut().zip(by_col.iter()) {
            *t = t.sub(&factor.mul(s));
        }
    }
}

/// Shifted column degrees of a reduced (or any) matrix.
pub fn shifted_column_degrees(columns: &[Vec<Poly>], shifts: &[i64]) -> Vec<Option<i64>> {
    columns.iter().map(|c| pivot_of(c, shifts).map(|(d, _)| d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Poly {
        Poly::parse(2, s).unwrap()
    }

    #[test]
    fn reduces_shared_pivots() {
        // columns (t, 1) and (t^2+t, t) share pivot row 0
        let mut cols = vec![vec![poly("t"), poly("1")], vec![poly("t^2+t"), poly("t")]];
        let shifts = [0i64, 0];
        weak_popov(&mut cols, &shifts);
        let pivots: Vec<usize> = cols.iter().map(|c| pivot_of(c, &shifts).unwrap().1).collect();
        assert_ne!(pivots[0], pivots[1]);
        // the module contains (t,1) and after reduction the degree sum is minimal: 1 + 0
        let mut degs: Vec<i64> = shifted_column_degrees(&cols, &shifts)
            .into_iter()
            .map(|d| d.unwrap())
            .collect();
        degs.sort();
        assert_eq!(degs, vec![0, 1]);
    }

    #[test]
    fn already_reduced_is_untouched() {
        let mut cols = vec![vec![poly("t"), poly("0")], vec![poly("0"), poly("t+1")]];
        let before = cols.clone();
        weak_popov(&mut cols, &[0, 0]);
        assert_eq!(cols, before);
    }

    #[test]
    fn shifts_move_pivots() {
        // with a heavy shift on row 1, the pivot of (t^3, 1) is row 1
        let cols = vec![vec![poly("t^3"), poly("1")]];
        let (_, r) = pivot_of(&cols[0], &[0, 5]).unwrap();
        assert_eq!(r, 1);
    }

    #[test]
    fn identity_sum_degree_equals_wedge_degree() {
        // columns (t,1),(0,1): reduced degree sum must equal deg of the
        // largest 2x2 minor (which is t, degree 1) for this full-rank pair
        let mut cols = vec![vec![poly("t"), poly("1")], vec![poly("0"), poly("1")]];
        weak_popov(&mut cols, &[0, 0]);
        let sum: i64 = shifted_column_degrees(&cols, &[0, 0])
            .into_iter()
            .map(|d| d.unwrap())
            .sum();
        assert_eq!(sum, 1);
    }
}
