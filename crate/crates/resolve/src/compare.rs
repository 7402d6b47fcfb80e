//! Comparison of differentials up to the freedom in choosing bases.

use quivalg::Poly;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| (0..n).filter(|i| !p.contains(i)).map(|i| [p.clone(), vec![i]].concat()).collect::<Vec<_>>())
            .collect();
    }
    out
}

/// Whether `b` arises from `a` by permuting rows and columns and negating
/// some of them.
pub fn equivalent_up_to_signed_permutation(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> bool {
    let rows = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    if a.len() != rows || a.iter().any(|r| r.len() != cols) {
        return false;
    }
    let col_perms = permutations(cols);
    for rp in permutations(rows) {
        for cp in &col_perms {
            if signs_match(a, b, &rp, cp) {
                return true;
            }
        }
    }
    false
}

/// With the permutations fixed, the row and column signs are determined
/// by propagation along nonzero entries.
fn signs_match(a: &[Vec<Poly>], b: &[Vec<Poly>], rp: &[usize], cp: &[usize]) -> bool {
    let (rows, cols) = (rp.len(), cp.len());
    let mut row_sign: Vec<Option<bool>> = vec![None; rows];
    let mut col_sign: Vec<Option<bool>> = vec![None; cols];
    for start in 0..rows {
        if row_sign[start].is_some() {
            continue;
        }
        row_sign[start] = Some(false);
        let mut stack = vec![(true, start)];
        while let Some((is_row, i)) = stack.pop() {
            let range = if is_row { cols } else { rows };
            for j in 0..range {
                let (r, c) = if is_row { (i, j) } else { (j, i) };
                let x = &a[rp[r]][cp[c]];
                let y = &b[r][c];
                if x.is_zero() != y.is_zero() {
                    return false;
                }
                if x.is_zero() {
                    continue;
                }
                let flip = if *x == *y {
                    false
                } else if x.neg() == *y {
                    true
                } else {
                    return false;
                };
                let known = if is_row { row_sign[r] } else { col_sign[c] }.unwrap();
                let other = if is_row { &mut col_sign[c] } else { &mut row_sign[r] };
                match *other {
                    Some(s) if s != (known ^ flip) => return false,
                    Some(_) => {}
                    None => {
                        *other = Some(known ^ flip);
                        stack.push((!is_row, j));
                    }
                }
            }
        }
    }
    true
}
