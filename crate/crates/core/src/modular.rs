//! Smith and Hermite normal forms of integer matrices over `Z/M`.
//!
//! Entries are kept in `[0, M)`. All row and column operations are unimodular
//! over the integers, so the transforms are invertible modulo `M`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

/// Extended gcd on nonnegative inputs: `(d, s, t)` with `s a + t b = d`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

#[inline]
fn md(x: i128, m: i64) -> i64 {
    x.rem_euclid(m as i128) as i64
}

/// A unit `u` of `Z/m` with `u·a ≡ gcd(a, m) (mod m)`.
pub fn normalizing_unit(a: i64, m: i64) -> i64 {
    let g = a.gcd(&m);
    if g == 0 || m == 1 {
        return 1;
    }
    let m1 = m / g;
    let a1 = (a / g).rem_euclid(m1.max(1));
    let u0 = if m1 == 1 {
        1
    } else {
        let (_, s, _) = ext_gcd(a1, m1);
        s.rem_euclid(m1)
    };
    let mut u = u0;
    while u.gcd(&m) != 1 {
        u += m1;
    }
    u % m
}

/// `P · A · Q ≡ diag(d_0, d_1, …)` modulo `M`.
///
/// Each `d_i` is a divisor of `M`, with `M` itself standing for zero, and
/// `d_i | d_{i+1}`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub modulus: i64,
    pub diagonal: Vec<i64>,
    /// `P`, present if requested.
    pub left: Option<Vec<Vec<i64>>>,
    /// `Q`, present if requested.
    pub right: Option<Vec<Vec<i64>>>,
}

impl SmithForm {
    /// Diagonal entries other than 1 and zero (`M`), i.e. the torsion part.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d != 1 && d != self.modulus).collect()
    }
}

struct SmithWork {
    a: Vec<Vec<i64>>,
    rows: usize,
    cols: usize,
    m: i64,
    p: Option<Vec<Vec<i64>>>,
    q: Option<Vec<Vec<i64>>>,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(p) = &mut self.p {
            p.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(q) = &mut self.q {
            for row in q.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// (row_i, row_j) ← (s row_i + t row_j, u row_i + v row_j)
    fn combine_rows(&mut self, i: usize, j: usize, s: i64, t: i64, u: i64, v: i64) {
        let m = self.m;
        let f = |rows: &mut Vec<Vec<i64>>| {
            let (ri, rj) = (rows[i].clone(), rows[j].clone());
            for k in 0..ri.len() {
                let (x, y) = (ri[k] as i128, rj[k] as i128);
                rows[i][k] = md(s as i128 * x + t as i128 * y, m);
                rows[j][k] = md(u as i128 * x + v as i128 * y, m);
            }
        };
        f(&mut self.a);
        if let Some(p) = &mut self.p {
            f(p);
        }
    }

    /// (col_i, col_j) ← (s col_i + t col_j, u col_i + v col_j)
    fn combine_cols(&mut self, i: usize, j: usize, s: i64, t: i64, u: i64, v: i64) {
        let m = self.m;
        let f = |rows: &mut Vec<Vec<i64>>| {
            for row in rows.iter_mut() {
                let (x, y) = (row[i] as i128, row[j] as i128);
                row[i] = md(s as i128 * x + t as i128 * y, m);
                row[j] = md(u as i128 * x + v as i128 * y, m);
            }
        };
        f(&mut self.a);
        if let Some(q) = &mut self.q {
            f(q);
        }
    }

    /// row_j ← row_j - c row_i (only touches nonzero entries of row_i)
    fn sub_row(&mut self, j: usize, i: usize, c: i64) {
        if c == 0 {
            return;
        }
        let m = self.m;
        let f = |rows: &mut Vec<Vec<i64>>| {
            for k in 0..rows[i].len() {
                let x = rows[i][k];
                if x != 0 {
                    rows[j][k] = md(rows[j][k] as i128 - c as i128 * x as i128, m);
                }
            }
        };
        f(&mut self.a);
        if let Some(p) = &mut self.p {
            f(p);
        }
    }

    /// col_j ← col_j - c col_i
    fn sub_col(&mut self, j: usize, i: usize, c: i64) {
        if c == 0 {
            return;
        }
        let m = self.m;
        let f = |rows: &mut Vec<Vec<i64>>| {
            for row in rows.iter_mut() {
                let x = row[i];
                if x != 0 {
                    row[j] = md(row[j] as i128 - c as i128 * x as i128, m);
                }
            }
        };
        f(&mut self.a);
        if let Some(q) = &mut self.q {
            f(q);
        }
    }

    fn scale_row(&mut self, i: usize, u: i64) {
        let m = self.m;
        for x in self.a[i].iter_mut() {
            *x = md(*x as i128 * u as i128, m);
        }
        if let Some(p) = &mut self.p {
            for x in p[i].iter_mut() {
                *x = md(*x as i128 * u as i128, m);
            }
        }
    }

    fn run(&mut self) -> Vec<i64> {
        let m = self.m;
        let n = self.rows.min(self.cols);
        let mut diagonal = vec![m; n];
        for t in 0..n {
            // pivot: entry with the smallest gcd against m
            let mut best: Option<(i64, usize, usize)> = None;
            'search: for i in t..self.rows {
                for j in t..self.cols {
                    let x = self.a[i][j];
                    if x != 0 {
                        let g = x.gcd(&m);
                        if best.is_none_or(|(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                            if g == 1 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let u = normalizing_unit(self.a[t][t], m);
                self.scale_row(t, u);
                let mut g = self.a[t][t];
                let mut dirty = false;
                for i in t + 1..self.rows {
                    let b = self.a[i][t];
                    if b == 0 {
                        continue;
                    }
                    if b % g == 0 {
                        self.sub_row(i, t, b / g);
                    } else {
                        let (d, s, r) = ext_gcd(g, b);
                        self.combine_rows(t, i, s, r, -(b / d), g / d);
                        g = self.a[t][t];
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                for j in t + 1..self.cols {
                    let b = self.a[t][j];
                    if b == 0 {
                        continue;
                    }
                    if b % g == 0 {
                        self.sub_col(j, t, b / g);
                    } else {
                        let (d, s, r) = ext_gcd(g, b);
                        self.combine_cols(t, j, s, r, -(b / d), g / d);
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                if g > 1 {
                    // divisibility chain: fold in any row with an entry g does not divide
                    let offender = (t + 1..self.rows).find(|&i| self.a[i][t + 1..].iter().any(|&x| x % g != 0));
                    if let Some(i) = offender {
                        self.combine_rows(t, i, 1, 1, 0, 1);
                        continue;
                    }
                }
                diagonal[t] = g;
                break;
            }
        }
        diagonal
    }
}

/// Smith normal form of `a` (a `rows × cols` matrix) over `Z/m`.
pub fn smith_mod(a: &[Vec<i64>], rows: usize, cols: usize, m: i64, track_left: bool, track_right: bool) -> SmithForm {
    assert!(m >= 1);
    let identity =
        |n: usize| -> Vec<Vec<i64>> { (0..n).map(|i| (0..n).map(|j| i64::from(i == j) % m).collect()).collect() };
    let mut work = SmithWork {
        a: a.iter().map(|r| r.iter().map(|&x| x.rem_euclid(m)).collect()).collect(),
        rows,
        cols,
        m,
        p: track_left.then(|| identity(rows)),
        q: track_right.then(|| identity(cols)),
    };
    let diagonal = if m == 1 { vec![1; rows.min(cols)] } else { work.run() };
    SmithForm { modulus: m, diagonal, left: work.p, right: work.q }
}

/// Echelon basis of the lattice spanned by `generators` together with `m·Z^n`.
///
/// Row `j` of the result has zeros before column `j` and a pivot at column
/// `j` dividing `m` (a pivot equal to `m` means the lattice meets that
/// coordinate only in `m·Z`). The rows satisfy the Howell property, so
/// [`reduce_by_echelon`] produces canonical coset representatives.
pub fn howell_basis(generators: &[Vec<i64>], n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut pool: Vec<Vec<i64>> = generators
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(m)).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut basis = Vec::with_capacity(n);
    for j in 0..n {
        let mut pivot: Option<Vec<i64>> = None;
        let mut rest = Vec::with_capacity(pool.len());
        for row in pool.drain(..) {
            if row[j] == 0 {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (a, b) = (p[j], row[j]);
                    let (d, s, t) = ext_gcd(a, b);
                    let (x, y) = (a / d, b / d);
                    let new_p: Vec<i64> = p
                        .iter()
                        .zip(&row)
                        .map(|(&u, &v)| md(s as i128 * u as i128 + t as i128 * v as i128, m))
                        .collect();
                    let left: Vec<i64> = p
                        .iter()
                        .zip(&row)
                        .map(|(&u, &v)| md(y as i128 * u as i128 - x as i128 * v as i128, m))
                        .collect();
                    if left.iter().any(|&v| v != 0) {
                        rest.push(left);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        pool = rest;
        let row = match pivot {
            None => {
                let mut r = vec![0; n];
                r[j] = m;
                r
            }
            Some(mut p) => {
                let u = normalizing_unit(p[j], m);
                for x in p.iter_mut() {
                    *x = md(*x as i128 * u as i128, m);
                }
                let g = p[j];
                if g != m && m / g != 1 {
                    // (m/g)·p vanishes in column j; keep what it leaves behind
                    let extra: Vec<i64> = p.iter().map(|&x| md((m / g) as i128 * x as i128, m)).collect();
                    if extra.iter().any(|&x| x != 0) {
                        pool.push(extra);
                    }
                }
                p
            }
        };
        basis.push(row);
    }
    basis
}

/// Reduces `v` to the lexicographically smallest vector (entries in `[0, m)`)
/// of its coset modulo the lattice given by [`howell_basis`].
pub fn reduce_by_echelon(basis: &[Vec<i64>], v: &mut [i64], m: i64) {
    for x in v.iter_mut() {
        *x = x.rem_euclid(m);
    }
    for (j, row) in basis.iter().enumerate() {
        let g = row[j];
        if g == m {
            continue;
        }
        let q = v[j] / g;
        if q != 0 {
            for (x, &r) in v.iter_mut().zip(row) {
                *x = md(*x as i128 - q as i128 * r as i128, m);
            }
        }
    }
}

/// `A x` over the integers.
pub fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(x).map(|(&p, &q)| p * q).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul_mod(a: &[Vec<i64>], b: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
        let (r, k, c) = (a.len(), b.len(), b[0].len());
        (0..r).map(|i| (0..c).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum::<i64>().rem_euclid(m)).collect()).collect()
    }

    #[test]
    fn smith_of_small_integer_matrix() {
        // Z-form diag(2, 6, 12); 1728 keeps every factor visible
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_mod(&a, 3, 3, 1728, true, true);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let p = s.left.unwrap();
        let q = s.right.unwrap();
        let paq = mat_mul_mod(&mat_mul_mod(&p, &a, 1728), &q, 1728);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { s.diagonal[i] % 1728 } else { 0 };
                assert_eq!(paq[i][j], expect);
            }
        }
    }

    #[test]
    fn smith_mod_composite_needs_gcd_steps() {
        // entries 2 and 3 mod 6: neither divides the other
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = smith_mod(&a, 2, 2, 6, false, false);
        assert_eq!(s.diagonal, vec![1, 6]);
        let s = smith_mod(&a, 2, 2, 36, false, false);
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn units() {
        for m in 2..40i64 {
            for a in 0..m {
                let u = normalizing_unit(a, m);
                assert_eq!(u.gcd(&m), 1);
                assert_eq!((u * a).rem_euclid(m), a.gcd(&m) % m);
            }
        }
    }

    #[test]
    fn echelon_gives_coset_minimum() {
        // lattice generated by (2, 1) and 4Z^2 inside Z^2
        let m = 4;
        let basis = howell_basis(&[vec![2, 1]], 2, m);
        // brute force minimum of each coset
        let lattice: Vec<(i64, i64)> = (0..4).flat_map(|k| (0..4).map(move |_| ((2 * k) % 4, k % 4))).collect();
        for a in 0..4 {
            for b in 0..4 {
                let mut v = vec![a, b];
                reduce_by_echelon(&basis, &mut v, m);
                let best = lattice.iter().map(|&(x, y)| ((a + x) % 4, (b + y) % 4)).min().unwrap();
                assert_eq!((v[0], v[1]), best);
            }
        }
    }
}
