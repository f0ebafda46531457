//! Integer matrices and Smith normal form.
//!
//! The matrix type is generic over any signed integer scalar implementing the
//! `num` traits, so the same code runs on machine integers in tests and on
//! arbitrary-precision integers ([`IntegerMatrix`]) in the homology pipeline,
//! where overflow must be impossible by construction.
//!
//! [`check`] contains deliberately independent verification utilities
//! (cofactor determinants, determinantal divisors, and a coset-counting
//! oracle working modulo prime powers) used by the test suite to validate
//! the reduction without sharing any code path with it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense `rows × cols` matrix with exact integer entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// The matrix type used by the assembly pipeline: exact big integers.
pub type IntegerMatrix = Mat<BigInt>;

impl<T> Mat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

impl<T: Clone> Mat<T> {
    /// Build from a row-major nested list; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }
}

impl<T: Clone + Zero> Mat<T> {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>> Mat<T> {
    /// Matrix product.
    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Mat::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

/// Result of [`smith_normal_form`]: unimodular `u`, `v` and diagonal `d`
/// with `u · m · v = d`, non-negative diagonal entries, and `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: Mat<T>,
    pub d: Mat<T>,
    pub v: Mat<T>,
}

impl<T: Clone + Zero> Snf<T> {
    /// The diagonal entries of `d`, including zeros.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Compute the Smith normal form of `m` over any signed integer scalar.
///
/// Total: every integer matrix (including empty shapes) has one. The returned
/// transforms satisfy `u·m·v = d`, `det u, det v ∈ {±1}`, `d` diagonal with
/// `d_i ≥ 0` and `d_i | d_{i+1}`.
pub fn smith_normal_form<T>(m: &Mat<T>) -> Snf<T>
where
    T: Integer + Signed + Clone,
{
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = Mat::identity(rows);
    let mut v = Mat::identity(cols);

    let mut t = 0;
    while t < rows && t < cols {
        // Pivot: nonzero entry of smallest absolute value in the block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        // Clear column t with row operations and row t with column
        // operations. Entries the pivot divides are removed by a single exact
        // subtraction, which leaves the other line untouched; the rest take a
        // Bézout step, which replaces the pivot by a proper divisor but mixes
        // two whole lines, possibly re-dirtying the one already cleared. A
        // pass without Bézout steps therefore leaves both lines clear, and
        // since the pivot is a positive integer that shrinks strictly at
        // every Bézout step, such a pass is reached after finitely many
        // rounds. (One-shot Bézout steps, unlike a remainder-swap cascade,
        // also keep intermediate entries from compounding multiplicatively.)
        loop {
            let mut bezout_used = false;
            for i in (t + 1)..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                if d[(i, t)].is_multiple_of(&d[(t, t)]) {
                    let q = d[(i, t)].clone() / d[(t, t)].clone();
                    row_submul(&mut d, &mut u, i, t, &q);
                } else {
                    row_bezout(&mut d, &mut u, t, i);
                    bezout_used = true;
                }
            }
            for j in (t + 1)..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                if d[(t, j)].is_multiple_of(&d[(t, t)]) {
                    let q = d[(t, j)].clone() / d[(t, t)].clone();
                    col_submul(&mut d, &mut v, j, t, &q);
                } else {
                    col_bezout(&mut d, &mut v, t, j);
                    bezout_used = true;
                }
            }
            if !bezout_used {
                break;
            }
        }

        // Divisibility chain: if the pivot misses some remaining entry, fold
        // that row into row t and redo this pivot position. The redo's Bézout
        // step replaces the pivot by gcd(pivot, offender), a proper divisor,
        // so only finitely many folds happen per position.
        let mut chain_ok = true;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                    row_addin(&mut d, &mut u, t, i);
                    chain_ok = false;
                    break 'scan;
                }
            }
        }
        if chain_ok {
            t += 1;
        }
    }

    // Normalize signs so every diagonal entry is non-negative.
    for i in 0..rows.min(cols) {
        if d[(i, i)].is_negative() {
            negate_row(&mut d, &mut u, i);
        }
    }
    Snf { u, d, v }
}

/// Free rank and nontrivial torsion divisors of the cokernel of `m` viewed as
/// a map `Z^cols → Z^rows`: `coker ≅ Z^free ⊕ ⊕_i Z/d_i` over the returned
/// divisors (each > 1, in a divisibility chain).
pub fn cokernel<T>(m: &Mat<T>) -> (usize, Vec<T>)
where
    T: Integer + Signed + Clone,
{
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let torsion = diag
        .into_iter()
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    (m.rows() - rank, torsion)
}

/// Rank of the kernel of `m` viewed as a map `Z^cols → Z^rows` (the kernel of
/// an integer matrix is free).
pub fn kernel_rank<T>(m: &Mat<T>) -> usize
where
    T: Integer + Signed + Clone,
{
    let snf = smith_normal_form(m);
    let rank = snf.diagonal().iter().filter(|x| !x.is_zero()).count();
    m.cols() - rank
}

fn swap_rows<T: Clone>(d: &mut Mat<T>, u: &mut Mat<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols() {
        let tmp = d[(a, j)].clone();
        d[(a, j)] = d[(b, j)].clone();
        d[(b, j)] = tmp;
    }
    for j in 0..u.cols() {
        let tmp = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = tmp;
    }
}

fn swap_cols<T: Clone>(d: &mut Mat<T>, v: &mut Mat<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows() {
        let tmp = d[(i, a)].clone();
        d[(i, a)] = d[(i, b)].clone();
        d[(i, b)] = tmp;
    }
    for i in 0..v.rows() {
        let tmp = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = tmp;
    }
}

/// `row_i -= q · row_t` applied to both `d` and `u`.
fn row_submul<T: Integer + Clone>(d: &mut Mat<T>, u: &mut Mat<T>, i: usize, t: usize, q: &T) {
    for j in 0..d.cols() {
        d[(i, j)] = d[(i, j)].clone() - q.clone() * d[(t, j)].clone();
    }
    for j in 0..u.cols() {
        u[(i, j)] = u[(i, j)].clone() - q.clone() * u[(t, j)].clone();
    }
}

/// `row_t += row_i` applied to both `d` and `u`.
fn row_addin<T: Integer + Clone>(d: &mut Mat<T>, u: &mut Mat<T>, t: usize, i: usize) {
    for j in 0..d.cols() {
        d[(t, j)] = d[(t, j)].clone() + d[(i, j)].clone();
    }
    for j in 0..u.cols() {
        u[(t, j)] = u[(t, j)].clone() + u[(i, j)].clone();
    }
}

/// Normalized Bézout data for `(a, b)`: `g = x·a + y·b > 0` together with
/// the exact cofactors `p = a/g`, `q = b/g`, so that the 2×2 matrix
/// `[[x, y], [-q, p]]` is unimodular (determinant `(x·a + y·b)/g = 1`) and
/// sends `(a, b)` to `(g, 0)`.
fn bezout_block<T: Integer + Signed + Clone>(a: &T, b: &T) -> (T, T, T, T) {
    let eg = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (eg.gcd, eg.x, eg.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    let p = a.clone() / g.clone();
    let q = b.clone() / g;
    (x, y, p, q)
}

/// Unimodular 2×2 transform on rows `t` and `i` of `d` (and `u`) that puts
/// `gcd(d[t][t], d[i][t])` at the pivot and zeroes `d[i][t]`.
fn row_bezout<T: Integer + Signed + Clone>(d: &mut Mat<T>, u: &mut Mat<T>, t: usize, i: usize) {
    let (x, y, p, q) = bezout_block(&d[(t, t)], &d[(i, t)]);
    for c in 0..d.cols() {
        let rt = d[(t, c)].clone();
        let ri = d[(i, c)].clone();
        d[(t, c)] = x.clone() * rt.clone() + y.clone() * ri.clone();
        d[(i, c)] = p.clone() * ri - q.clone() * rt;
    }
    for c in 0..u.cols() {
        let rt = u[(t, c)].clone();
        let ri = u[(i, c)].clone();
        u[(t, c)] = x.clone() * rt.clone() + y.clone() * ri.clone();
        u[(i, c)] = p.clone() * ri - q.clone() * rt;
    }
}

/// Unimodular 2×2 transform on columns `t` and `j` of `d` (and `v`) that puts
/// `gcd(d[t][t], d[t][j])` at the pivot and zeroes `d[t][j]`.
fn col_bezout<T: Integer + Signed + Clone>(d: &mut Mat<T>, v: &mut Mat<T>, t: usize, j: usize) {
    let (x, y, p, q) = bezout_block(&d[(t, t)], &d[(t, j)]);
    for r in 0..d.rows() {
        let ct = d[(r, t)].clone();
        let cj = d[(r, j)].clone();
        d[(r, t)] = x.clone() * ct.clone() + y.clone() * cj.clone();
        d[(r, j)] = p.clone() * cj - q.clone() * ct;
    }
    for r in 0..v.rows() {
        let ct = v[(r, t)].clone();
        let cj = v[(r, j)].clone();
        v[(r, t)] = x.clone() * ct.clone() + y.clone() * cj.clone();
        v[(r, j)] = p.clone() * cj - q.clone() * ct;
    }
}

/// `col_j -= q · col_t` applied to both `d` and `v`.
fn col_submul<T: Integer + Clone>(d: &mut Mat<T>, v: &mut Mat<T>, j: usize, t: usize, q: &T) {
    for i in 0..d.rows() {
        d[(i, j)] = d[(i, j)].clone() - q.clone() * d[(i, t)].clone();
    }
    for i in 0..v.rows() {
        v[(i, j)] = v[(i, j)].clone() - q.clone() * v[(i, t)].clone();
    }
}

fn negate_row<T: Integer + Signed + Clone>(d: &mut Mat<T>, u: &mut Mat<T>, i: usize) {
    for j in 0..d.cols() {
        d[(i, j)] = -d[(i, j)].clone();
    }
    for j in 0..u.cols() {
        u[(i, j)] = -u[(i, j)].clone();
    }
}

pub mod check {
    //! Independent verification utilities.
    //!
    //! Nothing here shares code with the reduction above: determinants are
    //! computed by cofactor expansion, invariant factors via brute-force
    //! determinantal divisors (gcd of all `k × k` minors), and cokernel
    //! orders by enumerating a cyclic filtration of the quotient group with
    //! membership tested by linear solves modulo prime powers.

    use super::Mat;

    /// Determinant by cofactor expansion (exponential; fine for `n ≤ 8`).
    pub fn det_cofactor(m: &Mat<i128>) -> i128 {
        let n = m.rows();
        assert_eq!(n, m.cols(), "determinant of a non-square matrix");
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[(0, 0)];
        }
        let mut acc = 0i128;
        for j in 0..n {
            let a = m[(0, j)];
            if a == 0 {
                continue;
            }
            let minor_rows: Vec<Vec<i128>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[(i, c)]).collect())
                .collect();
            let minor = det_cofactor(&Mat::from_rows(&minor_rows));
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * a * minor;
        }
        acc
    }

    fn gcd(a: i128, b: i128) -> i128 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }

    /// The determinantal divisors `D_1, …, D_min(r,c)` of `m`: `D_k` is the
    /// gcd of all `k × k` minors (0 when all vanish). By the invariant
    /// factor theorem the Smith diagonal must satisfy `d_k = D_k / D_{k−1}`.
    pub fn determinantal_divisors(m: &Mat<i128>) -> Vec<i128> {
        let (r, c) = (m.rows(), m.cols());
        let n = r.min(c);
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut g = 0i128;
            for row_set in combinations(r, k) {
                for col_set in combinations(c, k) {
                    let sub: Vec<Vec<i128>> = row_set
                        .iter()
                        .map(|&i| col_set.iter().map(|&j| m[(i, j)]).collect())
                        .collect();
                    g = gcd(g, det_cofactor(&Mat::from_rows(&sub)));
                }
            }
            out.push(g);
        }
        out
    }

    /// The invariant factors implied by the determinantal divisors:
    /// `d_k = D_k / D_{k−1}` while `D_k ≠ 0`, then zeros.
    pub fn invariant_factors_by_minors(m: &Mat<i128>) -> Vec<i128> {
        let divisors = determinantal_divisors(m);
        let mut out = Vec::with_capacity(divisors.len());
        let mut prev = 1i128;
        for d in divisors {
            if d == 0 {
                out.push(0);
            } else {
                out.push(d / prev);
                prev = d;
            }
        }
        out
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
        out
    }

    fn factorize(mut n: i128) -> Vec<(i128, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    /// p-adic valuation of `x` capped at `cap` (`x = 0` reports `cap`).
    fn valuation(mut x: i128, p: i128, cap: u32) -> u32 {
        if x == 0 {
            return cap;
        }
        let mut v = 0;
        while v < cap && x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit `x` modulo `m` by extended Euclid.
    fn inv_mod(x: i128, m: i128) -> i128 {
        let (mut r0, mut r1) = (m, x.rem_euclid(m));
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "not a unit mod {m}");
        s0.rem_euclid(m)
    }

    /// Whether `A·x ≡ b (mod p^e)` has a solution. Diagonalizes over `Z/p^e`
    /// with a globally valuation-minimal pivot (any entry of minimal p-adic
    /// valuation divides all remaining entries mod `p^e`, so full elimination
    /// below and to the right always succeeds), then checks each pivot
    /// equation `d_i · x_i ≡ c_i` for `val(c_i) ≥ val(d_i)` and each zero row
    /// for `c ≡ 0`.
    fn solvable_mod_prime_power(a: &Mat<i128>, b: &[i128], p: i128, e: u32) -> bool {
        let m = p.pow(e);
        let rows = a.rows();
        let cols = a.cols();
        let mut mat: Vec<Vec<i128>> = (0..rows)
            .map(|i| (0..cols).map(|j| a[(i, j)].rem_euclid(m)).collect())
            .collect();
        let mut rhs: Vec<i128> = b.iter().map(|&x| x.rem_euclid(m)).collect();

        let mut t = 0;
        while t < rows && t < cols {
            // Globally valuation-minimal pivot in the remaining block.
            let mut best: Option<(usize, usize, u32)> = None;
            for i in t..rows {
                for j in t..cols {
                    if mat[i][j] != 0 {
                        let v = valuation(mat[i][j], p, e);
                        if best.map_or(true, |(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let Some((pi, pj, pv)) = best else { break };
            mat.swap(t, pi);
            rhs.swap(t, pi);
            for row in mat.iter_mut() {
                row.swap(t, pj);
            }
            let unit = mat[t][t] / p.pow(pv);
            let unit_inv = inv_mod(unit, m);
            // Eliminate below (row operations, touching rhs)...
            for i in (t + 1)..rows {
                if mat[i][t] == 0 {
                    continue;
                }
                let factor = ((mat[i][t] / p.pow(pv)) * unit_inv).rem_euclid(m);
                for j in t..cols {
                    mat[i][j] = (mat[i][j] - factor * mat[t][j]).rem_euclid(m);
                }
                rhs[i] = (rhs[i] - factor * rhs[t]).rem_euclid(m);
            }
            // ...and to the right (column operations = change of variables,
            // not touching rhs).
            for j in (t + 1)..cols {
                if mat[t][j] == 0 {
                    continue;
                }
                let factor = ((mat[t][j] / p.pow(pv)) * unit_inv).rem_euclid(m);
                for i in t..rows {
                    mat[i][j] = (mat[i][j] - factor * mat[i][t]).rem_euclid(m);
                }
            }
            t += 1;
        }
        for i in 0..rows {
            if i < t {
                if valuation(rhs[i], p, e) < valuation(mat[i][i], p, e) {
                    return false;
                }
            } else if rhs[i] != 0 {
                return false;
            }
        }
        true
    }

    /// True iff `A·x ≡ b (mod m)` has a solution, via CRT over the prime
    /// powers of `m`.
    pub fn solvable_mod(a: &Mat<i128>, b: &[i128], m: i128) -> bool {
        assert!(m >= 1);
        if m == 1 {
            return true;
        }
        factorize(m)
            .into_iter()
            .all(|(p, e)| solvable_mod_prime_power(a, b, p, e))
    }

    /// Brute-force order of `coker(m) = Z^rows / column-lattice` for a matrix
    /// whose cokernel is finite with exponent dividing `annihilator` (use an
    /// independently derived multiple, e.g. the last determinantal divisor
    /// ratio). Computes the order `t_i` of each standard basis vector in the
    /// quotient by the lattice plus the previously processed basis vectors;
    /// the quotient order is the product of the `t_i`. Membership of `v` in
    /// a lattice `L ⊇ n·Z^rows` is exact when tested modulo `n`.
    ///
    /// Returns `None` if some order exceeds `annihilator` (meaning the given
    /// annihilator was wrong, i.e. the cokernel is bigger than claimed).
    pub fn coset_count(m: &Mat<i128>, annihilator: i128) -> Option<i128> {
        let rows = m.rows();
        assert!(annihilator >= 1);
        let mut gens: Vec<Vec<i128>> = Vec::new();
        for j in 0..m.cols() {
            gens.push((0..rows).map(|i| m[(i, j)]).collect());
        }
        for i in 0..rows {
            let mut e = vec![0i128; rows];
            e[i] = annihilator;
            gens.push(e);
        }

        let mut order = 1i128;
        for i in 0..rows {
            let a_rows: Vec<Vec<i128>> = (0..rows)
                .map(|r| gens.iter().map(|g| g[r]).collect())
                .collect();
            let a = Mat::from_rows(&a_rows);
            let mut found = None;
            for t in 1..=annihilator {
                let mut b = vec![0i128; rows];
                b[i] = t;
                if solvable_mod(&a, &b, annihilator) {
                    found = Some(t);
                    break;
                }
            }
            order = order.checked_mul(found?)?;
            let mut e = vec![0i128; rows];
            e[i] = 1;
            gens.push(e);
        }
        Some(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(rows: &[Vec<i64>]) -> Mat<BigInt> {
        Mat::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    fn check_snf(m: &Mat<BigInt>) -> Vec<i64> {
        let snf = smith_normal_form(m);
        let product = snf.u.mul(m).mul(&snf.v);
        assert_eq!(product, snf.d, "u·m·v = d violated");
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "off-diagonal entry at ({i},{j})");
                }
            }
        }
        let diag: Vec<BigInt> = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain violated");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero in diagonal");
            }
        }
        diag.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn column_vector_of_ones_reduces_to_gcd() {
        assert_eq!(check_snf(&big(&[vec![1], vec![1]])), vec![1]);
    }

    #[test]
    fn already_diagonal_matrix_is_stable() {
        assert_eq!(check_snf(&big(&[vec![2, 0], vec![0, 0]])), vec![2, 0]);
    }

    #[test]
    fn two_by_two_with_det_minus_eight() {
        assert_eq!(check_snf(&big(&[vec![2, 4], vec![6, 8]])), vec![2, 4]);
    }

    #[test]
    fn empty_shapes_are_total() {
        assert_eq!(check_snf(&Mat::<BigInt>::zeros(0, 3)), Vec::<i64>::new());
        assert_eq!(check_snf(&Mat::<BigInt>::zeros(3, 0)), Vec::<i64>::new());
        assert_eq!(check_snf(&Mat::<BigInt>::zeros(0, 0)), Vec::<i64>::new());
    }

    #[test]
    fn negative_entries_normalize_to_nonnegative_diagonal() {
        let diag = check_snf(&big(&[vec![-3, 0], vec![0, -5]]));
        assert_eq!(diag, vec![1, 15]);
    }

    #[test]
    fn cokernel_splits_free_and_torsion() {
        // [[2,0],[0,3],[0,0]]: coker = Z/2 ⊕ Z/3 ⊕ Z ≅ Z/6 ⊕ Z in chain form.
        let m = big(&[vec![2, 0], vec![0, 3], vec![0, 0]]);
        let (free, torsion) = cokernel(&m);
        assert_eq!(free, 1);
        assert_eq!(torsion, vec![BigInt::from(6)]);
        assert_eq!(kernel_rank(&m), 0);
    }

    #[test]
    fn kernel_rank_counts_nullity() {
        let m = big(&[vec![1, 2, 3]]);
        assert_eq!(kernel_rank(&m), 2);
        let (free, torsion) = cokernel(&m);
        assert_eq!((free, torsion.len()), (0, 0));
    }

    #[test]
    fn minors_oracle_matches_on_fixed_matrices() {
        let samples: Vec<Vec<Vec<i128>>> = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]],
            vec![vec![2, 3, 5], vec![7, 11, 13]],
            vec![vec![-4, 6], vec![2, -9], vec![8, 3]],
        ];
        for rows in samples {
            let mi = Mat::from_rows(&rows);
            let mb = Mat::from_rows(
                &rows
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect::<Vec<_>>(),
            );
            let by_minors = check::invariant_factors_by_minors(&mi);
            let by_snf: Vec<i128> = smith_normal_form(&mb)
                .diagonal()
                .iter()
                .map(|x| i128::try_from(x).unwrap())
                .collect();
            assert_eq!(by_snf, by_minors, "matrix {rows:?}");
        }
    }

    #[test]
    fn coset_count_agrees_with_invariant_factors() {
        // coker = Z/2 ⊕ Z/4, order 8, exponent 4.
        let m = Mat::from_rows(&[vec![2i128, 0], vec![0, 4]]);
        assert_eq!(check::coset_count(&m, 4), Some(8));
        // coker = Z/2 ⊕ Z/4 presented non-diagonally (d = 2, 4).
        let m = Mat::from_rows(&[vec![2i128, 4], vec![6, 8]]);
        assert_eq!(check::coset_count(&m, 4), Some(8));
        // identity: trivial quotient.
        let m = Mat::from_rows(&[vec![1i128, 0], vec![0, 1]]);
        assert_eq!(check::coset_count(&m, 1), Some(1));
        // Z/6 from a 1×2 presentation.
        let m = Mat::from_rows(&[vec![6i128, 12]]);
        assert_eq!(check::coset_count(&m, 6), Some(6));
    }

    #[test]
    fn solvable_mod_detects_membership() {
        // Lattice spanned by (2,0) and (0,4) in Z^2, mod 8.
        let a = Mat::from_rows(&[vec![2i128, 0], vec![0, 4]]);
        assert!(check::solvable_mod(&a, &[4, 0], 8));
        assert!(check::solvable_mod(&a, &[2, 4], 8));
        assert!(!check::solvable_mod(&a, &[1, 0], 8));
        assert!(!check::solvable_mod(&a, &[0, 2], 8));
        // Mixed-prime modulus exercises the CRT split.
        let a = Mat::from_rows(&[vec![6i128], vec![10]]);
        assert!(check::solvable_mod(&a, &[18, 30], 60));
        assert!(!check::solvable_mod(&a, &[6, 0], 60));
    }
}
