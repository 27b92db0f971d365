//! Dense exact matrices over `BigInt` and `BigRational`, with the normal
//! forms the lattice layer needs: Bareiss determinants, canonical row-style
//! Hermite normal form, and Smith normal form with unimodular transforms.
//!
//! Vectors are rows throughout the crate; a basis is a matrix whose rows are
//! the basis vectors, and a Gram matrix acts by `c * g * c^T`.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::LatticeError;

/// Dense integer matrix (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

/// Dense rational matrix (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

/// Smith normal form `u * m * v = s` with `u`, `v` unimodular and `s`
/// diagonal with nonnegative entries satisfying the divisibility chain
/// `s[0] | s[1] | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub s: ZMat,
    pub u: ZMat,
    pub v: ZMat,
}

/// Smith decomposition extended with the transform inverses, used internally
/// for saturation and scaled-dual intersections.
#[derive(Debug, Clone)]
pub(crate) struct SmithExt {
    pub s: ZMat,
    pub u: ZMat,
    pub v: ZMat,
    pub v_inv: ZMat,
}

impl ZMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ZMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        ZMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> ZMat {
        let mut t = ZMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = ZMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn to_q(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect(),
        }
    }

    /// Determinant by the Bareiss fraction-free algorithm.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[(r, k)].is_zero());
                match swap {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[(i, j)] = q;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row[i] += k * row[j]
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = k * &self[(j, c)];
            self[(i, c)] += add;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let c = self.cols;
            self.data.swap(r * c + a, r * c + b);
        }
    }

    /// col[i] += k * col[j]
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = k * &self[(r, j)];
            self[(r, i)] += add;
        }
    }

    /// Canonical row-style Hermite normal form of the row span: pivots
    /// positive, entries above each pivot reduced into `[0, pivot)`, zero
    /// rows dropped. Two integer matrices have the same row span over `Z`
    /// iff their Hermite forms are equal.
    pub fn hermite(&self) -> ZMat {
        let mut m = self.clone();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // Reduce column `col` among rows >= pivot_row to a single entry.
            loop {
                let mut best: Option<(usize, BigInt)> = None;
                for r in pivot_row..m.rows {
                    let v = m[(r, col)].abs();
                    if v.is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((r, v)),
                        Some((_, bv)) if v < *bv => best = Some((r, v)),
                        _ => {}
                    }
                }
                let Some((r, _)) = best else { break };
                m.swap_rows(pivot_row, r);
                if m[(pivot_row, col)].is_negative() {
                    m.negate_row(pivot_row);
                }
                let mut done = true;
                for r in pivot_row + 1..m.rows {
                    if m[(r, col)].is_zero() {
                        continue;
                    }
                    let q = m[(r, col)].div_floor(&m[(pivot_row, col)]);
                    m.add_row(r, pivot_row, &-q);
                    if !m[(r, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            // Reduce entries above the pivot into [0, pivot).
            for r in 0..pivot_row {
                let q = m[(r, col)].div_floor(&m[(pivot_row, col)]);
                m.add_row(r, pivot_row, &-q);
            }
            pivot_row += 1;
        }
        ZMat {
            rows: pivot_row,
            cols: m.cols,
            data: m.data[..pivot_row * m.cols].to_vec(),
        }
    }

    /// Smith normal form with transforms.
    pub fn smith(&self) -> SmithDecomposition {
        let e = self.smith_ext();
        SmithDecomposition {
            s: e.s,
            u: e.u,
            v: e.v,
        }
    }

    /// The diagonal entries of the Smith form that exceed 1 (the nontrivial
    /// invariant factors), in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let s = self.smith().s;
        let mut out = Vec::new();
        for i in 0..s.rows.min(s.cols) {
            let d = s[(i, i)].clone();
            if !d.is_zero() && !d.is_one() {
                out.push(d);
            }
        }
        out
    }

    /// All nonzero diagonal entries of the Smith form (including 1s).
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let s = self.smith().s;
        let mut out = Vec::new();
        for i in 0..s.rows.min(s.cols) {
            let d = s[(i, i)].clone();
            if !d.is_zero() {
                out.push(d);
            }
        }
        out
    }

    pub(crate) fn smith_ext(&self) -> SmithExt {
        let mut m = self.clone();
        let (r, c) = (m.rows, m.cols);
        let mut u = ZMat::identity(r);
        let mut v = ZMat::identity(c);
        let mut v_inv = ZMat::identity(c);

        // Elementary ops, mirrored onto the transforms and their inverses.
        macro_rules! row_swap {
            ($a:expr, $b:expr) => {{
                m.swap_rows($a, $b);
                u.swap_rows($a, $b);
            }};
        }
        macro_rules! row_neg {
            ($i:expr) => {{
                m.negate_row($i);
                u.negate_row($i);
            }};
        }
        macro_rules! row_add {
            // row[i] += k * row[j]
            ($i:expr, $j:expr, $k:expr) => {{
                let k: BigInt = $k;
                m.add_row($i, $j, &k);
                u.add_row($i, $j, &k);
            }};
        }
        macro_rules! col_swap {
            ($a:expr, $b:expr) => {{
                m.swap_cols($a, $b);
                v.swap_cols($a, $b);
                v_inv.swap_rows($a, $b);
            }};
        }
        macro_rules! col_add {
            // col[i] += k * col[j]
            ($i:expr, $j:expr, $k:expr) => {{
                let k: BigInt = $k;
                m.add_col($i, $j, &k);
                v.add_col($i, $j, &k);
                v_inv.add_row($j, $i, &-&k);
            }};
        }

        let n = r.min(c);
        for t in 0..n {
            loop {
                // Deterministic pivot: minimal absolute value, then lex (r, c).
                let mut best: Option<(usize, usize, BigInt)> = None;
                for i in t..r {
                    for j in t..c {
                        let a = m[(i, j)].abs();
                        if a.is_zero() {
                            continue;
                        }
                        let better = match &best {
                            None => true,
                            Some((_, _, b)) => a < *b,
                        };
                        if better {
                            best = Some((i, j, a));
                        }
                    }
                }
                let Some((pi, pj, _)) = best else {
                    return finish_smith(m, u, v, v_inv, t);
                };
                row_swap!(t, pi);
                col_swap!(t, pj);
                if m[(t, t)].is_negative() {
                    row_neg!(t);
                }
                // Clear column t below the pivot.
                for i in t + 1..r {
                    if !m[(i, t)].is_zero() {
                        let q = m[(i, t)].div_floor(&m[(t, t)]);
                        row_add!(i, t, -q);
                    }
                }
                // Clear row t right of the pivot.
                for j in t + 1..c {
                    if !m[(t, j)].is_zero() {
                        let q = m[(t, j)].div_floor(&m[(t, t)]);
                        col_add!(j, t, -q);
                    }
                }
                let col_clear = (t + 1..r).all(|i| m[(i, t)].is_zero());
                let row_clear = (t + 1..c).all(|j| m[(t, j)].is_zero());
                if col_clear && row_clear {
                    break;
                }
            }
        }
        finish_smith(m, u, v, v_inv, n)
    }
}

/// Divisibility-chain cleanup shared by `smith_ext`: entries past `rank` are
/// zero; enforce `d[i] | d[i+1]` by 2x2 Bezout fixes, then return.
fn finish_smith(
    mut m: ZMat,
    mut u: ZMat,
    mut v: ZMat,
    mut v_inv: ZMat,
    rank: usize,
) -> SmithExt {
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            let a = m[(i, i)].clone();
            let b = m[(i + 1, i + 1)].clone();
            if a.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            changed = true;
            let j = i + 1;
            // Bring b into row i: row[i] += row[j].
            m.add_row(i, j, &BigInt::one());
            u.add_row(i, j, &BigInt::one());
            // Column Bezout on cols (i, j): g = x*a + y*b.
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = ((&a / &g), (&b / &g));
            // E = [[x, -b/g], [y, a/g]] acting on columns (i, j);
            // E^{-1} = [[a/g, b/g], [-y, x]].
            apply_col_pair(&mut m, i, j, &x, &y, &-&bg, &ag);
            apply_col_pair(&mut v, i, j, &x, &y, &-&bg, &ag);
            apply_row_pair_inv(&mut v_inv, i, j, &ag, &bg, &-&y, &x);
            // Clear the stray entry m[j][i] = b*y (divisible by g).
            let q = &m[(j, i)] / &g;
            m.add_row(j, i, &-&q);
            u.add_row(j, i, &-&q);
            debug_assert!(m[(j, i)].is_zero());
            debug_assert_eq!(m[(i, i)], g);
        }
        if !changed {
            break;
        }
    }
    SmithExt {
        s: m,
        u,
        v,
        v_inv,
    }
}

/// Right-multiply by the unimodular matrix that replaces
/// `col_i <- e00*col_i + e10*col_j`, `col_j <- e01*col_i + e11*col_j`.
fn apply_col_pair(
    m: &mut ZMat,
    i: usize,
    j: usize,
    e00: &BigInt,
    e10: &BigInt,
    e01: &BigInt,
    e11: &BigInt,
) {
    for r in 0..m.rows {
        let a = m[(r, i)].clone();
        let b = m[(r, j)].clone();
        m[(r, i)] = e00 * &a + e10 * &b;
        m[(r, j)] = e01 * &a + e11 * &b;
    }
}

/// Left-multiply by the 2x2 block `[[f00, f01], [f10, f11]]` on rows (i, j).
fn apply_row_pair_inv(
    m: &mut ZMat,
    i: usize,
    j: usize,
    f00: &BigInt,
    f01: &BigInt,
    f10: &BigInt,
    f11: &BigInt,
) {
    for c in 0..m.cols {
        let a = m[(i, c)].clone();
        let b = m[(j, c)].clone();
        m[(i, c)] = f00 * &a + f01 * &b;
        m[(j, c)] = f10 * &a + f11 * &b;
    }
}

impl std::ops::Index<(usize, usize)> for ZMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        ZMat::from_i64(rows).to_q()
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigRational> {
        self.row(i).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn stack(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols, "stack requires equal widths");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        QMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Exact integer matrix when every entry is integral.
    pub fn to_z(&self) -> Option<ZMat> {
        if !self.is_integral() {
            return None;
        }
        Some(ZMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }

    /// Least common denominator `d` and the integer matrix `d * self`.
    pub fn clear_denominators(&self) -> (BigInt, ZMat) {
        let mut d = BigInt::one();
        for x in &self.data {
            d = d.lcm(x.denom());
        }
        let z = ZMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| (x * BigRational::from(d.clone())).to_integer())
                .collect(),
        };
        (d, z)
    }

    /// `self * g * self^T` — the Gram matrix of the rows of `self` under the
    /// symmetric form `g`.
    pub fn gram_with(&self, g: &QMat) -> QMat {
        self.mul(g).mul(&self.transpose())
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigRational::one();
        }
        let mut m = self.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !m[(r, k)].is_zero());
            let Some(p) = pivot else {
                return BigRational::zero();
            };
            if p != k {
                for j in 0..n {
                    let c = m.cols;
                    m.data.swap(k * c + j, p * c + j);
                }
                det = -det;
            }
            det *= m[(k, k)].clone();
            let inv = m[(k, k)].clone();
            for r in k + 1..n {
                if m[(r, k)].is_zero() {
                    continue;
                }
                let f = &m[(r, k)] / &inv;
                for j in k..n {
                    let sub = &f * &m[(k, j)];
                    m[(r, j)] -= sub;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&r| !m[(r, k)].is_zero())?;
            if pivot != k {
                for j in 0..n {
                    let c = n;
                    m.data.swap(k * c + j, pivot * c + j);
                    inv.data.swap(k * c + j, pivot * c + j);
                }
            }
            let d = m[(k, k)].clone();
            for j in 0..n {
                m[(k, j)] /= d.clone();
                inv[(k, j)] /= d.clone();
            }
            for r in 0..n {
                if r == k || m[(r, k)].is_zero() {
                    continue;
                }
                let f = m[(r, k)].clone();
                for j in 0..n {
                    let s = &f * &m[(k, j)];
                    m[(r, j)] -= s;
                    let s = &f * &inv[(k, j)];
                    inv[(r, j)] -= s;
                }
            }
        }
        Some(inv)
    }

    /// Row rank over `Q`.
    pub fn rank(&self) -> usize {
        let (m, pivots) = self.rref();
        let _ = m;
        pivots.len()
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let c = m.cols;
                    m.data.swap(row * c + j, p * c + j);
                }
            }
            let d = m[(row, col)].clone();
            for j in 0..m.cols {
                m[(row, j)] /= d.clone();
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in 0..m.cols {
                    let s = &f * &m[(row, j)];
                    m[(r, j)] -= s;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis (as rows) of the left kernel `{ x : x * self = 0 }`.
    pub fn left_kernel(&self) -> QMat {
        // Right kernel of self^T, transposed back to rows.
        let t = self.transpose();
        let (r, pivots) = t.rref();
        let n = t.cols; // = self.rows
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
        let mut rows = Vec::new();
        for &f in &free {
            let mut x = vec![BigRational::zero(); n];
            x[f] = BigRational::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                x[pc] = -r[(ri, f)].clone();
            }
            rows.push(x);
        }
        if rows.is_empty() {
            QMat::zero(0, n)
        } else {
            QMat::from_rows(rows)
        }
    }

    /// Solve `y * a = b` for a single row `b`; `None` when inconsistent.
    /// When solutions form an affine family the free coordinates are set to
    /// zero, so the result is deterministic.
    pub fn solve_left(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.cols);
        // y * a = b  <=>  a^T y^T = b^T.
        let t = self.transpose();
        let mut aug = QMat::zero(t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug[(i, j)] = t[(i, j)].clone();
            }
            aug[(i, t.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        // Inconsistent iff a pivot lands in the last column.
        if pivots.iter().any(|&c| c == t.cols) {
            return None;
        }
        let mut y = vec![BigRational::zero(); t.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            y[pc] = r[(ri, t.cols)].clone();
        }
        Some(y)
    }

    /// Exact congruence diagonalization of a symmetric matrix: returns
    /// `(d, r)` with `r * self * r^T` diagonal equal to `d`. Degenerate
    /// inputs are fine; zero diagonal entries simply remain.
    pub fn congruence_diagonalize(&self) -> Result<(Vec<BigRational>, QMat), LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::NotSquare);
        }
        if !self.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        let n = self.rows;
        let mut g = self.clone();
        let mut r = QMat::identity(n);

        // Symmetric row+column operation helpers keeping r * G0 * r^T = g.
        let row_add = |g: &mut QMat, r: &mut QMat, i: usize, j: usize, k: &BigRational| {
            // basis change b_i <- b_i + k b_j
            for c in 0..n {
                let s = k * &g[(j, c)];
                g[(i, c)] += s;
            }
            for c in 0..n {
                let s = k * &g[(c, j)];
                g[(c, i)] += s;
            }
            for c in 0..n {
                let s = k * &r[(j, c)];
                r[(i, c)] += s;
            }
        };
        let row_swap = |g: &mut QMat, r: &mut QMat, i: usize, j: usize| {
            for c in 0..n {
                let tmp = g[(i, c)].clone();
                g[(i, c)] = g[(j, c)].clone();
                g[(j, c)] = tmp;
            }
            for c in 0..n {
                let tmp = g[(c, i)].clone();
                g[(c, i)] = g[(c, j)].clone();
                g[(c, j)] = tmp;
            }
            for c in 0..n {
                let tmp = r[(i, c)].clone();
                r[(i, c)] = r[(j, c)].clone();
                r[(j, c)] = tmp;
            }
        };

        for t in 0..n {
            if g[(t, t)].is_zero() {
                // Prefer a later basis vector with nonzero norm.
                if let Some(j) = (t + 1..n).find(|&j| !g[(j, j)].is_zero()) {
                    row_swap(&mut g, &mut r, t, j);
                } else if let Some(j) = (t + 1..n).find(|&j| !g[(t, j)].is_zero()) {
                    // Hyperbolic fix: b_t <- b_t + b_j gives norm 2*g[t][j].
                    row_add(&mut g, &mut r, t, j, &BigRational::one());
                } else {
                    continue; // row is entirely zero from t on: degenerate direction
                }
            }
            let pivot = g[(t, t)].clone();
            for i in t + 1..n {
                if g[(i, t)].is_zero() {
                    continue;
                }
                let k = -(&g[(i, t)] / &pivot);
                row_add(&mut g, &mut r, i, t, &k);
            }
        }
        let d = (0..n).map(|i| g[(i, i)].clone()).collect();
        Ok((d, r))
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[&[i64]]) -> ZMat {
        ZMat::from_i64(rows)
    }

    /// Oracle determinant by cofactor expansion (exponential; tiny inputs only).
    fn det_cofactor(m: &ZMat) -> BigInt {
        let n = m.rows;
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<BigInt>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[(r, c)].clone())
                        .collect()
                })
                .collect();
            let minor = ZMat::from_rows(minor_rows);
            let term = &m[(0, j)] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor_oracle() {
        let cases = vec![
            zm(&[&[2]]),
            zm(&[&[0, 1], &[1, 0]]),
            zm(&[&[0, 2], &[2, 0]]),
            zm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]),
            zm(&[&[3, -1, 0, 2], &[0, 0, 4, 1], &[-2, 5, 1, 1], &[1, 1, 1, 1]]),
            zm(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]),
            zm(&[&[1, 2], &[2, 4]]), // singular
        ];
        for m in cases {
            assert_eq!(m.det(), det_cofactor(&m));
        }
    }

    #[test]
    fn smith_of_scaled_hyperbolic_plane() {
        // Frozen expected value: SNF of [[0,2],[2,0]] is diag(2,2).
        let m = zm(&[&[0, 2], &[2, 0]]);
        let d = m.smith();
        assert_eq!(d.s, zm(&[&[2, 0], &[0, 2]]));
        assert!(d.u.is_unimodular());
        assert!(d.v.is_unimodular());
        assert_eq!(d.u.mul(&m).mul(&d.v), d.s);
    }

    #[test]
    fn smith_transforms_and_chain() {
        let cases = vec![
            zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            zm(&[&[1, 0], &[0, 1]]),
            zm(&[&[6, 0], &[0, 4]]),
            zm(&[&[0, 0], &[0, 0]]),
            zm(&[&[2, 6, 10], &[4, 8, 12]]),
            zm(&[&[3], &[6], &[9]]),
            zm(&[&[-4, 2, 0, 0, 0], &[2, -4, 1, 0, 7]]),
        ];
        for m in cases {
            let d = m.smith();
            assert!(d.u.is_unimodular(), "u not unimodular");
            assert!(d.v.is_unimodular(), "v not unimodular");
            assert_eq!(d.u.mul(&m).mul(&d.v), d.s, "u*m*v != s");
            // s diagonal, nonnegative, divisibility chain
            for i in 0..d.s.rows {
                for j in 0..d.s.cols {
                    if i != j {
                        assert!(d.s[(i, j)].is_zero(), "s not diagonal");
                    }
                }
            }
            let diag: Vec<BigInt> = (0..d.s.rows.min(d.s.cols))
                .map(|i| d.s[(i, i)].clone())
                .collect();
            for w in diag.windows(2) {
                assert!(!w[0].is_negative());
                if !w[0].is_zero() {
                    if !w[1].is_zero() {
                        assert!((&w[1] % &w[0]).is_zero(), "chain fails: {diag:?}");
                    }
                } else {
                    assert!(w[1].is_zero(), "zero before nonzero in chain");
                }
            }
        }
    }

    #[test]
    fn smith_ext_inverses() {
        let m = zm(&[&[2, 4, 4], &[-6, 6, 12]]);
        let e = m.smith_ext();
        assert_eq!(e.v.mul(&e.v_inv), ZMat::identity(3));
        assert_eq!(e.v_inv.mul(&e.v), ZMat::identity(3));
    }

    #[test]
    fn hermite_is_canonical_for_row_span() {
        let a = zm(&[&[2, 0, 1], &[0, 3, 1]]);
        // Same span, different presentation: row ops applied.
        let b = zm(&[&[2, 3, 2], &[0, 3, 1], &[2, -3, 0]]);
        assert_eq!(a.hermite(), b.hermite());
        // Idempotent.
        assert_eq!(a.hermite().hermite(), a.hermite());
        // Different span differs.
        let c = zm(&[&[2, 0, 1], &[0, 3, 2]]);
        assert_ne!(a.hermite(), c.hermite());
    }

    #[test]
    fn hermite_drops_zero_rows_and_fixes_signs() {
        let a = zm(&[&[0, 0], &[-3, 0], &[6, 0]]);
        let h = a.hermite();
        assert_eq!(h, zm(&[&[3, 0]]));
    }

    #[test]
    fn qmat_inverse_roundtrip() {
        let m = QMat::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[2, 3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(3));
        assert_eq!(inv.mul(&m), QMat::identity(3));
        let s = QMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = QMat::from_i64(&[&[1, 2, 0], &[2, 4, 0], &[0, 0, 1]]);
        let k = a.left_kernel();
        assert_eq!(k.rows, 1);
        let prod = k.mul(&a);
        assert!(prod.to_rows().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn solve_left_exact() {
        let a = QMat::from_i64(&[&[1, 2, 3], &[0, 1, 4]]);
        let b: Vec<BigRational> = vec![
            BigRational::from(BigInt::from(1)),
            BigRational::from(BigInt::from(4)),
            BigRational::from(BigInt::from(11)),
        ];
        let y = a.solve_left(&b).unwrap();
        // verify y * a == b
        let ym = QMat::from_rows(vec![y]);
        assert_eq!(ym.mul(&a).row_vec(0), b);
        // inconsistent target
        let bad: Vec<BigRational> = vec![
            BigRational::from(BigInt::from(1)),
            BigRational::from(BigInt::from(0)),
            BigRational::from(BigInt::from(0)),
        ];
        // b = (1,0,0) is not in the row space of a
        assert!(a.solve_left(&bad).is_none());
    }

    #[test]
    fn congruence_diagonalization_witness() {
        // Hyperbolic plane needs the zero-diagonal fix.
        let u = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        let (d, r) = u.congruence_diagonalize().unwrap();
        let check = r.gram_with(&u);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(check[(i, j)], d[i]);
                } else {
                    assert!(check[(i, j)].is_zero());
                }
            }
        }
        // One positive, one negative direction.
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        assert_eq!((pos, neg), (1, 1));
    }

    #[test]
    fn clear_denominators_roundtrip() {
        let m = QMat::from_rows(vec![vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-2), BigInt::from(3)),
        ]]);
        let (d, z) = m.clear_denominators();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(z, zm(&[&[3, -4]]));
    }
}
