//! Exact matrices: integer (Goeritz, Seifert, 2-reduced Jacobians) and
//! Laurent-polynomial (Alexander), with fraction-free determinants.

pub mod invariants;

use crate::algebra::{
    fox_derivative, GroupRingElement, LaurentPoly,
};
use crate::presentation::Presentation;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
    pub row_tags: Vec<String>,
    pub col_tags: Vec<String>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_tags: (0..rows).map(|i| format!("r{}", i)).collect(),
            col_tags: (0..cols).map(|i| format!("c{}", i)).collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(*v);
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out.row_tags = self.col_tags.clone();
        out.col_tags = self.row_tags.clone();
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Fraction-free Bareiss elimination; the empty matrix has determinant 1.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<BigInt> = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = t / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        sign * m[n * n - 1].clone()
    }

    /// Same matrix entries interpreted over Z[t, t^-1].
    pub fn to_laurent(&self, nvars: usize) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(self.rows, self.cols, nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * self.cols + j] = LaurentPoly::constant(nvars, self.at(i, j).clone());
            }
        }
        out.row_tags = self.row_tags.clone();
        out.col_tags = self.col_tags.clone();
        out
    }

    pub fn render_text(&self) -> String {
        render_grid(self.rows, self.cols, |i, j| self.at(i, j).to_string())
    }

    pub fn render_latex(&self) -> String {
        render_latex(self.rows, self.cols, |i, j| self.at(i, j).to_string())
    }
}

/// Equality up to one permutation applied simultaneously to rows and
/// columns (used for fixtures whose labeling order is free).
pub fn equal_up_to_simultaneous_permutation(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows != b.rows || a.cols != b.cols || !a.is_square() {
        return a == b;
    }
    let n = a.rows;
    assert!(n <= 8, "permutation search is brute force");
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a.at(perm[i], perm[j]) == b.at(i, j))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    pub data: Vec<LaurentPoly>,
    pub row_tags: Vec<String>,
    pub col_tags: Vec<String>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            nvars,
            data: vec![LaurentPoly::zero(nvars); rows * cols],
            row_tags: (0..rows).map(|i| format!("r{}", i)).collect(),
            col_tags: (0..cols).map(|i| format!("c{}", i)).collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(rows.len(), cols.len(), self.nvars);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.at(r, c).clone();
            }
        }
        out.row_tags = rows.iter().map(|&r| self.row_tags[r].clone()).collect();
        out.col_tags = cols.iter().map(|&c| self.col_tags[c].clone()).collect();
        out
    }

    /// Exact determinant of a single-variable matrix by evaluation at
    /// integer points and rational interpolation.
    pub fn determinant(&self) -> LaurentPoly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        assert_eq!(self.nvars, 1, "determinant implemented for Z[t,t^-1]");
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one(1);
        }
        // Shift each row so its entries are honest polynomials.
        let mut shift_total: i64 = 0;
        let mut rows_shifted: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut degree_bound: i64 = 0;
        for i in 0..n {
            let row: Vec<&LaurentPoly> = (0..n).map(|j| self.at(i, j)).collect();
            if row.iter().all(|p| p.is_zero()) {
                return LaurentPoly::zero(1);
            }
            let lo = row
                .iter()
                .filter_map(|p| p.min_degree())
                .min()
                .expect("nonzero row");
            let hi = row
                .iter()
                .filter_map(|p| p.max_degree())
                .max()
                .expect("nonzero row");
            shift_total += lo;
            degree_bound += hi - lo;
            rows_shifted.push(row.into_iter().map(|p| p.shift(-lo)).collect());
        }
        let npoints = (degree_bound + 1) as usize;
        let mut xs = Vec::with_capacity(npoints);
        let mut ys = Vec::with_capacity(npoints);
        for k in 0..npoints {
            let x = BigInt::from(k as i64 - degree_bound / 2);
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    *m.at_mut(i, j) = eval_poly(&rows_shifted[i][j], &x);
                }
            }
            ys.push(m.determinant());
            xs.push(x);
        }
        let poly = interpolate_integer_poly(&xs, &ys);
        poly.shift(shift_total)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn render_text(&self) -> String {
        render_grid(self.rows, self.cols, |i, j| self.at(i, j).render())
    }

    pub fn render_latex(&self) -> String {
        render_latex(self.rows, self.cols, |i, j| latexify(&self.at(i, j).render()))
    }
}

fn eval_poly(p: &LaurentPoly, x: &BigInt) -> BigInt {
    debug_assert!(p.is_zero() || p.min_degree().unwrap() >= 0);
    let mut acc = BigInt::zero();
    for (e, c) in &p.terms {
        let mut pw = BigInt::one();
        for _ in 0..e[0] {
            pw *= x;
        }
        acc += c * pw;
    }
    acc
}

/// Lagrange interpolation through integer points; asserts the result has
/// integer coefficients.
fn interpolate_integer_poly(xs: &[BigInt], ys: &[BigInt]) -> LaurentPoly {
    let n = xs.len();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    for j in 0..n {
        if ys[j].is_zero() {
            continue;
        }
        // basis_j(t) = prod_{k != j} (t - x_k) / (x_j - x_k)
        let mut num: Vec<BigRational> = vec![BigRational::zero(); n];
        num[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for k in 0..n {
            if k == j {
                continue;
            }
            let xk = BigRational::from(xs[k].clone());
            let mut next = vec![BigRational::zero(); n];
            for d in 0..=deg {
                let c = num[d].clone();
                next[d + 1] += c.clone();
                next[d] -= c * xk.clone();
            }
            num = next;
            deg += 1;
            denom *= BigRational::from(xs[j].clone() - xs[k].clone());
        }
        let scale = BigRational::from(ys[j].clone()) / denom;
        for d in 0..=deg {
            acc[d] += num[d].clone() * scale.clone();
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in acc {
        assert!(c.is_integer(), "interpolation not integral");
        coeffs.push(c.numer().clone());
    }
    LaurentPoly::from_dense(0, &coeffs)
}

fn latexify(s: &str) -> String {
    s.replace("^-1", "^{-1}")
}

fn render_grid(rows: usize, cols: usize, f: impl Fn(usize, usize) -> String) -> String {
    let mut out = String::new();
    out.push('[');
    for i in 0..rows {
        if i > 0 {
            out.push_str(",\n ");
        }
        out.push('[');
        for j in 0..cols {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&f(i, j));
        }
        out.push(']');
    }
    out.push(']');
    out
}

fn render_latex(rows: usize, cols: usize, f: impl Fn(usize, usize) -> String) -> String {
    let mut out = String::from("\\begin{pmatrix}\n");
    for i in 0..rows {
        let row: Vec<String> = (0..cols).map(|j| f(i, j)).collect();
        out.push_str(&row.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{pmatrix}");
    out
}

/// The Jacobian of a presentation: entry (i, j) is the Fox derivative of
/// relator i with respect to generator j, computed on the stored spelling.
#[derive(Debug, Clone)]
pub struct JacobianMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<GroupRingElement>,
    pub row_tags: Vec<String>,
    pub col_tags: Vec<String>,
}

impl JacobianMatrix {
    pub fn at(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }
}

pub fn jacobian(p: &Presentation) -> JacobianMatrix {
    let rows = p.relators.len();
    let cols = p.generators.len();
    let mut entries = Vec::with_capacity(rows * cols);
    for r in &p.relators {
        for g in &p.generators {
            entries.push(fox_derivative(&r.word, g));
        }
    }
    JacobianMatrix {
        rows,
        cols,
        entries,
        row_tags: p
            .relators
            .iter()
            .enumerate()
            .map(|(i, r)| match r.region {
                Some(reg) => format!("r{}(region {})", i + 1, reg),
                None => format!("r{}", i + 1),
            })
            .collect(),
        col_tags: p.generators.iter().map(|g| g.name.clone()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_small() {
        let m = IntMatrix::from_rows(vec![vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]]);
        assert_eq!(m.determinant(), BigInt::from(16));
        let z = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(z.determinant(), BigInt::zero());
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn bareiss_with_pivoting() {
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
    }

    #[test]
    fn laurent_determinant_interpolates() {
        // [[1 - t, -t], [1, -1 + t]] has det -(1-t)^2 + t = -t^2 + 3t - 1
        let mut m = LaurentMatrix::zeros(2, 2, 1);
        let one = LaurentPoly::one(1);
        let t = LaurentPoly::t_pow(1);
        *m.at_mut(0, 0) = &one - &t;
        *m.at_mut(0, 1) = -&t;
        *m.at_mut(1, 0) = one.clone();
        *m.at_mut(1, 1) = &t - &one;
        let det = m.determinant();
        let expected = &(&t - &(&t * &t)) - &(&(&one - &t) * &(&one - &t));
        // -(1-t)^2 + t... computed directly:
        let direct = &(&(&one - &t) * &(&t - &one)) + &t;
        assert_eq!(det, direct);
        let _ = expected;
    }

    #[test]
    fn laurent_determinant_with_negative_exponents() {
        // [[t^-1, 0], [0, t]] -> det = 1
        let mut m = LaurentMatrix::zeros(2, 2, 1);
        *m.at_mut(0, 0) = LaurentPoly::t_pow(-1);
        *m.at_mut(1, 1) = LaurentPoly::t_pow(1);
        assert_eq!(m.determinant(), LaurentPoly::one(1));
    }

    #[test]
    fn simultaneous_permutation_equality() {
        let a = IntMatrix::from_rows(vec![vec![-4, 2, 2], vec![2, 0, -2], vec![2, -2, 0]]);
        let b = IntMatrix::from_rows(vec![vec![0, 2, -2], vec![2, -4, 2], vec![-2, 2, 0]]);
        assert!(equal_up_to_simultaneous_permutation(&a, &b));
        // A bare row swap is not simultaneous: the diagonal multiset differs.
        let c = IntMatrix::from_rows(vec![vec![-4, 2, 2], vec![2, -2, 0], vec![2, 0, -2]]);
        assert!(!equal_up_to_simultaneous_permutation(&a, &c));
        let d = IntMatrix::from_rows(vec![vec![-4, 2, 2], vec![2, 1, -2], vec![2, -2, 0]]);
        assert!(!equal_up_to_simultaneous_permutation(&a, &d));
    }
}
