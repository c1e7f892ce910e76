//! Smith normal form over the integers with retained transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::presentation::Presentation;

/// `left * input * right = diag(invariants)`, with `left` and `right`
/// unimodular and their inverses kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    rows: usize,
    cols: usize,
    invariants: Vec<BigInt>,
    left: Vec<Vec<BigInt>>,
    left_inv: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    right_inv: Vec<Vec<BigInt>>,
    wide: bool,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, one per `min(rows, cols)`.
    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    /// The invariants as machine integers, when they fit.
    pub fn invariants_i64(&self) -> Option<Vec<i64>> {
        self.invariants.iter().map(|d| d.to_i64()).collect()
    }

    /// Number of zero invariants.
    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_zero()).count()
    }

    /// Invariants other than 1 and 0: the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    pub fn left(&self) -> &[Vec<BigInt>] {
        &self.left
    }

    pub fn right(&self) -> &[Vec<BigInt>] {
        &self.right
    }

    pub fn left_inverse(&self) -> &[Vec<BigInt>] {
        &self.left_inv
    }

    pub fn right_inverse(&self) -> &[Vec<BigInt>] {
        &self.right_inv
    }

    /// Whether the computation had to leave 64-bit arithmetic.
    pub fn used_wide_arithmetic(&self) -> bool {
        self.wide
    }

    /// The diagonal matrix as a dense `rows x cols` matrix.
    pub fn diagonal_matrix(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, v) in self.invariants.iter().enumerate() {
            d[i][i] = v.clone();
        }
        d
    }

    /// Re-checks the transforms against `input` and the divisibility chain.
    pub fn verify(&self, input: &[Vec<i64>]) -> bool {
        let a: Vec<Vec<BigInt>> = input.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let shape_ok = a.len() == self.rows && a.iter().all(|r| r.len() == self.cols);
        shape_ok
            && matmul(&matmul(&self.left, &a, self.cols), &self.right, self.cols) == self.diagonal_matrix()
            && matmul(&self.left, &self.left_inv, self.rows) == identity(self.rows)
            && matmul(&self.right, &self.right_inv, self.cols) == identity(self.cols)
            && self.invariants.iter().all(|d| !d.is_negative())
            && self.invariants.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
    }

    /// Column `k` of `right`: for a zero invariant `d_k` this is a
    /// primitive vector killed by the input matrix.
    pub fn right_column(&self, k: usize) -> Vec<BigInt> {
        self.right.iter().map(|r| r[k].clone()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..cols).map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])).collect()
        })
        .collect()
}

/// Computes the Smith normal form of a rectangular matrix. Works in `i64`
/// with overflow checks and restarts with arbitrary precision on overflow.
/// Pivots are chosen by smallest absolute value, ties going to the lowest
/// row and then column.
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");
    if let Some(s) = Reducer::<i64>::new(matrix.to_vec()).run() {
        return s.into_form(rows, cols, false);
    }
    let wide: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    Reducer::<BigInt>::new(wide).run().expect("arbitrary precision cannot overflow").into_form(rows, cols, true)
}

/// Smith form of the relator exponent-sum matrix, padded with zero rows
/// so there is one invariant per generator.
pub fn abelianization(pres: &Presentation) -> SmithForm {
    let g = pres.num_generators();
    let mut m = pres.exponent_matrix();
    while m.len() < g {
        m.push(vec![0; g]);
    }
    smith_normal_form(&m)
}

trait Scalar: Clone + Integer + Signed + CheckedAdd + CheckedMul + CheckedSub + Into<BigInt> {}
impl Scalar for i64 {}
impl Scalar for BigInt {}

struct Reducer<T> {
    d: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    v_inv: Vec<Vec<T>>,
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

/// `a - q * b`, checked.
fn sub_mul<T: Scalar>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}

struct Done<T> {
    d: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    v_inv: Vec<Vec<T>>,
}

impl<T: Scalar> Done<T> {
    fn into_form(self, rows: usize, cols: usize, wide: bool) -> SmithForm {
        let big = |m: Vec<Vec<T>>| -> Vec<Vec<BigInt>> {
            m.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect()
        };
        let invariants = (0..rows.min(cols)).map(|i| self.d[i][i].clone().into()).collect();
        SmithForm {
            rows,
            cols,
            invariants,
            left: big(self.u),
            left_inv: big(self.u_inv),
            right: big(self.v),
            right_inv: big(self.v_inv),
            wide,
        }
    }
}

impl<T: Scalar> Reducer<T> {
    fn new(d: Vec<Vec<T>>) -> Self {
        let rows = d.len();
        let cols = d.first().map_or(0, |r| r.len());
        Reducer { d, u: ident(rows), u_inv: ident(rows), v: ident(cols), v_inv: ident(cols) }
    }

    fn rows(&self) -> usize {
        self.d.len()
    }

    fn cols(&self) -> usize {
        self.v.len()
    }

    /// row_i -= q * row_j
    fn row_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for k in 0..self.cols() {
            self.d[i][k] = sub_mul(&self.d[i][k], q, &self.d[j][k])?;
        }
        for k in 0..self.rows() {
            self.u[i][k] = sub_mul(&self.u[i][k], q, &self.u[j][k])?;
        }
        let neg = -q.clone();
        for k in 0..self.rows() {
            self.u_inv[k][j] = sub_mul(&self.u_inv[k][j], &neg, &self.u_inv[k][i])?;
        }
        Some(())
    }

    /// col_j -= q * col_i
    fn col_op(&mut self, j: usize, i: usize, q: &T) -> Option<()> {
        for k in 0..self.rows() {
            self.d[k][j] = sub_mul(&self.d[k][j], q, &self.d[k][i])?;
        }
        for k in 0..self.cols() {
            self.v[k][j] = sub_mul(&self.v[k][j], q, &self.v[k][i])?;
        }
        let neg = -q.clone();
        for k in 0..self.cols() {
            self.v_inv[i][k] = sub_mul(&self.v_inv[i][k], &neg, &self.v_inv[j][k])?;
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.d.swap(i, j);
            self.u.swap(i, j);
            for r in &mut self.u_inv {
                r.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in &mut self.d {
                r.swap(i, j);
            }
            for r in &mut self.v {
                r.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.d[i] {
            *x = -x.clone();
        }
        for x in &mut self.u[i] {
            *x = -x.clone();
        }
        for r in &mut self.u_inv {
            r[i] = -r[i].clone();
        }
    }

    /// Position of the smallest nonzero entry among `cells`, first wins.
    fn smallest(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), T)> = None;
        for (i, j) in cells {
            let a = self.d[i][j].abs();
            if !a.is_zero() && best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(mut self) -> Option<Done<T>> {
        let (m, n) = (self.rows(), self.cols());
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.smallest((t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                for i in t + 1..m {
                    if !self.d[i][t].is_zero() {
                        let q = self.d[i][t].clone() / self.d[t][t].clone();
                        self.row_op(i, t, &q)?;
                    }
                }
                for j in t + 1..n {
                    if !self.d[t][j].is_zero() {
                        let q = self.d[t][j].clone() / self.d[t][t].clone();
                        self.col_op(j, t, &q)?;
                    }
                }
                let line = (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                if let Some((i, j)) = self.smallest(line) {
                    // a remainder survived; it becomes the new pivot
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let p = self.d[t][t].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(self.d[i][j].clone() % p.clone()).is_zero()));
                match bad {
                    Some(i) => self.row_op(t, i, &(-T::one()))?,
                    None => break,
                }
            }
            if self.d[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        Some(Done { d: self.d, u: self.u, u_inv: self.u_inv, v: self.v, v_inv: self.v_inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(m: &[Vec<i64>]) -> Vec<i64> {
        let s = smith_normal_form(m);
        assert!(s.verify(m), "{m:?}");
        s.invariants_i64().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(inv(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        let z = smith_normal_form(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(z.free_rank(), 2);
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(inv(&id), vec![1, 1, 1]);
        assert_eq!(smith_normal_form(&id).free_rank(), 0);
        assert_eq!(inv(&[vec![2, -3]]), vec![1]);
        assert_eq!(inv(&[vec![6, 0], vec![0, 4]]), vec![2, 12]);
        assert_eq!(inv(&[vec![0, 0, 0], vec![0, 0, 4], vec![1, -1, 0], vec![1, 1, 0]]), vec![1, 2, 4]);
    }

    #[test]
    fn empty_shapes() {
        let s = smith_normal_form(&[]);
        assert!(s.invariants().is_empty());
        let s = smith_normal_form(&[vec![], vec![]]);
        assert!(s.verify(&[vec![], vec![]]));
    }

    #[test]
    fn wide_fallback() {
        let big = i64::MAX / 3;
        let m = vec![vec![big, big - 1], vec![big - 7, big + 5]];
        let s = smith_normal_form(&m);
        assert!(s.used_wide_arithmetic());
        assert!(s.verify(&m));
        // det = big*(big+5) - (big-1)(big-7) = 13 big - 7
        let det: BigInt = BigInt::from(big) * 13 - 7;
        let prod: BigInt = s.invariants().iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn abelianizations() {
        let p = Presentation::parse("gens: x").unwrap();
        assert_eq!(abelianization(&p).free_rank(), 1);
        let p = Presentation::parse("gens: a b\nrels: a^2, b^2").unwrap();
        let s = abelianization(&p);
        assert_eq!(s.invariants_i64().unwrap(), vec![2, 2]);
        assert_eq!(s.free_rank(), 0);
        let p = Presentation::parse("gens: x y t\nrels: [x,y], t^4, t^-1 x t = y, t^-1 y t = x^-1").unwrap();
        assert_eq!(abelianization(&p).free_rank(), 0);
        let p = Presentation::parse("gens: x y\nrels: x^2 y^-3").unwrap();
        assert_eq!(abelianization(&p).free_rank(), 1);
    }
}
