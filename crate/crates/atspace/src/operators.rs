//! Exact matrices over Q(sqrt q) and the operator algebra of A_q(N, M).
//!
//! All operators act on the free module with basis X (the vertex set), in
//! the canonical vertex order. With y indexing rows and z columns:
//!
//! * E*_i: diagonal 0/1, selecting the rank-i block;
//! * A*: diagonal, entry q^(-dim y) at y, so A* = sum_i q^(-i) E*_i;
//! * S: diagonal, entry (-1)^(dim y) at y;
//! * R (raising): entry 1 exactly when y covers z;
//! * L' : the transpose of R;
//! * L (lowering): entry q^(dim y) exactly when z covers y;
//! * A = R + L, the operator whose spectral theory the rest of the crate
//!   develops.
//!
//! [`verify_relations`] checks the complete list of algebraic identities
//! these satisfy, with exact zero residuals: the twist relations against
//! A*, the cubic and quartic relations among R, L', L and A, A*, the sign
//! relations against S, the nilpotency of the ladder operators, and the
//! block-tridiagonal shape of A relative to the E*_i.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::poset::PosetInstance;
use crate::qcomb::{q_power, ExactScalar, Rational};

/// A dense rows x cols matrix over Q(sqrt q). Multiplication skips zero
/// entries of the left factor, so products against the sparse operator
/// matrices cost O(nnz * cols) rather than O(rows * cols^2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zero(q: u32, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            q,
            rows,
            cols,
            entries: vec![ExactScalar::zero(q); rows * cols],
        }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = Self::zero(q, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ExactScalar::one(q);
        }
        m
    }

    pub fn from_fn(
        q: u32,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExactScalar,
    ) -> Self {
        let mut m = Self::zero(q, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Assemble from column vectors, all of length `rows`.
    pub fn from_columns(q: u32, rows: usize, columns: &[Vec<ExactScalar>]) -> Self {
        let mut m = Self::zero(q, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        assert_eq!(v.base(), self.q, "mixed scalar bases");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.q, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> ExactScalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = ExactScalar::zero(self.q);
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, by: &ExactScalar) -> Self {
        Self::from_fn(self.q, self.rows, self.cols, |r, c| self.get(r, c) * by)
    }

    pub fn scale_rational(&self, by: &Rational) -> Self {
        Self::from_fn(self.q, self.rows, self.cols, |r, c| self.get(r, c).scale(by))
    }

    pub fn column(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix(
        &self,
        rows: core::ops::Range<usize>,
        cols: core::ops::Range<usize>,
    ) -> Self {
        Self::from_fn(self.q, rows.len(), cols.len(), |r, c| {
            self.get(rows.start + r, cols.start + c).clone()
        })
    }

    /// Matrix-vector product, skipping zero matrix entries.
    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![ExactScalar::zero(self.q); self.rows];
        for r in 0..self.rows {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            for (x, vc) in row.iter().zip(v) {
                if !x.is_zero() {
                    out[r].add_mul(x, vc);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(self.q, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form over Q(sqrt q): (reduced matrix, pivot
    /// columns, rank). Deterministic, and exact by construction: the pivot
    /// for each column is the first remaining row with a nonzero entry.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut next = 0usize;
        for col in 0..m.cols {
            let Some(p) = (next..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next, p);
            let inv = m.get(next, col).inv();
            for j in col..m.cols {
                let v = m.get(next, j) * &inv;
                m.set(next, j, v);
            }
            // The pivot row is zero left of `col`, so elimination only
            // needs to touch columns from `col` on.
            let pivot_row: Vec<ExactScalar> =
                m.entries[next * m.cols + col..(next + 1) * m.cols].to_vec();
            for r in 0..m.rows {
                if r == next {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let neg = -&factor;
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        m.entries[r * m.cols + col + off].add_mul(&neg, pv);
                    }
                }
            }
            pivots.push(col);
            next += 1;
            if next == m.rows {
                break;
            }
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// A basis of the right kernel, one column per free variable, ordered
    /// by ascending free column. Each basis vector carries entry 1 at its
    /// own free column and 0 at every other free column, a shape the module
    /// decomposition relies on to read off coordinates.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let (r, pivots, _) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = ExactMatrix::zero(self.q, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, ExactScalar::one(self.q));
            for (b, &p) in pivots.iter().enumerate() {
                out.set(p, j, -r.get(b, f));
            }
        }
        out
    }

    fn check_same_shape(&self, rhs: &Self) {
        assert_eq!(self.q, rhs.q, "mixed scalar bases");
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
    }
}

impl core::ops::Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.check_same_shape(rhs);
        ExactMatrix::from_fn(self.q, self.rows, self.cols, |r, c| {
            self.get(r, c) + rhs.get(r, c)
        })
    }
}

impl core::ops::Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.check_same_shape(rhs);
        ExactMatrix::from_fn(self.q, self.rows, self.cols, |r, c| {
            self.get(r, c) - rhs.get(r, c)
        })
    }
}

impl core::ops::Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix::from_fn(self.q, self.rows, self.cols, |r, c| -self.get(r, c))
    }
}

impl core::ops::Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.q, rhs.q, "mixed scalar bases");
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = ExactMatrix::zero(self.q, self.rows, rhs.cols);
        let w = rhs.cols;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.entries[k * w..(k + 1) * w];
                let out_row = &mut out.entries[i * w..(i + 1) * w];
                for (o, y) in out_row.iter_mut().zip(rhs_row) {
                    o.add_mul(x, y);
                }
            }
        }
        out
    }
}

/// The rank-i diagonal idempotent E*_i: entry 1 at each rank-i vertex.
pub fn matrix_estar(p: &PosetInstance, i: u32) -> ExactMatrix {
    assert!(i <= p.n(), "rank {i} out of range");
    let mut m = ExactMatrix::zero(p.q(), p.len(), p.len());
    for v in p.rank_range(i) {
        m.set(v, v, ExactScalar::one(p.q()));
    }
    m
}

/// The diagonal operator A* with entry q^(-dim y) at vertex y.
pub fn matrix_astar(p: &PosetInstance) -> ExactMatrix {
    let mut m = ExactMatrix::zero(p.q(), p.len(), p.len());
    for v in 0..p.len() {
        let e = -(p.rank_of(v) as i64);
        m.set(v, v, ExactScalar::from_rational(p.q(), q_power(p.q(), e)));
    }
    m
}

/// The sign involution S with entry (-1)^(dim y) at vertex y.
pub fn matrix_s(p: &PosetInstance) -> ExactMatrix {
    let mut m = ExactMatrix::zero(p.q(), p.len(), p.len());
    for v in 0..p.len() {
        let sign = if p.rank_of(v) % 2 == 0 { 1 } else { -1 };
        m.set(v, v, ExactScalar::from_int(p.q(), sign));
    }
    m
}

/// The raising operator R: entry (y, z) is 1 exactly when y covers z.
pub fn matrix_r(p: &PosetInstance) -> ExactMatrix {
    let mut m = ExactMatrix::zero(p.q(), p.len(), p.len());
    for y in 0..p.len() {
        for &z in p.covers_down(y) {
            m.set(y, z as usize, ExactScalar::one(p.q()));
        }
    }
    m
}

/// The transpose L' of the raising operator.
pub fn matrix_lprime(p: &PosetInstance) -> ExactMatrix {
    let mut m = ExactMatrix::zero(p.q(), p.len(), p.len());
    for y in 0..p.len() {
        for &z in p.covers_down(y) {
            m.set(z as usize, y, ExactScalar::one(p.q()));
        }
    }
    m
}

/// The weighted lowering operator L: entry (y, z) is q^(dim y) exactly
/// when z covers y.
pub fn matrix_l(p: &PosetInstance) -> ExactMatrix {
    let mut m = ExactMatrix::zero(p.q(), p.len(), p.len());
    for z in 0..p.len() {
        for &y in p.covers_down(z) {
            let e = p.rank_of(y as usize) as i64;
            m.set(
                y as usize,
                z,
                ExactScalar::from_rational(p.q(), q_power(p.q(), e)),
            );
        }
    }
    m
}

/// A = R + L.
pub fn matrix_a(p: &PosetInstance) -> ExactMatrix {
    &matrix_r(p) + &matrix_l(p)
}

/// All seven operators of one instance, built once and shared by the
/// spectral and module routines. Fields are public: the matrices are plain
/// data, and tests perturb them to prove the verifiers can fail.
#[derive(Clone, Debug)]
pub struct Operators {
    pub q: u32,
    pub n: u32,
    pub m: u32,
    /// E*_0 .. E*_N in rank order.
    pub estars: Vec<ExactMatrix>,
    pub astar: ExactMatrix,
    pub s: ExactMatrix,
    pub r: ExactMatrix,
    pub lprime: ExactMatrix,
    pub l: ExactMatrix,
    pub a: ExactMatrix,
}

impl Operators {
    pub fn build(p: &PosetInstance) -> Self {
        Operators {
            q: p.q(),
            n: p.n(),
            m: p.m(),
            estars: (0..=p.n()).map(|i| matrix_estar(p, i)).collect(),
            astar: matrix_astar(p),
            s: matrix_s(p),
            r: matrix_r(p),
            lprime: matrix_lprime(p),
            l: matrix_l(p),
            a: matrix_a(p),
        }
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }
}

/// One verified identity: its name, the formula that was checked, the
/// length of the longest operator word in it, and whether the residual was
/// exactly zero.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: &'static str,
    pub formula: &'static str,
    pub word_length: u32,
    pub pass: bool,
}

/// Results of the full relation sweep. `pass` is the conjunction.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub rows: Vec<RelationCheck>,
    pub pass: bool,
}

impl RelationReport {
    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.rows.iter().find(|r| !r.pass)
    }
}

/// Build the operators of `p` and verify every relation. See
/// [`verify_relations_on`] for the list.
pub fn verify_relations(p: &PosetInstance) -> RelationReport {
    verify_relations_on(&Operators::build(p))
}

/// Verify the complete relation list on an already-built operator family.
///
/// Scalar shorthands: beta = q + q^(-1), and every coefficient is an exact
/// element of Q(sqrt q) (here in fact of Q).
pub fn verify_relations_on(ops: &Operators) -> RelationReport {
    let (q, n, m) = (ops.q, ops.n, ops.m);
    let size = ops.size();
    let id = ExactMatrix::identity(q, size);
    let scalar = |r: Rational| ExactScalar::from_rational(q, r);
    let qq = q_power(q, 1);
    let beta = scalar(&qq + q_power(q, -1));
    let beta1 = &beta + &ExactScalar::one(q); // beta + 1
    let qnm = q_power(q, (n + m) as i64);
    let q1 = &qq + Rational::one(); // q + 1

    let (estars, astar, s, r, lp, l, a) = (
        &ops.estars, &ops.astar, &ops.s, &ops.r, &ops.lprime, &ops.l, &ops.a,
    );

    let mut rows: Vec<RelationCheck> = Vec::new();
    fn eq_into(
        rows: &mut Vec<RelationCheck>,
        name: &'static str,
        formula: &'static str,
        word_length: u32,
        lhs: &ExactMatrix,
        rhs: &ExactMatrix,
    ) {
        rows.push(RelationCheck {
            name,
            formula,
            word_length,
            pass: lhs == rhs,
        });
    }
    macro_rules! eq {
        ($name:expr, $formula:expr, $len:expr, $lhs:expr, $rhs:expr $(,)?) => {
            eq_into(&mut rows, $name, $formula, $len, $lhs, $rhs)
        };
    }

    // Diagonal family.
    {
        let mut all = true;
        for (i, ei) in estars.iter().enumerate() {
            for (j, ej) in estars.iter().enumerate() {
                let prod = ei * ej;
                let want = if i == j { ei.clone() } else { ExactMatrix::zero(q, size, size) };
                all &= prod == want;
            }
        }
        rows.push(RelationCheck {
            name: "estar_products",
            formula: "E*_i * E*_j = [i = j] * E*_i",
            word_length: 2,
            pass: all,
        });
    }
    {
        let mut sum = ExactMatrix::zero(q, size, size);
        for ei in estars {
            sum = &sum + ei;
        }
        eq!("estar_resolution", "E*_0 + ... + E*_N = I", 1, &sum, &id);
    }
    {
        let mut sum = ExactMatrix::zero(q, size, size);
        for (i, ei) in estars.iter().enumerate() {
            sum = &sum + &ei.scale_rational(&q_power(q, -(i as i64)));
        }
        eq!(
            "astar_from_estars",
            "A* = sum_i q^(-i) * E*_i",
            1,
            &sum,
            astar,
        );
    }

    // Definitional couplings.
    eq!("a_is_r_plus_l", "A = R + L", 1, &(r + l), a);
    eq!("lprime_is_astar_l", "L' = A* * L", 2, &(astar * l), lp);

    // Sign relations.
    eq!("s_involution", "S^2 = I", 2, &(s * s), &id);
    eq!("s_astar_commute", "S * A* = A* * S", 2, &(s * astar), &(astar * s));
    let zero = ExactMatrix::zero(q, size, size);
    eq!("s_r_anticommute", "S*R + R*S = 0", 2, &(&(s * r) + &(r * s)), &zero);
    eq!(
        "s_lprime_anticommute",
        "S*L' + L'*S = 0",
        2,
        &(&(s * lp) + &(lp * s)),
        &zero,
    );
    eq!("s_l_anticommute", "S*L + L*S = 0", 2, &(&(s * l) + &(l * s)), &zero);
    eq!("s_a_anticommute", "S*A + A*S = 0", 2, &(&(s * a) + &(a * s)), &zero);

    // Twist relations against the diagonal A*.
    eq!(
        "r_astar_twist",
        "R * A* = q * A* * R",
        2,
        &(r * astar),
        &(astar * r).scale_rational(&qq),
    );
    eq!(
        "lprime_astar_twist",
        "L' * A* = q^(-1) * A* * L'",
        2,
        &(lp * astar),
        &(astar * lp).scale_rational(&q_power(q, -1)),
    );
    eq!(
        "l_astar_twist",
        "L * A* = q^(-1) * A* * L",
        2,
        &(l * astar),
        &(astar * l).scale_rational(&q_power(q, -1)),
    );

    // Cubic relations for the unweighted ladder pair (L', R).
    {
        let lp2 = lp * lp;
        let r2 = r * r;
        let lhs = &(&(&lp2 * r) - &(lp * &(r * lp)).scale_rational(&q1)) + &(r * &lp2).scale_rational(&qq);
        let rhs = (lp * astar).scale_rational(&(-&q1 * &qnm));
        eq!(
            "lprime_r_cubic_down",
            "(L')^2*R - (q+1)*L'*R*L' + q*R*(L')^2 = -(q+1)*q^(N+M)*L'*A*",
            3,
            &lhs,
            &rhs,
        );
        let lhs = &(&(lp * &r2) - &(r * &(lp * r)).scale_rational(&q1)) + &(&r2 * lp).scale_rational(&qq);
        let rhs = (astar * r).scale_rational(&(-&q1 * &qnm));
        eq!(
            "lprime_r_cubic_up",
            "L'*R^2 - (q+1)*R*L'*R + q*R^2*L' = -(q+1)*q^(N+M)*A**R",
            3,
            &lhs,
            &rhs,
        );
    }

    // Cubic relations for the weighted ladder pair (L, R).
    {
        let l2 = l * l;
        let r2 = r * r;
        let q3 = q_power(q, 3);
        let qq1 = &qq * &q1; // q(q+1)
        let lhs = &(&(&l2 * r) - &(l * &(r * l)).scale_rational(&qq1)) + &(r * &l2).scale_rational(&q3);
        let rhs = l.scale_rational(&(-&qnm * &q1));
        eq!(
            "l_r_cubic_down",
            "L^2*R - q(q+1)*L*R*L + q^3*R*L^2 = -q^(N+M)*(q+1)*L",
            3,
            &lhs,
            &rhs,
        );
        let lhs = &(&(l * &r2) - &(r * &(l * r)).scale_rational(&qq1)) + &(&r2 * l).scale_rational(&q3);
        let rhs = r.scale_rational(&(-&qnm * &q1));
        eq!(
            "l_r_cubic_up",
            "L*R^2 - q(q+1)*R*L*R + q^3*R^2*L = -q^(N+M)*(q+1)*R",
            3,
            &lhs,
            &rhs,
        );
    }

    // The tridiagonal-pair relations for (A, A*).
    {
        let a2 = a * a;
        let a3 = &a2 * a;
        let a_astar = a * astar;
        let astar_a = astar * a;
        let lhs = &(&(&a3 * astar) - &(&a2 * &astar_a).scale(&beta1))
            + &(&(&a_astar * &a2).scale(&beta1) - &(astar * &a3));
        let comm = &a_astar - &astar_a;
        let coeff = q_power(q, (n + m) as i64 - 2) * &q1 * &q1;
        let rhs = comm.scale_rational(&coeff);
        eq!(
            "a_astar_quartic",
            "A^3*A* - (beta+1)*A^2*A**A + (beta+1)*A*A**A^2 - A**A^3 = q^(N+M-2)*(q+1)^2*(A*A* - A**A)",
            4,
            &lhs,
            &rhs,
        );

        let astar2 = astar * astar;
        let lhs = &(&(&astar2 * a) - &(&astar_a * astar).scale(&beta)) + &(a * &astar2);
        eq!(
            "astar_a_cubic",
            "(A*)^2*A - beta*A**A*A* + A*(A*)^2 = 0",
            3,
            &lhs,
            &zero,
        );

        let astar3 = &astar2 * astar;
        let lhs = &(&(&astar3 * a) - &(&astar2 * &a_astar).scale(&beta1))
            + &(&(&astar_a * &astar2).scale(&beta1) - &(a * &astar3));
        eq!(
            "astar_a_quartic",
            "(A*)^3*A - (beta+1)*(A*)^2*A*A* + (beta+1)*A**A*(A*)^2 - A*(A*)^3 = 0",
            4,
            &lhs,
            &zero,
        );
    }

    // Nilpotency of the ladder operators at exponent N + 1.
    eq!("r_nilpotent", "R^(N+1) = 0", n + 1, &r.pow(n + 1), &zero);
    eq!("l_nilpotent", "L^(N+1) = 0", n + 1, &l.pow(n + 1), &zero);
    eq!(
        "lprime_nilpotent",
        "(L')^(N+1) = 0",
        n + 1,
        &lp.pow(n + 1),
        &zero,
    );

    // Recovering the ladder operators from A and the diagonal idempotents.
    {
        let mut sum = ExactMatrix::zero(q, size, size);
        for i in 0..n as usize {
            sum = &sum + &(&(&estars[i + 1] * a) * &estars[i]);
        }
        eq!(
            "r_from_a",
            "R = sum_i E*_(i+1) * A * E*_i",
            3,
            &sum,
            r,
        );
        let mut sum = ExactMatrix::zero(q, size, size);
        for i in 1..=n as usize {
            sum = &sum + &(&(&estars[i - 1] * a) * &estars[i]);
        }
        eq!("l_from_a", "L = sum_i E*_(i-1) * A * E*_i", 3, &sum, l);
    }
    {
        let mut all = true;
        for (j, ej) in estars.iter().enumerate() {
            for (i, ei) in estars.iter().enumerate() {
                if i.abs_diff(j) != 1 {
                    all &= (&(ej * a) * ei).is_zero();
                }
            }
        }
        rows.push(RelationCheck {
            name: "a_block_tridiagonal",
            formula: "E*_j * A * E*_i = 0 when |i - j| != 1",
            word_length: 3,
            pass: all,
        });
    }

    let pass = rows.iter().all(|r| r.pass);
    RelationReport { rows, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;
    use crate::qcomb::Rational;
    use num_bigint::BigInt;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn matrix_arithmetic_basics() {
        let a = ExactMatrix::from_fn(2, 2, 2, |r, c| {
            ExactScalar::from_int(2, (r * 2 + c) as i64)
        });
        let i = ExactMatrix::identity(2, 2);
        assert_eq!(&a * &i, a);
        assert_eq!(&i * &a, a);
        assert_eq!(&a - &a, ExactMatrix::zero(2, 2, 2));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.trace(), ExactScalar::from_int(2, 3));
        // [[0,1],[2,3]] squared is [[2,3],[6,11]].
        let sq = &a * &a;
        assert_eq!(sq.get(0, 0), &ExactScalar::from_int(2, 2));
        assert_eq!(sq.get(1, 1), &ExactScalar::from_int(2, 11));
    }

    #[test]
    fn matrix_multiplication_handles_surds() {
        // (I * sqrt(q)) squared is q * I.
        let s = ExactMatrix::identity(2, 3).scale(&ExactScalar::sqrt_q(2));
        assert_eq!(
            &s * &s,
            ExactMatrix::identity(2, 3).scale(&ExactScalar::from_int(2, 2))
        );
    }

    #[test]
    fn rref_and_kernel_of_a_rational_matrix() {
        // Rows (1, 2, 3) and (2, 4, 6) span a line; kernel is 2-dimensional.
        let m = ExactMatrix::from_fn(2, 2, 3, |r, c| {
            ExactScalar::from_int(2, ((r + 1) * (c + 1)) as i64)
        });
        let (rr, pivots, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, [0]);
        assert_eq!(rr.get(0, 1), &ExactScalar::from_int(2, 2));
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        // Every kernel column really is annihilated.
        for j in 0..k.cols() {
            let img = m.apply(&k.column(j));
            assert!(img.iter().all(ExactScalar::is_zero));
        }
        // Identity pattern at the free columns (1 and 2).
        assert!(k.get(1, 0).is_one());
        assert!(k.get(2, 0).is_zero());
        assert!(k.get(1, 1).is_zero());
        assert!(k.get(2, 1).is_one());
    }

    #[test]
    fn kernel_of_surd_shifted_matrix() {
        // x^2 = 2 for the matrix [[0, 2], [1, 0]]: eigenvector for sqrt(2).
        let mut m = ExactMatrix::zero(2, 2, 2);
        m.set(0, 1, ExactScalar::from_int(2, 2));
        m.set(1, 0, ExactScalar::one(2));
        let shifted = &m - &ExactMatrix::identity(2, 2).scale(&ExactScalar::sqrt_q(2));
        let k = shifted.kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        let image = m.apply(&v);
        for (iv, vv) in image.iter().zip(&v) {
            assert_eq!(iv, &(vv * &ExactScalar::sqrt_q(2)));
        }
    }

    #[test]
    fn operator_matrices_on_the_smallest_instance() {
        let p = build_poset(2, 1, 1).unwrap();
        let a = matrix_a(&p);
        let want = [[0, 1, 1], [1, 0, 0], [1, 0, 0]];
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(a.get(r, c), &ExactScalar::from_int(2, want[r][c]));
            }
        }
        let astar = matrix_astar(&p);
        assert_eq!(astar.get(0, 0), &ExactScalar::one(2));
        assert_eq!(
            astar.get(1, 1).as_rational().unwrap(),
            &Rational::new(BigInt::from(1), BigInt::from(2))
        );
        let s = matrix_s(&p);
        assert_eq!(s.get(0, 0), &ExactScalar::from_int(2, 1));
        assert_eq!(s.get(2, 2), &ExactScalar::from_int(2, -1));
    }

    #[test]
    fn estar_traces_count_rank_blocks() {
        let p = build_poset(2, 2, 2).unwrap();
        let sizes = [1i64, 12, 16];
        for (i, want) in sizes.into_iter().enumerate() {
            let e = matrix_estar(&p, i as u32);
            assert_eq!(e.trace(), ExactScalar::from_int(2, want));
        }
    }

    #[test]
    fn lprime_really_is_the_transpose_of_r() {
        let p = build_poset(2, 2, 2).unwrap();
        assert_eq!(matrix_lprime(&p), matrix_r(&p).transpose());
    }

    #[test]
    fn l_carries_the_rank_weights() {
        let p = build_poset(2, 2, 2).unwrap();
        let l = matrix_l(&p);
        // A rank-1 vertex y under a rank-2 vertex z gives entry q^1 = 2.
        let z = p.rank_range(2).start;
        let y = p.covers_down(z)[0] as usize;
        assert_eq!(l.get(y, z), &ExactScalar::from_int(2, 2));
        assert_eq!(l.get(z, y), &ExactScalar::zero(2));
    }

    #[test]
    fn relations_hold_on_small_instances() {
        for (q, n, m) in [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 2, 2), (3, 2, 1)] {
            let p = build_poset(q, n, m).unwrap();
            let report = verify_relations(&p);
            for row in &report.rows {
                assert!(row.pass, "({q}, {n}, {m}): {} failed", row.name);
            }
            assert!(report.pass);
            assert_eq!(report.first_failure().map(|r| r.name), None);
        }
    }

    #[test]
    fn relation_word_lengths_are_recorded() {
        let p = build_poset(2, 2, 2).unwrap();
        let report = verify_relations(&p);
        let quartic = report
            .rows
            .iter()
            .find(|r| r.name == "a_astar_quartic")
            .unwrap();
        assert_eq!(quartic.word_length, 4);
        let nil = report.rows.iter().find(|r| r.name == "r_nilpotent").unwrap();
        assert_eq!(nil.word_length, 3); // N + 1 for N = 2
    }

    #[test]
    fn perturbing_a_breaks_the_report() {
        let p = build_poset(2, 2, 2).unwrap();
        let mut ops = Operators::build(&p);
        // Flip one off-band entry of A; several identities must now fail,
        // and the report has to name at least one of them.
        let v = ops.a.get(0, 20) + &ExactScalar::one(2);
        ops.a.set(0, 20, v);
        let report = verify_relations_on(&ops);
        assert!(!report.pass);
        assert!(report.first_failure().is_some());
        let broken = report.first_failure().unwrap();
        assert!(!broken.pass);
    }

    #[test]
    fn scaled_rational_matches_scalar_multiplication() {
        let p = build_poset(2, 1, 1).unwrap();
        let r = matrix_r(&p);
        assert_eq!(
            r.scale_rational(&rat(3)),
            r.scale(&ExactScalar::from_int(2, 3))
        );
    }
}
