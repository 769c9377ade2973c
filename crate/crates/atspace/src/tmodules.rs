//! Decomposition of the ambient space into irreducible modules for the
//! algebra generated by the raising map, the lowering maps, and the rank
//! projections, with per-module verification of the induced Leonard
//! structure.
//!
//! Modules are located through their lowest component. A module with
//! endpoint r and diameter d meets rank r in a one-dimensional space
//! annihilated by L, and the composite L R preserves ker L inside each
//! rank, acting on the lowest component of a diameter-d module by
//!
//! ```text
//!     lambda_d = (q^(N+M) - q^(N+M-d)) / (q - 1),
//! ```
//!
//! which is strictly increasing in d. Splitting ker L by the L R
//! eigenvalue therefore sorts lowest components by diameter. Each
//! eigenvector w_0 generates its module as w_i = R^i w_0, and every claim
//! about the module is then checked directly on the witness vectors:
//! support, raising, the two lowering actions with their exact
//! coefficients, the dual eigenvalues q^(-r-i), the tridiagonal action of
//! A = R + L in the witness basis, and the module's A-spectrum.
//!
//! The admissible (endpoint, diameter) pairs form the diagram
//!
//! ```text
//!     0 <= r <= N,    max(0, N - 2r) <= d <= min(N - r, N + M - 2r),
//! ```
//!
//! each pair occurring with a closed-form multiplicity, and the refined
//! count (sum of multiplicity times d + 1 over the diagram) equals |X|.
//! [`decompose`] certifies that rank block by rank block: the witness
//! vectors restricted to a rank block must form a square invertible
//! matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::operators::{ExactMatrix, Operators};
use crate::poset::PosetInstance;
use crate::qcomb::{mu, q_binomial, q_power, ExactScalar, Rational};
use crate::spectral::{eigenvalue, HalfIndex};

/// One (endpoint, diameter) class of the decomposition diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiEntry {
    pub endpoint: u32,
    pub diameter: u32,
    pub multiplicity: Rational,
}

fn diameter_range(r: u32, n: u32, m: u32) -> Option<(u32, u32)> {
    let lo = (n as i64 - 2 * r as i64).max(0);
    let hi = (n as i64 - r as i64).min(n as i64 + m as i64 - 2 * r as i64);
    (lo <= hi).then(|| (lo as u32, hi as u32))
}

/// The full diagram for the instance, endpoint ascending and diameter
/// descending within each endpoint, with multiplicities attached.
pub fn psi_set(q: u32, n: u32, m: u32) -> Vec<PsiEntry> {
    let mut out = Vec::new();
    for r in 0..=n {
        if let Some((lo, hi)) = diameter_range(r, n, m) {
            for d in (lo..=hi).rev() {
                out.push(PsiEntry {
                    endpoint: r,
                    diameter: d,
                    multiplicity: multiplicity(r as i64, d as i64, q, n, m),
                });
            }
        }
    }
    out
}

/// How many modules of endpoint r and diameter d occur, as the closed form
///
/// ```text
///     mu(2r + d - N) * (binom(2N - 2r - d, N - r - d) - binom(2N - 2r - d, N - r - d - 1))
/// ```
///
/// with q-binomials. The formula returns 0 off the diagram, so the
/// arguments may range freely.
pub fn multiplicity(r: i64, d: i64, q: u32, n: u32, m: u32) -> Rational {
    let n_i64 = n as i64;
    let head = mu(2 * r + d - n_i64, q, n, m);
    let top = 2 * n_i64 - 2 * r - d;
    let low = n_i64 - r - d;
    head * (q_binomial(top, low, q) - q_binomial(top, low - 1, q))
}

/// Eigenvalue of L R on the lowest component of a diameter-d module:
/// (q^(N+M) - q^(N+M-d)) / (q - 1). Zero at d = 0 and strictly increasing.
pub fn lowering_raising_eigenvalue(d: u32, q: u32, n: u32, m: u32) -> Rational {
    let nm = (n + m) as i64;
    let diff = q_power(q, nm) - q_power(q, nm - d as i64);
    diff / Rational::from_integer((q - 1).into())
}

/// Coefficient of w_(i-1) in L w_i on a module of diameter d:
///
/// ```text
///     xi_i = q^(N+M-d) * (q^i - 1)(q^d - q^(i-1)) / (q - 1)^2.
/// ```
pub fn xi(i: u32, d: u32, q: u32, n: u32, m: u32) -> Rational {
    assert!(i >= 1, "lowering coefficients start at i = 1");
    let qm1 = Rational::from_integer((q - 1).into());
    let a = q_power(q, i as i64) - q_power(q, 0);
    let b = q_power(q, d as i64) - q_power(q, i as i64 - 1);
    q_power(q, (n + m) as i64 - d as i64) * a * b / (&qm1 * &qm1)
}

/// Coefficient of w_(i-1) in L' w_i on a module of endpoint r and
/// diameter d:
///
/// ```text
///     xi'_i = q^(N+M-r-d) * (q^i - 1)(q^(d+1-i) - 1) / (q - 1)^2,
/// ```
///
/// related to the other lowering by xi_i = q^(r+i-1) * xi'_i.
pub fn xi_prime(i: u32, r: u32, d: u32, q: u32, n: u32, m: u32) -> Rational {
    assert!(i >= 1, "lowering coefficients start at i = 1");
    let qm1 = Rational::from_integer((q - 1).into());
    let a = q_power(q, i as i64) - q_power(q, 0);
    let b = q_power(q, d as i64 + 1 - i as i64) - q_power(q, 0);
    q_power(q, (n + m) as i64 - r as i64 - d as i64) * a * b / (&qm1 * &qm1)
}

/// One generated module: the witness vectors w_0, ..., w_d, each a full
/// coordinate vector supported in rank block endpoint + i.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleWitness {
    pub endpoint: u32,
    pub diameter: u32,
    pub vectors: Vec<Vec<ExactScalar>>,
}

/// Why a decomposition attempt was rejected. Every variant is a refuted
/// structural claim, not a resource problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeError {
    /// L R mapped some lowest-weight vector outside ker L at this rank.
    NotInvariant { endpoint: u32 },
    /// An L R eigenspace dimension disagreed with the multiplicity formula.
    MultiplicityMismatch {
        endpoint: u32,
        diameter: u32,
        expected: u64,
        found: u64,
    },
    /// The eigenspaces did not fill ker L at this rank.
    Incomplete { endpoint: u32 },
    /// Ranks of the nested images R^d (ker L) disagreed with the
    /// multiplicity formula.
    NestedRankMismatch { endpoint: u32, diameter: u32 },
    /// The witness vectors failed to span this rank block exactly once.
    NotDirectSum { rank: u32 },
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::NotInvariant { endpoint } => {
                write!(f, "L R does not preserve ker L at rank {endpoint}")
            }
            DecomposeError::MultiplicityMismatch {
                endpoint,
                diameter,
                expected,
                found,
            } => write!(
                f,
                "eigenspace at endpoint {endpoint}, diameter {diameter} has dimension {found}, expected {expected}"
            ),
            DecomposeError::Incomplete { endpoint } => {
                write!(f, "eigenspaces do not fill ker L at rank {endpoint}")
            }
            DecomposeError::NestedRankMismatch { endpoint, diameter } => write!(
                f,
                "nested image ranks disagree with the multiplicity at endpoint {endpoint}, diameter {diameter}"
            ),
            DecomposeError::NotDirectSum { rank } => {
                write!(f, "witness vectors do not span rank block {rank} exactly once")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DecomposeError {}

/// Split the whole space into module witnesses, verifying on the way that
/// every structural claim of the decomposition holds: invariance of ker L
/// under L R, eigenspace dimensions against the multiplicity formula, a
/// cross-check of the same multiplicities through ranks of nested images
/// R^d (ker L), and finally that the witness vectors hit every rank block
/// as a basis.
pub fn decompose(
    p: &PosetInstance,
    ops: &Operators,
) -> Result<Vec<ModuleWitness>, DecomposeError> {
    decompose_impl(p, ops, false)
}

/// Like [`decompose`], but with the lowest components of each
/// (endpoint, diameter) class orthogonalized under the symmetric bilinear
/// form sum(u_k v_k) before the modules are generated. Classes with
/// distinct diameters are orthogonal automatically (they are eigenspaces
/// of the symmetric operator L' R for distinct eigenvalues), so this makes
/// the listed modules pairwise orthogonal.
pub fn decompose_orthogonalized(
    p: &PosetInstance,
    ops: &Operators,
) -> Result<Vec<ModuleWitness>, DecomposeError> {
    decompose_impl(p, ops, true)
}

fn decompose_impl(
    p: &PosetInstance,
    ops: &Operators,
    orthogonalize: bool,
) -> Result<Vec<ModuleWitness>, DecomposeError> {
    assert_eq!(
        (ops.q, ops.n, ops.m),
        (p.q(), p.n(), p.m()),
        "operators do not match the poset"
    );
    let (q, n, m) = (p.q(), p.n(), p.m());
    let size = p.len();
    let mut witnesses: Vec<ModuleWitness> = Vec::new();
    let mut block_columns: Vec<Vec<Vec<ExactScalar>>> =
        (0..=n).map(|_| Vec::new()).collect();
    for r in 0..=n {
        let block = p.rank_range(r);
        let s_r = block.len();
        let kbasis = if r == 0 {
            ExactMatrix::identity(q, s_r)
        } else {
            ops.l
                .submatrix(p.rank_range(r - 1), block.clone())
                .kernel_basis()
        };
        let k = kbasis.cols();

        // L R on this rank block, then expressed in the kernel basis.
        let lr = if r == n {
            ExactMatrix::zero(q, s_r, s_r)
        } else {
            let up = p.rank_range(r + 1);
            &ops.l.submatrix(block.clone(), up.clone()) * &ops.r.submatrix(up, block.clone())
        };
        let mut small_cols = Vec::with_capacity(k);
        for j in 0..k {
            let u = lr.apply(&kbasis.column(j));
            match coordinates_in(&kbasis, &u) {
                Some(c) => small_cols.push(c),
                None => return Err(DecomposeError::NotInvariant { endpoint: r }),
            }
        }
        let small = ExactMatrix::from_columns(q, k, &small_cols);

        let range = diameter_range(r, n, m);
        let mut strata: Vec<(u32, ExactMatrix)> = Vec::new();
        let mut total = 0usize;
        if let Some((lo, hi)) = range {
            for d in (lo..=hi).rev() {
                let lam = lowering_raising_eigenvalue(d, q, n, m);
                let shift =
                    ExactMatrix::identity(q, k).scale(&ExactScalar::from_rational(q, lam));
                let stratum = (&small - &shift).kernel_basis();
                let expected = expected_count(r, d, q, n, m);
                let found = stratum.cols() as u64;
                if found != expected {
                    return Err(DecomposeError::MultiplicityMismatch {
                        endpoint: r,
                        diameter: d,
                        expected,
                        found,
                    });
                }
                total += stratum.cols();
                strata.push((d, stratum));
            }
        }
        if total != k {
            return Err(DecomposeError::Incomplete { endpoint: r });
        }

        // Independent multiplicity cross-check: the rank of R^d applied to
        // ker L drops by exactly the number of diameter-d modules when d
        // steps to d + 1.
        if let Some((lo, hi)) = range {
            let mut ranks: Vec<usize> = Vec::with_capacity(hi as usize + 2);
            let mut image = kbasis.clone();
            ranks.push(image.rank());
            for t in 1..=hi + 1 {
                let from = r + t - 1;
                if from >= n {
                    ranks.push(0);
                    continue;
                }
                image = &ops
                    .r
                    .submatrix(p.rank_range(from + 1), p.rank_range(from))
                    * &image;
                ranks.push(image.rank());
            }
            for d in lo..=hi {
                let drop = ranks[d as usize] as i64 - ranks[d as usize + 1] as i64;
                if drop != expected_count(r, d, q, n, m) as i64 {
                    return Err(DecomposeError::NestedRankMismatch {
                        endpoint: r,
                        diameter: d,
                    });
                }
            }
        }

        for (d, stratum) in strata {
            let heads_block = &kbasis * &stratum;
            let mut heads: Vec<Vec<ExactScalar>> =
                (0..heads_block.cols()).map(|c| heads_block.column(c)).collect();
            if orthogonalize {
                gram_schmidt(&mut heads);
            }
            for head in heads {
                let mut w0 = vec![ExactScalar::zero(q); size];
                for (offset, v) in head.into_iter().enumerate() {
                    w0[block.start + offset] = v;
                }
                let mut vectors = vec![w0];
                for _ in 0..d {
                    let next = ops.r.apply(&vectors[vectors.len() - 1]);
                    vectors.push(next);
                }
                for (i, wi) in vectors.iter().enumerate() {
                    let b = r + i as u32;
                    block_columns[b as usize].push(wi[p.rank_range(b)].to_vec());
                }
                witnesses.push(ModuleWitness {
                    endpoint: r,
                    diameter: d,
                    vectors,
                });
            }
        }
    }

    // Direct-sum certificate, one rank block at a time: the witness
    // restrictions must form a square matrix of full rank.
    for b in 0..=n {
        let s_b = p.rank_size(b);
        let cols = &block_columns[b as usize];
        if cols.len() != s_b {
            return Err(DecomposeError::NotDirectSum { rank: b });
        }
        let stacked = ExactMatrix::from_columns(q, s_b, cols);
        if stacked.rank() != s_b {
            return Err(DecomposeError::NotDirectSum { rank: b });
        }
    }
    Ok(witnesses)
}

fn expected_count(r: u32, d: u32, q: u32, n: u32, m: u32) -> u64 {
    let mult = multiplicity(r as i64, d as i64, q, n, m);
    assert!(mult.is_integer(), "multiplicity is not an integer");
    mult.to_integer()
        .to_u64()
        .expect("multiplicity does not fit in u64")
}

/// Express `v` in the columns of `basis`, relying on the kernel-basis
/// shape: every column owns a row that is a standard basis vector, so the
/// coefficients can be read off directly and the reconstruction is then
/// checked exactly. Returns None when `v` is not in the column span.
fn coordinates_in(basis: &ExactMatrix, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let q = basis.q();
    let k = basis.cols();
    if k == 0 {
        return v.iter().all(ExactScalar::is_zero).then(Vec::new);
    }
    let mut marker: Vec<Option<usize>> = vec![None; k];
    for row in 0..basis.rows() {
        let mut only: Option<usize> = None;
        let mut clean = true;
        for col in 0..k {
            let x = basis.get(row, col);
            if x.is_zero() {
                continue;
            }
            if only.is_some() || !x.is_one() {
                clean = false;
                break;
            }
            only = Some(col);
        }
        if clean {
            if let Some(col) = only {
                if marker[col].is_none() {
                    marker[col] = Some(row);
                }
            }
        }
    }
    let mut coords = Vec::with_capacity(k);
    for slot in &marker {
        coords.push(v[(*slot)?].clone());
    }
    let mut recon = vec![ExactScalar::zero(q); v.len()];
    for (col, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (row, acc) in recon.iter_mut().enumerate() {
            acc.add_mul(c, basis.get(row, col));
        }
    }
    (recon == v).then_some(coords)
}

fn symmetric_dot(q: u32, u: &[ExactScalar], v: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::zero(q);
    for (x, y) in u.iter().zip(v) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

/// Classical Gram-Schmidt under the symmetric bilinear form, exact. The
/// form is positive definite on the real embedding with sqrt(q) > 0, so
/// the pivots never vanish on independent inputs.
fn gram_schmidt(vectors: &mut [Vec<ExactScalar>]) {
    for j in 0..vectors.len() {
        for t in 0..j {
            let q = vectors[j][0].base();
            let num = symmetric_dot(q, &vectors[j], &vectors[t]);
            if num.is_zero() {
                continue;
            }
            let den = symmetric_dot(q, &vectors[t], &vectors[t]);
            let coef = &num * &den.inv();
            let (front, back) = vectors.split_at_mut(j);
            let target = &mut back[0];
            for (x, y) in target.iter_mut().zip(&front[t]) {
                *x = &*x - &(&coef * y);
            }
        }
    }
}

/// One named check of [`verify_module`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCheck {
    pub name: &'static str,
    pub pass: bool,
}

/// The verdict on one witness family, including the honestly recovered
/// action matrix of A in the witness basis.
#[derive(Clone, Debug)]
pub struct ModuleReport {
    pub endpoint: u32,
    pub diameter: u32,
    pub checks: Vec<ModuleCheck>,
    pub action: ExactMatrix,
    pub pass: bool,
}

impl ModuleReport {
    pub fn first_failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|c| !c.pass).map(|c| c.name)
    }
}

fn scaled(v: &[ExactScalar], by: &Rational) -> Vec<ExactScalar> {
    v.iter().map(|x| x.scale(by)).collect()
}

/// Solve u = sum(c_i w_i) by reading one coefficient per witness vector
/// (their supports live in distinct rank blocks) and verifying the
/// reconstruction exactly. None when u is outside the witness span.
fn in_witness_coordinates(w: &ModuleWitness, u: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let mut coords = Vec::with_capacity(w.vectors.len());
    for wv in &w.vectors {
        let pos = wv.iter().position(|x| !x.is_zero())?;
        coords.push(&u[pos] * &wv[pos].inv());
    }
    let q = u.first()?.base();
    let mut recon = vec![ExactScalar::zero(q); u.len()];
    for (c, wv) in coords.iter().zip(&w.vectors) {
        if c.is_zero() {
            continue;
        }
        for (acc, x) in recon.iter_mut().zip(wv) {
            acc.add_mul(c, x);
        }
    }
    (recon == u).then_some(coords)
}

fn action_in_witness_basis(ops: &Operators, w: &ModuleWitness) -> Option<ExactMatrix> {
    let k = w.vectors.len();
    let mut cols = Vec::with_capacity(k);
    for wi in &w.vectors {
        cols.push(in_witness_coordinates(w, &ops.a.apply(wi))?);
    }
    Some(ExactMatrix::from_columns(ops.q, k, &cols))
}

/// p(x) * (x - c) on ascending coefficient vectors.
fn poly_times_x_minus(p: &[ExactScalar], c: &ExactScalar) -> Vec<ExactScalar> {
    let q = c.base();
    let mut out = vec![ExactScalar::zero(q); p.len() + 1];
    for (e, coef) in p.iter().enumerate() {
        out[e + 1] += coef;
        out[e] -= &(coef * c);
    }
    out
}

/// p - s * r on ascending coefficient vectors, r no longer than p.
fn poly_sub_scaled(p: &[ExactScalar], s: &ExactScalar, r: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut out = p.to_vec();
    for (e, coef) in r.iter().enumerate() {
        out[e] -= &(coef * s);
    }
    out
}

/// Characteristic polynomial of a tridiagonal matrix by the three-term
/// recurrence on principal minors. None if the matrix is not tridiagonal.
fn characteristic_of_tridiagonal(m: &ExactMatrix) -> Option<Vec<ExactScalar>> {
    let k = m.rows();
    let q = m.q();
    for r in 0..k {
        for c in 0..k {
            if r.abs_diff(c) >= 2 && !m.get(r, c).is_zero() {
                return None;
            }
        }
    }
    let mut prev = vec![ExactScalar::one(q)];
    if k == 0 {
        return Some(prev);
    }
    let mut cur = poly_times_x_minus(&prev, m.get(0, 0));
    for t in 1..k {
        let step = poly_times_x_minus(&cur, m.get(t, t));
        let offdiag = m.get(t - 1, t) * m.get(t, t - 1);
        let next = poly_sub_scaled(&step, &offdiag, &prev);
        prev = cur;
        cur = next;
    }
    Some(cur)
}

/// Check everything a witness family claims to be, one named check at a
/// time; no check assumes an earlier one.
///
/// support: w_i is nonzero and confined to rank block endpoint + i;
/// raising: R w_i = w_(i+1) and R kills the top;
/// lowest: L w_0 = 0;
/// lowering: L w_i = xi_i w_(i-1);
/// transpose_lowering: L' w_i = xi'_i w_(i-1);
/// dual_eigenvalues: A* w_i = q^(-endpoint-i) w_i;
/// action_tridiagonal: A acts in the witness basis by the tridiagonal
/// matrix with subdiagonal 1, zero diagonal, superdiagonal xi_i;
/// module_spectrum: the characteristic polynomial of that recovered action
/// is the product of (x - theta) over the d + 1 consecutive eigenvalues
/// centered on the spectrum, starting at index (N - d)/2.
pub fn verify_module(ops: &Operators, w: &ModuleWitness) -> ModuleReport {
    assert!(!w.vectors.is_empty(), "witness has no vectors");
    for wi in &w.vectors {
        assert_eq!(wi.len(), ops.size(), "witness vector length mismatch");
    }
    let (q, n, m) = (ops.q, ops.n, ops.m);
    let (r, d) = (w.endpoint, w.diameter);
    let count = w.vectors.len();
    let mut checks = Vec::new();

    let mut support_pass = count == d as usize + 1;
    for (i, wi) in w.vectors.iter().enumerate() {
        let rank = r + i as u32;
        if rank > n {
            support_pass = false;
            break;
        }
        let nonzero = wi.iter().any(|x| !x.is_zero());
        let confined = ops.estars[rank as usize].apply(wi) == *wi;
        support_pass &= nonzero && confined;
    }
    checks.push(ModuleCheck {
        name: "support",
        pass: support_pass,
    });

    let mut raising_pass = true;
    for (i, wi) in w.vectors.iter().enumerate() {
        let image = ops.r.apply(wi);
        if i + 1 < count {
            raising_pass &= image == w.vectors[i + 1];
        } else {
            raising_pass &= image.iter().all(ExactScalar::is_zero);
        }
    }
    checks.push(ModuleCheck {
        name: "raising",
        pass: raising_pass,
    });

    checks.push(ModuleCheck {
        name: "lowest",
        pass: ops.l.apply(&w.vectors[0]).iter().all(ExactScalar::is_zero),
    });

    let mut lowering_pass = true;
    for i in 1..count {
        let want = scaled(&w.vectors[i - 1], &xi(i as u32, d, q, n, m));
        lowering_pass &= ops.l.apply(&w.vectors[i]) == want;
    }
    checks.push(ModuleCheck {
        name: "lowering",
        pass: lowering_pass,
    });

    let mut transpose_pass = true;
    for i in 1..count {
        let want = scaled(&w.vectors[i - 1], &xi_prime(i as u32, r, d, q, n, m));
        transpose_pass &= ops.lprime.apply(&w.vectors[i]) == want;
    }
    checks.push(ModuleCheck {
        name: "transpose_lowering",
        pass: transpose_pass,
    });

    let mut dual_pass = true;
    for (i, wi) in w.vectors.iter().enumerate() {
        let want = scaled(wi, &q_power(q, -((r as i64) + i as i64)));
        dual_pass &= ops.astar.apply(wi) == want;
    }
    checks.push(ModuleCheck {
        name: "dual_eigenvalues",
        pass: dual_pass,
    });

    let action = action_in_witness_basis(ops, w);
    let expected = ExactMatrix::from_fn(q, count, count, |row, col| {
        if row == col + 1 {
            ExactScalar::one(q)
        } else if col == row + 1 {
            ExactScalar::from_rational(q, xi(col as u32, d, q, n, m))
        } else {
            ExactScalar::zero(q)
        }
    });
    let action_pass = action.as_ref() == Some(&expected);
    checks.push(ModuleCheck {
        name: "action_tridiagonal",
        pass: action_pass,
    });

    let mut spectrum_pass = false;
    if let Some(a) = &action {
        if d <= n && count == d as usize + 1 {
            if let Some(poly) = characteristic_of_tridiagonal(a) {
                let mut want = vec![ExactScalar::one(q)];
                for i in 0..count as u32 {
                    let theta = eigenvalue(q, n, m, HalfIndex::from_twice(n - d + 2 * i));
                    want = poly_times_x_minus(&want, &theta);
                }
                spectrum_pass = poly == want;
            }
        }
    }
    checks.push(ModuleCheck {
        name: "module_spectrum",
        pass: spectrum_pass,
    });

    let pass = checks.iter().all(|c| c.pass);
    ModuleReport {
        endpoint: r,
        diameter: d,
        checks,
        action: action.unwrap_or_else(|| ExactMatrix::zero(q, count, count)),
        pass,
    }
}

/// The Leonard shape of one module: the eigenvalue sequences of A and A*
/// restricted to it, and the standard two-parameter forms they fit.
#[derive(Clone, Debug)]
pub struct LeonardProfile {
    pub endpoint: u32,
    pub diameter: u32,
    /// (sqrt q)^(N+M+d) / (q - 1).
    pub h: ExactScalar,
    /// q^(-endpoint).
    pub hstar: ExactScalar,
    /// -q^(-d-1).
    pub s: ExactScalar,
    pub theta0: ExactScalar,
    pub theta0_star: ExactScalar,
    /// theta_i = theta0 + h (1 - q^i)(1 - s q^(i+1)) q^(-i), i = 0..=d.
    pub thetas: Vec<ExactScalar>,
    /// theta*_i = theta0* + h* (1 - q^i) q^(-i) = q^(-endpoint-i).
    pub dual_thetas: Vec<ExactScalar>,
    pub theta_parametrization_pass: bool,
    pub dual_parametrization_pass: bool,
    /// The recovered action matrix of A has zero diagonal.
    pub bipartite: bool,
    /// Its sub- and superdiagonal entries are all nonzero.
    pub irreducible: bool,
    pub pass: bool,
}

/// Extract and verify the Leonard shape of one witness family. The
/// eigenvalue sequence of A is the window of d + 1 consecutive spectrum
/// values starting at index (N - d)/2; the dual sequence is geometric.
pub fn leonard_profile(ops: &Operators, w: &ModuleWitness) -> LeonardProfile {
    let (q, n, m) = (ops.q, ops.n, ops.m);
    let (r, d) = (w.endpoint, w.diameter);
    assert!(r <= n && d <= n, "witness outside the diagram");
    let one = ExactScalar::one(q);
    let inv_qm1 = Rational::new(1.into(), (q - 1).into());
    let h = ExactScalar::sqrt_q_pow(q, (n + m + d) as i64).scale(&inv_qm1);
    let hstar = ExactScalar::from_rational(q, q_power(q, -(r as i64)));
    let s = ExactScalar::from_rational(q, -q_power(q, -(d as i64) - 1));
    let theta = |i: u32| eigenvalue(q, n, m, HalfIndex::from_twice(n - d + 2 * i));
    let theta0 = theta(0);
    let theta0_star = hstar.clone();
    let thetas: Vec<ExactScalar> = (0..=d).map(theta).collect();
    let dual_thetas: Vec<ExactScalar> = (0..=d)
        .map(|i| ExactScalar::from_rational(q, q_power(q, -((r + i) as i64))))
        .collect();
    let mut theta_parametrization_pass = true;
    let mut dual_parametrization_pass = true;
    for i in 0..=d {
        let qi = ExactScalar::from_rational(q, q_power(q, i as i64));
        let qi1 = ExactScalar::from_rational(q, q_power(q, i as i64 + 1));
        let inv_qi = q_power(q, -(i as i64));
        let fall = &one - &qi;
        let twist = &one - &(&s * &qi1);
        let want = &theta0 + &(&(&h * &fall) * &twist).scale(&inv_qi);
        theta_parametrization_pass &= thetas[i as usize] == want;
        let dual_want = &theta0_star + &(&hstar * &fall).scale(&inv_qi);
        dual_parametrization_pass &= dual_thetas[i as usize] == dual_want;
    }
    let action = action_in_witness_basis(ops, w);
    let (bipartite, irreducible) = match &action {
        Some(a) => {
            let k = a.rows();
            let bip = (0..k).all(|t| a.get(t, t).is_zero());
            let irr =
                (1..k).all(|t| !a.get(t - 1, t).is_zero() && !a.get(t, t - 1).is_zero());
            (bip, irr)
        }
        None => (false, false),
    };
    let pass =
        theta_parametrization_pass && dual_parametrization_pass && bipartite && irreducible;
    LeonardProfile {
        endpoint: r,
        diameter: d,
        h,
        hstar,
        s,
        theta0,
        theta0_star,
        thetas,
        dual_thetas,
        theta_parametrization_pass,
        dual_parametrization_pass,
        bipartite,
        irreducible,
        pass,
    }
}

/// One diagonal-sum identity of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSumCheck {
    pub endpoint: u32,
    pub diameter: u32,
    pub pass: bool,
}

/// The diagonal sums over the whole diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSumReport {
    pub rows: Vec<PsiSumCheck>,
    pub pass: bool,
}

/// For every diagram entry (r, d), summing multiplicities along the
/// diagonal (r - l, d + 2l), l = 0..=(N - r - d), telescopes to
///
/// ```text
///     mu(2r + d - N) * binom(2N - 2r - d, N - r - d).
/// ```
pub fn verify_psi_sums(q: u32, n: u32, m: u32) -> PsiSumReport {
    let mut rows = Vec::new();
    for entry in psi_set(q, n, m) {
        let (r, d) = (entry.endpoint as i64, entry.diameter as i64);
        let n_i64 = n as i64;
        let mut lhs = Rational::from_integer(0.into());
        for l in 0..=(n_i64 - r - d) {
            lhs += multiplicity(r - l, d + 2 * l, q, n, m);
        }
        let rhs = mu(2 * r + d - n_i64, q, n, m)
            * q_binomial(2 * n_i64 - 2 * r - d, n_i64 - r - d, q);
        rows.push(PsiSumCheck {
            endpoint: entry.endpoint,
            diameter: entry.diameter,
            pass: lhs == rhs,
        });
    }
    let pass = rows.iter().all(|c| c.pass);
    PsiSumReport { rows, pass }
}
