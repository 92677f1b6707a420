//! Change of basis between the standard monomials and the EFB.
//!
//! The primary route is substitution: `γ_{2i-1} → p_i + q_i`,
//! `γ_{2i} → p_i - q_i`, `γ_{2i-1}γ_{2i} → q_i p_i - p_i q_i` and an absent
//! pair `→ q_i p_i + p_i q_i = 1`; backwards, `p_i`, `q_i` expand through
//! their definition as half sums of generators. The Hadamard/permutation
//! matrices are built only for small `m` to cross-check that route.

use std::fmt;

use crate::efb::{EfbElement, EfbMultivector, EfbSymbol};
use crate::error::{Error, Result};
use crate::gamma::{GammaMonomial, GammaMultivector};
use crate::scalar::{Coefficient, Scalar};
use crate::check_dim;

/// Largest `m` for which the dense `4^m`-square matrices are built.
pub const MATRIX_LIMIT: usize = 5;

/// Square integer matrix. Every matrix of the transform (`H_1`, `H_m`,
/// `P_23`, `P_m`) has integer entries; the `1/2^m` normalization is applied
/// separately as a [`Scalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.set(i, i, 1);
        }
        out
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows are not square".into()));
        }
        Ok(DenseMatrix { n, data: rows.concat() })
    }

    /// Permutation matrix with `P[i][sigma[i]] = 1` (0-based).
    pub fn permutation(sigma: &[usize]) -> Self {
        let mut out = Self::zeros(sigma.len());
        for (i, &j) in sigma.iter().enumerate() {
            out.set(i, j, 1);
        }
        out
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let n = self.n * rhs.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.n {
                    for l in 0..rhs.n {
                        out.set(i * rhs.n + k, j * rhs.n + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// 0/1 entries with exactly one 1 per row and column.
    pub fn is_permutation(&self) -> bool {
        if self.data.iter().any(|&v| v != 0 && v != 1) {
            return false;
        }
        let rows_ok = (0..self.n).all(|i| self.row(i).iter().sum::<i64>() == 1);
        let cols_ok = (0..self.n).all(|j| (0..self.n).map(|i| self.get(i, j)).sum::<i64>() == 1);
        rows_ok && cols_ok
    }

    /// Whether `self == factor * I`.
    pub fn is_scaled_identity(&self, factor: i64) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { factor } else { 0 }))
    }

    /// For a permutation matrix, the column holding the 1 of each row.
    pub fn permutation_targets(&self) -> Option<Vec<usize>> {
        if !self.is_permutation() {
            return None;
        }
        Some((0..self.n).map(|i| self.row(i).iter().position(|&v| v == 1).unwrap()).collect())
    }

    /// `P v` for a permutation matrix `P` acting on a list of items.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: items.len() });
        }
        let targets = self
            .permutation_targets()
            .ok_or_else(|| Error::Parse("matrix is not a permutation".into()))?;
        Ok(targets.into_iter().map(|j| items[j].clone()).collect())
    }
}

/// Rows of space-separated integers.
impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseMatrix({}x{})\n{}", self.n, self.n, self)
    }
}

fn check_matrix_dim(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidDimension(m));
    }
    if m > MATRIX_LIMIT {
        return Err(Error::LimitExceeded { what: "dense transform matrices", m, limit: MATRIX_LIMIT });
    }
    Ok(())
}

pub fn hadamard_1() -> DenseMatrix {
    DenseMatrix { n: 2, data: vec![1, 1, 1, -1] }
}

/// `H_m = H_1 ⊗ ⋯ ⊗ H_1` (`m` factors), side `2^m`.
pub fn hadamard(m: usize) -> Result<DenseMatrix> {
    check_matrix_dim(m)?;
    let h1 = hadamard_1();
    Ok((1..m).fold(h1.clone(), |acc, _| acc.kron(&h1)))
}

/// `H = I_{2^m} ⊗ H_m`, side `4^m`.
pub fn full_hadamard(m: usize) -> Result<DenseMatrix> {
    Ok(DenseMatrix::identity(1 << m).kron(&hadamard(m)?))
}

/// Swap of the middle two entries of a 4-vector, `{1,3,2,4}`.
pub fn p23() -> DenseMatrix {
    DenseMatrix::permutation(&[0, 2, 1, 3])
}

/// `P_1 = I_4`, `P_m = I_2 ⊗ [P_{m-1} (⊗^{m-1} P_23)] ⊗ I_2`.
pub fn perm(m: usize) -> Result<DenseMatrix> {
    check_matrix_dim(m)?;
    let mut p = DenseMatrix::identity(4);
    for k in 2..=m {
        let swaps = (1..k - 1).fold(p23(), |acc, _| acc.kron(&p23()));
        let inner = p.matmul(&swaps)?;
        p = DenseMatrix::identity(2).kron(&inner).kron(&DenseMatrix::identity(2));
    }
    Ok(p)
}

/// `⊗^m (1, γ_{12}, γ_1, γ_2)` with slot 1 the leftmost tensor factor.
pub fn tensor_order_gamma(m: usize) -> Result<Vec<GammaMonomial>> {
    check_matrix_dim(m)?;
    Ok((0..1usize << (2 * m))
        .map(|n| {
            let mut bits = 0u64;
            for slot in 0..m {
                let tag = (n >> (2 * (m - 1 - slot))) & 3;
                let pair = match tag {
                    0 => 0b00,
                    1 => 0b11,
                    2 => 0b01,
                    _ => 0b10,
                };
                bits |= pair << (2 * slot);
            }
            GammaMonomial::from_bits_unchecked(m, bits)
        })
        .collect())
}

/// `⊗^m (q p, p q, p, q)` with slot 1 the leftmost tensor factor.
pub fn tensor_order_efb(m: usize) -> Result<Vec<EfbElement>> {
    check_matrix_dim(m)?;
    (0..1usize << (2 * m))
        .map(|n| {
            let slots: Vec<EfbSymbol> = (0..m)
                .map(|slot| EfbSymbol::ALL[(n >> (2 * (m - 1 - slot))) & 3])
                .collect();
            EfbElement::new(&slots)
        })
        .collect()
}

/// `P_m (⊗^m γ)`.
pub fn permuted_gamma_basis(m: usize) -> Result<Vec<GammaMonomial>> {
    perm(m)?.permute(&tensor_order_gamma(m)?)
}

/// `P_m (⊗^m ψ)`.
pub fn permuted_efb_basis(m: usize) -> Result<Vec<EfbElement>> {
    perm(m)?.permute(&tensor_order_efb(m)?)
}

/// Kind of null vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NullKind {
    P,
    Q,
}

impl NullKind {
    pub fn symbol(self) -> EfbSymbol {
        match self {
            NullKind::P => EfbSymbol::P,
            NullKind::Q => EfbSymbol::Q,
        }
    }
}

impl fmt::Display for NullKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NullKind::P => "p",
            NullKind::Q => "q",
        })
    }
}

/// `p_i = (γ_{2i-1} + γ_{2i})/2` or `q_i = (γ_{2i-1} - γ_{2i})/2`.
pub fn witt_vector<C: Coefficient>(kind: NullKind, i: usize, m: usize) -> Result<GammaMultivector<C>> {
    check_dim(m)?;
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    let half = C::from_dyadic(1, -1);
    let second = match kind {
        NullKind::P => half.clone(),
        NullKind::Q => half.neg_ref(),
    };
    GammaMultivector::from_terms(
        m,
        [
            (GammaMonomial::generator(m, 2 * i - 1)?, half),
            (GammaMonomial::generator(m, 2 * i)?, second),
        ],
    )
}

/// The same vector in EFB coordinates.
pub fn witt_vector_efb<C: Coefficient>(kind: NullKind, i: usize, m: usize) -> Result<EfbMultivector<C>> {
    gamma_to_efb(&witt_vector::<C>(kind, i, m)?)
}

/// Expands `(slot factor)` sequences into signed EFB elements.
fn expand_slots<C: Coefficient>(m: usize, factors: &[[(EfbSymbol, bool); 2]]) -> EfbMultivector<C> {
    let mut terms: Vec<(u64, bool)> = vec![(0, false)];
    for (slot, pair) in factors.iter().enumerate() {
        terms = terms
            .iter()
            .flat_map(|&(bits, neg)| {
                pair.iter()
                    .map(move |&(sym, n)| (bits | (sym as u64) << (2 * slot), neg ^ n))
            })
            .collect();
    }
    let mut out = EfbMultivector::zero(m);
    for (bits, neg) in terms {
        let e = EfbElement::from_bits(m, bits).expect("slot bits within range");
        out.add_term(e, if neg { C::one().neg_ref() } else { C::one() });
    }
    out
}

/// A monomial as a sum of `2^m` EFB elements of one signature.
pub fn gamma_monomial_to_efb<C: Coefficient>(x: &GammaMonomial) -> EfbMultivector<C> {
    use EfbSymbol::{P, PQ, Q, QP};
    let m = x.m();
    let factors: Vec<[(EfbSymbol, bool); 2]> = (0..m)
        .map(|i| match (x.bits() >> (2 * i)) & 3 {
            0b00 => [(QP, false), (PQ, false)],
            0b01 => [(P, false), (Q, false)],
            0b10 => [(P, false), (Q, true)],
            _ => [(QP, false), (PQ, true)],
        })
        .collect();
    expand_slots(m, &factors)
}

/// An EFB element as a combination of `2^m` monomials with coefficients
/// `±1/2^m`.
pub fn efb_element_to_gamma<C: Coefficient>(e: &EfbElement) -> GammaMultivector<C> {
    let m = e.m();
    // per slot: (pair bits, negative) for each of the two half-terms
    let mut terms: Vec<(u64, bool)> = vec![(0, false)];
    for i in 0..m {
        let pair: [(u64, bool); 2] = match e.slot(i) {
            EfbSymbol::QP => [(0b00, false), (0b11, false)],
            EfbSymbol::PQ => [(0b00, false), (0b11, true)],
            EfbSymbol::P => [(0b01, false), (0b10, false)],
            EfbSymbol::Q => [(0b01, false), (0b10, true)],
        };
        terms = terms
            .iter()
            .flat_map(|&(bits, neg)| pair.iter().map(move |&(b, n)| (bits | b << (2 * i), neg ^ n)))
            .collect();
    }
    let weight = C::from_dyadic(1, -(m as i64));
    let mut out = GammaMultivector::zero(m);
    for (bits, neg) in terms {
        let c = if neg { weight.neg_ref() } else { weight.clone() };
        out.add_term(GammaMonomial::from_bits_unchecked(m, bits), c);
    }
    out
}

pub fn gamma_to_efb<C: Coefficient>(a: &GammaMultivector<C>) -> Result<EfbMultivector<C>> {
    let mut out = EfbMultivector::zero(a.dim());
    for (x, c) in a.iter() {
        for (e, s) in gamma_monomial_to_efb::<C>(x).iter() {
            out.add_term(*e, c.mul_ref(s));
        }
    }
    Ok(out)
}

pub fn efb_to_gamma<C: Coefficient>(a: &EfbMultivector<C>) -> Result<GammaMultivector<C>> {
    let mut out = GammaMultivector::zero(a.dim());
    for (e, c) in a.iter() {
        for (x, s) in efb_element_to_gamma::<C>(e).iter() {
            out.add_term(*x, c.mul_ref(s));
        }
    }
    Ok(out)
}

/// EFB elements read off the matrix relation
/// `P_m(⊗ψ) = (1/2^m) H P_m(⊗γ)`, row by row, as gamma combinations.
pub fn efb_basis_by_matrix(m: usize) -> Result<Vec<(EfbElement, GammaMultivector<Scalar>)>> {
    let h = full_hadamard(m)?;
    let gammas = permuted_gamma_basis(m)?;
    let efbs = permuted_efb_basis(m)?;
    let weight = Scalar::inverse_power_of_two(m as u32);
    Ok(efbs
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let mut mv = GammaMultivector::zero(m);
            for (j, g) in gammas.iter().enumerate() {
                let v = h.get(i, j);
                if v != 0 {
                    mv.add_term(*g, &weight * &Scalar::from_integer(v));
                }
            }
            (e, mv)
        })
        .collect())
}

/// Coordinates route of the matrix form: since `γ = H ψ` as basis vectors
/// (`H` symmetric, `H H = 2^m I`), EFB coordinates are `H` times the gamma
/// coordinates in the permuted orderings.
pub fn gamma_to_efb_by_matrix(a: &GammaMultivector<Scalar>) -> Result<EfbMultivector<Scalar>> {
    let m = a.dim();
    let h = full_hadamard(m)?;
    let gammas = permuted_gamma_basis(m)?;
    let efbs = permuted_efb_basis(m)?;
    let x: Vec<Scalar> = gammas.iter().map(|g| a.get(g).cloned().unwrap_or_default()).collect();
    let mut out = EfbMultivector::zero(m);
    for (i, e) in efbs.iter().enumerate() {
        let mut acc = Scalar::zero();
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                acc += &(xj * &Scalar::from_integer(h.get(i, j)));
            }
        }
        out.add_term(*e, acc);
    }
    Ok(out)
}

/// Inverse of [`gamma_to_efb_by_matrix`]: gamma coordinates are
/// `(1/2^m) H` times the EFB coordinates.
pub fn efb_to_gamma_by_matrix(a: &EfbMultivector<Scalar>) -> Result<GammaMultivector<Scalar>> {
    let m = a.dim();
    let h = full_hadamard(m)?;
    let gammas = permuted_gamma_basis(m)?;
    let efbs = permuted_efb_basis(m)?;
    let weight = Scalar::inverse_power_of_two(m as u32);
    let y: Vec<Scalar> = efbs.iter().map(|e| a.get(e).cloned().unwrap_or_default()).collect();
    let mut out = GammaMultivector::zero(m);
    for (j, g) in gammas.iter().enumerate() {
        let mut acc = Scalar::zero();
        for (i, yi) in y.iter().enumerate() {
            if !yi.is_zero() {
                acc += &(yi * &Scalar::from_integer(h.get(j, i)));
            }
        }
        out.add_term(*g, &acc * &weight);
    }
    Ok(out)
}
