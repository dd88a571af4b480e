//! The supersymmetric polynomial ring in commuting x₀..x_m and
//! anticommuting ξ₀..ξ_n.
//!
//! Monomials are kept in normal order ξ₀^{ε₀}⋯ξ_n^{ε_n}; the ξ-part of a
//! monomial is a bit set, and every reordering sign is computed by counting
//! inversions against that bit set. Exactness of these signs is the crux of
//! the whole construction, which is why they live on machine words where
//! they can be verified mechanically.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{KrawError, Result};
use crate::numkern::{
    binomial, enumerate_compositions, enumerate_subsets, IndexSubset, Matrix, Scalar, ZERO,
};
use crate::params::ParamSet;
use crate::tol::COEFF_PRUNE;

/// A monomial x^α ξ^ε: exponent vector over the even variables plus a bit
/// set over the odd ones (n ≤ 31).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperMonomial {
    pub alpha: Vec<u32>,
    pub eps: u32,
}

impl SuperMonomial {
    pub fn new(alpha: Vec<u32>, eps: u32) -> Self {
        Self { alpha, eps }
    }

    /// Total degree |α| + |ε|.
    pub fn degree(&self) -> u32 {
        self.alpha.iter().sum::<u32>() + self.eps.count_ones()
    }

    /// Odd degree |ε|.
    pub fn odd_degree(&self) -> u32 {
        self.eps.count_ones()
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        write!(
            f,
            "alpha=[{}] eps={}",
            alpha.join(" "),
            IndexSubset::from_mask(self.eps).display()
        )
    }
}

/// s_j(ε) = Σ_{k<j} ε_k: the number of occupied modes strictly below j.
/// This is the exponent of −1 in the explicit generator action.
pub fn sign_prefix(eps: u32, j: usize) -> u32 {
    (eps & ((1u32 << j) - 1)).count_ones()
}

/// Normal-ordered product of two wedge monomials. `None` when they collide
/// (ξ² = 0); otherwise the reordering sign and the union.
pub fn wedge_mul(a: u32, b: u32) -> Option<(f64, u32)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    Some((sign, a | b))
}

/// Sparse polynomial: map from normal-ordered monomials to coefficients.
/// Coefficients below the prune tolerance are dropped on accumulation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<SuperMonomial, Scalar>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(mono: SuperMonomial, coeff: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, coeff);
        p
    }

    pub fn add_term(&mut self, mono: SuperMonomial, coeff: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(slot) => {
                if coeff.norm() >= COEFF_PRUNE {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                let v = *slot.get() + coeff;
                if v.norm() < COEFF_PRUNE {
                    slot.remove();
                } else {
                    *slot.get_mut() = v;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (mono, coeff) in &other.terms {
            self.add_term(mono.clone(), *coeff);
        }
    }

    pub fn scaled(&self, c: Scalar) -> Self {
        let mut out = Self::zero();
        for (mono, coeff) in &self.terms {
            out.add_term(mono.clone(), coeff * c);
        }
        out
    }

    pub fn coeff(&self, mono: &SuperMonomial) -> Scalar {
        self.terms.get(mono).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SuperMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient difference against another polynomial.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (mono, coeff) in &self.terms {
            worst = worst.max((coeff - other.coeff(mono)).norm());
        }
        for (mono, coeff) in &other.terms {
            if !self.terms.contains_key(mono) {
                worst = worst.max(coeff.norm());
            }
        }
        worst
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Multinomial expansion of Π_i (Σ_j c_{i,j} x_j)^{ã_i}: coefficients on
/// the even monomials x^α with |α| = |ã|.
pub fn expand_even_product(c: &Matrix, alpha_tilde: &[u32]) -> BTreeMap<Vec<u32>, Scalar> {
    let cols = c.cols();
    let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    acc.insert(vec![0u32; cols], Scalar::new(1.0, 0.0));
    for (i, &power) in alpha_tilde.iter().enumerate() {
        for _ in 0..power {
            let mut next: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
            for (alpha, coeff) in &acc {
                for j in 0..cols {
                    let cij = c.get(i, j);
                    if cij == ZERO {
                        continue;
                    }
                    let mut bumped = alpha.clone();
                    bumped[j] += 1;
                    let entry = next.entry(bumped).or_insert(ZERO);
                    *entry += coeff * cij;
                }
            }
            next.retain(|_, v| v.norm() >= COEFF_PRUNE);
            acc = next;
        }
    }
    acc
}

/// Sequential wedge expansion of Π_{i∈rows} (Σ_j c_{i,j} ξ_j), factors in
/// ascending row order (normal order). The coefficient of ξ_J equals the
/// minor of `c` with rows `rows` and columns J.
pub fn expand_odd_product(c: &Matrix, rows: &IndexSubset) -> BTreeMap<u32, Scalar> {
    let cols = c.cols();
    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
    acc.insert(0u32, Scalar::new(1.0, 0.0));
    for &i in rows.members() {
        let mut next: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (&eps, coeff) in &acc {
            for j in 0..cols {
                let cij = c.get(i, j);
                if cij == ZERO {
                    continue;
                }
                // Right-multiplying ξ^eps by ξ_j walks it past every
                // occupied mode above j.
                if let Some((sign, merged)) = wedge_mul(eps, 1 << j) {
                    let entry = next.entry(merged).or_insert(ZERO);
                    *entry += coeff * cij * sign;
                }
            }
        }
        next.retain(|_, v| v.norm() >= COEFF_PRUNE);
        acc = next;
    }
    acc
}

/// Full expansion of the tilde monomial x̃^ã ξ̃^ε̃ in the plain monomial
/// basis, through the change of variables x̃_i = θ̃ Σ_k p̃_k u_{ik} x_k,
/// ξ̃_j = κ̃ Σ_k q̃_k v_{jk} ξ_k.
pub fn to_monomial_basis(alpha_tilde: &[u32], eps_tilde: u32, ps: &ParamSet) -> SuperPolynomial {
    let mp1 = ps.m() + 1;
    let np1 = ps.n() + 1;
    let c_even = Matrix::from_fn(mp1, mp1, |i, k| {
        ps.norms.theta_tilde * ps.even.p_tilde[k] * ps.even.u.get(i, k)
    });
    let c_odd = Matrix::from_fn(np1, np1, |j, k| {
        ps.norms.kappa_tilde * ps.odd.q_tilde[k] * ps.odd.v.get(j, k)
    });
    let even_part = expand_even_product(&c_even, alpha_tilde);
    let odd_part = expand_odd_product(&c_odd, &IndexSubset::from_mask(eps_tilde));
    let mut out = SuperPolynomial::zero();
    for (alpha, ce) in &even_part {
        for (&eps, co) in &odd_part {
            out.add_term(SuperMonomial::new(alpha.clone(), eps), ce * co);
        }
    }
    out
}

/// One d-block of the graded basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisBlock {
    pub d: u32,
    pub start: usize,
    pub len: usize,
}

/// The ordered monomial basis of the degree-D component, grouped by odd
/// degree: d ascending, then compositions of D−d in descending-lex order,
/// then ξ-subsets in colex order. Transition matrices built over this
/// ordering are block diagonal with contiguous blocks.
#[derive(Debug, Clone)]
pub struct BasisIndexD {
    pub m: usize,
    pub n: usize,
    pub degree: u32,
    items: Vec<SuperMonomial>,
    index: BTreeMap<SuperMonomial, usize>,
    blocks: Vec<BasisBlock>,
}

impl BasisIndexD {
    pub fn new(m: usize, n: usize, degree: u32) -> Self {
        let mut items = Vec::new();
        let mut blocks = Vec::new();
        let d_max = (degree as usize).min(n + 1);
        for d in 0..=d_max {
            let start = items.len();
            for alpha in enumerate_compositions(degree - d as u32, m + 1) {
                for eps in enumerate_subsets(n + 1, d) {
                    items.push(SuperMonomial::new(alpha.clone(), eps.to_mask()));
                }
            }
            blocks.push(BasisBlock {
                d: d as u32,
                start,
                len: items.len() - start,
            });
        }
        let index = items
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, mono)| (mono, i))
            .collect();
        Self {
            m,
            n,
            degree,
            items,
            index,
            blocks,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[SuperMonomial] {
        &self.items
    }

    pub fn blocks(&self) -> &[BasisBlock] {
        &self.blocks
    }

    pub fn index_of(&self, mono: &SuperMonomial) -> Option<usize> {
        self.index.get(mono).copied()
    }

    /// The contiguous index range of the (D−d, d) slice.
    pub fn block_range(&self, d: u32) -> std::ops::Range<usize> {
        self.blocks
            .iter()
            .find(|b| b.d == d)
            .map(|b| b.start..b.start + b.len)
            .unwrap_or(0..0)
    }

    /// Dimension of the (D−d, d) slice: C(D−d+m, m)·C(n+1, d).
    pub fn slice_dimension(&self, d: u32) -> u64 {
        if d > self.degree {
            return 0;
        }
        binomial((self.degree - d) as usize + self.m, self.m) * binomial(self.n + 1, d as usize)
    }

    /// Check a monomial belongs to this basis (shape and degree).
    pub fn check_member(&self, mono: &SuperMonomial) -> Result<usize> {
        self.index_of(mono).ok_or_else(|| {
            KrawError::Dimension(format!(
                "monomial {mono} is not in the degree-{} basis for m={}, n={}",
                self.degree, self.m, self.n
            ))
        })
    }
}
