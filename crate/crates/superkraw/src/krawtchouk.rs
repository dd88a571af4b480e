//! Evaluation of the super Krawtchouk polynomials and their identity
//! suites.
//!
//! The pure-odd value is a single d×d minor of V divided by d! — the only
//! minor of diag(ε̃)·V·diag(ε) that can survive — while the displayed
//! double sum over all index subsets is kept as [`eval_p1_full_sum`], an
//! exponential oracle used by the tests. The even value comes from the
//! generating-function expansion, and the mixed value is the binomially
//! weighted product of the two. Everything here is checked two ways: the
//! factored evaluators against full generating-function expansions, and
//! the transition matrices against direct change-of-variable expansions.

use crate::error::{KrawError, Result};
use crate::numkern::{
    binomial, enumerate_subsets, factorial, multi_factorial, powi, re, IndexSubset, Matrix,
    Scalar, ONE, ZERO,
};
use crate::params::{dualize, EvenParams, OddParams, ParamSet};
use crate::report::Residual;
use crate::superpoly::{
    expand_even_product, expand_odd_product, sign_prefix, to_monomial_basis, BasisIndexD,
    SuperMonomial,
};

fn weight_pow(weights: &[Scalar], alpha: &[u32]) -> Scalar {
    weights
        .iter()
        .zip(alpha)
        .fold(ONE, |acc, (&w, &a)| acc * powi(w, a))
}

fn weight_mask(weights: &[Scalar], eps: u32) -> Scalar {
    weights
        .iter()
        .enumerate()
        .filter(|(j, _)| eps >> j & 1 == 1)
        .fold(ONE, |acc, (_, &w)| acc * w)
}

/// Pure-odd value: minor(V, supp ε̃, supp ε)/d!, zero when the odd degrees
/// differ.
pub fn eval_p1(eps: u32, eps_tilde: u32, odd: &OddParams) -> Result<Scalar> {
    let np1 = odd.n() + 1;
    if eps >> np1 != 0 || eps_tilde >> np1 != 0 {
        return Err(KrawError::Dimension(format!(
            "bit set exceeds n = {}",
            odd.n()
        )));
    }
    let d = eps.count_ones();
    if d != eps_tilde.count_ones() {
        return Ok(ZERO);
    }
    let rows = IndexSubset::from_mask(eps_tilde);
    let cols = IndexSubset::from_mask(eps);
    Ok(odd.v.minor(&rows, &cols)? / re(factorial(d as usize)))
}

/// The displayed double sum (1/d!) Σ_{I,J} det A_{I,J} over all size-d
/// subsets, with A = diag(ε̃) V diag(ε). Exponential; oracle only.
pub fn eval_p1_full_sum(eps: u32, eps_tilde: u32, odd: &OddParams) -> Result<Scalar> {
    let d = eps.count_ones();
    if d != eps_tilde.count_ones() {
        return Ok(ZERO);
    }
    let np1 = odd.n() + 1;
    let a = Matrix::from_fn(np1, np1, |i, j| {
        let et = re((eps_tilde >> i & 1) as f64);
        let e = re((eps >> j & 1) as f64);
        et * odd.v.get(i, j) * e
    });
    let mut acc = ZERO;
    for rows in enumerate_subsets(np1, d as usize) {
        for cols in enumerate_subsets(np1, d as usize) {
            acc += a.minor(&rows, &cols)?;
        }
    }
    Ok(acc / re(factorial(d as usize)))
}

/// Even value by coefficient extraction: the coefficient of x^α in
/// Π_i (Σ_j u_{i,j} x_j)^{ã_i} equals ((D−d)!/α!) 𝒫₀. Zero when the
/// degrees differ from `even_degree`.
pub fn eval_p0(
    alpha: &[u32],
    alpha_tilde: &[u32],
    even: &EvenParams,
    even_degree: u32,
) -> Result<Scalar> {
    let mp1 = even.m() + 1;
    if alpha.len() != mp1 || alpha_tilde.len() != mp1 {
        return Err(KrawError::Dimension(format!(
            "exponent vectors must have length {mp1}"
        )));
    }
    let da: u32 = alpha.iter().sum();
    let dt: u32 = alpha_tilde.iter().sum();
    if da != even_degree || dt != even_degree {
        return Ok(ZERO);
    }
    let expansion = expand_even_product(&even.u, alpha_tilde);
    let coeff = expansion.get(alpha).copied().unwrap_or(ZERO);
    Ok(coeff * re(multi_factorial(alpha) / factorial(even_degree as usize)))
}

/// Mixed value, factored: C(D,d)⁻¹ 𝒫₀(α, ã; D−d) 𝒫₁(ε, ε̃; d).
pub fn eval_p(
    alpha: &[u32],
    eps: u32,
    alpha_tilde: &[u32],
    eps_tilde: u32,
    ps: &ParamSet,
    degree: u32,
) -> Result<Scalar> {
    let d = eps.count_ones();
    if d != eps_tilde.count_ones() || d > degree {
        return Ok(ZERO);
    }
    let even_degree = degree - d;
    let p0v = eval_p0(alpha, alpha_tilde, &ps.even, even_degree)?;
    if p0v == ZERO {
        return Ok(ZERO);
    }
    let p1v = eval_p1(eps, eps_tilde, &ps.odd)?;
    Ok(p0v * p1v / re(binomial(degree as usize, d as usize) as f64))
}

/// Mixed value by direct coefficient extraction from the full
/// generating-function product. Oracle for [`eval_p`].
pub fn eval_p_generating(
    alpha: &[u32],
    eps: u32,
    alpha_tilde: &[u32],
    eps_tilde: u32,
    ps: &ParamSet,
    degree: u32,
) -> Result<Scalar> {
    let d = eps.count_ones();
    if d != eps_tilde.count_ones() || d > degree {
        return Ok(ZERO);
    }
    let even_part = expand_even_product(&ps.even.u, alpha_tilde);
    let odd_part = expand_odd_product(&ps.odd.v, &IndexSubset::from_mask(eps_tilde));
    let ce = even_part.get(alpha).copied().unwrap_or(ZERO);
    let co = odd_part.get(&eps).copied().unwrap_or(ZERO);
    Ok(ce * co * re(multi_factorial(alpha) / factorial(degree as usize)))
}

/// The table of 𝒫 values over one (D−d, d) slice: rows are plain indices,
/// columns tilde indices, both in basis order. Each column is filled from
/// one generating-function expansion instead of per-entry evaluation.
pub struct PTable {
    pub degree: u32,
    pub d: u32,
    pub items: Vec<SuperMonomial>,
    pub values: Matrix,
}

pub fn p_table(ps: &ParamSet, degree: u32, d: u32) -> Result<PTable> {
    let basis = BasisIndexD::new(ps.m(), ps.n(), degree);
    let range = basis.block_range(d);
    let items: Vec<SuperMonomial> = basis.items()[range].to_vec();
    let b = items.len();
    let even_degree = degree - d;
    let binom = re(binomial(degree as usize, d as usize) as f64);
    let mut values = Matrix::zeros(b, b);
    for (col, nu) in items.iter().enumerate() {
        let even_exp = expand_even_product(&ps.even.u, &nu.alpha);
        let odd_exp = expand_odd_product(&ps.odd.v, &IndexSubset::from_mask(nu.eps));
        for (row, mu) in items.iter().enumerate() {
            let ce = even_exp.get(&mu.alpha).copied().unwrap_or(ZERO);
            if ce == ZERO {
                continue;
            }
            let co = odd_exp.get(&mu.eps).copied().unwrap_or(ZERO);
            if co == ZERO {
                continue;
            }
            let p0v = ce * re(multi_factorial(&mu.alpha) / factorial(even_degree as usize));
            let p1v = co / re(factorial(d as usize));
            values.set(row, col, p0v * p1v / binom);
        }
    }
    Ok(PTable {
        degree,
        d,
        items,
        values,
    })
}

/// Which basis a transition matrix writes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Columns are tilde monomials expanded over plain rows.
    TildeToPlain,
    /// Columns are plain monomials expanded over tilde rows.
    PlainToTilde,
}

/// Transition matrix over the full graded basis, block diagonal in d.
pub struct TransitionMatrix {
    pub direction: Direction,
    pub basis: BasisIndexD,
    pub matrix: Matrix,
}

/// Assemble a transition matrix from the explicit entry formulas:
/// tilde→plain entries are θ̃^{D−d} κ̃^d D! 𝒫 p̃^α q̃^ε / α!, and
/// plain→tilde entries are θ^{D−d} κ^d D! 𝒫 p^ã q^ε̃ / ã!.
pub fn transition_matrix(
    direction: Direction,
    ps: &ParamSet,
    degree: u32,
) -> Result<TransitionMatrix> {
    let basis = BasisIndexD::new(ps.m(), ps.n(), degree);
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    let d_fact = re(factorial(degree as usize));
    for block in basis.blocks() {
        let table = p_table(ps, degree, block.d)?;
        let even_degree = degree - block.d;
        let (left, right) = match direction {
            Direction::TildeToPlain => (
                powi(ps.norms.theta_tilde, even_degree),
                powi(ps.norms.kappa_tilde, block.d),
            ),
            Direction::PlainToTilde => (
                powi(ps.norms.theta, even_degree),
                powi(ps.norms.kappa, block.d),
            ),
        };
        let scale = left * right * d_fact;
        for (r, mu) in table.items.iter().enumerate() {
            for (c, nu) in table.items.iter().enumerate() {
                let p_val = table.values.get(r, c);
                if p_val == ZERO {
                    continue;
                }
                match direction {
                    Direction::TildeToPlain => {
                        let w = weight_pow(&ps.even.p_tilde, &mu.alpha)
                            * weight_mask(&ps.odd.q_tilde, mu.eps)
                            / re(multi_factorial(&mu.alpha));
                        matrix.set(block.start + r, block.start + c, scale * p_val * w);
                    }
                    Direction::PlainToTilde => {
                        let w = weight_pow(&ps.even.p, &nu.alpha)
                            * weight_mask(&ps.odd.q, nu.eps)
                            / re(multi_factorial(&nu.alpha));
                        matrix.set(block.start + c, block.start + r, scale * p_val * w);
                    }
                }
            }
        }
    }
    Ok(TransitionMatrix {
        direction,
        basis,
        matrix,
    })
}

/// The honest transition matrix: column ν holds the plain-basis
/// coefficients of the expanded tilde monomial ν, with no block structure
/// assumed.
pub fn expansion_matrix(ps: &ParamSet, degree: u32) -> Result<Matrix> {
    let basis = BasisIndexD::new(ps.m(), ps.n(), degree);
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    for (col, nu) in basis.items().iter().enumerate() {
        let poly = to_monomial_basis(&nu.alpha, nu.eps, ps);
        for (mono, coeff) in poly.iter() {
            let row = basis.check_member(mono)?;
            matrix.set(row, col, *coeff);
        }
    }
    Ok(matrix)
}

/// Round trip: ‖T_{tilde→plain} · T_{plain→tilde} − I‖∞ on the degree-D
/// module.
pub fn transition_round_trip_residual(ps: &ParamSet, degree: u32) -> Result<f64> {
    let t1 = transition_matrix(Direction::TildeToPlain, ps, degree)?;
    let t2 = transition_matrix(Direction::PlainToTilde, ps, degree)?;
    let prod = t1.matrix.mul(&t2.matrix)?;
    prod.max_abs_diff(&Matrix::identity(t1.basis.len()))
}

/// Formula entries against the direct expansion, plus the off-block decay
/// of the expansion itself. Returns (entry residual, worst off-block
/// magnitude).
pub fn transition_vs_expansion(ps: &ParamSet, degree: u32) -> Result<(f64, f64)> {
    let formula = transition_matrix(Direction::TildeToPlain, ps, degree)?;
    let honest = expansion_matrix(ps, degree)?;
    let entry_residual = formula.matrix.max_abs_diff(&honest)?;
    let basis = &formula.basis;
    let mut off_block = 0.0f64;
    for block in basis.blocks() {
        let cols = block.start..block.start + block.len;
        for col in cols {
            for row in 0..basis.len() {
                if row >= block.start && row < block.start + block.len {
                    continue;
                }
                off_block = off_block.max(honest.get(row, col).norm());
            }
        }
    }
    Ok((entry_residual, off_block))
}

/// Both orthogonality relations on one (D−d, d) slice; the
/// returned residual is the worst deviation over all index pairs.
pub fn orthogonality_residual(ps: &ParamSet, degree: u32, d: u32) -> Result<Residual> {
    let table = p_table(ps, degree, d)?;
    let b = table.items.len();
    let mut worst = Residual::new();
    if b == 0 {
        return Ok(worst);
    }
    let d_fact = re(factorial(degree as usize));
    let scale = powi(ps.even.p0(), degree - d) * powi(ps.odd.q0(), d) / d_fact;
    // Relation 1: Σ_{(α,ε)} p̃^α q̃^ε (D!/α!) 𝒫(μ,ν) 𝒫(μ,ν′)
    //           = δ_{ν,ν′} scale · ã!/(p^ã q^ε̃).
    let w_plain: Vec<Scalar> = table
        .items
        .iter()
        .map(|mu| {
            weight_pow(&ps.even.p_tilde, &mu.alpha) * weight_mask(&ps.odd.q_tilde, mu.eps)
                * d_fact
                / re(multi_factorial(&mu.alpha))
        })
        .collect();
    for nu in 0..b {
        for nu2 in 0..b {
            let mut acc = ZERO;
            for mu in 0..b {
                acc += w_plain[mu] * table.values.get(mu, nu) * table.values.get(mu, nu2);
            }
            let target = if nu == nu2 {
                let item = &table.items[nu];
                scale * re(multi_factorial(&item.alpha))
                    / (weight_pow(&ps.even.p, &item.alpha) * weight_mask(&ps.odd.q, item.eps))
            } else {
                ZERO
            };
            worst.record((acc - target).norm(), || {
                format!(
                    "relation=1 D={degree} d={d} nu=({}) nu2=({})",
                    table.items[nu], table.items[nu2]
                )
            });
        }
    }
    // Relation 2: Σ_{(ã,ε̃)} p^ã q^ε̃ (D!/ã!) 𝒫(μ,ν) 𝒫(μ′,ν)
    //           = δ_{μ,μ′} scale · α!/(p̃^α q̃^ε).
    let w_tilde: Vec<Scalar> = table
        .items
        .iter()
        .map(|nu| {
            weight_pow(&ps.even.p, &nu.alpha) * weight_mask(&ps.odd.q, nu.eps) * d_fact
                / re(multi_factorial(&nu.alpha))
        })
        .collect();
    for mu in 0..b {
        for mu2 in 0..b {
            let mut acc = ZERO;
            for nu in 0..b {
                acc += w_tilde[nu] * table.values.get(mu, nu) * table.values.get(mu2, nu);
            }
            let target = if mu == mu2 {
                let item = &table.items[mu];
                scale * re(multi_factorial(&item.alpha))
                    / (weight_pow(&ps.even.p_tilde, &item.alpha)
                        * weight_mask(&ps.odd.q_tilde, item.eps))
            } else {
                ZERO
            };
            worst.record((acc - target).norm(), || {
                format!(
                    "relation=2 D={degree} d={d} mu=({}) mu2=({})",
                    table.items[mu], table.items[mu2]
                )
            });
        }
    }
    Ok(worst)
}

/// Duality: 𝒫(α,ε,ã,ε̃; K,Λ) = 𝒫(ã,ε̃,α,ε; K′,Λ′) across a whole slice.
pub fn duality_residual(ps: &ParamSet, degree: u32, d: u32) -> Result<Residual> {
    let dual = dualize(ps)?;
    let table = p_table(ps, degree, d)?;
    let dual_table = p_table(&dual, degree, d)?;
    let b = table.items.len();
    let mut worst = Residual::new();
    for r in 0..b {
        for c in 0..b {
            let value = (table.values.get(r, c) - dual_table.values.get(c, r)).norm();
            worst.record(value, || {
                format!(
                    "D={degree} d={d} mu=({}) nu=({})",
                    table.items[r], table.items[c]
                )
            });
        }
    }
    Ok(worst)
}

/// Σ_i q̃_i v_{k,i} v_{l,i} = (q₀/q_k) δ_{k,l}: the admissibility identity
/// the eigenvalue recurrences rest on.
pub fn sum_lem_residual(odd: &OddParams) -> f64 {
    let np1 = odd.n() + 1;
    let mut worst = 0.0f64;
    for k in 0..np1 {
        for l in 0..np1 {
            let mut acc = ZERO;
            for i in 0..np1 {
                acc += odd.q_tilde[i] * odd.v.get(k, i) * odd.v.get(l, i);
            }
            let target = if k == l { odd.q0() / odd.q[k] } else { ZERO };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

/// One of the four odd recurrence relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceKind {
    /// ε_i 𝒫₁ = q₀⁻¹ q̃_i Σ_{k,l} q_k v_{k,i} v_{l,i} (−1)^{…} ε̃_l 𝒫₁(ε, ε̃+v_k−v_l).
    Ith(usize),
    /// ε̃_i 𝒫₁ = q₀⁻¹ q_i Σ_{k,l} q̃_k v_{i,k} v_{i,l} (−1)^{…} ε_l 𝒫₁(ε+v_k−v_l, ε̃).
    IthT(usize),
    /// The ε₀ eigenvalue form over shifted ε̃.
    Eigen,
    /// The ε̃₀ eigenvalue form over shifted ε.
    EigenT,
}

/// 𝒫₁ with one mode moved: ε̃ + v_k − v_l, treated as zero when the shift
/// leaves ℤ₂^{n+1}. The caller guarantees ε̃_l = 1.
fn p1_shift_tilde(eps: u32, eps_tilde: u32, k: usize, l: usize, odd: &OddParams) -> Result<Scalar> {
    let cleared = eps_tilde & !(1 << l);
    if k != l && cleared >> k & 1 == 1 {
        return Ok(ZERO);
    }
    eval_p1(eps, cleared | (1 << k), odd)
}

fn p1_shift_plain(eps: u32, eps_tilde: u32, k: usize, l: usize, odd: &OddParams) -> Result<Scalar> {
    let cleared = eps & !(1 << l);
    if k != l && cleared >> k & 1 == 1 {
        return Ok(ZERO);
    }
    eval_p1(cleared | (1 << k), eps_tilde, odd)
}

fn shift_sign(mask: u32, k: usize, l: usize) -> Scalar {
    let exp = sign_prefix(mask & !(1 << l), k) + sign_prefix(mask, l);
    if exp % 2 == 0 {
        ONE
    } else {
        -ONE
    }
}

/// Residual |LHS − RHS| of one recurrence at one point (ε, ε̃).
pub fn recurrence_residual(
    eps: u32,
    eps_tilde: u32,
    odd: &OddParams,
    which: RecurrenceKind,
) -> Result<f64> {
    if eps.count_ones() != eps_tilde.count_ones() {
        return Err(KrawError::Dimension(
            "recurrences need |eps| = |eps_tilde|".into(),
        ));
    }
    let np1 = odd.n() + 1;
    let p1 = eval_p1(eps, eps_tilde, odd)?;
    let (lhs, rhs) = match which {
        RecurrenceKind::Ith(i) => {
            if i >= np1 {
                return Err(KrawError::Dimension(format!("index {i} exceeds n")));
            }
            let lhs = re((eps >> i & 1) as f64) * p1;
            let mut rhs = ZERO;
            for k in 0..np1 {
                for l in 0..np1 {
                    if eps_tilde >> l & 1 == 0 {
                        continue;
                    }
                    rhs += odd.q[k]
                        * odd.v.get(k, i)
                        * odd.v.get(l, i)
                        * shift_sign(eps_tilde, k, l)
                        * p1_shift_tilde(eps, eps_tilde, k, l, odd)?;
                }
            }
            (lhs, rhs * odd.q_tilde[i] / odd.q0())
        }
        RecurrenceKind::IthT(i) => {
            if i >= np1 {
                return Err(KrawError::Dimension(format!("index {i} exceeds n")));
            }
            let lhs = re((eps_tilde >> i & 1) as f64) * p1;
            let mut rhs = ZERO;
            for k in 0..np1 {
                for l in 0..np1 {
                    if eps >> l & 1 == 0 {
                        continue;
                    }
                    rhs += odd.q_tilde[k]
                        * odd.v.get(i, k)
                        * odd.v.get(i, l)
                        * shift_sign(eps, k, l)
                        * p1_shift_plain(eps, eps_tilde, k, l, odd)?;
                }
            }
            (lhs, rhs * odd.q[i] / odd.q0())
        }
        RecurrenceKind::Eigen => {
            let lhs = re((eps & 1) as f64) * p1;
            let mut rhs = ZERO;
            for k in 0..np1 {
                if eps_tilde >> k & 1 == 1 {
                    rhs += odd.q[k] * p1;
                }
                for l in 0..np1 {
                    if l == k || eps_tilde >> l & 1 == 0 {
                        continue;
                    }
                    rhs += odd.q[k]
                        * shift_sign(eps_tilde, k, l)
                        * p1_shift_tilde(eps, eps_tilde, k, l, odd)?;
                }
            }
            (lhs, rhs)
        }
        RecurrenceKind::EigenT => {
            let lhs = re((eps_tilde & 1) as f64) * p1;
            let mut rhs = ZERO;
            for k in 0..np1 {
                if eps >> k & 1 == 1 {
                    rhs += odd.q_tilde[k] * p1;
                }
                for l in 0..np1 {
                    if l == k || eps >> l & 1 == 0 {
                        continue;
                    }
                    rhs += odd.q_tilde[k]
                        * shift_sign(eps, k, l)
                        * p1_shift_plain(eps, eps_tilde, k, l, odd)?;
                }
            }
            (lhs, rhs)
        }
    };
    Ok((lhs - rhs).norm())
}

/// Summing the i-th recurrence over every i must collapse to d·𝒫₁ = d·𝒫₁.
pub fn recurrence_tautology_residual(eps: u32, eps_tilde: u32, odd: &OddParams) -> Result<f64> {
    let np1 = odd.n() + 1;
    let p1 = eval_p1(eps, eps_tilde, odd)?;
    let d = eps.count_ones() as f64;
    let mut total = ZERO;
    for i in 0..np1 {
        let mut rhs = ZERO;
        for k in 0..np1 {
            for l in 0..np1 {
                if eps_tilde >> l & 1 == 0 {
                    continue;
                }
                rhs += odd.q[k]
                    * odd.v.get(k, i)
                    * odd.v.get(l, i)
                    * shift_sign(eps_tilde, k, l)
                    * p1_shift_tilde(eps, eps_tilde, k, l, odd)?;
            }
        }
        total += rhs * odd.q_tilde[i] / odd.q0();
    }
    Ok((total - re(d) * p1).norm())
}

/// All four recurrences over every (ε, ε̃) pair with matching odd degree.
pub fn recurrence_sweep(odd: &OddParams) -> Result<Residual> {
    let np1 = odd.n() + 1;
    let mut worst = Residual::new();
    for eps in 0u32..1 << np1 {
        for eps_tilde in 0u32..1 << np1 {
            if eps.count_ones() != eps_tilde.count_ones() {
                continue;
            }
            for i in 0..np1 {
                for kind in [RecurrenceKind::Ith(i), RecurrenceKind::IthT(i)] {
                    let value = recurrence_residual(eps, eps_tilde, odd, kind)?;
                    worst.record(value, || {
                        format!("{kind:?} eps={eps:b} eps_tilde={eps_tilde:b}")
                    });
                }
            }
            for kind in [RecurrenceKind::Eigen, RecurrenceKind::EigenT] {
                let value = recurrence_residual(eps, eps_tilde, odd, kind)?;
                worst.record(value, || {
                    format!("{kind:?} eps={eps:b} eps_tilde={eps_tilde:b}")
                });
            }
        }
    }
    Ok(worst)
}

/// Which family of wedge vectors to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeFamily {
    /// 𝒫̃₁^∧(ε) = Σ_ε̃ 𝒫₁(ε, ε̃) ξ̃^ε̃, an eigenvector of the transposed
    /// Cartan operators on the ξ̃ side with eigenvalues ε_i.
    TildeSide,
    /// 𝒫₁^∧(ε̃) = Σ_ε 𝒫₁(ε, ε̃) ξ^ε with eigenvalues ε̃_i.
    PlainSide,
}

/// A wedge vector with its per-index eigen-residuals.
pub struct WedgeVector {
    /// Coordinates over the colex-ordered size-d subsets.
    pub coords: Vec<Scalar>,
    /// Residual of the i-th transposed Cartan eigen-equation, i ∈ [n].
    pub eigen_residuals: Vec<f64>,
    /// Residual of the (d − Σ_{i≥1}) eigen-equation for the 0-th mode.
    pub eigen0_residual: f64,
}

/// Matrix of ξ_a ∂_{ξ_b} on the colex-ordered degree-d wedge basis.
fn mode_shift_matrix(a: usize, b: usize, subsets: &[IndexSubset]) -> Matrix {
    let size = subsets.len();
    let index_of = |mask: u32| subsets.iter().position(|s| s.to_mask() == mask);
    let mut mat = Matrix::zeros(size, size);
    for (col, s) in subsets.iter().enumerate() {
        let mask = s.to_mask();
        if mask >> b & 1 == 0 {
            continue;
        }
        let cleared = mask & !(1 << b);
        if a != b && cleared >> a & 1 == 1 {
            continue;
        }
        let target = cleared | (1 << a);
        let exp = sign_prefix(mask, b) + sign_prefix(cleared, a);
        let sign = if exp % 2 == 0 { 1.0 } else { -1.0 };
        let row = index_of(target).expect("same cardinality");
        mat.set(row, col, re(sign));
    }
    mat
}

/// The transposed Cartan operator for index i on the chosen side:
/// tilde side: q₀⁻¹ q̃_i Σ_{k,l} q_k v_{k,i} v_{l,i} ξ̃_l ∂_{ξ̃_k};
/// plain side: q₀⁻¹ q_i Σ_{k,l} q̃_k v_{i,k} v_{i,l} ξ_l ∂_{ξ_k}.
fn transposed_cartan_matrix(
    i: usize,
    odd: &OddParams,
    subsets: &[IndexSubset],
    family: WedgeFamily,
) -> Matrix {
    let np1 = odd.n() + 1;
    let size = subsets.len();
    let mut acc = Matrix::zeros(size, size);
    for k in 0..np1 {
        for l in 0..np1 {
            let w = match family {
                WedgeFamily::TildeSide => {
                    odd.q_tilde[i] / odd.q0() * odd.q[k] * odd.v.get(k, i) * odd.v.get(l, i)
                }
                WedgeFamily::PlainSide => {
                    odd.q[i] / odd.q0() * odd.q_tilde[k] * odd.v.get(i, k) * odd.v.get(i, l)
                }
            };
            if w == ZERO {
                continue;
            }
            // Creation by mode l, annihilation of mode k.
            acc = acc
                .add(&mode_shift_matrix(l, k, subsets).scale(w))
                .expect("same shape");
        }
    }
    acc
}

/// Assemble one wedge vector and its eigen-residuals. `fixed` is ε for the
/// tilde side, ε̃ for the plain side.
pub fn wedge_vector(fixed: u32, odd: &OddParams, d: u32, family: WedgeFamily) -> Result<WedgeVector> {
    if fixed.count_ones() != d {
        return Err(KrawError::Dimension(format!(
            "fixed bit set must have weight {d}"
        )));
    }
    let np1 = odd.n() + 1;
    let subsets = enumerate_subsets(np1, d as usize);
    let coords: Vec<Scalar> = subsets
        .iter()
        .map(|s| match family {
            WedgeFamily::TildeSide => eval_p1(fixed, s.to_mask(), odd),
            WedgeFamily::PlainSide => eval_p1(s.to_mask(), fixed, odd),
        })
        .collect::<Result<_>>()?;
    let apply = |mat: &Matrix| -> Vec<Scalar> {
        (0..coords.len())
            .map(|r| (0..coords.len()).map(|c| mat.get(r, c) * coords[c]).sum())
            .collect()
    };
    let mut eigen_residuals = Vec::with_capacity(np1);
    let mut op_sum_tail = Matrix::zeros(subsets.len(), subsets.len());
    for i in 0..np1 {
        let op = transposed_cartan_matrix(i, odd, &subsets, family);
        let image = apply(&op);
        let lambda = re((fixed >> i & 1) as f64);
        let residual = image
            .iter()
            .zip(&coords)
            .map(|(got, &c)| (got - lambda * c).norm())
            .fold(0.0, f64::max);
        eigen_residuals.push(residual);
        if i >= 1 {
            op_sum_tail = op_sum_tail.add(&op).expect("same shape");
        }
    }
    // (d − Σ_{i≥1} op_i) v = fixed₀ · v.
    let image = apply(&op_sum_tail);
    let lambda0 = re((fixed & 1) as f64);
    let eigen0_residual = image
        .iter()
        .zip(&coords)
        .map(|(got, &c)| (re(d as f64) * c - got - lambda0 * c).norm())
        .fold(0.0, f64::max);
    Ok(WedgeVector {
        coords,
        eigen_residuals,
        eigen0_residual,
    })
}

/// Smallest singular value of the family of unit-normalized wedge vectors
/// (one per fixed index set).
pub fn wedge_family_min_singular(odd: &OddParams, d: u32, family: WedgeFamily) -> Result<f64> {
    let np1 = odd.n() + 1;
    let rows: Vec<Vec<Scalar>> = enumerate_subsets(np1, d as usize)
        .iter()
        .map(|fixed| {
            let wv = wedge_vector(fixed.to_mask(), odd, d, family)?;
            let norm: f64 = wv.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(KrawError::Degenerate("zero wedge vector".into()));
            }
            Ok(wv.coords.iter().map(|c| c / re(norm)).collect())
        })
        .collect::<Result<_>>()?;
    crate::numkern::min_singular_value(&rows)
}

/// A tabulated value for the CLI.
pub struct KrawValue {
    pub alpha: Vec<u32>,
    pub eps: u32,
    pub alpha_tilde: Vec<u32>,
    pub eps_tilde: u32,
    pub degree: u32,
    pub d: u32,
    pub value: Scalar,
}

/// Tabulate 𝒫 over all pairs of one or every (D−d, d) slice.
pub fn tabulate(ps: &ParamSet, degree: u32, d_filter: Option<u32>) -> Result<Vec<KrawValue>> {
    let basis = BasisIndexD::new(ps.m(), ps.n(), degree);
    let mut out = Vec::new();
    for block in basis.blocks() {
        if let Some(want) = d_filter {
            if block.d != want {
                continue;
            }
        }
        let table = p_table(ps, degree, block.d)?;
        for (r, mu) in table.items.iter().enumerate() {
            for (c, nu) in table.items.iter().enumerate() {
                out.push(KrawValue {
                    alpha: mu.alpha.clone(),
                    eps: mu.eps,
                    alpha_tilde: nu.alpha.clone(),
                    eps_tilde: nu.eps,
                    degree,
                    d: block.d,
                    value: table.values.get(r, c),
                });
            }
        }
    }
    Ok(out)
}
