//! The gl(m+1|n+1) action on the degree-D polynomial module, in both the
//! plain and tilde frames.
//!
//! Generators act as the differential operators E_{i,j} ↦ w_i ∂_j; the
//! explicit single-monomial formulas (including every prefix sign) are in
//! [`apply_generator`]. The antiautomorphism φ, the contravariant bilinear
//! form, and the Cartan-swap identities connecting the two frames live
//! here as residual checkers: each proposition becomes a max-norm
//! assertion over the ordered basis.
//!
//! Cross-frame assembly always routes tilde monomials through their full
//! plain-basis expansion; R and S are never inverted numerically.

use crate::error::{KrawError, Result};
use crate::numkern::{multi_factorial, powi, re, Matrix, Scalar, ONE, ZERO};
use crate::params::ParamSet;
use crate::report::Residual;
use crate::superpoly::{sign_prefix, to_monomial_basis, BasisIndexD, SuperMonomial, SuperPolynomial};

/// Which conjugate of the elementary matrix a generator refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Plain,
    Tilde,
}

/// The block of gl(m+1|n+1) an index pair lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// Even-even: x_i ∂_{x_j}.
    A,
    /// Even-odd: x_i ∂_{ξ_j}.
    B,
    /// Odd-even: ξ_i ∂_{x_j}.
    C,
    /// Odd-odd: ξ_i ∂_{ξ_j}.
    D,
}

/// An elementary generator E_{row,col} (or its tilde conjugate), with row
/// and col global indices in 0..m+n+2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorId {
    pub row: usize,
    pub col: usize,
    pub frame: Frame,
}

impl GeneratorId {
    pub fn new(row: usize, col: usize, frame: Frame) -> Self {
        Self { row, col, frame }
    }

    /// Super parity |X| = (|row| + |col|) mod 2 with |i| = 0 for i ≤ m.
    pub fn parity(&self, m: usize) -> u32 {
        ((self.row > m) as u32 + (self.col > m) as u32) % 2
    }

    pub fn block(&self, m: usize) -> Block {
        match (self.row <= m, self.col <= m) {
            (true, true) => Block::A,
            (true, false) => Block::B,
            (false, true) => Block::C,
            (false, false) => Block::D,
        }
    }

    /// Multicolor degree in ℤ₂^{n+1}: records which fermionic modes occur,
    /// mod 2. Diagonal odd generators are multicolor-neutral.
    pub fn multicolor(&self, m: usize) -> u32 {
        let mut bits = 0u32;
        if self.row > m {
            bits ^= 1 << (self.row - m - 1);
        }
        if self.col > m {
            bits ^= 1 << (self.col - m - 1);
        }
        bits
    }

    pub fn label(&self, m: usize) -> String {
        let tag = match self.frame {
            Frame::Plain => "E",
            Frame::Tilde => "tE",
        };
        let block = match self.block(m) {
            Block::A => "A",
            Block::B => "B",
            Block::C => "C",
            Block::D => "D",
        };
        format!("{tag}[{},{}]({block})", self.row, self.col)
    }
}

/// Every generator of one frame, row-major over the global index square.
pub fn all_generators(m: usize, n: usize, frame: Frame) -> Vec<GeneratorId> {
    let k = m + n + 2;
    (0..k)
        .flat_map(|row| (0..k).map(move |col| GeneratorId::new(row, col, frame)))
        .collect()
}

/// Single-monomial action: E_{row,col} sends a monomial to at most one
/// monomial. Returns the coefficient and target, or `None` when the action
/// annihilates (derivative of an absent variable, or ξ² = 0).
///
/// The formulas are identical in both frames: a tilde generator acts on
/// tilde monomials exactly as the plain one acts on plain monomials.
fn apply_elementary(
    row: usize,
    col: usize,
    m: usize,
    mono: &SuperMonomial,
) -> Option<(f64, SuperMonomial)> {
    let alpha = &mono.alpha;
    let eps = mono.eps;
    match (row <= m, col <= m) {
        // x_i ∂_{x_j}: multiplies by α_j.
        (true, true) => {
            if alpha[col] == 0 {
                return None;
            }
            let coeff = alpha[col] as f64;
            let mut a = alpha.clone();
            a[col] -= 1;
            a[row] += 1;
            Some((coeff, SuperMonomial::new(a, eps)))
        }
        // x_i ∂_{ξ_j}: sign (−1)^{s_j(ε)}.
        (true, false) => {
            let j = col - m - 1;
            if eps >> j & 1 == 0 {
                return None;
            }
            let sign = if sign_prefix(eps, j) % 2 == 0 { 1.0 } else { -1.0 };
            let mut a = alpha.clone();
            a[row] += 1;
            Some((sign, SuperMonomial::new(a, eps & !(1 << j))))
        }
        // ξ_i ∂_{x_j}: sign (−1)^{s_i(ε)}, vanishes if mode i is occupied.
        (false, true) => {
            let i = row - m - 1;
            if alpha[col] == 0 || eps >> i & 1 == 1 {
                return None;
            }
            let sign = if sign_prefix(eps, i) % 2 == 0 { 1.0 } else { -1.0 };
            let coeff = alpha[col] as f64 * sign;
            let mut a = alpha.clone();
            a[col] -= 1;
            Some((coeff, SuperMonomial::new(a, eps | (1 << i))))
        }
        // ξ_i ∂_{ξ_j}: sign (−1)^{s_j(ε) + s_i(ε − v_j)}.
        (false, false) => {
            let i = row - m - 1;
            let j = col - m - 1;
            if eps >> j & 1 == 0 {
                return None;
            }
            let cleared = eps & !(1 << j);
            if cleared >> i & 1 == 1 {
                return None;
            }
            let exp = sign_prefix(eps, j) + sign_prefix(cleared, i);
            let sign = if exp % 2 == 0 { 1.0 } else { -1.0 };
            Some((sign, SuperMonomial::new(alpha.clone(), cleared | (1 << i))))
        }
    }
}

/// Action of a generator on a monomial of its own frame. Degree and shape
/// mismatches are dimension errors.
pub fn apply_generator(
    x: &GeneratorId,
    mono: &SuperMonomial,
    m: usize,
    n: usize,
) -> Result<SuperPolynomial> {
    if mono.alpha.len() != m + 1 {
        return Err(KrawError::Dimension(format!(
            "monomial has {} even exponents, expected {}",
            mono.alpha.len(),
            m + 1
        )));
    }
    if mono.eps >> (n + 1) != 0 {
        return Err(KrawError::Dimension(format!(
            "monomial occupies modes beyond n = {n}"
        )));
    }
    let k = m + n + 2;
    if x.row >= k || x.col >= k {
        return Err(KrawError::Dimension(format!(
            "generator index ({}, {}) out of range for m={m}, n={n}",
            x.row, x.col
        )));
    }
    Ok(match apply_elementary(x.row, x.col, m, mono) {
        Some((coeff, target)) => SuperPolynomial::term(target, re(coeff)),
        None => SuperPolynomial::zero(),
    })
}

/// The antiautomorphism φ on a generator: the transposed generator of the
/// same frame together with its explicit coefficient. φ fixes every
/// diagonal generator.
pub fn phi(x: &GeneratorId, ps: &ParamSet) -> (GeneratorId, Scalar) {
    let m = ps.m();
    let image = GeneratorId::new(x.col, x.row, x.frame);
    if x.row == x.col {
        return (image, ONE);
    }
    let nm = &ps.norms;
    let (pw, qw, th, ka) = match x.frame {
        Frame::Plain => (&ps.even.p_tilde, &ps.odd.q_tilde, nm.theta, nm.kappa),
        Frame::Tilde => (&ps.even.p, &ps.odd.q, nm.theta_tilde, nm.kappa_tilde),
    };
    let coeff = match x.block(m) {
        Block::A => pw[x.col] / pw[x.row],
        Block::D => qw[x.col - m - 1] / qw[x.row - m - 1],
        Block::B => -(th * qw[x.col - m - 1]) / (ka * pw[x.row]),
        Block::C => (ka * pw[x.col]) / (th * qw[x.row - m - 1]),
    };
    (image, coeff)
}

/// Squared norm of a plain monomial under the defining bilinear form:
/// ⟨x^α ξ^ε, x^α ξ^ε⟩ = (α!/(p̃^α q̃^ε)) θ^{|α|} κ^{|ε|}.
pub fn monomial_norm(mono: &SuperMonomial, ps: &ParamSet) -> Scalar {
    let mut denom = ONE;
    for (i, &a) in mono.alpha.iter().enumerate() {
        denom *= powi(ps.even.p_tilde[i], a);
    }
    for j in 0..=ps.n() {
        if mono.eps >> j & 1 == 1 {
            denom *= ps.odd.q_tilde[j];
        }
    }
    let alpha_deg: u32 = mono.alpha.iter().sum();
    re(multi_factorial(&mono.alpha)) / denom
        * powi(ps.norms.theta, alpha_deg)
        * powi(ps.norms.kappa, mono.odd_degree())
}

/// The predicted squared norm of a tilde monomial under the form:
/// (α!/(p^α q^ε)) θ̃^{|α|} κ̃^{|ε|}.
pub fn tilde_monomial_norm(mono: &SuperMonomial, ps: &ParamSet) -> Scalar {
    let mut denom = ONE;
    for (i, &a) in mono.alpha.iter().enumerate() {
        denom *= powi(ps.even.p[i], a);
    }
    for j in 0..=ps.n() {
        if mono.eps >> j & 1 == 1 {
            denom *= ps.odd.q[j];
        }
    }
    let alpha_deg: u32 = mono.alpha.iter().sum();
    re(multi_factorial(&mono.alpha)) / denom
        * powi(ps.norms.theta_tilde, alpha_deg)
        * powi(ps.norms.kappa_tilde, mono.odd_degree())
}

/// Bilinear extension of the form over two polynomials in the plain
/// monomial basis. Diagonal: only matching monomials contribute, and
/// monomials of different degree never match.
pub fn pair(u: &SuperPolynomial, v: &SuperPolynomial, ps: &ParamSet) -> Scalar {
    let mut acc = ZERO;
    for (mono, cu) in u.iter() {
        let cv = v.coeff(mono);
        if cv == ZERO {
            continue;
        }
        acc += cu * cv * monomial_norm(mono, ps);
    }
    acc
}

/// Plain-basis expansions of every tilde basis monomial, aligned with the
/// basis ordering. The workhorse for all cross-frame checks.
pub fn tilde_expansions(ps: &ParamSet, basis: &BasisIndexD) -> Vec<SuperPolynomial> {
    basis
        .items()
        .iter()
        .map(|mono| to_monomial_basis(&mono.alpha, mono.eps, ps))
        .collect()
}

/// Contravariance defect |⟨X.u, v⟩ − (−1)^{|X| X̄·ū} ⟨u, φ(X).v⟩| for
/// monomials u, v of X's frame. The pairing is diagonal in each frame's
/// own monomial basis: the defining values for plain inputs, the tilde
/// norms for tilde inputs. That the tilde norms really are the pairing of
/// the expanded monomials is certified separately by [`tform_residual`].
pub fn contravariance_residual(
    x: &GeneratorId,
    u: &SuperMonomial,
    v: &SuperMonomial,
    ps: &ParamSet,
) -> Result<f64> {
    let (m, n) = (ps.m(), ps.n());
    let sign_exp = x.parity(m) * (x.multicolor(m) & u.eps).count_ones();
    let sign = if sign_exp % 2 == 0 { ONE } else { -ONE };
    let norm_of = |mono: &SuperMonomial| match x.frame {
        Frame::Plain => monomial_norm(mono, ps),
        Frame::Tilde => tilde_monomial_norm(mono, ps),
    };
    let (phi_x, phi_coeff) = phi(x, ps);
    let xu = apply_generator(x, u, m, n)?;
    let phix_v = apply_generator(&phi_x, v, m, n)?.scaled(phi_coeff);
    let lhs = xu.coeff(v) * norm_of(v);
    let rhs = phix_v.coeff(u) * norm_of(u);
    Ok((lhs - sign * rhs).norm())
}

/// Contravariance over all generators of both frames and all basis pairs
/// of the degree-D module.
pub fn contravariance_sweep(ps: &ParamSet, degree: u32) -> Result<Residual> {
    let (m, n) = (ps.m(), ps.n());
    let basis = BasisIndexD::new(m, n, degree);
    let mut worst = Residual::new();
    for frame in [Frame::Plain, Frame::Tilde] {
        let norms: Vec<Scalar> = basis
            .items()
            .iter()
            .map(|mono| match frame {
                Frame::Plain => monomial_norm(mono, ps),
                Frame::Tilde => tilde_monomial_norm(mono, ps),
            })
            .collect();
        for x in all_generators(m, n, frame) {
            let (phi_x, phi_coeff) = phi(&x, ps);
            for (a, u) in basis.items().iter().enumerate() {
                let sign_exp = x.parity(m) * (x.multicolor(m) & u.eps).count_ones();
                let sign = if sign_exp % 2 == 0 { ONE } else { -ONE };
                let xu = apply_elementary(x.row, x.col, m, u);
                let xu_idx = xu
                    .as_ref()
                    .map(|(c, t)| (*c, basis.index_of(t).expect("degree preserved")));
                for (b, v) in basis.items().iter().enumerate() {
                    let lhs = match xu_idx {
                        Some((c, t)) if t == b => re(c) * norms[t],
                        _ => ZERO,
                    };
                    let rhs = match apply_elementary(phi_x.row, phi_x.col, m, v) {
                        Some((c, target)) => {
                            let t = basis.index_of(&target).expect("degree preserved");
                            if t == a {
                                phi_coeff * re(c) * norms[a]
                            } else {
                                ZERO
                            }
                        }
                        None => ZERO,
                    };
                    let value = (lhs - sign * rhs).norm();
                    worst.record(value, || {
                        format!("X={} u=({u}) v=({v})", x.label(m))
                    });
                }
            }
        }
    }
    Ok(worst)
}

/// Gram matrix of the tilde basis against the predicted tilde
/// diagonal: returns the worst relative deviation. Off-diagonal entries
/// are compared to zero on the scale of the two adjacent norms.
pub fn tform_residual(ps: &ParamSet, degree: u32) -> Result<Residual> {
    let basis = BasisIndexD::new(ps.m(), ps.n(), degree);
    let expansions = tilde_expansions(ps, &basis);
    let mut worst = Residual::new();
    for (i, u) in basis.items().iter().enumerate() {
        let norm_i = tilde_monomial_norm(u, ps);
        for (j, v) in basis.items().iter().enumerate() {
            let got = pair(&expansions[i], &expansions[j], ps);
            let want = if i == j { norm_i } else { ZERO };
            let scale = norm_i.norm().max(tilde_monomial_norm(v, ps).norm());
            let value = (got - want).norm() / scale;
            worst.record(value, || format!("u=({u}) v=({v})"));
        }
    }
    Ok(worst)
}

/// The Cauchy–Binet route to the tilde norms, checked on the odd sector
/// alone: Σ_{|I|=d} det(VQ̃)_{J,I} det(V)_{J,I} = q₀^d / q_J for every
/// size-d subset J. Independent of the polynomial machinery above.
pub fn cauchy_binet_odd_residual(odd: &crate::params::OddParams) -> Result<Residual> {
    use crate::numkern::enumerate_subsets;
    let np1 = odd.n() + 1;
    let vq = odd.v.mul(&Matrix::diag(&odd.q_tilde))?;
    let mut worst = Residual::new();
    for d in 0..=np1 {
        for j_set in enumerate_subsets(np1, d) {
            let mut acc = ZERO;
            for i_set in enumerate_subsets(np1, d) {
                acc += vq.minor(&j_set, &i_set)? * odd.v.minor(&j_set, &i_set)?;
            }
            let mut target = powi(odd.q0(), d as u32);
            for &j in j_set.members() {
                target /= odd.q[j];
            }
            worst.record((acc - target).norm(), || {
                format!("d={d} J={}", j_set.display())
            });
        }
    }
    Ok(worst)
}

/// The four Cartan-swap identities: each expresses a diagonal generator of
/// one frame as a weighted double sum over the other frame's generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanIdentity {
    /// Ã_{i,i} = p₀⁻¹ p_i Σ_{k,l} p̃_k u_{i,k} u_{i,l} A_{k,l}.
    EvenTildeFromPlain,
    /// A_{i,i} = p₀⁻¹ p̃_i Σ_{k,l} p_k u_{k,i} u_{l,i} Ã_{k,l}.
    EvenPlainFromTilde,
    /// D̃_{i,i} = q₀⁻¹ q_i Σ_{k,l} q̃_k v_{i,k} v_{i,l} D_{k,l}.
    OddTildeFromPlain,
    /// D_{i,i} = q₀⁻¹ q̃_i Σ_{k,l} q_k v_{k,i} v_{l,i} D̃_{k,l}.
    OddPlainFromTilde,
}

impl CartanIdentity {
    pub const ALL: [CartanIdentity; 4] = [
        CartanIdentity::EvenTildeFromPlain,
        CartanIdentity::EvenPlainFromTilde,
        CartanIdentity::OddTildeFromPlain,
        CartanIdentity::OddPlainFromTilde,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CartanIdentity::EvenTildeFromPlain => "even-tilde-from-plain",
            CartanIdentity::EvenPlainFromTilde => "even-plain-from-tilde",
            CartanIdentity::OddTildeFromPlain => "odd-tilde-from-plain",
            CartanIdentity::OddPlainFromTilde => "odd-plain-from-tilde",
        }
    }

    /// Range of valid diagonal indices for this identity.
    pub fn index_range(&self, m: usize, n: usize) -> usize {
        match self {
            CartanIdentity::EvenTildeFromPlain | CartanIdentity::EvenPlainFromTilde => m + 1,
            CartanIdentity::OddTildeFromPlain | CartanIdentity::OddPlainFromTilde => n + 1,
        }
    }
}

/// Residual of one Cartan-swap identity at diagonal index i, as operators
/// on the degree-D module: both sides are applied to every tilde basis
/// monomial and compared coefficient-wise in the plain basis.
pub fn cartan_swap_residual(
    i: usize,
    which: CartanIdentity,
    ps: &ParamSet,
    degree: u32,
) -> Result<f64> {
    let (m, n) = (ps.m(), ps.n());
    if i >= which.index_range(m, n) {
        return Err(KrawError::Dimension(format!(
            "index {i} out of range for {}",
            which.name()
        )));
    }
    let basis = BasisIndexD::new(m, n, degree);
    let expansions = tilde_expansions(ps, &basis);
    let apply_plain_to_poly = |row: usize, col: usize, poly: &SuperPolynomial| {
        let mut out = SuperPolynomial::zero();
        for (mono, c) in poly.iter() {
            if let Some((coeff, target)) = apply_elementary(row, col, m, mono) {
                out.add_term(target, c * re(coeff));
            }
        }
        out
    };
    let apply_tilde_expanded = |row: usize, col: usize, idx: usize| {
        let mono = &basis.items()[idx];
        match apply_elementary(row, col, m, mono) {
            Some((coeff, target)) => {
                let t = basis.index_of(&target).expect("degree preserved");
                expansions[t].scaled(re(coeff))
            }
            None => SuperPolynomial::zero(),
        }
    };

    let even = &ps.even;
    let odd = &ps.odd;
    let mut worst = 0.0f64;
    for (b, mono) in basis.items().iter().enumerate() {
        let (lhs, rhs) = match which {
            CartanIdentity::EvenTildeFromPlain => {
                // Left: Ã_{i,i} is diagonal on tilde monomials.
                let lhs = expansions[b].scaled(re(mono.alpha[i] as f64));
                let mut rhs = SuperPolynomial::zero();
                for k in 0..=m {
                    for l in 0..=m {
                        let w = even.p[i] / even.p0()
                            * even.p_tilde[k]
                            * even.u.get(i, k)
                            * even.u.get(i, l);
                        rhs.add_assign(&apply_plain_to_poly(k, l, &expansions[b]).scaled(w));
                    }
                }
                (lhs, rhs)
            }
            CartanIdentity::EvenPlainFromTilde => {
                let lhs = apply_plain_to_poly(i, i, &expansions[b]);
                let mut rhs = SuperPolynomial::zero();
                for k in 0..=m {
                    for l in 0..=m {
                        let w = even.p_tilde[i] / even.p0()
                            * even.p[k]
                            * even.u.get(k, i)
                            * even.u.get(l, i);
                        rhs.add_assign(&apply_tilde_expanded(k, l, b).scaled(w));
                    }
                }
                (lhs, rhs)
            }
            CartanIdentity::OddTildeFromPlain => {
                let occupied = (mono.eps >> i & 1) as f64;
                let lhs = expansions[b].scaled(re(occupied));
                let mut rhs = SuperPolynomial::zero();
                for k in 0..=n {
                    for l in 0..=n {
                        let w = odd.q[i] / odd.q0()
                            * odd.q_tilde[k]
                            * odd.v.get(i, k)
                            * odd.v.get(i, l);
                        rhs.add_assign(
                            &apply_plain_to_poly(m + 1 + k, m + 1 + l, &expansions[b]).scaled(w),
                        );
                    }
                }
                (lhs, rhs)
            }
            CartanIdentity::OddPlainFromTilde => {
                let lhs = apply_plain_to_poly(m + 1 + i, m + 1 + i, &expansions[b]);
                let mut rhs = SuperPolynomial::zero();
                for k in 0..=n {
                    for l in 0..=n {
                        let w = odd.q_tilde[i] / odd.q0()
                            * odd.q[k]
                            * odd.v.get(k, i)
                            * odd.v.get(l, i);
                        rhs.add_assign(&apply_tilde_expanded(m + 1 + k, m + 1 + l, b).scaled(w));
                    }
                }
                (lhs, rhs)
            }
        };
        worst = worst.max(lhs.max_coeff_diff(&rhs));
    }
    Ok(worst)
}

/// All four Cartan-swap identities over all diagonal indices.
pub fn cartan_swap_sweep(ps: &ParamSet, degree: u32) -> Result<Residual> {
    let mut worst = Residual::new();
    for which in CartanIdentity::ALL {
        for i in 0..which.index_range(ps.m(), ps.n()) {
            let value = cartan_swap_residual(i, which, ps, degree)?;
            worst.record(value, || format!("{} i={i} D={degree}", which.name()));
        }
    }
    Ok(worst)
}

/// Dense matrix of a generator on the ordered degree-D basis of its own
/// frame: column = source index, row = target index.
pub fn operator_matrix(x: &GeneratorId, basis: &BasisIndexD) -> Matrix {
    let mut mat = Matrix::zeros(basis.len(), basis.len());
    for (col, mono) in basis.items().iter().enumerate() {
        if let Some((coeff, target)) = apply_elementary(x.row, x.col, basis.m, mono) {
            let row = basis.index_of(&target).expect("degree preserved");
            mat.set(row, col, re(coeff));
        }
    }
    mat
}

/// Supercommutator suite on the degree-D module: the operator matrix of
/// [X, Y] = XY − (−1)^{|X||Y|} YX must match
/// δ_{j,k} E_{i,l} − (−1)^{(|i|+|j|)(|k|+|l|)} δ_{i,l} E_{k,j}
/// applied as operators, for all pairs of plain generators.
pub fn supercommutator_sweep(m: usize, n: usize, degree: u32) -> Result<Residual> {
    let basis = BasisIndexD::new(m, n, degree);
    let gens = all_generators(m, n, Frame::Plain);
    let mats: Vec<Matrix> = gens.iter().map(|g| operator_matrix(g, &basis)).collect();
    let k = m + n + 2;
    let idx = |row: usize, col: usize| row * k + col;
    let mut worst = Residual::new();
    for x in &gens {
        for y in &gens {
            let sign = if x.parity(m) * y.parity(m) % 2 == 0 { 1.0 } else { -1.0 };
            let xy = mats[idx(x.row, x.col)].mul(&mats[idx(y.row, y.col)])?;
            let yx = mats[idx(y.row, y.col)].mul(&mats[idx(x.row, x.col)])?;
            let commutator = xy.sub(&yx.scale(re(sign)))?;
            let mut formula = Matrix::zeros(basis.len(), basis.len());
            if x.col == y.row {
                formula = formula.add(&mats[idx(x.row, y.col)])?;
            }
            if x.row == y.col {
                formula = formula.sub(&mats[idx(y.row, x.col)].scale(re(sign)))?;
            }
            let value = commutator.max_abs_diff(&formula)?;
            worst.record(value, || {
                format!("X={} Y={} D={degree}", x.label(m), y.label(m))
            });
        }
    }
    Ok(worst)
}

/// Multicolor additivity: whenever X.u is nonzero, the ξ-support of the
/// target must be X̄ + ε (mod 2). Returns the largest coefficient attached
/// to a violating target (0 when the grading is respected everywhere).
pub fn multicolor_additivity_sweep(m: usize, n: usize, degree: u32) -> Residual {
    let basis = BasisIndexD::new(m, n, degree);
    let mut worst = Residual::new();
    for x in all_generators(m, n, Frame::Plain) {
        let color = x.multicolor(m);
        for mono in basis.items() {
            if let Some((coeff, target)) = apply_elementary(x.row, x.col, m, mono) {
                let expected = color ^ mono.eps;
                let value = if target.eps == expected { 0.0 } else { coeff.abs() };
                worst.record(value, || {
                    format!("X={} u=({mono})", x.label(m))
                });
            }
        }
    }
    worst
}

/// φ is a super antiautomorphism: the matrix of φ([X,Y]) must equal
/// (−1)^{|X||Y|} [φ(Y), φ(X)] on the degree-D module.
pub fn phi_antiautomorphism_sweep(ps: &ParamSet, degree: u32) -> Result<Residual> {
    let (m, n) = (ps.m(), ps.n());
    let basis = BasisIndexD::new(m, n, degree);
    let gens = all_generators(m, n, Frame::Plain);
    let mats: Vec<Matrix> = gens.iter().map(|g| operator_matrix(g, &basis)).collect();
    let k = m + n + 2;
    let idx = |row: usize, col: usize| row * k + col;
    let matrix_of = |terms: &[(Scalar, GeneratorId)]| -> Matrix {
        let mut acc = Matrix::zeros(basis.len(), basis.len());
        for (c, g) in terms {
            acc = acc
                .add(&mats[idx(g.row, g.col)].scale(*c))
                .expect("same shape");
        }
        acc
    };
    let mut worst = Residual::new();
    for x in &gens {
        for y in &gens {
            let sign = if x.parity(m) * y.parity(m) % 2 == 0 { ONE } else { -ONE };
            // [X, Y] as a short linear combination of generators.
            let mut bracket: Vec<(Scalar, GeneratorId)> = Vec::new();
            if x.col == y.row {
                bracket.push((ONE, GeneratorId::new(x.row, y.col, Frame::Plain)));
            }
            if x.row == y.col {
                bracket.push((-sign, GeneratorId::new(y.row, x.col, Frame::Plain)));
            }
            let phi_bracket: Vec<(Scalar, GeneratorId)> = bracket
                .iter()
                .map(|(c, g)| {
                    let (img, pc) = phi(g, ps);
                    (c * pc, img)
                })
                .collect();
            let lhs = matrix_of(&phi_bracket);
            let (phi_x, cx) = phi(x, ps);
            let (phi_y, cy) = phi(y, ps);
            let my = mats[idx(phi_y.row, phi_y.col)].scale(cy);
            let mx = mats[idx(phi_x.row, phi_x.col)].scale(cx);
            let rhs = my
                .mul(&mx)?
                .sub(&mx.mul(&my)?.scale(sign))?
                .scale(sign);
            let value = lhs.max_abs_diff(&rhs)?;
            worst.record(value, || {
                format!("X={} Y={} D={degree}", x.label(m), y.label(m))
            });
        }
    }
    Ok(worst)
}

/// Irreducibility proxy: from any single basis monomial, repeated
/// generator application reaches the whole degree-D basis.
pub fn generators_reach_whole_module(m: usize, n: usize, degree: u32) -> bool {
    let basis = BasisIndexD::new(m, n, degree);
    if basis.is_empty() {
        return true;
    }
    let gens = all_generators(m, n, Frame::Plain);
    let mut seen = vec![false; basis.len()];
    let mut queue = vec![0usize];
    seen[0] = true;
    while let Some(at) = queue.pop() {
        let mono = &basis.items()[at];
        for g in &gens {
            if let Some((_, target)) = apply_elementary(g.row, g.col, m, mono) {
                let t = basis.index_of(&target).expect("degree preserved");
                if !seen[t] {
                    seen[t] = true;
                    queue.push(t);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}
