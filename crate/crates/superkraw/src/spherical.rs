//! Zonal spherical functions and fermionic occupation statistics.
//!
//! For positive real odd parameters, g = q₀^{−1/2} Q^{1/2} V Q̃^{1/2} lies
//! in O(n+1) and is pushed into SO(n+1) by flipping the last column factor
//! of Q̃^{1/2}. Acting on the d-fermion space, the minors of g are Plücker
//! coordinates: |det g_{I,J}|² is the probability of observing occupation
//! I when the state g.ξ_J is measured in the occupation basis. The zonal
//! function φ_d(g) = (v^K, g.v^K) with v^K = ξ₀⋯ξ_{d−1} reproduces those
//! minors through coset representatives σ_I, and the q-weighted evaluation
//! of φ_d recovers the pure-odd Krawtchouk value exactly.
//!
//! This layer requires q, q̃ positive real and V real; everything else in
//! the crate stays complex.

use crate::error::{KrawError, Result};
use crate::krawtchouk::eval_p1;
use crate::numkern::{
    enumerate_subsets, factorial, re, IndexSubset, Matrix, Scalar, SplitMix64, ONE,
};
use crate::params::OddParams;
use crate::report::Residual;
use crate::superpoly::expand_odd_product;

/// An SO(n+1) element together with the square-root factors that built it.
/// The factors matter: the zonal consistency identity must use the same
/// root choices that entered g, which makes it immune to the sign
/// convention (verified by [`krzonal_residual_with_frame`] under an
/// alternate frame).
#[derive(Debug, Clone)]
pub struct OrthogonalFrame {
    pub g: Matrix,
    /// Signed diagonal of Q^{1/2} (row factors).
    pub q_sqrt: Vec<f64>,
    /// Signed diagonal of Q̃^{1/2} (column factors, sign fix applied).
    pub q_tilde_sqrt: Vec<f64>,
}

fn positive_real_parts(odd: &OddParams) -> Result<(Vec<f64>, Vec<f64>)> {
    let check = |w: &[Scalar], name: &str| -> Result<Vec<f64>> {
        w.iter()
            .map(|z| {
                if z.im != 0.0 || z.re <= 0.0 {
                    Err(KrawError::Domain(format!(
                        "spherical layer needs strictly positive real {name}, got {z}"
                    )))
                } else {
                    Ok(z.re)
                }
            })
            .collect()
    };
    if odd.v.max_imag() > 0.0 {
        return Err(KrawError::Domain(
            "spherical layer needs a real mixing matrix V".into(),
        ));
    }
    Ok((check(&odd.q, "q")?, check(&odd.q_tilde, "q_tilde")?))
}

fn assemble_g(odd: &OddParams, q_sqrt: &[f64], q_tilde_sqrt: &[f64]) -> Matrix {
    let np1 = odd.n() + 1;
    let q0_inv_sqrt = 1.0 / odd.q0().re.sqrt();
    Matrix::from_fn(np1, np1, |i, j| {
        re(q0_inv_sqrt * q_sqrt[i] * odd.v.get(i, j).re * q_tilde_sqrt[j])
    })
}

/// g = q₀^{−1/2} Q^{1/2} V Q̃^{1/2} with positive roots; if det g = −1 the
/// last column factor is negated, landing in SO(n+1).
pub fn build_g(odd: &OddParams) -> Result<OrthogonalFrame> {
    let (q, qt) = positive_real_parts(odd)?;
    let q_sqrt: Vec<f64> = q.iter().map(|x| x.sqrt()).collect();
    let mut q_tilde_sqrt: Vec<f64> = qt.iter().map(|x| x.sqrt()).collect();
    let mut g = assemble_g(odd, &q_sqrt, &q_tilde_sqrt);
    let det = g.det()?.re;
    if det < 0.0 {
        let last = q_tilde_sqrt.len() - 1;
        q_tilde_sqrt[last] = -q_tilde_sqrt[last];
        g = assemble_g(odd, &q_sqrt, &q_tilde_sqrt);
    }
    Ok(OrthogonalFrame {
        g,
        q_sqrt,
        q_tilde_sqrt,
    })
}

/// A second valid frame for the same parameters: the first row factor and
/// the last column factor are both negated, so det is unchanged. Exists to
/// verify that every downstream quantity is independent of the root signs.
pub fn build_g_alternate(odd: &OddParams) -> Result<OrthogonalFrame> {
    let mut frame = build_g(odd)?;
    frame.q_sqrt[0] = -frame.q_sqrt[0];
    let last = frame.q_tilde_sqrt.len() - 1;
    frame.q_tilde_sqrt[last] = -frame.q_tilde_sqrt[last];
    frame.g = assemble_g(odd, &frame.q_sqrt, &frame.q_tilde_sqrt);
    Ok(frame)
}

/// ‖h hᵗ − I‖∞: how far a matrix is from orthogonal.
pub fn orthogonality_defect(h: &Matrix) -> Result<f64> {
    h.mul(&h.transpose())?
        .max_abs_diff(&Matrix::identity(h.rows()))
}

/// Coset representative σ_I ∈ SO(n+1): a permutation matrix sending
/// positions 0..d−1 to the sorted members of I and the rest to the sorted
/// complement. A negative permutation sign is absorbed by negating the
/// last complement column, never one of the first d, so σ_I.(ξ₀⋯ξ_{d−1})
/// is exactly +ξ_I.
pub fn sigma(i_set: &IndexSubset, n_plus_1: usize, d: usize) -> Result<Matrix> {
    if i_set.len() != d {
        return Err(KrawError::Dimension(format!(
            "representative needs |I| = {d}, got {}",
            i_set.len()
        )));
    }
    if i_set.members().iter().any(|&i| i >= n_plus_1) {
        return Err(KrawError::Dimension("subset member out of range".into()));
    }
    let mut targets: Vec<usize> = i_set.members().to_vec();
    targets.extend(i_set.complement(n_plus_1).members());
    // Permutation parity by inversion count.
    let mut inversions = 0usize;
    for a in 0..targets.len() {
        for b in a + 1..targets.len() {
            if targets[a] > targets[b] {
                inversions += 1;
            }
        }
    }
    let mut mat = Matrix::zeros(n_plus_1, n_plus_1);
    for (col, &row) in targets.iter().enumerate() {
        mat.set(row, col, ONE);
    }
    if inversions % 2 == 1 {
        let col = n_plus_1 - 1;
        for row in 0..n_plus_1 {
            mat.set(row, col, -mat.get(row, col));
        }
    }
    Ok(mat)
}

/// A different valid representative for the same subset: σ_I right-
/// multiplied by a K-element (a quarter rotation inside the first block if
/// d ≥ 2, else inside the complement block). Equals σ_I when K is trivial.
pub fn sigma_variant(i_set: &IndexSubset, n_plus_1: usize, d: usize) -> Result<Matrix> {
    let base = sigma(i_set, n_plus_1, d)?;
    let (a, b) = if d >= 2 {
        (0usize, 1usize)
    } else if n_plus_1 - d >= 2 {
        (d, d + 1)
    } else {
        return Ok(base);
    };
    let mut rot = Matrix::identity(n_plus_1);
    rot.set(a, a, re(0.0));
    rot.set(a, b, re(-1.0));
    rot.set(b, a, ONE);
    rot.set(b, b, re(0.0));
    base.mul(&rot)
}

/// The zonal value φ_d(h) = (v^K, h.v^K): the leading d×d principal minor.
pub fn phi_d(h: &Matrix, d: usize) -> Result<Scalar> {
    let lead = IndexSubset::leading(d);
    h.minor(&lead, &lead)
}

/// Same value through the wedge expansion of h.(ξ₀⋯ξ_{d−1}): the
/// coefficient of ξ₀⋯ξ_{d−1}. Second route for [`phi_d`].
pub fn phi_d_wedge(h: &Matrix, d: usize) -> Result<Scalar> {
    let expansion = expand_odd_product(&h.transpose(), &IndexSubset::leading(d));
    let mask = if d == 0 { 0 } else { (1u32 << d) - 1 };
    Ok(expansion.get(&mask).copied().unwrap_or(re(0.0)))
}

/// φ_d with an orthogonality warning: the value is returned regardless,
/// together with the defect when it exceeds the tolerance.
pub fn phi_d_checked(h: &Matrix, d: usize, tol: f64) -> Result<(Scalar, Option<f64>)> {
    let defect = orthogonality_defect(h)?;
    let value = phi_d(h, d)?;
    Ok((value, (defect > tol).then_some(defect)))
}

/// The variant using the other fixed vector v^K_− = ξ_d⋯ξ_n: the trailing
/// principal minor. Relevant only when n+1 is even and d = (n+1)/2, where
/// the d-fermion module splits in two; no identity suite is attached to
/// this component.
pub fn phi_d_minus(h: &Matrix, d: usize) -> Result<Scalar> {
    let trailing = IndexSubset::new((d..h.rows()).collect())?;
    h.minor(&trailing, &trailing)
}

/// Occupation-transition probabilities ℙ_{I|J} = det(g_{I,J})² for a fixed
/// source subset J, over every size-d subset I in colex order.
#[derive(Debug, Clone)]
pub struct OccupationDistribution {
    pub source: IndexSubset,
    pub entries: Vec<(IndexSubset, f64)>,
    pub seed: u64,
}

impl OccupationDistribution {
    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

pub fn occupation_probs(
    odd: &OddParams,
    source: &IndexSubset,
    d: usize,
    seed: u64,
) -> Result<OccupationDistribution> {
    if source.len() != d {
        return Err(KrawError::Dimension(format!(
            "source subset must have size {d}"
        )));
    }
    let frame = build_g(odd)?;
    let np1 = odd.n() + 1;
    let entries = enumerate_subsets(np1, d)
        .into_iter()
        .map(|i_set| {
            let minor = frame.g.minor(&i_set, source)?;
            Ok((i_set, minor.re * minor.re + minor.im * minor.im))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OccupationDistribution {
        source: source.clone(),
        entries,
        seed,
    })
}

/// Seeded inverse-CDF sampling over the colex-ordered subsets; the
/// frequency of each subset over `count` draws. Deterministic per seed.
pub fn sample_occupation(dist: &OccupationDistribution, count: usize) -> Vec<(IndexSubset, u64)> {
    let mut rng = SplitMix64::new(dist.seed);
    let total = dist.total();
    let mut freq = vec![0u64; dist.entries.len()];
    for _ in 0..count {
        let u = rng.next_f64() * total;
        let mut acc = 0.0;
        let mut chosen = dist.entries.len() - 1;
        for (k, (_, p)) in dist.entries.iter().enumerate() {
            acc += p;
            if u < acc {
                chosen = k;
                break;
            }
        }
        freq[chosen] += 1;
    }
    dist.entries
        .iter()
        .zip(freq)
        .map(|((s, _), f)| (s.clone(), f))
        .collect()
}

/// |RHS − 𝒫₁(ε, ε̃)| where RHS is the q-weighted zonal evaluation
/// (q₀^{d/2}/d!) q_I^{−1/2} q̃_J^{−1/2} φ_d(σ_I⁻¹ g σ_J) at the single
/// surviving pair I = supp ε̃, J = supp ε. The weights use the frame's own
/// square-root factors.
pub fn krzonal_residual_with_frame(
    odd: &OddParams,
    frame: &OrthogonalFrame,
    eps: u32,
    eps_tilde: u32,
) -> Result<f64> {
    let d = eps.count_ones();
    if d != eps_tilde.count_ones() {
        return Err(KrawError::Dimension(
            "zonal check needs |eps| = |eps_tilde|".into(),
        ));
    }
    let np1 = odd.n() + 1;
    let i_set = IndexSubset::from_mask(eps_tilde);
    let j_set = IndexSubset::from_mask(eps);
    let sig_i = sigma(&i_set, np1, d as usize)?;
    let sig_j = sigma(&j_set, np1, d as usize)?;
    let h = sig_i.transpose().mul(&frame.g)?.mul(&sig_j)?;
    let zonal = phi_d(&h, d as usize)?;
    let q_i: f64 = i_set.members().iter().map(|&i| frame.q_sqrt[i]).product();
    let q_j: f64 = j_set
        .members()
        .iter()
        .map(|&j| frame.q_tilde_sqrt[j])
        .product();
    let q0_pow = odd.q0().re.powf(d as f64 / 2.0);
    let rhs = zonal * re(q0_pow / (factorial(d as usize) * q_i * q_j));
    let lhs = eval_p1(eps, eps_tilde, odd)?;
    Ok((lhs - rhs).norm())
}

/// Zonal consistency with a freshly built frame.
pub fn krzonal_residual(odd: &OddParams, eps: u32, eps_tilde: u32) -> Result<f64> {
    let frame = build_g(odd)?;
    krzonal_residual_with_frame(odd, &frame, eps, eps_tilde)
}

/// Zonal consistency over every (ε, ε̃) pair with matching odd degree,
/// under both the standard and the alternate frame.
pub fn krzonal_sweep(odd: &OddParams) -> Result<Residual> {
    let np1 = odd.n() + 1;
    let frames = [build_g(odd)?, build_g_alternate(odd)?];
    let mut worst = Residual::new();
    for eps in 0u32..1 << np1 {
        for eps_tilde in 0u32..1 << np1 {
            if eps.count_ones() != eps_tilde.count_ones() {
                continue;
            }
            for (fi, frame) in frames.iter().enumerate() {
                let value = krzonal_residual_with_frame(odd, frame, eps, eps_tilde)?;
                worst.record(value, || {
                    format!("eps={eps:b} eps_tilde={eps_tilde:b} frame={fi}")
                });
            }
        }
    }
    Ok(worst)
}

/// φ_d(σ_I⁻¹ g σ_J) must not depend on which representatives were picked.
pub fn sigma_independence_residual(odd: &OddParams, d: usize) -> Result<Residual> {
    let np1 = odd.n() + 1;
    let frame = build_g(odd)?;
    let mut worst = Residual::new();
    for i_set in enumerate_subsets(np1, d) {
        for j_set in enumerate_subsets(np1, d) {
            let base = phi_d(
                &sigma(&i_set, np1, d)?
                    .transpose()
                    .mul(&frame.g)?
                    .mul(&sigma(&j_set, np1, d)?)?,
                d,
            )?;
            let variant = phi_d(
                &sigma_variant(&i_set, np1, d)?
                    .transpose()
                    .mul(&frame.g)?
                    .mul(&sigma_variant(&j_set, np1, d)?)?,
                d,
            )?;
            worst.record((base - variant).norm(), || {
                format!("I={} J={}", i_set.display(), j_set.display())
            });
        }
    }
    Ok(worst)
}

/// (ξ_I, g.ξ_J) computed two ways: the minor of g directly, and the zonal
/// composition φ_d(σ_I⁻¹ g σ_J). Returns the worst disagreement.
pub fn minor_vs_zonal_residual(odd: &OddParams, d: usize) -> Result<Residual> {
    let np1 = odd.n() + 1;
    let frame = build_g(odd)?;
    let mut worst = Residual::new();
    for i_set in enumerate_subsets(np1, d) {
        for j_set in enumerate_subsets(np1, d) {
            let minor = frame.g.minor(&i_set, &j_set)?;
            let h = sigma(&i_set, np1, d)?
                .transpose()
                .mul(&frame.g)?
                .mul(&sigma(&j_set, np1, d)?)?;
            let zonal = phi_d(&h, d)?;
            worst.record((minor - zonal).norm(), || {
                format!("I={} J={}", i_set.display(), j_set.display())
            });
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkern::ZERO;
    use crate::params::{binary_odd, random_odd};

    fn binary() -> OddParams {
        binary_odd(re(0.5)).unwrap()
    }

    #[test]
    fn binary_g_is_the_sign_fixed_rotation() {
        // V/√2 has det −1; the fix lands on [[1,−1],[1,1]]/√2.
        let frame = build_g(&binary()).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let want = Matrix::from_real_rows(&[vec![s, -s], vec![s, s]]).unwrap();
        assert!(frame.g.max_abs_diff(&want).unwrap() <= 1e-14);
        assert!((frame.g.det().unwrap() - ONE).norm() <= 1e-14);
    }

    #[test]
    fn trivial_g_n0() {
        let odd = OddParams {
            q: vec![ONE],
            q_tilde: vec![ONE],
            v: Matrix::identity(1),
        };
        let frame = build_g(&odd).unwrap();
        assert_eq!(frame.g.get(0, 0), ONE);
    }

    #[test]
    fn random_g_is_special_orthogonal() {
        for seed in [1u64, 2, 3] {
            let odd = random_odd(4, &mut SplitMix64::new(seed));
            let frame = build_g(&odd).unwrap();
            assert!(orthogonality_defect(&frame.g).unwrap() <= 1e-13);
            assert!((frame.g.det().unwrap() - ONE).norm() <= 1e-12);
        }
    }

    #[test]
    fn complex_odd_params_are_rejected() {
        let mut odd = binary();
        odd.q[0] = Scalar::new(0.5, 0.1);
        assert!(matches!(build_g(&odd), Err(KrawError::Domain(_))));
        let mut odd = binary();
        odd.q_tilde[1] = re(-0.5);
        assert!(matches!(build_g(&odd), Err(KrawError::Domain(_))));
    }

    #[test]
    fn sigma_identity_for_leading_subset() {
        let s = sigma(&IndexSubset::leading(2), 4, 2).unwrap();
        assert!(s.max_abs_diff(&Matrix::identity(4)).unwrap() == 0.0);
    }

    #[test]
    fn sigma_two_mode_swap() {
        let s = sigma(&IndexSubset::new(vec![1]).unwrap(), 2, 1).unwrap();
        let want = Matrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(s.max_abs_diff(&want).unwrap(), 0.0);
    }

    #[test]
    fn sigma_maps_ground_state_to_plus_xi_i() {
        // The wedge image of ξ0⋯ξ_{d−1} under σ_I is +ξ_I on the nose.
        for n_plus_1 in 1..=5usize {
            for d in 0..=n_plus_1 {
                for i_set in enumerate_subsets(n_plus_1, d) {
                    let s = sigma(&i_set, n_plus_1, d).unwrap();
                    assert!((s.det().unwrap() - ONE).norm() <= 1e-13);
                    let expansion = expand_odd_product(&s.transpose(), &IndexSubset::leading(d));
                    let got = expansion.get(&i_set.to_mask()).copied().unwrap_or(ZERO);
                    assert!(
                        (got - ONE).norm() <= 1e-13,
                        "I={} d={d}",
                        i_set.display()
                    );
                    // And nothing else in the image.
                    assert_eq!(expansion.len(), 1);
                }
            }
        }
    }

    #[test]
    fn phi_d_of_identity_is_one() {
        assert_eq!(phi_d(&Matrix::identity(4), 2).unwrap(), ONE);
        assert_eq!(phi_d(&Matrix::identity(4), 0).unwrap(), ONE);
    }

    #[test]
    fn phi_full_minor_is_determinant() {
        let odd = random_odd(3, &mut SplitMix64::new(4));
        let frame = build_g(&odd).unwrap();
        let full = phi_d(&frame.g, 4).unwrap();
        assert!((full - frame.g.det().unwrap()).norm() <= 1e-13);
    }

    #[test]
    fn phi_minor_and_wedge_routes_agree() {
        let odd = random_odd(4, &mut SplitMix64::new(5));
        let frame = build_g(&odd).unwrap();
        for d in 0..=5usize {
            let a = phi_d(&frame.g, d).unwrap();
            let b = phi_d_wedge(&frame.g, d).unwrap();
            assert!((a - b).norm() <= 1e-13, "d={d}");
        }
    }

    #[test]
    fn phi_checked_warns_on_non_orthogonal_input() {
        let skew = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let (value, warning) = phi_d_checked(&skew, 1, 1e-12).unwrap();
        assert_eq!(value, ONE);
        assert!(warning.is_some());
        let (_, ok) = phi_d_checked(&Matrix::identity(2), 1, 1e-12).unwrap();
        assert!(ok.is_none());
    }

    #[test]
    fn phi_minus_is_trailing_minor() {
        let odd = random_odd(3, &mut SplitMix64::new(11));
        let frame = build_g(&odd).unwrap();
        // d = 2 over n+1 = 4: the split case; the other component's value
        // is the complementary minor.
        let tail = IndexSubset::new(vec![2, 3]).unwrap();
        let want = frame.g.minor(&tail, &tail).unwrap();
        assert_eq!(phi_d_minus(&frame.g, 2).unwrap(), want);
    }

    #[test]
    fn minor_equals_zonal_composition() {
        for n in 1..=5usize {
            let odd = random_odd(n, &mut SplitMix64::new(n as u64));
            for d in 0..=n + 1 {
                let worst = minor_vs_zonal_residual(&odd, d).unwrap();
                assert!(worst.max <= 1e-12, "n={n} d={d} {}", worst.witness);
            }
        }
    }

    #[test]
    fn sigma_choice_does_not_matter() {
        for n in 1..=5usize {
            let odd = random_odd(n, &mut SplitMix64::new(20 + n as u64));
            for d in 0..=n + 1 {
                let worst = sigma_independence_residual(&odd, d).unwrap();
                assert!(worst.max <= 1e-12, "n={n} d={d} {}", worst.witness);
            }
        }
    }

    #[test]
    fn binary_occupation_is_fifty_fifty() {
        let dist = occupation_probs(&binary(), &IndexSubset::new(vec![0]).unwrap(), 1, 7).unwrap();
        assert_eq!(dist.entries.len(), 2);
        for (_, p) in &dist.entries {
            assert!((p - 0.5).abs() <= 1e-13);
        }
    }

    #[test]
    fn full_occupation_is_certain() {
        let odd = random_odd(2, &mut SplitMix64::new(9));
        let all = IndexSubset::leading(3);
        let dist = occupation_probs(&odd, &all, 3, 1).unwrap();
        assert_eq!(dist.entries.len(), 1);
        assert!((dist.entries[0].1 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn occupation_rows_sum_to_one() {
        for n in 1..=6usize {
            let odd = random_odd(n, &mut SplitMix64::new(30 + n as u64));
            for d in 0..=n + 1 {
                for source in enumerate_subsets(n + 1, d) {
                    let dist = occupation_probs(&odd, &source, d, 0).unwrap();
                    assert!(
                        (dist.total() - 1.0).abs() <= 1e-12,
                        "n={n} d={d} J={}",
                        source.display()
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_distribution_samples_constantly() {
        let dist = OccupationDistribution {
            source: IndexSubset::leading(1),
            entries: vec![(IndexSubset::leading(1), 1.0)],
            seed: 3,
        };
        let freq = sample_occupation(&dist, 1000);
        assert_eq!(freq[0].1, 1000);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let dist = occupation_probs(&binary(), &IndexSubset::new(vec![0]).unwrap(), 1, 42).unwrap();
        let a = sample_occupation(&dist, 500);
        let b = sample_occupation(&dist, 500);
        assert_eq!(a, b);
    }

    #[test]
    fn binary_sampling_concentrates() {
        // 3σ binomial bound around 1/2 at N = 1e5.
        let n_samples = 100_000usize;
        let dist = occupation_probs(&binary(), &IndexSubset::new(vec![0]).unwrap(), 1, 42).unwrap();
        let freq = sample_occupation(&dist, n_samples);
        let bound = 3.0 * (0.25 / n_samples as f64).sqrt();
        for (s, f) in freq {
            let rate = f as f64 / n_samples as f64;
            assert!((rate - 0.5).abs() <= bound, "I={} rate {rate}", s.display());
        }
    }

    #[test]
    fn krzonal_empty_case() {
        assert_eq!(krzonal_residual(&binary(), 0, 0).unwrap(), 0.0);
    }

    #[test]
    fn krzonal_binary_single_mode() {
        let odd = binary();
        for eps in [0b01u32, 0b10] {
            for eps_tilde in [0b01u32, 0b10] {
                let r = krzonal_residual(&odd, eps, eps_tilde).unwrap();
                assert!(r <= 1e-12, "eps={eps:b} eps_tilde={eps_tilde:b}: {r}");
            }
        }
    }

    #[test]
    fn krzonal_random_sweep() {
        for n in 1..=4usize {
            let odd = random_odd(n, &mut SplitMix64::new(50 + n as u64));
            let worst = krzonal_sweep(&odd).unwrap();
            assert!(worst.max <= 1e-10, "n={n} witness {}", worst.witness);
        }
    }
}
