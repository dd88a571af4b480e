//! Admissible parameter tuples K = (p, p̃, U) and Λ = (q, q̃, V).
//!
//! The even tuple must satisfy p₀ = p̃₀ ≠ 0, an all-ones first row and
//! column of U, and the matrix equation P U P̃ Uᵗ = p₀ I (with the odd
//! analogue Q V Q̃ Vᵗ = q₀ I). From a valid pair this module derives the
//! normalizers θ, θ̃, κ, κ̃ and the change-of-basis matrices R = θ̃ P̃ Uᵗ,
//! S = κ̃ Q̃ Vᵗ with det R = det S = 1.
//!
//! Scalars are complex throughout: already for the standard binary
//! parameters det R = 1 forces θ̃² = −2, so the normalizers leave the reals.

use crate::error::{KrawError, Result};
use crate::numkern::{orthonormal_complete, principal_root, re, Matrix, Scalar, SplitMix64, ONE};
use crate::tol::Tolerance;

/// Even-sector parameters (p, p̃, U) of size m+1.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenParams {
    pub p: Vec<Scalar>,
    pub p_tilde: Vec<Scalar>,
    pub u: Matrix,
}

/// Odd-sector parameters (q, q̃, V) of size n+1.
#[derive(Debug, Clone, PartialEq)]
pub struct OddParams {
    pub q: Vec<Scalar>,
    pub q_tilde: Vec<Scalar>,
    pub v: Matrix,
}

impl EvenParams {
    pub fn m(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p0(&self) -> Scalar {
        self.p[0]
    }

    fn check_shape(&self) -> Result<()> {
        check_sector_shape(&self.p, &self.p_tilde, &self.u, "even")
    }
}

impl OddParams {
    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q0(&self) -> Scalar {
        self.q[0]
    }

    fn check_shape(&self) -> Result<()> {
        check_sector_shape(&self.q, &self.q_tilde, &self.v, "odd")
    }
}

fn check_sector_shape(w: &[Scalar], wt: &[Scalar], mat: &Matrix, label: &str) -> Result<()> {
    if w.is_empty() || w.len() != wt.len() {
        return Err(KrawError::Dimension(format!(
            "{label} tuples must be non-empty and equal length, got {} and {}",
            w.len(),
            wt.len()
        )));
    }
    if mat.rows() != w.len() || mat.cols() != w.len() {
        return Err(KrawError::Dimension(format!(
            "{label} matrix must be {0}x{0}, got {1}x{2}",
            w.len(),
            mat.rows(),
            mat.cols()
        )));
    }
    Ok(())
}

/// Derived normalizers and change-of-basis matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalizers {
    pub theta_tilde: Scalar,
    pub theta: Scalar,
    pub kappa_tilde: Scalar,
    pub kappa: Scalar,
    pub r: Matrix,
    pub s: Matrix,
}

/// A full parameter set with derived normalizers.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    pub even: EvenParams,
    pub odd: OddParams,
    pub norms: Normalizers,
}

impl ParamSet {
    /// Assemble a set, deriving the normalizers. Shape errors and a
    /// singular P̃ Uᵗ (impossible for admissible input) are rejected;
    /// residual quality is reported by [`validate`], not here.
    pub fn new(even: EvenParams, odd: OddParams) -> Result<Self> {
        even.check_shape()?;
        odd.check_shape()?;
        let norms = normalizers(&even, &odd)?;
        Ok(Self { even, odd, norms })
    }

    pub fn m(&self) -> usize {
        self.even.m()
    }

    pub fn n(&self) -> usize {
        self.odd.n()
    }
}

/// One named residual in a validation report.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

/// Residual report for every admissibility invariant.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

fn diag_of(values: &[Scalar]) -> Matrix {
    Matrix::diag(values)
}

fn sector_checks(
    w: &[Scalar],
    wt: &[Scalar],
    mat: &Matrix,
    label: &str,
    tol: Tolerance,
    out: &mut Vec<Check>,
) {
    fn push(out: &mut Vec<Check>, tol: Tolerance, name: String, residual: f64) {
        out.push(Check {
            name,
            residual,
            pass: residual <= tol.abs || residual <= tol.rel,
        });
    }
    push(out, tol, format!("{label}.w0_eq_wt0"), (w[0] - wt[0]).norm());
    // Nonzero-ness is pass/fail rather than a residual.
    out.push(Check {
        name: format!("{label}.w0_nonzero"),
        residual: 0.0,
        pass: w[0].norm() > tol.abs,
    });
    let mut border = 0.0f64;
    for j in 0..mat.cols() {
        border = border.max((mat.get(0, j) - ONE).norm());
    }
    for i in 0..mat.rows() {
        border = border.max((mat.get(i, 0) - ONE).norm());
    }
    push(out, tol, format!("{label}.unit_border"), border);
    let d = diag_of(w);
    let dt = diag_of(wt);
    let prod = d
        .mul(mat)
        .and_then(|x| x.mul(&dt))
        .and_then(|x| x.mul(&mat.transpose()))
        .expect("square shapes checked");
    let target = Matrix::identity(mat.rows()).scale(w[0]);
    push(
        out,
        tol,
        format!("{label}.admissibility"),
        prod.max_abs_diff(&target).expect("same shape"),
    );
    let sum_w: Scalar = w.iter().sum();
    let sum_wt: Scalar = wt.iter().sum();
    push(out, tol, format!("{label}.weight_sum"), (sum_w - ONE).norm());
    push(out, tol, format!("{label}.weight_tilde_sum"), (sum_wt - ONE).norm());
}

/// Residual report over the admissibility invariants of a raw pair. Works
/// on inadmissible input too (no normalizers are derived), so failing
/// tuples still get a report. Shape violations are errors, distinct from
/// residual failures.
pub fn validate_pair(even: &EvenParams, odd: &OddParams, tol: Tolerance) -> Result<ValidationReport> {
    even.check_shape()?;
    odd.check_shape()?;
    let mut checks = Vec::new();
    sector_checks(&even.p, &even.p_tilde, &even.u, "even", tol, &mut checks);
    sector_checks(&odd.q, &odd.q_tilde, &odd.v, "odd", tol, &mut checks);

    // Concatenated identity (p₀⁻¹P | q₀⁻¹Q) Y (P̃|Q̃) Yᵗ = I for Y = (U|V).
    let mp1 = even.m() + 1;
    let np1 = odd.n() + 1;
    let k = mp1 + np1;
    let y = Matrix::from_fn(k, k, |i, j| match (i < mp1, j < mp1) {
        (true, true) => even.u.get(i, j),
        (false, false) => odd.v.get(i - mp1, j - mp1),
        _ => re(0.0),
    });
    let left = Matrix::from_fn(k, k, |i, j| {
        if i != j {
            re(0.0)
        } else if i < mp1 {
            even.p[i] / even.p0()
        } else {
            odd.q[i - mp1] / odd.q0()
        }
    });
    let mid = Matrix::from_fn(k, k, |i, j| {
        if i != j {
            re(0.0)
        } else if i < mp1 {
            even.p_tilde[i]
        } else {
            odd.q_tilde[i - mp1]
        }
    });
    let prod = left
        .mul(&y)
        .and_then(|x| x.mul(&mid))
        .and_then(|x| x.mul(&y.transpose()))
        .expect("square shapes");
    let res = prod
        .max_abs_diff(&Matrix::identity(k))
        .expect("same shape");
    checks.push(Check {
        name: "concatenated_identity".into(),
        residual: res,
        pass: res <= tol.abs.max(1e-11),
    });
    Ok(ValidationReport { checks })
}

/// Full report for an assembled set: pair invariants plus the normalizer
/// identities det R = det S = 1 and θθ̃p₀ = κκ̃q₀ = 1.
pub fn validate(ps: &ParamSet, tol: Tolerance) -> Result<ValidationReport> {
    let mut checks = validate_pair(&ps.even, &ps.odd, tol)?.checks;
    let det_r = ps.norms.r.det()?;
    let det_s = ps.norms.s.det()?;
    let tt = ps.norms.theta * ps.norms.theta_tilde * ps.even.p0();
    let kk = ps.norms.kappa * ps.norms.kappa_tilde * ps.odd.q0();
    for (name, residual) in [
        ("norm.det_r", (det_r - ONE).norm()),
        ("norm.det_s", (det_s - ONE).norm()),
        ("norm.theta_product", (tt - ONE).norm()),
        ("norm.kappa_product", (kk - ONE).norm()),
    ] {
        checks.push(Check {
            name: name.into(),
            residual,
            pass: residual <= tol.abs,
        });
    }
    Ok(ValidationReport { checks })
}

/// Classical binary specialization for the even sector:
/// p = p̃ = (t, 1−t), U = [[1, 1], [1, −t/(1−t)]].
pub fn binary_even(t: Scalar) -> Result<EvenParams> {
    let one_minus = ONE - t;
    if t.norm() < 1e-12 || one_minus.norm() < 1e-12 {
        return Err(KrawError::Degenerate(
            "binary parameters need t outside {0, 1}".into(),
        ));
    }
    let u = Matrix::from_rows(vec![vec![ONE, ONE], vec![ONE, -t / one_minus]])?;
    Ok(EvenParams {
        p: vec![t, one_minus],
        p_tilde: vec![t, one_minus],
        u,
    })
}

/// Odd-sector analogue of [`binary_even`].
pub fn binary_odd(t: Scalar) -> Result<OddParams> {
    let even = binary_even(t)?;
    Ok(OddParams {
        q: even.p,
        q_tilde: even.p_tilde,
        v: even.u,
    })
}

/// The binary parameter set at t for both sectors.
pub fn binary_param_set(t: f64) -> Result<ParamSet> {
    ParamSet::new(binary_even(re(t))?, binary_odd(re(t))?)
}

fn random_sector(size: usize, rng: &mut SplitMix64) -> (Vec<Scalar>, Matrix) {
    // Positive weights bounded well away from zero, normalized to sum 1.
    // The lower bound keeps inverse-weight norms at desk scale so absolute
    // residual thresholds stay meaningful.
    let raw: Vec<f64> = (0..size).map(|_| rng.next_range(0.5, 1.0)).collect();
    let total: f64 = raw.iter().sum();
    let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let sqrt_w: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    // The Householder completion of √w is symmetric, so its first row and
    // first column both equal √w; U = √w₀ W^{-1/2} H W^{-1/2} then has an
    // all-ones border and satisfies the admissibility equation exactly in
    // exact arithmetic.
    let (h, _) = orthonormal_complete(&sqrt_w).expect("positive weights");
    let u = Matrix::from_fn(size, size, |i, j| {
        re(sqrt_w[0] * h.get(i, j).re / (sqrt_w[i] * sqrt_w[j]))
    });
    (w.iter().map(|&x| re(x)).collect(), u)
}

/// Seeded random admissible even parameters with positive real p and
/// p̃ = p. Bit-identical for a fixed seed.
pub fn random_even(m: usize, rng: &mut SplitMix64) -> EvenParams {
    let (p, u) = random_sector(m + 1, rng);
    EvenParams {
        p: p.clone(),
        p_tilde: p,
        u,
    }
}

/// Odd analogue of [`random_even`]; positive real q, so the result is also
/// usable by the spherical layer.
pub fn random_odd(n: usize, rng: &mut SplitMix64) -> OddParams {
    let (q, v) = random_sector(n + 1, rng);
    OddParams {
        q: q.clone(),
        q_tilde: q,
        v,
    }
}

/// Full random admissible set: even then odd drawn from one seeded stream.
pub fn random_param_set(m: usize, n: usize, seed: u64) -> ParamSet {
    let mut rng = SplitMix64::new(seed);
    let even = random_even(m, &mut rng);
    let odd = random_odd(n, &mut rng);
    ParamSet::new(even, odd).expect("generated shapes are consistent")
}

fn two_weight_sector(size: usize, rng: &mut SplitMix64) -> (Vec<Scalar>, Vec<Scalar>, Matrix) {
    if size == 1 {
        return (vec![ONE], vec![ONE], Matrix::identity(1));
    }
    // Two distinct positive weight tuples sharing their 0-th entry. The
    // orthogonal core W needs first column √w and first row √w̃; a
    // Householder completion of √w composed with a tail reflection
    // exchanging the two tail directions provides exactly that.
    let draw = |rng: &mut SplitMix64| -> Vec<f64> {
        let raw: Vec<f64> = (0..size).map(|_| rng.next_range(0.5, 1.0)).collect();
        let total: f64 = raw.iter().sum();
        raw.iter().map(|x| x / total).collect()
    };
    let w = draw(rng);
    let mut wt = draw(rng);
    let tail_target: f64 = 1.0 - w[0];
    let tail_sum: f64 = wt[1..].iter().sum();
    wt[0] = w[0];
    for x in &mut wt[1..] {
        *x *= tail_target / tail_sum;
    }
    let sqrt_w: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let sqrt_wt: Vec<f64> = wt.iter().map(|x| x.sqrt()).collect();
    let (a, _) = orthonormal_complete(&sqrt_w).expect("positive weights");
    // Tail reflection G with Gᵗ·tail(√w) = tail(√w̃).
    let u: Vec<f64> = sqrt_w[1..].to_vec();
    let v: Vec<f64> = sqrt_wt[1..].to_vec();
    let diff: Vec<f64> = u.iter().zip(&v).map(|(x, y)| x - y).collect();
    let diff_norm2: f64 = diff.iter().map(|x| x * x).sum();
    let k = size - 1;
    let g = if diff_norm2 < 1e-28 {
        Matrix::identity(k)
    } else {
        Matrix::from_fn(k, k, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            re(delta - 2.0 * diff[i] * diff[j] / diff_norm2)
        })
    };
    let core = Matrix::from_fn(size, size, |i, j| match (i == 0, j == 0) {
        (true, true) => ONE,
        (true, false) | (false, true) => re(0.0),
        (false, false) => g.get(i - 1, j - 1),
    });
    let w_mat = a.mul(&core).expect("square shapes");
    let mixer = Matrix::from_fn(size, size, |i, j| {
        re(sqrt_w[0] * w_mat.get(i, j).re / (sqrt_w[i] * sqrt_wt[j]))
    });
    (
        w.iter().map(|&x| re(x)).collect(),
        wt.iter().map(|&x| re(x)).collect(),
        mixer,
    )
}

/// Seeded admissible set with p̃ ≠ p, q̃ ≠ q and genuinely non-symmetric
/// mixing matrices (still real and positive, so every layer applies).
/// The symmetric family from [`random_param_set`] cannot distinguish
/// row/column conventions; this one can, and the identity suites run over
/// it for exactly that reason.
pub fn two_weight_param_set(m: usize, n: usize, seed: u64) -> ParamSet {
    let mut rng = SplitMix64::new(seed);
    let (p, p_tilde, u) = two_weight_sector(m + 1, &mut rng);
    let (q, q_tilde, v) = two_weight_sector(n + 1, &mut rng);
    ParamSet::new(EvenParams { p, p_tilde, u }, OddParams { q, q_tilde, v })
        .expect("generated shapes are consistent")
}

/// Normalizers: θ̃ is the principal (m+1)-th root of det(P̃ Uᵗ)⁻¹ so that
/// det R = 1, and θ = (p₀ θ̃)⁻¹; likewise κ̃, κ for the odd sector. The
/// principal branch is a fixed, documented choice; every identity in this
/// crate holds for any branch.
pub fn normalizers(even: &EvenParams, odd: &OddParams) -> Result<Normalizers> {
    let pt_ut = diag_of(&even.p_tilde).mul(&even.u.transpose())?;
    let qt_vt = diag_of(&odd.q_tilde).mul(&odd.v.transpose())?;
    let det_e = pt_ut.det()?;
    let det_o = qt_vt.det()?;
    if det_e.norm() < 1e-300 {
        return Err(KrawError::Singular("det(P_tilde U^t) = 0".into()));
    }
    if det_o.norm() < 1e-300 {
        return Err(KrawError::Singular("det(Q_tilde V^t) = 0".into()));
    }
    let theta_tilde = principal_root(det_e.inv(), (even.m() + 1) as u32);
    let kappa_tilde = principal_root(det_o.inv(), (odd.n() + 1) as u32);
    let r = pt_ut.scale(theta_tilde);
    let s = qt_vt.scale(kappa_tilde);
    Ok(Normalizers {
        theta_tilde,
        theta: (even.p0() * theta_tilde).inv(),
        kappa_tilde,
        kappa: (odd.q0() * kappa_tilde).inv(),
        r,
        s,
    })
}

/// The duality involution (p, p̃, U, q, q̃, V) ↦ (p̃, p, Uᵗ, q̃, q, Vᵗ).
/// Applying it twice restores the original set exactly.
pub fn dualize(ps: &ParamSet) -> Result<ParamSet> {
    ParamSet::new(
        EvenParams {
            p: ps.even.p_tilde.clone(),
            p_tilde: ps.even.p.clone(),
            u: ps.even.u.transpose(),
        },
        OddParams {
            q: ps.odd.q_tilde.clone(),
            q_tilde: ps.odd.q.clone(),
            v: ps.odd.v.transpose(),
        },
    )
}

// --- parameter file codec -------------------------------------------------
//
// Top-level keys "even" {"p", "p_tilde", "U"} and "odd" {"q", "q_tilde",
// "V"}. A scalar is a plain number (real) or a two-element array [re, im];
// matrices are arrays of row arrays. Shape violations are rejected before
// any residual check.

mod codec {
    use super::*;
    use serde_json::{json, Map, Value};

    fn scalar_to_value(z: Scalar) -> Value {
        if z.im == 0.0 {
            json!(z.re)
        } else {
            json!([z.re, z.im])
        }
    }

    fn scalar_from_value(v: &Value, at: &str) -> Result<Scalar> {
        let bad = || KrawError::Parse(format!("expected number or [re, im] at {at}"));
        let z = match v {
            Value::Number(x) => re(x.as_f64().ok_or_else(bad)?),
            Value::Array(items) if items.len() == 2 => {
                let r = items[0].as_f64().ok_or_else(bad)?;
                let i = items[1].as_f64().ok_or_else(bad)?;
                Scalar::new(r, i)
            }
            _ => return Err(bad()),
        };
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(KrawError::Parse(format!("non-finite scalar at {at}")));
        }
        Ok(z)
    }

    fn vec_from_value(v: &Value, at: &str) -> Result<Vec<Scalar>> {
        let items = v
            .as_array()
            .ok_or_else(|| KrawError::Parse(format!("expected array at {at}")))?;
        items
            .iter()
            .enumerate()
            .map(|(i, x)| scalar_from_value(x, &format!("{at}[{i}]")))
            .collect()
    }

    fn matrix_from_value(v: &Value, at: &str) -> Result<Matrix> {
        let rows = v
            .as_array()
            .ok_or_else(|| KrawError::Parse(format!("expected array of rows at {at}")))?;
        let data: Result<Vec<Vec<Scalar>>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| vec_from_value(row, &format!("{at}[{i}]")))
            .collect();
        Matrix::from_rows(data?)
    }

    fn sector_to_value(w: &[Scalar], wt: &[Scalar], mat: &Matrix, keys: [&str; 3]) -> Value {
        let mut obj = Map::new();
        obj.insert(keys[0].into(), Value::Array(w.iter().map(|&z| scalar_to_value(z)).collect()));
        obj.insert(keys[1].into(), Value::Array(wt.iter().map(|&z| scalar_to_value(z)).collect()));
        let rows: Vec<Value> = (0..mat.rows())
            .map(|i| Value::Array((0..mat.cols()).map(|j| scalar_to_value(mat.get(i, j))).collect()))
            .collect();
        obj.insert(keys[2].into(), Value::Array(rows));
        Value::Object(obj)
    }

    pub fn to_value(ps: &ParamSet) -> Value {
        json!({
            "even": sector_to_value(&ps.even.p, &ps.even.p_tilde, &ps.even.u, ["p", "p_tilde", "U"]),
            "odd": sector_to_value(&ps.odd.q, &ps.odd.q_tilde, &ps.odd.v, ["q", "q_tilde", "V"]),
        })
    }

    pub fn pair_from_value(v: &Value) -> Result<(EvenParams, OddParams)> {
        let even = v
            .get("even")
            .ok_or_else(|| KrawError::Parse("missing key \"even\"".into()))?;
        let odd = v
            .get("odd")
            .ok_or_else(|| KrawError::Parse("missing key \"odd\"".into()))?;
        let get = |obj: &Value, key: &str, at: &str| -> Result<Value> {
            obj.get(key)
                .cloned()
                .ok_or_else(|| KrawError::Parse(format!("missing key \"{key}\" in {at}")))
        };
        let even = EvenParams {
            p: vec_from_value(&get(even, "p", "even")?, "even.p")?,
            p_tilde: vec_from_value(&get(even, "p_tilde", "even")?, "even.p_tilde")?,
            u: matrix_from_value(&get(even, "U", "even")?, "even.U")?,
        };
        let odd = OddParams {
            q: vec_from_value(&get(odd, "q", "odd")?, "odd.q")?,
            q_tilde: vec_from_value(&get(odd, "q_tilde", "odd")?, "odd.q_tilde")?,
            v: matrix_from_value(&get(odd, "V", "odd")?, "odd.V")?,
        };
        even.check_shape()?;
        odd.check_shape()?;
        Ok((even, odd))
    }

    pub fn from_value(v: &Value) -> Result<ParamSet> {
        let (even, odd) = pair_from_value(v)?;
        ParamSet::new(even, odd)
    }
}

/// Serialize a parameter set to the structured text format.
pub fn to_json(ps: &ParamSet) -> serde_json::Value {
    codec::to_value(ps)
}

/// Parse a parameter set, rejecting shape violations before residuals.
pub fn from_json(v: &serde_json::Value) -> Result<ParamSet> {
    codec::from_value(v)
}

/// Parse a raw pair without deriving normalizers; lets inadmissible tuples
/// through so they can be validated and reported.
pub fn pair_from_json(v: &serde_json::Value) -> Result<(EvenParams, OddParams)> {
    codec::pair_from_value(v)
}

/// Read a parameter file.
pub fn read_file(path: &std::path::Path) -> Result<ParamSet> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| KrawError::Parse(e.to_string()))?;
    from_json(&value)
}

/// Read a parameter file as a raw pair (shape-checked only).
pub fn read_pair_file(path: &std::path::Path) -> Result<(EvenParams, OddParams)> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| KrawError::Parse(e.to_string()))?;
    pair_from_json(&value)
}

/// Write a parameter file.
pub fn write_file(ps: &ParamSet, path: &std::path::Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&to_json(ps)).expect("json encoding");
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkern::powi as npowi;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn binary_half_matches_hand_solution() {
        // Solving the 2x2 admissibility equations symbolically forces
        // u11 = -p0/p1 and p̃ = p; at t = 1/2 that is [[1,1],[1,-1]].
        let even = binary_even(re(0.5)).unwrap();
        assert_eq!(even.u.get(1, 1), re(-1.0));
        let ps = binary_param_set(0.5).unwrap();
        let report = validate(&ps, tol()).unwrap();
        assert!(report.pass(), "{:?}", report.checks);
    }

    #[test]
    fn binary_third_validates() {
        let even = binary_even(re(1.0 / 3.0)).unwrap();
        assert!((even.u.get(1, 1) - re(-0.5)).norm() < 1e-15);
        let odd = binary_odd(re(1.0 / 3.0)).unwrap();
        let ps = ParamSet::new(even, odd).unwrap();
        assert!(validate(&ps, tol()).unwrap().pass());
        let sum: Scalar = ps.even.p.iter().sum();
        assert!((sum - ONE).norm() < 1e-15);
    }

    #[test]
    fn binary_rejects_degenerate_t() {
        assert!(matches!(binary_even(re(0.0)), Err(KrawError::Degenerate(_))));
        assert!(matches!(binary_even(re(1.0)), Err(KrawError::Degenerate(_))));
    }

    #[test]
    fn direct_two_by_two_validation() {
        // Direct multiplication oracle: U P̃ Uᵗ = I so P·I = p0 I.
        let even = EvenParams {
            p: vec![re(0.5), re(0.5)],
            p_tilde: vec![re(0.5), re(0.5)],
            u: Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap(),
        };
        let odd = binary_odd(re(0.5)).unwrap();
        let ps = ParamSet::new(even, odd).unwrap();
        assert!(validate(&ps, tol()).unwrap().pass());
    }

    #[test]
    fn all_ones_matrix_fails_with_half_residual() {
        // Direct multiplication: P U P̃ Uᵗ = [[1/2,1/2],[1/2,1/2]], so the
        // off-diagonal residual against p0 I is exactly 1/2. The singular U
        // also means no normalizers exist, so assembly must fail.
        let even = EvenParams {
            p: vec![re(0.5), re(0.5)],
            p_tilde: vec![re(0.5), re(0.5)],
            u: Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap(),
        };
        let odd = binary_odd(re(0.5)).unwrap();
        let report = validate_pair(&even, &odd, tol()).unwrap();
        assert!(!report.pass());
        let adm = report
            .checks
            .iter()
            .find(|c| c.name == "even.admissibility")
            .unwrap();
        assert!((adm.residual - 0.5).abs() < 1e-15);
        assert!(matches!(
            ParamSet::new(even, odd),
            Err(KrawError::Singular(_))
        ));
    }

    #[test]
    fn trivial_size_one_params_pass() {
        let even = EvenParams {
            p: vec![ONE],
            p_tilde: vec![ONE],
            u: Matrix::identity(1),
        };
        let odd = OddParams {
            q: vec![ONE],
            q_tilde: vec![ONE],
            v: Matrix::identity(1),
        };
        let ps = ParamSet::new(even, odd).unwrap();
        assert!(validate(&ps, tol()).unwrap().pass());
        assert_eq!(ps.norms.theta_tilde, ONE);
        assert_eq!(ps.norms.theta, ONE);
    }

    #[test]
    fn shape_mismatch_is_an_error_not_a_residual() {
        let even = EvenParams {
            p: vec![ONE, ONE],
            p_tilde: vec![ONE],
            u: Matrix::identity(2),
        };
        let odd = binary_odd(re(0.5)).unwrap();
        assert!(matches!(
            ParamSet::new(even, odd),
            Err(KrawError::Dimension(_))
        ));
    }

    #[test]
    fn random_params_validate_to_1e10() {
        for (m, n, seed) in [(0, 0, 1u64), (3, 2, 42), (2, 3, 7), (3, 3, 99)] {
            let ps = random_param_set(m, n, seed);
            let report = validate(&ps, tol()).unwrap();
            assert!(report.max_residual() <= 1e-10, "(m={m}, n={n}, seed={seed})");
            assert!(report.pass());
        }
    }

    #[test]
    fn random_params_are_seed_deterministic() {
        let a = random_param_set(3, 2, 42);
        let b = random_param_set(3, 2, 42);
        assert_eq!(a, b);
        let c = random_param_set(3, 2, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn trivial_random_m0() {
        let ps = random_param_set(0, 0, 5);
        assert!((ps.even.p[0] - ONE).norm() < 1e-15);
        assert!((ps.even.u.get(0, 0) - ONE).norm() < 1e-15);
    }

    #[test]
    fn binary_normalizer_squares_to_minus_two() {
        // det(P̃ Uᵗ) = -1/2 at t = 1/2, so θ̃ is a square root of -2.
        let ps = binary_param_set(0.5).unwrap();
        let tt = ps.norms.theta_tilde;
        assert!((npowi(tt, 2) - re(-2.0)).norm() <= 1e-12);
        assert!((ps.norms.r.det().unwrap() - ONE).norm() <= 1e-12);
        assert!((ps.norms.s.det().unwrap() - ONE).norm() <= 1e-12);
    }

    #[test]
    fn normalizer_products_are_inverse_weights() {
        for seed in [1u64, 2, 3] {
            let ps = random_param_set(2, 2, seed);
            let tt = ps.norms.theta * ps.norms.theta_tilde * ps.even.p0();
            let kk = ps.norms.kappa * ps.norms.kappa_tilde * ps.odd.q0();
            assert!((tt - ONE).norm() <= 1e-12);
            assert!((kk - ONE).norm() <= 1e-12);
        }
    }

    #[test]
    fn dualize_is_involution_and_valid() {
        let ps = random_param_set(2, 2, 13);
        let dual = dualize(&ps).unwrap();
        assert!(validate(&dual, tol()).unwrap().pass());
        let back = dualize(&dual).unwrap();
        assert_eq!(back.even, ps.even);
        assert_eq!(back.odd, ps.odd);
    }

    #[test]
    fn binary_params_are_a_duality_fixed_point() {
        let ps = binary_param_set(0.5).unwrap();
        let dual = dualize(&ps).unwrap();
        assert_eq!(dual.even, ps.even);
        assert_eq!(dual.odd, ps.odd);
    }

    #[test]
    fn codec_round_trip_bit_exact() {
        let ps = random_param_set(2, 3, 17);
        let value = to_json(&ps);
        let back = from_json(&value).unwrap();
        assert_eq!(back, ps);
    }

    #[test]
    fn codec_accepts_complex_pairs() {
        let text = r#"{
            "even": {"p": [1.0], "p_tilde": [1.0], "U": [[1.0]]},
            "odd": {"q": [[1.0, 0.0]], "q_tilde": [1.0], "V": [[[1.0, 0.0]]]}
        }"#;
        let value: serde_json::Value = serde_json::from_str(text).unwrap();
        let ps = from_json(&value).unwrap();
        assert_eq!(ps.odd.q[0], ONE);
    }

    #[test]
    fn codec_rejects_ragged_matrix() {
        let text = r#"{
            "even": {"p": [0.5, 0.5], "p_tilde": [0.5, 0.5], "U": [[1, 1], [1]]},
            "odd": {"q": [1.0], "q_tilde": [1.0], "V": [[1.0]]}
        }"#;
        let value: serde_json::Value = serde_json::from_str(text).unwrap();
        assert!(from_json(&value).is_err());
    }

    #[test]
    fn codec_rejects_shape_mismatch_before_residuals() {
        // U is 1x1 while p has length 2: a dimension error, not a failed
        // residual report.
        let text = r#"{
            "even": {"p": [0.5, 0.5], "p_tilde": [0.5, 0.5], "U": [[1.0]]},
            "odd": {"q": [1.0], "q_tilde": [1.0], "V": [[1.0]]}
        }"#;
        let value: serde_json::Value = serde_json::from_str(text).unwrap();
        assert!(matches!(from_json(&value), Err(KrawError::Dimension(_))));
    }

    #[test]
    fn concatenated_identity_holds() {
        let ps = random_param_set(3, 3, 4);
        let report = validate(&ps, tol()).unwrap();
        let c = report
            .checks
            .iter()
            .find(|c| c.name == "concatenated_identity")
            .unwrap();
        assert!(c.residual <= 1e-11);
    }

    #[test]
    fn two_weight_sets_are_admissible_and_asymmetric() {
        // A bordered 2x2 mixing matrix has one free entry and is always
        // symmetric, so genuine asymmetry needs sectors of size >= 3.
        for (m, n, seed) in [(2usize, 2usize, 9u64), (3, 2, 11), (2, 3, 13)] {
            let ps = two_weight_param_set(m, n, seed);
            let report = validate(&ps, tol()).unwrap();
            assert!(report.max_residual() <= 1e-10, "m={m} n={n} seed={seed}");
            // The point of the family: weights differ and V is not its own
            // transpose, so row/column conventions are distinguished.
            assert!(ps.odd.q != ps.odd.q_tilde);
            assert!(ps.even.p != ps.even.p_tilde);
            let v = &ps.odd.v;
            let skew = v.sub(&v.transpose()).unwrap().max_abs();
            assert!(skew > 1e-3, "V unexpectedly symmetric (skew {skew})");
            let u = &ps.even.u;
            let skew_u = u.sub(&u.transpose()).unwrap().max_abs();
            assert!(skew_u > 1e-3, "U unexpectedly symmetric (skew {skew_u})");
        }
    }

    proptest::proptest! {
        #[test]
        fn generated_sets_validate_and_dualize(seed in 0u64..10_000, m in 0usize..4, n in 0usize..4) {
            let ps = random_param_set(m, n, seed);
            let report = validate(&ps, tol()).unwrap();
            proptest::prop_assert!(report.max_residual() <= 1e-10);
            let twice = dualize(&dualize(&ps).unwrap()).unwrap();
            proptest::prop_assert_eq!(twice.even, ps.even);
            proptest::prop_assert_eq!(twice.odd, ps.odd);
        }

        #[test]
        fn two_weight_sets_validate(seed in 0u64..10_000, m in 0usize..4, n in 0usize..4) {
            let ps = two_weight_param_set(m, n, seed);
            let report = validate(&ps, tol()).unwrap();
            proptest::prop_assert!(report.max_residual() <= 1e-10);
            let dual = dualize(&ps).unwrap();
            proptest::prop_assert!(validate(&dual, tol()).unwrap().pass());
        }
    }
}
