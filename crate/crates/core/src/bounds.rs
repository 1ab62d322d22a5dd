//! Energy bounds as evaluable formulas, with slack-reporting checkers.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::RealMatrix;
use crate::number_theory::is_prime;
use crate::spectrum::{singular_values, SingularSpectrum};

/// Relative tolerance used to decide whether a bound or chain step holds.
pub const BOUND_TOL: f64 = 1e-8;
/// Radicands within this (relative) distance below zero are clamped.
const RADICAND_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    NotEvaluated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::NotEvaluated => "not_evaluated",
        }
    }
}

/// One bound evaluated against a measured energy.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    pub subject_energy: f64,
    /// `value − energy` for upper bounds, `energy − value` for lower bounds.
    pub slack: f64,
    pub applicable: bool,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn new(name: &str, kind: BoundKind, value: f64, energy: f64, applicable: bool) -> Self {
        let slack = match kind {
            BoundKind::Upper => value - energy,
            BoundKind::Lower => energy - value,
        };
        let verdict = if !applicable {
            Verdict::NotEvaluated
        } else if slack >= -BOUND_TOL * value.abs().max(1.0) {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        Self {
            name: name.to_string(),
            kind,
            value,
            subject_energy: energy,
            slack,
            applicable,
            verdict,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }
}

/// `(n/2)(1 + √n)`.
pub fn koolen_moulton_bound(n: usize) -> f64 {
    let n = n as f64;
    n / 2.0 * (1.0 + n.sqrt())
}

/// `(α/2)(m + √m)√n` for a nonnegative `m × n` matrix with `m ≤ n` and maximum entry `α`.
pub fn matrix_energy_upper(m: usize, n: usize, alpha: f64) -> Result<f64> {
    if m > n {
        return Err(Error::Precondition(format!(
            "bound needs m ≤ n, got {m} > {n}; transpose first"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Precondition(format!(
            "maximum entry must be positive, got {alpha}"
        )));
    }
    let (m, n) = (m as f64, n as f64);
    Ok(alpha / 2.0 * (m + m.sqrt()) * n.sqrt())
}

fn clamped_sqrt(radicand: f64, scale: f64, what: &str) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_CLAMP * scale.abs().max(f64::MIN_POSITIVE) {
        Ok(0.0)
    } else {
        Err(Error::Numeric(format!(
            "{what}: radicand {radicand:e} negative beyond roundoff"
        )))
    }
}

/// Value of the refined upper bound `‖A‖₁/√(mn) + √((m−1)(‖A‖₂² − ‖A‖₁²/mn))`
/// for a nonnegative `m × n` matrix, `m ≤ n`, and whether its hypothesis
/// `‖A‖₁ ≥ nα` holds.
pub fn refined_upper_value(a: &RealMatrix) -> Result<(f64, bool)> {
    a.check_finite()?;
    a.check_nonnegative()?;
    let (m, n) = (a.rows(), a.cols());
    if m > n {
        return Err(Error::Precondition(format!(
            "bound needs m ≤ n, got {m} > {n}; transpose first"
        )));
    }
    let norms = a.entrywise_norms()?;
    let mn = (m * n) as f64;
    let radicand = norms.frob_sq - norms.l1 * norms.l1 / mn;
    let root = clamped_sqrt((m as f64 - 1.0) * radicand, norms.frob_sq * m as f64, "refined bound")?;
    let value = norms.l1 / mn.sqrt() + root;
    let applicable = norms.l1 >= n as f64 * norms.max_abs;
    Ok((value, applicable))
}

/// Refined upper bound checked against the energy of `a`.
pub fn refined_upper(a: &RealMatrix) -> Result<BoundReport> {
    let (value, applicable) = refined_upper_value(a)?;
    let energy = singular_values(a)?.energy();
    Ok(BoundReport::new(
        "refined_upper",
        BoundKind::Upper,
        value,
        energy,
        applicable,
    ))
}

/// `σ₁ + (2e − σ₁²)/σ₂`.
pub fn energy_lower(sigma1: f64, sigma2: f64, e: f64) -> Result<f64> {
    if !(sigma2 > 0.0) {
        return Err(Error::Precondition(format!("σ₂ must be positive, got {sigma2}")));
    }
    if !(e > 0.0) {
        return Err(Error::Precondition(format!("edge count must be positive, got {e}")));
    }
    Ok(sigma1 + (2.0 * e - sigma1 * sigma1) / sigma2)
}

fn check_paley_prime(p: u64) -> Result<()> {
    if p <= 11 {
        return Err(Error::Precondition(format!("need p > 11, got {p}")));
    }
    if !is_prime(p) || p % 4 != 1 {
        return Err(Error::Precondition(format!(
            "need a prime p ≡ 1 (mod 4), got {p}"
        )));
    }
    Ok(())
}

/// `(p−1)/2 + (p(p−1)/2 − (p−1)²/4) / ((√p + 1)/2)`, a lower estimate for the
/// energy of the Paley graph of order `p`.
pub fn paley_energy_floor(p: u64) -> Result<f64> {
    check_paley_prime(p)?;
    let p = p as f64;
    let numer = p * (p - 1.0) / 2.0 - (p - 1.0).powi(2) / 4.0;
    Ok((p - 1.0) / 2.0 + numer / ((p.sqrt() + 1.0) / 2.0))
}

/// The weaker form `(p−1)/2 + (p−1)(2p+1) / (4(√p+1))`, still above `p^{3/2}/2`.
pub fn paley_energy_floor_simplified(p: u64) -> Result<f64> {
    check_paley_prime(p)?;
    let p = p as f64;
    Ok((p - 1.0) / 2.0 + (p - 1.0) * (2.0 * p + 1.0) / (4.0 * (p.sqrt() + 1.0)))
}

/// Koolen–Moulton bound for a graph, checked against its energy.
pub fn koolen_moulton_report(g: &Graph) -> Result<BoundReport> {
    let energy = singular_values(&g.adjacency_matrix()?)?.energy();
    Ok(BoundReport::new(
        "koolen_moulton",
        BoundKind::Upper,
        koolen_moulton_bound(g.order()),
        energy,
        true,
    ))
}

/// `(α/2)(m+√m)√n` checked against the energy of a nonnegative matrix
/// (transposed first when it has more rows than columns).
pub fn matrix_upper_report(a: &RealMatrix) -> Result<BoundReport> {
    a.check_finite()?;
    a.check_nonnegative()?;
    let (m, n) = (a.rows().min(a.cols()), a.rows().max(a.cols()));
    let alpha = a.max_entry();
    let energy = singular_values(a)?.energy();
    if alpha == 0.0 {
        return Ok(BoundReport::new("matrix_upper", BoundKind::Upper, 0.0, energy, false));
    }
    let value = matrix_energy_upper(m, n, alpha)?;
    Ok(BoundReport::new("matrix_upper", BoundKind::Upper, value, energy, true))
}

/// Lower bound `σ₁ + (2e − σ₁²)/σ₂` for a graph, with its own σ₁, σ₂.
/// Not applicable when `e = 0` or `σ₂ = 0`.
pub fn energy_lower_report(g: &Graph) -> Result<BoundReport> {
    let sv = singular_values(&g.adjacency_matrix()?)?;
    let e = g.edge_count() as f64;
    let (s1, s2) = (sv.sigma(1), sv.sigma(2));
    let energy = sv.energy();
    match energy_lower(s1, s2, e) {
        Ok(value) => Ok(BoundReport::new("energy_lower", BoundKind::Lower, value, energy, true)),
        Err(Error::Precondition(_)) => Ok(BoundReport::new(
            "energy_lower",
            BoundKind::Lower,
            0.0,
            energy,
            false,
        )),
        Err(other) => Err(other),
    }
}

/// One inequality `lhs ≤ rhs` of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainStep {
    pub label: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ChainStep {
    fn new(label: &'static str, lhs: f64, rhs: f64) -> Self {
        let holds = lhs <= rhs + BOUND_TOL * rhs.abs().max(lhs.abs()).max(1.0);
        Self {
            label,
            lhs,
            rhs,
            holds,
        }
    }
}

/// The proof chain behind the square-matrix energy bound, evaluated on a
/// matrix rescaled so that its maximum entry is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainDiagnostic {
    /// Maximum entry of the input; every value below is in units of it.
    pub alpha: f64,
    pub steps: Vec<ChainStep>,
}

impl ChainDiagnostic {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn step(&self, label: &str) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.label == label)
    }
}

pub const STEP_FROBENIUS: &str = "energy <= sqrt(n*F)";
pub const STEP_SIGMA1: &str = "energy <= s1 + sqrt((n-1)(F - s1^2))";
pub const STEP_L1_MEAN: &str = "s1 + sqrt((n-1)(F - s1^2)) <= L/n + sqrt((n-1)(F - L^2/n^2))";
pub const STEP_F_LE_L1: &str = "L/n + sqrt((n-1)(F - L^2/n^2)) <= L/n + sqrt((n-1)(L - L^2/n^2))";
pub const STEP_MAXIMUM: &str = "L/n + sqrt((n-1)(L - L^2/n^2)) <= (n/2)(sqrt(n)+1)";
pub const STEP_TWO_LEADING: &str = "energy <= s1 + s2 + sqrt((n-2)(L - s1^2 - s2^2))";

/// Evaluates each step of the chain for a nonzero nonnegative square matrix.
/// `F = ‖A‖₂²`, `L = ‖A‖₁`, `s1, s2` the two largest singular values, all
/// after rescaling by `1/α`.
pub fn theorem2_chain(a: &RealMatrix) -> Result<ChainDiagnostic> {
    a.check_finite()?;
    a.check_nonnegative()?;
    if !a.is_square() {
        return Err(Error::Precondition(format!(
            "chain needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let alpha = a.max_entry();
    if alpha <= 0.0 {
        return Err(Error::Precondition("chain needs a nonzero matrix".into()));
    }
    let scaled = a.scaled(1.0 / alpha);
    let sv = singular_values(&scaled)?;
    chain_from_parts(&scaled, &sv, alpha)
}

fn chain_from_parts(a: &RealMatrix, sv: &SingularSpectrum, alpha: f64) -> Result<ChainDiagnostic> {
    let n = a.rows() as f64;
    let norms = a.entrywise_norms()?;
    let (f, l) = (norms.frob_sq, norms.l1);
    let energy = sv.energy();
    let (s1, s2) = (sv.sigma(1), sv.sigma(2));
    let scale = f * n;

    let after_sigma1 = s1 + clamped_sqrt((n - 1.0) * (f - s1 * s1), scale, "σ₁ step")?;
    let after_mean = l / n + clamped_sqrt((n - 1.0) * (f - l * l / (n * n)), scale, "mean step")?;
    let after_l1 = l / n + clamped_sqrt((n - 1.0) * (l - l * l / (n * n)), scale, "L1 step")?;
    let cap = n / 2.0 * (n.sqrt() + 1.0);

    let mut steps = vec![
        ChainStep::new(STEP_FROBENIUS, energy, (n * f).sqrt()),
        ChainStep::new(STEP_SIGMA1, energy, after_sigma1),
        ChainStep::new(STEP_L1_MEAN, after_sigma1, after_mean),
        ChainStep::new(STEP_F_LE_L1, after_mean, after_l1),
        ChainStep::new(STEP_MAXIMUM, after_l1, cap),
    ];
    if a.rows() >= 2 {
        let two = s1
            + s2
            + clamped_sqrt((n - 2.0) * (l - s1 * s1 - s2 * s2), scale, "two-leading step")?;
        steps.push(ChainStep::new(STEP_TWO_LEADING, energy, two));
    }
    Ok(ChainDiagnostic { alpha, steps })
}
