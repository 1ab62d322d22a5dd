//! Grading nonnegative square matrices against the five-condition
//! description of near-maximal energy, and the complement-energy check.

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::report::Document;
use crate::spectrum::{singular_values, SingularSpectrum};

/// Default slack parameter `δ` when the caller does not supply one.
pub const DEFAULT_DELTA: f64 = 0.05;

/// A count-type condition: `count ≥ threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountCondition {
    pub count: usize,
    pub threshold: f64,
    pub pass: bool,
}

/// A deviation-type condition: `measure < threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureCondition {
    /// `None` when the index range it ranges over is empty.
    pub measure: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

impl MeasureCondition {
    fn strict(measure: Option<f64>, threshold: f64) -> Self {
        Self {
            measure,
            threshold,
            pass: measure.is_some_and(|m| m < threshold),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterizationReport {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: f64,
    /// `α > 2ε`, an additional hypothesis of the characterization.
    pub alpha_exceeds_2eps: bool,
    pub energy: f64,
    /// `α(1/2 − δ)n^{3/2}`.
    pub hypothesis_threshold: f64,
    pub hypothesis_met: bool,
    /// Entries `> (1−ε)α`, at least `(1/2−ε)n²` of them.
    pub cond_i: CountCondition,
    /// Entries `< εα`, at least `(1/2−ε)n²` of them.
    pub cond_ii: CountCondition,
    /// `|σ₁ − αn/2| < εαn`.
    pub cond_iii: MeasureCondition,
    /// `σ₂ < εαn`.
    pub cond_iv: MeasureCondition,
    /// `max |σᵢ − α√n/2| < εα√n` over `⌈εn⌉ ≤ i ≤ ⌊(1−ε)n⌋`.
    pub cond_v: MeasureCondition,
    /// The 1-based index range used by condition (v).
    pub cond_v_range: (usize, usize),
}

impl CharacterizationReport {
    pub fn all_pass(&self) -> bool {
        self.cond_i.pass && self.cond_ii.pass && self.cond_iii.pass && self.cond_iv.pass && self.cond_v.pass
    }

    pub fn to_document(&self) -> Document {
        let mut d = Document::new("characterization");
        d.push("n", self.n)
            .push("epsilon", self.epsilon)
            .push("delta", self.delta)
            .push("alpha", self.alpha)
            .push("alpha_exceeds_2eps", self.alpha_exceeds_2eps)
            .push("energy", self.energy)
            .push("hypothesis_threshold", self.hypothesis_threshold)
            .push("hypothesis_met", self.hypothesis_met);
        for (name, c) in [("cond_i", &self.cond_i), ("cond_ii", &self.cond_ii)] {
            d.push(format!("{name}.count"), c.count)
                .push(format!("{name}.threshold"), c.threshold)
                .push(format!("{name}.pass"), c.pass);
        }
        for (name, c) in [
            ("cond_iii", &self.cond_iii),
            ("cond_iv", &self.cond_iv),
            ("cond_v", &self.cond_v),
        ] {
            d.push(format!("{name}.measure"), c.measure)
                .push(format!("{name}.threshold"), c.threshold)
                .push(format!("{name}.pass"), c.pass);
        }
        d.push("cond_v.first_index", self.cond_v_range.0)
            .push("cond_v.last_index", self.cond_v_range.1)
            .push("all_pass", self.all_pass());
        d
    }
}

fn check_square_nonnegative(a: &RealMatrix) -> Result<()> {
    a.check_finite()?;
    if !a.is_square() {
        return Err(Error::Precondition(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    a.check_nonnegative()
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 0.5 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{name} must lie in (0, 1/2), got {x}")))
    }
}

pub fn grade_near_maximal(a: &RealMatrix, epsilon: f64, delta: f64) -> Result<CharacterizationReport> {
    check_square_nonnegative(a)?;
    check_unit_interval("epsilon", epsilon)?;
    check_unit_interval("delta", delta)?;
    let alpha = a.max_entry();
    if alpha <= 0.0 {
        return Err(Error::Domain("zero matrix has no maximum entry α > 0".into()));
    }
    let sv = singular_values(a)?;
    Ok(grade_with_spectrum(a, &sv, alpha, epsilon, delta))
}

fn grade_with_spectrum(
    a: &RealMatrix,
    sv: &SingularSpectrum,
    alpha: f64,
    epsilon: f64,
    delta: f64,
) -> CharacterizationReport {
    let n = a.rows();
    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let energy = sv.energy();
    let hypothesis_threshold = alpha * (0.5 - delta) * nf.powf(1.5);

    let count_threshold = (0.5 - epsilon) * nf * nf;
    let large = a.as_slice().iter().filter(|&&x| x > (1.0 - epsilon) * alpha).count();
    let small = a.as_slice().iter().filter(|&&x| x < epsilon * alpha).count();

    let first = (epsilon * nf).ceil().max(1.0) as usize;
    let last = ((1.0 - epsilon) * nf).floor() as usize;
    let middle = (first <= last).then(|| {
        (first..=last)
            .map(|i| (sv.sigma(i) - alpha * sqrt_n / 2.0).abs())
            .fold(0.0, f64::max)
    });

    CharacterizationReport {
        n,
        epsilon,
        delta,
        alpha,
        alpha_exceeds_2eps: alpha > 2.0 * epsilon,
        energy,
        hypothesis_threshold,
        hypothesis_met: energy >= hypothesis_threshold,
        cond_i: CountCondition {
            count: large,
            threshold: count_threshold,
            pass: large as f64 >= count_threshold,
        },
        cond_ii: CountCondition {
            count: small,
            threshold: count_threshold,
            pass: small as f64 >= count_threshold,
        },
        cond_iii: MeasureCondition::strict(
            Some((sv.sigma(1) - alpha * nf / 2.0).abs()),
            epsilon * alpha * nf,
        ),
        cond_iv: MeasureCondition::strict(Some(sv.sigma(2)), epsilon * alpha * nf),
        cond_v: MeasureCondition::strict(middle, epsilon * alpha * sqrt_n),
        cond_v_range: (first, last),
    }
}

fn check_unit_bounded(a: &RealMatrix) -> Result<()> {
    check_square_nonnegative(a)?;
    if let Some(k) = a.as_slice().iter().position(|&x| x > 1.0) {
        return Err(Error::Domain(format!(
            "entry ({}, {}) exceeds 1, so J − A would be negative",
            k / a.cols(),
            k % a.cols()
        )));
    }
    Ok(())
}

/// Energy of `J − A`, `J` the all-ones matrix.
pub fn complement_energy(a: &RealMatrix) -> Result<f64> {
    check_unit_bounded(a)?;
    Ok(singular_values(&a.map(|x| 1.0 - x))?.energy())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementCheck {
    pub energy: f64,
    pub complement_energy: f64,
    /// `E(A) ≥ (1/2 − δ)n^{3/2}`.
    pub premise: bool,
    /// `E(J − A) ≥ (1/2 − ε)n^{3/2}`.
    pub conclusion: bool,
}

impl ComplementCheck {
    /// Whether `premise ⇒ conclusion` held on this instance.
    pub fn implication_holds(&self) -> bool {
        !self.premise || self.conclusion
    }

    pub fn to_document(&self) -> Document {
        let mut d = Document::new("complement_check");
        d.push("energy", self.energy)
            .push("complement_energy", self.complement_energy)
            .push("premise", self.premise)
            .push("conclusion", self.conclusion)
            .push("implication_holds", self.implication_holds());
        d
    }
}

pub fn theorem3_check(a: &RealMatrix, epsilon: f64, delta: f64) -> Result<ComplementCheck> {
    check_unit_bounded(a)?;
    check_unit_interval("epsilon", epsilon)?;
    check_unit_interval("delta", delta)?;
    let n32 = (a.rows() as f64).powf(1.5);
    let energy = singular_values(a)?.energy();
    let complement_energy = complement_energy(a)?;
    Ok(ComplementCheck {
        energy,
        complement_energy,
        premise: energy >= (0.5 - delta) * n32,
        conclusion: complement_energy >= (0.5 - epsilon) * n32,
    })
}
