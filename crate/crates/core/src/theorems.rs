//! Closed-form coherence and entanglement values at each circuit stage, the
//! variation ledgers built from them, and the harness that checks them
//! against numbers measured on simulated states.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::entanglement::{
    build_hamming_table, closed_form_eg_psi2, closed_form_eg_psi3,
    geometric_entanglement_symmetric, HammingTable,
};
use crate::error::{Error, Result};
use crate::measures::{
    geometric_coherence_pure, l1p_coherence_pure, tsallis_coherence_pure, AlphaParam,
};
use crate::numtheory::ShorInstance;
use crate::statevec::{ideal_psi3, PipelineStates, PureState};
use crate::tolerances::{self, Tolerances};

/// Circuit stage after which a state is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// After the Hadamard layer.
    Psi1,
    /// After modular exponentiation.
    Psi2,
    /// After the inverse Fourier transform.
    Psi3,
}

impl Stage {
    pub const ALL: [Stage; 3] = [Stage::Psi1, Stage::Psi2, Stage::Psi3];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Psi1 => "psi1",
            Stage::Psi2 => "psi2",
            Stage::Psi3 => "psi3",
        }
    }

    pub fn state(self, states: &PipelineStates) -> &PureState {
        match self {
            Stage::Psi1 => &states.psi1,
            Stage::Psi2 => &states.psi2,
            Stage::Psi3 => &states.psi3,
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [1, 2], got {p}")));
    }
    Ok(())
}

/// `(d^{1 - 1/alpha} - 1) / (alpha - 1)`, the Tsallis coherence of a uniform
/// superposition over `d` basis states (limit `ln d` at `alpha = 1`).
fn tsallis_uniform(d: f64, alpha: AlphaParam) -> f64 {
    if alpha.is_limit() {
        return d.ln();
    }
    let a = alpha.value();
    (d.powf(1.0 - 1.0 / a) - 1.0) / (a - 1.0)
}

/// Closed-form quantifiers of one stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForms {
    pub c1p: f64,
    pub calpha: f64,
    pub cg: f64,
    /// Present where the stage has a single-valued entanglement formula.
    pub eg: Option<f64>,
}

/// Uniform register A: `(Q-1)^{1/p}`, `(Q^{1-1/alpha} - 1)/(alpha - 1)`, `1 - 1/Q`, and `E_g = 0`.
pub fn thm1_closed_forms(q: u64, p: f64, alpha: AlphaParam) -> Result<ClosedForms> {
    check_p(p)?;
    if q < 2 {
        return Err(Error::Domain(format!("Q must be at least 2, got {q}")));
    }
    let qf = q as f64;
    Ok(ClosedForms {
        c1p: (qf - 1.0).powf(1.0 / p),
        calpha: tsallis_uniform(qf, alpha),
        cg: 1.0 - 1.0 / qf,
        eg: Some(0.0),
    })
}

/// Idealized post-transform state: `(r^2-1)^{1/p}`,
/// `(r^{2(1-1/alpha)} - 1)/(alpha - 1)` and `1 - 1/r^2`.
pub fn thm3_closed_forms(r: u64, p: f64, alpha: AlphaParam) -> Result<ClosedForms> {
    check_p(p)?;
    if r == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    let r2 = (r * r) as f64;
    Ok(ClosedForms {
        c1p: (r2 - 1.0).powf(1.0 / p),
        calpha: tsallis_uniform(r2, alpha),
        cg: 1.0 - 1.0 / r2,
        eg: None,
    })
}

/// The two readings of an entanglement change that involves the `rho_3` formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EgPair {
    pub literal: f64,
    pub modulus_squared: f64,
}

impl EgPair {
    pub fn canonical(&self) -> f64 {
        self.modulus_squared
    }
}

/// Changes induced by each operator: `U` on `rho_1` and `F^dagger` on `rho_2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorVariations {
    pub c1p_modexp: f64,
    pub c1p_inverse_qft: f64,
    pub calpha_modexp: f64,
    pub calpha_inverse_qft: f64,
    pub cg_modexp: f64,
    pub cg_inverse_qft: f64,
    /// Needs the Hamming table.
    pub eg_modexp: Option<f64>,
    /// Needs the table with `r | Q`.
    pub eg_inverse_qft: Option<EgPair>,
}

fn eg_psi3_pair(table: &HammingTable) -> Option<EgPair> {
    let form = closed_form_eg_psi3(table).ok()?;
    Some(EgPair {
        literal: form.literal.value,
        modulus_squared: form.modulus_squared.value,
    })
}

/// Per-operator variations. Rows whose inputs are missing are left absent.
pub fn thm4_variations(
    q: u64,
    r: u64,
    p: f64,
    alpha: AlphaParam,
    table: Option<&HammingTable>,
) -> Result<OperatorVariations> {
    let first = thm1_closed_forms(q, p, alpha)?;
    let last = thm3_closed_forms(r, p, alpha)?;
    let eg2 = table.map(|t| closed_form_eg_psi2(t).value);
    let eg3 = table.and_then(eg_psi3_pair);
    Ok(OperatorVariations {
        c1p_modexp: 0.0,
        c1p_inverse_qft: last.c1p - first.c1p,
        calpha_modexp: 0.0,
        calpha_inverse_qft: last.calpha - first.calpha,
        cg_modexp: 0.0,
        cg_inverse_qft: last.cg - first.cg,
        eg_modexp: eg2,
        eg_inverse_qft: eg2.zip(eg3).map(|(e2, e3)| EgPair {
            literal: e3.literal - e2,
            modulus_squared: e3.modulus_squared - e2,
        }),
    })
}

/// Outcome of the sign claims for a given `(Q, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignCheck {
    /// `Q >= r^2`, the regime where coherence must not grow.
    pub applicable: bool,
    /// All three coherence changes negative (non-positive when `Q = r^2`).
    pub coherence_depleted: bool,
    /// `Delta E_g(U, rho_1) >= 0`, when the table is available.
    pub modexp_entanglement_nonnegative: Option<bool>,
    /// Reported only: the sign of the `F^dagger` entanglement change depends on the instance.
    pub inverse_qft_entanglement_delta: Option<f64>,
}

impl SignCheck {
    /// True unless an applicable claim is violated.
    pub fn holds(&self) -> bool {
        !self.applicable
            || (self.coherence_depleted && self.modexp_entanglement_nonnegative.unwrap_or(true))
    }
}

/// Whole-algorithm changes `C(rho_3) - C(rho_1)` and `E(rho_3) - E(rho_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WholeVariations {
    pub c1p: f64,
    pub calpha: f64,
    pub cg: f64,
    pub eg: Option<EgPair>,
    /// Largest `|whole - (U step + F^dagger step)|` over the available rows.
    pub additivity_residual: f64,
    pub signs: SignCheck,
}

pub fn corollary1_variations(
    q: u64,
    r: u64,
    p: f64,
    alpha: AlphaParam,
    table: Option<&HammingTable>,
) -> Result<WholeVariations> {
    let first = thm1_closed_forms(q, p, alpha)?;
    let last = thm3_closed_forms(r, p, alpha)?;
    let c1p = (((r * r) as f64 - 1.0).powf(1.0 / p)) - ((q as f64 - 1.0).powf(1.0 / p));
    let calpha = if alpha.is_limit() {
        2.0 * (r as f64).ln() - (q as f64).ln()
    } else {
        let a = alpha.value();
        (((r * r) as f64).powf(1.0 - 1.0 / a) - (q as f64).powf(1.0 - 1.0 / a)) / (a - 1.0)
    };
    let cg = 1.0 / q as f64 - 1.0 / (r * r) as f64;
    // E_g(rho_1) = 0, so the whole change is the rho_3 value itself
    let eg = table.and_then(eg_psi3_pair);

    let ops = thm4_variations(q, r, p, alpha, table)?;
    let mut residual: f64 = [
        (c1p, ops.c1p_modexp + ops.c1p_inverse_qft),
        (calpha, ops.calpha_modexp + ops.calpha_inverse_qft),
        (cg, ops.cg_modexp + ops.cg_inverse_qft),
        (last.c1p - first.c1p, c1p),
    ]
    .iter()
    .map(|(whole, parts)| (whole - parts).abs())
    .fold(0.0, f64::max);
    if let (Some(whole), Some(u), Some(f)) = (eg, ops.eg_modexp, ops.eg_inverse_qft) {
        residual = residual
            .max((whole.literal - (u + f.literal)).abs())
            .max((whole.modulus_squared - (u + f.modulus_squared)).abs());
    }

    let applicable = q as u128 >= (r as u128) * (r as u128);
    let strict = q as u128 > (r as u128) * (r as u128);
    let depleted = if strict {
        c1p < 0.0 && calpha < 0.0 && cg < 0.0
    } else {
        c1p <= 1e-12 && calpha <= 1e-12 && cg <= 1e-12
    };
    Ok(WholeVariations {
        c1p,
        calpha,
        cg,
        eg,
        additivity_residual: residual,
        signs: SignCheck {
            applicable,
            coherence_depleted: depleted,
            modexp_entanglement_nonnegative: ops.eg_modexp.map(|e| e >= 0.0),
            inverse_qft_entanglement_delta: ops.eg_inverse_qft.map(|e| e.canonical()),
        },
    })
}

/// Per-operator and whole-algorithm changes at one `(p, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariationLedger {
    pub p: f64,
    pub alpha: f64,
    pub per_operator: OperatorVariations,
    pub whole: WholeVariations,
}

pub fn variation_ledger(
    q: u64,
    r: u64,
    p: f64,
    alpha: AlphaParam,
    table: Option<&HammingTable>,
) -> Result<VariationLedger> {
    Ok(VariationLedger {
        p,
        alpha: alpha.value(),
        per_operator: thm4_variations(q, r, p, alpha, table)?,
        whole: corollary1_variations(q, r, p, alpha, table)?,
    })
}

/// Parameter grids swept by the verification harness.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub ps: Vec<f64>,
    pub alphas: Vec<AlphaParam>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        ParamGrid {
            ps: vec![1.0, 1.25, 1.5, 1.75, 2.0],
            alphas: [0.3, 0.5, 0.9, 1.1, 1.5, 2.0]
                .into_iter()
                .map(|a| AlphaParam::new(a).expect("valid alpha"))
                .collect(),
        }
    }
}

/// One measured quantity with its closed-form counterpart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureRow {
    pub measure: String,
    pub numeric: f64,
    pub closed_form: Option<f64>,
    pub gap: Option<f64>,
    /// Gated rows decide the verdict; others are reported only.
    pub gated: bool,
    pub pass: Option<bool>,
}

impl MeasureRow {
    fn gated(measure: String, numeric: f64, closed_form: Option<f64>, tol: f64) -> Self {
        let gap = closed_form.map(|c| (numeric - c).abs());
        MeasureRow {
            measure,
            numeric,
            closed_form,
            gap,
            gated: closed_form.is_some(),
            pass: gap.map(|g| g <= tol),
        }
    }

    fn reported(measure: String, numeric: f64, closed_form: Option<f64>) -> Self {
        MeasureRow {
            measure,
            numeric,
            closed_form,
            gap: closed_form.map(|c| (numeric - c).abs()),
            gated: false,
            pass: None,
        }
    }
}

/// All quantifiers at one stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub stage: Stage,
    pub rows: Vec<MeasureRow>,
    pub warnings: Vec<String>,
}

impl MeasureReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn row(&self, measure: &str) -> Option<&MeasureRow> {
        self.rows.iter().find(|r| r.measure == measure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &MeasureRow> {
        self.rows.iter().filter(|r| r.pass == Some(false))
    }
}

pub fn c1p_key(p: f64) -> String {
    format!("C_1p[p={p}]")
}

pub fn calpha_key(alpha: AlphaParam) -> String {
    format!("C_alpha[alpha={}]", alpha.value())
}

/// Measures a given state as the named stage and compares with the closed forms.
///
/// Coherence rows are gated at `tol.coherence_gap`; entanglement rows carry
/// the symmetric-ansatz optimum as the numeric value and are reported only.
pub fn verify_stage_with_state(
    stage: Stage,
    instance: &ShorInstance,
    state: &PureState,
    grid: &ParamGrid,
    tol: &Tolerances,
) -> Result<MeasureReport> {
    let r = instance.order();
    let q = instance.q();
    let table = match r {
        Some(_) => Some(build_hamming_table(instance)?),
        None => None,
    };
    let mut warnings = Vec::new();
    let closed_at = |p: f64, alpha: AlphaParam| -> Result<Option<ClosedForms>> {
        match stage {
            Stage::Psi1 | Stage::Psi2 => thm1_closed_forms(q, p, alpha).map(Some),
            Stage::Psi3 => match (r, instance.quotient()) {
                (Some(r), Some(_)) => thm3_closed_forms(r, p, alpha).map(Some),
                _ => Ok(None),
            },
        }
    };
    if stage == Stage::Psi3 && instance.quotient().is_none() {
        warnings.push(format!(
            "r does not divide Q = {q}; closed forms for psi3 are not applicable"
        ));
    }

    let amps = state.amplitudes();
    let first_alpha = grid
        .alphas
        .first()
        .copied()
        .unwrap_or(AlphaParam::new(2.0)?);
    let mut rows = Vec::new();
    for &p in &grid.ps {
        let closed = closed_at(p, first_alpha)?.map(|c| c.c1p);
        rows.push(MeasureRow::gated(
            c1p_key(p),
            l1p_coherence_pure(amps, p)?,
            closed,
            tol.coherence_gap,
        ));
    }
    for &alpha in &grid.alphas {
        let closed = closed_at(1.0, alpha)?.map(|c| c.calpha);
        rows.push(MeasureRow::gated(
            calpha_key(alpha),
            tsallis_coherence_pure(amps, alpha),
            closed,
            tol.coherence_gap,
        ));
    }
    let cg_closed = closed_at(1.0, first_alpha)?.map(|c| c.cg);
    rows.push(MeasureRow::gated(
        "C_g".into(),
        geometric_coherence_pure(amps),
        cg_closed,
        tol.coherence_gap,
    ));

    let eg_numeric = geometric_entanglement_symmetric(state).entanglement;
    match stage {
        Stage::Psi1 => rows.push(MeasureRow::reported("E_g".into(), eg_numeric, Some(0.0))),
        Stage::Psi2 => {
            let closed = table.as_ref().map(closed_form_eg_psi2);
            if let Some(c) = closed.filter(|c| !c.in_range) {
                warnings.push(format!(
                    "E_g closed form for psi2 is outside [0, 1]: {}",
                    c.value
                ));
            }
            rows.push(MeasureRow::reported(
                "E_g".into(),
                eg_numeric,
                closed.map(|c| c.value),
            ));
        }
        Stage::Psi3 => {
            let closed = table.as_ref().and_then(|t| closed_form_eg_psi3(t).ok());
            if let Some(c) = closed.filter(|c| !c.literal.in_range || !c.modulus_squared.in_range) {
                warnings.push(format!(
                    "E_g closed form for psi3 is outside [0, 1]: literal {}, modulus {}",
                    c.literal.value, c.modulus_squared.value
                ));
            }
            rows.push(MeasureRow::reported(
                "E_g".into(),
                eg_numeric,
                closed.map(|c| c.canonical().value),
            ));
            rows.push(MeasureRow::reported(
                "E_g[literal]".into(),
                eg_numeric,
                closed.map(|c| c.literal.value),
            ));
            rows.push(MeasureRow::reported(
                "E_g[modulus_squared]".into(),
                eg_numeric,
                closed.map(|c| c.modulus_squared.value),
            ));
        }
    }
    Ok(MeasureReport {
        stage,
        rows,
        warnings,
    })
}

/// Simulates the circuit and verifies one stage.
pub fn verify_stage(
    stage: Stage,
    instance: &ShorInstance,
    grid: &ParamGrid,
    tol: &Tolerances,
) -> Result<MeasureReport> {
    let instance = with_order(instance)?;
    let states = PipelineStates::run(&instance)?;
    verify_stage_with_state(stage, &instance, stage.state(&states), grid, tol)
}

/// Verifies all three stages of already simulated states, concurrently, in stage order.
pub fn verify_all_stages(
    instance: &ShorInstance,
    states: &PipelineStates,
    grid: &ParamGrid,
    tol: &Tolerances,
) -> Result<Vec<MeasureReport>> {
    let instance = with_order(instance)?;
    Stage::ALL
        .par_iter()
        .map(|&stage| verify_stage_with_state(stage, &instance, stage.state(states), grid, tol))
        .collect()
}

fn with_order(instance: &ShorInstance) -> Result<ShorInstance> {
    match instance.order() {
        Some(_) => Ok(instance.clone()),
        None => instance.clone().with_oracle_order(),
    }
}

/// Geometric coherence of the idealized post-transform state, when `r | Q`.
pub fn ideal_psi3_cg(instance: &ShorInstance) -> Result<f64> {
    Ok(geometric_coherence_pure(ideal_psi3(instance)?.amplitudes()))
}

/// Reports as `{stage: {measure: {numeric, closed_form, gap, pass}}}`.
pub fn reports_to_json(reports: &[MeasureReport]) -> Value {
    let mut out = Map::new();
    for report in reports {
        let mut measures = Map::new();
        for row in &report.rows {
            measures.insert(
                row.measure.clone(),
                json!({
                    "numeric": row.numeric,
                    "closed_form": row.closed_form,
                    "gap": row.gap,
                    "pass": row.pass,
                }),
            );
        }
        out.insert(report.stage.name().to_string(), Value::Object(measures));
    }
    Value::Object(out)
}

/// Location of the largest `C_alpha(rho_3)` on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaPeak {
    pub alpha: f64,
    pub value: f64,
    /// Set when the curve is identically zero (`r = 1`); `alpha` is then the upper window edge.
    pub degenerate: bool,
}

/// Grid search with step `1e-4` of the closed-form `C_alpha(rho_3)` over the
/// half-open window `(lo, hi]`, which must lie inside `(1, 2]`.
pub fn find_alpha_peak(r: u64, lo: f64, hi: f64) -> Result<AlphaPeak> {
    if !(lo >= 1.0 && hi <= 2.0 && lo < hi) {
        return Err(Error::Domain(format!(
            "window ({lo}, {hi}] must lie inside (1, 2]"
        )));
    }
    if r == 0 {
        return Err(Error::Domain("order must be positive".into()));
    }
    let step = tolerances::ALPHA_PEAK_STEP;
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut best = AlphaPeak {
        alpha: hi,
        value: f64::NEG_INFINITY,
        degenerate: false,
    };
    for i in 1..=count {
        let alpha = AlphaParam::new((lo + step * i as f64).min(hi))?;
        let value = thm3_closed_forms(r, 1.0, alpha)?.calpha;
        if value > best.value {
            best = AlphaPeak {
                alpha: alpha.value(),
                value,
                degenerate: false,
            };
        }
    }
    if r == 1 {
        best = AlphaPeak {
            alpha: hi,
            value: 0.0,
            degenerate: true,
        };
    }
    Ok(best)
}
