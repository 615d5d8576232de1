//! SIR compartment bookkeeping, forward-Euler integration with exact
//! conservation, violation-curve lookup, and the stochastic contagion-event
//! rule coupling the micro-scale calibration to macro-scale groups.

use alloc::vec::Vec;

use rand::Rng;

/// Conservation tolerance for `S + I + R = N`.
pub const CONSERVATION_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ContagionError {
    #[error("population is empty")]
    EmptyPopulation,
    #[error("susceptible/infected/removed must be non-negative and sum to the total")]
    InvalidState,
    #[error("beta and gamma must be positive, dt positive")]
    InvalidParams,
    #[error("violation curve has no calibration points")]
    MissingCalibration,
    #[error("curve densities must be strictly increasing with ratios in [0,1]")]
    InvalidCurve,
    #[error("fractions must lie in [0,1]")]
    InvalidFraction,
}

/// Compartment state of one population group. Continuous internally;
/// `S + I + R = N` holds to within [`CONSERVATION_EPS`] at all times.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SIRState {
    susceptible: f64,
    infected: f64,
    removed: f64,
    total: u64,
}

impl SIRState {
    pub fn new(susceptible: f64, infected: f64, removed: f64, total: u64) -> Result<Self, ContagionError> {
        if total == 0 {
            return Err(ContagionError::EmptyPopulation);
        }
        if susceptible < 0.0 || infected < 0.0 || removed < 0.0 {
            return Err(ContagionError::InvalidState);
        }
        let sum = susceptible + infected + removed;
        if (sum - total as f64).abs() > CONSERVATION_EPS {
            return Err(ContagionError::InvalidState);
        }
        Ok(SIRState {
            susceptible,
            infected,
            removed,
            total,
        })
    }

    /// All-susceptible group of `total` agents.
    pub fn fresh(total: u64) -> Result<Self, ContagionError> {
        SIRState::new(total as f64, 0.0, 0.0, total)
    }

    /// Group seeded with `infected` initially infectious agents.
    pub fn seeded(total: u64, infected: u64) -> Result<Self, ContagionError> {
        let infected = infected.min(total);
        SIRState::new((total - infected) as f64, infected as f64, 0.0, total)
    }

    pub fn susceptible(&self) -> f64 {
        self.susceptible
    }

    pub fn infected(&self) -> f64 {
        self.infected
    }

    pub fn removed(&self) -> f64 {
        self.removed
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// SIR rate parameters; one applied event advances the state by `dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SIRParams {
    pub beta: f64,
    pub gamma: f64,
    pub dt: f64,
}

impl SIRParams {
    pub fn new(beta: f64, gamma: f64, dt: f64) -> Result<Self, ContagionError> {
        if beta <= 0.0 || gamma <= 0.0 || dt <= 0.0 || !(beta * gamma * dt).is_finite() {
            return Err(ContagionError::InvalidParams);
        }
        Ok(SIRParams { beta, gamma, dt })
    }

    /// Basic reproduction ratio `beta / gamma`.
    pub fn r0(&self) -> f64 {
        self.beta / self.gamma
    }
}

/// One forward-Euler step of the SIR dynamics.
///
/// Flows are capped so compartments never go negative even at large `dt`,
/// and the flow formulation transfers mass exactly: the sum is preserved
/// bit-for-bit up to rounding of two additions.
pub fn sir_step(state: &SIRState, params: &SIRParams) -> Result<SIRState, ContagionError> {
    let n = state.total as f64;
    if state.total == 0 {
        return Err(ContagionError::EmptyPopulation);
    }
    let flow_si = (params.beta * state.infected * state.susceptible / n * params.dt)
        .min(state.susceptible);
    let flow_ir = (params.gamma * state.infected * params.dt).min(state.infected + flow_si);
    Ok(SIRState {
        susceptible: state.susceptible - flow_si,
        infected: state.infected + flow_si - flow_ir,
        removed: state.removed + flow_ir,
        total: state.total,
    })
}

/// One calibrated point of the violation curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    /// Agents per square meter.
    pub density: f64,
    /// Mean social-distance-violation ratio in [0, 1].
    pub ratio: f64,
    /// Sample standard deviation across runs.
    pub stddev: f64,
    /// Number of runs aggregated into this point.
    pub samples: u32,
}

/// Calibrated density -> violation-ratio mapping, the contagion threshold
/// source. Densities are strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct ViolationCurve {
    points: Vec<CurvePoint>,
}

impl ViolationCurve {
    pub fn new(mut points: Vec<CurvePoint>) -> Result<Self, ContagionError> {
        if points.is_empty() {
            return Err(ContagionError::MissingCalibration);
        }
        points.sort_by(|a, b| a.density.partial_cmp(&b.density).unwrap());
        for w in points.windows(2) {
            if w[1].density - w[0].density <= 0.0 {
                return Err(ContagionError::InvalidCurve);
            }
        }
        if points
            .iter()
            .any(|p| !(0.0..=1.0).contains(&p.ratio) || !p.density.is_finite() || p.density < 0.0)
        {
            return Err(ContagionError::InvalidCurve);
        }
        Ok(ViolationCurve { points })
    }

    /// A curve pinned to a constant ratio (useful to force the event rule).
    pub fn constant(ratio: f64) -> Result<Self, ContagionError> {
        ViolationCurve::new(alloc::vec![CurvePoint {
            density: 0.0,
            ratio,
            stddev: 0.0,
            samples: 0,
        }])
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    /// Threshold `T` at a query density: linear interpolation between the
    /// bracketing points, clamped to the first/last ratio outside the range.
    pub fn lookup_threshold(&self, density: f64) -> f64 {
        let pts = &self.points;
        if density <= pts[0].density {
            return pts[0].ratio;
        }
        if density >= pts[pts.len() - 1].density {
            return pts[pts.len() - 1].ratio;
        }
        let hi = pts.partition_point(|p| p.density < density);
        let (a, b) = (&pts[hi - 1], &pts[hi]);
        let t = (density - a.density) / (b.density - a.density);
        a.ratio + t * (b.ratio - a.ratio)
    }
}

/// Outcome log of one contagion event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContagionEvent {
    /// Threshold consulted from the curve.
    pub threshold: f64,
    /// Uniform draw in [0, 1).
    pub draw: f64,
    /// Whether the SIR step was applied.
    pub applied: bool,
}

/// Stochastic contagion event: draw `r` uniform in [0, 1); contagion occurs
/// when `r <= T` and one [`sir_step`] is applied, otherwise the state is
/// returned unchanged.
///
/// `invert_rule` flips the comparison to `r > T` for sensitivity analysis.
pub fn contagion_event(
    group: &SIRState,
    density: f64,
    curve: &ViolationCurve,
    params: &SIRParams,
    invert_rule: bool,
    rng: &mut impl Rng,
) -> Result<(SIRState, ContagionEvent), ContagionError> {
    let threshold = curve.lookup_threshold(density);
    let draw: f64 = rng.gen_range(0.0..1.0);
    let fires = if invert_rule { draw > threshold } else { draw <= threshold };
    let state = if fires { sir_step(group, params)? } else { *group };
    Ok((
        state,
        ContagionEvent {
            threshold,
            draw,
            applied: fires,
        },
    ))
}

/// Integer view of a state via largest-remainder rounding; the integers sum
/// exactly to `N`. Ties on remainders resolve in S, I, R order.
pub fn report_integer_state(state: &SIRState) -> (u64, u64, u64) {
    let vals = [state.susceptible, state.infected, state.removed];
    let floors: [u64; 3] = [
        vals[0] as u64, // truncation == floor for non-negative values
        vals[1] as u64,
        vals[2] as u64,
    ];
    let assigned: u64 = floors.iter().sum();
    let mut leftover = state.total.saturating_sub(assigned);
    let mut remainders: [(f64, usize); 3] = [
        (vals[0] - floors[0] as f64, 0),
        (vals[1] - floors[1] as f64, 1),
        (vals[2] - floors[2] as f64, 2),
    ];
    // Largest remainder first; stable on ties by compartment order.
    remainders.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let mut out = floors;
    let mut k = 0;
    while leftover > 0 && k < 3 {
        out[remainders[k].1] += 1;
        leftover -= 1;
        k += 1;
    }
    (out[0], out[1], out[2])
}

/// Fixed split of the removed compartment into recovered and deceased.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemovedSplit {
    recovered_fraction: f64,
}

impl RemovedSplit {
    pub fn new(recovered_fraction: f64) -> Result<Self, ContagionError> {
        if !(0.0..=1.0).contains(&recovered_fraction) {
            return Err(ContagionError::InvalidFraction);
        }
        Ok(RemovedSplit { recovered_fraction })
    }

    pub fn recovered_fraction(&self) -> f64 {
        self.recovered_fraction
    }

    pub fn deceased_fraction(&self) -> f64 {
        1.0 - self.recovered_fraction
    }
}

/// Split removed agents into (recovered, deceased) with round-half-up on the
/// recovered share.
pub fn split_removed(removed: u64, split: &RemovedSplit) -> (u64, u64) {
    let recovered = crate::math::floor(removed as f64 * split.recovered_fraction + 0.5) as u64;
    let recovered = recovered.min(removed);
    (recovered, removed - recovered)
}
