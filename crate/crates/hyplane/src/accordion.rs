//! Pure-jump growth of a chain of ideal triangles from an arch toward a
//! boundary target.
//!
//! The engine keeps the current arch `(left, right)` on the half-plane
//! boundary. Each jump carries a normalized size `x` with `|x| > 1`: the arch
//! width is multiplied by `(|x| + 1)/2`, the right foot moves when `x > 1`,
//! the left foot when `x < -1`, and the triangle spanning the old and new
//! arches is emitted together with the side edge it leaves behind.

use thiserror::Error;

use crate::geom::{BoundaryPoint, GeomError, IdealPolygon};
use crate::measures::{self, MeasureError};
use crate::rng::RandomStream;

#[derive(Debug, Error)]
pub enum AccordionError {
    #[error("jump size must satisfy |x| > 1, got {0}")]
    InvalidJump(f64),
    #[error("arch requires left < right, got ({0}, {1})")]
    InvalidArch(f64, f64),
    #[error("target {target} lies inside the arch ({left}, {right})")]
    TargetInsideArch { target: f64, left: f64, right: f64 },
    #[error("jump budget of {budget} exhausted before the stop condition")]
    BudgetExceeded { budget: u64, partial: AccordionRun },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One normalized jump: size, order index and the exponential waiting time
/// that preceded it.
#[derive(Clone, Copy, Debug)]
pub struct JumpEvent {
    pub x: f64,
    pub index: u64,
    pub wait: f64,
}

/// Current arch of a growing accordion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccordionState {
    pub left: f64,
    pub right: f64,
}

impl AccordionState {
    pub fn new(left: f64, right: f64) -> Result<Self, AccordionError> {
        if !(left < right) || !left.is_finite() || !right.is_finite() {
            return Err(AccordionError::InvalidArch(left, right));
        }
        Ok(AccordionState { left, right })
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }
}

/// Raw outcome of one jump: successor arch, triangle corners in increasing
/// order, and the side edge interval left behind.
#[derive(Clone, Copy, Debug)]
pub struct RawStep {
    pub state: AccordionState,
    pub corners: [f64; 3],
    pub side: (f64, f64),
}

/// Arch update and triangle extraction for a single jump, without polygon
/// validation (callers on hot paths discard sub-resolution slivers before
/// building polygons).
pub fn apply_jump_raw(state: AccordionState, x: f64) -> Result<RawStep, AccordionError> {
    if !(x.abs() > 1.0) || !x.is_finite() {
        return Err(AccordionError::InvalidJump(x));
    }
    let width = state.width();
    let growth = width * (x.abs() - 1.0) / 2.0;
    if x > 1.0 {
        let right = state.right + growth;
        Ok(RawStep {
            state: AccordionState {
                left: state.left,
                right,
            },
            corners: [state.left, state.right, right],
            side: (state.right, right),
        })
    } else {
        let left = state.left - growth;
        Ok(RawStep {
            state: AccordionState {
                left,
                right: state.right,
            },
            corners: [left, state.left, state.right],
            side: (left, state.left),
        })
    }
}

/// One jump applied to an arch, returning the successor state and the emitted
/// ideal triangle (apexes anticlockwise).
pub fn apply_jump(
    state: AccordionState,
    x: f64,
) -> Result<(AccordionState, IdealPolygon), AccordionError> {
    let step = apply_jump_raw(state, x)?;
    let tri = IdealPolygon::new(
        step.corners
            .iter()
            .map(|&c| BoundaryPoint::halfplane(c))
            .collect(),
    )?;
    Ok((step.state, tri))
}

/// Recover the normalized jump from two consecutive arches.
pub fn recover_jump(prev: &AccordionState, next: &AccordionState) -> f64 {
    let ratio = next.width() / prev.width();
    let sign = if next.right != prev.right { 1.0 } else { -1.0 };
    sign * (2.0 * ratio - 1.0)
}

/// Which intensity drives the jump sizes. The inverse-square variant is a
/// deliberately wrong law used by the verification suite to confirm the
/// invariance tests have power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JumpLaw {
    Zeta,
    InverseSquareTail,
}

#[derive(Clone, Copy, Debug)]
pub struct AccordionConfig {
    /// Jumps with `|x| <= 1 + jump_cutoff` are discarded entirely.
    pub jump_cutoff: f64,
    pub max_jumps: u64,
    pub law: JumpLaw,
}

impl AccordionConfig {
    pub fn new(jump_cutoff: f64) -> Self {
        AccordionConfig {
            jump_cutoff,
            max_jumps: 10_000_000,
            law: JumpLaw::Zeta,
        }
    }

    /// Total intensity mass above the cutoff; the rate of the attached
    /// exponential waiting times.
    pub fn rate(&self) -> f64 {
        let c = 1.0 + self.jump_cutoff;
        match self.law {
            JumpLaw::Zeta => measures::zeta_tail_mass(c).expect("cutoff > 0"),
            JumpLaw::InverseSquareTail => 2.0 / c,
        }
    }
}

/// Source of normalized jumps; the production source draws from the jump
/// intensity, tests may substitute deterministic stubs.
pub trait JumpSource {
    fn next_jump(&mut self) -> JumpEvent;
}

pub struct ZetaJumps<'r> {
    rng: &'r mut RandomStream,
    cfg: AccordionConfig,
    rate: f64,
    index: u64,
}

impl<'r> ZetaJumps<'r> {
    pub fn new(rng: &'r mut RandomStream, cfg: AccordionConfig) -> Self {
        let rate = cfg.rate();
        ZetaJumps {
            rng,
            cfg,
            rate,
            index: 0,
        }
    }
}

impl JumpSource for ZetaJumps<'_> {
    fn next_jump(&mut self) -> JumpEvent {
        let wait = self.rng.exponential(self.rate);
        let cutoff = 1.0 + self.cfg.jump_cutoff;
        let x = match self.cfg.law {
            JumpLaw::Zeta => {
                let sign = if self.rng.coin() { 1.0 } else { -1.0 };
                sign * measures::zeta_magnitude(self.rng.uniform(), cutoff)
            }
            JumpLaw::InverseSquareTail => {
                let sign = if self.rng.coin() { 1.0 } else { -1.0 };
                sign * cutoff / self.rng.uniform_open()
            }
        };
        let event = JumpEvent {
            x,
            index: self.index,
            wait,
        };
        self.index += 1;
        event
    }
}

/// Deterministic jump source for unit tests.
pub struct StubJumps {
    values: Vec<f64>,
    at: usize,
}

impl StubJumps {
    pub fn new(values: Vec<f64>) -> Self {
        StubJumps { values, at: 0 }
    }
}

impl JumpSource for StubJumps {
    fn next_jump(&mut self) -> JumpEvent {
        let x = self.values[self.at % self.values.len()];
        let event = JumpEvent {
            x,
            index: self.at as u64,
            wait: 1.0,
        };
        self.at += 1;
        event
    }
}

/// Pending complementary component recorded while an accordion grows: the
/// region between a triangle's side edge and the boundary.
#[derive(Clone, Copy, Debug)]
pub struct SideGap {
    pub lo: f64,
    pub hi: f64,
    pub jump_index: u64,
}

#[derive(Clone, Debug, Default)]
pub struct AccordionRun {
    pub triangles: Vec<IdealPolygon>,
    pub side_gaps: Vec<SideGap>,
    pub jumps: Vec<JumpEvent>,
    pub final_arch: Option<AccordionState>,
}

/// Grow an accordion from `arch`, emitting jumps until `stop` holds on the
/// successor state. Triangles are disjoint and each separates the initial
/// arch's gap from the far boundary.
pub fn build_accordion(
    arch: AccordionState,
    source: &mut impl JumpSource,
    max_jumps: u64,
    mut stop: impl FnMut(&AccordionState) -> bool,
) -> Result<AccordionRun, AccordionError> {
    let mut run = AccordionRun::default();
    let mut state = arch;
    if stop(&state) {
        run.final_arch = Some(state);
        return Ok(run);
    }
    for _ in 0..max_jumps {
        let jump = source.next_jump();
        let step = apply_jump_raw(state, jump.x)?;
        run.triangles.push(IdealPolygon::new(
            step.corners
                .iter()
                .map(|&c| BoundaryPoint::halfplane(c))
                .collect(),
        )?);
        run.side_gaps.push(SideGap {
            lo: step.side.0,
            hi: step.side.1,
            jump_index: jump.index,
        });
        run.jumps.push(jump);
        state = step.state;
        if stop(&state) {
            run.final_arch = Some(state);
            return Ok(run);
        }
    }
    Err(AccordionError::BudgetExceeded {
        budget: max_jumps,
        partial: run,
    })
}

/// Convenience wrapper drawing jumps from the intensity measure.
pub fn build_accordion_with(
    arch: AccordionState,
    rng: &mut RandomStream,
    cfg: AccordionConfig,
    stop: impl FnMut(&AccordionState) -> bool,
) -> Result<AccordionRun, AccordionError> {
    let max = cfg.max_jumps;
    let mut source = ZetaJumps::new(rng, cfg);
    build_accordion(arch, &mut source, max, stop)
}

#[derive(Clone, Debug)]
pub struct Disconnection {
    /// Triangles emitted before the disconnecting jump.
    pub prefix: Vec<IdealPolygon>,
    /// The triangle created at the first state with `left < target < right`.
    pub disconnecting: IdealPolygon,
    pub jumps: Vec<JumpEvent>,
    pub final_arch: AccordionState,
}

/// Grow from `arch` until the arch first spans `target`; the triangle created
/// at that jump is included as the disconnecting triangle.
pub fn grow_until_disconnect(
    arch: AccordionState,
    target: f64,
    source: &mut impl JumpSource,
    max_jumps: u64,
) -> Result<Disconnection, AccordionError> {
    if target >= arch.left && target <= arch.right {
        return Err(AccordionError::TargetInsideArch {
            target,
            left: arch.left,
            right: arch.right,
        });
    }
    let run = build_accordion(arch, source, max_jumps, |s| {
        s.left < target && target < s.right
    })?;
    let mut triangles = run.triangles;
    let disconnecting = triangles.pop().expect("stop requires at least one jump");
    Ok(Disconnection {
        prefix: triangles,
        disconnecting,
        jumps: run.jumps,
        final_arch: run.final_arch.expect("run completed"),
    })
}

pub fn grow_until_disconnect_with(
    arch: AccordionState,
    target: f64,
    rng: &mut RandomStream,
    cfg: AccordionConfig,
) -> Result<Disconnection, AccordionError> {
    let max = cfg.max_jumps;
    let mut source = ZetaJumps::new(rng, cfg);
    grow_until_disconnect(arch, target, &mut source, max)
}
