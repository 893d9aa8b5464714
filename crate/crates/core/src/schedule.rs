//! Annealing schedules `A(s)`, `B(s)` and the per-step quadratic fits used by
//! the propagator.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

#[allow(unused_imports)] // float math on no_std
use num_traits::Float;

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Location of the derivative discontinuity in [`BuiltinSchedule::DwQuadratic`].
pub const DW_QUADRATIC_KINK: f64 = 0.69;

/// Sign placed in front of `A(s)` when the driver term is assembled.
///
/// `Positive` pairs with the `|-...->` initial state, `Negative` (the D-Wave
/// convention) with `|+...+>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DriverSign {
    #[default]
    Positive,
    Negative,
}

impl DriverSign {
    pub fn value(self) -> f64 {
        match self {
            DriverSign::Positive => 1.0,
            DriverSign::Negative => -1.0,
        }
    }

    pub fn initial_state(self) -> InitialState {
        match self {
            DriverSign::Positive => InitialState::AllMinus,
            DriverSign::Negative => InitialState::AllPlus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    AllMinus,
    AllPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinSchedule {
    Linear,
    Quadratic,
    Circular,
    DwQuadratic,
}

impl BuiltinSchedule {
    pub const ALL: [BuiltinSchedule; 4] = [
        BuiltinSchedule::Linear,
        BuiltinSchedule::Quadratic,
        BuiltinSchedule::Circular,
        BuiltinSchedule::DwQuadratic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinSchedule::Linear => "linear",
            BuiltinSchedule::Quadratic => "quadratic",
            BuiltinSchedule::Circular => "circular",
            BuiltinSchedule::DwQuadratic => "dw_quadratic",
        }
    }

    /// Case-insensitive lookup; accepts an optional `as_` prefix.
    pub fn from_name(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let key = lower.strip_prefix("as_").unwrap_or(&lower);
        Self::ALL
            .into_iter()
            .find(|b| b.name() == key)
            .ok_or_else(|| Error::UnknownSchedule(name.to_string()))
    }

    pub fn a(self, s: f64) -> f64 {
        match self {
            BuiltinSchedule::Linear => 1.0 - s,
            BuiltinSchedule::Quadratic => (1.0 - s) * (1.0 - s),
            BuiltinSchedule::Circular => (FRAC_PI_2 * s).cos(),
            BuiltinSchedule::DwQuadratic => {
                if s < DW_QUADRATIC_KINK {
                    (13.371976 * s * s - 18.453338 * s + 6.366401) * PI
                } else {
                    0.0
                }
            }
        }
    }

    pub fn b(self, s: f64) -> f64 {
        match self {
            BuiltinSchedule::Linear => s,
            BuiltinSchedule::Quadratic => s * s,
            BuiltinSchedule::Circular => (FRAC_PI_2 * s).sin(),
            BuiltinSchedule::DwQuadratic => 14.55571 * (0.85 * s * s + 0.15 * s) * PI,
        }
    }
}

impl fmt::Display for BuiltinSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tabulated schedule values, linearly interpolated between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleTable {
    s: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl ScheduleTable {
    /// Rows are `(s, A(s), B(s))`. Errors name the offending 1-based row.
    pub fn new(rows: &[(f64, f64, f64)]) -> Result<Self> {
        let err = |row: usize, reason: String| Error::ScheduleTable { row, reason };
        if rows.len() < 2 {
            return Err(err(rows.len(), "at least two rows are required".into()));
        }
        for (k, &(s, a, b)) in rows.iter().enumerate() {
            if !(s.is_finite() && a.is_finite() && b.is_finite()) {
                return Err(err(k + 1, "non-finite value".into()));
            }
            if k > 0 && s <= rows[k - 1].0 {
                return Err(err(k + 1, format!("s = {s} does not increase")));
            }
        }
        let first = rows[0].0;
        let last = rows[rows.len() - 1].0;
        if first > 1e-12 {
            return Err(err(1, format!("table starts at s = {first}, must cover 0")));
        }
        if last < 1.0 - 1e-12 {
            return Err(err(
                rows.len(),
                format!("table ends at s = {last}, must cover 1"),
            ));
        }
        Ok(ScheduleTable {
            s: rows.iter().map(|r| r.0).collect(),
            a: rows.iter().map(|r| r.1).collect(),
            b: rows.iter().map(|r| r.2).collect(),
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.s
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.s.len()).map(move |k| (self.s[k], self.a[k], self.b[k]))
    }

    pub fn a(&self, s: f64) -> f64 {
        self.interpolate(&self.a, s)
    }

    pub fn b(&self, s: f64) -> f64 {
        self.interpolate(&self.b, s)
    }

    fn interpolate(&self, values: &[f64], s: f64) -> f64 {
        let n = self.s.len();
        if s <= self.s[0] {
            return values[0];
        }
        if s >= self.s[n - 1] {
            return values[n - 1];
        }
        // first node strictly greater than s
        let hi = self.s.partition_point(|&x| x <= s);
        let lo = hi - 1;
        let (s0, s1) = (self.s[lo], self.s[hi]);
        let t = (s - s0) / (s1 - s0);
        values[lo] + t * (values[hi] - values[lo])
    }
}

/// Where a schedule came from; used for labelling and re-export.
#[derive(Clone)]
pub enum ScheduleSource {
    Builtin(BuiltinSchedule),
    Table(Arc<ScheduleTable>),
    Custom,
}

/// A pair of schedule functions on `[0, 1]` plus the driver sign convention.
#[derive(Clone)]
pub struct AnnealingSchedule {
    a: ScalarFn,
    b: ScalarFn,
    driver_sign: DriverSign,
    kinks: Vec<f64>,
    source: ScheduleSource,
    label: String,
}

impl fmt::Debug for AnnealingSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnnealingSchedule")
            .field("label", &self.label)
            .field("driver_sign", &self.driver_sign)
            .field("kinks", &self.kinks)
            .finish()
    }
}

impl AnnealingSchedule {
    pub fn a(&self, s: f64) -> f64 {
        (self.a)(s)
    }

    pub fn b(&self, s: f64) -> f64 {
        (self.b)(s)
    }

    pub fn driver_sign(&self) -> DriverSign {
        self.driver_sign
    }

    pub fn initial_state(&self) -> InitialState {
        self.driver_sign.initial_state()
    }

    /// Interior points where `A` or `B` has a derivative discontinuity.
    /// Solver steps never straddle these.
    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn source(&self) -> &ScheduleSource {
        &self.source
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_driver_sign(mut self, sign: DriverSign) -> Self {
        self.driver_sign = sign;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Registers extra kink locations in `(0, 1)`.
    pub fn with_kinks(mut self, kinks: &[f64]) -> Self {
        self.kinks
            .extend(kinks.iter().copied().filter(|&k| k > 0.0 && k < 1.0));
        self.kinks.sort_by(f64::total_cmp);
        self.kinks.dedup();
        self
    }

    /// Samples `(s, A(s), B(s))` on the given grid.
    pub fn tabulate(&self, grid: &[f64]) -> Vec<(f64, f64, f64)> {
        grid.iter().map(|&s| (s, self.a(s), self.b(s))).collect()
    }
}

pub fn builtin_schedule(which: BuiltinSchedule) -> AnnealingSchedule {
    let kinks = match which {
        BuiltinSchedule::DwQuadratic => alloc::vec![DW_QUADRATIC_KINK],
        _ => Vec::new(),
    };
    AnnealingSchedule {
        a: Arc::new(move |s| which.a(s)),
        b: Arc::new(move |s| which.b(s)),
        driver_sign: DriverSign::Positive,
        kinks,
        source: ScheduleSource::Builtin(which),
        label: which.name().to_string(),
    }
}

pub fn schedule_from_functions<A, B>(
    a: A,
    b: B,
    driver_sign: DriverSign,
) -> Result<AnnealingSchedule>
where
    A: Fn(f64) -> f64 + Send + Sync + 'static,
    B: Fn(f64) -> f64 + Send + Sync + 'static,
{
    for s in [0.0, 0.5, 1.0] {
        if !a(s).is_finite() {
            return Err(Error::NonFiniteSchedule { which: 'A', s });
        }
        if !b(s).is_finite() {
            return Err(Error::NonFiniteSchedule { which: 'B', s });
        }
    }
    Ok(AnnealingSchedule {
        a: Arc::new(a),
        b: Arc::new(b),
        driver_sign,
        kinks: Vec::new(),
        source: ScheduleSource::Custom,
        label: "custom".to_string(),
    })
}

pub fn schedule_from_table(table: ScheduleTable, driver_sign: DriverSign) -> AnnealingSchedule {
    let table = Arc::new(table);
    let (ta, tb) = (table.clone(), table.clone());
    AnnealingSchedule {
        a: Arc::new(move |s| ta.a(s)),
        b: Arc::new(move |s| tb.b(s)),
        driver_sign,
        kinks: Vec::new(),
        source: ScheduleSource::Table(table),
        label: "table".to_string(),
    }
}

/// `c0 + c1 s + c2 s^2`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarQuadratic {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ScalarQuadratic {
    pub fn eval(&self, s: f64) -> f64 {
        self.c0 + s * (self.c1 + s * self.c2)
    }
}

/// The quadratic through `f` at `s0`, the midpoint and `s1`, expressed in the
/// global variable `s`.
///
/// Panics unless `s0 < s1`.
pub fn local_quadratic_fit<F: Fn(f64) -> f64>(f: F, s0: f64, s1: f64) -> ScalarQuadratic {
    assert!(s0 < s1, "local_quadratic_fit needs s0 < s1");
    let [u0, u1, u2] = unit_quadratic_fit(&f, s0, s1);
    // substitute u = (s - s0) / h
    let h = s1 - s0;
    let (d1, d2) = (u1 / h, u2 / (h * h));
    ScalarQuadratic {
        c0: u0 - d1 * s0 + d2 * s0 * s0,
        c1: d1 - 2.0 * d2 * s0,
        c2: d2,
    }
}

/// Same interpolant as [`local_quadratic_fit`], in the local variable
/// `u = (s - s0) / (s1 - s0)` on `[0, 1]`.
pub fn unit_quadratic_fit<F: Fn(f64) -> f64>(f: &F, s0: f64, s1: f64) -> [f64; 3] {
    let f0 = f(s0);
    let fm = f(0.5 * (s0 + s1));
    let f1 = f(s1);
    [
        f0,
        -3.0 * f0 + 4.0 * fm - f1,
        2.0 * f0 - 4.0 * fm + 2.0 * f1,
    ]
}
