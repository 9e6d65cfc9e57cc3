//! Named test functions `f : Z² → C`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::C64;

type Eval = dyn Fn(i64, i64) -> C64 + Send + Sync;

/// A pure function on the lattice with a stable name.
#[derive(Clone)]
pub struct LatticeFunction {
    name: String,
    eval: Arc<Eval>,
}

impl LatticeFunction {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(i64, i64) -> C64 + Send + Sync + 'static,
    {
        LatticeFunction {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    /// Real-valued convenience constructor.
    pub fn real<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, move |x, y| C64::new(eval(x as f64, y as f64), 0.0))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: i64, y: i64) -> C64 {
        (self.eval)(x, y)
    }

    #[inline]
    pub fn at(&self, site: (i64, i64)) -> C64 {
        (self.eval)(site.0, site.1)
    }
}

impl fmt::Debug for LatticeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeFunction").field("name", &self.name).finish()
    }
}

/// `e^{iξx + iηy}`.
pub fn plane_wave(name: impl Into<String>, xi: f64, eta: f64) -> LatticeFunction {
    LatticeFunction::new(name, move |x, y| C64::from_polar(1.0, xi * x as f64 + eta * y as f64))
}

/// Frequencies used by the plane-wave entries, with their name tags.
pub const PLANE_WAVE_FREQUENCIES: [(&str, f64); 4] = [("0", 0.0), ("pi5", PI / 5.0), ("pi3", PI / 3.0), ("2", 2.0)];

/// The fixed witness family: ten polynomial / absolute-value / constant entries
/// followed by the sixteen plane waves `exp_<ξ>_<η>`.
pub fn function_registry() -> Vec<LatticeFunction> {
    let mut family = vec![
        LatticeFunction::real("x", |x, _| x),
        LatticeFunction::real("y", |_, y| y),
        LatticeFunction::real("x_plus_y", |x, y| x + y),
        LatticeFunction::real("x_sq", |x, _| x * x),
        LatticeFunction::real("y_sq", |_, y| y * y),
        LatticeFunction::real("xy", |x, y| x * y),
        LatticeFunction::real("abs_x", |x, _| x.abs()),
        LatticeFunction::real("abs_y", |_, y| y.abs()),
        LatticeFunction::real("abs_x_plus_abs_y", |x, y| x.abs() + y.abs()),
        LatticeFunction::real("one", |_, _| 1.0),
    ];
    for (xi_tag, xi) in PLANE_WAVE_FREQUENCIES {
        for (eta_tag, eta) in PLANE_WAVE_FREQUENCIES {
            family.push(plane_wave(format!("exp_{xi_tag}_{eta_tag}"), xi, eta));
        }
    }
    family
}

pub fn registry_names() -> Vec<String> {
    function_registry().iter().map(|f| f.name().to_string()).collect()
}

pub fn lookup(name: &str) -> Result<LatticeFunction> {
    function_registry()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::UnknownFunction {
            name: name.to_string(),
            available: registry_names().join(", "),
        })
}
