use crate::error::Result;
use crate::specfun;

/// The special functions the identity suite exercises.
pub trait Kernel: Sync {
    fn gamma(&self, x: f64) -> Result<f64>;
    fn digamma(&self, x: f64) -> Result<f64>;
    /// Dispatching ₂F₁ evaluation.
    fn hyp2f1(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64>;
    /// ₂F₁ through its Euler integral, independent of the dispatch.
    fn hyp2f1_integral(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64>;
    fn connection_rhs(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64>;
    fn pi_cot_half(&self, alpha: f64) -> f64;
    fn cot_series(&self, alpha: f64) -> Result<f64>;
    fn e_const(&self, alpha: f64, theta: f64) -> Result<f64>;
}

/// The library's own implementations.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReferenceKernel;

impl Kernel for ReferenceKernel {
    fn gamma(&self, x: f64) -> Result<f64> {
        specfun::gamma_fn(x)
    }
    fn digamma(&self, x: f64) -> Result<f64> {
        specfun::digamma(x)
    }
    fn hyp2f1(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        specfun::gauss_2f1(specfun::HypergeomParams::new(a, b, c, z))
    }
    fn hyp2f1_integral(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        specfun::euler_integral(a, b, c, z)
    }
    fn connection_rhs(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        specfun::connection_rhs(a, b, c, z)
    }
    fn pi_cot_half(&self, alpha: f64) -> f64 {
        specfun::pi_cot_half(alpha)
    }
    fn cot_series(&self, alpha: f64) -> Result<f64> {
        specfun::cot_series_check(alpha)
    }
    fn e_const(&self, alpha: f64, theta: f64) -> Result<f64> {
        specfun::e_const(alpha, theta)
    }
}

/// Which function a [`FaultyKernel`] corrupts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    Gamma,
    Digamma,
    Hyp2f1,
}

impl std::str::FromStr for Fault {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Fault::Gamma),
            "digamma" => Ok(Fault::Digamma),
            "hyp2f1" => Ok(Fault::Hyp2f1),
            _ => Err(crate::Error::Config(format!("unknown fault {s:?}"))),
        }
    }
}

/// Test hook: the reference kernel with one function perturbed by a
/// relative 1e−6·x, which breaks its identities without being constant.
#[doc(hidden)]
#[derive(Debug, Clone, Copy)]
pub struct FaultyKernel {
    pub fault: Fault,
}

impl Kernel for FaultyKernel {
    fn gamma(&self, x: f64) -> Result<f64> {
        let v = ReferenceKernel.gamma(x)?;
        Ok(if self.fault == Fault::Gamma {
            v * (1.0 + 1e-6 * x)
        } else {
            v
        })
    }
    fn digamma(&self, x: f64) -> Result<f64> {
        let v = ReferenceKernel.digamma(x)?;
        Ok(if self.fault == Fault::Digamma { v + 1e-6 * x } else { v })
    }
    fn hyp2f1(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        let v = ReferenceKernel.hyp2f1(a, b, c, z)?;
        Ok(if self.fault == Fault::Hyp2f1 {
            v * (1.0 - 1e-6 * z)
        } else {
            v
        })
    }
    fn hyp2f1_integral(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        ReferenceKernel.hyp2f1_integral(a, b, c, z)
    }
    fn connection_rhs(&self, a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
        ReferenceKernel.connection_rhs(a, b, c, z)
    }
    fn pi_cot_half(&self, alpha: f64) -> f64 {
        ReferenceKernel.pi_cot_half(alpha)
    }
    fn cot_series(&self, alpha: f64) -> Result<f64> {
        ReferenceKernel.cot_series(alpha)
    }
    fn e_const(&self, alpha: f64, theta: f64) -> Result<f64> {
        ReferenceKernel.e_const(alpha, theta)
    }
}
