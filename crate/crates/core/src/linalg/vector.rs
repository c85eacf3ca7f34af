use serde::Serialize;

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// Direction on the Bloch sphere. The norm is 1 within 1e-12 by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitVector3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector3 {
    pub const X: Self = Self {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: Self = Self {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: Self = Self {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Accepts components that already form a unit vector.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidAxis { norm });
        }
        Ok(Self { x, y, z })
    }

    /// Rescales an arbitrary nonzero vector onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidAxis { norm });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// `sinη cosξ x̂ + sinη sinξ ŷ + cosη ẑ` for co-latitude η and longitude ξ.
    pub fn from_spherical(eta: f64, xi: f64) -> Self {
        Self {
            x: eta.sin() * xi.cos(),
            y: eta.sin() * xi.sin(),
            z: eta.cos(),
        }
    }

    /// Equatorial direction `cosφ x̂ + sinφ ŷ`.
    pub fn equatorial(phi: f64) -> Self {
        Self {
            x: phi.cos(),
            y: phi.sin(),
            z: 0.0,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Longitude in the xy-plane, `atan2(y, x)`.
    pub fn longitude(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_equatorial(&self, tol: f64) -> bool {
        self.z.abs() <= tol
    }
}
