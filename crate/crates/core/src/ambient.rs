//! The number field a lattice lives in, and its trace form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycField;
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Rational};
use crate::quadratic::QuadAmbient;
use crate::shanks::ShanksField;

#[derive(Clone, Debug)]
pub enum Ambient {
    Shanks(Arc<ShanksField>),
    Cyclotomic(Arc<CycField>),
    Quadratic(QuadAmbient),
}

/// Serialized identity of an ambient field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AmbientDescriptor {
    Shanks { t: String },
    Cyclotomic { n: u64 },
    Quadratic { d: u64, sign: i8 },
}

impl AmbientDescriptor {
    pub fn build(&self) -> Result<Ambient> {
        Ok(match self {
            AmbientDescriptor::Shanks { t } => {
                let t = parse_rational(t).map_err(|e| Error::Expression(e.to_string()))?;
                Ambient::Shanks(Arc::new(ShanksField::new(t)?))
            }
            AmbientDescriptor::Cyclotomic { n } => Ambient::Cyclotomic(Arc::new(CycField::new(*n)?)),
            AmbientDescriptor::Quadratic { d, sign } => {
                Ambient::Quadratic(QuadAmbient::new(*d as i64, *sign)?)
            }
        })
    }
}

impl Ambient {
    pub fn degree(&self) -> usize {
        match self {
            Ambient::Shanks(_) => 3,
            Ambient::Cyclotomic(f) => f.phi(),
            Ambient::Quadratic(_) => 2,
        }
    }

    pub fn descriptor(&self) -> AmbientDescriptor {
        match self {
            Ambient::Shanks(f) => AmbientDescriptor::Shanks {
                t: f.t().to_string(),
            },
            Ambient::Cyclotomic(f) => AmbientDescriptor::Cyclotomic { n: f.n() },
            Ambient::Quadratic(q) => AmbientDescriptor::Quadratic {
                d: q.d(),
                sign: q.sign(),
            },
        }
    }

    pub fn same_field(&self, other: &Ambient) -> bool {
        self.descriptor() == other.descriptor()
    }

    /// Totally real fields use the plain trace form; CM fields conjugate the
    /// second argument.
    pub fn is_totally_real(&self) -> bool {
        match self {
            Ambient::Shanks(_) => true,
            Ambient::Cyclotomic(_) => false,
            Ambient::Quadratic(q) => q.sign() > 0,
        }
    }

    /// `Tr(a · conj(b))` on power-basis coordinates.
    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        match self {
            Ambient::Shanks(f) => f.ring().trace(&f.ring().mul(a, b)),
            Ambient::Cyclotomic(f) => f.hermitian_pair(a, b),
            Ambient::Quadratic(q) => q.pairing_coords(a, b),
        }
    }

    /// Images of `a` under a generating set of the Galois group.
    pub fn galois_images(&self, a: &[Rational]) -> Vec<Vec<Rational>> {
        match self {
            Ambient::Shanks(f) => vec![f.sigma_coords(a)],
            Ambient::Cyclotomic(f) => f
                .galois_exponents()
                .into_iter()
                .map(|k| f.automorphism(a, k))
                .collect(),
            Ambient::Quadratic(_) => vec![vec![a[0].clone(), -&a[1]]],
        }
    }
}
