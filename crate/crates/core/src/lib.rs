pub mod annihilator;
pub mod cofactor;
pub mod error;
pub mod even;
pub mod factor;
pub mod fourbar;
pub mod io;
pub mod linalg;
pub mod multivector;
pub mod poly;
pub mod quaternion;
pub mod random;
pub mod roots;

pub use annihilator::{AnnihilatorSpace, NullDisplacement, Side};
pub use cofactor::{find_cofactor, real_cofactor, CofactorResult, RealCofactorResult};
pub use error::{Error, Result};
pub use even::{sandwich, EvenElement};
pub use factor::{
    factorize_all, left_factor, right_factor, verify, FactorOptions, FactorReport, Factorization,
    LinearFactor, MethodKind, Status,
};
pub use fourbar::{AxisSet, FourBarReport, NullPointRecord, QuadricSystem, RulingGraph};
pub use multivector::{CgaVector, Multivector, Scalar};
pub use poly::{norm_poly, EvenPolynomial, RealPolynomial, SpinorPolynomial};
pub use quaternion::{s_form, FourQuat, Quaternion};
pub use roots::{find_roots, QuadraticFactor, Root, RootSet};
