//! Integer and character arithmetic plus the zeta / L-function layer.

pub mod integer;
pub mod pell;
pub mod zeta;

pub use integer::{
    divisors_moebius, euler_phi, factorize, gcd, is_square, is_squarefree, isqrt, jacobi,
    kronecker, mod_inverse, SpfSieve,
};
pub use pell::{is_fundamental, pell_fundamental, regulator, Discriminant, PellSolution};
pub use zeta::{
    dirichlet_l, hurwitz_zeta, hurwitz_zeta_prime, hurwitz_zeta_regularized, zeta, zeta_family,
    zeta_prime, ZetaKind, EULER_GAMMA,
};
