//! Exact, desk-scale experiments with countable ultrahomogeneous tournaments
//! and digraphs.
//!
//! * [`angles`]: points `a + bπ` with rational `a`, `b`, decided exactly
//!   against a refinable enclosure of π, and the circle digraphs S(2), S(3)
//!   on rational angles.
//! * [`structure`]: finite binary structures with optional unary labels,
//!   wreath products, DOT and JSON.
//! * [`formula`]: first-order formulas over `⟨R, labels⟩`, evaluation and
//!   definable reducts.
//! * [`random`]: the Rado graph and the random tournament as pair oracles on
//!   ω, the definable transfer between them and extension witnesses.
//! * [`circular`]: the linear orders ρ and τ defined on S(2) and S(3),
//!   density witnesses and Tarski–Vaught probes.
//! * [`fraisse`]: isomorphism, back-and-forth games, ultrahomogeneity,
//!   enumeration and HP/JEP/AP.
//! * [`checks`]: JSON check suites, and [`cli`] the command line front end.
//!
//! ```
//! use ultrahom::angles::{int, ratio, Class, Model};
//! use ultrahom::circular::{density_witness, rho};
//!
//! assert!(rho(&int(2), &int(0)));
//! let z = density_witness(&int(2), &int(3), Class::A, Model::S2).unwrap();
//! assert_eq!(z, ratio(5, 2));
//! ```

pub mod angles;
pub mod checks;
pub mod circular;
pub mod cli;
pub mod formula;
pub mod fraisse;
pub mod random;
pub mod structure;
