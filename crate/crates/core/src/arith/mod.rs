//! Exact arithmetic: finite fields, `o_F / p^K`, truncated series and the
//! Lubin-Tate endomorphisms.

pub mod gf;
pub mod laurent;
pub mod lubin_tate;
pub mod ofring;
pub mod prime;

pub use gf::{Elem, Gf};
pub use laurent::{binomial_power, PadicExp, TruncLaurent, INF};
pub use lubin_tate::{fbar, lt_mod_pi, lt_mult_series, omega, OSeries};
pub use ofring::{OfElem, OfRing, Ramification};
pub use prime::PrimePower;
