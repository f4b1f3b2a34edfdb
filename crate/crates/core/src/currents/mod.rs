mod balance;
mod boundary;
mod current;
mod flat;
mod push;
mod star;

pub use balance::{check_balanced, corner_locus, corner_locus_with, BalanceReport, BalanceViolation};
pub use boundary::{boundary_ddoubleprime, boundary_dprime};
pub use current::{affine_on_chart, PolyhedralCurrent, Summand, TropicalCycle};
pub use flat::{check_flat, fiber_integral_form, pull_back_flat, FiberWeight, FlatReport, FlatViolation, PwsForm};
pub use push::{push_forward, push_forward_with, PwlMap};
