//! Small numerical kernels shared by the physics modules.

pub mod diff;
pub mod golden;
pub mod interp;
pub mod quadrature;
pub mod roots;
pub mod special;
