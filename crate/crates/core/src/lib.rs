//! Exact computations with finite weak multiplier Hopf algebras built from
//! groupoids: pairings, the Drinfeld double and its quasitriangular
//! structure.

pub mod algebra;
pub mod double;
pub mod exactnum;
pub mod groupoid;
pub mod linalg;
pub mod pairing;
pub mod qt;
pub mod report;
pub mod wmha;
