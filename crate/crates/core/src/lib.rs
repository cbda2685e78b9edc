//! Homological action of Dehn-twist words on closed oriented surfaces,
//! Casson–Bleiler pseudo-Anosov certification, and ℤ/2-graded Floer
//! cohomology ranks of twist compositions along acceptable curve systems.

pub mod certify;
pub mod curvesys;
pub mod exactalg;
pub mod floer;
pub mod surface;
pub mod twist;
