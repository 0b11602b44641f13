//! Concrete satisfaction systems.

pub mod goedel;
pub mod horn;
pub mod ltlx;
pub mod prop;
pub mod qint;
pub mod threeval;
