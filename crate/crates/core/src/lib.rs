//! Comaximality topologies on commutative rings, made computable on finite
//! windows of six concrete rings.

pub mod error;
pub mod ideal;
pub mod int;
pub mod lab;
pub mod lattice;
pub mod modpoly;
pub mod par;
pub mod quadratic;
pub mod ring;
pub mod topology;
pub mod zpoly;

mod ser;

pub use error::{Error, Result};
pub use ring::{Element, Ring};
