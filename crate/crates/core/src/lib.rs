//! Simulation toolkit for autonomous inland-waterway vessels.
//!
//! The crate covers the whole guidance, navigation and control loop:
//!
//! * [`chart`]: shapefile/JSON chart ingestion into per-class layers;
//! * [`planner`]: waterway graph, depth tagging and Dijkstra route planning;
//! * [`model`] and [`actuators`]: 3-DOF MMG dynamics with propeller and twin rudders;
//! * [`guidance`]: waypoint switching and line-of-sight course references;
//! * [`colav`]: scenario-based MPC collision avoidance;
//! * [`control`]: PID and Nomoto-model MPC rudder controllers;
//! * [`metrics`]: path-following performance indices;
//! * [`sim`]: scenario configuration and the closed-loop simulation engine.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod actuators;
pub mod chart;
pub mod colav;
pub mod control;
pub mod geometry;
pub mod guidance;
pub mod metrics;
pub mod model;
pub mod planner;
pub mod sim;

pub use geometry::{wrap_pi, BoundingBox, Point};
