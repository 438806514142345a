//! Domain types, file formats and the validator.

pub mod criteria;
pub mod instance;
pub mod rooms;
pub mod schedule;
pub mod validate;

pub use criteria::{Criterion, Fairness, FairnessCriteria};
pub use instance::{parse_instance, render_instance, render_instance_json, Instance, Problem, Team};
pub use rooms::{room_plan_for, RoomPolicy};
pub use schedule::{parse_schedule, render_schedule, Schedule, ScheduleFormat, Slot, Stage, ROUNDS};
pub use validate::{audit, validate, Rule, ValidationReport, Violation};
