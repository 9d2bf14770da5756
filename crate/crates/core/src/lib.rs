pub mod certify;
pub mod checks;
pub mod cocycles;
pub mod comodules;
pub mod config;
pub mod cyclotomic;
pub mod fusion;
pub mod groups;
pub mod hopf;
pub mod linalg;
pub mod matched_pair;
pub mod report;
pub mod reps;
