pub mod run;
pub mod task;
