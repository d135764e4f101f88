pub mod app;
pub mod data;
pub mod report;
pub mod stages;
