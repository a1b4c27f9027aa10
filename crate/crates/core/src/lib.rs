pub mod chords;
pub mod circuits;
pub mod cli;
pub mod error;
pub mod interval;
pub mod oracle;
pub mod polygons;
pub mod rational;
pub mod suites;
pub mod trig;
