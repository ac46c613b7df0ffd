pub mod format;
pub mod generate;
pub mod oracle;
pub mod report;
pub mod search;
pub mod suite;
