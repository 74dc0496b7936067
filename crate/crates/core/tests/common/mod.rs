pub mod oracle;
pub mod pages;
