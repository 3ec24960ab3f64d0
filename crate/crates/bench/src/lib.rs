pub use lambda_core as core;
