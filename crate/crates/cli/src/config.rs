use std::env;

use clap::ValueEnum;

use crate::error::CliError;

pub const MAX_LEN_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub max_len: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub format: Format,
    pub threads: Option<usize>,
}

impl Config {
    pub fn new(
        max_len: usize,
        tolerance: f64,
        seed: u64,
        format: Format,
        threads: Option<usize>,
    ) -> Result<Config, CliError> {
        if max_len == 0 || max_len > MAX_LEN_LIMIT {
            return Err(CliError::Usage(format!(
                "--max-len must be in 1..={MAX_LEN_LIMIT}, got {max_len}"
            )));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tolerance must be positive, got {tolerance}"
            )));
        }
        let threads = match threads {
            Some(n) => Some(n),
            None => match env::var("MODKNOT_THREADS") {
                Ok(v) => Some(
                    v.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("MODKNOT_THREADS is not a number: {v:?}")))?,
                ),
                Err(_) => None,
            },
        };
        if threads == Some(0) {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        Ok(Config {
            max_len,
            tolerance,
            seed,
            format,
            threads,
        })
    }

    pub fn install_pool(&self) -> Result<(), CliError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.threads {
            builder = builder.num_threads(n);
        }
        builder
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
    }
}
