use blowup::Error;

pub const MISMATCH: u8 = 1;
pub const USAGE: u8 = 2;
pub const RESOURCE: u8 = 3;
pub const NONVANISHING: u8 = 4;

/// A message and the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(USAGE, message)
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Failure::new(MISMATCH, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPrime(_) | Error::OutOfRange { .. } | Error::Dimension { .. } | Error::MalformedSection(_) => USAGE,
            Error::NonvanishingLocalData { .. } => NONVANISHING,
            _ => MISMATCH,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::mismatch(format!("i/o: {e}"))
    }
}

const DEFAULT_ROW_LIMIT: usize = 5000;

/// Upper bound on matrix rows, from `BLOWUP_ROW_LIMIT` if set.
pub fn row_limit() -> usize {
    std::env::var("BLOWUP_ROW_LIMIT").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_ROW_LIMIT)
}

pub fn check_rows(rows: usize) -> Result<(), Failure> {
    let limit = row_limit();
    if rows > limit {
        return Err(Failure::new(RESOURCE, format!("matrix would have {rows} rows, limit is {limit} (set BLOWUP_ROW_LIMIT to raise)")));
    }
    Ok(())
}

pub fn ensure_prime(p: u64) -> Result<(), Failure> {
    blowup::arith::ensure_prime(p).map_err(Failure::from)
}
