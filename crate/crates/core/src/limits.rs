use crate::error::{Error, Result};

/// Default cap on `n` for anything that walks all of `{0,1}^n`.
pub const DEFAULT_MAX_ENUM_LEN: usize = 28;
/// Default cap on the size of any enumerated set of optimal strings.
pub const DEFAULT_MAX_SET_SIZE: usize = 1_000_000;
/// Default cap on the estimated operation count of a census.
pub const DEFAULT_MAX_CENSUS_OPS: f64 = 1e12;

/// Guards that keep exhaustive computations bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub max_enum_len: usize,
    pub max_set_size: usize,
    pub max_census_ops: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum_len: DEFAULT_MAX_ENUM_LEN,
            max_set_size: DEFAULT_MAX_SET_SIZE,
            max_census_ops: DEFAULT_MAX_CENSUS_OPS,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_enum_len: 63,
            max_set_size: usize::MAX,
            max_census_ops: f64::INFINITY,
        }
    }

    pub(crate) fn check_enum(&self, n: usize) -> Result<()> {
        if n > self.max_enum_len {
            return Err(Error::resource(format!(
                "enumerating {{0,1}}^{n} exceeds the enumeration guard (n <= {})",
                self.max_enum_len
            )));
        }
        if n > 63 {
            return Err(Error::resource(format!(
                "n = {n} does not fit a packed word"
            )));
        }
        Ok(())
    }

    pub(crate) fn check_set(&self, size: usize) -> Result<()> {
        if size > self.max_set_size {
            return Err(Error::resource(format!(
                "candidate set of {size} strings exceeds the output guard ({})",
                self.max_set_size
            )));
        }
        Ok(())
    }

    pub(crate) fn check_ops(&self, what: &str, estimate: f64) -> Result<()> {
        if estimate > self.max_census_ops {
            return Err(Error::resource(format!(
                "{what}: estimated {estimate:.3e} operations exceeds the census guard ({:.3e})",
                self.max_census_ops
            )));
        }
        Ok(())
    }
}
