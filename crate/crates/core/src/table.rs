use num_bigint::BigInt;

use crate::config::Configuration;
use crate::series::PowerSeries;

/// The values `r(0), …, r(N)` of a representation function for one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTable {
    config: Configuration,
    values: PowerSeries,
}

impl RepTable {
    pub fn new(config: Configuration, values: PowerSeries) -> Self {
        Self { config, values }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn order(&self) -> usize {
        self.values.order()
    }

    pub fn value(&self, n: usize) -> BigInt {
        self.values.coeff(n)
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.values.to_bigints()
    }

    /// The table viewed as the coefficient series `Σ r(n) z^n`.
    pub fn series(&self) -> &PowerSeries {
        &self.values
    }

    pub fn into_series(self) -> PowerSeries {
        self.values
    }
}
