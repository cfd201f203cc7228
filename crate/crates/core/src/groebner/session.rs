use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, Ring};
use crate::error::{Error, Result};

/// Resource limits for Gröbner computations. Exceeding any of them is an
/// [`Error::BudgetExceeded`], never a silent truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Reduction steps allowed in one basis computation.
    pub max_reductions: u64,
    /// Largest total degree of a basis element.
    pub max_degree: u32,
    /// Largest number of ring variables a basis computation may run in,
    /// counting an elimination tag.
    pub max_variables: usize,
    /// Wall-clock limit for the whole session, in seconds.
    pub time_limit_secs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_reductions: 1_000_000, max_degree: 12, max_variables: 16, time_limit_secs: 300 }
    }
}

impl Budget {
    /// Limits large enough that desk-scale computations never hit them.
    pub fn generous() -> Self {
        Budget { max_reductions: 50_000_000, max_degree: 64, max_variables: 64, time_limit_secs: 3600 }
    }
}

/// A persistent store of reduced Gröbner bases, keyed by a content digest of
/// (ring, generators, order).
pub trait BasisStore: Send + Sync {
    fn load(&self, key: &str, ring: &Ring) -> Option<Vec<Polynomial>>;
    fn save(&self, key: &str, basis: &[Polynomial]);
}

/// Budget, deadline and optional persistent cache shared by a run.
#[derive(Clone)]
pub struct Session {
    budget: Budget,
    deadline: Option<Instant>,
    store: Option<Arc<dyn BasisStore>>,
}

impl fmt::Debug for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Session").field("budget", &self.budget).field("store", &self.store.is_some()).finish()
    }
}

impl Default for Session {
    fn default() -> Self {
        Session::new(Budget::default())
    }
}

impl Session {
    pub fn new(budget: Budget) -> Self {
        let deadline = Instant::now().checked_add(Duration::from_secs(budget.time_limit_secs));
        Session { budget, deadline, store: None }
    }

    pub fn generous() -> Self {
        Session::new(Budget::generous())
    }

    /// No limits at all; used for operations that terminate by construction,
    /// such as division by a fixed list.
    pub(crate) fn unbounded() -> Self {
        let budget = Budget {
            max_reductions: u64::MAX,
            max_degree: u32::MAX,
            max_variables: usize::MAX,
            time_limit_secs: u64::MAX,
        };
        Session { budget, deadline: None, store: None }
    }

    pub fn with_store(mut self, store: Arc<dyn BasisStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub(crate) fn store(&self) -> Option<&Arc<dyn BasisStore>> {
        self.store.as_ref()
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => {
                Err(Error::BudgetExceeded(format!("wall-clock limit of {} s", self.budget.time_limit_secs)))
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn check_variables(&self, nvars: usize) -> Result<()> {
        if nvars > self.budget.max_variables {
            return Err(Error::BudgetExceeded(format!(
                "{nvars} variables exceed the limit of {}",
                self.budget.max_variables
            )));
        }
        Ok(())
    }
}
