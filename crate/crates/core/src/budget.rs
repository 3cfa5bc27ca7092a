use crate::error::{CoreError, Result};

/// Caps on the exhaustive enumerations.  Every potentially explosive
/// operation takes a `&Budget` and fails with [`CoreError::Budget`] instead of
/// running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest structure (vertex count) an operation may build.
    pub max_vertices: u64,
    /// Generic enumeration counter: subsets, maps, candidate structures,
    /// valuation assignments, search nodes.
    pub max_steps: u64,
    /// Number of colorings an arrow verification may enumerate.
    pub max_colorings: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 200_000,
            max_steps: 200_000_000,
            max_colorings: 1 << 24,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vertices: u64::MAX,
            max_steps: u64::MAX,
            max_colorings: u64::MAX,
        }
    }

    pub fn check_vertices(&self, n: u64) -> Result<()> {
        if n > self.max_vertices {
            return Err(CoreError::Budget {
                what: "vertices",
                limit: self.max_vertices,
            });
        }
        Ok(())
    }

    pub fn check_steps(&self, n: u64) -> Result<()> {
        if n > self.max_steps {
            return Err(CoreError::Budget {
                what: "enumeration steps",
                limit: self.max_steps,
            });
        }
        Ok(())
    }

    pub fn check_colorings(&self, n: u64) -> Result<()> {
        if n > self.max_colorings {
            return Err(CoreError::Budget {
                what: "colorings",
                limit: self.max_colorings,
            });
        }
        Ok(())
    }
}

/// Running counter charged against a budget from inside enumeration loops.
#[derive(Debug)]
pub struct Meter<'a> {
    budget: &'a Budget,
    steps: u64,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Meter { budget, steps: 0 }
    }

    #[inline]
    pub fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(CoreError::Budget {
                what: "enumeration steps",
                limit: self.budget.max_steps,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn step_by(&mut self, n: u64) -> Result<()> {
        self.steps = self.steps.saturating_add(n);
        if self.steps > self.budget.max_steps {
            return Err(CoreError::Budget {
                what: "enumeration steps",
                limit: self.budget.max_steps,
            });
        }
        Ok(())
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }
}
