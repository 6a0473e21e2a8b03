use std::fmt;

/// A non-empty list of validation violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics<V>(pub Vec<V>);

impl<V> Diagnostics<V> {
    pub fn iter(&self) -> std::slice::Iter<'_, V> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<V> {
        self.0
    }

    pub(crate) fn check(violations: Vec<V>) -> Result<(), Self> {
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Diagnostics(violations))
        }
    }
}

impl<V: fmt::Display> fmt::Display for Diagnostics<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<V: fmt::Display + fmt::Debug> std::error::Error for Diagnostics<V> {}
