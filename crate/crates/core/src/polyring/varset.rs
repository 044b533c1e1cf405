use super::mono::MAX_VARS;
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// An ordered set of variable names. Cloning is cheap.
#[derive(Clone)]
pub struct VarSet {
    names: Arc<[String]>,
}

fn valid_name(n: &str) -> bool {
    let mut ch = n.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic()) && ch.all(|c| c.is_ascii_alphanumeric())
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<VarSet> {
        if names.is_empty() {
            return Err(Error::InvalidVarSet("empty".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidVarSet(format!("at most {MAX_VARS} variables")));
        }
        let mut v: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(Error::InvalidVarSet(format!("bad name `{n}`")));
            }
            if v.iter().any(|m| m == n) {
                return Err(Error::InvalidVarSet(format!("duplicate name `{n}`")));
            }
            v.push(n.to_string());
        }
        Ok(VarSet { names: v.into() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new set with `extra` appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<VarSet> {
        let mut v: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        v.extend(extra.iter().map(|s| s.as_ref()));
        VarSet::new(&v)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}
