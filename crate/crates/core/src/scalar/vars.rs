//! Interned parameter names.
//!
//! Every parameter (λ, μ₁₂, …) is registered once in a process-wide table and
//! afterwards handled as a small integer id. Ids are assigned in declaration
//! order, which fixes the variable order used by the grevlex term order for
//! printing and storage.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Default)]
struct Registry {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(Registry::default()))
}

/// An interned parameter name.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Interns `name`, returning the existing id if it was seen before.
    pub fn new(name: &str) -> Var {
        {
            let reg = registry().read().unwrap();
            if let Some(&id) = reg.ids.get(name) {
                return Var(id);
            }
        }
        let mut reg = registry().write().unwrap();
        if let Some(&id) = reg.ids.get(name) {
            return Var(id);
        }
        let id = reg.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        reg.names.push(name.clone());
        reg.ids.insert(name, id);
        Var(id)
    }

    pub fn name(&self) -> Arc<str> {
        registry().read().unwrap().names[self.0 as usize].clone()
    }
}

impl std::fmt::Debug for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Var::new("vars_test_a");
        let b = Var::new("vars_test_b");
        assert_ne!(a, b);
        assert_eq!(a, Var::new("vars_test_a"));
        assert_eq!(a.name().as_ref(), "vars_test_a");
    }
}
