//! Global registry of indeterminate names.
//!
//! Every computation in the crate shares one registry, so that "lambda"
//! means the same indeterminate in every module. Identifiers are interned
//! in first-use order; the monomial order is derived from that order.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// An interned indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub(crate) u32);

struct Registry {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(|| {
        RwLock::new(Registry {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

/// Interns `name` and returns its id. Repeated calls return the same id.
pub fn var(name: &str) -> VarId {
    {
        let reg = registry().read().unwrap();
        if let Some(&id) = reg.ids.get(name) {
            return VarId(id);
        }
    }
    let mut reg = registry().write().unwrap();
    if let Some(&id) = reg.ids.get(name) {
        return VarId(id);
    }
    let id = reg.names.len() as u32;
    reg.names.push(name.to_string());
    reg.ids.insert(name.to_string(), id);
    VarId(id)
}

/// The name under which the id was interned.
pub fn var_name(v: VarId) -> String {
    registry().read().unwrap().names[v.0 as usize].clone()
}

/// Registers a name of the form `{prefix}` or `{prefix}_{k}` that has not
/// been used yet. Used for regularization variables that must not collide
/// with user indeterminates.
pub fn fresh_var(prefix: &str) -> VarId {
    let reg = registry().read().unwrap();
    if !reg.ids.contains_key(prefix) {
        drop(reg);
        return var(prefix);
    }
    let mut k = 1usize;
    loop {
        let candidate = format!("{prefix}_{k}");
        if !reg.ids.contains_key(&candidate) {
            drop(reg);
            return var(&candidate);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = var("interning_test_x");
        let b = var("interning_test_x");
        assert_eq!(a, b);
        assert_eq!(var_name(a), "interning_test_x");
    }

    #[test]
    fn fresh_names_do_not_collide() {
        let a = fresh_var("interning_test_eps");
        let b = fresh_var("interning_test_eps");
        assert_ne!(a, b);
    }
}
