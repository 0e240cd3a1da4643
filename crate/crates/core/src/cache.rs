//! Process-wide memo tables for expensive pure computations.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

pub struct Memo<K, V> {
    map: Mutex<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn new() -> Self {
        Memo {
            map: Mutex::new(HashMap::new()),
        }
    }

    /// Computes outside the lock; concurrent misses may compute twice but agree.
    pub fn get_or_insert_with(&self, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.lock().unwrap().get(key) {
            return v.clone();
        }
        let v = Arc::new(f());
        self.map
            .lock()
            .unwrap()
            .entry(key.clone())
            .or_insert(v)
            .clone()
    }

    pub fn try_get_or_insert_with<E>(
        &self,
        key: &K,
        f: impl FnOnce() -> Result<V, E>,
    ) -> Result<Arc<V>, E> {
        if let Some(v) = self.map.lock().unwrap().get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        Ok(self
            .map
            .lock()
            .unwrap()
            .entry(key.clone())
            .or_insert(v)
            .clone())
    }
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
