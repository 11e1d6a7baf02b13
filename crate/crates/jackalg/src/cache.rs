//! A concurrent memo table: reads never observe partial values, and racing
//! fills may compute the same entry twice but store only one.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

pub(crate) struct Memo<K, V> {
    table: OnceLock<RwLock<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            table: OnceLock::new(),
        }
    }

    fn lock(&self) -> &RwLock<HashMap<K, Arc<V>>> {
        self.table.get_or_init(|| RwLock::new(HashMap::new()))
    }

    pub(crate) fn get(&self, key: &K) -> Option<Arc<V>> {
        self.lock().read().expect("memo poisoned").get(key).cloned()
    }

    /// Returns the cached value or computes it outside the lock.
    pub(crate) fn get_or_try_insert<E>(
        &self,
        key: &K,
        build: impl FnOnce() -> Result<V, E>,
    ) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = Arc::new(build()?);
        Ok(self
            .lock()
            .write()
            .expect("memo poisoned")
            .entry(key.clone())
            .or_insert(v)
            .clone())
    }

    pub(crate) fn get_or_insert(&self, key: &K, build: impl FnOnce() -> V) -> Arc<V> {
        self.get_or_try_insert::<std::convert::Infallible>(key, || Ok(build()))
            .unwrap_or_else(|e| match e {})
    }
}
