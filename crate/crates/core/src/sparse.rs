//! Finitely supported coefficient maps shared by the module and tensor vectors.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Sparse<K: Ord> {
    map: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn new() -> Self {
        Sparse { map: BTreeMap::new() }
    }

    pub fn singleton(k: K, c: Scalar) -> Self {
        let mut s = Sparse::new();
        s.add_term(k, c);
        s
    }

    /// Accumulates `c` into the coefficient at `k`; exact zeros are dropped.
    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.map.entry(k.clone()).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.map.remove(&k);
        }
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.map.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.map.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.map.keys()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Sparse::new();
        for (k, v) in &self.map {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.map {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.map {
            out.add_term(k.clone(), -v);
        }
        out
    }

    /// Largest coefficient modulus; 0 for the zero vector.
    pub fn max_abs(&self) -> f64 {
        self.map.values().map(Scalar::abs).fold(0.0, f64::max)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut s = Sparse::new();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}
