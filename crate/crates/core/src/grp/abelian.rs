use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// `Z_{n_1} x ... x Z_{n_k}` with every `n_i >= 2`.
///
/// Elements are addressed by a dense index in row-major order (first
/// coordinate most significant), so index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    /// Factors equal to 1 are dropped; a zero factor is an error.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        Ok(AbelianGroup { factors: factors.into_iter().filter(|&n| n > 1).collect() })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianGroup { factors }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    /// `lcm(n_i)`, and 1 for the trivial group.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn is_odd(&self) -> bool {
        self.order() % 2 == 1
    }

    pub fn index_of(&self, coords: &[i64]) -> usize {
        assert_eq!(coords.len(), self.rank(), "coordinate vector has the wrong length");
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c.rem_euclid(n as i64) as usize)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.rank()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % n as usize) as u32;
            idx /= n as usize;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let s: Vec<i64> = ca.iter().zip(&cb).map(|(&x, &y)| x as i64 + y as i64).collect();
        self.index_of(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<i64> = self.coords(a).iter().map(|&x| -(x as i64)).collect();
        self.index_of(&c)
    }

    pub fn scale(&self, k: i64, a: usize) -> usize {
        let c: Vec<i64> = self.coords(a).iter().map(|&x| k * x as i64).collect();
        self.index_of(&c)
    }

    /// The unique `y` with `2y = x`; only defined for odd order.
    pub fn sqrt(&self, x: usize) -> Result<usize> {
        if !self.is_odd() {
            return Err(Error::EvenOrder(self.order()));
        }
        let c: Vec<i64> = self
            .coords(x)
            .iter()
            .zip(&self.factors)
            .map(|(&xi, &n)| xi as i64 * (n as i64 + 1) / 2)
            .collect();
        Ok(self.index_of(&c))
    }

    /// The character group, identified with a group on the same factors:
    /// the exponent vector `m` names the character `x -> z_N^{sum x_i m_i N/n_i}`.
    pub fn character_group(&self) -> AbelianGroup {
        self.clone()
    }

    /// The standard pairing `(x, chi)` as an exponent of `z_N`, `N = exponent()`.
    pub fn pair(&self, x: usize, chi: usize) -> u32 {
        let n = self.exponent() as u64;
        let (cx, cm) = (self.coords(x), self.coords(chi));
        let mut acc = 0u64;
        for ((&xi, &mi), &ni) in cx.iter().zip(&cm).zip(&self.factors) {
            acc += xi as u64 * mi as u64 * (n / ni as u64);
        }
        (acc % n) as u32
    }

    /// Standard basis vector `e_i` as an element index.
    pub fn basis(&self, i: usize) -> usize {
        let mut c = vec![0i64; self.rank()];
        c[i] = 1;
        self.index_of(&c)
    }

    pub fn label(&self, idx: usize) -> String {
        let c = self.coords(idx);
        match c.len() {
            0 => "0".to_string(),
            1 => c[0].to_string(),
            _ => format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        if self.rank() == 0 {
            return match inner.trim() {
                "" | "0" | "e" => Ok(0),
                _ => Err(Error::Parse(format!("`{text}` is not the identity of the trivial group"))),
            };
        }
        let parts: std::result::Result<Vec<i64>, _> =
            inner.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| Error::Parse(format!("bad abelian element `{text}`")))?;
        if parts.len() != self.rank() {
            return Err(Error::Parse(format!(
                "element `{text}` has {} coordinates, group has rank {}",
                parts.len(),
                self.rank()
            )));
        }
        Ok(self.index_of(&parts))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", s.join("x"))
    }
}
