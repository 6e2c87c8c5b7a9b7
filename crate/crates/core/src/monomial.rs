use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::symbol::Symbol;

/// Power product stored sparsely as `(symbol id, exponent)` pairs sorted by
/// id, with zero exponents never stored. The total degree is cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    deg: u32,
    vars: SmallVec<[(u16, u16); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(s: Symbol, e: u16) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut vars = SmallVec::new();
        vars.push((s.0, e));
        Monomial { deg: e as u32, vars }
    }

    /// Builds from arbitrary pairs; merges repeats and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, u16)>) -> Self {
        let mut v: Vec<(u16, u16)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(s, e)| (s.0, e))
            .collect();
        v.sort_unstable_by_key(|&(s, _)| s);
        let mut vars: SmallVec<[(u16, u16); 4]> = SmallVec::new();
        for (s, e) in v {
            match vars.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => vars.push((s, e)),
            }
        }
        let deg = vars.iter().map(|&(_, e)| e as u32).sum();
        Monomial { deg, vars }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn exponent(&self, s: Symbol) -> u16 {
        match self.vars.binary_search_by_key(&s.0, |&(v, _)| v) {
            Ok(i) => self.vars[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, u16)> + '_ {
        self.vars.iter().map(|&(s, e)| (Symbol(s), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.vars, &other.vars);
        let mut vars = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    vars.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&a[i..]);
        vars.extend_from_slice(&b[j..]);
        Monomial {
            deg: self.deg + other.deg,
            vars,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        let mut j = 0;
        for &(s, e) in &self.vars {
            while j < other.vars.len() && other.vars[j].0 < s {
                j += 1;
            }
            if j == other.vars.len() || other.vars[j].0 != s || other.vars[j].1 < e {
                return false;
            }
        }
        true
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut vars = SmallVec::with_capacity(other.vars.len());
        let mut i = 0;
        for &(s, e) in &other.vars {
            while i < self.vars.len() && self.vars[i].0 < s {
                i += 1;
            }
            let d = if i < self.vars.len() && self.vars[i].0 == s {
                self.vars[i].1
            } else {
                0
            };
            if e > d {
                vars.push((s, e - d));
            }
        }
        Monomial {
            deg: other.deg - self.deg,
            vars,
        }
    }

    /// Drops symbol `s`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, s: Symbol) -> (u16, Monomial) {
        match self.vars.binary_search_by_key(&s.0, |&(v, _)| v) {
            Ok(i) => {
                let e = self.vars[i].1;
                let mut vars = self.vars.clone();
                vars.remove(i);
                (
                    e,
                    Monomial {
                        deg: self.deg - e as u32,
                        vars,
                    },
                )
            }
            Err(_) => (0, self.clone()),
        }
    }

    pub fn with_exponent(&self, s: Symbol, e: u16) -> Monomial {
        let (_, rest) = self.split_off(s);
        rest.mul(&Monomial::var(s, e))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut vars = SmallVec::new();
        let mut j = 0;
        for &(s, e) in &self.vars {
            while j < other.vars.len() && other.vars[j].0 < s {
                j += 1;
            }
            if j < other.vars.len() && other.vars[j].0 == s {
                vars.push((s, e.min(other.vars[j].1)));
            }
        }
        let deg = vars.iter().map(|&(_, e)| e as u32).sum();
        Monomial { deg, vars }
    }
}

/// Graded lexicographic order; symbol id 0 is most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.vars, &other.vars);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(sa, ea)), Some(&(sb, eb))) => {
                    if sa < sb {
                        return Ordering::Greater;
                    }
                    if sb < sa {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(u16, u16)]) -> Monomial {
        Monomial::from_pairs(p.iter().map(|&(s, e)| (Symbol(s), e)))
    }

    #[test]
    fn grlex_order() {
        // x = 0, y = 1
        assert!(m(&[(0, 2)]) > m(&[(0, 1), (1, 1)]));
        assert!(m(&[(0, 1), (1, 1)]) > m(&[(1, 2)]));
        assert!(m(&[(1, 3)]) > m(&[(0, 2)]));
        assert!(m(&[(0, 1)]) > m(&[(1, 1)]));
        assert!(m(&[]) < m(&[(5, 1)]));
    }

    #[test]
    fn mul_and_divide() {
        let a = m(&[(0, 1), (2, 3)]);
        let b = m(&[(1, 2), (2, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(&[(0, 1), (1, 2), (2, 4)]));
        assert!(a.divides(&ab));
        assert_eq!(a.quotient_of(&ab), b);
        assert!(!ab.divides(&a));
        assert_eq!(ab.split_off(Symbol(2)), (4, m(&[(0, 1), (1, 2)])));
        assert_eq!(a.gcd(&b), m(&[(2, 1)]));
    }
}
