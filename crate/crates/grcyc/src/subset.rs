use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// A k-subset of {1..n}, stored as strictly increasing 1-based members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    members: Vec<usize>,
}

impl Subset {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self> {
        for w in members.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidConfig {
                    reason: format!("subset members not strictly increasing: {:?}", members),
                });
            }
        }
        if let Some(&last) = members.last() {
            if last > n || members[0] < 1 {
                return Err(Error::InvalidConfig {
                    reason: format!("subset members out of range 1..={}: {:?}", n, members),
                });
            }
        }
        Ok(Self { n, members })
    }

    /// Builds from an arbitrary list of distinct 1-based indices.
    pub fn from_unsorted(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Complement inside {1..n}, ascending.
    pub fn complement(&self) -> Subset {
        let members = (1..=self.n).filter(|i| !self.contains(*i)).collect();
        Subset {
            n: self.n,
            members,
        }
    }

    /// Shifts every member by `j` modulo n (1-based wraparound), then sorts.
    pub fn cyclic_shift(&self, j: i64) -> Subset {
        let n = self.n as i64;
        let mut members: Vec<usize> = self
            .members
            .iter()
            .map(|&i| (((i as i64 - 1 + j).rem_euclid(n)) + 1) as usize)
            .collect();
        members.sort_unstable();
        Subset {
            n: self.n,
            members,
        }
    }

    /// The reflection i -> n+1-i.
    pub fn reflect(&self) -> Subset {
        let mut members: Vec<usize> = self.members.iter().map(|&i| self.n + 1 - i).collect();
        members.sort_unstable();
        Subset {
            n: self.n,
            members,
        }
    }

    /// True iff the members form a cyclic interval {j, j+1, ..., j+k-1} mod n.
    pub fn is_cyclic_interval(&self) -> bool {
        let k = self.k();
        if k == 0 || k == self.n {
            return true;
        }
        (0..self.n).any(|start| {
            (0..k).all(|d| self.contains((start + d) % self.n + 1))
        })
    }

    /// Parses "1,3,4".
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let members: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|p| p.trim().parse::<usize>()).collect();
        let members = members.map_err(|e| Error::InvalidConfig {
            reason: format!("bad subset {:?}: {}", s, e),
        })?;
        Self::new(n, members)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All k-subsets of {1..n} in lexicographic order on the member lists,
/// with O(1) lookup from members to lex index.
#[derive(Debug, Clone)]
pub struct SubsetTable {
    k: usize,
    n: usize,
    subsets: Vec<Subset>,
    index: HashMap<Vec<usize>, usize>,
}

impl SubsetTable {
    pub fn new(k: usize, n: usize) -> Self {
        assert!(k <= n, "k={} exceeds n={}", k, n);
        let mut subsets = Vec::with_capacity(binomial(n, k));
        let mut current: Vec<usize> = (1..=k).collect();
        if k == 0 {
            subsets.push(Subset {
                n,
                members: vec![],
            });
        } else {
            loop {
                subsets.push(Subset {
                    n,
                    members: current.clone(),
                });
                // advance to the next k-subset in lex order
                let mut i = k;
                while i > 0 && current[i - 1] == n - (k - i) {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                current[i - 1] += 1;
                for j in i..k {
                    current[j] = current[j - 1] + 1;
                }
            }
        }
        let index = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        Self {
            k,
            n,
            subsets,
            index,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subset> {
        self.subsets.iter()
    }

    pub fn get(&self, i: usize) -> &Subset {
        &self.subsets[i]
    }

    pub fn position(&self, s: &Subset) -> usize {
        *self
            .index
            .get(s.members())
            .unwrap_or_else(|| panic!("subset {} not a {}-subset of 1..={}", s, self.k, self.n))
    }

    pub fn position_of_members(&self, members: &[usize]) -> usize {
        *self
            .index
            .get(members)
            .unwrap_or_else(|| panic!("members {:?} not in table", members))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sign of the permutation sorting `indices` ascending: +1/-1, or 0 on repeats.
pub fn sort_sign(indices: &[usize]) -> i32 {
    let mut sign = 1i32;
    let v = indices;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_enumeration_order() {
        let t = SubsetTable::new(2, 4);
        let got: Vec<String> = t.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["1,2", "1,3", "1,4", "2,3", "2,4", "3,4"]);
        assert_eq!(t.len(), 6);
        assert_eq!(t.position_of_members(&[2, 4]), 4);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn shift_and_reflect() {
        let s = Subset::new(4, vec![1, 4]).unwrap();
        assert_eq!(s.cyclic_shift(1).members(), &[1, 2]);
        assert_eq!(s.reflect().members(), &[1, 4]);
        let s = Subset::new(4, vec![2, 3]).unwrap();
        assert_eq!(s.reflect().members(), &[2, 3]);
        assert_eq!(s.cyclic_shift(2).members(), &[1, 4]);
    }

    #[test]
    fn cyclic_interval_detection() {
        assert!(Subset::new(5, vec![4, 5]).unwrap().is_cyclic_interval());
        assert!(Subset::new(5, vec![1, 5]).unwrap().is_cyclic_interval());
        assert!(!Subset::new(5, vec![1, 3]).unwrap().is_cyclic_interval());
        assert!(Subset::new(5, vec![1, 2, 5]).unwrap().is_cyclic_interval());
    }

    #[test]
    fn sort_sign_basic() {
        assert_eq!(sort_sign(&[1, 2, 3]), 1);
        assert_eq!(sort_sign(&[2, 1, 3]), -1);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(sort_sign(&[1, 1]), 0);
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let s = Subset::parse(7, "2,5,7").unwrap();
        assert_eq!(s.to_string(), "2,5,7");
        assert!(Subset::parse(4, "1,5").is_err());
        assert!(Subset::parse(4, "2,2").is_err());
    }
}
