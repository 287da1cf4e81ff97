//! Rank of a condition prefix: how many elements up to an index qualify.
//!
//! The index machines behind the filter and advance families are all
//! rank in disguise; the lemma checks restate them through this one
//! function.

/// Number of `true` entries in `c[0..=i]`.
pub fn rank(c: &[bool], i: usize) -> usize {
    c[..=i.min(c.len() - 1)].iter().filter(|&&b| b).count()
}

/// Prefix-sum table answering every rank query for one condition.
pub struct Ranks {
    prefix: Vec<usize>,
}

impl Ranks {
    pub fn new(c: &[bool]) -> Self {
        let mut prefix = Vec::with_capacity(c.len() + 1);
        let mut acc = 0;
        prefix.push(0);
        for &b in c {
            acc += usize::from(b);
            prefix.push(acc);
        }
        Ranks { prefix }
    }

    /// `rank(c, i)`; saturates past the end.
    pub fn upto(&self, i: usize) -> usize {
        self.prefix[(i + 1).min(self.prefix.len() - 1)]
    }

    /// Qualifying elements strictly before `i`.
    pub fn before(&self, i: usize) -> usize {
        self.prefix[i.min(self.prefix.len() - 1)]
    }

    /// Index of the `(k+1)`-th qualifying element, if it exists.
    pub fn select(&self, k: usize) -> Option<usize> {
        (0..self.prefix.len() - 1).find(|&i| self.prefix[i + 1] == k + 1 && self.prefix[i] == k)
    }

    /// Last qualifying index at or before `i`, if any.
    pub fn carry(&self, i: usize) -> Option<usize> {
        (0..=i.min(self.prefix.len().saturating_sub(2)))
            .rev()
            .find(|&j| self.prefix[j + 1] > self.prefix[j])
    }

    /// First qualifying index at or after `i`, if any.
    pub fn seek(&self, i: usize) -> Option<usize> {
        (i..self.prefix.len().saturating_sub(1)).find(|&j| self.prefix[j + 1] > self.prefix[j])
    }

    pub fn total(&self) -> usize {
        *self.prefix.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_select_carry() {
        let c = [true, false, false, true, false, true];
        let r = Ranks::new(&c);
        assert_eq!(rank(&c, 0), 1);
        assert_eq!(rank(&c, 2), 1);
        assert_eq!(rank(&c, 5), 3);
        assert_eq!(rank(&c, 99), 3);
        assert_eq!(r.upto(0), 1);
        assert_eq!(r.upto(4), 2);
        assert_eq!(r.upto(99), 3);
        assert_eq!(r.before(0), 0);
        assert_eq!(r.before(4), 2);
        assert_eq!(r.select(0), Some(0));
        assert_eq!(r.select(1), Some(3));
        assert_eq!(r.select(2), Some(5));
        assert_eq!(r.select(3), None);
        assert_eq!(r.carry(0), Some(0));
        assert_eq!(r.carry(2), Some(0));
        assert_eq!(r.carry(4), Some(3));
        assert_eq!(r.carry(5), Some(5));
        assert_eq!(Ranks::new(&[false, false]).carry(1), None);
        assert_eq!(r.seek(0), Some(0));
        assert_eq!(r.seek(1), Some(3));
        assert_eq!(r.seek(4), Some(5));
        assert_eq!(Ranks::new(&[false, false]).seek(0), None);
        assert_eq!(r.total(), 3);
    }
}
