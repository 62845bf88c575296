//! Non-crossing perfect matchings on the `2n` boundary points of a rectangle.
//!
//! Points are 0-based internally: top points `0..n` left to right, bottom points
//! `n..2n` left to right. The public pair view is 1-based, matching the usual
//! numbering `1..n` on top and `n+1..2n` on the bottom.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching {
    n: usize,
    partner: Vec<u16>,
}

/// Outcome of stacking two diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stacked {
    pub matching: PlanarMatching,
    pub loops: u32,
}

impl PlanarMatching {
    /// Top `j` joined to bottom `j` for every `j`.
    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0u16; 2 * n];
        for j in 0..n {
            partner[j] = (n + j) as u16;
            partner[n + j] = j as u16;
        }
        PlanarMatching { n, partner }
    }

    /// The diagram of `E_i` (1-based `i`): caps on top and bottom at `i, i+1`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorOutOfRange {
                index: i,
                strands: n,
            });
        }
        let mut m = Self::identity(n);
        let (a, b) = (i - 1, i);
        m.partner[a] = b as u16;
        m.partner[b] = a as u16;
        m.partner[n + a] = (n + b) as u16;
        m.partner[n + b] = (n + a) as u16;
        Ok(m)
    }

    /// Builds a matching from 1-based point pairs, checking that it is perfect
    /// and planar.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner = vec![u16::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > 2 * n || b > 2 * n || a == b {
                return Err(Error::Parse(format!("invalid pair ({a}, {b}) for n = {n}")));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != u16::MAX || partner[b] != u16::MAX {
                return Err(Error::Parse(format!(
                    "point used twice in pair ({}, {})",
                    a + 1,
                    b + 1
                )));
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        if partner.contains(&u16::MAX) {
            return Err(Error::Parse("matching is not perfect".into()));
        }
        let m = PlanarMatching { n, partner };
        if !m.is_planar() {
            return Err(Error::Parse("matching is not planar".into()));
        }
        Ok(m)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Sorted 1-based pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n)
            .filter_map(|a| {
                let b = self.partner[a] as usize;
                (a < b).then_some((a + 1, b + 1))
            })
            .collect()
    }

    /// Position of a point on the boundary circle: top left to right, then
    /// bottom right to left.
    fn circle_pos(&self, point: usize) -> usize {
        if point < self.n {
            point
        } else {
            3 * self.n - 1 - point
        }
    }

    /// Nesting criterion: walking the circle, every pair must close the most
    /// recently opened one.
    pub fn is_planar(&self) -> bool {
        let mut order = vec![0usize; 2 * self.n];
        for p in 0..2 * self.n {
            order[self.circle_pos(p)] = p;
        }
        let mut stack = Vec::with_capacity(self.n);
        for &p in &order {
            let q = self.partner[p] as usize;
            if self.circle_pos(q) > self.circle_pos(p) {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Stacks `self` above `below`, returning the resulting diagram and the
    /// number of closed loops removed.
    pub fn stack(&self, below: &PlanarMatching) -> Stacked {
        assert_eq!(self.n, below.n, "stacking diagrams of different widths");
        let n = self.n;
        let mut partner = vec![0u16; 2 * n];
        let mut middle_seen = vec![false; n];

        // Follow a strand entering the middle row at `m`, heading into
        // `upper` (true) or `lower`; returns the outer endpoint it reaches as
        // a point of the result.
        let follow = |mut m: usize, mut upper: bool, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[m] = true;
                if upper {
                    let q = self.partner[n + m] as usize;
                    if q < n {
                        return q;
                    }
                    m = q - n;
                } else {
                    let q = below.partner[m] as usize;
                    if q >= n {
                        return q;
                    }
                    m = q;
                }
                upper = !upper;
            }
        };

        for j in 0..n {
            let p = self.partner[j] as usize;
            let end = if p < n {
                p
            } else {
                follow(p - n, false, &mut middle_seen)
            };
            partner[j] = end as u16;
            partner[end] = j as u16;
        }
        for j in n..2 * n {
            let q = below.partner[j] as usize;
            let end = if q >= n {
                q
            } else {
                follow(q, true, &mut middle_seen)
            };
            partner[j] = end as u16;
            partner[end] = j as u16;
        }

        let mut loops = 0;
        for start in 0..n {
            if middle_seen[start] {
                continue;
            }
            loops += 1;
            let mut m = start;
            let mut upper = true;
            while !middle_seen[m] {
                middle_seen[m] = true;
                m = if upper {
                    self.partner[n + m] as usize - n
                } else {
                    below.partner[m] as usize
                };
                upper = !upper;
            }
        }

        Stacked {
            matching: PlanarMatching { n, partner },
            loops,
        }
    }

    /// Loops formed by joining top `j` to bottom `j` around the rectangle.
    pub fn closure_loops(&self) -> u32 {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                let q = self.partner[p] as usize;
                seen[q] = true;
                p = if q < n { q + n } else { q - n };
            }
        }
        loops
    }

    /// Adds one through-strand on the right.
    pub fn embed(&self) -> PlanarMatching {
        let (n, m) = (self.n, self.n + 1);
        let remap = |p: usize| if p < n { p } else { p + 1 };
        let mut partner = vec![0u16; 2 * m];
        for p in 0..2 * n {
            partner[remap(p)] = remap(self.partner[p] as usize) as u16;
        }
        partner[n] = (m + n) as u16;
        partner[m + n] = n as u16;
        PlanarMatching { n: m, partner }
    }
}

impl fmt::Debug for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarMatching(n={}, {:?})", self.n, self.pairs())
    }
}

/// All non-crossing perfect matchings of width `n`, by brute force over
/// pairings. Used in tests; grows as Catalan(n).
pub fn enumerate_planar(n: usize) -> Vec<PlanarMatching> {
    fn rec(
        free: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize)>,
        n: usize,
        out: &mut Vec<PlanarMatching>,
    ) {
        if free.is_empty() {
            if let Ok(m) = PlanarMatching::from_pairs(n, acc) {
                out.push(m);
            }
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            acc.push((a, b));
            rec(free, acc, n, out);
            acc.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    let mut free: Vec<usize> = (1..=2 * n).collect();
    rec(&mut free, &mut Vec::new(), n, &mut out);
    out.sort();
    out
}
