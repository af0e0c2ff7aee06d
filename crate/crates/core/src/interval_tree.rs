//! Static centered interval tree for stabbing queries.

use std::cmp::Ordering;

/// Which ends of the stored intervals are included in a stab.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounds {
    /// `[lo, hi]`
    Closed,
    /// `(lo, hi]`
    LeftOpen,
}

impl Bounds {
    fn contains(self, lo: f64, hi: f64, x: f64) -> bool {
        match self {
            Bounds::Closed => lo <= x && x <= hi,
            Bounds::LeftOpen => lo < x && x <= hi,
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    center: f64,
    /// (lo, item) ascending by lo
    by_lo: Vec<(f64, usize)>,
    /// (hi, item) descending by hi
    by_hi: Vec<(f64, usize)>,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

#[derive(Clone, Debug)]
pub struct IntervalTree<T> {
    items: Vec<(f64, f64, T)>,
    bounds: Bounds,
    root: Option<Box<Node>>,
}

impl<T> IntervalTree<T> {
    pub fn new(items: Vec<(f64, f64, T)>, bounds: Bounds) -> Self {
        let ids: Vec<usize> = (0..items.len()).filter(|&i| items[i].0 <= items[i].1).collect();
        let root = build(&items, ids);
        IntervalTree { items, bounds, root }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = (f64, f64, &T)> {
        self.items.iter().map(|(a, b, t)| (*a, *b, t))
    }

    /// Indices of all intervals containing `x`, ascending.
    pub fn stab(&self, x: f64) -> Vec<usize> {
        let mut out = Vec::new();
        let mut node = self.root.as_deref();
        while let Some(n) = node {
            match x.partial_cmp(&n.center) {
                Some(Ordering::Less) => {
                    for &(lo, i) in &n.by_lo {
                        if lo > x {
                            break;
                        }
                        self.push_if(i, x, &mut out);
                    }
                    node = n.left.as_deref();
                }
                Some(Ordering::Greater) => {
                    for &(hi, i) in &n.by_hi {
                        if hi < x {
                            break;
                        }
                        self.push_if(i, x, &mut out);
                    }
                    node = n.right.as_deref();
                }
                _ => {
                    for &(_, i) in &n.by_lo {
                        self.push_if(i, x, &mut out);
                    }
                    break;
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn push_if(&self, i: usize, x: f64, out: &mut Vec<usize>) {
        let (lo, hi, _) = &self.items[i];
        if self.bounds.contains(*lo, *hi, x) {
            out.push(i);
        }
    }

    pub fn get(&self, i: usize) -> &T {
        &self.items[i].2
    }

    pub fn range(&self, i: usize) -> (f64, f64) {
        (self.items[i].0, self.items[i].1)
    }
}

fn build<T>(items: &[(f64, f64, T)], ids: Vec<usize>) -> Option<Box<Node>> {
    if ids.is_empty() {
        return None;
    }
    let mut ends: Vec<f64> = ids.iter().flat_map(|&i| [items[i].0, items[i].1]).collect();
    ends.sort_by(f64::total_cmp);
    let center = ends[ends.len() / 2];
    let (mut here, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new());
    for i in ids {
        let (lo, hi, _) = &items[i];
        if *hi < center {
            left.push(i);
        } else if *lo > center {
            right.push(i);
        } else {
            here.push(i);
        }
    }
    let mut by_lo: Vec<(f64, usize)> = here.iter().map(|&i| (items[i].0, i)).collect();
    by_lo.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut by_hi: Vec<(f64, usize)> = here.iter().map(|&i| (items[i].1, i)).collect();
    by_hi.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    Some(Box::new(Node { center, by_lo, by_hi, left: build(items, left), right: build(items, right) }))
}
