//! Region tree of a finite chord system in the disk.
//!
//! Chords of a lamination never cross, so their 0-free intervals form a
//! laminar family. The complementary regions of the disk are then exactly:
//! the root region (touching angle 0) and, for each chord, the region just
//! inside it (between the chord and its laminar children). Together with the
//! chords themselves these regions form a tree; Hubbard-tree betweenness and
//! branch-point detection are path queries on it.

use std::collections::BTreeMap;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::lamination::Leaf;

/// A node of the subdivided region tree: a complementary region or a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Root,
    /// The region just inside chord i (between it and its children).
    Inner(usize),
    /// The chord i itself, as the edge between Inner(i) and its parent region.
    Chord(usize),
}

#[derive(Clone, Debug)]
pub struct RegionTree {
    intervals: Vec<(Angle, Angle)>,
    parent_iv: Vec<Option<usize>>,
    children_iv: Vec<Vec<usize>>,
    top: Vec<usize>,
    by_pair: BTreeMap<(Angle, Angle), usize>,
}

impl RegionTree {
    pub fn build(leaves: &[Leaf]) -> Result<RegionTree> {
        let mut ivs: Vec<(Angle, Angle)> = leaves
            .iter()
            .map(|l| (l.a().clone(), l.b().clone()))
            .collect();
        ivs.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        ivs.dedup();
        let n = ivs.len();
        let mut parent_iv: Vec<Option<usize>> = vec![None; n];
        let mut children_iv: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut top = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for i in 0..n {
            while let Some(&t) = stack.last() {
                if ivs[t].1 <= ivs[i].0 {
                    stack.pop();
                } else {
                    break;
                }
            }
            match stack.last() {
                Some(&t) => {
                    if ivs[i].1 > ivs[t].1 {
                        return Err(Error::combinatorial(format!(
                            "chord system is not laminar: ({}, {}) overlaps ({}, {})",
                            ivs[i].0, ivs[i].1, ivs[t].0, ivs[t].1
                        )));
                    }
                    parent_iv[i] = Some(t);
                    children_iv[t].push(i);
                }
                None => top.push(i),
            }
            stack.push(i);
        }
        let by_pair = ivs
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(RegionTree {
            intervals: ivs,
            parent_iv,
            children_iv,
            top,
            by_pair,
        })
    }

    pub fn chord_of_leaf(&self, leaf: &Leaf) -> Option<usize> {
        self.by_pair
            .get(&(leaf.a().clone(), leaf.b().clone()))
            .copied()
    }

    pub fn interval(&self, i: usize) -> &(Angle, Angle) {
        &self.intervals[i]
    }

    pub fn leaf_of_chord(&self, i: usize) -> Leaf {
        Leaf::new(self.intervals[i].0.clone(), self.intervals[i].1.clone()).unwrap()
    }

    /// Chords on the boundary of a region.
    pub fn boundary_chords(&self, region: Node) -> Vec<usize> {
        match region {
            Node::Root => self.top.clone(),
            Node::Inner(i) => {
                let mut v = vec![i];
                v.extend(&self.children_iv[i]);
                v
            }
            Node::Chord(i) => vec![i],
        }
    }

    /// The region on the far side of chord i from the root region.
    pub fn inner_region(&self, i: usize) -> Node {
        Node::Inner(i)
    }

    /// The region on the root side of chord i.
    pub fn outer_region(&self, i: usize) -> Node {
        match self.parent_iv[i] {
            Some(p) => Node::Inner(p),
            None => Node::Root,
        }
    }

    /// Deepest region whose footprint arc strictly contains x.
    pub fn deepest_region_containing(&self, x: &Angle) -> Node {
        let mut cur: Option<usize> = None;
        let mut pool: &[usize] = &self.top;
        'descend: loop {
            for &i in pool {
                let (a, b) = &self.intervals[i];
                if a < x && x < b {
                    cur = Some(i);
                    pool = &self.children_iv[i];
                    continue 'descend;
                }
            }
            return match cur {
                Some(i) => Node::Inner(i),
                None => Node::Root,
            };
        }
    }

    fn parent_node(&self, n: Node) -> Option<Node> {
        match n {
            Node::Root => None,
            Node::Inner(i) => Some(Node::Chord(i)),
            Node::Chord(i) => Some(match self.parent_iv[i] {
                Some(p) => Node::Inner(p),
                None => Node::Root,
            }),
        }
    }

    fn depth(&self, mut n: Node) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent_node(n) {
            n = p;
            d += 1;
        }
        d
    }

    /// Path between two nodes, inclusive of the endpoints.
    pub fn path(&self, a: Node, b: Node) -> Vec<Node> {
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while da > db {
            x = self.parent_node(x).unwrap();
            left.push(x);
            da -= 1;
        }
        while db > da {
            y = self.parent_node(y).unwrap();
            right.push(y);
            db -= 1;
        }
        while x != y {
            x = self.parent_node(x).unwrap();
            y = self.parent_node(y).unwrap();
            left.push(x);
            right.push(y);
        }
        right.pop();
        right.reverse();
        left.extend(right);
        left
    }

    /// True iff m lies strictly between a and b on the tree path.
    pub fn strictly_between(&self, m: Node, a: Node, b: Node) -> bool {
        if m == a || m == b {
            return false;
        }
        let p = self.path(a, b);
        p.len() > 2 && p[1..p.len() - 1].contains(&m)
    }

    /// Median node of three nodes.
    pub fn median(&self, a: Node, b: Node, c: Node) -> Node {
        let pab = self.path(a, b);
        let pac = self.path(a, c);
        // the median is the last common node of the two paths from a
        let mut med = a;
        for (x, y) in pab.iter().zip(pac.iter()) {
            if x == y {
                med = *x;
            } else {
                break;
            }
        }
        med
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(a: &str, b: &str) -> Leaf {
        Leaf::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn rabbit_triangle_region_tree() {
        // alpha triangle plus the co-triangle chord
        let leaves = vec![
            leaf("1/7", "2/7"),
            leaf("2/7", "4/7"),
            leaf("1/7", "4/7"),
            leaf("1/14", "9/14"),
        ];
        let rt = RegionTree::build(&leaves).unwrap();
        let tri_outer = rt.chord_of_leaf(&leaf("1/7", "4/7")).unwrap();
        let g1 = Node::Inner(rt.chord_of_leaf(&leaf("1/7", "2/7")).unwrap());
        let g2 = Node::Inner(rt.chord_of_leaf(&leaf("2/7", "4/7")).unwrap());
        // the triangle face lies strictly between the two sub-gaps
        assert!(rt.strictly_between(Node::Inner(tri_outer), g1, g2));
        assert_eq!(rt.median(g1, g2, Node::Root), Node::Inner(tri_outer));
    }

    #[test]
    fn deepest_region_lookup() {
        let leaves = vec![leaf("1/4", "3/4"), leaf("3/8", "5/8")];
        let rt = RegionTree::build(&leaves).unwrap();
        let outer = rt.chord_of_leaf(&leaf("1/4", "3/4")).unwrap();
        let inner = rt.chord_of_leaf(&leaf("3/8", "5/8")).unwrap();
        assert_eq!(
            rt.deepest_region_containing(&"1/2".parse().unwrap()),
            Node::Inner(inner)
        );
        assert_eq!(
            rt.deepest_region_containing(&"5/16".parse().unwrap()),
            Node::Inner(outer)
        );
        assert_eq!(
            rt.deepest_region_containing(&"1/8".parse().unwrap()),
            Node::Root
        );
    }

    #[test]
    fn non_laminar_rejected() {
        let leaves = vec![leaf("1/8", "1/2"), leaf("1/4", "3/4")];
        assert!(RegionTree::build(&leaves).is_err());
    }
}
