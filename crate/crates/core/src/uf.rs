//! Union-find structures shared by the skeleton, surface and cell-complex code.

/// Plain disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Dense labels `0..k` for the classes, numbered in order of first
    /// appearance of their smallest member.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            out[x] = root_label[r];
        }
        (out, next)
    }
}

/// Disjoint sets whose members carry a relative orientation bit.
///
/// `union(a, b, flip)` records `orient(a) = orient(b) ^ flip`. A class in
/// which two paths disagree is marked inconsistent (e.g. an edge identified
/// with itself in reverse).
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    size: Vec<usize>,
    conflict: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            size: vec![1; n],
            conflict: vec![false; n],
        }
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Rewrite the path bottom-up so every node points at the root.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    pub fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != flip {
                self.conflict[ra] = true;
            }
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ flip;
        self.size[big] += self.size[small];
        self.conflict[big] |= self.conflict[small];
    }

    pub fn is_conflicted(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.conflict[r]
    }

    /// Parity of `a` relative to `b`, or `None` if they are in different sets.
    pub fn relative(&mut self, a: usize, b: usize) -> Option<bool> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        (ra == rb).then_some(pa ^ pb)
    }

    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let (r, _) = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            out[x] = root_label[r];
        }
        (out, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_conflict_detected() {
        let mut uf = ParityUnionFind::new(4);
        uf.union(0, 1, true);
        uf.union(1, 2, false);
        assert_eq!(uf.relative(0, 2), Some(true));
        assert!(!uf.is_conflicted(0));
        uf.union(2, 0, false);
        assert!(uf.is_conflicted(1));
        assert!(!uf.is_conflicted(3));
        assert_eq!(uf.relative(0, 3), None);
    }

    #[test]
    fn labels_follow_first_appearance() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 0);
        let (labels, k) = uf.labels();
        assert_eq!(k, 3);
        assert_eq!(labels, vec![0, 1, 2, 1, 0]);
    }
}
