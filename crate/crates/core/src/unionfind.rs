/// Disjoint sets over `0..n` with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut node = x;
        while self.parent[node] as usize != root {
            let next = self.parent[node] as usize;
            self.parent[node] = root as u32;
            node = next;
        }
        root
    }

    /// Returns `(kept_root, absorbed_root)` when two classes merge.
    pub fn union(&mut self, x: usize, y: usize) -> Option<(usize, usize)> {
        let (mut x, mut y) = (self.find(x), self.find(y));
        if x == y {
            return None;
        }
        if self.size[x] < self.size[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.parent[y] = x as u32;
        self.size[x] += self.size[y];
        Some((x, y))
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    /// Class ids numbered by first occurrence.
    pub fn classes(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut id = vec![u32::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0u32;
        for v in 0..n {
            let r = self.find(v);
            if id[r] == u32::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        (out, next as usize)
    }
}
