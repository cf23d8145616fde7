//! Union-find with union by size and undo support.
//!
//! No path compression, so every union can be rolled back in O(1); find
//! stays O(log n).

#[derive(Debug, Clone)]
pub struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Merges the sets of `a` and `b`; returns false if they were already
    /// joined. Either way one history entry is pushed.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((ra, rb)));
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            if let Some((ra, rb)) = self.history.pop().flatten() {
                self.parent[rb] = rb;
                self.size[ra] -= self.size[rb];
            }
        }
    }
}
