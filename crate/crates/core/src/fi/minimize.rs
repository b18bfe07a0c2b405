//! Hopcroft partition refinement for involutive partial automata.

use std::collections::HashMap;

/// Language equivalence on an involutive partial automaton: `n` states over
/// `k` letters, where letter `c ^ 1` undoes letter `c` and missing edges are
/// `u32::MAX`. Returns block labels, numbered by first occurrence.
///
/// Every state has at most one preimage under a letter, namely its image
/// under the inverse letter. Starting from the blocks of states with equal
/// sets of defined letters makes the implicit sink stable from the outset,
/// so it never enters the partition.
pub(crate) fn refine_involutive(n: usize, k: usize, delta: &[u32]) -> Vec<u32> {
    debug_assert_eq!(delta.len(), n * k);
    debug_assert!(k <= 64);
    if n == 0 {
        return Vec::new();
    }
    let mut signature = HashMap::new();
    let initial: Vec<u32> = (0..n)
        .map(|s| {
            let mask = (0..k)
                .filter(|&c| delta[s * k + c] != u32::MAX)
                .fold(0u64, |m, c| m | 1 << c);
            let next = signature.len() as u32;
            *signature.entry(mask).or_insert(next)
        })
        .collect();

    let mut p = Partition::new(n, &initial);
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    // blocks with pending letters; a block may appear twice, the stale
    // entry finding nothing left to do
    let mut worklist: Vec<u32> = Vec::new();
    let largest = (0..p.block_count()).max_by_key(|&b| p.size(b)).unwrap_or(0);
    for b in 0..p.block_count() {
        if b != largest {
            p.blocks[b].pending = all;
            worklist.push(b as u32);
        }
    }

    let mut splitter = Vec::new();
    let mut touched = Vec::new();
    while let Some(b) = worklist.pop() {
        if p.block_count() == n {
            break;
        }
        let b = b as usize;
        while p.blocks[b].pending != 0 {
            let c = p.blocks[b].pending.trailing_zeros() as usize;
            p.blocks[b].pending &= !(1 << c);
            splitter.clear();
            splitter.extend_from_slice(p.members(b));
            for &s in &splitter {
                let t = delta[s as usize * k + (c ^ 1)];
                if t != u32::MAX && p.mark(t as usize) {
                    touched.push(p.states[t as usize].block);
                }
            }
            for y in touched.drain(..) {
                let y = y as usize;
                let Some(z) = p.split(y) else { continue };
                let old = p.blocks[y].pending;
                if p.size(z) <= p.size(y) {
                    p.blocks[z].pending = all;
                } else {
                    p.blocks[z].pending = old;
                    p.blocks[y].pending = all;
                    if old == 0 {
                        worklist.push(y as u32);
                    }
                }
                if p.blocks[z].pending != 0 {
                    worklist.push(z as u32);
                }
            }
        }
    }

    let mut label = vec![u32::MAX; p.block_count()];
    let mut next = 0;
    (0..n)
        .map(|s| {
            let b = p.states[s].block as usize;
            if label[b] == u32::MAX {
                label[b] = next;
                next += 1;
            }
            label[b]
        })
        .collect()
}

#[derive(Clone, Copy)]
struct State {
    block: u32,
    loc: u32,
}

#[derive(Clone, Copy)]
struct Block {
    start: u32,
    end: u32,
    marked: u32,
    /// Letters `c` with `(block, c)` waiting in the worklist.
    pending: u64,
}

/// Refinable partition: each block is a contiguous range of `elems`, with
/// its marked elements moved to the front of the range.
struct Partition {
    elems: Vec<u32>,
    states: Vec<State>,
    blocks: Vec<Block>,
    /// Bit set of states alone in their block; such states never move. It
    /// is small enough to stay cached when the other arrays are not.
    single: Vec<u64>,
}

impl Partition {
    /// `initial` labels are dense, numbered from 0.
    fn new(n: usize, initial: &[u32]) -> Self {
        let count = initial.iter().max().map_or(0, |&m| m as usize + 1);
        let mut size = vec![0u32; count];
        for &b in initial {
            size[b as usize] += 1;
        }
        let mut blocks = Vec::with_capacity(count);
        let mut at = 0;
        for &m in &size {
            blocks.push(Block {
                start: at,
                end: at + m,
                marked: 0,
                pending: 0,
            });
            at += m;
        }
        let mut fill: Vec<u32> = blocks.iter().map(|b| b.start).collect();
        let mut elems = vec![0u32; n];
        let mut states = vec![State { block: 0, loc: 0 }; n];
        for s in 0..n {
            let b = initial[s] as usize;
            elems[fill[b] as usize] = s as u32;
            states[s] = State {
                block: b as u32,
                loc: fill[b],
            };
            fill[b] += 1;
        }
        let mut p = Partition {
            elems,
            states,
            blocks,
            single: vec![0; n.div_ceil(64)],
        };
        for b in 0..p.block_count() {
            p.settle(b);
        }
        p
    }

    fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn size(&self, b: usize) -> usize {
        (self.blocks[b].end - self.blocks[b].start) as usize
    }

    fn members(&self, b: usize) -> &[u32] {
        &self.elems[self.blocks[b].start as usize..self.blocks[b].end as usize]
    }

    /// Returns true when `s` is the first element marked in its block.
    /// Singleton blocks cannot split and are left alone.
    fn mark(&mut self, s: usize) -> bool {
        if self.single[s / 64] & 1 << (s % 64) != 0 {
            return false;
        }
        let State { block, loc } = self.states[s];
        let blk = &mut self.blocks[block as usize];
        let boundary = blk.start + blk.marked;
        if loc < boundary {
            return false;
        }
        blk.marked += 1;
        let first = blk.marked == 1;
        let other = self.elems[boundary as usize];
        self.elems.swap(loc as usize, boundary as usize);
        self.states[other as usize].loc = loc;
        self.states[s].loc = boundary;
        first
    }

    /// Splits the marked prefix of `b` into a new block, unless every member
    /// is marked. Clears the marks either way.
    fn split(&mut self, b: usize) -> Option<usize> {
        let blk = self.blocks[b];
        self.blocks[b].marked = 0;
        if blk.marked == blk.end - blk.start {
            return None;
        }
        let z = self.blocks.len();
        let (s, m) = (blk.start, blk.marked);
        self.blocks.push(Block {
            start: s,
            end: s + m,
            marked: 0,
            pending: 0,
        });
        self.blocks[b].start = s + m;
        for i in s..s + m {
            self.states[self.elems[i as usize] as usize].block = z as u32;
        }
        self.settle(b);
        self.settle(z);
        Some(z)
    }

    fn settle(&mut self, b: usize) {
        if self.size(b) == 1 {
            let s = self.elems[self.blocks[b].start as usize] as usize;
            self.single[s / 64] |= 1 << (s % 64);
        }
    }
}
