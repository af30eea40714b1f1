//! Heights in the placement digraph.
//!
//! The height of `p` is the length of the longest placement sequence from `p`
//! to the identity. Tables are dense arrays indexed by lexicographic rank
//! (factorial number system), so a table for `n` has exactly `n!` entries and
//! the identity sits at index 0.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{self, Read, Write};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::perm::{factorial, move_entry, rank_slice, unrank_into, Permutation};

pub const DEFAULT_HEIGHT_CAP: usize = 10;
/// Hard ceiling regardless of the configured cap: `12!` heights do not fit in memory.
pub const MAX_HEIGHT_N: usize = 11;

pub const TABLE_MAGIC: &[u8; 4] = b"HOMH";
pub const TABLE_VERSION: u8 = 1;

const UNKNOWN: u32 = u32::MAX;
const IN_PROGRESS: u32 = u32::MAX - 1;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_HEIGHT_N);
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    Ok(())
}

/// `2^(n-1) - 1`, the largest height in `S_n`.
pub fn max_height_bound(n: usize) -> u64 {
    (1u64 << (n - 1)) - 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightTable {
    n: usize,
    heights: Vec<u32>,
}

struct Frame {
    rank: u64,
    perm: [u8; MAX_HEIGHT_N],
    next_pos: usize,
    best: u32,
}

impl HeightTable {
    /// Memoized depth-first longest-path computation over all of `S_n`.
    /// Fails with [`Error::Cycle`] if the search ever re-enters a state
    /// that is still being expanded.
    pub fn build(n: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        let size = factorial(n) as usize;
        let mut heights = vec![UNKNOWN; size];
        let mut stack: Vec<Frame> = Vec::new();

        for root in 0..size as u64 {
            if heights[root as usize] != UNKNOWN {
                continue;
            }
            let mut perm = [0u8; MAX_HEIGHT_N];
            unrank_into(root, &mut perm[..n]);
            heights[root as usize] = IN_PROGRESS;
            stack.push(Frame {
                rank: root,
                perm,
                next_pos: 0,
                best: 0,
            });

            while let Some(top) = stack.last_mut() {
                let mut pushed = None;
                while top.next_pos < n {
                    let pos = top.next_pos;
                    top.next_pos += 1;
                    let v = top.perm[pos] as usize;
                    if v == pos + 1 {
                        continue;
                    }
                    let mut child = top.perm;
                    move_entry(&mut child[..n], pos, v - 1);
                    let r = rank_slice(&child[..n]);
                    match heights[r as usize] {
                        IN_PROGRESS => {
                            let p = Permutation::from_vec_unchecked(
                                child[..n].iter().map(|&x| x as usize).collect(),
                            );
                            return Err(Error::Cycle(p.to_string()));
                        }
                        UNKNOWN => {
                            pushed = Some(Frame {
                                rank: r,
                                perm: child,
                                next_pos: 0,
                                best: 0,
                            });
                            break;
                        }
                        h => top.best = top.best.max(h + 1),
                    }
                }
                match pushed {
                    Some(frame) => {
                        heights[frame.rank as usize] = IN_PROGRESS;
                        stack.push(frame);
                    }
                    None => {
                        let done = stack.pop().expect("non-empty");
                        heights[done.rank as usize] = done.best;
                        if let Some(parent) = stack.last_mut() {
                            parent.best = parent.best.max(done.best + 1);
                        }
                    }
                }
            }
        }
        Ok(HeightTable { n, heights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn get(&self, p: &Permutation) -> u32 {
        assert_eq!(p.len(), self.n, "permutation length does not match table");
        self.heights[p.rank() as usize]
    }

    pub fn max(&self) -> u32 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// `histogram()[h]` is the number of permutations of height `h`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.max() as usize + 1];
        for &h in &self.heights {
            hist[h as usize] += 1;
        }
        hist
    }

    /// Permutations of height `h`, in rank order.
    pub fn at_height(&self, h: u32) -> Vec<Permutation> {
        self.heights
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == h)
            .map(|(r, _)| Permutation::unrank(self.n, r as u64).expect("rank in range"))
            .collect()
    }

    /// The worst-case starting points: height exactly `2^(n-1) - 1`.
    pub fn worst_case(&self) -> Vec<Permutation> {
        self.at_height(max_height_bound(self.n) as u32)
    }

    /// Little-endian binary export: `HOMH`, version, `n`, two zero bytes,
    /// then one `u32` height per permutation in rank order.
    pub fn write_binary<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(TABLE_MAGIC)?;
        w.write_all(&[TABLE_VERSION, self.n as u8, 0, 0])?;
        let mut buf = Vec::with_capacity(self.heights.len() * 4);
        for &h in &self.heights {
            buf.extend_from_slice(&h.to_le_bytes());
        }
        w.write_all(&buf)
    }

    pub fn read_binary<R: Read>(mut r: R) -> io::Result<Self> {
        let bad = |msg: &str| io::Error::new(io::ErrorKind::InvalidData, msg.to_string());
        let mut header = [0u8; 8];
        r.read_exact(&mut header)?;
        if &header[..4] != TABLE_MAGIC {
            return Err(bad("bad magic"));
        }
        if header[4] != TABLE_VERSION {
            return Err(bad("unsupported version"));
        }
        let n = header[5] as usize;
        if n == 0 || n > MAX_HEIGHT_N {
            return Err(bad("n out of range"));
        }
        let size = factorial(n) as usize;
        let mut body = vec![0u8; size * 4];
        r.read_exact(&mut body)?;
        let heights = body
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Ok(HeightTable { n, heights })
    }
}

/// Height of a single permutation, memoizing only the states reachable from it.
pub fn height(p: &Permutation) -> Result<u32> {
    height_capped(p, DEFAULT_HEIGHT_CAP)
}

pub fn height_capped(p: &Permutation, cap: usize) -> Result<u32> {
    check_cap(p.len(), cap)?;
    let mut memo: HashMap<Permutation, u32> = HashMap::new();
    let mut on_path: HashSet<Permutation> = HashSet::new();
    height_rec(p, &mut memo, &mut on_path)
}

fn height_rec(
    p: &Permutation,
    memo: &mut HashMap<Permutation, u32>,
    on_path: &mut HashSet<Permutation>,
) -> Result<u32> {
    if let Some(&h) = memo.get(p) {
        return Ok(h);
    }
    if !on_path.insert(p.clone()) {
        return Err(Error::Cycle(p.to_string()));
    }
    let mut best = 0;
    for (_, next) in p.placement_successors() {
        best = best.max(height_rec(&next, memo, on_path)? + 1);
    }
    on_path.remove(p);
    memo.insert(p.clone(), best);
    Ok(best)
}

pub fn max_height(n: usize, cap: usize) -> Result<u32> {
    Ok(HeightTable::build(n, cap)?.max())
}

/// `M_n`: permutations of height `2^(n-1) - 1`, in rank order.
pub fn members_of_mn(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    Ok(HeightTable::build(n, cap)?.worst_case())
}

/// Longest displacement sequence from the identity during which value 1
/// never leaves position 1 (neither displaced nor shifted).
pub fn stage1_longest(n: usize, cap: usize) -> Result<u32> {
    check_cap(n, cap.saturating_sub(1).max(1))?;
    let id = Permutation::identity(n)?;
    let mut memo: HashMap<Permutation, u32> = HashMap::new();
    Ok(stage1_rec(&id, &mut memo))
}

fn stage1_rec(p: &Permutation, memo: &mut HashMap<Permutation, u32>) -> u32 {
    if let Some(&h) = memo.get(p) {
        return h;
    }
    let n = p.len();
    let mut best = 0;
    for v in 2..=n {
        if !p.is_home(v) {
            continue;
        }
        for t in (2..=n).filter(|&t| t != v) {
            let next = p.displace(v, t).expect("legal displacement");
            best = best.max(stage1_rec(&next, memo) + 1);
        }
    }
    memo.insert(p.clone(), best);
    best
}

/// Longest displacement path from the identity to every permutation, by
/// relaxation in topological order (Kahn) over the displacement multigraph.
/// Equals the height table when displacement is exactly reversed placement.
pub fn longest_displacement_paths(n: usize, cap: usize) -> Result<Vec<u32>> {
    check_cap(n, cap)?;
    let size = factorial(n) as usize;
    let mut indegree = vec![0u32; size];
    for q in Permutation::all(n) {
        indegree[q.rank() as usize] = q.not_home().len() as u32;
    }
    let mut dist = vec![0u32; size];
    let id = Permutation::identity(n)?;
    let mut queue = VecDeque::from([id]);
    let mut visited = 0usize;
    while let Some(cur) = queue.pop_front() {
        visited += 1;
        let d = dist[cur.rank() as usize];
        for (_, next) in cur.displacement_successors() {
            let r = next.rank() as usize;
            dist[r] = dist[r].max(d + 1);
            indegree[r] -= 1;
            if indegree[r] == 0 {
                queue.push_back(next);
            }
        }
    }
    if visited != size {
        return Err(Error::Cycle(format!(
            "{} states never reached zero indegree",
            size - visited
        )));
    }
    Ok(dist)
}

/// A permutation whose code is `+^k -^(n-2-k)` but which is not in `M_n`.
pub fn code_shape_counterexample(table: &HeightTable) -> Option<Permutation> {
    let top = max_height_bound(table.n()) as u32;
    Permutation::all(table.n()).find(|q| Code::of(q).is_plus_minus() && table.get(q) != top)
}
