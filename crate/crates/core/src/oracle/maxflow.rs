//! FIFO push-relabel with global relabeling and the gap heuristic, stopping
//! after the preflow phase (enough for a minimum cut). Terminal arcs are stored per node.

use std::collections::VecDeque;

/// Undirected-capacity graph under construction.
pub(crate) struct FlowGraph {
    n: usize,
    source: Vec<i64>,
    sink: Vec<i64>,
    pairs: Vec<(u32, u32, i64)>,
}

impl FlowGraph {
    pub fn new(n: usize) -> Self {
        FlowGraph { n, source: vec![0; n], sink: vec![0; n], pairs: Vec::new() }
    }

    pub fn add_terminal(&mut self, v: usize, source: i64, sink: i64) {
        self.source[v] += source;
        self.sink[v] += sink;
    }

    /// Arc pair `u ↔ v` with capacity `c` in both directions.
    pub fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        if c > 0 {
            self.pairs.push((u as u32, v as u32, c));
        }
    }

    /// Maximum source side of a minimum cut.
    pub fn min_cut(self) -> Vec<bool> {
        Solver::new(self).run()
    }
}

const NIL: u32 = u32::MAX;

struct Solver {
    n: usize,
    start: Vec<usize>,
    to: Vec<u32>,
    cap: Vec<i64>,
    rev: Vec<u32>,
    sink: Vec<i64>,
    excess: Vec<i64>,
    height: Vec<u32>,
    cur: Vec<usize>,
    active: VecDeque<u32>,
    /// All live nodes per label, as doubly linked lists.
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    max_label: usize,
    /// Label of nodes cut off from the sink.
    dead: u32,
}

impl Solver {
    fn new(g: FlowGraph) -> Self {
        let n = g.n;
        let mut deg = vec![0usize; n + 1];
        for &(u, v, _) in &g.pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + deg[v];
        }
        let m = start[n];
        let mut fill = start.clone();
        let (mut to, mut cap, mut rev) = (vec![0u32; m], vec![0i64; m], vec![0u32; m]);
        for &(u, v, c) in &g.pairs {
            let (a, b) = (fill[u as usize], fill[v as usize]);
            fill[u as usize] += 1;
            fill[v as usize] += 1;
            to[a] = v;
            cap[a] = c;
            rev[a] = b as u32;
            to[b] = u;
            cap[b] = c;
            rev[b] = a as u32;
        }
        // flow straight from source to sink through one node never crosses an arc
        let mut excess = g.source;
        let mut sink = g.sink;
        for v in 0..n {
            let d = excess[v].min(sink[v]);
            excess[v] -= d;
            sink[v] -= d;
        }
        Solver {
            n,
            start,
            to,
            cap,
            rev,
            sink,
            excess,
            height: vec![0; n],
            cur: vec![0; n],
            active: VecDeque::new(),
            head: vec![NIL; n + 2],
            next: vec![NIL; n],
            prev: vec![NIL; n],
            max_label: 0,
            dead: n as u32 + 1,
        }
    }

    fn link(&mut self, v: usize, h: usize) {
        let first = self.head[h];
        self.next[v] = first;
        self.prev[v] = NIL;
        if first != NIL {
            self.prev[first as usize] = v as u32;
        }
        self.head[h] = v as u32;
        self.max_label = self.max_label.max(h);
    }

    fn unlink(&mut self, v: usize, h: usize) {
        let (p, nx) = (self.prev[v], self.next[v]);
        if p == NIL {
            self.head[h] = nx;
        } else {
            self.next[p as usize] = nx;
        }
        if nx != NIL {
            self.prev[nx as usize] = p;
        }
    }

    fn global_relabel(&mut self) {
        let dead = self.dead;
        self.height.iter_mut().for_each(|h| *h = dead);
        let mut q = VecDeque::new();
        for v in 0..self.n {
            if self.sink[v] > 0 {
                self.height[v] = 1;
                q.push_back(v);
            }
        }
        while let Some(u) = q.pop_front() {
            let hu = self.height[u];
            for a in self.start[u]..self.start[u + 1] {
                let w = self.to[a] as usize;
                if self.height[w] == dead && self.cap[self.rev[a] as usize] > 0 {
                    self.height[w] = hu + 1;
                    q.push_back(w);
                }
            }
        }
        self.active.clear();
        self.head.iter_mut().for_each(|h| *h = NIL);
        self.max_label = 0;
        for v in 0..self.n {
            self.cur[v] = self.start[v];
            let h = self.height[v];
            if h < dead {
                self.link(v, h as usize);
                if self.excess[v] > 0 {
                    self.active.push_back(v as u32);
                }
            }
        }
    }

    fn run(mut self) -> Vec<bool> {
        let n = self.n;
        self.global_relabel();
        let m = self.to.len();
        let budget = 20 * n + 2 * m + 1;
        let mut work = 0usize;
        while let Some(v) = self.active.pop_front() {
            let v = v as usize;
            if self.excess[v] == 0 || self.height[v] >= self.dead {
                continue;
            }
            work += self.discharge(v);
            if work > budget {
                work = 0;
                self.global_relabel();
            }
        }
        // nodes that can still reach the sink form the sink side
        let mut reach = vec![false; n];
        let mut q = VecDeque::new();
        for v in 0..n {
            if self.sink[v] > 0 {
                reach[v] = true;
                q.push_back(v);
            }
        }
        while let Some(u) = q.pop_front() {
            for a in self.start[u]..self.start[u + 1] {
                let w = self.to[a] as usize;
                if !reach[w] && self.cap[self.rev[a] as usize] > 0 {
                    reach[w] = true;
                    q.push_back(w);
                }
            }
        }
        reach.into_iter().map(|r| !r).collect()
    }

    fn activate(&mut self, w: usize) {
        if self.height[w] < self.dead {
            self.active.push_back(w as u32);
        }
    }

    /// Every node above an emptied label has lost its way to the sink.
    fn gap(&mut self, empty: usize) {
        for l in empty + 1..=self.max_label {
            let mut v = self.head[l];
            while v != NIL {
                self.height[v as usize] = self.dead;
                v = self.next[v as usize];
            }
            self.head[l] = NIL;
        }
        self.max_label = empty.saturating_sub(1);
    }

    /// Pushes out all excess of `v` or lifts it; returns the work spent.
    fn discharge(&mut self, v: usize) -> usize {
        let dead = self.dead;
        let mut work = 0;
        while self.excess[v] > 0 {
            let hv = self.height[v];
            if hv >= dead {
                return work;
            }
            if hv == 1 && self.sink[v] > 0 {
                let d = self.excess[v].min(self.sink[v]);
                self.sink[v] -= d;
                self.excess[v] -= d;
                continue;
            }
            let end = self.start[v + 1];
            let mut a = self.cur[v];
            while a < end {
                let w = self.to[a] as usize;
                if self.cap[a] > 0 && self.height[w] + 1 == hv {
                    let d = self.excess[v].min(self.cap[a]);
                    self.cap[a] -= d;
                    self.cap[self.rev[a] as usize] += d;
                    self.excess[v] -= d;
                    let was_idle = self.excess[w] == 0;
                    self.excess[w] += d;
                    if was_idle {
                        self.activate(w);
                    }
                    if self.excess[v] == 0 {
                        break;
                    }
                }
                a += 1;
            }
            self.cur[v] = a.min(end);
            if self.excess[v] == 0 {
                break;
            }
            // relabel
            let mut best = if self.sink[v] > 0 { 1 } else { dead };
            for a in self.start[v]..end {
                if self.cap[a] > 0 {
                    best = best.min(self.height[self.to[a] as usize] + 1);
                }
            }
            work += end - self.start[v] + 12;
            self.unlink(v, hv as usize);
            if self.head[hv as usize] == NIL {
                self.height[v] = dead;
                self.gap(hv as usize);
                return work;
            }
            self.height[v] = best.min(dead);
            self.cur[v] = self.start[v];
            if best < dead {
                self.link(v, best as usize);
            }
        }
        if self.excess[v] > 0 {
            self.activate(v);
        }
        work
    }
}
