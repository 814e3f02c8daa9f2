//! The backtracking core: a partial Cayley table, constraint posting for the
//! demanded neutral/inverse structure, and propagation over ground instances
//! of the required identities.
//!
//! Propagation after each assignment runs to a fixpoint:
//!
//! * an identity instance with both sides evaluable and unequal backtracks;
//! * an instance with one side known and the other blocked only on its
//!   outermost lookup forces that cell;
//! * an element whose inverse-candidate set is empty backtracks, and a
//!   singleton candidate set forces the corresponding cells.
//!
//! Cells are decided in row-major order with values tried in ascending
//! order, so the first model reached is the lexicographically least one
//! compatible with the posted structure.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use crate::magma::{InverseSide, Side};
use crate::term::{Identity, Term};

pub(crate) const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(u8),
    One,
    Mul,
}

type Prog = Vec<Op>;

fn compile_term(term: &Term, ops: &mut Prog) -> Result<(), ()> {
    match term {
        Term::Var(v) => ops.push(Op::Var(v.index() as u8)),
        Term::One => ops.push(Op::One),
        Term::Inv(_) => return Err(()),
        Term::Prod(a, b) => {
            compile_term(a, ops)?;
            compile_term(b, ops)?;
            ops.push(Op::Mul);
        }
    }
    Ok(())
}

struct CompiledSide {
    whole: Prog,
    /// Programs for the two root factors when the side is a product.
    split: Option<(Prog, Prog)>,
}

fn compile_side(term: &Term) -> Result<CompiledSide, ()> {
    let mut whole = Vec::new();
    compile_term(term, &mut whole)?;
    let split = if let Term::Prod(a, b) = term {
        let mut left = Vec::new();
        let mut right = Vec::new();
        compile_term(a, &mut left)?;
        compile_term(b, &mut right)?;
        Some((left, right))
    } else {
        None
    };
    Ok(CompiledSide { whole, split })
}

struct CompiledIdentity {
    lhs: CompiledSide,
    rhs: CompiledSide,
    /// Variable slots the identity mentions, ascending.
    used: Vec<u8>,
}

/// A structure-plus-identities constraint set, independent of the order.
pub(crate) struct Constraints {
    neutral: Side,
    inverses: InverseSide,
    idents: Vec<CompiledIdentity>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum CompileError {
    InverseMark,
    /// The constant 1 denotes the two-sided neutral, so posting it is only
    /// sound when the structure demands one.
    OneNeedsTwoSidedNeutral,
}

impl Constraints {
    /// Compiles the identities. Fails on inverse marks, which the engine
    /// does not interpret.
    pub(crate) fn compile(
        neutral: Side,
        inverses: InverseSide,
        identities: &[Identity],
    ) -> Result<Constraints, CompileError> {
        let idents = identities
            .iter()
            .map(|id| {
                if id.uses_one() && neutral != Side::TwoSided {
                    return Err(CompileError::OneNeedsTwoSidedNeutral);
                }
                let compile = |term| compile_side(term).map_err(|()| CompileError::InverseMark);
                let lhs = compile(&id.lhs)?;
                let rhs = compile(&id.rhs)?;
                let flags = id.vars_used();
                let used = (0..3u8).filter(|&i| flags[i as usize]).collect();
                Ok(CompiledIdentity { lhs, rhs, used })
            })
            .collect::<Result<Vec<_>, CompileError>>()?;
        Ok(Constraints {
            neutral,
            inverses,
            idents,
        })
    }
}

#[inline]
fn eval(ops: &[Op], vals: &[u8; 3], cells: &[u8], n: usize, e: u8) -> Option<u8> {
    let mut stack = [0u8; 8];
    let mut sp = 0usize;
    for op in ops {
        match *op {
            Op::Var(i) => {
                stack[sp] = vals[i as usize];
                sp += 1;
            }
            Op::One => {
                stack[sp] = e;
                sp += 1;
            }
            Op::Mul => {
                let q = stack[sp - 1] as usize;
                let p = stack[sp - 2] as usize;
                let v = cells[p * n + q];
                if v == UNSET {
                    return None;
                }
                stack[sp - 2] = v;
                sp -= 1;
            }
        }
    }
    Some(stack[0])
}

/// Shared early-exit switches for a (possibly parallel) run.
pub(crate) struct Coordinator {
    pub(crate) deadline: Option<Instant>,
    /// Any-witness latch; stops everything in first-found mode.
    pub(crate) stop_all: AtomicBool,
    /// Least subtask index that found a witness, for ordered merging.
    pub(crate) best_prefix: AtomicUsize,
    pub(crate) nodes: AtomicU64,
}

impl Coordinator {
    pub(crate) fn new(deadline: Option<Instant>) -> Coordinator {
        Coordinator {
            deadline,
            stop_all: AtomicBool::new(false),
            best_prefix: AtomicUsize::new(usize::MAX),
            nodes: AtomicU64::new(0),
        }
    }
}

/// Why a subtask stopped walking its part of the tree.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum RunStatus {
    /// The subtree was fully traversed.
    Exhausted,
    /// The visitor asked to stop (it found what it wanted).
    Stopped,
    /// The wall-clock deadline passed.
    Budget,
    /// Another subtask made this one irrelevant.
    Aborted,
}

pub(crate) struct Engine<'c> {
    cons: &'c Constraints,
    n: usize,
    /// The designated neutral element the posted structure refers to.
    e: u8,
    cells: Vec<u8>,
    cell_trail: Vec<u16>,
    /// Instances already known to hold on the current partial table;
    /// per identity, a bitset over tuple indices.
    settled: Vec<Vec<u64>>,
    settled_trail: Vec<(u16, u32)>,
    tuples: Vec<u32>,
    pub(crate) nodes: u64,
    tick: u32,
}

struct Mark {
    cells: usize,
    settled: usize,
}

impl<'c> Engine<'c> {
    /// Sets up an order-`n` engine with the neutral posted at element `e`.
    /// Returns `None` when the posted structure is already contradictory.
    pub(crate) fn new(cons: &'c Constraints, n: usize, e: usize) -> Option<Engine<'c>> {
        let tuples: Vec<u32> = cons
            .idents
            .iter()
            .map(|id| (n as u32).pow(id.used.len() as u32))
            .collect();
        let mut engine = Engine {
            cons,
            n,
            e: e as u8,
            cells: vec![UNSET; n * n],
            cell_trail: Vec::with_capacity(n * n),
            settled: tuples
                .iter()
                .map(|&t| vec![0u64; (t as usize).div_ceil(64)])
                .collect(),
            settled_trail: Vec::new(),
            tuples,
            nodes: 0,
            tick: 0,
        };
        let mut ok = true;
        if matches!(cons.neutral, Side::Left | Side::TwoSided) {
            for j in 0..n {
                ok = ok && engine.post(e * n + j, j as u8);
            }
        }
        if matches!(cons.neutral, Side::Right | Side::TwoSided) {
            for i in 0..n {
                ok = ok && engine.post(i * n + e, i as u8);
            }
        }
        if ok && engine.propagate() {
            Some(engine)
        } else {
            None
        }
    }

    fn mark(&self) -> Mark {
        Mark {
            cells: self.cell_trail.len(),
            settled: self.settled_trail.len(),
        }
    }

    fn undo(&mut self, mark: Mark) {
        while self.cell_trail.len() > mark.cells {
            let idx = self.cell_trail.pop().unwrap();
            self.cells[idx as usize] = UNSET;
        }
        while self.settled_trail.len() > mark.settled {
            let (ident, tuple) = self.settled_trail.pop().unwrap();
            self.settled[ident as usize][tuple as usize / 64] &= !(1u64 << (tuple % 64));
        }
    }

    /// Assign-if-consistent: true unless the cell already holds another value.
    fn post(&mut self, idx: usize, v: u8) -> bool {
        match self.cells[idx] {
            UNSET => {
                self.cells[idx] = v;
                self.cell_trail.push(idx as u16);
                true
            }
            cur => cur == v,
        }
    }

    fn settle(&mut self, ident: usize, tuple: u32) {
        self.settled[ident][tuple as usize / 64] |= 1u64 << (tuple % 64);
        self.settled_trail.push((ident as u16, tuple));
    }

    fn is_settled(&self, ident: usize, tuple: u32) -> bool {
        self.settled[ident][tuple as usize / 64] & (1u64 << (tuple % 64)) != 0
    }

    /// Runs identity-instance and inverse-existence propagation to fixpoint.
    /// False means the current partial table admits no completion.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        loop {
            let mut progress = false;
            for ii in 0..self.cons.idents.len() {
                let mut vals = [0u8; 3];
                for tuple in 0..self.tuples[ii] {
                    if self.is_settled(ii, tuple) {
                        continue;
                    }
                    let ident = &self.cons.idents[ii];
                    let mut t = tuple;
                    for &slot in &ident.used {
                        vals[slot as usize] = (t % n as u32) as u8;
                        t /= n as u32;
                    }
                    let l = eval(&ident.lhs.whole, &vals, &self.cells, n, self.e);
                    let r = eval(&ident.rhs.whole, &vals, &self.cells, n, self.e);
                    match (l, r) {
                        (Some(a), Some(b)) => {
                            if a != b {
                                return false;
                            }
                            self.settle(ii, tuple);
                        }
                        (Some(a), None) => {
                            if let Some((p, q)) = self.stuck_root(&self.cons.idents[ii].rhs, &vals)
                            {
                                if !self.post(p as usize * n + q as usize, a) {
                                    return false;
                                }
                                progress = true;
                            }
                        }
                        (None, Some(b)) => {
                            if let Some((p, q)) = self.stuck_root(&self.cons.idents[ii].lhs, &vals)
                            {
                                if !self.post(p as usize * n + q as usize, b) {
                                    return false;
                                }
                                progress = true;
                            }
                        }
                        (None, None) => {
                            // Both sides blocked exactly on the same root
                            // lookup hold vacuously.
                            let lr = self.stuck_root(&self.cons.idents[ii].lhs, &vals);
                            let rr = self.stuck_root(&self.cons.idents[ii].rhs, &vals);
                            if let (Some(a), Some(b)) = (lr, rr) {
                                if a == b {
                                    self.settle(ii, tuple);
                                }
                            }
                        }
                    }
                }
            }
            match self.propagate_inverses() {
                None => return false,
                Some(p) => progress = progress || p,
            }
            if !progress {
                return true;
            }
        }
    }

    /// The root-level missing lookup of a side, when its two factors are
    /// already fully evaluable.
    fn stuck_root(&self, side: &CompiledSide, vals: &[u8; 3]) -> Option<(u8, u8)> {
        let (pl, pr) = side.split.as_ref()?;
        let p = eval(pl, vals, &self.cells, self.n, self.e)?;
        let q = eval(pr, vals, &self.cells, self.n, self.e)?;
        if self.cells[p as usize * self.n + q as usize] == UNSET {
            Some((p, q))
        } else {
            None
        }
    }

    /// Existential inverse constraints relative to the designated neutral:
    /// `None` on wipeout, otherwise whether anything was forced.
    fn propagate_inverses(&mut self) -> Option<bool> {
        let n = self.n;
        let e = self.e;
        let mut progress = false;
        match self.cons.inverses {
            InverseSide::None => {}
            InverseSide::Left => {
                // Every column must contain the neutral: w·x = e for some w.
                for x in 0..n {
                    let mut open = None;
                    let mut open_count = 0;
                    let mut satisfied = false;
                    for w in 0..n {
                        match self.cells[w * n + x] {
                            v if v == e => {
                                satisfied = true;
                                break;
                            }
                            UNSET => {
                                open = Some(w * n + x);
                                open_count += 1;
                            }
                            _ => {}
                        }
                    }
                    if satisfied {
                        continue;
                    }
                    match open_count {
                        0 => return None,
                        1 => {
                            self.post(open.unwrap(), e);
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
            InverseSide::Right => {
                // Every row must contain the neutral: x·w = e for some w.
                for x in 0..n {
                    let mut open = None;
                    let mut open_count = 0;
                    let mut satisfied = false;
                    for w in 0..n {
                        match self.cells[x * n + w] {
                            v if v == e => {
                                satisfied = true;
                                break;
                            }
                            UNSET => {
                                open = Some(x * n + w);
                                open_count += 1;
                            }
                            _ => {}
                        }
                    }
                    if satisfied {
                        continue;
                    }
                    match open_count {
                        0 => return None,
                        1 => {
                            self.post(open.unwrap(), e);
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
            InverseSide::TwoSided => {
                // Some y with x·y = e and y·x = e, for every x.
                for x in 0..n {
                    let mut candidate = None;
                    let mut count = 0;
                    let mut satisfied = false;
                    for y in 0..n {
                        let xy = self.cells[x * n + y];
                        let yx = self.cells[y * n + x];
                        let xy_ok = xy == e || xy == UNSET;
                        let yx_ok = yx == e || yx == UNSET;
                        if xy == e && yx == e {
                            satisfied = true;
                            break;
                        }
                        if xy_ok && yx_ok {
                            candidate = Some(y);
                            count += 1;
                        }
                    }
                    if satisfied {
                        continue;
                    }
                    match count {
                        0 => return None,
                        1 => {
                            let y = candidate.unwrap();
                            if !self.post(x * n + y, e) || !self.post(y * n + x, e) {
                                return None;
                            }
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
        }
        Some(progress)
    }

    fn first_unset(&self) -> Option<usize> {
        self.cells.iter().position(|&v| v == UNSET)
    }

    fn interrupted(&mut self, coord: &Coordinator, my_prefix: usize) -> Option<RunStatus> {
        if coord.stop_all.load(Ordering::Relaxed) {
            return Some(RunStatus::Aborted);
        }
        if coord.best_prefix.load(Ordering::Relaxed) < my_prefix {
            return Some(RunStatus::Aborted);
        }
        self.tick = self.tick.wrapping_add(1);
        if self.tick.is_multiple_of(64) {
            if let Some(deadline) = coord.deadline {
                if Instant::now() >= deadline {
                    return Some(RunStatus::Budget);
                }
            }
        }
        None
    }

    /// Pre-assigns the first `prefix.len()` free cells (row-major, counted
    /// on the fresh engine) to the given values. Returns false when that
    /// subtree is empty, which is an ordinary outcome, not an error.
    pub(crate) fn apply_prefix(&mut self, free_cells: &[usize], prefix: &[u8]) -> bool {
        for (&idx, &v) in free_cells.iter().zip(prefix) {
            match self.cells[idx] {
                UNSET => {
                    if !self.post(idx, v) || !self.propagate() {
                        return false;
                    }
                }
                cur if cur == v => {}
                _ => return false,
            }
        }
        true
    }

    /// The row-major indices of cells still free after structure posting.
    pub(crate) fn free_cells(&self) -> Vec<usize> {
        (0..self.n * self.n)
            .filter(|&i| self.cells[i] == UNSET)
            .collect()
    }

    /// Depth-first traversal of all completions of the current partial
    /// table. The visitor sees each completed, constraint-satisfying table
    /// and may stop the run.
    pub(crate) fn run(
        &mut self,
        coord: &Coordinator,
        my_prefix: usize,
        visit: &mut dyn FnMut(&[u8]) -> ControlFlow<()>,
    ) -> RunStatus {
        let status = self.dfs(coord, my_prefix, visit);
        coord.nodes.fetch_add(self.nodes, Ordering::Relaxed);
        status
    }

    fn dfs(
        &mut self,
        coord: &Coordinator,
        my_prefix: usize,
        visit: &mut dyn FnMut(&[u8]) -> ControlFlow<()>,
    ) -> RunStatus {
        if let Some(stop) = self.interrupted(coord, my_prefix) {
            return stop;
        }
        let Some(idx) = self.first_unset() else {
            return match visit(&self.cells) {
                ControlFlow::Continue(()) => RunStatus::Exhausted,
                ControlFlow::Break(()) => RunStatus::Stopped,
            };
        };
        for v in 0..self.n as u8 {
            self.nodes += 1;
            let mark = self.mark();
            if self.post(idx, v) && self.propagate() {
                match self.dfs(coord, my_prefix, visit) {
                    RunStatus::Exhausted => {}
                    stop => {
                        self.undo(mark);
                        return stop;
                    }
                }
            }
            self.undo(mark);
        }
        RunStatus::Exhausted
    }
}
