//! Shared test oracles, kept deliberately independent of the engine under
//! test: plain enumeration of all `n^(n·n)` tables plus definition-level
//! filters.
//!
//! Each integration-test target uses its own subset of these helpers.
#![allow(dead_code)]

use bolmoufang::magma::{InverseSide, Magma, Side, StructureSpec};
use bolmoufang::term::{holds, Identity};

pub const ALL_SPECS: [StructureSpec; 12] = {
    let mut specs = [StructureSpec {
        neutral: Side::Left,
        inverses: InverseSide::Left,
    }; 12];
    let neutrals = [Side::Left, Side::Right, Side::TwoSided];
    let inverses = [
        InverseSide::Left,
        InverseSide::Right,
        InverseSide::TwoSided,
        InverseSide::None,
    ];
    let mut i = 0;
    while i < 3 {
        let mut j = 0;
        while j < 4 {
            specs[i * 4 + j] = StructureSpec {
                neutral: neutrals[i],
                inverses: inverses[j],
            };
            j += 1;
        }
        i += 1;
    }
    specs
};

/// Every order-`n` table in lexicographic (row-major) order.
pub fn all_tables(n: usize) -> impl Iterator<Item = Magma> {
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    (0..total).map(move |code| {
        let mut c = code;
        let mut flat = vec![0u8; cells];
        for i in (0..cells).rev() {
            flat[i] = (c % n as u64) as u8;
            c /= n as u64;
        }
        Magma::from_rows(
            &(0..n)
                .map(|r| (0..n).map(|col| flat[r * n + col] as usize).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    })
}

/// Per-table facts the oracle filters on.
pub struct OracleEntry {
    pub magma: Magma,
    pub holds: Vec<bool>,
    /// Per spec in `ALL_SPECS` order: the structure is satisfiable at all.
    pub spec_any: [bool; 12],
    /// Per spec: element 0 serves as the demanded neutral with a full
    /// inverse assignment relative to it.
    pub spec_at_zero: [bool; 12],
    pub is_loop: bool,
    pub is_group: bool,
}

pub struct OrderOracle {
    pub n: usize,
    pub entries: Vec<OracleEntry>,
}

impl OrderOracle {
    /// Exhaustive table scan with definition-level checks; meant for
    /// orders up to 3.
    pub fn build(n: usize, identities: &[Identity]) -> OrderOracle {
        let entries = all_tables(n)
            .map(|magma| {
                let holds_flags = identities
                    .iter()
                    .map(|id| holds(id, &magma).unwrap())
                    .collect();
                let mut spec_any = [false; 12];
                let mut spec_at_zero = [false; 12];
                for (i, spec) in ALL_SPECS.iter().enumerate() {
                    if let Some(w) = magma.satisfies_structure(*spec) {
                        spec_any[i] = true;
                        // satisfies_structure returns the least qualifying
                        // neutral, so 0 qualifies iff it is the one returned.
                        spec_at_zero[i] = w.neutral == 0;
                    }
                }
                OracleEntry {
                    is_loop: magma.is_loop(),
                    is_group: magma.is_group(),
                    holds: holds_flags,
                    spec_any,
                    spec_at_zero,
                    magma,
                }
            })
            .collect();
        OrderOracle { n, entries }
    }

    /// All models of spec + identity (by oracle definition), lex order.
    pub fn models(&self, spec_idx: usize, ident_idx: usize) -> Vec<&OracleEntry> {
        self.entries
            .iter()
            .filter(|e| e.spec_any[spec_idx] && e.holds[ident_idx])
            .collect()
    }
}

/// Index of a spec in `ALL_SPECS`.
pub fn spec_index(spec: StructureSpec) -> usize {
    ALL_SPECS
        .iter()
        .position(|s| *s == spec)
        .expect("spec is one of the twelve")
}

/// All loops of order `n` with the neutral at element 0 (rows and columns
/// Latin, first row and column the identity), by direct backtracking.
pub fn loops_with_neutral_zero(n: usize) -> Vec<Magma> {
    let mut rows: Vec<Vec<usize>> = (0..n).map(|_| vec![0; n]).collect();
    for (i, row) in rows.iter_mut().enumerate() {
        row[0] = i;
    }
    rows[0] = (0..n).collect();
    // Row i already contains i (column 0), column j already contains j
    // (row 0); row and column 0 are complete.
    let mut row_used: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut col_used: Vec<u64> = (0..n).map(|j| 1u64 << j).collect();
    row_used[0] = (1u64 << n) - 1;
    col_used[0] = (1u64 << n) - 1;
    let mut out = Vec::new();
    if n == 1 {
        out.push(Magma::from_rows(&rows).unwrap());
        return out;
    }
    fill_loop(n, 1, 1, &mut rows, &mut row_used, &mut col_used, &mut out);
    out
}

fn fill_loop(
    n: usize,
    r: usize,
    c: usize,
    rows: &mut Vec<Vec<usize>>,
    row_used: &mut Vec<u64>,
    col_used: &mut Vec<u64>,
    out: &mut Vec<Magma>,
) {
    if r == n {
        out.push(Magma::from_rows(rows).unwrap());
        return;
    }
    let (next_r, next_c) = if c + 1 == n { (r + 1, 1) } else { (r, c + 1) };
    for v in 0..n {
        let bit = 1u64 << v;
        if row_used[r] & bit != 0 || col_used[c] & bit != 0 {
            continue;
        }
        rows[r][c] = v;
        row_used[r] |= bit;
        col_used[c] |= bit;
        fill_loop(n, next_r, next_c, rows, row_used, col_used, out);
        row_used[r] &= !bit;
        col_used[c] &= !bit;
    }
}

/// Tiny deterministic RNG for sampled sweeps.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}
