//! Cayley tables of finite groupoids and structural property analysis.
//!
//! A table of order `n` multiplies elements `0..n`; the row index is the
//! left factor, so `get(i, j)` is `i * j`. The text format is: first line the
//! decimal order, then `n` lines of `n` space-separated entries. Blank lines
//! and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Sidedness of a neutral element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::TwoSided];

    pub fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Side, String> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "two-sided" => Ok(Side::TwoSided),
            other => Err(format!("bad side {other:?}: expected left, right or two-sided")),
        }
    }
}

/// Sidedness demanded of inverses, or no inverse requirement at all.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum InverseSide {
    Left,
    Right,
    TwoSided,
    None,
}

impl InverseSide {
    pub const ALL: [InverseSide; 4] = [
        InverseSide::Left,
        InverseSide::Right,
        InverseSide::TwoSided,
        InverseSide::None,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InverseSide::Left => "left",
            InverseSide::Right => "right",
            InverseSide::TwoSided => "two-sided",
            InverseSide::None => "none",
        }
    }
}

impl fmt::Display for InverseSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for InverseSide {
    type Err = String;

    fn from_str(s: &str) -> Result<InverseSide, String> {
        match s {
            "left" => Ok(InverseSide::Left),
            "right" => Ok(InverseSide::Right),
            "two-sided" => Ok(InverseSide::TwoSided),
            "none" => Ok(InverseSide::None),
            other => Err(format!(
                "bad inverse side {other:?}: expected left, right, two-sided or none"
            )),
        }
    }
}

/// Required structure: sidedness of the neutral element and of the
/// per-element inverses relative to that neutral (`x' · x = 1` for left
/// inverses, `x · x' = 1` for right ones).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct StructureSpec {
    pub neutral: Side,
    pub inverses: InverseSide,
}

impl StructureSpec {
    pub fn new(neutral: Side, inverses: InverseSide) -> StructureSpec {
        StructureSpec { neutral, inverses }
    }

    /// Demands for the transposed table: sides flip, two-sided stays.
    pub fn flipped(self) -> StructureSpec {
        let neutral = match self.neutral {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::TwoSided => Side::TwoSided,
        };
        let inverses = match self.inverses {
            InverseSide::Left => InverseSide::Right,
            InverseSide::Right => InverseSide::Left,
            other => other,
        };
        StructureSpec { neutral, inverses }
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "neutral={} inverses={}", self.neutral, self.inverses)
    }
}

/// Error from reading a Cayley table.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TableParseError {
    #[error("empty input: expected the order on the first line")]
    Empty,
    #[error("bad order {0:?}: expected an integer in 1..=255")]
    BadOrder(String),
    #[error("line {line}: bad entry {token:?}: expected an integer")]
    BadToken { line: usize, token: String },
    #[error("line {line}: entry {value} out of range 0..{order}")]
    OutOfRange { line: usize, value: usize, order: usize },
    #[error("line {line}: row has {got} entries, expected {expected}")]
    RowLength { line: usize, got: usize, expected: usize },
    #[error("expected {expected} rows, found {got}")]
    RowCount { expected: usize, got: usize },
}

/// A finite groupoid as an order-`n` Cayley table over elements `0..n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Magma {
    order: usize,
    table: Vec<u8>,
}

impl Magma {
    /// Builds a table from rows, validating shape and entry range.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Magma, TableParseError> {
        let order = rows.len();
        if order == 0 || order > 255 {
            return Err(TableParseError::BadOrder(order.to_string()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(TableParseError::RowLength {
                    line: r + 2,
                    got: row.len(),
                    expected: order,
                });
            }
            for &v in row {
                if v >= order {
                    return Err(TableParseError::OutOfRange {
                        line: r + 2,
                        value: v,
                        order,
                    });
                }
                table.push(v as u8);
            }
        }
        Ok(Magma { order, table })
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u8>) -> Magma {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(table.iter().all(|&v| (v as usize) < order));
        Magma { order, table }
    }

    /// Parses the text format described in the module docs.
    pub fn parse_table(text: &str) -> Result<Magma, TableParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(TableParseError::Empty)?;
        let order: usize = header
            .parse()
            .map_err(|_| TableParseError::BadOrder(header.to_string()))?;
        if order == 0 || order > 255 {
            return Err(TableParseError::BadOrder(header.to_string()));
        }
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
        for (lineno, line) in lines {
            if rows.len() == order {
                return Err(TableParseError::RowCount {
                    expected: order,
                    got: order + 1,
                });
            }
            let mut row = Vec::with_capacity(order);
            for token in line.split_whitespace() {
                let v: usize = token.parse().map_err(|_| TableParseError::BadToken {
                    line: lineno,
                    token: token.to_string(),
                })?;
                if v >= order {
                    return Err(TableParseError::OutOfRange {
                        line: lineno,
                        value: v,
                        order,
                    });
                }
                row.push(v);
            }
            if row.len() != order {
                return Err(TableParseError::RowLength {
                    line: lineno,
                    got: row.len(),
                    expected: order,
                });
            }
            rows.push(row);
        }
        if rows.len() != order {
            return Err(TableParseError::RowCount {
                expected: order,
                got: rows.len(),
            });
        }
        Magma::from_rows(&rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product of `i` and `j` (row = left factor).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j] as usize
    }

    /// The transposed table, i.e. the same set under the opposite operation.
    pub fn opposite(&self) -> Magma {
        let n = self.order;
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                table[j * n + i] = self.table[i * n + j];
            }
        }
        Magma { order: n, table }
    }

    /// Applies the relabeling `perm` (a bijection of `0..n`) to rows, columns
    /// and entries, giving an isomorphic table.
    pub fn relabel(&self, perm: &[usize]) -> Magma {
        let n = self.order;
        assert_eq!(perm.len(), n, "permutation length must match the order");
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i] * n + perm[j]] = perm[self.table[i * n + j] as usize] as u8;
            }
        }
        Magma { order: n, table }
    }

    /// Elements `e` with `e·x = x` for all `x`.
    pub fn left_neutrals(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&e| (0..self.order).all(|x| self.get(e, x) == x))
            .collect()
    }

    /// Elements `e` with `x·e = x` for all `x`.
    pub fn right_neutrals(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&e| (0..self.order).all(|x| self.get(x, e) == x))
            .collect()
    }

    /// The two-sided neutral element, when one exists (it is then unique).
    pub fn two_sided_neutral(&self) -> Option<usize> {
        (0..self.order).find(|&e| {
            (0..self.order).all(|x| self.get(e, x) == x && self.get(x, e) == x)
        })
    }

    /// The smallest-index two-sided inverse of every element relative to the
    /// two-sided neutral, when both exist.
    pub fn two_sided_inverses(&self) -> Option<Vec<usize>> {
        let e = self.two_sided_neutral()?;
        (0..self.order)
            .map(|x| (0..self.order).find(|&y| self.get(x, y) == e && self.get(y, x) == e))
            .collect()
    }

    fn row_is_permutation(&self, i: usize) -> bool {
        let mut seen = 0u64;
        for j in 0..self.order {
            seen |= 1 << self.table[i * self.order + j];
        }
        seen.count_ones() as usize == self.order
    }

    fn col_is_permutation(&self, j: usize) -> bool {
        let mut seen = 0u64;
        for i in 0..self.order {
            seen |= 1 << self.table[i * self.order + j];
        }
        seen.count_ones() as usize == self.order
    }

    /// True iff every left translation is a bijection (every row is a
    /// permutation).
    pub fn left_translations_bijective(&self) -> bool {
        (0..self.order).all(|i| self.row_is_permutation(i))
    }

    /// True iff every right translation is a bijection (every column is a
    /// permutation).
    pub fn right_translations_bijective(&self) -> bool {
        (0..self.order).all(|j| self.col_is_permutation(j))
    }

    pub fn is_latin(&self) -> bool {
        self.left_translations_bijective() && self.right_translations_bijective()
    }

    pub fn is_loop(&self) -> bool {
        self.is_latin() && self.two_sided_neutral().is_some()
    }

    pub fn is_group(&self) -> bool {
        self.is_loop() && self.is_associative()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Smallest `λ` per element with `λ·(x·y) = y` for every `y`, when every
    /// element has one.
    pub fn lip_map(&self) -> Option<Vec<usize>> {
        let n = self.order;
        (0..n)
            .map(|x| (0..n).find(|&l| (0..n).all(|y| self.get(l, self.get(x, y)) == y)))
            .collect()
    }

    /// Smallest `ρ` per element with `(y·x)·ρ = y` for every `y`, when every
    /// element has one.
    pub fn rip_map(&self) -> Option<Vec<usize>> {
        let n = self.order;
        (0..n)
            .map(|x| (0..n).find(|&r| (0..n).all(|y| self.get(self.get(y, x), r) == y)))
            .collect()
    }

    /// Full structural report, every field computed by direct definition.
    pub fn analyze(&self) -> PropertyReport {
        let n = self.order;
        let left_neutrals = self.left_neutrals();
        let right_neutrals = self.right_neutrals();
        let two_sided_neutral = self.two_sided_neutral();
        let chosen_neutral = two_sided_neutral.or_else(|| {
            let mut candidates: Vec<usize> = left_neutrals
                .iter()
                .chain(right_neutrals.iter())
                .copied()
                .collect();
            candidates.sort_unstable();
            candidates.first().copied()
        });
        let (left_inverse_witnesses, right_inverse_witnesses) = match chosen_neutral {
            Some(e) => (
                Some(
                    (0..n)
                        .map(|x| (0..n).filter(|&w| self.get(w, x) == e).collect())
                        .collect(),
                ),
                Some(
                    (0..n)
                        .map(|x| (0..n).filter(|&w| self.get(x, w) == e).collect())
                        .collect(),
                ),
            ),
            None => (None, None),
        };
        let left_translations_bijective = self.left_translations_bijective();
        let right_translations_bijective = self.right_translations_bijective();
        let is_latin = left_translations_bijective && right_translations_bijective;
        let is_loop = is_latin && two_sided_neutral.is_some();
        let is_associative = self.is_associative();
        PropertyReport {
            order: n,
            left_neutrals,
            right_neutrals,
            two_sided_neutral,
            inverse_map_two_sided: self.two_sided_inverses(),
            chosen_neutral,
            left_inverse_witnesses,
            right_inverse_witnesses,
            lip_map: self.lip_map(),
            rip_map: self.rip_map(),
            left_translations_bijective,
            right_translations_bijective,
            is_latin,
            is_loop,
            is_associative,
            is_group: is_loop && is_associative,
        }
    }

    /// Finds a neutral element of the demanded sidedness together with a
    /// per-element inverse choice of the demanded sidedness. Neutral
    /// candidates are tried in increasing order and the smallest one that
    /// admits a full inverse assignment wins; inverse choices take the
    /// smallest qualifying element.
    pub fn satisfies_structure(&self, spec: StructureSpec) -> Option<StructureWitness> {
        let candidates: Vec<usize> = match spec.neutral {
            Side::Left => self.left_neutrals(),
            Side::Right => self.right_neutrals(),
            Side::TwoSided => self.two_sided_neutral().into_iter().collect(),
        };
        for e in candidates {
            if let Some(inverses) = self.inverse_assignment(e, spec.inverses) {
                return Some(StructureWitness {
                    neutral: e,
                    inverses,
                });
            }
        }
        None
    }

    fn inverse_assignment(&self, e: usize, side: InverseSide) -> Option<Option<Vec<usize>>> {
        let n = self.order;
        let pick = |x: usize| -> Option<usize> {
            (0..n).find(|&w| match side {
                InverseSide::Left => self.get(w, x) == e,
                InverseSide::Right => self.get(x, w) == e,
                InverseSide::TwoSided => self.get(x, w) == e && self.get(w, x) == e,
                InverseSide::None => unreachable!(),
            })
        };
        match side {
            InverseSide::None => Some(None),
            _ => (0..n).map(pick).collect::<Option<Vec<usize>>>().map(Some),
        }
    }

    /// Lexicographically minimal relabeling of the table: over relabelings
    /// fixing the two-sided neutral at 0 when one exists, otherwise over all
    /// `n!` relabelings. Two tables are isomorphic iff their canonical forms
    /// are equal. Exhaustive permutation minimization; meant for orders up
    /// to 8.
    pub fn canonical_form(&self) -> Magma {
        let n = self.order;
        let neutral = self.two_sided_neutral();
        let mut best: Option<Magma> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            if let Some(e) = neutral {
                if p[e] != 0 {
                    return;
                }
            }
            let candidate = self.relabel(p);
            if best.as_ref().is_none_or(|b| candidate.table < b.table) {
                best = Some(candidate);
            }
        });
        best.expect("at least the identity relabeling exists")
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for i in 0..self.order {
            for j in 0..self.order {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A neutral element plus a per-element inverse choice, as demanded by a
/// [`StructureSpec`]. `inverses` is `None` when no inverses were demanded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureWitness {
    pub neutral: usize,
    pub inverses: Option<Vec<usize>>,
}

/// Everything [`Magma::analyze`] computes. Witness sets are relative to
/// `chosen_neutral`: the two-sided neutral when present, otherwise the
/// smallest one-sided neutral.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PropertyReport {
    pub order: usize,
    pub left_neutrals: Vec<usize>,
    pub right_neutrals: Vec<usize>,
    pub two_sided_neutral: Option<usize>,
    pub inverse_map_two_sided: Option<Vec<usize>>,
    pub chosen_neutral: Option<usize>,
    pub left_inverse_witnesses: Option<Vec<Vec<usize>>>,
    pub right_inverse_witnesses: Option<Vec<Vec<usize>>>,
    pub lip_map: Option<Vec<usize>>,
    pub rip_map: Option<Vec<usize>>,
    pub left_translations_bijective: bool,
    pub right_translations_bijective: bool,
    pub is_latin: bool,
    pub is_loop: bool,
    pub is_associative: bool,
    pub is_group: bool,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn render_map(map: &[usize]) -> String {
    let inner: Vec<String> = map
        .iter()
        .enumerate()
        .map(|(x, w)| format!("{x}->{w}"))
        .collect();
    inner.join(" ")
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "left neutrals: {}", render_set(&self.left_neutrals))?;
        writeln!(f, "right neutrals: {}", render_set(&self.right_neutrals))?;
        match self.two_sided_neutral {
            Some(e) => writeln!(f, "two-sided neutral: {e}")?,
            None => writeln!(f, "two-sided neutral: none")?,
        }
        match &self.inverse_map_two_sided {
            Some(map) => writeln!(f, "two-sided inverses: {}", render_map(map))?,
            None => writeln!(f, "two-sided inverses: no")?,
        }
        match &self.lip_map {
            Some(map) => writeln!(f, "left inverse property: {}", render_map(map))?,
            None => writeln!(f, "left inverse property: no")?,
        }
        match &self.rip_map {
            Some(map) => writeln!(f, "right inverse property: {}", render_map(map))?,
            None => writeln!(f, "right inverse property: no")?,
        }
        writeln!(
            f,
            "left translations bijective: {}",
            yes_no(self.left_translations_bijective)
        )?;
        writeln!(
            f,
            "right translations bijective: {}",
            yes_no(self.right_translations_bijective)
        )?;
        writeln!(f, "latin: {}", yes_no(self.is_latin))?;
        writeln!(f, "loop: {}", yes_no(self.is_loop))?;
        writeln!(f, "associative: {}", yes_no(self.is_associative))?;
        write!(f, "group: {}", yes_no(self.is_group))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::fixtures;

    #[test]
    fn parse_q1_body() {
        let text = "6\n0 1 2 3 4 5\n1 5 0 4 2 3\n2 4 5 0 3 1\n3 0 4 5 1 2\n4 2 3 1 5 0\n5 3 1 2 0 4\n";
        let m = Magma::parse_table(text).unwrap();
        assert_eq!(m.order(), 6);
        assert_eq!(m.get(1, 1), 5);
        assert_eq!(m, fixtures::q1());
    }

    #[test]
    fn parse_trivial_and_projection() {
        let trivial = Magma::parse_table("1\n0\n").unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.get(0, 0), 0);

        let hall = Magma::parse_table("2\n0 0\n1 1\n").unwrap();
        assert_eq!(hall, fixtures::projection_table());
    }

    #[test]
    fn parse_ignores_comments_and_blank_lines() {
        let text = "# an order-2 table\n\n2\n# row of 0\n0 0\n\n1 1\n";
        let m = Magma::parse_table(text).unwrap();
        assert_eq!(m, fixtures::projection_table());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Magma::parse_table(""), Err(TableParseError::Empty));
        assert_eq!(
            Magma::parse_table("0\n"),
            Err(TableParseError::BadOrder("0".into()))
        );
        assert!(matches!(
            Magma::parse_table("x\n"),
            Err(TableParseError::BadOrder(_))
        ));
        assert!(matches!(
            Magma::parse_table("2\n0 a\n1 1\n"),
            Err(TableParseError::BadToken { .. })
        ));
        assert!(matches!(
            Magma::parse_table("2\n0 2\n1 1\n"),
            Err(TableParseError::OutOfRange { value: 2, .. })
        ));
        assert!(matches!(
            Magma::parse_table("2\n0 0 0\n1 1\n"),
            Err(TableParseError::RowLength { got: 3, .. })
        ));
        assert!(matches!(
            Magma::parse_table("2\n0 0\n"),
            Err(TableParseError::RowCount { got: 1, .. })
        ));
        assert!(matches!(
            Magma::parse_table("2\n0 0\n1 1\n0 1\n"),
            Err(TableParseError::RowCount { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        let q2 = fixtures::q2();
        let text = q2.to_string();
        assert_eq!(Magma::parse_table(&text).unwrap(), q2);
        assert!(text.starts_with("6\n0 1 2 3 4 5\n"));
    }

    #[test]
    fn analyze_q1() {
        let r = fixtures::q1().analyze();
        assert!(r.is_loop);
        assert_eq!(r.two_sided_neutral, Some(0));
        assert!(r.inverse_map_two_sided.is_none());
        assert!(!r.is_group);
    }

    #[test]
    fn analyze_m3m4_table() {
        let r = fixtures::m3m4_not_loop().analyze();
        assert_eq!(r.two_sided_neutral, Some(0));
        assert_eq!(r.inverse_map_two_sided, Some(vec![0, 1, 2]));
        assert!(!r.is_loop);
        assert!(!r.left_translations_bijective);
    }

    #[test]
    fn analyze_right_neutral_latin_table() {
        let r = fixtures::right_neutral_lb_not_loop().analyze();
        assert!(r.right_neutrals.contains(&0));
        assert!(r.left_neutrals.is_empty());
        assert_eq!(r.two_sided_neutral, None);
        assert!(r.is_latin);
        assert!(!r.is_loop);
        assert_eq!(r.chosen_neutral, Some(0));
        // Two-sided inverses relative to the right neutral 0: every element
        // is its own inverse.
        let left = r.left_inverse_witnesses.as_ref().unwrap();
        let right = r.right_inverse_witnesses.as_ref().unwrap();
        for x in 0..3 {
            assert!(left[x].contains(&x));
            assert!(right[x].contains(&x));
        }
    }

    #[test]
    fn analyze_projection_table() {
        let r = fixtures::projection_table().analyze();
        assert!(r.is_associative);
        assert_eq!(r.right_neutrals, vec![0, 1]);
        assert!(r.left_neutrals.is_empty());
        assert!(!r.is_group);
    }

    #[test]
    fn satisfies_structure_examples() {
        let q1 = fixtures::q1();
        let spec = StructureSpec::new(Side::TwoSided, InverseSide::TwoSided);
        assert_eq!(q1.satisfies_structure(spec), None);
        // Element 1 of Q1 has left inverse 3 and right inverse 2, but no
        // two-sided inverse.
        assert_eq!(q1.get(3, 1), 0);
        assert_eq!(q1.get(1, 2), 0);
        assert_eq!(
            q1.satisfies_structure(StructureSpec::new(Side::TwoSided, InverseSide::Left)),
            Some(StructureWitness {
                neutral: 0,
                inverses: Some(vec![0, 3, 1, 2, 5, 4]),
            })
        );

        let trivial = Magma::parse_table("1\n0\n").unwrap();
        for neutral in Side::ALL {
            for inverses in InverseSide::ALL {
                let w = trivial
                    .satisfies_structure(StructureSpec::new(neutral, inverses))
                    .unwrap();
                assert_eq!(w.neutral, 0);
            }
        }

        let t = fixtures::right_neutral_lb_not_loop();
        let w = t
            .satisfies_structure(StructureSpec::new(Side::Right, InverseSide::TwoSided))
            .unwrap();
        assert_eq!(w.neutral, 0);
        assert_eq!(w.inverses, Some(vec![0, 1, 2]));
    }

    #[test]
    fn projection_table_has_left_inverses_only() {
        let hall = fixtures::projection_table();
        let with_left = hall.satisfies_structure(StructureSpec::new(Side::Right, InverseSide::Left));
        assert_eq!(
            with_left,
            Some(StructureWitness {
                neutral: 0,
                inverses: Some(vec![0, 0]),
            })
        );
        assert_eq!(
            hall.satisfies_structure(StructureSpec::new(Side::Right, InverseSide::Right)),
            None
        );
        assert_eq!(
            hall.satisfies_structure(StructureSpec::new(Side::Left, InverseSide::None)),
            None
        );
    }

    #[test]
    fn opposite_examples() {
        let q2 = fixtures::q2();
        assert_eq!(q2.opposite().opposite(), q2);

        let hall = fixtures::projection_table();
        let opp = hall.opposite();
        assert_eq!(opp, Magma::from_rows(&[vec![0, 1], vec![0, 1]]).unwrap());

        let t = fixtures::right_neutral_lb_not_loop();
        assert!(t.opposite().left_neutrals().contains(&0));
    }

    #[test]
    fn canonical_form_examples() {
        let trivial = Magma::parse_table("1\n0\n").unwrap();
        assert_eq!(trivial.canonical_form(), trivial);

        // The two-element table with neutral 1, and its relabeling by the
        // swap, canonicalize identically.
        let m = Magma::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let swapped = m.relabel(&[1, 0]);
        assert_ne!(m, swapped);
        assert_eq!(m.canonical_form(), swapped.canonical_form());
    }

    #[test]
    fn canonical_form_is_relabeling_invariant_at_order_3() {
        // Exhaustive over all 6 permutations for a handful of tables,
        // including ones with and without a two-sided neutral.
        let tables = [
            fixtures::m3m4_not_loop(),
            fixtures::right_neutral_lb_not_loop(),
            Magma::from_rows(&[vec![1, 1, 1], vec![2, 0, 1], vec![0, 2, 2]]).unwrap(),
        ];
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for m in tables {
            let canon = m.canonical_form();
            for p in perms {
                assert_eq!(m.relabel(&p).canonical_form(), canon);
            }
        }
    }

    #[test]
    fn analyze_is_isomorphism_invariant_at_order_3() {
        // All order-3 tables, all 6 relabelings: the boolean fields agree.
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for code in 0..19683u32 {
            let mut c = code;
            let mut flat = [0u8; 9];
            for cell in flat.iter_mut() {
                *cell = (c % 3) as u8;
                c /= 3;
            }
            let m = Magma::from_flat(3, flat.to_vec());
            let r = m.analyze();
            for p in &perms {
                let rp = m.relabel(p).analyze();
                assert_eq!(r.is_latin, rp.is_latin);
                assert_eq!(r.is_loop, rp.is_loop);
                assert_eq!(r.is_associative, rp.is_associative);
                assert_eq!(r.is_group, rp.is_group);
                assert_eq!(
                    r.inverse_map_two_sided.is_some(),
                    rp.inverse_map_two_sided.is_some()
                );
                assert_eq!(r.lip_map.is_some(), rp.lip_map.is_some());
                assert_eq!(r.rip_map.is_some(), rp.rip_map.is_some());
            }
        }
    }

    #[test]
    fn latin_iff_rows_and_columns_are_permutations_exhaustive_order_le_3() {
        for n in 1..=3usize {
            let cells = n * n;
            let total = (n as u64).pow(cells as u32);
            for code in 0..total {
                let mut c = code;
                let mut flat = vec![0u8; cells];
                for cell in flat.iter_mut() {
                    *cell = (c % n as u64) as u8;
                    c /= n as u64;
                }
                let m = Magma::from_flat(n, flat);
                let by_hand = (0..n).all(|i| {
                    let row: std::collections::BTreeSet<usize> = (0..n).map(|j| m.get(i, j)).collect();
                    let col: std::collections::BTreeSet<usize> = (0..n).map(|j| m.get(j, i)).collect();
                    row.len() == n && col.len() == n
                });
                assert_eq!(m.is_latin(), by_hand);
            }
        }
    }

    #[test]
    fn structure_spec_flip() {
        let spec = StructureSpec::new(Side::Right, InverseSide::Left);
        assert_eq!(
            spec.flipped(),
            StructureSpec::new(Side::Left, InverseSide::Right)
        );
        let spec = StructureSpec::new(Side::TwoSided, InverseSide::TwoSided);
        assert_eq!(spec.flipped(), spec);
    }
}
