//! Terms, identities, and the systematic `Xij` code for identities of
//! Bol-Moufang type.
//!
//! An identity of Bol-Moufang type contains three distinct variables in the
//! same left-to-right order on both sides, with exactly one variable repeated
//! on each side. The code `Xij` picks the variable pattern by letter
//! (`A` = xxyz, `B` = xyxz, `C` = xyyz, `D` = xyzx, `E` = xyzy, `F` = xyzz)
//! and the two parenthesizations by digits `1..=5`
//! (`1` = o(o(oo)), `2` = o((oo)o), `3` = (oo)(oo), `4` = (o(oo))o,
//! `5` = ((oo)o)o), with `i < j`. There are exactly 60 such codes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::magma::Magma;

/// Variable symbols usable in identities. The alphabet is fixed: every
/// identity handled here mentions at most three distinct variables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A term over one binary operation, the neutral constant `1`, and a formal
/// inverse mark.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Var),
    One,
    Inv(Box<Term>),
    Prod(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn prod(left: Term, right: Term) -> Term {
        Term::Prod(Box::new(left), Box::new(right))
    }

    pub fn inv(inner: Term) -> Term {
        Term::Inv(Box::new(inner))
    }

    /// Mirror image: recursively swaps the factors of every product. A term
    /// holds in a table exactly when its mirror holds in the transposed table.
    pub fn mirror(&self) -> Term {
        match self {
            Term::Var(v) => Term::Var(*v),
            Term::One => Term::One,
            Term::Inv(t) => Term::inv(t.mirror()),
            Term::Prod(a, b) => Term::prod(b.mirror(), a.mirror()),
        }
    }

    fn rename(&self, map: &[Option<Var>; 3]) -> Term {
        match self {
            Term::Var(v) => Term::Var(map[v.index()].expect("rename map covers all variables")),
            Term::One => Term::One,
            Term::Inv(t) => Term::inv(t.rename(map)),
            Term::Prod(a, b) => Term::prod(a.rename(map), b.rename(map)),
        }
    }

    /// Variables in left-to-right reading order, with repeats.
    pub fn var_sequence(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::One => {}
            Term::Inv(t) => t.collect_vars(out),
            Term::Prod(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn uses_one(&self) -> bool {
        match self {
            Term::One => true,
            Term::Var(_) => false,
            Term::Inv(t) => t.uses_one(),
            Term::Prod(a, b) => a.uses_one() || b.uses_one(),
        }
    }

    fn uses_inv(&self) -> bool {
        match self {
            Term::Inv(_) => true,
            Term::Var(_) | Term::One => false,
            Term::Prod(a, b) => a.uses_inv() || b.uses_inv(),
        }
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, parenthesize: bool) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::One => write!(f, "1"),
            Term::Inv(t) => {
                t.render(f, true)?;
                write!(f, "^-1")
            }
            Term::Prod(a, b) => {
                if parenthesize {
                    write!(f, "(")?;
                }
                a.render(f, true)?;
                b.render(f, true)?;
                if parenthesize {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, false)
    }
}

/// The laws referred to by a short name rather than a code. `Assoc` is
/// x(yz) = (xy)z; the Bol-Moufang ones resolve through their codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NamedLaw {
    La,
    Ra,
    Lb,
    Rb,
    M1,
    M2,
    M3,
    M4,
    C,
    Flex,
    Assoc,
}

impl NamedLaw {
    pub const ALL: [NamedLaw; 11] = [
        NamedLaw::La,
        NamedLaw::Ra,
        NamedLaw::Lb,
        NamedLaw::Rb,
        NamedLaw::M1,
        NamedLaw::M2,
        NamedLaw::M3,
        NamedLaw::M4,
        NamedLaw::C,
        NamedLaw::Flex,
        NamedLaw::Assoc,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NamedLaw::La => "LA",
            NamedLaw::Ra => "RA",
            NamedLaw::Lb => "LB",
            NamedLaw::Rb => "RB",
            NamedLaw::M1 => "M1",
            NamedLaw::M2 => "M2",
            NamedLaw::M3 => "M3",
            NamedLaw::M4 => "M4",
            NamedLaw::C => "C",
            NamedLaw::Flex => "FLEX",
            NamedLaw::Assoc => "ASSOC",
        }
    }

    /// The `Xij` code of the law, for laws of Bol-Moufang type.
    pub fn code(self) -> Option<BMCode> {
        let code = match self {
            NamedLaw::Lb => "B14",
            NamedLaw::Rb => "E25",
            NamedLaw::M1 => "B15",
            NamedLaw::M2 => "E15",
            NamedLaw::M3 => "D23",
            NamedLaw::M4 => "D34",
            NamedLaw::C => "C15",
            _ => return None,
        };
        Some(code.parse().expect("anchor codes are valid"))
    }

    pub fn dual(self) -> NamedLaw {
        match self {
            NamedLaw::La => NamedLaw::Ra,
            NamedLaw::Ra => NamedLaw::La,
            NamedLaw::Lb => NamedLaw::Rb,
            NamedLaw::Rb => NamedLaw::Lb,
            NamedLaw::M1 => NamedLaw::M2,
            NamedLaw::M2 => NamedLaw::M1,
            NamedLaw::M3 => NamedLaw::M4,
            NamedLaw::M4 => NamedLaw::M3,
            NamedLaw::C => NamedLaw::C,
            NamedLaw::Flex => NamedLaw::Flex,
            NamedLaw::Assoc => NamedLaw::Assoc,
        }
    }

    /// The identity the name stands for.
    pub fn identity(self) -> Identity {
        use Var::*;
        let v = Term::var;
        let p = Term::prod;
        let (lhs, rhs) = match self {
            // x(xy) = (xx)y
            NamedLaw::La => (p(v(X), p(v(X), v(Y))), p(p(v(X), v(X)), v(Y))),
            // x(yy) = (xy)y
            NamedLaw::Ra => (p(v(X), p(v(Y), v(Y))), p(p(v(X), v(Y)), v(Y))),
            // (xy)x = x(yx)
            NamedLaw::Flex => (p(p(v(X), v(Y)), v(X)), p(v(X), p(v(Y), v(X)))),
            // x(yz) = (xy)z
            NamedLaw::Assoc => (p(v(X), p(v(Y), v(Z))), p(p(v(X), v(Y)), v(Z))),
            _ => {
                let id = decode_bm(self.code().expect("coded law"));
                return Identity {
                    lhs: id.lhs,
                    rhs: id.rhs,
                    tag: Some(IdentityTag::Named(self)),
                };
            }
        };
        Identity {
            lhs,
            rhs,
            tag: Some(IdentityTag::Named(self)),
        }
    }
}

impl fmt::Display for NamedLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Label attached to an identity: either a short law name or an `Xij` code.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IdentityTag {
    Named(NamedLaw),
    Code(BMCode),
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityTag::Named(n) => write!(f, "{n}"),
            IdentityTag::Code(c) => write!(f, "{c}"),
        }
    }
}

/// An ordered pair of terms asserted equal for all assignments of their
/// variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub tag: Option<IdentityTag>,
}

impl Identity {
    pub fn untagged(lhs: Term, rhs: Term) -> Identity {
        Identity {
            lhs,
            rhs,
            tag: None,
        }
    }

    /// Equality of the two sides as an unordered pair, ignoring tags.
    pub fn same_pair(&self, other: &Identity) -> bool {
        (self.lhs == other.lhs && self.rhs == other.rhs)
            || (self.lhs == other.rhs && self.rhs == other.lhs)
    }

    pub fn label(&self) -> String {
        match &self.tag {
            Some(tag) => tag.to_string(),
            None => self.to_string(),
        }
    }

    pub fn uses_one(&self) -> bool {
        self.lhs.uses_one() || self.rhs.uses_one()
    }

    pub fn uses_inv(&self) -> bool {
        self.lhs.uses_inv() || self.rhs.uses_inv()
    }

    /// Which of x, y, z occur in the identity.
    pub fn vars_used(&self) -> [bool; 3] {
        let mut used = [false; 3];
        for v in self
            .lhs
            .var_sequence()
            .into_iter()
            .chain(self.rhs.var_sequence())
        {
            used[v.index()] = true;
        }
        used
    }

    pub fn dual(&self) -> Identity {
        dual_identity(self)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Variable pattern letter of an `Xij` code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Letter {
    pub const ALL: [Letter; 6] = [
        Letter::A,
        Letter::B,
        Letter::C,
        Letter::D,
        Letter::E,
        Letter::F,
    ];

    pub fn pattern(self) -> [Var; 4] {
        use Var::*;
        match self {
            Letter::A => [X, X, Y, Z],
            Letter::B => [X, Y, X, Z],
            Letter::C => [X, Y, Y, Z],
            Letter::D => [X, Y, Z, X],
            Letter::E => [X, Y, Z, Y],
            Letter::F => [X, Y, Z, Z],
        }
    }

    pub fn dual(self) -> Letter {
        match self {
            Letter::A => Letter::F,
            Letter::B => Letter::E,
            Letter::C => Letter::C,
            Letter::D => Letter::D,
            Letter::E => Letter::B,
            Letter::F => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Error from parsing or constructing an `Xij` code.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum CodeError {
    #[error("code must be a letter followed by two digits, got {0:?}")]
    BadShape(String),
    #[error("bad pattern letter {0:?}: expected one of A..F")]
    BadLetter(char),
    #[error("bad bracketing digit {0:?}: expected 1..5")]
    BadDigit(char),
    #[error("bracketing indices must satisfy i < j, got i={0} j={1}")]
    NonIncreasing(u8, u8),
}

/// A systematic code `Xij` for an identity of Bol-Moufang type.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BMCode {
    letter: Letter,
    i: u8,
    j: u8,
}

impl BMCode {
    pub fn new(letter: Letter, i: u8, j: u8) -> Result<BMCode, CodeError> {
        if !(1..=5).contains(&i) {
            return Err(CodeError::BadDigit(digit_char(i)));
        }
        if !(1..=5).contains(&j) {
            return Err(CodeError::BadDigit(digit_char(j)));
        }
        if i >= j {
            return Err(CodeError::NonIncreasing(i, j));
        }
        Ok(BMCode { letter, i, j })
    }

    pub fn letter(self) -> Letter {
        self.letter
    }

    /// Bracketing index of the left-hand side (1..=5).
    pub fn i(self) -> u8 {
        self.i
    }

    /// Bracketing index of the right-hand side (1..=5).
    pub fn j(self) -> u8 {
        self.j
    }

    /// The code of the dual identity: X'j'i' with A'=F, B'=E, C'=C, D'=D and
    /// 1'=5, 2'=4, 3'=3.
    pub fn dual(self) -> BMCode {
        BMCode::new(self.letter.dual(), 6 - self.j, 6 - self.i)
            .expect("dual of a valid code is valid")
    }

    /// All 60 codes in lexicographic order.
    pub fn all() -> Vec<BMCode> {
        let mut out = Vec::with_capacity(60);
        for letter in Letter::ALL {
            for i in 1..=5u8 {
                for j in i + 1..=5 {
                    out.push(BMCode { letter, i, j });
                }
            }
        }
        out
    }
}

fn digit_char(d: u8) -> char {
    char::from_digit(d as u32, 10).unwrap_or('?')
}

impl FromStr for BMCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<BMCode, CodeError> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 3 {
            return Err(CodeError::BadShape(s.to_string()));
        }
        let letter = Letter::from_char(chars[0]).ok_or(CodeError::BadLetter(chars[0]))?;
        let i = chars[1].to_digit(10).ok_or(CodeError::BadDigit(chars[1]))? as u8;
        let j = chars[2].to_digit(10).ok_or(CodeError::BadDigit(chars[2]))? as u8;
        BMCode::new(letter, i, j)
    }
}

impl fmt::Display for BMCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.letter, self.i, self.j)
    }
}

/// Builds the product tree with the given bracketing shape over four leaves.
fn bracket(shape: u8, leaves: [Term; 4]) -> Term {
    let [a, b, c, d] = leaves;
    let p = Term::prod;
    match shape {
        1 => p(a, p(b, p(c, d))),
        2 => p(a, p(p(b, c), d)),
        3 => p(p(a, b), p(c, d)),
        4 => p(p(a, p(b, c)), d),
        5 => p(p(p(a, b), c), d),
        _ => unreachable!("bracketing shapes are 1..=5"),
    }
}

/// Recognizes which of the five bracketing shapes a four-leaf product tree
/// has; `None` if the term is not a product of exactly four leaves.
fn shape_of(term: &Term) -> Option<u8> {
    fn leaf(t: &Term) -> bool {
        matches!(t, Term::Var(_))
    }
    if let Term::Prod(a, b) = term {
        match (&**a, &**b) {
            (l, Term::Prod(c, d)) if leaf(l) => match (&**c, &**d) {
                (m, Term::Prod(x, y)) if leaf(m) && leaf(x) && leaf(y) => Some(1),
                (Term::Prod(x, y), m) if leaf(m) && leaf(x) && leaf(y) => Some(2),
                _ => None,
            },
            (Term::Prod(x, y), Term::Prod(u, v)) if leaf(x) && leaf(y) && leaf(u) && leaf(v) => {
                Some(3)
            }
            (Term::Prod(c, d), r) if leaf(r) => match (&**c, &**d) {
                (m, Term::Prod(x, y)) if leaf(m) && leaf(x) && leaf(y) => Some(4),
                (Term::Prod(x, y), m) if leaf(m) && leaf(x) && leaf(y) => Some(5),
                _ => None,
            },
            _ => None,
        }
    } else {
        None
    }
}

/// Decodes `Xij` into the identity whose left side uses bracketing `i` and
/// right side bracketing `j` over the letter's variable pattern.
pub fn decode_bm(code: BMCode) -> Identity {
    let pattern = code.letter().pattern();
    let leaves = || pattern.map(Term::var);
    Identity {
        lhs: bracket(code.i(), leaves()),
        rhs: bracket(code.j(), leaves()),
        tag: Some(IdentityTag::Code(code)),
    }
}

/// Error from classifying an identity as Bol-Moufang-coded.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum EncodeError {
    #[error("identity mentions the constant 1 or an inverse mark")]
    NonPlainTerm,
    #[error("each side must be a product of exactly four variables")]
    BadArity,
    #[error("the two sides must list the same variables in the same order")]
    SequenceMismatch,
    #[error("variable sequence matches no pattern: need three distinct variables, one repeated")]
    BadPattern,
    #[error("both sides carry the same bracketing; codes require i < j")]
    Degenerate,
}

/// Inverse of [`decode_bm`]: recognizes the code of an identity of
/// Bol-Moufang type, up to renaming variables in left-to-right order and up
/// to swapping the two sides.
pub fn encode_bm(identity: &Identity) -> Result<BMCode, EncodeError> {
    if identity.uses_one() || identity.uses_inv() {
        return Err(EncodeError::NonPlainTerm);
    }
    let lhs_seq = identity.lhs.var_sequence();
    let rhs_seq = identity.rhs.var_sequence();
    if lhs_seq.len() != 4 || rhs_seq.len() != 4 {
        return Err(EncodeError::BadArity);
    }
    if lhs_seq != rhs_seq {
        return Err(EncodeError::SequenceMismatch);
    }
    // Normalize variable names to first-occurrence order and match a pattern.
    let mut map: [Option<Var>; 3] = [None; 3];
    let mut next = 0usize;
    let mut normalized = [Var::X; 4];
    for (slot, v) in normalized.iter_mut().zip(&lhs_seq) {
        let entry = &mut map[v.index()];
        if entry.is_none() {
            if next >= 3 {
                return Err(EncodeError::BadPattern);
            }
            *entry = Some(Var::from_index(next));
            next += 1;
        }
        *slot = entry.unwrap();
    }
    let letter = Letter::ALL
        .into_iter()
        .find(|l| l.pattern() == normalized)
        .ok_or(EncodeError::BadPattern)?;
    let i = shape_of(&identity.lhs).ok_or(EncodeError::BadArity)?;
    let j = shape_of(&identity.rhs).ok_or(EncodeError::BadArity)?;
    if i == j {
        return Err(EncodeError::Degenerate);
    }
    Ok(BMCode {
        letter,
        i: i.min(j),
        j: i.max(j),
    })
}

/// All 60 identities of Bol-Moufang type, in lexicographic code order.
pub fn enumerate_bm() -> Vec<Identity> {
    BMCode::all().into_iter().map(decode_bm).collect()
}

/// The dual (mirror) identity: swap the factors of every product, read the
/// result with the two sides exchanged, and rename variables back into
/// left-to-right order. Coded and named tags are dualized along.
///
/// On a coded identity the result's code is `X'j'i'`; applying the operation
/// twice returns the original identity.
pub fn dual_identity(identity: &Identity) -> Identity {
    // Exchanging the sides restores ascending bracketing order for coded
    // identities and makes self-dual laws literally fixed points.
    let lhs = identity.rhs.mirror();
    let rhs = identity.lhs.mirror();
    let mut map: [Option<Var>; 3] = [None; 3];
    let mut next = 0usize;
    for v in lhs.var_sequence().into_iter().chain(rhs.var_sequence()) {
        let entry = &mut map[v.index()];
        if entry.is_none() {
            *entry = Some(Var::from_index(next));
            next += 1;
        }
    }
    let tag = match identity.tag {
        Some(IdentityTag::Code(c)) => Some(IdentityTag::Code(c.dual())),
        Some(IdentityTag::Named(n)) => Some(IdentityTag::Named(n.dual())),
        None => None,
    };
    Identity {
        lhs: lhs.rename(&map),
        rhs: rhs.rename(&map),
        tag,
    }
}

/// Error from evaluating a term on a table.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum EvalError {
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(Var),
    #[error("term uses the constant 1 but the table has no two-sided neutral element")]
    NoNeutral,
    #[error("term uses an inverse mark but the table lacks two-sided inverses")]
    NoInverses,
}

/// A (partial) assignment of elements to the three variables.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct Assignment {
    vals: [Option<usize>; 3],
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn xyz(x: usize, y: usize, z: usize) -> Assignment {
        Assignment {
            vals: [Some(x), Some(y), Some(z)],
        }
    }

    pub fn set(mut self, var: Var, value: usize) -> Assignment {
        self.vals[var.index()] = Some(value);
        self
    }

    pub fn get(&self, var: Var) -> Option<usize> {
        self.vals[var.index()]
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            if let Some(val) = self.get(v) {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}={val}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Structure of the table that `1` and the inverse mark refer to, resolved
/// once per table.
struct EvalStructure {
    neutral: Option<usize>,
    inverses: Option<Vec<usize>>,
}

impl EvalStructure {
    fn for_magma(magma: &Magma, need_one: bool, need_inv: bool) -> Result<EvalStructure, EvalError> {
        let neutral = if need_one || need_inv {
            magma.two_sided_neutral()
        } else {
            None
        };
        if need_one && neutral.is_none() {
            return Err(EvalError::NoNeutral);
        }
        let inverses = if need_inv {
            Some(magma.two_sided_inverses().ok_or(EvalError::NoInverses)?)
        } else {
            None
        };
        Ok(EvalStructure { neutral, inverses })
    }
}

fn eval_with(
    term: &Term,
    magma: &Magma,
    assignment: &Assignment,
    structure: &EvalStructure,
) -> Result<usize, EvalError> {
    match term {
        Term::Var(v) => assignment
            .get(*v)
            .ok_or(EvalError::UnassignedVariable(*v)),
        Term::One => structure.neutral.ok_or(EvalError::NoNeutral),
        Term::Inv(t) => {
            let x = eval_with(t, magma, assignment, structure)?;
            let inv = structure.inverses.as_ref().ok_or(EvalError::NoInverses)?;
            Ok(inv[x])
        }
        Term::Prod(a, b) => {
            let l = eval_with(a, magma, assignment, structure)?;
            let r = eval_with(b, magma, assignment, structure)?;
            Ok(magma.get(l, r))
        }
    }
}

/// Evaluates a term on a table under an assignment by structural recursion;
/// a product is a table lookup with the row as the left factor.
pub fn eval_term(term: &Term, magma: &Magma, assignment: &Assignment) -> Result<usize, EvalError> {
    let structure = EvalStructure::for_magma(magma, term.uses_one(), term.uses_inv())?;
    eval_with(term, magma, assignment, &structure)
}

/// True iff the two sides evaluate equal under every assignment of the
/// identity's variables.
pub fn holds(identity: &Identity, magma: &Magma) -> Result<bool, EvalError> {
    Ok(falsifying_assignment(identity, magma)?.is_none())
}

/// First assignment (in lexicographic order) under which the two sides
/// evaluate to different elements, together with the two values.
pub fn falsifying_assignment(
    identity: &Identity,
    magma: &Magma,
) -> Result<Option<(Assignment, usize, usize)>, EvalError> {
    let structure = EvalStructure::for_magma(magma, identity.uses_one(), identity.uses_inv())?;
    let used = identity.vars_used();
    let n = magma.order();
    let limit = |u: bool| if u { n } else { 1 };
    for x in 0..limit(used[0]) {
        for y in 0..limit(used[1]) {
            for z in 0..limit(used[2]) {
                let mut asg = Assignment::new();
                if used[0] {
                    asg = asg.set(Var::X, x);
                }
                if used[1] {
                    asg = asg.set(Var::Y, y);
                }
                if used[2] {
                    asg = asg.set(Var::Z, z);
                }
                let l = eval_with(&identity.lhs, magma, &asg, &structure)?;
                let r = eval_with(&identity.rhs, magma, &asg, &structure)?;
                if l != r {
                    return Ok(Some((asg, l, r)));
                }
            }
        }
    }
    Ok(None)
}

/// Resolves a CLI identity argument: a named tag (`LB`, `M1`, `ASSOC`, ...)
/// or an `Xij` code, case-insensitively.
pub fn parse_identity_arg(s: &str) -> Result<Identity, CodeError> {
    let trimmed = s.trim();
    for law in NamedLaw::ALL {
        if law.label().eq_ignore_ascii_case(trimmed) {
            return Ok(law.identity());
        }
    }
    trimmed.parse::<BMCode>().map(decode_bm)
}
