//! The subgroup of `B_4` generated by `x = σ₂σ₁²σ₂` and `y = σ₃`.
//!
//! It is the Artin group of type `B₂` with the single relation `xyxy = yxyx`;
//! `Δ = xyxy` is central and `Δ σ₁² = Δ₄²`. Both `x` and `y` commute with `σ₁`.

use std::fmt;

use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum B2Letter {
    X,
    Y,
    XInv,
    YInv,
}

impl B2Letter {
    pub fn inv(self) -> B2Letter {
        match self {
            B2Letter::X => B2Letter::XInv,
            B2Letter::Y => B2Letter::YInv,
            B2Letter::XInv => B2Letter::X,
            B2Letter::YInv => B2Letter::Y,
        }
    }

    fn as_char(self) -> char {
        match self {
            B2Letter::X => 'x',
            B2Letter::Y => 'y',
            B2Letter::XInv => 'X',
            B2Letter::YInv => 'Y',
        }
    }

    fn expansion(self) -> &'static [i64] {
        match self {
            B2Letter::X => &[2, 1, 1, 2],
            B2Letter::Y => &[3],
            B2Letter::XInv => &[-2, -1, -1, -2],
            B2Letter::YInv => &[-3],
        }
    }
}

/// A word in `x, y` and their inverses. Text form: `x y X Y`, uppercase for
/// inverses, whitespace ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct B2Word(Vec<B2Letter>);

impl B2Word {
    pub fn new(letters: Vec<B2Letter>) -> Self {
        B2Word(letters)
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' => Ok(B2Letter::X),
                'y' => Ok(B2Letter::Y),
                'X' => Ok(B2Letter::XInv),
                'Y' => Ok(B2Letter::YInv),
                other => Err(Error::InvalidInput(format!("`{other}` is not one of x y X Y"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(B2Word)
    }

    pub fn letters(&self) -> &[B2Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> B2Word {
        B2Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| matches!(l, B2Letter::X | B2Letter::Y))
    }

    pub fn contains(&self, letter: B2Letter) -> bool {
        self.0.contains(&letter)
    }

    /// True when `xyxy` or `yxyx` occurs as a factor.
    pub fn has_forbidden_factor(&self) -> bool {
        self.0.windows(4).any(is_forbidden)
    }

    /// The 4-braid spelled by the word.
    pub fn expand(&self) -> BraidWord {
        let ints: Vec<i64> = self
            .0
            .iter()
            .flat_map(|l| l.expansion().iter().copied())
            .collect();
        BraidWord::from_ints(4, &ints).expect("expansion uses σ₁..σ₃")
    }
}

impl fmt::Display for B2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

fn is_forbidden(w: &[B2Letter]) -> bool {
    use B2Letter::{X, Y};
    w == [X, Y, X, Y] || w == [Y, X, Y, X]
}

/// `W = Δ^delta_exp · positive` with `Δ = xyxy` and `positive` free of
/// `xyxy`/`yxyx`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2Normal {
    pub delta_exp: i64,
    pub positive: B2Word,
}

impl B2Normal {
    /// `Δ₄^{2m} σ₁^{-2m} · P`, the 4-braid this normal form represents.
    pub fn expand(&self) -> BraidWord {
        delta_sigma1_prefix(self.delta_exp, -2 * self.delta_exp)
            .concat(&self.positive.expand())
            .unwrap()
    }
}

/// `Δ₄^{2m} σ₁^{k}`.
pub fn delta_sigma1_prefix(m: i64, k: i64) -> BraidWord {
    BraidWord::delta4()
        .pow(2 * m)
        .concat(&BraidWord::generator_power(4, 1, k).unwrap())
        .unwrap()
}

/// Rewrites `x⁻¹ → Δ⁻¹·yxy` and `y⁻¹ → Δ⁻¹·xyx`, then excises `xyxy`/`yxyx`
/// factors, counting each as one `Δ`.
pub fn b2_normalize(word: &B2Word) -> B2Normal {
    use B2Letter::{X, Y};
    let mut delta_exp = 0i64;
    let mut stack: Vec<B2Letter> = Vec::with_capacity(word.len() * 3);
    let push = |stack: &mut Vec<B2Letter>, l: B2Letter, delta_exp: &mut i64| {
        stack.push(l);
        if stack.len() >= 4 && is_forbidden(&stack[stack.len() - 4..]) {
            stack.truncate(stack.len() - 4);
            *delta_exp += 1;
        }
    };
    for &l in word.letters() {
        let replacement: &[B2Letter] = match l {
            X => &[X],
            Y => &[Y],
            B2Letter::XInv => {
                delta_exp -= 1;
                &[Y, X, Y]
            }
            B2Letter::YInv => {
                delta_exp -= 1;
                &[X, Y, X]
            }
        };
        for &r in replacement {
            push(&mut stack, r, &mut delta_exp);
        }
    }
    B2Normal {
        delta_exp,
        positive: B2Word(stack),
    }
}

/// Rotates a positive word containing both letters so it starts with `y` and
/// ends with `x`, returning `(rotated, conjugator)` with
/// `rotated = conjugator⁻¹ · P · conjugator`. Uses the smallest rotation that
/// keeps the word free of `xyxy`/`yxyx`.
pub fn b2_rotate_to_yx(p: &B2Word) -> Result<(B2Word, B2Word)> {
    if !p.is_positive() {
        return Err(Error::InvalidInput(format!("`{p}` is not a positive word")));
    }
    if !p.contains(B2Letter::X) || !p.contains(B2Letter::Y) {
        return Err(Error::InvalidInput(format!(
            "`{p}` must contain both x and y"
        )));
    }
    let n = p.len();
    for r in 0..n {
        let mut rotated = p.0[r..].to_vec();
        rotated.extend_from_slice(&p.0[..r]);
        let rotated = B2Word(rotated);
        if rotated.0[0] == B2Letter::Y
            && rotated.0[n - 1] == B2Letter::X
            && !rotated.has_forbidden_factor()
        {
            return Ok((rotated, B2Word(p.0[..r].to_vec())));
        }
    }
    Err(Error::Inconsistent(format!(
        "no rotation of `{p}` starts with y, ends with x and avoids xyxy/yxyx"
    )))
}

/// Smallest rotation of a positive word containing both letters that starts
/// with `y` and ends with `x`, forbidden factors allowed. Returns
/// `(rotated, conjugator)` as in [`b2_rotate_to_yx`].
pub fn b2_rotate_cyclic(p: &B2Word) -> Result<(B2Word, B2Word)> {
    if !p.is_positive() || !p.contains(B2Letter::X) || !p.contains(B2Letter::Y) {
        return Err(Error::InvalidInput(format!(
            "`{p}` must be positive and contain both x and y"
        )));
    }
    let n = p.len();
    let r = (0..n)
        .find(|&r| p.0[r] == B2Letter::Y && p.0[(r + n - 1) % n] == B2Letter::X)
        .expect("a word with both letters has a cyclic factor xy");
    let mut rotated = p.0[r..].to_vec();
    rotated.extend_from_slice(&p.0[..r]);
    Ok((B2Word(rotated), B2Word(p.0[..r].to_vec())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum State {
    X,
    Y,
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::X => write!(f, "X"),
            State::Y => write!(f, "Y"),
        }
    }
}

/// Arrows of the ping-pong automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    X,
    Y,
    XY,
    YX,
    XInv,
    YInv,
}

impl Move {
    pub const ALL: [Move; 6] = [Move::X, Move::Y, Move::XY, Move::YX, Move::XInv, Move::YInv];

    /// Target state when the arrow leaves `from`, `None` if there is no such arrow.
    pub fn transition(self, from: State) -> Option<State> {
        match (from, self) {
            (State::X, Move::X) | (State::X, Move::YInv) => Some(State::X),
            (State::X, Move::XY) => Some(State::Y),
            (State::Y, Move::Y) | (State::Y, Move::XInv) => Some(State::Y),
            (State::Y, Move::YX) => Some(State::X),
            _ => None,
        }
    }

    pub fn as_b2_word(self) -> B2Word {
        use B2Letter::*;
        B2Word(match self {
            Move::X => vec![X],
            Move::Y => vec![Y],
            Move::XY => vec![X, Y],
            Move::YX => vec![Y, X],
            Move::XInv => vec![XInv],
            Move::YInv => vec![YInv],
        })
    }

    pub fn expand(self) -> BraidWord {
        self.as_b2_word().expand()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Move::X => "x",
            Move::Y => "y",
            Move::XY => "xy",
            Move::YX => "yx",
            Move::XInv => "x^-1",
            Move::YInv => "y^-1",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub mv: Move,
    pub from: State,
    pub to: State,
}

/// `Δ₄^{2·delta_exp} σ₁^{sigma1_exp} · moves`, possibly describing
/// `conjugator⁻¹ · β · conjugator` rather than `β` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSequence {
    pub delta_exp: i64,
    pub sigma1_exp: i64,
    pub moves: Vec<Step>,
    pub conjugator: B2Word,
}

impl MoveSequence {
    pub fn moves_word(&self) -> BraidWord {
        self.moves
            .iter()
            .fold(BraidWord::identity(4), |acc, s| acc.concat(&s.mv.expand()).unwrap())
    }

    pub fn expand(&self) -> BraidWord {
        delta_sigma1_prefix(self.delta_exp, self.sigma1_exp)
            .concat(&self.moves_word())
            .unwrap()
    }

    /// Checks that consecutive steps chain and each follows an automaton arrow.
    pub fn is_well_formed(&self) -> bool {
        self.moves.iter().all(|s| s.mv.transition(s.from) == Some(s.to))
            && self.moves.windows(2).all(|w| w[0].to == w[1].from)
    }
}

/// Blocks of the automaton accepting positive words without `xyxy`/`yxyx`,
/// longest first within each state. A block with `delta` set stands for
/// `move · Δ` (`xyx = y⁻¹Δ`, `yxy = x⁻¹Δ`).
struct Block {
    from: State,
    pattern: &'static [B2Letter],
    to: State,
    mv: Move,
    delta: bool,
}

const BLOCKS: &[Block] = {
    use B2Letter::{X, Y};
    &[
        Block { from: State::X, pattern: &[X, Y, X], to: State::X, mv: Move::YInv, delta: true },
        Block { from: State::X, pattern: &[X, Y], to: State::Y, mv: Move::XY, delta: false },
        Block { from: State::X, pattern: &[X], to: State::X, mv: Move::X, delta: false },
        Block { from: State::Y, pattern: &[Y, X, Y], to: State::Y, mv: Move::XInv, delta: true },
        Block { from: State::Y, pattern: &[Y, X], to: State::X, mv: Move::YX, delta: false },
        Block { from: State::Y, pattern: &[Y], to: State::Y, mv: Move::Y, delta: false },
    ]
};

/// Splits a positive word that starts with `y`, ends with `x` and avoids
/// `xyxy`/`yxyx` into automaton moves from state `Y` to state `X`.
///
/// The result satisfies `P = Δ₄^{2d} σ₁^{-2d} · moves` where `d` is the number
/// of `xyx`/`yxy` blocks; `conjugator` is empty.
pub fn b2_segment(p: &B2Word) -> Result<MoveSequence> {
    let letters = p.letters();
    if letters.first() != Some(&B2Letter::Y)
        || letters.last() != Some(&B2Letter::X)
        || !p.is_positive()
        || p.has_forbidden_factor()
    {
        return Err(Error::InvalidInput(format!(
            "`{p}` must be positive, start with y, end with x and avoid xyxy/yxyx"
        )));
    }
    let n = letters.len();
    // dead[pos][state]: no accepting parse from here
    let mut dead = vec![[false; 2]; n + 1];
    let mut path: Vec<&Block> = Vec::new();
    if !parse_from(letters, 0, State::Y, &mut dead, &mut path) {
        return Err(Error::Inconsistent(format!(
            "automaton has no Y→X path spelling `{p}`"
        )));
    }
    let d = path.iter().filter(|b| b.delta).count() as i64;
    Ok(MoveSequence {
        delta_exp: d,
        sigma1_exp: -2 * d,
        moves: path
            .iter()
            .map(|b| Step {
                mv: b.mv,
                from: b.from,
                to: b.to,
            })
            .collect(),
        conjugator: B2Word::default(),
    })
}

fn state_slot(s: State) -> usize {
    match s {
        State::X => 0,
        State::Y => 1,
    }
}

fn parse_from(
    letters: &[B2Letter],
    pos: usize,
    state: State,
    dead: &mut Vec<[bool; 2]>,
    path: &mut Vec<&'static Block>,
) -> bool {
    if pos == letters.len() {
        return state == State::X;
    }
    if dead[pos][state_slot(state)] {
        return false;
    }
    for block in BLOCKS.iter().filter(|b| b.from == state) {
        if letters[pos..].starts_with(block.pattern) {
            path.push(block);
            if parse_from(letters, pos + block.pattern.len(), block.to, dead, path) {
                return true;
            }
            path.pop();
        }
    }
    dead[pos][state_slot(state)] = true;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn some_words_have_no_clean_rotation() {
        // the factor xyxy straddles the end of the word
        let p = B2Word::parse("x y x x y y x y").unwrap();
        assert!(!p.has_forbidden_factor());
        assert!(matches!(b2_rotate_to_yx(&p), Err(Error::Inconsistent(_))));
        let (rotated, c) = b2_rotate_cyclic(&p).unwrap();
        assert_eq!(rotated.to_string(), "y x x y y x y x");
        assert_eq!(c.to_string(), "x");
        let normal = b2_normalize(&rotated);
        assert_eq!((normal.delta_exp, normal.positive.to_string()), (1, "y x x y".to_string()));
    }

    fn b(text: &str) -> B2Word {
        B2Word::parse(text).unwrap()
    }

    #[test]
    fn expansion() {
        assert_eq!(b("x").expand(), BraidWord::parse("2 1 1 2", 4).unwrap());
        assert_eq!(b("Y").expand(), BraidWord::parse("-3", 4).unwrap());
        assert_eq!(b("X").expand(), BraidWord::parse("-2 -1 -1 -2", 4).unwrap());
        assert!(B2Word::parse("xz").is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            b2_normalize(&b("X")),
            B2Normal { delta_exp: -1, positive: b("yxy") }
        );
        assert_eq!(b2_normalize(&b("xyxy")), B2Normal { delta_exp: 1, positive: b("") });
        assert_eq!(b2_normalize(&b("yxyxx")), B2Normal { delta_exp: 1, positive: b("x") });
        assert_eq!(b2_normalize(&b("Y")), B2Normal { delta_exp: -1, positive: b("xyx") });
        // xX: x then Δ⁻¹yxy; xyxy excised back out
        assert_eq!(b2_normalize(&b("xX")), B2Normal { delta_exp: 0, positive: b("") });
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(b2_rotate_to_yx(&b("xy")).unwrap(), (b("yx"), b("x")));
        assert_eq!(b2_rotate_to_yx(&b("yx")).unwrap(), (b("yx"), b("")));
        assert_eq!(b2_rotate_to_yx(&b("xxy")).unwrap(), (b("yxx"), b("xx")));
        assert!(b2_rotate_to_yx(&b("xx")).is_err());
        assert!(b2_rotate_to_yx(&b("yX")).is_err());
    }

    fn moves(seq: &MoveSequence) -> Vec<(Move, State, State)> {
        seq.moves.iter().map(|s| (s.mv, s.from, s.to)).collect()
    }

    #[test]
    fn segment_examples() {
        let s = b2_segment(&b("yx")).unwrap();
        assert_eq!(moves(&s), vec![(Move::YX, State::Y, State::X)]);
        assert_eq!(s.delta_exp, 0);

        let s = b2_segment(&b("yxx")).unwrap();
        assert_eq!(
            moves(&s),
            vec![(Move::YX, State::Y, State::X), (Move::X, State::X, State::X)]
        );
        assert_eq!(s.delta_exp, 0);

        // yx · xyx
        let s = b2_segment(&b("yxxyx")).unwrap();
        assert_eq!(
            moves(&s),
            vec![(Move::YX, State::Y, State::X), (Move::YInv, State::X, State::X)]
        );
        assert_eq!((s.delta_exp, s.sigma1_exp), (1, -2));

        // yx · x · xyx
        let s = b2_segment(&b("yxxxyx")).unwrap();
        assert_eq!(
            moves(&s),
            vec![
                (Move::YX, State::Y, State::X),
                (Move::X, State::X, State::X),
                (Move::YInv, State::X, State::X)
            ]
        );
        assert_eq!(s.delta_exp, 1);
        assert!(s.is_well_formed());
    }

    #[test]
    fn segment_through_both_states() {
        let s = b2_segment(&b("yxxyyx")).unwrap();
        assert_eq!(
            moves(&s).iter().map(|m| m.0).collect::<Vec<_>>(),
            vec![Move::YX, Move::XY, Move::YX]
        );
    }

    #[test]
    fn segment_rejects_bad_input() {
        assert!(b2_segment(&b("xy")).is_err());
        assert!(b2_segment(&b("yxyxx")).is_err());
        assert!(b2_segment(&b("")).is_err());
    }
}
