//! The action space and its fitness landscape.

use std::fmt;

/// Number of body parts an action moves.
pub const N_PARTS: usize = 6;

/// Size of the full action space, `3^N_PARTS`.
pub const N_ACTIONS: usize = 729;

/// Highest attainable fitness.
pub const MAX_FITNESS: f64 = 10.0;

/// Body parts in component order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BodyPart {
    Head = 0,
    LeftArm = 1,
    RightArm = 2,
    LeftLeg = 3,
    RightLeg = 4,
    Hips = 5,
}

impl BodyPart {
    pub const ALL: [BodyPart; N_PARTS] = [
        BodyPart::Head,
        BodyPart::LeftArm,
        BodyPart::RightArm,
        BodyPart::LeftLeg,
        BodyPart::RightLeg,
        BodyPart::Hips,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BodyPart::Head => "head",
            BodyPart::LeftArm => "left_arm",
            BodyPart::RightArm => "right_arm",
            BodyPart::LeftLeg => "left_leg",
            BodyPart::RightLeg => "right_leg",
            BodyPart::Hips => "hips",
        }
    }
}

/// Movement direction of one body part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Move {
    Down,
    #[default]
    Still,
    Up,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::Down, Move::Still, Move::Up];

    /// Signed value in {-1, 0, +1}.
    pub fn value(self) -> i8 {
        match self {
            Move::Down => -1,
            Move::Still => 0,
            Move::Up => 1,
        }
    }

    /// Column index in {0, 1, 2}, ordered Down, Still, Up.
    pub fn index(self) -> usize {
        match self {
            Move::Down => 0,
            Move::Still => 1,
            Move::Up => 2,
        }
    }

    pub fn from_index(index: usize) -> Option<Move> {
        Move::ALL.get(index).copied()
    }

    pub fn from_value(value: i8) -> Option<Move> {
        match value {
            -1 => Some(Move::Down),
            0 => Some(Move::Still),
            1 => Some(Move::Up),
            _ => None,
        }
    }

    /// The two values other than `self`, in index order.
    pub fn others(self) -> [Move; 2] {
        match self {
            Move::Down => [Move::Still, Move::Up],
            Move::Still => [Move::Down, Move::Up],
            Move::Up => [Move::Down, Move::Still],
        }
    }
}

/// A movement pattern: one [`Move`] per body part.
///
/// The all-still vector is the action every agent starts with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Action([Move; N_PARTS]);

impl Action {
    pub const STILL: Action = Action([Move::Still; N_PARTS]);

    pub fn new(parts: [Move; N_PARTS]) -> Self {
        Action(parts)
    }

    /// Builds an action from signed components, rejecting anything outside {-1, 0, +1}.
    pub fn from_values(values: [i8; N_PARTS]) -> Option<Self> {
        let mut parts = [Move::Still; N_PARTS];
        for (slot, v) in parts.iter_mut().zip(values) {
            *slot = Move::from_value(v)?;
        }
        Some(Action(parts))
    }

    pub fn parts(&self) -> &[Move; N_PARTS] {
        &self.0
    }

    pub fn part(&self, part: BodyPart) -> Move {
        self.0[part as usize]
    }

    pub fn get(&self, i: usize) -> Move {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, m: Move) {
        self.0[i] = m;
    }

    pub fn values(&self) -> [i8; N_PARTS] {
        self.0.map(Move::value)
    }

    /// Number of components in which `self` and `other` differ.
    pub fn hamming(&self, other: &Action) -> usize {
        self.0.iter().zip(other.0.iter()).filter(|(a, b)| a != b).count()
    }

    /// Base-3 code with the head as the most significant digit, Down = 0.
    pub fn code(&self) -> usize {
        self.0.iter().fold(0, |acc, m| acc * 3 + m.index())
    }

    pub fn from_code(code: usize) -> Option<Self> {
        if code >= N_ACTIONS {
            return None;
        }
        let mut parts = [Move::Still; N_PARTS];
        let mut rest = code;
        for slot in parts.iter_mut().rev() {
            *slot = Move::ALL[rest % 3];
            rest /= 3;
        }
        Some(Action(parts))
    }

    /// Every action, ordered by [`Action::code`].
    pub fn all() -> impl Iterator<Item = Action> {
        (0..N_ACTIONS).map(|c| Action::from_code(c).expect("code in range"))
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m.value())?;
        }
        write!(f, ")")
    }
}

fn opposed_pair(a: Move, b: Move) -> bool {
    a != Move::Still && a.value() == -b.value()
}

/// Effectiveness of an action.
///
/// One point per moving body part, plus two for each limb pair moving in
/// opposite directions. Ranges over `[0, 10]`; standing still scores 0.
pub fn fitness(action: &Action) -> f64 {
    let moving = action.parts().iter().filter(|m| **m != Move::Still).count();
    let mut score = moving as f64;
    if opposed_pair(action.part(BodyPart::LeftArm), action.part(BodyPart::RightArm)) {
        score += 2.0;
    }
    if opposed_pair(action.part(BodyPart::LeftLeg), action.part(BodyPart::RightLeg)) {
        score += 2.0;
    }
    score
}
