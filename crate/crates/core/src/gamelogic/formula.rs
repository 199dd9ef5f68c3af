use std::fmt;

use crate::subset::{Subset, Universe};
use crate::{Error, Result};

/// Negation- and implication-free propositional formula. An empty `Conj` is
/// truth and an empty `Disj` is falsity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameFormula {
    Atom(String),
    Conj(Vec<GameFormula>),
    Disj(Vec<GameFormula>),
}

impl GameFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        Self::Atom(name.into())
    }

    pub fn top() -> Self {
        Self::Conj(Vec::new())
    }

    pub fn bottom() -> Self {
        Self::Disj(Vec::new())
    }

    /// Atom names, in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Self::Atom(a) => {
                if !out.contains(&a.as_str()) {
                    out.push(a);
                }
            }
            Self::Conj(xs) | Self::Disj(xs) => xs.iter().for_each(|x| x.collect_atoms(out)),
        }
    }

    pub fn holds(&self, truth: &impl Fn(&str) -> bool) -> bool {
        match self {
            Self::Atom(a) => truth(a),
            Self::Conj(xs) => xs.iter().all(|x| x.holds(truth)),
            Self::Disj(xs) => xs.iter().any(|x| x.holds(truth)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Self::Atom(_) => 0,
            Self::Conj(xs) | Self::Disj(xs) => 1 + xs.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    /// Has no conjunction anywhere inside.
    pub fn is_conjunction_free(&self) -> bool {
        match self {
            Self::Atom(_) => true,
            Self::Conj(_) => false,
            Self::Disj(xs) => xs.iter().all(Self::is_conjunction_free),
        }
    }

    /// Prints without parentheses when it is an atom, a constant or a
    /// one-element connective.
    fn is_primary(&self) -> bool {
        match self {
            Self::Atom(_) => true,
            Self::Conj(xs) | Self::Disj(xs) => xs.len() <= 1,
        }
    }
}

/// Whether `phi` holds in the model given by the true letters `m`.
pub fn eval_formula(phi: &GameFormula, letters: &Universe, m: &Subset) -> Result<bool> {
    m.check_len(letters.len())?;
    for a in phi.atoms() {
        if letters.index_of(a).is_none() {
            return Err(Error::UndeclaredAtom(a.to_owned()));
        }
    }
    Ok(phi.holds(&|a| m.contains(letters.index_of(a).unwrap())))
}

impl fmt::Display for GameFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Atom(a) => f.write_str(a),
            Self::Conj(xs) if xs.is_empty() => f.write_str("true"),
            Self::Disj(xs) if xs.is_empty() => f.write_str("false"),
            Self::Conj(xs) if xs.len() == 1 => write!(f, "&({})", xs[0]),
            Self::Disj(xs) if xs.len() == 1 => write!(f, "|({})", xs[0]),
            Self::Conj(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    if x.is_primary() {
                        write!(f, "{x}")?;
                    } else {
                        write!(f, "({x})")?;
                    }
                }
                Ok(())
            }
            Self::Disj(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    if x.is_primary() || matches!(x, Self::Conj(_)) {
                        write!(f, "{x}")?;
                    } else {
                        write!(f, "({x})")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// `hypothesis → conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameSequent {
    pub hypothesis: GameFormula,
    pub conclusion: GameFormula,
}

impl GameSequent {
    pub fn new(hypothesis: GameFormula, conclusion: GameFormula) -> Self {
        Self {
            hypothesis,
            conclusion,
        }
    }

    /// `⊤ → conclusion`.
    pub fn fact(conclusion: GameFormula) -> Self {
        Self::new(GameFormula::top(), conclusion)
    }

    pub fn holds(&self, truth: &impl Fn(&str) -> bool) -> bool {
        !self.hypothesis.holds(truth) || self.conclusion.holds(truth)
    }
}

impl fmt::Display for GameSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.hypothesis, self.conclusion)
    }
}

/// A set of game sequents over a declared set of letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTheory {
    letters: Universe,
    sequents: Vec<GameSequent>,
}

impl GameTheory {
    pub fn new(letters: Universe, sequents: Vec<GameSequent>) -> Result<Self> {
        for s in &sequents {
            for a in s.hypothesis.atoms().into_iter().chain(s.conclusion.atoms()) {
                if letters.index_of(a).is_none() {
                    return Err(Error::UndeclaredAtom(a.to_owned()));
                }
            }
        }
        Ok(Self { letters, sequents })
    }

    /// Letters are the atoms in order of first occurrence.
    pub fn inferred(sequents: Vec<GameSequent>) -> Self {
        let mut names: Vec<String> = Vec::new();
        for s in &sequents {
            for a in s.hypothesis.atoms().into_iter().chain(s.conclusion.atoms()) {
                if !names.iter().any(|n| n == a) {
                    names.push(a.to_owned());
                }
            }
        }
        let letters = Universe::new(names).expect("deduplicated above");
        Self { letters, sequents }
    }

    pub fn letters(&self) -> &Universe {
        &self.letters
    }

    pub fn sequents(&self) -> &[GameSequent] {
        &self.sequents
    }

    pub fn is_model(&self, m: &Subset) -> bool {
        let truth = |a: &str| m.contains(self.letters.index_of(a).expect("declared"));
        self.sequents.iter().all(|s| s.holds(&truth))
    }
}

impl fmt::Display for GameTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "letters {}", self.letters.names().join(" "))?;
        for s in &self.sequents {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
