//! Gaussian parity, the odd-arrow deletion map `f` and the labelling it
//! induces.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArrowId, GaussDiagram, Label};
use crate::error::{Error, Result};
use crate::moves::AppliedMove;

/// A label bound `m`, possibly infinite. Serialized as an integer or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    /// The label given to arrows that survive every iteration.
    pub fn top_label(self) -> Label {
        match self {
            Bound::Finite(m) => Label::Finite(m + 1),
            Bound::Infinite => Label::Infinity,
        }
    }

    pub fn admits(self, label: Label) -> bool {
        match (self, label) {
            (Bound::Finite(m), Label::Finite(k)) => k >= 1 && k <= m + 1,
            (Bound::Finite(_), Label::Infinity) => false,
            (Bound::Infinite, _) => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(m) => write!(f, "{m}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(m) => s.serialize_u32(*m),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        let text = match &raw {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            _ => return Err(serde::de::Error::custom("bound must be a positive integer or \"inf\"")),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "∞" => Ok(Bound::Infinite),
            _ => match s.parse::<u32>() {
                Ok(m) if m >= 1 => Ok(Bound::Finite(m)),
                _ => Err(Error::InvalidSpec(format!("bound must be a positive integer or inf, got `{s}`"))),
            },
        }
    }
}

/// Parity of each arrow: `true` for odd.
pub type ParityAssignment = BTreeMap<ArrowId, bool>;

/// A diagram whose arrows all carry labels admitted by `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledDiagram {
    pub diagram: GaussDiagram,
    pub bound: Bound,
}

impl LabelledDiagram {
    pub fn new(diagram: GaussDiagram, bound: Bound) -> Result<Self> {
        for a in diagram.arrows() {
            match a.label {
                Some(l) if bound.admits(l) => {}
                other => {
                    return Err(Error::LabelOutOfRange {
                        label: other.map_or("none".to_string(), |l| l.to_string()),
                        bound: bound.to_string(),
                    })
                }
            }
        }
        Ok(LabelledDiagram { diagram, bound })
    }

    pub fn label(&self, id: ArrowId) -> Option<Label> {
        self.diagram.arrow(id).and_then(|a| a.label)
    }
}

pub fn gaussian_parity(diagram: &GaussDiagram) -> ParityAssignment {
    let g = diagram.interlacement();
    g.ids.iter().enumerate().map(|(i, &id)| (id, g.degree(i) % 2 == 1)).collect()
}

fn odd_arrows(diagram: &GaussDiagram) -> Vec<ArrowId> {
    gaussian_parity(diagram).into_iter().filter(|&(_, odd)| odd).map(|(id, _)| id).collect()
}

/// Deletes every odd arrow. Arrow ids are kept.
pub fn f_map(diagram: &GaussDiagram) -> GaussDiagram {
    diagram.delete_arrows(&odd_arrows(diagram)).expect("odd arrows belong to the diagram")
}

/// For each arrow, the first iteration of `f` that deletes it, or `None` if
/// it survives until `f` stabilizes.
pub fn death_times(diagram: &GaussDiagram) -> BTreeMap<ArrowId, Option<u32>> {
    let mut times: BTreeMap<ArrowId, Option<u32>> = diagram.ids().into_iter().map(|id| (id, None)).collect();
    let mut current = diagram.clone();
    let mut round = 0;
    loop {
        let odd = odd_arrows(&current);
        if odd.is_empty() {
            return times;
        }
        round += 1;
        for &id in &odd {
            times.insert(id, Some(round));
        }
        current = current.delete_arrows(&odd).expect("odd arrows belong to the diagram");
    }
}

/// Labels every arrow by the first iteration `i ≤ m` of `f` that deletes it;
/// survivors get `m + 1`, or `∞` for an infinite bound.
pub fn lambda_m(diagram: &GaussDiagram, bound: Bound) -> LabelledDiagram {
    let times = death_times(diagram);
    let labelled = diagram.map_arrows(|a| {
        let label = match (times[&a.id], bound) {
            (Some(i), Bound::Finite(m)) if i <= m => Label::Finite(i),
            (Some(i), Bound::Infinite) => Label::Finite(i),
            _ => bound.top_label(),
        };
        a.with_label(label)
    });
    LabelledDiagram { diagram: labelled, bound }
}

/// Violations of the parity axioms for one move, as readable messages.
pub fn parity_axiom_check(applied: &AppliedMove) -> Vec<String> {
    use crate::moves::MoveKind::*;
    let before = gaussian_parity(&applied.before);
    let after = gaussian_parity(&applied.after);
    let mut violations = Vec::new();

    let local: Vec<ArrowId> = applied.local_arrows();
    let parity_of = |id: ArrowId| before.get(&id).or_else(|| after.get(&id)).copied().unwrap_or(false);
    match applied.kind {
        R1Insert | R1Delete => {
            if parity_of(local[0]) {
                violations.push(format!("isolated arrow {} is odd", local[0]));
            }
        }
        R2Insert | R2Delete => {
            if parity_of(local[0]) != parity_of(local[1]) {
                violations.push(format!("R2 pair {} and {} have different parities", local[0], local[1]));
            }
        }
        R3 => {
            let odd = local.iter().filter(|id| before[id]).count();
            if odd != 0 && odd != 2 {
                violations.push(format!("R3 triple has {odd} odd arrows"));
            }
            for id in &local {
                if before[id] != after[id] {
                    violations.push(format!("R3 arrow {id} changed parity"));
                }
            }
        }
    }
    for (id, p) in &before {
        if local.contains(id) {
            continue;
        }
        match after.get(id) {
            Some(q) if q == p => {}
            Some(_) => violations.push(format!("arrow {id} outside the move changed parity")),
            None => violations.push(format!("arrow {id} outside the move disappeared")),
        }
    }
    violations
}
