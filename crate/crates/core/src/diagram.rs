//! Rotational long-knot diagrams as validated event sequences, their
//! combinatorial statistics, and translation to bead words.
//!
//! A diagram is read off as the strand is traversed from the input end to
//! the output end: each crossing is visited twice (once on the overstrand,
//! once on the understrand) and each full rotation is one event. Tokens:
//! `O+<id>`, `U+<id>`, `O-<id>`, `U-<id>` for crossing visits, `C+`, `C-`
//! for rotations; ids are alphanumeric labels.
//!
//! Translation to beads fixes the crossing-to-leg convention algebraically:
//! with beads multiplied right-to-left along the traversal, the positive
//! curls `O+1 C- U+1` and `U+1 C+ O+1` evaluate to `Σβᵢκαᵢ` and
//! `Σαᵢκ⁻¹βᵢ` respectively, matching (XC1f). Any globally consistent
//! convention yields the same invariant; this one also reproduces the
//! canonical figure-eight bead word, leg for leg.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("bad token `{token}` at position {index}")]
    BadToken { index: usize, token: String },
    #[error("crossing `{0}` appears {1} times, expected exactly 2")]
    WrongEventCount(String, usize),
    #[error("crossing `{0}` appears twice as {1}")]
    DuplicateRole(String, &'static str),
    #[error("crossing `{0}` has mismatched signs")]
    MismatchedSigns(String),
    #[error("unknown builtin diagram `{0}`")]
    UnknownBuiltin(String),
    #[error("bead word: crossing `{0}` must contribute legs 1 and 2 of the same copy")]
    BadLegs(String),
}

/// One traversal event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Over { sign: i8, id: String },
    Under { sign: i8, id: String },
    Rot { dir: i8 },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Over { sign, id } => write!(f, "O{}{}", if *sign > 0 { '+' } else { '-' }, id),
            Event::Under { sign, id } => write!(f, "U{}{}", if *sign > 0 { '+' } else { '-' }, id),
            Event::Rot { dir } => write!(f, "C{}", if *dir > 0 { '+' } else { '-' }),
        }
    }
}

/// A validated rotational diagram: every crossing id occurs exactly twice,
/// once per role, with equal signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotDiagram {
    events: Vec<Event>,
}

impl RotDiagram {
    pub fn new(events: Vec<Event>) -> Result<RotDiagram, DiagramError> {
        let mut seen: BTreeMap<&str, (usize, usize, Vec<i8>)> = BTreeMap::new();
        for e in &events {
            match e {
                Event::Over { sign, id } => {
                    let entry = seen.entry(id).or_default();
                    entry.0 += 1;
                    entry.2.push(*sign);
                }
                Event::Under { sign, id } => {
                    let entry = seen.entry(id).or_default();
                    entry.1 += 1;
                    entry.2.push(*sign);
                }
                Event::Rot { .. } => {}
            }
        }
        for (id, (overs, unders, signs)) in seen {
            if overs + unders != 2 {
                return Err(DiagramError::WrongEventCount(id.into(), overs + unders));
            }
            if overs == 2 {
                return Err(DiagramError::DuplicateRole(id.into(), "Over"));
            }
            if unders == 2 {
                return Err(DiagramError::DuplicateRole(id.into(), "Under"));
            }
            if signs[0] != signs[1] {
                return Err(DiagramError::MismatchedSigns(id.into()));
            }
        }
        Ok(RotDiagram { events })
    }

    /// The empty diagram: a straight strand, i.e. the 0-framed unknot.
    pub fn empty() -> RotDiagram {
        RotDiagram { events: Vec::new() }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Concatenation of long-knot diagrams, making crossing ids disjoint by
    /// prefixing.
    pub fn concat(parts: &[&RotDiagram]) -> RotDiagram {
        let mut events = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            for e in &part.events {
                events.push(match e {
                    Event::Over { sign, id } => Event::Over {
                        sign: *sign,
                        id: format!("p{k}_{id}"),
                    },
                    Event::Under { sign, id } => Event::Under {
                        sign: *sign,
                        id: format!("p{k}_{id}"),
                    },
                    Event::Rot { dir } => Event::Rot { dir: *dir },
                });
            }
        }
        RotDiagram { events }
    }
}

impl fmt::Display for RotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.events.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Parses a whitespace-separated token stream.
pub fn parse_diagram(text: &str) -> Result<RotDiagram, DiagramError> {
    let mut events = Vec::new();
    for (index, token) in text.split_whitespace().enumerate() {
        let bad = || DiagramError::BadToken {
            index,
            token: token.to_string(),
        };
        let mut chars = token.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let sign = match chars.next() {
            Some('+') => 1i8,
            Some('-') => -1i8,
            _ => return Err(bad()),
        };
        let id: String = chars.collect();
        let id_ok = !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric());
        match kind {
            'O' if id_ok => events.push(Event::Over { sign, id }),
            'U' if id_ok => events.push(Event::Under { sign, id }),
            'C' if id.is_empty() => events.push(Event::Rot { dir: sign }),
            _ => return Err(bad()),
        }
    }
    RotDiagram::new(events)
}

/// Parses a diagram file: one token stream per line, `#` starts a comment,
/// blank lines skipped.
pub fn parse_diagram_file(text: &str) -> Result<Vec<RotDiagram>, DiagramError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_diagram(line)?);
    }
    Ok(out)
}

/// Crossing and rotation counts of a diagram, with the refinement by which
/// strand is traversed first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramStats {
    pub n_plus: i64,
    pub n_minus: i64,
    pub m_plus: i64,
    pub m_minus: i64,
    /// positive crossings whose understrand comes first in traversal
    pub n_plus_1: i64,
    /// positive crossings whose overstrand comes first
    pub n_plus_2: i64,
    pub n_minus_1: i64,
    pub n_minus_2: i64,
}

impl DiagramStats {
    pub fn writhe(&self) -> i64 {
        self.n_plus - self.n_minus
    }

    pub fn rot(&self) -> i64 {
        self.m_plus - self.m_minus
    }

    /// The writhe of a rotational diagram is the framing of the knot it
    /// represents.
    pub fn framing(&self) -> i64 {
        self.writhe()
    }

    /// `rot + writhe` is even on every realizable rotational diagram;
    /// an odd sum flags a non-realizable event sequence.
    pub fn parity_ok(&self) -> bool {
        (self.rot() + self.writhe()) % 2 == 0
    }

    /// The refined identity `rot + writhe = 2(n₊,₁ − n₋,₁)`.
    pub fn refined_parity_ok(&self) -> bool {
        self.rot() + self.writhe() == 2 * (self.n_plus_1 - self.n_minus_1)
    }
}

pub fn stats(d: &RotDiagram) -> DiagramStats {
    let mut st = DiagramStats::default();
    let mut first_role: BTreeMap<&str, bool> = BTreeMap::new(); // id -> under first
    for e in &d.events {
        match e {
            Event::Rot { dir } => {
                if *dir > 0 {
                    st.m_plus += 1;
                } else {
                    st.m_minus += 1;
                }
            }
            Event::Over { sign, id } => {
                if !first_role.contains_key(id.as_str()) {
                    first_role.insert(id, false);
                    if *sign > 0 {
                        st.n_plus += 1;
                        st.n_plus_2 += 1;
                    } else {
                        st.n_minus += 1;
                        st.n_minus_2 += 1;
                    }
                }
            }
            Event::Under { sign, id } => {
                if !first_role.contains_key(id.as_str()) {
                    first_role.insert(id, true);
                    if *sign > 0 {
                        st.n_plus += 1;
                        st.n_plus_1 += 1;
                    } else {
                        st.n_minus += 1;
                        st.n_minus_1 += 1;
                    }
                }
            }
        }
    }
    st
}

/// One bead along the strand: a leg of some `R^{±1}` copy, or a power of κ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bead {
    /// Leg `leg ∈ {1, 2}` of the crossing copy `copy`; `barred` selects
    /// `R⁻¹` instead of `R`.
    Leg { copy: String, barred: bool, leg: u8 },
    /// `κ^{exp}` with `exp = ±1`.
    KappaPow(i8),
}

/// The linear sequence of beads read along the traversal, plus each
/// crossing's sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeadWord {
    beads: Vec<Bead>,
    signs: BTreeMap<String, i8>,
}

impl BeadWord {
    pub fn new(beads: Vec<Bead>, signs: BTreeMap<String, i8>) -> Result<BeadWord, DiagramError> {
        let mut legs: BTreeMap<&str, Vec<(bool, u8)>> = BTreeMap::new();
        for b in &beads {
            if let Bead::Leg { copy, barred, leg } = b {
                legs.entry(copy).or_default().push((*barred, *leg));
            }
        }
        for (copy, ls) in legs {
            let ok = ls.len() == 2
                && ls[0].0 == ls[1].0
                && ls[0].1 + ls[1].1 == 3
                && signs.contains_key(copy)
                && ((signs[copy] < 0) == ls[0].0);
            if !ok {
                return Err(DiagramError::BadLegs(copy.into()));
            }
        }
        Ok(BeadWord { beads, signs })
    }

    pub fn empty() -> BeadWord {
        BeadWord {
            beads: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    pub fn beads(&self) -> &[Bead] {
        &self.beads
    }

    pub fn sign(&self, copy: &str) -> i8 {
        self.signs[copy]
    }

    /// Statistics read off the word itself (leg 2 is the understrand leg).
    pub fn stats(&self) -> DiagramStats {
        let mut st = DiagramStats::default();
        let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
        for b in &self.beads {
            match b {
                Bead::KappaPow(e) => {
                    // C (positive rotation) carries kappa^{-1}
                    if *e < 0 {
                        st.m_plus += 1;
                    } else {
                        st.m_minus += 1;
                    }
                }
                Bead::Leg { copy, leg, .. } => {
                    if seen.insert(copy, ()).is_none() {
                        let positive = self.signs[copy] > 0;
                        let under_first = *leg == 2;
                        match (positive, under_first) {
                            (true, true) => {
                                st.n_plus += 1;
                                st.n_plus_1 += 1;
                            }
                            (true, false) => {
                                st.n_plus += 1;
                                st.n_plus_2 += 1;
                            }
                            (false, true) => {
                                st.n_minus += 1;
                                st.n_minus_1 += 1;
                            }
                            (false, false) => {
                                st.n_minus += 1;
                                st.n_minus_2 += 1;
                            }
                        }
                    }
                }
            }
        }
        st
    }
}

/// Translates a diagram into beads: `C ↦ κ⁻¹`, `C⁻ ↦ κ`, overstrand visit
/// ↦ leg 1 (the α-side), understrand visit ↦ leg 2 (the β-side), with
/// `R⁻¹` beads on negative crossings.
pub fn to_bead_word(d: &RotDiagram) -> BeadWord {
    let mut beads = Vec::with_capacity(d.events.len());
    let mut signs = BTreeMap::new();
    for e in &d.events {
        match e {
            Event::Rot { dir } => beads.push(Bead::KappaPow(-dir)),
            Event::Over { sign, id } => {
                signs.insert(id.clone(), *sign);
                beads.push(Bead::Leg {
                    copy: id.clone(),
                    barred: *sign < 0,
                    leg: 1,
                });
            }
            Event::Under { sign, id } => {
                signs.insert(id.clone(), *sign);
                beads.push(Bead::Leg {
                    copy: id.clone(),
                    barred: *sign < 0,
                    leg: 2,
                });
            }
        }
    }
    BeadWord::new(beads, signs).expect("validated diagram translates to a valid word")
}

/// A named built-in: either a diagram or a verbatim bead word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Diagram(RotDiagram),
    Word(BeadWord),
}

impl Builtin {
    pub fn word(&self) -> BeadWord {
        match self {
            Builtin::Diagram(d) => to_bead_word(d),
            Builtin::Word(w) => w.clone(),
        }
    }

    pub fn stats(&self) -> DiagramStats {
        match self {
            Builtin::Diagram(d) => stats(d),
            Builtin::Word(w) => w.stats(),
        }
    }
}

/// The canonical figure-eight bead word
/// `Σ ᾱ_r β̄_j α_i κ⁻¹ β_l ᾱ_j κ β̄_r α_l β_i`, stored in traversal order
/// (rightmost factor first).
fn figure8_word() -> BeadWord {
    let leg = |copy: &str, barred: bool, leg: u8| Bead::Leg {
        copy: copy.into(),
        barred,
        leg,
    };
    let beads = vec![
        leg("i", false, 2), // beta_i
        leg("l", false, 1), // alpha_l
        leg("r", true, 2),  // betabar_r
        Bead::KappaPow(1),  // kappa
        leg("j", true, 1),  // alphabar_j
        leg("l", false, 2), // beta_l
        Bead::KappaPow(-1), // kappa^{-1}
        leg("i", false, 1), // alpha_i
        leg("j", true, 2),  // betabar_j
        leg("r", true, 1),  // alphabar_r
    ];
    let signs = BTreeMap::from([
        ("i".into(), 1),
        ("l".into(), 1),
        ("j".into(), -1),
        ("r".into(), -1),
    ]);
    BeadWord::new(beads, signs).expect("figure-eight word")
}

/// Looks up a built-in by name: `unknot`, `curl+R`, `curl+L`, `curl-R`,
/// `curl-L`, `curls(k)` (k possibly negative), `figure8`, `trefoil`.
pub fn builtin(name: &str) -> Result<Builtin, DiagramError> {
    let diagram = |text: &str| parse_diagram(text).map(Builtin::Diagram);
    match name {
        "unknot" => Ok(Builtin::Diagram(RotDiagram::empty())),
        "curl+R" => diagram("O+1 C- U+1"),
        "curl+L" => diagram("U+1 C+ O+1"),
        "curl-R" => diagram("O-1 C+ U-1"),
        "curl-L" => diagram("U-1 C- O-1"),
        "figure8" => Ok(Builtin::Word(figure8_word())),
        // writhe 3; the single C- balances rot + wr = 2(n₊,₁ − n₋,₁) = 2.
        "trefoil" => diagram("O+1 U+2 O+3 U+1 O+2 U+3 C-"),
        _ => {
            if let Some(rest) = name
                .strip_prefix("curls(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let k: i64 = rest
                    .parse()
                    .map_err(|_| DiagramError::UnknownBuiltin(name.into()))?;
                let single = if k >= 0 { "O+1 C- U+1" } else { "U-1 C- O-1" };
                let part = parse_diagram(single)?;
                let parts: Vec<&RotDiagram> = (0..k.unsigned_abs()).map(|_| &part).collect();
                return Ok(Builtin::Diagram(RotDiagram::concat(&parts)));
            }
            Err(DiagramError::UnknownBuiltin(name.into()))
        }
    }
}
