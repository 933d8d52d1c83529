use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ArcId, Crossing, DiagramError, LinkDiagram, Sign, Slot};

/// JSON form of a diagram. `orientation` holds the crossing signs (+1/-1),
/// which fix the direction of every over-strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub crossings: Vec<[ArcId; 4]>,
    #[serde(default)]
    pub unknot_components: Vec<ArcId>,
    pub orientation: Vec<i32>,
}

impl DiagramDocument {
    pub fn into_diagram(self) -> Result<LinkDiagram, DiagramError> {
        if self.orientation.len() != self.crossings.len() {
            return Err(DiagramError::Json(format!(
                "{} crossings but {} orientation entries",
                self.crossings.len(),
                self.orientation.len()
            )));
        }
        let crossings = self
            .crossings
            .into_iter()
            .zip(self.orientation)
            .map(|(slots, o)| match o {
                1 => Ok(Crossing::new(slots, Sign::Positive)),
                -1 => Ok(Crossing::new(slots, Sign::Negative)),
                _ => Err(DiagramError::Json(format!("orientation entry {o} is not +1 or -1"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        LinkDiagram::new(crossings, self.unknot_components)
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn position(&self) -> (usize, usize) {
        let before = &self.text[..self.at.min(self.text.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        (line, column)
    }

    fn error(&self, message: impl Into<String>) -> DiagramError {
        let (line, column) = self.position();
        DiagramError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.at < self.text.len() && self.text[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.at).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_one_of(&mut self, options: &[u8]) -> Result<u8, DiagramError> {
        match self.peek() {
            Some(b) if options.contains(&b) => {
                self.at += 1;
                Ok(b)
            }
            Some(b) => Err(self.error(format!(
                "expected one of {:?}, found '{}'",
                options.iter().map(|&c| c as char).collect::<String>(),
                b as char
            ))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<ArcId, DiagramError> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.text.len() && self.text[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            return Err(self.error("expected an arc label"));
        }
        std::str::from_utf8(&self.text[start..self.at])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("arc label out of range"))
    }
}

fn closing(open: u8) -> u8 {
    if open == b'[' {
        b']'
    } else {
        b')'
    }
}

/// Parse `PD[X(1,4,2,5),...]`, with `U` tokens for crossingless circles.
/// Square brackets and parentheses are interchangeable.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        at: 0,
    };
    if cur.peek() != Some(b'P') {
        return Err(cur.error("expected 'PD'"));
    }
    cur.at += 1;
    cur.expect_one_of(b"D")?;
    let open = cur.expect_one_of(b"[(")?;
    let mut raw: Vec<[ArcId; 4]> = Vec::new();
    let mut unknots = 0usize;
    if !cur.eat(closing(open)) {
        loop {
            match cur.expect_one_of(b"XU")? {
                b'X' => {
                    let o = cur.expect_one_of(b"[(")?;
                    let mut slots = [0; 4];
                    for (k, s) in slots.iter_mut().enumerate() {
                        if k > 0 {
                            cur.expect_one_of(b",")?;
                        }
                        *s = cur.number()?;
                    }
                    cur.expect_one_of(&[closing(o)])?;
                    raw.push(slots);
                }
                _ => {
                    if let Some(o @ (b'[' | b'(')) = cur.peek() {
                        cur.at += 1;
                        cur.expect_one_of(&[closing(o)])?;
                    }
                    unknots += 1;
                }
            }
            if cur.eat(b',') {
                continue;
            }
            cur.expect_one_of(&[closing(open)])?;
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(cur.error("trailing input after PD code"));
    }
    let signs = infer_signs(&raw)?;
    let max = raw.iter().flatten().copied().max().unwrap_or(0);
    let unknot_arcs = (0..unknots as ArcId).map(|k| max + 1 + k).collect();
    let crossings = raw
        .into_iter()
        .zip(signs)
        .map(|(slots, sign)| Crossing::new(slots, sign))
        .collect();
    LinkDiagram::new(crossings, unknot_arcs)
}

/// Determine over-strand directions. Slot 0 is the head of its arc and slot 2
/// the tail; each arc must have exactly one head and one tail. Constraints are
/// propagated along arcs; components that only pass over fall back to the arc
/// numbering (arc a flows into a+1, wrapping around).
fn infer_signs(raw: &[[ArcId; 4]]) -> Result<Vec<Sign>, DiagramError> {
    let mut occ: BTreeMap<ArcId, Vec<Slot>> = BTreeMap::new();
    for (c, x) in raw.iter().enumerate() {
        for (p, &a) in x.iter().enumerate() {
            occ.entry(a).or_default().push(Slot::new(c, p as u8));
        }
    }
    for (&arc, o) in &occ {
        if o.len() != 2 {
            return Err(DiagramError::ArcMultiplicity { arc, count: o.len() });
        }
    }
    // Some(true) = positive
    let mut sign: Vec<Option<bool>> = vec![None; raw.len()];
    // incoming status of a slot given the current partial assignment
    let incoming = |s: Slot, sign: &[Option<bool>]| -> Option<bool> {
        match s.pos {
            0 => Some(true),
            2 => Some(false),
            1 => sign[s.crossing].map(|pos| !pos),
            _ => sign[s.crossing],
        }
    };
    // value of sign making slot `s` incoming/outgoing
    let forcing = |s: Slot, want_incoming: bool| -> bool {
        match s.pos {
            1 => !want_incoming,
            _ => want_incoming,
        }
    };
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for (&arc, o) in &occ {
                let (a, b) = (o[0], o[1]);
                match (incoming(a, &sign), incoming(b, &sign)) {
                    (Some(x), Some(y)) => {
                        if x == y {
                            return Err(DiagramError::OrientationInconsistent(arc));
                        }
                    }
                    (Some(x), None) => {
                        sign[b.crossing] = Some(forcing(b, !x));
                        progress = true;
                    }
                    (None, Some(y)) => {
                        sign[a.crossing] = Some(forcing(a, !y));
                        progress = true;
                    }
                    (None, None) => {}
                }
            }
        }
        let Some(c) = sign.iter().position(|s| s.is_none()) else {
            break;
        };
        // over-only strand: KnotTheory-style numbering rule
        let (j, l) = (raw[c][1], raw[c][3]);
        let positive = j == l + 1 || (l > j + 1);
        sign[c] = Some(positive);
    }
    Ok(sign
        .into_iter()
        .map(|s| if s.expect("all assigned") { Sign::Positive } else { Sign::Negative })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil_as_left_handed() {
        let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.n_minus(), 3);
        assert_eq!(d.n_plus(), 0);
    }

    #[test]
    fn mathematica_brackets_accepted() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.crossing_count(), 3);
    }

    #[test]
    fn empty_and_unknot() {
        let empty = parse_pd("PD[]").unwrap();
        assert_eq!(empty.components().len(), 0);
        let u = parse_pd("PD[U]").unwrap();
        assert_eq!(u.components().len(), 1);
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.n_minus(), 0);
        let u2 = parse_pd("PD[U()]").unwrap();
        assert_eq!(u2.components().len(), 1);
    }

    #[test]
    fn kink_is_accepted() {
        let d = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.crossing_sign(0).unwrap(), Sign::Positive);
        assert_eq!(d.faces().len(), 3);
    }

    #[test]
    fn hopf_signs_from_under_strands() {
        let d = parse_pd("PD[X(1,3,2,4),X(3,1,4,2)]").unwrap();
        assert_eq!(d.n_plus(), 2);
        assert_eq!(d.components().len(), 2);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_pd("PD[X(1,4,2,5),\n  X(3,6,4 1)]").unwrap_err();
        match err {
            DiagramError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 11);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_pd("PD[X(1,2,3,4)"), Err(DiagramError::Syntax { .. })));
        assert!(matches!(parse_pd("Q"), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn arc_multiplicity_rejected() {
        let err = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,7)]").unwrap_err();
        assert!(matches!(err, DiagramError::ArcMultiplicity { .. }));
    }

    #[test]
    fn orientation_conflict_rejected() {
        // arc 1 is the incoming under-strand at both crossings
        let err = parse_pd("PD[X(1,3,2,4),X(1,4,2,3)]").unwrap_err();
        assert_eq!(err, DiagramError::OrientationInconsistent(1));
    }

    #[test]
    fn json_round_trip() {
        let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3),U]").unwrap();
        let back = LinkDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }
}
